use std::collections::HashMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

mod common;

use common::brute_force_min_cost;
use eah_core::automaton::AdaptiveAutomaton;
use eah_core::codec::{decode, decode_trace, encode, ContextModel};
use eah_core::huffman::weighted_cost;
use eah_core::{huffman, AdaptiveCodeTable, Alphabet, BitString};

fn alphabet(m: usize) -> Alphabet {
    Alphabet::new((b'a'..b'a' + m as u8).collect::<Vec<_>>()).unwrap()
}

fn random_string(rng: &mut StdRng, m: usize, len: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..m) as u8).collect()
}

/// A random complete prefix code with `k` words: repeatedly split a random leaf.
fn random_prefix_code(rng: &mut StdRng, k: usize) -> Vec<BitString> {
    let mut leaves = vec![BitString::new()];
    while leaves.len() < k {
        let i = rng.gen_range(0..leaves.len());
        let leaf = leaves.swap_remove(i);
        for bit in [false, true] {
            let mut child = leaf.clone();
            child.push(bit);
            leaves.push(child);
        }
    }
    if k == 1 {
        leaves[0].push(rng.gen());
    }
    leaves
}

fn all_strings(m: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<u8>| {
                (0..m).map(move |c| {
                    let mut t = s.clone();
                    t.push(b'a' + c as u8);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn sufficient_tables_have_injective_extensions() {
    let mut rng = StdRng::seed_from_u64(7);
    for m in 1..=3 {
        let strings = all_strings(m, 6);
        for order in 1..=3 {
            for _ in 0..4 {
                let mut rows: HashMap<Vec<u8>, Vec<BitString>> = HashMap::new();
                let table = AdaptiveCodeTable::from_fn(alphabet(m), order, |s, ctx| {
                    rows.entry(ctx.to_vec())
                        .or_insert_with(|| random_prefix_code(&mut rng, m))[s as usize]
                        .clone()
                })
                .unwrap();
                assert!(table.check_order_n_sufficiency());
                let mut seen: HashMap<BitString, &Vec<u8>> = HashMap::new();
                for x in &strings {
                    let code = table.encode_extension(x).unwrap();
                    let expected: usize = (0..x.len())
                        .map(|i| {
                            let idx = table.alphabet().indices(x).unwrap();
                            table.code(idx[i], &idx[i.saturating_sub(order)..i]).len()
                        })
                        .sum();
                    assert_eq!(code.len(), expected);
                    if let Some(prev) = seen.insert(code, x) {
                        panic!("{prev:?} and {x:?} share an encoding (m={m}, n={order})");
                    }
                }
            }
        }
    }
}

#[test]
fn brute_force_oracle_sanity() {
    assert_eq!(brute_force_min_cost(&[31, 31, 64, 37, 37]), 462);
    assert_eq!(brute_force_min_cost(&[22, 28, 14]), 100);
    assert_eq!(brute_force_min_cost(&[1, 1]), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn round_trip(
        seed in any::<u64>(),
        m in 2usize..=8,
        order in 1usize..=3,
        len in 0usize..=2000,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alpha = alphabet(m);
        let w = random_string(&mut rng, m, len);
        let p = encode(&w, order, &alpha).unwrap();
        prop_assert_eq!(decode(&p).unwrap(), w.clone());

        let [a, b, c, d, e] = p.component_lengths();
        let width = alpha.index_width() as usize;
        if w.len() > order {
            let model = ContextModel::build(&w, order, &alpha).unwrap();
            let marked = p.marked_count();
            let max = model.table().values().flatten()
                .map(|s| 64 - s.frequency.leading_zeros() as usize).max().unwrap();
            prop_assert_eq!(a, order * width);
            prop_assert_eq!(b, m.pow(order as u32));
            prop_assert_eq!(c, m * p.b.count_ones());
            prop_assert_eq!(d, max * marked);
            prop_assert_eq!(e as u64, model.weighted_cost());
            prop_assert_eq!(model.total_frequency(), (w.len() - order) as u64);
            let per_context: u64 = model.table().values().map(|succs| {
                let freqs: Vec<u64> = succs.iter().map(|s| s.frequency).collect();
                weighted_cost(&huffman(&freqs).unwrap(), &freqs).unwrap()
            }).sum();
            prop_assert_eq!(per_context, e as u64);
        } else {
            prop_assert_eq!(a, w.len() * width);
            prop_assert_eq!(b + c + d + e, 0);
        }
        prop_assert_eq!(encode(&w, order, &alpha).unwrap(), p);
    }

    #[test]
    fn automaton_accepts_decoded_trace(
        seed in any::<u64>(),
        m in 1usize..=6,
        order in 1usize..=3,
        len in 0usize..=500,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alpha = alphabet(m);
        let w = random_string(&mut rng, m, len + order + 1);
        let model = ContextModel::build(&w, order, &alpha).unwrap();
        let aut = AdaptiveAutomaton::build(&w, order, &model).unwrap();
        let (_, trace) = decode_trace(&encode(&w, order, &alpha).unwrap()).unwrap();
        prop_assert!(aut.accepts_trace(&trace));

        let edge_sum: u64 = aut.edges()
            .filter(|(_, t, _)| !t.is_lambda())
            .map(|(_, t, _)| t.frequency)
            .sum();
        prop_assert_eq!(edge_sum, (w.len() - order) as u64);
        for state in aut.states() {
            let out: Vec<BitString> = aut.edges()
                .filter(|(s, t, _)| *s == state && !t.is_lambda())
                .map(|(_, t, _)| t.codeword.clone())
                .collect();
            prop_assert!(eah_core::is_prefix_code(&out));
            let mut dedup = out.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), out.len());
        }
    }
}

#[test]
fn huffman_matches_brute_force_exhaustively() {
    for k in 1..=5u32 {
        let total = 10u64.pow(k);
        for code in 0..total {
            let freqs: Vec<u64> = (0..k).map(|i| code / 10u64.pow(i) % 10 + 1).collect();
            let a = huffman(&freqs).unwrap();
            assert_eq!(
                weighted_cost(&a, &freqs).unwrap(),
                brute_force_min_cost(&freqs),
                "{freqs:?}"
            );
        }
    }
}
