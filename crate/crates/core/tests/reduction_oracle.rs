//! Reduction, language membership, counting and extensions, each checked
//! against a brute-force oracle built only from the rewriting rules
//! `α_i β_i → 1`, `α_i β_j → 0`.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dyck_shift::language::catalan;
use dyck_shift::{
    count_balanced, count_language, is_balanced, is_in_language, match_annotate,
    minimal_balanced_extensions, parse_word, reduce, varpi, AlphabetParams, Kind, Symbol, Word,
};

/// Rewrites a random adjacent `α β` pair until none is left. `None` is zero.
fn rewrite(w: &[Symbol], rng: &mut ChaCha8Rng) -> Option<Vec<Symbol>> {
    let mut w = w.to_vec();
    loop {
        let sites: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i].is_alpha() && w[i + 1].is_beta())
            .collect();
        let Some(&i) = sites.choose(rng) else {
            return Some(w);
        };
        if w[i].index != w[i + 1].index {
            return None;
        }
        w.drain(i..i + 2);
    }
}

fn all_words(n: usize, params: &AlphabetParams) -> Vec<Vec<Symbol>> {
    let alphabet = params.alphabet();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

fn params(m: u32) -> AlphabetParams {
    AlphabetParams::new(m).unwrap()
}

fn exhaustive_against_rewriting(m: u32, max_len: usize) {
    let p = params(m);
    let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
    for n in 0..=max_len {
        for w in all_words(n, &p) {
            let oracle = rewrite(&w, &mut rng);
            let word = Word::new(w.clone());
            let nf = reduce(&word);
            assert_eq!(nf.to_word().map(Word::into_symbols), oracle, "{word}");
            assert_eq!(is_in_language(&word), oracle.is_some());
            assert_eq!(is_balanced(&word), oracle.as_deref() == Some(&[][..]));
            if let Some(rest) = oracle {
                // irreducible: all closers before all openers
                let first_alpha = rest.iter().position(|s| s.is_alpha()).unwrap_or(rest.len());
                assert!(rest[first_alpha..].iter().all(|s| s.is_alpha()));
            }
        }
    }
}

#[test]
fn reduce_matches_rewriting_m2() {
    exhaustive_against_rewriting(2, 8);
}

#[test]
fn reduce_matches_rewriting_m3() {
    exhaustive_against_rewriting(3, 7);
}

#[test]
fn rewriting_order_does_not_matter() {
    let p = params(2);
    for w in all_words(6, &p) {
        let outcomes: BTreeSet<_> = (0..6)
            .map(|seed| rewrite(&w, &mut ChaCha8Rng::seed_from_u64(seed)))
            .collect();
        assert_eq!(outcomes.len(), 1);
    }
}

#[test]
fn language_counts_match_enumeration() {
    for (m, max_len) in [(2, 8), (3, 6)] {
        let p = params(m);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..=max_len {
            let words = all_words(n, &p);
            let in_lang = words
                .iter()
                .filter(|w| rewrite(w, &mut rng).is_some())
                .count();
            assert_eq!(count_language(n, &p), in_lang as u64, "m={m} n={n}");
            if n % 2 == 0 {
                let balanced = words
                    .iter()
                    .filter(|w| rewrite(w, &mut rng).is_some_and(|r| r.is_empty()))
                    .count();
                assert_eq!(count_balanced(n as u64 / 2, &p), (balanced as u64).into());
            }
        }
    }
}

#[test]
fn catalan_numbers() {
    let known = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    for (n, &c) in known.iter().enumerate() {
        assert_eq!(catalan(n as u64), c.into());
    }
}

#[test]
fn language_growth_bounds() {
    // |L(n)| >= (m+1)^n: words over {α_1..α_m, β} with each β taking the
    // index of the α it closes (1 when unmatched) are distinct members.
    for m in [2u32, 3] {
        let p = params(m);
        let counts: Vec<u64> = (0..=10).map(|n| count_language(n, &p)).collect();
        for n in 0..counts.len() {
            assert!(counts[n] >= u64::from(m + 1).pow(n as u32));
            assert!(counts[n] <= u64::from(2 * m).pow(n as u32));
            for k in 0..=n {
                assert!(counts[n] <= counts[k] * counts[n - k], "submultiplicative");
            }
        }
    }
}

fn w(text: &str, p: &AlphabetParams) -> Word {
    parse_word(text, p).unwrap()
}

#[test]
fn match_annotation_agrees_with_reduction() {
    let p = params(2);
    for word in (0..=7).flat_map(|n| all_words(n, &p)).map(Word::new) {
        match (match_annotate(&word), reduce(&word).unmatched()) {
            (Ok(ann), Some(unmatched)) => {
                assert_eq!(ann.n2, unmatched);
                assert_eq!(2 * ann.n1 + ann.n2, word.len());
                for &(i, j) in &ann.matched_pairs {
                    assert!(i < j);
                    assert_eq!(word[i].index, word[j].index);
                    assert!(is_balanced(&word.slice(i + 1, j)));
                }
            }
            (Err(_), None) => {}
            (a, b) => panic!("{word}: {a:?} vs {b:?}"),
        }
    }
}

#[test]
fn varpi_examples() {
    let p = params(2);
    assert_eq!(varpi(&Word::empty()), 0);
    assert_eq!(varpi(&w("a1 a2", &p)), 0);
    assert_eq!(varpi(&w("b1", &p)), -1);
    assert_eq!(varpi(&w("b1 b1 a1", &p)), -2);
    assert_eq!(varpi(&w("a1 b1 b1 b2 a2", &p)), -2);
}

fn balanced_upto(max_len: usize, p: &AlphabetParams) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..=max_len)
        .step_by(2)
        .flat_map(|n| all_words(n, p))
        .filter(|w| rewrite(w, &mut rng).is_some_and(|r| r.is_empty()))
        .map(Word::new)
        .collect()
}

/// Balanced windows `[s, e)` of `u` containing `[p, q)`.
fn balanced_windows(u: &Word, p: usize, q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..=p {
        for e in q..=u.len() {
            if is_balanced(&u.slice(s, e)) {
                out.push((s, e));
            }
        }
    }
    out
}

#[test]
fn minimal_extensions_match_direct_definition() {
    for (m, max_len, core_len) in [(2, 10, 3), (3, 8, 2)] {
        let p = params(m);
        let balanced = balanced_upto(max_len, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cores: Vec<Word> = (1..=core_len)
            .flat_map(|n| all_words(n, &p))
            .filter(|a| rewrite(a, &mut rng).is_some())
            .map(Word::new)
            .collect();
        for a in &cores {
            let mut found = BTreeSet::new();
            for u in &balanced {
                for start in 0..(u.len() + 1).saturating_sub(a.len()) {
                    if u.slice(start, start + a.len()) != *a {
                        continue;
                    }
                    let windows = balanced_windows(u, start, start + a.len());
                    // windows containing the occurrence are nested: one is least
                    let least: Vec<_> = windows
                        .iter()
                        .filter(|&&(s, e)| windows.iter().all(|&(s2, e2)| s2 <= s && e <= e2))
                        .collect();
                    assert_eq!(least.len(), 1, "{u} at {start}");
                    let (s, e) = *least[0];
                    if (s, e) == (0, u.len()) {
                        found.insert((u.slice(0, start), u.slice(start + a.len(), e)));
                    }
                }
            }
            let listed: BTreeSet<_> = minimal_balanced_extensions(a, max_len, &p)
                .unwrap()
                .into_iter()
                .map(|x| (x.left, x.right))
                .collect();
            assert_eq!(listed, found, "m={m} a={a}");
        }
    }
}

#[test]
fn minimal_extension_small_case() {
    let p = params(2);
    let exts = minimal_balanced_extensions(&w("a1", &p), 4, &p).unwrap();
    let shown: Vec<String> = exts
        .iter()
        .map(|e| e.apply(&w("a1", &p)).to_string())
        .collect();
    assert_eq!(shown, ["a1 b1", "a1 a1 b1 b1", "a1 a2 b2 b1"]);
    assert!(minimal_balanced_extensions(&w("a1 b2", &p), 8, &p).is_err());
}

fn symbol(m: u32) -> impl Strategy<Value = Symbol> {
    (any::<bool>(), 1..=m).prop_map(|(alpha, i)| {
        if alpha {
            Symbol::alpha(i)
        } else {
            Symbol::beta(i)
        }
    })
}

fn word(m: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(symbol(m), 0..max).prop_map(Word::new)
}

proptest! {
    #[test]
    fn reduction_is_a_congruence(s in word(3, 8), x in word(3, 10), t in word(3, 8)) {
        let whole = reduce(&s.concat(&x).concat(&t));
        match reduce(&x).to_word() {
            None => prop_assert!(whole.is_zero()),
            Some(nf) => prop_assert_eq!(whole, reduce(&s.concat(&nf).concat(&t))),
        }
    }

    #[test]
    fn reduction_is_idempotent_and_shortens(x in word(4, 24)) {
        let nf = reduce(&x);
        if let Some(r) = nf.to_word() {
            prop_assert!(r.len() <= x.len());
            prop_assert_eq!((x.len() - r.len()) % 2, 0);
            prop_assert_eq!(reduce(&r).to_word(), Some(r));
        }
    }

    #[test]
    fn reduce_matches_rewriting_long(x in word(3, 30), seed in any::<u64>()) {
        let oracle = rewrite(x.symbols(), &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(reduce(&x).to_word().map(Word::into_symbols), oracle);
    }

    #[test]
    fn factors_of_language_words_are_in_language(x in word(2, 16)) {
        prop_assume!(is_in_language(&x));
        for i in 0..=x.len() {
            for j in i..=x.len() {
                prop_assert!(is_in_language(&x.slice(i, j)));
            }
        }
    }

    #[test]
    fn balanced_means_walk_closes_at_zero(x in word(2, 16)) {
        let heights_ok = x.iter().scan(0i64, |h, s| { *h += s.step(); Some(*h) }).all(|h| h >= 0)
            && x.iter().filter(|s| s.kind == Kind::Alpha).count() * 2 == x.len();
        if is_balanced(&x) {
            prop_assert!(heights_ok);
        }
        if heights_ok && is_in_language(&x) {
            prop_assert!(is_balanced(&x));
        }
    }
}
