mod common;

use common::{bosonic_row, bosonic_word, fermionic_row, fermionic_word};
use mlq_core::words::{iota_bosonic, iota_fermionic};
use mlq_core::{BosonicWord, FermionicWord, Row, Word};
use proptest::prelude::*;

fn all_fermionic_words(n: usize, max: u32) -> Vec<FermionicWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w: Vec<u32>| (0..=max).map(move |l| [w.clone(), vec![l]].concat())).collect();
    }
    out.into_iter().map(|l| FermionicWord::new(l).unwrap()).collect()
}

#[test]
fn fermionic_round_trip_exhaustive() {
    for n in 1..=5 {
        for w in all_fermionic_words(n, 5) {
            let layers = w.decompose();
            assert_eq!(layers.len() as u32, w.max_label());
            for pair in layers.windows(2) {
                assert!(pair[1].is_below(&pair[0]));
            }
            assert_eq!(FermionicWord::recompose(n, &layers).unwrap(), w);
        }
    }
}

#[test]
fn bosonic_round_trip_exhaustive() {
    // every word with at most two labels per site, labels up to 3, on up to 3 sites
    let site_choices: Vec<Vec<u32>> = {
        let mut v = vec![vec![]];
        for a in 1..=3 {
            v.push(vec![a]);
            for b in a..=3 {
                v.push(vec![a, b]);
            }
        }
        v
    };
    for n in 1..=3usize {
        let mut words = vec![Vec::new()];
        for _ in 0..n {
            words = words
                .into_iter()
                .flat_map(|w: Vec<Vec<u32>>| site_choices.iter().map(move |s| [w.clone(), vec![s.clone()]].concat()))
                .collect();
        }
        for sites in words {
            let w = BosonicWord::new(sites).unwrap();
            assert_eq!(BosonicWord::recompose(n, &w.decompose()).unwrap(), w);
        }
    }
}

#[test]
fn non_nested_layers_rejected() {
    let a = iota_fermionic(&[1], 3).unwrap();
    let b = iota_fermionic(&[1, 2], 3).unwrap();
    assert!(FermionicWord::recompose(3, &[a, b]).is_err());
}

proptest! {
    #[test]
    fn fermionic_round_trip(w in fermionic_word(8, 12)) {
        prop_assert_eq!(FermionicWord::recompose(w.n(), &w.decompose()).unwrap(), w.clone());
        let shown = w.to_string();
        prop_assert_eq!(shown.parse::<FermionicWord>().unwrap(), w);
    }

    #[test]
    fn bosonic_round_trip(w in bosonic_word(8, 12, 4)) {
        prop_assert_eq!(BosonicWord::recompose(w.n(), &w.decompose()).unwrap(), w.clone());
        let shown = w.to_string();
        prop_assert_eq!(shown.parse::<BosonicWord>().unwrap(), w);
    }

    #[test]
    fn upsilon_is_monotone(w in bosonic_word(8, 6, 4), m in 1u32..7, d in 0u32..4) {
        prop_assert!(w.upsilon(m + d).is_below(&w.upsilon(m)));
        let f = FermionicWord::new(w.sites().iter().map(|s| s.last().copied().unwrap_or(0)).collect()).unwrap();
        prop_assert!(f.upsilon(m + d).is_below(&f.upsilon(m)));
    }

    #[test]
    fn increment_adds(w in fermionic_word(8, 6), b in bosonic_word(6, 6, 3), x in 0u32..5, y in 0u32..5) {
        prop_assert_eq!(w.increment(x + y), w.increment(x).increment(y));
        prop_assert_eq!(b.increment(x + y), b.increment(x).increment(y));
        prop_assert_eq!(w.increment(0), w.clone());
    }

    #[test]
    fn iota_round_trip(r in (1..=8usize).prop_flat_map(|n| (fermionic_row(n), bosonic_row(n, 3)))) {
        let (f, b) = r;
        prop_assert_eq!(iota_fermionic(&f.sites(), f.n()).unwrap(), f);
        prop_assert_eq!(iota_bosonic(&b.sites(), b.n()).unwrap(), b);
    }

    #[test]
    fn oplus_moves_one_layer(w in bosonic_word(6, 5, 3)) {
        let a = w.upsilon(1);
        let bumped = w.oplus(&a).unwrap();
        prop_assert_eq!(bumped, w.increment(1));
    }
}
