mod common;

use common::{all_bosonic, bosonic_queue};
use mlq_core::markov::{
    bosonic_mlq_chain, check_balance, fermionic_mlq_chain, ktazrp_chain, ring_forward_bosonic, ring_forward_fermionic,
    ring_reverse_bosonic, ring_reverse_fermionic, simulate_ctmc_stream, stationary_exact, tasep_chain, tazrp_chain,
    total_variation, RateParams, RationalDistribution,
};
use mlq_core::projection::phi;
use mlq_core::{BigRational, BosonicMlq, FermionicMlq, Monomial};
use proptest::prelude::*;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn fermionic_ringing_inverse_exhaustive() {
    for lambda in [vec![1], vec![2, 1], vec![2, 2, 1]] {
        for n in 1..=4usize {
            if lambda[0] as usize > n {
                continue;
            }
            for q in FermionicMlq::enumerate(&lambda, n).unwrap() {
                for i in 1..=n {
                    let f = ring_forward_fermionic(&q, i).unwrap();
                    let back = ring_reverse_fermionic(&f.queue, f.exit).unwrap();
                    assert_eq!((back.queue, back.exit), (q.clone(), i), "R(F(Q,{i})) on {q:?}");
                    let rv = ring_reverse_fermionic(&q, i).unwrap();
                    let fwd = ring_forward_fermionic(&rv.queue, rv.exit).unwrap();
                    assert_eq!((fwd.queue, fwd.exit), (q.clone(), i), "F(R(Q,{i})) on {q:?}");
                }
            }
        }
    }
}

fn check_bosonic_ring(d: &BosonicMlq, x: &RateParams) {
    let n = d.n();
    let w = d.weight();
    for i in 1..=n {
        let f = ring_forward_bosonic(d, i, x).unwrap();
        let back = ring_reverse_bosonic(&f.queue, f.exit, x).unwrap();
        assert_eq!((back.queue.clone(), back.exit), (d.clone(), i), "R(F(D,{i})) on {d:?}");
        let rv = ring_reverse_bosonic(d, i, x).unwrap();
        let fwd = ring_forward_bosonic(&rv.queue, rv.exit, x).unwrap();
        assert_eq!((fwd.queue, fwd.exit), (d.clone(), i), "F(R(D,{i})) on {d:?}");
        // x^{F_i(D)} = x^D x_{j+1} / x_i with j the exit site
        let mut e = w.exponents.clone();
        e[f.exit % n] += 1;
        e[i - 1] -= 1;
        assert_eq!(f.queue.weight(), Monomial { exponents: e }, "weight identity at {i} on {d:?}");
        // flux along the forward move equals flux back along the reverse move
        assert_eq!(w.eval(x.as_slice()) * &f.rate, f.queue.weight().eval(x.as_slice()) * &back.rate);
    }
}

#[test]
fn bosonic_ringing_exhaustive() {
    let x = RateParams::from_integers(&[2, 3, 5]).unwrap();
    for d in all_bosonic(3, 3, 2) {
        let x = RateParams::new(x.as_slice()[..d.n()].to_vec()).unwrap();
        check_bosonic_ring(&d, &x);
    }
}

#[test]
fn empty_queues_are_fixed() {
    let d = BosonicMlq::from_sites(3, &[&[][..], &[]]).unwrap();
    let x = RateParams::ones(3);
    for i in 1..=3 {
        assert_eq!(ring_forward_bosonic(&d, i, &x).unwrap().queue, d);
        assert_eq!(ring_reverse_bosonic(&d, i, &x).unwrap().queue, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn bosonic_ringing_random(d in bosonic_queue(5, 4, 3), xs in proptest::collection::vec(1i64..9, 5)) {
        let x = RateParams::from_integers(&xs[..d.n()]).unwrap();
        check_bosonic_ring(&d, &x);
    }
}

#[test]
fn single_species_tasep_is_uniform() {
    let d = stationary_exact(&tasep_chain(&[1, 1], 3).unwrap()).unwrap();
    assert_eq!(d.len(), 3);
    assert!(d.iter().all(|(_, p)| *p == r(1, 3)));
}

#[test]
fn fermionic_mlq_chain_is_uniform() {
    let chain = fermionic_mlq_chain(&[2, 1], 3).unwrap();
    assert_eq!(chain.len(), 9);
    let d = stationary_exact(&chain).unwrap();
    assert!(d.iter().all(|(_, p)| *p == r(1, 9)));
    assert!(fermionic_mlq_chain(&[1, 2], 3).is_err());
}

#[test]
fn bosonic_mlq_chain_weights() {
    let x = RateParams::from_integers(&[1, 2, 3]).unwrap();
    for alpha in [vec![2, 1], vec![1, 2]] {
        let chain = bosonic_mlq_chain(&alpha, 3, &x).unwrap();
        assert_eq!(chain.len(), 18);
        let weights = chain.states().iter().map(|d| (d.clone(), d.weight().eval(x.as_slice()))).collect();
        let want = RationalDistribution::from_weights(weights).unwrap();
        assert!(check_balance(&chain, &want));
        assert_eq!(stationary_exact(&chain).unwrap(), want);
    }
    let twisted = bosonic_mlq_chain(&[1, 2], 2, &RateParams::ones(2)).unwrap();
    assert!(stationary_exact(&twisted).is_ok());
}

#[test]
fn tasep_matches_queue_fibres() {
    let chain = tasep_chain(&[2, 1], 3).unwrap();
    let exact = stationary_exact(&chain).unwrap();
    let queues: Vec<FermionicMlq> = FermionicMlq::enumerate(&[2, 1], 3).unwrap().collect();
    for w in chain.states() {
        let fibre = queues.iter().filter(|q| phi(*q) == *w).count() as i64;
        assert_eq!(exact.get(w), r(fibre, queues.len() as i64));
    }
}

#[test]
fn tazrp_matches_weighted_fibres() {
    let x = RateParams::from_integers(&[1, 2, 3]).unwrap();
    let chain = tazrp_chain(&[2, 1], 3, &x).unwrap();
    let exact = stationary_exact(&chain).unwrap();
    let queues: Vec<BosonicMlq> = BosonicMlq::enumerate(&[2, 1], 3).unwrap().collect();
    let z: BigRational = queues.iter().map(|d| d.weight().eval(x.as_slice())).sum();
    for w in chain.states() {
        let fibre: BigRational = queues.iter().filter(|d| phi(*d) == *w).map(|d| d.weight().eval(x.as_slice())).sum();
        assert_eq!(exact.get(w), fibre / &z);
    }
}

#[test]
fn ktazrp_agrees_with_tazrp() {
    for n in 2..=3 {
        let a = stationary_exact(&ktazrp_chain(&[2, 1], n).unwrap()).unwrap();
        let b = stationary_exact(&tazrp_chain(&[2, 1], n, &RateParams::ones(n)).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn simulation_tracks_the_exact_law() {
    let chain = tasep_chain(&[2, 1], 3).unwrap();
    let exact = stationary_exact(&chain).unwrap();
    for stream in 0..3 {
        let f = simulate_ctmc_stream(&chain, 2024, stream, 100_000).unwrap();
        assert!(total_variation(&chain, &exact, &f) < 0.02);
    }
}
