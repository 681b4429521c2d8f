mod common;

use proptest::prelude::*;
use proptest::sample::Index;
use rand::rngs::StdRng;
use rand::SeedableRng;

use walled_brauer::algebra::Element;
use walled_brauer::calculus::{inverse_of_polynomial, spectral_decompose, sqrt_of_polynomial, truncated_inverse, Branch};
use walled_brauer::center::{admissible_basis, central_element_in, central_element_with, minimal_permutation, q_cancellation_check, verify_central, MultiPoly, Variables};
use walled_brauer::diagram::compose_word;
use walled_brauer::matrix::QMat;
use walled_brauer::params::Params;
use walled_brauer::poly::Poly;
use walled_brauer::scalar::{int, rat, rational_to_f64, with_precision, BigFloat, Field, Rational, Ring};
use walled_brauer::young4::{endpoint_counts, enumerate_paths, eigenvalue_sequence, PathFilter};
use walled_brauer::{OrientedDiagram, Sequence, WalledBrauer};

use common::{random_matrix, square_pool, surd_pool};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn rank() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4).prop_flat_map(|n| (0..=n).prop_map(move |r| (r, n - r)))
}

fn pick<T: Clone>(v: &[T], i: &Index) -> T {
    v[i.index(v.len())].clone()
}

fn rel_err(x: &BigFloat, exact: &Rational) -> f64 {
    let e = rational_to_f64(exact);
    let d = (x.to_f64() - e).abs();
    if e == 0.0 {
        d
    } else {
        d / e.abs()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational(), d in nonzero_rational()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(d.mul(&d.inv()), Rational::one());
        prop_assert_eq!(a.sub(&a), Rational::zero());
    }

    #[test]
    fn bigfloat_tracks_rational(a in rational(), b in nonzero_rational(), bits in prop::sample::select(vec![64usize, 128, 256])) {
        // f64 readout caps the observable error near 2^-52.
        let bound = 2f64.powi(4 - bits as i32).max(4.0 * f64::EPSILON);
        with_precision(bits, || {
            let (x, y) = (BigFloat::from_rational(&a), BigFloat::from_rational(&b));
            for (got, want) in [(x.add(&y), a.add(&b)), (x.mul(&y), a.mul(&b)), (x.div(&y), a.div(&b))] {
                prop_assert!(rel_err(&got, &want) <= bound, "{:?} vs {}", got, rational_to_f64(&want));
            }
            Ok(())
        })?;
    }

    #[test]
    fn compose_is_associative((r, t) in rank(), s in any::<[Index; 4]>(), d in any::<[Index; 3]>()) {
        let seqs = Sequence::all(r, t);
        let a: Vec<Sequence> = s.iter().map(|i| pick(&seqs, i)).collect();
        let x = pick(&OrientedDiagram::enumerate(&a[0], &a[1]), &d[0]);
        let y = pick(&OrientedDiagram::enumerate(&a[1], &a[2]), &d[1]);
        let z = pick(&OrientedDiagram::enumerate(&a[2], &a[3]), &d[2]);
        let (yx, l1) = OrientedDiagram::compose(&y, &x).unwrap();
        let (left, l2) = OrientedDiagram::compose(&z, &yx).unwrap();
        let (zy, l3) = OrientedDiagram::compose(&z, &y).unwrap();
        let (right, l4) = OrientedDiagram::compose(&zy, &x).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn diagram_text_round_trips((r, t) in rank(), s in any::<[Index; 2]>(), d in any::<Index>()) {
        let seqs = Sequence::all(r, t);
        let x = pick(&OrientedDiagram::enumerate(&pick(&seqs, &s[0]), &pick(&seqs, &s[1])), &d);
        prop_assert_eq!(OrientedDiagram::parse(&x.to_text()).unwrap(), x.clone());
        let (w, loops) = compose_word(&x.word()).unwrap();
        prop_assert_eq!((w, loops), (x, 0));
    }

    #[test]
    fn algebra_is_associative(
        (r, t) in (1usize..=3).prop_flat_map(|n| (0..=n).prop_map(move |r| (r, n - r))),
        idx in prop::collection::vec((any::<[Index; 2]>(), -3i64..=3), 9),
    ) {
        let br = WalledBrauer::new(r, t, int(-2));
        let seqs = br.sequences();
        let elem = |part: &[([Index; 2], i64)]| {
            let mut x = Element::zero();
            for (i, c) in part {
                let (a, b) = (pick(&seqs, &i[0]), pick(&seqs, &i[1]));
                x.add_term(pick(&OrientedDiagram::enumerate(&a, &b), &i[1]), int(*c));
            }
            x
        };
        let (x, y, z) = (elem(&idx[0..3]), elem(&idx[3..6]), elem(&idx[6..9]));
        prop_assert_eq!(br.mul(&br.mul(&x, &y), &z), br.mul(&x, &br.mul(&y, &z)));
    }

    #[test]
    fn polynomial_calculus_on_random_matrices(seed in any::<u64>(), size in 1usize..=6, exact in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let x0 = random_matrix(&mut rng, size, &if exact { square_pool() } else { surd_pool() });
        let f = Poly::from_coeffs(vec![int(0), int(1)]);
        let fx = x0.eval_poly(&f);
        let inv = inverse_of_polynomial(&x0, &f).unwrap();
        prop_assert_eq!(inv.mul(&fx), QMat::identity(size));
        prop_assert_eq!(Some(inv.clone()), fx.inverse());
        prop_assert_eq!(inverse_of_polynomial(&x0, &f).unwrap(), inv);

        let form = sqrt_of_polynomial(&x0, &f).unwrap();
        for (_, part) in &form.terms {
            prop_assert!(part.commutes_with(&x0));
        }
        if exact {
            let s = form.exact(Branch::Principal).unwrap();
            prop_assert_eq!(s.mul(&s), fx.clone());
        } else {
            let s = with_precision(256, || form.to_float(Branch::Principal));
            let res = with_precision(256, || s.mul(&s).sub(&fx.to_float()).max_abs());
            prop_assert!(res < 1e-30, "residual {res:e}");
        }

        let sd = spectral_decompose(&x0).unwrap();
        let avoid = sd.eigenvalues()[0].clone();
        let (eta, g) = truncated_inverse(&x0, &f, &[avoid]).unwrap();
        prop_assert_eq!(fx.mul(&g), eta.clone());
        prop_assert_eq!(eta.mul(&eta), eta.clone());
        if sd.eigenvalues().len() == 1 {
            prop_assert!(eta.is_zero());
        } else {
            prop_assert_ne!(eta, QMat::identity(size));
        }
    }

    #[test]
    fn central_elements_do_not_depend_on_w(perm in Just((0usize..2).collect::<Vec<_>>()).prop_shuffle(), perm_t in Just(vec![0usize]).prop_shuffle()) {
        // w_a ∘ u for u ∈ S_r × S_t is another permutation sending the
        // standard sequence to a.
        let (r, t) = (2, 1);
        let u: Vec<usize> = perm.iter().copied().chain(perm_t.iter().map(|i| i + r)).collect();
        let br = WalledBrauer::formal(r, t);
        for p in admissible_basis(r, t, 4) {
            let z = central_element_in(&br, &p).unwrap();
            let other = central_element_with(&br, &p, Variables::Shifted, |a| {
                let w = minimal_permutation(a);
                u.iter().map(|&i| w[i]).collect()
            }).unwrap();
            prop_assert_eq!(z, other);
        }
    }

    #[test]
    fn random_admissible_combinations_are_central(coeffs in prop::collection::vec(-3i64..=3, 8)) {
        let br = WalledBrauer::formal(1, 1);
        let basis = admissible_basis(1, 1, 4);
        let p = basis.iter().zip(&coeffs).fold(MultiPoly::zero(2), |acc, (q, &c)| acc.add(&q.scale(&int(c))));
        let z = central_element_in(&br, &p).unwrap();
        prop_assert!(verify_central(&br, &z).passed());
    }
}

#[test]
fn odd_power_sums_q_cancel() {
    for nvars in 2..=4 {
        for j in 0..=3 {
            let p = MultiPoly::power_sum(nvars, 2 * j + 1);
            for k in 1..=nvars {
                for l in (1..=nvars).filter(|&l| l != k) {
                    assert!(q_cancellation_check(&p, k, l), "p_{} in {nvars} variables at ({k},{l})", 2 * j + 1);
                }
            }
        }
    }
}

fn abs(x: &Rational) -> Rational {
    if *x < Rational::zero() {
        x.neg()
    } else {
        x.clone()
    }
}

#[test]
fn first_large_step_dominates_small_ones() {
    let p = Params::new(6, 6, int(2));
    for (r, t) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (0, 3)] {
        for a in Sequence::all(r, t) {
            let paths = enumerate_paths(&a, &p, PathFilter::All).unwrap();
            let seqs: Vec<_> = paths.iter().map(eigenvalue_sequence).collect();
            let small_max = seqs.iter().flatten().filter(|e| e.small).map(|e| abs(&e.value)).max();
            for seq in &seqs {
                if let (Some(first), Some(s)) = (seq.iter().find(|e| !e.small), &small_max) {
                    assert!(abs(&first.value) > *s, "{a}: first large {} vs small {s}", first.value);
                }
            }
            let total: usize = endpoint_counts(&paths).values().sum();
            assert_eq!(total, paths.len());
        }
    }
}

#[test]
fn later_large_steps_can_meet_small_values() {
    // ∧∧∧ at m = n = 6, δ = 2: the path 4, 3, 2 ends on a large 2 while
    // 0, 1, 2 is small throughout.
    let p = Params::new(6, 6, int(2));
    let paths = enumerate_paths(&Sequence::standard(3, 0), &p, PathFilter::All).unwrap();
    let seqs: Vec<_> = paths.iter().map(eigenvalue_sequence).collect();
    let hit = |vals: [i64; 3], small: bool| {
        seqs.iter().any(|s| s.iter().map(|e| e.value.clone()).eq(vals.map(int)) && s.iter().all(|e| e.small == small))
    };
    assert!(hit([4, 3, 2], false) && hit([0, 1, 2], true));
}
