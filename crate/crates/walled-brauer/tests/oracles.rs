//! Fixed values checked against independent computations.

use walled_brauer::calculus::spectral_decompose;
use walled_brauer::center::center_dimension;
use walled_brauer::cyclotomic::{build, build_cached, cache_path, load};
use walled_brauer::jm::jm_elements;
use walled_brauer::params::Params;
use walled_brauer::scalar::{int, is_integer};
use walled_brauer::schur_weyl::TensorSpace;
use walled_brauer::{Arrow, Error, GenKind, Sequence, WalledBrauer};

fn params() -> Params {
    Params::new(6, 6, int(2))
}

#[test]
fn default_parameters() {
    let p = params();
    assert_eq!(p.beta1(Arrow::Up), int(4));
    assert_eq!(p.beta2(Arrow::Up), int(0));
    assert_eq!(p.beta1(Arrow::Down), int(6));
    assert_eq!(p.beta2(Arrow::Down), int(2));
    assert_eq!(p.omega0(), int(12));
    assert_eq!(p.omega1(), int(60));
    assert_eq!(p.omega(Arrow::Down, 1), int(84));
    assert!(p.check_assumption(2, 1).is_ok());
    assert!(matches!(p.check_assumption(3, 1), Err(Error::AssumptionViolation(_))));
    assert!(matches!(build(3, 1, &p), Err(Error::AssumptionViolation(_))));
}

#[test]
fn bubbles_on_the_built_algebra() {
    // e₁ y₁^j e₁ 1_a read off the regular representation against the
    // recurrence for ω_j and ω*_j.
    let p = params();
    let alg = build(1, 1, &p).unwrap();
    for (first, a) in [(Arrow::Up, "∧∨"), (Arrow::Down, "∨∧")] {
        let a = Sequence::parse(a).unwrap();
        let col = alg.column(&a);
        let e = col.gen(GenKind::E, 1).mul(&col.projection(&a));
        let mut y = col.projection(&a);
        for j in 0..5 {
            let lhs = e.mul(&y).mul(&e);
            assert_eq!(lhs, e.scale(&p.omega(first, j)), "{a} j = {j}");
            y = col.y[0].mul(&y);
        }
    }
}

#[test]
fn jm_elements_are_block_diagonal() {
    let br = WalledBrauer::formal(2, 2);
    for x in jm_elements(&br) {
        let mut diag = walled_brauer::Element::zero();
        for a in br.sequences() {
            diag = diag.add(&x.block(&a, &a));
        }
        assert_eq!(diag, x);
    }
}

#[test]
fn jm_on_tensor_space_is_integral_and_diagonalisable() {
    for (r, t) in [(1, 1), (2, 1), (1, 2)] {
        let model = TensorSpace::new(3, r, t);
        let xi = jm_elements(&model);
        for (i, x) in xi.iter().enumerate() {
            for y in &xi[..i] {
                assert!(x.commutes_with(y));
            }
            let sd = spectral_decompose(x).unwrap();
            assert!(sd.components.iter().all(|c| c.index == 1 && is_integer(&c.eigenvalue)), "({r},{t}) ξ_{}", i + 1);
        }
    }
}

#[test]
fn center_dimension_counts_bipartition_pairs() {
    // Generic δ: one central idempotent per pair (λ, μ) with |λ| = r − k,
    // |μ| = t − k.
    let partitions = [1, 1, 2, 3, 5];
    for (r, t) in [(1, 0), (1, 1), (2, 0), (2, 1), (1, 2), (3, 0), (2, 2), (3, 1)] {
        let want: usize = (0..=r.min(t)).map(|k| partitions[r - k] * partitions[t - k]).sum();
        let (row, rep) = center_dimension(r, t, &int(3)).unwrap();
        assert!(rep.passed());
        assert_eq!(row.full_dim, want, "({r},{t})");
        assert!(row.constructed_dim <= row.full_dim);
    }
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("wbrauer-cache-{}", std::process::id()));
    let p = params();
    let built = build_cached(1, 1, &p, Some(&dir)).unwrap();
    let path = cache_path(&dir, 1, 1, &p);
    assert!(path.exists());
    let loaded = load(&path).unwrap();
    for (x, y) in built.columns.iter().zip(&loaded.columns) {
        assert_eq!(x.basis, y.basis);
        assert_eq!(x.y, y.y);
        assert_eq!(x.gens, y.gens);
    }
    let again = build_cached(1, 1, &p, Some(&dir)).unwrap();
    assert_eq!(again.columns.len(), built.columns.len());
    std::fs::remove_dir_all(&dir).unwrap();
}
