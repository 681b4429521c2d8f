//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines always show; exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use walled_brauer::calculus::{inverse_of_polynomial, sqrt_of_polynomial, spectral_decompose, sqrt_series, truncated_inverse, Branch};
use walled_brauer::center::{central_element, reproduce_counterexample, verify_central, MultiPoly};
use walled_brauer::cyclotomic::{build, CyclotomicAlgebra};
use walled_brauer::isomorphism::verify_isomorphism;
use walled_brauer::matrix::QMat;
use walled_brauer::params::Params;
use walled_brauer::poly::Poly;
use walled_brauer::presentation::verify_presentation;
use walled_brauer::report::Report;
use walled_brauer::scalar::{int, rat, with_precision};
use walled_brauer::schur_weyl::{commutant_report, verify_rep_is_homomorphism};
use walled_brauer::truncation::eigen_cross_check;
use walled_brauer::young4::sum_of_squares;
use walled_brauer::{OrientedDiagram, Sequence, WalledBrauer};

use common::{factorial, random_matrix, square_pool, surd_pool};

const BIGFLOAT_TOL: f64 = 1e-30;
const RELATION_TOL: f64 = 1e-20;
const PRECISION: usize = 256;
const RANDOM_MATRICES: usize = 100;
const SEED: u64 = 0x5eed_2024;

fn params() -> Params {
    Params::new(6, 6, int(2))
}

fn ranks(max: usize) -> Vec<(usize, usize)> {
    (1..=max).flat_map(|n| (0..=n).rev().map(move |r| (r, n - r))).collect()
}

fn failures(rep: &Report) -> Vec<String> {
    rep.failures().map(|c| format!("{}: {} {} {}", rep.title, c.relation, c.orientation, c.detail)).collect()
}

fn presentation() -> Vec<String> {
    ranks(4).into_iter().flat_map(|(r, t)| failures(&verify_presentation(r, t))).collect()
}

fn dimension_counts() -> Vec<String> {
    let mut bad = Vec::new();
    for (r, t) in ranks(4) {
        for a in Sequence::all(r, t) {
            for b in Sequence::all(r, t) {
                let got = OrientedDiagram::enumerate(&a, &b).len();
                if got != factorial(r + t) {
                    bad.push(format!("{a}→{b}: {got}"));
                }
            }
        }
    }
    bad
}

fn schur_weyl() -> Vec<String> {
    let mut bad = Vec::new();
    for (r, t) in ranks(3) {
        bad.extend(failures(&verify_rep_is_homomorphism(3, r, t)));
        bad.extend(failures(&commutant_report(3, r, t)));
    }
    bad
}

fn sqrt_calculus() -> Vec<String> {
    let mut bad = Vec::new();
    let head = vec![int(1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128)];
    if sqrt_series(5) != head {
        bad.push("series head".into());
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    let f = Poly::x();
    for i in 0..RANDOM_MATRICES {
        let size = rng.gen_range(1..=8);
        let exact = i % 2 == 0;
        let x0 = random_matrix(&mut rng, size, &if exact { square_pool() } else { surd_pool() });
        let fx = x0.eval_poly(&f);
        let id = QMat::identity(size);
        let form = match sqrt_of_polynomial(&x0, &f) {
            Ok(s) => s,
            Err(e) => {
                bad.push(format!("matrix {i}: {e}"));
                continue;
            }
        };
        if exact {
            let s = form.exact(Branch::Principal).expect("square spectrum");
            if s.mul(&s) != fx {
                bad.push(format!("matrix {i}: exact sqrt² ≠ f(x0)"));
            }
        } else {
            let s = with_precision(PRECISION, || form.to_float(Branch::Principal));
            let res = with_precision(PRECISION, || s.mul(&s).sub(&fx.to_float()).max_abs());
            if res >= BIGFLOAT_TOL {
                bad.push(format!("matrix {i}: sqrt residual {res:e}"));
            }
        }
        match inverse_of_polynomial(&x0, &f) {
            Ok(inv) if inv.mul(&fx) == id => {}
            _ => bad.push(format!("matrix {i}: inverse")),
        }
        if let Ok(sd) = spectral_decompose(&x0) {
            let ev = sd.eigenvalues()[rng.gen_range(0..sd.eigenvalues().len())].clone();
            match truncated_inverse(&x0, &f, &[ev]) {
                Ok((eta, g)) if g.mul(&fx) == eta && fx.mul(&g) == eta && eta.mul(&eta) == eta => {}
                _ => bad.push(format!("matrix {i}: truncated inverse")),
            }
        }
    }
    bad
}

fn cyclotomic_algebras(list: &[(usize, usize)]) -> Result<Vec<CyclotomicAlgebra>, String> {
    list.iter().map(|&(r, t)| build(r, t, &params()).map_err(|e| format!("({r},{t}): {e}"))).collect()
}

fn cyclotomic(algs: &[CyclotomicAlgebra]) -> Vec<String> {
    algs.iter().flat_map(|a| failures(&walled_brauer::cyclotomic::verify_algebra(a))).collect()
}

fn eigen(algs: &[CyclotomicAlgebra]) -> Vec<String> {
    let mut bad = Vec::new();
    for a in algs {
        match eigen_cross_check(a) {
            Ok(rep) => bad.extend(failures(&rep)),
            Err(e) => bad.push(e.to_string()),
        }
    }
    bad
}

fn isomorphism(algs: &[CyclotomicAlgebra]) -> Vec<String> {
    let mut bad = Vec::new();
    for a in algs {
        match with_precision(PRECISION, || verify_isomorphism(a, PRECISION, RELATION_TOL)) {
            Ok(rep) => {
                bad.extend(failures(&rep));
                let mixed = a.r > 0 && a.t > 0;
                let equal = a.r >= 2 || a.t >= 2;
                let families = [
                    ("τ_k² = −δ τ_k", mixed),
                    ("σ̂_k² = f", mixed),
                    ("e_k b_k⁻¹ e_k f_{k−1} = e_k f_{k−1}", mixed),
                    ("σ_k² = f", equal),
                    ("Φ(ξ_k − β₂^{a_k}) = −y_k f", true),
                    ("(r+t)!", true),
                    ("residual shrinks", a.n() >= 2),
                ];
                for (name, needed) in families {
                    if needed && !rep.checks.iter().any(|c| c.relation.contains(name)) {
                        bad.push(format!("({},{}): no check named {name:?}", a.r, a.t));
                    }
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    bad
}

fn center() -> Vec<String> {
    let br = WalledBrauer::formal(2, 1);
    let mut bad = Vec::new();
    for s in ["p1", "p3", "p1^2", "p1*p3"] {
        let p = MultiPoly::parse(s, 3).expect("polynomial");
        match central_element(&p, 2, 1) {
            Ok(z) => bad.extend(failures(&verify_central(&br, &z)).into_iter().map(|f| format!("{s}: {f}"))),
            Err(e) => bad.push(format!("{s}: {e}")),
        }
    }
    bad.extend(failures(&reproduce_counterexample()));
    bad
}

fn young() -> Vec<String> {
    (1..=6)
        .filter_map(|n| {
            let k = 2 * n + 4;
            match sum_of_squares(n, &Params::new(k, k, int(2))) {
                Ok(s) if s == factorial(n) => None,
                Ok(s) => Some(format!("n = {n}: {s}")),
                Err(e) => Some(format!("n = {n}: {e}")),
            }
        })
        .collect()
}

fn main() -> ExitCode {
    let small = [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (1, 2)];
    let third = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (0, 3)];
    let mut all_ok = true;
    let mut line = |n: usize, what: &str, run: &mut dyn FnMut() -> Vec<String>| {
        let start = Instant::now();
        let bad = run();
        let ok = bad.is_empty();
        all_ok &= ok;
        println!("criterion {n}: {} | {what} | {:.1?}", if ok { "PASS" } else { "FAIL" }, start.elapsed());
        for b in bad.iter().take(10) {
            println!("    {b}");
        }
    };
    line(1, "presentation relations exact over Q[δ], r+t ≤ 4", &mut presentation);
    line(2, "|enumerate(a,b)| = (r+t)!, r+t ≤ 4", &mut dimension_counts);
    line(3, "Schur–Weyl at m = 3, r+t ≤ 3", &mut schur_weyl);
    line(4, &format!("sqrt series head, {RANDOM_MATRICES} random matrices, float tol {BIGFLOAT_TOL:e}"), &mut sqrt_calculus);
    let built = cyclotomic_algebras(&third);
    let (five, rest): (Vec<_>, Vec<_>) = match &built {
        Ok(algs) => algs.iter().cloned().partition(|a| small.contains(&(a.r, a.t))),
        Err(_) => (Vec::new(), Vec::new()),
    };
    let build_err: Vec<String> = built.as_ref().err().cloned().into_iter().collect();
    let all: Vec<CyclotomicAlgebra> = five.iter().chain(&rest).cloned().collect();
    line(5, "cyclotomic dimensions 2^{r+t}(r+t)! and relations, m = n = 6, δ = 2", &mut || {
        let mut b = build_err.clone();
        b.extend(cyclotomic(&five));
        b
    });
    line(6, "joint y-spectra against 4-Young paths, r+t ≤ 3", &mut || {
        let mut b = build_err.clone();
        b.extend(eigen(&all));
        b
    });
    line(7, &format!("isomorphism residual < {RELATION_TOL:e} at {PRECISION} bits, r+t ≤ 3"), &mut || {
        let mut b = build_err.clone();
        b.extend(isomorphism(&all));
        b
    });
    line(8, "central elements at (2,1) formal δ and the counterexample", &mut center);
    line(9, "Σ f_Y² = n! for n ≤ 6", &mut young);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
