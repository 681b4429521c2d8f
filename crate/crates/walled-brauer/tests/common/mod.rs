#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use walled_brauer::matrix::QMat;
use walled_brauer::scalar::{int, rat, Rational};

/// P J P⁻¹ with J a random Jordan matrix over `pool` and P a product of
/// random unit triangular integer matrices, so P⁻¹ is exact and integral.
pub fn random_matrix(rng: &mut StdRng, size: usize, pool: &[Rational]) -> QMat {
    let mut j = QMat::zeros(size, size);
    let mut i = 0;
    while i < size {
        let len = rng.gen_range(1..=(size - i).min(3));
        let ev = pool[rng.gen_range(0..pool.len())].clone();
        for k in i..i + len {
            j.set(k, k, ev.clone());
            if k + 1 < i + len {
                j.set(k, k + 1, int(1));
            }
        }
        i += len;
    }
    let mut lower = QMat::identity(size);
    let mut upper = QMat::identity(size);
    for a in 0..size {
        for b in 0..a {
            lower.set(a, b, int(rng.gen_range(-2..=2)));
            upper.set(b, a, int(rng.gen_range(-2..=2)));
        }
    }
    let p = lower.mul(&upper);
    let p_inv = p.inverse().expect("unit triangular factors");
    p.mul(&j).mul(&p_inv)
}

pub fn square_pool() -> Vec<Rational> {
    vec![int(1), int(4), int(9), rat(1, 4), rat(25, 9)]
}

pub fn surd_pool() -> Vec<Rational> {
    vec![int(2), int(3), int(5), rat(1, 2), rat(7, 3)]
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
