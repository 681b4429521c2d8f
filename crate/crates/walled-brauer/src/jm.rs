//! Jucys–Murphy elements of the walled Brauer algebra.

use crate::algebra::{Element, WalledBrauer};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::presentation::{record, Gens, RelationModel};
use crate::report::Report;
use crate::diagram::Sequence;

/// ξ_1, …, ξ_n in any model. With S_k = s_k + ŝ_k the recursion reads
/// ξ_{k+1} = S_k ξ_k S_k + s_k − e_k, since exactly one of the two cases
/// survives on each 1_a.
pub fn jm_elements<M: RelationModel>(model: &M) -> Vec<M::Elem> {
    let n = model.n();
    let g = Gens::build(model);
    let mut xi = vec![model.zero()];
    for k in 1..n {
        let conj = model.product(&[&g.sd[k], &xi[k - 1], &g.sd[k]]);
        let next = model.sub(&model.add(&conj, &g.s[k]), &g.e[k]);
        xi.push(next);
    }
    xi
}

/// ξ_k in Br_{r,t}(δ) with δ formal.
pub fn jucys_murphy(k: usize, r: usize, t: usize) -> Result<Element<Poly>> {
    let n = r + t;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let br = WalledBrauer::formal(r, t);
    Ok(jm_elements(&br).swap_remove(k - 1))
}

/// Pairwise commutators [ξ_j, ξ_k] for j < k, plus block diagonality.
pub fn check_commutativity<M: RelationModel>(model: &M, tol: f64) -> Report {
    let mut report = Report::new("Jucys–Murphy commutativity");
    let xi = jm_elements(model);
    let all = Sequence(vec![]);
    for j in 0..xi.len() {
        for k in j..xi.len() {
            let c = model.sub(&model.mul(&xi[j], &xi[k]), &model.mul(&xi[k], &xi[j]));
            record(model, &mut report, "[ξ_j, ξ_k] = 0", &all, vec![j + 1, k + 1], &c, tol);
        }
        for a in model.sequences() {
            let ua = model.unit(&a);
            let x = model.mul(&xi[j], &ua);
            let d = model.sub(&model.mul(&ua, &x), &x);
            record(model, &mut report, "ξ_k 1_a = 1_a ξ_k 1_a", &a, vec![j + 1], &d, tol);
        }
    }
    report
}

pub fn check_jm_commutativity(r: usize, t: usize) -> Report {
    check_commutativity(&WalledBrauer::formal(r, t), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::GenKind;

    #[test]
    fn first_two() {
        assert!(jucys_murphy(1, 2, 1).unwrap().is_zero());
        let xi2 = jucys_murphy(2, 2, 1).unwrap();
        let br = WalledBrauer::formal(2, 1);
        for a in br.sequences() {
            let block = xi2.block(&a, &a);
            let expect = if a.at(1) == a.at(2) {
                br.gen(GenKind::S, 1, &a)
            } else {
                br.gen(GenKind::E, 1, &a).neg()
            };
            assert_eq!(block, expect, "{a}");
        }
        assert!(jucys_murphy(4, 2, 1).is_err());
    }

    #[test]
    fn commute_small() {
        assert!(check_jm_commutativity(2, 1).passed());
        assert!(check_jm_commutativity(2, 2).passed());
    }
}
