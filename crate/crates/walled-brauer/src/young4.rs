//! 4-Young diagrams in the strip of m+n columns, paths of them indexed by
//! orientations, and the eigenvalue sequences they predict.
//!
//! Strip columns are numbered m+n, …, 1 from left to right and the wall v
//! sits between columns m+1 and m. Each region is stored as an ordinary
//! partition; its placement only enters through the column map below.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::{Arrow, Sequence};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::scalar::{format_rational, int, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Region {
    /// Rotated, hanging above o from column 1 leftwards; shift β₁^∧.
    OuterAbove,
    /// Rotated, above o from column m+1 leftwards; shift β₂^∧.
    InnerAbove,
    /// Below o from column m rightwards; shift β₂^∨.
    InnerBelow,
    /// Below o from column m+n rightwards; shift β₁^∨.
    OuterBelow,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::OuterAbove, Region::InnerAbove, Region::InnerBelow, Region::OuterBelow];

    pub fn above(self) -> bool {
        matches!(self, Region::OuterAbove | Region::InnerAbove)
    }

    /// Adjacent to the wall v.
    pub fn inner(self) -> bool {
        matches!(self, Region::InnerAbove | Region::InnerBelow)
    }

    fn index(self) -> usize {
        self as usize
    }

    fn shift(self, p: &Params) -> Rational {
        match self {
            Region::OuterAbove => p.beta1(Arrow::Up),
            Region::InnerAbove => p.beta2(Arrow::Up),
            Region::InnerBelow => p.beta2(Arrow::Down),
            Region::OuterBelow => p.beta1(Arrow::Down),
        }
    }

    /// Strip column (1-based) of the region's column `col` (0-based).
    fn strip_column(self, col: usize, p: &Params) -> usize {
        match self {
            Region::OuterAbove => 1 + col,
            Region::InnerAbove => p.m + 1 + col,
            Region::InnerBelow => p.m - col,
            Region::OuterBelow => p.m + p.n - col,
        }
    }

    fn width(self, p: &Params) -> usize {
        match self {
            Region::OuterAbove | Region::InnerBelow => p.m,
            Region::InnerAbove | Region::OuterBelow => p.n,
        }
    }
}

/// Content of box (row, col) of a region: row − col plus the region shift.
pub fn content(region: Region, row: usize, col: usize, p: &Params) -> Rational {
    int(row as i64 - col as i64).add(&region.shift(p))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FourYoungDiagram {
    /// Row lengths per region, in `Region::ALL` order.
    pub parts: [Vec<usize>; 4],
}

impl FourYoungDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn part(&self, r: Region) -> &[usize] {
        &self.parts[r.index()]
    }

    pub fn size(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    fn column_height(part: &[usize], col: usize) -> usize {
        part.iter().take_while(|&&len| len > col).count()
    }

    /// Signed column heights b_j, j = 1..m+n, at index j−1.
    pub fn weight(&self, p: &Params) -> Vec<i64> {
        let mut w = vec![0i64; p.m + p.n];
        for r in Region::ALL {
            let part = self.part(r);
            let cols = part.first().copied().unwrap_or(0);
            for c in 0..cols {
                let h = Self::column_height(part, c) as i64;
                w[r.strip_column(c, p) - 1] += if r.above() { h } else { -h };
            }
        }
        w
    }

    fn occupied(&self, strip_col: usize, above: bool, p: &Params) -> bool {
        Region::ALL.iter().filter(|r| r.above() == above).any(|&r| {
            let len = self.part(r).first().copied().unwrap_or(0);
            (0..len).any(|c| r.strip_column(c, p) == strip_col)
        })
    }

    /// Boxes that can be added to `region`, as (row, col).
    pub fn addable(&self, region: Region, p: &Params) -> Vec<(usize, usize)> {
        let part = self.part(region);
        let mut out = Vec::new();
        for row in 0..=part.len() {
            let len = part.get(row).copied().unwrap_or(0);
            let fits_above = row == 0 || part[row - 1] > len;
            if !fits_above || len >= region.width(p) {
                continue;
            }
            if self.occupied(region.strip_column(len, p), !region.above(), p) {
                continue;
            }
            out.push((row, len));
        }
        out
    }

    pub fn removable(&self, region: Region) -> Vec<(usize, usize)> {
        let part = self.part(region);
        (0..part.len())
            .filter(|&row| part.get(row + 1).copied().unwrap_or(0) < part[row])
            .map(|row| (row, part[row] - 1))
            .collect()
    }

    fn with_box(&self, region: Region, row: usize, add: bool) -> Self {
        let mut out = self.clone();
        let part = &mut out.parts[region.index()];
        if add {
            if row == part.len() {
                part.push(1);
            } else {
                part[row] += 1;
            }
        } else {
            part[row] -= 1;
            if part[row] == 0 {
                part.pop();
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub add: bool,
    pub region: Region,
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "ser_rational")]
    pub content: Rational,
    pub sign: i8,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourYoungPath {
    pub steps: Vec<FourYoungDiagram>,
    pub moves: Vec<Move>,
}

impl FourYoungPath {
    pub fn end(&self) -> &FourYoungDiagram {
        self.steps.last().expect("paths start at the empty diagram")
    }

    /// Only boxes of the two middle regions are touched.
    pub fn is_small(&self) -> bool {
        self.moves.iter().all(|m| m.region.inner())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathFilter {
    All,
    /// Restrict to the two middle regions.
    Small,
}

/// All paths for the orientation a: an ∧ step adds above o or removes
/// below o, a ∨ step removes above o or adds below o.
pub fn enumerate_paths(a: &Sequence, p: &Params, filter: PathFilter) -> Result<Vec<FourYoungPath>> {
    let r = a.ups();
    p.check_assumption(r, a.len() - r)?;
    let mut paths = vec![FourYoungPath { steps: vec![FourYoungDiagram::empty()], moves: vec![] }];
    for &arrow in &a.0 {
        let mut next = Vec::new();
        for path in &paths {
            let y = path.end();
            for region in Region::ALL {
                if filter == PathFilter::Small && !region.inner() {
                    continue;
                }
                let add = region.above() == (arrow == Arrow::Up);
                let boxes = if add { y.addable(region, p) } else { y.removable(region) };
                for (row, col) in boxes {
                    let mut np = path.clone();
                    np.steps.push(y.with_box(region, row, add));
                    np.moves.push(Move {
                        add,
                        region,
                        row,
                        col,
                        content: content(region, row, col, p),
                        sign: if add { 1 } else { -1 },
                    });
                    next.push(np);
                }
            }
        }
        paths = next;
    }
    Ok(paths)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigen {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub small: bool,
}

/// (ν₁ i₁, …, ν_n i_n) with each entry marked small or large.
pub fn eigenvalue_sequence(path: &FourYoungPath) -> Vec<Eigen> {
    path.moves
        .iter()
        .map(|m| Eigen {
            value: if m.sign > 0 { m.content.clone() } else { m.content.neg() },
            small: m.region.inner(),
        })
        .collect()
}

pub fn values(seq: &[Eigen]) -> Vec<Rational> {
    seq.iter().map(|e| e.value.clone()).collect()
}

/// Predicted multiplicity of each joint eigenvalue sequence of (y₁,…,y_n)
/// acting from the left on 1_b·VB·1_a: pairs of paths p ∈ 𝒴_b, q ∈ 𝒴_a
/// with the same endpoint, counted by the sequence of p.
pub fn predicted_spectrum(b: &Sequence, a: &Sequence, p: &Params, filter: PathFilter) -> Result<BTreeMap<Vec<Rational>, usize>> {
    predicted_spectrum_mixed(b, a, p, filter, filter)
}

/// As `predicted_spectrum`, with separate filters for p ∈ 𝒴_b and q ∈ 𝒴_a.
pub fn predicted_spectrum_mixed(
    b: &Sequence,
    a: &Sequence,
    p: &Params,
    left: PathFilter,
    right: PathFilter,
) -> Result<BTreeMap<Vec<Rational>, usize>> {
    let pb = enumerate_paths(b, p, left)?;
    let ends = endpoint_counts(&enumerate_paths(a, p, right)?);
    let mut out = BTreeMap::new();
    for path in &pb {
        if let Some(&k) = ends.get(path.end()) {
            *out.entry(values(&eigenvalue_sequence(path))).or_default() += k;
        }
    }
    Ok(out)
}

/// Number of paths to each endpoint.
pub fn endpoint_counts(paths: &[FourYoungPath]) -> BTreeMap<FourYoungDiagram, usize> {
    let mut out = BTreeMap::new();
    for q in paths {
        *out.entry(q.end().clone()).or_default() += 1;
    }
    out
}

/// Σ_Y f_Y² over small all-∧ paths with `n` steps.
pub fn sum_of_squares(n: usize, p: &Params) -> Result<usize> {
    let paths = enumerate_paths(&Sequence::standard(n, 0), p, PathFilter::Small)?;
    Ok(endpoint_counts(&paths).values().map(|f| f * f).sum())
}

/// CSV: path id, endpoint weight, eigenvalue sequence, small/large flags.
pub fn paths_csv(paths: &[FourYoungPath], p: &Params) -> String {
    let mut out = String::from("path_id,endpoint_weight,eigenvalues,classes\n");
    for (i, path) in paths.iter().enumerate() {
        let w: Vec<String> = path.end().weight(p).iter().map(i64::to_string).collect();
        let seq = eigenvalue_sequence(path);
        let vals: Vec<String> = seq.iter().map(|e| format_rational(&e.value)).collect();
        let flags: Vec<&str> = seq.iter().map(|e| if e.small { "small" } else { "large" }).collect();
        let _ = writeln!(out, "{},\"{}\",\"{}\",\"{}\"", i, w.join(" "), vals.join(" "), flags.join(" "));
    }
    out
}

/// Errors from an invalid region name in text input.
pub fn parse_region(s: &str) -> Result<Region> {
    match s {
        "outer-above" => Ok(Region::OuterAbove),
        "inner-above" => Ok(Region::InnerAbove),
        "inner-below" => Ok(Region::InnerBelow),
        "outer-below" => Ok(Region::OuterBelow),
        _ => Err(Error::Parse(format!("unknown region {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::new(6, 6, int(2))
    }

    #[test]
    fn contents() {
        let p = params();
        assert_eq!(content(Region::InnerBelow, 0, 0, &p), int(2));
        assert_eq!(content(Region::InnerAbove, 0, 0, &p), int(0));
        assert_eq!(content(Region::OuterBelow, 1, 0, &p), int(7));
    }

    #[test]
    fn figure_weight() {
        let p = Params::new(8, 8, int(0));
        let y = FourYoungDiagram { parts: [vec![2, 1, 1, 1], vec![2, 1, 1], vec![2, 1, 1], vec![2, 1]] };
        let (m, n) = (p.m, p.n);
        let mut expect = vec![0i64; m + n];
        for (j, b) in [(1, 4), (2, 1), (m - 1, -1), (m, -3), (m + 1, 3), (m + 2, 1), (m + n - 1, -1), (m + n, -2)] {
            expect[j - 1] = b;
        }
        assert_eq!(y.weight(&p), expect);
    }

    #[test]
    fn small_examples() {
        let p = params();
        let up = enumerate_paths(&Sequence::parse("∧").unwrap(), &p, PathFilter::Small).unwrap();
        assert_eq!(up.len(), 1);
        assert_eq!(values(&eigenvalue_sequence(&up[0])), vec![int(0)]);
        let mixed = enumerate_paths(&Sequence::parse("∧∨").unwrap(), &p, PathFilter::Small).unwrap();
        assert_eq!(mixed.len(), 2);
        let all = enumerate_paths(&Sequence::parse("∧∨").unwrap(), &p, PathFilter::All).unwrap();
        assert_eq!(all.len(), 6);
    }
}
