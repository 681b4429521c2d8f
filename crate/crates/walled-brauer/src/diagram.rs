//! Oriented Brauer diagrams on n bottom and n top points.
//!
//! Endpoint numbering inside the matching: bottom point i (0-based) is `i`,
//! top point j is `n + j`. Public indices (generators, text format) are
//! 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Arrow {
    Up,
    Down,
}

impl Arrow {
    pub fn rev(self) -> Arrow {
        match self {
            Arrow::Up => Arrow::Down,
            Arrow::Down => Arrow::Up,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Arrow::Up => '∧',
            Arrow::Down => '∨',
        }
    }
}

/// An (r,t)-sequence of arrows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Sequence(pub Vec<Arrow>);

impl Sequence {
    pub fn new(arrows: Vec<Arrow>) -> Self {
        Sequence(arrows)
    }

    /// ∧^r ∨^t
    pub fn standard(r: usize, t: usize) -> Self {
        let mut v = vec![Arrow::Up; r];
        v.extend(std::iter::repeat_n(Arrow::Down, t));
        Sequence(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ups(&self) -> usize {
        self.0.iter().filter(|&&a| a == Arrow::Up).count()
    }

    /// 1-based access.
    pub fn at(&self, k: usize) -> Arrow {
        self.0[k - 1]
    }

    /// s_k·a, swapping entries k and k+1 (1-based).
    pub fn swapped(&self, k: usize) -> Sequence {
        let mut v = self.0.clone();
        v.swap(k - 1, k);
        Sequence(v)
    }

    /// All of Seq_{r,t}, in lexicographic order with ∧ < ∨.
    pub fn all(r: usize, t: usize) -> Vec<Sequence> {
        fn rec(r: usize, t: usize, cur: &mut Vec<Arrow>, out: &mut Vec<Sequence>) {
            if r == 0 && t == 0 {
                out.push(Sequence(cur.clone()));
                return;
            }
            if r > 0 {
                cur.push(Arrow::Up);
                rec(r - 1, t, cur, out);
                cur.pop();
            }
            if t > 0 {
                cur.push(Arrow::Down);
                rec(r, t - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(r, t, &mut Vec::new(), &mut out);
        out
    }

    pub fn parse(s: &str) -> Result<Sequence> {
        s.trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '∧' | '^' | 'u' | 'U' => Ok(Arrow::Up),
                '∨' | 'v' | 'd' | 'D' => Ok(Arrow::Down),
                _ => Err(Error::Parse(format!("bad arrow {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Sequence)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{}", a.symbol())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum GenKind {
    Id,
    S,
    SHat,
    E,
    EHat,
}

/// Where a strand starting at some endpoint ends.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum End {
    Bottom(usize),
    Top(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct OrientedDiagram {
    source: Sequence,
    target: Sequence,
    partner: Vec<u8>,
}

impl OrientedDiagram {
    /// Builds a diagram from 1-based endpoint pairs, validating orientation.
    pub fn from_pairs(source: Sequence, target: Sequence, pairs: &[(End, End)]) -> Result<Self> {
        let n = source.len();
        if target.len() != n {
            return Err(Error::Orientation("source and target lengths differ".into()));
        }
        let idx = |e: End| match e {
            End::Bottom(i) => i - 1,
            End::Top(j) => n + j - 1,
        };
        let mut partner = vec![u8::MAX; 2 * n];
        for &(x, y) in pairs {
            let (i, j) = (idx(x), idx(y));
            if i >= 2 * n || j >= 2 * n || partner[i] != u8::MAX || partner[j] != u8::MAX || i == j {
                return Err(Error::Orientation(format!("invalid pairing at {x:?},{y:?}")));
            }
            partner[i] = j as u8;
            partner[j] = i as u8;
        }
        if partner.contains(&u8::MAX) {
            return Err(Error::Orientation("pairing is not perfect".into()));
        }
        let d = OrientedDiagram { source, target, partner };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        for p in 0..2 * n {
            let q = self.partner[p] as usize;
            if p > q {
                continue;
            }
            let ok = match (p < n, q < n) {
                (true, true) => self.source.0[p] != self.source.0[q],
                (false, false) => self.target.0[p - n] != self.target.0[q - n],
                (true, false) => self.source.0[p] == self.target.0[q - n],
                (false, true) => unreachable!(),
            };
            if !ok {
                return Err(Error::Orientation(format!(
                    "strand {} violates orientation on {} -> {}",
                    self.endpoint_name(p),
                    self.source,
                    self.target
                )));
            }
        }
        Ok(())
    }

    pub fn identity(a: &Sequence) -> Self {
        let n = a.len();
        let mut partner = vec![0u8; 2 * n];
        for i in 0..n {
            partner[i] = (n + i) as u8;
            partner[n + i] = i as u8;
        }
        OrientedDiagram { source: a.clone(), target: a.clone(), partner }
    }

    /// The generators of Definition-style presentations; `k` is 1-based.
    pub fn generator(kind: GenKind, k: usize, a: &Sequence) -> Result<Self> {
        let n = a.len();
        if kind == GenKind::Id {
            return Ok(Self::identity(a));
        }
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { index: k, max: n.saturating_sub(1) });
        }
        let same = a.at(k) == a.at(k + 1);
        let need_same = kind == GenKind::S;
        if same != need_same {
            return Err(Error::Orientation(format!(
                "{kind:?}_{k} needs {} arrows at {k},{} on {a}",
                if need_same { "equal" } else { "distinct" },
                k + 1
            )));
        }
        let (i, j) = (k - 1, k);
        let mut d = Self::identity(a);
        match kind {
            GenKind::S | GenKind::SHat => {
                d.link(i, n + j);
                d.link(j, n + i);
            }
            GenKind::E | GenKind::EHat => {
                d.link(i, j);
                d.link(n + i, n + j);
            }
            GenKind::Id => unreachable!(),
        }
        if matches!(kind, GenKind::SHat | GenKind::EHat) {
            d.target = a.swapped(k);
        }
        Ok(d)
    }

    /// The generator of the given shape that is admissible on `a`: the crossing
    /// s_k or ŝ_k.
    pub fn crossing(k: usize, a: &Sequence) -> Result<Self> {
        let kind = if a.at(k) == a.at(k + 1) { GenKind::S } else { GenKind::SHat };
        Self::generator(kind, k, a)
    }

    fn link(&mut self, p: usize, q: usize) {
        self.partner[p] = q as u8;
        self.partner[q] = p as u8;
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self) -> &Sequence {
        &self.source
    }

    pub fn target(&self) -> &Sequence {
        &self.target
    }

    fn endpoint_name(&self, p: usize) -> String {
        let n = self.n();
        if p < n {
            format!("B{}", p + 1)
        } else {
            format!("T{}", p - n + 1)
        }
    }

    fn to_end(&self, p: usize) -> End {
        let n = self.n();
        if p < n {
            End::Bottom(p + 1)
        } else {
            End::Top(p - n + 1)
        }
    }

    /// The other end of the strand at bottom point `i` (1-based).
    pub fn from_bottom(&self, i: usize) -> End {
        self.to_end(self.partner[i - 1] as usize)
    }

    /// The other end of the strand at top point `j` (1-based).
    pub fn from_top(&self, j: usize) -> End {
        self.to_end(self.partner[self.n() + j - 1] as usize)
    }

    pub fn is_permutation(&self) -> bool {
        (0..self.n()).all(|i| self.partner[i] as usize >= self.n())
    }

    /// Number of bottom arcs (equal to the number of top arcs).
    pub fn arcs(&self) -> usize {
        (0..self.n()).filter(|&i| (self.partner[i] as usize) < self.n()).count() / 2
    }

    /// Sorted 1-based pairs.
    pub fn pairs(&self) -> Vec<(End, End)> {
        let mut out = Vec::new();
        for p in 0..2 * self.n() {
            let q = self.partner[p] as usize;
            if p < q {
                out.push((self.to_end(p), self.to_end(q)));
            }
        }
        out
    }

    /// Stacks `upper` above `lower`; returns the result and the number of
    /// closed loops removed.
    pub fn compose(upper: &OrientedDiagram, lower: &OrientedDiagram) -> Result<(OrientedDiagram, usize)> {
        if upper.source != lower.target {
            return Err(Error::Composition(format!(
                "lower target {} differs from upper source {}",
                lower.target, upper.source
            )));
        }
        let n = upper.n();
        // Points: lower bottom i -> i, upper top j -> n + j; middle handled by walking.
        let mut partner = vec![u8::MAX; 2 * n];
        let mut middle_seen = vec![false; n];
        // Walk from an outer endpoint; `in_lower` says which diagram we are in.
        let walk = |start: usize, start_in_lower: bool, seen: &mut Vec<bool>| -> usize {
            let (mut d, mut p) = if start_in_lower { (lower, start) } else { (upper, start) };
            let mut in_lower = start_in_lower;
            loop {
                let q = d.partner[p] as usize;
                if in_lower {
                    if q < n {
                        return q;
                    }
                    let m = q - n;
                    seen[m] = true;
                    in_lower = false;
                    d = upper;
                    p = m;
                } else {
                    if q >= n {
                        return q;
                    }
                    seen[q] = true;
                    in_lower = true;
                    d = lower;
                    p = n + q;
                }
            }
        };
        for i in 0..n {
            if partner[i] == u8::MAX {
                let e = walk(i, true, &mut middle_seen);
                // e is a point index in whichever diagram the walk ended:
                // lower bottom (< n) or upper top (>= n); both match our numbering.
                partner[i] = e as u8;
                partner[e] = i as u8;
            }
        }
        for j in n..2 * n {
            if partner[j] == u8::MAX {
                let e = walk(j, false, &mut middle_seen);
                partner[j] = e as u8;
                partner[e] = j as u8;
            }
        }
        // Remaining middle points lie on closed loops.
        let mut loops = 0;
        for m in 0..n {
            if middle_seen[m] {
                continue;
            }
            loops += 1;
            let mut p = m;
            loop {
                middle_seen[p] = true;
                let q = upper.partner[p] as usize; // upper bottom p -> upper bottom q
                middle_seen[q] = true;
                let r = lower.partner[n + q] as usize - n; // lower top q -> lower top r
                if r == m {
                    break;
                }
                p = r;
            }
        }
        let d = OrientedDiagram { source: lower.source.clone(), target: upper.target.clone(), partner };
        debug_assert!(d.validate().is_ok());
        Ok((d, loops))
    }

    /// All oriented diagrams a → b.
    pub fn enumerate(a: &Sequence, b: &Sequence) -> Vec<OrientedDiagram> {
        let n = a.len();
        assert_eq!(b.len(), n);
        let arrow = |p: usize| if p < n { a.0[p] } else { b.0[p - n] };
        let compatible = |p: usize, q: usize| match (p < n, q < n) {
            (true, true) | (false, false) => arrow(p) != arrow(q),
            _ => arrow(p) == arrow(q),
        };
        let mut out = Vec::new();
        let mut partner = vec![u8::MAX; 2 * n];
        fn rec(
            partner: &mut Vec<u8>,
            compatible: &dyn Fn(usize, usize) -> bool,
            out: &mut Vec<Vec<u8>>,
        ) {
            let Some(p) = partner.iter().position(|&x| x == u8::MAX) else {
                out.push(partner.clone());
                return;
            };
            for q in p + 1..partner.len() {
                if partner[q] == u8::MAX && compatible(p, q) {
                    partner[p] = q as u8;
                    partner[q] = p as u8;
                    rec(partner, compatible, out);
                    partner[p] = u8::MAX;
                    partner[q] = u8::MAX;
                }
            }
        }
        let mut raw = Vec::new();
        rec(&mut partner, &compatible, &mut raw);
        for partner in raw {
            out.push(OrientedDiagram { source: a.clone(), target: b.clone(), partner });
        }
        out.sort();
        out
    }

    /// Factors the diagram into generators, listed top first, so that
    /// composing the list from the left reproduces `self` with no loops.
    pub fn word(&self) -> Vec<OrientedDiagram> {
        let n = self.n();
        let mut caps = Vec::new();
        let mut cups = Vec::new();
        let mut through = Vec::new();
        for (x, y) in self.pairs() {
            match (x, y) {
                (End::Bottom(i), End::Bottom(j)) => caps.push((i, j)),
                (End::Top(i), End::Top(j)) => cups.push((i, j)),
                (End::Bottom(i), End::Top(j)) => through.push((i, j)),
                _ => unreachable!("pairs are sorted bottom first"),
            }
        }
        let c = caps.len();
        // Middle sequence and the two permutations bottom -> middle -> top.
        let mut mid = vec![Arrow::Up; n];
        let mut bot_to_mid = vec![0usize; n];
        let mut mid_to_top = vec![0usize; n];
        for (idx, (&(x, x2), &(y, y2))) in caps.iter().zip(&cups).enumerate() {
            mid[2 * idx] = self.source.at(x);
            mid[2 * idx + 1] = self.source.at(x2);
            bot_to_mid[x - 1] = 2 * idx;
            bot_to_mid[x2 - 1] = 2 * idx + 1;
            let (first, second) = if self.target.at(y) == mid[2 * idx] { (y, y2) } else { (y2, y) };
            mid_to_top[2 * idx] = first - 1;
            mid_to_top[2 * idx + 1] = second - 1;
        }
        for (idx, &(i, j)) in through.iter().enumerate() {
            let m = 2 * c + idx;
            mid[m] = self.source.at(i);
            bot_to_mid[i - 1] = m;
            mid_to_top[m] = j - 1;
        }
        let mid = Sequence(mid);
        let mut word = permutation_word(&mid, &self.target, &mid_to_top);
        for idx in 0..c {
            word.push(OrientedDiagram::generator(GenKind::E, 2 * idx + 1, &mid).expect("mixed pair"));
        }
        word.extend(permutation_word(&self.source, &mid, &bot_to_mid));
        if word.is_empty() {
            word.push(OrientedDiagram::identity(&self.source));
        }
        word
    }

    /// Text form: "a=∧∧∨ ; b=∧∨∧ ; pairs=(B1,T1)(B2,B3)(T2,T3)".
    pub fn to_text(&self) -> String {
        let name = |e: End| match e {
            End::Bottom(i) => format!("B{i}"),
            End::Top(j) => format!("T{j}"),
        };
        let pairs: String = self.pairs().iter().map(|&(x, y)| format!("({},{})", name(x), name(y))).collect();
        format!("a={} ; b={} ; pairs={}", self.source, self.target, pairs)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut a = None;
        let mut b = None;
        let mut pairs = Vec::new();
        for field in s.split(';') {
            let (key, val) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("missing '=' in {field:?}")))?;
            match key.trim() {
                "a" => a = Some(Sequence::parse(val)?),
                "b" => b = Some(Sequence::parse(val)?),
                "pairs" => {
                    for chunk in val.split(')').map(str::trim).filter(|c| !c.is_empty()) {
                        let inner = chunk.trim_start_matches('(');
                        let (x, y) = inner
                            .split_once(',')
                            .ok_or_else(|| Error::Parse(format!("bad pair {chunk:?}")))?;
                        pairs.push((parse_end(x)?, parse_end(y)?));
                    }
                }
                other => return Err(Error::Parse(format!("unknown field {other:?}"))),
            }
        }
        let a = a.ok_or_else(|| Error::Parse("missing a=".into()))?;
        let b = b.ok_or_else(|| Error::Parse("missing b=".into()))?;
        OrientedDiagram::from_pairs(a, b, &pairs)
    }
}

fn parse_end(s: &str) -> Result<End> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad endpoint {s:?}"));
    let num: usize = s.get(1..).ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if num == 0 {
        return Err(bad());
    }
    match s.chars().next() {
        Some('B') => Ok(End::Bottom(num)),
        Some('T') => Ok(End::Top(num)),
        _ => Err(bad()),
    }
}

/// Word (top first) in crossings for the permutation diagram a → b sending
/// bottom i to top perm[i] (0-based).
fn permutation_word(a: &Sequence, b: &Sequence, perm: &[usize]) -> Vec<OrientedDiagram> {
    let mut cur = perm.to_vec();
    let mut seq = a.clone();
    let mut bottom_first = Vec::new();
    while let Some(k) = (0..cur.len().saturating_sub(1)).find(|&k| cur[k] > cur[k + 1]) {
        bottom_first.push(OrientedDiagram::crossing(k + 1, &seq).expect("crossing always admissible"));
        seq = seq.swapped(k + 1);
        cur.swap(k, k + 1);
    }
    debug_assert_eq!(&seq, b);
    bottom_first.reverse();
    bottom_first
}

impl fmt::Display for OrientedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Composes a top-first word of diagrams; returns the diagram and loop count.
pub fn compose_word(word: &[OrientedDiagram]) -> Result<(OrientedDiagram, usize)> {
    let mut iter = word.iter().rev();
    let mut acc = iter.next().ok_or_else(|| Error::Composition("empty word".into()))?.clone();
    let mut loops = 0;
    for d in iter {
        let (c, l) = OrientedDiagram::compose(d, &acc)?;
        acc = c;
        loops += l;
    }
    Ok((acc, loops))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s).unwrap()
    }

    #[test]
    fn generator_shapes() {
        let a = seq("∧∧∨∧");
        let id = OrientedDiagram::generator(GenKind::Id, 0, &a).unwrap();
        assert!(id.is_permutation());
        let e2 = OrientedDiagram::generator(GenKind::E, 2, &a).unwrap();
        assert_eq!(e2.to_text(), "a=∧∧∨∧ ; b=∧∧∨∧ ; pairs=(B1,T1)(B2,B3)(B4,T4)(T2,T3)");
        assert!(matches!(
            OrientedDiagram::generator(GenKind::S, 1, &seq("∧∨")),
            Err(Error::Orientation(_))
        ));
        let eh = OrientedDiagram::generator(GenKind::EHat, 2, &a).unwrap();
        assert_eq!(eh.target(), &seq("∧∨∧∧"));
    }

    #[test]
    fn composition_loops() {
        let a = seq("∧∧∨∧");
        let e2 = OrientedDiagram::generator(GenKind::E, 2, &a).unwrap();
        let (d, loops) = OrientedDiagram::compose(&e2, &e2).unwrap();
        assert_eq!((d, loops), (e2.clone(), 1));
        let sh = OrientedDiagram::generator(GenKind::SHat, 2, &a).unwrap();
        let sh_back = OrientedDiagram::generator(GenKind::SHat, 2, &seq("∧∨∧∧")).unwrap();
        let (d, loops) = OrientedDiagram::compose(&sh_back, &sh).unwrap();
        assert_eq!((d, loops), (OrientedDiagram::identity(&a), 0));
        assert!(OrientedDiagram::compose(&sh, &sh).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(OrientedDiagram::enumerate(&seq("∧"), &seq("∧")).len(), 1);
        assert_eq!(OrientedDiagram::enumerate(&seq("∧∨"), &seq("∧∨")).len(), 2);
        for a in Sequence::all(2, 1) {
            for b in Sequence::all(2, 1) {
                assert_eq!(OrientedDiagram::enumerate(&a, &b).len(), 6);
            }
        }
    }

    #[test]
    fn text_round_trip_and_words() {
        for a in Sequence::all(2, 2) {
            for b in Sequence::all(2, 2) {
                for d in OrientedDiagram::enumerate(&a, &b) {
                    assert_eq!(OrientedDiagram::parse(&d.to_text()).unwrap(), d);
                    let (c, loops) = compose_word(&d.word()).unwrap();
                    assert_eq!((c, loops), (d.clone(), 0));
                }
            }
        }
    }
}
