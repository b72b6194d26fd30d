use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::curve::{Curve, Move, Pt};
use crate::error::{Error, Result};
use crate::surface::Surface;

pub type LatticePath = Vec<(i64, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Census {
    pub bundle_classes: u64,
    pub fundamental: u64,
    pub sheaf_classes: u64,
}

/// Anchor pattern that picks a representative of each se-orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    /// Two bridging arcs ending at inner 0 from outer `a` and `b`, plus the
    /// outer arc between them.
    Outer { a: i64, b: i64 },
    /// Bridging arcs from outer `a` to inner 0 and `b`, plus the inner arc
    /// between them.
    Inner { a: i64, b: i64 },
}

const CENSUS_MAX: i64 = 12;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

/// Closed form for tilting sheaves up to τ.
pub fn sheaf_class_formula(p: u64, q: u64) -> u64 {
    let part = |r: u64| (1..=r).map(|k| k * catalan(p + q - k) * catalan(k - 1)).sum::<u64>();
    part(q) + part(p)
}

pub fn enumerate_lattice_paths(p: i64, q: i64) -> Vec<LatticePath> {
    fn go(x: i64, y: i64, p: i64, q: i64, cur: &mut LatticePath, out: &mut Vec<LatticePath>) {
        cur.push((x, y));
        if x == p && y == q {
            out.push(cur.clone());
        } else {
            if x < p {
                go(x + 1, y, p, q, cur, out);
            }
            if y < q {
                go(x, y + 1, p, q, cur, out);
            }
        }
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, 0, p.max(0), q.max(0), &mut Vec::new(), &mut out);
    out
}

pub fn is_dyck(p: i64, q: i64, path: &[(i64, i64)]) -> bool {
    path.iter().all(|&(x, y)| p * y <= q * x)
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    // multiplicities a_1..a_n with sum i*a_i = n
    fn go(rest: usize, part: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if part == 0 {
            if rest == 0 {
                out.push(a.clone());
            }
            return;
        }
        for m in 0..=rest / part {
            a[part - 1] = m;
            go(rest - m * part, part - 1, a, out);
        }
        a[part - 1] = 0;
    }
    let mut out = Vec::new();
    go(n, max, &mut vec![0; max], &mut out);
    out
}

/// Number of (p,q)-Dyck paths by the exponential formula over divisors of
/// gcd(p,q), with atoms binom(k+l, k)/(k+l).
pub fn bizley_count(p: i64, q: i64) -> Result<u64> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidArguments(format!("bizley_count needs p,q >= 1, got ({p},{q})")));
    }
    let d = num_integer::gcd(p, q) as usize;
    let atom = |i: usize| {
        let (k, l) = (i as u64 * p as u64 / d as u64, i as u64 * q as u64 / d as u64);
        BigRational::new(BigInt::from(binomial(k + l, k)), BigInt::from(k + l))
    };
    let mut total = BigRational::zero();
    for a in partitions(d, d) {
        let mut term = BigRational::one();
        for (idx, &m) in a.iter().enumerate() {
            let mut fact = BigInt::one();
            for f in 1..=m {
                fact *= f;
            }
            term = term * num_traits::pow(atom(idx + 1), m) / BigRational::from_integer(fact);
        }
        total += term;
    }
    if !total.is_integer() {
        return Err(Error::InternalInvariantViolation(format!("Dyck count for ({p},{q}) is {total}")));
    }
    let n = total.to_integer().to_u64().unwrap();
    let direct = enumerate_lattice_paths(p, q).iter().filter(|pt| is_dyck(p, q, pt)).count() as u64;
    if n != direct {
        return Err(Error::InternalInvariantViolation(format!(
            "exponential formula gives {n}, enumeration gives {direct}"
        )));
    }
    Ok(n)
}

impl Surface {
    pub fn is_triangulation(&self, arcs: &[Curve]) -> Result<bool> {
        if arcs.len() as i64 != self.p() + self.q() {
            return Ok(false);
        }
        let set: BTreeSet<Curve> = arcs.iter().copied().collect();
        if set.len() != arcs.len() {
            return Ok(false);
        }
        for &a in arcs {
            self.check_curve(a)?;
            if !self.is_arc(a) {
                return Ok(false);
            }
        }
        for &a in arcs {
            for &b in arcs {
                if self.positive_int(a, b)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn se_shift(&self, arcs: &[Curve], k: i64) -> Vec<Curve> {
        let mut out: Vec<Curve> = arcs.iter().map(|&c| self.se_shift_curve(c, k)).collect();
        out.sort();
        out
    }

    fn all_bridging(&self, arcs: &[Curve]) -> Result<Vec<(i64, i64)>> {
        arcs.iter()
            .map(|&c| match self.check_curve(c)? {
                Curve::Bridging { i, j } => Ok((i, j)),
                other => Err(Error::NotApplicable(format!("{other} is not a bridging arc"))),
            })
            .collect()
    }

    /// The τ-shift of a tilting bundle containing the arc through (0,0).
    pub fn canonical_bundle_rep(&self, arcs: &[Curve]) -> Result<Vec<Curve>> {
        let (p, q) = (self.p(), self.q());
        let pts = self.all_bridging(arcs)?;
        let hits: Vec<_> = pts.iter().filter(|(i, j)| (i + j).rem_euclid(p + q) == 0).collect();
        let [&(i, j)] = hits.as_slice() else {
            return Err(Error::NotApplicable(format!(
                "expected one arc with i+j divisible by p+q, found {}",
                hits.len()
            )));
        };
        let m = (i + j).div_euclid(p + q);
        Ok(self.se_shift(arcs, m * p - i))
    }

    pub fn tilting_to_path(&self, arcs: &[Curve]) -> Result<LatticePath> {
        let (p, q) = (self.p(), self.q());
        let canon = self.canonical_bundle_rep(arcs)?;
        let mut pts: Vec<(i64, i64)> = self
            .all_bridging(&canon)?
            .into_iter()
            .map(|(i, j)| {
                let k = -(i + j).div_euclid(p + q);
                (i + k * p, j + k * q)
            })
            .collect();
        pts.sort_by_key(|&(i, j)| (i + j, i));
        pts.push((p, q));
        let staircase = pts.windows(2).all(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            (dx, dy) == (1, 0) || (dx, dy) == (0, 1)
        });
        if pts[0] != (0, 0) || !staircase {
            return Err(Error::NotApplicable("bridging arcs do not form a triangulation".into()));
        }
        Ok(pts)
    }

    pub fn path_to_tilting(&self, path: &[(i64, i64)]) -> Result<Vec<Curve>> {
        let (p, q) = (self.p(), self.q());
        let ok = path.len() as i64 == p + q + 1
            && path.first() == Some(&(0, 0))
            && path.last() == Some(&(p, q))
            && path.windows(2).all(|w| {
                let d = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                d == (1, 0) || d == (0, 1)
            });
        if !ok {
            return Err(Error::InvalidArguments("not a lattice path from (0,0) to (p,q)".into()));
        }
        let mut out: Vec<Curve> = path[..path.len() - 1].iter().map(|&(x, y)| self.bridging(x, y)).collect();
        out.sort();
        Ok(out)
    }

    /// Anchors matched by a triangulation, over both families of index ranges.
    pub fn anchors(&self, arcs: &[Curve]) -> Vec<Anchor> {
        let (p, q) = (self.p(), self.q());
        let set: BTreeSet<Curve> = arcs.iter().copied().collect();
        let has = |c: Curve| set.contains(&self.canonical(c).unwrap());
        let mut out = Vec::new();
        for a in (1 - q)..=0 {
            for b in 1..=a + q {
                if has(self.bridging(0, a))
                    && has(self.bridging(0, b))
                    && (b - a == 1 || has(Curve::Outer { a, b }))
                {
                    out.push(Anchor::Outer { a, b });
                }
            }
        }
        for a in (1 - p)..=0 {
            for b in (1 - a)..=p {
                if has(self.bridging(0, a)) && has(self.bridging(b, a)) && (b == 1 || has(Curve::Inner { a: 0, b })) {
                    out.push(Anchor::Inner { a, b });
                }
            }
        }
        out
    }

    /// The unique se-shift of a triangulation matching an anchor.
    pub fn se_canonical(&self, arcs: &[Curve]) -> Result<Vec<Curve>> {
        let (p, q) = (self.p(), self.q());
        let lo = 1 - p.max(q);
        let mut shifts = BTreeSet::new();
        for &c in arcs {
            if let Curve::Bridging { i, j } = self.check_curve(c)? {
                // shifting by m*p - i moves the arc to (0, i+j - m(p+q))
                let t = i + j;
                let mmin = Integer::div_ceil(&t, &(p + q));
                let mmax = (t - lo).div_euclid(p + q);
                for m in mmin..=mmax {
                    shifts.insert(m * p - i);
                }
            }
        }
        let mut found: Vec<Vec<Curve>> = Vec::new();
        for k in shifts {
            let t = self.se_shift(arcs, k);
            if !self.anchors(&t).is_empty() && !found.contains(&t) {
                found.push(t);
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            n => Err(Error::InternalInvariantViolation(format!("{n} anchored representatives in one se-orbit"))),
        }
    }

    fn diagonal(&self, u: Pt, v: Pt) -> Curve {
        let c = match (u, v) {
            (Pt::Inner(x), Pt::Inner(y)) => Curve::Inner { a: x.min(y), b: x.max(y) },
            (Pt::Outer(x), Pt::Outer(y)) => Curve::Outer { a: x.min(y), b: x.max(y) },
            (Pt::Inner(i), Pt::Outer(j)) | (Pt::Outer(j), Pt::Inner(i)) => Curve::Bridging { i, j },
        };
        self.canonical(c).unwrap()
    }

    /// All triangulations of a convex polygon, as diagonal sets.
    fn polygon_triangulations(&self, poly: &[Pt]) -> Vec<Vec<Curve>> {
        fn go(s: &Surface, poly: &[Pt], i: usize, j: usize) -> Vec<Vec<Curve>> {
            if j <= i + 1 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for k in i + 1..j {
                let left = go(s, poly, i, k);
                let right = go(s, poly, k, j);
                for l in &left {
                    for r in &right {
                        let mut t = l.clone();
                        t.extend_from_slice(r);
                        if k > i + 1 {
                            t.push(s.diagonal(poly[i], poly[k]));
                        }
                        if j > k + 1 {
                            t.push(s.diagonal(poly[k], poly[j]));
                        }
                        out.push(t);
                    }
                }
            }
            out
        }
        go(self, poly, 0, poly.len() - 1)
    }

    /// Triangulations containing the anchor arcs, built polygon by polygon.
    pub fn anchored_triangulations(&self, anchor: Anchor) -> Vec<Vec<Curve>> {
        let (p, q) = (self.p(), self.q());
        let (base, first, second): (Vec<Curve>, Vec<Pt>, Vec<Pt>) = match anchor {
            Anchor::Outer { a, b } => {
                let mut base = vec![self.bridging(0, a), self.bridging(0, b)];
                if b - a > 1 {
                    base.push(Curve::Outer { a, b });
                }
                let first: Vec<Pt> = (a..=b).map(Pt::Outer).collect();
                let mut second: Vec<Pt> = (0..=p).map(Pt::Inner).collect();
                second.extend((b..=a + q).rev().map(Pt::Outer));
                (base, first, second)
            }
            Anchor::Inner { a, b } => {
                let mut base = vec![self.bridging(0, a), self.bridging(b, a)];
                if b > 1 {
                    base.push(Curve::Inner { a: 0, b });
                }
                let first: Vec<Pt> = (0..=b).map(Pt::Inner).collect();
                let mut second: Vec<Pt> = (b..=p).map(Pt::Inner).collect();
                second.extend((a..=a + q).rev().map(Pt::Outer));
                (base, first, second)
            }
        };
        let base: Vec<Curve> = base.into_iter().map(|c| self.canonical(c).unwrap()).collect();
        let mut out = Vec::new();
        for t1 in self.polygon_triangulations(&first) {
            for t2 in self.polygon_triangulations(&second) {
                let mut t = base.clone();
                t.extend_from_slice(&t1);
                t.extend_from_slice(&t2);
                t.sort();
                out.push(t);
            }
        }
        out
    }

    pub fn all_anchors(&self) -> Vec<Anchor> {
        let (p, q) = (self.p(), self.q());
        let mut out = Vec::new();
        for a in (1 - q)..=0 {
            for b in 1..=a + q {
                out.push(Anchor::Outer { a, b });
            }
        }
        for a in (1 - p)..=0 {
            for b in (1 - a)..=p {
                out.push(Anchor::Inner { a, b });
            }
        }
        out
    }

    /// One representative per se-orbit of triangulations, validated.
    pub fn tilting_classes(&self) -> Result<Vec<Vec<Curve>>> {
        self.census_guard()?;
        let mut seen = BTreeSet::new();
        for anchor in self.all_anchors() {
            for t in self.anchored_triangulations(anchor) {
                if !self.is_triangulation(&t)? {
                    return Err(Error::InternalInvariantViolation(format!("{anchor:?} produced a non-triangulation")));
                }
                if self.se_canonical(&t)? != t {
                    return Err(Error::InternalInvariantViolation(format!("{anchor:?} produced a non-canonical triangulation")));
                }
                if !seen.insert(t) {
                    return Err(Error::InternalInvariantViolation(format!("{anchor:?} repeats a triangulation")));
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    fn census_guard(&self) -> Result<()> {
        if self.p() + self.q() > CENSUS_MAX {
            return Err(Error::InvalidArguments(format!("census needs p+q <= {CENSUS_MAX}")));
        }
        Ok(())
    }

    pub fn census(&self) -> Result<Census> {
        self.census_guard()?;
        let (p, q) = (self.p(), self.q());
        let paths = enumerate_lattice_paths(p, q);
        let mut bundles = 0u64;
        let mut fundamental = 0u64;
        for path in &paths {
            let t = self.path_to_tilting(path)?;
            if !self.is_triangulation(&t)? || self.tilting_to_path(&t)? != *path {
                return Err(Error::InternalInvariantViolation("lattice path image is not a tilting bundle".into()));
            }
            bundles += 1;
            let nonneg = t.iter().all(|&c| match self.phi(c) {
                Ok(crate::sheaf::SheafClass::LineBundle(x)) => self.degree(x) >= 0,
                _ => false,
            });
            if nonneg != is_dyck(p, q, path) {
                return Err(Error::InternalInvariantViolation("Dyck condition disagrees with degrees".into()));
            }
            fundamental += nonneg as u64;
        }
        let sheaf_classes = self.tilting_classes()?.len() as u64;
        let (pu, qu) = (p as u64, q as u64);
        if bundles != binomial(pu + qu, pu)
            || fundamental != bizley_count(p, q)?
            || sheaf_classes != sheaf_class_formula(pu, qu)
        {
            return Err(Error::InternalInvariantViolation(format!(
                "census ({bundles}, {fundamental}, {sheaf_classes}) disagrees with the closed forms"
            )));
        }
        Ok(Census { bundle_classes: bundles, fundamental, sheaf_classes })
    }

    /// Applies `move([s,e])` k times to every arc, keeping list order.
    pub fn se_shift_list(&self, arcs: &[Curve], k: i64) -> Result<Vec<Curve>> {
        let m = if k >= 0 { [Move::S, Move::E] } else { [Move::SInv, Move::EInv] };
        arcs.iter()
            .map(|&c| (0..k.abs()).try_fold(c, |c, _| self.move_curve(c, &m)))
            .collect()
    }
}
