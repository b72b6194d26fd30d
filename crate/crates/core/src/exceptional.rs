use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::curve::{Curve, Pt};
use crate::error::{Error, Result};
use crate::sheaf::SheafClass;
use crate::surface::Surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionClass {
    ExceptionalCrossing,
    SharedEndpointClockwise,
    Disjoint,
    NotExceptionalPair,
}

/// Marked points not strictly inside any peripheral member, as residues.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExternalPoints {
    pub inner: BTreeSet<i64>,
    pub outer: BTreeSet<i64>,
}

/// Number of retries that widen the bridging pool by one turn each.
const POOL_RETRIES: i64 = 3;

impl Surface {
    pub fn is_exceptional_pair(&self, e: SheafClass, f: SheafClass) -> bool {
        let ok = || -> Result<bool> {
            Ok(self.is_exceptional(e)
                && self.is_exceptional(f)
                && self.hom_dim(f, e)? == 0
                && self.ext1_dim(f, e)? == 0)
        };
        ok().unwrap_or(false)
    }

    fn arcs_pair(&self, a: Curve, b: Curve) -> Result<bool> {
        Ok(self.is_exceptional_pair(self.phi(a)?, self.phi(b)?))
    }

    pub fn pair_position(&self, alpha: Curve, beta: Curve) -> Result<PositionClass> {
        for c in [alpha, beta] {
            self.check_curve(c)?;
            if !self.is_arc(c) {
                return Err(Error::InvalidCurve(format!("{c} is not an arc")));
            }
        }
        if !self.arcs_pair(alpha, beta)? {
            return Ok(PositionClass::NotExceptionalPair);
        }
        if self.exceptional_intersection(alpha, beta)?.is_some() {
            return Ok(PositionClass::ExceptionalCrossing);
        }
        let rel = self.endpoint_relation(alpha, beta)?;
        if rel.shared_start || rel.shared_end {
            if !rel.clockwise_follows {
                return Err(Error::InternalInvariantViolation(format!(
                    "exceptional pair ({alpha}, {beta}) shares an endpoint counterclockwise"
                )));
            }
            return Ok(PositionClass::SharedEndpointClockwise);
        }
        if self.positive_int(alpha, beta)? + self.positive_int(beta, alpha)? != 0 {
            return Err(Error::InternalInvariantViolation(format!(
                "exceptional pair ({alpha}, {beta}) crosses without an exceptional intersection"
            )));
        }
        Ok(PositionClass::Disjoint)
    }

    fn check_collection(&self, arcs: &[Curve]) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &c in arcs {
            self.check_curve(c)?;
            if !seen.insert(c) {
                return Err(Error::InvalidArguments(format!("duplicate arc {c}")));
            }
        }
        Ok(())
    }

    /// Orders a set of arcs along its precedence digraph, or `None` when the
    /// set is not an exceptional collection.
    pub fn order_collection(&self, arcs: &[Curve]) -> Result<Option<Vec<Curve>>> {
        self.check_collection(arcs)?;
        let n = arcs.len();
        let mut sheaves = Vec::with_capacity(n);
        for &c in arcs {
            if !self.is_arc(c) {
                return Ok(None);
            }
            let x = self.phi(c)?;
            if !self.is_exceptional(x) {
                return Ok(None);
            }
            sheaves.push(x);
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                let fwd = self.is_exceptional_pair(sheaves[i], sheaves[j]);
                let bwd = self.is_exceptional_pair(sheaves[j], sheaves[i]);
                match (fwd, bwd) {
                    (false, false) => return Ok(None),
                    (true, false) => {
                        succ[i].push(j);
                        indeg[j] += 1;
                    }
                    (false, true) => {
                        succ[j].push(i);
                        indeg[i] += 1;
                    }
                    (true, true) => {}
                }
            }
        }
        let mut heap: BinaryHeap<_> = (0..n).filter(|&i| indeg[i] == 0).map(|i| Reverse((arcs[i], i))).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((c, i))) = heap.pop() {
            out.push(c);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    heap.push(Reverse((arcs[j], j)));
                }
            }
        }
        Ok((out.len() == n).then_some(out))
    }

    pub fn is_ordered_exceptional_collection(&self, arcs: &[Curve]) -> Result<bool> {
        self.check_collection(arcs)?;
        let mut sheaves = Vec::with_capacity(arcs.len());
        for &c in arcs {
            if !self.is_arc(c) {
                return Ok(false);
            }
            sheaves.push(self.phi(c)?);
        }
        for i in 0..sheaves.len() {
            if !self.is_exceptional(sheaves[i]) {
                return Ok(false);
            }
            for j in i + 1..sheaves.len() {
                if !self.is_exceptional_pair(sheaves[i], sheaves[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Residues strictly inside a peripheral member `(a, b)`.
    fn covered(&self, arcs: &[Curve]) -> (BTreeSet<i64>, BTreeSet<i64>) {
        let (mut inner, mut outer) = (BTreeSet::new(), BTreeSet::new());
        for &c in arcs {
            match c {
                Curve::Inner { a, b } => inner.extend((a + 1..b).map(|x| x.rem_euclid(self.p()))),
                Curve::Outer { a, b } => outer.extend((a + 1..b).map(|x| x.rem_euclid(self.q()))),
                _ => {}
            }
        }
        (inner, outer)
    }

    pub fn external_points(&self, arcs: &[Curve]) -> Result<ExternalPoints> {
        self.check_collection(arcs)?;
        let (ci, co) = self.covered(arcs);
        Ok(ExternalPoints {
            inner: (0..self.p()).filter(|x| !ci.contains(x)).collect(),
            outer: (0..self.q()).filter(|x| !co.contains(x)).collect(),
        })
    }

    /// Extended boundary points: every peripheral member containing an inner
    /// point starts just before it; every one containing an outer point ends
    /// just after it. External points qualify vacuously.
    pub fn extended_points(&self, arcs: &[Curve]) -> Result<ExternalPoints> {
        self.check_collection(arcs)?;
        let (p, q) = (self.p(), self.q());
        let mut ext = ExternalPoints {
            inner: (0..p).collect(),
            outer: (0..q).collect(),
        };
        for &c in arcs {
            match c {
                Curve::Inner { a, b } => {
                    for x in a + 2..b {
                        ext.inner.remove(&x.rem_euclid(p));
                    }
                }
                Curve::Outer { a, b } => {
                    for x in a + 1..b - 1 {
                        ext.outer.remove(&x.rem_euclid(q));
                    }
                }
                _ => {}
            }
        }
        Ok(ext)
    }

    /// Moves the inner endpoint forward and the outer endpoint backward to the
    /// nearest external points.
    pub fn adjust_endpoints(&self, arcs: &[Curve], gamma: Curve) -> Result<Curve> {
        let Curve::Bridging { i, j } = self.check_curve(gamma)? else {
            return Err(Error::NotApplicable(format!("{gamma} is not a bridging arc")));
        };
        let (p, q) = (self.p(), self.q());
        let ext = self.external_points(arcs)?;
        let bar = self.extended_points(arcs)?;
        if !bar.inner.contains(&i.rem_euclid(p)) || !bar.outer.contains(&j.rem_euclid(q)) {
            return Err(Error::NotApplicable(format!(
                "{gamma} has an endpoint outside the external and extended point sets"
            )));
        }
        let a = (i..i + p).find(|c| ext.inner.contains(&c.rem_euclid(p)));
        let b = (j - q + 1..=j).rev().find(|d| ext.outer.contains(&d.rem_euclid(q)));
        match (a, b) {
            (Some(a), Some(b)) => Ok(self.bridging(a, b)),
            _ => Err(Error::InternalInvariantViolation(format!(
                "collection has no external point on some boundary"
            ))),
        }
    }

    /// Enlarges an exceptional collection to one with p+q arcs.
    pub fn complete_to_maximal(&self, arcs: &[Curve]) -> Result<Vec<Curve>> {
        let target = (self.p() + self.q()) as usize;
        let mut cur = match self.order_collection(arcs)? {
            Some(o) => o,
            None => return Err(Error::NotExceptional),
        };
        let try_add = |cur: &mut Vec<Curve>, c: Curve| -> Result<bool> {
            if cur.len() >= target || cur.contains(&c) {
                return Ok(false);
            }
            let mut next = cur.clone();
            next.push(c);
            match self.order_collection(&next)? {
                Some(o) => {
                    *cur = o;
                    Ok(true)
                }
                None => Ok(false),
            }
        };
        for c in self.peripheral_arcs() {
            try_add(&mut cur, c)?;
        }
        let turn = self.p() * self.q();
        let ws: Vec<i64> = cur.iter().filter_map(|&c| self.winding(c)).collect();
        let (lo, hi) = match (ws.iter().min(), ws.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, 0),
        };
        let centre = (lo + hi) / 2;
        let by_centre = |mut v: Vec<Curve>| {
            v.sort_by_key(|&c| ((self.winding(c).unwrap() - centre).abs(), c));
            v
        };
        // extended-set candidates first, as in the three-step construction
        let bar = self.extended_points(&cur)?;
        let pool = by_centre(self.bridging_in_window(lo - turn, hi + turn));
        for &c in &pool {
            if let Curve::Bridging { i, j } = c {
                if bar.inner.contains(&i.rem_euclid(self.p())) && bar.outer.contains(&j.rem_euclid(self.q())) {
                    try_add(&mut cur, c)?;
                }
            }
        }
        for widen in 1..=POOL_RETRIES + 1 {
            if cur.len() == target {
                break;
            }
            for c in by_centre(self.bridging_in_window(lo - widen * turn, hi + widen * turn)) {
                try_add(&mut cur, c)?;
            }
        }
        if cur.len() != target {
            return Err(Error::InternalInvariantViolation(format!(
                "completion stopped at {} of {target} arcs",
                cur.len()
            )));
        }
        Ok(cur)
    }

    /// Whether the point lies strictly inside a peripheral curve.
    pub fn contains_point(&self, c: Curve, pt: Pt) -> bool {
        match (c, pt) {
            (Curve::Inner { a, b }, Pt::Inner(x)) => (a + 1..b).any(|y| (y - x).rem_euclid(self.p()) == 0),
            (Curve::Outer { a, b }, Pt::Outer(x)) => (a + 1..b).any(|y| (y - x).rem_euclid(self.q()) == 0),
            _ => false,
        }
    }
}
