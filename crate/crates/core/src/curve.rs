//! Curve classes on the annulus and their lifts to the universal cover.
//!
//! The cover is the strip R x [0,1] with the inner boundary on top. Inner
//! marked point `i` sits at x = i/p, outer marked point `j` at x = j/q.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::surface::Surface;

/// A curve class. Indices are canonical when produced by [`Surface`]
/// constructors; raw (uncanonicalized) values are used for lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    /// Positive bridging curve from outer point `j` to inner point `i`.
    Bridging { i: i64, j: i64 },
    /// Peripheral curve on the inner boundary from `a` to `b`, `a < b`.
    Inner { a: i64, b: i64 },
    /// Peripheral curve on the outer boundary from `a` to `b`, `a < b`.
    Outer { a: i64, b: i64 },
    /// The n-th power of a loop around the core, with an opaque parameter tag.
    Loop { n: u32, tag: u32 },
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Curve::Bridging { i, j } => write!(f, "B({i},{j})"),
            Curve::Inner { a, b } => write!(f, "I({a},{b})"),
            Curve::Outer { a, b } => write!(f, "O({a},{b})"),
            Curve::Loop { n, tag } => write!(f, "L({n};{tag})"),
        }
    }
}

/// Elementary endpoint moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    S,
    E,
    SInv,
    EInv,
}

/// A marked point of the strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt {
    Inner(i64),
    Outer(i64),
}

impl Curve {
    pub fn is_bridging(&self) -> bool {
        matches!(self, Curve::Bridging { .. })
    }

    pub fn is_peripheral(&self) -> bool {
        matches!(self, Curve::Inner { .. } | Curve::Outer { .. })
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Curve::Loop { .. })
    }

    /// Number of boundary steps covered by a peripheral curve.
    pub fn span(&self) -> Option<i64> {
        match *self {
            Curve::Inner { a, b } | Curve::Outer { a, b } => Some(b - a),
            _ => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.span() == Some(1)
    }

    /// Starting point of this representative in the strip.
    pub fn start(&self) -> Option<Pt> {
        match *self {
            Curve::Bridging { j, .. } => Some(Pt::Outer(j)),
            Curve::Inner { a, .. } => Some(Pt::Inner(a)),
            Curve::Outer { a, .. } => Some(Pt::Outer(a)),
            Curve::Loop { .. } => None,
        }
    }

    /// Ending point of this representative in the strip.
    pub fn end(&self) -> Option<Pt> {
        match *self {
            Curve::Bridging { i, .. } => Some(Pt::Inner(i)),
            Curve::Inner { b, .. } => Some(Pt::Inner(b)),
            Curve::Outer { b, .. } => Some(Pt::Outer(b)),
            Curve::Loop { .. } => None,
        }
    }

    /// The curve of the extended set running from `start` to `end`, if the
    /// pair of strip points bounds one (outer to inner, or increasing along
    /// one boundary).
    pub fn joining(start: Pt, end: Pt) -> Option<Curve> {
        match (start, end) {
            (Pt::Outer(j), Pt::Inner(i)) => Some(Curve::Bridging { i, j }),
            (Pt::Inner(a), Pt::Inner(b)) if a < b => Some(Curve::Inner { a, b }),
            (Pt::Outer(a), Pt::Outer(b)) if a < b => Some(Curve::Outer { a, b }),
            _ => None,
        }
    }
}

impl Surface {
    pub fn bridging(&self, i: i64, j: i64) -> Curve {
        let k = i.div_euclid(self.p());
        Curve::Bridging {
            i: i - k * self.p(),
            j: j - k * self.q(),
        }
    }

    pub fn inner(&self, a: i64, b: i64) -> Result<Curve> {
        if b <= a {
            return Err(Error::InvalidCurve(format!("inner peripheral needs a < b, got ({a},{b})")));
        }
        let k = a.div_euclid(self.p());
        Ok(Curve::Inner {
            a: a - k * self.p(),
            b: b - k * self.p(),
        })
    }

    pub fn outer(&self, a: i64, b: i64) -> Result<Curve> {
        if b <= a {
            return Err(Error::InvalidCurve(format!("outer peripheral needs a < b, got ({a},{b})")));
        }
        let k = a.div_euclid(self.q());
        Ok(Curve::Outer {
            a: a - k * self.q(),
            b: b - k * self.q(),
        })
    }

    /// Canonical representative of a raw lift.
    pub fn canonical(&self, c: Curve) -> Result<Curve> {
        match c {
            Curve::Bridging { i, j } => Ok(self.bridging(i, j)),
            Curve::Inner { a, b } => self.inner(a, b),
            Curve::Outer { a, b } => self.outer(a, b),
            Curve::Loop { n, .. } if n == 0 => Err(Error::InvalidCurve("loop power must be positive".into())),
            l @ Curve::Loop { .. } => Ok(l),
        }
    }

    /// Accepts only canonical curves of this surface.
    pub fn check_curve(&self, c: Curve) -> Result<Curve> {
        match self.canonical(c) {
            Ok(k) if k == c => Ok(c),
            Ok(_) => Err(self.mismatch()),
            Err(e) => Err(e),
        }
    }

    pub fn is_arc(&self, c: Curve) -> bool {
        match c {
            Curve::Bridging { .. } => true,
            Curve::Inner { a, b } => (2..=self.p()).contains(&(b - a)),
            Curve::Outer { a, b } => (2..=self.q()).contains(&(b - a)),
            Curve::Loop { .. } => false,
        }
    }

    /// The lift shifted by `k` deck translations (one full turn each).
    pub fn translate(&self, c: Curve, k: i64) -> Curve {
        let (p, q) = (self.p(), self.q());
        match c {
            Curve::Bridging { i, j } => Curve::Bridging { i: i + k * p, j: j + k * q },
            Curve::Inner { a, b } => Curve::Inner { a: a + k * p, b: b + k * p },
            Curve::Outer { a, b } => Curve::Outer { a: a + k * q, b: b + k * q },
            l => l,
        }
    }

    pub fn translate_pt(&self, pt: Pt, k: i64) -> Pt {
        match pt {
            Pt::Inner(i) => Pt::Inner(i + k * self.p()),
            Pt::Outer(j) => Pt::Outer(j + k * self.q()),
        }
    }

    /// The marked point of the annulus under a strip point.
    pub fn project(&self, pt: Pt) -> Pt {
        match pt {
            Pt::Inner(i) => Pt::Inner(i.rem_euclid(self.p())),
            Pt::Outer(j) => Pt::Outer(j.rem_euclid(self.q())),
        }
    }

    /// Applies the moves left to right on the lift, then canonicalizes.
    pub fn move_curve(&self, c: Curve, ops: &[Move]) -> Result<Curve> {
        let raw = self.move_lift(c, ops)?;
        self.canonical(raw)
    }

    /// Applies moves to a lift without canonicalizing.
    pub fn move_lift(&self, c: Curve, ops: &[Move]) -> Result<Curve> {
        let mut c = c;
        for op in ops {
            c = match (c, op) {
                (Curve::Loop { .. }, _) => return Err(Error::OutOfScope("moves on loops")),
                (Curve::Bridging { i, j }, Move::S) => Curve::Bridging { i, j: j - 1 },
                (Curve::Bridging { i, j }, Move::E) => Curve::Bridging { i: i + 1, j },
                (Curve::Bridging { i, j }, Move::SInv) => Curve::Bridging { i, j: j + 1 },
                (Curve::Bridging { i, j }, Move::EInv) => Curve::Bridging { i: i - 1, j },
                (Curve::Inner { a, b }, Move::S) => Curve::Inner { a: a + 1, b },
                (Curve::Inner { a, b }, Move::E) => Curve::Inner { a, b: b + 1 },
                (Curve::Inner { a, b }, Move::SInv) => Curve::Inner { a: a - 1, b },
                (Curve::Inner { a, b }, Move::EInv) => Curve::Inner { a, b: b - 1 },
                (Curve::Outer { a, b }, Move::S) => Curve::Outer { a: a - 1, b },
                (Curve::Outer { a, b }, Move::E) => Curve::Outer { a, b: b - 1 },
                (Curve::Outer { a, b }, Move::SInv) => Curve::Outer { a: a + 1, b },
                (Curve::Outer { a, b }, Move::EInv) => Curve::Outer { a, b: b + 1 },
            };
            if let Some(s) = c.span() {
                if s < 1 {
                    return Err(Error::InvalidCurve(format!("move collapses peripheral curve to span {s}")));
                }
            }
        }
        Ok(c)
    }

    /// Simultaneous start/end shift `k` times (negative `k` inverts).
    pub fn se_shift_curve(&self, c: Curve, k: i64) -> Curve {
        match c {
            Curve::Bridging { i, j } => self.bridging(i + k, j - k),
            Curve::Inner { a, b } => Curve::Inner { a: (a + k).rem_euclid(self.p()), b: (a + k).rem_euclid(self.p()) + b - a },
            Curve::Outer { a, b } => Curve::Outer { a: (a - k).rem_euclid(self.q()), b: (a - k).rem_euclid(self.q()) + b - a },
            l => l,
        }
    }

    /// All canonical peripheral arcs of the surface.
    pub fn peripheral_arcs(&self) -> Vec<Curve> {
        let mut out = Vec::new();
        for a in 0..self.p() {
            for span in 2..=self.p() {
                out.push(Curve::Inner { a, b: a + span });
            }
        }
        for a in 0..self.q() {
            for span in 2..=self.q() {
                out.push(Curve::Outer { a, b: a + span });
            }
        }
        out
    }

    /// Scaled winding of a bridging curve, q*i - p*j. An s-e shift adds p+q.
    pub fn winding(&self, c: Curve) -> Option<i64> {
        match c {
            Curve::Bridging { i, j } => Some(self.q() * i - self.p() * j),
            _ => None,
        }
    }

    /// Canonical bridging arcs whose scaled winding lies in `[lo, hi]`.
    pub fn bridging_in_window(&self, lo: i64, hi: i64) -> Vec<Curve> {
        let (p, q) = (self.p(), self.q());
        let mut out = Vec::new();
        for i in 0..p {
            // q*i - p*j in [lo, hi]  <=>  j in [(q*i - hi)/p, (q*i - lo)/p]
            let jmin = Integer::div_ceil(&(q * i - hi), &p);
            let jmax = (q * i - lo).div_euclid(p);
            for j in jmin..=jmax {
                out.push(Curve::Bridging { i, j });
            }
        }
        out.sort();
        out
    }
}
