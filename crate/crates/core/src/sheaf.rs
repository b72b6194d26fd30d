//! Indecomposable sheaf classes and the dictionary with curves.

use std::fmt;


use crate::curve::{Curve, Move};
use crate::error::{Error, Result};
use crate::surface::{LElt, Surface};

/// Isomorphism class of an indecomposable coherent sheaf, or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SheafClass {
    LineBundle(LElt),
    /// S_{inf,i}^{(len)} in the tube of rank p.
    TorsionInf { i: i64, len: i64 },
    /// S_{0,i}^{(len)} in the tube of rank q.
    TorsionZero { i: i64, len: i64 },
    /// Torsion in a homogeneous tube; the tag is opaque.
    TorsionOrdinary { tag: u32, len: u32 },
    Zero,
}

impl fmt::Display for SheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SheafClass::LineBundle(x) => write!(f, "O({x})"),
            SheafClass::TorsionInf { i, len } => write!(f, "S_inf,{i}^({len})"),
            SheafClass::TorsionZero { i, len } => write!(f, "S_0,{i}^({len})"),
            SheafClass::TorsionOrdinary { tag, len } => write!(f, "S_[{tag}]^({len})"),
            SheafClass::Zero => write!(f, "0"),
        }
    }
}

/// Rank and determinant.
pub type Class = (i64, LElt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArSequence {
    pub start: SheafClass,
    pub middle: Vec<SheafClass>,
    pub end: SheafClass,
}

impl SheafClass {
    pub fn is_line_bundle(&self) -> bool {
        matches!(self, SheafClass::LineBundle(_))
    }

    pub fn is_torsion(&self) -> bool {
        matches!(
            self,
            SheafClass::TorsionInf { .. } | SheafClass::TorsionZero { .. } | SheafClass::TorsionOrdinary { .. }
        )
    }
}

impl Surface {
    pub fn line(&self, x: LElt) -> SheafClass {
        SheafClass::LineBundle(x)
    }

    pub fn tinf(&self, i: i64, len: i64) -> SheafClass {
        SheafClass::TorsionInf { i: i.rem_euclid(self.p()), len }
    }

    pub fn tzero(&self, i: i64, len: i64) -> SheafClass {
        SheafClass::TorsionZero { i: i.rem_euclid(self.q()), len }
    }

    pub fn check_sheaf(&self, x: SheafClass) -> Result<SheafClass> {
        let ok = match x {
            SheafClass::LineBundle(e) => self.check_elt(e).is_ok(),
            SheafClass::TorsionInf { i, len } => (0..self.p()).contains(&i) && len >= 1,
            SheafClass::TorsionZero { i, len } => (0..self.q()).contains(&i) && len >= 1,
            SheafClass::TorsionOrdinary { len, .. } => len >= 1,
            SheafClass::Zero => true,
        };
        if ok {
            Ok(x)
        } else {
            Err(self.mismatch())
        }
    }

    /// The dictionary on non-degenerate curves.
    pub fn phi(&self, c: Curve) -> Result<SheafClass> {
        let c = self.check_curve(c)?;
        if c.is_degenerate() {
            return Err(Error::InvalidCurve(format!("{c} is a degenerate segment")));
        }
        Ok(self.phi_raw(c))
    }

    /// The dictionary extended by zero on degenerate segments. Accepts lifts.
    pub fn phi_ext(&self, c: Curve) -> Result<SheafClass> {
        let c = self.canonical(c)?;
        if c.is_degenerate() {
            Ok(SheafClass::Zero)
        } else {
            Ok(self.phi_raw(c))
        }
    }

    fn phi_raw(&self, c: Curve) -> SheafClass {
        match c {
            Curve::Bridging { i, j } => SheafClass::LineBundle(self.normal_form(i, -j, 0)),
            Curve::Inner { a, b } => self.tinf(b, b - a - 1),
            Curve::Outer { a, b } => self.tzero(-a, b - a - 1),
            Curve::Loop { n, tag } => SheafClass::TorsionOrdinary { tag, len: n },
        }
    }

    pub fn phi_inv(&self, x: SheafClass) -> Result<Curve> {
        match self.check_sheaf(x)? {
            SheafClass::LineBundle(e) => Ok(self.bridging(e.l1, -(e.l2 + e.l * self.q()))),
            SheafClass::TorsionInf { i, len } => self.inner(i - len - 1, i),
            SheafClass::TorsionZero { i, len } => self.outer(-i, len - i + 1),
            SheafClass::TorsionOrdinary { tag, len } => Ok(Curve::Loop { n: len, tag }),
            SheafClass::Zero => Err(Error::NotApplicable("zero has no curve".into())),
        }
    }

    pub fn twist(&self, x: SheafClass, by: LElt) -> SheafClass {
        match x {
            SheafClass::LineBundle(y) => SheafClass::LineBundle(self.add(y, by)),
            SheafClass::TorsionInf { i, len } => self.tinf(i + by.l1, len),
            SheafClass::TorsionZero { i, len } => self.tzero(i + by.l2, len),
            other => other,
        }
    }

    /// Auslander-Reiten translate (twist by omega).
    pub fn tau(&self, x: SheafClass) -> SheafClass {
        self.twist(x, self.omega())
    }

    pub fn tau_inv(&self, x: SheafClass) -> SheafClass {
        self.twist(x, self.neg(self.omega()))
    }

    pub fn class(&self, x: SheafClass) -> Result<Class> {
        match x {
            SheafClass::LineBundle(e) => Ok((1, e)),
            SheafClass::TorsionInf { len, .. } => Ok((0, self.normal_form(len, 0, 0))),
            SheafClass::TorsionZero { len, .. } => Ok((0, self.normal_form(0, len, 0))),
            SheafClass::Zero => Ok((0, self.zero())),
            SheafClass::TorsionOrdinary { .. } => Err(Error::OutOfScope("class of ordinary torsion")),
        }
    }

    pub fn class_sum(&self, xs: &[SheafClass]) -> Result<Class> {
        let mut acc = (0, self.zero());
        for &x in xs {
            let (r, d) = self.class(x)?;
            acc = (acc.0 + r, self.add(acc.1, d));
        }
        Ok(acc)
    }

    pub fn ar_sequence(&self, x: SheafClass) -> Result<ArSequence> {
        if matches!(x, SheafClass::TorsionOrdinary { .. }) {
            return Err(Error::OutOfScope("AR sequences in homogeneous tubes"));
        }
        let g = self.phi_inv(x)?;
        let mut middle = Vec::new();
        for m in [Move::S, Move::E] {
            let y = self.phi_ext(self.move_lift(g, &[m])?)?;
            if y != SheafClass::Zero {
                middle.push(y);
            }
        }
        Ok(ArSequence {
            start: x,
            middle,
            end: self.tau_inv(x),
        })
    }
}
