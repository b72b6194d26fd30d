//! Hom and Ext dimensions, map shapes, kernels, cokernels and factorizations.


use crate::curve::{Curve, Move, Pt};
use crate::error::{Error, Result};
use crate::sheaf::SheafClass;
use crate::surface::Surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapClass {
    Mono { identity: bool },
    Epi,
    NoNonzeroMap,
    /// Ext^1(Y,X) is nonzero, so nonzero maps need not be mono or epi.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tube {
    Inf,
    Zero,
}

/// (tube, top index, length, rank) of exceptional-tube torsion.
fn tube_data(s: &Surface, x: SheafClass) -> Option<(Tube, i64, i64, i64)> {
    match x {
        SheafClass::TorsionInf { i, len } => Some((Tube::Inf, i, len, s.p())),
        SheafClass::TorsionZero { i, len } => Some((Tube::Zero, i, len, s.q())),
        _ => None,
    }
}

/// Curve of the extended set joining two strip points, oriented canonically.
fn connector(a: Pt, b: Pt) -> Option<Curve> {
    match (a, b) {
        (Pt::Outer(_), Pt::Inner(_)) => Curve::joining(a, b),
        (Pt::Inner(_), Pt::Outer(_)) => Curve::joining(b, a),
        _ if a == b => None,
        _ => Curve::joining(a.min(b), a.max(b)),
    }
}

impl Surface {
    fn in_scope(&self, x: SheafClass) -> Result<Curve> {
        match x {
            SheafClass::TorsionOrdinary { .. } => Err(Error::OutOfScope("homogeneous tubes")),
            SheafClass::Zero => Err(Error::NotApplicable("zero object".into())),
            _ => self.phi_inv(x),
        }
    }

    pub fn ext1_dim(&self, x: SheafClass, y: SheafClass) -> Result<u64> {
        let (gx, gy) = (self.in_scope(x)?, self.in_scope(y)?);
        self.positive_int(gx, gy)
    }

    pub fn hom_dim(&self, x: SheafClass, y: SheafClass) -> Result<u64> {
        let (gx, gy) = (self.in_scope(x)?, self.in_scope(y)?);
        let via_y = self.positive_int(self.move_lift(gy, &[Move::S, Move::E])?, gx)?;
        let via_x = self.positive_int(gy, self.move_lift(gx, &[Move::SInv, Move::EInv])?)?;
        if via_x != via_y {
            return Err(Error::InternalInvariantViolation(format!(
                "Hom routes disagree for ({x}, {y}): {via_y} vs {via_x}"
            )));
        }
        Ok(via_y)
    }

    /// Hom dimension computed purely from L-arithmetic and tube combinatorics.
    pub fn hom_dim_oracle(&self, x: SheafClass, y: SheafClass) -> Result<u64> {
        match (x, y) {
            (SheafClass::LineBundle(a), SheafClass::LineBundle(b)) => Ok(self.dim_s(self.sub(b, a))),
            (SheafClass::LineBundle(_), SheafClass::TorsionOrdinary { .. })
            | (SheafClass::TorsionOrdinary { .. }, _)
            | (_, SheafClass::Zero)
            | (SheafClass::Zero, _) => Err(Error::NotApplicable("oracle shape".into())),
            (_, SheafClass::LineBundle(_)) => Ok(0),
            (SheafClass::LineBundle(a), _) => {
                let (tube, top, len, rank) = tube_data(self, y).unwrap();
                let l = if tube == Tube::Inf { a.l1 } else { a.l2 };
                // k with top - len < l + k*rank <= top
                let kmin = (top - len - l).div_euclid(rank) + 1;
                let kmax = (top - l).div_euclid(rank);
                Ok((kmax - kmin + 1).max(0) as u64)
            }
            _ => {
                let (tx, ix, jx, r) = tube_data(self, x).unwrap();
                let (ty, iy, jy, _) = tube_data(self, y)
                    .ok_or_else(|| Error::NotApplicable("oracle shape".into()))?;
                if tx != ty {
                    return Ok(0);
                }
                // image: quotient of x of length t (top ix) = submodule of y of length t
                Ok((1..=jx.min(jy))
                    .filter(|t| (ix - (iy - jy + t)).rem_euclid(r) == 0)
                    .count() as u64)
            }
        }
    }

    pub fn is_exceptional(&self, x: SheafClass) -> bool {
        match x {
            SheafClass::TorsionOrdinary { .. } | SheafClass::Zero => false,
            _ => self.phi_inv(x).map(|c| self.is_arc(c)).unwrap_or(false),
        }
    }

    pub fn classify_nonzero(&self, x: SheafClass, y: SheafClass) -> Result<MapClass> {
        if self.hom_dim(x, y)? == 0 {
            return Ok(MapClass::NoNonzeroMap);
        }
        if self.ext1_dim(y, x)? > 0 {
            return Ok(MapClass::Mixed);
        }
        self.map_shape(x, y)?.ok_or_else(|| {
            Error::InternalInvariantViolation(format!(
                "nonzero map {x} -> {y} with vanishing Ext has no mono/epi shape"
            ))
        })
    }

    /// Mono/epi shape of the nonzero maps X -> Y read off from the objects
    /// alone, without checking Ext^1(Y,X).
    fn map_shape(&self, x: SheafClass, y: SheafClass) -> Result<Option<MapClass>> {
        if x == y {
            return Ok(Some(MapClass::Mono { identity: true }));
        }
        Ok(match (x, y) {
            (SheafClass::LineBundle(_), SheafClass::LineBundle(_)) => Some(MapClass::Mono { identity: false }),
            (SheafClass::LineBundle(_), _) => Some(MapClass::Epi),
            _ => {
                let (tx, ix, jx, r) = tube_data(self, x).ok_or_else(|| Error::NotApplicable("shape".into()))?;
                let (ty, iy, jy, _) = tube_data(self, y).ok_or_else(|| Error::NotApplicable("shape".into()))?;
                if tx == ty && jy > jx && (iy - ix - (jy - jx)).rem_euclid(r) == 0 {
                    Some(MapClass::Mono { identity: false })
                } else if tx == ty && jy < jx && (iy - ix).rem_euclid(r) == 0 {
                    Some(MapClass::Epi)
                } else {
                    None
                }
            }
        })
    }

    /// Proper-mono or proper-epi test used by the kernel and cokernel constructions.
    /// Line-bundle monos are accepted even when Ext^1(Y,X) is nonzero.
    fn has_shape(&self, x: SheafClass, y: SheafClass, want: MapClass) -> Result<bool> {
        Ok(self.hom_dim(x, y)? > 0 && self.map_shape(x, y)? == Some(want))
    }

    fn single_crossing(&self, g1: Curve, g2: Curve) -> Result<i64> {
        let ws = self.positive_int_witnesses(g1, g2)?;
        if ws.len() != 1 {
            return Err(Error::NotApplicable(format!(
                "crossing hypothesis fails: I+({g1}, {g2}) = {}",
                ws.len()
            )));
        }
        Ok(ws[0].lift_offset)
    }

    fn phi_connector(&self, a: Pt, b: Pt) -> Result<SheafClass> {
        match connector(a, b) {
            Some(c) => self.phi_ext(c),
            None => Ok(SheafClass::Zero),
        }
    }

    /// Cokernel of a proper mono, as (part in the tube at infinity, part in the tube at zero).
    pub fn cokernel_of_mono(&self, x: SheafClass, y: SheafClass) -> Result<(SheafClass, SheafClass)> {
        if !self.has_shape(x, y, MapClass::Mono { identity: false })? {
            return Err(Error::NotApplicable(format!("{x} -> {y} is not a proper mono")));
        }
        let (g1, g2) = (self.phi_inv(x)?, self.phi_inv(y)?);
        let m = self.move_lift(g1, &[Move::SInv, Move::EInv])?;
        let k = self.single_crossing(g2, m)?;
        let m = self.translate(m, k);
        let ends = self.phi_connector(m.end().unwrap(), g2.end().unwrap())?;
        let starts = self.phi_connector(m.start().unwrap(), g2.start().unwrap())?;
        let mut out = (SheafClass::Zero, SheafClass::Zero);
        for part in [ends, starts] {
            match part {
                SheafClass::Zero => {}
                SheafClass::TorsionInf { .. } if out.0 == SheafClass::Zero => out.0 = part,
                SheafClass::TorsionZero { .. } if out.1 == SheafClass::Zero => out.1 = part,
                _ => {
                    return Err(Error::InternalInvariantViolation(format!(
                        "unexpected cokernel summand {part} for {x} -> {y}"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Kernel of a proper epi, as (line-bundle part, torsion part).
    pub fn kernel_of_epi(&self, x: SheafClass, y: SheafClass) -> Result<(SheafClass, SheafClass)> {
        if !self.has_shape(x, y, MapClass::Epi)? {
            return Err(Error::NotApplicable(format!("{x} -> {y} is not a proper epi")));
        }
        let (g1, g2) = (self.phi_inv(x)?, self.phi_inv(y)?);
        let m = self.move_lift(g2, &[Move::S, Move::E])?;
        let k = self.single_crossing(m, g1)?;
        let g1 = self.translate(g1, k);
        let starts = self.phi_connector(g1.start().unwrap(), m.start().unwrap())?;
        let ends = self.phi_connector(g1.end().unwrap(), m.end().unwrap())?;
        let mut out = (SheafClass::Zero, SheafClass::Zero);
        for part in [starts, ends] {
            match part {
                SheafClass::Zero => {}
                SheafClass::LineBundle(_) if out.0 == SheafClass::Zero => out.0 = part,
                SheafClass::TorsionInf { .. } | SheafClass::TorsionZero { .. } if out.1 == SheafClass::Zero => {
                    out.1 = part
                }
                _ => {
                    return Err(Error::InternalInvariantViolation(format!(
                        "unexpected kernel summand {part} for {x} -> {y}"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// The torsion object through which a crossing morphism X -> Y factors
    /// as an epi followed by a mono.
    pub fn epi_mono_factor(&self, x: SheafClass, y: SheafClass) -> Result<SheafClass> {
        let inner = match y {
            SheafClass::TorsionInf { .. } => true,
            SheafClass::TorsionZero { .. } => false,
            _ => return Err(Error::NotApplicable("target must be exceptional-tube torsion".into())),
        };
        if !self.is_exceptional(y) || self.hom_dim(x, y)? == 0 {
            return Err(Error::NotApplicable(format!("no nonzero map {x} -> {y}")));
        }
        let (g1, g2) = (self.phi_inv(x)?, self.phi_inv(y)?);
        let k = self.single_crossing(g2, g1)?;
        let g1 = self.translate(g1, k);
        let z = if inner {
            Curve::joining(g2.start().unwrap(), g1.end().unwrap())
        } else {
            Curve::joining(g1.start().unwrap(), g2.end().unwrap())
        };
        let z = match z {
            Some(c @ Curve::Inner { .. }) if inner => c,
            Some(c @ Curve::Outer { .. }) if !inner => c,
            _ => return Err(Error::NotApplicable("crossing is not admissible".into())),
        };
        let z = self.phi_ext(z)?;
        if z == SheafClass::Zero
            || self.classify_nonzero(x, z)? != MapClass::Epi
            || self.classify_nonzero(z, y)? != (MapClass::Mono { identity: false })
        {
            return Err(Error::InternalInvariantViolation(format!(
                "factorization of {x} -> {y} through {z} is not epi then mono"
            )));
        }
        Ok(z)
    }
}
