//! Positive intersection numbers between curve classes.

use num_integer::Integer;

use crate::curve::{Curve, Move, Pt};
use crate::error::{Error, Result};
use crate::surface::Surface;

/// Which closed form produced a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Config {
    BridgingBridging,
    InnerBridging,
    OuterBridging,
    InnerInner,
    OuterOuter,
}

/// A translate `k` of the second curve's lift meeting the first curve's lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingWitness {
    pub lift_offset: i64,
    pub config: Config,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EndpointRelation {
    pub shared_start: bool,
    pub shared_end: bool,
    /// True when every shared point has the second arc following the first clockwise.
    pub clockwise_follows: bool,
}

/// Integers k with lo_n/lo_d < k < hi_n/hi_d (positive denominators).
fn open_range(lo_n: i64, lo_d: i64, hi_n: i64, hi_d: i64) -> std::ops::RangeInclusive<i64> {
    let kmin = lo_n.div_euclid(lo_d) + 1;
    let kmax = Integer::div_ceil(&hi_n, &hi_d) - 1;
    kmin..=kmax
}

impl Surface {
    /// I+(g1, g2) together with the translates realizing it.
    pub fn positive_int_witnesses(&self, g1: Curve, g2: Curve) -> Result<Vec<CrossingWitness>> {
        let (p, q) = (self.p(), self.q());
        let w = |ks: Vec<i64>, config| {
            ks.into_iter()
                .map(|k| CrossingWitness { lift_offset: k, config })
                .collect::<Vec<_>>()
        };
        let out = match (g1, g2) {
            (Curve::Loop { .. }, _) | (_, Curve::Loop { .. }) => {
                return Err(Error::OutOfScope("intersections with loops"))
            }
            (Curve::Bridging { i: i1, j: j1 }, Curve::Bridging { i: i2, j: j2 }) => w(
                open_range(j1 - j2, q, i1 - i2, p).collect(),
                Config::BridgingBridging,
            ),
            (Curve::Inner { a, b }, Curve::Bridging { i, .. }) => {
                w(open_range(a - i, p, b - i, p).collect(), Config::InnerBridging)
            }
            (Curve::Outer { a, b }, Curve::Bridging { j, .. }) => {
                w(open_range(a - j, q, b - j, q).collect(), Config::OuterBridging)
            }
            (Curve::Inner { a, b }, Curve::Inner { a: c, b: d }) => w(
                open_range(a - d, p, a - c, p)
                    .filter(|k| d + k * p < b)
                    .collect(),
                Config::InnerInner,
            ),
            (Curve::Outer { a, b }, Curve::Outer { a: c, b: d }) => w(
                open_range(a - c, q, b - c, q)
                    .filter(|k| b < d + k * q)
                    .collect(),
                Config::OuterOuter,
            ),
            _ => Vec::new(),
        };
        Ok(out)
    }

    pub fn positive_int(&self, g1: Curve, g2: Curve) -> Result<u64> {
        Ok(self.positive_int_witnesses(g1, g2)?.len() as u64)
    }

    /// Strip x-coordinate scaled by p*q.
    fn scaled_x(&self, pt: Pt) -> i64 {
        match pt {
            Pt::Inner(i) => i * self.q(),
            Pt::Outer(j) => j * self.p(),
        }
    }

    /// Position along the boundary of the strip traversed counterclockwise:
    /// the bottom from left to right, then the top from right to left.
    fn ccw_key(&self, pt: Pt) -> (u8, i64) {
        match pt {
            Pt::Outer(_) => (0, self.scaled_x(pt)),
            Pt::Inner(_) => (1, -self.scaled_x(pt)),
        }
    }

    /// Counterclockwise order of boundary points starting just after `m`.
    fn ccw_from(&self, m: Pt, y: Pt) -> (u8, (u8, i64)) {
        let (km, ky) = (self.ccw_key(m), self.ccw_key(y));
        (if ky > km { 0 } else { 1 }, ky)
    }

    /// Translate of `c` whose start (or end) is the strip point `m`, if any.
    fn lift_through(&self, c: Curve, m: Pt, at_start: bool) -> Option<Curve> {
        let pt = if at_start { c.start()? } else { c.end()? };
        let (n, period) = match (pt, m) {
            (Pt::Inner(x), Pt::Inner(y)) => (y - x, self.p()),
            (Pt::Outer(x), Pt::Outer(y)) => (y - x, self.q()),
            _ => return None,
        };
        if n % period != 0 {
            return None;
        }
        Some(self.translate(c, n / period))
    }

    /// Whether `b` leaves the common point `m` after `a` in clockwise order.
    fn follows_at(&self, a: Curve, b: Curve, m: Pt, at_start: bool) -> bool {
        let far = |c: Curve| if at_start { c.end() } else { c.start() };
        let (fa, fb) = (far(a).unwrap(), far(b).unwrap());
        self.ccw_from(m, fb) < self.ccw_from(m, fa)
    }

    pub fn endpoint_relation(&self, alpha: Curve, beta: Curve) -> Result<EndpointRelation> {
        if alpha.is_loop() || beta.is_loop() {
            return Err(Error::OutOfScope("endpoints of loops"));
        }
        let mut rel = EndpointRelation {
            clockwise_follows: true,
            ..Default::default()
        };
        let mut any = false;
        for at_start in [true, false] {
            let m = if at_start { alpha.start() } else { alpha.end() }.unwrap();
            if let Some(b) = self.lift_through(beta, m, at_start) {
                any = true;
                if at_start {
                    rel.shared_start = true;
                } else {
                    rel.shared_end = true;
                }
                if !self.follows_at(alpha, b, m, at_start) {
                    rel.clockwise_follows = false;
                }
            }
        }
        if !any {
            rel.clockwise_follows = false;
        }
        Ok(rel)
    }

    /// A positive crossing of (alpha, beta) that no longer exists after
    /// moving alpha by [s,e].
    pub fn exceptional_intersection(&self, alpha: Curve, beta: Curve) -> Result<Option<CrossingWitness>> {
        let ws = self.positive_int_witnesses(alpha, beta)?;
        if ws.is_empty() {
            return Ok(None);
        }
        let moved = self.move_lift(alpha, &[Move::S, Move::E])?;
        if self.positive_int(moved, beta)? != 0 {
            return Ok(None);
        }
        if ws.len() != 1 || !alpha.is_peripheral() {
            return Err(Error::InternalInvariantViolation(format!(
                "exceptional intersection of {alpha} and {beta} is not a single peripheral crossing"
            )));
        }
        Ok(Some(ws[0]))
    }
}
