//! The surface parameters and the rank-2 group L(p,q).

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Marked annulus with `p` points on the inner boundary and `q` on the outer one.
///
/// The same pair indexes the weighted projective line X(p,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Surface {
    p: i64,
    q: i64,
}

/// An element l1*x1 + l2*x2 + l*c of L(p,q) in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LElt {
    pub l1: i64,
    pub l2: i64,
    pub l: i64,
}

impl fmt::Display for LElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x1+{}x2+{}c", self.l1, self.l2, self.l)
    }
}

impl Surface {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidArguments(format!(
                "p and q must be positive, got ({p},{q})"
            )));
        }
        Ok(Surface { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn lcm(&self) -> i64 {
        self.p.lcm(&self.q)
    }

    pub(crate) fn mismatch(&self) -> Error {
        Error::SurfaceMismatch {
            p: self.p,
            q: self.q,
        }
    }

    /// Reduces a raw combination using p*x1 = q*x2 = c.
    pub fn normal_form(&self, x1: i64, x2: i64, c: i64) -> LElt {
        let (d1, l1) = (x1.div_euclid(self.p), x1.rem_euclid(self.p));
        let (d2, l2) = (x2.div_euclid(self.q), x2.rem_euclid(self.q));
        LElt {
            l1,
            l2,
            l: c + d1 + d2,
        }
    }

    pub fn zero(&self) -> LElt {
        LElt { l1: 0, l2: 0, l: 0 }
    }

    pub fn x1(&self) -> LElt {
        self.normal_form(1, 0, 0)
    }

    pub fn x2(&self) -> LElt {
        self.normal_form(0, 1, 0)
    }

    pub fn c(&self) -> LElt {
        self.normal_form(0, 0, 1)
    }

    /// The dualizing element -x1 - x2.
    pub fn omega(&self) -> LElt {
        self.normal_form(-1, -1, 0)
    }

    pub fn check_elt(&self, x: LElt) -> Result<LElt> {
        if (0..self.p).contains(&x.l1) && (0..self.q).contains(&x.l2) {
            Ok(x)
        } else {
            Err(self.mismatch())
        }
    }

    pub fn add(&self, x: LElt, y: LElt) -> LElt {
        self.normal_form(x.l1 + y.l1, x.l2 + y.l2, x.l + y.l)
    }

    pub fn neg(&self, x: LElt) -> LElt {
        self.normal_form(-x.l1, -x.l2, -x.l)
    }

    pub fn sub(&self, x: LElt, y: LElt) -> LElt {
        self.add(x, self.neg(y))
    }

    pub fn scale(&self, k: i64, x: LElt) -> LElt {
        self.normal_form(k * x.l1, k * x.l2, k * x.l)
    }

    /// x <= y iff y - x lies in the cone spanned by x1 and x2.
    pub fn leq(&self, x: LElt, y: LElt) -> bool {
        self.sub(y, x).l >= 0
    }

    /// The degree homomorphism with delta(x1) = lcm/p and delta(x2) = lcm/q.
    pub fn degree(&self, x: LElt) -> i64 {
        let m = self.lcm();
        x.l1 * (m / self.p) + x.l2 * (m / self.q) + x.l * m
    }

    /// dim Hom(O, O(x)).
    pub fn dim_s(&self, x: LElt) -> u64 {
        if x.l >= 0 {
            (x.l + 1) as u64
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        let s = Surface::new(2, 3).unwrap();
        assert_eq!(s.normal_form(3, 4, 0), LElt { l1: 1, l2: 1, l: 2 });
        assert_eq!(s.omega(), LElt { l1: 1, l2: 2, l: -2 });
        assert_eq!(s.normal_form(0, 0, 0), s.zero());
        assert_eq!(s.degree(s.x1()), 3);
        assert_eq!(s.degree(s.x2()), 2);
        assert_eq!(s.degree(s.c()), 6);
    }

    #[test]
    fn order_and_sections() {
        let s = Surface::new(2, 3).unwrap();
        assert!(s.leq(s.zero(), s.c()));
        assert!(s.leq(s.omega(), s.zero()));
        assert!(!s.leq(s.x1(), s.x2()) && !s.leq(s.x2(), s.x1()));
        assert_eq!(s.dim_s(s.c()), 2);
        assert_eq!(s.dim_s(s.omega()), 0);
        assert_eq!(s.dim_s(s.zero()), 1);
    }

    #[test]
    fn additive() {
        let s = Surface::new(3, 2).unwrap();
        for a in -7..7 {
            for b in -7..7 {
                let x = s.normal_form(a, b, 0);
                let y = s.normal_form(b, a, 1);
                assert_eq!(s.add(x, y), s.normal_form(a + b, b + a, 1));
                assert_eq!(s.degree(s.add(x, y)), s.degree(x) + s.degree(y));
            }
        }
        assert!(Surface::new(0, 1).is_err());
    }
}
