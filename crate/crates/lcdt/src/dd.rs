//! Double-double (pairwise f64) arithmetic used inside series summations
//! where alternating terms grow to ~1e12 before cancelling down to O(1).
//!
//! Only the handful of operations the kernel series needs are implemented.
//! The representation is the usual unevaluated sum `hi + lo` with
//! `|lo| <= ulp(hi)/2`. Products are split with the Veltkamp/Dekker scheme
//! rather than FMA so results are identical on targets without hardware FMA.

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134217729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two f64 values as a Dd.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Exact product of two f64 values as a Dd.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Division by a Dd divisor, accurate to full double-double precision.
    #[inline]
    pub fn div(self, d: Dd) -> Dd {
        let q1 = self.hi / d.hi;
        let r = self.add(d.mul_f64(q1).neg());
        let q2 = r.hi / d.hi;
        let r = r.add(d.mul_f64(q2).neg());
        let q3 = r.hi / d.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_keeps_cancelled_bits() {
        // 1 + 1e-30 - 1 survives in Dd, vanishes in f64
        let x = Dd::from_f64(1.0)
            .add(Dd::from_f64(1e-30))
            .add(Dd::from_f64(-1.0));
        assert!((x.value() - 1e-30).abs() < 1e-45);
    }

    #[test]
    fn product_is_exact() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 - 2f64.powi(-30);
        // (1+e)(1-e) = 1 - e^2 exactly representable in Dd
        let p = Dd::from_prod(a, b);
        let expect = -(2f64.powi(-60));
        assert_eq!(p.add(Dd::from_f64(-1.0)).value(), expect);
    }

    #[test]
    fn division_round_trips() {
        let a = Dd::from_prod(std::f64::consts::PI, std::f64::consts::E);
        let q = a.div(Dd::from_f64(std::f64::consts::E));
        assert!((q.value() - std::f64::consts::PI).abs() < 1e-30);
        assert!((q.hi - std::f64::consts::PI).abs() < 1e-15);
    }
}
