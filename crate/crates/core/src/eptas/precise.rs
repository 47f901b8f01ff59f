//! Extended-range double-double numbers.
//!
//! A value is `(hi + lo) * 2^exp` with `hi` normalized to `[1, 2)`, giving
//! roughly 106 bits of mantissa and an unbounded binary exponent. Only
//! positive values are produced. This is enough to decide comparisons such as
//! `c^d * q^s >= 1` for the exponent lattice without overflow and with error
//! far below the spacing of `f64` inputs.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Wide {
    hi: f64,
    lo: f64,
    exp: i64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Splits a positive finite `x` into `(m, e)` with `x = m * 2^e`, `m` in `[1, 2)`.
fn frexp(x: f64) -> (f64, i64) {
    debug_assert!(x > 0.0 && x.is_finite());
    let (x, bias) = if x < f64::MIN_POSITIVE {
        (x * 2f64.powi(64), -64)
    } else {
        (x, 0)
    };
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1023 << 52));
    (m, e + bias)
}

/// `2^e` for `|e| <= 1`, exact.
#[inline]
fn pow2_small(e: i64) -> f64 {
    match e {
        -1 => 0.5,
        0 => 1.0,
        1 => 2.0,
        _ => 2f64.powi(e as i32),
    }
}

impl Wide {
    pub(crate) const ONE: Wide = Wide {
        hi: 1.0,
        lo: 0.0,
        exp: 0,
    };

    pub(crate) fn from_f64(x: f64) -> Wide {
        let (m, e) = frexp(x);
        Wide {
            hi: m,
            lo: 0.0,
            exp: e,
        }
    }

    /// The exact value `a + b` for positive `a + b`.
    pub(crate) fn from_sum(a: f64, b: f64) -> Wide {
        let (s, e) = two_sum(a, b);
        Wide::normalize(s, e, 0)
    }

    fn normalize(hi: f64, lo: f64, exp: i64) -> Wide {
        let (hi, lo) = quick_two_sum(hi, lo);
        let (_, e) = frexp(hi);
        let scale = if e.abs() <= 1 {
            pow2_small(-e)
        } else {
            2f64.powi(-e as i32)
        };
        Wide {
            hi: hi * scale,
            lo: lo * scale,
            exp: exp + e,
        }
    }

    pub(crate) fn mul(self, o: Wide) -> Wide {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        let err = err + (self.hi * o.lo + self.lo * o.hi);
        Wide::normalize(p, err, self.exp + o.exp)
    }

    pub(crate) fn powi(self, mut n: u64) -> Wide {
        let mut base = self;
        let mut acc = Wide::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(base);
            }
        }
        acc
    }

    pub(crate) fn cmp(&self, o: &Wide) -> Ordering {
        let gap = self.exp - o.exp;
        if gap >= 2 {
            return Ordering::Greater;
        }
        if gap <= -2 {
            return Ordering::Less;
        }
        // Bring `o` onto our exponent; |gap| <= 1 so the scaling is exact.
        let scale = pow2_small(-gap);
        let (ohi, olo) = (o.hi * scale, o.lo * scale);
        let (s, e) = two_sum(self.hi, -ohi);
        let rest = e + (self.lo - olo);
        let diff = s + rest;
        if diff > 0.0 {
            Ordering::Greater
        } else if diff < 0.0 {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}
