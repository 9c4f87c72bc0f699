//! Certified natural logarithms as fixed-point intervals.
//!
//! An [`Iv`] at precision `w` encloses a real number x as
//! lo·2^-w <= x <= hi·2^-w. Every operation rounds outward.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::factorial;

/// Below this argument ln m! is taken from the exact factorial.
const EXACT_FACTORIAL_LIMIT: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Iv {
    lo: BigInt,
    hi: BigInt,
}

#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    w: u32,
    ln2: Iv,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Iv {
    pub fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul_int(&self, k: &BigInt) -> Iv {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Iv { lo: b, hi: a }
        } else {
            Iv { lo: a, hi: b }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Iv {
        Iv { lo: floor_div(&self.lo, k), hi: ceil_div(&self.hi, k) }
    }

    /// Certainly positive.
    pub fn positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Certainly <= 0.
    pub fn non_positive(&self) -> bool {
        !self.hi.is_positive()
    }

    pub fn bounds(&self, ctx: &Ctx) -> (BigRational, BigRational) {
        let den = BigInt::one() << ctx.w;
        (BigRational::new(self.lo.clone(), den.clone()), BigRational::new(self.hi.clone(), den))
    }
}

impl Ctx {
    pub fn new(w: u32) -> Self {
        let mut ctx = Ctx { w, ln2: Iv { lo: BigInt::zero(), hi: BigInt::zero() } };
        ctx.ln2 = ctx.odd_series(&BigInt::one(), &BigInt::from(3), false).mul_int(&BigInt::from(2));
        ctx
    }

    fn one(&self) -> BigInt {
        BigInt::one() << self.w
    }

    /// Enclosure of num/den, den > 0.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Iv {
        let scaled = num << self.w;
        Iv { lo: floor_div(&scaled, den), hi: ceil_div(&scaled, den) }
    }

    /// Σ_{k>=0} ±t^(2k+1)/(2k+1) for t = a/b in [0, 1/3], with alternating
    /// signs when `alternating` (atan) and all positive otherwise (atanh).
    /// Powers of t are kept at working precision by floor and ceiling chains.
    fn odd_series(&self, a: &BigInt, b: &BigInt, alternating: bool) -> Iv {
        let one = self.one();
        let t = self.ratio(a, b);
        let t2_lo = floor_div(&(&t.lo * &t.lo), &one);
        let t2_hi = ceil_div(&(&t.hi * &t.hi), &one);
        let (mut p_lo, mut p_hi) = (t.lo, t.hi);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        let mut k = 0u64;
        loop {
            let d = BigInt::from(2 * k + 1);
            let (f, c) = (floor_div(&p_lo, &d), ceil_div(&p_hi, &d));
            if c <= BigInt::one() {
                break;
            }
            if alternating && k % 2 == 1 {
                lo -= &c;
                hi -= &f;
            } else {
                lo += &f;
                hi += &c;
            }
            p_lo = floor_div(&(&p_lo * &t2_lo), &one);
            p_hi = ceil_div(&(&p_hi * &t2_hi), &one);
            k += 1;
        }
        // every remaining term is at most one ulp and they shrink ninefold
        Iv { lo: lo - 2, hi: hi + 2 }
    }

    pub fn ln2(&self) -> Iv {
        self.ln2.clone()
    }

    pub fn pi(&self) -> Iv {
        let five = self.odd_series(&BigInt::one(), &BigInt::from(5), true);
        let big = self.odd_series(&BigInt::one(), &BigInt::from(239), true);
        five.mul_int(&BigInt::from(16)).sub(&big.mul_int(&BigInt::from(4)))
    }

    /// ln x for an integer x >= 1.
    pub fn ln_int(&self, x: &BigUint) -> Iv {
        assert!(!x.is_zero(), "ln of zero");
        let keep = self.w as u64 + 64;
        if x.bits() <= keep {
            return self.ln_small(x);
        }
        // x = 2^s·m with m truncated: ln m <= ln x - s ln2 <= ln(m+1)
        let s = x.bits() - keep;
        let m: BigUint = x >> s;
        let shift = self.ln2().mul_int(&BigInt::from(s));
        let lo = self.ln_small(&m);
        let hi = self.ln_small(&(&m + 1u32));
        Iv { lo: lo.lo, hi: hi.hi }.add(&shift)
    }

    fn ln_small(&self, x: &BigUint) -> Iv {
        let e = x.bits() - 1;
        let base = BigInt::one() << e;
        let x = BigInt::from(x.clone());
        // x = 2^e (1+t)/(1-t) with t = (x-2^e)/(x+2^e) in [0, 1/3)
        let t = self.odd_series(&(&x - &base), &(&x + &base), false).mul_int(&BigInt::from(2));
        self.ln2().mul_int(&BigInt::from(e)).add(&t)
    }

    /// ln(a/b) for positive integers.
    pub fn ln_ratio(&self, r: &BigRational) -> Iv {
        assert!(r.is_positive(), "ln of non-positive rational");
        let num = r.numer().to_biguint().expect("positive");
        let den = r.denom().to_biguint().expect("positive");
        self.ln_int(&num).sub(&self.ln_int(&den))
    }

    /// ln of a positive enclosure, by monotonicity.
    fn ln_iv(&self, x: &Iv) -> Iv {
        let lo = x.lo.to_biguint().filter(|v| !v.is_zero()).expect("positive enclosure");
        let hi = x.hi.to_biguint().expect("positive enclosure");
        let shift = self.ln2().mul_int(&BigInt::from(self.w));
        let l = self.ln_int(&lo).sub(&shift);
        let h = self.ln_int(&hi).sub(&shift);
        Iv { lo: l.lo, hi: h.hi }
    }

    /// ln m!
    pub fn ln_factorial(&self, m: &BigUint) -> Iv {
        if *m < BigUint::from(EXACT_FACTORIAL_LIMIT) {
            let m = m.iter_u64_digits().next().unwrap_or(0);
            return self.ln_int(&factorial(m));
        }
        self.stirling(m)
    }

    /// ln Γ(m+1) = m ln m - m + ln(2πm)/2 + Σ B_2k/(2k(2k-1) m^(2k-1)) + R,
    /// |R| <= 691/(360360 m^11).
    fn stirling(&self, m: &BigUint) -> Iv {
        let mi = BigInt::from(m.clone());
        let ln_m = self.ln_int(m);
        let two_pi = self.pi().mul_int(&BigInt::from(2));
        let half_log = self.ln_iv(&two_pi).add(&ln_m).div_int(&BigInt::from(2));
        let mut acc = ln_m.mul_int(&mi).sub(&Iv { lo: &mi << self.w, hi: &mi << self.w }).add(&half_log);
        // B_2k / (2k (2k-1)) for k = 1..=5
        let coeffs: [(i64, i64); 5] = [(1, 12), (-1, 360), (1, 1260), (-1, 1680), (1, 1188)];
        let mut power = mi.clone();
        let m2 = &mi * &mi;
        for (num, den) in coeffs {
            acc = acc.add(&self.ratio(&BigInt::from(num), &(BigInt::from(den) * &power)));
            power *= &m2;
        }
        let rem = self.ratio(&BigInt::from(691), &(BigInt::from(360360) * &power));
        Iv { lo: &acc.lo - &rem.hi, hi: &acc.hi + &rem.hi }
    }

    /// ln C(top, bottom)
    pub fn ln_binomial(&self, top: &BigUint, bottom: &BigUint) -> Iv {
        let rest = top - bottom;
        self.ln_factorial(top).sub(&self.ln_factorial(bottom)).sub(&self.ln_factorial(&rest))
    }
}
