//! Fixed-point complex arithmetic on big integers, used where a double
//! precision run cannot stay on an unstable (slow-growing) solution.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cpoly::{ComplexPoly, C64};

pub const BITS: u32 = 640;

#[derive(Clone, Debug, PartialEq)]
pub struct HpC {
    re: BigInt,
    im: BigInt,
}

fn from_f64(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let m = BigInt::from(mant) * sign;
    let shift = e + BITS as i64;
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

fn to_f64(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits > 900 {
        let drop = bits - 900;
        let top = (x >> drop as usize).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(drop as i32 - BITS as i32)
    } else {
        x.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(BITS as i32))
    }
}

impl HpC {
    pub fn from_c64(z: C64) -> Self {
        HpC { re: from_f64(z.re), im: from_f64(z.im) }
    }

    pub fn zero() -> Self {
        HpC { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn div(&self, o: &HpC) -> HpC {
        let den = (&o.re * &o.re + &o.im * &o.im) >> BITS as usize;
        let nre = (&self.re * &o.re + &self.im * &o.im) >> BITS as usize;
        let nim = (&self.im * &o.re - &self.re * &o.im) >> BITS as usize;
        HpC { re: (nre << BITS as usize) / &den, im: (nim << BITS as usize) / &den }
    }
}

impl Add for &HpC {
    type Output = HpC;
    fn add(self, o: &HpC) -> HpC {
        HpC { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &HpC {
    type Output = HpC;
    fn sub(self, o: &HpC) -> HpC {
        HpC { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &HpC {
    type Output = HpC;
    fn mul(self, o: &HpC) -> HpC {
        HpC {
            re: (&self.re * &o.re - &self.im * &o.im) >> BITS as usize,
            im: (&self.re * &o.im + &self.im * &o.re) >> BITS as usize,
        }
    }
}

fn lift(p: &ComplexPoly) -> Vec<HpC> {
    p.coeffs().iter().map(|&a| HpC::from_c64(a)).collect()
}

/// Value and derivative by Horner's rule.
fn eval_hp(c: &[HpC], z: &HpC) -> (HpC, HpC) {
    let mut v = HpC::zero();
    let mut d = HpC::zero();
    for a in c.iter().rev() {
        d = &(&d * z) + &v;
        v = &(&v * z) + a;
    }
    (v, d)
}

fn polish(c: &[HpC], z0: C64) -> HpC {
    let mut z = HpC::from_c64(z0);
    for _ in 0..12 {
        let (v, d) = eval_hp(c, &z);
        if d == HpC::zero() {
            break;
        }
        z = &z - &v.div(&d);
    }
    z
}

/// Newton-polishes `z0` to full fixed-point precision.
pub fn polish_root(p: &ComplexPoly, z0: C64) -> HpC {
    polish(&lift(p), z0)
}

/// `num(a) / den'(a)` at the simple zero `a` of `den` nearest `z0`, with the
/// zero polished and both values evaluated in fixed point.
pub fn simple_residue(num: &ComplexPoly, den: &ComplexPoly, z0: C64) -> C64 {
    let dc = lift(den);
    let a = polish(&dc, z0);
    let (_, d) = eval_hp(&dc, &a);
    let (v, _) = eval_hp(&lift(num), &a);
    if d == HpC::zero() {
        return C64::new(f64::NAN, f64::NAN);
    }
    v.div(&d).to_c64()
}

/// Ratios `u_{n+1}/u_n` of `u_{n+k} + sum a_i u_{n+k-i} = 0` run in fixed point.
pub fn constant_ratios(alphas: &[C64], initial: &[HpC], n_max: usize) -> Vec<C64> {
    let k = alphas.len();
    let a: Vec<HpC> = alphas.iter().map(|&x| HpC::from_c64(x)).collect();
    let mut u: Vec<HpC> = initial.to_vec();
    while u.len() <= n_max {
        let m = u.len();
        let mut next = HpC::zero();
        for i in 1..=k {
            next = &next - &(&a[i - 1] * &u[m - i]);
        }
        u.push(next);
    }
    u.windows(2).map(|w| w[1].div(&w[0]).to_c64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for x in [1.0, -0.618, 3.5e-20, 7.25e30] {
            let h = HpC::from_c64(C64::new(x, -x));
            assert_eq!(h.to_c64(), C64::new(x, -x));
        }
    }

    #[test]
    fn polished_sqrt2() {
        let p = ComplexPoly::from_real(&[-2.0, 0.0, 1.0]);
        let r = polish_root(&p, C64::new(1.4, 0.0));
        let sq = &r * &r;
        let err = &sq - &HpC::from_c64(C64::new(2.0, 0.0));
        assert!(err.to_c64().norm() < 1e-150);
    }
}
