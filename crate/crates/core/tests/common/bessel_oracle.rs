//! J0 and J1 from their power series in binary fixed point with enough
//! guard bits that cancellation up to x = 200 stays far below 1e-16.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

const FRAC_BITS: u64 = 768;

fn to_fixed(x: f64) -> BigInt {
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return BigInt::zero();
    }
    // x = mant * 2^exp exactly
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let (mant, e) = if exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), exp - 1075)
    };
    let shift = FRAC_BITS as i64 + e;
    assert!(shift >= 0);
    BigInt::from(mant) << (shift as u64)
}

fn to_f64(v: &BigInt) -> f64 {
    // keep 64 bits of fraction, then one floating division
    let top = v >> (FRAC_BITS - 64);
    top.to_f64().unwrap() / 2f64.powi(64)
}

/// `Σ_j (-1)^j (x/2)^{2j+n} / (j! (j+n)!)` for `n` in {0, 1}.
fn series(x: f64, n: u32) -> f64 {
    let one = BigInt::one() << FRAC_BITS;
    let xf = to_fixed(x);
    let q = (&xf * &xf) >> (FRAC_BITS + 2); // x²/4
    let mut term = if n == 0 { one } else { &xf >> 1u32 };
    let mut sum = term.clone();
    let mut j: u64 = 1;
    loop {
        term = -((&term * &q) >> FRAC_BITS) / BigInt::from(j * (j + n as u64));
        if term.is_zero() {
            break;
        }
        sum += &term;
        // terms decay factorially once j exceeds x/2
        if (j as f64) > x && term.abs().bits() + 8 < FRAC_BITS - 120 {
            break;
        }
        j += 1;
    }
    to_f64(&sum)
}

pub fn j0(x: f64) -> f64 {
    series(x, 0)
}

pub fn j1(x: f64) -> f64 {
    series(x, 1)
}
