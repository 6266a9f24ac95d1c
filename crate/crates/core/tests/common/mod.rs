//! Test-only oracles that do not share code with the production paths.

#![allow(dead_code)]

pub mod bessel_oracle;
pub mod dense;

use ldg_helmholtz::C64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rel_diff(a: &[C64], b: &[C64]) -> f64 {
    let num: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}
