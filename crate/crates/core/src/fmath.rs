//! Float math routed through `libm` so the crate stays `no_std`.

pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

pub fn exp2(x: f64) -> f64 {
    libm::exp2(x)
}

pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[allow(dead_code)] // test oracles
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

pub fn round(x: f64) -> f64 {
    libm::round(x)
}

pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Relative difference |a - b| / max(|a|, |b|, 1).
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = abs(a).max(abs(b)).max(1.0);
    abs(a - b) / scale
}

/// Equality up to relative tolerance `tol`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    rel_diff(a, b) <= tol
}
