use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SWITCH: f64 = 2.0;

/// Modified Bessel function of the second kind, order zero.
///
/// Power series below `x = 2`, Steed's continued fraction (Temme's CF2
/// with `nu = 0`) above it. Both branches are accurate to a few ulps at
/// the switch point.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K0 requires finite x > 0, got {x}")));
    }
    Ok(if x <= SWITCH { k0_series(x) } else { k0_continued_fraction(x) })
}

/// `K0(x) = -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 H_k`.
pub(crate) fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term * harmonic < 1e-18 * tail.abs().max(i0) {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

pub(crate) fn k0_continued_fraction(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s
}
