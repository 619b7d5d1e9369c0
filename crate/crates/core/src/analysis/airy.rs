//! Airy function Ai and its derivative on the real line.
//!
//! * `0 ≤ t ≤ 2`: Maclaurin series.
//! * `-9 ≤ t < 0`: the Airy equation `y'' = t y` is advanced from the origin
//!   by Taylor steps of length ≤ 1.
//! * `2 < t ≤ 9`: Taylor steps run backwards from the asymptotic value at
//!   `t = 9`. Ai is the growing solution in that direction, so the recessive
//!   Bi-type error does not amplify; a forward Maclaurin sum loses about
//!   `e^{4/3 t^{3/2}}` to cancellation here.
//! * `t > 9` and `t < -9`: asymptotic expansions, summed up to their
//!   smallest term.
//!
//! Arguments with `|t| > AIRY_ENVELOPE` are rejected.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::analysis::gamma::gamma;
use crate::error::{Error, Result};

pub const AIRY_ENVELOPE: f64 = 1.0e4;
pub const POSITIVE_CROSSOVER: f64 = 9.0;
const MACLAURIN_LIMIT: f64 = 2.0;
pub const NEGATIVE_CROSSOVER: f64 = -9.0;

/// Ai(0) = 3^{-2/3}/Γ(2/3).
pub fn ai_at_zero() -> f64 {
    3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0)
}

/// Ai'(0) = −3^{-1/3}/Γ(1/3).
pub fn ai_prime_at_zero() -> f64 {
    -(3f64.powf(-1.0 / 3.0)) / gamma(1.0 / 3.0)
}

/// Ai(t).
pub fn airy(t: f64) -> Result<f64> {
    airy_pair(t).map(|p| p.0)
}

/// (Ai(t), Ai'(t)).
pub fn airy_pair(t: f64) -> Result<(f64, f64)> {
    if !t.is_finite() || t.abs() > AIRY_ENVELOPE {
        return Err(Error::AiryEnvelope(t));
    }
    Ok(if t > POSITIVE_CROSSOVER {
        asymptotic_positive(t)
    } else if t < NEGATIVE_CROSSOVER {
        asymptotic_negative(-t)
    } else if t > MACLAURIN_LIMIT {
        let (y, dy) = asymptotic_positive(POSITIVE_CROSSOVER);
        march(POSITIVE_CROSSOVER, y, dy, t)
    } else if t >= 0.0 {
        taylor_step(0.0, ai_at_zero(), ai_prime_at_zero(), t)
    } else {
        march(0.0, ai_at_zero(), ai_prime_at_zero(), t)
    })
}

/// Taylor steps of length ≤ 1 from (from, y, y') to `to`.
fn march(from: f64, mut y: f64, mut dy: f64, to: f64) -> (f64, f64) {
    let steps = (to - from).abs().ceil().max(1.0) as usize;
    let h = (to - from) / steps as f64;
    let mut pos = from;
    for _ in 0..steps {
        (y, dy) = taylor_step(pos, y, dy, h);
        pos += h;
    }
    (y, dy)
}

/// Advances y'' = t y from (t0, y, y') by h using the local power series
/// (k+2)(k+1) a_{k+2} = t0 a_k + a_{k-1}.
fn taylor_step(t0: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    let mut a_km1 = 0.0; // a_{k-1}
    let mut a_k = y; // a_k
    let mut a_kp1 = dy; // a_{k+1}
    let mut val = y + dy * h;
    let mut der = dy;
    let mut hp = h; // h^{k+1}
    let mut quiet = 0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let a_kp2 = (t0 * a_k + a_km1) / ((kf + 2.0) * (kf + 1.0));
        // term a_{k+2} h^{k+2}, derivative term (k+2) a_{k+2} h^{k+1}
        let d_term = (kf + 2.0) * a_kp2 * hp;
        hp *= h;
        let v_term = a_kp2 * hp;
        val += v_term;
        der += d_term;
        let scale = val.abs().max(der.abs()).max(1e-300);
        if v_term.abs() <= 1e-18 * scale && d_term.abs() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        a_km1 = a_k;
        a_k = a_kp1;
        a_kp1 = a_kp2;
        k += 1;
        if k > 400 {
            break;
        }
    }
    (val, der)
}

/// Enough for |t| ≥ 9 (ζ ≥ 18), where the smallest term sits near k ≈ 2ζ.
const UV_TERMS: usize = 96;

/// Coefficients u_k, v_k of the Airy asymptotic expansions.
fn uv(k: usize) -> (f64, f64) {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // u_k = Γ(3k+1/2) / (54^k k! Γ(k+1/2)), built by a ratio recurrence.
        let mut out = Vec::with_capacity(UV_TERMS);
        out.push((1.0, 1.0));
        let mut u = 1.0;
        for j in 1..UV_TERMS {
            let jf = j as f64;
            // Γ(3j+1/2)/Γ(3j-5/2) = (3j-1/2)(3j-3/2)(3j-5/2); Γ(j+1/2)/Γ(j-1/2) = j-1/2
            u *= (3.0 * jf - 0.5) * (3.0 * jf - 1.5) * (3.0 * jf - 2.5) / (54.0 * jf * (jf - 0.5));
            out.push((u, -(6.0 * jf + 1.0) / (6.0 * jf - 1.0) * u));
        }
        out
    })[k]
}

/// Σ_k (±1)^k c_k z^{-k} over a subsequence, cut at the smallest term.
fn asymptotic_sum(zeta: f64, ks: impl Iterator<Item = usize>, sign_alt: bool, pick_v: bool) -> f64 {
    let mut sum = 0.0_f64;
    let mut prev = f64::INFINITY;
    for (i, k) in ks.enumerate() {
        let (u, v) = uv(k);
        let c = if pick_v { v } else { u };
        let sgn = if sign_alt && i % 2 == 1 { -1.0 } else { 1.0 };
        let term = sgn * c * zeta.powi(-(k as i32));
        if term.abs() >= prev || term.abs() < 1e-17 * sum.abs() {
            if term.abs() < prev {
                sum += term;
            }
            break;
        }
        sum += term;
        prev = term.abs();
    }
    sum
}

fn asymptotic_positive(t: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * t.powf(1.5);
    let q = t.powf(0.25);
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    // Σ (−1)^k u_k ζ^{-k}
    let su = asymptotic_sum(zeta, 0..UV_TERMS, true, false);
    let sv = asymptotic_sum(zeta, 0..UV_TERMS, true, true);
    (e / q * su, -e * q * sv)
}

fn asymptotic_negative(s: f64) -> (f64, f64) {
    // Ai(−s) ~ s^{-1/4}/√π [cos(ζ−π/4) Σ(−1)^k u_{2k} ζ^{-2k} + sin(ζ−π/4) Σ(−1)^k u_{2k+1} ζ^{-2k-1}]
    // Ai'(−s) ~ s^{1/4}/√π [sin(ζ−π/4) Σ(−1)^k v_{2k} ζ^{-2k} − cos(ζ−π/4) Σ(−1)^k v_{2k+1} ζ^{-2k-1}]
    let zeta = 2.0 / 3.0 * s.powf(1.5);
    let q = s.powf(0.25);
    let phase = zeta - FRAC_PI_4;
    let (sn, cs) = phase.sin_cos();
    let ue = asymptotic_sum(zeta, (0..UV_TERMS).step_by(2), true, false);
    let uo = asymptotic_sum(zeta, (1..UV_TERMS).step_by(2), true, false);
    let ve = asymptotic_sum(zeta, (0..UV_TERMS).step_by(2), true, true);
    let vo = asymptotic_sum(zeta, (1..UV_TERMS).step_by(2), true, true);
    let rp = PI.sqrt();
    let ai = (cs * ue + sn * uo) / (q * rp);
    let aip = q / rp * (sn * ve - cs * vo);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference (t, Ai, Ai') from a 30-digit multiprecision evaluation.
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-20.0, -0.17640612707798469, 0.89286285673647124),
        (-10.0, 0.040241238486443191, 0.99626504413279006),
        (-9.5, 0.3191032477191282, -0.10809531881187124),
        (-8.5, -0.33029023763020888, -0.032313348284639136),
        (-5.0, 0.35076100902411432, 0.32719281855444314),
        (-2.5, -0.11232506769296609, 0.67885273426479436),
        (-1.0, 0.53556088329235212, -0.010160567116645209),
        (0.5, 0.23169360648083349, -0.22491053266468389),
        (2.0, 0.034924130423274379, -0.053090384433653632),
        (5.0, 0.00010834442813607442, -0.00024741389086846248),
        (6.5, 2.7958823432049136e-6, -7.2319314666017926e-6),
        (10.0, 1.1047532552898686e-10, -3.5206336767389236e-10),
        (30.0, 3.2082175915504956e-49, -1.759876581432726e-48),
    ];

    #[test]
    fn far_oscillatory_side() {
        // The phase (2/3)|t|^{3/2} is large here, so absolute accuracy is
        // limited by its rounding.
        for &(t, ai, aip) in &[(-500.0, 0.07259012010404114, 2.1173370928026481), (-3000.0, -0.068031441338026854, 1.8840642504158958)] {
            let (a, d) = airy_pair(t).unwrap();
            assert!((a - ai).abs() < 1e-10, "Ai({t}) = {a}");
            assert!((d - aip).abs() < 1e-9, "Ai'({t}) = {d}");
        }
    }

    #[test]
    fn origin() {
        let (a, d) = airy_pair(0.0).unwrap();
        assert!((a - 0.355_028_053_887_817_2).abs() < 1e-15);
        assert!((d + 0.258_819_403_792_806_8).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        for &(t, ai, aip) in REFERENCE {
            let (a, d) = airy_pair(t).unwrap();
            // Relative on the decaying side, absolute-floored among the zeros.
            let floor = if t > 0.0 { 0.0 } else { 1e-3 };
            assert!((a - ai).abs() <= 1e-12 * ai.abs().max(floor), "Ai({t}) = {a}, want {ai}");
            assert!((d - aip).abs() <= 1e-12 * aip.abs().max(floor), "Ai'({t}) = {d}, want {aip}");
        }
    }

    #[test]
    fn crossovers_are_continuous() {
        for &c in &[MACLAURIN_LIMIT, POSITIVE_CROSSOVER, NEGATIVE_CROSSOVER] {
            let eps = 1e-9;
            let (a1, d1) = airy_pair(c - eps).unwrap();
            let (a2, d2) = airy_pair(c + eps).unwrap();
            // Jumps across the switch, after removing the slope contribution.
            assert!((a1 - a2).abs() < 1e-10 + 4.0 * eps, "Ai jump at {c}");
            assert!((d1 - d2).abs() < 1e-10 + 4.0 * eps * c.abs(), "Ai' jump at {c}");
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        for &t in &[-30.0, -12.0, -7.3, -3.1, 0.4, 3.3, 8.0] {
            let h = 1e-3;
            let f = |x: f64| airy(x).unwrap();
            let d2 = (-f(t + 2.0 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2.0 * h))
                / (12.0 * h * h);
            let rhs = t * f(t);
            assert!((d2 - rhs).abs() < 1e-6 * rhs.abs().max(1e-3), "t={t}: {d2} vs {rhs}");
        }
    }

    #[test]
    fn decay_and_envelope() {
        let a = airy(10.0).unwrap();
        assert!(a > 0.0 && a < 1e-9);
        assert!(matches!(airy(2.0e4), Err(Error::AiryEnvelope(_))));
        assert!(airy(f64::NAN).is_err());
    }
}
