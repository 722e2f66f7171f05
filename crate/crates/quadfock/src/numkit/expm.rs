//! Matrix exponential by scaling and squaring with a diagonal [13/13] Padé
//! approximant and the order-selection thresholds of Higham's 2005 method.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::cmatrix::CMatrix;
use super::lu::Lu;
use crate::error::Error;
use crate::Result;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn pade_coeffs(m: usize) -> &'static [f64] {
    const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
    const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
    const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
    const B9: [f64; 10] = [
        17643225600.0,
        8821612800.0,
        2075673600.0,
        302702400.0,
        30270240.0,
        2162160.0,
        110880.0,
        3960.0,
        90.0,
        1.0,
    ];
    match m {
        3 => &B3,
        5 => &B5,
        7 => &B7,
        9 => &B9,
        _ => &B13,
    }
}

/// e^{τ·m}: relative accuracy around 1e-13 for ‖τm‖ up to ~50. Overflow is an
/// explicit error, never a silent Inf.
pub fn expm(m: &CMatrix, tau: Complex64) -> Result<CMatrix> {
    let n = m.require_square()?;
    m.require_finite()?;
    if !(tau.re.is_finite() && tau.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let a = m.scale(tau);
    if n == 0 {
        return Ok(a);
    }
    if n == 1 {
        let e = a[(0, 0)].exp();
        if !(e.re.is_finite() && e.im.is_finite()) {
            return Err(Error::Overflow);
        }
        return Ok(CMatrix::from_rows(1, 1, &[e]).unwrap());
    }
    let norm = a.one_norm();
    if !norm.is_finite() {
        return Err(Error::NonFinite);
    }

    let result = if norm <= THETA_9 {
        let order = if norm <= THETA_3 {
            3
        } else if norm <= THETA_5 {
            5
        } else if norm <= THETA_7 {
            7
        } else {
            9
        };
        pade_low(&a, order)?
    } else {
        let mut s = 0u32;
        let mut scaled = a;
        if norm > THETA_13 {
            s = ((norm / THETA_13).log2()).ceil() as u32;
            let f = Complex64::new(0.5f64.powi(s as i32), 0.0);
            scaled = scaled.scale(f);
        }
        let mut x = pade13(&scaled)?;
        for _ in 0..s {
            x = &x * &x;
        }
        x
    };
    result.require_finite().map_err(|_| Error::Overflow)?;
    Ok(result)
}

fn pade_low(a: &CMatrix, order: usize) -> Result<CMatrix> {
    let n = a.rows();
    let b = pade_coeffs(order);
    let a2 = a * a;
    // U collects odd-power coefficients, V even-power ones
    let mut u = CMatrix::identity(n).scale(Complex64::new(b[1], 0.0));
    let mut v = CMatrix::identity(n).scale(Complex64::new(b[0], 0.0));
    let mut a2k = CMatrix::identity(n);
    for k in 1..=(order / 2) {
        a2k = &a2k * &a2;
        u = &u + &a2k.scale(Complex64::new(b[2 * k + 1], 0.0));
        v = &v + &a2k.scale(Complex64::new(b[2 * k], 0.0));
    }
    let u = a * &u;
    solve_pade(&u, &v)
}

fn pade13(a: &CMatrix) -> Result<CMatrix> {
    let n = a.rows();
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = CMatrix::identity(n);
    let w1 = &(&a6.scale(b[13].into()) + &a4.scale(b[11].into())) + &a2.scale(b[9].into());
    let w2 = &(&(&a6.scale(b[7].into()) + &a4.scale(b[5].into())) + &a2.scale(b[3].into()))
        + &id.scale(b[1].into());
    let u = a * &(&(&a6 * &w1) + &w2);
    let z1 = &(&a6.scale(b[12].into()) + &a4.scale(b[10].into())) + &a2.scale(b[8].into());
    let v = &(&(&a6 * &z1) + &(&a6.scale(b[6].into()) + &a4.scale(b[4].into())))
        + &(&a2.scale(b[2].into()) + &id.scale(b[0].into()));
    solve_pade(&u, &v)
}

/// (V − U) X = (V + U)
fn solve_pade(u: &CMatrix, v: &CMatrix) -> Result<CMatrix> {
    let denom = v - u;
    let numer = v + u;
    Ok(Lu::new(&denom)?.solve(&numer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::cmatrix::vec_norm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tau_zero_is_identity() {
        let m = CMatrix::from_rows(2, 2, &[c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0), c(3.0, -1.0)]).unwrap();
        let e = expm(&m, c(0.0, 0.0)).unwrap();
        assert!((&e - &CMatrix::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn nilpotent_terminates() {
        let m = CMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        for &t in &[0.3, -2.0, 17.5] {
            let e = expm(&m, c(t, 0.0)).unwrap();
            assert!((e[(0, 1)] - c(t, 0.0)).norm() < 1e-13 * (1.0 + t.abs()));
            assert!((e[(0, 0)] - c(1.0, 0.0)).norm() < 1e-13);
            assert!((e[(1, 0)]).norm() < 1e-13);
        }
    }

    #[test]
    fn rotation_by_half_pi() {
        let m = CMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let e = expm(&m, c(core::f64::consts::FRAC_PI_2, 0.0)).unwrap();
        let expect = CMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((&e - &expect).max_abs() < 1e-14);
    }

    #[test]
    fn against_diagonalizable() {
        // A = diag(1, 2i) conjugated, exponential known exactly
        let p = CMatrix::from_rows(2, 2, &[c(1.0, 0.0), c(1.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let d = CMatrix::diag(&[c(1.0, 0.0), c(0.0, 2.0)]);
        let pinv = crate::numkit::lu::inverse(&p).unwrap();
        let a = &(&p * &d) * &pinv;
        let tau = c(0.7, -0.4);
        let e = expm(&a, tau).unwrap();
        let ed = CMatrix::diag(&[(tau * c(1.0, 0.0)).exp(), (tau * c(0.0, 2.0)).exp()]);
        let expect = &(&p * &ed) * &pinv;
        assert!((&e - &expect).max_abs() < 1e-12 * expect.max_abs());
    }

    #[test]
    fn large_norm_scaling_path() {
        let m = CMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        // rotation by 40: ||tau m|| = 40 -> scaling needed
        let e = expm(&m, c(40.0, 0.0)).unwrap();
        let expect = CMatrix::from_rows(
            2,
            2,
            &[
                c(40.0f64.cos(), 0.0),
                c(-(40.0f64.sin()), 0.0),
                c(40.0f64.sin(), 0.0),
                c(40.0f64.cos(), 0.0),
            ],
        )
        .unwrap();
        assert!((&e - &expect).max_abs() < 1e-12);
    }

    #[test]
    fn overflow_is_error() {
        let m = CMatrix::from_rows(1, 1, &[c(1.0, 0.0)]).unwrap();
        assert_eq!(expm(&m, c(1e6, 0.0)).unwrap_err(), Error::Overflow);
        let m2 = CMatrix::from_rows(2, 2, &[c(900.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(900.0, 0.0)]).unwrap();
        assert_eq!(expm(&m2, c(1.0, 0.0)).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn vector_flow_sanity() {
        let m = CMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(-0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)]).unwrap();
        let e = expm(&m, c(-0.1, 0.0)).unwrap();
        let v = e.matvec(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(vec_norm(&v) <= 1.0 + 1e-12);
    }
}
