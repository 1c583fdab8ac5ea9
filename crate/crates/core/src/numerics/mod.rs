//! Exact-rational and floating-point complex linear algebra.
//!
//! Everything is generic over [`Scalar`]; the two implementations are
//! [`Exact`] (arbitrary-precision rational parts, never rounds) and [`Float`].

mod exact;
mod float;
mod mat;
mod scalar;

pub use mat::Mat;
pub use scalar::{
    exact_norm_sqr, parse_big_rational, Exact, Float, Mode, Scalar, EXACT_DENOMINATOR,
    EXACT_NUMERATOR_BOUND, FLOAT_RANK_TOL,
};

use crate::error::{Error, Result};

/// `Σ v_i conj(v_i)`.
pub fn norm_sqr<F: Scalar>(v: &[F]) -> F {
    v.iter().fold(F::zero(), |acc, x| acc + x.clone() * x.conj())
}

/// `Σ a_i b_i` (no conjugation).
pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Hermitian idempotent projector onto the orthogonal complement of the span
/// of `rows` in `C^m`, i.e. `I - U (U^H U)^{-1} U^H` with `U` a basis of that
/// span. Every supplied row is annihilated: `h · P = 0`.
pub fn orth_projector<F: Scalar>(rows: &[Vec<F>], m: usize) -> Result<Mat<F>> {
    if rows.is_empty() || m == 0 {
        return Err(Error::InvalidInput("projector needs at least one row".into()));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != m) {
        return Err(Error::InvalidInput(format!(
            "row of length {} for a {m}-dimensional projector",
            r.len()
        )));
    }
    let h = Mat::from_rows(rows.to_vec())?;
    // h · P = 0 needs P to kill span(h^T); the orthogonal complement in the
    // Hermitian sense is taken against span(h^H).
    let basis = F::column_basis(&h.adjoint());
    if basis.cols() >= m {
        return Err(Error::DegenerateProjector);
    }
    if basis.cols() == 0 {
        return Ok(Mat::identity(m));
    }
    let gram = &basis.adjoint() * &basis;
    let inner = gram.inverse()?;
    let proj = &(&basis * &inner) * &basis.adjoint();
    Ok(&Mat::identity(m) - &proj)
}

/// Outcome of a zero-forcing request. Infeasibility is a legal answer.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroForcer<F> {
    /// `W` with `W · G_D = I` and `W · G_{~D} = 0`; minimum-norm rows.
    Feasible(Mat<F>),
    Infeasible,
}

impl<F> ZeroForcer<F> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ZeroForcer::Feasible(_))
    }
}

/// Columns of `0..n` not listed in `desired`.
pub fn complement(desired: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|c| !desired.contains(c)).collect()
}

/// Whether `rank(G) = rank(G_{~D}) + |D|`.
///
/// In floating point the rank of `G_{~D}` is judged on the scale of `G`, so
/// interference that cancels up to rounding counts as absent.
pub fn separable<F: Scalar>(g: &Mat<F>, desired: &[usize]) -> bool {
    if g.is_empty() {
        return desired.is_empty();
    }
    let rest = g.select_columns(&complement(desired, g.cols()));
    let scale = reference_scale(g);
    let rest_rank = if rest.is_empty() { 0 } else { F::rank_within(&rest, scale) };
    g.rank_or_zero() == rest_rank + desired.len()
}

/// Frobenius norm as an `f64`, an upper bound on the top singular value.
fn reference_scale<F: Scalar>(g: &Mat<F>) -> f64 {
    g.frobenius_sqr().to_float().re.sqrt()
}

/// Builds the linear receiver that isolates the `desired` columns of an
/// observation matrix `G` (n × S) while nulling all other columns.
///
/// The returned `W` is `(G_D^H Q G_D)^{-1} G_D^H Q`, where `Q` projects onto
/// the orthogonal complement of the interference column space. Among all
/// zero-forcers it has minimum row norms.
pub fn solve_zero_forcer<F: Scalar>(g: &Mat<F>, desired: &[usize]) -> Result<ZeroForcer<F>> {
    if desired.is_empty() {
        return Err(Error::InvalidInput("empty desired column set".into()));
    }
    for (i, &d) in desired.iter().enumerate() {
        if d >= g.cols() || desired[..i].contains(&d) {
            return Err(Error::InvalidInput(format!("bad desired column {d}")));
        }
    }
    if g.rows() == 0 || !separable(g, desired) {
        return Ok(ZeroForcer::Infeasible);
    }
    let n = g.rows();
    let rest = g.select_columns(&complement(desired, g.cols()));
    let basis = if rest.is_empty() {
        Mat::zeros(n, 0)
    } else {
        F::column_basis_within(&rest, reference_scale(g))
    };
    let q = if basis.cols() == 0 {
        Mat::identity(n)
    } else {
        let inner = (&basis.adjoint() * &basis).inverse()?;
        &Mat::identity(n) - &(&(&basis * &inner) * &basis.adjoint())
    };
    let qgd = &q * &g.select_columns(desired);
    let gram = &qgd.adjoint() * &qgd;
    let inv = match gram.inverse() {
        Ok(inv) => inv,
        Err(Error::Singular) => return Ok(ZeroForcer::Infeasible),
        Err(e) => return Err(e),
    };
    Ok(ZeroForcer::Feasible(&inv * &qgd.adjoint()))
}

/// Shorthand for building exact scalars in tests and fixtures.
pub fn exact(re: i64, im: i64) -> Exact {
    use num_rational::BigRational;
    num_complex::Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

/// Exact scalar `(re_n/re_d) + i (im_n/im_d)`.
pub fn exact_frac(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Exact {
    use num_rational::BigRational;
    num_complex::Complex::new(
        BigRational::new(re_n.into(), re_d.into()),
        BigRational::new(im_n.into(), im_d.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn ex(rows: &[&[i64]]) -> Mat<Exact> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| exact(v, 0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_of_identity_and_proportional_rows() {
        assert_eq!(Mat::<Exact>::identity(2).rank().unwrap(), 2);
        assert_eq!(Mat::<Float>::identity(2).rank().unwrap(), 2);
        assert_eq!(ex(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
    }

    #[test]
    fn rank_of_empty_matrix_is_an_error() {
        let m = Mat::<Exact>::zeros(0, 3);
        assert!(matches!(m.rank(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn bareiss_handles_complex_rationals() {
        // second row = (1/2 + i) * first row
        let s = exact_frac(1, 2, 1, 1);
        let r0 = vec![exact_frac(3, 7, -1, 5), exact(2, 1), exact(0, 0)];
        let r1: Vec<Exact> = r0.iter().map(|x| x.clone() * s.clone()).collect();
        let r2 = vec![exact(0, 0), exact(0, 0), exact_frac(1, 3, 0, 1)];
        let m = Mat::from_rows(vec![r0, r1, r2]).unwrap();
        assert_eq!(m.rank().unwrap(), 2);
    }

    #[test]
    fn projector_axis_aligned() {
        let p = orth_projector(&[vec![exact(1, 0), exact(0, 0)]], 2).unwrap();
        assert_eq!(p, ex(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn projector_symmetric_case() {
        let p = orth_projector(&[vec![exact(1, 0), exact(1, 0)]], 2).unwrap();
        let half = exact_frac(1, 2, 0, 1);
        let expected = Mat::from_rows(vec![
            vec![half.clone(), -half.clone()],
            vec![-half.clone(), half],
        ])
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn projector_of_full_span_is_degenerate() {
        let rows = vec![vec![exact(1, 0), exact(0, 0)], vec![exact(0, 0), exact(1, 1)]];
        assert!(matches!(
            orth_projector(&rows, 2),
            Err(Error::DegenerateProjector)
        ));
    }

    #[test]
    fn projector_rejects_wrong_row_length() {
        assert!(matches!(
            orth_projector(&[vec![exact(1, 0)]], 2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn projector_annihilates_two_rows_in_c3() {
        let h1 = vec![exact_frac(3, 4, 1, 2), exact(-2, 1), exact_frac(5, 3, 0, 1)];
        let h2 = vec![exact(1, -1), exact_frac(7, 8, 2, 1), exact(0, 3)];
        let p = orth_projector(&[h1.clone(), h2.clone()], 3).unwrap();
        assert!(p.left_mul(&h1).unwrap().iter().all(Scalar::is_zero));
        assert!(p.left_mul(&h2).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(p.rank().unwrap(), 1);
        assert_eq!(&p * &p, p);
        assert_eq!(p.adjoint(), p);
    }

    #[test]
    fn zero_forcer_identity() {
        let g = Mat::<Exact>::identity(3);
        match solve_zero_forcer(&g, &[0, 1, 2]).unwrap() {
            ZeroForcer::Feasible(w) => assert_eq!(w, Mat::identity(3)),
            ZeroForcer::Infeasible => panic!("identity must be separable"),
        }
    }

    #[test]
    fn zero_forcer_single_equation_two_unknowns() {
        let g = ex(&[&[1, 1]]);
        assert_eq!(solve_zero_forcer(&g, &[0]).unwrap(), ZeroForcer::Infeasible);
    }

    #[test]
    fn zero_forcer_nulls_interference() {
        // y0 = s0 + s2, y1 = s1 + 2 s2, y2 = s2
        let g = ex(&[&[1, 0, 1], &[0, 1, 2], &[0, 0, 1]]);
        let ZeroForcer::Feasible(w) = solve_zero_forcer(&g, &[0, 1]).unwrap() else {
            panic!("separable");
        };
        let wg = &w * &g;
        assert_eq!(wg.select_columns(&[0, 1]), Mat::identity(2));
        assert!(wg.select_columns(&[2]).is_zero());
    }

    #[test]
    fn zero_forcer_float_matches_exact_structure() {
        let g = Mat::from_rows(vec![
            vec![Complex::new(1.0, 0.5), Complex::new(0.3, -1.0)],
            vec![Complex::new(-0.2, 0.1), Complex::new(2.0, 0.0)],
        ])
        .unwrap();
        let ZeroForcer::Feasible(w) = solve_zero_forcer(&g, &[1]).unwrap() else {
            panic!("separable");
        };
        let wg = &w * &g;
        assert!((wg.get(0, 1) - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert!(wg.get(0, 0).norm() < 1e-12);
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let m = ex(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 2);
        assert!((&m * &ns).is_zero());
    }

    #[test]
    fn exact_inverse_round_trip() {
        let m = Mat::from_rows(vec![
            vec![exact(2, 1), exact_frac(1, 3, 0, 1)],
            vec![exact(0, -1), exact(5, 0)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(matches!(ex(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
    }
}
