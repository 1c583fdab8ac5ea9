//! Fraction-free elimination over the Gaussian integers.
//!
//! Each row of an exact matrix is scaled by the lcm of its denominators, which
//! leaves the rank unchanged and moves every entry into `Z[i]`. Bareiss'
//! update then keeps all intermediate values integral: each division is exact
//! because the dividend is a minor of the scaled matrix times the previous
//! pivot.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Exact, Mat};

type GaussInt = Complex<BigInt>;

fn clear_denominators(row: &[Exact]) -> Vec<GaussInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, z| {
        acc.lcm(z.re.denom()).lcm(z.im.denom())
    });
    row.iter()
        .map(|z| {
            let re = z.re.numer() * (&lcm / z.re.denom());
            let im = z.im.numer() * (&lcm / z.im.denom());
            Complex::new(re, im)
        })
        .collect()
}

/// Exact quotient in `Z[i]`; the caller guarantees divisibility.
fn div_exact(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let norm = &b.re * &b.re + &b.im * &b.im;
    let num = a * b.conj();
    debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
    Complex::new(num.re / &norm, num.im / &norm)
}

fn is_zero(z: &GaussInt) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub(crate) fn bareiss_rank(m: &Mat<Exact>) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<GaussInt>> = (0..rows).map(|i| clear_denominators(m.row(i))).collect();
    let mut prev = GaussInt::new(BigInt::one(), BigInt::zero());
    let mut rank = 0;

    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = div_exact(&v, &prev);
            }
            row[c] = GaussInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
