//! Small exact linear algebra: characteristic polynomials, rational roots,
//! null spaces and ranks. Floating point only proposes root candidates.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type RatMatrix = Vec<Vec<Rational>>;

/// Product of two square row-major integer matrices of side `n`.
pub fn int_matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x == 0 {
                continue;
            }
            let row = &b[l * n..(l + 1) * n];
            for (o, &y) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                *o += x * y;
            }
        }
    }
    out
}

pub fn rat_matrix_from_ints(m: &[Vec<i64>]) -> RatMatrix {
    m.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect()
}

pub fn rat_matmul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (l, x) in a[i].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * &b[l][j];
            }
        }
    }
    out
}

pub fn rat_matvec(a: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn trace(a: &RatMatrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier,
/// coefficients from the constant term up (the last one is 1).
pub fn char_poly(a: &RatMatrix) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = rat_matmul(a, &m);
        coeffs[n - k] = -trace(&am) / rational::int(k as i64);
        m = am;
    }
    coeffs
}

pub fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides `p` by `(x - r)`, returning quotient and remainder.
pub fn synthetic_div(p: &[Rational], r: &Rational) -> (Vec<Rational>, Rational) {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..=n).rev() {
        let c = &p[i] + &carry * r;
        if i == 0 {
            return (q, c);
        }
        q[i - 1] = c.clone();
        carry = c;
    }
    unreachable!()
}

/// Approximate eigenvalues (real parts) of a general square matrix; empty
/// if the QR iteration does not converge.
pub fn float_eigenvalues(a: &RatMatrix) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return vec![];
    }
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j].to_f64().unwrap_or(f64::NAN));
    let scale = m.amax().max(1.0);
    // The unbounded Schur iteration can spin forever on some integer
    // matrices, so cap it and let callers fall back to exact search.
    match Schur::try_new(m / scale, f64::EPSILON, 10_000) {
        Some(schur) => schur.complex_eigenvalues().iter().map(|z| z.re * scale).collect(),
        None => symmetrized_eigenvalues(a).unwrap_or_default(),
    }
}

/// Eigenvalues of `a` through `W^(1/2) a W^(-1/2)` when positive weights
/// with `w_i a_ij = w_j a_ji` exist, as they do for equitable quotients.
fn symmetrized_eigenvalues(a: &RatMatrix) -> Option<Vec<f64>> {
    let n = a.len();
    let mut w: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if w[start].is_some() {
            continue;
        }
        w[start] = Some(Rational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if w[j].is_none() && !a[i][j].is_zero() {
                    if a[j][i].is_zero() {
                        return None;
                    }
                    w[j] = Some(w[i].as_ref()? * &a[i][j] / &a[j][i]);
                    stack.push(j);
                }
            }
        }
    }
    let w: Vec<Rational> = w.into_iter().collect::<Option<_>>()?;
    if w.iter().any(|x| !x.is_positive()) {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if &w[i] * &a[i][j] != &w[j] * &a[j][i] {
                return None;
            }
        }
    }
    let wf: Vec<f64> = w.iter().map(|x| x.to_f64().unwrap_or(f64::NAN).sqrt()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j].to_f64().unwrap_or(f64::NAN) * wf[i] / wf[j]);
    Some(nalgebra::SymmetricEigen::new(m).eigenvalues.iter().copied().collect())
}

/// Rational roots of `p` with multiplicity, plus whatever factor is left.
///
/// Candidates come from a floating-point eigen solve of `matrix` and are
/// confirmed by exact division. If a factor remains and the polynomial has
/// integer coefficients, integers up to the Gershgorin radius of `matrix`
/// are tried exhaustively before giving up.
pub fn rational_roots(p: &[Rational], matrix: &RatMatrix) -> (Vec<(Rational, usize)>, Vec<Rational>) {
    let mut rest = p.to_vec();
    let mut found: Vec<(Rational, usize)> = Vec::new();
    let take = |rest: &mut Vec<Rational>, r: &Rational, found: &mut Vec<(Rational, usize)>| {
        let mut mult = 0;
        while rest.len() > 1 {
            let (q, rem) = synthetic_div(rest, r);
            if !rem.is_zero() {
                break;
            }
            *rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((r.clone(), mult));
        }
    };

    let scale = matrix.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())).to_u64().unwrap_or(1);
    for x in float_eigenvalues(matrix) {
        if rest.len() <= 1 {
            break;
        }
        let mut cands = vec![rational::big(BigInt::from(x.round() as i128))];
        if let Some(r) = rational::reconstruct(x, scale.saturating_mul(1 << 20), 1e-6 * x.abs().max(1.0)) {
            cands.push(r);
        }
        for c in cands {
            take(&mut rest, &c, &mut found);
        }
    }

    if rest.len() > 1 && rest.iter().all(rational::is_integer) {
        let radius = matrix
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero)
            .ceil()
            .to_integer()
            .to_i64()
            .unwrap_or(i64::MAX);
        if radius <= 10_000_000 {
            let mut x = -radius;
            while x <= radius && rest.len() > 1 {
                take(&mut rest, &rational::int(x), &mut found);
                x += 1;
            }
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0));
    (found, rest)
}

/// Full spectrum of `a` as rational eigenvalues with algebraic
/// multiplicities, in decreasing order. Fails if any eigenvalue is not
/// rational.
pub fn rational_spectrum(a: &RatMatrix, context: &str) -> Result<Vec<(Rational, usize)>> {
    let p = char_poly(a);
    let (roots, rest) = rational_roots(&p, a);
    if rest.len() > 1 {
        return Err(Error::IrrationalSpectrum { context: context.to_string(), residual_degree: rest.len() - 1 });
    }
    Ok(roots)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right null space of `a`.
pub fn nullspace(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b` exactly. Returns `None` when `a` is
/// singular.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

pub fn determinant(a: &RatMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Exact rank of an integer matrix given as rows.
///
/// Fraction-free elimination in `i128` with each updated row divided by the
/// gcd of its entries; on overflow the same elimination is redone with
/// `BigInt`.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match rank_i128(small) {
        Some(r) => r,
        None => rank_big(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()),
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let mut g = 0i128;
            for j in c..cols {
                let v = row[j].checked_mul(piv)?.checked_sub(f.checked_mul(pivot_row[j])?)?;
                row[j] = v;
                g = gcd_i128(g, v);
            }
            if g > 1 {
                for x in row[c..].iter_mut() {
                    *x /= g;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    Some(r)
}

fn rank_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = pivot_row[c].clone();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let mut g = BigInt::zero();
            for j in c..cols {
                row[j] = &row[j] * &piv - &f * &pivot_row[j];
                g = g.gcd(&row[j]);
            }
            if g > BigInt::one() {
                for x in row[c..].iter_mut() {
                    *x /= &g;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
