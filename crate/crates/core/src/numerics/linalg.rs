//! Small dense complex matrices (up to roughly 16×16).

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Circularly-symmetric complex normal with unit variance.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| {
            C64::new(rows[i][j], 0.0)
        })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    /// I.i.d. unit complex Gaussian entries, drawn row by row.
    pub fn gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(rows, cols, |_, _| complex_normal(rng))
    }

    /// Haar-distributed unitary from the phase-fixed QR of a Gaussian matrix.
    pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::gaussian(n, n, rng).qr().0
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &CMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        (0..self.rows).map(|i| self[(i, j)].norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    /// LU with partial pivoting of a square matrix: returns the packed
    /// factors and the row-swap parity.
    fn lu(&self) -> (CMatrix, Vec<usize>, bool) {
        assert_eq!(self.rows, self.cols, "LU needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&x, &y| a[(x, c)].norm().total_cmp(&a[(y, c)].norm()))
                .unwrap();
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                perm.swap(p, c);
                odd = !odd;
            }
            let piv = a[(c, c)];
            if piv.norm() == 0.0 {
                continue;
            }
            for r in c + 1..n {
                let f = a[(r, c)] / piv;
                a[(r, c)] = f;
                for j in c + 1..n {
                    let t = a[(c, j)];
                    a[(r, j)] -= f * t;
                }
            }
        }
        (a, perm, odd)
    }

    pub fn det(&self) -> C64 {
        let (lu, _, odd) = self.lu();
        let mut d = C64::new(if odd { -1.0 } else { 1.0 }, 0.0);
        for i in 0..self.rows {
            d *= lu[(i, i)];
        }
        d
    }

    /// `log2 |det|` together with the number of pivots that fell below
    /// `floor` (those are replaced by `floor`).
    pub fn log2_abs_det_floored(&self, floor: f64) -> (f64, usize) {
        let (lu, _, _) = self.lu();
        let mut floored = 0;
        let mut acc = 0.0;
        for i in 0..self.rows {
            let mut p = lu[(i, i)].norm();
            if p < floor {
                p = floor;
                floored += 1;
            }
            acc += p.log2();
        }
        (acc, floored)
    }

    pub fn inverse(&self) -> Option<CMatrix> {
        let n = self.rows;
        let (lu, perm, _) = self.lu();
        if (0..n).any(|i| lu[(i, i)].norm() == 0.0) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            // solve L U x = P e_col
            let mut x: Vec<C64> = (0..n)
                .map(|i| if perm[i] == col { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
                .collect();
            for i in 0..n {
                for j in 0..i {
                    let t = lu[(i, j)] * x[j];
                    x[i] -= t;
                }
            }
            for i in (0..n).rev() {
                for j in i + 1..n {
                    let t = lu[(i, j)] * x[j];
                    x[i] -= t;
                }
                x[i] /= lu[(i, i)];
            }
            for i in 0..n {
                inv[(i, col)] = x[i];
            }
        }
        Some(inv)
    }

    /// Eigenvalues of a Hermitian matrix in descending order, via cyclic
    /// Jacobi on the real symmetric embedding `[[Re, -Im], [Im, Re]]`, whose
    /// spectrum is that of the input with every value doubled.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert_eq!(self.rows, self.cols, "eigenvalues need a square matrix");
        let n = self.rows;
        let m = 2 * n;
        let mut a = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self[(i, j)];
                a[i * m + j] = z.re;
                a[(i + n) * m + j + n] = z.re;
                a[(i + n) * m + j] = z.im;
                a[i * m + j + n] = -z.im;
            }
        }
        let mut eig = jacobi_eigenvalues(&mut a, m);
        eig.sort_by(|x, y| y.total_cmp(x));
        eig.into_iter().step_by(2).collect()
    }

    /// Householder QR with `r_ii ≥ 0`. Works for tall or square inputs and
    /// returns a square unitary `Q`.
    pub fn qr(&self) -> (CMatrix, CMatrix) {
        let (q, r, _) = householder(self, false);
        (q, r)
    }
}

/// Shared Householder driver. With `pivot`, step `i` first swaps in the
/// remaining column of largest trailing norm. Returns `(Q, R, column order)`.
pub(crate) fn householder(a: &CMatrix, pivot: bool) -> (CMatrix, CMatrix, Vec<usize>) {
    let (m, n) = (a.rows, a.cols);
    let mut r = a.clone();
    let mut qh = CMatrix::identity(m);
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..n.min(m) {
        if pivot {
            let trailing = |r: &CMatrix, j: usize| (i..m).map(|k| r[(k, j)].norm_sqr()).sum::<f64>();
            let mut best = i;
            let mut best_norm = trailing(&r, i);
            for j in i + 1..n {
                let t = trailing(&r, j);
                if t > best_norm {
                    best = j;
                    best_norm = t;
                }
            }
            if best != i {
                for k in 0..m {
                    r.data.swap(k * n + i, k * n + best);
                }
                order.swap(i, best);
            }
        }
        let norm = (i..m).map(|k| r[(k, i)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = r[(i, i)];
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (i..m).map(|k| r[(k, i)]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let reflect = |mat: &mut CMatrix, first_col: usize| {
            for j in first_col..mat.cols {
                let mut s = C64::new(0.0, 0.0);
                for (t, vk) in v.iter().enumerate() {
                    s += vk.conj() * mat[(i + t, j)];
                }
                let s = s * (2.0 / vv);
                for (t, vk) in v.iter().enumerate() {
                    mat[(i + t, j)] -= vk * s;
                }
            }
        };
        reflect(&mut r, i);
        reflect(&mut qh, 0);
        r[(i, i)] = alpha;
        for k in i + 1..m {
            r[(k, i)] = C64::new(0.0, 0.0);
        }
    }
    let mut q = qh.adjoint();
    // rotate phases so the diagonal of R is real and nonnegative
    for i in 0..n.min(m) {
        let d = r[(i, i)];
        if d.norm() == 0.0 {
            r[(i, i)] = C64::new(0.0, 0.0);
            continue;
        }
        let ph = d / d.norm();
        for j in 0..n {
            r[(i, j)] *= ph.conj();
        }
        for k in 0..m {
            q[(k, i)] *= ph;
        }
        r[(i, i)] = C64::new(r[(i, i)].re.max(0.0), 0.0);
    }
    (q, r, order)
}

/// Eigenvalues of a real symmetric `n×n` matrix (row-major, overwritten).
fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        return vec![0.0; n];
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        a.sub(b).frobenius_norm() <= tol * (1.0 + b.frobenius_norm())
    }

    #[test]
    fn qr_reconstructs_and_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let a = CMatrix::gaussian(n, n, &mut rng);
            let (q, r) = a.qr();
            assert!(close(&q.matmul(&r), &a, 1e-12));
            assert!(close(&q.adjoint().matmul(&q), &CMatrix::identity(n), 1e-12));
            for i in 0..n {
                assert!(r[(i, i)].im == 0.0 && r[(i, i)].re >= 0.0);
                for j in 0..i {
                    assert!(r[(i, j)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn det_and_inverse() {
        let a = CMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        assert!((a.det() - C64::new(5.0, 0.0)).norm() < 1e-12);
        let inv = a.inverse().unwrap();
        assert!(close(&a.matmul(&inv), &CMatrix::identity(2), 1e-12));
        let z = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(z.inverse().is_none());
        let (l, floored) = CMatrix::diagonal(&[4.0, 0.0]).log2_abs_det_floored(1e-300);
        assert_eq!(floored, 1);
        assert!(l < -900.0);
    }

    #[test]
    fn eigenvalues_match_trace_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=6 {
            let g = CMatrix::gaussian(n, n, &mut rng);
            let h = g.adjoint().matmul(&g);
            let eig = h.hermitian_eigenvalues();
            assert_eq!(eig.len(), n);
            assert!(eig.windows(2).all(|w| w[0] >= w[1]));
            let tr: f64 = (0..n).map(|i| h[(i, i)].re).sum();
            assert!((eig.iter().sum::<f64>() - tr).abs() < 1e-9 * tr);
            let det = h.det().re;
            assert!((eig.iter().product::<f64>() - det).abs() < 1e-8 * det.abs().max(1.0));
        }
        let ones = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let eig = ones.adjoint().matmul(&ones).hermitian_eigenvalues();
        assert!((eig[0] - 4.0).abs() < 1e-12 && eig[1].abs() < 1e-12);
    }
}
