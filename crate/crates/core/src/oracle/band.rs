//! Symmetric banded eigensolver: Givens reduction to tridiagonal form with
//! bulge chasing, Sturm-sequence bisection for eigenvalues, and inverse
//! iteration on the banded matrix (LU with partial pivoting) for eigenvectors.

use crate::scalar::{lit, Real};

/// Symmetric matrix with half-bandwidth `kd`, lower band stored by diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBand<T> {
    n: usize,
    kd: usize,
    /// data[d * n + i] = A[i + d][i]
    data: Vec<T>,
}

impl<T: Real> SymmetricBand<T> {
    pub fn zeros(n: usize, kd: usize) -> Self {
        SymmetricBand { n, kd, data: vec![T::zero(); (kd + 1) * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.kd
    }

    pub fn get(&self, i: usize, k: usize) -> T {
        let (hi, lo) = if i >= k { (i, k) } else { (k, i) };
        let d = hi - lo;
        if d > self.kd {
            T::zero()
        } else {
            self.data[d * self.n + lo]
        }
    }

    /// Sets A[i][k] and A[k][i]. Panics outside the band.
    pub fn set(&mut self, i: usize, k: usize, v: T) {
        let (hi, lo) = if i >= k { (i, k) } else { (k, i) };
        let d = hi - lo;
        assert!(d <= self.kd, "entry ({i}, {k}) outside band {}", self.kd);
        self.data[d * self.n + lo] = v;
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| (0..self.n).map(|k| self.get(i, k)).collect()).collect()
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kd);
                let hi = (i + self.kd).min(self.n - 1);
                (lo..=hi).map(|k| self.get(i, k) * x[k]).sum()
            })
            .collect()
    }

    /// Max absolute row sum, an upper bound on the spectral radius.
    pub fn norm_inf(&self) -> T {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kd);
                let hi = (i + self.kd).min(self.n - 1);
                (lo..=hi).map(|k| self.get(i, k).abs()).sum::<T>()
            })
            .fold(T::zero(), T::max)
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T> {
    pub diag: Vec<T>,
    /// off[i] = T[i + 1][i]
    pub off: Vec<T>,
}

/// Working copy with one extra diagonal for the bulge.
struct Work<T> {
    n: usize,
    w: usize,
    data: Vec<T>,
}

impl<T: Real> Work<T> {
    fn get(&self, i: usize, k: usize) -> T {
        let (hi, lo) = if i >= k { (i, k) } else { (k, i) };
        let d = hi - lo;
        if d > self.w {
            T::zero()
        } else {
            self.data[d * self.n + lo]
        }
    }

    /// Rotates rows and columns (p, p+1) so that A[p+1][col] becomes zero.
    fn annihilate(&mut self, p: usize, col: usize) {
        let (n, w, q) = (self.n, self.w, p + 1);
        let ia = (p - col) * n + col;
        let ib = (q - col) * n + col;
        let (a, b) = (self.data[ia], self.data[ib]);
        if b == T::zero() {
            return;
        }
        let r = a.hypot(b);
        let (c, s) = (a / r, b / r);
        let data = &mut self.data;
        for k in q.saturating_sub(w)..p {
            let (ip, iq) = ((p - k) * n + k, (q - k) * n + k);
            let (x, y) = (data[ip], data[iq]);
            data[ip] = c * x + s * y;
            data[iq] = c * y - s * x;
        }
        for k in q + 1..=(p + w).min(n - 1) {
            let (ip, iq) = ((k - p) * n + p, (k - q) * n + q);
            let (x, y) = (data[ip], data[iq]);
            data[ip] = c * x + s * y;
            data[iq] = c * y - s * x;
        }
        let (ipp, iqq, ipq) = (p, q, n + p);
        let (app, aqq, apq) = (data[ipp], data[iqq], data[ipq]);
        let two = lit::<T>(2.0);
        data[ipp] = c * c * app + two * c * s * apq + s * s * aqq;
        data[iqq] = s * s * app - two * c * s * apq + c * c * aqq;
        data[ipq] = (c * c - s * s) * apq + c * s * (aqq - app);
        data[ia] = r;
        data[ib] = T::zero();
    }
}

/// Orthogonal reduction of a symmetric band matrix to tridiagonal form.
pub fn tridiagonalize<T: Real>(band: &SymmetricBand<T>) -> Tridiagonal<T> {
    let (n, kd) = (band.n, band.kd);
    let w = kd + 1;
    let mut work = Work { n, w, data: vec![T::zero(); (w + 1) * n] };
    for d in 0..=kd {
        for i in 0..n - d.min(n) {
            work.data[d * n + i] = band.data[d * n + i];
        }
    }
    if kd > 1 {
        for j in 0..n.saturating_sub(2) {
            for d in (2..=kd).rev() {
                let row = j + d;
                if row >= n {
                    continue;
                }
                work.annihilate(row - 1, j);
                // chase the bulge created at (row + kd, row − 1)
                let (mut bulge_row, mut bulge_col) = (row + kd, row - 1);
                while bulge_row < n {
                    work.annihilate(bulge_row - 1, bulge_col);
                    bulge_col = bulge_row - 1;
                    bulge_row += kd;
                }
            }
        }
    }
    Tridiagonal {
        diag: (0..n).map(|i| work.get(i, i)).collect(),
        off: (0..n.saturating_sub(1)).map(|i| work.get(i + 1, i)).collect(),
    }
}

impl<T: Real> Tridiagonal<T> {
    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = T::one();
        for i in 0..self.diag.len() {
            let off2 = if i == 0 { T::zero() } else { self.off[i - 1] * self.off[i - 1] };
            q = self.diag[i] - x - if i == 0 { T::zero() } else { off2 / q };
            if q == T::zero() {
                q = -tiny;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { T::zero() }
                + if i + 1 < n { self.off[i].abs() } else { T::zero() };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The k-th smallest eigenvalue (0-based) by bisection to full precision.
    pub fn eigenvalue(&self, k: usize) -> T {
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs());
        for _ in 0..400 {
            let mid = (lo + hi) / lit(2.0);
            if mid <= lo || mid >= hi || hi - lo <= lit::<T>(2.0) * T::epsilon() * scale.min(mid.abs().max(T::epsilon() * scale)) {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) / lit(2.0)
    }

    pub fn lowest(&self, count: usize) -> Vec<T> {
        (0..count.min(self.diag.len())).map(|k| self.eigenvalue(k)).collect()
    }
}

/// A − σI factored by banded LU with partial pivoting.
struct BandLu<T> {
    n: usize,
    kl: usize,
    width: usize,
    rows: Vec<T>,
    piv: Vec<usize>,
}

impl<T: Real> BandLu<T> {
    fn idx(&self, i: usize, c: usize) -> usize {
        i * self.width + (c + self.kl - i)
    }

    fn at(&self, i: usize, c: usize) -> T {
        self.rows[self.idx(i, c)]
    }

    fn factor(band: &SymmetricBand<T>, shift: T) -> Self {
        let (n, kd) = (band.n, band.kd);
        let (kl, ku) = (kd, kd);
        let width = 2 * kl + ku + 1;
        let mut lu = BandLu { n, kl, width, rows: vec![T::zero(); n * width], piv: vec![0; n] };
        for i in 0..n {
            let lo = i.saturating_sub(kd);
            let hi = (i + kd).min(n - 1);
            for c in lo..=hi {
                let v = band.get(i, c) - if c == i { shift } else { T::zero() };
                let k = lu.idx(i, c);
                lu.rows[k] = v;
            }
        }
        let floor = T::epsilon() * band.norm_inf().max(T::one());
        let mut ju = 0usize;
        for j in 0..n {
            let last = (j + kl).min(n - 1);
            let mut p = j;
            for i in j + 1..=last {
                if lu.at(i, j).abs() > lu.at(p, j).abs() {
                    p = i;
                }
            }
            lu.piv[j] = p;
            ju = ju.max((p + ku).min(n - 1));
            if p != j {
                for c in j..=ju {
                    let (a, b) = (lu.idx(j, c), lu.idx(p, c));
                    lu.rows.swap(a, b);
                }
            }
            let jj = lu.idx(j, j);
            if lu.rows[jj].abs() < floor {
                lu.rows[jj] = if lu.rows[jj] < T::zero() { -floor } else { floor };
            }
            let pivot = lu.rows[jj];
            for i in j + 1..=last {
                let ij = lu.idx(i, j);
                let l = lu.rows[ij] / pivot;
                lu.rows[ij] = l;
                if l != T::zero() {
                    for c in j + 1..=ju {
                        let (ic, jc) = (lu.idx(i, c), lu.idx(j, c));
                        lu.rows[ic] = lu.rows[ic] - l * lu.rows[jc];
                    }
                }
            }
        }
        lu
    }

    fn solve(&self, b: &mut [T]) {
        let n = self.n;
        for j in 0..n {
            b.swap(j, self.piv[j]);
            let last = (j + self.kl).min(n - 1);
            for i in j + 1..=last {
                b[i] -= self.at(i, j) * b[j];
            }
        }
        let reach = self.width - self.kl - 1;
        for j in (0..n).rev() {
            let hi = (j + reach).min(n - 1);
            let acc = (j + 1..=hi).fold(b[j], |acc, c| acc - self.at(j, c) * b[c]);
            b[j] = acc / self.at(j, j);
        }
    }
}

/// Unit eigenvector for a computed eigenvalue, sign fixed so the largest
/// component is positive.
pub fn eigenvector<T: Real>(band: &SymmetricBand<T>, eigenvalue: T) -> Vec<T> {
    let n = band.n;
    let lu = BandLu::factor(band, eigenvalue);
    // deterministic, non-symmetric start vector
    let mut x: Vec<T> = (0..n).map(|i| T::one() + lit::<T>(0.1) * T::from_usize_lossy(i % 7)).collect();
    for _ in 0..3 {
        lu.solve(&mut x);
        let norm = x.iter().map(|v| *v * *v).sum::<T>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    let big = x.iter().copied().fold(T::zero(), |acc, v| if v.abs() > acc.abs() { v } else { acc });
    if big < T::zero() {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    x
}

/// The `count` lowest eigenvalues, ascending.
pub fn lowest_eigenvalues<T: Real>(band: &SymmetricBand<T>, count: usize) -> Vec<T> {
    tridiagonalize(band).lowest(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_band(n: usize, kd: usize, seed: u64) -> SymmetricBand<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = SymmetricBand::zeros(n, kd);
        for i in 0..n {
            for d in 0..=kd.min(n - 1 - i) {
                b.set(i + d, i, rng.gen_range(-1.0..1.0));
            }
        }
        b
    }

    fn reference(b: &SymmetricBand<f64>) -> (Vec<f64>, DMatrix<f64>) {
        let n = b.dim();
        let dense = DMatrix::from_fn(n, n, |i, k| b.get(i, k));
        let eig = dense.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &c| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[c]).unwrap());
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);
        (values, vectors)
    }

    #[test]
    fn eigenvalues_match_dense_solver() {
        for (n, kd, seed) in [(40, 3, 1), (25, 1, 2), (31, 5, 3), (7, 3, 4), (2, 3, 5)] {
            let b = random_band(n, kd, seed);
            let (expect, _) = reference(&b);
            let got = lowest_eigenvalues(&b, n);
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).abs() < 1e-12, "n={n} kd={kd}: {g} vs {e}");
            }
        }
    }

    #[test]
    fn tridiagonalization_preserves_frobenius_norm() {
        let b = random_band(60, 3, 9);
        let t = tridiagonalize(&b);
        let fro_b: f64 = b.to_dense().iter().flatten().map(|v| v * v).sum();
        let fro_t: f64 = t.diag.iter().map(|v| v * v).sum::<f64>() + 2.0 * t.off.iter().map(|v| v * v).sum::<f64>();
        assert!((fro_b - fro_t).abs() < 1e-12 * fro_b);
    }

    #[test]
    fn eigenvectors_match_dense_solver() {
        let b = random_band(50, 3, 11);
        let (values, vectors) = reference(&b);
        for k in [0, 1, 2, 25, 49] {
            let v = eigenvector(&b, lowest_eigenvalues(&b, k + 1)[k]);
            let dot: f64 = (0..50).map(|i| v[i] * vectors[(i, k)]).sum();
            assert!((dot.abs() - 1.0).abs() < 1e-10, "k={k}: {dot}");
            let av = b.matvec(&v);
            let res = av.iter().zip(&v).map(|(a, x)| (a - values[k] * x).abs()).fold(0.0, f64::max);
            assert!(res < 1e-10);
        }
    }

    #[test]
    fn sturm_count_brackets_spectrum() {
        let b = random_band(30, 2, 5);
        let t = tridiagonalize(&b);
        let (lo, hi) = t.gershgorin();
        assert_eq!(t.sturm_count(lo - 1.0), 0);
        assert_eq!(t.sturm_count(hi + 1.0), 30);
    }

    #[test]
    fn laplacian_reference_spectrum() {
        // −u″ on (0, π) with second differences: eigenvalues (4/h²) sin²(kh/2)
        let n = 99;
        let h = std::f64::consts::PI / (n + 1) as f64;
        let mut b = SymmetricBand::zeros(n, 1);
        for i in 0..n {
            b.set(i, i, 2.0 / (h * h));
            if i + 1 < n {
                b.set(i + 1, i, -1.0 / (h * h));
            }
        }
        let got = lowest_eigenvalues(&b, 5);
        for (k, g) in got.iter().enumerate() {
            let e = 4.0 / (h * h) * ((k + 1) as f64 * h / 2.0).sin().powi(2);
            assert!((g - e).abs() < 1e-11 * e);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_bands_agree_with_dense(seed in 0u64..10_000, n in 4usize..30, kd in 1usize..5) {
            let b = random_band(n, kd, seed);
            let (expect, _) = reference(&b);
            let got = lowest_eigenvalues(&b, n);
            for (g, e) in got.iter().zip(&expect) {
                prop_assert!((g - e).abs() < 1e-11);
            }
        }
    }
}
