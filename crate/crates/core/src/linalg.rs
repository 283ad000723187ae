//! Exact integer and rational linear algebra: Smith normal form with
//! transforms, integer linear solving, kernels, and lattice arithmetic.
//!
//! Matrices are small (rank ≤ 8 root data, doubled for product tori), so
//! everything is dense `i64` / `Ratio<i64>` with no attention to asymptotics.

use num::rational::Ratio;
use num::{One, Zero};

pub type Rat = Ratio<i64>;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<i64>,
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.a[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> IMat {
        IMat { rows, cols, a: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    pub fn from_rows(rows: &[Vec<i64>]) -> IMat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>]) -> IMat {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = IMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.cols + j] = v;
    }
    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row(&self, i: usize) -> Vec<i64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }
    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut m = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.get(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    m.set(i, j, m.get(i, j) + v * other.get(k, j));
                }
            }
        }
        m
    }
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
    pub fn mul_qvec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rat::from_integer(self.get(i, j)) * v[j])
                    .sum()
            })
            .collect()
    }
    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(other.a.iter()) {
            *x += *y;
        }
        m
    }
    pub fn neg(&self) -> IMat {
        let mut m = self.clone();
        for x in m.a.iter_mut() {
            *x = -*x;
        }
        m
    }
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }
    pub fn to_qmat(&self) -> QMat {
        let mut m = QMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, Rat::from_integer(self.get(i, j)));
            }
        }
        m
    }
    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        let mut m = IMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }
    /// Block diagonal sum.
    pub fn block_diag(&self, other: &IMat) -> IMat {
        let mut m = IMat::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Rat>,
}

impl std::fmt::Debug for QMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> QMat {
        QMat { rows, cols, a: vec![Rat::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }
    pub fn from_cols(cols: &[Vec<Rat>]) -> QMat {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = QMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.a[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.cols + j] = v;
    }
    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut m = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.get(i, k);
                if v.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    m.set(i, j, m.get(i, j) + v * other.get(k, j));
                }
            }
        }
        m
    }
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
    /// Inverse by Gauss–Jordan elimination; None when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&i| !m.get(i, col).is_zero())?;
            if piv != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(piv, j));
                    m.set(col, j, b);
                    m.set(piv, j, a);
                    let (a, b) = (inv.get(col, j), inv.get(piv, j));
                    inv.set(col, j, b);
                    inv.set(piv, j, a);
                }
            }
            let p = m.get(col, col);
            for j in 0..n {
                m.set(col, j, m.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = m.get(i, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = m.get(i, j) - f * m.get(col, j);
                    m.set(i, j, v);
                    let v = inv.get(i, j) - f * inv.get(col, j);
                    inv.set(i, j, v);
                }
            }
        }
        Some(inv)
    }
    /// One solution x of self·x = b over ℚ, or None if inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let (r, c) = (self.rows, self.cols);
        let mut m = QMat::zero(r, c + 1);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, self.get(i, j));
            }
            m.set(i, c, b[i]);
        }
        // Row reduce.
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..c {
            let Some(p) = (row..r).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..=c {
                    let (a, b2) = (m.get(row, j), m.get(p, j));
                    m.set(row, j, b2);
                    m.set(p, j, a);
                }
            }
            let pv = m.get(row, col);
            for j in 0..=c {
                m.set(row, j, m.get(row, j) / pv);
            }
            for i in 0..r {
                if i == row {
                    continue;
                }
                let f = m.get(i, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..=c {
                    let v = m.get(i, j) - f * m.get(row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == r {
                break;
            }
        }
        // Inconsistent if a zero row has nonzero rhs.
        for i in row..r {
            if !m.get(i, c).is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); c];
        for &(pr, pc) in &pivots {
            x[pc] = m.get(pr, c);
        }
        Some(x)
    }
    /// Basis of the rational kernel {x : self·x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, c) = (self.rows, self.cols);
        let mut m = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..c {
            let Some(p) = (row..r).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..c {
                    let (a, b) = (m.get(row, j), m.get(p, j));
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let pv = m.get(row, col);
            for j in 0..c {
                m.set(row, j, m.get(row, j) / pv);
            }
            for i in 0..r {
                if i == row {
                    continue;
                }
                let f = m.get(i, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..c {
                    let v = m.get(i, j) - f * m.get(row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == r {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..c {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); c];
            v[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, free);
            }
            basis.push(v);
        }
        basis
    }
}

/// Smith normal form: returns (p, d, q) with p·a·q = d, p and q unimodular,
/// d diagonal with d[i,i] | d[i+1,i+1].
pub fn smith(a: &IMat) -> (IMat, IMat, IMat) {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = IMat::identity(r);
    let mut q = IMat::identity(c);

    let swap_rows = |m: &mut IMat, i: usize, j: usize| {
        for k in 0..m.cols {
            let (x, y) = (m.get(i, k), m.get(j, k));
            m.set(i, k, y);
            m.set(j, k, x);
        }
    };
    let swap_cols = |m: &mut IMat, i: usize, j: usize| {
        for k in 0..m.rows {
            let (x, y) = (m.get(k, i), m.get(k, j));
            m.set(k, i, y);
            m.set(k, j, x);
        }
    };
    // row_i -= f * row_j ; col_i -= f * col_j
    let addmul_row = |m: &mut IMat, i: usize, j: usize, f: i64| {
        for k in 0..m.cols {
            let v = m.get(i, k) - f * m.get(j, k);
            m.set(i, k, v);
        }
    };
    let addmul_col = |m: &mut IMat, i: usize, j: usize, f: i64| {
        for k in 0..m.rows {
            let v = m.get(k, i) - f * m.get(k, j);
            m.set(k, i, v);
        }
    };

    let n = r.min(c);
    for t in 0..n {
        loop {
            // Find the minimal-absolute-value nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let v = d.get(i, j).abs();
                    if v != 0 && best.map_or(true, |(bi, bj)| v < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                swap_rows(&mut d, t, bi);
                swap_rows(&mut p, t, bi);
            }
            if bj != t {
                swap_cols(&mut d, t, bj);
                swap_cols(&mut q, t, bj);
            }
            // Eliminate along row and column t.
            let mut clean = true;
            for i in t + 1..r {
                let f = d.get(i, t).div_euclid(d.get(t, t));
                if f != 0 {
                    addmul_row(&mut d, i, t, f);
                    addmul_row(&mut p, i, t, f);
                }
                if d.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let f = d.get(t, j).div_euclid(d.get(t, t));
                if f != 0 {
                    addmul_col(&mut d, j, t, f);
                    addmul_col(&mut q, j, t, f);
                }
                if d.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by d[t,t].
            let pv = d.get(t, t);
            let mut fixed = true;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if d.get(i, j) % pv != 0 {
                        // Add row i to row t to pull the bad entry in range.
                        addmul_row(&mut d, t, i, -1);
                        addmul_row(&mut p, t, i, -1);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.get(t, t) < 0 {
            for k in 0..c {
                d.set(t, k, -d.get(t, k));
            }
            for k in 0..p.cols {
                p.set(t, k, -p.get(t, k));
            }
        }
    }
    (p, d, q)
}

/// One integer solution x of a·x = b, or None.
pub fn solve_int(a: &IMat, b: &[i64]) -> Option<Vec<i64>> {
    let (p, d, q) = smith(a);
    let pb = p.mul_vec(b);
    let n = a.cols;
    let mut y = vec![0i64; n];
    for i in 0..a.rows {
        let di = if i < n { d.get(i, i) } else { 0 };
        if i < n && di != 0 {
            if pb[i] % di != 0 {
                return None;
            }
            y[i] = pb[i] / di;
        } else if pb[i] != 0 {
            return None;
        }
    }
    Some(q.mul_vec(&y))
}

/// Basis (columns) of the integer kernel of a; the basis is saturated.
pub fn int_kernel(a: &IMat) -> Vec<Vec<i64>> {
    let (_, d, q) = smith(a);
    let n = a.cols;
    let mut basis = Vec::new();
    for j in 0..n {
        let dj = if j < a.rows.min(n) { d.get(j, j) } else { 0 };
        if dj == 0 {
            basis.push(q.col(j));
        }
    }
    basis
}

fn lcm64(a: i64, b: i64) -> i64 {
    num::integer::lcm(a, b)
}

/// Common denominator of a rational vector.
pub fn common_denom(v: &[Rat]) -> i64 {
    v.iter().fold(1i64, |acc, x| lcm64(acc, *x.denom()))
}

/// Scale a rational vector to integers by the factor `scale` (must clear denominators).
pub fn scale_to_int(v: &[Rat], scale: i64) -> Vec<i64> {
    v.iter()
        .map(|x| {
            let y = *x * Rat::from_integer(scale);
            assert!(y.denom() == &1, "scale does not clear denominators");
            *y.numer()
        })
        .collect()
}

pub fn qvec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

pub fn qvec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn qvec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn qvec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -*x).collect()
}

pub fn qvec_scale(a: &[Rat], s: Rat) -> Vec<Rat> {
    a.iter().map(|x| *x * s).collect()
}

pub fn qdot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub fn idot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_iq(a: &[i64], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(*x) * *y)
        .sum()
}

pub fn is_int_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom() == &1)
}

/// Reduce r into [0, 1).
pub fn frac_mod1(r: Rat) -> Rat {
    let f = r.floor();
    r - f
}

pub fn qvec_mod1(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|&x| frac_mod1(x)).collect()
}

/// A rational lattice: the ℤ-span of the columns of `basis` in ℚⁿ.
/// Columns may be linearly dependent; membership is an integer solve.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub dim: usize,
    pub cols: Vec<Vec<Rat>>,
}

impl Lattice {
    pub fn from_qcols(dim: usize, cols: Vec<Vec<Rat>>) -> Lattice {
        for c in &cols {
            assert_eq!(c.len(), dim);
        }
        Lattice { dim, cols }
    }
    pub fn from_icols(dim: usize, cols: &[Vec<i64>]) -> Lattice {
        Lattice::from_qcols(dim, cols.iter().map(|c| qvec(c)).collect())
    }
    pub fn standard(dim: usize) -> Lattice {
        Lattice::from_qcols(
            dim,
            (0..dim)
                .map(|i| {
                    let mut v = vec![Rat::zero(); dim];
                    v[i] = Rat::one();
                    v
                })
                .collect(),
        )
    }
    /// Is v an integer combination of the columns?
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        if self.cols.is_empty() {
            return v.iter().all(|x| x.is_zero());
        }
        // Clear denominators jointly, then solve over ℤ.
        let mut denom = common_denom(v);
        for c in &self.cols {
            denom = lcm64(denom, common_denom(c));
        }
        let a = IMat::from_cols(
            &self
                .cols
                .iter()
                .map(|c| scale_to_int(c, denom))
                .collect::<Vec<_>>(),
        );
        let b = scale_to_int(v, denom);
        solve_int(&a, &b).is_some()
    }
    /// Union lattice spanned by both column sets.
    pub fn join(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Lattice { dim: self.dim, cols }
    }
    /// Integral column-HNF style reduction data: returns (denom, hnf columns)
    /// where the lattice equals (1/denom)·(ℤ-span of hnf columns).
    fn integral_model(&self) -> (i64, Vec<Vec<i64>>) {
        let mut denom = 1i64;
        for c in &self.cols {
            denom = lcm64(denom, common_denom(c));
        }
        let cols: Vec<Vec<i64>> = self.cols.iter().map(|c| scale_to_int(c, denom)).collect();
        (denom, cols)
    }
    /// Canonical representative of v modulo this lattice. Two vectors are
    /// congruent mod the lattice iff their canonical representatives agree.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim);
        if self.cols.is_empty() {
            return v.to_vec();
        }
        let (denom, icols) = self.integral_model();
        // We reduce denom·v modulo the integer lattice spanned by icols, allowing
        // a further rational offset: write denom·v = w. Decompose w = w_lat + w_rem
        // canonically using the column HNF of icols.
        let h = col_hnf(&IMat::from_cols(&icols));
        // h: lower-triangular-ish column HNF with pivot rows. Reduce w against it
        // greedily top-down on pivot rows; the remainder is canonical.
        let mut w: Vec<Rat> = v
            .iter()
            .map(|x| *x * Rat::from_integer(denom))
            .collect();
        for col in &h {
            let pivot_row = col.iter().position(|&x| x != 0).unwrap();
            let p = col[pivot_row];
            // Subtract floor(w[pivot_row]/p) times the column.
            let f = (w[pivot_row] / Rat::from_integer(p)).floor();
            if !f.is_zero() {
                for (i, &ci) in col.iter().enumerate() {
                    w[i] -= f * Rat::from_integer(ci);
                }
            }
        }
        w.iter()
            .map(|x| *x / Rat::from_integer(denom))
            .collect()
    }
}

/// Saturation of a lattice: (ℚ-span ∩ ℤⁿ) as a lattice. Depends only on the
/// span, not the scaling of the generators.
pub fn saturate(l: &Lattice) -> Lattice {
    let n = l.dim;
    if l.cols.is_empty() {
        return Lattice::from_qcols(n, Vec::new());
    }
    let mut denom = 1i64;
    for c in &l.cols {
        denom = lcm64(denom, common_denom(c));
    }
    let icols: Vec<Vec<i64>> = l.cols.iter().map(|c| scale_to_int(c, denom)).collect();
    let a = IMat::from_cols(&icols);
    // Annihilator rows of the column span, then their common kernel.
    let ann = int_kernel(&a.transpose());
    if ann.is_empty() {
        return Lattice::standard(n);
    }
    let sat_basis = int_kernel(&IMat::from_rows(&ann));
    Lattice::from_icols(n, &sat_basis)
}

/// Column Hermite normal form of an integer matrix: returns the list of
/// nonzero columns, each with a positive pivot (first nonzero entry), pivots
/// on strictly increasing rows, and entries to the right of... (columns
/// sorted by pivot row; entries above each pivot reduced into [0, pivot)).
pub fn col_hnf(a: &IMat) -> Vec<Vec<i64>> {
    let mut cols: Vec<Vec<i64>> = (0..a.cols).map(|j| a.col(j)).collect();
    let rows = a.rows;
    let mut used = 0usize; // columns already fixed
    for r in 0..rows {
        // Find columns with first nonzero entry at row r (after elimination above).
        loop {
            let mut idx: Option<usize> = None;
            for (k, c) in cols.iter().enumerate().skip(used) {
                if c[..r].iter().all(|&x| x == 0) && c[r] != 0 {
                    if idx.map_or(true, |b| c[r].abs() < cols[b][r].abs()) {
                        idx = Some(k);
                    }
                }
            }
            let Some(k) = idx else { break };
            cols.swap(used, k);
            if cols[used][r] < 0 {
                for x in cols[used].iter_mut() {
                    *x = -*x;
                }
            }
            let p = cols[used][r];
            let mut done = true;
            for k in used + 1..cols.len() {
                if cols[k][..r].iter().all(|&x| x == 0) && cols[k][r] != 0 {
                    let f = cols[k][r].div_euclid(p);
                    for i in 0..rows {
                        cols[k][i] -= f * cols[used][i];
                    }
                    if cols[k][r] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                used += 1;
                break;
            }
        }
    }
    // Collect nonzero columns (they now have distinct pivot rows) and reduce
    // entries above later pivots using earlier... reduce upper entries:
    let mut nz: Vec<Vec<i64>> = cols.into_iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
    nz.sort_by_key(|c| c.iter().position(|&x| x != 0).unwrap());
    // Make entries of earlier pivot rows reduced in later columns.
    for i in 0..nz.len() {
        let pivot_row = nz[i].iter().position(|&x| x != 0).unwrap();
        let p = nz[i][pivot_row];
        for j in 0..nz.len() {
            if i == j {
                continue;
            }
            let v = nz[j][pivot_row];
            let f = v.div_euclid(p);
            if f != 0 {
                for r in 0..rows {
                    nz[j][r] -= f * nz[i][r];
                }
            }
        }
    }
    nz.sort_by_key(|c| c.iter().position(|&x| x != 0).unwrap());
    nz
}

/// Presentation of a finite abelian quotient L/S where L = ℤ-span of
/// `ambient` columns and S = ℤ-span of `sub` columns (S ⊆ L required).
/// Returns invariant factor orders > 1 together with generator
/// representatives in the ambient coordinates of the vectors.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    /// Invariant factors > 1, in divisibility order.
    pub orders: Vec<i64>,
    /// A representative vector (in ambient space coordinates) for each cyclic factor.
    pub gens: Vec<Vec<Rat>>,
    /// Coordinates of a vector in the quotient: for internal use via closure data.
    kcols: Vec<Vec<Rat>>, // columns of L-basis
    p: IMat,              // SNF transform on L-coordinates
    diag: Vec<i64>,       // full diagonal of SNF (length = rank of L)
}

impl FiniteQuotient {
    /// orders of each SNF diagonal position (1 allowed).
    pub fn order(&self) -> i64 {
        self.orders.iter().product()
    }
    /// Coordinates of v (must lie in L) in the cyclic decomposition;
    /// entries reduced mod the respective invariant factor. None if v ∉ L
    /// or v has infinite order in the quotient (free direction).
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<i64>> {
        if self.kcols.is_empty() {
            return if v.iter().all(|x| x.is_zero()) {
                Some(Vec::new())
            } else {
                None
            };
        }
        // Solve L·x = v over ℤ.
        let dim = v.len();
        let mut denom = common_denom(v);
        for c in &self.kcols {
            denom = lcm64(denom, common_denom(c));
        }
        let a = IMat::from_cols(
            &self
                .kcols
                .iter()
                .map(|c| scale_to_int(c, denom))
                .collect::<Vec<_>>(),
        );
        let b = scale_to_int(v, denom);
        let x = solve_int(&a, &b)?;
        debug_assert_eq!(x.len(), self.kcols.len());
        let y = self.p.mul_vec(&x);
        let mut out = Vec::new();
        for (i, &d) in self.diag.iter().enumerate() {
            if d == 0 {
                // Free direction: must be zero for finite coordinates.
                if y[i] != 0 {
                    return None;
                }
            } else if d > 1 {
                out.push(y[i].rem_euclid(d));
            }
        }
        let _ = dim;
        Some(out)
    }
}

/// Compute the quotient L/S. Panics if S ⊄ L (caller guarantees inclusion).
pub fn finite_quotient(ambient: &Lattice, sub: &Lattice) -> FiniteQuotient {
    assert_eq!(ambient.dim, sub.dim);
    // Get an independent basis of L: column HNF of ambient generators.
    let (denom, icols) = {
        let mut denom = 1i64;
        for c in &ambient.cols {
            denom = lcm64(denom, common_denom(c));
        }
        (
            denom,
            ambient
                .cols
                .iter()
                .map(|c| scale_to_int(c, denom))
                .collect::<Vec<_>>(),
        )
    };
    if icols.is_empty() || icols.iter().all(|c| c.iter().all(|&x| x == 0)) {
        // Trivial ambient lattice: the quotient is trivial.
        for s in &sub.cols {
            assert!(s.iter().all(|x| x.is_zero()), "subgroup outside trivial lattice");
        }
        return FiniteQuotient {
            orders: Vec::new(),
            gens: Vec::new(),
            kcols: Vec::new(),
            p: IMat::identity(0),
            diag: Vec::new(),
        };
    }
    let h = col_hnf(&IMat::from_cols(&icols));
    let kcols: Vec<Vec<Rat>> = h
        .iter()
        .map(|c| {
            c.iter()
                .map(|&x| Rat::new(x, denom))
                .collect::<Vec<Rat>>()
        })
        .collect();
    let k = kcols.len();
    // Express sub generators in L-coordinates (must be integral).
    let lmat = QMat::from_cols(&kcols);
    let mut rel_cols: Vec<Vec<i64>> = Vec::new();
    for s in &sub.cols {
        let x = lmat
            .solve(s)
            .unwrap_or_else(|| panic!("subgroup generator outside ambient lattice span"));
        assert!(is_int_vec(&x), "subgroup generator not in ambient lattice");
        rel_cols.push(x.iter().map(|r| *r.numer()).collect());
    }
    let rel = if rel_cols.is_empty() {
        IMat::zero(k, 0)
    } else {
        IMat::from_cols(&rel_cols)
    };
    let (p, d, _q) = smith(&rel);
    let mut diag = vec![0i64; k];
    for i in 0..k.min(rel.cols) {
        diag[i] = d.get(i, i);
    }
    // Quotient coordinates: y = P x; factor i has order diag[i] (0 = infinite).
    let pinv = p
        .to_qmat()
        .inverse()
        .expect("SNF transform is unimodular");
    let mut orders = Vec::new();
    let mut gens = Vec::new();
    for (i, &di) in diag.iter().enumerate() {
        if di == 1 {
            continue;
        }
        if di > 1 {
            orders.push(di);
            // Generator: L · P⁻¹ e_i
            let e = pinv.col(i);
            gens.push(lmat.mul_vec(&e));
        }
        // di == 0: free direction, not listed among finite orders.
    }
    FiniteQuotient { orders, gens, kcols, p, diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_reproduces_matrix() {
        let a = IMat::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let (p, d, q) = smith(&a);
        assert_eq!(p.mul(&a).mul(&q), d);
        let diag: Vec<i64> = (0..4).map(|i| d.get(i, i)).collect();
        assert_eq!(diag, vec![1, 3, 21, 0]);
    }

    #[test]
    fn smith_divisibility() {
        let a = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (p, d, q) = smith(&a);
        assert_eq!(p.mul(&a).mul(&q), d);
        for i in 0..2 {
            if d.get(i + 1, i + 1) != 0 {
                assert_eq!(d.get(i + 1, i + 1) % d.get(i, i), 0);
            }
        }
    }

    #[test]
    fn solve_int_works() {
        let a = IMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_int(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_int(&a, &[1, 0]), None);
        let a = IMat::from_rows(&[vec![1, 1]]);
        let x = solve_int(&a, &[5]).unwrap();
        assert_eq!(x[0] + x[1], 5);
    }

    #[test]
    fn int_kernel_saturated() {
        let a = IMat::from_rows(&[vec![1, 1]]);
        let k = int_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] + k[0][1], 0);
        assert_eq!(k[0][0].abs(), 1);
        let a = IMat::from_rows(&[vec![2, 4]]);
        let k = int_kernel(&a);
        assert_eq!(k.len(), 1);
        // Saturated: (2, -1), not (4, -2).
        assert_eq!(k[0][0].abs(), 2);
    }

    #[test]
    fn qmat_inverse_and_solve() {
        let m = IMat::from_rows(&[vec![2, 1], vec![1, 1]]).to_qmat();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
        let x = m.solve(&qvec(&[3, 2])).unwrap();
        assert_eq!(x, qvec(&[1, 1]));
        let sing = IMat::from_rows(&[vec![1, 2], vec![2, 4]]).to_qmat();
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&qvec(&[1, 0])).is_none());
    }

    #[test]
    fn lattice_membership_and_reduce() {
        // Lattice 2ℤ × 3ℤ.
        let l = Lattice::from_icols(2, &[vec![2, 0], vec![0, 3]]);
        assert!(l.contains(&qvec(&[4, -3])));
        assert!(!l.contains(&qvec(&[1, 0])));
        let r1 = l.reduce(&qvec(&[5, 7]));
        let r2 = l.reduce(&qvec(&[1, 1]));
        assert_eq!(r1, r2);
        let r3 = l.reduce(&qvec(&[0, 1]));
        assert_ne!(r1, r3);
        // Half-integer lattice.
        let l = Lattice::from_qcols(1, vec![vec![Rat::new(1, 2)]]);
        assert!(l.contains(&[Rat::new(3, 2)]));
        assert!(!l.contains(&[Rat::new(1, 3)]));
    }

    #[test]
    fn finite_quotient_z_mod() {
        // ℤ² / span{(2,0),(0,3)} ≅ ℤ/6 (invariant factors 1·6 or 2,3 → combined order 6).
        let ambient = Lattice::standard(2);
        let sub = Lattice::from_icols(2, &[vec![2, 0], vec![0, 3]]);
        let q = finite_quotient(&ambient, &sub);
        assert_eq!(q.order(), 6);
        // ℤ²/(2ℤ)² = (ℤ/2)².
        let sub = Lattice::from_icols(2, &[vec![2, 0], vec![0, 2]]);
        let q = finite_quotient(&ambient, &sub);
        assert_eq!(q.orders, vec![2, 2]);
        let c = q.coords(&qvec(&[1, 1])).unwrap();
        assert_eq!(c, vec![1, 1]);
        let c0 = q.coords(&qvec(&[2, 0])).unwrap();
        assert_eq!(c0, vec![0, 0]);
    }

    #[test]
    fn finite_quotient_with_free_part() {
        // ℤ² / span{(2,0)}: has a free direction; torsion part ℤ/2.
        let ambient = Lattice::standard(2);
        let sub = Lattice::from_icols(2, &[vec![2, 0]]);
        let q = finite_quotient(&ambient, &sub);
        assert_eq!(q.orders, vec![2]);
        assert!(q.coords(&qvec(&[0, 1])).is_none()); // infinite order
        assert_eq!(q.coords(&qvec(&[1, 0])).unwrap(), vec![1]);
    }

    #[test]
    fn hnf_canonical() {
        let a = IMat::from_cols(&[vec![2, 0], vec![1, 1], vec![3, 1]]);
        let h = col_hnf(&a);
        // Lattice is all of ℤ² here: (1,1),(2,0) → det 2? (2,0),(1,1): det = 2.
        // Columns (2,0),(1,1),(3,1): (3,1)-(1,1)=(2,0); span{(2,0),(1,1)} has index 2.
        assert_eq!(h.len(), 2);
        let l1 = Lattice::from_icols(2, &[a.col(0), a.col(1), a.col(2)]);
        let l2 = Lattice::from_icols(2, &h);
        for v in [[0, 1], [1, 0], [1, 1], [2, 0], [5, -3]] {
            let v = qvec(&v);
            assert_eq!(l1.contains(&v), l2.contains(&v));
        }
    }
}
