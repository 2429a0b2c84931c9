//! Dense matrices over an exact scalar, with the handful of algorithms the
//! rest of the crate needs: reduced row echelon form, kernels, subspace normal
//! forms and characteristic polynomials.

use crate::exact::Poly;
use crate::scalar::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        let nz: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                nz.iter().fold(S::zero(), |acc, &j| {
                    if row[j].is_zero() {
                        acc
                    } else {
                        acc + row[j].clone() * v[j].clone()
                    }
                })
            })
            .collect()
    }

    /// Characteristic polynomial det(xI - A) by Berkowitz's division-free
    /// algorithm; works over any commutative ring.
    pub fn charpoly_berkowitz(&self) -> Poly<S> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        // v holds coefficients from the leading one downwards.
        let mut v = vec![S::one()];
        for k in 0..n {
            let a = self.get(k, k).clone();
            let mut t = vec![S::one(), -a];
            let mut w: Vec<S> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rw = (0..k).fold(S::zero(), |acc, i| acc + self.get(k, i).clone() * w[i].clone());
                t.push(-rw);
                w = (0..k)
                    .map(|i| (0..k).fold(S::zero(), |acc, j| acc + self.get(i, j).clone() * w[j].clone()))
                    .collect();
            }
            let mut nv = vec![S::zero(); k + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                for j in 0..=i.min(k) {
                    *slot = slot.clone() + t[i - j].clone() * v[j].clone();
                }
            }
            v = nv;
        }
        v.reverse();
        Poly::new(v)
    }
}

impl<S: Field> Matrix<S> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j).clone();
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * pv;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column, equal to 1 there
    /// and 0 at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Poly<S> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for k in 0..n {
                    h.data.swap(i * n + k, m * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + i, k * n + m);
                }
            }
            let t = h.get(m, m - 1).inv();
            for j in m + 1..n {
                let u = h.get(j, m - 1).clone() * t.clone();
                if u.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let hm = h.get(m, k).clone();
                    if !hm.is_zero() {
                        let v = h.get(j, k).clone() - u.clone() * hm;
                        h.set(j, k, v);
                    }
                }
                for k in 0..n {
                    let hj = h.get(k, j).clone();
                    if !hj.is_zero() {
                        let v = h.get(k, m).clone() + u.clone() * hj;
                        h.set(k, m, v);
                    }
                }
            }
        }
        let x = Poly::new(vec![S::zero(), S::one()]);
        let mut p: Vec<Poly<S>> = vec![Poly::one()];
        for m in 1..=n {
            let mut pm = x.sub(&Poly::new(vec![h.get(m - 1, m - 1).clone()])).mul(&p[m - 1]);
            let mut t = S::one();
            for i in 1..m {
                t = t * h.get(m - i, m - i - 1).clone();
                let c = t.clone() * h.get(m - i - 1, m - 1).clone();
                if !c.is_zero() {
                    pm = pm.sub(&p[m - i - 1].scale(&c));
                }
            }
            p.push(pm);
        }
        p.pop().expect("nonempty")
    }

    pub fn is_nilpotent(&self) -> bool {
        let n = self.rows;
        let cp = self.charpoly();
        cp.coeffs().iter().take(n).all(|c| c.is_zero())
    }

    /// Evaluates `p(A) v` by Horner's rule on vectors.
    pub fn poly_apply(&self, p: &Poly<S>, v: &[S]) -> Vec<S> {
        let mut acc = vec![S::zero(); v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            if !c.is_zero() {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a = a.clone() + c.clone() * x.clone();
                }
            }
        }
        acc
    }

    /// Whether the minimal polynomial is squarefree (A diagonalisable over
    /// the algebraic closure): the squarefree part of the characteristic
    /// polynomial must annihilate every basis vector.
    pub fn has_squarefree_minpoly(&self) -> bool {
        let s = self.charpoly().squarefree_part();
        let n = self.rows;
        (0..n).all(|j| {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            self.poly_apply(&s, &e).iter().all(|x| x.is_zero())
        })
    }
}

/// Canonical basis (rows of the reduced row echelon form) of the span of the
/// given vectors. Two families span the same subspace iff these agree.
pub fn subspace_normal_form<S: Field>(vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn dot<S: Ring>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PuiseuxSeries;
    use crate::scalar::{rat_int, F61};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    #[test]
    fn kernel_and_rank() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x == &rat_int(0)));
    }

    #[test]
    fn charpoly_methods_agree() {
        let m = qm(&[&[2, 1, 0, 3], &[0, -1, 4, 1], &[5, 0, 0, 2], &[1, 1, 1, 1]]);
        assert_eq!(m.charpoly(), m.charpoly_berkowitz());
        // Cayley-Hamilton
        let cp = m.charpoly();
        for j in 0..4 {
            let mut e = vec![rat_int(0); 4];
            e[j] = rat_int(1);
            assert!(m.poly_apply(&cp, &e).iter().all(|x| x == &rat_int(0)));
        }
        let mp = m.map(|x| F61::from_rational(x).unwrap());
        let cpp = mp.charpoly();
        for (a, b) in cp.coeffs().iter().zip(cpp.coeffs()) {
            assert_eq!(F61::from_rational(a).unwrap(), *b);
        }
    }

    #[test]
    fn nilpotent_and_semisimple() {
        let n = qm(&[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]);
        assert!(n.is_nilpotent());
        assert!(!n.has_squarefree_minpoly());
        let d = qm(&[&[1, 1], &[0, 2]]);
        assert!(d.has_squarefree_minpoly());
        let j = qm(&[&[2, 1], &[0, 2]]);
        assert!(!j.has_squarefree_minpoly());
    }

    #[test]
    fn berkowitz_over_series() {
        type S = PuiseuxSeries<BigRational>;
        // [[0, t^-1], [1, 0]] has charpoly x^2 - t^-1
        let m = Matrix::from_rows(vec![
            vec![S::zero(), S::new(1, [(-1, rat_int(1))])],
            vec![S::one(), S::zero()],
        ]);
        let cp = m.charpoly_berkowitz();
        assert_eq!(cp.coeff(0), S::new(1, [(-1, rat_int(-1))]));
        assert_eq!(cp.coeff(1), S::zero());
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        let b = vec![vec![rat_int(3), rat_int(6)]];
        assert_eq!(subspace_normal_form(&a), subspace_normal_form(&b));
    }
}
