use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, Poly};

use super::Subspace;

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Elem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        Matrix::from_rows(field.clone(), rows).expect("rectangular")
    }

    /// Matrix whose columns are the given vectors (each of length `n`).
    pub fn from_columns(field: &Field, n: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `-c_0..-c_{n-1}` in the last column.
    pub fn companion(p: &Poly) -> Result<Matrix> {
        if !p.is_monic() || p.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        let f = p.field();
        let n = p.degree().unwrap();
        let mut m = Matrix::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, f.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(&p.coeff(i)));
        }
        Ok(m)
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.field, b.field);
        let mut m = Matrix::zeros(&a.field, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.field.is_zero(self.get(i, j))))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.field.is_zero(self.get(i, j))))
    }

    pub fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix { data: self.data.iter().map(f).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        self.map(|x| self.field.mul(x, c))
    }

    /// `self + c*I`.
    pub fn shifted(&self, c: &Elem) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, self.field.add(self.get(i, i), c));
        }
        m
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.mul_add(&acc, a, b)
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Matrix {
        (0..e).fold(Matrix::identity(&self.field, self.rows), |acc, _| &acc * self)
    }

    /// `AB - BA`.
    pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
        &(a * b) - &(b * a)
    }

    /// Re-expresses the matrix over a field containing this one.
    pub fn embed(&self, to: &Field) -> Result<Matrix> {
        if *to == self.field {
            return Ok(self.clone());
        }
        let data = self.data.iter().map(|x| to.embed(&self.field, x)).collect::<Result<_>>()?;
        Ok(Matrix { field: to.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let pj = m.get(r, j);
                    if f.is_zero(pj) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, pj));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `rank == cols`. Over `Q` a full-rank reduction modulo a prime settles
    /// it without rational elimination.
    pub fn has_full_column_rank(&self) -> bool {
        if self.field.is_rational() {
            for p in [10007u64, 10009] {
                let fp = Field::prime(p).expect("prime");
                let rows = self.to_rows().iter().map(|row| integral_row(&fp, row)).collect();
                let reduced = Matrix::from_rows(fp, rows).expect("rectangular");
                if reduced.rank() == self.cols {
                    return true;
                }
            }
        }
        self.rank() == self.cols
    }

    /// Right null space `{v : Mv = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, &vectors)
    }

    pub fn det(&self) -> Result<Elem> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let (r, pivots) = self.hstack(&Matrix::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    /// `det(xI - M)` by Berkowitz's division-free recurrence, safe in every
    /// characteristic.
    pub fn charpoly(&self) -> Result<Poly> {
        let n = self.require_square()?;
        let f = &self.field;
        if f.is_rational() {
            return Ok(self.charpoly_rational(n));
        }
        // descending coefficients of the charpoly of the leading r x r block
        let mut c = vec![f.one()];
        for r in 0..n {
            let a = self.get(r, r);
            let row: Vec<Elem> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut col: Vec<Elem> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let lead: Vec<usize> = (0..r).collect();
            let m = self.submatrix(&lead, &lead);
            // t = [1, -a, -R S, -R M S, ..., -R M^{r-1} S]
            let mut t = vec![f.one(), f.neg(a)];
            for _ in 0..r {
                let rs = row.iter().zip(&col).fold(f.zero(), |acc, (x, y)| f.mul_add(&acc, x, y));
                t.push(f.neg(&rs));
                col = m.mul_vec(&col);
            }
            let next: Vec<Elem> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(f.zero(), |acc, j| f.mul_add(&acc, &t[i - j], &c[j]))
                })
                .collect();
            c = next;
        }
        c.reverse();
        Ok(Poly::new(f.clone(), c))
    }

    /// Berkowitz over `Z` for `D M` with `D` the common denominator, then
    /// `chi_M(x) = D^{-n} chi_{DM}(D x)`; integer arithmetic avoids a gcd per
    /// operation.
    fn charpoly_rational(&self, n: usize) -> Poly {
        let mut den = BigInt::one();
        for x in &self.data {
            if let Elem::Rat(r) = x {
                den = den.lcm(r.denom());
            }
        }
        let z: Vec<BigInt> = self
            .data
            .iter()
            .map(|x| match x {
                Elem::Rat(r) => r.numer() * (&den / r.denom()),
                _ => unreachable!("rational entry"),
            })
            .collect();
        let at = |i: usize, j: usize| &z[i * n + j];
        let mut c = vec![BigInt::one()];
        for r in 0..n {
            let mut col: Vec<BigInt> = (0..r).map(|i| at(i, r).clone()).collect();
            let mut t = vec![BigInt::one(), -at(r, r)];
            for _ in 0..r {
                let rs: BigInt = (0..r).map(|j| at(r, j) * &col[j]).sum();
                t.push(-rs);
                col = (0..r).map(|i| (0..r).map(|j| at(i, j) * &col[j]).sum()).collect();
            }
            c = (0..r + 2)
                .map(|i| (0..=i.min(r)).map(|j| &t[i - j] * &c[j]).sum())
                .collect();
        }
        // c holds descending coefficients of chi_{DM}; coefficient of x^k
        // in chi_M is c[n-k] / D^(n-k)
        let f = &self.field;
        let mut scale = BigInt::one();
        let mut coeffs = Vec::with_capacity(n + 1);
        for ci in &c {
            coeffs.push(Elem::Rat(num_rational::BigRational::new(ci.clone(), scale.clone())));
            scale *= &den;
        }
        coeffs.reverse();
        Poly::new(f.clone(), coeffs)
    }

    /// Minimal polynomial as the lcm of the local minimal polynomials of the
    /// standard basis vectors (Krylov dependence).
    pub fn minpoly(&self) -> Result<Poly> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut result = Poly::one(f);
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            result = result.lcm(&self.local_minpoly(&e));
        }
        Ok(result)
    }

    /// Least-degree monic `p` with `p(M) v = 0`.
    pub fn local_minpoly(&self, v: &[Elem]) -> Poly {
        let f = &self.field;
        let x = Poly::x(f);
        let mut basis: Vec<(Vec<Elem>, usize, Poly)> = Vec::new();
        let mut cur = v.to_vec();
        let mut cur_poly = Poly::one(f);
        loop {
            let mut w = cur.clone();
            let mut p = cur_poly.clone();
            for (b, piv, bp) in &basis {
                let c = w[*piv].clone();
                if f.is_zero(&c) {
                    continue;
                }
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = f.sub(wi, &f.mul(&c, bi));
                }
                p = &p - &bp.scale(&c);
            }
            let Some(piv) = w.iter().position(|x| !f.is_zero(x)) else {
                return p.monic();
            };
            let inv = f.inv(&w[piv]).expect("nonzero");
            let w: Vec<Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
            basis.push((w, piv, p.scale(&inv)));
            cur = self.mul_vec(&cur);
            cur_poly = &cur_poly * &x;
        }
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Result<Matrix> {
        let n = self.require_square()?;
        let f = &self.field;
        let p = p.embed(f)?;
        let mut acc = Matrix::zeros(f, n, n);
        for c in p.coeffs().iter().rev() {
            acc = (&acc * self).shifted(c);
        }
        Ok(acc)
    }

    /// Matrix of `X -> U X - X V - shift*X` on column-major `vec(X)`, with
    /// `X` of size p x q. This equals `I_q (x) U - V^T (x) I_p - shift*I`.
    pub fn sylvester_operator(u: &Matrix, v: &Matrix, shift: &Elem) -> Result<Matrix> {
        let p = u.require_square()?;
        let q = v.require_square()?;
        if u.field != v.field {
            return Err(Error::FieldMismatch);
        }
        let f = &u.field;
        let mut m = Matrix::zeros(f, p * q, p * q);
        let idx = |i: usize, j: usize| j * p + i;
        for i in 0..p {
            for j in 0..q {
                let row = idx(i, j);
                for k in 0..p {
                    let val = f.add(m.get(row, idx(k, j)), u.get(i, k));
                    m.set(row, idx(k, j), val);
                }
                for k in 0..q {
                    let val = f.sub(m.get(row, idx(i, k)), v.get(k, j));
                    m.set(row, idx(i, k), val);
                }
                let val = f.sub(m.get(row, row), shift);
                m.set(row, row, val);
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.same_shape(rhs).expect("matrix addition shape");
        let f = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { data, ..self.clone() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.same_shape(rhs).expect("matrix subtraction shape");
        let f = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { data, ..self.clone() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        assert_eq!(self.field, rhs.field, "matrix product field");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.mul_add(&out.data[idx], a, b);
                }
            }
        }
        out
    }
}

/// A rational row scaled to integers and reduced into `fp`.
fn integral_row(fp: &Field, row: &[Elem]) -> Vec<Elem> {
    let mut den = BigInt::one();
    for x in row {
        if let Elem::Rat(r) = x {
            den = den.lcm(r.denom());
        }
    }
    row.iter()
        .map(|x| match x {
            Elem::Rat(r) => fp.from_bigint(&(r.numer() * (&den / r.denom()))),
            _ => unreachable!("rational entry"),
        })
        .collect()
}
