//! Exact linear algebra: reduced echelon subspaces over the rationals,
//! kernels, and characteristic polynomials modulo word-sized primes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::modp::{crt_step, large_primes, rational_reconstruction, Field};
use crate::poly::Rational;

/// Primes tried by [`Subspace::span_multimodular`] before falling back to
/// exact elimination.
const MAX_SPAN_PRIMES: usize = 400;

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn to_dense(v: &SparseVec, dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `acc += c · v`.
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &SparseVec) {
    for (i, x) in v {
        acc[*i] += c * x;
    }
}

/// A subspace of `Q^dim` kept in fully reduced echelon form, each row
/// normalized so that its pivot (the *highest* nonzero index) is 1.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    /// Row for each pivot index, if any.
    rows: Vec<Option<SparseVec>>,
    rank: usize,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace {
            dim,
            rows: vec![None; dim],
            rank: 0,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows[i].is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(|&i| self.rows[i].is_some())
    }

    /// Basis rows, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.iter().flatten().cloned().collect()
    }

    /// Canonical residue of `v` modulo the subspace (no pivot coordinates).
    pub fn reduce_dense(&self, v: &mut [Rational]) {
        for p in (0..self.dim).rev() {
            if v[p].is_zero() {
                continue;
            }
            if let Some(row) = &self.rows[p] {
                let c = v[p].clone();
                for (i, x) in row {
                    v[*i] -= &c * x;
                }
            }
        }
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut d = to_dense(v, self.dim);
        self.reduce_dense(&mut d);
        to_sparse(&d)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut d = to_dense(v, self.dim);
        self.reduce_dense(&mut d);
        self.insert_reduced(d)
    }

    pub fn insert_dense(&mut self, mut d: Vec<Rational>) -> bool {
        self.reduce_dense(&mut d);
        self.insert_reduced(d)
    }

    fn insert_reduced(&mut self, d: Vec<Rational>) -> bool {
        let Some(p) = d.iter().rposition(|c| !c.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &d[p];
        let row: SparseVec = d
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c * &inv))
            .collect();
        // Clear the new pivot from the other rows (their pivots are above
        // or below; only entries at index p matter).
        for other in self.rows.iter_mut().flatten() {
            if let Ok(k) = other.binary_search_by_key(&p, |(i, _)| *i) {
                let c = other[k].1.clone();
                let mut dense = to_dense(other, self.dim);
                axpy(&mut dense, &(-c), &row);
                *other = to_sparse(&dense);
            }
        }
        self.rows[p] = Some(row);
        self.rank += 1;
        true
    }

    /// The span of `gens`. Row reduces modulo primes, lifts the reduced
    /// echelon form by rational reconstruction, and accepts it once every
    /// generator reduces to zero; rank cannot grow modulo a prime, so the
    /// spans then agree.
    pub fn span_multimodular(gens: &[SparseVec], dim: usize) -> Subspace {
        let mut pivots: Vec<usize> = Vec::new();
        let mut modulus = BigInt::one();
        // Residues of the entries of each row at the non-pivot columns below
        // its pivot.
        let mut acc: Vec<Vec<BigInt>> = Vec::new();
        let mut columns: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<Vec<Vec<Rational>>> = None;
        for p in large_primes().take(MAX_SPAN_PRIMES) {
            let field = Field::new(p);
            let Some(rows) = rref_mod(gens, dim, field) else {
                continue;
            };
            let these: Vec<usize> = (0..dim).filter(|&i| rows[i].is_some()).collect();
            if these.len() == dim {
                // Full rank modulo p implies full rank over Q.
                return Subspace::full(dim);
            }
            if these != pivots {
                if !pivots.is_empty() && these.len() < pivots.len() {
                    continue;
                }
                pivots = these;
                columns = pivots
                    .iter()
                    .map(|&pv| (0..pv).filter(|&j| rows[j].is_none()).collect())
                    .collect();
                acc = columns
                    .iter()
                    .map(|c| vec![BigInt::zero(); c.len()])
                    .collect();
                modulus = BigInt::one();
                last = None;
            }
            for ((pv, cols), a) in pivots.iter().zip(&columns).zip(acc.iter_mut()) {
                let row = rows[*pv].as_ref().expect("pivot row");
                for (x, &j) in a.iter_mut().zip(cols) {
                    crt_step(x, &modulus, row[j], p);
                }
            }
            modulus *= p;
            let Some(lifted) = acc
                .iter()
                .map(|a| {
                    a.iter()
                        .map(|x| rational_reconstruction(x, &modulus))
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if last.as_ref() != Some(&lifted) {
                last = Some(lifted);
                continue;
            }
            let mut space = Subspace::new(dim);
            for ((&pv, cols), vals) in pivots.iter().zip(&columns).zip(&lifted) {
                let mut row: SparseVec = cols
                    .iter()
                    .zip(vals)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&j, c)| (j, c.clone()))
                    .collect();
                row.push((pv, Rational::one()));
                space.rows[pv] = Some(row);
            }
            space.rank = pivots.len();
            if gens.iter().all(|g| space.contains(g)) {
                return space;
            }
        }
        let mut space = Subspace::new(dim);
        for g in gens {
            space.insert(g);
        }
        space
    }

    fn full(dim: usize) -> Subspace {
        Subspace {
            dim,
            rows: (0..dim).map(|i| Some(vec![(i, Rational::one())])).collect(),
            rank: dim,
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in other.rows.iter().flatten() {
            s.insert(r);
        }
        s
    }

    /// Intersection via the kernel of `[U | -V]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim, other.dim);
        let u = self.basis();
        let v = other.basis();
        let mut out = Subspace::new(self.dim);
        if u.is_empty() || v.is_empty() {
            return out;
        }
        // Columns of the system are the basis vectors; unknowns (a, b) with
        // Σ a_i u_i - Σ b_j v_j = 0.
        let k = u.len() + v.len();
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); k]; self.dim];
        for (c, vec) in u.iter().enumerate() {
            for (i, x) in vec {
                rows[*i][c] = x.clone();
            }
        }
        for (c, vec) in v.iter().enumerate() {
            for (i, x) in vec {
                rows[*i][u.len() + c] = -x.clone();
            }
        }
        for sol in nullspace(&rows, k) {
            let mut w = vec![Rational::zero(); self.dim];
            for (c, vec) in u.iter().enumerate() {
                if !sol[c].is_zero() {
                    axpy(&mut w, &sol[c], vec);
                }
            }
            out.insert_dense(w);
        }
        out
    }
}

/// Reduced echelon rows of the span of `gens` over `F_p`, indexed by pivot
/// (highest nonzero index, normalized to 1); `None` if `p` divides a
/// denominator.
fn rref_mod(gens: &[SparseVec], dim: usize, f: Field) -> Option<Vec<Option<Vec<u64>>>> {
    let mut rows: Vec<Option<Vec<u64>>> = vec![None; dim];
    let mut rank = 0;
    for g in gens {
        let mut v = vec![0u64; dim];
        for (i, c) in g {
            v[*i] = f.from_rational(c)?;
        }
        for p in (0..dim).rev() {
            if v[p] == 0 {
                continue;
            }
            if let Some(row) = &rows[p] {
                let c = v[p];
                for (d, &x) in v[..=p].iter_mut().zip(&row[..=p]) {
                    if x != 0 {
                        *d = f.sub(*d, f.mul(c, x));
                    }
                }
            }
        }
        let Some(p) = v.iter().rposition(|&c| c != 0) else {
            continue;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for other in rows.iter_mut().flatten() {
            let c = other[p];
            if c != 0 {
                for (d, &x) in other.iter_mut().zip(&v[..=p]) {
                    if x != 0 {
                        *d = f.sub(*d, f.mul(c, x));
                    }
                }
            }
        }
        rows[p] = Some(v);
        rank += 1;
        if rank == dim {
            break;
        }
    }
    Some(rows)
}

/// Basis of `{x : A x = 0}` for a matrix given by rows of length `ncols`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = Rational::one() / &m[r][col];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let c = m[i][col].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &c * s;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fcol| {
            let mut x = vec![Rational::zero(); ncols];
            x[fcol] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[i][fcol].clone();
            }
            x
        })
        .collect()
}

/// Characteristic polynomial `det(x I - M)` over `F_p` by reduction to
/// upper Hessenberg form. Coefficients ascending; consumes the matrix.
pub fn charpoly_mod_p(mut h: Vec<Vec<u64>>, f: Field) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for k in j + 2..n {
            if h[k][j] == 0 {
                continue;
            }
            let u = f.mul(h[k][j], inv);
            // row_k -= u · row_{j+1}
            let (top, bottom) = h.split_at_mut(k);
            let src = &top[j + 1];
            for (d, s) in bottom[0].iter_mut().zip(src.iter()) {
                if *s != 0 {
                    *d = f.sub(*d, f.mul(u, *s));
                }
            }
            // col_{j+1} += u · col_k
            for row in h.iter_mut() {
                if row[k] != 0 {
                    row[j + 1] = f.add(row[j + 1], f.mul(u, row[k]));
                }
            }
        }
    }
    let mut p: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    p.push(vec![1]);
    for m in 1..=n {
        let prev = &p[m - 1];
        let mut cur = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = f.add(cur[k + 1], c);
            cur[k] = f.sub(cur[k], f.mul(h[m - 1][m - 1], c));
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = f.mul(t, h[i][i - 1]);
            if t == 0 {
                break;
            }
            let coef = f.mul(h[i - 1][m - 1], t);
            if coef == 0 {
                continue;
            }
            for (k, &c) in p[i - 1].iter().enumerate() {
                cur[k] = f.sub(cur[k], f.mul(coef, c));
            }
        }
        p.push(cur);
    }
    p.pop().expect("n + 1 entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::modp::large_primes;
    use crate::poly::{q, UniPoly};
    use proptest::prelude::*;

    /// det(xI - M) by Laplace expansion over Q[x], for tiny matrices.
    fn charpoly_laplace(m: &[Vec<i64>]) -> UniPoly {
        let n = m.len();
        let entries: Vec<Vec<UniPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = UniPoly::constant(q(-m[i][j]));
                        if i == j {
                            &c + &UniPoly::x()
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        det_poly(&entries)
    }

    fn det_poly(m: &[Vec<UniPoly>]) -> UniPoly {
        let n = m.len();
        if n == 0 {
            return UniPoly::one();
        }
        let mut total = UniPoly::zero();
        for j in 0..n {
            let minor: Vec<Vec<UniPoly>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[i][c].clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &det_poly(&minor);
            total = if j % 2 == 0 {
                &total + &term
            } else {
                &total - &term
            };
        }
        total
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn hessenberg_matches_laplace(n in 1usize..5, seed in proptest::collection::vec(-6i64..=6, 16)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            let expected = charpoly_laplace(&m);
            let p = large_primes().next().unwrap();
            let f = Field::new(p);
            let mm: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&c| f.from_int(&c.into())).collect()).collect();
            let got = charpoly_mod_p(mm, f);
            let want = f.reduce_poly(&expected).unwrap();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn subspace_reduction_is_canonical() {
        let mut s = Subspace::new(4);
        assert!(s.insert(&to_sparse(&[q(1), q(2), q(0), q(1)])));
        assert!(s.insert(&to_sparse(&[q(0), q(1), q(1), q(0)])));
        assert!(!s.insert(&to_sparse(&[q(1), q(3), q(1), q(1)])));
        assert_eq!(s.rank(), 2);
        assert_eq!(s.pivots().collect::<Vec<_>>(), vec![2, 3]);
        let v = to_sparse(&[q(5), q(0), q(7), q(3)]);
        let r = s.reduce(&v);
        assert!(r.iter().all(|(i, _)| !s.is_pivot(*i)));
        // v - r lies in the span.
        let mut diff = to_dense(&v, 4);
        axpy(&mut diff, &q(-1), &r);
        assert!(s.contains(&to_sparse(&diff)));
    }

    #[test]
    fn intersections_and_kernels() {
        let mut a = Subspace::new(3);
        a.insert(&to_sparse(&[q(1), q(0), q(0)]));
        a.insert(&to_sparse(&[q(0), q(1), q(0)]));
        let mut b = Subspace::new(3);
        b.insert(&to_sparse(&[q(0), q(1), q(1)]));
        b.insert(&to_sparse(&[q(1), q(1), q(0)]));
        let c = a.intersection(&b);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&to_sparse(&[q(1), q(1), q(0)])));
        assert_eq!(a.sum(&b).rank(), 3);
        let k = nullspace(&[vec![q(1), q(1), q(1)]], 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert_eq!(x.iter().cloned().fold(q(0), |s, c| s + c), q(0));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn multimodular_span_matches_exact(
            rows in proptest::collection::vec(proptest::collection::vec((-9i64..=9, 1i64..=4), 7), 1..9),
            dup in 0usize..3,
        ) {
            let mut gens: Vec<SparseVec> = rows
                .iter()
                .map(|r| to_sparse(&r.iter().map(|&(a, b)| crate::poly::qq(a, b)).collect::<Vec<_>>()))
                .collect();
            // Dependent generators.
            if gens.len() > 1 {
                let mut d = to_dense(&gens[0], 7);
                axpy(&mut d, &crate::poly::qq(3, 7), &gens[gens.len() - 1]);
                for _ in 0..dup {
                    gens.push(to_sparse(&d));
                }
            }
            let mut exact = Subspace::new(7);
            for g in &gens {
                exact.insert(g);
            }
            let fast = Subspace::span_multimodular(&gens, 7);
            prop_assert_eq!(fast.rank(), exact.rank());
            prop_assert_eq!(fast.basis(), exact.basis());
        }
    }

    #[test]
    fn multimodular_span_with_large_entries() {
        let big = |e: u32| Rational::new(BigInt::from(3).pow(e) + 1, BigInt::from(2).pow(e));
        let gens = vec![
            vec![(0, big(90)), (1, q(1)), (3, big(45))],
            vec![(1, big(70)), (2, q(-1)), (3, q(2))],
            vec![(0, q(1)), (2, big(100))],
        ];
        let mut exact = Subspace::new(4);
        for g in &gens {
            exact.insert(g);
        }
        assert_eq!(Subspace::span_multimodular(&gens, 4).basis(), exact.basis());
        let full = vec![vec![(0, q(1))], vec![(1, q(2))]];
        assert_eq!(Subspace::span_multimodular(&full, 2).rank(), 2);
    }
}
