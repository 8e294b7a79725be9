use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::TriangularIdeal;
use crate::error::{Error, Result};
use crate::linalg::{axpy, to_dense, to_sparse, SparseVec, Subspace};
use crate::perm::Permutation;
use crate::poly::{Monomial, MultiPoly, Rational, UniPoly};
use crate::symcauchy::cauchy_modules;

/// Ideals in algebras at least this large are computed modulo primes.
const MULTIMODULAR_DIM: usize = 100;

/// `k[x_1..x_n]/I` for a zero-dimensional ideal, given by a staircase basis
/// (an order ideal of monomials, ascending in lex) and the matrices of
/// multiplication by each variable.
///
/// Normal forms are computed from the tables: `NF(x_j·m) = M_j·NF(m)`. Every
/// normal form of a monomial `t` is supported on basis monomials `≤ t`.
#[derive(Clone)]
pub struct QuotientAlgebra {
    inner: Arc<Inner>,
}

struct Inner {
    nvars: usize,
    source: Option<UniPoly>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `tables[i][k] = NF(x_i · basis[k])`.
    tables: Vec<Vec<SparseVec>>,
    /// Generators of an `S_n`-stable sub-ideal (the Cauchy modules).
    symmetric_gens: Vec<MultiPoly>,
    relations: Vec<MultiPoly>,
    base: Option<QuotientAlgebra>,
    cache: RwLock<HashMap<Monomial, SparseVec>>,
}

impl QuotientAlgebra {
    /// `ℳ_S`: the quotient by the Cauchy modules of a squarefree `f`.
    pub fn symmetric_ideal(f: &UniPoly) -> Result<QuotientAlgebra> {
        if f.degree() == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mods = cauchy_modules(f)?;
        let mut a = build_triangular(&mods)?;
        a.source = Some(f.monic());
        a.symmetric_gens = mods;
        Ok(QuotientAlgebra { inner: Arc::new(a) })
    }

    /// Quotient by a triangular set `f_i = x_i^{d_i} + g_i(x_1..x_i)`.
    pub fn from_triangular(t: &TriangularIdeal) -> Result<QuotientAlgebra> {
        let mut a = build_triangular(&t.gens)?;
        a.relations = t.gens.clone();
        Ok(QuotientAlgebra { inner: Arc::new(a) })
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars
    }

    pub fn dim(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.inner.basis
    }

    /// The monic polynomial whose symmetric ideal this algebra descends from.
    pub fn source(&self) -> Option<&UniPoly> {
        self.inner.source.as_ref()
    }

    /// The symmetric-relations algebra this one was obtained from (itself if
    /// it is one).
    pub fn base(&self) -> Option<QuotientAlgebra> {
        if !self.inner.symmetric_gens.is_empty() && self.inner.relations.is_empty() {
            return Some(self.clone());
        }
        self.inner.base.clone()
    }

    pub fn symmetric_generators(&self) -> &[MultiPoly] {
        &self.inner.symmetric_gens
    }

    /// Generators added on top of the symmetric part.
    pub fn relations(&self) -> &[MultiPoly] {
        &self.inner.relations
    }

    pub fn generators(&self) -> Vec<MultiPoly> {
        self.inner
            .symmetric_gens
            .iter()
            .chain(&self.inner.relations)
            .cloned()
            .collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.inner.index.get(m).copied()
    }

    /// Column `k` of the multiplication-by-`x_i` matrix.
    pub fn table(&self, i: usize) -> &[SparseVec] {
        &self.inner.tables[i]
    }

    /// `M_i · v`.
    pub fn mul_var(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut acc = vec![Rational::zero(); self.dim()];
        for (k, c) in v {
            axpy(&mut acc, c, &self.inner.tables[i][*k]);
        }
        to_sparse(&acc)
    }

    pub fn nf_monomial(&self, m: &Monomial) -> SparseVec {
        nf_monomial(&self.inner, m, self.inner.nvars)
    }

    pub fn normal_form_vec(&self, p: &MultiPoly) -> Result<SparseVec> {
        self.check_arity(p)?;
        let mut acc = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            let v = self.nf_monomial(m);
            axpy(&mut acc, c, &v);
        }
        Ok(to_sparse(&acc))
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        Ok(self.to_poly(&self.normal_form_vec(p)?))
    }

    pub fn member(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form_vec(p)?.is_empty())
    }

    /// The polynomial with the given basis coordinates.
    pub fn to_poly(&self, v: &SparseVec) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars(),
            v.iter()
                .map(|(k, c)| (self.inner.basis[*k].clone(), c.clone())),
        )
    }

    fn check_arity(&self, p: &MultiPoly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        Ok(())
    }

    /// `[NF(b·v) for b in basis]`, i.e. the columns of multiplication by
    /// the element with coordinates `v`.
    pub fn multiplication_columns(&self, v: &SparseVec) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = Vec::with_capacity(self.dim());
        for (k, b) in self.inner.basis.iter().enumerate() {
            if k == 0 {
                debug_assert!(b.is_one());
                cols.push(v.clone());
                continue;
            }
            let i = b
                .exps()
                .iter()
                .position(|&e| e > 0)
                .expect("non-unit monomial");
            let prev = self.inner.index[&b.div_var(i).expect("positive")];
            let col = self.mul_var(i, &cols[prev]);
            cols.push(col);
        }
        cols
    }

    /// The image in this algebra of the ideal generated by `relations`.
    pub fn ideal_space(&self, relations: &[MultiPoly]) -> Result<Subspace> {
        if self.dim() >= MULTIMODULAR_DIM {
            let mut gens = Vec::new();
            for r in relations {
                let v = self.normal_form_vec(r)?;
                if !v.is_empty() {
                    gens.extend(
                        self.multiplication_columns(&v)
                            .into_iter()
                            .filter(|c| !c.is_empty()),
                    );
                }
            }
            return Ok(Subspace::span_multimodular(&gens, self.dim()));
        }
        let mut w = Subspace::new(self.dim());
        for r in relations {
            let v = self.normal_form_vec(r)?;
            if v.is_empty() || w.contains(&v) {
                continue;
            }
            for col in self.multiplication_columns(&v) {
                if !col.is_empty() {
                    w.insert(&col);
                }
                if w.rank() == self.dim() {
                    return Ok(w);
                }
            }
        }
        Ok(w)
    }

    /// `I + <relations>`.
    pub fn extend(&self, relations: &[MultiPoly]) -> Result<QuotientAlgebra> {
        let w = self.ideal_space(relations)?;
        if w.rank() == 0 {
            return Ok(self.clone());
        }
        let mut stored: Vec<MultiPoly> = self.inner.relations.clone();
        for r in relations {
            let nf = self.normal_form(r)?;
            if nf.is_zero() {
                continue;
            }
            stored.push(if nf.len() < r.len() { nf } else { r.clone() });
        }
        self.quotient_by(&w, stored)
    }

    /// Quotient by an ideal given through its image subspace.
    pub fn quotient_by(&self, w: &Subspace, relations: Vec<MultiPoly>) -> Result<QuotientAlgebra> {
        if w.rank() == self.dim() {
            return Err(Error::InconsistentIdeal);
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&k| !w.is_pivot(k)).collect();
        let mut new_index = vec![usize::MAX; self.dim()];
        for (j, &k) in keep.iter().enumerate() {
            new_index[k] = j;
        }
        let basis: Vec<Monomial> = keep.iter().map(|&k| self.inner.basis[k].clone()).collect();
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(j, m)| (m, j))
            .collect();
        let tables: Vec<Vec<SparseVec>> = self
            .inner
            .tables
            .iter()
            .map(|t| {
                keep.iter()
                    .map(|&k| {
                        let mut d = to_dense(&t[k], self.dim());
                        w.reduce_dense(&mut d);
                        d.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(i, c)| (new_index[i], c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(QuotientAlgebra {
            inner: Arc::new(Inner {
                nvars: self.nvars(),
                source: self.inner.source.clone(),
                basis,
                index,
                tables,
                symmetric_gens: self.inner.symmetric_gens.clone(),
                relations,
                base: self.base(),
                cache: RwLock::new(HashMap::new()),
            }),
        })
    }

    /// `σ.I`. Needs the symmetric part to be `S_n`-stable, which holds for
    /// every algebra built from [`QuotientAlgebra::symmetric_ideal`].
    pub fn permute(&self, sigma: &Permutation) -> Result<QuotientAlgebra> {
        let base = self
            .base()
            .ok_or_else(|| Error::Inconsistent("permuting needs a symmetric base ideal".into()))?;
        let moved: Vec<MultiPoly> = self
            .inner
            .relations
            .iter()
            .map(|r| r.permute(sigma))
            .collect::<Result<_>>()?;
        base.extend(&moved)
    }

    /// The lex-triangular generators `f_i = x_i^{d_i} - NF(x_i^{d_i})`.
    pub fn triangularize(&self) -> Result<TriangularIdeal> {
        let n = self.nvars();
        let mut degrees = Vec::with_capacity(n);
        for i in 0..n {
            let mut d = 1u32;
            loop {
                let mut e = vec![0u32; n];
                e[i] = d;
                if self.index_of(&Monomial::new(e)).is_none() {
                    break;
                }
                d += 1;
            }
            degrees.push(d);
        }
        let boxed: usize = degrees.iter().map(|&d| d as usize).product();
        if boxed != self.dim() {
            return Err(Error::NotTriangular(format!(
                "initial degrees {degrees:?} give {boxed}, dimension is {}",
                self.dim()
            )));
        }
        let in_box = self
            .basis()
            .iter()
            .all(|m| m.exps().iter().zip(&degrees).all(|(e, d)| e < d));
        if !in_box {
            return Err(Error::NotTriangular("staircase is not a box".into()));
        }
        let gens = (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = degrees[i];
                let m = Monomial::new(e);
                let nf = self.to_poly(&self.nf_monomial(&m));
                &MultiPoly::from_monomial(m, Rational::one()) - &nf
            })
            .collect();
        TriangularIdeal::new(gens)
    }
}

fn nf_monomial(inner: &Inner, m: &Monomial, usable: usize) -> SparseVec {
    if let Some(&k) = inner.index.get(m) {
        return vec![(k, Rational::one())];
    }
    if let Some(v) = inner.cache.read().expect("cache lock").get(m) {
        return v.clone();
    }
    let j = m
        .exps()
        .iter()
        .position(|&e| e > 0)
        .expect("unit monomial is in the basis");
    debug_assert!(j < usable, "table for x_{} not built yet", j + 1);
    let prev = nf_monomial(inner, &m.div_var(j).expect("positive"), usable);
    let mut acc = vec![Rational::zero(); inner.basis.len()];
    for (k, c) in &prev {
        axpy(&mut acc, c, &inner.tables[j][*k]);
    }
    let v = to_sparse(&acc);
    inner
        .cache
        .write()
        .expect("cache lock")
        .insert(m.clone(), v.clone());
    v
}

fn build_triangular(gens: &[MultiPoly]) -> Result<Inner> {
    let n = gens.len();
    let mut degrees = Vec::with_capacity(n);
    let mut tails = Vec::with_capacity(n);
    for (i, g) in gens.iter().enumerate() {
        if g.nvars() != n {
            return Err(Error::Arity {
                expected: n,
                found: g.nvars(),
            });
        }
        if g.max_var().is_some_and(|v| v > i) {
            return Err(Error::NotTriangular(format!(
                "f_{} involves later variables",
                i + 1
            )));
        }
        let d = g.degree_in(i);
        let mut e = vec![0u32; n];
        e[i] = d;
        let lead = Monomial::new(e);
        if d == 0 || g.coeff(&lead) != Rational::one() {
            return Err(Error::NotTriangular(format!(
                "f_{} is not monic in x_{}",
                i + 1,
                i + 1
            )));
        }
        let tail = &g.clone() - &MultiPoly::from_monomial(lead.clone(), Rational::one());
        if tail.degree_in(i) >= d {
            return Err(Error::NotTriangular(format!(
                "f_{} has another term of x_{}-degree {d}",
                i + 1,
                i + 1
            )));
        }
        degrees.push(d);
        tails.push(tail);
    }
    let mut basis = vec![Monomial::one(n)];
    for i in 0..n {
        let mut next = Vec::with_capacity(basis.len() * degrees[i] as usize);
        for m in &basis {
            for k in 0..degrees[i] {
                let mut e = m.exps().to_vec();
                e[i] = k;
                next.push(Monomial::new(e));
            }
        }
        basis = next;
    }
    basis.sort();
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    let mut inner = Inner {
        nvars: n,
        source: None,
        basis,
        index,
        tables: Vec::with_capacity(n),
        symmetric_gens: Vec::new(),
        relations: Vec::new(),
        base: None,
        cache: RwLock::new(HashMap::new()),
    };
    for i in 0..n {
        let mut table = Vec::with_capacity(inner.basis.len());
        for b in &inner.basis {
            let mut e = b.exps().to_vec();
            if e[i] + 1 < degrees[i] {
                e[i] += 1;
                table.push(vec![(inner.index[&Monomial::new(e)], Rational::one())]);
                continue;
            }
            // x_i·b = x_i^{d_i}·b'' ≡ -g_i·b''.
            e[i] = 0;
            let rest = Monomial::new(e);
            let mut acc = vec![Rational::zero(); inner.basis.len()];
            for (t, c) in tails[i].terms() {
                let v = nf_monomial(&inner, &t.mul(&rest), i);
                axpy(&mut acc, &(-c.clone()), &v);
            }
            table.push(to_sparse(&acc));
        }
        inner.tables.push(table);
    }
    Ok(inner)
}

impl fmt::Debug for QuotientAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientAlgebra")
            .field("nvars", &self.nvars())
            .field("dim", &self.dim())
            .field("relations", &self.inner.relations)
            .finish()
    }
}
