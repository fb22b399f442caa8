//! Brute-force finite-dimensional BRST homology: the Chevalley-Eilenberg
//! complex of `g_{<0}` with coefficients in `M (x) C_chi`, built as explicit
//! sparse matrices, with exact homology dimensions.
//!
//! The differential on `M (x) Lambda^p(n)` is
//! `d(m x1..xp) = sum_i (-1)^(i+1) (x_i - chi(x_i)) m (x) x1..^xi..xp
//!              - sum_{i<j} (-1)^(i+j) m (x) [x_i, x_j] x1..^xi..^xj..xp`,
//! with `chi(E_{b,a}) = 1` on the root vectors making up `f`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_fraction_free, rank_mod_prime, SparseMatrix, MERSENNE_61};
use crate::rational::{format_rational, int, Rational};
use crate::rootdata::{CentralizerCartan, GoodGrading, Root};

/// A finite-dimensional (or truncated) `gl_n`-module given by explicit matrices.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    n: usize,
    dim: usize,
    /// `E_{ab}` for every `a, b` (diagonal included).
    action: BTreeMap<(usize, usize), SparseMatrix>,
    /// `e`-weight of each basis vector.
    weights: Vec<Vec<Rational>>,
    /// Basis vectors on which the relations are exact (truncated modules cut the rest).
    exact_columns: usize,
    tag: String,
}

impl FiniteModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn op(&self, a: usize, b: usize) -> &SparseMatrix {
        &self.action[&(a, b)]
    }

    fn from_ops(n: usize, dim: usize, action: BTreeMap<(usize, usize), SparseMatrix>, tag: String) -> Self {
        let weights = (0..dim)
            .map(|v| (0..n).map(|a| action[&(a, a)].get(v, v)).collect())
            .collect();
        Self {
            n,
            dim,
            action,
            weights,
            exact_columns: dim,
            tag,
        }
    }

    pub fn trivial(n: usize) -> Self {
        let mut action = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                action.insert((a, b), SparseMatrix::zeros(1, 1));
            }
        }
        Self::from_ops(n, 1, action, "trivial".into())
    }

    pub fn vector(n: usize) -> Self {
        let mut action = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let mut m = SparseMatrix::zeros(n, n);
                m.set(a, b, int(1));
                action.insert((a, b), m);
            }
        }
        Self::from_ops(n, n, action, "vector".into())
    }

    /// `sl_n` acting on itself; basis `E_ij` (`i != j`, lexicographic) then
    /// `H_k = E_kk - E_{k+1,k+1}`.
    pub fn adjoint(n: usize) -> Self {
        let offdiag: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let dim = n * n - 1;
        let index: HashMap<(usize, usize), usize> =
            offdiag.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let unit = |a: usize, b: usize| {
            let mut m = SparseMatrix::zeros(n, n);
            m.set(a, b, int(1));
            m
        };
        let basis: Vec<SparseMatrix> = offdiag
            .iter()
            .map(|&(i, j)| unit(i, j))
            .chain((0..n - 1).map(|k| unit(k, k).sub(&unit(k + 1, k + 1))))
            .collect();
        let coords = |x: &SparseMatrix| -> Vec<(usize, Rational)> {
            let mut out = Vec::new();
            let mut cumulative = Rational::zero();
            for k in 0..n {
                for (r, c, v) in x.entries().filter(|e| e.0 == k) {
                    if r != c {
                        out.push((index[&(r, c)], v));
                    }
                }
                if k < n - 1 {
                    cumulative += x.get(k, k);
                    if !cumulative.is_zero() {
                        out.push((offdiag.len() + k, cumulative));
                    }
                }
            }
            out
        };
        let mut action = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let e = unit(a, b);
                let mut m = SparseMatrix::zeros(dim, dim);
                for (col, x) in basis.iter().enumerate() {
                    for (row, v) in coords(&e.commutator(x)) {
                        m.set(row, col, v);
                    }
                }
                action.insert((a, b), m);
            }
        }
        Self::from_ops(n, dim, action, "adjoint".into())
    }

    /// Irreducible module with Dynkin labels `labels` (length `n - 1`), in the
    /// Gelfand-Tsetlin basis.
    pub fn highest_weight(labels: &[u32]) -> Self {
        let n = labels.len() + 1;
        let top: Vec<i64> = (0..n)
            .map(|i| labels[i..].iter().map(|&x| i64::from(x)).sum())
            .collect();
        let patterns = gt_patterns(&top);
        let dim = patterns.len();
        let index: HashMap<&Vec<Vec<i64>>, usize> =
            patterns.iter().enumerate().map(|(k, p)| (p, k)).collect();
        // l_{ki} = lambda_{ki} - i + 1 with 1-based i, so l = lambda - i for 0-based i
        let l = |pat: &Vec<Vec<i64>>, k: usize, i: usize| int(pat[k][i] - i as i64);

        let mut action: BTreeMap<(usize, usize), SparseMatrix> = BTreeMap::new();
        for a in 0..n {
            let mut m = SparseMatrix::zeros(dim, dim);
            for (col, pat) in patterns.iter().enumerate() {
                let upper: i64 = pat[a].iter().sum();
                let lower: i64 = if a == 0 { 0 } else { pat[a - 1].iter().sum() };
                m.set(col, col, int(upper - lower));
            }
            action.insert((a, a), m);
        }
        // rows are 0-based: pattern row k has k+1 entries
        for k in 0..n - 1 {
            let mut raise = SparseMatrix::zeros(dim, dim);
            let mut lower = SparseMatrix::zeros(dim, dim);
            for (col, pat) in patterns.iter().enumerate() {
                for i in 0..=k {
                    let mut den = Rational::one();
                    for j in 0..=k {
                        if j != i {
                            den *= l(pat, k, i) - l(pat, k, j);
                        }
                    }
                    let mut up = pat.clone();
                    up[k][i] += 1;
                    if let Some(&row) = index.get(&up) {
                        let mut num = Rational::one();
                        for j in 0..=k + 1 {
                            num *= l(pat, k, i) - l(pat, k + 1, j);
                        }
                        let v = -num / den;
                        if !v.is_zero() {
                            raise.set(row, col, v);
                        }
                    }
                    let mut down = pat.clone();
                    down[k][i] -= 1;
                    if let Some(&row) = index.get(&down) {
                        let mut num = Rational::one();
                        if k > 0 {
                            for j in 0..k {
                                num *= l(pat, k, i) - l(pat, k - 1, j);
                            }
                        }
                        let v = num / den;
                        if !v.is_zero() {
                            lower.set(row, col, v);
                        }
                    }
                }
            }
            action.insert((k, k + 1), raise);
            action.insert((k + 1, k), lower);
        }
        for gap in 2..n {
            for a in 0..n - gap {
                let b = a + gap;
                let up = action[&(a, b - 1)].commutator(&action[&(b - 1, b)]);
                let down = action[&(b, b - 1)].commutator(&action[&(b - 1, a)]);
                action.insert((a, b), up);
                action.insert((b, a), down);
            }
        }
        let label_str: Vec<String> = labels.iter().map(ToString::to_string).collect();
        Self::from_ops(n, dim, action, format!("hw({})", label_str.join(",")))
    }

    /// `sl_2` Verma module `M(lambda_bar)` truncated to `f^j v`, `j <= depth`, where
    /// `x = <lambda_bar + rho_bar, alpha^vee>`. Relations fail only on `f^depth v`.
    pub fn sl2_verma_truncated(x: Rational, depth: usize) -> Self {
        let lam = x - int(1);
        let dim = depth + 1;
        let mut e = SparseMatrix::zeros(dim, dim);
        let mut f = SparseMatrix::zeros(dim, dim);
        let mut h1 = SparseMatrix::zeros(dim, dim);
        let mut h2 = SparseMatrix::zeros(dim, dim);
        for j in 0..dim {
            let jj = int(j as i64);
            if j + 1 < dim {
                f.set(j + 1, j, int(1));
            }
            if j > 0 {
                e.set(j - 1, j, jj * (lam - jj + int(1)));
            }
            // gl_2 lift with E_22 = -E_11 fixed up to the trace: use (lam - j, j)/... centred
            h1.set(j, j, lam - jj);
            h2.set(j, j, jj);
        }
        // choose E_11 = (lam - j), E_22 = j so that E_11 - E_22 = lam - 2j
        let mut action = BTreeMap::new();
        action.insert((0, 1), e);
        action.insert((1, 0), f);
        action.insert((0, 0), h1);
        action.insert((1, 1), h2);
        let mut m = Self::from_ops(2, dim, action, format!("verma(x={}, K={depth})", format_rational(&x)));
        m.exact_columns = depth;
        m
    }

    /// Checks `[E_ab, E_cd] = delta_bc E_ad - delta_da E_cb` and `tr E_ab = 0`
    /// (`a != b`) on the exact part of the basis.
    pub fn check_bracket_fidelity(&self) -> Result<()> {
        let n = self.n;
        let keep: Vec<usize> = (0..self.exact_columns).collect();
        let all: Vec<usize> = (0..self.dim).collect();
        for a in 0..n {
            for b in 0..n {
                if a != b && !self.op(a, b).trace().is_zero() && self.exact_columns == self.dim {
                    return Err(Error::BracketFidelity(format!("tr E_{a}{b} != 0 on {}", self.tag)));
                }
                for c in 0..n {
                    for d in 0..n {
                        let lhs = self.op(a, b).commutator(self.op(c, d));
                        let mut rhs = SparseMatrix::zeros(self.dim, self.dim);
                        if b == c {
                            rhs = rhs.add(self.op(a, d));
                        }
                        if d == a {
                            rhs = rhs.sub(self.op(c, b));
                        }
                        let diff = lhs.sub(&rhs).submatrix(&all, &keep);
                        if let Some((r, col, v)) = diff.first_nonzero() {
                            return Err(Error::BracketFidelity(format!(
                                "[E{a}{b}, E{c}{d}] wrong at ({r}, {col}) by {} on {}",
                                format_rational(&v),
                                self.tag
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Gelfand-Tsetlin patterns with top row `top`, rows listed from length 1 to n.
fn gt_patterns(top: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let n = top.len();
    let mut out = Vec::new();
    fn rec(rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        let upper = rows.last().expect("nonempty").clone();
        if upper.len() == 1 {
            let mut pat = rows.clone();
            pat.reverse();
            out.push(pat);
            return;
        }
        let k = upper.len() - 1;
        let mut cur = vec![0i64; k];
        fn fill(i: usize, upper: &[i64], cur: &mut Vec<i64>, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
            if i == cur.len() {
                rows.push(cur.clone());
                rec(rows, out);
                rows.pop();
                return;
            }
            for v in upper[i + 1]..=upper[i] {
                cur[i] = v;
                fill(i + 1, upper, cur, rows, out);
            }
        }
        fill(0, &upper, &mut cur, rows, out);
    }
    let mut rows = vec![top.to_vec()];
    if n == 1 {
        return vec![rows];
    }
    rec(&mut rows, &mut out);
    out.sort();
    out
}

/// Weyl dimension of the `sl_n` irreducible with Dynkin labels `labels`.
pub fn weyl_dimension(labels: &[u32]) -> u128 {
    let n = labels.len() + 1;
    let top: Vec<i64> = (0..n)
        .map(|i| labels[i..].iter().map(|&x| i64::from(x)).sum())
        .collect();
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..n {
        for j in i + 1..n {
            num *= (top[i] - top[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `g_{<0}` (grading-negative roots).
    GradingNegative,
    /// `n_-` (all negative roots).
    NegativeNilradical,
}

#[derive(Debug, Clone, Copy)]
pub struct ComplexOptions {
    pub variant: Variant,
    pub chi_scale: Rational,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        Self {
            variant: Variant::GradingNegative,
            chi_scale: Rational::one(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BRSTComplex {
    /// Ordered basis `x_1, ..., x_d` of the nilpotent subalgebra.
    pub roots: Vec<Root>,
    /// `chi(x_i)`.
    pub chi: Vec<Rational>,
    /// Basis of `C_p`: `(module index, exterior monomial bitmask)`.
    pub basis: Vec<Vec<(usize, u32)>>,
    /// `D_p : C_p -> C_{p-1}` for `p = 1..=d` (index `p - 1`).
    pub differentials: Vec<SparseMatrix>,
    /// Restricted `t`-weight of each basis vector, per degree.
    pub blocks: Vec<Vec<Vec<Rational>>>,
    /// Columns of `C_p` excluded from the certified window (truncation boundary).
    pub excluded: Vec<Vec<usize>>,
}

impl BRSTComplex {
    pub fn chain_dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }
}

/// `x_I` as a sorted wedge: sign of moving the generator `k` into the monomial `mask`.
fn insert_sign(mask: u32, k: usize) -> Option<(u32, i64)> {
    if mask & (1 << k) != 0 {
        return None;
    }
    let before = (mask & ((1u32 << k) - 1)).count_ones();
    Some((mask | (1 << k), if before % 2 == 0 { 1 } else { -1 }))
}

pub fn build_complex(m: &FiniteModule, g: &GoodGrading, opts: ComplexOptions) -> Result<BRSTComplex> {
    if m.n() != g.n() {
        return Err(Error::InvalidInput("module and grading have different rank".into()));
    }
    m.check_bracket_fidelity()?;
    let n = g.n();
    let mut roots: Vec<Root> = match opts.variant {
        Variant::GradingNegative => g.delta_neg().to_vec(),
        Variant::NegativeNilradical => crate::rootdata::all_roots(n)
            .into_iter()
            .filter(|a| !a.is_positive())
            .collect(),
    };
    roots.sort_unstable();
    let d = roots.len();
    if d > 30 {
        return Err(Error::Unsupported(format!("{d} ghost generators")));
    }
    let fset: Vec<Root> = g.f_roots().collect();
    let chi: Vec<Rational> = roots
        .iter()
        .map(|r| if fset.contains(r) { opts.chi_scale } else { Rational::zero() })
        .collect();
    let index: HashMap<Root, usize> = roots.iter().enumerate().map(|(k, r)| (*r, k)).collect();
    // [x_i, x_j] = [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
    let bracket = |i: usize, j: usize| -> Vec<(usize, i64)> {
        let (x, y) = (roots[i], roots[j]);
        let mut out = Vec::new();
        if x.j == y.i && x.i != y.j {
            out.push((index[&Root::new(x.i, y.j)], 1));
        }
        if y.j == x.i && y.i != x.j {
            out.push((index[&Root::new(y.i, x.j)], -1));
        }
        out
    };

    let c = CentralizerCartan::new(g);
    let mweights: Vec<Vec<Rational>> = m.weights().iter().map(|w| c.restrict(w)).collect();
    let rweights: Vec<Vec<Rational>> = roots.iter().map(|r| c.restrict(&r.vector(n))).collect();

    let mut basis: Vec<Vec<(usize, u32)>> = vec![Vec::new(); d + 1];
    for mask in 0u32..(1u32 << d) {
        for v in 0..m.dim() {
            basis[mask.count_ones() as usize].push((v, mask));
        }
    }
    for b in &mut basis {
        b.sort_unstable_by_key(|&(v, mask)| (mask, v));
    }
    let positions: Vec<HashMap<(usize, u32), usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, &key)| (key, k)).collect())
        .collect();
    let blocks: Vec<Vec<Vec<Rational>>> = basis
        .iter()
        .map(|b| {
            b.iter()
                .map(|&(v, mask)| {
                    let mut w = mweights[v].clone();
                    for (k, rw) in rweights.iter().enumerate() {
                        if mask & (1 << k) != 0 {
                            for (x, y) in w.iter_mut().zip(rw) {
                                *x += y;
                            }
                        }
                    }
                    w
                })
                .collect()
        })
        .collect();

    let mut differentials = Vec::with_capacity(d);
    for p in 1..=d {
        let mut dp = SparseMatrix::zeros(basis[p - 1].len(), basis[p].len());
        for (col, &(v, mask)) in basis[p].iter().enumerate() {
            let gens: Vec<usize> = (0..d).filter(|k| mask & (1 << k) != 0).collect();
            for (pos, &k) in gens.iter().enumerate() {
                let sign = if pos % 2 == 0 { int(1) } else { int(-1) };
                let rest = mask & !(1 << k);
                let root = roots[k];
                for (row_v, coef) in m.op(root.i, root.j).column(v) {
                    let row = positions[p - 1][&(row_v, rest)];
                    dp.add_to(row, col, sign * coef);
                }
                if !chi[k].is_zero() {
                    let row = positions[p - 1][&(v, rest)];
                    dp.add_to(row, col, -sign * chi[k]);
                }
            }
            for (pi, &i) in gens.iter().enumerate() {
                for (pj, &j) in gens.iter().enumerate().skip(pi + 1) {
                    // left action: the bracket term carries the opposite sign
                    let sign: i64 = if (pi + pj) % 2 == 0 { -1 } else { 1 };
                    let rest = mask & !(1 << i) & !(1 << j);
                    for (k, coef) in bracket(i, j) {
                        if let Some((new_mask, s)) = insert_sign(rest, k) {
                            let row = positions[p - 1][&(v, new_mask)];
                            dp.add_to(row, col, int(sign * s * coef));
                        }
                    }
                }
            }
        }
        for (r, col, val) in dp.entries() {
            if blocks[p - 1][r] != blocks[p][col] {
                return Err(Error::BlockStructure(format!(
                    "D_{p} entry ({r}, {col}) = {} joins different t-weights",
                    format_rational(&val)
                )));
            }
        }
        differentials.push(dp);
    }
    for p in 1..d {
        let prod = differentials[p - 1].mul(&differentials[p]);
        if let Some((row, col, v)) = prod.first_nonzero() {
            return Err(Error::DSquaredNonzero {
                degree: p + 1,
                row,
                col,
                value: format_rational(&v),
            });
        }
    }
    let excluded = basis
        .iter()
        .enumerate()
        .map(|(p, b)| {
            b.iter()
                .enumerate()
                .filter(|(_, &(v, _))| p > 0 && v >= m.exact_columns)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok(BRSTComplex {
        roots,
        chi,
        basis,
        differentials,
        blocks,
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub depth: usize,
    pub stabilized: bool,
    /// Homology at depth `2K`, for the stability comparison.
    pub doubled: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub module: String,
    pub chain_dims: Vec<usize>,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub blocks: usize,
    /// Blocks whose rank needed exact elimination after the modular rank.
    pub exact_fallbacks: usize,
    pub euler_characteristic_ok: bool,
    pub truncation: Option<Truncation>,
}

impl HomologyReport {
    pub fn vanishes(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Exact homology dimensions, computed blockwise by `t`-weight.
pub fn homology(cx: &BRSTComplex, module: &str) -> HomologyReport {
    let top = cx.basis.len() - 1;
    // certified columns per degree
    let kept: Vec<Vec<usize>> = cx
        .basis
        .iter()
        .enumerate()
        .map(|(p, b)| (0..b.len()).filter(|k| !cx.excluded[p].contains(k)).collect())
        .collect();
    let mut keys: Vec<Vec<Rational>> = cx.blocks.iter().flatten().cloned().collect();
    keys.sort();
    keys.dedup();
    let mut dims = vec![0usize; top + 1];
    let mut ranks = vec![0usize; top + 2];
    let mut fallbacks = 0;
    let mut euler_ok = true;
    for key in &keys {
        let members: Vec<Vec<usize>> = kept
            .iter()
            .enumerate()
            .map(|(p, cols)| cols.iter().copied().filter(|&k| cx.blocks[p][k] == *key).collect())
            .collect();
        let sub: Vec<SparseMatrix> = (1..=top)
            .map(|p| cx.differentials[p - 1].submatrix(&members[p - 1], &members[p]))
            .collect();
        let modular: Vec<Option<usize>> = sub.iter().map(|m| rank_mod_prime(m, MERSENNE_61)).collect();
        // r[p] = rank of D_p in this block, r[0] = r[top + 1] = 0
        let mut r = vec![0usize; top + 2];
        for p in 1..=top {
            let m = &sub[p - 1];
            let lower = modular[p - 1];
            let full = m.nrows().min(m.ncols());
            r[p] = match lower {
                Some(x) if x == full => x,
                _ => usize::MAX,
            };
        }
        for p in 1..=top {
            if r[p] != usize::MAX {
                continue;
            }
            // certified when the modular ranks around C_p or C_{p-1} are saturated
            let lp = modular[p - 1];
            let sat_here = lp.is_some_and(|x| {
                let next = if p < top { modular[p] } else { Some(0) };
                next.is_some_and(|y| x + y == members[p].len())
            });
            let sat_below = lp.is_some_and(|x| {
                let prev = if p > 1 { modular[p - 2] } else { Some(0) };
                prev.is_some_and(|y| x + y == members[p - 1].len())
            });
            r[p] = if sat_here || sat_below {
                lp.expect("checked")
            } else {
                fallbacks += 1;
                rank_fraction_free(&sub[p - 1])
            };
        }
        let mut alt_chain = 0i64;
        let mut alt_hom = 0i64;
        for p in 0..=top {
            let h = members[p].len() - r[p] - r[p + 1];
            dims[p] += h;
            ranks[p] += r[p];
            let s = if p % 2 == 0 { 1 } else { -1 };
            alt_chain += s * members[p].len() as i64;
            alt_hom += s * h as i64;
        }
        euler_ok &= alt_chain == alt_hom;
    }
    ranks.truncate(top + 1);
    HomologyReport {
        module: module.to_string(),
        chain_dims: kept.iter().map(Vec::len).collect(),
        dims,
        ranks,
        blocks: keys.len(),
        exact_fallbacks: fallbacks,
        euler_characteristic_ok: euler_ok,
        truncation: None,
    }
}

pub fn module_homology(m: &FiniteModule, g: &GoodGrading, opts: ComplexOptions) -> Result<HomologyReport> {
    let cx = build_complex(m, g, opts)?;
    Ok(homology(&cx, m.tag()))
}

/// Homology for the `sl_2` Verma module `M(lambda_bar)`, truncated at `depth`
/// and at `2 depth`; the top basis vector's chains are outside the window.
pub fn sl2_verma_homology(x: Rational, depth: usize, g: &GoodGrading) -> Result<HomologyReport> {
    if g.n() != 2 {
        return Err(Error::Unsupported("truncated Verma modules are only certified for sl_2".into()));
    }
    let run = |k: usize| -> Result<HomologyReport> {
        module_homology(&FiniteModule::sl2_verma_truncated(x, k), g, ComplexOptions::default())
    };
    let mut small = run(depth)?;
    let big = run(2 * depth)?;
    small.truncation = Some(Truncation {
        depth,
        stabilized: small.dims == big.dims,
        doubled: big.dims.clone(),
    });
    Ok(small)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BkCase {
    pub x: String,
    pub criterion: bool,
    pub h0: usize,
    pub stabilized: bool,
    pub agree: bool,
}

/// Rank-one check of the nonvanishing criterion against computed `H_0`.
///
/// `x = <lambda_bar + rho_bar, alpha^vee>`. For `x` in `N` the irreducible is
/// finite dimensional (Gelfand-Tsetlin module); otherwise it is the Verma module,
/// handled by truncation.
pub fn verify_bk_consistency(xs: &[Rational], g: &GoodGrading, depth: usize) -> Result<Vec<BkCase>> {
    if g.n() != 2 {
        return Err(Error::Unsupported("BK consistency is certified for sl_2 only".into()));
    }
    xs.iter()
        .map(|&x| {
            let lambda_bar = [x - int(1), int(0)];
            let criterion = crate::characters::bk_nonvanishing(&lambda_bar, g);
            let (h0, stabilized) = if x.is_integer() && x > Rational::zero() {
                let labels = [(x.to_integer() - 1) as u32];
                let rep = module_homology(&FiniteModule::highest_weight(&labels), g, ComplexOptions::default())?;
                (rep.dims[0], true)
            } else {
                let rep = sl2_verma_homology(x, depth, g)?;
                let stab = rep.truncation.as_ref().is_some_and(|t| t.stabilized);
                (rep.dims[0], stab)
            };
            Ok(BkCase {
                x: format_rational(&x),
                criterion,
                h0,
                stabilized,
                agree: stabilized && criterion == (h0 > 0),
            })
        })
        .collect()
}

/// All Dynkin labels of `sl_n` irreducibles with `dim <= max_dim`.
pub fn dominant_weights_up_to(n: usize, max_dim: u128) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n - 1];
    fn rec(i: usize, cur: &mut Vec<u32>, max_dim: u128, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if weyl_dimension(cur) <= max_dim {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0.. {
            cur[i] = v;
            // dimension grows with each label; stop once the rest at zero is too big
            let mut probe = cur.clone();
            for x in probe.iter_mut().skip(i + 1) {
                *x = 0;
            }
            if weyl_dimension(&probe) > max_dim {
                break;
            }
            rec(i + 1, cur, max_dim, out);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, max_dim, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::rootdata::Partition;

    fn grading(s: &str) -> GoodGrading {
        GoodGrading::new(&Partition::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn gt_dimensions_match_weyl() {
        for labels in [vec![0], vec![3], vec![1, 0], vec![1, 1], vec![2, 1], vec![1, 0, 1], vec![0, 2, 0]] {
            let m = FiniteModule::highest_weight(&labels);
            assert_eq!(m.dim() as u128, weyl_dimension(&labels), "{labels:?}");
        }
        assert_eq!(weyl_dimension(&[1, 1]), 8);
        assert_eq!(weyl_dimension(&[2, 0]), 6);
    }

    #[test]
    fn modules_satisfy_relations() {
        for m in [
            FiniteModule::trivial(3),
            FiniteModule::vector(3),
            FiniteModule::adjoint(3),
            FiniteModule::highest_weight(&[2, 1]),
            FiniteModule::highest_weight(&[1, 0, 1]),
            FiniteModule::highest_weight(&[4]),
            FiniteModule::sl2_verma_truncated(frac(1, 2), 6),
        ] {
            m.check_bracket_fidelity().unwrap();
        }
    }

    #[test]
    fn broken_module_is_caught() {
        let mut m = FiniteModule::vector(2);
        m.action.insert((0, 1), SparseMatrix::identity(2));
        assert!(matches!(m.check_bracket_fidelity(), Err(Error::BracketFidelity(_))));
    }

    #[test]
    fn trivial_module_principal_sl2() {
        let g = grading("2");
        let cx = build_complex(&FiniteModule::trivial(2), &g, ComplexOptions::default()).unwrap();
        assert_eq!(cx.chain_dims(), vec![1, 1]);
        assert_eq!(cx.differentials[0].get(0, 0), int(-1));
        let h = homology(&cx, "trivial");
        assert_eq!(h.dims, vec![0, 0]);
    }

    #[test]
    fn zero_nilpotent_keeps_module() {
        let g = grading("1,1");
        let h = module_homology(&FiniteModule::highest_weight(&[3]), &g, ComplexOptions::default()).unwrap();
        assert_eq!(h.dims, vec![4]);
    }

    #[test]
    fn adjoint_principal_sl3() {
        let g = grading("3");
        let cx = build_complex(&FiniteModule::adjoint(3), &g, ComplexOptions::default()).unwrap();
        assert_eq!(cx.chain_dims(), vec![8, 24, 24, 8]);
        let h = homology(&cx, "adjoint");
        assert!(h.vanishes());
        assert!(h.euler_characteristic_ok);
    }

    #[test]
    fn chi_rescaling_and_variant() {
        let g = grading("1,2");
        let m = FiniteModule::highest_weight(&[1, 1]);
        let a = module_homology(&m, &g, ComplexOptions::default()).unwrap();
        let b = module_homology(
            &m,
            &g,
            ComplexOptions {
                chi_scale: int(2),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.dims, b.dims);
        assert!(a.vanishes());
        let nminus = module_homology(
            &m,
            &g,
            ComplexOptions {
                variant: Variant::NegativeNilradical,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(nminus.chain_dims.len(), 4);
    }

    #[test]
    fn verma_truncation_stabilizes() {
        let g = grading("2");
        let h = sl2_verma_homology(frac(1, 2), 5, &g).unwrap();
        assert_eq!(h.dims, vec![1, 0]);
        assert!(h.truncation.unwrap().stabilized);
    }

    #[test]
    fn bk_examples_agree() {
        let g = grading("2");
        let cases = verify_bk_consistency(&[int(1), int(4), frac(1, 2), int(-3), int(0)], &g, 6).unwrap();
        assert!(cases.iter().all(|c| c.agree), "{cases:?}");
        assert_eq!(cases[0].h0, 0);
        assert_eq!(cases[2].h0, 1);
    }

    #[test]
    fn dominant_weight_lists() {
        assert_eq!(dominant_weights_up_to(2, 5).len(), 5);
        let w = dominant_weights_up_to(3, 10);
        assert!(w.contains(&vec![1, 1]) && w.contains(&vec![3, 0]) && !w.contains(&vec![2, 1]));
    }
}
