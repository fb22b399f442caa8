//! Type-A root data attached to a nilpotent orbit.
//!
//! A nilpotent `f` in `sl_n` is given by a partition (its Jordan block sizes).
//! Boxes of the diagram are numbered `1..n` down columns from left to right;
//! this fixes the even good grading, the Levi roots (same column), the roots
//! vanishing on the centralizer Cartan (same row), and everything derived
//! from them. Indices are 0-based in code and 1-based in serialized output.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::rational::{frac, int, Rational};

/// Jordan type of a nilpotent element: positive parts, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable();
        let n: usize = parts.iter().sum();
        if n < 2 {
            return Err(Error::InvalidPartition(format!("n = {n} < 2")));
        }
        Ok(Self { parts })
    }

    /// Parses a comma-separated list such as `"2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn principal(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    /// All partitions of `n`, in lexicographic order of their ascending part lists.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining == 0 {
                out.push(cur.clone());
                return;
            }
            for part in min..=remaining {
                cur.push(part);
                rec(remaining - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 2 {
            rec(n, 1, &mut Vec::new(), &mut out);
        }
        out.into_iter().map(|parts| Partition { parts }).collect()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_principal(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// `dim` of the centralizer of `f` in `sl_n`: `sum_{i,j} min(p_i, p_j) - 1`.
    pub fn centralizer_dim(&self) -> usize {
        let mut s = 0;
        for &a in &self.parts {
            for &b in &self.parts {
                s += a.min(b);
            }
        }
        s - 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.parts)
    }
}

/// The root `e_i - e_j` of `sl_n` (0-based, `i != j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "e_i - e_i is not a root");
        Self { i, j }
    }

    pub fn neg(self) -> Self {
        Self {
            i: self.j,
            j: self.i,
        }
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    /// `<mu, alpha^vee> = mu_i - mu_j`.
    pub fn pair(self, mu: &[Rational]) -> Rational {
        mu[self.i] - mu[self.j]
    }

    /// The root as an `e`-coordinate vector of length `n`.
    pub fn vector(self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[self.i] = int(1);
        v[self.j] = int(-1);
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({},{})", self.i + 1, self.j + 1)
    }
}

pub fn all_roots(n: usize) -> Vec<Root> {
    let mut v = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                v.push(Root::new(i, j));
            }
        }
    }
    v
}

pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(Root::new(i, j));
        }
    }
    v
}

/// `rho` in canonical coordinates (last coordinate 0): `(n-1, n-2, ..., 0)`.
pub fn rho_canonical(n: usize) -> Vec<Rational> {
    (0..n).map(|i| int((n - 1 - i) as i64)).collect()
}

/// Even good grading of `sl_n` attached to a partition.
///
/// The grading element is `x0 = -diag(col)` (made trace free), so
/// `deg(a(i,j)) = col(j) - col(i)` and the positive system `{a(i,j) : i < j}`
/// splits as `Delta_{0,+} ⊔ Delta_{>0}`. The nilpotent is
/// `f = sum E_{b,a}` over horizontally adjacent boxes `a | b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodGrading {
    partition: Partition,
    n: usize,
    col: Vec<usize>,
    row: Vec<usize>,
    x0: Vec<Rational>,
    h0: Vec<i64>,
    fsupport: Vec<(usize, usize)>,
    delta0_plus: Vec<Root>,
    delta_f: Vec<Root>,
    delta_pos: Vec<Root>,
    delta_neg: Vec<Root>,
    rhobar: Vec<Rational>,
    dchi: usize,
}

impl GoodGrading {
    pub fn new(partition: &Partition) -> Result<Self> {
        let parts = partition.parts();
        let n = partition.n();
        let width = *parts.last().expect("nonempty");
        let mut col = vec![0; n];
        let mut row = vec![0; n];
        let mut h0 = vec![0; n];
        let mut grid = vec![vec![usize::MAX; width]; parts.len()];
        let mut next = 0;
        for c in 0..width {
            for (r, &len) in parts.iter().enumerate() {
                if len > c {
                    col[next] = c + 1;
                    row[next] = r + 1;
                    h0[next] = len as i64 + 1 - 2 * (c as i64 + 1);
                    grid[r][c] = next;
                    next += 1;
                }
            }
        }
        let mean = frac(col.iter().sum::<usize>() as i64, n as i64);
        let x0 = col.iter().map(|&c| mean - int(c as i64)).collect();
        let mut fsupport = Vec::new();
        for (r, &len) in parts.iter().enumerate() {
            for c in 0..len.saturating_sub(1) {
                fsupport.push((grid[r][c], grid[r][c + 1]));
            }
        }
        fsupport.sort_unstable();

        let mut g = Self {
            partition: partition.clone(),
            n,
            col,
            row,
            x0,
            h0,
            fsupport,
            delta0_plus: Vec::new(),
            delta_f: Vec::new(),
            delta_pos: Vec::new(),
            delta_neg: Vec::new(),
            rhobar: (0..n)
                .map(|i| frac(n as i64 + 1, 2) - int(i as i64 + 1))
                .collect(),
            dchi: 0,
        };
        for a in all_roots(n) {
            let d = g.degree(a);
            if d == 0 && a.is_positive() {
                g.delta0_plus.push(a);
            }
            if g.row[a.i] == g.row[a.j] {
                g.delta_f.push(a);
            }
            if d > 0 {
                g.delta_pos.push(a);
            }
            if d < 0 {
                g.delta_neg.push(a);
            }
        }
        g.dchi = g.delta_neg.len();
        Ok(g)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based column of box `b`.
    pub fn col(&self, b: usize) -> usize {
        self.col[b]
    }

    /// 1-based row of box `b`.
    pub fn row(&self, b: usize) -> usize {
        self.row[b]
    }

    pub fn degree(&self, a: Root) -> i64 {
        self.col[a.j] as i64 - self.col[a.i] as i64
    }

    pub fn x0(&self) -> &[Rational] {
        &self.x0
    }

    pub fn h0(&self) -> &[i64] {
        &self.h0
    }

    /// Horizontally adjacent box pairs `(left, right)`.
    pub fn fsupport(&self) -> &[(usize, usize)] {
        &self.fsupport
    }

    /// Roots `-alpha` whose root vectors make up `f` (degree -1).
    pub fn f_roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.fsupport.iter().map(|&(l, r)| Root::new(r, l))
    }

    pub fn delta0_plus(&self) -> &[Root] {
        &self.delta0_plus
    }

    pub fn delta_f(&self) -> &[Root] {
        &self.delta_f
    }

    pub fn delta_f_plus(&self) -> impl Iterator<Item = Root> + '_ {
        self.delta_f.iter().copied().filter(|a| a.is_positive())
    }

    /// Roots of positive degree.
    pub fn delta_pos(&self) -> &[Root] {
        &self.delta_pos
    }

    /// Roots of negative degree (`g_{<0}`), lexicographically ordered.
    pub fn delta_neg(&self) -> &[Root] {
        &self.delta_neg
    }

    /// `Delta_+ = Delta_{0,+} ⊔ Delta_{>0}`.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut v: Vec<Root> = self
            .delta0_plus
            .iter()
            .chain(&self.delta_pos)
            .copied()
            .collect();
        v.sort_unstable();
        v
    }

    pub fn in_delta0(&self, a: Root) -> bool {
        self.col[a.i] == self.col[a.j]
    }

    pub fn in_delta_f(&self, a: Root) -> bool {
        self.row[a.i] == self.row[a.j]
    }

    /// Half-sum of positive roots, trace free.
    pub fn rhobar(&self) -> &[Rational] {
        &self.rhobar
    }

    pub fn dchi(&self) -> usize {
        self.dchi
    }

    /// Boxes of each row, left to right.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.partition.num_rows()];
        for b in 0..self.n {
            rows[self.row[b] - 1].push(b);
        }
        rows
    }

    /// The matrix of `f` in the standard representation.
    pub fn f_matrix(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.n, self.n);
        for a in self.f_roots() {
            m.set(a.i, a.j, int(1));
        }
        m
    }

    /// Checks the defining properties of the grading with exact ranks.
    pub fn audit(&self) -> Result<GradingAudit> {
        let n = self.n;
        let f = self.f_matrix();
        let unit = |a: usize, b: usize| {
            let mut m = SparseMatrix::zeros(n, n);
            m.set(a, b, int(1));
            m
        };
        let cartan: Vec<SparseMatrix> = (0..n - 1)
            .map(|k| unit(k, k).sub(&unit(k + 1, k + 1)))
            .collect();

        for a in self.f_roots() {
            if self.degree(a) != -1 {
                return Err(Error::GradingAudit(format!("f has a component in degree {}", self.degree(a))));
            }
            if self.h0[a.i] - self.h0[a.j] != -2 {
                return Err(Error::GradingAudit("[h0, f] != -2 f".into()));
            }
        }

        // ad f : g_{<=0} -> g_{<0}
        let nonpos: Vec<SparseMatrix> = all_roots(n)
            .into_iter()
            .filter(|&a| self.degree(a) <= 0)
            .map(|a| unit(a.i, a.j))
            .chain(cartan.iter().cloned())
            .collect();
        let neg_index = |r: usize, c: usize| self.delta_neg.iter().position(|a| a.i == r && a.j == c);
        let mut adf = SparseMatrix::zeros(self.delta_neg.len(), nonpos.len());
        for (col, x) in nonpos.iter().enumerate() {
            for (r, c, v) in f.commutator(x).entries() {
                let row = neg_index(r, c).ok_or_else(|| {
                    Error::GradingAudit("ad f leaves g_{<0}".into())
                })?;
                adf.set(row, col, v);
            }
        }
        let rank_nonpos = adf.rank();

        // ad f on all of sl_n
        let full: Vec<SparseMatrix> = all_roots(n)
            .into_iter()
            .map(|a| unit(a.i, a.j))
            .chain(cartan)
            .collect();
        let mut adf_full = SparseMatrix::zeros(n * n, full.len());
        for (col, x) in full.iter().enumerate() {
            for (r, c, v) in f.commutator(x).entries() {
                adf_full.set(r * n + c, col, v);
            }
        }
        let centralizer = full.len() - adf_full.rank();

        let audit = GradingAudit {
            dim_neg: self.delta_neg.len(),
            rank_ad_f: rank_nonpos,
            surjective: rank_nonpos == self.delta_neg.len(),
            centralizer_dim: centralizer,
            centralizer_dim_formula: self.partition.centralizer_dim(),
            dchi_from_orbit: (n * n - 1 - centralizer) / 2,
        };
        if !audit.surjective {
            return Err(Error::GradingAudit(format!(
                "ad f has rank {} on g_<=0, expected {}",
                audit.rank_ad_f, audit.dim_neg
            )));
        }
        if audit.centralizer_dim != audit.centralizer_dim_formula || audit.dchi_from_orbit != self.dchi {
            return Err(Error::GradingAudit(format!("dimension mismatch: {audit:?}")));
        }
        Ok(audit)
    }

    pub fn to_json(&self) -> GradingJson {
        let n = self.n;
        let bitmap = |pred: &dyn Fn(Root) -> bool| -> Vec<Vec<u8>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| u8::from(i != j && pred(Root::new(i, j))))
                        .collect()
                })
                .collect()
        };
        GradingJson {
            schema: 1,
            partition: self.partition.clone(),
            n,
            boxes: (0..n)
                .map(|b| BoxJson {
                    index: b + 1,
                    row: self.row[b],
                    col: self.col[b],
                    h0: self.h0[b],
                    x0: crate::rational::format_rational(&self.x0[b]),
                })
                .collect(),
            degrees: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { 0 } else { self.degree(Root::new(i, j)) })
                        .collect()
                })
                .collect(),
            fsupport: self.fsupport.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
            delta0_plus: bitmap(&|a| a.is_positive() && self.in_delta0(a)),
            delta_f: bitmap(&|a| self.in_delta_f(a)),
            delta_pos: bitmap(&|a| self.degree(a) > 0),
            delta_neg: bitmap(&|a| self.degree(a) < 0),
            rhobar: self.rhobar.iter().map(crate::rational::format_rational).collect(),
            d_chi: self.dchi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingAudit {
    pub dim_neg: usize,
    pub rank_ad_f: usize,
    pub surjective: bool,
    pub centralizer_dim: usize,
    pub centralizer_dim_formula: usize,
    pub dchi_from_orbit: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxJson {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    pub h0: i64,
    pub x0: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradingJson {
    pub schema: u32,
    pub partition: Partition,
    pub n: usize,
    pub boxes: Vec<BoxJson>,
    pub degrees: Vec<Vec<i64>>,
    pub fsupport: Vec<(usize, usize)>,
    pub delta0_plus: Vec<Vec<u8>>,
    pub delta_f: Vec<Vec<u8>>,
    pub delta_pos: Vec<Vec<u8>>,
    pub delta_neg: Vec<Vec<u8>>,
    pub rhobar: Vec<String>,
    pub d_chi: usize,
}

pub fn build_grading(partition: &Partition) -> Result<GoodGrading> {
    GoodGrading::new(partition)
}

/// `t = h^f`, the diagonal matrices constant on rows, with the restriction map
/// from weights.
///
/// A weight restricts to the tuple of its row sums, computed on the trace-free
/// representative. The tuple sums to zero and is a faithful coordinate on
/// `t^*`; it does not depend on the representative modulo `(1, ..., 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerCartan {
    n: usize,
    row_of: Vec<usize>,
    row_len: Vec<usize>,
}

impl CentralizerCartan {
    pub fn new(g: &GoodGrading) -> Self {
        Self {
            n: g.n(),
            row_of: (0..g.n()).map(|b| g.row(b) - 1).collect(),
            row_len: g.partition().parts().to_vec(),
        }
    }

    pub fn r(&self) -> usize {
        self.row_len.len()
    }

    /// Indicator diagonal of each row.
    pub fn zbasis(&self) -> Vec<Vec<u8>> {
        (0..self.r())
            .map(|i| (0..self.n).map(|b| u8::from(self.row_of[b] == i)).collect())
            .collect()
    }

    pub fn restrict(&self, mu: &[Rational]) -> Vec<Rational> {
        assert_eq!(mu.len(), self.n);
        let total: Rational = mu.iter().copied().sum();
        let mut out = vec![Rational::zero(); self.r()];
        for (b, v) in mu.iter().enumerate() {
            out[self.row_of[b]] += v;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o -= total * frac(self.row_len[i] as i64, self.n as i64);
        }
        out
    }

    pub fn restrict_root(&self, a: Root) -> Vec<i64> {
        let mut out = vec![0; self.r()];
        out[self.row_of[a.i]] += 1;
        out[self.row_of[a.j]] -= 1;
        out
    }

    pub fn row_of(&self, b: usize) -> usize {
        self.row_of[b]
    }

    /// Height along the row-order cone: `h(xi) = -sum_i (i+1) xi_i`.
    /// Every `alpha` in `Delta_{0,+}` has `h(alpha|_t) >= 1`.
    pub fn height(xi: &[i64]) -> i64 {
        xi.iter()
            .enumerate()
            .map(|(i, &x)| -(i as i64 + 1) * x)
            .sum()
    }
}

pub fn centralizer_cartan(g: &GoodGrading) -> CentralizerCartan {
    CentralizerCartan::new(g)
}

/// `W^f`: permutations of boxes within each row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPermutationGroup {
    rows: Vec<Vec<usize>>,
    generators: Vec<(usize, usize)>,
    order: u128,
}

impl RowPermutationGroup {
    pub fn new(g: &GoodGrading) -> Self {
        let rows = g.rows();
        let generators = rows
            .iter()
            .flat_map(|r| r.windows(2).map(|w| (w[0], w[1])))
            .collect();
        let order = rows
            .iter()
            .map(|r| (1..=r.len() as u128).product::<u128>())
            .product();
        Self {
            rows,
            generators,
            order,
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Adjacent transpositions within rows.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Applies a transposition of coordinates.
    pub fn apply<T: Clone>(v: &[T], gen: (usize, usize)) -> Vec<T> {
        let mut out = v.to_vec();
        out.swap(gen.0, gen.1);
        out
    }

    /// Orbit representative: coordinates sorted (descending) within each row.
    pub fn canonical<T: Clone + Ord>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for r in &self.rows {
            let mut vals: Vec<T> = r.iter().map(|&b| v[b].clone()).collect();
            vals.sort_unstable_by(|a, b| b.cmp(a));
            for (&b, val) in r.iter().zip(vals) {
                out[b] = val;
            }
        }
        out
    }

    /// True when every generator fixes each row indicator `z_i`.
    pub fn fixes_centralizer_cartan(&self, c: &CentralizerCartan) -> bool {
        c.zbasis()
            .iter()
            .all(|z| self.generators.iter().all(|&g| Self::apply(z, g) == *z))
    }
}

pub fn wf_group(g: &GoodGrading) -> RowPermutationGroup {
    RowPermutationGroup::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grading(s: &str) -> GoodGrading {
        GoodGrading::new(&Partition::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::parse("2,x").is_err());
        assert_eq!(Partition::parse("3,1").unwrap().parts(), &[1, 3]);
        assert_eq!(Partition::parse("3,1").unwrap().to_string(), "1,3");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (2..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn box_numbering_two_two() {
        let g = grading("2,2");
        assert_eq!(g.rows(), vec![vec![0, 2], vec![1, 3]]);
        assert!(g.delta0_plus().contains(&Root::new(0, 1)));
        assert!(g.delta0_plus().contains(&Root::new(2, 3)));
        let fplus: Vec<Root> = g.delta_f_plus().collect();
        assert_eq!(fplus, vec![Root::new(0, 2), Root::new(1, 3)]);
        assert_eq!(g.dchi(), 4);
        assert_eq!((15 - Partition::parse("2,2").unwrap().centralizer_dim()) / 2, 4);
    }

    #[test]
    fn numbering_goes_down_columns() {
        for p in Partition::all(7) {
            let g = GoodGrading::new(&p).unwrap();
            for b in 1..g.n() {
                let prev = (g.col(b - 1), g.row(b - 1));
                let cur = (g.col(b), g.row(b));
                assert!(prev < cur, "{p}: box order broken at {b}");
            }
        }
    }

    #[test]
    fn zero_nilpotent_has_trivial_grading() {
        let g = grading("1,1,1,1");
        assert!(all_roots(4).into_iter().all(|a| g.degree(a) == 0));
        assert!(g.delta_f().is_empty());
        assert_eq!(g.dchi(), 0);
        assert_eq!(g.delta0_plus().len(), 6);
    }

    #[test]
    fn h0_drops_by_two_along_rows() {
        let g = grading("1,3");
        // row of length 3: boxes 2, 3, 4 (1-based) in columns 1..3
        assert_eq!(g.h0(), &[0, 2, 0, -2]);
        for &(l, r) in g.fsupport() {
            assert_eq!(g.h0()[r] - g.h0()[l], -2);
        }
    }

    #[test]
    fn positive_system_splits() {
        for p in Partition::all(6) {
            let g = GoodGrading::new(&p).unwrap();
            let pos = g.positive_roots();
            assert_eq!(pos, positive_roots(6));
            let half: Vec<Rational> = {
                let mut v = vec![Rational::zero(); 6];
                for a in &pos {
                    v[a.i] += frac(1, 2);
                    v[a.j] -= frac(1, 2);
                }
                v
            };
            assert_eq!(half, g.rhobar());
        }
    }

    #[test]
    fn audit_small() {
        for s in ["2", "1,1", "3", "1,2", "2,2", "1,3", "1,1,2"] {
            let a = grading(s).audit().unwrap();
            assert!(a.surjective);
        }
    }

    #[test]
    fn centralizer_cartan_restrictions() {
        let g = grading("4");
        let c = CentralizerCartan::new(&g);
        assert_eq!(c.r(), 1);
        assert_eq!(c.restrict_root(Root::new(0, 1)), vec![0]);

        let g = grading("2,2");
        let c = CentralizerCartan::new(&g);
        assert_eq!(c.restrict_root(Root::new(0, 1)), vec![1, -1]);
        assert_eq!(c.restrict(&Root::new(0, 1).vector(4)), vec![int(1), int(-1)]);

        let g = grading("1,1");
        let c = CentralizerCartan::new(&g);
        assert_eq!(c.restrict_root(Root::new(0, 1)), vec![1, -1]);
    }

    #[test]
    fn restriction_kills_same_row_and_not_same_column() {
        for p in Partition::all(6) {
            let g = GoodGrading::new(&p).unwrap();
            let c = CentralizerCartan::new(&g);
            let zsum: Vec<u8> = (0..6).map(|b| c.zbasis().iter().map(|z| z[b]).sum()).collect();
            assert_eq!(zsum, vec![1; 6]);
            for a in g.delta_f() {
                assert!(c.restrict_root(*a).iter().all(|&x| x == 0));
            }
            for a in g.delta0_plus() {
                assert!(c.restrict_root(*a).iter().any(|&x| x != 0));
                assert!(CentralizerCartan::height(&c.restrict_root(*a)) >= 1);
            }
        }
    }

    #[test]
    fn restriction_ignores_shift() {
        let g = grading("1,2,3");
        let c = CentralizerCartan::new(&g);
        let mu: Vec<Rational> = (0..6).map(|i| frac(i * i - 3, 7)).collect();
        let shifted: Vec<Rational> = mu.iter().map(|x| x + frac(5, 3)).collect();
        assert_eq!(c.restrict(&mu), c.restrict(&shifted));
    }

    #[test]
    fn row_group_orders() {
        assert_eq!(wf_group(&grading("2")).order(), 2);
        assert_eq!(wf_group(&grading("1,1,1")).order(), 1);
        assert!(wf_group(&grading("1,1,1")).generators().is_empty());
        assert_eq!(wf_group(&grading("1,3")).order(), 6);
        let g = grading("2,3");
        let w = wf_group(&g);
        assert_eq!(w.order(), 12);
        assert!(w.fixes_centralizer_cartan(&CentralizerCartan::new(&g)));
    }
}
