//! Euler-Poincare characters of the BRST reduction of admissible modules,
//! restricted to `t = h^f + C D`, and the top layer `phi_{lambda,0}`.
//!
//! Characters are sparse integer series in `q = e^{-delta|_t}` and the
//! restricted weights, written relative to `e^{lambda|_t} q^{-<lambda,D>}`.
//! The `q^0` denominator `prod (1 - e^{-alpha|_t})` over `Delta_{0,+}` has no
//! finite expansion; it is expanded as a geometric series in the row cone up
//! to a total degree `T`, and only coefficients that no omitted cone term can
//! reach are reported.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};
use crate::rootdata::{CentralizerCartan, GoodGrading, RowPermutationGroup};
use crate::weights::{orbit_bfs, AffineWeight};

/// `(q-degree, restricted weight)`.
pub type TermKey = (u32, Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterOffset {
    /// `<lambda, D>`.
    #[serde(with = "crate::rational::serde_rational")]
    pub dcomp: Rational,
    /// `lambda|_t`.
    #[serde(with = "crate::rational::serde_rational::vec")]
    pub xi: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityCertificate {
    /// Cone depth the result was compared against (`T - 1`), if any.
    pub compared_depth: Option<u32>,
    pub compared_terms: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalCharacter {
    pub offset: CharacterOffset,
    pub r: usize,
    pub order: u32,
    pub cone_depth: u32,
    /// Per q-degree: restricted weights of height above this bound are exact.
    /// `None` means the whole layer is exact.
    pub window: Vec<Option<i64>>,
    /// Certified nonzero coefficients.
    pub terms: BTreeMap<TermKey, i128>,
    pub certificate: StabilityCertificate,
}

impl FormalCharacter {
    pub fn coefficient(&self, d: u32, xi: &[i64]) -> i128 {
        self.terms.get(&(d, xi.to_vec())).copied().unwrap_or(0)
    }

    pub fn in_window(&self, d: u32, xi: &[i64]) -> bool {
        if d > self.order {
            return false;
        }
        match self.window[d as usize] {
            None => true,
            Some(bound) => CentralizerCartan::height(xi) > bound,
        }
    }

    /// Coefficients summed over restricted weights, per q-degree.
    pub fn q_series(&self) -> Vec<i128> {
        let mut out = vec![0; self.order as usize + 1];
        for ((d, _), c) in &self.terms {
            out[*d as usize] += c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Compares with another expansion of the same character on `self`'s
    /// certified window. Returns the first disagreement.
    pub fn agrees_within(&self, other: &FormalCharacter) -> std::result::Result<usize, String> {
        let mut checked = 0;
        let keys = self.terms.keys().chain(other.terms.keys());
        for (d, xi) in keys {
            if !self.in_window(*d, xi) {
                continue;
            }
            let a = self.coefficient(*d, xi);
            let b = other.coefficient(*d, xi);
            if a != b {
                return Err(format!("coefficient at q^{d} e^{xi:?}: {a} vs {b}"));
            }
            checked += 1;
        }
        Ok(checked)
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            schema: 1,
            offset: self.offset.clone(),
            order: self.order,
            cone_depth: self.cone_depth,
            window: self.window.clone(),
            terms: self
                .terms
                .iter()
                .map(|((d, xi), c)| (*d, xi.clone(), c.to_string()))
                .collect(),
            q_series: self.q_series().iter().map(ToString::to_string).collect(),
            certificate: self.certificate.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterJson {
    pub schema: u32,
    pub offset: CharacterOffset,
    pub order: u32,
    pub cone_depth: u32,
    pub window: Vec<Option<i64>>,
    /// `[d, xi, coefficient]`; coefficients are decimal strings.
    pub terms: Vec<(u32, Vec<i64>, String)>,
    pub q_series: Vec<String>,
    pub certificate: StabilityCertificate,
}

type Layers = Vec<HashMap<Vec<i64>, i128>>;

fn add_term(layer: &mut HashMap<Vec<i64>, i128>, xi: Vec<i64>, c: i128) {
    let e = layer.entry(xi).or_insert(0);
    *e += c;
    if *e == 0 {
        // removal keeps layers sparse; key is re-created on demand
    }
}

fn prune(layers: &mut Layers) {
    for l in layers.iter_mut() {
        l.retain(|_, c| *c != 0);
    }
}

/// Divides in place by `(1 - q^m e^{gamma})`, keeping q-degrees `<= order`.
fn divide_geometric(layers: &mut Layers, m: usize, gamma: &[i64]) {
    for d in m..layers.len() {
        let src: Vec<(Vec<i64>, i128)> = layers[d - m].iter().map(|(k, v)| (k.clone(), *v)).collect();
        for (xi, c) in src {
            let shifted: Vec<i64> = xi.iter().zip(gamma).map(|(a, b)| a + b).collect();
            add_term(&mut layers[d], shifted, c);
        }
    }
    prune(layers);
}

/// Restricted weight of `point - base` as an integer tuple.
fn restricted_difference(c: &CentralizerCartan, point: &[Rational], base: &[Rational]) -> Vec<i64> {
    let diff: Vec<Rational> = point.iter().zip(base).map(|(a, b)| a - b).collect();
    c.restrict(&diff)
        .into_iter()
        .map(|x| {
            assert!(x.is_integer(), "orbit difference restricts to a non-integral weight");
            x.to_integer()
        })
        .collect()
}

/// Numerator times the `q`-dependent denominators, before the cone inversion.
fn pre_cone_layers(lambda: &AffineWeight, g: &GoodGrading, c: &CentralizerCartan, order: u32) -> Result<Layers> {
    let n = g.n();
    let r = c.r();
    let order_us = order as usize;
    let orbit = orbit_bfs(lambda, order as i64)?;
    let base = lambda.shifted();
    let mut layers: Layers = vec![HashMap::new(); order_us + 1];
    for t in &orbit {
        let xi = restricted_difference(c, t.point.classical(), base.classical());
        add_term(&mut layers[t.depth as usize], xi, i128::from(t.sign));
    }
    prune(&mut layers);

    let zero = vec![0i64; r];
    for j in 1..=order_us {
        for _ in 0..n - 1 {
            divide_geometric(&mut layers, j, &zero);
        }
    }
    for a in g.delta0_plus() {
        let abar = c.restrict_root(*a);
        let neg: Vec<i64> = abar.iter().map(|x| -x).collect();
        for m in 1..=order_us {
            divide_geometric(&mut layers, m, &neg);
            divide_geometric(&mut layers, m, &abar);
        }
    }
    Ok(layers)
}

/// `prod_{alpha in Delta_{0,+}} 1/(1 - e^{-alpha|_t})` up to total degree `depth`.
fn cone_series(g: &GoodGrading, c: &CentralizerCartan, depth: u32) -> HashMap<Vec<i64>, i128> {
    let mut cur: HashMap<(u32, Vec<i64>), i128> = HashMap::new();
    cur.insert((0, vec![0; c.r()]), 1);
    for a in g.delta0_plus() {
        let step: Vec<i64> = c.restrict_root(*a).iter().map(|x| -x).collect();
        let mut next: HashMap<(u32, Vec<i64>), i128> = HashMap::new();
        for ((deg, xi), coef) in &cur {
            let mut v = xi.clone();
            for k in 0..=(depth - deg) {
                *next.entry((deg + k, v.clone())).or_insert(0) += coef;
                for (x, s) in v.iter_mut().zip(&step) {
                    *x += s;
                }
            }
        }
        cur = next;
    }
    let mut out = HashMap::new();
    for ((_, xi), coef) in cur {
        *out.entry(xi).or_insert(0) += coef;
    }
    out
}

fn min_cone_height(g: &GoodGrading, c: &CentralizerCartan) -> Option<i64> {
    g.delta0_plus()
        .iter()
        .map(|a| CentralizerCartan::height(&c.restrict_root(*a)))
        .min()
}

/// Applies the cone inversion at depth `depth`; returns certified terms and the window.
fn apply_cone(
    pre: &Layers,
    g: &GoodGrading,
    c: &CentralizerCartan,
    depth: u32,
) -> (BTreeMap<TermKey, i128>, Vec<Option<i64>>) {
    let hmin = min_cone_height(g, c);
    let cone = cone_series(g, c, depth);
    let mut terms = BTreeMap::new();
    let mut window = Vec::with_capacity(pre.len());
    for (d, layer) in pre.iter().enumerate() {
        let bound = hmin.and_then(|h| {
            layer
                .keys()
                .map(|xi| CentralizerCartan::height(xi))
                .max()
                .map(|hmax| hmax - (i64::from(depth) + 1) * h)
        });
        // an empty layer stays empty at every depth
        let bound = if hmin.is_some() && layer.is_empty() { None } else { bound };
        window.push(bound);
        let mut out: HashMap<Vec<i64>, i128> = HashMap::new();
        for (xi, a) in layer {
            for (eta, b) in &cone {
                let key: Vec<i64> = xi.iter().zip(eta).map(|(x, y)| x + y).collect();
                if bound.is_some_and(|bd| CentralizerCartan::height(&key) <= bd) {
                    continue;
                }
                *out.entry(key).or_insert(0) += a * b;
            }
        }
        for (xi, v) in out {
            if v != 0 {
                terms.insert((d as u32, xi), v);
            }
        }
    }
    (terms, window)
}

/// Euler-Poincare character of `H^BRST(L(lambda))` to q-order `order`, with
/// the row-cone expansion of the `q^0` denominator taken to depth `cone_depth`.
pub fn euler_character(
    lambda: &AffineWeight,
    g: &GoodGrading,
    c: &CentralizerCartan,
    order: u32,
    cone_depth: u32,
) -> Result<FormalCharacter> {
    if lambda.n() != g.n() {
        return Err(Error::InvalidInput("rank mismatch between weight and grading".into()));
    }
    let dcomp = lambda.dcomp().unwrap_or_else(Rational::zero);
    let lam = lambda.clone().with_dcomp(Some(dcomp));
    let pre = pre_cone_layers(&lam, g, c, order)?;
    let (terms, window) = apply_cone(&pre, g, c, cone_depth);

    let certificate = if cone_depth == 0 || g.delta0_plus().is_empty() {
        StabilityCertificate {
            compared_depth: None,
            compared_terms: 0,
            passed: true,
        }
    } else {
        let (t2, w2) = apply_cone(&pre, g, c, cone_depth - 1);
        let coarse = FormalCharacter {
            offset: CharacterOffset { dcomp, xi: Vec::new() },
            r: c.r(),
            order,
            cone_depth: cone_depth - 1,
            window: w2,
            terms: t2,
            certificate: StabilityCertificate {
                compared_depth: None,
                compared_terms: 0,
                passed: true,
            },
        };
        let fine = FormalCharacter {
            offset: coarse.offset.clone(),
            r: c.r(),
            order,
            cone_depth,
            window: window.clone(),
            terms: terms.clone(),
            certificate: coarse.certificate.clone(),
        };
        match coarse.agrees_within(&fine) {
            Ok(n) => StabilityCertificate {
                compared_depth: Some(cone_depth - 1),
                compared_terms: n,
                passed: true,
            },
            Err(msg) => return Err(Error::StabilityFailure(msg)),
        }
    };

    Ok(FormalCharacter {
        offset: CharacterOffset {
            dcomp,
            xi: c.restrict(lambda.classical()),
        },
        r: c.r(),
        order,
        cone_depth,
        window,
        terms,
        certificate,
    })
}

/// Limit of `phi_{lambda,0}` at the origin of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimLimit {
    Finite(BigRational),
    Zero,
    Divergent,
}

impl DimLimit {
    pub fn is_almost_convergent(&self) -> bool {
        matches!(self, DimLimit::Finite(_))
    }

    pub fn as_string(&self) -> String {
        match self {
            DimLimit::Finite(r) if r.is_integer() => r.numer().to_string(),
            DimLimit::Finite(r) => format!("{}/{}", r.numer(), r.denom()),
            DimLimit::Zero => "zero".into(),
            DimLimit::Divergent => "divergent".into(),
        }
    }
}

impl Serialize for DimLimit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Phi0 {
    /// `(scaled restricted weight relative to lambda + rho, coefficient)`.
    pub numerator: Vec<(Vec<i64>, i64)>,
    /// Scaled `alpha|_t` for `alpha` in `Delta_{0,+}`.
    pub denominator: Vec<Vec<i64>>,
    /// Common factor by which restricted weights above are scaled.
    pub scale: i64,
    /// `|W(lambda_bar)|`.
    pub group_order: u64,
    pub dimlimit: DimLimit,
}

/// Permutations of `items` with their signs, as `(image, sign)` where `image[i]`
/// is the item placed at position `i`.
fn signed_permutations(items: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur = items.to_vec();
    fn heap(k: usize, cur: &mut Vec<usize>, sign: &mut i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k <= 1 {
            out.push((cur.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, cur, sign, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
            *sign = -*sign;
        }
        heap(k - 1, cur, sign, out);
    }
    let mut sign = 1;
    let len = cur.len();
    heap(len, &mut cur, &mut sign, &mut out);
    out
}

/// Directions used for the limit: strictly decreasing, so every
/// `alpha|_t` with `alpha` in `Delta_{0,+}` pairs positively.
fn direction(r: usize, attempt: usize) -> Vec<i64> {
    let a = [1i64, 7, 13, 29, 43, 61][attempt % 6];
    (0..r as i64).map(|i| -(i + 1) * 1000 - a * i * i).collect()
}

/// `phi_{lambda,0}` for the integer vector `J = scale (lambda_bar + rho_bar)`.
pub fn phi0_scaled(j: &[i64], scale: i64, g: &GoodGrading, c: &CentralizerCartan) -> Result<Phi0> {
    let n = j.len();
    let r = c.r();
    // W(lambda_bar): permutations within residue classes of J mod scale
    let mut classes: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (b, &x) in j.iter().enumerate() {
        classes.entry(x.rem_euclid(scale)).or_default().push(b);
    }
    let group_order: u64 = classes
        .values()
        .map(|v| (1..=v.len() as u64).product::<u64>())
        .product();
    let denominator: Vec<Vec<i64>> = g
        .delta0_plus()
        .iter()
        .map(|a| {
            c.restrict_root(*a)
                .iter()
                .map(|x| x * n as i64 * scale)
                .collect()
        })
        .collect();
    let regular = classes.values().all(|v| {
        let mut vals: Vec<i64> = v.iter().map(|&b| j[b]).collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    });
    if !regular {
        return Ok(Phi0 {
            numerator: Vec::new(),
            denominator,
            scale: n as i64 * scale,
            group_order,
            dimlimit: DimLimit::Zero,
        });
    }

    let base = crate::admissible::restricted_shifted(j, c);
    let mut numerator: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let perms: Vec<Vec<(Vec<usize>, i64)>> = classes.values().map(|v| signed_permutations(v)).collect();
    let mut idx = vec![0usize; perms.len()];
    let mut permuted = j.to_vec();
    loop {
        let mut sign = 1;
        for (cls, (members, &i)) in classes.values().zip(&idx).enumerate() {
            let (image, s) = &perms[cls][i];
            sign *= s;
            for (pos, &src) in members.iter().zip(image) {
                permuted[*pos] = j[src];
            }
        }
        let xi: Vec<i64> = crate::admissible::restricted_shifted(&permuted, c)
            .iter()
            .zip(&base)
            .map(|(a, b)| a - b)
            .collect();
        *numerator.entry(xi).or_insert(0) += sign;
        let mut k = 0;
        loop {
            if k == idx.len() {
                break;
            }
            idx[k] += 1;
            if idx[k] < perms[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    numerator.retain(|_, v| *v != 0);
    let numerator: Vec<(Vec<i64>, i64)> = numerator.into_iter().collect();
    let dimlimit = directional_limit(&numerator, &denominator, r)?;
    Ok(Phi0 {
        numerator,
        denominator,
        scale: n as i64 * scale,
        group_order,
        dimlimit,
    })
}

fn limit_along(numerator: &[(Vec<i64>, i64)], denominator: &[Vec<i64>], eta: &[i64]) -> Option<DimLimit> {
    let dot = |xi: &[i64]| -> i64 { xi.iter().zip(eta).map(|(a, b)| a * b).sum() };
    let b: Vec<i64> = denominator.iter().map(|x| dot(x)).collect();
    if b.contains(&0) {
        return None;
    }
    let order = denominator.len();
    let a: Vec<(BigInt, BigInt)> = numerator
        .iter()
        .map(|(xi, s)| (BigInt::from(dot(xi)), BigInt::from(*s)))
        .collect();
    let mut powers: Vec<BigInt> = a.iter().map(|_| BigInt::one()).collect();
    for k in 0..=order {
        let sum: BigInt = a.iter().zip(&powers).map(|((_, s), pw)| s * pw).sum();
        if !sum.is_zero() {
            if k < order {
                return Some(DimLimit::Divergent);
            }
            let fact: BigInt = (1..=order as u64).map(BigInt::from).product();
            let prod_b: BigInt = b.iter().map(|&x| BigInt::from(x)).product();
            return Some(DimLimit::Finite(BigRational::new(sum, fact * prod_b)));
        }
        for (pw, (ai, _)) in powers.iter_mut().zip(&a) {
            *pw *= ai;
        }
    }
    Some(DimLimit::Zero)
}

fn directional_limit(numerator: &[(Vec<i64>, i64)], denominator: &[Vec<i64>], r: usize) -> Result<DimLimit> {
    let mut results = Vec::new();
    let mut attempt = 0;
    while results.len() < 2 {
        if attempt >= 6 {
            return Err(Error::DegenerateDirection(attempt));
        }
        if let Some(l) = limit_along(numerator, denominator, &direction(r, attempt)) {
            results.push(l);
        }
        attempt += 1;
    }
    // a limit that depends on the direction does not exist
    Ok(if results[0] == results[1] {
        results.swap_remove(0)
    } else {
        DimLimit::Divergent
    })
}

/// `phi_{lambda,0}` for an arbitrary weight.
pub fn phi0(lambda: &AffineWeight, g: &GoodGrading, c: &CentralizerCartan) -> Result<Phi0> {
    let v = lambda.shifted();
    let scale = v
        .classical()
        .iter()
        .fold(1i64, |acc, x| acc.lcm(x.denom()));
    let j: Vec<i64> = v
        .classical()
        .iter()
        .map(|x| (x * scale).to_integer())
        .collect();
    phi0_scaled(&j, scale, g, c)
}

/// `H_0` of the Whittaker reduction of `L(lambda_bar)` is nonzero: no root of
/// `Delta^f_+` pairs with `lambda_bar + rho_bar` to a positive integer.
pub fn bk_nonvanishing(lambda_bar: &[Rational], g: &GoodGrading) -> bool {
    let rho = crate::rootdata::rho_canonical(lambda_bar.len());
    let v: Vec<Rational> = lambda_bar.iter().zip(&rho).map(|(a, b)| a + b).collect();
    g.delta_f_plus().all(|a| {
        let x = a.pair(&v);
        !(x.is_integer() && x.is_positive())
    })
}

/// `mu_bar + rho_bar` lies in the `W^f`-orbit of `lambda_bar + rho_bar`.
pub fn bk_equivalent(lambda_bar: &[Rational], mu_bar: &[Rational], w: &RowPermutationGroup) -> bool {
    let key = |x: &[Rational]| {
        let rho = crate::rootdata::rho_canonical(x.len());
        let v: Vec<Rational> = x.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mean: Rational = v.iter().copied().sum::<Rational>() / int(v.len() as i64);
        let tf: Vec<Rational> = v.iter().map(|y| y - mean).collect();
        w.canonical(&tf)
    };
    key(lambda_bar) == key(mu_bar)
}

/// Outcome of the almost-convergence scan of one partition at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionScan {
    pub partition: String,
    pub mtilde: usize,
    pub almost_convergent: usize,
    pub zero: usize,
    /// First divergent weight (`J` vector), if any; the scan stops there.
    pub divergent: Option<Vec<i64>>,
    /// Every `lambda` in `M~_k` was almost convergent.
    pub all_almost_convergent: bool,
}

impl PartitionScan {
    /// `M~_k` nonempty and every limit finite.
    pub fn is_exceptional(&self) -> bool {
        self.mtilde > 0 && self.divergent.is_none() && self.almost_convergent > 0
    }
}

/// Computes `phi_{lambda,0}` limits over `M~_k`, stopping at the first divergence.
pub fn scan_partition(shifted: &[Vec<i64>], q: i64, g: &GoodGrading) -> Result<PartitionScan> {
    use rayon::prelude::*;
    let c = CentralizerCartan::new(g);
    let mt: Vec<&Vec<i64>> = shifted
        .iter()
        .filter(|j| crate::admissible::in_mtilde(j, q, g))
        .collect();
    let mut scan = PartitionScan {
        partition: g.partition().to_string(),
        mtilde: mt.len(),
        almost_convergent: 0,
        zero: 0,
        divergent: None,
        all_almost_convergent: false,
    };
    for chunk in mt.chunks(256) {
        let limits: Vec<Result<DimLimit>> = chunk
            .par_iter()
            .map(|j| phi0_scaled(j, q, g, &c).map(|p| p.dimlimit))
            .collect();
        for (j, l) in chunk.iter().zip(limits) {
            match l? {
                DimLimit::Finite(_) => scan.almost_convergent += 1,
                DimLimit::Zero => scan.zero += 1,
                DimLimit::Divergent => {
                    scan.divergent = Some((*j).clone());
                    return Ok(scan);
                }
            }
        }
    }
    scan.all_almost_convergent = scan.almost_convergent == scan.mtilde;
    Ok(scan)
}

pub fn format_limit(l: &DimLimit) -> String {
    l.as_string()
}

/// Small helper for reports: the limit as an integer when it is one.
pub fn limit_as_integer(l: &DimLimit) -> Option<i64> {
    match l {
        DimLimit::Finite(r) if r.is_integer() => r.numer().to_i64(),
        _ => None,
    }
}

pub fn describe_offset(o: &CharacterOffset) -> String {
    let xi: Vec<String> = o.xi.iter().map(format_rational).collect();
    format!("d = {}, xi = [{}]", format_rational(&o.dcomp), xi.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::{enumerate, LevelData};
    use crate::rational::frac;
    use crate::rootdata::Partition;

    fn grading(s: &str) -> GoodGrading {
        GoodGrading::new(&Partition::parse(s).unwrap()).unwrap()
    }

    fn partition_counts(n: usize) -> Vec<i128> {
        // coefficients of 1 / prod (1 - q^j)
        let mut p = vec![0i128; n + 1];
        p[0] = 1;
        for j in 1..=n {
            for d in j..=n {
                p[d] += p[d - j];
            }
        }
        p
    }

    #[test]
    fn signed_permutations_are_complete() {
        let perms = signed_permutations(&[0, 1, 2, 3]);
        assert_eq!(perms.len(), 24);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i64>(), 0);
        for (image, sign) in &perms {
            let mut inversions = 0;
            for i in 0..4 {
                for k in i + 1..4 {
                    if image[i] > image[k] {
                        inversions += 1;
                    }
                }
            }
            assert_eq!(*sign, if inversions % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn generic_weight_gives_partition_function() {
        // principal f of sl_2, no integral roots: 1 / prod (1 - q^j)
        let g = grading("2");
        let c = CentralizerCartan::new(&g);
        let lam = AffineWeight::from_shifted_simple(&[frac(1, 3)], 1, frac(-1, 2));
        let ch = euler_character(&lam, &g, &c, 10, 4).unwrap();
        assert_eq!(ch.q_series(), partition_counts(10));

        // sl_3: 1 / prod (1 - q^j)^2
        let g = grading("3");
        let c = CentralizerCartan::new(&g);
        let lam = AffineWeight::from_shifted_simple(&[frac(1, 3), frac(1, 5)], 1, frac(-5, 7));
        let ch = euler_character(&lam, &g, &c, 8, 4).unwrap();
        let p = partition_counts(8);
        let sq: Vec<i128> = (0..=8).map(|d| (0..=d).map(|i| p[i] * p[d - i]).sum()).collect();
        assert_eq!(ch.q_series(), sq);
    }

    #[test]
    fn vacuum_at_three_two_is_one() {
        let level = LevelData::new(2, 3, 2).unwrap();
        let g = grading("2");
        let c = CentralizerCartan::new(&g);
        let set = enumerate(&level, &g).unwrap();
        for w in set.mtilde() {
            let ch = euler_character(&w.weight, &g, &c, 12, 2).unwrap();
            let mut expected = vec![0; 13];
            expected[0] = 1;
            assert_eq!(ch.q_series(), expected, "{:?}", w.shifted);
        }
    }

    #[test]
    fn phi0_principal() {
        let g = grading("2");
        let c = CentralizerCartan::new(&g);
        let lam = AffineWeight::from_shifted_simple(&[int(1)], 2, frac(-1, 2));
        assert_eq!(phi0(&lam, &g, &c).unwrap().dimlimit, DimLimit::Finite(BigRational::one()));
        let lam = AffineWeight::from_shifted_simple(&[int(2)], 2, frac(-1, 2));
        assert_eq!(phi0(&lam, &g, &c).unwrap().dimlimit, DimLimit::Zero);
    }

    #[test]
    fn phi0_zero_nilpotent_is_weyl_dimension() {
        // f = 0, integral weight: the limit is dim L(lambda_bar)
        let g = grading("1,1,1");
        let c = CentralizerCartan::new(&g);
        for (a, b, dim) in [(0, 0, 1), (1, 0, 3), (0, 1, 3), (1, 1, 8), (2, 0, 6), (3, 1, 24)] {
            let lam = AffineWeight::from_shifted_simple(&[int(a + 1), int(b + 1)], 1, int(1));
            let p = phi0(&lam, &g, &c).unwrap();
            assert_eq!(p.group_order, 6);
            assert_eq!(p.dimlimit, DimLimit::Finite(BigRational::from_integer(dim.into())));
        }
    }

    #[test]
    fn phi0_sl4_two_two() {
        let level = LevelData::new(4, 5, 2).unwrap();
        let g = grading("2,2");
        let c = CentralizerCartan::new(&g);
        let set = enumerate(&level, &g).unwrap();
        assert!(set.mk_count() > 0);
        for w in set.mk() {
            let p = phi0_scaled(&w.shifted, 2, &g, &c).unwrap();
            match &p.dimlimit {
                DimLimit::Finite(x) => assert!(x.is_integer() && x.is_positive(), "{x}"),
                other => panic!("{:?}: {other:?}", w.shifted),
            }
        }
        for w in set.weights.iter().filter(|w| !w.in_mtilde) {
            let p = phi0_scaled(&w.shifted, 2, &g, &c).unwrap();
            assert_eq!(p.dimlimit, DimLimit::Zero, "{:?}", w.shifted);
        }
    }

    #[test]
    fn bk_examples() {
        let g = grading("2");
        let w = RowPermutationGroup::new(&g);
        assert!(bk_nonvanishing(&[frac(-1, 2), int(0)], &g));
        assert!(!bk_nonvanishing(&[int(0), int(0)], &g));
        // mu + rho = s(lambda + rho)
        let lam = [frac(1, 3), int(0)];
        let mu = [frac(-7, 3), int(0)];
        assert!(bk_equivalent(&lam, &mu, &w));
        assert!(!bk_equivalent(&lam, &[int(0), int(0)], &w));
    }

    #[test]
    fn sl4_character_is_stable_and_layer_matches_limit() {
        let level = LevelData::new(4, 5, 2).unwrap();
        let g = grading("2,2");
        let c = CentralizerCartan::new(&g);
        let set = enumerate(&level, &g).unwrap();
        let w = set.mk().next().unwrap();
        let ch = euler_character(&w.weight, &g, &c, 4, 6).unwrap();
        assert!(ch.certificate.passed);
        assert!(!ch.is_zero());
        let big = euler_character(&w.weight, &g, &c, 6, 10).unwrap();
        ch.agrees_within(&big).unwrap();
        let layer0: i128 = ch.terms.iter().filter(|((d, _), _)| *d == 0).map(|(_, v)| v).sum();
        let p = phi0_scaled(&w.shifted, 2, &g, &c).unwrap();
        assert_eq!(limit_as_integer(&p.dimlimit), Some(layer0 as i64));
    }
}
