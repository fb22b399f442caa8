//! Principal admissible weights of `sl_n^` at level `k = p/q - n`, the sets
//! `M~_k` and `M_k`, and the `W^f` dot action on them.
//!
//! A principal admissible weight is recorded through the integer vector
//! `J = q (lambda_bar + rho_bar)` (canonical representative, `J_n = 0`).
//! For `a < b` put `j = J_a - J_b`. The weight is admissible iff, for every
//! such pair, the first integral root `alpha + m delta` of each of the two
//! progressions (`m >= 0` for `alpha`, `m >= 1` for `-alpha`) pairs to at
//! least 1 with `lambda + rho`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, gcd, int, mod_inverse, Rational};
use crate::rootdata::{CentralizerCartan, GoodGrading, Partition, RowPermutationGroup};
use crate::weights::AffineWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LevelData {
    pub n: usize,
    pub p: i64,
    pub q: i64,
}

impl LevelData {
    pub fn new(n: usize, p: i64, q: i64) -> Result<Self> {
        if !is_admissible_number(n, p, q) {
            return Err(Error::NotAdmissibleNumber { n, p, q });
        }
        Ok(Self { n, p, q })
    }

    pub fn k(&self) -> Rational {
        frac(self.p, self.q) - int(self.n as i64)
    }

    /// `k + n = p / q`.
    pub fn shifted_level(&self) -> Rational {
        frac(self.p, self.q)
    }

    /// Inclusive range of `J_a - J_b` allowed for a single positive root.
    pub fn pair_range(&self) -> (i64, i64) {
        (self.q - (self.q - 1) * self.p, (self.p - 1) * self.q)
    }
}

/// `p >= n`, `q >= 1`, `gcd(p, q) = 1`.
pub fn is_admissible_number(n: usize, p: i64, q: i64) -> bool {
    n >= 2 && p >= n as i64 && q >= 1 && gcd(p, q) == 1
}

/// Admissibility of the pair of progressions through the finite root with
/// `q <lambda_bar + rho_bar, alpha^vee> = j`.
pub fn pair_admissible(j: i64, p: i64, q: i64) -> bool {
    let pinv = mod_inverse(p.rem_euclid(q), q).expect("gcd(p, q) = 1");
    let m0 = (-j * pinv).rem_euclid(q);
    if j + m0 * p < q {
        return false;
    }
    let mut m1 = (j * pinv).rem_euclid(q);
    if m1 == 0 {
        m1 = q;
    }
    -j + m1 * p >= q
}

/// `J = q (lambda_bar + rho_bar)` if it is integral.
pub fn shifted_integer_coords(lambda: &AffineWeight, q: i64) -> Option<Vec<i64>> {
    lambda
        .shifted()
        .classical()
        .iter()
        .map(|x| {
            let y = x * q;
            y.is_integer().then(|| y.to_integer())
        })
        .collect()
}

pub fn is_principal_admissible(lambda: &AffineWeight, level: &LevelData, g: &GoodGrading) -> Result<bool> {
    if lambda.level() != level.k() {
        return Err(Error::LevelMismatch {
            expected: crate::rational::format_rational(&level.k()),
            found: crate::rational::format_rational(&lambda.level()),
        });
    }
    if lambda.n() != level.n || g.n() != level.n {
        return Err(Error::InvalidInput("rank mismatch".into()));
    }
    let Some(j) = shifted_integer_coords(lambda, level.q) else {
        return Ok(false);
    };
    Ok(g
        .positive_roots()
        .iter()
        .all(|a| pair_admissible(j[a.i] - j[a.j], level.p, level.q)))
}

/// All admissible `J` vectors (with `J_n = 0`), sorted.
///
/// Coordinates are fixed from the last one backwards; each choice is checked
/// against every coordinate already fixed, so only admissible prefixes are
/// extended.
pub fn enumerate_shifted(level: &LevelData) -> Vec<Vec<i64>> {
    let n = level.n;
    let (lo, hi) = level.pair_range();
    let ok: Vec<bool> = (lo..=hi)
        .map(|j| pair_admissible(j, level.p, level.q))
        .collect();
    let check = |j: i64| j >= lo && j <= hi && ok[(j - lo) as usize];

    fn rec(a: usize, cur: &mut Vec<i64>, lo: i64, hi: i64, check: &dyn Fn(i64) -> bool, out: &mut Vec<Vec<i64>>) {
        let n = cur.len();
        for v in lo..=hi {
            if (a + 1..n).all(|b| check(v - cur[b])) {
                cur[a] = v;
                if a == 0 {
                    out.push(cur.clone());
                } else {
                    rec(a - 1, cur, lo, hi, check, out);
                }
            }
        }
    }

    let mut out: Vec<Vec<i64>> = if n == 2 {
        (lo..=hi).filter(|&v| check(v)).map(|v| vec![v, 0]).collect()
    } else {
        (lo..=hi)
            .into_par_iter()
            .filter(|&v| check(v))
            .flat_map_iter(|v| {
                let mut cur = vec![0; n];
                cur[n - 2] = v;
                let mut out = Vec::new();
                rec(n - 3, &mut cur, lo, hi, &check, &mut out);
                out
            })
            .collect()
    };
    out.sort_unstable();
    out
}

/// Reference enumeration: every simple-coordinate tuple with `|j_i| <= bound`
/// whose weight passes the dominance test of the integral root system.
pub fn box_scan(level: &LevelData, bound: i64) -> Vec<Vec<i64>> {
    let n = level.n;
    let mut out = Vec::new();
    let mut simple = vec![-bound; n - 1];
    loop {
        let lam = AffineWeight::from_shifted_simple(
            &simple.iter().map(|&x| int(x)).collect::<Vec<_>>(),
            level.q,
            level.k(),
        );
        if crate::weights::check_dominant_regular(&lam).is_ok() {
            let mut j = vec![0; n];
            for i in (0..n - 1).rev() {
                j[i] = j[i + 1] + simple[i];
            }
            out.push(j);
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
                out.sort_unstable();
                return out;
            }
            simple[i] += 1;
            if simple[i] <= bound {
                break;
            }
            simple[i] = -bound;
            i += 1;
        }
    }
}

/// Flags of one admissible weight relative to a nilpotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleWeight {
    /// `q (lambda_bar + rho_bar)` with last coordinate 0.
    pub shifted: Vec<i64>,
    /// `q <lambda_bar + rho_bar, alpha_i^vee>` for the simple roots.
    pub simple: Vec<i64>,
    #[serde(skip)]
    pub weight: AffineWeight,
    pub in_mtilde: bool,
    /// `lambda_bar` is integral and dominant on `Delta_{0,+}`.
    pub in_p0plus: bool,
    /// Weaker reading: positive on `Delta_{0,+}`, nonnegative where integral.
    pub in_p0plus_positivity: bool,
    pub in_mk: bool,
    /// Index of the `W^f` orbit (see [`star_action`]) containing this weight.
    pub class: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanAudit {
    pub bound: i64,
    pub max_abs_simple: i64,
    pub boundary_shell_empty: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibleSet {
    pub level: LevelData,
    pub partition: Partition,
    pub weights: Vec<AdmissibleWeight>,
    /// Indices into `weights` of each `W^f` class of `M~_k`.
    pub classes: Vec<Vec<usize>>,
    pub audit: ScanAudit,
}

impl AdmissibleSet {
    pub fn mtilde(&self) -> impl Iterator<Item = &AdmissibleWeight> {
        self.weights.iter().filter(|w| w.in_mtilde)
    }

    pub fn mk(&self) -> impl Iterator<Item = &AdmissibleWeight> {
        self.weights.iter().filter(|w| w.in_mk)
    }

    pub fn mtilde_count(&self) -> usize {
        self.mtilde().count()
    }

    pub fn mk_count(&self) -> usize {
        self.mk().count()
    }
}

/// Simple coordinates of a `J` vector.
pub fn simple_coords(j: &[i64]) -> Vec<i64> {
    j.windows(2).map(|w| w[0] - w[1]).collect()
}

/// `n J - sum(J)`: a shift-free integer representative of `lambda_bar + rho_bar`.
pub fn trace_free_key(j: &[i64]) -> Vec<i64> {
    let s: i64 = j.iter().sum();
    j.iter().map(|&x| j.len() as i64 * x - s).collect()
}

/// `J` with last coordinate 0.
pub fn canonical_shifted(j: &[i64]) -> Vec<i64> {
    let last = *j.last().expect("nonempty");
    j.iter().map(|x| x - last).collect()
}

/// Same-row boxes never share a residue of `J` mod `q`.
pub fn in_mtilde(j: &[i64], q: i64, g: &GoodGrading) -> bool {
    g.delta_f_plus()
        .all(|a| (j[a.i] - j[a.j]).rem_euclid(q) != 0)
}

/// `(positivity reading, literal reading)` of `lambda_bar` in `P_0^+`.
///
/// The literal reading asks `<lambda_bar, alpha^vee>` to be a nonnegative
/// integer on `Delta_{0,+}`; only it makes every `M_k` limit a positive integer.
pub fn p0plus_flags(j: &[i64], q: i64, g: &GoodGrading) -> (bool, bool) {
    let mut positive = true;
    let mut literal = true;
    for a in g.delta0_plus() {
        let x = frac(j[a.i] - j[a.j], q);
        // <lambda_bar, alpha^vee> = x - <rho_bar, alpha^vee> = x - (j - i)
        let lam = x - int((a.j - a.i) as i64);
        let integral = x.is_integer();
        if x <= int(0) || (integral && lam < int(0)) {
            positive = false;
        }
        if !integral || lam < int(0) {
            literal = false;
        }
    }
    (positive, literal)
}

fn flag_weights(level: &LevelData, g: &GoodGrading, shifted: &[Vec<i64>]) -> AdmissibleSet {
    let w = RowPermutationGroup::new(g);
    let mut weights: Vec<AdmissibleWeight> = shifted
        .par_iter()
        .map(|j| {
            let simple = simple_coords(j);
            let weight = AffineWeight::from_shifted_simple(
                &simple.iter().map(|&x| int(x)).collect::<Vec<_>>(),
                level.q,
                level.k(),
            );
            let mt = in_mtilde(j, level.q, g);
            let (pos, lit) = p0plus_flags(j, level.q, g);
            AdmissibleWeight {
                shifted: j.clone(),
                simple,
                weight,
                in_mtilde: mt,
                in_p0plus: lit,
                in_p0plus_positivity: pos,
                in_mk: mt && lit,
                class: None,
            }
        })
        .collect();

    let index: HashMap<Vec<i64>, usize> = weights
        .iter()
        .enumerate()
        .filter(|(_, aw)| aw.in_mtilde)
        .map(|(i, aw)| (aw.shifted.clone(), i))
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..weights.len() {
        if !weights[start].in_mtilde || weights[start].class.is_some() {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        weights[start].class = Some(c);
        let mut k = 0;
        while k < members.len() {
            let j = weights[members[k]].shifted.clone();
            for &gen in w.generators() {
                if let Some(image) = star_action(&j, gen, level) {
                    if let Some(&i) = index.get(&image) {
                        if weights[i].class.is_none() {
                            weights[i].class = Some(c);
                            members.push(i);
                        }
                    }
                }
            }
            k += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    let (lo, hi) = level.pair_range();
    let max_abs_simple = weights
        .iter()
        .flat_map(|w| w.simple.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0);
    debug_assert!(lo > -level.p * level.q && hi < level.p * level.q);
    AdmissibleSet {
        level: *level,
        partition: g.partition().clone(),
        weights,
        classes,
        audit: ScanAudit {
            bound: level.p * level.q,
            max_abs_simple,
            boundary_shell_empty: max_abs_simple < level.p * level.q,
        },
    }
}

pub fn enumerate(level: &LevelData, g: &GoodGrading) -> Result<AdmissibleSet> {
    if g.n() != level.n {
        return Err(Error::InvalidInput(format!(
            "partition of {} used with sl_{}",
            g.n(),
            level.n
        )));
    }
    Ok(flag_weights(level, g, &enumerate_shifted(level)))
}

/// Same as [`enumerate`] but reusing an already enumerated list of `J` vectors.
pub fn enumerate_from(level: &LevelData, g: &GoodGrading, shifted: &[Vec<i64>]) -> AdmissibleSet {
    flag_weights(level, g, shifted)
}

/// `(s, q, ..., q)` with `s = n mod q` omitted when zero.
pub fn exceptional_partition(n: usize, p: i64, q: i64) -> Result<Partition> {
    if !is_admissible_number(n, p, q) {
        return Err(Error::NotAdmissibleNumber { n, p, q });
    }
    let q = q as usize;
    let mut parts = vec![q; n / q];
    if n % q != 0 {
        parts.push(n % q);
    }
    Partition::new(parts)
}

/// The dominant point of the integral Weyl group orbit of `J`, if `J` is regular.
///
/// Reflects in the first integral root of some progression that pairs
/// negatively until none does. Returns `None` on a zero pairing.
pub fn dominant_representative(j: &[i64], level: &LevelData) -> Option<Vec<i64>> {
    let (p, q) = (level.p, level.q);
    let pinv = mod_inverse(p.rem_euclid(q), q).expect("gcd(p, q) = 1");
    let n = j.len();
    let mut v = j.to_vec();
    for _ in 0..100_000 {
        let mut moved = false;
        'search: for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let x = v[a] - v[b];
                let lo = i64::from(a > b);
                let r = (-x * pinv).rem_euclid(q);
                let m = lo + (r - lo).rem_euclid(q);
                let val = x + m * p;
                if val == 0 {
                    return None;
                }
                if val < 0 {
                    // reflection in alpha_{ab} + m delta; val / q is integral
                    let c = val / q;
                    v[a] -= c * q;
                    v[b] += c * q;
                    moved = true;
                    break 'search;
                }
            }
        }
        if !moved {
            return Some(canonical_shifted(&v));
        }
    }
    panic!("dominant representative search did not terminate for {j:?}");
}

/// `W^f` dot action on principal admissible weights: permute `lambda_bar + rho_bar`
/// within a row, then return to the dominant point of the integral Weyl orbit.
/// Characters only depend on that orbit, and `M~_k` is stable under this action.
pub fn star_action(j: &[i64], gen: (usize, usize), level: &LevelData) -> Option<Vec<i64>> {
    dominant_representative(&RowPermutationGroup::apply(j, gen), level)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub precondition_met: bool,
    pub mtilde: usize,
    pub group_order: u128,
    pub classes: usize,
    /// `|M~_k| = |W^f| * #classes`.
    pub count_identity: bool,
    /// Every class has exactly `|W^f|` distinct members.
    pub free_orbits: bool,
    /// `M~_k` is closed under the dot action of `W^f`.
    pub closed: bool,
    pub mk: usize,
    /// `|M_k| != #classes`: `M_k` meets some class in more than one point or misses it.
    pub mk_discrepancy: bool,
    /// Classes of `M~_k` under plain permutation of `lambda_bar + rho_bar` within rows.
    pub finite_classes: usize,
    /// Classes of `M_k` under plain permutation within rows (isomorphism
    /// classes of the reduced modules); equals `classes` when consistent.
    pub mk_iso_classes: usize,
    pub witnesses: Vec<String>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.precondition_met
            && self.count_identity
            && self.free_orbits
            && self.closed
            && self.mk_iso_classes == self.classes
    }
}

pub fn check_wf_bijection(set: &AdmissibleSet, w: &RowPermutationGroup, exceptional: bool) -> BijectionReport {
    let mt: Vec<&AdmissibleWeight> = set.mtilde().collect();
    let mut report = BijectionReport {
        precondition_met: exceptional,
        mtilde: mt.len(),
        group_order: w.order(),
        classes: set.classes.len(),
        count_identity: false,
        free_orbits: false,
        closed: false,
        mk: set.mk_count(),
        mk_discrepancy: false,
        finite_classes: mt
            .iter()
            .map(|a| w.canonical(&trace_free_key(&a.shifted)))
            .collect::<HashSet<_>>()
            .len(),
        mk_iso_classes: set
            .mk()
            .map(|a| w.canonical(&trace_free_key(&a.shifted)))
            .collect::<HashSet<_>>()
            .len(),
        witnesses: Vec::new(),
    };
    if !exceptional {
        report.witnesses.push("precondition not met: pair is not exceptional".into());
        return report;
    }
    let keys: HashSet<&Vec<i64>> = mt.iter().map(|a| &a.shifted).collect();
    report.closed = true;
    for a in &mt {
        for &gen in w.generators() {
            match star_action(&a.shifted, gen, &set.level) {
                Some(image) if keys.contains(&image) => {}
                other => {
                    report.closed = false;
                    report
                        .witnesses
                        .push(format!("{:?} maps to {other:?} under {gen:?}", a.shifted));
                }
            }
        }
    }
    report.free_orbits = set.classes.iter().all(|c| c.len() as u128 == w.order());
    if !report.free_orbits {
        for c in &set.classes {
            if c.len() as u128 != w.order() {
                report
                    .witnesses
                    .push(format!("class of {:?} has {} members", set.weights[c[0]].shifted, c.len()));
            }
        }
    }
    report.count_identity = report.mtilde as u128 == w.order() * report.classes as u128;
    report.mk_discrepancy = report.mk != report.classes;
    if report.mk_discrepancy {
        report.witnesses.push(format!(
            "|M_k| = {} differs from the class count {}",
            report.mk, report.classes
        ));
    }
    report
}

/// `<lambda + rho, alpha^vee>` is non-integral on every root of positive degree.
pub fn is_generic(j: &[i64], q: i64, g: &GoodGrading) -> bool {
    g.delta_pos().iter().all(|a| (j[a.i] - j[a.j]).rem_euclid(q) != 0)
}

/// Restriction of `lambda_bar + rho_bar` to `t`, scaled by `n q` to stay integral.
pub fn restricted_shifted(j: &[i64], c: &CentralizerCartan) -> Vec<i64> {
    let n = j.len() as i64;
    let total: i64 = j.iter().sum();
    let mut rows = vec![0i64; c.r()];
    let mut sizes = vec![0i64; c.r()];
    for (b, &x) in j.iter().enumerate() {
        rows[c.row_of(b)] += x;
        sizes[c.row_of(b)] += 1;
    }
    rows.iter()
        .zip(&sizes)
        .map(|(&s, &len)| n * s - len * total)
        .collect()
}
