//! Batch verification suites. Each suite returns a report rather than
//! panicking, so the CLI and the test harness can print and aggregate them.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::admissible::{
    check_wf_bijection, enumerate, enumerate_from, enumerate_shifted, exceptional_partition, is_admissible_number,
    is_generic, LevelData,
};
use crate::brst::{dominant_weights_up_to, module_homology, verify_bk_consistency, ComplexOptions, FiniteModule};
use crate::characters::{euler_character, phi0_scaled, scan_partition, DimLimit};
use crate::error::Result;
use crate::rational::{frac, int, Rational};
use crate::rootdata::{CentralizerCartan, GoodGrading, Partition, RowPermutationGroup};

/// Independent closed-form series used as cross-checks.
pub mod oracle {
    use crate::rational::{frac, Rational};

    /// `h_{r,s} = ((p r - q s)^2 - (p - q)^2) / (4 p q)`.
    pub fn conformal_weight(p: i64, q: i64, r: i64, s: i64) -> Rational {
        frac((p * r - q * s).pow(2) - (p - q).pow(2), 4 * p * q)
    }

    /// Minimal-model character `q^{-h_{r,s}} chi_{r,s}` as coefficients of
    /// `q^0 .. q^order`, from the alternating theta sum over `k`
    /// divided by `prod (1 - q^j)`.
    pub fn virasoro_character(p: i64, q: i64, r: i64, s: i64, order: usize) -> Vec<i128> {
        let h = conformal_weight(p, q, r, s);
        let mut numerator = vec![0i128; order + 1];
        let bound = order as i64 + 2;
        for k in -bound..=bound {
            for (rr, sign) in [(r + 2 * k * q, 1), (-r + 2 * k * q, -1)] {
                let e = conformal_weight(p, q, rr, s) - h;
                assert!(e.is_integer(), "non-integral exponent");
                let e = e.to_integer();
                if (0..=order as i64).contains(&e) {
                    numerator[e as usize] += sign;
                }
            }
        }
        // multiply by 1 / prod (1 - q^j): one geometric factor at a time
        for j in 1..=order {
            for d in j..=order {
                numerator[d] += numerator[d - j];
            }
        }
        numerator
    }

    /// Kac-table label `(r, s)`, `1 <= r < q`, `1 <= s < p`, with `r p - s q = +-j`.
    pub fn kac_label(p: i64, q: i64, j: i64) -> Option<(i64, i64)> {
        (1..q)
            .flat_map(|r| (1..p).map(move |s| (r, s)))
            .find(|&(r, s)| (r * p - s * q).abs() == j.abs())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    /// Number of individual checks performed.
    pub checked: usize,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub detail: String,
    /// Command line reproducing the first failure, if any.
    pub repro: Option<String>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} checks in {:.2}s (budget {}s){}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.checked,
            self.seconds,
            self.budget_seconds,
            if self.detail.is_empty() {
                String::new()
            } else {
                format!("; {}", self.detail)
            }
        )
    }
}

struct Tally {
    id: u8,
    title: &'static str,
    budget: f64,
    start: Instant,
    checked: usize,
    failures: Vec<String>,
    repro: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new(id: u8, title: &'static str, budget: f64) -> Self {
        Self {
            id,
            title,
            budget,
            start: Instant::now(),
            checked: 0,
            failures: Vec::new(),
            repro: None,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String, repro: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.repro.is_none() {
                self.repro = Some(repro());
            }
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String, repro: String) {
        self.check(false, || what, || repro);
    }

    fn finish(self) -> CriterionReport {
        let seconds = self.start.elapsed().as_secs_f64();
        let in_budget = seconds <= self.budget;
        let mut detail: Vec<String> = self.failures.iter().take(5).cloned().collect();
        if self.failures.len() > 5 {
            detail.push(format!("... {} failures in total", self.failures.len()));
        }
        if !in_budget {
            detail.push(format!("over the time budget ({seconds:.1}s > {}s)", self.budget));
        }
        detail.extend(self.notes);
        CriterionReport {
            id: self.id,
            title: self.title.to_string(),
            passed: self.failures.is_empty() && in_budget,
            checked: self.checked,
            seconds,
            budget_seconds: self.budget,
            detail: detail.join("; "),
            repro: self.repro,
        }
    }
}

fn grading(parts: &Partition) -> Result<GoodGrading> {
    GoodGrading::new(parts)
}

/// Admissible numbers `(n, p, q)` with `n <= max_n`, `p <= max_p`, `q <= max_q`.
pub fn admissible_levels(max_n: usize, max_p: i64, max_q: i64) -> Vec<LevelData> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for p in n as i64..=max_p {
            for q in 1..=max_q {
                if is_admissible_number(n, p, q) {
                    out.push(LevelData { n, p, q });
                }
            }
        }
    }
    out
}

/// Good gradings: `ad f` surjective and `d_chi` consistent, every partition of `n <= max_n`.
pub fn criterion_grading(max_n: usize) -> CriterionReport {
    let mut t = Tally::new(1, "grading soundness", 10.0);
    for n in 2..=max_n {
        for part in Partition::all(n) {
            let repro = || format!("wchar grading --partition {part}");
            match grading(&part).and_then(|g| g.audit().map(|a| (g, a))) {
                Ok((g, a)) => {
                    let sl = n * n - 1;
                    let ok = a.surjective
                        && g.dchi() == g.delta_neg().len()
                        && a.centralizer_dim == part.centralizer_dim()
                        && 2 * g.dchi() + part.centralizer_dim() == sl;
                    t.check(ok, || format!("{part}: {a:?}"), repro);
                }
                Err(e) => t.fail(format!("{part}: {e}"), repro()),
            }
        }
    }
    t.finish()
}

/// The unique partition with nonempty `M~_k` and only finite limits is `(s, q, ..., q)`.
pub fn criterion_exceptional(max_n: usize, max_p: i64, max_q: i64) -> CriterionReport {
    let mut t = Tally::new(2, "exceptional-pair rule", 300.0);
    let mut outside_checked = 0usize;
    for level in admissible_levels(max_n, max_p, max_q) {
        let LevelData { n, p, q } = level;
        let repro = || format!("wchar exceptional --n {n} --p {p} --q {q}");
        let shifted = enumerate_shifted(&level);
        let expected = exceptional_partition(n, p, q).expect("admissible");
        let mut found = BTreeSet::new();
        for part in Partition::all(n) {
            let g = grading(&part).expect("valid partition");
            match scan_partition(&shifted, q, &g) {
                Ok(scan) if scan.is_exceptional() => {
                    found.insert(part.to_string());
                    if part == expected {
                        // the almost-convergent set is exactly M~_k
                        let c = CentralizerCartan::new(&g);
                        t.check(
                            scan.all_almost_convergent,
                            || format!("({n},{p},{q}) {part}: a limit in M~ vanished"),
                            repro,
                        );
                        let outside: Vec<&Vec<i64>> = shifted
                            .iter()
                            .filter(|j| !crate::admissible::in_mtilde(j, q, &g))
                            .collect();
                        outside_checked += outside.len();
                        let bad = outside.iter().find(|j| {
                            phi0_scaled(j, q, &g, &c).map_or(true, |ph| ph.dimlimit != DimLimit::Zero)
                        });
                        t.check(
                            bad.is_none(),
                            || format!("({n},{p},{q}) {part}: nonzero limit outside M~ at {bad:?}"),
                            repro,
                        );
                    }
                }
                Ok(_) => {}
                Err(e) => t.fail(format!("({n},{p},{q}) {part}: {e}"), repro()),
            }
        }
        let want: BTreeSet<String> = [expected.to_string()].into();
        t.check(
            found == want,
            || format!("({n},{p},{q}): found {found:?}, expected {want:?}"),
            repro,
        );
    }
    t.notes.push(format!("{outside_checked} weights outside M~ checked for zero limit"));
    t.finish()
}

/// Principal `W(sl_2)` characters against minimal-model characters.
pub fn criterion_virasoro(order: u32) -> CriterionReport {
    let mut t = Tally::new(3, "Virasoro cross-check", 30.0);
    let g = grading(&Partition::principal(2).expect("n = 2")).expect("valid");
    let c = CentralizerCartan::new(&g);
    for (p, q) in [(3, 2), (4, 3), (5, 4)] {
        let repro = || format!("wchar character --n 2 --partition 2 --p {p} --q {q} --weight <J> --order {order}");
        let level = LevelData::new(2, p, q).expect("admissible");
        let set = match enumerate(&level, &g) {
            Ok(s) => s,
            Err(e) => {
                t.fail(format!("({p},{q}): {e}"), repro());
                continue;
            }
        };
        let want = ((p - 1) * (q - 1) / 2) as usize;
        t.check(
            set.classes.len() == want,
            || format!("({p},{q}): {} classes, expected {want}", set.classes.len()),
            repro,
        );
        let mut labels = BTreeSet::new();
        for w in set.mtilde() {
            let j = w.simple[0];
            let Some((r, s)) = oracle::kac_label(p, q, j) else {
                t.fail(format!("({p},{q}) J={j}: no Kac label"), repro());
                continue;
            };
            labels.insert(if 2 * r < q || (2 * r == q && 2 * s <= p) { (r, s) } else { (q - r, p - s) });
            let expected = oracle::virasoro_character(p, q, r, s, order as usize);
            match euler_character(&w.weight, &g, &c, order, 4) {
                Ok(ch) => t.check(
                    ch.q_series() == expected,
                    || format!("({p},{q}) J={j}: {:?} vs {expected:?}", ch.q_series()),
                    || format!("wchar character --n 2 --partition 2 --p {p} --q {q} --weight {j} --order {order}"),
                ),
                Err(e) => t.fail(format!("({p},{q}) J={j}: {e}"), repro()),
            }
        }
        t.check(
            labels.len() == want,
            || format!("({p},{q}): {} distinct minimal-model labels", labels.len()),
            repro,
        );
    }
    t.finish()
}

/// `|M~_k| = |W^f| * #classes` with free orbits at every exceptional pair.
pub fn criterion_bijection(max_n: usize, max_p: i64, max_q: i64) -> CriterionReport {
    let mut t = Tally::new(4, "W^f bijection", 300.0);
    let mut discrepancies = 0;
    for level in admissible_levels(max_n, max_p, max_q) {
        let LevelData { n, p, q } = level;
        let part = exceptional_partition(n, p, q).expect("admissible");
        let g = grading(&part).expect("valid");
        let set = enumerate_from(&level, &g, &enumerate_shifted(&level));
        let report = check_wf_bijection(&set, &RowPermutationGroup::new(&g), true);
        if report.mk_discrepancy {
            discrepancies += 1;
        }
        t.check(
            report.holds(),
            || format!("({n},{p},{q}) {part}: {report:?}"),
            || format!("wchar classify --n {n} --partition {part} --p {p} --q {q}"),
        );
    }
    t.notes.push(format!("{discrepancies} pairs with |M_k| != #classes (reported)"));
    t.finish()
}

/// Vanishing of finite-dimensional BRST homology for nonzero `f`.
pub fn criterion_brst_vanishing(max_dim: u128) -> CriterionReport {
    let mut t = Tally::new(5, "BRST oracle vanishing", 120.0);
    for n in [2, 3] {
        for part in Partition::all(n).into_iter().filter(|p| !p.is_trivial()) {
            let g = grading(&part).expect("valid");
            for labels in dominant_weights_up_to(n, max_dim) {
                let hw: Vec<String> = labels.iter().map(ToString::to_string).collect();
                let repro = || format!("wchar oracle --n {n} --partition {part} --module hw {}", hw.join(","));
                let m = FiniteModule::highest_weight(&labels);
                match module_homology(&m, &g, ComplexOptions::default()) {
                    Ok(h) => t.check(
                        h.vanishes() && h.euler_characteristic_ok,
                        || format!("{part} hw {labels:?}: H = {:?}", h.dims),
                        repro,
                    ),
                    Err(e) => t.fail(format!("{part} hw {labels:?}: {e}"), repro()),
                }
            }
        }
    }
    t.finish()
}

/// The 50 rank-one test values of `<lambda_bar + rho_bar, alpha^vee>`.
pub fn bk_test_points() -> Vec<Rational> {
    let mut xs: Vec<Rational> = (-10..=10).map(int).collect();
    for (a, b) in [
        (1, 2),
        (-1, 2),
        (3, 2),
        (-7, 2),
        (1, 3),
        (2, 3),
        (-5, 3),
        (11, 3),
        (1, 4),
        (-3, 4),
        (9, 4),
        (2, 5),
        (-12, 5),
        (7, 5),
        (1, 6),
        (-13, 6),
        (3, 7),
        (-22, 7),
        (5, 8),
        (-17, 8),
        (4, 9),
        (-1, 10),
        (21, 10),
        (23, 2),
        (-31, 3),
        (101, 7),
        (6, 11),
        (-8, 13),
        (47, 12),
    ] {
        xs.push(frac(a, b));
    }
    xs
}

/// Nonvanishing criterion against computed `H_0` for `sl_2`.
pub fn criterion_bk(depth: usize) -> CriterionReport {
    let mut t = Tally::new(6, "BK consistency at rank 1", 60.0);
    let g = grading(&Partition::principal(2).expect("n = 2")).expect("valid");
    let xs = bk_test_points();
    match verify_bk_consistency(&xs, &g, depth) {
        Ok(cases) => {
            for c in cases {
                t.check(
                    c.agree,
                    || format!("x = {}: criterion {} but H_0 = {}", c.x, c.criterion, c.h0),
                    || format!("wchar oracle --n 2 --partition 2 --module verma --verma-x {} --verma-depth {depth}", c.x),
                );
            }
        }
        Err(e) => t.fail(e.to_string(), "wchar verify --criterion 6".into()),
    }
    t.finish()
}

/// Every `lambda` in `M_k` pairs non-integrally with `Delta_{>0}`.
pub fn criterion_generic(max_n: usize, max_p: i64, max_q: i64) -> CriterionReport {
    let mut t = Tally::new(7, "genericity of M_k", 300.0);
    for level in admissible_levels(max_n, max_p, max_q) {
        let LevelData { n, p, q } = level;
        let part = exceptional_partition(n, p, q).expect("admissible");
        let g = grading(&part).expect("valid");
        let set = enumerate_from(&level, &g, &enumerate_shifted(&level));
        for w in set.mk() {
            t.check(
                is_generic(&w.shifted, q, &g),
                || format!("({n},{p},{q}) {part}: J = {:?}", w.shifted),
                || format!("wchar admissible --n {n} --partition {part} --p {p} --q {q}"),
            );
        }
    }
    t.finish()
}

/// Coefficients agree between `(N, T)` and `(N + 2, T + 4)` on the certified window.
pub fn criterion_stability() -> CriterionReport {
    let mut t = Tally::new(8, "truncation stability", 60.0);
    let mut cases: Vec<(usize, &str, i64, i64, u32, u32)> = [(3, 2), (4, 3), (5, 4)]
        .into_iter()
        .map(|(p, q)| (2, "2", p, q, 12, 4))
        .collect();
    cases.push((4, "2,2", 5, 2, 4, 6));
    for (n, part, p, q, order, depth) in cases {
        let g = grading(&Partition::parse(part).expect("valid")).expect("valid");
        let c = CentralizerCartan::new(&g);
        let level = LevelData::new(n, p, q).expect("admissible");
        let set = match enumerate(&level, &g) {
            Ok(s) => s,
            Err(e) => {
                t.fail(e.to_string(), format!("wchar admissible --n {n} --partition {part} --p {p} --q {q}"));
                continue;
            }
        };
        for w in set.mtilde() {
            let simple: Vec<String> = w.simple.iter().map(ToString::to_string).collect();
            let repro = || {
                format!(
                    "wchar character --n {n} --partition {part} --p {p} --q {q} --weight {} --order {order} --cone-depth {depth}",
                    simple.join(",")
                )
            };
            let pair = euler_character(&w.weight, &g, &c, order, depth)
                .and_then(|a| euler_character(&w.weight, &g, &c, order + 2, depth + 4).map(|b| (a, b)));
            match pair {
                Ok((a, b)) => {
                    let res = a.agrees_within(&b);
                    t.check(
                        res.is_ok() && a.certificate.passed && b.certificate.passed,
                        || format!("{n} {part} ({p},{q}) J={:?}: {res:?}", w.shifted),
                        repro,
                    );
                }
                Err(e) => t.fail(format!("{n} {part} ({p},{q}) J={:?}: {e}", w.shifted), repro()),
            }
        }
    }
    t.finish()
}

/// Runs every suite with the standard parameters, optionally a single one.
pub fn run_all(only: Option<u8>) -> Vec<CriterionReport> {
    let suites: [(u8, fn() -> CriterionReport); 8] = [
        (1, || criterion_grading(8)),
        (2, || criterion_exceptional(6, 9, 5)),
        (3, || criterion_virasoro(12)),
        (4, || criterion_bijection(6, 9, 5)),
        (5, || criterion_brst_vanishing(200)),
        (6, || criterion_bk(8)),
        (7, || criterion_generic(6, 9, 5)),
        (8, criterion_stability),
    ];
    suites
        .iter()
        .filter(|(id, _)| only.is_none_or(|o| o == *id))
        .map(|(_, f)| f())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;

    #[test]
    fn ising_characters() {
        assert_eq!(virasoro_character(4, 3, 1, 1, 6), vec![1, 0, 1, 1, 2, 2, 3]);
        assert_eq!(virasoro_character(4, 3, 1, 2, 6), vec![1, 1, 1, 2, 2, 3, 4]);
        assert_eq!(virasoro_character(4, 3, 1, 3, 6), vec![1, 1, 1, 1, 2, 2, 3]);
        assert_eq!(conformal_weight(4, 3, 1, 2), frac(1, 16));
        assert_eq!(conformal_weight(4, 3, 1, 3), frac(1, 2));
        assert_eq!(virasoro_character(3, 2, 1, 1, 10), {
            let mut v = vec![0; 11];
            v[0] = 1;
            v
        });
    }

    #[test]
    fn kac_labels() {
        assert_eq!(kac_label(4, 3, 1), Some((1, 1)));
        assert_eq!(kac_label(4, 3, 2), Some((1, 2)));
        assert_eq!(kac_label(4, 3, 7), None);
    }

    #[test]
    fn small_suites_pass() {
        for r in [criterion_grading(5), criterion_virasoro(8), criterion_bk(6), criterion_stability()] {
            assert!(r.passed, "{}", r.line());
        }
    }
}
