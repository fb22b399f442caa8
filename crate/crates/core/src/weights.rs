//! Affine weights of `sl_n^`: coroot pairings, integral root systems, the dot
//! action and depth-bounded enumeration of integral Weyl group orbits.
//!
//! A weight is stored by its classical part in `e`-coordinates (canonical
//! representative with last coordinate 0), its level and an optional
//! `D`-eigenvalue. The shifted weight `lambda + rho` is again an
//! `AffineWeight`, of level `k + n`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, serde_rational, Rational};
use crate::rootdata::{rho_canonical, Root};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    #[serde(rename = "eps", with = "serde_rational::vec")]
    classical: Vec<Rational>,
    #[serde(with = "serde_rational")]
    level: Rational,
    #[serde(rename = "d", with = "serde_rational::option")]
    dcomp: Option<Rational>,
}

fn canonicalize(mut v: Vec<Rational>) -> Vec<Rational> {
    if let Some(&last) = v.last() {
        for x in &mut v {
            *x -= last;
        }
    }
    v
}

impl AffineWeight {
    pub fn new(classical: Vec<Rational>, level: Rational, dcomp: Option<Rational>) -> Self {
        assert!(classical.len() >= 2, "sl_n weights need n >= 2");
        Self {
            classical: canonicalize(classical),
            level,
            dcomp,
        }
    }

    /// The weight `lambda` of level `k` with
    /// `q <lambda + rho, alpha_i^vee> = j_i` for the simple roots `alpha_i`.
    pub fn from_shifted_simple(j: &[Rational], q: i64, level: Rational) -> Self {
        let n = j.len() + 1;
        let mut v = vec![Rational::zero(); n];
        for i in (0..n - 1).rev() {
            v[i] = v[i + 1] + j[i] / q;
        }
        let rho = rho_canonical(n);
        let classical = v.iter().zip(&rho).map(|(a, b)| a - b).collect();
        Self::new(classical, level, None)
    }

    pub fn n(&self) -> usize {
        self.classical.len()
    }

    pub fn classical(&self) -> &[Rational] {
        &self.classical
    }

    pub fn level(&self) -> Rational {
        self.level
    }

    pub fn dcomp(&self) -> Option<Rational> {
        self.dcomp
    }

    pub fn with_dcomp(mut self, d: Option<Rational>) -> Self {
        self.dcomp = d;
        self
    }

    /// `lambda + rho` with `rho = rho_bar + n Lambda_0`.
    pub fn shifted(&self) -> AffineWeight {
        let n = self.n();
        let rho = rho_canonical(n);
        Self {
            classical: self.classical.iter().zip(&rho).map(|(a, b)| a + b).collect(),
            level: self.level + int(n as i64),
            dcomp: self.dcomp,
        }
    }

    /// Inverse of [`AffineWeight::shifted`].
    pub fn unshifted(&self) -> AffineWeight {
        let n = self.n();
        let rho = rho_canonical(n);
        Self {
            classical: self.classical.iter().zip(&rho).map(|(a, b)| a - b).collect(),
            level: self.level - int(n as i64),
            dcomp: self.dcomp,
        }
    }

    /// `<self, (alpha + m delta)^vee>` with no `rho` shift.
    pub fn raw_pair(&self, root: RealRoot) -> Rational {
        root.alpha.pair(&self.classical) + int(root.m) * self.level
    }

    /// `q <lambda_bar + rho_bar, alpha_i^vee>` for each simple root.
    pub fn shifted_simple_coords(&self, q: i64) -> Vec<Rational> {
        let s = self.shifted();
        (0..self.n() - 1)
            .map(|i| (s.classical[i] - s.classical[i + 1]) * q)
            .collect()
    }

    pub fn describe(&self) -> String {
        let eps: Vec<String> = self.classical.iter().map(format_rational).collect();
        format!("[{}] @ level {}", eps.join(", "), format_rational(&self.level))
    }
}

/// The real root `alpha + m delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealRoot {
    pub alpha: Root,
    pub m: i64,
}

impl RealRoot {
    pub fn new(alpha: Root, m: i64) -> Self {
        Self { alpha, m }
    }

    pub fn is_positive(&self) -> bool {
        self.m > 0 || (self.m == 0 && self.alpha.is_positive())
    }

    pub fn neg(self) -> Self {
        Self {
            alpha: self.alpha.neg(),
            m: -self.m,
        }
    }
}

/// `<lambda + rho, (alpha + m delta)^vee> = <lambda_bar + rho_bar, alpha^vee> + m (k + n)`.
pub fn pair(lambda: &AffineWeight, root: RealRoot) -> Rational {
    lambda.shifted().raw_pair(root)
}

/// Residue class `m = residue (mod modulus)` of the `delta`-coefficients making
/// `alpha + m delta` integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub residue: i64,
    pub modulus: i64,
}

impl Progression {
    pub fn contains(&self, m: i64) -> bool {
        (m - self.residue).rem_euclid(self.modulus) == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralRoots {
    /// `Delta_bar(lambda)`: finite roots with integral shifted pairing.
    pub finite_integral: Vec<Root>,
    /// For every finite root, its integral progression if nonempty.
    pub progressions: Vec<(Root, Option<Progression>)>,
}

impl IntegralRoots {
    pub fn progression(&self, a: Root) -> Option<Progression> {
        self.progressions
            .iter()
            .find(|(b, _)| *b == a)
            .and_then(|(_, p)| *p)
    }
}

/// Progression of integral `m` for a shifted pairing `x` at shifted level `p/q`.
pub fn progression_for(x: Rational, shifted_level: Rational) -> Option<Progression> {
    let (p, q) = (*shifted_level.numer(), *shifted_level.denom());
    let qx = x * q;
    if !qx.is_integer() {
        return None;
    }
    let j = qx.to_integer();
    // j + m p = 0 (mod q)
    let pinv = crate::rational::mod_inverse(p.rem_euclid(q), q)?;
    Some(Progression {
        residue: (-j * pinv).rem_euclid(q),
        modulus: q,
    })
}

pub fn integral_roots(lambda: &AffineWeight) -> Result<IntegralRoots> {
    let s = lambda.shifted();
    if s.level.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let n = lambda.n();
    let mut finite_integral = Vec::new();
    let mut progressions = Vec::new();
    for a in crate::rootdata::all_roots(n) {
        let x = a.pair(&s.classical);
        if x.is_integer() {
            finite_integral.push(a);
        }
        progressions.push((a, progression_for(x, s.level)));
    }
    Ok(IntegralRoots {
        finite_integral,
        progressions,
    })
}

/// `w . lambda` for the reflection `w = s_root`:
/// `mu + rho = (lambda + rho) - <lambda + rho, root^vee> root`.
pub fn dot_reflect(lambda: &AffineWeight, root: RealRoot) -> AffineWeight {
    reflect(&lambda.shifted(), root).unshifted()
}

/// Linear reflection of an (already shifted) weight.
pub fn reflect(v: &AffineWeight, root: RealRoot) -> AffineWeight {
    let c = v.raw_pair(root);
    let mut classical = v.classical.clone();
    classical[root.alpha.i] -= c;
    classical[root.alpha.j] += c;
    AffineWeight {
        classical: canonicalize(classical),
        level: v.level,
        dcomp: v.dcomp.map(|d| d - c * int(root.m)),
    }
}

/// A point `w(lambda + rho)` of an integral Weyl group orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitTerm {
    pub point: AffineWeight,
    pub sign: i8,
    pub depth: i64,
}

/// Checks that `lambda + rho` is regular dominant for `Delta(lambda)_+` and
/// that the shifted level is positive.
pub fn check_dominant_regular(lambda: &AffineWeight) -> Result<()> {
    let s = lambda.shifted();
    if !s.level.is_positive() {
        return Err(Error::DominanceViolated(format!(
            "shifted level {} is not positive",
            format_rational(&s.level)
        )));
    }
    for a in crate::rootdata::all_roots(lambda.n()) {
        let x = a.pair(&s.classical);
        if let Some(prog) = progression_for(x, s.level) {
            // smallest admissible m: m >= 0 for positive alpha, m >= 1 otherwise
            let lo = if a.is_positive() { 0 } else { 1 };
            let m = lo + (prog.residue - lo).rem_euclid(prog.modulus);
            let value = x + int(m) * s.level;
            if value < Rational::one() {
                return Err(Error::DominanceViolated(format!(
                    "<lambda+rho, ({a}+{m}d)^vee> = {} for {}",
                    format_rational(&value),
                    lambda.describe()
                )));
            }
        }
    }
    Ok(())
}

/// All points `w(lambda + rho)`, `w` in `W(lambda)`, of depth at most `maxdepth`,
/// sorted by `(depth, classical part)`.
///
/// Points are expanded in increasing depth. Every new point must be reached
/// from one of depth at most its own (connectivity audit) and every
/// rediscovery must carry the same sign.
pub fn orbit_bfs(lambda: &AffineWeight, maxdepth: i64) -> Result<Vec<OrbitTerm>> {
    check_dominant_regular(lambda)?;
    let start = lambda.shifted();
    let level = start.level;
    let base_d = start.dcomp.unwrap_or_else(Rational::zero);
    let n = lambda.n();
    let roots = crate::rootdata::positive_roots(n);

    // (depth, classical) -> sign
    let mut found: HashMap<(i64, Vec<Rational>), i8> = HashMap::new();
    let mut frontier: BTreeMap<(i64, Vec<Rational>), i8> = BTreeMap::new();
    let mut out = Vec::new();
    frontier.insert((0, start.classical.clone()), 1);
    found.insert((0, start.classical.clone()), 1);

    while let Some(((depth, classical), sign)) = frontier.pop_first() {
        let budget = int(maxdepth - depth);
        for &a in &roots {
            let x = a.pair(&classical);
            let Some(prog) = progression_for(x, level) else {
                continue;
            };
            // depth change for alpha + m delta is m x + m^2 L; keep it <= budget
            let vertex = (-x / (level * 2)).floor().to_integer();
            let step = |m: i64| int(m) * x + int(m * m) * level;
            let mut candidates = Vec::new();
            let mut m = vertex;
            while step(m) <= budget || m <= vertex + 1 {
                if step(m) <= budget && prog.contains(m) {
                    candidates.push(m);
                }
                m += 1;
            }
            let mut m = vertex - 1;
            while step(m) <= budget {
                if prog.contains(m) {
                    candidates.push(m);
                }
                m -= 1;
            }
            for m in candidates {
                let c = x + int(m) * level;
                if c.is_zero() {
                    continue;
                }
                let delta = c * int(m);
                debug_assert!(delta.is_integer());
                let child_depth = depth + delta.to_integer();
                let mut child = classical.clone();
                child[a.i] -= c;
                child[a.j] += c;
                let child = canonicalize(child);
                let key = (child_depth, child);
                match found.get(&key) {
                    Some(&s) if s != -sign => {
                        return Err(Error::OrbitSignClash(format!(
                            "depth {child_depth}, point {:?}",
                            key.1.iter().map(format_rational).collect::<Vec<_>>()
                        )))
                    }
                    Some(_) => {}
                    None => {
                        if child_depth < depth {
                            return Err(Error::ConnectivityAudit(format!(
                                "point at depth {child_depth} first reached from depth {depth}"
                            )));
                        }
                        found.insert(key.clone(), -sign);
                        frontier.insert(key, -sign);
                    }
                }
            }
        }
        out.push(OrbitTerm {
            point: AffineWeight {
                classical,
                level,
                dcomp: Some(base_d - int(depth)),
            },
            sign,
            depth,
        });
    }
    out.sort_by(|a, b| (a.depth, &a.point.classical).cmp(&(b.depth, &b.point.classical)));
    Ok(out)
}

/// Invariant form on `h^*` in `e`-coordinates, computed on trace-free representatives.
pub fn classical_norm(v: &[Rational]) -> Rational {
    let n = int(v.len() as i64);
    let mean: Rational = v.iter().copied().sum::<Rational>() / n;
    v.iter().map(|x| (x - mean) * (x - mean)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn sl2(x: Rational, k: Rational) -> AffineWeight {
        AffineWeight::from_shifted_simple(&[x], 1, k)
    }

    fn a12() -> Root {
        Root::new(0, 1)
    }

    #[test]
    fn pairing_examples() {
        let vac = sl2(int(1), frac(-1, 2));
        assert_eq!(pair(&vac, RealRoot::new(a12(), 0)), int(1));
        assert_eq!(pair(&vac, RealRoot::new(a12().neg(), 2)), int(2));
        let lam = AffineWeight::new(vec![frac(1, 3), frac(-2, 5), int(0)], frac(-7, 4), None);
        for a in crate::rootdata::all_roots(3) {
            let d = pair(&lam, RealRoot::new(a, 0)) - pair(&lam, RealRoot::new(a, 1));
            assert_eq!(d, -(frac(-7, 4) + int(3)));
        }
    }

    #[test]
    fn integral_root_examples() {
        let ir = integral_roots(&sl2(frac(1, 2), frac(-1, 2))).unwrap();
        assert!(ir.finite_integral.is_empty());
        let prog = ir.progression(a12()).unwrap();
        assert!(prog.contains(1) && prog.contains(-3) && !prog.contains(2));

        let ir = integral_roots(&sl2(int(1), frac(-1, 2))).unwrap();
        assert_eq!(ir.finite_integral.len(), 2);
        let prog = ir.progression(a12()).unwrap();
        assert!(prog.contains(0) && prog.contains(4) && !prog.contains(1));

        let ir = integral_roots(&AffineWeight::new(vec![int(2), int(1), int(0)], int(1), None)).unwrap();
        assert_eq!(ir.finite_integral.len(), 6);
        assert!(ir.progressions.iter().all(|(_, p)| p.unwrap().modulus == 1));

        assert_eq!(
            integral_roots(&sl2(int(1), int(-2))),
            Err(Error::CriticalLevel)
        );
    }

    #[test]
    fn reflect_examples() {
        let lam = sl2(frac(1, 2), frac(-1, 2)).with_dcomp(Some(int(0)));
        let mu = dot_reflect(&lam, RealRoot::new(a12().neg(), 1));
        let x = a12().pair(&mu.shifted().classical);
        // x -> -x + 2 m (k + n) with m = 1: 1/2 -> 5/2
        assert_eq!(x, frac(5, 2));
        assert_eq!(mu.dcomp(), Some(int(-1)));
        assert_eq!(mu.level(), lam.level());
        assert_eq!(dot_reflect(&mu, RealRoot::new(a12().neg(), 1)), lam);

        let fixed = sl2(int(0), int(1));
        assert_eq!(dot_reflect(&fixed, RealRoot::new(a12(), 0)), fixed);
    }

    #[test]
    fn trivial_orbit() {
        // q x = 2/3 is not integral, so no affine root is integral
        let lam = sl2(frac(1, 3), frac(-1, 2));
        assert!(integral_roots(&lam).unwrap().progression(a12()).is_none());
        let orbit = orbit_bfs(&lam, 10).unwrap();
        assert_eq!(orbit.len(), 1);
        assert_eq!((orbit[0].sign, orbit[0].depth), (1, 0));
    }

    /// The orbit of x = 1 at shifted level 3/2 is {±1 + 6t}; the point y has
    /// depth (y^2 - 1)/6 by invariance of the norm, sign + iff y = 1 mod 6.
    #[test]
    fn dihedral_orbit_matches_hand_enumeration() {
        let lam = sl2(int(1), frac(-1, 2));
        for maxdepth in [0, 3, 4, 12, 40] {
            let orbit = orbit_bfs(&lam, maxdepth).unwrap();
            let mut expected = Vec::new();
            for y in -60i64..=60 {
                if (y - 1).rem_euclid(6) == 0 || (y + 1).rem_euclid(6) == 0 {
                    let depth = (y * y - 1) / 6;
                    if depth <= maxdepth {
                        let sign = if (y - 1).rem_euclid(6) == 0 { 1 } else { -1 };
                        expected.push((depth, y, sign));
                    }
                }
            }
            expected.sort();
            let mut got: Vec<(i64, i64, i8)> = orbit
                .iter()
                .map(|t| (t.depth, t.point.classical[0].to_integer(), t.sign))
                .collect();
            got.sort();
            let expected: Vec<(i64, i64, i8)> =
                expected.into_iter().map(|(d, y, s)| (d, y, s as i8)).collect();
            assert_eq!(got, expected, "maxdepth {maxdepth}");
        }
    }

    #[test]
    fn orbit_rejects_non_dominant() {
        assert!(matches!(
            orbit_bfs(&sl2(int(-1), frac(-1, 2)), 5),
            Err(Error::DominanceViolated(_))
        ));
        assert!(matches!(
            orbit_bfs(&sl2(int(1), int(-3)), 5),
            Err(Error::DominanceViolated(_))
        ));
    }

    #[test]
    fn finite_orbit_at_integral_level() {
        // vacuum of sl_3 at level 1: depth-0 part is the finite Weyl group orbit of rho
        let lam = AffineWeight::new(vec![int(0); 3], int(1), None);
        let orbit = orbit_bfs(&lam, 0).unwrap();
        assert_eq!(orbit.len(), 6);
        assert_eq!(orbit.iter().map(|t| i64::from(t.sign)).sum::<i64>(), 0);
    }

    #[test]
    fn json_round_trip() {
        let lam = AffineWeight::new(vec![frac(1, 3), int(0)], frac(-1, 2), Some(int(2)));
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(s, r#"{"eps":["1/3","0"],"level":"-1/2","d":"2"}"#);
        assert_eq!(serde_json::from_str::<AffineWeight>(&s).unwrap(), lam);
    }

    proptest! {
        #[test]
        fn pair_is_linear_in_m(a in -20i64..20, b in 1i64..6, k in -5i64..5, m in -6i64..6) {
            let lam = sl2(frac(a, b), frac(k, b));
            let r0 = pair(&lam, RealRoot::new(a12(), 0));
            let rm = pair(&lam, RealRoot::new(a12(), m));
            prop_assert_eq!(rm - r0, int(m) * (frac(k, b) + int(2)));
        }

        #[test]
        fn dot_reflect_is_involution(
            xs in proptest::collection::vec((-12i64..12, 1i64..5), 3),
            k in (-9i64..9, 1i64..4),
            i in 0usize..4, j in 0usize..4, m in -3i64..3,
        ) {
            prop_assume!(i != j);
            let lam = AffineWeight::new(
                xs.iter().map(|&(a, b)| frac(a, b)).chain([int(0)]).collect(),
                frac(k.0, k.1),
                Some(int(0)),
            );
            let r = RealRoot::new(Root::new(i, j), m);
            let mu = dot_reflect(&lam, r);
            prop_assert_eq!(mu.level(), lam.level());
            prop_assert_eq!(&dot_reflect(&mu, r), &lam);
            prop_assert_eq!(pair(&mu, r), -pair(&lam, r));
        }

        /// Orbit points preserve the affine norm `|v_bar|^2 + 2 L d`.
        #[test]
        fn orbit_preserves_norm(j1 in 1i64..6, j2 in 1i64..6, p in prop::sample::select(vec![3i64, 5, 7])) {
            let q = 2;
            // principal admissible shape: shifted pairings j/q
            let level = frac(p, q) - int(3);
            let lam = AffineWeight::from_shifted_simple(&[int(j1), int(j2)], q, level);
            prop_assume!(check_dominant_regular(&lam).is_ok());
            let orbit = orbit_bfs(&lam, 6).unwrap();
            let s = lam.shifted();
            let norm0 = classical_norm(&s.classical);
            for t in &orbit {
                let lhs = classical_norm(&t.point.classical) - int(2 * t.depth) * s.level;
                prop_assert_eq!(lhs, norm0);
            }
            prop_assert_eq!(orbit[0].depth, 0);
        }
    }
}
