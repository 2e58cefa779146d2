//! Integer renormalizations between root systems.
//!
//! A renormalization from `R'` (source) to `R` (target) is a linear map
//! `phi: E' -> E` together with positive integers `c(alpha)` on the roots of
//! `R` such that `R' = { c(alpha) phi^{-1}(alpha) }`. Here `phi` is stored as
//! a rational matrix taking source fundamental coordinates to target
//! fundamental coordinates, so everything can be checked with pairings and
//! no metric convention is involved.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::pathmodel::{chain_depth, chain_endpoint, delta_sequence, validate_chain, LSChain};
use crate::rootsys::{CartanType, RootSystem, Series};
use crate::weight::{RationalWeight, Weight};

/// Sublattice of the weight lattice that a group's characters occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lattice {
    /// The full weight lattice (simply connected group).
    Full,
    /// Integer epsilon coordinates in type B: the last fundamental
    /// coordinate is even (the character lattice of the odd orthogonal group).
    EpsIntegral,
}

impl Lattice {
    pub fn contains(&self, w: &Weight) -> bool {
        match self {
            Lattice::Full => true,
            Lattice::EpsIntegral => w.0.last().is_some_and(|x| x % 2 == 0),
        }
    }

    fn generators(&self, rank: usize) -> Vec<Weight> {
        (0..rank)
            .map(|i| {
                let mut w = Weight::fundamental(rank, i);
                if *self == Lattice::EpsIntegral && i + 1 == rank {
                    w.0[i] = 2;
                }
                w
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Renormalization {
    pub name: String,
    pub source: RootSystem,
    pub target: RootSystem,
    /// Columns are the images of the source fundamental weights, in target
    /// fundamental coordinates.
    pub phi: QMatrix,
    /// `c(alpha)` for each positive root of the target, by root index.
    pub c: Vec<i64>,
    /// `alpha -> alpha' = c(alpha) phi^{-1}(alpha)` as source positive root
    /// indices; `None` where the image is not a positive source root.
    pub root_match: Vec<Option<usize>>,
    pub source_lattice: Lattice,
    pub target_lattice: Lattice,
    /// When set, `c(alpha) = p^{d(alpha)}` makes this a special isomorphism.
    pub prime: Option<i64>,
}

/// Outcome of one structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub renormalization: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &str, failures: Vec<String>, ok_detail: String) {
        let passed = failures.is_empty();
        let detail = if passed { ok_detail } else { failures.into_iter().take(3).collect::<Vec<_>>().join("; ") };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "renormalization {}", self.renormalization)?;
        for c in &self.checks {
            writeln!(f, "  {:<20} {}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

impl Renormalization {
    /// Assembles a renormalization and computes its root matching; nothing is
    /// validated here.
    pub fn new(
        name: &str,
        source: RootSystem,
        target: RootSystem,
        phi: QMatrix,
        c: Vec<i64>,
    ) -> Result<Renormalization> {
        if phi.rows() != target.rank() || phi.cols() != source.rank() {
            return Err(Error::input(format!(
                "phi must be {}x{}, got {}x{}",
                target.rank(),
                source.rank(),
                phi.rows(),
                phi.cols()
            )));
        }
        if c.len() != target.positive_roots().len() {
            return Err(Error::input("c must have one entry per positive target root"));
        }
        let mut rn = Renormalization {
            name: name.to_string(),
            source,
            target,
            phi,
            c,
            root_match: Vec::new(),
            source_lattice: Lattice::Full,
            target_lattice: Lattice::Full,
            prime: None,
        };
        rn.root_match = rn.compute_root_match();
        Ok(rn)
    }

    fn compute_root_match(&self) -> Vec<Option<usize>> {
        let Ok(inv) = self.phi.inverse() else {
            return vec![None; self.c.len()];
        };
        self.target
            .positive_roots()
            .iter()
            .zip(&self.c)
            .map(|(root, &c)| {
                let pre = RationalWeight(inv.apply_int(&root.weight.0));
                let scaled = RationalWeight(pre.0.iter().map(|x| x * q(c)).collect());
                scaled.to_weight().and_then(|w| self.source.root_index(&w))
            })
            .collect()
    }

    fn with_lattices(mut self, source: Lattice, target: Lattice) -> Self {
        self.source_lattice = source;
        self.target_lattice = target;
        self
    }

    fn with_prime(mut self, p: i64) -> Self {
        self.prime = Some(p);
        self
    }

    fn image(&self, w: &Weight) -> RationalWeight {
        RationalWeight(self.phi.apply_int(&w.0))
    }

    /// `phi(lambda')` for an integral source weight.
    pub fn map_weight(&self, w: &Weight) -> Result<Weight> {
        self.source.check_rank(w)?;
        if !self.source_lattice.contains(w) {
            return Err(Error::input(format!(
                "{w} is not in the character lattice of the source of {}",
                self.name
            )));
        }
        let img = self.image(w);
        let out = img.to_weight().ok_or_else(|| {
            Error::invariant(format!("{} maps {w} to non-integral {img}", self.name))
        })?;
        if !self.target_lattice.contains(&out) {
            return Err(Error::invariant(format!(
                "{} maps {w} outside the target character lattice",
                self.name
            )));
        }
        Ok(out)
    }

    /// Applies `phi` to every step of a source chain, keeping the cuts, and
    /// checks the result is a valid chain of shape `phi(shape)`.
    pub fn transport_chain(&self, chain: &LSChain) -> Result<LSChain> {
        let out = LSChain {
            shape: self.map_weight_unchecked(&chain.shape)?,
            steps: chain.steps.iter().map(|s| self.map_weight_unchecked(s)).collect::<Result<_>>()?,
            cuts: chain.cuts.clone(),
        };
        validate_chain(&self.target, &out).map_err(|e| {
            Error::invariant(format!("transported chain is not an LS chain: {e}"))
        })?;
        Ok(out)
    }

    /// Like `map_weight`, for orbit elements that need not lie in a
    /// restricted character lattice.
    fn map_weight_unchecked(&self, w: &Weight) -> Result<Weight> {
        let img = self.image(w);
        img.to_weight()
            .ok_or_else(|| Error::invariant(format!("{} maps {w} to non-integral {img}", self.name)))
    }

    /// `delta_t`, depth and endpoint of a transported chain agree with the
    /// images of those of the source chain.
    pub fn check_transport_equivariance(&self, chain: &LSChain, image: &LSChain) -> Result<()> {
        let src = delta_sequence(chain);
        let dst = delta_sequence(image);
        for (a, b) in src.iter().zip(&dst) {
            if RationalWeight(self.phi.apply(&a.0)) != *b {
                return Err(Error::invariant(format!("delta_t mismatch: phi({a}) != {b}")));
            }
        }
        if self.map_weight_unchecked(&chain_depth(chain)?)? != chain_depth(image)? {
            return Err(Error::invariant("depth does not commute with phi"));
        }
        if self.map_weight_unchecked(&chain_endpoint(chain)?)? != chain_endpoint(image)? {
            return Err(Error::invariant("endpoint does not commute with phi"));
        }
        Ok(())
    }

    /// Runs every structural check, including validation of the dual
    /// renormalization.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.validate_core();
        match self.dual() {
            Ok(dual) => {
                let inner = dual.validate_core();
                let failures: Vec<String> =
                    inner.failures().map(|c| format!("dual {}: {}", c.name, c.detail)).collect();
                report.push("dual", failures, format!("{} valid", dual.name));
            }
            Err(e) => report.push("dual", vec![e.to_string()], String::new()),
        }
        report
    }

    fn validate_core(&self) -> ValidationReport {
        let mut report = ValidationReport { renormalization: self.name.clone(), checks: Vec::new() };
        let n_src = self.source.rank();
        let inv = self.phi.inverse();
        report.push(
            "invertible",
            inv.as_ref().err().map(|e| e.to_string()).into_iter().collect(),
            format!("{}x{}", self.phi.rows(), self.phi.cols()),
        );

        // R'+ = { c(alpha) phi^{-1}(alpha) : alpha in R+ }
        let mut fails = Vec::new();
        if self.c.iter().any(|&c| c <= 0) {
            fails.push("c takes a non-positive value".to_string());
        }
        let mut hit = HashSet::new();
        for (a, m) in self.root_match.iter().enumerate() {
            match m {
                None => fails.push(format!(
                    "{} * phi^-1({}) is not a positive source root",
                    self.c[a],
                    self.target.positive_roots()[a].weight
                )),
                Some(s) => {
                    if !hit.insert(*s) {
                        fails.push(format!("source root {s} matched twice"));
                    }
                }
            }
        }
        if hit.len() != self.source.positive_roots().len() {
            fails.push(format!(
                "{} of {} source positive roots are hit",
                hit.len(),
                self.source.positive_roots().len()
            ));
        }
        report.push("root bijection", fails, format!("{} roots matched", hit.len()));

        let gens = self.source_lattice.generators(n_src);
        let mut fails = Vec::new();
        for g in &gens {
            match self.image(g).to_weight() {
                None => fails.push(format!("phi({g}) is not integral")),
                Some(img) if !self.target_lattice.contains(&img) => {
                    fails.push(format!("phi({g}) = {img} leaves the target lattice"))
                }
                _ => {}
            }
        }
        report.push("lattice", fails, format!("{:?} -> {:?}", self.source_lattice, self.target_lattice));

        // <phi(w'), alpha^vee> = c(alpha) <w', alpha'^vee> on a basis of P(R')
        let mut fails = Vec::new();
        for j in 0..n_src {
            let basis = Weight::fundamental(n_src, j);
            let img = self.image(&basis);
            for (a, m) in self.root_match.iter().enumerate() {
                let Some(s) = m else { continue };
                let lhs = self.target.pairing(&img, a);
                let rhs = q(self.c[a] * self.source.pairing_int(&basis, *s));
                if lhs != rhs {
                    fails.push(format!("omega'_{}: root {a}: {lhs} != {rhs}", j + 1));
                }
            }
        }
        report.push("pairing identity", fails, "holds on the fundamental basis".into());

        let fails: Vec<String> = (0..n_src)
            .filter_map(|j| {
                let img = self.image(&Weight::fundamental(n_src, j));
                img.0.iter().any(|x| *x < Q::zero()).then(|| format!("phi(omega'_{}) = {img}", j + 1))
            })
            .collect();
        report.push("dominance", fails, "fundamental weights map to dominant weights".into());

        // phi sigma_{alpha'} = sigma_alpha phi
        let mut fails = Vec::new();
        for (a, m) in self.root_match.iter().enumerate() {
            let Some(s) = m else { continue };
            for j in 0..n_src {
                let basis = Weight::fundamental(n_src, j);
                let left = self.image(&self.source.reflect(&basis, *s));
                let right = self.target.reflect_rational(&self.image(&basis), a);
                if left != right {
                    fails.push(format!("root {a} on omega'_{}", j + 1));
                }
            }
        }
        report.push("weyl equivariance", fails, "reflections intertwined".into());

        // phi maps simple roots of R' to positive multiples of simple roots of R
        let mut fails = Vec::new();
        for i in 0..n_src {
            let img = self.image(&self.source.simple_root(i).weight);
            let coords = self.target.to_simple_coords(&img);
            let support: Vec<usize> = (0..coords.len()).filter(|&k| !coords[k].is_zero()).collect();
            if support.len() != 1 || coords[support[0]] <= Q::zero() {
                fails.push(format!("phi(alpha'_{}) = {img}", i + 1));
            }
        }
        report.push("simple roots", fails, "each maps to a positive multiple of a simple root".into());

        if let Some(p) = self.prime {
            let fails: Vec<String> = self
                .c
                .iter()
                .enumerate()
                .filter(|(_, &c)| prime_exponent(c, p).is_none())
                .map(|(a, c)| format!("c(root {a}) = {c} is not a power of {p}"))
                .collect();
            report.push("special", fails, format!("c = {p}^d"));
        }
        report
    }

    /// The renormalization `(phi^{-1}, c')` from the dual of the target to the
    /// dual of the source, with `c'((alpha')^vee) = c(alpha)`.
    pub fn dual(&self) -> Result<Renormalization> {
        let a = QMatrix::from_rows(self.target.cartan());
        let a_src = QMatrix::from_rows(self.source.cartan());
        // A functional f maps to f o phi; in fundamental coordinates of the
        // coroot systems this is A' phi^T A^{-1}.
        let psi = a_src.mul(&self.phi.transpose()).mul(&a.inverse()?);
        let dual_source = self.target.dual();
        let dual_target = self.source.dual();
        let n_src = self.source.rank();
        let mut c_dual = vec![0i64; dual_target.positive_roots().len()];
        for (a_idx, m) in self.root_match.iter().enumerate() {
            let s = m.ok_or_else(|| Error::invariant("root matching is incomplete"))?;
            // alpha'^vee as a functional, evaluated on the simple roots of R'.
            let coroot = Weight(
                (0..n_src).map(|k| self.source.pairing_int(&self.source.simple_root(k).weight, s)).collect(),
            );
            let idx = dual_target
                .root_index(&coroot)
                .ok_or_else(|| Error::invariant(format!("{coroot} is not a root of the dual source")))?;
            c_dual[idx] = self.c[a_idx];
        }
        let mut dual = Renormalization::new(&format!("dual({})", self.name), dual_source, dual_target, psi, c_dual)?;
        dual.prime = self.prime;
        Ok(dual)
    }

    /// The matrix identity `phi o phi = p * id`, meaningful when source and
    /// target coincide.
    pub fn squares_to(&self, p: i64) -> bool {
        self.phi.rows() == self.phi.cols() && self.phi.mul(&self.phi) == QMatrix::scalar(self.phi.rows(), q(p))
    }
}

fn prime_exponent(c: i64, p: i64) -> Option<u32> {
    let mut x = c;
    let mut d = 0;
    while x > 1 && x % p == 0 {
        x /= p;
        d += 1;
    }
    (x == 1).then_some(d)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn c_by_length(target: &RootSystem, short: i64, long: i64) -> Vec<i64> {
    (0..target.positive_roots().len()).map(|a| if target.is_short(a) { short } else { long }).collect()
}

/// Images of the source fundamental weights under an epsilon-coordinate map.
fn phi_from_eps(source: &RootSystem, target: &RootSystem, scale: Q) -> Result<QMatrix> {
    let n = source.rank();
    let cols = (0..n)
        .map(|j| {
            let eps = source.to_eps(&Weight::fundamental(n, j).to_rational())?;
            let scaled: Vec<Q> = eps.iter().map(|x| x * scale).collect();
            Ok(target.from_eps(&scaled)?.0)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_columns(&cols))
}

fn parse_rank(params: &[&str], idx: usize, what: &str) -> Result<usize> {
    let raw = params.get(idx).ok_or_else(|| Error::input(format!("missing parameter {what}")))?;
    let l: usize = raw.parse().map_err(|_| Error::input(format!("{what} must be an integer, got `{raw}`")))?;
    if l < 2 {
        return Err(Error::input(format!("{what} must be at least 2")));
    }
    Ok(l)
}

fn parse_int(raw: Option<&&str>, what: &str) -> Result<i64> {
    let raw = raw.ok_or_else(|| Error::input(format!("missing parameter {what}")))?;
    raw.parse().map_err(|_| Error::input(format!("{what} must be an integer, got `{raw}`")))
}

/// Names of the built-in renormalizations with their parameter syntax.
pub const BUILTINS: &[(&str, &str)] = &[
    ("trivial", "trivial:<type>:<c>   phi = identity on the ambient space, c constant"),
    ("short_to_dual", "short_to_dual:<type>   c = length ratio on short roots; source is the dual type"),
    ("so_to_sp", "so_to_sp:<l>   C_l -> B_l, identity on epsilon coordinates"),
    ("sp_to_spin", "sp_to_spin:<l>   B_l -> C_l, doubling on epsilon coordinates"),
    ("f4", "f4   F4 -> F4 special isomorphism in characteristic 2"),
    ("g2", "g2   G2 -> G2 special isomorphism in characteristic 3"),
    ("frobenius", "frobenius:<type>:<p>   multiplication by a prime p"),
];

/// Looks up a built-in by a `name:param:param` string.
pub fn parse_builtin(descriptor: &str) -> Result<Renormalization> {
    let mut parts = descriptor.split(':');
    let name = parts.next().unwrap_or_default();
    let params: Vec<&str> = parts.collect();
    builtin(name, &params)
}

/// Constructs a built-in renormalization.
pub fn builtin(name: &str, params: &[&str]) -> Result<Renormalization> {
    match name {
        "trivial" => {
            let rs = RootSystem::from_label(params.first().copied().unwrap_or(""))?;
            let c = parse_int(params.get(1).or(Some(&"1")), "c")?;
            if c < 1 {
                return Err(Error::input("c must be a positive integer"));
            }
            let n = rs.rank();
            let roots = rs.positive_roots().len();
            Renormalization::new(
                &format!("trivial:{}:{c}", rs.label()),
                rs.clone(),
                rs,
                QMatrix::scalar(n, q(c)),
                vec![c; roots],
            )
        }
        "frobenius" => {
            let rs = RootSystem::from_label(params.first().copied().unwrap_or(""))?;
            let p = parse_int(params.get(1), "p")?;
            if !is_prime(p) {
                return Err(Error::input(format!("frobenius requires a prime, got {p}")));
            }
            let n = rs.rank();
            let roots = rs.positive_roots().len();
            Ok(Renormalization::new(
                &format!("frobenius:{}:{p}", rs.label()),
                rs.clone(),
                rs,
                QMatrix::scalar(n, q(p)),
                vec![p; roots],
            )?
            .with_prime(p))
        }
        "short_to_dual" => short_to_dual(params.first().copied().unwrap_or("")),
        "so_to_sp" => {
            let l = parse_rank(params, 0, "l")?;
            let source = RootSystem::build(CartanType::new(Series::C, l)?);
            let target = RootSystem::build(CartanType::new(Series::B, l)?);
            let phi = phi_from_eps(&source, &target, Q::one())?;
            let c = c_by_length(&target, 2, 1);
            Ok(Renormalization::new(&format!("so_to_sp:{l}"), source, target, phi, c)?
                .with_lattices(Lattice::Full, Lattice::EpsIntegral)
                .with_prime(2))
        }
        "sp_to_spin" => {
            let l = parse_rank(params, 0, "l")?;
            let source = RootSystem::build(CartanType::new(Series::B, l)?);
            let target = RootSystem::build(CartanType::new(Series::C, l)?);
            let phi = phi_from_eps(&source, &target, q(2))?;
            let c = c_by_length(&target, 2, 1);
            Ok(Renormalization::new(&format!("sp_to_spin:{l}"), source, target, phi, c)?.with_prime(2))
        }
        "f4" => {
            let rs = RootSystem::build(CartanType::new(Series::F, 4)?);
            // phi(w1) = 2 w4, phi(w2) = 2 w3, phi(w3) = w2, phi(w4) = w1
            let phi = QMatrix::from_columns(&[
                vec![0i64, 0, 0, 2],
                vec![0, 0, 2, 0],
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
            ]);
            let c = c_by_length(&rs, 2, 1);
            Ok(Renormalization::new("f4", rs.clone(), rs, phi, c)?.with_prime(2))
        }
        "g2" => {
            let rs = RootSystem::build(CartanType::new(Series::G, 2)?);
            // phi(w1) = w2, phi(w2) = 3 w1
            let phi = QMatrix::from_columns(&[vec![0i64, 1], vec![3, 0]]);
            let c = c_by_length(&rs, 3, 1);
            Ok(Renormalization::new("g2", rs.clone(), rs, phi, c)?.with_prime(3))
        }
        _ => Err(Error::input(format!(
            "unknown renormalization `{name}`; known: {}",
            BUILTINS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Identity on the ambient space with `c = r` on short roots and `1` on
/// long roots. The rescaled simple roots `c(alpha_i) alpha_i` form the dual
/// type; its Bourbaki numbering is recovered by a permutation.
fn short_to_dual(label: &str) -> Result<Renormalization> {
    let target = RootSystem::from_label(label)?;
    let t = target.cartan_type().expect("built from a label");
    let (source_type, perm): (CartanType, Vec<usize>) = match t.series {
        Series::B | Series::C => (t.dual(), (0..t.rank).collect()),
        Series::F | Series::G => (t, (0..t.rank).rev().collect()),
        _ => {
            return Err(Error::input(format!(
                "short_to_dual needs roots of two lengths; {label} is simply laced"
            )))
        }
    };
    let n = target.rank();
    let ratio = target.symmetrizer().iter().max().copied().unwrap_or(1);
    let simple_c: Vec<i64> = (0..n).map(|i| if target.is_short(i) { ratio } else { 1 }).collect();
    let source = RootSystem::build(source_type);

    // Cartan matrix of the rescaled simple roots, compared with the source
    // type under the permutation.
    let a = target.cartan();
    for k in 0..n {
        for l in 0..n {
            let (i, j) = (perm[k], perm[l]);
            let scaled = q(simple_c[i] * a[i][j]) / q(simple_c[j]);
            if scaled != q(source.cartan()[k][l]) {
                return Err(Error::invariant(format!("rescaled {label} does not match {source_type}")));
            }
        }
    }
    // Source fundamental weight k is simple_c[perm[k]] * omega_{perm[k]}.
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            let mut v = vec![0; n];
            v[perm[k]] = simple_c[perm[k]];
            v
        })
        .collect();
    let c = c_by_length(&target, ratio, 1);
    Ok(Renormalization::new(&format!("short_to_dual:{label}"), source, target, QMatrix::from_columns(&cols), c)?
        .with_prime(ratio))
}

/// Every built-in instance used by the validation sweep.
pub fn builtin_catalog() -> Vec<Renormalization> {
    let descriptors = [
        "trivial:A2:1",
        "trivial:B2:1",
        "trivial:G2:2",
        "short_to_dual:B2",
        "short_to_dual:B3",
        "short_to_dual:C3",
        "short_to_dual:F4",
        "short_to_dual:G2",
        "so_to_sp:2",
        "so_to_sp:3",
        "sp_to_spin:2",
        "sp_to_spin:3",
        "f4",
        "g2",
        "frobenius:A1:2",
        "frobenius:A2:2",
        "frobenius:B2:3",
        "frobenius:G2:2",
    ];
    descriptors.iter().map(|s| parse_builtin(s).expect("built-in descriptors are valid")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn identity_passes() {
        let r = parse_builtin("trivial:B3:1").unwrap();
        let rep = r.validate();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn short_to_dual_b2_source_is_c2() {
        let r = parse_builtin("short_to_dual:B2").unwrap();
        assert!(r.validate().all_passed(), "{}", r.validate());
        assert_eq!(r.source.cartan(), RootSystem::from_label("B2").unwrap().dual().cartan());
        assert_eq!(r.source.label(), "C2");
    }

    #[test]
    fn corrupted_c_fails_root_check() {
        let b2 = RootSystem::from_label("B2").unwrap();
        let r = Renormalization::new("bad", b2.clone(), b2, QMatrix::identity(2), vec![2; 4]).unwrap();
        let rep = r.validate();
        assert!(!rep.all_passed());
        assert!(rep.failures().any(|c| c.name == "root bijection"));
    }

    #[test]
    fn g2_and_f4_tables() {
        let g2 = builtin("g2", &[]).unwrap();
        assert_eq!(g2.map_weight(&w(&[1, 0])).unwrap(), w(&[0, 1]));
        assert_eq!(g2.map_weight(&w(&[0, 1])).unwrap(), w(&[3, 0]));
        assert!(g2.squares_to(3));
        let f4 = builtin("f4", &[]).unwrap();
        // a w1 + b w2 + c w3 + d w4 -> d w1 + c w2 + 2b w3 + 2a w4
        assert_eq!(f4.map_weight(&w(&[1, 2, 3, 4])).unwrap(), w(&[4, 3, 4, 2]));
        assert!(f4.squares_to(2));
    }

    #[test]
    fn short_to_dual_reproduces_f4_and_g2_tables() {
        assert_eq!(parse_builtin("short_to_dual:G2").unwrap().phi, builtin("g2", &[]).unwrap().phi);
        assert_eq!(parse_builtin("short_to_dual:F4").unwrap().phi, builtin("f4", &[]).unwrap().phi);
    }

    #[test]
    fn spin_doubling() {
        let r = builtin("sp_to_spin", &["2"]).unwrap();
        let spin = r.source.weight_from_eps(&[Q::new(1, 2), Q::new(1, 2)]).unwrap();
        let img = r.map_weight(&spin).unwrap();
        assert_eq!(r.target.to_eps(&img.to_rational()).unwrap(), vec![q(1), q(1)]);
    }

    #[test]
    fn so_to_sp_respects_character_lattice() {
        let r = builtin("so_to_sp", &["2"]).unwrap();
        assert_eq!(r.map_weight(&w(&[0, 1])).unwrap(), w(&[0, 2]));
        assert_eq!(r.map_weight(&w(&[1, 0])).unwrap(), w(&[1, 0]));
    }

    #[test]
    fn frobenius_on_a1() {
        let r = builtin("frobenius", &["A1", "3"]).unwrap();
        assert_eq!(r.c, vec![3]);
        assert_eq!(r.map_weight(&w(&[2])).unwrap(), w(&[6]));
        assert_eq!(r.map_weight(&w(&[0])).unwrap(), w(&[0]));
    }

    #[test]
    fn builtin_errors() {
        assert!(builtin("nope", &[]).unwrap_err().is_input());
        assert!(builtin("so_to_sp", &["1"]).unwrap_err().is_input());
        assert!(builtin("frobenius", &["A2", "4"]).unwrap_err().is_input());
        assert!(builtin("short_to_dual", &["A3"]).unwrap_err().is_input());
    }

    #[test]
    fn catalog_validates() {
        for r in builtin_catalog() {
            let rep = r.validate();
            assert!(rep.all_passed(), "{rep}");
        }
    }
}
