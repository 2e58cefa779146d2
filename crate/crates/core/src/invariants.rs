//! Invariant multiplicities of n-fold tensor products and sweeps that check
//! the inequalities induced by renormalizations.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::charoracle::{tensor_decompose_oracle, weyl_dim};
use crate::error::{Error, Result};
use crate::pathmodel::{tensor_decompose, TensorDecomposition};
use crate::renorm::{builtin, Lattice, Renormalization};
use crate::rootsys::{CartanType, RootSystem, Series};
use crate::weight::Weight;

/// Which computation supplies the tensor product decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum Method {
    #[default]
    PathModel,
    Oracle,
}

/// Computes `[lambda_1, ..., lambda_n]` for one root system, memoizing
/// tensor decompositions and folded suffixes. Safe to share across threads.
pub struct InvariantCalculator {
    rs: RootSystem,
    method: Method,
    tensors: RwLock<HashMap<(Weight, Weight), Arc<TensorDecomposition>>>,
    folds: RwLock<HashMap<Vec<Weight>, u64>>,
}

impl InvariantCalculator {
    pub fn new(rs: &RootSystem, method: Method) -> Self {
        Self { rs: rs.clone(), method, tensors: RwLock::default(), folds: RwLock::default() }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn tensor(&self, mu: &Weight, nu: &Weight) -> Result<Arc<TensorDecomposition>> {
        let key = (mu.clone(), nu.clone());
        if let Some(d) = self.tensors.read().expect("lock poisoned").get(&key) {
            return Ok(Arc::clone(d));
        }
        let d = Arc::new(match self.method {
            Method::PathModel => {
                let mut d = if weyl_dim(&self.rs, mu)? <= weyl_dim(&self.rs, nu)? {
                    tensor_decompose(&self.rs, mu, nu)?
                } else {
                    tensor_decompose(&self.rs, nu, mu)?
                };
                d.left = mu.clone();
                d.right = nu.clone();
                d
            }
            Method::Oracle => tensor_decompose_oracle(&self.rs, mu, nu)?,
        });
        self.tensors.write().expect("lock poisoned").insert(key, Arc::clone(&d));
        Ok(d)
    }

    /// Dimension of the invariants in `V(lambda_1) (x) ... (x) V(lambda_n)`,
    /// by folding the first two factors:
    /// `[l1, l2, rest] = sum_mu m(mu; l1, l2) [mu, rest]`.
    pub fn invariant_dim(&self, weights: &[Weight]) -> Result<u64> {
        if weights.is_empty() {
            return Err(Error::input("invariant_dim needs at least one weight"));
        }
        for w in weights {
            self.rs.check_dominant(w)?;
        }
        self.fold(weights)
    }

    fn fold(&self, weights: &[Weight]) -> Result<u64> {
        match weights {
            [l] => return Ok(u64::from(l.is_zero())),
            [l, m] => return Ok(u64::from(*m == self.rs.dual_weight(l))),
            _ => {}
        }
        if let Some(&v) = self.folds.read().expect("lock poisoned").get(weights) {
            return Ok(v);
        }
        let d = self.tensor(&weights[0], &weights[1])?;
        let mut total = 0;
        let mut rest = Vec::with_capacity(weights.len() - 1);
        for (mu, &m) in &d.components {
            rest.clear();
            rest.push(mu.clone());
            rest.extend_from_slice(&weights[2..]);
            total += m * self.fold(&rest)?;
        }
        self.folds.write().expect("lock poisoned").insert(weights.to_vec(), total);
        Ok(total)
    }
}

/// One tuple of a sweep: its image and both sides of the inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleRow {
    pub tuple: Vec<Weight>,
    pub image: Vec<Weight>,
    pub lhs: u64,
    pub rhs: u64,
}

/// `lhs <= rhs` checked on every tuple of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub renormalization: String,
    pub rows: Vec<TupleRow>,
    /// Indices into `rows` with `lhs > rhs`.
    pub violations: Vec<usize>,
    pub strict_count: usize,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Computes both sides of
/// `[l'_1, ..., l'_n]_{R'} <= [phi(l'_1), ..., phi(l'_n)]_R` for each tuple.
pub fn verify_inequality(rn: &Renormalization, tuples: &[Vec<Weight>], method: Method) -> Result<VerificationReport> {
    let src = InvariantCalculator::new(&rn.source, method);
    let dst = InvariantCalculator::new(&rn.target, method);
    verify_with(rn, tuples, &src, &dst)
}

/// As [`verify_inequality`], reusing caller-owned calculators.
pub fn verify_with(
    rn: &Renormalization,
    tuples: &[Vec<Weight>],
    src: &InvariantCalculator,
    dst: &InvariantCalculator,
) -> Result<VerificationReport> {
    for t in tuples {
        for w in t {
            rn.source.check_dominant(w)?;
        }
    }
    let rows: Vec<TupleRow> = tuples
        .par_iter()
        .map(|t| {
            let image = t.iter().map(|w| rn.map_weight(w)).collect::<Result<Vec<_>>>()?;
            Ok(TupleRow { lhs: src.invariant_dim(t)?, rhs: dst.invariant_dim(&image)?, tuple: t.clone(), image })
        })
        .collect::<Result<_>>()?;
    let violations = rows.iter().enumerate().filter(|(_, r)| r.lhs > r.rhs).map(|(i, _)| i).collect();
    let strict_count = rows.iter().filter(|r| r.lhs < r.rhs).count();
    Ok(VerificationReport { renormalization: rn.name.clone(), rows, violations, strict_count })
}

/// `[l_1, ..., l_n] <= [p l_1, ..., p l_n]` via the Frobenius renormalization.
pub fn frobenius_check(rs: &RootSystem, tuples: &[Vec<Weight>], p: i64, method: Method) -> Result<VerificationReport> {
    let rn = builtin("frobenius", &[rs.label(), &p.to_string()])?;
    verify_inequality(&rn, tuples, method)
}

/// All `n`-tuples over `pool`, in lexicographic order of pool indices.
pub fn tuples_from(pool: &[Weight], n: usize) -> Vec<Vec<Weight>> {
    let mut out: Vec<Vec<Weight>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                pool.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Dominant weights with fundamental coordinates at most `bound` lying in
/// `lattice`.
pub fn dominant_pool(rs: &RootSystem, bound: i64, lattice: Lattice) -> Vec<Weight> {
    rs.dominant_weights_up_to(bound).into_iter().filter(|w| lattice.contains(w)).collect()
}

/// Dominant weights whose largest epsilon coordinate is at most `height`.
pub fn dominant_pool_by_eps_height(rs: &RootSystem, height: i64, lattice: Lattice) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for w in rs.dominant_weights_up_to(2 * height) {
        let eps = rs.to_eps(&w.to_rational())?;
        if eps.iter().all(|x| x.abs() <= crate::linalg::q(height)) && lattice.contains(&w) {
            out.push(w);
        }
    }
    Ok(out)
}

/// One spin-side tuple of the saturation scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationRow {
    pub tuple: Vec<Weight>,
    /// `[lambda]` for the spin group (type B, full weight lattice).
    pub spin: u64,
    /// `[lambda]` for the symplectic group when `lambda` has integral epsilon
    /// coordinates.
    pub sp_at_1: Option<u64>,
    /// `[2 lambda]` for the symplectic group.
    pub sp_at_2: u64,
    /// Smallest `N` in `{1, 2}` with `[N lambda]_Sp > 0`.
    pub witness: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub rank: usize,
    pub n: usize,
    pub bound: i64,
    pub rows: Vec<SaturationRow>,
    /// Tuples with `[lambda]_Sp > 0` but `[lambda]_B = 0`.
    pub sp_to_b_counterexamples: Vec<usize>,
    /// Tuples with `[lambda]_Spin > 0` but `[2 lambda]_Sp = 0`.
    pub spin_to_sp_counterexamples: Vec<usize>,
    /// Tuples in the spin semigroup that need `N = 2` on the symplectic side.
    pub saturation_witnesses: Vec<usize>,
}

impl SaturationReport {
    pub fn holds(&self) -> bool {
        self.sp_to_b_counterexamples.is_empty() && self.spin_to_sp_counterexamples.is_empty()
    }
}

/// Compares the tensor semigroups of `Spin(2l+1)` and `Sp(2l)` on all
/// `n`-tuples of type-B dominant weights with fundamental coordinates at
/// most `bound`.
pub fn saturation_scan(rank: usize, n: usize, bound: i64, method: Method) -> Result<SaturationReport> {
    if rank < 2 {
        return Err(Error::input("saturation scan needs rank at least 2"));
    }
    if n < 3 {
        return Err(Error::input("saturation scan needs n at least 3"));
    }
    let l = rank.to_string();
    let so_to_sp = builtin("so_to_sp", &[&l])?;
    let sp_to_spin = builtin("sp_to_spin", &[&l])?;
    let b = RootSystem::build(CartanType::new(Series::B, rank)?);
    let b_calc = InvariantCalculator::new(&b, method);
    let c_calc = InvariantCalculator::new(&sp_to_spin.target, method);
    let inverse_so = so_to_sp.phi.inverse()?;

    let pool = b.dominant_weights_up_to(bound);
    let rows: Vec<SaturationRow> = tuples_from(&pool, n)
        .into_par_iter()
        .map(|t| {
            let spin = b_calc.invariant_dim(&t)?;
            let sp_at_1 = if t.iter().all(|w| Lattice::EpsIntegral.contains(w)) {
                let as_c = t
                    .iter()
                    .map(|w| {
                        crate::weight::RationalWeight(inverse_so.apply_int(&w.0))
                            .to_weight()
                            .ok_or_else(|| Error::invariant(format!("{w} has no symplectic preimage")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(c_calc.invariant_dim(&as_c)?)
            } else {
                None
            };
            let doubled = t.iter().map(|w| sp_to_spin.map_weight(w)).collect::<Result<Vec<_>>>()?;
            let sp_at_2 = c_calc.invariant_dim(&doubled)?;
            let witness = if sp_at_1.is_some_and(|v| v > 0) {
                Some(1)
            } else if sp_at_2 > 0 {
                Some(2)
            } else {
                None
            };
            Ok(SaturationRow { tuple: t, spin, sp_at_1, sp_at_2, witness })
        })
        .collect::<Result<_>>()?;

    let idx = |pred: &dyn Fn(&SaturationRow) -> bool| -> Vec<usize> {
        rows.iter().enumerate().filter(|(_, r)| pred(r)).map(|(i, _)| i).collect()
    };
    // On integral tuples the B-side value is the spin value.
    let sp_to_b_counterexamples = idx(&|r| r.sp_at_1.is_some_and(|v| v > 0) && r.spin == 0);
    let spin_to_sp_counterexamples = idx(&|r| r.spin > 0 && r.sp_at_2 == 0);
    let saturation_witnesses = idx(&|r| r.spin > 0 && r.sp_at_1 == Some(0) && r.sp_at_2 > 0);
    Ok(SaturationReport {
        rank,
        n,
        bound,
        rows,
        sp_to_b_counterexamples,
        spin_to_sp_counterexamples,
        saturation_witnesses,
    })
}
