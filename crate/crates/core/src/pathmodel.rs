//! Lakshmibai-Seshadri chains in Bruhat orders of Weyl orbits, and the
//! tensor product multiplicities they count.
//!
//! A chain of shape `mu` is a sequence `mu_0 <_{b_1} mu_1 < ... <_{b_l} mu_l`
//! of orbit elements with rational cuts `0 < b_1 < ... < b_l < 1`. The
//! partial sums `delta_t` trace a piecewise-linear path from `0` to the
//! endpoint `omega(C)`; the depth `delta(C)` is their coordinatewise minimum
//! in the fundamental basis.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::rootsys::{memoized, OrbitPoset, RootSystem};
use crate::weight::{RationalWeight, Weight};

/// A Lakshmibai-Seshadri chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LSChain {
    pub shape: Weight,
    /// `mu_0 < mu_1 < ... < mu_l` in the Bruhat order of the orbit.
    pub steps: Vec<Weight>,
    /// `b_1 < ... < b_l`, strictly inside `(0, 1)`.
    pub cuts: Vec<Q>,
}

/// Serialized form of a chain with its derived statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub shape: Weight,
    pub steps: Vec<Weight>,
    pub cuts: Vec<String>,
    pub omega: Weight,
    pub delta: Weight,
}

impl LSChain {
    /// The one-step chain `(nu)`.
    pub fn single(shape: Weight, nu: Weight) -> LSChain {
        LSChain { shape, steps: vec![nu], cuts: Vec::new() }
    }

    /// Number of cuts, `l`.
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Cut `b_t` for `t = 0..=l+1`, with `b_0 = 0` and `b_{l+1} = 1`.
    fn cut(&self, t: usize) -> Q {
        if t == 0 {
            Q::zero()
        } else if t > self.cuts.len() {
            Q::one()
        } else {
            self.cuts[t - 1]
        }
    }

    pub fn record(&self) -> Result<ChainRecord> {
        Ok(ChainRecord {
            shape: self.shape.clone(),
            steps: self.steps.clone(),
            cuts: self.cuts.iter().map(|b| b.to_string()).collect(),
            omega: chain_endpoint(self)?,
            delta: chain_depth(self)?,
        })
    }
}

/// `x <_b y` in the `b`-Bruhat order: some saturated chain of covers from
/// `x` up to `y` has `b * m` integral at every cover of pairing `m`.
pub fn b_order_leq(poset: &OrbitPoset, x: usize, y: usize, b: Q) -> Result<bool> {
    if b <= Q::zero() || b > Q::one() {
        return Err(Error::input(format!("b-Bruhat parameter {b} must lie in (0, 1]")));
    }
    if x >= poset.len() || y >= poset.len() {
        return Err(Error::input("orbit element index out of range"));
    }
    Ok(b_reachable_below(poset, y, b).contains(&x))
}

/// All `x` with `x <_b y`.
fn b_reachable_below(poset: &OrbitPoset, y: usize, b: Q) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([y]);
    while let Some(z) = queue.pop_front() {
        for c in poset.covers_below(z) {
            if (b * q(c.pairing)).is_integer() && seen.insert(c.lower) {
                queue.push_back(c.lower);
            }
        }
    }
    seen
}

/// Every admissible cut has a denominator dividing some cover pairing, so
/// the candidates are the reduced fractions `a/d` in `(0, 1)` with `d`
/// dividing a pairing value of the orbit.
pub fn candidate_cuts(poset: &OrbitPoset) -> Vec<Q> {
    let pairings: BTreeSet<i64> = poset.covers().iter().map(|c| c.pairing).collect();
    let mut denominators = BTreeSet::new();
    for &m in &pairings {
        for d in 2..=m {
            if m % d == 0 {
                denominators.insert(d);
            }
        }
    }
    let mut cuts = BTreeSet::new();
    for &d in &denominators {
        for a in 1..d {
            if a.gcd(&d) == 1 {
                cuts.insert(Q::new(a, d));
            }
        }
    }
    cuts.into_iter().collect()
}

/// The enumerated chains of one shape together with their depth and endpoint.
#[derive(Debug, Clone)]
pub struct ChainSet {
    pub shape: Weight,
    pub chains: Vec<LSChain>,
    pub depths: Vec<Weight>,
    pub endpoints: Vec<Weight>,
}

impl ChainSet {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

/// Enumerates all LS chains of shape `mu`, keyed and ordered by
/// `(step indices in the orbit, cuts)`.
pub fn enumerate_ls_chains(rs: &RootSystem, mu: &Weight) -> Result<Vec<LSChain>> {
    Ok(chain_set(rs, mu)?.chains.clone())
}

/// Memoized chain enumeration with precomputed depth and endpoint.
pub fn chain_set(rs: &RootSystem, mu: &Weight) -> Result<Arc<ChainSet>> {
    rs.check_dominant(mu)?;
    memoized(&rs.memo().chains, mu, || build_chain_set(rs, mu))
}

fn build_chain_set(rs: &RootSystem, mu: &Weight) -> Result<ChainSet> {
    let poset = rs.orbit_poset(mu)?;
    let cands = candidate_cuts(&poset);
    // below[j][y] = elements x with x <_{cands[j]} y
    let below: Vec<Vec<Vec<usize>>> = cands
        .iter()
        .map(|&b| (0..poset.len()).map(|y| b_reachable_below(&poset, y, b).into_iter().collect()).collect())
        .collect();

    let mut keyed: Vec<(Vec<usize>, Vec<Q>)> = (0..poset.len())
        .into_par_iter()
        .flat_map_iter(|top| {
            let mut out = Vec::new();
            let mut steps = vec![top];
            let mut cut_idx = Vec::new();
            extend(&below, cands.len(), &mut steps, &mut cut_idx, &mut out);
            out.into_iter().map(|(s, c)| {
                let mut s = s;
                s.reverse();
                let mut cuts: Vec<Q> = c.iter().map(|&j| cands[j]).collect();
                cuts.reverse();
                (s, cuts)
            })
        })
        .collect();
    keyed.sort();

    let mut set = ChainSet { shape: mu.clone(), chains: Vec::new(), depths: Vec::new(), endpoints: Vec::new() };
    for (steps, cuts) in keyed {
        let chain = LSChain {
            shape: mu.clone(),
            steps: steps.iter().map(|&i| poset.elements()[i].clone()).collect(),
            cuts,
        };
        set.endpoints.push(chain_endpoint(&chain)?);
        set.depths.push(chain_depth(&chain)?);
        set.chains.push(chain);
    }
    Ok(set)
}

/// Depth-first extension downward: `steps` and `cut_idx` are stored
/// top-first; each new lower step needs a strictly smaller cut.
fn extend(
    below: &[Vec<Vec<usize>>],
    cut_bound: usize,
    steps: &mut Vec<usize>,
    cut_idx: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    out.push((steps.clone(), cut_idx.clone()));
    let lowest = *steps.last().expect("nonempty");
    for j in 0..cut_bound {
        for &x in &below[j][lowest] {
            steps.push(x);
            cut_idx.push(j);
            extend(below, j, steps, cut_idx, out);
            steps.pop();
            cut_idx.pop();
        }
    }
}

/// Checks every defining condition of an LS chain of shape `chain.shape`.
pub fn validate_chain(rs: &RootSystem, chain: &LSChain) -> Result<()> {
    let poset = rs.orbit_poset(&chain.shape)?;
    if chain.steps.is_empty() || chain.steps.len() != chain.cuts.len() + 1 {
        return Err(Error::invariant("chain must have exactly one more step than cuts"));
    }
    let idx: Vec<usize> = chain
        .steps
        .iter()
        .map(|s| {
            poset.index_of(s).ok_or_else(|| {
                Error::invariant(format!("step {s} is not in the orbit of {}", chain.shape))
            })
        })
        .collect::<Result<_>>()?;
    let mut prev = Q::zero();
    for &b in &chain.cuts {
        if b <= prev || b >= Q::one() {
            return Err(Error::invariant("cuts must increase strictly inside (0, 1)"));
        }
        prev = b;
    }
    for t in 0..chain.cuts.len() {
        if !b_order_leq(&poset, idx[t], idx[t + 1], chain.cuts[t])? {
            return Err(Error::invariant(format!(
                "{} <_{} {} fails",
                chain.steps[t],
                chain.cuts[t],
                chain.steps[t + 1]
            )));
        }
    }
    chain_endpoint(chain)?;
    chain_depth(chain)?;
    Ok(())
}

/// `delta_0, ..., delta_{l+1}` with
/// `delta_t = sum_{j=1}^{t} (b_j - b_{j-1}) mu_{j-1}`.
pub fn delta_sequence(chain: &LSChain) -> Vec<RationalWeight> {
    let l = chain.len();
    let mut acc = RationalWeight::zero(chain.shape.rank());
    let mut out = vec![acc.clone()];
    for t in 1..=l + 1 {
        acc = acc.add_scaled(chain.cut(t) - chain.cut(t - 1), &chain.steps[t - 1]);
        out.push(acc.clone());
    }
    out
}

/// `omega(C) = delta_{l+1}(C)`.
pub fn chain_endpoint(chain: &LSChain) -> Result<Weight> {
    let last = delta_sequence(chain).pop().expect("nonempty");
    last.to_weight()
        .ok_or_else(|| Error::invariant(format!("chain endpoint {last} is not integral")))
}

/// The depth `delta(C)`: coordinatewise minimum of the `delta_t` in the
/// fundamental basis, required to be integral.
pub fn chain_depth(chain: &LSChain) -> Result<Weight> {
    let deltas = delta_sequence(chain);
    let rank = chain.shape.rank();
    let mins = RationalWeight(
        (0..rank).map(|i| deltas.iter().map(|d| d.0[i]).min().expect("nonempty")).collect(),
    );
    mins.to_weight().ok_or_else(|| Error::invariant(format!("chain depth {mins} is not integral")))
}

/// Multiplicities of the irreducible constituents of `V(left) (x) V(right)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDecomposition {
    pub left: Weight,
    pub right: Weight,
    pub components: BTreeMap<Weight, u64>,
}

impl TensorDecomposition {
    pub fn multiplicity(&self, lambda: &Weight) -> u64 {
        self.components.get(lambda).copied().unwrap_or(0)
    }
}

/// Number of chains `C` of shape `mu` with `nu + delta(C)` dominant and
/// `nu + omega(C) = lambda`.
pub fn tensor_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    rs.check_dominant(lambda)?;
    rs.check_dominant(nu)?;
    let set = chain_set(rs, mu)?;
    let target = lambda - nu;
    Ok((0..set.len())
        .filter(|&i| set.endpoints[i] == target && (nu + &set.depths[i]).is_dominant())
        .count() as u64)
}

/// Full decomposition of `V(mu) (x) V(nu)` by the chain count.
pub fn tensor_decompose(rs: &RootSystem, mu: &Weight, nu: &Weight) -> Result<TensorDecomposition> {
    rs.check_dominant(nu)?;
    let set = chain_set(rs, mu)?;
    let mut components = BTreeMap::new();
    for i in 0..set.len() {
        if (nu + &set.depths[i]).is_dominant() {
            *components.entry(nu + &set.endpoints[i]).or_insert(0) += 1;
        }
    }
    Ok(TensorDecomposition { left: mu.clone(), right: nu.clone(), components })
}

/// Chains counted by the decomposition rule for `(lambda; mu, nu)`.
pub fn counted_chains(rs: &RootSystem, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<Vec<LSChain>> {
    let set = chain_set(rs, mu)?;
    let target = lambda - nu;
    Ok((0..set.len())
        .filter(|&i| set.endpoints[i] == target && (nu + &set.depths[i]).is_dominant())
        .map(|i| set.chains[i].clone())
        .collect())
}

/// Distinct chains, used by injectivity checks.
pub fn distinct_count(chains: &[LSChain]) -> usize {
    chains.iter().collect::<HashSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn a1_half_chain() -> LSChain {
        LSChain { shape: w(&[2]), steps: vec![w(&[-2]), w(&[2])], cuts: vec![Q::new(1, 2)] }
    }

    #[test]
    fn b_order_is_strict() {
        let r = rs("B2");
        let p = r.orbit_poset(&w(&[1, 1])).unwrap();
        for x in 0..p.len() {
            assert!(!b_order_leq(&p, x, x, Q::new(1, 2)).unwrap());
        }
    }

    #[test]
    fn b_order_a1_two_omega() {
        let r = rs("A1");
        let p = r.orbit_poset(&w(&[2])).unwrap();
        let (lo, hi) = (p.index_of(&w(&[-2])).unwrap(), p.index_of(&w(&[2])).unwrap());
        assert!(b_order_leq(&p, lo, hi, Q::new(1, 2)).unwrap());
        assert!(b_order_leq(&p, lo, hi, Q::one()).unwrap());
        assert!(!b_order_leq(&p, lo, hi, Q::new(1, 3)).unwrap());
        assert!(!b_order_leq(&p, lo, hi, Q::new(2, 3)).unwrap());
        assert!(b_order_leq(&p, lo, hi, Q::zero()).is_err());
        assert!(b_order_leq(&p, lo, hi, Q::new(3, 2)).is_err());
    }

    #[test]
    fn chains_of_small_shapes() {
        let a1 = rs("A1");
        let zero = enumerate_ls_chains(&a1, &w(&[0])).unwrap();
        assert_eq!(zero, vec![LSChain::single(w(&[0]), w(&[0]))]);

        let one = enumerate_ls_chains(&a1, &w(&[1])).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one.iter().all(|c| c.cuts.is_empty()));

        let two = enumerate_ls_chains(&a1, &w(&[2])).unwrap();
        assert_eq!(two.len(), 3);
        assert!(two.contains(&a1_half_chain()));
        assert!(enumerate_ls_chains(&a1, &w(&[-1])).is_err());
    }

    #[test]
    fn delta_statistics_a1() {
        let c = a1_half_chain();
        let d = delta_sequence(&c);
        assert_eq!(d, vec![RationalWeight(vec![q(0)]), RationalWeight(vec![q(-1)]), RationalWeight(vec![q(0)])]);
        assert_eq!(chain_endpoint(&c).unwrap(), w(&[0]));
        assert_eq!(chain_depth(&c).unwrap(), w(&[-1]));
    }

    #[test]
    fn single_step_statistics() {
        let mu = w(&[2, 1]);
        let c = LSChain::single(mu.clone(), mu.clone());
        assert_eq!(delta_sequence(&c), vec![RationalWeight::zero(2), mu.to_rational()]);
        assert_eq!(chain_endpoint(&c).unwrap(), mu);
        assert_eq!(chain_depth(&c).unwrap(), w(&[0, 0]));
        let low = LSChain::single(mu.clone(), -&mu);
        assert_eq!(chain_depth(&low).unwrap(), -&mu);
    }

    #[test]
    fn invalid_chains_are_rejected() {
        let a1 = rs("A1");
        let bad = LSChain { shape: w(&[2]), steps: vec![w(&[-2]), w(&[2])], cuts: vec![Q::new(1, 3)] };
        assert!(validate_chain(&a1, &bad).is_err());
        let wrong_orbit = LSChain::single(w(&[2]), w(&[1]));
        assert!(validate_chain(&a1, &wrong_orbit).is_err());
        assert!(validate_chain(&a1, &a1_half_chain()).is_ok());
        let non_integral = LSChain { shape: w(&[1]), steps: vec![w(&[-1]), w(&[1])], cuts: vec![Q::new(1, 3)] };
        assert!(chain_endpoint(&non_integral).is_err());
    }

    #[test]
    fn trivial_tensor_factor() {
        let r = rs("B2");
        let lam = w(&[1, 1]);
        let zero = w(&[0, 0]);
        assert_eq!(tensor_multiplicity(&r, &lam, &lam, &zero).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&r, &w(&[1, 0]), &lam, &zero).unwrap(), 0);
        let d = tensor_decompose(&r, &lam, &zero).unwrap();
        assert_eq!(d.components, BTreeMap::from([(lam.clone(), 1)]));
    }

    #[test]
    fn a1_and_a2_decompositions() {
        let a1 = rs("A1");
        assert_eq!(tensor_multiplicity(&a1, &w(&[2]), &w(&[1]), &w(&[1])).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&a1, &w(&[0]), &w(&[1]), &w(&[1])).unwrap(), 1);
        let a2 = rs("A2");
        let d = tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(d.components, BTreeMap::from([(w(&[0, 0]), 1), (w(&[1, 1]), 1)]));
    }

    #[test]
    fn chain_records_serialize() {
        let rec = a1_half_chain().record().unwrap();
        assert_eq!(rec.cuts, vec!["1/2".to_string()]);
        assert_eq!(rec.delta, w(&[-1]));
        assert_eq!(rec.omega, w(&[0]));
    }
}
