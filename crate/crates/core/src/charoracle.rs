//! Character-theoretic cross-check: Weyl's dimension formula, Freudenthal's
//! multiplicity recursion and the Brauer-Klimyk tensor product rule.
//!
//! Nothing here touches chains; it exists so path-model results can be
//! compared against an independent computation.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::pathmodel::TensorDecomposition;
use crate::rootsys::{memoized, RootSystem};
use crate::weight::Weight;

/// `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check_dominant(lambda)?;
    let shifted = lambda + &rs.weyl_vector();
    let rho = rs.weyl_vector();
    let mut acc = Ratio::<i128>::from_integer(1);
    for r in 0..rs.positive_roots().len() {
        acc *= Ratio::new(rs.pairing_int(&shifted, r) as i128, rs.pairing_int(&rho, r) as i128);
    }
    if !acc.is_integer() || acc.to_integer() <= 0 {
        return Err(Error::invariant(format!("Weyl dimension of {lambda} is {acc}")));
    }
    Ok(acc.to_integer() as u128)
}

/// Weight multiplicities of `V(highest)`, stored for every weight.
#[derive(Debug, Clone)]
pub struct WeightMultiplicityTable {
    pub highest: Weight,
    pub entries: BTreeMap<Weight, u64>,
    dominant: HashMap<Weight, u64>,
}

impl WeightMultiplicityTable {
    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.entries.get(nu).copied().unwrap_or(0)
    }

    /// Multiplicities of the dominant weights only.
    pub fn dominant_entries(&self) -> &HashMap<Weight, u64> {
        &self.dominant
    }

    pub fn total(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }
}

/// Freudenthal's recursion over the dominant weights below `lambda`,
/// extended to all weights by Weyl group invariance. Memoized per weight.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<Arc<WeightMultiplicityTable>> {
    rs.check_dominant(lambda)?;
    memoized(&rs.memo().characters, lambda, || freudenthal(rs, lambda))
}

fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<WeightMultiplicityTable> {
    let n = rs.rank();
    let is_weight = |nu: &Weight| rs.dominance_leq(&rs.dominant_representative(nu).0, lambda);

    // Every weight of V(lambda) is reached from lambda by subtracting simple roots.
    let mut all: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(nu) = queue.pop_front() {
        for i in 0..n {
            let next = &nu - &rs.simple_root(i).weight;
            if !all.contains(&next) && is_weight(&next) {
                all.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    let mut dominant: Vec<(Q, Weight)> = all
        .iter()
        .filter(|w| w.is_dominant())
        .map(|w| {
            let depth: Q = rs.to_simple_coords(&(lambda - w).to_rational()).iter().sum();
            (depth, w.clone())
        })
        .collect();
    dominant.sort();

    let rho = rs.weyl_vector();
    let lr = (lambda + &rho).to_rational();
    let top = rs.inner(&lr, &lr);
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for (_, mu) in &dominant {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mr = (mu + &rho).to_rational();
        let denom = top - rs.inner(&mr, &mr);
        if denom.is_zero() {
            return Err(Error::invariant(format!("Freudenthal denominator vanishes at {mu}")));
        }
        let mut num = Q::zero();
        for (r, root) in rs.positive_roots().iter().enumerate() {
            let mut k = 1;
            loop {
                let shifted = mu + &root.weight.scale(k);
                let rep = rs.dominant_representative(&shifted).0;
                if !rs.dominance_leq(&rep, lambda) {
                    break;
                }
                let m = *mult.get(&rep).ok_or_else(|| {
                    Error::invariant(format!("Freudenthal order visited {mu} before {rep}"))
                })?;
                // (mu + k alpha, alpha) = half_norm * <mu + k alpha, alpha^vee>
                let ip = q(root.half_norm) * q(rs.pairing_int(&shifted, r));
                num += q(2) * ip * q(m as i64);
                k += 1;
            }
        }
        let value = num / denom;
        if !value.is_integer() || value < Q::zero() {
            return Err(Error::invariant(format!("Freudenthal gave {value} at {mu}")));
        }
        mult.insert(mu.clone(), value.to_integer() as u64);
    }

    let mut entries = BTreeMap::new();
    for nu in &all {
        let rep = rs.dominant_representative(nu).0;
        let m = mult[&rep];
        if m > 0 {
            entries.insert(nu.clone(), m);
        }
    }
    mult.retain(|_, m| *m > 0);
    Ok(WeightMultiplicityTable { highest: lambda.clone(), entries, dominant: mult })
}

/// Brauer-Klimyk: for each weight `eta` of the smaller factor, reflect
/// `other + eta + rho` into the dominant chamber and accumulate the
/// multiplicity with the sign of the reflecting element; wall terms vanish.
pub fn tensor_decompose_oracle(rs: &RootSystem, mu: &Weight, nu: &Weight) -> Result<TensorDecomposition> {
    rs.check_dominant(mu)?;
    rs.check_dominant(nu)?;
    let (small, big) = if weyl_dim(rs, mu)? <= weyl_dim(rs, nu)? { (mu, nu) } else { (nu, mu) };
    let table = weight_multiplicities(rs, small)?;
    let rho = rs.weyl_vector();
    let mut signed: BTreeMap<Weight, i64> = BTreeMap::new();
    for (eta, &m) in &table.entries {
        let v = &(big + eta) + &rho;
        let (dom, steps) = rs.dominant_representative(&v);
        if dom.0.contains(&0) {
            continue;
        }
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        *signed.entry(&dom - &rho).or_insert(0) += sign * m as i64;
    }
    let mut components = BTreeMap::new();
    for (lam, c) in signed {
        if c < 0 {
            return Err(Error::invariant(format!("negative Brauer-Klimyk coefficient {c} at {lam}")));
        }
        if c > 0 {
            components.insert(lam, c as u64);
        }
    }
    Ok(TensorDecomposition { left: mu.clone(), right: nu.clone(), components })
}

/// `sum_lambda mult(lambda) dim V(lambda)`.
pub fn decomposition_dimension(rs: &RootSystem, d: &TensorDecomposition) -> Result<u128> {
    d.components.iter().map(|(l, &m)| Ok(m as u128 * weyl_dim(rs, l)?)).sum()
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

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dim(&rs("A2"), &w(&[0, 0])).unwrap(), 1);
        assert_eq!(weyl_dim(&rs("A2"), &w(&[1, 0])).unwrap(), 3);
        assert_eq!(weyl_dim(&rs("B2"), &w(&[0, 1])).unwrap(), 4);
        assert_eq!(weyl_dim(&rs("B2"), &w(&[1, 0])).unwrap(), 5);
        assert_eq!(weyl_dim(&rs("G2"), &w(&[1, 0])).unwrap(), 7);
        assert_eq!(weyl_dim(&rs("G2"), &w(&[0, 1])).unwrap(), 14);
        assert_eq!(weyl_dim(&rs("F4"), &w(&[0, 0, 0, 1])).unwrap(), 26);
        assert_eq!(weyl_dim(&rs("F4"), &w(&[0, 1, 0, 0])).unwrap(), 1274);
        assert_eq!(weyl_dim(&rs("E8"), &w(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
        assert!(weyl_dim(&rs("A2"), &w(&[-1, 0])).is_err());
    }

    #[test]
    fn adjoint_a2_zero_weight() {
        let t = weight_multiplicities(&rs("A2"), &w(&[1, 1])).unwrap();
        assert_eq!(t.multiplicity(&w(&[0, 0])), 2);
        assert_eq!(t.multiplicity(&w(&[1, 1])), 1);
        assert_eq!(t.total(), 8);
    }

    #[test]
    fn a1_strings() {
        let a1 = rs("A1");
        for m in 0..6 {
            let t = weight_multiplicities(&a1, &w(&[m])).unwrap();
            for k in -8i64..=8 {
                let expected = u64::from(k.abs() <= m && (k - m) % 2 == 0);
                assert_eq!(t.multiplicity(&w(&[k])), expected, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn tables_are_weyl_invariant_and_sum_to_dim() {
        for (label, lam) in [("B3", w(&[1, 0, 1])), ("G2", w(&[1, 1])), ("C3", w(&[0, 1, 1]))] {
            let r = rs(label);
            let t = weight_multiplicities(&r, &lam).unwrap();
            assert_eq!(t.total(), weyl_dim(&r, &lam).unwrap());
            for (nu, &m) in &t.entries {
                assert_eq!(t.multiplicity(&r.dominant_representative(nu).0), m);
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let a1 = rs("A1");
        let d = tensor_decompose_oracle(&a1, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(d.components, BTreeMap::from([(w(&[0]), 1), (w(&[2]), 1)]));
        let b2 = rs("B2");
        let trivial = tensor_decompose_oracle(&b2, &w(&[1, 1]), &w(&[0, 0])).unwrap();
        assert_eq!(trivial.components, BTreeMap::from([(w(&[1, 1]), 1)]));
        let spin = tensor_decompose_oracle(&b2, &w(&[0, 1]), &w(&[0, 1])).unwrap();
        assert_eq!(decomposition_dimension(&b2, &spin).unwrap(), 16);
    }

    #[test]
    fn oracle_is_symmetric() {
        let g2 = rs("G2");
        let a = tensor_decompose_oracle(&g2, &w(&[1, 0]), &w(&[1, 1])).unwrap();
        let b = tensor_decompose_oracle(&g2, &w(&[1, 1]), &w(&[1, 0])).unwrap();
        assert_eq!(a.components, b.components);
    }
}
