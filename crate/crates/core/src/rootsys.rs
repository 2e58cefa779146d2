//! Finite crystallographic root systems, Weyl group actions and Bruhat
//! orders on Weyl orbits, all in exact arithmetic.
//!
//! Weights are stored in fundamental-weight coordinates, so the pairing of a
//! weight with a simple coroot is simply one of its coordinates. Ambient
//! (epsilon) coordinates following the Bourbaki plates are kept only for
//! input and output.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::charoracle::WeightMultiplicityTable;
use crate::error::{Error, Result};
use crate::linalg::{dot, q, QMatrix, Q};
use crate::pathmodel::ChainSet;
use crate::weight::{RationalWeight, Weight};

/// Series letter of a simple Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Cartan type such as `B3` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::input(format!("rank {rank} is out of range for series {series:?}")))
        }
    }

    /// Order of the Weyl group, from the classical tables.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// The type of the dual root system, in the numbering the dual Cartan
    /// matrix (the transpose) inherits.
    pub fn dual(&self) -> CartanType {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        CartanType { series, rank: self.rank }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::input("empty type label"))?;
        let series = match letter.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => {
                return Err(Error::input(format!(
                    "unknown type label `{s}`; expected e.g. A2, B3, C2, D4, E6, F4, G2"
                )))
            }
        };
        let rank: usize = chars.as_str().parse().map_err(|_| {
            Error::input(format!("unknown type label `{s}`; expected a series letter and a rank"))
        })?;
        CartanType::new(series, rank)
    }
}

/// A positive root with its derived data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    /// Coefficients in the basis of simple roots.
    pub simple_coeffs: Vec<i64>,
    /// The root in fundamental-weight coordinates.
    pub weight: Weight,
    /// Coefficients of the coroot in the basis of simple coroots.
    pub coroot_coeffs: Vec<i64>,
    /// Half the squared length, with short roots normalized to 1.
    pub half_norm: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }
}

#[derive(Debug, Clone)]
struct Ambient {
    /// Simple roots in epsilon coordinates.
    simple_roots: Vec<Vec<Q>>,
    /// Ratio of the normalized inner product to the epsilon dot product.
    scale: Q,
}

#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) posets: RwLock<HashMap<Weight, Arc<OrbitPoset>>>,
    pub(crate) chains: RwLock<HashMap<Weight, Arc<ChainSet>>>,
    pub(crate) characters: RwLock<HashMap<Weight, Arc<WeightMultiplicityTable>>>,
}

pub(crate) fn memoized<V>(
    map: &RwLock<HashMap<Weight, Arc<V>>>,
    key: &Weight,
    build: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    if let Some(v) = map.read().expect("memo lock poisoned").get(key) {
        return Ok(Arc::clone(v));
    }
    let value = Arc::new(build()?);
    let mut guard = map.write().expect("memo lock poisoned");
    Ok(Arc::clone(guard.entry(key.clone()).or_insert(value)))
}

/// A finite crystallographic root system with a fixed choice of simple roots.
#[derive(Clone)]
pub struct RootSystem {
    label: String,
    cartan_type: Option<CartanType>,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots.
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Root>,
    root_lookup: HashMap<Weight, usize>,
    /// Inverse transpose of the Cartan matrix: fundamental to simple-root coordinates.
    to_simple: QMatrix,
    ambient: Option<Ambient>,
    memo: Arc<Memo>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("label", &self.label)
            .field("cartan", &self.cartan)
            .field("positive_roots", &self.positive_roots.len())
            .finish()
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.label == other.label
    }
}

fn half(n: i64) -> Q {
    Q::new(n, 2)
}

fn eps_vector(dim: usize, entries: &[(usize, Q)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    for &(i, x) in entries {
        v[i] += x;
    }
    v
}

/// Simple roots in epsilon coordinates as tabulated in the Bourbaki plates.
fn bourbaki_simple_roots(t: CartanType) -> Vec<Vec<Q>> {
    let n = t.rank;
    let one = Q::one();
    let diff = |dim: usize, i: usize, j: usize| eps_vector(dim, &[(i, one), (j, -one)]);
    match t.series {
        Series::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Series::B | Series::C | Series::D => {
            let mut roots: Vec<Vec<Q>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            roots.push(match t.series {
                Series::B => eps_vector(n, &[(n - 1, one)]),
                Series::C => eps_vector(n, &[(n - 1, q(2))]),
                _ => eps_vector(n, &[(n - 2, one), (n - 1, one)]),
            });
            roots
        }
        Series::E => {
            let mut e8 = vec![
                {
                    let mut v = vec![half(-1); 8];
                    v[0] = half(1);
                    v[7] = half(1);
                    v
                },
                eps_vector(8, &[(0, one), (1, one)]),
                diff(8, 1, 0),
            ];
            for i in 2..7 {
                e8.push(diff(8, i, i - 1));
            }
            e8.truncate(n);
            e8
        }
        Series::F => vec![
            diff(4, 1, 2),
            diff(4, 2, 3),
            eps_vector(4, &[(3, one)]),
            vec![half(1), half(-1), half(-1), half(-1)],
        ],
        Series::G => vec![diff(3, 0, 1), eps_vector(3, &[(0, q(-2)), (1, one), (2, one)])],
    }
}

impl RootSystem {
    /// Builds the root system of a simple type from its Bourbaki epsilon
    /// coordinates; the positive roots are generated by reflection closure.
    pub fn build(t: CartanType) -> RootSystem {
        let simple = bourbaki_simple_roots(t);
        let n = simple.len();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = q(2) * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
                assert!(v.is_integer(), "non-crystallographic table for {t}");
                cartan[i][j] = v.to_integer();
            }
        }
        let min_norm = simple.iter().map(|a| dot(a, a)).min().expect("nonempty");
        let mut rs = Self::from_cartan(&t.to_string(), cartan).expect("Bourbaki tables are valid");
        rs.cartan_type = Some(t);
        rs.ambient = Some(Ambient { simple_roots: simple, scale: q(2) / min_norm });
        rs
    }

    pub fn from_label(label: &str) -> Result<RootSystem> {
        Ok(Self::build(label.parse()?))
    }

    /// Builds a root system directly from a Cartan matrix with
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`. Reducible matrices are allowed.
    pub fn from_cartan(label: &str, cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let n = cartan.len();
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input("Cartan matrix must be square"));
            }
            if row[i] != 2 {
                return Err(Error::input("Cartan matrix must have 2 on the diagonal"));
            }
            for (j, &x) in row.iter().enumerate() {
                if i != j && (x > 0 || (x == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::input("Cartan matrix off-diagonal entries are invalid"));
                }
            }
        }
        let symmetrizer = symmetrizer(&cartan)?;
        let a = QMatrix::from_rows(&cartan);
        let to_simple = a.transpose().inverse().map_err(|_| Error::input("singular Cartan matrix"))?;

        let mut rs = RootSystem {
            label: label.to_string(),
            cartan_type: None,
            cartan,
            symmetrizer,
            positive_roots: Vec::new(),
            root_lookup: HashMap::new(),
            to_simple,
            ambient: None,
            memo: Arc::new(Memo::default()),
        };
        rs.positive_roots = rs.generate_positive_roots()?;
        rs.root_lookup =
            rs.positive_roots.iter().enumerate().map(|(i, r)| (r.weight.clone(), i)).collect();
        Ok(rs)
    }

    /// Closure of the simple roots under simple reflections, in simple-root
    /// coordinates; the positive roots are those with nonnegative coefficients.
    fn generate_positive_roots(&self) -> Result<Vec<Root>> {
        let n = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let p: i64 = (0..n).map(|j| beta[j] * self.cartan[j][i]).sum();
                let mut r = beta.clone();
                r[i] -= p;
                if seen.len() > 100_000 {
                    return Err(Error::input("Cartan matrix is not of finite type"));
                }
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        if let Some(r) = seen.iter().find(|r| r.iter().any(|&x| x > 0) && r.iter().any(|&x| x < 0)) {
            return Err(Error::input(format!("Cartan matrix is not of finite type: root {r:?} has mixed signs")));
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        pos.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        Ok(pos.into_iter().map(|c| self.make_root(c)).collect())
    }

    fn make_root(&self, simple_coeffs: Vec<i64>) -> Root {
        let n = self.rank();
        let weight = Weight((0..n).map(|i| (0..n).map(|j| simple_coeffs[j] * self.cartan[j][i]).sum()).collect());
        // (alpha_i, alpha_j) = d_j * cartan[i][j]
        let mut norm = 0i64;
        for i in 0..n {
            for j in 0..n {
                norm += simple_coeffs[i] * simple_coeffs[j] * self.symmetrizer[j] * self.cartan[i][j];
            }
        }
        debug_assert!(norm % 2 == 0);
        let half_norm = norm / 2;
        let coroot_coeffs = (0..n)
            .map(|i| {
                let x = simple_coeffs[i] * self.symmetrizer[i];
                debug_assert_eq!(x % half_norm, 0);
                x / half_norm
            })
            .collect();
        Root { simple_coeffs, weight, coroot_coeffs, half_norm }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        // Simple roots have height one and come first, in index order.
        &self.positive_roots[i]
    }

    /// Index of a positive root given in fundamental-weight coordinates.
    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.root_lookup.get(w).copied()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index(w).is_some() || self.root_index(&-w).is_some()
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// A root is short when its length is minimal within its simple component.
    pub fn is_short(&self, idx: usize) -> bool {
        let r = &self.positive_roots[idx];
        let comp_min = self
            .positive_roots
            .iter()
            .filter(|s| self.same_component(r, s))
            .map(|s| s.half_norm)
            .min()
            .unwrap_or(1);
        r.half_norm == comp_min
    }

    fn same_component(&self, a: &Root, b: &Root) -> bool {
        let support = |r: &Root| -> Vec<usize> {
            (0..self.rank()).filter(|&i| r.simple_coeffs[i] != 0).collect()
        };
        let comp = self.component_of(support(a)[0]);
        comp.contains(&support(b)[0])
    }

    fn component_of(&self, start: usize) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..self.rank() {
                if self.cartan[i][j] != 0 && seen.insert(j) {
                    stack.push(j);
                }
            }
        }
        seen
    }

    /// The Weyl vector, the sum of the fundamental weights.
    pub fn weyl_vector(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `<lambda, alpha^vee>` for the positive root with index `root`.
    pub fn pairing(&self, lambda: &RationalWeight, root: usize) -> Q {
        self.positive_roots[root].coroot_coeffs.iter().zip(&lambda.0).map(|(&k, x)| q(k) * x).sum()
    }

    pub fn pairing_int(&self, lambda: &Weight, root: usize) -> i64 {
        self.positive_roots[root].coroot_coeffs.iter().zip(&lambda.0).map(|(k, x)| k * x).sum()
    }

    /// `sigma_alpha(nu) = nu - <nu, alpha^vee> alpha`.
    pub fn reflect(&self, nu: &Weight, root: usize) -> Weight {
        let m = self.pairing_int(nu, root);
        let alpha = &self.positive_roots[root].weight;
        Weight(nu.0.iter().zip(&alpha.0).map(|(x, a)| x - m * a).collect())
    }

    pub fn reflect_rational(&self, nu: &RationalWeight, root: usize) -> RationalWeight {
        let m = self.pairing(nu, root);
        nu.add_scaled(-m, &self.positive_roots[root].weight)
    }

    fn simple_reflect_in_place(&self, nu: &mut [i64], i: usize) {
        let m = nu[i];
        if m != 0 {
            for (x, a) in nu.iter_mut().zip(&self.cartan[i]) {
                *x -= m * a;
            }
        }
    }

    /// Dominant representative of the orbit of `nu`, together with the
    /// number of simple reflections used (its parity is the sign of the
    /// Weyl group element).
    pub fn dominant_representative(&self, nu: &Weight) -> (Weight, usize) {
        let mut v = nu.0.clone();
        let mut steps = 0;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.simple_reflect_in_place(&mut v, i);
            steps += 1;
        }
        (Weight(v), steps)
    }

    /// `-w0(lambda)`: the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        self.dominant_representative(&-lambda).0
    }

    /// Number of positive roots pairing negatively with `nu`; the rank
    /// function of the Bruhat order on the orbit (zero at the dominant element).
    pub fn orbit_length(&self, nu: &Weight) -> usize {
        (0..self.positive_roots.len()).filter(|&r| self.pairing_int(nu, r) < 0).count()
    }

    /// All elements of the Weyl orbit of `mu`.
    pub fn orbit(&self, mu: &Weight) -> Vec<Weight> {
        let start = self.dominant_representative(mu).0;
        let mut seen = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(nu) = queue.pop_front() {
            for i in 0..self.rank() {
                if nu.0[i] == 0 {
                    continue;
                }
                let mut v = nu.0.clone();
                self.simple_reflect_in_place(&mut v, i);
                let w = Weight(v);
                if seen.insert(w.clone()) {
                    out.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Order of the Weyl group: from the classical tables for simple types,
    /// otherwise as the size of the orbit of the Weyl vector.
    pub fn weyl_group_order(&self) -> u128 {
        match self.cartan_type {
            Some(t) => t.weyl_group_order(),
            None => self.orbit(&self.weyl_vector()).len() as u128,
        }
    }

    /// Order of the parabolic subgroup generated by the simple reflections
    /// fixing `mu`.
    pub fn stabilizer_order(&self, mu: &Weight) -> u128 {
        let fixed: Vec<usize> = (0..self.rank()).filter(|&i| mu.0[i] == 0).collect();
        if fixed.is_empty() {
            return 1;
        }
        let sub: Vec<Vec<i64>> =
            fixed.iter().map(|&i| fixed.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        let sub = RootSystem::from_cartan("parabolic", sub).expect("principal submatrix of a Cartan matrix");
        sub.orbit(&sub.weyl_vector()).len() as u128
    }

    /// Coordinates of a rational weight in the basis of simple roots.
    pub fn to_simple_coords(&self, lambda: &RationalWeight) -> Vec<Q> {
        self.to_simple.apply(&lambda.0)
    }

    /// The normalized inner product, short roots of squared length 2.
    pub fn inner(&self, a: &RationalWeight, b: &RationalWeight) -> Q {
        let m = self.to_simple_coords(b);
        (0..self.rank()).map(|j| a.0[j] * q(self.symmetrizer[j]) * m[j]).sum()
    }

    /// `mu <= lambda` in the dominance order: `lambda - mu` is a nonnegative
    /// integer combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        let diff = (lambda - mu).to_rational();
        self.to_simple_coords(&diff).iter().all(|c| c.is_integer() && *c >= Q::zero())
    }

    /// The dual root system, whose Cartan matrix is the transpose.
    pub fn dual(&self) -> RootSystem {
        let n = self.rank();
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.cartan[j][i]).collect()).collect();
        let label = match self.cartan_type {
            Some(ct) if matches!(ct.series, Series::B | Series::C) => ct.dual().to_string(),
            _ => format!("dual({})", self.label),
        };
        let mut rs = RootSystem::from_cartan(&label, t).expect("transpose of a Cartan matrix");
        if let Some(ct) = self.cartan_type {
            if matches!(ct.series, Series::B | Series::C) || t_is_symmetric(&self.cartan) {
                rs.cartan_type = Some(ct.dual());
            }
        }
        rs
    }

    pub fn has_ambient(&self) -> bool {
        self.ambient.as_ref().is_some_and(|a| a.simple_roots[0].len() == self.rank())
    }

    /// Epsilon coordinates of a weight given in the fundamental basis.
    pub fn to_eps(&self, lambda: &RationalWeight) -> Result<Vec<Q>> {
        let amb = self.ambient.as_ref().ok_or_else(|| Error::input(format!("{} has no epsilon coordinates", self.label)))?;
        let m = self.to_simple_coords(lambda);
        let dim = amb.simple_roots[0].len();
        Ok((0..dim).map(|k| (0..self.rank()).map(|i| m[i] * amb.simple_roots[i][k]).sum()).collect())
    }

    /// Fundamental coordinates of a weight given in epsilon coordinates.
    /// Only available when the ambient space has dimension equal to the rank.
    pub fn from_eps(&self, eps: &[Q]) -> Result<RationalWeight> {
        if !self.has_ambient() {
            return Err(Error::input(format!(
                "epsilon coordinates are not supported for {}",
                self.label
            )));
        }
        let amb = self.ambient.as_ref().expect("checked");
        if eps.len() != self.rank() {
            return Err(Error::input(format!(
                "expected {} epsilon coordinates for {}, got {}",
                self.rank(),
                self.label,
                eps.len()
            )));
        }
        Ok(RationalWeight(
            amb.simple_roots.iter().map(|a| q(2) * dot(eps, a) / dot(a, a)).collect(),
        ))
    }

    /// Integral weight from epsilon coordinates; fails off the weight lattice.
    pub fn weight_from_eps(&self, eps: &[Q]) -> Result<Weight> {
        let w = self.from_eps(eps)?;
        w.to_weight().ok_or_else(|| {
            let s: Vec<String> = eps.iter().map(|x| x.to_string()).collect();
            Error::input(format!("eps:{} is not an integral weight of {}", s.join(","), self.label))
        })
    }

    /// Ratio between the normalized inner product and the epsilon dot product.
    pub fn eps_scale(&self) -> Option<Q> {
        self.ambient.as_ref().map(|a| a.scale)
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::input(format!(
                "weight {w} has {} coordinates but {} has rank {}",
                w.rank(),
                self.label,
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if !w.is_dominant() {
            return Err(Error::input(format!("weight {w} is not dominant for {}", self.label)));
        }
        Ok(())
    }

    pub(crate) fn memo(&self) -> &Memo {
        &self.memo
    }

    /// The Bruhat-ordered orbit of a dominant weight, memoized per weight.
    pub fn orbit_poset(&self, mu: &Weight) -> Result<Arc<OrbitPoset>> {
        self.check_dominant(mu)?;
        memoized(&self.memo.posets, mu, || OrbitPoset::build(self, mu))
    }

    /// All dominant weights whose coordinates are at most `bound`.
    pub fn dominant_weights_up_to(&self, bound: i64) -> Vec<Weight> {
        let n = self.rank();
        let mut out = vec![Weight::zero(n)];
        for i in 0..n {
            let mut next = Vec::new();
            for w in &out {
                for k in 0..=bound.max(0) {
                    let mut v = w.clone();
                    v.0[i] = k;
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

fn t_is_symmetric(a: &[Vec<i64>]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == a[j][i]))
}

/// Solves `d_j A[i][j] = d_i A[j][i]` per connected component, scaled so the
/// shortest simple root of each component has `d = 1`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = d[i].expect("visited") * q(cartan[j][i]) / q(cartan[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        stack.push(j);
                    }
                    Some(x) if x != dj => {
                        return Err(Error::input("Cartan matrix is not symmetrizable"))
                    }
                    _ => {}
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].expect("visited")).min().expect("nonempty");
        for &i in &comp {
            d[i] = Some(d[i].expect("visited") / min);
        }
    }
    d.into_iter()
        .map(|x| {
            let x = x.expect("all visited");
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::input("Cartan matrix has non-integral length ratios"))
            }
        })
        .collect()
}

/// A Bruhat cover `lower < upper` with `upper - lower = pairing * root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub root: usize,
    pub pairing: i64,
}

/// The Weyl orbit of a dominant weight with its Bruhat covers. Element 0 is
/// the dominant weight, the unique maximum; elements are sorted by orbit
/// length and then by descending coordinates.
#[derive(Debug, Clone)]
pub struct OrbitPoset {
    base: Weight,
    elements: Vec<Weight>,
    index: HashMap<Weight, usize>,
    lengths: Vec<usize>,
    covers: Vec<Cover>,
    covers_below: Vec<Vec<usize>>,
}

impl OrbitPoset {
    pub(crate) fn build(rs: &RootSystem, mu: &Weight) -> Result<OrbitPoset> {
        rs.check_dominant(mu)?;
        let mut elements = rs.orbit(mu);
        let lens: HashMap<Weight, usize> =
            elements.iter().map(|e| (e.clone(), rs.orbit_length(e))).collect();
        elements.sort_by(|a, b| lens[a].cmp(&lens[b]).then_with(|| b.cmp(a)));
        let index: HashMap<Weight, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let lengths: Vec<usize> = elements.iter().map(|e| lens[e]).collect();

        // sigma_alpha(nu) < nu whenever <nu, alpha^vee> > 0; on an orbit
        // quotient of the Bruhat order the covers are exactly those relations
        // raising the length by one.
        let mut covers = Vec::new();
        let mut covers_below = vec![Vec::new(); elements.len()];
        for (upper, nu) in elements.iter().enumerate() {
            for r in 0..rs.positive_roots().len() {
                let m = rs.pairing_int(nu, r);
                if m <= 0 {
                    continue;
                }
                let lower = index[&rs.reflect(nu, r)];
                if lengths[lower] == lengths[upper] + 1 {
                    covers_below[upper].push(covers.len());
                    covers.push(Cover { lower, upper, root: r, pairing: m });
                }
            }
        }
        Ok(OrbitPoset { base: mu.clone(), elements, index, lengths, covers, covers_below })
    }

    pub fn base_weight(&self) -> &Weight {
        &self.base
    }

    pub fn elements(&self) -> &[Weight] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Covers whose upper element is `upper`.
    pub fn covers_below(&self, upper: usize) -> impl Iterator<Item = &Cover> {
        self.covers_below[upper].iter().map(move |&c| &self.covers[c])
    }

    /// Largest cover pairing value, or 0 when there are no covers.
    pub fn max_pairing(&self) -> i64 {
        self.covers.iter().map(|c| c.pairing).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for (label, count) in [
            ("A1", 1),
            ("A2", 3),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(rs(label).positive_roots().len(), count, "{label}");
        }
    }

    #[test]
    fn a1_cartan() {
        let a1 = rs("A1");
        assert_eq!(a1.cartan(), &[vec![2]]);
    }

    #[test]
    fn b2_cartan_with_long_first_root() {
        let b2 = rs("B2");
        assert_eq!(b2.symmetrizer(), &[2, 1]);
        // alpha_1 = e1 - e2 (long), alpha_2 = e2 (short)
        assert_eq!(b2.cartan()[0][1], -2);
        assert_eq!(b2.cartan()[1][0], -1);
    }

    #[test]
    fn g2_highest_root() {
        let g2 = rs("G2");
        assert_eq!(g2.highest_root().simple_coeffs, vec![3, 2]);
        assert_eq!(g2.symmetrizer(), &[1, 3]);
        let theta = g2.positive_roots().len() - 1;
        assert_eq!(g2.pairing(&Weight(vec![0, 1]).to_rational(), theta), q(2));
    }

    #[test]
    fn cartan_invariants_all_types() {
        for label in ["A3", "B4", "C4", "D4", "E6", "F4", "G2"] {
            let r = rs(label);
            for i in 0..r.rank() {
                assert_eq!(r.cartan()[i][i], 2);
                for j in 0..r.rank() {
                    if i != j {
                        assert!(r.cartan()[i][j] <= 0);
                    }
                }
            }
            for (k, root) in r.positive_roots().iter().enumerate() {
                assert!(root.simple_coeffs.iter().all(|&c| c >= 0));
                assert_eq!(r.pairing_int(&root.weight, k), 2);
            }
        }
    }

    #[test]
    fn fundamental_weights_pair_to_kronecker_delta() {
        let r = rs("F4");
        for i in 0..4 {
            for j in 0..4 {
                let w = Weight::fundamental(4, i).to_rational();
                assert_eq!(r.pairing(&w, j), q((i == j) as i64));
            }
        }
    }

    #[test]
    fn rho_pairs_to_coroot_height() {
        for label in ["B3", "G2", "F4"] {
            let r = rs(label);
            for (k, root) in r.positive_roots().iter().enumerate() {
                let p = r.pairing_int(&r.weyl_vector(), k);
                assert!(p > 0);
                assert_eq!(p, root.coroot_coeffs.iter().sum::<i64>());
            }
        }
    }

    #[test]
    fn reflection_basics() {
        let a1 = rs("A1");
        assert_eq!(a1.reflect(&Weight(vec![3]), 0), Weight(vec![-3]));
        let b3 = rs("B3");
        let nu = Weight(vec![0, 2, -1]);
        for r in 0..b3.positive_roots().len() {
            let s = b3.reflect(&nu, r);
            assert_eq!(b3.reflect(&s, r), nu);
            assert_eq!(s == nu, b3.pairing_int(&nu, r) == 0);
        }
    }

    #[test]
    fn dual_weights() {
        let a2 = rs("A2");
        assert_eq!(a2.dual_weight(&Weight(vec![1, 0])), Weight(vec![0, 1]));
        for label in ["B2", "F4", "G2"] {
            let r = rs(label);
            for w in r.dominant_weights_up_to(1) {
                assert_eq!(r.dual_weight(&w), w);
            }
        }
        assert_eq!(a2.dual_weight(&Weight(vec![0, 0])), Weight(vec![0, 0]));
        let d5 = rs("D5");
        assert_eq!(d5.dual_weight(&Weight(vec![0, 0, 0, 1, 0])), Weight(vec![0, 0, 0, 0, 1]));
    }

    #[test]
    fn epsilon_round_trip() {
        let b2 = rs("B2");
        let spin = b2.weight_from_eps(&[Q::new(1, 2), Q::new(1, 2)]).unwrap();
        assert_eq!(spin, Weight(vec![0, 1]));
        assert!(b2.weight_from_eps(&[Q::new(1, 2), q(0)]).is_err());
        let c2 = rs("C2");
        assert_eq!(c2.weight_from_eps(&[q(1), q(1)]).unwrap(), Weight(vec![0, 1]));
        let back = c2.to_eps(&Weight(vec![2, 1]).to_rational()).unwrap();
        assert_eq!(back, vec![q(3), q(1)]);
        assert!(rs("A2").from_eps(&[q(1), q(0), q(0)]).is_err());
    }

    #[test]
    fn dual_system_swaps_b_and_c() {
        let b3 = rs("B3");
        let d = b3.dual();
        assert_eq!(d.cartan(), rs("C3").cartan());
        assert_eq!(d.label(), "C3");
        assert_eq!(rs("F4").dual().positive_roots().len(), 24);
    }

    #[test]
    fn orbit_examples() {
        let a1 = rs("A1");
        let p = a1.orbit_poset(&Weight(vec![1])).unwrap();
        assert_eq!(p.elements(), &[Weight(vec![1]), Weight(vec![-1])]);
        assert_eq!(p.covers(), &[Cover { lower: 1, upper: 0, root: 0, pairing: 1 }]);

        let z = a1.orbit_poset(&Weight(vec![0])).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z.covers().is_empty());

        assert!(a1.orbit_poset(&Weight(vec![-1])).is_err());
    }

    #[test]
    fn weyl_group_orders_match_rho_orbit() {
        for label in ["A1", "A3", "B2", "B3", "C3", "D4", "F4", "G2"] {
            let r = rs(label);
            assert_eq!(r.orbit(&r.weyl_vector()).len() as u128, r.weyl_group_order(), "{label}");
        }
    }

    #[test]
    fn rejects_bad_labels() {
        for bad in ["", "X3", "B1", "D3", "E9", "F5", "G3", "A0", "Ax"] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }
}
