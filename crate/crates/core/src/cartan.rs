//! Root-system data for the classical families and G2.
//!
//! Everything here is exact. The symmetric bilinear form is normalized so
//! that the highest root has `(θ,θ) = 2`, the Cartan matrix follows
//! `a_ij = 2(α_i,α_j)/(α_j,α_j)`, and weights are stored by their Dynkin
//! labels `n_i = ⟨λ, α̌_i⟩` in the fundamental-weight basis.
//!
//! Root-length conventions per family:
//!
//! | family | short simple roots | note |
//! |--------|--------------------|------|
//! | `A_n`  | none               | |
//! | `B_2`  | `α_1`              | `(α_i,α_i) = 1, 2`; marks `(1,2,1)` and `θ = 2λ_1` |
//! | `B_n`, n ≥ 3 | `α_n`        | |
//! | `C_n`  | `α_1 … α_{n-1}`     | `C_2` coincides with `B_2` |
//! | `D_n`  | none               | |
//! | `G_2`  | `α_1`              | `(α_1,α_1) = 2/3`, marks `(1,3,2)` |

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::linalg::{common_denominator, invert, rat, rat_frac, to_i64, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }
}

/// A simple Lie algebra identified by Cartan type, e.g. `A2`, `B3`, `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AlgebraId {
    family: Family,
    rank: usize,
}

impl AlgebraId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(AlgebraId { family, rank })
        } else {
            Err(Error::InvalidRank { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownAlgebra(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownAlgebra(s.to_string()))?;
        AlgebraId::new(family, rank)
    }
}

impl TryFrom<String> for AlgebraId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AlgebraId> for String {
    fn from(id: AlgebraId) -> String {
        id.to_string()
    }
}

/// An integral weight given by its Dynkin labels.
///
/// Ordering is lexicographic on the label vector; this is the canonical order
/// used for every basis in the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight(SmallVec<[i64; 4]>);

impl Weight {
    pub fn new(labels: impl IntoIterator<Item = i64>) -> Self {
        Weight(labels.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    /// The fundamental weight `λ_i` (1-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn labels_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&n| n >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    /// `self - n·other`, in place.
    pub(crate) fn sub_scaled(&mut self, n: i64, other: &Weight) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a -= n * b;
        }
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(SmallVec::from_vec(v))
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Vec<i64> {
        w.0.into_vec()
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(a: [i64; N]) -> Self {
        Weight(a.iter().copied().collect())
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated Dynkin labels such as `3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut labels = SmallVec::new();
        let mut offset = 0;
        for token in s.split(',') {
            let trimmed = token.trim();
            let value: i64 = trimmed.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                position: offset + (token.len() - token.trim_start().len()),
                message: format!("expected an integer label, found `{trimmed}`"),
            })?;
            labels.push(value);
            offset += token.len() + 1;
        }
        Ok(Weight(labels))
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Dynkin labels `(n_0, n_1, …, n_rank)` of an affine dominant weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    labels: Vec<i64>,
}

impl AffineWeight {
    pub fn new(labels: Vec<i64>) -> Result<Self> {
        if let Some(&n) = labels.iter().find(|&&n| n < 0) {
            return Err(Error::NotDominant(Weight::from(vec![n])));
        }
        Ok(AffineWeight { labels })
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }
}

/// A positive root, in simple-root coordinates and as a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub weight: Weight,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// Exact data of a finite root system, immutable after construction.
#[derive(Clone, Debug)]
pub struct RootSystem {
    id: AlgebraId,
    cartan: Vec<Vec<i64>>,
    root_lengths: Vec<BigRational>,
    form_fw: RatMatrix,
    simple_roots_fw: Vec<Weight>,
    theta: Weight,
    marks: Vec<i64>,
    comarks: Vec<BigRational>,
    rho: Weight,
    dual_coxeter: i64,

    comarks_int: Vec<i64>,
    gram: Vec<Vec<i64>>,
    gram_scale: i64,
    cartan_adj: Vec<Vec<i64>>,
    cartan_det: i64,
    // (α_i,α_i)/2 = half_length_num[i] / half_length_den
    half_length_num: Vec<i64>,
    half_length_den: i64,
    positive_roots: Vec<Root>,
    long_roots: Vec<Weight>,
}

/// Symmetrized form `(α_i, α_j)` on the simple roots.
fn simple_root_form(id: AlgebraId) -> RatMatrix {
    let n = id.rank();
    let mut b: RatMatrix = vec![vec![rat(0); n]; n];
    let link = |b: &mut RatMatrix, i: usize, j: usize, v: BigRational| {
        b[i][j] = v.clone();
        b[j][i] = v;
    };
    match id.family() {
        Family::A => {
            for i in 0..n {
                b[i][i] = rat(2);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut b, i, i + 1, rat(-1));
            }
        }
        Family::B if n == 2 => {
            b[0][0] = rat(1);
            b[1][1] = rat(2);
            link(&mut b, 0, 1, rat(-1));
        }
        Family::B => {
            for i in 0..n - 1 {
                b[i][i] = rat(2);
            }
            b[n - 1][n - 1] = rat(1);
            for i in 0..n - 1 {
                link(&mut b, i, i + 1, rat(-1));
            }
        }
        Family::C => {
            for i in 0..n - 1 {
                b[i][i] = rat(1);
            }
            b[n - 1][n - 1] = rat(2);
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, rat_frac(-1, 2));
            }
            link(&mut b, n - 2, n - 1, rat(-1));
        }
        Family::D => {
            for i in 0..n {
                b[i][i] = rat(2);
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, rat(-1));
            }
            link(&mut b, n - 3, n - 1, rat(-1));
        }
        Family::G => {
            b[0][0] = rat_frac(2, 3);
            b[1][1] = rat(2);
            link(&mut b, 0, 1, rat(-1));
        }
    }
    b
}

/// Positive roots generated from the Cartan matrix by root strings.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let to_weight = |c: &[i64]| -> Weight { Weight::new((0..n).map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum())) };
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    while !layer.is_empty() {
        for c in &layer {
            known.insert(c.clone());
        }
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for c in &layer {
            let w = to_weight(c);
            for j in 0..n {
                // r: how far the α_j string extends downward
                let mut r = 0;
                let mut probe = c.clone();
                loop {
                    probe[j] -= 1;
                    if known.contains(&probe) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - w[j];
                if q > 0 {
                    let mut up = c.clone();
                    up[j] += 1;
                    next.insert(up);
                }
            }
        }
        roots.append(&mut layer);
        layer = next.into_iter().collect();
    }
    roots
        .into_iter()
        .map(|coeffs| {
            let weight = to_weight(&coeffs);
            Root { coeffs, weight }
        })
        .collect()
}

impl RootSystem {
    pub fn new(id: AlgebraId) -> Result<Self> {
        let n = id.rank();
        let b = simple_root_form(id);
        let root_lengths: Vec<BigRational> = (0..n).map(|i| b[i][i].clone()).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = &(&b[i][j] * rat(2)) / &b[j][j];
                        to_i64(&a).expect("Cartan entries are integers")
                    })
                    .collect()
            })
            .collect();

        let positive_roots = generate_positive_roots(&cartan);
        let highest = positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty root system")
            .clone();
        let marks = highest.coeffs.clone();
        let theta = highest.weight.clone();

        let comarks: Vec<BigRational> = (0..n).map(|i| &(&rat(marks[i]) * &root_lengths[i]) / rat(2)).collect();
        let comarks_int: Vec<i64> = comarks
            .iter()
            .map(|c| to_i64(c).expect("comarks are integers"))
            .collect();
        let dual_coxeter = 1 + comarks_int.iter().sum::<i64>();

        let a_rat: RatMatrix = cartan.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect();
        let a_inv = invert(&a_rat).expect("Cartan matrix is nonsingular");
        let det = determinant(&a_rat);
        let cartan_det = to_i64(&det).expect("integer determinant");
        let cartan_adj: Vec<Vec<i64>> = a_inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| to_i64(&(x * &det)).expect("integral adjugate"))
                    .collect()
            })
            .collect();

        // (λ_i, λ_j) = (A^{-1})_{ji} (α_i, α_i) / 2
        let form_fw: RatMatrix = (0..n)
            .map(|i| (0..n).map(|j| &(&a_inv[j][i] * &root_lengths[i]) / rat(2)).collect())
            .collect();
        let scale = common_denominator(&form_fw);
        let gram_scale = scale.to_i64().expect("small denominators");
        let gram: Vec<Vec<i64>> = form_fw
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| to_i64(&(x * BigRational::from_integer(scale.clone()))).unwrap())
                    .collect()
            })
            .collect();

        let halves: RatMatrix = vec![root_lengths.iter().map(|l| l / rat(2)).collect()];
        let half_length_den = common_denominator(&halves).to_i64().expect("small denominators");
        let half_length_num: Vec<i64> = halves[0]
            .iter()
            .map(|h| to_i64(&(h * rat(half_length_den))).expect("integral"))
            .collect();

        let simple_roots_fw: Vec<Weight> = cartan.iter().map(|row| Weight::new(row.clone())).collect();
        let rho = Weight::new(std::iter::repeat_n(1, n));

        let mut rs = RootSystem {
            id,
            cartan,
            root_lengths,
            form_fw,
            simple_roots_fw,
            theta,
            marks,
            comarks,
            rho,
            dual_coxeter,
            comarks_int,
            gram,
            gram_scale,
            cartan_adj,
            cartan_det,
            half_length_num,
            half_length_den,
            positive_roots,
            long_roots: Vec::new(),
        };
        rs.long_roots = rs.orbit_of(&rs.theta);
        Ok(rs)
    }

    /// Plain orbit enumeration by breadth-first search over simple reflections.
    pub(crate) fn orbit_of(&self, x: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::from([x.clone()]);
        seen.insert(x.clone());
        while let Some(y) = queue.pop_front() {
            for i in 0..self.rank() {
                if y[i] == 0 {
                    continue;
                }
                let mut z = y.clone();
                z.sub_scaled(y[i], &self.simple_roots_fw[i]);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(α_i, α_i)` for each simple root.
    pub fn root_lengths(&self) -> &[BigRational] {
        &self.root_lengths
    }

    /// Pairwise inner products `(λ_i, λ_j)` of the fundamental weights.
    pub fn form_fw(&self) -> &[Vec<BigRational>] {
        &self.form_fw
    }

    /// Simple root `α_i` (0-based index) in the fundamental-weight basis.
    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots_fw[i]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots_fw
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    /// Marks `ℓ_1 … ℓ_rank` (coefficients of θ on the simple roots); `ℓ_0 = 1`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[BigRational] {
        &self.comarks
    }

    pub fn comarks_int(&self) -> &[i64] {
        &self.comarks_int
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// The W-orbit of θ, i.e. all long roots.
    pub fn long_roots(&self) -> &[Weight] {
        &self.long_roots
    }

    pub(crate) fn check(&self, x: &Weight) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Result<BigRational> {
        self.check(x)?;
        self.check(y)?;
        Ok(BigRational::new(
            BigInt::from(self.inner_scaled(x, y)),
            BigInt::from(self.gram_scale),
        ))
    }

    /// `D·(x,y)` for the fixed common denominator `D` of the form.
    #[inline]
    pub fn inner_scaled(&self, x: &Weight, y: &Weight) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut t = 0;
            for j in 0..n {
                t += row[j] * y[j];
            }
            s += x[i] * t;
        }
        s
    }

    pub fn form_scale(&self) -> i64 {
        self.gram_scale
    }

    /// `⟨λ, θ⟩ = Σ n_i ℓ̌_i` as an exact rational.
    pub fn theta_pairing(&self, x: &Weight) -> BigRational {
        rat(self.level_of(x))
    }

    /// `⟨λ, θ⟩` for an integral weight.
    #[inline]
    pub fn level_of(&self, x: &Weight) -> i64 {
        x.labels().iter().zip(&self.comarks_int).map(|(n, c)| n * c).sum()
    }

    pub fn affine_to_classical(&self, aw: &AffineWeight) -> Result<(i64, Weight)> {
        let labels = aw.labels();
        if labels.len() != self.rank() + 1 {
            return Err(Error::RankMismatch {
                expected: self.rank() + 1,
                found: labels.len(),
            });
        }
        let lambda = Weight::new(labels[1..].iter().copied());
        Ok((labels[0] + self.level_of(&lambda), lambda))
    }

    pub fn classical_to_affine(&self, lambda: &Weight, level: i64) -> Result<AffineWeight> {
        self.check(lambda)?;
        let n0 = level - self.level_of(lambda);
        if n0 < 0 || !lambda.is_dominant() {
            return Err(Error::LevelExceeded {
                weight: lambda.clone(),
                pairing: self.level_of(lambda),
                level,
            });
        }
        let mut labels = vec![n0];
        labels.extend_from_slice(lambda.labels());
        AffineWeight::new(labels)
    }

    /// `P_k^+` in lexicographic order.
    pub fn enumerate_level(&self, k: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank()];
        self.enumerate_rec(0, k, &mut cur, &mut out);
        out
    }

    fn enumerate_rec(&self, i: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == self.rank() {
            out.push(Weight::new(cur.iter().copied()));
            return;
        }
        let c = self.comarks_int[i];
        let mut n = 0;
        while n * c <= budget {
            cur[i] = n;
            self.enumerate_rec(i + 1, budget - n * c, cur, out);
            n += 1;
        }
        cur[i] = 0;
    }

    /// Highest weight of the contragredient module.
    pub fn conjugate_weight(&self, lambda: &Weight) -> Result<Weight> {
        self.check(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.clone()));
        }
        Ok(crate::weyl::fold_dominant(self, &-lambda).weight)
    }

    /// Coordinates of `x` on the simple roots, or `None` if not in the root lattice.
    pub fn simple_root_coords(&self, x: &Weight) -> Option<Vec<i64>> {
        let raw = self.simple_root_coords_scaled(x);
        raw.iter()
            .map(|&v| {
                if v % self.cartan_det == 0 {
                    Some(v / self.cartan_det)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `det(A)` times the simple-root coordinates of `x`.
    pub(crate) fn simple_root_coords_scaled(&self, x: &Weight) -> Vec<i64> {
        let n = self.rank();
        // x = c·A, so c = x·A^{-1}
        (0..n)
            .map(|j| (0..n).map(|i| x[i] * self.cartan_adj[i][j]).sum())
            .collect()
    }

    pub fn cartan_det(&self) -> i64 {
        self.cartan_det
    }

    /// Whether `x` lies in `m·Q^∨`, the lattice of translations of the
    /// affine Weyl group at shifted level `m = k + ȟ`.
    pub fn in_scaled_coroot_lattice(&self, x: &Weight, m: i64) -> bool {
        // x = Σ c_i α_i = Σ c_i (α_i,α_i)/2 · α̌_i, with c_i = s_i / det(A)
        let modulus = self.cartan_det * self.half_length_den * m;
        self.simple_root_coords_scaled(x)
            .iter()
            .zip(&self.half_length_num)
            .all(|(&s, &h)| (s * h) % modulus == 0)
    }

    /// Weyl dimension formula, exact.
    pub fn weyl_dimension(&self, lambda: &Weight) -> u128 {
        let shifted = lambda + &self.rho;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for root in &self.positive_roots {
            num *= BigInt::from(self.inner_scaled(&shifted, &root.weight));
            den *= BigInt::from(self.inner_scaled(&self.rho, &root.weight));
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero());
        q.to_u128().unwrap_or(u128::MAX)
    }

    /// Coset class of the weight lattice modulo the root lattice, used for
    /// level-1 group fusion. Two weights share a class iff their difference
    /// is in the root lattice.
    pub fn same_root_class(&self, x: &Weight, y: &Weight) -> bool {
        self.simple_root_coords(&(x - y)).is_some()
    }
}

fn determinant(m: &RatMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = rat(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return rat(0);
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            let f = &a[r][col] / &pivot;
            for j in col..n {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - t;
            }
        }
    }
    det
}

/// Convenience constructor from a string such as `"A2"`.
pub fn root_system(name: &str) -> Result<RootSystem> {
    RootSystem::new(name.parse()?)
}

/// Serde form of a `Weight → multiplicity` map: a list of
/// `{"weight": [..], "mult": n}`, since JSON keys must be strings.
pub(crate) mod mult_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Weight;

    #[derive(Serialize, Deserialize)]
    struct Term {
        weight: Weight,
        mult: u64,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<Weight, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter().map(|(w, &mult)| Term {
            weight: w.clone(),
            mult,
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Weight, u64>, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(terms.into_iter().map(|t| (t.weight, t.mult)).collect())
    }
}
