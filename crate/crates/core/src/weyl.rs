//! Finite and affine Weyl group actions on weights.
//!
//! Folding is iterative: the first violated reflection in the order
//! `r_1, …, r_rank` (then `r_0` for the alcove) is applied until the weight
//! lands in the closed fundamental domain. A weight on a wall gets sign 0.
//! The group itself is only materialized for `signed_rho_orbit` and for
//! exhaustive checks.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cartan::{RootSystem, Weight};
use crate::error::{Error, Result};

/// Upper bound on reflections in a single fold. Reaching it is a bug.
pub const MAX_FOLD_STEPS: usize = 10_000;

/// Default bound on `|W|` when the group must be materialized.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedWeight {
    pub weight: Weight,
    /// `ε(w)` of the folding element, or 0 when a wall was hit.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedOrbit {
    pub entries: Vec<(Weight, i8)>,
}

impl SignedOrbit {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `r_i(x) = x − ⟨x, α̌_i⟩ α_i` for `1 ≤ i ≤ rank`.
pub fn reflect_simple(rs: &RootSystem, x: &Weight, i: usize) -> Result<Weight> {
    rs.check(x)?;
    if i == 0 || i > rs.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: rs.rank(),
        });
    }
    let mut y = x.clone();
    y.sub_scaled(x[i - 1], rs.simple_root(i - 1));
    Ok(y)
}

/// Reflection in the hyperplane orthogonal to θ through the origin.
pub fn reflect_theta(rs: &RootSystem, x: &Weight) -> Weight {
    let mut y = x.clone();
    y.sub_scaled(rs.level_of(x), rs.theta());
    y
}

/// The shifted affine reflection `r_0(x) = r_θ(x) + (k+ȟ)θ`.
pub fn reflect_affine(rs: &RootSystem, x: &Weight, k: i64) -> Weight {
    let mut y = x.clone();
    y.sub_scaled(rs.level_of(x) - (k + rs.dual_coxeter()), rs.theta());
    y
}

/// Fold `x` into the closed dominant chamber.
pub fn fold_dominant(rs: &RootSystem, x: &Weight) -> SignedWeight {
    let mut y = x.clone();
    let mut sign = 1i8;
    let mut steps = 0;
    while let Some(i) = (0..rs.rank()).find(|&i| y[i] < 0) {
        let n = y[i];
        y.sub_scaled(n, rs.simple_root(i));
        sign = -sign;
        steps += 1;
        assert!(steps < MAX_FOLD_STEPS, "dominant fold did not terminate for {x}");
    }
    if y.labels().contains(&0) {
        sign = 0;
    }
    SignedWeight { weight: y, sign }
}

/// Fold `x` into the closed level-`(k+ȟ)` alcove
/// `{y : ⟨y,α̌_i⟩ ≥ 0, ⟨y,θ⟩ ≤ k+ȟ}`.
pub fn fold_alcove(rs: &RootSystem, x: &Weight, k: i64) -> SignedWeight {
    let wall = k + rs.dual_coxeter();
    let mut y = x.clone();
    let mut sign = 1i8;
    let mut steps = 0;
    loop {
        if let Some(i) = (0..rs.rank()).find(|&i| y[i] < 0) {
            let n = y[i];
            y.sub_scaled(n, rs.simple_root(i));
        } else {
            let level = rs.level_of(&y);
            if level <= wall {
                break;
            }
            y.sub_scaled(level - wall, rs.theta());
        }
        sign = -sign;
        steps += 1;
        assert!(
            steps < MAX_FOLD_STEPS,
            "alcove fold did not terminate for {x} at level {k}"
        );
    }
    if y.labels().contains(&0) || rs.level_of(&y) == wall {
        sign = 0;
    }
    SignedWeight { weight: y, sign }
}

/// Weyl group element acting on Dynkin labels by `y_j = Σ_i x_i m_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    sign: i8,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement { matrix, sign: 1 }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        let n = self.matrix.len();
        Weight::new((0..n).map(|j| (0..n).map(|i| x[i] * self.matrix[i][j]).sum()))
    }

    /// `r_i ∘ self`, with `i` 0-based.
    fn then_reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let n = self.matrix.len();
        let alpha = rs.simple_root(i);
        // row-vector convention: x·M·R_i, R_i = I − e_i α_i
        let matrix = (0..n)
            .map(|r| {
                let row = &self.matrix[r];
                (0..n).map(|j| row[j] - row[i] * alpha[j]).collect()
            })
            .collect();
        WeylElement {
            matrix,
            sign: -self.sign,
        }
    }
}

/// All elements of `W`, found by breadth-first search keyed on the image of ρ.
pub fn weyl_group(rs: &RootSystem, max_order: usize) -> Result<Vec<WeylElement>> {
    let mut seen: HashMap<Weight, usize> = HashMap::new();
    let id = WeylElement::identity(rs.rank());
    let mut elements = vec![id.clone()];
    seen.insert(rs.rho().clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for i in 0..rs.rank() {
            let next = elements[idx].then_reflect(rs, i);
            let image = next.apply(rs.rho());
            if seen.contains_key(&image) {
                continue;
            }
            if elements.len() >= max_order {
                return Err(Error::GroupTooLarge { bound: max_order });
            }
            seen.insert(image, elements.len());
            elements.push(next);
            queue.push_back(elements.len() - 1);
        }
    }
    Ok(elements)
}

/// `{(wρ, ε(w)) : w ∈ W}`, with ρ itself first.
pub fn signed_rho_orbit(rs: &RootSystem, max_order: usize) -> Result<SignedOrbit> {
    let mut signs: BTreeMap<Weight, i8> = BTreeMap::new();
    let mut queue = VecDeque::from([rs.rho().clone()]);
    signs.insert(rs.rho().clone(), 1);
    let mut entries = vec![(rs.rho().clone(), 1)];
    while let Some(x) = queue.pop_front() {
        let s = signs[&x];
        for i in 0..rs.rank() {
            let mut y = x.clone();
            y.sub_scaled(x[i], rs.simple_root(i));
            if signs.contains_key(&y) {
                continue;
            }
            if entries.len() >= max_order {
                return Err(Error::GroupTooLarge { bound: max_order });
            }
            signs.insert(y.clone(), -s);
            entries.push((y.clone(), -s));
            queue.push_back(y);
        }
    }
    Ok(SignedOrbit { entries })
}

/// The W-orbit of θ: every long root, without duplicates.
pub fn long_root_orbit(rs: &RootSystem) -> Vec<Weight> {
    rs.long_roots().to_vec()
}

/// Full W-orbit of an arbitrary weight.
pub fn orbit(rs: &RootSystem, x: &Weight) -> Vec<Weight> {
    rs.orbit_of(x)
}

/// Whether `−(k+ȟ) < ⟨x, wθ⟩ < k+ȟ` for every long root `wθ`.
pub fn in_open_fk(rs: &RootSystem, x: &Weight, k: i64) -> bool {
    // long roots have (γ,γ) = 2, so ⟨x,γ⟩ = (x,γ)
    let bound = (k + rs.dual_coxeter()) * rs.form_scale();
    rs.long_roots().iter().all(|g| rs.inner_scaled(x, g).abs() < bound)
}
