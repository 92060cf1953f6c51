//! Tensor product decomposition by Racah-Speiser folding, plus the
//! stability-zone helpers built on weight strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cartan::{RootSystem, Weight};
use crate::error::{Error, Result};
use crate::weights::{weight_string, weight_system_with, Direction, Limits, WeightSystem};
use crate::weyl::{fold_dominant, in_open_fk};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub left: Weight,
    pub right: Weight,
    #[serde(with = "crate::cartan::mult_list")]
    pub terms: BTreeMap<Weight, u64>,
}

impl Decomposition {
    pub fn mult(&self, nu: &Weight) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }
}

fn check_dominant(rs: &RootSystem, x: &Weight) -> Result<()> {
    rs.check(x)?;
    if !x.is_dominant() {
        return Err(Error::NotDominant(x.clone()));
    }
    Ok(())
}

/// Collapse signed contributions, asserting nothing is left negative.
pub(crate) fn collect_signed(acc: BTreeMap<Weight, i64>, what: &str) -> BTreeMap<Weight, u64> {
    acc.into_iter()
        .filter_map(|(w, n)| {
            assert!(n >= 0, "{what}: negative total {n} at {w}");
            (n > 0).then_some((w, n as u64))
        })
        .collect()
}

pub fn racah_speiser(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    racah_speiser_with(rs, lambda, mu, &Limits::default())
}

pub fn racah_speiser_with(rs: &RootSystem, lambda: &Weight, mu: &Weight, limits: &Limits) -> Result<Decomposition> {
    check_dominant(rs, lambda)?;
    check_dominant(rs, mu)?;
    let ws = weight_system_with(rs, lambda, limits)?;
    let shift = mu + rs.rho();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (beta, m) in ws.iter() {
        let folded = fold_dominant(rs, &(beta + &shift));
        if folded.sign != 0 {
            *acc.entry(&folded.weight - rs.rho()).or_default() += i64::from(folded.sign) * m as i64;
        }
    }
    Ok(Decomposition {
        left: lambda.clone(),
        right: mu.clone(),
        terms: collect_signed(acc, "Racah-Speiser"),
    })
}

pub fn symmetric_decomposition_check(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<bool> {
    Ok(racah_speiser(rs, lambda, mu)?.terms == racah_speiser(rs, mu, lambda)?.terms)
}

/// `q_{β,j}`: beyond this value of `⟨μ,α̌_j⟩` the multiplicity of `β+μ` in
/// `V^λ ⊗ V^μ` no longer changes when `μ` grows by `λ_j`.
pub fn stability_threshold(rs: &RootSystem, ws: &WeightSystem, beta: &Weight, j: usize) -> Result<u64> {
    Ok(weight_string(rs, ws, beta, Direction::Simple(j))?.q)
}

/// `⟨λ+μ,θ⟩`, the smallest level from which fusion equals the tensor product.
pub fn min_equal_level(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> i64 {
    rs.level_of(&(lambda + mu))
}

/// Whether every point of `Π^λ + μ + ρ` is strictly inside the level-k hexagon.
pub fn verify_fk_containment(rs: &RootSystem, lambda: &Weight, mu: &Weight, k: i64) -> Result<bool> {
    check_dominant(rs, lambda)?;
    check_dominant(rs, mu)?;
    let ws = weight_system_with(rs, lambda, &Limits::default())?;
    let shift = mu + rs.rho();
    let inside = ws.iter().all(|(beta, _)| in_open_fk(rs, &(beta + &shift), k));
    Ok(inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::root_system;

    fn w<const N: usize>(l: [i64; N]) -> Weight {
        Weight::from(l)
    }

    #[test]
    fn a2_example() {
        let a2 = root_system("A2").unwrap();
        let d = racah_speiser(&a2, &w([3, 2]), &w([1, 0])).unwrap();
        let expect = BTreeMap::from([(w([4, 2]), 1), (w([3, 1]), 1), (w([2, 3]), 1)]);
        assert_eq!(d.terms, expect);
    }

    #[test]
    fn identity_factor() {
        let b2 = root_system("B2").unwrap();
        let d = racah_speiser(&b2, &w([2, 1]), &w([0, 0])).unwrap();
        assert_eq!(d.terms, BTreeMap::from([(w([2, 1]), 1)]));
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = root_system("A1").unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let d = racah_speiser(&a1, &w([a]), &w([b])).unwrap();
                let expect: BTreeMap<_, _> = ((a - b).abs()..=a + b).step_by(2).map(|c| (w([c]), 1)).collect();
                assert_eq!(d.terms, expect);
            }
        }
    }

    #[test]
    fn commutes() {
        for (name, l, m) in [("A2", [3, 2], [1, 0]), ("B2", [1, 1], [1, 1]), ("G2", [1, 0], [0, 1])] {
            let rs = root_system(name).unwrap();
            assert!(symmetric_decomposition_check(&rs, &w(l), &w(m)).unwrap());
        }
    }

    #[test]
    fn thresholds() {
        let a2 = root_system("A2").unwrap();
        let ws = crate::weights::racah_multiplicities(&a2, &w([3, 2])).unwrap();
        assert_eq!(stability_threshold(&a2, &ws, &w([2, 1]), 1).unwrap(), 1);
        assert_eq!(stability_threshold(&a2, &ws, &w([2, 1]), 2).unwrap(), 1);
        assert_eq!(stability_threshold(&a2, &ws, &w([3, 2]), 1).unwrap(), 0);
        for m in 1..6 {
            let d = racah_speiser(&a2, &w([3, 2]), &w([m, 0])).unwrap();
            assert_eq!(d.mult(&w([2 + m, 1])), 1);
        }
    }

    #[test]
    fn equal_levels() {
        let a2 = root_system("A2").unwrap();
        assert_eq!(min_equal_level(&a2, &w([3, 2]), &w([1, 0])), 6);
        assert_eq!(min_equal_level(&a2, &w([0, 0]), &w([0, 0])), 0);
        assert_eq!(min_equal_level(&a2, &w([1, 1]), &w([1, 1])), 4);
        assert!(verify_fk_containment(&a2, &w([3, 2]), &w([1, 0]), 6).unwrap());
        assert!(!verify_fk_containment(&a2, &w([3, 2]), &w([1, 0]), 5).unwrap());
        assert!(verify_fk_containment(&a2, &w([0, 0]), &w([0, 0]), 1).unwrap());
    }
}
