//! Library results against independent brute-force computations.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;

use fusionkit::fusion::kac_walton;
use fusionkit::orbits::{all_orbits, count_triple_orbits, OrbitLabel};
use fusionkit::tensor::racah_speiser;
use fusionkit::verify::labels_up_to;
use fusionkit::weights::{dimension, dominant_below, freudenthal_multiplicities, racah_multiplicities};
use fusionkit::weyl::{fold_dominant, weyl_group, DEFAULT_MAX_GROUP_ORDER};
use fusionkit::{root_system, RootSystem, Weight};

fn w<const N: usize>(l: [i64; N]) -> Weight {
    Weight::from(l)
}

/// Dominant μ with λ−μ a nonnegative integer combination of simple roots,
/// found by scanning a box of labels.
fn dominant_below_by_search(rs: &RootSystem, lambda: &Weight) -> BTreeSet<Weight> {
    let bound = lambda.labels().iter().sum::<i64>() * 2 + 2;
    labels_up_to(rs.rank(), bound)
        .into_iter()
        .filter(|mu| match rs.simple_root_coords(&(lambda - mu)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        })
        .collect()
}

#[test]
fn dominant_weights_by_lattice_search() {
    for name in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
        let rs = root_system(name).unwrap();
        for lambda in labels_up_to(rs.rank(), 2) {
            assert_eq!(
                dominant_below(&rs, &lambda).unwrap(),
                dominant_below_by_search(&rs, &lambda),
                "{name} {lambda}"
            );
        }
    }
}

fn weyl_formula(rs: &RootSystem, lambda: &Weight) -> BigRational {
    let shifted = lambda + rs.rho();
    let mut dim = BigRational::one();
    for root in rs.positive_roots() {
        dim *= rs.inner_product(&shifted, &root.weight).unwrap() / rs.inner_product(rs.rho(), &root.weight).unwrap();
    }
    dim
}

#[test]
fn dimensions_by_weyl_formula() {
    for name in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "D4"] {
        let rs = root_system(name).unwrap();
        let max = if rs.rank() == 2 { 4 } else { 1 };
        for lambda in labels_up_to(rs.rank(), max) {
            let ws = racah_multiplicities(&rs, &lambda).unwrap();
            let d = dimension(&ws);
            assert_eq!(
                BigRational::from_integer(d.into()),
                weyl_formula(&rs, &lambda),
                "{name} {lambda}"
            );
            assert_eq!(u128::from(d), rs.weyl_dimension(&lambda));
        }
    }
}

#[test]
fn a2_dimension_closed_form() {
    let a2 = root_system("A2").unwrap();
    for lambda in labels_up_to(2, 6) {
        let (a, b) = (lambda[0] as u64, lambda[1] as u64);
        let ws = racah_multiplicities(&a2, &lambda).unwrap();
        assert_eq!(dimension(&ws), (a + b + 2) * (a + 1) * (b + 1) / 2);
    }
}

/// Multiplicity of a dominant weight `λ − mα_1 − nα_2` of `V(a,b)` for A2.
#[test]
fn a2_multiplicities_closed_form() {
    let a2 = root_system("A2").unwrap();
    for lambda in labels_up_to(2, 5) {
        let ws = racah_multiplicities(&a2, &lambda).unwrap();
        for (mu, mult) in ws.dominant() {
            let c = a2.simple_root_coords(&(&lambda - mu)).unwrap();
            let expect = 1 + c[0].min(c[1]).min(lambda[0]).min(lambda[1]);
            assert_eq!(mult as i64, expect, "{lambda} at {mu}");
        }
    }
}

#[test]
fn freudenthal_agrees_small() {
    for name in ["A1", "A2", "B2", "G2", "A3", "C3"] {
        let rs = root_system(name).unwrap();
        for lambda in labels_up_to(rs.rank(), 2) {
            assert_eq!(
                racah_multiplicities(&rs, &lambda).unwrap(),
                freudenthal_multiplicities(&rs, &lambda).unwrap(),
                "{name} {lambda}"
            );
        }
    }
}

/// Fold by searching the whole Weyl group for the element that makes x dominant.
fn fold_by_search(rs: &RootSystem, x: &Weight) -> (Weight, i8) {
    let group = weyl_group(rs, DEFAULT_MAX_GROUP_ORDER).unwrap();
    let stabilized = group.iter().any(|g| g.sign() == -1 && g.apply(x) == *x);
    let g = group.iter().find(|g| g.apply(x).is_dominant()).unwrap();
    (g.apply(x), if stabilized { 0 } else { g.sign() })
}

#[test]
fn folding_by_orbit_search() {
    for name in ["A2", "B2", "G2", "A3"] {
        let rs = root_system(name).unwrap();
        let grid: Vec<Weight> = labels_up_to(rs.rank(), 6)
            .into_iter()
            .map(|v| Weight::new(v.labels().iter().map(|x| x - 3)))
            .collect();
        for x in grid {
            let folded = fold_dominant(&rs, &x);
            let (weight, sign) = fold_by_search(&rs, &x);
            assert_eq!(folded.weight, weight, "{name} {x}");
            assert_eq!(folded.sign, sign, "{name} {x}");
        }
    }
}

#[test]
fn folding_spot_values() {
    let a2 = root_system("A2").unwrap();
    let f = fold_dominant(&a2, &w([-1, 3]));
    assert_eq!((f.weight, f.sign), (w([1, 2]), -1));
    assert_eq!(fold_by_search(&a2, &w([-1, 3])), (w([1, 2]), -1));
}

/// Fusion through the alternating sum of tensor multiplicities over affine
/// Weyl elements `t_{(k+ȟ)γ}w` with small coroot translations γ.
fn fusion_by_tensor_route(rs: &RootSystem, lambda: &Weight, mu: &Weight, k: i64) -> BTreeMap<Weight, i64> {
    let tensor = racah_speiser(rs, lambda, mu).unwrap();
    let group = weyl_group(rs, DEFAULT_MAX_GROUP_ORDER).unwrap();
    let m = k + rs.dual_coxeter();
    let coroots: Vec<Weight> = rs
        .simple_roots()
        .iter()
        .map(|a| {
            // α^∨ = 2α/(α,α), which is integral in the weight lattice.
            let scale = BigRational::from_integer(2.into()) / rs.inner_product(a, a).unwrap();
            Weight::new(a.labels().iter().map(|&x| {
                let v = &scale * BigRational::from_integer(x.into());
                assert!(v.is_integer());
                i64::try_from(v.to_integer()).unwrap()
            }))
        })
        .collect();
    let span = 4;
    let mut translations = vec![Weight::zero(rs.rank())];
    for c in &coroots {
        translations = translations
            .iter()
            .flat_map(|t| (-span..=span).map(move |n| t + &(n * c)))
            .collect();
    }
    let mut out = BTreeMap::new();
    for nu in rs.enumerate_level(k) {
        let x = &nu + rs.rho();
        let mut total = 0i64;
        for g in &group {
            let gx = g.apply(&x);
            for t in &translations {
                let image = &(&gx + &(m * t)) - rs.rho();
                total += i64::from(g.sign()) * tensor.mult(&image) as i64;
            }
        }
        if total != 0 {
            out.insert(nu, total);
        }
    }
    out
}

#[test]
fn kac_walton_by_tensor_route() {
    for name in ["A2", "B2"] {
        let rs = root_system(name).unwrap();
        for lambda in labels_up_to(2, 2) {
            for mu in labels_up_to(2, 2) {
                let lo = rs.level_of(&lambda).max(rs.level_of(&mu)).max(1);
                for k in lo..=6 {
                    let folded: BTreeMap<Weight, i64> = kac_walton(&rs, &lambda, &mu, k)
                        .unwrap()
                        .into_iter()
                        .map(|(w, n)| (w, n as i64))
                        .collect();
                    assert_eq!(
                        folded,
                        fusion_by_tensor_route(&rs, &lambda, &mu, k),
                        "{name} {lambda} {mu} k={k}"
                    );
                }
            }
        }
    }
}

/// Count orbits of `{(x,y,z) : x+y+z ≡ 0}` directly: enumerate tuples in
/// `[a]×[b]`, complete z, and collect sorted column lists.
fn triple_orbits_by_enumeration(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> u64 {
    fn arrangements(occ: &[u32]) -> Vec<Vec<u32>> {
        let k: u32 = occ.iter().sum();
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t: Vec<u32>| (0..occ.len() as u32).map(move |j| [t.clone(), vec![j]].concat()))
                .collect();
        }
        out.retain(|t| (0..occ.len()).all(|j| t.iter().filter(|&&x| x as usize == j).count() as u32 == occ[j]));
        out
    }
    let n = a.n;
    let xs = arrangements(&a.occupancy);
    let ys = arrangements(&b.occupancy);
    let mut seen = BTreeSet::new();
    for x in &xs {
        for y in &ys {
            let z: Vec<u32> = x.iter().zip(y).map(|(p, q)| (2 * n - p - q) % n).collect();
            let mut occ = vec![0u32; n as usize];
            for &v in &z {
                occ[v as usize] += 1;
            }
            if occ == c.occupancy {
                let mut cols: Vec<(u32, u32, u32)> = (0..x.len()).map(|i| (x[i], y[i], z[i])).collect();
                cols.sort();
                seen.insert(cols);
            }
        }
    }
    seen.len() as u64
}

#[test]
fn triple_orbits_by_enumeration_agree() {
    for (n, max_k) in [(2, 5), (3, 3), (4, 2)] {
        for k in 1..=max_k {
            let labels = all_orbits(n, k);
            for a in &labels {
                for b in &labels {
                    for c in &labels {
                        assert_eq!(
                            count_triple_orbits(a, b, c).unwrap(),
                            triple_orbits_by_enumeration(a, b, c),
                            "{a:?} {b:?} {c:?}"
                        );
                    }
                }
            }
        }
    }
}
