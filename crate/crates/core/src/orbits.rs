//! `S_k`-orbits on `Z_n^k`: occupancy labels, triple-orbit counts and their
//! comparison with `A_{n-1}` fusion, and the orbit count `M(n,k,r)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cartan::{AlgebraId, Family, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::fusion::{build_fusion_algebra, FusionAlgebra};
use crate::report::Report;

/// The orbit of tuples in which `j` occurs `occupancy[j]` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub n: u32,
    pub k: u32,
    pub occupancy: Vec<u32>,
}

impl OrbitLabel {
    pub fn new(occupancy: Vec<u32>) -> Result<Self> {
        if occupancy.len() < 2 {
            return Err(Error::IncompatibleLabels("need n ≥ 2 residues".into()));
        }
        let k: u32 = occupancy.iter().sum();
        if k == 0 {
            return Err(Error::IncompatibleLabels("empty tuple".into()));
        }
        Ok(OrbitLabel {
            n: occupancy.len() as u32,
            k,
            occupancy,
        })
    }

    /// The orbit of `−x`: occupancy `i_j ↦ i_{−j}`.
    pub fn negate(&self) -> Self {
        let n = self.occupancy.len();
        OrbitLabel {
            occupancy: (0..n).map(|j| self.occupancy[(n - j) % n]).collect(),
            ..self.clone()
        }
    }

    /// Number of tuples in the orbit, `k! / Π i_j!`.
    pub fn size(&self) -> BigUint {
        let mut total = BigUint::from(1u32);
        let mut left = self.k;
        for &i in &self.occupancy {
            total *= binomial(BigUint::from(left), BigUint::from(i));
            left -= i;
        }
        total
    }

    /// Level-k weight of `A_{n-1}` with affine labels equal to the occupancy.
    pub fn to_weight(&self) -> Weight {
        Weight::new(self.occupancy[1..].iter().map(|&i| i64::from(i)))
    }

    pub fn from_weight(n: u32, k: u32, w: &Weight) -> Result<Self> {
        let tail: i64 = w.labels().iter().sum();
        if w.rank() + 1 != n as usize || w.labels().iter().any(|&x| x < 0) || tail > i64::from(k) {
            return Err(Error::IncompatibleLabels(format!(
                "{w} is not a level-{k} weight of A{}",
                n - 1
            )));
        }
        let mut occ = vec![k - tail as u32];
        occ.extend(w.labels().iter().map(|&x| x as u32));
        OrbitLabel::new(occ)
    }
}

pub fn orbit_of(n: u32, k: u32, tuple: &[i64]) -> Result<OrbitLabel> {
    if tuple.len() != k as usize {
        return Err(Error::IncompatibleLabels(format!(
            "tuple has length {}, expected {k}",
            tuple.len()
        )));
    }
    let mut occ = vec![0u32; n as usize];
    for &x in tuple {
        if x < 0 || x >= i64::from(n) {
            return Err(Error::EntryOutOfRange { entry: x, modulus: n });
        }
        occ[x as usize] += 1;
    }
    OrbitLabel::new(occ)
}

/// All orbits of `Z_n^k`, in lexicographic order of occupancy.
pub fn all_orbits(n: u32, k: u32) -> Vec<OrbitLabel> {
    fn go(n: usize, left: u32, prefix: &mut Vec<u32>, k: u32, out: &mut Vec<OrbitLabel>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(OrbitLabel {
                n: n as u32,
                k,
                occupancy: prefix.clone(),
            });
            prefix.pop();
            return;
        }
        for i in 0..=left {
            prefix.push(i);
            go(n, left - i, prefix, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n as usize, k, &mut Vec::new(), k, &mut out);
    out
}

/// `M([a],[b],[c])`: orbits of `{(x,y,z) ∈ [a]×[b]×[c] : x+y+z = 0}`.
///
/// An orbit is a multiset of columns `(x, y, −x−y)`, i.e. a nonnegative
/// matrix `C[x][y]` with row sums `a`, column sums `b` and sums along
/// `x+y ≡ −z` equal to `c`.
pub fn count_triple_orbits(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    if a.n != b.n || a.n != c.n || a.k != b.k || a.k != c.k {
        return Err(Error::IncompatibleLabels(format!(
            "(n,k) = ({},{}), ({},{}), ({},{})",
            a.n, a.k, b.n, b.k, c.n, c.k
        )));
    }
    let n = a.n as usize;
    let mut cols = b.occupancy.clone();
    let mut diag = c.occupancy.clone();
    Ok(fill_rows(n, &a.occupancy, 0, 0, a.occupancy[0], &mut cols, &mut diag))
}

fn fill_rows(n: usize, rows: &[u32], x: usize, y: usize, left: u32, cols: &mut [u32], diag: &mut [u32]) -> u64 {
    if x == n {
        return 1;
    }
    if y == n {
        if left != 0 {
            return 0;
        }
        let next = rows.get(x + 1).copied().unwrap_or(0);
        return fill_rows(n, rows, x + 1, 0, next, cols, diag);
    }
    let z = (2 * n - x - y) % n;
    let cap = left.min(cols[y]).min(diag[z]);
    let mut total = 0;
    for t in 0..=cap {
        cols[y] -= t;
        diag[z] -= t;
        total += fill_rows(n, rows, x, y + 1, left - t, cols, diag);
        cols[y] += t;
        diag[z] += t;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFusionRow {
    pub a: OrbitLabel,
    pub b: OrbitLabel,
    pub c: OrbitLabel,
    /// `M([a],[b],[c])`
    pub orbits: u64,
    /// `N_{[a],[b],[c]} = N_{a,b}^{c⁺}` in `F(A_{n-1}, k)`
    pub fusion: u64,
}

/// Both sides of the orbit/fusion comparison over all label triples.
pub fn orbit_fusion_data(n: u32, k: u32) -> Result<Vec<OrbitFusionRow>> {
    let rs = RootSystem::new(AlgebraId::new(Family::A, n as usize - 1)?)?;
    let fa = build_fusion_algebra(&rs, i64::from(k))?;
    orbit_fusion_rows(&rs, &fa, n, k)
}

fn orbit_fusion_rows(rs: &RootSystem, fa: &FusionAlgebra, n: u32, k: u32) -> Result<Vec<OrbitFusionRow>> {
    let labels = all_orbits(n, k);
    let mut rows = Vec::new();
    for a in &labels {
        for b in &labels {
            for c in &labels {
                let target = rs.conjugate_weight(&c.to_weight())?;
                rows.push(OrbitFusionRow {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    orbits: count_triple_orbits(a, b, c)?,
                    fusion: fa.coeff_weights(&a.to_weight(), &b.to_weight(), &target),
                });
            }
        }
    }
    Ok(rows)
}

fn compare_rows(name: &str, rows: Vec<OrbitFusionRow>, expected: impl Fn(u64) -> u64) -> Report {
    let mut report = Report::new(name);
    for row in rows {
        report.record(row.orbits == expected(row.fusion), || json!(row));
    }
    report
}

/// `M([a],[b],[c]) = N_{[a],[b],[c]}` for `sl2` at level k.
pub fn verify_sl2_orbit_fusion(k: u32) -> Result<Report> {
    let rows = orbit_fusion_data(2, k)?;
    Ok(compare_rows(&format!("orbit count vs sl2 fusion, k={k}"), rows, |n| n))
}

/// `M([a],[b],[c]) = (N+1 choose 2)` for `sl3` at level k.
pub fn verify_sl3_orbit_fusion(k: u32) -> Result<Report> {
    let rows = orbit_fusion_data(3, k)?;
    Ok(compare_rows(&format!("orbit count vs sl3 fusion, k={k}"), rows, |n| {
        n * (n + 1) / 2
    }))
}

/// Support condition of `sl2` fusion in terms of dimensions `m = 2a+1`,
/// with `p = k + 2`.
pub fn p_admissible(m: u32, m2: u32, m3: u32, p: u32) -> bool {
    let bounded = [m, m2, m3].iter().all(|&x| 0 < x && x < p);
    let sum = m + m2 + m3;
    bounded && sum % 2 == 1 && sum < 2 * p && m < m2 + m3 && m2 < m + m3 && m3 < m + m2
}

fn mobius(mut d: u64) -> i64 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= d {
        if d.is_multiple_of(f) {
            d /= f;
            if d.is_multiple_of(f) {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

/// `c_d(r) = Σ_{e | gcd(d,r)} e·μ(d/e)`.
pub fn ramanujan_sum(d: u64, r: i64) -> i64 {
    assert!(d >= 1, "Ramanujan sum needs d ≥ 1");
    let g = d.gcd(&r.unsigned_abs());
    (1..=g)
        .filter(|e| g.is_multiple_of(*e))
        .map(|e| e as i64 * mobius(d / e))
        .sum()
}

/// `M(n,k,r) = (1/(n+k)) Σ_{d | gcd(n,k)} C((n+k)/d, n/d) c_d(r)`.
pub fn count_orbits_formula(n: u64, k: u64, r: u64) -> Result<BigUint> {
    let g = n.gcd(&k);
    let mut total = BigInt::zero();
    for d in (1..=g).filter(|d| g.is_multiple_of(*d)) {
        let c = binomial(BigInt::from((n + k) / d), BigInt::from(n / d));
        total += c * ramanujan_sum(d, r as i64);
    }
    let (q, rem) = total.div_rem(&BigInt::from(n + k));
    if !rem.is_zero() || q.is_negative() {
        return Err(Error::InexactDivision {
            numerator: total.to_string(),
            denominator: n + k,
        });
    }
    Ok(q.to_biguint().expect("nonnegative"))
}

/// Partitions of `t` into at most `b` parts, each at most `a`.
pub fn bounded_partitions(a: u64, b: u64, t: u64) -> u64 {
    if t > a * b {
        return 0;
    }
    let (a, b, t) = (a as usize, b as usize, t as usize);
    // row `bb`: p(aa, bb, ·) for the current aa; start from aa = 0
    let mut table: Vec<Vec<u64>> = (0..=b)
        .map(|_| {
            let mut row = vec![0; t + 1];
            row[0] = 1;
            row
        })
        .collect();
    for aa in 1..=a {
        for bb in 1..=b {
            for s in aa..=t {
                table[bb][s] += table[bb - 1][s - aa];
            }
        }
    }
    table[b][t]
}

/// `Σ_{t ≥ 0} p(n−1, k, r + nt)`.
pub fn count_orbits_partition_sum(n: u64, k: u64, r: u64) -> u64 {
    let top = (n - 1) * k;
    (0..)
        .map(|t| r + n * t)
        .take_while(|&s| s <= top)
        .map(|s| bounded_partitions(n - 1, k, s))
        .sum()
}

/// Weakly decreasing k-tuples over `[0, n)` with sum `≡ r (mod n)`,
/// checked against the partition sum.
pub fn count_orbits_bruteforce(n: u64, k: u64, r: u64) -> Result<u64> {
    fn go(max: u64, left: u64, sum: u64, n: u64, r: u64) -> u64 {
        if left == 0 {
            return u64::from(sum % n == r);
        }
        (0..=max).map(|x| go(x, left - 1, sum + x, n, r)).sum()
    }
    let enumerated = go(n - 1, k, 0, n, r);
    let partition_sum = count_orbits_partition_sum(n, k, r);
    if enumerated != partition_sum {
        return Err(Error::CountMismatch {
            enumerated,
            partition_sum,
        });
    }
    Ok(enumerated)
}

/// `M(n,k,r)` for every residue `r`.
pub fn orbit_count_table(n: u64, k: u64) -> Result<BTreeMap<u64, BigUint>> {
    (0..n).map(|r| Ok((r, count_orbits_formula(n, k, r)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(n: u64, k: u64, r: u64) -> u64 {
        u64::try_from(count_orbits_formula(n, k, r).unwrap()).unwrap()
    }

    fn occ(v: &[u32]) -> OrbitLabel {
        OrbitLabel::new(v.to_vec()).unwrap()
    }

    #[test]
    fn occupancy() {
        assert_eq!(orbit_of(3, 3, &[0, 1, 2]).unwrap().occupancy, vec![1, 1, 1]);
        assert_eq!(orbit_of(3, 3, &[0, 0, 0]).unwrap().occupancy, vec![3, 0, 0]);
        assert_eq!(orbit_of(2, 4, &[1, 0, 1, 0]).unwrap().occupancy, vec![2, 2]);
        assert!(matches!(
            orbit_of(3, 2, &[0, 3]),
            Err(Error::EntryOutOfRange { entry: 3, modulus: 3 })
        ));
        assert_eq!(all_orbits(3, 3).len(), 10);
        assert_eq!(occ(&[1, 2, 0]).negate().occupancy, vec![1, 0, 2]);
        assert_eq!(occ(&[1, 1, 1]).size(), BigUint::from(6u32));
    }

    #[test]
    fn weights_and_orbits() {
        let l = occ(&[0, 1, 2]);
        assert_eq!(l.to_weight(), Weight::from([1, 2]));
        assert_eq!(OrbitLabel::from_weight(3, 3, &Weight::from([1, 2])).unwrap(), l);
    }

    #[test]
    fn triple_counts() {
        let nine = occ(&[1, 1, 1]);
        assert_eq!(count_triple_orbits(&nine, &nine, &nine).unwrap(), 3);
        for a in [occ(&[3, 0, 0]), occ(&[0, 3, 0]), occ(&[0, 0, 3])] {
            assert_eq!(count_triple_orbits(&a, &nine, &nine).unwrap(), 1);
        }
        let zero = occ(&[3, 0, 0]);
        assert_eq!(count_triple_orbits(&zero, &zero, &zero).unwrap(), 1);
        assert!(count_triple_orbits(&zero, &occ(&[1, 1]), &zero).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(p_admissible(3, 3, 1, 4));
        assert!(p_admissible(1, 1, 1, 2));
        assert!(!p_admissible(1, 2, 3, 4));
        assert!(!p_admissible(2, 2, 2, 4));
    }

    #[test]
    fn ramanujan() {
        for r in -3..10 {
            assert_eq!(ramanujan_sum(1, r), 1);
        }
        for (d, phi) in [(1, 1), (2, 1), (6, 2), (9, 6), (12, 4)] {
            assert_eq!(ramanujan_sum(d, 0), phi);
        }
        assert_eq!(ramanujan_sum(2, 1), -1);
        assert_eq!(ramanujan_sum(6, 3), -2);
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(formula(3, 3, 0), 4);
        let total: u64 = (0..3).map(|r| formula(3, 3, r)).sum();
        assert_eq!(total, 10);
        assert_eq!(count_orbits_bruteforce(2, 3, 1).unwrap(), 2);
        assert_eq!(bounded_partitions(3, 4, 0), 1);
        assert_eq!(bounded_partitions(2, 2, 2), 2);
        assert_eq!(bounded_partitions(0, 3, 1), 0);
    }
}
