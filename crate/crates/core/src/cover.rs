//! Fusion algebras covered by partitions of finite abelian groups.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cartan::{root_system, Weight};
use crate::error::{Error, Result};
use crate::fusion::{build_fusion_algebra, FusionTable};

pub type Element = Vec<u32>;

/// `Z_{m_1} × … × Z_{m_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub factors: Vec<u32>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.iter().any(|&m| m < 1) {
            return Err(Error::InvalidPartition("cyclic factors must have order ≥ 1".into()));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn elementary_2(k: usize) -> Self {
        FiniteAbelianGroup { factors: vec![2; k] }
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&m| u64::from(m)).product()
    }

    pub fn zero(&self) -> Element {
        vec![0; self.factors.len()]
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.factors.len() && g.iter().zip(&self.factors).all(|(x, m)| x < m)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![Vec::new()];
        for &m in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |x| {
                        let mut e = prefix.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct PartitionDoc {
    factors: Vec<u32>,
    blocks: Vec<Vec<Element>>,
}

/// Blocks `P_0 = {0}, P_1, …` partitioning a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PartitionDoc", try_from = "PartitionDoc")]
pub struct GroupPartition {
    group: FiniteAbelianGroup,
    blocks: Vec<Vec<Element>>,
    block_of: BTreeMap<Element, usize>,
}

impl From<GroupPartition> for PartitionDoc {
    fn from(p: GroupPartition) -> Self {
        PartitionDoc {
            factors: p.group.factors,
            blocks: p.blocks,
        }
    }
}

impl TryFrom<PartitionDoc> for GroupPartition {
    type Error = Error;

    fn try_from(doc: PartitionDoc) -> Result<Self> {
        GroupPartition::new(FiniteAbelianGroup::new(doc.factors)?, doc.blocks)
    }
}

impl GroupPartition {
    pub fn new(group: FiniteAbelianGroup, blocks: Vec<Vec<Element>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPartition(msg));
        if blocks.first() != Some(&vec![group.zero()]) {
            return bad("the first block must be {0}".into());
        }
        let mut block_of = BTreeMap::new();
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return bad(format!("block {i} is empty"));
            }
            for g in block {
                if !group.contains(g) {
                    return bad(format!("{g:?} is not an element of Z{:?}", group.factors));
                }
                if block_of.insert(g.clone(), i).is_some() {
                    return bad(format!("{g:?} appears twice"));
                }
            }
        }
        if block_of.len() as u64 != group.order() {
            return bad(format!("blocks cover {} of {} elements", block_of.len(), group.order()));
        }
        Ok(GroupPartition {
            group,
            blocks,
            block_of,
        })
    }

    /// Every element in its own block.
    pub fn singletons(group: FiniteAbelianGroup) -> Self {
        let blocks = group.elements().into_iter().map(|g| vec![g]).collect();
        GroupPartition::new(group, blocks).expect("singletons partition the group")
    }

    /// Blocks of `Z_2^k` by number of nonzero coordinates.
    pub fn hamming(k: usize) -> Self {
        let group = FiniteAbelianGroup::elementary_2(k);
        let mut blocks = vec![Vec::new(); k + 1];
        for g in group.elements() {
            blocks[g.iter().sum::<u32>() as usize].push(g);
        }
        GroupPartition::new(group, blocks).expect("Hamming classes partition Z_2^k")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, g: &[u32]) -> Option<usize> {
        self.block_of.get(g).copied()
    }

    /// `T(i,j)`: blocks hit by sums `a + b` with `a ∈ P_i`, `b ∈ P_j`.
    pub fn block_product(&self, i: usize, j: usize) -> Result<BTreeSet<usize>> {
        for x in [i, j] {
            if x >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    rank: self.len(),
                });
            }
        }
        let mut out = BTreeSet::new();
        for a in &self.blocks[i] {
            for b in &self.blocks[j] {
                out.insert(self.block_of[&self.group.add(a, b)]);
            }
        }
        Ok(out)
    }

    /// The induced algebra `P_i * P_j = Σ_{l ∈ T(i,j)} P_l`.
    pub fn induced_table(&self) -> FusionTable {
        let n = self.len();
        let mut table = FusionTable::new(n);
        for i in 0..n {
            for j in i..n {
                let prod = self.block_product(i, j).expect("indices in range");
                table.set_symmetric(i, j, prod.into_iter().map(|l| (l, 1)).collect());
            }
        }
        table
    }

    /// Associativity of the induced algebra over the rationals.
    pub fn is_associative(&self) -> bool {
        let t = self.induced_table();
        let n = self.len();
        let apply = |x: &[u64], c: usize| {
            let mut out = vec![0u64; n];
            for (d, &m) in x.iter().enumerate().filter(|e| *e.1 > 0) {
                for (&e, &v) in t.product(d, c) {
                    out[e] += m * v;
                }
            }
            out
        };
        let basis = |i: usize| {
            let mut v = vec![0u64; n];
            v[i] = 1;
            v
        };
        for a in 0..n {
            for b in 0..n {
                let ab = apply(&basis(a), b);
                for c in 0..n {
                    let left = apply(&ab, c);
                    let bc = apply(&basis(b), c);
                    let mut right = vec![0u64; n];
                    for (d, &m) in bc.iter().enumerate().filter(|e| *e.1 > 0) {
                        for (&e, &v) in t.product(a, d) {
                            right[e] += m * v;
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A partition together with `bijection[fusion label] = block index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub partition: GroupPartition,
    pub bijection: Vec<usize>,
}

/// Whether the partition algebra is isomorphic to `table` under the bijection.
pub fn verify_cover(partition: &GroupPartition, table: &FusionTable, bijection: &[usize]) -> Result<bool> {
    let n = table.size();
    for a in 0..n {
        for b in 0..n {
            for (&c, &value) in table.product(a, b) {
                if value > 1 {
                    return Err(Error::UnsupportedCoefficient { a, b, c, value });
                }
            }
        }
    }
    if bijection.len() != n || partition.len() != n {
        return Err(Error::InvalidBijection(format!(
            "{} labels, {} blocks, bijection of length {}",
            n,
            partition.len(),
            bijection.len()
        )));
    }
    let mut seen = vec![false; n];
    for &b in bijection {
        if b >= n || std::mem::replace(&mut seen[b], true) {
            return Err(Error::InvalidBijection(format!("{bijection:?} is not a permutation")));
        }
    }
    if bijection[0] != 0 {
        return Err(Error::InvalidBijection("the identity label must map to P_0".into()));
    }
    for a in 0..n {
        for b in a..n {
            let image: BTreeSet<usize> = table.product(a, b).keys().map(|&c| bijection[c]).collect();
            if image != partition.block_product(bijection[a], bijection[b])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub const DEFAULT_MAX_SL2_COVER_LEVEL: u32 = 10;

/// The Hamming partition of `Z_2^k` checked against `F(sl2, k)`, with the
/// block of weight `i` matched to the Dynkin label `i`.
pub fn sl2_cover(k: u32) -> Result<(GroupPartition, bool)> {
    if k > DEFAULT_MAX_SL2_COVER_LEVEL {
        return Err(Error::InvalidLevel(i64::from(k)));
    }
    let partition = GroupPartition::hamming(k as usize);
    let a1 = root_system("A1")?;
    let fa = build_fusion_algebra(&a1, i64::from(k))?;
    debug_assert!(fa
        .basis()
        .iter()
        .enumerate()
        .all(|(i, w)| *w == Weight::from([i as i64])));
    let bijection: Vec<usize> = (0..=k as usize).collect();
    let ok = verify_cover(&partition, &fa.to_table(), &bijection)?;
    Ok((partition, ok))
}

/// Fusion rules of the `W_3(1,1)` model, as tabulated.
pub fn w3_fixture() -> FusionTable {
    crate::fixtures::w3_table()
}
