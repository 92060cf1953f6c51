//! Published fusion tables, label numberings and covering partitions.
//!
//! Tables are stored the way they are printed: upper triangular, row `i`
//! listing the products `[i]·[j]` for `j ≥ i` among the table's labels.

use std::collections::BTreeMap;

use crate::cartan::Weight;
use crate::cover::{FiniteAbelianGroup, GroupPartition};
use crate::error::{Error, Result};
use crate::fusion::FusionTable;

pub struct TableFixture {
    pub name: &'static str,
    pub algebra: &'static str,
    pub level: i64,
    /// Labels that index the rows and columns; all of `P_k^+` unless partial.
    pub labels: &'static [usize],
    pub rows: &'static [&'static [&'static str]],
    /// `weights[i]` is the weight called `[i]`.
    pub weights: &'static [&'static [i64]],
}

/// Parse a product such as `[0]+[1]+2[9]`.
pub fn parse_product(s: &str) -> Result<BTreeMap<usize, u64>> {
    let err = |position: usize, message: &str| Error::Parse {
        input: s.to_string(),
        position,
        message: message.to_string(),
    };
    let mut out = BTreeMap::new();
    let mut offset = 0;
    for term in s.split('+') {
        let t = term.trim();
        let lead = term.len() - term.trim_start().len();
        let open = t.find('[').ok_or_else(|| err(offset + lead, "expected `[`"))?;
        if !t.ends_with(']') {
            return Err(err(offset + lead + t.len(), "expected `]`"));
        }
        let coeff = match &t[..open] {
            "" => 1,
            c => c.parse().map_err(|_| err(offset + lead, "bad coefficient"))?,
        };
        let label = t[open + 1..t.len() - 1]
            .parse()
            .map_err(|_| err(offset + lead + open + 1, "bad label"))?;
        *out.entry(label).or_insert(0) += coeff;
        offset += term.len() + 1;
    }
    Ok(out)
}

impl TableFixture {
    pub fn weight_map(&self) -> Vec<Weight> {
        self.weights.iter().map(|w| Weight::new(w.iter().copied())).collect()
    }

    pub fn is_partial(&self) -> bool {
        self.labels.len() != self.weights.len()
    }

    /// Every printed product `([i], [j], [i]·[j])` with `i ≤ j` in table order.
    pub fn entries(&self) -> Result<Vec<(usize, usize, BTreeMap<usize, u64>)>> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                out.push((self.labels[r], self.labels[r + c], parse_product(cell)?));
            }
        }
        Ok(out)
    }

    /// The full table; only for fixtures that list every label.
    pub fn table(&self) -> Result<FusionTable> {
        let mut t = FusionTable::new(self.weights.len());
        for (i, j, p) in self.entries()? {
            t.set_symmetric(i, j, p);
        }
        Ok(t)
    }
}

pub const A1_LEVEL2: TableFixture = TableFixture {
    name: "A1 level 2",
    algebra: "A1",
    level: 2,
    labels: &[0, 1, 2],
    rows: &[&["[0]", "[1]", "[2]"], &["[0]", "[2]"], &["[0]+[1]"]],
    weights: &[&[0], &[2], &[1]],
};

pub const A1_LEVEL3: TableFixture = TableFixture {
    name: "A1 level 3",
    algebra: "A1",
    level: 3,
    labels: &[0, 1, 2, 3],
    rows: &[
        &["[0]", "[1]", "[2]", "[3]"],
        &["[0]", "[3]", "[2]"],
        &["[0]+[2]", "[1]+[3]"],
        &["[0]+[2]"],
    ],
    weights: &[&[0], &[3], &[2], &[1]],
};

pub const A2_LEVEL2: TableFixture = TableFixture {
    name: "A2 level 2",
    algebra: "A2",
    level: 2,
    labels: &[0, 1, 2, 3, 4, 5],
    rows: &[
        &["[0]", "[1]", "[2]", "[3]", "[4]", "[5]"],
        &["[2]", "[0]", "[4]", "[5]", "[3]"],
        &["[1]", "[5]", "[3]", "[4]"],
        &["[0]+[3]", "[1]+[4]", "[2]+[5]"],
        &["[2]+[5]", "[0]+[3]"],
        &["[1]+[4]"],
    ],
    weights: &[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[0, 1], &[1, 0]],
};

pub const A2_LEVEL3_PARTIAL: TableFixture = TableFixture {
    name: "A2 level 3 (partial)",
    algebra: "A2",
    level: 3,
    labels: &[0, 1, 2, 9],
    rows: &[
        &["[0]", "[1]", "[2]", "[9]"],
        &["[2]", "[0]", "[9]"],
        &["[1]", "[9]"],
        &["[0]+[1]+[2]+2[9]"],
    ],
    weights: &[
        &[0, 0],
        &[3, 0],
        &[0, 3],
        &[1, 0],
        &[2, 1],
        &[0, 2],
        &[2, 0],
        &[1, 2],
        &[0, 1],
        &[1, 1],
    ],
};

pub const B2_LEVEL1: TableFixture = TableFixture {
    name: "B2 level 1",
    algebra: "B2",
    level: 1,
    labels: &[0, 1, 2],
    rows: &[&["[0]", "[1]", "[2]"], &["[0]", "[2]"], &["[0]+[1]"]],
    weights: &[&[0, 0], &[0, 1], &[1, 0]],
};

pub const B2_LEVEL2: TableFixture = TableFixture {
    name: "B2 level 2",
    algebra: "B2",
    level: 2,
    labels: &[0, 1, 2, 3, 4, 5],
    rows: &[
        &["[0]", "[1]", "[2]", "[3]", "[4]", "[5]"],
        &["[0]", "[3]", "[2]", "[4]", "[5]"],
        &["[0]+[4]+[5]", "[1]+[4]+[5]", "[2]+[3]", "[2]+[3]"],
        &["[0]+[4]+[5]", "[2]+[3]", "[2]+[3]"],
        &["[0]+[1]+[5]", "[4]+[5]"],
        &["[0]+[1]+[4]"],
    ],
    weights: &[&[0, 0], &[0, 2], &[1, 0], &[1, 1], &[2, 0], &[0, 1]],
};

/// All published tables that correspond to an affine algebra.
pub const TABLES: [&TableFixture; 6] = [
    &A1_LEVEL2,
    &A1_LEVEL3,
    &A2_LEVEL2,
    &A2_LEVEL3_PARTIAL,
    &B2_LEVEL1,
    &B2_LEVEL2,
];

/// Fixture whose numbering applies to `algebra` at `level`, if any.
pub fn table_for(algebra: &str, level: i64) -> Option<&'static TableFixture> {
    TABLES
        .iter()
        .copied()
        .find(|t| t.algebra.eq_ignore_ascii_case(algebra) && t.level == level)
}

const W3_ROWS: &[&[&str]] = &[
    &["[0]", "[1]", "[2]", "[3]", "[4]", "[5]"],
    &["[0]+[1]", "[3]", "[2]+[3]", "[5]", "[4]+[5]"],
    &["[4]", "[5]", "[0]", "[1]"],
    &["[4]+[5]", "[1]", "[0]+[1]"],
    &["[2]", "[3]"],
    &["[2]+[3]"],
];

pub fn w3_table() -> FusionTable {
    let mut t = FusionTable::new(6);
    for (i, row) in W3_ROWS.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            t.set_symmetric(i, i + c, parse_product(cell).expect("fixture parses"));
        }
    }
    t
}

fn partition(factors: &[u32], blocks: &[&[&[u32]]]) -> GroupPartition {
    let group = FiniteAbelianGroup::new(factors.to_vec()).expect("valid group");
    let blocks = blocks.iter().map(|b| b.iter().map(|g| g.to_vec()).collect()).collect();
    GroupPartition::new(group, blocks).expect("fixture partition is valid")
}

/// `Z_2^2` covering the A1 level-2 table; block `i` is `[i]`.
pub fn z2_squared_cover() -> GroupPartition {
    partition(&[2, 2], &[&[&[0, 0]], &[&[1, 1]], &[&[1, 0], &[0, 1]]])
}

/// `Z_2^3` covering the A1 level-3 table; block `i` is `[i]`.
pub fn z2_cubed_cover() -> GroupPartition {
    partition(
        &[2, 2, 2],
        &[
            &[&[0, 0, 0]],
            &[&[1, 1, 1]],
            &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        ],
    )
}

/// `Z_3^2` covering the A2 level-2 table; block `i` is `[i]`.
pub fn z3_squared_cover() -> GroupPartition {
    partition(
        &[3, 3],
        &[
            &[&[0, 0]],
            &[&[1, 1]],
            &[&[2, 2]],
            &[&[1, 2], &[2, 1]],
            &[&[2, 0], &[0, 2]],
            &[&[1, 0], &[0, 1]],
        ],
    )
}

/// `W_3(1,1)` label `[i]` is covered by block `W3_BIJECTION[i]` of
/// `z3_squared_cover()`.
pub const W3_BIJECTION: [usize; 6] = [0, 3, 1, 4, 2, 5];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_parse() {
        let p = parse_product("[0]+[1]+[2]+2[9]").unwrap();
        assert_eq!(p, BTreeMap::from([(0, 1), (1, 1), (2, 1), (9, 2)]));
        assert!(matches!(
            parse_product("[0]+x[1]"),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(parse_product("[0").is_err());
    }

    #[test]
    fn fixtures_are_complete() {
        for t in TABLES {
            let n = t.labels.len();
            assert_eq!(t.rows.len(), n, "{}", t.name);
            for (r, row) in t.rows.iter().enumerate() {
                assert_eq!(row.len(), n - r, "{}", t.name);
            }
            assert_eq!(t.entries().unwrap().len(), n * (n + 1) / 2);
        }
        assert!(A2_LEVEL3_PARTIAL.is_partial());
        assert!(!B2_LEVEL2.is_partial());
    }

    #[test]
    fn w3_subgroup() {
        let t = w3_table();
        assert_eq!(t.coeff(1, 1, 0), 1);
        assert_eq!(t.coeff(1, 1, 1), 1);
        assert_eq!(t.product(2, 4), &BTreeMap::from([(0, 1)]));
        for a in [0, 2, 4] {
            for b in [0, 2, 4] {
                assert!(t.product(a, b).keys().all(|c| [0, 2, 4].contains(c)));
            }
        }
    }
}
