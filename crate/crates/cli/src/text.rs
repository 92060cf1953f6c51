use std::collections::BTreeMap;

use fusionkit::fusion::FusionTable;

/// `[0]+[1]+2[9]`, in label order.
pub fn product_expr(p: &BTreeMap<usize, u64>) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|(c, n)| if *n == 1 { format!("[{c}]") } else { format!("{n}[{c}]") })
        .collect::<Vec<_>>()
        .join("+")
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// The printed layout: a header row of labels, then row `[i]` holding
/// `[i]·[j]` for `j ≥ i` under column `[j]`.
pub fn upper_triangular(table: &FusionTable) -> String {
    let n = table.size();
    let mut rows = Vec::with_capacity(n + 1);
    let mut header = vec!["·".to_string()];
    header.extend((0..n).map(|j| format!("[{j}]")));
    rows.push(header);
    for i in 0..n {
        let mut row = vec![format!("[{i}]")];
        for j in 0..n {
            row.push(if j < i {
                String::new()
            } else {
                product_expr(table.product(i, j))
            });
        }
        rows.push(row);
    }
    aligned(&rows)
}
