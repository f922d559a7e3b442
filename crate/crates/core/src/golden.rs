//! Published single-Hurwitz tables, embedded as a versioned CSV file.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hurwitz::connected_single;
use crate::partitions::Partition;
use crate::rational::Q;

const APPENDIX_B_V1: &str = include_str!("../data/appendix_b.v1.csv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCell {
    pub r: u32,
    pub g: u32,
    pub mu: Partition,
    pub value: Q,
}

#[derive(Deserialize)]
struct Row {
    r: u32,
    g: u32,
    mu: String,
    value: String,
}

/// All cells of the embedded tables, in file order.
pub fn appendix_b() -> Result<Vec<GoldenCell>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(APPENDIX_B_V1.as_bytes());
    let mut out = Vec::new();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(|e| Error::Domain(format!("golden data: {e}")))?;
        let parts = row
            .mu
            .split_whitespace()
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(format!("{p}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let value = Q::from_str(&row.value)
            .map_err(|e| Error::Domain(format!("golden value {}: {e}", row.value)))?;
        out.push(GoldenCell {
            r: row.r,
            g: row.g,
            mu: Partition::new(parts)?,
            value,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GoldenComparison {
    pub cell: GoldenCell,
    pub computed: Result<Q>,
}

impl GoldenComparison {
    pub fn matches(&self) -> bool {
        self.computed.as_ref().is_ok_and(|v| *v == self.cell.value)
    }
}

/// Recomputes every cell through the character route.
pub fn compare_appendix_b() -> Result<Vec<GoldenComparison>> {
    let cells = appendix_b()?;
    Ok(cells
        .into_par_iter()
        .map(|cell| {
            let computed = connected_single(cell.g, &cell.mu, cell.r);
            GoldenComparison { cell, computed }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_parses() {
        let cells = appendix_b().unwrap();
        assert_eq!(cells.len(), 79);
        assert_eq!(cells.iter().filter(|c| c.r == 2).count(), 15 + 12 + 10);
        let five = cells
            .iter()
            .find(|c| c.r == 2 && c.g == 2 && c.mu.parts() == [5])
            .unwrap();
        assert_eq!(five.value, crate::rational::q(5975, 144));
    }
}
