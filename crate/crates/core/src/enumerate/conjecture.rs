//! Comparing joint fish statistics with joint left-tree statistics.
//!
//! Fish side: (size, fin length, tails, ascending strips, descending
//! strips). Tree side: (nodes, core size, right branches, even-abscissa
//! nodes, odd-abscissa nodes). Each [`Reading`] fixes how the two tuples are
//! lined up; a reading is EQUAL at `n` when both multisets coincide.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use super::census::{census_with, CensusOptions, Family, Statistic};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    /// Offsets as stated: `i` ascending strips against `i + 1` non-root
    /// even-abscissa nodes, everything else unshifted.
    Verbatim,
    /// No offsets at all.
    Raw,
    /// Fin and tails shifted down by one, strip offsets taken from the
    /// left-tree bijection (ascending = even, descending = odd + 1), right
    /// branches counted as right edges.
    AlignedEdges,
    /// As `AlignedEdges`, with right branches counted as maximal chains of
    /// right edges.
    AlignedChains,
}

impl Reading {
    pub const ALL: [Reading; 4] = [
        Reading::Verbatim,
        Reading::Raw,
        Reading::AlignedEdges,
        Reading::AlignedChains,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reading::Verbatim => "verbatim",
            Reading::Raw => "raw",
            Reading::AlignedEdges => "aligned-edges",
            Reading::AlignedChains => "aligned-chains",
        }
    }

    fn tree_branch_statistic(self) -> Statistic {
        match self {
            Reading::AlignedChains => Statistic::RightChains,
            _ => Statistic::RightBranches,
        }
    }

    /// Fish tuple (n, fin, tails, asc, desc) in the common coordinates.
    fn fish_key(self, k: &[i64]) -> Vec<i64> {
        match self {
            Reading::Verbatim | Reading::Raw => k.to_vec(),
            Reading::AlignedEdges | Reading::AlignedChains => {
                vec![k[0], k[1] - 1, k[2] - 1, k[3], k[4] - 1]
            }
        }
    }

    /// Tree tuple (n, core, branches, even, odd) in the common coordinates.
    fn tree_key(self, k: &[i64]) -> Vec<i64> {
        match self {
            // i + 1 = even − 1 non-root nodes, so i = even − 2.
            Reading::Verbatim => vec![k[0], k[1], k[2], k[3] - 2, k[4]],
            Reading::Raw | Reading::AlignedEdges | Reading::AlignedChains => k.to_vec(),
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffResult {
    Equal,
    /// Smallest tuple whose multiplicities differ.
    Differ {
        tuple: Vec<i64>,
        fish: BigUint,
        trees: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureDiff {
    pub n: usize,
    pub reading: Reading,
    pub fish_total: BigUint,
    pub tree_total: BigUint,
    pub result: DiffResult,
}

impl fmt::Display for ConjectureDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} {:<14} fish={} trees={} ",
            self.n,
            self.reading.name(),
            self.fish_total,
            self.tree_total
        )?;
        match &self.result {
            DiffResult::Equal => f.write_str("EQUAL"),
            DiffResult::Differ { tuple, fish, trees } => {
                let t: Vec<String> = tuple.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "DIFF at ({}): fish {} vs trees {}",
                    t.join(", "),
                    fish,
                    trees
                )
            }
        }
    }
}

pub const FISH_STATISTICS: [Statistic; 5] = [
    Statistic::Size,
    Statistic::FinLen,
    Statistic::Tails,
    Statistic::AscStrips,
    Statistic::DescStrips,
];

/// Compare the fish and tree censuses at size `n` under every reading.
pub fn conjecture_diff(n: usize, options: CensusOptions) -> Result<Vec<ConjectureDiff>> {
    let fish = census_with(Family::Fish, n, &FISH_STATISTICS, options)?;
    let mut out = Vec::new();
    for reading in Reading::ALL {
        let tree_stats = [
            Statistic::Nodes,
            Statistic::CoreSize,
            reading.tree_branch_statistic(),
            Statistic::EvenAbscissa,
            Statistic::OddAbscissa,
        ];
        let trees = census_with(Family::LeftTrees, n, &tree_stats, options)?;
        let a = fish.map_keys(|k| reading.fish_key(k));
        let b = trees.map_keys(|k| reading.tree_key(k));
        out.push(ConjectureDiff {
            n,
            reading,
            fish_total: fish.total(),
            tree_total: trees.total(),
            result: first_difference(&a, &b),
        });
    }
    Ok(out)
}

fn first_difference(
    a: &BTreeMap<Vec<i64>, BigUint>,
    b: &BTreeMap<Vec<i64>, BigUint>,
) -> DiffResult {
    let zero = BigUint::default();
    let mut keys: Vec<&Vec<i64>> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        let x = a.get(k).unwrap_or(&zero);
        let y = b.get(k).unwrap_or(&zero);
        if x != y {
            return DiffResult::Differ {
                tuple: k.clone(),
                fish: x.clone(),
                trees: y.clone(),
            };
        }
    }
    DiffResult::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn results(n: usize) -> Vec<(Reading, DiffResult)> {
        conjecture_diff(n, CensusOptions::default())
            .unwrap()
            .into_iter()
            .map(|d| (d.reading, d.result))
            .collect()
    }

    #[test]
    fn single_node() {
        let r = results(1);
        assert_eq!(r[3], (Reading::AlignedChains, DiffResult::Equal));
        assert_eq!(r[2], (Reading::AlignedEdges, DiffResult::Equal));
        // The head has fin length 2 and one tail; the single node has core
        // size 1 and no right edge.
        assert_eq!(
            r[1].1,
            DiffResult::Differ {
                tuple: vec![1, 1, 0, 1, 0],
                fish: BigUint::default(),
                trees: BigUint::from(1u32),
            }
        );
    }

    #[test]
    fn right_edges_diverge_at_five() {
        for n in 1..=4 {
            assert_eq!(results(n)[2].1, DiffResult::Equal, "n = {n}");
        }
        assert!(matches!(results(5)[2].1, DiffResult::Differ { .. }));
        assert_eq!(results(5)[3].1, DiffResult::Equal);
    }
}
