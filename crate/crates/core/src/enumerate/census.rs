//! Joint distributions of statistics over a family of objects.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::gen::{gen_fish, gen_left, gen_ternary, FishMethod};
use crate::bijection::MarkedFish;
use crate::error::{Error, Result};
use crate::fish::{Fish, Orientation};
use crate::ternary::TernaryTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Fish,
    LeftTrees,
    Ternary,
    MarkedFish,
    SymmetricFish,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Fish,
        Family::LeftTrees,
        Family::Ternary,
        Family::MarkedFish,
        Family::SymmetricFish,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fish => "fish",
            Family::LeftTrees => "left_trees",
            Family::Ternary => "ternary",
            Family::MarkedFish => "marked_fish",
            Family::SymmetricFish => "symmetric_fish",
        }
    }

    fn is_fish(self) -> bool {
        matches!(
            self,
            Family::Fish | Family::MarkedFish | Family::SymmetricFish
        )
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Family, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistic {
    Size,
    DescStrips,
    AscStrips,
    JawLen,
    Tails,
    BranchCells,
    FinLen,
    Nodes,
    OddAbscissa,
    EvenAbscissa,
    ZeroAbscissa,
    CoreSize,
    RightBranches,
    RightChains,
}

impl Statistic {
    pub const ALL: [Statistic; 14] = [
        Statistic::Size,
        Statistic::DescStrips,
        Statistic::AscStrips,
        Statistic::JawLen,
        Statistic::Tails,
        Statistic::BranchCells,
        Statistic::FinLen,
        Statistic::Nodes,
        Statistic::OddAbscissa,
        Statistic::EvenAbscissa,
        Statistic::ZeroAbscissa,
        Statistic::CoreSize,
        Statistic::RightBranches,
        Statistic::RightChains,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Size => "size",
            Statistic::DescStrips => "descStrips",
            Statistic::AscStrips => "ascStrips",
            Statistic::JawLen => "jawLen",
            Statistic::Tails => "tails",
            Statistic::BranchCells => "branchCells",
            Statistic::FinLen => "finLen",
            Statistic::Nodes => "nodes",
            Statistic::OddAbscissa => "oddAbscissa",
            Statistic::EvenAbscissa => "evenAbscissa",
            Statistic::ZeroAbscissa => "zeroAbscissa",
            Statistic::CoreSize => "coreSize",
            Statistic::RightBranches => "rightBranches",
            Statistic::RightChains => "rightChains",
        }
    }

    pub fn parse(s: &str) -> Result<Statistic> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }

    pub fn is_fish_statistic(self) -> bool {
        matches!(
            self,
            Statistic::Size
                | Statistic::DescStrips
                | Statistic::AscStrips
                | Statistic::JawLen
                | Statistic::Tails
                | Statistic::BranchCells
                | Statistic::FinLen
        )
    }

    pub fn of_fish(self, fish: &Fish) -> i64 {
        let v = match self {
            Statistic::Size => fish.size(),
            Statistic::DescStrips => fish.strip_count(Orientation::Descending),
            Statistic::AscStrips => fish.strip_count(Orientation::Ascending),
            Statistic::JawLen => fish.jaw().len(),
            Statistic::Tails => fish.tails().len(),
            Statistic::BranchCells => fish.branch_cells().len(),
            Statistic::FinLen => fish.fin_length(),
            _ => panic!("{} is not a fish statistic", self.name()),
        };
        v as i64
    }

    /// Tree statistics; all of them are 0 on the empty tree.
    pub fn of_tree(self, tree: &TernaryTree) -> i64 {
        if tree.is_empty() {
            return 0;
        }
        let alpha = || tree.abscissas().expect("nonempty");
        let v = match self {
            Statistic::Nodes => tree.len(),
            Statistic::OddAbscissa => alpha().iter().filter(|a| *a % 2 != 0).count(),
            Statistic::EvenAbscissa => alpha().iter().filter(|a| *a % 2 == 0).count(),
            Statistic::ZeroAbscissa => alpha().iter().filter(|a| **a == 0).count(),
            Statistic::CoreSize => tree.core_size().expect("nonempty"),
            Statistic::RightBranches => tree.right_branch_count().expect("nonempty"),
            Statistic::RightChains => tree.right_chain_count().expect("nonempty"),
            _ => panic!("{} is not a tree statistic", self.name()),
        };
        v as i64
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Statistic> {
        Statistic::parse(s)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub method: FishMethod,
    pub parallel: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            method: FishMethod::ViaLeftTrees,
            parallel: true,
        }
    }
}

/// Multiset of statistic tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub family: Family,
    pub n: usize,
    pub statistics: Vec<Statistic>,
    pub counts: BTreeMap<Vec<i64>, BigUint>,
}

impl Census {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Sum of `weight(key) · count` over all tuples.
    pub fn weighted_sum(&self, weight: impl Fn(&[i64]) -> i64) -> BigUint {
        self.counts
            .iter()
            .map(|(k, c)| c * BigUint::from(u64::try_from(weight(k)).expect("nonnegative weight")))
            .sum()
    }

    /// Apply `f` to every key and merge the counts.
    pub fn map_keys(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> BTreeMap<Vec<i64>, BigUint> {
        let mut out: BTreeMap<Vec<i64>, BigUint> = BTreeMap::new();
        for (k, c) in &self.counts {
            *out.entry(f(k)).or_default() += c;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out: String = self
            .statistics
            .iter()
            .map(|s| s.name())
            .chain(["count"])
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for (k, c) in &self.counts {
            for v in k {
                out.push_str(&v.to_string());
                out.push(',');
            }
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let names: Vec<&str> = self.statistics.iter().map(|s| s.name()).collect();
        let mut out = format!(
            "census {} n={} ({}) total={}\n",
            self.family,
            self.n,
            names.join(", "),
            self.total()
        );
        for (k, c) in &self.counts {
            let key: Vec<String> = k.iter().map(ToString::to_string).collect();
            out.push_str(&format!("({}) {}\n", key.join(", "), c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "n": self.n,
            "statistics": self.statistics.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "total": self.total().to_string(),
            "rows": self.counts.iter().map(|(k, c)| serde_json::json!({
                "key": k,
                "count": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn census(family: Family, n: usize, statistics: &[Statistic]) -> Result<Census> {
    census_with(family, n, statistics, CensusOptions::default())
}

pub fn census_with(
    family: Family,
    n: usize,
    statistics: &[Statistic],
    options: CensusOptions,
) -> Result<Census> {
    if let Some(bad) = statistics
        .iter()
        .find(|s| s.is_fish_statistic() != family.is_fish())
    {
        return Err(Error::StatisticFamilyMismatch {
            stat: bad.name().to_string(),
            family: family.name().to_string(),
        });
    }
    let counts = match family {
        Family::Ternary | Family::LeftTrees => {
            let trees = if family == Family::Ternary {
                gen_ternary(n)
            } else {
                gen_left(n)
            };
            tally(&trees, options.parallel, |t| {
                vec![statistics.iter().map(|s| s.of_tree(t)).collect()]
            })
        }
        Family::Fish | Family::MarkedFish | Family::SymmetricFish => {
            let fish = gen_fish(n, options.method);
            tally(&fish, options.parallel, |f| {
                let copies = match family {
                    Family::MarkedFish => MarkedFish::all(f).len(),
                    Family::SymmetricFish => usize::from(f.is_symmetric()),
                    _ => 1,
                };
                if copies == 0 {
                    return Vec::new();
                }
                let key: Vec<i64> = statistics.iter().map(|s| s.of_fish(f)).collect();
                vec![key; copies]
            })
        }
    };
    Ok(Census {
        family,
        n,
        statistics: statistics.to_vec(),
        counts,
    })
}

/// Count the keys produced by `keys` over all items. The result does not
/// depend on how the work is split.
fn tally<T: Sync>(
    items: &[T],
    parallel: bool,
    keys: impl Fn(&T) -> Vec<Vec<i64>> + Sync,
) -> BTreeMap<Vec<i64>, BigUint> {
    let add = |mut acc: BTreeMap<Vec<i64>, u64>, item: &T| {
        for k in keys(item) {
            *acc.entry(k).or_default() += 1;
        }
        acc
    };
    let merge = |mut a: BTreeMap<Vec<i64>, u64>, b: BTreeMap<Vec<i64>, u64>| {
        for (k, c) in b {
            *a.entry(k).or_default() += c;
        }
        a
    };
    let counts = if parallel {
        items
            .par_iter()
            .fold(BTreeMap::new, add)
            .reduce(BTreeMap::new, merge)
    } else {
        items.iter().fold(BTreeMap::new(), add)
    };
    counts
        .into_iter()
        .map(|(k, c)| (k, BigUint::from(c)))
        .collect()
}
