//! Bijections between fish and ternary trees.
//!
//! * [`phi`] / [`phi_inv`]: ternary trees of size n ↔ fish of size n with a
//!   marked descending strip.
//! * [`phi_left`] / [`phi_left_inv`]: left ternary trees ↔ fish (the mark is
//!   always the jaw).
//! * [`tails_to_pair`] / [`pair_to_tailed_fish`]: fish with a marked tail ↔
//!   ordered pairs of trees with n − 1 nodes in total.
//! * [`symmetric_to_pair`] / [`pair_to_symmetric`]: symmetric fish of size
//!   2n + 1 ↔ ordered pairs of trees with n nodes in total.

mod build;
mod extract;

pub use build::{build_fish, build_fish_in_order};
pub use extract::{stem_tree, stem_tree_rooted, topmost_stem, StemMap};

use crate::error::{Error, Result};
use crate::fish::{CellId, Fish, Orientation, StripRef};
use crate::stem::StemTree;
use crate::ternary::{Child, Dir, TernaryTree};

/// A fish with one of its descending strips marked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedFish {
    pub fish: Fish,
    pub mark: StripRef,
}

impl MarkedFish {
    pub fn new(fish: Fish, mark: StripRef) -> Result<MarkedFish> {
        topmost_stem(&fish, &mark)?;
        Ok(MarkedFish { fish, mark })
    }

    /// Mark the `index`-th descending strip in canonical order.
    pub fn from_index(fish: Fish, index: usize) -> Result<MarkedFish> {
        let mut strips = fish.strips(Orientation::Descending);
        let count = strips.len();
        if index >= count {
            return Err(Error::BadStripIndex { index, count });
        }
        let mark = strips.swap_remove(index);
        Ok(MarkedFish { fish, mark })
    }

    pub fn mark_index(&self) -> usize {
        self.fish
            .strip_index(&self.mark)
            .expect("the mark is a strip of the fish")
    }

    /// Every marking of `fish`.
    pub fn all(fish: &Fish) -> Vec<MarkedFish> {
        fish.strips(Orientation::Descending)
            .into_iter()
            .map(|mark| MarkedFish {
                fish: fish.clone(),
                mark,
            })
            .collect()
    }
}

/// An ordered pair of possibly empty ternary trees.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreePair {
    pub first: TernaryTree,
    pub second: TernaryTree,
}

impl TreePair {
    pub fn new(first: TernaryTree, second: TernaryTree) -> TreePair {
        TreePair { first, second }
    }

    /// A pair whose total node count must be `total`.
    pub fn with_total(first: TernaryTree, second: TernaryTree, total: usize) -> Result<TreePair> {
        let found = first.len() + second.len();
        if found != total {
            return Err(Error::BadPairTotal {
                expected: total,
                found,
            });
        }
        Ok(TreePair { first, second })
    }

    pub fn total(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn swap(&self) -> TreePair {
        TreePair {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }
}

/// Label `tree` from an E root, build its fish and mark the descending
/// strip through the root's cell.
pub fn phi(tree: &TernaryTree) -> Result<MarkedFish> {
    let stem = StemTree::from_ternary(tree, Dir::E)?;
    let (fish, cells) = build_fish(&stem)?;
    let mark = fish.strip_of(cells[0], Orientation::Descending);
    Ok(MarkedFish { fish, mark })
}

pub fn phi_inv(marked: &MarkedFish) -> Result<TernaryTree> {
    stem_tree(&marked.fish, &marked.mark)?.tree.order_children()
}

pub fn phi_left(tree: &TernaryTree) -> Result<Fish> {
    tree.check_left()?;
    let marked = phi(tree)?;
    debug_assert_eq!(marked.mark, marked.fish.jaw());
    Ok(marked.fish)
}

pub fn phi_left_inv(fish: &Fish) -> Result<TernaryTree> {
    let tree = phi_inv(&MarkedFish {
        fish: fish.clone(),
        mark: fish.jaw(),
    })?;
    debug_assert!(tree.is_left_tree());
    Ok(tree)
}

/// Split the stem tree rooted at tail `t` (root label S) into its middle
/// and right subtrees.
pub fn tails_to_pair(fish: &Fish, t: CellId) -> Result<TreePair> {
    fish.check_cell(t)?;
    if !fish.cell(t).is_tail() {
        return Err(Error::NotATail(t));
    }
    let tree = stem_tree_rooted(fish, t, Dir::S)?.tree.order_children()?;
    debug_assert!(tree.child(0, Child::Left).is_none());
    Ok(TreePair {
        first: tree.subtree(tree.child(0, Child::Middle)),
        second: tree.subtree(tree.child(0, Child::Right)),
    })
}

/// Inverse of [`tails_to_pair`]: returns the fish and its marked tail.
pub fn pair_to_tailed_fish(pair: &TreePair) -> Result<(Fish, CellId)> {
    let tree = TernaryTree::join(&TernaryTree::empty(), &pair.first, &pair.second);
    let stem = StemTree::from_ternary(&tree, Dir::S)?;
    let (fish, cells) = build_fish(&stem)?;
    Ok((fish, cells[0]))
}

/// Last cell on the horizontal axis of a symmetric fish.
pub fn axis_terminal(fish: &Fish) -> CellId {
    let mut cur = fish.head();
    loop {
        let cell = fish.cell(cur);
        let (Some(a), Some(b)) = (cell.ru(), cell.rl()) else {
            return cur;
        };
        match fish.cell(a).rl() {
            Some(d) if fish.cell(b).ru() == Some(d) => cur = d,
            _ => return cur,
        }
    }
}

/// Symmetric fish with an odd number of tails go to `(T, ∅)`; those with an
/// even number go to pairs with a nonempty second tree.
pub fn symmetric_to_pair(fish: &Fish) -> Result<TreePair> {
    if !fish.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let t = axis_terminal(fish);
    if fish.cell(t).is_tail() {
        let pair = tails_to_pair(fish, t)?;
        debug_assert_eq!(pair.first, pair.second);
        return Ok(TreePair {
            first: pair.first,
            second: TernaryTree::empty(),
        });
    }
    let map = stem_tree_rooted(fish, t, Dir::S)?;
    let side = |d: Dir| -> Result<TernaryTree> {
        match map.tree.node(0).child(d) {
            None => Ok(TernaryTree::empty()),
            Some(c) => map.tree.subtree(c).order_children(),
        }
    };
    let pair = TreePair {
        first: side(Dir::S)?,
        second: side(Dir::E)?,
    };
    debug_assert!(!pair.second.is_empty());
    Ok(pair)
}

pub fn pair_to_symmetric(pair: &TreePair) -> Result<Fish> {
    if pair.second.is_empty() {
        let doubled = TreePair {
            first: pair.first.clone(),
            second: pair.first.clone(),
        };
        return Ok(pair_to_tailed_fish(&doubled)?.0);
    }
    let south = if pair.first.is_empty() {
        None
    } else {
        Some(StemTree::from_ternary(&pair.first, Dir::S)?)
    };
    let west = south.as_ref().map(StemTree::reflect);
    let east = StemTree::from_ternary(&pair.second, Dir::E)?;
    let north = east.reflect();
    let tree = StemTree::with_root(
        Dir::S,
        [Some(&north), Some(&east), south.as_ref(), west.as_ref()],
    )?;
    Ok(build_fish(&tree)?.0)
}
