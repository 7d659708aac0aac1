//! Exhaustive generators.
//!
//! Trees come out in lexicographic order of their codes. Because `'(' < '.'`
//! and the closing parentheses are forced, that order is the order of the
//! node/empty decisions taken slot by slot in preorder, trying a node first.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::bijection::phi_left;
use crate::fish::{Fish, Growth};
use crate::ternary::{Child, TernaryTree};

/// How to produce all fish of a size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FishMethod {
    /// Image of the left ternary trees under the left-tree bijection.
    ViaLeftTrees,
    /// Closure of the head under the three growth moves.
    GrowthOracle,
}

struct TreeWalker<'a, F: FnMut(&TernaryTree)> {
    nodes: Vec<[Option<u32>; 3]>,
    /// Pending slots, next slot on top: (parent, child position, abscissa).
    pending: Vec<(Option<usize>, Child, i64)>,
    /// Pending slots that may still hold a node.
    usable: usize,
    left_only: bool,
    visit: &'a mut F,
}

impl<F: FnMut(&TernaryTree)> TreeWalker<'_, F> {
    fn usable(&self, abscissa: i64) -> bool {
        !self.left_only || abscissa >= 0
    }

    fn run(&mut self, remaining: usize) {
        let Some((parent, which, alpha)) = self.pending.pop() else {
            if remaining == 0 {
                let tree = TernaryTree::from_raw(std::mem::take(&mut self.nodes));
                (self.visit)(&tree);
                self.nodes = tree.into_raw();
            }
            return;
        };
        let usable = self.usable(alpha);
        if usable {
            self.usable -= 1;
        }

        if usable && remaining > 0 {
            let id = self.nodes.len();
            self.nodes.push([None; 3]);
            if let Some(p) = parent {
                self.nodes[p][which as usize] = Some(id as u32);
            }
            for c in [Child::Right, Child::Middle, Child::Left] {
                let a = alpha + c.abscissa_step();
                if self.usable(a) {
                    self.usable += 1;
                }
                self.pending.push((Some(id), c, a));
            }
            self.run(remaining - 1);
            for _ in 0..3 {
                let (_, _, a) = self.pending.pop().unwrap();
                if self.usable(a) {
                    self.usable -= 1;
                }
            }
            if let Some(p) = parent {
                self.nodes[p][which as usize] = None;
            }
            self.nodes.pop();
        }

        // Leaving the slot empty only makes sense if another slot can still
        // take the remaining nodes.
        if remaining == 0 || self.usable > 0 {
            self.run(remaining);
        }

        if usable {
            self.usable += 1;
        }
        self.pending.push((parent, which, alpha));
    }
}

fn walk_trees(n: usize, left_only: bool, mut visit: impl FnMut(&TernaryTree)) {
    let mut walker = TreeWalker {
        nodes: Vec::with_capacity(n),
        pending: vec![(None, Child::Middle, 0)],
        usable: 1,
        left_only,
        visit: &mut visit,
    };
    walker.run(n);
}

/// Call `visit` on every ternary tree with `n` nodes, in code order.
pub fn for_each_ternary(n: usize, visit: impl FnMut(&TernaryTree)) {
    walk_trees(n, false, visit);
}

/// Call `visit` on every left ternary tree with `n` nodes, in code order.
pub fn for_each_left(n: usize, visit: impl FnMut(&TernaryTree)) {
    walk_trees(n, true, visit);
}

pub fn gen_ternary(n: usize) -> Vec<TernaryTree> {
    let mut out = Vec::new();
    for_each_ternary(n, |t| out.push(t.clone()));
    out
}

pub fn gen_left(n: usize) -> Vec<TernaryTree> {
    let mut out = Vec::new();
    for_each_left(n, |t| out.push(t.clone()));
    out
}

/// All fish of size `n`. Via left trees the order follows the trees; the
/// oracle returns fish sorted by canonical code.
pub fn gen_fish(n: usize, method: FishMethod) -> Vec<Fish> {
    if n == 0 {
        return Vec::new();
    }
    match method {
        FishMethod::ViaLeftTrees => gen_left(n)
            .par_iter()
            .map(|t| phi_left(t).expect("generated trees are left trees"))
            .collect(),
        FishMethod::GrowthOracle => {
            let mut level = vec![Fish::new_head()];
            for _ in 1..n {
                level = next_level(&level);
            }
            level.sort_by_cached_key(Fish::canonical_code);
            level
        }
    }
}

/// All fish one size larger than the fish in `level`, which must contain
/// every fish of its size.
fn next_level(level: &[Fish]) -> Vec<Fish> {
    let grown: Vec<Fish> = level
        .par_iter()
        .flat_map_iter(|f| {
            f.growth_moves()
                .into_iter()
                .filter(|g| !matches!(g, Growth::Double(..)))
                .map(move |g| f.grow(g).expect("listed moves are legal").0)
        })
        .collect();
    let mut seen: HashSet<Fish> = HashSet::with_capacity(grown.len());
    let mut frontier: Vec<Fish> = grown
        .into_iter()
        .filter(|f| seen.insert(f.clone()))
        .collect();
    let mut all = frontier.clone();
    // Double gluings keep the size, so close the level under them.
    while !frontier.is_empty() {
        let doubled: Vec<Fish> = frontier
            .par_iter()
            .flat_map_iter(|f| {
                f.growth_moves()
                    .into_iter()
                    .filter(|g| matches!(g, Growth::Double(..)))
                    .map(move |g| f.grow(g).expect("listed moves are legal").0)
            })
            .collect();
        frontier = doubled
            .into_iter()
            .filter(|f| seen.insert(f.clone()))
            .collect();
        all.extend(frontier.iter().cloned());
    }
    all
}
