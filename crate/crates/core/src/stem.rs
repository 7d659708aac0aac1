//! Direction-labelled rooted trees on stem cells.
//!
//! A [`StemTree`] is unordered: each node has at most one child per compass
//! direction, and a child's label is the direction in which it hangs. The
//! root label is free (E for marked-strip constructions, S for the tail and
//! symmetric constructions). Nodes are kept in breadth-first order with
//! children visited N, E, S, W, which makes derived equality structural.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ternary::{Child, Dir, TernaryTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StemNode {
    pub label: Dir,
    /// Child hanging in each direction, indexed by [`Dir::index`].
    pub children: [Option<usize>; 4],
}

impl StemNode {
    pub fn child(&self, dir: Dir) -> Option<usize> {
        self.children[dir.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StemTree {
    nodes: Vec<StemNode>,
}

impl StemTree {
    /// Build from an adjacency description in any node order; `root` is the
    /// root index and `children[i]` lists `(direction, node)` pairs. Returns
    /// the canonical tree and the old-index → new-index map.
    pub fn from_adjacency(
        root: usize,
        root_label: Dir,
        children: &[Vec<(Dir, usize)>],
    ) -> (StemTree, Vec<usize>) {
        let mut new_id = vec![usize::MAX; children.len()];
        let mut order = vec![root];
        new_id[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut nodes = vec![StemNode {
            label: root_label,
            children: [None; 4],
        }];
        while let Some(old) = queue.pop_front() {
            let mut kids = children[old].clone();
            kids.sort_by_key(|(d, _)| d.index());
            for (dir, kid) in kids {
                let id = order.len();
                new_id[kid] = id;
                order.push(kid);
                nodes.push(StemNode {
                    label: dir,
                    children: [None; 4],
                });
                nodes[new_id[old]].children[dir.index()] = Some(id);
                queue.push_back(kid);
            }
        }
        (StemTree { nodes }, new_id)
    }

    /// Label a ternary tree top-down from `root_label` and forget the order
    /// of children.
    pub fn from_ternary(tree: &TernaryTree, root_label: Dir) -> Result<StemTree> {
        let labels = tree.labels_from(root_label)?;
        let children: Vec<Vec<(Dir, usize)>> = (0..tree.len())
            .map(|n| {
                tree.children(n)
                    .into_iter()
                    .flatten()
                    .map(|c| (labels[c], c))
                    .collect()
            })
            .collect();
        Ok(StemTree::from_adjacency(0, root_label, &children).0)
    }

    /// A root labelled `root_label` with the given subtrees hanging in the
    /// four directions. Each subtree's root label must equal its direction.
    /// Unlike ordinary nodes, this root may carry children in all four
    /// directions.
    pub fn with_root(root_label: Dir, subtrees: [Option<&StemTree>; 4]) -> Result<StemTree> {
        let mut children: Vec<Vec<(Dir, usize)>> = vec![Vec::new()];
        for dir in Dir::ALL {
            let Some(sub) = subtrees[dir.index()] else {
                continue;
            };
            if sub.root_label() != dir {
                return Err(Error::InconsistentLabels(format!(
                    "subtree in direction {dir} has root label {}",
                    sub.root_label()
                )));
            }
            let offset = children.len();
            children[0].push((dir, offset));
            for node in &sub.nodes {
                children.push(
                    Dir::ALL
                        .into_iter()
                        .filter_map(|d| node.child(d).map(|c| (d, c + offset)))
                        .collect(),
                );
            }
        }
        Ok(StemTree::from_adjacency(0, root_label, &children).0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root_label(&self) -> Dir {
        self.nodes[0].label
    }

    pub fn node(&self, id: usize) -> &StemNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[StemNode] {
        &self.nodes
    }

    /// The subtree rooted at `node`, keeping its label as root label.
    pub fn subtree(&self, node: usize) -> StemTree {
        let mut order = vec![node];
        let mut i = 0;
        while i < order.len() {
            order.extend(self.nodes[order[i]].children.iter().flatten());
            i += 1;
        }
        let mut local = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            local[old] = new;
        }
        let children: Vec<Vec<(Dir, usize)>> = order
            .iter()
            .map(|&old| {
                Dir::ALL
                    .into_iter()
                    .filter_map(|d| self.nodes[old].child(d).map(|c| (d, local[c])))
                    .collect()
            })
            .collect();
        StemTree::from_adjacency(0, self.nodes[node].label, &children).0
    }

    /// Reflect every label (N↔E, S↔W), as horizontal reflection of the fish
    /// does.
    pub fn reflect(&self) -> StemTree {
        let children: Vec<Vec<(Dir, usize)>> = self
            .nodes
            .iter()
            .map(|node| {
                Dir::ALL
                    .into_iter()
                    .filter_map(|d| node.child(d).map(|c| (d.reflect(), c)))
                    .collect()
            })
            .collect();
        StemTree::from_adjacency(0, self.root_label().reflect(), &children).0
    }

    /// Check that no non-root node has a child in the direction it came
    /// from.
    pub fn check_consistent(&self) -> Result<()> {
        for (id, node) in self.nodes.iter().enumerate().skip(1) {
            if node.child(node.label.opposite()).is_some() {
                return Err(Error::InconsistentLabels(format!(
                    "node {id} labelled {} has a child labelled {}",
                    node.label,
                    node.label.opposite()
                )));
            }
        }
        Ok(())
    }

    /// Place every child in the left, middle or right slot determined by
    /// its label and its parent's label.
    pub fn order_children(&self) -> Result<TernaryTree> {
        self.order_from(0)
    }

    fn order_from(&self, node: usize) -> Result<TernaryTree> {
        let n = &self.nodes[node];
        let mut slots = [
            TernaryTree::empty(),
            TernaryTree::empty(),
            TernaryTree::empty(),
        ];
        for dir in Dir::ALL {
            let Some(kid) = n.child(dir) else {
                continue;
            };
            let position = n.label.child_position(dir).ok_or_else(|| {
                Error::InconsistentLabels(format!(
                    "a node labelled {} cannot have a child labelled {dir}",
                    n.label
                ))
            })?;
            slots[position as usize] = self.order_from(kid)?;
        }
        Ok(TernaryTree::join(&slots[0], &slots[1], &slots[2]))
    }
}

/// Ternary slot of `child` under `parent`, for callers that only need the
/// rule itself.
pub fn slot_for(parent: Dir, child: Dir) -> Option<Child> {
    parent.child_position(child)
}
