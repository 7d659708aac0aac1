//! Ordered ternary trees.
//!
//! Trees are stored as a preorder arena (root at index 0), so two trees are
//! equal exactly when their shapes are. The textual code is
//!
//! ```text
//! tree ::= "." | "(" tree tree tree ")"
//! ```
//!
//! with the children in left, middle, right order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Child position in a ternary tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Child {
    Left,
    Middle,
    Right,
}

impl Child {
    pub const ALL: [Child; 3] = [Child::Left, Child::Middle, Child::Right];

    fn index(self) -> usize {
        self as usize
    }

    /// Change in abscissa when stepping into this child.
    pub fn abscissa_step(self) -> i64 {
        match self {
            Child::Left => 1,
            Child::Middle => 0,
            Child::Right => -1,
        }
    }

    fn letter(self) -> char {
        match self {
            Child::Left => 'L',
            Child::Middle => 'M',
            Child::Right => 'R',
        }
    }
}

/// Compass direction used to label stem cells and tree nodes.
///
/// N and S run along ascending strips (northeast, southwest), E and W along
/// descending strips (southeast, northwest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::N => Dir::S,
            Dir::S => Dir::N,
            Dir::E => Dir::W,
            Dir::W => Dir::E,
        }
    }

    /// Image under reflection in the horizontal axis (N↔E, S↔W).
    pub fn reflect(self) -> Dir {
        match self {
            Dir::N => Dir::E,
            Dir::E => Dir::N,
            Dir::S => Dir::W,
            Dir::W => Dir::S,
        }
    }

    /// Labels of the left, middle and right child of a node labelled `self`.
    pub fn child_labels(self) -> [Dir; 3] {
        match self {
            Dir::E => [Dir::N, Dir::E, Dir::S],
            Dir::N => [Dir::E, Dir::N, Dir::W],
            Dir::W => [Dir::N, Dir::W, Dir::S],
            Dir::S => [Dir::E, Dir::S, Dir::W],
        }
    }

    /// Inverse of [`Dir::child_labels`]: where a child labelled `child`
    /// goes under a parent labelled `self`.
    pub fn child_position(self, child: Dir) -> Option<Child> {
        let labels = self.child_labels();
        Child::ALL.into_iter().find(|c| labels[c.index()] == child)
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dir::N => "N",
            Dir::E => "E",
            Dir::S => "S",
            Dir::W => "W",
        };
        f.write_str(s)
    }
}

/// A possibly empty ordered ternary tree.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryTree {
    nodes: Vec<[Option<u32>; 3]>,
}

impl TernaryTree {
    pub fn empty() -> TernaryTree {
        TernaryTree { nodes: Vec::new() }
    }

    pub fn single() -> TernaryTree {
        TernaryTree {
            nodes: vec![[None; 3]],
        }
    }

    /// A root with the three given subtrees.
    pub fn join(left: &TernaryTree, middle: &TernaryTree, right: &TernaryTree) -> TernaryTree {
        let mut nodes = Vec::with_capacity(1 + left.len() + middle.len() + right.len());
        nodes.push([None; 3]);
        for (pos, sub) in [left, middle, right].into_iter().enumerate() {
            if sub.is_empty() {
                continue;
            }
            let offset = nodes.len() as u32;
            nodes[0][pos] = Some(offset);
            nodes.extend(
                sub.nodes
                    .iter()
                    .map(|kids| kids.map(|k| k.map(|k| k + offset))),
            );
        }
        TernaryTree { nodes }
    }

    /// Wrap a preorder node arena. The caller guarantees preorder with the
    /// root at index 0.
    pub(crate) fn from_raw(nodes: Vec<[Option<u32>; 3]>) -> TernaryTree {
        TernaryTree { nodes }
    }

    pub(crate) fn into_raw(self) -> Vec<[Option<u32>; 3]> {
        self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        (!self.is_empty()).then_some(0)
    }

    pub fn child(&self, node: usize, which: Child) -> Option<usize> {
        self.nodes[node][which.index()].map(|c| c as usize)
    }

    pub fn children(&self, node: usize) -> [Option<usize>; 3] {
        self.nodes[node].map(|c| c.map(|c| c as usize))
    }

    /// The subtree hanging at `node` (the empty tree for `None`).
    pub fn subtree(&self, node: Option<usize>) -> TernaryTree {
        let Some(node) = node else {
            return TernaryTree::empty();
        };
        let mut out = TernaryTree::empty();
        self.copy_into(node, &mut out);
        out
    }

    fn copy_into(&self, node: usize, out: &mut TernaryTree) -> u32 {
        let id = out.nodes.len() as u32;
        out.nodes.push([None; 3]);
        for which in Child::ALL {
            if let Some(c) = self.child(node, which) {
                let cid = self.copy_into(c, out);
                out.nodes[id as usize][which.index()] = Some(cid);
            }
        }
        id
    }

    /// Parent and child position of every node (root: `None`).
    pub fn parents(&self) -> Vec<Option<(usize, Child)>> {
        let mut parents = vec![None; self.len()];
        for node in 0..self.len() {
            for which in Child::ALL {
                if let Some(c) = self.child(node, which) {
                    parents[c] = Some((node, which));
                }
            }
        }
        parents
    }

    /// Root-to-node path as a word over L, M, R; the root is `"root"`.
    pub fn path(&self, node: usize) -> String {
        let parents = self.parents();
        let mut steps = Vec::new();
        let mut cur = node;
        while let Some((p, which)) = parents[cur] {
            steps.push(which.letter());
            cur = p;
        }
        if steps.is_empty() {
            return "root".to_string();
        }
        steps.iter().rev().collect()
    }

    /// Abscissa of every node: root 0, left child +1, right child −1.
    pub fn abscissas(&self) -> Result<Vec<i64>> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let mut alpha = vec![0i64; self.len()];
        // Preorder: parents precede children.
        for node in 0..self.len() {
            for which in Child::ALL {
                if let Some(c) = self.child(node, which) {
                    alpha[c] = alpha[node] + which.abscissa_step();
                }
            }
        }
        Ok(alpha)
    }

    /// First node (in preorder) with negative abscissa, if any.
    pub fn first_negative(&self) -> Option<(usize, i64)> {
        let alpha = self.abscissas().ok()?;
        alpha
            .iter()
            .enumerate()
            .find(|(_, &a)| a < 0)
            .map(|(i, &a)| (i, a))
    }

    /// All abscissas nonnegative. The empty tree counts as a left tree.
    pub fn is_left_tree(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn check_left(&self) -> Result<()> {
        match self.first_negative() {
            None => Ok(()),
            Some((node, abscissa)) => Err(Error::NotLeftTree {
                node: self.path(node),
                abscissa,
            }),
        }
    }

    /// Direction labels with the root labelled `E`.
    pub fn labels(&self) -> Result<Vec<Dir>> {
        self.labels_from(Dir::E)
    }

    /// Direction labels propagated top-down from the given root label.
    pub fn labels_from(&self, root: Dir) -> Result<Vec<Dir>> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let mut labels = vec![root; self.len()];
        for node in 0..self.len() {
            let kids = labels[node].child_labels();
            for which in Child::ALL {
                if let Some(c) = self.child(node, which) {
                    labels[c] = kids[which.index()];
                }
            }
        }
        Ok(labels)
    }

    /// Size of the largest subtree containing the root and using only left
    /// and middle edges.
    pub fn core_size(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let mut stack = vec![0usize];
        let mut size = 0;
        while let Some(node) = stack.pop() {
            size += 1;
            stack.extend(self.child(node, Child::Left));
            stack.extend(self.child(node, Child::Middle));
        }
        Ok(size)
    }

    /// Number of right edges.
    pub fn right_branch_count(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        Ok(self
            .nodes
            .iter()
            .filter(|kids| kids[Child::Right.index()].is_some())
            .count())
    }

    /// Number of maximal chains of consecutive right edges.
    pub fn right_chain_count(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        let parents = self.parents();
        let is_right = |u: usize| matches!(parents[u], Some((_, Child::Right)));
        Ok((0..self.len())
            .filter(|&u| is_right(u) && !parents[u].is_some_and(|(p, _)| is_right(p)))
            .count())
    }

    pub fn code(&self) -> String {
        let mut out = String::with_capacity(3 * self.len() + 1);
        self.write_code(self.root(), &mut out);
        out
    }

    fn write_code(&self, node: Option<usize>, out: &mut String) {
        match node {
            None => out.push('.'),
            Some(n) => {
                out.push('(');
                for which in Child::ALL {
                    self.write_code(self.child(n, which), out);
                }
                out.push(')');
            }
        }
    }

    /// Parse a tree code. The whole input must be consumed.
    pub fn parse(code: &str) -> Result<TernaryTree> {
        let bytes = code.trim().as_bytes();
        let mut tree = TernaryTree::empty();
        let mut pos = 0;
        parse_node(bytes, &mut pos, &mut tree)?;
        if pos != bytes.len() {
            return Err(Error::Parse {
                pos,
                msg: "trailing input after tree".into(),
            });
        }
        Ok(tree)
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn node_json(t: &TernaryTree, node: Option<usize>) -> serde_json::Value {
            match node {
                None => serde_json::Value::Null,
                Some(n) => serde_json::json!({
                    "left": node_json(t, t.child(n, Child::Left)),
                    "middle": node_json(t, t.child(n, Child::Middle)),
                    "right": node_json(t, t.child(n, Child::Right)),
                }),
            }
        }
        node_json(self, self.root())
    }

    /// Depth of every node (root 0).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for node in 0..self.len() {
            for c in self.children(node).into_iter().flatten() {
                depth[c] = depth[node] + 1;
            }
        }
        depth
    }
}

fn parse_node(bytes: &[u8], pos: &mut usize, tree: &mut TernaryTree) -> Result<Option<u32>> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(None)
        }
        Some(b'(') => {
            *pos += 1;
            let id = tree.nodes.len() as u32;
            tree.nodes.push([None; 3]);
            for which in Child::ALL {
                let kid = parse_node(bytes, pos, tree)?;
                tree.nodes[id as usize][which.index()] = kid;
            }
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(Some(id))
                }
                Some(_) => Err(Error::Parse {
                    pos: *pos,
                    msg: "expected `)`".into(),
                }),
                None => Err(Error::Parse {
                    pos: *pos,
                    msg: "unexpected end of input, expected `)`".into(),
                }),
            }
        }
        Some(_) => Err(Error::Parse {
            pos: *pos,
            msg: "expected `(` or `.`".into(),
        }),
        None => Err(Error::Parse {
            pos: *pos,
            msg: "unexpected end of input".into(),
        }),
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(code: &str) -> TernaryTree {
        TernaryTree::parse(code).unwrap()
    }

    #[test]
    fn single_node() {
        let s = TernaryTree::single();
        assert_eq!(s.code(), "(...)");
        assert_eq!(s.abscissas().unwrap(), vec![0]);
        assert!(s.is_left_tree());
        assert_eq!(s.core_size().unwrap(), 1);
        assert_eq!(s.right_branch_count().unwrap(), 0);
        assert_eq!(s.labels().unwrap(), vec![Dir::E]);
    }

    #[test]
    fn one_child_abscissas() {
        let left = t("((...)..)");
        assert_eq!(left.child(0, Child::Left), Some(1));
        assert_eq!(left.child(0, Child::Middle), None);
        assert_eq!(left.abscissas().unwrap(), vec![0, 1]);
        let right = t("(..(...))");
        assert_eq!(right.abscissas().unwrap(), vec![0, -1]);
        assert!(!right.is_left_tree());
        assert_eq!(right.core_size().unwrap(), 1);
        assert_eq!(right.right_branch_count().unwrap(), 1);
        assert_eq!(right.right_chain_count().unwrap(), 1);
        assert_eq!(
            right.check_left(),
            Err(Error::NotLeftTree {
                node: "R".into(),
                abscissa: -1
            })
        );
    }

    #[test]
    fn empty_tree() {
        let e = TernaryTree::empty();
        assert_eq!(e.code(), ".");
        assert_eq!(t("."), e);
        assert!(e.is_left_tree());
        assert_eq!(e.abscissas(), Err(Error::EmptyTree));
        assert_eq!(e.labels(), Err(Error::EmptyTree));
        assert_eq!(e.core_size(), Err(Error::EmptyTree));
        assert_eq!(e.right_branch_count(), Err(Error::EmptyTree));
    }

    #[test]
    fn left_comb_core() {
        for n in 1..8 {
            let mut comb = TernaryTree::single();
            for _ in 1..n {
                comb = TernaryTree::join(&comb, &TernaryTree::empty(), &TernaryTree::empty());
            }
            assert_eq!(comb.core_size().unwrap(), n);
        }
    }

    #[test]
    fn right_chains() {
        // root → R → R is one chain of two right edges
        let t1 = t("(..(..(...)))");
        assert_eq!(t1.right_branch_count().unwrap(), 2);
        assert_eq!(t1.right_chain_count().unwrap(), 1);
        // a right edge below a middle edge starts a new chain
        let t2 = t("(..(.(..(...)).))");
        assert_eq!(t2.right_branch_count().unwrap(), 2);
        assert_eq!(t2.right_chain_count().unwrap(), 2);
    }

    #[test]
    fn parse_errors_report_position() {
        assert_eq!(
            TernaryTree::parse("(..x)"),
            Err(Error::Parse {
                pos: 3,
                msg: "expected `(` or `.`".into()
            })
        );
        assert!(matches!(
            TernaryTree::parse("(..."),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            TernaryTree::parse("(...)."),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            TernaryTree::parse(""),
            Err(Error::Parse { pos: 0, .. })
        ));
    }

    #[test]
    fn join_and_subtree() {
        let l = t("((...)..)");
        let r = t("(...)");
        let j = TernaryTree::join(&l, &TernaryTree::empty(), &r);
        assert_eq!(j.code(), "(((...)..).(...))");
        assert_eq!(j.subtree(j.child(0, Child::Left)), l);
        assert_eq!(j.subtree(j.child(0, Child::Right)), r);
        assert_eq!(j.subtree(None), TernaryTree::empty());
        assert_eq!(j.path(3), "R");
        assert_eq!(j.path(2), "LL");
    }

    #[test]
    fn label_rules() {
        for parent in Dir::ALL {
            let kids = parent.child_labels();
            assert_ne!(kids[0], kids[1]);
            assert_ne!(kids[1], kids[2]);
            assert_ne!(kids[0], kids[2]);
            assert!(!kids.contains(&parent.opposite()));
            assert_eq!(kids[1], parent);
            for (i, k) in kids.into_iter().enumerate() {
                assert_eq!(parent.child_position(k), Some(Child::ALL[i]));
            }
            assert_eq!(parent.child_position(parent.opposite()), None);
        }
    }

    #[test]
    fn json_export() {
        let j = t("((...)..)").to_json();
        assert_eq!(
            j.to_string(),
            r#"{"left":{"left":null,"middle":null,"right":null},"middle":null,"right":null}"#
        );
        assert_eq!(TernaryTree::empty().to_json(), serde_json::Value::Null);
    }
}
