//! Reading the labelled stem-cell tree off a fish.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fish::{CellId, Fish, Orientation, Slot, StripRef};
use crate::stem::StemTree;
use crate::ternary::Dir;

/// A stem tree together with the cell of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemMap {
    pub tree: StemTree,
    /// `cells[i]` is the stem cell of tree node `i`.
    pub cells: Vec<CellId>,
}

/// Slot leading out of a cell in a compass direction.
pub(crate) fn dir_slot(dir: Dir) -> Slot {
    match dir {
        Dir::N => Slot::Ru,
        Dir::E => Slot::Rl,
        Dir::S => Slot::Ll,
        Dir::W => Slot::Lu,
    }
}

/// Topmost stem cell of a descending strip.
pub fn topmost_stem(fish: &Fish, strip: &StripRef) -> Result<CellId> {
    if strip.orientation != Orientation::Descending || strip.is_empty() {
        return Err(Error::NotAStrip);
    }
    if fish.strip_of(strip.first(), Orientation::Descending) != *strip {
        return Err(Error::NotAStrip);
    }
    Ok(strip
        .cells
        .iter()
        .copied()
        .find(|&c| fish.is_stem(c))
        .expect("the bottom cell of a descending strip is a stem cell"))
}

/// The stem tree rooted at the topmost stem cell of `strip`, root label E.
pub fn stem_tree(fish: &Fish, strip: &StripRef) -> Result<StemMap> {
    let root = topmost_stem(fish, strip)?;
    stem_tree_rooted(fish, root, Dir::E)
}

/// The stem tree rooted at an arbitrary stem cell with the given root label.
/// The root collects neighbours in all four directions.
pub fn stem_tree_rooted(fish: &Fish, root: CellId, label: Dir) -> Result<StemMap> {
    fish.check_cell(root)?;
    let n = fish.cell_count();
    let stem: Vec<bool> = fish.cell_ids().map(|c| fish.is_stem(c)).collect();
    if !stem[root.index()] {
        return Err(Error::InvalidFish(format!(
            "cell {root} is not a stem cell"
        )));
    }
    let neighbour = |c: CellId, d: Dir| -> Option<CellId> {
        let slot = dir_slot(d);
        let mut cur = fish.cell(c).get(slot)?;
        loop {
            if stem[cur.index()] {
                return Some(cur);
            }
            cur = fish.cell(cur).get(slot)?;
        }
    };

    let mut node_of = vec![usize::MAX; n];
    let mut cells = vec![root];
    let mut labels = vec![label];
    let mut children: Vec<Vec<(Dir, usize)>> = vec![Vec::new()];
    node_of[root.index()] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let from = (u != 0).then(|| labels[u].opposite());
        for d in Dir::ALL {
            if Some(d) == from {
                continue;
            }
            let Some(v) = neighbour(cells[u], d) else {
                continue;
            };
            if node_of[v.index()] != usize::MAX {
                return Err(Error::InvalidFish(format!(
                    "stem cells {} and {v} close a cycle",
                    cells[u]
                )));
            }
            let id = cells.len();
            node_of[v.index()] = id;
            cells.push(v);
            labels.push(d);
            children.push(Vec::new());
            children[u].push((d, id));
            queue.push_back(id);
        }
    }
    let (tree, new_id) = StemTree::from_adjacency(0, label, &children);
    let mut ordered = vec![CellId(0); cells.len()];
    for (old, &cell) in cells.iter().enumerate() {
        ordered[new_id[old]] = cell;
    }
    Ok(StemMap {
        tree,
        cells: ordered,
    })
}
