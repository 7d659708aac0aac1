//! Growing a fish from a labelled stem tree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fish::raw::RawFish;
use crate::fish::{CellId, Fish, Slot};
use crate::stem::StemTree;
use crate::ternary::Dir;

/// Build the fish of a stem tree. Returns the fish and the cell of every
/// tree node.
pub fn build_fish(tree: &StemTree) -> Result<(Fish, Vec<CellId>)> {
    build_fish_in_order(tree, |_, _| {})
}

/// Like [`build_fish`], but `order(node, children)` may permute the children
/// of each node before they are processed.
pub fn build_fish_in_order(
    tree: &StemTree,
    mut order: impl FnMut(usize, &mut Vec<usize>),
) -> Result<(Fish, Vec<CellId>)> {
    tree.check_consistent()?;
    let mut raw = RawFish::default();
    let root_cell = raw.add_cell();
    let mut cell_of = vec![CellId(u32::MAX); tree.len()];
    cell_of[0] = root_cell;

    let mut queue = VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        let mut kids: Vec<usize> = tree.node(w).children.iter().flatten().copied().collect();
        order(w, &mut kids);
        for u in kids {
            let wc = cell_of[w];
            cell_of[u] = match tree.node(u).label {
                Dir::N => attach(&mut raw, wc, Slot::Ru)?,
                Dir::E => attach(&mut raw, wc, Slot::Rl)?,
                Dir::W => insert_strip(&mut raw, wc, false),
                Dir::S => insert_strip(&mut raw, wc, true),
            };
            queue.push_back(u);
        }
    }

    let head = raw
        .find_head()
        .ok_or_else(|| Error::InvalidFish("stem tree does not yield a single head".into()))?;
    // Generalized roots can describe gluings that are not fish; the peel
    // check in `from_cells` catches them.
    let checked = Fish::from_cells(raw.cells.clone())?;
    let (fish, map) = raw.canonicalize(head);
    debug_assert_eq!(checked, fish);
    let cells = cell_of
        .into_iter()
        .map(|c| map[c.index()].expect("built cells are connected"))
        .collect();
    Ok((fish, cells))
}

fn attach(raw: &mut RawFish, w: CellId, slot: Slot) -> Result<CellId> {
    if raw.get(w, slot).is_some() {
        return Err(Error::EdgeOccupied {
            cell: w,
            slot: slot.name(),
        });
    }
    let c = raw.add_cell();
    raw.glue(w, slot, c);
    Ok(c)
}

/// Insert a strip on the W side of `w` (ascending strip) or, with `reflect`,
/// on the S side (descending strip). Returns the new stem cell.
fn insert_strip(raw: &mut RawFish, w: CellId, reflect: bool) -> CellId {
    let s = |slot: Slot| if reflect { slot.reflect() } else { slot };
    let q = raw.walk_to_end(w, s(Slot::Lu));
    let p = raw.walk_to_end(q, s(Slot::Ll));
    let mut b = vec![p];
    while *b.last().unwrap() != q {
        let next = raw
            .get(*b.last().unwrap(), s(Slot::Ru))
            .expect("the strip through p reaches q");
        b.push(next);
    }
    let a: Vec<CellId> = b.iter().map_while(|&bi| raw.get(bi, s(Slot::Lu))).collect();
    debug_assert!(a
        .windows(2)
        .all(|x| raw.get(x[0], s(Slot::Ru)) == Some(x[1])));

    let mut prev: Option<CellId> = None;
    for (i, &bi) in b.iter().enumerate() {
        let c = raw.add_cell();
        raw.glue(c, s(Slot::Rl), bi);
        if let Some(&ai) = a.get(i) {
            raw.glue(c, s(Slot::Lu), ai);
        }
        if let Some(pc) = prev {
            raw.glue(pc, s(Slot::Ru), c);
        }
        prev = Some(c);
    }
    prev.expect("strips are nonempty")
}
