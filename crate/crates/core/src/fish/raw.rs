//! Mutable cell graph used while a fish is being assembled.
//!
//! Cell ids in a `RawFish` are stable under every operation; canonical
//! renumbering only happens in [`RawFish::canonicalize`].

use std::collections::VecDeque;

use super::{Cell, CellId, Fish, Slot};

#[derive(Debug, Clone, Default)]
pub(crate) struct RawFish {
    pub(crate) cells: Vec<Cell>,
}

impl RawFish {
    pub(crate) fn from_fish(fish: &Fish) -> Self {
        RawFish {
            cells: fish.cells.clone(),
        }
    }

    pub(crate) fn add_cell(&mut self) -> CellId {
        self.cells.push(Cell::default());
        CellId(self.cells.len() as u32 - 1)
    }

    #[inline]
    pub(crate) fn get(&self, cell: CellId, slot: Slot) -> Option<CellId> {
        self.cells[cell.index()].get(slot)
    }

    /// Glue edge `slot` of `cell` to the mate edge of `other`, overwriting
    /// whatever was there on both sides.
    pub(crate) fn glue(&mut self, cell: CellId, slot: Slot, other: CellId) {
        self.cells[cell.index()].set(slot, Some(other));
        self.cells[other.index()].set(slot.mate(), Some(cell));
    }

    /// Follow `slot` links from `cell` until the edge is free.
    pub(crate) fn walk_to_end(&self, mut cell: CellId, slot: Slot) -> CellId {
        while let Some(next) = self.get(cell, slot) {
            cell = next;
        }
        cell
    }

    pub(crate) fn find_head(&self) -> Option<CellId> {
        let mut heads = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.lu().is_none() && c.ll().is_none());
        let head = heads.next()?;
        if heads.next().is_some() {
            return None;
        }
        Some(CellId(head.0 as u32))
    }

    /// Renumber cells in breadth-first order from `head`, expanding
    /// neighbours in slot order RU, RL, LU, LL. Returns the canonical fish
    /// and the old-id → new-id map. Cells unreachable from `head` are
    /// dropped (their map entry is `None`).
    pub(crate) fn canonicalize(&self, head: CellId) -> (Fish, Vec<Option<CellId>>) {
        let n = self.cells.len();
        let mut new_id: Vec<Option<CellId>> = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::with_capacity(n);
        new_id[head.index()] = Some(CellId(0));
        order.push(head);
        queue.push_back(head);
        while let Some(c) = queue.pop_front() {
            for slot in Slot::ALL {
                if let Some(d) = self.get(c, slot) {
                    if new_id[d.index()].is_none() {
                        new_id[d.index()] = Some(CellId(order.len() as u32));
                        order.push(d);
                        queue.push_back(d);
                    }
                }
            }
        }
        let cells = order
            .iter()
            .map(|&old| {
                let mut cell = Cell::default();
                for slot in Slot::ALL {
                    let mapped = self.get(old, slot).map(|d| {
                        new_id[d.index()].expect("neighbour of a reached cell is reached")
                    });
                    cell.set(slot, mapped);
                }
                cell
            })
            .collect();
        (Fish { cells }, new_id)
    }
}
