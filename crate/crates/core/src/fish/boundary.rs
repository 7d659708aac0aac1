//! Walks around vertices and along the boundary of the cell complex.
//!
//! Every cell edge is oriented counterclockwise around its own cell:
//! LL runs left→bottom, RL bottom→right, RU right→top, LU top→left. A glued
//! edge is traversed in opposite directions by its two cells, which gives
//! the usual half-edge rotation around a vertex without ever looking at
//! planar coordinates. Overlapping sheets of a branching surface are thus
//! kept apart automatically.

use super::{CellId, Fish, Slot};

impl Fish {
    /// Successor of the free edge `(cell, slot)` on the boundary, walking
    /// with the surface on the left.
    pub(crate) fn boundary_next(&self, cell: CellId, slot: Slot) -> (CellId, Slot) {
        let mut cur = cell;
        let mut out = slot.ccw_next();
        // A vertex fan has at most 4·cells sectors.
        for _ in 0..=4 * self.cells.len() {
            match self.cell(cur).get(out) {
                None => return (cur, out),
                Some(other) => {
                    cur = other;
                    out = out.mate().ccw_next();
                }
            }
        }
        unreachable!("boundary walk did not close; the cell graph is not a surface")
    }

    /// Whether the fan of cells around the right point of `cell` is open,
    /// i.e. the right point lies on two free boundary edges.
    pub(crate) fn right_point_is_open(&self, cell: CellId) -> bool {
        // Rotate counterclockwise from `cell`, starting across its RU edge.
        let mut cur = cell;
        let mut out = Slot::Ru;
        for _ in 0..=4 * self.cells.len() {
            match self.cell(cur).get(out) {
                None => return true,
                Some(other) => {
                    cur = other;
                    out = out.mate().ccw_next();
                    if cur == cell && out == Slot::Ru {
                        return false;
                    }
                }
            }
        }
        unreachable!("vertex fan did not close")
    }

    /// Number of free edges on the fin: the counterclockwise boundary path
    /// from the head's left point (first edge: the head's LL edge) to the
    /// right point of the first tail reached.
    pub fn fin_length(&self) -> usize {
        let total_free: usize = self
            .cells
            .iter()
            .map(|c| Slot::ALL.iter().filter(|&&s| c.get(s).is_none()).count())
            .sum();
        let (mut cell, mut slot) = (self.head(), Slot::Ll);
        let mut length = 1;
        loop {
            if slot == Slot::Rl && self.cell(cell).is_tail() {
                return length;
            }
            assert!(length <= total_free, "fin walk left the boundary cycle");
            (cell, slot) = self.boundary_next(cell, slot);
            length += 1;
        }
    }

    /// The full boundary cycle starting at the head's LL edge, as a list of
    /// free edges.
    pub fn boundary(&self) -> Vec<(CellId, Slot)> {
        let start = (self.head(), Slot::Ll);
        let mut out = vec![start];
        let mut cur = self.boundary_next(start.0, start.1);
        while cur != start {
            out.push(cur);
            cur = self.boundary_next(cur.0, cur.1);
        }
        out
    }
}
