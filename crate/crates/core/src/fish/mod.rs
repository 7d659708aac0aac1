//! Fighting fish as glued cell complexes.
//!
//! A [`Fish`] is stored as its explicit gluing graph: every cell records,
//! for each of its four edges, the cell glued across that edge. Fish are
//! always kept in canonical form (cells numbered breadth-first from the
//! head, neighbours expanded in slot order RU, RL, LU, LL), so structural
//! equality of two `Fish` values is equality of the glued complexes.
//!
//! The only ways to obtain a fish are [`Fish::new_head`], the three growth
//! operations, the stem-tree reconstruction in [`crate::bijection`], and the
//! decoders in this module, which re-derive a growth sequence before
//! accepting their input.

mod boundary;
mod codec;
pub(crate) mod raw;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use codec::{FishJson, CODE_VERSION};
use raw::RawFish;

/// Index of a cell inside one [`Fish`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(pub u32);

impl CellId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One of the four distinguished edges of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// right upper
    Ru,
    /// right lower
    Rl,
    /// left upper
    Lu,
    /// left lower
    Ll,
}

impl Slot {
    /// Canonical expansion order.
    pub const ALL: [Slot; 4] = [Slot::Ru, Slot::Rl, Slot::Lu, Slot::Ll];

    /// The edge of the neighbouring cell that this edge is glued to.
    #[inline]
    pub fn mate(self) -> Slot {
        match self {
            Slot::Ru => Slot::Ll,
            Slot::Ll => Slot::Ru,
            Slot::Rl => Slot::Lu,
            Slot::Lu => Slot::Rl,
        }
    }

    /// Image under reflection in the horizontal axis.
    #[inline]
    pub fn reflect(self) -> Slot {
        match self {
            Slot::Ru => Slot::Rl,
            Slot::Rl => Slot::Ru,
            Slot::Lu => Slot::Ll,
            Slot::Ll => Slot::Lu,
        }
    }

    /// Next edge counterclockwise around the cell.
    #[inline]
    pub fn ccw_next(self) -> Slot {
        match self {
            Slot::Ll => Slot::Rl,
            Slot::Rl => Slot::Ru,
            Slot::Ru => Slot::Lu,
            Slot::Lu => Slot::Ll,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Slot::Ru => "ru",
            Slot::Rl => "rl",
            Slot::Lu => "lu",
            Slot::Ll => "ll",
        }
    }

    #[inline]
    fn index(self) -> usize {
        self as usize
    }
}

/// A cell and the cells glued across its four edges (`None` = free edge).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    links: [Option<CellId>; 4],
}

impl Cell {
    #[inline]
    pub fn get(&self, slot: Slot) -> Option<CellId> {
        self.links[slot.index()]
    }

    #[inline]
    pub(crate) fn set(&mut self, slot: Slot, value: Option<CellId>) {
        self.links[slot.index()] = value;
    }

    pub fn ru(&self) -> Option<CellId> {
        self.get(Slot::Ru)
    }
    pub fn rl(&self) -> Option<CellId> {
        self.get(Slot::Rl)
    }
    pub fn lu(&self) -> Option<CellId> {
        self.get(Slot::Lu)
    }
    pub fn ll(&self) -> Option<CellId> {
        self.get(Slot::Ll)
    }

    /// Both right edges free.
    pub fn is_tail(&self) -> bool {
        self.ru().is_none() && self.rl().is_none()
    }

    fn free_right_edges(&self) -> usize {
        self.ru().is_none() as usize + self.rl().is_none() as usize
    }

    fn free_left_edges(&self) -> usize {
        self.lu().is_none() as usize + self.ll().is_none() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// Cells chained right-lower edge to left-upper edge.
    Descending,
    /// Cells chained right-upper edge to left-lower edge.
    Ascending,
}

impl Orientation {
    /// Slot leading to the next cell in strip order.
    fn forward(self) -> Slot {
        match self {
            Orientation::Descending => Slot::Rl,
            Orientation::Ascending => Slot::Ru,
        }
    }

    fn backward(self) -> Slot {
        self.forward().mate()
    }

    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Descending => Orientation::Ascending,
            Orientation::Ascending => Orientation::Descending,
        }
    }
}

/// A maximal strip of cells, listed top→bottom for descending strips and
/// bottom→top for ascending strips.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StripRef {
    pub orientation: Orientation,
    pub cells: Vec<CellId>,
}

impl StripRef {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// First cell in strip order: the top of a descending strip, the bottom
    /// of an ascending one.
    pub fn first(&self) -> CellId {
        self.cells[0]
    }

    pub fn contains(&self, cell: CellId) -> bool {
        self.cells.contains(&cell)
    }
}

/// Planar placement of a cell: `u` counts right-lower steps from the head,
/// `v` right-upper steps. Distinct cells may share a coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellCoord {
    pub u: i32,
    pub v: i32,
}

/// Classification of a stem cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StemKind {
    /// Both right edges free.
    Tail,
    /// Exactly one right edge free.
    OneFree,
    /// No free right edge, but the right point is where two free boundary
    /// edges meet.
    Branch,
}

/// One growth move of the cell-by-cell construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Growth {
    Upper(CellId),
    Lower(CellId),
    Double(CellId, CellId),
}

/// A fighting fish in canonical form; the head is always cell 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fish {
    cells: Vec<Cell>,
}

impl Fish {
    /// The one-cell fish.
    pub fn new_head() -> Fish {
        Fish {
            cells: vec![Cell::default()],
        }
    }

    pub fn head(&self) -> CellId {
        CellId(0)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.index()]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len() as u32).map(CellId)
    }

    pub(crate) fn check_cell(&self, id: CellId) -> Result<()> {
        if id.index() < self.cells.len() {
            Ok(())
        } else {
            Err(Error::BadCell(id))
        }
    }

    fn check_free(&self, id: CellId, slot: Slot) -> Result<()> {
        match self.cell(id).get(slot) {
            None => Ok(()),
            Some(_) => Err(Error::EdgeOccupied {
                cell: id,
                slot: slot.name(),
            }),
        }
    }

    /// Upper gluing: attach a new cell to the free right upper edge of `c`.
    pub fn glue_upper(&self, c: CellId) -> Result<Fish> {
        self.grow(Growth::Upper(c)).map(|g| g.0)
    }

    /// Lower gluing: attach a new cell to the free right lower edge of `c`.
    pub fn glue_lower(&self, c: CellId) -> Result<Fish> {
        self.grow(Growth::Lower(c)).map(|g| g.0)
    }

    /// Double gluing: `a` and `b` must be the upper and lower right
    /// neighbours of a common cell, with `a.rl` and `b.ru` free; the new cell
    /// is glued to both.
    pub fn glue_double(&self, a: CellId, b: CellId) -> Result<Fish> {
        self.grow(Growth::Double(a, b)).map(|g| g.0)
    }

    /// Apply a growth move, returning the new fish together with the
    /// renumbering of the old cells and the id of the added cell.
    pub fn grow(&self, growth: Growth) -> Result<(Fish, Vec<CellId>, CellId)> {
        let mut raw = RawFish::from_fish(self);
        match growth {
            Growth::Upper(c) | Growth::Lower(c) => {
                let slot = if matches!(growth, Growth::Upper(_)) {
                    Slot::Ru
                } else {
                    Slot::Rl
                };
                self.check_cell(c)?;
                self.check_free(c, slot)?;
                let d = raw.add_cell();
                raw.glue(c, slot, d);
            }
            Growth::Double(a, b) => {
                self.check_cell(a)?;
                self.check_cell(b)?;
                match (self.cell(a).ll(), self.cell(b).lu()) {
                    (Some(c1), Some(c2)) if c1 == c2 => {}
                    _ => return Err(Error::NotDoubleSite(a, b)),
                }
                self.check_free(a, Slot::Rl)?;
                self.check_free(b, Slot::Ru)?;
                let d = raw.add_cell();
                raw.glue(a, Slot::Rl, d);
                raw.glue(b, Slot::Ru, d);
            }
        }
        let (fish, map) = raw.canonicalize(self.head());
        let mut map: Vec<CellId> = map.into_iter().map(|m| m.expect("connected")).collect();
        let added = map.pop().expect("a cell was added");
        Ok((fish, map, added))
    }

    /// Every legal growth move, in a deterministic order.
    pub fn growth_moves(&self) -> Vec<Growth> {
        let mut moves = Vec::new();
        for id in self.cell_ids() {
            let cell = self.cell(id);
            if cell.ru().is_none() {
                moves.push(Growth::Upper(id));
            }
            if cell.rl().is_none() {
                moves.push(Growth::Lower(id));
            }
            if let (Some(a), Some(b)) = (cell.ru(), cell.rl()) {
                if self.cell(a).rl().is_none() && self.cell(b).ru().is_none() {
                    moves.push(Growth::Double(a, b));
                }
            }
        }
        moves
    }

    /// Number of free right edges minus one.
    pub fn size(&self) -> usize {
        self.cells.iter().map(Cell::free_right_edges).sum::<usize>() - 1
    }

    pub fn free_left_edges(&self) -> usize {
        self.cells.iter().map(Cell::free_left_edges).sum()
    }

    pub fn free_right_edges(&self) -> usize {
        self.cells.iter().map(Cell::free_right_edges).sum()
    }

    /// The maximal strip of the given orientation containing `cell`.
    pub fn strip_of(&self, cell: CellId, orientation: Orientation) -> StripRef {
        let mut first = cell;
        while let Some(prev) = self.cell(first).get(orientation.backward()) {
            first = prev;
        }
        self.strip_from(first, orientation)
    }

    fn strip_from(&self, first: CellId, orientation: Orientation) -> StripRef {
        let mut cells = vec![first];
        let mut cur = first;
        while let Some(next) = self.cell(cur).get(orientation.forward()) {
            cells.push(next);
            cur = next;
        }
        StripRef { orientation, cells }
    }

    /// All maximal strips of one orientation, ordered by the canonical index
    /// of their first cell.
    pub fn strips(&self, orientation: Orientation) -> Vec<StripRef> {
        self.cell_ids()
            .filter(|&c| self.cell(c).get(orientation.backward()).is_none())
            .map(|c| self.strip_from(c, orientation))
            .collect()
    }

    pub fn strip_count(&self, orientation: Orientation) -> usize {
        self.cells
            .iter()
            .filter(|c| c.get(orientation.backward()).is_none())
            .count()
    }

    /// Position of `strip` in [`Fish::strips`] order.
    pub fn strip_index(&self, strip: &StripRef) -> Option<usize> {
        self.strips(strip.orientation)
            .iter()
            .position(|s| s == strip)
    }

    /// The descending strip containing the head.
    pub fn jaw(&self) -> StripRef {
        self.strip_of(self.head(), Orientation::Descending)
    }

    /// Stem-cell classification of `cell`, or `None` for a non-stem cell.
    pub fn stem_kind(&self, cell: CellId) -> Option<StemKind> {
        match self.cell(cell).free_right_edges() {
            2 => Some(StemKind::Tail),
            1 => Some(StemKind::OneFree),
            _ if self.right_point_is_open(cell) => Some(StemKind::Branch),
            _ => None,
        }
    }

    pub fn is_stem(&self, cell: CellId) -> bool {
        self.stem_kind(cell).is_some()
    }

    /// Stem cells in canonical order with their classification.
    pub fn stem_cells(&self) -> Vec<(CellId, StemKind)> {
        self.cell_ids()
            .filter_map(|c| self.stem_kind(c).map(|k| (c, k)))
            .collect()
    }

    pub fn tails(&self) -> Vec<CellId> {
        self.cell_ids()
            .filter(|&c| self.cell(c).is_tail())
            .collect()
    }

    pub fn branch_cells(&self) -> Vec<CellId> {
        self.stem_cells()
            .into_iter()
            .filter(|&(_, k)| k == StemKind::Branch)
            .map(|(c, _)| c)
            .collect()
    }

    /// Reflection in the horizontal axis, with the image of every cell.
    pub fn conjugate_with_map(&self) -> (Fish, Vec<CellId>) {
        let mut raw = RawFish::from_fish(self);
        for cell in raw.cells.iter_mut() {
            let old = *cell;
            for slot in Slot::ALL {
                cell.set(slot.reflect(), old.get(slot));
            }
        }
        let (fish, map) = raw.canonicalize(self.head());
        (
            fish,
            map.into_iter().map(|m| m.expect("connected")).collect(),
        )
    }

    pub fn conjugate(&self) -> Fish {
        self.conjugate_with_map().0
    }

    pub fn is_symmetric(&self) -> bool {
        self.conjugate() == *self
    }

    /// For a symmetric fish, the reflection as a permutation of its cells.
    pub fn reflection(&self) -> Option<Vec<CellId>> {
        let (conj, map) = self.conjugate_with_map();
        (conj == *self).then_some(map)
    }

    /// Coordinates of every cell, derived by breadth-first search from the
    /// head. Panics if two gluing paths disagree, which would mean the
    /// complex is not a fish.
    pub fn coords(&self) -> Vec<CellCoord> {
        let mut coords: Vec<Option<CellCoord>> = vec![None; self.cells.len()];
        coords[0] = Some(CellCoord { u: 0, v: 0 });
        let mut queue = std::collections::VecDeque::from([self.head()]);
        while let Some(c) = queue.pop_front() {
            let here = coords[c.index()].expect("queued cells are placed");
            for slot in Slot::ALL {
                let Some(d) = self.cell(c).get(slot) else {
                    continue;
                };
                let there = match slot {
                    Slot::Ru => CellCoord {
                        u: here.u,
                        v: here.v + 1,
                    },
                    Slot::Rl => CellCoord {
                        u: here.u + 1,
                        v: here.v,
                    },
                    Slot::Lu => CellCoord {
                        u: here.u - 1,
                        v: here.v,
                    },
                    Slot::Ll => CellCoord {
                        u: here.u,
                        v: here.v - 1,
                    },
                };
                match coords[d.index()] {
                    None => {
                        coords[d.index()] = Some(there);
                        queue.push_back(d);
                    }
                    Some(seen) => assert_eq!(seen, there, "coordinates depend on gluing path"),
                }
            }
        }
        coords.into_iter().map(|c| c.expect("connected")).collect()
    }
}
