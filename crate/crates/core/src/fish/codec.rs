//! Fish interchange formats.
//!
//! JSON: `{"cells":[{"ru":int|null,"rl":int|null,"lu":int|null,"ll":int|null},...]}`
//! with cells in canonical order and the head at index 0.
//!
//! Canonical code (version 1), all integers big-endian:
//!
//! ```text
//! b"FF" | version: u8 = 1 | cell count: u32 | per cell: ru rl lu ll as u32
//! ```
//!
//! A free edge is written as `0xFFFF_FFFF`. Since the cell count leads,
//! byte-wise comparison orders fish by cell count first, and the one-cell
//! fish has the smallest code.

use serde::{Deserialize, Serialize};

use super::raw::RawFish;
use super::{Cell, CellId, Fish, Slot};
use crate::error::{Error, Result};

pub const CODE_VERSION: u8 = 1;
const MAGIC: &[u8; 2] = b"FF";
const FREE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub ru: Option<u32>,
    pub rl: Option<u32>,
    pub lu: Option<u32>,
    pub ll: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FishJson {
    pub cells: Vec<CellJson>,
}

impl Fish {
    pub fn to_json(&self) -> FishJson {
        FishJson {
            cells: self
                .cells
                .iter()
                .map(|c| CellJson {
                    ru: c.ru().map(|x| x.0),
                    rl: c.rl().map(|x| x.0),
                    lu: c.lu().map(|x| x.0),
                    ll: c.ll().map(|x| x.0),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("fish JSON is always serializable")
    }

    /// Accepts cells in any order; the result is renumbered canonically.
    pub fn from_json(json: &FishJson) -> Result<Fish> {
        let cells = json
            .cells
            .iter()
            .map(|c| {
                let mut cell = Cell::default();
                cell.set(Slot::Ru, c.ru.map(CellId));
                cell.set(Slot::Rl, c.rl.map(CellId));
                cell.set(Slot::Lu, c.lu.map(CellId));
                cell.set(Slot::Ll, c.ll.map(CellId));
                cell
            })
            .collect();
        Fish::from_cells(cells)
    }

    pub fn from_json_str(s: &str) -> Result<Fish> {
        let json: FishJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        Fish::from_json(&json)
    }

    pub fn canonical_code(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(7 + 16 * self.cells.len());
        out.extend_from_slice(MAGIC);
        out.push(CODE_VERSION);
        out.extend_from_slice(&(self.cells.len() as u32).to_be_bytes());
        for cell in &self.cells {
            for slot in Slot::ALL {
                let v = cell.get(slot).map_or(FREE, |c| c.0);
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
        out
    }

    /// Inverse of [`Fish::canonical_code`]. Rejects codes that are not in
    /// canonical order.
    pub fn from_code(code: &[u8]) -> Result<Fish> {
        let bad = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        if code.len() < 7 || &code[..2] != MAGIC {
            return Err(bad(0, "missing fish code header"));
        }
        if code[2] != CODE_VERSION {
            return Err(bad(2, "unsupported code version"));
        }
        let n = u32::from_be_bytes(code[3..7].try_into().unwrap()) as usize;
        if code.len() != 7 + 16 * n {
            return Err(bad(3, "length does not match cell count"));
        }
        let cells: Vec<Cell> = code[7..]
            .chunks_exact(16)
            .map(|chunk| {
                let mut cell = Cell::default();
                for (i, slot) in Slot::ALL.into_iter().enumerate() {
                    let v = u32::from_be_bytes(chunk[4 * i..4 * i + 4].try_into().unwrap());
                    cell.set(slot, (v != FREE).then_some(CellId(v)));
                }
                cell
            })
            .collect();
        let fish = Fish::from_cells(cells.clone())?;
        if fish.cells != cells {
            return Err(bad(7, "cells are not in canonical order"));
        }
        Ok(fish)
    }

    /// Validate an arbitrary gluing graph and return it in canonical form.
    ///
    /// The graph is accepted only if it can be dismantled cell by cell,
    /// always removing a cell whose right edges are free and whose left
    /// gluings are those of an upper, lower or double gluing. Reversing the
    /// removal order gives a growth sequence from the head.
    pub fn from_cells(cells: Vec<Cell>) -> Result<Fish> {
        let invalid = |msg: String| Error::InvalidFish(msg);
        let n = cells.len();
        if n == 0 {
            return Err(invalid("no cells".into()));
        }
        for (i, cell) in cells.iter().enumerate() {
            for slot in Slot::ALL {
                if let Some(d) = cell.get(slot) {
                    if d.index() >= n {
                        return Err(invalid(format!("cell {i} links to missing cell {d}")));
                    }
                    if d.index() == i {
                        return Err(invalid(format!("cell {i} is glued to itself")));
                    }
                    if cells[d.index()].get(slot.mate()) != Some(CellId(i as u32)) {
                        return Err(invalid(format!(
                            "cell {i} edge {} points to {d}, which does not point back",
                            slot.name()
                        )));
                    }
                }
            }
        }
        let raw = RawFish { cells };
        let head = raw.find_head().ok_or_else(|| {
            invalid("there must be exactly one cell with both left edges free".into())
        })?;

        let mut work = raw.clone();
        let mut alive = vec![true; n];
        let mut stack: Vec<CellId> = (0..n as u32)
            .map(CellId)
            .filter(|&c| c != head && work.cells[c.index()].is_tail())
            .collect();
        let mut removed = 0;
        while let Some(x) = stack.pop() {
            if !alive[x.index()] {
                continue;
            }
            let cell = work.cells[x.index()];
            match (cell.lu(), cell.ll()) {
                (Some(a), Some(b)) => {
                    let c1 = work.get(a, Slot::Ll);
                    if c1.is_none() || c1 != work.get(b, Slot::Lu) {
                        return Err(invalid(format!(
                            "cell {x} is glued on both left edges without a double-gluing site"
                        )));
                    }
                }
                (None, None) => unreachable!("only the head has two free left edges"),
                _ => {}
            }
            alive[x.index()] = false;
            removed += 1;
            for slot in [Slot::Lu, Slot::Ll] {
                if let Some(p) = cell.get(slot) {
                    work.cells[p.index()].set(slot.mate(), None);
                    if p != head && work.cells[p.index()].is_tail() {
                        stack.push(p);
                    }
                }
            }
        }
        if removed != n - 1 {
            return Err(invalid("the cells cannot be grown from the head".into()));
        }
        Ok(raw.canonicalize(head).0)
    }
}
