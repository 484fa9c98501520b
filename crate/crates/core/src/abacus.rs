//! β-numbers, abacus displays, cores and the bead moves used to walk
//! between multicores.
//!
//! Positions grow towards larger parts: a bead at `z` moved to `z + h`
//! wraps an `h`-rim hook onto the partition. "Down one row" on a finite
//! abacus is `z ↦ z + e`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::modulus::Modulus;
use crate::partition::{Multipartition, Partition};

/// The abacus display of a partition with a fixed charge.
///
/// The partition is the canonical storage; bead positions are derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbacusDisplay {
    e: Modulus,
    charge: i64,
    partition: Partition,
}

impl AbacusDisplay {
    pub fn new(partition: Partition, charge: i64, e: Modulus) -> Self {
        AbacusDisplay {
            e,
            charge,
            partition,
        }
    }

    /// Builds a display from the leading β-numbers; beads below the head
    /// continue as `c - i`.
    pub fn from_beads(head: &[i64], charge: i64, e: Modulus) -> Result<Self> {
        if head.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidBeads(format!(
                "bead positions {head:?} are not strictly decreasing"
            )));
        }
        let k = head.len() as i64;
        if let Some(&last) = head.last() {
            if last < charge - k {
                return Err(Error::InvalidBeads(format!(
                    "bead {last} collides with the implicit tail below {}",
                    charge - k
                )));
            }
        }
        let parts = head
            .iter()
            .enumerate()
            .map(|(i, &b)| (b + i as i64 + 1 - charge) as usize)
            .collect();
        Ok(AbacusDisplay::new(Partition::from_trusted(parts), charge, e))
    }

    pub fn e(&self) -> Modulus {
        self.e
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }

    /// `β_i = λ_i - i + c` for `i ≥ 1`.
    pub fn beta(&self, i: usize) -> i64 {
        self.partition.part(i) as i64 - i as i64 + self.charge
    }

    /// The first `k` β-numbers.
    pub fn beads_head(&self, k: usize) -> Vec<i64> {
        (1..=k).map(|i| self.beta(i)).collect()
    }

    pub fn has_bead(&self, z: i64) -> bool {
        let len = self.partition.len() as i64;
        if z < self.charge - len {
            return true;
        }
        (1..=self.partition.len()).any(|i| self.beta(i) == z)
    }

    /// Runner of a position (the position itself when `e = ∞`).
    pub fn runner(&self, z: i64) -> i64 {
        runner_of(self.e, z)
    }

    /// Row of a position (always 0 when `e = ∞`).
    pub fn row(&self, z: i64) -> i64 {
        match self.e {
            Modulus::Finite(e) => z.div_euclid(e as i64),
            Modulus::Infinite => 0,
        }
    }

    /// Number of leading β-numbers that covers every position `≥ lowest`.
    fn window_for(&self, lowest: i64) -> usize {
        let len = self.partition.len();
        len.max((self.charge - lowest).max(0) as usize) + 1
    }

    fn window_partition(&self, mut beads: Vec<i64>) -> Partition {
        beads.sort_unstable_by(|a, b| b.cmp(a));
        let parts = beads
            .iter()
            .enumerate()
            .map(|(i, &b)| (b + i as i64 + 1 - self.charge) as usize)
            .collect();
        Partition::from_trusted(parts)
    }

    /// Moves the bead at `from` to the empty position `to`.
    pub fn move_bead(&self, from: i64, to: i64) -> Result<AbacusDisplay> {
        if !self.has_bead(from) {
            return Err(Error::NoBead(from));
        }
        if self.has_bead(to) {
            return Err(Error::Occupied(to));
        }
        let k = self.window_for(from.min(to));
        let beads = self
            .beads_head(k)
            .into_iter()
            .map(|b| if b == from { to } else { b })
            .collect();
        Ok(AbacusDisplay::new(self.window_partition(beads), self.charge, self.e))
    }

    /// Largest bead position on runner `y` (finite `e` only).
    pub fn lowest_bead_on_runner(&self, y: i64) -> Result<i64> {
        let e = match self.e {
            Modulus::Finite(e) => e as i64,
            Modulus::Infinite => return Err(Error::InfiniteE("runner bead search")),
        };
        let y = y.rem_euclid(e);
        let top = self.beta(1).max(self.charge - 1);
        let mut z = top - (top - y).rem_euclid(e);
        while !self.has_bead(z) {
            z -= e;
        }
        Ok(z)
    }

    /// Bead counts per runner above an `e`-aligned floor below which every
    /// position is occupied, together with that floor.
    fn runner_counts(&self, e: i64) -> (i64, Vec<usize>) {
        let full_below = self.charge - self.partition.len() as i64 - 1;
        let floor = e * full_below.div_euclid(e);
        let k = self.window_for(floor);
        let mut counts = vec![0usize; e as usize];
        for b in self.beads_head(k) {
            if b >= floor {
                counts[b.rem_euclid(e) as usize] += 1;
            }
        }
        (floor, counts)
    }

    /// Pushes every bead as high as it will go on its runner.
    pub fn core(&self) -> AbacusDisplay {
        let e = match self.e {
            Modulus::Finite(e) => e as i64,
            Modulus::Infinite => return self.clone(),
        };
        let (floor, counts) = self.runner_counts(e);
        let mut beads = Vec::new();
        for (y, &count) in counts.iter().enumerate() {
            for row in 0..count as i64 {
                beads.push(floor + y as i64 + row * e);
            }
        }
        AbacusDisplay::new(self.window_partition(beads), self.charge, self.e)
    }
}

pub(crate) fn runner_of(e: Modulus, z: i64) -> i64 {
    match e {
        Modulus::Finite(e) => z.rem_euclid(e as i64),
        Modulus::Infinite => z,
    }
}

pub fn to_abacus(lambda: &Partition, charge: i64, e: Modulus) -> AbacusDisplay {
    AbacusDisplay::new(lambda.clone(), charge, e)
}

pub fn from_abacus(d: &AbacusDisplay) -> Partition {
    d.partition().clone()
}

/// The `e`-core; `λ` itself when `e = ∞`. The result does not depend on
/// the charge.
pub fn e_core(lambda: &Partition, charge: i64, e: Modulus) -> Partition {
    to_abacus(lambda, charge, e).core().into_partition()
}

/// Number of `e`-hooks removed to reach the core; 0 when `e = ∞`.
pub fn e_weight(lambda: &Partition, e: Modulus) -> usize {
    match e {
        Modulus::Finite(m) => (lambda.size() - e_core(lambda, 0, e).size()) / m as usize,
        Modulus::Infinite => 0,
    }
}

pub fn is_core(lambda: &Partition, e: Modulus) -> bool {
    e_weight(lambda, e) == 0
}

/// Componentwise `e`-core.
pub fn multicore(lambda: &Multipartition, charges: &[i64], e: Modulus) -> Multipartition {
    let comps = lambda
        .components()
        .iter()
        .enumerate()
        .map(|(a, p)| e_core(p, charges.get(a).copied().unwrap_or(0), e))
        .collect();
    Multipartition::new(comps).expect("same number of components")
}

pub fn multiweight(lambda: &Multipartition, e: Modulus) -> usize {
    lambda.components().iter().map(|p| e_weight(p, e)).sum()
}

pub fn is_multicore(lambda: &Multipartition, e: Modulus) -> bool {
    lambda.components().iter().all(|p| is_core(p, e))
}

fn check_charges(lambda: &Multipartition, charges: &[i64]) -> Result<()> {
    if charges.len() != lambda.r() {
        return Err(Error::ComponentMismatch {
            left: lambda.r(),
            right: charges.len(),
        });
    }
    Ok(())
}

fn check_comp(lambda: &Multipartition, a: usize) -> Result<()> {
    if a == 0 || a > lambda.r() {
        return Err(Error::ComponentOutOfRange { comp: a, r: lambda.r() });
    }
    Ok(())
}

/// `t^a_{iw}`: moves the lowest bead on runner `i` of component `a` down
/// `w` rows, wrapping `w` hooks of length `e` onto `λ^{(a)}`.
pub fn t_move(
    lambda: &Multipartition,
    charges: &[i64],
    e: Modulus,
    a: usize,
    i: i64,
    w: usize,
) -> Result<Multipartition> {
    let m = match e {
        Modulus::Finite(m) => m as i64,
        Modulus::Infinite => return Err(Error::InfiniteE("t_move")),
    };
    check_charges(lambda, charges)?;
    check_comp(lambda, a)?;
    if w == 0 {
        return Ok(lambda.clone());
    }
    let d = to_abacus(lambda.component(a), charges[a - 1], e);
    let z = d.lowest_bead_on_runner(i)?;
    let moved = d.move_bead(z, z + w as i64 * m)?;
    Ok(lambda.with_component(a, moved.into_partition()))
}

/// `s^{ab}_{ij}` on a multicore.
///
/// For finite `e`, `i` and `j` are runners: component `a` loses a bead on
/// runner `i` and gains one on runner `j`, component `b` the reverse, and
/// the result is pushed back to a multicore. Realized by removing the
/// lowest bead on the source runner and filling the first gap on the
/// target runner. For `e = ∞`, `i` and `j` are positions.
pub fn s_move(
    lambda: &Multipartition,
    charges: &[i64],
    e: Modulus,
    (a, b): (usize, usize),
    (i, j): (i64, i64),
) -> Result<Multipartition> {
    check_charges(lambda, charges)?;
    check_comp(lambda, a)?;
    check_comp(lambda, b)?;
    if a == b {
        return Err(Error::SMove(format!("components must differ, got a = b = {a}")));
    }
    if !is_multicore(lambda, e) {
        return Err(Error::NotMulticore);
    }
    let da = to_abacus(lambda.component(a), charges[a - 1], e);
    let db = to_abacus(lambda.component(b), charges[b - 1], e);
    let (na, nb) = match e {
        Modulus::Finite(m) => {
            let m = m as i64;
            if !(0..m).contains(&i) || !(0..m).contains(&j) || i == j {
                return Err(Error::SMove(format!(
                    "runners must be distinct and in [0,{m}), got i={i}, j={j}"
                )));
            }
            (shift_runner(&da, i, j, m)?, shift_runner(&db, j, i, m)?)
        }
        Modulus::Infinite => {
            if !(da.has_bead(i) && !da.has_bead(j)) {
                return Err(Error::SMove(format!(
                    "component {a} needs a bead at {i} and a gap at {j}"
                )));
            }
            if !(db.has_bead(j) && !db.has_bead(i)) {
                return Err(Error::SMove(format!(
                    "component {b} needs a bead at {j} and a gap at {i}"
                )));
            }
            (da.move_bead(i, j)?, db.move_bead(j, i)?)
        }
    };
    Ok(lambda
        .with_component(a, na.into_partition())
        .with_component(b, nb.into_partition()))
}

fn shift_runner(d: &AbacusDisplay, from: i64, to: i64, e: i64) -> Result<AbacusDisplay> {
    let src = d.lowest_bead_on_runner(from)?;
    let dst = d.lowest_bead_on_runner(to)? + e;
    d.move_bead(src, dst)
}

/// Default window of rows for [`MultiAbacus::render_ascii`].
pub const DEFAULT_ROWS: (i64, i64) = (-4, 2);
/// Default window of positions when `e = ∞`.
pub const DEFAULT_POSITIONS: (i64, i64) = (-8, 8);

/// The `r`-tuple of displays of a multipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiAbacus {
    e: Modulus,
    displays: Vec<AbacusDisplay>,
}

impl MultiAbacus {
    pub fn new(lambda: &Multipartition, charges: &[i64], e: Modulus) -> Result<Self> {
        check_charges(lambda, charges)?;
        let displays = lambda
            .components()
            .iter()
            .zip(charges)
            .map(|(p, &c)| to_abacus(p, c, e))
            .collect();
        Ok(MultiAbacus { e, displays })
    }

    pub fn displays(&self) -> &[AbacusDisplay] {
        &self.displays
    }

    /// Text picture of the displays, one block per component.
    ///
    /// For finite `e` the window `lo..=hi` is in rows, drawn with the
    /// highest row on top so the filled region sits at the bottom; runners
    /// are columns. For `e = ∞` the window is in positions and a single
    /// row is drawn. `-` is a bead, `.` a gap.
    pub fn render_ascii(&self, lo: i64, hi: i64) -> String {
        let mut out = String::new();
        for (a, d) in self.displays.iter().enumerate() {
            if a > 0 {
                out.push('\n');
            }
            out.push_str(&format!("component {} (charge {})\n", a + 1, d.charge()));
            match self.e {
                Modulus::Finite(e) => {
                    let e = e as i64;
                    let header: Vec<String> = (0..e).map(|y| format!("{y:>2}")).collect();
                    out.push_str(&format!("{:>5}{}\n", "", header.join("")));
                    for row in (lo..=hi).rev() {
                        let cells: Vec<String> = (0..e)
                            .map(|y| format!("{:>2}", glyph(d.has_bead(row * e + y))))
                            .collect();
                        out.push_str(&format!("{row:>4} {}\n", cells.join("")));
                    }
                }
                Modulus::Infinite => {
                    let header: Vec<String> = (lo..=hi).map(|z| format!("{z:>3}")).collect();
                    out.push_str(&format!("{:>5}{}\n", "", header.join("")));
                    let cells: Vec<String> =
                        (lo..=hi).map(|z| format!("{:>3}", glyph(d.has_bead(z)))).collect();
                    out.push_str(&format!("{:>4} {}\n", 0, cells.join("")));
                }
            }
        }
        out
    }

    pub fn render_default(&self) -> String {
        let (lo, hi) = match self.e {
            Modulus::Finite(_) => DEFAULT_ROWS,
            Modulus::Infinite => DEFAULT_POSITIONS,
        };
        self.render_ascii(lo, hi)
    }
}

fn glyph(bead: bool) -> char {
    if bead {
        '-'
    } else {
        '.'
    }
}

/// Bead positions in `[lo, hi]`, used to compare displays over a window.
pub fn window_beads(d: &AbacusDisplay, lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).filter(|&z| d.has_bead(z)).collect()
}
