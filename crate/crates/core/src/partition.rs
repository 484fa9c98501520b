//! Partitions, multipartitions and their diagrams.
//!
//! Rows, columns and components are all 1-based. A node `(i, j, a)` lies in
//! the diagram `[λ]` when `1 ≤ j ≤ λ^{(a)}_i`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub(crate) fn from_trusted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` for a 1-based row index; zero beyond the last row.
    pub fn part(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Length of column `col` (1-based), i.e. `λ'_col`.
    pub fn column_len(&self, col: usize) -> usize {
        if col == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= col).count()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && col <= self.part(row)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition::from_trusted((1..=width).map(|c| self.column_len(c)).collect())
    }

    /// Classical hook length `λ_i - j + λ'_j - i + 1`.
    pub fn hook_length(&self, row: usize, col: usize) -> usize {
        debug_assert!(self.contains_cell(row, col));
        self.part(row) + self.column_len(col) + 1 - col - row
    }

    /// Whether `[other] ⊆ [self]`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// All partitions `μ ⊃ λ` such that `[μ] \ [λ]` is a rim hook of length `h`,
    /// each paired with the hand node `(row, col)` of the added hook.
    pub fn wraps(&self, h: usize) -> Vec<(Partition, usize, usize)> {
        if h == 0 {
            return Vec::new();
        }
        // β-numbers with charge 0; every position below -(len + h) is occupied
        // and no bead further down can land on a vacancy.
        let window = self.len() + h;
        let beads: Vec<i64> = (1..=window)
            .map(|k| self.part(k) as i64 - k as i64)
            .collect();
        let mut out = Vec::new();
        for &b in &beads {
            let target = b + h as i64;
            if beads.contains(&target) {
                continue;
            }
            let mut moved: Vec<i64> = beads
                .iter()
                .map(|&x| if x == b { target } else { x })
                .collect();
            moved.sort_unstable_by(|x, y| y.cmp(x));
            let row = moved.iter().position(|&x| x == target).unwrap() + 1;
            let parts = moved
                .iter()
                .enumerate()
                .map(|(k, &x)| (x + k as i64 + 1) as usize)
                .collect();
            let col = (target + row as i64) as usize;
            out.push((Partition::from_trusted(parts), row, col));
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Enumerates the partitions of `n` in reverse-lexicographic order,
/// `(n)` first and `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_trusted(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A cell `(row, col, comp)` of a multipartition diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }

    /// `j - i`, the content of the node without its component's charge.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// The rim hook `r^λ_x` determined by a node `x ∈ [λ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RimHook {
    pub origin: Node,
    /// Cells, sorted by row then column.
    pub cells: Vec<Node>,
    /// Lowest cell of the hook, in the origin's column.
    pub foot: Node,
    /// Rightmost cell of the hook's top row.
    pub hand: Node,
    pub length: usize,
    pub leg: usize,
}

/// An ordered `r`-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Partition>", into = "Vec<Partition>")]
pub struct Multipartition {
    components: Vec<Partition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Greater,
    Equal,
    Less,
    Incomparable,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::NoComponents);
        }
        Ok(Multipartition { components })
    }

    /// The multipartition with `r` empty components.
    pub fn empty(r: usize) -> Self {
        assert!(r >= 1);
        Multipartition {
            components: vec![Partition::empty(); r],
        }
    }

    /// Convenience constructor from raw part lists.
    pub fn from_parts(components: &[&[usize]]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|c| Partition::new(c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(comps)
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// Component `a` (1-based).
    pub fn component(&self, a: usize) -> &Partition {
        &self.components[a - 1]
    }

    pub fn with_component(&self, a: usize, p: Partition) -> Multipartition {
        let mut components = self.components.clone();
        components[a - 1] = p;
        Multipartition { components }
    }

    pub fn into_components(self) -> Vec<Partition> {
        self.components
    }

    pub fn contains(&self, x: Node) -> bool {
        x.comp >= 1 && x.comp <= self.r() && self.components[x.comp - 1].contains_cell(x.row, x.col)
    }

    /// Nodes of `[λ]`, component by component, row by row.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.components.iter().enumerate().flat_map(|(a, p)| {
            p.parts()
                .iter()
                .enumerate()
                .flat_map(move |(i, &len)| (1..=len).map(move |j| Node::new(i + 1, j, a + 1)))
        })
    }

    fn check_node(&self, x: Node) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NodeNotInDiagram(x))
        }
    }

    pub fn rim_hook(&self, x: Node) -> Result<RimHook> {
        self.check_node(x)?;
        let p = self.component(x.comp);
        let foot_row = p.column_len(x.col);
        let mut cells = Vec::new();
        for k in x.row..=foot_row {
            let lo = x.col.max(p.part(k + 1));
            for l in lo..=p.part(k) {
                cells.push(Node::new(k, l, x.comp));
            }
        }
        Ok(RimHook {
            origin: x,
            length: cells.len(),
            cells,
            foot: Node::new(foot_row, x.col, x.comp),
            hand: Node::new(x.row, p.part(x.row), x.comp),
            leg: foot_row - x.row,
        })
    }

    /// Removes the rim hook `r^λ_x`.
    pub fn unwrap(&self, x: Node) -> Result<Multipartition> {
        self.check_node(x)?;
        Ok(self.with_component(x.comp, unwrap_partition(self.component(x.comp), x.row, x.col)))
    }

    /// The multipartition obtained by wrapping an `h`-rim hook onto component
    /// `a` with its hand node in column `m`, if such a wrap exists.
    pub fn wrap_with_hand_in_column(&self, a: usize, m: usize, h: usize) -> Option<Multipartition> {
        if a == 0 || a > self.r() || m == 0 || h == 0 {
            return None;
        }
        self.component(a)
            .wraps(h)
            .into_iter()
            .find(|(_, _, col)| *col == m)
            .map(|(p, _, _)| self.with_component(a, p))
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (a, p) in self.components.iter().enumerate() {
            for i in 1..=p.len() {
                if p.part(i) > p.part(i + 1) {
                    out.push(Node::new(i, p.part(i), a + 1));
                }
            }
        }
        out
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (a, p) in self.components.iter().enumerate() {
            for i in 1..=p.len() + 1 {
                if i == 1 || p.part(i - 1) > p.part(i) {
                    out.push(Node::new(i, p.part(i) + 1, a + 1));
                }
            }
        }
        out
    }

    fn check_comparable(&self, other: &Multipartition) -> Result<()> {
        if self.r() != other.r() {
            return Err(Error::ComponentMismatch {
                left: self.r(),
                right: other.r(),
            });
        }
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }

    /// Compares two multipartitions in the dominance order.
    pub fn dominance_compare(&self, other: &Multipartition) -> Result<Dominance> {
        self.check_comparable(other)?;
        let (mut ge, mut le) = (true, true);
        let (mut left, mut right) = (0usize, 0usize);
        for (lp, rp) in self.components.iter().zip(&other.components) {
            for i in 1..=lp.len().max(rp.len()) {
                left += lp.part(i);
                right += rp.part(i);
                match left.cmp(&right) {
                    Ordering::Less => ge = false,
                    Ordering::Greater => le = false,
                    Ordering::Equal => {}
                }
            }
            if !ge && !le {
                return Ok(Dominance::Incomparable);
            }
        }
        Ok(match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// `λ ⊳ μ`: dominates and differs.
    pub fn strictly_dominates(&self, other: &Multipartition) -> Result<bool> {
        Ok(self.dominance_compare(other)? == Dominance::Greater)
    }
}

/// Removes the rim hook with top row `row` and foot column `col` from `p`.
pub(crate) fn unwrap_partition(p: &Partition, row: usize, col: usize) -> Partition {
    let foot_row = p.column_len(col);
    let mut parts = p.parts().to_vec();
    for k in row..foot_row {
        parts[k - 1] = p.part(k + 1) - 1;
    }
    parts[foot_row - 1] = col - 1;
    Partition::from_trusted(parts)
}

impl TryFrom<Vec<Partition>> for Multipartition {
    type Error = Error;

    fn try_from(components: Vec<Partition>) -> Result<Self> {
        Multipartition::new(components)
    }
}

impl From<Multipartition> for Vec<Partition> {
    fn from(m: Multipartition) -> Self {
        m.components
    }
}

/// Command-line literal: components separated by `|`, parts by `,`.
impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        f.write_str(&comps.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split('|')
            .map(|c| {
                let c = c.trim();
                if c.is_empty() {
                    return Ok(Partition::empty());
                }
                let parts = c
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Partition::new(parts)
            })
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(comps)
    }
}

/// Enumerates `Λ⁺_{r,n}`.
///
/// Order: compositions `(n_1, …, n_r)` of `n` with `n_1` decreasing first
/// (so `((n), (), …)` comes first), then the product of the component
/// partition lists with the first component varying slowest, each list in
/// reverse-lexicographic order.
pub fn enumerate_multipartitions(r: usize, n: usize) -> Vec<Multipartition> {
    assert!(r >= 1, "r must be positive");
    let tables: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; r];
    compositions(n, 0, &mut sizes, &mut |sizes| {
        let mut current: Vec<Partition> = Vec::with_capacity(r);
        product(&tables, sizes, &mut current, &mut out);
    });
    out
}

fn compositions(remaining: usize, idx: usize, sizes: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if idx + 1 == sizes.len() {
        sizes[idx] = remaining;
        f(sizes);
        return;
    }
    for k in (0..=remaining).rev() {
        sizes[idx] = k;
        compositions(remaining - k, idx + 1, sizes, f);
    }
}

fn product(
    tables: &[Vec<Partition>],
    sizes: &[usize],
    current: &mut Vec<Partition>,
    out: &mut Vec<Multipartition>,
) {
    if current.len() == sizes.len() {
        out.push(Multipartition {
            components: current.clone(),
        });
        return;
    }
    for p in &tables[sizes[current.len()]] {
        current.push(p.clone());
        product(tables, sizes, current, out);
        current.pop();
    }
}

/// `Λ⁺_{r,n}` in enumeration order with an index lookup.
#[derive(Clone, Debug)]
pub struct Universe {
    r: usize,
    n: usize,
    members: Vec<Multipartition>,
    index: HashMap<Multipartition, usize>,
}

impl Universe {
    pub fn new(r: usize, n: usize) -> Self {
        let members = enumerate_multipartitions(r, n);
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Universe { r, n, members, index }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Multipartition] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &Multipartition {
        &self.members[i]
    }

    pub fn index_of(&self, m: &Multipartition) -> Option<usize> {
        self.index.get(m).copied()
    }
}
