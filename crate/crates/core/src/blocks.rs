//! Block partitions of `Λ⁺_{r,n}` by residue and Jantzen equivalence,
//! the theorem check comparing them, and Morita splitting by parameter
//! orbits.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jantzen::{nu_p_prime, Foot, FootValuation, JantzenContext, JantzenMatrix, DEFAULT_SEED};
use crate::modulus::Modulus;
use crate::partition::{Multipartition, Universe};
use crate::residue::{content_vector, Regime, Residue};

/// Disjoint sets over `0..n`; the root of every set is its smallest member.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn into_partition(mut self) -> BlockPartition {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        BlockPartition {
            classes: by_root.into_values().collect(),
        }
    }
}

/// Classes of indices into an enumeration, each sorted, ordered by their
/// smallest member (the representative).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    classes: Vec<Vec<usize>>,
}

impl BlockPartition {
    /// Groups `0..keys.len()` by equal keys.
    pub fn from_keys<K: std::hash::Hash + Eq>(keys: &[K]) -> Self {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let mut uf = UnionFind::new(keys.len());
        for (i, k) in keys.iter().enumerate() {
            match first.get(k) {
                Some(&j) => uf.union(i, j),
                None => {
                    first.insert(k, i);
                }
            }
        }
        uf.into_partition()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Class index of every element.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut labels = vec![0; n];
        for (k, class) in self.classes.iter().enumerate() {
            for &i in class {
                labels[i] = k;
            }
        }
        labels
    }

    /// Classes as multipartitions.
    pub fn resolve(&self, universe: &Universe) -> Vec<Vec<Multipartition>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&i| universe.get(i).clone()).collect())
            .collect()
    }
}

pub fn blocks_by_residue(regime: &Regime, n: usize) -> Result<BlockPartition> {
    blocks_by_residue_in(regime, &Universe::new(regime.r(), n))
}

pub fn blocks_by_residue_in(regime: &Regime, universe: &Universe) -> Result<BlockPartition> {
    let keys = universe
        .members()
        .iter()
        .map(|l| content_vector(l, regime))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockPartition::from_keys(&keys))
}

/// Connected components of the symmetrized relation `J_{λμ} ≠ 0`.
pub fn components_of(matrix: &JantzenMatrix) -> BlockPartition {
    let mut uf = UnionFind::new(matrix.size());
    for ((i, j), _) in matrix.nonzero() {
        uf.union(i, j);
    }
    uf.into_partition()
}

pub fn blocks_by_jantzen(regime: &Regime, n: usize) -> Result<BlockPartition> {
    blocks_by_jantzen_in(regime, &JantzenContext::new(regime.r(), n), DEFAULT_SEED)
}

pub fn blocks_by_jantzen_in(regime: &Regime, ctx: &JantzenContext, seed: u64) -> Result<BlockPartition> {
    Ok(components_of(&ctx.audited_matrix(regime, seed)?))
}

/// First pair `i < j` on which two partitions disagree.
pub fn first_disagreement(a: &BlockPartition, b: &BlockPartition) -> Option<(usize, usize)> {
    let (la, lb) = (a.labels(), b.labels());
    for j in 0..la.len() {
        for i in 0..j {
            if (la[i] == la[j]) != (lb[i] == lb[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub residue_equivalent: bool,
    pub jantzen_equivalent: bool,
}

/// Outcome of comparing `∼_J` with `∼_C` on one `(regime, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub regime: Regime,
    pub n: usize,
    pub by_residue: BlockPartition,
    pub by_jantzen: BlockPartition,
    pub equal: bool,
    pub witness: Option<Witness>,
}

pub fn verify_theorem(regime: &Regime, n: usize) -> Result<TheoremReport> {
    verify_theorem_in(regime, &JantzenContext::new(regime.r(), n), DEFAULT_SEED)
}

pub fn verify_theorem_in(regime: &Regime, ctx: &JantzenContext, seed: u64) -> Result<TheoremReport> {
    let by_residue = blocks_by_residue_in(regime, ctx.universe())?;
    let by_jantzen = blocks_by_jantzen_in(regime, ctx, seed)?;
    let witness = first_disagreement(&by_residue, &by_jantzen).map(|(i, j)| {
        let (lr, lj) = (by_residue.labels(), by_jantzen.labels());
        Witness {
            lambda: ctx.universe().get(i).clone(),
            mu: ctx.universe().get(j).clone(),
            residue_equivalent: lr[i] == lr[j],
            jantzen_equivalent: lj[i] == lj[j],
        }
    });
    Ok(TheoremReport {
        regime: regime.clone(),
        n: ctx.n(),
        equal: witness.is_none(),
        by_residue,
        by_jantzen,
        witness,
    })
}

/// A symbolic parameter `Q_a`: zero, or `ℓ·q^c` for an orbit label `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parameter {
    Zero,
    Orbit { label: String, exponent: i64 },
}

impl Parameter {
    pub fn orbit(label: &str, exponent: i64) -> Self {
        Parameter::Orbit {
            label: label.to_string(),
            exponent,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Zero => f.write_str("0"),
            Parameter::Orbit { label, exponent } => write!(f, "{label}q^{exponent}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum GroupKey {
    Zero,
    Orbit(String),
}

fn group_key(p: &Parameter) -> GroupKey {
    match p {
        Parameter::Zero => GroupKey::Zero,
        Parameter::Orbit { label, .. } => GroupKey::Orbit(label.clone()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterSystem {
    params: Vec<Parameter>,
}

impl ParameterSystem {
    pub fn new(params: Vec<Parameter>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::NoComponents);
        }
        Ok(ParameterSystem { params })
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    pub fn r(&self) -> usize {
        self.params.len()
    }

    /// 0-based component indices per group, groups in order of first
    /// occurrence.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut order: Vec<GroupKey> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (a, p) in self.params.iter().enumerate() {
            let key = group_key(p);
            match order.iter().position(|k| *k == key) {
                Some(g) => groups[g].push(a),
                None => {
                    order.push(key);
                    groups.push(vec![a]);
                }
            }
        }
        groups
    }

    /// The regime of a system whose parameters form a single group,
    /// for `q ≠ 1` of order `e` in characteristic `p`.
    pub fn single_group_regime(&self, e: Modulus, p: Modulus) -> Result<Regime> {
        if self.groups().len() != 1 {
            return Err(Error::Regime("parameters span more than one orbit".into()));
        }
        match &self.params[0] {
            Parameter::Zero if self.r() == 1 => Regime::case1(e, p, vec![0]),
            Parameter::Zero => Regime::case5(e, p, self.r()),
            Parameter::Orbit { .. } => Regime::case1(
                e,
                p,
                self.params
                    .iter()
                    .map(|q| match q {
                        Parameter::Orbit { exponent, .. } => *exponent,
                        Parameter::Zero => unreachable!("single group"),
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaComponent {
    /// 1-based components of the original system.
    pub indices: Vec<usize>,
    pub system: ParameterSystem,
    pub multipartition: Multipartition,
}

/// Splits the system into orbit groups and `λ` into the matching
/// subsequences of components.
pub fn morita_components(system: &ParameterSystem, lambda: &Multipartition) -> Result<Vec<MoritaComponent>> {
    if lambda.r() != system.r() {
        return Err(Error::ComponentMismatch {
            left: lambda.r(),
            right: system.r(),
        });
    }
    Ok(system
        .groups()
        .into_iter()
        .map(|g| MoritaComponent {
            indices: g.iter().map(|a| a + 1).collect(),
            system: ParameterSystem {
                params: g.iter().map(|&a| system.params[a].clone()).collect(),
            },
            multipartition: Multipartition::new(
                g.iter().map(|&a| lambda.components()[a].clone()).collect(),
            )
            .expect("non-empty group"),
        })
        .collect())
}

/// Residues and valuations for a general parameter system with `q ≠ 1`,
/// used to check that blocks factor over orbit groups.
///
/// Nodes in different groups never share a residue and their hooks have
/// unit residue differences. Inside an orbit group the rules are those of
/// case 1 with the exponents as charges; a group of two or more zero
/// parameters follows case 5, and a lone zero parameter follows `r = 1`
/// case 1.
#[derive(Clone, Debug)]
pub struct OrbitModel {
    system: ParameterSystem,
    e: Modulus,
    p: Modulus,
    group_of: Vec<usize>,
    group_sizes: Vec<usize>,
}

impl OrbitModel {
    pub fn new(system: ParameterSystem, e: Modulus, p: Modulus) -> Result<Self> {
        // Validates (e, p) for q ≠ 1.
        Regime::case1(e, p, vec![0])?;
        let groups = system.groups();
        let mut group_of = vec![0; system.r()];
        for (g, members) in groups.iter().enumerate() {
            for &a in members {
                group_of[a] = g;
            }
        }
        Ok(OrbitModel {
            group_sizes: groups.iter().map(Vec::len).collect(),
            system,
            e,
            p,
            group_of,
        })
    }

    pub fn system(&self) -> &ParameterSystem {
        &self.system
    }

    fn residue_key(&self, comp: usize, content: i64) -> (usize, Residue) {
        let g = self.group_of[comp - 1];
        let r = match &self.system.params[comp - 1] {
            Parameter::Orbit { exponent, .. } => Residue::Int(self.e.reduce(content + exponent)),
            Parameter::Zero if self.group_sizes[g] == 1 => Residue::Int(self.e.reduce(content)),
            Parameter::Zero => Residue::Bullet,
        };
        (g, r)
    }

    pub fn content_key(&self, lambda: &Multipartition) -> BTreeMap<(usize, Residue), usize> {
        let mut counts = BTreeMap::new();
        for x in lambda.nodes() {
            *counts.entry(self.residue_key(x.comp, x.content())).or_insert(0) += 1;
        }
        counts
    }
}

impl FootValuation for OrbitModel {
    fn nu_pi(&self, x: Foot, y: Foot, n: usize) -> Result<u64> {
        let (px, py) = (&self.system.params[x.comp - 1], &self.system.params[y.comp - 1]);
        if group_key(px) != group_key(py) {
            return Ok(0);
        }
        let h = n as i64 * (x.comp as i64 - y.comp as i64) + x.content - y.content;
        match (px, py) {
            (Parameter::Orbit { exponent: cx, .. }, Parameter::Orbit { exponent: cy, .. }) => {
                if self.e.divides(x.content + cx - y.content - cy) {
                    nu_p_prime(h, self.p)
                } else {
                    Ok(0)
                }
            }
            _ => {
                if self.e.divides(x.content - y.content) {
                    Ok(1 + nu_p_prime(h, self.p)?)
                } else {
                    Ok(1)
                }
            }
        }
    }
}

pub fn model_blocks_by_residue(model: &OrbitModel, universe: &Universe) -> BlockPartition {
    let keys: Vec<_> = universe.members().iter().map(|l| model.content_key(l)).collect();
    BlockPartition::from_keys(&keys)
}

pub fn model_blocks_by_jantzen(model: &OrbitModel, ctx: &JantzenContext) -> Result<BlockPartition> {
    Ok(components_of(&ctx.matrix(model)?))
}

/// Checks, over `Λ⁺_{r,n}`, that `λ ∼ μ` in the full system exactly when
/// the group sizes match and every group's pieces are equivalent in the
/// group's own system. Runs for `∼_C` and `∼_J`; returns the first
/// offending pair, if any.
pub fn morita_factorization_failure(
    model: &OrbitModel,
    n: usize,
) -> Result<Option<(Multipartition, Multipartition)>> {
    let ctx = JantzenContext::new(model.system.r(), n);
    let universe = ctx.universe();
    let full_c = model_blocks_by_residue(model, universe).labels();
    let full_j = model_blocks_by_jantzen(model, &ctx)?.labels();

    // Per-member split into groups, and per group a lookup of block labels
    // at every size.
    let splits: Vec<Vec<MoritaComponent>> = universe
        .members()
        .iter()
        .map(|l| morita_components(&model.system, l))
        .collect::<Result<_>>()?;
    let mut sub_labels: HashMap<(usize, usize), (Universe, Vec<usize>, Vec<usize>)> = HashMap::new();
    let groups = model.system.groups();
    for (g, members) in groups.iter().enumerate() {
        let sub_system = ParameterSystem {
            params: members.iter().map(|&a| model.system.params[a].clone()).collect(),
        };
        let regime = sub_system.single_group_regime(model.e, model.p)?;
        for m in 0..=n {
            let sub_ctx = JantzenContext::new(members.len(), m);
            let c = blocks_by_residue_in(&regime, sub_ctx.universe())?.labels();
            let j = components_of(&sub_ctx.matrix(&regime)?).labels();
            sub_labels.insert((g, m), (sub_ctx.universe().clone(), c, j));
        }
    }
    let sub_key = |k: usize, which: usize| -> Vec<(usize, usize)> {
        splits[k]
            .iter()
            .enumerate()
            .map(|(g, piece)| {
                let m = piece.multipartition.size();
                let (u, c, j) = &sub_labels[&(g, m)];
                let idx = u.index_of(&piece.multipartition).expect("member of sub-universe");
                (m, if which == 0 { c[idx] } else { j[idx] })
            })
            .collect()
    };
    let keys_c: Vec<_> = (0..universe.len()).map(|k| sub_key(k, 0)).collect();
    let keys_j: Vec<_> = (0..universe.len()).map(|k| sub_key(k, 1)).collect();
    for j in 0..universe.len() {
        for i in 0..j {
            let ok_c = (full_c[i] == full_c[j]) == (keys_c[i] == keys_c[j]);
            let ok_j = (full_j[i] == full_j[j]) == (keys_j[i] == keys_j[j]);
            if !ok_c || !ok_j {
                return Ok(Some((universe.get(i).clone(), universe.get(j).clone())));
            }
        }
    }
    Ok(None)
}
