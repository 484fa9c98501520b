//! Jantzen coefficients: the defining signed sum (oracle) and a fast path
//! that locates the at most two contributing hook pairs on the abacus.

use std::collections::{BTreeMap, HashMap};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::modulus::Modulus;
use crate::partition::{Dominance, Multipartition, Node, Partition, Universe};
use crate::residue::Regime;

/// Largest power of `p` dividing `h` (1 when `p = ∞`).
pub fn nu_p_prime(h: i64, p: Modulus) -> Result<u64> {
    if h == 0 {
        return Err(Error::ZeroValuation);
    }
    match p {
        Modulus::Infinite => Ok(1),
        Modulus::Finite(p) => {
            let p = p as i64;
            let (mut h, mut power) = (h.abs(), 1u64);
            while h % p == 0 {
                h /= p;
                power *= p as u64;
            }
            Ok(power)
        }
    }
}

/// The foot of a rim hook: its component and its content `j - i`
/// (without charge).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Foot {
    pub comp: usize,
    pub content: i64,
}

impl Foot {
    pub fn of(node: Node) -> Self {
        Foot {
            comp: node.comp,
            content: node.content(),
        }
    }
}

/// `ν_π(res_O(f_x) − res_O(f_y))` for two feet of hooks with a common
/// complement in multipartitions of `n`.
pub trait FootValuation {
    fn nu_pi(&self, x: Foot, y: Foot, n: usize) -> Result<u64>;
}

/// Writing `h = n(a−b) + c_x − c_y`:
///
/// * case 1: `ν′_p(h)` if the foot residues agree, else 0;
/// * cases 2, 3: `ν′_p(h)`;
/// * case 4: `1 + ν′_p(h)`;
/// * case 5: `1 + ν′_p(h)` if `e | c_x − c_y`, else 1.
impl FootValuation for Regime {
    fn nu_pi(&self, x: Foot, y: Foot, n: usize) -> Result<u64> {
        let h = n as i64 * (x.comp as i64 - y.comp as i64) + x.content - y.content;
        let guard = match self.case() {
            1 => {
                let c = self.charges();
                self.e()
                    .divides(x.content + c[x.comp - 1] - y.content - c[y.comp - 1])
            }
            5 => self.e().divides(x.content - y.content),
            _ => true,
        };
        let eps = self.epsilon();
        if !guard {
            return Ok(eps);
        }
        Ok(nu_p_prime(h, self.p())? + eps)
    }
}

/// `ν_π` for the pair `(x, y)`, requiring `[λ] \ r_x = [μ] \ r_y`.
pub fn nu_pi_difference(
    lambda: &Multipartition,
    x: Node,
    mu: &Multipartition,
    y: Node,
    val: &impl FootValuation,
) -> Result<u64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    if lambda.unwrap(x)? != mu.unwrap(y)? {
        return Err(Error::ComplementMismatch);
    }
    let fx = lambda.rim_hook(x)?.foot;
    let fy = mu.rim_hook(y)?.foot;
    val.nu_pi(Foot::of(fx), Foot::of(fy), lambda.size())
}

/// One `(x, y)` summand: sign `(−1)^{leg+leg}` and the two feet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub sign: i8,
    pub x: Foot,
    pub y: Foot,
}

pub fn evaluate_terms(terms: &[Term], val: &impl FootValuation, n: usize) -> Result<i64> {
    let mut total = 0i64;
    for t in terms {
        total += t.sign as i64 * val.nu_pi(t.x, t.y, n)? as i64;
    }
    Ok(total)
}

fn check_pair(lambda: &Multipartition, mu: &Multipartition) -> Result<bool> {
    Ok(lambda.dominance_compare(mu)? == Dominance::Greater)
}

fn sign(leg_sum: usize) -> i8 {
    if leg_sum.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The summands of the defining double sum, found by enumerating every
/// `x ∈ [λ]` and `y ∈ [μ]` and comparing complements. Empty unless
/// `λ ⊳ μ`.
pub fn oracle_terms(lambda: &Multipartition, mu: &Multipartition) -> Result<Vec<Term>> {
    if !check_pair(lambda, mu)? {
        return Ok(Vec::new());
    }
    let hooks_mu: Vec<_> = mu
        .nodes()
        .map(|y| (mu.unwrap(y).unwrap(), mu.rim_hook(y).unwrap()))
        .collect();
    let mut terms = Vec::new();
    for x in lambda.nodes() {
        let rx = lambda.rim_hook(x)?;
        let cx = lambda.unwrap(x)?;
        for (cy, ry) in &hooks_mu {
            if *cy == cx {
                terms.push(Term {
                    sign: sign(rx.leg + ry.leg),
                    x: Foot::of(rx.foot),
                    y: Foot::of(ry.foot),
                });
            }
        }
    }
    Ok(terms)
}

/// `J_{λμ}` by the defining sum.
pub fn jantzen_bruteforce(
    lambda: &Multipartition,
    mu: &Multipartition,
    val: &impl FootValuation,
) -> Result<i64> {
    let terms = oracle_terms(lambda, mu)?;
    evaluate_terms(&terms, val, lambda.size())
}

/// β-numbers (charge 0) of `p` over the first `k` rows.
fn betas(p: &Partition, k: usize) -> Vec<i64> {
    (1..=k).map(|i| p.part(i) as i64 - i as i64).collect()
}

fn beads_between(beads: &[i64], lo: i64, hi: i64) -> usize {
    beads.iter().filter(|&&b| lo < b && b < hi).count()
}

/// λ-only and μ-only bead positions of two partitions, plus their beads.
struct BeadDiff {
    left: Vec<i64>,
    right: Vec<i64>,
    left_beads: Vec<i64>,
    right_beads: Vec<i64>,
}

fn bead_diff(l: &Partition, m: &Partition) -> BeadDiff {
    let k = l.len().max(m.len());
    let lb = betas(l, k);
    let mb = betas(m, k);
    BeadDiff {
        left: lb.iter().copied().filter(|b| !mb.contains(b)).collect(),
        right: mb.iter().copied().filter(|b| !lb.contains(b)).collect(),
        left_beads: lb,
        right_beads: mb,
    }
}

/// The regime-independent shape of a pair: the hook pairs that can
/// contribute to `J_{λμ}`.
///
/// * Two components `a < b` differ: `[λ^{(a)}] \ [μ^{(a)}]` and
///   `[μ^{(b)}] \ [λ^{(b)}]` must be rim hooks, giving one summand.
/// * One component differs: its abacus changes by two bead moves
///   `u₁, u₂ ↦ v₁, v₂`, and the two ways of splitting them into an unwrap
///   followed by a wrap give at most two summands.
/// * Otherwise there are none.
pub fn pair_shape(lambda: &Multipartition, mu: &Multipartition) -> Result<Vec<Term>> {
    if !check_pair(lambda, mu)? {
        return Ok(Vec::new());
    }
    Ok(shape_of_dominant_pair(lambda, mu))
}

pub(crate) fn shape_of_dominant_pair(lambda: &Multipartition, mu: &Multipartition) -> Vec<Term> {
    let differing: Vec<usize> = (1..=lambda.r())
        .filter(|&a| lambda.component(a) != mu.component(a))
        .collect();
    match differing[..] {
        [a, b] => two_component_term(lambda, mu, a, b).into_iter().collect(),
        [a] => same_component_terms(lambda.component(a), mu.component(a), a),
        _ => Vec::new(),
    }
}

fn two_component_term(lambda: &Multipartition, mu: &Multipartition, a: usize, b: usize) -> Option<Term> {
    let da = bead_diff(lambda.component(a), mu.component(a));
    let db = bead_diff(mu.component(b), lambda.component(b));
    let (&[top_a], &[low_a]) = (&da.left[..], &da.right[..]) else {
        return None;
    };
    let (&[top_b], &[low_b]) = (&db.left[..], &db.right[..]) else {
        return None;
    };
    if top_a <= low_a || top_b - low_b != top_a - low_a {
        return None;
    }
    let legs = beads_between(&da.left_beads, low_a, top_a) + beads_between(&db.left_beads, low_b, top_b);
    Some(Term {
        sign: sign(legs),
        x: Foot {
            comp: a,
            content: low_a + 1,
        },
        y: Foot {
            comp: b,
            content: low_b + 1,
        },
    })
}

fn same_component_terms(l: &Partition, m: &Partition, a: usize) -> Vec<Term> {
    let d = bead_diff(l, m);
    let (&[l1, l2], &[m1, m2]) = (&d.left[..], &d.right[..]) else {
        return Vec::new();
    };
    let mut terms = Vec::new();
    // λ = T ∪ {A, A₂}, μ = T ∪ {B, B₂}: unwrap A ↦ B₂ from λ and B ↦ A₂
    // from μ, both by the same length h.
    for (top, other_l) in [(l1, l2), (l2, l1)] {
        for (top_m, other_m) in [(m1, m2), (m2, m1)] {
            let h = top - other_m;
            if h > 0 && top_m - other_l == h {
                let legs = beads_between(&d.left_beads, other_m, top)
                    + beads_between(&d.right_beads, other_l, top_m);
                terms.push(Term {
                    sign: sign(legs),
                    x: Foot {
                        comp: a,
                        content: other_m + 1,
                    },
                    y: Foot {
                        comp: a,
                        content: other_l + 1,
                    },
                });
            }
        }
    }
    terms.sort();
    terms
}

/// `J_{λμ}` via [`pair_shape`].
pub fn jantzen_fast(lambda: &Multipartition, mu: &Multipartition, val: &impl FootValuation) -> Result<i64> {
    let terms = pair_shape(lambda, mu)?;
    evaluate_terms(&terms, val, lambda.size())
}

/// A hook of a universe member: its interned complement, foot and leg.
#[derive(Clone, Copy, Debug)]
struct HookEntry {
    complement: u32,
    foot: Foot,
    leg: u32,
}

/// Regime-independent data for `Λ⁺_{r,n}`: strict dominance, fast-path
/// shapes of every dominant pair, and the per-member hook tables used by
/// the oracle.
pub struct JantzenContext {
    universe: Universe,
    dominates: Vec<Vec<bool>>,
    shapes: Vec<(u32, u32, Vec<Term>)>,
    hooks: Vec<Vec<HookEntry>>,
}

impl JantzenContext {
    pub fn new(r: usize, n: usize) -> Self {
        let universe = Universe::new(r, n);
        let members = universe.members();
        let dominates: Vec<Vec<bool>> = members
            .iter()
            .map(|l| {
                members
                    .iter()
                    .map(|m| l.dominance_compare(m).expect("same universe") == Dominance::Greater)
                    .collect()
            })
            .collect();
        let mut shapes = Vec::new();
        for (i, l) in members.iter().enumerate() {
            for (j, m) in members.iter().enumerate() {
                if dominates[i][j] {
                    let terms = shape_of_dominant_pair(l, m);
                    if !terms.is_empty() {
                        shapes.push((i as u32, j as u32, terms));
                    }
                }
            }
        }
        let mut interner: HashMap<Multipartition, u32> = HashMap::new();
        let hooks = members
            .iter()
            .map(|l| {
                l.nodes()
                    .map(|x| {
                        let hook = l.rim_hook(x).expect("node of the diagram");
                        let comp = l.unwrap(x).expect("node of the diagram");
                        let next = interner.len() as u32;
                        let id = *interner.entry(comp).or_insert(next);
                        HookEntry {
                            complement: id,
                            foot: Foot::of(hook.foot),
                            leg: hook.leg as u32,
                        }
                    })
                    .collect()
            })
            .collect();
        JantzenContext {
            universe,
            dominates,
            shapes,
            hooks,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    /// Whether member `i` strictly dominates member `j`.
    pub fn dominates(&self, i: usize, j: usize) -> bool {
        self.dominates[i][j]
    }

    /// Dominant pairs with a non-empty fast-path shape.
    pub fn shapes(&self) -> impl Iterator<Item = (usize, usize, &[Term])> {
        self.shapes
            .iter()
            .map(|(i, j, t)| (*i as usize, *j as usize, t.as_slice()))
    }

    /// The defining-sum summands for members `i`, `j`.
    pub fn oracle_terms(&self, i: usize, j: usize) -> Vec<Term> {
        if !self.dominates[i][j] {
            return Vec::new();
        }
        let mut terms = Vec::new();
        for hx in &self.hooks[i] {
            for hy in &self.hooks[j] {
                if hx.complement == hy.complement {
                    terms.push(Term {
                        sign: sign((hx.leg + hy.leg) as usize),
                        x: hx.foot,
                        y: hy.foot,
                    });
                }
            }
        }
        terms
    }

    pub fn bruteforce(&self, i: usize, j: usize, val: &impl FootValuation) -> Result<i64> {
        evaluate_terms(&self.oracle_terms(i, j), val, self.n())
    }

    pub fn fast(&self, i: usize, j: usize, val: &impl FootValuation) -> Result<i64> {
        if !self.dominates[i][j] {
            return Ok(0);
        }
        let terms = shape_of_dominant_pair(self.universe.get(i), self.universe.get(j));
        evaluate_terms(&terms, val, self.n())
    }

    /// The non-zero coefficients, from the fast path.
    pub fn matrix(&self, val: &impl FootValuation) -> Result<JantzenMatrix> {
        let mut entries = BTreeMap::new();
        for (i, j, terms) in self.shapes() {
            let v = evaluate_terms(terms, val, self.n())?;
            if v != 0 {
                entries.insert((i, j), v);
            }
        }
        Ok(JantzenMatrix {
            size: self.universe.len(),
            entries,
        })
    }

    /// Pairs checked against the oracle: every ordered pair when `n ≤ 5`,
    /// otherwise a seeded 1% sample.
    pub fn audit_pairs(&self, seed: u64) -> Vec<(usize, usize)> {
        let len = self.universe.len();
        let total = len * len;
        if self.n() <= 5 {
            return (0..total).map(|k| (k / len, k % len)).collect();
        }
        let amount = total.div_ceil(100);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<usize> = sample(&mut rng, total, amount).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|k| (k / len, k % len)).collect()
    }

    /// [`JantzenContext::matrix`] with the audit against the oracle.
    pub fn audited_matrix(&self, val: &impl FootValuation, seed: u64) -> Result<JantzenMatrix> {
        let matrix = self.matrix(val)?;
        for (i, j) in self.audit_pairs(seed) {
            let oracle = self.bruteforce(i, j, val)?;
            let fast = matrix.get(i, j);
            if oracle != fast {
                return Err(Error::AuditMismatch {
                    lambda: self.universe.get(i).to_string(),
                    mu: self.universe.get(j).to_string(),
                    fast,
                    oracle,
                });
            }
        }
        Ok(matrix)
    }
}

/// Sparse `J_{λμ}` over the enumeration of `Λ⁺_{r,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JantzenMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl JantzenMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// The Jantzen matrix of `Λ⁺_{r,n}` for a regime, audited against the
/// defining sum.
pub fn jantzen_matrix(regime: &Regime, n: usize) -> Result<JantzenMatrix> {
    JantzenContext::new(regime.r(), n).audited_matrix(regime, DEFAULT_SEED)
}
