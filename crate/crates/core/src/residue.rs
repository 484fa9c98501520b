//! Parameter regimes, residues and the invariants built from them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::abacus::{is_multicore, multicore, multiweight};
use crate::error::{Error, Result};
use crate::modulus::{is_prime, Modulus};
use crate::partition::{Multipartition, Node, Partition, Universe};

/// One of the five parameter cases.
///
/// 1. `q ≠ 1`, `Q_a = q^{c_a}`.
/// 2. `r = 1`, `q = 1`.
/// 3. `r > 1`, `q = 1`, `Q_a = 1`.
/// 4. `r > 1`, `q = 1`, `Q_a = 0`.
/// 5. `r > 1`, `q ≠ 1`, `Q_a = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Regime {
    case: u8,
    e: Modulus,
    p: Modulus,
    r: usize,
    charges: Vec<i64>,
}

fn check_p(p: Modulus) -> Result<()> {
    match p {
        Modulus::Finite(m) if !is_prime(m) => {
            Err(Error::Regime(format!("p must be prime or inf, got {m}")))
        }
        _ => Ok(()),
    }
}

/// `q ≠ 1` of multiplicative order `e` in characteristic `p` forces `p ∤ e`.
fn check_q_not_one(e: Modulus, p: Modulus, case: u8) -> Result<()> {
    if let (Modulus::Finite(e), Modulus::Finite(p)) = (e, p) {
        if e % p == 0 {
            return Err(Error::Regime(format!(
                "case {case} requires e not divisible by p (q != 1), got e={e}, p={p}"
            )));
        }
    }
    Ok(())
}

impl Regime {
    pub fn case1(e: Modulus, p: Modulus, charges: Vec<i64>) -> Result<Self> {
        check_p(p)?;
        check_q_not_one(e, p, 1)?;
        if charges.is_empty() {
            return Err(Error::Regime("case 1 requires r >= 1 charges".into()));
        }
        Ok(Regime {
            case: 1,
            e,
            p,
            r: charges.len(),
            charges,
        })
    }

    pub fn case2(p: Modulus) -> Result<Self> {
        check_p(p)?;
        Ok(Regime {
            case: 2,
            e: p,
            p,
            r: 1,
            charges: Vec::new(),
        })
    }

    fn q_one_multi(case: u8, p: Modulus, r: usize) -> Result<Self> {
        check_p(p)?;
        if r < 2 {
            return Err(Error::Regime(format!("case {case} requires r>1, got r={r}")));
        }
        Ok(Regime {
            case,
            e: p,
            p,
            r,
            charges: Vec::new(),
        })
    }

    pub fn case3(p: Modulus, r: usize) -> Result<Self> {
        Regime::q_one_multi(3, p, r)
    }

    pub fn case4(p: Modulus, r: usize) -> Result<Self> {
        Regime::q_one_multi(4, p, r)
    }

    pub fn case5(e: Modulus, p: Modulus, r: usize) -> Result<Self> {
        check_p(p)?;
        check_q_not_one(e, p, 5)?;
        if r < 2 {
            return Err(Error::Regime(format!("case 5 requires r>1, got r={r}")));
        }
        Ok(Regime {
            case: 5,
            e,
            p,
            r,
            charges: Vec::new(),
        })
    }

    /// Validating constructor. `e` may be omitted in cases 2–4 (it equals
    /// `p`); if given it must equal `p`.
    pub fn new(
        case: u8,
        e: Option<Modulus>,
        p: Modulus,
        r: usize,
        charges: Option<Vec<i64>>,
    ) -> Result<Self> {
        let need_e = |case: u8| {
            e.ok_or_else(|| Error::Regime(format!("case {case} requires e")))
        };
        let e_is_p = |case: u8| match e {
            Some(e) if e != p => Err(Error::Regime(format!(
                "case {case} requires e=p (q=1), got e={e}, p={p}"
            ))),
            _ => Ok(()),
        };
        let no_charges = |case: u8| match &charges {
            Some(_) => Err(Error::Regime(format!("case {case} takes no charges"))),
            None => Ok(()),
        };
        match case {
            1 => {
                let e = need_e(1)?;
                let charges = charges
                    .ok_or_else(|| Error::Regime("case 1 requires charges".into()))?;
                if charges.len() != r {
                    return Err(Error::Regime(format!(
                        "case 1 requires exactly r={r} charges, got {}",
                        charges.len()
                    )));
                }
                Regime::case1(e, p, charges)
            }
            2 => {
                e_is_p(2)?;
                no_charges(2)?;
                if r != 1 {
                    return Err(Error::Regime(format!("case 2 requires r=1, got r={r}")));
                }
                Regime::case2(p)
            }
            3 | 4 => {
                e_is_p(case)?;
                no_charges(case)?;
                Regime::q_one_multi(case, p, r)
            }
            5 => {
                no_charges(5)?;
                Regime::case5(need_e(5)?, p, r)
            }
            other => Err(Error::Regime(format!("case must be 1-5, got {other}"))),
        }
    }

    /// Infers the case: `q = 1` exactly when `e = p` is finite, or when the
    /// caller says so for `e = p = ∞` (`q_is_one`).
    pub fn auto(
        e: Modulus,
        p: Modulus,
        r: usize,
        zero: bool,
        q_is_one: bool,
        charges: Option<Vec<i64>>,
    ) -> Result<Self> {
        let q_one = match (e, p) {
            (Modulus::Finite(a), Modulus::Finite(b)) => a == b,
            (Modulus::Infinite, Modulus::Infinite) => q_is_one,
            _ => false,
        };
        if q_is_one && !q_one {
            return Err(Error::Regime(format!("q=1 requires e=p, got e={e}, p={p}")));
        }
        let case = match (q_one, zero, r) {
            (_, true, 1) => {
                return Err(Error::Regime(
                    "zero parameters require r>1 (cases 4 and 5)".into(),
                ))
            }
            (true, true, _) => 4,
            (false, true, _) => 5,
            (true, false, 1) => 2,
            (true, false, _) => 3,
            (false, false, _) => 1,
        };
        Regime::new(case, Some(e), p, r, if case == 1 { charges } else { None })
    }

    pub fn case(&self) -> u8 {
        self.case
    }

    pub fn e(&self) -> Modulus {
        self.e
    }

    pub fn p(&self) -> Modulus {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The multicharge; empty outside case 1.
    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    /// Charges for abacus displays: the multicharge in case 1, zeros otherwise.
    pub fn abacus_charges(&self) -> Vec<i64> {
        if self.case == 1 {
            self.charges.clone()
        } else {
            vec![0; self.r]
        }
    }

    /// `ε = 1` when all `Q_a = 0`.
    pub fn epsilon(&self) -> u64 {
        u64::from(matches!(self.case, 4 | 5))
    }

    pub fn residue(&self, x: Node) -> Result<Residue> {
        if x.comp == 0 || x.comp > self.r {
            return Err(Error::ComponentOutOfRange { comp: x.comp, r: self.r });
        }
        Ok(self.residue_unchecked(x.comp, x.content()))
    }

    pub(crate) fn residue_unchecked(&self, comp: usize, content: i64) -> Residue {
        match self.case {
            1 => Residue::Int(self.e.reduce(content + self.charges[comp - 1])),
            2 => Residue::Int(self.p.reduce(content)),
            _ => Residue::Bullet,
        }
    }

    fn require_finite_case1(&self, op: &'static str) -> Result<u32> {
        if self.case != 1 {
            return Err(Error::WrongRegime { op, expected: 1 });
        }
        self.e.get().ok_or(Error::InfiniteE(op))
    }

    fn check_r(&self, lambda: &Multipartition) -> Result<()> {
        if lambda.r() != self.r {
            return Err(Error::ComponentMismatch {
                left: lambda.r(),
                right: self.r,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case={} e={} p={} r={}", self.case, self.e, self.p, self.r)?;
        if self.case == 1 {
            let c: Vec<String> = self.charges.iter().map(|c| c.to_string()).collect();
            write!(f, " charges={}", c.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for Regime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("case", &self.case)?;
        m.serialize_entry("e", &self.e)?;
        m.serialize_entry("p", &self.p)?;
        m.serialize_entry("r", &self.r)?;
        if self.case == 1 {
            m.serialize_entry("charges", &self.charges)?;
        }
        m.end()
    }
}

/// A residue: an integer (reduced mod `e` or `p` when finite) or the single
/// symbol `•` of cases 3–5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Residue {
    Int(i64),
    Bullet,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Int(v) => write!(f, "{v}"),
            Residue::Bullet => f.write_str("•"),
        }
    }
}

/// Residue counts `C_f(λ)`; only non-zero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContentVector(BTreeMap<Residue, usize>);

impl ContentVector {
    pub fn get(&self, f: Residue) -> usize {
        self.0.get(&f).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Residue, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }
}

pub fn content_vector(lambda: &Multipartition, regime: &Regime) -> Result<ContentVector> {
    regime.check_r(lambda)?;
    let mut counts = BTreeMap::new();
    for x in lambda.nodes() {
        *counts
            .entry(regime.residue_unchecked(x.comp, x.content()))
            .or_insert(0) += 1;
    }
    Ok(ContentVector(counts))
}

pub fn residue_equivalent(lambda: &Multipartition, mu: &Multipartition, regime: &Regime) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    Ok(content_vector(lambda, regime)? == content_vector(mu, regime)?)
}

/// `δ_f(λ)` for `f ∈ Z/eZ`, indexed by `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Hub(pub Vec<i64>);

pub fn hub(lambda: &Multipartition, regime: &Regime) -> Result<Hub> {
    let e = regime.require_finite_case1("hub")?;
    regime.check_r(lambda)?;
    let mut delta = vec![0i64; e as usize];
    let res = |x: &Node| match regime.residue_unchecked(x.comp, x.content()) {
        Residue::Int(f) => f as usize,
        Residue::Bullet => unreachable!("case 1 residues are integers"),
    };
    for x in lambda.removable_nodes() {
        delta[res(&x)] += 1;
    }
    for x in lambda.addable_nodes() {
        delta[res(&x)] -= 1;
    }
    Ok(Hub(delta))
}

/// Twice the weight `Wt(λ)`, computed exactly in integers.
fn twice_fayers_weight(lambda: &Multipartition, regime: &Regime, e: u32) -> Result<i64> {
    let cv = content_vector(lambda, regime)?;
    let c = |f: i64| cv.get(Residue::Int(f.rem_euclid(e as i64))) as i64;
    let base: i64 = regime.charges.iter().map(|&cj| c(cj)).sum();
    let squares: i64 = (0..e as i64).map(|f| (c(f) - c(f + 1)).pow(2)).sum();
    Ok(2 * base - squares)
}

/// `Wt(λ) = Σ_j C_{c_j}(λ) − ½ Σ_f (C_f(λ) − C_{f+1}(λ))²`.
pub fn fayers_weight(lambda: &Multipartition, regime: &Regime) -> Result<i64> {
    let e = regime.require_finite_case1("fayers_weight")?;
    let twice = twice_fayers_weight(lambda, regime, e)?;
    debug_assert!(twice % 2 == 0, "Wt is an integer");
    Ok(twice / 2)
}

/// `W_e(λ)`: the largest multiweight in the residue class of `λ` within
/// `Λ⁺_{r,|λ|}`, by exhaustive scan.
pub fn big_weight(lambda: &Multipartition, regime: &Regime) -> Result<usize> {
    let universe = Universe::new(lambda.r(), lambda.size());
    big_weight_in(lambda, regime, &universe)
}

pub fn big_weight_in(lambda: &Multipartition, regime: &Regime, universe: &Universe) -> Result<usize> {
    if regime.case != 1 {
        return Err(Error::WrongRegime { op: "big_weight", expected: 1 });
    }
    let target = content_vector(lambda, regime)?;
    let mut best = 0;
    for mu in universe.members() {
        if content_vector(mu, regime)? == target {
            best = best.max(multiweight(mu, regime.e));
        }
    }
    Ok(best)
}

/// Whether every member of the residue class of the multicore `λ` is a
/// multicore.
pub fn is_reduced_multicore(lambda: &Multipartition, regime: &Regime) -> Result<bool> {
    let universe = Universe::new(lambda.r(), lambda.size());
    is_reduced_multicore_in(lambda, regime, &universe)
}

pub fn is_reduced_multicore_in(
    lambda: &Multipartition,
    regime: &Regime,
    universe: &Universe,
) -> Result<bool> {
    if regime.case != 1 {
        return Err(Error::WrongRegime { op: "is_reduced_multicore", expected: 1 });
    }
    if !is_multicore(lambda, regime.e) {
        return Err(Error::NotMulticore);
    }
    let target = content_vector(lambda, regime)?;
    for mu in universe.members() {
        if content_vector(mu, regime)? == target && !is_multicore(mu, regime.e) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The multicore of `λ` under the regime's multicharge.
pub fn regime_multicore(lambda: &Multipartition, regime: &Regime) -> Multipartition {
    multicore(lambda, &regime.abacus_charges(), regime.e)
}

/// `[e | h]·ν′_p(h)`, the valuation attached to a hook of length `h`.
pub fn hook_valuation(h: i64, e: Modulus, p: Modulus) -> u64 {
    if e.divides(h) {
        crate::jantzen::nu_p_prime(h, p).expect("hook lengths are positive")
    } else {
        0
    }
}

/// `(e,p)`-Carter: the hook valuation is constant along every row.
pub fn is_carter_partition(lambda: &Partition, e: Modulus, p: Modulus) -> bool {
    (1..=lambda.len()).all(|i| {
        let first = hook_valuation(lambda.hook_length(i, 1) as i64, e, p);
        (2..=lambda.part(i)).all(|j| hook_valuation(lambda.hook_length(i, j) as i64, e, p) == first)
    })
}
