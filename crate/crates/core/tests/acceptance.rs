//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout;
//! exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::process::{Command, ExitCode};
use std::time::Instant;

use hecke_blocks::abacus::{e_core, from_abacus, multiweight, t_move, to_abacus, AbacusDisplay};
use hecke_blocks::blocks::{blocks_by_jantzen_in, blocks_by_residue_in, verify_theorem_in, BlockPartition};
use hecke_blocks::cli::{charge_grid, grid_regimes};
use hecke_blocks::jantzen::{
    evaluate_terms, jantzen_bruteforce, jantzen_fast, JantzenContext, Term, DEFAULT_SEED,
};
use hecke_blocks::partition::partitions_of;
use hecke_blocks::residue::{
    big_weight_in, content_vector, fayers_weight, hub, is_reduced_multicore_in, regime_multicore,
};
use hecke_blocks::{Modulus, Multipartition, Node, Partition, Regime, Universe};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const CASES: [u8; 5] = [1, 2, 3, 4, 5];
const E_LIST: [Modulus; 4] = [
    Modulus::Finite(2),
    Modulus::Finite(3),
    Modulus::Finite(4),
    Modulus::Infinite,
];
const P_LIST: [Modulus; 3] = [Modulus::Finite(2), Modulus::Finite(3), Modulus::Infinite];
const R_MAX: usize = 3;
const N_MAX: usize = 6;

fn fin(m: u32) -> Modulus {
    Modulus::Finite(m)
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn lib<T>(r: hecke_blocks::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn theorem_sweep() -> Check {
    let mut cells = 0;
    let mut per_case = [0usize; 6];
    for r in 1..=R_MAX {
        let regimes = grid_regimes(r, &CASES, &E_LIST, &P_LIST);
        for n in 1..=N_MAX {
            let ctx = JantzenContext::new(r, n);
            for reg in &regimes {
                let report = lib(verify_theorem_in(reg, &ctx, DEFAULT_SEED))?;
                cells += 1;
                per_case[reg.case() as usize] += 1;
                if let Some(w) = report.witness {
                    return fail(format!(
                        "{reg} n={n}: {} vs {} (∼_C {}, ∼_J {})",
                        w.lambda, w.mu, w.residue_equivalent, w.jantzen_equivalent
                    ));
                }
            }
        }
    }
    if per_case[1..].contains(&0) {
        return fail(format!("some case has no cells: {:?}", &per_case[1..]));
    }
    Ok(format!("{cells} cells, cells per case {:?}", &per_case[1..]))
}

fn oracle_equals_fast() -> Check {
    let mut evaluated = 0u64;
    let mut pairs = 0u64;
    for r in 1..=R_MAX {
        let regimes = grid_regimes(r, &CASES, &E_LIST, &P_LIST);
        for n in 1..=N_MAX {
            let ctx = JantzenContext::new(r, n);
            let len = ctx.universe().len();
            // Pairs with no summand in the defining sum have J = 0 in every
            // regime; the rest are evaluated regime by regime.
            let mut oracle: Vec<(usize, usize, Vec<Term>)> = Vec::new();
            for i in 0..len {
                for j in 0..len {
                    let terms = ctx.oracle_terms(i, j);
                    if !terms.is_empty() {
                        oracle.push((i, j, terms));
                    }
                }
            }
            let with_terms: HashSet<(usize, usize)> = oracle.iter().map(|(i, j, _)| (*i, *j)).collect();
            for reg in &regimes {
                let fast = lib(ctx.matrix(reg))?;
                for (i, j, terms) in &oracle {
                    let o = lib(evaluate_terms(terms, reg, n))?;
                    if o != fast.get(*i, *j) {
                        return fail(format!(
                            "{reg}: J({}, {}) oracle {o}, fast {}",
                            ctx.universe().get(*i),
                            ctx.universe().get(*j),
                            fast.get(*i, *j)
                        ));
                    }
                    evaluated += 1;
                }
                for ((i, j), v) in fast.nonzero() {
                    if !with_terms.contains(&(i, j)) {
                        return fail(format!(
                            "{reg}: J({}, {}) oracle 0, fast {v}",
                            ctx.universe().get(i),
                            ctx.universe().get(j)
                        ));
                    }
                }
                pairs += (len * len) as u64;
            }
            // The free functions agree with the context on small sizes.
            if n <= 4 {
                for reg in &regimes {
                    for l in ctx.universe().members() {
                        for m in ctx.universe().members() {
                            let a = lib(jantzen_bruteforce(l, m, reg))?;
                            let b = lib(jantzen_fast(l, m, reg))?;
                            if a != b {
                                return fail(format!("{reg}: J({l}, {m}) oracle {a}, fast {b}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs over all regimes, {evaluated} with summands"))
}

fn single_block_cases() -> Check {
    let mut cells = 0;
    let mut compared = 0;
    for r in 2..=R_MAX {
        let regimes = grid_regimes(r, &[3, 4, 5], &E_LIST, &P_LIST);
        for n in 1..=N_MAX {
            let ctx = JantzenContext::new(r, n);
            let mut case34: HashMap<(u8, Modulus), (BlockPartition, BlockPartition)> = HashMap::new();
            for reg in &regimes {
                let c = lib(blocks_by_residue_in(reg, ctx.universe()))?;
                let j = lib(blocks_by_jantzen_in(reg, &ctx, DEFAULT_SEED))?;
                if c.len() != 1 || j.len() != 1 {
                    return fail(format!("{reg} n={n}: {} / {} classes", c.len(), j.len()));
                }
                cells += 1;
                if reg.case() != 5 {
                    case34.insert((reg.case(), reg.p()), (c, j));
                }
            }
            for ((case, p), three) in case34.iter().filter(|((c, _), _)| *c == 3) {
                let Some(four) = case34.get(&(4, *p)) else {
                    return fail(format!("case 4 missing at p={p} r={r} n={n} (case {case} present)"));
                };
                if three != four {
                    return fail(format!("cases 3 and 4 differ at p={p} r={r} n={n}"));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{cells} cells with one block, {compared} case 3/4 comparisons identical"))
}

fn classical_blocks() -> Check {
    let mut cells = 0;
    for n in 1..=8 {
        let ctx = JantzenContext::new(1, n);
        let members = ctx.universe().members();
        let mut expect = |reg: &Regime, ell: Modulus, charge: i64| -> Result<(), String> {
            let cores: Vec<Partition> = members.iter().map(|l| e_core(l.component(1), charge, ell)).collect();
            let want = BlockPartition::from_keys(&cores);
            let c = lib(blocks_by_residue_in(reg, ctx.universe()))?;
            let j = lib(blocks_by_jantzen_in(reg, &ctx, DEFAULT_SEED))?;
            if c != want || j != want {
                return fail(format!("{reg} n={n}: core partition differs"));
            }
            cells += 1;
            Ok(())
        };
        for p in [2, 3] {
            expect(&lib(Regime::case2(fin(p)))?, fin(p), 0)?;
        }
        for reg in grid_regimes(1, &[1], &E_LIST, &P_LIST) {
            expect(&reg, reg.e(), reg.charges()[0])?;
        }
    }
    Ok(format!("{cells} cells match the core partition"))
}

fn fayers_suite() -> Check {
    let universes: Vec<Vec<Universe>> = (0..=R_MAX)
        .map(|r| (0..=N_MAX).map(|n| Universe::new(r.max(1), n)).collect())
        .collect();
    let mut regimes_done = 0;
    let (mut moves, mut reduced_checks, mut lib_checks) = (0, 0, 0);
    for e in [2u32, 3, 4] {
        for r in 1..=R_MAX {
            for charges in charge_grid(fin(e), r) {
                let reg = lib(Regime::case1(fin(e), Modulus::Infinite, charges))?;
                let abacus_charges = reg.abacus_charges();
                // Per size: residue class -> whether it consists of multicores.
                let mut reduced: Vec<HashMap<_, bool>> = Vec::new();
                for n in 0..=N_MAX {
                    let mut all_cores = HashMap::new();
                    for l in universes[r][n].members() {
                        let core = multiweight(l, fin(e)) == 0;
                        *all_cores.entry(lib(content_vector(l, &reg))?).or_insert(true) &= core;
                    }
                    reduced.push(all_cores);
                }
                for n in 1..=N_MAX {
                    let members = universes[r][n].members();
                    let contents = members
                        .iter()
                        .map(|l| content_vector(l, &reg))
                        .collect::<hecke_blocks::Result<Vec<_>>>()
                        .map_err(|e| e.to_string())?;
                    let hubs = members
                        .iter()
                        .map(|l| hub(l, &reg))
                        .collect::<hecke_blocks::Result<Vec<_>>>()
                        .map_err(|e| e.to_string())?;
                    // (ii)
                    if BlockPartition::from_keys(&hubs) != BlockPartition::from_keys(&contents) {
                        return fail(format!("{reg} n={n}: hub classes differ from ∼_C"));
                    }
                    let mut wt_of = HashMap::new();
                    let mut big_w = HashMap::new();
                    for (l, c) in members.iter().zip(&contents) {
                        let w = multiweight(l, fin(e));
                        let m = big_w.entry(c).or_insert(0);
                        *m = w.max(*m);
                    }
                    for (l, c) in members.iter().zip(&contents) {
                        let wt = lib(fayers_weight(l, &reg))?;
                        // (i)
                        if wt < 0 || *wt_of.entry(c).or_insert(wt) != wt {
                            return fail(format!("{reg}: Wt({l}) = {wt} breaks (i)"));
                        }
                        // (v)
                        if r == 1 && wt != multiweight(l, fin(e)) as i64 {
                            return fail(format!("{reg}: Wt({l}) = {wt} ≠ w_e"));
                        }
                        // (iii)
                        for a in 1..=r {
                            for i in 0..e as i64 {
                                let mu = lib(t_move(l, &abacus_charges, fin(e), a, i, 1))?;
                                let dw = lib(fayers_weight(&mu, &reg))? - wt;
                                if dw != r as i64 || mu.size() != n + e as usize {
                                    return fail(format!("{reg}: t-move {l} -> {mu} changes Wt by {dw}"));
                                }
                                moves += 1;
                            }
                        }
                        // (iv)
                        let bar = regime_multicore(l, &reg);
                        let bar_reduced = reduced[bar.size()][&lib(content_vector(&bar, &reg))?];
                        let weights_agree = multiweight(l, fin(e)) == big_w[c];
                        if bar_reduced != weights_agree {
                            return fail(format!(
                                "{reg}: {l}: multicore {bar} reduced = {bar_reduced}, w_e = W_e is {weights_agree}"
                            ));
                        }
                        reduced_checks += 1;
                        if r <= 2 {
                            let bw = lib(big_weight_in(l, &reg, &universes[r][n]))?;
                            let br = lib(is_reduced_multicore_in(&bar, &reg, &universes[r][bar.size()]))?;
                            if bw != big_w[c] || br != bar_reduced {
                                return fail(format!("{reg}: scan functions disagree at {l}"));
                            }
                            lib_checks += 1;
                        }
                    }
                }
                regimes_done += 1;
            }
        }
    }
    Ok(format!(
        "{regimes_done} regimes; {moves} t-moves; {reduced_checks} weight-link checks ({lib_checks} via scan functions)"
    ))
}

/// Cells of `big` not in `small`.
fn skew(big: &Partition, small: &Partition) -> BTreeSet<(usize, usize)> {
    (1..=big.len())
        .flat_map(|i| (small.part(i) + 1..=big.part(i)).map(move |j| (i, j)))
        .collect()
}

fn random_core(lambda: &Partition, e: usize, rng: &mut ChaCha8Rng) -> Partition {
    let mut cur = Multipartition::new(vec![lambda.clone()]).unwrap();
    loop {
        let p = cur.component(1).clone();
        let cells: Vec<Node> = cur.nodes().filter(|x| p.hook_length(x.row, x.col) == e).collect();
        match cells.choose(rng) {
            Some(&x) => cur = cur.unwrap(x).unwrap(),
            None => return p,
        }
    }
}

fn abacus_suite() -> Check {
    let mut round_trips = 0;
    for n in 0..=12 {
        for l in partitions_of(n) {
            for e in E_LIST {
                for c in -3..=3 {
                    let d = to_abacus(&l, c, e);
                    if from_abacus(&d) != l {
                        return fail(format!("round trip of {l} at e={e} c={c}"));
                    }
                    let k = l.len() + 3;
                    let head = d.beads_head(k);
                    let rebuilt = lib(AbacusDisplay::from_beads(&head, c, e))?;
                    if rebuilt.partition() != &l {
                        return fail(format!("{l} rebuilt from beads {head:?} as {}", rebuilt.partition()));
                    }
                    for z in c - k as i64 - 2..=head[0] + 2 {
                        if d.has_bead(z) != (head.contains(&z) || z < c - k as i64) {
                            return fail(format!("bead {z} of {l} at c={c}"));
                        }
                    }
                    round_trips += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut orders = 0;
    for n in 0..=10 {
        for l in partitions_of(n) {
            for e in [2usize, 3, 4] {
                let want = e_core(&l, 0, fin(e as u32));
                for _ in 0..100 {
                    let got = random_core(&l, e, &mut rng);
                    if got != want {
                        return fail(format!("{e}-core of {l}: {got} by peeling, {want} by abacus"));
                    }
                    orders += 1;
                }
            }
        }
    }

    let (mut wraps, mut literal_misses) = (0, 0);
    for n in 0..=8 {
        for l in partitions_of(n) {
            for h in 1..=6usize {
                let wanted: BTreeSet<Partition> = l.wraps(h).into_iter().map(|w| w.0).collect();
                let mut moved = BTreeSet::new();
                for e in [2u32, 3, 4] {
                    for c in 0..e as i64 {
                        let d = to_abacus(&l, c, fin(e));
                        for v in d.beads_head(l.len() + h) {
                            if d.has_bead(v + h as i64) {
                                continue;
                            }
                            let nu = lib(d.move_bead(v, v + h as i64))?.into_partition();
                            let added = skew(&nu, &l);
                            let (top, foot_row) = (added.first().unwrap().0, added.last().unwrap().0);
                            let foot_col = added.iter().map(|x| x.1).min().unwrap();
                            let x = Node::new(top, foot_col, 1);
                            let big = Multipartition::new(vec![nu.clone()]).unwrap();
                            let hook = lib(big.rim_hook(x))?;
                            let cells: BTreeSet<_> = hook.cells.iter().map(|y| (y.row, y.col)).collect();
                            if !nu.contains(&l) || nu.size() != n + h || cells != added {
                                return fail(format!("moving bead {v} by {h} on {l} gives {nu}"));
                            }
                            if lib(big.unwrap(x))?.component(1) != &l {
                                return fail(format!("unwrapping {nu} at {x} does not return {l}"));
                            }
                            assert_eq!(hook.foot, Node::new(foot_row, foot_col, 1));
                            let foot_residue = (hook.foot.content() + c).rem_euclid(e as i64);
                            let runner = v.rem_euclid(e as i64);
                            if foot_residue != (runner + 1) % e as i64 {
                                return fail(format!(
                                    "{l} c={c} e={e}: bead {v} by {h} has foot residue {foot_residue}"
                                ));
                            }
                            if foot_residue != runner {
                                literal_misses += 1;
                            }
                            moved.insert(nu);
                            wraps += 1;
                        }
                    }
                }
                if moved != wanted {
                    return fail(format!("bead moves and rim-hook wraps of {l} by {h} differ"));
                }
            }
        }
    }
    if literal_misses == 0 {
        return fail("foot residue never differs from the source runner");
    }
    Ok(format!(
        "{round_trips} round trips; {orders} random peelings; {wraps} bead moves with foot residue = runner + 1"
    ))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke-blocks"))
}

fn worked_example() -> Check {
    let out = binary()
        .args(["abacus", "--lambda", "4,1,1|2|3,2,1", "--e", "3", "--charges", "0,1,2"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return fail(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let beta: Vec<Vec<i64>> = serde_json::from_value(json["beta"].clone()).map_err(|e| e.to_string())?;
    let listed: [&[i64]; 3] = [&[3, -1, -2], &[2, -1, -2], &[4, 2, 0, -2, -3]];
    let charges = [0i64, 1, 2];
    for (a, (b, want)) in beta.iter().zip(listed).enumerate() {
        if !b.starts_with(want) {
            return fail(format!("B_{} = {b:?}", a + 1));
        }
        // Past the listed prefix the beads continue c - i.
        let len = [3, 1, 3][a];
        for (i, &z) in b.iter().enumerate().skip(len) {
            if z != charges[a] - (i as i64 + 1) {
                return fail(format!("B_{} = {b:?} has a bad tail", a + 1));
            }
        }
    }
    if beta.len() != 3 {
        return fail(format!("{} bead lists", beta.len()));
    }
    let size = |v: &serde_json::Value| -> u64 { v.as_array().unwrap().iter().flat_map(|c| c.as_array().unwrap()).map(|x| x.as_u64().unwrap()).sum() };
    let (whole, core, w) = (size(&json["lambda"]), size(&json["core"]), json["weight"].as_u64().unwrap_or(u64::MAX));
    if whole != core + 3 * w {
        return fail(format!("|λ| = {whole}, |core| = {core}, weight = {w}"));
    }
    Ok(format!("beta = {beta:?}"))
}

fn deterministic_verify() -> Check {
    let run = || -> Result<Vec<u8>, String> {
        let out = binary().arg("verify").output().map_err(|e| e.to_string())?;
        if !out.status.success() {
            return fail(format!("verify exited {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return fail("outputs differ");
    }
    let json: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
    if json["summary"]["ok"] != serde_json::Value::Bool(true) {
        return fail(format!("summary {}", json["summary"]));
    }
    Ok(format!("{} bytes, identical; {} cells", a.len(), json["summary"]["cells"]))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("main theorem sweep", theorem_sweep),
        ("oracle = fast Jantzen coefficients", oracle_equals_fast),
        ("single-block cases", single_block_cases),
        ("r=1 classical blocks", classical_blocks),
        ("Fayers invariants", fayers_suite),
        ("abacus suite", abacus_suite),
        ("worked abacus example", worked_example),
        ("determinism of verify", deterministic_verify),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.1}s] {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s] {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
