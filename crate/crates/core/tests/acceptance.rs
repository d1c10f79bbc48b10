//! Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test -p copguard-core --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use copguard::characterize::{
    check_p1, check_p2, exhaustive_p3_guard_set, find_backbone, is_block_graph, is_extended_block_graph,
    BackboneSearch, DEFAULT_EXHAUSTIVE_LIMIT,
};
use copguard::copnumber::{
    certify_scripted, mgp_guard_set, solve_k_cops, CopNumber, MgpStrategy, DEFAULT_STATE_BUDGET,
};
use copguard::families::{figure1_instance, gen_mgp};
use copguard::graph::enumerate::connected_graphs_up_to;
use copguard::graph::{is_dismantlable, is_isometric};
use copguard::guard::{
    audit_escape, audit_monotonicity, audit_post_guard, simulate_guard, solve_guard_game, EscapeBound, Forcing,
    GreedyRobber, GuardArena, GuardOutcome, RandomRobber, RobberPolicy, StayingRobber, Winner,
};
use copguard::{DistanceMatrix, SubgraphView};

const EXACT_INSTANCES: [(usize, usize, usize); 8] = [
    (5, 2, 1),
    (7, 2, 1),
    (8, 2, 1),
    (8, 2, 2),
    (10, 2, 2),
    (7, 3, 1),
    (8, 3, 1),
    (10, 3, 1),
];
const SCRIPTED_INSTANCES: [(usize, usize, usize); 2] = [(14, 2, 2), (14, 3, 2)];

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut numbers = Vec::new();
    for (n, k, t) in EXACT_INSTANCES {
        let (g, _) = gen_mgp(n, k, t).unwrap();
        let two = solve_k_cops(&g, 2, DEFAULT_STATE_BUDGET).unwrap().is_cop_win();
        let three = solve_k_cops(&g, 3, DEFAULT_STATE_BUDGET).unwrap().is_cop_win();
        let number = if two {
            let one = solve_k_cops(&g, 1, DEFAULT_STATE_BUDGET).unwrap().is_cop_win();
            CopNumber::Exactly(if one { 1 } else { 2 })
        } else if three {
            CopNumber::Exactly(3)
        } else {
            CopNumber::Above(3)
        };
        numbers.push(format!("({n},{k},{t})={number}"));
        out.check(!two && three, || format!("MGP({n},{k},{t}) has cop number {number}, not 3"));
    }
    out.summary = numbers.join(" ");
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut notes = Vec::new();
    for (n, k, t) in SCRIPTED_INSTANCES {
        let strategy = MgpStrategy::new(n, k, t).unwrap();
        let report = certify_scripted(&strategy).unwrap();
        let limit = 10 * n * (t + 1);
        out.check(report.certified, || format!("({n},{k},{t}): scripted strategy loses: {:?}", report.failure));
        out.check(report.capture_bound.is_some_and(|b| b <= limit), || {
            format!("({n},{k},{t}): capture bound {:?} exceeds {limit}", report.capture_bound)
        });
        let two = solve_k_cops(strategy.graph(), 2, DEFAULT_STATE_BUDGET).unwrap();
        out.check(!two.is_cop_win(), || format!("({n},{k},{t}): two cops win"));
        notes.push(format!(
            "({n},{k},{t}) capture<={} rounds (limit {limit}), {} states, k=2 robber-win",
            report.capture_bound.unwrap_or(0),
            report.states
        ));
    }
    out.summary = notes.join("; ");
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut ok = 0;
    for (n, k, t) in EXACT_INSTANCES.iter().chain(&SCRIPTED_INSTANCES).copied() {
        let (g, lab) = gen_mgp(n, k, t).unwrap();
        // check both properties directly, independent of mgp_guard_set
        let h: Vec<usize> = (1..=k).flat_map(|i| lab.column(i)).collect();
        let view = SubgraphView::new(&g, &h).unwrap();
        let block = is_block_graph(view.graph()).unwrap().holds();
        let iso = is_isometric(&view, &DistanceMatrix::new(&g));
        out.check(block && iso, || format!("({n},{k},{t}): block graph {block}, isometric {iso}"));
        out.check(mgp_guard_set(&g, &lab).is_ok() == (block && iso), || {
            format!("({n},{k},{t}): mgp_guard_set disagrees with the direct check")
        });
        ok += usize::from(block && iso);
    }
    out.summary = format!("{ok}/10 instances have an isometric block-graph H");
    out
}

fn criterion_4_and_8(out4: &mut Outcome, out8: &mut Outcome) {
    let mut graphs = 0usize;
    let mut vertebrate = 0usize;
    let mut cop_win = 0usize;
    for g in connected_graphs_up_to(7) {
        graphs += 1;
        let d = DistanceMatrix::new(&g);
        let p1 = check_p1(&g, &d).unwrap().holds();
        let block = is_block_graph(&g).unwrap().holds();
        out4.check(p1 == block, || format!("P1 {p1} vs block {block} on {}", g.to_text()));
        let p2 = check_p2(&g, &d).unwrap().holds();
        let ext = is_extended_block_graph(&g).unwrap().holds();
        out4.check(p2 == ext, || format!("P2 {p2} vs extended block {ext} on {}", g.to_text()));
        let p3 = exhaustive_p3_guard_set(&g, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap().is_some();
        let bb = matches!(find_backbone(&g, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap(), BackboneSearch::Found(_));
        out4.check(p3 == bb, || format!("P3 {p3} vs backbone {bb} on {}", g.to_text()));
        vertebrate += usize::from(bb);

        let one_cop = solve_k_cops(&g, 1, DEFAULT_STATE_BUDGET).unwrap().is_cop_win();
        let dismantlable = is_dismantlable(&g).is_some();
        out8.check(one_cop == dismantlable, || {
            format!("one cop {one_cop} vs dismantlable {dismantlable} on {}", g.to_text())
        });
        cop_win += usize::from(one_cop);
    }
    out4.summary = format!("{graphs} graphs, {vertebrate} vertebrate");
    out8.summary = format!("{graphs} graphs, {cop_win} cop-win");
}

/// f(c, r) = -d(c, r) on H and the triangle bounds everywhere.
fn potential_oracle(arena: &GuardArena, out: &mut Outcome, label: &str) {
    let d = arena.distances();
    let h = arena.subgraph().vertices();
    for &c in h {
        for r in 0..arena.graph().n() {
            let f = arena.potential(c, r);
            let dist = d.get(c, r) as i32;
            out.check(-dist <= f && f <= dist, || format!("{label}: f({c},{r}) = {f} outside +-{dist}"));
            if h.contains(&r) {
                out.check(f == -dist, || format!("{label}: f({c},{r}) = {f} on H, expected {}", -dist));
            }
        }
    }
}

fn criterion_5(out8: &mut Outcome) -> Outcome {
    let mut out = Outcome::new();
    let arenas = common::vertebrate_arenas(100);
    let mut worst = [0usize; 2];
    let mut simulated = 0usize;
    for va in &arenas {
        let a = &va.arena;
        let n = a.graph().n();
        let label = format!("seed {}", va.seed);
        potential_oracle(a, out8, &label);

        let mono = audit_monotonicity(a);
        out.check(mono.is_empty(), || format!("{label}: f decreased: {:?}", mono.first()));
        for (i, forcing) in [Forcing::Helper, Forcing::Restless].into_iter().enumerate() {
            match audit_escape(a, forcing) {
                Ok(EscapeBound::Bounded { rounds }) => {
                    worst[i] = worst[i].max(rounds);
                    out.check(rounds <= n * n, || format!("{label}: {forcing:?} escape takes {rounds} rounds"));
                }
                other => out.check(false, || format!("{label}: {forcing:?} escape {other:?}")),
            }
        }
        let breaches = audit_post_guard(a);
        out.check(breaches.is_empty(), || format!("{label}: breach {:?}", breaches.first()));
        let h = a.subgraph().vertices();
        let game = solve_guard_game(a.graph(), h, a.guard_set()).unwrap();
        out.check(game.winner == Winner::Cop, || format!("{label}: guard game lost to {:?}", game.robber_replies));

        // simulated plays, also feeding the triangle-bound oracle
        let c0 = a.guard_set()[0];
        for r0 in (0..n).filter(|&r| r != c0) {
            let mut policies: Vec<Box<dyn RobberPolicy>> = vec![
                Box::new(StayingRobber),
                Box::new(GreedyRobber),
                Box::new(RandomRobber::new(va.seed * 31 + r0 as u64)),
            ];
            for policy in policies.iter_mut() {
                for forcing in [Forcing::Helper, Forcing::Restless] {
                    let helper = Some((r0 + n / 2) % n).filter(|&p| p != r0);
                    let run = match simulate_guard(a, policy.as_mut(), forcing, 2 * n * n, c0, r0, helper) {
                        Ok(run) => run,
                        Err(e) => {
                            out.check(false, || format!("{label}: {forcing:?} play from {r0} failed: {e}"));
                            continue;
                        }
                    };
                    simulated += 1;
                    out.check(run.outcome != GuardOutcome::Breach, || format!("{label}: simulated breach"));
                    out.check(run.outcome != GuardOutcome::BudgetExhausted, || {
                        format!("{label}: {forcing:?} play from {r0} never reached f >= 0")
                    });
                    out.check(run.guarded_at.is_none_or(|t| t <= n * n), || format!("{label}: slow guard"));
                    for rec in &run.trace {
                        let dist = a.distances().get(rec.cop, rec.robber) as i32;
                        out8.check(-dist <= rec.f && rec.f <= dist, || {
                            format!("{label}: simulated f = {} outside +-{dist}", rec.f)
                        });
                        out8.check(rec.f == a.potential(rec.cop, rec.robber), || format!("{label}: stale f"));
                    }
                }
            }
        }
    }
    out.summary = format!(
        "{} arenas, worst escape {} (helper) / {} (restless) rounds, {simulated} simulated plays",
        arenas.len(),
        worst[0],
        worst[1]
    );
    out
}

fn criterion_6(out8: &mut Outcome) -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..50 {
        let (g, path) = common::path_instance(seed);
        let game = solve_guard_game(&g, &path, &path).unwrap();
        out.check(game.winner == Winner::Cop, || format!("seed {seed}: robber guards against path {path:?}"));
        let arena = GuardArena::new(g, &path, None).unwrap();
        potential_oracle(&arena, out8, &format!("path seed {seed}"));
    }
    out.summary = "50 hosts, shortest path guarded".into();
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let (g, h) = figure1_instance();
    let dismantlable = is_dismantlable(h.graph()).is_some();
    let iso = is_isometric(&h, &DistanceMatrix::new(&g));
    let game = solve_guard_game(&g, h.vertices(), h.vertices()).unwrap();
    out.check(dismantlable, || "H is not dismantlable".into());
    out.check(iso, || "H is not isometric".into());
    out.check(game.winner == Winner::Robber, || "cop guards H".into());
    out.summary = format!(
        "dismantlable {dismantlable}, isometric {iso}, winner {:?}",
        game.winner
    );
    out
}

fn report(id: usize, name: &str, out: &Outcome, started: Instant) -> bool {
    let pass = out.failures.is_empty();
    println!(
        "{} {id} {name}: {} [{:.1}s]",
        if pass { "PASS" } else { "FAIL" },
        out.summary,
        started.elapsed().as_secs_f64()
    );
    for f in out.failures.iter().take(5) {
        println!("    {f}");
    }
    if out.failures.len() > 5 {
        println!("    ... {} more", out.failures.len() - 5);
    }
    pass
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let mut oracle = Outcome::new();

    let t = Instant::now();
    results.push(report(1, "exact cop numbers", &criterion_1(), t));
    let t = Instant::now();
    results.push(report(2, "scripted strategy", &criterion_2(), t));
    let t = Instant::now();
    results.push(report(3, "guarded columns", &criterion_3(), t));

    let t = Instant::now();
    let mut recog = Outcome::new();
    criterion_4_and_8(&mut recog, &mut oracle);
    results.push(report(4, "recognition equivalences", &recog, t));

    let t = Instant::now();
    results.push(report(5, "vertebrate guarding", &criterion_5(&mut oracle), t));
    let t = Instant::now();
    results.push(report(6, "isometric paths", &criterion_6(&mut oracle), t));
    let t = Instant::now();
    results.push(report(7, "figure 1 regression", &criterion_7(), t));
    let t = Instant::now();
    results.push(report(8, "oracle consistency", &oracle, t));

    let failed: Vec<usize> = (1..=8).filter(|&i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
