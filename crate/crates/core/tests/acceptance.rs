//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each criterion also has a wall-clock budget.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use grouptk::colimit::{brown_pair, hopf_h3_check, is_connected_tuple, pi_2_colimit_n3, pi_n_colimit, search_disconnected_triples, NormalTuple};
use grouptk::finite::{catalog, catalog_names, catalog_names_up_to, enumerate_cosets, Strategy, DEFAULT_COSET_LIMIT};
use grouptk::nilpotent::{free_nilpotent, HallBasis, DEFAULT_BASIS_BUDGET};
use grouptk::tensor::{build_t, check_soundness, kernel_of_boundary};
use grouptk::word::{commutator, Word};
use grouptk::wu::{check_equality_13, membership_check, WuConfiguration};
use grouptk::{hopf_element, parse_presentation, Error};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: grouptk::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_grouptk")).arg("--json").args(args).output().map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("bad json from {args:?}: {e}"))?;
    ensure(v["schema"] == 1, "missing schema: 1")?;
    Ok((code, v))
}

fn free_rank_and_torsion(inv: &Value) -> (u64, Vec<u64>) {
    let rank = inv["free_rank"].as_u64().unwrap_or(u64::MAX);
    let torsion = inv["torsion"].as_array().map(|a| a.iter().filter_map(|t| t.as_u64()).collect()).unwrap_or_default();
    (rank, torsion)
}

fn wu_n1() -> Outcome {
    let (code, v) = cli(&["wu", "--n", "1", "--class", "2"])?;
    ensure(code == 0, format!("exit {code}"))?;
    let (rank, torsion) = free_rank_and_torsion(&v["result"]["invariants"]);
    ensure(rank == 1 && torsion.is_empty(), format!("got rank {rank} torsion {torsion:?}"))?;
    Ok("Z at class 2".into())
}

fn wu_n2() -> Outcome {
    for class in ["3", "4"] {
        let (code, v) = cli(&["wu", "--n", "2", "--class", class])?;
        ensure(code == 0, format!("exit {code}"))?;
        let r = &v["result"];
        let (rank, torsion) = free_rank_and_torsion(&r["invariants"]);
        ensure(rank == 1 && torsion.is_empty(), format!("class {class}: rank {rank} torsion {torsion:?}"))?;
        ensure(r["hopf_generates"] == true, format!("class {class}: [y0,y1] does not generate"))?;
        ensure(r["hopf"]["in_denominator"] == false, format!("class {class}: [y0,y1] in denominator"))?;
        let cfg = lib(WuConfiguration::new(2, class.parse().unwrap()))?;
        let m = lib(membership_check(&commutator(&Word::letter(0), &Word::letter(1)), &cfg))?;
        ensure(m.in_numerator && !m.in_denominator, format!("class {class}: membership {m:?}"))?;
    }
    Ok("Z generated by [y0,y1], not in the denominator, classes 3 and 4".into())
}

fn wu_n3() -> Outcome {
    let cfg = lib(WuConfiguration::new(3, 5))?;
    let (code, v) = cli(&["wu", "--n", "3", "--class", "5"])?;
    ensure(code == 0, format!("exit {code}"))?;
    let (rank, torsion) = free_rank_and_torsion(&v["result"]["invariants"]);
    ensure(torsion.contains(&2), format!("no Z/2 summand: rank {rank} torsion {torsion:?}"))?;
    let h = lib(hopf_element(2))?;
    let m = lib(membership_check(&h, &cfg))?;
    ensure(m.in_numerator && !m.in_denominator, format!("hopf element: {m:?}"))?;
    let sq = lib(membership_check(&h.pow(2), &cfg))?;
    ensure(sq.in_denominator, "square of the hopf element is not in the denominator")?;
    let order = m.order_in_quotient.map_or("infinite".to_string(), |o| o.to_string());
    Ok(format!("torsion {torsion:?}, E(2,2) of order {order}, square in denominator"))
}

fn equality_13() -> Outcome {
    let mut sizes = Vec::new();
    for (n, c) in [(2, 3), (2, 4), (3, 4)] {
        let r = lib(check_equality_13(n, c))?;
        ensure(r.equal, format!("n={n} c={c}: {:?}", r.discrepancy))?;
        sizes.push(format!("({n},{c}):{}", r.denominator_igs_size));
    }
    Ok(format!("igs equal, Hirsch lengths {}", sizes.join(" ")))
}

fn brown_n2() -> Outcome {
    let mut pairs = 0;
    let names = catalog_names_up_to(24);
    for name in &names {
        let g = lib(catalog(name))?;
        let normals = g.normal_subgroups();
        for m in &normals {
            for n in &normals {
                let t = lib(NormalTuple::new(vec![m.clone(), n.clone()]))?;
                let via_formula = lib(pi_n_colimit(&t))?.invariants;
                let direct = lib(brown_pair(m, n))?;
                ensure(via_formula.as_ref() == Some(&direct), format!("{name}: {via_formula:?} vs {direct}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over {} groups", names.len()))
}

fn symmetry_pi2() -> Outcome {
    let names = catalog_names_up_to(48);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut nonabelian = 0;
    for trial in 0..100 {
        let name = &names[rng.gen_range(0..names.len())];
        let g = lib(catalog(name))?;
        let normals = g.normal_subgroups();
        let pick: Vec<_> = (0..3).map(|_| normals.choose(&mut rng).unwrap().clone()).collect();
        let mut values = Vec::new();
        for p in perms {
            values.push(lib(pi_2_colimit_n3(&pick[p[0]], &pick[p[1]], &pick[p[2]]))?.invariants);
        }
        if values[0].is_none() {
            nonabelian += 1;
        }
        ensure(values.iter().all(|v| *v == values[0]), format!("trial {trial} in {name}: {values:?}"))?;
    }
    Ok(format!("100 triples over {} groups, {nonabelian} with nonabelian quotient", names.len()))
}

fn abelian_specialization() -> Outcome {
    let mut count = 0;
    for name in catalog_names() {
        let g = lib(catalog(&name))?;
        if !g.is_abelian() {
            continue;
        }
        let t = lib(NormalTuple::new(vec![g.whole(); 3]))?;
        let r = lib(pi_n_colimit(&t))?;
        let direct = lib(grouptk::finite::abelian_invariants_of_quotient(&g.whole(), &g.trivial()))?;
        ensure(r.invariants.as_ref() == Some(&direct), format!("{name}: {:?} vs {direct}", r.invariants))?;
        count += 1;
    }
    Ok(format!("{count} abelian groups"))
}

fn akbulut_kirby() -> Outcome {
    let inputs = [
        "gens: x1, x2 | rels: x1^2*x2^-3, x1*x2*x1*x2^-1*x1^-1*x2^-1",
        "gens: x1, x2 | rels: x1^3*x2^-4, x1*x2*x1*x2^-1*x1^-1*x2^-1",
        "gens: x1, x2 | rels: x1^2*x2^-3, x1^3*x2^-4",
    ];
    let mut defined = Vec::new();
    for text in inputs {
        let start = Instant::now();
        let p = lib(parse_presentation(text))?;
        let t = lib(enumerate_cosets(&p, &[], DEFAULT_COSET_LIMIT, Strategy::Hlt))?;
        ensure(t.is_complete() && t.len() == 1, format!("{text}: {} cosets, complete {}", t.len(), t.is_complete()))?;
        ensure(start.elapsed() < Duration::from_secs(30), format!("{text}: too slow"))?;
        defined.push(t.defined);
    }
    Ok(format!("three presentations trivial (cosets defined {defined:?})"))
}

fn tensor_soundness() -> Outcome {
    let mut tuples = 0;
    let mut relators = 0;
    let mut actions = 0;
    for name in catalog_names_up_to(8) {
        let g = lib(catalog(&name))?;
        let ns = g.normal_subgroups();
        let mut tuple_list = Vec::new();
        for a in &ns {
            for b in &ns {
                tuple_list.push(vec![a.clone(), b.clone()]);
                for c in &ns {
                    tuple_list.push(vec![a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        for subs in tuple_list {
            let tp = lib(build_t(&lib(NormalTuple::new(subs))?))?;
            let r = check_soundness(&tp);
            ensure(r.is_sound(), format!("{name}: {:?}", r.failures.first()))?;
            tuples += 1;
            relators += r.relators_checked;
            actions += r.crossed_module_checks;
        }
    }
    Ok(format!("{tuples} tuples, {relators} relators, {actions} action checks"))
}

fn dual_strategy() -> Outcome {
    let mut inputs = Vec::new();
    for name in catalog_names_up_to(4) {
        let g = lib(catalog(&name))?;
        let ns = g.normal_subgroups();
        for a in &ns {
            for b in &ns {
                inputs.push((name.clone(), vec![a.clone(), b.clone()]));
            }
        }
    }
    let c2 = lib(catalog("C2"))?;
    inputs.push(("C2 (n=3)".into(), vec![c2.whole(); 3]));
    let mut last = String::new();
    for (name, subs) in &inputs {
        let tp = lib(build_t(&lib(NormalTuple::new(subs.clone()))?))?;
        let h = lib(kernel_of_boundary(&tp, DEFAULT_COSET_LIMIT, Strategy::Hlt))?;
        let f = lib(kernel_of_boundary(&tp, DEFAULT_COSET_LIMIT, Strategy::Felsch))?;
        ensure(h.is_consistent() && f.is_consistent(), format!("{name}: rewriting disagrees"))?;
        ensure(
            (h.t_order, h.kernel_order, &h.invariants) == (f.t_order, f.kernel_order, &f.invariants),
            format!("{name}: HLT {:?} vs Felsch {:?}", (h.t_order, h.kernel_order, &h.invariants), (f.t_order, f.kernel_order, &f.invariants)),
        )?;
        last = format!("|T|={} ker={}", h.t_order, h.invariants);
    }
    Ok(format!("{} inputs agree; T(Z/2,Z/2,Z/2): {last}", inputs.len()))
}

fn hopf_h3() -> Outcome {
    let f = lib(free_nilpotent(2, 3))?;
    let (x, y) = (Word::letter(0), Word::letter(1));
    for (r, s, label) in [(&y, &y, "r=s=y"), (&x, &y, "r=x s=y")] {
        let rep = lib(hopf_h3_check(&f, r, s))?;
        let inv = rep.invariants.ok_or("no invariants")?;
        ensure(inv.is_trivial(), format!("{label}: {inv}"))?;
    }
    Ok("both quotients trivial at class 3".into())
}

fn connectivity_gate() -> Outcome {
    let mut pairs = 0;
    for name in catalog_names() {
        let g = lib(catalog(&name))?;
        let ns = g.normal_subgroups();
        for a in &ns {
            for b in &ns {
                let c = lib(is_connected_tuple(&lib(NormalTuple::new(vec![a.clone(), b.clone()]))?))?;
                ensure(c.connected, format!("{name}: pair reported disconnected"))?;
                pairs += 1;
            }
        }
    }
    let search = lib(search_disconnected_triples(16))?;
    let Some(w) = &search.witness else {
        return Ok(format!("{pairs} pairs connected; no disconnected triple up to order 16 ({} triples)", search.triples_checked));
    };
    let g = lib(catalog(&w.group))?;
    let ns = g.normal_subgroups();
    let mut subs: Vec<_> = w.normal_indices.iter().map(|&i| ns[i].clone()).collect();
    subs.push(g.whole());
    let refused = matches!(pi_n_colimit(&lib(NormalTuple::new(subs))?), Err(Error::Hypothesis(_)));
    ensure(refused, "pi_n_colimit accepted a tuple with a disconnected subtuple")?;
    let spec = format!("N{},N{},N{},whole", w.normal_indices[0], w.normal_indices[1], w.normal_indices[2]);
    let group = format!("catalog:{}", w.group);
    let (code, _) = cli(&["pi", "--n", "4", "--group", &group, "--subgroups", &spec])?;
    ensure(code == 2, format!("CLI exit {code} instead of 2"))?;
    Ok(format!(
        "{pairs} pairs connected; witness in {} (orders {:?}, {}), refused with exit 2",
        w.group,
        w.orders,
        w.check.witness.as_ref().map(|x| x.to_string()).unwrap_or_default()
    ))
}

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

fn witt_oracle(r: usize, w: usize) -> usize {
    let sum: i64 = (1..=w).filter(|d| w % d == 0).map(|d| mobius(d) * (r as i64).pow((w / d) as u32)).sum();
    (sum / w as i64) as usize
}

fn witt_dimensions() -> Outcome {
    let mut checked = 0;
    for r in 1..=4 {
        for c in 1..=5 {
            let expected: usize = (1..=c).map(|w| witt_oracle(r, w)).sum();
            let basis = lib(HallBasis::new(r, c, DEFAULT_BASIS_BUDGET))?;
            ensure(basis.len() == expected, format!("r={r} c={c}: basis {} vs {expected}", basis.len()))?;
            let group = lib(free_nilpotent(r, c))?;
            ensure(group.len() == expected, format!("r={r} c={c}: group {} vs {expected}", group.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (rank, class) pairs"))
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "Wu n=1", budget: Duration::from_secs(1), run: wu_n1 },
        Criterion { id: 2, title: "Wu n=2", budget: Duration::from_secs(10), run: wu_n2 },
        Criterion { id: 3, title: "Wu n=3", budget: Duration::from_secs(600), run: wu_n3 },
        Criterion { id: 4, title: "equality of denominators", budget: Duration::from_secs(300), run: equality_13 },
        Criterion { id: 5, title: "Brown n=2 consistency", budget: Duration::from_secs(60), run: brown_n2 },
        Criterion { id: 6, title: "pi_2 symmetry", budget: Duration::from_secs(120), run: symmetry_pi2 },
        Criterion { id: 7, title: "abelian specialization", budget: Duration::from_secs(10), run: abelian_specialization },
        Criterion { id: 8, title: "Akbulut-Kirby triviality", budget: Duration::from_secs(90), run: akbulut_kirby },
        Criterion { id: 9, title: "tensor relator soundness", budget: Duration::from_secs(60), run: tensor_soundness },
        Criterion { id: 10, title: "dual-strategy kernel oracle", budget: Duration::from_secs(300), run: dual_strategy },
        Criterion { id: 11, title: "Hopf H3 truncation", budget: Duration::from_secs(60), run: hopf_h3 },
        Criterion { id: 12, title: "connectivity gate", budget: Duration::from_secs(300), run: connectivity_gate },
        Criterion { id: 13, title: "Witt dimensions", budget: Duration::from_secs(1), run: witt_dimensions },
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for c in &criteria {
        if only.is_some_and(|o| o != c.id) {
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget {:?}: {d}", c.budget)),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {verdict} [{:>8.2?}] {}: {detail}", c.id, elapsed, c.title);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
