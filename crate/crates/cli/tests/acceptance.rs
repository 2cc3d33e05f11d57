use std::process::Command;
use std::time::Instant;

use coxwitness::conjecture::verify_conjecture;
use coxwitness::context::Context;
use coxwitness::lemmas::{property_suites, verify_lemmas};
use coxwitness::report::Verification;
use coxwitness::typea::{verify_rel_all, verify_section5, verify_section6};
use coxwitness::Cyclo;
use rayon::prelude::*;

type Outcome = Result<String, String>;

const ALL_GROUPS: [&str; 23] = [
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "H3", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)",
    "I2(9)", "I2(10)", "I2(11)", "I2(12)", "A1xA1", "A2xA1", "B2xA1",
];

const I2_SMALL: [&str; 6] = ["I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)"];

/// Groups with at most 120 elements carry the 10 s budget.
const TIMED_ORDER: usize = 120;

fn failures(v: &Verification) -> String {
    let names: Vec<String> = v.checks.failures().map(|c| c.name.clone()).collect();
    format!("{}: {}", v.title, names.join("; "))
}

fn exactness() -> Outcome {
    let prefixes = [
        "sigma=1: sum of e_lambda = 1",
        "sigma=1: e_lambda e_mu = delta e_lambda",
        "sum of e_lambda = 1 in C W",
        "e_lambda e_mu = delta e_lambda in C W",
        "sigma=1: e_I e_J",
        "random sigma 3: e_I e_J",
        "w0 = sum (-1)^|L| e_L",
        "descent product = convolution on all basis pairs",
    ];
    let mut slowest = (String::new(), 0.0);
    for label in ALL_GROUPS {
        let ctx = Context::new(label).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let v = verify_lemmas(&ctx, 1).map_err(|e| e.to_string())?;
        let secs = t.elapsed().as_secs_f64();
        if !v.passed() {
            return Err(failures(&v));
        }
        for p in prefixes {
            if !v.checks.items().iter().any(|c| c.name.starts_with(p)) {
                return Err(format!("{label}: no check named {p}"));
            }
        }
        if ctx.group.order() <= TIMED_ORDER && secs >= 10.0 {
            return Err(format!("{label} took {secs:.1}s"));
        }
        if secs > slowest.1 {
            slowest = (label.to_string(), secs);
        }
    }
    Ok(format!("{} groups, slowest {} {:.2}s", ALL_GROUPS.len(), slowest.0, slowest.1))
}

fn dimensions() -> Outcome {
    for label in ALL_GROUPS {
        let ctx = Context::new(label).map_err(|e| e.to_string())?;
        let os = ctx.os();
        if os.dim() != ctx.group.order() {
            return Err(format!("{label}: dim A = {} vs |W| = {}", os.dim(), ctx.group.order()));
        }
        for sh in ctx.lattice.shapes() {
            let size = Cyclo::from_int(sh.preimage_size as i64);
            let dim_a = os.shape_basis(&ctx.lattice, sh.id).len();
            if ctx.char_e()[sh.id].degree() != &size
                || ctx.char_a()[sh.id].degree() != &size
                || dim_a != sh.preimage_size
            {
                return Err(format!("{label} shape {}", sh.id));
            }
        }
    }
    let a2 = Context::new("A2").map_err(|e| e.to_string())?;
    let graded = a2.os().degrees().to_vec();
    let mut shape_dims: Vec<usize> = a2.lattice.shapes().iter().map(|s| s.preimage_size).collect();
    shape_dims.sort_unstable();
    if graded != [1, 3, 2] || shape_dims != [1, 2, 3] {
        return Err(format!("A2 graded {graded:?}, shapes {shape_dims:?}"));
    }
    Ok(format!("{} groups; A2 graded (1, 3, 2)", ALL_GROUPS.len()))
}

fn conjecture() -> Outcome {
    let mut groups = vec!["A1", "A2", "A3", "A4", "A5", "B2", "B3", "D4", "H3"];
    groups.extend(I2_SMALL);
    for label in &groups {
        let ctx = Context::new(label).map_err(|e| e.to_string())?;
        let rep = verify_conjecture(&ctx, false);
        if let Some(s) = rep.shapes.iter().find(|s| !s.verified()) {
            return Err(format!("{label} shape {}", s.shape));
        }
    }
    Ok(format!("{} groups", groups.len()))
}

fn top_shape() -> Outcome {
    for n in 3..=6 {
        let v = verify_section5(n).map_err(|e| e.to_string())?;
        if !v.passed() {
            return Err(failures(&v));
        }
        if n == 3 && v.data["char_E"] != serde_json::json!(["2", "0", "-1"]) {
            return Err(format!("n = 3 character {}", v.data["char_E"]));
        }
    }
    Ok("n = 3..6; n = 3 gives (2, 0, -1)".into())
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n).rev() {
        for rest in partitions(n - first) {
            if rest.first().is_none_or(|&r| r <= first) {
                let mut p = vec![first];
                p.extend(rest);
                out.push(p);
            }
        }
    }
    out
}

fn every_partition() -> Outcome {
    let all: Vec<Vec<usize>> = (2..=6).flat_map(partitions).collect();
    let results: Vec<Result<Verification, String>> =
        all.par_iter().map(|p| verify_section6(p).map_err(|e| e.to_string())).collect();
    for r in results {
        let v = r?;
        if !v.passed() {
            return Err(failures(&v));
        }
    }
    Ok(format!("{} partitions of n = 2..6", all.len()))
}

fn type_a_parabolics_check() -> Outcome {
    let mut groups = vec!["B2", "B3", "B4", "D4", "H3"];
    groups.extend(I2_SMALL);
    let mut instances = 0;
    for label in &groups {
        let ctx = Context::new(label).map_err(|e| e.to_string())?;
        let vs = verify_rel_all(&ctx);
        if vs.is_empty() {
            return Err(format!("{label}: no type-A parabolics"));
        }
        for v in &vs {
            if !v.passed() {
                return Err(failures(v));
            }
            for name in ["char E_lambda = Ind(phi~)", "char A_lambda = Ind(sign alpha_c phi~)"] {
                if !v.checks.items().iter().any(|c| c.name == name) {
                    return Err(format!("{}: missing {name}", v.title));
                }
            }
        }
        instances += vs.len();
    }
    Ok(format!("{instances} parabolics in {} groups", groups.len()))
}

fn property_suites_check() -> Outcome {
    let suites = property_suites(20_240_101, 10_000).map_err(|e| e.to_string())?;
    let expected =
        ["shift", "restrict", "N-equiv", "reducible", "Frobenius", "OS automorphism", "alpha multiplicativity"];
    for name in expected {
        let s = suites.iter().find(|s| s.name == name).ok_or(format!("missing suite {name}"))?;
        if s.samples < 10_000 {
            return Err(format!("{name}: {} samples", s.samples));
        }
        if !s.passed() {
            return Err(format!("{name}: {} failures, first {:?}", s.failures, s.first_failure));
        }
    }
    let total: usize = suites.iter().map(|s| s.samples).sum();
    Ok(format!("{} suites, {total} samples", suites.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_coxwitness"))
            .args(["verify", "conjecture", "B3", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.status.code() != Some(0) || a.stdout.is_empty() {
        return Err(format!("exit {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exactness", exactness),
        ("dimensions", dimensions),
        ("conjecture", conjecture),
        ("top shape of S_n", top_shape),
        ("every partition", every_partition),
        ("type-A parabolics", type_a_parabolics_check),
        ("property suites", property_suites_check),
        ("determinism", determinism),
    ];
    let mut all_ok = true;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", k + 1),
            Err(detail) => println!("criterion {} {name}: FAIL ({detail})", k + 1),
        }
        all_ok &= outcome.is_ok();
    }
    if !all_ok {
        std::process::exit(1);
    }
}
