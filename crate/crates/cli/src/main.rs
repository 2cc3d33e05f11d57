use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use coxwitness::conjecture::verify_conjecture;
use coxwitness::context::Context;
use coxwitness::coxeter::{subset, Subset};
use coxwitness::descent::SigmaFn;
use coxwitness::lemmas::{property_suites, verify_lemmas};
use coxwitness::report::Verification;
use coxwitness::typea::{type_a_parabolics, verify_section5, verify_section6, verify_theorem_rel};
use coxwitness::Error;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "coxwitness",
    version,
    about = "Descent algebra and Orlik-Solomon computations for finite Coxeter groups"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Shapes of the reflection arrangement.
    Shapes { group: String },
    /// The idempotents e_K for a weight function.
    Idempotents {
        group: String,
        /// JSON weight table: {"default": "1", "overrides": {"0b011": "3/2"}}.
        #[arg(long, value_name = "PATH")]
        sigma: Option<PathBuf>,
    },
    /// Graded and shape dimensions of the Orlik-Solomon algebra.
    Os { group: String },
    /// Characters of E_lambda and A_lambda.
    Characters { group: String },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
}

#[derive(Subcommand)]
enum Target {
    /// Linear characters of centralizers inducing E_lambda and A_lambda.
    Conjecture {
        group: String,
        /// Stop at the first solution per shape.
        #[arg(long)]
        first: bool,
    },
    /// The top shape of the symmetric group S_n.
    Section5 { n: usize },
    /// Every partition of n in the symmetric group S_n.
    Section6 { n: usize },
    /// Parabolics whose components are all of type A.
    Rel {
        group: String,
        /// Simple generator indices of L, 0-based; all type-A shapes if omitted.
        #[arg(long, value_delimiter = ',', value_name = "I,J,...")]
        parabolic: Option<Vec<usize>>,
    },
    /// Descent and Orlik-Solomon identities for one group.
    Lemmas {
        group: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Randomized identities across small groups.
    Properties {
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Args)]
struct Sampling {
    /// Seed for random weight functions and samples.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

struct Output {
    json: Value,
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(n) = std::env::var("COXWITNESS_THREADS") {
        match n.parse::<usize>() {
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Err(_) => {
                eprintln!("error: COXWITNESS_THREADS must be a non-negative integer");
                return ExitCode::from(2);
            }
        }
    }
    let start = Instant::now();
    let out = match run(&cli.verb) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
        s.push('\n');
        s
    } else {
        out.text
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn envelope(command: &str, group: Option<&str>, status: Option<bool>, result: Value) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "tool": "coxwitness",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "result": result,
    });
    if let Some(g) = group {
        v["group"] = Value::String(g.to_string());
    }
    if let Some(ok) = status {
        v["status"] = Value::String(if ok { "verified" } else { "failed" }.to_string());
    }
    v
}

fn run(verb: &Verb) -> Result<Output, Error> {
    match verb {
        Verb::Shapes { group } => shapes(group),
        Verb::Idempotents { group, sigma } => idempotents(group, sigma.as_deref()),
        Verb::Os { group } => os(group),
        Verb::Characters { group } => characters(group),
        Verb::Verify { target } => verify(target),
    }
}

fn shapes(label: &str) -> Result<Output, Error> {
    let ctx = Context::new(label)?;
    let g = &ctx.group;
    let rank = g.rank();
    let mut rows = vec![vec![
        "id".into(),
        "codim".into(),
        "orbit".into(),
        "|sh^-1|".into(),
        "S_lambda".into(),
        "class reps".into(),
    ]];
    let items: Vec<Value> = ctx
        .lattice
        .shapes()
        .iter()
        .map(|sh| {
            let s_lambda: Vec<String> = sh.s_lambda.iter().map(|&i| subset::to_binary(i, rank)).collect();
            let reps: Vec<String> = sh.classes.iter().map(|&k| g.word_string(g.classes().reps()[k])).collect();
            rows.push(vec![
                sh.id.to_string(),
                sh.codim.to_string(),
                sh.members.len().to_string(),
                sh.preimage_size.to_string(),
                s_lambda.join(" "),
                reps.iter().map(|r| format!("[{r}]")).collect::<Vec<_>>().join(" "),
            ]);
            json!({
                "id": sh.id,
                "codim": sh.codim,
                "S_lambda": s_lambda,
                "orbit_size": sh.members.len(),
                "class_reps": reps,
                "preimage_size": sh.preimage_size,
            })
        })
        .collect();
    let text = format!("{} ({} elements, {} shapes)\n{}", g.label(), g.order(), items.len(), table(&rows));
    let result = json!({"order": g.order(), "shapes": items});
    Ok(Output { json: envelope("shapes", Some(g.label()), None, result), text, passed: true })
}

fn idempotents(label: &str, sigma_path: Option<&std::path::Path>) -> Result<Output, Error> {
    let ctx = Context::new(label)?;
    let g = &ctx.group;
    let rank = g.rank();
    let sigma = match sigma_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
            let s = SigmaFn::from_json(&text)?;
            s.check_within(g.full_set(), rank)?;
            s
        }
        None => SigmaFn::one(),
    };
    let d = ctx.descent();
    let id = d.solve(&sigma);
    let mut text = format!("{} idempotents\n", g.label());
    let mut shapes = Vec::new();
    for sh in ctx.lattice.shapes() {
        let sigma_lambda = id.sigma_of(&sh.s_lambda);
        let mut es = serde_json::Map::new();
        text.push_str(&format!("shape {} (sigma = {sigma_lambda})\n", sh.id));
        for &k in &sh.s_lambda {
            let e = id.e(k);
            es.insert(subset::to_binary(k, rank), e.to_json(rank));
            let terms: Vec<String> =
                e.sorted_terms().iter().map(|(j, v)| format!("x_{}: {v}", subset::to_binary(*j, rank))).collect();
            text.push_str(&format!("  e_{} = {{{}}}\n", subset::to_binary(k, rank), terms.join(", ")));
        }
        shapes.push(json!({
            "shape": sh.id,
            "sigma_lambda": sigma_lambda.to_string(),
            "e": es,
        }));
    }
    let result = json!({"sigma": sigma.to_json(rank), "shapes": shapes});
    Ok(Output { json: envelope("idempotents", Some(g.label()), None, result), text, passed: true })
}

fn os(label: &str) -> Result<Output, Error> {
    let ctx = Context::new(label)?;
    let g = &ctx.group;
    let os = ctx.os();
    let degrees: Vec<usize> = os.degrees().to_vec();
    let mut rows = vec![vec!["shape".into(), "codim".into(), "dim A_lambda".into()]];
    let shapes: Vec<Value> = ctx
        .lattice
        .shapes()
        .iter()
        .map(|sh| {
            let dim = os.shape_basis(&ctx.lattice, sh.id).len();
            rows.push(vec![sh.id.to_string(), sh.codim.to_string(), dim.to_string()]);
            json!({"shape": sh.id, "codim": sh.codim, "dim": dim})
        })
        .collect();
    let text = format!(
        "{}: dim A = {}, graded dims ({})\n{}",
        g.label(),
        os.dim(),
        degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
        table(&rows)
    );
    let result = json!({"dim": os.dim(), "graded_dims": degrees, "shapes": shapes});
    Ok(Output { json: envelope("os", Some(g.label()), None, result), text, passed: true })
}

fn characters(label: &str) -> Result<Output, Error> {
    let ctx = Context::new(label)?;
    let g = &ctx.group;
    let reps: Vec<String> = g.classes().reps().iter().map(|&w| g.word_string(w)).collect();
    let mut rows = vec![vec!["".to_string()]];
    rows[0].extend(reps.iter().map(|r| format!("[{r}]")));
    let mut shapes = Vec::new();
    for sh in ctx.lattice.shapes() {
        let (e, a) = (&ctx.char_e()[sh.id], &ctx.char_a()[sh.id]);
        let mut row_e = vec![format!("E_{}", sh.id)];
        row_e.extend(e.values().iter().map(|v| v.to_string()));
        let mut row_a = vec![format!("A_{}", sh.id)];
        row_a.extend(a.values().iter().map(|v| v.to_string()));
        rows.push(row_e);
        rows.push(row_a);
        shapes.push(json!({"shape": sh.id, "char_E": e.to_json(), "char_A": a.to_json()}));
    }
    let result = json!({
        "class_reps": reps,
        "class_sizes": g.classes().sizes(),
        "shapes": shapes,
    });
    let text = format!("{} characters\n{}", g.label(), table(&rows));
    Ok(Output { json: envelope("characters", Some(g.label()), None, result), text, passed: true })
}

fn verify(target: &Target) -> Result<Output, Error> {
    match target {
        Target::Conjecture { group, first } => {
            let ctx = Context::new(group)?;
            let rep = verify_conjecture(&ctx, *first);
            let mut text = format!("conjecture {}\n", ctx.group.label());
            for s in &rep.shapes {
                let status = if s.verified() { "verified" } else { "FAILED" };
                text.push_str(&format!("  shape {}: {status} ({} solutions)\n", s.shape, s.solutions.len()));
            }
            text.push_str(&format!("status: {}\n", if rep.verified() { "verified" } else { "failed" }));
            let result = json!({"shapes": rep.shapes.iter().map(|s| s.to_json(&ctx)).collect::<Vec<_>>()});
            let json = envelope("verify conjecture", Some(ctx.group.label()), Some(rep.verified()), result);
            Ok(Output { json, text, passed: rep.verified() })
        }
        Target::Section5 { n } => verifications("verify section5", None, vec![verify_section5(*n)?]),
        Target::Section6 { n } => {
            if !(2..=6).contains(n) {
                return Err(Error::InvalidArgument(format!("n = {n} is outside 2..=6")));
            }
            let vs = partitions(*n).iter().map(|p| verify_section6(p)).collect::<Result<Vec<_>, _>>()?;
            verifications("verify section6", None, vs)
        }
        Target::Rel { group, parabolic } => {
            let ctx = Context::new(group)?;
            let subsets: Vec<Subset> = match parabolic {
                Some(idx) => vec![parse_parabolic(idx, ctx.group.rank())?],
                None => type_a_parabolics(&ctx),
            };
            let vs = {
                use rayon::prelude::*;
                subsets.par_iter().map(|&l| verify_theorem_rel(&ctx, l)).collect::<Result<Vec<_>, _>>()?
            };
            verifications("verify rel", Some(ctx.group.label()), vs)
        }
        Target::Lemmas { group, sampling } => {
            let ctx = Context::new(group)?;
            let v = verify_lemmas(&ctx, sampling.seed)?;
            verifications("verify lemmas", Some(ctx.group.label()), vec![v])
        }
        Target::Properties { sampling, samples } => {
            let suites = property_suites(sampling.seed, *samples)?;
            let passed = suites.iter().all(|s| s.passed());
            let mut rows = vec![vec!["suite".into(), "samples".into(), "failures".into()]];
            for s in &suites {
                rows.push(vec![s.name.to_string(), s.samples.to_string(), s.failures.to_string()]);
            }
            let mut text = table(&rows);
            for s in suites.iter().filter(|s| !s.passed()) {
                text.push_str(&format!("FAILED {}: {}\n", s.name, s.first_failure.as_deref().unwrap_or("")));
            }
            text.push_str(&format!("status: {}\n", if passed { "verified" } else { "failed" }));
            let result = json!({
                "seed": sampling.seed.to_string(),
                "suites": suites.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            });
            Ok(Output { json: envelope("verify properties", None, Some(passed), result), text, passed })
        }
    }
}

fn verifications(command: &str, group: Option<&str>, vs: Vec<Verification>) -> Result<Output, Error> {
    let passed = vs.iter().all(Verification::passed);
    let mut text = String::new();
    for v in &vs {
        let total = v.checks.items().len();
        let failed: Vec<_> = v.checks.failures().collect();
        text.push_str(&format!(
            "{}: {} ({}/{} checks)\n",
            v.title,
            if v.passed() { "verified" } else { "FAILED" },
            total - failed.len(),
            total
        ));
        for c in failed {
            match &c.detail {
                Some(d) => text.push_str(&format!("  failed: {} [{d}]\n", c.name)),
                None => text.push_str(&format!("  failed: {}\n", c.name)),
            }
        }
    }
    text.push_str(&format!("status: {}\n", if passed { "verified" } else { "failed" }));
    let result = json!({"verifications": vs.iter().map(Verification::to_json).collect::<Vec<_>>()});
    Ok(Output { json: envelope(command, group, Some(passed), result), text, passed })
}

fn parse_parabolic(idx: &[usize], rank: usize) -> Result<Subset, Error> {
    let mut l: Subset = 0;
    for &i in idx {
        if i >= rank {
            return Err(Error::InvalidArgument(format!("generator index {i} is out of range for rank {rank}")));
        }
        l |= 1 << i;
    }
    Ok(l)
}

/// Partitions of `n` in decreasing lexicographic order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
