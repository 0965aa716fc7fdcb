// SPDX-License-Identifier: Apache-2.0

use std::io::{Read, Write};
use std::process::ExitCode;

use braidtrace::lefschetz::{count_to_i64, CAVEAT};
use braidtrace::*;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Lefschetz, Nielsen and Burau invariants of braids acting on the
/// punctured disk.
#[derive(Parser, Debug)]
#[command(name = "braidtrace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugate into `gamma^-1 theta^mu beta(I) gamma`.
    Normalize(BraidArgs),
    /// Representative of the generalized Lefschetz number.
    Lefschetz {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, value_enum, default_value_t = RouteArg::Theorem1)]
        route: RouteArg,
        /// Merge terms related by conjugators of at most this many letters.
        #[arg(long, default_value_t = 0)]
        merge_bound: usize,
    },
    /// Upper bound and, under its hypotheses, an interval for the Nielsen number.
    Nielsen {
        #[command(flatten)]
        braid: BraidArgs,
        /// Use this sequence `I` (comma separated) instead of a braid.
        #[arg(long, value_delimiter = ',', conflicts_with = "braid")]
        seq: Option<Vec<usize>>,
    },
    /// Reduced Burau matrix and its trace.
    Burau(BraidArgs),
    /// Rotation data, pseudo-Anosov certificate and permutation report.
    Classify(BraidArgs),
    /// Cyclic partitions of Z_d with blocks of length at most n - 1.
    Partitions {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct BraidArgs {
    /// Strand count.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Signed generators such as "1 -2", or `-` to read stdin.
    braid: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Theorem1,
    Foxtrace,
    Both,
}

enum Failure {
    Parse(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Other(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(Value, String), Failure>;

impl BraidArgs {
    fn braid(&self) -> std::result::Result<BraidWord, Failure> {
        let text = match self.braid.as_deref() {
            Some("-") => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::Parse(format!("reading stdin: {e}")))?;
                buf
            }
            Some(t) => t.to_string(),
            None => return Err(Failure::Parse("missing braid argument".into())),
        };
        Ok(BraidWord::parse(&text, self.n)?)
    }
}

fn count(v: &BigInt) -> Value {
    count_to_i64(v).map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn lines<I: IntoIterator<Item = String>>(it: I) -> String {
    it.into_iter().collect::<Vec<_>>().join("\n")
}

fn seq_text(seq: &[usize]) -> String {
    let parts: Vec<String> = seq.iter().map(|i| i.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cmd_normalize(args: &BraidArgs) -> Outcome {
    let nf = normalize(&args.braid()?)?;
    let text = lines([
        format!("mu = {}", nf.mu),
        format!("I = {}", seq_text(&nf.indices)),
        format!("gamma = {}", if nf.gamma.is_empty() { "e".to_string() } else { nf.gamma.to_string() }),
    ]);
    let mut value = serde_json::to_value(nf.to_json()).expect("serializable");
    if nf.is_central() {
        value["central"] = Value::Bool(true);
    }
    Ok((value, text))
}

fn route_json(res: &LefschetzResult) -> Value {
    let mut v = json!({
        "route": res.route,
        "representative": res.representative.to_json(),
        "representative_text": res.representative.to_string(),
    });
    if let Some(nf) = &res.normal_form {
        v["normal_form"] = serde_json::to_value(nf.to_json()).expect("serializable");
    }
    v
}

fn cmd_lefschetz(args: &BraidArgs, route: RouteArg, merge_bound: usize) -> Outcome {
    let braid = args.braid()?;
    let run = |r: RouteArg| -> std::result::Result<LefschetzResult, Failure> {
        let mut res = match r {
            RouteArg::Foxtrace => foxtrace(&braid),
            _ => theorem1(&normalize(&braid)?)?,
        };
        res.representative = merge_classes(&res.representative, &braid, merge_bound)?;
        Ok(res)
    };
    match route {
        RouteArg::Both => {
            let t1 = run(RouteArg::Theorem1)?;
            let fx = run(RouteArg::Foxtrace)?;
            let (a1, a2) = (t1.abelianized(), fx.abelianized());
            if a1 != a2 {
                return Err(Failure::Other(format!("routes disagree after abelianization: {a1} vs {a2}")));
            }
            let value = json!({
                "route": "both",
                "theorem1": route_json(&t1),
                "foxtrace": route_json(&fx),
                "abelianized": a1.to_string(),
                "abelianized_terms": a1,
                "agree": true,
                "merge_bound": merge_bound,
                "caveat": CAVEAT,
            });
            let text = lines([
                format!("theorem1: {}", t1.representative),
                format!("foxtrace: {}", fx.representative),
                format!("abelianized: {a1}"),
                format!("caveat: {CAVEAT}"),
            ]);
            Ok((value, text))
        }
        r => {
            let res = run(r)?;
            let ab = res.abelianized();
            let mut value = route_json(&res);
            value["abelianized"] = Value::String(ab.to_string());
            value["abelianized_terms"] = serde_json::to_value(&ab).expect("serializable");
            value["merge_bound"] = Value::from(merge_bound);
            value["caveat"] = Value::String(CAVEAT.into());
            let text = lines([
                format!("{}: {}", res.route, res.representative),
                format!("abelianized: {ab}"),
                format!("caveat: {CAVEAT}"),
            ]);
            Ok((value, text))
        }
    }
}

fn cmd_nielsen(args: &BraidArgs, seq: Option<&[usize]>) -> Outcome {
    let n = args.n;
    let (mu, seq) = match seq {
        Some(s) => (None, s.to_vec()),
        None => {
            let nf = normalize(&args.braid()?)?;
            (Some(nf.mu), nf.require_sequence()?.to_vec())
        }
    };
    let upper = nielsen_upper(&seq, n)?;
    let mut value = json!({ "n": n, "I": seq, "upper": count(&upper) });
    if let Some(mu) = mu {
        value["mu"] = Value::from(mu);
    }
    let mut text = vec![format!("I = {}", seq_text(&seq)), format!("upper bound: {upper}")];
    match theorem2_bounds(&seq, n) {
        Ok(b) => {
            value["interval"] = json!({
                "lower": count(&b.lower),
                "upper": count(&b.upper),
                "formula_lower": count(&b.formula_lower),
                "abelian_terms": b.abelian_terms,
            });
            text.push(format!("interval: [{}, {}]", b.lower, b.upper));
            text.push(format!("formula lower bound: {}", b.formula_lower));
            text.push(format!("distinct abelianized terms: {}", b.abelian_terms));
        }
        Err(e) => {
            value["interval"] = Value::Null;
            value["interval_unavailable"] = Value::String(e.to_string());
            text.push(format!("interval unavailable: {e}"));
        }
    }
    Ok((value, lines(text)))
}

fn cmd_burau(args: &BraidArgs) -> Outcome {
    let m = reduced_burau(&args.braid()?);
    let tr = m.trace();
    let rows: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    let value = json!({
        "n": args.n,
        "matrix": m.rows().collect::<Vec<_>>(),
        "matrix_text": rows,
        "trace": tr.to_string(),
        "trace_terms": tr,
    });
    let mut text: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    text.push(format!("trace: {tr}"));
    Ok((value, lines(text)))
}

fn cmd_classify(args: &BraidArgs) -> Outcome {
    let c = classify(&args.braid()?)?;
    let mut text = vec![format!("mu = {}, I = {}", c.normal_form.mu, seq_text(&c.normal_form.indices))];
    match (&c.rotation, &c.rotation_error) {
        (Some(r), _) => text.push(format!("rotation: m = {}, nu = {}, number = {}", r.m, r.nu, r.rotation_number())),
        (None, Some(e)) => text.push(format!("rotation unavailable: {e}")),
        (None, None) => {}
    }
    text.push(format!(
        "pseudo-Anosov certificate: {} ({})",
        if c.pseudo_anosov.certified { "yes" } else { "no" },
        c.pseudo_anosov.reasons.join("; ")
    ));
    if let Some(s) = &c.pseudo_anosov.statement {
        text.push(s.clone());
    }
    let cy = &c.cyclicity;
    text.push(format!(
        "n-cycle: {}, n prime: {}, exponent sum: {} (divisible by n - 1: {})",
        cy.n_cycle, cy.n_prime, cy.exponent_sum, cy.exponent_sum_divisible_by_n_minus_1
    ));
    if !cy.flags.is_empty() {
        text.push(format!("flags: {}", cy.flags.join(", ")));
    }
    let mut value = serde_json::to_value(&c).expect("serializable");
    if let Some(r) = &c.rotation {
        value["rotation"]["rotation_number"] = Value::String(r.rotation_number());
    }
    Ok((value, lines(text)))
}

fn cmd_partitions(d: usize, n: usize) -> Outcome {
    if n < 3 {
        return Err(Error::InvalidRank(n).into());
    }
    if d == 0 {
        return Err(Error::EmptySequence.into());
    }
    let all: Vec<String> = enumerate_partitions(d, n).iter().map(|p| p.to_string()).collect();
    let refined: Vec<String> = enumerate_partitions_prime(d, n).iter().map(|p| p.to_string()).collect();
    let value = json!({
        "d": d,
        "n": n,
        "count": all.len(),
        "partitions": all,
        "refined_count": refined.len(),
        "refined": refined,
    });
    let mut text = vec![format!("P({d}), n = {n}: {} partitions", all.len())];
    text.extend(all.iter().cloned());
    text.push(format!("P'({d}): {} partitions", refined.len()));
    text.extend(refined.iter().cloned());
    Ok((value, lines(text)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (outcome, format) = match &cli.command {
        Command::Normalize(a) => (cmd_normalize(a), a.format),
        Command::Lefschetz { braid, route, merge_bound } => {
            (cmd_lefschetz(braid, *route, *merge_bound), braid.format)
        }
        Command::Nielsen { braid, seq } => (cmd_nielsen(braid, seq.as_deref()), braid.format),
        Command::Burau(a) => (cmd_burau(a), a.format),
        Command::Classify(a) => (cmd_classify(a), a.format),
        Command::Partitions { d, n, format } => (cmd_partitions(*d, *n), *format),
    };
    match outcome {
        Ok((value, text)) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
                Format::Text => text,
            };
            // A closed pipe (e.g. `| head`) is not an error.
            match writeln!(std::io::stdout().lock(), "{body}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
