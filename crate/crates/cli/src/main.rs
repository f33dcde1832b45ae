//! Command-line surface over the component-class library: every computation
//! and every verifier, with stable text/JSON output and the exit-code
//! contract 0 = success or verified, 1 = mismatch, 2 = usage or precondition
//! error.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use quasihilb::catalan::{fuss_catalan, is_qt_symmetric, qt_catalan, verify_stratum_series};
use quasihilb::components::{
    class_bruteforce, class_bruteforce_ab, class_closed_form, components_for, derive, dplus_formula,
};
use quasihilb::diagram::{HilbertFunction, YoungDiagram};
use quasihilb::hookcode::{decode, encode, DiagramSequence};
use quasihilb::identities::{
    verify_class, verify_conjecture, verify_extra_identity, verify_good_series,
    verify_hilbert_series, verify_main_identity, VerifyReport,
};
use quasihilb::nested::{
    nested_counts, profiles_of_nested_tuples, verify_nested_consistency, NestedHilbertFunctions,
};
use quasihilb::{Error, Result};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

const T_ORDER_GUARD: u32 = 30;

#[derive(Parser)]
#[command(
    name = "quasihilb",
    version,
    about = "Component classes of quasi-homogeneous Hilbert schemes of points in the plane"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class of the component with profile H under weights (1, k), closed
    /// form cross-checked against fiber enumeration.
    Class {
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "DIMS")]
        h: String,
    },
    /// Class under general coprime weights (a, b), by fiber enumeration.
    ClassAb {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, value_name = "DIMS")]
        h: String,
    },
    /// Profiles of the components of the weight-(1, k) scheme of n points.
    Components {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Dimension statistic of the component with profile H.
    Dplus {
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "DIMS")]
        h: String,
    },
    /// Hook code of a partition, and its inverse.
    #[command(subcommand)]
    Hookcode(HookCmd),
    /// Two-parameter Catalan polynomial of slope-k lattice paths.
    Catalan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Evaluate at integer values "Q,T".
        #[arg(long, value_name = "Q,T")]
        at: Option<String>,
        /// Report whether the polynomial is symmetric in q and t.
        #[arg(long)]
        symmetry_report: bool,
    },
    /// Identity and series verifications.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum HookCmd {
    /// Encode a partition; prints the sequence as one-line JSON.
    Encode {
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "ROWS")]
        partition: String,
    },
    /// Decode a sequence read as JSON from stdin; prints the partition.
    Decode,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Closed-form class against enumeration for every component profile
    /// with total at most n-max.
    Thm1 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: u32,
    },
    /// Stratum series against the inverted Catalan polynomial for path
    /// lengths up to n-max.
    Thm2 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: usize,
    },
    /// Good-profile class series against the partition-like product, modulo
    /// t^(t-order + 1).
    Thm3 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t_order: u32,
        /// Override the t-order cost guard.
        #[arg(long)]
        allow_large: bool,
    },
    /// Sequence weight sum against its product form, for one profile or for
    /// every profile with total at most n-max.
    MainId {
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "DIMS", conflicts_with = "n_max")]
        h: Option<String>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Slack-partitioned weight sums against their product forms, for all
    /// admissible p of one profile (or a chosen --p), or swept to n-max.
    ExtraId {
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "DIMS", conflicts_with = "n_max")]
        h: Option<String>,
        #[arg(long, requires = "h", allow_hyphen_values = true)]
        p: Option<i64>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Full Hilbert series of the plane against the weighted product, modulo
    /// t^(t-order + 1).
    HilbertSeries {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t_order: u32,
        #[arg(long)]
        allow_large: bool,
    },
    /// Marked-cell series against the guessed product for coprime weights
    /// (a, b); a mismatch is reported as a finding.
    Conjecture {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        t_order: u32,
        #[arg(long)]
        allow_large: bool,
    },
    /// Chain count against the interleaved fiber count, for one tuple
    /// (--bh, JSON) or for all size-(n+1, n) tuples up to n-max.
    Nested {
        #[arg(long, value_name = "JSON", conflicts_with = "n_max")]
        bh: Option<String>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Compute both counts even when the gap hypothesis fails.
        #[arg(long, requires = "bh")]
        exploratory: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, ok) = match dispatch(&cli.cmd, cli.json) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{text}");
    }
    ExitCode::from(if ok { 0 } else { 1 })
}

fn parse_h(s: &str) -> Result<HilbertFunction> {
    HilbertFunction::from_str(s)
}

fn parse_partition(s: &str) -> Result<YoungDiagram> {
    YoungDiagram::from_str(s)
}

fn guard_t_order(t_order: u32, allow_large: bool) -> Result<()> {
    if t_order > T_ORDER_GUARD && !allow_large {
        return Err(Error::Parse(format!(
            "t-order {t_order} exceeds the cost guard {T_ORDER_GUARD}; pass --allow-large to override"
        )));
    }
    Ok(())
}

fn diff_text(main: &str, diff: &(u32, u32, BigInt, BigInt)) -> String {
    let (em, et, lhs, rhs) = diff;
    format!("{main}^{em}*t^{et}: lhs={lhs} rhs={rhs}")
}

/// One verification outcome as a text line and a JSON object.
fn report_output(
    label: &str,
    ctx: Value,
    rep: &VerifyReport,
    main: &str,
    json: bool,
) -> (String, bool) {
    let text = if json {
        let mut v = ctx;
        v["schema"] = json!(1);
        v["check"] = json!(label);
        v["verified"] = json!(rep.equal);
        v["report"] = rep.to_json(main);
        format!("{v}\n")
    } else if rep.equal {
        format!("{label}: verified\n")
    } else {
        format!(
            "{label}: MISMATCH at {}\n",
            diff_text(
                main,
                rep.first_diff
                    .as_ref()
                    .expect("unequal reports carry a difference")
            )
        )
    };
    (text, rep.equal)
}

fn sweep_output(
    label: &str,
    ctx: Value,
    checked: usize,
    unit: &str,
    failure: Option<(String, &VerifyReport)>,
    json: bool,
) -> (String, bool) {
    let ok = failure.is_none();
    let text = if json {
        let mut v = ctx;
        v["schema"] = json!(1);
        v["check"] = json!(label);
        v["verified"] = json!(ok);
        v["checked"] = json!(checked);
        v["failure"] = match &failure {
            None => Value::Null,
            Some((what, rep)) => json!({ "case": what, "report": rep.to_json("L") }),
        };
        format!("{v}\n")
    } else {
        match &failure {
            None => format!("{label}: verified ({checked} {unit})\n"),
            Some((what, rep)) => format!(
                "{label}: MISMATCH at {what}: {}\n",
                diff_text(
                    "L",
                    rep.first_diff
                        .as_ref()
                        .expect("unequal reports carry a difference")
                )
            ),
        }
    };
    (text, ok)
}

fn dispatch(cmd: &Cmd, json: bool) -> Result<(String, bool)> {
    match cmd {
        Cmd::Class { k, h } => {
            let h = parse_h(h)?;
            let class = class_closed_form(&h, *k)?;
            let oracle = class_bruteforce(&h, *k);
            let rep = VerifyReport::compare(oracle, class.clone());
            if json {
                let v = json!({
                    "schema": 1,
                    "k": k,
                    "H": h.dims(),
                    "class": class.to_json("L"),
                    "oracle_match": rep.equal,
                });
                return Ok((format!("{v}\n"), rep.equal));
            }
            if !rep.equal {
                return Ok(report_output(
                    "class oracle cross-check",
                    json!({}),
                    &rep,
                    "L",
                    false,
                ));
            }
            Ok((format!("{class}\n"), true))
        }
        Cmd::ClassAb { a, b, h } => {
            let h = parse_h(h)?;
            let class = class_bruteforce_ab(&h, *a, *b)?;
            if json {
                let v = json!({
                    "schema": 1,
                    "a": a,
                    "b": b,
                    "H": h.dims(),
                    "class": class.to_json("L"),
                });
                return Ok((format!("{v}\n"), true));
            }
            Ok((format!("{class}\n"), true))
        }
        Cmd::Components { n, k } => {
            let comps = components_for(*n, *k);
            if json {
                let arr: Vec<Value> = comps
                    .iter()
                    .map(|h| Value::from(h.dims().to_vec()))
                    .collect();
                let v = json!({ "schema": 1, "n": n, "k": k, "components": arr });
                return Ok((format!("{v}\n"), true));
            }
            let mut text = String::new();
            for h in &comps {
                writeln!(text, "{h}").expect("string write");
            }
            Ok((text, true))
        }
        Cmd::Dplus { k, h } => {
            let h = parse_h(h)?;
            let d = dplus_formula(&h, *k)?;
            if json {
                let v = json!({ "schema": 1, "k": k, "H": h.dims(), "dplus": d });
                return Ok((format!("{v}\n"), true));
            }
            Ok((format!("{d}\n"), true))
        }
        Cmd::Hookcode(HookCmd::Encode { k, partition }) => {
            let d = parse_partition(partition)?;
            let seq = encode(&d, *k);
            Ok((format!("{}\n", seq.to_json()), true))
        }
        Cmd::Hookcode(HookCmd::Decode) => {
            let input = std::io::read_to_string(std::io::stdin())
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            let v: Value = serde_json::from_str(&input)
                .map_err(|e| Error::Parse(format!("stdin is not JSON: {e}")))?;
            let seq = DiagramSequence::from_json(&v)?;
            let d = decode(&seq)?;
            if json {
                let v = json!({ "schema": 1, "partition": d.rows() });
                return Ok((format!("{v}\n"), true));
            }
            Ok((format!("{d}\n"), true))
        }
        Cmd::Catalan {
            n,
            k,
            at,
            symmetry_report,
        } => {
            let c = qt_catalan(*n, *k);
            let at = at
                .as_deref()
                .map(|s| -> Result<(BigInt, BigInt, BigInt)> {
                    let (q, t) = s
                        .split_once(',')
                        .ok_or_else(|| Error::Parse("expected --at Q,T".into()))?;
                    let q = BigInt::from_str(q.trim())
                        .map_err(|_| Error::Parse("Q must be an integer".into()))?;
                    let t = BigInt::from_str(t.trim())
                        .map_err(|_| Error::Parse("T must be an integer".into()))?;
                    let v = c.eval(&q, &t);
                    Ok((q, t, v))
                })
                .transpose()?;
            let symmetric = symmetry_report.then(|| is_qt_symmetric(&c));
            if json {
                let mut v = json!({
                    "schema": 1,
                    "n": n,
                    "k": k,
                    "count": fuss_catalan(*n, *k).to_string(),
                    "poly": c.to_json("q"),
                });
                if let Some((q, t, val)) = &at {
                    v["at"] =
                        json!({ "q": q.to_string(), "t": t.to_string(), "value": val.to_string() });
                }
                if let Some(s) = symmetric {
                    v["qt_symmetric"] = json!(s);
                }
                return Ok((format!("{v}\n"), true));
            }
            let mut text = format!("{}\n", c.to_text("q", "t"));
            if let Some((q, t, val)) = &at {
                writeln!(text, "at q={q} t={t}: {val}").expect("string write");
            }
            if let Some(s) = symmetric {
                writeln!(text, "qt-symmetric: {s}").expect("string write");
            }
            Ok((text, true))
        }
        Cmd::Verify(v) => dispatch_verify(v, json),
    }
}

fn dispatch_verify(cmd: &VerifyCmd, json: bool) -> Result<(String, bool)> {
    match cmd {
        VerifyCmd::Thm1 { k, n_max } => {
            let mut checked = 0;
            for n in 0..=*n_max {
                for h in components_for(n, *k) {
                    let rep = verify_class(&h, *k)?;
                    checked += 1;
                    if !rep.equal {
                        return Ok(sweep_output(
                            "thm1",
                            json!({ "k": k, "n_max": n_max }),
                            checked,
                            "profiles",
                            Some((format!("H={h}"), &rep)),
                            json,
                        ));
                    }
                }
            }
            Ok(sweep_output(
                "thm1",
                json!({ "k": k, "n_max": n_max }),
                checked,
                "profiles",
                None,
                json,
            ))
        }
        VerifyCmd::Thm2 { k, n_max } => {
            for n in 0..=*n_max {
                let rep = verify_stratum_series(*k, n)?;
                if !rep.equal {
                    return Ok(sweep_output(
                        "thm2",
                        json!({ "k": k, "n_max": n_max }),
                        n + 1,
                        "path lengths",
                        Some((format!("n={n}"), &rep)),
                        json,
                    ));
                }
            }
            Ok(sweep_output(
                "thm2",
                json!({ "k": k, "n_max": n_max }),
                n_max + 1,
                "path lengths",
                None,
                json,
            ))
        }
        VerifyCmd::Thm3 {
            k,
            t_order,
            allow_large,
        } => {
            guard_t_order(*t_order, *allow_large)?;
            let rep = verify_good_series(*k, *t_order)?;
            Ok(report_output(
                &format!("thm3 k={k} t-order={t_order}"),
                json!({ "k": k, "t_order": t_order }),
                &rep,
                "L",
                json,
            ))
        }
        VerifyCmd::MainId { k, h, n_max } => match (h, n_max) {
            (Some(h), None) => {
                let h = parse_h(h)?;
                let rep = verify_main_identity(&h, *k)?;
                Ok(report_output(
                    &format!("main-id k={k} H={h}"),
                    json!({ "k": k, "H": h.dims() }),
                    &rep,
                    "L",
                    json,
                ))
            }
            (None, Some(n_max)) => {
                let mut checked = 0;
                for n in 0..=*n_max {
                    for h in components_for(n, *k) {
                        let rep = verify_main_identity(&h, *k)?;
                        checked += 1;
                        if !rep.equal {
                            return Ok(sweep_output(
                                "main-id",
                                json!({ "k": k, "n_max": n_max }),
                                checked,
                                "profiles",
                                Some((format!("H={h}"), &rep)),
                                json,
                            ));
                        }
                    }
                }
                Ok(sweep_output(
                    "main-id",
                    json!({ "k": k, "n_max": n_max }),
                    checked,
                    "profiles",
                    None,
                    json,
                ))
            }
            _ => Err(Error::Parse("pass exactly one of --h or --n-max".into())),
        },
        VerifyCmd::ExtraId { k, h, p, n_max } => match (h, n_max) {
            (Some(h), None) => {
                let h = parse_h(h)?;
                let ctx = derive(&h, *k);
                let ps: Vec<i64> = match p {
                    Some(p) => vec![*p],
                    None => (ctx.psi()..ctx.psi() + *k as i64).collect(),
                };
                let mut text = String::new();
                let mut all_ok = true;
                let mut objs = Vec::new();
                for p in ps {
                    let rep = verify_extra_identity(&h, *k, p)?;
                    let (line, ok) = report_output(
                        &format!("extra-id k={k} H={h} p={p}"),
                        json!({ "k": k, "H": h.dims(), "p": p }),
                        &rep,
                        "L",
                        json,
                    );
                    all_ok &= ok;
                    if json {
                        objs.push(serde_json::from_str::<Value>(line.trim()).expect("own output"));
                    } else {
                        text.push_str(&line);
                    }
                }
                if json {
                    let v = json!({ "schema": 1, "check": "extra-id", "verified": all_ok, "cases": objs });
                    return Ok((format!("{v}\n"), all_ok));
                }
                Ok((text, all_ok))
            }
            (None, Some(n_max)) => {
                let mut checked = 0;
                for n in 0..=*n_max {
                    for h in components_for(n, *k) {
                        let ctx = derive(&h, *k);
                        for p in ctx.psi()..ctx.psi() + *k as i64 {
                            let rep = verify_extra_identity(&h, *k, p)?;
                            checked += 1;
                            if !rep.equal {
                                return Ok(sweep_output(
                                    "extra-id",
                                    json!({ "k": k, "n_max": n_max }),
                                    checked,
                                    "cases",
                                    Some((format!("H={h} p={p}"), &rep)),
                                    json,
                                ));
                            }
                        }
                    }
                }
                Ok(sweep_output(
                    "extra-id",
                    json!({ "k": k, "n_max": n_max }),
                    checked,
                    "cases",
                    None,
                    json,
                ))
            }
            _ => Err(Error::Parse("pass exactly one of --h or --n-max".into())),
        },
        VerifyCmd::HilbertSeries {
            k,
            t_order,
            allow_large,
        } => {
            guard_t_order(*t_order, *allow_large)?;
            let rep = verify_hilbert_series(*k, *t_order)?;
            Ok(report_output(
                &format!("hilbert-series k={k} t-order={t_order}"),
                json!({ "k": k, "t_order": t_order }),
                &rep,
                "L",
                json,
            ))
        }
        VerifyCmd::Conjecture {
            a,
            b,
            t_order,
            allow_large,
        } => {
            guard_t_order(*t_order, *allow_large)?;
            let rep = verify_conjecture(*a, *b, *t_order)?;
            if !json && !rep.equal {
                // A finding, spelled out with the first differing coefficient.
                let text = format!(
                    "conjecture a={a} b={b} t-order={t_order}: FINDING, sides differ at {}\n",
                    diff_text(
                        "L",
                        rep.first_diff
                            .as_ref()
                            .expect("unequal reports carry a difference")
                    )
                );
                return Ok((text, false));
            }
            Ok(report_output(
                &format!("conjecture a={a} b={b} t-order={t_order}"),
                json!({ "a": a, "b": b, "t_order": t_order }),
                &rep,
                "L",
                json,
            ))
        }
        VerifyCmd::Nested {
            bh,
            n_max,
            exploratory,
        } => match (bh, n_max) {
            (Some(bh), None) => {
                let v: Value = serde_json::from_str(bh)
                    .map_err(|e| Error::Parse(format!("--bh is not JSON: {e}")))?;
                let tuple = NestedHilbertFunctions::from_json(&v)?;
                let rep = if *exploratory {
                    nested_counts(&tuple)
                } else {
                    verify_nested_consistency(&tuple)?
                };
                if json {
                    let mut v = rep.to_json();
                    v["schema"] = json!(1);
                    v["check"] = json!("nested");
                    v["verified"] = json!(rep.equal);
                    return Ok((format!("{v}\n"), rep.equal));
                }
                let verdict = if rep.equal { "verified" } else { "MISMATCH" };
                Ok((
                    format!(
                        "nested: chains={} fiber={}: {verdict}\n",
                        rep.chain_count, rep.fiber_count
                    ),
                    rep.equal,
                ))
            }
            (None, Some(n_max)) => {
                let mut checked = 0;
                for n in 0..=*n_max {
                    for tuple in profiles_of_nested_tuples(&[n + 1, n]) {
                        let rep = verify_nested_consistency(&tuple)?;
                        checked += 1;
                        if !rep.equal {
                            let text = if json {
                                let v = json!({
                                    "schema": 1,
                                    "check": "nested",
                                    "verified": false,
                                    "checked": checked,
                                    "failure": { "bh": tuple.to_json(), "report": rep.to_json() },
                                });
                                format!("{v}\n")
                            } else {
                                format!(
                                    "nested n-max={n_max}: MISMATCH at bH={:?}: chains={} fiber={}\n",
                                    tuple.totals(),
                                    rep.chain_count,
                                    rep.fiber_count
                                )
                            };
                            return Ok((text, false));
                        }
                    }
                }
                let text = if json {
                    let v = json!({
                        "schema": 1,
                        "check": "nested",
                        "verified": true,
                        "checked": checked,
                        "failure": Value::Null,
                    });
                    format!("{v}\n")
                } else {
                    format!("nested n-max={n_max}: verified ({checked} tuples)\n")
                };
                Ok((text, true))
            }
            _ => Err(Error::Parse("pass exactly one of --bh or --n-max".into())),
        },
    }
}
