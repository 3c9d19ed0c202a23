//! `lietori`: torus taxonomy, η and Q̂ bounds, exact base sizes and the
//! reproduction of the published claims.
//!
//! Every command builds a JSON result; `--output json` prints it inside a
//! versioned envelope (`schema: 1`), `text` and `csv` render it. Exit codes:
//! 0 when every checked claim matches, 1 on any mismatch, 2 on usage errors
//! (including inputs outside the supported range or the configured limits).

mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lietori::bounds::{exceptional_qhat, qhat_upper};
use lietori::classcat::{eta, eta_of, parse_class_csv, ClassLabel, Mode};
use lietori::matgrp::construct;
use lietori::taxonomy::{enumerate_torus_classes, torus_data, Family, GroupSpec, TorusClass};
use lietori::verifier::{self, CaseResult, PGroupSearch, VerifyConfig};
use lietori::LieError;
use num_rational::BigRational;
use permcore::{base_size_exact, coset_action, intersection_orders, subdegrees, BaseSize, Limits};
use serde_json::{json, Value};

use cache::Cache;

pub const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "lietori",
    version,
    about = "Maximal torus normalisers in groups of Lie type: taxonomy, bounds and base sizes"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Master seed for every randomised step; recorded in the report.
    #[arg(long, global = true, default_value_t = Limits::default().seed)]
    seed: u64,
    #[arg(long, global = true, default_value_t = Limits::default().max_degree as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: u64,
    #[arg(long, global = true, default_value_t = Limits::default().max_index,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_index: u64,
    /// Largest |G| for element-by-element class enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().exhaustive_limit,
          value_parser = clap::value_parser!(u64).range(1..))]
    exhaustive_limit: u64,
    #[arg(long, global = true, env = "LIETORI_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "LIETORI_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Section {
    Table1,
    Table3,
    Intersections,
    Vdovin,
    Eta,
    B2,
    Qhat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Torus classes of a group with |T|, |R| and |N|.
    Tori {
        /// L, U, S (Sp), O, O+, O-, G2, F4, E6, 2E6, E7, E8, 3D4, 2F4, 2G2, 2B2
        family: String,
        n: u32,
        q: u64,
        /// Use the twisted form (L -> U, O+ -> O-, E6 -> 2E6).
        #[arg(long)]
        twisted: bool,
    },
    /// Certified enclosure of η_G(t) over the prime-order classes.
    Eta {
        /// `L6(2)` or `L 6 2`
        #[arg(required = true, num_args = 1..=3)]
        spec: Vec<String>,
        #[arg(long)]
        t: String,
        /// Class sizes as CSV with header order,size,count.
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Upper bound for Q̂(G,N,2); without --torus, the exceptional ledgers.
    Qhat {
        #[arg(required = true, num_args = 1..=3)]
        spec: Vec<String>,
        /// `λ;μ` with optional +/- split tag, or `#k` for G2 and 3D4.
        #[arg(long)]
        torus: Option<String>,
    },
    /// Exact base size and |N ∩ N^x| multiset on the coset action.
    Basesize {
        #[arg(required = true, num_args = 1..=3)]
        spec: Vec<String>,
        #[arg(long)]
        torus: String,
    },
    /// Is N ∩ N^x a p-group for some x?
    Vdovin {
        #[arg(required = true, num_args = 1..=3)]
        spec: Vec<String>,
        #[arg(long)]
        torus: String,
    },
    /// Recompute the base sizes b >= 3.
    Table1 {
        #[arg(long)]
        skip_heavy: bool,
    },
    /// Torus classes of O8-(2).
    Table3,
    /// Check the claims file.
    Claims {
        /// Every section.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum)]
        section: Vec<Section>,
        #[arg(long)]
        skip_heavy: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<permcore::PermError> for Failure {
    fn from(e: permcore::PermError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// `U4(2)` or the three tokens `U 4 2`.
fn parse_spec(tokens: &[String]) -> Result<GroupSpec, Failure> {
    match tokens {
        [one] => Ok(one.parse()?),
        [fam, n, q] => {
            let family = Family::parse(fam).ok_or_else(|| Failure::Usage(format!("unknown family {fam:?}")))?;
            let n: u32 = n.parse().map_err(|_| Failure::Usage(format!("bad dimension {n:?}")))?;
            let q: u64 = q.parse().map_err(|_| Failure::Usage(format!("bad field size {q:?}")))?;
            Ok(GroupSpec::new(family, if family.is_classical() { n } else { 0 }, q)?)
        }
        _ => usage("a group is given as NAME(q) or as FAMILY N Q"),
    }
}

fn parse_torus(spec: &GroupSpec, s: &str) -> Result<TorusClass, Failure> {
    let cls: TorusClass = s.parse()?;
    torus_data(spec, &cls)?;
    Ok(cls)
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let t: BigRational = s.parse().map_err(|_| Failure::Usage(format!("bad rational {s:?}")))?;
    if t < BigRational::from_integer(0.into()) {
        return usage("t must be nonnegative");
    }
    Ok(t)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

struct Ctx {
    limits: Limits,
    cache: Cache,
}

impl Ctx {
    fn limits_key(&self) -> String {
        let l = &self.limits;
        format!("{}/{}/{}/{}", l.max_degree, l.max_index, l.exhaustive_limit, l.seed)
    }

    fn verify_config(&self, skip_heavy: bool) -> VerifyConfig {
        VerifyConfig {
            limits: self.limits.clone(),
            skip_heavy,
            ..VerifyConfig::default()
        }
    }
}

fn cmd_tori(family: &str, n: u32, q: u64, twisted: bool) -> Result<Value, Failure> {
    let mut fam = Family::parse(family).ok_or_else(|| Failure::Usage(format!("unknown family {family:?}")))?;
    if twisted {
        fam = match fam {
            Family::LinearA => Family::UnitaryA2,
            Family::OrthogonalPlusD => Family::OrthogonalMinus2D,
            Family::E6 => Family::E6tw,
            _ => return usage(format!("{} has no twisted form here", fam.symbol())),
        };
    }
    let spec = GroupSpec::new(fam, if fam.is_classical() { n } else { 0 }, q)?;
    let mut rows = Vec::new();
    for cls in enumerate_torus_classes(&spec)? {
        let td = torus_data(&spec, &cls)?;
        let factors: Vec<String> = td
            .hat_torus_factors
            .iter()
            .map(|f| format!("{}={}", f.label, f.order))
            .collect();
        rows.push(json!({
            "class": cls.to_string(),
            "t_order": td.torus_order.to_string(),
            "r_order": td.f_centralizer_order.to_string(),
            "n_order": td.normaliser_order.to_string(),
            "hat_t_order": td.hat_torus_order.to_string(),
            "hat_t_factors": factors,
        }));
    }
    Ok(json!({
        "group": spec.name(),
        "group_order": spec.group_order().to_string(),
        "classes": rows,
    }))
}

fn cmd_eta(ctx: &Ctx, spec: &GroupSpec, t: &str, classes: Option<&PathBuf>, mode: &str) -> Result<Value, Failure> {
    let t = parse_rational(t)?;
    let (rep, path) = match classes {
        Some(file) => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
            (eta_of(&parse_class_csv(spec, &text)?, &t), "ingested")
        }
        None => {
            let mode: Mode = mode.parse()?;
            let rep = eta(spec, &t, mode, &ctx.limits)?;
            // auto picks one of the two; enumerated classes carry cycle types
            let enumerated = rep
                .per_class
                .iter()
                .any(|(c, _)| matches!(c.label, ClassLabel::Computed { .. }));
            (rep, if enumerated { "brute_force" } else { "formula" })
        }
    };
    let per_class: Vec<Value> = rep
        .per_class
        .iter()
        .map(|(c, x)| {
            json!({
                "label": c.label.to_string(),
                "class": to_value(c),
                "term": [x.lo_decimal(20), x.hi_decimal(20)],
            })
        })
        .collect();
    Ok(json!({
        "group": spec.name(),
        "t": t.to_string(),
        "path": path,
        "value": [rep.value.lo_decimal(20), rep.value.hi_decimal(20)],
        "below_one": rep.below_one(),
        "classes": per_class,
    }))
}

fn cmd_qhat(ctx: &Ctx, spec: &GroupSpec, torus: Option<&str>) -> Result<Value, Failure> {
    match torus {
        Some(t) => {
            let cls = parse_torus(spec, t)?;
            let parts = [spec.name(), cls.to_string(), ctx.limits_key()];
            let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
            ctx.cache.get_or_compute("qhat", &parts, || {
                let r = qhat_upper(spec, &cls, &ctx.limits)?;
                Ok(json!({ "reports": [to_value(&r)] }))
            })
        }
        None if !spec.family.is_classical() => {
            let reps = exceptional_qhat(spec.family, spec.q())?;
            Ok(json!({ "reports": reps.iter().map(to_value).collect::<Vec<_>>() }))
        }
        None => usage("qhat needs --torus for classical groups"),
    }
}

fn cmd_basesize(ctx: &Ctx, spec: &GroupSpec, torus: &str) -> Result<Value, Failure> {
    let cls = parse_torus(spec, torus)?;
    let parts = [spec.name(), cls.to_string(), ctx.limits_key()];
    let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
    ctx.cache.get_or_compute("basesize", &parts, || {
        let con = construct(spec, &cls, &ctx.limits)?;
        let act = coset_action(&con.g, &con.n, &ctx.limits)?;
        let b = base_size_exact(&act, 8, &ctx.limits)?;
        let (b, witness, bracket) = match b {
            BaseSize::Exact { b, witness } => (Some(b), Some(witness), None),
            BaseSize::Bracket { lower, upper } => (None, None, Some(json!({ "lower": lower, "upper": upper }))),
        };
        let meets: Vec<Value> = intersection_orders(&act)
            .iter()
            .map(|(k, v)| json!({ "order": k.to_string(), "orbits": v }))
            .collect();
        let mut sd = subdegrees(&act);
        sd.dedup();
        Ok(json!({
            "group": spec.name(),
            "torus": cls.to_string(),
            "n_order": con.n.order().to_string(),
            "degree": act.degree,
            "b": b,
            "base": witness,
            "bracket": bracket,
            "intersections": meets,
            "subdegrees": sd,
        }))
    })
}

fn cmd_vdovin(ctx: &Ctx, spec: &GroupSpec, torus: &str) -> Result<Value, Failure> {
    let cls = parse_torus(spec, torus)?;
    let parts = [spec.name(), cls.to_string(), ctx.limits_key()];
    let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
    ctx.cache.get_or_compute("vdovin", &parts, || {
        let con = construct(spec, &cls, &ctx.limits)?;
        let s = verifier::p_group_search(&con, VerifyConfig::default().samples, &ctx.limits, 0)?;
        let (route, meet, orders) = match &s {
            PGroupSearch::Sampled(m) => ("sampled", Some(m.to_string()), None),
            PGroupSearch::Exhaustive { found, orders } => (
                "exhaustive",
                found.as_ref().map(|m| m.to_string()),
                Some(orders.iter().map(|o| o.to_string()).collect::<Vec<_>>()),
            ),
        };
        Ok(json!({
            "group": spec.name(),
            "torus": cls.to_string(),
            "p": spec.p,
            "p_group_intersection": s.exists(),
            "route": route,
            "witness_order": meet,
            "intersection_orders": orders,
        }))
    })
}

fn cases_value(cases: &[CaseResult]) -> Value {
    json!({ "cases": cases.iter().map(to_value).collect::<Vec<_>>() })
}

fn cmd_claims(ctx: &Ctx, sections: &[Section], skip_heavy: bool) -> Result<Value, Failure> {
    let cfg = ctx.verify_config(skip_heavy);
    let mut names: Vec<String> = sections.iter().map(|s| format!("{s:?}")).collect();
    names.push(format!("skip_heavy={skip_heavy}"));
    names.push(Cache::key(&[verifier::CLAIMS_JSON]));
    names.push(ctx.limits_key());
    let parts: Vec<&str> = names.iter().map(String::as_str).collect();
    ctx.cache.get_or_compute("claims", &parts, || {
        let mut out = Vec::new();
        for s in sections {
            out.extend(match s {
                Section::Table1 => verifier::verify_table1(&cfg)?,
                Section::Table3 => verifier::verify_table3()?,
                Section::Intersections => verifier::verify_intersections(&cfg)?,
                Section::Vdovin => verifier::verify_vdovin(&cfg)?,
                Section::Eta => verifier::verify_eta_tables(&cfg)?,
                Section::B2 => verifier::verify_b2_witnesses(&cfg)?,
                Section::Qhat => verifier::verify_qhat_ledgers(&cfg)?,
            });
        }
        Ok::<_, Failure>(cases_value(&out))
    })
}

fn mismatches(result: &Value) -> usize {
    result
        .get("cases")
        .and_then(Value::as_array)
        .map_or(0, |v| v.iter().filter(|c| c["status"] == "mismatch").count())
}

fn run(cli: &Cli) -> Result<(String, Value), Failure> {
    let g = &cli.global;
    let limits = Limits {
        max_degree: g.max_degree as usize,
        max_index: g.max_index,
        exhaustive_limit: g.exhaustive_limit,
        seed: g.seed,
    };
    let dir = if g.no_cache {
        None
    } else {
        g.cache_dir.clone().or_else(Cache::default_dir)
    };
    let ctx = Ctx {
        limits,
        cache: Cache::new(dir),
    };
    Ok(match &cli.cmd {
        Cmd::Tori { family, n, q, twisted } => ("tori".into(), cmd_tori(family, *n, *q, *twisted)?),
        Cmd::Eta { spec, t, classes, mode } => {
            let spec = parse_spec(spec)?;
            ("eta".into(), cmd_eta(&ctx, &spec, t, classes.as_ref(), mode)?)
        }
        Cmd::Qhat { spec, torus } => {
            let spec = parse_spec(spec)?;
            ("qhat".into(), cmd_qhat(&ctx, &spec, torus.as_deref())?)
        }
        Cmd::Basesize { spec, torus } => {
            let spec = parse_spec(spec)?;
            ("basesize".into(), cmd_basesize(&ctx, &spec, torus)?)
        }
        Cmd::Vdovin { spec, torus } => {
            let spec = parse_spec(spec)?;
            ("vdovin".into(), cmd_vdovin(&ctx, &spec, torus)?)
        }
        Cmd::Table1 { skip_heavy } => ("table1".into(), cmd_claims(&ctx, &[Section::Table1], *skip_heavy)?),
        Cmd::Table3 => ("table3".into(), cmd_claims(&ctx, &[Section::Table3], false)?),
        Cmd::Claims {
            all,
            section,
            skip_heavy,
        } => {
            let sections: Vec<Section> = if *all {
                Section::value_variants().to_vec()
            } else if section.is_empty() {
                return usage("claims needs --all or at least one --section");
            } else {
                section.clone()
            };
            ("claims".into(), cmd_claims(&ctx, &sections, *skip_heavy)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global() {
            eprintln!("error: cannot configure {j} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((command, result)) => {
            let bad = mismatches(&result);
            let envelope = json!({
                "schema": SCHEMA,
                "tool": "lietori",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "seed": cli.global.seed.to_string(),
                "limits": {
                    "max_degree": cli.global.max_degree.to_string(),
                    "max_index": cli.global.max_index.to_string(),
                    "exhaustive_limit": cli.global.exhaustive_limit.to_string(),
                },
                "result": result,
            });
            let text = match cli.global.output {
                Output::Json => serde_json::to_string_pretty(&envelope).expect("json") + "\n",
                Output::Csv => render::csv(&command, &envelope["result"]),
                Output::Text => render::text(&command, &envelope),
            };
            print!("{text}");
            if bad > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
