//! The `motzkin` command line.

pub mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{gram, parse_word, AlgElem};
use crate::bimodules::{basis, left_action_faithful, verify_space, FusionLabel, FusionRing};
use crate::error::{Error, Result};
use crate::idempotents::{jw, matrix_units, verify_jw, verify_matrix_units, Report};
use crate::scalars::Param;
use crate::tangles::{count_motzkin, enumerate_tangles, to_dot};
use crate::towers::{bratteli, commutant_table, compare_gf, gf_coefficients, gf_coefficients_generic, gns_dim};

use verify::{expected_dims, Bounds, SuiteOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Small,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "motzkin", version, about = "Exact computations in Motzkin diagram algebras")]
pub struct Cli {
    /// Loop value: a rational such as 4 or 7/2, or cos:ν for 1 + 2cos(π/ν)
    #[arg(long = "D", global = true, value_name = "D")]
    pub big_d: Option<String>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest Gram matrix side a command may build
    #[arg(long, global = true, default_value_t = 1000)]
    pub max_gram: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Motzkin numbers 𝓜_0..=𝓜_upto
    Count {
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
    /// All tangles of a shape in canonical order
    Enum {
        #[arg(long, value_parser = parse_shape)]
        shape: (usize, usize),
    },
    /// Product of words in M_n, left to right
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Normalized trace of a word in M_n
    Trace {
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Gram form of the tangle space M(m, n)
    Gram {
        #[arg(long, value_parser = parse_shape)]
        shape: (usize, usize),
        /// rank, size, psd or matrix
        #[arg(long, default_value = "rank")]
        emit: String,
    },
    /// The idempotent g_k
    Jw {
        #[arg(long)]
        k: usize,
        /// summary, trace, element or verify
        #[arg(long, default_value = "summary")]
        emit: String,
    },
    /// Matrix-unit family of M_n checked modulo the radical
    Units {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Block dimensions and inclusions of the tower
    Bratteli {
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Write Graphviz output to this file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Closed-form dimensions against Gram ranks
    Dims {
        #[arg(long, default_value_t = 8)]
        upto: usize,
        /// text, json or csv
        #[arg(long)]
        emit: Option<String>,
    },
    /// Generating-function coefficients
    Gf {
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
    /// Blocks and weights of the generic relative commutant
    Commutant {
        #[arg(long)]
        k: usize,
    },
    /// Stage data of the bimodule H_m(p)
    Bimod {
        /// 1_k, g_k, or a word in M_k given with --k
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        report: bool,
    },
    /// Fusion of two labels: "k,i x l,j"
    Fuse { expr: String },
    /// Property sweeps
    Verify {
        /// all, or one of scalars, tangles, algebra, idempotents, towers, bimodules
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "small")]
        bound: BoundKind,
    },
}

fn parse_shape(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("shape {s:?} is not m,n"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

/// What a command produced: text for standard output and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, passed: true }
    }
}

fn param_of(cli: &Cli) -> Result<Param> {
    cli.big_d
        .as_deref()
        .ok_or_else(|| Error::parse("--D is required for this command"))?
        .parse()
}

fn lines<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn report_out(rep: &Report, flags: &[verify::Flag], format: Format) -> Outcome {
    let text = if format == Format::Json {
        let checks: Vec<Value> = rep
            .checks
            .iter()
            .map(|c| json!({"kind": "check", "name": c.name, "passed": c.passed}))
            .chain(flags.iter().map(|f| json!({"kind": "flag", "name": f.name, "detail": f.detail})))
            .collect();
        serde_json::to_string_pretty(&json!({"passed": rep.passed(), "records": checks})).expect("json")
    } else {
        let mut s = String::new();
        for c in &rep.checks {
            let _ = writeln!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        }
        for f in flags {
            let _ = writeln!(s, "FLAG {}: {}", f.name, f.detail);
        }
        let failed = rep.failures().count();
        let _ = write!(s, "{} checks, {} failed, {} flags", rep.checks.len(), failed, flags.len());
        s
    };
    Outcome {
        text,
        passed: rep.passed(),
    }
}

fn projection(text: &str, k: Option<usize>, param: &Param) -> Result<AlgElem> {
    let s = text.trim();
    if let Some(n) = s.strip_prefix("1_").or_else(|| s.strip_prefix("id")) {
        let n = if n.is_empty() { k.unwrap_or(1) } else { n.parse().map_err(|_| Error::parse(format!("bad size in {s:?}")))? };
        return Ok(AlgElem::identity(param, n));
    }
    if let Some(n) = s.strip_prefix('g').map(|x| x.trim_start_matches('_')) {
        if let Ok(n) = n.parse::<usize>() {
            return jw(n, param);
        }
    }
    let k = k.ok_or_else(|| Error::parse("--k is needed for a general word"))?;
    parse_word(s, k, param)
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    if cli.big_d.is_some() {
        param_of(cli)?;
    }
    let format = cli.format;
    match &cli.command {
        Command::Count { upto } => {
            let xs: Vec<_> = (0..=*upto).map(count_motzkin).collect();
            Ok(Outcome::ok(match format {
                Format::Json => json!(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>()).to_string(),
                Format::Csv => lines(xs.iter().enumerate().map(|(k, x)| format!("{k},{x}")), "\n"),
                _ => lines(&xs, " "),
            }))
        }
        Command::Enum { shape } => {
            let ts = enumerate_tangles(shape.0, shape.1)?;
            Ok(Outcome::ok(match format {
                Format::Json => serde_json::to_string_pretty(&ts.iter().map(|t| t.to_json()).collect::<Vec<_>>())
                    .expect("json"),
                Format::Dot => lines(ts.iter().enumerate().map(|(i, t)| to_dot(t, &format!("t{i}"))), ""),
                _ => lines(&ts, "\n"),
            }))
        }
        Command::Mul { n, words } => {
            let param = param_of(cli)?;
            let mut acc = AlgElem::identity(&param, *n);
            for w in words {
                acc = acc.multiply(&parse_word(w, *n, &param)?)?;
            }
            Ok(Outcome::ok(if format == Format::Json {
                serde_json::to_string_pretty(&acc.to_json()).expect("json")
            } else {
                acc.to_string()
            }))
        }
        Command::Trace { n, word } => {
            let param = param_of(cli)?;
            let t = parse_word(word, *n, &param)?.trace()?;
            Ok(Outcome::ok(if format == Format::Json { t.to_json().to_string() } else { t.to_string() }))
        }
        Command::Gram { shape, emit } => {
            let param = param_of(cli)?;
            let size = count_motzkin(shape.0 + shape.1);
            if size > cli.max_gram.into() {
                return Err(Error::DomainError(format!(
                    "Gram matrix of side {size} exceeds --max-gram {}",
                    cli.max_gram
                )));
            }
            let g = gram(shape.0, shape.1, &param)?;
            Ok(Outcome::ok(match emit.as_str() {
                "rank" => g.rank().to_string(),
                "size" => g.size().to_string(),
                "psd" => g.is_psd().to_string(),
                "matrix" => {
                    let rows = g.matrix();
                    if format == Format::Json {
                        json!(rows.iter().map(|r| r.iter().map(|x| x.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>())
                            .to_string()
                    } else {
                        lines(rows.iter().map(|r| lines(r, ",")), "\n")
                    }
                }
                other => return Err(Error::parse(format!("unknown --emit {other:?} for gram"))),
            }))
        }
        Command::Jw { k, emit } => {
            let param = param_of(cli)?;
            match emit.as_str() {
                "verify" => Ok(report_out(&verify_jw(*k, &param)?, &[], format)),
                "trace" => Ok(Outcome::ok(jw(*k, &param)?.trace()?.to_string())),
                "element" => {
                    let g = jw(*k, &param)?;
                    Ok(Outcome::ok(if format == Format::Json {
                        serde_json::to_string_pretty(&g.to_json()).expect("json")
                    } else {
                        g.to_string()
                    }))
                }
                "summary" => {
                    let g = jw(*k, &param)?;
                    let tr = g.trace()?;
                    Ok(Outcome::ok(if format == Format::Json {
                        json!({"k": k, "param": param.to_string(), "terms": g.len(), "trace": tr.to_json()}).to_string()
                    } else {
                        format!("g_{k} at {param}: {} terms, trace {tr}", g.len())
                    }))
                }
                other => Err(Error::parse(format!("unknown --emit {other:?} for jw"))),
            }
        }
        Command::Units { n } => {
            let param = param_of(cli)?;
            let fam = matrix_units(*n, &param)?;
            let rep = verify_matrix_units(&fam, &gram(*n, *n, &param)?)?;
            Ok(report_out(&rep, &[], format))
        }
        Command::Bratteli { depth, dot } => {
            let param = param_of(cli)?;
            let b = bratteli(&param, *depth);
            if let Some(path) = dot {
                std::fs::write(path, b.to_dot()).map_err(|e| Error::DomainError(format!("{}: {e}", path.display())))?;
            }
            Ok(Outcome::ok(match format {
                Format::Dot => b.to_dot(),
                Format::Json => json!({
                    "param": param.to_string(),
                    "levels": b.levels.iter().map(|l| l.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "inclusions": b.inclusions,
                })
                .to_string(),
                _ => lines(b.levels.iter().enumerate().map(|(k, l)| format!("{k}: {}", lines(l, " "))), "\n"),
            }))
        }
        Command::Dims { upto, emit } => {
            let param = param_of(cli)?;
            let fmt = match emit.as_deref() {
                Some("csv") => Format::Csv,
                Some("json") => Format::Json,
                Some("text") => Format::Text,
                Some(other) => return Err(Error::parse(format!("unknown --emit {other:?} for dims"))),
                None => format,
            };
            let expected = expected_dims(&param, *upto);
            let mut rows = Vec::new();
            let mut passed = true;
            for (k, want) in expected.iter().enumerate() {
                let got = gns_dim(k, &param)?;
                let ok = *want == got.into();
                passed &= ok;
                rows.push((k, want.clone(), got, ok));
            }
            let text = match fmt {
                Format::Json => json!(rows
                    .iter()
                    .map(|(k, w, g, ok)| json!({"k": k, "closed_form": w.to_string(), "gram_rank": g, "match": ok}))
                    .collect::<Vec<_>>())
                .to_string(),
                _ => {
                    let sep = if fmt == Format::Csv { "," } else { " " };
                    let head = lines(["k", "closed_form", "gram_rank", "match"], sep);
                    let body = rows.iter().map(|(k, w, g, ok)| lines([k.to_string(), w.to_string(), g.to_string(), ok.to_string()], sep));
                    lines(std::iter::once(head).chain(body), "\n")
                }
            };
            Ok(Outcome { text, passed })
        }
        Command::Gf { n } => {
            let param = param_of(cli)?;
            match param.nu() {
                Some(nu) => {
                    let coeffs = gf_coefficients(nu, *n)?;
                    let cmp = compare_gf(nu, *n)?;
                    let flag = cmp.first_mismatch.as_ref().map(|(x, a, b)| {
                        json!({"kind": "flag", "name": "P_(nu-1)/P_nu comparison", "power": x, "resolvent": a.to_string(), "ratio": b.to_string()})
                    });
                    Ok(Outcome::ok(if format == Format::Json {
                        json!({"coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "flag": flag}).to_string()
                    } else {
                        let mut s = lines(&coeffs, " ");
                        if let Some((x, a, b)) = &cmp.first_mismatch {
                            let _ = write!(s, "\nFLAG P_{}/P_{} series differs at x^{x}: resolvent {a}, ratio {b}", nu - 1, nu);
                        }
                        s
                    }))
                }
                None => Ok(Outcome::ok(lines(gf_coefficients_generic(*n), " "))),
            }
        }
        Command::Commutant { k } => {
            let param = param_of(cli)?;
            let big_d = param
                .loop_value()
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::DomainError("commutant tables need a rational D >= 3".into()))?;
            let t = commutant_table(*k, &big_d)?;
            let total = t.total_weight();
            let literal = t.total_literal_weight();
            if format == Format::Json {
                let blocks: Vec<Value> = t
                    .blocks
                    .iter()
                    .map(|b| {
                        json!({"composition": [b.composition.0, b.composition.1, b.composition.2],
                            "dim": b.dim.to_string(), "weight": b.weight.to_string(),
                            "literal_weight": b.literal_weight.to_string()})
                    })
                    .collect();
                let flag = (!literal.is_one()).then(|| json!({"kind": "flag", "name": "literal D^i weights", "total": literal.to_string()}));
                return Ok(Outcome {
                    text: json!({"k": k, "q": t.q.to_string(), "blocks": blocks, "total_weight": total.to_string(), "flag": flag}).to_string(),
                    passed: total.is_one(),
                });
            }
            let mut s = format!("k={k} D={} q={}\n", big_d, t.q);
            for b in &t.blocks {
                let (i, j, l) = b.composition;
                let _ = writeln!(s, "({i},{j},{l}) dim {} weight {} literal {}", b.dim, b.weight, b.literal_weight);
            }
            let _ = write!(s, "blocks {} dimension {} total weight {total}", t.blocks.len(), t.dimension());
            if !literal.is_one() {
                let _ = write!(s, "\nFLAG literal D^i weights total {literal}");
            }
            Ok(Outcome {
                text: s,
                passed: total.is_one(),
            })
        }
        Command::Bimod { p, m, k, report } => {
            let param = param_of(cli)?;
            let p = projection(p, *k, &param)?;
            let space = basis(*m, &p)?;
            let rank = space.rank()?;
            let mut text = format!(
                "H_{m}(p) with |p| = {} at {param}: {} spanning pictures, Gram rank {rank}",
                p.shape().0,
                space.len()
            );
            let mut passed = true;
            if *report {
                let rep = verify_space(&space)?;
                passed = rep.passed();
                let out = report_out(&rep, &[], Format::Text);
                let faithful = left_action_faithful(&space)?;
                let _ = write!(text, "\n{}\nleft action of M_{m} on this stage is {}", out.text, if faithful { "injective" } else { "not injective" });
            }
            Ok(Outcome { text, passed })
        }
        Command::Fuse { expr } => {
            let param = param_of(cli)?;
            let (a, b) = expr
                .split_once(['x', '*'])
                .ok_or_else(|| Error::parse(format!("{expr:?} is not \"k,i x l,j\"")))?;
            let a: FusionLabel = a.parse()?;
            let b: FusionLabel = b.parse()?;
            let a = FusionLabel::new(a.k, a.i, &param)?;
            let b = FusionLabel::new(b.k, b.i, &param)?;
            let ring = FusionRing::new(&param);
            let fused = crate::bimodules::fuse(a, b, ring.cap);
            let labels: Vec<Value> = fused.labels.iter().map(|l| json!([l.k, l.i])).collect();
            Ok(Outcome::ok(if format == Format::Text && fused.labels.is_empty() {
                "[]".into()
            } else if fused.capped {
                json!({"labels": labels, "flag": "truncated at cap"}).to_string()
            } else {
                json!(labels).to_string()
            }))
        }
        Command::Verify { suite, bound } => {
            let params: Vec<Param> = match &cli.big_d {
                Some(d) => vec![d.parse()?],
                None => ["4", "2", "cos:4", "cos:5"].iter().map(|s| s.parse()).collect::<Result<_>>()?,
            };
            let bounds = match bound {
                BoundKind::Small => Bounds::small(),
                BoundKind::Full => Bounds::full(),
            };
            let out: SuiteOutput = verify::verify(suite, &params, &bounds, cli.seed)?;
            Ok(report_out(&out.report, &out.flags, format))
        }
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("motzkin: {e}");
            2
        }
    }
}
