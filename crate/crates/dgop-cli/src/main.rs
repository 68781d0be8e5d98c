mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use dgop::classical::Classical;
use dgop::cobar::Cobar;
use dgop::conv::{Conv, ConvError, ConvolutionElement};
use dgop::cooperad::{build_cop1_counital, Cooperad, CooperadKind, Cooperation};
use dgop::degeneracy::{degeneracy_generator, h0_quotient_dims, p1_ideal, power_scalar};
use dgop::free::{FreeOperad, Symmetry, TableAlphabet};
use dgop::linear::format_rational;
use dgop::operad::{format_element, Element, FiniteOperad, Operad};
use dgop::vanishing::{reduced_homology, vanishing_locus_dims};
use rand::SeedableRng;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;
const WORKERS_VAR: &str = "DGOP_WORKERS";

#[derive(Parser)]
#[command(name = "dgop", version, about = "Exact computations with dg operads, convolution algebras and degeneracy ideals")]
struct Cli {
    /// Largest arity kept in any computation.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    max_arity: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized inputs; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Basis, decompositions and (for coP1) Hopf products of a cooperad.
    DumpCooperad {
        #[arg(long)]
        cooperad: String,
    },
    /// Checks d² = 0 on every generator of the cobar construction.
    CobarCheck {
        #[arg(long)]
        cooperad: String,
    },
    /// Evaluates a convolution element on one cooperation.
    ConvEval {
        /// x, mu~, x*x, [x,x], x^K, mu~*(x*x) or random
        #[arg(long)]
        element: String,
        /// Delta<n> or a cooperation name such as X1∧_X2X3_
        #[arg(long)]
        at: String,
        #[arg(long, value_enum, default_value_t = Target::Free)]
        operad: Target,
    },
    /// Dimensions of P₁ modulo the m-th degeneracy ideal.
    H0 {
        #[arg(long)]
        m: usize,
        /// Also print a basis of each ideal component.
        #[arg(long)]
        basis: bool,
    },
    /// The m-th degeneracy generator and its ratio to the power of x.
    DegeneracyGen {
        #[arg(long)]
        m: usize,
    },
    /// Pfaffian degeneracy ideal of a polynomial Poisson algebra.
    DegeneracyIdeal {
        #[arg(long)]
        algebra: Option<String>,
        /// TOML or JSON bracket table.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Also compare against the ideal of operadic evaluations.
        #[arg(long)]
        compare: bool,
    },
    /// Reduced CE homology and graded dims of the derived vanishing locus.
    VanishingLocus {
        #[arg(long)]
        algebra: Option<String>,
        /// TOML or JSON structure constants.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        sym_cap: usize,
        #[arg(long, default_value_t = -12, allow_hyphen_values = true)]
        min_degree: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        max_degree: i64,
    },
    /// Replays the reference examples against the shipped fixture.
    Golden {
        /// Write freshly computed values to this path instead of checking.
        #[arg(long)]
        regenerate: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Free operad on a symmetric μ and an antisymmetric l.
    Free,
    P1,
}

struct Report {
    result: Value,
    text: Vec<String>,
    ok: bool,
}

impl Report {
    fn ok(result: Value, text: Vec<String>) -> Self {
        Report { result, text, ok: true }
    }
}

fn cooperad_kind(s: &str) -> Result<CooperadKind, String> {
    CooperadKind::parse(s).ok_or_else(|| format!("unknown cooperad {s:?} (coComm, coLie, coP1, coP2)"))
}

fn conv_err(e: ConvError) -> String {
    e.to_string()
}

fn terms<O: Operad>(o: &O, x: &Element<O>) -> Vec<(String, String)> {
    x.iter().map(|(m, c)| (format_rational(c), o.fmt_mono(m))).collect()
}

fn find_cooperation(co: &Cooperad, at: &str) -> Result<Cooperation, String> {
    let delta = ["Delta", "Δ", "D"].iter().find_map(|p| at.strip_prefix(p)).and_then(|n| n.parse::<usize>().ok());
    if let Some(n) = delta {
        if n == 0 || n > co.max_arity {
            return Err(format!("{at} is outside arities 1..={}", co.max_arity));
        }
        return co.by_blocks(&(1..=n as u8).map(|k| vec![k]).collect::<Vec<_>>()).ok_or_else(|| format!("no {at}"));
    }
    (1..=co.max_arity).find_map(|n| co.by_name(n, at)).ok_or_else(|| format!("unknown cooperation {at:?}"))
}

fn element<O: Operad>(
    conv: &Conv<'_, O>,
    product: &Element<O>,
    bracket: &Element<O>,
    name: &str,
) -> Result<ConvolutionElement<O>, String> {
    let x = || conv.x_element(bracket).map_err(conv_err);
    let mt = || conv.mu_tilde(product).map_err(conv_err);
    match name {
        "x" => x(),
        "mu~" => mt(),
        "x*x" => Ok(conv.star(&x()?, &x()?)),
        "[x,x]" => Ok(conv.bracket(&x()?, &x()?)),
        "mu~*(x*x)" => Ok(conv.star(&mt()?, &conv.star(&x()?, &x()?))),
        "random" => Err("random elements need --operad p1".into()),
        _ => {
            let k = name.strip_prefix("x^").and_then(|k| k.parse::<usize>().ok()).ok_or_else(|| format!("unknown element {name:?}"))?;
            conv.x_power(&mt()?, &x()?, k).map_err(conv_err)
        }
    }
}

fn conv_eval(element_name: &str, at: &str, target: Target, max: usize, seed: u64) -> Result<Report, String> {
    let co = build_cop1_counital(max);
    let c = find_cooperation(&co, at)?;
    let (operad, rows, all) = match target {
        Target::Free => {
            let free = FreeOperad::new(TableAlphabet::binary(&[("μ", 0, Symmetry::Symmetric), ("l", 0, Symmetry::Antisymmetric)]));
            let conv = Conv::new(&co, &free, max);
            let e = element(&conv, &free.corolla(&0), &free.corolla(&1), element_name)?;
            let v = e.value(&c);
            ("free(μ, l)", terms(&free, &v), format_element(&free, &v))
        }
        Target::P1 => {
            let p1 = Classical::p1();
            let conv = Conv::new(&co, &p1, max);
            let e = if element_name == "random" {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                conv.random_equivariant(c.n, 1, &mut rng)
            } else {
                element(&conv, &p1.product(), &p1.bracket(), element_name)?
            };
            let v = e.value(&c);
            ("P1", terms(&p1, &v), format_element(&p1, &v))
        }
    };
    let mut text = vec![format!("{element_name}({}) in {operad}: {} terms", co.name(&c), rows.len())];
    text.extend(rows.iter().map(|(c, t)| format!("  {c:>4}  {t}")));
    let result = json!({
        "element": element_name,
        "at": co.name(&c),
        "operad": operad,
        "value": all,
        "terms": rows.iter().map(|(c, t)| json!([c, t])).collect::<Vec<_>>(),
    });
    Ok(Report::ok(result, text))
}

fn h0(m: usize, max: usize, basis: bool) -> Report {
    let q = h0_quotient_dims(m, max);
    let mut text = vec![format!("H⁰ of the {m}-degenerate Poisson operad, arities 1..={max}")];
    text.push(format!("  P1     {:?}", q.ambient));
    text.push(format!("  ideal  {:?}", q.ideal));
    text.push(format!("  dims   {:?}", q.quotient));
    let mut result = serde_json::to_value(&q).expect("serializable");
    if basis {
        let p1 = Classical::p1();
        let comps = p1_ideal(&p1, &[degeneracy_generator(&p1, m)], max);
        let mut bases = serde_json::Map::new();
        for (k, comp) in comps.iter().enumerate() {
            let n = k + 1;
            let rows: Vec<String> = comp.rows().iter().map(|r| format_element(&p1, &r.flat_map(|i| p1.basis_element(n, *i)))).collect();
            if !rows.is_empty() {
                text.push(format!("  arity {n} ideal basis:"));
                text.extend(rows.iter().map(|r| format!("    {r}")));
            }
            bases.insert(n.to_string(), json!(rows));
        }
        result["ideal_bases"] = Value::Object(bases);
    }
    Report::ok(result, text)
}

fn degeneracy_gen(m: usize) -> Result<Report, String> {
    let p1 = Classical::p1();
    let g = degeneracy_generator(&p1, m);
    let scalar = power_scalar(m).map_err(conv_err)?.map(|s| format_rational(&s));
    let n = 2 * m + 2;
    let text = vec![
        format!("degeneracy generator, m = {m}, arity {n}: {} terms", g.len()),
        format!("  = {} · x^{}(Δ{n})", scalar.clone().unwrap_or_else(|| "(not proportional)".into()), m + 1),
    ];
    let result = json!({
        "m": m,
        "arity": n,
        "generator": format_element(&p1, &g),
        "terms": g.len(),
        "scalar_to_x_power": scalar,
    });
    Ok(Report::ok(result, text))
}

fn golden(regenerate: Option<PathBuf>) -> Result<Report, String> {
    let actual = dgop::golden::compute().map_err(conv_err)?;
    if let Some(path) = regenerate {
        let body = serde_json::to_string_pretty(&actual).expect("serializable") + "\n";
        std::fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
        let text = vec![format!("wrote {}", path.display())];
        return Ok(Report::ok(json!({ "written": path.display().to_string() }), text));
    }
    let expected: Value = serde_json::from_str(dgop::golden::FIXTURE).map_err(|e| e.to_string())?;
    let lines = dgop::golden::compare(&expected, &actual);
    let ok = lines.iter().all(|l| l.pass);
    let mut text: Vec<String> = lines.iter().map(|l| format!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail)).collect();
    text.push(format!("golden: {} ({} checks)", if ok { "PASS" } else { "FAIL" }, lines.len()));
    Ok(Report { result: json!({ "pass": ok, "checks": lines }), text, ok })
}

fn run(cli: &Cli) -> Result<Report, String> {
    let max = cli.max_arity as usize;
    match &cli.command {
        Command::DumpCooperad { cooperad } => {
            let co = Cooperad::new(cooperad_kind(cooperad)?, max);
            let dims: Vec<usize> = (1..=max).map(|n| co.dim(n)).collect();
            let mut text = vec![format!("{} to arity {max}, dims {dims:?}", co.kind.label())];
            for n in 1..=max.min(3) {
                let names: Vec<String> = co.basis(n).iter().map(|c| format!("{} (deg {})", co.name(c), co.degree(c))).collect();
                text.push(format!("  arity {n}: {}", names.join(", ")));
            }
            Ok(Report::ok(co.to_json(), text))
        }
        Command::CobarCheck { cooperad } => {
            let cobar = Cobar::new(Arc::new(Cooperad::new(cooperad_kind(cooperad)?, max)), max);
            let rep = cobar.check_square_zero();
            let mut text = vec![format!("cobar of {} to arity {max}: {} generators", rep.cooperad, rep.generators_checked)];
            text.push(if rep.ok() { "d²=0: OK".into() } else { format!("d²=0: FAILED on {} generators", rep.failures.len()) });
            text.extend(rep.failures.iter().take(5).map(|f| format!("  {f}")));
            let ok = rep.ok();
            Ok(Report { result: serde_json::to_value(&rep).expect("serializable"), text, ok })
        }
        Command::ConvEval { element, at, operad } => conv_eval(element, at, *operad, max, cli.seed),
        Command::H0 { m, basis } => Ok(h0(*m, max, *basis)),
        Command::DegeneracyGen { m } => degeneracy_gen(*m),
        Command::DegeneracyIdeal { algebra, input, m, degree_cap, compare } => {
            let a = input::poisson_algebra(algebra.as_deref(), input.as_deref(), *degree_cap)?;
            let ideal = a.degeneracy_ideal(*m);
            let mut text = vec![format!("degeneracy ideal m = {m} in k[{}]:", a.names.join(", "))];
            text.extend(ideal.formatted().iter().map(|g| format!("  {g}")));
            if ideal.is_zero() {
                text.push("  (zero ideal)".into());
            }
            let mut result = json!({ "m": m, "ideal": ideal });
            if *compare {
                let c = a.compare(*m).map_err(|e| e.to_string())?;
                text.push(format!("operadic ideal equal: {} (scalars {:?})", c.equal, c.scalars));
                result["comparison"] = serde_json::to_value(&c).expect("serializable");
            }
            Ok(Report::ok(result, text))
        }
        Command::VanishingLocus { algebra, input, sym_cap, min_degree, max_degree } => {
            let g = input::lie_algebra(algebra.as_deref(), input.as_deref())?;
            let h = reduced_homology(&g);
            let t = vanishing_locus_dims(&g, *sym_cap, (*min_degree, *max_degree));
            let mut text = vec![format!("reduced CE homology (degree: dim): {h:?}")];
            text.push(format!("generators after shift: chain {:?}, homology {:?}", t.chain_generators, t.homology_generators));
            text.push("homology level [sym power, degree, dim]:".into());
            text.extend(t.homology_level.iter().map(|(n, e, v)| format!("  {n} {e:>4} {v}")));
            text.push(format!("totals with unit:    {:?}", t.homology_totals_unital));
            text.push(format!("totals without unit: {:?}", t.homology_totals_nonunital));
            let result = json!({ "reduced_homology": h, "table": t });
            Ok(Report::ok(result, text))
        }
        Command::Golden { regenerate } => golden(regenerate.clone()),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::DumpCooperad { .. } => "dump-cooperad",
        Command::CobarCheck { .. } => "cobar-check",
        Command::ConvEval { .. } => "conv-eval",
        Command::H0 { .. } => "h0",
        Command::DegeneracyGen { .. } => "degeneracy-gen",
        Command::DegeneracyIdeal { .. } => "degeneracy-ideal",
        Command::VanishingLocus { .. } => "vanishing-locus",
        Command::Golden { .. } => "golden",
    }
}

fn configure_workers() -> Result<(), String> {
    let Ok(v) = std::env::var(WORKERS_VAR) else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("{WORKERS_VAR} must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err(format!("{WORKERS_VAR} must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let outcome = configure_workers().and_then(|_| run(&cli));
    match outcome {
        Ok(rep) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "max_arity": cli.max_arity,
                        "seed": cli.seed,
                        "ok": rep.ok,
                        "result": rep.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                Format::Text => {
                    for line in &rep.text {
                        println!("{line}");
                    }
                    println!("seed: {}", cli.seed);
                }
            }
            if rep.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "seed": cli.seed,
                        "error": msg,
                    });
                    eprintln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                Format::Text => eprintln!("error: {msg}"),
            }
            ExitCode::from(1)
        }
    }
}
