use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use belief_calculus::betting::check;
use belief_calculus::combination::conflict;
use belief_calculus::expectation::attach_exact;
use belief_calculus::scenarios::DEFAULT_SEED;
use belief_calculus::{
    condition_mass, dempster_combine, find_violation, format_rational, independent_product, load_model,
    lower_expectation, marginal, parse_rational, registry, run_all, run_scenario, simulate_lln, Axis, BetFamily,
    BettingMode, CredalSet, Execution, Frame, MassFunction, Model, ProductFrame, Rational, RandomVariable, Scalar,
    ScenarioParams, ScenarioReport, SubsetMask, Verdict,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "belief", version, about = "Belief functions on finite frames")]
struct Cli {
    /// Arithmetic used for model computations.
    #[arg(long, global = true, value_enum, default_value_t = Numeric::Rational)]
    numeric: Numeric,
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Numeric {
    Rational,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum CredalMode {
    /// Lower bound of P(A|H) over every compatible P with P(H) > 0.
    Fh,
    /// Same bound over the compatible P that attain B(Hᶜ); equals B_H(A).
    Compatible,
}

#[derive(Clone, Copy, ValueEnum)]
enum BetMode {
    P2,
    B2star,
}

/// Sets are comma-separated outcome labels (`a,b`); an empty string is the
/// empty set. Product outcomes are written `left:right`.
#[derive(Subcommand)]
enum Command {
    /// Check that a model document loads and describe it.
    Validate { model: PathBuf },
    /// Belief and plausibility of a set.
    Belief {
        model: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Condition on a set; prints the conditional masses or one conditional belief.
    Condition {
        model: PathBuf,
        #[arg(long)]
        on: String,
        #[arg(long)]
        query: Option<String>,
    },
    /// Marginal of a product-frame model.
    Marginal {
        model: PathBuf,
        #[arg(long, value_enum)]
        axis: Side,
    },
    /// Independent product of two models.
    Product { left: PathBuf, right: PathBuf },
    /// Dempster's rule. Reference/critique only: kept for comparison, not for inference.
    Dempster { first: PathBuf, second: PathBuf },
    /// Lower (and upper) probability over the compatible distributions.
    Credal {
        model: PathBuf,
        #[arg(long)]
        lower: String,
        #[arg(long)]
        given: Option<String>,
        #[arg(long, value_enum, default_value_t = CredalMode::Compatible)]
        mode: CredalMode,
    },
    /// Lower and upper expectation of a named random variable.
    Expect {
        model: PathBuf,
        #[arg(long)]
        rv: String,
    },
    /// Simulate the sample mean of a random variable under repeated draws.
    Lln {
        model: PathBuf,
        #[arg(long)]
        rv: String,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value = "1/20")]
        eps: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also compute the exact beliefs and compare.
        #[arg(long)]
        exact: bool,
    },
    /// Check a bet family against prices, or search for a violating family.
    Bets {
        model: PathBuf,
        #[arg(long, value_enum)]
        mode: BetMode,
        /// A set to buy; repeat for more bets.
        #[arg(long = "buy")]
        buys: Vec<String>,
        /// A set to sell; repeat for more bets.
        #[arg(long = "sell")]
        sells: Vec<String>,
        #[arg(long, conflicts_with_all = ["buys", "sells"])]
        find: bool,
        #[arg(long, default_value_t = 2)]
        max_bets: usize,
    },
    /// Run a named scenario, `all`, or `list` the registry.
    Scenario {
        name: String,
        /// Override the scenario parameter p.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Scalars the CLI can print.
trait Render: Scalar {
    fn json(&self) -> Value;
}

impl Render for Rational {
    fn json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl Render for f64 {
    fn json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }
}

enum Outcome {
    Success,
    Mismatch,
}

struct Printer {
    json: bool,
}

impl Printer {
    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("values serialize"));
        } else {
            println!("{}", text());
        }
    }
}

fn read_model(path: &Path) -> anyhow::Result<Model> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    load_model(&text).with_context(|| format!("cannot load {}", path.display()))
}

fn lift<S: Render>(m: &MassFunction<Rational>) -> MassFunction<S> {
    m.map_scalar(S::from_rational)
}

fn number<S: Render>(text: &str) -> anyhow::Result<S> {
    parse_rational(text)
        .map(|r| S::from_rational(&r))
        .ok_or_else(|| anyhow!("`{text}` is not a number"))
}

fn parse_set(frame: &Frame, text: &str) -> anyhow::Result<SubsetMask> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let labels: Vec<&str> = inner.split(',').map(str::trim).filter(|l| !l.is_empty()).collect();
    Ok(frame.subset(labels)?)
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// The value itself, or a decimal approximation when the fraction is long.
fn short<S: Render>(v: &S) -> String {
    let text = v.to_string();
    if text.len() <= 24 {
        text
    } else {
        format!("≈ {:.6}", v.to_f64())
    }
}

fn mass_rows<S: Render>(m: &MassFunction<S>) -> Vec<(String, String)> {
    m.focal().map(|(set, w)| (m.frame().describe(set), w.to_string())).collect()
}

/// Same shape as a model document, so the output loads back as a model.
fn mass_json<S: Render>(m: &MassFunction<S>, product: Option<&ProductFrame>) -> Value {
    let masses: Vec<Value> = m
        .focal()
        .map(|(set, w)| json!({ "set": m.frame().members(set), "mass": w.json() }))
        .collect();
    match product {
        Some(pf) => json!({
            "product": { "left": pf.left().labels(), "right": pf.right().labels() },
            "masses": masses,
        }),
        None => json!({ "frame": m.frame().labels(), "masses": masses }),
    }
}

fn validate(out: &Printer, path: &Path) -> anyhow::Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let model = match load_model(&text) {
        Ok(model) => model,
        Err(e) => {
            out.emit(json!({ "valid": false, "error": e.to_string() }), || format!("invalid: {e}"));
            return Ok(Outcome::Mismatch);
        }
    };
    let prices_ok = model.prices.as_ref().map(|p| p.is_belief_function().is_belief);
    let mut rows = vec![("outcomes".to_string(), model.frame.size().to_string())];
    if let Some(name) = &model.name {
        rows.insert(0, ("name".into(), name.clone()));
    }
    if let Some(pf) = &model.product {
        rows.push(("product".into(), format!("{} x {}", pf.left().size(), pf.right().size())));
    }
    if let Some(m) = &model.mass {
        rows.push(("focal sets".into(), m.focal_count().to_string()));
    }
    if let Some(ok) = prices_ok {
        rows.push(("prices form a belief function".into(), if ok { "yes" } else { "no" }.into()));
    }
    let names: Vec<&str> = model.random_variables.iter().map(|(n, _)| n.as_str()).collect();
    if !names.is_empty() {
        rows.push(("random variables".into(), names.join(", ")));
    }
    out.emit(
        json!({
            "valid": true,
            "outcomes": model.frame.size(),
            "focal_sets": model.mass.as_ref().map(|m| m.focal_count()),
            "prices_form_belief_function": prices_ok,
            "random_variables": names,
        }),
        || format!("valid\n{}", table(&rows)),
    );
    Ok(Outcome::Success)
}

fn run<S: Render>(cli: &Cli) -> anyhow::Result<Outcome> {
    let out = Printer { json: cli.json };
    match &cli.command {
        Command::Validate { model } => return validate(&out, model),
        Command::Belief { model, set } => {
            let model = read_model(model)?;
            let m = lift::<S>(model.mass()?);
            let a = parse_set(m.frame(), set)?;
            let (belief, plausibility) = (m.belief(a)?, m.plausibility(a)?);
            out.emit(
                json!({ "set": m.frame().members(a), "belief": belief.json(), "plausibility": plausibility.json() }),
                || {
                    table(&[
                        (format!("B({})", m.frame().describe(a)), belief.to_string()),
                        (format!("Pl({})", m.frame().describe(a)), plausibility.to_string()),
                    ])
                },
            );
        }
        Command::Condition { model, on, query } => {
            let model = read_model(model)?;
            let m = lift::<S>(model.mass()?);
            let h = parse_set(m.frame(), on)?;
            let conditioned = condition_mass(&m, h)?;
            match query {
                Some(query) => {
                    let a = parse_set(m.frame(), query)?;
                    let b = conditioned.belief(a)?;
                    out.emit(
                        json!({ "given": m.frame().members(h), "set": m.frame().members(a), "belief": b.json() }),
                        || format!("B_{}({}) = {b}", m.frame().describe(h), m.frame().describe(a)),
                    );
                }
                None => out.emit(mass_json(&conditioned, model.product.as_ref()), || table(&mass_rows(&conditioned))),
            }
        }
        Command::Marginal { model, axis } => {
            let model = read_model(model)?;
            let pf = model.product.as_ref().ok_or_else(|| anyhow!("model is not on a product frame"))?;
            let axis = match axis {
                Side::Left => Axis::Left,
                Side::Right => Axis::Right,
            };
            let m = marginal(pf, &lift::<S>(model.mass()?), axis)?;
            out.emit(mass_json(&m, None), || table(&mass_rows(&m)));
        }
        Command::Product { left, right } => {
            let (left, right) = (read_model(left)?, read_model(right)?);
            let pf = ProductFrame::new(left.frame.clone(), right.frame.clone())?;
            let m = independent_product(&pf, &lift::<S>(left.mass()?), &lift::<S>(right.mass()?))?;
            out.emit(mass_json(&m, Some(&pf)), || table(&mass_rows(&m)));
        }
        Command::Dempster { first, second } => {
            let (first, second) = (read_model(first)?, read_model(second)?);
            let (m1, m2) = (lift::<S>(first.mass()?), lift::<S>(second.mass()?));
            let k = conflict(&m1, &m2)?;
            let combined = dempster_combine(&m1, &m2)?;
            let mut value = mass_json(&combined, first.product.as_ref());
            value["conflict"] = k.json();
            out.emit(value, || format!("{}\nconflict  {k}", table(&mass_rows(&combined))));
        }
        Command::Credal { model, lower, given, mode } => {
            let model = read_model(model)?;
            let m = lift::<S>(model.mass()?);
            let a = parse_set(m.frame(), lower)?;
            let credal = CredalSet::new(&m)?;
            match given {
                None => {
                    let (lo, hi) = (credal.lower_probability(a)?, credal.upper_probability(a)?);
                    out.emit(
                        json!({ "set": m.frame().members(a), "lower": lo.json(), "upper": hi.json(), "vertices": credal.vertices().len() }),
                        || {
                            let set = m.frame().describe(a);
                            table(&[
                                (format!("lower P({set})"), lo.to_string()),
                                (format!("upper P({set})"), hi.to_string()),
                                ("extreme points".into(), credal.vertices().len().to_string()),
                            ])
                        },
                    );
                }
                Some(given) => {
                    let h = parse_set(m.frame(), given)?;
                    let (label, value) = match mode {
                        CredalMode::Fh => ("fh", credal.fh_conditional_lower(a, h)?),
                        CredalMode::Compatible => ("compatible", credal.compatible_conditional_lower(a, h)?),
                    };
                    out.emit(
                        json!({ "set": m.frame().members(a), "given": m.frame().members(h), "mode": label, "lower": value.json() }),
                        || format!("lower P({} | {}) [{label}] = {value}", m.frame().describe(a), m.frame().describe(h)),
                    );
                }
            }
        }
        Command::Expect { model, rv } => {
            let model = read_model(model)?;
            let m = lift::<S>(model.mass()?);
            let x: RandomVariable<S> = model.variable(rv)?.map_scalar(S::from_rational);
            let lower = lower_expectation(&m, &x)?;
            let negated = x.map_scalar(|v| S::zero() - v.clone());
            let upper = S::zero() - lower_expectation(&m, &negated)?;
            out.emit(json!({ "variable": rv, "lower": lower.json(), "upper": upper.json() }), || {
                table(&[(format!("E({rv})"), lower.to_string()), (format!("upper E({rv})"), upper.to_string())])
            });
        }
        Command::Lln { model, rv, n, trials, eps, seed, exact } => {
            let model = read_model(model)?;
            let m = lift::<S>(model.mass()?);
            let x: RandomVariable<S> = model.variable(rv)?.map_scalar(S::from_rational);
            let eps = number::<S>(eps)?;
            let mut report = simulate_lln(&m, &x, *n, *trials, &eps, *seed)?;
            if *exact {
                attach_exact(&mut report, &m, &x)?;
            }
            let agrees = report.agrees_with_exact();
            let opt = |v: &Option<S>| v.as_ref().map_or(Value::Null, Render::json);
            out.emit(
                json!({
                    "n": report.n,
                    "trials": report.trials,
                    "epsilon": report.epsilon.json(),
                    "expectation": report.expectation.json(),
                    "empirical_lower": report.empirical_lower,
                    "empirical_upper": report.empirical_upper,
                    "exact_lower": opt(&report.exact_lower),
                    "exact_upper": opt(&report.exact_upper),
                    "agrees_with_exact": agrees,
                    "seed": report.seed,
                    "generator": report.generator,
                }),
                || {
                    let e = &report.expectation;
                    let mut rows = vec![
                        ("E".to_string(), e.to_string()),
                        (format!("mean >= E - {}", report.epsilon), report.empirical_lower.to_string()),
                        (format!("mean >= E + {}", report.epsilon), report.empirical_upper.to_string()),
                    ];
                    if let (Some(lo), Some(hi)) = (&report.exact_lower, &report.exact_upper) {
                        rows.push(("exact lower".into(), short(lo)));
                        rows.push(("exact upper".into(), short(hi)));
                        rows.push(("agrees".into(), agrees.unwrap_or(false).to_string()));
                    }
                    rows.push(("trials".into(), report.trials.to_string()));
                    rows.push(("seed".into(), format!("{} ({})", report.seed, report.generator)));
                    table(&rows)
                },
            );
            if agrees == Some(false) {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Bets { model, mode, buys, sells, find, max_bets } => {
            let model = read_model(model)?;
            let prices = model.price_table()?.map_scalar(S::from_rational);
            let mode = match mode {
                BetMode::P2 => BettingMode::P2,
                BetMode::B2star => BettingMode::B2Star,
            };
            let frame = prices.frame().clone();
            if *find {
                let found = find_violation(&prices, *max_bets, mode)?;
                let text = found.as_ref().map(|fam| fam.describe(&frame));
                out.emit(json!({ "mode": mode.to_string(), "violation": text }), || match &text {
                    Some(t) => format!("{mode} violated by {t}"),
                    None => format!("no {mode} violation with at most {max_bets} bets"),
                });
                return Ok(if found.is_some() { Outcome::Mismatch } else { Outcome::Success });
            }
            if buys.is_empty() && sells.is_empty() {
                bail!("give bets with --buy/--sell, or --find");
            }
            let sets = |list: &[String]| list.iter().map(|s| parse_set(&frame, s)).collect::<anyhow::Result<Vec<_>>>();
            let fam = BetFamily::new(sets(buys)?, sets(sells)?);
            let verdict = check(&prices, &fam, mode)?;
            out.emit(json!({ "mode": mode.to_string(), "family": fam.describe(&frame), "verdict": verdict.to_string() }), || {
                format!("{mode} {}: {verdict}", fam.describe(&frame))
            });
            if verdict == Verdict::Violation {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Scenario { .. } => unreachable!("scenarios run before numeric dispatch"),
    }
    Ok(Outcome::Success)
}

fn report_text(report: &ScenarioReport) -> String {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let p = report.p.as_ref().map(|p| format!(" (p = {p})")).unwrap_or_default();
    let mut lines = vec![format!("{status} {}{p}", report.name)];
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        lines.push(format!("  {mark} {}: expected {}, got {}", c.label, c.expected, c.actual));
    }
    lines.join("\n")
}

fn scenario(cli: &Cli, name: &str, p: Option<&str>, seed: Option<u64>) -> anyhow::Result<Outcome> {
    if let Numeric::Float = cli.numeric {
        bail!("scenarios run in rational mode only");
    }
    let out = Printer { json: cli.json };
    if name == "list" {
        let rows: Vec<(String, String)> = registry().iter().map(|s| (s.name.to_string(), s.summary.to_string())).collect();
        let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
        out.emit(json!(names), || table(&rows));
        return Ok(Outcome::Success);
    }
    let p = p.map(|t| parse_rational(t).ok_or_else(|| anyhow!("`{t}` is not a number"))).transpose()?;
    let params = ScenarioParams { p, seed };
    let reports = if name == "all" {
        run_all(&params, Execution::Parallel).into_iter().collect::<Result<Vec<_>, _>>()?
    } else {
        vec![run_scenario(name, &params)?]
    };
    out.emit(json!(reports), || reports.iter().map(report_text).collect::<Vec<_>>().join("\n"));
    Ok(if reports.iter().all(ScenarioReport::passed) { Outcome::Success } else { Outcome::Mismatch })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.command, cli.numeric) {
        (Command::Scenario { name, p, seed }, _) => scenario(&cli, name, p.as_deref(), *seed),
        (_, Numeric::Rational) => run::<Rational>(&cli),
        (_, Numeric::Float) => run::<f64>(&cli),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
