use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kneading::cache::obtain_pool;
use kneading::coding::{kneading_of_angle, symbols_to_string};
use kneading::components::{conspicuous_components, return_times, ComponentPool, HyperbolicComponent};
use kneading::lamination::{rq_trace_with, BracketStyle, SplitOrder};
use kneading::render::{render_svg, RenderSpec, Step};
use kneading::report::{appendix_a, build_example, ExampleSpec};
use kneading::verify::{
    check_component, compare_codings, disc_entry, sweep, xi_contains, ComponentOutcome, MarkerParser,
};
use kneading::Angle;

#[derive(Parser)]
#[command(name = "kneading", version, about = "Kneading sequences, conspicuous components and Disc(H) membership")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Component pool JSON file to use instead of the cache.
    #[arg(long, global = true)]
    pool: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Exact,
    Interior,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Sorted,
    AlongArc,
}

#[derive(Subcommand)]
enum Command {
    /// List all components up to a period.
    Components {
        #[arg(long, default_value_t = 6)]
        max_period: usize,
    },
    /// Kneading data of a component, or the kneading sequence of one angle.
    Kneading {
        angle: Angle,
        theta_plus: Option<Angle>,
    },
    /// Components conspicuous to a component, and its return times.
    Conspicuous { theta_minus: Angle, theta_plus: Angle },
    /// Check the covering of Π₁(H) and the structural properties.
    Verify {
        theta_minus: Option<Angle>,
        theta_plus: Option<Angle>,
        /// Sweep every component of the pool.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Decide whether an angle lies in Disc(H).
    Disc { theta_minus: Angle, theta_plus: Angle, angle: Angle },
    /// Marker decomposition and the two one-sided codings of an angle.
    Marker {
        theta_minus: Angle,
        theta_plus: Angle,
        angle: Angle,
        /// Symbols of I⁺/I⁻ to compare (default 4·per(H)·cycle length).
        #[arg(long)]
        depth: Option<usize>,
        /// Keep parsing after a terminal block.
        #[arg(long)]
        all_chains: bool,
        /// Also run the backtracking audit parser over this many symbols.
        #[arg(long, num_args = 0..=1, default_missing_value = "128")]
        backtrack: Option<usize>,
    },
    /// Draw R_n and Q_n as SVG.
    Render {
        theta_minus: Angle,
        theta_plus: Angle,
        /// A step number or "all".
        #[arg(long, default_value = "all")]
        step: String,
        #[arg(long, default_value_t = 320)]
        size: u32,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, value_enum, default_value_t = OrderArg::Sorted)]
        order: OrderArg,
    },
    /// Worked examples: the four standard ones, or a given component.
    Report {
        theta_minus: Option<Angle>,
        theta_plus: Option<Angle>,
        #[arg(long, value_enum, default_value_t = StyleArg::Interior)]
        style: StyleArg,
        #[arg(long, value_enum, default_value_t = OrderArg::Sorted)]
        order: OrderArg,
    },
}

impl From<OrderArg> for SplitOrder {
    fn from(o: OrderArg) -> SplitOrder {
        match o {
            OrderArg::Sorted => SplitOrder::Sorted,
            OrderArg::AlongArc => SplitOrder::AlongArc,
        }
    }
}

impl From<StyleArg> for BracketStyle {
    fn from(s: StyleArg) -> BracketStyle {
        match s {
            StyleArg::Exact => BracketStyle::Exact,
            StyleArg::Interior => BracketStyle::Interior,
        }
    }
}

/// Result of a command: its output and whether a violation was found.
struct Outcome {
    text: String,
    violation: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, violation: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.global.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.global, &outcome.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pool_for(global: &Global, period: usize) -> Result<ComponentPool> {
    obtain_pool(global.pool.as_deref(), period.max(2)).context("obtaining component pool")
}

/// Validates the pair against a pool reaching its period.
fn component(global: &Global, minus: &Angle, plus: &Angle) -> Result<(HyperbolicComponent, ComponentPool)> {
    let local = HyperbolicComponent::new(minus.clone(), plus.clone())?;
    let pool = pool_for(global, local.period())?;
    let h = pool.check_pair(minus, plus)?;
    Ok((h, pool))
}

/// Output schema revision; bumped on any incompatible change to a JSON shape.
const SCHEMA_REVISION: u32 = 1;

fn json_text(kind: &str, value: &impl serde::Serialize) -> Result<String> {
    let mut value = serde_json::to_value(value)?;
    if let Some(map) = value.as_object_mut() {
        map.insert("schema".into(), json!(format!("kneading.{kind}/{SCHEMA_REVISION}")));
    }
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let json = g.format == Format::Json;
    match &cli.command {
        Command::Components { max_period } => {
            let pool = pool_for(g, *max_period)?.truncated(*max_period);
            if json {
                return Ok(Outcome::ok(pool.to_json()? + "\n"));
            }
            let mut s = format!("{:<7}{:<14}{:<14}{:<14}{}\n", "period", "theta_minus", "theta_plus", "K", "K̂");
            for h in pool.components() {
                s += &format!(
                    "{:<7}{:<14}{:<14}{:<14}{}\n",
                    h.period(),
                    h.theta_minus().to_string(),
                    h.theta_plus().to_string(),
                    symbols_to_string(h.kneading()),
                    symbols_to_string(h.discarded_kneading())
                );
            }
            Ok(Outcome::ok(s))
        }
        Command::Kneading { angle, theta_plus: None } => {
            let len = angle.forward_orbit().len() + 1;
            let word = kneading_of_angle(angle, len);
            if json {
                return Ok(Outcome::ok(json_text("kneading", &json!({"angle": angle, "kneading": word}))?));
            }
            Ok(Outcome::ok(format!("I°({angle}) = {word}\n")))
        }
        Command::Kneading { angle, theta_plus: Some(plus) } => {
            let h = HyperbolicComponent::new(angle.clone(), plus.clone())?;
            if json {
                return Ok(Outcome::ok(json_text("component", &h)?));
            }
            Ok(Outcome::ok(format!(
                "H = {h}\nper(H) = {}\nK(H) = {}\nK̂(H) = {}\n",
                h.period(),
                symbols_to_string(h.kneading()),
                symbols_to_string(h.discarded_kneading())
            )))
        }
        Command::Conspicuous { theta_minus, theta_plus } => {
            let (h, pool) = component(g, theta_minus, theta_plus)?;
            let cs = conspicuous_components(&h, &pool)?;
            let times = return_times(&h, &pool)?;
            if json {
                return Ok(Outcome::ok(json_text("conspicuous", &json!({"component": h, "conspicuous": cs, "return_times": times}))?));
            }
            let mut s = String::new();
            for c in &cs {
                let name = c.name().map(|n| format!("  {n}")).unwrap_or_default();
                s += &format!("{c}  per {}  K = {}{name}\n", c.period(), symbols_to_string(c.kneading()));
            }
            s += &format!("return times: {}\n", join(&times));
            Ok(Outcome::ok(s))
        }
        Command::Verify { all: true, max_period, .. } => {
            let pool = pool_for(g, *max_period)?;
            log::info!("sweeping {} components", pool.components().iter().filter(|h| h.period() <= *max_period).count());
            let outcomes = sweep(&pool, *max_period, g.jobs)?;
            let failures = outcomes.iter().filter(|o| !o.passed()).count();
            let converse_fail = outcomes.iter().filter(|o| !o.checks.converse_holds()).count();
            if json {
                let text = json_text("sweep", &json!({
                    "max_period": max_period,
                    "components": outcomes.len(),
                    "failures": failures,
                    "converse_counterexamples": converse_fail,
                    "outcomes": outcomes,
                }))?;
                return Ok(Outcome { text, violation: failures > 0 });
            }
            let mut s = String::new();
            for o in &outcomes {
                s += &summary_line(o);
            }
            s += &format!(
                "checked {} components up to period {max_period}: {failures} failures; return times with R_n ⊅ Π₀: {converse_fail} components\n",
                outcomes.len()
            );
            Ok(Outcome { text: s, violation: failures > 0 })
        }
        Command::Verify { theta_minus: Some(m), theta_plus: Some(p), .. } => {
            let (h, pool) = component(g, m, p)?;
            let o = check_component(&h, &pool)?;
            let violation = !o.passed();
            if json {
                return Ok(Outcome { text: json_text("verify", &o)?, violation });
            }
            Ok(Outcome { text: detail(&o), violation })
        }
        Command::Verify { .. } => anyhow::bail!("verify needs θ⁻ θ⁺ or --all"),
        Command::Disc { theta_minus, theta_plus, angle } => {
            let (h, _) = component(g, theta_minus, theta_plus)?;
            let entry = disc_entry(&h, angle);
            let xi = xi_contains(&h, angle);
            if json {
                return Ok(Outcome::ok(json_text("disc", &json!({
                    "component": h, "angle": angle, "in_disc": entry.is_some(), "first_entry": entry, "in_xi": xi,
                }))?));
            }
            let mut s = match entry {
                Some(m) => format!("{angle} is in Disc{h}: σ^{m}({angle}) ∈ Π₁(H), first entry m = {m}\n"),
                None => format!("{angle} is not in Disc{h}\n"),
            };
            if xi {
                s += &format!("{angle} is in Ξ(H)\n");
            }
            Ok(Outcome::ok(s))
        }
        Command::Marker { theta_minus, theta_plus, angle, depth, all_chains, backtrack } => {
            let (h, pool) = component(g, theta_minus, theta_plus)?;
            let parser = MarkerParser::new(&h, &pool)?;
            let depth = depth.unwrap_or_else(|| 4 * h.period() * angle.forward_orbit().period().max(1));
            let itinerary = parser.itinerary(angle);
            let chains = if *all_chains {
                parser.decompose_all(angle)?
            } else {
                parser.decompose(angle)?.into_iter().collect()
            };
            let audit = backtrack.map(|d| parser.decompose_backtracking(angle, d));
            let diffs = compare_codings(&h, angle, depth);
            let plus = h.plus_spec().partition().itinerary_prefix(angle, depth);
            let minus = h.minus_spec().partition().itinerary_prefix(angle, depth);
            if json {
                let d: Vec<_> = diffs.iter().map(|(i, p, m)| json!({"position": i, "plus": p, "minus": m})).collect();
                let mut v = json!({
                    "component": h, "angle": angle, "itinerary": itinerary,
                    "chains": chains, "chain_strings": chains.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "plus": symbols_to_string(&plus), "minus": symbols_to_string(&minus), "differences": d,
                });
                if let Some(audit) = &audit {
                    v["audit"] = json!(audit);
                }
                return Ok(Outcome::ok(json_text("marker", &v)?));
            }
            let mut s = format!("I_H({angle}) = {itinerary}\n");
            if chains.is_empty() {
                s += &format!("{angle} is not in Disc{h}: no marker\n");
            }
            for c in &chains {
                let kind = if c.infinite() {
                    "infinite"
                } else if c.parsed() {
                    "finite"
                } else {
                    "unparsed"
                };
                let exc = if c.exceptional { ", exceptional (θ ∈ Ξ(H))" } else { "" };
                s += &format!("marker from position {}: {c}  [{kind}{exc}]\n", c.first_star);
            }
            if let Some(audit) = &audit {
                s += &match audit {
                    Some(a) => format!(
                        "backtracking parse: {} blocks, {}\n",
                        a.blocks.len(),
                        if a.terminal { "terminal" } else { "reached depth limit" }
                    ),
                    None => "backtracking parse: no tiling\n".to_string(),
                };
            }
            s += &format!("I⁺_H = {}\nI⁻_H = {}\n", symbols_to_string(&plus), symbols_to_string(&minus));
            let pos: Vec<String> = diffs.iter().map(|(i, p, m)| format!("{i}:{p}/{m}")).collect();
            s += &format!("differ at: {}\n", if pos.is_empty() { "none".to_string() } else { pos.join(" ") });
            Ok(Outcome::ok(s))
        }
        Command::Render { theta_minus, theta_plus, step, size, no_labels, order } => {
            let (h, pool) = component(g, theta_minus, theta_plus)?;
            let trace = rq_trace_with(&h, &pool, (*order).into())?;
            let step = if step == "all" {
                Step::All
            } else {
                Step::One(step.parse().with_context(|| format!("bad step {step:?}"))?)
            };
            let spec = RenderSpec { component: h, step, size: *size, labels: !no_labels };
            Ok(Outcome::ok(render_svg(&trace, &spec)?))
        }
        Command::Report { theta_minus: Some(m), theta_plus: Some(p), style, order } => {
            let (h, pool) = component(g, m, p)?;
            let spec = ExampleSpec { label: "Component".into(), component: h, style: (*style).into(), order: (*order).into() };
            let example = build_example(&spec, &pool)?;
            if json {
                return Ok(Outcome::ok(json_text("example", &example)?));
            }
            Ok(Outcome::ok(example.to_text()))
        }
        Command::Report { theta_minus: None, theta_plus: None, .. } => {
            let pool = pool_for(g, 6)?;
            let report = appendix_a(&pool)?;
            if json {
                return Ok(Outcome::ok(json_text("report", &report)?));
            }
            Ok(Outcome::ok(report.to_text()))
        }
        Command::Report { .. } => anyhow::bail!("report needs both θ⁻ and θ⁺, or neither"),
    }
}

fn join(v: &[usize]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
    }
}

fn summary_line(o: &ComponentOutcome) -> String {
    let r = &o.report;
    let status = if o.passed() { "ok" } else { "FAIL" };
    let residual = if r.residual_points.is_empty() {
        String::new()
    } else {
        format!("  residual {{{}}}", r.residual_points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
    };
    let mut line = format!("{status:<5}{}  per {}{residual}\n", r.component, r.component.period());
    for f in o.checks.failures() {
        line += &format!("      {}: {}\n", f.name, f.detail);
    }
    if !r.covered {
        line += &format!("      uncovered: {}\n", r.residual_set);
    }
    line
}

fn detail(o: &ComponentOutcome) -> String {
    let r = &o.report;
    let h = &r.component;
    let mut s = format!("H = {h}  per(H) = {}  K(H) = {}\n", h.period(), symbols_to_string(h.kneading()));
    let cs: Vec<String> = r.conspicuous.iter().map(|c| format!("{c} (K = {})", symbols_to_string(c.kneading()))).collect();
    s += &format!("conspicuous: {}\n", cs.join(", "));
    let times: Vec<usize> = o.checks.converse.iter().map(|&(n, _)| n).collect();
    s += &format!("return times: {}\n", join(&times));
    let residual = if r.residual_points.is_empty() {
        "∅".to_string()
    } else {
        let pts: Vec<String> = r
            .residual_points
            .iter()
            .zip(&r.residual_in_xi)
            .map(|(p, x)| format!("{p}{}", if *x { " (in Ξ)" } else { " (NOT in Ξ)" }))
            .collect();
        format!("{{{}}}", pts.join(", "))
    };
    s += &format!("residual Π₁(H) ∖ U: {residual}\n");
    s += &format!("covered: {}\n", if r.covered { "yes" } else { "no" });
    s += &format!("remark condition: {}\n", r.remark_condition);
    for c in &o.checks.checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let extra = if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
        s += &format!("check {:<26}{mark}{extra}\n", c.name);
    }
    let conv: Vec<String> =
        o.checks.converse.iter().map(|(n, ok)| format!("{n}:{}", if *ok { "yes" } else { "no" })).collect();
    s += &format!("R_n ⊃ Π₀ at return times: {}\n", if conv.is_empty() { "none".into() } else { conv.join(" ") });
    s
}
