use std::f64::consts::PI;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use band_unfold::band::{build_band, NestedPrismatoid};
use band_unfold::generate::{
    nested_prismatoid_from_config, random_acute_chain, random_convex_chain, random_prismoid,
    rm_property_survey, GenConfig,
};
use band_unfold::geom::{ConvexPolygon, Point2, DEFAULT_RELATIVE_EPS};
use band_unfold::io::{emit_phi_csv, polygon_from_json, z_grid, PrismatoidDocument};
use band_unfold::rm::{
    find_crossing_opening, find_rm_property, involute_of, is_rm, open_chain, OpeningVector,
    RmWitness,
};
use band_unfold::svg::{
    layout_scene, render_crossing, render_involute, render_layout, render_plot, render_rm_grid,
    render_rm_polygon, Scene,
};
use band_unfold::unfold::{
    assemble, choose_plan, choose_sweep_plan, default_attach_b, develop_band, find_safe_cuts,
    overlap_verdict, plan_for_witness, unfold, z_sweep, CutPlan, Layout, OverlapVerdict,
};
use band_unfold::verify::{run_selected, run_verify, suite_names, SuiteKind, SWEEP_HEIGHTS};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "band-unfold",
    version,
    about = "Band unfoldings of nested prismatoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random nested prismatoid as JSON.
    Gen(GenArgs),
    /// Unfold a prismatoid along an RM witness and check for overlap.
    Unfold(UnfoldArgs),
    /// List the lateral edges whose band development does not overlap.
    SafeCuts(SafeCutArgs),
    /// Find the edges of a convex polygon that witness the RM-property.
    RmCheck(RmCheckArgs),
    /// Tabulate the lifted angle of one configuration against height.
    Phi(PhiArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
    /// Write the figure set into a directory.
    Figures(FigureArgs),
}

#[derive(Args)]
struct Input {
    /// Input file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Relative tolerance for geometric decisions.
    #[arg(long, default_value_t = DEFAULT_RELATIVE_EPS)]
    tolerance: f64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 14)]
    nb: usize,
    #[arg(long, default_value_t = 16)]
    na: usize,
    #[arg(long, default_value_t = 0.2)]
    z: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Make every lateral face a planar quadrilateral (A gets B's edge count).
    #[arg(long)]
    prismoid: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct UnfoldArgs {
    #[command(flatten)]
    input: Input,
    /// Override the document's height.
    #[arg(long)]
    z: Option<f64>,
    /// Check every listed height; the default list when given no values.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    z_sweep: Option<Vec<f64>>,
    /// Lateral edge to cut.
    #[arg(long)]
    cut: Option<usize>,
    /// Edge of B that stays attached.
    #[arg(long)]
    attach_b: Option<usize>,
    /// Edge of A whose RM witness to use.
    #[arg(long)]
    witness: Option<usize>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SafeCutArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    z: Option<f64>,
    /// Development to draw; the first safe cut by default.
    #[arg(long)]
    cut: Option<usize>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct RmCheckArgs {
    /// A polygon as a list of [x, y], or a prismatoid document (A is checked).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Fail unless this edge is a witness.
    #[arg(long)]
    witness: Option<usize>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct PhiArgs {
    /// Planar angle in degrees.
    #[arg(long, default_value_t = 120.0)]
    theta: f64,
    #[arg(long, default_value_t = 0.0)]
    x: f64,
    #[arg(long, default_value_t = 1.0)]
    y: f64,
    /// Largest height of the grid.
    #[arg(long, default_value_t = 5.0)]
    z: f64,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Run only these suites.
    #[arg(long)]
    suite: Vec<String>,
    /// List suite names and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, default_value = "figures")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

enum Failure {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// The computation ran and a checked property does not hold.
    Domain(String),
}

type CliResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(usage)?;
            Ok(s)
        }
    }
}

fn write_out(path: &Path, content: &str) -> CliResult {
    fs::write(path, content).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when absent.
fn emit(path: Option<&Path>, content: &str) -> CliResult {
    match path {
        Some(p) => write_out(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn load_prismatoid(input: &Input, z: Option<f64>) -> Result<NestedPrismatoid, Failure> {
    let text = read_input(input.input.as_deref())?;
    let doc = PrismatoidDocument::from_json(&text).map_err(usage)?;
    let p = doc.to_prismatoid_with(input.tolerance).map_err(usage)?;
    match z {
        Some(z) => p.with_z(z).map_err(usage),
        None => Ok(p),
    }
}

fn verdict_json(v: &OverlapVerdict) -> Value {
    json!({
        "overlaps": v.overlaps(),
        "marginal": v.marginal,
        "worst_margin": v.worst_margin,
        "pair": v.pair,
    })
}

fn describe(v: &OverlapVerdict) -> String {
    let state = match v.pair {
        Some((f, g)) => format!("overlap between {f:?} and {g:?}"),
        None => "no overlap".into(),
    };
    if v.marginal {
        format!("{state} (marginal)")
    } else {
        state
    }
}

fn cmd_gen(a: GenArgs) -> CliResult {
    let cfg = GenConfig {
        n_b: a.nb,
        n_a: a.na,
        z: a.z,
        seed: a.seed,
        ..GenConfig::default()
    };
    let (p, meta) = if a.prismoid {
        let p = random_prismoid(a.nb, a.z, a.seed).map_err(usage)?;
        (p, json!({"seed": a.seed, "prismoid": true, "n": a.nb}))
    } else {
        let p = nested_prismatoid_from_config(&cfg).map_err(usage)?;
        (p, json!({"seed": a.seed, "generator": cfg}))
    };
    let doc = PrismatoidDocument::from_prismatoid(&p, Some(meta));
    emit(a.json.as_deref(), &(doc.to_json() + "\n"))
}

fn witness_on(top: &ConvexPolygon, edge: usize) -> Result<RmWitness, Failure> {
    find_rm_property(top)
        .into_iter()
        .find(|w| w.a == edge % top.len())
        .ok_or_else(|| Failure::Domain(format!("edge {edge} of A has no RM witness")))
}

fn build_plan(a: &UnfoldArgs, p: &NestedPrismatoid, zs: &[f64]) -> Result<CutPlan, Failure> {
    let band = build_band(p).map_err(usage)?;
    let witness = a.witness.map(|e| witness_on(p.top(), e)).transpose()?;
    if let Some(cut) = a.cut {
        if cut >= band.len() {
            return Err(usage(format!(
                "cut {cut} is not one of the {} lateral edges",
                band.len()
            )));
        }
        let witness = witness.or_else(|| find_rm_property(p.top()).into_iter().next());
        return Ok(CutPlan {
            cut,
            attach_b: a.attach_b.unwrap_or_else(|| default_attach_b(&band, cut)),
            attach_a: witness.map_or(0, |w| w.a),
            witness,
        });
    }
    let plan = match witness {
        Some(w) => plan_for_witness(p, &band, w, a.attach_b).map_err(usage)?,
        None if zs.len() > 1 => choose_sweep_plan(p.base(), p.top(), zs).map_err(usage)?,
        None => choose_plan(p, &band).map_err(usage)?,
    };
    let mut plan = plan
        .ok_or_else(|| Failure::Domain("no RM witness of A has a safe cut at its apex".into()))?;
    if let Some(b) = a.attach_b {
        plan.attach_b = b;
    }
    Ok(plan)
}

fn layout_for(p: &NestedPrismatoid, plan: &CutPlan) -> Result<Layout, Failure> {
    match plan.witness {
        Some(_) => unfold(p, plan).map_err(usage),
        None => {
            let band = build_band(p).map_err(usage)?;
            assemble(p, &band, plan.cut, plan.attach_b, plan.attach_a).map_err(usage)
        }
    }
}

fn cmd_unfold(a: UnfoldArgs) -> CliResult {
    let p = load_prismatoid(&a.input, a.z)?;
    let zs: Vec<f64> = match &a.z_sweep {
        Some(v) if v.is_empty() => SWEEP_HEIGHTS.to_vec(),
        Some(v) => v.clone(),
        None => vec![p.z()],
    };
    let plan = build_plan(&a, &p, &zs)?;
    let layout = layout_for(&p, &plan)?;
    let verdict = overlap_verdict(&layout);
    let mut report = json!({
        "plan": plan,
        "z": p.z(),
        "verdict": verdict_json(&verdict),
        "layout": layout,
    });
    let mut failed = verdict.overlaps();
    eprintln!("z = {}: {}", p.z(), describe(&verdict));
    if a.z_sweep.is_some() {
        let sweep = if plan.witness.is_some() {
            z_sweep(p.base(), p.top(), &plan, &zs).map_err(usage)?
        } else {
            return Err(usage("--z-sweep needs an RM witness of A"));
        };
        let rows: Vec<Value> = sweep
            .iter()
            .map(|s| {
                eprintln!(
                    "z = {}: {}{}",
                    s.z,
                    describe(&s.verdict),
                    if s.cut_safe { "" } else { ", cut unsafe" }
                );
                failed |= !s.nonoverlapping();
                json!({"z": s.z, "cut_safe": s.cut_safe, "verdict": verdict_json(&s.verdict)})
            })
            .collect();
        report["sweep"] = Value::Array(rows);
    }
    emit(a.json.as_deref(), &pretty(&report))?;
    if let Some(path) = &a.svg {
        write_out(path, &render_layout(&layout))?;
    }
    if failed {
        Err(Failure::Domain("the unfolding overlaps".into()))
    } else {
        Ok(())
    }
}

fn cmd_safe_cuts(a: SafeCutArgs) -> CliResult {
    let p = load_prismatoid(&a.input, a.z)?;
    let band = build_band(&p).map_err(usage)?;
    let safe = find_safe_cuts(&p, &band);
    let report = json!({
        "z": p.z(),
        "lateral_edges": band.len(),
        "count": safe.len(),
        "safe_cuts": safe,
        "prismoid": band.triangles().iter().all(|t| t.coplanar),
    });
    emit(a.json.as_deref(), &pretty(&report))?;
    if let Some(path) = &a.svg {
        let cut = a.cut.or(safe.first().copied()).unwrap_or(0);
        if cut >= band.len() {
            return Err(usage(format!(
                "cut {cut} is not one of the {} lateral edges",
                band.len()
            )));
        }
        let layout = develop_band(&p, &band, cut).map_err(usage)?;
        write_out(path, &render_layout(&layout))?;
    }
    Ok(())
}

fn cmd_rm_check(a: RmCheckArgs) -> CliResult {
    let text = read_input(a.input.as_deref())?;
    let poly = match polygon_from_json(&text) {
        Ok(poly) => poly,
        Err(first) => match PrismatoidDocument::from_json(&text) {
            Ok(doc) => doc.to_prismatoid().map_err(usage)?.top().clone(),
            Err(_) => return Err(usage(first)),
        },
    };
    let ws = find_rm_property(&poly);
    let report = json!({"vertices": poly.len(), "rm_property": !ws.is_empty(), "witnesses": ws});
    emit(a.json.as_deref(), &pretty(&report))?;
    let chosen = match a.witness {
        Some(e) => Some(witness_on(&poly, e)),
        None => ws.first().copied().map(Ok),
    };
    if let Some(path) = &a.svg {
        let w = chosen.as_ref().and_then(|r| r.as_ref().ok());
        write_out(path, &render_rm_polygon(&poly, w))?;
    }
    chosen.transpose().map(|_| ())
}

fn cmd_phi(a: PhiArgs) -> CliResult {
    let zs = z_grid(a.z, a.samples);
    let theta = a.theta.to_radians();
    let csv = emit_phi_csv(theta, a.x, a.y, &zs).map_err(usage)?;
    emit(a.csv.as_deref(), &csv)?;
    if let Some(path) = &a.svg {
        write_out(path, &phi_plot(theta, a.x, a.y, &zs)?)?;
    }
    Ok(())
}

fn phi_plot(theta: f64, x: f64, y: f64, zs: &[f64]) -> Result<String, Failure> {
    let samples = zs
        .iter()
        .map(|&z| {
            Ok((
                z,
                band_unfold::opening::phi_closed_form(theta, x, y, z).map_err(usage)?,
            ))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(render_plot(&samples))
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    if a.list {
        for n in suite_names() {
            println!("{n}");
        }
        return Ok(());
    }
    let report = if a.suite.is_empty() {
        run_verify(a.trials, a.seed)
    } else {
        let names: Vec<&str> = a.suite.iter().map(String::as_str).collect();
        run_selected(&names, a.trials, a.seed).map_err(usage)?
    };
    for s in &report.suites {
        let status = match (s.passed(), s.kind) {
            (false, _) => "FAIL",
            (true, SuiteKind::Asserted) => "ok",
            (true, SuiteKind::Measured) => "measured",
        };
        println!(
            "{status:8} {:28} trials {:5}  skipped {:4}  failures {:5}  worst {:+.3e}  {:8.1} ms",
            s.name,
            s.trials,
            s.skipped,
            s.failures.len(),
            s.worst_margin,
            s.elapsed_ms
        );
        if let Some(f) = s.failures.first() {
            println!("         first failure: seed {} ({})", f.seed, f.detail);
        }
    }
    if let Some(path) = &a.json {
        write_out(
            path,
            &pretty(&serde_json::to_value(&report).expect("report serializes")),
        )?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "failing suites: {}",
            report.failing().join(", ")
        )))
    }
}

/// Layouts side by side, left to right.
fn layout_row(layouts: &[Layout]) -> String {
    let mut scene = Scene::new();
    for (k, l) in layouts.iter().enumerate() {
        scene.inset(&layout_scene(l), Point2::new(k as f64, 0.0), 1.0);
    }
    scene.to_svg()
}

fn planned_layout(p: &NestedPrismatoid) -> Result<Layout, Failure> {
    let band = build_band(p).map_err(usage)?;
    let plan = choose_plan(p, &band)
        .map_err(usage)?
        .ok_or_else(|| Failure::Domain("instance has no usable RM witness".into()))?;
    layout_for(p, &plan)
}

fn cmd_figures(a: FigureArgs) -> CliResult {
    fs::create_dir_all(&a.out).map_err(|e| usage(format!("{}: {e}", a.out.display())))?;
    let mut written = Vec::new();
    let mut put = |name: &str, content: String| -> CliResult {
        let path = a.out.join(name);
        write_out(&path, &content)?;
        written.push(path);
        Ok(())
    };

    // 14/16 instance of diameter 1 at z = 0.2
    let cfg = GenConfig {
        seed: a.seed,
        ..GenConfig::default()
    };
    let p = nested_prismatoid_from_config(&cfg).map_err(usage)?;
    put(
        "example_n14_16.json",
        PrismatoidDocument::from_prismatoid(&p, Some(json!({"seed": a.seed, "generator": cfg})))
            .to_json()
            + "\n",
    )?;
    put("example_n14_16.svg", render_layout(&planned_layout(&p)?))?;

    // one instance at z = 1, 2, 3 under a plan safe at all three
    let zs = [1.0, 2.0, 3.0];
    let base = p.base().clone();
    let top = p.top().clone();
    let plan = choose_sweep_plan(&base, &top, &zs)
        .map_err(usage)?
        .ok_or_else(|| Failure::Domain("no plan is safe at z = 1, 2, 3".into()))?;
    let layouts = zs
        .iter()
        .map(|&z| unfold(&p.with_z(z).map_err(usage)?, &plan).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    put("sweep_z1_z2_z3.svg", layout_row(&layouts))?;

    // several instances at z = 0.2
    let layouts = (0..4)
        .map(|k| {
            let c = GenConfig {
                seed: a.seed.wrapping_add(k + 1),
                ..GenConfig::default()
            };
            planned_layout(&nested_prismatoid_from_config(&c).map_err(usage)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    put("unfoldings_z02.svg", layout_row(&layouts))?;

    // forty random polygons with their witnesses
    let survey = rm_property_survey(40, (8, 12), a.seed).map_err(usage)?;
    let items: Vec<(ConvexPolygon, Option<RmWitness>)> = survey
        .into_iter()
        .map(|(poly, ws)| (poly, ws.first().copied()))
        .collect();
    put("rm_examples.svg", render_rm_grid(&items, 8))?;

    // lifted angle against height
    let theta = 120f64.to_radians();
    let zs = z_grid(5.0, 101);
    put(
        "plot_phi.csv",
        emit_phi_csv(theta, 0.0, 1.0, &zs).map_err(usage)?,
    )?;
    put("plot_phi.svg", phi_plot(theta, 0.0, 1.0, &zs)?)?;

    // involute of a 20-vertex RM chain with openings
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let chain = loop {
        let c = random_convex_chain(&mut rng, 20, PI).map_err(usage)?;
        if is_rm(&c) {
            break c;
        }
    };
    let involute = involute_of(&chain).map_err(usage)?;
    let openings = (1..=4)
        .map(|k| {
            let w = (1..chain.len() - 1)
                .map(|i| Ok((PI - chain.convex_angle(i)?) * k as f64 / 4.0))
                .collect::<band_unfold::Result<Vec<f64>>>()?;
            open_chain(&chain, &OpeningVector::new(w)?)
        })
        .collect::<band_unfold::Result<Vec<_>>>()
        .map_err(usage)?;
    put(
        "involute_n20.svg",
        render_involute(&chain, &involute, &openings),
    )?;

    // an opening of a chain with an acute angle that crosses the chain
    let (chain, opened) = loop {
        let c = random_acute_chain(&mut rng, 6).map_err(usage)?;
        if let Some(w) = find_crossing_opening(&c, 64).map_err(usage)? {
            let o = open_chain(&c, &w).map_err(usage)?;
            break (c, o);
        }
    };
    put("rm_violation.svg", render_crossing(&chain, &opened))?;

    for path in &written {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Unfold(a) => cmd_unfold(a),
        Command::SafeCuts(a) => cmd_safe_cuts(a),
        Command::RmCheck(a) => cmd_rm_check(a),
        Command::Phi(a) => cmd_phi(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Figures(a) => cmd_figures(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
