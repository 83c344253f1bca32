use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rotor::action::{blow_up, collapse, fixed_set, global_fixed_set, orbit_closure, orbit_gap, FixedSet, GroupAction};
use rotor::checks::{self, Config};
use rotor::circle::{parse_rational, CirclePoint, Rational};
use rotor::cocycle::{analyze_cochain2, obstruction_cocycle, orientation_cocycle, HomCochain2, EULER, ORIENTATION};
use rotor::error::Error;
use rotor::homeo::CircleHomeo;
use rotor::json::{action_to_value, map_to_value, parse_action, parse_map, points_to_value};
use rotor::monotone::{Arc, MonotoneMap};
use rotor::pl::PlLift;
use rotor::rotation::{rotation_number, DEFAULT_MAX_ITERS, DEFAULT_MAX_PERIOD};
use rotor::semiconj::{
    check_left_semiconjugacy, construct_semiconjugacy_sup, glue_finite_orbit_actions, match_lifts, straighten_to_rotation,
    SupOutcome, DEFAULT_BALL_CAP,
};
use rotor::sullivan::{is_small, pullback_sullivan, sullivan_eval, sullivan_vanishes_on_cube, DoubleCoverHomeo, PullbackVerdict};
use rotor::svg;

const BREAKPOINT_WARNING: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "rotor", version, about = "Exact computations with piecewise-linear circle maps")]
struct Cli {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Print nothing on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Cocycle {
    Euler,
    Orientation,
    Obstruction,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rotation number of a strict map.
    Rotnum {
        map: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
        max_period: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: u32,
    },
    /// Fixed sets of the generators and the global fixed set.
    Fixedpoints { action: PathBuf },
    /// Orbit of a point; finite orbits are listed exactly.
    Orbit {
        action: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Cocycle tables, or a single value with --args.
    Euler {
        #[arg(long, value_enum)]
        cocycle: Cocycle,
        /// JSON file: three points, or two strict maps for the obstruction cocycle.
        #[arg(long)]
        args: Option<PathBuf>,
    },
    /// Checks that phi is a left semi-conjugacy from the first action to the second.
    CheckSemiconj { a1: PathBuf, a2: PathBuf, phi: PathBuf },
    /// Builds a semi-conjugacy as a supremum over a word ball.
    BuildSemiconj {
        a1: PathBuf,
        a2: PathBuf,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
        max_period: u32,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Rotation action semi-conjugate to a Z-action.
    Straighten {
        action: PathBuf,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Glues two actions along finite orbits, e.g. --orbit1 0,1/2.
    Glue {
        a1: PathBuf,
        a2: PathBuf,
        #[arg(long, value_delimiter = ',')]
        orbit1: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        orbit2: Vec<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Replaces the points of a finite orbit by arcs of the given widths.
    Blowup {
        action: PathBuf,
        #[arg(long, value_delimiter = ',')]
        orbit: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        widths: Vec<String>,
    },
    /// Collapses an invariant arc system, e.g. --arcs 0:1/10,1/2:1/10.
    Collapse {
        action: PathBuf,
        #[arg(long, value_delimiter = ',')]
        arcs: Vec<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The Sullivan cocycle on the double cover.
    Sullivan {
        /// Value on a triple.
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"])]
        eval: Option<Vec<String>>,
        /// Smallness of a finite set, compared with vanishing on its cube.
        #[arg(long, num_args = 1..)]
        small: Option<Vec<String>>,
        /// Pullback along an action; generators act through `y -> g(2y)/2`
        /// with `g` the given lift, or the standard lift when none is given.
        #[arg(long)]
        pullback: Option<PathBuf>,
        #[arg(long, default_value = "0")]
        point: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Every property sweep at the given sample percentage.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        samples_percent: u32,
        /// Run the acceptance criteria instead and print one line each.
        #[arg(long)]
        acceptance: bool,
    },
    /// SVG graph of a map over one period.
    Plot {
        map: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Property(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Validation(_) | Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Property(json!({"error": other.to_string()})),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<PlLift, Failure> {
    let f = parse_map(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    warn_size(f.breakpoint_count());
    Ok(f)
}

fn load_action(path: &Path) -> Result<GroupAction, Failure> {
    let rho = parse_action(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    for g in rho.generators() {
        warn_size(g.breakpoint_count());
    }
    Ok(rho)
}

fn warn_size(n: usize) {
    if n > BREAKPOINT_WARNING {
        eprintln!("warning: map with {n} breakpoints");
    }
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn points(v: &[String]) -> Result<Vec<CirclePoint>, Failure> {
    v.iter().map(|s| rational(s).map(|r| CirclePoint::new(&r))).collect()
}

fn fixed_json(f: &FixedSet) -> Value {
    Value::Array(
        f.components()
            .iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect(),
    )
}

/// Writes via a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp~");
    fs::write(&tmp, contents)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn plot(path: &Option<PathBuf>, f: &PlLift, title: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, &svg::render(f, title)),
        None => Ok(()),
    }
}

fn rotnum(map: &Path, max_period: u32, max_iters: u32) -> Outcome {
    let f = load_map(map)?;
    let h = CircleHomeo::from_lift(&f).map_err(|_| Failure::Usage("rotation numbers need a strict map".into()))?;
    Ok(rotation_number(h.sigma(), max_period, max_iters).to_json())
}

fn fixedpoints(action: &Path) -> Outcome {
    let rho = load_action(action)?;
    let per: Vec<Value> = rho.generators().iter().map(|g| fixed_json(&fixed_set(g))).collect();
    let global = global_fixed_set(&rho);
    Ok(json!({"generators": per, "global": fixed_json(&global), "has_global_fixed_point": !global.is_empty()}))
}

fn orbit(action: &Path, point: &str, bound: usize) -> Outcome {
    let rho = load_action(action)?;
    let x = CirclePoint::new(&rational(point)?);
    Ok(match orbit_closure(&rho, &x, bound) {
        Some(o) => json!({"finite": true, "size": o.len(), "orbit": points_to_value(&o)}),
        None => {
            let radius = 4;
            json!({
                "finite": false,
                "bound": bound,
                "heuristic_gap": {"radius": radius, "largest_gap": orbit_gap(&rho, &x, radius).to_string()},
            })
        }
    })
}

fn table_json(t: &HomCochain2) -> Value {
    json!({"table": t, "analysis": analyze_cochain2(t)})
}

fn euler(cocycle: Cocycle, args: &Option<PathBuf>) -> Outcome {
    let Some(path) = args else {
        return match cocycle {
            Cocycle::Euler => Ok(table_json(&EULER)),
            Cocycle::Orientation => Ok(table_json(&ORIENTATION)),
            Cocycle::Obstruction => Err(Failure::Usage("the obstruction cocycle needs --args with two maps".into())),
        };
    };
    let v = rotor::json::parse_value(&read(path)?)?;
    match cocycle {
        Cocycle::Obstruction => {
            let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Failure::Usage("expected two maps".into()))?;
            let h: Vec<CircleHomeo> = arr
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let f = rotor::json::map_from_value(m, &format!("[{i}]"))?;
                    CircleHomeo::from_lift(&f)
                })
                .collect::<Result<_, Error>>()?;
            Ok(json!({"value": obstruction_cocycle(&h[0], &h[1])}))
        }
        c => {
            let p = rotor::json::points_from_value(&v, "")?;
            if p.len() != 3 {
                return Err(Failure::Usage("expected three points".into()));
            }
            let value = match c {
                Cocycle::Euler => EULER.eval(&p[0], &p[1], &p[2]),
                _ => orientation_cocycle(&p[0], &p[1], &p[2]),
            };
            Ok(json!({"value": value}))
        }
    }
}

fn check_semiconj(a1: &Path, a2: &Path, phi: &Path) -> Outcome {
    let (r1, r2) = (load_action(a1)?, load_action(a2)?);
    let phi = MonotoneMap::new(load_map(phi)?)?;
    let ok = check_left_semiconjugacy(&r1, &r2, &phi)?;
    let v = json!({"left_semiconjugacy": ok});
    if ok {
        Ok(v)
    } else {
        Err(Failure::Property(v))
    }
}

fn lifted(rho: GroupAction) -> GroupAction {
    if rho.lifts().is_some() {
        rho
    } else {
        rho.with_section_lifts()
    }
}

fn build_semiconj(a1: &Path, a2: &Path, radius: usize, max_period: u32, svg_out: &Option<PathBuf>) -> Outcome {
    let r1 = lifted(load_action(a1)?);
    let mut r2 = lifted(load_action(a2)?);
    if r1.rank() == 1 {
        if let Ok(m) = match_lifts(&r1, &r2) {
            r2 = m;
        }
    }
    let rep = construct_semiconjugacy_sup(&r1, &r2, radius, max_period)?;
    let (kind, extra) = match &rep.outcome {
        SupOutcome::Stabilized { radius, .. } => ("stabilized", json!({"radius": radius})),
        SupOutcome::Limit { period, .. } => ("limit", json!({"period": period})),
        SupOutcome::Diverged { reason } => ("diverged", json!({"reason": reason})),
        SupOutcome::Unresolved { radius } => ("unresolved", json!({"radius": radius, "ball_cap": DEFAULT_BALL_CAP})),
    };
    let mut v = json!({"outcome": kind, "detail": extra, "verified": rep.verified});
    if let Some(phi) = rep.phi() {
        v["phi"] = map_to_value(phi.lift());
        v["has_jump"] = json!(phi.lift().has_jump());
        plot(svg_out, phi.lift(), "sup semi-conjugacy")?;
    }
    if rep.verified {
        Ok(v)
    } else {
        Err(Failure::Property(v))
    }
}

fn straighten(action: &Path, radius: usize, svg_out: &Option<PathBuf>) -> Outcome {
    let rho = lifted(load_action(action)?);
    let s = straighten_to_rotation(&rho, radius)?;
    plot(svg_out, s.from_input.lift(), "to the rotation")?;
    Ok(json!({
        "rotation": action_to_value(&s.rotation),
        "to_input": map_to_value(s.to_input.lift()),
        "from_input": map_to_value(s.from_input.lift()),
    }))
}

fn glue(a1: &Path, a2: &Path, o1: &[String], o2: &[String], svg_out: &Option<PathBuf>) -> Outcome {
    let (r1, r2) = (load_action(a1)?, load_action(a2)?);
    let g = glue_finite_orbit_actions(&r1, &r2, &points(o1)?, &points(o2)?)?;
    let ok1 = check_left_semiconjugacy(&r1, &g.action, &g.phi1)?;
    let ok2 = check_left_semiconjugacy(&r2, &g.action, &g.phi2)?;
    plot(svg_out, g.phi1.lift(), "first collapse")?;
    let v = json!({
        "action": action_to_value(&g.action),
        "phi1": map_to_value(g.phi1.lift()),
        "phi2": map_to_value(g.phi2.lift()),
        "verified": ok1 && ok2,
    });
    if ok1 && ok2 {
        Ok(v)
    } else {
        Err(Failure::Property(v))
    }
}

fn arcs_json(arcs: &[Arc]) -> Value {
    Value::Array(
        arcs.iter()
            .map(|a| json!({"start": a.start.to_string(), "end": a.end().to_string()}))
            .collect(),
    )
}

fn blowup(action: &Path, orbit: &[String], widths: &[String]) -> Outcome {
    let rho = load_action(action)?;
    let w: Vec<Rational> = widths.iter().map(|s| rational(s)).collect::<Result<_, _>>()?;
    let (big, arcs) = blow_up(&rho, &points(orbit)?, &w)?;
    Ok(json!({"action": action_to_value(&big), "arcs": arcs_json(&arcs)}))
}

fn parse_arc(s: &str) -> Result<Arc, Failure> {
    let (a, l) = s
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("arc {s:?} is not start:length")))?;
    Ok(Arc::new(&rational(a)?, rational(l)?))
}

fn collapse_cmd(action: &Path, arcs: &[String], svg_out: &Option<PathBuf>) -> Outcome {
    let rho = load_action(action)?;
    let arcs: Vec<Arc> = arcs.iter().map(|s| parse_arc(s)).collect::<Result<_, _>>()?;
    let (small, phi) = collapse(&rho, &arcs)?;
    plot(svg_out, phi.lift(), "collapse")?;
    Ok(json!({"action": action_to_value(&small), "phi": map_to_value(phi.lift())}))
}

fn sullivan(eval: &Option<Vec<String>>, small: &Option<Vec<String>>, pullback: &Option<PathBuf>, point: &str, radius: usize) -> Outcome {
    if let Some(e) = eval {
        let p = points(e)?;
        return Ok(json!({"value": sullivan_eval(&p[0], &p[1], &p[2])}));
    }
    if let Some(s) = small {
        let p = points(s)?;
        let sm = is_small(&p)?;
        let van = sullivan_vanishes_on_cube(&p)?;
        return Ok(json!({"small": sm, "vanishes_on_cube": van}));
    }
    if let Some(path) = pullback {
        let rho = load_action(path)?;
        let gens: Vec<DoubleCoverHomeo> = match rho.lifts() {
            Some(ls) => ls.to_vec(),
            None => rho.generators().iter().map(|g| g.sigma().clone()).collect(),
        }
        .into_iter()
        .map(DoubleCoverHomeo::from_conjugated_lift)
        .collect::<Result<_, _>>()?;
        let x = CirclePoint::new(&rational(point)?);
        return Ok(match pullback_sullivan(&gens, &x, radius)? {
            PullbackVerdict::Vanishes { orbit_points } => json!({"vanishes": true, "orbit_points": orbit_points}),
            PullbackVerdict::Witness { words, value } => json!({"vanishes": false, "words": words, "value": value}),
        });
    }
    Err(Failure::Usage("sullivan needs one of --eval, --small, --pullback".into()))
}

fn fuzz(seed: u64, samples_percent: u32, acceptance: bool, quiet: bool) -> Outcome {
    let cfg = Config { seed, samples_percent };
    if acceptance {
        let rep = checks::run_acceptance(&cfg);
        if !quiet {
            for c in &rep.criteria {
                eprintln!("{}", c.line());
            }
        }
        let v = serde_json::to_value(&rep).expect("serializable");
        return if rep.criteria.iter().all(|c| c.passed) {
            Ok(v)
        } else {
            Err(Failure::Property(v))
        };
    }
    let rep = checks::fuzz_suite(&cfg);
    let v = serde_json::to_value(&rep).expect("serializable");
    if rep.passed {
        Ok(v)
    } else {
        Err(Failure::Property(v))
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Rotnum { map, max_period, max_iters } => rotnum(map, *max_period, *max_iters),
        Command::Fixedpoints { action } => fixedpoints(action),
        Command::Orbit { action, point, bound } => orbit(action, point, *bound),
        Command::Euler { cocycle, args } => euler(*cocycle, args),
        Command::CheckSemiconj { a1, a2, phi } => check_semiconj(a1, a2, phi),
        Command::BuildSemiconj { a1, a2, radius, max_period, svg } => build_semiconj(a1, a2, *radius, *max_period, svg),
        Command::Straighten { action, radius, svg } => straighten(action, *radius, svg),
        Command::Glue { a1, a2, orbit1, orbit2, svg } => glue(a1, a2, orbit1, orbit2, svg),
        Command::Blowup { action, orbit, widths } => blowup(action, orbit, widths),
        Command::Collapse { action, arcs, svg } => collapse_cmd(action, arcs, svg),
        Command::Sullivan { eval, small, pullback, point, radius } => sullivan(eval, small, pullback, point, *radius),
        Command::Fuzz { samples_percent, acceptance } => fuzz(cli.seed, *samples_percent, *acceptance, cli.quiet),
        Command::Plot { map, out } => {
            let f = load_map(map)?;
            write_atomic(out, &svg::render(&f, &map.display().to_string()))?;
            Ok(json!({"written": out.display().to_string()}))
        }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rotnum { .. } => "rotnum",
            Command::Fixedpoints { .. } => "fixedpoints",
            Command::Orbit { .. } => "orbit",
            Command::Euler { .. } => "euler",
            Command::CheckSemiconj { .. } => "check-semiconj",
            Command::BuildSemiconj { .. } => "build-semiconj",
            Command::Straighten { .. } => "straighten",
            Command::Glue { .. } => "glue",
            Command::Blowup { .. } => "blowup",
            Command::Collapse { .. } => "collapse",
            Command::Sullivan { .. } => "sullivan",
            Command::Fuzz { .. } => "fuzz",
            Command::Plot { .. } => "plot",
        }
    }
}

fn emit(cli: &Cli, result: &Value, ok: bool) -> Result<(), Failure> {
    let report = json!({
        "command": cli.command.name(),
        "seed": cli.seed,
        "ok": ok,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    if !cli.quiet {
        println!("{text}");
    }
    if let Some(p) = &cli.json_out {
        write_atomic(p, &(text + "\n"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, ok) = match run(&cli) {
        Ok(v) => (v, true),
        Err(Failure::Property(v)) => (v, false),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(Failure::Usage(msg)) = emit(&cli, &result, ok) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
