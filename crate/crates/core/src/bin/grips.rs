use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use grips::bench::{generate_scenarios, parse_scenarios, render_svg, run_benchmark, write_scenarios, Scenario};
use grips::config::Config;
use grips::{plan, Algorithm, Error, GridMap, PlanOutcome, Result, State, Workspace};

/// Kinematically feasible trajectories from geometric grid paths.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Parameter file (`key = value` lines); defaults apply to missing keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Plan one task. Poses are `x,y,theta` with x, y in cells and theta in radians.
    Plan {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        goal: String,
        #[arg(long, default_value = "grips-hs")]
        algo: Algorithm,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Draw random tasks on a map and write them as a `.scen` file.
    GenScenarios {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        n: usize,
        /// Minimum start/goal clearance in cells.
        #[arg(long)]
        min_clearance: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run algorithms over every `.scen` file against the maps in a directory.
    Bench {
        #[arg(long)]
        maps: PathBuf,
        #[arg(long)]
        scenarios: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "grips,grips-hs")]
        algos: Vec<Algorithm>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the per-task report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Render a `plan --json` result over its map.
    Plot {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_pose(s: &str, cell_size: f64) -> Result<State> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Input(format!("bad pose `{s}`, expected x,y,theta")))?;
    match v[..] {
        [x, y, t] => Ok(State::new(x * cell_size, y * cell_size, t)),
        _ => Err(Error::Input(format!("bad pose `{s}`, expected x,y,theta"))),
    }
}

fn load_map(path: &Path, cfg: &Config) -> Result<GridMap> {
    GridMap::load_movingai(&fs::read_to_string(path)?)?.with_cell_size(cfg.cell_size)
}

fn files_with_ext(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    Ok(out)
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let smoother = cfg.smoother();
    match cli.cmd {
        Cmd::Plan {
            map,
            start,
            goal,
            algo,
            svg,
            json,
        } => {
            let grid = load_map(&map, &cfg)?;
            let ws = Workspace::new(grid, smoother.steering.params);
            let start = parse_pose(&start, cfg.cell_size)?;
            let goal = parse_pose(&goal, cfg.cell_size)?;
            let out = plan(algo, &ws, &start, &goal, &smoother)?;
            match (&out.geometric, out.trajectory()) {
                (None, _) => println!("{algo}: no geometric path"),
                (Some(_), None) => println!("{algo}: smoothing failed"),
                (Some(_), Some(tr)) => println!(
                    "{algo}: success, length {:.3} m, {} states, {} extra states",
                    tr.length,
                    tr.states.len(),
                    out.smoothed.as_ref().map_or(0, |s| s.extra_states.len())
                ),
            }
            if let Some(p) = svg {
                fs::write(p, plot_outcome(&ws.map, &out))?;
            }
            if let Some(p) = json {
                fs::write(p, serde_json::to_string_pretty(&out)?)?;
            }
        }
        Cmd::GenScenarios {
            map,
            n,
            min_clearance,
            seed,
            out,
        } => {
            let grid = load_map(&map, &cfg)?;
            let dmap = grips::gridmap::distance_transform(&grid);
            let clearance = min_clearance.unwrap_or(cfg.min_clearance);
            let sc = generate_scenarios(&stem(&map), &grid, &dmap, n, clearance, cfg.min_separation, seed)?;
            fs::write(&out, write_scenarios(&sc, cfg.cell_size))?;
            println!("wrote {} tasks to {}", sc.len(), out.display());
        }
        Cmd::Bench {
            maps,
            scenarios,
            algos,
            out,
            json,
            jobs,
        } => {
            let mut workspaces = BTreeMap::new();
            for p in files_with_ext(&maps, "map")? {
                let grid = load_map(&p, &cfg)?;
                workspaces.insert(stem(&p), Workspace::new(grid, smoother.steering.params));
            }
            let mut tasks: Vec<Scenario> = Vec::new();
            for p in files_with_ext(&scenarios, "scen")? {
                tasks.extend(parse_scenarios(&fs::read_to_string(&p)?, cfg.cell_size)?);
            }
            let report = run_benchmark(&workspaces, &tasks, &algos, &smoother, jobs)?;
            report.write_csv(fs::File::create(&out)?)?;
            if let Some(p) = json {
                report.write_json(fs::File::create(&p)?)?;
            }
            print!("{}", report.to_csv());
            if !report.excluded.is_empty() {
                eprintln!("{} tasks excluded (no geometric path)", report.excluded.len());
            }
        }
        Cmd::Plot { map, result, out } => {
            let grid = load_map(&map, &cfg)?;
            let outcome: PlanOutcome = serde_json::from_str(&fs::read_to_string(result)?)?;
            fs::write(out, plot_outcome(&grid, &outcome))?;
        }
    }
    Ok(())
}

fn plot_outcome(map: &GridMap, out: &PlanOutcome) -> String {
    let extra = out.smoothed.as_ref().map_or(&[][..], |s| &s.extra_states[..]);
    render_svg(map, out.geometric.as_ref(), out.trajectory(), extra)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
