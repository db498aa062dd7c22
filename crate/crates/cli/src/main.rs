use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tvrt_core::catalog::{load_config, run_compare, run_suite, CatalogEntry, CenterSource};
use tvrt_core::center::{parse_center, verify_center, CenterData};
use tvrt_core::fusion::{parse_category, validate_category, FusionData};
use tvrt_core::rt::{
    eval_link, parse_link, rt_invariant, sl2z_relations, torus_identities, torus_s_t,
};
use tvrt_core::tv::{load_triangulation, tv_state_sum_parallel};
use tvrt_core::{FieldElement, Report};

#[derive(Parser)]
#[command(
    name = "tvrt",
    version,
    about = "Exact Turaev-Viro and Reshetikhin-Turaev invariants"
)]
struct Cli {
    /// Show values as decimal approximations with this many digits.
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Worker threads for state sums and suites.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

/// A Drinfeld center, from a file or built on the spot.
#[derive(Args)]
struct CenterArgs {
    /// Center file.
    center: Option<PathBuf>,
    /// Base category for reading `underlying`/`halfbraid` lines of a center file.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Solve the center of Vec_{Z/N}.
    #[arg(long = "solve-vecG", value_name = "N")]
    solve_vecg: Option<usize>,
    /// Center of modular data as C ⊠ C^rev.
    #[arg(long, value_name = "MODULARFILE")]
    product: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a fusion category file.
    ValidateCat { file: PathBuf },
    /// Build a center, verify it and print it as a center file.
    Center {
        #[command(flatten)]
        source: CenterArgs,
        /// Write the center file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turaev-Viro state sum of a triangulation.
    Tv { tri: PathBuf, cat: PathBuf },
    /// Surgery invariant of a framed link.
    Rt {
        link: PathBuf,
        #[command(flatten)]
        source: CenterArgs,
    },
    /// Colored link invariant F(L) for every coloring of the uncolored components.
    Link {
        link: PathBuf,
        #[command(flatten)]
        source: CenterArgs,
    },
    /// S and T matrices of the torus with the mapping-class-group checks.
    Torus {
        #[command(flatten)]
        source: CenterArgs,
    },
    /// Compare both invariants of one manifold.
    Compare {
        tri: PathBuf,
        link: PathBuf,
        cat: PathBuf,
        #[command(flatten)]
        source: CenterArgs,
    },
    /// Run a comparison suite.
    Suite {
        /// Suite config.
        #[arg(default_value = "catalog/suite.conf")]
        config: PathBuf,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

macro_rules! out {
    ($($t:tt)*) => {
        write!(std::io::stdout(), $($t)*)?
    };
}

macro_rules! outln {
    ($($t:tt)*) => {
        writeln!(std::io::stdout(), $($t)*)?
    };
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_cat(path: &Path) -> Result<FusionData> {
    parse_category(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn show(v: &FieldElement, digits: Option<usize>) -> String {
    match digits {
        Some(d) => v.approx_string(d),
        None => v.to_string(),
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

impl CenterArgs {
    fn build(&self, cat: Option<&FusionData>) -> Result<CenterData> {
        let picked = [
            self.center.is_some(),
            self.solve_vecg.is_some(),
            self.product.is_some(),
        ];
        if picked.iter().filter(|&&b| b).count() != 1 {
            bail!("give exactly one of a center file, --solve-vecG N or --product FILE");
        }
        let base = match &self.base {
            Some(p) => Some(load_cat(p)?),
            None => None,
        };
        let c = if let Some(p) = &self.center {
            parse_center(&read(p)?, base.as_ref().or(cat))
                .with_context(|| format!("loading {}", p.display()))?
        } else {
            let src = match (&self.solve_vecg, &self.product) {
                (Some(n), _) => CenterSource::SolveVecG(*n),
                (_, Some(p)) => CenterSource::Product(p.clone()),
                _ => unreachable!("checked above"),
            };
            src.build(base.as_ref().or(cat))?
        };
        Ok(c)
    }
}

fn print_report(r: &Report) -> Result<()> {
    out!("{r}");
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let digits = cli.digits;
    match cli.cmd {
        Cmd::ValidateCat { file } => {
            let c = load_cat(&file)?;
            let r = validate_category(&c);
            print_report(&r)?;
            Ok(status(r.all_passed()))
        }
        Cmd::Center { source, out } => {
            let c = source.build(None)?;
            let r = verify_center(&c);
            eprint!("{r}");
            match out {
                Some(p) => std::fs::write(&p, c.to_text())
                    .with_context(|| format!("writing {}", p.display()))?,
                None => out!("{}", c.to_text()),
            }
            Ok(status(r.all_passed()))
        }
        Cmd::Tv { tri, cat } => {
            let t = load_triangulation(&read(&tri)?)
                .with_context(|| format!("loading {}", tri.display()))?;
            let c = load_cat(&cat)?;
            let v = tv_state_sum_parallel(&t, &c, cli.parallel);
            outln!("tv={}", show(&v, digits));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rt { link, source } => {
            let s =
                parse_link(&read(&link)?).with_context(|| format!("loading {}", link.display()))?;
            let c = source.build(None)?;
            outln!("rt={}", show(&rt_invariant(&s, &c.modular)?, digits));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Link { link, source } => {
            let s =
                parse_link(&read(&link)?).with_context(|| format!("loading {}", link.display()))?;
            let c = source.build(None)?;
            let m = &c.modular;
            let fixed = s.link.resolved_colors(m)?;
            let free: Vec<usize> = (0..fixed.len()).filter(|&k| fixed[k].is_none()).collect();
            let mut colors: Vec<usize> = fixed.iter().map(|c| c.unwrap_or(0)).collect();
            loop {
                let v = eval_link(&s.link, &colors, m)?;
                let names: Vec<&str> = colors.iter().map(|&x| m.base.label(x)).collect();
                outln!("colors={} value={}", names.join(","), show(&v, digits));
                // odometer over the free components
                let mut k = 0;
                while k < free.len() {
                    colors[free[k]] += 1;
                    if colors[free[k]] < m.rank() {
                        break;
                    }
                    colors[free[k]] = 0;
                    k += 1;
                }
                if k == free.len() {
                    break;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Torus { source } => {
            let c = source.build(None)?;
            let m = &c.modular;
            let (s, t) = torus_s_t(m);
            for (name, mat) in [("S", &s), ("T", &t)] {
                for i in 0..m.rank() {
                    let row: Vec<String> =
                        (0..m.rank()).map(|j| show(mat.get(i, j), digits)).collect();
                    outln!("{name}[{}]=[{}]", m.base.label(i), row.join(", "));
                }
            }
            let mut r = sl2z_relations(m);
            r.extend(torus_identities(m));
            print_report(&r)?;
            Ok(status(r.all_passed()))
        }
        Cmd::Compare {
            tri,
            link,
            cat,
            source,
        } => {
            let entry = CatalogEntry::load(&tri.display().to_string(), &tri, &link, "1")?;
            let c = load_cat(&cat)?;
            let center = source.build(Some(&c))?;
            let row = run_compare(
                &entry,
                &cat.display().to_string(),
                &c,
                &center,
                cli.parallel,
            );
            let tv = row.tv.as_ref().map(|v| show(v, digits)).unwrap_or_default();
            let rt = row.rt.as_ref().map(|v| show(v, digits)).unwrap_or_default();
            outln!("tv={tv}\nrt={rt}\nequal={}", row.equal());
            if let Some(e) = &row.error {
                outln!("error={e}");
            }
            Ok(status(row.equal()))
        }
        Cmd::Suite { config, out } => {
            let cfg = load_config(&config)?;
            let report = run_suite(&cfg, cli.parallel)?;
            let text = report.to_text(digits);
            out!("{text}");
            if let Some(p) = out {
                std::fs::write(&p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(status(report.passed()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
