//! Command-line front end: file formats, run reports and the command dispatcher.

pub mod io;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;
use toric_mirror::arith::{format_qvector, format_zvector};
use toric_mirror::classify::{dedup_gl, enumerate_reflexive_polygons};
use toric_mirror::cones::{
    bullet_cone, cayley_cone, cayley_mirror, dual_height, is_reflexive_gorenstein, GradedCone,
};
use toric_mirror::nef::{
    check_nef_partition, check_q_nef_partition, is_proper, verify_duality, MinkowskiPartition,
};
use toric_mirror::reflexivity::{bullet_dual, circ_dual, classify};
use toric_mirror::toric::{emit_ci_equations, emit_generalized_cy, LaurentSystem};
use toric_mirror::RationalPolytope;

use crate::io::{
    parse_cone, parse_polytope, parse_polytopes, print_cone, print_equations, print_polytope,
    print_polytopes, BlockRecord,
};
use crate::report::{InputRecord, RunReport};

#[derive(Debug, Parser)]
#[command(
    name = "toric-mirror",
    version,
    about = "Exact duality for Q-reflexive polytopes, Q-nef-partitions and Gorenstein cones"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Exit with status 1 when the checked predicate is false.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random coefficients; echoed in the report.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for output files; nothing is written without it.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reflexivity flags of a polytope, with witnesses.
    Check { file: PathBuf },
    /// Polar dual `P*`.
    Dual { file: PathBuf },
    /// `P° = [P]*`.
    Circ { file: PathBuf },
    /// `P• = [P*]`.
    Bullet { file: PathBuf },
    /// Nef and Q-nef partition checks.
    NefCheck {
        #[arg(long, num_args = 1.., required = true)]
        parts: Vec<PathBuf>,
    },
    /// Dual Q-nef-partition and its duality certificate.
    NefDual {
        #[arg(long, num_args = 1.., required = true)]
        parts: Vec<PathBuf>,
    },
    /// Cayley cone of the parts and its mirror cone.
    Cayley {
        #[arg(long, num_args = 1.., required = true)]
        parts: Vec<PathBuf>,
    },
    /// Gorenstein data of a cone.
    ConeCheck { file: PathBuf },
    /// `σ•` of an almost reflexive Gorenstein cone.
    BulletCone { file: PathBuf },
    /// Complete intersection equations of a Q-nef-partition.
    EmitCi {
        #[arg(long, num_args = 1.., required = true)]
        parts: Vec<PathBuf>,
    },
    /// Generalized Calabi-Yau equation of an almost reflexive Gorenstein cone.
    EmitGcy { file: PathBuf },
    /// Reflexive polygons with vertices in `[-B, B]^2`, up to unimodular equivalence.
    #[command(name = "enumerate-2d")]
    Enumerate2d {
        #[arg(long)]
        bound: i64,
    },
    /// Groups lattice polytopes by unimodular equivalence.
    Dedup {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Dual { .. } => "dual",
            Command::Circ { .. } => "circ",
            Command::Bullet { .. } => "bullet",
            Command::NefCheck { .. } => "nef-check",
            Command::NefDual { .. } => "nef-dual",
            Command::Cayley { .. } => "cayley",
            Command::ConeCheck { .. } => "cone-check",
            Command::BulletCone { .. } => "bullet-cone",
            Command::EmitCi { .. } => "emit-ci",
            Command::EmitGcy { .. } => "emit-gcy",
            Command::Enumerate2d { .. } => "enumerate-2d",
            Command::Dedup { .. } => "dedup",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: toric_mirror::Error,
    },
    #[error(transparent)]
    Core(#[from] toric_mirror::Error),
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Context {
    report: RunReport,
    out_dir: Option<PathBuf>,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let shown = path.display().to_string();
        let bytes = fs::read(path).map_err(|e| CliError::Read {
            path: shown.clone(),
            message: e.to_string(),
        })?;
        self.report.inputs.push(InputRecord::new(&shown, &bytes));
        String::from_utf8(bytes).map_err(|e| CliError::Read {
            path: shown,
            message: e.to_string(),
        })
    }

    fn polytope(&mut self, path: &Path) -> Result<RationalPolytope, CliError> {
        let text = self.read(path)?;
        let parsed = parse_polytope(&text).map_err(|source| CliError::Input {
            path: path.display().to_string(),
            source,
        })?;
        for row in &parsed.dropped {
            self.report.warnings.push(format!(
                "{}: dropped redundant row {}",
                path.display(),
                format_qvector(row)
            ));
        }
        Ok(parsed.polytope)
    }

    fn partition(&mut self, paths: &[PathBuf]) -> Result<MinkowskiPartition, CliError> {
        let parts = paths
            .iter()
            .map(|p| self.polytope(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MinkowskiPartition::new(parts)?)
    }

    fn cone(&mut self, path: &Path) -> Result<GradedCone, CliError> {
        let text = self.read(path)?;
        let cone = parse_cone(&text).map_err(|source| CliError::Input {
            path: path.display().to_string(),
            source,
        })?;
        Ok(GradedCone::new(cone))
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let Some(dir) = &self.out_dir else {
            return Ok(());
        };
        let path = dir.join(name);
        let shown = path.display().to_string();
        fs::create_dir_all(dir)
            .and_then(|_| fs::write(&path, contents))
            .map_err(|e| CliError::Write {
                path: shown.clone(),
                message: e.to_string(),
            })?;
        self.report.outputs.push(shown);
        Ok(())
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into())
}

fn polytope_value(p: &RationalPolytope) -> Value {
    json!(BlockRecord::of_polytope(p))
}

fn optional_z(v: Option<&toric_mirror::ZVector>) -> Value {
    v.map_or(Value::Null, |v| json!(format_zvector(v)))
}

fn cone_value(c: &GradedCone) -> Value {
    json!({
        "cone": BlockRecord::of_cone(&c.cone),
        "height": optional_z(c.height.as_ref()),
        "reflexive_gorenstein_index": is_reflexive_gorenstein(c),
        "dual_height": optional_z(dual_height(c).as_ref()),
        "almost_reflexive_index": c.index,
        "interior_height_point": optional_z(c.interior_height_point.as_ref()),
    })
}

fn system_value(sys: &LaurentSystem) -> Value {
    json!({
        "equations": sys.equations.len(),
        "terms": sys.terms().count(),
        "terms_per_equation": sys.equations.iter().map(|e| e.terms.len()).collect::<Vec<_>>(),
        "degree_consistent": sys.equations.iter().all(|e| e.degree_consistent),
        "nonnegative_exponents": sys.all_exponents_nonnegative(),
        "provenance": sys.provenance,
        "text": print_equations(sys),
    })
}

/// Runs one command; `Ok(false)` means the checked predicate is false.
fn execute(cmd: &Command, ctx: &mut Context, seed: Option<u64>) -> Result<bool, CliError> {
    let (results, holds) = match cmd {
        Command::Check { file } => {
            let p = ctx.polytope(file)?;
            let r = classify(&p);
            let holds = r.all_true();
            (
                json!({
                    "polytope": polytope_value(&p),
                    "flags": {
                        "is_lattice": r.is_lattice,
                        "zero_interior": r.zero_interior,
                        "is_canonical_fano": r.is_canonical_fano,
                        "is_reflexive": r.is_reflexive,
                        "is_q_reflexive": r.is_q_reflexive,
                        "is_almost_reflexive": r.is_almost_reflexive,
                    },
                    "witnesses": r.witnesses.iter().map(|(k, w)| json!({"flag": k, "witness": w.to_string()})).collect::<Vec<_>>(),
                }),
                holds,
            )
        }
        Command::Dual { file } | Command::Circ { file } | Command::Bullet { file } => {
            let p = ctx.polytope(file)?;
            let (q, suffix) = match cmd {
                Command::Dual { .. } => (p.polar_dual()?, "dual"),
                Command::Circ { .. } => (circ_dual(&p)?, "circ"),
                _ => (bullet_dual(&p)?, "bullet"),
            };
            ctx.write(
                &format!("{}.{suffix}.poly", stem(file)),
                &print_polytope(&q),
            )?;
            (
                json!({ "input": polytope_value(&p), suffix: polytope_value(&q) }),
                true,
            )
        }
        Command::NefCheck { parts } => {
            let part = ctx.partition(parts)?;
            let nef = check_nef_partition(&part);
            let q_nef = check_q_nef_partition(&part);
            let holds = q_nef.is_ok();
            (
                json!({
                    "total": polytope_value(part.total()),
                    "is_nef_partition": nef.is_ok(),
                    "nef_witness": nef.err().map(|w| w.to_string()),
                    "is_q_nef_partition": q_nef.is_ok(),
                    "q_nef_witness": q_nef.err().map(|w| w.to_string()),
                    "is_proper": is_proper(&part),
                }),
                holds,
            )
        }
        Command::NefDual { parts } => {
            let part = ctx.partition(parts)?;
            let cert = verify_duality(&part)?;
            for (i, p) in cert.dual_parts.iter().enumerate() {
                ctx.write(&format!("nabla_{}.poly", i + 1), &print_polytope(p))?;
            }
            let identities: Vec<Value> = cert
                .identities
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "passed": r.passed,
                        "witness": r.witness.as_ref().map(|(l, r)| format!("{l} != {r}")),
                    })
                })
                .collect();
            let certificate = json!({ "identities": identities, "all_passed": cert.all_passed() });
            ctx.write("certificate.json", &format!("{:#}\n", certificate))?;
            let dual_partition = MinkowskiPartition::new(cert.dual_parts.clone())?;
            (
                json!({
                    "dual_parts": cert.dual_parts.iter().map(polytope_value).collect::<Vec<_>>(),
                    "dual_is_proper": is_proper(&dual_partition),
                    "certificate": certificate,
                }),
                cert.all_passed(),
            )
        }
        Command::Cayley { parts } => {
            let part = ctx.partition(parts)?;
            let c = cayley_cone(part.parts())?.with_index();
            ctx.write("cayley.cone", &print_cone(&c.cone))?;
            let mirror = cayley_mirror(part.parts())?;
            if let Some(m) = &mirror {
                ctx.write("mirror.cone", &print_cone(&m.cone))?;
            }
            let holds = c.index == Some(part.len());
            (
                json!({
                    "parts": part.len(),
                    "cayley": cone_value(&c),
                    "mirror": mirror.as_ref().map(cone_value),
                }),
                holds,
            )
        }
        Command::ConeCheck { file } => {
            let c = ctx.cone(file)?.with_index();
            let holds = c.index.is_some();
            (cone_value(&c), holds)
        }
        Command::BulletCone { file } => {
            let c = ctx.cone(file)?;
            let b = bullet_cone(&c)?;
            ctx.write(&format!("{}.bullet.cone", stem(file)), &print_cone(&b.cone))?;
            (
                json!({ "input": cone_value(&c.with_index()), "bullet": cone_value(&b) }),
                true,
            )
        }
        Command::EmitCi { parts } => {
            let part = ctx.partition(parts)?;
            let mut sys = emit_ci_equations(&part)?;
            if let Some(seed) = seed {
                sys = sys.with_random_coefficients(seed);
            }
            ctx.report.warnings.extend(sys.warnings.iter().cloned());
            ctx.write("equations.txt", &print_equations(&sys))?;
            (system_value(&sys), true)
        }
        Command::EmitGcy { file } => {
            let c = ctx.cone(file)?;
            let mut sys = emit_generalized_cy(&c)?;
            if let Some(seed) = seed {
                sys = sys.with_random_coefficients(seed);
            }
            ctx.write("equations.txt", &print_equations(&sys))?;
            (system_value(&sys), true)
        }
        Command::Enumerate2d { bound } => {
            if *bound < 1 {
                return Err(CliError::Core(toric_mirror::Error::EmptyInput));
            }
            let polygons = enumerate_reflexive_polygons(*bound);
            let classes = dedup_gl(&polygons)?;
            let reps: Vec<RationalPolytope> = classes.iter().map(|(p, _)| p.clone()).collect();
            ctx.write("reflexive_polygons.poly", &print_polytopes(&reps))?;
            (
                json!({
                    "bound": bound,
                    "polygons": polygons.len(),
                    "classes": classes.len(),
                    "representatives": reps.iter().map(polytope_value).collect::<Vec<_>>(),
                }),
                true,
            )
        }
        Command::Dedup { files } => {
            let mut polytopes = Vec::new();
            let mut labels = Vec::new();
            for file in files {
                let text = ctx.read(file)?;
                let parsed = parse_polytopes(&text).map_err(|source| CliError::Input {
                    path: file.display().to_string(),
                    source,
                })?;
                for (k, p) in parsed.into_iter().enumerate() {
                    labels.push(format!("{}#{}", file.display(), k + 1));
                    polytopes.push(p.polytope);
                }
            }
            let classes = dedup_gl(&polytopes)?;
            let reps: Vec<RationalPolytope> = classes.iter().map(|(p, _)| p.clone()).collect();
            ctx.write("classes.poly", &print_polytopes(&reps))?;
            (
                json!({
                    "inputs": polytopes.len(),
                    "classes": classes.len(),
                    "members": classes.iter().map(|(p, m)| json!({
                        "representative": polytope_value(p),
                        "members": m.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }),
                true,
            )
        }
    };
    ctx.report.results = results;
    Ok(holds)
}

/// Parses `argv` (program name first) and runs the command.
///
/// Exit status 0 on success, 1 when `--strict` is set and the predicate is false, 2 on usage or
/// input errors.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let mut ctx = Context {
        report: RunReport::new(cli.command.name(), cli.seed),
        out_dir: cli.out_dir.clone(),
    };
    let result = execute(&cli.command, &mut ctx, cli.seed);
    let mut report = ctx.report;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    match result {
        Ok(holds) => {
            let stdout = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            let code = if cli.strict && !holds { 1 } else { 0 };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
