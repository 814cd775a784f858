//! `octa` — command-line front end for the hyperoctahedron face-module
//! toolkit: enumeration, operator matrices, rank verification, spectral
//! decomposition, design checking, orbit analysis and the full identity
//! suite. Machine output is JSON with exact scalars; nothing is ever rounded.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use octa_core::designs::{design_index_counting, design_index_spectral, BlockFamily};
use octa_core::face::{enumerate_faces, Face, SignedPermutation};
use octa_core::incidence::{incidence_matrix, incidence_rank_formula, IncidenceOperatorKind};
use octa_core::linalg::{BasisId, FaceVector};
use octa_core::orbits::{monotonicity_check, orbit_module_decomposition, orbits, GeneratorSet};
use octa_core::spectral::{component_keys, decompose};
use octa_core::verify::run_suite;
use octa_core::{Error, FieldSpec};

#[derive(Parser)]
#[command(
    name = "octa",
    version,
    about = "Exact face modules, incidence operators and spectral decompositions of the hyperoctahedron"
)]
struct Cli {
    /// Coefficient field: `q` for exact rationals or `fp:P` for a prime field.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Emit JSON where a command defaults to plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized parts of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all k-faces in canonical order, one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
    },
    /// Describe an operator; with --matrix, include its entries.
    Op {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
        /// boundary|coboundary|sigma|nu+|nu-|eps:T|rho:J|bool-boundary|bool-coboundary|bool-nu+
        #[arg(long)]
        kind: String,
        #[arg(long)]
        matrix: bool,
    },
    /// Compare the exact containment-matrix rank with the closed form.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        k: i64,
    },
    /// Spectral components of a sum of faces read from a file (one face per line).
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        faces: PathBuf,
        /// Restrict the report to slice j.
        #[arg(long)]
        j: Option<usize>,
        /// Restrict the report to eigenvalue index i (needs --j).
        #[arg(long)]
        i: Option<usize>,
    },
    /// Test a family of k-faces for being a (t, k, l)-design.
    Design {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        t: usize,
        /// File with one block per line, in face text format.
        #[arg(long)]
        blocks: PathBuf,
    },
    /// Orbit partition and fixed-space dimensions of a generated subgroup.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
        /// File with one signed permutation per line, e.g. `2,-1,3`.
        #[arg(long)]
        gens: PathBuf,
    },
    /// Orbit-count monotonicity report for a generated subgroup.
    Monotone {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gens: PathBuf,
    },
    /// Replay the whole identity suite up to a dimension bound.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Resolved configuration of one invocation: the ambient dimension, the
/// coefficient field (validated against it), the output mode and the seed.
struct RunConfig {
    n: usize,
    field: FieldSpec,
    json: bool,
    seed: u64,
}

impl RunConfig {
    fn resolve(field: &str, json: bool, seed: u64, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::OutOfRange("--n must be at least 1".into()));
        }
        let field = FieldSpec::from_str(field)?;
        field.validate_ambient(n)?;
        Ok(RunConfig { n, field, json, seed })
    }
}

fn require_rationals(field: &FieldSpec, what: &str) -> Result<(), Error> {
    if *field != FieldSpec::Rationals {
        return Err(Error::InvalidField(format!(
            "{what} runs over the rationals; drop --field"
        )));
    }
    Ok(())
}

fn read_lines(path: &Path) -> Result<Vec<String>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn read_faces(path: &Path) -> Result<Vec<Face>, Error> {
    read_lines(path)?.iter().map(|l| l.parse()).collect()
}

fn read_generators(path: &Path, n: usize) -> Result<GeneratorSet, Error> {
    let gens: Vec<SignedPermutation> = read_lines(path)?
        .iter()
        .map(|l| l.parse())
        .collect::<Result<_, _>>()?;
    GeneratorSet::new(n, gens)
}

fn grade_in_range(n: usize, k: i64) -> Result<usize, Error> {
    if k < 0 || k > n as i64 {
        return Err(Error::OutOfRange(format!("grade {k} outside 0..={n}")));
    }
    Ok(k as usize)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let Cli { field, json, seed, command } = cli;
    match command {
        Command::Enumerate { n, k } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            let faces = enumerate_faces(cfg.n, k);
            if cfg.json {
                print_json(&json!({
                    "n": n,
                    "k": k,
                    "count": faces.len(),
                    "faces": faces.iter().map(Face::to_string).collect::<Vec<_>>(),
                }));
            } else {
                for f in &faces {
                    println!("{f}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Op { n, k, kind, matrix } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            let field = cfg.field;
            let kind: IncidenceOperatorKind = kind.parse()?;
            let m = kind.matrix(n, k)?;
            let mut out = json!({
                "n": n,
                "k": k,
                "kind": format!("{kind:?}"),
                "field": field.to_string(),
                "rows": { "k": m.rows().k, "size": m.nrows() },
                "cols": { "k": m.cols().k, "size": m.ncols() },
            });
            if matrix {
                out["matrix"] = json!(m.entry_strings(&field)?);
            }
            print_json(&out);
            Ok(ExitCode::SUCCESS)
        }

        Command::Rank { n, t, k } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            let field = cfg.field;
            let s = incidence_matrix(n, t, k)?;
            let computed = s.rank_over(&field)?;
            let formula = incidence_rank_formula(n, t as usize, k as usize);
            print_json(&json!({
                "n": n,
                "t": t,
                "k": k,
                "field": field.to_string(),
                "formula": formula,
                "computed": computed,
                "match": formula == computed,
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Decompose { n, k, faces, j, i } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            let field = cfg.field;
            let k = grade_in_range(n, k)?;
            let basis = BasisId::faces(n, k as i64);
            let parsed = read_faces(&faces)?;
            let f = FaceVector::from_entries(
                basis,
                parsed
                    .into_iter()
                    .map(|x| (x, octa_core::rat(1))),
            )?;
            if i.is_some() && j.is_none() {
                return Err(Error::OutOfRange("--i needs --j".into()));
            }
            let components = decompose(&f)?;
            let mut sum = FaceVector::zero(basis);
            let mut comp_json = BTreeMap::new();
            for key in component_keys(n, k) {
                let comp = &components[&(key.j, key.i)];
                sum = sum.add(comp)?;
                if j.is_some_and(|j| j != key.j) || i.is_some_and(|i| i != key.i) {
                    continue;
                }
                comp_json.insert(
                    format!("{},{}", key.j, key.i),
                    json!({
                        "norm2": field.scalar_string(&comp.norm2())?,
                        "dim": key.dimension(n),
                    }),
                );
            }
            print_json(&json!({
                "n": n,
                "k": k,
                "field": field.to_string(),
                "components": comp_json,
                "reconstruction_ok": sum == f,
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Design { n, k, t, blocks } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            require_rationals(&cfg.field, "design recognition")?;
            let k = grade_in_range(n, k)?;
            let family = BlockFamily::new(n, k, read_faces(&blocks)?)?;
            let report = design_index_spectral(&family, t)?;
            let counted = design_index_counting(&family, t)?;
            if counted != report.ell || counted.is_some() != report.is_design {
                eprintln!(
                    "internal consistency failure: design recognizers disagree \
                     (counting: {counted:?}, spectral: {:?})",
                    report.ell
                );
                return Ok(ExitCode::from(1));
            }
            print_json(&json!({
                "n": n,
                "k": k,
                "t": t,
                "block_count": family.len(),
                "is_design": report.is_design,
                "ell": report.ell,
                "violating_components": report
                    .violating_components
                    .iter()
                    .map(|(j, i)| format!("{j},{i}"))
                    .collect::<Vec<_>>(),
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Orbits { n, k, gens } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            require_rationals(&cfg.field, "orbit analysis")?;
            let k = grade_in_range(n, k)?;
            let group = read_generators(&gens, n)?;
            let part = orbits(&group, k as i64);
            let dims = orbit_module_decomposition(&group, k)?;
            let dims_json: BTreeMap<String, usize> = dims
                .into_iter()
                .map(|((j, i), d)| (format!("{j},{i}"), d))
                .collect();
            print_json(&json!({
                "n": n,
                "k": k,
                "num_orbits": part.num_orbits(),
                "orbit_sizes": part.orbit_sizes(),
                "fixed_space_dims": dims_json,
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Monotone { n, k, gens } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            require_rationals(&cfg.field, "orbit analysis")?;
            let group = read_generators(&gens, n)?;
            let report = monotonicity_check(&group, k)?;
            print_json(&json!({
                "n": n,
                "k": k,
                "d_k_minus_1": report.d_prev,
                "d_k": report.d_k,
                "inequality_holds": report.inequality_holds,
                "equality": report.equality,
                "top_slice_criterion_zero": report.top_slice_criterion_zero,
                "new_component_criterion_zero": report.new_component_criterion_zero,
                "criterion_matches": report.criterion_matches,
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { n } => {
            let cfg = RunConfig::resolve(&field, json, seed, n)?;
            require_rationals(&cfg.field, "the verification suite")?;
            let report = run_suite(cfg.n, cfg.seed);
            if cfg.json {
                print_json(&json!({
                    "max_n": n,
                    "seed": cfg.seed,
                    "total": report.checks.len(),
                    "failed": report
                        .failures()
                        .iter()
                        .map(|c| json!({
                            "name": c.name,
                            "params": c.params,
                            "detail": c.detail,
                        }))
                        .collect::<Vec<_>>(),
                    "all_pass": report.all_pass(),
                }));
            } else {
                for c in &report.checks {
                    println!("{c}");
                }
                println!(
                    "verify: {} checks up to n={n}, {} failed",
                    report.checks.len(),
                    report.failures().len()
                );
            }
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                for c in report.failures() {
                    eprintln!("failed identity: {c}");
                }
                Ok(ExitCode::from(1))
            }
        }
    }
}
