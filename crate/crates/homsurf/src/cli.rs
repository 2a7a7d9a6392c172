//! Command-line front end: parse connection specs (from files or catalog
//! ids), run each solver, and emit deterministic JSON on stdout. Human
//! diagnostics go to stderr; exit codes are 0 (ok), 1 (verification
//! failure), 2 (malformed input), 3 (domain error).

use crate::catalog::{verify_entry, Catalog, CatalogError, VerifyOptions};
use crate::connection::{
    christoffel_at, curvature_at, perturb, symmetrize, torsion, ChristoffelSpec, Coeff,
    ConnectionError, ParamMap, TorsionVector,
};
use crate::expr::{ExprError, SamplePoints, ZeroTest, DEFAULT_SEED, DEFAULT_TOL};
use crate::killing::{
    killing_basis_checked, killing_dimension_at, standard_dictionary, KillingError,
};
use crate::liealg::{
    algebra_from_json, classify_with_details, structure_constants, LieAlgError,
};
use crate::rat::{parse_rat, rat_to_string, Rat};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;

/// Environment variable overriding the catalog data file.
pub const CATALOG_ENV: &str = "HOMSURF_CATALOG";

#[derive(Debug, Parser)]
#[command(
    name = "homsurf",
    about = "Torsion decomposition, affine Killing vector fields, and symmetry algebras of homogeneous surface connections",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON document to a file instead of stdout
    #[arg(long, value_name = "FILE", global = true)]
    pub output: Option<PathBuf>,
}

/// Spec source: a JSON document or a catalog family.
#[derive(Debug, Clone, Args)]
pub struct SpecInput {
    /// Connection spec JSON file
    #[arg(long, value_name = "FILE", conflicts_with = "id")]
    pub spec: Option<PathBuf>,
    /// Catalog family id (e.g. A.M6.1)
    #[arg(long, value_name = "ID")]
    pub id: Option<String>,
    /// Family parameter binding name=p/q (repeatable)
    #[arg(long = "param", value_name = "NAME=P/Q")]
    pub params: Vec<String>,
    /// Torsion slot T1 of the catalog constructor
    #[arg(long, value_name = "P/Q", default_value = "0", allow_hyphen_values = true)]
    pub t1: String,
    /// Torsion slot T2 of the catalog constructor
    #[arg(long, value_name = "P/Q", default_value = "0", allow_hyphen_values = true)]
    pub t2: String,
    /// Catalog data file (defaults to $HOMSURF_CATALOG, then built-in)
    #[arg(long, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArg {
    /// Base point "x1,x2" with rational coordinates
    #[arg(long, value_name = "X1,X2", default_value = "1,0", allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Sampling seed for residual checks
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Residual tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Torsion components of a spec
    Torsion(SpecInput),
    /// Torsion-free symmetrization of a spec
    Symmetrize(SpecInput),
    /// Add a torsion tensor to a torsion-free spec
    Perturb {
        #[command(flatten)]
        input: SpecInput,
        /// Constant part of T1
        #[arg(long, value_name = "P/Q", default_value = "0", allow_hyphen_values = true)]
        add_t1: String,
        /// 1/x1 part of T1
        #[arg(long, value_name = "P/Q", default_value = "0", allow_hyphen_values = true)]
        add_t1_x: String,
        /// Constant part of T2
        #[arg(long, value_name = "P/Q", default_value = "0", allow_hyphen_values = true)]
        add_t2: String,
        /// 1/x1 part of T2
        #[arg(long, value_name = "P/Q", default_value = "0", allow_hyphen_values = true)]
        add_t2_x: String,
    },
    /// Curvature components at a point
    Curvature {
        #[command(flatten)]
        input: SpecInput,
        #[command(flatten)]
        point: PointArg,
    },
    /// Dimension of the affine Killing algebra (exact jet prolongation)
    KillingDim {
        #[command(flatten)]
        input: SpecInput,
        #[command(flatten)]
        point: PointArg,
    },
    /// Explicit Killing basis through the function dictionary
    KillingBasis {
        #[command(flatten)]
        input: SpecInput,
        #[command(flatten)]
        check: CheckArgs,
        /// Extra rational values fed to the dictionary generator
        #[arg(long = "dict-param", value_name = "P/Q", allow_hyphen_values = true)]
        dict_params: Vec<String>,
    },
    /// Classify a Lie algebra: from a structure-constant file, or from the
    /// Killing algebra of a spec
    Classify {
        /// Structure-constant JSON file {"dim": n, "c": [[i,j,k,"p/q"],...]}
        #[arg(long, value_name = "FILE", conflicts_with_all = ["spec", "id"])]
        sc: Option<PathBuf>,
        #[command(flatten)]
        input: SpecInput,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// List catalog families
    CatalogList {
        /// Catalog data file (defaults to $HOMSURF_CATALOG, then built-in)
        #[arg(long, value_name = "FILE")]
        catalog: Option<PathBuf>,
    },
    /// Verify the catalog claims; exits nonzero on any failed flag
    CatalogCheck {
        /// Catalog data file (defaults to $HOMSURF_CATALOG, then built-in)
        #[arg(long, value_name = "FILE")]
        catalog: Option<PathBuf>,
        /// Restrict to one family id
        #[arg(long, value_name = "ID")]
        id: Option<String>,
        #[command(flatten)]
        check: CheckArgs,
    },
}

/// A failed run: exit code plus message for stderr, optionally with a
/// JSON document that should still be emitted (verification reports).
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub document: Option<Value>,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
            document: None,
        }
    }
}

impl From<ConnectionError> for CliError {
    fn from(e: ConnectionError) -> Self {
        let code = match e {
            ConnectionError::Domain => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
            document: None,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        let code = match e {
            ExprError::Domain(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
            document: None,
        }
    }
}

impl From<KillingError> for CliError {
    fn from(e: KillingError) -> Self {
        let code = match e {
            KillingError::Domain => 3,
            KillingError::Expr(ExprError::Domain(_)) => 3,
            KillingError::DictionaryInsufficient { .. } | KillingError::SolverMismatch { .. } => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
            document: None,
        }
    }
}

impl From<LieAlgError> for CliError {
    fn from(e: LieAlgError) -> Self {
        let code = match e {
            LieAlgError::Expr(ExprError::Domain(_)) => 3,
            LieAlgError::Closure | LieAlgError::DegenerateBasis => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
            document: None,
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Expr(e) => e.into(),
            CatalogError::Connection(e) => e.into(),
            CatalogError::Killing(e) => e.into(),
            CatalogError::LieAlg(e) => e.into(),
            other => CliError {
                code: 2,
                message: other.to_string(),
                document: None,
            },
        }
    }
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, CliError> {
    let from_env = std::env::var_os(CATALOG_ENV).map(PathBuf::from);
    match path.clone().or(from_env) {
        Some(p) => Ok(Catalog::from_path(&p)?),
        None => Ok(Catalog::builtin().clone()),
    }
}

fn parse_param_bindings(pairs: &[String]) -> Result<ParamMap, CliError> {
    let mut map = ParamMap::new();
    for pair in pairs {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("--param `{pair}` is not NAME=P/Q")))?;
        let v = parse_rat(value).map_err(CliError::input)?;
        map.insert(name.trim().to_string(), v);
    }
    Ok(map)
}

/// Resolved spec plus the parameter values relevant to the dictionary.
struct ResolvedSpec {
    spec: ChristoffelSpec,
    dict_params: Vec<Rat>,
}

fn resolve_spec(input: &SpecInput) -> Result<ResolvedSpec, CliError> {
    match (&input.spec, &input.id) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Ok(ResolvedSpec {
                spec: ChristoffelSpec::from_json(&value)?,
                dict_params: Vec::new(),
            })
        }
        (None, Some(id)) => {
            let catalog = load_catalog(&input.catalog)?;
            let entry = catalog.entry(id)?;
            let params = parse_param_bindings(&input.params)?;
            let t = (
                parse_rat(&input.t1).map_err(CliError::input)?,
                parse_rat(&input.t2).map_err(CliError::input)?,
            );
            let inst = entry.instantiate(&params, &t)?;
            let dict_params = entry
                .params
                .iter()
                .filter_map(|name| params.get(name).cloned())
                .collect();
            Ok(ResolvedSpec {
                spec: inst.spec,
                dict_params,
            })
        }
        _ => Err(CliError::input("exactly one of --spec or --id is required")),
    }
}

fn parse_point(text: &str) -> Result<(Rat, Rat), CliError> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| CliError::input(format!("--point `{text}` is not X1,X2")))?;
    Ok((
        parse_rat(a).map_err(CliError::input)?,
        parse_rat(b).map_err(CliError::input)?,
    ))
}

fn coeff_json(c: &Coeff) -> Value {
    Value::String(c.to_text())
}

/// Executes a command, returning the JSON document for stdout.
pub fn execute(command: &Command) -> Result<Value, CliError> {
    match command {
        Command::Torsion(input) => {
            let resolved = resolve_spec(input)?;
            let t = torsion(&resolved.spec);
            Ok(json!({ "T1": coeff_json(&t.t1), "T2": coeff_json(&t.t2) }))
        }
        Command::Symmetrize(input) => {
            let resolved = resolve_spec(input)?;
            Ok(symmetrize(&resolved.spec).to_json())
        }
        Command::Perturb {
            input,
            add_t1,
            add_t1_x,
            add_t2,
            add_t2_x,
        } => {
            let resolved = resolve_spec(input)?;
            let t = TorsionVector::new(
                Coeff::new(
                    parse_rat(add_t1).map_err(CliError::input)?,
                    parse_rat(add_t1_x).map_err(CliError::input)?,
                ),
                Coeff::new(
                    parse_rat(add_t2).map_err(CliError::input)?,
                    parse_rat(add_t2_x).map_err(CliError::input)?,
                ),
            );
            Ok(perturb(&resolved.spec, &t)?.to_json())
        }
        Command::Curvature { input, point } => {
            let resolved = resolve_spec(input)?;
            let p = parse_point(&point.point)?;
            let values = curvature_at(&resolved.spec, &p)?;
            let gammas = christoffel_at(&resolved.spec, &p)?;
            let mut components = serde_json::Map::new();
            for l in 1..=2 {
                for k in 1..=2 {
                    for (i, j) in [(1, 2), (2, 1)] {
                        components.insert(
                            format!("R{l}_{k}{i}{j}"),
                            Value::String(rat_to_string(&values.component(l, k, i, j))),
                        );
                    }
                }
            }
            let mut christoffel = serde_json::Map::new();
            for (idx, key) in crate::connection::INDEX_KEYS.iter().enumerate() {
                christoffel.insert(
                    format!("G{key}"),
                    Value::String(rat_to_string(&gammas.values()[idx])),
                );
            }
            Ok(json!({
                "point": [rat_to_string(&p.0), rat_to_string(&p.1)],
                "christoffel": christoffel,
                "curvature": components,
                "flat_at_point": values.is_zero(),
            }))
        }
        Command::KillingDim { input, point } => {
            let resolved = resolve_spec(input)?;
            let p = parse_point(&point.point)?;
            let dimension = killing_dimension_at(&resolved.spec, p)?;
            Ok(json!({ "dimension": dimension }))
        }
        Command::KillingBasis {
            input,
            check,
            dict_params,
        } => {
            let resolved = resolve_spec(input)?;
            let mut params = resolved.dict_params.clone();
            for text in dict_params {
                params.push(parse_rat(text).map_err(CliError::input)?);
            }
            let dictionary = standard_dictionary(&resolved.spec, &params);
            let zt = ZeroTest {
                sampler: SamplePoints::new(check.seed, 20),
                tol: check.tol,
            };
            let fields = killing_basis_checked(&resolved.spec, &dictionary, &zt)?;
            let rendered: Vec<Value> = fields
                .iter()
                .map(|f| {
                    json!({
                        "v1": crate::expr::to_text(&f.v1),
                        "v2": crate::expr::to_text(&f.v2),
                    })
                })
                .collect();
            Ok(json!({ "dimension": fields.len(), "fields": rendered }))
        }
        Command::Classify { sc, input, check } => {
            let algebra = match sc {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                    let value: Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                    algebra_from_json(&value)?
                }
                None => {
                    let resolved = resolve_spec(input)?;
                    let dictionary = standard_dictionary(&resolved.spec, &resolved.dict_params);
                    let zt = ZeroTest {
                        sampler: SamplePoints::new(check.seed, 20),
                        tol: check.tol,
                    };
                    let fields = killing_basis_checked(&resolved.spec, &dictionary, &zt)?;
                    structure_constants(&fields)?
                }
            };
            let details = classify_with_details(&algebra)?;
            Ok(json!({
                "tag": details.tag.as_str(),
                "signature": [details.signature.0, details.signature.1],
                "dim": details.dim,
                "derived_dim": details.derived_dim,
                "delta": details.delta.as_ref().map(rat_to_string),
            }))
        }
        Command::CatalogList { catalog } => {
            let catalog = load_catalog(catalog)?;
            let list: Vec<Value> = catalog
                .entries()
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "label": e.label,
                        "kind": e.kind,
                        "params": e.params,
                        "branches": e.branches.len(),
                    })
                })
                .collect();
            Ok(json!(list))
        }
        Command::CatalogCheck { catalog, id, check } => {
            let catalog = load_catalog(catalog)?;
            let opts = VerifyOptions {
                seed: check.seed,
                tol: check.tol,
            };
            let entries: Vec<_> = match id {
                Some(id) => vec![catalog.entry(id)?.clone()],
                None => catalog.entries().to_vec(),
            };
            let mut jobs = Vec::new();
            for entry in &entries {
                for params in entry.param_sample_maps()? {
                    jobs.push((entry, params));
                }
            }
            eprintln!("checking {} catalog instances", jobs.len());
            // Fan out to the thread pool; collection preserves id order.
            use rayon::prelude::*;
            let reports = jobs
                .par_iter()
                .map(|(entry, params)| verify_entry(entry, params, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            let failures = reports.iter().filter(|r| !r.all_ok()).count();
            let doc = json!({
                "reports": reports
                    .iter()
                    .map(|r| serde_json::to_value(r).expect("report serializes"))
                    .collect::<Vec<_>>(),
                "failures": failures,
            });
            if failures > 0 {
                return Err(CliError {
                    code: 1,
                    message: format!("{failures} report(s) failed"),
                    document: Some(doc),
                });
            }
            Ok(doc)
        }
    }
}

fn emit(doc: &Value, output: &Option<PathBuf>) -> Result<(), i32> {
    match output {
        None => {
            println!("{doc}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{doc}\n")).map_err(|e| {
            eprintln!("error: {}: {e}", path.display());
            2
        }),
    }
}

/// Entry point used by the binary: prints the document (or writes it to
/// `--output`) and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(doc) => match emit(&doc, &cli.output) {
            Ok(()) => 0,
            Err(code) => code,
        },
        Err(e) => {
            if let Some(doc) = &e.document {
                let _ = emit(doc, &cli.output);
            }
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
