use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use ehrfan::ehrhart::{EhrhartEngine, EhrhartError, Verdict};
use ehrfan::fan::{product_fan, Cone, Fan};
use ehrfan::json::{self, FanSpec, MatroidSpec, PeSpec, PlSpec, PolytopeSpec};
use ehrfan::matroid::{chi_matroid, elements_of};
use ehrfan::pering::{chi_tilde, pe_normal_form, verify_maxmin_relation};
use ehrfan::plfun::{PLFunction, PlError};
use ehrfan::polytope::{chi_via_alternating_sum, polytope_from_pl};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ehrfan", version, about = "Ehrhart polynomials and lattice-point counts on unimodular fans")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Fan construction and validation
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Ehrhart certification and evaluation
    Ehrhart {
        #[command(subcommand)]
        cmd: EhrhartCmd,
    },
    /// Degree of the top power of a class
    Volume {
        #[command(subcommand)]
        cmd: VolumeCmd,
    },
    /// Lattice points of polytopes
    Polytope {
        #[command(subcommand)]
        cmd: PolytopeCmd,
    },
    /// Bergman fans of matroids
    Matroid {
        #[command(subcommand)]
        cmd: MatroidCmd,
    },
    /// Piecewise-exponential elements
    Pe {
        #[command(subcommand)]
        cmd: PeCmd,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    Validate(Inputs),
    Star(Inputs),
    Subdivide(Inputs),
    /// Product of two fans, given by two `--fan` flags
    Product(Inputs),
}

#[derive(Subcommand)]
enum EhrhartCmd {
    Check(Inputs),
    Poly(Inputs),
    Eval(Inputs),
}

#[derive(Subcommand)]
enum VolumeCmd {
    Eval(Inputs),
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Count lattice points of `--polytope`, or of `P_f` for `--fan` and `--pl`
    Count(Inputs),
    Altsum(Inputs),
}

#[derive(Subcommand)]
enum MatroidCmd {
    Bergman(Inputs),
    Chi(Inputs),
}

#[derive(Subcommand)]
enum PeCmd {
    Normalform(Inputs),
    Chi(Inputs),
    VerifyMaxmin(Inputs),
}

#[derive(Args, Default)]
struct Inputs {
    #[arg(long)]
    fan: Vec<PathBuf>,
    #[arg(long)]
    pl: Option<PathBuf>,
    #[arg(long)]
    pl2: Option<PathBuf>,
    #[arg(long)]
    matroid: Option<PathBuf>,
    #[arg(long)]
    polytope: Option<PathBuf>,
    #[arg(long)]
    pe: Option<PathBuf>,
    /// Ray indices, comma separated
    #[arg(long, value_delimiter = ',')]
    cone: Option<Vec<usize>>,
    #[arg(long)]
    interior: bool,
    #[arg(long)]
    acknowledge_choice_dependence: bool,
    #[arg(long, default_value_t = 64)]
    max_shells: usize,
}

enum Failure {
    Domain(ehrfan::Error),
    Malformed(String),
}

impl<E: Into<ehrfan::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        match e {
            ehrfan::Error::Pl(PlError::LengthMismatch { .. }) => Failure::Malformed(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Failure> {
    p.as_deref().ok_or_else(|| Failure::Malformed(format!("missing --{flag}")))
}

impl Inputs {
    fn fans(&self, require_unimodular: bool) -> Result<Vec<Arc<Fan>>, Failure> {
        self.fan.iter().map(|p| Ok(read::<FanSpec>(p)?.build(require_unimodular)?)).collect()
    }

    fn one_fan(&self, require_unimodular: bool) -> Result<Arc<Fan>, Failure> {
        match self.fans(require_unimodular)?.as_slice() {
            [f] => Ok(f.clone()),
            other => Err(Failure::Malformed(format!("expected one --fan, got {}", other.len()))),
        }
    }

    fn pl_on(&self, fan: &Arc<Fan>) -> Result<PLFunction, Failure> {
        Ok(read::<PlSpec>(required(&self.pl, "pl")?)?.build(fan)?)
    }

    fn cone(&self) -> Result<Cone, Failure> {
        self.cone.clone().map(Cone::new).ok_or_else(|| Failure::Malformed("missing --cone".into()))
    }

    fn engine(&self) -> EhrhartEngine {
        EhrhartEngine::new().acknowledge_choice_dependence(self.acknowledge_choice_dependence)
    }
}

fn fan_doc(fan: &Fan) -> Value {
    serde_json::to_value(FanSpec::from_fan(fan)).expect("fan serializes")
}

fn run(group: Group) -> Outcome {
    match group {
        Group::Fan { cmd } => match cmd {
            FanCmd::Validate(i) => {
                let fan = i.one_fan(false)?;
                let balanced = if fan.is_unimodular() && fan.is_pure() { Some(fan.is_balanced()?) } else { None };
                Ok(json!({
                    "ambient_dim": fan.ambient_dim(),
                    "balanced": balanced,
                    "complete": fan.is_complete(),
                    "dim": fan.dim(),
                    "num_cones": fan.num_cones(),
                    "num_rays": fan.num_rays(),
                    "pure": fan.is_pure(),
                    "unimodular": fan.is_unimodular(),
                }))
            }
            FanCmd::Star(i) => {
                let fan = i.one_fan(true)?;
                let star = fan.star(&i.cone()?)?;
                let projection: Vec<Value> = star.projection.row_vectors().iter().map(json::vector).collect();
                Ok(json!({ "fan": fan_doc(&star.fan), "projection": projection, "ray_lift": star.ray_lift }))
            }
            FanCmd::Subdivide(i) => {
                let fan = i.one_fan(true)?;
                let sub = fan.stellar_subdivision(&i.cone()?)?;
                Ok(json!({ "fan": fan_doc(&sub.fan), "new_ray": sub.new_ray }))
            }
            FanCmd::Product(i) => match i.fans(true)?.as_slice() {
                [a, b] => {
                    let prod = product_fan(a, b)?;
                    Ok(json!({ "fan": fan_doc(&prod) }))
                }
                other => Err(Failure::Malformed(format!("expected two --fan, got {}", other.len()))),
            },
        },
        Group::Ehrhart { cmd } => match cmd {
            EhrhartCmd::Check(i) => {
                let fan = i.one_fan(true)?;
                match i.engine().is_ehrhart(&fan) {
                    Verdict::Ehrhart(cert) => Ok(json!({ "ehrhart": true, "polynomial": json::ivpoly(&cert.polynomial) })),
                    Verdict::NotEhrhart(failure) => Err(EhrhartError::NotEhrhart(failure).into()),
                }
            }
            EhrhartCmd::Poly(i) => {
                let fan = i.one_fan(true)?;
                let poly = i.engine().ehrhart_polynomial(&fan)?;
                Ok(json!({ "degree": poly.degree(), "polynomial": json::ivpoly(&poly) }))
            }
            EhrhartCmd::Eval(i) => {
                let fan = i.one_fan(true)?;
                let f = i.pl_on(&fan)?;
                Ok(json!({ "chi": json::int(&i.engine().eval_chi(&f)?) }))
            }
        },
        Group::Volume { cmd: VolumeCmd::Eval(i) } => {
            let fan = i.one_fan(true)?;
            let f = i.pl_on(&fan)?;
            Ok(json!({ "volume": json::int(&i.engine().volume_eval(&f)?) }))
        }
        Group::Polytope { cmd } => match cmd {
            PolytopeCmd::Count(i) => {
                let p = match &i.polytope {
                    Some(path) => read::<PolytopeSpec>(path)?.build()?,
                    None => polytope_from_pl(&i.pl_on(&i.one_fan(true)?)?)?.0,
                };
                Ok(json!({ "count": json::int(&p.count_lattice_points(i.interior)?), "interior": i.interior }))
            }
            PolytopeCmd::Altsum(i) => {
                let fan = i.one_fan(true)?;
                let f = i.pl_on(&fan)?;
                Ok(json!({ "chi": json::int(&chi_via_alternating_sum(&f, i.max_shells)?) }))
            }
        },
        Group::Matroid { cmd } => match cmd {
            MatroidCmd::Bergman(i) => {
                let m = read::<MatroidSpec>(required(&i.matroid, "matroid")?)?.build()?;
                let bf = m.bergman_fan()?;
                let flats: Vec<Vec<usize>> = bf.flats.iter().map(|&f| elements_of(f)).collect();
                Ok(json!({ "fan": fan_doc(&bf.fan), "flats": flats, "rank": m.matroid_rank() }))
            }
            MatroidCmd::Chi(i) => {
                let m = read::<MatroidSpec>(required(&i.matroid, "matroid")?)?.build()?;
                let bf = m.bergman_fan()?;
                let f = i.pl_on(&bf.fan)?;
                Ok(json!({ "chi": json::int(&chi_matroid(&mut i.engine(), &bf, &f)?) }))
            }
        },
        Group::Pe { cmd } => match cmd {
            PeCmd::Normalform(i) => {
                let fan = i.one_fan(true)?;
                let a = read::<PeSpec>(required(&i.pe, "pe")?)?.build(&fan)?;
                Ok(serde_json::to_value(PeSpec::from_pe(&pe_normal_form(&a)?)).expect("PE serializes"))
            }
            PeCmd::Chi(i) => {
                let fan = i.one_fan(true)?;
                let a = read::<PeSpec>(required(&i.pe, "pe")?)?.build(&fan)?;
                Ok(json!({ "chi": json::int(&chi_tilde(&mut i.engine(), &a)?) }))
            }
            PeCmd::VerifyMaxmin(i) => {
                let fan = i.one_fan(true)?;
                let f = i.pl_on(&fan)?;
                let g = read::<PlSpec>(required(&i.pl2, "pl2")?)?.build(&fan)?;
                Ok(json!({ "holds": verify_maxmin_relation(&mut i.engine(), &f, &g)? }))
            }
        },
    }
}

fn emit(doc: &Value) {
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(doc).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("EHRFAN_LOG")).init();
    let cli = Cli::parse();
    match run(cli.group) {
        Ok(doc) => {
            emit(&doc);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            log::info!("{e}");
            emit(&json::error_document(&e));
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            log::info!("{msg}");
            emit(&json!({ "error": { "code": "MALFORMED_INPUT", "message": msg, "witness": null } }));
            ExitCode::from(2)
        }
    }
}
