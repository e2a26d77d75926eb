use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cmaus_core::algebra::{ShapeKind, StructAlgebra};
use cmaus_core::ar::{knit, KnitLimits};
use cmaus_core::claims::{self, ClaimParams, Verdict};
use cmaus_core::cm_auslander::{
    cm_auslander_algebra, eta_transfer, omega_g_certify_inventory, stable_cm_auslander_algebra,
};
use cmaus_core::gorenstein::{gorenstein_profile, knit_gp, omega_orbits, GpInventory};
use cmaus_core::linalg::PrimeField;
use cmaus_core::module::is_projective;
use cmaus_core::spec_file::{named_algebra, SpecFile};
use cmaus_core::Error;

#[derive(Parser)]
#[command(
    name = "cmaus",
    version,
    about = "Gorenstein projectives, CM Auslander algebras and AR theory over F_p"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// prime for the ground field; overrides primes in spec files
    #[arg(short = 'p', long, global = true)]
    prime: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    max_modules: usize,
    #[arg(long, global = true, default_value_t = 60)]
    max_dim: usize,
    /// directory for report files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Clone)]
struct Target {
    /// algebra name: an entry of --spec, or a built-in such as `k[x]/(x^2)`,
    /// `A(2,2)`, `kA3`, `T3(k[x]/(x^2))`
    algebra: String,
    /// spec file defining the algebra
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// knit the AR quiver
    Knit(Target),
    /// Gorenstein profile and GP indecomposables
    Gp(Target),
    /// CM Auslander algebra, or its stable quotient
    Aus {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        stable: bool,
    },
    /// Ω_G certificate
    OmegaG(Target),
    /// Ω-orbits of the non-projective GP indecomposables
    Orbits(Target),
    /// almost split sequences in the subcategory of Γ-modules with GP cokernel
    Eta(Target),
    /// run a claim of the verification suite, or all of them
    Verify {
        claim: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// randomized cases for the property suite
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

struct Outcome {
    name: String,
    report: Value,
    dot: Option<String>,
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => match emit(&cli.opts, &o) {
            Ok(()) => ExitCode::from(o.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CertificationRequired => 1,
                _ => 2,
            })
        }
    }
}

fn field(opts: &Opts) -> cmaus_core::Result<Option<PrimeField>> {
    opts.prime.map(PrimeField::new).transpose()
}

fn limits(opts: &Opts) -> KnitLimits {
    KnitLimits {
        max_modules: opts.max_modules,
        max_dim: opts.max_dim,
    }
}

fn load(opts: &Opts, t: &Target) -> cmaus_core::Result<Arc<StructAlgebra>> {
    let f = field(opts)?;
    match &t.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Unknown(format!("{}: {e}", path.display())))?;
            let ws = SpecFile::parse(&text)?.resolve(f)?;
            ws.algebra(&t.algebra).cloned()
        }
        None => named_algebra(&t.algebra, f.unwrap_or_else(PrimeField::binary)),
    }
}

fn inventory(opts: &Opts, a: &Arc<StructAlgebra>) -> cmaus_core::Result<GpInventory> {
    let profile = gorenstein_profile(a, 2 * a.dim() + 2)?;
    knit_gp(a, &profile, limits(opts))
}

fn finite(ok: bool) -> u8 {
    if ok {
        0
    } else {
        2
    }
}

fn run(cli: &Cli) -> cmaus_core::Result<Outcome> {
    let opts = &cli.opts;
    cmaus_core::seed::set_seed(opts.seed);
    match &cli.cmd {
        Cmd::Knit(t) => {
            let a = load(opts, t)?;
            let arq = knit(&a, limits(opts))?;
            let r = arq.report();
            Ok(Outcome {
                name: "knit".into(),
                text: format!(
                    "{}: {} indecomposables, complete {}, mesh {}",
                    r.algebra,
                    r.modules.len(),
                    r.complete,
                    r.mesh
                ),
                code: finite(arq.complete),
                dot: Some(arq.to_dot()),
                report: json!(r),
            })
        }
        Cmd::Gp(t) => {
            let a = load(opts, t)?;
            let profile = gorenstein_profile(&a, 2 * a.dim() + 2)?;
            let inv = knit_gp(&a, &profile, limits(opts))?;
            let r = inv.report()?;
            Ok(Outcome {
                name: "gp".into(),
                text: format!(
                    "{}: Gorenstein dimension {:?}, {} GP indecomposables, CM-finite {}",
                    r.algebra, profile.gdim, r.count, r.cm_finite
                ),
                code: finite(inv.cm_finite),
                dot: None,
                report: json!({ "profile": profile, "inventory": r }),
            })
        }
        Cmd::Aus { target, stable } => {
            let a = load(opts, target)?;
            let inv = inventory(opts, &a)?;
            if !inv.cm_finite {
                return Err(Error::NotCmFinite);
            }
            let (g, summands) = if *stable {
                let s = stable_cm_auslander_algebra(&inv)?;
                (s.quotient.algebra.clone(), inv.non_projective())
            } else {
                (
                    cm_auslander_algebra(&inv)?.gamma.algebra,
                    (0..inv.len()).collect(),
                )
            };
            let arq = knit(&g, limits(opts))?;
            Ok(Outcome {
                name: if *stable { "aus-stable" } else { "aus" }.into(),
                text: format!(
                    "{}: dimension {}, {} vertices, {} indecomposables (complete {})",
                    g.name(),
                    g.dim(),
                    g.num_vertices(),
                    arq.len(),
                    arq.complete
                ),
                code: 0,
                dot: Some(arq.to_dot()),
                report: json!({
                    "algebra": g.name(),
                    "dim": g.dim(),
                    "vertices": g.num_vertices(),
                    "summands": summands.iter().map(|&i| inv.get(i).dims().to_vec()).collect::<Vec<_>>(),
                    "ar_quiver": arq.report(),
                }),
            })
        }
        Cmd::OmegaG(t) => {
            let a = load(opts, t)?;
            let inv = inventory(opts, &a)?;
            if !inv.cm_finite {
                return Err(Error::NotCmFinite);
            }
            let cert = omega_g_certify_inventory(&inv)?;
            Ok(Outcome {
                name: "omega-g".into(),
                text: format!(
                    "{}: Ω_G {}, generator criterion {:?}",
                    cert.algebra, cert.verdict, cert.generator_criterion
                ),
                code: if cert.verdict { 0 } else { 1 },
                dot: None,
                report: json!(cert),
            })
        }
        Cmd::Orbits(t) => {
            let a = load(opts, t)?;
            let inv = inventory(opts, &a)?;
            if !inv.cm_finite {
                return Err(Error::NotCmFinite);
            }
            match omega_orbits(&inv) {
                Ok(o) => Ok(Outcome {
                    name: "orbits".into(),
                    text: format!(
                        "{}: {} Ω-orbits, lengths {:?}",
                        a.name(),
                        o.orbits.len(),
                        o.length
                    ),
                    code: 0,
                    dot: None,
                    report: json!(o),
                }),
                Err(Error::NonPeriodic(why)) => Ok(Outcome {
                    name: "orbits".into(),
                    text: format!("{}: not Ω-periodic ({why})", a.name()),
                    code: 1,
                    dot: None,
                    report: json!({ "algebra": a.name(), "periodic": false, "reason": why }),
                }),
                Err(e) => Err(e),
            }
        }
        Cmd::Eta(t) => eta(opts, t),
        Cmd::Verify { claim, m, t, cases } => verify(opts, claim, *m, *t, *cases),
    }
}

fn eta(opts: &Opts, t: &Target) -> cmaus_core::Result<Outcome> {
    let a = load(opts, t)?;
    let inv = inventory(opts, &a)?;
    let cma = cm_auslander_algebra(&inv)?;
    let a3 = cmaus_core::algebra::tensor_with_shape(&a, ShapeKind::A3)?;
    let a3_inv = inventory(opts, &a3)?;
    if !a3_inv.cm_finite {
        return Err(Error::CutoffExceeded(format!(
            "GP inventory of {}",
            a3.name()
        )));
    }
    let arq = knit(cma.algebra(), limits(opts))?;
    if !arq.complete {
        return Err(Error::CutoffExceeded(format!(
            "{} did not knit to completion",
            cma.algebra().name()
        )));
    }
    let members: Vec<_> = arq
        .modules()
        .iter()
        .filter(|m| {
            cma.functor(m)
                .map(|f| cmaus_core::cm_auslander::theta_inverse_gprj_membership(&f, &cma))
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    let mut rows = Vec::new();
    let mut all = true;
    for g in members.iter().filter(|g| !is_projective(g)) {
        let f = cma.functor(g)?;
        let e = eta_transfer(&f, &cma, &a3_inv, &members)?;
        all &= e.certified && e.rows_split;
        rows.push(json!({
            "g": g.dims(),
            "f": e.seq.left().dims(),
            "h": e.seq.middle().dims(),
            "certified": e.certified,
            "rows_split": e.rows_split,
        }));
    }
    Ok(Outcome {
        name: "eta".into(),
        text: format!(
            "{}: {} sequences, all certified {all}",
            cma.algebra().name(),
            rows.len()
        ),
        code: if all { 0 } else { 1 },
        dot: None,
        report: json!({ "algebra": cma.algebra().name(), "members": members.len(), "sequences": rows }),
    })
}

fn verify(
    opts: &Opts,
    key: &str,
    m: Option<usize>,
    t: Option<usize>,
    cases: usize,
) -> cmaus_core::Result<Outcome> {
    let params = ClaimParams {
        prime: field(opts)?.unwrap_or_else(PrimeField::binary),
        seed: opts.seed,
        limits: limits(opts),
        mt: match (m, t) {
            (None, None) => None,
            (m, t) => Some((m.unwrap_or(1), t.unwrap_or(2))),
        },
        cases,
    };
    let reports = if key == "all" {
        claims::verify_all(&params)
    } else {
        vec![claims::verify(key, &params)]
    };
    let mut verdict = Verdict::Verified;
    let mut lines = Vec::new();
    let mut values = Vec::new();
    for r in reports {
        let r = r?;
        verdict = verdict.combine(r.verdict);
        lines.push(format!("{:>2} {:<26} {:?}", r.number, r.id, r.verdict));
        values.push(json!(r));
    }
    let report = if values.len() == 1 {
        values.pop().unwrap_or_default()
    } else {
        json!(values)
    };
    Ok(Outcome {
        name: format!("verify-{key}"),
        text: lines.join("\n"),
        code: verdict.exit_code() as u8,
        dot: None,
        report,
    })
}

fn emit(opts: &Opts, o: &Outcome) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(&o.report)?;
    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir)?;
        write(dir, &format!("{}.json", o.name), &json)?;
        if let Some(dot) = &o.dot {
            write(dir, &format!("{}.dot", o.name), dot)?;
        }
    }
    match opts.format {
        Format::Json => println!("{json}"),
        Format::Text => println!("{}", o.text),
        Format::Dot => match &o.dot {
            Some(d) => print!("{d}"),
            None => println!("{}", o.text),
        },
    }
    Ok(())
}

fn write(dir: &Path, name: &str, body: &str) -> std::io::Result<()> {
    std::fs::write(dir.join(name), body)
}
