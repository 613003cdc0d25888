//! `qck`: relations, pairings and verification reports for quantum
//! orthogonal Cayley-Klein groups.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qck_core::json::{self, Meta, PairingJson, Report};
use qck_core::pairing::{build_pairing_table, derive_dual_relations, present_ck_algebra};
use qck_core::relations::{
    bundle_relations, classical_limit_check, contraction_decompose, hopf_checks,
    orthogonality_check, yang_baxter, yang_baxter_specialized, Mode, VerificationReport,
};
use qck_core::{Basis, Error, JSignature, RelationSet, StructureBundle};

#[derive(Parser)]
#[command(
    name = "qck",
    version,
    about = "Quantum orthogonal Cayley-Klein groups: relations, pairings, checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// RTT and orthogonality relations of the generator matrix.
    Relations {
        #[command(flatten)]
        common: Common,
        /// Split each matrix entry by j-monomial (formal mode only).
        #[arg(long)]
        split_j: bool,
        /// Relations among the dual L-functionals instead (symplectic basis).
        #[arg(long)]
        dual: bool,
    },
    /// Duality pairing between L-functionals and generators (symplectic basis).
    Pairings {
        #[command(flatten)]
        common: Common,
    },
    /// Run verification procedures.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        select: Select,
    },
    /// Structural data of the bundle.
    Info {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Matrix size N, from 3 to 6.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, value_enum, default_value = "symplectic")]
    basis: BasisArg,
    /// N−1 comma-separated values from {1, iota, i}; formal j's when omitted.
    #[arg(long)]
    j: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Symplectic,
    Cartesian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Select {
    Ybe,
    Orthogonality,
    Hopf,
    Contraction,
    ClassicalLimit,
    All,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Setup {
    bundle: StructureBundle,
    sig: Option<JSignature>,
    format: Format,
    report: Report,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    if !(3..=6).contains(&c.dim) {
        return Err(Failure::Usage(format!(
            "--dim must be between 3 and 6, got {}",
            c.dim
        )));
    }
    let sig = match &c.j {
        None => None,
        Some(s) => {
            let sig = JSignature::parse(s).map_err(|e| Failure::Usage(e.to_string()))?;
            if sig.rank() != c.dim - 1 {
                return Err(Failure::Usage(format!(
                    "--j needs {} values for --dim {}, got {}",
                    c.dim - 1,
                    c.dim,
                    sig.rank()
                )));
            }
            Some(sig)
        }
    };
    let basis = match c.basis {
        BasisArg::Symplectic => Basis::Symplectic,
        BasisArg::Cartesian => Basis::Cartesian,
    };
    let bundle = StructureBundle::new(c.dim, basis)?;
    let report = Report::new(Meta {
        dim: c.dim,
        basis: basis.name().into(),
        j: sig.as_ref().map_or_else(|| "formal".into(), |s| s.tokens()),
        version: json::SCHEMA_VERSION.into(),
    });
    Ok(Setup {
        bundle,
        sig,
        format: c.format,
        report,
    })
}

fn need_symplectic(b: &StructureBundle, what: &str) -> Result<(), Failure> {
    if b.basis != Basis::Symplectic {
        return Err(Failure::Usage(format!(
            "{what} are computed in the symplectic basis"
        )));
    }
    Ok(())
}

fn relation_text(rs: &RelationSet) -> String {
    if rs.is_empty() {
        return "(no relations)\n".into();
    }
    rs.relations
        .iter()
        .map(|r| format!("{}: {} = 0\n", r.label, r.poly))
        .collect()
}

fn check_text(r: &VerificationReport) -> String {
    let mut out = format!("{}: {}\n", r.name, r.status.name());
    for w in &r.witness {
        out.push_str(&format!("  at {}: {}\n", w.location, w.residual));
    }
    out
}

/// Output text and whether every check passed.
fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Relations {
            common,
            split_j,
            dual,
        } => {
            let mut s = setup(&common)?;
            let mode = match (&s.sig, split_j) {
                (Some(_), true) => {
                    return Err(Failure::Usage(
                        "--split-j applies to formal j's only".into(),
                    ))
                }
                (Some(sig), false) => Mode::Specialized(sig.clone()),
                (None, true) => Mode::SplitByJ,
                (None, false) => Mode::Formal,
            };
            let rs = if dual {
                need_symplectic(&s.bundle, "dual relations")?;
                derive_dual_relations(s.bundle.n, &mode)?
            } else {
                bundle_relations(&s.bundle, &mode)?
            };
            let text = match s.format {
                Format::Json => {
                    s.report.relations = json::relations_to_json(&rs);
                    s.report.to_json()
                }
                Format::Text => relation_text(&rs),
            };
            Ok((text, true))
        }
        Command::Pairings { common } => {
            let mut s = setup(&common)?;
            need_symplectic(&s.bundle, "pairings")?;
            let table = build_pairing_table(s.bundle.n, s.sig.as_ref())?;
            let rows: Vec<_> = table
                .diagonal_split()
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let text = match s.format {
                Format::Json => {
                    s.report.pairings = Some(
                        rows.iter()
                            .map(|((f, g), v)| PairingJson {
                                functional: f.to_string(),
                                generator: g.to_string(),
                                value: json::scalar_to_json(v),
                            })
                            .collect(),
                    );
                    s.report.to_json()
                }
                Format::Text => rows
                    .iter()
                    .map(|((f, g), v)| format!("{f}({g}) = {v}\n"))
                    .collect(),
            };
            Ok((text, true))
        }
        Command::Check { common, select } => {
            let mut s = setup(&common)?;
            let want = |x: Select| select == Select::All || select == x;
            let b = &s.bundle;
            let mut checks = Vec::new();
            let mut matrices = Vec::new();
            let mut text = String::new();
            if want(Select::Ybe) {
                checks.push(match &s.sig {
                    Some(sig) => yang_baxter_specialized(b.r_matrix(), sig)?,
                    None => yang_baxter(b.r_matrix())?,
                });
            }
            if want(Select::Orthogonality) {
                if let Some(sig) = &s.sig {
                    // surfaces NegativeNilpotentPower
                    bundle_relations(b, &Mode::Specialized(sig.clone()))?;
                }
                checks.push(orthogonality_check(b)?);
            }
            if want(Select::Hopf) {
                checks.push(hopf_checks(b));
            }
            let nilpotent = s.sig.as_ref().filter(|sig| sig.has_nilpotent());
            match (want(Select::Contraction), nilpotent) {
                (true, Some(sig)) => {
                    let (tilde, rep) = contraction_decompose(&b.r_v, sig)?;
                    text.push_str("R̃ (nonzero entries, R_v = I + Jv·R̃):\n");
                    for (i, j, x) in tilde.entries().filter(|(_, _, x)| !x.is_zero()) {
                        text.push_str(&format!("  ({},{}) = {x}\n", i + 1, j + 1));
                    }
                    matrices.push(json::matrix_to_json("Rtilde", &tilde));
                    checks.push(rep);
                }
                (true, None) if select == Select::Contraction => {
                    return Err(Failure::Usage(
                        "contraction needs --j with at least one iota".into(),
                    ));
                }
                _ => {}
            }
            if want(Select::ClassicalLimit) {
                checks.push(classical_limit_check(b)?);
            }
            let ok = checks.iter().all(|c| c.passed());
            for c in &checks {
                text.push_str(&check_text(c));
            }
            if s.format == Format::Json {
                s.report.checks = checks.iter().map(json::check_to_json).collect();
                if !matrices.is_empty() {
                    s.report.matrices = Some(matrices);
                }
                text = s.report.to_json();
            }
            Ok((text, ok))
        }
        Command::Info { common } => {
            let mut s = setup(&common)?;
            let b = &s.bundle;
            let mut info = serde_json::Map::new();
            let mut text = format!("N = {}, basis {}, rank {}\n", b.n, b.basis.name(), b.rank());
            let gens: Vec<String> = b
                .generators
                .entries()
                .flat_map(|(_, _, p)| p.symbols().collect::<Vec<_>>())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .map(|g| g.to_string())
                .collect();
            text.push_str(&format!(
                "generators ({}): {}\n",
                gens.len(),
                gens.join(" ")
            ));
            info.insert("generators".into(), gens.into());
            let matrices: Vec<String> = b
                .ring_matrices()
                .iter()
                .map(|(n, _)| n.to_string())
                .collect();
            text.push_str(&format!("structure matrices: {}\n", matrices.join(" ")));
            info.insert("matrices".into(), matrices.into());
            if let (3, Some(sig)) = (b.n, &s.sig) {
                let p = present_ck_algebra(3, sig)?;
                let sections = [
                    ("generators", &p.generators),
                    ("coproduct", &p.coproduct),
                    ("counit", &p.counit),
                    ("antipode", &p.antipode),
                    ("commutators", &p.commutators),
                    ("isomorphism", &p.isomorphism),
                    ("notes", &p.notes),
                ];
                let mut alg = serde_json::Map::new();
                text.push_str(&format!("quantum algebra so_v(3;{}):\n", sig.tokens()));
                for (name, lines) in sections {
                    if lines.is_empty() {
                        continue;
                    }
                    text.push_str(&format!("  {name}:\n"));
                    for l in lines.iter() {
                        text.push_str(&format!("    {l}\n"));
                    }
                    alg.insert(name.into(), lines.clone().into());
                }
                info.insert("algebra".into(), alg.into());
            }
            if s.format == Format::Json {
                s.report.info = Some(info.into());
                text = s.report.to_json();
            }
            Ok((text, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            let mut out = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            // a closed pipe is not an error of ours
            let _ = write!(out, "{text}{nl}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
