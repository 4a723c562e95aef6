//! `spikelab`: generate, transform, audit and search matroids and spikes stored as JSON.
//!
//! Exit codes: 0 success or every check passed, 1 a check failed or a precondition was
//! violated, 2 usage, I/O or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spikelab::extremal::{
    disjoint_circuits, disjoint_cocircuits_2t, small_structure_audit, sunflower_bound,
    sunflower_extract, BoundName, BoundTable, SetFamily,
};
use spikelab::io::{parse_document, Document};
use spikelab::set::MAX_ELEMENTS;
use spikelab::spike::{
    audit_spike, find_spike_partition, has_property, is_t_spike, make_spike, spike_down, spike_up,
    tip_extension, SpikeVerdict,
};
use spikelab::{AuditReport, ElementSet, Error, NamedMatroid, Status};

const MAX_N_VAR: &str = "SPIKELAB_MAX_N";

#[derive(Parser)]
#[command(
    name = "spikelab",
    version,
    about = "Matroid, echidna and t-spike toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named matroid or a spike as canonical JSON.
    Gen(GenArgs),
    /// Apply a dual, quotient, lift or spike construction to a file.
    Transform(TransformArgs),
    /// Run checks on a matroid or spike file.
    Audit(AuditArgs),
    /// Search for a t-spike arm partition.
    Search(SearchArgs),
    /// Bound arithmetic, sunflowers and disjoint (co)circuits.
    Extremal(ExtremalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// U(t, n): rank from --t, size from --n.
    Uniform,
    /// Wheel of rank --order.
    Wheel,
    /// Whirl of rank --order.
    Whirl,
    /// Direct sum of --order parallel pairs, as a 1-spike.
    OneSpike,
    /// A --t-spike of order --order.
    FreeSpike,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Dual,
    Truncate,
    Elongate,
    SpikeUp,
    SpikeDown,
    TipExtend,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(value_enum)]
    op: Op,
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// Circuit elimination axiom.
    Axioms,
    /// The (t,2t,t,2t)-property.
    Property,
    /// t-spike certification (partition search for plain matroids).
    Spike,
    Lambda,
    /// (2t-1)-connectivity of a spike, or --n-connectivity of a plain matroid.
    Connectivity,
    Classification,
    /// Needs --parts.
    Anemone,
    /// Low-rank structure forced by the (t,2t)-property.
    Small,
}

#[derive(Args)]
struct AuditArgs {
    input: PathBuf,
    /// Defaults to the file's t for spike files.
    #[arg(long)]
    t: Option<usize>,
    /// Comma-separated checks; defaults to axioms, plus spike checks for spike files.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<Check>,
    /// Connectivity order for plain matroids.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Arm concatenation for the anemone check, e.g. "0,1;2,3;4".
    #[arg(long)]
    parts: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    input: PathBuf,
    #[arg(long)]
    t: usize,
    /// Write the matroid with the partition found as a spike file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExtremalArgs {
    #[command(subcommand)]
    action: Extremal,
}

#[derive(Subcommand)]
enum Extremal {
    /// Evaluate f(a, b), g(a, b) or h(a, b) exactly.
    Bound {
        #[arg(value_parser = parse_bound_name)]
        name: BoundName,
        a: u64,
        b: u64,
        /// Needed by h.
        #[arg(long)]
        t: Option<u64>,
    },
    /// Sunflower among the circuits of one size.
    Sunflower {
        input: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        petals: usize,
        #[arg(long)]
        json: bool,
    },
    /// Sunflower in a seeded random family of --size-sets at the f bound.
    RandomSunflower {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        petals: usize,
        #[arg(long, default_value_t = 31)]
        universe: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Pairwise disjoint circuits built from circuits of one size.
    DisjointCircuits {
        input: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Pairwise disjoint 2t-element cocircuits.
    DisjointCocircuits {
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Low-rank structure audit.
    Small {
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        json: bool,
    },
}

fn parse_bound_name(s: &str) -> Result<BoundName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure with its exit code.
#[derive(Debug)]
enum Failure {
    /// Exit 1: a check failed or a precondition was violated.
    Check(String),
    /// Exit 2: bad usage, unreadable or malformed input.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn check_err(e: Error) -> Failure {
    Failure::Check(e.to_string())
}

fn usage_err(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = max_n().and_then(|cap| match cli.command {
        Command::Gen(a) => gen(a, cap),
        Command::Transform(a) => transform(a, cap),
        Command::Audit(a) => audit(a, cap),
        Command::Search(a) => search(a, cap),
        Command::Extremal(a) => extremal(a.action, cap),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check(msg) | Failure::Usage(msg) => eprintln!("spikelab: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

/// Ground-set cap: 31, or lower if the environment asks for it.
fn max_n() -> CliResult<usize> {
    match std::env::var(MAX_N_VAR) {
        Err(_) => Ok(MAX_ELEMENTS),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| n.min(MAX_ELEMENTS))
            .map_err(|_| Failure::Usage(format!("{MAX_N_VAR}={v:?} is not a number"))),
    }
}

fn read_doc(path: &Path, cap: usize) -> CliResult<Document> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, cap).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
    }
}

fn write_doc(out: Option<&Path>, doc: &Document, cap: usize) -> CliResult {
    if doc.matroid.n() > cap {
        return Err(Failure::Check(format!(
            "result has {} elements, above the cap of {cap}",
            doc.matroid.n()
        )));
    }
    write_out(out, &doc.to_json())
}

fn need(v: Option<usize>, flag: &str, kind: &str) -> CliResult<usize> {
    v.ok_or_else(|| Failure::Usage(format!("--kind {kind} needs --{flag}")))
}

fn gen(a: GenArgs, cap: usize) -> CliResult {
    let doc = match a.kind {
        Kind::Uniform => {
            let (rank, size) = (need(a.t, "t", "uniform")?, need(a.n, "n", "uniform")?);
            let m = NamedMatroid::Uniform { rank, size }
                .build()
                .map_err(usage_err)?;
            Document::matroid(m).with_name(format!("U({rank},{size})"))
        }
        Kind::Wheel | Kind::Whirl => {
            let r = need(a.order, "order", "wheel/whirl")?;
            let (named, label) = match a.kind {
                Kind::Wheel => (NamedMatroid::Wheel(r), format!("wheel({r})")),
                _ => (NamedMatroid::Whirl(r), format!("whirl({r})")),
            };
            Document::matroid(named.build().map_err(usage_err)?).with_name(label)
        }
        Kind::OneSpike | Kind::FreeSpike => {
            let t = match a.kind {
                Kind::OneSpike => 1,
                _ => need(a.t, "t", "free-spike")?,
            };
            let r = need(a.order, "order", "spike")?;
            if t == 0 {
                return Err(Failure::Usage("t must be at least 1".into()));
            }
            if r + 1 < 2 * t {
                return Err(Failure::Usage(format!("order < 2t-1: order {r}, t {t}")));
            }
            let cert = make_spike(t, r).map_err(usage_err)?;
            Document::spike(&cert).with_name(format!("{t}-spike of order {r}"))
        }
    };
    if doc.matroid.n() > cap {
        return Err(Failure::Usage(format!(
            "{} elements exceed the cap of {cap}",
            doc.matroid.n()
        )));
    }
    write_doc(a.out.as_deref(), &doc, cap)
}

fn transform(a: TransformArgs, cap: usize) -> CliResult {
    let doc = read_doc(&a.input, cap)?;
    let out = match a.op {
        Op::Dual => Document {
            matroid: doc.matroid.dual(),
            certificate: doc.certificate.map(|mut c| {
                std::mem::swap(
                    &mut c.verified_circuit_unions,
                    &mut c.verified_cocircuit_unions,
                );
                c
            }),
            ..doc
        },
        Op::Truncate => Document::matroid(doc.matroid.truncation().map_err(check_err)?),
        Op::Elongate => Document::matroid(doc.matroid.elongation().map_err(check_err)?),
        Op::SpikeUp | Op::SpikeDown => {
            let (arms, t) = doc.spike_parts().map_err(check_err)?;
            let (_, cert) = match a.op {
                Op::SpikeUp => spike_up(&doc.matroid, arms, t),
                _ => spike_down(&doc.matroid, arms, t),
            }
            .map_err(check_err)?;
            Document::spike(&cert)
        }
        Op::TipExtend => {
            let (arms, t) = doc.spike_parts().map_err(check_err)?;
            let ext = tip_extension(&doc.matroid, arms, t).map_err(check_err)?;
            Document::matroid(ext.matroid).with_name(format!("tip extension, tip {}", ext.tip))
        }
    };
    write_doc(a.out.as_deref(), &out, cap)
}

fn parse_parts(s: &str) -> CliResult<Vec<Vec<usize>>> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Failure::Usage(format!("bad arm index {x:?} in --parts")))
                })
                .collect()
        })
        .collect()
}

fn emit(report: &AuditReport, json: bool) -> CliResult {
    if json {
        let text = serde_json::to_string(report).expect("reports always serialise");
        println!("{text}");
    } else {
        println!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(report.summary()))
    }
}

fn merge(into: &mut AuditReport, label: &str, from: AuditReport) {
    for mut f in from.findings {
        f.check = format!("{label}: {}", f.check);
        into.findings.push(f);
    }
}

fn audit(a: AuditArgs, cap: usize) -> CliResult {
    let doc = read_doc(&a.input, cap)?;
    let m = &doc.matroid;
    let t = a.t.or(doc.t);
    let checks = if !a.checks.is_empty() {
        a.checks.clone()
    } else if doc.is_spike() {
        vec![
            Check::Axioms,
            Check::Spike,
            Check::Lambda,
            Check::Connectivity,
            Check::Classification,
        ]
    } else {
        vec![Check::Axioms]
    };
    let need_t = || t.ok_or_else(|| Failure::Usage("this check needs --t".into()));
    let mut report = AuditReport::new(a.input.display().to_string());

    // spike-structure checks share one audit; arms come from the file or a search
    let mut spike_report: Option<AuditReport> = None;
    let mut spike_structure = |report: &mut AuditReport| -> CliResult<Option<AuditReport>> {
        if let Some(r) = &spike_report {
            return Ok(Some(r.clone()));
        }
        let t = need_t()?;
        let arms = match &doc.arms {
            Some(arms) => arms.clone(),
            None => match find_spike_partition(m, t).map_err(check_err)? {
                Some(arms) => arms,
                None => {
                    report.fail(
                        "spike",
                        format!("NotFound: no {t}-spike partition"),
                        [m.ground()],
                    );
                    return Ok(None);
                }
            },
        };
        let parts = a.parts.as_deref().map(parse_parts).transpose()?;
        let r = match audit_spike(m, &arms, t, parts.as_deref()) {
            Ok(r) => r,
            Err(Error::NotASpike(rejected)) => {
                merge(report, "spike", *rejected);
                return Ok(None);
            }
            Err(e) => return Err(check_err(e)),
        };
        spike_report = Some(r.clone());
        Ok(Some(r))
    };

    for check in checks {
        match check {
            Check::Axioms => merge(&mut report, "axioms", m.validate_circuit_axioms()),
            Check::Property => {
                let t = need_t()?;
                merge(
                    &mut report,
                    "property",
                    has_property(m, t, 2 * t, t, 2 * t).map_err(check_err)?,
                );
            }
            Check::Spike => {
                let t = need_t()?;
                match &doc.arms {
                    Some(arms) => match is_t_spike(m, arms, t).map_err(check_err)? {
                        SpikeVerdict::Certified(c) => report.pass(
                            "spike",
                            format!(
                                "{t}-spike of order {}: {} circuit and {} cocircuit unions verified",
                                c.order, c.verified_circuit_unions, c.verified_cocircuit_unions
                            ),
                        ),
                        SpikeVerdict::Rejected(r) => merge(&mut report, "spike", r),
                    },
                    None => match find_spike_partition(m, t).map_err(check_err)? {
                        Some(arms) => report.pass("spike", format!("partition {:?}", arms.canonical_pairs())),
                        None => report.fail(
                            "spike",
                            format!("NotFound: no {t}-spike partition"),
                            [m.ground()],
                        ),
                    },
                }
            }
            Check::Lambda | Check::Classification | Check::Anemone => {
                let name = match check {
                    Check::Lambda => "lambda-profile",
                    Check::Classification => "circuit-classification",
                    _ => "anemone",
                };
                if let Some(r) = spike_structure(&mut report)? {
                    if let Some(f) = r.finding(name) {
                        report.findings.push(f.clone());
                    }
                }
            }
            Check::Connectivity => {
                if doc.is_spike() || t.is_some() {
                    if let Some(r) = spike_structure(&mut report)? {
                        for f in r.findings.iter().filter(|f| f.check == "connectivity") {
                            report.findings.push(f.clone());
                        }
                    }
                } else {
                    let conn = m.is_n_connected(a.n).map_err(check_err)?;
                    merge(&mut report, &format!("{}-connected", a.n), conn);
                }
            }
            Check::Small => {
                let t = need_t()?;
                merge(
                    &mut report,
                    "small",
                    small_structure_audit(m, t).map_err(check_err)?,
                );
            }
        }
    }
    if report.findings.is_empty() {
        report.skip("none", "no checks ran");
    }
    emit(&report, a.json)
}

fn search(a: SearchArgs, cap: usize) -> CliResult {
    let doc = read_doc(&a.input, cap)?;
    let mut report = AuditReport::new(format!("{}-spike partition of {}", a.t, a.input.display()));
    match find_spike_partition(&doc.matroid, a.t).map_err(check_err)? {
        Some(arms) => {
            report.pass("search", format!("arms {:?}", arms.canonical_pairs()));
            if let Some(out) = &a.out {
                let cert = is_t_spike(&doc.matroid, &arms, a.t)
                    .map_err(check_err)?
                    .certificate()
                    .ok_or_else(|| Failure::Check("found partition failed certification".into()))?;
                let mut spike = Document::spike(&cert);
                spike.name = doc.name.clone();
                write_doc(Some(out), &spike, cap)?;
            }
        }
        None => report.fail(
            "search",
            format!("NotFound: no {}-spike partition", a.t),
            [doc.matroid.ground()],
        ),
    }
    emit(&report, a.json)
}

fn sets_report(subject: String, check: &str, sets: &[ElementSet], detail: String) -> AuditReport {
    let mut report = AuditReport::new(subject);
    report.push(
        check,
        Status::Pass,
        detail,
        sets.iter().map(|s| s.to_vec()).collect(),
    );
    report
}

fn extremal(action: Extremal, cap: usize) -> CliResult {
    match action {
        Extremal::Bound { name, a, b, t } => {
            let v = BoundTable::new(t).eval(name, &[a, b]).map_err(usage_err)?;
            println!("{v}");
            Ok(())
        }
        Extremal::Sunflower {
            input,
            size,
            petals,
            json,
        } => {
            let doc = read_doc(&input, cap)?;
            let m = &doc.matroid;
            let fam = SetFamily::new(
                m.n(),
                m.circuits().iter().copied().filter(|c| c.len() == size),
            )
            .map_err(check_err)?;
            let flower = sunflower_extract(&fam, petals).map_err(check_err)?;
            let report = sets_report(
                format!("sunflower among {}-circuits", size),
                "sunflower",
                flower.petals.members(),
                format!("core {:?}, {} petals", flower.core.to_vec(), petals),
            );
            emit(&report, json)
        }
        Extremal::RandomSunflower {
            size,
            petals,
            universe,
            seed,
            json,
        } => {
            if universe > MAX_ELEMENTS || size == 0 || size > universe {
                return Err(Failure::Usage(format!(
                    "need 1 <= size <= universe <= {MAX_ELEMENTS}"
                )));
            }
            let bound = sunflower_bound(size, petals)
                .filter(|&b| b <= 1 << 16)
                .ok_or_else(|| Failure::Usage("f bound too large to sample".into()))?;
            let available = spikelab::set::binomial(universe, size);
            if (bound as u64) > available {
                return Err(Failure::Usage(format!(
                    "only {available} {size}-sets in a universe of {universe}, need {bound}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut members: Vec<ElementSet> = Vec::with_capacity(bound);
            let mut pool: Vec<usize> = (0..universe).collect();
            while members.len() < bound {
                pool.shuffle(&mut rng);
                let s: ElementSet = pool[..size].iter().collect();
                if !members.contains(&s) {
                    members.push(s);
                }
            }
            let fam = SetFamily::new(universe, members).map_err(check_err)?;
            let flower = sunflower_extract(&fam, petals).map_err(check_err)?;
            let report = sets_report(
                format!("seed {seed}: {bound} random {size}-sets"),
                "sunflower",
                flower.petals.members(),
                format!("core {:?}, {} petals", flower.core.to_vec(), petals),
            );
            emit(&report, json)
        }
        Extremal::DisjointCircuits {
            input,
            size,
            count,
            json,
        } => {
            let doc = read_doc(&input, cap)?;
            let found = disjoint_circuits(&doc.matroid, size, count).map_err(check_err)?;
            let report = sets_report(
                format!("{count} disjoint circuits"),
                "disjoint-circuits",
                &found,
                format!("{} pairwise disjoint circuits", found.len()),
            );
            emit(&report, json)
        }
        Extremal::DisjointCocircuits {
            input,
            t,
            count,
            json,
        } => {
            let doc = read_doc(&input, cap)?;
            let found = disjoint_cocircuits_2t(&doc.matroid, t, count).map_err(check_err)?;
            let report = sets_report(
                format!("{count} disjoint {}-cocircuits", 2 * t),
                "disjoint-cocircuits",
                &found,
                format!("{} pairwise disjoint cocircuits", found.len()),
            );
            emit(&report, json)
        }
        Extremal::Small { input, t, json } => {
            let doc = read_doc(&input, cap)?;
            let report = small_structure_audit(&doc.matroid, t).map_err(check_err)?;
            emit(&report, json)
        }
    }
}
