//! Command-line front end. Every command maps to one library operation or
//! property suite and prints JSON (default) or a plain table.
//!
//! Exit codes: 0 success, 1 a `verify` suite found failures, 2 invalid input,
//! 3 dimension cap exceeded, 64 unknown command.

use std::ffi::OsString;
use std::fmt::Display;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cyclotomic::CycNum;
use crate::dimensions::{
    ad, delta, delta_content, gd, gd_empirical, padic_dimension, padic_dimension_of, recover_jordan_content,
    sd_at_least,
};
use crate::fusion::{
    cat_dim_mod_p, fpdim, frobenius, frobenius_enhanced, frobenius_type, fuse, mckay_graph, VerObject,
};
use crate::modrep::gf::Matrix;
use crate::modrep::{alt_power_ver, delta_n, fr_plus, jordan_type_of, semisimplify, tensor, CyclicRep, JordanType};
use crate::partitions::{
    conormal_boxes, ell_p, greedy_to_rho, is_p_regular, james_condition, james_envelope, p_core, rho, sasha_bound,
    Partition,
};
use crate::verify::{self, Suite, SuiteReport};
use crate::{cap_from_env, check_prime, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_UNKNOWN_COMMAND: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "verlinde-lab", version, about = "Exact computations in Ver_p and Rep C_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Object of Ver_p: JSON {"p","mult"} or shorthand like "L2+2*L3". Repeatable.
    #[arg(long = "object", global = true)]
    objects: Vec<String>,
    /// Jordan type: JSON {"p","blocks"} or shorthand like "J2+J5". Repeatable.
    #[arg(long = "jordan", global = true)]
    jordans: Vec<String>,
    /// Nilpotent part of a C_p-module: JSON rows, or {"p","nilpotent"}. Repeatable.
    #[arg(long = "matrix", global = true)]
    matrices: Vec<String>,
    /// Power, tensor exponent, sequence length or partition size, depending on the command.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Dimension cap; defaults to VERLINDE_LAB_CAP or 20000.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for randomized verify suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bits of precision for numeric enclosures.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Instance count for randomized verify suites.
    #[arg(long, global = true)]
    instances: Option<u64>,
    /// Coefficients of a series over F_p, lowest degree first: "1,2,1".
    #[arg(long, global = true)]
    series: Option<String>,
    /// δ(V) for recover-content, in the printed form of a cyclotomic number.
    #[arg(long, global = true, allow_hyphen_values = true)]
    d1: Option<String>,
    /// δ(S²V) - δ(∧²V) for recover-content.
    #[arg(long, global = true, allow_hyphen_values = true)]
    d2: Option<String>,
    /// Partition: "3,2,1" or a JSON array.
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Index of ρ_k for `partition rho`.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Residue for conormal boxes.
    #[arg(long, global = true)]
    r: Option<u32>,
    /// Argument of `partition ell`.
    #[arg(long, global = true)]
    a: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tensor product of the given objects.
    Fuse,
    /// Frobenius-Perron dimension.
    Fpdim,
    /// Categorical dimension in F_p.
    DimModP,
    /// Fr(X) in Ver_p ⊠ Ver_p.
    Frobenius,
    /// Fr^en(X), second leg in the enhanced category.
    FrobeniusEn,
    /// The smallest subcategory receiving the second leg of Fr.
    FrobeniusType,
    /// McKay graph of tensoring with X.
    Mckay,
    /// Jordan type of V ⊗ W, by brute force.
    Tensor,
    /// Jordan type of a module.
    Jordan,
    /// Semisimplification of a Jordan type.
    Ssimp,
    /// A^n X in Ver_p.
    AltPower,
    /// Jordan type of Fr_+^{(n)} V.
    FrPlus,
    /// δ(V) of a Jordan type.
    Delta,
    /// Number of non-projective summands of V^{⊗n}.
    DeltaN,
    /// Alternating dimension.
    Ad,
    /// Growth dimension; with --n, the empirical sequence up to n.
    Gd,
    /// Whether k S_n acts faithfully on V^{⊗n}.
    SdAtLeast,
    /// p-adic dimension of an object, or of a series given by --series.
    Padic,
    /// Multiplicities of J_1..J_{p-1} from δ(V) and δ(S²V) - δ(∧²V).
    RecoverContent,
    /// Partition combinatorics.
    #[command(subcommand)]
    Partition(PartitionCommand),
    /// Run a property suite, or `all`.
    Verify { suite: String },
}

#[derive(Subcommand, Debug)]
enum PartitionCommand {
    /// Whether --lambda has no part repeated p or more times.
    Regular,
    /// The p-core of --lambda.
    Core,
    /// ρ_k for --k.
    Rho,
    /// Conormal boxes of residue --r on a p-regular --lambda.
    Conormal,
    /// The chain of cogood additions from --lambda up to ρ_{λ_1}.
    Greedy,
    /// Whether --lambda satisfies James's divisibility condition.
    James,
    /// A partition of the same length containing --lambda and satisfying James's condition.
    Envelope,
    /// Minimal ℓ with --a < p^ℓ.
    Ell,
    /// The faithfulness bound n(p-1)(p^{ℓ_p(n)} - 1) for --n.
    Sasha,
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand => EXIT_UNKNOWN_COMMAND,
                _ => EXIT_INVALID,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_INVALID,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let o = &cli.opts;
    let cap = o.cap.unwrap_or_else(cap_from_env);
    let out = |json: Value, table: String| -> Result<(i32, String)> {
        let text = match o.format {
            Format::Json => serde_json::to_string(&json).expect("values serialize"),
            Format::Table => table,
        };
        Ok((EXIT_OK, text + "\n"))
    };
    let shown = |v: &dyn Display| v.to_string();

    match &cli.command {
        Command::Fuse => {
            let objects = o.objects()?;
            if objects.len() < 2 {
                return Err(Error::InvalidArgument("fuse needs at least two --object".into()));
            }
            let mut acc = objects[0].clone();
            for x in &objects[1..] {
                acc = fuse(&acc, x)?;
            }
            out(json(&acc), shown(&acc))
        }
        Command::Fpdim => {
            let x = o.object()?;
            cyc_output(o, &fpdim(&x), out)
        }
        Command::DimModP => {
            let d = cat_dim_mod_p(&o.object()?);
            out(json(&d), d.to_string())
        }
        Command::Frobenius => {
            let pair = frobenius(&o.object()?);
            out(json(&pair), shown(&pair))
        }
        Command::FrobeniusEn => {
            let pair = frobenius_enhanced(&o.object()?);
            out(json(&pair), shown(&pair))
        }
        Command::FrobeniusType => {
            let t = frobenius_type(&o.object()?);
            out(json(&t), shown(&t))
        }
        Command::Mckay => {
            let g = mckay_graph(&o.object()?)?;
            let table = g.edges.iter().map(|(s, t, w)| format!("L{s} -> L{t} ({w})")).collect::<Vec<_>>().join("\n");
            out(json(&g), table)
        }
        Command::Tensor => {
            let reps = o.reps()?;
            if reps.len() != 2 {
                return Err(Error::InvalidArgument("tensor needs exactly two modules (--jordan or --matrix)".into()));
            }
            let t = jordan_type_of(&tensor(&reps[0], &reps[1], cap)?);
            out(json(&t), shown(&t))
        }
        Command::Jordan => {
            let t = jordan_type_of(&o.rep()?);
            out(json(&t), shown(&t))
        }
        Command::Ssimp => {
            let x = semisimplify(&o.jordan()?);
            out(json(&x), shown(&x))
        }
        Command::AltPower => {
            let x = alt_power_ver(&o.object()?, o.n_required()? as usize, cap)?;
            out(json(&x), shown(&x))
        }
        Command::FrPlus => {
            let j = o.n.unwrap_or(1);
            let j = u32::try_from(j).map_err(|_| Error::InvalidArgument("--n too large".into()))?;
            let t = jordan_type_of(&fr_plus(&o.rep()?, j, cap)?);
            out(json(&t), shown(&t))
        }
        Command::Delta => {
            let t = o.jordan()?;
            let content = delta_content(&t);
            let d = delta(&t);
            match o.precision {
                None => out(json(&d.to_string()), format!("{d}\t{:?}", content.m)),
                Some(_) => cyc_output(o, &d, out),
            }
        }
        Command::DeltaN => {
            let n = u32::try_from(o.n_required()?).map_err(|_| Error::InvalidArgument("--n too large".into()))?;
            let count = delta_n(&o.rep()?, n, cap)?;
            out(json(&count), count.to_string())
        }
        Command::Ad => {
            let a = ad(&o.object()?, cap)?;
            out(json(&a), a.map_or("undefined".into(), |a| a.to_string()))
        }
        Command::Gd => {
            let x = o.object()?;
            match o.n {
                Some(n) => {
                    let n = u32::try_from(n).map_err(|_| Error::InvalidArgument("--n too large".into()))?;
                    let seq = gd_empirical(&x, n);
                    let table = seq.iter().enumerate().map(|(k, v)| format!("{}\t{v:.12}", k + 1)).collect::<Vec<_>>();
                    out(json(&seq), table.join("\n"))
                }
                None => cyc_output(o, &gd(&x), out),
            }
        }
        Command::SdAtLeast => {
            let b = sd_at_least(&o.rep()?, o.n_required()? as usize, cap)?;
            out(json(&b), b.to_string())
        }
        Command::Padic => {
            let d = match &o.series {
                Some(s) => padic_dimension(o.prime()?, &parse_series(s)?)?,
                None => padic_dimension_of(&o.object()?, cap)?,
            };
            let value = d.value();
            let obj = serde_json::json!({"p": d.p, "digits": d.digits, "value": value.to_string()});
            out(obj, format!("{value}\t{:?}", d.digits))
        }
        Command::RecoverContent => {
            let p = o.prime()?;
            let need = |s: Option<&str>, name: &str| -> Result<CycNum> {
                parse_cyc(p, s.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")))?)
            };
            let d1 = need(o.d1.as_deref(), "d1")?;
            let d2 = need(o.d2.as_deref(), "d2")?;
            let c = recover_jordan_content(p, &d1, &d2)?;
            out(json(&c), format!("{:?}", c.m))
        }
        Command::Partition(sub) => partition(o, sub, &out),
        Command::Verify { suite } => {
            let cfg = verify::Config { seed: o.seed, instances: o.instances, primes: o.p.map(|p| vec![p]), cap };
            let reports = if suite == "all" {
                verify::run_all(&cfg)?
            } else {
                vec![verify::run(suite.parse::<Suite>()?, &cfg)?]
            };
            let failed = reports.iter().any(|r| !r.passed());
            let code = if failed { EXIT_FAILURES } else { EXIT_OK };
            let text = match o.format {
                Format::Json if suite == "all" => serde_json::to_string(&reports).expect("reports serialize"),
                Format::Json => serde_json::to_string(&reports[0]).expect("reports serialize"),
                Format::Table => reports.iter().map(suite_table).collect::<Vec<_>>().join("\n"),
            };
            Ok((code, text + "\n"))
        }
    }
}

type Emit<'a> = &'a dyn Fn(Value, String) -> Result<(i32, String)>;

/// A cyclotomic number as its printed form; with `--precision`, also an enclosing interval.
fn cyc_output(o: &Opts, x: &CycNum, out: impl Fn(Value, String) -> Result<(i32, String)>) -> Result<(i32, String)> {
    match o.precision {
        None => out(json(&x.to_string()), x.to_string()),
        Some(bits) => {
            let iv = x.numeric_eval(bits);
            let obj = serde_json::json!({"value": x.to_string(), "lo": iv.lo.to_string(), "hi": iv.hi.to_string()});
            out(obj, format!("{x}\t{iv}"))
        }
    }
}

fn partition(o: &Opts, sub: &PartitionCommand, out: Emit<'_>) -> Result<(i32, String)> {
    let p = o.prime()?;
    let lambda = || -> Result<Partition> {
        let s = o.lambda.as_deref().ok_or_else(|| Error::InvalidArgument("--lambda is required".into()))?;
        Partition::parse(s)
    };
    let shown = |x: &dyn Display| x.to_string();
    match sub {
        PartitionCommand::Regular => {
            let b = is_p_regular(&lambda()?, p);
            out(json(&b), b.to_string())
        }
        PartitionCommand::Core => {
            let c = p_core(&lambda()?, p);
            out(json(&c), shown(&c))
        }
        PartitionCommand::Rho => {
            let k = o.k.ok_or_else(|| Error::InvalidArgument("--k is required".into()))?;
            let r = rho(p, k);
            out(json(&r), shown(&r))
        }
        PartitionCommand::Conormal => {
            let r = o.r.ok_or_else(|| Error::InvalidArgument("--r is required".into()))?;
            let boxes = conormal_boxes(&lambda()?, p, r)?;
            let table = boxes.iter().map(|b| format!("({},{}) residue {}", b.row, b.col, b.residue)).collect::<Vec<_>>();
            out(json(&boxes), table.join("\n"))
        }
        PartitionCommand::Greedy => {
            let chain = greedy_to_rho(&lambda()?, p)?;
            let table = chain.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            out(json(&chain), table)
        }
        PartitionCommand::James => {
            let b = james_condition(&lambda()?, p);
            out(json(&b), b.to_string())
        }
        PartitionCommand::Envelope => {
            let mu = james_envelope(&lambda()?, p)?;
            out(json(&mu), shown(&mu))
        }
        PartitionCommand::Ell => {
            let a = o.a.ok_or_else(|| Error::InvalidArgument("--a is required".into()))?;
            let l = ell_p(p, a);
            out(json(&l), l.to_string())
        }
        PartitionCommand::Sasha => {
            let b = sasha_bound(p, o.n_required()?)?;
            out(json(&b), b.to_string())
        }
    }
}

fn suite_table(r: &SuiteReport) -> String {
    let mut lines = Vec::new();
    for rep in &r.reports {
        let tag = if rep.passed() { "PASS" } else { "FAIL" };
        lines.push(format!("{tag}\t{}\t{}\t{} instances", r.suite, rep.property, rep.instances));
        if let Some(note) = &rep.note {
            lines.push(format!("\tnote: {note}"));
        }
        lines.extend(rep.failures.iter().map(|f| format!("\tfailed: {f}")));
    }
    lines.join("\n")
}

fn json<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn parse_series(s: &str) -> Result<Vec<u32>> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad series coefficient {t:?}"))))
        .collect()
}

fn parse_cyc(p: u32, s: &str) -> Result<CycNum> {
    let s = s.trim();
    let value = if s.starts_with('{') {
        serde_json::from_str::<CycNum>(s).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        // printed numbers may arrive with their JSON quotes
        CycNum::parse(p, s.trim_matches('"'))?
    };
    if value.p() != p {
        return Err(Error::PrimeMismatch(p, value.p()));
    }
    Ok(value)
}

impl Opts {
    /// `--p`, or the characteristic carried by the first JSON input.
    fn prime(&self) -> Result<u32> {
        if let Some(p) = self.p {
            return check_prime(p);
        }
        let json_inputs = self.objects.iter().chain(&self.jordans).chain(&self.matrices);
        for s in json_inputs {
            if let Ok(Value::Object(map)) = serde_json::from_str::<Value>(s) {
                if let Some(p) = map.get("p").and_then(Value::as_u64) {
                    return check_prime(u32::try_from(p).map_err(|_| Error::NotPrime(p))?);
                }
            }
        }
        Err(Error::InvalidArgument("--p is required".into()))
    }

    fn objects(&self) -> Result<Vec<VerObject>> {
        let p = self.prime()?;
        self.objects
            .iter()
            .map(|s| {
                let x = if s.trim_start().starts_with('{') {
                    serde_json::from_str::<VerObject>(s).map_err(|e| Error::Parse(e.to_string()))?
                } else {
                    VerObject::parse(p, s)?
                };
                if x.p() != p {
                    return Err(Error::PrimeMismatch(p, x.p()));
                }
                Ok(x)
            })
            .collect()
    }

    fn object(&self) -> Result<VerObject> {
        let mut all = self.objects()?;
        if all.len() != 1 {
            return Err(Error::InvalidArgument("expected exactly one --object".into()));
        }
        Ok(all.remove(0))
    }

    fn jordans(&self) -> Result<Vec<JordanType>> {
        let p = self.prime()?;
        self.jordans
            .iter()
            .map(|s| {
                let t = if s.trim_start().starts_with('{') {
                    serde_json::from_str::<JordanType>(s).map_err(|e| Error::Parse(e.to_string()))?
                } else {
                    JordanType::parse(p, s)?
                };
                if t.p() != p {
                    return Err(Error::PrimeMismatch(p, t.p()));
                }
                Ok(t)
            })
            .collect()
    }

    fn jordan(&self) -> Result<JordanType> {
        let mut all = self.jordans()?;
        if all.len() != 1 {
            return Err(Error::InvalidArgument("expected exactly one --jordan".into()));
        }
        Ok(all.remove(0))
    }

    /// Modules from `--jordan` (standard realization) followed by `--matrix`.
    fn reps(&self) -> Result<Vec<CyclicRep>> {
        let p = self.prime()?;
        let mut reps: Vec<CyclicRep> =
            self.jordans()?.iter().map(CyclicRep::from_jordan_type).collect::<Result<_>>()?;
        for s in &self.matrices {
            let rep = match serde_json::from_str::<Value>(s).map_err(|e| Error::Parse(e.to_string()))? {
                Value::Object(_) => serde_json::from_str::<CyclicRep>(s).map_err(|e| Error::Parse(e.to_string()))?,
                rows => {
                    let rows: Vec<Vec<i64>> = serde_json::from_value(rows).map_err(|e| Error::Parse(e.to_string()))?;
                    let m = Matrix::from_i64_rows(&crate::modrep::gf::Field::new(p)?, &rows)?;
                    CyclicRep::new(p, &m)?
                }
            };
            if rep.p() != p {
                return Err(Error::PrimeMismatch(p, rep.p()));
            }
            reps.push(rep);
        }
        Ok(reps)
    }

    fn rep(&self) -> Result<CyclicRep> {
        let mut all = self.reps()?;
        if all.len() != 1 {
            return Err(Error::InvalidArgument("expected exactly one module (--jordan or --matrix)".into()));
        }
        Ok(all.remove(0))
    }

    fn n_required(&self) -> Result<u64> {
        self.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))
    }
}
