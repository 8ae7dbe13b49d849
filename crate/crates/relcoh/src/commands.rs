//! Command-line surface: argument parsing and one handler per command.

use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use relcoh_core::genfrac::{
    default_delta_max, gf_is_zero, top_cohomology_fraction, DenominatorSet, FractionContext, GenFraction, ZeroStatus,
};
use relcoh_core::local_cohomology::{cech_profile, top_sequence_exactness};
use relcoh_core::relcm::{
    self, ara_bounds, determinant, determinant_map_injective, find_rsop, grade_search, is_rcm, is_rsop,
    monomial_radical, principal_radical_check, quotient_chain_check, regular_rsop_check, AraBounds, Discovery,
    RsopReport,
};
use relcoh_core::{
    is_regular_sequence, Cd, Error, Ideal, ModulePresentation, Monomial, MonomialIdeal, Polynomial, RegularSequence,
    Ring, SearchConfig,
};
use serde_json::{json, Value};

use crate::report::{Report, Status};
use crate::session::Session;

#[derive(Parser, Debug)]
#[command(
    name = "relcoh",
    version,
    about = "Cohomological dimension, grade, arithmetic rank and relative Cohen-Macaulay checks for R/c"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Session file to load.
    #[arg(short = 'f', long = "file")]
    pub file: PathBuf,
    /// Name of the ideal `a`.
    #[arg(long = "a", default_value = "a")]
    pub a: String,
    /// Name of the ideal `c` with `M = R/c`; defaults to `c` if declared, else zero.
    #[arg(long = "c")]
    pub c: Option<String>,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "delta-max")]
    pub delta_max: Option<u32>,
    /// Largest multiplier degree in combination searches.
    #[arg(long = "degree-bound")]
    pub degree_bound: Option<u32>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct SeqArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "s")]
    pub seq: String,
}

#[derive(Args, Debug, Clone)]
pub struct ExactSeqArgs {
    #[command(flatten)]
    pub common: Common,
    /// Monomial generator list; defaults to the generators of `a`.
    #[arg(long)]
    pub seq: Option<String>,
    /// Single 1-based position; defaults to every position.
    #[arg(long)]
    pub index: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct PrincipalArgs {
    #[command(flatten)]
    pub common: Common,
    /// The element `x`, as an expression.
    #[arg(long)]
    pub x: String,
}

#[derive(Args, Debug, Clone)]
pub struct RegularArgs {
    #[command(flatten)]
    pub common: Common,
    /// Additional sequences to test; may be repeated.
    #[arg(long)]
    pub seq: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DetArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "s")]
    pub seq: String,
    #[arg(long, default_value = "A")]
    pub matrix: String,
}

#[derive(Args, Debug, Clone)]
pub struct GfArgs {
    #[command(flatten)]
    pub common: Common,
    /// Denominator sequence.
    #[arg(long, default_value = "s")]
    pub seq: String,
    /// Numerator expression.
    #[arg(long, default_value = "1")]
    pub num: String,
    /// Exponents, comma separated; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<u32>,
    /// Append a trailing 1 to the sequence, giving the top local cohomology class.
    #[arg(long)]
    pub top: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cohomological dimension cd(a, R/c).
    Cd(Common),
    /// grade(a, R/c) with a regular sequence witness.
    Grade(Common),
    /// Arithmetic-rank bounds with a certificate set.
    Ara(Common),
    /// Tests whether a sequence is a relative system of parameters.
    IsRsop(SeqArgs),
    /// Searches for a relative system of parameters.
    FindRsop(Common),
    /// Relative Cohen-Macaulay test.
    IsRcm(Common),
    /// Regular sequence test on R/c, with a zerodivisor witness.
    IsRegularSeq(SeqArgs),
    /// Per-pattern dimensions of H^i_a(R/c) for monomial data.
    CechProfile(Common),
    /// Exactness of the top local cohomology sequence for monomial generators.
    ExactSeq(ExactSeqArgs),
    /// Principal-radical check for an element x when ara = 1.
    PrincipalRadical(PrincipalArgs),
    /// The three equivalent characterizations of relative systems of parameters.
    RsopConditions(SeqArgs),
    /// Compares relative Cohen-Macaulayness with regular relative systems of parameters.
    RegularRsop(RegularArgs),
    /// Walks the quotients by prefixes of a relative system of parameters.
    QuotientChain(SeqArgs),
    /// Injectivity of the determinant map on top local cohomology.
    DetMap(DetArgs),
    /// Zero test for a generalized fraction.
    GfZero(GfArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cd(_) => "cd",
            Command::Grade(_) => "grade",
            Command::Ara(_) => "ara",
            Command::IsRsop(_) => "is-rsop",
            Command::FindRsop(_) => "find-rsop",
            Command::IsRcm(_) => "is-rcm",
            Command::IsRegularSeq(_) => "is-regular-seq",
            Command::CechProfile(_) => "cech-profile",
            Command::ExactSeq(_) => "exact-seq",
            Command::PrincipalRadical(_) => "principal-radical",
            Command::RsopConditions(_) => "rsop-conditions",
            Command::RegularRsop(_) => "regular-rsop",
            Command::QuotientChain(_) => "quotient-chain",
            Command::DetMap(_) => "det-map",
            Command::GfZero(_) => "gf-zero",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Cd(c)
            | Command::Grade(c)
            | Command::Ara(c)
            | Command::FindRsop(c)
            | Command::IsRcm(c)
            | Command::CechProfile(c) => c,
            Command::IsRsop(a) | Command::IsRegularSeq(a) | Command::RsopConditions(a) | Command::QuotientChain(a) => {
                &a.common
            }
            Command::ExactSeq(a) => &a.common,
            Command::PrincipalRadical(a) => &a.common,
            Command::RegularRsop(a) => &a.common,
            Command::DetMap(a) => &a.common,
            Command::GfZero(a) => &a.common,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CmdError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Input(String),
}

impl CmdError {
    fn status(&self) -> Status {
        match self {
            CmdError::Core(Error::UnsupportedInput(_)) => Status::Unsupported,
            CmdError::Core(Error::Hypothesis(_)) => Status::Inconclusive,
            _ => Status::Error,
        }
    }
}

type Outcome = Result<(Status, Value), CmdError>;

struct Context {
    session: Session,
    common: Common,
    config: SearchConfig,
}

impl Context {
    fn ring(&self) -> &Ring {
        self.session.ring()
    }

    fn ideal(&self, name: &str) -> Result<Ideal, CmdError> {
        self.session
            .ideal(name)
            .ok_or_else(|| CmdError::Input(format!("no ideal or sequence named '{name}'")))
    }

    fn c(&self) -> Result<Ideal, CmdError> {
        match &self.common.c {
            Some(name) => self.ideal(name),
            None => Ok(self.session.ideal("c").unwrap_or_else(|| Ideal::zero(self.ring()))),
        }
    }

    fn presentation(&self) -> Result<ModulePresentation, CmdError> {
        Ok(ModulePresentation::new(self.ideal(&self.common.a)?, self.c()?)?)
    }

    fn seq(&self, name: &str) -> Result<Vec<Polynomial>, CmdError> {
        self.session
            .elements(name)
            .map(<[Polynomial]>::to_vec)
            .ok_or_else(|| CmdError::Input(format!("no sequence named '{name}'")))
    }

    fn expr(&self, text: &str) -> Result<Polynomial, CmdError> {
        self.session
            .parse_expr(text)
            .map_err(|e| CmdError::Input(format!("expression: {e}")))
    }

    fn poly(&self, p: &Polynomial) -> Value {
        Value::String(self.ring().format(p))
    }

    fn polys(&self, ps: &[Polynomial]) -> Value {
        Value::Array(ps.iter().map(|p| self.poly(p)).collect())
    }

    fn monomials(&self, ms: &[Monomial]) -> Value {
        Value::Array(
            ms.iter()
                .map(|m| Value::String(self.ring().format_monomial(m)))
                .collect(),
        )
    }
}

fn cd_json(c: Cd) -> Value {
    match c {
        Cd::Finite(v) => json!(v),
        Cd::NegInfinity => json!("-inf"),
    }
}

fn regular_json(r: &RegularSequence) -> Value {
    match r {
        RegularSequence::Regular => json!("regular"),
        RegularSequence::FailsAt(i) => json!({ "fails_at": i }),
        RegularSequence::ImproperQuotient => json!("improper-quotient"),
    }
}

fn ara_json(cx: &Context, b: &AraBounds) -> Value {
    let cert = b.certificate.as_ref().map(|c| {
        json!({
            "set": cx.polys(&c.set),
            "found_by": match c.found_by {
                Discovery::Subset => "subset",
                Discovery::Combination => "combination",
                Discovery::Sampling => "sampling",
            },
        })
    });
    json!({
        "lower": b.lower,
        "lower_is_cd": b.lower_is_cd,
        "upper": b.upper,
        "exact": b.exact(),
        "certificate": cert,
        "candidates_checked": b.candidates_checked,
        "exhausted": b.exhausted,
    })
}

fn rsop_json(cx: &Context, r: &RsopReport) -> Value {
    json!({
        "verdict": r.verdict,
        "sequence": cx.polys(&r.sequence),
        "cd": r.cd,
        "condition_i": r.condition_i,
        "condition_ii": r.condition_ii,
        "condition_iii": r.condition_iii.as_ref().map(|v| v.iter().map(|&c| cd_json(c)).collect::<Vec<_>>()),
        "certificates": r.certificates,
    })
}

fn cd_command(cx: &Context) -> Outcome {
    let mp = cx.presentation()?;
    let value = relcm::cd(&mp)?;
    let mut out = json!({ "cd": cd_json(value), "degenerate": mp.is_degenerate() });
    if let Cd::Finite(top) = value {
        let ra = monomial_radical(&mp.a().sum(mp.c()))?;
        let rc = monomial_radical(mp.c())?;
        if let (Some(ra), Some(rc)) = (ra, rc) {
            let profile = cech_profile(&ra, &rc, cx.ring().field())?;
            if profile.cd() != value {
                return Err(Error::Inconsistent(format!("cd {value} but profile gives {}", profile.cd())).into());
            }
            let pieces: Vec<Value> = profile
                .pieces()
                .filter(|(i, _, _)| *i == top)
                .map(|(i, p, d)| json!({ "degree": i, "pattern": p.to_string(), "dim": d }))
                .collect();
            out["radical_a"] = cx.monomials(ra.generators());
            out["radical_c"] = cx.monomials(rc.generators());
            out["top_pieces"] = Value::Array(pieces);
        }
    }
    Ok((Status::Ok, out))
}

fn grade_command(cx: &Context) -> Outcome {
    let mp = cx.presentation()?;
    let g = relcm::grade(&mp)?;
    let search = grade_search(&mp, &cx.config)?;
    if search.certified && search.sequence.len() != g {
        return Err(Error::Inconsistent(format!(
            "Koszul grade {g} but the certified search found {}",
            search.sequence.len()
        ))
        .into());
    }
    Ok((
        Status::Ok,
        json!({
            "grade": g,
            "regular_sequence": cx.polys(&search.sequence),
            "search_certified": search.certified,
        }),
    ))
}

fn ara_command(cx: &Context) -> Outcome {
    let b = ara_bounds(&cx.presentation()?, &cx.config)?;
    Ok((Status::Ok, ara_json(cx, &b)))
}

fn rsop_or_rejection(cx: &Context, seq: &[Polynomial], mp: &ModulePresentation) -> Result<Value, CmdError> {
    match is_rsop(seq, mp) {
        Ok(r) => Ok(rsop_json(cx, &r)),
        Err(e @ (Error::WrongLength { .. } | Error::NotInIdeal { .. })) => Ok(json!({
            "verdict": false,
            "sequence": cx.polys(seq),
            "reason": e.to_string(),
        })),
        Err(e) => Err(e.into()),
    }
}

fn is_rsop_command(cx: &Context, seq: &str) -> Outcome {
    let mp = cx.presentation()?;
    Ok((Status::Ok, rsop_or_rejection(cx, &cx.seq(seq)?, &mp)?))
}

fn find_rsop_command(cx: &Context) -> Outcome {
    let mp = cx.presentation()?;
    match find_rsop(&mp, &cx.config)? {
        Some(s) => Ok((Status::Ok, json!({ "found": true, "sequence": cx.polys(&s) }))),
        None => Ok((
            Status::Inconclusive,
            json!({ "found": false, "note": "search exhausted its budget; this is not a proof of nonexistence" }),
        )),
    }
}

fn is_rcm_command(cx: &Context) -> Outcome {
    let r = is_rcm(&cx.presentation()?, &cx.config)?;
    Ok((
        Status::Ok,
        json!({
            "grade": r.grade,
            "cd": cd_json(r.cd),
            "is_rcm": r.is_rcm,
            "ara": ara_json(cx, &r.ara),
            "rsop": r.rsop.as_ref().map(|s| cx.polys(s)),
            "rsop_regular": r.rsop_regular.as_ref().map(regular_json),
        }),
    ))
}

fn is_regular_seq_command(cx: &Context, seq: &str) -> Outcome {
    let seq = cx.seq(seq)?;
    let c = cx.c()?;
    let verdict = is_regular_sequence(&seq, &c)?;
    let witness = match verdict {
        RegularSequence::FailsAt(i) => {
            let prefix = c.with(&seq[..i - 1]);
            let colon = prefix.quotient(&seq[i - 1]);
            colon
                .generators()
                .iter()
                .find(|g| !prefix.contains(g))
                .map(|g| cx.poly(g))
        }
        _ => None,
    };
    Ok((
        Status::Ok,
        json!({
            "verdict": verdict.is_regular(),
            "outcome": regular_json(&verdict),
            "witness": witness,
        }),
    ))
}

fn monomial_data(ideal: &Ideal) -> Result<MonomialIdeal, CmdError> {
    if let Some(m) = MonomialIdeal::from_ideal(ideal) {
        return Ok(m);
    }
    monomial_radical(ideal)?.ok_or_else(|| Error::UnsupportedInput("the ideal has no monomial radical".into()).into())
}

fn cech_profile_command(cx: &Context) -> Outcome {
    let a = monomial_data(&cx.ideal(&cx.common.a)?)?;
    let c = monomial_data(&cx.c()?)?;
    let p = cech_profile(&a, &c, cx.ring().field())?;
    let pieces: Vec<Value> = p
        .pieces()
        .map(|(i, pat, d)| json!({ "degree": i, "pattern": pat.to_string(), "dim": d }))
        .collect();
    let mut degrees: Vec<usize> = p.pieces().map(|(i, _, _)| i).collect();
    degrees.dedup();
    Ok((
        Status::Ok,
        json!({
            "cd": cd_json(p.cd()),
            "radicalized": p.radicalized(),
            "nonzero_degrees": degrees,
            "pieces": pieces,
        }),
    ))
}

fn exact_seq_command(cx: &Context, args: &ExactSeqArgs) -> Outcome {
    let gens = match &args.seq {
        Some(name) => cx.seq(name)?,
        None => cx.ideal(&cx.common.a)?.generators().to_vec(),
    };
    let gens: Vec<Monomial> = gens
        .iter()
        .map(|g| g.as_monomial().cloned())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::UnsupportedInput("generators must be monomials".into()))?;
    let b = MonomialIdeal::from_ideal(&cx.c()?)
        .ok_or_else(|| Error::UnsupportedInput("c must be a monomial ideal".into()))?;
    let indices: Vec<usize> = match args.index {
        Some(i) => vec![i],
        None => (1..=gens.len()).collect(),
    };
    let mut steps = Vec::new();
    let mut exact = true;
    for i in indices {
        let r = top_sequence_exactness(&gens, &b, i)?;
        exact &= r.is_exact();
        steps.push(json!({
            "index": i,
            "exact_middle": r.exact_middle,
            "exact_right": r.exact_right,
            "radicalized": r.radicalized,
            "failures": r.failures.iter().map(|(p, pos)| json!({ "pattern": p.to_string(), "position": pos })).collect::<Vec<_>>(),
        }));
    }
    Ok((Status::Ok, json!({ "exact": exact, "steps": steps })))
}

fn principal_radical_command(cx: &Context, args: &PrincipalArgs) -> Outcome {
    let mp = cx.presentation()?;
    let x = cx.expr(&args.x)?;
    let r = principal_radical_check(&mp, &x, &cx.config)?;
    if !r.consistent() {
        return Err(Error::Inconsistent("H^1 vanishes but the radicals differ".into()).into());
    }
    let status = if r.hypothesis { Status::Ok } else { Status::Inconclusive };
    Ok((
        status,
        json!({
            "x": cx.poly(&x),
            "hypothesis": r.hypothesis,
            "ara": r.ara.as_ref().map(|b| ara_json(cx, b)),
            "h1_vanishes": r.h1_vanishes,
            "radicals_equal": r.radicals_equal,
            "consistent": true,
        }),
    ))
}

fn rsop_conditions_command(cx: &Context, seq: &str) -> Outcome {
    let mp = cx.presentation()?;
    let seq = cx.seq(seq)?;
    let r = match is_rsop(&seq, &mp) {
        Ok(r) => r,
        Err(Error::WrongLength { .. } | Error::NotInIdeal { .. }) => {
            let mut out = rsop_or_rejection(cx, &seq, &mp)?;
            out["graded_surrogate"] = json!(mp.graded_surrogate());
            out["conditions_agree"] = json!(true);
            return Ok((Status::Ok, out));
        }
        Err(e) => return Err(e.into()),
    };
    let agree = [r.condition_ii_holds(), r.condition_iii_holds()]
        .into_iter()
        .flatten()
        .all(|b| b == r.condition_i);
    let mut out = rsop_json(cx, &r);
    out["graded_surrogate"] = json!(mp.graded_surrogate());
    out["conditions_agree"] = json!(agree);
    Ok((Status::Ok, out))
}

fn regular_rsop_command(cx: &Context, args: &RegularArgs) -> Outcome {
    let mp = cx.presentation()?;
    let extra = args.seq.iter().map(|n| cx.seq(n)).collect::<Result<Vec<_>, _>>()?;
    let r = regular_rsop_check(&mp, &cx.config, &extra)?;
    if !r.consistent() {
        return Err(Error::Inconsistent("a regular Rs.o.p exists on a module that is not relative Cohen-Macaulay, or a graded Rs.o.p is not regular".into()).into());
    }
    let trials: Vec<Value> = r
        .trials
        .iter()
        .map(|t| {
            json!({
                "sequence": cx.polys(&t.sequence),
                "is_rsop": t.is_rsop,
                "regular": regular_json(&t.regular),
                "homogeneous": t.homogeneous,
            })
        })
        .collect();
    Ok((
        Status::Ok,
        json!({
            "grade": r.grade,
            "cd": r.cd,
            "is_rcm": r.is_rcm,
            "regular_rsop": r.regular_rsop.as_ref().map(|s| cx.polys(s)),
            "every_rsop_regular": r.every_rsop_regular(),
            "trials": trials,
            "nonregular_outside_graded": r.expected,
            "consistent": true,
        }),
    ))
}

fn quotient_chain_command(cx: &Context, seq: &str) -> Outcome {
    let r = quotient_chain_check(&cx.presentation()?, &cx.seq(seq)?)?;
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "grade": s.grade,
                "cd": cd_json(s.cd),
                "is_rcm": s.is_rcm,
                "tail_is_rsop": s.tail_is_rsop,
            })
        })
        .collect();
    Ok((
        Status::Ok,
        json!({ "holds": r.holds(), "steps": steps, "failures": r.failures }),
    ))
}

fn det_map_command(cx: &Context, args: &DetArgs) -> Outcome {
    let xs = cx.seq(&args.seq)?;
    let m = cx
        .session
        .matrix(&args.matrix)
        .ok_or_else(|| CmdError::Input(format!("no matrix named '{}'", args.matrix)))?
        .to_vec();
    let c = cx.c()?;
    let injective = determinant_map_injective(&xs, &m, &c)?;
    Ok((
        Status::Ok,
        json!({ "injective": injective, "determinant": cx.poly(&determinant(cx.ring(), &m)) }),
    ))
}

fn gf_zero_command(cx: &Context, args: &GfArgs) -> Outcome {
    let seq = cx.seq(&args.seq)?;
    let num = cx.expr(&args.num)?;
    let c = cx.c()?;
    let alphas = if args.alphas.is_empty() {
        vec![1; seq.len()]
    } else {
        args.alphas.clone()
    };
    let f = if args.top {
        top_cohomology_fraction(cx.ring(), &num, &alphas, &seq, &c)?
    } else {
        let ctx = FractionContext::new(cx.ring(), DenominatorSet::new(seq)?, c);
        GenFraction::new(&ctx, num, alphas)?
    };
    let delta_max = cx
        .common
        .delta_max
        .or(cx.session.options().delta_max)
        .unwrap_or_else(|| default_delta_max(&f));
    let (status, zero, delta) = match gf_is_zero(&f, delta_max) {
        ZeroStatus::ZeroCertified { delta } => (Status::Ok, Some(true), Some(delta)),
        ZeroStatus::NonzeroCertified => (Status::Ok, Some(false), None),
        ZeroStatus::NotZeroUpTo { .. } => (Status::Inconclusive, None, None),
    };
    Ok((
        status,
        json!({
            "sequence": cx.polys(f.context().sequence()),
            "alphas": f.alphas(),
            "numerator": cx.poly(f.numerator()),
            "zero": zero,
            "delta": delta,
            "delta_max": delta_max,
        }),
    ))
}

fn dispatch(cx: &Context, command: &Command) -> Outcome {
    match command {
        Command::Cd(_) => cd_command(cx),
        Command::Grade(_) => grade_command(cx),
        Command::Ara(_) => ara_command(cx),
        Command::IsRsop(a) => is_rsop_command(cx, &a.seq),
        Command::FindRsop(_) => find_rsop_command(cx),
        Command::IsRcm(_) => is_rcm_command(cx),
        Command::IsRegularSeq(a) => is_regular_seq_command(cx, &a.seq),
        Command::CechProfile(_) => cech_profile_command(cx),
        Command::ExactSeq(a) => exact_seq_command(cx, a),
        Command::PrincipalRadical(a) => principal_radical_command(cx, a),
        Command::RsopConditions(a) => rsop_conditions_command(cx, &a.seq),
        Command::RegularRsop(a) => regular_rsop_command(cx, a),
        Command::QuotientChain(a) => quotient_chain_command(cx, &a.seq),
        Command::DetMap(a) => det_map_command(cx, a),
        Command::GfZero(a) => gf_zero_command(cx, a),
    }
}

fn search_config(session: &Session, common: &Common) -> SearchConfig {
    let o = session.options();
    let mut cfg = SearchConfig::default();
    cfg.seed = common.seed.or(o.seed).unwrap_or(cfg.seed);
    cfg.degree_bound = common.degree_bound.or(o.degree_bound).unwrap_or(cfg.degree_bound);
    cfg.max_candidates = o.max_candidates.unwrap_or(cfg.max_candidates);
    cfg.samples = o.samples.unwrap_or(cfg.samples);
    cfg
}

/// Runs a command against session text already in memory.
pub fn run_on_text(command: &Command, text: &str) -> Report {
    let name = command.name();
    let common = command.common();
    let session = match Session::parse(text) {
        Ok(s) => s,
        Err(e) => {
            return Report::new(name, common.seed.unwrap_or(0), Status::Error)
                .with_error(format!("{}: {e}", common.file.display()))
        }
    };
    let config = search_config(&session, common);
    let cx = Context {
        session,
        common: common.clone(),
        config,
    };
    let seed = cx.config.seed;
    match dispatch(&cx, command) {
        Ok((status, value)) => Report::new(name, seed, status).with_result(value),
        Err(e) => Report::new(name, seed, e.status()).with_error(e.to_string()),
    }
}

/// Loads the session file and runs the command, honouring `--timeout`.
pub fn run(command: Command) -> Report {
    let name = command.name();
    let common = command.common().clone();
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => {
            return Report::new(name, common.seed.unwrap_or(0), Status::Error)
                .with_error(format!("{}: {e}", common.file.display()))
        }
    };
    let Some(limit) = common.timeout else {
        return run_on_text(&command, &text);
    };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run_on_text(&command, &text));
    });
    match rx.recv_timeout(Duration::from_secs_f64(limit.max(0.0))) {
        Ok(report) => report,
        Err(_) => Report::new(name, common.seed.unwrap_or(0), Status::Timeout)
            .with_error(format!("no result within {limit} s")),
    }
}

/// Entry point shared by the binary and tests; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let json = cli.command.common().json;
    let report = run(cli.command);
    if json {
        println!("{}", report.to_json());
    } else if report.status == Status::Error {
        eprint!("{}", report.to_text());
    } else {
        print!("{}", report.to_text());
    }
    report.status.exit_code()
}
