//! Command-line front end: run configuration, the five subcommands and their
//! CSV/JSON output.

mod verify;

pub use verify::{exponent_horizon, farey_window, orbit_window, verify, Suite, SuiteResult, VerifyReport};

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    loglaw_scan, theoretical_limsup, BlockEndProbe, DeepTracker, LogLawOptions, LogLawProbe, ProbeMarker,
};
use crate::bcz::{orbit_iter, periodic_orbit, Direction, FareyPoint, XValue};
use crate::contfrac::{estimate_exponents, ContinuedFraction};
use crate::excursion::{coprime_pair_count_mobius, detect_excursions, excursion_length_estimate, length_ratio, Mode};
use crate::numerics::{format_rational, format_sig, parse_rational, DEFAULT_MAX_BITS};
use crate::Error;

/// Significant digits of every decimal column.
pub const SIG_DIGITS: usize = 12;

#[derive(Parser, Clone, Debug, PartialEq)]
#[command(name = "bcz", version, about = "Orbits, excursions and log-law probes of the BCZ map")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq)]
pub enum Command {
    /// One period of the orbit of (1/n, 1).
    Periodic {
        #[arg(long)]
        order: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Orbit rows n,k_n,f_n,a_lo,a_hi,deep,block_end.
    Orbit {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value = "forward")]
        direction: Direction,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Running log|f_n|/log n probes against the predicted limsup.
    Loglaw {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
        /// Blocks used for the exponent estimate (K = 2·blocks + 2 partial quotients).
        #[arg(long, default_value_t = 6)]
        blocks: usize,
        #[arg(long, default_value = "forward")]
        direction: Direction,
        #[arg(long, default_value_t = 0.1)]
        tolerance: f64,
        /// First |n| of the running-max window, default ⌈√N⌉.
        #[arg(long)]
        tail_start: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Property suites; exit 0 iff all pass.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Every excursion inside the first N steps.
    Excursions {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Clone, Debug, PartialEq)]
#[command(group(ArgGroup::new("source").required(true).args(["point", "cf", "eplus"])))]
pub struct PointArgs {
    /// Exact point "a,b", e.g. "1/3,1".
    #[arg(long)]
    pub point: Option<String>,
    /// Slope s as a continued fraction for the point (1/s, 1), e.g. "[1;1,1,...]".
    #[arg(long)]
    pub cf: Option<String>,
    /// Target even exponent of a constructed slope.
    #[arg(long, requires = "eminus")]
    pub eplus: Option<f64>,
    /// Target odd exponent of a constructed slope.
    #[arg(long, requires = "eplus")]
    pub eminus: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    pub precision_bits: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Default)]
pub struct OutputArgs {
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl PointArgs {
    pub fn from_point(text: &str) -> Self {
        Self {
            point: Some(text.into()),
            ..Self::empty()
        }
    }

    pub fn from_cf(text: &str) -> Self {
        Self {
            cf: Some(text.into()),
            ..Self::empty()
        }
    }

    pub fn from_targets(e_plus: f64, e_minus: f64) -> Self {
        Self {
            eplus: Some(e_plus),
            eminus: Some(e_minus),
            ..Self::empty()
        }
    }

    fn empty() -> Self {
        Self {
            point: None,
            cf: None,
            eplus: None,
            eminus: None,
            precision_bits: DEFAULT_MAX_BITS,
        }
    }

    fn targets(&self) -> Option<(f64, f64)> {
        self.eplus.zip(self.eminus)
    }

    pub fn resolve(&self) -> crate::Result<FareyPoint> {
        if let Some(p) = &self.point {
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("point {p:?}: expected \"a,b\"")))?;
            return FareyPoint::rational(parse_rational(a)?, parse_rational(b)?);
        }
        let cf = if let Some(c) = &self.cf {
            c.parse::<ContinuedFraction>()?
        } else if let Some((ep, em)) = self.targets() {
            ContinuedFraction::construct(ep, em)?
        } else {
            return Err(Error::InvalidInput("no point given".into()));
        };
        FareyPoint::from_slope_with_bits(cf, self.precision_bits)
    }

    fn label(&self) -> String {
        match (&self.point, &self.cf, self.targets()) {
            (Some(p), _, _) => format!("point {p}"),
            (_, Some(c), _) => format!("cf {c}"),
            (_, _, Some((ep, em))) => format!("targets ({ep}, {em})"),
            _ => String::new(),
        }
    }
}

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// An orbit step failed at index `n`.
    Step { n: i64, source: Error },
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Step { n, source } => write!(f, "at n = {n}: {source}"),
            CliError::Io(e) => write!(f, "output: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::StreamExhausted { .. }
        | Error::FloorAmbiguous { .. }
        | Error::ComparisonAmbiguous { .. }
        | Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

/// 0 success, 2 parse or precondition error, 3 verification failure, 4 precision exhaustion.
pub fn exit_code(result: &Result<Outcome, CliError>) -> i32 {
    match result {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::VerificationFailed) => 3,
        Err(CliError::Core(e)) | Err(CliError::Step { source: e, .. }) => core_exit_code(e),
        Err(CliError::Io(_)) => 2,
    }
}

type CliResult = Result<Outcome, CliError>;

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn value_columns(a: &XValue) -> crate::Result<(String, String)> {
    Ok(match a {
        XValue::Exact(r) => (format_rational(r), format_rational(r)),
        XValue::Linear { p, q, slope } => {
            let iv = slope.coordinate_rel(p, q, 48)?;
            let (lo, hi) = iv.to_f64_bounds();
            (format_sig(lo, SIG_DIGITS), format_sig(hi, SIG_DIGITS))
        }
    })
}

fn value_text(a: &XValue) -> String {
    match a {
        XValue::Exact(r) => format_rational(r),
        _ => format_sig(a.to_f64(), SIG_DIGITS),
    }
}

fn opt_sig(x: Option<f64>) -> String {
    x.map(|v| format_sig(v, SIG_DIGITS)).unwrap_or_default()
}

#[derive(Serialize)]
struct PeriodicOut {
    order: u64,
    period: u64,
    farey_count: u64,
    itinerary_sum: u64,
    f_period: i64,
    hall_shiu: bool,
    period_matches: bool,
    farey_denominators_match: bool,
    ok: bool,
    itinerary: Vec<u64>,
}

fn cmd_periodic(order: u64, format: Format, out: &mut dyn Write) -> CliResult {
    let r = periodic_orbit(order)?;
    let rep = PeriodicOut {
        order: r.order,
        period: r.period,
        farey_count: r.farey_count,
        itinerary_sum: r.itinerary_sum,
        f_period: r.f_period,
        hall_shiu: r.hall_shiu_holds(),
        period_matches: r.period_matches(),
        farey_denominators_match: r.farey_denominators_match,
        ok: r.ok(),
        itinerary: r.itinerary.clone(),
    };
    match format {
        Format::Json => json_line(out, &rep)?,
        Format::Csv => {
            writeln!(out, "order,period,farey_count,itinerary_sum,f_period,ok,itinerary")?;
            let it: Vec<String> = rep.itinerary.iter().map(|k| k.to_string()).collect();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                rep.order,
                rep.period,
                rep.farey_count,
                rep.itinerary_sum,
                rep.f_period,
                u8::from(rep.ok),
                it.join(" ")
            )?;
        }
    }
    Ok(if rep.ok { Outcome::Success } else { Outcome::VerificationFailed })
}

#[derive(Serialize)]
struct OrbitRow {
    n: i64,
    k_n: String,
    f_n: String,
    a_lo: String,
    a_hi: String,
    deep: u8,
    block_end: u8,
}

fn cmd_orbit(point: &PointArgs, steps: usize, direction: Direction, format: Format, out: &mut dyn Write) -> CliResult {
    let pt = point.resolve()?;
    let mut tracker = DeepTracker::new(&pt)?;
    let mut rows = Vec::new();
    if format == Format::Csv {
        writeln!(out, "n,k_n,f_n,a_lo,a_hi,deep,block_end")?;
    }
    let mut last_n = 0i64;
    for st in orbit_iter(&pt, steps, direction) {
        let step = |e| CliError::Step {
            n: last_n + if direction == Direction::Forward { 1 } else { -1 },
            source: e,
        };
        let st = st.map_err(step)?;
        last_n = st.n;
        let (marker, _) = tracker
            .observe(&st)
            .map_err(|e| CliError::Step { n: st.n, source: e })?;
        let (lo, hi) = value_columns(&st.a).map_err(|e| CliError::Step { n: st.n, source: e })?;
        let row = OrbitRow {
            n: st.n,
            k_n: st.k.to_string(),
            f_n: st.f.to_string(),
            a_lo: lo,
            a_hi: hi,
            deep: u8::from(marker.is_deep()),
            block_end: u8::from(marker == ProbeMarker::BlockEnd),
        };
        match format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{},{}",
                row.n, row.k_n, row.f_n, row.a_lo, row.a_hi, row.deep, row.block_end
            )?,
            Format::Json => rows.push(row),
        }
    }
    if format == Format::Json {
        json_line(out, &rows)?;
    }
    Ok(Outcome::Success)
}

/// Summary emitted by `loglaw`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogLawReport {
    pub point: String,
    pub direction: String,
    pub steps: usize,
    pub e_plus_est: Option<f64>,
    pub e_minus_est: Option<f64>,
    pub theory_value: Option<f64>,
    pub tail_start: u64,
    pub tail_max_ratio: Option<f64>,
    pub tail_max_n: Option<i64>,
    pub tail_max_fhat_ratio: Option<f64>,
    pub blockend_ratios: Vec<f64>,
    pub block_ends: Vec<BlockEndProbe>,
    pub tolerance: f64,
    /// `pass` when the tail maximum or the last block-end ratio is within
    /// tolerance of the theory value, `undetermined` without a theory value.
    pub verdict: String,
}

#[allow(clippy::too_many_arguments)]
fn loglaw_report(
    point: &PointArgs,
    steps: usize,
    blocks: usize,
    direction: Direction,
    tolerance: f64,
    tail_start: Option<u64>,
    mut sink: impl FnMut(&LogLawProbe),
) -> Result<LogLawReport, CliError> {
    let pt = point.resolve()?;
    let estimate = match pt.slope() {
        Some(s) => {
            let cf = s.continued_fraction();
            let k = exponent_horizon(&cf, point.precision_bits, 2 * blocks + 2)?;
            Some(estimate_exponents(&cf, k, k / 2)?)
        }
        None => None,
    };
    let theory = match (point.targets(), &estimate) {
        (Some((ep, em)), _) => Some(theoretical_limsup(ep, em, direction)),
        (None, Some(e)) => Some(theoretical_limsup(e.e_plus, e.e_minus, direction)),
        _ => None,
    };
    let summary = loglaw_scan(&pt, steps, direction, &LogLawOptions { tail_start }, &mut sink)?;
    let blockend_ratios = summary.blockend_ratios();
    let verdict = match theory {
        None => "undetermined",
        Some(t) => {
            let close = |x: Option<f64>| x.is_some_and(|v| (v - t).abs() <= tolerance);
            if close(summary.tail_max_ratio) || close(blockend_ratios.last().copied()) {
                "pass"
            } else {
                "fail"
            }
        }
    };
    Ok(LogLawReport {
        point: point.label(),
        direction: direction.to_string(),
        steps,
        e_plus_est: estimate.as_ref().map(|e| e.e_plus),
        e_minus_est: estimate.as_ref().map(|e| e.e_minus),
        theory_value: theory,
        tail_start: summary.tail_start,
        tail_max_ratio: summary.tail_max_ratio,
        tail_max_n: summary.tail_max_n,
        tail_max_fhat_ratio: summary.tail_max_fhat_ratio,
        blockend_ratios,
        block_ends: summary.block_ends,
        tolerance,
        verdict: verdict.into(),
    })
}

fn marker_text(m: ProbeMarker) -> &'static str {
    match m {
        ProbeMarker::Plain => "plain",
        ProbeMarker::Deep => "deep",
        ProbeMarker::BlockEnd => "block_end",
    }
}

/// Probe rows go to `out` in CSV mode, with the summary on stderr.
fn cmd_loglaw(cmd: &Command, format: Format, out: &mut dyn Write) -> CliResult {
    let Command::Loglaw {
        point,
        steps,
        blocks,
        direction,
        tolerance,
        tail_start,
        ..
    } = cmd
    else {
        unreachable!("dispatched on loglaw")
    };
    let mut io_err = None;
    if format == Format::Csv {
        writeln!(out, "n,f_n,ratio,fhat_ratio,marker")?;
    }
    let report = loglaw_report(point, *steps, *blocks, *direction, *tolerance, *tail_start, |p| {
        if format == Format::Csv && io_err.is_none() {
            if let Err(e) = writeln!(
                out,
                "{},{},{},{},{}",
                p.n,
                p.f,
                opt_sig(p.ratio),
                opt_sig(p.fhat_ratio),
                marker_text(p.marker)
            ) {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => json_line(&mut io::stderr(), &report)?,
    }
    Ok(if report.verdict == "fail" {
        Outcome::VerificationFailed
    } else {
        Outcome::Success
    })
}

fn cmd_verify(suite: Suite, size: usize, seed: u64, format: Format, out: &mut dyn Write) -> CliResult {
    let report = verify(suite, size, seed);
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            writeln!(out, "suite,cases,checks,failures,pass")?;
            for r in &report.results {
                writeln!(out, "{},{},{},{},{}", r.suite, r.cases, r.checks, r.failures.len(), u8::from(r.pass))?;
            }
        }
    }
    if !report.pass {
        for r in &report.results {
            for f in &r.failures {
                eprintln!("{}: {f}", r.suite);
            }
        }
    }
    Ok(if report.pass { Outcome::Success } else { Outcome::VerificationFailed })
}

#[derive(Serialize)]
struct ExcursionRow {
    s: usize,
    t: usize,
    len: usize,
    a_s: String,
    a_t: String,
    coprime_count: u64,
    main_term: String,
    ratio: String,
}

fn cmd_excursions(point: &PointArgs, steps: usize, format: Format, out: &mut dyn Write) -> CliResult {
    let pt = point.resolve()?;
    let (a, _) = orbit_window(&pt, steps)?;
    let mut rows = Vec::new();
    if format == Format::Csv {
        writeln!(out, "s,t,len,a_s,a_t,coprime_count,main_term,ratio")?;
    }
    for e in detect_excursions(&a, Mode::All)? {
        let (x, y) = (e.a_s.to_f64(), e.a_t.to_f64());
        let row = ExcursionRow {
            s: e.s,
            t: e.t,
            len: e.len(),
            a_s: value_text(&e.a_s),
            a_t: value_text(&e.a_t),
            coprime_count: coprime_pair_count_mobius(&e.a_s, &e.a_t)?,
            main_term: format_sig(excursion_length_estimate(x, y).main_term, SIG_DIGITS),
            ratio: format_sig(length_ratio(e.len(), x, y), SIG_DIGITS),
        };
        match format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.s, row.t, row.len, row.a_s, row.a_t, row.coprime_count, row.main_term, row.ratio
            )?,
            Format::Json => rows.push(row),
        }
    }
    if format == Format::Json {
        json_line(out, &rows)?;
    }
    Ok(Outcome::Success)
}

/// Output settings of a command.
pub fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Periodic { output, .. }
        | Command::Orbit { output, .. }
        | Command::Loglaw { output, .. }
        | Command::Verify { output, .. }
        | Command::Excursions { output, .. } => output,
    }
}

fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Orbit { .. } | Command::Excursions { .. } => Format::Csv,
        _ => Format::Json,
    }
}

/// Runs one configuration, writing its primary output to `out`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> CliResult {
    let cmd = &cfg.command;
    let format = output_args(cmd).format.unwrap_or_else(|| default_format(cmd));
    let outcome = match cmd {
        Command::Periodic { order, .. } => cmd_periodic(*order, format, out),
        Command::Orbit {
            point, steps, direction, ..
        } => cmd_orbit(point, *steps, *direction, format, out),
        Command::Loglaw { .. } => cmd_loglaw(cmd, format, out),
        Command::Verify { suite, size, seed, .. } => cmd_verify(*suite, *size, *seed, format, out),
        Command::Excursions { point, steps, .. } => cmd_excursions(point, *steps, format, out),
    }?;
    out.flush()?;
    Ok(outcome)
}

/// Parses arguments, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &output_args(&cfg.command).out {
        Some(path) => match File::create(path) {
            Ok(f) => run(&cfg, &mut BufWriter::new(f)),
            Err(e) => Err(CliError::Io(e)),
        },
        None => run(&cfg, &mut BufWriter::new(io::stdout().lock())),
    };
    if let Err(e) = &result {
        eprintln!("bcz: {e}");
    }
    exit_code(&result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (CliResult, String) {
        let cfg = RunConfig::try_parse_from(std::iter::once("bcz").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(&cfg, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    fn column(csv: &str, idx: usize) -> Vec<String> {
        csv.lines().skip(1).map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
    }

    #[test]
    fn periodic_orders() {
        for (order, period, sum) in [(1, 1, 2), (3, 4, 11), (5, 10, 29)] {
            let (r, out) = run_args(&["periodic", "--order", &order.to_string()]);
            assert_eq!(r.unwrap(), Outcome::Success);
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["period"], period);
            assert_eq!(v["itinerary_sum"], sum);
            assert_eq!(v["ok"], true);
        }
    }

    #[test]
    fn orbit_rows() {
        let (_, out) = run_args(&["orbit", "--point", "1/3,1", "--steps", "4"]);
        assert_eq!(out.lines().next().unwrap(), "n,k_n,f_n,a_lo,a_hi,deep,block_end");
        assert_eq!(column(&out, 1), ["1", "3", "1", "6"]);
        let (_, out) = run_args(&["orbit", "--point", "1,1", "--steps", "3"]);
        assert_eq!(column(&out, 1), ["2", "2", "2"]);
        assert_eq!(column(&out, 2), ["-1", "-2", "-3"]);
        let (_, out) = run_args(&["orbit", "--cf", "[1;1,1,...]", "--steps", "5"]);
        assert_eq!(column(&out, 1), ["1", "5", "1", "3", "2"]);
        assert_eq!(column(&out, 5), ["0", "1", "0", "0", "0"]);
        assert_eq!(column(&out, 6), ["0", "1", "0", "0", "0"]);
    }

    #[test]
    fn excursion_rows() {
        let (_, out) = run_args(&["excursions", "--point", "1/5,1", "--steps", "10"]);
        let row = out.lines().find(|l| l.starts_with("0,5,")).unwrap();
        assert!(row.starts_with("0,5,5,1/5,2/5,4,3.7995443"), "{row}");
    }

    #[test]
    fn bad_point_arguments() {
        assert!(RunConfig::try_parse_from(["bcz", "orbit"]).is_err());
        assert!(RunConfig::try_parse_from(["bcz", "orbit", "--point", "1,1", "--cf", "[1;2]"]).is_err());
        assert!(RunConfig::try_parse_from(["bcz", "orbit", "--eplus", "2"]).is_err());
        let (r, _) = run_args(&["orbit", "--point", "0.5,1"]);
        assert_eq!(exit_code(&r), 2);
        let (r, _) = run_args(&["orbit", "--point", "1/3,1/3"]);
        assert_eq!(exit_code(&r), 2);
    }

    #[test]
    fn precision_exhaustion_exit_code() {
        let (r, _) = run_args(&["orbit", "--eplus", "2", "--eminus", "3", "--steps", "100000", "--precision-bits", "8"]);
        assert_eq!(exit_code(&r), 4);
        assert!(r.unwrap_err().to_string().starts_with("at n = "));
    }

    #[test]
    fn vacuous_verify() {
        let (r, out) = run_args(&["verify", "--suite", "all", "--size", "0"]);
        assert_eq!(r.unwrap(), Outcome::Success);
        assert!(out.contains("\"pass\": true"));
    }
}
