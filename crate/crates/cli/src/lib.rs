//! Command-line frontend.
//!
//! Every subcommand prints exact values as `n/d` strings. `--json` switches
//! to one JSON record per line. Exit codes: 0 on success, 1 when a
//! verification (`cross-check`, `verify-expansion`) fails, 2 on invalid input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use seifert_nu::dedekind::{s3, DedekindArgs};
use seifert_nu::expansion::{verify, Reading, VerificationReport};
use seifert_nu::lens::{eta_round, nu_cross_check, nu_lens, Convention, LensSpace, Route};
use seifert_nu::obstruct::{
    check_ch_filling_equality, einstein_defect, ke_inequality, nu_is_integer, FillingData,
};
use seifert_nu::par::with_jobs;
use seifert_nu::scan::{scan_bundles, scan_lens, BundleRow, LensRow};
use seifert_nu::seifert::{eta_ouyang, mu_smooth, nu_seifert, EtaParams};
use seifert_nu::{Error, OrbifoldPoint, Rational, SeifertData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "seifert-nu", version, about = "Exact nu, eta and mu invariants of CR Seifert 3-manifolds")]
pub struct Cli {
    /// Emit JSON records instead of human-readable text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dedekind sum s(alpha, beta, gamma)
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(allow_hyphen_values = true)]
        beta: Rational,
        #[arg(allow_hyphen_values = true)]
        gamma: Rational,
    },
    /// nu-invariant of an orbifold circle bundle
    NuSeifert(SeifertInput),
    /// eta-invariant of the metric 4 rho^2 theta^2 + gamma on an orbifold circle bundle
    EtaOuyang {
        #[command(flatten)]
        input: SeifertInput,
        /// Squared metric parameter rho^2
        #[arg(long, allow_hyphen_values = true)]
        rho2: Rational,
    },
    /// mu-invariant chi^2/4d of a smooth circle bundle
    Mu {
        #[arg(allow_hyphen_values = true)]
        euler: Rational,
        #[arg(allow_hyphen_values = true)]
        degree: Rational,
    },
    /// nu-invariant of the lens space L(p, q)
    NuLens(LensArgs),
    /// eta-invariant of L(p, q) with the round metric
    EtaRound(LensArgs),
    /// Compare nu(L(p, q)) with the value from its Seifert description
    CrossCheck {
        #[command(flatten)]
        lens: LensArgs,
        #[arg(long, default_value = "calibrated", value_parser = parse_convention)]
        convention: Convention,
    },
    /// Filling obstructions for a boundary with the given nu
    Obstruct {
        #[arg(long, allow_hyphen_values = true)]
        nu: Rational,
        /// Euler characteristic of the filling (orbifold value allowed)
        #[arg(long, allow_hyphen_values = true)]
        euler: Rational,
        /// Signature of the filling (orbifold value allowed)
        #[arg(long, allow_hyphen_values = true)]
        signature: Rational,
        /// Self-intersections of the tori compactifying the cusps
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cusps: Vec<i64>,
        /// Assume a nonzero Kronheimer-Mrowka invariant
        #[arg(long)]
        km: bool,
    },
    /// nu, eta and integrality for every L(p, q) with p <= pmax
    ScanLens {
        #[arg(long)]
        pmax: i64,
        #[arg(long, default_value = "calibrated", value_parser = parse_convention)]
        convention: Convention,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// nu, mu and the chi^2/4d obstruction for smooth bundles of genus <= genus-max
    ScanBundles {
        #[arg(long)]
        genus_max: u64,
        #[arg(long, allow_hyphen_values = true)]
        dmin: i64,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Check the asymptotic expansion of the boundary term and of 3*eta exactly
    VerifyExpansion {
        #[arg(long, default_value = "squared", value_parser = parse_reading)]
        reading: Reading,
        /// Number of random numerical specializations
        #[arg(long = "spot-check", default_value_t = 50)]
        spot_check: usize,
        #[arg(long, default_value_t = 2004)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct LensArgs {
    #[arg(allow_hyphen_values = true)]
    pub p: i64,
    #[arg(allow_hyphen_values = true)]
    pub q: i64,
}

#[derive(Debug, Args)]
pub struct Jobs {
    /// Worker threads; 1 runs sequentially, 0 uses every core
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

/// Bundle data from a JSON record (`-` reads stdin) or from flags.
#[derive(Debug, Args)]
pub struct SeifertInput {
    /// JSON record with `degree`, `euler` and `points`
    pub input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub euler: Option<Rational>,
    /// Orbifold point as alpha,beta,gamma; repeatable
    #[arg(long = "point", allow_hyphen_values = true, value_parser = parse_point)]
    pub points: Vec<OrbifoldPoint>,
    /// Accept degree >= 0
    #[arg(long)]
    pub allow_non_pseudoconvex: bool,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_reading(s: &str) -> Result<Reading, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> Result<OrbifoldPoint, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = parts[..] else {
        return Err(format!("expected alpha,beta,gamma, got {s:?}"));
    };
    OrbifoldPoint::new(a, b, c).map_err(|e| e.to_string())
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<i32, Failure>;

impl SeifertInput {
    fn load(&self) -> Result<SeifertData, Failure> {
        let mut data = match &self.input {
            Some(path) => {
                let text = if path.as_os_str() == "-" {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                } else {
                    fs::read_to_string(path)
                        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?
                };
                serde_json::from_str::<SeifertData>(&text)
                    .map_err(|e| Failure::Invalid(format!("bad Seifert record: {e}")))?
            }
            None => {
                let (Some(degree), Some(euler)) = (&self.degree, &self.euler) else {
                    return Err(Failure::Invalid(
                        "give a JSON record or both --degree and --euler".into(),
                    ));
                };
                SeifertData::new(degree.clone(), euler.clone(), Vec::new())
            }
        };
        if let Some(d) = &self.degree {
            data.degree = d.clone();
        }
        if let Some(e) = &self.euler {
            data.euler = e.clone();
        }
        data.points.extend(self.points.iter().copied());
        data.non_pseudoconvex |= self.allow_non_pseudoconvex;
        Ok(data)
    }
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces.
fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn integer_arg(name: &str, r: &Rational) -> Result<Rational, Failure> {
    if r.is_integer() {
        Ok(r.clone())
    } else {
        Err(Failure::Invalid(format!("{name} = {r} is not an integer")))
    }
}

fn lens_space(args: &LensArgs) -> Result<LensSpace, Failure> {
    Ok(LensSpace::new(args.p, args.q)?)
}

fn cmd_dedekind(json: bool, out: &mut dyn Write, a: &Rational, b: &Rational, c: &Rational) -> CmdResult {
    let (a, b, c) = (integer_arg("alpha", a)?, integer_arg("beta", b)?, integer_arg("gamma", c)?);
    let args = DedekindArgs::new(a.numer().clone(), b.numer().clone(), c.numer().clone())?;
    let value = s3(&args);
    if json {
        json_line(out, &json!({"alpha": a, "beta": b, "gamma": c, "dedekind": value}))?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_nu_seifert(json: bool, out: &mut dyn Write, input: &SeifertInput) -> CmdResult {
    let data = input.load()?;
    let nu = nu_seifert(&data)?;
    if json {
        json_line(
            out,
            &json!({"degree": data.degree, "euler": data.euler, "nu": nu, "integer": nu.is_integer()}),
        )?;
    } else {
        writeln!(out, "{nu}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_eta_ouyang(json: bool, out: &mut dyn Write, input: &SeifertInput, rho2: &Rational) -> CmdResult {
    let data = input.load()?;
    let eta = eta_ouyang(&data, &EtaParams::new(rho2.clone())?)?;
    if json {
        json_line(
            out,
            &json!({"degree": data.degree, "euler": data.euler, "rho2": rho2, "eta": eta}),
        )?;
    } else {
        writeln!(out, "{eta}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_mu(json: bool, out: &mut dyn Write, euler: &Rational, degree: &Rational) -> CmdResult {
    let mu = mu_smooth(euler, degree)?;
    if json {
        json_line(out, &json!({"euler": euler, "degree": degree, "mu": mu}))?;
    } else {
        writeln!(out, "{mu}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_nu_lens(json: bool, out: &mut dyn Write, args: &LensArgs) -> CmdResult {
    let lens = lens_space(args)?;
    let nu = nu_lens(&lens);
    if json {
        json_line(
            out,
            &json!({"p": lens.p(), "q": lens.q(), "nu": nu, "integer": nu.is_integer()}),
        )?;
    } else {
        writeln!(out, "{nu}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_eta_round(json: bool, out: &mut dyn Write, args: &LensArgs) -> CmdResult {
    let lens = lens_space(args)?;
    let eta = eta_round(&lens);
    if json {
        json_line(out, &json!({"p": lens.p(), "q": lens.q(), "eta": eta}))?;
    } else {
        writeln!(out, "{eta}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_cross_check(json: bool, out: &mut dyn Write, args: &LensArgs, convention: Convention) -> CmdResult {
    let lens = lens_space(args)?;
    let check = nu_cross_check(&lens, convention)?;
    let route = match check.route {
        Route::Orbifold => "orbifold",
        Route::Smooth => "smooth",
    };
    if json {
        json_line(
            out,
            &json!({
                "p": lens.p(),
                "q": lens.q(),
                "convention": convention.as_str(),
                "route": route,
                "nu": check.direct,
                "via_seifert": check.via_seifert,
                "consistent": check.consistent,
                "eta_identity": check.eta_identity,
            }),
        )?;
    } else {
        writeln!(out, "{lens}  convention {convention}, {route} route")?;
        writeln!(out, "direct        {}", check.direct)?;
        writeln!(out, "via seifert   {}", check.via_seifert)?;
        writeln!(out, "consistent    {}", yes_no(check.consistent))?;
        writeln!(out, "eta identity  {}", yes_no(check.eta_identity))?;
    }
    Ok(if check.consistent && check.eta_identity {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_obstruct(json: bool, out: &mut dyn Write, nu: &Rational, filling: &FillingData) -> CmdResult {
    let integer = nu_is_integer(nu);
    let tau = filling.modified_signature();
    let equality = check_ch_filling_equality(nu, filling);
    let ke = ke_inequality(nu, filling);
    let defect = einstein_defect(nu, filling);
    if json {
        json_line(
            out,
            &json!({
                "nu": nu,
                "integer": integer,
                "euler": filling.euler,
                "signature": filling.signature,
                "tau_cusp": tau,
                "ch_equality": equality,
                "ke_inequality": ke,
                "einstein_defect": defect,
                "km_nonvanishing": filling.km_nonvanishing,
            }),
        )?;
        return Ok(EXIT_OK);
    }
    let mut integrality = yes_no(integer).to_string();
    if !integer {
        integrality.push_str(&format!(
            " (denominator {} hints at the orbifold order needed)",
            nu.denom()
        ));
    }
    let verdict = |holds: bool| if holds { "holds" } else { "fails" };
    writeln!(out, "nu                    {nu}")?;
    writeln!(out, "integer               {integrality}")?;
    writeln!(out, "tau_cusp              {tau}")?;
    writeln!(
        out,
        "nu = -chi + 3 tau     {}: {} vs {}",
        verdict(equality.holds),
        equality.lhs,
        equality.rhs
    )?;
    writeln!(
        out,
        "chi - 3 tau >= -nu    {}: {} vs {}",
        verdict(ke.holds),
        ke.lhs,
        ke.rhs
    )?;
    writeln!(out, "einstein defect       {defect}")?;
    if !ke.einstein_applicable {
        writeln!(
            out,
            "note                  without --km the inequality only covers Kahler-Einstein fillings"
        )?;
    }
    Ok(EXIT_OK)
}

fn lens_table(rows: &[LensRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.q.to_string(),
                r.nu.to_string(),
                r.eta.to_string(),
                yes_no(r.integer).to_string(),
                yes_no(r.obstructed).to_string(),
                r.consistent.map_or("-", yes_no).to_string(),
            ]
        })
        .collect()
}

fn bundle_table(rows: &[BundleRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.genus.to_string(),
                r.degree.to_string(),
                r.euler.to_string(),
                r.nu.to_string(),
                r.mu.to_string(),
                yes_no(r.integer).to_string(),
                yes_no(r.obstructed).to_string(),
            ]
        })
        .collect()
}

fn cmd_scan_lens(json: bool, out: &mut dyn Write, pmax: i64, convention: Convention, jobs: usize) -> CmdResult {
    let rows = with_jobs(jobs, |exec| scan_lens(pmax, convention, exec))?;
    if json {
        for row in &rows {
            json_line(out, row)?;
        }
    } else {
        write_table(
            out,
            &["p", "q", "nu", "eta", "integer", "obstructed", "consistent"],
            &lens_table(&rows),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_scan_bundles(json: bool, out: &mut dyn Write, genus_max: u64, dmin: i64, jobs: usize) -> CmdResult {
    let rows = with_jobs(jobs, |exec| scan_bundles(genus_max, dmin, exec))?;
    if json {
        for row in &rows {
            json_line(out, row)?;
        }
    } else {
        write_table(
            out,
            &["genus", "degree", "euler", "nu", "mu", "integer", "obstructed"],
            &bundle_table(&rows),
        )?;
    }
    Ok(EXIT_OK)
}

fn write_report(out: &mut dyn Write, report: &VerificationReport) -> io::Result<()> {
    writeln!(out, "reading: {}", report.reading)?;
    for check in &report.checks {
        writeln!(out, "{}  {}", if check.passed { "PASS" } else { "FAIL" }, check.name)?;
        if let Some(detail) = &check.detail {
            writeln!(out, "      {detail}")?;
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} identities verified", report.checks.len())
}

fn cmd_verify(json: bool, out: &mut dyn Write, reading: Reading, spot_checks: usize, seed: u64) -> CmdResult {
    let report = verify(reading, spot_checks, seed);
    if json {
        json_line(out, &report)?;
    } else {
        write_report(out, &report)?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let json = cli.json;
    match &cli.command {
        Command::Dedekind { alpha, beta, gamma } => cmd_dedekind(json, out, alpha, beta, gamma),
        Command::NuSeifert(input) => cmd_nu_seifert(json, out, input),
        Command::EtaOuyang { input, rho2 } => cmd_eta_ouyang(json, out, input, rho2),
        Command::Mu { euler, degree } => cmd_mu(json, out, euler, degree),
        Command::NuLens(args) => cmd_nu_lens(json, out, args),
        Command::EtaRound(args) => cmd_eta_round(json, out, args),
        Command::CrossCheck { lens, convention } => cmd_cross_check(json, out, lens, *convention),
        Command::Obstruct {
            nu,
            euler,
            signature,
            cusps,
            km,
        } => {
            let filling = FillingData {
                euler: euler.clone(),
                signature: signature.clone(),
                cusp_self_intersections: cusps.clone(),
                km_nonvanishing: km.then_some(true),
            };
            cmd_obstruct(json, out, nu, &filling)
        }
        Command::ScanLens {
            pmax,
            convention,
            jobs,
        } => cmd_scan_lens(json, out, *pmax, *convention, jobs.jobs),
        Command::ScanBundles {
            genus_max,
            dmin,
            jobs,
        } => cmd_scan_bundles(json, out, *genus_max, *dmin, jobs.jobs),
        Command::VerifyExpansion {
            reading,
            spot_check,
            seed,
        } => cmd_verify(json, out, *reading, *spot_check, *seed),
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}
