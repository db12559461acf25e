//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so tests can drive it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gbundle::groups::catalog_entries;
use gbundle::homology::MAX_DEGREE;
use gbundle::oracle::{self, FiniteCheck, OracleError};
use gbundle::report::{self, asciify};
use gbundle::{
    classify, classify_sphere, classify_standard, cohomology_uct, integral_homology, parse_group_spec,
    surface_closed_form, ClosedSurface, CwComplex2, FgAbelianGroup, GroupDescriptor, Notation,
    StandardSpace,
};
use serde::Serialize;

/// Exit status plus everything the process would print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "gbundle", version, about = "Classify principal G-bundles over 2-complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify G-bundles over a complex.
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_name = "EXPR", value_parser = parse_group_spec)]
        group: GroupDescriptor,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cohomology with coefficients in a finitely generated abelian group.
    Cohomology {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_name = "EXPR")]
        coefficients: FgAbelianGroup,
        /// Single degree (default: 0, 1 and 2).
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(0..=MAX_DEGREE as i64))]
        degree: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integral homology.
    Homology {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check a complex and summarise its cells.
    Validate {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Second cohomology of a closed surface by closed form, checked against the engine.
    Surface {
        #[arg(long, value_name = "SPEC")]
        surface: StandardSpace,
        #[command(flatten)]
        coeffs: CoefficientArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bundles over the sphere S^n (n = 1 or 2).
    Sphere {
        #[arg(long, value_name = "EXPR", value_parser = parse_group_spec)]
        group: GroupDescriptor,
        #[arg(long, value_name = "N", default_value_t = 2)]
        degree: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every applicable brute-force cross-check.
    Oracle {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        coeffs: CoefficientArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List the catalogued structure groups.
    Catalog {
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SpaceArgs {
    /// Complex in the JSON cell format.
    #[arg(long, value_name = "PATH")]
    complex: Option<PathBuf>,
    /// genus=g, torus, crosscaps=k, sphere or wedge=n.
    #[arg(long, value_name = "SPEC")]
    surface: Option<StandardSpace>,
    /// Wedge of n circles.
    #[arg(long, value_name = "N")]
    wedge: Option<u32>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CoefficientArgs {
    #[arg(long, value_name = "EXPR", value_parser = parse_group_spec)]
    group: Option<GroupDescriptor>,
    #[arg(long, value_name = "EXPR")]
    coefficients: Option<FgAbelianGroup>,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputArgs {
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// ASCII-only rendering.
    #[arg(long)]
    ascii: bool,
}

impl OutputArgs {
    fn notation(self) -> Notation {
        if self.ascii { Notation::Ascii } else { Notation::Unicode }
    }

    fn emit<T: Serialize>(self, value: &T, human: impl FnOnce() -> String) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(value).expect("output serializes");
            s.push('\n');
            s
        } else {
            asciify(&human(), self.notation())
        }
    }
}

/// A resolved space: the complex plus its standard shape when it has one.
struct Space {
    complex: CwComplex2,
    shape: Option<StandardSpace>,
}

/// Domain failures; usage failures never get this far.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res = Result<String, Failure>;

impl SpaceArgs {
    fn resolve(&self) -> Result<Space, Failure> {
        let shape = match (&self.complex, self.surface, self.wedge) {
            (Some(path), _, _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
                let complex = CwComplex2::from_json(&text)?;
                return Ok(Space { complex, shape: None });
            }
            (_, Some(s), _) => s,
            (_, _, Some(n)) => StandardSpace::Wedge { circles: n },
            _ => unreachable!("clap enforces exactly one space"),
        };
        Ok(Space { complex: shape.build()?, shape: Some(shape) })
    }
}

impl CoefficientArgs {
    /// The group π used for cohomology-type checks, and the structure group if given.
    fn split(&self) -> (Option<&GroupDescriptor>, Option<&FgAbelianGroup>) {
        (self.group.as_ref(), self.coefficients.as_ref())
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                // --help / --version
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Ok(stdout)) => Outcome { code: 0, stdout, stderr: String::new() },
        Ok(Err(Disagreement(stdout))) => Outcome {
            code: 1,
            stdout,
            stderr: "error: oracle disagreement\n".into(),
        },
        Err(Failure(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

/// Output that was produced but reports a failed cross-check.
struct Disagreement(String);

fn dispatch(command: Command) -> Result<Result<String, Disagreement>, Failure> {
    let text = match command {
        Command::Classify { space, group, out } => classify_cmd(&space, &group, out)?,
        Command::Cohomology { space, coefficients, degree, out } => {
            cohomology_cmd(&space, &coefficients, degree, out)?
        }
        Command::Homology { space, out } => homology_cmd(&space, out)?,
        Command::Validate { space, out } => validate_cmd(&space, out)?,
        Command::Surface { surface, coeffs, out } => surface_cmd(surface, &coeffs, out)?,
        Command::Sphere { group, degree, out } => sphere_cmd(&group, degree, out)?,
        Command::Oracle { space, coeffs, out } => return oracle_cmd(&space, &coeffs, out),
        Command::Catalog { out } => catalog_cmd(out),
    };
    Ok(Ok(text))
}

fn classify_cmd(space: &SpaceArgs, group: &GroupDescriptor, out: OutputArgs) -> Res {
    let space = space.resolve()?;
    let result = match space.shape {
        Some(shape) => classify_standard(shape, group)?,
        None => classify(&space.complex, group)?,
    };
    if out.json {
        return Ok(report::to_json(&result) + "\n");
    }
    Ok(report::human_report(&result, out.notation()))
}

#[derive(Serialize)]
struct CohomologyRecord<'a> {
    complex: &'a str,
    coefficients: &'a FgAbelianGroup,
    cohomology: Vec<DegreeGroup>,
}

#[derive(Serialize)]
struct DegreeGroup {
    degree: u32,
    group: FgAbelianGroup,
}

fn cohomology_cmd(space: &SpaceArgs, pi: &FgAbelianGroup, degree: Option<u32>, out: OutputArgs) -> Res {
    let space = space.resolve()?;
    let degrees: Vec<u32> = match degree {
        Some(n) => vec![n],
        None => vec![0, 1, 2],
    };
    let cohomology = degrees
        .into_iter()
        .map(|n| Ok(DegreeGroup { degree: n, group: cohomology_uct(&space.complex, pi, n)?.group }))
        .collect::<Result<Vec<_>, Failure>>()?;
    let record = CohomologyRecord { complex: &space.complex.name, coefficients: pi, cohomology };
    Ok(out.emit(&record, || {
        let mut s = String::new();
        for d in &record.cohomology {
            let sup = ["⁰", "¹", "²", "³"][d.degree as usize];
            let _ = writeln!(s, "H{sup}({}; {}) = {}", record.complex, pi, d.group);
        }
        s
    }))
}

#[derive(Serialize)]
struct HomologyRecord<'a> {
    complex: &'a str,
    h0: FgAbelianGroup,
    h1: FgAbelianGroup,
    h2: FgAbelianGroup,
    euler_characteristic: i64,
}

fn homology_cmd(space: &SpaceArgs, out: OutputArgs) -> Res {
    let space = space.resolve()?;
    let h = integral_homology(&space.complex)?;
    let record = HomologyRecord {
        complex: &space.complex.name,
        h0: h.h0,
        h1: h.h1,
        h2: h.h2,
        euler_characteristic: space.complex.euler_characteristic()?,
    };
    Ok(out.emit(&record, || {
        format!(
            "H₀({c}) = {}\nH₁({c}) = {}\nH₂({c}) = {}\nχ = {}\n",
            record.h0,
            record.h1,
            record.h2,
            record.euler_characteristic,
            c = record.complex
        )
        .replace('₀', "_0")
        .replace('₁', "_1")
        .replace('₂', "_2")
    }))
}

#[derive(Serialize)]
struct ValidationRecord {
    #[serde(flatten)]
    report: gbundle::cw::ValidationReport,
    fundamental_group: String,
}

fn validate_cmd(space: &SpaceArgs, out: OutputArgs) -> Res {
    let space = space.resolve()?;
    let report = space.complex.validate()?;
    let fundamental_group = space.complex.fundamental_group_presentation()?.to_string();
    let record = ValidationRecord { report, fundamental_group };
    Ok(out.emit(&record, || {
        let r = &record.report;
        format!(
            "valid: {} ({} vertices, {} edges, {} faces, χ = {})\nπ₁ = {}\n",
            r.name, r.vertices, r.edges, r.faces, r.euler_characteristic, record.fundamental_group
        )
    }))
}

#[derive(Serialize)]
struct SurfaceRecord {
    surface: String,
    coefficients: FgAbelianGroup,
    closed_form: FgAbelianGroup,
    engine: FgAbelianGroup,
    agreement: bool,
}

fn surface_cmd(shape: StandardSpace, coeffs: &CoefficientArgs, out: OutputArgs) -> Res {
    let surface = ClosedSurface::from_standard(shape)
        .ok_or_else(|| Failure(format!("{shape} is not a closed surface")))?;
    let pi = match coeffs.split() {
        (Some(g), _) => g.pi1.clone(),
        (_, Some(pi)) => pi.clone(),
        _ => unreachable!("clap enforces one coefficient source"),
    };
    let closed_form = surface_closed_form(surface, &pi)?;
    let engine = cohomology_uct(&shape.build()?, &pi, 2)?.group;
    let record = SurfaceRecord {
        surface: shape.to_string(),
        agreement: closed_form == engine,
        coefficients: pi,
        closed_form,
        engine,
    };
    if !record.agreement {
        return Err(Failure(format!(
            "closed form {} disagrees with engine {}",
            record.closed_form, record.engine
        )));
    }
    Ok(out.emit(&record, || {
        let rule = match surface {
            ClosedSurface::Orientable { .. } => "orientable: H² = π",
            ClosedSurface::NonOrientable { .. } => "non-orientable: H² = π/2π",
        };
        format!(
            "H²({}; {}) = {}  [{rule}; engine agrees]\n",
            record.surface, record.coefficients, record.closed_form
        )
    }))
}

#[derive(Serialize)]
struct SphereRecord<'a> {
    group: &'a str,
    degree: u32,
    classified_group: FgAbelianGroup,
}

fn sphere_cmd(group: &GroupDescriptor, degree: u32, out: OutputArgs) -> Res {
    let classified_group = classify_sphere(group, degree)?;
    let record = SphereRecord { group: &group.name, degree, classified_group };
    Ok(out.emit(&record, || {
        let source = if degree == 1 { "π₀(G)" } else { "π₁(G)" };
        format!("𝓑_{}(S^{degree}) ≅ {} = {source}\n", group.name, record.classified_group)
    }))
}

fn not_applicable(subject: String, reason: impl ToString) -> FiniteCheck {
    FiniteCheck::NotApplicable { subject, reason: reason.to_string() }
}

/// Refusals to enumerate are reported, not fatal.
fn soft(subject: String, r: Result<oracle::OracleReport, OracleError>) -> Result<FiniteCheck, Failure> {
    match r {
        Ok(rep) => Ok(FiniteCheck::Compared(rep)),
        Err(e @ (OracleError::EnumerationTooLarge { .. }
        | OracleError::InfiniteTarget(_)
        | OracleError::Precondition(_))) => Ok(not_applicable(subject, e)),
        Err(e) => Err(e.into()),
    }
}

fn oracle_cmd(
    space: &SpaceArgs,
    coeffs: &CoefficientArgs,
    out: OutputArgs,
) -> Result<Result<String, Disagreement>, Failure> {
    let space = space.resolve()?;
    let m = &space.complex;
    m.validate()?;
    let mut checks = Vec::new();
    let cohomology_checks = |pi: &FgAbelianGroup, checks: &mut Vec<FiniteCheck>| -> Result<(), Failure> {
        if pi.is_trivial() {
            return Ok(());
        }
        checks.extend(oracle::uct_vs_direct(m, pi)?.into_iter().map(FiniteCheck::Compared));
        let subject = format!("|H¹({}; {pi})| vs |Hom(π₁, {pi})|", m.name);
        if pi.is_finite() {
            checks.push(soft(subject, oracle::h1_hom_counting(m, pi))?);
        }
        Ok(())
    };
    match coeffs.split() {
        (Some(g), _) => {
            gbundle::classifier::check_hypotheses(g)?;
            cohomology_checks(&g.pi1, &mut checks)?;
            cohomology_checks(&g.pi0, &mut checks)?;
            let subject = format!("|𝓑_{}({})| by enumeration vs closed forms", g.name, m.name);
            checks.push(match oracle::finite_class_enumeration(m, space.shape, g) {
                Ok(check) => check,
                Err(e) => soft(subject, Err(e))?,
            });
        }
        (_, Some(pi)) => cohomology_checks(pi, &mut checks)?,
        _ => unreachable!("clap enforces one coefficient source"),
    }

    let compared: Vec<_> = checks
        .iter()
        .filter_map(|c| match c {
            FiniteCheck::Compared(r) => Some(r),
            FiniteCheck::NotApplicable { .. } => None,
        })
        .collect();
    let failed = compared.iter().filter(|r| !r.agreement).count();
    let text = out.emit(&checks, || {
        let mut s = String::new();
        for c in &checks {
            let _ = match c {
                FiniteCheck::Compared(r) => writeln!(
                    s,
                    "{:<9} {}: engine {}, oracle {}",
                    if r.agreement { "agree" } else { "DISAGREE" },
                    r.subject,
                    r.engine_value,
                    r.oracle_value
                ),
                FiniteCheck::NotApplicable { subject, reason } => writeln!(s, "{:<9} {subject}: {reason}", "skipped"),
            };
        }
        let _ = writeln!(s, "{} of {} comparisons agree", compared.len() - failed, compared.len());
        s
    });
    Ok(if failed == 0 { Ok(text) } else { Err(Disagreement(text)) })
}

#[derive(Serialize)]
struct CatalogRecord<'a> {
    family: &'a str,
    example: String,
    pi0: FgAbelianGroup,
    pi1: FgAbelianGroup,
    pi0_discrete: bool,
}

fn catalog_cmd(out: OutputArgs) -> String {
    let entries = catalog_entries();
    let records: Vec<_> = entries
        .iter()
        .map(|(family, g)| CatalogRecord {
            family,
            example: g.name.clone(),
            pi0: g.pi0.clone(),
            pi1: g.pi1.clone(),
            pi0_discrete: g.pi0_discrete,
        })
        .collect();
    out.emit(&records, || {
        let mut s = String::new();
        for r in &records {
            let _ = writeln!(s, "{:<38} π₀ = {:<6} π₁ = {}", r.family, r.pi0.to_string(), r.pi1);
        }
        s.push_str("products: A x B; covering quotients: G~/(Z/m); explicit: {\"pi0\":..,\"pi1\":..,\"pi0_discrete\":..,\"trivial_action\":..}\n");
        s
    })
}
