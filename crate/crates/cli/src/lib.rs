//! Command-line front end: reads polygons and curves as JSON, writes
//! reports as JSON with the invocation embedded for reproducibility.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 validation error,
//! 3 a hypothesis or characteristic gate.

pub mod dto;
pub mod svg;

use clap::{Args, Parser, Subcommand};
use dto::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use tropsev::arith::IVec;
use tropsev::enumeration::{caporaso_harris_oracle, count_with_multiplicity, random_curve_through, stretched_config};
use tropsev::floors;
use tropsev::moves::{self, genus_reduction_path, MoveCertificate, Terminal};
use tropsev::polygon::{hypothesis_report, severi_dimension, HypothesisCheck, LatticePolygon, TangencyProfile};
use tropsev::rational::{generic_parametrization, AlgebraicParameter};
use tropsev::realizability::{find_special_subgraphs, realizability_filter};
use tropsev::tropical::Curve;
use tropsev::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Retries after the requested seed when parameters are degenerate.
pub const RATIONAL_RETRIES: u64 = 5;

/// Curves with more interior points than this are only counted with
/// `--long` or `TROPSEV_LONG_TESTS=1`.
pub const SHORT_COUNT_INTERIOR: usize = 2;

#[derive(Parser, Debug)]
#[command(name = "tropsev", version, about = "Tropical curves on h-transverse polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Polygon analysis.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Checks on a tropical curve.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Lower the genus of a curve to zero by explicit moves.
    Reduce(ReduceArgs),
    /// Count curves through stretched points.
    Count(CountArgs),
    /// Rational curves given by boundary parameters.
    #[command(subcommand)]
    Rational(RationalCmd),
    /// Render a curve, or every state of a certificate, as SVG.
    Plot(PlotArgs),
}

#[derive(Subcommand, Debug)]
enum PolygonCmd {
    Analyze {
        file: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = 0)]
        genus: i64,
        #[arg(long)]
        profile: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    Check {
        file: PathBuf,
        #[arg(long)]
        polygon: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long)]
    genus: usize,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start from this curve instead of one through seeded stretched points.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Directory for one SVG per state.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long)]
    genus: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    long: bool,
}

#[derive(Subcommand, Debug)]
enum RationalCmd {
    NodalCheck {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// A curve or a move certificate.
    file: PathBuf,
    /// Output file for a curve, directory for a certificate.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub options: BTreeMap<String, Value>,
    pub version: String,
}

impl Manifest {
    fn new(command: &str, inputs: &[&Path], seed: Option<u64>) -> Self {
        Manifest {
            command: command.into(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            seed,
            options: BTreeMap::new(),
            version: VERSION.into(),
        }
    }

    fn opt(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.options.insert(k.into(), v.into());
        self
    }
}

/// Process outcome, kept in memory so tests can inspect it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core(Manifest, Error),
    Invalid(String),
    /// A report whose checks failed.
    Rejected(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run<T> = std::result::Result<T, Failure>;

trait Ctx<T> {
    fn ctx(self, m: &Manifest) -> Run<T>;
}

impl<T> Ctx<T> for tropsev::Result<T> {
    fn ctx(self, m: &Manifest) -> Run<T> {
        self.map_err(|e| Failure::Core(m.clone(), e))
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Run<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

fn load_polygon(path: &Path, m: &Manifest) -> Run<LatticePolygon> {
    read_json::<PolygonDto>(path)?.get().ctx(m)
}

fn load_profile(path: Option<&PathBuf>, p: &LatticePolygon, m: &Manifest) -> Run<TangencyProfile> {
    match path {
        Some(f) => {
            let profile = read_json::<ProfileDto>(f)?.get();
            profile.validate(p).ctx(m)?;
            Ok(profile)
        }
        None => Ok(TangencyProfile::trivial(p)),
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Invalid(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("invalid input: {msg}\n") },
        Err(Failure::Rejected(stdout)) => Output { code: 2, stdout, stderr: "error: checks failed\n".into() },
        Err(Failure::Core(manifest, e)) => {
            let err = ErrorDto::of(&e);
            let code = if err.gate { 3 } else { 2 };
            let body = serde_json::json!({ "manifest": manifest, "error": err });
            Output { code, stdout: to_json(&body), stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cmd: Cmd) -> Run<String> {
    match cmd {
        Cmd::Polygon(PolygonCmd::Analyze { file, characteristic, genus, profile }) => {
            polygon_analyze(&file, characteristic, genus, profile.as_ref())
        }
        Cmd::Curve(CurveCmd::Check { file, polygon }) => curve_check(&file, polygon.as_deref()),
        Cmd::Reduce(a) => reduce(&a),
        Cmd::Count(a) => count(&a),
        Cmd::Rational(RationalCmd::NodalCheck { polygon, profile, seed }) => nodal_check(&polygon, profile.as_ref(), seed),
        Cmd::Plot(a) => plot(&a),
    }
}

// ---------------------------------------------------------------------------
// polygon analyze

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideDto {
    pub tail: IVec,
    pub head: IVec,
    pub direction: IVec,
    pub outer_normal: IVec,
    pub lattice_length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDto {
    pub holds: bool,
    pub violations: Vec<String>,
    pub partial: bool,
}

impl CheckDto {
    fn of(c: &HypothesisCheck) -> Self {
        CheckDto { holds: c.holds, violations: c.violations.clone(), partial: c.partial }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesesDto {
    pub characteristic: u64,
    pub genus: i64,
    pub normal_sublattice_index: Option<u64>,
    pub monodromy_threshold: i64,
    pub main: CheckDto,
    pub zariski: CheckDto,
    pub monodromy: CheckDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonReport {
    pub manifest: Manifest,
    pub polygon: PolygonDto,
    pub sides: Vec<SideDto>,
    pub profile: ProfileDto,
    pub h_transverse: bool,
    /// A unimodular change of coordinates making the polygon h-transverse.
    pub h_transverse_coordinates: Option<[[i64; 2]; 2]>,
    pub width: Option<i64>,
    pub height: i64,
    pub interior_points: usize,
    pub severi_dimension: i64,
    pub hypotheses: Option<HypothesesDto>,
}

fn polygon_analyze(file: &Path, characteristic: u64, genus: i64, profile: Option<&PathBuf>) -> Run<String> {
    let mut inputs = vec![file];
    inputs.extend(profile.map(|p| p.as_path()));
    let m = Manifest::new("polygon analyze", &inputs, None).opt("char", characteristic).opt("genus", genus);
    let p = load_polygon(file, &m)?;
    let prof = load_profile(profile, &p, &m)?;
    let hypotheses = if p.is_h_transverse() {
        let r = hypothesis_report(&p, &prof, genus, characteristic).ctx(&m)?;
        Some(HypothesesDto {
            characteristic: r.characteristic,
            genus: r.genus,
            normal_sublattice_index: r.normal_sublattice_index,
            monodromy_threshold: r.monodromy_threshold,
            main: CheckDto::of(&r.main),
            zariski: CheckDto::of(&r.zariski),
            monodromy: CheckDto::of(&r.monodromy),
        })
    } else {
        None
    };
    let report = PolygonReport {
        polygon: PolygonDto::of(&p),
        sides: p
            .sides()
            .iter()
            .map(|s| SideDto {
                tail: s.tail,
                head: s.head,
                direction: s.primitive_direction,
                outer_normal: s.primitive_outer_normal,
                lattice_length: s.lattice_length,
            })
            .collect(),
        profile: ProfileDto::of(&prof),
        h_transverse: p.is_h_transverse(),
        h_transverse_coordinates: p.h_transverse_coordinates(),
        width: p.width().ok(),
        height: p.height(),
        interior_points: p.interior_lattice_points().len(),
        severi_dimension: severi_dimension(&prof, genus),
        hypotheses,
        manifest: m,
    };
    Ok(to_json(&report))
}

// ---------------------------------------------------------------------------
// curve check

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDto {
    pub special: String,
    pub elevator_edges: Vec<usize>,
    pub lower: Rat,
    pub upper: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub manifest: Manifest,
    pub ok: bool,
    pub error: Option<ErrorDto>,
    pub genus: i64,
    pub connected: bool,
    pub balanced: bool,
    pub stable: bool,
    pub degree: Vec<IVec>,
    pub floor_decomposed: bool,
    pub floors: Option<usize>,
    pub vertical_complexity: Option<usize>,
    pub special_subgraphs: Vec<String>,
    pub violations: Vec<ViolationDto>,
    pub dual: Option<bool>,
    pub width: Option<i64>,
    pub max_elevator_multiplicity: Option<i64>,
    pub width_bound: Option<bool>,
}

fn curve_check(file: &Path, polygon: Option<&Path>) -> Run<String> {
    let mut inputs = vec![file];
    inputs.extend(polygon);
    let m = Manifest::new("curve check", &inputs, None);
    let c = read_json::<CurveDto>(file)?.get().ctx(&m)?;
    let p = polygon.map(|f| load_polygon(f, &m)).transpose()?;
    let mut r = CurveReport {
        manifest: m,
        ok: true,
        error: c.validate().err().map(|e| ErrorDto::of(&e)),
        genus: c.genus(),
        connected: c.is_connected(),
        balanced: c.is_balanced(),
        stable: c.is_stable(),
        degree: c.degree(),
        floor_decomposed: floors::is_floor_decomposed(&c),
        floors: None,
        vertical_complexity: None,
        special_subgraphs: find_special_subgraphs(&c).iter().map(|s| format!("{:?}", s.kind)).collect(),
        violations: Vec::new(),
        dual: p.as_ref().map(|p| c.is_dual_to(p)),
        width: p.as_ref().and_then(|p| p.width().ok()),
        max_elevator_multiplicity: None,
        width_bound: None,
    };
    let fail = |r: &mut CurveReport, e: Error| {
        r.error.get_or_insert(ErrorDto::of(&e));
    };
    if r.error.is_none() && r.floor_decomposed {
        match floors::decompose(&c) {
            Ok(d) => r.floors = Some(d.floors.len()),
            Err(e) => fail(&mut r, e),
        }
        match floors::vertical_complexity(&c) {
            Ok(v) => r.vertical_complexity = v,
            Err(e) => fail(&mut r, e),
        }
        match realizability_filter(&c) {
            Ok(vs) => {
                r.violations = vs
                    .iter()
                    .map(|v| ViolationDto {
                        special: format!("{:?}", v.special.kind),
                        elevator_edges: v.elevator.edges.iter().copied().collect(),
                        lower: Rat::of(&v.lower),
                        upper: Rat::of(&v.upper),
                    })
                    .collect()
            }
            Err(e) => fail(&mut r, e),
        }
        if let (Some(p), Some(true)) = (&p, r.dual) {
            match floors::elevator_multiplicity_bound_check(&c, p) {
                Ok((holds, cert)) => {
                    r.width_bound = Some(holds);
                    r.max_elevator_multiplicity = Some(cert.max_elevator_multiplicity);
                }
                Err(e) => fail(&mut r, e),
            }
        }
    }
    r.ok = r.error.is_none()
        && r.connected
        && r.stable
        && r.violations.is_empty()
        && r.dual != Some(false)
        && r.width_bound != Some(false);
    let out = to_json(&r);
    if r.ok {
        Ok(out)
    } else {
        Err(Failure::Rejected(out))
    }
}

// ---------------------------------------------------------------------------
// reduce

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSummary {
    pub case: CaseDto,
    pub kappa: Option<u64>,
    pub restarts: usize,
    pub reduced: CurveDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub manifest: Manifest,
    pub start: CurveDto,
    pub genera: Vec<i64>,
    pub steps: Vec<StepSummary>,
    pub certificates: Vec<CertificateDto>,
    pub replayed: bool,
    pub snapshots: Vec<String>,
}

fn replay_any(cert: &MoveCertificate, p: &LatticePolygon) -> tropsev::Result<Curve> {
    match cert.terminal {
        Terminal::Stretched => moves::replay_stretch(cert),
        _ => moves::replay(cert, p),
    }
}

fn write_snapshots(dir: &Path, prefix: &str, cert: &MoveCertificate, m: &Manifest) -> Run<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for (j, c) in moves::snapshots(cert).ctx(m)?.iter().enumerate() {
        let name = format!("{prefix}step-{j:03}.svg");
        std::fs::write(dir.join(&name), svg::render_svg(c))?;
        names.push(name);
    }
    Ok(names)
}

fn reduce(a: &ReduceArgs) -> Run<String> {
    let mut inputs = vec![a.polygon.as_path()];
    inputs.extend(a.curve.as_deref());
    let m = Manifest::new("reduce", &inputs, Some(a.seed)).opt("genus", a.genus).opt("char", a.characteristic);
    let p = load_polygon(&a.polygon, &m)?;
    let start = match &a.curve {
        Some(f) => {
            let c = read_json::<CurveDto>(f)?.get().ctx(&m)?;
            c.validate().ctx(&m)?;
            if c.genus() != a.genus as i64 {
                return Err(Failure::Invalid(format!("curve has genus {}, not {}", c.genus(), a.genus)));
            }
            c
        }
        None => {
            let prof = TangencyProfile::trivial(&p);
            let config = stretched_config(&p, &prof, a.genus, a.seed).ctx(&m)?;
            random_curve_through(&p, &prof, a.genus, &config, a.seed)
                .ctx(&m)?
                .ok_or_else(|| Failure::Core(m.clone(), Error::SearchExhausted("no curve through the points".into())))?
        }
    };
    let path = genus_reduction_path(&start, &p, a.characteristic).ctx(&m)?;
    let mut replayed = true;
    for cert in &path.certificates {
        replayed &= replay_any(cert, &p).is_ok();
    }
    let mut snapshots = Vec::new();
    if let Some(dir) = &a.svg {
        for (i, cert) in path.certificates.iter().enumerate() {
            snapshots.extend(write_snapshots(dir, &format!("cert-{i:03}-"), cert, &m)?);
        }
    }
    let report = ReduceReport {
        start: CurveDto::of(&start),
        genera: path.curves.iter().map(Curve::genus).collect(),
        steps: path
            .steps
            .iter()
            .map(|s| StepSummary {
                case: CaseDto::of(s.case),
                kappa: s.kappa,
                restarts: s.restarts.len(),
                reduced: CurveDto::of(&s.reduced),
            })
            .collect(),
        certificates: path.certificates.iter().map(CertificateDto::of).collect(),
        replayed,
        snapshots,
        manifest: m,
    };
    Ok(to_json(&report))
}

// ---------------------------------------------------------------------------
// count

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDto {
    pub manifest: Manifest,
    pub total: u64,
    pub multiplicities: Vec<u64>,
    pub curves: Vec<CurveDto>,
    pub points: Vec<[Rat; 2]>,
    pub threshold: Rat,
    pub multiplicity_rule: String,
    /// Severi degree from the recursion, for triangles.
    pub oracle: Option<u64>,
}

fn standard_triangle_degree(p: &LatticePolygon) -> Option<u32> {
    let v = p.vertices();
    let d = v.iter().map(|x| x[0]).max()?;
    (d > 0 && *p == LatticePolygon::triangle(d)).then_some(d as u32)
}

fn count(a: &CountArgs) -> Run<String> {
    let long = a.long || std::env::var("TROPSEV_LONG_TESTS").is_ok_and(|v| v == "1");
    let m = Manifest::new("count", &[a.polygon.as_path()], Some(a.seed)).opt("genus", a.genus).opt("long", long);
    let p = load_polygon(&a.polygon, &m)?;
    if !long && p.interior_lattice_points().len() > SHORT_COUNT_INTERIOR {
        return Err(Failure::Core(m, Error::OutOfRange("large polygon; pass --long".into())));
    }
    let prof = TangencyProfile::trivial(&p);
    let config = stretched_config(&p, &prof, a.genus, a.seed).ctx(&m)?;
    let r = count_with_multiplicity(&p, &prof, a.genus, &config).ctx(&m)?;
    let oracle = standard_triangle_degree(&p)
        .and_then(|d| caporaso_harris_oracle(d, a.genus as u32).ok())
        .map(|n| n as u64);
    let report = CountDto {
        total: r.total,
        multiplicities: r.multiplicities.clone(),
        curves: r.curves.iter().map(CurveDto::of).collect(),
        points: config.points.iter().map(|x| [Rat::of(&x[0]), Rat::of(&x[1])]).collect(),
        threshold: Rat::of(&r.threshold),
        multiplicity_rule: r.multiplicity_rule.into(),
        oracle,
        manifest: m,
    };
    Ok(to_json(&report))
}

// ---------------------------------------------------------------------------
// rational nodal-check

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterDto {
    pub re: f64,
    pub im: f64,
    /// Isolating interval for a real parameter.
    pub interval: Option<[Rat; 2]>,
}

impl ParameterDto {
    fn of(a: &AlgebraicParameter) -> Self {
        ParameterDto {
            re: round(a.approx.re),
            im: round(a.approx.im),
            interval: a.interval.as_ref().map(|(lo, hi)| [Rat::of(lo), Rat::of(hi)]),
        }
    }
}

fn round(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeDto {
    pub t1: ParameterDto,
    pub t2: ParameterDto,
    /// `[[re, im], [re, im]]` for the two coordinates.
    pub image: [[f64; 2]; 2],
    pub transverse: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalReport {
    pub manifest: Manifest,
    pub seed_used: u64,
    pub parameters: Vec<Vec<Rat>>,
    pub character: [Rat; 2],
    /// Coefficients of the eliminant, constant term first.
    pub eliminant: Vec<Rat>,
    pub node_count: usize,
    pub interior_count: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    pub all_transverse: bool,
    pub nodes: Vec<NodeDto>,
}

fn nodal_check(polygon: &Path, profile: Option<&PathBuf>, seed: u64) -> Run<String> {
    let mut inputs = vec![polygon];
    inputs.extend(profile.map(|p| p.as_path()));
    let m = Manifest::new("rational nodal-check", &inputs, Some(seed)).opt("retries", RATIONAL_RETRIES);
    let p = load_polygon(polygon, &m)?;
    let prof = load_profile(profile, &p, &m)?;
    let (r, rep, used) = generic_parametrization(&p, &prof, seed, RATIONAL_RETRIES).ctx(&m)?;
    let interior = p.interior_lattice_points().len();
    let report = NodalReport {
        seed_used: used,
        parameters: r.params.iter().map(|s| s.iter().map(Rat::of).collect()).collect(),
        character: [Rat::of(&r.character[0]), Rat::of(&r.character[1])],
        eliminant: rep.eliminant.coeffs().iter().map(Rat::of).collect(),
        node_count: rep.count,
        interior_count: interior,
        matches: rep.count == interior,
        all_transverse: rep.all_transverse,
        nodes: rep
            .nodes
            .iter()
            .map(|n| NodeDto {
                t1: ParameterDto::of(&n.t1),
                t2: ParameterDto::of(&n.t2),
                image: n.image.map(|z| [round(z.re), round(z.im)]),
                transverse: n.transverse,
            })
            .collect(),
        manifest: m,
    };
    Ok(to_json(&report))
}

// ---------------------------------------------------------------------------
// plot

fn plot(a: &PlotArgs) -> Run<String> {
    let m = Manifest::new("plot", &[a.file.as_path()], None);
    let text = std::fs::read_to_string(&a.file).map_err(|e| Failure::Usage(format!("{}: {e}", a.file.display())))?;
    if let Ok(cert) = serde_json::from_str::<CertificateDto>(&text) {
        let cert = cert.get().ctx(&m)?;
        let dir = a.output.as_ref().ok_or_else(|| Failure::Usage("a certificate needs -o DIR".into()))?;
        let names = write_snapshots(dir, "", &cert, &m)?;
        return Ok(to_json(&serde_json::json!({ "manifest": m, "files": names })));
    }
    let c = serde_json::from_str::<CurveDto>(&text)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", a.file.display())))?
        .get()
        .ctx(&m)?;
    c.validate().ctx(&m)?;
    let doc = svg::render_svg(&c);
    match &a.output {
        Some(f) => {
            std::fs::write(f, doc)?;
            Ok(String::new())
        }
        None => Ok(doc),
    }
}
