//! Command-line driver: builds complexes, runs checks, writes reports and
//! exports. The binary only parses flags into a [`RunConfig`].
//!
//! Exit codes: 0 when every requested check passes, 1 when one fails, 2 on
//! invalid input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{ChainComplex, Degree, FilteredComplex, PageTable};
use crate::fiber::{build_fiber_with_cap, FiberComplex, FiberError, MultiGraph, DEFAULT_FIBER_CAP};
use crate::polytopes::{
    build_perm_with_cap, build_simplex, perm_to_simplex, PolytopeError, DEFAULT_PERM_CAP,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Permutohedra always included in a suite run.
pub const SUITE_PERM_MAX: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Perm,
    Simplex,
    Fiber,
    Suite,
}

/// Which verifications to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    pub d_squared: bool,
    pub homology: bool,
    pub maps: bool,
    pub koszul: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        d_squared: true,
        homology: true,
        maps: true,
        koszul: true,
    };
}

impl FromStr for Checks {
    type Err = String;

    /// `all`, `none`, or a comma list of `d2`, `homology`, `maps`, `koszul`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut checks = Checks::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "all" => checks = Checks::ALL,
                "none" => {}
                "d2" => checks.d_squared = true,
                "homology" => checks.homology = true,
                "maps" => checks.maps = true,
                "koszul" => checks.koszul = true,
                other => return Err(format!("unknown check {other:?}")),
            }
        }
        Ok(checks)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    /// Edge-list file for `fiber`, corpus directory for `suite`.
    pub graph: Option<PathBuf>,
    /// Largest page index to report.
    pub pages: usize,
    pub checks: Checks,
    /// Directory receiving exports.
    pub out: Option<PathBuf>,
    pub cap: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            n: None,
            graph: None,
            pages: 2,
            checks: Checks::ALL,
            out: None,
            cap: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error("cannot write {path}: {message}")]
    Export { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// Everything computed for one complex.
#[derive(Clone, Debug)]
pub struct ObjectReport {
    pub object: String,
    pub dims: BTreeMap<Degree, usize>,
    pub homology: Option<BTreeMap<Degree, usize>>,
    pub pages: Vec<PageTable>,
    /// `(name, passed, detail)`.
    pub checks: Vec<(String, bool, String)>,
    complex_json: Option<String>,
    levels_json: Option<String>,
}

impl ObjectReport {
    fn new(object: &str, filtered: &FilteredComplex) -> Self {
        let c = filtered.complex();
        ObjectReport {
            object: object.to_string(),
            dims: c.degrees().map(|r| (r, c.dim(r))).collect(),
            homology: None,
            pages: Vec::new(),
            checks: Vec::new(),
            complex_json: None,
            levels_json: None,
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push((name.to_string(), passed, detail.into()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "== {}", self.object);
        let _ = writeln!(s, "dims (degree:dim): {}", format_map(&self.dims));
        if let Some(h) = &self.homology {
            let _ = writeln!(s, "homology (degree:dim): {}", format_map(h));
        }
        for page in &self.pages {
            let cells: Vec<String> = page
                .dims
                .iter()
                .map(|((p, q), d)| format!("({p},{q}):{d}"))
                .collect();
            let _ = writeln!(s, "E^{} (p,q):dim: {}", page.r, cells.join(" "));
        }
        for (name, ok, detail) in &self.checks {
            let verdict = if *ok { "pass" } else { "FAIL" };
            if detail.is_empty() {
                let _ = writeln!(s, "check {name}: {verdict}");
            } else {
                let _ = writeln!(s, "check {name}: {verdict} ({detail})");
            }
        }
        s
    }
}

fn format_map(m: &BTreeMap<Degree, usize>) -> String {
    if m.is_empty() {
        return "(zero)".to_string();
    }
    m.iter()
        .map(|(r, d)| format!("{r}:{d}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn pages_of(filtered: &FilteredComplex, max: usize) -> Vec<PageTable> {
    let ss = filtered.spectral_sequence();
    (0..=max).map(|r| ss.page(r)).collect()
}

/// Runs one command and reports; never panics on bad input.
pub fn run(config: &RunConfig) -> Outcome {
    let result = match config.command {
        Command::Perm => run_perm(config).map(|r| vec![r]),
        Command::Simplex => run_simplex(config).map(|r| vec![r]),
        Command::Fiber => run_fiber_file(config).map(|r| vec![r]),
        Command::Suite => return run_suite(config),
    };
    match result {
        Ok(reports) => finish(config, &reports, None),
        Err(e) => invalid(e),
    }
}

fn invalid(e: CliError) -> Outcome {
    Outcome {
        code: EXIT_INVALID,
        report: format!("error: {e}\n"),
    }
}

fn finish(config: &RunConfig, reports: &[ObjectReport], extra: Option<String>) -> Outcome {
    let mut text: String = reports.iter().map(ObjectReport::render).collect();
    if let Some(extra) = extra {
        text.push_str(&extra);
    }
    let passed = reports.iter().all(ObjectReport::passed);
    let _ = writeln!(text, "overall: {}", if passed { "pass" } else { "FAIL" });
    if let Some(dir) = &config.out {
        if let Err(e) = export(dir, reports, &text) {
            return invalid(e);
        }
    }
    Outcome {
        code: if passed { EXIT_PASS } else { EXIT_FAIL },
        report: text,
    }
}

fn require_n(config: &RunConfig, default_cap: usize) -> Result<(usize, usize), CliError> {
    let n = config
        .n
        .ok_or_else(|| CliError::Invalid("--n is required".to_string()))?;
    let cap = config.cap.unwrap_or(default_cap);
    if n == 0 || n > cap {
        return Err(CliError::Invalid(format!("n = {n} is outside 1..={cap}")));
    }
    Ok((n, cap))
}

fn run_perm(config: &RunConfig) -> Result<ObjectReport, CliError> {
    let (n, cap) = require_n(config, DEFAULT_PERM_CAP)?;
    Ok(check_perm(
        n,
        cap,
        config.pages,
        config.checks,
        config.out.is_some(),
    )?)
}

/// All requested checks on `C_*(P_n)`. `koszul` checks the page pattern.
pub fn check_perm(
    n: usize,
    cap: usize,
    pages: usize,
    checks: Checks,
    keep_json: bool,
) -> Result<ObjectReport, PolytopeError> {
    let perm = build_perm_with_cap(n, cap)?;
    let mut report = ObjectReport::new(&format!("P_{n}"), perm.filtered());
    common_checks(&mut report, perm.filtered(), checks, 0);
    report.pages = pages_of(
        perm.filtered(),
        pages.max(if checks.koszul { 2 } else { 0 }),
    );
    if checks.koszul {
        page_pattern(&mut report, n);
    }
    report.pages.truncate(pages + 1);
    if checks.maps {
        let simplex = build_simplex(n)?;
        let f = perm_to_simplex(&perm, &simplex)?;
        map_checks(
            &mut report,
            "perm_to_simplex",
            &f,
            perm.filtered(),
            simplex.filtered(),
        );
    }
    if keep_json {
        keep(&mut report, perm.filtered());
    }
    Ok(report)
}

fn run_simplex(config: &RunConfig) -> Result<ObjectReport, CliError> {
    let (n, _) = require_n(config, crate::topartition::MAX_N)?;
    let simplex = build_simplex(n)?;
    let mut report = ObjectReport::new(&format!("simplex_{n}"), simplex.filtered());
    common_checks(&mut report, simplex.filtered(), config.checks, 0);
    report.pages = pages_of(simplex.filtered(), config.pages);
    if config.out.is_some() {
        keep(&mut report, simplex.filtered());
    }
    Ok(report)
}

fn run_fiber_file(config: &RunConfig) -> Result<ObjectReport, CliError> {
    let path = config
        .graph
        .as_ref()
        .ok_or_else(|| CliError::Invalid("--graph is required".to_string()))?;
    let g = MultiGraph::read(path).map_err(|e| CliError::Invalid(e.to_string()))?;
    let cap = config.cap.unwrap_or(DEFAULT_FIBER_CAP);
    if g.edge_count() > cap {
        return Err(CliError::Invalid(format!(
            "graph has {} edges, above the cap of {cap}",
            g.edge_count()
        )));
    }
    let name = path
        .file_stem()
        .map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned());
    check_fiber(
        &name,
        &g,
        cap,
        config.pages,
        config.checks,
        config.out.is_some(),
    )
}

/// All requested checks on the fiber of `g`.
pub fn check_fiber(
    name: &str,
    g: &MultiGraph,
    cap: usize,
    pages: usize,
    checks: Checks,
    keep_json: bool,
) -> Result<ObjectReport, CliError> {
    let fiber = build_fiber_with_cap(g, cap)?;
    let n = g.edge_count();
    let mut report = ObjectReport::new(name, fiber.filtered());
    common_checks(&mut report, fiber.filtered(), checks, -(n as Degree));
    if checks.koszul {
        let k = fiber.koszul_check()?;
        let detail = match k.e1_row {
            Some(q) => format!("E^1 binomial along q = {q}"),
            None => "E^1 is not a single binomial row".to_string(),
        };
        report.check("koszul_e1", k.e1_row.is_some(), detail);
        report.check("koszul_e2", k.e2_ok, "E^2 a single class at p = 1");
        report.check(
            "koszul_homology",
            k.homology_ok,
            format!("one class in degree -{n}"),
        );
        report.homology.get_or_insert(k.homology);
        report.pages = k.pages;
        if pages > 2 {
            report.pages = pages_of(fiber.filtered(), pages);
        }
        report.pages.truncate(pages + 1);
    } else {
        report.pages = pages_of(fiber.filtered(), pages);
    }
    if checks.maps {
        fiber_map_checks(&mut report, &fiber, cap)?;
    }
    if keep_json {
        keep(&mut report, fiber.filtered());
    }
    Ok(report)
}

fn fiber_map_checks(
    report: &mut ObjectReport,
    fiber: &FiberComplex,
    cap: usize,
) -> Result<(), CliError> {
    let n = fiber.n();
    let perm = build_perm_with_cap(n, cap.max(n))?;
    let simplex = build_simplex(n)?;
    let up = fiber.perm_to_fiber(&perm)?;
    let down = fiber.fiber_to_simplex(&simplex)?;
    map_checks(
        report,
        "perm_to_fiber",
        &up,
        perm.filtered(),
        fiber.filtered(),
    );
    map_checks(
        report,
        "fiber_to_simplex",
        &down,
        fiber.filtered(),
        simplex.filtered(),
    );
    let factors = up
        .then(&down)
        .map(|c| c == perm_to_simplex(&perm, &simplex).expect("blow-down builds"))
        .unwrap_or(false);
    report.check(
        "factorization",
        factors,
        "fiber_to_simplex ∘ perm_to_fiber = perm_to_simplex",
    );
    let mut bad_trees = Vec::new();
    for r in fiber.complex().degrees() {
        for t in fiber.trees(r) {
            if !fiber.push_forward_well_defined(t)?.passed() {
                bad_trees.push(t.label());
            }
        }
    }
    let degenerate = fiber.degenerate_push_forward_failures()?;
    report.check(
        "push_forward",
        bad_trees.is_empty() && degenerate.is_empty(),
        if bad_trees.is_empty() && degenerate.is_empty() {
            String::new()
        } else {
            format!("trees {bad_trees:?}, degenerate {degenerate:?}")
        },
    );
    Ok(())
}

fn common_checks(
    report: &mut ObjectReport,
    filtered: &FilteredComplex,
    checks: Checks,
    point: Degree,
) {
    let c = filtered.complex();
    if checks.d_squared {
        let d2 = c.verify_d_squared();
        let detail = d2
            .failure
            .as_ref()
            .map(|f| format!("d^2 {} -> {} = {}", f.source_label, f.target_label, f.value))
            .unwrap_or_default();
        report.check("d_squared", d2.passed(), detail);
    }
    if checks.homology || checks.koszul {
        match c.homology_dims() {
            Ok(h) => {
                if checks.homology {
                    let ok = h == BTreeMap::from([(point, 1)]);
                    report.check(
                        "homology",
                        ok,
                        format!("expected one class in degree {point}"),
                    );
                }
                report.homology = Some(h);
            }
            Err(e) => report.check("homology", false, e.to_string()),
        }
    }
}

fn page_pattern(report: &mut ObjectReport, n: usize) {
    let e1 = report.pages[1].binomial_row(n);
    let detail = e1.map_or_else(
        || "not a single binomial row".to_string(),
        |q| format!("q = {q}"),
    );
    report.check("pages_e1", e1.is_some(), detail);
    report.check(
        "pages_e2",
        report.pages[2].is_point_at(1),
        "a single class at p = 1",
    );
}

fn map_checks(
    report: &mut ObjectReport,
    name: &str,
    f: &crate::complex::ChainMap,
    source: &FilteredComplex,
    target: &FilteredComplex,
) {
    let cm = f.verify_chain_map();
    let detail = cm
        .failure
        .as_ref()
        .map(|x| {
            format!(
                "degree {} at {} -> {}",
                x.degree, x.source_label, x.target_label
            )
        })
        .unwrap_or_default();
    report.check(&format!("{name}_chain_map"), cm.passed(), detail);
    report.check(&format!("{name}_surjective"), f.is_surjective(), "");
    report.check(
        &format!("{name}_filtered"),
        f.preserves_filtration(source, target),
        "",
    );
    let quasi = f.is_quasi_isomorphism();
    report.check(
        &format!("{name}_quasi_iso"),
        matches!(quasi, Ok(true)),
        "mapping cone acyclic",
    );
}

fn keep(report: &mut ObjectReport, filtered: &FilteredComplex) {
    report.complex_json = Some(filtered.complex().to_json());
    report.levels_json = Some(filtered.levels_json());
}

/// One manifest row: expected dimension of `object` in `degree`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Deserialize, serde::Serialize)]
pub struct ManifestRow {
    pub object: String,
    pub degree: Degree,
    pub dim: usize,
}

fn read_manifest(path: &Path) -> Result<BTreeMap<String, BTreeMap<Degree, usize>>, CliError> {
    let bad = |e: String| CliError::Invalid(format!("{}: {e}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let mut manifest: BTreeMap<String, BTreeMap<Degree, usize>> = BTreeMap::new();
    for row in reader.deserialize::<ManifestRow>() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        manifest
            .entry(row.object)
            .or_default()
            .insert(row.degree, row.dim);
    }
    Ok(manifest)
}

/// Runs every check on every `*.edges` graph of the corpus directory and on
/// `P_1 .. P_6`, and compares dimensions against `manifest.csv`.
fn run_suite(config: &RunConfig) -> Outcome {
    let Some(dir) = config.graph.as_ref() else {
        return invalid(CliError::Invalid(
            "--graph <corpus dir> is required".to_string(),
        ));
    };
    let mut graphs = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "edges"))
            .collect::<Vec<_>>(),
        Err(e) => return invalid(CliError::Invalid(format!("{}: {e}", dir.display()))),
    };
    graphs.sort();
    if graphs.is_empty() {
        return invalid(CliError::Invalid(format!(
            "{} has no .edges files",
            dir.display()
        )));
    }
    let manifest = match read_manifest(&dir.join("manifest.csv")) {
        Ok(m) => m,
        Err(e) => return invalid(e),
    };
    let cap = config.cap.unwrap_or(DEFAULT_FIBER_CAP);
    let mut parsed = Vec::new();
    for path in &graphs {
        match MultiGraph::read(path) {
            Ok(g) => parsed.push((path.file_stem().unwrap().to_string_lossy().into_owned(), g)),
            Err(e) => return invalid(CliError::Invalid(e.to_string())),
        }
    }

    let mut jobs: Vec<SuiteJob> = (1..=SUITE_PERM_MAX).map(SuiteJob::Perm).collect();
    jobs.extend(parsed.into_iter().map(|(name, g)| SuiteJob::Fiber(name, g)));
    let results: Vec<Result<ObjectReport, CliError>> = jobs
        .par_iter()
        .map(|job| match job {
            SuiteJob::Perm(n) => Ok(check_perm(*n, DEFAULT_PERM_CAP, 2, Checks::ALL, false)?),
            SuiteJob::Fiber(name, g) => check_fiber(name, g, cap, 2, Checks::ALL, false),
        })
        .collect();
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(report) => reports.push(report),
            Err(e) => return invalid(e),
        }
    }
    for report in &mut reports {
        if report.object.starts_with("P_") {
            continue;
        }
        match manifest.get(&report.object) {
            None => report.check("manifest", false, "no manifest entry"),
            Some(expected) => {
                let ok = *expected == report.dims;
                let detail = if ok {
                    String::new()
                } else {
                    format!(
                        "expected {}, got {}",
                        format_map(expected),
                        format_map(&report.dims)
                    )
                };
                report.check("manifest", ok, detail);
            }
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|(_, ok, _)| !ok)
                .map(move |(name, _, _)| format!("{}:{name}", r.object))
        })
        .collect();
    let summary = if failed.is_empty() {
        format!("suite: {} objects, all checks pass\n", reports.len())
    } else {
        format!("suite: failed {}\n", failed.join(", "))
    };
    finish(config, &reports, Some(summary))
}

enum SuiteJob {
    Perm(usize),
    Fiber(String, MultiGraph),
}

/// Table `object,degree,dim`.
pub fn dims_csv(reports: &[ObjectReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["object", "degree", "dim"])
        .expect("in-memory write");
    for r in reports {
        for (deg, dim) in &r.dims {
            w.write_record([r.object.clone(), deg.to_string(), dim.to_string()])
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Table `object,r,p,q,dim`.
pub fn pages_csv(reports: &[ObjectReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["object", "r", "p", "q", "dim"])
        .expect("in-memory write");
    for report in reports {
        for page in &report.pages {
            for [r, p, q, d] in page.csv_rows() {
                w.write_record([report.object.clone(), r, p, q, d])
                    .expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Table `object,check,pass`.
pub fn checks_csv(reports: &[ObjectReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["object", "check", "pass"])
        .expect("in-memory write");
    for r in reports {
        for (name, ok, _) in &r.checks {
            w.write_record([
                r.object.as_str(),
                name.as_str(),
                if *ok { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn export(dir: &Path, reports: &[ObjectReport], text: &str) -> Result<(), CliError> {
    let err = |path: &Path, e: std::io::Error| CliError::Export {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    std::fs::create_dir_all(dir).map_err(|e| err(dir, e))?;
    let mut files: Vec<(String, String)> = vec![
        ("report.txt".to_string(), text.to_string()),
        ("dims.csv".to_string(), dims_csv(reports)),
        ("pages.csv".to_string(), pages_csv(reports)),
        ("checks.csv".to_string(), checks_csv(reports)),
    ];
    for r in reports {
        if let (Some(c), Some(l)) = (&r.complex_json, &r.levels_json) {
            files.push((format!("{}.complex.json", r.object), c.clone()));
            files.push((format!("{}.filtration.json", r.object), l.clone()));
        }
    }
    for (name, contents) in files {
        let path = dir.join(name);
        write_atomic(&path, contents.as_bytes()).map_err(|e| err(&path, e))?;
    }
    Ok(())
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Reads a complex and optional filtration back from exported JSON.
pub fn load_filtered(
    complex_json: &str,
    levels_json: &str,
) -> Result<FilteredComplex, crate::complex::IoError> {
    let c = std::sync::Arc::new(ChainComplex::from_json(complex_json)?);
    FilteredComplex::from_json(c, levels_json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_checks() {
        assert_eq!("all".parse::<Checks>().unwrap(), Checks::ALL);
        let c: Checks = "d2,koszul".parse().unwrap();
        assert!(c.d_squared && c.koszul && !c.maps && !c.homology);
        assert!("bogus".parse::<Checks>().is_err());
    }

    #[test]
    fn perm_report() {
        let mut config = RunConfig::new(Command::Perm);
        config.n = Some(4);
        let out = run(&config);
        assert_eq!(out.code, EXIT_PASS, "{}", out.report);
        assert!(out
            .report
            .contains("E^1 (p,q):dim: (1,-1):4 (2,-1):6 (3,-1):4 (4,-1):1"));
        assert!(out.report.contains("E^2 (p,q):dim: (1,-1):1\n"));
    }

    #[test]
    fn bad_n_is_invalid() {
        let mut config = RunConfig::new(Command::Perm);
        config.n = Some(9);
        assert_eq!(run(&config).code, EXIT_INVALID);
        config.n = None;
        assert_eq!(run(&config).code, EXIT_INVALID);
        config.n = Some(5);
        config.cap = Some(4);
        assert_eq!(run(&config).code, EXIT_INVALID);
    }

    #[test]
    fn fiber_report() {
        let r = check_fiber("path3", &MultiGraph::path(3), 8, 2, Checks::ALL, false).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.dims, BTreeMap::from([(-3, 5), (-2, 5), (-1, 1)]));
    }
}
