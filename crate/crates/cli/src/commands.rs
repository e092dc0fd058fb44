use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use homcat_core::hom_algebras::{
    check_adjoint_identity, check_dual_formula, check_hom_associativity, check_hom_jacobi, check_hom_poisson,
    check_representation, commutator_bracket, composition_hom_associative, composition_hom_lie, is_lie_on_image,
    sym_poisson_from_hom_lie,
};
use homcat_core::hom_algebroids::{
    action_algebroid, algebroid_to_gerstenhaber, check_action, check_algebroid, check_preserves_vector_field,
    cotangent_algebroid, first_difference, gerstenhaber_model_of, gerstenhaber_to_algebroid, line_bundle_algebroid,
};
use homcat_core::hom_gerstenhaber::{
    check_anchor_representation, check_gerstenhaber, check_graded_hom_jacobi, check_hom_leibniz,
    check_jacobiator_leibniz, check_jacobiator_skew, exterior_gerstenhaber, extract_anchor_rep, mixed_gerstenhaber,
    SampleBounds,
};
use homcat_core::poly_geometry::{bivector_pushforward_check, check_hom_poisson_manifold};
use homcat_core::random::{compatible_pair, seeded};
use homcat_core::{CheckReport, HomError, Violation};

use crate::format::{self, Structure, StructureFile};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;

/// Pairs drawn by the `composition_criterion` suite.
pub const RANDOM_PAIRS: usize = 50;

pub const CONSTRUCTIONS: [&str; 8] = [
    "composition",
    "exterior",
    "sym_poisson",
    "action",
    "line_bundle",
    "cotangent",
    "to_gerstenhaber",
    "to_algebroid",
];

#[derive(Clone, Debug)]
pub struct Options {
    pub degree_bound: u32,
    pub max_degree: usize,
    pub poly_degree: u32,
    pub seed: u64,
    pub report: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree_bound: 3,
            max_degree: 3,
            poly_degree: 1,
            seed: 0,
            report: None,
        }
    }
}

impl Options {
    fn bounds(&self) -> SampleBounds {
        SampleBounds {
            max_degree: self.max_degree,
            poly_degree: self.poly_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFile {
    pub passed: bool,
    pub evaluated: usize,
    pub failures: usize,
    pub checks: Vec<Violation>,
    pub timing_ms: u128,
}

/// Exit code, a human-readable message and the report, if a checker ran.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: u8,
    pub message: String,
    pub report: Option<ReportFile>,
}

impl Outcome {
    fn malformed(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_MALFORMED,
            message: message.into(),
            report: None,
        }
    }
}

enum Failure {
    Malformed(String),
    Axiom(String, CheckReport),
    Mismatch(String),
}

impl From<format::FormatError> for Failure {
    fn from(e: format::FormatError) -> Self {
        Failure::Malformed(e.0)
    }
}

impl From<HomError> for Failure {
    fn from(e: HomError) -> Self {
        match e {
            HomError::AxiomFailure { what, report } => Failure::Axiom(format!("{what} failed"), report),
            other => Failure::Malformed(other.to_string()),
        }
    }
}

/// Looks for `path`, then for it under `$HOMCAT_FIXTURES`, with and without
/// a `.json` suffix.
pub fn resolve(path: &Path) -> Option<PathBuf> {
    if path.is_file() {
        return Some(path.to_path_buf());
    }
    let dir = std::env::var_os("HOMCAT_FIXTURES")?;
    let base = Path::new(&dir).join(path);
    let with_ext = base.with_extension("json");
    [base, with_ext].into_iter().find(|p| p.is_file())
}

pub fn load(path: &Path) -> Result<StructureFile, format::FormatError> {
    let found = resolve(path).ok_or_else(|| format::FormatError(format!("cannot find {}", path.display())))?;
    let text = fs::read_to_string(&found)
        .map_err(|e| format::FormatError(format!("cannot read {}: {e}", found.display())))?;
    format::parse(&text)
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn finish(result: Result<(String, CheckReport), Failure>, start: Instant, opts: &Options) -> Outcome {
    let timing_ms = start.elapsed().as_millis();
    let to_file = |r: CheckReport| ReportFile {
        passed: r.passed,
        evaluated: r.evaluated,
        failures: r.failures,
        checks: r.checks,
        timing_ms,
    };
    let mut out = match result {
        Ok((msg, r)) => Outcome {
            code: if r.passed { EXIT_PASS } else { EXIT_FAIL },
            message: format!("{msg}: {}", r.summary()),
            report: Some(to_file(r)),
        },
        Err(Failure::Axiom(msg, r)) => Outcome {
            code: EXIT_FAIL,
            message: format!("{msg}: {}", r.summary()),
            report: Some(to_file(r)),
        },
        Err(Failure::Mismatch(msg)) => Outcome {
            code: EXIT_FAIL,
            message: msg,
            report: None,
        },
        Err(Failure::Malformed(msg)) => return Outcome::malformed(msg),
    };
    if let (Some(path), Some(report)) = (&opts.report, &out.report) {
        let text = serde_json::to_string_pretty(report).expect("plain data") + "\n";
        if let Err(e) = write_atomic(path, &text) {
            out = Outcome::malformed(format!("cannot write report {}: {e}", path.display()));
        }
    }
    out
}

pub fn default_suite(kind: &str) -> &'static str {
    match kind {
        "hom_lie_algebra" => "hom_lie",
        "hom_associative_algebra" => "hom_associative",
        "representation" => "representation",
        "bivector_and_map" => "hom_poisson_manifold",
        "vector_field_and_map" => "vector_field_preserved",
        "hom_lie_action" => "action",
        "hom_lie_algebroid" => "hom_lie_algebroid",
        "gerstenhaber_model" => "gerstenhaber",
        _ => "hom_poisson",
    }
}

pub fn suites(kind: &str) -> &'static [&'static str] {
    match kind {
        "hom_lie_algebra" => &[
            "hom_lie",
            "lie_on_image",
            "adjoint",
            "exterior",
            "sym_poisson",
            "dual_formula",
            "composition_criterion",
        ],
        "hom_associative_algebra" => &["hom_associative", "commutator"],
        "representation" => &["representation", "hom_lie"],
        "bivector_and_map" => &["hom_poisson_manifold", "bivector_pushforward"],
        "vector_field_and_map" => &["vector_field_preserved"],
        "hom_lie_action" => &["action"],
        "hom_lie_algebroid" => &["hom_lie_algebroid", "gerstenhaber"],
        "gerstenhaber_model" => &[
            "gerstenhaber",
            "graded_hom_jacobi",
            "hom_leibniz",
            "jacobiator",
            "anchor_representation",
        ],
        "sym_poisson_model" => &["hom_poisson", "dual_formula"],
        _ => &[],
    }
}

/// Composition criterion on the file's pair and on seeded random pairs of
/// dimension `<= 4`; every disagreement is a violation.
fn composition_criterion(pairs: Vec<(String, homcat_core::StructureConstants, homcat_core::QMatrix)>) -> Result<CheckReport, Failure> {
    let mut report = CheckReport::new();
    for (name, c, alpha) in pairs {
        let composed = check_hom_jacobi(&composition_hom_lie(&c, &alpha)?).passed;
        let on_image = is_lie_on_image(&c, &alpha)?.passed;
        report.expect_eq("composition_criterion", || vec![name.clone()], &composed, &on_image);
    }
    Ok(report)
}

fn run_suite(file: &StructureFile, suite: &str, opts: &Options) -> Result<CheckReport, Failure> {
    let bounds = opts.bounds();
    let s = &file.structure;
    let r = match (s, suite) {
        (Structure::HomLie(g), "hom_lie") | (Structure::Representation(g, _), "hom_lie") => check_hom_jacobi(g),
        (Structure::HomLie(g), "lie_on_image") => is_lie_on_image(g.bracket(), g.alpha())?,
        (Structure::HomLie(g), "adjoint") => CheckReport::concat((0..=2).map(|k| check_adjoint_identity(g, k))),
        (Structure::HomLie(g), "exterior") => check_gerstenhaber(&exterior_gerstenhaber(g)?, bounds),
        (Structure::HomLie(g), "sym_poisson") | (Structure::SymPoisson(g), "hom_poisson") => {
            check_hom_poisson(&sym_poisson_from_hom_lie(g)?, opts.degree_bound)
        }
        (Structure::HomLie(g), "dual_formula") | (Structure::SymPoisson(g), "dual_formula") => {
            check_dual_formula(g, opts.degree_bound)
        }
        (Structure::HomLie(g), "composition_criterion") => {
            let mut rng = seeded(opts.seed);
            let mut pairs = vec![(file.name.clone(), g.bracket().clone(), g.alpha().clone())];
            for k in 0..RANDOM_PAIRS {
                let (c, a) = compatible_pair(&mut rng, 1 + k % 4);
                pairs.push((format!("seed {} draw {k}", opts.seed), c, a));
            }
            composition_criterion(pairs)?
        }
        (Structure::HomAssociative(a), "hom_associative") => check_hom_associativity(a),
        (Structure::HomAssociative(a), "commutator") => check_hom_jacobi(&commutator_bracket(a)),
        (Structure::Representation(g, r), "representation") => check_representation(g, r)?,
        (Structure::BivectorAndMap(pi, phi), "hom_poisson_manifold") => check_hom_poisson_manifold(pi, phi)?,
        (Structure::BivectorAndMap(pi, phi), "bivector_pushforward") => bivector_pushforward_check(pi, phi)?,
        (Structure::VectorFieldAndMap(v, phi), "vector_field_preserved") => check_preserves_vector_field(v, phi)?,
        (Structure::Action(g, phi, delta), "action") => check_action(g, phi, delta, opts.degree_bound)?,
        (Structure::Algebroid(m), "hom_lie_algebroid") => check_algebroid(m, opts.degree_bound),
        (Structure::Algebroid(m), "gerstenhaber") => check_gerstenhaber(&gerstenhaber_model_of(m), bounds),
        (Structure::Gerstenhaber(m), "gerstenhaber") => check_gerstenhaber(m, bounds),
        (Structure::Gerstenhaber(m), "graded_hom_jacobi") => check_graded_hom_jacobi(m, bounds),
        (Structure::Gerstenhaber(m), "hom_leibniz") => check_hom_leibniz(m, bounds),
        (Structure::Gerstenhaber(m), "jacobiator") => {
            let mut r = check_jacobiator_leibniz(m, bounds);
            r.merge(check_jacobiator_skew(m, bounds));
            r
        }
        (Structure::Gerstenhaber(m), "anchor_representation") => {
            let rep = extract_anchor_rep(m, bounds)?;
            check_anchor_representation(m, &rep, opts.degree_bound)
        }
        _ => {
            return Err(Failure::Malformed(format!(
                "unknown suite {suite:?} for kind {}; expected one of {}",
                s.kind(),
                suites(s.kind()).join(", ")
            )))
        }
    };
    Ok(r)
}

pub fn cmd_check(input: &Path, suite: Option<&str>, opts: &Options) -> Outcome {
    let start = Instant::now();
    let file = match load(input) {
        Ok(f) => f,
        Err(e) => return Outcome::malformed(e.0),
    };
    let suite = suite.unwrap_or_else(|| default_suite(file.structure.kind()));
    let alpha = match &file.structure {
        Structure::HomLie(g) | Structure::Representation(g, _) | Structure::SymPoisson(g) => Some(g.alpha()),
        Structure::HomAssociative(a) => Some(a.alpha()),
        _ => None,
    };
    let note = match alpha {
        Some(a) if a.is_invertible() => " (alpha invertible)",
        Some(_) => " (alpha not invertible)",
        None => "",
    };
    let result = run_suite(&file, suite, opts).map(|r| (format!("{} [{suite}]{note}", file.name), r));
    finish(result, start, opts)
}

fn construct(kind: &str, file: &StructureFile, opts: &Options) -> Result<Structure, Failure> {
    let s = &file.structure;
    Ok(match (kind, s) {
        ("composition", Structure::HomLie(g)) => Structure::HomLie(composition_hom_lie(g.bracket(), g.alpha())?),
        ("composition", Structure::HomAssociative(a)) => {
            Structure::HomAssociative(composition_hom_associative(a.product(), a.alpha())?)
        }
        ("exterior", Structure::HomLie(g)) => Structure::Gerstenhaber(exterior_gerstenhaber(g)?),
        ("exterior", Structure::Representation(g, r)) => Structure::Gerstenhaber(mixed_gerstenhaber(g, r)?),
        ("sym_poisson", Structure::HomLie(g)) => {
            sym_poisson_from_hom_lie(g)?;
            Structure::SymPoisson(g.clone())
        }
        ("action", Structure::Action(g, phi, delta)) => {
            Structure::Algebroid(action_algebroid(g, phi, delta, opts.degree_bound)?)
        }
        ("line_bundle", Structure::VectorFieldAndMap(v, phi)) => Structure::Algebroid(line_bundle_algebroid(v, phi)?),
        ("cotangent", Structure::BivectorAndMap(pi, phi)) => Structure::Algebroid(cotangent_algebroid(pi, phi)?),
        ("to_gerstenhaber", Structure::Algebroid(m)) => {
            Structure::Gerstenhaber(algebroid_to_gerstenhaber(m, opts.degree_bound)?)
        }
        ("to_algebroid", Structure::Gerstenhaber(m)) => Structure::Algebroid(gerstenhaber_to_algebroid(m, opts.bounds())?),
        _ if !CONSTRUCTIONS.contains(&kind) => {
            return Err(Failure::Malformed(format!(
                "unknown construction {kind:?}; expected one of {}",
                CONSTRUCTIONS.join(", ")
            )))
        }
        _ => {
            return Err(Failure::Malformed(format!(
                "construction {kind:?} does not accept kind {}",
                s.kind()
            )))
        }
    })
}

/// Writes the constructed structure, then re-checks it with the default
/// suite of its kind.
pub fn cmd_construct(kind: &str, input: &Path, output: &Path, opts: &Options) -> Outcome {
    let start = Instant::now();
    let file = match load(input) {
        Ok(f) => f,
        Err(e) => return Outcome::malformed(e.0),
    };
    let result = construct(kind, &file, opts).and_then(|structure| {
        let out = StructureFile {
            name: format!("{kind}({})", file.name),
            structure,
        };
        write_atomic(output, &format::emit(&out))
            .map_err(|e| Failure::Malformed(format!("cannot write {}: {e}", output.display())))?;
        let suite = default_suite(out.structure.kind());
        let report = run_suite(&out, suite, opts)?;
        Ok((format!("wrote {} to {} [{suite}]", out.structure.kind(), output.display()), report))
    });
    finish(result, start, opts)
}

/// Both directions of the correspondence, then an exact comparison.
pub fn cmd_roundtrip(input: &Path, opts: &Options) -> Outcome {
    let start = Instant::now();
    let file = match load(input) {
        Ok(f) => f,
        Err(e) => return Outcome::malformed(e.0),
    };
    let Structure::Algebroid(m) = &file.structure else {
        return Outcome::malformed(format!(
            "roundtrip needs a hom_lie_algebroid file, got {}",
            file.structure.kind()
        ));
    };
    let result = (|| {
        let report = check_algebroid(m, opts.degree_bound);
        if !report.passed {
            return Err(Failure::Axiom(format!("{}: not a hom-Lie algebroid", file.name), report));
        }
        let back = gerstenhaber_to_algebroid(&gerstenhaber_model_of(m), opts.bounds())?;
        match first_difference(m, &back) {
            None => Ok((format!("{}: round trip identical", file.name), report)),
            Some((field, a, b)) => Err(Failure::Mismatch(format!(
                "{}: round trip differs at {field}: {a} vs {b}",
                file.name
            ))),
        }
    })();
    finish(result, start, opts)
}
