//! Structure files: `{"kind": ..., "meta": name, "payload": {...}}`.
//!
//! Rationals are `"p/q"` strings. A polynomial is a list of
//! `[exponents, coefficient]` pairs in descending graded-lex order; an
//! exterior element is a list of `[indices, polynomial]` pairs in ascending
//! word order. Emission is canonical, so `emit(parse(s)) == s` for any file
//! this module wrote.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use homcat_core::hom_algebras::{HomAssociativeAlgebra, HomLieAlgebra, Representation};
use homcat_core::hom_algebroids::{HomLieAlgebroidModel, PhiDerivation};
use homcat_core::hom_gerstenhaber::HomGerstenhaberModel;
use homcat_core::poly_geometry::{PolyMap, PolyMultivectorField};
use homcat_core::rational;
use homcat_core::{ExtIndex, HomError, MixedElement, MultiIndex, PolySubstitution, Polynomial, QMatrix, StructureConstants};

pub const KINDS: [&str; 9] = [
    "hom_lie_algebra",
    "hom_associative_algebra",
    "representation",
    "bivector_and_map",
    "hom_lie_algebroid",
    "gerstenhaber_model",
    "vector_field_and_map",
    "hom_lie_action",
    "sym_poisson_model",
];

/// A malformed or schema-violating file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError(format!("invalid structure file: {e}"))
    }
}

impl From<HomError> for FormatError {
    fn from(e: HomError) -> Self {
        FormatError(format!("invalid structure data: {e}"))
    }
}

type Res<T> = Result<T, FormatError>;

#[derive(Clone, Debug)]
pub enum Structure {
    HomLie(HomLieAlgebra),
    HomAssociative(HomAssociativeAlgebra),
    Representation(HomLieAlgebra, Representation),
    BivectorAndMap(PolyMultivectorField, PolyMap),
    VectorFieldAndMap(PolyMultivectorField, PolyMap),
    Action(HomLieAlgebra, PolyMap, Vec<PhiDerivation>),
    Algebroid(HomLieAlgebroidModel),
    Gerstenhaber(HomGerstenhaberModel),
    SymPoisson(HomLieAlgebra),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::HomLie(_) => "hom_lie_algebra",
            Structure::HomAssociative(_) => "hom_associative_algebra",
            Structure::Representation(..) => "representation",
            Structure::BivectorAndMap(..) => "bivector_and_map",
            Structure::VectorFieldAndMap(..) => "vector_field_and_map",
            Structure::Action(..) => "hom_lie_action",
            Structure::Algebroid(_) => "hom_lie_algebroid",
            Structure::Gerstenhaber(_) => "gerstenhaber_model",
            Structure::SymPoisson(_) => "sym_poisson_model",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureFile {
    pub name: String,
    pub structure: Structure,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: String,
    meta: String,
    payload: Value,
}

type PolyJson = Vec<(Vec<u32>, String)>;
type MatrixJson = Vec<Vec<String>>;
type MixedJson = Vec<(Vec<usize>, PolyJson)>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomLieJson {
    dim: usize,
    bracket: Vec<(usize, usize, usize, String)>,
    alpha: MatrixJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomAssociativeJson {
    dim: usize,
    product: Vec<(usize, usize, usize, String)>,
    alpha: MatrixJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationJson {
    algebra: HomLieJson,
    rho: Vec<MatrixJson>,
    alpha_v: MatrixJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedFieldJson {
    kind: String,
    num_vars: usize,
    terms: MixedJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BivectorMapJson {
    num_vars: usize,
    bivector: GradedFieldJson,
    map: Vec<PolyJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFieldMapJson {
    num_vars: usize,
    vector_field: GradedFieldJson,
    map: Vec<PolyJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionJson {
    algebra: HomLieJson,
    num_vars: usize,
    map: Vec<PolyJson>,
    derivations: Vec<Vec<PolyJson>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebroidJson {
    num_vars: usize,
    rank: usize,
    phi: Vec<PolyJson>,
    alpha_mat: Vec<Vec<PolyJson>>,
    anchor_mat: Vec<Vec<PolyJson>>,
    bracket_consts: Vec<(usize, usize, usize, PolyJson)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GerstenhaberJson {
    rank: usize,
    num_vars: usize,
    odd_brackets: Vec<Vec<MixedJson>>,
    mixed_brackets: Vec<Vec<PolyJson>>,
    alpha_odd: Vec<MixedJson>,
    alpha_even: Vec<PolyJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymPoissonJson {
    algebra: HomLieJson,
}

fn rat(s: &str) -> Res<rational::Rational> {
    Ok(rational::parse(s)?)
}

fn poly_to(f: &Polynomial) -> PolyJson {
    f.terms()
        .rev()
        .map(|(m, c)| (m.exponents().to_vec(), rational::format(c)))
        .collect()
}

fn poly_from(p: &PolyJson, n: usize) -> Res<Polynomial> {
    let mut terms = Vec::with_capacity(p.len());
    for (e, c) in p {
        if e.len() != n {
            return Err(FormatError(format!("exponent list {e:?} has length {}, expected {n}", e.len())));
        }
        terms.push((MultiIndex::new(e.clone()), rat(c)?));
    }
    Ok(Polynomial::from_terms(n, terms)?)
}

fn polys_from(ps: &[PolyJson], n: usize) -> Res<Vec<Polynomial>> {
    ps.iter().map(|p| poly_from(p, n)).collect()
}

fn map_from(ps: &[PolyJson], n: usize) -> Res<PolyMap> {
    if ps.len() != n {
        return Err(FormatError(format!("map has {} images, expected {n}", ps.len())));
    }
    Ok(PolySubstitution::new(polys_from(ps, n)?)?)
}

fn matrix_to(m: &QMatrix) -> MatrixJson {
    (0..m.rows()).map(|r| m.row(r).iter().map(rational::format).collect()).collect()
}

fn matrix_from(m: &MatrixJson) -> Res<QMatrix> {
    let rows = m
        .iter()
        .map(|row| row.iter().map(|s| rat(s)).collect::<Res<Vec<_>>>())
        .collect::<Res<Vec<_>>>()?;
    Ok(QMatrix::from_rows(rows)?)
}

fn consts_to(c: &StructureConstants) -> Vec<(usize, usize, usize, String)> {
    c.entries().map(|(&(i, j, k), v)| (i, j, k, rational::format(v))).collect()
}

fn consts_from(dim: usize, c: &[(usize, usize, usize, String)]) -> Res<StructureConstants> {
    let entries = c
        .iter()
        .map(|(i, j, k, v)| Ok(((*i, *j, *k), rat(v)?)))
        .collect::<Res<Vec<_>>>()?;
    Ok(StructureConstants::from_entries(dim, entries)?)
}

fn hom_lie_to(g: &HomLieAlgebra) -> HomLieJson {
    HomLieJson {
        dim: g.dim(),
        bracket: consts_to(g.bracket()),
        alpha: matrix_to(g.alpha()),
    }
}

fn hom_lie_from(j: &HomLieJson) -> Res<HomLieAlgebra> {
    Ok(HomLieAlgebra::new(consts_from(j.dim, &j.bracket)?, matrix_from(&j.alpha)?)?)
}

fn mixed_to(x: &MixedElement) -> MixedJson {
    x.terms().map(|(i, f)| (i.indices().to_vec(), poly_to(f))).collect()
}

fn mixed_from(j: &MixedJson, rank: usize, n: usize) -> Res<MixedElement> {
    let terms = j
        .iter()
        .map(|(i, p)| Ok((ExtIndex::new(i.clone())?, poly_from(p, n)?)))
        .collect::<Res<Vec<_>>>()?;
    Ok(MixedElement::from_terms(rank, n, terms)?)
}

fn field_to(x: &PolyMultivectorField) -> GradedFieldJson {
    GradedFieldJson {
        kind: "multivector".into(),
        num_vars: x.num_vars(),
        terms: mixed_to(x.element()),
    }
}

fn field_from(j: &GradedFieldJson, n: usize) -> Res<PolyMultivectorField> {
    if j.kind != "multivector" {
        return Err(FormatError(format!("expected a multivector, got kind {:?}", j.kind)));
    }
    if j.num_vars != n {
        return Err(FormatError(format!("multivector has {} variables, expected {n}", j.num_vars)));
    }
    Ok(PolyMultivectorField::from_element(mixed_from(&j.terms, n, n)?)?)
}

fn check_len<T>(v: &[T], want: usize, what: &str) -> Res<()> {
    if v.len() == want {
        Ok(())
    } else {
        Err(FormatError(format!("{what} has length {}, expected {want}", v.len())))
    }
}

fn payload_to(s: &Structure) -> Value {
    let v = match s {
        Structure::HomLie(g) => serde_json::to_value(hom_lie_to(g)),
        Structure::HomAssociative(a) => serde_json::to_value(HomAssociativeJson {
            dim: a.dim(),
            product: consts_to(a.product()),
            alpha: matrix_to(a.alpha()),
        }),
        Structure::Representation(g, r) => serde_json::to_value(RepresentationJson {
            algebra: hom_lie_to(g),
            rho: r.rho().iter().map(matrix_to).collect(),
            alpha_v: matrix_to(r.alpha_v()),
        }),
        Structure::BivectorAndMap(pi, phi) => serde_json::to_value(BivectorMapJson {
            num_vars: phi.nvars(),
            bivector: field_to(pi),
            map: phi.images().iter().map(poly_to).collect(),
        }),
        Structure::VectorFieldAndMap(v, phi) => serde_json::to_value(VectorFieldMapJson {
            num_vars: phi.nvars(),
            vector_field: field_to(v),
            map: phi.images().iter().map(poly_to).collect(),
        }),
        Structure::Action(g, phi, delta) => serde_json::to_value(ActionJson {
            algebra: hom_lie_to(g),
            num_vars: phi.nvars(),
            map: phi.images().iter().map(poly_to).collect(),
            derivations: delta.iter().map(|d| d.components().iter().map(poly_to).collect()).collect(),
        }),
        Structure::Algebroid(m) => serde_json::to_value(AlgebroidJson {
            num_vars: m.num_vars(),
            rank: m.rank(),
            phi: m.phi().images().iter().map(poly_to).collect(),
            alpha_mat: m.alpha_mat().iter().map(|r| r.iter().map(poly_to).collect()).collect(),
            anchor_mat: m.anchor_mat().iter().map(|r| r.iter().map(poly_to).collect()).collect(),
            bracket_consts: m
                .bracket_consts()
                .iter()
                .map(|(&(a, b, c), f)| (a, b, c, poly_to(f)))
                .collect(),
        }),
        Structure::Gerstenhaber(m) => serde_json::to_value(GerstenhaberJson {
            rank: m.rank(),
            num_vars: m.nvars(),
            odd_brackets: m.odd_brackets().iter().map(|r| r.iter().map(mixed_to).collect()).collect(),
            mixed_brackets: m.mixed_brackets().iter().map(|r| r.iter().map(poly_to).collect()).collect(),
            alpha_odd: m.alpha_odd().iter().map(mixed_to).collect(),
            alpha_even: m.alpha_even().images().iter().map(poly_to).collect(),
        }),
        Structure::SymPoisson(g) => serde_json::to_value(SymPoissonJson { algebra: hom_lie_to(g) }),
    };
    v.expect("payloads are plain data")
}

fn payload_from(kind: &str, v: Value) -> Res<Structure> {
    Ok(match kind {
        "hom_lie_algebra" => Structure::HomLie(hom_lie_from(&serde_json::from_value(v)?)?),
        "hom_associative_algebra" => {
            let j: HomAssociativeJson = serde_json::from_value(v)?;
            Structure::HomAssociative(HomAssociativeAlgebra::new(
                consts_from(j.dim, &j.product)?,
                matrix_from(&j.alpha)?,
            )?)
        }
        "representation" => {
            let j: RepresentationJson = serde_json::from_value(v)?;
            let g = hom_lie_from(&j.algebra)?;
            let rho = j.rho.iter().map(matrix_from).collect::<Res<Vec<_>>>()?;
            check_len(&rho, g.dim(), "rho")?;
            Structure::Representation(g, Representation::new(rho, matrix_from(&j.alpha_v)?)?)
        }
        "bivector_and_map" => {
            let j: BivectorMapJson = serde_json::from_value(v)?;
            let pi = field_from(&j.bivector, j.num_vars)?;
            if !pi.is_zero() && pi.degree() != Some(2) {
                return Err(FormatError(format!("expected a bivector, got {pi}")));
            }
            Structure::BivectorAndMap(pi, map_from(&j.map, j.num_vars)?)
        }
        "vector_field_and_map" => {
            let j: VectorFieldMapJson = serde_json::from_value(v)?;
            let x = field_from(&j.vector_field, j.num_vars)?;
            if !x.is_zero() && x.degree() != Some(1) {
                return Err(FormatError(format!("expected a vector field, got {x}")));
            }
            Structure::VectorFieldAndMap(x, map_from(&j.map, j.num_vars)?)
        }
        "hom_lie_action" => {
            let j: ActionJson = serde_json::from_value(v)?;
            let g = hom_lie_from(&j.algebra)?;
            let phi = map_from(&j.map, j.num_vars)?;
            check_len(&j.derivations, g.dim(), "derivations")?;
            let delta = j
                .derivations
                .iter()
                .map(|d| Ok(PhiDerivation::new(phi.clone(), polys_from(d, j.num_vars)?)?))
                .collect::<Res<Vec<_>>>()?;
            Structure::Action(g, phi, delta)
        }
        "hom_lie_algebroid" => {
            let j: AlgebroidJson = serde_json::from_value(v)?;
            let n = j.num_vars;
            check_len(&j.alpha_mat, j.rank, "alpha_mat")?;
            check_len(&j.anchor_mat, j.rank, "anchor_mat")?;
            let rows = |m: &[Vec<PolyJson>]| m.iter().map(|r| polys_from(r, n)).collect::<Res<Vec<_>>>();
            let consts = j
                .bracket_consts
                .iter()
                .map(|(a, b, c, f)| Ok(((*a, *b, *c), poly_from(f, n)?)))
                .collect::<Res<Vec<_>>>()?;
            Structure::Algebroid(HomLieAlgebroidModel::new(
                map_from(&j.phi, n)?,
                rows(&j.alpha_mat)?,
                rows(&j.anchor_mat)?,
                consts,
            )?)
        }
        "gerstenhaber_model" => {
            let j: GerstenhaberJson = serde_json::from_value(v)?;
            let (r, n) = (j.rank, j.num_vars);
            let odd = j
                .odd_brackets
                .iter()
                .map(|row| row.iter().map(|x| mixed_from(x, r, n)).collect::<Res<Vec<_>>>())
                .collect::<Res<Vec<_>>>()?;
            let mixed = j.mixed_brackets.iter().map(|row| polys_from(row, n)).collect::<Res<Vec<_>>>()?;
            let alpha_odd = j.alpha_odd.iter().map(|x| mixed_from(x, r, n)).collect::<Res<Vec<_>>>()?;
            Structure::Gerstenhaber(HomGerstenhaberModel::new(
                r,
                n,
                odd,
                mixed,
                alpha_odd,
                map_from(&j.alpha_even, n)?,
            )?)
        }
        "sym_poisson_model" => {
            let j: SymPoissonJson = serde_json::from_value(v)?;
            Structure::SymPoisson(hom_lie_from(&j.algebra)?)
        }
        other => return Err(FormatError(format!("unknown kind {other:?}; expected one of {}", KINDS.join(", ")))),
    })
}

pub fn parse(text: &str) -> Res<StructureFile> {
    let env: Envelope = serde_json::from_str(text)?;
    let structure = payload_from(&env.kind, env.payload)?;
    Ok(StructureFile {
        name: env.meta,
        structure,
    })
}

/// Canonical text: two-space indented JSON where arrays without objects
/// that fit in 80 columns stay on one line, plus a trailing newline.
pub fn emit(file: &StructureFile) -> String {
    let env = Envelope {
        kind: file.structure.kind().to_string(),
        meta: file.name.clone(),
        payload: payload_to(&file.structure),
    };
    let mut s = String::new();
    write_value(&mut s, &serde_json::to_value(&env).expect("plain data"), 0);
    s.push('\n');
    s
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(xs) => xs.iter().any(has_object),
        _ => false,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(xs) if !xs.is_empty() => {
            let flat = v.to_string().replace(',', ", ");
            if !has_object(v) && indent * 2 + flat.len() <= 80 {
                out.push_str(&flat);
                return;
            }
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
