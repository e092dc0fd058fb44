//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any of them fails.

#[path = "../../core/tests/support/superfunction.rs"]
mod superfunction;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use homcat::commands::{suites, EXIT_FAIL, EXIT_PASS};
use homcat::{cmd_check, cmd_construct, cmd_roundtrip, Options};
use homcat_core::fixtures;
use homcat_core::hom_algebras::{
    adjoint_rep, check_adjoint_identity, check_dual_formula, check_hom_jacobi, check_hom_poisson,
    check_representation, composition_hom_lie, is_lie_on_image, sym_poisson_from_hom_lie, HomLieAlgebra,
};
use homcat_core::hom_algebroids::{check_algebroid, gerstenhaber_model_of, HomLieAlgebroidModel};
use homcat_core::hom_gerstenhaber::{
    check_gerstenhaber, check_graded_hom_jacobi, check_hom_leibniz, check_jacobiator_leibniz, check_jacobiator_skew,
    exterior_gerstenhaber, SampleBounds,
};
use homcat_core::multilinear::{QMatrix, StructureConstants};
use homcat_core::poly_geometry::{check_hom_poisson_manifold, schouten};
use homcat_core::random::{compatible_pair, multivector, non_hom_lie_pair, seeded};
use homcat_core::{PolySubstitution, Polynomial};
use superfunction::schouten_oracle;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

fn composition_criterion() -> Verdict {
    let s = fixtures::sl2();
    let h = fixtures::heisenberg();
    let mut pairs: Vec<(StructureConstants, QMatrix)> = vec![
        (s.bracket().clone(), fixtures::sl2_automorphism()),
        (s.bracket().clone(), QMatrix::identity(3)),
        (s.bracket().clone(), QMatrix::zero(3, 3)),
        (h.bracket().clone(), QMatrix::identity(3)),
        (h.bracket().clone(), fixtures::heisenberg_twisted().alpha().clone()),
        (fixtures::non_lie().bracket().clone(), QMatrix::identity(3)),
        fixtures::non_lie_with_abelian_projection(),
    ];
    let mut rng = seeded(0);
    for k in 0..50 {
        pairs.push(compatible_pair(&mut rng, 1 + k % 4));
    }
    for k in 0..10 {
        let g = non_hom_lie_pair(&mut rng, 3 + k % 2, 1000).ok_or("no non-Lie bracket found")?;
        pairs.push((g.bracket().clone(), g.alpha().clone()));
        pairs.push((g.bracket().clone(), QMatrix::identity(g.dim())));
    }
    let (mut lie, mut disagreements) = (0, Vec::new());
    for (k, (c, alpha)) in pairs.iter().enumerate() {
        let composed = composition_hom_lie(c, alpha).map_err(|e| format!("pair {k}: {e}"))?;
        let left = check_hom_jacobi(&composed).passed;
        let right = is_lie_on_image(c, alpha).map_err(|e| format!("pair {k}: {e}"))?.passed;
        lie += usize::from(left);
        if left != right {
            disagreements.push(k);
        }
    }
    ensure(
        disagreements.is_empty() && lie > 0 && lie < pairs.len(),
        format!(
            "{} pairs, {lie} hom-Lie after composition, {} not, disagreements at {disagreements:?}",
            pairs.len(),
            pairs.len() - lie
        ),
    )
}

fn jacobiator_identities() -> Verdict {
    let bounds = SampleBounds {
        max_degree: 4,
        poly_degree: 0,
    };
    let mut rng = seeded(1);
    let mut evaluated = 0;
    for k in 0..20 {
        let g = non_hom_lie_pair(&mut rng, 3, 1000).ok_or(format!("draw {k}: no non-Lie bracket found"))?;
        let m = exterior_gerstenhaber(&g).map_err(|e| e.to_string())?;
        let leibniz = check_jacobiator_leibniz(&m, bounds);
        let skew = check_jacobiator_skew(&m, bounds);
        if !leibniz.passed || !skew.passed {
            let v = leibniz.first().or(skew.first()).expect("a violation");
            return Err(format!("draw {k}: {v}"));
        }
        evaluated += leibniz.evaluated + skew.evaluated;
    }
    Ok(format!("20 non-Lie brackets, {evaluated} instances through degree 4"))
}

fn exterior_equivalence() -> Verdict {
    let bounds = SampleBounds {
        max_degree: 3,
        poly_degree: 0,
    };
    let mut algebras: Vec<(String, HomLieAlgebra)> =
        fixtures::hom_lie_algebras().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    let mut rng = seeded(2);
    for k in 0..30 {
        let (c, alpha) = compatible_pair(&mut rng, 1 + k % 3);
        algebras.push((format!("random {k}"), HomLieAlgebra::new(c, alpha).map_err(|e| e.to_string())?));
    }
    for k in 0..10 {
        let g = non_hom_lie_pair(&mut rng, 3, 1000).ok_or("no non-Lie bracket found")?;
        algebras.push((format!("non-Lie {k}"), g));
    }
    let (mut lie, mut disagreements) = (0, Vec::new());
    for (name, g) in &algebras {
        let m = exterior_gerstenhaber(g).map_err(|e| format!("{name}: {e}"))?;
        let left = check_hom_jacobi(g).passed;
        lie += usize::from(left);
        if left != check_gerstenhaber(&m, bounds).passed {
            disagreements.push(name.clone());
        }
    }
    ensure(
        disagreements.is_empty() && lie > 0 && lie < algebras.len(),
        format!("{} brackets, {lie} hom-Lie, disagreements {disagreements:?}", algebras.len()),
    )
}

fn adjoint_representations() -> Verdict {
    let algebras = [
        ("sl2", fixtures::sl2()),
        ("sl2_composition", fixtures::sl2_composition()),
        ("heisenberg", fixtures::heisenberg()),
        ("heisenberg_twisted", fixtures::heisenberg_twisted()),
    ];
    let mut evaluated = 0;
    for (name, g) in &algebras {
        for s in 0..=2 {
            let identity = check_adjoint_identity(g, s);
            let rep = check_representation(g, &adjoint_rep(g, s)).map_err(|e| format!("{name} s={s}: {e}"))?;
            if let Some(v) = identity.first().or(rep.first()) {
                return Err(format!("{name} s={s}: {v}"));
            }
            evaluated += identity.evaluated + rep.evaluated;
        }
    }
    Ok(format!("4 algebras, s in 0..=2, {evaluated} instances"))
}

fn symmetric_hom_poisson() -> Verdict {
    let mut names = Vec::new();
    for (name, g) in fixtures::hom_lie_algebras() {
        if !check_hom_jacobi(&g).passed {
            continue;
        }
        let model = sym_poisson_from_hom_lie(&g).map_err(|e| format!("{name}: {e}"))?;
        let poisson = check_hom_poisson(&model, 3);
        let dual = check_dual_formula(&g, 3);
        if let Some(v) = poisson.first().or(dual.first()) {
            return Err(format!("{name}: {v}"));
        }
        names.push(name);
    }
    ensure(names.len() >= 4, format!("monomials of degree <= 3 on {names:?}"))
}

fn corruptions(m: &HomLieAlgebroidModel) -> Vec<(String, HomLieAlgebroidModel)> {
    let (n, r) = (m.num_vars(), m.rank());
    let one = Polynomial::one(n);
    let rebuild = |phi: PolySubstitution, alpha: Vec<Vec<Polynomial>>, anchor: Vec<Vec<Polynomial>>, consts| {
        HomLieAlgebroidModel::new(phi, alpha, anchor, consts).expect("same shapes")
    };
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let mut alpha = m.alpha_mat().to_vec();
            alpha[a][b] = &alpha[a][b] + &one;
            let c = m.bracket_consts().clone();
            out.push((format!("alpha[{a}][{b}]"), rebuild(m.phi().clone(), alpha, m.anchor_mat().to_vec(), c)));
        }
        for i in 0..n {
            let mut anchor = m.anchor_mat().to_vec();
            anchor[a][i] = &anchor[a][i] + &one;
            let c = m.bracket_consts().clone();
            out.push((format!("anchor[{a}][{i}]"), rebuild(m.phi().clone(), m.alpha_mat().to_vec(), anchor, c)));
        }
        for b in 0..r {
            for c in 0..r {
                let mut consts = m.bracket_consts().clone();
                let e = consts.entry((a, b, c)).or_insert_with(|| Polynomial::zero(n));
                *e = &*e + &one;
                let (alpha, anchor) = (m.alpha_mat().to_vec(), m.anchor_mat().to_vec());
                out.push((format!("C[{a}][{b}][{c}]"), rebuild(m.phi().clone(), alpha, anchor, consts)));
            }
        }
    }
    for i in 0..n {
        let mut images = m.phi().images().to_vec();
        images[i] = &images[i] + &one;
        let phi = PolySubstitution::new(images).expect("same length");
        let c = m.bracket_consts().clone();
        out.push((format!("phi[{i}]"), rebuild(phi, m.alpha_mat().to_vec(), m.anchor_mat().to_vec(), c)));
    }
    out
}

fn algebroid_correspondence() -> Verdict {
    let opts = Options::default();
    let names: Vec<&str> = fixtures::algebroids().into_iter().map(|(n, _)| n).collect();
    for name in &names {
        let out = cmd_roundtrip(&fixture(name), &opts);
        if out.code != EXIT_PASS {
            return Err(format!("roundtrip {name}: exit {}, {}", out.code, out.message));
        }
    }
    let bounds = SampleBounds::default();
    let (mut total, mut failing, mut disagreements) = (0, 0, Vec::new());
    for (name, m) in fixtures::algebroids() {
        for (entry, bad) in corruptions(&m) {
            let algebroid = check_algebroid(&bad, 3).passed;
            let gm = gerstenhaber_model_of(&bad);
            let gerstenhaber = check_graded_hom_jacobi(&gm, bounds).passed && check_hom_leibniz(&gm, bounds).passed;
            total += 1;
            failing += usize::from(!algebroid);
            if algebroid != gerstenhaber {
                disagreements.push(format!("{name}.{entry}"));
            }
        }
    }
    ensure(
        names.len() >= 5 && disagreements.is_empty() && failing > 0,
        format!(
            "{} round trips; {total} single-entry corruptions, {failing} rejected by both sides, {} still valid on both, disagreements {disagreements:?}",
            names.len(),
            total - failing
        ),
    )
}

fn poisson_geometry() -> Verdict {
    let pi2 = check_hom_poisson_manifold(&fixtures::pi2_bivector(), &fixtures::pi2_map()).map_err(|e| e.to_string())?;
    if let Some(v) = pi2.first() {
        return Err(format!("pi2: {v}"));
    }
    let pi = fixtures::non_poisson_bivector();
    let phi = fixtures::projection_map();
    let report = check_hom_poisson_manifold(&pi, &phi).map_err(|e| e.to_string())?;
    let witness = report
        .checks
        .iter()
        .find(|v| v.identity == "schouten_vanishes_on_image")
        .ok_or("the non-Poisson bivector was accepted")?;
    let pp = schouten(&pi, &pi).map_err(|e| e.to_string())?;
    let mut surviving = 0;
    for (_, f) in pp.terms() {
        surviving += usize::from(!phi.apply(&phi.apply(f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.is_zero());
    }
    if surviving == 0 {
        return Err("no coefficient of [pi, pi] survives phi^2".into());
    }
    let mut nonzero = 0;
    for seed in 0..40u64 {
        let mut rng = seeded(seed);
        let n = 1 + (seed % 3) as usize;
        let p = 1 + (seed as usize / 3) % n;
        let q = 1 + (seed as usize / 7) % n;
        let x = multivector(&mut rng, n, p, 2);
        let y = multivector(&mut rng, n, q, 2);
        let got = schouten(&x, &y).map_err(|e| e.to_string())?;
        if got != schouten_oracle(&x, &y) {
            return Err(format!("oracle mismatch at seed {seed}"));
        }
        nonzero += usize::from(!got.is_zero());
    }
    ensure(
        nonzero >= 20,
        format!("pi2 accepted; [pi, pi] rejected at {} ({}); oracle agrees on 40 seeds, {nonzero} nonzero", witness.witness.join(","), witness.lhs),
    )
}

fn classical_reduction() -> Verdict {
    let opts = Options::default();
    let induced = scratch("tangent_plane_gerstenhaber.json");
    let out = cmd_construct("to_gerstenhaber", &fixture("tangent_plane"), &induced, &opts);
    if out.code != EXIT_PASS {
        return Err(format!("to_gerstenhaber: {}", out.message));
    }
    let mut accepted = 0;
    for (path, kind) in [
        (fixture("tangent_plane"), "hom_lie_algebroid"),
        (induced, "gerstenhaber_model"),
        (fixture("sl2"), "hom_lie_algebra"),
    ] {
        for suite in suites(kind) {
            let out = cmd_check(&path, Some(suite), &opts);
            if out.code != EXIT_PASS {
                return Err(format!("{} [{suite}] rejected: {}", path.display(), out.message));
            }
            accepted += 1;
        }
    }
    let id = PolySubstitution::identity(2);
    let one = || Polynomial::one(2);
    let t = fixtures::tangent_plane();
    if t.phi() != &id || t.alpha_mat()[0][0] != one() || t.alpha_mat()[1][1] != one() {
        return Err("tangent plane is not untwisted".into());
    }
    if fixtures::sl2().alpha() != &QMatrix::identity(3) {
        return Err("sl2 is not untwisted".into());
    }
    let mut rejected = Vec::new();
    for suite in ["hom_lie", "lie_on_image", "exterior", "sym_poisson"] {
        let out = cmd_check(&fixture("non_lie"), Some(suite), &opts);
        if out.code != EXIT_FAIL {
            return Err(format!("non_lie [{suite}] exit {}: {}", out.code, out.message));
        }
        rejected.push(suite);
    }
    Ok(format!("{accepted} suites accept the tangent plane and sl2; non_lie rejected by {rejected:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("composition criterion", composition_criterion),
        ("jacobiator identities", jacobiator_identities),
        ("exterior algebra equivalence", exterior_equivalence),
        ("adjoint representations", adjoint_representations),
        ("symmetric algebra hom-Poisson", symmetric_hom_poisson),
        ("algebroid and Gerstenhaber correspondence", algebroid_correspondence),
        ("hom-Poisson manifolds and Schouten bracket", poisson_geometry),
        ("classical reduction", classical_reduction),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let ms = start.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("PASS {} {name} ({ms} ms): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({ms} ms): {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
