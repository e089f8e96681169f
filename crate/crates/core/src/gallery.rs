//! The `D̃_n` family: the hereditary algebras `H_n = KΔ_n` and `H_n* = KΔ_n*`,
//! the doubled algebra `Λ_n`, the quasi-simple modules `E_l`, `E*_l`, and
//! checkers for the tube and short-cycle claims made about them.
//!
//! Arrow naming: an α arrow `s -> t` of `Δ_n` is `a{s}_{t}`; its reverse β
//! arrow `t -> s` is `b{t}_{s}`. `Δ_n*` and `Q_n` reuse these names, so modules
//! over `H_n` and `H_n*` inflate to `Λ_n` by name.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{BoundAlgebra, Relation};
use crate::ar::{check_formula_i_with, check_formula_ii_with, tau, tau_minus, FormulaReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::{are_isomorphic, hom_dim, is_brick, projective_dimension_at_most_one, IsoOptions, IsoVerdict};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, Path, Quiver};
use crate::rep::{injective, projective, simple, DimVector, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GalleryConfig {
    pub n: usize,
    pub field: Field,
}

impl GalleryConfig {
    pub fn new(n: usize, field: Field) -> Result<Self> {
        if n < 4 {
            return Err(Error::OutOfRange(format!("gallery needs n >= 4, got {n}")));
        }
        Ok(GalleryConfig { n, field })
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    /// Number of quasi-simples on the mouth.
    pub fn rank(&self) -> usize {
        self.n - 2
    }
}

pub fn alpha_name(s: usize, t: usize) -> String {
    format!("a{s}_{t}")
}

pub fn beta_name(s: usize, t: usize) -> String {
    format!("b{s}_{t}")
}

/// Endpoints of the α arrows of `Δ_n`, in a fixed order.
pub fn delta_arrows(n: usize) -> Vec<(usize, usize)> {
    let mut arrows = vec![(3, 1), (3, 2)];
    for i in 3..=n.saturating_sub(2) {
        if i % 2 == 1 {
            arrows.push((i, i + 1));
        } else {
            arrows.push((i + 1, i));
        }
    }
    if n % 2 == 1 {
        arrows.push((n, n - 1));
        arrows.push((n + 1, n - 1));
    } else {
        arrows.push((n - 1, n));
        arrows.push((n - 1, n + 1));
    }
    arrows
}

/// Index `l` of an α arrow `s -> t`, if it carries one.
pub fn arrow_label(n: usize, s: usize, t: usize) -> Option<usize> {
    let last = if n % 2 == 1 { n } else { n - 1 };
    if !(3..=last).contains(&s) {
        return None;
    }
    if t == s + 1 {
        Some((s - 1) / 2)
    } else if t + 1 == s {
        Some(n - (s + 1) / 2)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowLabel {
    pub alpha: String,
    pub beta: String,
    pub source: usize,
    pub target: usize,
    pub index: Option<usize>,
}

pub fn labeling(n: usize) -> Vec<ArrowLabel> {
    delta_arrows(n)
        .into_iter()
        .map(|(s, t)| ArrowLabel {
            alpha: alpha_name(s, t),
            beta: beta_name(t, s),
            source: s,
            target: t,
            index: arrow_label(n, s, t),
        })
        .collect()
}

/// Support of `E_l` and the α arrows carrying the identity.
pub fn e_support(n: usize, l: usize) -> Result<(Vec<usize>, Vec<(usize, usize)>)> {
    if l == 0 || l > n - 2 {
        return Err(Error::OutOfRange(format!("l must lie in 1..={}, got {l}", n - 2)));
    }
    let fork = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
    if l == n - 2 {
        return Ok((vec![1, 2, 3], vec![(3, 1), (3, 2)]));
    }
    if l == fork {
        let arrows = if n % 2 == 1 {
            vec![(n, n - 1), (n + 1, n - 1)]
        } else {
            vec![(n - 1, n), (n - 1, n + 1)]
        };
        return Ok((vec![n - 1, n, n + 1], arrows));
    }
    let (s, t) = delta_arrows(n)
        .into_iter()
        .find(|&(s, t)| arrow_label(n, s, t) == Some(l))
        .expect("every index in range labels an arrow");
    Ok((vec![s.min(t), s.max(t)], vec![(s, t)]))
}

pub fn build_delta(config: GalleryConfig) -> Result<Arc<BoundAlgebra>> {
    let arrows = delta_arrows(config.n)
        .into_iter()
        .map(|(s, t)| Arrow::new(alpha_name(s, t), s, t))
        .collect();
    let q = Quiver::new(config.vertex_count(), arrows)?;
    Ok(Arc::new(BoundAlgebra::path_algebra(config.field, q)?))
}

pub fn build_delta_star(config: GalleryConfig) -> Result<Arc<BoundAlgebra>> {
    let arrows = delta_arrows(config.n)
        .into_iter()
        .map(|(s, t)| Arrow::new(beta_name(t, s), t, s))
        .collect();
    let q = Quiver::new(config.vertex_count(), arrows)?;
    Ok(Arc::new(BoundAlgebra::path_algebra(config.field, q)?))
}

/// `Λ_n = KQ_n / I_n`: length-two paths with distinct endpoints vanish, and the
/// two-cycles at each vertex `3..=n-1` are identified.
pub fn build_lambda(config: GalleryConfig) -> Result<Arc<BoundAlgebra>> {
    let field = config.field;
    let mut arrows = Vec::new();
    for (s, t) in delta_arrows(config.n) {
        arrows.push(Arrow::new(alpha_name(s, t), s, t));
        arrows.push(Arrow::new(beta_name(t, s), t, s));
    }
    let q = Quiver::new(config.vertex_count(), arrows)?;
    let mut relations = Vec::new();
    let mut cycles: HashMap<usize, Vec<Path>> = HashMap::new();
    for x in 0..q.arrows().len() {
        for y in q.arrows_from(q.arrow(x).target).collect::<Vec<_>>() {
            let p = Path::from_arrows(&q, vec![x, y])?;
            if p.source() != p.target() {
                relations.push(Relation::zero_path(field, p)?);
            } else {
                cycles.entry(p.source()).or_default().push(p);
            }
        }
    }
    for i in 3..config.n {
        if let Some(cs) = cycles.get(&i) {
            for c in &cs[1..] {
                relations.push(Relation::commutativity(field, cs[0].clone(), c.clone())?);
            }
        }
    }
    Ok(Arc::new(BoundAlgebra::build(
        field,
        q,
        relations,
        crate::algebra::DEFAULT_MAX_LENGTH,
    )?))
}

fn support_module(
    algebra: &Arc<BoundAlgebra>,
    n: usize,
    support: &[usize],
    arrows: impl Iterator<Item = String>,
) -> Result<Representation> {
    let field = algebra.field();
    let mut dims = vec![0; n + 1];
    for &v in support {
        dims[v - 1] = 1;
    }
    let named = arrows.map(|a| (a, Matrix::identity(field, 1))).collect();
    Representation::from_named(algebra.clone(), dims, named)
}

/// `E_l` over `h`, which must be `build_delta(n, _)`.
pub fn module_e(h: &Arc<BoundAlgebra>, n: usize, l: usize) -> Result<Representation> {
    let (support, arrows) = e_support(n, l)?;
    support_module(h, n, &support, arrows.into_iter().map(|(s, t)| alpha_name(s, t)))
}

/// `E*_l` over `hstar`, which must be `build_delta_star(n, _)`.
pub fn module_e_star(hstar: &Arc<BoundAlgebra>, n: usize, l: usize) -> Result<Representation> {
    let (support, arrows) = e_support(n, l)?;
    support_module(hstar, n, &support, arrows.into_iter().map(|(s, t)| beta_name(t, s)))
}

/// The three algebras of one `(n, field)` together with the mouth modules.
#[derive(Clone, Debug)]
pub struct Gallery {
    pub config: GalleryConfig,
    pub h: Arc<BoundAlgebra>,
    pub hstar: Arc<BoundAlgebra>,
    pub lambda: Arc<BoundAlgebra>,
    /// `E_1, ..., E_{n-2}` over `H_n`.
    pub e: Vec<Representation>,
    /// `E*_1, ..., E*_{n-2}` over `H_n*`.
    pub e_star: Vec<Representation>,
}

impl Gallery {
    pub fn new(config: GalleryConfig) -> Result<Self> {
        let h = build_delta(config)?;
        let hstar = build_delta_star(config)?;
        let lambda = build_lambda(config)?;
        let e = (1..=config.rank())
            .map(|l| module_e(&h, config.n, l))
            .collect::<Result<_>>()?;
        let e_star = (1..=config.rank())
            .map(|l| module_e_star(&hstar, config.n, l))
            .collect::<Result<_>>()?;
        Ok(Gallery { config, h, hstar, lambda, e, e_star })
    }

    pub fn e(&self, l: usize) -> &Representation {
        &self.e[l - 1]
    }

    pub fn e_star(&self, l: usize) -> &Representation {
        &self.e_star[l - 1]
    }

    pub fn e_lambda(&self, l: usize) -> Result<Representation> {
        self.e(l).inflate(&self.lambda)
    }

    pub fn e_star_lambda(&self, l: usize) -> Result<Representation> {
        self.e_star(l).inflate(&self.lambda)
    }

    /// Simples, projectives, injectives and mouth modules over each of the three algebras.
    pub fn all_modules(&self) -> Result<Vec<(String, Representation)>> {
        let mut out = Vec::new();
        let algebras = [("H", &self.h), ("Hstar", &self.hstar), ("Lambda", &self.lambda)];
        for (name, a) in algebras {
            for v in 1..=self.config.vertex_count() {
                out.push((format!("{name}:S{v}"), simple(a, v)?));
                out.push((format!("{name}:P{v}"), projective(a, v)?));
                out.push((format!("{name}:I{v}"), injective(a, v)?));
            }
        }
        for l in 1..=self.config.rank() {
            out.push((format!("H:E{l}"), self.e(l).clone()));
            out.push((format!("Hstar:E*{l}"), self.e_star(l).clone()));
            out.push((format!("Lambda:E{l}"), self.e_lambda(l)?));
            out.push((format!("Lambda:E*{l}"), self.e_star_lambda(l)?));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomEntry {
    pub from: usize,
    pub to: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStep {
    /// `τ` is applied to the module with this index.
    pub l: usize,
    pub expected: usize,
    pub verdict: String,
    pub reason: Option<String>,
    /// Per-vertex components of the isomorphism `τ M -> expected`, entries as strings.
    pub witness: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TubeSide {
    pub algebra: String,
    pub dim_vectors: Vec<Vec<usize>>,
    pub bricks: Vec<bool>,
    /// `hom_dim(E_r, E_p)` for every `r != p`.
    pub orthogonality: Vec<HomEntry>,
    pub tau_orbit: Vec<OrbitStep>,
    /// Length of the `τ`-cycle through the first module, when the steps close up.
    pub period: Option<usize>,
    pub pd_at_most_one: Vec<bool>,
    pub failures: Vec<String>,
}

impl TubeSide {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Tube checks on a supplied family `mods[l-1]`, where `τ mods[l-1]` is
/// expected to be `mods[next(l)-1]`.
pub fn check_tube_side(
    algebra: &str,
    mods: &[Representation],
    next: impl Fn(usize) -> usize,
    opts: &IsoOptions,
) -> Result<TubeSide> {
    let r = mods.len();
    let mut failures = Vec::new();
    let mut bricks = Vec::new();
    for (i, m) in mods.iter().enumerate() {
        let b = !m.is_zero() && is_brick(m)?;
        if !b {
            failures.push(format!("{algebra}: module {} is not a brick", i + 1));
        }
        bricks.push(b);
    }
    let mut orthogonality = Vec::new();
    for (i, a) in mods.iter().enumerate() {
        for (j, b) in mods.iter().enumerate() {
            if i == j {
                continue;
            }
            let dim = hom_dim(a, b)?;
            if dim != 0 {
                failures.push(format!("{algebra}: Hom({}, {}) has dimension {dim}", i + 1, j + 1));
            }
            orthogonality.push(HomEntry { from: i + 1, to: j + 1, dim });
        }
    }
    let mut tau_orbit = Vec::new();
    for (i, m) in mods.iter().enumerate() {
        let l = i + 1;
        let expected = next(l);
        let t = tau(m)?;
        let verdict = are_isomorphic(&t, &mods[expected - 1], opts)?;
        let (reason, witness) = match &verdict {
            IsoVerdict::Iso(w) => (None, Some(w.components().iter().map(matrix_strings).collect())),
            IsoVerdict::NotIso(why) => (Some(why.clone()), None),
            IsoVerdict::Undetermined => (Some("no invertible morphism sampled".into()), None),
        };
        if !verdict.is_iso() {
            failures.push(format!(
                "{algebra}: tau of module {l} is {} to module {expected}",
                verdict.label()
            ));
        }
        tau_orbit.push(OrbitStep {
            l,
            expected,
            verdict: verdict.label().into(),
            reason,
            witness,
        });
    }
    let period = if tau_orbit.iter().all(|s| s.verdict == "iso") && r > 0 {
        let mut k = 1;
        let mut at = next(1);
        while at != 1 && k <= r {
            at = next(at);
            k += 1;
        }
        (at == 1).then_some(k)
    } else {
        None
    };
    if period != Some(r) {
        failures.push(format!("{algebra}: tau-period is {period:?}, expected {r}"));
    }
    let mut pd = Vec::new();
    for (i, m) in mods.iter().enumerate() {
        let ok = projective_dimension_at_most_one(m)?;
        if !ok {
            failures.push(format!("{algebra}: module {} has pd > 1", i + 1));
        }
        pd.push(ok);
    }
    Ok(TubeSide {
        algebra: algebra.into(),
        dim_vectors: mods.iter().map(|m| m.dim_vector().0).collect(),
        bricks,
        orthogonality,
        tau_orbit,
        period,
        pd_at_most_one: pd,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TubeReport {
    pub n: usize,
    pub field: String,
    pub rank_claimed: usize,
    pub labeling: Vec<ArrowLabel>,
    /// `τ E_{l+1} ≅ E_l` over `H_n`, cyclically.
    pub h: TubeSide,
    /// `τ E*_l ≅ E*_{l+1}` over `H_n*`, cyclically.
    pub hstar: TubeSide,
    pub passed: bool,
}

/// `E_l ↦ E_{l-1}` on the mouth of rank `r`, cyclically.
pub fn tube_predecessor(r: usize) -> impl Fn(usize) -> usize {
    move |l| if l == 1 { r } else { l - 1 }
}

/// `E*_l ↦ E*_{l+1}` on the mouth of rank `r`, cyclically.
pub fn tube_successor(r: usize) -> impl Fn(usize) -> usize {
    move |l| if l == r { 1 } else { l + 1 }
}

pub fn verify_tube(config: GalleryConfig, opts: &IsoOptions) -> Result<TubeReport> {
    let g = Gallery::new(config)?;
    verify_tube_modules(&g, &g.e, &g.e_star, opts)
}

/// Tube checks with caller-supplied mouth modules, e.g. corrupted ones.
pub fn verify_tube_modules(
    g: &Gallery,
    e: &[Representation],
    e_star: &[Representation],
    opts: &IsoOptions,
) -> Result<TubeReport> {
    let r = g.config.rank();
    let h = check_tube_side("H", e, tube_predecessor(r), opts)?;
    let hstar = check_tube_side("Hstar", e_star, tube_successor(r), opts)?;
    let passed = h.passed() && hstar.passed();
    Ok(TubeReport {
        n: g.config.n,
        field: g.config.field.to_string(),
        rank_claimed: r,
        labeling: labeling(g.config.n),
        h,
        hstar,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortCycleEntry {
    pub l: usize,
    pub class_e: Vec<usize>,
    pub class_e_star: Vec<usize>,
    pub hom_e_to_e_star: usize,
    pub hom_e_star_to_e: usize,
    pub top_e: Vec<usize>,
    pub socle_e: Vec<usize>,
    pub top_e_star: Vec<usize>,
    pub socle_e_star: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCase {
    pub l: usize,
    pub x: String,
    pub report: FormulaReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortCycleReport {
    pub n: usize,
    pub field: String,
    pub entries: Vec<ShortCycleEntry>,
    pub formulas: Vec<FormulaCase>,
    pub formula_failures: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Test modules over `Λ_n` for the length formulas: simples, projectives, `E_k`, `E*_k`.
pub fn formula_test_modules(g: &Gallery) -> Result<Vec<(String, Representation)>> {
    let mut xs = Vec::new();
    for v in 1..=g.config.vertex_count() {
        xs.push((format!("S{v}"), simple(&g.lambda, v)?));
    }
    for v in 1..=g.config.vertex_count() {
        xs.push((format!("P{v}"), projective(&g.lambda, v)?));
    }
    for k in 1..=g.config.rank() {
        xs.push((format!("E{k}"), g.e_lambda(k)?));
    }
    for k in 1..=g.config.rank() {
        xs.push((format!("E*{k}"), g.e_star_lambda(k)?));
    }
    Ok(xs)
}

pub fn verify_short_cycle(config: GalleryConfig) -> Result<ShortCycleReport> {
    let g = Gallery::new(config)?;
    let pairs = (1..=config.rank())
        .map(|l| Ok((g.e_lambda(l)?, g.e_star_lambda(l)?)))
        .collect::<Result<Vec<_>>>()?;
    verify_short_cycle_modules(&g, &pairs)
}

/// Short-cycle checks and the formula suite on supplied pairs `(E_l, E*_l)` over `Λ_n`.
pub fn verify_short_cycle_modules(
    g: &Gallery,
    pairs: &[(Representation, Representation)],
) -> Result<ShortCycleReport> {
    let mut failures = Vec::new();
    let mut entries = Vec::new();
    for (i, (e, es)) in pairs.iter().enumerate() {
        let l = i + 1;
        let entry = ShortCycleEntry {
            l,
            class_e: e.dim_vector().0,
            class_e_star: es.dim_vector().0,
            hom_e_to_e_star: hom_dim(e, es)?,
            hom_e_star_to_e: hom_dim(es, e)?,
            top_e: e.top().0,
            socle_e: e.socle().0,
            top_e_star: es.top().0,
            socle_e_star: es.socle().0,
            passed: false,
        };
        let mut ok = true;
        if entry.class_e != entry.class_e_star {
            failures.push(format!("l={l}: [E] != [E*]"));
            ok = false;
        }
        if entry.hom_e_to_e_star == 0 || entry.hom_e_star_to_e == 0 {
            failures.push(format!("l={l}: a Hom space between E and E* vanishes"));
            ok = false;
        }
        if entry.top_e_star != entry.socle_e || entry.top_e != entry.socle_e_star {
            failures.push(format!("l={l}: top/socle classes do not match"));
            ok = false;
        }
        entries.push(ShortCycleEntry { passed: ok, ..entry });
    }

    let xs = formula_test_modules(g)?;
    let mut formulas = Vec::new();
    let mut formula_failures = 0;
    for (name, x) in &xs {
        let tx = tau(x)?;
        let tmx = tau_minus(x)?;
        for (i, (e, es)) in pairs.iter().enumerate() {
            for report in [check_formula_i_with(x, &tx, e, es)?, check_formula_ii_with(x, &tmx, e, es)?] {
                if report.holds() != Some(true) {
                    formula_failures += 1;
                    failures.push(format!("l={} X={name}: formula check did not hold", i + 1));
                }
                formulas.push(FormulaCase { l: i + 1, x: name.clone(), report });
            }
        }
    }
    let passed = failures.is_empty();
    Ok(ShortCycleReport {
        n: g.config.n,
        field: g.config.field.to_string(),
        entries,
        formulas,
        formula_failures,
        failures,
        passed,
    })
}

/// `Σ_l [E_l]` over `H_n`.
pub fn mouth_class_sum(g: &Gallery) -> DimVector {
    g.e.iter()
        .fold(DimVector::zeros(g.config.vertex_count()), |acc, m| &acc + &m.dim_vector())
}
