use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use quiverbench::ar::{check_formula_i, check_formula_ii, tau, tau_minus, FormulaReport};
use quiverbench::gallery::{
    matrix_strings, verify_short_cycle_modules, verify_tube_modules, Gallery, GalleryConfig,
};
use quiverbench::hom::{are_isomorphic, ext1_dim, hom_basis, IsoOptions};
use quiverbench::io::{export_gallery, save_representation, AlgebraFile, AlgebraRef};
use quiverbench::{BoundAlgebra, Error, Field, IsoVerdict, Representation, Result, TrivialExtension};
use serde_json::{json, Value};

use crate::inputs::{resolve_algebra, resolve_modules};

pub struct Report {
    pub verb: &'static str,
    pub inputs: BTreeMap<String, Value>,
    pub field: String,
    pub results: Value,
    pub passed: bool,
    /// Overrides the exit status derived from `passed`.
    pub exit: Option<u8>,
}

impl Report {
    fn new(verb: &'static str, field: Field, results: Value, passed: bool) -> Self {
        Report {
            verb,
            inputs: BTreeMap::new(),
            field: field.to_string(),
            results,
            passed,
            exit: None,
        }
    }

    fn input(mut self, slot: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(slot.into(), value.into());
        self
    }

    pub fn exit_code(&self) -> u8 {
        self.exit.unwrap_or(if self.passed { 0 } else { 1 })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verb": self.verb,
            "inputs": self.inputs,
            "field": self.field,
            "results": self.results,
            "passed": self.passed,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} over {}\n", self.verb, self.field);
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                out.push_str(&format!("  {k}: {v}\n"));
            }
        } else {
            out.push_str(&format!("  {}\n", self.results));
        }
        out.push_str(&format!("passed: {}\n", self.passed));
        out
    }
}

fn representation_json(m: &Representation) -> Value {
    let q = m.algebra().quiver();
    let matrices: BTreeMap<&str, Vec<Vec<String>>> = q
        .arrows()
        .iter()
        .zip(m.maps())
        .filter(|(_, x)| !x.is_zero())
        .map(|(a, x)| (a.name.as_str(), matrix_strings(x)))
        .collect();
    json!({ "dims": m.dims(), "matrices": matrices })
}

/// Rejects inputs that violate the algebra's relations.
fn require_valid(slot: &str, m: &Representation) -> Result<()> {
    let report = m.validate();
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidRepresentation(format!("{slot}: {}", v.description))),
    }
}

fn modules(a: Option<&str>, field: Field, slots: &[(&str, &str)]) -> Result<(std::sync::Arc<BoundAlgebra>, Vec<Representation>)> {
    let names: Vec<&str> = slots.iter().map(|(_, s)| *s).collect();
    let (alg, mods) = resolve_modules(a, field, &names)?;
    for ((slot, _), m) in slots.iter().zip(&mods) {
        require_valid(slot, m)?;
    }
    Ok((alg, mods))
}

fn with_inputs(mut r: Report, a: Option<&str>, slots: &[(&str, &str)]) -> Report {
    if let Some(a) = a {
        r = r.input("a", a);
    }
    for (slot, s) in slots {
        r = r.input(slot, *s);
    }
    r
}

pub fn algebra_info(a: &str, field: Field, trivial_extension: bool) -> Result<Report> {
    let alg = resolve_algebra(a, field)?;
    let rep = alg.admissibility_report();
    let q = alg.quiver();
    let blocks: Vec<Value> = rep
        .block_counts
        .iter()
        .map(|((s, t), c)| json!({ "source": s, "target": t, "count": c }))
        .collect();
    let mut results = json!({
        "vertices": q.vertex_count(),
        "arrows": AlgebraFile::from_algebra(&alg).arrows,
        "relations": alg.relations().iter().map(|r| r.display(q)).collect::<Vec<_>>(),
        "dimension": rep.dimension,
        "nilpotency_degree": rep.nilpotency_degree,
        "block_counts": blocks,
        "relations_in_arrow_square": rep.relations_in_arrow_square,
        "relations_vanish": rep.relations_vanish,
    });
    let mut passed = rep.relations_in_arrow_square && rep.relations_vanish;
    if trivial_extension {
        let t = TrivialExtension::new(&alg);
        let (sym, inv, assoc) = (t.form_is_symmetric(), t.form_is_nondegenerate(), t.is_associative());
        passed &= sym && inv && assoc;
        results["trivial_extension"] = json!({
            "dimension": t.dimension(),
            "form_symmetric": sym,
            "form_invertible": inv,
            "associative": assoc,
        });
    }
    Ok(Report::new("algebra-info", alg.field(), results, passed).input("a", a))
}

pub fn rep_validate(a: Option<&str>, m: &str, field: Field) -> Result<Report> {
    let (alg, mods) = resolve_modules(a, field, &[m])?;
    let report = mods[0].validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "relation": v.description, "matrix": matrix_strings(&v.matrix) }))
        .collect();
    let results = json!({ "valid": report.is_valid(), "violations": violations });
    Ok(with_inputs(Report::new("rep-validate", alg.field(), results, report.is_valid()), a, &[("m", m)]))
}

pub fn dimvec(a: Option<&str>, m: &str, field: Field) -> Result<Report> {
    let (alg, mods) = modules(a, field, &[("m", m)])?;
    let x = &mods[0];
    let results = json!({
        "dim_vector": x.dim_vector().0,
        "total": x.total_dim(),
        "radical": x.radical().dim_vector().0,
        "top": x.top().0,
        "socle": x.socle().0,
    });
    Ok(with_inputs(Report::new("dimvec", alg.field(), results, true), a, &[("m", m)]))
}

pub fn hom(a: Option<&str>, m: &str, n: &str, field: Field, with_basis: bool) -> Result<Report> {
    let slots = [("m", m), ("n", n)];
    let (alg, mods) = modules(a, field, &slots)?;
    let basis = hom_basis(&mods[0], &mods[1])?;
    let mut results = json!({ "dimension": basis.len() });
    if with_basis {
        let b: Vec<Vec<Vec<Vec<String>>>> = basis
            .iter()
            .map(|f| f.components().iter().map(matrix_strings).collect())
            .collect();
        results["basis"] = json!(b);
    }
    Ok(with_inputs(Report::new("hom", alg.field(), results, true), a, &slots))
}

pub fn ext1(a: Option<&str>, m: &str, n: &str, field: Field) -> Result<Report> {
    let slots = [("m", m), ("n", n)];
    let (alg, mods) = modules(a, field, &slots)?;
    let results = json!({ "dimension": ext1_dim(&mods[0], &mods[1])? });
    Ok(with_inputs(Report::new("ext1", alg.field(), results, true), a, &slots))
}

pub fn translate(a: Option<&str>, m: &str, field: Field, minus: bool, emit: Option<&Path>) -> Result<Report> {
    let (alg, mods) = modules(a, field, &[("m", m)])?;
    let t = if minus { tau_minus(&mods[0])? } else { tau(&mods[0])? };
    if let Some(path) = emit {
        let inline = AlgebraRef::Inline(Box::new(AlgebraFile::from_algebra(t.algebra())));
        save_representation(path, &t, inline)?;
    }
    let verb = if minus { "tau-minus" } else { "tau" };
    let mut results = representation_json(&t);
    results["is_zero"] = json!(t.is_zero());
    Ok(with_inputs(Report::new(verb, alg.field(), results, true), a, &[("m", m)]))
}

fn verdict_json(v: &IsoVerdict) -> Value {
    match v {
        IsoVerdict::Iso(w) => json!({
            "verdict": "iso",
            "witness": w.components().iter().map(matrix_strings).collect::<Vec<_>>(),
        }),
        IsoVerdict::NotIso(reason) => json!({ "verdict": "not_iso", "reason": reason }),
        IsoVerdict::Undetermined => json!({ "verdict": "undetermined" }),
    }
}

pub fn iso(a: Option<&str>, m: &str, n: &str, field: Field, seed: u64) -> Result<Report> {
    let slots = [("m", m), ("n", n)];
    let (alg, mods) = modules(a, field, &slots)?;
    let opts = IsoOptions { seed, ..IsoOptions::default() };
    let v = are_isomorphic(&mods[0], &mods[1], &opts)?;
    Ok(with_inputs(Report::new("iso", alg.field(), verdict_json(&v), v.is_iso()), a, &slots))
}

pub fn formula(a: Option<&str>, which: &str, x: &str, m: &str, n: &str, field: Field) -> Result<Report> {
    let slots = [("x", x), ("m", m), ("n", n)];
    let (alg, mods) = modules(a, field, &slots)?;
    let report = match which {
        "i" => check_formula_i(&mods[0], &mods[1], &mods[2])?,
        "ii" => check_formula_ii(&mods[0], &mods[1], &mods[2])?,
        other => return Err(Error::Usage(format!("--which must be i or ii, got {other:?}"))),
    };
    let mut r = Report::new("formula", alg.field(), json!(report), report.holds() == Some(true));
    if let FormulaReport::HypothesisFails { .. } = report {
        r.exit = Some(2);
    }
    Ok(with_inputs(r.input("which", which), a, &slots))
}

/// The mouth with `E_l` (and `E*_l`) replaced by the same spaces with zero maps.
fn corrupt(m: &Representation) -> Result<Representation> {
    Representation::from_named(m.algebra().clone(), m.dims().to_vec(), HashMap::new())
}

pub fn gallery_tube(n: usize, field: Field, seed: u64, corrupt_l: Option<usize>) -> Result<Report> {
    let g = Gallery::new(GalleryConfig::new(n, field)?)?;
    let mut e = g.e.clone();
    let mut e_star = g.e_star.clone();
    if let Some(l) = corrupt_l {
        if l == 0 || l > e.len() {
            return Err(Error::Usage(format!("--corrupt must lie in 1..={}", e.len())));
        }
        e[l - 1] = corrupt(&e[l - 1])?;
        e_star[l - 1] = corrupt(&e_star[l - 1])?;
    }
    let opts = IsoOptions { seed, ..IsoOptions::default() };
    let report = verify_tube_modules(&g, &e, &e_star, &opts)?;
    let mut r = Report::new("gallery-tube", field, json!(report), report.passed)
        .input("n", n)
        .input("field", field.to_string());
    if let Some(l) = corrupt_l {
        r = r.input("corrupt", l);
    }
    Ok(r)
}

pub fn gallery_short_cycle(n: usize, field: Field, corrupt_l: Option<usize>) -> Result<Report> {
    let g = Gallery::new(GalleryConfig::new(n, field)?)?;
    let mut pairs = (1..=g.config.rank())
        .map(|l| Ok((g.e_lambda(l)?, g.e_star_lambda(l)?)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(l) = corrupt_l {
        if l == 0 || l > pairs.len() {
            return Err(Error::Usage(format!("--corrupt must lie in 1..={}", pairs.len())));
        }
        pairs[l - 1].0 = corrupt(&pairs[l - 1].0)?;
    }
    let report = verify_short_cycle_modules(&g, &pairs)?;
    let mut r = Report::new("gallery-short-cycle", field, json!(report), report.passed)
        .input("n", n)
        .input("field", field.to_string());
    if let Some(l) = corrupt_l {
        r = r.input("corrupt", l);
    }
    Ok(r)
}

pub fn export(n: usize, field: Field, dir: &Path) -> Result<Report> {
    let files = export_gallery(dir, GalleryConfig::new(n, field)?)?;
    let names: Vec<String> = files
        .iter()
        .filter_map(|p| p.file_name().map(|f| f.to_string_lossy().into_owned()))
        .collect();
    let results = json!({ "files": names, "count": names.len() });
    Ok(Report::new("export-gallery", field, results, true)
        .input("n", n)
        .input("field", field.to_string())
        .input("dir", dir.display().to_string()))
}
