//! JSON files for algebras and representations, and export of the gallery.
//!
//! Algebra file:
//! `{"field": {"kind":"gf","p":5} | {"kind":"q"}, "vertices": n,
//!   "arrows": [{"name","source","target"}],
//!   "relations": [{"terms": [{"coeff":"-1","path":["a","b"]}]}], "max_length": 30}`
//!
//! Representation file: `{"algebra": "relative/path.json" | {inline algebra},
//! "dims": [..], "matrices": {"arrow": [[row], ..]}}`, each matrix shaped
//! `dims[target] × dims[source]`; omitted arrows act as zero.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{BoundAlgebra, Relation, DEFAULT_MAX_LENGTH};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::gallery::{Gallery, GalleryConfig};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, Path, Quiver};
use crate::rep::{injective, projective, simple, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldSpec {
    #[serde(rename = "gf")]
    Gf { p: u64 },
    #[serde(rename = "q")]
    Q,
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Gf { p } => Field::prime(*p),
            FieldSpec::Q => Ok(Field::Rational),
        }
    }

    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Prime(p) => FieldSpec::Gf { p },
            Field::Rational => FieldSpec::Q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A scalar written either as a string (`"-1"`, `"2/3"`) or a bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarText::Text(s) => field.parse_scalar(s),
            ScalarText::Int(v) => Ok(field.from_i64(*v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: ScalarText,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub vertices: usize,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub algebra: AlgebraRef,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<ScalarText>>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "document".to_string() } else { path };
        Error::Parse(format!("{origin}: field `{field}`: {}", e.inner()))
    })
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn context(origin: &str, field: &str, e: Error) -> Error {
    Error::Parse(format!("{origin}: field `{field}`: {e}"))
}

impl AlgebraFile {
    pub fn from_algebra(a: &BoundAlgebra) -> Self {
        let q = a.quiver();
        AlgebraFile {
            field: FieldSpec::from_field(a.field()),
            vertices: q.vertex_count(),
            arrows: q
                .arrows()
                .iter()
                .map(|x| ArrowSpec {
                    name: x.name.clone(),
                    source: x.source,
                    target: x.target,
                })
                .collect(),
            relations: a
                .relations()
                .iter()
                .map(|r| RelationSpec {
                    terms: r
                        .terms()
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: ScalarText::Text(c.to_string()),
                            path: p.names(q).into_iter().map(String::from).collect(),
                        })
                        .collect(),
                })
                .collect(),
            max_length: Some(a.max_length()),
        }
    }

    pub fn build(&self, origin: &str) -> Result<BoundAlgebra> {
        let field = self.field.to_field().map_err(|e| context(origin, "field", e))?;
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.name.clone(), a.source, a.target))
            .collect();
        let q = Quiver::new(self.vertices, arrows).map_err(|e| context(origin, "arrows", e))?;
        let mut relations = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (j, t) in r.terms.iter().enumerate() {
                let at = format!("relations[{i}].terms[{j}]");
                let c = t.coeff.parse(field).map_err(|e| context(origin, &format!("{at}.coeff"), e))?;
                let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                let p = Path::from_names(&q, &names).map_err(|e| context(origin, &format!("{at}.path"), e))?;
                terms.push((c, p));
            }
            relations.push(Relation::new(terms).map_err(|e| context(origin, &format!("relations[{i}]"), e))?);
        }
        BoundAlgebra::build(field, q, relations, self.max_length.unwrap_or(DEFAULT_MAX_LENGTH))
    }
}

pub fn parse_algebra(text: &str, origin: &str) -> Result<BoundAlgebra> {
    parse_json::<AlgebraFile>(text, origin)?.build(origin)
}

pub fn load_algebra(path: impl AsRef<FsPath>) -> Result<Arc<BoundAlgebra>> {
    let path = path.as_ref();
    Ok(Arc::new(parse_algebra(&read(path)?, &path.display().to_string())?))
}

pub fn algebra_json(a: &BoundAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("algebra serializes")
}

pub fn save_algebra(path: impl AsRef<FsPath>, a: &BoundAlgebra) -> Result<()> {
    fs::write(path, algebra_json(a) + "\n")?;
    Ok(())
}

impl RepresentationFile {
    pub fn from_representation(m: &Representation, algebra: AlgebraRef) -> Self {
        let q = m.algebra().quiver();
        let matrices = q
            .arrows()
            .iter()
            .zip(m.maps())
            .filter(|(_, x)| !x.is_zero())
            .map(|(a, x)| {
                let rows = (0..x.rows())
                    .map(|r| x.row(r).iter().map(|s| ScalarText::Text(s.to_string())).collect())
                    .collect();
                (a.name.clone(), rows)
            })
            .collect();
        RepresentationFile {
            algebra,
            dims: m.dims().to_vec(),
            matrices,
        }
    }

    /// Builds the module over `algebra`, which must match the file's own reference.
    pub fn build_over(&self, algebra: &Arc<BoundAlgebra>, origin: &str) -> Result<Representation> {
        let field = algebra.field();
        let q = algebra.quiver();
        if self.dims.len() != q.vertex_count() {
            return Err(context(
                origin,
                "dims",
                Error::DimensionMismatch(format!("{} entries for {} vertices", self.dims.len(), q.vertex_count())),
            ));
        }
        let mut named = HashMap::new();
        for (name, rows) in &self.matrices {
            let at = format!("matrices.{name}");
            let idx = q
                .arrow_index(name)
                .ok_or_else(|| context(origin, &at, Error::InvalidRepresentation(format!("unknown arrow {name}"))))?;
            let a = q.arrow(idx);
            let (r, c) = (self.dims[a.target - 1], self.dims[a.source - 1]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(context(
                    origin,
                    &at,
                    Error::DimensionMismatch(format!("expected a {r}x{c} matrix")),
                ));
            }
            let mut m = Matrix::zeros(field, r, c);
            for (i, row) in rows.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let s = x.parse(field).map_err(|e| context(origin, &format!("{at}[{i}][{j}]"), e))?;
                    m.set(i, j, s);
                }
            }
            named.insert(name.clone(), m);
        }
        Representation::from_named(algebra.clone(), self.dims.clone(), named)
    }

    pub fn resolve_algebra(&self, base: &FsPath, origin: &str) -> Result<Arc<BoundAlgebra>> {
        match &self.algebra {
            AlgebraRef::Path(p) => load_algebra(base.join(p)),
            AlgebraRef::Inline(a) => Ok(Arc::new(a.build(&format!("{origin} (inline algebra)"))?)),
        }
    }
}

/// Loads a representation together with the algebra it references.
pub fn load_representation(path: impl AsRef<FsPath>) -> Result<Representation> {
    let path = path.as_ref();
    let origin = path.display().to_string();
    let file: RepresentationFile = parse_json(&read(path)?, &origin)?;
    let base = path.parent().unwrap_or(FsPath::new("."));
    let algebra = file.resolve_algebra(base, &origin)?;
    file.build_over(&algebra, &origin)
}

/// Loads a representation and places it over `algebra`; the file's own algebra
/// reference must describe the same presentation.
pub fn load_representation_over(path: impl AsRef<FsPath>, algebra: &Arc<BoundAlgebra>) -> Result<Representation> {
    let path = path.as_ref();
    let origin = path.display().to_string();
    let file: RepresentationFile = parse_json(&read(path)?, &origin)?;
    let base = path.parent().unwrap_or(FsPath::new("."));
    let own = file.resolve_algebra(base, &origin)?;
    if !own.same_presentation(algebra) {
        return Err(context(&origin, "algebra", Error::AlgebraMismatch));
    }
    file.build_over(algebra, &origin)
}

pub fn save_representation(path: impl AsRef<FsPath>, m: &Representation, algebra: AlgebraRef) -> Result<()> {
    let file = RepresentationFile::from_representation(m, algebra);
    fs::write(path, serde_json::to_string_pretty(&file)? + "\n")?;
    Ok(())
}

/// Writes the algebras `H_n`, `H_n*`, `Λ_n` and the gallery modules into `dir`.
/// Modules named without suffix live over `Λ_n`.
pub fn export_gallery(dir: impl AsRef<FsPath>, config: GalleryConfig) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let g = Gallery::new(config)?;
    let n = config.n;
    let mut written = Vec::new();
    let lambda_file = format!("lambda{n}.json");
    let h_file = format!("h{n}.json");
    let hstar_file = format!("hstar{n}.json");
    for (name, a) in [(&lambda_file, &g.lambda), (&h_file, &g.h), (&hstar_file, &g.hstar)] {
        let p = dir.join(name);
        save_algebra(&p, a)?;
        written.push(p);
    }
    let mut save = |name: String, m: &Representation, over: &str| -> Result<()> {
        let p = dir.join(name);
        save_representation(&p, m, AlgebraRef::Path(over.to_string()))?;
        written.push(p);
        Ok(())
    };
    for l in 1..=config.rank() {
        save(format!("e{l}.json"), &g.e_lambda(l)?, &lambda_file)?;
        save(format!("e{l}star.json"), &g.e_star_lambda(l)?, &lambda_file)?;
        save(format!("e{l}_h.json"), g.e(l), &h_file)?;
        save(format!("e{l}star_hstar.json"), g.e_star(l), &hstar_file)?;
    }
    for v in 1..=config.vertex_count() {
        save(format!("s{v}.json"), &simple(&g.lambda, v)?, &lambda_file)?;
        save(format!("p{v}.json"), &projective(&g.lambda, v)?, &lambda_file)?;
        save(format!("i{v}.json"), &injective(&g.lambda, v)?, &lambda_file)?;
    }
    Ok(written)
}
