//! Resolution of algebra and module slots: file paths or selectors.
//!
//! Algebra selectors: `gallery:H:<n>`, `gallery:Hstar:<n>`, `gallery:Lambda:<n>`.
//! Module selectors: `simple:<v>`, `projective:<v>`, `injective:<v>`,
//! `gallery:E:<l>`, `gallery:Estar:<l>`; gallery modules are placed over the
//! slot's algebra, which must be one of the gallery algebras.

use std::path::Path;
use std::sync::Arc;

use quiverbench::gallery::{Gallery, GalleryConfig};
use quiverbench::io::{load_algebra, load_representation, load_representation_over};
use quiverbench::{injective, projective, simple, BoundAlgebra, Error, Field, Representation, Result};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn number(text: &str, what: &str) -> Result<usize> {
    text.parse().map_err(|_| usage(format!("{what}: expected a positive integer, got {text:?}")))
}

fn is_selector(s: &str) -> bool {
    ["gallery:", "simple:", "projective:", "injective:"]
        .iter()
        .any(|p| s.starts_with(p))
}

pub fn resolve_algebra(slot: &str, field: Field) -> Result<Arc<BoundAlgebra>> {
    if let Some(rest) = slot.strip_prefix("gallery:") {
        let (kind, n) = rest
            .split_once(':')
            .ok_or_else(|| usage(format!("algebra selector {slot:?}: expected gallery:<H|Hstar|Lambda>:<n>")))?;
        let g = Gallery::new(GalleryConfig::new(number(n, slot)?, field)?)?;
        return match kind {
            "H" => Ok(g.h),
            "Hstar" => Ok(g.hstar),
            "Lambda" => Ok(g.lambda),
            other => Err(usage(format!("unknown gallery algebra {other:?} (use H, Hstar or Lambda)"))),
        };
    }
    load_algebra(slot)
}

fn gallery_module(algebra: &Arc<BoundAlgebra>, star: bool, l: usize) -> Result<Representation> {
    let n = algebra
        .vertex_count()
        .checked_sub(1)
        .filter(|n| *n >= 4)
        .ok_or_else(|| usage("gallery modules need a gallery algebra"))?;
    let g = Gallery::new(GalleryConfig::new(n, algebra.field())?)?;
    if l == 0 || l > g.config.rank() {
        return Err(usage(format!("l must lie in 1..={}, got {l}", g.config.rank())));
    }
    let m = if algebra.same_presentation(&g.lambda) {
        if star {
            g.e_star_lambda(l)?
        } else {
            g.e_lambda(l)?
        }
    } else if !star && algebra.same_presentation(&g.h) {
        g.e(l).clone()
    } else if star && algebra.same_presentation(&g.hstar) {
        g.e_star(l).clone()
    } else {
        let which = if star { "Estar" } else { "E" };
        return Err(usage(format!("gallery:{which} is not defined over this algebra")));
    };
    m.inflate(algebra)
}

fn module_selector(slot: &str, algebra: &Arc<BoundAlgebra>) -> Result<Representation> {
    let parts: Vec<&str> = slot.split(':').collect();
    match parts.as_slice() {
        ["simple", v] => simple(algebra, number(v, slot)?),
        ["projective", v] => projective(algebra, number(v, slot)?),
        ["injective", v] => injective(algebra, number(v, slot)?),
        ["gallery", "E", l] => gallery_module(algebra, false, number(l, slot)?),
        ["gallery", "Estar", l] => gallery_module(algebra, true, number(l, slot)?),
        _ => Err(usage(format!("unknown module selector {slot:?}"))),
    }
}

/// Resolves module slots over one common algebra: `--a` when given, otherwise
/// the algebra referenced by the first module file.
pub fn resolve_modules(
    algebra_slot: Option<&str>,
    field: Field,
    slots: &[&str],
) -> Result<(Arc<BoundAlgebra>, Vec<Representation>)> {
    let algebra = match algebra_slot {
        Some(a) => resolve_algebra(a, field)?,
        None => {
            let first = slots
                .iter()
                .find(|s| !is_selector(s))
                .ok_or_else(|| usage("selectors need an algebra; pass --a"))?;
            load_representation(first)?.algebra().clone()
        }
    };
    let mods = slots
        .iter()
        .map(|s| {
            if is_selector(s) {
                module_selector(s, &algebra)
            } else {
                load_representation_over(Path::new(s), &algebra)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((algebra, mods))
}
