//! Finite quivers and their paths. Vertices are numbered `1..=vertex_count`.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: usize, target: usize) -> Self {
        Arrow {
            name: name.into(),
            source,
            target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    by_name: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut by_name = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            for v in [a.source, a.target] {
                if v == 0 || v > vertex_count {
                    return Err(Error::InvalidQuiver(format!(
                        "arrow {} touches vertex {v} outside 1..={vertex_count}",
                        a.name
                    )));
                }
            }
            if by_name.insert(a.name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
            by_name,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// Same vertices and arrow names, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.name.clone(), a.target, a.source))
            .collect();
        Quiver {
            vertex_count: self.vertex_count,
            arrows,
            by_name: self.by_name.clone(),
        }
    }
}

/// A path in traversal order: `arrows[k+1]` starts where `arrows[k]` ends.
/// The empty sequence is the stationary path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(quiver: &Quiver, idx: usize) -> Self {
        let a = quiver.arrow(idx);
        Path {
            source: a.source,
            target: a.target,
            arrows: vec![idx],
        }
    }

    /// Builds a path from arrow indices, checking that consecutive arrows compose.
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::InvalidRelation("empty arrow sequence".into()))?;
        for w in arrows.windows(2) {
            let (a, b) = (quiver.arrow(w[0]), quiver.arrow(w[1]));
            if a.target != b.source {
                return Err(Error::InvalidRelation(format!(
                    "arrows {} and {} do not compose",
                    a.name, b.name
                )));
            }
        }
        let last = *arrows.last().expect("nonempty");
        Ok(Path {
            source: quiver.arrow(first).source,
            target: quiver.arrow(last).target,
            arrows,
        })
    }

    pub fn from_names(quiver: &Quiver, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| {
                quiver
                    .arrow_index(n)
                    .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_arrows(quiver, idx)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`, if they meet.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    pub(crate) fn extend(&self, quiver: &Quiver, idx: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(idx);
        Path {
            source: self.source,
            target: quiver.arrow(idx).target,
            arrows,
        }
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn names<'q>(&self, quiver: &'q Quiver) -> Vec<&'q str> {
        self.arrows.iter().map(|&i| quiver.arrow(i).name.as_str()).collect()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source)
        } else {
            self.names(quiver).join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker_like() -> Quiver {
        Quiver::new(
            3,
            vec![Arrow::new("a", 1, 2), Arrow::new("b", 2, 3), Arrow::new("c", 1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::new(2, vec![Arrow::new("a", 1, 3)]).is_err());
        assert!(Quiver::new(2, vec![Arrow::new("a", 1, 2), Arrow::new("a", 2, 1)]).is_err());
        assert!(Quiver::new(1, vec![Arrow::new("x", 1, 1)]).is_ok());
    }

    #[test]
    fn paths_compose() {
        let q = kronecker_like();
        let p = Path::from_names(&q, &["a", "b"]).unwrap();
        assert_eq!((p.source(), p.target(), p.len()), (1, 3, 2));
        assert!(Path::from_names(&q, &["b", "a"]).is_err());
        let r = p.reversed();
        assert_eq!((r.source(), r.target()), (3, 1));
        assert_eq!(r.names(&q), vec!["b", "a"]);
        let e = Path::stationary(1);
        assert_eq!(e.then(&p), Some(p.clone()));
        assert_eq!(p.then(&Path::stationary(1)), None);
    }

    #[test]
    fn opposite_is_involutive() {
        let q = kronecker_like();
        assert_eq!(q.opposite().opposite(), q);
        assert_eq!(q.opposite().arrow(0).source, 2);
    }
}
