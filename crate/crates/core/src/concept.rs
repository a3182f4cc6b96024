//! Formal contexts, Burmeister `.cxt` files, and concept algebras.
//!
//! The concept algebra of a context carries the weak negation
//! `(A, B) ↦ ((G∖A)″, (G∖A)′)` as its weak complementation and the weak
//! opposition `(A, B) ↦ ((M∖B)′, (M∖B)″)` as its dual weak complementation.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::dicomp::DicompAlgebra;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const DEFAULT_CONCEPT_BUDGET: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Vec<bool>>,
}

/// Which sort a subset is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Objects,
    Attributes,
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: Vec<Vec<bool>>) -> Result<FormalContext> {
        for names in [&objects, &attributes] {
            let mut seen = HashSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(Error::DuplicateName(dup.clone()));
            }
        }
        if incidence.len() != objects.len() {
            return Err(Error::DimensionMismatch(format!("{} rows for {} objects", incidence.len(), objects.len())));
        }
        if let Some((g, row)) = incidence.iter().enumerate().find(|(_, r)| r.len() != attributes.len()) {
            return Err(Error::DimensionMismatch(format!(
                "row {g} has {} cells for {} attributes",
                row.len(),
                attributes.len()
            )));
        }
        Ok(FormalContext { objects, attributes, incidence })
    }

    /// Objects `g1..gk`, attributes `m1..mk`, `gi I mj` iff `i ≠ j`.
    pub fn contranominal(k: usize) -> FormalContext {
        let objects = (1..=k).map(|i| format!("g{i}")).collect();
        let attributes = (1..=k).map(|i| format!("m{i}")).collect();
        let incidence = (0..k).map(|i| (0..k).map(|j| i != j).collect()).collect();
        FormalContext { objects, attributes, incidence }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.incidence[g][m]
    }

    pub fn parse_cxt(text: &str) -> Result<FormalContext> {
        let mut lines = text.lines().map(str::trim_end);
        let mut next = |what: &str| lines.next().ok_or_else(|| Error::DimensionMismatch(format!("file ends before {what}")));
        let header = |line: &str, what: &str| -> Result<()> {
            (line.is_empty()).then_some(()).ok_or_else(|| Error::MalformedHeader(format!("expected blank line before {what}, got {line:?}")))
        };
        let magic = next("header").map_err(|_| Error::MalformedHeader("empty file".into()))?;
        if magic != "B" {
            return Err(Error::MalformedHeader(format!("expected `B`, got {magic:?}")));
        }
        header(next("counts").map_err(|_| Error::MalformedHeader("missing counts".into()))?, "counts")?;
        let count = |line: Result<&str>, what: &str| -> Result<usize> {
            let line = line.map_err(|_| Error::MalformedHeader(format!("missing {what} count")))?;
            line.trim()
                .parse()
                .map_err(|_| Error::MalformedHeader(format!("{what} count {line:?} is not a number")))
        };
        let g = count(next("object count"), "object")?;
        let m = count(next("attribute count"), "attribute")?;
        header(next("names").map_err(|_| Error::MalformedHeader("missing names".into()))?, "names")?;

        let objects: Vec<String> = (0..g).map(|_| next("object names").map(str::to_string)).collect::<Result<_>>()?;
        let attributes: Vec<String> = (0..m).map(|_| next("attribute names").map(str::to_string)).collect::<Result<_>>()?;
        let mut incidence = Vec::with_capacity(g);
        for row in 0..g {
            let line = next("incidence rows")?;
            let cells: Vec<char> = line.chars().collect();
            if cells.len() != m {
                return Err(Error::DimensionMismatch(format!("row {row} has {} cells, expected {m}", cells.len())));
            }
            let parsed = cells
                .iter()
                .enumerate()
                .map(|(column, &cell)| match cell {
                    'X' => Ok(true),
                    '.' => Ok(false),
                    _ => Err(Error::IllegalCell { row, column, cell }),
                })
                .collect::<Result<Vec<bool>>>()?;
            incidence.push(parsed);
        }
        if let Some(extra) = lines.find(|l| !l.is_empty()) {
            return Err(Error::DimensionMismatch(format!("unexpected trailing line {extra:?}")));
        }
        FormalContext::new(objects, attributes, incidence)
    }

    pub fn to_cxt(&self) -> String {
        let mut out = format!("B\n\n{}\n{}\n\n", self.objects.len(), self.attributes.len());
        for name in self.objects.iter().chain(&self.attributes) {
            out.push_str(name);
            out.push('\n');
        }
        for row in &self.incidence {
            for &cell in row {
                out.push(if cell { 'X' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    fn common_attributes(&self, objects: &[bool]) -> Vec<bool> {
        (0..self.attributes.len())
            .map(|m| (0..self.objects.len()).all(|g| !objects[g] || self.incidence[g][m]))
            .collect()
    }

    fn common_objects(&self, attributes: &[bool]) -> Vec<bool> {
        (0..self.objects.len())
            .map(|g| (0..self.attributes.len()).all(|m| !attributes[m] || self.incidence[g][m]))
            .collect()
    }
}

fn to_mask(size: usize, subset: &[usize], what: &'static str) -> Result<Vec<bool>> {
    let mut mask = vec![false; size];
    for &i in subset {
        *mask.get_mut(i).ok_or(Error::OutOfRange(what))? = true;
    }
    Ok(mask)
}

fn to_indices(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect()
}

fn complement(mask: &[bool]) -> Vec<bool> {
    mask.iter().map(|b| !b).collect()
}

/// Derivation: common attributes of an object set, or common objects of an attribute set.
pub fn derive(ctx: &FormalContext, sort: Sort, subset: &[usize]) -> Result<Vec<usize>> {
    Ok(match sort {
        Sort::Objects => to_indices(&ctx.common_attributes(&to_mask(ctx.objects.len(), subset, "object")?)),
        Sort::Attributes => to_indices(&ctx.common_objects(&to_mask(ctx.attributes.len(), subset, "attribute")?)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: Vec<usize>,
    pub intent: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConceptAlgebra {
    pub algebra: DicompAlgebra,
    /// Indexed like the lattice elements; lectic order by extent.
    pub concepts: Vec<Concept>,
}

#[derive(Serialize)]
struct ConceptJson<'a> {
    extent: Vec<&'a str>,
    intent: Vec<&'a str>,
}

#[derive(Serialize)]
struct ConceptsJson<'a> {
    concepts: Vec<ConceptJson<'a>>,
}

impl ConceptAlgebra {
    pub fn concepts_json(&self, ctx: &FormalContext) -> String {
        let concepts = self
            .concepts
            .iter()
            .map(|c| ConceptJson {
                extent: c.extent.iter().map(|&g| ctx.objects[g].as_str()).collect(),
                intent: c.intent.iter().map(|&m| ctx.attributes[m].as_str()).collect(),
            })
            .collect();
        serde_json::to_string(&ConceptsJson { concepts }).expect("concepts serialize")
    }
}

/// Closed object sets in lectic order (next closure).
fn closed_extents(ctx: &FormalContext, budget: usize) -> Result<Vec<Vec<bool>>> {
    let g = ctx.objects.len();
    let close = |a: &[bool]| ctx.common_objects(&ctx.common_attributes(a));
    let mut current = close(&vec![false; g]);
    let mut out = vec![current.clone()];
    'outer: loop {
        let mut a = current.clone();
        for i in (0..g).rev() {
            if a[i] {
                a[i] = false;
                continue;
            }
            a[i] = true;
            let b = close(&a);
            a[i] = false;
            if (0..i).all(|j| b[j] == a[j]) {
                if out.len() == budget {
                    return Err(Error::ConceptExplosion { budget });
                }
                out.push(b.clone());
                current = b;
                continue 'outer;
            }
        }
        break;
    }
    Ok(out)
}

/// The concept lattice ordered by extent inclusion, with weak negation and weak opposition.
pub fn build_concept_algebra(ctx: &FormalContext, budget: usize) -> Result<ConceptAlgebra> {
    let extents = closed_extents(ctx, budget)?;
    let k = extents.len();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = extents[i].iter().zip(&extents[j]).all(|(&a, &b)| !a || b);
        }
    }
    let (lattice, relabel) = Lattice::from_order_relabeled(k, leq)?;
    let mut ordered = vec![Vec::new(); k];
    for (i, e) in extents.into_iter().enumerate() {
        ordered[relabel[i]] = e;
    }
    let index: HashMap<&[bool], usize> = ordered.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let intents: Vec<Vec<bool>> = ordered.iter().map(|e| ctx.common_attributes(e)).collect();
    let lookup = |extent: Vec<bool>| -> Result<usize> {
        index
            .get(extent.as_slice())
            .copied()
            .ok_or_else(|| Error::Internal("derived extent is not closed".into()))
    };
    let weak = ordered
        .iter()
        .map(|e| lookup(ctx.common_objects(&ctx.common_attributes(&complement(e)))))
        .collect::<Result<Vec<_>>>()?;
    let dual = intents
        .iter()
        .map(|b| lookup(ctx.common_objects(&complement(b))))
        .collect::<Result<Vec<_>>>()?;
    let concepts = ordered
        .iter()
        .zip(&intents)
        .map(|(e, b)| Concept { extent: to_indices(e), intent: to_indices(b) })
        .collect();
    let mut labels = Vec::with_capacity(k);
    for e in &ordered {
        let mut s = String::from("{");
        for (n, g) in to_indices(e).into_iter().enumerate() {
            if n > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", ctx.objects[g]);
        }
        s.push('}');
        labels.push(s);
    }
    let algebra = DicompAlgebra::new(lattice.with_labels(labels)?, weak, Some(dual))?;
    Ok(ConceptAlgebra { algebra, concepts })
}
