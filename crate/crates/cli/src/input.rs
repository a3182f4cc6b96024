//! Reading lattice and algebra files, and translating results back into the
//! file's own element numbering.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use wdl_core::dicomp::AlgebraJson;
use wdl_core::lattice::LatticeJson;
use wdl_core::{AxiomReport, DicompAlgebra, Lattice, Verdict, Witness};

/// Maps canonical element indices back to the indices used in the input file.
pub struct Numbering {
    back: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Numbering {
    fn new(relabel: &[usize], json: &LatticeJson) -> Numbering {
        let mut back = vec![0; relabel.len()];
        for (input, &canon) in relabel.iter().enumerate() {
            back[canon] = input;
        }
        Numbering { back, labels: json.labels.clone() }
    }

    pub fn element(&self, x: usize) -> usize {
        self.back[x]
    }

    /// Labels indexed by input numbering, if the file had any.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn table(&self, table: &[usize]) -> Vec<usize> {
        let mut out = vec![0; table.len()];
        for (x, &v) in table.iter().enumerate() {
            out[self.back[x]] = self.back[v];
        }
        out
    }

    pub fn report(&self, report: &AxiomReport) -> AxiomReport {
        let verdicts = report
            .verdicts
            .iter()
            .map(|(a, v)| {
                let v = match v {
                    Verdict::Pass => Verdict::Pass,
                    Verdict::Fail(w) => Verdict::Fail(Witness {
                        clause: w.clause,
                        tuple: w.tuple.iter().map(|&x| self.element(x)).collect(),
                        lhs: self.element(w.lhs),
                        rhs: self.element(w.rhs),
                    }),
                };
                (*a, v)
            })
            .collect();
        AxiomReport { verdicts, degenerate: report.degenerate }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_lattice(json: &LatticeJson) -> Result<(Lattice, Numbering)> {
    let (lattice, relabel) = Lattice::from_json(json).context("field `lattice`")?;
    let numbering = Numbering::new(&relabel, json);
    Ok((lattice, numbering))
}

pub fn read_lattice(path: &Path) -> Result<(Lattice, Numbering)> {
    let text = read(path)?;
    let json: LatticeJson = serde_json::from_str(&text).with_context(|| format!("{}: malformed lattice JSON", path.display()))?;
    Lattice::from_json(&json)
        .map(|(lattice, relabel)| (lattice, Numbering::new(&relabel, &json)))
        .with_context(|| format!("{}", path.display()))
}

pub fn read_algebra(path: &Path) -> Result<(DicompAlgebra, Numbering)> {
    let text = read(path)?;
    let json: AlgebraJson = serde_json::from_str(&text).with_context(|| format!("{}: malformed algebra JSON", path.display()))?;
    let (_, numbering) = parse_lattice(&json.lattice).with_context(|| format!("{}", path.display()))?;
    let n = json.lattice.n;
    let tables = [("weak", Some(&json.weak)), ("dual", json.dual.as_ref())];
    for (field, table) in tables {
        let Some(table) = table else { continue };
        if table.len() != n {
            return Err(anyhow!("{}: field `{field}` has {} entries, expected {n}", path.display(), table.len()));
        }
        if let Some((x, v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(anyhow!("{}: field `{field}` maps {x} to {v}, outside 0..{n}", path.display()));
        }
    }
    let algebra = DicompAlgebra::from_json(&json).with_context(|| format!("{}", path.display()))?;
    Ok((algebra, numbering))
}
