use std::fs;

use anyhow::{bail, Context, Result};
use colorlie_core::algebra::{check_jacobi, check_representation, check_symmetries, GradedAlgebra};
use colorlie_core::factor::{validate_factor, validate_multiplier};
use colorlie_core::oscillator::{differential_realization, lambda_decoloration_check, quon_realization};
use colorlie_core::report::{Status, VerificationReport};
use serde::Serialize;

use crate::build::load_algebra;
use crate::{Check, Mode, RealizeArgs, ReportArgs, VerifyArgs};

const REPORT_VERSION: u32 = 1;

#[derive(Serialize)]
struct AlgebraSummary {
    kind: String,
    #[serde(rename = "F")]
    f: u32,
    dim: usize,
    root_order: u32,
}

#[derive(Serialize)]
struct Section {
    section: String,
    #[serde(flatten)]
    report: VerificationReport,
}

#[derive(Serialize)]
struct Image {
    basis: String,
    image: String,
}

#[derive(Serialize)]
struct ReportDocument {
    version: u32,
    command: &'static str,
    algebra: AlgebraSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    status: Status,
    sections: Vec<Section>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    images: Vec<Image>,
}

impl ReportDocument {
    fn new(command: &'static str, a: &GradedAlgebra, budget: Option<u64>) -> Self {
        ReportDocument {
            version: REPORT_VERSION,
            command,
            algebra: AlgebraSummary {
                kind: a.kind().to_string(),
                f: a.f(),
                dim: a.dim(),
                root_order: a.root_order(),
            },
            budget,
            status: Status::Pass,
            sections: Vec::new(),
            images: Vec::new(),
        }
    }

    fn push(&mut self, section: &str, report: VerificationReport) {
        if !report.passed() {
            self.status = Status::Fail;
        }
        self.sections.push(Section {
            section: section.to_string(),
            report,
        });
    }

    /// Prints and saves the document, returning whether everything passed.
    fn emit(&self, args: &ReportArgs) -> Result<bool> {
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        if let Some(path) = &args.report {
            fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
        }
        if args.json {
            print!("{json}");
        } else {
            for s in &self.sections {
                print!("[{}] {}", s.section, s.report);
            }
            for i in &self.images {
                println!("  {} -> {}", i.basis, i.image);
            }
            println!("{}", if self.status == Status::Pass { "all checks passed" } else { "counterexample found" });
        }
        Ok(self.status == Status::Pass)
    }
}

pub fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let (a, file) = load_algebra(&args.spec)?;
    let rep = file.representation(&a).context("loading the representation")?;
    let multiplier = file.multiplier()?;
    let all = args.checks.contains(&Check::All);
    let wants = |c: Check| all || args.checks.contains(&c);
    if !all && args.checks.contains(&Check::Representation) && rep.is_none() {
        bail!("{} has no representation", args.spec.display());
    }
    if !all && args.checks.contains(&Check::Multiplier) && multiplier.is_none() {
        bail!("{} has no multiplier", args.spec.display());
    }
    let budget = args.report.budget;
    let mut doc = ReportDocument::new("verify", &a, budget);
    if wants(Check::Factor) {
        doc.push("factor axioms", validate_factor(a.factor()));
    }
    if wants(Check::Symmetries) {
        doc.push("symmetries", check_symmetries(&a, budget));
    }
    if wants(Check::Jacobi) {
        doc.push("jacobi", check_jacobi(&a, budget));
    }
    if let (true, Some(r)) = (wants(Check::Representation), &rep) {
        doc.push("representation", check_representation(&a, r, budget)?);
    }
    if let (true, Some(s)) = (wants(Check::Multiplier), &multiplier) {
        doc.push("multiplier", validate_multiplier(s, None));
    }
    doc.emit(&args.report)
}

pub fn run_realize(args: &RealizeArgs) -> Result<bool> {
    let (a, file) = load_algebra(&args.spec)?;
    let epsilon: i8 = match args.epsilon.as_str() {
        "+1" | "1" => 1,
        "-1" => -1,
        e => bail!("--epsilon must be +1 or -1, got {e:?}"),
    };
    let rep = || -> Result<_> {
        file.representation(&a)?
            .with_context(|| format!("{} has no representation", args.spec.display()))
    };
    let mut doc = ReportDocument::new("realize", &a, None);
    let realization = match args.mode {
        Mode::Oscillator => Some(differential_realization(&a, &rep()?, epsilon)?),
        Mode::Quon => Some(quon_realization(&a, &rep()?)?),
        Mode::Lambda => {
            doc.push("lambda decoloration", lambda_decoloration_check(&a, args.multiplicity)?);
            None
        }
    };
    if let Some(r) = realization {
        let name = match args.mode {
            Mode::Oscillator => "oscillator realization",
            _ => "quon realization",
        };
        doc.images = a
            .basis()
            .iter()
            .zip(&r.elements)
            .map(|(b, e)| Image {
                basis: b.label.clone(),
                image: r.algebra.show(e),
            })
            .collect();
        doc.push(name, r.report);
    }
    doc.emit(&args.report)
}
