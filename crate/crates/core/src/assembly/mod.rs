//! Generalized Heegaard splittings and the gluing of compression-body models
//! into one closed model complex.

mod annulus;
mod assemble;
mod certificate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moves::{validate_path, MovePath};
use crate::pants_graph::{CurveId, PantsGraph};

pub use annulus::{annulus_forest, AnnulusGraph, AnnulusNode};
pub use assemble::{assemble_model, assemble_model_detailed, Assembly, ThickMatching};
pub use certificate::{knotted_certificate, Certificate, CertificateSummary, LoopCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompressionBodyDescriptor {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    #[serde(default)]
    pub minus: Vec<u32>,
    pub plus: u32,
}

impl CompressionBodyDescriptor {
    pub fn handlebody(g: u32) -> Self {
        CompressionBodyDescriptor { label: String::new(), minus: vec![], plus: g }
    }

    pub fn compression_body(plus: u32, minus: Vec<u32>) -> Self {
        CompressionBodyDescriptor { label: String::new(), minus, plus }
    }

    pub fn is_handlebody(&self) -> bool {
        self.minus.is_empty()
    }
}

/// Bodies in order `H⁻₁, H⁺₁, …, H⁻ₖ, H⁺ₖ`: `H⁻ᵢ` and `H⁺ᵢ` share the thick
/// surface `∂₊`, and `∂₋H⁺ᵢ = ∂₋H⁻ᵢ₊₁` is the thin surface between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingDescriptor {
    pub bodies: Vec<CompressionBodyDescriptor>,
    #[serde(default)]
    pub strongly_irreducible: bool,
}

impl SplittingDescriptor {
    /// Number of thick surfaces.
    pub fn k(&self) -> usize {
        self.bodies.len() / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub k: usize,
    pub strongly_irreducible: bool,
    pub valid: bool,
    pub violations: Vec<String>,
}

pub fn validate_splitting(s: &SplittingDescriptor) -> SplittingReport {
    let mut v = Vec::new();
    let n = s.bodies.len();
    if n == 0 || n % 2 == 1 {
        v.push(format!("{n} bodies: a splitting pairs bodies across thick surfaces"));
    }
    for (i, b) in s.bodies.iter().enumerate() {
        let name = body_name(i, &b.label);
        if b.plus == 1 || b.minus.contains(&1) {
            v.push(format!("{name}: genus-one boundary excluded"));
        }
        if b.plus == 0 || b.minus.contains(&0) {
            v.push(format!("{name}: genus-zero boundary excluded"));
        }
        let minus_total: u32 = b.minus.iter().sum();
        if minus_total > b.plus {
            v.push(format!("{name}: negative boundary genus {minus_total} exceeds positive genus {}", b.plus));
        }
    }
    if n >= 2 && n.is_multiple_of(2) {
        if !s.bodies[0].is_handlebody() {
            v.push("first body must be a handlebody".into());
        }
        if !s.bodies[n - 1].is_handlebody() {
            v.push("last body must be a handlebody".into());
        }
        for i in 0..n / 2 {
            let (a, b) = (&s.bodies[2 * i], &s.bodies[2 * i + 1]);
            if a.plus != b.plus {
                v.push(format!("thick surface {}: genus {} vs {}", i + 1, a.plus, b.plus));
            }
        }
        for i in 0..n / 2 - 1 {
            let mut a = s.bodies[2 * i + 1].minus.clone();
            let mut b = s.bodies[2 * i + 2].minus.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                v.push(format!("thin surface {}: genera {a:?} vs {b:?}", i + 1));
            } else if a.is_empty() {
                v.push(format!("thin surface {} is empty", i + 1));
            }
        }
    }
    SplittingReport { k: n / 2, strongly_irreducible: s.strongly_irreducible, valid: v.is_empty(), violations: v }
}

fn body_name(i: usize, label: &str) -> String {
    let sign = if i.is_multiple_of(2) { '-' } else { '+' };
    if label.is_empty() {
        format!("H{sign}{}", i / 2 + 1)
    } else {
        format!("H{sign}{} ({label})", i / 2 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedLoopReport {
    pub clean: bool,
    pub path_length: usize,
    /// Base curves never retired along the path.
    pub violations: Vec<CurveId>,
}

/// Flags every curve of the path's base that survives the whole path.
pub fn check_shared_loops(left: &PantsGraph, right: &PantsGraph, connecting: &MovePath) -> Result<SharedLoopReport> {
    if !connecting.base.is_isomorphic(left) {
        return Err(Error::EndpointMismatch("path base is not the left decomposition".into()));
    }
    let report = validate_path(connecting);
    if let Some(v) = &report.first_invalid {
        return Err(Error::InvalidPath(format!("step {}: {}", v.step, v.reason)));
    }
    if !connecting.last_graph()?.is_isomorphic(right) {
        return Err(Error::EndpointMismatch("path does not end at the right decomposition".into()));
    }
    let violations: Vec<CurveId> =
        report.lifetimes.iter().filter(|l| l.created == 0 && l.retired.is_none()).map(|l| l.curve).collect();
    Ok(SharedLoopReport { clean: violations.is_empty(), path_length: connecting.len(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{Move, Repairing};

    #[test]
    fn heegaard_splitting_is_valid() {
        let s = SplittingDescriptor {
            bodies: vec![CompressionBodyDescriptor::handlebody(2), CompressionBodyDescriptor::handlebody(2)],
            strongly_irreducible: false,
        };
        let r = validate_splitting(&s);
        assert!(r.valid);
        assert_eq!(r.k, 1);
    }

    #[test]
    fn splitting_violations() {
        let s = SplittingDescriptor {
            bodies: vec![CompressionBodyDescriptor::handlebody(2), CompressionBodyDescriptor::handlebody(3)],
            strongly_irreducible: false,
        };
        assert!(!validate_splitting(&s).valid);
        let s = SplittingDescriptor {
            bodies: vec![
                CompressionBodyDescriptor::handlebody(3),
                CompressionBodyDescriptor::compression_body(3, vec![1]),
                CompressionBodyDescriptor::compression_body(3, vec![1]),
                CompressionBodyDescriptor::handlebody(3),
            ],
            strongly_irreducible: true,
        };
        let r = validate_splitting(&s);
        assert!(r.violations.iter().any(|v| v.contains("genus-one boundary excluded")));
        assert!(r.strongly_irreducible);
    }

    #[test]
    fn shared_loop_counts() {
        let d = PantsGraph::dumbbell();
        let r = check_shared_loops(&d, &d, &MovePath::empty(d.clone())).unwrap();
        assert_eq!(r.violations.len(), 3);
        let path =
            MovePath::new(d.clone(), vec![Move::s(CurveId(0), 0, CurveId(3)), Move::s(CurveId(1), 0, CurveId(4))]);
        let r = check_shared_loops(&d, &d, &path).unwrap();
        assert_eq!(r.violations, vec![CurveId(2)]);
        let t = PantsGraph::theta();
        assert!(matches!(check_shared_loops(&t, &d, &path), Err(Error::EndpointMismatch(_))));
        let path = MovePath::new(d.clone(), vec![Move::a(CurveId(2), Repairing::Cross2, 0, CurveId(3))]);
        assert!(matches!(check_shared_loops(&d, &d, &path), Err(Error::EndpointMismatch(_))));
    }
}
