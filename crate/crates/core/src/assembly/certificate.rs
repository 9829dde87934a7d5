use serde::{Deserialize, Serialize};

use crate::disk_oracle::{
    combine, free_group_verdict, structural_verdict, Attestations, CurveWordMarking, Verdict, VerdictKind,
};
use crate::error::Result;
use crate::model::{LinkId, ModelComplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopCertificate {
    pub link: LinkId,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub bounds_disk: usize,
    pub no_disk: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub attestations: Attestations,
    /// True when every loop has a `NoDisk` verdict.
    pub knotted: bool,
    pub loops: Vec<LoopCertificate>,
    pub summary: CertificateSummary,
}

/// One verdict per link, combining the word backend (when a marking is
/// given) with the structural backend.
pub fn knotted_certificate(
    m: &ModelComplex,
    marking: Option<&CurveWordMarking>,
    att: &Attestations,
) -> Result<Certificate> {
    let mut loops = Vec::with_capacity(m.links.len());
    let mut summary = CertificateSummary::default();
    for l in &m.links {
        let structural = structural_verdict(m, l.id, att);
        let verdict = match marking {
            Some(mk) => combine(&free_group_verdict(mk, l.id)?, &structural),
            None => structural,
        };
        match verdict.kind {
            VerdictKind::BoundsDisk => summary.bounds_disk += 1,
            VerdictKind::NoDisk => summary.no_disk += 1,
            VerdictKind::Unknown => summary.unknown += 1,
        }
        loops.push(LoopCertificate { link: l.id, verdict });
    }
    Ok(Certificate { attestations: *att, knotted: summary.no_disk == loops.len(), loops, summary })
}

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "attestations: strongly_irreducible={} minimal_layer_disk_free={}\n",
            self.attestations.strongly_irreducible, self.attestations.minimal_layer_disk_free
        ));
        for l in &self.loops {
            out.push_str(&format!("{} {}: {}\n", l.link, l.verdict.kind, l.verdict.provenance.join("; ")));
            for a in &l.verdict.assumptions {
                out.push_str(&format!("  assumes: {a}\n"));
            }
        }
        out.push_str(&format!(
            "summary: {} no-disk, {} bounds-disk, {} unknown; knotted={}\n",
            self.summary.no_disk, self.summary.bounds_disk, self.summary.unknown, self.knotted
        ));
        out
    }
}
