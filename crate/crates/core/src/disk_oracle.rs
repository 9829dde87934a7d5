//! Three-valued answers to "does this loop bound a disk": a free-group word
//! backend for marked handlebody curves and a structural backend driven by
//! the model's construction and caller attestations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LinkId, ModelComplex, ModelOrigin};
use crate::spines::{classify_loops, LoopClass};

/// Letters `±i` stand for `x_i^{±1}`.
pub type Word = Vec<i32>;

/// Parses `x1 X2 x1` (uppercase is the inverse); spaces are optional.
pub fn parse_word(s: &str) -> Result<Word> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        let sign = match c {
            'x' => 1,
            'X' => -1,
            _ => return Err(Error::BadSymbol(format!("{c:?} at offset {i}"))),
        };
        let mut n: i64 = 0;
        let mut digits = 0;
        while let Some(&(_, d)) = chars.peek() {
            let Some(v) = d.to_digit(10) else { break };
            n = n * 10 + v as i64;
            digits += 1;
            chars.next();
            if n > i32::MAX as i64 {
                return Err(Error::BadSymbol(format!("generator index too large at offset {i}")));
            }
        }
        if digits == 0 || n == 0 {
            return Err(Error::BadSymbol(format!("missing generator index at offset {i}")));
        }
        out.push(sign * n as i32);
    }
    Ok(out)
}

/// Parses a word and checks every generator index is at most `rank`.
pub fn parse_word_with_rank(s: &str, rank: u32) -> Result<Word> {
    let w = parse_word(s)?;
    if let Some(&l) = w.iter().find(|l| l.unsigned_abs() > rank) {
        return Err(Error::BadSymbol(format!("{} exceeds rank {rank}", format_letter(l))));
    }
    Ok(w)
}

fn format_letter(l: i32) -> String {
    if l > 0 {
        format!("x{l}")
    } else {
        format!("X{}", -l)
    }
}

pub fn format_word(w: &[i32]) -> String {
    w.iter().map(|&l| format_letter(l)).collect::<Vec<_>>().join(" ")
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn letter_key(l: i32) -> u64 {
    2 * (l.unsigned_abs() as u64 - 1) + u64::from(l < 0)
}

fn compare_rotations(w: &[i32], a: usize, b: usize) -> Ordering {
    let n = w.len();
    (0..n)
        .map(|i| letter_key(w[(a + i) % n]).cmp(&letter_key(w[(b + i) % n])))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Free and cyclic reduction followed by the least rotation in the order
/// `x1 < X1 < x2 < X2 < …`; every rotation of a word has the same normal form.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    let (mut lo, mut hi) = (0, w.len());
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w = w[lo..hi].to_vec();
    if w.is_empty() {
        return w;
    }
    let best = (1..w.len()).fold(0, |best, r| if compare_rotations(&w, r, best).is_lt() { r } else { best });
    w.rotate_left(best);
    w
}

pub fn cyclic_reduce_str(s: &str) -> Result<String> {
    Ok(format_word(&cyclic_reduce(&parse_word(s)?)))
}

/// Words in `π₁(H) = F(x₁…x_rank)` for loops of one body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveWordMarking {
    #[serde(default)]
    pub body: String,
    pub rank: u32,
    pub words: BTreeMap<LinkId, String>,
}

impl CurveWordMarking {
    pub fn new(rank: u32) -> Self {
        CurveWordMarking { body: String::new(), rank, words: BTreeMap::new() }
    }

    pub fn with(mut self, link: LinkId, word: &str) -> Self {
        self.words.insert(link, word.to_string());
        self
    }

    /// Checks every word against the declared rank.
    pub fn validate(&self) -> Result<()> {
        for w in self.words.values() {
            parse_word_with_rank(w, self.rank)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    BoundsDisk,
    NoDisk,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::BoundsDisk => "bounds-disk",
            VerdictKind::NoDisk => "no-disk",
            VerdictKind::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub assumptions: Vec<String>,
    pub kind: VerdictKind,
    pub provenance: Vec<String>,
}

impl Verdict {
    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict { assumptions: vec![], kind: VerdictKind::Unknown, provenance: vec![reason.into()] }
    }

    pub fn is_definite(&self) -> bool {
        self.kind != VerdictKind::Unknown
    }
}

pub const DEHN_ASSUMPTION: &str =
    "a simple closed curve on a handlebody boundary that is null-homotopic bounds an embedded disk (Dehn's lemma)";

/// `BoundsDisk` iff the marked word is trivial. Unmarked loops are `Unknown`.
pub fn free_group_verdict(m: &CurveWordMarking, link: LinkId) -> Result<Verdict> {
    let Some(s) = m.words.get(&link) else {
        return Ok(Verdict::unknown(format!("loop {link} is not word-marked")));
    };
    let w = cyclic_reduce(&parse_word_with_rank(s, m.rank)?);
    Ok(if w.is_empty() {
        Verdict {
            assumptions: vec![DEHN_ASSUMPTION.into()],
            kind: VerdictKind::BoundsDisk,
            provenance: vec!["free-group word check: word reduces to the identity".into()],
        }
    } else {
        Verdict {
            assumptions: vec![],
            kind: VerdictKind::NoDisk,
            provenance: vec![format!("free-group word check: reduced word {} is nontrivial", format_word(&w))],
        }
    })
}

/// Facts about a model that are taken on trust rather than computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attestations {
    /// The layered model has the fewest blocks outside its spine among models
    /// inducing its boundary decomposition, and no curve of that
    /// decomposition bounds a disk.
    #[serde(default)]
    pub minimal_layer_disk_free: bool,
    #[serde(default)]
    pub strongly_irreducible: bool,
}

pub const MINIMAL_LAYER_ASSUMPTIONS: [&str; 2] =
    ["minimal layered model attested", "induced boundary decomposition attested disk-free"];
pub const STRONG_IRREDUCIBILITY_ASSUMPTION: &str = "strong irreducibility attested, no-nesting lemma assumed";

/// Never `BoundsDisk`: the structural arguments only rule disks out.
pub fn structural_verdict(m: &ModelComplex, link: LinkId, att: &Attestations) -> Verdict {
    let Some(l) = m.link(link) else {
        return Verdict::unknown(format!("loop {link} is not in the model"));
    };
    match m.origin {
        ModelOrigin::Assembled if att.strongly_irreducible => Verdict {
            assumptions: vec![STRONG_IRREDUCIBILITY_ASSUMPTION.into()],
            kind: VerdictKind::NoDisk,
            provenance: vec![format!(
                "structural: {link} lies in a compression-body model of a strongly irreducible splitting"
            )],
        },
        ModelOrigin::Layered | ModelOrigin::Spine
            if att.minimal_layer_disk_free && classify_loops(m)[&link] == LoopClass::Boundary =>
        {
            Verdict {
                assumptions: MINIMAL_LAYER_ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
                kind: VerdictKind::NoDisk,
                provenance: vec![format!("structural: {link} carries the attested disk-free boundary decomposition")],
            }
        }
        ModelOrigin::Layered | ModelOrigin::Spine
            if att.strongly_irreducible && l.created == 0 && classify_loops(m)[&link] == LoopClass::Interior =>
        {
            Verdict {
                assumptions: vec![STRONG_IRREDUCIBILITY_ASSUMPTION.into()],
                kind: VerdictKind::NoDisk,
                provenance: vec![format!("structural: {link} is an interior spine loop")],
            }
        }
        _ => Verdict::unknown(format!("no structural argument applies to {link} under the given attestations")),
    }
}

/// Conjunction of two backends: agreement keeps both provenances, one
/// definite answer wins over `Unknown`, and a conflict is `Unknown`.
pub fn combine(a: &Verdict, b: &Verdict) -> Verdict {
    let join = |x: &[String], y: &[String]| {
        let mut v: Vec<String> = x.iter().chain(y).cloned().collect();
        v.dedup();
        v
    };
    match (a.is_definite(), b.is_definite()) {
        (true, true) if a.kind == b.kind => Verdict {
            assumptions: join(&a.assumptions, &b.assumptions),
            kind: a.kind,
            provenance: join(&a.provenance, &b.provenance),
        },
        (true, true) => Verdict {
            assumptions: join(&a.assumptions, &b.assumptions),
            kind: VerdictKind::Unknown,
            provenance: vec![format!("conflict: {} vs {}", a.provenance.join("; "), b.provenance.join("; "))],
        },
        (true, false) => a.clone(),
        (false, true) => b.clone(),
        (false, false) => {
            Verdict { assumptions: vec![], kind: VerdictKind::Unknown, provenance: join(&a.provenance, &b.provenance) }
        }
    }
}
