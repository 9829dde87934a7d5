//! Elementary moves in the pants complex, move paths and unmarked search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pants_graph::{CanonicalForm, CurveId, CurveKind, Leg, PantsGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Replacement inside a once-punctured torus.
    S,
    /// Replacement inside a four-punctured sphere.
    A,
}

/// Which of the two non-trivial pairings of the four outer cuffs an A-move
/// realizes. With outer legs sorted as `o0 < o1 < o2 < o3`, the current
/// grouping is `{o0 o1 | o2 o3}`; `Cross1` is `{o0 o2 | o1 o3}` and `Cross2` is
/// `{o0 o3 | o1 o2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Repairing {
    #[serde(rename = "X1")]
    Cross1,
    #[serde(rename = "X2")]
    Cross2,
}

impl Repairing {
    pub const ALL: [Repairing; 2] = [Repairing::Cross1, Repairing::Cross2];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    pub kind: MoveKind,
    pub new_curve: CurveId,
    pub repairing: Option<Repairing>,
    pub target: CurveId,
    pub twist: i64,
}

impl Move {
    pub fn s(target: CurveId, twist: i64, new_curve: CurveId) -> Self {
        Move { kind: MoveKind::S, new_curve, repairing: None, target, twist }
    }

    pub fn a(target: CurveId, repairing: Repairing, twist: i64, new_curve: CurveId) -> Self {
        Move { kind: MoveKind::A, new_curve, repairing: Some(repairing), target, twist }
    }
}

/// One row of [`applicable_moves`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveOption {
    pub curve: CurveId,
    pub kind: MoveKind,
    pub repairings: Vec<Repairing>,
}

pub fn applicable_moves(g: &PantsGraph) -> Vec<MoveOption> {
    g.curve_ids()
        .map(|c| match g.curve_kind(c).expect("listed curve") {
            CurveKind::SelfLoop => MoveOption { curve: c, kind: MoveKind::S, repairings: vec![] },
            CurveKind::NonLoop => MoveOption { curve: c, kind: MoveKind::A, repairings: Repairing::ALL.to_vec() },
        })
        .collect()
}

/// Result of applying a move, with the bookkeeping a block needs.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub graph: PantsGraph,
    /// Vertices of the old graph removed by the move (bottom pants).
    pub consumed: Vec<usize>,
    /// Vertices of the new graph created by the move (top pants); vertex
    /// indices are reused, so this equals `consumed`.
    pub created: Vec<usize>,
    /// Curves of the outer cuffs: one for S, four (sorted leg order) for A.
    pub outer: Vec<CurveId>,
}

pub fn apply_move(g: &PantsGraph, m: &Move) -> Result<PantsGraph> {
    apply_move_traced(g, m).map(|o| o.graph)
}

pub fn apply_move_traced(g: &PantsGraph, m: &Move) -> Result<MoveOutcome> {
    let (a, b) = g.legs_of(m.target)?;
    if g.contains_curve(m.new_curve) {
        return Err(Error::CurveIdInUse(m.new_curve));
    }
    let kind = g.curve_kind(m.target)?;
    match (m.kind, kind, m.repairing) {
        (MoveKind::S, CurveKind::SelfLoop, None) => {
            let v = a.vertex;
            let third = (0..3).map(|s| Leg::new(v, s)).find(|&l| l != a && l != b).expect("three slots");
            let outer = vec![g.curve_at(third)];
            let graph = g
                .relabel_curves(|c| if c == m.target { m.new_curve } else { c })
                .expect("relabeling to a fresh id keeps the graph valid");
            Ok(MoveOutcome { graph, consumed: vec![v as usize], created: vec![v as usize], outer })
        }
        (MoveKind::A, CurveKind::NonLoop, Some(r)) => Ok(apply_a_move(g, a, b, r, m.new_curve)),
        (MoveKind::S, CurveKind::NonLoop, _) => {
            Err(Error::MoveNotApplicable(format!("S-move on non-loop curve {}", m.target)))
        }
        (MoveKind::A, CurveKind::SelfLoop, _) => {
            Err(Error::MoveNotApplicable(format!("A-move on self-loop curve {}", m.target)))
        }
        (MoveKind::S, _, Some(_)) => Err(Error::MoveNotApplicable("S-move carries a re-pairing".into())),
        (MoveKind::A, _, None) => Err(Error::MoveNotApplicable("A-move without a re-pairing".into())),
    }
}

fn apply_a_move(g: &PantsGraph, a: Leg, b: Leg, r: Repairing, new_curve: CurveId) -> MoveOutcome {
    let (u, v) = (a.vertex.min(b.vertex), a.vertex.max(b.vertex));
    let mut outer: Vec<Leg> =
        (0..3).map(|s| Leg::new(u, s)).chain((0..3).map(|s| Leg::new(v, s))).filter(|&l| l != a && l != b).collect();
    outer.sort();
    let [o0, o1, o2, o3] = [outer[0], outer[1], outer[2], outer[3]];
    let (first, second) = match r {
        Repairing::Cross1 => ([o0, o2], [o1, o3]),
        Repairing::Cross2 => ([o0, o3], [o1, o2]),
    };
    // old outer leg -> new leg position
    let mut image: BTreeMap<Leg, Leg> = BTreeMap::new();
    for (slot, &l) in first.iter().enumerate() {
        image.insert(l, Leg::new(u, slot as u8));
    }
    for (slot, &l) in second.iter().enumerate() {
        image.insert(l, Leg::new(v, slot as u8));
    }
    let mut partner: Vec<usize> = (0..3 * g.vertex_count()).map(|i| g.partner[i]).collect();
    let mut leg_curve: Vec<CurveId> = (0..3 * g.vertex_count()).map(|i| g.leg_curve[i]).collect();
    for (&old, &new) in &image {
        let p = g.partner(old);
        let p_new = image.get(&p).copied().unwrap_or(p);
        partner[new.index()] = p_new.index();
        partner[p_new.index()] = new.index();
        leg_curve[new.index()] = g.curve_at(old);
        leg_curve[p_new.index()] = g.curve_at(old);
    }
    let (nu, nv) = (Leg::new(u, 2), Leg::new(v, 2));
    partner[nu.index()] = nv.index();
    partner[nv.index()] = nu.index();
    leg_curve[nu.index()] = new_curve;
    leg_curve[nv.index()] = new_curve;
    let graph = PantsGraph::from_raw(g.vertex_count(), partner, leg_curve);
    MoveOutcome {
        graph,
        consumed: vec![u as usize, v as usize],
        created: vec![u as usize, v as usize],
        outer: outer.iter().map(|&l| g.curve_at(l)).collect(),
    }
}

/// The re-pairing that undoes an A-move when applied to its new curve.
///
/// The new pants put the group containing `o0` in slots 0,1 of the lower
/// vertex and the other group in slots 0,1 of the higher one, so the old
/// grouping `{o0 o1}` always lands on `{(u,0), (v,0)}`, i.e. `Cross1`.
pub fn inverse_repairing(_r: Repairing) -> Repairing {
    Repairing::Cross1
}

/// A base decomposition followed by a sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovePath {
    pub base: PantsGraph,
    pub moves: Vec<Move>,
}

impl MovePath {
    pub fn new(base: PantsGraph, moves: Vec<Move>) -> Self {
        MovePath { base, moves }
    }

    pub fn empty(base: PantsGraph) -> Self {
        MovePath { base, moves: vec![] }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// `P₁, …, Pₙ` as a vector of graphs (length `moves + 1`).
    pub fn graphs(&self) -> Result<Vec<PantsGraph>> {
        let report = validate_path(self);
        if let Some(v) = report.first_invalid {
            return Err(Error::InvalidPath(format!("step {}: {}", v.step, v.reason)));
        }
        let mut out = vec![self.base.clone()];
        for m in &self.moves {
            let next = apply_move(out.last().expect("non-empty"), m)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn last_graph(&self) -> Result<PantsGraph> {
        Ok(self.graphs()?.pop().expect("non-empty"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathViolation {
    /// 1-based index of the offending move.
    pub step: usize,
    pub reason: String,
}

/// Creation and retirement stage of one curve id along a path. Stage 0 is
/// the base; move `k` produces stage `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveLifetime {
    pub created: usize,
    pub curve: CurveId,
    pub retired: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub first_invalid: Option<PathViolation>,
    pub genera: Vec<u32>,
    pub lifetimes: Vec<CurveLifetime>,
    pub steps: usize,
    pub valid: bool,
}

/// Walks the path, stopping at the first move that cannot be applied. Curve
/// ids may never be reused, even after retirement.
pub fn validate_path(p: &MovePath) -> PathReport {
    let mut lifetimes: BTreeMap<CurveId, CurveLifetime> =
        p.base.curve_ids().map(|c| (c, CurveLifetime { created: 0, curve: c, retired: None })).collect();
    let mut genera = vec![p.base.genus()];
    let mut g = p.base.clone();
    let mut first_invalid = None;
    for (i, m) in p.moves.iter().enumerate() {
        let step = i + 1;
        if lifetimes.contains_key(&m.new_curve) {
            first_invalid = Some(PathViolation { step, reason: format!("curve id {} reused", m.new_curve) });
            break;
        }
        match apply_move(&g, m) {
            Ok(next) => {
                lifetimes.get_mut(&m.target).expect("target was live").retired = Some(step);
                lifetimes.insert(m.new_curve, CurveLifetime { created: step, curve: m.new_curve, retired: None });
                genera.push(next.genus());
                g = next;
            }
            Err(e) => {
                first_invalid = Some(PathViolation { step, reason: e.to_string() });
                break;
            }
        }
    }
    PathReport {
        valid: first_invalid.is_none(),
        steps: if first_invalid.is_none() { p.moves.len() } else { genera.len() - 1 },
        first_invalid,
        genera,
        lifetimes: lifetimes.into_values().collect(),
    }
}

/// Graph-class neighbours of `g`: one per A-move outcome. S-moves never
/// change the class.
pub(crate) fn class_neighbours(g: &PantsGraph) -> Vec<PantsGraph> {
    let fresh = CurveId(g.max_curve_id().0 + 1);
    let mut out = Vec::new();
    for opt in applicable_moves(g) {
        for &r in &opt.repairings {
            let m = Move::a(opt.curve, r, 0, fresh);
            out.push(apply_move(g, &m).expect("listed move applies"));
        }
    }
    out
}

/// Multi-source BFS over unmarked classes. Returns the distance from the
/// nearest source class to the target class, if within `max_depth`.
pub(crate) fn bfs_from_classes(sources: &[PantsGraph], target: &PantsGraph, max_depth: usize) -> Option<usize> {
    let goal = target.canonical_form();
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for s in sources {
        let cf = s.canonical_form();
        if cf == goal {
            return Some(0);
        }
        if seen.insert(cf) {
            queue.push_back((s.clone(), 0usize));
        }
    }
    while let Some((g, d)) = queue.pop_front() {
        if d == max_depth {
            continue;
        }
        for h in class_neighbours(&g) {
            let cf = h.canonical_form();
            if cf == goal {
                return Some(d + 1);
            }
            if seen.insert(cf) {
                queue.push_back((h, d + 1));
            }
        }
    }
    None
}

/// Length of a shortest unmarked move sequence between the classes of `g1`
/// and `g2`, or `None` beyond `max_depth`. Twists are ignored.
pub fn bfs_distance(g1: &PantsGraph, g2: &PantsGraph, max_depth: usize) -> Result<Option<usize>> {
    if g1.genus() != g2.genus() {
        return Err(Error::GenusMismatch(g1.genus(), g2.genus()));
    }
    Ok(bfs_from_classes(std::slice::from_ref(g1), g2, max_depth))
}

/// Deterministic random walk of `n` applicable moves with twists drawn
/// uniformly from `-twist_bound..=twist_bound`.
pub fn random_path(g: &PantsGraph, n: usize, seed: u64, twist_bound: u32) -> MovePath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = g.clone();
    let mut moves = Vec::with_capacity(n);
    let bound = twist_bound as i64;
    for next_id in (g.max_curve_id().0 + 1..).take(n) {
        let opts = applicable_moves(&cur);
        let choices: Vec<(CurveId, MoveKind, Option<Repairing>)> = opts
            .iter()
            .flat_map(|o| {
                if o.repairings.is_empty() {
                    vec![(o.curve, o.kind, None)]
                } else {
                    o.repairings.iter().map(|&r| (o.curve, o.kind, Some(r))).collect()
                }
            })
            .collect();
        let (target, kind, repairing) = choices[rng.gen_range(0..choices.len())];
        let twist = rng.gen_range(-bound..=bound);
        let m = Move { kind, new_curve: CurveId(next_id), repairing, target, twist };
        cur = apply_move(&cur, &m).expect("chosen move is applicable");
        moves.push(m);
    }
    MovePath { base: g.clone(), moves }
}
