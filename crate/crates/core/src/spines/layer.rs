use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::induced::positive_boundary;
use super::trees::{nonseparating_attaches, piece_plus_sectors, separating_attaches};
use super::{build::build_piece, build::piece_to_complex, SpineTree};
use crate::error::{Error, Result};
use crate::model::{ModelComplex, ModelOrigin, Stage};
use crate::moves::{bfs_from_classes, validate_path, MovePath};
use crate::pants_graph::{CanonicalForm, PantsGraph};

/// Trees evaluated per genus level when the caller gives no bound.
pub const DEFAULT_TREE_BOUND: usize = 20_000;

/// Per induced class: a representative tree, its boundary and plus sectors.
type Level = BTreeMap<CanonicalForm, (SpineTree, PantsGraph, Vec<(usize, usize)>)>;

/// Glue one block per move of `path` onto the positive boundary of `spine`.
/// The path's base must be isomorphic to that boundary; its curve ids
/// replace the spine's lift ids.
pub fn layer_model(spine: &ModelComplex, path: &MovePath) -> Result<ModelComplex> {
    let report = validate_path(path);
    if let Some(v) = report.first_invalid {
        return Err(Error::InvalidPath(format!("step {}: {}", v.step, v.reason)));
    }
    let current = positive_boundary(spine)?;
    let iso = path.base.isomorphism_to(&current.graph).ok_or(Error::BaseMismatch)?;
    let stage = Stage {
        curve_links: path.base.curve_ids().map(|c| (c, current.curve_links[&iso.curves[&c]])).collect(),
        faces: iso.vertices.iter().map(|&v| current.faces[v]).collect(),
        graph: path.base.clone(),
    };
    let mut m = spine.clone();
    if m.blocks.is_empty() {
        for l in &mut m.links {
            l.curves = stage.curve_links.iter().filter(|(_, &li)| li == l.id).map(|(&c, _)| c).collect();
        }
        m.stages = vec![stage];
    } else {
        *m.stages.last_mut().expect("layered model has stages") = stage;
    }
    m.origin = ModelOrigin::Layered;
    for mv in &path.moves {
        m.push_move(mv)?;
    }
    Ok(m)
}

/// Canonical classes of boundary decompositions induced by handlebody spines
/// of the given genus. Children are deduplicated by induced class before
/// attaching, and at most `tree_bound` trees are evaluated per genus level.
pub fn spinal_set(genus: u32, tree_bound: usize) -> Result<BTreeMap<CanonicalForm, PantsGraph>> {
    if genus < 2 {
        return Err(Error::GenusBelowTwo);
    }
    // per genus: class -> (tree, its plus sectors)
    let mut reps: Vec<Level> = vec![BTreeMap::new(), BTreeMap::new()];
    let mut level = BTreeMap::new();
    insert_tree(&mut level, SpineTree::genus_two())?;
    reps.push(level);
    for g in 3..=genus as usize {
        let mut candidates = Vec::new();
        for (t, _, s) in reps[g - 1].values() {
            candidates.extend(nonseparating_attaches(t, s));
        }
        for a in 2..=g / 2 {
            for (lt, _, ls) in reps[a].values() {
                for (rt, _, rs) in reps[g - a].values() {
                    candidates.extend(separating_attaches(lt, ls, rt, rs));
                }
            }
        }
        let mut level = BTreeMap::new();
        for t in candidates.into_iter().take(tree_bound) {
            insert_tree(&mut level, t)?;
        }
        reps.push(level);
    }
    Ok(reps.swap_remove(genus as usize).into_iter().map(|(k, (_, g, _))| (k, g)).collect())
}

fn insert_tree(level: &mut Level, t: SpineTree) -> Result<()> {
    let piece = build_piece(&t)?;
    let m = piece_to_complex(&piece);
    let g = positive_boundary(&m)?.graph;
    let sectors = piece_plus_sectors(&piece);
    level.entry(g.canonical_form()).or_insert((t, g, sectors));
    Ok(())
}

/// Fewest moves from a spinal class to the class of `target`, searched
/// without markings or twists; a lower bound for the layer number.
pub fn layer_number_lower_bound(target: &PantsGraph, genus: u32, max_depth: usize) -> Result<Option<usize>> {
    layer_number_lower_bound_with(target, genus, max_depth, DEFAULT_TREE_BOUND)
}

pub fn layer_number_lower_bound_with(
    target: &PantsGraph,
    genus: u32,
    max_depth: usize,
    tree_bound: usize,
) -> Result<Option<usize>> {
    if target.genus() != genus {
        return Err(Error::GenusMismatch(target.genus(), genus));
    }
    let sources: Vec<PantsGraph> = spinal_set(genus, tree_bound)?.into_values().collect();
    Ok(bfs_from_classes(&sources, target, max_depth))
}

/// As [`layer_number_lower_bound`], with the spinal sources visited in a
/// seeded random order. The multi-source search makes the value independent
/// of that order.
pub fn layer_number_lower_bound_seeded(
    target: &PantsGraph,
    genus: u32,
    max_depth: usize,
    seed: u64,
) -> Result<Option<usize>> {
    if target.genus() != genus {
        return Err(Error::GenusMismatch(target.genus(), genus));
    }
    let mut sources: Vec<PantsGraph> = spinal_set(genus, DEFAULT_TREE_BOUND)?.into_values().collect();
    sources.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(bfs_from_classes(&sources, target, max_depth))
}
