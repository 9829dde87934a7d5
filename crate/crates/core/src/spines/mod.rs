//! Fat spines of handlebodies and compression bodies, the boundary
//! decompositions they induce, and layered models built on top of them.
//!
//! A spine is a blockless [`ModelComplex`] whose links carry germs: the cyclic
//! list of face sheets meeting the link circle. The gap between germ `i` and
//! germ `i+1` is a sector; it is bounded by the forward side of germ `i` and
//! the backward side of germ `i+1`, and it becomes one boundary curve (a lift)
//! of the regular neighbourhood.

mod build;
mod classify;
mod induced;
mod layer;
mod trees;

use serde::{Deserialize, Serialize};

use crate::model::Sign;

pub use build::build_fat_spine;
pub use classify::{classify_loops, LoopClass};
pub use induced::{induced_boundary_decomposition, negative_boundary, positive_boundary, BoundaryKind};
pub use layer::{
    layer_model, layer_number_lower_bound, layer_number_lower_bound_seeded, layer_number_lower_bound_with, spinal_set,
    DEFAULT_TREE_BOUND,
};
pub use trees::{handlebody_trees, plus_sectors};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpineTree {
    Leaf(Leaf),
    Attach(Attach),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Leaf {
    /// One pants with two cuffs glued: a one-holed torus carrying an interior
    /// loop and its boundary loop.
    GenusTwo,
    /// `S × {1/2}` for each listed genus, decomposed by a chain.
    Product { genera: Vec<u32> },
}

/// A connecting pants `F`: cuffs 0 and 1 go to boundary loops of the
/// children, cuff 2 stays free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attach {
    pub children: Vec<SpineTree>,
    pub cuffs: Vec<CuffTarget>,
    pub separating: bool,
}

/// A sector of a child's link: `link` indexes the child's links in
/// construction order and `sector` the gap after germ `sector`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuffTarget {
    pub child: usize,
    pub link: usize,
    pub sector: usize,
    #[serde(default = "plus")]
    pub sign: Sign,
}

fn plus() -> Sign {
    Sign::Plus
}

impl SpineTree {
    pub fn genus_two() -> Self {
        SpineTree::Leaf(Leaf::GenusTwo)
    }

    pub fn product(genera: Vec<u32>) -> Self {
        SpineTree::Leaf(Leaf::Product { genera })
    }

    pub fn nonseparating(child: SpineTree, a: (usize, usize, Sign), b: (usize, usize, Sign)) -> Self {
        SpineTree::Attach(Attach {
            children: vec![child],
            cuffs: vec![
                CuffTarget { child: 0, link: a.0, sector: a.1, sign: a.2 },
                CuffTarget { child: 0, link: b.0, sector: b.1, sign: b.2 },
            ],
            separating: false,
        })
    }

    pub fn separating(left: SpineTree, a: (usize, usize, Sign), right: SpineTree, b: (usize, usize, Sign)) -> Self {
        SpineTree::Attach(Attach {
            children: vec![left, right],
            cuffs: vec![
                CuffTarget { child: 0, link: a.0, sector: a.1, sign: a.2 },
                CuffTarget { child: 1, link: b.0, sector: b.1, sign: b.2 },
            ],
            separating: true,
        })
    }

    /// Genus of the positive boundary, assuming the tree is well formed.
    pub fn genus(&self) -> u32 {
        match self {
            SpineTree::Leaf(Leaf::GenusTwo) => 2,
            SpineTree::Leaf(Leaf::Product { genera }) => genera.iter().sum(),
            SpineTree::Attach(a) if a.separating => a.children.iter().map(SpineTree::genus).sum(),
            SpineTree::Attach(a) => a.children.iter().map(SpineTree::genus).sum::<u32>() + 1,
        }
    }

    /// Genera of the negative boundary components, in leaf order.
    pub fn minus_genera(&self) -> Vec<u32> {
        match self {
            SpineTree::Leaf(Leaf::GenusTwo) => vec![],
            SpineTree::Leaf(Leaf::Product { genera }) => genera.clone(),
            SpineTree::Attach(a) => a.children.iter().flat_map(SpineTree::minus_genera).collect(),
        }
    }

    pub fn is_handlebody(&self) -> bool {
        self.minus_genera().is_empty()
    }

    /// `χ(H)`: each pants contributes −1, circles nothing.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            SpineTree::Leaf(Leaf::GenusTwo) => -1,
            SpineTree::Leaf(Leaf::Product { genera }) => genera.iter().map(|&g| 2 - 2 * g as i64).sum(),
            SpineTree::Attach(a) => a.children.iter().map(SpineTree::euler_characteristic).sum::<i64>() - 1,
        }
    }
}
