use super::build::{build_piece, Piece};
use super::SpineTree;
use crate::error::{Error, Result};
use crate::model::Sign;

/// `(link, sector)` pairs of a tree that face the positive boundary, in
/// link order.
pub fn plus_sectors(t: &SpineTree) -> Result<Vec<(usize, usize)>> {
    Ok(piece_plus_sectors(&build_piece(t)?))
}

pub(crate) fn piece_plus_sectors(p: &Piece) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (l, germs) in p.links.iter().enumerate() {
        for s in 0..germs.len() {
            if p.is_plus_sector(l, s) {
                out.push((l, s));
            }
        }
    }
    out
}

const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];

/// Every non-separating attach over `child` (ordered sector pairs, repeats
/// allowed, both signs per cuff).
pub(crate) fn nonseparating_attaches(child: &SpineTree, sectors: &[(usize, usize)]) -> Vec<SpineTree> {
    let mut out = Vec::with_capacity(sectors.len() * sectors.len() * 4);
    for &(l0, s0) in sectors {
        for &(l1, s1) in sectors {
            for a in SIGNS {
                for b in SIGNS {
                    out.push(SpineTree::nonseparating(child.clone(), (l0, s0, a), (l1, s1, b)));
                }
            }
        }
    }
    out
}

pub(crate) fn separating_attaches(
    left: &SpineTree,
    ls: &[(usize, usize)],
    right: &SpineTree,
    rs: &[(usize, usize)],
) -> Vec<SpineTree> {
    let mut out = Vec::with_capacity(ls.len() * rs.len() * 4);
    for &(l0, s0) in ls {
        for &(l1, s1) in rs {
            for a in SIGNS {
                for b in SIGNS {
                    out.push(SpineTree::separating(left.clone(), (l0, s0, a), right.clone(), (l1, s1, b)));
                }
            }
        }
    }
    out
}

type TreeWithSectors = (SpineTree, Vec<(usize, usize)>);

/// Every handlebody spine tree of the given genus built from genus-two
/// leaves, without any deduplication. Grows quickly: 1, 36, 5220 trees at
/// genus 2, 3, 4.
pub fn handlebody_trees(genus: u32) -> Result<Vec<SpineTree>> {
    if genus < 2 {
        return Err(Error::GenusBelowTwo);
    }
    let mut levels: Vec<Vec<TreeWithSectors>> = vec![vec![], vec![]];
    let leaf = SpineTree::genus_two();
    let sectors = plus_sectors(&leaf)?;
    levels.push(vec![(leaf, sectors)]);
    for g in 3..=genus as usize {
        let mut next = Vec::new();
        for (t, s) in &levels[g - 1] {
            next.extend(nonseparating_attaches(t, s));
        }
        for a in 2..=g - 2 {
            for (lt, ls) in &levels[a] {
                for (rt, rs) in &levels[g - a] {
                    next.extend(separating_attaches(lt, ls, rt, rs));
                }
            }
        }
        let with_sectors = next
            .into_iter()
            .map(|t| {
                let s = plus_sectors(&t)?;
                Ok((t, s))
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(with_sectors);
    }
    Ok(levels.swap_remove(genus as usize).into_iter().map(|(t, _)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        assert_eq!(handlebody_trees(2).unwrap().len(), 1);
        assert_eq!(handlebody_trees(3).unwrap().len(), 36);
    }

    #[test]
    fn leaf_sectors() {
        assert_eq!(plus_sectors(&SpineTree::genus_two()).unwrap(), vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(plus_sectors(&SpineTree::product(vec![2])).unwrap(), vec![(0, 0), (1, 0), (2, 0)]);
    }
}
