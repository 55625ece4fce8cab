//! Zero-framed parallels.
//!
//! Every crossing of the original diagram becomes a grid of crossings between
//! the copies of its two strands. Copy `k` of a strand runs at offset `k` to
//! the right of the direction of travel, so the copies of one component are
//! blackboard parallels whose pairwise linking number equals the component's
//! self-writhe. A twist region of full twists on the first arc of each
//! component cancels that linking.

use std::collections::HashMap;

use super::builder::{braid_crossing, PlanarBuilder};
use super::{ArcId, FramedLinkDiagram, LinkError};

/// Replaces component `p` by `j[p]` parallel copies with pairwise linking
/// number 0, each carrying framing `f_p`. `j[p] = 0` deletes the component.
pub fn cable(l: &FramedLinkDiagram, j: &[u32]) -> Result<FramedLinkDiagram, LinkError> {
    let mu = l.num_components();
    if j.len() != mu {
        return Err(LinkError::IndexLength { got: j.len(), expected: mu });
    }
    let owner = l.arc_owner();
    let mut b = PlanarBuilder::new();
    // segment at the start of the arc (leaving a crossing) and at its end
    let mut start: HashMap<ArcId, Vec<usize>> = HashMap::new();
    let mut end: HashMap<ArcId, Vec<usize>> = HashMap::new();
    let mut framings = Vec::new();
    let mut tag = 0u32;
    for (p, comp) in l.components().iter().enumerate() {
        let copies = j[p] as usize;
        let tags: Vec<u32> = (0..copies as u32).map(|k| tag + k).collect();
        tag += copies as u32;
        framings.extend(std::iter::repeat_n(l.framings()[p], copies));
        let w = l.self_writhe(p);
        for (idx, &a) in comp.iter().enumerate() {
            let s: Vec<usize> = tags.iter().map(|&t| b.segment(Some(t))).collect();
            if idx == 0 && w != 0 && copies > 1 {
                let e: Vec<usize> = tags.iter().map(|&t| b.segment(Some(t))).collect();
                let mut ends = s.clone();
                let positive = w < 0;
                for _ in 0..w.unsigned_abs() {
                    for _ in 0..copies {
                        for i in 0..copies - 1 {
                            braid_crossing(&mut b, &mut ends, i, positive);
                        }
                    }
                }
                for k in 0..copies {
                    b.join(ends[k], e[k]);
                }
                start.insert(a, s);
                end.insert(a, e);
            } else {
                start.insert(a, s.clone());
                end.insert(a, s);
            }
        }
    }

    for x in l.crossings() {
        let ju = j[owner[&x.slots[0]]] as usize;
        let jo = j[owner[&x.slots[1]]] as usize;
        let south = &end[&x.slots[0]];
        let north = &start[&x.slots[2]];
        let over_in = x.over_in();
        let (west, east) = if over_in == 3 {
            (&end[&x.slots[3]], &start[&x.slots[1]])
        } else {
            (&start[&x.slots[3]], &end[&x.slots[1]])
        };
        if ju == 0 || jo == 0 {
            for u in 0..ju {
                b.join(south[u], north[u]);
            }
            for v in 0..jo {
                b.join(west[v], east[v]);
            }
            continue;
        }
        // Over copy v sits at height -v (positive) or +v (negative); rows
        // are listed bottom to top.
        let rows: Vec<usize> = if x.sign > 0 { (0..jo).rev().collect() } else { (0..jo).collect() };
        // vertical[u][r]: segment of under copy u below row r (r = jo: above all)
        let vertical: Vec<Vec<usize>> = (0..ju)
            .map(|u| {
                let mut col = vec![south[u]];
                for _ in 1..jo {
                    col.push(b.segment(None));
                }
                col.push(north[u]);
                col
            })
            .collect();
        // horizontal[v][c]: segment of over copy v left of column c
        let horizontal: Vec<Vec<usize>> = (0..jo)
            .map(|v| {
                let mut row = vec![west[v]];
                for _ in 1..ju {
                    row.push(b.segment(None));
                }
                row.push(east[v]);
                row
            })
            .collect();
        for (r, &v) in rows.iter().enumerate() {
            for u in 0..ju {
                b.crossing_oriented(
                    [vertical[u][r], horizontal[v][u + 1], vertical[u][r + 1], horizontal[v][u]],
                    over_in,
                );
            }
        }
    }
    let total = b.count_components();
    debug_assert_eq!(total, framings.len());
    Ok(b.finish(&framings))
}

#[cfg(test)]
mod tests {
    use super::super::catalog::builtin;
    use super::*;

    #[test]
    fn unit_cable_is_identity_shape() {
        for name in ["trefoil", "figure-eight", "borromean", "hopf"] {
            let l = builtin(name);
            let c = cable(&l, &vec![1; l.num_components()]).unwrap();
            assert_eq!(c.num_crossings(), l.num_crossings());
            assert_eq!(c.num_components(), l.num_components());
            assert_eq!(c.writhe(), l.writhe());
        }
    }

    #[test]
    fn copies_are_unlinked() {
        for name in ["trefoil", "trefoil-left", "figure-eight", "borromean"] {
            let l = builtin(name);
            for jj in 1..=3u32 {
                let j = vec![jj; l.num_components()];
                let c = cable(&l, &j).unwrap();
                assert_eq!(c.num_components(), l.num_components() * jj as usize);
                let m = c.linking_matrix();
                for a in 0..m.len() {
                    for b in 0..m.len() {
                        if a != b {
                            assert_eq!(m[a][b], 0, "{name} j={jj} ({a},{b})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn zero_deletes() {
        let l = builtin("borromean");
        let c = cable(&l, &[0, 1, 2]).unwrap();
        assert_eq!(c.num_components(), 3);
        assert_eq!(c.linking_matrix(), vec![vec![0; 3]; 3]);
        assert!(cable(&l, &[1, 1]).is_err());
    }

    #[test]
    fn framings_inherited() {
        let l = builtin("trefoil").with_uniform_framing(-1);
        let c = cable(&l, &[3]).unwrap();
        assert_eq!(c.framings(), &[-1, -1, -1]);
    }
}
