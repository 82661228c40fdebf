//! Canonical keys: the least code over all relabelings of a diagram.
//!
//! A relabeling is fixed by a root half-edge and an orientation. Crossings are
//! numbered in breadth-first order from the root, each newly reached crossing
//! rotated so that the half-edge it was reached through becomes slot 0.
//! Cellular and local shadows need no winding data in the key; annular
//! shadows record which faces carry the essential boundary.

use super::{crossing_of, slot_of, Embedding, TorusDiagram, TorusProjection};
use crate::lattice::Vec2;

/// Which symmetries to quotient by. Crossing relabeling and slot rotation
/// are always included.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quotient {
    pub reflect: bool,
    pub mirror: bool,
}

impl Quotient {
    pub const RELABEL: Quotient = Quotient {
        reflect: false,
        mirror: false,
    };
    pub const PROJECTION: Quotient = Quotient {
        reflect: true,
        mirror: false,
    };
    pub const KNOT: Quotient = Quotient {
        reflect: true,
        mirror: true,
    };
}

fn tag(e: Embedding) -> u32 {
    match e {
        Embedding::Cellular => 0,
        Embedding::Annular { .. } => 1,
        Embedding::Local => 2,
    }
}

/// Canonical key of a diagram over the selected symmetry group.
pub fn canonical_key(d: &TorusDiagram, q: Quotient) -> String {
    key_inner(d.projection(), Some(d.over()), q)
}

/// Canonical key of a bare projection (the mirror flag is irrelevant).
pub fn projection_key(p: &TorusProjection, reflect: bool) -> String {
    key_inner(
        p,
        None,
        Quotient {
            reflect,
            mirror: false,
        },
    )
}

fn key_inner(p: &TorusProjection, over: Option<&[bool]>, q: Quotient) -> String {
    let (map, winding) = match p {
        TorusProjection::Circle(c) => {
            return if c.is_zero() { "L0".into() } else { "A0".into() };
        }
        TorusProjection::Graph { map, winding } => (map, winding),
    };
    let embedding = p.embedding();
    let n = map.crossings();
    let total = map.half_edges();
    let mut best: Option<Vec<u32>> = None;
    let orientations: &[bool] = if q.reflect { &[false, true] } else { &[false] };
    let mut label = vec![usize::MAX; n];
    let mut offset = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut new_pair = vec![0usize; total];
    let mut new_wind = vec![Vec2::ZERO; total];
    for root in 0..total {
        for &refl in orientations {
            label.fill(usize::MAX);
            order.clear();
            let new_slot = |off: usize, s: usize| if refl { (off + 4 - s) % 4 } else { (s + 4 - off) % 4 };
            let old_slot = |off: usize, k: usize| if refl { (off + 4 - k) % 4 } else { (k + off) % 4 };
            label[crossing_of(root)] = 0;
            offset[crossing_of(root)] = slot_of(root);
            order.push(crossing_of(root));
            let mut i = 0;
            while i < order.len() {
                let c = order[i];
                for k in 0..4 {
                    let h = 4 * c + old_slot(offset[c], k);
                    let qh = map.pair(h);
                    let d = crossing_of(qh);
                    if label[d] == usize::MAX {
                        label[d] = order.len();
                        offset[d] = slot_of(qh);
                        order.push(d);
                    }
                }
                i += 1;
            }
            let image = |h: usize| {
                let c = crossing_of(h);
                4 * label[c] + new_slot(offset[c], slot_of(h))
            };
            for h in 0..total {
                new_pair[image(h)] = image(map.pair(h));
                new_wind[image(h)] = winding.dart(h);
            }
            let mut code: Vec<u32> = Vec::with_capacity(total + n + 4);
            code.push(tag(embedding));
            code.extend(new_pair.iter().map(|&x| x as u32));
            if matches!(embedding, Embedding::Annular { .. }) {
                let mut designated: Vec<u32> = faces_of(&new_pair)
                    .into_iter()
                    .filter(|f| !f.iter().map(|&h| new_wind[h]).sum::<Vec2>().is_zero())
                    .map(|f| f[0] as u32)
                    .collect();
                designated.sort();
                code.extend(designated);
            }
            let variants: &[bool] = match over {
                None => &[false],
                Some(_) if q.mirror => &[false, true],
                Some(_) => &[false],
            };
            for &flip in variants {
                let mut full = code.clone();
                if let Some(bits) = over {
                    let mut nb = vec![0u32; n];
                    for c in 0..n {
                        nb[label[c]] = u32::from(bits[c] ^ (offset[c] % 2 == 1) ^ flip);
                    }
                    full.extend(nb);
                }
                if best.as_ref().map_or(true, |b| full < *b) {
                    best = Some(full);
                }
            }
        }
    }
    let best = best.expect("at least one crossing");
    let t = match best[0] {
        0 => 'C',
        1 => 'A',
        _ => 'L',
    };
    let pair: Vec<String> = best[1..=total].iter().map(u32::to_string).collect();
    let mut s = format!("{t}{n}|{}", pair.join(","));
    let mut rest = &best[total + 1..];
    if t == 'A' {
        s.push_str(&format!("|d={},{}", rest[0], rest[1]));
        rest = &rest[2..];
    }
    if over.is_some() {
        s.push_str("|o=");
        s.extend(rest.iter().map(|&b| if b == 1 { '1' } else { '0' }));
    }
    s
}

fn faces_of(pair: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; pair.len()];
    let mut out = Vec::new();
    for s in 0..pair.len() {
        if seen[s] {
            continue;
        }
        let mut f = Vec::new();
        let mut h = s;
        while !seen[h] {
            seen[h] = true;
            f.push(h);
            h = super::rot(pair[h]);
        }
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::decode_diagram;

    #[test]
    fn key_is_invariant_under_mirror_with_flag() {
        let d = decode_diagram("tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,1),2:(0,-1);over=0").unwrap();
        assert_eq!(canonical_key(&d, Quotient::KNOT), canonical_key(&d.mirror(), Quotient::KNOT));
        assert_eq!(canonical_key(&d, Quotient::KNOT), canonical_key(&d.reflect(), Quotient::KNOT));
        assert_eq!(
            canonical_key(&d, Quotient::RELABEL),
            canonical_key(&d.relabel(&[0], &[1]), Quotient::RELABEL)
        );
    }

    #[test]
    fn one_crossing_shadows_have_distinct_keys() {
        let essential = decode_diagram("tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,1),2:(0,-1);over=0").unwrap();
        // one essential loop and one null-homotopic kink
        let kinked = decode_diagram("tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,0),2:(0,1);over=0").unwrap();
        assert_ne!(
            projection_key(essential.projection(), true),
            projection_key(kinked.projection(), true)
        );
    }
}
