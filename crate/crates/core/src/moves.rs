//! Reidemeister moves on torus diagrams and a bounded search for
//! equivalences between diagrams.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::diagram::{
    canonical_key, crossing_of, opposite, rot, slot_of, DiagramError, FaceTopology, Quotient, TorusDiagram,
    TorusProjection,
};
use crate::lattice::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Down,
    R2Down,
    R3,
    R2Up,
    R1Up,
}

/// A place where a move applies. Darts are listed in face order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// Contractible monogon face bounded by the loop edge leaving `dart`.
    R1Down { dart: usize },
    /// Disk bigon face whose strands cancel.
    R2Down { darts: [usize; 2] },
    /// Disk triangle face at three distinct crossings, not cyclically over.
    R3 { darts: [usize; 3] },
    /// Pushes a finger of the edge at `d1` across the edge at `d2`, both on
    /// one face; the finger passes over when `finger_over`.
    R2Up { d1: usize, d2: usize, finger_over: bool },
    /// Adds a kink on the edge leaving `dart`. The monogon lies to the left
    /// of the strand when `left`; the first pass through the kink is over when
    /// `over`.
    R1Up { dart: usize, left: bool, over: bool },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            Self::R1Down { .. } => MoveKind::R1Down,
            Self::R2Down { .. } => MoveKind::R2Down,
            Self::R3 { .. } => MoveKind::R3,
            Self::R2Up { .. } => MoveKind::R2Up,
            Self::R1Up { .. } => MoveKind::R1Up,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move site {0:?} does not apply to this diagram")]
    Inapplicable(MoveSite),
    #[error("move produced an invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
}

/// Crossing-reducing and crossing-preserving sites (R1down, R2down, R3).
pub fn find_moves(d: &TorusDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let TorusProjection::Graph { map, .. } = d.projection() else {
        return out;
    };
    for face in d.projection().faces().faces {
        if face.topology != FaceTopology::Disk {
            continue;
        }
        let f = &face.darts;
        let corners: Vec<usize> = f.iter().map(|&h| crossing_of(h)).collect();
        match f.len() {
            1 => out.push(MoveSite::R1Down { dart: f[0] }),
            2 if corners[0] != corners[1] => {
                if d.is_over(f[0]) == d.is_over(map.pair(f[0])) {
                    out.push(MoveSite::R2Down { darts: [f[0], f[1]] });
                }
            }
            3 if corners[0] != corners[1] && corners[1] != corners[2] && corners[0] != corners[2] => {
                // the strand along edge i is over at both of its corners
                if f.iter().any(|&h| d.is_over(h) && d.is_over(map.pair(h))) {
                    out.push(MoveSite::R3 { darts: [f[0], f[1], f[2]] });
                }
            }
            _ => {}
        }
    }
    out
}

/// Every finger move between two distinct edges on a common face.
pub fn find_r2up(d: &TorusDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let TorusProjection::Graph { map, .. } = d.projection() else {
        return out;
    };
    for face in d.projection().faces().faces {
        for &d1 in &face.darts {
            for &d2 in &face.darts {
                if d1 == d2 || d2 == map.pair(d1) {
                    continue;
                }
                for finger_over in [false, true] {
                    out.push(MoveSite::R2Up { d1, d2, finger_over });
                }
            }
        }
    }
    out
}

/// Every kink insertion: each half-edge, both sides, both crossing choices.
pub fn find_r1up(d: &TorusDiagram) -> Vec<MoveSite> {
    let TorusProjection::Graph { map, .. } = d.projection() else {
        return Vec::new();
    };
    (0..map.half_edges())
        .flat_map(|dart| {
            [(false, false), (false, true), (true, false), (true, true)]
                .map(|(left, over)| MoveSite::R1Up { dart, left, over })
        })
        .collect()
}

pub fn apply_move(d: &TorusDiagram, site: MoveSite) -> Result<TorusDiagram, MoveError> {
    let applicable = match site {
        MoveSite::R2Up { d1, d2, .. } => {
            let TorusProjection::Graph { map, .. } = d.projection() else {
                return Err(MoveError::Inapplicable(site));
            };
            let face = map.face_index();
            d1 < map.half_edges()
                && d2 < map.half_edges()
                && d1 != d2
                && d2 != map.pair(d1)
                && face[d1] == face[d2]
        }
        MoveSite::R1Up { dart, .. } => match d.projection() {
            TorusProjection::Graph { map, .. } => dart < map.half_edges(),
            TorusProjection::Circle(_) => false,
        },
        _ => find_moves(d).contains(&site),
    };
    if !applicable {
        return Err(MoveError::Inapplicable(site));
    }
    match site {
        MoveSite::R1Down { dart } => remove_crossings(d, &[crossing_of(dart)]),
        MoveSite::R2Down { darts } => remove_crossings(d, &[crossing_of(darts[0]), crossing_of(darts[1])]),
        MoveSite::R3 { darts } => Ok(r3(d, darts)?),
        MoveSite::R2Up { d1, d2, finger_over } => Ok(r2up(d, d1, d2, finger_over)?),
        MoveSite::R1Up { dart, left, over } => Ok(r1up(d, dart, left, over)?),
    }
}

struct Raw {
    pair: Vec<usize>,
    darts: Vec<Vec2>,
    over: Vec<bool>,
}

fn raw(d: &TorusDiagram) -> Raw {
    let TorusProjection::Graph { map, winding } = d.projection() else {
        unreachable!("moves only apply to diagrams with crossings")
    };
    Raw {
        pair: map.pairing().to_vec(),
        darts: winding.darts().to_vec(),
        over: d.over().to_vec(),
    }
}

/// Deletes crossings whose strands straighten out, summing windings along
/// each straightened strand.
fn remove_crossings(d: &TorusDiagram, removed: &[usize]) -> Result<TorusDiagram, MoveError> {
    let r = raw(d);
    let n = r.over.len();
    let gone = |h: usize| removed.contains(&crossing_of(h));
    let kept: Vec<usize> = (0..n).filter(|c| !removed.contains(c)).collect();
    if kept.is_empty() {
        return Ok(TorusDiagram::circle(d.knot_class())?);
    }
    let mut label = vec![usize::MAX; n];
    for (i, &c) in kept.iter().enumerate() {
        label[c] = i;
    }
    let relabel = |h: usize| 4 * label[crossing_of(h)] + slot_of(h);
    let m = kept.len();
    let mut pair = vec![0; 4 * m];
    let mut darts = vec![Vec2::ZERO; 4 * m];
    for &c in &kept {
        for a in 4 * c..4 * c + 4 {
            let mut total = r.darts[a];
            let mut x = r.pair[a];
            while gone(x) {
                let y = opposite(x);
                total += r.darts[y];
                x = r.pair[y];
            }
            pair[relabel(a)] = relabel(x);
            darts[relabel(a)] = total;
        }
    }
    let over = kept.iter().map(|&c| r.over[c]).collect();
    Ok(TorusDiagram::from_raw(pair, darts, over)?)
}

/// Slides one strand across the crossing of the other two. Each crossing
/// keeps its slot layout and over bit; only the connections change.
fn r3(d: &TorusDiagram, h: [usize; 3]) -> Result<TorusDiagram, DiagramError> {
    let mut r = raw(d);
    let c: Vec<usize> = h.iter().map(|&x| crossing_of(x)).collect();
    // gauge so the triangle edges carry no winding
    let mut potential = vec![Vec2::ZERO; r.over.len()];
    potential[c[1]] = -r.darts[h[0]];
    potential[c[2]] = potential[c[1]] - r.darts[h[1]];
    for x in 0..r.pair.len() {
        r.darts[x] = r.darts[x] + potential[crossing_of(r.pair[x])] - potential[crossing_of(x)];
    }
    // slot at corner i where the triangle edge from corner i-1 arrives
    let s: Vec<usize> = (0..3).map(|i| r.pair[h[(i + 2) % 3]]).collect();
    let at = |i: usize, k: usize| 4 * c[i] + (slot_of(s[i]) + k) % 4;
    // external ports move to the corner the strand now meets first/last
    let role = |x: usize| -> usize {
        for j in 0..3 {
            let next = (j + 1) % 3;
            if x == at(j, 3) {
                return at(next, 0);
            }
            if x == at(next, 2) {
                return at(j, 1);
            }
        }
        x
    };
    let triangle: HashSet<usize> = (0..3).flat_map(|i| [at(i, 0), at(i, 1)]).collect();
    let mut pair = r.pair.clone();
    let mut darts = r.darts.clone();
    for x in 0..r.pair.len() {
        if triangle.contains(&x) {
            continue;
        }
        let (nx, ny) = (role(x), role(r.pair[x]));
        pair[nx] = ny;
        darts[nx] = r.darts[x];
    }
    for j in 0..3 {
        let next = (j + 1) % 3;
        let (a, b) = (at(next, 2), at(j, 3));
        pair[a] = b;
        pair[b] = a;
        darts[a] = Vec2::ZERO;
        darts[b] = Vec2::ZERO;
    }
    TorusDiagram::from_raw(pair, darts, r.over)
}

/// Two new crossings `X = n`, `Y = n + 1` with slots E, N, W, S = 0..3.
/// The edge at `d1` is routed through X and Y along their N-S axes; the edge
/// at `d2` through Y and X along their W-E axes.
fn r2up(d: &TorusDiagram, d1: usize, d2: usize, finger_over: bool) -> Result<TorusDiagram, DiagramError> {
    let r = raw(d);
    let n = r.over.len();
    // boundary path from d1 up to d2 within the face
    let mut path = Vec2::ZERO;
    let mut x = d1;
    while x != d2 {
        path += r.darts[x];
        x = rot(r.pair[x]);
    }
    let (e1, e2) = (r.pair[d1], r.pair[d2]);
    let (w1, w2) = (r.darts[d1], r.darts[d2]);
    let (xc, yc) = (4 * n, 4 * (n + 1));
    let (east, north, west, south) = (0, 1, 2, 3);
    let mut pair = r.pair.clone();
    pair.resize(4 * n + 8, 0);
    let mut darts = r.darts.clone();
    darts.resize(4 * n + 8, Vec2::ZERO);
    let mut link = |a: usize, b: usize, w: Vec2| {
        pair[a] = b;
        pair[b] = a;
        darts[a] = w;
        darts[b] = -w;
    };
    link(d1, xc + south, Vec2::ZERO);
    link(xc + north, yc + north, Vec2::ZERO);
    link(yc + south, e1, w1);
    link(d2, yc + west, -path);
    link(yc + east, xc + west, Vec2::ZERO);
    link(xc + east, e2, w2 + path);
    let mut over = r.over;
    over.extend([finger_over, finger_over]);
    TorusDiagram::from_raw(pair, darts, over)
}

/// New crossing `K = n`: the strand enters at slot 0, leaves at 2, loops
/// back into 1 (monogon on the left) or 3 (on the right) and exits opposite.
fn r1up(d: &TorusDiagram, dart: usize, left: bool, over: bool) -> Result<TorusDiagram, DiagramError> {
    let r = raw(d);
    let n = r.over.len();
    let k = 4 * n;
    let (q, w) = (r.pair[dart], r.darts[dart]);
    let back = if left { 1 } else { 3 };
    let mut pair = r.pair.clone();
    pair.resize(k + 4, 0);
    let mut darts = r.darts.clone();
    darts.resize(k + 4, Vec2::ZERO);
    let mut link = |a: usize, b: usize, w: Vec2| {
        pair[a] = b;
        pair[b] = a;
        darts[a] = w;
        darts[b] = -w;
    };
    link(dart, k, Vec2::ZERO);
    link(k + 2, k + back, Vec2::ZERO);
    link(k + opposite(back), q, w);
    let mut o = r.over;
    // over bit false puts the first pass, through slots {0,2}, over
    o.push(!over);
    TorusDiagram::from_raw(pair, darts, o)
}

/// Greedily applies R1down and R2down until neither applies.
pub fn simplify(d: &TorusDiagram) -> TorusDiagram {
    let mut cur = d.clone();
    'outer: loop {
        for site in find_moves(&cur) {
            if site.kind() == MoveKind::R3 {
                continue;
            }
            if let Ok(next) = apply_move(&cur, site) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Equivalent { depth: usize },
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("equivalence search expanded {expanded} diagrams without exhausting the space")]
pub struct ResourceExhausted {
    pub expanded: usize,
}

/// Breadth-first search over diagrams up to relabeling, reflection and
/// mirror, using every move kind with crossing count capped at
/// `max_crossings`. `NotFound` means the capped space was exhausted.
pub fn equivalence_search(
    d1: &TorusDiagram,
    d2: &TorusDiagram,
    max_crossings: usize,
    max_steps: usize,
) -> Result<SearchOutcome, ResourceExhausted> {
    let target = canonical_key(d2, Quotient::KNOT);
    let found = explore(d1, max_crossings, max_steps, |d, _| canonical_key(d, Quotient::KNOT) == target)?;
    Ok(match found {
        Some((_, depth)) => SearchOutcome::Equivalent { depth },
        None => SearchOutcome::NotFound,
    })
}

/// Breadth-first exploration from `start`, stopping at the first diagram
/// accepted by `goal`.
pub fn explore(
    start: &TorusDiagram,
    max_crossings: usize,
    max_steps: usize,
    mut goal: impl FnMut(&TorusDiagram, usize) -> bool,
) -> Result<Option<(TorusDiagram, usize)>, ResourceExhausted> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_key(start, Quotient::KNOT));
    queue.push_back((start.clone(), 0usize));
    let mut expanded = 0;
    while let Some((d, depth)) = queue.pop_front() {
        if goal(&d, depth) {
            return Ok(Some((d, depth)));
        }
        if expanded == max_steps {
            return Err(ResourceExhausted { expanded });
        }
        expanded += 1;
        let mut sites = find_moves(&d);
        if d.crossings() < max_crossings {
            sites.extend(find_r1up(&d));
        }
        if d.crossings() + 2 <= max_crossings {
            sites.extend(find_r2up(&d));
        }
        for site in sites {
            let Ok(next) = apply_move(&d, site) else { continue };
            if seen.insert(canonical_key(&next, Quotient::KNOT)) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(None)
}
