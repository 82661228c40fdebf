//! Exhaustive generation of 4-regular graphs and knot shadows on the torus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    crossing_of, projection_key, CombinatorialMap, Embedding, FaceTopology, TorusProjection, WindingAssignment,
};
use crate::lattice::{column_echelon, lattice_index, Vec2};

/// A connected 4-regular multigraph, stored as a symmetric multiplicity
/// matrix whose diagonal holds loop counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractGraph {
    mult: Vec<Vec<u8>>,
}

impl AbstractGraph {
    /// `loops[i]` on the diagonal, edge multiplicities off it.
    pub fn from_matrix(mult: Vec<Vec<u8>>) -> Self {
        Self { mult }.canonical()
    }

    /// The vertexless circle.
    pub fn circle() -> Self {
        Self { mult: Vec::new() }
    }

    pub fn of_map(map: &CombinatorialMap) -> Self {
        let n = map.crossings();
        let mut mult = vec![vec![0u8; n]; n];
        for (a, b) in map.edges() {
            let (i, j) = (crossing_of(a), crossing_of(b));
            if i == j {
                mult[i][i] += 1;
            } else {
                mult[i][j] += 1;
                mult[j][i] += 1;
            }
        }
        Self::from_matrix(mult)
    }

    pub fn of_projection(p: &TorusProjection) -> Self {
        p.map().map_or_else(Self::circle, Self::of_map)
    }

    pub fn vertices(&self) -> usize {
        self.mult.len()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.vertices()).map(|i| self.mult[i][i] as usize).sum()
    }

    pub fn max_multiplicity(&self) -> u8 {
        let n = self.vertices();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.mult[i][j])
            .max()
            .unwrap_or(0)
    }

    fn count_with_multiplicity(&self, m: u8) -> usize {
        let n = self.vertices();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.mult[i][j] == m)
            .count()
    }

    pub fn is_regular(&self) -> bool {
        (0..self.vertices()).all(|i| {
            let deg: usize = (0..self.vertices())
                .map(|j| if i == j { 2 * self.mult[i][i] as usize } else { self.mult[i][j] as usize })
                .sum();
            deg == 4
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.mult[i][j] > 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Has a loop or a multiple edge. The vertexless circle is one closed
    /// edge and counts as a loop.
    pub fn lemma1_check(&self) -> bool {
        self.vertices() == 0 || self.loop_count() > 0 || self.max_multiplicity() >= 2
    }

    fn canonical(self) -> Self {
        let n = self.mult.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<Vec<u8>>> = None;
        permutations(&mut perm, 0, &mut |p| {
            let m: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| self.mult[p[i]][p[j]]).collect()).collect();
            if best.as_ref().map_or(true, |b| m > *b) {
                best = Some(m);
            }
        });
        Self {
            mult: best.unwrap_or_default(),
        }
    }

    /// Letter of the graph in the standard list of fifteen, identified by
    /// structure: vertex count, loop count and edge multiplicities.
    pub fn graph_type(&self) -> GraphType {
        let (n, loops, maxm) = (self.vertices(), self.loop_count(), self.max_multiplicity());
        let letter = match (n, loops) {
            (0, _) => 'a',
            (1, _) => 'b',
            (2, 2) => 'c',
            (2, 0) => 'd',
            (3, 2) => 'e',
            (3, 1) => 'f',
            (3, 0) => 'g',
            (4, 2) if maxm == 2 && self.count_with_multiplicity(2) == 3 => 'h',
            (4, 2) if maxm == 3 => 'i',
            (4, 2) => 'j',
            (4, 1) if maxm == 3 => 'k',
            (4, 1) => 'l',
            (4, 0) if maxm == 3 => 'n',
            (4, 0) if self.count_with_multiplicity(1) == 0 => 'm',
            (4, 0) => 'o',
            _ => '?',
        };
        GraphType(letter)
    }
}

/// Letter naming an abstract graph type (`a` = circle, ..., `o`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphType(pub char);

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for AbstractGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.vertices();
        if n == 0 {
            return write!(f, "circle");
        }
        let mut parts = Vec::new();
        for i in 0..n {
            for j in i..n {
                if self.mult[i][j] > 0 {
                    parts.push(format!("{i}-{j}x{}", self.mult[i][j]));
                }
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// All connected 4-regular multigraphs with at most `max_vertices`
/// vertices and at most two loops, including the circle.
pub fn enum_graphs(max_vertices: usize) -> Vec<AbstractGraph> {
    enum_graphs_with_loop_cap(max_vertices, 2)
}

pub fn enum_graphs_with_loop_cap(max_vertices: usize, max_loops: usize) -> Vec<AbstractGraph> {
    let mut out = BTreeSet::new();
    out.insert(AbstractGraph::circle());
    for n in 1..=max_vertices {
        let mut mult = vec![vec![0u8; n]; n];
        fill_graphs(n, 0, 0, &mut mult, &mut |m| {
            let g = AbstractGraph { mult: m.to_vec() };
            if g.is_connected() && g.loop_count() <= max_loops {
                out.insert(g.canonical());
            }
        });
    }
    out.into_iter().collect()
}

/// Enumerates the upper triangle (diagonal = loops) cell by cell.
fn fill_graphs(n: usize, i: usize, j: usize, mult: &mut Vec<Vec<u8>>, f: &mut impl FnMut(&[Vec<u8>])) {
    if i == n {
        let g = AbstractGraph { mult: mult.clone() };
        if g.is_regular() {
            f(mult);
        }
        return;
    }
    let (ni, nj) = if j + 1 == n { (i + 1, i + 1) } else { (i, j + 1) };
    let degree = |m: &Vec<Vec<u8>>, v: usize| -> usize {
        (0..n)
            .map(|w| if w == v { 2 * m[v][v] as usize } else { m[v][w] as usize })
            .sum()
    };
    let max = if i == j { 2 } else { 4 };
    for k in 0..=max {
        if i == j {
            mult[i][i] = k;
        } else {
            mult[i][j] = k;
            mult[j][i] = k;
        }
        if degree(mult, i) <= 4 && degree(mult, j) <= 4 {
            fill_graphs(n, ni, nj, mult, f);
        }
    }
    mult[i][j] = 0;
    mult[j][i] = 0;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindingError {
    #[error("face count {faces} does not fit the requested embedding for {crossings} crossings")]
    FaceCount { faces: usize, crossings: usize },
    #[error("cycle quotient is not Z^2 (rank {rank}, index {index})")]
    NotToroidal { rank: usize, index: i64 },
    #[error("designated faces {0} and {1} are not two distinct faces")]
    BadDesignation(usize, usize),
    #[error("face boundary system has no integer solution")]
    Inconsistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindingMode {
    Cellular,
    /// Indices into `face_orbits()` of the two faces bounding the annulus.
    Annular([usize; 2]),
}

/// Solves for edge windings realizing the requested embedding. Tree edges of
/// a BFS spanning tree get winding zero; the non-tree edges are solved from the
/// face-boundary equations over `Z`.
pub fn winding_solve(map: &CombinatorialMap, mode: WindingMode) -> Result<WindingAssignment, WindingError> {
    let n = map.crossings();
    let faces = map.face_orbits();
    let expected = match mode {
        WindingMode::Cellular => n,
        WindingMode::Annular(_) => n + 2,
    };
    if faces.len() != expected {
        return Err(WindingError::FaceCount {
            faces: faces.len(),
            crossings: n,
        });
    }
    let mut tree = vec![false; map.half_edges()];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for h in 4 * c..4 * c + 4 {
            let q = map.pair(h);
            if !seen[crossing_of(q)] {
                seen[crossing_of(q)] = true;
                tree[h] = true;
                tree[q] = true;
                queue.push_back(crossing_of(q));
            }
        }
    }
    let free: Vec<usize> = map.edges().into_iter().map(|(a, _)| a).filter(|&a| !tree[a]).collect();
    let column: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let m = free.len();
    let rows: Vec<Vec<i64>> = faces
        .iter()
        .map(|f| {
            let mut row = vec![0i64; m];
            for &h in f {
                let (lo, sign) = if h < map.pair(h) { (h, 1) } else { (map.pair(h), -1) };
                if let Some(&j) = column.get(&lo) {
                    row[j] += sign;
                }
            }
            row
        })
        .collect();
    let ech = column_echelon(&rows, m);
    let mut edge_vals = vec![Vec2::ZERO; m];
    match mode {
        WindingMode::Cellular => {
            let kernel = ech.kernel();
            let gens: Vec<Vec2> = if kernel.len() == 2 {
                (0..m).map(|j| Vec2::new(kernel[0][j], kernel[1][j])).collect()
            } else {
                Vec::new()
            };
            let index = lattice_index(&gens);
            if kernel.len() != 2 || index != 1 {
                return Err(WindingError::NotToroidal {
                    rank: kernel.len(),
                    index,
                });
            }
            edge_vals = gens;
        }
        WindingMode::Annular([f1, f2]) => {
            if f1 == f2 || f1 >= faces.len() || f2 >= faces.len() {
                return Err(WindingError::BadDesignation(f1, f2));
            }
            let mut rhs = vec![0i64; faces.len()];
            rhs[f1.min(f2)] = 1;
            rhs[f1.max(f2)] = -1;
            let x = ech.solve(&rhs).ok_or(WindingError::Inconsistent)?;
            for (j, v) in x.into_iter().enumerate() {
                edge_vals[j] = Vec2::new(0, v);
            }
        }
    }
    let mut darts = vec![Vec2::ZERO; map.half_edges()];
    for (j, &a) in free.iter().enumerate() {
        darts[a] = edge_vals[j];
        darts[map.pair(a)] = -edge_vals[j];
    }
    Ok(WindingAssignment::from_darts(map, darts).expect("antisymmetric by construction"))
}

/// Every single-strand rotation system with `n` crossings, up to relabeling.
///
/// The strand is generated as a sequence of passes. Crossings are numbered
/// in order of first visit and rotated so the first visit enters at slot 0;
/// the second visit enters at slot 1 or 3. Every shadow has a labeling of
/// this form, so the list covers all isomorphism classes (with repeats).
pub fn enum_strand_maps(n: usize) -> Vec<CombinatorialMap> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pair = vec![usize::MAX; 4 * n];
    let mut visits = vec![0u8; n];
    visits[0] = 1;
    extend_strand(n, 1, 2, 1, &mut visits, &mut pair, &mut out);
    out
}

fn extend_strand(
    n: usize,
    used: usize,
    exit: usize,
    passes: usize,
    visits: &mut Vec<u8>,
    pair: &mut Vec<usize>,
    out: &mut Vec<CombinatorialMap>,
) {
    if passes == 2 * n {
        pair[exit] = 0;
        pair[0] = exit;
        if let Ok(map) = CombinatorialMap::new(pair.clone()) {
            out.push(map);
        }
        pair[exit] = usize::MAX;
        pair[0] = usize::MAX;
        return;
    }
    let mut link = |entry: usize, next_exit: usize, used: usize, visits: &mut Vec<u8>, pair: &mut Vec<usize>| {
        pair[exit] = entry;
        pair[entry] = exit;
        extend_strand(n, used, next_exit, passes + 1, visits, pair, out);
        pair[exit] = usize::MAX;
        pair[entry] = usize::MAX;
    };
    if used < n {
        let c = used;
        visits[c] = 1;
        link(4 * c, 4 * c + 2, used + 1, visits, pair);
        visits[c] = 0;
    }
    for c in 0..used {
        if visits[c] != 1 {
            continue;
        }
        visits[c] = 2;
        link(4 * c + 1, 4 * c + 3, used, visits, pair);
        link(4 * c + 3, 4 * c + 1, used, visits, pair);
        visits[c] = 1;
    }
}

/// All knot shadows with exactly `n` crossings embeddable in the torus
/// without lying in a disk: cellular rotation systems plus spherical ones
/// with a designated pair of annulus faces.
pub fn enum_shadows(n: usize) -> Vec<TorusProjection> {
    if n == 0 {
        return vec![TorusProjection::Circle(Vec2::new(0, 1))];
    }
    shadows_of_maps(enum_strand_maps(n))
}

pub fn shadows_of_maps(maps: impl IntoIterator<Item = CombinatorialMap>) -> Vec<TorusProjection> {
    let mut out = Vec::new();
    for map in maps {
        let n = map.crossings();
        let faces = map.face_orbits().len();
        if faces == n {
            if let Ok(w) = winding_solve(&map, WindingMode::Cellular) {
                out.push(TorusProjection::new(map.clone(), w).expect("solved windings are valid"));
            }
        } else if faces == n + 2 {
            for i in 0..faces {
                for j in i + 1..faces {
                    if let Ok(w) = winding_solve(&map, WindingMode::Annular([i, j])) {
                        out.push(TorusProjection::new(map.clone(), w).expect("solved windings are valid"));
                    }
                }
            }
        }
    }
    out
}

/// Neither local nor composite, and no null-homotopic loop edge.
pub fn is_prime(p: &TorusProjection) -> bool {
    let (map, winding) = match p {
        TorusProjection::Circle(c) => return !c.is_zero(),
        TorusProjection::Graph { map, winding } => (map, winding),
    };
    if p.embedding() == Embedding::Local {
        return false;
    }
    if (0..map.half_edges()).any(|h| map.is_loop(h) && winding.dart(h).is_zero()) {
        return false;
    }
    find_essential_arc(p).is_none() && find_composite_curve(p).is_none()
}

/// An edge carrying all the homology: every cycle avoiding it is
/// null-homologous, so the rest of the shadow lies in a disk and the edge is
/// a crossing-free but essential arc outside it.
pub fn find_essential_arc(p: &TorusProjection) -> Option<usize> {
    let (map, winding) = match p {
        TorusProjection::Circle(_) => return None,
        TorusProjection::Graph { map, winding } => (map, winding),
    };
    let n = map.crossings();
    'edges: for (cut, _) in map.edges() {
        let skip = |h: usize| h == cut || h == map.pair(cut);
        let mut potential = vec![None; n];
        potential[0] = Some(Vec2::ZERO);
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            let here = potential[c].expect("set before push");
            for h in (4 * c..4 * c + 4).filter(|&h| !skip(h)) {
                let q = map.pair(h);
                let there = here + winding.dart(h);
                match potential[crossing_of(q)] {
                    None => {
                        potential[crossing_of(q)] = Some(there);
                        stack.push(crossing_of(q));
                    }
                    Some(v) if v != there => continue 'edges,
                    Some(_) => {}
                }
            }
        }
        if potential.iter().all(Option::is_some) {
            return Some(cut);
        }
    }
    None
}

/// A simple closed curve meeting the shadow in two points, bounding a disk,
/// with crossings on both sides. Returned as the two half-edges `(d1, d2)`
/// whose edges it crosses, both on the boundary of the first face it visits.
pub fn find_composite_curve(p: &TorusProjection) -> Option<(usize, usize)> {
    let (map, winding) = match p {
        TorusProjection::Circle(_) => return None,
        TorusProjection::Graph { map, winding } => (map, winding),
    };
    let faces = p.faces();
    let mut face_of = vec![0usize; map.half_edges()];
    let mut pos = vec![0usize; map.half_edges()];
    for (f, face) in faces.faces.iter().enumerate() {
        for (i, &h) in face.darts.iter().enumerate() {
            face_of[h] = f;
            pos[h] = i;
        }
    }
    // strand position of each edge, and the crossing of each pass
    let strand = map.strand();
    let leaving: Vec<usize> = strand.iter().step_by(2).copied().collect();
    let mut edge_index = vec![0usize; map.half_edges()];
    for (i, &h) in leaving.iter().enumerate() {
        edge_index[h] = i;
        edge_index[map.pair(h)] = i;
    }
    let pass_crossing: Vec<usize> = leaving.iter().map(|&h| crossing_of(h)).collect();
    let len = leaving.len();
    let arc_has_full_crossing = |from: usize, to: usize| {
        // passes from+1 ..= to (cyclic)
        let mut count = vec![0u8; map.crossings()];
        let mut k = (from + 1) % len;
        loop {
            count[pass_crossing[k]] += 1;
            if count[pass_crossing[k]] == 2 {
                return true;
            }
            if k == to {
                return false;
            }
            k = (k + 1) % len;
        }
    };
    let between = |f: usize, a: usize, b: usize| -> Vec2 {
        let darts = &faces.faces[f].darts;
        let l = darts.len();
        let mut s = Vec2::ZERO;
        let mut i = (pos[a] + 1) % l;
        while i != pos[b] {
            s += winding.dart(darts[i]);
            i = (i + 1) % l;
        }
        s
    };
    let routes = |f: usize| -> Vec<Vec2> {
        let face = &faces.faces[f];
        if face.topology == FaceTopology::AnnularPart {
            vec![Vec2::ZERO, -face.boundary_class]
        } else {
            vec![Vec2::ZERO]
        }
    };
    for d1 in 0..map.half_edges() {
        for d2 in 0..map.half_edges() {
            if d2 == d1 || d2 == map.pair(d1) || face_of[d1] != face_of[d2] {
                continue;
            }
            let (e1, e2) = (map.pair(d1), map.pair(d2));
            if face_of[e1] != face_of[e2] {
                continue;
            }
            let (f, g) = (face_of[d1], face_of[e1]);
            if f == g {
                // chords (d1,d2) and (e2,e1) in one face must not cross
                let l = faces.faces[f].darts.len();
                let inside = |x: usize| {
                    let (a, b, t) = (pos[d1], pos[d2], pos[x]);
                    (t + l - a) % l < (b + l - a) % l
                };
                if inside(e1) != inside(e2) {
                    continue;
                }
            }
            let base = between(f, d1, d2) + between(g, e2, e1);
            let null = routes(f)
                .iter()
                .any(|r1| routes(g).iter().any(|r2| (base + *r1 + *r2).is_zero()));
            if !null {
                continue;
            }
            let (i1, i2) = (edge_index[d1], edge_index[d2]);
            if arc_has_full_crossing(i1, i2) && arc_has_full_crossing(i2, i1) {
                return Some((d1, d2));
            }
        }
    }
    None
}

/// Per-face corner counts tagged disk/annular; the annular region's two
/// boundary cycles are merged into one entry.
pub fn fingerprint(p: &TorusProjection) -> Vec<(usize, FaceTopology)> {
    let fs = p.faces();
    let mut out: Vec<(usize, FaceTopology)> = Vec::new();
    let mut annular = None;
    for face in &fs.faces {
        match face.topology {
            FaceTopology::Disk => out.push((face.degree(), FaceTopology::Disk)),
            FaceTopology::AnnularPart => *annular.get_or_insert(0) += face.degree(),
        }
    }
    if let Some(a) = annular {
        out.push((a, FaceTopology::AnnularPart));
    }
    out.sort_by_key(|&(d, t)| (d, t == FaceTopology::AnnularPart));
    out
}

pub fn fingerprint_text(fp: &[(usize, FaceTopology)]) -> String {
    let parts: Vec<String> = fp
        .iter()
        .map(|&(d, t)| match t {
            FaceTopology::Disk => d.to_string(),
            FaceTopology::AnnularPart => format!("{d}A"),
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct ProjectionRecord {
    pub name: String,
    pub projection: TorusProjection,
    pub key: String,
    pub graph: AbstractGraph,
    pub graph_type: GraphType,
    pub fingerprint: Vec<(usize, FaceTopology)>,
    pub prime: bool,
}

/// Quotient by relabeling and reflection; records named `n_k` in key order
/// within each crossing number.
pub fn dedupe_projections(shadows: impl IntoIterator<Item = TorusProjection>) -> Vec<ProjectionRecord> {
    let mut by_key: BTreeMap<(usize, String), TorusProjection> = BTreeMap::new();
    for p in shadows {
        let key = projection_key(&p, true);
        by_key.entry((p.crossings(), key)).or_insert(p);
    }
    let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
    by_key
        .into_iter()
        .map(|((n, key), projection)| {
            let k = counters.entry(n).or_insert(0);
            *k += 1;
            let graph = AbstractGraph::of_projection(&projection);
            ProjectionRecord {
                name: format!("{n}_{k}"),
                graph_type: graph.graph_type(),
                fingerprint: fingerprint(&projection),
                prime: is_prime(&projection),
                graph,
                key,
                projection,
            }
        })
        .collect()
}

/// The prime projections with at most `max_crossings` crossings.
pub fn prime_projections(max_crossings: usize) -> Vec<ProjectionRecord> {
    let shadows = (0..=max_crossings).flat_map(enum_shadows).filter(is_prime);
    dedupe_projections(shadows)
}
