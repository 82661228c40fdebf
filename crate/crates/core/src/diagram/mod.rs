//! Knot projections and diagrams on the torus.
//!
//! A projection with `n` crossings is a rotation system on half-edges
//! `0..4n` (half-edge `4c + s` is slot `s` of crossing `c`, slots in
//! counterclockwise order) together with a winding vector per edge. The
//! windings record how each edge crosses the sides of a fundamental square, so
//! summing them along a closed walk gives its class in `H_1(T; Z)`.

mod key;
mod tkc;

pub use key::{canonical_key, projection_key, Quotient};
pub use tkc::{decode_diagram, decode_projection, encode_diagram, encode_projection, TkcError};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lattice::{lattice_index, Vec2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("pairing has {0} half-edges, not a multiple of 4")]
    BadLength(usize),
    #[error("pairing is not a fixed-point-free involution at half-edge {0}")]
    NotInvolution(usize),
    #[error("straight-ahead walk closes after {walked} of {total} half-edges (link shadow)")]
    MultiComponent { walked: usize, total: usize },
    #[error("winding assignment does not match the map: {0}")]
    WindingShape(String),
    #[error("invalid embedding: {0}")]
    Embedding(#[from] InvalidEmbedding),
    #[error("over-bit count {got} does not match crossing count {expected}")]
    OverBits { expected: usize, got: usize },
    #[error("walk is not closed at step {0}")]
    OpenWalk(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidEmbedding {
    #[error("face count {faces} with {crossings} crossings is neither toroidal nor spherical")]
    Genus { faces: usize, crossings: usize },
    #[error("face {face} has nonzero boundary class {class} in a cellular embedding")]
    CellularFaceClass { face: usize, class: Vec2 },
    #[error("cycle classes span a sublattice of index {0}, not all of Z^2")]
    NotSurjective(i64),
    #[error("nonzero face classes {0:?} are not a single pair +v, -v with v primitive")]
    AnnularClasses(Vec<Vec2>),
    #[error("circle class {0} is neither zero nor primitive")]
    CircleClass(Vec2),
}

#[inline]
pub fn crossing_of(h: usize) -> usize {
    h / 4
}

#[inline]
pub fn slot_of(h: usize) -> usize {
    h % 4
}

/// Next slot counterclockwise at the same crossing.
#[inline]
pub fn rot(h: usize) -> usize {
    (h & !3) | ((h + 1) & 3)
}

/// Previous slot (clockwise).
#[inline]
pub fn rot_inv(h: usize) -> usize {
    (h & !3) | ((h + 3) & 3)
}

/// The slot the strand continues through ("straight ahead").
#[inline]
pub fn opposite(h: usize) -> usize {
    (h & !3) | ((h + 2) & 3)
}

/// Follows the straight-ahead rule from half-edge 0.
///
/// Returns the visited half-edges in order (leaving, arriving, leaving, ...).
/// The walk has length `4n` exactly when the shadow has one component.
pub fn trace_strand(pair: &[usize]) -> Result<Vec<usize>, DiagramError> {
    let total = pair.len();
    if total == 0 {
        return Ok(Vec::new());
    }
    let mut walk = Vec::with_capacity(total);
    let mut h = 0usize;
    loop {
        walk.push(h);
        let arrive = pair[h];
        walk.push(arrive);
        h = opposite(arrive);
        if h == 0 || walk.len() >= total {
            break;
        }
    }
    if walk.len() != total || h != 0 {
        return Err(DiagramError::MultiComponent {
            walked: walk.len(),
            total,
        });
    }
    Ok(walk)
}

/// A rotation system of a 4-valent graph whose straight-ahead walk is a
/// single closed strand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    pair: Vec<usize>,
}

impl CombinatorialMap {
    pub fn new(pair: Vec<usize>) -> Result<Self, DiagramError> {
        Self::check_involution(&pair)?;
        trace_strand(&pair)?;
        Ok(Self { pair })
    }

    pub fn from_pairs(crossings: usize, pairs: &[(usize, usize)]) -> Result<Self, DiagramError> {
        let mut pair = vec![usize::MAX; 4 * crossings];
        for &(i, j) in pairs {
            if i >= pair.len() || j >= pair.len() {
                return Err(DiagramError::NotInvolution(i.max(j)));
            }
            pair[i] = j;
            pair[j] = i;
        }
        Self::new(pair)
    }

    fn check_involution(pair: &[usize]) -> Result<(), DiagramError> {
        if pair.len() % 4 != 0 {
            return Err(DiagramError::BadLength(pair.len()));
        }
        for (h, &q) in pair.iter().enumerate() {
            if q >= pair.len() || q == h || pair[q] != h {
                return Err(DiagramError::NotInvolution(h));
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> usize {
        self.pair.len() / 4
    }

    pub fn half_edges(&self) -> usize {
        self.pair.len()
    }

    #[inline]
    pub fn pair(&self, h: usize) -> usize {
        self.pair[h]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pair
    }

    /// Edges as `(smaller, larger)` half-edge pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.pair.len())
            .filter(|&h| h < self.pair[h])
            .map(|h| (h, self.pair[h]))
            .collect()
    }

    pub fn strand(&self) -> Vec<usize> {
        trace_strand(&self.pair).expect("validated on construction")
    }

    /// Face orbits of `h -> rot(pair(h))`, each listed from its least
    /// half-edge, ordered by that half-edge. Half-edge `h` in a face stands for
    /// the traversal of its edge from `h` to `pair(h)`.
    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.pair.len()];
        let mut faces = Vec::new();
        for start in 0..self.pair.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                orbit.push(h);
                h = rot(self.pair[h]);
            }
            faces.push(orbit);
        }
        faces
    }

    /// Index of the face containing each half-edge.
    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.pair.len()];
        for (f, orbit) in self.face_orbits().iter().enumerate() {
            for &h in orbit {
                idx[h] = f;
            }
        }
        idx
    }

    pub fn is_loop(&self, h: usize) -> bool {
        crossing_of(h) == crossing_of(self.pair[h])
    }
}

/// Per-edge vectors in `Z^2`; stored per half-edge so that `dart(h)` is the
/// class of traversing the edge from `h` to its partner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindingAssignment {
    darts: Vec<Vec2>,
}

impl WindingAssignment {
    /// From per-edge vectors keyed by the smaller half-edge of each edge.
    pub fn from_edges(map: &CombinatorialMap, edges: &BTreeMap<usize, Vec2>) -> Result<Self, DiagramError> {
        let mut darts = vec![Vec2::ZERO; map.half_edges()];
        let expected: Vec<usize> = map.edges().iter().map(|&(a, _)| a).collect();
        let given: Vec<usize> = edges.keys().copied().collect();
        if expected != given {
            return Err(DiagramError::WindingShape(format!(
                "expected windings for edges {expected:?}, got {given:?}"
            )));
        }
        for (&h, &w) in edges {
            darts[h] = w;
            darts[map.pair(h)] = -w;
        }
        Ok(Self { darts })
    }

    /// From per-half-edge values; `darts[pair(h)]` must equal `-darts[h]`.
    pub fn from_darts(map: &CombinatorialMap, darts: Vec<Vec2>) -> Result<Self, DiagramError> {
        if darts.len() != map.half_edges() {
            return Err(DiagramError::WindingShape(format!(
                "{} dart windings for {} half-edges",
                darts.len(),
                map.half_edges()
            )));
        }
        for h in 0..darts.len() {
            if darts[map.pair(h)] != -darts[h] {
                return Err(DiagramError::WindingShape(format!("half-edge {h} is not antisymmetric")));
            }
        }
        Ok(Self { darts })
    }

    pub fn zero(map: &CombinatorialMap) -> Self {
        Self {
            darts: vec![Vec2::ZERO; map.half_edges()],
        }
    }

    #[inline]
    pub fn dart(&self, h: usize) -> Vec2 {
        self.darts[h]
    }

    pub fn darts(&self) -> &[Vec2] {
        &self.darts
    }

    /// Per-edge view keyed by the smaller half-edge.
    pub fn edges(&self, map: &CombinatorialMap) -> BTreeMap<usize, Vec2> {
        map.edges().into_iter().map(|(a, _)| (a, self.darts[a])).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceTopology {
    Disk,
    /// One of the two boundary cycles of the annular complementary region.
    AnnularPart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<usize>,
    pub boundary_class: Vec2,
    pub topology: FaceTopology,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceStructure {
    pub faces: Vec<Face>,
}

impl FaceStructure {
    pub fn degrees(&self) -> Vec<usize> {
        self.faces.iter().map(Face::degree).collect()
    }
}

/// How the shadow sits in the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    /// Every complementary region is a disk.
    Cellular,
    /// The shadow lies in an essential annulus; the two listed faces (indices
    /// into the face orbits) are the boundary cycles of the annular region.
    Annular { faces: [usize; 2] },
    /// All cycle classes vanish: the shadow lies in a disk. Such diagrams arise
    /// in the middle of Reidemeister searches but are never prime.
    Local,
}

/// Face trace with per-face classes; topology is filled in from the embedding.
pub fn trace_faces(map: &CombinatorialMap, winding: &WindingAssignment) -> FaceStructure {
    let faces = map
        .face_orbits()
        .into_iter()
        .map(|darts| {
            let boundary_class = darts.iter().map(|&h| winding.dart(h)).sum();
            Face {
                darts,
                boundary_class,
                topology: FaceTopology::Disk,
            }
        })
        .collect();
    FaceStructure { faces }
}

pub fn classify_embedding(map: &CombinatorialMap, winding: &WindingAssignment) -> Result<Embedding, InvalidEmbedding> {
    let n = map.crossings();
    let fs = trace_faces(map, winding);
    let f = fs.faces.len();
    if f == n {
        if let Some((i, face)) = fs.faces.iter().enumerate().find(|(_, fc)| !fc.boundary_class.is_zero()) {
            return Err(InvalidEmbedding::CellularFaceClass {
                face: i,
                class: face.boundary_class,
            });
        }
        let index = lattice_index(&cycle_basis_classes(map, winding));
        if index != 1 {
            return Err(InvalidEmbedding::NotSurjective(index));
        }
        Ok(Embedding::Cellular)
    } else if f == n + 2 {
        let nonzero: Vec<(usize, Vec2)> = fs
            .faces
            .iter()
            .enumerate()
            .filter(|(_, fc)| !fc.boundary_class.is_zero())
            .map(|(i, fc)| (i, fc.boundary_class))
            .collect();
        match nonzero.as_slice() {
            [] => Ok(Embedding::Local),
            [(i, v), (j, w)] if *v == -*w && v.is_primitive() => Ok(Embedding::Annular { faces: [*i, *j] }),
            _ => Err(InvalidEmbedding::AnnularClasses(nonzero.iter().map(|x| x.1).collect())),
        }
    } else {
        Err(InvalidEmbedding::Genus { faces: f, crossings: n })
    }
}

/// Classes of the fundamental cycles of a BFS spanning tree.
pub fn cycle_basis_classes(map: &CombinatorialMap, winding: &WindingAssignment) -> Vec<Vec2> {
    let n = map.crossings();
    if n == 0 {
        return Vec::new();
    }
    let mut potential: Vec<Option<Vec2>> = vec![None; n];
    let mut tree = vec![false; map.half_edges()];
    potential[0] = Some(Vec2::ZERO);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let pc = potential[c].unwrap();
        for h in 4 * c..4 * c + 4 {
            let q = map.pair(h);
            let d = crossing_of(q);
            if potential[d].is_none() {
                potential[d] = Some(pc + winding.dart(h));
                tree[h] = true;
                tree[q] = true;
                queue.push_back(d);
            }
        }
    }
    map.edges()
        .into_iter()
        .filter(|&(h, _)| !tree[h])
        .map(|(h, q)| potential[crossing_of(h)].unwrap() + winding.dart(h) - potential[crossing_of(q)].unwrap())
        .collect()
}

/// A knot shadow on the torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TorusProjection {
    /// The crossingless shadow: one embedded circle of the given class.
    Circle(Vec2),
    Graph {
        map: CombinatorialMap,
        winding: WindingAssignment,
    },
}

impl TorusProjection {
    pub fn circle(class: Vec2) -> Result<Self, DiagramError> {
        if !class.is_zero() && !class.is_primitive() {
            return Err(InvalidEmbedding::CircleClass(class).into());
        }
        Ok(Self::Circle(class))
    }

    pub fn new(map: CombinatorialMap, winding: WindingAssignment) -> Result<Self, DiagramError> {
        if winding.darts.len() != map.half_edges() {
            return Err(DiagramError::WindingShape("length mismatch".into()));
        }
        if map.crossings() == 0 {
            return Err(DiagramError::WindingShape("use a circle for zero crossings".into()));
        }
        classify_embedding(&map, &winding)?;
        Ok(Self::Graph { map, winding })
    }

    pub fn crossings(&self) -> usize {
        match self {
            Self::Circle(_) => 0,
            Self::Graph { map, .. } => map.crossings(),
        }
    }

    pub fn map(&self) -> Option<&CombinatorialMap> {
        match self {
            Self::Circle(_) => None,
            Self::Graph { map, .. } => Some(map),
        }
    }

    pub fn winding(&self) -> Option<&WindingAssignment> {
        match self {
            Self::Circle(_) => None,
            Self::Graph { winding, .. } => Some(winding),
        }
    }

    pub fn embedding(&self) -> Embedding {
        match self {
            Self::Circle(c) if c.is_zero() => Embedding::Local,
            Self::Circle(_) => Embedding::Annular { faces: [0, 1] },
            Self::Graph { map, winding } => classify_embedding(map, winding).expect("validated on construction"),
        }
    }

    /// Face structure with disk/annular annotation. A circle has two faces
    /// (both sides), annular parts when the circle is essential.
    pub fn faces(&self) -> FaceStructure {
        match self {
            Self::Circle(c) => {
                let topology = if c.is_zero() {
                    FaceTopology::Disk
                } else {
                    FaceTopology::AnnularPart
                };
                let face = |cls| Face {
                    darts: Vec::new(),
                    boundary_class: cls,
                    topology,
                };
                FaceStructure {
                    faces: vec![face(*c), face(-*c)],
                }
            }
            Self::Graph { map, winding } => {
                let mut fs = trace_faces(map, winding);
                if let Embedding::Annular { faces } = self.embedding() {
                    for f in faces {
                        fs.faces[f].topology = FaceTopology::AnnularPart;
                    }
                }
                fs
            }
        }
    }

    /// Class of a closed walk given as the sequence of half-edges it leaves
    /// from: each step traverses `h -> pair(h)` and the next half-edge must sit
    /// at the crossing just reached.
    pub fn cycle_class(&self, walk: &[usize]) -> Result<Vec2, DiagramError> {
        let (map, winding) = match self {
            Self::Circle(_) if walk.is_empty() => return Ok(Vec2::ZERO),
            Self::Circle(_) => return Err(DiagramError::OpenWalk(0)),
            Self::Graph { map, winding } => (map, winding),
        };
        let mut total = Vec2::ZERO;
        for (i, &h) in walk.iter().enumerate() {
            if h >= map.half_edges() {
                return Err(DiagramError::OpenWalk(i));
            }
            let next = walk[(i + 1) % walk.len()];
            if crossing_of(map.pair(h)) != crossing_of(next) {
                return Err(DiagramError::OpenWalk(i));
            }
            total += winding.dart(h);
        }
        Ok(total)
    }

    /// Class of the whole strand, oriented by the walk from half-edge 0.
    pub fn strand_class(&self) -> Vec2 {
        match self {
            Self::Circle(c) => *c,
            Self::Graph { map, winding } => map.strand().iter().step_by(2).map(|&h| winding.dart(h)).sum(),
        }
    }

    /// Orientation-reversing relabeling: every crossing's slot order is
    /// reversed and the first winding coordinate negated.
    pub fn reflect(&self) -> Self {
        match self {
            Self::Circle(c) => Self::Circle(Vec2::new(-c.u, c.v)),
            Self::Graph { map, winding } => {
                let image = |h: usize| 4 * crossing_of(h) + (4 - slot_of(h)) % 4;
                let mut pair = vec![0; map.half_edges()];
                let mut darts = vec![Vec2::ZERO; map.half_edges()];
                for h in 0..map.half_edges() {
                    pair[image(h)] = image(map.pair(h));
                    let w = winding.dart(h);
                    darts[image(h)] = Vec2::new(-w.u, w.v);
                }
                Self::Graph {
                    map: CombinatorialMap { pair },
                    winding: WindingAssignment { darts },
                }
            }
        }
    }

    /// Adds the coboundary of the crossing potentials.
    pub fn gauge_shift(&self, potential: &[Vec2]) -> Self {
        match self {
            Self::Circle(_) => self.clone(),
            Self::Graph { map, winding } => {
                let darts = (0..map.half_edges())
                    .map(|h| winding.dart(h) + potential[crossing_of(map.pair(h))] - potential[crossing_of(h)])
                    .collect();
                Self::Graph {
                    map: map.clone(),
                    winding: WindingAssignment { darts },
                }
            }
        }
    }

    /// Applies an integer matrix to every winding (unimodular for validity).
    pub fn rebase(&self, m: [[i64; 2]; 2]) -> Self {
        match self {
            Self::Circle(c) => Self::Circle(c.transform(m)),
            Self::Graph { map, winding } => Self::Graph {
                map: map.clone(),
                winding: WindingAssignment {
                    darts: winding.darts.iter().map(|w| w.transform(m)).collect(),
                },
            },
        }
    }
}

/// A projection plus crossing information. Bit `c` of `over` is `false` when
/// the strand through slots {0,2} of crossing `c` passes over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusDiagram {
    projection: TorusProjection,
    over: Vec<bool>,
}

impl TorusDiagram {
    pub fn new(projection: TorusProjection, over: Vec<bool>) -> Result<Self, DiagramError> {
        if over.len() != projection.crossings() {
            return Err(DiagramError::OverBits {
                expected: projection.crossings(),
                got: over.len(),
            });
        }
        Ok(Self { projection, over })
    }

    pub fn circle(class: Vec2) -> Result<Self, DiagramError> {
        Self::new(TorusProjection::circle(class)?, Vec::new())
    }

    pub fn projection(&self) -> &TorusProjection {
        &self.projection
    }

    pub fn over(&self) -> &[bool] {
        &self.over
    }

    pub fn crossings(&self) -> usize {
        self.projection.crossings()
    }

    /// Whether the strand through the slot of half-edge `h` passes over.
    #[inline]
    pub fn is_over(&self, h: usize) -> bool {
        let through_odd = slot_of(h) % 2 == 1;
        through_odd == self.over[crossing_of(h)]
    }

    pub fn knot_class(&self) -> Vec2 {
        self.projection.strand_class()
    }

    /// Per-crossing signs along the straight-ahead orientation. A crossing
    /// is positive when the outgoing under-strand lies one slot
    /// counterclockwise from the outgoing over-strand.
    pub fn crossing_signs(&self) -> Vec<i32> {
        let Some(map) = self.projection.map() else {
            return Vec::new();
        };
        let mut out_slot = vec![[0usize; 2]; map.crossings()];
        for &h in map.strand().iter().step_by(2) {
            // `h` leaves its crossing along the pass through slot parity of h
            out_slot[crossing_of(h)][slot_of(h) % 2] = slot_of(h);
        }
        (0..map.crossings())
            .map(|c| {
                let (o, u) = if self.over[c] {
                    (out_slot[c][1], out_slot[c][0])
                } else {
                    (out_slot[c][0], out_slot[c][1])
                };
                if u == (o + 1) % 4 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    pub fn writhe(&self) -> i32 {
        self.crossing_signs().iter().sum()
    }

    /// Over- and under-passes strictly alternate along the strand.
    pub fn is_alternating(&self) -> bool {
        let Some(map) = self.projection.map() else {
            return true;
        };
        let passes: Vec<bool> = map.strand().iter().skip(1).step_by(2).map(|&h| self.is_over(h)).collect();
        (0..passes.len()).all(|i| passes[i] != passes[(i + 1) % passes.len()])
    }

    /// Simultaneous crossing change at every crossing.
    pub fn mirror(&self) -> Self {
        Self {
            projection: self.projection.clone(),
            over: self.over.iter().map(|b| !b).collect(),
        }
    }

    /// Image under an orientation-reversing homeomorphism of the torus.
    /// Slot reversal fixes the parity classes, so the over bits carry over.
    pub fn reflect(&self) -> Self {
        Self {
            projection: self.projection.reflect(),
            over: self.over.clone(),
        }
    }

    pub fn gauge_shift(&self, potential: &[Vec2]) -> Self {
        Self {
            projection: self.projection.gauge_shift(potential),
            over: self.over.clone(),
        }
    }

    pub fn rebase(&self, m: [[i64; 2]; 2]) -> Self {
        Self {
            projection: self.projection.rebase(m),
            over: self.over.clone(),
        }
    }

    /// Renames crossings by `perm` (old -> new) and rotates crossing `c`'s
    /// slots so that old slot `s` becomes `(s - shift[c]) mod 4`.
    pub fn relabel(&self, perm: &[usize], shift: &[usize]) -> Self {
        let TorusProjection::Graph { map, winding } = &self.projection else {
            return self.clone();
        };
        let image = |h: usize| {
            let c = crossing_of(h);
            4 * perm[c] + (slot_of(h) + 4 - shift[c] % 4) % 4
        };
        let mut pair = vec![0; map.half_edges()];
        let mut darts = vec![Vec2::ZERO; map.half_edges()];
        let mut over = vec![false; map.crossings()];
        for h in 0..map.half_edges() {
            pair[image(h)] = image(map.pair(h));
            darts[image(h)] = winding.dart(h);
        }
        for c in 0..map.crossings() {
            over[perm[c]] = self.over[c] ^ (shift[c] % 2 == 1);
        }
        Self {
            projection: TorusProjection::Graph {
                map: CombinatorialMap { pair },
                winding: WindingAssignment { darts },
            },
            over,
        }
    }

    /// Builds and fully validates a diagram from raw arrays.
    pub fn from_raw(pair: Vec<usize>, darts: Vec<Vec2>, over: Vec<bool>) -> Result<Self, DiagramError> {
        let map = CombinatorialMap::new(pair)?;
        let winding = WindingAssignment::from_darts(&map, darts)?;
        Self::new(TorusProjection::new(map, winding)?, over)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kink_map() -> CombinatorialMap {
        CombinatorialMap::from_pairs(1, &[(0, 1), (2, 3)]).unwrap()
    }

    pub(crate) fn one_one(over: bool) -> TorusDiagram {
        let map = kink_map();
        let w = BTreeMap::from([(0, Vec2::new(0, 1)), (2, Vec2::new(0, -1))]);
        let winding = WindingAssignment::from_edges(&map, &w).unwrap();
        TorusDiagram::new(TorusProjection::new(map, winding).unwrap(), vec![over]).unwrap()
    }

    #[test]
    fn strand_of_one_crossing_maps() {
        assert_eq!(kink_map().strand().len(), 4);
        assert!(matches!(
            CombinatorialMap::from_pairs(1, &[(0, 2), (1, 3)]),
            Err(DiagramError::MultiComponent { .. })
        ));
        // two crossings joined as two separate 1-crossing figure-eights is not
        // even connected; the walk closes after one crossing
        assert!(matches!(
            CombinatorialMap::from_pairs(2, &[(0, 1), (2, 3), (4, 5), (6, 7)]),
            Err(DiagramError::MultiComponent { walked: 4, total: 8 })
        ));
        assert!(matches!(
            CombinatorialMap::new(vec![1, 0, 2, 3]),
            Err(DiagramError::NotInvolution(2))
        ));
    }

    #[test]
    fn faces_of_one_crossing_maps() {
        let mut d: Vec<usize> = kink_map().face_orbits().iter().map(Vec::len).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
        let other = CombinatorialMap::from_pairs(1, &[(0, 3), (1, 2)]).unwrap();
        let orbits = other.face_orbits();
        let mut d: Vec<usize> = orbits.iter().map(Vec::len).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
        assert_ne!(orbits, kink_map().face_orbits());
    }

    #[test]
    fn classify_one_crossing() {
        let d = one_one(false);
        assert!(matches!(d.projection().embedding(), Embedding::Annular { .. }));
        let map = kink_map();
        let zero = WindingAssignment::zero(&map);
        assert_eq!(classify_embedding(&map, &zero), Ok(Embedding::Local));
        let same = WindingAssignment::from_edges(&map, &BTreeMap::from([(0, Vec2::new(0, 1)), (2, Vec2::new(0, 1))])).unwrap();
        assert!(classify_embedding(&map, &same).is_err());
    }

    #[test]
    fn two_crossing_cellular_shadow() {
        // four parallel edges between two crossings, faces of degree 2 and 6
        let map = CombinatorialMap::from_pairs(2, &[(0, 4), (1, 6), (3, 5), (2, 7)]).unwrap();
        assert_eq!(map.face_orbits().len(), 2);
        let w = crate::enumerate::winding_solve(&map, crate::enumerate::WindingMode::Cellular).unwrap();
        assert_eq!(classify_embedding(&map, &w), Ok(Embedding::Cellular));
    }

    #[test]
    fn cycle_classes() {
        let d = one_one(false);
        let p = d.projection();
        assert_eq!(p.cycle_class(&[]).unwrap(), Vec2::ZERO);
        assert_eq!(p.strand_class().v.abs(), 2);
        assert_eq!(p.strand_class().u, 0);
        for face in &p.faces().faces {
            if face.topology == FaceTopology::Disk {
                assert!(p.cycle_class(&face.darts).unwrap().is_zero());
            }
        }
        assert!(p.cycle_class(&[0, 9]).is_err());
    }

    #[test]
    fn knot_class_of_circles() {
        assert_eq!(TorusDiagram::circle(Vec2::new(0, 1)).unwrap().knot_class(), Vec2::new(0, 1));
        assert_eq!(TorusDiagram::circle(Vec2::ZERO).unwrap().knot_class(), Vec2::ZERO);
        assert!(TorusDiagram::circle(Vec2::new(2, 0)).is_err());
    }

    #[test]
    fn writhe_and_alternation() {
        for over in [false, true] {
            let d = one_one(over);
            assert_eq!(d.writhe().abs(), 1);
            assert_eq!(d.mirror().writhe(), -d.writhe());
            assert_eq!(d.reflect().writhe(), -d.writhe());
            assert!(d.is_alternating());
        }
    }

    #[test]
    fn mirror_and_reflect_are_involutions() {
        let d = one_one(true);
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.reflect().reflect(), d);
    }
}
