//! The two-variable bracket `X(K)`: a state sum over all smoothings where
//! contractible circles weigh `-a^2 - a^-2` and essential circles weigh `x`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{crossing_of, slot_of, TorusDiagram, TorusProjection};
use crate::lattice::Vec2;
use crate::poly::XPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Marker {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub markers: Vec<Marker>,
}

impl State {
    /// State number `bits` over `n` crossings; bit `c` set means marker B.
    pub fn from_index(n: usize, bits: u64) -> Self {
        Self {
            markers: (0..n)
                .map(|c| if bits >> c & 1 == 1 { Marker::B } else { Marker::A })
                .collect(),
        }
    }

    pub fn alpha(&self) -> usize {
        self.markers.iter().filter(|&&m| m == Marker::A).count()
    }

    pub fn beta(&self) -> usize {
        self.markers.len() - self.alpha()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Each circle as the half-edges it leaves from, with its class.
    pub circles: Vec<(Vec<usize>, Vec2)>,
    pub gamma: usize,
    pub delta: usize,
}

/// Slot joined to slot `s` by the smoothing. With the over-strand on slots
/// {0,2}, the A smoothing merges the corners swept counterclockwise from it,
/// so its arcs join slots 1-2 and 3-0.
fn smoothing_partner(s: usize, over_odd: bool, marker: Marker) -> usize {
    let a_joins_12 = !over_odd;
    let joins_12 = (marker == Marker::A) == a_joins_12;
    if joins_12 {
        [3, 2, 1, 0][s]
    } else {
        [1, 0, 3, 2][s]
    }
}

pub fn resolve_state(d: &TorusDiagram, s: &State) -> Resolution {
    assert_eq!(s.markers.len(), d.crossings(), "state length must match crossing count");
    let (map, winding) = match d.projection() {
        TorusProjection::Circle(c) => {
            let trivial = c.is_zero();
            return Resolution {
                circles: vec![(Vec::new(), *c)],
                gamma: usize::from(trivial),
                delta: usize::from(!trivial),
            };
        }
        TorusProjection::Graph { map, winding } => (map, winding),
    };
    let partner = |h: usize| {
        let c = crossing_of(h);
        4 * c + smoothing_partner(slot_of(h), d.over()[c], s.markers[c])
    };
    let mut seen = vec![false; map.half_edges()];
    let mut circles = Vec::new();
    for start in 0..map.half_edges() {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut class = Vec2::ZERO;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            let arrive = map.pair(h);
            seen[arrive] = true;
            darts.push(h);
            class += winding.dart(h);
            h = partner(arrive);
        }
        circles.push((darts, class));
    }
    let gamma = circles.iter().filter(|(_, c)| c.is_zero()).count();
    Resolution {
        delta: circles.len() - gamma,
        gamma,
        circles,
    }
}

/// The unnormalized bracket: the sum over states without the writhe factor.
pub fn bracket(d: &TorusDiagram) -> XPolynomial {
    let n = d.crossings();
    let mut total = XPolynomial::zero();
    for bits in 0..1u64 << n {
        let s = State::from_index(n, bits);
        let r = resolve_state(d, &s);
        let weight = XPolynomial::monomial(1, r.delta as u32, s.alpha() as i32 - s.beta() as i32);
        total = total + &weight * &XPolynomial::circle_power(r.gamma as u32);
    }
    total
}

pub fn kauffman_x(d: &TorusDiagram) -> XPolynomial {
    &XPolynomial::neg_a_pow(-3 * d.writhe()) * &bracket(d)
}

/// The smaller of `X(d)` and its mirror image under the canonical order.
pub fn canonical_invariant(d: &TorusDiagram) -> XPolynomial {
    kauffman_x(d).mirror_canonical()
}

/// `X` split by the intersection number between the essential circles of
/// each state and the knot class. In a state all essential circles are
/// parallel, so the grade is well defined; states without essential circles
/// sit in grade `None`. Summing the grades gives back `X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedX(pub BTreeMap<Option<u64>, XPolynomial>);

impl GradedX {
    pub fn mirror_a(&self) -> Self {
        Self(self.0.iter().map(|(&k, p)| (k, p.mirror_a())).collect())
    }

    pub fn total(&self) -> XPolynomial {
        self.0.values().fold(XPolynomial::zero(), |acc, p| &acc + p)
    }

    /// True when no mirror image of `self` equals `other`: the diagrams are
    /// then different knots.
    pub fn separates(&self, other: &Self) -> bool {
        self != other && &self.mirror_a() != other
    }
}

pub fn graded_x(d: &TorusDiagram) -> GradedX {
    let n = d.crossings();
    let k = d.knot_class();
    let norm = XPolynomial::neg_a_pow(-3 * d.writhe());
    let mut grades: BTreeMap<Option<u64>, XPolynomial> = BTreeMap::new();
    for bits in 0..1u64 << n {
        let s = State::from_index(n, bits);
        let r = resolve_state(d, &s);
        let grade = r
            .circles
            .iter()
            .find(|(_, c)| !c.is_zero())
            .map(|(_, c)| c.cross(k).unsigned_abs());
        let weight = XPolynomial::monomial(1, r.delta as u32, s.alpha() as i32 - s.beta() as i32);
        let term = &(&norm * &weight) * &XPolynomial::circle_power(r.gamma as u32);
        let slot = grades.entry(grade).or_insert_with(XPolynomial::zero);
        *slot = &*slot + &term;
    }
    grades.retain(|_, p| !p.is_zero());
    GradedX(grades)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::decode_diagram;

    fn one_one(over: bool) -> TorusDiagram {
        let bit = if over { '1' } else { '0' };
        decode_diagram(&format!("tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,1),2:(0,-1);over={bit}")).unwrap()
    }

    #[test]
    fn circles() {
        let essential = TorusDiagram::circle(Vec2::new(0, 1)).unwrap();
        assert_eq!(kauffman_x(&essential), XPolynomial::x());
        let unknot = TorusDiagram::circle(Vec2::ZERO).unwrap();
        assert_eq!(kauffman_x(&unknot).encode(), "-a^2-a^-2");
    }

    #[test]
    fn one_one_states() {
        let d = one_one(false);
        let mut counts: Vec<(usize, usize)> = (0..2)
            .map(|b| {
                let r = resolve_state(&d, &State::from_index(1, b));
                (r.gamma, r.delta)
            })
            .collect();
        counts.sort();
        assert_eq!(counts, vec![(0, 2), (1, 0)]);
    }

    #[test]
    fn one_one_values() {
        let x0 = kauffman_x(&one_one(false));
        let x1 = kauffman_x(&one_one(true));
        assert_eq!(x0.encode(), "-x^2*a^2+a^6+a^2");
        assert_eq!(x1, x0.mirror_a());
        assert_eq!(canonical_invariant(&one_one(false)), canonical_invariant(&one_one(true)));
    }

    #[test]
    fn graded_sums_to_x() {
        for over in [false, true] {
            let d = one_one(over);
            assert_eq!(graded_x(&d).total(), kauffman_x(&d));
            assert_eq!(graded_x(&d.mirror()), graded_x(&d).mirror_a());
        }
    }

    #[test]
    fn kink_removal_invariance() {
        // a contractible kink on an essential circle
        let kink = decode_diagram("tkc:v1;n=1;pair=0-1,2-3;wind=0:(0,0),2:(0,1);over=0").unwrap();
        assert_eq!(kauffman_x(&kink), XPolynomial::x());
        assert_eq!(kauffman_x(&kink.mirror()), XPolynomial::x());
    }
}
