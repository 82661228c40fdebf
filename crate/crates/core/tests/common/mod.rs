#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torusknot::diagram::{canonical_key, decode_diagram, encode_diagram, Quotient};
use torusknot::enumerate::enum_shadows;
use torusknot::invariant::kauffman_x;
use torusknot::moves::{apply_move, find_moves, find_r1up, find_r2up};
use torusknot::poly::XPolynomial;
use torusknot::{TorusDiagram, Vec2};

pub const RANDOM_DIAGRAMS: usize = 1000;
pub const SEED: u64 = 0x7047_5553;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A product of random elementary matrices; determinant +1.
pub fn random_sl2(rng: &mut impl Rng) -> [[i64; 2]; 2] {
    let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, -1], [1, 0]], [[1, -1], [0, 1]]];
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..5) {
        let g = gens[rng.gen_range(0..gens.len())];
        m = [
            [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
            [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
        ];
    }
    m
}

pub fn random_potential(rng: &mut impl Rng, n: usize) -> Vec<Vec2> {
    (0..n).map(|_| Vec2::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect()
}

pub fn random_relabel(rng: &mut impl Rng, d: &TorusDiagram) -> TorusDiagram {
    let n = d.crossings();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let shift: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    d.relabel(&perm, &shift)
}

/// Random over bits on random shadows with 1..=4 crossings, then a random
/// relabeling, gauge shift and change of basis.
pub fn random_diagrams(count: usize, seed: u64) -> Vec<TorusDiagram> {
    let shadows: Vec<_> = (1..=4).flat_map(enum_shadows).collect();
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let p = shadows.choose(&mut rng).expect("shadows exist").clone();
            let over = (0..p.crossings()).map(|_| rng.gen_bool(0.5)).collect();
            let d = TorusDiagram::new(p, over).expect("valid over bits");
            let d = random_relabel(&mut rng, &d);
            let d = d.gauge_shift(&random_potential(&mut rng, d.crossings()));
            d.rebase(random_sl2(&mut rng))
        })
        .collect()
}

/// Every property of the invariant and codecs on one diagram; returns the
/// violations found, empty when all hold.
pub fn property_violations(d: &TorusDiagram, rng: &mut impl Rng) -> Vec<String> {
    let mut out = Vec::new();
    let code = encode_diagram(d);
    let x = kauffman_x(d);
    let mut sites = find_moves(d);
    sites.extend(find_r1up(d));
    if d.crossings() <= 4 {
        sites.extend(find_r2up(d));
    }
    for site in sites {
        match apply_move(d, site) {
            Ok(next) if kauffman_x(&next) == x => {}
            Ok(_) => out.push(format!("X changed by {site:?} on {code}")),
            Err(e) => out.push(format!("{site:?} failed on {code}: {e}")),
        }
    }
    if kauffman_x(&d.mirror()) != x.mirror_a() {
        out.push(format!("mirror rule fails on {code}"));
    }
    let shifted = d.gauge_shift(&random_potential(rng, d.crossings()));
    if kauffman_x(&shifted) != x {
        out.push(format!("gauge shift changes X on {code}"));
    }
    let m = random_sl2(rng);
    if kauffman_x(&d.rebase(m)) != x {
        out.push(format!("rebase {m:?} changes X on {code}"));
    }
    match decode_diagram(&code) {
        Ok(back) if back == *d => {}
        _ => out.push(format!("TKC round trip fails on {code}")),
    }
    match x.encode().parse::<XPolynomial>() {
        Ok(back) if back == x => {}
        _ => out.push(format!("polynomial round trip fails for {x}")),
    }
    let key = canonical_key(d, Quotient::RELABEL);
    for _ in 0..4 {
        if canonical_key(&random_relabel(rng, d), Quotient::RELABEL) != key {
            out.push(format!("relabeling changes the key of {code}"));
            break;
        }
    }
    out
}
