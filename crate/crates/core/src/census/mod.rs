//! The full pipeline: prime projections, their diagrams, minimality and
//! duplicate elimination by moves, and the verified knot table.

mod emit;
mod render;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{canonical_key, encode_diagram, Quotient, TorusDiagram};
use crate::enumerate::{fingerprint_text, prime_projections, ProjectionRecord};
use crate::invariant::{canonical_invariant, graded_x, kauffman_x};
use crate::lattice::Vec2;
use crate::moves::{equivalence_search, explore, find_moves, MoveKind, SearchOutcome};
use crate::poly::{ParseError, XPolynomial};

pub use emit::{emit, Conventions, EmitFormat, JsonRecord, JsonTable, LoadError};
pub use render::render_svg;

/// Expected polynomials shipped with the crate, one `label: poly` per line.
pub const EXPECTED_POLYS: &str = include_str!("../../data/expected_polys.txt");

/// Expansion budget for one same-invariant equivalence search.
pub const SEARCH_STEPS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub name: String,
    pub diagram: TorusDiagram,
    /// Canonical (mirror-minimal) invariant.
    pub invariant: XPolynomial,
    /// `X` of the stored representative itself.
    pub polynomial: XPolynomial,
    pub writhe: i32,
    pub knot_class: Vec2,
    pub alternating: bool,
    pub projection: String,
    pub projection_key: String,
    pub fingerprint: String,
}

impl CensusRecord {
    pub fn class_mod2(&self) -> [u8; 2] {
        self.knot_class.mod2()
    }

    pub fn crossings(&self) -> usize {
        self.diagram.crossings()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub records: Vec<CensusRecord>,
    /// Prime projections the diagrams were drawn from, by name.
    pub projections: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("max_crossings must be at most 4, got {0}")]
    TooLarge(usize),
    #[error("diagrams {0} and {1} share an invariant but were neither merged nor separated")]
    Unresolved(String, String),
    #[error("equivalence search ran out of budget between {0} and {1}")]
    Budget(String, String),
}

/// How the pipeline disposed of candidate diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusLog {
    pub candidates: usize,
    pub reducible: usize,
    pub non_minimal: usize,
    /// Merges found by same-invariant equivalence search, as TKC pairs.
    pub invariant_merges: Vec<(String, String)>,
    /// Same-invariant pairs told apart by the intersection-graded invariant.
    pub separated: Vec<(String, String)>,
    /// Same-invariant pairs the capped search could not connect.
    pub unresolved: Vec<(String, String)>,
}

struct Candidate {
    projection: usize,
    diagram: TorusDiagram,
}

/// The verified table; any unresolved same-invariant pair is an error.
pub fn build_census(max_crossings: usize) -> Result<CensusTable, CensusError> {
    let (table, log) = build_census_logged(max_crossings)?;
    match log.unresolved.first() {
        Some((a, b)) => Err(CensusError::Unresolved(a.clone(), b.clone())),
        None => Ok(table),
    }
}

/// Like [`build_census`], but keeps unresolved pairs as separate records
/// and reports them in the log.
pub fn build_census_logged(max_crossings: usize) -> Result<(CensusTable, CensusLog), CensusError> {
    if max_crossings > 4 {
        return Err(CensusError::TooLarge(max_crossings));
    }
    let projections = prime_projections(max_crossings);
    let mut log = CensusLog::default();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut seen_keys: HashMap<String, usize> = HashMap::new();
    for (pi, rec) in projections.iter().enumerate() {
        for d in diagrams_of(rec) {
            log.candidates += 1;
            if find_moves(&d).iter().any(|s| matches!(s.kind(), MoveKind::R1Down | MoveKind::R2Down)) {
                log.reducible += 1;
                continue;
            }
            let key = canonical_key(&d, Quotient::KNOT);
            if seen_keys.contains_key(&key) {
                continue;
            }
            seen_keys.insert(key, candidates.len());
            candidates.push(Candidate {
                projection: pi,
                diagram: d,
            });
        }
    }

    // classes of candidates connected by crossing-preserving moves
    let mut uf = UnionFind::new(candidates.len());
    let mut minimal = vec![true; candidates.len()];
    for i in 0..candidates.len() {
        let d = &candidates[i].diagram;
        let n = d.crossings();
        let mut reached = Vec::new();
        let mut smaller = false;
        let _ = explore(d, n, usize::MAX, |x, _| {
            if x.crossings() < n {
                smaller = true;
                return true;
            }
            if let Some(&j) = seen_keys.get(&canonical_key(x, Quotient::KNOT)) {
                reached.push(j);
            }
            false
        });
        if smaller {
            minimal[i] = false;
        }
        for j in reached {
            uf.union(i, j);
        }
    }
    for i in 0..candidates.len() {
        if !minimal[i] {
            let r = uf.find(i);
            for (j, m) in minimal.iter_mut().enumerate() {
                if uf.find(j) == r {
                    *m = false;
                }
            }
        }
    }
    log.non_minimal = minimal.iter().filter(|&&m| !m).count();

    // one representative per class; prefer alternating, then least key
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in (0..candidates.len()).filter(|&i| minimal[i]) {
        classes.entry(uf.find(i)).or_default().push(i);
    }
    let pick = |members: &[usize]| -> usize {
        *members
            .iter()
            .min_by_key(|&&i| {
                let d = &candidates[i].diagram;
                (!d.is_alternating(), canonical_key(d, Quotient::KNOT))
            })
            .expect("nonempty class")
    };
    let mut reps: Vec<usize> = classes.values().map(|m| pick(m)).collect();

    // merge classes that share an invariant, or fail loudly
    let mut by_invariant: BTreeMap<XPolynomial, Vec<usize>> = BTreeMap::new();
    for &r in &reps {
        by_invariant
            .entry(canonical_invariant(&candidates[r].diagram))
            .or_default()
            .push(r);
    }
    let mut dropped = std::collections::HashSet::new();
    for group in by_invariant.values() {
        if group.len() < 2 {
            continue;
        }
        let mut group = group.clone();
        group.sort_by_key(|&i| {
            let d = &candidates[i].diagram;
            (d.crossings(), !d.is_alternating(), canonical_key(d, Quotient::KNOT))
        });
        let mut kept: Vec<usize> = Vec::new();
        for &other in &group {
            let b = &candidates[other].diagram;
            let mut merged = false;
            for &keeper in &kept {
                let a = &candidates[keeper].diagram;
                if graded_x(a).separates(&graded_x(b)) {
                    log.separated.push((encode_diagram(a), encode_diagram(b)));
                    continue;
                }
                let cap = a.crossings().max(b.crossings()) + 2;
                match equivalence_search(b, a, cap, SEARCH_STEPS) {
                    Ok(SearchOutcome::Equivalent { .. }) => {
                        log.invariant_merges.push((encode_diagram(b), encode_diagram(a)));
                        if b.crossings() > a.crossings() {
                            log.non_minimal += 1;
                        }
                        merged = true;
                        break;
                    }
                    Ok(SearchOutcome::NotFound) => {
                        log.unresolved.push((encode_diagram(a), encode_diagram(b)));
                    }
                    Err(_) => return Err(CensusError::Budget(encode_diagram(a), encode_diagram(b))),
                }
            }
            if merged {
                dropped.insert(other);
            } else {
                kept.push(other);
            }
        }
    }
    reps.retain(|r| !dropped.contains(r));

    reps.sort_by_key(|&i| {
        let d = &candidates[i].diagram;
        (d.crossings(), canonical_key(d, Quotient::KNOT))
    });
    let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
    let records = reps
        .into_iter()
        .map(|i| {
            let c = &candidates[i];
            let p = &projections[c.projection];
            let n = c.diagram.crossings();
            let k = counters.entry(n).or_insert(0);
            *k += 1;
            record(format!("{n}_{k}"), c.diagram.clone(), p)
        })
        .collect();
    Ok((
        CensusTable {
            records,
            projections: projections.iter().map(|p| p.name.clone()).collect(),
        },
        log,
    ))
}

fn record(name: String, diagram: TorusDiagram, p: &ProjectionRecord) -> CensusRecord {
    CensusRecord {
        name,
        invariant: canonical_invariant(&diagram),
        polynomial: kauffman_x(&diagram),
        writhe: diagram.writhe(),
        knot_class: diagram.knot_class(),
        alternating: diagram.is_alternating(),
        projection: p.name.clone(),
        projection_key: p.key.clone(),
        fingerprint: fingerprint_text(&p.fingerprint),
        diagram,
    }
}

/// Over-bit assignments with crossing 0's bit fixed (the global flip is a
/// symmetry), each as a diagram.
pub fn diagrams_of(p: &ProjectionRecord) -> Vec<TorusDiagram> {
    let n = p.projection.crossings();
    if n == 0 {
        return vec![TorusDiagram::new(p.projection.clone(), Vec::new()).expect("circle")];
    }
    (0..1u32 << (n - 1))
        .map(|bits| {
            let over = (0..n).map(|c| c > 0 && bits >> (c - 1) & 1 == 1).collect();
            TorusDiagram::new(p.projection.clone(), over).expect("bit count matches")
        })
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Parses `label: polynomial` lines; blank lines and `#` comments skipped.
pub fn parse_expected(text: &str) -> Result<Vec<(String, XPolynomial)>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, poly) = line.split_once(':').ok_or((
            i + 1,
            ParseError {
                position: 0,
                message: "missing ':' after label".into(),
            },
        ))?;
        let p = XPolynomial::decode(poly.trim()).map_err(|e| (i + 1, e))?;
        out.push((label.trim().to_string(), p));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// `(expected label, record name, matched through the mirror)`
    pub matched: Vec<(String, String, bool)>,
    pub unmatched_expected: Vec<String>,
    pub unmatched_records: Vec<String>,
}

impl VerifyReport {
    pub fn is_perfect(&self) -> bool {
        self.unmatched_expected.is_empty() && self.unmatched_records.is_empty()
    }
}

/// Matches each expected polynomial to the record whose `X` equals it or its
/// mirror. Records sharing an invariant are used in table order.
pub fn verify_expected(table: &CensusTable, expected: &[(String, XPolynomial)]) -> VerifyReport {
    let mut index: HashMap<&XPolynomial, Vec<usize>> = HashMap::new();
    for (i, r) in table.records.iter().enumerate() {
        index.entry(&r.invariant).or_default().push(i);
    }
    let mut used = vec![false; table.records.len()];
    let mut report = VerifyReport::default();
    for (label, poly) in expected {
        let canon = poly.mirror_canonical();
        let free = index.get(&canon).and_then(|v| v.iter().copied().find(|&i| !used[i]));
        match free {
            Some(i) => {
                used[i] = true;
                let rec = &table.records[i];
                report.matched.push((label.clone(), rec.name.clone(), rec.polynomial != *poly));
            }
            _ => report.unmatched_expected.push(label.clone()),
        }
    }
    report.unmatched_records = table
        .records
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(r, _)| r.name.clone())
        .collect();
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusStats {
    pub records: usize,
    pub per_crossings: Vec<usize>,
    pub homologically_trivial: usize,
    /// Alternating records with at least one crossing.
    pub alternating: usize,
    pub projections: usize,
    pub max_knots_per_projection: usize,
    pub mean_knots_per_projection: f64,
    /// Records whose x-degrees are not all of the knot class's mod-2 parity.
    pub parity_violations: Vec<String>,
}

pub fn stats(table: &CensusTable) -> CensusStats {
    let max_n = table.records.iter().map(|r| r.crossings()).max().unwrap_or(0);
    let mut per_crossings = vec![0; max_n + 1];
    let mut per_projection: BTreeMap<&str, usize> = table.projections.iter().map(|p| (p.as_str(), 0)).collect();
    for r in &table.records {
        per_crossings[r.crossings()] += 1;
        *per_projection.entry(r.projection.as_str()).or_insert(0) += 1;
    }
    let parity_violations = table
        .records
        .iter()
        .filter(|r| {
            let odd = r.class_mod2() != [0, 0];
            r.invariant.x_degrees().iter().any(|&k| (k % 2 == 1) != odd)
        })
        .map(|r| r.name.clone())
        .collect();
    let projections = table.projections.len();
    CensusStats {
        records: table.records.len(),
        per_crossings,
        homologically_trivial: table.records.iter().filter(|r| r.knot_class.is_zero()).count(),
        alternating: table.records.iter().filter(|r| r.alternating && r.crossings() > 0).count(),
        projections,
        max_knots_per_projection: per_projection.values().copied().max().unwrap_or(0),
        mean_knots_per_projection: if projections == 0 {
            0.0
        } else {
            table.records.len() as f64 / projections as f64
        },
        parity_violations,
    }
}
