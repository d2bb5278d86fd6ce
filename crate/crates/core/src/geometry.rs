//! The 25 orthogonal bases of the ray catalog, their line structure, and the
//! gamma table of 4-ray selections that drives the manual constructions.
//!
//! Bases are found as 8-cliques of the orthogonality graph. A basis whose
//! rays all come from one table column is *pure* (`x1..x5`); the others take
//! four rays from each of two columns and are *hybrid* (`y1..y20`). Hybrids
//! are numbered by sorting on (lower column, upper column, ray ids).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::GeometryError;
use crate::fixtures::GammaCell;
use crate::rays::{RayId, RayTable};
use crate::{BASIS_COUNT, DIM, RAY_COUNT};

pub const PURE_COUNT: usize = 5;
pub const HYBRID_COUNT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisId {
    Pure(u8),
    Hybrid(u8),
}

impl BasisId {
    /// Position in the canonical order x1..x5, y1..y20; also the bit index
    /// in a [`BasisSet`].
    pub fn index(self) -> usize {
        match self {
            BasisId::Pure(i) => i as usize - 1,
            BasisId::Hybrid(i) => PURE_COUNT + i as usize - 1,
        }
    }

    pub fn from_index(idx: usize) -> Option<Self> {
        match idx {
            0..=4 => Some(BasisId::Pure(idx as u8 + 1)),
            5..=24 => Some(BasisId::Hybrid((idx - PURE_COUNT) as u8 + 1)),
            _ => None,
        }
    }

    pub fn all() -> impl Iterator<Item = BasisId> {
        (0..BASIS_COUNT).filter_map(BasisId::from_index)
    }

    pub fn is_hybrid(self) -> bool {
        matches!(self, BasisId::Hybrid(_))
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisId::Pure(i) => write!(f, "x{i}"),
            BasisId::Hybrid(i) => write!(f, "y{i}"),
        }
    }
}

impl FromStr for BasisId {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::UnknownBasis(s.to_string());
        let (kind, num) = s.split_at_checked(1).ok_or_else(bad)?;
        if num.starts_with('0') || num.starts_with('+') {
            return Err(bad());
        }
        let n: u8 = num.parse().map_err(|_| bad())?;
        match (kind, n) {
            ("x", 1..=5) => Ok(BasisId::Pure(n)),
            ("y", 1..=20) => Ok(BasisId::Hybrid(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BasisId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A subset of the 25 bases, one bit per [`BasisId::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisSet(pub u32);

impl BasisSet {
    pub const ALL: BasisSet = BasisSet((1 << BASIS_COUNT) - 1);

    pub fn from_ids<I: IntoIterator<Item = BasisId>>(ids: I) -> Self {
        BasisSet(ids.into_iter().fold(0, |m, id| m | 1 << id.index()))
    }

    pub fn contains(self, id: BasisId) -> bool {
        self.0 >> id.index() & 1 == 1
    }

    pub fn insert(&mut self, id: BasisId) {
        self.0 |= 1 << id.index();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: BasisSet) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn ids(self) -> impl Iterator<Item = BasisId> {
        (0..BASIS_COUNT)
            .filter(move |i| self.0 >> i & 1 == 1)
            .filter_map(BasisId::from_index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Pure,
    Hybrid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub id: BasisId,
    pub kind: BasisKind,
    /// Sorted ray ids.
    pub rays: [RayId; DIM],
    /// Bit `r.index()` set for every member ray.
    pub ray_mask: u64,
    /// Table columns the rays come from, ascending (one or two entries).
    pub columns: Vec<usize>,
}

impl Basis {
    pub fn contains(&self, ray: RayId) -> bool {
        self.ray_mask >> ray.index() & 1 == 1
    }

    /// Rays of this basis drawn from `column`.
    pub fn half(&self, column: usize) -> Vec<RayId> {
        self.rays
            .iter()
            .copied()
            .filter(|r| r.column() == column)
            .collect()
    }
}

/// Two pure bases together with the two hybrids built from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    pub pures: (BasisId, BasisId),
    pub hybrids: (BasisId, BasisId),
}

impl Line {
    pub fn members(&self) -> [BasisId; 4] {
        [self.pures.0, self.hybrids.0, self.hybrids.1, self.pures.1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    rays: RayTable,
    bases: Vec<Basis>,
    lines: Vec<Line>,
    partners: BTreeMap<BasisId, BasisId>,
}

/// Bitmask adjacency of the orthogonality graph (zero inner product).
pub fn orthogonality_adjacency(table: &RayTable) -> [u64; RAY_COUNT] {
    let mut adj = [0u64; RAY_COUNT];
    for a in RayId::all() {
        for b in RayId::all() {
            if a != b && table.inner_product(a, b) == 0 {
                adj[a.index()] |= 1 << b.index();
            }
        }
    }
    adj
}

/// All 8-cliques of the orthogonality graph as ray masks, ascending.
pub fn orthogonal_octads(table: &RayTable) -> Vec<u64> {
    fn extend(adj: &[u64; RAY_COUNT], clique: u64, size: usize, cand: u64, out: &mut Vec<u64>) {
        if size == DIM {
            out.push(clique);
            return;
        }
        if (cand.count_ones() as usize) < DIM - size {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // only higher-numbered vertices stay candidates
            extend(adj, clique | 1 << v, size + 1, rest & adj[v], out);
        }
    }
    let adj = orthogonality_adjacency(table);
    let mut out = Vec::new();
    extend(&adj, 0, 0, (1u64 << RAY_COUNT) - 1, &mut out);
    out.sort_unstable();
    out
}

fn mask_rays(mask: u64) -> Vec<RayId> {
    (0..RAY_COUNT)
        .filter(|i| mask >> i & 1 == 1)
        .filter_map(|i| RayId::new(i + 1))
        .collect()
}

pub fn enumerate_bases(table: &RayTable) -> Result<Geometry, GeometryError> {
    let octads = orthogonal_octads(table);
    if octads.len() != BASIS_COUNT {
        return Err(GeometryError::UnexpectedBasisCount(octads.len()));
    }

    let mut pures: BTreeMap<usize, Vec<RayId>> = BTreeMap::new();
    let mut hybrids: Vec<(usize, usize, Vec<RayId>)> = Vec::new();
    for &mask in &octads {
        let rays = mask_rays(mask);
        let mut census: BTreeMap<usize, usize> = BTreeMap::new();
        for r in &rays {
            *census.entry(r.column()).or_default() += 1;
        }
        let malformed = || GeometryError::MalformedBasis(format!("{rays:?}"));
        match census.iter().map(|(&c, &n)| (c, n)).collect::<Vec<_>>()[..] {
            [(c, 8)] => {
                if pures.insert(c, rays.clone()).is_some() {
                    return Err(malformed());
                }
            }
            [(a, 4), (b, 4)] => hybrids.push((a, b, rays)),
            _ => return Err(malformed()),
        }
    }
    if pures.len() != PURE_COUNT || hybrids.len() != HYBRID_COUNT {
        return Err(GeometryError::UnexpectedBasisCount(octads.len()));
    }
    hybrids.sort();

    let make = |id: BasisId, kind: BasisKind, rays: &[RayId]| {
        let mut columns: Vec<usize> = rays.iter().map(|r| r.column()).collect();
        columns.dedup();
        Basis {
            id,
            kind,
            rays: rays.try_into().expect("octad has 8 rays"),
            ray_mask: rays.iter().fold(0, |m, r| m | 1 << r.index()),
            columns,
        }
    };
    let mut bases: Vec<Basis> = pures
        .iter()
        .map(|(&c, rays)| make(BasisId::Pure(c as u8), BasisKind::Pure, rays))
        .collect();
    bases.extend(
        hybrids
            .iter()
            .enumerate()
            .map(|(i, (_, _, rays))| make(BasisId::Hybrid(i as u8 + 1), BasisKind::Hybrid, rays)),
    );

    let mut lines = Vec::new();
    let mut partners = BTreeMap::new();
    for pair in hybrids.chunks(2) {
        let [(a, b, h0), (a1, b1, h1)] = pair else {
            unreachable!("20 hybrids chunk evenly");
        };
        let y0 = BasisId::Hybrid(lines.len() as u8 * 2 + 1);
        let y1 = BasisId::Hybrid(lines.len() as u8 * 2 + 2);
        let m0: u64 = h0.iter().fold(0, |m, r| m | 1 << r.index());
        let m1: u64 = h1.iter().fold(0, |m, r| m | 1 << r.index());
        let pure_union = bases[a - 1].ray_mask | bases[b - 1].ray_mask;
        if (a, b) != (a1, b1) || m0 & m1 != 0 || m0 | m1 != pure_union {
            return Err(GeometryError::MalformedBasis(y0.to_string()));
        }
        lines.push(Line {
            pures: (BasisId::Pure(*a as u8), BasisId::Pure(*b as u8)),
            hybrids: (y0, y1),
        });
        partners.insert(y0, y1);
        partners.insert(y1, y0);
    }
    if lines.len() != 10 {
        return Err(GeometryError::UnexpectedBasisCount(octads.len()));
    }

    Ok(Geometry {
        rays: table.clone(),
        bases,
        lines,
        partners,
    })
}

impl Geometry {
    pub fn rays(&self) -> &RayTable {
        &self.rays
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn basis(&self, id: BasisId) -> &Basis {
        &self.bases[id.index()]
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn pure(&self, column: usize) -> &Basis {
        &self.bases[column - 1]
    }

    pub fn hybrids(&self) -> &[Basis] {
        &self.bases[PURE_COUNT..]
    }

    pub fn partner(&self, y: BasisId) -> Result<BasisId, GeometryError> {
        self.partners
            .get(&y)
            .copied()
            .ok_or(GeometryError::NotHybrid(y))
    }

    pub fn line_of(&self, y: BasisId) -> Option<&Line> {
        self.lines
            .iter()
            .find(|l| l.hybrids.0 == y || l.hybrids.1 == y)
    }

    /// Bases containing `ray`.
    pub fn bases_containing(&self, ray: RayId) -> impl Iterator<Item = &Basis> {
        self.bases.iter().filter(move |b| b.contains(ray))
    }

    /// Every hybrid whose ray set contains all of `rays`.
    pub fn hybrids_covering(&self, rays: &[RayId]) -> Vec<BasisId> {
        let mask: u64 = rays.iter().fold(0, |m, r| m | 1 << r.index());
        self.hybrids()
            .iter()
            .filter(|b| b.ray_mask & mask == mask)
            .map(|b| b.id)
            .collect()
    }
}

/// Coordinates of a gamma-table cell: column 1..=5, row 1..=8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaRef {
    pub column: usize,
    pub row: usize,
}

impl GammaRef {
    pub fn new(column: usize, row: usize) -> Self {
        GammaRef { column, row }
    }
}

impl fmt::Display for GammaRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.column, self.row)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaEntry {
    pub at: GammaRef,
    pub rays: [RayId; 4],
    /// The four 3-subsets, in lexicographic order.
    pub triples: [[RayId; 3]; 4],
    /// The hybrid covering each triple, aligned with `triples`.
    pub covering: [BasisId; 4],
}

fn triples_of(rays: [RayId; 4]) -> [[RayId; 3]; 4] {
    let [a, b, c, d] = rays;
    [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
}

/// Scans every 4-subset of the pure basis `column` and keeps those whose
/// four triples are each covered by exactly one hybrid, the four hybrids on
/// four distinct lines, and which are not themselves a hybrid half.
pub fn gamma_candidates(geom: &Geometry, column: usize) -> Vec<([RayId; 4], [BasisId; 4])> {
    let rays = geom.pure(column).rays;
    let halves: Vec<u64> = geom
        .hybrids()
        .iter()
        .filter(|h| h.columns.contains(&column))
        .map(|h| h.ray_mask & geom.pure(column).ray_mask)
        .collect();
    let mut out = Vec::new();
    for a in 0..DIM {
        for b in a + 1..DIM {
            for c in b + 1..DIM {
                for d in c + 1..DIM {
                    let set = [rays[a], rays[b], rays[c], rays[d]];
                    let mask: u64 = set.iter().fold(0, |m, r| m | 1 << r.index());
                    if halves.contains(&mask) {
                        continue;
                    }
                    let mut cover = Vec::with_capacity(4);
                    for t in triples_of(set) {
                        match geom.hybrids_covering(&t)[..] {
                            [h] => cover.push(h),
                            _ => break,
                        }
                    }
                    if cover.len() != 4 {
                        continue;
                    }
                    let mut line_keys: Vec<_> = cover
                        .iter()
                        .map(|h| geom.line_of(*h).map(|l| l.pures))
                        .collect();
                    line_keys.sort();
                    line_keys.dedup();
                    if line_keys.len() == 4 {
                        out.push((set, cover.try_into().expect("four covers")));
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTable {
    entries: Vec<GammaEntry>,
}

impl GammaTable {
    pub fn entries(&self) -> &[GammaEntry] {
        &self.entries
    }

    pub fn get(&self, at: GammaRef) -> Option<&GammaEntry> {
        self.entries.iter().find(|e| e.at == at)
    }

    pub fn column(&self, column: usize) -> impl Iterator<Item = &GammaEntry> {
        self.entries.iter().filter(move |e| e.at.column == column)
    }
}

/// Derives the gamma sets from first principles and adopts the fixture's
/// (column, row) coordinates; any disagreement is an error.
pub fn derive_gamma_table(
    geom: &Geometry,
    fixture: &[GammaCell],
) -> Result<GammaTable, GeometryError> {
    let mut entries = Vec::with_capacity(40);
    for column in 1..=PURE_COUNT {
        let derived = gamma_candidates(geom, column);
        let cells: Vec<&GammaCell> = fixture.iter().filter(|c| c.column == column).collect();
        if derived.len() != DIM || cells.len() != DIM {
            return Err(GeometryError::GammaMismatch(column));
        }
        for cell in cells {
            let mut ids: Vec<RayId> = cell
                .rays
                .iter()
                .filter_map(|&r| RayId::new(r as usize))
                .collect();
            ids.sort();
            let found = derived
                .iter()
                .find(|(set, _)| set[..] == ids[..])
                .ok_or(GeometryError::GammaMismatch(column))?;
            entries.push(GammaEntry {
                at: GammaRef::new(column, cell.row),
                rays: found.0,
                triples: triples_of(found.0),
                covering: found.1,
            });
        }
    }
    entries.sort_by_key(|e| e.at);
    let mut coords: Vec<GammaRef> = entries.iter().map(|e| e.at).collect();
    coords.dedup();
    if coords.len() != entries.len() {
        return Err(GeometryError::GammaMismatch(0));
    }
    Ok(GammaTable { entries })
}
