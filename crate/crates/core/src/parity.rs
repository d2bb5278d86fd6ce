//! Parity-proof checks, multiplicity signatures, and an independent
//! backtracking search for noncontextual {0,1} colorings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::geometry::{BasisSet, Geometry};
use crate::rays::RayId;
use crate::{DIM, RAY_COUNT};

pub fn ray_multiplicities(geom: &Geometry, set: BasisSet) -> BTreeMap<RayId, u32> {
    let mut out = BTreeMap::new();
    for id in set.ids() {
        for &r in &geom.basis(id).rays {
            *out.entry(r).or_default() += 1;
        }
    }
    out
}

/// Odd number of bases and every ray used an even number of times.
pub fn is_parity_proof(geom: &Geometry, set: BasisSet) -> bool {
    set.len() % 2 == 1 && ray_multiplicities(geom, set).values().all(|m| m % 2 == 0)
}

/// Multiplicity census of a collection of bases, rendered as `28_2 8_4 - 11_8`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    census: BTreeMap<u32, u32>,
    basis_count: usize,
}

impl Signature {
    pub fn from_multiplicities(mult: &BTreeMap<RayId, u32>, basis_count: usize) -> Self {
        let mut census = BTreeMap::new();
        for &m in mult.values().filter(|&&m| m > 0) {
            *census.entry(m).or_default() += 1;
        }
        Signature {
            census,
            basis_count,
        }
    }

    pub fn census(&self) -> &BTreeMap<u32, u32> {
        &self.census
    }

    pub fn basis_count(&self) -> usize {
        self.basis_count
    }

    pub fn ray_count(&self) -> u32 {
        self.census.values().sum()
    }

    /// Sum of `m * census(m)`; equals 8 times the basis count.
    pub fn incidences(&self) -> u64 {
        self.census.iter().map(|(&m, &c)| m as u64 * c as u64).sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (m, c)) in self.census.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}_{m}")?;
        }
        write!(f, " - {}_{}", self.basis_count, DIM)
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Document(format!("malformed signature {s:?}"));
        let (terms, bases) = s.split_once(" - ").ok_or_else(bad)?;
        let term = |t: &str| -> Result<(u32, u32), Error> {
            let (a, b) = t.split_once('_').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        };
        let mut census = BTreeMap::new();
        for t in terms.split(' ') {
            let (count, mult) = term(t)?;
            if census.insert(mult, count).is_some() {
                return Err(bad());
            }
        }
        let (basis_count, width) = term(bases)?;
        if width as usize != DIM {
            return Err(bad());
        }
        let sig = Signature {
            census,
            basis_count: basis_count as usize,
        };
        // reject non-canonical spellings
        if sig.to_string() != s {
            return Err(bad());
        }
        Ok(sig)
    }
}

pub fn signature(geom: &Geometry, set: BasisSet) -> Result<Signature, Error> {
    if !is_parity_proof(geom, set) {
        return Err(Error::NotParityProof);
    }
    Ok(Signature::from_multiplicities(
        &ray_multiplicities(geom, set),
        set.len(),
    ))
}

/// Ray values of a coloring; only rays that occur in the set's bases appear.
pub type Coloring = BTreeMap<RayId, bool>;

/// Exactly one ray per listed basis is mapped to 1.
pub fn is_valid_coloring(geom: &Geometry, set: BasisSet, coloring: &Coloring) -> bool {
    set.ids().all(|id| {
        let b = geom.basis(id);
        b.rays.iter().all(|r| coloring.contains_key(r))
            && b.rays.iter().filter(|r| coloring[r]).count() == 1
    })
}

const UNSET: i8 = -1;

struct ColoringSearch {
    basis_masks: Vec<u64>,
    /// For each ray, the rays sharing some listed basis with it.
    neighbours: [u64; RAY_COUNT],
}

impl ColoringSearch {
    fn solve(&self, values: &mut [i8; RAY_COUNT]) -> bool {
        let ones: u64 = (0..RAY_COUNT)
            .filter(|&i| values[i] == 1)
            .fold(0, |m, i| m | 1 << i);
        let unset: u64 = (0..RAY_COUNT)
            .filter(|&i| values[i] == UNSET)
            .fold(0, |m, i| m | 1 << i);

        // open basis with the fewest unassigned rays
        let mut best: Option<u64> = None;
        for &bm in &self.basis_masks {
            if bm & ones != 0 {
                continue;
            }
            let free = bm & unset;
            if free == 0 {
                return false;
            }
            if best.is_none_or(|b| free.count_ones() < b.count_ones()) {
                best = Some(free);
            }
        }
        let Some(mut free) = best else {
            return true;
        };
        while free != 0 {
            let r = free.trailing_zeros() as usize;
            free &= free - 1;
            let mut next = *values;
            next[r] = 1;
            let mut zeros = self.neighbours[r];
            while zeros != 0 {
                let z = zeros.trailing_zeros() as usize;
                zeros &= zeros - 1;
                next[z] = 0;
            }
            if self.solve(&mut next) {
                *values = next;
                return true;
            }
        }
        false
    }
}

/// Searches for an assignment giving exactly one 1 in every listed basis.
/// Returns `None` when the collection is uncolorable.
pub fn find_coloring(geom: &Geometry, set: BasisSet) -> Option<Coloring> {
    let basis_masks: Vec<u64> = set.ids().map(|id| geom.basis(id).ray_mask).collect();
    let mut neighbours = [0u64; RAY_COUNT];
    for &bm in &basis_masks {
        let mut rest = bm;
        while rest != 0 {
            let r = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            neighbours[r] |= bm & !(1 << r);
        }
    }
    let search = ColoringSearch {
        basis_masks,
        neighbours,
    };
    let mut values = [UNSET; RAY_COUNT];
    if !search.solve(&mut values) {
        return None;
    }
    let used: u64 = search.basis_masks.iter().fold(0, |m, b| m | b);
    Some(
        RayId::all()
            .filter(|r| used >> r.index() & 1 == 1)
            .map(|r| (r, values[r.index()] == 1))
            .collect(),
    )
}
