//! Exhaustive search for parity proofs over all 2^25 collections of bases,
//! with a GF(2) kernel computation as an independent second route.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::construct::{self, ConstructionOutcome};
use crate::error::ConstructionError;
use crate::geometry::{BasisSet, GammaRef, GammaTable, Geometry};
use crate::gf2;
use crate::parity::{signature, Signature};
use crate::{BASIS_COUNT, RAY_COUNT};

/// Basis-by-ray membership, one 40-bit row per basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: [u64; BASIS_COUNT],
}

impl IncidenceMatrix {
    pub fn from_geometry(geom: &Geometry) -> Self {
        let mut rows = [0u64; BASIS_COUNT];
        for b in geom.bases() {
            rows[b.id.index()] = b.ray_mask;
        }
        IncidenceMatrix { rows }
    }

    pub fn rows(&self) -> &[u64; BASIS_COUNT] {
        &self.rows
    }

    pub fn column_sums(&self) -> [u32; RAY_COUNT] {
        let mut sums = [0; RAY_COUNT];
        for row in &self.rows {
            for (r, s) in sums.iter_mut().enumerate() {
                *s += (row >> r & 1) as u32;
            }
        }
        sums
    }

    /// XOR of the rows selected by `set`.
    pub fn parity_of(&self, set: BasisSet) -> u64 {
        set.ids().fold(0, |acc, id| acc ^ self.rows[id.index()])
    }
}

/// Gray-code walk over the low `low_bits` bases with the higher bits fixed
/// to `prefix`. One XOR per step.
fn scan_block(m: &IncidenceMatrix, prefix: u32, low_bits: u32) -> Vec<u32> {
    let high = prefix << low_bits;
    let mut acc = (low_bits..BASIS_COUNT as u32)
        .filter(|b| high >> b & 1 == 1)
        .fold(0u64, |a, b| a ^ m.rows[b as usize]);
    let mut odd = high.count_ones() % 2 == 1;
    let mut found = Vec::new();
    let mut gray = 0u32;
    for i in 0u32..1 << low_bits {
        if i > 0 {
            let bit = i.trailing_zeros();
            gray ^= 1 << bit;
            acc ^= m.rows[bit as usize];
            odd = !odd;
        }
        if acc == 0 && odd {
            found.push(high | gray);
        }
    }
    found
}

/// Single-threaded scan of all 2^25 subsets; masks returned ascending.
pub fn scan_parity_proofs(m: &IncidenceMatrix) -> Vec<u32> {
    let mut out = scan_block(m, 0, BASIS_COUNT as u32);
    out.sort_unstable();
    out
}

/// Same scan with the top `split_bits` bits partitioned across workers.
pub fn scan_parity_proofs_parallel(m: &IncidenceMatrix, split_bits: u32) -> Vec<u32> {
    let split_bits = split_bits.min(BASIS_COUNT as u32);
    let low = BASIS_COUNT as u32 - split_bits;
    let mut out: Vec<u32> = (0u32..1 << split_bits)
        .into_par_iter()
        .flat_map_iter(|p| scan_block(m, p, low))
        .collect();
    out.sort_unstable();
    out
}

/// Parity proofs as the odd-weight members of the left kernel of the
/// incidence matrix.
pub fn kernel_parity_proofs(m: &IncidenceMatrix) -> Vec<u32> {
    let kernel = gf2_kernel(m);
    let mut out: Vec<u32> = gf2::span(&kernel)
        .filter(|v| v.count_ones() % 2 == 1)
        .map(|v| v as u32)
        .collect();
    out.sort_unstable();
    out
}

/// Basis of the subsets whose rows XOR to zero.
pub fn gf2_kernel(m: &IncidenceMatrix) -> Vec<u64> {
    gf2::left_kernel(&m.rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub set: BasisSet,
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofCatalog {
    proofs: Vec<CatalogEntry>,
    counts: BTreeMap<String, usize>,
}

impl ProofCatalog {
    /// Builds a catalog from proof masks; the masks must all be parity
    /// proofs.
    pub fn from_masks(geom: &Geometry, masks: &[u32]) -> Self {
        let mut sorted = masks.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut counts = BTreeMap::new();
        let proofs = sorted
            .into_iter()
            .map(|mask| {
                let set = BasisSet(mask);
                let signature = signature(geom, set).expect("catalog entries are parity proofs");
                *counts.entry(signature.to_string()).or_default() += 1;
                CatalogEntry { set, signature }
            })
            .collect();
        ProofCatalog { proofs, counts }
    }

    pub fn proofs(&self) -> &[CatalogEntry] {
        &self.proofs
    }

    pub fn counts(&self) -> &BTreeMap<String, usize> {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.proofs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proofs.is_empty()
    }

    pub fn masks(&self) -> Vec<u32> {
        self.proofs.iter().map(|e| e.set.0).collect()
    }

    pub fn contains(&self, set: BasisSet) -> bool {
        self.proofs
            .binary_search_by_key(&set.0, |e| e.set.0)
            .is_ok()
    }

    /// Proofs with no proper sub-collection that is itself a proof.
    pub fn minimal(&self) -> ProofCatalog {
        let keep: Vec<CatalogEntry> = self
            .proofs
            .iter()
            .filter(|p| {
                !self
                    .proofs
                    .iter()
                    .any(|q| q.set != p.set && q.set.is_subset_of(p.set))
            })
            .cloned()
            .collect();
        let mut counts = BTreeMap::new();
        for e in &keep {
            *counts.entry(e.signature.to_string()).or_default() += 1;
        }
        ProofCatalog {
            proofs: keep,
            counts,
        }
    }
}

/// Enumerates every parity proof with the partitioned subset scan.
pub fn enumerate_parity_proofs(geom: &Geometry) -> ProofCatalog {
    let m = IncidenceMatrix::from_geometry(geom);
    ProofCatalog::from_masks(geom, &scan_parity_proofs_parallel(&m, 6))
}

/// Outcome tally of one construction procedure swept over its inputs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepTally {
    pub runs: usize,
    pub successes: usize,
    /// Failure counts keyed by error name.
    pub failures: BTreeMap<&'static str, usize>,
    /// Distinct successful outputs.
    pub outputs: BTreeSet<BasisSet>,
    /// Successful outputs absent from the catalog (must stay empty).
    pub outside_catalog: usize,
    /// Successful outputs whose signature differs from the expected one.
    pub wrong_signature: usize,
}

impl SweepTally {
    fn record(
        &mut self,
        outcome: Result<BasisSet, ConstructionError>,
        catalog: &ProofCatalog,
        geom: &Geometry,
        expected: &str,
    ) {
        self.runs += 1;
        match outcome {
            Ok(set) => {
                self.successes += 1;
                if !catalog.contains(set) {
                    self.outside_catalog += 1;
                }
                if signature(geom, set).map(|s| s.to_string()).as_deref() != Ok(expected) {
                    self.wrong_signature += 1;
                }
                self.outputs.insert(set);
            }
            Err(e) => *self.failures.entry(construct::error_name(&e)).or_default() += 1,
        }
    }

    /// Fraction of the catalog's `signature` class reached.
    pub fn coverage(&self, catalog: &ProofCatalog, signature: &str) -> (usize, usize) {
        let class = catalog.counts().get(signature).copied().unwrap_or(0);
        let hit = self
            .outputs
            .iter()
            .filter(|s| catalog.contains(**s))
            .count();
        (hit, class)
    }

    pub fn sound(&self) -> bool {
        self.outside_catalog == 0 && self.wrong_signature == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub eleven: SweepTally,
    pub thirteen: SweepTally,
    pub fifteen: SweepTally,
}

pub const SIG_11: &str = "28_2 8_4 - 11_8";
pub const SIG_13: &str = "24_2 14_4 - 13_8";
pub const SIG_15: &str = "20_2 20_4 - 15_8";

fn column_tuples(k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=5 {
            cur.push(c);
            rec(c + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, &mut Vec::new(), &mut out);
    out
}

/// Every gamma tuple drawn from `k` distinct columns (columns ascending,
/// rows free).
pub fn gamma_tuples(k: usize) -> Vec<Vec<GammaRef>> {
    let mut out = Vec::new();
    for cols in column_tuples(k) {
        for code in 0..8usize.pow(k as u32) {
            let mut rest = code;
            let tuple = cols
                .iter()
                .map(|&c| {
                    let row = rest % 8 + 1;
                    rest /= 8;
                    GammaRef::new(c, row)
                })
                .collect();
            out.push(tuple);
        }
    }
    out
}

/// Sweeps the three procedures over all their inputs and checks every
/// output against the catalog. The 11-basis sweep follows every admissible
/// pick order from each gamma cell.
pub fn cross_check_constructions(
    geom: &Geometry,
    gamma: &GammaTable,
    catalog: &ProofCatalog,
) -> CrossCheckReport {
    let mut report = CrossCheckReport::default();
    for e in gamma.entries() {
        match construct::explore_11(geom, gamma, e.at) {
            Ok(outcomes) => {
                for o in outcomes {
                    let r = match o {
                        ConstructionOutcome::Complete(set) => Ok(set),
                        ConstructionOutcome::Failed(err) => Err(err),
                    };
                    report.eleven.record(r, catalog, geom, SIG_11);
                }
            }
            Err(err) => report.eleven.record(Err(err), catalog, geom, SIG_11),
        }
    }
    for t in gamma_tuples(3) {
        let r = construct::construct_13(geom, gamma, &t).map(|c| c.bases);
        report.thirteen.record(r, catalog, geom, SIG_13);
    }
    for t in gamma_tuples(4) {
        let r = construct::construct_15(geom, gamma, &t).map(|c| c.bases);
        report.fifteen.record(r, catalog, geom, SIG_15);
    }
    report
}

/// Relabels basis indices of a mask through `perm` (old index -> new index).
pub fn relabel(mask: u32, perm: &[usize; BASIS_COUNT]) -> u32 {
    (0..BASIS_COUNT)
        .filter(|i| mask >> i & 1 == 1)
        .fold(0, |m, i| m | 1 << perm[i])
}
