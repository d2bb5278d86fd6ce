//! Serialization formats: the KS-set JSON document, catalog JSON, plain
//! text tables and Graphviz DOT exports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::enumerate::ProofCatalog;
use crate::error::Error;
use crate::geometry::{BasisId, BasisKind, BasisSet, GammaTable, Geometry};
use crate::parity::signature;
use crate::rays::{RayId, RayTable};
use crate::DIM;

pub const FORMAT_VERSION: &str = "1";

/// A collection of bases as exchanged on disk. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsSetDocument {
    pub version: String,
    pub bases: Vec<String>,
    /// Ray ids of each entry of `bases`, in the same order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays_per_basis: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
}

impl KsSetDocument {
    /// Document for `set`; the signature is filled in when the set is a
    /// parity proof.
    pub fn from_set(geom: &Geometry, set: BasisSet, expand: bool) -> Self {
        KsSetDocument {
            version: FORMAT_VERSION.to_string(),
            bases: set.ids().map(|id| id.to_string()).collect(),
            rays_per_basis: expand.then(|| {
                set.ids()
                    .map(|id| geom.basis(id).rays.iter().map(|r| r.get()).collect())
                    .collect()
            }),
            signature: signature(geom, set).ok().map(|s| s.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    /// Resolves the identifiers against `geom` and checks the optional
    /// fields against recomputation.
    pub fn resolve(&self, geom: &Geometry) -> Result<BasisSet, Error> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported version {:?}",
                self.version
            )));
        }
        let mut set = BasisSet::default();
        for bid in &self.bases {
            let id: BasisId = bid.parse()?;
            if set.contains(id) {
                return Err(Error::Document(format!("duplicate basis {bid}")));
            }
            set.insert(id);
        }
        if let Some(listing) = &self.rays_per_basis {
            if listing.len() != self.bases.len() {
                return Err(Error::Document(
                    "rays_per_basis length differs from bases".into(),
                ));
            }
            for (bid, rays) in self.bases.iter().zip(listing) {
                let id: BasisId = bid.parse()?;
                let actual: Vec<usize> = geom.basis(id).rays.iter().map(|r| r.get()).collect();
                if *rays != actual {
                    return Err(Error::Document(format!(
                        "rays listed for {bid} do not match"
                    )));
                }
            }
        }
        if let Some(sig) = &self.signature {
            let actual = signature(geom, set).map(|s| s.to_string()).ok();
            if actual.as_deref() != Some(sig.as_str()) {
                return Err(Error::Document(format!(
                    "signature {sig:?} does not match the listed bases"
                )));
            }
        }
        Ok(set)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofRecord {
    pub bases: Vec<String>,
    pub signature: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub version: String,
    pub total: usize,
    pub counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proofs: Option<Vec<ProofRecord>>,
}

impl CatalogDocument {
    pub fn from_catalog(catalog: &ProofCatalog, with_proofs: bool) -> Self {
        CatalogDocument {
            version: FORMAT_VERSION.to_string(),
            total: catalog.len(),
            counts: catalog.counts().clone(),
            proofs: with_proofs.then(|| {
                catalog
                    .proofs()
                    .iter()
                    .map(|e| ProofRecord {
                        bases: e.set.ids().map(|id| id.to_string()).collect(),
                        signature: e.signature.to_string(),
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }
}

/// Signatures of a catalog ordered by basis count.
pub fn ordered_counts(counts: &BTreeMap<String, usize>) -> Vec<(&str, usize)> {
    let mut v: Vec<(&str, usize)> = counts.iter().map(|(k, &n)| (k.as_str(), n)).collect();
    v.sort_by_key(|(k, _)| {
        let bases = k.rsplit(" - ").next().unwrap_or("");
        let n: usize = bases
            .split('_')
            .next()
            .and_then(|x| x.parse().ok())
            .unwrap_or(0);
        (n, k.to_string())
    });
    v
}

pub fn render_counts(counts: &BTreeMap<String, usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<20}{:>8}", "signature", "proofs");
    for (sig, n) in ordered_counts(counts) {
        let _ = writeln!(out, "{sig:<20}{n:>8}");
    }
    let _ = writeln!(out, "{:<20}{:>8}", "total", counts.values().sum::<usize>());
    out
}

fn component(x: i8, bar: bool) -> &'static str {
    match (x, bar) {
        (1, _) => "1",
        (0, _) => "0",
        (_, true) => "1\u{304}",
        (_, false) => "-1",
    }
}

fn visible_width(s: &str) -> usize {
    s.chars()
        .filter(|c| !('\u{300}'..='\u{36f}').contains(c))
        .count()
}

/// Eight rows, one column per pentagram context. With `bar`, -1 is written
/// as a barred one.
pub fn render_ray_table(table: &RayTable, bar: bool) -> String {
    let sep = if bar { "" } else { " " };
    let cell = |id: RayId| {
        let comps: Vec<&str> = table
            .get(id)
            .components
            .iter()
            .map(|&x| component(x, bar))
            .collect();
        format!("{:<4}{}", id.to_string(), comps.join(sep))
    };
    let width = (1..=40)
        .filter_map(RayId::new)
        .map(|id| visible_width(&cell(id)))
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for row in 0..DIM {
        let cells: Vec<String> = (0..5)
            .filter_map(|c| RayId::new(c * DIM + row + 1))
            .map(|id| {
                let text = cell(id);
                let pad = width - visible_width(&text);
                format!("{text}{}", " ".repeat(pad))
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
    }
    out
}

#[derive(Serialize)]
struct RayRecord {
    id: usize,
    column: usize,
    components: [i8; DIM],
}

pub fn rays_json(table: &RayTable) -> String {
    let recs: Vec<RayRecord> = table
        .rays()
        .iter()
        .map(|r| RayRecord {
            id: r.id.get(),
            column: r.id.column(),
            components: r.components,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&recs).expect("rays serialize");
    s.push('\n');
    s
}

fn ray_list(rays: &[RayId]) -> String {
    rays.iter()
        .map(|r| r.get().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_bases(geom: &Geometry) -> String {
    let mut out = String::new();
    for b in geom.bases() {
        let kind = match b.kind {
            BasisKind::Pure => "pure".to_string(),
            BasisKind::Hybrid => format!("hybrid x{}-x{}", b.columns[0], b.columns[1]),
        };
        let partner = geom
            .partner(b.id)
            .map(|p| format!("  partner {p}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<4}{:<16}{}{}",
            b.id.to_string(),
            kind,
            ray_list(&b.rays),
            partner
        );
    }
    out.push_str("lines:\n");
    for l in geom.lines() {
        let _ = writeln!(
            out,
            "  {} {} : {} {}",
            l.pures.0, l.pures.1, l.hybrids.0, l.hybrids.1
        );
    }
    out
}

#[derive(Serialize)]
struct BasisRecord {
    id: BasisId,
    kind: BasisKind,
    rays: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partner: Option<BasisId>,
}

#[derive(Serialize)]
struct LineRecord {
    pures: [BasisId; 2],
    hybrids: [BasisId; 2],
}

#[derive(Serialize)]
struct GeometryRecord {
    bases: Vec<BasisRecord>,
    lines: Vec<LineRecord>,
}

pub fn bases_json(geom: &Geometry) -> String {
    let rec = GeometryRecord {
        bases: geom
            .bases()
            .iter()
            .map(|b| BasisRecord {
                id: b.id,
                kind: b.kind,
                rays: b.rays.iter().map(|r| r.get()).collect(),
                partner: geom.partner(b.id).ok(),
            })
            .collect(),
        lines: geom
            .lines()
            .iter()
            .map(|l| LineRecord {
                pures: [l.pures.0, l.pures.1],
                hybrids: [l.hybrids.0, l.hybrids.1],
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&rec).expect("geometry serializes");
    s.push('\n');
    s
}

pub fn render_gamma(table: &GammaTable) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=5)
        .map(|c| format!("{:<12}", format!("column {c}")))
        .collect();
    let _ = writeln!(out, "row  {}", header.concat().trim_end());
    for row in 1..=DIM {
        let cells: Vec<String> = (1..=5)
            .map(|c| {
                let e = table.get(crate::geometry::GammaRef::new(c, row));
                format!("{:<12}", e.map(|e| ray_list(&e.rays)).unwrap_or_default())
            })
            .collect();
        let _ = writeln!(out, "{row:<5}{}", cells.concat().trim_end());
    }
    out
}

#[derive(Serialize)]
struct GammaRecord {
    column: usize,
    row: usize,
    rays: Vec<usize>,
    triples: Vec<Vec<usize>>,
    covering: Vec<BasisId>,
}

pub fn gamma_json(table: &GammaTable) -> String {
    let recs: Vec<GammaRecord> = table
        .entries()
        .iter()
        .map(|e| GammaRecord {
            column: e.at.column,
            row: e.at.row,
            rays: e.rays.iter().map(|r| r.get()).collect(),
            triples: e
                .triples
                .iter()
                .map(|t| t.iter().map(|r| r.get()).collect())
                .collect(),
            covering: e.covering.to_vec(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&recs).expect("gamma serializes");
    s.push('\n');
    s
}

/// Orthogonality graph: one node per ray, an edge per zero inner product.
pub fn orthogonality_dot(table: &RayTable) -> String {
    let mut out = String::from("graph orthogonality {\n  node [shape=circle];\n");
    for r in table.rays() {
        let _ = writeln!(out, "  {};", r.id);
    }
    for a in RayId::all() {
        for b in RayId::all().filter(|b| *b > a) {
            if table.inner_product(a, b) == 0 {
                let _ = writeln!(out, "  {a} -- {b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Basis incidence structure: 25 basis nodes and one subgraph per line
/// joining its two pure bases through the y-y' pair.
pub fn bases_dot(geom: &Geometry) -> String {
    let mut out = String::from("graph bases {\n  node [shape=circle];\n");
    for b in geom.bases() {
        let style = match b.kind {
            BasisKind::Pure => ", style=bold",
            BasisKind::Hybrid => "",
        };
        let _ = writeln!(
            out,
            "  {} [label=\"{}\\n{}\"{style}];",
            b.id,
            b.id,
            ray_list(&b.rays)
        );
    }
    for l in geom.lines() {
        let (a, b) = l.pures;
        let (y, z) = l.hybrids;
        let _ = writeln!(out, "  subgraph line_{a}_{b} {{");
        let _ = writeln!(out, "    {a} -- {y};");
        let _ = writeln!(out, "    {y} -- {z} [style=dashed, label=\"partner\"];");
        let _ = writeln!(out, "    {z} -- {b};");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Node names declared in a DOT document produced by this module.
pub fn dot_nodes(dot: &str) -> BTreeSet<String> {
    dot.lines()
        .map(str::trim)
        .filter(|l| !l.contains("--") && l.ends_with(';') && !l.starts_with("node"))
        .filter_map(|l| l.split([' ', ';', '[']).next())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}
