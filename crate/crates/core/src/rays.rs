//! Joint eigenrays of the pentagram contexts.
//!
//! Each context's eight common eigenvectors come from the rank-one
//! projectors `prod_k (I + l_k A_k)` kept at integer scale 16. Ids are not
//! assigned in derivation order: each derived column is matched as a set
//! against the shipped ray table and inherits its numbering.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::RayError;
use crate::fixtures::Fixtures;
use crate::pauli::{mermin_pentagram, Context, Matrix8};
use crate::{DIM, RAY_COUNT};

/// Ray number 1..=40.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RayId(u8);

impl RayId {
    pub fn new(id: usize) -> Option<Self> {
        (1..=RAY_COUNT).contains(&id).then_some(RayId(id as u8))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Zero-based position, also the bit index in ray masks.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    /// Pure-context column 1..=5 the ray belongs to.
    pub fn column(self) -> usize {
        self.index() / DIM + 1
    }

    pub fn all() -> impl Iterator<Item = RayId> {
        (1..=RAY_COUNT as u8).map(RayId)
    }
}

impl fmt::Display for RayId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.0)
    }
}

pub type Components = [i8; DIM];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub id: RayId,
    pub components: Components,
}

impl Ray {
    pub fn support(&self) -> usize {
        self.components.iter().filter(|&&c| c != 0).count()
    }
}

/// Divides out the common magnitude and makes the first nonzero entry +1.
pub fn canonicalize(v: &[i64; DIM]) -> Result<Components, RayError> {
    let g = v
        .iter()
        .find(|&&x| x != 0)
        .map(|x| x.abs())
        .ok_or(RayError::ZeroVector)?;
    if v.iter().any(|&x| x != 0 && x.abs() != g) {
        return Err(RayError::NonUniformMagnitude(v.to_vec()));
    }
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(1).signum();
    Ok(v.map(|x| (x / g * lead) as i8))
}

pub fn inner_product(a: &Components, b: &Components) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

/// Eigenvalue patterns of a context: free choices for the first three
/// observables (+1 before -1), the fourth fixed by the line sign.
pub fn eigenvalue_patterns(line_sign: i64) -> Vec<[i32; 4]> {
    let mut out = Vec::with_capacity(DIM);
    for a in [1, -1] {
        for b in [1, -1] {
            for c in [1, -1] {
                out.push([a, b, c, (line_sign as i32) * a * b * c]);
            }
        }
    }
    out
}

/// `prod_k (I + l_k A_k)`, i.e. 16 times the projector onto the joint
/// eigenspace for `pattern`.
pub fn scaled_projector(ctx: &Context, pattern: &[i32; 4]) -> Matrix8 {
    ctx.observables()
        .iter()
        .zip(pattern)
        .fold(Matrix8::identity(), |acc, (obs, &l)| {
            let factor = Matrix8::identity().add(&obs.matrix().scale(l as i64));
            &acc * &factor
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenRay {
    pub pattern: [i32; 4],
    pub components: Components,
}

pub fn joint_eigenrays(ctx: &Context) -> Result<Vec<EigenRay>, RayError> {
    eigenvalue_patterns(ctx.line_sign())
        .into_iter()
        .map(|pattern| {
            let p = scaled_projector(ctx, &pattern);
            if !p.is_rank_one() {
                return Err(RayError::DegenerateContext(pattern));
            }
            let col = (0..DIM)
                .map(|c| p.column(c))
                .find(|c| c.iter().any(|&x| x != 0))
                .expect("rank-one matrix has a nonzero column");
            Ok(EigenRay {
                pattern,
                components: canonicalize(&col)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayTable {
    rays: Vec<Ray>,
}

impl RayTable {
    pub fn get(&self, id: RayId) -> &Ray {
        &self.rays[id.index()]
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn column_of(&self, id: RayId) -> usize {
        id.column()
    }

    pub fn column(&self, column: usize) -> &[Ray] {
        &self.rays[(column - 1) * DIM..column * DIM]
    }

    pub fn inner_product(&self, a: RayId, b: RayId) -> i64 {
        inner_product(&self.get(a).components, &self.get(b).components)
    }

    /// Ray table taken from a fixture without derivation; rows are
    /// brought to canonical sign.
    pub fn from_fixture(rays: &[Components]) -> Result<Self, RayError> {
        Ok(RayTable {
            rays: rays
                .iter()
                .zip(RayId::all())
                .map(|(c, id)| {
                    Ok(Ray {
                        id,
                        components: canonicalize(&c.map(i64::from))?,
                    })
                })
                .collect::<Result<_, RayError>>()?,
        })
    }
}

pub fn build_ray_table() -> Result<RayTable, RayError> {
    build_ray_table_with(&Fixtures::embedded().rays)
}

/// Derives all five columns and checks each against the fixture as a set
/// of rays, i.e. up to an overall sign per row.
pub fn build_ray_table_with(fixture: &[Components]) -> Result<RayTable, RayError> {
    if fixture.len() != RAY_COUNT {
        return Err(RayError::FixtureMismatch(0));
    }
    let table = RayTable::from_fixture(fixture)?;
    for (c, ctx) in mermin_pentagram().iter().enumerate() {
        let derived: BTreeSet<Components> = joint_eigenrays(ctx)?
            .into_iter()
            .map(|r| r.components)
            .collect();
        let expected: BTreeSet<Components> =
            table.column(c + 1).iter().map(|r| r.components).collect();
        if derived != expected {
            return Err(RayError::FixtureMismatch(c + 1));
        }
    }
    Ok(table)
}
