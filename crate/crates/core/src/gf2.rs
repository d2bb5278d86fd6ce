//! Small GF(2) linear algebra on bit-packed rows (at most 64 rows and 64
//! columns).

/// Echelon form built incrementally; every pivot has a distinct lead bit
/// absent from all pivots inserted after it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: Vec<(u64, u64)>,
}

impl Echelon {
    /// Reduces `value` against the pivots, tracking the combination used.
    fn reduce(&self, mut value: u64, mut combo: u64) -> (u64, u64) {
        for &(p, c) in &self.pivots {
            let lead = p & p.wrapping_neg();
            if value & lead != 0 {
                value ^= p;
                combo ^= c;
            }
        }
        (value, combo)
    }

    /// Inserts a vector; returns the dependency combination if it reduces to
    /// zero.
    pub fn insert(&mut self, value: u64, combo: u64) -> Option<u64> {
        let (v, c) = self.reduce(value, combo);
        if v == 0 {
            Some(c)
        } else {
            self.pivots.push((v, c));
            None
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        self.reduce(value, 0).0 == 0
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Basis of `{ x : XOR of rows[i] for x_i = 1 is zero }`, each vector a
/// bitmask over row indices.
pub fn left_kernel(rows: &[u64]) -> Vec<u64> {
    assert!(rows.len() <= 64, "at most 64 rows");
    let mut ech = Echelon::default();
    rows.iter()
        .enumerate()
        .filter_map(|(i, &r)| ech.insert(r, 1 << i))
        .collect()
}

pub fn rank(rows: &[u64]) -> usize {
    let mut ech = Echelon::default();
    for &r in rows {
        ech.insert(r, 0);
    }
    ech.rank()
}

/// Every vector of the span of `basis`, visited in Gray-code order.
pub fn span(basis: &[u64]) -> impl Iterator<Item = u64> + '_ {
    assert!(basis.len() < 64);
    let mut acc = 0u64;
    (0u64..1 << basis.len()).map(move |i| {
        if i > 0 {
            acc ^= basis[i.trailing_zeros() as usize];
        }
        acc
    })
}
