//! Signed three-qubit Pauli words over {I, X, Z}, their exact integer
//! matrices, and the five measurement contexts of the Mermin pentagram.
//!
//! Qubit 1 is the most significant tensor factor: row index
//! `4*b1 + 2*b2 + b3`, with `b = 0` the +1 eigenstate of Z.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::PauliError;
use crate::{DIM, QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Z,
}

impl Letter {
    pub fn from_char(c: char) -> Result<Self, PauliError> {
        match c {
            'I' => Ok(Letter::I),
            'X' => Ok(Letter::X),
            'Z' => Ok(Letter::Z),
            other => Err(PauliError::UnsupportedLetter(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Z => 'Z',
        }
    }

    fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Letter::I => [[1, 0], [0, 1]],
            Letter::X => [[0, 1], [1, 0]],
            Letter::Z => [[1, 0], [0, -1]],
        }
    }
}

/// Dense 8x8 integer matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix8(pub [[i64; DIM]; DIM]);

impl Matrix8 {
    pub const fn zero() -> Self {
        Matrix8([[0; DIM]; DIM])
    }

    pub fn identity() -> Self {
        Self::scalar(1)
    }

    pub fn scalar(s: i64) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.0[i][i] = s;
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.0[row][col]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                t.0[j][i] = self.0[i][j];
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..DIM {
            for j in 0..DIM {
                m.0[i][j] += other.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|&x| x == 0)
    }

    /// Returns `Some(s)` if the matrix equals `s * I`.
    pub fn as_scalar(&self) -> Option<i64> {
        let s = self.0[0][0];
        (*self == Self::scalar(s)).then_some(s)
    }

    pub fn apply(&self, v: &[i64; DIM]) -> [i64; DIM] {
        let mut out = [0; DIM];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..DIM).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn column(&self, col: usize) -> [i64; DIM] {
        let mut out = [0; DIM];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i][col];
        }
        out
    }

    /// True iff the matrix is nonzero and every 2x2 minor vanishes.
    pub fn is_rank_one(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        for r1 in 0..DIM {
            for r2 in r1 + 1..DIM {
                for c1 in 0..DIM {
                    for c2 in c1 + 1..DIM {
                        let m = &self.0;
                        if m[r1][c1] * m[r2][c2] != m[r1][c2] * m[r2][c1] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl Mul for &Matrix8 {
    type Output = Matrix8;

    fn mul(self, rhs: &Matrix8) -> Matrix8 {
        let mut out = Matrix8::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.0[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..DIM {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix8[")?;
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "  {}", cells.join(""))?;
        }
        write!(f, "]")
    }
}

/// A signed tensor product of single-qubit letters, qubit 1 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    letters: [Letter; QUBITS],
    negative: bool,
}

impl PauliWord {
    pub const fn new(letters: [Letter; QUBITS], sign: Sign) -> Self {
        PauliWord {
            letters,
            negative: matches!(sign, Sign::Minus),
        }
    }

    pub const fn positive(letters: [Letter; QUBITS]) -> Self {
        Self::new(letters, Sign::Plus)
    }

    pub fn letters(&self) -> [Letter; QUBITS] {
        self.letters
    }

    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Symplectic commutation rule: the words commute iff the number of
    /// positions where both letters are non-identity and differ is even.
    pub fn commutes_symplectic(&self, other: &PauliWord) -> bool {
        let clashes = self
            .letters
            .iter()
            .zip(other.letters.iter())
            .filter(|(a, b)| **a != Letter::I && **b != Letter::I && a != b)
            .count();
        clashes % 2 == 0
    }

    /// Readable form such as `Z1 X2 X3`; identity factors are omitted.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, l)| **l != Letter::I)
            .map(|(q, l)| format!("{}{}", l.as_char(), q + 1))
            .collect();
        if parts.is_empty() {
            parts.push("I".into());
        }
        let body = parts.join(" ");
        if self.negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        for l in self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = PauliError;

    /// Parses `ZXX`, `+ZXX` or `-ZXX`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let chars: Vec<char> = body.chars().collect();
        if chars.len() != QUBITS {
            return Err(PauliError::WrongLength(chars.len()));
        }
        let mut letters = [Letter::I; QUBITS];
        for (slot, c) in letters.iter_mut().zip(chars) {
            *slot = Letter::from_char(c)?;
        }
        Ok(PauliWord { letters, negative })
    }
}

/// Kronecker product of the word's letters with the overall sign applied.
pub fn tensor_matrix(word: &PauliWord) -> Matrix8 {
    let mut m = Matrix8::zero();
    let mats = word.letters.map(Letter::matrix);
    for row in 0..DIM {
        for col in 0..DIM {
            let mut v = word.sign();
            for (q, mat) in mats.iter().enumerate() {
                let shift = QUBITS - 1 - q;
                v *= mat[(row >> shift) & 1][(col >> shift) & 1];
            }
            m.0[row][col] = v;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observable {
    word: PauliWord,
    matrix: Matrix8,
}

impl Observable {
    pub fn new(word: PauliWord) -> Self {
        Observable {
            word,
            matrix: tensor_matrix(&word),
        }
    }

    pub fn word(&self) -> &PauliWord {
        &self.word
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.matrix
    }
}

/// Matrix-level commutation test, `AB == BA`.
pub fn commutes(a: &Observable, b: &Observable) -> bool {
    &a.matrix * &b.matrix == &b.matrix * &a.matrix
}

/// Four pairwise-commuting observables whose product is `line_sign * I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    observables: [Observable; 4],
    line_sign: i64,
}

impl Context {
    pub fn new(observables: [Observable; 4]) -> Result<Self, PauliError> {
        for i in 0..4 {
            for j in i + 1..4 {
                if !commutes(&observables[i], &observables[j]) {
                    return Err(PauliError::NonCommuting(
                        observables[i].word.to_string(),
                        observables[j].word.to_string(),
                    ));
                }
            }
        }
        let product = observables
            .iter()
            .fold(Matrix8::identity(), |acc, o| &acc * &o.matrix);
        let line_sign = match product.as_scalar() {
            Some(s @ (1 | -1)) => s,
            _ => return Err(PauliError::NonScalarProduct),
        };
        Ok(Context {
            observables,
            line_sign,
        })
    }

    /// Builds a context with a caller-chosen sign, skipping the product
    /// check. Used to model counterfactual pentagrams.
    pub fn with_sign_unchecked(observables: [Observable; 4], line_sign: i64) -> Self {
        Context {
            observables,
            line_sign,
        }
    }

    pub fn observables(&self) -> &[Observable; 4] {
        &self.observables
    }

    pub fn line_sign(&self) -> i64 {
        self.line_sign
    }
}

const fn w(a: Letter, b: Letter, c: Letter) -> PauliWord {
    PauliWord::positive([a, b, c])
}

/// Observables of the five pentagram lines, in the column order of the
/// ray table.
pub const PENTAGRAM_WORDS: [[PauliWord; 4]; 5] = {
    use Letter::{I, X, Z};
    [
        [w(Z, Z, Z), w(Z, I, I), w(I, Z, I), w(I, I, Z)],
        [w(Z, X, X), w(Z, I, I), w(I, X, I), w(I, I, X)],
        [w(X, Z, X), w(X, I, I), w(I, Z, I), w(I, I, X)],
        [w(X, X, Z), w(X, I, I), w(I, X, I), w(I, I, Z)],
        [w(Z, X, X), w(X, Z, X), w(X, X, Z), w(Z, Z, Z)],
    ]
};

pub fn mermin_pentagram() -> Vec<Context> {
    PENTAGRAM_WORDS
        .iter()
        .map(|words| Context::new(words.map(Observable::new)).expect("pentagram lines commute"))
        .collect()
}

/// The operator-level parity contradiction: every observable sits on
/// exactly two lines while the line signs multiply to -1.
pub fn pentagram_operator_contradiction(contexts: &[Context]) -> bool {
    use std::collections::BTreeMap;
    let mut occurrences: BTreeMap<PauliWord, usize> = BTreeMap::new();
    for ctx in contexts {
        for o in &ctx.observables {
            *occurrences.entry(o.word).or_default() += 1;
        }
    }
    let sign: i64 = contexts.iter().map(|c| c.line_sign).product();
    !occurrences.is_empty() && occurrences.values().all(|&n| n == 2) && sign == -1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn obs(s: &str) -> Observable {
        Observable::new(s.parse().unwrap())
    }

    #[test]
    fn zzz_is_diagonal() {
        let m = tensor_matrix(&"ZZZ".parse().unwrap());
        let diag = [1, -1, -1, 1, -1, 1, 1, -1];
        for (i, &d) in diag.iter().enumerate() {
            for j in 0..DIM {
                assert_eq!(m.get(i, j), if i == j { d } else { 0 });
            }
        }
    }

    #[test]
    fn iii_is_identity() {
        assert_eq!(tensor_matrix(&"III".parse().unwrap()), Matrix8::identity());
    }

    #[test]
    fn zxx_corner_entries() {
        let m = tensor_matrix(&"ZXX".parse().unwrap());
        assert_eq!(m.get(0, 3), 1);
        assert_eq!(m.get(4, 7), -1);
        assert_eq!(m.get(0, 0), 0);
    }

    #[test]
    fn y_is_rejected() {
        assert_eq!(
            "XYZ".parse::<PauliWord>(),
            Err(PauliError::UnsupportedLetter('Y'))
        );
        assert_eq!("XZ".parse::<PauliWord>(), Err(PauliError::WrongLength(2)));
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&obs("ZII"), &obs("IXI")));
        assert!(!commutes(&obs("ZII"), &obs("XII")));
        assert!(commutes(&obs("ZZZ"), &obs("ZXX")));
    }

    #[test]
    fn line_signs() {
        let ctx = mermin_pentagram();
        let signs: Vec<i64> = ctx.iter().map(Context::line_sign).collect();
        assert_eq!(signs, vec![1, 1, 1, 1, -1]);
    }

    #[test]
    fn ten_observables_twice_each() {
        let ctx = mermin_pentagram();
        let mut all: Vec<PauliWord> = ctx
            .iter()
            .flat_map(|c| c.observables().iter().map(|o| *o.word()))
            .collect();
        all.sort();
        let mut distinct = all.clone();
        distinct.dedup();
        assert_eq!(distinct.len(), 10);
        for w in &distinct {
            assert_eq!(all.iter().filter(|x| *x == w).count(), 2);
        }
    }

    #[test]
    fn operator_contradiction() {
        let ctx = mermin_pentagram();
        assert!(pentagram_operator_contradiction(&ctx));

        let mut flipped = ctx.clone();
        flipped[4] = Context::with_sign_unchecked(flipped[4].observables().clone(), 1);
        assert!(!pentagram_operator_contradiction(&flipped));

        for c in &ctx {
            assert!(!pentagram_operator_contradiction(std::slice::from_ref(c)));
        }
    }

    #[test]
    fn product_in_any_order() {
        for ctx in mermin_pentagram() {
            let o = ctx.observables();
            for perm in [[3, 1, 0, 2], [2, 3, 1, 0], [1, 0, 3, 2]] {
                let p = perm
                    .iter()
                    .fold(Matrix8::identity(), |acc, &k| &acc * o[k].matrix());
                assert_eq!(p, Matrix8::scalar(ctx.line_sign()));
            }
        }
    }

    #[test]
    fn matrix_and_symplectic_rules_agree_on_pentagram() {
        let ctx = mermin_pentagram();
        let obs: Vec<&Observable> = ctx.iter().flat_map(|c| c.observables().iter()).collect();
        for a in &obs {
            for b in &obs {
                assert_eq!(commutes(a, b), a.word().commutes_symplectic(b.word()));
            }
        }
    }

    fn letter() -> impl Strategy<Value = Letter> {
        prop_oneof![Just(Letter::I), Just(Letter::X), Just(Letter::Z)]
    }

    fn word() -> impl Strategy<Value = PauliWord> {
        ([letter(), letter(), letter()], any::<bool>())
            .prop_map(|(l, neg)| PauliWord::new(l, if neg { Sign::Minus } else { Sign::Plus }))
    }

    proptest! {
        #[test]
        fn squares_to_identity(w in word()) {
            let m = tensor_matrix(&w);
            prop_assert_eq!(&m * &m, Matrix8::identity());
            prop_assert_eq!(m.transpose(), m);
        }

        #[test]
        fn commutation_rules_agree(a in word(), b in word()) {
            prop_assert_eq!(
                commutes(&Observable::new(a), &Observable::new(b)),
                a.commutes_symplectic(&b)
            );
        }

        #[test]
        fn display_parses_back(w in word()) {
            prop_assert_eq!(w.to_string().parse::<PauliWord>().unwrap(), w);
        }
    }
}
