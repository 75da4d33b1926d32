//! Prime-field scalars and edge weightings `a ∈ F_q^{C(n,2)}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::graphs::{check_vertex_count, slot_count, slot_index, LabeledGraph};
use crate::{Error, Result};

/// Supported moduli.
pub const PRIMES: [u8; 6] = [2, 3, 5, 7, 11, 13];

pub fn check_modulus(q: u32) -> Result<u8> {
    if PRIMES.contains(&(q.min(255) as u8)) && q <= 13 {
        Ok(q as u8)
    } else {
        Err(Error::UnsupportedModulus(q))
    }
}

/// An element of `F_q` for a prime `q <= 13`.
///
/// Arithmetic between elements of different fields panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u8,
    modulus: u8,
}

impl FieldElement {
    /// `value mod q`.
    pub fn new(value: u32, q: u32) -> Result<Self> {
        let q = check_modulus(q)?;
        Ok(FieldElement {
            value: (value % q as u32) as u8,
            modulus: q,
        })
    }

    pub fn zero(q: u32) -> Result<Self> {
        Self::new(0, q)
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u8 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse by Fermat, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let q = self.modulus as u32;
        let mut acc = 1u32;
        for _ in 0..q - 2 {
            acc = acc * self.value as u32 % q;
        }
        Some(FieldElement {
            value: acc as u8,
            modulus: self.modulus,
        })
    }

    #[inline]
    fn same_field(self, other: Self) -> u32 {
        assert_eq!(self.modulus, other.modulus, "mixed field arithmetic");
        self.modulus as u32
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let q = self.same_field(rhs);
        FieldElement {
            value: ((self.value as u32 + rhs.value as u32) % q) as u8,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let q = self.same_field(rhs);
        FieldElement {
            value: ((self.value as u32 + q - rhs.value as u32) % q) as u8,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let q = self.same_field(rhs);
        FieldElement {
            value: ((self.value as u32 * rhs.value as u32) % q) as u8,
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement {
            value: ((self.modulus - self.value) % self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A point of `F_q^{C(n,2)}`: one residue per edge slot of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeWeighting {
    n: u8,
    q: u8,
    values: Vec<u8>,
}

impl EdgeWeighting {
    pub fn new(n: usize, q: u32, values: Vec<u8>) -> Result<Self> {
        check_vertex_count(n)?;
        let q = check_modulus(q)?;
        if values.len() != slot_count(n) {
            return Err(Error::WeightingLength {
                expected: slot_count(n),
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|&v| v >= q) {
            return Err(Error::parse(pos, "value not reduced mod q"));
        }
        Ok(EdgeWeighting {
            n: n as u8,
            q,
            values,
        })
    }

    pub fn zeros(n: usize, q: u32) -> Result<Self> {
        Self::new(n, q, vec![0; slot_count(n)])
    }

    /// The point whose base-`q` code is `code`, slot `(1,2)` most significant.
    pub fn from_code(n: usize, q: u32, code: u128) -> Result<Self> {
        let mut w = Self::zeros(n, q)?;
        let q = q as u128;
        let mut rest = code;
        for v in w.values.iter_mut().rev() {
            *v = (rest % q) as u8;
            rest /= q;
        }
        if rest != 0 {
            return Err(Error::Overflow);
        }
        Ok(w)
    }

    /// Inverse of [`EdgeWeighting::from_code`].
    pub fn code(&self) -> u128 {
        self.values
            .iter()
            .fold(0u128, |acc, &v| acc * self.q as u128 + v as u128)
    }

    /// The 0/1 weighting of a graph over `F_2`.
    pub fn from_graph(g: &LabeledGraph) -> Self {
        let n = g.n();
        let mut values = vec![0u8; slot_count(n)];
        for (i, j) in g.edges() {
            values[slot_index(n, i, j)] = 1;
        }
        EdgeWeighting {
            n: n as u8,
            q: 2,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Weight of the edge `ij` (1-based).
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.values[slot_index(self.n(), i, j)]
    }

    pub fn element(&self, i: usize, j: usize) -> FieldElement {
        FieldElement {
            value: self.get(i, j),
            modulus: self.q,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: u8) {
        let n = self.n();
        self.values[slot_index(n, i, j)] = value % self.q;
    }

    fn require_binary(&self) -> Result<()> {
        if self.q == 2 {
            Ok(())
        } else {
            Err(Error::RequiresBinaryField(self.q))
        }
    }

    /// `G_a` over `F_2`: edge `ij` iff `a_ij = 1`.
    pub fn to_graph(&self) -> Result<LabeledGraph> {
        self.require_binary()?;
        Ok(self.weight_induced_subgraph(1))
    }

    /// Flips every coordinate over `F_2`.
    pub fn complement(&self) -> Result<Self> {
        self.require_binary()?;
        Ok(EdgeWeighting {
            n: self.n,
            q: 2,
            values: self.values.iter().map(|&v| 1 - v).collect(),
        })
    }

    /// The graph of edges whose weight equals `alpha` (reduced mod `q`).
    pub fn weight_induced_subgraph(&self, alpha: u8) -> LabeledGraph {
        let alpha = alpha % self.q;
        let bits = self
            .values
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == alpha)
            .fold(0u128, |acc, (s, _)| acc | 1 << s);
        LabeledGraph::from_bits(self.n(), bits).expect("slot mask within range")
    }

    /// Occurrence counts of the values that occur, largest first.
    pub fn classify_type(&self) -> TypePartition {
        TypePartition::of_values(&self.values, self.q)
    }
}

pub fn weighting_to_graph(a: &EdgeWeighting) -> Result<LabeledGraph> {
    a.to_graph()
}

pub fn complement_weighting(a: &EdgeWeighting) -> Result<EdgeWeighting> {
    a.complement()
}

pub fn weight_induced_subgraph(a: &EdgeWeighting, alpha: FieldElement) -> Result<LabeledGraph> {
    if alpha.modulus() != a.q() {
        return Err(Error::ModulusMismatch {
            expected: a.q(),
            found: alpha.modulus(),
        });
    }
    Ok(a.weight_induced_subgraph(alpha.value()))
}

pub fn classify_type(a: &EdgeWeighting) -> TypePartition {
    a.classify_type()
}

/// `q:n:digits`, slot `(1,2)` first; `q = 2` points may also be read as
/// `2:n:0x<hex>` with the same base-2 code.
impl fmt::Display for EdgeWeighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.q, self.n)?;
        for &v in &self.values {
            // q <= 13, so hex digits cover every residue.
            f.write_char(char::from_digit(v as u32, 16).unwrap_or('?'))?;
        }
        Ok(())
    }
}

impl FromStr for EdgeWeighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.splitn(3, ':');
        let (Some(q_text), Some(n_text), Some(digits)) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::parse(0, "expected `q:n:digits`"));
        };
        let q: u32 = q_text
            .parse()
            .map_err(|_| Error::parse(0, "modulus is not an integer"))?;
        check_modulus(q).map_err(|_| Error::parse(0, "modulus must be a prime in 2..=13"))?;
        let n_pos = q_text.len() + 1;
        let n: usize = n_text
            .parse()
            .map_err(|_| Error::parse(n_pos, "vertex count is not an integer"))?;
        check_vertex_count(n).map_err(|_| Error::parse(n_pos, "vertex count must be in 1..=12"))?;
        let start = n_pos + n_text.len() + 1;
        let d = slot_count(n);

        if let Some(hex) = digits.strip_prefix("0x").filter(|_| q == 2) {
            let mut code = 0u128;
            for (i, c) in hex.chars().enumerate() {
                let digit = c.to_digit(16).ok_or_else(|| {
                    Error::parse(start + 2 + i, alloc::format!("`{c}` is not a hex digit"))
                })?;
                code = code
                    .checked_mul(16)
                    .map(|c| c + digit as u128)
                    .filter(|&c| d == 128 || c >> d == 0)
                    .ok_or_else(|| Error::parse(start + 2 + i, "hex code exceeds 2^C(n,2)"))?;
            }
            if hex.is_empty() {
                return Err(Error::parse(start + 2, "empty hex code"));
            }
            return Self::from_code(n, 2, code);
        }

        let mut values = Vec::with_capacity(d);
        for (i, c) in digits.chars().enumerate() {
            match c.to_digit(16) {
                Some(v) if v < q => values.push(v as u8),
                _ => {
                    return Err(Error::parse(
                        start + i,
                        alloc::format!("digit `{c}` is not a residue mod {q}"),
                    ))
                }
            }
        }
        if values.len() != d {
            return Err(Error::parse(
                start + values.len().min(d),
                alloc::format!("expected {d} digits, found {}", values.len()),
            ));
        }
        Self::new(n, q, values)
    }
}

/// How many edge slots carry each occurring field value, as a partition of
/// `C(n,2)` with parts in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TypePartition(Vec<u32>);

impl TypePartition {
    pub fn of_values(values: &[u8], q: u8) -> Self {
        let mut counts = [0u32; 16];
        for &v in values {
            counts[v as usize] += 1;
        }
        let mut parts: Vec<u32> = counts[..q as usize]
            .iter()
            .copied()
            .filter(|&c| c > 0)
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        TypePartition(parts)
    }

    /// Parts must be positive; they are sorted into decreasing order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::parse(0, "partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TypePartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Dominance-style listing order: `(6) < (5,1) < (4,2) < (4,1,1) < ...`,
/// i.e. reverse lexicographic on the parts.
impl Ord for TypePartition {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for TypePartition {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TypePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{p}")?;
        }
        f.write_char(')')
    }
}

impl FromStr for TypePartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected `(p1,p2,...)`"))?;
        let mut parts = Vec::new();
        if inner.trim().is_empty() {
            return Self::new(parts);
        }
        let mut at = 1;
        for tok in inner.split(',') {
            parts.push(
                tok.trim()
                    .parse()
                    .map_err(|_| Error::parse(at, "partition part is not an integer"))?,
            );
            at += tok.len() + 1;
        }
        Self::new(parts)
    }
}
