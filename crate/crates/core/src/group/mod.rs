//! Finite groups stored as dense multiplication tables.
//!
//! Elements are the indices `0..order`. Every algorithm in the crate works on
//! indices; labels are only for display.

mod algo;
mod construct;
mod table;

use serde::Serialize;

pub use algo::{
    center, centralizer, commutator, conjugacy_classes, derived_series, generated_subgroup,
    is_normal_subgroup, is_subgroup, quotient, ConjugacyPartition, DerivedSeries, Quotient,
};
pub(crate) use construct::pow_mod;
pub use construct::{
    cyclic, dihedral, direct_product, is_prime, semidirect_cyclic, symmetric, transposition,
    SemidirectParams,
};
pub use table::{parse_cayley_table, write_cayley_table};

/// Index of a group element.
pub type Elem = usize;

/// Size limits applied by the constructors and the table parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest order for which associativity is checked on construction.
    pub associativity_cap: usize,
    /// Largest order any constructor will build.
    pub order_cap: usize,
    /// Largest `n` accepted by [`symmetric`].
    pub symmetric_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            associativity_cap: 512,
            order_cap: 20_000,
            symmetric_cap: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("S_{n} exceeds the symmetric-group cap {cap}")]
    SymmetricCap { n: usize, cap: usize },
    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("action multiplier {k} must satisfy 1 <= k < {p}")]
    BadMultiplier { p: u64, k: u64 },
    #[error("{k}^{m} is not 1 mod {p}, so s r s^-1 = r^k does not define an action")]
    BadAction { p: u64, m: u64, k: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("row {row}, column {col}: entry {value} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("not a Latin square: entry {value} at row {row}, column {col} repeats in its {axis}")]
    NotLatin {
        row: usize,
        col: usize,
        value: usize,
        axis: &'static str,
    },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("associativity fails: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("subset is not a normal subgroup")]
    NotNormal,
}

/// A finite group given by its full multiplication table.
///
/// Immutable after construction. `mul(a, b)` is the product `a * b`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: Elem,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<Option<String>>,
    generators: Vec<Elem>,
    associativity_verified: bool,
}

/// Name and order, as serialized into reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub order: usize,
}

impl FiniteGroup {
    /// Validates a row-major multiplication table and builds the group.
    ///
    /// Identity and inverses are inferred. Associativity is checked when
    /// `order <= limits.associativity_cap`; above the cap the group records
    /// that it was not verified. When `generators` is `None` a greedy
    /// generating set is computed.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<u32>,
        labels: Vec<Option<String>>,
        generators: Option<Vec<Elem>>,
        limits: &Limits,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if order > limits.order_cap {
            return Err(GroupError::OrderCap {
                order,
                cap: limits.order_cap,
            });
        }
        if mul.len() != order * order {
            return Err(GroupError::TableSize {
                expected: order * order,
                got: mul.len(),
            });
        }
        for (i, &v) in mul.iter().enumerate() {
            if v as usize >= order {
                return Err(GroupError::EntryOutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v as usize,
                });
            }
        }
        check_latin(order, &mul)?;

        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;

        // The Latin property guarantees exactly one right inverse per row.
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| at(x, y) == identity)
                .ok_or(GroupError::NoIdentity)?;
            *slot = y as u32;
        }

        let associativity_verified = order <= limits.associativity_cap;
        if associativity_verified {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }

        let mut labels = labels;
        labels.resize(order, None);

        let mut group = FiniteGroup {
            name: name.into(),
            order,
            identity,
            mul,
            inv,
            labels,
            generators: Vec::new(),
            associativity_verified,
        };
        group.generators = match generators {
            Some(gens) => {
                for &g in &gens {
                    group.check(g)?;
                }
                gens
            }
            None => group.greedy_generators(),
        };
        Ok(group)
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        for x in 0..self.order {
            if !reached[x] {
                gens.push(x);
                for y in algo::closure(self, &gens) {
                    reached[y] = true;
                }
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            name: self.name.clone(),
            order: self.order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn associativity_verified(&self) -> bool {
        self.associativity_verified
    }

    /// Display label, falling back to the index.
    pub fn label(&self, x: Elem) -> String {
        match self.labels.get(x) {
            Some(Some(l)) => l.clone(),
            _ => x.to_string(),
        }
    }

    pub(crate) fn raw_label(&self, x: Elem) -> Option<&str> {
        self.labels.get(x).and_then(|l| l.as_deref())
    }

    pub fn element_by_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn check(&self, x: Elem) -> Result<Elem, GroupError> {
        if x < self.order {
            Ok(x)
        } else {
            Err(GroupError::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    pub(crate) fn table(&self) -> &[u32] {
        &self.mul
    }
}

fn check_latin(order: usize, mul: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![usize::MAX; order];
    for row in 0..order {
        for col in 0..order {
            let v = mul[row * order + col] as usize;
            if seen[v] == row {
                return Err(GroupError::NotLatin {
                    row,
                    col,
                    value: v,
                    axis: "row",
                });
            }
            seen[v] = row;
        }
    }
    seen.fill(usize::MAX);
    for col in 0..order {
        for row in 0..order {
            let v = mul[row * order + col] as usize;
            if seen[v] == col {
                return Err(GroupError::NotLatin {
                    row,
                    col,
                    value: v,
                    axis: "column",
                });
            }
            seen[v] = col;
        }
    }
    Ok(())
}
