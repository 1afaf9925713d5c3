//! Violation reports shared by all verification suites.

use std::fmt;

use crate::exactalg::{field_names, fmt_rational, Poly, Rational};

/// Identifies the relation a residual belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    // Poisson property of a single bracket
    P01,
    P02,
    P03,
    P04,
    P05,
    P06,
    P07,
    // compatibility with the constant bracket
    C1,
    C2,
    C3,
    C4,
    C5,
    Bw,
    // pointwise geometry
    Peter1,
    Peter2,
    Gauss,
    Commute,
    // integrability system for canonical data
    Ass1,
    Ass2,
    // hierarchy identities
    BihamA,
    BihamB,
    TailExact,
    Involution,
}

impl RelationId {
    pub fn as_str(self) -> &'static str {
        use RelationId::*;
        match self {
            P01 => "01",
            P02 => "02",
            P03 => "03",
            P04 => "04",
            P05 => "05",
            P06 => "06",
            P07 => "07",
            C1 => "1",
            C2 => "2",
            C3 => "3",
            C4 => "4",
            C5 => "5",
            Bw => "bw",
            Peter1 => "peter1",
            Peter2 => "peter2",
            Gauss => "gauss",
            Commute => "commute",
            Ass1 => "ass1",
            Ass2 => "ass2",
            BihamA => "biham-a",
            BihamB => "biham-b",
            TailExact => "tail-exact",
            Involution => "involution",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Residual of a failed identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    /// Polynomial in the field variables `u^1..u^N`.
    Field(Poly),
    /// Polynomial in `u^1..u^N` followed by `u^1_x..u^N_x`.
    Differential(Poly),
    /// Exact value at a sample point.
    Point(Rational),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        use num::Zero;
        match self {
            Residual::Field(p) | Residual::Differential(p) => p.is_zero(),
            Residual::Point(r) => r.is_zero(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Field(p) => write!(f, "{p}"),
            Residual::Differential(p) => {
                let n = p.nvars() / 2;
                let mut names = field_names(n);
                names.extend((1..=n).map(|i| format!("u{i}_x")));
                f.write_str(&p.display_with(&names))
            }
            Residual::Point(r) => f.write_str(&fmt_rational(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: RelationId,
    /// 0-based index tuple; its meaning depends on the relation.
    pub indices: Vec<usize>,
    pub residual: Residual,
}

/// Ordered list of violated identities; empty means every requested relation
/// holds exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    entries: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `residual` unless it vanishes.
    pub fn record(&mut self, relation: RelationId, indices: Vec<usize>, residual: Residual) {
        if !residual.is_zero() {
            self.entries.push(Violation { relation, indices, residual });
        }
    }

    pub fn record_poly(&mut self, relation: RelationId, indices: Vec<usize>, residual: Poly) {
        self.record(relation, indices, Residual::Field(residual));
    }

    pub fn extend(&mut self, other: ViolationReport) {
        self.entries.extend(other.entries);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Violation] {
        &self.entries
    }

    pub fn has(&self, relation: RelationId) -> bool {
        self.entries.iter().any(|v| v.relation == relation)
    }

    pub fn relations(&self) -> Vec<RelationId> {
        let mut r: Vec<_> = self.entries.iter().map(|v| v.relation).collect();
        r.dedup();
        r
    }

    /// Keeps only entries for the given relations.
    pub fn filtered(&self, keep: &[RelationId]) -> ViolationReport {
        ViolationReport { entries: self.entries.iter().filter(|v| keep.contains(&v.relation)).cloned().collect() }
    }

    /// Stable order: by relation, then index tuple.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| a.relation.cmp(&b.relation).then_with(|| a.indices.cmp(&b.indices)));
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "no violations");
        }
        for v in &self.entries {
            let idx: Vec<String> = v.indices.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(f, "({}) [{}]: {}", v.relation, idx.join(","), v.residual)?;
        }
        Ok(())
    }
}
