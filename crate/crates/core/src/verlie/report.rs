use serde::Serialize;

use crate::scalars::matrix::is_zero_vec;
use crate::scalars::Vector;

/// Failing witnesses kept per axiom; further failures are only counted.
const MAX_WITNESSES: usize = 8;

/// A failing input tuple together with the nonzero residue of the axiom.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub axiom: String,
    pub inputs: Vec<Vector>,
    pub residue: Vector,
}

/// Outcome of one axiom over all tuples it was evaluated on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub tuples_checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl AxiomCheck {
    pub fn new(axiom: &str) -> Self {
        AxiomCheck { axiom: axiom.to_string(), tuples_checked: 0, failures: 0, witnesses: Vec::new() }
    }

    pub fn record(&mut self, inputs: Vec<Vector>, residue: Vector) {
        self.record_with(|| inputs, residue);
    }

    /// Like `record`, but only builds the input tuple when it is kept as a witness.
    pub fn record_with(&mut self, inputs: impl FnOnce() -> Vec<Vector>, residue: Vector) {
        self.tuples_checked += 1;
        if is_zero_vec(&residue) {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { axiom: self.axiom.clone(), inputs: inputs(), residue });
        }
    }

    /// Records a failure that has no natural residue vector.
    pub fn fail(&mut self, inputs: Vec<Vector>) {
        self.tuples_checked += 1;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { axiom: self.axiom.clone(), inputs, residue: Vec::new() });
        }
    }

    pub fn pass(&mut self) {
        self.tuples_checked += 1;
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A list of axiom checks.
#[derive(Clone, Debug, PartialEq, Serialize, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.checks.iter().find_map(|c| c.witnesses.first())
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.axiom.as_str()).collect()
    }

    pub fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.checks.extend(other.checks);
        self
    }
}
