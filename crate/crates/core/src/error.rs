use thiserror::Error;

/// Errors produced by the walk engines and validators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A domain-type invariant failed during construction or validation.
    #[error("invariant `{invariant}` violated: measured {measured:.6e}, allowed {bound:.6e}")]
    Invariant {
        invariant: &'static str,
        measured: f64,
        bound: f64,
    },

    /// A coin operator was applied to a state of a different dimension.
    #[error("dimension mismatch: operator is {operator}x{operator}, state is {state}x{state}")]
    DimensionMismatch { operator: usize, state: usize },

    /// An operation received a parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Oscillatory quadrature failed to reach the requested tolerance.
    #[error(
        "quadrature did not converge: residual {achieved:.3e} after {intervals} intervals \
         (requested {requested:.3e})"
    )]
    QuadratureConvergence {
        achieved: f64,
        requested: f64,
        intervals: usize,
    },

    /// A walk state was asked to step past its allocated lattice.
    #[error("step {requested} exceeds the walk capacity n_max = {n_max}")]
    StepLimit { requested: usize, n_max: usize },

    /// Exhaustive enumeration was requested for too many steps.
    #[error("exhaustive enumeration supports n <= {limit}, got n = {n}")]
    EnumerationTooLarge { n: usize, limit: usize },

    /// Two distributions with different step counts were compared.
    #[error("step-count mismatch: {a} vs {b}")]
    StepCountMismatch { a: usize, b: usize },
}

/// Outcome of measuring one invariant of a domain type.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCheck {
    /// Stable identifier, e.g. `"coin2.trace"`.
    pub invariant: &'static str,
    /// Measured value of the invariant quantity.
    pub measured: f64,
    /// Limit the measurement is compared against.
    pub bound: f64,
    pub passed: bool,
}

/// Report-style validation result: one entry per invariant, never an error.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub(crate) fn push_max(&mut self, invariant: &'static str, measured: f64, bound: f64) {
        self.checks.push(InvariantCheck {
            invariant,
            measured,
            bound,
            passed: measured <= bound,
        });
    }

    pub(crate) fn push_min(&mut self, invariant: &'static str, measured: f64, bound: f64) {
        self.checks.push(InvariantCheck {
            invariant,
            measured,
            bound,
            passed: measured >= bound,
        });
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// Converts the report into a `Result`, surfacing the first failed invariant.
    pub fn into_result(self) -> Result<(), Error> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::Invariant {
                invariant: c.invariant,
                measured: c.measured,
                bound: c.bound,
            }),
        }
    }
}
