//! Analysis toolkit for route-generated translation-invariant CSS codes
//! on checkerboard tori: words and their symmetry classes, support
//! patterns and difference lattices, explicit check matrices, exact
//! parameters with a bounded-weight distance screen, quasi-cyclic
//! reductions, and parameter scans over word families.

pub mod cli;
pub mod gf2;
pub mod pattern;
pub mod qc;
pub mod search;
pub mod torus;
pub mod word;

/// Execution strategy for the heavier searches. The default follows the
/// `parallel` feature; the sequential path always exists as a fallback
/// and for benchmarking comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}
