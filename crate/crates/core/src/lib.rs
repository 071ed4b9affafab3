//! Property O verification for Fano varieties of Picard rank one, given
//! their graded quantum Chevalley multiplication tables.
//!
//! Property O concerns the operator of quantum multiplication by the
//! anticanonical class at q = 1: its spectral radius `delta0` must be an
//! eigenvalue of multiplicity one, and every eigenvalue of modulus `delta0`
//! must be `delta0` times an r-th root of unity, r the Fano index.
//!
//! The crate decides this twice, independently:
//!
//! * a combinatorial route: the operator matrix is nonnegative, its support
//!   graph (the quantum Bruhat graph) is strongly connected, and the graph
//!   carries a cycle of length exactly r; together with the grading this is
//!   sufficient by Perron-Frobenius theory;
//! * a spectral route: the exact integer characteristic polynomial is
//!   computed by Faddeev-LeVerrier, all roots are found numerically, and
//!   the multiplicity and circle structure of the dominant values are
//!   measured directly, with a power-iteration cross-reading.
//!
//! The two routes must agree. Disagreement, root-finder stalls, and
//! inconsistent multiplicity measurements are errors, never silently
//! resolved.
//!
//! ```
//! use propo_core::{parse_table, validate_grading, verify_property_o, VerifyOptions};
//!
//! let text = propo_core::datasets::bundled("p2").unwrap();
//! let table = parse_table(text).unwrap();
//! assert!(validate_grading(&table).ok);
//! let verdict = verify_property_o(&table, &VerifyOptions::default()).unwrap();
//! assert!(verdict.holds);
//! assert!((verdict.spectral.delta0 - 3.0).abs() < 1e-9);
//! ```

pub mod charpoly;
pub mod datasets;
pub mod dot;
pub mod graph;
pub mod operator;
pub mod report;
pub mod spectral;
pub mod table;
pub mod verdict;

pub use charpoly::{char_poly, CharPoly};
pub use datasets::{bundled, names, BundledDataset, BUNDLED};
pub use dot::{export_dot, DotOptions};
pub use graph::{
    build_graph, find_cycle_of_length, period, strongly_connected, ConnectivityResult, Cycle,
    GraphError, PeriodResult, QuantumBruhatGraph,
};
pub use operator::{build_c1hat, check_nonnegative, OperatorMatrix};
pub use report::{build_report, VerificationReport, SCHEMA_VERSION};
pub use spectral::{
    delta0_multiplicity, power_iteration, roots, PerronPair, SpectralError, Spectrum, DEFAULT_TOL,
};
pub use table::{
    parse_table, validate_grading, BasisElement, ChevalleyTable, GradingIssue, GradingReport,
    GradingViolation, ParseError, QTerm,
};
pub use verdict::{
    classify_circle, verify_property_o, CircleMatch, LemmaRoute, PropertyOVerdict, SpectralRoute,
    VerifyError, VerifyOptions,
};
