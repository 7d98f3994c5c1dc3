//! Hamiltonicity machinery for small simple graphs: degree-sequence
//! sufficiency conditions, degree-sum closures, exact toughness, an exact
//! Hamiltonicity decider with certificates, and an exhaustive verification
//! harness that checks theorem statements against these oracles.
//!
//! ```
//! use toughcycle::{families, hamilton, toughness};
//!
//! let fam = families::counterexample_graph(7).unwrap();
//! let (x, y) = (fam.label("x").unwrap(), fam.label("y").unwrap());
//! assert!(!hamilton::is_hamiltonian(&fam.graph).unwrap());
//! assert!(hamilton::is_hamiltonian(&fam.graph.add_edge(x, y).unwrap()).unwrap());
//! assert_eq!(toughness::toughness(&fam.graph).unwrap().value.to_string(), "1/1");
//! ```

pub mod closure;
pub mod codec;
pub mod conditions;
mod error;
pub mod families;
pub mod graph;
pub mod hamilton;
pub mod harness;
pub mod toughness;

pub use error::{Error, Result};
pub use graph::{DegreeSequence, Graph};
pub use toughness::{Rational, Toughness};
