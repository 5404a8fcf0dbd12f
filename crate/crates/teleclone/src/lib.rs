//! `teleclone` simulates a two-receiver probabilistic quantum processor:
//! a restricted phase gate U_θ is applied to an arbitrary data qudit and
//! the result is distributed to two parties as asymmetric approximate
//! clones, using only a shared entangled resource, one Bell-pair
//! measurement, and classically communicated corrections.
//!
//! Two equivalent schemes are implemented for any even qudit dimension D:
//!
//! - **processor** — the gate is encoded into the resource state and the
//!   sender measures in the standard generalized Bell basis;
//! - **local-gate** — the resource stays fixed and the gate phase moves
//!   into a θ-dependent Bell basis.
//!
//! Either way, D of the D² outcomes are correctable by local phase
//! operators (success probability 1/D); a joint completion unitary on the
//! receivers' side rescues the rest when nonlocal operations are allowed.
//! Output fidelities are checked against their closed forms, and the
//! receivers' density matrices against analytic references.
//!
//! ```
//! use teleclone::protocol::run_exhaustive;
//! use teleclone::states::{data_state, Completion, ProtocolConfig, Scheme};
//! use num_complex::Complex64;
//!
//! let cfg = ProtocolConfig::new(2, 0.5, 0.7, Scheme::Processor, Completion::LoccOnly).unwrap();
//! let data = data_state(2, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
//! let runs = run_exhaustive(&cfg, &data).unwrap();
//! let successes = runs.iter().filter(|r| r.success).count();
//! assert_eq!(successes, 2); // half of the four qubit outcomes commute
//! ```
//!
//! Every major capability has a runnable example:
//!
//! ```text
//! cargo run --example protocol_walkthrough   # one qubit run, step by step
//! cargo run --example enumerate_outcomes     # all outcomes at D = 4
//! cargo run --example bell_bases             # both basis families, checked
//! cargo run --example fidelity_sweep         # simulated vs closed forms
//! cargo run --example nonlocal_completion    # rescuing failure branches
//! cargo run --example scheme_equivalence     # processor vs local-gate
//! cargo run --example monte_carlo            # sampled success frequencies
//! ```
//!
//! The `teleclone` binary exposes the same machinery as `run`, `enumerate`,
//! `sweep`, and `verify` subcommands.

pub mod analysis;
pub mod bell;
pub mod cli;
pub mod error;
pub mod protocol;
pub mod states;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use states::{Completion, ProtocolConfig, Scheme};
pub use tensor::{DensityMatrix, Label, Operator, PureState};
