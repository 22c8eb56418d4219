//! Numerical laboratory for solitary waves of the cubic nonlinear Dirac
//! (Soler) equation in three dimensions: ground-state profiles, radial
//! linearizations on a half-line spectral grid, their spectra, frequency
//! sweeps with bifurcation tracking, and SU(1,1) charges.

pub mod charges;
pub mod config;
pub mod error;
pub mod grid;
pub mod io;
pub mod linearization;
pub mod plot;
pub mod profile;
pub mod spectra;
pub mod sweep;

pub use charges::{apply_su11, charges, energy, make_bifrequency, one_frequency, RadialQuadrature, SpinorField, Su11};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use grid::{build_grid, HalfLineGrid};
pub use linearization::{assemble, assemble_a, assemble_a00, assemble_l0, assemble_l00, Channel, ChannelSpec, EtaAlignment, LinearOperator};
pub use profile::{solve_profile, ProfileCache, ShootingOptions, SolitonProfile};
pub use spectra::{analyze_channel, classify, compute_spectrum, residual_check, AnalysisOptions, SpectrumRecord, Tag, Tolerances, C64};
pub use sweep::{detect_events, joint_window, omega_p_curve, stability_report, sweep, BifurcationEvent, EventKind, StabilityReport, SweepOptions, SweepResult};
