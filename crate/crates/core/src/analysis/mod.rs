//! Chaos diagnostics built on the integrator.

pub mod flights;
pub mod lyapunov;
pub mod section;
pub mod sweep;

pub use flights::{levy_flights, Flight, FlightConfig, FlightStats};
pub use lyapunov::{lyapunov_max, LyapunovConfig, LyapunovEstimate};
pub use section::{poincare_section, Axis, Direction, PoincareSection, SectionDef, SectionFunction};
pub use sweep::{CellResult, CellStatus, Diagnostic, SweepAxis, SweepCell, SweepGrid, SweepParam, SweepResult};
