//! Dimensionless parameters, phase-space states and the two vector fields.
//!
//! Complex expectation values are carried as real pairs:
//! `a <-> ax + i ay`, `a~ <-> atx + i aty`, `S- <-> sx + i sy`. Time is
//! `tau = Omega_0 t`; positions are in units of `1/k_f` and momenta in
//! units of `hbar k_f`. The Bloch vector has unit length.

use libm::{cos, sin, sqrt};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::integrate::VectorField;
use crate::thermal::{thermal_factors, TemperatureSpec, ThermalFactors};
use crate::{Error, Result};

/// Default recoil parameter `alpha = hbar k_f^2 / (m Omega_0)`.
pub const DEFAULT_ALPHA: f64 = 1e-3;

/// Tolerance on `|s| = 1` when a state is constructed through a checked path.
pub const SPIN_NORM_TOL: f64 = 1e-12;

/// Which form of the finite-temperature equations to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// The thermal equations of motion transcribed as printed, with the
    /// `dS+/dt` bracket taken from `B1` and `p~` held constant.
    Literal,
    /// Heisenberg equations of `H - H~` after the Bogoliubov substitution,
    /// with the tilde sector uncoupled from the spin. Reduces to the
    /// zero-temperature flow at `theta = 0`.
    #[default]
    Consistent,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::Consistent => "consistent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Recoil parameter, `> 0`.
    pub alpha: f64,
    /// Detuning `(omega_f - omega_a) / Omega_0`.
    pub delta: f64,
    pub temperature: TemperatureSpec,
    pub variant: Variant,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            alpha: DEFAULT_ALPHA,
            delta: 0.0,
            temperature: TemperatureSpec::Zero,
            variant: Variant::Consistent,
        }
    }
}

impl SystemParams {
    pub fn new(
        alpha: f64,
        delta: f64,
        temperature: TemperatureSpec,
        variant: Variant,
    ) -> Result<Self> {
        let p = SystemParams {
            alpha,
            delta,
            temperature,
            variant,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: "must be positive and finite",
            });
        }
        if !self.delta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta",
                reason: "must be finite",
            });
        }
        self.temperature.validate()
    }

    pub fn factors(&self) -> Result<ThermalFactors> {
        thermal_factors(self.temperature)
    }
}

/// Named phase-space coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    X,
    P,
    PTilde,
    Sx,
    Sy,
    Sz,
    Ax,
    Ay,
    Atx,
    Aty,
    /// Raw component index, for layouts without names.
    Index(usize),
}

impl Coord {
    pub fn name(&self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::P => "p",
            Coord::PTilde => "p_tilde",
            Coord::Sx => "sx",
            Coord::Sy => "sy",
            Coord::Sz => "sz",
            Coord::Ax => "ax",
            Coord::Ay => "ay",
            Coord::Atx => "atx",
            Coord::Aty => "aty",
            Coord::Index(_) => "index",
        }
    }
}

/// Component ordering of a state vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `[x, p, sx, sy, sz, ax, ay]`
    ZeroT,
    /// `[x, p, p_tilde, sx, sy, sz, ax, ay, atx, aty]`
    Thermal,
    /// Unnamed components; only `Coord::Index` resolves.
    Raw(usize),
}

impl Layout {
    pub fn dim(&self) -> usize {
        match self {
            Layout::ZeroT => 7,
            Layout::Thermal => 10,
            Layout::Raw(n) => *n,
        }
    }

    pub fn index(&self, c: Coord) -> Option<usize> {
        use Coord::*;
        let i = match (self, c) {
            (_, Index(i)) => Some(i),
            (Layout::Raw(_), _) => None,
            (Layout::ZeroT, X) => Some(0),
            (Layout::ZeroT, P) => Some(1),
            (Layout::ZeroT, Sx) => Some(2),
            (Layout::ZeroT, Sy) => Some(3),
            (Layout::ZeroT, Sz) => Some(4),
            (Layout::ZeroT, Ax) => Some(5),
            (Layout::ZeroT, Ay) => Some(6),
            (Layout::ZeroT, _) => None,
            (Layout::Thermal, X) => Some(0),
            (Layout::Thermal, P) => Some(1),
            (Layout::Thermal, PTilde) => Some(2),
            (Layout::Thermal, Sx) => Some(3),
            (Layout::Thermal, Sy) => Some(4),
            (Layout::Thermal, Sz) => Some(5),
            (Layout::Thermal, Ax) => Some(6),
            (Layout::Thermal, Ay) => Some(7),
            (Layout::Thermal, Atx) => Some(8),
            (Layout::Thermal, Aty) => Some(9),
        }?;
        (i < self.dim()).then_some(i)
    }

    /// Indices of `(sx, sy, sz)`, if the layout has a spin.
    pub fn spin(&self) -> Option<[usize; 3]> {
        Some([
            self.index(Coord::Sx)?,
            self.index(Coord::Sy)?,
            self.index(Coord::Sz)?,
        ])
    }
}

/// Anything carrying a Bloch vector.
pub trait SpinState {
    fn spin(&self) -> [f64; 3];
}

/// `sx^2 + sy^2 + sz^2`.
pub fn spin_norm<S: SpinState + ?Sized>(s: &S) -> f64 {
    let [sx, sy, sz] = s.spin();
    sx * sx + sy * sy + sz * sz
}

fn check_spin(s: [f64; 3]) -> Result<()> {
    let n = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
    if !n.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if (n - 1.0).abs() > SPIN_NORM_TOL {
        return Err(Error::InvalidParameter {
            name: "spin",
            reason: "Bloch vector must have unit length",
        });
    }
    Ok(())
}

/// Zero-temperature phase-space point. Also used for its time derivative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ZeroTState {
    pub x: f64,
    pub p: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub ax: f64,
    pub ay: f64,
}

pub type ZeroTDerivative = ZeroTState;

impl ZeroTState {
    /// Checked constructor: all components finite and `|s| = 1`.
    pub fn new(x: f64, p: f64, spin: [f64; 3], field: [f64; 2]) -> Result<Self> {
        let s = ZeroTState {
            x,
            p,
            sx: spin[0],
            sy: spin[1],
            sz: spin[2],
            ax: field[0],
            ay: field[1],
        };
        if !s.is_finite() {
            return Err(Error::NonFiniteState);
        }
        check_spin(spin)?;
        Ok(s)
    }

    pub fn to_array(&self) -> [f64; 7] {
        [self.x, self.p, self.sx, self.sy, self.sz, self.ax, self.ay]
    }

    pub fn from_array(a: [f64; 7]) -> Self {
        let [x, p, sx, sy, sz, ax, ay] = a;
        ZeroTState {
            x,
            p,
            sx,
            sy,
            sz,
            ax,
            ay,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

impl SpinState for ZeroTState {
    fn spin(&self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }
}

/// Finite-temperature phase-space point. Also used for its time derivative.
///
/// `(ax, ay)` are the quadratures of the thermal operator `a(beta)` and
/// `(atx, aty)` those of its tilde partner.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThermalState {
    pub x: f64,
    pub p: f64,
    pub p_tilde: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub ax: f64,
    pub ay: f64,
    pub atx: f64,
    pub aty: f64,
}

pub type ThermalDerivative = ThermalState;

impl ThermalState {
    pub fn new(
        x: f64,
        p: f64,
        p_tilde: f64,
        spin: [f64; 3],
        field: [f64; 2],
        tilde_field: [f64; 2],
    ) -> Result<Self> {
        let s = ThermalState {
            x,
            p,
            p_tilde,
            sx: spin[0],
            sy: spin[1],
            sz: spin[2],
            ax: field[0],
            ay: field[1],
            atx: tilde_field[0],
            aty: tilde_field[1],
        };
        if !s.is_finite() {
            return Err(Error::NonFiniteState);
        }
        check_spin(spin)?;
        Ok(s)
    }

    /// Embeds a zero-temperature state with vanishing tilde data.
    pub fn from_zero_t(s: &ZeroTState) -> Self {
        ThermalState {
            x: s.x,
            p: s.p,
            p_tilde: 0.0,
            sx: s.sx,
            sy: s.sy,
            sz: s.sz,
            ax: s.ax,
            ay: s.ay,
            atx: 0.0,
            aty: 0.0,
        }
    }

    /// Drops the tilde sector.
    pub fn physical_part(&self) -> ZeroTState {
        ZeroTState {
            x: self.x,
            p: self.p,
            sx: self.sx,
            sy: self.sy,
            sz: self.sz,
            ax: self.ax,
            ay: self.ay,
        }
    }

    pub fn to_array(&self) -> [f64; 10] {
        [
            self.x,
            self.p,
            self.p_tilde,
            self.sx,
            self.sy,
            self.sz,
            self.ax,
            self.ay,
            self.atx,
            self.aty,
        ]
    }

    pub fn from_array(a: [f64; 10]) -> Self {
        let [x, p, p_tilde, sx, sy, sz, ax, ay, atx, aty] = a;
        ThermalState {
            x,
            p,
            p_tilde,
            sx,
            sy,
            sz,
            ax,
            ay,
            atx,
            aty,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Expectation of the bare field operator, `a = cosh(theta) a(beta) +
    /// sinh(theta) a~^+(beta)`, as `(re, im)`.
    pub fn physical_field(&self, f: &ThermalFactors) -> (f64, f64) {
        (
            f.cosh_theta * self.ax + f.sinh_theta * self.atx,
            f.cosh_theta * self.ay - f.sinh_theta * self.aty,
        )
    }
}

impl SpinState for ThermalState {
    fn spin(&self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }
}

/// Right-hand side of the zero-temperature Jaynes-Cummings flow on
/// `(x, p, s, a)` with the field `a` given explicitly. Shared by both the
/// zero-temperature field and the consistent thermal field so that their
/// reduction is bitwise exact.
#[inline]
fn jc_rhs(
    alpha: f64,
    delta: f64,
    x: f64,
    p: f64,
    s: [f64; 3],
    a: (f64, f64),
) -> (f64, f64, [f64; 3]) {
    let [sx, sy, sz] = s;
    let (ax, ay) = a;
    let (sn, cs) = (sin(x), cos(x));
    let dx = alpha * p;
    let dp = -2.0 * (ax * sx + ay * sy) * sn;
    let dsx = -delta * sy + 2.0 * ay * sz * cs;
    let dsy = delta * sx - 2.0 * ax * sz * cs;
    let dsz = 2.0 * (ax * sy - ay * sx) * cs;
    (dx, dp, [dsx, dsy, dsz])
}

fn zero_t_rhs(alpha: f64, delta: f64, s: &ZeroTState) -> ZeroTState {
    let (dx, dp, [dsx, dsy, dsz]) =
        jc_rhs(alpha, delta, s.x, s.p, [s.sx, s.sy, s.sz], (s.ax, s.ay));
    let cs = cos(s.x);
    ZeroTState {
        x: dx,
        p: dp,
        sx: dsx,
        sy: dsy,
        sz: dsz,
        ax: -s.sy * cs,
        ay: s.sx * cs,
    }
}

/// Zero-temperature equations of motion.
///
/// `dsz/dtau = 2 (ax sy - ay sx) cos x` completes the six printed equations;
/// it is the unique choice that conserves both `|s|` and
/// `ax^2 + ay^2 + sz`. `params.temperature` is ignored.
pub fn deriv_zero_t(s: &ZeroTState, params: &SystemParams) -> Result<ZeroTDerivative> {
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    Ok(zero_t_rhs(params.alpha, params.delta, s))
}

/// Spin drive coefficients `(B1, B2)`, each as `(re, im)`.
///
/// The spin couples through `B1 S- + B2 S+`. For the consistent variant
/// `B1 = -conj(a)` with `a` the bare field expectation; for the literal
/// variant they are the printed combinations of `a(beta)`, `a~(beta)` and
/// their conjugates.
pub fn spin_drive(
    s: &ThermalState,
    f: &ThermalFactors,
    variant: Variant,
) -> ((f64, f64), (f64, f64)) {
    let (sh, ch) = (f.sinh_theta, f.cosh_theta);
    match variant {
        Variant::Consistent => {
            let (re, im) = s.physical_field(f);
            ((-re, im), (-re, -im))
        }
        Variant::Literal => {
            // B1 = a sh - a~ sh + a~* ch - a* ch
            let b1r = sh * s.ax - sh * s.atx + ch * s.atx - ch * s.ax;
            let b1i = sh * s.ay - sh * s.aty - ch * s.aty + ch * s.ay;
            // B2 = a* sh - a~* sh + a~ ch - a ch
            let b2r = sh * s.ax - sh * s.atx + ch * s.atx - ch * s.ax;
            let b2i = -sh * s.ay + sh * s.aty + ch * s.aty - ch * s.ay;
            ((b1r, b1i), (b2r, b2i))
        }
    }
}

fn thermal_rhs(
    alpha: f64,
    delta: f64,
    f: &ThermalFactors,
    variant: Variant,
    s: &ThermalState,
) -> ThermalState {
    let (sh, ch) = (f.sinh_theta, f.cosh_theta);
    let cs = cos(s.x);
    match variant {
        Variant::Consistent => {
            let a = s.physical_field(f);
            let (dx, dp, [dsx, dsy, dsz]) =
                jc_rhs(alpha, delta, s.x, s.p, [s.sx, s.sy, s.sz], a);
            ThermalState {
                x: dx,
                p: dp,
                p_tilde: 0.0,
                sx: dsx,
                sy: dsy,
                sz: dsz,
                // da/dtau = i cosh S- cos x
                ax: -ch * s.sy * cs,
                ay: ch * s.sx * cs,
                // da~/dtau = i sinh S+ cos x
                atx: sh * s.sy * cs,
                aty: sh * s.sx * cs,
            }
        }
        Variant::Literal => {
            let ((b1r, b1i), (b2r, b2i)) = spin_drive(s, f, variant);
            let sn = sin(s.x);
            // B1 S-
            let bs_re = b1r * s.sx - b1i * s.sy;
            let bs_im = b1r * s.sy + b1i * s.sx;
            ThermalState {
                x: alpha * (s.p - s.p_tilde),
                // -(B1 S- + B2 S+) sin x
                p: -2.0 * bs_re * sn,
                p_tilde: 0.0,
                // -i delta S- - 2 i Sz B2 cos x
                sx: delta * s.sy + 2.0 * s.sz * b2i * cs,
                sy: -delta * s.sx - 2.0 * s.sz * b2r * cs,
                // i (B1 S- - B2 S+) cos x
                sz: -2.0 * bs_im * cs,
                // -i (S- ch - S+ sh) cos x
                ax: (ch + sh) * s.sy * cs,
                ay: -(ch - sh) * s.sx * cs,
                // -i (S+ sh - S- ch) cos x
                atx: -(sh + ch) * s.sy * cs,
                aty: (ch - sh) * s.sx * cs,
            }
        }
    }
}

/// Finite-temperature equations of motion in the selected variant.
pub fn deriv_thermal(
    s: &ThermalState,
    params: &SystemParams,
    f: &ThermalFactors,
) -> Result<ThermalDerivative> {
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    Ok(thermal_rhs(params.alpha, params.delta, f, params.variant, s))
}

/// Dimensionless rotating-frame energy, a first integral of the
/// zero-temperature flow.
pub fn energy_zero_t(s: &ZeroTState, params: &SystemParams) -> f64 {
    jc_energy(params.alpha, params.delta, s.x, s.p, s.sx, s.sy, s.sz, s.ax, s.ay)
}

/// Excitation number `ax^2 + ay^2 + sz`, the second first integral.
pub fn excitation_zero_t(s: &ZeroTState) -> f64 {
    s.ax * s.ax + s.ay * s.ay + s.sz
}

/// Energy of the consistent thermal flow, evaluated on the bare field.
pub fn energy_thermal(s: &ThermalState, params: &SystemParams, f: &ThermalFactors) -> f64 {
    let (ax, ay) = s.physical_field(f);
    jc_energy(params.alpha, params.delta, s.x, s.p, s.sx, s.sy, s.sz, ax, ay)
}

/// Excitation number of the consistent thermal flow on the bare field.
pub fn excitation_thermal(s: &ThermalState, f: &ThermalFactors) -> f64 {
    let (ax, ay) = s.physical_field(f);
    ax * ax + ay * ay + s.sz
}

#[allow(clippy::too_many_arguments)]
fn jc_energy(
    alpha: f64,
    delta: f64,
    x: f64,
    p: f64,
    sx: f64,
    sy: f64,
    sz: f64,
    ax: f64,
    ay: f64,
) -> f64 {
    0.5 * alpha * p * p - delta * sz - 2.0 * (ax * sx + ay * sy) * cos(x)
}

/// Zero-temperature flow as an integrable vector field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTField {
    pub alpha: f64,
    pub delta: f64,
}

impl ZeroTField {
    pub fn new(params: &SystemParams) -> Self {
        ZeroTField {
            alpha: params.alpha,
            delta: params.delta,
        }
    }
}

impl VectorField<7> for ZeroTField {
    fn eval(&self, y: &[f64; 7]) -> [f64; 7] {
        zero_t_rhs(self.alpha, self.delta, &ZeroTState::from_array(*y)).to_array()
    }

    fn constrain(&self, y: &mut [f64; 7]) {
        normalize_spin(y, [2, 3, 4]);
    }
}

/// Finite-temperature flow as an integrable vector field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalField {
    pub alpha: f64,
    pub delta: f64,
    pub factors: ThermalFactors,
    pub variant: Variant,
}

impl ThermalField {
    pub fn new(params: &SystemParams) -> Result<Self> {
        params.validate()?;
        Ok(ThermalField {
            alpha: params.alpha,
            delta: params.delta,
            factors: params.factors()?,
            variant: params.variant,
        })
    }
}

impl VectorField<10> for ThermalField {
    fn eval(&self, y: &[f64; 10]) -> [f64; 10] {
        thermal_rhs(
            self.alpha,
            self.delta,
            &self.factors,
            self.variant,
            &ThermalState::from_array(*y),
        )
        .to_array()
    }

    fn constrain(&self, y: &mut [f64; 10]) {
        normalize_spin(y, [3, 4, 5]);
    }
}

fn normalize_spin<const N: usize>(y: &mut [f64; N], idx: [usize; 3]) {
    let n = sqrt(idx.iter().map(|&i| y[i] * y[i]).sum::<f64>());
    if n > 0.0 && n.is_finite() {
        for i in idx {
            y[i] /= n;
        }
    }
}

/// Outcome of checking the three consistency requirements on a variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    /// `B2 = conj(B1)`.
    pub hermiticity: bool,
    /// At `theta = 0` with zero tilde data the tilde sector stays at rest.
    pub decoupling: bool,
    /// At `theta = 0` with zero tilde data the physical components follow
    /// the zero-temperature flow exactly.
    pub reduction: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.hermiticity && self.decoupling && self.reduction
    }
}

/// Evaluates the consistency requirements on `probes` deterministic random
/// states. Never fails: a variant that violates a requirement is reported,
/// not rejected.
pub fn check_axioms(variant: Variant, delta: f64, factors: &ThermalFactors, probes: usize) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7fd_a710);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
    let params = SystemParams {
        alpha: DEFAULT_ALPHA,
        delta,
        temperature: TemperatureSpec::Zero,
        variant,
    };
    let zero = ThermalFactors::ZERO_TEMPERATURE;
    let mut report = AxiomReport {
        hermiticity: true,
        decoupling: true,
        reduction: true,
    };
    for _ in 0..probes {
        let mut spin = [uniform(), uniform(), uniform()];
        let n = sqrt(spin.iter().map(|v| v * v).sum::<f64>()).max(1e-3);
        spin.iter_mut().for_each(|v| *v /= n);
        let s = ThermalState {
            x: 4.0 * uniform(),
            p: 10.0 * uniform(),
            p_tilde: 0.0,
            sx: spin[0],
            sy: spin[1],
            sz: spin[2],
            ax: uniform(),
            ay: uniform(),
            atx: uniform(),
            aty: uniform(),
        };

        let ((b1r, b1i), (b2r, b2i)) = spin_drive(&s, factors, variant);
        if b2r != b1r || b2i != -b1i {
            report.hermiticity = false;
        }

        let bare = ThermalState {
            atx: 0.0,
            aty: 0.0,
            p_tilde: 0.0,
            ..s
        };
        let d = thermal_rhs(params.alpha, delta, &zero, variant, &bare);
        if d.p_tilde != 0.0 || d.atx != 0.0 || d.aty != 0.0 {
            report.decoupling = false;
        }
        let reference = zero_t_rhs(params.alpha, delta, &bare.physical_part());
        if d.physical_part() != reference {
            report.reduction = false;
        }
    }
    report
}
