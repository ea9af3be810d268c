// Realified thermal vector fields checked against a direct evaluation of the
// complex equations of motion.

use num_complex::Complex64 as C;
use proptest::prelude::*;
use thermocav_core::model::deriv_thermal;
use thermocav_core::{thermal_factors, SystemParams, TemperatureSpec, ThermalFactors, ThermalState, Variant};

const I: C = C::new(0.0, 1.0);

struct Rates {
    x: f64,
    p: f64,
    s_minus: C,
    sz: f64,
    a: C,
    a_tilde: C,
}

// Printed equations: a <-> a(beta), at <-> a~(beta), s <-> S-.
fn printed(alpha: f64, delta: f64, f: &ThermalFactors, st: &ThermalState) -> Rates {
    let (sh, ch) = (f.sinh_theta, f.cosh_theta);
    let a = C::new(st.ax, st.ay);
    let at = C::new(st.atx, st.aty);
    let sm = C::new(st.sx, st.sy);
    let sp = sm.conj();
    let (sn, cs) = (st.x.sin(), st.x.cos());
    let b1 = a * sh - at * sh + at.conj() * ch - a.conj() * ch;
    let b2 = a.conj() * sh - at.conj() * sh + at * ch - a * ch;
    let dp = ((a.conj() * ch - at.conj() * ch - a * sh + at * sh) * sm
        + (a * ch + at.conj() * sh - a.conj() * sh - at * ch) * sp)
        * sn;
    let dsz = I * (b1 * sm - b2 * sp) * cs;
    Rates {
        x: alpha * (st.p - st.p_tilde),
        p: dp.re,
        s_minus: -I * delta * sm - 2.0 * I * st.sz * b2 * cs,
        sz: dsz.re,
        a: -I * (sm * ch - sp * sh) * cs,
        a_tilde: -I * (sp * sh - sm * ch) * cs,
    }
}

// Bare field a = ch a(beta) + sh a~(beta)^*, driving the spin exactly as at
// zero temperature; a(beta) and a~(beta) pick up ch and sh of the source.
fn consistent(alpha: f64, delta: f64, f: &ThermalFactors, st: &ThermalState) -> Rates {
    let (sh, ch) = (f.sinh_theta, f.cosh_theta);
    let a = C::new(st.ax, st.ay) * ch + C::new(st.atx, st.aty).conj() * sh;
    let sm = C::new(st.sx, st.sy);
    let (sn, cs) = (st.x.sin(), st.x.cos());
    let b1 = -a.conj();
    let b2 = -a;
    Rates {
        x: alpha * st.p,
        p: ((b1 * sm + b2 * sm.conj()) * sn).re,
        s_minus: I * delta * sm + 2.0 * I * st.sz * b2 * cs,
        sz: (I * (b1 * sm - b2 * sm.conj()) * cs).re,
        a: I * ch * sm * cs,
        a_tilde: I * sh * sm.conj() * cs,
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn check(r: &Rates, d: &ThermalState) -> Result<(), TestCaseError> {
    let pairs = [
        (r.x, d.x, "x"),
        (r.p, d.p, "p"),
        (0.0, d.p_tilde, "p_tilde"),
        (r.s_minus.re, d.sx, "sx"),
        (r.s_minus.im, d.sy, "sy"),
        (r.sz, d.sz, "sz"),
        (r.a.re, d.ax, "ax"),
        (r.a.im, d.ay, "ay"),
        (r.a_tilde.re, d.atx, "atx"),
        (r.a_tilde.im, d.aty, "aty"),
    ];
    for (want, got, name) in pairs {
        prop_assert!(close(want, got), "{name}: oracle {want} vs field {got}");
    }
    Ok(())
}

fn state() -> impl Strategy<Value = ThermalState> {
    (
        -20.0..20.0f64,
        -50.0..50.0f64,
        -5.0..5.0f64,
        (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU),
        prop::array::uniform4(-3.0..3.0f64),
    )
        .prop_map(|(x, p, pt, (th, ph), f)| ThermalState {
            x,
            p,
            p_tilde: pt,
            sx: th.sin() * ph.cos(),
            sy: th.sin() * ph.sin(),
            sz: th.cos(),
            ax: f[0],
            ay: f[1],
            atx: f[2],
            aty: f[3],
        })
}

fn beta() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.1, 1.0, 10.0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn literal_matches_printed_complex_form(s in state(), b in beta(), delta in -3.0..3.0f64) {
        let t = TemperatureSpec::InverseTemperature(b);
        let params = SystemParams::new(1e-3, delta, t, Variant::Literal).unwrap();
        let f = thermal_factors(t).unwrap();
        check(&printed(1e-3, delta, &f, &s), &deriv_thermal(&s, &params, &f).unwrap())?;
    }

    #[test]
    fn consistent_matches_complex_form(s in state(), b in beta(), delta in -3.0..3.0f64) {
        let t = TemperatureSpec::InverseTemperature(b);
        let params = SystemParams::new(1e-3, delta, t, Variant::Consistent).unwrap();
        let f = thermal_factors(t).unwrap();
        check(&consistent(1e-3, delta, &f, &s), &deriv_thermal(&s, &params, &f).unwrap())?;
    }

    #[test]
    fn literal_drive_is_hermitian(s in state(), b in beta()) {
        let f = thermal_factors(TemperatureSpec::InverseTemperature(b)).unwrap();
        let ((b1r, b1i), (b2r, b2i)) = thermocav_core::model::spin_drive(&s, &f, Variant::Literal);
        prop_assert!(close(b1r, b2r) && close(b1i, -b2i));
    }
}
