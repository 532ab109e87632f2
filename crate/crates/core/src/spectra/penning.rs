//! Upper bound on λ (and on the minimal momentum uncertainty ħ√λ) from the
//! absence of a detectable shift of electron cyclotron levels in a Penning trap.

use super::SpectraError;
use crate::params::{ELECTRON_MASS_SI, ELEMENTARY_CHARGE_SI, HBAR_SI, C_SI};

/// eħB at 6 T in the rounded convention, kg²m²s⁻².
pub const ROUNDED_E_HBAR_B_AT_6T: f64 = 1e-52;

/// How eħB (= mₑħω_c) is obtained from the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PenningConstants {
    /// 10⁻⁵²·(B / 6 T).
    #[default]
    Rounded,
    /// e·ħ·B with SI constants.
    Exact,
}

impl PenningConstants {
    pub fn e_hbar_b(self, b_tesla: f64) -> f64 {
        match self {
            PenningConstants::Rounded => ROUNDED_E_HBAR_B_AT_6T * b_tesla / 6.0,
            PenningConstants::Exact => ELEMENTARY_CHARGE_SI * HBAR_SI * b_tesla,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PenningConstants::Rounded => "rounded",
            PenningConstants::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub b_tesla: f64,
    pub n_level: f64,
    /// mₑħω_c = eħB, kg²m²s⁻².
    pub e_hbar_b: f64,
    /// Detection threshold in units of ħω_c.
    pub threshold_quanta: f64,
    pub constants: PenningConstants,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    /// m⁻².
    pub lambda_max: f64,
    /// ħ√λ_max, kg·m/s.
    pub delta_p_min_max: f64,
    pub inputs: BoundInputs,
}

/// Largest λ for which the first-order shift of level N stays below
/// `threshold_quanta`·ħω_c, for an electron in field `b_tesla`.
pub fn penning_bound(
    b_tesla: f64,
    n_level: f64,
    threshold_quanta: f64,
    constants: PenningConstants,
) -> Result<BoundResult, SpectraError> {
    for (name, value) in [("field", b_tesla), ("level", n_level), ("threshold", threshold_quanta)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(SpectraError::BoundInput { name, value });
        }
    }
    if n_level < 1.0 {
        return Err(SpectraError::BoundInput { name: "level", value: n_level });
    }
    let e_hbar_b = constants.e_hbar_b(b_tesla);
    let m = ELECTRON_MASS_SI;
    // ħω_c/mc² = eħB/(m²c²)
    let x = e_hbar_b / (m * m * C_SI * C_SI);
    let n = n_level;
    let lambda_max =
        threshold_quanta * 2.0 * e_hbar_b * (1.0 + 2.0 * x * n).sqrt() / (HBAR_SI * HBAR_SI * n * (n + 2.0));
    Ok(BoundResult {
        lambda_max,
        delta_p_min_max: HBAR_SI * lambda_max.sqrt(),
        inputs: BoundInputs { b_tesla, n_level, e_hbar_b, threshold_quanta, constants },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{make_params, Space, UnitSystem};
    use crate::spectra::deviation_ratio;

    #[test]
    fn six_tesla_reference() {
        let r = penning_bound(6.0, 1e10, 1.0, PenningConstants::Rounded).unwrap();
        assert_eq!(r.inputs.e_hbar_b, 1e-52);
        assert!(((r.delta_p_min_max - 3.25e-36) / 3.25e-36).abs() < 0.05);
        assert!((r.delta_p_min_max - HBAR_SI * r.lambda_max.sqrt()).abs() < 1e-50);
    }

    #[test]
    fn exact_constants_are_close_to_rounded() {
        let a = penning_bound(6.0, 1e10, 1.0, PenningConstants::Rounded).unwrap();
        let b = penning_bound(6.0, 1e10, 1.0, PenningConstants::Exact).unwrap();
        assert!(((a.delta_p_min_max - b.delta_p_min_max) / a.delta_p_min_max).abs() < 0.1);
    }

    #[test]
    fn bound_saturates_deviation_ratio() {
        // At λ_max the first-order shift of the level is exactly one cyclotron quantum.
        let r = penning_bound(6.0, 1e6, 1.0, PenningConstants::Exact).unwrap();
        let omega_c = ELEMENTARY_CHARGE_SI * 6.0 / ELECTRON_MASS_SI;
        let p = make_params(ELECTRON_MASS_SI, omega_c, r.lambda_max, Space::AdS, UnitSystem::Si).unwrap();
        assert!((deviation_ratio(&p, 1_000_000) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn field_and_level_dependence() {
        let six = penning_bound(6.0, 1e10, 1.0, PenningConstants::Rounded).unwrap();
        let twelve = penning_bound(12.0, 1e10, 1.0, PenningConstants::Rounded).unwrap();
        let x6 = 1e-52 / (ELECTRON_MASS_SI * ELECTRON_MASS_SI * C_SI * C_SI);
        let predicted = 2.0 * ((1.0 + 4.0 * x6 * 1e10) / (1.0 + 2.0 * x6 * 1e10)).sqrt();
        assert!((twelve.lambda_max / six.lambda_max - predicted).abs() < 1e-12);
        let low = penning_bound(6.0, 1.0, 1.0, PenningConstants::Rounded).unwrap();
        assert!(low.lambda_max > six.lambda_max);
    }

    #[test]
    fn rejects_bad_inputs() {
        for (b, n) in [(0.0, 1e10), (-1.0, 1e10), (6.0, 0.0), (6.0, 0.5), (f64::NAN, 1.0)] {
            assert!(matches!(penning_bound(b, n, 1.0, PenningConstants::Rounded), Err(SpectraError::BoundInput { .. })));
        }
    }
}
