//! Exact NU reduction of the radial oscillator problem in s = 1 − 2λr².

use dkp_spectra::nu::{
    nu_reduce, oscillator_radial_problem, quantize_oscillator, FactorExponents, NuCandidate, NuError,
    PolynomialFamily, SignBranch,
};
use dkp_spectra::scalar::{parse_rational, Field};
use dkp_spectra::spectra::{spin0_breakdown, ModelConstants};

use super::{emit, meta};
use crate::output::{Cell, Table};
use crate::{CliError, RunConfig};

fn candidate<F: Field>(c: &NuCandidate<F>) -> String {
    let sign = match c.sign_branch {
        SignBranch::Plus => "+",
        SignBranch::Minus => "-",
    };
    format!("k={} sign={sign} pi={} tau={}", c.k, c.pi, c.tau)
}

fn shifted<F: Field>(root: &F) -> String {
    if *root < F::zero() {
        format!("s + {}", -root.clone())
    } else {
        format!("s - {root}")
    }
}

fn exponents<F: Field>(e: &FactorExponents<F>) -> String {
    match e {
        FactorExponents::Jacobi { upper, lower, lower_root, upper_root } => {
            format!("({upper_root} - s)^({upper}) ({})^({lower})", shifted(lower_root))
        }
        FactorExponents::Laguerre { exponent, rate, root } => {
            format!("({})^({exponent}) exp({rate} s)", shifted(root))
        }
        FactorExponents::Hermite => "exp(int pi/sigma)".into(),
    }
}

fn family<F: Field>(f: &PolynomialFamily<F>) -> String {
    match f {
        PolynomialFamily::Jacobi { a, b } => format!("jacobi(a={a}, b={b})"),
        PolynomialFamily::Laguerre { a } => format!("laguerre(a={a})"),
        PolynomialFamily::Hermite => "hermite".into(),
    }
}

/// ε/λ from the spin-0 closed form with ħ = c = m = λ = 1 and ω = μ.
pub fn closed_form_eps_over_lambda<F: Field>(mu: &F, j: u32, n: u32) -> F {
    let k = ModelConstants { hbar: F::one(), c: F::one(), m: F::one(), omega: mu.clone(), lambda: F::one() };
    spin0_breakdown(&k, 2 * n + j, j).total() - F::one() + F::of_int(3) * mu.clone()
}

/// Key/value dump of the reduction for levels n = 0..=n_max.
pub fn nu_record<F: Field>(mu: &F, j: u32, n_max: u32) -> Result<Vec<(String, Cell)>, NuError> {
    let jf = F::of_int(j as i64);
    let mut out: Vec<(String, Cell)> = vec![
        ("mu".into(), Cell::from(mu.to_string())),
        ("J".into(), Cell::from(j)),
    ];
    let base = oscillator_radial_problem(mu, &jf, &F::zero());
    out.push(("sigma".into(), Cell::from(base.sigma().to_string())));
    out.push(("tau_tilde".into(), Cell::from(base.tau_tilde().to_string())));
    for n in 0..=n_max {
        let q = quantize_oscillator(mu, &jf, n)?;
        let p = format!("n{n}");
        let problem = oscillator_radial_problem(mu, &jf, &q.eps_over_lambda);
        let expected = closed_form_eps_over_lambda(mu, j, n);
        let nn = F::of_int(n as i64);
        let lambda_expected = nn.clone() * (nn + mu.clone() + jf.clone() + F::one());
        out.push((format!("{p}.sigma_tilde"), Cell::from(problem.sigma_tilde().to_string())));
        for (i, c) in nu_reduce(&problem)?.iter().enumerate() {
            out.push((format!("{p}.candidate{i}"), Cell::from(candidate(c))));
        }
        let sol = &q.solution;
        out.push((format!("{p}.selected"), Cell::from(candidate(&sol.candidate))));
        out.push((format!("{p}.tau"), Cell::from(sol.candidate.tau.to_string())));
        out.push((format!("{p}.phi"), Cell::from(exponents(&sol.phi_exponents))));
        out.push((format!("{p}.rho"), Cell::from(exponents(&sol.rho_exponents))));
        out.push((format!("{p}.family"), Cell::from(family(&sol.polynomial_family))));
        out.push((format!("{p}.Lambda_n"), Cell::from(q.lambda_n.to_string())));
        out.push((format!("{p}.Lambda_expected"), Cell::from(lambda_expected.to_string())));
        out.push((format!("{p}.eps_over_lambda"), Cell::from(q.eps_over_lambda.to_string())));
        out.push((format!("{p}.closed_form_eps_over_lambda"), Cell::from(expected.to_string())));
        out.push((format!("{p}.agree"), Cell::from(q.eps_over_lambda == expected && q.lambda_n == lambda_expected)));
    }
    Ok(out)
}

pub fn run(cfg: &RunConfig, command: &str) -> Result<u8, CliError> {
    let text = cfg.mu.clone().unwrap_or_else(|| "10".into());
    let mu = parse_rational(&text).ok_or_else(|| CliError::Usage(format!("--mu: cannot parse `{text}`")))?;
    if mu <= Field::of_int(0) {
        return Err(CliError::Usage(format!("--mu: must be positive, got {mu}")));
    }
    let record = nu_record(&mu, cfg.j.unwrap_or(1), cfg.n_max.unwrap_or(3))
        .map_err(|e| CliError::Unsupported(format!("NU reduction failed: {e}")))?;
    emit(cfg, &meta(cfg, command, "dimensionless", "none"), &Table::record("nu", record))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dkp_spectra::scalar::parse_rational;

    #[test]
    fn mu10_j1_dump() {
        let mu = parse_rational("10").unwrap();
        let rec = nu_record(&mu, 1, 2).unwrap();
        let get = |k: &str| rec.iter().find(|(key, _)| key == k).unwrap().1.csv();
        assert_eq!(get("n1.tau"), "-(13)s + 8");
        assert_eq!(get("n0.phi"), "(1 - s)^(1/2) (s + 1)^(0)");
        assert_eq!(get("n1.Lambda_n"), "13");
        assert_eq!(get("n2.Lambda_n"), "28");
        for n in 0..=2 {
            assert_eq!(get(&format!("n{n}.agree")), "1");
        }
        assert_eq!(get("n0.family"), "jacobi(a=3/2, b=19/2)");
    }

    #[test]
    fn rational_mu() {
        let mu = parse_rational("7/2").unwrap();
        let rec = nu_record(&mu, 2, 3).unwrap();
        assert!(rec.iter().filter(|(k, _)| k.ends_with(".agree")).all(|(_, v)| *v == Cell::Bool(true)));
    }
}
