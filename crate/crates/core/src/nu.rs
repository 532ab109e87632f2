//! Nikiforov–Uvarov reduction of hypergeometric-type equations
//!
//! ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0,  deg σ, deg σ̃ ≤ 2,  deg τ̃ ≤ 1,
//!
//! to the polynomial form σ y'' + τ y' + Λ y = 0 via ψ = φ(s) y(s).
//! All arithmetic is generic over [`Field`], so the reduction is exact for
//! rational inputs.

use thiserror::Error;

use crate::polynomial::Polynomial;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NuError {
    #[error("σ vanishes identically")]
    DegenerateSigma,
    #[error("{which} has degree {degree}, above the allowed {max}")]
    DegreeBound { which: &'static str, degree: usize, max: usize },
    #[error("the perfect-square condition has no real solution for k")]
    NoRealK,
    #[error("the perfect-square condition holds for every k")]
    IndeterminateK,
    #[error("exact arithmetic requires a rational square root of {what}")]
    IrrationalRoot { what: &'static str },
    #[error("no candidate has τ' < 0 and nonnegative φ exponents")]
    NoAdmissible,
    #[error("σ does not factor over the reals")]
    UnsupportedSigma,
    #[error("quantization condition is not affine in the energy parameter")]
    NonAffineQuantization,
}

/// Coefficients (σ, τ̃, σ̃) of the input equation.
#[derive(Debug, Clone, PartialEq)]
pub struct NuProblem<T> {
    sigma: Polynomial<T>,
    tau_tilde: Polynomial<T>,
    sigma_tilde: Polynomial<T>,
}

impl<T: Field> NuProblem<T> {
    pub fn new(
        sigma: Polynomial<T>,
        tau_tilde: Polynomial<T>,
        sigma_tilde: Polynomial<T>,
    ) -> Result<Self, NuError> {
        let check = |which, p: &Polynomial<T>, max| match p.degree() {
            Some(degree) if degree > max => Err(NuError::DegreeBound { which, degree, max }),
            _ => Ok(()),
        };
        check("sigma", &sigma, 2)?;
        check("tau_tilde", &tau_tilde, 1)?;
        check("sigma_tilde", &sigma_tilde, 2)?;
        if sigma.is_zero() {
            return Err(NuError::DegenerateSigma);
        }
        Ok(NuProblem { sigma, tau_tilde, sigma_tilde })
    }

    pub fn sigma(&self) -> &Polynomial<T> {
        &self.sigma
    }
    pub fn tau_tilde(&self) -> &Polynomial<T> {
        &self.tau_tilde
    }
    pub fn sigma_tilde(&self) -> &Polynomial<T> {
        &self.sigma_tilde
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignBranch {
    Plus,
    Minus,
}

/// One solution (k, ±) of the perfect-square condition.
#[derive(Debug, Clone, PartialEq)]
pub struct NuCandidate<T> {
    pub k: T,
    pub pi: Polynomial<T>,
    pub tau: Polynomial<T>,
    pub sign_branch: SignBranch,
}

impl<T: Field> NuCandidate<T> {
    /// Λ = k + π′ implied by this candidate.
    pub fn lambda_from_k(&self) -> T {
        self.k.clone() + self.pi.coeff(1)
    }

    pub fn tau_slope(&self) -> T {
        self.tau.coeff(1)
    }
}

/// Exponents of a factorized weight, depending on the class of σ.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorExponents<T> {
    /// σ = g·(s − lower_root)(upper_root − s): weight (upper_root − s)^upper (s − lower_root)^lower.
    Jacobi { upper: T, lower: T, lower_root: T, upper_root: T },
    /// σ linear: weight (s − root)^exponent · e^{rate·s}.
    Laguerre { exponent: T, rate: T, root: T },
    /// σ constant: pure exponential weight e^{∫π/σ}.
    Hermite,
}

/// Classical family of the polynomial part y(s).
#[derive(Debug, Clone, PartialEq)]
pub enum PolynomialFamily<T> {
    /// Jacobi P^{(a,b)} in the variable mapped so that σ's roots sit at ±1.
    Jacobi { a: T, b: T },
    Laguerre { a: T },
    Hermite,
}

/// Complete reduction: the selected candidate and its weights.
#[derive(Debug, Clone, PartialEq)]
pub struct NuSolution<T> {
    pub candidate: NuCandidate<T>,
    pub phi_exponents: FactorExponents<T>,
    pub rho_exponents: FactorExponents<T>,
    pub polynomial_family: PolynomialFamily<T>,
    sigma_second: T,
}

impl<T: Field> NuSolution<T> {
    /// Λₙ = −nτ′ − n(n−1)σ″/2.
    pub fn lambda_n(&self, n: u32) -> T {
        lambda_n_from(&self.candidate.tau_slope(), &self.sigma_second, n)
    }
}

fn lambda_n_from<T: Field>(tau_slope: &T, sigma_second: &T, n: u32) -> T {
    let nn = T::of_int(n as i64);
    let half = T::of_ratio(1, 2);
    -(nn.clone() * tau_slope.clone())
        - nn.clone() * (nn - T::one()) * sigma_second.clone() * half
}

fn checked_sqrt<T: Field>(x: &T, scale: &T, what: &'static str) -> Result<Option<T>, NuError> {
    if x.is_negligible(scale) {
        return Ok(Some(T::zero()));
    }
    if *x < T::zero() {
        return Ok(None);
    }
    x.sqrt_exact().map(Some).ok_or(NuError::IrrationalRoot { what })
}

/// All (k, ±) pairs making P² − σ̃ + kσ a perfect square, P = (σ′ − τ̃)/2.
///
/// Ordered by ascending k, then `Plus` before `Minus`.
pub fn nu_reduce<T: Field>(problem: &NuProblem<T>) -> Result<Vec<NuCandidate<T>>, NuError> {
    let sigma = &problem.sigma;
    let half = T::of_ratio(1, 2);
    let p = (&sigma.derivative() - &problem.tau_tilde).scale(&half);
    let (p0, p1) = (p.coeff(0), p.coeff(1));
    let (s0, s1, s2) = (sigma.coeff(0), sigma.coeff(1), sigma.coeff(2));
    let (q0, q1, q2) = (
        problem.sigma_tilde.coeff(0),
        problem.sigma_tilde.coeff(1),
        problem.sigma_tilde.coeff(2),
    );
    let two = T::of_int(2);
    let four = T::of_int(4);

    // Radicand R(s) = u₂s² + u₁s + u₀ + kσ(s); zero discriminant is quadratic in k.
    let u0 = p0.clone() * p0.clone() - q0;
    let u1 = two.clone() * p0 * p1.clone() - q1;
    let u2 = p1.clone() * p1 - q2;
    let a = s1.clone() * s1.clone() - four.clone() * s2.clone() * s0.clone();
    let b = two.clone() * u1.clone() * s1.clone()
        - four.clone() * u2.clone() * s0.clone()
        - four.clone() * u0.clone() * s2.clone();
    let c = u1.clone() * u1.clone() - four.clone() * u2.clone() * u0.clone();
    let scale = [&a, &b, &c, &u0, &u1, &u2]
        .into_iter()
        .map(Field::abs_val)
        .fold(T::one(), |m, v| if v > m { v } else { m });

    let mut ks: Vec<T> = if a.is_negligible(&scale) {
        if b.is_negligible(&scale) {
            return Err(if c.is_negligible(&scale) { NuError::IndeterminateK } else { NuError::NoRealK });
        }
        vec![-(c.clone() / b.clone())]
    } else {
        let disc = b.clone() * b.clone() - four.clone() * a.clone() * c.clone();
        let scale2 = scale.clone() * scale.clone();
        let root = checked_sqrt(&disc, &scale2, "the k discriminant")?.ok_or(NuError::NoRealK)?;
        let den = two.clone() * a.clone();
        if root.is_zero() {
            vec![-(b.clone() / den)]
        } else {
            vec![(-b.clone() - root.clone()) / den.clone(), (-b + root) / den]
        }
    };
    ks.sort_by(|x, y| x.partial_cmp(y).expect("ordered field"));

    let mut out = Vec::new();
    for k in ks {
        let ra = u2.clone() + k.clone() * s2.clone();
        let rb = u1.clone() + k.clone() * s1.clone();
        let rc = u0.clone() + k.clone() * s0.clone();
        let (alpha, beta) = if ra.is_negligible(&scale) {
            match checked_sqrt(&rc, &scale, "the radicand constant")? {
                Some(beta) => (T::zero(), beta),
                None => continue,
            }
        } else {
            match checked_sqrt(&ra, &scale, "the radicand leading coefficient")? {
                Some(alpha) => {
                    let beta = rb / (two.clone() * alpha.clone());
                    (alpha, beta)
                }
                None => continue,
            }
        };
        let root = Polynomial::linear(beta, alpha);
        let branches: &[SignBranch] =
            if root.is_zero() { &[SignBranch::Plus] } else { &[SignBranch::Plus, SignBranch::Minus] };
        for &sign_branch in branches {
            let pi = match sign_branch {
                SignBranch::Plus => &p + &root,
                SignBranch::Minus => &p - &root,
            };
            let tau = &problem.tau_tilde + &pi.scale(&two);
            out.push(NuCandidate { k: k.clone(), pi, tau, sign_branch });
        }
    }
    if out.is_empty() {
        return Err(NuError::NoRealK);
    }
    Ok(out)
}

/// Roots r₁ < r₂ and the factor g of σ = g(s − r₁)(r₂ − s), when real and distinct.
fn sigma_roots<T: Field>(sigma: &Polynomial<T>) -> Result<(T, T, T), NuError> {
    let (s0, s1, s2) = (sigma.coeff(0), sigma.coeff(1), sigma.coeff(2));
    let disc = s1.clone() * s1.clone() - T::of_int(4) * s2.clone() * s0;
    let scale = sigma.magnitude();
    if disc.is_negligible(&(scale.clone() * scale)) || disc < T::zero() {
        return Err(NuError::UnsupportedSigma);
    }
    let root = disc.sqrt_exact().ok_or(NuError::IrrationalRoot { what: "the σ discriminant" })?;
    let den = T::of_int(2) * s2.clone();
    let (x, y) = ((-s1.clone() - root.clone()) / den.clone(), (-s1 + root) / den);
    let (r1, r2) = if x < y { (x, y) } else { (y, x) };
    Ok((-s2, r1, r2))
}

/// Exponents for writing a linear form L as σ·(d/ds) log of a factorized weight.
fn linear_exponents<T: Field>(sigma: &Polynomial<T>, l: &Polynomial<T>) -> Result<FactorExponents<T>, NuError> {
    let (l0, l1) = (l.coeff(0), l.coeff(1));
    match sigma.degree() {
        Some(2) => {
            let (g, r1, r2) = sigma_roots(sigma)?;
            let lower = (l0 + l1.clone() * r1.clone()) / (g.clone() * (r2.clone() - r1.clone()));
            let upper = -(l1 / g) - lower.clone();
            Ok(FactorExponents::Jacobi { upper, lower, lower_root: r1, upper_root: r2 })
        }
        Some(1) => {
            let (s0, s1) = (sigma.coeff(0), sigma.coeff(1));
            let root = -(s0 / s1.clone());
            let exponent = (l0 + l1.clone() * root.clone()) / s1.clone();
            Ok(FactorExponents::Laguerre { exponent, rate: l1 / s1, root })
        }
        _ => Ok(FactorExponents::Hermite),
    }
}

/// Exponents of φ from φ′/φ = π/σ.
pub fn phi_exponents<T: Field>(
    problem: &NuProblem<T>,
    candidate: &NuCandidate<T>,
) -> Result<FactorExponents<T>, NuError> {
    linear_exponents(&problem.sigma, &candidate.pi)
}

/// Exponents of ρ from (σρ)′ = τρ.
pub fn weight_function<T: Field>(
    problem: &NuProblem<T>,
    candidate: &NuCandidate<T>,
) -> Result<FactorExponents<T>, NuError> {
    // σρ has exponents one higher than ρ on each root factor.
    Ok(match linear_exponents(&problem.sigma, &candidate.tau)? {
        FactorExponents::Jacobi { upper, lower, lower_root, upper_root } => FactorExponents::Jacobi {
            upper: upper - T::one(),
            lower: lower - T::one(),
            lower_root,
            upper_root,
        },
        FactorExponents::Laguerre { exponent, rate, root } => {
            FactorExponents::Laguerre { exponent: exponent - T::one(), rate, root }
        }
        FactorExponents::Hermite => FactorExponents::Hermite,
    })
}

/// Λₙ from the candidate's τ and the problem's σ.
pub fn eigen_lambda<T: Field>(problem: &NuProblem<T>, candidate: &NuCandidate<T>, n: u32) -> T {
    lambda_n_from(&candidate.tau_slope(), &sigma_second(problem), n)
}

fn sigma_second<T: Field>(problem: &NuProblem<T>) -> T {
    problem.sigma.coeff(2) * T::of_int(2)
}

fn admissible<T: Field>(problem: &NuProblem<T>, c: &NuCandidate<T>) -> bool {
    if c.tau_slope() >= T::zero() {
        return false;
    }
    let nonneg = |x: &T| *x >= T::zero() || x.is_negligible(&T::one());
    match phi_exponents(problem, c) {
        Ok(FactorExponents::Jacobi { upper, lower, .. }) => nonneg(&upper) && nonneg(&lower),
        Ok(FactorExponents::Laguerre { exponent, .. }) => nonneg(&exponent),
        Ok(FactorExponents::Hermite) => true,
        Err(_) => false,
    }
}

/// Picks the candidate with τ′ < 0 and nonnegative φ exponents; ties go to the smallest k.
pub fn select_candidate<T: Field>(
    problem: &NuProblem<T>,
    candidates: &[NuCandidate<T>],
) -> Result<NuCandidate<T>, NuError> {
    candidates
        .iter()
        .filter(|c| admissible(problem, c))
        .min_by(|x, y| {
            x.k.partial_cmp(&y.k)
                .expect("ordered field")
                .then(y.sign_branch.cmp(&x.sign_branch))
        })
        .cloned()
        .ok_or(NuError::NoAdmissible)
}

/// Reduce, select and classify in one step.
pub fn solve<T: Field>(problem: &NuProblem<T>) -> Result<NuSolution<T>, NuError> {
    let candidates = nu_reduce(problem)?;
    let candidate = select_candidate(problem, &candidates)?;
    let phi_exponents = phi_exponents(problem, &candidate)?;
    let rho_exponents = weight_function(problem, &candidate)?;
    let polynomial_family = match &rho_exponents {
        FactorExponents::Jacobi { upper, lower, .. } => {
            PolynomialFamily::Jacobi { a: upper.clone(), b: lower.clone() }
        }
        FactorExponents::Laguerre { exponent, .. } => PolynomialFamily::Laguerre { a: exponent.clone() },
        FactorExponents::Hermite => PolynomialFamily::Hermite,
    };
    let sigma_second = sigma_second(problem);
    Ok(NuSolution { candidate, phi_exponents, rho_exponents, polynomial_family, sigma_second })
}

/// The oscillator's radial equation in s = 1 − 2λr², with e = ε/λ:
/// σ = 1 − s², τ̃ = (μ−1) − (μ+2)s, σ̃ = a₁s² + a₂s + a₃,
/// a₁ = −(J(J+1) + e − 3μ)/4, a₂ = −J(J+1)/2, a₃ = −(J(J+1) − e + 3μ)/4.
pub fn oscillator_radial_problem<T: Field>(mu: &T, j: &T, e: &T) -> NuProblem<T> {
    let one = T::one();
    let three = T::of_int(3);
    let quarter = T::of_ratio(1, 4);
    let jj = j.clone() * (j.clone() + one.clone());
    let three_mu = three * mu.clone();
    let a1 = -(quarter.clone() * (jj.clone() + e.clone() - three_mu.clone()));
    let a2 = -(jj.clone() * T::of_ratio(1, 2));
    let a3 = -(quarter * (jj - e.clone() + three_mu));
    let sigma = Polynomial::quadratic(one.clone(), T::zero(), -one.clone());
    let tau_tilde = Polynomial::linear(mu.clone() - one, -(mu.clone() + T::of_int(2)));
    let sigma_tilde = Polynomial::quadratic(a3, a2, a1);
    NuProblem::new(sigma, tau_tilde, sigma_tilde).expect("degrees are fixed")
}

/// Result of chaining reduction and quantization for the oscillator problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantization<T> {
    /// ε/λ of the n-th level.
    pub eps_over_lambda: T,
    /// Reduction evaluated at that ε/λ.
    pub solution: NuSolution<T>,
    pub lambda_n: T,
}

/// Solves Λ(e) = Λₙ(e) for e = ε/λ, where Λ = k + π′ of the selected candidate.
///
/// The condition is sampled at e = 0, 1, 2, required to be affine, solved, and
/// then re-verified at the root.
pub fn quantize_oscillator<T: Field>(mu: &T, j: &T, n: u32) -> Result<Quantization<T>, NuError> {
    let defect = |e: &T| -> Result<T, NuError> {
        let problem = oscillator_radial_problem(mu, j, e);
        let sol = solve(&problem)?;
        Ok(sol.candidate.lambda_from_k() - sol.lambda_n(n))
    };
    let f0 = defect(&T::zero())?;
    let f1 = defect(&T::one())?;
    let f2 = defect(&T::of_int(2))?;
    let d1 = f1.clone() - f0.clone();
    let d2 = f2 - f1;
    let scale = d1.abs_val() + f0.abs_val();
    if !(d1.clone() - d2).is_negligible(&scale) || d1.is_negligible(&scale) {
        return Err(NuError::NonAffineQuantization);
    }
    let e = -(f0 / d1);
    let problem = oscillator_radial_problem(mu, j, &e);
    let solution = solve(&problem)?;
    let lambda_n = solution.lambda_n(n);
    if !(solution.candidate.lambda_from_k() - lambda_n.clone()).is_negligible(&scale) {
        return Err(NuError::NonAffineQuantization);
    }
    Ok(Quantization { eps_over_lambda: e, solution, lambda_n })
}
