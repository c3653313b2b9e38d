//! Seeded population models for the Monte Carlo studies, with closed-form or
//! quadrature truth values for σ² = Var(√n·T_n) where one exists.
//!
//! Draws use ChaCha8 keyed by a caller-supplied 64-bit seed, so a replicate is
//! reproducible from `(model, n, seed)` alone. The cdf/quantile machinery is
//! backed by `statrs`; sampling itself by `rand_distr`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use statrs::distribution::ContinuousCDF;

use crate::empirical::EmpiricalSample;
use crate::error::{Error, Result};
use crate::functionals::FunctionalSpec;
use crate::quad;

/// Absolute tolerance for the outer integral of the L-statistic truth value.
const TRUTH_TOL: f64 = 1e-8;
/// Tolerance for each inner (conditional) integral.
const INNER_TOL: f64 = 1e-10;
/// Quantile clamp for weight supports touching 0 or 1 on unbounded models.
const LEVEL_CLAMP: f64 = 1e-9;

/// A population distribution addressable from config files.
#[derive(Debug, Clone, PartialEq)]
pub enum PopulationModel {
    Normal { mu: f64, sigma: f64 },
    Uniform { a: f64, b: f64 },
    Exponential { lambda: f64 },
    StudentT { nu: f64 },
    TwoPoint { x0: f64, x1: f64, q: f64 },
}

impl PopulationModel {
    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && mu.is_finite() && sigma.is_finite()) {
            return Err(Error::InvalidParams(format!("normal requires finite mu and sigma > 0, got ({mu},{sigma})")));
        }
        Ok(Self::Normal { mu, sigma })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !(a < b && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParams(format!("uniform requires a < b, got ({a},{b})")));
        }
        Ok(Self::Uniform { a, b })
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("exponential requires rate > 0, got {lambda}")));
        }
        Ok(Self::Exponential { lambda })
    }

    pub fn student_t(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParams(format!("student_t requires nu > 0, got {nu}")));
        }
        Ok(Self::StudentT { nu })
    }

    /// Two-point distribution: mass 1−q at x0 and q at x1. `x0 == x1` is
    /// allowed and yields a constant population (useful for degeneracy tests).
    pub fn two_point(x0: f64, x1: f64, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0 && x0.is_finite() && x1.is_finite()) {
            return Err(Error::InvalidParams(format!("two_point requires 0 < q < 1 and finite support, got ({x0},{x1},{q})")));
        }
        Ok(Self::TwoPoint { x0, x1, q })
    }

    /// Parses `name(p1,…)` syntax, e.g. `normal(0,1)` or `student_t(1.5)`.
    pub fn parse(text: &str) -> Result<Self> {
        let (name, args) = crate::functionals::split_call(text.trim())?;
        let want = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "model '{name}' takes {k} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "normal" => {
                want(2)?;
                Self::normal(args[0], args[1])
            }
            "uniform" => {
                want(2)?;
                Self::uniform(args[0], args[1])
            }
            "exponential" => {
                want(1)?;
                Self::exponential(args[0])
            }
            "student_t" => {
                want(1)?;
                Self::student_t(args[0])
            }
            "two_point" => {
                want(3)?;
                Self::two_point(args[0], args[1], args[2])
            }
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Normal { mu, sigma } => format!("normal({mu},{sigma})"),
            Self::Uniform { a, b } => format!("uniform({a},{b})"),
            Self::Exponential { lambda } => format!("exponential({lambda})"),
            Self::StudentT { nu } => format!("student_t({nu})"),
            Self::TwoPoint { x0, x1, q } => format!("two_point({x0},{x1},{q})"),
        }
    }

    /// Largest order r such that E|X|^s < ∞ for all s < r (∞ for all models
    /// except student_t, whose moments exist strictly below ν).
    pub fn moment_order(&self) -> f64 {
        match self {
            Self::StudentT { nu } => *nu,
            _ => f64::INFINITY,
        }
    }

    /// Population mean, when it exists.
    pub fn mean(&self) -> Option<f64> {
        match self {
            Self::Normal { mu, .. } => Some(*mu),
            Self::Uniform { a, b } => Some(0.5 * (a + b)),
            Self::Exponential { lambda } => Some(1.0 / lambda),
            Self::StudentT { nu } => (*nu > 1.0).then_some(0.0),
            Self::TwoPoint { x0, x1, q } => Some((1.0 - q) * x0 + q * x1),
        }
    }

    /// Population variance, when it exists.
    pub fn variance(&self) -> Option<f64> {
        match self {
            Self::Normal { sigma, .. } => Some(sigma * sigma),
            Self::Uniform { a, b } => Some((b - a) * (b - a) / 12.0),
            Self::Exponential { lambda } => Some(1.0 / (lambda * lambda)),
            Self::StudentT { nu } => (*nu > 2.0).then(|| nu / (nu - 2.0)),
            Self::TwoPoint { x0, x1, q } => Some(q * (1.0 - q) * (x1 - x0) * (x1 - x0)),
        }
    }

    /// Distribution function P(X ≤ x).
    pub fn cdf(&self, x: f64) -> f64 {
        (self.cdf_fn())(x)
    }

    /// Quantile function; the min-based generalized inverse for the two-point
    /// model, the classical inverse for the continuous ones.
    pub fn quantile(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange { level: s });
        }
        Ok(match self {
            Self::Normal { mu, sigma } => {
                statrs::distribution::Normal::new(*mu, *sigma).unwrap().inverse_cdf(s)
            }
            Self::Uniform { a, b } => a + s * (b - a),
            Self::Exponential { lambda } => -(-s).ln_1p() / lambda,
            Self::StudentT { nu } => {
                statrs::distribution::StudentsT::new(0.0, 1.0, *nu).unwrap().inverse_cdf(s)
            }
            Self::TwoPoint { x0, x1, q } => {
                let (lo, hi, mass_lo) = if x0 <= x1 { (*x0, *x1, 1.0 - q) } else { (*x1, *x0, *q) };
                if s <= mass_lo {
                    lo
                } else {
                    hi
                }
            }
        })
    }

    /// `n` iid draws, deterministic given `(self, n, seed)`.
    pub fn draw(&self, n: usize, seed: u64) -> Result<EmpiricalSample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = Vec::with_capacity(n);
        match self {
            Self::Normal { mu, sigma } => {
                let d = rand_distr::Normal::new(*mu, *sigma)
                    .map_err(|e| Error::InvalidParams(e.to_string()))?;
                values.extend((0..n).map(|_| d.sample(&mut rng)));
            }
            Self::Uniform { a, b } => {
                let d = rand::distributions::Uniform::new(*a, *b);
                values.extend((0..n).map(|_| d.sample(&mut rng)));
            }
            Self::Exponential { lambda } => {
                let d = rand_distr::Exp::new(*lambda)
                    .map_err(|e| Error::InvalidParams(e.to_string()))?;
                values.extend((0..n).map(|_| d.sample(&mut rng)));
            }
            Self::StudentT { nu } => {
                let d = rand_distr::StudentT::new(*nu)
                    .map_err(|e| Error::InvalidParams(e.to_string()))?;
                values.extend((0..n).map(|_| d.sample(&mut rng)));
            }
            Self::TwoPoint { x0, x1, q } => {
                values.extend((0..n).map(|_| if rng.gen::<f64>() < *q { *x1 } else { *x0 }));
            }
        }
        EmpiricalSample::from_samples(&values)
    }

    fn cdf_fn(&self) -> Box<dyn Fn(f64) -> f64 + Send + Sync> {
        match self {
            Self::Normal { mu, sigma } => {
                let d = statrs::distribution::Normal::new(*mu, *sigma).unwrap();
                Box::new(move |x| d.cdf(x))
            }
            Self::Uniform { a, b } => {
                let (a, b) = (*a, *b);
                Box::new(move |x| ((x - a) / (b - a)).clamp(0.0, 1.0))
            }
            Self::Exponential { lambda } => {
                let lambda = *lambda;
                Box::new(move |x| if x <= 0.0 { 0.0 } else { -(-lambda * x).exp_m1() })
            }
            Self::StudentT { nu } => {
                let d = statrs::distribution::StudentsT::new(0.0, 1.0, *nu).unwrap();
                Box::new(move |x| d.cdf(x))
            }
            Self::TwoPoint { x0, x1, q } => {
                let (x0, x1, q) = (*x0, *x1, *q);
                Box::new(move |x| {
                    let mut p = 0.0;
                    if x >= x0 {
                        p += 1.0 - q;
                    }
                    if x >= x1 {
                        p += q;
                    }
                    p
                })
            }
        }
    }

    fn is_discrete(&self) -> bool {
        matches!(self, Self::TwoPoint { .. })
    }
}

/// The asymptotic variance σ² of √n(T_n − T(p)) under `model`, when a truth
/// value is implemented for the pair.
///
/// Function of the mean: the closed form g′(p̄)²·Var(p), guarded by the
/// moment requirement E|X|^{2+2h} < ∞ of the rate theory. Trimmed
/// L-statistic: the double integral
/// ∫∫ ℓ(P(y)) [P(y∧z) − P(y)P(z)] ℓ(P(z)) dy dz
/// by nested adaptive quadrature over the weight support (absolute tolerance
/// 1e−8); `None` for discrete models, where no truth is implemented.
pub fn true_sigma_squared(model: &PopulationModel, spec: &FunctionalSpec) -> Result<Option<f64>> {
    match spec {
        FunctionalSpec::FunctionOfMean(g) => {
            let need = 2.0 + 2.0 * g.holder_order();
            let have = model.moment_order();
            if !(need < have) {
                return Err(Error::InsufficientMoments { have, need });
            }
            // need > 2, so mean and variance both exist here.
            let mean = model.mean().expect("moment guard admits the mean");
            let var = model.variance().expect("moment guard admits the variance");
            let d = g.g_prime(mean);
            Ok(Some(d * d * var))
        }
        FunctionalSpec::TrimmedL(w) => {
            if model.is_discrete() {
                return Ok(None);
            }
            let (s_lo, s_hi) = w.support();
            let y_lo = model.quantile(s_lo.max(LEVEL_CLAMP))?;
            let y_hi = model.quantile(s_hi.min(1.0 - LEVEL_CLAMP))?;
            if !(y_lo < y_hi) {
                return Ok(Some(0.0));
            }
            let p = model.cdf_fn();
            // Inner integrals split the kernel at the diagonal:
            // ∫ℓ(P(z))[P(y∧z) − P(y)P(z)]dz
            //   = (1−P(y))·∫_{lo}^{y} ℓ(P)P + P(y)·∫_{y}^{hi} ℓ(P)(1−P).
            // Inner failures surface as NaN and are caught by the outer pass.
            let outer = |y: f64| -> f64 {
                let ly = w.eval(p(y));
                if ly == 0.0 {
                    return 0.0;
                }
                let below = quad::integrate(|z| w.eval(p(z)) * p(z), y_lo, y, INNER_TOL)
                    .unwrap_or(f64::NAN);
                let above = quad::integrate(|z| w.eval(p(z)) * (1.0 - p(z)), y, y_hi, INNER_TOL)
                    .unwrap_or(f64::NAN);
                ly * ((1.0 - p(y)) * below + p(y) * above)
            };
            let value = quad::integrate(outer, y_lo, y_hi, TRUTH_TOL)?;
            Ok(Some(value.max(0.0)))
        }
    }
}
