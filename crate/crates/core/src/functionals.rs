//! Statistical functionals: smooth functions of the sample mean and trimmed
//! L-statistics, with their plug-in evaluation and influence functions.
//!
//! Both families are addressable by registry name (`identity`, `square`,
//! `paper_sgn`, `box(alpha)`, `mesa(a,b,c,d)`, `holder_cusp(h,alpha)`) so the
//! CLI and config files can refer to them. The L-statistic family is
//! parameterized by a weight function ℓ on (0,1); an observation of rank i
//! receives the weight `w_i = ∫ ℓ(s) ds` over the rank cell ((i−1)/n, i/n].

use std::fmt;
use std::sync::Arc;

use crate::empirical::EmpiricalSample;
use crate::error::{Error, Result};
use crate::quad;

/// Absolute tolerance for one weight-cell integral when no closed form exists.
const CELL_TOL: f64 = 1e-12;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A weight function ℓ on (0,1) defining a trimmed L-statistic.
#[derive(Clone)]
pub struct WeightFunction {
    kind: WeightKind,
}

#[derive(Clone)]
enum WeightKind {
    /// ℓ = 1 on [alpha, 1−alpha], 0 outside. `alpha = 0` disables trimming
    /// (useful as the T = mean analogue within the L family).
    Box { alpha: f64 },
    /// Piecewise-linear trapezoid: 0 outside [a,d], rising on [a,b], flat at 1
    /// on [b,c], falling on [c,d]. Lipschitz, so Hölder order 1.
    Mesa { a: f64, b: f64, c: f64, d: f64 },
    /// ℓ(s) = 1 − |2s−1|^h on [alpha, 1−alpha], 0 outside: a genuine Hölder-h
    /// cusp at s = 1/2 for rate experiments with dialled-down smoothness.
    HolderCusp { h: f64, alpha: f64 },
    /// Arbitrary evaluator with declared support and smoothness metadata.
    Custom {
        name: String,
        eval: ScalarFn,
        support: (f64, f64),
        holder_order: f64,
    },
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightFunction({})", self.name())
    }
}

impl WeightFunction {
    pub fn boxcar(alpha: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&alpha) {
            return Err(Error::InvalidParams(format!(
                "box trimming level must satisfy 0 <= alpha < 1/2, got {alpha}"
            )));
        }
        Ok(Self { kind: WeightKind::Box { alpha } })
    }

    pub fn mesa(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let ordered = 0.0 <= a && a <= b && b <= c && c <= d && d <= 1.0;
        if !ordered || !(a < d) {
            return Err(Error::InvalidParams(format!(
                "mesa knots must satisfy 0 <= a <= b <= c <= d <= 1 with a < d, got ({a},{b},{c},{d})"
            )));
        }
        Ok(Self { kind: WeightKind::Mesa { a, b, c, d } })
    }

    pub fn holder_cusp(h: f64, alpha: f64) -> Result<Self> {
        if !(h > 0.0 && h <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "holder_cusp order must satisfy 0 < h <= 1, got {h}"
            )));
        }
        if !(0.0..0.5).contains(&alpha) {
            return Err(Error::InvalidParams(format!(
                "holder_cusp trimming level must satisfy 0 <= alpha < 1/2, got {alpha}"
            )));
        }
        Ok(Self { kind: WeightKind::HolderCusp { h, alpha } })
    }

    /// Wraps an arbitrary evaluator. `support` must satisfy 0 <= lo < hi <= 1;
    /// the evaluator is treated as exactly zero outside it.
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support: (f64, f64),
        holder_order: f64,
    ) -> Result<Self> {
        let (lo, hi) = support;
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "custom weight support must satisfy 0 <= lo < hi <= 1, got ({lo},{hi})"
            )));
        }
        if !(holder_order > 0.0 && holder_order <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "holder order must lie in (0,1], got {holder_order}"
            )));
        }
        Ok(Self {
            kind: WeightKind::Custom { name: name.into(), eval: Arc::new(eval), support, holder_order },
        })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            WeightKind::Box { alpha } => format!("box({alpha})"),
            WeightKind::Mesa { a, b, c, d } => format!("mesa({a},{b},{c},{d})"),
            WeightKind::HolderCusp { h, alpha } => format!("holder_cusp({h},{alpha})"),
            WeightKind::Custom { name, .. } => name.clone(),
        }
    }

    /// Smallest closed interval outside which ℓ vanishes.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            WeightKind::Box { alpha } => (*alpha, 1.0 - alpha),
            WeightKind::Mesa { a, d, .. } => (*a, *d),
            WeightKind::HolderCusp { alpha, .. } => (*alpha, 1.0 - alpha),
            WeightKind::Custom { support, .. } => *support,
        }
    }

    /// Hölder smoothness order of ℓ (1 = Lipschitz); metadata for experiments.
    pub fn holder_order(&self) -> f64 {
        match &self.kind {
            WeightKind::Box { .. } => 1.0,
            WeightKind::Mesa { .. } => 1.0,
            WeightKind::HolderCusp { h, .. } => *h,
            WeightKind::Custom { holder_order, .. } => *holder_order,
        }
    }

    /// Point value ℓ(s); support endpoints are inclusive.
    pub fn eval(&self, s: f64) -> f64 {
        match &self.kind {
            WeightKind::Box { alpha } => {
                if s >= *alpha && s <= 1.0 - alpha {
                    1.0
                } else {
                    0.0
                }
            }
            WeightKind::Mesa { a, b, c, d } => {
                if s < *a || s > *d {
                    0.0
                } else if s < *b {
                    (s - a) / (b - a)
                } else if s <= *c {
                    1.0
                } else {
                    (d - s) / (d - c)
                }
            }
            WeightKind::HolderCusp { h, alpha } => {
                if s >= *alpha && s <= 1.0 - alpha {
                    1.0 - (2.0 * s - 1.0).abs().powf(*h)
                } else {
                    0.0
                }
            }
            WeightKind::Custom { eval, support, .. } => {
                if s >= support.0 && s <= support.1 {
                    eval(s)
                } else {
                    0.0
                }
            }
        }
    }

    /// ∫ ℓ over a subinterval of [0,1]: closed form for the piecewise-linear
    /// families, adaptive quadrature otherwise. Exactly 0 when the interval
    /// misses the support, so trimmed ranks get weight 0 with no roundoff.
    pub fn integral(&self, lo: f64, hi: f64) -> Result<f64> {
        debug_assert!(lo <= hi);
        let (slo, shi) = self.support();
        if hi <= slo || lo >= shi {
            return Ok(0.0);
        }
        match &self.kind {
            WeightKind::Box { alpha } => {
                let a = lo.max(*alpha);
                let b = hi.min(1.0 - alpha);
                Ok(if b > a { b - a } else { 0.0 })
            }
            WeightKind::Mesa { a, b, c, d } => {
                Ok(mesa_antiderivative(hi, *a, *b, *c, *d) - mesa_antiderivative(lo, *a, *b, *c, *d))
            }
            _ => quad::integrate(|s| self.eval(s), lo.max(slo), hi.min(shi), CELL_TOL),
        }
    }

    /// Rank weights (w_1, …, w_n): `w_i = ∫ ℓ over ((i−1)/n, i/n]`, so that
    /// Σ w_i = ∫₀¹ ℓ.
    pub fn weights_at(&self, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let nf = n as f64;
        (1..=n)
            .map(|i| self.integral((i - 1) as f64 / nf, i as f64 / nf))
            .collect()
    }
}

/// ∫₀^s of the mesa trapezoid; the degenerate-edge cases (b = a or d = c, a
/// vertical jump) contribute zero width.
fn mesa_antiderivative(s: f64, a: f64, b: f64, c: f64, d: f64) -> f64 {
    let rise = if b > a { 0.5 * (b - a) } else { 0.0 };
    let fall = if d > c { 0.5 * (d - c) } else { 0.0 };
    if s <= a {
        0.0
    } else if s < b {
        0.5 * (s - a) * (s - a) / (b - a)
    } else if s <= c {
        rise + (s - b)
    } else if s < d {
        rise + (c - b) + fall - 0.5 * (d - s) * (d - s) / (d - c)
    } else {
        rise + (c - b) + fall
    }
}

/// A smooth real function g applied to the sample mean: T(P) = g(∫x dP).
#[derive(Clone)]
pub struct SmoothFunctionOfMean {
    name: String,
    g: ScalarFn,
    g_prime: ScalarFn,
    /// Hölder order of g′ (1 = Lipschitz derivative).
    holder_order: f64,
    /// Points where g′ is not differentiable; the derivative self-check skips
    /// a neighbourhood of these.
    kinks: Vec<f64>,
}

impl fmt::Debug for SmoothFunctionOfMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothFunctionOfMean({})", self.name)
    }
}

impl SmoothFunctionOfMean {
    pub fn new(
        name: impl Into<String>,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
        holder_order: f64,
        kinks: Vec<f64>,
    ) -> Result<Self> {
        if !(holder_order > 0.0 && holder_order <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "holder order must lie in (0,1], got {holder_order}"
            )));
        }
        Ok(Self {
            name: name.into(),
            g: Arc::new(g),
            g_prime: Arc::new(g_prime),
            holder_order,
            kinks,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    pub fn g_prime(&self, x: f64) -> f64 {
        (self.g_prime)(x)
    }

    pub fn holder_order(&self) -> f64 {
        self.holder_order
    }

    /// Checks g′ against a central difference of g on a grid, skipping a
    /// neighbourhood of declared kinks. Guards registry entries and custom
    /// functionals against a mistyped derivative.
    pub fn validate_derivative(&self, lo: f64, hi: f64) -> Result<()> {
        const STEP: f64 = 1e-5;
        const TOL: f64 = 1e-6;
        let points = 41;
        for k in 0..points {
            let x = lo + (hi - lo) * k as f64 / (points - 1) as f64;
            if self.kinks.iter().any(|&c| (x - c).abs() < 10.0 * STEP) {
                continue;
            }
            let numeric = (self.g(x + STEP) - self.g(x - STEP)) / (2.0 * STEP);
            let stated = self.g_prime(x);
            let scale = stated.abs().max(1.0);
            if !((numeric - stated).abs() <= TOL * scale) {
                return Err(Error::InvalidParams(format!(
                    "derivative of '{}' disagrees with finite difference at x={x}: stated {stated}, numeric {numeric}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// A statistical functional T from one of the two supported families.
#[derive(Clone, Debug)]
pub enum FunctionalSpec {
    /// T(P) = g(mean of P).
    FunctionOfMean(SmoothFunctionOfMean),
    /// T(P) = ∫₀¹ ℓ(s) P⁻¹(s) ds, a trimmed L-statistic.
    TrimmedL(WeightFunction),
}

impl FunctionalSpec {
    pub fn identity() -> Self {
        Self::FunctionOfMean(
            SmoothFunctionOfMean::new("identity", |x| x, |_| 1.0, 1.0, vec![]).unwrap(),
        )
    }

    pub fn square() -> Self {
        Self::FunctionOfMean(
            SmoothFunctionOfMean::new("square", |x| x * x, |x| 2.0 * x, 1.0, vec![]).unwrap(),
        )
    }

    /// g(x) = x − sgn(x)·x², whose derivative 1 − 2|x| is Lipschitz but not
    /// differentiable at 0 — the canonical h = 1 example for the rate studies.
    pub fn paper_sgn() -> Self {
        Self::FunctionOfMean(
            SmoothFunctionOfMean::new(
                "paper_sgn",
                |x| x - x.signum() * x * x,
                |x| 1.0 - 2.0 * x.abs(),
                1.0,
                vec![0.0],
            )
            .unwrap(),
        )
    }

    /// Parses a registry name with optional parenthesized parameters, e.g.
    /// `square`, `box(0.25)`, `mesa(0.2,0.3,0.7,0.8)`, `holder_cusp(0.6,0.1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = split_call(text)?;
        let want = |k: usize, args: &[f64]| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "functional '{name}' takes {k} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "identity" => {
                want(0, &args)?;
                Ok(Self::identity())
            }
            "square" => {
                want(0, &args)?;
                Ok(Self::square())
            }
            "paper_sgn" => {
                want(0, &args)?;
                Ok(Self::paper_sgn())
            }
            "box" => {
                want(1, &args)?;
                Ok(Self::TrimmedL(WeightFunction::boxcar(args[0])?))
            }
            "mesa" => {
                want(4, &args)?;
                Ok(Self::TrimmedL(WeightFunction::mesa(args[0], args[1], args[2], args[3])?))
            }
            "holder_cusp" => {
                want(2, &args)?;
                Ok(Self::TrimmedL(WeightFunction::holder_cusp(args[0], args[1])?))
            }
            other => Err(Error::UnknownFunctional(other.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::FunctionOfMean(g) => g.name().to_string(),
            Self::TrimmedL(w) => w.name(),
        }
    }

    /// Hölder order driving the expected equivalence rate n^{−h}.
    pub fn holder_order(&self) -> f64 {
        match self {
            Self::FunctionOfMean(g) => g.holder_order(),
            Self::TrimmedL(w) => w.holder_order(),
        }
    }

    /// Plug-in value T(ε_n).
    pub fn eval(&self, sample: &EmpiricalSample) -> Result<f64> {
        match self {
            Self::FunctionOfMean(g) => Ok(g.g(sample.mean())),
            Self::TrimmedL(w) => {
                let weights = w.weights_at(sample.n())?;
                Ok(dot(&weights, sample.values()))
            }
        }
    }

    /// Influence function φ_{ε_n}(x) of T at the empirical distribution.
    ///
    /// Function of the mean: g′(x̄)(x − x̄). L-statistic:
    /// φ(x) = −Σ_{j=1}^{n−1} (1{x ≤ x_(j)} − j/n) ℓ(j/n) (x_(j+1) − x_(j)),
    /// the directional derivative toward a point mass at x.
    pub fn influence(&self, sample: &EmpiricalSample, x: f64) -> Result<f64> {
        match self {
            Self::FunctionOfMean(g) => Ok(g.g_prime(sample.mean()) * (x - sample.mean())),
            Self::TrimmedL(w) => {
                let v = sample.values();
                let n = sample.n();
                let nf = n as f64;
                let mut acc = 0.0;
                for j in 1..n {
                    let gap = v[j] - v[j - 1];
                    if gap == 0.0 {
                        continue;
                    }
                    let indicator = if x <= v[j - 1] { 1.0 } else { 0.0 };
                    acc += (indicator - j as f64 / nf) * w.eval(j as f64 / nf) * gap;
                }
                Ok(-acc)
            }
        }
    }

    /// All influence values (φ(x_(1)), …, φ(x_(n))) in one O(n) sweep.
    ///
    /// Exploits that for sorted data the indicator 1{x_(i) ≤ x_(j)} changes
    /// only at j = i (ties contribute zero through the vanishing gaps), so the
    /// sum for consecutive i differs by a single suffix/prefix step.
    pub fn influence_all(&self, sample: &EmpiricalSample) -> Result<Vec<f64>> {
        match self {
            Self::FunctionOfMean(g) => {
                let d = g.g_prime(sample.mean());
                let mean = sample.mean();
                Ok(sample.values().iter().map(|&x| d * (x - mean)).collect())
            }
            Self::TrimmedL(w) => {
                let v = sample.values();
                let n = sample.n();
                let nf = n as f64;
                // c_j = ℓ(j/n)·gap_j for j = 1..n−1.
                let c: Vec<f64> = (1..n)
                    .map(|j| w.eval(j as f64 / nf) * (v[j] - v[j - 1]))
                    .collect();
                // φ(x_(i)) = −[ Σ_{j>=i} (1 − j/n) c_j − Σ_{j<i} (j/n) c_j ].
                // Walk i upward, peeling terms from the suffix into the prefix.
                let mut suffix: f64 = c
                    .iter()
                    .enumerate()
                    .map(|(k, cj)| (1.0 - (k + 1) as f64 / nf) * cj)
                    .sum();
                let mut prefix = 0.0;
                let mut out = Vec::with_capacity(n);
                for i in 1..=n {
                    out.push(-(suffix - prefix));
                    if i < n {
                        let cj = c[i - 1];
                        suffix -= (1.0 - i as f64 / nf) * cj;
                        prefix += (i as f64 / nf) * cj;
                    }
                }
                Ok(out)
            }
        }
    }
}

fn dot(w: &[f64], x: &[f64]) -> f64 {
    debug_assert_eq!(w.len(), x.len());
    w.iter().zip(x).map(|(wi, xi)| wi * xi).sum()
}

/// Splits `name(p1,p2,…)` into the name and parsed parameters; bare names get
/// an empty parameter list.
pub(crate) fn split_call(text: &str) -> Result<(&str, Vec<f64>)> {
    if let Some(open) = text.find('(') {
        if !text.ends_with(')') {
            return Err(Error::InvalidParams(format!("unbalanced parentheses in '{text}'")));
        }
        let name = text[..open].trim();
        let inner = &text[open + 1..text.len() - 1];
        let args = inner
            .split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<f64>()
                    .map_err(|_| Error::InvalidParams(format!("bad numeric parameter '{p}' in '{text}'")))
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok((name, args))
    } else {
        Ok((text, Vec::new()))
    }
}
