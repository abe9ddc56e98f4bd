//! The concrete integrals, each reduced to real, pointwise-evaluable
//! integrands on the half-line.
//!
//! Principal-value and delta contributions are already folded in
//! analytically; at runtime they appear only as the additive `π/2` constants
//! of [`bracket_product`] and the `n = 2` tier. Fresnel-type integrals in `ω`
//! are evaluated in `ζ = ω²/4` (or `ω²/2`), where `dω/ω = dζ/(2ζ)` turns
//! them into half of a Dirichlet integral, and `scheme.u_max` is read as the
//! `ζ` truncation.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::engine::{integrate_composite, integrate_triangular, EvalResult, InnerMode, PanelScheme};
use crate::error::{Error, Result};
use crate::funcs::{si, Inner, Kernel};

/// `π²/12`, the value of the identity.
pub const IDENTITY_VALUE: f64 = PI * PI / 12.0;
/// `−π²/4`, the product of the two curly brackets.
pub const BRACKET_VALUE: f64 = -PI * PI / 4.0;
/// Prefactor of the `n = 3` assembly.
pub const I3_PREFACTOR: f64 = -PI / 32.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PipelineId {
    Dirichlet,
    FresnelQuarter,
    IdentityFormA,
    IdentityFormB,
    BracketProduct,
    I1,
    I2,
    I3,
}

impl PipelineId {
    pub const ALL: [PipelineId; 8] = [
        PipelineId::Dirichlet,
        PipelineId::FresnelQuarter,
        PipelineId::IdentityFormA,
        PipelineId::IdentityFormB,
        PipelineId::BracketProduct,
        PipelineId::I1,
        PipelineId::I2,
        PipelineId::I3,
    ];

    /// Analytic target.
    pub fn reference(self) -> f64 {
        match self {
            PipelineId::Dirichlet => FRAC_PI_2,
            PipelineId::FresnelQuarter => FRAC_PI_4,
            PipelineId::IdentityFormA | PipelineId::IdentityFormB => IDENTITY_VALUE,
            PipelineId::BracketProduct => BRACKET_VALUE,
            PipelineId::I1 => FRAC_PI_2,
            PipelineId::I2 => PI * PI / 16.0,
            PipelineId::I3 => PI * PI * PI / 192.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PipelineId::Dirichlet => "dirichlet",
            PipelineId::FresnelQuarter => "fresnel_quarter",
            PipelineId::IdentityFormA => "identity_form_a",
            PipelineId::IdentityFormB => "identity_form_b",
            PipelineId::BracketProduct => "bracket_product",
            PipelineId::I1 => "i1",
            PipelineId::I2 => "i2",
            PipelineId::I3 => "i3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Pipelines with a triangular integral, for which the inner mode matters.
    pub fn uses_inner(self) -> bool {
        matches!(self, PipelineId::IdentityFormA | PipelineId::IdentityFormB | PipelineId::I3)
    }

    /// Evaluate with `cfg`.
    pub fn run(self, cfg: &PipelineConfig) -> Result<EvalResult> {
        match self {
            PipelineId::Dirichlet => dirichlet(cfg),
            PipelineId::FresnelQuarter => fresnel_quarter(cfg),
            PipelineId::IdentityFormA => identity(cfg, Form::A),
            PipelineId::IdentityFormB => identity(cfg, Form::B),
            PipelineId::BracketProduct => bracket_product(cfg),
            PipelineId::I1 => i_n(1, cfg),
            PipelineId::I2 => i_n(2, cfg),
            PipelineId::I3 => i_n(3, cfg),
        }
    }
}

/// Source of the inner integrals `F` and `G` in triangular terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum InnerSource {
    /// Prefix table of the inner integrand on the outer grid.
    #[default]
    QuadraturePrefix,
    /// Closed forms through `Si` and `Ci`.
    ClosedForm,
}

/// The two algebraic forms of the identity's second term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Form {
    /// `∫ sinc(u)·G(u) du`.
    #[default]
    A,
    /// `∫ sin u cos u/u · (π/2 − Si(u)) du`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub scheme: PanelScheme,
    pub inner_source: InnerSource,
    /// Only consulted when `inner_source` is [`InnerSource::QuadraturePrefix`].
    pub inner_mode: InnerMode,
}

impl PipelineConfig {
    pub fn new(scheme: PanelScheme) -> Self {
        Self {
            scheme,
            inner_source: InnerSource::QuadraturePrefix,
            inner_mode: InnerMode::ExactPrefix,
        }
    }

    pub fn with_inner_source(mut self, source: InnerSource) -> Self {
        self.inner_source = source;
        self
    }

    pub fn with_inner_mode(mut self, mode: InnerMode) -> Self {
        self.inner_mode = mode;
        self
    }
}

fn combine(parts: &[EvalResult], value: f64, error_estimate: f64) -> EvalResult {
    EvalResult {
        value,
        error_estimate,
        evaluations: parts.iter().map(|r| r.evaluations).sum(),
        elapsed: parts.iter().map(|r| r.elapsed).sum(),
    }
}

/// `∫₀^{u_max} sin u / u du → π/2`.
pub fn dirichlet(cfg: &PipelineConfig) -> Result<EvalResult> {
    integrate_composite(|u| Kernel::Sinc.eval(u), &cfg.scheme)
}

/// `∫₀^{ω_max} sin(ω²/4)/ω dω = ½∫₀^Z sinc(ζ) dζ → π/4`, with `Z = u_max`.
pub fn fresnel_quarter(cfg: &PipelineConfig) -> Result<EvalResult> {
    let half_dirichlet = dirichlet(cfg)?;
    Ok(EvalResult {
        value: 0.5 * half_dirichlet.value,
        error_estimate: 0.5 * half_dirichlet.error_estimate,
        ..half_dirichlet
    })
}

/// `∫ F·f` where `F(u) = ∫₀ᵘ g` comes from the configured source.
fn triangular_term(cfg: &PipelineConfig, outer: Kernel, inner: Inner) -> Result<EvalResult> {
    match cfg.inner_source {
        InnerSource::QuadraturePrefix => integrate_triangular(
            |u| outer.eval(u),
            |v| inner.integrand().eval(v),
            &cfg.scheme,
            cfg.inner_mode,
        ),
        InnerSource::ClosedForm => integrate_composite(|u| outer.eval(u) * inner.eval(u), &cfg.scheme),
    }
}

/// The two terms of the identity separately, `(first, second)`.
pub fn identity_terms(cfg: &PipelineConfig, form: Form) -> Result<(EvalResult, EvalResult)> {
    let first = triangular_term(cfg, Kernel::CosOver, Inner::F)?;
    let second = match form {
        Form::A => triangular_term(cfg, Kernel::Sinc, Inner::G)?,
        Form::B => integrate_composite(|u| Kernel::SinCosOver.eval(u) * (FRAC_PI_2 - si(u)), &cfg.scheme)?,
    };
    Ok((first, second))
}

/// `∫ cos u/u·F(u) du + ∫ sin u/u·G(u) du → π²/12` (form A), or with the
/// second term in complement form (form B).
pub fn identity(cfg: &PipelineConfig, form: Form) -> Result<EvalResult> {
    let (first, second) = identity_terms(cfg, form)?;
    Ok(combine(
        &[first, second],
        first.value + second.value,
        first.error_estimate + second.error_estimate,
    ))
}

/// Product of the two curly brackets, `−b₄·b₂` with `b = 2(π/2 − Q)` and `Q`
/// the Fresnel-type integral of each bracket. Both `Q`s reduce to
/// `½∫₀^Z sinc`, so the integral is evaluated once. Tends to `−π²/4`.
pub fn bracket_product(cfg: &PipelineConfig) -> Result<EvalResult> {
    let q = fresnel_quarter(cfg)?;
    let value = bracket_from_quarters(q.value, q.value);
    // d(−b₄b₂) = 2b₂·dQ₄ + 2b₄·dQ₂
    let b = 2.0 * (FRAC_PI_2 - q.value);
    Ok(combine(&[q], value, 4.0 * b.abs() * q.error_estimate))
}

/// `−[2(π/2 − q₄)]·[2(π/2 − q₂)]`.
pub fn bracket_from_quarters(q4: f64, q2: f64) -> f64 {
    -(2.0 * (FRAC_PI_2 - q4)) * (2.0 * (FRAC_PI_2 - q2))
}

/// `−(π/32)·(bracket + identity)`.
pub fn assemble_i3(bracket: f64, identity: f64) -> f64 {
    I3_PREFACTOR * (bracket + identity)
}

/// Tiers `n ∈ {1, 2, 3}` of the multiple integral.
pub fn i_n(n: u32, cfg: &PipelineConfig) -> Result<EvalResult> {
    match n {
        1 => Ok(EvalResult::exact(FRAC_PI_2)),
        2 => {
            let q = fresnel_quarter(cfg)?;
            Ok(combine(&[q], FRAC_PI_4 * (FRAC_PI_2 - q.value), FRAC_PI_4 * q.error_estimate))
        }
        3 => {
            let bracket = bracket_product(cfg)?;
            let ident = identity(cfg, Form::A)?;
            Ok(combine(
                &[bracket, ident],
                assemble_i3(bracket.value, ident.value),
                I3_PREFACTOR.abs() * (bracket.error_estimate + ident.error_estimate),
            ))
        }
        other => Err(Error::UnsupportedTier(other)),
    }
}
