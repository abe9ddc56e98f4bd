//! Composite integration over `[0, u_max]` by concatenated panels.
//!
//! Every operation evaluates each panel independently (optionally on a rayon
//! pool) into a vector indexed by panel, then reduces that vector in a fixed
//! order. Results are therefore bitwise identical for any thread count.

use alloc::vec::Vec;
use core::time::Duration;

use crate::error::{Error, Result};
use crate::math;
use crate::rules::{gauss_legendre, QuadratureRule, MAX_ORDER};
use crate::sum::CompensatedSum;
pub use crate::sum::Summation;

/// Upper bound on `u_max / panel_width`.
pub const MAX_PANELS: f64 = 1e8;

/// Fraction of `[0, u_max]` after which sign changes are tracked by
/// [`Tail::ZeroPairAverage`].
const TAIL_START: f64 = 0.9;

/// One panel in this many contributes to the error estimate.
const ESTIMATE_STRIDE: usize = 100;

/// Last-panel remainders shorter than this fraction of a panel are snapped
/// onto `u_max`.
const SNAP_FRACTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Tail {
    /// Plain truncation at `u_max`.
    #[default]
    Truncate,
    /// Mean of the partial sums at the last two integrand sign changes
    /// beyond `0.9·u_max`.
    ZeroPairAverage,
}

/// How the inner integral `∫₀ᵘ g` is obtained at an outer node `u` of a
/// triangular integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum InnerMode {
    /// Prefix value at the panel start plus an exact sub-panel integral up to `u`.
    #[default]
    ExactPrefix,
    /// Prefix value at the panel start plus the weighted sum of `g` over the
    /// panel's own nodes up to and including `u`; the remainder of the panel
    /// counts as zero. Deliberately lopsided, it reproduces a fixed-lattice
    /// nested scheme and carries a percent-level bias.
    SlotBoundaryEmulation,
}

/// Configuration of one composite run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelScheme {
    pub panel_width: f64,
    pub rule_order: usize,
    pub summation: Summation,
    pub tail: Tail,
    pub u_max: f64,
}

impl PanelScheme {
    /// Unit panels, order 10, compensated summation, plain truncation.
    pub fn new(u_max: f64) -> Self {
        Self {
            panel_width: 1.0,
            rule_order: 10,
            summation: Summation::Compensated,
            tail: Tail::Truncate,
            u_max,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.rule_order = order;
        self
    }

    pub fn with_panel_width(mut self, width: f64) -> Self {
        self.panel_width = width;
        self
    }

    pub fn with_summation(mut self, summation: Summation) -> Self {
        self.summation = summation;
        self
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.panel_width > 0.0) || !self.panel_width.is_finite() {
            return Err(Error::InvalidArgument("panel_width must be positive and finite"));
        }
        if !self.u_max.is_finite() || !(self.u_max >= self.panel_width) {
            return Err(Error::InvalidArgument("u_max must be finite and >= panel_width"));
        }
        if !(1..=MAX_ORDER).contains(&self.rule_order) {
            return Err(Error::InvalidArgument("rule order must be within [1, 64]"));
        }
        let panels = self.u_max / self.panel_width;
        if panels > MAX_PANELS {
            return Err(Error::TooManyPanels { panels, limit: MAX_PANELS });
        }
        Ok(())
    }

    /// Number of panels covering `[0, u_max]`, the last possibly shorter.
    pub fn panel_count(&self) -> usize {
        Grid::new(self).panels
    }
}

/// Uniform panel boundaries `k·w`, with the final boundary pinned to `u_max`.
#[derive(Debug, Clone, Copy)]
struct Grid {
    width: f64,
    u_max: f64,
    panels: usize,
}

impl Grid {
    fn new(scheme: &PanelScheme) -> Self {
        let ratio = scheme.u_max / scheme.panel_width;
        let full = math::floor(ratio);
        let mut panels = full as usize;
        if ratio - full > SNAP_FRACTION {
            panels += 1;
        }
        Self {
            width: scheme.panel_width,
            u_max: scheme.u_max,
            panels: panels.max(1),
        }
    }

    #[inline]
    fn boundary(&self, k: usize) -> f64 {
        if k >= self.panels {
            self.u_max
        } else {
            k as f64 * self.width
        }
    }

    #[inline]
    fn panel(&self, k: usize) -> (f64, f64) {
        (self.boundary(k), self.boundary(k + 1))
    }
}

/// Cumulative inner integral `∫₀^{u_k} g` at each panel boundary `u_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixTable {
    boundaries: Vec<f64>,
    cumulative: Vec<f64>,
}

impl PrefixTable {
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn last_boundary(&self) -> f64 {
        *self.boundaries.last().expect("prefix table has at least one panel")
    }

    /// Index of the largest boundary `<= u`. Caller guarantees `u` is in range.
    fn locate(&self, u: f64) -> usize {
        let idx = self.boundaries.partition_point(|&b| b <= u);
        idx.saturating_sub(1).min(self.boundaries.len() - 2)
    }
}

/// Outcome of one pipeline or engine run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    /// Heuristic: `|Q_k − Q_{k−2}|` summed over every hundredth panel, scaled
    /// to the full grid, plus a rounding floor.
    pub error_estimate: f64,
    /// Integrand calls, counted by construction.
    pub evaluations: u64,
    pub elapsed: Duration,
}

impl EvalResult {
    /// A value known analytically: no evaluations, no error.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            evaluations: 0,
            elapsed: Duration::ZERO,
        }
    }
}

#[cfg(feature = "std")]
struct Stopwatch(std::time::Instant);

#[cfg(feature = "std")]
impl Stopwatch {
    fn start() -> Self {
        Self(std::time::Instant::now())
    }
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

#[cfg(not(feature = "std"))]
struct Stopwatch;

#[cfg(not(feature = "std"))]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch
    }
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

/// Produces integrand values at the nodes of `rule` mapped onto panel `k`.
trait PanelBody: Sync {
    fn node_values(&self, rule: &QuadratureRule, k: usize, a: f64, b: f64, out: &mut [f64]) -> Result<()>;

    /// Integrand calls made by one `node_values` call with a rule of `order`.
    fn calls_per_panel(&self, order: usize) -> u64;

    fn panel_value(&self, rule: &QuadratureRule, k: usize, a: f64, b: f64) -> Result<f64> {
        let mut buf = [0.0; MAX_ORDER];
        let out = &mut buf[..rule.order()];
        self.node_values(rule, k, a, b, out)?;
        let acc: f64 = rule.weights().iter().zip(out.iter()).map(|(w, y)| w * y).sum();
        Ok(0.5 * (b - a) * acc)
    }
}

#[inline]
fn checked(x: f64, y: f64) -> Result<f64> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { abscissa: x })
    }
}

struct Plain<F>(F);

impl<F: Fn(f64) -> f64 + Sync> PanelBody for Plain<F> {
    fn node_values(&self, rule: &QuadratureRule, _k: usize, a: f64, b: f64, out: &mut [f64]) -> Result<()> {
        for (i, y) in out.iter_mut().enumerate() {
            let x = rule.mapped_node(i, a, b);
            *y = checked(x, (self.0)(x))?;
        }
        Ok(())
    }

    fn calls_per_panel(&self, order: usize) -> u64 {
        order as u64
    }
}

struct Triangular<'t, F, G> {
    outer: F,
    inner: G,
    table: &'t PrefixTable,
    /// Rule of the prefix table, used for exact sub-panel completion.
    table_rule: &'t QuadratureRule,
    mode: InnerMode,
}

impl<F, G> PanelBody for Triangular<'_, F, G>
where
    F: Fn(f64) -> f64 + Sync,
    G: Fn(f64) -> f64 + Sync,
{
    fn node_values(&self, rule: &QuadratureRule, k: usize, a: f64, b: f64, out: &mut [f64]) -> Result<()> {
        let base = self.table.cumulative[k];
        match self.mode {
            InnerMode::ExactPrefix => {
                for (i, y) in out.iter_mut().enumerate() {
                    let x = rule.mapped_node(i, a, b);
                    let inner = base + self.table_rule.apply(&self.inner, a, x)?;
                    *y = checked(x, (self.outer)(x) * inner)?;
                }
            }
            InnerMode::SlotBoundaryEmulation => {
                let mut partial = 0.0;
                for (i, y) in out.iter_mut().enumerate() {
                    let x = rule.mapped_node(i, a, b);
                    partial += rule.mapped_weight(i, a, b) * checked(x, (self.inner)(x))?;
                    *y = checked(x, (self.outer)(x) * (base + partial))?;
                }
            }
        }
        Ok(())
    }

    fn calls_per_panel(&self, order: usize) -> u64 {
        let order = order as u64;
        match self.mode {
            InnerMode::ExactPrefix => order * (1 + self.table_rule.order() as u64),
            InnerMode::SlotBoundaryEmulation => 2 * order,
        }
    }
}

/// Evaluate `body(k)` for every panel, in parallel when enabled. On failure
/// the error of the lowest failing panel is reported.
fn map_panels<P>(panels: usize, body: P) -> Result<Vec<f64>>
where
    P: Fn(usize) -> Result<f64> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let par: Result<Vec<f64>> = (0..panels).into_par_iter().with_min_len(256).map(&body).collect();
        if par.is_ok() {
            return par;
        }
    }
    (0..panels).map(body).collect()
}

fn run_body<B: PanelBody>(body: &B, scheme: &PanelScheme, rule: &QuadratureRule) -> Result<EvalResult> {
    let clock = Stopwatch::start();
    let grid = Grid::new(scheme);
    let values = map_panels(grid.panels, |k| {
        let (a, b) = grid.panel(k);
        body.panel_value(rule, k, a, b)
    })?;
    let mut evaluations = grid.panels as u64 * body.calls_per_panel(rule.order());

    let value = match scheme.tail {
        Tail::Truncate => scheme.summation.reduce(&values),
        Tail::ZeroPairAverage => {
            let (v, calls) = zero_pair_average(body, &grid, rule, &values)?;
            evaluations += calls;
            v
        }
    };

    let (error_estimate, calls) = estimate_error(body, &grid, rule, &values)?;
    evaluations += calls;

    Ok(EvalResult {
        value,
        error_estimate,
        evaluations,
        elapsed: clock.elapsed(),
    })
}

fn zero_pair_average<B: PanelBody>(
    body: &B,
    grid: &Grid,
    rule: &QuadratureRule,
    values: &[f64],
) -> Result<(f64, u64)> {
    let start = (math::floor(TAIL_START * grid.u_max / grid.width) as usize).min(grid.panels);
    let mut partial = CompensatedSum::new();
    partial.extend(values[..start].iter().copied());

    let mut buf = [0.0; MAX_ORDER];
    let out = &mut buf[..rule.order()];
    let mut prev_sign = 0.0;
    let mut marks = [f64::NAN; 2];
    let mut found = 0usize;
    for k in start..grid.panels {
        let (a, b) = grid.panel(k);
        body.node_values(rule, k, a, b, out)?;
        for (i, &y) in out.iter().enumerate() {
            let sign = if y > 0.0 {
                1.0
            } else if y < 0.0 {
                -1.0
            } else {
                0.0
            };
            if sign != 0.0 {
                if prev_sign != 0.0 && sign != prev_sign {
                    marks[found % 2] = partial.value();
                    found += 1;
                }
                prev_sign = sign;
            }
            partial.add(rule.mapped_weight(i, a, b) * y);
        }
    }
    let calls = (grid.panels - start) as u64 * body.calls_per_panel(rule.order());
    if found < 2 {
        let mut all = CompensatedSum::new();
        all.extend(values.iter().copied());
        return Ok((all.value(), calls));
    }
    Ok((0.5 * (marks[0] + marks[1]), calls))
}

fn estimate_error<B: PanelBody>(
    body: &B,
    grid: &Grid,
    rule: &QuadratureRule,
    values: &[f64],
) -> Result<(f64, u64)> {
    let order = rule.order();
    let alt_order = if order > 2 { order - 2 } else { order + 2 };
    let alt = gauss_legendre(alt_order)?;
    let sampled: Vec<usize> = (0..grid.panels).step_by(ESTIMATE_STRIDE).collect();
    let diffs = map_panels(sampled.len(), |s| {
        let k = sampled[s];
        let (a, b) = grid.panel(k);
        Ok((values[k] - body.panel_value(&alt, k, a, b)?).abs())
    })?;
    let mut disc = CompensatedSum::new();
    disc.extend(diffs.iter().copied());
    let scale = grid.panels as f64 / sampled.len() as f64;
    let magnitude: f64 = values.iter().map(|v| v.abs()).sum();
    let estimate = scale * disc.value() + 4.0 * f64::EPSILON * magnitude;
    Ok((estimate, sampled.len() as u64 * body.calls_per_panel(alt_order)))
}

/// `∫₀^{u_max} f` over the panels of `scheme`.
pub fn integrate_composite<F>(f: F, scheme: &PanelScheme) -> Result<EvalResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    scheme.validate()?;
    let rule = gauss_legendre(scheme.rule_order)?;
    run_body(&Plain(f), scheme, &rule)
}

fn build_prefix_with<G>(g: &G, scheme: &PanelScheme, rule: &QuadratureRule) -> Result<PrefixTable>
where
    G: Fn(f64) -> f64 + Sync,
{
    let grid = Grid::new(scheme);
    let values = map_panels(grid.panels, |k| {
        let (a, b) = grid.panel(k);
        rule.apply(g, a, b)
    })?;
    let boundaries: Vec<f64> = (0..=grid.panels).map(|k| grid.boundary(k)).collect();
    let mut cumulative = Vec::with_capacity(grid.panels + 1);
    cumulative.push(0.0);
    let mut running = CompensatedSum::new();
    for v in values {
        running.add(v);
        cumulative.push(running.value());
    }
    Ok(PrefixTable { boundaries, cumulative })
}

/// Cumulative integrals of `g` at every panel boundary of `scheme`.
///
/// Always accumulated with compensated summation, whatever
/// `scheme.summation` says.
pub fn build_prefix<G>(g: G, scheme: &PanelScheme) -> Result<PrefixTable>
where
    G: Fn(f64) -> f64 + Sync,
{
    scheme.validate()?;
    let rule = gauss_legendre(scheme.rule_order)?;
    build_prefix_with(&g, scheme, &rule)
}

/// `∫₀ᵘ g` for any `u` covered by `table`: stored prefix at the panel start
/// plus the sub-panel integral up to `u`.
pub fn prefix_at<G>(table: &PrefixTable, g: G, u: f64, rule: &QuadratureRule) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if !(u >= 0.0) || u > table.last_boundary() {
        return Err(Error::InvalidArgument("u lies outside the prefix table"));
    }
    let k = table.locate(u);
    let start = table.boundaries[k];
    if u == start {
        return Ok(table.cumulative[k]);
    }
    if u == table.boundaries[k + 1] {
        return Ok(table.cumulative[k + 1]);
    }
    Ok(table.cumulative[k] + rule.apply(&g, start, u)?)
}

/// `∫₀^{u_max} f(u)·[∫₀ᵘ g(v) dv] du` with the inner integral taken from a
/// prefix table of `g` on the same grid.
pub fn integrate_triangular<F, G>(f: F, g: G, scheme: &PanelScheme, inner_mode: InnerMode) -> Result<EvalResult>
where
    F: Fn(f64) -> f64 + Sync,
    G: Fn(f64) -> f64 + Sync,
{
    scheme.validate()?;
    let clock = Stopwatch::start();
    let rule = gauss_legendre(scheme.rule_order)?;
    let table = build_prefix_with(&g, scheme, &rule)?;
    let body = Triangular {
        outer: f,
        inner: g,
        table: &table,
        table_rule: &rule,
        mode: inner_mode,
    };
    let mut res = run_body(&body, scheme, &rule)?;
    res.evaluations += table.boundaries.len().saturating_sub(1) as u64 * rule.order() as u64;
    res.elapsed = clock.elapsed();
    Ok(res)
}
