//! Convergence sweeps: a pipeline evaluated over a grid of truncation bounds,
//! rule orders, identity forms and inner modes.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use oscquad_core::engine::{EvalResult, InnerMode, PanelScheme, Summation, Tail};
use oscquad_core::pipelines::{Form, InnerSource, PipelineConfig, PipelineId};
use oscquad_core::rules::MAX_ORDER;

use crate::names::{self, serde_names};
use crate::report::{Destination, Format};
use crate::CliError;

/// What to sweep and where the report goes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub pipeline: PipelineId,
    pub u_max_grid: Vec<f64>,
    pub order_grid: Vec<usize>,
    /// Only used by the identity pipelines.
    pub forms: Vec<Form>,
    /// Only used by pipelines with a triangular term and a prefix inner source.
    pub inner_modes: Vec<InnerMode>,
    pub inner_source: InnerSource,
    pub panel_width: f64,
    pub summation: Summation,
    pub tail: Tail,
    pub output: Format,
    pub output_path: Destination,
    /// When false, `elapsed_ms` is written as 0 so reports are reproducible.
    pub record_timing: bool,
}

impl SweepSpec {
    pub fn new(pipeline: PipelineId, u_max_grid: Vec<f64>, order_grid: Vec<usize>) -> Self {
        let forms = match pipeline {
            PipelineId::IdentityFormB => vec![Form::B],
            _ => vec![Form::A],
        };
        Self {
            pipeline,
            u_max_grid,
            order_grid,
            forms,
            inner_modes: vec![InnerMode::ExactPrefix],
            inner_source: InnerSource::QuadraturePrefix,
            panel_width: 1.0,
            summation: Summation::Compensated,
            tail: Tail::Truncate,
            output: Format::Csv,
            output_path: Destination::Stdout,
            record_timing: true,
        }
    }

    /// Parse the flat `key = value` format. Grids are comma separated; `#`
    /// starts a comment. `pipeline = identity` is accepted and expanded by
    /// `forms`.
    ///
    /// ```text
    /// pipeline = identity
    /// u_max = 1e3, 1e4, 1e5
    /// order = 10
    /// forms = A, B
    /// inner_modes = exact
    /// output = csv
    /// output_path = -
    /// ```
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut spec: Option<SweepSpec> = None;
        let mut pending: Vec<(String, String, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Invalid(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            if key == "pipeline" {
                let id = match value.as_str() {
                    "identity" => PipelineId::IdentityFormA,
                    other => names::parse_pipeline(other)?,
                };
                spec = Some(SweepSpec::new(id, Vec::new(), Vec::new()));
            } else {
                pending.push((key, value, lineno + 1));
            }
        }
        let mut spec = spec.ok_or_else(|| CliError::Invalid("sweep spec is missing 'pipeline'".into()))?;
        for (key, value, line) in pending {
            let at = |e: CliError| CliError::Invalid(format!("line {line}: {e}"));
            match key.as_str() {
                "u_max" => spec.u_max_grid = parse_list(&value, parse_f64).map_err(at)?,
                "order" => spec.order_grid = parse_list(&value, parse_usize).map_err(at)?,
                "forms" => spec.forms = parse_list(&value, names::parse_form).map_err(at)?,
                "inner_modes" => spec.inner_modes = parse_list(&value, names::parse_inner_mode).map_err(at)?,
                "inner" => spec.inner_source = names::parse_inner_source(&value).map_err(at)?,
                "panel_width" => spec.panel_width = parse_f64(&value).map_err(at)?,
                "summation" => spec.summation = names::parse_summation(&value).map_err(at)?,
                "tail" => spec.tail = names::parse_tail(&value).map_err(at)?,
                "output" => spec.output = Format::parse(&value).map_err(at)?,
                "output_path" => spec.output_path = Destination::parse(&value),
                "timing" => spec.record_timing = parse_bool(&value).map_err(at)?,
                other => return Err(CliError::Invalid(format!("line {line}: unknown key '{other}'"))),
            }
        }
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read sweep spec {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.u_max_grid.is_empty() {
            return Err(CliError::Invalid("u_max grid is empty".into()));
        }
        if self.order_grid.is_empty() {
            return Err(CliError::Invalid("order grid is empty".into()));
        }
        if let Some(o) = self.order_grid.iter().find(|o| !(1..=MAX_ORDER).contains(o)) {
            return Err(CliError::Invalid(format!("order {o} is outside [1, {MAX_ORDER}]")));
        }
        if let Some(u) = self.u_max_grid.iter().find(|u| !(**u > 0.0) || !u.is_finite()) {
            return Err(CliError::Invalid(format!("u_max {u} is not a positive finite number")));
        }
        if self.is_identity() && self.forms.is_empty() {
            return Err(CliError::Invalid("forms list is empty".into()));
        }
        if self.uses_inner_mode() && self.inner_modes.is_empty() {
            return Err(CliError::Invalid("inner_modes list is empty".into()));
        }
        for point in self.grid() {
            self.config(&point).scheme.validate()?;
        }
        Ok(())
    }

    fn is_identity(&self) -> bool {
        matches!(self.pipeline, PipelineId::IdentityFormA | PipelineId::IdentityFormB)
    }

    fn uses_inner_mode(&self) -> bool {
        self.pipeline.uses_inner() && self.inner_source == InnerSource::QuadraturePrefix
    }

    /// Grid points in report order.
    fn grid(&self) -> Vec<GridPoint> {
        let forms: Vec<Option<Form>> = if self.is_identity() {
            self.forms.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        let modes: Vec<Option<InnerMode>> = if self.uses_inner_mode() {
            self.inner_modes.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        let mut points = Vec::new();
        for &u_max in &self.u_max_grid {
            for &order in &self.order_grid {
                for &form in &forms {
                    for &inner_mode in &modes {
                        points.push(GridPoint { u_max, order, form, inner_mode });
                    }
                }
            }
        }
        points.sort_by(|a, b| {
            a.u_max
                .total_cmp(&b.u_max)
                .then(a.order.cmp(&b.order))
                .then(a.form.cmp(&b.form))
                .then(a.inner_mode.cmp(&b.inner_mode))
        });
        points.dedup();
        points
    }

    fn config(&self, p: &GridPoint) -> PipelineConfig {
        let scheme = PanelScheme::new(p.u_max)
            .with_order(p.order)
            .with_panel_width(self.panel_width)
            .with_summation(self.summation)
            .with_tail(self.tail);
        PipelineConfig::new(scheme)
            .with_inner_source(self.inner_source)
            .with_inner_mode(p.inner_mode.unwrap_or_default())
    }

    fn pipeline_at(&self, p: &GridPoint) -> PipelineId {
        match p.form {
            Some(Form::A) => PipelineId::IdentityFormA,
            Some(Form::B) => PipelineId::IdentityFormB,
            None => self.pipeline,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct GridPoint {
    u_max: f64,
    order: usize,
    form: Option<Form>,
    inner_mode: Option<InnerMode>,
}

fn parse_list<T>(value: &str, item: impl Fn(&str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(item)
        .collect()
}

fn parse_f64(s: &str) -> Result<f64, CliError> {
    s.parse().map_err(|_| CliError::Invalid(format!("'{s}' is not a number")))
}

fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::Invalid(format!("'{s}' is not a non-negative integer")))
}

fn parse_bool(s: &str) -> Result<bool, CliError> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Invalid(format!("'{s}' is not a boolean"))),
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(with = "serde_names::pipeline")]
    pub pipeline: PipelineId,
    pub u_max: f64,
    pub order: usize,
    #[serde(with = "serde_names::form")]
    pub form: Option<Form>,
    #[serde(with = "serde_names::inner_mode")]
    pub inner_mode: Option<InnerMode>,
    pub value: f64,
    pub reference: f64,
    pub ratio: f64,
    pub abs_error: f64,
    pub evaluations: u64,
    pub elapsed_ms: f64,
}

impl SweepRow {
    pub fn new(
        pipeline: PipelineId,
        u_max: f64,
        order: usize,
        form: Option<Form>,
        inner_mode: Option<InnerMode>,
        result: &EvalResult,
        record_timing: bool,
    ) -> Self {
        let reference = pipeline.reference();
        Self {
            pipeline,
            u_max,
            order,
            form,
            inner_mode,
            value: result.value,
            reference,
            ratio: result.value / reference,
            abs_error: (result.value - reference).abs(),
            evaluations: result.evaluations,
            elapsed_ms: if record_timing {
                result.elapsed.as_secs_f64() * 1e3
            } else {
                0.0
            },
        }
    }
}

/// Evaluate every grid point of `spec`. Points run concurrently; rows come
/// back ordered by `(u_max, order, form, inner_mode)`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    spec.grid()
        .par_iter()
        .map(|p| {
            let id = spec.pipeline_at(p);
            let res = id.run(&spec.config(p))?;
            Ok(SweepRow::new(id, p.u_max, p.order, p.form, p.inner_mode, &res, spec.record_timing))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_spec() {
        let spec = SweepSpec::parse(
            "# identity convergence\n\
             pipeline = identity\n\
             u_max = 1e3, 1e4\n\
             order = 8, 10\n\
             forms = A, B\n\
             inner_modes = exact, emulate\n\
             inner = prefix\n\
             summation = pairwise\n\
             tail = zero-pair\n\
             output = json\n\
             output_path = out.json\n",
        )
        .unwrap();
        assert_eq!(spec.pipeline, PipelineId::IdentityFormA);
        assert_eq!(spec.u_max_grid, vec![1e3, 1e4]);
        assert_eq!(spec.order_grid, vec![8, 10]);
        assert_eq!(spec.forms, vec![Form::A, Form::B]);
        assert_eq!(spec.inner_modes, vec![InnerMode::ExactPrefix, InnerMode::SlotBoundaryEmulation]);
        assert_eq!(spec.summation, Summation::Pairwise);
        assert_eq!(spec.tail, Tail::ZeroPairAverage);
        assert_eq!(spec.output, Format::Json);
        assert_eq!(spec.output_path, Destination::File("out.json".into()));
        assert_eq!(spec.grid().len(), 16);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SweepSpec::parse("u_max = 10").is_err());
        assert!(SweepSpec::parse("pipeline = nope").is_err());
        assert!(SweepSpec::parse("pipeline = dirichlet\nbogus = 1").is_err());
        assert!(SweepSpec::parse("pipeline = dirichlet\nu_max 10").is_err());
        assert!(SweepSpec::parse("pipeline = dirichlet\norder = ten").is_err());
    }

    #[test]
    fn grid_is_sorted_and_collapses_unused_axes() {
        let mut spec = SweepSpec::new(PipelineId::Dirichlet, vec![100.0, 10.0], vec![10, 8]);
        spec.forms = vec![Form::B, Form::A];
        spec.inner_modes = vec![InnerMode::SlotBoundaryEmulation];
        let grid = spec.grid();
        assert_eq!(grid.len(), 4);
        assert!(grid.iter().all(|p| p.form.is_none() && p.inner_mode.is_none()));
        let keys: Vec<(f64, usize)> = grid.iter().map(|p| (p.u_max, p.order)).collect();
        assert_eq!(keys, vec![(10.0, 8), (10.0, 10), (100.0, 8), (100.0, 10)]);
    }

    #[test]
    fn closed_inner_drops_mode_axis() {
        let mut spec = SweepSpec::new(PipelineId::I3, vec![100.0], vec![10]);
        spec.inner_source = InnerSource::ClosedForm;
        spec.inner_modes = vec![InnerMode::ExactPrefix, InnerMode::SlotBoundaryEmulation];
        assert_eq!(spec.grid().len(), 1);
    }

    #[test]
    fn validation() {
        let spec = SweepSpec::new(PipelineId::Dirichlet, vec![10.0], vec![]);
        assert!(matches!(spec.validate(), Err(CliError::Invalid(_))));
        let spec = SweepSpec::new(PipelineId::Dirichlet, vec![], vec![10]);
        assert!(spec.validate().is_err());
        let spec = SweepSpec::new(PipelineId::Dirichlet, vec![10.0], vec![65]);
        assert!(spec.validate().is_err());
        let spec = SweepSpec::new(PipelineId::Dirichlet, vec![1e9], vec![10]);
        let msg = spec.validate().unwrap_err().to_string();
        assert!(msg.contains("limit"), "{msg}");
    }

    #[test]
    fn row_invariants() {
        let res = EvalResult::exact(1.25);
        let row = SweepRow::new(PipelineId::Dirichlet, 10.0, 10, None, None, &res, true);
        assert!((row.ratio * row.reference - row.value).abs() <= 1e-15 * row.value.abs());
        assert_eq!(row.abs_error, (row.value - row.reference).abs());
    }
}
