//! Textual names of enum options, shared by the CLI flags, the sweep spec
//! file and the reports.

use oscquad_core::engine::{InnerMode, Summation, Tail};
use oscquad_core::pipelines::{Form, InnerSource, PipelineId};

use crate::CliError;

pub fn form_name(form: Form) -> &'static str {
    match form {
        Form::A => "A",
        Form::B => "B",
    }
}

pub fn parse_form(s: &str) -> Result<Form, CliError> {
    match s {
        "A" | "a" => Ok(Form::A),
        "B" | "b" => Ok(Form::B),
        _ => Err(CliError::Invalid(format!("unknown form '{s}' (expected A or B)"))),
    }
}

pub fn inner_mode_name(mode: InnerMode) -> &'static str {
    match mode {
        InnerMode::ExactPrefix => "exact",
        InnerMode::SlotBoundaryEmulation => "emulate",
    }
}

pub fn parse_inner_mode(s: &str) -> Result<InnerMode, CliError> {
    match s {
        "exact" | "exact-prefix" => Ok(InnerMode::ExactPrefix),
        "emulate" | "slot-boundary-emulation" => Ok(InnerMode::SlotBoundaryEmulation),
        _ => Err(CliError::Invalid(format!("unknown inner mode '{s}' (expected exact or emulate)"))),
    }
}

pub fn parse_inner_source(s: &str) -> Result<InnerSource, CliError> {
    match s {
        "prefix" | "quadrature-prefix" => Ok(InnerSource::QuadraturePrefix),
        "closed" | "closed-form" => Ok(InnerSource::ClosedForm),
        _ => Err(CliError::Invalid(format!("unknown inner source '{s}' (expected closed or prefix)"))),
    }
}

pub fn parse_summation(s: &str) -> Result<Summation, CliError> {
    match s {
        "naive" => Ok(Summation::Naive),
        "compensated" => Ok(Summation::Compensated),
        "pairwise" => Ok(Summation::Pairwise),
        _ => Err(CliError::Invalid(format!(
            "unknown summation '{s}' (expected naive, compensated or pairwise)"
        ))),
    }
}

pub fn parse_tail(s: &str) -> Result<Tail, CliError> {
    match s {
        "truncate" => Ok(Tail::Truncate),
        "zero-pair" | "zero-pair-average" => Ok(Tail::ZeroPairAverage),
        _ => Err(CliError::Invalid(format!("unknown tail '{s}' (expected truncate or zero-pair)"))),
    }
}

pub fn parse_pipeline(s: &str) -> Result<PipelineId, CliError> {
    PipelineId::from_name(s).ok_or_else(|| CliError::Invalid(format!("unknown pipeline '{s}'")))
}

/// Serde adapters that store enums by the names above.
pub(crate) mod serde_names {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::*;

    pub mod pipeline {
        use super::*;

        pub fn serialize<S: Serializer>(id: &PipelineId, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(id.name())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PipelineId, D::Error> {
            let name = String::deserialize(d)?;
            parse_pipeline(&name).map_err(D::Error::custom)
        }
    }

    pub mod form {
        use super::*;

        pub fn serialize<S: Serializer>(form: &Option<Form>, s: S) -> Result<S::Ok, S::Error> {
            match form {
                Some(f) => s.serialize_some(form_name(*f)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Form>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|name| parse_form(&name).map_err(D::Error::custom))
                .transpose()
        }
    }

    pub mod inner_mode {
        use super::*;

        pub fn serialize<S: Serializer>(mode: &Option<InnerMode>, s: S) -> Result<S::Ok, S::Error> {
            match mode {
                Some(m) => s.serialize_some(inner_mode_name(*m)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<InnerMode>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|name| parse_inner_mode(&name).map_err(D::Error::custom))
                .transpose()
        }
    }
}
