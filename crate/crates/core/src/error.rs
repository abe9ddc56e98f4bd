use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures raised by rule construction, the engine and the pipelines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument or configuration value is outside its documented domain.
    InvalidArgument(&'static str),
    /// The integrand returned NaN or an infinity at `abscissa`.
    NonFinite { abscissa: f64 },
    /// More panels than the resource guard allows.
    TooManyPanels { panels: f64, limit: f64 },
    /// Only the tiers 1, 2 and 3 have a reduced pipeline.
    UnsupportedTier(u32),
}

impl Error {
    /// True for errors caused by the numbers rather than by the caller.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonFinite { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NonFinite { abscissa } => {
                write!(f, "integrand is not finite at x = {abscissa:e}")
            }
            Error::TooManyPanels { panels, limit } => write!(
                f,
                "scheme needs {panels:e} panels, more than the limit of {limit:e} (u_max / panel_width)"
            ),
            Error::UnsupportedTier(n) => write!(
                f,
                "tier n = {n} is not supported; only n = 1, 2, 3 have a reduced pipeline"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
