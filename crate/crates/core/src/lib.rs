//! Household electricity-consumption forecasting toolkit.
//!
//! * [`series`]: uniformly spaced series, resampling, weather merging
//! * [`transform`]: lag embedding, differencing, seasonal decomposition, scaling
//! * [`regressors`]: OLS, Gaussian process, SVR, KNN and MLP regressors
//! * [`arima`] and [`var`]: the univariate and multivariate statistical models
//! * [`evaluation`]: chronological splits, metrics, benchmark sweeps and ranking
//! * [`ingest`]: CSV / JSON readers and the canonical CSV writer
//! * [`cli`]: the `energy-forecast` command line
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod arima;
pub mod cli;
pub mod error;
pub mod evaluation;
pub mod ingest;
mod linalg;
pub mod optimize;
pub mod plot;
pub mod regressors;
pub mod series;
pub mod synthetic;
pub mod transform;
pub mod var;

pub use error::{Error, ErrorKind, Result};
pub use series::{MultiSeries, TimeSeries, WeatherRecord};
pub use transform::SupervisedFrame;
