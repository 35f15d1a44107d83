//! Special functions: Hermite, Laguerre (alpha = -1/2), associated Legendre,
//! terminating 2F1, log-factorials, and the log-domain number type they share.

mod factorial;
mod hermite;
mod hypergeometric;
mod laguerre;
mod legendre;
mod logsigned;
mod scalar;

pub use factorial::log_factorial;
pub use hermite::{
    hermite, hermite_2d, hermite_log, hermite_log_sequence, scaled_hermite_log_sequence,
    TwoIndexHermite,
};
pub use hypergeometric::gauss_2f1_terminating;
pub use laguerre::{laguerre_half, laguerre_half_log_sequence, scaled_laguerre_half_log_sequence};
pub use legendre::assoc_legendre;
pub use logsigned::{LogAccumulator, LogSigned};
pub use scalar::ComplexScalar;
