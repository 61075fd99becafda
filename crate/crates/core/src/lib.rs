pub mod certified;
pub mod error;
pub mod formal;
pub mod identities;
pub mod mp;
pub mod qgamma;
pub mod qpoch;
pub mod qtrig;
pub mod real;
pub mod theta;

pub use certified::CertifiedValue;
pub use error::{Error, Result};
pub use formal::{fs_equal, EqualityReport, FormalSeries, SignRule};
pub use identities::{
    check_formal, check_numeric, registry, sweep, CheckOptions, IdentityResult, IdentitySpec, Verdict,
};
pub use mp::MpFloat;
pub use qgamma::GammaArg;
pub use qpoch::{qpoch, qpoch_tail_bound, QParam, TruncationBudget};
pub use qtrig::Angle;
pub use real::{Complex, Real};
pub use theta::{SumMethod, ThetaArg};
