use crate::error::{Error, Result};

/// Every identity the checker knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Mid,
    Spec,
    DupSin,
    DupCosSquared,
    DupCosAsPrinted,
    TripleProduct,
    SinGamma,
    GammaHalf,
    SumFormula,
    IndexShift,
    SinQuarter,
    SinEighth,
    ThreeEighths,
    ThreeEighthsHalf,
    SymSin,
    SymCosComplement,
    QuarterGammaProduct,
    QuadraticClosure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Numeric,
    Formal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Numeric => "numeric",
            Mode::Formal => "formal",
        }
    }
}

/// Whether a failing check counts against the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Pass,
    /// Kept in the registry to show that it fails.
    DocumentedFail,
}

impl Expected {
    pub fn as_str(self) -> &'static str {
        match self {
            Expected::Pass => "pass",
            Expected::DocumentedFail => "documented-fail",
        }
    }
}

/// Admissible values of the angle parameter `z` (the angle is `pi z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZDomain {
    /// The identity has no `z`.
    None,
    /// `0 <= z <= 1`.
    Closed,
    /// `0 < z < 1`.
    Open,
}

impl ZDomain {
    pub fn takes_z(self) -> bool {
        self != ZDomain::None
    }

    pub fn contains(self, z: f64) -> bool {
        match self {
            ZDomain::None => true,
            ZDomain::Closed => (0.0..=1.0).contains(&z),
            ZDomain::Open => z > 0.0 && z < 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub id: IdentityId,
    pub name: &'static str,
    pub description: &'static str,
    pub z: ZDomain,
    /// Accepts a complex `y`; with only `z` given, `y = q^{2z-1}`.
    pub takes_y: bool,
    pub modes: &'static [Mode],
    pub expected: Expected,
}

impl IdentitySpec {
    pub fn supports(&self, mode: Mode) -> bool {
        self.modes.contains(&mode)
    }
}

const BOTH: &[Mode] = &[Mode::Numeric, Mode::Formal];
const NUMERIC: &[Mode] = &[Mode::Numeric];

macro_rules! spec {
    ($id:ident, $name:literal, $z:ident, $y:literal, $modes:expr, $exp:ident, $desc:literal) => {
        IdentitySpec {
            id: IdentityId::$id,
            name: $name,
            description: $desc,
            z: ZDomain::$z,
            takes_y: $y,
            modes: $modes,
            expected: Expected::$exp,
        }
    };
}

static REGISTRY: &[IdentitySpec] = &[
    spec!(Mid, "mid", Closed, false, BOTH, Pass, "i theta1(i z ln q, q) = q^{-z^2} (q;q)^2 / (q^2;q^2) sin_q(pi z)"),
    spec!(Spec, "spec", None, false, BOTH, Pass, "i theta1(i ln(q)/4, q) = (q^{1/2};q)(q;q)^2 / ((q;q^2)^2 (q^2;q^2))"),
    spec!(
        DupSin,
        "dup-sin",
        Closed,
        false,
        BOTH,
        Pass,
        "sin_q(2 theta) = S(q) sin_{q^2}(theta) cos_{q^2}(theta), theta = pi z"
    ),
    spec!(
        DupCosSquared,
        "dup-cos-squared",
        Closed,
        false,
        BOTH,
        Pass,
        "cos_q(2 theta) = cos_{q^2}(theta)^2 - sin_{q^2}(theta)^2, theta = pi z"
    ),
    spec!(
        DupCosAsPrinted,
        "dup-cos-as-printed",
        Closed,
        false,
        BOTH,
        DocumentedFail,
        "cos_q(2 theta) = cos_{q^2}(theta) - sin_{q^2}(theta) without squares; expected to fail"
    ),
    spec!(
        TripleProduct,
        "triple-product",
        Closed,
        true,
        BOTH,
        Pass,
        "(q^2;q^2)(qy;q^2)(q/y;q^2) = sum (-1)^n q^{n^2} y^n"
    ),
    spec!(
        SinGamma,
        "sin-gamma",
        Open,
        false,
        BOTH,
        Pass,
        "sin_q(pi z) = q^{1/4} Gamma_{q^2}(1/2)^2 (q^2)^{z(z-1)/2} / (Gamma_{q^2}(z) Gamma_{q^2}(1-z))"
    ),
    spec!(GammaHalf, "gamma-half", None, false, BOTH, Pass, "Gamma_{q^2}(1/2) = (q^2;q^2)^2 / (q;q) sqrt(1-q^2)"),
    spec!(
        SumFormula,
        "sum-formula",
        Closed,
        false,
        BOTH,
        Pass,
        "sin_q(pi z) = q^{(z-1/2)^2} (q^2;q^2)/(q;q)^2 sum (-1)^n q^{n^2 + n(2z-1)}"
    ),
    spec!(
        IndexShift,
        "index-shift",
        Closed,
        false,
        BOTH,
        Pass,
        "sum (-1)^n q^{n^2 + n(2z-1)} = q^{-1/4} sum (-1)^n q^{(n+1/2)^2 + 2n(z-1)}"
    ),
    spec!(SinQuarter, "sin-quarter", None, false, BOTH, Pass, "sin_{q^2}(pi/4) = q^{1/8} (q;q^2) / (q^2;q^4)^2"),
    spec!(
        SinEighth,
        "sin-eighth",
        None,
        false,
        NUMERIC,
        Pass,
        "sin_{q^2}(pi/8) = sqrt(sin_q(pi/4) (sqrt(S^2+4) - S) / (2S))"
    ),
    spec!(
        ThreeEighths,
        "three-eighths",
        None,
        false,
        BOTH,
        Pass,
        "S sin_{q^2}(pi/8) sin_{q^2}(3pi/8) = sin_{q^2}(3pi/8)^2 - sin_{q^2}(pi/8)^2"
    ),
    spec!(
        ThreeEighthsHalf,
        "three-eighths-half",
        None,
        false,
        BOTH,
        Pass,
        "sin_{q^2}(3pi/8) = sin_q(pi/4) / (S sin_{q^2}(pi/8))"
    ),
    spec!(SymSin, "sym-sin", Closed, false, BOTH, Pass, "sin_q(pi z) = sin_q(pi - pi z)"),
    spec!(SymCosComplement, "sym-cos-complement", Closed, false, BOTH, Pass, "cos_q(pi z) = sin_q(pi/2 - pi z)"),
    spec!(
        QuarterGammaProduct,
        "quarter-gamma-product",
        None,
        false,
        BOTH,
        Pass,
        "Gamma_{q^2}(1/4) Gamma_{q^2}(3/4) = (1-q^2)(q^2;q^2)^4 (q;q^2)^2 / ((q;q)^2 (q^{1/2};q))"
    ),
    spec!(
        QuadraticClosure,
        "quadratic-closure",
        None,
        false,
        BOTH,
        Pass,
        "x^2 + s x = s^2/S^2 with x = sin_{q^2}(pi/8)^2, s = sin_q(pi/4)"
    ),
];

/// All built-in identities in reporting order.
pub fn registry() -> &'static [IdentitySpec] {
    REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static IdentitySpec> {
    REGISTRY.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

pub fn spec_of(id: IdentityId) -> &'static IdentitySpec {
    REGISTRY.iter().find(|s| s.id == id).expect("every id is registered")
}
