use std::fmt;
use std::str::FromStr;

/// Typing discipline for a checker run, one per node of the substructural
/// lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Unrestricted,
    Affine,
    Relevant,
    Linear,
    Ordered,
}

impl Mode {
    /// Manifest column order.
    pub const ALL: [Mode; 5] = [
        Mode::Unrestricted,
        Mode::Affine,
        Mode::Relevant,
        Mode::Linear,
        Mode::Ordered,
    ];

    /// Edges `(lower, upper)` of the lattice: every program accepted under
    /// `lower` is accepted under `upper`.
    pub const LATTICE_EDGES: [(Mode, Mode); 5] = [
        (Mode::Ordered, Mode::Linear),
        (Mode::Linear, Mode::Affine),
        (Mode::Linear, Mode::Relevant),
        (Mode::Affine, Mode::Unrestricted),
        (Mode::Relevant, Mode::Unrestricted),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Unrestricted => "unrestricted",
            Mode::Affine => "affine",
            Mode::Relevant => "relevant",
            Mode::Linear => "linear",
            Mode::Ordered => "ordered",
        }
    }

    pub fn rules(self) -> StructuralRuleSet {
        rules_for(self)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMode(pub String);

impl fmt::Display for UnknownMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown mode `{}` (expected unrestricted, affine, relevant, linear or ordered)",
            self.0
        )
    }
}

impl std::error::Error for UnknownMode {}

impl FromStr for Mode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMode(s.to_string()))
    }
}

/// Which structural rules a mode admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructuralRuleSet {
    /// Context order is irrelevant.
    pub exchange: bool,
    /// Bindings may go unused.
    pub weakening: bool,
    /// Bindings may be used more than once.
    pub contraction: bool,
}

pub fn rules_for(mode: Mode) -> StructuralRuleSet {
    let (exchange, weakening, contraction) = match mode {
        Mode::Unrestricted => (true, true, true),
        Mode::Affine => (true, true, false),
        Mode::Relevant => (true, false, true),
        Mode::Linear => (true, false, false),
        Mode::Ordered => (false, false, false),
    };
    StructuralRuleSet {
        exchange,
        weakening,
        contraction,
    }
}
