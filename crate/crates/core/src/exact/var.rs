use std::fmt;
use std::str::FromStr;

/// A polynomial variable.
///
/// The derived order is the canonical variable order used for monomial keys:
/// family rank first (`Lambda < X < Yvec < Y < Z < T < Q`), then index.
/// Smaller variables rank higher in the monomial order, so `λ1` is the
/// "largest" variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// `λ_i`, rendered `L(i)`.
    Lambda(u32),
    /// `x_i`, rendered `x(i)`.
    X(u32),
    /// `Y_i`, rendered `Yv(i)`.
    Yvec(u32),
    Y,
    Z,
    /// `t`, the Eulerian variable.
    T,
    /// `q`, the q-analogue variable.
    Q,
}

impl VarId {
    pub fn is_lambda(self) -> bool {
        matches!(self, VarId::Lambda(_))
    }

    /// The variable family, ignoring the index. Used to count auxiliary
    /// variables (`x(1)` and `x(2)` belong to the same family).
    pub fn family(self) -> VarFamily {
        match self {
            VarId::Lambda(_) => VarFamily::Lambda,
            VarId::X(_) => VarFamily::X,
            VarId::Yvec(_) => VarFamily::Yvec,
            VarId::Y => VarFamily::Y,
            VarId::Z => VarFamily::Z,
            VarId::T => VarFamily::T,
            VarId::Q => VarFamily::Q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarFamily {
    Lambda,
    X,
    Yvec,
    Y,
    Z,
    T,
    Q,
}

impl fmt::Display for VarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VarFamily::Lambda => "L",
            VarFamily::X => "x",
            VarFamily::Yvec => "Yv",
            VarFamily::Y => "Y",
            VarFamily::Z => "Z",
            VarFamily::T => "t",
            VarFamily::Q => "q",
        };
        f.write_str(s)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Lambda(i) => write!(f, "L({i})"),
            VarId::X(i) => write!(f, "x({i})"),
            VarId::Yvec(i) => write!(f, "Yv({i})"),
            VarId::Y => f.write_str("Y"),
            VarId::Z => f.write_str("Z"),
            VarId::T => f.write_str("t"),
            VarId::Q => f.write_str("q"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unrecognized variable name `{0}`")]
pub struct ParseVarError(pub String);

impl FromStr for VarId {
    type Err = ParseVarError;

    /// Accepts the rendered form (`L(3)`, `x(2)`, `Yv(1)`, `Y`, `Z`, `t`, `q`)
    /// and the compact form (`L3`, `x2`, `Yv1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Y" => return Ok(VarId::Y),
            "Z" => return Ok(VarId::Z),
            "t" => return Ok(VarId::T),
            "q" => return Ok(VarId::Q),
            _ => {}
        }
        let err = || ParseVarError(s.to_string());
        let (family, rest) = if let Some(r) = s.strip_prefix("Yv") {
            ("Yv", r)
        } else if let Some(r) = s.strip_prefix('L') {
            ("L", r)
        } else if let Some(r) = s.strip_prefix('x') {
            ("x", r)
        } else {
            return Err(err());
        };
        let digits = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        let index: u32 = digits.parse().map_err(|_| err())?;
        if index == 0 {
            return Err(err());
        }
        Ok(match family {
            "Yv" => VarId::Yvec(index),
            "L" => VarId::Lambda(index),
            _ => VarId::X(index),
        })
    }
}
