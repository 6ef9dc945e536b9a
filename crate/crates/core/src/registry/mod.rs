//! The identity catalog and its verification engine.
//!
//! Every entry pairs a summand template (the full summand, kernel included)
//! with a closed form. Entries come in three kinds: sums over `S_{n+1}` in
//! the variables `λ_1..λ_{n+1}`, the same sums specialized to `λ_j = j`, and
//! plain finite-sum identities without permutations.

mod catalog;
mod file;
mod grid;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use file::{load_identities, IdentityRecord};
pub use verify::{
    verify, verify_all, verify_many, Mode, Outcome, ParseModeError, Report, VerifyConfig, VerifyError, Witness,
};

use crate::exact::{Factored, RatFunc, Rational, VarFamily, VarId};
use crate::template::degree::{DegreeMap, Degrees, FactorSet};
use crate::template::{evaluate, Affine, Env, EvalError, Exact, Numeric, Template, TemplateError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Problem,
    Exercise,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Problem => "problem",
            Status::Exercise => "exercise",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "proved" => Ok(Status::Proved),
            "problem" => Ok(Status::Problem),
            "exercise" => Ok(Status::Exercise),
            other => Err(format!(
                "unknown status `{other}` (expected proved, problem or exercise)"
            )),
        }
    }
}

/// How the left side is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Sum of the summand over `σ ∈ S_{n+1}` with `λ` symbolic.
    #[default]
    Symmetrized,
    /// The same sum with `λ_j = j`.
    Specialized,
    /// A plain expression; no permutation.
    Plain,
}

impl Kind {
    /// Default largest `n` per mode: symbolic, grid, random.
    pub fn default_max_n(self) -> [u32; 3] {
        match self {
            Kind::Symmetrized => [4, 5, 6],
            Kind::Specialized => [6, 6, 6],
            Kind::Plain => [10, 10, 10],
        }
    }
}

/// An integer parameter ranging over `lo..=hi`, both affine in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: String,
    pub lo: Affine,
    pub hi: Affine,
}

impl ParamSpec {
    pub fn range(&self, n: u32) -> Result<(i64, i64), EvalError> {
        let at = |a: &Affine| {
            a.eval(|k| (k == "n").then_some(n as i64))
                .map_err(EvalError::UnboundParameter)
        };
        Ok((at(&self.lo)?, at(&self.hi)?))
    }
}

/// A closed form computed in code rather than written as a template.
pub type Builder = fn(u32, &BTreeMap<String, i64>) -> RatFunc;

#[derive(Clone)]
pub enum Rhs {
    Template(Template),
    Builder { describe: &'static str, build: Builder },
}

impl fmt::Debug for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Template(t) => write!(f, "Template({t})"),
            Rhs::Builder { describe, .. } => write!(f, "Builder({describe})"),
        }
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Template(t) => write!(f, "{t}"),
            Rhs::Builder { describe, .. } => f.write_str(describe),
        }
    }
}

impl Rhs {
    fn env<'a>(n: u32, params: &'a BTreeMap<String, i64>) -> Env<'a> {
        Env::new(n as i64, None, params)
    }

    pub fn symbolic(&self, n: u32, params: &BTreeMap<String, i64>) -> Result<RatFunc, EvalError> {
        match self {
            Rhs::Template(t) => Ok(evaluate(&Exact::symbolic(), &t.root, &Self::env(n, params))?.to_ratfunc()),
            Rhs::Builder { build, .. } => Ok(build(n, params)),
        }
    }

    /// The closed form with `bindings` substituted and other variables symbolic.
    pub fn partial(
        &self,
        n: u32,
        params: &BTreeMap<String, i64>,
        bindings: &BTreeMap<VarId, Rational>,
    ) -> Result<RatFunc, EvalError> {
        match self {
            Rhs::Template(t) => Ok(evaluate(&Exact::partial(bindings), &t.root, &Self::env(n, params))?.to_ratfunc()),
            Rhs::Builder { build, .. } => build(n, params).substitute(bindings).map_err(|e| match e {
                crate::exact::ExactError::DivisionByZeroFunction => EvalError::PoleAtPoint,
                e => e.into(),
            }),
        }
    }

    pub fn numeric(
        &self,
        n: u32,
        params: &BTreeMap<String, i64>,
        point: &BTreeMap<VarId, Rational>,
    ) -> Result<Rational, EvalError> {
        match self {
            Rhs::Template(t) => evaluate(&Numeric { point }, &t.root, &Self::env(n, params)),
            Rhs::Builder { build, .. } => Ok(build(n, params).eval(point)?),
        }
    }

    /// Numerator degree bounds and denominator factors.
    pub(crate) fn degrees(&self, n: u32, params: &BTreeMap<String, i64>) -> Result<(DegreeMap, FactorSet), EvalError> {
        match self {
            Rhs::Template(t) => Ok(evaluate(&Degrees::default(), &t.root, &Self::env(n, params))?.parts()),
            Rhs::Builder { build, .. } => {
                let f = Factored::from_ratfunc(&build(n, params));
                Ok(crate::template::degree::DegVal::Exact(f).parts())
            }
        }
    }

    pub(crate) fn vars(&self, n: u32, params: &BTreeMap<String, i64>) -> Result<BTreeSet<VarId>, EvalError> {
        match self {
            Rhs::Template(t) => evaluate(&crate::template::VarCollector, &t.root, &Self::env(n, params)),
            Rhs::Builder { build, .. } => Ok(build(n, params).vars()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentitySpec {
    pub id: String,
    pub kind: Kind,
    pub status: Status,
    pub lhs: Template,
    pub rhs: Rhs,
    pub params: Vec<ParamSpec>,
    /// Smallest `n` at which both sides make sense.
    pub min_n: u32,
    /// A variable the left side is claimed not to depend on, checked and
    /// reported separately.
    pub independent_of: Option<VarId>,
    pub notes: String,
}

impl IdentitySpec {
    pub fn param_names(&self) -> Vec<&str> {
        self.params.iter().map(|p| p.name.as_str()).collect()
    }

    /// All parameter assignments at `n`, lexicographic in declaration order;
    /// `overrides` pin parameters to single values.
    pub fn param_grid(
        &self,
        n: u32,
        overrides: &BTreeMap<String, i64>,
    ) -> Result<Vec<BTreeMap<String, i64>>, EvalError> {
        let mut out = vec![BTreeMap::new()];
        for p in &self.params {
            let (lo, hi) = match overrides.get(&p.name) {
                Some(&v) => (v, v),
                None => p.range(n)?,
            };
            out = out
                .into_iter()
                .flat_map(|m| {
                    (lo..=hi).map(move |v| {
                        let mut m = m.clone();
                        m.insert(p.name.clone(), v);
                        m
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Variables of both sides at `n` with the first parameter assignment.
    pub fn free_vars(&self, n: u32) -> Result<BTreeSet<VarId>, EvalError> {
        let params = self
            .param_grid(n, &BTreeMap::new())?
            .into_iter()
            .next()
            .unwrap_or_default();
        let ids: Vec<u32> = (1..=n + 1).collect();
        let sigma = (self.kind != Kind::Plain).then_some(ids.as_slice());
        let env = Env::new(n as i64, sigma, &params);
        let mut vars = evaluate(&crate::template::VarCollector, &self.lhs.root, &env)?;
        vars.extend(self.rhs.vars(n, &params)?);
        if self.kind == Kind::Specialized {
            vars.retain(|v| !v.is_lambda());
        }
        Ok(vars)
    }

    /// Families of non-λ variables, e.g. `["Y", "x"]`.
    pub fn aux_families(&self) -> Vec<VarFamily> {
        let n = self.min_n.max(2);
        let fams: BTreeSet<VarFamily> = self
            .free_vars(n)
            .map(|vs| vs.into_iter().filter(|v| !v.is_lambda()).map(VarId::family).collect())
            .unwrap_or_default();
        fams.into_iter().collect()
    }

    /// Per-mode `n` caps. Plain sums over symbolic `λ`'s swell like the
    /// symmetrized ones and get the tighter cap.
    pub fn default_max_n(&self) -> [u32; 3] {
        let symbolic_lambda = self.kind == Kind::Plain
            && self
                .free_vars(self.min_n.max(2))
                .is_ok_and(|vs| vs.iter().any(|v| v.is_lambda()));
        if symbolic_lambda {
            [6, 6, 6]
        } else {
            self.kind.default_max_n()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{0}` is defined twice")]
    DuplicateIdentity(String),
    #[error("identity `{id}`: {source}")]
    Template {
        id: String,
        #[source]
        source: TemplateError,
    },
    #[error("identity file: {0}")]
    File(String),
}

/// An ordered collection of identities keyed by id.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: BTreeMap<String, IdentitySpec>,
}

impl Registry {
    /// The built-in catalog.
    pub fn builtin() -> Self {
        let mut r = Registry::default();
        for spec in catalog::entries() {
            r.insert(spec).expect("built-in ids are unique");
        }
        r
    }

    pub fn insert(&mut self, spec: IdentitySpec) -> Result<(), RegistryError> {
        if self.entries.contains_key(&spec.id) {
            return Err(RegistryError::DuplicateIdentity(spec.id));
        }
        self.entries.insert(spec.id.clone(), spec);
        Ok(())
    }

    pub fn extend(&mut self, specs: impl IntoIterator<Item = IdentitySpec>) -> Result<(), RegistryError> {
        for s in specs {
            self.insert(s)?;
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&IdentitySpec> {
        self.entries.get(id)
    }

    pub fn lookup(&self, id: &str) -> Result<&IdentitySpec, RegistryError> {
        self.get(id)
            .ok_or_else(|| RegistryError::UnknownIdentity(id.to_string()))
    }

    /// Entries sorted by id.
    pub fn list(&self) -> Vec<&IdentitySpec> {
        self.entries.values().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The built-in catalog as a list.
pub fn registry_list() -> Vec<IdentitySpec> {
    Registry::builtin().entries.into_values().collect()
}
