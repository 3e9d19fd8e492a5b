//! JSON interchange formats.
//!
//! State: `{ "n": N, "d": d, "kind": "pure" | "density", "data": [[re, im], ...] }`
//! with a flat amplitude list for pure states and a row-major `D x D` list
//! for density matrices.
//!
//! Mixture spec: `{ "weights": [...], "states": [ref-or-state, ...] }` where
//! each state is either an inline state object (kind `pure`) or a family
//! reference string such as `"ghz:n=4,d=2,sign=-"` or `"bell:psi+"`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixtures::MixtureSpec;
use crate::tensor::{CMatrix, CVector, CompositeShape, DensityMatrix, PureState};
use crate::zoo::{
    bell_state, dicke_state, ghz_state, shifted_state, stormer_state, w_state, Bell, DickeParams,
    Sign,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Density,
}

/// Wire form of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub n: usize,
    pub d: usize,
    pub kind: StateKind,
    pub data: Vec<[f64; 2]>,
}

/// A parsed state: either a ket or a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Density(DensityMatrix),
}

impl State {
    pub fn shape(&self) -> CompositeShape {
        match self {
            State::Pure(p) => p.shape(),
            State::Density(r) => r.shape(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Pure(p) => p.projector(),
            State::Density(r) => r.clone(),
        }
    }

    pub fn to_wire(&self) -> StateJson {
        let sh = self.shape();
        match self {
            State::Pure(p) => StateJson {
                n: sh.n(),
                d: sh.d(),
                kind: StateKind::Pure,
                data: p.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            },
            State::Density(r) => {
                let m = r.matrix();
                let dim = sh.dim();
                let mut data = Vec::with_capacity(dim * dim);
                for i in 0..dim {
                    for j in 0..dim {
                        data.push([m[(i, j)].re, m[(i, j)].im]);
                    }
                }
                StateJson {
                    n: sh.n(),
                    d: sh.d(),
                    kind: StateKind::Density,
                    data,
                }
            }
        }
    }

    pub fn from_wire(w: &StateJson) -> Result<Self> {
        let shape = CompositeShape::new(w.n, w.d)?;
        let dim = shape.dim();
        let z = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
        match w.kind {
            StateKind::Pure => {
                if w.data.len() != dim {
                    return Err(Error::shape(format!(
                        "pure state on {shape} needs {dim} amplitudes, got {}",
                        w.data.len()
                    )));
                }
                let amps = CVector::from_iterator(dim, w.data.iter().map(z));
                Ok(State::Pure(PureState::new(shape, amps)?))
            }
            StateKind::Density => {
                if w.data.len() != dim * dim {
                    return Err(Error::shape(format!(
                        "density matrix on {shape} needs {} entries, got {}",
                        dim * dim,
                        w.data.len()
                    )));
                }
                let mat = CMatrix::from_row_iterator(dim, dim, w.data.iter().map(z));
                Ok(State::Density(DensityMatrix::new(shape, mat)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("finite floats serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: StateJson = serde_json::from_str(text).map_err(parse_error)?;
        Self::from_wire(&wire)
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("{e} (line {}, column {})", e.line(), e.column()))
}

/// Parameters for a named state family.
pub type FamilyParams = BTreeMap<String, String>;

fn get<T: FromStr>(params: &FamilyParams, key: &str) -> Result<Option<T>> {
    params
        .get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| Error::param(format!("cannot parse {key}='{v}'")))
        })
        .transpose()
}

fn need<T: FromStr>(params: &FamilyParams, key: &str, family: &str) -> Result<T> {
    get(params, key)?.ok_or_else(|| Error::param(format!("{family} needs --{key}")))
}

/// Names accepted by [`construct_family`].
pub const FAMILIES: [&str; 6] = ["bell", "ghz", "shifted", "dicke", "w", "stormer"];

/// Builds a member of a named family.
///
/// Keys: `bell` (which), `ghz` (n, d, sign), `shifted` (n, d, j),
/// `dicke` (n, m), `w` (n), `stormer` (alpha).
pub fn construct_family(family: &str, params: &FamilyParams) -> Result<State> {
    let known: &[&str] = match family {
        "bell" => &["which"],
        "ghz" => &["n", "d", "sign"],
        "shifted" => &["n", "d", "j"],
        "dicke" => &["n", "m"],
        "w" => &["n"],
        "stormer" => &["alpha"],
        other => {
            return Err(Error::param(format!(
                "unknown family '{other}' (expected one of {})",
                FAMILIES.join(", ")
            )))
        }
    };
    if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::param(format!("{family} does not take parameter '{k}'")));
    }
    Ok(match family {
        "bell" => State::Pure(bell_state(need::<Bell>(params, "which", family)?)),
        "ghz" => {
            let n = need(params, "n", family)?;
            let d = get(params, "d")?.unwrap_or(2);
            State::Pure(ghz_state(n, d, get::<Sign>(params, "sign")?)?)
        }
        "shifted" => State::Pure(shifted_state(
            need(params, "n", family)?,
            need(params, "d", family)?,
            need(params, "j", family)?,
        )?),
        "dicke" => State::Pure(dicke_state(DickeParams::new(
            need(params, "n", family)?,
            need(params, "m", family)?,
        )?)?),
        "w" => State::Pure(w_state(need(params, "n", family)?)?),
        "stormer" => State::Density(stormer_state(need(params, "alpha", family)?)?),
        _ => unreachable!(),
    })
}

/// Parses a reference such as `ghz:n=4,d=2,sign=-` or `bell:psi+`.
pub fn parse_family_ref(text: &str) -> Result<(String, FamilyParams)> {
    let (family, rest) = text.split_once(':').unwrap_or((text, ""));
    let family = family.trim().to_ascii_lowercase();
    let mut params = FamilyParams::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once('=') {
            Some((k, v)) => {
                params.insert(k.trim().to_string(), v.trim().to_string());
            }
            None if family == "bell" => {
                params.insert("which".into(), item.to_string());
            }
            None => return Err(Error::param(format!("expected key=value in '{item}'"))),
        }
    }
    Ok((family, params))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateRef {
    Named(String),
    Inline(StateJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureSpecJson {
    pub weights: Vec<f64>,
    pub states: Vec<StateRef>,
}

impl StateRef {
    pub fn resolve(&self) -> Result<PureState> {
        let state = match self {
            StateRef::Named(s) => {
                let (family, params) = parse_family_ref(s)?;
                construct_family(&family, &params)?
            }
            StateRef::Inline(w) => State::from_wire(w)?,
        };
        match state {
            State::Pure(p) => Ok(p),
            State::Density(_) => Err(Error::contract("mixture components must be pure states")),
        }
    }
}

impl MixtureSpecJson {
    pub fn resolve(&self) -> Result<MixtureSpec> {
        let states = self.states.iter().map(StateRef::resolve).collect::<Result<Vec<_>>>()?;
        MixtureSpec::new(self.weights.clone(), states)
    }
}

pub fn parse_mixture_spec(text: &str) -> Result<MixtureSpec> {
    let wire: MixtureSpecJson = serde_json::from_str(text).map_err(parse_error)?;
    wire.resolve()
}
