//! JSON shapes for reports and matrix input. Rationals are strings `"p/q"`.

use serde::{Deserialize, Serialize};

use crate::cli::parse::{parse_polynomial, parse_series};
use crate::diffop::MatrixModule;
use crate::error::{Error, Result};
use crate::exponents::ExponentCoset;
use crate::newton::NewtonPolygon;
use crate::rat::{self, Rat};
use crate::spectrum::{Radius, Spectrum};

/// Matrix input: `{"n": 2, "ram": 1, "entries": [["0", "1"], ["1/S", "2"]]}`.
///
/// Entry `entries[i][j]` is `G_ij`; column `j` of `G` is `nabla(e_j)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixInput {
    pub n: usize,
    #[serde(default = "one")]
    pub ram: u32,
    pub entries: Vec<Vec<String>>,
}

fn one() -> u32 {
    1
}

impl MatrixInput {
    pub fn to_module(&self, rel_steps: u32) -> Result<MatrixModule> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(Error::precondition(format!(
                "matrix entries do not form a {0}x{0} array",
                self.n
            )));
        }
        if self.ram == 0 {
            return Err(Error::precondition("ram must be positive"));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| parse_series(e, rel_steps)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        MatrixModule::with_ram(rows, self.ram)
    }

    pub fn from_module(m: &MatrixModule) -> Self {
        MatrixInput {
            n: m.rank(),
            ram: m.ram(),
            entries: m
                .rows()
                .iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }
}

pub fn parse_matrix(json: &str, rel_steps: u32) -> Result<MatrixModule> {
    let input: MatrixInput = serde_json::from_str(json)
        .map_err(|e| Error::parse(e.column(), format!("matrix JSON: {e}")))?;
    input.to_module(rel_steps)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeJson {
    pub slope: String,
    pub width: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolygonJson {
    /// `[i, v]` pairs.
    pub vertices: Vec<(usize, String)>,
    pub edges: Vec<EdgeJson>,
    pub v_min: String,
}

impl From<&NewtonPolygon> for PolygonJson {
    fn from(np: &NewtonPolygon) -> Self {
        PolygonJson {
            vertices: np
                .vertices
                .iter()
                .map(|(i, v)| (*i, rat::format(v)))
                .collect(),
            edges: np
                .edges
                .iter()
                .map(|e| EdgeJson {
                    slope: rat::format(&e.slope),
                    width: e.width,
                })
                .collect(),
            v_min: rat::format(&np.v_min),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SlopeJson {
    pub slope: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CosetJson {
    pub min_poly: String,
    pub lattice_den: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
}

impl CosetJson {
    pub fn new(c: &ExponentCoset, multiplicity: Option<usize>) -> Self {
        CosetJson {
            min_poly: c.poly().to_string(),
            lattice_den: c.lattice_den(),
            multiplicity,
        }
    }

    pub fn to_coset(&self) -> Result<ExponentCoset> {
        let p = parse_polynomial(&self.min_poly)?;
        if p.degree().unwrap_or(0) == 0 || self.lattice_den == 0 {
            return Err(Error::precondition(format!(
                "{:?} does not describe an exponent coset",
                self.min_poly
            )));
        }
        Ok(ExponentCoset::new(&p, self.lattice_den))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpectrumJson {
    pub ram: u32,
    /// Slopes `gamma`; the point is `x_{0, r^-gamma}`.
    pub gauss: Vec<String>,
    pub cosets: Vec<CosetJson>,
}

impl From<&Spectrum> for SpectrumJson {
    fn from(s: &Spectrum) -> Self {
        SpectrumJson {
            ram: s.ram(),
            gauss: s.gammas().iter().map(rat::format).collect(),
            cosets: s.cosets().iter().map(|c| CosetJson::new(c, None)).collect(),
        }
    }
}

impl SpectrumJson {
    pub fn to_spectrum(&self) -> Result<Spectrum> {
        let gammas = self
            .gauss
            .iter()
            .map(|g| rat::parse(g))
            .collect::<Result<Vec<Rat>>>()?;
        let cosets = self
            .cosets
            .iter()
            .map(|c| c.to_coset())
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(self.ram, gammas, cosets)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RadiusJson {
    pub gamma: String,
    pub radius: String,
    pub exact: bool,
}

impl From<&Radius> for RadiusJson {
    fn from(r: &Radius) -> Self {
        RadiusJson {
            gamma: rat::format(&r.gamma),
            radius: r.display.clone(),
            exact: r.value.is_some(),
        }
    }
}
