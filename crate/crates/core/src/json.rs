//! JSON forms of the domain types. Rationals are `"num/den"` strings,
//! complex scalars `[re, im]` pairs.

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::field::{format_rational, parse_rational, Rational, C64};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mumford::{MumfordMatrix, SpectralPoly};

type P = Poly<Rational>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn from_poly(p: &P) -> Self {
        PolyJson { coeffs: p.coeffs().iter().map(format_rational).collect() }
    }

    pub fn to_poly(&self) -> Result<P> {
        Ok(P::new(self.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPolyJson {
    pub coeffs: Vec<[f64; 2]>,
}

impl ComplexPolyJson {
    pub fn from_poly(p: &Poly<C64>) -> Self {
        ComplexPolyJson { coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect() }
    }

    pub fn to_poly(&self) -> Poly<C64> {
        Poly::new(self.coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub g: usize,
    pub u: PolyJson,
    pub v: PolyJson,
    pub w: PolyJson,
}

impl PointJson {
    pub fn from_point(a: &MumfordMatrix<Rational>) -> Self {
        PointJson {
            g: a.g(),
            u: PolyJson::from_poly(a.u()),
            v: PolyJson::from_poly(a.v()),
            w: PolyJson::from_poly(a.w()),
        }
    }

    pub fn to_point(&self) -> Result<MumfordMatrix<Rational>> {
        MumfordMatrix::new(self.g, self.u.to_poly()?, self.v.to_poly()?, self.w.to_poly()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPointJson {
    pub g: usize,
    pub u: ComplexPolyJson,
    pub v: ComplexPolyJson,
    pub w: ComplexPolyJson,
}

impl ComplexPointJson {
    pub fn from_point(a: &MumfordMatrix<C64>) -> Self {
        ComplexPointJson {
            g: a.g(),
            u: ComplexPolyJson::from_poly(a.u()),
            v: ComplexPolyJson::from_poly(a.v()),
            w: ComplexPolyJson::from_poly(a.w()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralJson {
    pub h: PolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<(PolyJson, usize)>>,
}

impl SpectralJson {
    pub fn from_spectral(h: &SpectralPoly) -> Self {
        SpectralJson {
            h: PolyJson::from_poly(h.h()),
            factors: h.factors().map(|fs| fs.iter().map(|(f, m)| (PolyJson::from_poly(f), *m)).collect()),
        }
    }

    /// Uses the supplied factorization if any, otherwise factors `h`.
    pub fn to_spectral(&self) -> Result<SpectralPoly> {
        let h = self.h.to_poly()?;
        match &self.factors {
            Some(fs) => {
                let fs = fs.iter().map(|(f, m)| Ok((f.to_poly()?, *m))).collect::<Result<_>>()?;
                SpectralPoly::with_factors(h, fs)
            }
            None => SpectralPoly::factored(h),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix<Rational>) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|r| m.row(r).iter().map(format_rational).collect()).collect(),
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn ser_poly<S: Serializer>(p: &P, s: S) -> std::result::Result<S::Ok, S::Error> {
    PolyJson::from_poly(p).serialize(s)
}

pub fn ser_spectral<S: Serializer>(h: &SpectralPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    SpectralJson::from_spectral(h).serialize(s)
}
