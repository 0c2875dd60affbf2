//! JSON schemas for every value crossing the CLI boundary.
//!
//! Polynomials are arrays of coefficient vectors (lowest degree first, each
//! coefficient an `e`-tuple over `F_p`; plain integers are accepted on
//! input for prime fields). Rational functions are `{"num", "den"}`;
//! Laurent elements are `{"val", "coeffs", "prec"}` or `{"ratfunc": ...}`;
//! log values are `"neg_inf"` or `{"log_q": "p/q"}` fraction strings.

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::kvec::{MatKv, VecKv};
use crate::laurent::Laurent;
use crate::logval::LogVal;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpecDto {
    pub p: u16,
    pub e: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u16>>,
}

impl FieldSpecDto {
    pub fn to_field(&self) -> Result<Field> {
        Field::new(self.p, self.e, self.modulus.clone())
    }

    pub fn from_field(f: &Field) -> FieldSpecDto {
        FieldSpecDto {
            p: f.p(),
            e: f.e(),
            modulus: f.modulus().map(|m| m.to_vec()),
        }
    }
}

/// A polynomial coefficient: either a bare residue (prime fields) or the
/// explicit coefficient vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDto {
    Scalar(u16),
    Vector(Vec<u16>),
}

pub fn poly_to_dto(p: &Poly) -> Vec<CoeffDto> {
    let f = p.field();
    p.coeffs()
        .iter()
        .map(|&c| CoeffDto::Vector(f.elem_digits(c)))
        .collect()
}

pub fn poly_from_dto(field: &Field, dto: &[CoeffDto]) -> Result<Poly> {
    let mut coeffs = Vec::with_capacity(dto.len());
    for c in dto {
        coeffs.push(match c {
            CoeffDto::Scalar(v) => {
                if field.e() != 1 {
                    return Err(Error::Malformed(
                        "scalar coefficients need a prime field".into(),
                    ));
                }
                if *v >= field.p() {
                    return Err(Error::Malformed(format!("coefficient {v} out of range")));
                }
                FqElem(*v)
            }
            CoeffDto::Vector(ds) => field.elem_from_digits(ds)?,
        });
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatFuncDto {
    pub num: Vec<CoeffDto>,
    pub den: Vec<CoeffDto>,
}

pub fn ratfunc_to_dto(r: &RatFunc) -> RatFuncDto {
    RatFuncDto {
        num: poly_to_dto(r.num()),
        den: poly_to_dto(r.den()),
    }
}

pub fn ratfunc_from_dto(field: &Field, dto: &RatFuncDto) -> Result<RatFunc> {
    RatFunc::new(
        poly_from_dto(field, &dto.num)?,
        poly_from_dto(field, &dto.den)?,
    )
}

/// A Laurent element: exact (rational-function backed) or truncated.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LaurentDto {
    Exact {
        ratfunc: RatFuncDto,
    },
    Window {
        val: i64,
        coeffs: Vec<CoeffDto>,
        prec: usize,
    },
}

/// Serialize a Laurent element; truncated elements emit their full window,
/// exact ones their backing.
pub fn laurent_to_dto(x: &Laurent) -> Result<LaurentDto> {
    if let Some(r) = x.as_ratfunc() {
        return Ok(LaurentDto::Exact {
            ratfunc: ratfunc_to_dto(&r),
        });
    }
    let val = x.valuation()?.expect("nonzero");
    let end = x.known_end();
    let coeffs = x.window(val, end)?;
    let f = x.field();
    Ok(LaurentDto::Window {
        val,
        coeffs: coeffs
            .iter()
            .map(|&c| CoeffDto::Vector(f.elem_digits(c)))
            .collect(),
        prec: (end - val) as usize,
    })
}

pub fn laurent_from_dto(field: &Field, dto: &LaurentDto) -> Result<Laurent> {
    match dto {
        LaurentDto::Exact { ratfunc } => {
            Ok(Laurent::from_ratfunc(ratfunc_from_dto(field, ratfunc)?))
        }
        LaurentDto::Window { val, coeffs, prec } => {
            if coeffs.len() != *prec {
                return Err(Error::Malformed(
                    "prec must equal the coefficient count".into(),
                ));
            }
            let mut cs = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                cs.push(match c {
                    CoeffDto::Scalar(v) => {
                        if field.e() != 1 || *v >= field.p() {
                            return Err(Error::Malformed("bad coefficient".into()));
                        }
                        FqElem(*v)
                    }
                    CoeffDto::Vector(ds) => field.elem_from_digits(ds)?,
                });
            }
            Ok(Laurent::truncated(field, *val, cs))
        }
    }
}

pub fn logval_to_json(v: &LogVal) -> serde_json::Value {
    match v {
        LogVal::NegInf => serde_json::Value::String("neg_inf".into()),
        _ => serde_json::json!({ "log_q": v.to_frac_string() }),
    }
}

pub fn logval_from_json(v: &serde_json::Value) -> Result<LogVal> {
    match v {
        serde_json::Value::String(s) => LogVal::from_frac_string(s),
        serde_json::Value::Object(map) => {
            let s = map
                .get("log_q")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Malformed("expected {\"log_q\": ...}".into()))?;
            LogVal::from_frac_string(s)
        }
        _ => Err(Error::Malformed("bad log value".into())),
    }
}

/// Matrix file: `A` (or a full basis) with row-major entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldSpecDto,
    pub m: usize,
    pub n: usize,
    pub entries: Vec<LaurentDto>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<(Field, MatKv)> {
        let field = self.field.to_field()?;
        if self.entries.len() != self.m * self.n {
            return Err(Error::Malformed(format!(
                "expected {} entries, got {}",
                self.m * self.n,
                self.entries.len()
            )));
        }
        let entries: Vec<Laurent> = self
            .entries
            .iter()
            .map(|e| laurent_from_dto(&field, e))
            .collect::<Result<_>>()?;
        Ok((field.clone(), MatKv::new(&field, self.m, self.n, entries)))
    }

    pub fn from_matrix(mat: &MatKv) -> Result<MatrixFile> {
        let mut entries = Vec::with_capacity(mat.rows() * mat.cols());
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                entries.push(laurent_to_dto(mat.at(i, j))?);
            }
        }
        Ok(MatrixFile {
            field: FieldSpecDto::from_field(mat.field()),
            m: mat.rows(),
            n: mat.cols(),
            entries,
        })
    }
}

/// Weights file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightsFile {
    pub r: Vec<i64>,
    pub s: Vec<i64>,
}

/// A vector over `K_v` (targets `theta` and friends).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorFile {
    pub field: FieldSpecDto,
    pub entries: Vec<LaurentDto>,
}

impl VectorFile {
    pub fn to_vec(&self) -> Result<(Field, VecKv)> {
        let field = self.field.to_field()?;
        let entries: Vec<Laurent> = self
            .entries
            .iter()
            .map(|e| laurent_from_dto(&field, e))
            .collect::<Result<_>>()?;
        Ok((field, VecKv::new(entries)))
    }
}

/// A rational function input for the `expand` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatFuncFile {
    pub field: FieldSpecDto,
    pub ratfunc: RatFuncDto,
}

/// Integral vectors (solver outputs) as polynomial coefficient arrays.
pub fn polys_to_json(polys: &[Poly]) -> serde_json::Value {
    serde_json::Value::Array(
        polys
            .iter()
            .map(|p| serde_json::to_value(poly_to_dto(p)).expect("serializable"))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let f = Field::prime(2).unwrap();
        let e = Laurent::from_ratfunc(
            RatFunc::new(
                Poly::one(&f),
                Poly::from_coeffs(&f, vec![FqElem(1), FqElem(1)]),
            )
            .unwrap(),
        );
        let mat = MatKv::new(
            &f,
            1,
            2,
            vec![
                e,
                Laurent::truncated(&f, -1, vec![FqElem(1), FqElem(0), FqElem(1)]),
            ],
        );
        let file = MatrixFile::from_matrix(&mat).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        let (_, mat2) = back.to_matrix().unwrap();
        assert_eq!(mat, mat2);
    }

    #[test]
    fn scalar_coefficients_accepted_for_prime_fields() {
        let text = r#"{"field":{"p":2,"e":1},"m":1,"n":1,
            "entries":[{"ratfunc":{"num":[1],"den":[0,1]}}]}"#;
        let file: MatrixFile = serde_json::from_str(text).unwrap();
        let (_, mat) = file.to_matrix().unwrap();
        assert_eq!(mat.at(0, 0).abs_log().unwrap(), LogVal::from_int(-1));
    }

    #[test]
    fn logval_json_round_trip() {
        for v in [
            LogVal::NegInf,
            LogVal::from_int(-3),
            LogVal::from_ratio(7, 2),
        ] {
            let j = logval_to_json(&v);
            assert_eq!(logval_from_json(&j).unwrap(), v);
        }
    }

    #[test]
    fn extension_field_round_trip() {
        // F_4 matrices carry the modulus and vector coefficients.
        let text = r#"{"field":{"p":2,"e":2,"modulus":[1,1,1]},"m":1,"n":1,
            "entries":[{"ratfunc":{"num":[[0,1]],"den":[[1,0],[0,1]]}}]}"#;
        let file: MatrixFile = serde_json::from_str(text).unwrap();
        let (field, mat) = file.to_matrix().unwrap();
        assert_eq!(field.q(), 4);
        let back = MatrixFile::from_matrix(&mat).unwrap();
        let (_, mat2) = back.to_matrix().unwrap();
        assert_eq!(mat, mat2);
        // Scalar coefficients are rejected outside prime fields.
        let bad = r#"{"field":{"p":2,"e":2,"modulus":[1,1,1]},"m":1,"n":1,
            "entries":[{"ratfunc":{"num":[1],"den":[[1,0]]}}]}"#;
        let file: MatrixFile = serde_json::from_str(bad).unwrap();
        assert!(file.to_matrix().is_err());
    }

    #[test]
    fn malformed_entry_counts_rejected() {
        let text = r#"{"field":{"p":2,"e":1},"m":2,"n":2,
            "entries":[{"ratfunc":{"num":[1],"den":[1]}}]}"#;
        let file: MatrixFile = serde_json::from_str(text).unwrap();
        assert!(matches!(file.to_matrix(), Err(Error::Malformed(_))));
    }
}
