//! The nine-slot certificate and the 52-parameter map Omega.
//!
//! Slot order: `G9 | LambdaT | G4 | Lambda | F11 | Lambda | F4 | LambdaT | G4`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{lambda_eval, lambda_t_eval, Quintuple};
use crate::field::Field;
use crate::matrix::Mat2;
use crate::poly::{Poly, PolyRing};
use crate::words::{Family, Word};

/// Arities of the nine slots; they add up to 52.
pub const SLOT_ARITIES: [usize; 9] = [9, 5, 4, 5, 11, 5, 4, 5, 4];
pub const PARAMETER_COUNT: usize = 52;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    Word(Family, usize),
    Lambda,
    LambdaT,
}

pub const SLOT_KINDS: [SlotKind; 9] = [
    SlotKind::Word(Family::G, 9),
    SlotKind::LambdaT,
    SlotKind::Word(Family::G, 4),
    SlotKind::Lambda,
    SlotKind::Word(Family::F, 11),
    SlotKind::Lambda,
    SlotKind::Word(Family::F, 4),
    SlotKind::LambdaT,
    SlotKind::Word(Family::G, 4),
];

impl SlotKind {
    pub fn label(self) -> String {
        match self {
            SlotKind::Word(Family::G, k) => format!("G{k}"),
            SlotKind::Word(_, k) => format!("F{k}"),
            SlotKind::Lambda => "Lambda".into(),
            SlotKind::LambdaT => "LambdaT".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Word(Word),
    Quintuple(Quintuple),
}

/// Quintuple slots hold Lambda parameters, so `Lambda(params)` is the factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub chi9: Word,
    pub gamma: Quintuple,
    pub chi4: Word,
    pub beta: Quintuple,
    pub chi11: Word,
    pub gamma_h: Quintuple,
    pub chi4_h: Word,
    pub beta_h: Quintuple,
    pub chi4_s: Word,
}

impl Certificate {
    /// All parameters zero; evaluates to the identity.
    pub fn zero() -> Certificate {
        Certificate {
            chi9: Word::zero(Family::G, 9),
            gamma: Quintuple::zero(),
            chi4: Word::zero(Family::G, 4),
            beta: Quintuple::zero(),
            chi11: Word::zero(Family::F, 11),
            gamma_h: Quintuple::zero(),
            chi4_h: Word::zero(Family::F, 4),
            beta_h: Quintuple::zero(),
            chi4_s: Word::zero(Family::G, 4),
        }
    }

    pub fn slots(&self) -> [Slot; 9] {
        [
            Slot::Word(self.chi9.clone()),
            Slot::Quintuple(self.gamma.clone()),
            Slot::Word(self.chi4.clone()),
            Slot::Quintuple(self.beta.clone()),
            Slot::Word(self.chi11.clone()),
            Slot::Quintuple(self.gamma_h.clone()),
            Slot::Word(self.chi4_h.clone()),
            Slot::Quintuple(self.beta_h.clone()),
            Slot::Word(self.chi4_s.clone()),
        ]
    }

    /// Families and arities as in the slot table.
    pub fn check_shape(&self) -> Result<()> {
        for (slot, kind) in self.slots().iter().zip(SLOT_KINDS) {
            if let (Slot::Word(w), SlotKind::Word(fam, k)) = (slot, kind) {
                if w.family() != fam || w.arity() != k {
                    return Err(Error::ArityMismatch(format!(
                        "slot {} holds {:?} of arity {}",
                        kind.label(),
                        w.family(),
                        w.arity()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Shape plus the determinant condition on the four quintuples.
    pub fn validate(&self, r: &PolyRing) -> Result<()> {
        self.check_shape()?;
        for t in [&self.gamma, &self.beta, &self.gamma_h, &self.beta_h] {
            t.require_valid(r)?;
        }
        Ok(())
    }

    /// The 52 parameters in slot order.
    pub fn flatten(&self) -> Vec<Poly> {
        let mut out = Vec::with_capacity(PARAMETER_COUNT);
        for s in self.slots() {
            match s {
                Slot::Word(w) => out.extend(w.params()),
                Slot::Quintuple(t) => out.extend(t.to_array()),
            }
        }
        out
    }

    pub fn unflatten(r: &PolyRing, params: &[Poly]) -> Result<Certificate> {
        if params.len() != PARAMETER_COUNT {
            return Err(Error::BadLength(params.len()));
        }
        let mut words = Vec::with_capacity(5);
        let mut quints = Vec::with_capacity(4);
        let mut at = 0;
        for kind in SLOT_KINDS {
            match kind {
                SlotKind::Word(fam, k) => {
                    let p = params[at..at + k].to_vec();
                    words.push(if fam == Family::G { Word::g(p) } else { Word::f(p) });
                    at += k;
                }
                _ => {
                    let p: [Poly; 5] = params[at..at + 5].to_vec().try_into().expect("five");
                    quints.push(Quintuple::from_array(p));
                    at += 5;
                }
            }
        }
        let mut w = words.into_iter();
        let mut t = quints.into_iter();
        let mut next_w = || w.next().expect("five words");
        let mut next_t = || t.next().expect("four quintuples");
        let cert = Certificate {
            chi9: next_w(),
            gamma: next_t(),
            chi4: next_w(),
            beta: next_t(),
            chi11: next_w(),
            gamma_h: next_t(),
            chi4_h: next_w(),
            beta_h: next_t(),
            chi4_s: next_w(),
        };
        cert.validate(r)?;
        Ok(cert)
    }

    pub fn max_degree(&self) -> usize {
        self.flatten().iter().map(|p| p.size_deg()).max().unwrap_or(0)
    }

    /// Evaluations of the nine factors, in order.
    pub fn factor_matrices(&self, r: &PolyRing) -> Vec<Mat2> {
        self.slots()
            .iter()
            .zip(SLOT_KINDS)
            .map(|(s, kind)| match (s, kind) {
                (Slot::Word(w), _) => w.eval(r),
                (Slot::Quintuple(t), SlotKind::LambdaT) => lambda_t_eval(r, t),
                (Slot::Quintuple(t), _) => lambda_eval(r, t),
            })
            .collect()
    }
}

/// `Omega(params)`: the product of the nine slot values.
pub fn omega_eval(r: &PolyRing, cert: &Certificate) -> Result<Mat2> {
    cert.validate(r)?;
    Ok(cert.factor_matrices(r).iter().fold(Mat2::identity(), |acc, m| acc.mul(r, m)))
}

/// Field description shared by the JSON formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    /// Defining polynomial, lowest degree first; only for `n > 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn of(field: &Field) -> FieldSpec {
        let modulus = (field.n() > 1).then(|| field.modulus().to_vec());
        FieldSpec { p: field.p() as u64, n: field.n(), modulus }
    }

    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.n, self.modulus.as_deref())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotJson {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quintuple: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertJson {
    v: u32,
    field: FieldSpec,
    slots: Vec<SlotJson>,
}

/// Schema version of the certificate JSON.
pub const CERT_VERSION: u32 = 1;

impl Certificate {
    pub fn to_json(&self, r: &PolyRing) -> String {
        let slots = self
            .slots()
            .iter()
            .zip(SLOT_KINDS)
            .map(|(s, kind)| match s {
                Slot::Word(w) => SlotJson {
                    family: kind.label(),
                    params: Some(w.params().iter().map(|p| r.format(p)).collect()),
                    quintuple: None,
                },
                Slot::Quintuple(t) => SlotJson {
                    family: kind.label(),
                    params: None,
                    quintuple: Some(t.to_array().iter().map(|p| r.format(p)).collect()),
                },
            })
            .collect();
        let doc = CertJson { v: CERT_VERSION, field: FieldSpec::of(r.field()), slots };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    /// Parses a certificate and builds its field. Schema problems give
    /// `Parse`; a quintuple off `M_Lambda` gives `QuintupleNotSL2`.
    pub fn from_json(text: &str) -> Result<(PolyRing, Certificate)> {
        let doc: CertJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.v != CERT_VERSION {
            return Err(Error::Parse(format!("unsupported certificate version {}", doc.v)));
        }
        let r = PolyRing::new(doc.field.build()?);
        if doc.slots.len() != 9 {
            return Err(Error::Parse(format!("expected 9 slots, got {}", doc.slots.len())));
        }
        let mut params = Vec::with_capacity(PARAMETER_COUNT);
        for (s, kind) in doc.slots.iter().zip(SLOT_KINDS) {
            if s.family != kind.label() {
                return Err(Error::Parse(format!("slot {} labelled {}", kind.label(), s.family)));
            }
            let (list, want) = match kind {
                SlotKind::Word(_, k) => (s.params.as_ref(), k),
                _ => (s.quintuple.as_ref(), 5),
            };
            let list = list.ok_or_else(|| Error::Parse(format!("slot {} has no parameters", kind.label())))?;
            if list.len() != want {
                return Err(Error::Parse(format!("slot {} needs {want} entries", kind.label())));
            }
            for p in list {
                params.push(r.parse(p)?);
            }
        }
        let cert = Certificate::unflatten(&r, &params)?;
        Ok((r, cert))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(Field::new(3, 1, None).unwrap())
    }

    #[test]
    fn arities_add_up() {
        assert_eq!(SLOT_ARITIES.iter().sum::<usize>(), PARAMETER_COUNT);
        let c = Certificate::zero();
        assert_eq!(c.flatten().len(), 52);
        for (s, k) in c.slots().iter().zip(SLOT_ARITIES) {
            let n = match s {
                Slot::Word(w) => w.arity(),
                Slot::Quintuple(_) => 5,
            };
            assert_eq!(n, k);
        }
    }

    #[test]
    fn zero_certificate_is_identity() {
        let r = ring();
        assert!(omega_eval(&r, &Certificate::zero()).unwrap().is_identity());
        let back = Certificate::unflatten(&r, &vec![Poly::zero(); 52]).unwrap();
        assert_eq!(back, Certificate::zero());
    }

    #[test]
    fn single_slot() {
        let r = ring();
        let m = r.from_ints(&[1, 2]);
        let mut params = vec![Poly::zero(); 52];
        params[0] = m.clone();
        let c = Certificate::unflatten(&r, &params).unwrap();
        assert_eq!(omega_eval(&r, &c).unwrap(), Mat2::lower(r.neg(&m)));
    }

    #[test]
    fn length_and_validity() {
        let r = ring();
        assert!(matches!(Certificate::unflatten(&r, &vec![Poly::zero(); 51]), Err(Error::BadLength(51))));
        let mut params = vec![Poly::zero(); 52];
        // quintuple (1, 0, 0, 0, T): det M1 = 1 + T != 1
        params[9] = Poly::one();
        params[13] = Poly::t();
        assert!(matches!(Certificate::unflatten(&r, &params), Err(Error::QuintupleNotSL2)));
    }

    #[test]
    fn json_round_trip() {
        let r = ring();
        let mut params = vec![Poly::zero(); 52];
        params[3] = r.from_ints(&[1, 0, 2]);
        params[20] = Poly::t();
        let c = Certificate::unflatten(&r, &params).unwrap();
        let text = c.to_json(&r);
        assert!(text.starts_with("{\"v\":1,\"field\":{\"p\":3,\"n\":1}"));
        let (r2, back) = Certificate::from_json(&text).unwrap();
        assert_eq!(r2.field().q(), 3);
        assert_eq!(back, c);
        assert!(matches!(Certificate::from_json(&text[..text.len() - 3]), Err(Error::Parse(_))));
    }

    #[test]
    fn extension_field_json_keeps_modulus() {
        let r = PolyRing::new(Field::new(3, 2, None).unwrap());
        let text = Certificate::zero().to_json(&r);
        assert!(text.contains("\"modulus\":[1,0,1]"));
        let (r2, _) = Certificate::from_json(&text).unwrap();
        assert_eq!(r2.field().q(), 9);
    }
}
