//! JSON monoid definition files.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{ComplementSpec, Family, MonoidError, MonoidSpec, QuadraticSurd};
use crate::ambient::{GroupElement, GroupSignature};
use crate::json::{bigints, ints, JsonInt};

#[derive(Serialize, Deserialize)]
struct MonoidFile {
    label: String,
    signature: GroupSignature,
    #[serde(flatten)]
    family: FamilyFile,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
enum FamilyFile {
    FullN0,
    Numerical {
        generators: Vec<u64>,
    },
    HalfPlaneLex {
        embedding: [usize; 2],
    },
    IrrationalCone {
        embedding: [usize; 2],
        alpha: SurdFile,
    },
    FreeGenerated {
        generators: Vec<Vec<JsonInt>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<Vec<JsonInt>>,
    },
    Composite {
        valuation_part: Box<MonoidFile>,
        complement: ComplementFile,
    },
}

#[derive(Serialize, Deserialize)]
struct SurdFile {
    p: JsonInt,
    q: JsonInt,
    r: JsonInt,
    n: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct ComplementFile {
    base_subgroup: Vec<Vec<JsonInt>>,
    positive_generators: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<JsonInt>>,
}

/// Flat coordinates: free part followed by torsion part.
pub(crate) fn element_from_coords(sig: &GroupSignature, coords: Vec<BigInt>) -> Result<GroupElement, MonoidError> {
    if coords.len() != sig.dim() {
        return Err(MonoidError::File(format!(
            "element has {} coordinates, signature {sig} needs {}",
            coords.len(),
            sig.dim()
        )));
    }
    let mut free = coords;
    let torsion = free.split_off(sig.free_rank());
    Ok(sig.element(free, torsion)?)
}

fn elements(sig: &GroupSignature, raw: Vec<Vec<JsonInt>>) -> Result<Vec<GroupElement>, MonoidError> {
    raw.into_iter().map(|c| element_from_coords(sig, bigints(c))).collect()
}

fn coords(u: &GroupElement) -> Vec<JsonInt> {
    let mut out = ints(u.free());
    out.extend(ints(u.torsion()));
    out
}

fn require_integers(sig: &GroupSignature, family: &str) -> Result<(), MonoidError> {
    if sig.is_integers() {
        Ok(())
    } else {
        Err(MonoidError::File(format!("{family} requires signature Z, got {sig}")))
    }
}

impl MonoidFile {
    fn into_spec(self) -> Result<MonoidSpec, MonoidError> {
        let sig = self.signature;
        let spec = match self.family {
            FamilyFile::FullN0 => {
                require_integers(&sig, "full_n0")?;
                MonoidSpec::full_n0()
            }
            FamilyFile::Numerical { generators } => {
                require_integers(&sig, "numerical")?;
                MonoidSpec::numerical(&generators)?
            }
            FamilyFile::HalfPlaneLex { embedding } => MonoidSpec::half_plane_lex(sig, embedding)?,
            FamilyFile::IrrationalCone { embedding, alpha } => {
                let alpha = QuadraticSurd::new(alpha.p.0, alpha.q.0, alpha.r.0, alpha.n.0)?;
                MonoidSpec::irrational_cone(sig, embedding, alpha)?
            }
            FamilyFile::FreeGenerated { generators, grading } => {
                let generators = elements(&sig, generators)?;
                MonoidSpec::free_generated(sig, generators, grading.map(bigints))?
            }
            FamilyFile::Composite { valuation_part, complement } => {
                let valuation = valuation_part.into_spec()?;
                if valuation.signature() != &sig {
                    return Err(MonoidError::File(format!(
                        "valuation part has signature {}, composite has {sig}",
                        valuation.signature()
                    )));
                }
                let complement = ComplementSpec {
                    base_subgroup: elements(&sig, complement.base_subgroup)?,
                    positive_generators: elements(&sig, complement.positive_generators)?,
                    grading: complement.grading.map(bigints),
                };
                MonoidSpec::composite(valuation, complement)?
            }
        };
        Ok(spec.with_label(self.label))
    }

    fn from_spec(spec: &MonoidSpec) -> Self {
        let family = match spec.family() {
            Family::FullN0 => FamilyFile::FullN0,
            Family::Numerical { generators } => FamilyFile::Numerical { generators: generators.clone() },
            Family::HalfPlaneLex { embedding } => FamilyFile::HalfPlaneLex { embedding: *embedding },
            Family::IrrationalCone { embedding, alpha } => {
                let (p, q, r, n) = alpha.parts();
                FamilyFile::IrrationalCone {
                    embedding: *embedding,
                    alpha: SurdFile {
                        p: JsonInt(p.clone()),
                        q: JsonInt(q.clone()),
                        r: JsonInt(r.clone()),
                        n: JsonInt(n.clone()),
                    },
                }
            }
            Family::FreeGenerated { generators, grading } => FamilyFile::FreeGenerated {
                generators: generators.iter().map(coords).collect(),
                grading: grading.as_deref().map(ints),
            },
            Family::Composite { valuation_part, complement } => FamilyFile::Composite {
                valuation_part: Box::new(MonoidFile::from_spec(valuation_part)),
                complement: ComplementFile {
                    base_subgroup: complement.base_subgroup.iter().map(coords).collect(),
                    positive_generators: complement.positive_generators.iter().map(coords).collect(),
                    grading: complement.grading.as_deref().map(ints),
                },
            },
        };
        MonoidFile { label: spec.label().to_string(), signature: spec.signature().clone(), family }
    }
}

impl MonoidSpec {
    pub fn from_json(text: &str) -> Result<Self, MonoidError> {
        let file: MonoidFile = serde_json::from_str(text).map_err(|e| MonoidError::File(e.to_string()))?;
        file.into_spec()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MonoidFile::from_spec(self)).expect("monoid file serializes")
    }
}

impl Serialize for MonoidSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MonoidFile::from_spec(self).serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_round_trip() {
        let text = r#"{"label":"h","signature":{"free_rank":1,"torsion_orders":[]},"family":"numerical","generators":[2,3]}"#;
        let spec = MonoidSpec::from_json(text).unwrap();
        assert_eq!(spec.label(), "h");
        assert_eq!(MonoidSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn cone_round_trip() {
        let text = r#"{"label":"k","signature":{"free_rank":2,"torsion_orders":[]},
            "family":"irrational_cone","embedding":[0,1],"alpha":{"p":0,"q":1,"r":1,"n":2}}"#;
        let spec = MonoidSpec::from_json(text).unwrap();
        let again = MonoidSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.to_json(), spec.to_json());
    }

    #[test]
    fn rejects_rational_alpha_and_bad_signature() {
        let text = r#"{"label":"k","signature":{"free_rank":2,"torsion_orders":[]},
            "family":"irrational_cone","embedding":[0,1],"alpha":{"p":0,"q":1,"r":1,"n":4}}"#;
        assert!(matches!(MonoidSpec::from_json(text), Err(MonoidError::InvalidSurd(_))));
        let text = r#"{"label":"h","signature":{"free_rank":2,"torsion_orders":[]},"family":"full_n0"}"#;
        assert!(MonoidSpec::from_json(text).is_err());
        assert!(MonoidSpec::from_json("{").is_err());
    }
}
