//! Text documents for complexes and chain maps. Integers are decimal strings,
//! so entries of any size survive a round trip.

use serde::{Deserialize, Serialize};

use crate::abelian::FpAbGroup;
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};

use super::complex::FpChainComplex;
use super::map::ChainMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Free,
    Fp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDocument {
    pub degree: i64,
    pub rank: usize,
    /// Columns are relations, so this is `rank` rows of equal length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDocument {
    /// `∂` out of this degree.
    pub degree: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub kind: ComplexKind,
    pub lo: i64,
    pub hi: i64,
    pub degrees: Vec<DegreeDocument>,
    pub boundaries: Vec<BoundaryDocument>,
}

fn parse_err(degree: i64, what: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("degree {degree}: {what}: {msg}"))
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(Int::to_string).collect()).collect()
}

/// Parses integer rows into a `rows × cols` matrix. `cols` is only needed
/// when there are no rows to read it from.
pub fn parse_matrix(rows: &[Vec<String>], expect_rows: usize, cols: Option<usize>) -> std::result::Result<IntMatrix, String> {
    if rows.len() != expect_rows {
        return Err(format!("expected {expect_rows} rows, found {}", rows.len()));
    }
    let width = match (rows.first(), cols) {
        (Some(r), _) => r.len(),
        (None, Some(c)) => c,
        (None, None) => 0,
    };
    let mut data = Vec::with_capacity(expect_rows * width);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(format!("row {i} has {} entries, expected {width}", row.len()));
        }
        for s in row {
            data.push(s.trim().parse::<Int>().map_err(|_| format!("row {i}: `{s}` is not an integer"))?);
        }
    }
    if let Some(c) = cols {
        if c != width {
            return Err(format!("expected {c} columns, found {width}"));
        }
    }
    IntMatrix::from_vec(expect_rows, width, data).map_err(|e| e.to_string())
}

impl ComplexDocument {
    pub fn from_complex(name: &str, c: &FpChainComplex) -> Self {
        let kind = if c.is_free() { ComplexKind::Free } else { ComplexKind::Fp };
        let degrees = c
            .degrees()
            .map(|n| DegreeDocument {
                degree: n,
                rank: c.gens(n),
                relations: match kind {
                    ComplexKind::Free => None,
                    ComplexKind::Fp => Some(matrix_rows(&c.relations(n))),
                },
            })
            .collect();
        let boundaries = c
            .degrees()
            .skip(1)
            .map(|n| BoundaryDocument {
                degree: n,
                matrix: matrix_rows(&c.boundary(n)),
            })
            .collect();
        ComplexDocument {
            name: name.to_string(),
            kind,
            lo: c.lo(),
            hi: c.hi(),
            degrees,
            boundaries,
        }
    }

    pub fn to_complex(&self) -> Result<FpChainComplex> {
        if self.hi < self.lo - 1 {
            return Err(Error::Parse(format!("degree range {}..{} is reversed", self.lo, self.hi)));
        }
        let len = (self.hi - self.lo + 1) as usize;
        if self.degrees.len() != len {
            return Err(Error::Parse(format!("expected {len} degree entries, found {}", self.degrees.len())));
        }
        let mut groups = Vec::with_capacity(len);
        for (k, d) in self.degrees.iter().enumerate() {
            let n = self.lo + k as i64;
            if d.degree != n {
                return Err(parse_err(d.degree, "degrees", format!("expected degree {n}")));
            }
            let g = match (self.kind, &d.relations) {
                (ComplexKind::Free, None) => FpAbGroup::free(d.rank),
                (ComplexKind::Free, Some(_)) => return Err(parse_err(n, "relations", "a free complex has none")),
                (ComplexKind::Fp, None) => FpAbGroup::free(d.rank),
                (ComplexKind::Fp, Some(rows)) => {
                    let m = parse_matrix(rows, d.rank, Some(rows.first().map_or(0, Vec::len)))
                        .map_err(|e| parse_err(n, "relations", e))?;
                    FpAbGroup::new(d.rank, m).map_err(|e| parse_err(n, "relations", e))?
                }
            };
            groups.push(g);
        }
        let expect = len.saturating_sub(1);
        if self.boundaries.len() != expect {
            return Err(Error::Parse(format!("expected {expect} boundary matrices, found {}", self.boundaries.len())));
        }
        let mut boundaries = Vec::with_capacity(expect);
        for (k, b) in self.boundaries.iter().enumerate() {
            let n = self.lo + k as i64 + 1;
            if b.degree != n {
                return Err(parse_err(b.degree, "boundaries", format!("expected degree {n}")));
            }
            let (rows, cols) = (groups[k].gens(), groups[k + 1].gens());
            let m = parse_matrix(&b.matrix, rows, Some(cols)).map_err(|e| parse_err(n, "boundary", e))?;
            boundaries.push(m);
        }
        FpChainComplex::new(self.lo, groups, boundaries)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// A chain map between two complexes of a bundle, by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub source: usize,
    pub target: usize,
    /// `(degree, matrix)` over the source degrees.
    pub matrices: Vec<BoundaryDocument>,
}

impl MapDocument {
    pub fn from_map(source: usize, target: usize, f: &ChainMap) -> Self {
        MapDocument {
            source,
            target,
            matrices: f
                .source()
                .degrees()
                .map(|n| BoundaryDocument {
                    degree: n,
                    matrix: matrix_rows(&f.matrix(n)),
                })
                .collect(),
        }
    }

    pub fn to_map(&self, complexes: &[FpChainComplex]) -> Result<ChainMap> {
        let get = |k: usize| {
            complexes
                .get(k)
                .ok_or_else(|| Error::Parse(format!("map refers to missing complex {k}")))
        };
        let (s, t) = (get(self.source)?, get(self.target)?);
        let mut ms = Vec::new();
        for (k, b) in self.matrices.iter().enumerate() {
            let n = s.lo() + k as i64;
            if b.degree != n {
                return Err(parse_err(b.degree, "map", format!("expected degree {n}")));
            }
            ms.push(parse_matrix(&b.matrix, t.gens(n), Some(s.gens(n))).map_err(|e| parse_err(n, "map", e))?);
        }
        if ms.len() != s.degrees().count() {
            return Err(Error::Parse("map does not cover the source degrees".into()));
        }
        ChainMap::from_fn(s, t, |n| ms[(n - s.lo()) as usize].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin::{moore, rp};
    use crate::complex::mod_reduction;
    use crate::random::{random_fp_complex, seeded, FpParams};

    #[test]
    fn round_trips() {
        let mut rng = seeded(5);
        let mut cs = vec![rp(3).into_fp(), moore(2, 1).into_fp(), mod_reduction(&moore(4, 1), &Int::from(2)).unwrap()];
        cs.extend((0..20).map(|_| random_fp_complex(&mut rng, &FpParams::default())));
        for c in cs {
            let doc = ComplexDocument::from_complex("c", &c);
            let text = doc.render();
            let back = ComplexDocument::parse(&text).unwrap();
            assert_eq!(back.render(), text);
            assert!(back.to_complex().unwrap().same_data(&c));
        }
    }

    #[test]
    fn huge_entries_survive() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let c = FpChainComplex::new(0, vec![FpAbGroup::free(1), FpAbGroup::free(1)], vec![IntMatrix::scalar(1, &big)]).unwrap();
        let text = ComplexDocument::from_complex("big", &c).render();
        assert!(text.contains("\"123456789012345678901234567890\""));
        let back = ComplexDocument::parse(&text).unwrap().to_complex().unwrap();
        assert_eq!(back.boundary(1), IntMatrix::scalar(1, &big));
    }

    #[test]
    fn errors_name_the_degree() {
        let mut doc = ComplexDocument::from_complex("m", moore(2, 1).as_fp());
        doc.boundaries[0].matrix = vec![vec!["2".into(), "3".into()]];
        let err = doc.to_complex().unwrap_err().to_string();
        assert!(err.contains("degree 2"), "{err}");
        doc.boundaries[0].matrix = vec![vec!["x".into()]];
        assert!(doc.to_complex().unwrap_err().to_string().contains("degree 2"));
        let mut bad = ComplexDocument::from_complex("r", rp(2).as_fp());
        bad.boundaries[1].matrix = vec![vec!["1".into()]];
        bad.boundaries[0].matrix = vec![vec!["1".into()]];
        assert!(matches!(bad.to_complex(), Err(Error::InvalidComplex { .. })));
    }
}
