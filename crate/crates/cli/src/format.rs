//! JSON file formats.
//!
//! A matrix file is `{"field": "real"|"complex", "n": N, "data": [...]}` with
//! `data` an `N x N` array of numbers (real) or `[re, im]` pairs (complex).
//! Floats are written in the shortest decimal form that parses back to the
//! same `f64`, so every write/read cycle is bit-exact.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use elliptope::{Complex64, ExtremalityReport, Field, HermitianMatrix, Tolerances, TruncationTrace, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Real(Vec<Vec<f64>>),
    Complex(Vec<Vec<[f64; 2]>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub field: Field,
    pub n: usize,
    pub data: MatrixData,
}

impl MatrixFile {
    pub fn from_matrix(m: &HermitianMatrix) -> Self {
        let n = m.n();
        let data = match m.field() {
            Field::Real => MatrixData::Real((0..n).map(|i| (0..n).map(|j| m.get(i, j).re).collect()).collect()),
            Field::Complex => MatrixData::Complex(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let z = m.get(i, j);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect(),
            ),
        };
        MatrixFile {
            field: m.field(),
            n,
            data,
        }
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)
            .map_err(|e| anyhow::anyhow!("malformed matrix file at line {}, column {}: {e}", e.line(), e.column()))?;
        file.check_shape()?;
        Ok(file)
    }

    fn check_shape(&self) -> anyhow::Result<()> {
        let n = self.n;
        if n == 0 {
            bail!("\"n\" must be at least 1");
        }
        let row_lengths: Vec<usize> = match (&self.data, self.field) {
            (MatrixData::Real(rows), Field::Real) => rows.iter().map(Vec::len).collect(),
            (MatrixData::Complex(rows), Field::Complex) => rows.iter().map(Vec::len).collect(),
            // an empty array parses as the first variant
            (MatrixData::Real(rows), Field::Complex) if rows.iter().all(Vec::is_empty) => {
                rows.iter().map(Vec::len).collect()
            }
            (MatrixData::Real(_), Field::Complex) => {
                bail!("field is complex but data holds plain numbers (expected [re, im] pairs)")
            }
            (MatrixData::Complex(_), Field::Real) => {
                bail!("field is real but data holds [re, im] pairs (expected plain numbers)")
            }
        };
        if row_lengths.len() != n {
            bail!("data has {} rows, expected n = {n}", row_lengths.len());
        }
        if let Some((row, len)) = row_lengths.iter().enumerate().find(|(_, &len)| len != n) {
            bail!("data row {row} has {len} entries, expected n = {n}");
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> anyhow::Result<HermitianMatrix> {
        self.check_shape()?;
        let entries: Vec<Complex64> = match &self.data {
            MatrixData::Real(rows) => rows.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect(),
            MatrixData::Complex(rows) => rows.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect(),
        };
        Ok(HermitianMatrix::from_complex(self.field, self.n, &entries)?)
    }
}

pub fn read_matrix_file(path: &std::path::Path) -> anyhow::Result<MatrixFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    MatrixFile::parse(&text).with_context(|| format!("in {}", path.display()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub epsilon: f64,
    pub damped: bool,
    pub b: MatrixFile,
    pub c_plus: MatrixFile,
    pub c_minus: MatrixFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub field: Field,
    pub n: usize,
    pub verdict: Verdict,
    pub rank: usize,
    pub span_dim: usize,
    pub ambient_dim: usize,
    pub marginal: bool,
    pub psd_floor: f64,
    pub witness: Option<WitnessFile>,
    pub tolerances: Tolerances,
}

impl ReportFile {
    pub fn new(report: &ExtremalityReport, psd_floor: f64, tolerances: Tolerances) -> Self {
        ReportFile {
            field: report.field,
            n: report.n,
            verdict: report.verdict,
            rank: report.rank,
            span_dim: report.span_dim,
            ambient_dim: report.ambient_dim,
            marginal: report.marginal,
            psd_floor,
            witness: report.witness.as_ref().map(|w| WitnessFile {
                epsilon: w.epsilon,
                damped: w.damped,
                b: MatrixFile::from_matrix(&w.b),
                c_plus: MatrixFile::from_matrix(w.c_plus.matrix()),
                c_minus: MatrixFile::from_matrix(w.c_minus.matrix()),
            }),
            tolerances,
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        out.push_str(&format!("field:      {}\n", self.field));
        out.push_str(&format!("size:       {}\n", self.n));
        out.push_str(&format!("rank:       {}\n", self.rank));
        out.push_str(&format!("span:       {} of {}\n", self.span_dim, self.ambient_dim));
        let verdict = match self.verdict {
            Verdict::Extreme => "extreme",
            Verdict::NotExtreme => "not extreme",
        };
        out.push_str(&format!("verdict:    {verdict}\n"));
        out.push_str(&format!("marginal:   {}\n", yes_no(self.marginal)));
        out.push_str(&format!("psd floor:  {:e}\n", self.psd_floor));
        if let Some(w) = &self.witness {
            out.push_str(&format!("epsilon:    {}\n", w.epsilon));
            out.push_str(&format!("damped:     {}\n", yes_no(w.damped)));
            out.push_str("C = (C_minus + C_plus) / 2 with C_plus - C = epsilon * B:\n");
            out.push_str(&format!("B =\n{}", render(&w.b)));
            out.push_str(&format!("C_plus =\n{}", render(&w.c_plus)));
            out.push_str(&format!("C_minus =\n{}", render(&w.c_minus)));
        }
        out
    }
}

fn render(m: &MatrixFile) -> String {
    let rows: Vec<String> = match &m.data {
        MatrixData::Real(rows) => rows
            .iter()
            .map(|r| r.iter().map(|x| format!("{x:>10.6}")).collect::<Vec<_>>().join(" "))
            .collect(),
        MatrixData::Complex(rows) => rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|[re, im]| format!("{re:>9.6}{im:+.6}i"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect(),
    };
    rows.into_iter().map(|r| format!("  {r}\n")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Prop1,
    Ones,
    Cycled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub kind: GeneratorKind,
    pub field: Field,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base: Option<MatrixFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFile {
    pub generator: GeneratorFile,
    pub n_min: usize,
    pub n_max: usize,
    pub step: usize,
    pub tolerances: Tolerances,
    #[serde(flatten)]
    pub trace: TruncationTrace,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_and_complex() {
        let real = MatrixFile::parse(r#"{"field":"real","n":2,"data":[[1,0.5],[0.5,1]]}"#).unwrap();
        let m = real.to_matrix().unwrap();
        assert_eq!(m.get(0, 1), Complex64::new(0.5, 0.0));

        let complex =
            MatrixFile::parse(r#"{"field":"complex","n":2,"data":[[[1,0],[0.3,-0.4]],[[0.3,0.4],[1,0]]]}"#).unwrap();
        let m = complex.to_matrix().unwrap();
        assert_eq!(m.get(1, 0), Complex64::new(0.3, 0.4));
        assert_eq!(m.field(), Field::Complex);
    }

    #[test]
    fn shape_errors_are_specific() {
        let err = MatrixFile::parse(r#"{"field":"real","n":2,"data":[[1,0],[0]]}"#).unwrap_err();
        assert!(err.to_string().contains("row 1 has 1 entries"), "{err}");
        let err = MatrixFile::parse(r#"{"field":"real","n":3,"data":[[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("1 rows"), "{err}");
        let err = MatrixFile::parse(r#"{"field":"complex","n":1,"data":[[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("pairs"), "{err}");
        let err = MatrixFile::parse("{\n  \"field\": \"real\",\n  \"n\": 1,\n  \"data\": [[1,]]\n}").unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        let err = MatrixFile::parse(r#"{"field":"octonion","n":1,"data":[[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn awkward_floats_roundtrip_bit_exactly() {
        let x = 0.1 + 0.2;
        let tiny = f64::MIN_POSITIVE;
        let m = HermitianMatrix::from_complex(
            Field::Complex,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(x, -tiny),
                Complex64::new(x, tiny),
                Complex64::new(1.0, -0.0),
            ],
        )
        .unwrap();
        let text = to_json(&MatrixFile::from_matrix(&m));
        let back = MatrixFile::parse(&text).unwrap().to_matrix().unwrap();
        for (a, b) in m.entries().iter().zip(back.entries()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}
