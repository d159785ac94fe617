//! Field tables: rows of number fields with a Galois label, read from CSV or
//! JSON lines and validated against the discriminant engine.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Read, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::CensusError;
use crate::arith::exact_sqrt;
use crate::cubicenum::{index_form, CubicFieldRecord};
use crate::nfield::fp::{factor_mod_p, FpPoly};
use crate::nfield::{NumberField, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GaloisLabel {
    C3,
    S3,
    A4,
    S4,
    A5,
}

impl GaloisLabel {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "C3" => Some(GaloisLabel::C3),
            "S3" => Some(GaloisLabel::S3),
            "A4" => Some(GaloisLabel::A4),
            "S4" => Some(GaloisLabel::S4),
            "A5" => Some(GaloisLabel::A5),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GaloisLabel::C3 => "C3",
            GaloisLabel::S3 => "S3",
            GaloisLabel::A4 => "A4",
            GaloisLabel::S4 => "S4",
            GaloisLabel::A5 => "A5",
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            GaloisLabel::C3 | GaloisLabel::S3 => 3,
            GaloisLabel::A4 | GaloisLabel::S4 => 4,
            GaloisLabel::A5 => 5,
        }
    }

    /// Whether the group lies in the alternating group, i.e. d is a square.
    pub fn even(&self) -> bool {
        matches!(self, GaloisLabel::C3 | GaloisLabel::A4 | GaloisLabel::A5)
    }

    /// Smallest |d| of any number field of this degree.
    pub fn disc_floor(&self) -> u64 {
        match self.degree() {
            3 => 23,
            4 => 117,
            _ => 1609,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldRow {
    pub degree: usize,
    pub poly: ZPoly,
    pub disc: BigInt,
    pub galois_label: GaloisLabel,
    pub source: String,
    /// false for rows kept in lenient mode despite a failed check
    pub verified: bool,
}

impl FieldRow {
    pub fn abs_disc(&self) -> BigInt {
        self.disc.abs()
    }

    pub fn from_cubic(rec: &CubicFieldRecord, source: &str) -> Self {
        FieldRow {
            degree: 3,
            poly: rec.poly.clone(),
            disc: BigInt::from(rec.disc),
            galois_label: if rec.galois.label() == "C3" { GaloisLabel::C3 } else { GaloisLabel::S3 },
            source: source.to_string(),
            verified: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IngestMode {
    Strict,
    Lenient,
}

#[derive(Clone, Debug, Default)]
pub struct FieldTable {
    pub rows: Vec<FieldRow>,
    /// lenient-mode problems, one line per flagged row
    pub flagged: Vec<String>,
    declared: BTreeMap<GaloisLabel, BigInt>,
}

/// On-disk row. `coeffs` is an ascending list; `galois_label` may be empty
/// for cubic rows.
#[derive(Debug, Deserialize, Serialize)]
struct RawRow {
    degree: usize,
    coeffs: Coeffs,
    disc: String,
    #[serde(default)]
    galois_label: String,
    #[serde(default)]
    source: String,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Coeffs {
    List(Vec<i64>),
    Text(String),
}

fn schema(line: usize, msg: impl Into<String>) -> CensusError {
    CensusError::Schema { line, msg: msg.into() }
}

/// A prime p ∤ disc(f) at which f factors as (3-cycle)·(linear factors),
/// which puts a 3-cycle in the Galois group.
fn three_cycle_witness(f: &ZPoly) -> Option<u64> {
    let pd = f.discriminant();
    let n = f.degree();
    crate::arith::primes_up_to(2000).into_iter().find(|&p| {
        if (&pd % BigInt::from(p)) == BigInt::from(0) {
            return false;
        }
        let mut degs: Vec<usize> = factor_mod_p(&FpPoly::from_zpoly(f, p)).iter().map(|(g, _)| g.degree()).collect();
        degs.sort_unstable();
        let mut want = vec![1; n - 3];
        want.push(3);
        degs == want
    })
}

/// Label certified from the discriminant's square class and, in degrees 4
/// and 5, a 3-cycle Frobenius: the only transitive groups with a 3-cycle are
/// A4, S4 in degree 4 and A5, S5 in degree 5.
pub fn certify_label(field: &NumberField) -> Option<GaloisLabel> {
    let square = !field.disc().is_negative() && exact_sqrt(field.disc()).is_some();
    match (field.degree(), square) {
        (3, true) => Some(GaloisLabel::C3),
        (3, false) => Some(GaloisLabel::S3),
        (4, sq) => three_cycle_witness(field.poly()).map(|_| if sq { GaloisLabel::A4 } else { GaloisLabel::S4 }),
        (5, true) => three_cycle_witness(field.poly()).map(|_| GaloisLabel::A5),
        _ => None,
    }
}

impl FieldTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cubics(recs: &[CubicFieldRecord], source: &str) -> Self {
        let mut t = FieldTable::new();
        t.rows = recs.iter().map(|r| FieldRow::from_cubic(r, source)).collect();
        t
    }

    pub fn load(path: &Path, mode: IngestMode) -> Result<Self, CensusError> {
        let text = std::fs::read_to_string(path).map_err(|e| CensusError::Io(format!("{}: {e}", path.display())))?;
        let jsonl = path.extension().is_some_and(|e| e == "jsonl" || e == "json");
        if jsonl {
            Self::read_jsonl(text.as_bytes(), mode)
        } else {
            Self::read_csv(text.as_bytes(), mode)
        }
    }

    pub fn read_csv<R: Read>(r: R, mode: IngestMode) -> Result<Self, CensusError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
        let mut raws = Vec::new();
        for (i, rec) in rdr.deserialize::<RawRow>().enumerate() {
            // header is line 1
            raws.push((i + 2, rec.map_err(|e| schema(i + 2, e.to_string()))?));
        }
        Self::validate(raws, mode)
    }

    pub fn read_jsonl<R: BufRead>(r: R, mode: IngestMode) -> Result<Self, CensusError> {
        let mut raws = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| CensusError::Io(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RawRow = serde_json::from_str(&line).map_err(|e| schema(i + 1, e.to_string()))?;
            raws.push((i + 1, raw));
        }
        Self::validate(raws, mode)
    }

    fn validate(raws: Vec<(usize, RawRow)>, mode: IngestMode) -> Result<Self, CensusError> {
        let mut table = FieldTable::new();
        let mut seen: BTreeSet<ZPoly> = BTreeSet::new();
        for (line, raw) in raws {
            let poly = match &raw.coeffs {
                Coeffs::List(v) => ZPoly::from_i64(v),
                Coeffs::Text(s) => s.parse::<ZPoly>().map_err(|e| schema(line, e.to_string()))?,
            };
            if poly.degree() != raw.degree {
                return Err(schema(line, format!("degree {} but polynomial has degree {}", raw.degree, poly.degree())));
            }
            if !(3..=5).contains(&raw.degree) {
                return Err(schema(line, format!("degree {} not in 3..=5", raw.degree)));
            }
            let disc: BigInt = raw.disc.trim().parse().map_err(|_| schema(line, format!("bad disc {:?}", raw.disc)))?;
            let stated = if raw.galois_label.trim().is_empty() {
                None
            } else {
                Some(GaloisLabel::parse(&raw.galois_label).ok_or_else(|| schema(line, format!("unknown label {:?}", raw.galois_label)))?)
            };
            if stated.is_some_and(|l| l.degree() != raw.degree) {
                return Err(schema(line, format!("label {} does not have degree {}", raw.galois_label, raw.degree)));
            }
            let field = NumberField::new(poly.clone()).map_err(|e| schema(line, e.to_string()))?;
            // cubic rows are keyed by the reduced index form, which is the same for every generator
            let key = if raw.degree == 3 {
                index_form(&field).reduce().expect("irreducible cubic form").monic_poly()
            } else {
                poly.clone()
            };
            if !seen.insert(key) {
                return Err(schema(line, "duplicate field"));
            }
            let mut verified = true;
            if field.disc() != &disc {
                match mode {
                    IngestMode::Strict => {
                        return Err(CensusError::DiscMismatch { line, stated: disc, computed: field.disc().clone() })
                    }
                    IngestMode::Lenient => {
                        table.flagged.push(format!("line {line}: stated disc {disc}, computed {}", field.disc()));
                        verified = false;
                    }
                }
            }
            let certified = certify_label(&field);
            let label = match (stated, certified) {
                (Some(s), Some(c)) if s == c => s,
                (None, Some(c)) if raw.degree == 3 => c,
                (None, _) => return Err(schema(line, "galois_label is required for degrees 4 and 5")),
                (Some(s), c) => {
                    let msg = format!("label {} not confirmed (certified {:?})", s.as_str(), c.map(|l| l.as_str()));
                    match mode {
                        IngestMode::Strict => return Err(schema(line, msg)),
                        IngestMode::Lenient => {
                            table.flagged.push(format!("line {line}: {msg}"));
                            verified = false;
                            s
                        }
                    }
                }
            };
            table.rows.push(FieldRow {
                degree: raw.degree,
                poly,
                disc: field.disc().clone(),
                galois_label: label,
                source: raw.source,
                verified,
            });
        }
        table.rows.sort_by(|a, b| {
            (a.degree, a.abs_disc(), a.disc.clone(), a.poly.clone()).cmp(&(b.degree, b.abs_disc(), b.disc.clone(), b.poly.clone()))
        });
        Ok(table)
    }

    /// Declares the table complete for `label` up to |d| ≤ bound.
    pub fn declare_coverage(&mut self, label: GaloisLabel, bound: BigInt) {
        self.declared.insert(label, bound);
    }

    /// Declared coverage, or the largest |d| present for the label.
    pub fn coverage(&self, label: GaloisLabel) -> BigInt {
        if let Some(b) = self.declared.get(&label) {
            return b.clone();
        }
        self.with_label(label).map(|r| r.abs_disc()).max().unwrap_or_default()
    }

    pub fn with_label(&self, label: GaloisLabel) -> impl Iterator<Item = &FieldRow> {
        self.rows.iter().filter(move |r| r.galois_label == label)
    }

    pub fn merge(&mut self, other: FieldTable) {
        self.rows.extend(other.rows);
        self.flagged.extend(other.flagged);
        for (k, v) in other.declared {
            self.declared.insert(k, v);
        }
        self.rows.sort_by(|a, b| (a.degree, a.abs_disc(), a.poly.clone()).cmp(&(b.degree, b.abs_disc(), b.poly.clone())));
        self.rows.dedup_by(|a, b| a.poly == b.poly);
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), CensusError> {
        let mut wr = csv::Writer::from_writer(w);
        for r in &self.rows {
            wr.serialize(raw_of(r)).map_err(|e| CensusError::Io(e.to_string()))?;
        }
        wr.flush().map_err(|e| CensusError::Io(e.to_string()))
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<(), CensusError> {
        for r in &self.rows {
            let line = serde_json::to_string(&raw_of(r)).expect("row serializes");
            writeln!(w, "{line}").map_err(|e| CensusError::Io(e.to_string()))?;
        }
        Ok(())
    }
}

fn raw_of(r: &FieldRow) -> RawRow {
    let coeffs: Vec<String> = r.poly.coeffs().iter().map(|c| c.to_string()).collect();
    RawRow {
        degree: r.degree,
        coeffs: Coeffs::Text(format!("[{}]", coeffs.join(","))),
        disc: r.disc.to_string(),
        galois_label: r.galois_label.as_str().to_string(),
        source: r.source.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificates() {
        let s4 = NumberField::from_i64(&[1, -1, 0, 0, 1]).unwrap();
        assert_eq!(s4.disc(), &BigInt::from(229));
        assert_eq!(certify_label(&s4), Some(GaloisLabel::S4));
        // x⁴ + 1 has group V4: no 3-cycle
        assert_eq!(certify_label(&NumberField::from_i64(&[1, 0, 0, 0, 1]).unwrap()), None);
        // x⁵ − x − 1 has group S5 with nonsquare disc
        assert_eq!(certify_label(&NumberField::from_i64(&[-1, -1, 0, 0, 0, 1]).unwrap()), None);
        assert_eq!(certify_label(&NumberField::from_i64(&[-1, -1, 0, 1]).unwrap()), Some(GaloisLabel::S3));
    }

    #[test]
    fn csv_and_jsonl() {
        let csv_text = "degree,coeffs,disc,galois_label,source\n3,\"[-1,-1,0,1]\",-23,,t\n3,\"[-1,-2,1,1]\",49,C3,t\n";
        let t = FieldTable::read_csv(csv_text.as_bytes(), IngestMode::Strict).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].galois_label, GaloisLabel::S3);
        let jl = "{\"degree\":4,\"coeffs\":[1,-1,0,0,1],\"disc\":\"229\",\"galois_label\":\"S4\",\"source\":\"t\"}\n";
        let t = FieldTable::read_jsonl(jl.as_bytes(), IngestMode::Strict).unwrap();
        assert_eq!(t.coverage(GaloisLabel::S4), BigInt::from(229));
        let bad = jl.replace("229", "230");
        assert!(matches!(FieldTable::read_jsonl(bad.as_bytes(), IngestMode::Strict), Err(CensusError::DiscMismatch { line: 1, .. })));
        let t = FieldTable::read_jsonl(bad.as_bytes(), IngestMode::Lenient).unwrap();
        assert_eq!(t.flagged.len(), 1);
        assert!(!t.rows[0].verified);
        let dup = "degree,coeffs,disc,galois_label,source\n3,\"[-1,-1,0,1]\",-23,,a\n3,\"[1,-1,0,1]\",-23,,b\n";
        assert!(matches!(FieldTable::read_csv(dup.as_bytes(), IngestMode::Strict), Err(CensusError::Schema { line: 3, .. })));
        let wrong_label = "degree,coeffs,disc,galois_label,source\n4,\"[1,-1,0,0,1]\",229,A4,t\n";
        assert!(matches!(FieldTable::read_csv(wrong_label.as_bytes(), IngestMode::Strict), Err(CensusError::Schema { .. })));
    }
}
