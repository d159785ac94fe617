//! Density report: one row per grid point with every counting function, the
//! assembled self-dual upper bound and ratios against the abelian count.

use std::fmt::Write as _;

use serde::Serialize;

use super::{
    ab_record, absd_record, phi_h, psi_a5, theta1_bound, theta_s4_monomial, CensusError, CensusRecord, FieldTable,
    IndexPolicy, Method, MonomialGroup, PairKernel, WildCaps,
};

pub const REPORT_COLUMNS: &[&str] = &[
    "x",
    "ab",
    "absd",
    "theta1",
    "ThetaS4",
    "ThetaS4_div3",
    "PsiA5",
    "PhiA4",
    "PhiS4",
    "one_plus_two",
    "sd_upper",
    "ratio_absd_ab",
    "ratio_sd_ab",
    "ab_method",
    "absd_method",
    "theta1_method",
    "ThetaS4_method",
    "PsiA5_method",
    "PhiA4_method",
    "PhiS4_method",
    "sd_upper_method",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Cell {
    Value { record: CensusRecord },
    CoverageGap { method: Method, partial: CensusRecord, detail: String },
    Error { detail: String },
}

impl Cell {
    fn of(r: Result<CensusRecord, CensusError>, method: Method) -> Cell {
        match r {
            Ok(record) => Cell::Value { record },
            Err(e) => match &e {
                CensusError::CoverageGap { partial, .. } => {
                    Cell::CoverageGap { method, partial: (**partial).clone(), detail: e.to_string() }
                }
                _ => Cell::Error { detail: e.to_string() },
            },
        }
    }

    pub fn count(&self) -> Option<u64> {
        match self {
            Cell::Value { record } => Some(record.count),
            _ => None,
        }
    }

    pub fn method(&self) -> Option<Method> {
        match self {
            Cell::Value { record } => Some(record.method),
            Cell::CoverageGap { method, .. } => Some(*method),
            Cell::Error { .. } => None,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Value { record } => record.count.to_string(),
            Cell::CoverageGap { .. } => "coverage-gap".to_string(),
            Cell::Error { .. } => "error".to_string(),
        }
    }

    fn method_text(&self) -> &'static str {
        self.method().map_or("none", |m| m.as_str())
    }

    fn double_entry(&self) -> (u64, u64) {
        match self {
            Cell::Value { record } | Cell::CoverageGap { partial: record, .. } => {
                (record.double_entry_checked, record.double_entry_mismatches)
            }
            Cell::Error { .. } => (0, 0),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub x: u64,
    pub ab: Cell,
    pub absd: Cell,
    pub theta1: Cell,
    pub theta_s4: Cell,
    pub psi_a5: Cell,
    pub phi_a4: Cell,
    pub phi_s4: Cell,
}

impl ReportRow {
    fn components(&self) -> [&Cell; 5] {
        [&self.theta1, &self.theta_s4, &self.psi_a5, &self.phi_a4, &self.phi_s4]
    }

    /// absd plus every irreducible-component bound, when all are available.
    pub fn sd_upper(&self) -> Option<u64> {
        let mut total = self.absd.count()?;
        for c in self.components() {
            total += c.count()?;
        }
        Some(total)
    }

    fn sd_method(&self) -> Method {
        if self.components().iter().any(|c| c.method() == Some(Method::HeuristicComplete)) {
            Method::HeuristicComplete
        } else {
            Method::UpperBound
        }
    }

    pub fn cells(&self) -> [(&'static str, &Cell); 7] {
        [
            ("ab", &self.ab),
            ("absd", &self.absd),
            ("theta1", &self.theta1),
            ("ThetaS4", &self.theta_s4),
            ("PsiA5", &self.psi_a5),
            ("PhiA4", &self.phi_a4),
            ("PhiS4", &self.phi_s4),
        ]
    }
}

pub struct ReportInputs<'a> {
    pub tables: &'a FieldTable,
    pub kernel: &'a PairKernel,
    pub caps: WildCaps,
    pub policy: IndexPolicy,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub rows: Vec<ReportRow>,
}

/// n/d to six decimals, truncated.
fn ratio(n: u64, d: u64) -> String {
    if d == 0 {
        return "nan".to_string();
    }
    let scaled = n as u128 * 1_000_000 / d as u128;
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

pub fn density_report(grid: &[u64], inputs: &ReportInputs) -> Result<DensityReport, CensusError> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CensusError::BadGrid);
    }
    let rows = grid
        .iter()
        .map(|&x| ReportRow {
            x,
            ab: Cell::of(Ok(ab_record(x)), Method::Exact),
            absd: Cell::of(Ok(absd_record(x)), Method::Exact),
            theta1: Cell::of(theta1_bound(x, inputs.tables, &inputs.caps), Method::UpperBound),
            theta_s4: Cell::of(theta_s4_monomial(x, inputs.kernel), Method::HeuristicComplete),
            psi_a5: Cell::of(psi_a5(x, inputs.tables, &inputs.caps, inputs.policy), Method::UpperBound),
            phi_a4: Cell::of(phi_h(x, inputs.kernel, MonomialGroup::A4), Method::HeuristicComplete),
            phi_s4: Cell::of(phi_h(x, inputs.kernel, MonomialGroup::S4), Method::HeuristicComplete),
        })
        .collect();
    Ok(DensityReport { rows })
}

impl DensityReport {
    pub fn to_csv(&self) -> String {
        let mut s = REPORT_COLUMNS.join(",");
        s.push('\n');
        for r in &self.rows {
            let ab = r.ab.count().unwrap_or(0);
            let sd = r.sd_upper();
            let fields: Vec<String> = vec![
                r.x.to_string(),
                r.ab.text(),
                r.absd.text(),
                r.theta1.text(),
                r.theta_s4.text(),
                r.theta_s4.count().map_or_else(|| r.theta_s4.text(), |c| c.div_ceil(3).to_string()),
                r.psi_a5.text(),
                r.phi_a4.text(),
                r.phi_s4.text(),
                "out-of-scope".to_string(),
                sd.map_or("incomplete".to_string(), |v| v.to_string()),
                r.absd.count().map_or("nan".to_string(), |v| ratio(v, ab)),
                sd.map_or("nan".to_string(), |v| ratio(v, ab)),
                r.ab.method_text().to_string(),
                r.absd.method_text().to_string(),
                r.theta1.method_text().to_string(),
                r.theta_s4.method_text().to_string(),
                r.psi_a5.method_text().to_string(),
                r.phi_a4.method_text().to_string(),
                r.phi_s4.method_text().to_string(),
                r.sd_method().as_str().to_string(),
            ];
            let _ = writeln!(s, "{}", fields.join(","));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// (pairs rechecked, mismatches) summed over every cell.
    pub fn double_entry(&self) -> (u64, u64) {
        let mut out = (0, 0);
        for r in &self.rows {
            for (_, c) in r.cells() {
                let (a, b) = c.double_entry();
                out.0 += a;
                out.1 += b;
            }
        }
        out
    }

    /// Columns whose available values decrease somewhere along the grid.
    pub fn non_monotone(&self) -> Vec<&'static str> {
        let mut bad = Vec::new();
        for (i, (name, _)) in self.rows[0].cells().iter().enumerate() {
            let vals: Vec<u64> = self.rows.iter().filter_map(|r| r.cells()[i].1.count()).collect();
            if vals.windows(2).any(|w| w[0] > w[1]) {
                bad.push(*name);
            }
        }
        bad
    }

    /// Worst exit status among the cells: 2 if any coverage gap, else 0.
    pub fn exit_code(&self) -> i32 {
        let gap = self.rows.iter().any(|r| r.cells().iter().any(|(_, c)| matches!(c, Cell::CoverageGap { .. })));
        if gap {
            2
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::PairKernelOptions;
    use crate::cubicenum::enumerate_cubic_fields;

    #[test]
    fn small_report() {
        let cubics = enumerate_cubic_fields(100);
        let kernel = PairKernel::build(&cubics, 100, 100, &PairKernelOptions::default()).unwrap();
        let tables = FieldTable::new();
        let inputs = ReportInputs { tables: &tables, kernel: &kernel, caps: WildCaps::default(), policy: IndexPolicy::Skip };
        let rep = density_report(&[10, 100], &inputs).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.non_monotone().is_empty());
        assert_eq!(rep.double_entry().1, 0);
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("10,"));
        assert_eq!(csv, density_report(&[10, 100], &inputs).unwrap().to_csv());
        assert_eq!(rep.exit_code(), 2);
        assert!(matches!(density_report(&[100, 10], &inputs), Err(CensusError::BadGrid)));
        assert_eq!(ratio(1, 3), "0.333333");
    }
}
