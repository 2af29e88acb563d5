//! Printed theta-block families of q-order one and the A₄ specializations.

use crate::error::{Error, Result};
use crate::jacobi::ThetaBlockSpec;

/// One row: η-power and the linear forms ϑ_{form} in the row's variables.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub root_system: &'static str,
    pub eta_power: i64,
    pub variables: &'static [&'static str],
    pub forms: &'static [&'static str],
}

const ABCD: &[&str] = &["a", "b", "c", "d"];
const A6: &[&str] = &["a1", "a2", "a3", "a4", "a5", "a6"];
const A8: &[&str] = &["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"];
const AB3: &[&str] = &["a1", "b1", "a2", "b2", "a3", "b3"];

pub const TABLE_ONE: &[TableRow] = &[
    TableRow {
        root_system: "A4",
        eta_power: -6,
        variables: ABCD,
        forms: &["a", "b", "c", "d", "a+b", "b+c", "c+d", "a+b+c", "b+c+d", "a+b+c+d"],
    },
    TableRow {
        root_system: "A1+B3",
        eta_power: -6,
        variables: ABCD,
        forms: &["a", "b", "b+c", "b+2c+2d", "b+c+d", "b+c+2d", "c", "c+d", "c+2d", "d"],
    },
    TableRow {
        root_system: "A1+C3",
        eta_power: -6,
        variables: ABCD,
        forms: &["a", "b", "2b+2c+d", "b+c", "b+2c+d", "b+c+d", "c", "2c+d", "c+d", "d"],
    },
    TableRow {
        root_system: "B2+G2",
        eta_power: -6,
        variables: ABCD,
        forms: &["a", "a+b", "a+2b", "b", "c", "3c+d", "3c+2d", "2c+d", "c+d", "d"],
    },
    TableRow {
        root_system: "3A2",
        eta_power: -3,
        variables: AB3,
        forms: &["a1", "a1+b1", "b1", "a2", "a2+b2", "b2", "a3", "a3+b3", "b3"],
    },
    TableRow {
        root_system: "3A1+A3",
        eta_power: -3,
        variables: A6,
        forms: &["a1", "a2", "a3", "a4", "a5", "a6", "a4+a5", "a5+a6", "a4+a5+a6"],
    },
    TableRow {
        root_system: "2A1+A2+B2",
        eta_power: -3,
        variables: A6,
        forms: &["a1", "a2", "a3", "a3+a4", "a4", "a5", "a5+a6", "a5+2a6", "a6"],
    },
    TableRow {
        root_system: "8A1",
        eta_power: 0,
        variables: A8,
        forms: &["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"],
    },
];

/// The two A₄ pull-backs to the A₁⊕B₃ lattice and the A₁⊕B₃ block in the same variables.
pub const THETA_A4_ONE: TableRow = TableRow {
    root_system: "A4",
    eta_power: -6,
    variables: ABCD,
    forms: &["a", "b", "b+c", "b+2c+2d", "a+b", "b+c+2d", "c", "a-c", "c+2d", "a+b+c+2d"],
};

pub const THETA_A4_TWO: TableRow = TableRow {
    root_system: "A4",
    eta_power: -6,
    variables: ABCD,
    forms: &["a-c-d", "b", "b+c", "b+2c+2d", "a+b+c+d", "b+c+2d", "c", "a+d", "c+2d", "a+b+d"],
};

pub const THETA_A1B3_SPECIALIZED: TableRow = TableRow {
    root_system: "A1+B3",
    eta_power: -6,
    variables: ABCD,
    forms: &["2a+b+d", "b", "b+c", "b+2c+2d", "b+c+d", "b+c+2d", "c", "c+d", "c+2d", "d"],
};

/// Parse `2b+2c−d`-style integer linear forms over `vars`.
pub fn parse_form(s: &str, vars: &[&str]) -> Result<Vec<i64>> {
    let bad = || Error::Invalid(format!("cannot parse linear form {s:?}"));
    let mut out = vec![0i64; vars.len()];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in s.chars() {
        if ch == '+' || ch == '-' {
            if !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
            }
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    terms.push((sign, cur));
    for (sign, t) in terms {
        let split = t.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let (coef, var) = t.split_at(split);
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
        let i = vars.iter().position(|v| *v == var).ok_or_else(bad)?;
        out[i] += sign * c;
    }
    Ok(out)
}

impl TableRow {
    pub fn int_forms(&self) -> Vec<Vec<i64>> {
        self.forms
            .iter()
            .map(|f| parse_form(f, self.variables).expect("table data parses"))
            .collect()
    }

    pub fn spec(&self) -> ThetaBlockSpec {
        ThetaBlockSpec::from_int_forms(self.eta_power, &self.int_forms())
    }

    /// The one-variable block with every parameter set to `x`.
    pub fn classical(&self, x: &[i64]) -> ThetaBlockSpec {
        let forms: Vec<Vec<i64>> = self
            .int_forms()
            .iter()
            .map(|f| vec![f.iter().zip(x).map(|(a, b)| a * b).sum()])
            .collect();
        ThetaBlockSpec::from_int_forms(self.eta_power, &forms)
    }
}

pub fn table_row(root_system: &str) -> Option<&'static TableRow> {
    TABLE_ONE.iter().find(|r| r.root_system == root_system)
}
