//! CSV emitters. Reals are written with 17 significant digits; a separate
//! column carries the rounded value wherever one is published.

use serde::Serialize;

use crate::classical::{GammaBoundTable, RegionConstants};
use crate::error::{Error, Result};
use crate::exceptional::{ExceptionalResult, SearchCell};
use crate::polysearch::TraceRow;

/// `x` with 17 significant digits.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(full).unwrap_or_default()
}

fn write_rows<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct TableRow {
    k: usize,
    b_eps_raw: String,
    b_eps_rounded: String,
    s1: String,
    s2: String,
    s: String,
    method: &'static str,
}

/// One row per k. The scalar bounds `α_ε` and `d_ε(0)` go in a leading row
/// with `k = 0`, in the `b_eps_raw` and `s` columns respectively.
pub fn gamma_table_csv(table: &GammaBoundTable) -> Result<String> {
    let head = TableRow {
        k: 0,
        b_eps_raw: full(table.alpha_eps),
        b_eps_rounded: String::new(),
        s1: String::new(),
        s2: String::new(),
        s: full(table.d_eps0),
        method: "",
    };
    let rows = table.rows.iter().map(|r| TableRow {
        k: r.k,
        b_eps_raw: full(r.b_eps_raw),
        b_eps_rounded: format!("{}", r.b_eps),
        s1: full(r.s1),
        s2: full(r.s2),
        s: full(r.s),
        method: if r.s2 < r.s1 { "II" } else { "I" },
    });
    write_rows(std::iter::once(head).chain(rows))
}

#[derive(Serialize)]
struct ConstantRow {
    name: &'static str,
    value: String,
    rounded: String,
}

pub fn constants_csv(c: &RegionConstants) -> Result<String> {
    let mut rows = vec![
        ConstantRow {
            name: "epsilon",
            value: full(c.epsilon),
            rounded: String::new(),
        },
        ConstantRow {
            name: "M",
            value: full(c.m),
            rounded: String::new(),
        },
        ConstantRow {
            name: "r_opt",
            value: full(c.r_opt),
            rounded: String::new(),
        },
    ];
    for (name, v) in [("c1", c.c1), ("c2", c.c2), ("c3", c.c3), ("c4", c.c4)] {
        rows.push(ConstantRow {
            name,
            value: full(v),
            rounded: String::new(),
        });
    }
    for (i, name) in ["C1", "C2", "C3", "C4"].into_iter().enumerate() {
        rows.push(ConstantRow {
            name,
            value: full(c.ratios[i]),
            rounded: format!("{}", c.published[i]),
        });
    }
    write_rows(rows)
}

#[derive(Serialize)]
struct RegionRow {
    region: &'static str,
    r: String,
    c: String,
    inv_c: String,
    residual: String,
    sign_changes: usize,
}

/// One row per region plus a final `R` row.
pub fn exceptional_csv(res: &ExceptionalResult) -> Result<String> {
    let mut rows: Vec<RegionRow> = [("A", &res.a), ("B", &res.b), ("C", &res.c)]
        .into_iter()
        .map(|(region, o)| RegionRow {
            region,
            r: full(o.r),
            c: full(o.c),
            inv_c: full(o.inv_c),
            residual: full(o.residual),
            sign_changes: o.sign_changes,
        })
        .collect();
    rows.push(RegionRow {
        region: "R",
        r: String::new(),
        c: String::new(),
        inv_c: full(res.big_r),
        residual: String::new(),
        sign_changes: 0,
    });
    write_rows(rows)
}

#[derive(Serialize)]
struct CellRow<'a> {
    d1: String,
    d2: String,
    inv_a: String,
    inv_b: String,
    inv_c: String,
    big_r: String,
    feasible: bool,
    skip_reason: &'a str,
}

pub fn cells_csv(cells: &[SearchCell]) -> Result<String> {
    write_rows(cells.iter().map(|c| CellRow {
        d1: full(c.d1),
        d2: full(c.d2),
        inv_a: opt(c.inv_a),
        inv_b: opt(c.inv_b),
        inv_c: opt(c.inv_c),
        big_r: opt(c.big_r),
        feasible: c.feasible,
        skip_reason: c.skip_reason.as_deref().unwrap_or(""),
    }))
}

#[derive(Serialize)]
struct TraceCsvRow {
    step: usize,
    temperature: String,
    current_value: String,
    best_value: String,
}

pub fn trace_csv(trace: &[TraceRow]) -> Result<String> {
    write_rows(trace.iter().map(|t| TraceCsvRow {
        step: t.step,
        temperature: full(t.temperature),
        current_value: full(t.current_value),
        best_value: full(t.best_value),
    }))
}
