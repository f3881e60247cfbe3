use clap::ValueEnum;

use crate::{CliError, OutputRecord, Payload};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn render(rec: &OutputRecord, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(rec)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Internal(e.to_string())),
        Format::Csv => csv(rec),
        Format::Table => Ok(table(rec)),
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

/// Header and rows shared by the CSV and table renderings.
fn grid(rec: &OutputRecord) -> (Vec<&'static str>, Vec<Vec<String>>) {
    match &rec.payload {
        Payload::Alexander { results, .. } => (
            vec!["exponent", "coefficient"],
            results
                .coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| vec![(results.min_exp + i as i64).to_string(), c.to_string()])
                .collect(),
        ),
        Payload::Vk { results, .. } => {
            let both = results.oracle_agrees.is_some();
            let header = if both {
                vec!["k", "V", "V_tensor"]
            } else {
                vec!["k", "V"]
            };
            let rows = results
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.k.to_string(), r.v.to_string()];
                    if both {
                        row.push(opt(&r.v_tensor));
                    }
                    row
                })
                .collect();
            (header, rows)
        }
        Payload::Dinv { results, .. } => (
            vec!["label", "d", "spin"],
            results
                .rows
                .iter()
                .map(|r| vec![r.label.to_string(), r.d.to_string(), r.spin.to_string()])
                .collect(),
        ),
        Payload::Obstruct { results, .. } => (
            vec![
                "n", "V0", "V1", "dbar_0", "dbar_3mu", "dbar_6mu", "d_spin", "verdict",
            ],
            results
                .iter()
                .map(|r| {
                    let verdict = if r.verdict_trivial_alex {
                        "obstructed"
                    } else {
                        "unobstructed"
                    };
                    vec![
                        r.n.to_string(),
                        r.v0.to_string(),
                        r.v1.to_string(),
                        opt(&r.dbar(0)),
                        opt(&r.dbar(3)),
                        opt(&r.dbar(6)),
                        r.d_spin.to_string(),
                        verdict.to_string(),
                    ]
                })
                .collect(),
        ),
    }
}

fn csv(rec: &OutputRecord) -> Result<String, CliError> {
    let (header, rows) = grid(rec);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(&header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn preamble(rec: &OutputRecord) -> Vec<String> {
    match &rec.payload {
        Payload::Alexander { inputs, results } => {
            let mut lines = vec![
                format!("knot: {}", inputs.canonical),
                format!("alexander: {}", results.polynomial),
            ];
            lines.push(match (&results.staircase, &results.not_lspace) {
                (Some(s), _) => format!("staircase: {s}"),
                (None, why) => format!("staircase: none ({})", opt(why)),
            });
            lines
        }
        Payload::Vk { inputs, results } => {
            let mut lines = vec![format!("knot: {}", inputs.expr.canonical)];
            if let Some(s) = &results.staircase {
                lines.push(format!("representative staircase: {s}"));
            }
            if let Some(agree) = results.oracle_agrees {
                lines.push(format!(
                    "oracle: {}",
                    if agree { "agree" } else { "MISMATCH" }
                ));
            }
            lines
        }
        Payload::Dinv { inputs, results } => {
            let knot = inputs
                .expr
                .as_ref()
                .map_or("U".to_string(), |e| e.canonical.clone());
            vec![
                format!("manifold: S^3_{{{}/{}}}({knot})", inputs.p, inputs.q),
                format!(
                    "spin label: {}",
                    results.spin_label.map_or("none".into(), |s| s.to_string())
                ),
            ]
        }
        Payload::Obstruct { .. } => Vec::new(),
    }
}

fn table(rec: &OutputRecord) -> String {
    let (header, rows) = grid(rec);
    let header: Vec<String> = header.into_iter().map(String::from).collect();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = format!("# {} {}\n", rec.tool, rec.tool_version);
    for l in preamble(rec) {
        out += &l;
        out.push('\n');
    }
    out += &line(&header);
    for row in &rows {
        out += &line(row);
    }
    out
}
