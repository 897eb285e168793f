//! Report generation: a deterministic CSV of the power table and one SVG
//! per (model, summary) plotting rejection rate against the range bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;

use super::runner::{PowerRow, PowerTable};

pub const POWER_CSV_HEADER: &str =
    "model,window_area,summary,statistic,ordering,r_upper,m,rejection_rate,replications,stderr";

/// Render the power table as CSV (rows in their sorted order).
pub fn power_csv(table: &PowerTable) -> String {
    let mut out = String::from(POWER_CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.model,
            r.window_area,
            r.summary,
            r.statistic,
            r.ordering,
            r.r_upper,
            r.m,
            r.rejection_rate,
            r.replications,
            r.stderr
        )
        .unwrap();
    }
    out
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

/// Power-versus-range curves for one (model, summary) cell: one polyline
/// per (statistic, ordering, m, window).
pub fn power_svg(model: &str, summary: &str, rows: &[&PowerRow]) -> String {
    let r_max = rows.iter().map(|r| r.r_upper).fold(0.0f64, f64::max).max(1e-9);
    let x = |r: f64| MARGIN_LEFT + r / r_max * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);
    let y = |rate: f64| HEIGHT - MARGIN_BOTTOM - rate * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);

    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        let key = format!("{} {} m={} W={}", r.statistic, r.ordering, r.m, r.window_area);
        series.entry(key).or_default().push((r.r_upper, r.rejection_rate));
    }
    for points in series.values_mut() {
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )
    .unwrap();
    writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>").unwrap();
    writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">rejection rate vs r_max: {} / {}</text>",
        MARGIN_LEFT, model, summary
    )
    .unwrap();
    // Axes.
    writeln!(
        svg,
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
        MARGIN_LEFT,
        y(0.0),
        x(r_max),
        y(0.0)
    )
    .unwrap();
    writeln!(
        svg,
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
        MARGIN_LEFT,
        y(0.0),
        MARGIN_LEFT,
        y(1.0)
    )
    .unwrap();
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{:.2}</text>",
            MARGIN_LEFT - 6.0,
            y(tick) + 3.0,
            tick
        )
        .unwrap();
        writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#dddddd\"/>",
            MARGIN_LEFT,
            y(tick),
            x(r_max),
            y(tick)
        )
        .unwrap();
    }
    for k in 0..=4 {
        let r = r_max * k as f64 / 4.0;
        writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{:.3}</text>",
            x(r),
            HEIGHT - MARGIN_BOTTOM + 16.0,
            r
        )
        .unwrap();
    }
    for (i, (label, points)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = points
            .iter()
            .map(|&(r, rate)| format!("{:.2},{:.2}", x(r), y(rate)))
            .collect();
        writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            path.join(" "),
            color
        )
        .unwrap();
        for &(r, rate) in points {
            writeln!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{}\"/>",
                x(r),
                y(rate),
                color
            )
            .unwrap();
        }
        writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" fill=\"{}\">{}</text>",
            WIDTH - MARGIN_RIGHT + 10.0,
            MARGIN_TOP + 14.0 * i as f64 + 10.0,
            color,
            label
        )
        .unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    svg
}

/// Write `power.csv` plus one SVG per (model, summary) into `out_dir`,
/// returning the written paths. Outputs are byte-deterministic functions of
/// the table.
pub fn emit_report(table: &PowerTable, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let csv_path = out_dir.join("power.csv");
    std::fs::write(&csv_path, power_csv(table))?;
    written.push(csv_path);

    let mut cells: BTreeMap<(String, String), Vec<&PowerRow>> = BTreeMap::new();
    for row in &table.rows {
        cells
            .entry((row.model.clone(), row.summary.clone()))
            .or_default()
            .push(row);
    }
    for ((model, summary), rows) in &cells {
        let path = out_dir.join(format!("power_{}_{}.svg", model, summary.replace('+', "-")));
        std::fs::write(&path, power_svg(model, summary, rows))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_table() -> PowerTable {
        let mut rows = Vec::new();
        for (stat, ord) in [("dclf", "larger"), ("fun", "erl")] {
            for r_upper in [0.05, 0.1, 0.25] {
                rows.push(PowerRow {
                    model: "matclu".into(),
                    window_area: 6.0,
                    summary: "l".into(),
                    statistic: stat.into(),
                    ordering: ord.into(),
                    r_upper,
                    m: 99,
                    rejection_rate: r_upper * 2.0,
                    replications: 100,
                    stderr: 0.03,
                });
            }
        }
        PowerTable { rows }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let csv = power_csv(&toy_table());
        assert!(csv.starts_with(POWER_CSV_HEADER));
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.contains("matclu,6,l,dclf,larger,0.05,99,0.1,100,0.03"));
    }

    #[test]
    fn empty_table_gives_header_only_csv() {
        let csv = power_csv(&PowerTable::default());
        assert_eq!(csv, format!("{POWER_CSV_HEADER}\n"));
    }

    #[test]
    fn report_files_are_deterministic() {
        let table = toy_table();
        let dir1 = std::env::temp_dir().join("spatgof_report_test_1");
        let dir2 = std::env::temp_dir().join("spatgof_report_test_2");
        let files1 = emit_report(&table, &dir1).unwrap();
        let files2 = emit_report(&table, &dir2).unwrap();
        assert_eq!(files1.len(), 2);
        for (a, b) in files1.iter().zip(&files2) {
            assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
        }
        let svg = std::fs::read_to_string(&files1[1]).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        std::fs::remove_dir_all(dir1).ok();
        std::fs::remove_dir_all(dir2).ok();
    }
}
