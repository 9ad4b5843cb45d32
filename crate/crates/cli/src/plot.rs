//! Tab-separated scatter data: one row per root plus boundary polylines
//! (symmetry axis, half strip, norm disk) for every degree present.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::report::RunReport;

pub const PLOT_HEADER: &str = "series\tlabel\tre\tim";

const DISK_SEGMENTS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct PlotRow {
    pub series: &'static str,
    pub label: String,
    pub re: f64,
    pub im: f64,
}

pub fn emit_plot_data(reports: &[RunReport]) -> Vec<PlotRow> {
    let mut rows = Vec::new();
    // degree -> largest |Im| seen
    let mut extent: BTreeMap<usize, f64> = BTreeMap::new();
    for r in reports {
        let label = r.display_label();
        for root in &r.roots {
            rows.push(PlotRow {
                series: "root",
                label: label.clone(),
                re: root.re,
                im: root.im,
            });
        }
        if let Some(d) = r.degree {
            let m = r.roots.iter().map(|x| x.im.abs()).fold(1.0, f64::max);
            let e = extent.entry(d).or_insert(m);
            *e = e.max(m);
        }
    }
    for (d, m) in extent {
        let h = 1.1 * m;
        let df = d as f64;
        let mut line = |name: String, re: f64| {
            for im in [-h, h] {
                rows.push(PlotRow {
                    series: "boundary",
                    label: name.clone(),
                    re,
                    im,
                });
            }
        };
        line(format!("symmetry_axis_d{d}"), -0.5);
        line(format!("half_strip_lower_d{d}"), -df / 2.0);
        line(format!("half_strip_upper_d{d}"), df / 2.0 - 1.0);
        let radius = df * (2.0 * df - 1.0) / 2.0;
        for i in 0..=DISK_SEGMENTS {
            let t = std::f64::consts::TAU * i as f64 / DISK_SEGMENTS as f64;
            rows.push(PlotRow {
                series: "boundary",
                label: format!("norm_disk_d{d}"),
                re: -0.5 + radius * t.cos(),
                im: radius * t.sin(),
            });
        }
    }
    rows
}

pub fn write_plot<W: Write>(mut w: W, reports: &[RunReport]) -> io::Result<()> {
    writeln!(w, "{PLOT_HEADER}")?;
    for row in emit_plot_data(reports) {
        writeln!(w, "{}\t{}\t{}\t{}", row.series, row.label, row.re, row.im)?;
    }
    Ok(())
}
