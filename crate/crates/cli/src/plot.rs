//! Log-log scatter plots with fitted power laws, written as plain SVG.
//!
//! Column 0 is the abscissa; every other column whose values are all
//! positive becomes a series with its own least-squares line and slope
//! label. Output depends only on the CSV text.

use std::fmt::Write;

use cusp_core::{fit_loglog, ScalingFit};

const W: f64 = 640.0;
const H: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// A plotted series and its fit.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub fit: ScalingFit,
}

fn parse(csv_text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = csv_text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or("empty CSV")?
        .split(',')
        .map(|s| s.trim().to_owned())
        .collect();
    if header.len() < 2 {
        return Err("CSV needs at least two columns".into());
    }
    let mut rows = Vec::new();
    for (i, l) in lines.enumerate() {
        let row: Vec<f64> = l
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("row {}: bad number `{}`", i + 1, s.trim()))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != header.len() {
            return Err(format!(
                "row {}: {} fields, header has {}",
                i + 1,
                row.len(),
                header.len()
            ));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("CSV has no data rows".into());
    }
    Ok((header, rows))
}

/// Series of a CSV table with their fits.
pub fn series(csv_text: &str) -> Result<Vec<Series>, String> {
    let (header, rows) = parse(csv_text)?;
    let mut out = Vec::new();
    for c in 1..header.len() {
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[c])).collect();
        if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
            continue;
        }
        let fit = fit_loglog(&points, None).map_err(|e| format!("{}: {e}", header[c]))?;
        out.push(Series {
            name: header[c].clone(),
            points,
            fit,
        });
    }
    if out.is_empty() {
        return Err("no positive series to plot".into());
    }
    Ok(out)
}

fn decades(lo: f64, hi: f64) -> (i32, i32) {
    let a = lo.log10().floor() as i32;
    let b = hi.log10().ceil() as i32;
    (a, if b > a { b } else { a + 1 })
}

/// SVG text of the log-log plot.
pub fn render_svg(csv_text: &str, title: &str) -> Result<String, String> {
    let (header, _) = parse(csv_text)?;
    let all = series(csv_text)?;
    let xs = all.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = all.iter().flat_map(|s| s.points.iter().map(|p| p.1));
    let (x0, x1) = decades(
        xs.clone().fold(f64::INFINITY, f64::min),
        xs.fold(0.0, f64::max),
    );
    let (y0, y1) = decades(
        ys.clone().fold(f64::INFINITY, f64::min),
        ys.fold(0.0, f64::max),
    );
    let px = |x: f64| LEFT + (x.log10() - x0 as f64) / (x1 - x0) as f64 * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y.log10() - y0 as f64) / (y1 - y0) as f64 * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    );
    for k in x0..=x1 {
        let x = px(10f64.powi(k));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
            H - BOTTOM
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">1e{k}</text>"#,
            H - BOTTOM + 16.0
        );
    }
    for k in y0..=y1 {
        let y = py(10f64.powi(k));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            W - RIGHT
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">1e{k}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 14.0,
        escape(&header[0])
    );
    for (i, ser) in all.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let (a, b) = ser.fit.window;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.5"/>"#,
            px(a),
            py(ser.fit.predict(a)),
            px(b),
            py(ser.fit.predict(b))
        );
        for &(x, y) in &ser.points {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{color}"/>"#,
                px(x),
                py(y)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" fill="{color}">{} slope = {:.4}</text>"#,
            LEFT + 10.0,
            TOP + 18.0 + 16.0 * i as f64,
            escape(&ser.name),
            ser.fit.slope
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_label_matches_fit() {
        let csv = "r,mismatch\n1,1\n10,0.1\n100,0.01\n1000,0.001\n";
        let ser = series(csv).unwrap();
        assert!((ser[0].fit.slope + 1.0).abs() < 1e-12);
        let svg = render_svg(csv, "overlap").unwrap();
        assert!(svg.contains(&format!("mismatch slope = {:.4}", ser[0].fit.slope)));
        assert_eq!(svg, render_svg(csv, "overlap").unwrap());
    }

    #[test]
    fn rejects_unplottable_tables() {
        assert!(render_svg("", "x").is_err());
        assert!(render_svg("r,mismatch\n", "x").is_err());
        assert!(render_svg("r,v\n1,-1\n2,-2\n3,-3\n4,-4\n", "x").is_err());
        assert!(render_svg("r,v\n1,2,3\n", "x").is_err());
    }

    #[test]
    fn negative_columns_are_skipped() {
        let csv = "r,stress,local_slope\n1,1,-0.5\n4,0.5,-0.5\n16,0.25,-0.5\n64,0.125,-0.5\n";
        let ser = series(csv).unwrap();
        assert_eq!(ser.len(), 1);
        assert_eq!(ser[0].name, "stress");
    }
}
