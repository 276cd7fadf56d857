//! Convergence plot: mean best-so-far fitness against evaluation count,
//! one polyline per algorithm.

use std::fmt::Write as _;

use super::ExperimentResult;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const MAX_POINTS: usize = 500;
const PALETTE: [&str; 8] = [
    "#b22222", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the plot for one problem, or `None` when none of its cells
/// completed.
pub fn render_convergence_svg(result: &ExperimentResult, problem_index: usize) -> Option<String> {
    let series: Vec<(&str, &[f64])> = result
        .cells
        .iter()
        .filter(|c| c.problem_index == problem_index)
        .filter_map(|c| c.mean_trajectory().map(|t| (c.algorithm.as_str(), t)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    if series.is_empty() {
        return None;
    }
    let title = &result.problems[problem_index];
    let len = series.iter().map(|(_, t)| t.len()).max().unwrap_or(1);
    let (mut lo, mut hi) = series
        .iter()
        .flat_map(|(_, t)| t.iter().copied())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if hi - lo < 1e-12 {
        lo -= 0.5;
        hi += 0.5;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |eval: usize| LEFT + plot_w * (eval as f64 - 1.0) / ((len as f64 - 1.0).max(1.0));
    let y_of = |v: f64| TOP + plot_h * (1.0 - (v - lo) / (hi - lo));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(title)
    );

    // axes and ticks
    let _ = writeln!(
        svg,
        r#"<path d="M{LEFT} {TOP} V{:.1} H{:.1}" fill="none" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    );
    for i in 0..=5 {
        let frac = i as f64 / 5.0;
        let eval = 1 + ((len - 1) as f64 * frac).round() as usize;
        let x = x_of(eval);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{eval}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0
        );
        let v = lo + (hi - lo) * frac;
        let y = y_of(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{LEFT}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{v:.2}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">fitness evaluations</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(20 {:.1}) rotate(-90)" text-anchor="middle">mean best fitness</text>"#,
        TOP + plot_h / 2.0
    );

    for (i, (name, traj)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let step = traj.len().div_ceil(MAX_POINTS).max(1);
        let mut points = String::new();
        let mut idx: Vec<usize> = (0..traj.len()).step_by(step).collect();
        if idx.last() != Some(&(traj.len() - 1)) {
            idx.push(traj.len() - 1);
        }
        for k in idx {
            let _ = write!(points, "{:.1},{:.1} ", x_of(k + 1), y_of(traj[k]));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        );
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="3"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(name)
        );
    }
    svg.push_str("</svg>\n");
    Some(svg)
}
