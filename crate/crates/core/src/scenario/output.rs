//! CSV and gnuplot artifacts.
//!
//! Run CSV: `t,consensus_db,node0_local_db,...,node{N-1}_local_db`.
//! Comparison CSV: `t,<arm label>,...` with one consensus column per arm.
//! Numbers use 9 significant digits (C `%.9g`), lines end with LF.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::metrics::MsdTrace;
use crate::scenario::config::ScenarioConfig;
use crate::scenario::run::run_simulation;

/// Formats like C's `%.9g`.
pub fn format_sig9(v: f64) -> String {
    const PRECISION: i32 = 9;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= PRECISION {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn trace_csv(trace: &MsdTrace) -> String {
    let mut out = String::from("t,consensus_db");
    for i in 0..trace.nodes() {
        let _ = write!(out, ",node{i}_local_db");
    }
    out.push('\n');
    for t in 0..trace.horizon {
        let _ = write!(out, "{},{}", t + 1, format_sig9(trace.consensus_msd_db[t]));
        for series in &trace.local_msd_db {
            let _ = write!(out, ",{}", format_sig9(series[t]));
        }
        out.push('\n');
    }
    out
}

fn gnuplot_header(title: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set title '{title}'\n\
         set xlabel 't'\n\
         set ylabel 'MSD (dB)'\n\
         set grid\n\
         set key outside right\n"
    )
}

/// Gnuplot script plotting the consensus curve and every local curve.
pub fn trace_plot_script(csv_name: &str, trace: &MsdTrace, title: &str) -> String {
    let mut s = gnuplot_header(title);
    let _ = write!(
        s,
        "plot '{csv_name}' using 1:2 with lines lw 2 title 'consensus'"
    );
    for i in 0..trace.nodes() {
        let _ = write!(
            s,
            ", \\\n     '' using 1:{} with lines lw 0.5 lc rgb '#b0b0b0' notitle",
            i + 3
        );
    }
    s.push('\n');
    s
}

/// Result of [`run_scenario`].
#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub trace: MsdTrace,
    pub csv_path: PathBuf,
    pub plot_path: PathBuf,
}

/// Runs the scenario and writes `<name>.csv` and `<name>.gp` into `out_dir`.
pub fn run_scenario(cfg: &ScenarioConfig, out_dir: &Path, name: &str) -> Result<ScenarioOutput> {
    let trace = run_simulation(cfg)?;
    fs::create_dir_all(out_dir)?;
    let csv_name = format!("{name}.csv");
    let csv_path = out_dir.join(&csv_name);
    let plot_path = out_dir.join(format!("{name}.gp"));
    fs::write(&csv_path, trace_csv(&trace))?;
    let title = format!("{name} ({}, {} reps)", cfg.strategy, cfg.reps);
    fs::write(&plot_path, trace_plot_script(&csv_name, &trace, &title))?;
    Ok(ScenarioOutput {
        trace,
        csv_path,
        plot_path,
    })
}

/// Consensus curves of several arms over a shared horizon.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub labels: Vec<String>,
    pub traces: Vec<MsdTrace>,
}

impl Comparison {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        let horizon = self.traces.first().map_or(0, |t| t.horizon);
        for t in 0..horizon {
            let _ = write!(out, "{}", t + 1);
            for tr in &self.traces {
                let _ = write!(out, ",{}", format_sig9(tr.consensus_msd_db[t]));
            }
            out.push('\n');
        }
        out
    }

    pub fn plot_script(&self, csv_name: &str) -> String {
        let mut s = gnuplot_header("consensus MSD by arm");
        for (k, label) in self.labels.iter().enumerate() {
            let src = if k == 0 {
                format!("'{csv_name}'")
            } else {
                "''".to_string()
            };
            let sep = if k == 0 { "plot " } else { ", \\\n     " };
            let _ = write!(
                s,
                "{sep}{src} using 1:{} with lines lw 2 title '{label}'",
                k + 2
            );
        }
        s.push('\n');
        s
    }

    pub fn write(&self, out_dir: &Path, name: &str) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(out_dir)?;
        let csv_name = format!("{name}.csv");
        let csv_path = out_dir.join(&csv_name);
        let plot_path = out_dir.join(format!("{name}.gp"));
        fs::write(&csv_path, self.to_csv())?;
        fs::write(&plot_path, self.plot_script(&csv_name))?;
        Ok((csv_path, plot_path))
    }
}

/// Keeps `[A-Za-z0-9_.-]`, replacing anything else with `_`.
fn column_label(raw: &str) -> String {
    raw.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "_.-".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Runs every arm and aligns their consensus curves. All arms must agree on
/// node count, vector length and horizon.
pub fn compare_arms(arms: &[(String, ScenarioConfig)]) -> Result<Comparison> {
    let (_, first) = arms
        .first()
        .ok_or_else(|| Error::arg("compare needs at least one arm"))?;
    for (label, cfg) in arms {
        if cfg.n_nodes != first.n_nodes
            || cfg.vec_len != first.vec_len
            || cfg.horizon != first.horizon
        {
            return Err(Error::arg(format!(
                "arm `{label}` has shape (N={}, L={}, T={}) but the first arm has (N={}, L={}, T={})",
                cfg.n_nodes, cfg.vec_len, cfg.horizon, first.n_nodes, first.vec_len, first.horizon
            )));
        }
    }
    let traces = arms
        .iter()
        .map(|(_, cfg)| run_simulation(cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut labels: Vec<String> = Vec::with_capacity(arms.len());
    for (label, _) in arms {
        let base = column_label(label);
        let mut candidate = base.clone();
        let mut k = 2;
        while labels.contains(&candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        labels.push(candidate);
    }
    Ok(Comparison { labels, traces })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_matches_printf() {
        // Expected strings are what C printf("%.9g") prints.
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-20.0, "-20"),
            (-25.301234567891, "-25.3012346"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-180.0, "-180"),
            (0.1 + 0.2, "0.3"),
            (9.99999999951, "10"),
            (-3.0103e-10, "-3.0103e-10"),
        ];
        for (v, s) in cases {
            assert_eq!(format_sig9(v), s, "value {v}");
        }
        assert_eq!(format_sig9(f64::NAN), "nan");
    }

    #[test]
    fn labels_are_sanitized_and_unique() {
        assert_eq!(column_label("a b,c"), "a_b_c");
    }

    fn tiny_trace() -> MsdTrace {
        MsdTrace {
            horizon: 2,
            local_msd_db: vec![vec![-1.0, -2.0], vec![-3.0, -4.5]],
            consensus_msd_db: vec![-10.0, -20.25],
            reps: 1,
            floored: 0,
        }
    }

    #[test]
    fn csv_schema() {
        let csv = trace_csv(&tiny_trace());
        assert_eq!(
            csv,
            "t,consensus_db,node0_local_db,node1_local_db\n1,-10,-1,-3\n2,-20.25,-2,-4.5\n"
        );
    }

    #[test]
    fn plot_scripts_reference_csv() {
        let s = trace_plot_script("x.csv", &tiny_trace(), "demo");
        assert!(s.contains("plot 'x.csv' using 1:2"));
        assert!(s.contains("using 1:4"));
        let cmp = Comparison {
            labels: vec!["a".into(), "b".into()],
            traces: vec![tiny_trace(), tiny_trace()],
        };
        let p = cmp.plot_script("cmp.csv");
        assert!(p.contains("'cmp.csv' using 1:2") && p.contains("using 1:3"));
        assert_eq!(cmp.to_csv(), "t,a,b\n1,-10,-10\n2,-20.25,-20.25\n");
    }

    #[test]
    fn compare_rejects_mismatched_shapes() {
        let a = ScenarioConfig::default();
        let b = ScenarioConfig {
            vec_len: 32,
            ..ScenarioConfig::default()
        };
        assert!(matches!(
            compare_arms(&[("a".into(), a), ("b".into(), b)]),
            Err(Error::Argument(_))
        ));
        assert!(compare_arms(&[]).is_err());
    }
}
