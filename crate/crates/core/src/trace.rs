//! Plain-text rendering of solver progress.
//!
//! Master tableaus are printed as a row-zero line `(w, alpha) | c_B b_bar`
//! followed by one line per basis position `label | B^-1 row | rhs`, all
//! cells with three decimals.

use std::fmt::Write as _;

use crate::benders::RoundEvent;
use crate::dw::IterationEvent;
use crate::polytope::IntegerPoint;
use crate::simplex::{BasisLabel, MasterState};

const CELL: usize = 8;

fn num(v: f64) -> String {
    // avoid printing "-0.000"
    let v = if v.abs() < 5e-4 { 0.0 } else { v };
    format!("{:>width$.3}", v, width = CELL)
}

fn vector(v: &[f64]) -> String {
    let cells: Vec<String> = v
        .iter()
        .map(|&x| format!("{:.3}", if x.abs() < 5e-4 { 0.0 } else { x }))
        .collect();
    format!("[{}]", cells.join(", "))
}

pub struct TraceRenderer<'a> {
    key_of: Box<dyn Fn(usize) -> String + 'a>,
}

impl Default for TraceRenderer<'_> {
    fn default() -> Self {
        TraceRenderer {
            key_of: Box::new(|i| (i + 1).to_string()),
        }
    }
}

impl<'a> TraceRenderer<'a> {
    /// `key_of` names a coordinate in point listings, e.g. `"2,4"` for an
    /// auction variable.
    pub fn with_keys<F: Fn(usize) -> String + 'a>(key_of: F) -> Self {
        TraceRenderer {
            key_of: Box::new(key_of),
        }
    }

    pub fn point(&self, p: &IntegerPoint) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .support()
            .map(|(i, v)| {
                if v == 1 {
                    format!("x{}", (self.key_of)(i))
                } else {
                    format!("{}*x{}", v, (self.key_of)(i))
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn tableau(&self, state: &MasterState) -> String {
        let size = state.rhs().len();
        let inner = size * CELL;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<6}|{:^inner$}|{:>CELL$}",
            "",
            "BASIS INVERSE",
            "RHS",
            inner = inner
        );
        let rule = format!(
            "{}+{}+{}\n",
            "-".repeat(6),
            "-".repeat(inner),
            "-".repeat(CELL)
        );
        out.push_str(&rule);
        out.push_str(&format!("{:<6}|", "z"));
        for &d in state.dual_row() {
            out.push_str(&num(d));
        }
        let _ = writeln!(out, "|{}", num(state.tableau_value()));
        out.push_str(&rule);
        for (i, label) in state.basis_labels().iter().enumerate() {
            out.push_str(&format!("{:<6}|", label_text(*label)));
            for &v in state.basis_inverse().row(i) {
                out.push_str(&num(v));
            }
            let _ = writeln!(out, "|{}", num(state.rhs()[i]));
        }
        out
    }

    pub fn initial(&self, state: &MasterState) -> String {
        format!("Initialization Step\n{}", self.tableau(state))
    }

    /// One Dantzig-Wolfe iteration; `state` is the tableau after it.
    pub fn iteration(&self, event: &IterationEvent, state: &MasterState) -> String {
        let m = event.dual_row.len() - 1;
        let mut out = String::new();
        let _ = writeln!(out, "\nIteration {}", event.iteration);
        for &(i, leave) in &event.slack_entries {
            let _ = writeln!(out, "{} re-enters, {} leaves", BasisLabel::Slack(i), leave);
        }
        let _ = writeln!(out, "SUBPROBLEM");
        let _ = writeln!(
            out,
            "w = {}, alpha = {}",
            vector(&event.dual_row[..m]),
            num(event.dual_row[m]).trim()
        );
        let _ = writeln!(out, "c + wA = {}", vector(&event.pricing_cost));
        let name = match event.entering_label {
            Some(BasisLabel::Point(k)) => format!("X{}", k),
            _ => "X".into(),
        };
        let _ = writeln!(out, "oracle point {} = {}", name, self.point(&event.point));
        let _ = writeln!(out, "z - c = {}", num(event.reduced_cost).trim());
        match (&event.entering_column, event.entering_label, event.leaving) {
            (Some(y), Some(enter), Some((_, leave))) => {
                let _ = writeln!(out, "MASTER PROBLEM");
                let _ = writeln!(out, "y = {}", vector(y));
                let _ = writeln!(
                    out,
                    "{} enters, {} leaves",
                    label_text(enter),
                    label_text(leave)
                );
                out.push_str(&self.tableau(state));
                let _ = writeln!(out, "objective = {}", num(event.objective).trim());
            }
            _ => {
                let _ = writeln!(out, "optimal: objective = {}", num(event.objective).trim());
            }
        }
        out
    }

    pub fn benders_round(&self, event: &RoundEvent) -> String {
        format!(
            "round {}: z = {}, w = {}, oracle point = {}, slack = {}{}\n",
            event.round,
            num(event.z).trim(),
            vector(&event.w),
            self.point(&event.point),
            num(event.slack).trim(),
            if event.violated { " (violated)" } else { "" }
        )
    }
}

fn label_text(label: BasisLabel) -> String {
    label.to_string()
}

/// Extracts the numeric cells of a rendered tableau as `(label, row)` pairs,
/// the row-zero line included under label `"z"`.
pub fn parse_tableau(text: &str) -> Vec<(String, Vec<f64>)> {
    text.lines()
        .filter_map(|line| {
            let (label, rest) = line.split_once('|')?;
            let label = label.trim();
            if label.is_empty() {
                return None;
            }
            let nums: Option<Vec<f64>> = rest
                .split(|c: char| c == '|' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().ok())
                .collect();
            Some((label.to_string(), nums?))
        })
        .collect()
}
