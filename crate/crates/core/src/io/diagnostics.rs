//! Diagnostics tables as CSV and JSON.

use crate::analysis::DiagnosticsRecord;
use crate::timestep::Trajectory;

pub const CSV_HEADER: &str = "t,mass,l2,hamiltonian,hs_half,tail_fraction,sup_norm";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn records_csv(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let ham = r.hamiltonian.map(num).unwrap_or_default();
        let row = [
            num(r.t),
            num(r.mass),
            num(r.l2),
            ham,
            num(r.sobolev_half),
            num(r.spectral_tail_fraction),
            num(r.sup_norm),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// One row per recorded snapshot, 17 significant digits.
pub fn diagnostics_csv(traj: &Trajectory) -> String {
    records_csv(&traj.diagnostics)
}

pub fn diagnostics_json(traj: &Trajectory) -> String {
    serde_json::to_string_pretty(&traj.diagnostics).expect("records are serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::EquationSpec;
    use crate::spectral::{make_grid, Field};
    use crate::timestep::{run, IntegratorConfig};

    #[test]
    fn empty_trajectory_is_header_only() {
        assert_eq!(records_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn zero_solution_rows() {
        let g = make_grid(32, 10.0).unwrap();
        let traj = run(
            &Field::zeros(g),
            &EquationSpec::Bo,
            &IntegratorConfig::new(0.1, 0.3),
        )
        .unwrap();
        let csv = diagnostics_csv(&traj);
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), traj.diagnostics.len());
        let last: Vec<f64> = rows
            .last()
            .unwrap()
            .split(',')
            .map(|c| c.parse().unwrap())
            .collect();
        assert_eq!(last[0], 0.3);
        assert!(last[1..].iter().all(|v| *v == 0.0));
    }

    #[test]
    fn hamiltonian_column_empty_when_absent() {
        let g = make_grid(32, 10.0).unwrap();
        let traj = run(
            &Field::zeros(g),
            &EquationSpec::Kdv,
            &IntegratorConfig::new(0.1, 0.1),
        )
        .unwrap();
        let csv = diagnostics_csv(&traj);
        let row = csv.lines().nth(1).unwrap();
        assert_eq!(row.split(',').nth(3), Some(""));
        assert_eq!(row.split(',').count(), 7);
    }

    #[test]
    fn values_round_trip_through_text() {
        let r = DiagnosticsRecord {
            t: 0.1,
            mass: std::f64::consts::PI,
            l2: 1.0 / 3.0,
            hamiltonian: Some(-2.0 / 7.0),
            sobolev_half: 1e-300,
            spectral_tail_fraction: 5e-17,
            sup_norm: 12345.678,
        };
        let csv = records_csv(std::slice::from_ref(&r));
        let cols: Vec<f64> = csv
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|c| c.parse().unwrap())
            .collect();
        assert_eq!(
            cols,
            vec![
                r.t,
                r.mass,
                r.l2,
                -2.0 / 7.0,
                r.sobolev_half,
                r.spectral_tail_fraction,
                r.sup_norm
            ]
        );
        let back: Vec<DiagnosticsRecord> =
            serde_json::from_str(&serde_json::to_string(&vec![r.clone()]).unwrap()).unwrap();
        assert_eq!(back, vec![r]);
    }
}
