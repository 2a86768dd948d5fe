//! Named parameter sets for the figure data.

use std::f64::consts::{E, PI, SQRT_2};

use qudit_extremal::inequalities::{sigma_x_default_grid, SurfaceGrid};

use crate::config::{Model, RunConfig, Series, Surface, SurfaceKind, Sweep};
use crate::run::Command;
use crate::CliError;

pub const NAMES: [&str; 7] = ["fig1", "fig2a", "fig2b", "fig2c", "fig2d", "fig3", "fig4"];

/// Sweep range for the BEC figures: 200 points over `[-2, 2]`.
const BEC_RANGE: (f64, f64) = (-2.0, 2.0);
const BEC_POINTS: usize = 200;

fn bec_sweep(variable: &str, a: f64, b: f64, c: f64, mixed: [f64; 2]) -> RunConfig {
    let (start, stop) = BEC_RANGE;
    RunConfig {
        model: Some(Model::Bec { a, b, c, j: 1.0 }),
        series: Some(vec![
            Series {
                name: "mixed".into(),
                constants: mixed.to_vec(),
            },
            Series {
                name: "pure".into(),
                constants: vec![0.0, 0.0],
            },
        ]),
        sweep: Some(Sweep {
            variable: variable.into(),
            start,
            stop,
            step: (stop - start) / (BEC_POINTS - 1) as f64,
        }),
        ..RunConfig::default()
    }
}

fn surface(kind: SurfaceKind, g: SurfaceGrid) -> RunConfig {
    RunConfig {
        surface: Some(Surface {
            kind,
            h_min: g.h_min,
            h_max: g.h_max,
            h_points: g.h_points,
            delta_min: g.delta_min,
            delta_max: g.delta_max,
            delta_points: g.delta_points,
        }),
        ..RunConfig::default()
    }
}

pub fn preset(name: &str) -> Result<(Command, RunConfig), CliError> {
    const MIXED: [f64; 2] = [29.0 / 100.0, 1.0 / 50.0];
    Ok(match name {
        "fig1" => (
            Command::Sweep,
            RunConfig {
                model: Some(Model::Qubit {
                    h0: 1.0,
                    h1: SQRT_2,
                    h2: E,
                    h3: PI,
                }),
                constants: Some(vec![0.0]),
                sweep: Some(Sweep {
                    variable: "c2".into(),
                    start: 0.0,
                    stop: 0.25,
                    step: 0.005,
                }),
                ..RunConfig::default()
            },
        ),
        "fig2a" => (Command::Sweep, bec_sweep("a", 0.0, 0.5, -1.0, MIXED)),
        "fig2b" => (Command::Sweep, bec_sweep("b", 0.5, 0.0, 0.5, MIXED)),
        "fig2c" => (Command::Sweep, bec_sweep("c", 0.5, -1.0, 0.0, MIXED)),
        "fig2d" => (
            Command::Sweep,
            bec_sweep("a", 0.0, -0.5, -1.0, [1921.0 / 40000.0, 399.0 / 800000.0]),
        ),
        "fig3" => (Command::Surface, surface(SurfaceKind::F, SurfaceGrid::default())),
        "fig4" => (Command::Surface, surface(SurfaceKind::SigmaX, sigma_x_default_grid())),
        other => {
            return Err(CliError::Input(format!(
                "unknown figure `{other}` (expected one of {})",
                NAMES.join(", ")
            )))
        }
    })
}

/// Layers the non-empty fields of `overrides` onto `base`.
pub fn merge(mut base: RunConfig, overrides: &RunConfig) -> RunConfig {
    macro_rules! take {
        ($($f:ident),*) => {$(
            if overrides.$f.is_some() {
                base.$f = overrides.$f.clone();
            }
        )*};
    }
    take!(model, constants, series, sweep, surface, samples, seed, starts, max_iterations, out, format);
    base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::grid;

    #[test]
    fn every_preset_resolves() {
        for name in NAMES {
            let (_, cfg) = preset(name).unwrap();
            if let Some(s) = &cfg.sweep {
                let n = grid(s.start, s.stop, s.step).unwrap().len();
                assert!(n == 51 || n == BEC_POINTS, "{name}: {n}");
            }
        }
        assert!(preset("fig5").is_err());
    }
}
