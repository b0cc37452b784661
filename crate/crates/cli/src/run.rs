//! Executes a [`RunConfig`] and delivers its output.

use std::io::Write;

use adaptquad::io::{render_comparison, render_convergence, render_integrals, render_rule, write_text, IntegralReport};
use adaptquad::studies::{compare_strategies, tensor_convergence_study};
use adaptquad::{build_adaptive_rule, integrate_with_rule, QuadError, Result};

use crate::config::{Command, Output, RunConfig};

/// The text the command produces, independent of where it goes.
pub fn render(cfg: &RunConfig) -> Result<String> {
    match &cfg.command {
        Command::Rule(adaptive) => {
            let result = build_adaptive_rule(&cfg.cell, &cfg.integrands, adaptive)?;
            Ok(render_rule(&result, adaptive, cfg.format))
        }
        Command::Integrate(adaptive) => {
            let result = build_adaptive_rule(&cfg.cell, &cfg.integrands, adaptive)?;
            let values = cfg
                .integrands
                .iter()
                .map(|f| integrate_with_rule(&result.rule, f))
                .collect::<Result<Vec<_>>>()?;
            Ok(render_integrals(&IntegralReport::new(&result, &cfg.integrands, &values), cfg.format))
        }
        Command::Converge { ms, cusp } => {
            let records = tensor_convergence_study(&cfg.integrands[0], &cfg.cell, ms, cusp)?;
            Ok(render_convergence(&records, cfg.format))
        }
        Command::Compare { tols, ms } => {
            let records = compare_strategies(&cfg.integrands, &cfg.cell, tols, ms)?;
            Ok(render_comparison(&records, cfg.format))
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<()> {
    let text = render(cfg)?;
    match &cfg.output {
        Output::Stdout => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                // a closed pipe (`| head`) is the reader's choice, not a failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|source| QuadError::Io { path: "<stdout>".into(), source }),
            }
        }
        Output::File(path) => write_text(path, &text),
    }
}
