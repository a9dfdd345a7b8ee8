//! CSV emission.
//!
//! Every file starts with `#`-prefixed metadata lines (configuration, code
//! version, seed, a timestamp) followed by a plain CSV body. Identical
//! invocations produce byte-identical bodies; timestamps stay confined to
//! the metadata comments so regression tooling can diff bodies directly.

use std::io::Write;

use crate::error::Result;
use crate::experiments::{ConservationSeries, ConvergenceResult};
use crate::field::Field;

pub fn write_metadata(w: &mut dyn Write, pairs: &[(&str, String)]) -> Result<()> {
    writeln!(w, "# nls-spectral v{}", env!("CARGO_PKG_VERSION"))?;
    for (key, value) in pairs {
        writeln!(w, "# {key}: {value}")?;
    }
    Ok(())
}

/// Body columns: `method,tau,error,order_fit`. The fitted order of a method
/// is repeated on each of its rows; an unreliable fit is marked with a
/// trailing `?`.
pub fn write_convergence_csv(w: &mut dyn Write, result: &ConvergenceResult) -> Result<()> {
    writeln!(w, "method,tau,error,order_fit")?;
    for m in &result.methods {
        let order = if m.fit.reliable {
            format!("{}", m.fit.order)
        } else {
            format!("{}?", m.fit.order)
        };
        for &(tau, error) in &m.points {
            writeln!(w, "{},{},{},{}", m.method, tau, error, order)?;
        }
    }
    Ok(())
}

/// Body columns: `t,energy,mass`.
pub fn write_conservation_csv(w: &mut dyn Write, series: &ConservationSeries) -> Result<()> {
    writeln!(w, "t,energy,mass")?;
    for i in 0..series.times.len() {
        writeln!(
            w,
            "{},{},{}",
            series.times[i], series.energy[i], series.mass[i]
        )?;
    }
    Ok(())
}

/// Body columns: `index,re,im` over physical grid values in flat row-major
/// order.
pub fn write_field_csv(w: &mut dyn Write, field: &Field) -> Result<()> {
    writeln!(w, "index,re,im")?;
    for (i, z) in field.to_physical().iter().enumerate() {
        writeln!(w, "{},{},{}", i, z.re, z.im)?;
    }
    Ok(())
}
