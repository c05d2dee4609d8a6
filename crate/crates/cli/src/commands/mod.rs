mod cryo;
mod demo;
mod met;
mod qubit;
mod shield;
mod trap;

use cryoion::physcore::units::format_significant;
use cryoion::physcore::{Quantity, Unit};

use crate::args::{Command, CoilCmd, ReportCmd, ShieldCmd};
use crate::report::Report;
use crate::{CliError, Context};

pub use demo::{demo_commands, DEMO_COMMANDS};

/// Significant figures in human-readable output.
pub(crate) const SIG: usize = 3;

/// `value` (SI in `unit`) shown in the prefixed `symbol`, e.g. "9.22 mm".
pub(crate) fn show(value: f64, unit: Unit, symbol: &str) -> String {
    show_sig(value, unit, symbol, SIG)
}

pub(crate) fn show_sig(value: f64, unit: Unit, symbol: &str, sig: usize) -> String {
    Quantity::new(value, unit)
        .and_then(|q| q.display_in(symbol, sig))
        .unwrap_or_else(|_| format!("{value} {unit}"))
}

/// Value with a free-form unit label.
pub(crate) fn show_plain(value: f64, label: &str) -> String {
    if label.is_empty() {
        format_significant(value, SIG)
    } else {
        format!("{} {label}", format_significant(value, SIG))
    }
}

/// "v ± s label" with the uncertainty to two significant figures.
pub(crate) fn show_pm(value: f64, sigma: f64, scale: f64, label: &str) -> String {
    format!(
        "{} ± {} {label}",
        format_significant(value / scale, SIG),
        format_significant(sigma / scale, 2)
    )
}

pub(crate) fn dispatch(command: Command, context: &mut Context) -> Result<Report, CliError> {
    match command {
        Command::Shield(cmd) => match cmd {
            ShieldCmd::SkinDepth { freq, temp, conductor } => shield::skin_depth_cmd(freq, temp, &conductor),
            ShieldCmd::Attenuation {
                freq,
                temp,
                thickness,
                conductor,
            } => shield::attenuation(freq, temp, thickness, &conductor),
            ShieldCmd::Fit { input, floor, axis } => shield::fit(context, &input, floor, axis),
            ShieldCmd::Budget {
                linewidth,
                sensitivity,
                field,
            } => shield::budget(linewidth, sensitivity, field),
        },
        Command::Coil(cmd) => match cmd {
            CoilCmd::Field { coil, x, y, z } => shield::coil_field_at(&coil, [x, y, z]),
            CoilCmd::Homogeneity { coil, extent } => shield::homogeneity(&coil, extent),
        },
        Command::Cryo(cmd) => cryo::run(cmd, context),
        Command::Trap(cmd) => trap::run(cmd, context),
        Command::Qubit(cmd) => qubit::run(cmd, context),
        Command::Met(cmd) => met::run(cmd, context),
        Command::Report(ReportCmd::Table1 {
            thickness,
            freq,
            conductor,
            fit,
            floor,
        }) => shield::table1(context, thickness, freq, &conductor, fit.as_deref(), floor),
        Command::Demo(args) => demo::run(&args),
    }
}
