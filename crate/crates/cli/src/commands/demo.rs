//! Seeded demo dataset: one input file per analysis command, plus the
//! command lines that consume them.

use std::path::Path;

use cryoion::demo;
use cryoion::metrology::{fringe_forward, InterferometerCal};
use serde_json::json;

use crate::args::DemoArgs;
use crate::csvio::write_table;
use crate::report::Report;
use crate::CliError;

/// Command lines run against the demo dataset; `{dir}` is the dataset directory.
pub const DEMO_COMMANDS: &[&[&str]] = &[
    &["shield", "skin-depth", "--freq", "50Hz", "--sigma", "5.96e7", "--temp", "293K"],
    &["shield", "attenuation", "--freq", "50Hz", "--temp", "20K", "--thickness", "20mm"],
    &["shield", "fit", "--in", "{dir}/shield_attenuation.csv"],
    &["shield", "budget"],
    &["coil", "field", "--z", "1mm"],
    &["coil", "homogeneity", "--radius", "19.5cm", "--extent", "1.5mm"],
    &["cryo", "load"],
    &["cryo", "boiloff", "--rate", "0.5l/h", "--fraction", "0.5"],
    &["trap", "solve", "--config", "{dir}/trap.conf"],
    &["trap", "spectrum", "--config", "{dir}/trap.conf"],
    &["trap", "resonator", "--inductance", "1.6uH", "--f0", "49.9MHz"],
    &["trap", "spacing", "--axial", "1MHz"],
    &["qubit", "rabi", "--nbar", "14", "--eta", "0.1"],
    &["qubit", "thermometry", "--ratio", "0.5"],
    &["qubit", "heating-fit", "--in", "{dir}/heating.csv"],
    &["qubit", "ramsey-fit", "--in", "{dir}/ramsey.csv"],
    &["qubit", "waist-fit", "--in", "{dir}/waist.csv"],
    &["qubit", "optics", "--na", "0.23"],
    &["met", "allan", "--in", "{dir}/allan.csv"],
    &["met", "linewidth", "--in", "{dir}/beat.csv"],
    &["met", "vib", "--in", "{dir}/vibration.csv"],
    &["met", "image-fit", "--in", "{dir}/image.csv", "--poisson"],
    &["report", "table1", "--fit", "{dir}/shield_attenuation.csv"],
];

/// [`DEMO_COMMANDS`] with the dataset directory filled in.
pub fn demo_commands(dir: &Path) -> Vec<Vec<String>> {
    let d = dir.display().to_string();
    DEMO_COMMANDS
        .iter()
        .map(|c| c.iter().map(|a| a.replace("{dir}", &d)).collect())
        .collect()
}

const TRAP_CONF: &str = "\
# five-wire surface trap, 40Ca+
[geometry]
center_half_width = 52.7um
gap = 10um
rf_width = 60um
dc_width = 200um
segment_length = 200um
segments_per_side = 11

[rf]
voltage = 150V
frequency = 30MHz

[dc]
axial = 5V
center = 0V

[ion]
species = ca40
";

fn pairs(rows: Vec<(f64, f64)>) -> impl Iterator<Item = Vec<f64>> {
    rows.into_iter().map(|(a, b)| vec![a, b])
}

pub fn run(args: &DemoArgs) -> Result<Report, CliError> {
    let seed = args.seed;
    let mut files: Vec<(&str, String)> = Vec::new();

    files.push((
        "shield_attenuation.csv",
        write_table(&["freq_hz", "atten_db"], pairs(demo::skin_attenuation_points(seed))),
    ));
    let allan = demo::allan_record(seed + 1);
    files.push((
        "allan.csv",
        write_table(&["t_s", "y"], allan.times().zip(allan.samples()).map(|(t, y)| vec![t, *y])),
    ));
    let cal = InterferometerCal::new(633e-9, 1.0, 0.0)?;
    let volts = fringe_forward(&demo::vibration_record(seed + 2), &cal)?;
    files.push((
        "vibration.csv",
        write_table(&["t_s", "v"], volts.times().zip(volts.samples()).map(|(t, v)| vec![t, *v])),
    ));
    files.push((
        "heating.csv",
        write_table(
            &["t_s", "nbar", "sigma"],
            demo::heating_points(seed + 3).into_iter().map(|(t, n)| vec![t, n, 0.2]),
        ),
    ));
    files.push(("ramsey.csv", write_table(&["t_s", "contrast"], pairs(demo::ramsey_points(seed + 4)))));
    files.push(("waist.csv", write_table(&["x_m", "rabi_rad_s"], pairs(demo::waist_scan(seed + 5)))));
    files.push(("beat.csv", write_table(&["f_hz", "psd"], pairs(demo::beat_spectrum(seed + 6)))));
    let (counts, columns) = demo::ion_image(seed + 7);
    let names: Vec<String> = (0..columns).map(|c| format!("c{c}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    files.push(("image.csv", write_table(&names, counts.chunks(columns).map(|r| r.to_vec()))));
    files.push(("trap.conf", TRAP_CONF.to_string()));

    std::fs::create_dir_all(&args.dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", args.dir.display())))?;
    for (name, text) in &files {
        let path = args.dir.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }

    let mut r = Report::new("demo dataset");
    r.quantity("seed", seed as f64, "", seed.to_string())
        .note("synthetic records generated from documented models; they are not measurements");
    let rows = files
        .iter()
        .map(|(name, text)| vec![json!(name), json!(text.len())])
        .collect();
    r.table("files", &["file", "bytes"], rows);
    Ok(r)
}
