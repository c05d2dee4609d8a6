use cryoion::physcore::constants::TWO_PI;
use cryoion::physcore::Unit;
use cryoion::trapfield::{
    addressable, find_rf_null, resonance_frequency, resonator_capacitance, secular_spectrum, two_ion_spacing,
    DcVoltages, ElectrodeLayout, FiveWireGeometry, IonSpecies,
};
use serde_json::json;

use super::{show, show_plain};
use crate::args::{SpeciesArg, TrapArgs, TrapCmd};
use crate::config::{Config, SectionSchema};
use crate::report::Report;
use crate::{CliError, Context};

pub const TRAP_SCHEMA: &[SectionSchema] = &[
    SectionSchema {
        name: "geometry",
        keys: &[
            "center_half_width",
            "gap",
            "rf_width",
            "dc_width",
            "segment_length",
            "segments_per_side",
        ],
    },
    SectionSchema {
        name: "rf",
        keys: &["voltage", "frequency"],
    },
    SectionSchema {
        name: "dc",
        keys: &["axial", "center"],
    },
    SectionSchema {
        name: "ion",
        keys: &["species"],
    },
];

const DEFAULT_RF_VOLTAGE: f64 = 150.0;
const DEFAULT_RF_FREQUENCY: f64 = 30e6;

struct TrapSetup {
    geometry: FiveWireGeometry,
    layout: ElectrodeLayout,
    species: IonSpecies,
    rf_voltage: f64,
    rf_frequency: f64,
    dc: DcVoltages,
}

fn species(arg: SpeciesArg) -> IonSpecies {
    match arg {
        SpeciesArg::Ca40 => IonSpecies::CA40,
        SpeciesArg::Sr88 => IonSpecies::SR88,
    }
}

fn species_name(s: &IonSpecies) -> &'static str {
    match s.label {
        cryoion::trapfield::SpeciesLabel::Ca40 => "40Ca+",
        cryoion::trapfield::SpeciesLabel::Sr88 => "88Sr+",
    }
}

fn setup(args: &TrapArgs, axial_dc: Option<f64>, context: &mut Context) -> Result<TrapSetup, CliError> {
    let mut g = FiveWireGeometry::default();
    let mut rf_voltage = DEFAULT_RF_VOLTAGE;
    let mut rf_frequency = DEFAULT_RF_FREQUENCY;
    let mut ion = IonSpecies::CA40;
    let mut axial = 0.0;
    let mut center = 0.0;
    if let Some(path) = &args.config {
        let text = context.read(path)?;
        let c = Config::parse(&text, &path.display().to_string(), TRAP_SCHEMA)?;
        let len = |key: &str, slot: &mut f64| -> Result<(), CliError> {
            if let Some(v) = c.quantity("geometry", key, Unit::METER)? {
                *slot = v;
            }
            Ok(())
        };
        len("center_half_width", &mut g.center_half_width)?;
        len("gap", &mut g.gap)?;
        len("rf_width", &mut g.rf_width)?;
        len("dc_width", &mut g.dc_width)?;
        len("segment_length", &mut g.segment_length)?;
        if let Some(n) = c.count("geometry", "segments_per_side")? {
            g.segments_per_side = n;
        }
        if let Some(v) = c.quantity("rf", "voltage", Unit::VOLT)? {
            rf_voltage = v;
        }
        if let Some(f) = c.quantity("rf", "frequency", Unit::HERTZ)? {
            rf_frequency = f;
        }
        if let Some(v) = c.quantity("dc", "axial", Unit::VOLT)? {
            axial = v;
        }
        if let Some(v) = c.quantity("dc", "center", Unit::VOLT)? {
            center = v;
        }
        match c.choice("ion", "species", &["ca40", "sr88"])? {
            Some("sr88") => ion = IonSpecies::SR88,
            Some(_) => ion = IonSpecies::CA40,
            None => {}
        }
    }
    if let Some(v) = args.g {
        g.center_half_width = v;
    }
    if let Some(v) = args.rf_voltage {
        rf_voltage = v;
    }
    if let Some(f) = args.rf_freq {
        rf_frequency = f;
    }
    if let Some(s) = args.species {
        ion = species(s);
    }
    if let Some(v) = axial_dc {
        axial = v;
    }
    let layout = g.layout(rf_voltage, TWO_PI * rf_frequency)?;
    let mut dc = g.axial_confinement(axial);
    dc.center = center;
    Ok(TrapSetup {
        geometry: g,
        layout,
        species: ion,
        rf_voltage,
        rf_frequency,
        dc,
    })
}

fn setup_entries(r: &mut Report, s: &TrapSetup) {
    let g = &s.geometry;
    let (inner, outer) = g.rf_inner_outer();
    r.text(
        "geometry",
        format!(
            "five-wire surface trap, centre half-width g = {}, gaps {}, RF rails |x| {} to {}",
            show(g.center_half_width, Unit::METER, "µm"),
            show(g.gap, Unit::METER, "µm"),
            show(inner, Unit::METER, "µm"),
            show(outer, Unit::METER, "µm")
        ),
    )
    .text("species", species_name(&s.species))
    .quantity("rf_voltage", s.rf_voltage, "V", show(s.rf_voltage, Unit::VOLT, "V"))
    .quantity("rf_frequency", s.rf_frequency, "Hz", show(s.rf_frequency, Unit::HERTZ, "MHz"));
}

pub fn run(cmd: TrapCmd, context: &mut Context) -> Result<Report, CliError> {
    match cmd {
        TrapCmd::Solve { trap } => {
            let s = setup(&trap, None, context)?;
            let null = find_rf_null(&s.layout, &s.species)?;
            let distance = s.geometry.ion_electrode_distance(null.height);
            let mut r = Report::new("RF null");
            setup_entries(&mut r, &s);
            r.quantity("null_x", null.position[0], "m", show(null.position[0], Unit::METER, "µm"))
                .quantity("null_height", null.height, "m", show(null.height, Unit::METER, "µm"))
                .quantity("ion_electrode_distance", distance, "m", show(distance, Unit::METER, "µm"))
                .quantity(
                    "residual_field",
                    null.residual_field,
                    "V/m",
                    show_plain(null.residual_field, "V/m"),
                )
                .quantity(
                    "converged_starts",
                    null.converged_starts as f64,
                    "",
                    null.converged_starts.to_string(),
                )
                .quantity("start_spread", null.start_spread, "m", show(null.start_spread, Unit::METER, "nm"))
                .note("ion-electrode distance is measured to the nearest centre-electrode edge");
            Ok(r)
        }
        TrapCmd::Spectrum { trap, axial_dc } => {
            let s = setup(&trap, axial_dc, context)?;
            let sol = secular_spectrum(&s.layout, &s.species, &s.dc)?;
            let mut r = Report::new("secular spectrum");
            setup_entries(&mut r, &s);
            r.quantity("null_height", sol.null.height, "m", show(sol.null.height, Unit::METER, "µm"));
            for (i, w) in sol.secular_frequencies.iter().enumerate() {
                let f = w / TWO_PI;
                r.quantity(&format!("secular_frequency_{}", i + 1), f, "Hz", show(f, Unit::HERTZ, "MHz"));
            }
            r.quantity("trap_depth", sol.trap_depth, "J", show(sol.trap_depth, Unit::JOULE, "meV"))
                .flag("valid", sol.is_valid());
            if !sol.unstable_axes.is_empty() {
                r.note("curvature is negative along at least one principal axis; add axial DC confinement");
            }
            let rows = (0..3)
                .map(|i| {
                    let a = sol.axes[i];
                    vec![
                        json!(i + 1),
                        json!(sol.secular_frequencies[i] / TWO_PI),
                        json!(sol.q_params[i]),
                        json!(sol.curvatures[i]),
                        json!(a[0]),
                        json!(a[1]),
                        json!(a[2]),
                    ]
                })
                .collect();
            r.table(
                "modes",
                &["mode", "freq_hz", "q", "curvature_J_per_m2", "axis_x", "axis_y", "axis_z"],
                rows,
            );
            Ok(r)
        }
        TrapCmd::Resonator {
            inductance,
            f0,
            capacitance,
        } => {
            let mut r = Report::new("LC resonator");
            r.quantity("inductance", inductance, "H", show(inductance, Unit::HENRY, "µH"));
            match (f0, capacitance) {
                (Some(f), _) => {
                    let c = resonator_capacitance(inductance, f)?;
                    r.quantity("f0", f, "Hz", show(f, Unit::HERTZ, "MHz"))
                        .quantity("capacitance", c, "F", show(c, Unit::FARAD, "pF"));
                }
                (None, Some(c)) => {
                    let f = resonance_frequency(inductance, c)?;
                    r.quantity("capacitance", c, "F", show(c, Unit::FARAD, "pF"))
                        .quantity("f0", f, "Hz", show(f, Unit::HERTZ, "MHz"));
                }
                (None, None) => unreachable!("clap requires one of --f0 and --capacitance"),
            }
            Ok(r)
        }
        TrapCmd::Spacing { species: sp, axial, waist } => {
            let ion = species(sp);
            let d = two_ion_spacing(&ion, axial)?;
            let mut r = Report::new("two-ion spacing");
            r.text("species", species_name(&ion))
                .quantity("axial_frequency", axial, "Hz", show(axial, Unit::HERTZ, "MHz"))
                .quantity("spacing", d, "m", show(d, Unit::METER, "µm"))
                .quantity("waist", waist, "m", show(waist, Unit::METER, "µm"))
                .flag("individually_addressable", addressable(d, waist));
            Ok(r)
        }
    }
}
