use cryoion::cryotherm::{
    boiloff_power, conduction_load, ConductivityTable, CoolantSpec, Material, SupportSpec,
};
use cryoion::physcore::Unit;

use super::{show, show_plain};
use crate::args::{CoolantArg, CryoCmd};
use crate::csvio::Columns;
use crate::report::Report;
use crate::{CliError, Context};

const TABLE_COLUMNS: Columns = Columns::exact(&["T_K", "k_W_per_mK"]);
/// One litre per hour in m³/s.
const LITRE_PER_HOUR: f64 = 1e-3 / 3600.0;
/// Hot end of the comparison span printed next to every tube load.
const COMPARISON_T_HOT: f64 = 80.0;

pub fn run(cmd: CryoCmd, context: &mut Context) -> Result<Report, CliError> {
    match cmd {
        CryoCmd::Load {
            diameter,
            wall,
            length,
            t_cold,
            t_hot,
            table,
        } => {
            let (material, material_name) = match &table {
                Some(path) => {
                    let records = context.records(path, TABLE_COLUMNS)?;
                    let t = ConductivityTable::new(records.pairs())?;
                    (Material::Custom(t), format!("table {}", path.display()))
                }
                None => (Material::Ss316, "316 stainless (NIST cryogenic fit)".to_string()),
            };
            let tube = SupportSpec::thin_tube(diameter, wall, length, material.clone(), t_cold, t_hot)?;
            let q = conduction_load(&tube)?;
            let mut r = Report::new("conduction load");
            r.text(
                "geometry",
                format!(
                    "thin-walled tube, diameter {}, wall {}, length {}",
                    show(diameter, Unit::METER, "mm"),
                    show(wall, Unit::METER, "mm"),
                    show(length, Unit::METER, "mm")
                ),
            )
            .text("material", material_name)
            .quantity("t_cold", t_cold, "K", show(t_cold, Unit::KELVIN, "K"))
            .quantity("t_hot", t_hot, "K", show(t_hot, Unit::KELVIN, "K"))
            .quantity("area", tube.cross_section_area, "m2", show(tube.cross_section_area, Unit::SQUARE_METER, "mm2"))
            .quantity("load", q, "W", show(q, Unit::WATT, "mW"));
            if t_hot != COMPARISON_T_HOT && t_cold < COMPARISON_T_HOT {
                let wide = SupportSpec::thin_tube(diameter, wall, length, material, t_cold, COMPARISON_T_HOT)?;
                if let Ok(q80) = conduction_load(&wide) {
                    r.quantity("load_to_80k", q80, "W", show(q80, Unit::WATT, "mW"));
                }
            }
            if table.is_none() && t_hot == 40.0 && t_cold == 20.0 {
                r.note("geometry and the 40 K outer-stage temperature are assumed values, not measured ones");
            }
            Ok(r)
        }
        CryoCmd::Boiloff { rate, coolant, fraction } => {
            if !(0.0..=1.0).contains(&fraction) {
                return Err(CliError::Compute(format!("fraction must lie in [0, 1], got {fraction}")));
            }
            let (spec, name) = match coolant {
                CoolantArg::Lhe => (CoolantSpec::LHE, "liquid helium"),
                CoolantArg::Ln2 => (CoolantSpec::LN2, "liquid nitrogen"),
            };
            let litres_per_hour = rate / LITRE_PER_HOUR;
            let p = boiloff_power(litres_per_hour, &spec)?;
            let mut r = Report::new("boil-off heat load");
            r.text("coolant", name)
                .quantity("rate", rate, "m3/s", show_plain(litres_per_hour, "l/h"))
                .quantity("power", p, "W", show(p, Unit::WATT, "W"))
                .quantity("fraction", fraction, "", show_plain(fraction, ""))
                .quantity("attributed_power", p * fraction, "W", show(p * fraction, Unit::WATT, "W"));
            Ok(r)
        }
    }
}
