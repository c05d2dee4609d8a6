use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::units;

#[derive(Debug, Parser)]
#[command(
    name = "cryoion",
    version,
    about = "Models and analysis tools for a cryogenic trapped-ion apparatus",
    after_help = "Every numeric flag accepts a unit suffix (--freq 50Hz) or a separate --<flag>-unit; bare numbers are SI."
)]
pub struct Cli {
    /// Emit CSV instead of text.
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to FILE instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eddy-current shielding and field-noise budget.
    #[command(subcommand)]
    Shield(ShieldCmd),
    /// Helmholtz coil fields.
    #[command(subcommand)]
    Coil(CoilCmd),
    /// Conduction loads and coolant boil-off.
    #[command(subcommand)]
    Cryo(CryoCmd),
    /// Surface-trap electrostatics.
    #[command(subcommand)]
    Trap(TrapCmd),
    /// Qubit dynamics, thermometry and scan fits.
    #[command(subcommand)]
    Qubit(QubitCmd),
    /// Frequency, vibration and image metrology.
    #[command(subcommand)]
    Met(MetCmd),
    /// Summary tables.
    #[command(subcommand)]
    Report(ReportCmd),
    /// Write the seeded demo dataset.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConductorArgs {
    /// Conductivity at 293 K (OFHC copper by default).
    #[arg(long, default_value = "5.96e7", value_parser = units::conductivity)]
    pub sigma: f64,
    /// Residual-resistivity ratio reached at 20 K and below.
    #[arg(long, default_value = "100", value_parser = units::number)]
    pub rrr: f64,
    /// Conductivity ratio σ(77 K)/σ(293 K).
    #[arg(long = "ratio-77k", default_value = "8", value_parser = units::number)]
    pub ratio_77k: f64,
    #[arg(long = "mu-r", default_value = "1", value_parser = units::number)]
    pub mu_r: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AxisArg {
    Along,
    Perp,
}

#[derive(Debug, Subcommand)]
pub enum ShieldCmd {
    /// Skin depth of a conductor.
    SkinDepth {
        #[arg(long, value_parser = units::frequency)]
        freq: f64,
        #[arg(long, default_value = "293K", value_parser = units::temperature)]
        temp: f64,
        #[command(flatten)]
        conductor: ConductorArgs,
    },
    /// Skin-effect attenuation of one wall.
    Attenuation {
        #[arg(long, value_parser = units::frequency)]
        freq: f64,
        #[arg(long, default_value = "293K", value_parser = units::temperature)]
        temp: f64,
        #[arg(long, default_value = "20mm", value_parser = units::length)]
        thickness: f64,
        #[command(flatten)]
        conductor: ConductorArgs,
    },
    /// Classify a measured attenuation curve and extrapolate it to 50 Hz.
    Fit {
        /// CSV with columns freq_hz,atten_db.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Measurement floor; points at or below it are censored.
        #[arg(long, default_value = "-58dB", value_parser = units::decibel, allow_hyphen_values = true)]
        floor: f64,
        #[arg(long, value_enum, default_value = "along")]
        axis: AxisArg,
    },
    /// Largest field excursion tolerated by a transition.
    Budget {
        /// Natural linewidth of the transition.
        #[arg(long, default_value = "140mHz", value_parser = units::frequency)]
        linewidth: f64,
        /// Field sensitivity of the transition.
        #[arg(long, default_value = "39GHz/T", value_parser = units::field_sensitivity)]
        sensitivity: f64,
        /// Quantization field.
        #[arg(long, default_value = "0.3mT", value_parser = units::field)]
        field: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CoilArgs {
    #[arg(long, default_value = "19.5cm", value_parser = units::length)]
    pub radius: f64,
    /// Coil separation; defaults to the radius (Helmholtz).
    #[arg(long, value_parser = units::length)]
    pub separation: Option<f64>,
    #[arg(long, default_value = "1", value_parser = units::number)]
    pub turns: f64,
    #[arg(long, default_value = "1A", value_parser = units::current)]
    pub current: f64,
}

#[derive(Debug, Subcommand)]
pub enum CoilCmd {
    /// Field of the pair at one point.
    Field {
        #[command(flatten)]
        coil: CoilArgs,
        #[arg(long, default_value = "0", value_parser = units::length, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value = "0", value_parser = units::length, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, default_value = "0", value_parser = units::length, allow_hyphen_values = true)]
        z: f64,
    },
    /// Largest relative field deviation along the axis.
    Homogeneity {
        #[command(flatten)]
        coil: CoilArgs,
        /// Full axial extent, centred on the midpoint.
        #[arg(long, default_value = "1.5mm", value_parser = units::length)]
        extent: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoolantArg {
    Lhe,
    Ln2,
}

#[derive(Debug, Subcommand)]
pub enum CryoCmd {
    /// Conduction load of a thin-walled tube between two stages.
    Load {
        #[arg(long, default_value = "60mm", value_parser = units::length)]
        diameter: f64,
        #[arg(long, default_value = "0.5mm", value_parser = units::length)]
        wall: f64,
        #[arg(long, default_value = "50mm", value_parser = units::length)]
        length: f64,
        #[arg(long = "t-cold", default_value = "20K", value_parser = units::temperature)]
        t_cold: f64,
        #[arg(long = "t-hot", default_value = "40K", value_parser = units::temperature)]
        t_hot: f64,
        /// Conductivity table CSV with columns T_K,k_W_per_mK (316 stainless if absent).
        #[arg(long, value_name = "FILE")]
        table: Option<PathBuf>,
    },
    /// Heat equivalent of a measured boil-off rate.
    Boiloff {
        /// Evaporation rate, e.g. 0.5l/h.
        #[arg(long, value_parser = units::flow)]
        rate: f64,
        #[arg(long, value_enum, default_value = "lhe")]
        coolant: CoolantArg,
        /// Share of the boil-off attributed to the chamber.
        #[arg(long, default_value = "1", value_parser = units::number)]
        fraction: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SpeciesArg {
    Ca40,
    Sr88,
}

#[derive(Debug, Clone, Args)]
pub struct TrapArgs {
    /// Trap configuration file; flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub species: Option<SpeciesArg>,
    /// RF amplitude.
    #[arg(long = "rf-voltage", value_parser = units::voltage)]
    pub rf_voltage: Option<f64>,
    /// RF drive frequency (Ω = 2π·f).
    #[arg(long = "rf-freq", value_parser = units::frequency)]
    pub rf_freq: Option<f64>,
    /// Centre-electrode half-width g.
    #[arg(long, value_parser = units::length)]
    pub g: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum TrapCmd {
    /// Locate the RF null.
    Solve {
        #[command(flatten)]
        trap: TrapArgs,
    },
    /// Secular frequencies, stability parameters and depth at the RF null.
    Spectrum {
        #[command(flatten)]
        trap: TrapArgs,
        /// Voltage on the segment pairs either side of the middle one.
        #[arg(long = "axial-dc", value_parser = units::voltage, allow_hyphen_values = true)]
        axial_dc: Option<f64>,
    },
    /// LC resonator: capacitance from f0, or f0 from capacitance.
    #[command(group(ArgGroup::new("given").required(true).args(["f0", "capacitance"])))]
    Resonator {
        #[arg(long, value_parser = units::inductance)]
        inductance: f64,
        #[arg(long, value_parser = units::frequency)]
        f0: Option<f64>,
        #[arg(long, value_parser = units::capacitance)]
        capacitance: Option<f64>,
    },
    /// Two-ion spacing in a harmonic axial well.
    Spacing {
        #[arg(long, value_enum, default_value = "ca40")]
        species: SpeciesArg,
        /// Axial frequency (ω = 2π·f).
        #[arg(long, default_value = "1MHz", value_parser = units::frequency)]
        axial: f64,
        /// Addressing beam waist.
        #[arg(long, default_value = "3um", value_parser = units::length)]
        waist: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CarrierArg {
    FirstOrder,
    Laguerre,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DecayArg {
    Gaussian,
    Exponential,
}

#[derive(Debug, Subcommand)]
pub enum QubitCmd {
    /// Carrier Rabi flop of a thermal motional state, as (t_s, p_e).
    Rabi {
        #[arg(long, value_parser = units::number)]
        nbar: f64,
        /// Lamb-Dicke parameter.
        #[arg(long, default_value = "0.1", value_parser = units::number)]
        eta: f64,
        /// Bare carrier Rabi frequency (Ω = 2π·f).
        #[arg(long = "rabi-freq", default_value = "10kHz", value_parser = units::frequency)]
        rabi_freq: f64,
        #[arg(long = "t-max", default_value = "500us", value_parser = units::time)]
        t_max: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long, value_enum, default_value = "first-order")]
        model: CarrierArg,
    },
    /// Sideband ratio to mean phonon number, or back.
    #[command(group(ArgGroup::new("given").required(true).args(["ratio", "nbar"])))]
    Thermometry {
        /// Red/blue sideband excitation ratio.
        #[arg(long, value_parser = units::number)]
        ratio: Option<f64>,
        #[arg(long, value_parser = units::number)]
        nbar: Option<f64>,
    },
    /// Heating rate from a CSV with columns t_s,nbar[,sigma].
    HeatingFit {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Ramsey contrast decay from a CSV with columns t_s,contrast[,sigma].
    RamseyFit {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "gaussian")]
        model: DecayArg,
    },
    /// Beam waist from a CSV with columns x_m,rabi_rad_s[,sigma].
    WaistFit {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Photon collection and diffraction-limited focus of a lens.
    Optics {
        #[arg(long, value_parser = units::number)]
        na: f64,
        #[arg(long, default_value = "729nm", value_parser = units::length)]
        wavelength: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RecordArg {
    /// Column y: fractional frequency.
    Fractional,
    /// Column beat_hz: beat-note frequency deviation in Hz.
    BeatHz,
    /// Column x_s: phase as time error in seconds.
    Phase,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TaperArg {
    Hann,
    Rect,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ImageAxisArg {
    Row,
    Column,
}

#[derive(Debug, Subcommand)]
pub enum MetCmd {
    /// Overlapping Allan deviation at octave-spaced τ.
    Allan {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "fractional")]
        kind: RecordArg,
        /// Nominal carrier frequency (the 729 nm laser by default).
        #[arg(long, value_parser = units::frequency)]
        nominal: Option<f64>,
    },
    /// Lorentzian linewidth from a CSV with columns f_hz,psd[,sigma].
    Linewidth {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Interferometer voltage record (t_s,v) to displacement, spectrum and excursions.
    Vib {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value = "633nm", value_parser = units::length)]
        wavelength: f64,
        #[arg(long = "volts-per-fringe", default_value = "1V", value_parser = units::voltage)]
        volts_per_fringe: f64,
        #[arg(long, default_value = "0V", value_parser = units::voltage, allow_hyphen_values = true)]
        offset: f64,
        /// Excursion window.
        #[arg(long, default_value = "2s", value_parser = units::time)]
        window: f64,
        #[arg(long, default_value_t = 3)]
        peaks: usize,
        #[arg(long = "min-sep", default_value = "5Hz", value_parser = units::frequency)]
        min_sep: f64,
        #[arg(long, value_enum, default_value = "hann")]
        taper: TaperArg,
    },
    /// Gaussian width of an ion image (CSV grid, one named column per pixel).
    ImageFit {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value = "16um", value_parser = units::length)]
        pitch: f64,
        #[arg(long, default_value = "15", value_parser = units::number)]
        magnification: f64,
        #[arg(long, value_enum, default_value = "row")]
        axis: ImageAxisArg,
        /// Weight the profile with Poisson errors √counts.
        #[arg(long)]
        poisson: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCmd {
    /// Measured 50 Hz inner-shield attenuation beside the skin model.
    Table1 {
        #[arg(long, default_value = "20mm", value_parser = units::length)]
        thickness: f64,
        #[arg(long, default_value = "50Hz", value_parser = units::frequency)]
        freq: f64,
        #[command(flatten)]
        conductor: ConductorArgs,
        /// Attenuation curve (freq_hz,atten_db) of the coldest stage to extrapolate.
        #[arg(long = "fit", value_name = "FILE")]
        fit: Option<PathBuf>,
        #[arg(long, default_value = "-58dB", value_parser = units::decibel, allow_hyphen_values = true)]
        floor: f64,
    },
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Directory to write the dataset into (created if missing).
    #[arg(long, value_name = "DIR")]
    pub dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
