use super::{DcVoltages, ElectrodeLayout, Role, Strip, TrapError};

/// Symmetric five-wire surface trap: a grounded centre electrode flanked by
/// two RF rails and two rows of segmented DC electrodes. Every gap is split
/// half-half between its neighbours.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiveWireGeometry {
    /// Half-width of the centre electrode metal, m.
    pub center_half_width: f64,
    pub gap: f64,
    pub rf_width: f64,
    /// Radial width of the DC electrodes, m.
    pub dc_width: f64,
    /// Axial length of one DC segment, m.
    pub segment_length: f64,
    pub segments_per_side: usize,
}

impl Default for FiveWireGeometry {
    fn default() -> Self {
        FiveWireGeometry {
            center_half_width: 52.7e-6,
            gap: 10e-6,
            rf_width: 60e-6,
            dc_width: 200e-6,
            segment_length: 200e-6,
            segments_per_side: 11,
        }
    }
}

impl FiveWireGeometry {
    /// Inner and outer |x| of each RF strip after gap splitting.
    pub fn rf_inner_outer(&self) -> (f64, f64) {
        let inner = self.center_half_width + 0.5 * self.gap;
        (inner, inner + self.rf_width + self.gap)
    }

    pub fn dc_count(&self) -> usize {
        2 * self.segments_per_side
    }

    pub fn axial_length(&self) -> f64 {
        self.segments_per_side as f64 * (self.segment_length + self.gap)
    }

    /// Distance from an on-axis point at `height` to the centre electrode edge.
    pub fn ion_electrode_distance(&self, height: f64) -> f64 {
        height.hypot(self.center_half_width)
    }

    pub fn layout(&self, rf_voltage_amplitude: f64, rf_frequency: f64) -> Result<ElectrodeLayout, TrapError> {
        if !(self.center_half_width > 0.0
            && self.gap >= 0.0
            && self.rf_width > 0.0
            && self.dc_width > 0.0
            && self.segment_length > 0.0
            && self.segments_per_side > 0)
        {
            return Err(TrapError::Layout(format!("invalid five-wire geometry {self:?}")));
        }
        let half_len = 0.5 * self.axial_length();
        let (rf_in, rf_out) = self.rf_inner_outer();
        let dc_out = rf_out + self.dc_width + self.gap;
        let pitch = self.segment_length + self.gap;
        let mut strips = vec![
            Strip::new(-rf_in, rf_in, -half_len, half_len, Role::Center)?,
            Strip::new(-rf_out, -rf_in, -half_len, half_len, Role::Rf)?,
            Strip::new(rf_in, rf_out, -half_len, half_len, Role::Rf)?,
        ];
        let n = self.segments_per_side;
        for i in 0..n {
            // both edges from the same expression so neighbours share them exactly
            let y0 = -half_len + i as f64 * pitch;
            let y1 = if i + 1 == n { half_len } else { -half_len + (i + 1) as f64 * pitch };
            strips.push(Strip::new(-dc_out, -rf_out, y0, y1, Role::Dc(i))?);
            strips.push(Strip::new(rf_out, dc_out, y0, y1, Role::Dc(n + i))?);
        }
        ElectrodeLayout::new(strips, rf_voltage_amplitude, rf_frequency)
    }

    /// DC set with `voltage` on the two segment pairs adjacent to the middle
    /// one and 0 V elsewhere.
    pub fn axial_confinement(&self, voltage: f64) -> DcVoltages {
        let n = self.segments_per_side;
        let mid = n / 2;
        let mut dc = vec![0.0; self.dc_count()];
        for i in [mid.wrapping_sub(1), mid + 1] {
            if i < n {
                dc[i] = voltage;
                dc[n + i] = voltage;
            }
        }
        DcVoltages { dc, center: 0.0 }
    }
}
