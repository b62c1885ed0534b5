//! Narrowband wave packets propagated spectrally through a stack.
//!
//! A [`Pulse`] stores the complex envelope `a(t)` of the analytic signal
//! `a(t)·e^{+i2πνt}` on a uniform grid, so FFT bin `k` sits at the absolute
//! frequency `ν + f_k`. Propagation multiplies each bin by the stack's
//! `t(ω)` or `r(ω)`, linearly interpolated from a scan.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::dispersion::{is_evanescent, wavenumber, FieldKind, FtirGeometry, Geometry, Medium, WaveContext};
use crate::error::{Error, Result};
use crate::scatter::{transmission_scan, Layer, ScatterSpectrum, Stack};

/// Half-width of the pulse band in units of the spectral σ: the Gaussian
/// spectrum falls below 10⁻⁶ of its peak beyond `sqrt(2 ln 10⁶) ≈ 5.26 σ_f`.
pub const BAND_SIGMAS: f64 = 5.256_521_769_756_932;
/// Half-width, in spectral σ, of the frequency grid the experiments evaluate.
pub const GRID_SIGMAS: f64 = 6.5;
/// Minimum number of scan points that must fall inside the pulse band.
pub const MIN_BAND_POINTS: usize = 8;
/// Minimum ratio of time span to envelope width.
pub const MIN_SPAN_WIDTHS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Pulse {
    /// Carrier ν, Hz.
    pub carrier: f64,
    /// Envelope standard deviation σ_t, s.
    pub width: f64,
    /// Total time window, s.
    pub span: f64,
    /// Complex envelope samples at `t_n = n·span/N`.
    pub samples: Vec<Complex64>,
}

fn fft(data: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let plan = if inverse {
        planner.plan_fft_inverse(data.len())
    } else {
        planner.plan_fft_forward(data.len())
    };
    plan.process(data);
    if inverse {
        let n = data.len() as f64;
        data.iter_mut().for_each(|x| *x /= n);
    }
}

/// Signed bin offsets `f_k` in Hz, FFT order.
fn bin_offsets(n: usize, span: f64) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let k = if k < n / 2 { k as f64 } else { k as f64 - n as f64 };
            k / span
        })
        .collect()
}

impl Pulse {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.span / self.len() as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..self.len()).map(|n| n as f64 * dt).collect()
    }

    /// Spectral standard deviation σ_f = 1/(2πσ_t), Hz.
    pub fn spectral_width(&self) -> f64 {
        1.0 / (2.0 * PI * self.width)
    }

    /// Band `[ν − 5.26σ_f, ν + 5.26σ_f]` in Hz outside which the spectrum is below 10⁻⁶ of peak.
    pub fn band(&self) -> (f64, f64) {
        let h = BAND_SIGMAS * self.spectral_width();
        (self.carrier - h, self.carrier + h)
    }

    /// Absolute frequency of every FFT bin, Hz, FFT order.
    pub fn bin_frequencies(&self) -> Vec<f64> {
        bin_offsets(self.len(), self.span)
            .into_iter()
            .map(|f| self.carrier + f)
            .collect()
    }

    /// Ascending angular frequencies of the bins within `GRID_SIGMAS·σ_f` of the carrier.
    pub fn angular_grid(&self) -> Vec<f64> {
        let h = GRID_SIGMAS * self.spectral_width();
        let mut g: Vec<f64> = bin_offsets(self.len(), self.span)
            .into_iter()
            .filter(|f| f.abs() <= h)
            .map(|f| 2.0 * PI * (self.carrier + f))
            .collect();
        g.sort_by(f64::total_cmp);
        g
    }

    /// Unnormalised DFT of the samples, FFT order.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut x = self.samples.clone();
        fft(&mut x, false);
        x
    }

    /// Σ|a_n|².
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|x| x.norm_sqr()).sum()
    }

    /// (1/N)·Σ|A_k|²; equals [`energy`](Self::energy) by Parseval.
    pub fn spectral_energy(&self) -> f64 {
        self.spectrum().iter().map(|x| x.norm_sqr()).sum::<f64>() / self.len() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|x| *x == Complex64::new(0.0, 0.0))
    }

    fn with_samples(&self, samples: Vec<Complex64>) -> Pulse {
        Pulse {
            samples,
            ..self.clone()
        }
    }

    /// Copy delayed by `delay` seconds (circularly), via the shift theorem.
    pub fn delayed(&self, delay: f64) -> Pulse {
        let mut x = self.spectrum();
        for (a, f) in x.iter_mut().zip(bin_offsets(self.len(), self.span)) {
            *a *= Complex64::from_polar(1.0, -2.0 * PI * f * delay);
        }
        fft(&mut x, true);
        self.with_samples(x)
    }
}

/// Gaussian-envelope analytic pulse centred at `span/2`.
pub fn synthesize(carrier: f64, width: f64, samples: usize, span: f64) -> Result<Pulse> {
    if !(carrier > 0.0 && carrier.is_finite()) {
        return Err(Error::Config(format!("carrier must be > 0 Hz, got {carrier}")));
    }
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::Config(format!(
            "envelope width must be > 0 s, got {width}"
        )));
    }
    if samples < 4 || !samples.is_power_of_two() {
        return Err(Error::Config(format!(
            "sample count must be a power of two >= 4, got {samples}"
        )));
    }
    if !(span > MIN_SPAN_WIDTHS * width) {
        return Err(Error::Config(format!(
            "time span {span:e} s must exceed {MIN_SPAN_WIDTHS}·σ_t = {:e} s",
            MIN_SPAN_WIDTHS * width
        )));
    }
    let sigma_f = 1.0 / (2.0 * PI * width);
    let need = BAND_SIGMAS * sigma_f;
    let have = samples as f64 / (2.0 * span);
    if need >= have {
        return Err(Error::Band(format!(
            "pulse needs ±{need:e} Hz around the carrier but {samples} samples over {span:e} s resolve only ±{have:e} Hz"
        )));
    }
    if carrier <= need {
        return Err(Error::Band(format!(
            "pulse band [{:e}, {:e}] Hz reaches non-positive frequencies",
            carrier - need,
            carrier + need
        )));
    }
    let dt = span / samples as f64;
    let t0 = span / 2.0;
    let data = (0..samples)
        .map(|n| {
            let x = (n as f64 * dt - t0) / width;
            Complex64::new((-0.5 * x * x).exp(), 0.0)
        })
        .collect();
    Ok(Pulse {
        carrier,
        width,
        span,
        samples: data,
    })
}

fn interpolate(grid: &[f64], values: &[Complex64], x: f64) -> Complex64 {
    let n = grid.len();
    if x <= grid[0] {
        return values[0];
    }
    if x >= grid[n - 1] {
        return values[n - 1];
    }
    let i = grid.partition_point(|g| *g <= x) - 1;
    let u = (x - grid[i]) / (grid[i + 1] - grid[i]);
    values[i] * (1.0 - u) + values[i + 1] * u
}

/// Transmitted and reflected pulses for a scanned stack response.
///
/// The scan must cover the pulse band with at least [`MIN_BAND_POINTS`]
/// points inside it; bins outside the scan reuse the nearest end value.
pub fn propagate(pulse: &Pulse, spectrum: &ScatterSpectrum) -> Result<(Pulse, Pulse)> {
    if spectrum.field_kind == FieldKind::Quantum {
        return Err(Error::Band(
            "pulses propagate on angular-frequency grids only".into(),
        ));
    }
    let (lo, hi) = pulse.band();
    let (wlo, whi) = (2.0 * PI * lo, 2.0 * PI * hi);
    let grid = &spectrum.grid;
    if grid.is_empty() || grid[0] > wlo || grid[grid.len() - 1] < whi {
        return Err(Error::Band(format!(
            "spectrum must cover the pulse band [{wlo:e}, {whi:e}] rad/s",
        )));
    }
    let inside = grid.iter().filter(|w| (wlo..=whi).contains(*w)).count();
    if inside < MIN_BAND_POINTS {
        return Err(Error::Band(format!(
            "only {inside} scan points inside the pulse band, need {MIN_BAND_POINTS}"
        )));
    }
    let t: Vec<Complex64> = spectrum.amplitudes.iter().map(|a| a.t).collect();
    let r: Vec<Complex64> = spectrum.amplitudes.iter().map(|a| a.r).collect();
    let input = pulse.spectrum();
    let mut xt = Vec::with_capacity(input.len());
    let mut xr = Vec::with_capacity(input.len());
    for (a, f) in input.iter().zip(pulse.bin_frequencies()) {
        let w = 2.0 * PI * f;
        xt.push(a * interpolate(grid, &t, w));
        xr.push(a * interpolate(grid, &r, w));
    }
    fft(&mut xt, true);
    fft(&mut xr, true);
    Ok((pulse.with_samples(xt), pulse.with_samples(xr)))
}

#[derive(Debug, Clone, Copy)]
pub enum ArrivalMethod<'a> {
    /// Parabolic interpolation of ln|a| around the envelope maximum.
    Peak,
    /// Energy-weighted mean time.
    Centroid,
    /// Peak time of the reference plus the lag of maximal correlation with it.
    CrossCorrelation(&'a Pulse),
}

/// Vertex offset of the parabola through (−1, a), (0, b), (1, c).
fn vertex(a: f64, b: f64, c: f64) -> f64 {
    let den = a - 2.0 * b + c;
    if den == 0.0 {
        0.0
    } else {
        (0.5 * (a - c) / den).clamp(-0.5, 0.5)
    }
}

fn refine_peak(values: &[f64]) -> f64 {
    let n = values.len();
    let i = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let (a, b, c) = (values[(i + n - 1) % n], values[i], values[(i + 1) % n]);
    let delta = if a > 0.0 && c > 0.0 {
        vertex(a.ln(), b.ln(), c.ln())
    } else {
        vertex(a, b, c)
    };
    i as f64 + delta
}

/// Arrival time of a pulse, seconds from the start of its window.
pub fn arrival_time(pulse: &Pulse, method: ArrivalMethod<'_>) -> Result<f64> {
    if pulse.is_zero() {
        return Err(Error::Domain("arrival time of an all-zero signal".into()));
    }
    let dt = pulse.dt();
    match method {
        ArrivalMethod::Peak => {
            let env: Vec<f64> = pulse.samples.iter().map(|x| x.norm()).collect();
            Ok(refine_peak(&env) * dt)
        }
        ArrivalMethod::Centroid => {
            let (num, den) = pulse
                .samples
                .iter()
                .enumerate()
                .fold((0.0, 0.0), |(num, den), (n, x)| {
                    let p = x.norm_sqr();
                    (num + n as f64 * dt * p, den + p)
                });
            Ok(num / den)
        }
        ArrivalMethod::CrossCorrelation(reference) => {
            if reference.len() != pulse.len() || reference.span != pulse.span {
                return Err(Error::Config("cross-correlation needs matching sampling".into()));
            }
            let x = pulse.spectrum();
            let mut c: Vec<Complex64> = x
                .iter()
                .zip(reference.spectrum())
                .map(|(a, b)| a * b.conj())
                .collect();
            fft(&mut c, true);
            let mag: Vec<f64> = c.iter().map(|z| z.norm()).collect();
            let n = pulse.len() as f64;
            let mut lag = refine_peak(&mag);
            if lag >= n / 2.0 {
                lag -= n;
            }
            Ok(arrival_time(reference, ArrivalMethod::Peak)? + lag * dt)
        }
    }
}

/// Arrival times by all three methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrivalTimes {
    pub peak: f64,
    pub centroid: f64,
    pub cross_correlation: f64,
}

impl ArrivalTimes {
    pub fn measure(pulse: &Pulse, reference: &Pulse) -> Result<Self> {
        Ok(ArrivalTimes {
            peak: arrival_time(pulse, ArrivalMethod::Peak)?,
            centroid: arrival_time(pulse, ArrivalMethod::Centroid)?,
            cross_correlation: arrival_time(pulse, ArrivalMethod::CrossCorrelation(reference))?,
        })
    }
}

/// Relative L2 distance between unit-energy envelopes after removing the delay.
pub fn reshaping(pulse: &Pulse, reference: &Pulse, delay: f64) -> f64 {
    let aligned = pulse.delayed(-delay);
    let norm = |p: &Pulse| p.energy().sqrt();
    let (na, nb) = (norm(&aligned), norm(reference));
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    aligned
        .samples
        .iter()
        .zip(&reference.samples)
        .map(|(a, b)| (a.norm() / na - b.norm() / nb).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Arrival summary of one pulse experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalReport {
    pub input: ArrivalTimes,
    pub transmitted: ArrivalTimes,
    /// `None` when no reflected signal exists (e.g. a zero-thickness gap).
    pub reflected: Option<ArrivalTimes>,
    /// Transmitted cross-correlation delay relative to the input.
    pub cross_correlation_delay: f64,
    pub reshaping: f64,
    pub input_energy: f64,
    pub transmitted_energy: f64,
    pub reflected_energy: f64,
    /// Carrier period 1/ν.
    pub period: f64,
}

impl ArrivalReport {
    /// Transmitted peak delay relative to the input peak.
    pub fn transmitted_delay(&self) -> f64 {
        self.transmitted.peak - self.input.peak
    }

    pub fn reflected_delay(&self) -> Option<f64> {
        self.reflected.map(|r| r.peak - self.input.peak)
    }

    /// Extra time of the transmitted signal over the reflected one (peak method).
    pub fn t_perp(&self) -> Option<f64> {
        self.reflected.map(|r| self.transmitted.peak - r.peak)
    }
}

/// Output of [`pulse_experiment`]: pulses and their arrival summary.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseRun {
    pub input: Pulse,
    pub transmitted: Pulse,
    pub reflected: Pulse,
    pub report: ArrivalReport,
}

/// Sends `pulse` through `stack`, evaluating the stack on the pulse's own bins.
pub fn pulse_experiment(stack: &Stack, pulse: &Pulse) -> Result<PulseRun> {
    let spectrum = transmission_scan(stack, &pulse.angular_grid())?;
    let (transmitted, reflected) = propagate(pulse, &spectrum)?;
    let input = ArrivalTimes::measure(pulse, pulse)?;
    let tr = ArrivalTimes::measure(&transmitted, pulse)?;
    let rf = if reflected.is_zero() {
        None
    } else {
        Some(ArrivalTimes::measure(&reflected, pulse)?)
    };
    let delay = tr.cross_correlation - input.cross_correlation;
    let report = ArrivalReport {
        input,
        transmitted: tr,
        reflected: rf,
        cross_correlation_delay: delay,
        reshaping: reshaping(&transmitted, pulse, delay),
        input_energy: pulse.energy(),
        transmitted_energy: transmitted.energy(),
        reflected_energy: reflected.energy(),
        period: 1.0 / pulse.carrier,
    };
    Ok(PulseRun {
        input: pulse.clone(),
        transmitted,
        reflected,
        report,
    })
}

/// Double-prism experiment: prism / gap / prism at incidence angle `α`,
/// with the tangential wavenumber pinned at the carrier.
///
/// Both outputs are referred to the front face of the gap, which is the
/// 1D image of the symmetric beam paths: equal transmitted and reflected
/// arrival means no time is spent crossing the gap.
pub fn symmetric_ftir_experiment(
    gap: &Layer,
    prisms: &Medium,
    incidence_angle: f64,
    pulse: &Pulse,
) -> Result<PulseRun> {
    let real_index = |m: &Medium, what: &str| match m.refractive_index() {
        Some(n) if n.im == 0.0 && n.re > 0.0 => Ok(n.re),
        _ => Err(Error::Config(format!("{what} must be a lossless dielectric"))),
    };
    let n1 = real_index(prisms, "prism medium")?;
    let n2 = real_index(&gap.medium, "gap medium")?;
    let w0 = 2.0 * PI * pulse.carrier;
    let geom = FtirGeometry::new(incidence_angle, n1, n2)?.pinned_at(w0)?;
    let ctx = WaveContext::electromagnetic(w0)?.with_geometry(Some(Geometry::Ftir(geom)))?;
    if !is_evanescent(wavenumber(&gap.medium, &ctx)?) {
        return Err(Error::Domain(format!(
            "gap is not evanescent at the carrier: (n₁/n₂)·sin α = {} ≤ 1",
            geom.snell_ratio()
        )));
    }
    let stack = Stack::single_barrier(*prisms, *gap, Some(Geometry::Ftir(geom)))?;
    pulse_experiment(&stack, pulse)
}
