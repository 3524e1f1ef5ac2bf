//! Discrete-Fourier calculus on periodic samples `f(2πj/L)`, `j = 0..L`.
//!
//! The Nyquist mode of an even-length signal is treated as the real cosine
//! `cos(Lφ/2)`: it is dropped by the derivative and evaluated as a cosine
//! when shifting or interpolating.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use rustfft::{Fft, FftPlanner};

use crate::lie::{Mat, C64};

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

static PLANS: LazyLock<Mutex<HashMap<usize, Arc<Plans>>>> = LazyLock::new(Default::default);

fn plans(len: usize) -> Arc<Plans> {
    let mut cache = PLANS.lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry(len)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plans {
                forward: planner.plan_fft_forward(len),
                inverse: planner.plan_fft_inverse(len),
            })
        })
        .clone()
}

/// Signed wavenumber of FFT bin `j`; `None` for the Nyquist bin.
fn wavenumber(j: usize, len: usize) -> Option<f64> {
    if 2 * j == len {
        None
    } else if 2 * j < len {
        Some(j as f64)
    } else {
        Some(j as f64 - len as f64)
    }
}

/// Multiplier applied to bin `j` when shifting `f(φ) ↦ f(φ + s)`.
fn shift_factor(j: usize, len: usize, s: f64) -> C64 {
    match wavenumber(j, len) {
        Some(k) => C64::from_polar(1.0, k * s),
        None => C64::new((len as f64 * s / 2.0).cos(), 0.0),
    }
}

/// Channel-major complex buffer: `buf[c·L + j]` holds channel `c` at sample `j`.
fn transform_channels(buf: &mut [C64], len: usize, f: impl Fn(usize) -> C64) {
    let p = plans(len);
    p.forward.process(buf);
    let norm = 1.0 / len as f64;
    for chunk in buf.chunks_mut(len) {
        for (j, z) in chunk.iter_mut().enumerate() {
            *z *= f(j) * norm;
        }
    }
    p.inverse.process(buf);
}

fn mats_to_channels<const N: usize>(samples: &[Mat<N>]) -> Vec<C64> {
    let len = samples.len();
    let mut buf = vec![C64::new(0.0, 0.0); len * N * N];
    for (j, m) in samples.iter().enumerate() {
        for a in 0..N {
            for b in 0..N {
                buf[(a * N + b) * len + j] = m.0[a][b];
            }
        }
    }
    buf
}

fn channels_to_mats<const N: usize>(buf: &[C64], len: usize) -> Vec<Mat<N>> {
    (0..len)
        .map(|j| {
            let mut m = Mat::zero();
            for a in 0..N {
                for b in 0..N {
                    m.0[a][b] = buf[(a * N + b) * len + j];
                }
            }
            m
        })
        .collect()
}

fn map_mats<const N: usize>(samples: &[Mat<N>], f: impl Fn(usize) -> C64) -> Vec<Mat<N>> {
    let len = samples.len();
    if len == 0 {
        return Vec::new();
    }
    let mut buf = mats_to_channels(samples);
    transform_channels(&mut buf, len, f);
    channels_to_mats(&buf, len)
}

/// Spectral derivative `∂f` of a matrix-valued periodic signal.
pub fn derivative_mats<const N: usize>(samples: &[Mat<N>]) -> Vec<Mat<N>> {
    let len = samples.len();
    map_mats(samples, |j| match wavenumber(j, len) {
        Some(k) => C64::new(0.0, k),
        None => C64::new(0.0, 0.0),
    })
}

/// Samples of `φ ↦ f(φ + s)` from the trigonometric interpolant.
pub fn shift_mats<const N: usize>(samples: &[Mat<N>], s: f64) -> Vec<Mat<N>> {
    let len = samples.len();
    map_mats(samples, |j| shift_factor(j, len, s))
}

/// Value of the trigonometric interpolant at an arbitrary angle.
pub fn eval_mats<const N: usize>(samples: &[Mat<N>], phi: f64) -> Mat<N> {
    let len = samples.len();
    let mut buf = mats_to_channels(samples);
    plans(len).forward.process(&mut buf);
    let weights: Vec<C64> = (0..len).map(|j| shift_factor(j, len, phi) / len as f64).collect();
    let mut m = Mat::zero();
    for a in 0..N {
        for b in 0..N {
            let chan = &buf[(a * N + b) * len..(a * N + b + 1) * len];
            m.0[a][b] = chan.iter().zip(&weights).map(|(c, w)| c * w).sum();
        }
    }
    m
}

/// Spectral derivative of a real periodic signal.
pub fn derivative_real(samples: &[f64]) -> Vec<f64> {
    let len = samples.len();
    let mut buf: Vec<C64> = samples.iter().map(|&x| C64::new(x, 0.0)).collect();
    transform_channels(&mut buf, len, |j| match wavenumber(j, len) {
        Some(k) => C64::new(0.0, k),
        None => C64::new(0.0, 0.0),
    });
    buf.iter().map(|z| z.re).collect()
}

/// Shift a real periodic signal: samples of `φ ↦ f(φ + s)`.
pub fn shift_real(samples: &[f64], s: f64) -> Vec<f64> {
    let len = samples.len();
    let mut buf: Vec<C64> = samples.iter().map(|&x| C64::new(x, 0.0)).collect();
    transform_channels(&mut buf, len, |j| shift_factor(j, len, s));
    buf.iter().map(|z| z.re).collect()
}

/// Angle of sample `j` out of `len`.
pub fn node_angle(j: usize, len: usize) -> f64 {
    2.0 * std::f64::consts::PI * j as f64 / len as f64
}

/// If `s` is an integer multiple of the sample spacing, that integer modulo `len`.
pub fn grid_offset(s: f64, len: usize) -> Option<usize> {
    let steps = s * len as f64 / (2.0 * std::f64::consts::PI);
    let r = steps.round();
    if (steps - r).abs() < 1e-12 * (1.0 + steps.abs()) {
        Some((r as i64).rem_euclid(len as i64) as usize)
    } else {
        None
    }
}
