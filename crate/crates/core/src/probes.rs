//! Seeded probe charts into `P`, `P^[k]` and `(LG⋊S¹)^k`.

use rand::Rng;

use crate::bundle::{BundleFamily, BundlePoint, FibreProductFamily};
use crate::caloron::{CaloronFamily, CaloronPoint};
use crate::error::Result;
use crate::fields::{GroupFamily, PointFamily, SdFamily};
use crate::forms::{Grid, ProbeChart};
use crate::loops::SdElem;

/// Shape of a seeded probe family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeShape {
    /// Loop sample count.
    pub len: usize,
    /// Base dimension `m` of `U`.
    pub base_dim: usize,
    /// Chart dimension `d`.
    pub chart_dim: usize,
    /// Side length of the chart image in base and Lie-algebra coordinates.
    pub extent: f64,
    /// Loop amplitude of fiber families.
    pub amplitude: f64,
    /// Confine loops to the diagonal torus.
    pub torus: bool,
}

impl ProbeShape {
    pub fn base_family<R: Rng + ?Sized>(&self, rng: &mut R) -> PointFamily {
        PointFamily::seeded(rng, self.chart_dim, self.base_dim, self.extent)
    }

    pub fn fiber_family<const N: usize, R: Rng + ?Sized>(&self, rng: &mut R) -> SdFamily<N> {
        SdFamily::seeded(rng, self.len, self.chart_dim, self.amplitude, self.extent, self.torus)
    }
}

/// Seeded chart into `P`.
pub fn bundle_chart<const N: usize, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &ProbeShape,
    res: usize,
) -> Result<ProbeChart<BundlePoint<N>>> {
    let family = BundleFamily {
        base: shape.base_family(rng),
        fiber: shape.fiber_family::<N, _>(rng),
    };
    Ok(ProbeChart::new(Grid::uniform(shape.chart_dim, res)?, move |x| {
        family.eval(x)
    }))
}

/// Seeded chart into `P^[k]`.
pub fn fibre_product_chart<const N: usize, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &ProbeShape,
    k: usize,
    res: usize,
) -> Result<ProbeChart<Vec<BundlePoint<N>>>> {
    let family = FibreProductFamily {
        base: shape.base_family(rng),
        fibers: (0..k).map(|_| shape.fiber_family::<N, _>(rng)).collect(),
    };
    Ok(ProbeChart::new(Grid::uniform(shape.chart_dim, res)?, move |x| {
        family.eval(x)
    }))
}

/// Seeded chart into `(LG⋊S¹)^k`.
pub fn group_power_chart<const N: usize, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &ProbeShape,
    k: usize,
    res: usize,
) -> Result<ProbeChart<Vec<SdElem<N>>>> {
    let families: Vec<SdFamily<N>> = (0..k).map(|_| shape.fiber_family::<N, _>(rng)).collect();
    Ok(ProbeChart::new(Grid::uniform(shape.chart_dim, res)?, move |x| {
        families.iter().map(|f| f.eval(x)).collect()
    }))
}

/// Chart along the canonical section over a seeded base family.
pub fn section_chart<const N: usize, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &ProbeShape,
    res: usize,
) -> Result<ProbeChart<BundlePoint<N>>> {
    let base = shape.base_family(rng);
    let len = shape.len;
    Ok(ProbeChart::new(Grid::uniform(shape.chart_dim, res)?, move |x| {
        BundlePoint::section(base.eval(x), len)
    }))
}

/// Seeded chart into `P × G × S¹`.
pub fn caloron_chart<const N: usize, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &ProbeShape,
    res: usize,
) -> Result<ProbeChart<CaloronPoint<N>>> {
    let family = CaloronFamily {
        bundle: BundleFamily {
            base: shape.base_family(rng),
            fiber: shape.fiber_family::<N, _>(rng),
        },
        g: GroupFamily::seeded(rng, shape.chart_dim, shape.amplitude, shape.extent),
        theta: PointFamily::seeded(rng, shape.chart_dim, 1, shape.extent),
    };
    Ok(ProbeChart::new(Grid::uniform(shape.chart_dim, res)?, move |x| {
        family.eval(x)
    }))
}
