use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::newton::{fixed_points, FixedPointRecord};
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use crate::Error;

use super::orbit::Attractors;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "NEWTON_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    #[serde(with = "crate::report::complex")]
    pub center: Complex64,
    pub half_width: f64,
    pub half_height: f64,
}

impl Window {
    pub fn new(center: Complex64, half_width: f64, half_height: f64) -> Result<Self, Error> {
        let ok = [center.re, center.im, half_width, half_height]
            .iter()
            .all(|x| x.is_finite())
            && half_width > 0.0
            && half_height > 0.0;
        if !ok {
            return Err(Error::InvalidArgument(
                "window needs finite center and positive extents".into(),
            ));
        }
        Ok(Self {
            center,
            half_width,
            half_height,
        })
    }

    /// The square `[-h, h]^2`.
    pub fn square(h: f64) -> Self {
        Self {
            center: Complex64::new(0.0, 0.0),
            half_width: h,
            half_height: h,
        }
    }
}

/// Per-pixel basin labels. Row `j = 0` is the top edge of the window.
#[derive(Clone, Debug, Serialize)]
pub struct BasinGrid {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub cap: usize,
    /// Index into `fp_table`, or `None` for undecided and escaped pixels.
    #[serde(skip)]
    pub labels: Vec<Option<u32>>,
    pub fp_table: Vec<FixedPointRecord>,
}

fn pixel_center(w: &Window, width: usize, height: usize, i: usize, j: usize) -> Complex64 {
    let x = w.center.re - w.half_width + (i as f64 + 0.5) * 2.0 * w.half_width / width as f64;
    let y = w.center.im + w.half_height - (j as f64 + 0.5) * 2.0 * w.half_height / height as f64;
    Complex64::new(x, y)
}

impl BasinGrid {
    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        pixel_center(&self.window, self.width, self.height, i, j)
    }

    pub fn label_at(&self, i: usize, j: usize) -> Option<u32> {
        self.labels[j * self.width + i]
    }

    /// Pixel whose cell contains `z`, if inside the window.
    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let w = &self.window;
        let fx = (z.re - (w.center.re - w.half_width)) / (2.0 * w.half_width) * self.width as f64;
        let fy =
            ((w.center.im + w.half_height) - z.im) / (2.0 * w.half_height) * self.height as f64;
        if fx < 0.0 || fy < 0.0 || fx >= self.width as f64 || fy >= self.height as f64 {
            return None;
        }
        Some((fx as usize, fy as usize))
    }

    pub fn undecided_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }

    /// Pixel count per fixed-point index.
    pub fn label_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for l in self.labels.iter().flatten() {
            *out.entry(*l).or_insert(0) += 1;
        }
        out
    }
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&t: &usize| t > 0)
}

/// Labels every pixel center of `window` by the attracting fixed point its
/// orbit reaches within `cap` steps. Honors `NEWTON_THREADS`.
pub fn basin_grid(
    n: &RationalMap,
    window: Window,
    width: usize,
    height: usize,
    cap: usize,
) -> Result<BasinGrid, Error> {
    basin_grid_with_threads(n, window, width, height, cap, threads_from_env())
}

/// As [`basin_grid`] with an explicit worker count (`None` = rayon default).
/// The result does not depend on the thread count.
pub fn basin_grid_with_threads(
    n: &RationalMap,
    window: Window,
    width: usize,
    height: usize,
    cap: usize,
    threads: Option<usize>,
) -> Result<BasinGrid, Error> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let fp_table = fixed_points(n)?;
    let attractors = Attractors::new(&fp_table);
    if attractors.is_empty() {
        return Err(Error::NotApplicable(
            "map has no attracting fixed point".into(),
        ));
    }
    let compute = || -> Vec<Option<u32>> {
        (0..height)
            .into_par_iter()
            .flat_map_iter(|j| {
                let attractors = &attractors;
                (0..width).map(move |i| {
                    let z = pixel_center(&window, width, height, i, j);
                    attractors
                        .run(n, SpherePoint::Finite(z), cap)
                        .converged_to()
                        .map(|k| k as u32)
                })
            })
            .collect()
    };
    let labels = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };
    Ok(BasinGrid {
        window,
        width,
        height,
        cap,
        labels,
        fp_table,
    })
}

/// Grid approximation of the immediate basin of `fp_table[index]`: the
/// 4-connected component of equally labeled pixels containing the pixel of
/// the fixed point. `None` when the point is at infinity, outside the
/// window, or its own pixel carries another label.
pub fn immediate_basin(grid: &BasinGrid, index: usize) -> Option<Vec<bool>> {
    let z = grid.fp_table.get(index)?.location.as_finite()?;
    let (i0, j0) = grid.pixel_of(z)?;
    let label = Some(index as u32);
    if grid.label_at(i0, j0) != label {
        return None;
    }
    let (w, h) = (grid.width, grid.height);
    let mut mask = vec![false; w * h];
    let mut stack = vec![(i0, j0)];
    mask[j0 * w + i0] = true;
    while let Some((i, j)) = stack.pop() {
        let mut visit = |a: usize, b: usize| {
            let k = b * w + a;
            if !mask[k] && grid.labels[k] == label {
                mask[k] = true;
                stack.push((a, b));
            }
        };
        if i > 0 {
            visit(i - 1, j);
        }
        if i + 1 < w {
            visit(i + 1, j);
        }
        if j > 0 {
            visit(i, j - 1);
        }
        if j + 1 < h {
            visit(i, j + 1);
        }
    }
    Some(mask)
}
