//! Basin images: binary PPM (P6) with a fixed palette, and a JSON sidecar.

use std::io::{self, Write};

use serde_json::{json, Value};

use crate::dynamics::BasinGrid;
use crate::report::SCHEMA_VERSION;

/// Color of fixed-point index `k` is `PALETTE[k % PALETTE.len()]`.
pub const PALETTE: [[u8; 3]; 12] = [
    [230, 25, 75],
    [60, 180, 75],
    [0, 130, 200],
    [255, 225, 25],
    [245, 130, 48],
    [145, 30, 180],
    [70, 240, 240],
    [240, 50, 230],
    [210, 245, 60],
    [250, 190, 190],
    [0, 128, 128],
    [170, 110, 40],
];

/// Undecided and escaped pixels.
pub const UNDECIDED: [u8; 3] = [0, 0, 0];

pub fn color(label: Option<u32>) -> [u8; 3] {
    label.map_or(UNDECIDED, |k| PALETTE[k as usize % PALETTE.len()])
}

pub fn write_ppm<W: Write>(grid: &BasinGrid, mut out: W) -> io::Result<()> {
    write!(out, "P6\n{} {}\n255\n", grid.width, grid.height)?;
    let mut body = Vec::with_capacity(grid.labels.len() * 3);
    for l in &grid.labels {
        body.extend_from_slice(&color(*l));
    }
    out.write_all(&body)
}

pub fn ppm_bytes(grid: &BasinGrid) -> Vec<u8> {
    let mut v = Vec::new();
    write_ppm(grid, &mut v).expect("writing to a Vec cannot fail");
    v
}

pub fn sidecar(grid: &BasinGrid) -> Value {
    let counts: serde_json::Map<String, Value> = grid
        .label_counts()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "window": grid.window,
        "resolution": [grid.width, grid.height],
        "cap": grid.cap,
        "fp_table": grid.fp_table,
        "palette": PALETTE,
        "undecided_count": grid.undecided_count(),
        "label_counts": counts,
    })
}
