use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::SurfacePatch;
use crate::error::{Error, Result};

fn header_lines(patch: &SurfacePatch) -> Vec<String> {
    let alpha = patch
        .alpha
        .map(|[re, im]| format!("{re}{im:+}i"))
        .unwrap_or_else(|| "none".into());
    let surface = if patch.lorentzian {
        "<x,x>_L = -1"
    } else {
        "|x|^2 = 1"
    };
    vec![
        format!("minimorph {} surface patch", env!("CARGO_PKG_VERSION")),
        format!("map: {}", patch.label),
        format!("alpha: {alpha}"),
        format!("identity: Phi(x) = alpha on {surface} (fiber of a harmonic morphism)"),
        "identity: mean curvature H = 1/2 sum_i normal part of (x(+h e_i) + x(-h e_i) - 2x) / h^2"
            .into(),
        format!("seed point: {:?}", patch.seed_point),
        format!(
            "grid: {}x{}, step {}",
            patch.steps.0, patch.steps.1, patch.h
        ),
        format!(
            "curvature step: {}",
            patch
                .curvature_step
                .map_or("none".into(), |h| h.to_string())
        ),
    ]
}

fn curvature_value(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), |h| format!("{h:e}"))
}

/// ASCII PLY point cloud with `x1 .. x5` and a per-vertex `curvature`.
pub fn patch_to_ply(patch: &SurfacePatch) -> String {
    let mut s = String::from("ply\nformat ascii 1.0\n");
    for line in header_lines(patch) {
        let _ = writeln!(s, "comment {line}");
    }
    let _ = writeln!(s, "element vertex {}", patch.nodes.len());
    for k in 1..=5 {
        let _ = writeln!(s, "property double x{k}");
    }
    s.push_str("property double curvature\nend_header\n");
    for n in &patch.nodes {
        let coords: Vec<String> = n.sample.point.iter().map(|v| format!("{v:.17e}")).collect();
        let _ = writeln!(
            s,
            "{} {}",
            coords.join(" "),
            curvature_value(n.sample.mean_curvature_norm)
        );
    }
    s
}

/// CSV with a `#` header block, then `i,j,x1..x5,residual,h_norm`.
pub fn patch_to_csv(patch: &SurfacePatch) -> String {
    let mut s = String::new();
    for line in header_lines(patch) {
        let _ = writeln!(s, "# {line}");
    }
    s.push_str("i,j,x1,x2,x3,x4,x5,residual,h_norm\n");
    for n in &patch.nodes {
        let coords: Vec<String> = n.sample.point.iter().map(|v| format!("{v:.17e}")).collect();
        let _ = writeln!(
            s,
            "{},{},{},{:e},{}",
            n.i,
            n.j,
            coords.join(","),
            n.sample.residual_norm,
            curvature_value(n.sample.mean_curvature_norm)
        );
    }
    s
}

#[derive(Serialize)]
struct PatchJson<'a> {
    header: Vec<String>,
    patch: &'a SurfacePatch,
}

pub fn patch_to_json(patch: &SurfacePatch) -> Result<String> {
    serde_json::to_string_pretty(&PatchJson {
        header: header_lines(patch),
        patch,
    })
    .map_err(|e| Error::Io(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatchFiles {
    pub ply: PathBuf,
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Writes `<stem>.ply`, `<stem>.csv` and `<stem>.json` into `dir`.
pub fn write_patch_files(patch: &SurfacePatch, dir: &Path, stem: &str) -> Result<PatchFiles> {
    fs::create_dir_all(dir)?;
    let files = PatchFiles {
        ply: dir.join(format!("{stem}.ply")),
        csv: dir.join(format!("{stem}.csv")),
        json: dir.join(format!("{stem}.json")),
    };
    fs::write(&files.ply, patch_to_ply(patch))?;
    fs::write(&files.csv, patch_to_csv(patch))?;
    fs::write(&files.json, patch_to_json(patch)?)?;
    Ok(files)
}
