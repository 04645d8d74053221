use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{curvatures, forms, SurfaceChart};
use crate::error::Result;
use crate::isotropic::Point3;
use crate::verify::GridSpec;

/// Grid samples of a chart: triangulated vertices with per-vertex curvatures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshExport {
    pub nu: usize,
    pub nv: usize,
    pub params: Vec<(f64, f64)>,
    pub vertices: Vec<Point3>,
    /// Zero-based vertex indices, two triangles per grid cell.
    pub faces: Vec<[usize; 3]>,
    pub k: Vec<f64>,
    pub h: Vec<f64>,
}

impl MeshExport {
    pub fn from_grid(chart: &SurfaceChart, grid: &GridSpec) -> Result<Self> {
        grid.check_within(chart)?;
        let params = grid.nodes();
        let samples: Vec<(Point3, f64, f64)> = params
            .par_iter()
            .map(|&(u, v)| {
                let (g, h) = forms(chart, u, v)?;
                let c = curvatures(&g, &h)?;
                Ok((chart.position(u, v)?, c.k, c.h))
            })
            .collect::<Result<_>>()?;
        let (nu, nv) = (grid.nu, grid.nv);
        let mut faces = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
        for i in 0..nu - 1 {
            for j in 0..nv - 1 {
                let a = i * nv + j;
                let (b, c, d) = (a + nv, a + nv + 1, a + 1);
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
        Ok(Self {
            nu,
            nv,
            params,
            vertices: samples.iter().map(|s| s.0).collect(),
            faces,
            k: samples.iter().map(|s| s.1).collect(),
            h: samples.iter().map(|s| s.2).collect(),
        })
    }

    /// OBJ with one `# vk <K>` comment after each vertex line.
    pub fn write_obj<W: Write>(&self, mut w: W, label: &str) -> io::Result<()> {
        writeln!(w, "# isokit mesh: {label}")?;
        writeln!(w, "# {} x {} grid", self.nu, self.nv)?;
        for (p, k) in self.vertices.iter().zip(&self.k) {
            writeln!(w, "v {:.16e} {:.16e} {:.16e}", p.x1, p.x2, p.x3)?;
            writeln!(w, "# vk {k:.16e}")?;
        }
        for f in &self.faces {
            writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
        }
        Ok(())
    }

    /// CSV `u,v,x1,x2,x3,K,H_def,H_s3`, where `H_s3 = 2 H_def`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "u,v,x1,x2,x3,K,H_def,H_s3")?;
        for (((uv, p), k), h) in self.params.iter().zip(&self.vertices).zip(&self.k).zip(&self.h) {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                uv.0,
                uv.1,
                p.x1,
                p.x2,
                p.x3,
                k,
                h,
                2.0 * h
            )?;
        }
        Ok(())
    }
}
