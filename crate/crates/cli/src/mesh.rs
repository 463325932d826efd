use std::io::{self, Write};

use pseudoiso::Vec3;

/// A structured quad mesh with optional per-vertex scalar fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices, counter-clockwise in parameter space.
    pub quads: Vec<[usize; 4]>,
    pub scalars: Vec<(String, Vec<f64>)>,
}

impl Mesh {
    /// Connects an `nu x nv` row-major vertex grid (`v` fastest).
    pub fn grid(vertices: Vec<Vec3>, nu: usize, nv: usize) -> Mesh {
        assert_eq!(vertices.len(), nu * nv, "vertex count must be nu * nv");
        let id = |i: usize, j: usize| i * nv + j;
        let mut quads = Vec::with_capacity((nu - 1) * (nv - 1));
        for i in 0..nu - 1 {
            for j in 0..nv - 1 {
                quads.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
        Mesh {
            vertices,
            quads,
            scalars: Vec::new(),
        }
    }

    pub fn with_scalar(mut self, name: &str, values: Vec<f64>) -> Mesh {
        assert_eq!(values.len(), self.vertices.len());
        self.scalars.push((name.to_string(), values));
        self
    }

    pub fn is_valid(&self) -> bool {
        let n = self.vertices.len();
        self.vertices.iter().all(Vec3::is_finite)
            && self.quads.iter().flatten().all(|&i| i < n)
            && self.scalars.iter().all(|(_, v)| v.len() == n)
    }

    /// `v` lines, then `f` lines with one-based indices.
    pub fn write_obj<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {:?} {:?} {:?}", v.x, v.y, v.z)?;
        }
        for q in &self.quads {
            writeln!(w, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)?;
        }
        Ok(())
    }

    /// One row per vertex: `x,y,z` and the scalar fields.
    pub fn write_vertex_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        write!(w, "x,y,z")?;
        for (name, _) in &self.scalars {
            write!(w, ",{name}")?;
        }
        writeln!(w)?;
        for (i, v) in self.vertices.iter().enumerate() {
            write!(w, "{:?},{:?},{:?}", v.x, v.y, v.z)?;
            for (_, vals) in &self.scalars {
                write!(w, ",{:?}", vals[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
