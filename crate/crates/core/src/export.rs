//! Deterministic text export: fixed-precision float formatting, CSV tables,
//! and OBJ meshes. Same inputs always produce byte-identical output; no
//! timestamps, no locale, fixed column and vertex ordering.

use std::fmt::Write as _;

/// Formats with twelve significant digits in plain decimal notation.
pub fn fmt_sig(x: f64) -> String {
    fmt_sig_n(x, 12)
}

pub fn fmt_sig_n(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// A CSV table with a fixed header, LF line endings.
pub struct CsvWriter {
    out: String,
    columns: usize,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> CsvWriter {
        let mut out = String::new();
        out.push_str(&header.join(","));
        out.push('\n');
        CsvWriter {
            out,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns, "csv row width mismatch");
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Rectangular grid mesh in Wavefront OBJ form. Vertices are emitted in
/// s-major order; each grid cell becomes two triangles with right-handed
/// winding. Singular grid points are dropped entirely — no vertex, no faces
/// — so the vertex count is `s_count * v_count` minus the drops; the
/// returned sidecar lists them as `i j s v` lines.
pub struct ObjMesh {
    /// `positions[i * v_count + j]` in s-major order.
    pub positions: Vec<[f64; 3]>,
    /// Grid points to drop.
    pub singular: Vec<bool>,
    pub s_values: Vec<f64>,
    pub v_values: Vec<f64>,
    pub name: String,
}

impl ObjMesh {
    pub fn write(&self) -> (String, String) {
        let (ns, nv) = (self.s_values.len(), self.v_values.len());
        let mut obj = String::new();
        let _ = writeln!(obj, "o {}", self.name);
        let mut sidecar = String::new();
        // Grid index -> 1-based OBJ vertex index, skipping dropped points.
        let mut vertex_no = vec![0usize; ns * nv];
        let mut next = 0usize;
        for i in 0..ns {
            for j in 0..nv {
                if self.singular[i * nv + j] {
                    let _ = writeln!(
                        sidecar,
                        "{} {} {} {}",
                        i,
                        j,
                        fmt_sig(self.s_values[i]),
                        fmt_sig(self.v_values[j])
                    );
                    continue;
                }
                let p = self.positions[i * nv + j];
                let _ = writeln!(
                    obj,
                    "v {} {} {}",
                    fmt_sig(p[0]),
                    fmt_sig(p[1]),
                    fmt_sig(p[2])
                );
                next += 1;
                vertex_no[i * nv + j] = next;
            }
        }
        let idx = |i: usize, j: usize| i * nv + j;
        for i in 0..ns.saturating_sub(1) {
            for j in 0..nv.saturating_sub(1) {
                let corners = [idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)];
                if corners.iter().any(|&c| vertex_no[c] == 0) {
                    continue;
                }
                let _ = writeln!(
                    obj,
                    "f {} {} {}",
                    vertex_no[corners[0]],
                    vertex_no[corners[1]],
                    vertex_no[corners[2]]
                );
                let _ = writeln!(
                    obj,
                    "f {} {} {}",
                    vertex_no[corners[0]],
                    vertex_no[corners[2]],
                    vertex_no[corners[3]]
                );
            }
        }
        (obj, sidecar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.0), "1.00000000000");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(-2.5e-5), "-0.0000250000000000");
        assert_eq!(fmt_sig(123456.0), "123456.000000");
        assert_eq!(fmt_sig(f64::NAN), "nan");
    }

    #[test]
    fn csv_shape() {
        let mut w = CsvWriter::new(&["a", "b"]);
        w.row(&["1".into(), "2".into()]);
        assert_eq!(w.finish(), "a,b\n1,2\n");
    }

    #[test]
    fn obj_skips_faces_at_singular_vertices() {
        let mesh = ObjMesh {
            positions: vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 2.0, 0.0],
                [1.0, 2.0, 0.0],
            ],
            singular: vec![false, false, true, false, false, false],
            s_values: vec![0.0, 1.0, 2.0],
            v_values: vec![0.0, 1.0],
            name: "test".into(),
        };
        let (obj, sidecar) = mesh.write();
        // Both quads touch the singular point (1,0): no faces at all, and
        // the vertex count is the grid size minus the drop.
        assert!(!obj.contains("\nf "));
        assert_eq!(obj.matches("\nv ").count(), 5);
        assert!(sidecar.starts_with("1 0 "));
    }

    #[test]
    fn obj_vertex_count_is_rectangular() {
        let mesh = ObjMesh {
            positions: vec![[0.0; 3]; 6],
            singular: vec![false; 6],
            s_values: vec![0.0, 1.0],
            v_values: vec![0.0, 0.5, 1.0],
            name: "grid".into(),
        };
        let (obj, sidecar) = mesh.write();
        assert_eq!(obj.matches("\nv ").count(), 6);
        assert_eq!(obj.matches("\nf ").count(), 4);
        assert!(sidecar.is_empty());
    }
}
