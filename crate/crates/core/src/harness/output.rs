use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::metrics::Profile;
use crate::error::{Error, Result};
use crate::schemes::{BoundarySpec, Scheme};

/// Twelve significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Writes `x,rho,q[,z]` with one row per cell, LF line endings.
pub fn write_profile_csv(path: &Path, profile: &Profile) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    let with_z = profile.z.is_some();
    writeln!(w, "{}", if with_z { "x,rho,q,z" } else { "x,rho,q" })?;
    for i in 0..profile.len() {
        write!(
            w,
            "{},{},{}",
            format_value(profile.x[i]),
            format_value(profile.rho[i]),
            format_value(profile.q[i])
        )?;
        if let Some(z) = &profile.z {
            write!(w, ",{}", format_value(z[i]))?;
        }
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a profile written by [`write_profile_csv`]. Domain bounds are inferred
/// from the (uniform) cell centers.
pub fn read_profile_csv(path: &Path) -> Result<Profile> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Io(format!("{}: empty file", path.display())))?;
    let with_z = match header.trim() {
        "x,rho,q" => false,
        "x,rho,q,z" => true,
        other => return Err(Error::Io(format!("{}: unexpected header '{other}'", path.display()))),
    };
    let width = if with_z { 4 } else { 3 };
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); width];
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Io(format!("{}:{}: {e}", path.display(), k + 2)))?;
        if vals.len() != width {
            return Err(Error::Io(format!("{}:{}: expected {width} columns", path.display(), k + 2)));
        }
        for (c, v) in cols.iter_mut().zip(vals) {
            c.push(v);
        }
    }
    let x = std::mem::take(&mut cols[0]);
    if x.len() < 2 {
        return Err(Error::Io(format!("{}: need at least two rows", path.display())));
    }
    let dx = (x[x.len() - 1] - x[0]) / (x.len() - 1) as f64;
    Ok(Profile {
        x_lo: x[0] - 0.5 * dx,
        x_hi: x[x.len() - 1] + 0.5 * dx,
        t: f64::NAN,
        x,
        rho: std::mem::take(&mut cols[1]),
        q: std::mem::take(&mut cols[2]),
        z: with_z.then(|| std::mem::take(&mut cols[3])),
    })
}

/// Everything needed to rerun one simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub scenario: String,
    pub case: String,
    pub scheme: Scheme,
    #[serde(rename = "H")]
    pub h: f64,
    /// `None` stands for `epsilon = inf`.
    pub epsilon: Option<f64>,
    pub cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub bc: BoundarySpec,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
    /// `"lw"` or the path of a sampled diagram.
    pub diagram: String,
}

impl Manifest {
    pub fn epsilon_value(&self) -> f64 {
        self.epsilon.unwrap_or(f64::INFINITY)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// `inf` or the shortest round-trip decimal.
pub fn epsilon_label(eps: f64) -> String {
    if eps.is_infinite() {
        "inf".into()
    } else {
        format!("{eps}")
    }
}

/// File stem `<scenario>_<case>_<scheme>_H<h>_eps<eps>`.
pub fn output_stem(scenario: &str, case: &str, scheme: Scheme, h: f64, eps: f64) -> String {
    format!("{scenario}_{case}_{scheme}_H{h}_eps{}", epsilon_label(eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::LeftBoundary;

    #[test]
    fn twelve_digits() {
        assert_eq!(format_value(0.1), "1.00000000000e-1");
        assert_eq!(format_value(2.0 / 3.0), "6.66666666667e-1");
        assert_eq!(format_value(0.0), "0.00000000000e0");
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let p = Profile {
            x_lo: 0.0,
            x_hi: 1.0,
            t: 0.4,
            x: vec![0.25, 0.75],
            rho: vec![1.0 / 3.0, 0.99],
            q: vec![0.2, 1e-17],
            z: Some(vec![0.3, 12.5]),
        };
        write_profile_csv(&path, &p).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("x,rho,q,z\n") && !text.contains('\r'));
        let back = read_profile_csv(&path).unwrap();
        assert_eq!((back.x_lo, back.x_hi), (0.0, 1.0));
        for (a, b) in p.rho.iter().zip(&back.rho) {
            assert_eq!(format_value(*a), format_value(*b));
        }
        assert_eq!(back.z.unwrap()[1], 12.5);
    }

    #[test]
    fn manifest_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = Manifest {
            scenario: "cluster".into(),
            case: "linear".into(),
            scheme: Scheme::Relaxation,
            h: 0.5,
            epsilon: None,
            cells: 200,
            cfl: 1.0,
            t_end: 0.2,
            bc: BoundarySpec { left: LeftBoundary::PrescribedG2(0.75), ..BoundarySpec::OUTFLOW },
            seed: None,
            outputs: vec!["a.csv".into()],
            diagram: "lw".into(),
        };
        m.write(&path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"H\": 0.5") && text.contains("\"epsilon\": null"));
        assert_eq!(Manifest::read(&path).unwrap(), m);
        assert!(m.epsilon_value().is_infinite());
    }

    #[test]
    fn stems() {
        assert_eq!(output_stem("cluster", "linear", Scheme::Relaxation, 0.5, f64::INFINITY), "cluster_linear_relaxation_H0.5_epsinf");
        assert_eq!(output_stem("eps-sweep", "shock", Scheme::LaxFriedrichs, 1.0, 0.001), "eps-sweep_shock_lxf_H1_eps0.001");
    }
}
