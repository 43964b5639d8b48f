//! Frame manifests (JSON), per-level node files and coefficient CSV `j,node_index,coef`.

use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FrameCoefficients, FrameLevel, NeedletFrame};
use crate::cubature::{read_json, read_rule_csv, write_json, write_rule_csv};
use crate::error::{Error, Result};
use crate::geometry::WeightSpec;
use crate::specfun::Cutoff;

/// Per-level entry of the manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelManifest {
    pub j: usize,
    pub eps: f64,
    pub rule_degree: usize,
    pub residual: f64,
    pub nodes: usize,
    /// Node file relative to the manifest directory (rule CSV with lambda in the weight column).
    pub file: String,
}

/// Frame manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameManifest {
    pub weight: WeightSpec,
    #[serde(rename = "J")]
    pub j_max: usize,
    pub delta: f64,
    pub cutoff: Cutoff,
    pub seed: u64,
    pub elements: usize,
    pub levels: Vec<LevelManifest>,
}

/// Writes `frame.json` and `level_<j>.csv` into `dir`.
pub fn write_frame(dir: &Path, frame: &NeedletFrame) -> Result<FrameManifest> {
    std::fs::create_dir_all(dir)?;
    let mut levels = Vec::new();
    for l in &frame.levels {
        let file = format!("level_{}.csv", l.j);
        write_rule_csv(&dir.join(&file), &l.rule(), frame.weight.d, &l.ring)?;
        levels.push(LevelManifest {
            j: l.j,
            eps: l.eps,
            rule_degree: l.rule_degree,
            residual: l.residual,
            nodes: l.len(),
            file,
        });
    }
    let m = FrameManifest {
        weight: frame.weight,
        j_max: frame.j_max,
        delta: frame.delta,
        cutoff: frame.cutoff,
        seed: frame.seed,
        elements: frame.len(),
        levels,
    };
    write_json(&dir.join("frame.json"), &m)?;
    Ok(m)
}

/// Reads a frame written by [`write_frame`].
pub fn read_frame(dir: &Path) -> Result<NeedletFrame> {
    let m: FrameManifest = read_json(&dir.join("frame.json"))?;
    let mut levels = Vec::new();
    for lm in &m.levels {
        let (rule, ring) = read_rule_csv(&dir.join(&lm.file), m.weight.d)?;
        if rule.len() != lm.nodes {
            return Err(Error::Shape(format!(
                "level {}: {} nodes, manifest says {}",
                lm.j,
                rule.len(),
                lm.nodes
            )));
        }
        levels.push(FrameLevel {
            j: lm.j,
            eps: lm.eps,
            rule_degree: lm.rule_degree,
            residual: lm.residual,
            sqrt_lambda: rule.weights.iter().map(|l| l.sqrt()).collect(),
            nodes: rule.nodes,
            ring,
        });
    }
    Ok(NeedletFrame {
        weight: m.weight,
        j_max: m.j_max,
        delta: m.delta,
        cutoff: m.cutoff,
        seed: m.seed,
        levels,
    })
}

pub fn write_coeffs_csv(path: &Path, c: &FrameCoefficients) -> Result<()> {
    let mut wr = csv::Writer::from_writer(File::create(path)?);
    wr.write_record(["j", "node_index", "coef"])?;
    for (j, lv) in c.levels.iter().enumerate() {
        for (z, v) in lv.iter().enumerate() {
            wr.write_record([j.to_string(), z.to_string(), v.to_string()])?;
        }
    }
    wr.flush()?;
    Ok(())
}

/// Reads coefficients and checks them against the frame layout.
pub fn read_coeffs_csv(path: &Path, frame: &NeedletFrame) -> Result<FrameCoefficients> {
    let mut c = FrameCoefficients::zeros(frame);
    let mut seen = 0usize;
    let mut rd = csv::Reader::from_reader(File::open(path)?);
    for rec in rd.records() {
        let rec = rec?;
        if rec.len() != 3 {
            return Err(Error::Shape(format!(
                "expected 3 columns, found {}",
                rec.len()
            )));
        }
        let parse = |i: usize| {
            rec[i]
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::InvalidParameter(format!("column {i}: {e}")))
        };
        let (j, z) = (parse(0)?, parse(1)?);
        let v: f64 = rec[2]
            .trim()
            .parse()
            .map_err(|e| Error::InvalidParameter(format!("coef: {e}")))?;
        let slot = c
            .levels
            .get_mut(j)
            .and_then(|l| l.get_mut(z))
            .ok_or_else(|| Error::Shape(format!("no element ({j}, {z})")))?;
        *slot = v;
        seen += 1;
    }
    if seen != frame.len() {
        return Err(Error::Shape(format!(
            "{seen} coefficients for {} elements",
            frame.len()
        )));
    }
    Ok(c)
}
