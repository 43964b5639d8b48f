//! Rule files: CSV rows `j,t,x1..xd,weight` and a JSON sidecar with the rule metadata.

use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CubatureRule, Point, WeightSpec};

/// Metadata stored next to a rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleMeta {
    pub weight: WeightSpec,
    pub degree: usize,
    pub residual: f64,
    pub delta: f64,
    pub nodes: usize,
    pub seed: u64,
}

/// Writes the rule CSV; `ring` gives the ring index j of each node.
pub fn write_rule_csv(path: &Path, rule: &CubatureRule, d: usize, ring: &[usize]) -> Result<()> {
    if ring.len() != rule.len() {
        return Err(Error::Shape(format!(
            "{} ring labels for {} nodes",
            ring.len(),
            rule.len()
        )));
    }
    let mut wr = csv::Writer::from_writer(File::create(path)?);
    let mut header = vec!["j".to_string(), "t".to_string()];
    header.extend((1..=d).map(|i| format!("x{i}")));
    header.push("weight".into());
    wr.write_record(&header)?;
    for ((p, l), j) in rule.nodes.iter().zip(&rule.weights).zip(ring) {
        let mut row = vec![j.to_string(), p.t.to_string()];
        row.extend(p.x[..d].iter().map(|v| v.to_string()));
        row.push(l.to_string());
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

/// Reads a rule CSV written by [`write_rule_csv`]; returns the rule (degree and residual unset) and ring labels.
pub fn read_rule_csv(path: &Path, d: usize) -> Result<(CubatureRule, Vec<usize>)> {
    let mut rd = csv::Reader::from_reader(File::open(path)?);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut ring = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        if rec.len() != d + 3 {
            return Err(Error::Shape(format!(
                "expected {} columns, found {}",
                d + 3,
                rec.len()
            )));
        }
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidParameter(format!("column {i}: {e}")))
        };
        ring.push(
            rec[0]
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::InvalidParameter(format!("ring index: {e}")))?,
        );
        let t = num(1)?;
        let x: Vec<f64> = (0..d).map(|i| num(2 + i)).collect::<Result<_>>()?;
        nodes.push(Point::new(&x, t));
        weights.push(num(d + 2)?);
    }
    Ok((
        CubatureRule {
            nodes,
            weights,
            degree: 0,
            residual: f64::NAN,
        },
        ring,
    ))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(File::create(path)?, value)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(File::open(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubature::solve_positive_cubature;
    use crate::geometry::{build_separated_set, Domain};

    #[test]
    fn csv_round_trip_is_bitwise() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let s = build_separated_set(Domain::Cone, 2, 0.2, 1).unwrap();
        let r = solve_positive_cubature(&s, 2, &w).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("rule.csv");
        write_rule_csv(&p, &r, 2, &s.ring_index).unwrap();
        let (back, ring) = read_rule_csv(&p, 2).unwrap();
        assert_eq!(ring, s.ring_index);
        assert_eq!(back.weights, r.weights);
        assert_eq!(back.nodes, r.nodes);
        let meta = RuleMeta {
            weight: w,
            degree: 2,
            residual: r.residual,
            delta: 0.8,
            nodes: r.len(),
            seed: 1,
        };
        let jp = dir.path().join("rule.json");
        write_json(&jp, &meta).unwrap();
        let m2: RuleMeta = read_json(&jp).unwrap();
        assert_eq!(m2, meta);
    }
}
