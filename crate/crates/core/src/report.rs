//! Witness JSON: the fixed, byte-stable interchange format.
//!
//! Field order follows the struct declarations; class arrays and pattern
//! edges are sorted ascending; transversal arrays keep embedding image order
//! (entry i is the image of pattern vertex i). Rationals serialize as
//! `num/den` strings so nothing is lost to floating point.

use serde::{Deserialize, Serialize};

use crate::bounds::{parse_rational, rational_string};
use crate::embed::Mode;
use crate::error::Error;
use crate::extract::{BlowupWitness, ExtractFailure, ExtractReport};
use crate::graph::Pattern;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternJson {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsJson {
    pub c: String,
    pub s_per_level: Vec<usize>,
    pub extractor_used: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AchievedJson {
    pub s: usize,
    pub t: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsJson {
    pub s_theorem: u64,
    pub guarantee: String,
    pub asymptotic_threshold: f64,
    pub preconditions_held: Option<bool>,
    pub vacuous: bool,
    pub t_exceeds_guarantee: bool,
    pub t_exceeds_threshold: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub pattern: PatternJson,
    pub mode: String,
    pub classes: Vec<Vec<u32>>,
    pub transversals: Vec<Vec<u32>>,
    pub params: ParamsJson,
    pub achieved: AchievedJson,
    pub bounds: BoundsJson,
}

pub fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::Induced => "induced-type",
        Mode::Subgraph => "subgraph",
    }
}

impl WitnessJson {
    /// Assembles the interchange value. `witness` is absent on vacuous runs;
    /// the pattern is passed separately so those still record it.
    pub fn build(
        pattern: &Pattern,
        witness: Option<&BlowupWitness>,
        report: &ExtractReport,
        seed: Option<u64>,
    ) -> WitnessJson {
        WitnessJson {
            pattern: PatternJson {
                n: pattern.r(),
                edges: pattern.edges(),
            },
            mode: mode_label(report.mode).to_string(),
            classes: witness.map(|w| w.classes.clone()).unwrap_or_default(),
            transversals: witness.map(|w| w.transversals.clone()).unwrap_or_default(),
            params: ParamsJson {
                c: rational_string(&report.c),
                s_per_level: report.levels.iter().map(|l| l.s_used).collect(),
                extractor_used: report
                    .levels
                    .iter()
                    .map(|l| l.extractor.to_string())
                    .collect(),
                seed,
            },
            achieved: AchievedJson {
                s: report.achieved_s,
                t: report.achieved_t,
            },
            bounds: BoundsJson {
                s_theorem: report.s_theorem,
                guarantee: rational_string(&report.guarantee),
                asymptotic_threshold: report.t_threshold,
                preconditions_held: report.preconditions.map(|p| p.both()),
                vacuous: report.vacuous,
                t_exceeds_guarantee: report.t_exceeds_guarantee,
                t_exceeds_threshold: report.t_exceeds_threshold,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness JSON serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<WitnessJson, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("witness JSON: {e}"),
        })
    }

    /// Reconstructs the witness for re-verification.
    pub fn to_witness(&self) -> Result<BlowupWitness, Error> {
        let pattern = Pattern::from_edges(self.pattern.n, &self.pattern.edges)?;
        let mode: Mode = self
            .mode
            .parse()
            .map_err(|msg: String| Error::Parse { line: 0, msg })?;
        // the parsed c is only needed for display; reject garbage early
        parse_rational(&self.params.c)?;
        Ok(BlowupWitness {
            pattern,
            mode,
            classes: self.classes.clone(),
            transversals: self.transversals.clone(),
        })
    }
}

/// Failure report written when extraction dead-ends; carries the bipartite
/// instance that produced no biclique.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailureJson {
    pub kind: String,
    pub level: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<BipartiteJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BipartiteJson {
    pub m: usize,
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl FailureJson {
    pub fn build(failure: &ExtractFailure) -> FailureJson {
        FailureJson {
            kind: failure.kind.to_string(),
            level: failure.level,
            detail: failure.detail.clone(),
            bipartite: failure.bipartite.as_ref().map(|f| BipartiteJson {
                m: f.m(),
                n: f.n(),
                edges: (0..f.m() as u32)
                    .flat_map(|a| f.neighbors(a).iter().map(move |b| (a, b as u32)))
                    .collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("failure JSON serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::enumerate_embeddings;
    use crate::extract::{extract, ExtractOutcome, ExtractParams};
    use crate::graph::Graph;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn witness_json_round_trip() {
        let mut edges = Vec::new();
        for a in 0..2u32 {
            for b in 2..7u32 {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let params = ExtractParams::new(BigRational::new(BigInt::from(1), BigInt::from(2)))
            .with_overrides(vec![2]);
        let (witness, report) = match extract(&g, &m, &params) {
            ExtractOutcome::Success { witness, report } => (witness, report),
            other => panic!("expected success, got {other:?}"),
        };
        let json = WitnessJson::build(&witness.pattern.clone(), Some(&witness), &report, Some(7));
        let text = json.to_json();
        assert!(text.ends_with('\n'));
        let parsed = WitnessJson::from_json(&text).unwrap();
        assert_eq!(parsed.to_witness().unwrap(), witness);
        assert_eq!(parsed.params.seed, Some(7));
        assert_eq!(parsed.mode, "induced-type");
        // byte determinism of the serializer itself
        assert_eq!(
            text,
            WitnessJson::build(&witness.pattern, Some(&witness), &report, Some(7)).to_json()
        );
    }

    #[test]
    fn field_order_is_fixed() {
        let text = r#"{
  "pattern": { "n": 2, "edges": [[0, 1]] },
  "mode": "subgraph",
  "classes": [[0], [1]],
  "transversals": [[0, 1]],
  "params": { "c": "1/2", "s_per_level": [1], "extractor_used": ["counting"] },
  "achieved": { "s": 1, "t": 1 },
  "bounds": {
    "s_theorem": 0,
    "guarantee": "1/4",
    "asymptotic_threshold": 1.41,
    "preconditions_held": true,
    "vacuous": false,
    "t_exceeds_guarantee": true,
    "t_exceeds_threshold": false
  }
}"#;
        let parsed = WitnessJson::from_json(text).unwrap();
        let emitted = parsed.to_json();
        let keys: Vec<&str> = [
            "\"pattern\"",
            "\"mode\"",
            "\"classes\"",
            "\"transversals\"",
            "\"params\"",
            "\"achieved\"",
            "\"bounds\"",
        ]
        .into_iter()
        .collect();
        let mut last = 0;
        for key in keys {
            let pos = emitted.find(key).unwrap_or_else(|| panic!("{key} missing"));
            assert!(pos > last || last == 0, "{key} out of order");
            last = pos;
        }
    }
}
