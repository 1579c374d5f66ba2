#![allow(dead_code)]

use std::path::PathBuf;

use qnlp_core::corpus::{CorpusModel, Lexicon, PreprocessParams, TaggerMode};
use qnlp_core::patterns::{PatternFile, PatternSet};
use qnlp_core::BitPattern;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn small_model() -> CorpusModel {
    let lexicon = Lexicon::from_toml(&read("small_lexicon.toml")).unwrap();
    let params = PreprocessParams {
        w_vn: 1,
        ..Default::default()
    };
    CorpusModel::with_lexicon(
        &read("small_corpus.txt"),
        TaggerMode::Builtin,
        &lexicon,
        params,
    )
    .unwrap()
}

pub fn small_patterns() -> PatternSet {
    small_model().pattern_set().unwrap()
}

pub fn aiw() -> PatternFile {
    PatternFile::parse(&read("aiw_meaning_space.patterns")).unwrap()
}

pub struct CountRow {
    pub label: String,
    pub pattern: BitPattern,
    pub distance: u32,
    pub count: u64,
}

/// Labels contain commas, so fields are taken from the right.
pub fn table_counts() -> Vec<CountRow> {
    read("hatter_say_queen_counts.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.rsplitn(4, ',').collect();
            CountRow {
                count: f[0].parse().unwrap(),
                distance: f[1].parse().unwrap(),
                pattern: f[2].parse().unwrap(),
                label: f[3].to_string(),
            }
        })
        .collect()
}

pub struct OverlapRow {
    pub label: String,
    pub pattern: BitPattern,
    pub fidelity_sq: f64,
}

pub fn table_overlaps() -> Vec<OverlapRow> {
    read("hatter_say_queen_overlaps.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            OverlapRow {
                label: f[0].to_string(),
                pattern: f[1].parse().unwrap(),
                fidelity_sq: f[2].parse().unwrap(),
            }
        })
        .collect()
}

/// `cos²(dπ/2n)` normalized over the memory, computed directly.
pub fn oracle_distribution(patterns: &[BitPattern], x: BitPattern) -> Vec<f64> {
    let n = x.width() as f64;
    let w: Vec<f64> = patterns
        .iter()
        .map(|p| {
            let d = (p.value() ^ x.value()).count_ones() as f64;
            (d * std::f64::consts::PI / (2.0 * n)).cos().powi(2)
        })
        .collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|v| v / z).collect()
}

pub fn brute_force_cycle(weights: &[Vec<f64>]) -> f64 {
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut dyn FnMut(&[usize])) {
        if k == rest.len() {
            out(rest);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let n = weights.len();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut rest, 0, &mut |perm| {
        let mut cost = weights[0][perm[0]] + weights[perm[perm.len() - 1]][0];
        for w in perm.windows(2) {
            cost += weights[w[0]][w[1]];
        }
        best = best.min(cost);
    });
    best
}
