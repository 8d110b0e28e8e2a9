use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::walkers::Step;

/// Green (traversed-exactly-once) structure of a logged walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenStructure {
    /// Vertices entered and left exactly once, excluding tail and head.
    pub y: Vec<usize>,
    /// Green edges of the contracted walk (number of bridges).
    pub phi: usize,
    /// Green edges of the walk itself.
    pub big_phi: usize,
    /// Bridge lengths in walk order; each is at least 1.
    pub bridge_lengths: Vec<usize>,
}

/// Splits the green edges of a walk into bridges.
///
/// The walk visits `v_0, ..., v_k` (`v_i` = arrival of step `i`). A vertex
/// that occurs exactly once strictly inside the sequence was entered and
/// left once, so both of its steps are green; a bridge is a maximal run of
/// green steps whose interior vertices are all such vertices.
pub fn extract_green(log: &[Step]) -> Result<GreenStructure> {
    for (i, w) in log.windows(2).enumerate() {
        if w[0].to != w[1].from {
            return Err(Error::BrokenLog(i + 2));
        }
    }
    if log.is_empty() {
        return Ok(GreenStructure {
            y: vec![],
            phi: 0,
            big_phi: 0,
            bridge_lengths: vec![],
        });
    }
    let k = log.len();
    let vertex = |i: usize| if i == 0 { log[0].from } else { log[i - 1].to };

    let mut occurrences: HashMap<usize, u32> = HashMap::new();
    for i in 0..=k {
        *occurrences.entry(vertex(i)).or_insert(0) += 1;
    }
    let mut traversals: HashMap<usize, u32> = HashMap::new();
    for st in log {
        *traversals.entry(st.edge_key()).or_insert(0) += 1;
    }
    let green_step = |i: usize| traversals[&log[i - 1].edge_key()] == 1;
    // for walks that may back-track, an interior once-visited vertex left
    // along its arrival edge has no green incidences and is not in Y
    let in_y = |i: usize| i > 0 && i < k && occurrences[&vertex(i)] == 1 && green_step(i) && green_step(i + 1);
    let y: Vec<usize> = (1..k).filter(|&i| in_y(i)).map(vertex).collect();

    let mut bridges = Vec::new();
    let mut open = 0usize;
    for i in 1..=k {
        if !green_step(i) {
            if open > 0 {
                return Err(Error::BrokenLog(i));
            }
            continue;
        }
        open += 1;
        if !in_y(i) {
            bridges.push(open);
            open = 0;
        }
    }
    if open > 0 {
        return Err(Error::BrokenLog(k));
    }
    let big_phi = bridges.iter().sum();
    Ok(GreenStructure {
        phi: bridges.len(),
        big_phi,
        y,
        bridge_lengths: bridges,
    })
}
