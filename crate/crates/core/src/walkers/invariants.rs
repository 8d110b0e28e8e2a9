use std::collections::HashMap;

use super::{Trajectory, WalkKind};
use crate::structure::extract_green;

/// Checks the structural identities every trajectory must satisfy.
///
/// Series identities are always checked; replay-based checks (red
/// preference, color conservation, the `Phi` count and green incidences of
/// once-visited vertices) need the step log.
pub fn check_invariants(traj: &Trajectory) -> Result<(), String> {
    let h = traj.num_half_edges as i64;
    for p in traj.samples() {
        let total: u64 = p.x.iter().map(|&x| x as u64).sum();
        if total != traj.n as u64 {
            return Err(format!("sum X_i = {total} != n at t = {}", p.t));
        }
        let weighted: i64 = p.x.iter().enumerate().map(|(i, &x)| i as i64 * x as i64).sum();
        if weighted != h - 2 * p.t as i64 {
            return Err(format!("sum i X_i = {weighted} != {} at t = {}", h - 2 * p.t as i64, p.t));
        }
        if p.phi as usize > p.t {
            return Err(format!("Phi({}) = {} exceeds t", p.t, p.phi));
        }
    }
    if traj.edge_steps.windows(2).any(|w| w[0] >= w[1]) {
        return Err("C_E not strictly increasing".into());
    }
    if traj.vertex_steps.windows(2).any(|w| w[0] > w[1]) {
        return Err("C_V decreasing".into());
    }
    if traj.vertex_steps.first() != Some(&0) {
        return Err("C_V(1) != 0".into());
    }
    if !traj.edge_steps.is_empty() && traj.edge_steps[0] != 1 {
        return Err("C_E(1) != 1".into());
    }
    if let Some(full) = traj.full_edge_cover() {
        if traj.vertex_steps.iter().any(|&s| s > full) {
            return Err("C_V(s) exceeds the edge cover time".into());
        }
    }
    // visited vertices are exactly those that lost a red incidence
    for p in traj.samples().filter(|p| p.t >= 1) {
        let fresh = p.x[traj.d] as usize;
        let s = traj.n - fresh;
        if let (Some(cv), Some(ce)) = (traj.vertex_cover(s), traj.edge_cover(p.t)) {
            if cv > ce {
                return Err(format!("C_V({s}) = {cv} > C_E({}) = {ce}", p.t));
            }
        }
    }

    let Some(log) = traj.step_log.as_ref() else {
        return Ok(());
    };
    if log.len() as u64 != traj.steps {
        return Err("step log length differs from step count".into());
    }
    let mut count: HashMap<usize, u32> = HashMap::new();
    let mut discovered = 0usize;
    let mut phi = 0u32;
    for (i, st) in log.iter().enumerate() {
        if traj.kind == WalkKind::BiasedEdgeProcess && st.red_available && !st.was_red {
            return Err(format!("blue edge taken at step {} although red was available", i + 1));
        }
        let c = count.entry(st.edge_key()).or_insert(0);
        if (*c == 0) != st.was_red {
            return Err(format!("color flag inconsistent at step {}", i + 1));
        }
        *c += 1;
        match *c {
            1 => {
                phi += 1;
                discovered += 1;
                if traj.edge_cover(discovered) != Some(i as u64 + 1) {
                    return Err(format!("C_E({discovered}) disagrees with replay"));
                }
                if let Some(p) = traj.at(discovered) {
                    let red_incidences: usize = p.x.iter().enumerate().map(|(i, &x)| i * x as usize).sum();
                    if red_incidences != 2 * (traj.num_edges - count.len()) {
                        return Err(format!("red edges not conserved at t = {discovered}"));
                    }
                }
                if let Some(p) = traj.phi(discovered) {
                    if p != phi {
                        return Err(format!("Phi({discovered}) = {p}, replay gives {phi}"));
                    }
                }
            }
            2 => phi -= 1,
            _ => {}
        }
    }
    if discovered != traj.edges_discovered() {
        return Err("discovered edge count disagrees with replay".into());
    }
    let green = extract_green(log).map_err(|e| e.to_string())?;
    if green.bridge_lengths.iter().sum::<usize>() != green.big_phi || green.phi + green.y.len() != green.big_phi {
        return Err("green bridge accounting broken".into());
    }
    if green.big_phi != phi as usize {
        return Err("green edge count disagrees with Phi".into());
    }
    let mut green_inc: HashMap<usize, usize> = HashMap::new();
    for st in log {
        if count[&st.edge_key()] == 1 {
            *green_inc.entry(st.from).or_insert(0) += 1;
            *green_inc.entry(st.to).or_insert(0) += 1;
        }
    }
    for &y in &green.y {
        if green_inc.get(&y).copied().unwrap_or(0) != 2 {
            return Err(format!("once-visited vertex {y} lacks exactly two green edges"));
        }
    }
    Ok(())
}
