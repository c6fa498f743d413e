//! Progressive edge-growth construction of parity-check matrices.
//!
//! Edges are placed one variable node at a time; each new edge goes to a
//! check node outside the variable's current reachable set (or, when the
//! whole graph is reachable, to one at maximal distance), preferring low
//! check degree. This maximizes local girth, so 4-cycles appear only when
//! the dimensions force them.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::LdpcError;
use crate::sparse::SparseBinaryMatrix;

/// Variable-node degree profile: `(degree, fraction of columns)`.
///
/// One row per pool rate (permille). Degree-2 mass shrinks as the rate grows
/// so the degree-2 subgraph stays below the check count; the degree-8 tail
/// keeps the decoding threshold close to the efficiency budget.
pub const DEGREE_PROFILES: &[(u16, &[(usize, f64)])] = &[
    (500, &[(2, 0.30), (3, 0.35), (4, 0.15), (8, 0.20)]),
    (550, &[(2, 0.27), (3, 0.38), (4, 0.15), (8, 0.20)]),
    (600, &[(2, 0.24), (3, 0.41), (4, 0.15), (8, 0.20)]),
    (650, &[(2, 0.21), (3, 0.44), (4, 0.15), (8, 0.20)]),
    (700, &[(2, 0.18), (3, 0.47), (4, 0.15), (8, 0.20)]),
    (750, &[(2, 0.15), (3, 0.50), (4, 0.15), (8, 0.20)]),
    (800, &[(2, 0.12), (3, 0.53), (4, 0.15), (8, 0.20)]),
    (850, &[(2, 0.09), (3, 0.56), (4, 0.15), (8, 0.20)]),
    (900, &[(2, 0.06), (3, 0.59), (4, 0.15), (8, 0.20)]),
];

/// Profile for the pool rate closest to `rate_permille`.
pub fn profile_for(rate_permille: u16) -> &'static [(usize, f64)] {
    DEGREE_PROFILES
        .iter()
        .min_by_key(|(r, _)| r.abs_diff(rate_permille))
        .map(|(_, p)| *p)
        .expect("profile table is non-empty")
}

/// Per-column target degrees for `n` columns: fractions rounded to counts,
/// low degrees first, remainder columns absorbed by the last class. Degrees
/// are capped at `m` since a column cannot reuse a check row.
fn column_degrees(n: usize, m: usize, profile: &[(usize, f64)]) -> Result<Vec<usize>, LdpcError> {
    let mut degrees = Vec::with_capacity(n);
    for (k, &(deg, frac)) in profile.iter().enumerate() {
        let count = if k + 1 == profile.len() {
            n - degrees.len()
        } else {
            ((n as f64) * frac).round() as usize
        };
        let deg = deg.min(m);
        if deg < 2 {
            return Err(LdpcError::DegreeInfeasible {
                n,
                m,
                degree: deg,
            });
        }
        degrees.extend(std::iter::repeat(deg).take(count.min(n - degrees.len())));
        if degrees.len() == n {
            break;
        }
    }
    debug_assert_eq!(degrees.len(), n);
    Ok(degrees)
}

struct PegState {
    m: usize,
    var_adj: Vec<Vec<u32>>,
    chk_adj: Vec<Vec<u32>>,
    rng: ChaCha20Rng,
    // scratch
    chk_dist: Vec<u32>,
    var_seen: Vec<bool>,
}

const UNSEEN: u32 = u32::MAX;

impl PegState {
    fn new(n: usize, m: usize, seed: [u8; 32]) -> Self {
        Self {
            m,
            var_adj: vec![Vec::new(); n],
            chk_adj: vec![Vec::new(); m],
            rng: ChaCha20Rng::from_seed(seed),
            chk_dist: vec![UNSEEN; m],
            var_seen: vec![false; n],
        }
    }

    /// BFS from `col`, filling `chk_dist` with the depth at which each check
    /// is first reached. Returns the maximal finite depth.
    fn explore(&mut self, col: usize) -> u32 {
        self.chk_dist.fill(UNSEEN);
        self.var_seen.fill(false);
        self.var_seen[col] = true;
        let mut frontier_vars = vec![col as u32];
        let mut depth = 0;
        let mut max_depth = 0;
        while !frontier_vars.is_empty() {
            depth += 1;
            let mut new_checks = Vec::new();
            for &v in &frontier_vars {
                for &c in &self.var_adj[v as usize] {
                    if self.chk_dist[c as usize] == UNSEEN {
                        self.chk_dist[c as usize] = depth;
                        new_checks.push(c);
                    }
                }
            }
            if new_checks.is_empty() {
                break;
            }
            max_depth = depth;
            frontier_vars.clear();
            for &c in &new_checks {
                for &v in &self.chk_adj[c as usize] {
                    if !self.var_seen[v as usize] {
                        self.var_seen[v as usize] = true;
                        frontier_vars.push(v);
                    }
                }
            }
        }
        max_depth
    }

    /// Picks the check for the next edge of `col`: unreached checks first,
    /// then the most distant layer; min degree within the layer; seeded
    /// random tie-break.
    fn pick_check(&mut self, col: usize) -> Result<usize, LdpcError> {
        let max_depth = self.explore(col);
        let adjacent = &self.var_adj[col];
        let candidate_layer = |state: &Self, want: u32| -> Vec<u32> {
            (0..state.m as u32)
                .filter(|c| state.chk_dist[*c as usize] == want && !adjacent.contains(c))
                .collect()
        };
        let mut layer = candidate_layer(self, UNSEEN);
        let mut depth = max_depth;
        while layer.is_empty() && depth >= 1 {
            layer = candidate_layer(self, depth);
            depth -= 1;
        }
        if layer.is_empty() {
            return Err(LdpcError::DegreeInfeasible {
                n: self.var_adj.len(),
                m: self.m,
                degree: adjacent.len() + 1,
            });
        }
        let min_deg = layer
            .iter()
            .map(|&c| self.chk_adj[c as usize].len())
            .min()
            .unwrap();
        let best: Vec<u32> = layer
            .into_iter()
            .filter(|&c| self.chk_adj[c as usize].len() == min_deg)
            .collect();
        let pick = best[(self.rng.next_u64() % best.len() as u64) as usize];
        Ok(pick as usize)
    }

    fn add_edge(&mut self, col: usize, chk: usize) {
        self.var_adj[col].push(chk as u32);
        self.chk_adj[chk].push(col as u32);
    }
}

/// Builds one `m x n` parity-check matrix for the given rate's profile,
/// deterministically in `(seed, rate)`.
pub fn build_matrix(
    n: usize,
    m: usize,
    rate_permille: u16,
    seed: u64,
) -> Result<SparseBinaryMatrix, LdpcError> {
    if m < 2 {
        return Err(LdpcError::DegreeInfeasible { n, m, degree: 2 });
    }
    let profile = profile_for(rate_permille);
    let degrees = column_degrees(n, m, profile)?;
    let mut rng_seed = [0u8; 32];
    rng_seed[..8].copy_from_slice(&seed.to_be_bytes());
    rng_seed[8..10].copy_from_slice(&rate_permille.to_be_bytes());
    let mut st = PegState::new(n, m, rng_seed);
    for col in 0..n {
        for _ in 0..degrees[col] {
            let chk = st.pick_check(col)?;
            st.add_edge(col, chk);
        }
    }
    let entries = st
        .chk_adj
        .iter()
        .enumerate()
        .flat_map(|(r, vars)| vars.iter().map(move |&v| (r, v as usize)))
        .collect::<Vec<_>>();
    Ok(SparseBinaryMatrix::from_entries(m, n, entries)?)
}
