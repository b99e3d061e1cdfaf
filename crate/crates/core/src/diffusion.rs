//! Linear diffusion `x(t+1) = A x(t)` and reach curves.
//!
//! Raw adjacency iteration grows like `ρ(A)^t`, so stored states keep a
//! unit-norm direction plus the natural log of its magnitude. A node counts as
//! reached at the first step where `|x_i(t)| > reach_eps`; with a non-negative
//! start this is exactly its hop distance from the support of `x(0)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub const DEFAULT_REACH_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffusionMode {
    /// `x(t+1) = A x(t)`.
    RawAdjacency,
    /// Random-walk mass transport `x(t+1) = A D⁻¹ x(t)`, i.e. `xᵀ ← xᵀ W`
    /// with the row-stochastic `W = D⁻¹ A`. Conserves `Σ x` when no node is
    /// isolated.
    RowStochastic,
}

/// One application of the diffusion operator. Neighbor contributions are
/// summed in ascending node order.
pub fn diffusion_step(g: &Graph, x: &[f64], mode: DiffusionMode) -> Result<Vec<f64>> {
    let n = g.node_count();
    if x.len() != n {
        return Err(Error::DimensionError {
            expected: n,
            actual: x.len(),
        });
    }
    Ok(match mode {
        DiffusionMode::RawAdjacency => (0..n)
            .map(|i| g.neighbors(i).iter().fold(0.0, |acc, &j| acc + x[j]))
            .collect(),
        DiffusionMode::RowStochastic => (0..n)
            .map(|i| {
                g.neighbors(i)
                    .iter()
                    .fold(0.0, |acc, &j| acc + x[j] / g.degree(j) as f64)
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffusionSource {
    Node(NodeId),
    Vector(Vec<f64>),
}

/// `exp(log_scale) * direction` is the state at step `t`. A zero state has a
/// zero direction and `log_scale = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffusionState {
    pub t: usize,
    pub direction: Vec<f64>,
    pub log_scale: f64,
}

impl DiffusionState {
    pub fn values(&self) -> Vec<f64> {
        let s = self.log_scale.exp();
        self.direction.iter().map(|x| x * s).collect()
    }

    fn exceeds(&self, i: usize, eps: f64) -> bool {
        let d = self.direction[i].abs();
        d > 0.0 && d.ln() + self.log_scale > eps.ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionOptions {
    pub mode: DiffusionMode,
    /// `None`: up to `2n` steps, stopping early once every node is reached or
    /// the reach curve has been flat for `n` steps.
    pub steps: Option<usize>,
    pub reach_eps: f64,
}

impl Default for DiffusionOptions {
    fn default() -> Self {
        DiffusionOptions {
            mode: DiffusionMode::RawAdjacency,
            steps: None,
            reach_eps: DEFAULT_REACH_EPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffusionTrace {
    pub mode: DiffusionMode,
    pub source: DiffusionSource,
    pub reach_eps: f64,
    pub states: Vec<DiffusionState>,
    /// Fraction of nodes reached at or before each step.
    pub reach_curve: Vec<f64>,
    first_reach: Vec<Option<usize>>,
}

impl DiffusionTrace {
    /// Step at which each node was first reached.
    pub fn first_reach_times(&self) -> &[Option<usize>] {
        &self.first_reach
    }

    /// First step whose reached fraction is at least `fraction`.
    pub fn steps_to_reach(&self, fraction: f64) -> Option<usize> {
        self.reach_curve.iter().position(|&r| r >= fraction)
    }

    pub fn final_state(&self) -> &DiffusionState {
        self.states.last().expect("a trace holds at least x(0)")
    }
}

pub fn first_reach_times(trace: &DiffusionTrace) -> Vec<Option<usize>> {
    trace.first_reach.clone()
}

pub fn simulate_diffusion(g: &Graph, source: DiffusionSource, opts: DiffusionOptions) -> Result<DiffusionTrace> {
    let n = g.node_count();
    let x0 = match &source {
        DiffusionSource::Node(s) => {
            if *s >= n {
                return Err(Error::InvalidNode { node: *s, n });
            }
            let mut x = vec![0.0; n];
            x[*s] = 1.0;
            x
        }
        DiffusionSource::Vector(v) => {
            if v.len() != n {
                return Err(Error::DimensionError {
                    expected: n,
                    actual: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter("initial state must be finite".into()));
            }
            v.clone()
        }
    };

    let (horizon, early_exit) = match opts.steps {
        Some(s) => (s, false),
        None => (2 * n, true),
    };

    let mut first_reach = vec![None; n];
    let mut reached = 0usize;
    let mut state = normalized_state(0, &x0, 0.0, opts.mode);
    mark_reached(&state, opts.reach_eps, &mut first_reach, &mut reached);
    let fraction = |r: usize| if n == 0 { 0.0 } else { r as f64 / n as f64 };

    let mut reach_curve = vec![fraction(reached)];
    let mut states = vec![state.clone()];
    let mut flat_run = 0;

    for t in 1..=horizon {
        if early_exit && (reached == n || flat_run >= n) {
            break;
        }
        let next = diffusion_step(g, &state.direction, opts.mode)?;
        state = normalized_state(t, &next, state.log_scale, opts.mode);
        let before = reached;
        mark_reached(&state, opts.reach_eps, &mut first_reach, &mut reached);
        flat_run = if reached == before { flat_run + 1 } else { 0 };
        reach_curve.push(fraction(reached));
        states.push(state.clone());
    }

    Ok(DiffusionTrace {
        mode: opts.mode,
        source,
        reach_eps: opts.reach_eps,
        states,
        reach_curve,
        first_reach,
    })
}

fn normalized_state(t: usize, x: &[f64], log_scale: f64, mode: DiffusionMode) -> DiffusionState {
    match mode {
        DiffusionMode::RowStochastic => DiffusionState {
            t,
            direction: x.to_vec(),
            log_scale,
        },
        DiffusionMode::RawAdjacency => {
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                DiffusionState {
                    t,
                    direction: vec![0.0; x.len()],
                    log_scale: 0.0,
                }
            } else {
                DiffusionState {
                    t,
                    direction: x.iter().map(|v| v / norm).collect(),
                    log_scale: log_scale + norm.ln(),
                }
            }
        }
    }
}

fn mark_reached(state: &DiffusionState, eps: f64, first: &mut [Option<usize>], reached: &mut usize) {
    for (i, slot) in first.iter_mut().enumerate() {
        if slot.is_none() && state.exceeds(i, eps) {
            *slot = Some(state.t);
            *reached += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn star3() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn p3() -> Graph {
        graph(3, &[(0, 1), (1, 2)])
    }

    const RAW: DiffusionMode = DiffusionMode::RawAdjacency;

    #[test]
    fn step_examples() {
        let p2 = graph(2, &[(0, 1)]);
        let x1 = diffusion_step(&p2, &[1.0, 0.0], RAW).unwrap();
        assert_eq!(x1, vec![0.0, 1.0]);
        assert_eq!(diffusion_step(&p2, &x1, RAW).unwrap(), vec![1.0, 0.0]);

        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let x1 = diffusion_step(&k3, &[1.0, 0.0, 0.0], RAW).unwrap();
        assert_eq!(x1, vec![0.0, 1.0, 1.0]);
        assert_eq!(diffusion_step(&k3, &x1, RAW).unwrap(), vec![2.0, 1.0, 1.0]);
        assert_eq!(diffusion_step(&k3, &[0.0; 3], RAW).unwrap(), vec![0.0; 3]);
        assert!(matches!(
            diffusion_step(&k3, &[1.0], RAW),
            Err(Error::DimensionError { expected: 3, actual: 1 })
        ));
    }

    #[test]
    fn row_stochastic_step_splits_mass() {
        let x = diffusion_step(&star3(), &[0.0, 1.0, 0.0, 0.0], DiffusionMode::RowStochastic).unwrap();
        assert_eq!(x, vec![1.0, 0.0, 0.0, 0.0]);
        let x = diffusion_step(&star3(), &x, DiffusionMode::RowStochastic).unwrap();
        assert_eq!(x, vec![0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
    }

    #[test]
    fn reach_curves() {
        let t = simulate_diffusion(&star3(), DiffusionSource::Node(0), DiffusionOptions { steps: Some(4), ..Default::default() })
            .unwrap();
        assert_eq!(t.reach_curve, vec![0.25, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(t.first_reach_times(), &[Some(0), Some(1), Some(1), Some(1)]);

        let t = simulate_diffusion(&p3(), DiffusionSource::Node(0), DiffusionOptions::default()).unwrap();
        assert_eq!(t.reach_curve, vec![1.0 / 3.0, 2.0 / 3.0, 1.0]);
        assert_eq!(first_reach_times(&t), vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn disconnected_plateau() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let t = simulate_diffusion(&g, DiffusionSource::Node(0), DiffusionOptions { steps: Some(10), ..Default::default() })
            .unwrap();
        assert_eq!(t.reach_curve[0], 0.25);
        assert!(t.reach_curve[1..].iter().all(|&r| r == 0.5));
        assert_eq!(t.first_reach_times()[2], None);

        // default horizon stops after n flat steps
        let t = simulate_diffusion(&g, DiffusionSource::Node(0), DiffusionOptions::default()).unwrap();
        assert_eq!(t.reach_curve.len(), 1 + 1 + 4);
    }

    #[test]
    fn isolated_node_is_never_reached() {
        let g = graph(3, &[(0, 1)]);
        let t = simulate_diffusion(&g, DiffusionSource::Node(0), DiffusionOptions::default()).unwrap();
        assert_eq!(t.first_reach_times(), &[Some(0), Some(1), None]);
    }

    #[test]
    fn raw_states_keep_magnitude() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let t = simulate_diffusion(&k3, DiffusionSource::Node(0), DiffusionOptions { steps: Some(2), ..Default::default() })
            .unwrap();
        let x2 = t.states[2].values();
        for (a, b) in x2.iter().zip([2.0, 1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        // a long run stays finite
        let t = simulate_diffusion(&k3, DiffusionSource::Node(0), DiffusionOptions { steps: Some(5000), ..Default::default() })
            .unwrap();
        let last = t.final_state();
        assert!(last.direction.iter().all(|x| x.is_finite()));
        assert!((last.log_scale - 5000.0 * 2f64.ln()).abs() < 1.0);
    }

    #[test]
    fn source_errors() {
        assert!(matches!(
            simulate_diffusion(&p3(), DiffusionSource::Node(3), DiffusionOptions::default()),
            Err(Error::InvalidNode { node: 3, n: 3 })
        ));
        assert!(matches!(
            simulate_diffusion(&p3(), DiffusionSource::Vector(vec![1.0]), DiffusionOptions::default()),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn zero_steps_is_just_the_start() {
        let t = simulate_diffusion(&p3(), DiffusionSource::Node(1), DiffusionOptions { steps: Some(0), ..Default::default() })
            .unwrap();
        assert_eq!(t.states.len(), 1);
        assert_eq!(t.reach_curve, vec![1.0 / 3.0]);
    }

    #[test]
    fn signed_vectors_respect_eps() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        // contributions cancel at node 1
        let t = simulate_diffusion(
            &g,
            DiffusionSource::Vector(vec![1.0, 0.0, -1.0]),
            DiffusionOptions { steps: Some(1), ..Default::default() },
        )
        .unwrap();
        assert_eq!(t.first_reach_times(), &[Some(0), None, Some(0)]);
    }
}
