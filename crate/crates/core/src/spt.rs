//! Shortest path trees rooted at the sink, with explicit tie-breaking.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Instance, VertexId, SINK};

/// How a vertex picks among several neighbors one hop closer to the sink.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParentPolicy {
    MinId,
    MaxId,
    Random(u64),
    /// The j-th vertex (ascending id) with more than one eligible parent
    /// takes eligible parent `j mod count`.
    RoundRobin,
    /// Prefer the smallest-id eligible parent in the set, else fall back to
    /// the smallest id overall.
    PreferSet(Vec<VertexId>),
}

impl ParentPolicy {
    pub fn is_deterministic_without_seed(&self) -> bool {
        !matches!(self, ParentPolicy::Random(_))
    }
}

impl fmt::Display for ParentPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParentPolicy::MinId => f.write_str("min-id"),
            ParentPolicy::MaxId => f.write_str("max-id"),
            ParentPolicy::Random(seed) => write!(f, "random:{seed}"),
            ParentPolicy::RoundRobin => f.write_str("round-robin"),
            ParentPolicy::PreferSet(set) => {
                f.write_str("prefer:")?;
                for (i, v) in set.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for ParentPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-id" => return Ok(ParentPolicy::MinId),
            "max-id" => return Ok(ParentPolicy::MaxId),
            "round-robin" => return Ok(ParentPolicy::RoundRobin),
            "random" => return Ok(ParentPolicy::Random(0)),
            _ => {}
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(ParentPolicy::Random)
                .map_err(|e| format!("bad seed in policy {s:?}: {e}"));
        }
        if let Some(list) = s.strip_prefix("prefer:") {
            let set = list
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<VertexId>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("bad vertex in policy {s:?}: {e}"))?;
            return Ok(ParentPolicy::PreferSet(set));
        }
        Err(format!("unknown parent policy {s:?}"))
    }
}

/// Parent assignment in which every parent is one hop closer to the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPathTree {
    parent: Vec<Option<VertexId>>,
    /// `None` for trees given explicitly rather than built by a policy.
    policy: Option<ParentPolicy>,
}

impl ShortestPathTree {
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<VertexId>] {
        &self.parent
    }

    pub fn policy(&self) -> Option<&ParentPolicy> {
        self.policy.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Builds a tree from an explicit parent map without checking it.
    /// Routers validate trees against their instance before use.
    pub fn from_parents(parent: Vec<Option<VertexId>>) -> Self {
        Self {
            parent,
            policy: None,
        }
    }

    /// Vertices on the way from `v` to the sink, `v` first.
    pub fn path_to_sink(&self, mut v: VertexId) -> Vec<VertexId> {
        let mut path = vec![v];
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
            if path.len() > self.parent.len() {
                break;
            }
        }
        path
    }
}

/// Eligible parents of `v`: neighbors at distance `d(v) - 1`, ascending id.
pub fn eligible_parents(instance: &Instance, v: VertexId) -> Vec<VertexId> {
    let d = instance.distance(v);
    instance
        .graph()
        .neighbors(v)
        .filter(|&w| instance.distance(w) + 1 == d)
        .collect()
}

pub fn build_spt(instance: &Instance, policy: &ParentPolicy) -> ShortestPathTree {
    let n = instance.vertex_count();
    let mut parent = vec![None; n];
    let mut rng = match policy {
        ParentPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let preferred: Vec<bool> = match policy {
        ParentPolicy::PreferSet(set) => {
            let mut mask = vec![false; n];
            for &v in set.iter().filter(|&&v| v < n) {
                mask[v] = true;
            }
            mask
        }
        _ => Vec::new(),
    };
    let mut rotation = 0usize;

    for v in 1..n {
        let eligible = eligible_parents(instance, v);
        debug_assert!(!eligible.is_empty());
        let chosen = match policy {
            ParentPolicy::MinId => eligible[0],
            ParentPolicy::MaxId => eligible[eligible.len() - 1],
            ParentPolicy::Random(_) => {
                let rng = rng.as_mut().expect("seeded");
                eligible[rng.gen_range(0..eligible.len() as u64) as usize]
            }
            ParentPolicy::RoundRobin => {
                if eligible.len() > 1 {
                    let p = eligible[rotation % eligible.len()];
                    rotation += 1;
                    p
                } else {
                    eligible[0]
                }
            }
            ParentPolicy::PreferSet(_) => eligible
                .iter()
                .copied()
                .find(|&w| preferred[w])
                .unwrap_or(eligible[0]),
        };
        parent[v] = Some(chosen);
    }
    debug_assert!(parent[SINK].is_none());
    ShortestPathTree {
        parent,
        policy: Some(policy.clone()),
    }
}
