use crate::error::TraceError;
use crate::graph::{Instance, VertexId, SINK};

/// A reading inside a packet: where it originated and its size in bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reading {
    pub origin: VertexId,
    pub size: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketHop {
    pub seq: u64,
    pub from: VertexId,
    pub to: VertexId,
    pub readings: Vec<Reading>,
}

impl PacketHop {
    pub fn bytes(&self) -> u64 {
        self.readings.iter().map(|r| u64::from(r.size)).sum()
    }
}

/// Ordered packet hops; the output of every router.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HopTrace {
    pub hops: Vec<PacketHop>,
}

impl HopTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    /// Appends a hop with the next sequence number.
    pub fn push(&mut self, from: VertexId, to: VertexId, readings: Vec<Reading>) {
        let seq = self.hops.len() as u64;
        self.hops.push(PacketHop {
            seq,
            from,
            to,
            readings,
        });
    }

    /// Number of hops over each directed arc, keyed by `(from, to)`.
    pub fn hops_per_arc(&self) -> std::collections::BTreeMap<(VertexId, VertexId), usize> {
        let mut out = std::collections::BTreeMap::new();
        for h in &self.hops {
            *out.entry((h.from, h.to)).or_insert(0) += 1;
        }
        out
    }
}

/// Hop counts split by packet fullness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Metrics {
    pub total_hops: u64,
    pub full_hops: u64,
    pub partial_hops: u64,
    /// Sum over readings of the number of edges each one traversed.
    pub reading_distance_sum: u64,
}

/// Replays a trace against per-vertex buffers and checks capacity, edges,
/// causality and completeness.
pub fn validate_trace(instance: &Instance, trace: &HopTrace) -> Result<Metrics, TraceError> {
    let n = instance.vertex_count();
    let k = instance.capacity();
    // current holder of each reading
    let mut location: Vec<VertexId> = (0..n).collect();
    let mut metrics = Metrics::default();
    let mut last_seq: Option<u64> = None;
    let mut in_packet = vec![u64::MAX; n];

    for hop in &trace.hops {
        let seq = hop.seq;
        if last_seq.is_some_and(|s| seq <= s) {
            return Err(TraceError::SequenceOrder { seq });
        }
        last_seq = Some(seq);
        if hop.from >= n || hop.to >= n || !instance.graph().has_edge(hop.from, hop.to) {
            return Err(TraceError::NonEdgeHop {
                seq,
                from: hop.from,
                to: hop.to,
            });
        }
        if hop.readings.is_empty() {
            return Err(TraceError::EmptyPacket { seq });
        }
        let bytes = hop.bytes();
        if bytes > u64::from(k) {
            return Err(TraceError::CapacityExceeded {
                seq,
                bytes,
                capacity: k,
            });
        }
        for r in &hop.readings {
            if r.origin == SINK || r.origin >= n {
                return Err(TraceError::UnknownReading {
                    seq,
                    origin: r.origin,
                });
            }
            let actual = instance.size(r.origin);
            if r.size != actual {
                return Err(TraceError::SizeMismatch {
                    seq,
                    origin: r.origin,
                    declared: r.size,
                    actual,
                });
            }
            if in_packet[r.origin] == seq {
                return Err(TraceError::ReadingDuplicated {
                    seq,
                    origin: r.origin,
                });
            }
            in_packet[r.origin] = seq;
            if location[r.origin] != hop.from {
                if location[r.origin] == SINK {
                    return Err(TraceError::ReadingDuplicated {
                        seq,
                        origin: r.origin,
                    });
                }
                return Err(TraceError::CausalityViolation {
                    seq,
                    origin: r.origin,
                    from: hop.from,
                });
            }
        }
        for r in &hop.readings {
            location[r.origin] = hop.to;
        }
        metrics.total_hops += 1;
        if bytes == u64::from(k) {
            metrics.full_hops += 1;
        } else {
            metrics.partial_hops += 1;
        }
        metrics.reading_distance_sum += hop.readings.len() as u64;
    }
    if let Some(origin) = (1..n).find(|&v| location[v] != SINK) {
        return Err(TraceError::ReadingLost { origin });
    }
    Ok(metrics)
}

/// True iff every hop moves one step closer to the sink.
pub fn check_shortest_path_property(instance: &Instance, trace: &HopTrace) -> bool {
    trace
        .hops
        .iter()
        .all(|h| instance.distance(h.to) + 1 == instance.distance(h.from))
}

/// True iff no vertex sends more than one partial packet.
pub fn check_elementary_property(instance: &Instance, trace: &HopTrace) -> bool {
    elementary_violators(instance, trace).is_empty()
}

/// Vertices that send two or more partial packets.
pub fn elementary_violators(instance: &Instance, trace: &HopTrace) -> Vec<VertexId> {
    let k = u64::from(instance.capacity());
    let mut partials = vec![0usize; instance.vertex_count()];
    for h in &trace.hops {
        if h.bytes() < k {
            partials[h.from] += 1;
        }
    }
    partials
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 1)
        .map(|(v, _)| v)
        .collect()
}
