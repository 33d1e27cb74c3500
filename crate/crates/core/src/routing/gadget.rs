use crate::error::RoutingError;
use crate::generate::{gen_gadget, GadgetSpec};
use crate::graph::{Instance, VertexId};

use super::{HopTrace, Reading};

/// Lane-spreading router for the gadget instance.
///
/// The gateway of gadget `i` splits the readings it receives from earlier
/// gadgets evenly over all `i*k` lanes, `(i-1)k/i` per lane, so that each
/// lane's packet becomes full at its head once it has collected the `k/i`
/// local readings. Gateway readings left over after the split ride up the
/// corridor lane, merged into its packet when they fit. Lane vertices merge
/// everything they hold into as few packets as possible.
pub fn run_gadget_opt(instance: &Instance, spec: &GadgetSpec) -> Result<HopTrace, RoutingError> {
    check_gadget(instance, spec)?;
    let k = spec.capacity() as usize;
    let unit = |origin: VertexId| Reading { origin, size: 1 };
    let mut inbox: Vec<Vec<Reading>> = vec![Vec::new(); instance.vertex_count()];
    let mut trace = HopTrace::new();

    for i in 1..=spec.ell() {
        let gateway = spec.gateway(i);
        let lanes = spec.lanes(i);
        let mut pool = std::mem::take(&mut inbox[gateway]);
        pool.push(unit(gateway));

        let quota = (i - 1) * k / i;
        let mut shipments: Vec<Vec<Vec<Reading>>> = vec![Vec::new(); lanes.len()];
        let mut cursor = 0;
        for lane_packets in shipments.iter_mut() {
            let take = quota.min(pool.len() - cursor);
            if take > 0 {
                lane_packets.push(pool[cursor..cursor + take].to_vec());
            }
            cursor += take;
        }
        let extras = &pool[cursor..];
        if !extras.is_empty() {
            let corridor = &mut shipments[0];
            match corridor.first_mut() {
                Some(p) if p.len() + extras.len() <= k => p.extend_from_slice(extras),
                _ => corridor.extend(extras.chunks(k).map(<[Reading]>::to_vec)),
            }
        }
        for (lane, packets) in lanes.iter().zip(shipments) {
            for packet in packets {
                inbox[lane[0]].extend_from_slice(&packet);
                trace.push(gateway, lane[0], packet);
            }
        }

        let exit = spec.exit(i);
        for lane in lanes {
            for (pos, &v) in lane.iter().enumerate() {
                let next = lane.get(pos + 1).copied().unwrap_or(exit);
                let mut held = std::mem::take(&mut inbox[v]);
                held.push(unit(v));
                for packet in held.chunks(k) {
                    inbox[next].extend_from_slice(packet);
                    trace.push(v, next, packet.to_vec());
                }
            }
        }
    }
    Ok(trace)
}

fn check_gadget(instance: &Instance, spec: &GadgetSpec) -> Result<(), RoutingError> {
    let (reference, reference_spec) =
        gen_gadget(spec.ell()).map_err(|e| RoutingError::NotAGadget(e.to_string()))?;
    if &reference_spec != spec {
        return Err(RoutingError::NotAGadget(
            "spec differs from the reference construction".into(),
        ));
    }
    if !reference.graph().same_edge_set(instance.graph()) || reference.sizes() != instance.sizes() {
        return Err(RoutingError::NotAGadget(
            "graph differs from the reference construction".into(),
        ));
    }
    Ok(())
}
