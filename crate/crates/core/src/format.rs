//! Line-oriented text formats.
//!
//! Instance:
//! ```text
//! uccp k=2 n=3
//! e 0 1
//! e 1 2
//! e 2 3
//! ```
//! `n` counts non-sink vertices. CCP files add `s <v> <bytes>` lines for
//! readings larger than one byte. Traces are `h <seq> <from> <to>
//! <origin:size,...>` lines, plans are an optional `o <optimum>` line and
//! `p <origin> <v0> <v1> ...` lines, gadget annotations are `a <v> <role>
//! gadget=<i>` lines. Blank lines and `#` comments are ignored everywhere.

use std::fmt::Write as _;

use crate::error::FormatError;
use crate::generate::{Annotation, AnnotationRole};
use crate::graph::{Graph, Instance, Mode, VertexId};
use crate::oracle::RoutingPlan;
use crate::routing::{HopTrace, PacketHop, Reading};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::syntax(line, format!("bad {what} {token:?}")))
}

fn keyed<T: std::str::FromStr>(line: usize, token: &str, key: &str) -> Result<T, FormatError> {
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| FormatError::syntax(line, format!("expected {key}=<value>, got {token:?}")))?;
    number(line, value, key)
}

fn arity(line: usize, fields: &[&str], n: usize) -> Result<(), FormatError> {
    if fields.len() != n {
        return Err(FormatError::syntax(
            line,
            format!("expected {n} fields, got {}", fields.len()),
        ));
    }
    Ok(())
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = format!(
        "{} k={} n={}\n",
        instance.mode(),
        instance.capacity(),
        instance.reading_count()
    );
    for &(u, v) in instance.graph().edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for v in instance.readings() {
        if instance.size(v) != 1 {
            writeln!(out, "s {v} {}", instance.size(v)).unwrap();
        }
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    arity(line, &header, 3)?;
    let declared = match header[0] {
        "uccp" => Mode::Uccp,
        "ccp" => Mode::Ccp,
        _ => return Err(FormatError::MissingHeader),
    };
    let k: u32 = keyed(line, header[1], "k")?;
    let n: usize = keyed(line, header[2], "n")?;

    let mut edges = Vec::new();
    let mut sizes = vec![1u32; n + 1];
    sizes[0] = 0;
    let mut sized = vec![false; n + 1];
    for (line, fields) in lines {
        match fields[0] {
            "e" => {
                arity(line, &fields, 3)?;
                edges.push((
                    number(line, fields[1], "vertex")?,
                    number(line, fields[2], "vertex")?,
                ));
            }
            "s" => {
                arity(line, &fields, 3)?;
                let v: VertexId = number(line, fields[1], "vertex")?;
                if v == 0 || v > n {
                    return Err(FormatError::syntax(line, format!("size for vertex {v} out of range")));
                }
                if std::mem::replace(&mut sized[v], true) {
                    return Err(FormatError::syntax(line, format!("size of {v} given twice")));
                }
                sizes[v] = number(line, fields[2], "size")?;
            }
            other => {
                return Err(FormatError::syntax(line, format!("unknown record {other:?}")));
            }
        }
    }
    let instance = Instance::new(Graph::new(n + 1, edges)?, k, sizes)?;
    if instance.mode() != declared {
        return Err(FormatError::ModeMismatch {
            declared: declared.as_str(),
            actual: instance.mode().as_str(),
        });
    }
    Ok(instance)
}

pub fn write_trace(trace: &HopTrace) -> String {
    let mut out = String::new();
    for hop in &trace.hops {
        write!(out, "h {} {} {} ", hop.seq, hop.from, hop.to).unwrap();
        if hop.readings.is_empty() {
            out.push('-');
        }
        for (i, r) in hop.readings.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{}:{}", r.origin, r.size).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<HopTrace, FormatError> {
    let mut hops = Vec::new();
    for (line, fields) in content_lines(text) {
        if fields[0] != "h" {
            return Err(FormatError::syntax(line, format!("unknown record {:?}", fields[0])));
        }
        arity(line, &fields, 5)?;
        let readings = if fields[4] == "-" {
            Vec::new()
        } else {
            fields[4]
                .split(',')
                .map(|item| {
                    let (origin, size) = item
                        .split_once(':')
                        .ok_or_else(|| FormatError::syntax(line, format!("bad reading {item:?}")))?;
                    Ok(Reading {
                        origin: number(line, origin, "origin")?,
                        size: number(line, size, "size")?,
                    })
                })
                .collect::<Result<_, FormatError>>()?
        };
        hops.push(PacketHop {
            seq: number(line, fields[1], "sequence number")?,
            from: number(line, fields[2], "vertex")?,
            to: number(line, fields[3], "vertex")?,
            readings,
        });
    }
    Ok(HopTrace { hops })
}

pub fn write_plan(optimum: Option<u64>, plan: &RoutingPlan) -> String {
    let mut out = String::new();
    if let Some(o) = optimum {
        writeln!(out, "o {o}").unwrap();
    }
    for (origin, path) in plan.paths.iter().enumerate().skip(1) {
        write!(out, "p {origin}").unwrap();
        for v in path {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a plan for an instance with `vertex_count` vertices. Origins
/// without a `p` line are left with empty paths, which plan validation
/// rejects.
pub fn parse_plan(text: &str, vertex_count: usize) -> Result<(Option<u64>, RoutingPlan), FormatError> {
    let mut optimum = None;
    let mut paths = vec![Vec::new(); vertex_count];
    for (line, fields) in content_lines(text) {
        match fields[0] {
            "o" => {
                arity(line, &fields, 2)?;
                optimum = Some(number(line, fields[1], "optimum")?);
            }
            "p" => {
                if fields.len() < 3 {
                    return Err(FormatError::syntax(line, "path needs an origin and vertices"));
                }
                let origin: VertexId = number(line, fields[1], "origin")?;
                if origin == 0 || origin >= vertex_count {
                    return Err(FormatError::syntax(line, format!("origin {origin} out of range")));
                }
                paths[origin] = fields[2..]
                    .iter()
                    .map(|t| number(line, t, "vertex"))
                    .collect::<Result<_, _>>()?;
            }
            other => {
                return Err(FormatError::syntax(line, format!("unknown record {other:?}")));
            }
        }
    }
    Ok((optimum, RoutingPlan { paths }))
}

pub fn write_annotations(annotations: &[Annotation]) -> String {
    let mut out = String::new();
    for a in annotations {
        writeln!(out, "a {} {} gadget={}", a.vertex, a.role, a.gadget).unwrap();
    }
    out
}

pub fn parse_annotations(text: &str) -> Result<Vec<Annotation>, FormatError> {
    content_lines(text)
        .map(|(line, fields)| {
            if fields[0] != "a" {
                return Err(FormatError::syntax(line, format!("unknown record {:?}", fields[0])));
            }
            arity(line, &fields, 4)?;
            Ok(Annotation {
                vertex: number(line, fields[1], "vertex")?,
                role: fields[2]
                    .parse::<AnnotationRole>()
                    .map_err(|e| FormatError::syntax(line, e))?,
                gadget: keyed(line, fields[3], "gadget")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::InstanceError;
    use crate::generate::{gen_gadget, gen_grid, gen_line, gen_random_connected, gen_setpartition};
    use crate::generate::{PartitionShape, SetPartitionSpec};
    use crate::routing::run_sptg;
    use proptest::prelude::*;

    #[test]
    fn line_file() {
        let text = write_instance(&gen_line(3, 2).unwrap());
        assert_eq!(text, "uccp k=2 n=3\ne 0 1\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a line\n\nuccp k=2 n=2  # header\ne 0 1\n\ne 1 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.reading_count(), 2);
    }

    #[test]
    fn ccp_sizes() {
        let inst = gen_setpartition(&SetPartitionSpec {
            elements: vec![1, 2, 3],
            capacity: 3,
            shape: PartitionShape::NeckTree,
        })
        .unwrap();
        let text = write_instance(&inst);
        assert!(text.starts_with("ccp k=3 n=4\n"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_instance(""), Err(FormatError::MissingHeader)));
        assert!(matches!(
            parse_instance("graph k=2 n=1\ne 0 1\n"),
            Err(FormatError::MissingHeader)
        ));
        assert!(matches!(
            parse_instance("uccp k=2 n=1\ne 0 x\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("uccp k=2 n=2\ne 0 1\n"),
            Err(FormatError::Instance(InstanceError::DisconnectedGraph(2)))
        ));
        assert!(matches!(
            parse_instance("uccp k=2 n=1\ne 0 1\ns 1 2\n"),
            Err(FormatError::ModeMismatch { .. })
        ));
        assert!(matches!(
            parse_instance("ccp k=2 n=1\ne 0 1\ns 1 3\n"),
            Err(FormatError::Instance(InstanceError::SizeOutOfRange { .. }))
        ));
    }

    #[test]
    fn trace_round_trip() {
        let inst = gen_grid(3, 3, 2).unwrap();
        let trace = run_sptg(&inst).unwrap();
        let text = write_trace(&trace);
        assert_eq!(parse_trace(&text).unwrap(), trace);
        assert_eq!(write_trace(&parse_trace(&text).unwrap()), text);
        assert!(text.starts_with("h 0 "));
    }

    #[test]
    fn plan_round_trip() {
        let plan = RoutingPlan {
            paths: vec![vec![], vec![1, 0], vec![2, 1, 0]],
        };
        let text = write_plan(Some(2), &plan);
        assert_eq!(text, "o 2\np 1 1 0\np 2 2 1 0\n");
        assert_eq!(parse_plan(&text, 3).unwrap(), (Some(2), plan));
    }

    #[test]
    fn annotation_round_trip() {
        let (_, spec) = gen_gadget(2).unwrap();
        let text = write_annotations(&spec.annotations());
        assert!(text.lines().any(|l| l.ends_with("gateway gadget=1")));
        assert_eq!(parse_annotations(&text).unwrap(), spec.annotations());
    }

    proptest! {
        #[test]
        fn instance_round_trip(n in 1usize..30, density in 0.0f64..1.0, k in 1u32..6, seed in any::<u64>()) {
            let inst = gen_random_connected(n, density, k, seed).unwrap();
            let text = write_instance(&inst);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(write_instance(&back), text);
        }

        #[test]
        fn ccp_round_trip(sizes in proptest::collection::vec(1u32..5, 1..20)) {
            let inst = crate::generate::gen_line_with_sizes(&sizes, 4).unwrap();
            let text = write_instance(&inst);
            prop_assert_eq!(parse_instance(&text).unwrap(), inst);
        }
    }
}
