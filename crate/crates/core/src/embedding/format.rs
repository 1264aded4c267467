//! `.pg` embedding files and `.tree` parent-reference files.
//!
//! ```text
//! pg <n> <m>
//! <src> <tgt> <cmp>      # 2m lines, 1-based, grouped by src in ccw order
//! ```
//!
//! ```text
//! tree <n>
//! <parent edge>          # n lines; 1-based index of v's edge to its parent, 0 for the root
//! ```

use std::fmt::Write as _;

use super::{DirectedEdge, PlanarEmbedding, VertexId, Violation};
use crate::error::FormatError;
use crate::tree::ParentRefs;

/// Content lines with their 1-based line numbers, comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: usize, s: &str) -> Result<[u64; N], FormatError> {
    let mut out = [0u64; N];
    let mut it = s.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it.next().ok_or_else(|| FormatError::Malformed {
            line,
            reason: format!("expected {N} integers"),
        })?;
        *slot = tok.parse().map_err(|_| FormatError::Malformed {
            line,
            reason: format!("not a non-negative integer: {tok:?}"),
        })?;
    }
    if it.next().is_some() {
        return Err(FormatError::Malformed {
            line,
            reason: format!("expected {N} integers"),
        });
    }
    Ok(out)
}

/// Knobs for [`parse_embedding_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept edges whose endpoints coincide. Off by default.
    pub allow_self_loops: bool,
}

/// Parses and validates a `.pg` embedding; self-loops are rejected.
pub fn parse_embedding(text: &str) -> Result<PlanarEmbedding, FormatError> {
    parse_embedding_with(text, ParseOptions::default())
}

pub fn parse_embedding_with(
    text: &str,
    options: ParseOptions,
) -> Result<PlanarEmbedding, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::Malformed {
        line: 1,
        reason: "missing `pg <n> <m>` header".into(),
    })?;
    let rest = header
        .strip_prefix("pg")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or(FormatError::Malformed {
            line: hline,
            reason: "header must be `pg <n> <m>`".into(),
        })?;
    let [n, m] = parse_fields::<2>(hline, rest)?;
    let (n, m) = (n as usize, m as usize);
    if m == 0 {
        return Err(FormatError::Invalid {
            line: hline,
            reason: "embedding needs at least one edge".into(),
        });
    }
    if n < 2 || 2 * m > u32::MAX as usize || n > u32::MAX as usize {
        return Err(FormatError::Invalid {
            line: hline,
            reason: format!("unsupported size n={n} m={m}"),
        });
    }

    let mut edges = Vec::with_capacity(2 * m);
    let mut edge_lines = Vec::with_capacity(2 * m);
    let mut offsets = vec![0u32; n + 1];
    let mut prev_src = 0u64;
    for (line, s) in lines.by_ref() {
        if edges.len() == 2 * m {
            return Err(FormatError::Malformed {
                line,
                reason: format!("more than 2m = {} edge lines", 2 * m),
            });
        }
        let [src, tgt, cmp] = parse_fields::<3>(line, s)?;
        for (what, v) in [("source", src), ("target", tgt)] {
            if v == 0 || v as usize > n {
                return Err(FormatError::Malformed {
                    line,
                    reason: format!("{what} {v} out of range 1..={n}"),
                });
            }
        }
        if src < prev_src {
            return Err(FormatError::Malformed {
                line,
                reason: format!(
                    "edges must be grouped by ascending source ({src} after {prev_src})"
                ),
            });
        }
        if cmp == 0 || cmp as usize > 2 * m {
            return Err(FormatError::DanglingTwin {
                line,
                edge: edges.len() + 1,
                cmp: cmp as usize,
            });
        }
        prev_src = src;
        offsets[src as usize] += 1;
        edges.push(DirectedEdge {
            src: src as VertexId,
            tgt: tgt as VertexId,
            cmp: cmp as u32 - 1,
        });
        edge_lines.push(line);
    }
    if edges.len() != 2 * m {
        let line = edge_lines.last().copied().unwrap_or(hline);
        return Err(FormatError::Malformed {
            line,
            reason: format!("expected 2m = {} edge lines, found {}", 2 * m, edges.len()),
        });
    }
    for v in 1..=n {
        offsets[v] += offsets[v - 1];
    }
    let g = PlanarEmbedding::from_parts(offsets, edges);

    let first_violation = g
        .validate()
        .into_iter()
        .find(|v| !(options.allow_self_loops && matches!(v, Violation::SelfLoop { .. })));
    if let Some(violation) = first_violation {
        let at = |e: usize| edge_lines.get(e).copied().unwrap_or(hline);
        return Err(match violation {
            Violation::Grouping { edge, reason } => FormatError::Malformed {
                line: at(edge),
                reason,
            },
            Violation::SelfLoop { edge } => FormatError::SelfLoop {
                line: at(edge),
                vertex: g.edge(edge).src as usize,
            },
            Violation::DanglingTwin { edge, cmp } => FormatError::DanglingTwin {
                line: at(edge),
                edge: edge + 1,
                cmp: cmp + 1,
            },
            Violation::Involution { edge, reason } => FormatError::NotInvolution {
                line: at(edge),
                edge: edge + 1,
                reason,
            },
            Violation::Disconnected { reached, n } => FormatError::Disconnected {
                line: hline,
                reached,
                n,
            },
            Violation::Euler { n, m, faces } => FormatError::EulerViolation {
                line: hline,
                n,
                m,
                faces,
            },
        });
    }
    Ok(g)
}

pub fn write_embedding(g: &PlanarEmbedding) -> String {
    let mut out = String::with_capacity(16 + g.edges().len() * 16);
    writeln!(out, "pg {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.src, e.tgt, e.cmp + 1).unwrap();
    }
    out
}

/// Parses parent references. The result is not checked against a graph.
pub fn parse_tree(text: &str) -> Result<ParentRefs, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::Malformed {
        line: 1,
        reason: "missing `tree <n>` header".into(),
    })?;
    let rest = header
        .strip_prefix("tree")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or(FormatError::Malformed {
            line: hline,
            reason: "header must be `tree <n>`".into(),
        })?;
    let [n] = parse_fields::<1>(hline, rest)?;
    let n = n as usize;
    let mut parent_edge = Vec::with_capacity(n);
    let mut root = None;
    for (line, s) in lines {
        if parent_edge.len() == n {
            return Err(FormatError::Malformed {
                line,
                reason: format!("more than n = {n} lines"),
            });
        }
        let [e] = parse_fields::<1>(line, s)?;
        if e == 0 {
            if root.is_some() {
                return Err(FormatError::Invalid {
                    line,
                    reason: "more than one root".into(),
                });
            }
            root = Some(parent_edge.len() as VertexId + 1);
            parent_edge.push(ParentRefs::NONE);
        } else {
            parent_edge.push(e as u32 - 1);
        }
    }
    if parent_edge.len() != n {
        return Err(FormatError::Malformed {
            line: hline,
            reason: format!("expected {n} parent lines"),
        });
    }
    let root = root.ok_or(FormatError::Invalid {
        line: hline,
        reason: "no root (parent edge 0)".into(),
    })?;
    Ok(ParentRefs { root, parent_edge })
}

pub fn write_tree(t: &ParentRefs) -> String {
    let mut out = format!("tree {}\n", t.parent_edge.len());
    for &e in &t.parent_edge {
        let v = if e == ParentRefs::NONE {
            0
        } else {
            e as u64 + 1
        };
        writeln!(out, "{v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE_EDGE: &str = "pg 2 1\n1 2 2\n2 1 1\n";
    const TRIANGLE: &str = "# K3\npg 3 3\n1 2 4\n1 3 5\n2 3 6\n2 1 1\n3 1 2\n3 2 3\n";

    #[test]
    fn single_edge() {
        let g = parse_embedding(SINGLE_EDGE).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.count_faces(), 1);
        assert_eq!(write_embedding(&g), SINGLE_EDGE);
    }

    #[test]
    fn triangle_faces() {
        let g = parse_embedding(TRIANGLE).unwrap();
        assert_eq!(g.count_faces(), 2);
        assert_eq!(g.n() + g.count_faces(), g.m() + 2);
    }

    #[test]
    fn error_lines() {
        let e = parse_embedding("pg 2 1\n1 2 2\n2 1 7\n").unwrap_err();
        assert_eq!(
            e,
            FormatError::DanglingTwin {
                line: 3,
                edge: 2,
                cmp: 7
            }
        );

        let e = parse_embedding("pg 2 1\n1 2 x\n2 1 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Malformed { line: 2, .. }), "{e:?}");

        let e = parse_embedding("pg 3 3\n1 2 4\n1 3 5\n2 3 6\n2 1 1\n3 1 3\n3 2 2\n").unwrap_err();
        assert!(matches!(e, FormatError::NotInvolution { .. }), "{e:?}");

        let e = parse_embedding("pg 2 1\n1 1 2\n1 1 1\n").unwrap_err();
        assert!(
            matches!(e, FormatError::SelfLoop { line: 2, vertex: 1 }),
            "{e:?}"
        );

        // an edge 1-2 plus a loop at 1 that encloses vertex 2
        let looped = "pg 2 2\n1 2 4\n1 1 3\n1 1 2\n2 1 1\n";
        assert!(matches!(
            parse_embedding(looped),
            Err(FormatError::SelfLoop { .. })
        ));
        let g = parse_embedding_with(
            looped,
            ParseOptions {
                allow_self_loops: true,
            },
        )
        .unwrap();
        assert_eq!((g.n(), g.m(), g.count_faces()), (2, 2, 2));

        let e = parse_embedding("pg 4 2\n1 2 2\n2 1 1\n3 4 4\n4 3 3\n").unwrap_err();
        assert!(
            matches!(
                e,
                FormatError::Disconnected {
                    reached: 2,
                    n: 4,
                    ..
                }
            ),
            "{e:?}"
        );

        let e = parse_embedding("pg 2 1\n2 1 2\n1 2 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Malformed { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn k5_violates_euler() {
        let rot: Vec<Vec<VertexId>> = (1..=5)
            .map(|v| (1..=5).filter(|&u| u != v).collect())
            .collect();
        let g = PlanarEmbedding::from_rotations(&rot).unwrap();
        let e = parse_embedding(&write_embedding(&g)).unwrap_err();
        assert!(
            matches!(e, FormatError::EulerViolation { n: 5, m: 10, .. }),
            "{e:?}"
        );
    }

    #[test]
    fn tree_roundtrip() {
        let t = parse_tree("tree 3\n0\n4\n5\n").unwrap();
        assert_eq!(t.root, 1);
        assert_eq!(t.parent_edge, vec![ParentRefs::NONE, 3, 4]);
        assert_eq!(write_tree(&t), "tree 3\n0\n4\n5\n");
        assert!(parse_tree("tree 2\n0\n0\n").is_err());
    }
}
