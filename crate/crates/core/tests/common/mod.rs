#![allow(dead_code)]

use std::path::PathBuf;

use pemb::bits::RawBits;
use pemb::construction::{sequential_tour, Tour};
use pemb::embedding::{parse_embedding_with, parse_tree, ParseOptions, PlanarEmbedding};
use pemb::tree::{ParentRefs, SpanningTreeData};
use pemb::CompactEmbedding;

pub const FIG1_A: &str = "0110110101110010110100010100";
pub const FIG1_B: &str = "00101100110011";
pub const FIG1_BSTAR: &str = "01001001110101";

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fig1() -> (PlanarEmbedding, ParentRefs) {
    let pg = std::fs::read_to_string(fixture("fig1.pg")).unwrap();
    let tree = std::fs::read_to_string(fixture("fig1.tree")).unwrap();
    let g = parse_embedding_with(
        &pg,
        ParseOptions {
            allow_self_loops: true,
        },
    )
    .unwrap();
    (g, parse_tree(&tree).unwrap())
}

pub fn bits(s: &str) -> RawBits {
    RawBits::parse(s).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Whether `b` is a cyclic rotation of `a`.
pub fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter())))
}

/// Checks counting, listing and face for every vertex and tick against the
/// rotation system, using the tour to translate ticks and labels.
pub fn check_queries(
    g: &PlanarEmbedding,
    tree: &ParentRefs,
    c: &CompactEmbedding,
) -> Result<(), String> {
    let Tour {
        tick_edge,
        preorder,
        ..
    } = sequential_tour(g, tree);
    let label = |v: u32| preorder[v as usize - 1] as usize;
    let mut edge_tick = vec![0usize; tick_edge.len()];
    for (i, &e) in tick_edge.iter().enumerate() {
        edge_tick[e as usize] = i + 1;
    }

    for v in 1..=g.n() as u32 {
        let p = label(v);
        ensure!(
            c.counting(p) == g.degree(v),
            "counting({p}) = {} but degree is {}",
            c.counting(p),
            g.degree(v)
        );
        let expect: Vec<usize> = g.group(v).map(|e| label(g.edge(e).tgt)).collect();
        let got = c.listing(p);
        ensure!(
            cyclic_eq(&expect, &got),
            "listing({p}) = {got:?}, expected a rotation of {expect:?}"
        );
    }
    for i in 1..=c.ticks() {
        let e = tick_edge[i - 1] as usize;
        ensure!(
            c.vertex(i) == label(g.edge(e).src),
            "vertex({i}) = {}",
            c.vertex(i)
        );
        ensure!(
            c.mate(i) == edge_tick[g.edge(e).cmp as usize],
            "mate({i}) = {} but the twin is tick {}",
            c.mate(i),
            edge_tick[g.edge(e).cmp as usize]
        );
        let mut expect = Vec::new();
        let mut k = e;
        loop {
            expect.push(label(g.edge(k).tgt));
            k = g.face_next(k);
            if k == e {
                break;
            }
        }
        let got = c.face(i);
        ensure!(got == expect, "face({i}) = {got:?}, expected {expect:?}");
    }
    Ok(())
}

/// Mate involution, degree sum, face count and gap total.
pub fn check_invariants(
    g: &PlanarEmbedding,
    tree: &SpanningTreeData,
    c: &CompactEmbedding,
) -> Result<(), String> {
    let (n, m) = (g.n(), g.m());
    ensure!(c.ticks() == 2 * m, "{} ticks for m = {m}", c.ticks());
    for i in 1..=2 * m {
        let j = c.mate(i);
        ensure!(
            j != i && c.mate(j) == i,
            "mate is not an involution at tick {i}"
        );
    }
    let degrees: usize = (1..=n).map(|v| c.counting(v)).sum();
    ensure!(
        degrees == 2 * m,
        "sum of counting is {degrees}, expected {}",
        2 * m
    );
    let mut seen = vec![false; 2 * m + 1];
    let mut faces = 0;
    for i in 1..=2 * m {
        if seen[i] {
            continue;
        }
        faces += 1;
        let mut t = i;
        while !seen[t] {
            seen[t] = true;
            t = c.face_step(t);
        }
        ensure!(t == i, "face walk from tick {i} closed at {t}");
    }
    ensure!(faces + n == 2 + m, "{faces} faces, expected {}", 2 + m - n);
    let gaps: usize = tree.c.iter().map(|&x| x as usize).sum();
    ensure!(gaps == 2 * m - 2 * (n - 1), "sum of C is {gaps}");
    Ok(())
}
