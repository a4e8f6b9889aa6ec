//! Orbit graphs: vertices are orbit points, edges join points sharing a
//! coordinate. A connected piece that touches the unexpanded frontier, or
//! holds at least `depth` vertices, counts as infinite.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CurvePoint, Orbit};
use crate::polynomials::Var;

#[derive(Clone, Debug)]
pub struct OrbitGraph {
    pub vertices: Vec<CurvePoint>,
    /// (i, j, shared axis) with i < j.
    pub edges: Vec<(usize, usize, Var)>,
    pub frontier: Vec<bool>,
    pub complete: bool,
}

impl OrbitGraph {
    pub fn from_orbit(o: &Orbit) -> OrbitGraph {
        let vertices = o.points.clone();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i].x == vertices[j].x {
                    edges.push((i, j, Var::X));
                } else if vertices[i].y == vertices[j].y {
                    edges.push((i, j, Var::Y));
                }
            }
        }
        let frontier = vertices.iter().map(|v| o.frontier.contains(v)).collect();
        OrbitGraph { vertices, edges, frontier, complete: o.complete }
    }

    pub fn index(&self, v: &CurvePoint) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = (usize, Var)> + '_ {
        self.edges.iter().filter_map(move |&(a, b, ax)| {
            if a == i {
                Some((b, ax))
            } else if b == i {
                Some((a, ax))
            } else {
                None
            }
        })
    }

    /// Component of `start` avoiding `removed`; true if it counts as infinite.
    fn escapes(&self, start: usize, removed: &BTreeSet<usize>, depth: usize) -> (bool, BTreeSet<usize>) {
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        let mut infinite = false;
        while let Some(v) = queue.pop_front() {
            if self.frontier[v] {
                infinite = true;
            }
            for (w, _) in self.neighbours(v) {
                if !removed.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() >= depth {
            infinite = true;
        }
        (infinite, seen)
    }

    /// Vertices reachable from `start` without entering `removed`.
    pub fn component(&self, start: usize, removed: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.escapes(start, removed, usize::MAX).1
    }

    /// Plain-text export in the DOT language.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph orbit {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if self.frontier[i] { ", shape=box" } else { "" };
            s.push_str(&format!("  v{} [label=\"{}\"{}];\n", i, v, shape));
        }
        for &(a, b, ax) in &self.edges {
            s.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", a, b, ax.name()));
        }
        s.push_str("}\n");
        s
    }
}

/// Points with no infinite cycle-free path through them that avoids
/// `marked`; a complete orbit is returned whole.
pub fn marked_region(g: &OrbitGraph, marked: &[CurvePoint], depth: usize) -> BTreeSet<CurvePoint> {
    if g.complete {
        return g.vertices.iter().cloned().collect();
    }
    let removed: BTreeSet<usize> = marked.iter().filter_map(|m| g.index(m)).collect();
    let mut out: BTreeSet<CurvePoint> = removed.iter().map(|&i| g.vertices[i].clone()).collect();
    let mut done: BTreeSet<usize> = removed.clone();
    for i in 0..g.vertices.len() {
        if done.contains(&i) {
            continue;
        }
        let (infinite, comp) = g.escapes(i, &removed, depth);
        if !infinite {
            out.extend(comp.iter().map(|&j| g.vertices[j].clone()));
        }
        done.extend(comp);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleVerdict {
    NotPoleOfF,
    NotPoleOfG,
    Unknown,
}

/// Verdicts for the two coordinates of a pole of r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPole {
    /// NotPoleOfF or Unknown.
    pub x: PoleVerdict,
    /// NotPoleOfG or Unknown.
    pub y: PoleVerdict,
    pub depth: usize,
}

/// Looks for an infinite cycle-free path from `pole` that avoids
/// `other_poles`, leaving along a shared x or a shared y coordinate.
pub fn special_pole_test(g: &OrbitGraph, pole: &CurvePoint, other_poles: &[CurvePoint], depth: usize) -> SpecialPole {
    let mut out = SpecialPole { x: PoleVerdict::Unknown, y: PoleVerdict::Unknown, depth };
    let Some(pi) = g.index(pole) else { return out };
    if g.complete {
        return out;
    }
    let mut removed: BTreeSet<usize> = other_poles.iter().filter_map(|m| g.index(m)).collect();
    removed.insert(pi);
    for (w, ax) in g.neighbours(pi) {
        if removed.contains(&w) {
            continue;
        }
        if g.escapes(w, &removed, depth).0 {
            match ax {
                Var::X => out.x = PoleVerdict::NotPoleOfF,
                Var::Y => out.y = PoleVerdict::NotPoleOfG,
            }
        }
    }
    out
}
