use alloc::vec::Vec;

use super::bipoly::BiPoly;

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise convex hull, starting at the lexicographically smallest
/// point, without collinear vertices.
pub fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Vertices of the Newton polygon of `a`.
pub fn newton_polygon(a: &BiPoly) -> Vec<(i64, i64)> {
    convex_hull(a.terms().map(|(&(i, j), _)| (i as i64, j as i64)).collect())
}

/// Minkowski sum of two convex polygons given by vertices.
pub fn minkowski_sum(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            pts.push((p.0 + q.0, p.1 + q.1));
        }
    }
    convex_hull(pts)
}

/// Edges as (start, end) pairs in counter-clockwise order.
pub fn edges(poly: &[(i64, i64)]) -> Vec<((i64, i64), (i64, i64))> {
    if poly.len() < 2 {
        return Vec::new();
    }
    if poly.len() == 2 {
        return alloc::vec![(poly[0], poly[1]), (poly[1], poly[0])];
    }
    (0..poly.len()).map(|k| (poly[k], poly[(k + 1) % poly.len()])).collect()
}

/// Outward normal of a counter-clockwise edge.
pub fn outward_normal(e: ((i64, i64), (i64, i64))) -> (i64, i64) {
    let (dx, dy) = (e.1 .0 - e.0 .0, e.1 .1 - e.0 .1);
    (dy, -dx)
}
