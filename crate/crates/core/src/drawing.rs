//! Exact verification of polyline drawings with integer coordinates.
//!
//! A drawing is accepted only when every contact between edges is a
//! transverse crossing in the interior of two segments or a shared graph
//! vertex. Degenerate inputs are rejected with a machine-readable code
//! rather than perturbed.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CrossingSet, CrossingSetFile, Graph, GraphFile, PairIndex};

/// Bound on the absolute value of every coordinate.
pub const MAX_COORD: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DrawingErrorCode {
    Malformed,
    CoordinateRange,
    DuplicateVertex,
    EndpointMismatch,
    DegenerateSegment,
    OverlappingSegments,
    VertexOnEdge,
    SelfIntersection,
    /// Two edges touch at a bend point instead of crossing in segment
    /// interiors.
    NonTransverse,
    GraphMismatch,
}

impl DrawingErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DrawingErrorCode::Malformed => "MALFORMED",
            DrawingErrorCode::CoordinateRange => "COORDINATE_RANGE",
            DrawingErrorCode::DuplicateVertex => "DUPLICATE_VERTEX",
            DrawingErrorCode::EndpointMismatch => "ENDPOINT_MISMATCH",
            DrawingErrorCode::DegenerateSegment => "DEGENERATE_SEGMENT",
            DrawingErrorCode::OverlappingSegments => "OVERLAPPING_SEGMENTS",
            DrawingErrorCode::VertexOnEdge => "VERTEX_ON_EDGE",
            DrawingErrorCode::SelfIntersection => "SELF_INTERSECTION",
            DrawingErrorCode::NonTransverse => "NON_TRANSVERSE",
            DrawingErrorCode::GraphMismatch => "GRAPH_MISMATCH",
        }
    }
}

impl fmt::Display for DrawingErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code}: {message}")]
pub struct DrawingError {
    pub code: DrawingErrorCode,
    pub message: String,
}

fn fail<T>(code: DrawingErrorCode, message: impl Into<String>) -> Result<T, DrawingError> {
    Err(DrawingError { code, message: message.into() })
}

/// On-disk drawing. `polylines[i]` draws `graph.edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingFile {
    pub graph: GraphFile,
    pub points: Vec<Point>,
    pub polylines: Vec<Vec<Point>>,
}

/// A validated drawing. Polylines are stored in the graph's edge order and
/// run from the smaller endpoint to the larger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    graph: Graph,
    points: Vec<Point>,
    polylines: Vec<Vec<Point>>,
}

#[derive(Clone, Copy)]
struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    fn contains(&self, p: Point) -> bool {
        orient(self.a, self.b, p) == 0 && within(self.a, self.b, p)
    }
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.x as i128, a.y as i128);
    (b.x as i128 - ax) * (c.y as i128 - ay) - (b.y as i128 - ay) * (c.x as i128 - ax)
}

/// `p` lies in the bounding box of `a`, `b` (used for collinear points).
fn within(a: Point, b: Point, p: Point) -> bool {
    a.x.min(b.x) <= p.x && p.x <= a.x.max(b.x) && a.y.min(b.y) <= p.y && p.y <= a.y.max(b.y)
}

#[derive(Debug, PartialEq, Eq)]
enum Contact {
    None,
    /// Crossing in the interior of both segments.
    Proper,
    /// Single common point that is an endpoint of at least one segment.
    Touch(Point),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

fn contact(s: Segment, t: Segment) -> Contact {
    let d1 = orient(s.a, s.b, t.a);
    let d2 = orient(s.a, s.b, t.b);
    let d3 = orient(t.a, t.b, s.a);
    let d4 = orient(t.a, t.b, s.b);
    if d1 == 0 && d2 == 0 {
        // Collinear: order along the line and intersect the intervals.
        let key = |p: Point| (p.x, p.y);
        let (s0, s1) = if key(s.a) <= key(s.b) { (s.a, s.b) } else { (s.b, s.a) };
        let (t0, t1) = if key(t.a) <= key(t.b) { (t.a, t.b) } else { (t.b, t.a) };
        let lo = if key(s0) >= key(t0) { s0 } else { t0 };
        let hi = if key(s1) <= key(t1) { s1 } else { t1 };
        return match key(lo).cmp(&key(hi)) {
            Ordering::Less => Contact::Overlap,
            Ordering::Equal => Contact::Touch(lo),
            Ordering::Greater => Contact::None,
        };
    }
    if d1.signum() * d2.signum() < 0 && d3.signum() * d4.signum() < 0 {
        return Contact::Proper;
    }
    for p in [t.a, t.b] {
        if s.contains(p) {
            return Contact::Touch(p);
        }
    }
    for p in [s.a, s.b] {
        if t.contains(p) {
            return Contact::Touch(p);
        }
    }
    Contact::None
}

impl Drawing {
    pub fn from_file(file: DrawingFile) -> Result<Drawing, DrawingError> {
        let graph = Graph::from_file(file.graph.clone())
            .or_else(|e| fail(DrawingErrorCode::Malformed, format!("graph: {e}")))?;
        if file.polylines.len() != file.graph.edges.len() {
            return fail(
                DrawingErrorCode::Malformed,
                format!("{} polylines for {} edges", file.polylines.len(), file.graph.edges.len()),
            );
        }
        let mut polylines = vec![Vec::new(); graph.edge_count()];
        for (&[u, v], line) in file.graph.edges.iter().zip(file.polylines) {
            let e = graph.edge_index(u, v).expect("edge of the parsed graph");
            polylines[e] = line;
        }
        Drawing::new(graph, file.points, polylines)
    }

    /// Validates a drawing whose polylines follow the graph's edge order.
    /// Each polyline may run in either direction.
    pub fn new(graph: Graph, points: Vec<Point>, polylines: Vec<Vec<Point>>) -> Result<Drawing, DrawingError> {
        use DrawingErrorCode::*;
        if points.len() != graph.vertex_count() {
            return fail(Malformed, format!("{} points for {} vertices", points.len(), graph.vertex_count()));
        }
        if polylines.len() != graph.edge_count() {
            return fail(Malformed, format!("{} polylines for {} edges", polylines.len(), graph.edge_count()));
        }
        for p in points.iter().chain(polylines.iter().flatten()) {
            if p.x.abs() > MAX_COORD || p.y.abs() > MAX_COORD {
                return fail(CoordinateRange, format!("{p} exceeds {MAX_COORD}"));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return fail(DuplicateVertex, format!("vertices {i} and {j} both at {}", points[i]));
                }
            }
        }
        let mut oriented = Vec::with_capacity(polylines.len());
        for (e, mut line) in polylines.into_iter().enumerate() {
            let (u, v) = graph.edge(e);
            let (pu, pv) = (points[u], points[v]);
            match (line.first().copied(), line.last().copied()) {
                (Some(a), Some(b)) if a == pu && b == pv && line.len() >= 2 => {}
                (Some(a), Some(b)) if a == pv && b == pu && line.len() >= 2 => line.reverse(),
                _ => return fail(EndpointMismatch, format!("polyline of edge {e} does not join {pu} and {pv}")),
            }
            if let Some(w) = line.windows(2).position(|w| w[0] == w[1]) {
                return fail(DegenerateSegment, format!("edge {e} repeats point {}", line[w]));
            }
            oriented.push(line);
        }
        let d = Drawing { graph, points, polylines: oriented };
        d.check_overlaps()?;
        d.check_vertices()?;
        d.check_contacts()?;
        Ok(d)
    }

    pub fn straight_line(graph: Graph, points: Vec<Point>) -> Result<Drawing, DrawingError> {
        if points.len() != graph.vertex_count() {
            return fail(
                DrawingErrorCode::Malformed,
                format!("{} points for {} vertices", points.len(), graph.vertex_count()),
            );
        }
        let lines = graph.edges().iter().map(|&(u, v)| vec![points[u], points[v]]).collect();
        Drawing::new(graph, points, lines)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn polylines(&self) -> &[Vec<Point>] {
        &self.polylines
    }

    pub fn to_file(&self) -> DrawingFile {
        DrawingFile { graph: self.graph.to_file(), points: self.points.clone(), polylines: self.polylines.clone() }
    }

    /// Applies `p -> scale * p + shift` to every coordinate.
    pub fn transformed(&self, scale: i64, shift: Point) -> Result<Drawing, DrawingError> {
        let map = |p: &Point| Point::new(scale * p.x + shift.x, scale * p.y + shift.y);
        Drawing::new(
            self.graph.clone(),
            self.points.iter().map(map).collect(),
            self.polylines.iter().map(|l| l.iter().map(map).collect()).collect(),
        )
    }

    fn segments(&self, e: usize) -> impl Iterator<Item = Segment> + '_ {
        self.polylines[e].windows(2).map(|w| Segment { a: w[0], b: w[1] })
    }

    /// Calls `visit` on every unordered pair of segments, tagged with
    /// (edge, segment index), stopping at the first error.
    fn try_segment_pairs(
        &self,
        mut visit: impl FnMut((usize, usize, Segment), (usize, usize, Segment)) -> Result<(), DrawingError>,
    ) -> Result<(), DrawingError> {
        let segs: Vec<(usize, usize, Segment)> = (0..self.graph.edge_count())
            .flat_map(|e| self.segments(e).enumerate().map(move |(i, s)| (e, i, s)))
            .collect();
        for (k, &a) in segs.iter().enumerate() {
            for &b in &segs[k + 1..] {
                visit(a, b)?;
            }
        }
        Ok(())
    }

    fn check_overlaps(&self) -> Result<(), DrawingError> {
        self.try_segment_pairs(|(e, i, s), (f, j, t)| {
            if contact(s, t) == Contact::Overlap {
                return fail(
                    DrawingErrorCode::OverlappingSegments,
                    format!("segment {i} of edge {e} overlaps segment {j} of edge {f}"),
                );
            }
            Ok(())
        })
    }

    fn check_vertices(&self) -> Result<(), DrawingError> {
        for (e, line) in self.polylines.iter().enumerate() {
            let last = line.len() - 1;
            for (w, &p) in self.points.iter().enumerate() {
                for (i, s) in self.segments(e).enumerate() {
                    if !s.contains(p) {
                        continue;
                    }
                    let at_own_end = (i == 0 && p == line[0]) || (i + 1 == last && p == line[last]);
                    if !at_own_end {
                        return fail(DrawingErrorCode::VertexOnEdge, format!("vertex {w} at {p} lies on edge {e}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_contacts(&self) -> Result<(), DrawingError> {
        self.try_segment_pairs(|(e, i, s), (f, j, t)| {
            let c = contact(s, t);
            if e == f {
                let allowed = j == i + 1 && c == Contact::Touch(s.b);
                if c != Contact::None && !allowed {
                    return fail(
                        DrawingErrorCode::SelfIntersection,
                        format!("edge {e} meets itself at segments {i} and {j}"),
                    );
                }
                return Ok(());
            }
            match c {
                Contact::Touch(p) if !self.is_shared_vertex(e, f, p) => fail(
                    DrawingErrorCode::NonTransverse,
                    format!("edges {e} and {f} touch at {p} without crossing in segment interiors"),
                ),
                _ => Ok(()),
            }
        })
    }

    fn is_shared_vertex(&self, e: usize, f: usize, p: Point) -> bool {
        let (a, b) = self.graph.edge(e);
        [a, b].into_iter().any(|w| self.graph.is_incident(f, w) && self.points[w] == p)
    }

    /// Proper crossings between the polylines of edges `e` and `f`.
    fn crossings(&self, e: usize, f: usize) -> u64 {
        let mut n = 0;
        for s in self.segments(e) {
            for t in self.segments(f) {
                if contact(s, t) == Contact::Proper {
                    n += 1;
                }
            }
        }
        n
    }
}

pub fn parse_drawing(json: &str) -> Result<Drawing, DrawingError> {
    let file: DrawingFile = serde_json::from_str(json).or_else(|e| fail(DrawingErrorCode::Malformed, e.to_string()))?;
    Drawing::from_file(file)
}

/// Crossing count of one unordered edge pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCrossings {
    pub edges: [[usize; 2]; 2],
    pub independent: bool,
    pub crossings: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    /// All unordered edge pairs, in lexicographic order of edge indices.
    pub pair_counts: Vec<PairCrossings>,
    pub independent_crossings: u64,
    pub adjacent_crossings: u64,
    pub realized_set: CrossingSet,
    pub good: bool,
    pub tolerable: bool,
    pub bad: bool,
    pub thrackle: bool,
    pub generalized_thrackle: bool,
    pub superthrackle: bool,
}

/// Serialised report with the realised set written as vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingReportFile {
    pub pair_counts: Vec<PairCrossings>,
    pub independent_crossings: u64,
    pub adjacent_crossings: u64,
    pub realized_set: CrossingSetFile,
    pub realized_cardinality: usize,
    pub good: bool,
    pub tolerable: bool,
    pub bad: bool,
    pub thrackle: bool,
    pub generalized_thrackle: bool,
    pub superthrackle: bool,
}

impl CrossingReport {
    /// Count for edges `e`, `f` (in either order).
    pub fn count(&self, e: usize, f: usize, edge_count: usize) -> u64 {
        let (e, f) = (e.min(f), e.max(f));
        // Row-major index into the strict upper triangle.
        let i = e * edge_count - e * (e + 1) / 2 + (f - e - 1);
        self.pair_counts[i].crossings
    }

    pub fn to_file(&self, idx: &PairIndex) -> CrossingReportFile {
        CrossingReportFile {
            pair_counts: self.pair_counts.clone(),
            independent_crossings: self.independent_crossings,
            adjacent_crossings: self.adjacent_crossings,
            realized_set: self.realized_set.to_file(idx),
            realized_cardinality: self.realized_set.cardinality(),
            good: self.good,
            tolerable: self.tolerable,
            bad: self.bad,
            thrackle: self.thrackle,
            generalized_thrackle: self.generalized_thrackle,
            superthrackle: self.superthrackle,
        }
    }
}

pub fn crossing_report(d: &Drawing) -> CrossingReport {
    let g = &d.graph;
    let idx = PairIndex::new(g);
    let m = g.edge_count();
    let mut pair_counts = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    let mut realized = Vec::new();
    let (mut indep_total, mut adj_total) = (0, 0);
    let (mut indep_max, mut indep_all_one, mut indep_all_odd) = (0, true, true);
    let (mut adj_all_zero, mut adj_all_even, mut adj_all_one) = (true, true, true);
    for e in 0..m {
        for f in e + 1..m {
            let c = d.crossings(e, f);
            let independent = g.independent(e, f);
            if independent {
                indep_total += c;
                indep_max = indep_max.max(c);
                indep_all_one &= c == 1;
                indep_all_odd &= c % 2 == 1;
                if c % 2 == 1 {
                    realized.push(idx.index_of(e, f).expect("independent pair"));
                }
            } else {
                adj_total += c;
                adj_all_zero &= c == 0;
                adj_all_even &= c.is_multiple_of(2);
                adj_all_one &= c == 1;
            }
            let (a, b) = (g.edge(e), g.edge(f));
            pair_counts.push(PairCrossings { edges: [[a.0, a.1], [b.0, b.1]], independent, crossings: c });
        }
    }
    let tolerable = indep_max <= 1;
    let good = tolerable && adj_all_zero;
    CrossingReport {
        pair_counts,
        independent_crossings: indep_total,
        adjacent_crossings: adj_total,
        realized_set: CrossingSet::from_indices(&idx, realized),
        good,
        tolerable,
        bad: !good,
        thrackle: indep_all_one && adj_all_zero,
        generalized_thrackle: indep_all_odd && adj_all_even,
        superthrackle: indep_all_one && adj_all_one,
    }
}

/// Whether `d` realises exactly `a` as its set of odd independent pairs.
pub fn is_realisation_of(d: &Drawing, a: &CrossingSet) -> Result<bool, DrawingError> {
    let idx = PairIndex::new(&d.graph);
    if a.len() != idx.len() {
        return fail(
            DrawingErrorCode::GraphMismatch,
            format!("crossing set has {} bits, drawing has {} independent pairs", a.len(), idx.len()),
        );
    }
    Ok(crossing_report(d).realized_set == *a)
}

/// Vertices `0..n` in convex position and label order, on the parabola
/// `y = x^2`.
pub fn convex_points(n: usize) -> Vec<Point> {
    (0..n as i64).map(|i| Point::new(i, i * i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn code(r: Result<Drawing, DrawingError>) -> DrawingErrorCode {
        r.expect_err("drawing should be rejected").code
    }

    #[test]
    fn contact_classification() {
        let s = |a: (i64, i64), b: (i64, i64)| Segment { a: p(a.0, a.1), b: p(b.0, b.1) };
        assert_eq!(contact(s((0, 0), (2, 2)), s((0, 2), (2, 0))), Contact::Proper);
        assert_eq!(contact(s((0, 0), (2, 0)), s((1, 0), (1, 3))), Contact::Touch(p(1, 0)));
        assert_eq!(contact(s((0, 0), (2, 0)), s((1, 0), (3, 0))), Contact::Overlap);
        assert_eq!(contact(s((0, 0), (2, 0)), s((2, 0), (3, 0))), Contact::Touch(p(2, 0)));
        assert_eq!(contact(s((0, 0), (2, 0)), s((3, 0), (4, 0))), Contact::None);
        assert_eq!(contact(s((0, 0), (0, 2)), s((0, 3), (0, 1))), Contact::Overlap);
        assert_eq!(contact(s((0, 0), (1, 1)), s((3, 0), (2, 1))), Contact::None);
    }

    #[test]
    fn convex_k4_crosses_once() {
        let d = Drawing::straight_line(Graph::complete(4).unwrap(), convex_points(4)).unwrap();
        let r = crossing_report(&d);
        assert_eq!(r.independent_crossings, 1);
        assert!(r.good && !r.bad);
        let idx = PairIndex::new(d.graph());
        let diag = idx.index_of_vertices((0, 2), (1, 3)).unwrap();
        assert!(is_realisation_of(&d, &CrossingSet::from_indices(&idx, [diag])).unwrap());
    }

    #[test]
    fn convex_k5_k6() {
        for (n, c) in [(5, 5), (6, 15)] {
            let d = Drawing::straight_line(Graph::complete(n).unwrap(), convex_points(n)).unwrap();
            let r = crossing_report(&d);
            assert_eq!(r.independent_crossings, c);
            assert!(r.good && r.tolerable && !r.bad);
            let idx = PairIndex::new(d.graph());
            assert!(!is_realisation_of(&d, &CrossingSet::empty(&idx)).unwrap());
        }
    }

    #[test]
    fn disjoint_segments() {
        let g = Graph::matching(2).unwrap();
        let d = Drawing::straight_line(g, vec![p(0, 0), p(1, 0), p(0, 1), p(1, 1)]).unwrap();
        let r = crossing_report(&d);
        assert!(r.pair_counts.iter().all(|c| c.crossings == 0));
        assert!(r.good && !r.thrackle);
    }

    #[test]
    fn matching_crossing_is_thrackle() {
        let g = Graph::matching(2).unwrap();
        let d = Drawing::straight_line(g, vec![p(0, 0), p(2, 2), p(0, 2), p(2, 0)]).unwrap();
        let r = crossing_report(&d);
        // With no adjacent pairs every pair crosses exactly once.
        assert!(r.thrackle && r.generalized_thrackle && r.superthrackle);
    }

    #[test]
    fn double_crossing_is_not_tolerable() {
        let g = Graph::matching(2).unwrap();
        let pts = vec![p(0, 0), p(10, 0), p(5, -5), p(5, 5)];
        // Edge 1 weaves across edge 0 three times.
        let weave = vec![p(5, -5), p(4, 4), p(6, -4), p(5, 5)];
        let d = Drawing::new(g, pts.clone(), vec![vec![pts[0], pts[1]], weave]).unwrap();
        let r = crossing_report(&d);
        assert_eq!(r.count(0, 1, 2), 3);
        assert!(!r.tolerable && r.bad && r.generalized_thrackle);
    }

    #[test]
    fn adjacent_crossings_are_counted_but_not_realised() {
        // Path 0-1-2 where edge 12 loops back across edge 01.
        let g = Graph::path(3).unwrap();
        let pts = vec![p(0, 0), p(10, 0), p(20, 0)];
        let lines = vec![vec![pts[0], pts[1]], vec![pts[1], p(12, 3), p(5, 3), p(5, -3), p(20, -3), pts[2]]];
        let d = Drawing::new(g, pts, lines).unwrap();
        let r = crossing_report(&d);
        assert_eq!(r.adjacent_crossings, 1);
        assert_eq!(r.realized_set.len(), 0);
        assert!(r.tolerable && !r.good && r.bad);
    }

    #[test]
    fn rejects_duplicate_vertex() {
        let g = Graph::matching(2).unwrap();
        assert_eq!(
            code(Drawing::straight_line(g, vec![p(0, 0), p(1, 0), p(0, 0), p(1, 1)])),
            DrawingErrorCode::DuplicateVertex
        );
    }

    #[test]
    fn rejects_overlap() {
        let g = Graph::matching(2).unwrap();
        assert_eq!(
            code(Drawing::straight_line(g, vec![p(0, 0), p(4, 0), p(2, 0), p(6, 0)])),
            DrawingErrorCode::OverlappingSegments
        );
    }

    #[test]
    fn rejects_vertex_on_edge() {
        let g = Graph::matching(2).unwrap();
        assert_eq!(
            code(Drawing::straight_line(g, vec![p(0, 0), p(4, 0), p(2, 0), p(2, 3)])),
            DrawingErrorCode::VertexOnEdge
        );
    }

    #[test]
    fn rejects_endpoint_mismatch() {
        let g = Graph::matching(1).unwrap();
        let r = Drawing::new(g, vec![p(0, 0), p(1, 0)], vec![vec![p(0, 0), p(2, 0)]]);
        assert_eq!(code(r), DrawingErrorCode::EndpointMismatch);
    }

    #[test]
    fn rejects_bend_contact_and_self_intersection() {
        let g = Graph::matching(2).unwrap();
        let pts = vec![p(0, 0), p(10, 0), p(0, 5), p(10, 5)];
        let touching = vec![vec![pts[0], pts[1]], vec![pts[2], p(5, 0), pts[3]]];
        assert_eq!(code(Drawing::new(g.clone(), pts.clone(), touching)), DrawingErrorCode::NonTransverse);

        let knot = vec![pts[2], p(6, 8), p(6, 2), p(3, 2), p(3, 8), pts[3]];
        let r = Drawing::new(g, pts.clone(), vec![vec![pts[0], pts[1]], knot]);
        assert_eq!(code(r), DrawingErrorCode::SelfIntersection);
    }

    #[test]
    fn rejects_out_of_range_and_repeated_points() {
        let g = Graph::matching(1).unwrap();
        let far = vec![p(0, 0), p(MAX_COORD + 1, 0)];
        assert_eq!(code(Drawing::straight_line(g.clone(), far)), DrawingErrorCode::CoordinateRange);
        let r = Drawing::new(g, vec![p(0, 0), p(1, 0)], vec![vec![p(0, 0), p(0, 0), p(1, 0)]]);
        assert_eq!(code(r), DrawingErrorCode::DegenerateSegment);
    }

    #[test]
    fn reversed_polylines_and_file_order() {
        let json = r#"{"graph":{"n":4,"edges":[[3,2],[0,1]]},
            "points":[[0,0],[2,2],[0,2],[2,0]],
            "polylines":[[[2,0],[0,2]],[[0,0],[2,2]]]}"#;
        let d = parse_drawing(json).unwrap();
        assert_eq!(d.polylines()[1], vec![p(0, 2), p(2, 0)]);
        assert_eq!(crossing_report(&d).independent_crossings, 1);
        assert_eq!(parse_drawing("{").unwrap_err().code, DrawingErrorCode::Malformed);
    }

    #[test]
    fn mismatched_set_is_error() {
        let d = Drawing::straight_line(Graph::complete(4).unwrap(), convex_points(4)).unwrap();
        let idx = PairIndex::new(&Graph::complete(5).unwrap());
        let err = is_realisation_of(&d, &CrossingSet::empty(&idx)).unwrap_err();
        assert_eq!(err.code, DrawingErrorCode::GraphMismatch);
    }

    #[test]
    fn report_count_indexing() {
        let d = Drawing::straight_line(Graph::complete(5).unwrap(), convex_points(5)).unwrap();
        let r = crossing_report(&d);
        let m = d.graph().edge_count();
        let mut i = 0;
        for e in 0..m {
            for f in e + 1..m {
                assert_eq!(r.count(f, e, m), r.pair_counts[i].crossings);
                i += 1;
            }
        }
    }
}
