//! One report type per subcommand, each with a JSON and a plain-text form.

use std::fmt::Write as _;

use obslab_core::complex::{
    build_deleted_product, euler_characteristic, find_surface_graphs, star_condition_violations, surface_status,
    symmetric_quotient, CellCounts, StarViolation, SurfaceStatus,
};
use obslab_core::drawing::{crossing_report, CrossingReportFile};
use obslab_core::gf2::{rank, HistogramFile};
use obslab_core::realise::{
    max_realisable_bound, obstruction_model, planarity_crosscheck, realisable_spectrum,
    verify_condition_characterisation, CharacterisationReport,
};
use obslab_core::symmetry::{automorphism_group, burnside_audit, orbit_representatives, BurnsideAudit};
use obslab_core::{CrossingSet, Drawing, Graph, PairIndex};
use serde::Serialize;

use crate::error::CliError;

pub trait Report: Serialize {
    fn text(&self) -> String;
}

fn pair_text(p: &[[usize; 2]; 2]) -> String {
    format!("{}{}x{}{}", p[0][0], p[0][1], p[1][0], p[1][1])
}

fn edges_of(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(a, b)| [a, b]).collect()
}

#[derive(Debug, Serialize)]
pub struct GraphInfo {
    pub vertices: usize,
    pub edges: usize,
    pub independent_pairs: usize,
    pub degrees: Vec<usize>,
    pub planar: bool,
    pub automorphisms: Option<usize>,
    pub coboundary_rank: usize,
    pub cohomology_dimension: usize,
}

impl Report for GraphInfo {
    fn text(&self) -> String {
        let autos = self.automorphisms.map_or_else(|| "not computed".into(), |a| a.to_string());
        format!(
            "vertices: {}\nedges: {}\nindependent pairs: {}\ndegrees: {:?}\nplanar: {}\nautomorphisms: {}\ncoboundary rank: {}\ncohomology dimension: {}\n",
            self.vertices,
            self.edges,
            self.independent_pairs,
            self.degrees,
            self.planar,
            autos,
            self.coboundary_rank,
            self.cohomology_dimension
        )
    }
}

pub fn graph_info(g: &Graph) -> Result<GraphInfo, CliError> {
    let model = obstruction_model(g);
    Ok(GraphInfo {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        independent_pairs: model.pairs().len(),
        degrees: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
        planar: planarity_crosscheck(g),
        automorphisms: automorphism_group(g).ok().map(|grp| grp.order),
        coboundary_rank: model.coset_dimension(),
        cohomology_dimension: model.cohomology_dimension(),
    })
}

#[derive(Debug, Serialize)]
pub struct Cells {
    pub v: usize,
    pub e: usize,
    pub f: usize,
}

impl Cells {
    fn of(c: &impl CellCounts) -> Self {
        let [v, e, f] = c.cell_counts();
        Cells { v, e, f }
    }
}

#[derive(Debug, Serialize)]
pub struct ComplexSummary {
    /// Cells of the symmetric quotient.
    pub cells: Cells,
    pub ordered_cells: Cells,
    pub closed_surface: bool,
    pub status: SurfaceStatus,
    pub euler: i64,
    pub differential_rank: usize,
    pub violations: Vec<StarViolation>,
}

impl Report for ComplexSummary {
    fn text(&self) -> String {
        let mut s = String::new();
        for (name, c) in [("quotient", &self.cells), ("ordered", &self.ordered_cells)] {
            let _ = writeln!(s, "{name} cells: {} vertices, {} edges, {} faces", c.v, c.e, c.f);
        }
        let _ = writeln!(s, "euler characteristic: {}", self.euler);
        let _ = writeln!(s, "differential rank: {}", self.differential_rank);
        let _ = writeln!(s, "surface: {:?}", self.status);
        let _ = writeln!(s, "star violations: {}", self.violations.len());
        s
    }
}

pub fn complex(g: &Graph) -> ComplexSummary {
    let ordered = build_deleted_product(g);
    let quotient = symmetric_quotient(&ordered);
    let status = surface_status(&quotient);
    ComplexSummary {
        cells: Cells::of(&quotient),
        ordered_cells: Cells::of(&ordered),
        closed_surface: status == SurfaceStatus::ClosedSurface,
        status,
        euler: euler_characteristic(&quotient),
        differential_rank: rank(obstruction_model(g).differential()),
        violations: star_condition_violations(g),
    }
}

#[derive(Debug, Serialize)]
pub struct ScanGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize)]
pub struct SurfaceScan {
    pub max_n: usize,
    pub graphs: Vec<ScanGraph>,
}

impl Report for SurfaceScan {
    fn text(&self) -> String {
        let mut s = format!("{} graph(s) on at most {} vertices\n", self.graphs.len(), self.max_n);
        for g in &self.graphs {
            let edges: Vec<String> = g.edges.iter().map(|e| format!("{}{}", e[0], e[1])).collect();
            let _ = writeln!(s, "n={}: {}", g.n, edges.join(" "));
        }
        s
    }
}

pub fn surface_scan(max_n: usize) -> Result<SurfaceScan, CliError> {
    let graphs =
        find_surface_graphs(max_n)?.iter().map(|g| ScanGraph { n: g.vertex_count(), edges: edges_of(g) }).collect();
    Ok(SurfaceScan { max_n, graphs })
}

impl Report for HistogramFile {
    fn text(&self) -> String {
        let mut s =
            format!("coset dimension: {}\npairs: {}\ntotal: {}\n", self.basis_size, self.vector_length, self.total);
        for (w, c) in &self.histogram {
            let _ = writeln!(s, "{w}\t{c}");
        }
        s
    }
}

pub fn spectrum(g: &Graph, workers: usize) -> Result<HistogramFile, CliError> {
    Ok(realisable_spectrum(&obstruction_model(g), workers)?.to_file())
}

#[derive(Debug, Serialize)]
pub struct WitnessCell {
    pub vertex: usize,
    pub edge: [usize; 2],
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub realisable: bool,
    pub cardinality: usize,
    /// Symmetric 1-cells whose coboundaries carry the reference drawing's
    /// parities to the queried set.
    pub witness: Option<Vec<WitnessCell>>,
}

impl Report for CheckResult {
    fn text(&self) -> String {
        let mut s = format!("realisable: {}\ncardinality: {}\n", self.realisable, self.cardinality);
        if let Some(w) = &self.witness {
            let cells: Vec<String> = w.iter().map(|c| format!("{}x{}{}", c.vertex, c.edge[0], c.edge[1])).collect();
            let _ = writeln!(s, "witness: {}", cells.join(" "));
        }
        s
    }
}

pub fn check(g: &Graph, set: &CrossingSet) -> Result<CheckResult, CliError> {
    let model = obstruction_model(g);
    let r = model.is_two_realisable(set)?;
    let witness = r.witness.map(|cells| {
        cells
            .into_iter()
            .map(|i| {
                let (vertex, e) = model.one_cell(i);
                let (a, b) = g.edge(e);
                WitnessCell { vertex, edge: [a, b] }
            })
            .collect()
    });
    Ok(CheckResult { realisable: r.realisable, cardinality: set.cardinality(), witness })
}

impl Report for CharacterisationReport {
    fn text(&self) -> String {
        format!(
            "holds: {}\npairs: {}\nconstraints: {} (rank {})\ncoset dimension: {}\nbasepoint: {}\nrank: {}\northogonal: {}\n",
            self.holds,
            self.pair_count,
            self.constraint_count,
            self.constraint_rank,
            self.coset_dim,
            self.basepoint_ok,
            self.rank_ok,
            self.orthogonal_ok
        )
    }
}

pub fn characterise(g: &Graph) -> CharacterisationReport {
    verify_condition_characterisation(g)
}

#[derive(Debug, Serialize)]
pub struct OrbitEntry {
    pub representative: Vec<[[usize; 2]; 2]>,
    pub size: u128,
}

#[derive(Debug, Serialize)]
pub struct OrbitReport {
    pub card: usize,
    pub group_order: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitEntry>,
    pub audit: BurnsideAudit,
}

impl Report for OrbitReport {
    fn text(&self) -> String {
        let mut s =
            format!("group order: {}\norbits of {}-subsets: {}\n", self.group_order, self.card, self.orbit_count);
        for o in &self.orbits {
            let members: Vec<String> = o.representative.iter().map(pair_text).collect();
            let _ = writeln!(s, "  {{{}}} size {}", members.join(", "), o.size);
        }
        let _ = writeln!(s, "class\tsize\tfixed");
        for r in &self.audit.rows {
            let _ = writeln!(s, "{}\t{}\t{}", r.representative, r.class_size, r.fixed[0]);
        }
        let _ = writeln!(s, "total\t{}\t{}", self.group_order, self.audit.totals[0]);
        s
    }
}

pub fn orbits(g: &Graph, card: usize) -> Result<OrbitReport, CliError> {
    let idx = PairIndex::new(g);
    let reps = orbit_representatives(g, card)?;
    let audit = burnside_audit(g, &[card])?;
    Ok(OrbitReport {
        card,
        group_order: audit.group_order,
        orbit_count: reps.len(),
        orbits: reps
            .into_iter()
            .map(|o| OrbitEntry { representative: o.representative.to_file(&idx), size: o.size })
            .collect(),
        audit,
    })
}

#[derive(Debug, Serialize)]
pub struct Bound {
    pub n: usize,
    pub bound: u64,
}

impl Report for Bound {
    fn text(&self) -> String {
        format!("{}\n", self.bound)
    }
}

pub fn bound(n: usize) -> Result<Bound, CliError> {
    Ok(Bound { n, bound: max_realisable_bound(n)? })
}

impl Report for CrossingReportFile {
    fn text(&self) -> String {
        let mut s = format!(
            "independent crossings: {}\nadjacent crossings: {}\nrealised pairs: {}\n",
            self.independent_crossings, self.adjacent_crossings, self.realized_cardinality
        );
        for (flag, v) in [
            ("good", self.good),
            ("tolerable", self.tolerable),
            ("bad", self.bad),
            ("thrackle", self.thrackle),
            ("generalized thrackle", self.generalized_thrackle),
            ("superthrackle", self.superthrackle),
        ] {
            let _ = writeln!(s, "{flag}: {v}");
        }
        for p in self.pair_counts.iter().filter(|p| p.crossings > 0) {
            let kind = if p.independent { "independent" } else { "adjacent" };
            let _ = writeln!(s, "  {} {kind} {}", pair_text(&p.edges), p.crossings);
        }
        s
    }
}

pub fn verify_drawing(d: &Drawing) -> CrossingReportFile {
    crossing_report(d).to_file(&PairIndex::new(d.graph()))
}
