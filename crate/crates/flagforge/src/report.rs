//! Serializable run reports and graph export (edge list and graph6).

use std::fmt::Write as _;

use anyhow::{bail, ensure, Result};
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::designs::Flag;
use crate::flagcalc::{
    build_graph, co_line, flag_orbits, pair_classes, prefilter, verify_symmetric, BuildMode,
    FlagGraph, FlagGraphReport, FlagOrbit, PairClass,
};

/// A flag rendered with 1-based points for reports.
#[derive(Serialize)]
pub struct FlagJson {
    pub point: u32,
    pub co_block: Vec<u32>,
}

impl FlagJson {
    fn new(entry: &CatalogEntry, f: Flag) -> FlagJson {
        FlagJson {
            point: f.point + 1,
            co_block: co_line(entry, f.line).iter().map(|p| p + 1).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct OrbitJson {
    pub representative: FlagJson,
    pub size: u64,
    pub per_point_count: u64,
    pub feasible: bool,
    pub reason: String,
}

#[derive(Serialize)]
pub struct GraphReportJson {
    pub order: u64,
    pub per_point_count: u64,
    pub cross_block_vertex_count: u64,
    pub ell: u64,
    pub valency: u64,
    pub arc_count: u64,
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks_independent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_design_repeated_blocks: Option<bool>,
}

impl GraphReportJson {
    fn new(r: &FlagGraphReport) -> GraphReportJson {
        GraphReportJson {
            order: r.order as u64,
            per_point_count: r.per_point_count,
            cross_block_vertex_count: r.cross_block_vertex_count,
            ell: r.ell,
            valency: r.valency,
            arc_count: r.arc_count as u64,
            v: r.v,
            b: r.b,
            k: r.k,
            r: r.r,
            quotient_complete: r.quotient_complete,
            blocks_independent: r.blocks_independent,
            dual_design_repeated_blocks: r.dual_design_repeated_blocks,
        }
    }
}

#[derive(Serialize)]
pub struct ClassJson {
    pub index: usize,
    pub second_flag: FlagJson,
    pub orbit_size: u64,
    pub ell: u64,
    pub self_paired: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<GraphReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_violations: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct AnalyzeJson {
    pub schema: u32,
    pub entry: String,
    pub description: String,
    pub points: u32,
    pub group_order: u64,
    pub mode: String,
    pub prefilter_pair_count_divides: bool,
    pub prefilter_line_stabilizer_divides: bool,
    pub flag_orbits: Vec<OrbitJson>,
    pub feasible: bool,
    pub classes: Vec<ClassJson>,
    pub all_checks_passed: bool,
}

/// Run the whole pipeline on one entry and collect the report. Infeasible
/// entries are a valid outcome, reported with `feasible: false`.
pub fn analyze_entry(entry: &CatalogEntry, mode: BuildMode, workers: usize) -> Result<AnalyzeJson> {
    let pf = prefilter(entry);
    let orbits = flag_orbits(entry);
    let feasible: Vec<&FlagOrbit> = orbits.iter().filter(|o| o.feasible).collect();

    let mut classes_json = Vec::new();
    let mut all_ok = true;
    for fo in &feasible {
        for (i, cls) in pair_classes(entry, fo)?.iter().enumerate() {
            let (mut report, graph) = if cls.self_paired {
                let (r, g) = build_graph(entry, fo, cls, mode, workers)?;
                (Some(r), g)
            } else {
                (None, None)
            };
            let violations = graph.as_ref().map(|g| {
                let cert = verify_symmetric(entry, cls, g);
                if !cert.ok() {
                    all_ok = false;
                }
                if let Some(r) = report.as_mut() {
                    r.quotient_complete = Some(!cert.failed("quotient"));
                    r.blocks_independent = Some(!cert.failed("independent"));
                    r.dual_design_repeated_blocks = Some(cert.failed("dual design"));
                }
                cert.violations
            });
            classes_json.push(ClassJson {
                index: i,
                second_flag: FlagJson::new(entry, cls.rep.1),
                orbit_size: cls.orbit_size as u64,
                ell: cls.ell,
                self_paired: cls.self_paired,
                report: report.as_ref().map(GraphReportJson::new),
                certificate_violations: violations,
            });
        }
    }

    Ok(AnalyzeJson {
        schema: 1,
        entry: entry.name.clone(),
        description: entry.description.clone(),
        points: entry.points(),
        group_order: entry.group.order() as u64,
        mode: match mode {
            BuildMode::Stats => "stats".to_string(),
            BuildMode::Full => "full".to_string(),
        },
        prefilter_pair_count_divides: pf.pair_count_divides,
        prefilter_line_stabilizer_divides: pf.line_stabilizer_divides,
        flag_orbits: orbits
            .iter()
            .map(|o| OrbitJson {
                representative: FlagJson::new(entry, o.representative),
                size: o.size as u64,
                per_point_count: o.per_point_count,
                feasible: o.feasible,
                reason: o.reason.clone(),
            })
            .collect(),
        feasible: !feasible.is_empty(),
        classes: classes_json,
        all_checks_passed: all_ok,
    })
}

/// Rebuild the graph of one class (indexed into the canonical class list of
/// the unique feasible orbit) in full mode.
pub fn build_class_graph(
    entry: &CatalogEntry,
    class_index: usize,
    workers: usize,
) -> Result<(FlagOrbit, PairClass, FlagGraph)> {
    let orbits = flag_orbits(entry);
    let fo = orbits
        .into_iter()
        .find(|o| o.feasible)
        .ok_or_else(|| anyhow::anyhow!("{}: no feasible flag orbit", entry.name))?;
    let mut classes = pair_classes(entry, &fo)?;
    ensure!(
        class_index < classes.len(),
        "{}: class index {} out of range ({} classes)",
        entry.name,
        class_index,
        classes.len()
    );
    let cls = classes.swap_remove(class_index);
    ensure!(
        cls.self_paired,
        "{}: class {} is not self-paired and defines no graph",
        entry.name,
        class_index
    );
    let (_, graph) = build_graph(entry, &fo, &cls, BuildMode::Full, workers)?;
    Ok((fo, cls, graph.unwrap()))
}

/// Build the graph of the self-paired class with the largest cross-block
/// valency of the unique feasible orbit.
pub fn build_largest_class_graph(
    entry: &CatalogEntry,
    workers: usize,
) -> Result<(FlagOrbit, PairClass, FlagGraph)> {
    let orbits = flag_orbits(entry);
    let fo = orbits
        .into_iter()
        .find(|o| o.feasible)
        .ok_or_else(|| anyhow::anyhow!("{}: no feasible flag orbit", entry.name))?;
    let cls = pair_classes(entry, &fo)?
        .into_iter()
        .filter(|c| c.self_paired)
        .max_by_key(|c| c.ell)
        .ok_or_else(|| anyhow::anyhow!("{}: no self-paired class", entry.name))?;
    let (_, graph) = build_graph(entry, &fo, &cls, BuildMode::Full, workers)?;
    Ok((fo, cls, graph.unwrap()))
}

/// Edge list with 1-based vertex ids, one "a b" line per edge, edges sorted.
pub fn edge_list(graph: &FlagGraph) -> String {
    let mut out = String::new();
    for vi in 0..graph.vertices.len() as u32 {
        for &w in graph.neighbours(vi) {
            if vi < w {
                writeln!(out, "{} {}", vi + 1, w + 1).unwrap();
            }
        }
    }
    out
}

/// Sidecar table mapping vertex id to its flag: "id point co-block..." with
/// 1-based points.
pub fn vertex_table(entry: &CatalogEntry, graph: &FlagGraph) -> String {
    let mut out = String::new();
    for (i, f) in graph.vertices.iter().enumerate() {
        let co: Vec<String> = co_line(entry, f.line)
            .iter()
            .map(|p| (p + 1).to_string())
            .collect();
        writeln!(out, "{} {} {}", i + 1, f.point + 1, co.join(",")).unwrap();
    }
    out
}

/// graph6 encoding of the graph (undirected, no loops), for up to 62000
/// vertices.
pub fn graph6(graph: &FlagGraph) -> Result<Vec<u8>> {
    let n = graph.vertices.len();
    ensure!(n <= 62_000, "graph6 export limited to 62000 vertices, got {n}");
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        bytes.push(((n >> 12) & 63) as u8 + 63);
        bytes.push(((n >> 6) & 63) as u8 + 63);
        bytes.push((n & 63) as u8 + 63);
    }
    // upper-triangle adjacency bits, column by column
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n as u32 {
        let row = graph.neighbours(j);
        let mut it = row.iter().peekable();
        for i in 0..j {
            while let Some(&&w) = it.peek() {
                if w < i {
                    it.next();
                } else {
                    break;
                }
            }
            let bit = it.peek().is_some_and(|&&w| w == i);
            acc = (acc << 1) | bit as u8;
            nbits += 1;
            if nbits == 6 {
                bytes.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push((acc << (6 - nbits)) + 63);
    }
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Graph6,
}

/// Export a rebuilt class graph to `path` (plus a `.vertices` sidecar for
/// edge lists). Output is canonical and byte-stable.
pub fn export_graph(
    entry: &CatalogEntry,
    class_index: usize,
    format: ExportFormat,
    path: &std::path::Path,
    workers: usize,
) -> Result<()> {
    let (_, _, graph) = build_class_graph(entry, class_index, workers)?;
    match format {
        ExportFormat::EdgeList => {
            std::fs::write(path, edge_list(&graph))?;
            let mut side = path.as_os_str().to_owned();
            side.push(".vertices");
            std::fs::write(std::path::PathBuf::from(side), vertex_table(entry, &graph))?;
        }
        ExportFormat::Graph6 => {
            std::fs::write(path, graph6(&graph)?)?;
        }
    }
    Ok(())
}

/// One row of a verification run.
#[derive(Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub kind: String,
    pub ok: bool,
    pub details: Vec<String>,
}

/// Check one expectation-table entry against the pipeline (stats mode).
pub fn verify_expectation_entry(entry: &CatalogEntry) -> Result<VerifyRow> {
    let exp = crate::closedform::improper_predictions(&entry.name)?;
    let orbits = flag_orbits(entry);
    let feasible: Vec<&FlagOrbit> = orbits.iter().filter(|o| o.feasible).collect();
    if feasible.len() != 1 {
        return Ok(VerifyRow {
            name: entry.name.clone(),
            kind: "table".to_string(),
            ok: false,
            details: vec![format!(
                "{}: {} feasible orbits, expected exactly one [{}]",
                entry.name,
                feasible.len(),
                exp.citation
            )],
        });
    }
    let fo = feasible[0];
    let classes = pair_classes(entry, fo)?;
    let sp: Vec<&PairClass> = classes.iter().filter(|c| c.self_paired).collect();
    let mut ells = Vec::new();
    let mut valencies = Vec::new();
    let mut cross = None;
    for c in &sp {
        let (r, _) = build_graph(entry, fo, c, BuildMode::Stats, 1)?;
        ells.push(r.ell);
        valencies.push(r.valency);
        cross = Some(r.cross_block_vertex_count);
    }
    let details =
        crate::closedform::diff_expectation(&exp, fo.size, &ells, &valencies, cross, sp.len());
    Ok(VerifyRow {
        name: entry.name.clone(),
        kind: "table".to_string(),
        ok: details.is_empty(),
        details,
    })
}

/// Check a plane entry against its closed-form prediction, including the
/// matching structure of every cross-block-valency-1 class.
pub fn verify_plane_entry(entry: &CatalogEntry, workers: usize) -> Result<VerifyRow> {
    let pred = crate::closedform::plane_prediction(entry)?;
    let mut details = Vec::new();
    let orbits = flag_orbits(entry);
    let feasible: Vec<&FlagOrbit> = orbits.iter().filter(|o| o.feasible).collect();
    if feasible.len() != 1 {
        bail!("{}: expected one feasible orbit", entry.name);
    }
    let fo = feasible[0];
    if fo.size != pred.order {
        details.push(format!(
            "{}: order {} != predicted {}",
            entry.name, fo.size, pred.order
        ));
    }
    let classes = pair_classes(entry, fo)?;
    if let Some(c) = classes.iter().find(|c| !c.self_paired) {
        details.push(format!(
            "{}: class with ell {} not self-paired",
            entry.name, c.ell
        ));
    }
    let mut ells: Vec<u64> = classes.iter().map(|c| c.ell).collect();
    ells.sort_unstable();
    if ells != pred.ell_multiset() {
        details.push(format!(
            "{}: ell multiset {:?} != predicted {:?}",
            entry.name,
            ells,
            pred.ell_multiset()
        ));
    }
    for c in &classes {
        let (r, _) = build_graph(entry, fo, c, BuildMode::Stats, 1)?;
        if r.cross_block_vertex_count != pred.cross_block {
            details.push(format!(
                "{}: cross-block count {} != predicted {}",
                entry.name, r.cross_block_vertex_count, pred.cross_block
            ));
        }
        if c.ell == 1 {
            // a cross-block-valency-1 class restricts to a perfect matching
            // between any two blocks
            let (_, g) = build_graph(entry, fo, c, BuildMode::Full, workers)?;
            let g = g.unwrap();
            let edges = crate::flagcalc::cross_block_edges(&g, c.rep.0.point, c.rep.1.point);
            if crate::flagcalc::matching_size(&edges) != Some(pred.cross_block as usize) {
                details.push(format!(
                    "{}: cross-block subgraph of an ell=1 class is not a perfect matching of size {}",
                    entry.name, pred.cross_block
                ));
            }
        }
    }
    Ok(VerifyRow {
        name: entry.name.clone(),
        kind: "plane".to_string(),
        ok: details.is_empty(),
        details,
    })
}

/// Check an entry expected to produce no graph: every flag orbit infeasible,
/// or no self-paired class on any feasible orbit.
pub fn verify_nonexistence_entry(entry: &CatalogEntry) -> Result<VerifyRow> {
    let mut details = Vec::new();
    for fo in flag_orbits(entry).iter().filter(|o| o.feasible) {
        for c in pair_classes(entry, fo)? {
            if c.self_paired {
                details.push(format!(
                    "{}: unexpected self-paired class with ell {} on a feasible orbit",
                    entry.name, c.ell
                ));
            }
        }
    }
    Ok(VerifyRow {
        name: entry.name.clone(),
        kind: "nonexistence".to_string(),
        ok: details.is_empty(),
        details,
    })
}

#[cfg(test)]
mod tests;
