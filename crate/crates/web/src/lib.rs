//! Browser bindings for the demo page in `www/`. Every entry point takes
//! plain strings and returns a JSON string; errors come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use eqideal::degrees::{self, Decision, DegreesJson};
use eqideal::folding::fold;
use eqideal::graphs::{label_name, LabeledGraph};
use eqideal::ideal::{normal_generators, Problem};
use eqideal::words::{Alphabet, FreeWord};
use eqideal::Error;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const PALETTE: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#117a65"];

fn list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|w| !w.is_empty()).collect()
}

fn respond<T: Serialize>(r: Result<T, Error>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
    }
}

/// Draws a based graph on a circle. Parallel edges bend apart, loops are
/// small circles outside the ring, the basepoint is filled.
pub fn graph_svg(g: &LabeledGraph) -> String {
    let (w, h) = (360.0, 360.0);
    let (cx, cy) = (w / 2.0, h / 2.0);
    let nv = g.num_vertices().max(1);
    let r = if nv == 1 { 0.0 } else { 130.0 };
    let pos: Vec<(f64, f64)> = (0..nv)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / nv as f64 - PI / 2.0;
            (cx + r * t.cos(), cy + r * t.sin())
        })
        .collect();

    let mut s = String::new();
    let _ = write!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#);
    s.push_str("<defs>");
    for (i, c) in PALETTE.iter().enumerate() {
        let _ = write!(
            s,
            r#"<marker id="arr{i}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="{c}"/></marker>"#
        );
    }
    s.push_str("</defs>");

    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in g.edges() {
        let color_ix = e.label % PALETTE.len();
        let color = PALETTE[color_ix];
        let label = label_name(g.n_labels(), e.label);
        let key = (e.source.min(e.target), e.source.max(e.target));
        let k = seen.entry(key).or_insert(0);
        let nth = *k;
        *k += 1;
        let (x1, y1) = pos[e.source];
        if e.source == e.target {
            let (dx, dy) = (x1 - cx, y1 - cy);
            let norm = (dx * dx + dy * dy).sqrt().max(1.0);
            let rad = 16.0 + 8.0 * nth as f64;
            let (ux, uy) = if r == 0.0 { (0.0, -1.0) } else { (dx / norm, dy / norm) };
            let (ox, oy) = (x1 + ux * rad, y1 + uy * rad);
            let _ = write!(
                s,
                r#"<circle cx="{ox:.1}" cy="{oy:.1}" r="{rad:.1}" fill="none" stroke="{color}" stroke-width="1.6"/>"#
            );
            let _ = write!(
                s,
                r#"<text x="{:.1}" y="{:.1}" fill="{color}" font-size="13">{label}</text>"#,
                ox + ux * (rad + 6.0),
                oy + uy * (rad + 6.0)
            );
            continue;
        }
        let (x2, y2) = pos[e.target];
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        // alternate sides: 0, +1, -1, +2, ...
        let side = if nth == 0 { 0.0 } else if nth % 2 == 1 { (nth / 2 + 1) as f64 } else { -((nth / 2) as f64) };
        let flip = if e.source < e.target { 1.0 } else { -1.0 };
        let bend = 28.0 * side * flip;
        let (qx, qy) = (mx - dy / len * bend, my + dx / len * bend);
        // stop short of the target disc
        let (ex, ey) = (x2 - (x2 - qx) / len * 10.0, y2 - (y2 - qy) / len * 10.0);
        let _ = write!(
            s,
            r#"<path d="M{x1:.1},{y1:.1} Q{qx:.1},{qy:.1} {ex:.1},{ey:.1}" fill="none" stroke="{color}" stroke-width="1.6" marker-end="url(#arr{color_ix})"/>"#
        );
        let _ = write!(
            s,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}" font-size="13">{label}</text>"#,
            (mx + qx) / 2.0 + 4.0,
            (my + qy) / 2.0 - 4.0
        );
    }
    for (v, &(x, y)) in pos.iter().enumerate().take(g.num_vertices()) {
        let fill = if g.basepoint() == Some(v) { "#222" } else { "#fff" };
        let _ = write!(s, r##"<circle cx="{x:.1}" cy="{y:.1}" r="7" fill="{fill}" stroke="#222" stroke-width="1.5"/>"##);
    }
    s.push_str("</svg>");
    s
}

#[derive(Debug, Serialize)]
pub struct FoldStage {
    pub svg: String,
    pub vertices: usize,
    pub edges: usize,
    /// Whether the fold leading to this stage kept the rank.
    pub rank_preserving: Option<bool>,
}

pub fn fold_stages_of(n: usize, h: &str) -> Result<Vec<FoldStage>, Error> {
    let alph = Alphabet::ambient(n);
    let words = list(h)
        .into_iter()
        .map(|w| FreeWord::parse(alph.clone(), w))
        .collect::<Result<Vec<_>, _>>()?;
    let words: Vec<_> = words.into_iter().filter(|w| !w.is_empty()).collect();
    let start = if words.is_empty() {
        LabeledGraph::new(n, 1, Vec::new(), Some(0))?
    } else {
        LabeledGraph::wedge_of_words(n, &words)?
    };
    let trace = fold(&start);
    Ok((0..=trace.steps.len())
        .map(|i| {
            let g = trace.stage_graph(i);
            FoldStage {
                svg: graph_svg(&g),
                vertices: g.num_vertices(),
                edges: g.num_edges(),
                rank_preserving: i.checked_sub(1).map(|j| trace.steps[j].rank_preserving),
            }
        })
        .collect())
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub depends: bool,
    pub h_basis: Vec<String>,
    pub generators: Vec<String>,
    #[serde(flatten)]
    pub degrees: Option<DegreesJson>,
}

pub fn analyze_of(n: usize, h: &str, g: &str) -> Result<Analysis, Error> {
    let p = Problem::parse(n, &list(h), &list(g))?;
    let pres = normal_generators(&p)?;
    let ideal = pres.to_json();
    let degrees = if pres.generators.is_empty() {
        None
    } else {
        let min = degrees::min_degree(&pres)?;
        let set = degrees::degree_set(&pres)?;
        Some(DegreesJson::new(&min, &set))
    };
    Ok(Analysis { depends: !pres.generators.is_empty(), h_basis: ideal.h_basis, generators: ideal.generators, degrees })
}

#[derive(Debug, Serialize)]
pub struct DegreeAnswer {
    pub degree: String,
    pub exists: Option<bool>,
    pub witness: Option<String>,
    pub note: Option<String>,
}

/// `degree` is "4" for one variable or "2,1" for several.
pub fn degree_query_of(n: usize, h: &str, g: &str, degree: &str) -> Result<DegreeAnswer, Error> {
    let p = Problem::parse(n, &list(h), &list(g))?;
    let dvec = list(degree)
        .into_iter()
        .map(|d| d.parse::<usize>().map_err(|_| Error::Parse { token: d.to_string(), reason: "not a degree".into() }))
        .collect::<Result<Vec<_>, _>>()?;
    if dvec.len() != p.num_vars() {
        return Err(Error::Arity { what: "degrees", expected: p.num_vars(), got: dvec.len() });
    }
    let pres = normal_generators(&p)?;
    let decision = degrees::multi_degree_exists(&pres, &dvec)?;
    let (exists, witness, note) = match decision {
        Decision::Yes(w) => (Some(true), Some(w.to_string()), None),
        Decision::No => (Some(false), None, None),
        Decision::Unknown(why) => (None, None, Some(why)),
    };
    Ok(DegreeAnswer { degree: degree.to_string(), exists, witness, note })
}

#[wasm_bindgen]
pub fn fold_stages(n: usize, h: &str) -> String {
    respond(fold_stages_of(n, h))
}

#[wasm_bindgen]
pub fn analyze(n: usize, h: &str, g: &str) -> String {
    respond(analyze_of(n, h, g))
}

#[wasm_bindgen]
pub fn degree_query(n: usize, h: &str, g: &str, degree: &str) -> String {
    respond(degree_query_of(n, h, g, degree))
}
