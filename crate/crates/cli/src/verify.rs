use hfk_core::algebra::{algebra_for, default_degree_cap};
use hfk_core::alexander::alexander_from_braid;
use hfk_core::braid::build_diagram;
use hfk_core::cube::{Cube, Memo, SignRule};
use hfk_core::homology::homology;
use hfk_core::resolution::RelationMode;
use serde_json::json;

use crate::commands::{braid, grid_verdict, special_checks, Verdict};
use crate::{CubeArgs, Format};

/// Largest special grid whose corner maps are checked.
const MAX_SPECIAL_SIZE: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

struct Matrix(Vec<(String, Status, String)>);

impl Matrix {
    fn push(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.0.push((name.to_string(), status, detail.into()));
    }
}

pub fn run(text: &str, args: &CubeArgs, fmt: Format, max_size: usize, corrupt_signs: bool) -> Result<bool, String> {
    let w = braid(text)?;
    let mut cfg = args.config(w.len());
    cfg.check_faces = false;
    if corrupt_signs {
        cfg.signs = SignRule::AllPositive;
    }
    let mut m = Matrix(Vec::new());
    let d = build_diagram(&w);
    let cube = Cube::build(&d, &cfg, &Memo::new()).map_err(|e| format!("cube: {e}"))?;
    match cube.check_faces() {
        Ok(()) => m.push("faces", Status::Pass, format!("{} crossings", w.len())),
        Err(e) => m.push("faces", Status::Fail, e.to_string()),
    }
    let h = match cube.total_complex() {
        Ok(tc) => {
            m.push("d_squared", Status::Pass, format!("total dimension {}", tc.total_dim()));
            Some(homology(&tc, &w.to_string()))
        }
        Err(e) => {
            m.push("d_squared", Status::Fail, e.to_string());
            None
        }
    };
    match &h {
        Some(h) => {
            let delta = alexander_from_braid(&w);
            m.push("euler", Status::of(h.euler() == delta), format!("{} vs {delta}", h.euler()));
        }
        None => m.push("euler", Status::Skip, "no homology"),
    }
    let other = match cfg.mode {
        RelationMode::All => RelationMode::CoherentCycles,
        RelationMode::CoherentCycles => RelationMode::All,
    };
    let cap = cfg.degree_cap.unwrap_or_else(|| default_degree_cap(w.len()));
    let mut mode_bad = Vec::new();
    let mut kauffman_bad = Vec::new();
    for v in &cube.vertices {
        match algebra_for(&v.graph, other, cfg.subset_cap, cap) {
            Ok(alt) if alt.dims_by_a2() == v.algebra.dims_by_a2() => {}
            _ => mode_bad.push(v.assignment.to_string()),
        }
        let ok = if v.graph.is_connected() {
            v.algebra.total_dim() as u64 == v.graph.count_kauffman_states()
        } else {
            v.algebra.is_zero()
        };
        if !ok {
            kauffman_bad.push(v.assignment.to_string());
        }
    }
    let n = cube.vertices.len();
    let report = |bad: &[String]| if bad.is_empty() { format!("{n} resolutions") } else { format!("differs at {}", bad.join(" ")) };
    m.push("mode_equivalence", Status::of(mode_bad.is_empty()), report(&mode_bad));
    m.push("kauffman", Status::of(kauffman_bad.is_empty()), report(&kauffman_bad));
    match &h {
        Some(h) => match grid_verdict(&w, h, max_size)? {
            (Verdict::Skipped(why), _) => m.push("grid", Status::Skip, why),
            (v, size) => m.push("grid", Status::of(v == Verdict::Match), format!("{size}x{size} grid")),
        },
        None => m.push("grid", Status::Skip, "no homology"),
    }
    if w.is_empty() {
        m.push("special", Status::Skip, "no crossings");
    } else {
        match hfk_core::grid::special_grid(&w) {
            Ok(sg) if sg.braid.grid.n <= MAX_SPECIAL_SIZE => {
                for (name, pass, detail) in special_checks(&w)? {
                    m.push(&name, Status::of(pass), detail);
                }
            }
            Ok(sg) => m.push("special", Status::Skip, format!("special grid size {} exceeds {MAX_SPECIAL_SIZE}", sg.braid.grid.n)),
            Err(e) => m.push("special", Status::Fail, e.to_string()),
        }
    }
    let ok = m.0.iter().all(|(_, s, _)| *s != Status::Fail);
    match fmt {
        Format::Json => {
            let checks: Vec<_> = m.0.iter().map(|(c, s, d)| json!({ "check": c, "status": s.label(), "detail": d })).collect();
            let v = json!({ "braid": w.to_string(), "config": crate::commands::config_json(&cfg), "checks": checks, "pass": ok });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Text => {
            println!("verify {w}");
            for (c, s, d) in &m.0 {
                println!("{:<4} {c}: {d}", s.label());
            }
            println!("{}", if ok { "all checks passed" } else { "some checks FAILED" });
        }
    }
    Ok(ok)
}
