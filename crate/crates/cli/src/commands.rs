//! The verbs. Each returns an [`Outcome`]: a JSON report, a rendered
//! table and whether every requested check passed.

use std::fmt::Write as _;

use algebroid_core::algebroid::{Presentation, Verdict};
use algebroid_core::cohomology::{cohomology_with, BigradedTable, CohomologyOptions};
use algebroid_core::constructions::{
    b_hard_lefschetz_obstruction, kunneth_dims, preset, BManifoldSpec, FiniteKahlerRing, PRESET_NAMES,
};
use algebroid_core::lefschetz::{
    betti_evenness_check, ddstar_lemma_on, equivalence_theorem_check, hard_lefschetz_on, intersection_pairing,
    kahler_identity_suite, symplectic_harmonic_on, IdentityStatus, SymplecticData,
};
use algebroid_core::scalar::format_rational;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::model_file::ModelFile;

pub const SCHEMA_VERSION: u32 = 1;
pub const B_PRESETS: &[&str] = &["b-sphere", "b-torus"];
pub const RING_PRESETS: &[&str] = &["point", "cp1-ring", "cp2", "torus"];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub table: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// A model from a preset name or a JSON file.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub source: String,
    pub file: ModelFile,
    pub presentation: Presentation,
}

pub fn load_model(arg: &str, m: usize) -> Result<LoadedModel, CliError> {
    if B_PRESETS.contains(&arg) {
        return Err(CliError::Check(format!(
            "{arg} is a b-manifold spec, not an algebroid model; run `algebroid bgeometry {arg}` for its Hard Lefschetz obstruction"
        )));
    }
    if let Some(p) = preset(arg, m) {
        let source = if arg == "abelian-2m" { format!("{arg} (m = {m})") } else { arg.to_string() };
        return Ok(LoadedModel {
            source,
            file: ModelFile::from_presentation(&p),
            presentation: p,
        });
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        CliError::Input(format!(
            "{arg}: not a preset ({}) and not a readable file: {e}",
            PRESET_NAMES.join(", ")
        ))
    })?;
    let file = ModelFile::parse(&text)?;
    let presentation = file.to_presentation()?;
    Ok(LoadedModel {
        source: arg.to_string(),
        file,
        presentation,
    })
}

fn header(command: &str, model: Option<&LoadedModel>) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(command));
    if let Some(m) = model {
        doc.insert(
            "model".into(),
            json!({"source": m.source, "sha256": m.file.sha256(), "rank": m.file.rank}),
        );
    }
    doc
}

fn table_header(command: &str, model: &LoadedModel) -> String {
    format!("{command}: {} (rank {})\n", model.source, model.file.rank)
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "passed": v.passed,
        "witness": v.witness.as_ref().map(|w| json!({"tuple": w.tuple, "residual": w.residual, "detail": w.detail})),
        "note": v.note,
    })
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = if v.passed { "pass".to_string() } else { "FAIL".to_string() };
    if let Some(w) = &v.witness {
        let _ = write!(s, "  {w}");
    }
    if let Some(n) = &v.note {
        let _ = write!(s, "  ({n})");
    }
    s
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn missing_kahler_data(p: &Presentation) -> Vec<&'static str> {
    let mut out = Vec::new();
    if p.metric().is_none() {
        out.push("metric");
    }
    if p.complex_structure().is_none() {
        out.push("J");
    }
    if p.omega().is_none() {
        out.push("omega");
    }
    out
}

pub fn cmd_validate(model: &LoadedModel) -> Result<Outcome, CliError> {
    let p = &model.presentation;
    let report = p.validate()?;
    let mut doc = header("validate", Some(model));
    let mut section = Map::new();
    let mut table = table_header("validate", model);
    let mut passed = true;
    for (name, v) in report.entries() {
        let (value, text, ok) = match (name, v) {
            (_, Some(v)) => (verdict_json(v), verdict_text(v), v.passed),
            ("kahler", None) => {
                let reason = format!("no {} supplied", missing_kahler_data(p).join(", "));
                (json!({"passed": false, "witness": null, "note": reason}), format!("FAIL  ({reason})"), false)
            }
            (_, None) => (
                json!({"passed": null, "witness": null, "note": "not applicable: input data absent"}),
                "n/a".to_string(),
                true,
            ),
        };
        passed &= ok;
        section.insert(name.into(), value);
        let _ = writeln!(table, "  {name:<18} {text}");
    }
    doc.insert("validation".into(), Value::Object(section));
    Ok(Outcome {
        report: Value::Object(doc),
        table,
        passed,
    })
}

fn table_json(t: &BigradedTable) -> Value {
    json!(t.entries)
}

fn table_text(title: &str, t: &BigradedTable) -> String {
    let mut s = format!("  {title} (rows p, columns q)\n");
    for row in &t.entries {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(s, "    {}", cells.join(""));
    }
    s
}

#[derive(Debug, Clone, Default)]
pub struct CohomologyFlags {
    pub bigraded: bool,
    pub harmonic: bool,
    pub ring: Option<String>,
}

pub fn cmd_cohomology(model: &LoadedModel, flags: &CohomologyFlags) -> Result<Outcome, CliError> {
    let p = &model.presentation;
    if flags.bigraded && p.complex_structure().is_none() {
        return Err(CliError::Check("--bigraded needs a complex structure J; the model has none".into()));
    }
    if flags.harmonic && p.metric().is_none() {
        return Err(CliError::Check("--harmonic needs a metric; the model has none".into()));
    }
    let res = cohomology_with(
        p,
        CohomologyOptions {
            harmonic: flags.harmonic,
            bigraded: flags.bigraded,
        },
    )?;
    let mut doc = header("cohomology", Some(model));
    let mut table = table_header("cohomology", model);
    let _ = writeln!(table, "  dims               {}", list(&res.dims));
    let _ = writeln!(table, "  euler              {}", res.euler_characteristic());
    let mut section = Map::new();
    section.insert("dims".into(), json!(res.dims));
    section.insert("euler_characteristic".into(), json!(res.euler_characteristic()));
    if flags.bigraded {
        if let Some(t) = &res.dolbeault {
            section.insert("dolbeault".into(), table_json(t));
            table.push_str(&table_text("dolbeault h^{p,q}", t));
        }
        match &res.bigraded {
            Some(t) => {
                section.insert("harmonic_bigraded".into(), table_json(t));
                table.push_str(&table_text("harmonic h^{p,q}", t));
                let sums: Vec<bool> = (0..res.dims.len()).map(|k| t.total(k) == res.dims[k]).collect();
                section.insert("bigraded_sums_match".into(), json!(sums.iter().all(|x| *x)));
            }
            None => {
                let reason = "harmonic types need a unimodular Kähler model with a metric";
                section.insert("harmonic_bigraded".into(), json!({"unavailable": reason}));
                let _ = writeln!(table, "  harmonic h^{{p,q}}  unavailable: {reason}");
            }
        }
    }
    if let Some(h) = &res.harmonic {
        let ext = p.exterior();
        let bases: Vec<Vec<String>> = h.iter().map(|deg| deg.iter().map(|f| f.display(&ext)).collect()).collect();
        for (k, b) in bases.iter().enumerate() {
            let _ = writeln!(table, "  harmonic H^{k}        {}", b.join("; "));
        }
        section.insert("harmonic_bases".into(), json!(bases));
    }
    doc.insert("cohomology".into(), Value::Object(section));
    let mut passed = true;
    if let Some(name) = &flags.ring {
        let ring = FiniteKahlerRing::by_name(name).ok_or_else(|| {
            CliError::Input(format!("unknown ring {name}; available: {}", RING_PRESETS.join(", ")))
        })?;
        let k = kunneth_dims(p, &ring)?;
        let hl = k.lefschetz_passed();
        passed &= hl != Some(false);
        doc.insert(
            "kunneth".into(),
            json!({
                "ring": ring.name(),
                "ce_dims": k.ce_dims,
                "ring_dims": k.ring_dims,
                "dims": k.dims,
                "hard_lefschetz": k.lefschetz.as_ref().map(|steps| steps.iter().map(|s| json!({
                    "k": s.k, "source_dim": s.source_dim, "target_dim": s.target_dim, "rank": s.rank, "iso": s.iso
                })).collect::<Vec<_>>()),
                "hard_lefschetz_passed": hl,
            }),
        );
        let _ = writeln!(table, "  kunneth x {:<8} {}", ring.name(), list(&k.dims));
        if let Some(ok) = hl {
            let _ = writeln!(table, "  tensor HL          {}", if ok { "pass" } else { "FAIL" });
        }
    }
    Ok(Outcome {
        report: Value::Object(doc),
        table,
        passed,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TheoremFlags {
    pub hard_lefschetz: bool,
    pub ddstar: bool,
    pub identities: bool,
    pub pairing: bool,
    pub all: bool,
}

impl TheoremFlags {
    fn any(&self) -> bool {
        self.hard_lefschetz || self.ddstar || self.identities || self.pairing || self.all
    }
}

struct Sections {
    doc: Map<String, Value>,
    table: String,
    passed: bool,
}

impl Sections {
    fn add(&mut self, name: &str, result: Result<(Value, String, bool), algebroid_core::Error>) {
        match result {
            Ok((value, text, ok)) => {
                self.passed &= ok;
                self.doc.insert(name.into(), value);
                self.table.push_str(&text);
            }
            Err(e) => {
                self.passed = false;
                self.doc.insert(name.into(), json!({"error": e.to_string()}));
                let _ = writeln!(self.table, "  {name:<20} error: {e}");
            }
        }
    }
}

pub fn cmd_theorems(model: &LoadedModel, flags: TheoremFlags) -> Result<Outcome, CliError> {
    let flags = if flags.any() { flags } else { TheoremFlags { all: true, ..flags } };
    let p = &model.presentation;
    let mut s = Sections {
        doc: header("theorems", Some(model)),
        table: table_header("theorems", model),
        passed: true,
    };
    let data = if flags.all || flags.hard_lefschetz || flags.ddstar {
        match SymplecticData::new(p) {
            Ok(d) => Some(d),
            Err(e) => {
                s.add("symplectic", Err(e));
                None
            }
        }
    } else {
        None
    };
    if let Some(data) = &data {
        if flags.all || flags.hard_lefschetz {
            s.add(
                "hard_lefschetz",
                hard_lefschetz_on(data).map(|r| {
                    let steps: Vec<Value> = r
                        .steps
                        .iter()
                        .map(|st| json!({"k": st.k, "source_dim": st.source_dim, "target_dim": st.target_dim,
                            "rank": st.rank, "iso": st.iso, "witness": st.witness}))
                        .collect();
                    let mut t = format!("  hard Lefschetz       {}\n", if r.passed { "pass" } else { "FAIL" });
                    for st in &r.steps {
                        let _ = writeln!(
                            t,
                            "    k={} H^{} -> H^{}: dims {} -> {}, rank {}{}",
                            st.k,
                            r.m - st.k,
                            r.m + st.k,
                            st.source_dim,
                            st.target_dim,
                            st.rank,
                            st.witness.as_ref().map(|w| format!(", kernel {w}")).unwrap_or_default()
                        );
                    }
                    (json!({"passed": r.passed, "steps": steps}), t, r.passed)
                }),
            );
        }
        if flags.all || flags.ddstar {
            s.add(
                "ddstar",
                ddstar_lemma_on(data).map(|r| {
                    let degrees: Vec<Value> = r
                        .degrees
                        .iter()
                        .map(|d| json!({"k": d.k, "im_d_ker_dstar": d.exact_coclosed, "im_dstar_ker_d": d.coexact_closed,
                            "im_d_dstar": d.image_d_dstar, "holds": d.holds}))
                        .collect();
                    let mut t = format!("  dd*-lemma            {}\n", if r.passed { "pass" } else { "FAIL" });
                    for d in r.degrees.iter().filter(|d| !d.holds) {
                        let _ = writeln!(
                            t,
                            "    degree {}: dims {} / {} / {}",
                            d.k, d.exact_coclosed, d.coexact_closed, d.image_d_dstar
                        );
                    }
                    (json!({"passed": r.passed, "degrees": degrees}), t, r.passed)
                }),
            );
        }
        if flags.all {
            s.add(
                "symplectic_harmonic",
                symplectic_harmonic_on(data).map(|r| {
                    let t = format!(
                        "  ker d* quasi-iso     {}  sub {} vs {}\n",
                        if r.passed { "pass" } else { "FAIL" },
                        list(&r.sub_dims),
                        list(&r.dims)
                    );
                    (json!({"passed": r.passed, "subcomplex_dims": r.sub_dims, "dims": r.dims}), t, r.passed)
                }),
            );
            // Failure of an individual condition is already counted; here
            // only disagreement matters.
            s.add(
                "equivalence",
                equivalence_theorem_check(p).map(|r| {
                    let t = format!("  equivalence          consistent ({})\n", if r.verdict { "all hold" } else { "all fail" });
                    (json!({"consistent": true, "verdict": r.verdict}), t, true)
                }),
            );
        }
    }
    if flags.all || flags.identities {
        s.add(
            "identities",
            kahler_identity_suite(p).map(|r| {
                let mut t = String::from("  Kähler identities\n");
                let mut entries = Map::new();
                for e in &r.entries {
                    entries.insert(e.name.into(), json!({"status": e.status.as_str(), "witness": e.witness}));
                    let _ = writeln!(
                        t,
                        "    {:<12} {}{}",
                        e.status.as_str(),
                        e.name,
                        e.witness.as_ref().map(|w| format!("  [{w}]")).unwrap_or_default()
                    );
                }
                let ok = r.entries.iter().all(|e| e.status != IdentityStatus::Fails);
                (json!({"passed": ok, "unimodular": r.unimodular, "entries": entries}), t, ok)
            }),
        );
    }
    if flags.all || flags.pairing {
        s.add(
            "pairing",
            intersection_pairing(p).map(|r| {
                let mut t = format!("  pairing I (eta = {})\n", format_rational(&r.eta));
                let degrees: Vec<Value> = r
                    .degrees
                    .iter()
                    .map(|d| {
                        let _ = writeln!(
                            t,
                            "    H^{}: rank {} of {}, {}{}",
                            d.degree,
                            d.rank,
                            d.matrix.rows(),
                            d.symmetry.as_str(),
                            if d.nondegenerate { ", nondegenerate" } else { ", degenerate" }
                        );
                        let rows: Vec<Vec<String>> = d
                            .matrix
                            .to_rows()
                            .iter()
                            .map(|row| row.iter().map(format_rational).collect())
                            .collect();
                        json!({"k": d.k, "degree": d.degree, "matrix": rows, "rank": d.rank,
                            "nondegenerate": d.nondegenerate, "symmetry": d.symmetry.as_str(),
                            "sign_law_holds": d.sign_law_holds, "well_defined": d.well_defined})
                    })
                    .collect();
                let ok = r.degrees.iter().all(|d| d.sign_law_holds && d.well_defined);
                (json!({"passed": ok, "eta": format_rational(&r.eta), "degrees": degrees}), t, ok)
            }),
        );
    }
    if flags.all {
        s.add(
            "betti_evenness",
            betti_evenness_check(p).map(|r| {
                let mut t = format!("  Betti evenness       {}\n", if r.passed { "consistent" } else { "FAIL" });
                let odd: Vec<Value> = r
                    .odd_degrees
                    .iter()
                    .map(|d| {
                        if d.contrapositive() {
                            let _ = writeln!(t, "    b_{} = {} odd, pairing degenerate", d.degree, d.dim);
                        }
                        json!({"degree": d.degree, "dim": d.dim, "nondegenerate": d.nondegenerate,
                            "contrapositive": d.contrapositive()})
                    })
                    .collect();
                (
                    json!({"passed": r.passed, "all_even": r.all_even, "hodge_admissible": r.hodge_admissible, "odd_degrees": odd}),
                    t,
                    r.passed,
                )
            }),
        );
    }
    Ok(Outcome {
        report: Value::Object(s.doc),
        table: s.table,
        passed: s.passed,
    })
}

/// `name` is a b-preset; otherwise `bm`/`bz` give the Betti vectors.
pub fn cmd_bgeometry(
    name: Option<&str>,
    bm: Option<Vec<usize>>,
    bz: Option<Vec<usize>>,
    m: Option<usize>,
) -> Result<Outcome, CliError> {
    let spec = match (name, bm) {
        (Some("b-sphere"), None) => BManifoldSpec::sphere(),
        (Some("b-torus"), None) => BManifoldSpec::torus(),
        (Some(other), None) => {
            return Err(CliError::Input(format!(
                "unknown b-manifold preset {other}; available: {}",
                B_PRESETS.join(", ")
            )))
        }
        (None, Some(bm)) => BManifoldSpec::new(bm, bz.unwrap_or_default()).map_err(|e| CliError::Input(e.to_string()))?,
        (Some(_), Some(_)) => return Err(CliError::Input("give a preset or --bm, not both".into())),
        (None, None) => return Err(CliError::Input("give a b-manifold preset or --bm".into())),
    };
    let dims = algebroid_core::constructions::mazzeo_melrose(&spec);
    let m = m.unwrap_or((dims.len().saturating_sub(1)) / 2);
    let r = b_hard_lefschetz_obstruction(&spec, m)?;
    let mut doc = header("bgeometry", None);
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| json!({"k": s.k, "source_dim": s.source_dim, "target_dim": s.target_dim,
            "verdict": s.verdict.as_str(), "not_surjective": s.not_surjective}))
        .collect();
    doc.insert(
        "bgeometry".into(),
        json!({"source": name.unwrap_or("custom"), "manifold": spec.manifold, "hypersurface": spec.hypersurface,
            "m": r.m, "dims": r.dims, "steps": steps, "verdict": r.verdict.as_str()}),
    );
    let mut table = format!("bgeometry: {}\n", name.unwrap_or("custom"));
    let _ = writeln!(table, "  b-dims             {}", list(&r.dims));
    for s in &r.steps {
        let _ = writeln!(
            table,
            "  k={}  {} -> {}  {}{}",
            s.k,
            s.source_dim,
            s.target_dim,
            s.verdict.as_str(),
            if s.not_surjective { " (not even surjective)" } else { "" }
        );
    }
    let _ = writeln!(table, "  hard Lefschetz     {}", r.verdict.as_str());
    Ok(Outcome {
        report: Value::Object(doc),
        table,
        passed: true,
    })
}

pub fn cmd_list_presets() -> Outcome {
    let mut doc = header("list-presets", None);
    doc.insert(
        "presets".into(),
        json!({"models": PRESET_NAMES, "rings": RING_PRESETS, "b_manifolds": B_PRESETS}),
    );
    let table = format!(
        "models       {}\nrings        {}\nb-manifolds  {}\n",
        PRESET_NAMES.join(", "),
        RING_PRESETS.join(", "),
        B_PRESETS.join(", ")
    );
    Outcome {
        report: Value::Object(doc),
        table,
        passed: true,
    }
}
