use crate::args::{BuildKind, Command, LevelArg, VerifyKind};
use crate::config::{Manifest, Settings};
use crate::output::{emit_text, write_atomic};
use anyhow::{anyhow, bail, Context, Result};
use hdx_core::buildings::{section_graph, spherical_building_with_cap, VertexTypes};
use hdx_core::cohomology::{check_identities, epsilon, epsilon_tilde, mu, systole, Invariant};
use hdx_core::generators::{complete_complex, cone, linial_meshulam, rp2_six_vertex, sphere_boundary};
use hdx_core::io::{parse_cochain, parse_facets, write_cochain, write_facets};
use hdx_core::minimization::{
    classify_thin_thick, descent_preserves_class, is_locally_minimal, locally_minimize, Level, ThinThickParams,
};
use hdx_core::overlap::{arrangement_depth, overlap_trials, trial_seed, Placement};
use hdx_core::rational::{Exact, Rational};
use hdx_core::spectral::{
    cheeger_sweep, gram_constants, greedy_adversarial_tset, link_graph, mixing_sweep, one_skeleton, quotient_comparison, section_as_graph,
    spectrum, Graph,
};
use hdx_core::verify::{
    mu_pipeline_report, pyramid_counts, sample_coboundaries, sample_cochains, triangle_counts, triangle_counts_3d, vertex_split_check,
};
use hdx_core::{Cochain, Complex};
use serde::Serialize;
use serde_json::{json, Value as Json};
use std::path::{Path, PathBuf};

/// A finished command: its JSON report (if any) and failed hard assertions.
pub struct Outcome {
    pub report: Option<Json>,
    pub failures: Vec<String>,
}

impl Outcome {
    fn quiet() -> Outcome {
        Outcome { report: None, failures: Vec::new() }
    }

    fn report(report: Json, failures: Vec<String>) -> Outcome {
        Outcome { report: Some(report), failures }
    }
}

fn read_complex(m: &mut Manifest, path: &Path) -> Result<Complex> {
    let text = m.read(path)?;
    parse_facets(&text).with_context(|| format!("{}", path.display()))
}

fn read_cochain(m: &mut Manifest, x: &Complex, path: &Path) -> Result<Cochain> {
    let text = m.read(path)?;
    parse_cochain(x, &text).with_context(|| format!("{}", path.display()))
}

fn read_types(m: &mut Manifest, x: &Complex, path: Option<&Path>) -> Result<Option<VertexTypes>> {
    path.map(|p| {
        let text = m.read(p)?;
        VertexTypes::parse_annotation(&text, x).with_context(|| format!("{}", p.display()))
    })
    .transpose()
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".types");
    path.with_file_name(name)
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn run(command: &Command, s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    match command {
        Command::Build { kind } => build(kind, s, m),
        Command::Spherical { r, q, output, annotation } => {
            m.stage("building");
            let b = spherical_building_with_cap(*r, *q, s.cap)?;
            write_atomic(output, write_facets(&b.complex)?.as_bytes())?;
            let side = annotation.clone().unwrap_or_else(|| sidecar(output));
            write_atomic(&side, b.annotation().as_bytes())?;
            Ok(Outcome::quiet())
        }
        Command::Analyze { input, invariants, dims } => analyze(input, invariants, dims, s, m),
        Command::Minimize { input, cochain, dim, trace, output } => minimize(input, cochain, *dim, trace.as_deref(), output.as_deref(), s, m),
        Command::Spectra { input, graph, q, samples, quotient_dim, csv } => {
            spectra(input.as_deref(), graph, *q, *samples, *quotient_dim, csv.as_deref(), s, m)
        }
        Command::Verify { what } => verify(what, s, m),
        Command::Overlap { input, trials, oracle } => overlap(input, *trials, *oracle, s, m),
    }
}

fn build(kind: &BuildKind, s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    m.stage("build");
    let (x, out) = match kind {
        BuildKind::Complete { n, d, output } => (complete_complex(*n, *d)?, output),
        BuildKind::Sphere { d, output } => (sphere_boundary(*d), output),
        BuildKind::Rp2 { output } => (rp2_six_vertex(), output),
        BuildKind::Lm { n, d, p, output } => {
            let x = linial_meshulam(*n, *d, *p, s.seed)?;
            if x.is_pure() {
                (x, output)
            } else {
                // a facet list cannot carry (d-1)-cells without cofaces
                let pure = Complex::from_facets(x.cells(*d))?;
                log::warn!("dropping {} uncovered {}-cells; writing the pure part", x.n_cells(d - 1) - pure.n_cells(d - 1), d - 1);
                (pure, output)
            }
        }
        BuildKind::Cone { input, output } => {
            let x = cone(&read_complex(m, input)?)?;
            // Carry a building annotation over, giving the apex type 0.
            let side = sidecar(input);
            if let (Some(out), true) = (output, side.exists()) {
                let mut text = m.read(&side)?;
                if !text.ends_with('\n') {
                    text.push('\n');
                }
                text.push_str(&format!("{} 0\n", x.vertex_id(x.n_vertices() - 1)));
                write_atomic(&sidecar(out), text.as_bytes())?;
            }
            (x, output)
        }
    };
    let text = write_facets(&x).context("only pure complexes have a facet list")?;
    emit_text(out.as_deref(), &text)?;
    Ok(Outcome::quiet())
}

#[derive(Serialize)]
struct InvariantOut {
    dim: usize,
    name: &'static str,
    value: hdx_core::rational::Value,
    exact: bool,
    bound: hdx_core::cohomology::Bound,
    witness: Option<Vec<Vec<u32>>>,
    filling: Option<Vec<Vec<u32>>>,
    certified: Option<Exact>,
}

fn invariant_out(x: &Complex, v: &Invariant) -> InvariantOut {
    InvariantOut {
        dim: v.dim,
        name: v.name,
        value: v.value.clone(),
        exact: v.exact,
        bound: v.bound,
        witness: v.witness.as_ref().map(|c| x.cochain_cells(c)),
        filling: v.filling.as_ref().map(|c| x.cochain_cells(c)),
        certified: v.certified.clone().map(Exact),
    }
}

fn complex_summary(x: &Complex) -> Json {
    json!({
        "dim": x.dim(),
        "f_vector": x.f_vector(),
        "pure": x.is_pure(),
        "homogeneous": x.is_homogeneous(),
    })
}

fn analyze(input: &Path, names: &[String], dims: &[usize], s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    let x = read_complex(m, input)?;
    let dims: Vec<usize> = if dims.is_empty() { (0..x.dim()).collect() } else { dims.to_vec() };
    let cfg = s.search();
    let mut out = Vec::new();
    for &i in &dims {
        for name in names {
            m.stage(&format!("{name}_{i}"));
            let v = match name.trim() {
                "epsilon" => epsilon(&x, i, &cfg),
                "epsilon_tilde" => epsilon_tilde(&x, i, &cfg),
                "mu" => mu(&x, i, &cfg),
                "systole" => systole(&x, i, &cfg),
                other => bail!("unknown invariant {other:?}; expected epsilon, epsilon_tilde, mu or systole"),
            }
            .with_context(|| format!("{name} in dimension {i}"))?;
            out.push(v);
        }
    }
    m.stage("identities");
    let identities = check_identities(&x, &out)?;
    let failures = identities.iter().filter(|c| !c.holds).map(|c| format!("dimension {}: {} ({} vs {})", c.dim, c.name, c.lhs, c.rhs)).collect();
    let report = json!({
        "complex": complex_summary(&x),
        "invariants": out.iter().map(|v| invariant_out(&x, v)).collect::<Vec<_>>(),
        "identities": identities,
    });
    Ok(Outcome::report(report, failures))
}

fn minimize(input: &Path, cochain: &Path, dim: Option<usize>, trace_path: Option<&Path>, output: Option<&Path>, s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    let x = read_complex(m, input)?;
    let a = read_cochain(m, &x, cochain)?;
    if let Some(d) = dim {
        if d != a.dim {
            bail!("{}: cochain has dimension {}, expected {d}", cochain.display(), a.dim);
        }
    }
    let cfg = s.search();
    m.stage("descent");
    let (out, trace) = locally_minimize(&x, &a, &cfg)?;
    m.stage("checks");
    let locally_minimal = is_locally_minimal(&x, &out, &cfg)?;
    let class_preserved = descent_preserves_class(&x, &a, &out, &trace)?;
    let mut failures = Vec::new();
    if !locally_minimal {
        failures.push("output is not locally minimal".to_string());
    }
    if !class_preserved {
        failures.push("descent changed the cohomology class".to_string());
    }
    if !trace.within_step_bound() {
        failures.push("step bound exceeded".to_string());
    }
    let trace_json = json!({
        "dim": trace.dim,
        "steps": trace.steps,
        "raw_gamma": x.cochain_cells(&trace.raw_gamma),
        "gamma": x.cochain_cells(&trace.gamma),
        "gamma_exact": trace.gamma_exact,
        "initial_units": trace.initial_units,
        "final_units": trace.final_units,
        "step_bound": trace.step_bound,
        "norm_before": Exact(trace.norm_before.clone()),
        "norm_after": Exact(trace.norm_after.clone()),
        "raw_gamma_norm": Exact(trace.raw_gamma_norm.clone()),
        "gamma_norm": Exact(trace.gamma_norm.clone()),
        "gamma_bound": trace.gamma_bound.clone().map(Exact),
    });
    if let Some(p) = trace_path {
        write_atomic(p, &crate::output::to_json(&trace_json)?)?;
    }
    if let Some(p) = output {
        write_atomic(p, write_cochain(&x, &out).as_bytes())?;
    }
    let report = json!({
        "dim": a.dim,
        "steps": trace.step_count(),
        "step_bound": trace.step_bound,
        "norm_before": Exact(trace.norm_before.clone()),
        "norm_after": Exact(trace.norm_after.clone()),
        "locally_minimal": locally_minimal,
        "class_preserved": class_preserved,
        "gamma_norm": Exact(trace.gamma_norm.clone()),
        "gamma_bound": trace.gamma_bound.clone().map(Exact),
        "gamma_bound_holds": trace.gamma_bound_holds(),
        "output": x.cochain_cells(&out),
    });
    Ok(Outcome::report(report, failures))
}

#[allow(clippy::too_many_arguments)]
fn spectra(input: Option<&Path>, which: &str, q: Option<u32>, samples: usize, quotient_dim: Option<usize>, csv: Option<&Path>, s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    m.stage("graph");
    let need_q = || q.ok_or_else(|| anyhow!("--graph {which} needs --q"));
    let need_input = |m: &mut Manifest| -> Result<Complex> { read_complex(m, input.ok_or_else(|| anyhow!("--graph {which} needs --input"))?) };
    let (g, gram): (Graph, Option<(u64, u64)>) = match which {
        "skeleton" => (one_skeleton(&need_input(m)?), None),
        "z13" | "z12" => {
            let j = if which == "z13" { 3 } else { 2 };
            let sg = section_graph(4, need_q()?, 1, j)?;
            (section_as_graph(&sg), gram_constants(&sg))
        }
        other => match other.strip_prefix("link:") {
            Some(id) => {
                let x = need_input(m)?;
                let id: u32 = id.parse().with_context(|| format!("bad vertex id in {other:?}"))?;
                let v = x.vertex_index(id).ok_or_else(|| anyhow!("vertex {id} is not in the complex"))?;
                (link_graph(&x, v)?, None)
            }
            None => bail!("unknown graph {other:?}; expected skeleton, link:<v>, z13 or z12"),
        },
    };
    m.stage("spectrum");
    let sp = spectrum(&g, s.cap)?;
    let mut failures = Vec::new();
    if sp.max_residual > s.tolerance {
        failures.push(format!("eigen residual {:e} above tolerance", sp.max_residual));
    }
    m.stage("cheeger");
    let cheeger = cheeger_sweep(&g, sp.lambda1_laplacian, 14, samples, s.seed);
    if cheeger.violations > 0 || !cheeger.h_holds {
        failures.push(format!("{} Cheeger violations", cheeger.violations));
    }
    m.stage("mixing");
    let mixing = if g.biregular().is_some() && g.bipartition_is_proper() {
        let r = mixing_sweep(&g, sp.second_adjacency, 14, samples, s.seed ^ 1)?;
        if r.violations > 0 {
            failures.push(format!("{} mixing violations", r.violations));
        }
        Some(r)
    } else {
        None
    };
    let quotient = quotient_dim.map(|d| quotient_comparison(&g, d, &sp)).transpose()?;
    if let Some(p) = csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "eigenvalue"])?;
        for (k, e) in sp.eigenvalues.iter().enumerate() {
            w.write_record([k.to_string(), format!("{e:.12}")])?;
        }
        write_atomic(p, &w.into_inner().map_err(|e| anyhow!("{e}"))?)?;
    }
    let report = json!({
        "graph": which,
        "vertices": g.n(),
        "edges": g.edge_count(),
        "spectrum": sp,
        "gram": gram.map(|(a, b)| json!({"identity": a, "all_ones": b})),
        "cheeger": cheeger,
        "mixing": mixing,
        "quotient": quotient,
    });
    Ok(Outcome::report(report, failures))
}

#[derive(Serialize)]
struct IdentityRuns<T: Serialize> {
    runs: usize,
    failures: usize,
    reports: Vec<T>,
}

impl<T: Serialize> IdentityRuns<T> {
    fn new() -> Self {
        IdentityRuns { runs: 0, failures: 0, reports: Vec::new() }
    }

    fn push(&mut self, report: T, holds: bool) {
        self.runs += 1;
        self.failures += !holds as usize;
        self.reports.push(report);
    }
}

fn verify(what: &VerifyKind, s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    match what {
        VerifyKind::Counting { input, samples, types } => {
            let x = read_complex(m, input)?;
            let types = read_types(m, &x, types.as_deref())?;
            let mut failures = Vec::new();
            let mut identities = serde_json::Map::new();
            let flat = if x.dim() == 2 { x.clone() } else { x.skeleton(2) };
            if x.dim() < 2 || x.dim() > 3 {
                bail!("counting identities need a 2- or 3-complex, got dimension {}", x.dim());
            }
            m.stage("triangles");
            let mut tri = IdentityRuns::new();
            for a in sample_cochains(&flat, 1, *samples, s.seed) {
                let r = triangle_counts(&flat, &a)?;
                let ok = r.holds();
                tri.push(r, ok);
            }
            identities.insert("triangles_2d".into(), to_json(&tri));
            failures.extend((tri.failures > 0).then(|| format!("triangles_2d: {} failures", tri.failures)));
            if x.dim() == 3 {
                m.stage("triangles_3d");
                let mut t3 = IdentityRuns::new();
                for a in sample_cochains(&x, 1, *samples, s.seed ^ 3) {
                    let r = triangle_counts_3d(&x, &a, types.as_ref())?;
                    let ok = r.holds();
                    t3.push(r, ok);
                }
                m.stage("pyramids");
                let mut py = IdentityRuns::new();
                let mut vs = IdentityRuns::new();
                for a in sample_cochains(&x, 2, *samples, s.seed ^ 4) {
                    let r = pyramid_counts(&x, &a)?;
                    let ok = r.holds();
                    py.push(r, ok);
                    let v = vertex_split_check(&x, &a)?;
                    let ok = v.holds();
                    vs.push(v, ok);
                }
                for (name, f) in [("triangles_3d", t3.failures), ("pyramids", py.failures), ("vertex_split", vs.failures)] {
                    if f > 0 {
                        failures.push(format!("{name}: {f} failures"));
                    }
                }
                identities.insert("triangles_3d".into(), to_json(&t3));
                identities.insert("pyramids".into(), to_json(&py));
                identities.insert("vertex_split".into(), to_json(&vs));
            }
            Ok(Outcome::report(json!({"complex": complex_summary(&x), "samples": samples, "seed": s.seed, "identities": identities}), failures))
        }
        VerifyKind::Pipeline { input, dim, eta, samples } => {
            let x = read_complex(m, input)?;
            let eta = parse_rational(eta)?;
            m.stage("pipeline");
            let betas = sample_coboundaries(&x, *dim, *samples, s.seed)?;
            let r = mu_pipeline_report(&x, *dim, &eta, &betas, &s.search())?;
            let failures = if r.all_fill() { Vec::new() } else { vec!["a produced alpha does not fill beta".to_string()] };
            Ok(Outcome::report(to_json(&r), failures))
        }
        VerifyKind::Tsets { q } => {
            let mut reports = Vec::new();
            for &q in q {
                m.stage(&format!("tsets_q{q}"));
                let b = spherical_building_with_cap(4, q, s.cap)?;
                reports.push(greedy_adversarial_tset(&b)?);
            }
            let ratios: Vec<_> = reports.iter().map(|r| r.ratio.clone()).collect();
            let decreasing = ratios.windows(2).all(|w| match (w[0].finite(), w[1].finite()) {
                (Some(a), Some(b)) => b < a,
                _ => false,
            });
            Ok(Outcome::report(json!({"reports": reports, "ratio_decreases": decreasing}), Vec::new()))
        }
        VerifyKind::ThinThick { input, cochain, level, types, epsilon } => {
            let x = read_complex(m, input)?;
            let a = read_cochain(m, &x, cochain)?;
            let types = read_types(m, &x, types.as_deref())?;
            let mut params = ThinThickParams::default();
            if let Some(e) = epsilon {
                params.epsilon = parse_rational(e)?;
            }
            let level = match level {
                LevelArg::Vertex2d => Level::Vertex2d,
                LevelArg::Vertex3dColored => Level::Vertex3dColored,
                LevelArg::Edge3d => Level::Edge3d,
                LevelArg::Vertex3d => Level::Vertex3d,
            };
            m.stage("classify");
            let r = classify_thin_thick(&x, &a, level, types.as_ref(), &params)?;
            let failures = if r.total_holds() { Vec::new() } else { vec!["thin and thick shares do not add up".to_string()] };
            Ok(Outcome::report(to_json(&r), failures))
        }
    }
}

fn overlap(input: &Path, trials: usize, oracle: bool, s: &Settings, m: &mut Manifest) -> Result<Outcome> {
    let x = read_complex(m, input)?;
    m.stage("overlap");
    let r = overlap_trials(&x, trials, s.seed)?;
    let mut failures = Vec::new();
    let oracle_depths = if oracle {
        m.stage("oracle");
        let mut depths = Vec::new();
        for (k, e) in r.estimates.iter().enumerate() {
            let d = arrangement_depth(&x, &Placement::gaussian(x.n_vertices(), trial_seed(s.seed, k)))?.depth;
            if d != e.depth {
                failures.push(format!("trial {k}: estimate {} but arrangement depth {d}", e.depth));
            }
            depths.push(d);
        }
        Some(depths)
    } else {
        None
    };
    Ok(Outcome::report(json!({"trials": r, "oracle_depths": oracle_depths}), failures))
}
