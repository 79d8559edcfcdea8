//! Command dispatch and output formatting for the `grothcat` binary.
//!
//! Commands: `quotient` (saturate ⟨Q | R⟩), `gr-pres` (synthesize and print
//! (Q′, R′)), `gr-diag` (the diagonal presentation AQ/⟨R⟩_A), and `verify`
//! (run the isomorphism checks). Exit codes: 0 success, 1 parse/input
//! error, 2 saturation did not stabilize, 3 invalid functor assignment,
//! 4 verification failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::congruence::{saturate, FinPresCategory};
use crate::grothendieck::{diagonal_presentation, verify_diagonal_iso};
use crate::path_algebra::Algebra;
use crate::presentation_synth::{
    build_qprime, build_relations, simplify_presentation, verify_presentation, GrArrowKind,
    GrQuiver, GrRelationSet,
};
use crate::problem::{load, Overrides, Problem};
use crate::quiver::export_dot;
use crate::scalar::Field;
use crate::Error;

/// Seed for the sampled diagonal checks; fixed so output is byte-stable.
const VERIFY_SEED: u64 = 0x6772_6f74;
const VERIFY_PAIRS: usize = 50;

#[derive(Parser, Debug)]
#[command(
    name = "grothcat",
    version,
    about = "Quivers with relations and presentations of Grothendieck constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Saturate the index presentation and print hom sets and the
    /// composition table.
    Quotient {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
        /// Coefficient field: `rational` or `fp:P`.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Synthesize the presentation (Q', R') of Gr(X).
    GrPres {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Apply arrow-elimination simplification to the result.
        #[arg(long)]
        simplify: bool,
    },
    /// Print the diagonal presentation AQ/<g-h : (g,h) in R>.
    GrDiag {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify the synthesized presentation against the concrete
    /// construction (and/or the diagonal isomorphism).
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        field: Option<String>,
        /// Also verify Gr(Δ(A)) ≅ AQ/<R>_A with the file's algebra (or k).
        #[arg(long)]
        with_diagonal: bool,
    },
}

/// Captured output of one command run.
#[derive(Clone, Debug, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> CliOutput {
        CliOutput { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stdout: String, message: String) -> CliOutput {
        CliOutput { code, stdout, stderr: message }
    }
}

/// Runs the CLI on explicit arguments (the first element is the program
/// name) and captures the output; the binary's `main` prints it.
pub fn run<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes by convention.
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutput::fail(1, String::new(), rendered)
            } else {
                CliOutput::ok(rendered)
            };
        }
    };
    match cli.command {
        Command::Quotient { input, bound, field, format } => {
            cmd_quotient(&input, bound, field.as_deref(), format)
        }
        Command::GrPres { input, bound, field, format, simplify } => {
            cmd_gr_pres(&input, bound, field.as_deref(), format, simplify)
        }
        Command::GrDiag { input, field, format } => cmd_gr_diag(&input, field.as_deref(), format),
        Command::Verify { input, bound, field, with_diagonal } => {
            cmd_verify(&input, bound, field.as_deref(), with_diagonal)
        }
    }
}

fn load_problem(
    input: &std::path::Path,
    bound: Option<usize>,
    field: Option<&str>,
) -> Result<Problem, CliOutput> {
    let field = match field {
        None => None,
        Some(s) => match Field::parse_descriptor(s) {
            Ok(f) => Some(f),
            Err(e) => return Err(CliOutput::fail(1, String::new(), format!("error: {e}\n"))),
        },
    };
    load(input, &Overrides { bound, field })
        .map_err(|e| CliOutput::fail(1, String::new(), format!("error: {e}\n")))
}

fn saturate_index(problem: &Problem) -> Result<FinPresCategory, CliOutput> {
    match saturate(&problem.i_quiver, &problem.i_relations, problem.index_bound) {
        Ok(cat) => Ok(cat),
        Err(Error::NonStabilizing { bound, partial }) => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "saturation did not stabilize within bound {bound}; the category may be infinite"
            );
            let _ = writeln!(out, "partial class counts at bound {}:", partial.bound);
            for ((i, j), n) in &partial.hom_class_counts {
                let _ = writeln!(out, "  I({i},{j}): {n} classes so far");
            }
            Err(CliOutput::fail(
                2,
                out,
                "error: saturation did not stabilize (exit 2)\n".to_string(),
            ))
        }
        Err(e) => Err(CliOutput::fail(1, String::new(), format!("error: {e}\n"))),
    }
}

fn cmd_quotient(
    input: &std::path::Path,
    bound: Option<usize>,
    field: Option<&str>,
    format: Format,
) -> CliOutput {
    let problem = match load_problem(input, bound, field) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let cat = match saturate_index(&problem) {
        Ok(c) => c,
        Err(e) => return e,
    };
    match format {
        Format::Text => CliOutput::ok(render_quotient_text(&cat)),
        Format::Json => CliOutput::ok(render_quotient_json(&cat)),
        Format::Dot => {
            let opts = crate::quiver::DotOptions {
                graph_name: Some("Q".to_string()),
                ..Default::default()
            };
            CliOutput::ok(export_dot(cat.quiver(), &opts))
        }
    }
}

fn render_quotient_text(cat: &FinPresCategory) -> String {
    let q = cat.quiver();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "presentation <Q | R>: {}, {}, {}",
        counted(q.vertex_count(), "vertex", "vertices"),
        counted(q.arrow_count(), "arrow", "arrows"),
        counted(cat.relations().len(), "relation", "relations")
    );
    for rel in cat.relations().iter() {
        let _ = writeln!(out, "  {} = {}", q.display_path(&rel.lhs), q.display_path(&rel.rhs));
    }
    let _ = writeln!(out, "saturation bound: {}", cat.bound());
    let _ = writeln!(out, "hom sets:");
    for i in q.vertex_ids() {
        for j in q.vertex_ids() {
            let hom = cat.hom_set(i, j).expect("vertices exist");
            if hom.is_empty() {
                continue;
            }
            let reps: Vec<String> = hom.iter().map(|&c| cat.display_class(c)).collect();
            let _ = writeln!(
                out,
                "  I({},{}): {} ({} {})",
                q.vertex_name(i),
                q.vertex_name(j),
                reps.join(", "),
                hom.len(),
                if hom.len() == 1 { "class" } else { "classes" }
            );
        }
    }
    let _ = writeln!(out, "composition table (identity compositions omitted):");
    for g in cat.class_ids() {
        for f in cat.class_ids() {
            if cat.class(g).rep().is_trivial() || cat.class(f).rep().is_trivial() {
                continue;
            }
            if let Ok(h) = cat.compose_classes(g, f) {
                let _ = writeln!(
                    out,
                    "  [{}][{}] = [{}]",
                    cat.display_class(g),
                    cat.display_class(f),
                    cat.display_class(h)
                );
            }
        }
    }
    out
}

fn render_quotient_json(cat: &FinPresCategory) -> String {
    let q = cat.quiver();
    let mut hom = BTreeMap::new();
    for i in q.vertex_ids() {
        for j in q.vertex_ids() {
            let classes = cat.hom_set(i, j).expect("vertices exist");
            if classes.is_empty() {
                continue;
            }
            let reps: Vec<String> = classes.iter().map(|&c| cat.display_class(c)).collect();
            hom.insert(format!("({},{})", q.vertex_name(i), q.vertex_name(j)), reps);
        }
    }
    let mut table = Vec::new();
    for g in cat.class_ids() {
        for f in cat.class_ids() {
            if let Ok(h) = cat.compose_classes(g, f) {
                table.push(serde_json::json!({
                    "later": cat.display_class(g),
                    "earlier": cat.display_class(f),
                    "composite": cat.display_class(h),
                }));
            }
        }
    }
    let value = serde_json::json!({
        "saturation_bound": cat.bound(),
        "class_count": cat.class_count(),
        "hom_sets": hom,
        "composition_table": table,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_gr_diag(input: &std::path::Path, field: Option<&str>, format: Format) -> CliOutput {
    let problem = match load_problem(input, None, field) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let pres = diagonal_presentation(&problem.i_quiver, &problem.i_relations);
    match format {
        Format::Text => {
            let q = &pres.quiver;
            let mut out = String::new();
            let _ = writeln!(out, "Gr(Delta(A)) = {}", pres.header());
            let _ = writeln!(
                out,
                "quiver Q: {}, {}",
                counted(q.vertex_count(), "vertex", "vertices"),
                counted(q.arrow_count(), "arrow", "arrows")
            );
            let vertices: Vec<&str> = q.vertex_ids().map(|v| q.vertex_name(v)).collect();
            let _ = writeln!(out, "  vertices: {}", vertices.join(", "));
            let arrows: Vec<String> = q
                .arrow_ids()
                .map(|a| {
                    format!(
                        "{}: {} -> {}",
                        q.arrow_name(a),
                        q.vertex_name(q.tail(a)),
                        q.vertex_name(q.head(a))
                    )
                })
                .collect();
            if !arrows.is_empty() {
                let _ = writeln!(out, "  arrows: {}", arrows.join(", "));
            }
            let _ = writeln!(out, "relation generators ({}):", pres.generators.len());
            for (g, h) in &pres.generators {
                let _ = writeln!(out, "  {}-{}", q.display_path(g), q.display_path(h));
            }
            let _ = writeln!(out, "tensor form: {}", pres.tensor_form());
            if let Some(alg) = &problem.algebra {
                let _ = writeln!(out, "with A = {} (dim {})", alg.name(), alg.dim());
            }
            CliOutput::ok(out)
        }
        Format::Json => {
            let q = &pres.quiver;
            let gens: Vec<serde_json::Value> = pres
                .generators
                .iter()
                .map(|(g, h)| {
                    serde_json::json!({
                        "lhs": path_word(q, g),
                        "rhs": path_word(q, h),
                        "display": format!("{}-{}", q.display_path(g), q.display_path(h)),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "presentation": pres.header(),
                "tensor_form": pres.tensor_form(),
                "generators": gens,
            });
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            CliOutput::ok(s)
        }
        Format::Dot => {
            let opts = crate::quiver::DotOptions {
                graph_name: Some("Q".to_string()),
                ..Default::default()
            };
            CliOutput::ok(export_dot(&pres.quiver, &opts))
        }
    }
}

/// Arrow ids of a path in composition order (the order words are written).
fn path_word(q: &crate::quiver::Quiver, p: &crate::quiver::Path) -> Vec<String> {
    p.arrows().iter().rev().map(|&a| q.arrow_name(a).to_string()).collect()
}

fn require_functor(
    problem: &Problem,
) -> Result<&crate::functor_model::FunctorAssignment, CliOutput> {
    problem.functor.as_ref().ok_or_else(|| {
        CliOutput::fail(
            1,
            String::new(),
            "error: this command needs fiber and action sections\n".to_string(),
        )
    })
}

fn cmd_gr_pres(
    input: &std::path::Path,
    bound: Option<usize>,
    field: Option<&str>,
    format: Format,
    simplify: bool,
) -> CliOutput {
    let problem = match load_problem(input, bound, field) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let x = match require_functor(&problem) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let i_cat = match saturate_index(&problem) {
        Ok(c) => c,
        Err(e) => return e,
    };
    let report = x.validate(&i_cat);
    if !report.is_valid() {
        return CliOutput::fail(
            3,
            String::new(),
            format!("error: functor assignment is invalid:\n{report}\n"),
        );
    }
    let built = build_qprime(x, i_cat.quiver())
        .and_then(|gq| build_relations(x, &i_cat, &gq).map(|rels| (gq, rels)))
        .and_then(
            |(gq, rels)| {
                if simplify {
                    simplify_presentation(&gq, &rels)
                } else {
                    Ok((gq, rels))
                }
            },
        );
    let (gq, rels) = match built {
        Ok(v) => v,
        Err(e) => return CliOutput::fail(1, String::new(), format!("error: {e}\n")),
    };
    match format {
        Format::Text => CliOutput::ok(render_pres_text(&gq, &rels, simplify)),
        Format::Json => CliOutput::ok(render_pres_json(&gq, &rels)),
        Format::Dot => CliOutput::ok(export_dot(gq.quiver(), &gq.dot_options())),
    }
}

fn render_pres_text(gq: &GrQuiver, rels: &GrRelationSet, simplified: bool) -> String {
    let q = gq.quiver();
    let mut out = String::new();
    let title = if simplified {
        "Gr(X) presented by (Q', R'), simplified"
    } else {
        "Gr(X) presented by (Q', R')"
    };
    let _ = writeln!(out, "{title}");
    let vertices: Vec<&str> = q.vertex_ids().map(|v| q.vertex_name(v)).collect();
    let _ = writeln!(out, "vertices ({}): {}", vertices.len(), vertices.join(", "));
    let ordered = gq.arrows_in_family_order();
    let inner: Vec<_> =
        ordered.iter().filter(|&&a| matches!(gq.kind(a), GrArrowKind::Inner { .. })).collect();
    let connecting: Vec<_> =
        ordered.iter().filter(|&&a| matches!(gq.kind(a), GrArrowKind::Connecting { .. })).collect();
    let _ = writeln!(out, "inner arrows ({}):", inner.len());
    for &&a in &inner {
        let _ = writeln!(
            out,
            "  {}: {} -> {}",
            q.arrow_name(a),
            q.vertex_name(q.tail(a)),
            q.vertex_name(q.head(a))
        );
    }
    let _ = writeln!(out, "connecting arrows ({}):", connecting.len());
    for &&a in &connecting {
        let _ = writeln!(
            out,
            "  {}: {} -> {}",
            q.arrow_name(a),
            q.vertex_name(q.tail(a)),
            q.vertex_name(q.head(a))
        );
    }
    let _ = writeln!(
        out,
        "relations ({} = R1:{} + R2:{} + R3:{}):",
        rels.len(),
        rels.family_count(crate::presentation_synth::Family::R1),
        rels.family_count(crate::presentation_synth::Family::R2),
        rels.family_count(crate::presentation_synth::Family::R3)
    );
    for rel in &rels.relations {
        let _ = writeln!(out, "  [{}] {}", rel.family, rel.display(q));
    }
    out
}

fn render_pres_json(gq: &GrQuiver, rels: &GrRelationSet) -> String {
    let q = gq.quiver();
    let vertices: Vec<serde_json::Value> = q
        .vertex_ids()
        .map(|v| {
            let (i, x) = gq.pair_of(v);
            serde_json::json!({
                "id": q.vertex_name(v),
                "index": i,
                "fiber_object": x,
            })
        })
        .collect();
    let arrows: Vec<serde_json::Value> = gq
        .arrows_in_family_order()
        .iter()
        .map(|&a| {
            let base = serde_json::json!({
                "id": q.arrow_name(a),
                "tail": q.vertex_name(q.tail(a)),
                "head": q.vertex_name(q.head(a)),
            });
            let mut obj = base.as_object().unwrap().clone();
            match gq.kind(a) {
                GrArrowKind::Inner { index, arrow } => {
                    obj.insert("kind".to_string(), "inner".into());
                    obj.insert("index".to_string(), index.as_str().into());
                    obj.insert("fiber_arrow".to_string(), arrow.as_str().into());
                }
                GrArrowKind::Connecting { i_arrow, index, fiber_object } => {
                    obj.insert("kind".to_string(), "connecting".into());
                    obj.insert("index_arrow".to_string(), i_arrow.as_str().into());
                    obj.insert("index".to_string(), index.as_str().into());
                    obj.insert("fiber_object".to_string(), fiber_object.as_str().into());
                }
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    let relations: Vec<serde_json::Value> = rels
        .relations
        .iter()
        .map(|rel| {
            let terms: Vec<serde_json::Value> = rel
                .value
                .terms()
                .map(|(p, c)| {
                    serde_json::json!({
                        "coeff": c.to_string(),
                        "path": path_word(q, p),
                    })
                })
                .collect();
            serde_json::json!({
                "family": rel.family.to_string(),
                "display": rel.display(q),
                "terms": terms,
            })
        })
        .collect();
    let value = serde_json::json!({
        "vertices": vertices,
        "arrows": arrows,
        "relations": relations,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_verify(
    input: &std::path::Path,
    bound: Option<usize>,
    field: Option<&str>,
    with_diagonal: bool,
) -> CliOutput {
    let problem = match load_problem(input, bound, field) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let i_cat = match saturate_index(&problem) {
        Ok(c) => c,
        Err(e) => return e,
    };
    let mut out = String::new();
    let mut failed = false;

    if let Some(x) = &problem.functor {
        let report = match verify_presentation(x, &i_cat) {
            Ok(r) => r,
            Err(e) => return CliOutput::fail(1, out, format!("error: {e}\n")),
        };
        if !report.functor.is_valid() {
            return CliOutput::fail(
                3,
                out,
                format!("error: functor assignment is invalid:\n{}\n", report.functor),
            );
        }
        let _ = writeln!(out, "check functor validation: PASS");
        let (fibers, qprime, ok) = report.objects;
        let _ = writeln!(
            out,
            "check object bijection ({fibers} fiber vertices, {qprime} Q' vertices): {}",
            pass(ok)
        );
        failed |= !ok;
        let rel_ok = report.relation_checks.iter().all(|(_, ok)| *ok);
        let _ = writeln!(
            out,
            "check Phi(R') = 0 ({}): {}",
            counted(report.relation_checks.len(), "relation", "relations"),
            pass(rel_ok)
        );
        for (label, ok) in &report.relation_checks {
            if !ok {
                let _ = writeln!(out, "  FAIL {label}");
            }
        }
        failed |= !rel_ok;
        let hom_ok = report.hom_checks.iter().all(|c| c.ok);
        let _ = writeln!(
            out,
            "check hom dimensions dim kQ'/<R'> = dim Gr(X) ({}): {}",
            counted(report.hom_checks.len(), "pair", "pairs"),
            pass(hom_ok)
        );
        for c in &report.hom_checks {
            if !c.ok {
                let _ = writeln!(
                    out,
                    "  FAIL ({}, {}): presented {} vs Gr {}, Phi rank {}{}",
                    c.source,
                    c.target,
                    c.dim_presented.map_or("?".to_string(), |d| d.to_string()),
                    c.dim_gr,
                    c.phi_rank,
                    c.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
                );
            }
        }
        failed |= !hom_ok;
        match &report.lift_check {
            None => {
                let _ = writeln!(
                    out,
                    "check lift independence: not applicable (no nonzero ideal at any lift target)"
                );
            }
            Some(l) => {
                let _ = writeln!(
                    out,
                    "check lift independence ({} perturbed): {}",
                    counted(l.perturbed, "lift", "lifts"),
                    pass(l.ok)
                );
                for m in &l.mismatches {
                    let _ = writeln!(out, "  FAIL {m}");
                }
                failed |= !l.ok;
            }
        }
    }

    if with_diagonal || problem.functor.is_none() {
        let algebra =
            problem.algebra.clone().unwrap_or_else(|| Algebra::field_algebra(problem.field));
        let _ = writeln!(out, "diagonal algebra: {} (dim {})", algebra.name(), algebra.dim());
        let report = match verify_diagonal_iso(&algebra, &i_cat, VERIFY_PAIRS, VERIFY_SEED) {
            Ok(r) => r,
            Err(e) => return CliOutput::fail(1, out, format!("error: {e}\n")),
        };
        let unit_checks: Vec<_> =
            report.checks.iter().filter(|c| c.name.starts_with("F(id")).collect();
        let unit_ok = unit_checks.iter().all(|c| c.ok);
        let _ = writeln!(
            out,
            "check diagonal unit laws ({}): {}",
            counted(unit_checks.len(), "object", "objects"),
            pass(unit_ok)
        );
        failed |= !unit_ok;
        for c in &report.checks {
            if c.name.starts_with("F(g∘f)") {
                let _ =
                    writeln!(out, "check diagonal multiplicativity, {}: {}", c.name, pass(c.ok));
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "  FAIL at {w}");
                }
                failed |= !c.ok;
            }
        }
        let dim_checks: Vec<_> =
            report.checks.iter().filter(|c| c.name.starts_with("dim")).collect();
        let dim_ok = dim_checks.iter().all(|c| c.ok);
        let _ = writeln!(
            out,
            "check diagonal dimensions ({}): {}",
            counted(dim_checks.len(), "hom pair", "hom pairs"),
            pass(dim_ok)
        );
        for c in dim_checks {
            if !c.ok {
                let _ = writeln!(out, "  FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
            }
        }
        failed |= !dim_ok;
    }

    if failed {
        let _ = writeln!(out, "verification: FAIL");
        CliOutput::fail(4, out, "error: verification failed (exit 4)\n".to_string())
    } else {
        let _ = writeln!(out, "verification: PASS");
        CliOutput::ok(out)
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn counted(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input_path(name: &str) -> String {
        format!("{}/inputs/{}", env!("CARGO_MANIFEST_DIR"), name)
    }

    fn run_args(args: &[&str]) -> CliOutput {
        run(std::iter::once("grothcat").chain(args.iter().copied()))
    }

    #[test]
    fn missing_file_is_parse_error() {
        let out = run_args(&["quotient", "--input", "/nonexistent.json"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("cannot read"));
    }

    #[test]
    fn bad_flag_is_parse_error() {
        let out = run_args(&["quotient", "--nope"]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn help_is_success() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("grothcat"));
    }

    #[test]
    fn quotient_semigroup_text() {
        let out = run_args(&["quotient", "--input", &input_path("ex43.json")]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("I(1,1): e_1, g, g^2 (3 classes)"), "{}", out.stdout);
        assert!(out.stdout.contains("[g][g] = [g^2]"));
        assert!(out.stdout.contains("[g^2][g^2] = [g^2]"));
    }

    #[test]
    fn quotient_nonstabilizing_exits_2() {
        let out = run_args(&["quotient", "--input", &input_path("free_loop.json")]);
        assert_eq!(out.code, 2);
        assert!(out.stdout.contains("partial class counts"));
    }

    #[test]
    fn field_flag_is_validated() {
        let out = run_args(&["quotient", "--input", &input_path("ex43.json"), "--field", "fp:6"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("not prime"));
    }
}
