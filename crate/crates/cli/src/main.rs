//! `tdl`: inspect finite tense distributive lattices from the command line.
//!
//! Exit codes: 0 success (valid / proved / nothing found when searching for
//! refutations), 1 semantic failure (axiom violations, invalid sequent, a
//! countermodel was found), 2 malformed input, 3 proof search exhausted.

mod docs;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use docs::{
    algebra_from_doc, algebra_to_doc, frame_from_doc, frame_to_doc, load_document, to_json,
    Document, LoadedAlgebra,
};
use tdl_core::algebra::{self, axiom_violations, classify, TdlAlgebra};
use tdl_core::congruence;
use tdl_core::duality;
use tdl_core::kripke;
use tdl_core::logic::{self, CalculusId, Sequent};
use tdl_core::order::bits;

#[derive(Parser)]
#[command(name = "tdl", version, about = "finite tense distributive lattice toolkit")]
struct Cli {
    /// Write the primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum System {
    Lt,
    Ltc,
    Lti,
    Ltdm,
}

impl System {
    fn calc(self) -> CalculusId {
        match self {
            System::Lt => CalculusId::Lt,
            System::Ltc => CalculusId::LtC,
            System::Lti => CalculusId::LtI,
            System::Ltdm => CalculusId::LtDm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file against the tense axioms and classify it.
    Check { file: PathBuf },
    /// Emit the dual space of an algebra as a frame document.
    Dual { file: PathBuf },
    /// Emit the canonical frame of an algebra.
    Frame { file: PathBuf },
    /// Emit the complex algebra of a frame.
    Complex { file: PathBuf },
    /// Verify the duality round-trips for an algebra or frame file.
    Roundtrip { file: PathBuf },
    /// List the congruence lattice of an algebra.
    Congruences { file: PathBuf },
    /// Decide simplicity.
    Simple { file: PathBuf },
    /// Decide subdirect irreducibility.
    Si { file: PathBuf },
    /// Search for a proof of a sequent.
    Prove {
        #[arg(long, value_enum, default_value = "lt")]
        system: System,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        sequent: String,
    },
    /// Check a sequent against one algebra file.
    Valid {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value = "lt")]
        system: System,
        sequent: String,
    },
    /// Search the finite algebra class for a refuting valuation.
    Countermodel {
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum, default_value = "lt")]
        system: System,
        sequent: String,
    },
    /// Evaluate a formula or sequent over a frame or model file.
    Kripke {
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long)]
        model: Option<PathBuf>,
        input: String,
    },
    /// Replay the bundled proof scripts (or a proof-script document).
    Scripts {
        #[arg(long, value_enum, default_value = "lt")]
        system: System,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

struct Out {
    target: Option<PathBuf>,
    buffer: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buffer.push_str(s.as_ref());
        self.buffer.push('\n');
    }

    fn raw(&mut self, s: impl AsRef<str>) {
        self.buffer.push_str(s.as_ref());
    }

    fn finish(self) -> ExitCode {
        match self.target {
            Some(path) => {
                if let Err(e) = std::fs::write(&path, self.buffer) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{}", self.buffer),
        }
        ExitCode::SUCCESS
    }

    fn finish_code(self, code: u8) -> ExitCode {
        let _ = self.finish();
        ExitCode::from(code)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        target: cli.out.clone(),
        buffer: String::new(),
    };
    match run(&cli, &mut out) {
        Ok(code) => out.finish_code(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn env_max_size(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("TDL_MAX_SIZE")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(6)
}

type Fallible<T> = Result<T, Box<dyn std::error::Error>>;

fn load_algebra(path: &Path) -> Fallible<LoadedAlgebra> {
    match load_document(path)? {
        Document::Algebra(doc) => Ok(algebra_from_doc(&doc)?),
        _ => Err("expected a tdl-algebra document".into()),
    }
}

fn violation_text(v: &algebra::AxiomViolation, names: &[String]) -> String {
    if v.witness.is_empty() {
        v.axiom.tag().to_string()
    } else {
        let w: Vec<&str> = v.witness.iter().map(|&x| names[x].as_str()).collect();
        format!("{} at ({})", v.axiom.tag(), w.join(","))
    }
}

fn run(cli: &Cli, out: &mut Out) -> Fallible<u8> {
    match &cli.command {
        Command::Check { file } => cmd_check(cli, out, file),
        Command::Dual { file } | Command::Frame { file } => cmd_dual(cli, out, file),
        Command::Complex { file } => cmd_complex(cli, out, file),
        Command::Roundtrip { file } => cmd_roundtrip(out, file),
        Command::Congruences { file } => cmd_congruences(cli, out, file),
        Command::Simple { file } => cmd_simple(cli, out, file),
        Command::Si { file } => cmd_si(cli, out, file),
        Command::Prove {
            system,
            depth,
            sequent,
        } => cmd_prove(out, system.calc(), *depth, sequent),
        Command::Valid {
            algebra,
            system,
            sequent,
        } => cmd_valid(out, algebra, system.calc(), sequent),
        Command::Countermodel {
            max_size,
            system,
            sequent,
        } => cmd_countermodel(cli, out, env_max_size(*max_size), system.calc(), sequent),
        Command::Kripke {
            frame,
            model,
            input,
        } => cmd_kripke(out, frame.as_ref(), model.as_ref(), input),
        Command::Scripts { system, file } => cmd_scripts(out, system.calc(), file.as_ref()),
    }
}

fn cmd_check(cli: &Cli, out: &mut Out, file: &Path) -> Fallible<u8> {
    let loaded = load_algebra(file)?;
    let violations = axiom_violations(
        &loaded.lattice,
        &loaded.g,
        &loaded.h,
        &loaded.f,
        &loaded.p,
    );
    if !violations.is_empty() {
        let rendered: Vec<String> = violations
            .iter()
            .map(|v| violation_text(v, &loaded.names))
            .collect();
        match cli.format {
            Format::Text => {
                out.line("invalid: axiom violations");
                for line in &rendered {
                    out.line(format!("  {line}"));
                }
            }
            Format::Json => out.raw(to_json(&json!({
                "valid": false,
                "violations": rendered,
            }))),
        }
        return Ok(1);
    }
    let a = loaded.assemble();
    let class = match classify(&a) {
        Ok(c) => c,
        Err(e) => {
            match cli.format {
                Format::Text => out.line(format!("invalid: {e}")),
                Format::Json => out.raw(to_json(&json!({
                    "valid": false,
                    "violations": [e.to_string()],
                }))),
            }
            return Ok(1);
        }
    };
    let invariants: Vec<&String> = bits(a.d_invariants())
        .map(|i| &loaded.names[i])
        .collect();
    let filters = algebra::all_tense_filters(&a).len();
    match cli.format {
        Format::Text => {
            out.line(format!("valid: {} elements", a.size()));
            out.line(format!(
                "invariant elements: {{{}}}",
                invariants
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            out.line(format!("tense filters: {filters}"));
            out.line(format!(
                "boolean: {}; heyting: {}; demorgan: {}",
                class.boolean, class.heyting, class.demorgan
            ));
        }
        Format::Json => out.raw(to_json(&json!({
            "valid": true,
            "elements": a.size(),
            "invariant_elements": invariants,
            "tense_filters": filters,
            "boolean": class.boolean,
            "heyting": class.heyting,
            "demorgan": class.demorgan,
        }))),
    }
    Ok(0)
}

fn validated(loaded: &LoadedAlgebra) -> Fallible<TdlAlgebra> {
    let violations = axiom_violations(
        &loaded.lattice,
        &loaded.g,
        &loaded.h,
        &loaded.f,
        &loaded.p,
    );
    if violations.is_empty() {
        Ok(loaded.assemble())
    } else {
        let rendered: Vec<String> = violations
            .iter()
            .map(|v| violation_text(v, &loaded.names))
            .collect();
        Err(format!("algebra violates the tense axioms: {}", rendered.join("; ")).into())
    }
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn cmd_dual(cli: &Cli, out: &mut Out, file: &Path) -> Fallible<u8> {
    let loaded = load_algebra(file)?;
    let a = validated(&loaded)?;
    let frame = duality::canonical_frame(&a);
    let names = point_names(frame.size());
    let doc = frame_to_doc(&frame, &names);
    out.raw(to_json(&doc));
    if cli.format == Format::Text && cli.out.is_some() {
        println!("dual space: {} points", frame.size());
    }
    Ok(0)
}

fn cmd_complex(cli: &Cli, out: &mut Out, file: &Path) -> Fallible<u8> {
    let doc = match load_document(file)? {
        Document::Frame(doc) => doc,
        _ => return Err("expected a tdl-frame document".into()),
    };
    let loaded = frame_from_doc(&doc)?;
    let complex = duality::complex_algebra(&loaded.frame);
    let names: Vec<String> = (0..complex.algebra.size()).map(|i| format!("u{i}")).collect();
    let out_doc = algebra_to_doc(&complex.algebra, &names);
    out.raw(to_json(&out_doc));
    if cli.format == Format::Text && cli.out.is_some() {
        println!("complex algebra: {} elements", complex.algebra.size());
    }
    Ok(0)
}

fn cmd_roundtrip(out: &mut Out, file: &Path) -> Fallible<u8> {
    match load_document(file)? {
        Document::Algebra(doc) => {
            let loaded = algebra_from_doc(&doc)?;
            let a = validated(&loaded)?;
            let outcome = std::panic::catch_unwind(|| {
                let dual = duality::dual_space(&a);
                let psi = duality::upset_algebra(dual.space.poset(), dual.space.r());
                duality::sigma_map(&a, &dual, &psi);
                duality::h_embedding(&a);
                dual.points.len()
            });
            match outcome {
                Ok(points) => {
                    out.line(format!(
                        "roundtrip ok: {} elements, {} prime filters; sigma and h are isomorphisms",
                        a.size(),
                        points
                    ));
                    Ok(0)
                }
                Err(_) => {
                    out.line("roundtrip failed: sigma or h is not an isomorphism");
                    Ok(1)
                }
            }
        }
        Document::Frame(doc) => {
            let loaded = frame_from_doc(&doc)?;
            let frame = loaded.frame.clone();
            let outcome = std::panic::catch_unwind(move || {
                let space = duality::TpsSpace::new(frame.poset().clone(), frame.r().to_vec())
                    .expect("frame data forms a space at finite scale");
                duality::epsilon_map(&space);
                duality::k_embedding(&frame);
            });
            match outcome {
                Ok(()) => {
                    out.line(format!(
                        "roundtrip ok: {} points; epsilon and k are isomorphisms",
                        loaded.frame.size()
                    ));
                    Ok(0)
                }
                Err(_) => {
                    out.line("roundtrip failed: epsilon or k is not an isomorphism");
                    Ok(1)
                }
            }
        }
        _ => Err("expected a tdl-algebra or tdl-frame document".into()),
    }
}

fn congruence_blocks(c: &congruence::Congruence, names: &[String]) -> Vec<Vec<String>> {
    let mut blocks: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for i in 0..c.size() {
        let b = (0..c.size()).position(|j| c.same(i, j)).unwrap();
        blocks.entry(b).or_default().push(names[i].clone());
    }
    blocks.into_values().collect()
}

fn cmd_congruences(cli: &Cli, out: &mut Out, file: &Path) -> Fallible<u8> {
    let loaded = load_algebra(file)?;
    let a = validated(&loaded)?;
    let dual = duality::dual_space(&a);
    let congs = congruence::congruence_lattice(&a, &dual)?;
    match cli.format {
        Format::Text => {
            out.line(format!("congruences: {}", congs.len()));
            for c in &congs {
                let blocks: Vec<String> = congruence_blocks(c, &loaded.names)
                    .iter()
                    .map(|b| format!("{{{}}}", b.join(",")))
                    .collect();
                out.line(format!("  {}", blocks.join(" ")));
            }
        }
        Format::Json => {
            let rendered: Vec<Vec<Vec<String>>> = congs
                .iter()
                .map(|c| congruence_blocks(c, &loaded.names))
                .collect();
            out.raw(to_json(&json!({
                "congruences": congs.len(),
                "partitions": rendered,
            })));
        }
    }
    Ok(0)
}

fn cmd_simple(cli: &Cli, out: &mut Out, file: &Path) -> Fallible<u8> {
    let loaded = load_algebra(file)?;
    let a = validated(&loaded)?;
    let dual = duality::dual_space(&a);
    let rep = congruence::is_simple(&a, &dual);
    let congs = congruence::congruence_lattice(&a, &dual)?.len();
    match cli.format {
        Format::Text => out.line(format!(
            "simple: {}; congruences: {}",
            if rep.simple { "yes" } else { "no" },
            congs
        )),
        Format::Json => out.raw(to_json(&json!({
            "simple": rep.simple,
            "congruences": congs,
            "precheck_fired": rep.precheck_fired,
        }))),
    }
    Ok(0)
}

fn cmd_si(cli: &Cli, out: &mut Out, file: &Path) -> Fallible<u8> {
    let loaded = load_algebra(file)?;
    let a = validated(&loaded)?;
    let dual = duality::dual_space(&a);
    let simple = congruence::is_simple(&a, &dual);
    let rep = congruence::is_subdirectly_irreducible(&a, &dual);
    let congs = congruence::congruence_lattice(&a, &dual)?.len();
    match cli.format {
        Format::Text => {
            out.line(format!(
                "simple: {}; SI: {}; congruences: {}",
                if simple.simple { "yes" } else { "no" },
                if rep.si { "yes" } else { "no" },
                congs
            ));
            if let Some(m) = &rep.monolith {
                let blocks: Vec<String> = congruence_blocks(m, &loaded.names)
                    .iter()
                    .map(|b| format!("{{{}}}", b.join(",")))
                    .collect();
                out.line(format!("monolith: {}", blocks.join(" ")));
            }
        }
        Format::Json => out.raw(to_json(&json!({
            "simple": simple.simple,
            "subdirectly_irreducible": rep.si,
            "congruences": congs,
            "monolith": rep
                .monolith
                .as_ref()
                .map(|m| congruence_blocks(m, &loaded.names)),
        }))),
    }
    Ok(0)
}

fn render_proof(t: &logic::ProofTree, depth: usize, out: &mut Out) {
    out.line(format!(
        "{}{} [{}]",
        "  ".repeat(depth),
        t.conclusion,
        t.rule
    ));
    for p in &t.premises {
        render_proof(p, depth + 1, out);
    }
}

fn cmd_prove(out: &mut Out, calc: CalculusId, depth: usize, sequent: &str) -> Fallible<u8> {
    let s = logic::parse_sequent(sequent, calc)?;
    match logic::prove(&s, calc, depth) {
        Some(tree) => {
            logic::check_proof(&tree, calc).expect("search output passes the checker");
            out.line(format!("proved ({} nodes):", tree.size()));
            render_proof(&tree, 1, out);
            Ok(0)
        }
        None => {
            out.line(format!("unknown: no cut-free proof within depth {depth}"));
            Ok(3)
        }
    }
}

fn cmd_valid(out: &mut Out, algebra: &Path, calc: CalculusId, sequent: &str) -> Fallible<u8> {
    let loaded = load_algebra(algebra)?;
    let a = validated(&loaded)?;
    let s: Sequent = logic::parse_sequent(sequent, calc)?;
    let vars: Vec<String> = s.variables().into_iter().collect();
    for env in logic::valuations(&vars, a.size()) {
        let l = a.lattice();
        let mut lhs = l.top();
        for f in &s.left {
            lhs = l.meet(lhs, logic::evaluate(&a, &env, f)?);
        }
        let mut rhs = l.bottom();
        for f in &s.right {
            rhs = l.join(rhs, logic::evaluate(&a, &env, f)?);
        }
        if !l.leq(lhs, rhs) {
            let witness: Vec<String> = env
                .iter()
                .map(|(v, &x)| format!("{v} = {}", loaded.names[x]))
                .collect();
            out.line(format!("invalid at {}", witness.join(", ")));
            return Ok(1);
        }
    }
    out.line("valid");
    Ok(0)
}

fn cmd_countermodel(
    cli: &Cli,
    out: &mut Out,
    max_size: usize,
    calc: CalculusId,
    sequent: &str,
) -> Fallible<u8> {
    let s = logic::parse_sequent(sequent, calc)?;
    match logic::countermodel(&s, max_size, calc)? {
        Some((a, env)) => {
            let names: Vec<String> = (0..a.size()).map(|i| format!("e{i}")).collect();
            let doc = algebra_to_doc(&a, &names);
            let witness: Vec<String> = env
                .iter()
                .map(|(v, &x)| format!("{v} = {}", names[x]))
                .collect();
            match cli.format {
                Format::Text => {
                    out.line(format!(
                        "countermodel found: {} elements; {}",
                        a.size(),
                        witness.join(", ")
                    ));
                    out.raw(to_json(&doc));
                }
                Format::Json => {
                    let env_json: BTreeMap<String, String> = env
                        .iter()
                        .map(|(v, &x)| (v.clone(), names[x].clone()))
                        .collect();
                    out.raw(to_json(&json!({
                        "countermodel": doc,
                        "valuation": env_json,
                    })));
                }
            }
            Ok(1)
        }
        None => {
            out.line(format!("no countermodel with at most {max_size} elements"));
            Ok(0)
        }
    }
}

fn cmd_kripke(
    out: &mut Out,
    frame: Option<&PathBuf>,
    model: Option<&PathBuf>,
    input: &str,
) -> Fallible<u8> {
    if let Some(model_path) = model {
        let doc = match load_document(model_path)? {
            Document::Model(doc) => doc,
            _ => return Err("expected a kripke-model document".into()),
        };
        let (loaded, m) = docs::model_from_doc(&doc)?;
        if input.contains("=>") {
            let s = logic::parse_sequent(input, CalculusId::Lt)?;
            if kripke::valid_in_model(&m, &s)? {
                out.line("valid in the model");
                Ok(0)
            } else {
                out.line("invalid in the model");
                Ok(1)
            }
        } else {
            let f = logic::parse_formula(input, CalculusId::Lt)?;
            let ext = kripke::extension(&m, &f)?;
            let points: Vec<&str> = bits(ext).map(|i| loaded.names[i].as_str()).collect();
            out.line(format!("extension: {{{}}}", points.join(",")));
            Ok(0)
        }
    } else if let Some(frame_path) = frame {
        let doc = match load_document(frame_path)? {
            Document::Frame(doc) => doc,
            _ => return Err("expected a tdl-frame document".into()),
        };
        let loaded = frame_from_doc(&doc)?;
        let s = logic::parse_sequent(input, CalculusId::Lt)?;
        let vars: Vec<String> = s.variables().into_iter().collect();
        for meaning in kripke::meaning_maps(&loaded.frame, &vars) {
            let m = kripke::KripkeModel::new(loaded.frame.clone(), meaning)?;
            if !kripke::valid_in_model(&m, &s)? {
                let witness: Vec<String> = m
                    .meaning()
                    .iter()
                    .map(|(v, &mask)| {
                        let pts: Vec<&str> =
                            bits(mask).map(|i| loaded.names[i].as_str()).collect();
                        format!("{v} = {{{}}}", pts.join(","))
                    })
                    .collect();
                out.line(format!("invalid in the frame at {}", witness.join(", ")));
                return Ok(1);
            }
        }
        out.line("valid in the frame");
        Ok(0)
    } else {
        Err("kripke needs --frame or --model".into())
    }
}

fn cmd_scripts(out: &mut Out, calc: CalculusId, file: Option<&PathBuf>) -> Fallible<u8> {
    let report = match file {
        None => logic::run_bundled_proofs(calc),
        Some(path) => {
            let doc = match load_document(path)? {
                Document::Script(doc) => doc,
                _ => return Err("expected a proof-script document".into()),
            };
            let scripts = logic::parse_scripts(&doc.script)?;
            let class = logic::algebra_class(calc, logic::script::bundled_class_bound(calc));
            let results = scripts
                .into_iter()
                .map(|s| {
                    let proof_ok = logic::check_proof_with_hypotheses(&s.root, calc, &s.hypotheses)
                        .map_err(|e| e.to_string());
                    let semantics_ok = if s.hypotheses.is_empty() {
                        logic::consequence(&s.root.conclusion, &class).unwrap_or(false)
                    } else {
                        class.iter().all(|a| {
                            let premises = s
                                .hypotheses
                                .iter()
                                .all(|h| logic::holds(a, h).unwrap_or(false));
                            !premises || logic::holds(a, &s.root.conclusion).unwrap_or(false)
                        })
                    };
                    logic::script::ScriptResult {
                        name: s.name,
                        proof_ok,
                        semantics_ok,
                    }
                })
                .collect();
            logic::ScriptsReport { calc, results }
        }
    };
    let mut failed = false;
    for r in &report.results {
        let ok = r.proof_ok.is_ok() && r.semantics_ok;
        failed |= !ok;
        let status = match (&r.proof_ok, r.semantics_ok) {
            (Ok(()), true) => "ok".to_string(),
            (Err(e), _) => format!("proof FAILED: {e}"),
            (Ok(()), false) => "semantic check FAILED".to_string(),
        };
        out.line(format!("{}: {}", r.name, status));
    }
    out.line(format!(
        "{} scripts, {}",
        report.results.len(),
        if failed { "failures present" } else { "all ok" }
    ));
    Ok(if failed { 1 } else { 0 })
}
