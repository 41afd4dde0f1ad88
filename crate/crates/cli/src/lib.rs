//! Command-line front end. `run` is the whole program; `main` only wires
//! it to the process streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use diagself::error::{Error, Result};
use diagself::fgab::{direct_sum, Element, FgAbGroup, Subgroup};
use diagself::gamma::{gamma22, gamma_group, gamma_torsion, PairPolicy, QuadraticMap};
use diagself::gammaseq::{
    isotropy_from_sequence, nontrivial_action_example, parse_cyclic_order, validate_gamma_sequence,
    GammaSequenceJson, ValidationReport,
};
use diagself::json::{parse, DeserializeOwned, ElementJson, GroupJson, HomJson};
use diagself::matrix::smith_normal_form;
use diagself::monoids::{
    check_bimodule_axioms, mn_compose, multiplication_table, render_table, ExtElementJson, Scope, DEFAULT_SAMPLES,
    DEFAULT_SEED, M_NAMES,
};
use diagself::orbits::{orbit_decomposition, selfmap_monoid, OrbitReport, SelfMapMonoid};
use diagself::spheres::{identity_class, target_sphere, target_sphere_product, TargetData, TargetJson};

const TABLE_NOTE: &str = "[table data]";

#[derive(Parser, Debug)]
#[command(name = "diagself", version, about = "Self-maps of S^n x S^n fixing the diagonal, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finitely generated abelian groups
    #[command(subcommand)]
    Fgab(FgabCmd),
    /// Whitehead's quadratic functor
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// The matrix monoids N and M and the bimodule V_n + V_n
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Orbit decomposition of [S^n x S^n, U]^v
    Orbits {
        /// builtin:sphere:<n>, builtin:product:<n>, or a target JSON file
        #[arg(long)]
        target: String,
        /// id, diagonal, a JSON element, or comma-separated coordinates
        #[arg(long)]
        v: String,
        #[command(flatten)]
        out: Output,
    },
    /// The monoid of self-maps of S^n x S^n under the diagonal
    Selfmaps {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Five-dimensional Gamma-sequences
    #[command(subcommand)]
    Gammaseq(GammaseqCmd),
}

#[derive(Subcommand, Debug)]
enum FgabCmd {
    /// Smith normal form of a matrix {"matrix": [[...], ...]}
    Snf {
        matrix: String,
        #[command(flatten)]
        out: Output,
    },
    /// Canonical form of a group (spelling such as "Z x Z/6", or group JSON)
    Group {
        group: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum GammaCmd {
    /// Gamma(A)
    Group {
        group: String,
        #[command(flatten)]
        out: Output,
    },
    /// Gamma-torsion of A
    Torsion {
        group: String,
        #[command(flatten)]
        out: Output,
    },
    /// Gamma^2_2(eta) for eta: pi2 -> pi3 given by its linearization
    Gamma22 {
        #[arg(long)]
        pi2: String,
        #[arg(long)]
        pi3: String,
        /// Matrix of eta on the basis of Gamma(Z^k); zero when omitted
        #[arg(long)]
        eta: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "N", alias = "n")]
    N,
}

#[derive(Subcommand, Debug)]
enum MonoidCmd {
    /// Multiplication table of I, T, P', P''
    Table {
        #[command(flatten)]
        out: Output,
    },
    /// Check the bimodule laws of V_n + V_n
    Check {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        scope: ScopeArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Compose two elements (m, (x, y))
    Compose {
        #[arg(long)]
        n: u32,
        left: String,
        right: String,
        /// Odd n only: use the split candidate (the extension class is open)
        #[arg(long)]
        assume_split: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum GammaseqCmd {
    /// Check exactness conditions of a sequence file
    Validate {
        seq: String,
        #[command(flatten)]
        out: Output,
    },
    /// I_u = [pi3, w] and J_u = [pi3, w] + [pi3, u'], assuming [u', u''] = 0
    Isotropy {
        seq: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        u: String,
        #[command(flatten)]
        out: Output,
    },
    /// Sequence with eta = 0, H5 = 0 and pi2 = pi2' + <w> + <u'>
    Example {
        #[arg(long)]
        pi3: String,
        /// Orders of w and u' ("inf" or a positive integer), e.g. inf,4
        #[arg(long)]
        wu: String,
        #[arg(long, default_value = "0")]
        pi2p: String,
        #[command(flatten)]
        out: Output,
    },
}

/// Runs one command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Presentation(_) => 2,
        _ => 1,
    }
}

fn emit(out: Output, value: Value, human: String) -> Result<String> {
    if out.json {
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        Ok(s)
    } else {
        Ok(human)
    }
}

/// Inline JSON, a file path, or the raw string.
fn load_text(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = load_text(arg)?;
    parse(&text).map_err(|e| Error::Input(format!("{arg}: {e}")))
}

fn read_group(arg: &str) -> Result<FgAbGroup> {
    let text = load_text(arg)?;
    if text.trim_start().starts_with('{') {
        parse::<GroupJson>(&text)?.to_group()
    } else {
        text.trim().parse()
    }
}

fn read_element(arg: &str, g: &FgAbGroup) -> Result<Element> {
    let text = load_text(arg)?;
    if text.trim_start().starts_with('{') {
        return parse::<ElementJson>(&text)?.in_group(g);
    }
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<BigInt>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Input(format!("cannot read element {arg:?}")))?;
    g.element(coords)
}

fn group_value(g: &FgAbGroup) -> Value {
    serde_json::to_value(GroupJson::from(g)).expect("serializable")
}

fn subgroup_value(s: &Subgroup) -> Value {
    group_value(&s.as_group().0)
}

fn coords_value(e: &Element) -> Value {
    serde_json::to_value(ElementJson::from(e)).expect("serializable")
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Fgab(c) => fgab(c),
        Command::Gamma(c) => gamma(c),
        Command::Monoid(c) => monoid(c),
        Command::Orbits { target, v, out } => orbits(&target, &v, out),
        Command::Selfmaps { n, out } => selfmaps(n, out),
        Command::Gammaseq(c) => gammaseq(c),
    }
}

fn fgab(cmd: FgabCmd) -> Result<String> {
    match cmd {
        FgabCmd::Snf { matrix, out } => {
            let h: HomJson = read_json(&matrix)?;
            let rows = h.matrix.len();
            let cols = h.matrix.first().map_or(0, |r| r.len());
            let m = h.to_matrix(rows, cols)?;
            let snf = smith_normal_form(&m);
            let diag: Vec<String> = snf.diagonal().iter().map(|d| d.to_string()).collect();
            let human = format!(
                "rank: {}\ndiagonal: [{}]\nS =\n{}U =\n{}V =\n{}",
                snf.rank,
                diag.join(", "),
                snf.s,
                snf.u,
                snf.v
            );
            let value = json!({
                "rank": snf.rank,
                "diagonal": snf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "S": HomJson::from(&snf.s),
                "U": HomJson::from(&snf.u),
                "V": HomJson::from(&snf.v),
            });
            emit(out, value, human)
        }
        FgabCmd::Group { group, out } => {
            let g = read_group(&group)?;
            let inv = g.invariants();
            let order = g.order().map_or("infinite".to_string(), |o| o.to_string());
            let human = format!("{g}\norder: {order}\n");
            let value = json!({
                "group": group_value(&g),
                "canonical": g.to_string(),
                "free_rank": inv.free_rank,
                "torsion": inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "order": order,
            });
            emit(out, value, human)
        }
    }
}

fn gamma(cmd: GammaCmd) -> Result<String> {
    match cmd {
        GammaCmd::Group { group, out } => {
            let a = read_group(&group)?;
            let g = gamma_group(&a);
            let human = format!("Gamma({a}) = {}\n", g.group());
            emit(out, json!({ "source": group_value(&a), "gamma": group_value(g.group()) }), human)
        }
        GammaCmd::Torsion { group, out } => {
            let a = read_group(&group)?;
            let t = gamma_torsion(&a);
            let human = format!("Gamma T({a}) = {t}\n");
            emit(out, json!({ "source": group_value(&a), "gamma_torsion": group_value(&t) }), human)
        }
        GammaCmd::Gamma22 { pi2, pi3, eta, out } => {
            let pi2 = read_group(&pi2)?;
            let pi3 = read_group(&pi3)?;
            let eta = match eta {
                None => QuadraticMap::zero(&pi2, &pi3),
                Some(m) => {
                    let h: HomJson = read_json(&m)?;
                    let cols = diagself::gamma::GammaFreeBasis::new(pi2.ambient_rank()).len();
                    QuadraticMap::new(&pi2, &pi3, h.to_matrix(pi3.ambient_rank(), cols)?)?
                }
            };
            let g = gamma22(&eta, &PairPolicy::Exhaustive)?;
            let m = g.m_eta.subgroup.invariants();
            let human = format!("M(eta) = {m}\nGamma22(eta) = {}\n", g.group);
            let value = json!({
                "M_eta": m.to_string(),
                "gamma22": group_value(&g.group),
                "exact": g.is_exact(),
            });
            emit(out, value, human)
        }
    }
}

fn scope_of(s: ScopeArg) -> Scope {
    match s {
        ScopeArg::M => Scope::M,
        ScopeArg::N => Scope::N,
    }
}

fn monoid(cmd: MonoidCmd) -> Result<String> {
    match cmd {
        MonoidCmd::Table { out } => {
            let table: Vec<Vec<&str>> = multiplication_table()
                .iter()
                .map(|r| r.iter().map(|m| m.name().expect("M is closed")).collect())
                .collect();
            emit(out, json!({ "elements": M_NAMES, "table": table }), render_table())
        }
        MonoidCmd::Check {
            n,
            scope,
            seed,
            samples,
            out,
        } => {
            let r = check_bimodule_axioms(n, scope_of(scope), samples, seed)?;
            let scope_name = match r.scope {
                Scope::M => "M (exhaustive)",
                Scope::N => "N (sampled)",
            };
            let mut human = format!("n = {n}, scope {scope_name}, {} triples", r.triples);
            if let Some(s) = r.seed {
                human.push_str(&format!(", seed {s}"));
            }
            human.push('\n');
            let ce = r.counterexample.as_ref().map(|ce| {
                let ms: Vec<String> = ce.matrices.iter().map(|m| m.to_string()).collect();
                human.push_str(&format!(
                    "counterexample: {:?} law at {:?} level for {}: {}\n",
                    ce.law,
                    ce.level,
                    ms.join(", "),
                    ce.detail
                ));
                json!({ "law": ce.law, "level": ce.level, "matrices": ms, "detail": ce.detail })
            });
            if ce.is_none() {
                human.push_str("pass\n");
            }
            let value = json!({
                "n": n,
                "scope": r.scope,
                "triples": r.triples,
                "seed": r.seed,
                "passed": r.passed(),
                "counterexample": ce,
            });
            emit(out, value, human)
        }
        MonoidCmd::Compose {
            n,
            left,
            right,
            assume_split,
            out,
        } => {
            let a = read_json::<ExtElementJson>(&left)?.to_element(n)?;
            let b = read_json::<ExtElementJson>(&right)?.to_element(n)?;
            let c = mn_compose(&a, &b, assume_split)?;
            let mut value = serde_json::to_value(ExtElementJson::from(&c)).expect("serializable");
            value["table_data"] = json!(true);
            let mut human = format!("{c}  {TABLE_NOTE}\n");
            if c.split_candidate {
                human.push_str("warning: computed under the split assumption, which is unproven for odd n\n");
            }
            emit(out, value, human)
        }
    }
}

fn load_target(spec: &str) -> Result<(TargetData, String)> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let (kind, n) = rest
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("expected builtin:<sphere|product>:<n>, got {spec:?}")))?;
        let n: u32 = n
            .parse()
            .map_err(|_| Error::Input(format!("bad dimension in {spec:?}")))?;
        return match kind {
            "sphere" => Ok((target_sphere(n)?, format!("S^{n}"))),
            "product" => Ok((target_sphere_product(n)?, format!("S^{n} x S^{n}"))),
            _ => Err(Error::Input(format!("unknown built-in target {kind:?}"))),
        };
    }
    let t = read_json::<TargetJson>(spec)?.to_target()?;
    Ok((t, spec.to_string()))
}

fn class_text(r: &OrbitReport, e: &diagself::orbits::OrbitEntry) -> String {
    match &e.classes {
        Some(cs) if r.symbolic => {
            let parts: Vec<String> = cs
                .iter()
                .map(|c| {
                    if c.modulus == BigInt::from(0) {
                        format!("{}", c.residue)
                    } else if c.modulus == BigInt::from(1) {
                        "any".to_string()
                    } else {
                        format!("{} mod {}", c.residue, c.modulus)
                    }
                })
                .collect();
            format!("u' = ({})", parts.join(", "))
        }
        _ => format!("({}, {})", e.u.u_prime, e.u.u_dprime),
    }
}

fn orbits(target: &str, v: &str, out: Output) -> Result<String> {
    let (t, label) = load_target(target)?;
    let v = match v {
        "id" | "diagonal" => identity_class(&t)?,
        other => read_element(other, &t.pi_n)?,
    };
    let r = orbit_decomposition(&t, &v)?;
    let note = if r.table_data { format!("  {TABLE_NOTE}") } else { String::new() };
    let mut human = format!("target: {label}, n = {}, v = {v}{note}\n", t.n);
    if r.symbolic {
        human.push_str("each row stands for every u' in the stated residue classes\n");
    }
    let header = ["u", "w", "I_u", "J_u", "pi_2n/I_u", "J_u/I_u"];
    let mut rows = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    let mut entries = Vec::new();
    for e in &r.entries {
        let i = e.i_u.invariants().to_string();
        let j = e.j_u.invariants().to_string();
        rows.push(vec![
            class_text(&r, e),
            e.u.w.to_string(),
            i,
            j,
            e.quotient.to_string(),
            e.action.to_string(),
        ]);
        let classes = e.classes.as_ref().map(|cs| {
            cs.iter()
                .map(|c| json!({ "residue": c.residue.to_string(), "modulus": c.modulus.to_string() }))
                .collect::<Vec<_>>()
        });
        entries.push(json!({
            "u_prime": coords_value(&e.u.u_prime),
            "u_dprime": coords_value(&e.u.u_dprime),
            "w": coords_value(&e.u.w),
            "classes": classes,
            "I_u": subgroup_value(&e.i_u),
            "J_u": subgroup_value(&e.j_u),
            "quotient": group_value(&e.quotient),
            "action": group_value(&e.action),
        }));
    }
    human.push_str(&render_rows(&rows));
    if !r.symbolic {
        human.push_str(&format!("orbit pieces: {}\n", r.entries.len()));
    }
    human.push_str(&format!("phi_injective: {}\n", r.phi_injective));
    let value = json!({
        "target": label,
        "n": t.n,
        "v": coords_value(&v),
        "table_data": r.table_data,
        "symbolic": r.symbolic,
        "phi_injective": r.phi_injective,
        "orbits": entries,
    });
    emit(out, value, human)
}

fn render_rows(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        s.push_str(cells.join(" | ").trim_end());
        s.push('\n');
    }
    s
}

fn selfmaps(n: u32, out: Output) -> Result<String> {
    match selfmap_monoid(n)? {
        SelfMapMonoid::Split(m) => {
            let fibre = direct_sum(&m.v, &m.v).group;
            let human = format!(
                "n = {n}: M_{n} = M x (V_{n} + V_{n}), a split linear extension\n\
                 base: M = {{I, T, P', P''}} (order 4)\n\
                 V_{n} = {}  {TABLE_NOTE}\n\
                 fibre: V_{n} + V_{n} = {fibre}\n\
                 order: {}\n",
                m.v, m.order
            );
            let value = json!({
                "n": n,
                "kind": "split",
                "base": M_NAMES,
                "V": group_value(&m.v),
                "fibre": group_value(&fibre),
                "order": m.order.to_string(),
                "table_data": true,
            });
            emit(out, value, human)
        }
        SelfMapMonoid::Extension(e) => {
            let fibre = direct_sum(&e.v, &e.v).group;
            let human = format!(
                "n = {n}: N_{n} is a linear extension of N by V_{n} + V_{n}\n\
                 base: N (2x2 integer matrices with row sums 1, infinite)\n\
                 V_{n} = {}  {TABLE_NOTE}\n\
                 fibre: V_{n} + V_{n} = {fibre} ({} elements over each matrix)\n\
                 caveat: {}\n",
                e.v, e.fibre_order, e.caveat
            );
            let value = json!({
                "n": n,
                "kind": "extension",
                "base": "N",
                "V": group_value(&e.v),
                "fibre": group_value(&fibre),
                "fibre_order": e.fibre_order.to_string(),
                "caveat": e.caveat,
                "table_data": true,
            });
            emit(out, value, human)
        }
    }
}

fn validation_text(v: &ValidationReport) -> String {
    match &v.failure {
        None => "valid Gamma-sequence\n".to_string(),
        Some((c, msg)) => format!("invalid: fails at {c}: {msg}\n"),
    }
}

fn validation_value(v: &ValidationReport) -> Value {
    json!({
        "valid": v.is_valid(),
        "passed": v.passed.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "failure": v.failure.as_ref().map(|(c, m)| json!({ "check": c.to_string(), "detail": m })),
    })
}

fn gammaseq(cmd: GammaseqCmd) -> Result<String> {
    match cmd {
        GammaseqCmd::Validate { seq, out } => {
            let s = read_json::<GammaSequenceJson>(&seq)?.to_sequence()?;
            let v = validate_gamma_sequence(&s);
            emit(out, validation_value(&v), validation_text(&v))
        }
        GammaseqCmd::Isotropy { seq, w, u, out } => {
            let s = read_json::<GammaSequenceJson>(&seq)?.to_sequence()?;
            let w = read_element(&w, &s.pi2)?;
            let u = read_element(&u, &s.pi2)?;
            let iso = isotropy_from_sequence(&s, &w, &u)?;
            let human = format!(
                "I_u = [pi3, w] = {}\nJ_u = [pi3, w] + [pi3, u'] = {}\nJ_u/I_u = {}\n\
                 note: assumes [u', u''] = 0 for u'' = w + u'\n",
                iso.i_u.invariants(),
                iso.j_u.invariants(),
                iso.orbit_group
            );
            let value = json!({
                "I_u": subgroup_value(&iso.i_u),
                "J_u": subgroup_value(&iso.j_u),
                "orbit_group": group_value(&iso.orbit_group),
                "assumes_bracket_vanishes": true,
            });
            emit(out, value, human)
        }
        GammaseqCmd::Example { pi3, wu, pi2p, out } => {
            let pi3 = read_group(&pi3)?;
            let pi2p = read_group(&pi2p)?;
            let (w, u) = wu
                .split_once(',')
                .ok_or_else(|| Error::Input(format!("--wu expects two orders like inf,4, got {wu:?}")))?;
            let (w, u) = (parse_cyclic_order(w)?, parse_cyclic_order(u)?);
            let r = nontrivial_action_example(&pi2p, &w, &u, &pi3)?;
            let human = format!(
                "pi2 = {} (w = {}, u' = {}), pi3 = {}\n\
                 Gamma4 = {}, Gamma T(pi2) = {}\n\
                 {}\
                 I_u = {}  (pi3 (x) <w> = {})\n\
                 J_u = {}  (pi3 (x) (<w> + <u'>) = {})\n\
                 J_u/I_u = {}  (pi3 (x) <u'> = {})\n\
                 fundamental action: {}\n\
                 choices: {}\n",
                r.seq.pi2,
                r.w,
                r.u_prime,
                r.seq.pi3,
                r.seq.gamma4,
                r.seq.gamma_t,
                validation_text(&r.validation),
                r.isotropy.i_u.invariants(),
                r.expected_i,
                r.isotropy.j_u.invariants(),
                r.expected_j,
                r.isotropy.orbit_group,
                r.expected_orbit,
                if r.nontrivial_action { "non-trivial" } else { "trivial" },
                r.choices.join("; ")
            );
            let value = json!({
                "sequence": GammaSequenceJson::from(&r.seq),
                "w": coords_value(&r.w),
                "u_prime": coords_value(&r.u_prime),
                "validation": validation_value(&r.validation),
                "I_u": subgroup_value(&r.isotropy.i_u),
                "J_u": subgroup_value(&r.isotropy.j_u),
                "orbit_group": group_value(&r.isotropy.orbit_group),
                "expected": {
                    "I_u": r.expected_i.to_string(),
                    "J_u": r.expected_j.to_string(),
                    "orbit_group": r.expected_orbit.to_string(),
                },
                "matches_tensor_formulas": r.matches_tensor_formulas(),
                "nontrivial_action": r.nontrivial_action,
                "choices": r.choices,
            });
            emit(out, value, human)
        }
    }
}
