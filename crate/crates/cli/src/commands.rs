//! Subcommand implementations. Each writes its report to `out`.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lltm_core::bint_algebra::{free_group_matrices, independence_check, Verdict};
use lltm_core::encodings::{
    absstep_family, booltype_pow, boolstep_proof, nbool_proof, relstep_family, slist_proof, step_p_proof, step_proof, tower,
};
use lltm_core::linalg::{fmt_q, RatMatrix, Q};
use lltm_core::logic::sexpr::print_proof;
use lltm_core::machine::{parse_word, run as run_machine, show_word, step_config, Configuration, TuringMachine};
use lltm_core::polyform::{f_psi, indices, words_up_to, DistVec, Label, LabelKind, Slot};
use lltm_core::semantics::{apply, apply_all, denote, eval, lin_comb, Dims, Sampler, SpaceExpr};
use lltm_core::verify::{run_criterion, suite_ids, VerifyOptions};
use lltm_core::{check, Formula, Proof, Value};

use crate::{Cli, Command, Component, ConfigArgs, EncodeKind};

#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, files or parameters.
    Input(String),
    /// A check ran and failed; the report has been written.
    Failed,
    Internal(String),
    /// Stdout was closed by the reader.
    Closed,
}

type CliResult = Result<(), CliError>;

fn internal(e: impl Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn input(e: impl Display) -> CliError {
    CliError::Input(e.to_string())
}

fn io(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return CliError::Closed;
    }
    CliError::Internal(format!("writing output: {e}"))
}

/// Writes one blank symbol to the right of the head, moving right.
const WRITER_RIGHT: &str = r#"{"states":1,"alphabet":2,"moves":"LR","delta":[[0,0,1,0,"R"],[1,0,1,0,"R"]]}"#;

fn load_machine(path: Option<&Path>) -> Result<TuringMachine, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?,
        None => WRITER_RIGHT.to_string(),
    };
    TuringMachine::from_json(&text).map_err(input)
}

fn word(s: &str, alphabet: usize, what: &str) -> Result<Vec<usize>, CliError> {
    match parse_word(s) {
        Some(w) if w.iter().all(|&d| d < alphabet) => Ok(w),
        _ => Err(input(format!("{what} {s:?} is not a word over 0..{alphabet}"))),
    }
}

fn config(m: &TuringMachine, c: &ConfigArgs) -> Result<Configuration, CliError> {
    if c.state >= m.states() {
        return Err(input(format!("state {} out of range for {} states", c.state, m.states())));
    }
    Ok(Configuration::new(
        word(&c.left, m.alphabet(), "left tape")?,
        word(&c.right, m.alphabet(), "right tape")?,
        c.state,
    ))
}

/// `key=value` pairs separated by commas; every key must be listed in `allowed`.
fn params(text: &str, allowed: &[&str]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| input(format!("parameter {part:?} is not key=value")))?;
        if !allowed.contains(&k) {
            return Err(input(format!("unknown parameter {k:?}; expected one of {}", allowed.join(", "))));
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn num(ps: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize, CliError> {
    ps.get(key).map_or(Ok(default), |v| {
        v.parse().map_err(|_| input(format!("parameter {key} must be a number, found {v:?}")))
    })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    let opts = VerifyOptions {
        seed: cli.seed,
        jobs: cli.jobs.max(1),
    };
    match cli.command {
        Command::Encode { machine, kind, params } => encode(machine.as_deref(), kind, &params, out),
        Command::EvalStep { machine, config, steps } => eval_step(machine.as_deref(), &config, steps, opts.seed, out),
        Command::Simulate { machine, config, steps } => simulate(machine.as_deref(), &config, steps, out),
        Command::Poly {
            machine,
            component,
            bound,
            h,
            dim,
        } => poly(machine.as_deref(), component, bound, h, dim, opts.seed, out),
        Command::Independence { bints, dim, trials } => independence(&bints, dim, trials, opts.seed, out),
        Command::Verify { suite } => verify(&suite, &opts, out),
        Command::SearchNoncommute { machine, h, trials } => search_noncommute(machine.as_deref(), h, trials, opts.seed, out),
    }
}

fn encode(machine: Option<&Path>, kind: EncodeKind, text: &str, out: &mut dyn Write) -> CliResult {
    let a = Formula::atom("A");
    let proof: Proof = match kind {
        EncodeKind::Step => {
            let ps = params(text, &["p"])?;
            let m = load_machine(machine)?;
            match num(&ps, "p", 1)? {
                0 => return Err(input("p must be positive")),
                1 => step_proof(&m, &a),
                p => step_p_proof(&m, p, &a),
            }
            .map_err(input)?
        }
        EncodeKind::Boolstep => {
            let ps = params(text, &["a", "b", "c", "d", "p"])?;
            let m = load_machine(machine)?;
            let n = |k| num(&ps, k, 1);
            boolstep_proof(n("a")?, n("b")?, n("c")?, n("d")?, n("p")?, &m, &a).map_err(input)?
        }
        EncodeKind::Relstep => {
            let ps = params(text, &["h"])?;
            let m = load_machine(machine)?;
            relstep_family(num(&ps, "h", 1)?, &m, &a).map_err(input)?.relstep
        }
        EncodeKind::Absstep => {
            let ps = params(text, &["h"])?;
            let m = load_machine(machine)?;
            absstep_family(num(&ps, "h", 1)?, &m, &a).map_err(input)?.absstep
        }
        EncodeKind::Slist => {
            let ps = params(text, &["s", "word"])?;
            let s = num(&ps, "s", 2)?;
            let w = word(ps.get("word").map_or("", String::as_str), s, "word")?;
            slist_proof(s, &w, &a).map_err(input)?
        }
    };
    let seq = check(&proof).map_err(internal)?;
    write!(out, "{}", print_proof(&proof)).map_err(io)?;
    writeln!(out, "sequent: {seq}").map_err(io)
}

fn simulate(machine: Option<&Path>, c: &ConfigArgs, steps: usize, out: &mut dyn Write) -> CliResult {
    let m = load_machine(machine)?;
    let mut c = config(&m, c)?;
    writeln!(out, "0 {c}").map_err(io)?;
    for i in 1..=steps {
        c = step_config(&m, &c);
        writeln!(out, "{i} {c}").map_err(io)?;
    }
    Ok(())
}

/// A right-nested tensor as a list of `(coefficient, factors)` terms.
fn tensor_terms(v: &Value, n: usize) -> Result<Vec<(Q, Vec<Value>)>, CliError> {
    if n == 1 {
        return Ok(vec![(Q::from_integer(1.into()), vec![v.clone()])]);
    }
    let Value::Tensor(ts) = v else {
        return Err(internal("expected a tensor of configurations"));
    };
    let mut out = Vec::new();
    for (c, x, rest) in ts.iter() {
        for (d, mut fs) in tensor_terms(rest, n - 1)? {
            fs.insert(0, x.clone());
            out.push((c * d, fs));
        }
    }
    Ok(out)
}

fn show_dist(d: &DistVec, quote: bool) -> String {
    let label = |l: &Label| if quote { format!("\"{}\"", show_word(l)) } else { show_word(l) };
    let terms: Vec<(&Label, &Q)> = d.iter().collect();
    match terms.as_slice() {
        [(l, c)] if **c == Q::from_integer(1.into()) => label(l),
        _ => {
            let parts: Vec<String> = terms.iter().map(|(l, c)| format!("{}*{}", fmt_q(c), label(l))).collect();
            format!("{{{}}}", parts.join(" + "))
        }
    }
}

/// Vacuums over `αⁱ β α⁻ⁱ` for `i < s`, which generate a free group of rank `s`,
/// so distinct words send them to distinct matrices.
fn free_probes(s: usize) -> Vec<Value> {
    let (alpha, beta) = free_group_matrices();
    let inv = alpha.inverse().expect("unipotent");
    let space = SpaceExpr::Base(2);
    let mut conj = (RatMatrix::identity(2), RatMatrix::identity(2));
    let mut out = Vec::new();
    for _ in 0..s {
        let g = conj.0.mul(&beta).mul(&conj.1);
        out.push(Value::vacuum(Value::matrix(&space, &space, g)));
        conj = (conj.0.mul(&alpha), inv.mul(&conj.1));
    }
    out
}

/// The columns of a point of `ₛlist_A` at the free probes, or the value of
/// a point of `ₙbool_A` at `(1, 2, …, n)` with `dim⟦A⟧ = 1`.
fn probe(point: &Value, kind: LabelKind, probes: &[Value]) -> Result<Vec<Vec<Q>>, CliError> {
    let cols = match kind {
        LabelKind::Word(_) => {
            let op = apply_all(point, probes).map_err(internal)?;
            (0..2).map(|j| apply(&op, &Value::basis(2, j))).collect::<Result<Vec<_>, _>>()
        }
        LabelKind::Bool(n) => {
            let arg = Value::tuple((1..=n).map(|i| Value::vector(vec![Q::from_integer((i as i64).into())])).collect());
            apply(point, &arg).map(|v| vec![v])
        }
    }
    .map_err(internal)?;
    cols.iter()
        .map(|v| v.as_vector().map(<[Q]>::to_vec).ok_or_else(|| internal("expected a vector")))
        .collect()
}

/// Names the points of output kets by matching them against candidate labels at one probe.
struct Decoder {
    kind: LabelKind,
    probes: Vec<Value>,
    table: Vec<(Vec<Vec<Q>>, Label)>,
}

impl Decoder {
    fn new(kind: LabelKind, labels: Vec<Label>, a: &Formula) -> Result<Decoder, CliError> {
        let probes = match kind {
            LabelKind::Word(s) => free_probes(s),
            LabelKind::Bool(_) => Vec::new(),
        };
        let table = labels
            .into_iter()
            .map(|l| Ok((probe(&kind.denote(&l, a).map_err(internal)?, kind, &probes)?, l)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Decoder { kind, probes, table })
    }

    fn name(&self, point: &Value) -> Result<Option<Label>, CliError> {
        let p = probe(point, self.kind, &self.probes)?;
        Ok(self.table.iter().find(|(q, _)| *q == p).map(|(_, l)| l.clone()))
    }

    fn show(&self, l: &Option<Label>) -> String {
        match (l, self.kind) {
            (None, _) => "?".into(),
            (Some(l), LabelKind::Word(_)) => format!("\"{}\"", show_word(l)),
            (Some(l), LabelKind::Bool(_)) => show_word(l),
        }
    }

    /// Renders `Σ c |entries>_point`; the label is returned when `v` is one vacuum.
    fn kets(&self, v: &Value) -> Result<(String, Option<Label>), CliError> {
        let ks = v.as_kets().ok_or_else(|| internal("expected kets"))?;
        let mut parts = Vec::new();
        for (c, k) in ks {
            let entries = k.entries.iter().map(|e| Ok(self.show(&self.name(e)?))).collect::<Result<Vec<_>, CliError>>()?;
            parts.push(format!("{} * |{}>_{}", fmt_q(c), entries.join(","), self.show(&self.name(&k.point)?)));
        }
        let single = match ks {
            [(c, k)] if k.is_vacuum() && *c == Q::from_integer(1.into()) => self.name(&k.point)?,
            _ => None,
        };
        Ok((parts.join(" + "), single))
    }
}

fn eval_step(machine: Option<&Path>, c: &ConfigArgs, steps: usize, seed: u64, out: &mut dyn Write) -> CliResult {
    let m = load_machine(machine)?;
    let c = config(&m, c)?;
    if steps == 0 {
        return Err(input("steps must be positive"));
    }
    let (s, n) = (m.alphabet(), m.states());
    let a = Formula::atom("A");
    let proof = if steps == 1 { step_proof(&m, &a) } else { step_p_proof(&m, steps, &a) }.map_err(internal)?;
    let f = denote(&proof).map_err(internal)?;
    let vacuums = |c: &Configuration, base: &Formula| -> Result<Value, CliError> {
        let vac = |p: Result<Proof, _>| -> Result<Value, CliError> {
            Ok(Value::vacuum(denote(&p.map_err(internal)?).map_err(internal)?))
        };
        Ok(Value::tensor_all(vec![
            vac(slist_proof(s, &c.left, base))?,
            vac(slist_proof(s, &c.right, base))?,
            vac(nbool_proof(c.state, n, base))?,
        ]))
    };
    let got = apply(&f, &vacuums(&c, &tower(&a, s + 1, steps))?).map_err(internal)?;

    // Output words are at most `steps + 1` longer than the longest input word.
    let maxlen = c.left.len().max(c.right.len()) + steps + 1;
    let words = Decoder::new(LabelKind::Word(s), words_up_to(s, maxlen), &a)?;
    let states = Decoder::new(LabelKind::Bool(n), indices(n), &a)?;
    writeln!(out, "proof:   {}", proof.conclusion()).map_err(io)?;
    writeln!(out, "input:   {c}").map_err(io)?;
    let mut lines = Vec::new();
    let mut decoded = Vec::new();
    for (coef, fs) in tensor_terms(&got, 3)? {
        let (l, wl) = words.kets(&fs[0])?;
        let (r, wr) = words.kets(&fs[1])?;
        let (q, wq) = states.kets(&fs[2])?;
        lines.push(format!("{} * [{l}] (x) [{r}] (x) [{q}]", fmt_q(&coef)));
        if let (Some(l), Some(r), Some(q)) = (wl, wr, wq) {
            decoded.push((coef, Configuration::new(l, r, q[0])));
        }
    }
    if lines.is_empty() {
        lines.push("0".into());
    }
    writeln!(out, "output:  {}", lines.join("\n       + ")).map_err(io)?;
    let want = run_machine(&m, &c, steps);
    writeln!(out, "oracle:  {want}").map_err(io)?;
    match decoded.as_slice() {
        [(k, d)] if *k == Q::from_integer(1.into()) => writeln!(out, "decoded: {d}").map_err(io)?,
        _ => writeln!(out, "decoded: not a single configuration").map_err(io)?,
    }
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    let same = sampler.equal(&got, &vacuums(&want, &a)?, proof.concl()).map_err(internal)?;
    writeln!(out, "agree:   {}", if same { "yes" } else { "no" }).map_err(io)?;
    if same {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn write_polys(
    title: &str,
    psi: &Proof,
    slots: &[Slot],
    output: &Slot,
    sampler: &Sampler,
    out: &mut dyn Write,
) -> CliResult {
    let f = f_psi(psi, slots, output, sampler).map_err(internal)?;
    let degrees: Vec<String> = f.degrees.iter().map(usize::to_string).collect();
    writeln!(out, "{title} (degrees {})", degrees.join(" ")).map_err(io)?;
    if !f.bound_met {
        writeln!(out, "  warning: dim does not exceed half the longest output label").map_err(io)?;
    }
    for (label, p) in &f.polys {
        writeln!(out, "  \"{}\": {p}", show_word(label)).map_err(io)?;
    }
    Ok(())
}

fn poly(
    machine: Option<&Path>,
    component: Component,
    bound: usize,
    h: usize,
    dim: Option<usize>,
    seed: u64,
    out: &mut dyn Write,
) -> CliResult {
    let m = load_machine(machine)?;
    let (s, n) = (m.alphabet(), m.states());
    let a = Formula::atom("A");
    match component {
        Component::Left | Component::Right | Component::State => {
            let d = dim.unwrap_or(bound.div_ceil(2) + 1);
            let sampler = Sampler::new(Dims::uniform(d), seed, 3);
            let b = tower(&a, s + 1, 1);
            let slots = vec![
                Slot::new(LabelKind::Word(s), &b, words_up_to(s, bound)),
                Slot::new(LabelKind::Word(s), &b, words_up_to(s, bound)),
                Slot::new(LabelKind::Bool(n), &b, indices(n)),
            ];
            let (name, psi, output) = match component {
                Component::Left => (
                    "left",
                    lltm_core::encodings::left_proof(&m, &a),
                    Slot::new(LabelKind::Word(s), &a, words_up_to(s, bound + 1)),
                ),
                Component::Right => (
                    "right",
                    lltm_core::encodings::right_proof(&m, &a),
                    Slot::new(LabelKind::Word(s), &a, words_up_to(s, bound + 1)),
                ),
                _ => (
                    "state",
                    lltm_core::encodings::state_proof(&m, &a),
                    Slot::new(LabelKind::Bool(n), &a, indices(n)),
                ),
            };
            writeln!(out, "variables: x[1][S] left word, x[2][T] right word, x[3][q] state; words up to length {bound}; dim {d}")
                .map_err(io)?;
            write_polys(name, &psi.map_err(internal)?, &slots, &output, &sampler, out)
        }
        Component::Relstep => {
            let sampler = Sampler::new(Dims::uniform(dim.unwrap_or(1)), seed, 3);
            let fam = relstep_family(h, &m, &a).map_err(input)?;
            let mut slots: Vec<Slot> = (0..2 * h + 1).map(|_| Slot::new(LabelKind::Bool(s), &a, indices(s))).collect();
            slots.push(Slot::new(LabelKind::Bool(n), &a, indices(n)));
            writeln!(out, "variables: x[1..{}][σ] cells -{h}..{h}, x[{}][q] state", 2 * h + 1, 2 * h + 2).map_err(io)?;
            let sym = Slot::new(LabelKind::Bool(s), &a, indices(s));
            for (i, p) in fam.symbols.iter().enumerate() {
                let pos = i as isize - h as isize - 1;
                write_polys(&format!("symbol {pos}"), p, &slots, &sym, &sampler, out)?;
            }
            write_polys("state", &fam.state, &slots, &Slot::new(LabelKind::Bool(n), &a, indices(n)), &sampler, out)
        }
        Component::Absstep => {
            let sampler = Sampler::new(Dims::uniform(dim.unwrap_or(1)), seed, 3);
            let fam = absstep_family(h, &m, &a).map_err(input)?;
            let mut slots: Vec<Slot> = (0..h).map(|_| Slot::new(LabelKind::Bool(s), &a, indices(s))).collect();
            slots.push(Slot::new(LabelKind::Bool(n), &a, indices(n)));
            slots.push(Slot::new(LabelKind::Bool(h), &a, indices(h)));
            writeln!(out, "variables: x[1..{h}][σ] cells, x[{}][q] state, x[{}][k] head", h + 1, h + 2).map_err(io)?;
            let sym = Slot::new(LabelKind::Bool(s), &a, indices(s));
            for (i, p) in fam.symbols.iter().enumerate() {
                write_polys(&format!("symbol {i}"), p, &slots, &sym, &sampler, out)?;
            }
            write_polys("state", &fam.state, &slots, &Slot::new(LabelKind::Bool(n), &a, indices(n)), &sampler, out)?;
            write_polys("head", &fam.tapehead, &slots, &Slot::new(LabelKind::Bool(h), &a, indices(h)), &sampler, out)
        }
    }
}

fn independence(bints: &str, dim: usize, trials: usize, seed: u64, out: &mut dyn Write) -> CliResult {
    if dim == 0 || trials == 0 {
        return Err(input("dim and trials must be positive"));
    }
    let ts = bints
        .split(',')
        .map(|b| word(b.trim(), 2, "binary integer"))
        .collect::<Result<Vec<_>, CliError>>()?;
    let verdict = independence_check(&ts, dim, trials, seed);
    writeln!(out, "{verdict}").map_err(io)?;
    if let Verdict::Independent(cert) = &verdict {
        writeln!(out, "{}", serde_json::to_string(cert).map_err(internal)?).map_err(io)?;
    }
    Ok(())
}

fn verify(suite: &str, opts: &VerifyOptions, out: &mut dyn Write) -> CliResult {
    let ids = suite_ids(suite).map_err(input)?;
    let mut failed = 0;
    for id in &ids {
        let r = run_criterion(*id, opts).ok_or_else(|| internal(format!("no criterion {id}")))?;
        writeln!(out, "{r}").map_err(io)?;
        out.flush().map_err(io)?;
        if !r.passed() {
            failed += 1;
        }
    }
    writeln!(out, "{} of {} criteria passed", ids.len() - failed, ids.len()).map_err(io)?;
    if failed > 0 {
        Err(CliError::Failed)
    } else {
        Ok(())
    }
}

/// A distribution over `0..n` with positive weights summing to one.
fn random_dist(n: usize, r: &mut ChaCha8Rng) -> DistVec {
    let w: Vec<i64> = (0..n).map(|_| r.random_range(1..=9)).collect();
    let total: i64 = w.iter().sum();
    DistVec::from_pairs(w.iter().enumerate().map(|(i, &x)| (vec![i], Q::new(x.into(), total.into()))))
}

/// The point of `ₛbool_B` sending `(x₀, …)` to `x₀` with its outer `k`-tuple rotated.
/// It lies outside the span of the boolean denotations.
fn rotation(s: usize, k: usize) -> Value {
    Value::native("rotate", move |x| {
        let v = x.project(0, s)?;
        let parts = (0..k).map(|i| v.project((i + 1) % k, k)).collect::<Result<Vec<_>, _>>()?;
        Ok(Value::tuple(parts))
    })
}

/// Compares `boolstep^{h+1,h,h+2,h+1}` (one step) at base `B` with `relstep_h`
/// after casting the inputs down to `A`. Each cell is a distribution over
/// symbols plus a small multiple of [`rotation`]; the state is a distribution.
/// On classical inputs the two sides agree.
fn search_noncommute(machine: Option<&Path>, h: usize, trials: usize, seed: u64, out: &mut dyn Write) -> CliResult {
    let m = load_machine(machine)?;
    let (s, n) = (m.alphabet(), m.states());
    let (k, levels) = (s + 1, h + 4);
    let a = Formula::atom("A");
    let b = tower(&a, k, levels);
    let bool_step = boolstep_proof(h + 1, h, h + 2, h + 1, 1, &m, &a).map_err(input)?;
    let rel = relstep_family(h, &m, &a).map_err(input)?.core;
    let casts = (0..levels)
        .rev()
        .map(|j| denote(&booltype_pow(s, k, &tower(&a, k, j)).map_err(internal)?).map_err(internal))
        .collect::<Result<Vec<Value>, CliError>>()?;
    let cast = |v: &Value| casts.iter().try_fold(v.clone(), |acc, f| apply(f, &acc)).map_err(internal);
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    writeln!(out, "machine {}, h = {h}", m.to_json()).map_err(io)?;
    // Both sides on cells `d + eps * rotation` and state `q`.
    let compare = |cells: &[(DistVec, Q)], q: &DistVec| -> Result<bool, CliError> {
        let (mut top, mut bottom) = (Vec::new(), Vec::new());
        for (d, eps) in cells {
            let p = lin_comb(vec![
                (Q::from_integer(1.into()), d.denote(LabelKind::Bool(s), &b).map_err(internal)?),
                (eps.clone(), rotation(s, k)),
            ])
            .map_err(internal)?;
            bottom.push(Value::vacuum(cast(&p)?));
            top.push(Value::vacuum(p));
        }
        top.push(Value::vacuum(q.denote(LabelKind::Bool(n), &b).map_err(internal)?));
        bottom.push(Value::vacuum(q.denote(LabelKind::Bool(n), &a).map_err(internal)?));
        let x = eval(&bool_step, &top).map_err(internal)?;
        let y = eval(&rel, &bottom).map_err(internal)?;
        sampler.equal(&x, &y, rel.concl()).map_err(internal)
    };
    let mut differing = 0;
    for t in 0..trials {
        let cells: Vec<(DistVec, Q)> = (0..2 * h + 1)
            .map(|_| (random_dist(s, &mut r), Q::new(r.random_range(1..=9).into(), 10.into())))
            .collect();
        let q = random_dist(n, &mut r);
        let classical: Vec<(DistVec, Q)> = cells.iter().map(|(d, _)| (d.clone(), Q::from_integer(0.into()))).collect();
        let control = compare(&classical, &q)?;
        let same = compare(&cells, &q)?;
        let mut shown: Vec<String> = cells.iter().map(|(d, e)| format!("{} + {}*rot", show_dist(d, false), fmt_q(e))).collect();
        shown.push(show_dist(&q, false));
        writeln!(
            out,
            "trial {t}: {} (without rotation: {}) on {}",
            if same { "agree" } else { "differ" },
            if control { "agree" } else { "differ" },
            shown.join(", ")
        )
        .map_err(io)?;
        if !control {
            return Err(internal("the encodings disagree on classical inputs"));
        }
        differing += usize::from(!same);
    }
    writeln!(out, "{differing} of {trials} trials differ").map_err(io)
}
