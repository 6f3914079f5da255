//! Step encodings against the machine oracle.

use std::collections::HashMap;

use rand::Rng;

use super::{err, par_map, rng, Check, Vacuums, VerifyOptions};
use crate::encodings::{
    absstep_family, boolstep_proof, relstep_family, step_core, step_p_proof, step_proof, tower,
};
use crate::linalg::random_rational;
use crate::logic::plain::{compose_componentwise, tensor_unpack};
use crate::logic::Formula;
use crate::machine::{
    abs_step, config_of, rel_step, run, show_word, window_of, AbsWindow, Configuration, RelWindow,
    TuringMachine,
};
use crate::polyform::words_up_to;
use crate::semantics::{apply, denote, lin_comb, Dims, Fingerprint, Sampler, Value};

const MACHINES: usize = 50;

/// The shared machine family: binary alphabet, one to three states.
fn family(seed: u64) -> Vec<TuringMachine> {
    (0..MACHINES)
        .map(|i| TuringMachine::random(2, 1 + i % 3, false, &mut rng(seed, 1000 + i as u64)))
        .collect()
}

fn configs(m: &TuringMachine, maxlen: usize) -> Vec<Configuration> {
    let words = words_up_to(m.alphabet(), maxlen);
    let mut out = Vec::new();
    for l in &words {
        for r in &words {
            for q in 0..m.states() {
                out.push(Configuration::new(l.clone(), r.clone(), q));
            }
        }
    }
    out
}

/// `⟦p⟧` against `p` oracle steps on every configuration up to `maxlen`,
/// compared at `dim⟦A⟧ = 1`.
fn steps_agree(m: &TuringMachine, p: usize, maxlen: usize, seed: u64, label: &str) -> Check {
    let mut check = Check::new(label);
    let a = Formula::atom("A");
    let k = m.alphabet() + 1;
    let proof = if p == 1 { step_proof(m, &a) } else { step_p_proof(m, p, &a) };
    let f = match proof.map_err(err).and_then(|pr| denote(&pr).map_err(err)) {
        Ok(f) => f,
        Err(e) => {
            check.case(Err(e), || format!("building the {p}-step proof"));
            return check;
        }
    };
    let (vin, vout) = (Vacuums::new(&tower(&a, k, p)), Vacuums::new(&a));
    let cod = Formula::tur_sigma_type(m.alphabet(), m.states(), &a);
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    let mut expected: HashMap<Configuration, Fingerprint> = HashMap::new();
    for c in configs(m, maxlen) {
        let want = run(m, &c, p);
        let outcome = (|| {
            let got = apply(&f, &vin.config(m, &c)?).map_err(err)?;
            let fp = sampler.fingerprint(&got, &cod).map_err(err)?;
            if !expected.contains_key(&want) {
                let v = vout.config(m, &want)?;
                expected.insert(want.clone(), sampler.fingerprint(&v, &cod).map_err(err)?);
            }
            Ok(expected[&want] == fp)
        })();
        check.case(outcome, || format!("{} from {c}: expected {want}", m.to_json()));
    }
    check
}

fn merged(label: &str, parts: Vec<Check>) -> Check {
    let mut out = Check::new(label);
    for c in parts {
        out.merge(c);
    }
    out
}

pub fn criterion_step(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let parts = par_map(opts.jobs, family(seed), |m| steps_agree(&m, 1, 4, seed, ""));
    vec![merged(
        &format!("step vs step_config, {MACHINES} machines, |S|,|T| <= 4, dim 1"),
        parts,
    )]
}

/// Vacuums over random combinations of the listed vacuum points.
fn grouplike(points: &[Value], rng: &mut impl Rng) -> Result<Value, String> {
    let terms = points
        .iter()
        .map(|v| {
            let p = v.as_kets().ok_or("expected a vacuum")?[0].1.point.clone();
            Ok((random_rational(rng), p))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(Value::vacuum(lin_comb(terms).map_err(err)?))
}

/// `⟦φ|ψ⟧ = ⟦φ⟧ ∘ ⟦ψ⟧` for the component-wise cut of two steps.
fn composite_agrees(m: &TuringMachine, idx: u64, seed: u64, check: &mut Check) {
    let a = Formula::atom("A");
    let k = m.alphabet() + 1;
    let b = tower(&a, k, 1);
    let built = (|| {
        let phi = step_core(m, &a).map_err(err)?;
        let psi = step_core(m, &b).map_err(err)?;
        let cut = tensor_unpack(&compose_componentwise(&phi, &psi).map_err(err)?).map_err(err)?;
        Ok::<_, String>((
            denote(&cut).map_err(err)?,
            denote(&tensor_unpack(&phi).map_err(err)?).map_err(err)?,
            denote(&tensor_unpack(&psi).map_err(err)?).map_err(err)?,
        ))
    })();
    let (fcut, fphi, fpsi) = match built {
        Ok(x) => x,
        Err(e) => {
            check.case(Err(e), || "building the cut".into());
            return;
        }
    };
    let vin = Vacuums::new(&tower(&a, k, 2));
    let cod = Formula::tur_sigma_type(m.alphabet(), m.states(), &a);
    let sampler = Sampler::new(Dims::uniform(2), seed, 2);
    let words = words_up_to(m.alphabet(), 2);
    let mut r = rng(seed, 2000 + idx);
    for trial in 0..4 {
        let outcome = (|| {
            let pick = |r: &mut rand_chacha::ChaCha8Rng| -> Result<Vec<Value>, String> {
                (0..3)
                    .map(|_| vin.word(m.alphabet(), &words[r.random_range(0..words.len())]))
                    .collect()
            };
            let (ls, rs) = (pick(&mut r)?, pick(&mut r)?);
            let qs = (0..m.states())
                .map(|q| vin.boolean(q, m.states()))
                .collect::<Result<Vec<_>, _>>()?;
            let x = Value::tensor_all(vec![grouplike(&ls, &mut r)?, grouplike(&rs, &mut r)?, grouplike(&qs, &mut r)?]);
            let lhs = apply(&fcut, &x).map_err(err)?;
            let rhs = apply(&fphi, &apply(&fpsi, &x).map_err(err)?).map_err(err)?;
            sampler.equal(&lhs, &rhs, &cod).map_err(err)
        })();
        check.case(outcome, || format!("{} trial {trial}", m.to_json()));
    }
}

pub fn criterion_iteration(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let machines = family(seed);
    let parts = par_map(opts.jobs, machines.clone(), |m| steps_agree(&m, 2, 4, seed, ""));
    let two = merged(
        &format!("step_p (p = 2) vs two oracle steps, {MACHINES} machines, |S|,|T| <= 4, dim 1"),
        parts,
    );
    let cuts = par_map(opts.jobs, machines.into_iter().enumerate().take(10).collect(), |(i, m)| {
        let mut c = Check::new("");
        composite_agrees(&m, i as u64, seed, &mut c);
        c
    });
    let cut = merged("cut of two steps equals the composite, group-like samples, dim 2", cuts);
    vec![two, cut]
}

fn all_strings(len: usize, s: usize) -> Vec<Vec<usize>> {
    (0..s.pow(len as u32))
        .map(|code| (0..len).map(|i| code / s.pow(i as u32) % s).collect())
        .collect()
}

fn boolstep_agrees(m: &TuringMachine, shape: (usize, usize, usize, usize, usize), seed: u64) -> Check {
    let (na, nb, c, d, p) = shape;
    let label = format!("a={na} b={nb} c={c} d={d} p={p}");
    let mut check = Check::new(&label);
    let a = Formula::atom("A");
    let (s, n) = (m.alphabet(), m.states());
    let pr = match boolstep_proof(na, nb, c, d, p, m, &a) {
        Ok(pr) => pr,
        Err(e) => {
            check.case(Err(err(e)), || label.clone());
            return check;
        }
    };
    let vin = Vacuums::new(&tower(&a, s + 1, p + c.max(d) + 1));
    let vout = Vacuums::new(&a);
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    for x in all_strings(na, s) {
        for y in all_strings(nb, s) {
            for q in 0..n {
                let cf = run(m, &config_of(&x, &y, q), p);
                let (wx, wy) = window_of(&cf, c, d);
                let outcome = (|| {
                    let mut inputs = vin.booleans(&[x.clone(), y.clone()].concat(), s)?;
                    inputs.push(vin.boolean(q, n)?);
                    let got = crate::semantics::eval(&pr, &inputs).map_err(err)?;
                    let mut parts = vout.booleans(&[wx.clone(), wy.clone()].concat(), s)?;
                    parts.push(vout.boolean(cf.state, n)?);
                    sampler.equal(&got, &Value::tensor_all(parts), pr.concl()).map_err(err)
                })();
                check.case(outcome, || {
                    format!(
                        "{} {label} x={} y={} q={q}: expected {} | {} state {}",
                        m.to_json(),
                        show_word(&x),
                        show_word(&y),
                        show_word(&wx),
                        show_word(&wy),
                        cf.state
                    )
                });
            }
        }
    }
    check
}

pub fn criterion_boolstep(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let machines: Vec<TuringMachine> = (0..3)
        .map(|i| TuringMachine::random(2, 1 + i, false, &mut rng(seed, 3000 + i as u64)))
        .collect();
    let mut cases = Vec::new();
    for m in &machines {
        for na in 1..=2 {
            for nb in 1..=2 {
                for c in 1..=3 {
                    for d in 1..=3 {
                        for p in 0..=2 {
                            cases.push((m.clone(), (na, nb, c, d, p)));
                        }
                    }
                }
            }
        }
    }
    let parts = par_map(opts.jobs, cases, |(m, shape)| boolstep_agrees(&m, shape, seed));
    vec![merged(
        "boolstep vs windows of the oracle run, a,b <= 2, c,d <= 3, p <= 2, 3 machines, dim 1",
        parts,
    )]
}

/// Machines over 2 or 3 symbols with 1 or 2 states, with and without stay moves.
fn direct_family(seed: u64) -> Vec<TuringMachine> {
    let mut out = Vec::new();
    let mut i = 0;
    for s in 2..=3 {
        for n in 1..=2 {
            for stay in [false, true] {
                for _ in 0..2 {
                    out.push(TuringMachine::random(s, n, stay, &mut rng(seed, 4000 + i)));
                    i += 1;
                }
            }
        }
    }
    out
}

fn relstep_agrees(m: &TuringMachine, h: usize, seed: u64) -> Check {
    let mut check = Check::new("");
    let a = Formula::atom("A");
    let (s, n) = (m.alphabet(), m.states());
    let fam = match relstep_family(h, m, &a) {
        Ok(f) => f,
        Err(e) => {
            check.case(Err(err(e)), || format!("relstep h={h}"));
            return check;
        }
    };
    let vac = Vacuums::new(&a);
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    for w in all_strings(2 * h + 1, s) {
        for q in 0..n {
            let (w2, q2) = rel_step(m, &RelWindow::new(w.clone()), q);
            let outcome = (|| {
                let mut inputs = vac.booleans(&w, s)?;
                inputs.push(vac.boolean(q, n)?);
                let got = crate::semantics::eval(&fam.relstep, &[Value::tensor_all(inputs)]).map_err(err)?;
                let mut parts = vac.booleans(&w2.symbols, s)?;
                parts.push(vac.boolean(q2, n)?);
                sampler.equal(&got, &Value::tensor_all(parts), fam.relstep.concl()).map_err(err)
            })();
            check.case(outcome, || {
                format!("{} h={h} window {} q={q}: expected {} state {q2}", m.to_json(), show_word(&w), show_word(&w2.symbols))
            });
        }
    }
    check
}

fn absstep_agrees(m: &TuringMachine, h: usize, seed: u64) -> Check {
    let mut check = Check::new("");
    let a = Formula::atom("A");
    let (s, n) = (m.alphabet(), m.states());
    let fam = match absstep_family(h, m, &a) {
        Ok(f) => f,
        Err(e) => {
            check.case(Err(err(e)), || format!("absstep h={h}"));
            return check;
        }
    };
    let vac = Vacuums::new(&a);
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    for w in all_strings(h, s) {
        for q in 0..n {
            for head in 0..h {
                let o = abs_step(
                    m,
                    &AbsWindow {
                        symbols: w.clone(),
                        state: q,
                        head,
                    },
                );
                let outcome = (|| {
                    let mut inputs = vac.booleans(&w, s)?;
                    inputs.push(vac.boolean(q, n)?);
                    inputs.push(vac.boolean(head, h)?);
                    let got = crate::semantics::eval(&fam.absstep, &[Value::tensor_all(inputs)]).map_err(err)?;
                    let mut parts = vac.booleans(&o.symbols, s)?;
                    parts.push(vac.boolean(o.state, n)?);
                    parts.push(vac.boolean(o.head, h)?);
                    sampler.equal(&got, &Value::tensor_all(parts), fam.absstep.concl()).map_err(err)
                })();
                check.case(outcome, || {
                    format!(
                        "{} h={h} tape {} q={q} head={head}: expected {} state {} head {}",
                        m.to_json(),
                        show_word(&w),
                        show_word(&o.symbols),
                        o.state,
                        o.head
                    )
                });
            }
        }
    }
    check
}

pub fn criterion_direct(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let machines = direct_family(seed);
    let rel_cases: Vec<(TuringMachine, usize)> =
        machines.iter().flat_map(|m| (0..=2).map(move |h| (m.clone(), h))).collect();
    let abs_cases: Vec<(TuringMachine, usize)> =
        machines.iter().flat_map(|m| (1..=3).map(move |h| (m.clone(), h))).collect();
    let rel = par_map(opts.jobs, rel_cases, |(m, h)| relstep_agrees(&m, h, seed));
    let abs = par_map(opts.jobs, abs_cases, |(m, h)| absstep_agrees(&m, h, seed));
    vec![
        merged(
            &format!("relstep vs rel_step, h <= 2, s <= 3, |Q| <= 2, with stay, {} machines", machines.len()),
            rel,
        ),
        merged(
            &format!("absstep vs abs_step, h <= 3, s <= 3, |Q| <= 2, with stay, {} machines", machines.len()),
            abs,
        ),
    ]
}
