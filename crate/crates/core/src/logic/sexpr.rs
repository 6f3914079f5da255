//! Line-oriented s-expression serialization of proofs.
//!
//! Each distinct node is printed once, premises first, as
//! `(nK RULE (PREMISE-IDS) (HYPS) CONCL)`; the last line is the root.
//! Formulas use the prefix grammar `A`, `(* a b)`, `(& a b)`, `(-o a b)`, `(! a)`.

use std::collections::HashMap;
use std::fmt::Write;

use super::formula::Formula;
use super::proof::{check, ill, LogicError, Proof, Rule, Sequent};

fn rule_token(r: &Rule) -> String {
    match r {
        Rule::Axiom => "axiom".into(),
        Rule::Cut => "cut".into(),
        Rule::TensorR => "tensor-r".into(),
        Rule::TensorL => "tensor-l".into(),
        Rule::WithR => "with-r".into(),
        Rule::WithL { index, arity } => format!("(with-l {index} {arity})"),
        Rule::LolliR => "lolli-r".into(),
        Rule::LolliL => "lolli-l".into(),
        Rule::Dereliction => "der".into(),
        Rule::Promotion => "prom".into(),
        Rule::Contraction => "ctr".into(),
        Rule::Weakening => "weak".into(),
        Rule::Exchange(perm) => {
            let ps: Vec<String> = perm.iter().map(usize::to_string).collect();
            if ps.is_empty() {
                "(exch)".into()
            } else {
                format!("(exch {})", ps.join(" "))
            }
        }
    }
}

/// Prints a proof, sharing repeated subproofs.
pub fn print_proof(p: &Proof) -> String {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut out = String::new();
    // iterative post-order so deep proofs do not exhaust the stack
    let mut stack: Vec<(Proof, bool)> = vec![(p.clone(), false)];
    while let Some((q, expanded)) = stack.pop() {
        if ids.contains_key(&q.ptr_id()) {
            continue;
        }
        if !expanded {
            stack.push((q.clone(), true));
            for c in q.premises().iter().rev() {
                stack.push((c.clone(), false));
            }
            continue;
        }
        let id = ids.len();
        ids.insert(q.ptr_id(), id);
        let prem: Vec<String> = q.premises().iter().map(|c| format!("n{}", ids[&c.ptr_id()])).collect();
        let hyps: Vec<String> = q.hyps().iter().map(Formula::to_string).collect();
        writeln!(
            out,
            "(n{id} {} ({}) ({}) {})",
            rule_token(q.rule()),
            prem.join(" "),
            hyps.join(" "),
            q.concl()
        )
        .expect("writing to a string");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
                toks.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn parse_sx(toks: &[String], pos: &mut usize) -> Result<Sx, LogicError> {
    let t = toks.get(*pos).ok_or_else(|| ill("unexpected end of input"))?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sx::List(items));
                    }
                    Some(_) => items.push(parse_sx(toks, pos)?),
                    None => return Err(ill("unbalanced parentheses")),
                }
            }
        }
        ")" => Err(ill("unexpected ')'")),
        a => Ok(Sx::Atom(a.to_string())),
    }
}

fn parse_one(s: &str) -> Result<Sx, LogicError> {
    let toks = tokenize(s);
    let mut pos = 0;
    let sx = parse_sx(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(ill("trailing input"));
    }
    Ok(sx)
}

fn formula_of(sx: &Sx) -> Result<Formula, LogicError> {
    match sx {
        Sx::Atom(a) if a.chars().all(|c| c.is_alphanumeric() || c == '_') && !a.is_empty() => {
            Ok(Formula::atom(a.clone()))
        }
        Sx::Atom(a) => Err(ill(format!("bad atom {a}"))),
        Sx::List(items) => {
            let head = match items.first() {
                Some(Sx::Atom(h)) => h.as_str(),
                _ => return Err(ill("formula needs a connective")),
            };
            let args = items[1..].iter().map(formula_of).collect::<Result<Vec<_>, _>>()?;
            match (head, args.as_slice()) {
                ("*", [a, b]) => Ok(Formula::tensor(a, b)),
                ("&", [a, b]) => Ok(Formula::with(a, b)),
                ("-o", [a, b]) => Ok(Formula::lolli(a, b)),
                ("!", [a]) => Ok(Formula::bang(a)),
                _ => Err(ill(format!("bad formula head {head}"))),
            }
        }
    }
}

/// Parses a formula in prefix form.
pub fn parse_formula(s: &str) -> Result<Formula, LogicError> {
    formula_of(&parse_one(s)?)
}

fn num(sx: &Sx) -> Result<usize, LogicError> {
    match sx {
        Sx::Atom(a) => a.parse().map_err(|_| ill(format!("expected a number, found {a}"))),
        _ => Err(ill("expected a number")),
    }
}

fn rule_of(sx: &Sx) -> Result<Rule, LogicError> {
    match sx {
        Sx::Atom(a) => Ok(match a.as_str() {
            "axiom" => Rule::Axiom,
            "cut" => Rule::Cut,
            "tensor-r" => Rule::TensorR,
            "tensor-l" => Rule::TensorL,
            "with-r" => Rule::WithR,
            "lolli-r" => Rule::LolliR,
            "lolli-l" => Rule::LolliL,
            "der" => Rule::Dereliction,
            "prom" => Rule::Promotion,
            "ctr" => Rule::Contraction,
            "weak" => Rule::Weakening,
            other => return Err(ill(format!("unknown rule {other}"))),
        }),
        Sx::List(items) => match items.first() {
            Some(Sx::Atom(h)) if h == "with-l" && items.len() == 3 => Ok(Rule::WithL {
                index: num(&items[1])?,
                arity: num(&items[2])?,
            }),
            Some(Sx::Atom(h)) if h == "exch" => {
                Ok(Rule::Exchange(items[1..].iter().map(num).collect::<Result<_, _>>()?))
            }
            _ => Err(ill("unknown compound rule")),
        },
    }
}

/// Parses the output of [`print_proof`] and checks the result.
pub fn parse_proof(s: &str) -> Result<Proof, LogicError> {
    let mut nodes: Vec<Proof> = Vec::new();
    for (lineno, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let at = |e: LogicError| ill(format!("line {}: {e}", lineno + 1));
        let Sx::List(items) = parse_one(line).map_err(at)? else {
            return Err(ill(format!("line {}: expected a list", lineno + 1)));
        };
        let [Sx::Atom(id), rule, Sx::List(prem), Sx::List(hyps), concl] = items.as_slice() else {
            return Err(ill(format!("line {}: expected (id rule (premises) (hyps) concl)", lineno + 1)));
        };
        if *id != format!("n{}", nodes.len()) {
            return Err(ill(format!("line {}: node ids must be consecutive", lineno + 1)));
        }
        let rule = rule_of(rule).map_err(at)?;
        let premises = prem
            .iter()
            .map(|p| match p {
                Sx::Atom(a) => a
                    .strip_prefix('n')
                    .and_then(|k| k.parse::<usize>().ok())
                    .and_then(|k| nodes.get(k).cloned())
                    .ok_or_else(|| ill(format!("unknown premise {a}"))),
                _ => Err(ill("premise must be an id")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(at)?;
        let hyps = hyps.iter().map(formula_of).collect::<Result<Vec<_>, _>>().map_err(at)?;
        let concl = formula_of(concl).map_err(at)?;
        nodes.push(Proof::from_parts(rule, premises, Sequent::new(hyps, concl)));
    }
    let root = nodes.pop().ok_or_else(|| ill("empty proof"))?;
    check(&root)?;
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::term::{app, compile_closed, lam, proj, var};

    #[test]
    fn formula_round_trip() {
        let s = "(-o (! (& A (* B A))) (-o A A))";
        assert_eq!(parse_formula(s).unwrap().to_string(), s);
    }

    #[test]
    fn proof_round_trip_is_exact() {
        let a = Formula::atom("A");
        let e = Formula::endo(&a);
        let t = lam("f", &e, lam("x", &Formula::power(&a, 2), app(var("f"), proj(1, 2, var("x")))));
        let p = compile_closed(&t).unwrap();
        let s = print_proof(&p);
        let q = parse_proof(&s).unwrap();
        assert_eq!(q, p);
        assert_eq!(print_proof(&q), s);
    }

    #[test]
    fn rejects_ill_formed() {
        assert!(parse_proof("(n0 axiom () (A) B)\n").is_err());
        assert!(parse_proof("(n1 axiom () (A) A)\n").is_err());
    }
}
