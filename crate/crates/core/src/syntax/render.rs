//! Canonical printing. Output is deterministic: rules keep their stored
//! order, atoms inside each rule part are sorted, every statement ends with
//! a newline.

use std::fmt::{self, Write};

use super::{Atom, Formula, Program, Rule, Theory};

pub(super) fn write_rule(out: &mut impl Write, rule: &Rule) -> fmt::Result {
    let head: Vec<String> = rule.head().iter().map(Atom::to_string).collect();
    let body: Vec<String> = rule
        .body_pos()
        .iter()
        .map(|a| a.to_string())
        .chain(rule.body_neg().iter().map(|a| format!("not {a}")))
        .chain(rule.body_negneg().iter().map(|a| format!("not not {a}")))
        .collect();
    write_clause(out, &head, &body)
}

fn write_clause(out: &mut impl Write, head: &[String], body: &[String]) -> fmt::Result {
    out.write_str(&head.join(" | "))?;
    if !body.is_empty() {
        if !head.is_empty() {
            out.write_char(' ')?;
        }
        write!(out, ":- {}", body.join(", "))?;
    }
    out.write_char('.')
}

fn write_declaration(out: &mut String, declared: impl IntoIterator<Item = Atom>) {
    let names: Vec<String> = declared.into_iter().map(|a| a.to_string()).collect();
    if !names.is_empty() {
        let _ = writeln!(out, "#atoms {}.", names.join(", "));
    }
}

pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    write_declaration(&mut out, p.declared_only());
    for rule in p.rules() {
        let _ = write_rule(&mut out, rule);
        out.push('\n');
    }
    out
}

pub fn render_theory(t: &Theory) -> String {
    let mut out = String::new();
    write_declaration(&mut out, t.declared_only());
    for f in t.formulas() {
        let _ = write_statement(&mut out, f);
        out.push('\n');
    }
    out
}

/// A formula as it appears inside a rule: atoms, `#true`, `#false` and
/// `not` chains bare, every binary connective parenthesized.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    let _ = write_element(&mut out, f);
    out
}

fn write_element(out: &mut String, f: &Formula) -> fmt::Result {
    if let Some(inner) = f.negated() {
        out.push_str("not ");
        return write_element(out, inner);
    }
    match f {
        Formula::Falsum => out.push_str("#false"),
        Formula::Atom(a) => out.push_str(a.name()),
        Formula::And(items) if items.is_empty() => out.push_str("#true"),
        Formula::And(items) | Formula::Or(items) => {
            let sep = if matches!(f, Formula::And(_)) {
                " & "
            } else {
                " | "
            };
            out.push('(');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_element(out, item)?;
            }
            out.push(')');
        }
        Formula::Implies(x, y) => {
            out.push('(');
            write_element(out, x)?;
            out.push_str(" -> ");
            write_element(out, y)?;
            out.push(')');
        }
    }
    Ok(())
}

fn is_parenthesized(f: &Formula) -> bool {
    match f {
        Formula::And(items) | Formula::Or(items) => !items.is_empty(),
        Formula::Implies(_, y) => !y.is_falsum(),
        _ => false,
    }
}

fn write_statement(out: &mut String, f: &Formula) -> fmt::Result {
    let Formula::Implies(body, head) = f else {
        // A bare formula is one parenthesized element with no body.
        let text = render_formula(f);
        if is_parenthesized(f) {
            write!(out, "{text}.")?;
        } else {
            write!(out, "({text}).")?;
        }
        return Ok(());
    };
    let head_items: Vec<&Formula> = match head.as_ref() {
        Formula::Falsum => vec![],
        Formula::Or(items) if items.len() >= 2 => items.iter().collect(),
        other => vec![other],
    };
    let body_items: Vec<&Formula> = match body.as_ref() {
        Formula::And(items) if items.len() != 1 => items.iter().collect(),
        other => vec![other],
    };
    let head_text: Vec<String> = head_items.iter().map(|f| render_formula(f)).collect();
    let mut body_text: Vec<String> = body_items.iter().map(|f| render_formula(f)).collect();
    // `(φ).` would read back as a bare formula, and `.` is not a rule.
    let ambiguous = head_items.len() == 1 && is_parenthesized(head_items[0]);
    if body_text.is_empty() && (head_text.is_empty() || ambiguous) {
        body_text.push("#true".to_string());
    }
    write_clause(out, &head_text, &body_text)
}
