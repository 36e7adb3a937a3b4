//! Browser bindings for the demo page in `www/`.
//!
//! Each operation has a plain Rust form returning `Result<String, String>`
//! and a `wasm_bindgen` wrapper that turns the error into a JS exception.

use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use onetwo::classify::{canonical, gauge_orbit, signature, triviality, within_tolerance};
use onetwo::factor::brute_force_sat;
use onetwo::gadgets::{
    binary_distinct, binary_threshold, nae_clause, negate_literal, range_t, sat_clause,
    truth_table_of, two_false, Dictionary,
};
use onetwo::satfront::{decode, encode, parse_dimacs, stats};
use onetwo::solver::solve_one_in_two;
use onetwo::{build_factor_graph, ClauseKind, GadgetMatrix, TruthTable};

/// Largest arity the page extracts tables for.
const MAX_DEMO_ARITY: usize = 8;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn build_gadget(family: &str, k: usize, a: u64, b: u64) -> Result<GadgetMatrix, String> {
    let (a_us, b_us) = (a as usize, b as usize);
    match family {
        "sat" => sat_clause(k),
        "nae" => nae_clause(k),
        "two-false" => two_false(k, a_us),
        "range" => range_t(k, a_us, b_us),
        "threshold" => binary_threshold(k, a),
        "distinct" => {
            if !k.is_multiple_of(2) {
                return Err("distinct needs an even number of literals".into());
            }
            binary_distinct(k / 2)
        }
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(err)
}

/// Matrix, ones count and truth table of a gadget family member, with the
/// literals in `negate` (bit `i` for literal `i + 1`) negated.
pub fn gadget_report(
    family: &str,
    k: usize,
    a: u64,
    b: u64,
    negate: u32,
) -> Result<String, String> {
    if !(1..=MAX_DEMO_ARITY).contains(&k) {
        return Err(format!("k must be in 1..={MAX_DEMO_ARITY}"));
    }
    let mut g = build_gadget(family, k, a, b)?;
    for p in 1..=k {
        if negate >> (p - 1) & 1 == 1 {
            g = negate_literal(&g, p).map_err(err)?;
        }
    }
    let t = truth_table_of(&g).map_err(err)?;
    let mut out = format!("{}x{} matrix, {} ones\n\n{g}\n", 2 * k, 2 * k, g.ones());
    let _ = writeln!(out, "|T| = {} of {}", t.len(), t.size());
    if let Some(n) = t.index_u64() {
        let _ = writeln!(out, "n(T) = {n}");
    }
    out.push('\n');
    out.push_str(&t.to_string());
    Ok(out)
}

/// Class, signature, triviality and dictionary entry of table `n(T)`.
pub fn classify_report(k: usize, table: u64) -> Result<String, String> {
    if !(1..=4).contains(&k) {
        return Err("the classifier page supports k in 1..=4".into());
    }
    let t = TruthTable::from_index_u64(k, table).map_err(err)?;
    let canon = canonical(&t).map_err(err)?;
    let orbit = gauge_orbit(&t).map_err(err)?.len();
    let sig = signature(&t).map_err(err)?;
    let mut out = format!(
        "|T| = {}\ncanonical n(T) = {}\norbit size = {orbit}\nsignature = {sig}\n",
        t.len(),
        canon.index()
    );
    match triviality(&t) {
        Some(r) => {
            let _ = writeln!(out, "trivial: {r}");
        }
        None => out.push_str("not trivial\n"),
    }
    if k == 4 {
        let dict = Dictionary::builtin();
        match dict.lookup(&t) {
            Some(e) => {
                let agrees = within_tolerance(&sig, &e.signature);
                let _ = writeln!(
                    out,
                    "dictionary entry {} ({} ones), printed signature {}{}",
                    e.table_index,
                    e.ones,
                    e.signature,
                    if agrees { "" } else { " (differs)" }
                );
                if let Ok(Some(m)) = dict.realize(&t) {
                    let _ = write!(out, "\nrealizing matrix:\n{m}");
                }
            }
            None => out.push_str("no dictionary entry\n"),
        }
    }
    out.push_str("\nsatisfying assignments:\n");
    out.push_str(&t.to_string());
    Ok(out)
}

/// Encodes a DIMACS formula, solves the instance and decodes the answer.
pub fn encode_report(dimacs: &str, nae: bool) -> Result<String, String> {
    let cnf = parse_dimacs(dimacs).map_err(err)?;
    let kind = if nae {
        ClauseKind::Nae
    } else {
        ClauseKind::Sat
    };
    let fg = build_factor_graph(&cnf)
        .and_then(|fg| fg.with_kind(kind))
        .map_err(err)?;
    let (inst, map) = encode(&fg).map_err(err)?;
    let s = stats(&inst, &fg).map_err(err)?;
    let mut out = format!(
        "{} edges, {} clauses\ndimension {} ({} blocks), {} entries (predicted {})\n",
        s.edges,
        s.clauses,
        s.dimension,
        inst.blocks(),
        s.nnz,
        s.predicted_nnz
    );
    let solved = solve_one_in_two(&inst).map_err(err)?;
    match solved.solution() {
        Some(sol) => {
            let a = decode(sol, &map).map_err(err)?;
            let lits: Vec<String> = a
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    if v {
                        format!("{}", i + 1)
                    } else {
                        format!("-{}", i + 1)
                    }
                })
                .collect();
            let _ = writeln!(out, "matching found: {}", lits.join(" "));
            let _ = writeln!(
                out,
                "assignment satisfies the formula: {}",
                fg.is_satisfied_by(&a)
            );
        }
        None => out.push_str("no matching: the formula is unsatisfiable\n"),
    }
    if fg.num_vars() <= 20 {
        let oracle = brute_force_sat(&fg).map_err(err)?.is_some();
        let _ = writeln!(
            out,
            "exhaustive search agrees: {}",
            oracle == solved.is_sat()
        );
    }
    if inst.dimension() <= 48 {
        let _ = write!(out, "\ninstance:\n{inst}");
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn gadget(family: &str, k: usize, a: u32, b: u32, negate: u32) -> Result<String, JsValue> {
    gadget_report(family, k, a.into(), b.into(), negate).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(k: usize, table: u32) -> Result<String, JsValue> {
    classify_report(k, table.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn encode_cnf(dimacs: &str, nae: bool) -> Result<String, JsValue> {
    encode_report(dimacs, nae).map_err(|e| JsValue::from_str(&e))
}
