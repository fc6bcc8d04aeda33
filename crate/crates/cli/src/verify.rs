use std::collections::HashSet;
use std::fmt::Write as _;

use alternabase::bintegers::{delta, enumerate, gap_word, max_below, projected_gap_word};
use alternabase::sturmian::classify;
use alternabase::substitution::{fixed_point_word, perron_check, sadic_word};
use alternabase::{ParryProfile, QuadNum};
use serde::Serialize;

use crate::commands::verdict_text;
use crate::{CliError, Ctx, Format};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn first_divergence<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y).or_else(|| (a.len() != b.len()).then(|| a.len().min(b.len())))
}

fn words_agree<T: PartialEq>(name: &'static str, a: &[T], b: &[T]) -> Check {
    match first_divergence(a, b) {
        None => Check { name, passed: true, detail: format!("{} letters agree", a.len()) },
        Some(k) => Check { name, passed: false, detail: format!("first divergence at position {k}") },
    }
}

fn gap_values(prof: &ParryProfile, n: usize) -> Check {
    let entries = enumerate(prof, n + 1);
    for pair in entries.windows(2) {
        if &pair[1].value - &pair[0].value != delta(prof, pair[0].w) {
            return Check {
                name: "gaps equal the carry deltas",
                passed: false,
                detail: format!("first divergence at k = {}", pair[0].k),
            };
        }
    }
    Check { name: "gaps equal the carry deltas", passed: true, detail: format!("{n} gaps") }
}

fn gap_relation(prof: &ParryProfile) -> Check {
    let name = "shifted gaps scale by beta_0";
    let shifted = prof.shift(1);
    let beta0 = prof.base().beta(0);
    for n in 0..prof.alphabet_size() {
        let last = QuadNum::from_integer(prof.d(n as i64 + 1, n + 1) as i64);
        if beta0 * &delta(&shifted, n) != &delta(prof, n + 1) + &last {
            return Check { name, passed: false, detail: format!("first divergence at n = {n}") };
        }
    }
    Check { name, passed: true, detail: format!("n = 0..{}", prof.alphabet_size()) }
}

fn maxima_relation(prof: &ParryProfile) -> Check {
    let name = "shifted maxima scale by beta_0";
    let shifted = prof.shift(1);
    let beta0 = prof.base().beta(0);
    let top = 2 * prof.alphabet_size() + 4;
    for n in 0..top {
        let (word, m) = max_below(prof, n + 1);
        let last = QuadNum::from_integer(word.digit(0) as i64);
        if max_below(&shifted, n).1 != &(&m - &last) / beta0 {
            return Check { name, passed: false, detail: format!("first divergence at n = {n}") };
        }
    }
    Check { name, passed: true, detail: format!("n = 0..{top}") }
}

fn shift_coupling(prof: &ParryProfile, n: usize) -> Check {
    let name = "integers of the base and its shift interleave";
    let ints: Vec<QuadNum> = enumerate(prof, n).into_iter().map(|e| e.value).collect();
    let top = ints.last().cloned().unwrap_or_else(QuadNum::zero);
    let beta0 = prof.base().beta(0);
    let tilde: Vec<QuadNum> = enumerate(&prof.shift(1), n).into_iter().map(|e| beta0 * &e.value).collect();
    let set: HashSet<&QuadNum> = ints.iter().collect();
    if let Some(k) = tilde.iter().position(|y| *y <= top && !set.contains(y)) {
        return Check { name, passed: false, detail: format!("shifted integer {k} times beta_0 is missing") };
    }
    let digits: i64 = beta0.ceil().try_into().unwrap_or(i64::MAX);
    let tilde_set: HashSet<&QuadNum> = tilde.iter().collect();
    for (k, x) in ints.iter().enumerate() {
        if !(0..digits).any(|c| tilde_set.contains(&(x - &QuadNum::from_integer(c)))) {
            return Check { name, passed: false, detail: format!("integer {k} is not beta_0 x + c") };
        }
    }
    Check { name, passed: true, detail: format!("{n} integers each way") }
}

fn discreteness(prof: &ParryProfile, n: usize) -> Check {
    let name = "finitely many integers below each place value";
    let entries = enumerate(prof, n);
    let top = entries.last().map(|e| e.value.clone()).unwrap_or_else(QuadNum::zero);
    let mut k = 0;
    while prof.base().place_value(k) <= top {
        let bound = prof.base().place_value(k);
        let below = entries.iter().filter(|e| e.value < bound).count();
        let (word, _) = max_below(prof, k);
        let index = entries.iter().position(|e| e.expansion == word);
        if index.map(|i| i + 1) != Some(below) {
            return Check { name, passed: false, detail: format!("first divergence at n = {k}") };
        }
        k += 1;
    }
    Check { name, passed: true, detail: format!("place values 0..{k}") }
}

pub fn verify(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let prof = ctx.profile()?;
    let n = ctx.opts.prefix;
    let w = gap_word(&prof, n);
    let eigen = match perron_check(&prof) {
        Ok((_, d)) => Check {
            name: "gap vector is a Perron eigenvector",
            passed: true,
            detail: format!("eigenvalue {d}"),
        },
        Err(e) => Check { name: "gap vector is a Perron eigenvector", passed: false, detail: e.to_string() },
    };
    let checks = vec![
        words_agree("successor word equals S-adic word", &w, &sadic_word(&prof, n)),
        words_agree("projected word equals substitution fixed point", &projected_gap_word(&prof, n), &fixed_point_word(&prof, n)),
        gap_values(&prof, n),
        eigen,
        gap_relation(&prof),
        maxima_relation(&prof),
        shift_coupling(&prof, n),
        discreteness(&prof, n),
    ];
    let verdict = classify(&prof, n);
    match ctx.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => {
            let v = serde_json::json!({ "checks": checks, "sturmian": verdict });
            out.push_str(&serde_json::to_string_pretty(&v).expect("serializable"));
            out.push('\n');
        }
        _ => {
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag}\t{}\t{}", c.name, c.detail).unwrap();
            }
            verdict_text(&verdict, ctx.opts.decimals, out);
        }
    }
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(CliError::Verification(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}
