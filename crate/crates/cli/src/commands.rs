use std::fmt::Write as _;

use alternabase::bintegers::{deltas, distance_classes, gap_word, projected_gap_word, BIntegers};
use alternabase::sturmian::{classify, format_factorization};
use alternabase::substitution::{composed_phi, fixed_point_word, format_poly, format_word, perron_check, phi};
use alternabase::{CountMatrix, DigitWord, ParryAutomaton, QuadNum, SturmianVerdict};
use serde_json::{json, Value};

use crate::{domain, CliError, Ctx, Format, MatrixKind};

fn emit_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("serializable"));
    out.push('\n');
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Digits run together when every digit is below ten, comma separated otherwise.
pub fn word_text(w: &DigitWord) -> String {
    if w.is_integer() && w.int_part().iter().all(|&d| d < 10) {
        w.compact_int()
    } else {
        w.to_string()
    }
}

fn exact_and_decimal(x: &QuadNum, decimals: usize) -> Value {
    json!({ "exact": to_json(x), "text": x.to_string(), "decimal": x.to_decimal_truncated(decimals) })
}

pub fn expand(ctx: &Ctx, value: &str, digits: usize, out: &mut String) -> Result<(), CliError> {
    let x: QuadNum = value.parse().map_err(domain)?;
    let e = ctx.base.greedy_expand(&x, digits).map_err(domain)?;
    match ctx.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => emit_json(
            out,
            &json!({
                "value": exact_and_decimal(&x, ctx.opts.decimals),
                "expansion": e.word.to_string(),
                "truncated": e.truncated,
            }),
        ),
        _ => {
            let tail = if e.truncated { " ..." } else { "" };
            writeln!(out, "{}{tail}", e.word).unwrap();
        }
    }
    Ok(())
}

pub fn qg(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let w = ctx.base.quasi_greedy_one(ctx.opts.budget).map_err(domain)?;
    match ctx.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => emit_json(
            out,
            &json!({
                "shift": ctx.opts.shift,
                "expansion": w.to_string(),
                "prefix": w.prefix(),
                "period": w.period(),
            }),
        ),
        _ => writeln!(out, "{w}").unwrap(),
    }
    Ok(())
}

pub fn parry(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let prof = ctx.profile()?;
    let p = prof.period();
    let ds = deltas(&prof);
    let classes = distance_classes(&prof);
    let dec = ctx.opts.decimals;
    match ctx.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => emit_json(
            out,
            &json!({
                "betas": to_json(&ctx.base.written()),
                "period": p,
                "ell": prof.ell(),
                "m": prof.m(),
                "alphabet_size": prof.alphabet_size(),
                "product": exact_and_decimal(&ctx.base.product(), dec),
                "quasi_greedy": (0..p as i64).map(|i| prof.quasi_greedy(i).to_string()).collect::<Vec<_>>(),
                "deltas": ds.iter().map(|d| exact_and_decimal(d, dec)).collect::<Vec<_>>(),
                "classes": classes,
            }),
        ),
        _ => {
            let betas: Vec<String> = ctx.base.written().iter().map(|b| b.to_string()).collect();
            writeln!(out, "base\t({})", betas.join(", ")).unwrap();
            writeln!(out, "period\t{p}").unwrap();
            writeln!(out, "ell\t{}", prof.ell()).unwrap();
            writeln!(out, "m\t{}", prof.m()).unwrap();
            writeln!(out, "alphabet\t{}", prof.alphabet_size()).unwrap();
            writeln!(out, "product\t{}\t{}", ctx.base.product(), ctx.base.product().to_decimal_truncated(dec))
                .unwrap();
            for i in 0..p as i64 {
                writeln!(out, "qg[{i}]\t{}", prof.quasi_greedy(i)).unwrap();
            }
            for (n, d) in ds.iter().enumerate() {
                writeln!(out, "delta[{n}]\t{d}\t{}\tclass {}", d.to_decimal_truncated(dec), classes[n]).unwrap();
            }
        }
    }
    Ok(())
}

pub fn integers(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let prof = ctx.profile()?;
    let dec = ctx.opts.decimals;
    let entries: Vec<_> = BIntegers::new(&prof).take(ctx.opts.count).collect();
    match ctx.format(Format::Tsv, &[Format::Tsv, Format::Text, Format::Json])? {
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "k": e.k,
                        "value": exact_and_decimal(&e.value, dec),
                        "expansion": e.expansion.to_string(),
                        "w": e.w,
                        "v": e.v,
                    })
                })
                .collect();
            emit_json(out, &Value::Array(rows));
        }
        _ => {
            out.push_str("k\tvalue\tdecimal\texpansion\tw\tv\n");
            for e in &entries {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    e.k,
                    e.value,
                    e.value.to_decimal_truncated(dec),
                    word_text(&e.expansion),
                    e.w,
                    e.v
                )
                .unwrap();
            }
        }
    }
    Ok(())
}

pub fn gaps(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let prof = ctx.profile()?;
    let n = ctx.opts.count;
    let w = gap_word(&prof, n);
    let v = projected_gap_word(&prof, n);
    let classes = distance_classes(&prof);
    let pi: Vec<usize> = v.iter().map(|&a| classes[a]).collect();
    match ctx.format(Format::Text, &[Format::Text, Format::Json, Format::Tsv])? {
        Format::Json => emit_json(out, &json!({ "w": w, "v": v, "classes": pi })),
        Format::Tsv => {
            // number-line coordinates x_k with their letters
            out.push_str("k\tx\tw\tv\tclass\n");
            for e in BIntegers::new(&prof).take(n) {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    e.k,
                    e.value.to_decimal_truncated(ctx.opts.decimals),
                    e.w,
                    e.v,
                    classes[e.v]
                )
                .unwrap();
            }
        }
        _ => {
            writeln!(out, "w\t{}", format_word(&w)).unwrap();
            writeln!(out, "v\t{}", format_word(&v)).unwrap();
            writeln!(out, "classes\t{}", format_word(&pi)).unwrap();
        }
    }
    Ok(())
}

pub fn subst(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let prof = ctx.profile()?;
    let phis: Vec<_> = (0..prof.period()).map(|i| phi(&prof, i)).collect();
    let composed = composed_phi(&prof);
    let fixed = fixed_point_word(&prof, ctx.opts.count);
    match ctx.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => emit_json(
            out,
            &json!({
                "phi": phis.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "composed": composed.to_string(),
                "composed_images": to_json(&composed),
                "fixed_point": fixed,
            }),
        ),
        _ => {
            for (i, s) in phis.iter().enumerate() {
                writeln!(out, "phi[{i}]\t{s}").unwrap();
            }
            writeln!(out, "composed\t{composed}").unwrap();
            writeln!(out, "fixed point\t{}", format_word(&fixed)).unwrap();
        }
    }
    Ok(())
}

pub fn matrix(ctx: &Ctx, which: MatrixKind, out: &mut String) -> Result<(), CliError> {
    let prof = ctx.profile()?;
    let aut = ParryAutomaton::build(&prof);
    let m: CountMatrix = match which {
        MatrixKind::Incidence => composed_phi(&prof).incidence(),
        MatrixKind::Cycle => aut.cycle_product(),
        MatrixKind::Adjacency => aut.adjacency(),
    };
    let poly = m.char_poly();
    let (_, delta) = perron_check(&prof).map_err(|e| CliError::Verification(e.to_string()))?;
    match ctx.format(Format::Tsv, &[Format::Tsv, Format::Json, Format::Text])? {
        Format::Json => emit_json(
            out,
            &json!({
                "matrix": to_json(&m),
                "char_poly": poly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "primitivity_exponent": m.primitivity_exponent(),
                "perron_value": exact_and_decimal(&delta, ctx.opts.decimals),
            }),
        ),
        Format::Text => {
            writeln!(out, "{m}").unwrap();
            writeln!(out, "char poly\t{}", format_poly(&poly)).unwrap();
            match m.primitivity_exponent() {
                Some(e) => writeln!(out, "primitive\texponent {e}").unwrap(),
                None => writeln!(out, "primitive\tno").unwrap(),
            }
            writeln!(out, "perron value\t{delta}\t{}", delta.to_decimal_truncated(ctx.opts.decimals)).unwrap();
        }
        _ => out.push_str(&m.to_tsv()),
    }
    Ok(())
}

pub fn automaton(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let aut = ParryAutomaton::build(&ctx.profile()?);
    match ctx.format(Format::Dot, &[Format::Dot, Format::Json, Format::Text, Format::Tsv])? {
        Format::Json => emit_json(out, &to_json(&aut)),
        Format::Text => {
            for e in aut.edges() {
                writeln!(out, "{},{} -> {},{}\t{}", e.from.0, e.from.1, e.to.0, e.to.1, e.label).unwrap();
            }
        }
        Format::Tsv => out.push_str(&aut.adjacency().to_tsv()),
        Format::Dot => out.push_str(&aut.to_dot()),
    }
    Ok(())
}

/// Human-readable lines for a sturmian verdict.
pub fn verdict_text(v: &SturmianVerdict, decimals: usize, out: &mut String) {
    let params: Vec<String> = v.params.iter().map(|p| p.to_string()).collect();
    writeln!(out, "case\t{:?}\t({})", v.case_tag, params.join(", ")).unwrap();
    writeln!(out, "alphabet\t{}", v.alphabet_size).unwrap();
    writeln!(out, "classes\t{}", format_word(&v.classes)).unwrap();
    match &v.substitution {
        Some(s) => writeln!(out, "quotient\t{s}").unwrap(),
        None => writeln!(out, "quotient\tnone").unwrap(),
    }
    match &v.factorization {
        Some(f) => writeln!(out, "factorization\t{}", format_factorization(f)).unwrap(),
        None => writeln!(out, "factorization\tnone").unwrap(),
    }
    if let Some((r0, r1)) = &v.frequency {
        writeln!(out, "frequency\t{r0}\t{r1}\t{}\t{}", r0.to_decimal_truncated(decimals), r1.to_decimal_truncated(decimals))
            .unwrap();
    }
    if let Some(cf) = &v.cf {
        writeln!(out, "continued fraction\t{cf}").unwrap();
    }
    match &v.balance {
        Some(b) => match &b.violation {
            None => writeln!(out, "balance\tbalanced up to {}", b.checked).unwrap(),
            Some(x) => writeln!(
                out,
                "balance\tnot balanced: length {} windows {} at {} and {} at {}",
                x.len, x.light_window, x.light, x.heavy_window, x.heavy
            )
            .unwrap(),
        },
        None => writeln!(out, "balance\tnot a binary class word").unwrap(),
    }
    writeln!(out, "sturmian\t{}", if v.is_sturmian() { "yes" } else { "no" }).unwrap();
}

pub fn sturmian(ctx: &Ctx, out: &mut String) -> Result<(), CliError> {
    let v = classify(&ctx.profile()?, ctx.opts.prefix);
    match ctx.format(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => emit_json(out, &to_json(&v)),
        _ => verdict_text(&v, ctx.opts.decimals, out),
    }
    Ok(())
}
