//! The `.miv` instance format and the `ord` order-list format.
//!
//! Instance grammar (line-oriented, `#` starts a comment):
//!
//! ```text
//! miv <n> <t> <mode>          mode in {unweighted, external, internal}
//! <n rows of t tokens from {+, -, +1, -1}>
//! <external: one line of t rationals; internal: n lines of t rationals>
//! ```
//!
//! Order-list grammar:
//!
//! ```text
//! ord <t> <m>
//! <t lines of m distinct alternative indices in 0..m, best first>
//! ```

use mivote::single_crossing::OrderList;
use mivote::{
    format_rational, parse_rational, Opinion, PreferenceProfile, Rational, VotingInstance,
    WeightMode, WeightScheme,
};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Content lines with their 1-based line numbers, comments stripped.
fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                None
            } else {
                Some((i + 1, body))
            }
        })
        .collect()
}

fn parse_opinion_row(line: usize, body: &str, t: usize) -> Result<Vec<i8>, ParseError> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() != t {
        return err(line, format!("expected {t} opinions, found {}", tokens.len()));
    }
    tokens
        .iter()
        .map(|tok| match *tok {
            "+" | "+1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => err(line, format!("bad opinion token {other:?}")),
        })
        .collect()
}

fn parse_weight_row(line: usize, body: &str, t: usize) -> Result<Vec<Rational>, ParseError> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() != t {
        return err(line, format!("expected {t} weights, found {}", tokens.len()));
    }
    let row = tokens
        .iter()
        .map(|tok| parse_rational(tok).map_err(|e| ParseError { line, message: e.to_string() }))
        .collect::<Result<Vec<_>, _>>()?;
    let sum: Rational = row.iter().sum();
    if !sum.is_one() {
        return err(line, format!("weights sum {} ≠ 1", format_rational(&sum)));
    }
    Ok(row)
}

pub fn parse_instance(text: &str) -> Result<VotingInstance, ParseError> {
    let lines = significant_lines(text);
    let mut it = lines.iter();
    let &(hline, header) = it.next().ok_or(ParseError {
        line: 1,
        message: "empty input".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "miv" {
        return err(hline, "expected header `miv <n> <t> <mode>`");
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| ParseError { line: hline, message: format!("bad n {:?}", fields[1]) })?;
    let t: usize = fields[2]
        .parse()
        .map_err(|_| ParseError { line: hline, message: format!("bad t {:?}", fields[2]) })?;
    let mode = match fields[3] {
        "unweighted" => WeightMode::Unweighted,
        "external" => WeightMode::External,
        "internal" => WeightMode::Internal,
        other => return err(hline, format!("bad mode {other:?}")),
    };

    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let &(line, body) = it
            .next()
            .ok_or(ParseError { line: hline, message: format!("expected {n} opinion rows") })?;
        rows.push(parse_opinion_row(line, body, t)?);
    }
    let profile = PreferenceProfile::from_rows(&rows)
        .map_err(|e| ParseError { line: hline, message: e.to_string() })?;

    let weight_rows = match mode {
        WeightMode::Unweighted => 0,
        WeightMode::External => 1,
        WeightMode::Internal => n,
    };
    let mut weights = Vec::with_capacity(weight_rows);
    for _ in 0..weight_rows {
        let &(line, body) = it.next().ok_or(ParseError {
            line: hline,
            message: format!("expected {weight_rows} weight rows"),
        })?;
        weights.push(parse_weight_row(line, body, t)?);
    }
    if let Some(&(line, _)) = it.next() {
        return err(line, "trailing content after instance");
    }

    let scheme = match mode {
        WeightMode::Unweighted => WeightScheme::Unweighted,
        WeightMode::External => WeightScheme::External(weights.pop().unwrap()),
        WeightMode::Internal => WeightScheme::Internal(weights),
    };
    VotingInstance::new(profile, scheme)
        .map_err(|e| ParseError { line: hline, message: e.to_string() })
}

/// Serializes an instance back to `.miv`; `parse_instance` inverts this.
pub fn write_miv(instance: &VotingInstance) -> String {
    let (n, t) = (instance.n(), instance.t());
    let mut out = format!("miv {n} {t} {}\n", instance.mode());
    for row in instance.profile.rows() {
        let tokens: Vec<&str> = row
            .iter()
            .map(|&o| if o == Opinion::Plus { "+" } else { "-" })
            .collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    let mut push_weights = |w: &[Rational]| {
        let tokens: Vec<String> = w.iter().map(format_rational).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    };
    match &instance.weights {
        WeightScheme::Unweighted => {}
        WeightScheme::External(w) => push_weights(w),
        WeightScheme::Internal(rows) => rows.iter().for_each(|w| push_weights(w)),
    }
    out
}

pub fn parse_orders(text: &str) -> Result<OrderList, ParseError> {
    let lines = significant_lines(text);
    let mut it = lines.iter();
    let &(hline, header) = it.next().ok_or(ParseError {
        line: 1,
        message: "empty input".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "ord" {
        return err(hline, "expected header `ord <t> <m>`");
    }
    let t: usize = fields[1]
        .parse()
        .map_err(|_| ParseError { line: hline, message: format!("bad t {:?}", fields[1]) })?;
    let m: usize = fields[2]
        .parse()
        .map_err(|_| ParseError { line: hline, message: format!("bad m {:?}", fields[2]) })?;
    let mut rankings = Vec::with_capacity(t);
    for _ in 0..t {
        let &(line, body) = it
            .next()
            .ok_or(ParseError { line: hline, message: format!("expected {t} order rows") })?;
        let ranking = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| ParseError { line, message: format!("bad index {tok:?}") })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if ranking.len() != m {
            return err(line, format!("expected {m} indices, found {}", ranking.len()));
        }
        rankings.push(ranking);
    }
    if let Some(&(line, _)) = it.next() {
        return err(line, "trailing content after order list");
    }
    OrderList::from_rankings(m, rankings)
        .map_err(|e| ParseError { line: hline, message: e.to_string() })
}

/// Peeks at the first significant token to tell the two formats apart.
pub fn sniff_format(text: &str) -> Option<&'static str> {
    let lines = significant_lines(text);
    let (_, first) = lines.first()?;
    match first.split_whitespace().next()? {
        "miv" => Some("miv"),
        "ord" => Some("ord"),
        _ => None,
    }
}
