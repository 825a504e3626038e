//! Line-oriented MAP text format:
//!
//! ```text
//! map <name>
//! edges <E>
//! sigma <2E integers>
//! signs <E chars from + ->      (optional)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use super::{Sign, SurfaceMap};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_map(text: &str) -> Result<SurfaceMap> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut name = String::from("unnamed");
    let (mut lineno, mut line) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    // The `map` header is optional so that bare `edges 0` text parses.
    if let Some(rest) = keyword(line, "map") {
        name = rest.to_string();
        (lineno, line) = lines
            .next()
            .ok_or_else(|| err(lineno + 1, "missing `edges` line"))?;
    }
    let edges: usize = keyword(line, "edges")
        .ok_or_else(|| err(lineno, "expected `edges <E>`"))?
        .parse()
        .map_err(|_| err(lineno, "edge count is not a nonnegative integer"))?;

    let mut sigma = Vec::new();
    let mut signs = None;
    match lines.next() {
        None if edges == 0 => {}
        None => return Err(err(lineno + 1, "missing `sigma` line")),
        Some((n, l)) => {
            let rest = keyword(l, "sigma").ok_or_else(|| err(n, "expected `sigma ...`"))?;
            for tok in rest.split_whitespace() {
                sigma.push(
                    tok.parse::<usize>()
                        .map_err(|_| err(n, format!("bad dart {tok:?}")))?,
                );
            }
            if sigma.len() != 2 * edges {
                return Err(err(
                    n,
                    format!("sigma has {} entries, expected {}", sigma.len(), 2 * edges),
                ));
            }
            if let Some((n, l)) = lines.next() {
                let rest = keyword(l, "signs").ok_or_else(|| err(n, "expected `signs ...`"))?;
                let chars: String = rest.split_whitespace().collect();
                let mut out = Vec::with_capacity(chars.len());
                for c in chars.chars() {
                    out.push(match c {
                        '+' => Sign::Plus,
                        '-' => Sign::Minus,
                        _ => return Err(err(n, format!("bad sign {c:?}"))),
                    });
                }
                if out.len() != edges {
                    return Err(Error::SignCount {
                        expected: edges,
                        got: out.len(),
                    });
                }
                signs = Some(out);
                if let Some((n, _)) = lines.next() {
                    return Err(err(n, "trailing content"));
                }
            }
        }
    }
    if edges == 0 {
        return Ok(SurfaceMap::empty(name));
    }
    SurfaceMap::new(name, sigma, signs)
}

fn keyword<'a>(line: &'a str, kw: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(kw)?;
    if rest.is_empty() {
        Some(rest)
    } else if rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

pub fn serialize_map(m: &SurfaceMap) -> String {
    let mut out = String::new();
    if !m.name().is_empty() {
        out.push_str(&format!("map {}\n", m.name()));
    }
    out.push_str(&format!("edges {}\n", m.edge_count()));
    if m.edge_count() > 0 {
        let sigma: Vec<String> = m.sigma_slice().iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("sigma {}\n", sigma.join(" ")));
    }
    if let Some(signs) = m.signs() {
        let s: String = signs
            .iter()
            .map(|s| match s {
                Sign::Plus => '+',
                Sign::Minus => '-',
            })
            .collect();
        out.push_str(&format!("signs {s}\n"));
    }
    out
}
