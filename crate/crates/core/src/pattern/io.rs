use std::collections::HashMap;
use std::fmt::Write;

use super::{Multiset, Pattern};
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| {
                parse_err(
                    line,
                    format!("expected a nonnegative integer, found `{tok}`"),
                )
            })
        })
        .collect()
}

/// Parse the plain-text pattern format: a header line `r m`, then one edge
/// per line as `r` nondecreasing indices in `[1, m]`. `#` starts a comment;
/// blank lines are ignored. Line numbers in errors are 1-based.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut first_seen: HashMap<Multiset, usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let nums = parse_ints(line, content)?;
        let Some((r, m)) = header else {
            if nums.len() != 2 {
                return Err(parse_err(line, "header must be `r m`"));
            }
            let (r, m) = (nums[0] as usize, nums[1] as usize);
            if r < 2 {
                return Err(parse_err(
                    line,
                    format!("uniformity must be at least 2, got {r}"),
                ));
            }
            if m < 1 {
                return Err(parse_err(line, "part count must be at least 1"));
            }
            header = Some((r, m));
            continue;
        };
        if nums.len() != r {
            return Err(parse_err(
                line,
                format!("edge has {} entries, expected {r}", nums.len()),
            ));
        }
        if let Some(&bad) = nums.iter().find(|&&i| i < 1 || i as usize > m) {
            return Err(parse_err(line, format!("index {bad} outside [1, {m}]")));
        }
        if nums.windows(2).any(|w| w[0] > w[1]) {
            return Err(parse_err(line, "edge entries must be nondecreasing"));
        }
        let edge = Multiset::new(nums.iter().map(|&i| i as u32).collect());
        if let Some(prev) = first_seen.insert(edge.clone(), line) {
            return Err(parse_err(
                line,
                format!("duplicate edge {edge} (first on line {prev})"),
            ));
        }
        edges.push(edge);
    }

    let (r, m) = header.ok_or_else(|| parse_err(0, "missing `r m` header"))?;
    Pattern::new(r, m, edges)
}

/// Canonical text form: header then edges in lexicographic order.
pub fn serialize_pattern(p: &Pattern) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", p.r(), p.m()).unwrap();
    for e in p.edges() {
        let line: Vec<String> = e.elements().iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::build_pk;

    #[test]
    fn parses_p1() {
        let p = parse_pattern("3 3\n1 2 3\n1 3 3\n2 3 3\n").unwrap();
        assert_eq!(p, build_pk(1).unwrap());
        assert_eq!(serialize_pattern(&p), "3 3\n1 2 3\n1 3 3\n2 3 3\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# P_1\n\n3 3   # header\n2 3 3\n\n1 2 3 # the transversal\n1 3 3\n";
        assert_eq!(parse_pattern(text).unwrap(), build_pk(1).unwrap());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_pattern("3 2\n1 2 4\n"),
            Err(Error::Parse {
                line: 2,
                message: "index 4 outside [1, 2]".into()
            })
        );
        assert!(matches!(
            parse_pattern("3 3\n1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_pattern("3 3\n1 x 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_pattern("3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_pattern("3 3\n3 2 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_pattern("3 3\n1 2 3\n\n1 2 3\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_pattern("# nothing\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn header_only_is_an_empty_pattern() {
        let p = parse_pattern("3 2\n").unwrap();
        assert_eq!(p.edge_count(), 0);
        assert_eq!(serialize_pattern(&p), "3 2\n");
    }
}
