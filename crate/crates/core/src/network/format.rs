//! Line-oriented network files.
//!
//! ```text
//! semantics: neighbour | partition
//! length: <m>
//! vars: x y z ...
//! x y : <rel> <rel> ... <rel>      # exactly m relation tokens
//! ```
//!
//! `semantics` defaults to `neighbour` and `length` to 1, so a classical
//! RCC8 network only needs `vars` and its pair lines.

use std::fmt::Write;

use super::Network;
use crate::error::ParseError;
use crate::projection::{Semantics, SemanticsKind};
use crate::sequence::parse_relation_list;

pub(super) fn parse_network(text: &str) -> Result<Network, ParseError> {
    let mut kind = None;
    let mut len = None;
    let mut net: Option<Network> = None;
    let mut seen = std::collections::HashSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| ParseError::at(lineno, "expected `key: value` or `x y : relations`"))?;
        let head = head.trim();
        let rest = rest.trim();
        match head {
            "semantics" | "length" | "vars" if net.is_some() => {
                return Err(ParseError::at(lineno, format!("`{head}` after `vars`")));
            }
            "semantics" => {
                if kind.is_some() {
                    return Err(ParseError::at(lineno, "duplicate `semantics`"));
                }
                kind = Some(match rest.to_ascii_lowercase().as_str() {
                    "neighbour" | "neighbor" => SemanticsKind::NeighbourInstants,
                    "partition" => SemanticsKind::TimePartition,
                    other => {
                        return Err(ParseError::at(
                            lineno,
                            format!("unknown semantics `{other}`"),
                        ))
                    }
                });
            }
            "length" => {
                if len.is_some() {
                    return Err(ParseError::at(lineno, "duplicate `length`"));
                }
                len = Some(
                    rest.parse::<usize>()
                        .map_err(|_| ParseError::at(lineno, format!("bad length `{rest}`")))?,
                );
            }
            "vars" => {
                let sem = Semantics::new(
                    kind.unwrap_or(SemanticsKind::NeighbourInstants),
                    len.unwrap_or(1),
                )
                .map_err(|e| ParseError::at(lineno, e.to_string()))?;
                let vars: Vec<&str> = rest.split_whitespace().collect();
                net = Some(
                    Network::new(vars, sem).map_err(|e| ParseError::at(lineno, e.to_string()))?,
                );
            }
            pair => {
                let net = net
                    .as_mut()
                    .ok_or_else(|| ParseError::at(lineno, "pair line before `vars`"))?;
                let names: Vec<&str> = pair.split_whitespace().collect();
                let [x, y] = names[..] else {
                    return Err(ParseError::at(
                        lineno,
                        format!("expected two variables, found `{pair}`"),
                    ));
                };
                let xi = net
                    .var_index(x)
                    .map_err(|e| ParseError::at(lineno, e.to_string()))?;
                let yi = net
                    .var_index(y)
                    .map_err(|e| ParseError::at(lineno, e.to_string()))?;
                if xi == yi {
                    return Err(ParseError::at(lineno, format!("`{x}` related to itself")));
                }
                if !seen.insert((xi.min(yi), xi.max(yi))) {
                    return Err(ParseError::at(lineno, format!("duplicate pair `{x} {y}`")));
                }
                let rels =
                    parse_relation_list(rest).map_err(|e| ParseError::at(lineno, e.to_string()))?;
                if rels.len() != net.len() {
                    return Err(ParseError::at(
                        lineno,
                        format!("expected {} relations, found {}", net.len(), rels.len()),
                    ));
                }
                net.write(xi, yi, &rels);
            }
        }
    }
    net.ok_or(ParseError::MissingHeader("vars"))
}

/// Pairs are written once each, ordered by variable name; every pair is
/// listed, universal ones included.
pub(super) fn write_network(net: &Network) -> String {
    let mut out = String::new();
    let sem = net.semantics();
    let kind = match sem.kind() {
        SemanticsKind::NeighbourInstants => "neighbour",
        SemanticsKind::TimePartition => "partition",
    };
    let _ = writeln!(out, "semantics: {kind}");
    let _ = writeln!(out, "length: {}", sem.len());
    let _ = writeln!(out, "vars: {}", net.vars().join(" "));
    let mut order: Vec<usize> = (0..net.var_count()).collect();
    order.sort_by(|&a, &b| net.vars()[a].cmp(&net.vars()[b]));
    for (i, &x) in order.iter().enumerate() {
        for &y in &order[i + 1..] {
            let _ = write!(out, "{} {} :", net.vars()[x], net.vars()[y]);
            for r in net.relation(x, y) {
                let _ = write!(out, " {r}");
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rcc8::Rcc8Relation;

    const SAMPLE: &str = "\
# two regions
semantics: partition
length: 4
vars: x y
x y : {TPP,NTPP} {po, eq} {EC,DC} {DC}   # trailing comment
";

    #[test]
    fn parses_sample() {
        let net = parse_network(SAMPLE).unwrap();
        assert_eq!(net.semantics().kind(), SemanticsKind::TimePartition);
        assert_eq!(net.vars(), ["x", "y"]);
        assert_eq!(net.relation(0, 1)[1], Rcc8Relation::PO | Rcc8Relation::EQ);
        assert_eq!(
            net.relation(1, 0)[0],
            Rcc8Relation::TPPI | Rcc8Relation::NTPPI
        );
    }

    #[test]
    fn output_reparses_to_same_network() {
        let net = parse_network(SAMPLE).unwrap();
        let text = write_network(&net);
        assert_eq!(parse_network(&text).unwrap(), net);
        assert!(text.contains("x y : {TPP,NTPP} {PO,EQ} {DC,EC} {DC}"));
    }

    #[test]
    fn pairs_sorted_by_name() {
        let net = parse_network("vars: b a c\nc b : {DC}\n").unwrap();
        let text = write_network(&net);
        let lines: Vec<&str> = text.lines().skip(3).collect();
        assert_eq!(lines, ["a b : *", "a c : *", "b c : {DC}"]);
    }

    #[test]
    fn rejections() {
        let cases = [
            ("semantics: partition\nlength: 3\nvars: x y\n", "even"),
            ("vars: x y\nx y : {DC}\ny x : {EC}\n", "duplicate pair"),
            ("vars: x y\nx z : {DC}\n", "unknown variable"),
            ("length: 2\nvars: x y\nx y : {DC}\n", "expected 2 relations"),
            ("vars: x y\nx x : {DC}\n", "itself"),
            ("x y : {DC}\n", "before `vars`"),
            ("semantics: weird\nvars: x\n", "unknown semantics"),
            ("vars: x y\nx y : {DC,XX}\n", "unknown basic relation"),
            ("vars: x x\n", "duplicate variable"),
            ("vars: x y\nlength: 2\n", "after `vars`"),
        ];
        for (text, needle) in cases {
            let err = parse_network(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
        assert_eq!(
            parse_network("# nothing\n"),
            Err(ParseError::MissingHeader("vars"))
        );
    }
}
