//! The flat polytope/cone text format, its JSON twin and the equation line format.
//!
//! A block is a header line `d n TAG` followed by `n` rows of `d` rationals (`p/q` or bare
//! integers). `TAG` is `M` or `N` for polytopes and `C` for cones, optionally followed by the
//! cone's lattice (`C N`). Blank lines and text after `#` are ignored.

use serde::{Deserialize, Serialize};
use toric_mirror::arith::{format_rational, format_zvector, to_rational, QVector, Rational};
use toric_mirror::cones::PolyhedralCone;
use toric_mirror::toric::{LaurentSystem, TermEncoding};
use toric_mirror::{Error, Lattice, RationalPolytope, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Polytope(Lattice),
    Cone(Lattice),
}

/// One header-plus-rows block as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Line number of the header, starting at 1.
    pub line: usize,
    pub rank: usize,
    pub tag: Tag,
    pub rows: Vec<QVector>,
}

/// A parsed polytope together with the input rows that were not vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPolytope {
    pub polytope: RationalPolytope,
    pub dropped: Vec<QVector>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_rational(token: &str, line: usize) -> Result<Rational> {
    token
        .parse::<Rational>()
        .map_err(|e| parse_error(line, format!("malformed rational {token:?}: {e}")))
}

fn parse_lattice(token: &str, line: usize) -> Result<Lattice> {
    match token {
        "M" => Ok(Lattice::M),
        "N" => Ok(Lattice::N),
        other => Err(parse_error(line, format!("unknown lattice {other:?}"))),
    }
}

fn parse_count(token: &str, what: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, format!("malformed {what} {token:?}")))
}

fn parse_header(tokens: &[&str], line: usize) -> Result<(usize, usize, Tag)> {
    if !(3..=4).contains(&tokens.len()) {
        return Err(parse_error(line, "header must be `d n TAG`"));
    }
    let rank = parse_count(tokens[0], "rank", line)?;
    let count = parse_count(tokens[1], "row count", line)?;
    if rank == 0 {
        return Err(parse_error(line, "rank must be positive"));
    }
    if count == 0 {
        return Err(parse_error(line, "row count must be positive"));
    }
    let tag = match (tokens[2], tokens.get(3)) {
        ("C", None) => Tag::Cone(Lattice::M),
        ("C", Some(l)) => Tag::Cone(parse_lattice(l, line)?),
        (l, None) => Tag::Polytope(parse_lattice(l, line)?),
        (_, Some(_)) => return Err(parse_error(line, "only cone headers take a lattice")),
    };
    Ok((rank, count, tag))
}

/// Splits a text file into blocks.
pub fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut blocks = Vec::new();
    while let Some((line, header)) = lines.next() {
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let (rank, count, tag) = parse_header(&tokens, line)?;
        let mut rows = Vec::with_capacity(count);
        for k in 0..count {
            let (row_line, row) = lines
                .next()
                .ok_or_else(|| parse_error(line, format!("expected {count} rows, found {k}")))?;
            let tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() != rank {
                return Err(parse_error(
                    row_line,
                    format!("expected {rank} entries, found {}", tokens.len()),
                ));
            }
            rows.push(
                tokens
                    .iter()
                    .map(|t| parse_rational(t, row_line))
                    .collect::<Result<QVector>>()?,
            );
        }
        blocks.push(Block {
            line,
            rank,
            tag,
            rows,
        });
    }
    if blocks.is_empty() {
        return Err(parse_error(1, "no block found"));
    }
    Ok(blocks)
}

fn block_to_polytope(block: &Block) -> Result<ParsedPolytope> {
    let Tag::Polytope(lattice) = block.tag else {
        return Err(parse_error(
            block.line,
            "expected a polytope block, found a cone",
        ));
    };
    let polytope = RationalPolytope::convex_hull(&block.rows, block.rank, lattice)
        .map_err(|e| parse_error(block.line, e.to_string()))?;
    let mut dropped: Vec<QVector> = block
        .rows
        .iter()
        .filter(|r| !polytope.vertices().contains(r))
        .cloned()
        .collect();
    dropped.sort();
    dropped.dedup();
    Ok(ParsedPolytope { polytope, dropped })
}

fn block_to_cone(block: &Block) -> Result<PolyhedralCone> {
    let Tag::Cone(lattice) = block.tag else {
        return Err(parse_error(block.line, "expected a cone block (tag C)"));
    };
    PolyhedralCone::from_generators(&block.rows, block.rank, lattice)
        .map_err(|e| parse_error(block.line, e.to_string()))
}

fn single<T>(mut items: Vec<T>) -> Result<T> {
    if items.len() != 1 {
        return Err(parse_error(
            1,
            format!("expected one block, found {}", items.len()),
        ));
    }
    Ok(items.remove(0))
}

/// Reads flat text or its JSON twin, whichever the text is.
pub fn read_blocks(text: &str) -> Result<Vec<Block>> {
    if text.trim_start().starts_with(['{', '[']) {
        parse_json(text)
    } else {
        parse_blocks(text)
    }
}

/// Exactly one polytope; redundant rows are dropped and reported.
pub fn parse_polytope(text: &str) -> Result<ParsedPolytope> {
    single(parse_polytopes(text)?)
}

pub fn parse_polytopes(text: &str) -> Result<Vec<ParsedPolytope>> {
    read_blocks(text)?.iter().map(block_to_polytope).collect()
}

pub fn parse_cone(text: &str) -> Result<PolyhedralCone> {
    single(
        read_blocks(text)?
            .iter()
            .map(block_to_cone)
            .collect::<Result<Vec<_>>>()?,
    )
}

fn format_row(row: &[Rational]) -> String {
    row.iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(" ")
}

/// The canonical text form: vertices in lexicographic order.
pub fn print_polytope(p: &RationalPolytope) -> String {
    let mut out = format!("{} {} {}\n", p.rank(), p.vertices().len(), p.lattice());
    for v in p.vertices() {
        out.push_str(&format_row(v));
        out.push('\n');
    }
    out
}

pub fn print_polytopes(ps: &[RationalPolytope]) -> String {
    ps.iter().map(print_polytope).collect::<Vec<_>>().join("\n")
}

pub fn print_cone(c: &PolyhedralCone) -> String {
    let mut out = format!("{} {} C", c.rank(), c.generators().len());
    if c.lattice() == Lattice::N {
        out.push_str(" N");
    }
    out.push('\n');
    for g in c.generators() {
        out.push_str(&format_row(&to_rational(g)));
        out.push('\n');
    }
    out
}

/// The JSON twin of a block: the same header fields and the rows as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub rank: usize,
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    pub rows: Vec<Vec<String>>,
}

impl BlockRecord {
    pub fn of_polytope(p: &RationalPolytope) -> Self {
        Self {
            rank: p.rank(),
            tag: p.lattice().to_string(),
            lattice: None,
            rows: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn of_cone(c: &PolyhedralCone) -> Self {
        Self {
            rank: c.rank(),
            tag: "C".into(),
            lattice: (c.lattice() == Lattice::N).then(|| "N".into()),
            rows: c
                .generators()
                .iter()
                .map(|g| g.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

fn parse_json(text: &str) -> Result<Vec<Block>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    let records: Vec<BlockRecord> = match value {
        serde_json::Value::Array(_) => serde_json::from_value(value),
        _ => serde_json::from_value(value).map(|r| vec![r]),
    }
    .map_err(|e| parse_error(1, e.to_string()))?;
    if records.is_empty() {
        return Err(parse_error(1, "no block found"));
    }
    records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let line = i + 1;
            let mut header = vec![r.rank.to_string(), r.rows.len().to_string(), r.tag.clone()];
            header.extend(r.lattice.clone());
            let tokens: Vec<&str> = header.iter().map(String::as_str).collect();
            let (rank, _, tag) = parse_header(&tokens, line)?;
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    if row.len() != rank {
                        return Err(parse_error(
                            line,
                            format!("expected {rank} entries, found {}", row.len()),
                        ));
                    }
                    row.iter().map(|t| parse_rational(t, line)).collect()
                })
                .collect::<Result<Vec<QVector>>>()?;
            Ok(Block {
                line,
                rank,
                tag,
                rows,
            })
        })
        .collect()
}

fn join_z(v: &[toric_mirror::arith::Integer]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One line per term: `i ; m ; e` with an optional `; coefficient`, then the symbolic form as
/// comments.
pub fn print_equations(sys: &LaurentSystem) -> String {
    let encoding = match sys.encoding {
        TermEncoding::Cox => "cox",
        TermEncoding::Semigroup => "semigroup",
    };
    let mut out = format!(
        "# equations {} terms {} encoding {encoding}\n",
        sys.equations.len(),
        sys.term_count()
    );
    if !sys.variables.is_empty() {
        let vars: Vec<String> = sys
            .variables
            .iter()
            .enumerate()
            .map(|(k, v)| format!("x_{k}={}", format_zvector(v)))
            .collect();
        out.push_str(&format!("# variables {}\n", vars.join(" ")));
    }
    for t in sys.terms() {
        out.push_str(&format!(
            "{} ; {} ; {}",
            t.equation,
            join_z(&t.point),
            join_z(&t.exponents)
        ));
        if let Some(c) = &t.coefficient {
            out.push_str(&format!(" ; {}", format_rational(c)));
        }
        out.push('\n');
    }
    for line in sys.pretty().lines() {
        out.push_str(&format!("# {line}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_mirror::arith::{frac, qvec};

    #[test]
    fn parses_the_square() {
        let p = parse_polytope("2 4 M\n1 1\n1 -1\n-1 1\n-1 -1").unwrap();
        assert_eq!(p.polytope.vertices().len(), 4);
        assert!(p.dropped.is_empty());
    }

    #[test]
    fn redundant_rows_are_reported() {
        let p = parse_polytope("2 4 M\n3/2 0\n0 3/2\n-3/2 -3/2\n0 0").unwrap();
        assert_eq!(p.polytope.vertices().len(), 3);
        assert_eq!(p.dropped, vec![qvec(&[0, 0])]);
        assert!(p
            .polytope
            .vertices()
            .contains(&vec![frac(3, 2), frac(0, 1)]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("2 2 M\n1 1\n1 x/2", 3),
            ("2 2 M\n1 1\n1", 3),
            ("2 0 M", 1),
            ("\n\n2 3 M\n1 0\n0 1", 3),
            ("2 1 Q\n1 1", 1),
            ("2 1 M\n1 1/0", 2),
        ];
        for (text, line) in cases {
            match parse_polytope(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let text = "2 3 N\n-1 -1\n-1 2\n2 -1\n";
        let p = parse_polytope(text).unwrap().polytope;
        assert_eq!(print_polytope(&p), text);
        let json = serde_json::to_string(&BlockRecord::of_polytope(&p)).unwrap();
        assert_eq!(parse_polytope(&json).unwrap().polytope, p);
    }

    #[test]
    fn cones_round_trip() {
        let c = parse_cone("3 4 C\n1 1 1\n1 -1 1\n-1 1 1\n-1 -1 1").unwrap();
        assert_eq!(c.generators().len(), 4);
        assert_eq!(parse_cone(&print_cone(&c)).unwrap(), c);
        let d = c.dual_cone();
        assert_eq!(parse_cone(&print_cone(&d)).unwrap(), d);
        assert!(parse_cone("2 2 M\n1 0\n0 1").is_err());
    }

    #[test]
    fn multiple_blocks() {
        let ps = parse_polytopes("1 2 M\n-1\n1\n\n1 2 M # second\n0\n2").unwrap();
        assert_eq!(ps.len(), 2);
    }
}
