//! Plain-text edge lists: a header line `n d`, then one `u v` line per edge
//! in edge-id order. Loops are written `u u`.

use std::io::{BufRead, Write};

use super::Multigraph;
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Multigraph, mut out: W) -> Result<()> {
    let d = g.regular_degree().ok_or_else(|| {
        Error::InvalidParameters("edge-list export needs a regular graph".into())
    })?;
    writeln!(out, "{} {}", g.n(), d)?;
    for e in 0..g.num_edges() {
        let (u, v) = g.endpoints(e);
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Multigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| parse_err(idx, "expected two integers"))?
                .parse()
                .map_err(|_| parse_err(idx, "not an integer"))
        };
        let mut toks = line.split_whitespace();
        let a = parse(toks.next())?;
        let b = parse(toks.next())?;
        if toks.next().is_some() {
            return Err(parse_err(idx, "trailing tokens"));
        }
        if header.is_none() {
            header = Some((a, b));
        } else {
            edges.push((a, b));
        }
    }
    let (n, d) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if edges.len() * 2 != n * d {
        return Err(parse_err(0, "edge count does not match header"));
    }
    let g = Multigraph::from_edges(n, &edges)?;
    if (0..n).any(|v| g.degree(v) != d) {
        return Err(parse_err(0, "graph is not d-regular"));
    }
    Ok(g)
}

fn parse_err(idx: usize, msg: &str) -> Error {
    Error::Parse {
        line: idx + 1,
        msg: msg.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{families, realize, sample_pairing};
    use crate::seeding::rng_from_seed;
    use proptest::prelude::*;

    #[test]
    fn k4_text() {
        let mut buf = Vec::new();
        write_edge_list(&families::complete(4), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_edge_list("2 3\n0 1\n".as_bytes()).is_err());
        assert!(read_edge_list("2 1\n0 x\n".as_bytes()).is_err());
        assert!(read_edge_list("".as_bytes()).is_err());
        assert!(read_edge_list("3 2\n0 1\n1 2\n0 0\n".as_bytes()).is_err());
    }

    #[test]
    fn loops_round_trip() {
        let g = read_edge_list("2 3\n0 0\n0 1\n1 1\n".as_bytes()).unwrap();
        assert!(g.is_loop(0));
        assert_eq!(g.degree(0), 3);
    }

    proptest! {
        #[test]
        fn text_is_stable_under_round_trip(seed in any::<u64>(), n in 2usize..40, d in 2usize..5) {
            prop_assume!(n * d % 2 == 0);
            let g = realize(&sample_pairing(n, d, &mut rng_from_seed(seed)).unwrap());
            let mut first = Vec::new();
            write_edge_list(&g, &mut first).unwrap();
            let back = read_edge_list(first.as_slice()).unwrap();
            let mut second = Vec::new();
            write_edge_list(&back, &mut second).unwrap();
            prop_assert_eq!(first, second);
        }
    }
}
