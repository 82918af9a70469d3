//! Readers for DIMACS `.gr` files and plain edge lists, and the binary CSR cache.
//!
//! Cache layout, all little-endian:
//!
//! ```text
//! "CSRG"  version:u32  N:u64  E:u64
//! row_offsets: (N+1) x u64
//! col_indices: E x u32
//! has_weights: u8 (0 or 1)
//! weights:     E x u32        (only when has_weights = 1)
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{CsrGraph, NodeId, Weight};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: &[u8; 4] = b"CSRG";
pub const BINARY_VERSION: u32 = 1;

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn parse_int(path: &Path, line: usize, tok: &str, what: &str) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| parse_err(path, line, format!("invalid {what} '{tok}'")))
}

fn parse_weight(path: &Path, line: usize, tok: &str) -> Result<Weight> {
    let w = parse_int(path, line, tok, "weight")?;
    if w < 0 {
        return Err(parse_err(path, line, format!("negative weight {w}")));
    }
    Weight::try_from(w).map_err(|_| parse_err(path, line, format!("weight {w} exceeds 32 bits")))
}

/// Loads a 9th DIMACS challenge shortest-path file. Ids are shifted to 0-based.
pub fn load_dimacs_gr(path: impl AsRef<Path>) -> Result<CsrGraph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_dimacs_gr(BufReader::new(file), path)
}

/// Parses DIMACS text from any reader; `name` is used in error messages.
pub fn read_dimacs_gr<R: BufRead>(reader: R, name: impl AsRef<Path>) -> Result<CsrGraph> {
    let path = name.as_ref();
    let mut header: Option<(usize, usize, usize)> = None;
    let mut src = Vec::new();
    let mut dst = Vec::new();
    let mut wt = Vec::new();
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(path, lineno, "duplicate problem line"));
                }
                let fields: Vec<&str> = toks.collect();
                if fields.len() != 3 || fields[0] != "sp" {
                    return Err(parse_err(path, lineno, "malformed header, expected 'p sp <nodes> <arcs>'"));
                }
                let n = parse_int(path, lineno, fields[1], "node count")?;
                let m = parse_int(path, lineno, fields[2], "arc count")?;
                if n < 0 || m < 0 || n > NodeId::MAX as i64 {
                    return Err(parse_err(path, lineno, "malformed header, counts out of range"));
                }
                let (n, m) = (n as usize, m as usize);
                src.reserve(m);
                dst.reserve(m);
                wt.reserve(m);
                header = Some((n, m, lineno));
            }
            Some("a") => {
                let Some((n, m, _)) = header else {
                    return Err(parse_err(path, lineno, "arc line before 'p sp' header"));
                };
                let fields: Vec<&str> = toks.collect();
                if fields.len() != 3 {
                    return Err(parse_err(path, lineno, "malformed arc, expected 'a <u> <v> <w>'"));
                }
                let mut ends = [0 as NodeId; 2];
                for (slot, tok) in ends.iter_mut().zip(&fields[..2]) {
                    let id = parse_int(path, lineno, tok, "node id")?;
                    if id < 1 || id as u64 > n as u64 {
                        return Err(parse_err(path, lineno, format!("node id {id} out of range (1..={n})")));
                    }
                    *slot = (id - 1) as NodeId;
                }
                if src.len() == m {
                    return Err(parse_err(path, lineno, format!("arc count mismatch: more than the {m} declared arcs")));
                }
                src.push(ends[0]);
                dst.push(ends[1]);
                wt.push(parse_weight(path, lineno, fields[2])?);
            }
            Some(other) => {
                return Err(parse_err(path, lineno, format!("unknown line type '{other}'")));
            }
        }
    }

    let Some((n, m, _)) = header else {
        return Err(parse_err(path, last_line.max(1), "missing 'p sp' header"));
    };
    if src.len() != m {
        return Err(parse_err(
            path,
            last_line,
            format!("arc count mismatch: header declares {m}, file has {}", src.len()),
        ));
    }
    CsrGraph::from_edges(n, &src, &dst, Some(&wt))
}

/// Loads a whitespace-separated `u v [w]` edge list with 0-based ids.
/// The node count is one past the largest id seen.
pub fn load_edge_list(path: impl AsRef<Path>, weighted: bool) -> Result<CsrGraph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_edge_list(BufReader::new(file), path, weighted)
}

pub fn read_edge_list<R: BufRead>(reader: R, name: impl AsRef<Path>, weighted: bool) -> Result<CsrGraph> {
    let path = name.as_ref();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    let mut wt = Vec::new();
    let mut num_nodes = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() < 2 || fields.len() > 3 {
            return Err(parse_err(path, lineno, format!("expected 'u v [w]', found {} fields", fields.len())));
        }
        let mut ends = [0 as NodeId; 2];
        for (slot, tok) in ends.iter_mut().zip(&fields[..2]) {
            let id = parse_int(path, lineno, tok, "node id")?;
            if id < 0 || id > NodeId::MAX as i64 - 1 {
                return Err(parse_err(path, lineno, format!("node id {id} out of range")));
            }
            *slot = id as NodeId;
        }
        if weighted {
            let Some(tok) = fields.get(2) else {
                return Err(parse_err(path, lineno, "missing weight"));
            };
            wt.push(parse_weight(path, lineno, tok)?);
        } else if let Some(tok) = fields.get(2) {
            // Weight column present but ignored; still has to be a sane integer.
            parse_weight(path, lineno, tok)?;
        }
        num_nodes = num_nodes.max(ends[0].max(ends[1]) as usize + 1);
        src.push(ends[0]);
        dst.push(ends[1]);
    }

    CsrGraph::from_edges(num_nodes, &src, &dst, weighted.then_some(wt.as_slice()))
}

pub fn write_binary<W: Write>(g: &CsrGraph, mut out: W) -> Result<()> {
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&BINARY_VERSION.to_le_bytes())?;
    out.write_all(&(g.num_nodes() as u64).to_le_bytes())?;
    out.write_all(&(g.num_edges() as u64).to_le_bytes())?;
    for &o in g.row_offsets() {
        out.write_all(&(o as u64).to_le_bytes())?;
    }
    for &c in g.col_indices() {
        out.write_all(&c.to_le_bytes())?;
    }
    match g.weights() {
        Some(w) => {
            out.write_all(&[1])?;
            for &x in w {
                out.write_all(&x.to_le_bytes())?;
            }
        }
        None => out.write_all(&[0])?,
    }
    out.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut input: R, name: impl AsRef<Path>) -> Result<CsrGraph> {
    let path: PathBuf = name.as_ref().to_path_buf();
    let bad = |msg: String| Error::Parse {
        path: path.clone(),
        line: 0,
        msg,
    };

    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != BINARY_MAGIC {
        return Err(bad(format!("bad magic {magic:?}")));
    }
    let version = read_u32(&mut input)?;
    if version != BINARY_VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let n = read_u64(&mut input)?;
    let e = read_u64(&mut input)?;
    if n > NodeId::MAX as u64 {
        return Err(bad(format!("node count {n} exceeds 32-bit ids")));
    }
    let (n, e) = (n as usize, usize::try_from(e).map_err(|_| bad("edge count overflow".into()))?);

    let mut row_offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let o = read_u64(&mut input)?;
        row_offsets.push(usize::try_from(o).map_err(|_| bad("row offset overflow".into()))?);
    }
    let mut col_indices = Vec::with_capacity(e);
    for _ in 0..e {
        col_indices.push(read_u32(&mut input)?);
    }
    let mut flag = [0u8; 1];
    input.read_exact(&mut flag)?;
    let weights = match flag[0] {
        0 => None,
        1 => {
            let mut w = Vec::with_capacity(e);
            for _ in 0..e {
                w.push(read_u32(&mut input)?);
            }
            Some(w)
        }
        f => return Err(bad(format!("bad weights flag {f}"))),
    };
    CsrGraph::new(row_offsets, col_indices, weights)
}

pub fn load_binary(path: impl AsRef<Path>) -> Result<CsrGraph> {
    let path = path.as_ref();
    read_binary(BufReader::new(File::open(path)?), path)
}

/// Writes the binary cache to a file.
pub fn save_binary(g: &CsrGraph, path: impl AsRef<Path>) -> Result<()> {
    write_binary(g, BufWriter::new(File::create(path)?))
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}
