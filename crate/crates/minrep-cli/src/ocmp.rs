//! Binary table persistence.
//!
//! Layout: magic `OCMP`, one version byte, the opset id
//! (length-prefixed), the table size `N` as a 64-bit little-endian
//! integer, `N` complexity bytes, then `N` provenance records of one tag
//! byte plus a 32-bit little-endian operand. Writes go to a temporary
//! file in the target directory and are renamed into place.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use minrep::engine::{ComplexityTable, Provenance};
use minrep::ops::{HyperOp, OperatorSet};

use crate::CliError;

const MAGIC: &[u8; 4] = b"OCMP";
const VERSION: u8 = 1;

const TAG_BASE: u8 = 0;
const TAG_SUCCESSOR: u8 = 1;
const TAG_ADD: u8 = 2;
const TAG_MUL: u8 = 3;
const TAG_POW: u8 = 4;
const TAG_ABSENT: u8 = 5;

fn encode(p: Provenance) -> (u8, u32) {
    match p {
        Provenance::Base => (TAG_BASE, 0),
        Provenance::Successor => (TAG_SUCCESSOR, 0),
        Provenance::Split { op: HyperOp::Add, left } => (TAG_ADD, left),
        Provenance::Split { op: HyperOp::Mul, left } => (TAG_MUL, left),
        Provenance::Split { op: HyperOp::Pow, left } => (TAG_POW, left),
        Provenance::Absent => (TAG_ABSENT, 0),
    }
}

fn decode(tag: u8, operand: u32) -> Result<Provenance, CliError> {
    Ok(match tag {
        TAG_BASE => Provenance::Base,
        TAG_SUCCESSOR => Provenance::Successor,
        TAG_ADD => Provenance::Split { op: HyperOp::Add, left: operand },
        TAG_MUL => Provenance::Split { op: HyperOp::Mul, left: operand },
        TAG_POW => Provenance::Split { op: HyperOp::Pow, left: operand },
        TAG_ABSENT => Provenance::Absent,
        other => return Err(CliError::Format(format!("unknown provenance tag {other}"))),
    })
}

pub fn save(table: &ComplexityTable, path: &Path) -> Result<(), CliError> {
    let id = table.ops().id().as_bytes();
    if id.len() > u8::MAX as usize {
        return Err(CliError::Format("opset id longer than 255 bytes".into()));
    }
    if let Some(i) = table.complexities().iter().position(|&c| c > u8::MAX as u16) {
        return Err(CliError::Format(format!(
            "complexity of {} is {}, too large for the 8-bit file format",
            i + 1,
            table.complexities()[i]
        )));
    }

    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp_path = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|f| f.to_str()).unwrap_or("table.ocmp")
    ));
    let mut w = BufWriter::new(fs::File::create(&tmp_path)?);

    w.write_all(MAGIC)?;
    w.write_all(&[VERSION, id.len() as u8])?;
    w.write_all(id)?;
    w.write_all(&table.limit().to_le_bytes())?;
    for &c in table.complexities() {
        w.write_all(&[c as u8])?;
    }
    for n in 1..=table.limit() {
        let (tag, operand) = encode(table.provenance(n).expect("n in range"));
        w.write_all(&[tag])?;
        w.write_all(&operand.to_le_bytes())?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))?.sync_all()?;
    fs::rename(&tmp_path, path)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<ComplexityTable, CliError> {
    let mut r = std::io::BufReader::new(fs::File::open(path)?);

    let mut header = [0u8; 6];
    r.read_exact(&mut header)?;
    if &header[..4] != MAGIC {
        return Err(CliError::Format("bad magic; not a table file".into()));
    }
    if header[4] != VERSION {
        return Err(CliError::Format(format!("unsupported format version {}", header[4])));
    }
    let mut id = vec![0u8; header[5] as usize];
    r.read_exact(&mut id)?;
    let id = String::from_utf8(id).map_err(|_| CliError::Format("opset id is not UTF-8".into()))?;
    let ops = OperatorSet::preset(&id)
        .map_err(|e| CliError::Format(format!("stored opset rejected: {e}")))?;

    let mut n_bytes = [0u8; 8];
    r.read_exact(&mut n_bytes)?;
    let limit = u64::from_le_bytes(n_bytes);
    if limit == 0 || limit > u32::MAX as u64 {
        return Err(CliError::Format(format!("stored table size {limit} out of range")));
    }

    let mut complexity = vec![0u8; limit as usize];
    r.read_exact(&mut complexity)?;
    let complexity: Vec<u16> = complexity.into_iter().map(u16::from).collect();

    let mut provenance = Vec::with_capacity(limit as usize);
    let mut rec = [0u8; 5];
    for _ in 0..limit {
        r.read_exact(&mut rec)?;
        provenance.push(decode(rec[0], u32::from_le_bytes([rec[1], rec[2], rec[3], rec[4]]))?);
    }
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(CliError::Format("trailing bytes after table data".into()));
    }

    ComplexityTable::from_parts(ops, complexity, provenance)
        .map_err(|e| CliError::Format(format!("stored table rejected: {e}")))
}
