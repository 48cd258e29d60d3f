use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;

/// 17 significant digits, enough to round-trip an `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_exponent(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

#[derive(Serialize)]
struct Provenance<'a> {
    version: &'static str,
    config: &'a RunConfig,
}

#[derive(Serialize)]
struct Document<'a, T> {
    version: &'static str,
    config: &'a RunConfig,
    result: &'a T,
}

fn target(config: &RunConfig, name: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(&config.out)?;
    Ok(config.out.join(name))
}

/// Writes a CSV table preceded by a `#` line holding the version and config.
pub fn write_csv(config: &RunConfig, name: &str, header: &[&str], rows: &[Vec<String>]) -> io::Result<PathBuf> {
    let path = target(config, name)?;
    let mut buf = Vec::new();
    let provenance = Provenance { version: radmult::VERSION, config };
    writeln!(buf, "# {}", serde_json::to_string(&provenance)?)?;
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    write_file(&path, &buf)?;
    Ok(path)
}

/// Writes `{version, config, result}` as pretty JSON.
pub fn write_json<T: Serialize>(config: &RunConfig, name: &str, result: &T) -> io::Result<PathBuf> {
    let path = target(config, name)?;
    let doc = Document { version: radmult::VERSION, config, result };
    let mut buf = serde_json::to_vec_pretty(&doc)?;
    buf.push(b'\n');
    write_file(&path, &buf)?;
    Ok(path)
}

fn write_file(path: &Path, bytes: &[u8]) -> io::Result<()> {
    fs::write(path, bytes)
}
