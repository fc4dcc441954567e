//! Optional on-disk memo table, one `key<TAB>value` pair per line.
//!
//! Keys: `nd:<d>`, `nde:<d>,<e>` and `pr:<r>:<d>:<a_0,...,a_r>` for reduced
//! projective invariants. Unreadable lines are reported and skipped.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use gwcalc::{BigInt, GwEngine, Rational};

fn parse_list(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|t| t.parse().ok()).collect()
}

fn load_line(engine: &GwEngine, key: &str, value: &str) -> Option<()> {
    let (kind, rest) = key.split_once(':')?;
    match kind {
        "nd" => {
            let d: u32 = rest.parse().ok()?;
            let v: BigInt = value.parse().ok()?;
            (d >= 1).then(|| engine.counts().preload_plane(d, v))
        }
        "nde" => {
            let [d, e]: [u32; 2] = parse_list(rest)?.try_into().ok()?;
            let v: BigInt = value.parse().ok()?;
            (d + e >= 1).then(|| engine.counts().preload_quadric(d, e, v))
        }
        "pr" => {
            let mut parts = rest.splitn(3, ':');
            let r: u32 = parts.next()?.parse().ok()?;
            let d: u32 = parts.next()?.parse().ok()?;
            let exps = parse_list(parts.next()?)?;
            let v: Rational = value.parse().ok()?;
            engine.preload_pr(r, d, exps, v).then_some(())
        }
        _ => None,
    }
}

pub fn load(path: &Path, engine: &GwEngine) -> io::Result<()> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(()),
        Err(e) => return Err(e),
    };
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let ok = line
            .split_once('\t')
            .and_then(|(k, v)| load_line(engine, k.trim(), v.trim()));
        if ok.is_none() {
            eprintln!("warning: {}:{}: ignoring malformed cache entry", path.display(), n + 1);
        }
    }
    Ok(())
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn render(engine: &GwEngine) -> String {
    let mut out = String::new();
    for (d, v) in engine.counts().plane_entries() {
        out += &format!("nd:{d}\t{v}\n");
    }
    for ((d, e), v) in engine.counts().quadric_entries() {
        out += &format!("nde:{d},{e}\t{v}\n");
    }
    for ((r, d, exps), v) in engine.pr_entries() {
        out += &format!("pr:{r}:{d}:{}\t{v}\n", join(&exps));
    }
    out
}

/// Writes through a temporary file so a crash never leaves a torn cache.
pub fn save(path: &Path, engine: &GwEngine) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(render(engine).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}
