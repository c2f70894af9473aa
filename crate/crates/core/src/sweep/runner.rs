use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::record::{records_for_p, ReportFormat, SweepRecord};
use super::verify::{corollary_violations, lemma_violations, theorem_violations, Violation};

const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_p: i64,
    pub jobs: usize,
    pub out: PathBuf,
    pub checkpoint: PathBuf,
    pub format: ReportFormat,
    /// Ignore any checkpoint and start over at `p = 2`.
    pub from_scratch: bool,
    /// Stop once this `p` is complete, as if interrupted there.
    pub stop_after: Option<i64>,
    /// Optional `p,k,elapsed_us` sidecar. Timings never enter the report.
    pub timings: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(max_p: i64, out: impl Into<PathBuf>, checkpoint: impl Into<PathBuf>) -> Self {
        SweepConfig {
            max_p,
            jobs: 1,
            out: out.into(),
            checkpoint: checkpoint.into(),
            format: ReportFormat::Csv,
            from_scratch: false,
            stop_after: None,
            timings: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checkpoint {
    pub max_p: i64,
    pub completed_p: i64,
    pub schema: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSummary {
    pub completed_p: i64,
    pub finished: bool,
    /// Records in the report, including any carried over from a resumed run.
    pub records: usize,
    /// First `p` computed by this invocation.
    pub resumed_from: i64,
    pub theorem: Vec<Violation>,
    pub corollary: Vec<Violation>,
    pub lemma: Vec<Violation>,
}

impl SweepSummary {
    pub fn has_violations(&self) -> bool {
        !(self.theorem.is_empty() && self.corollary.is_empty() && self.lemma.is_empty())
    }
}

/// Writes one record per canonical parameter with `p <= max_p` to
/// `config.out`, sorted by `(p, k)`.
///
/// Work is split by `p` over `jobs` threads in batches. Each finished batch
/// is appended to the report and flushed before the checkpoint moves past
/// it, so the checkpoint never claims rows that are not on disk. On resume,
/// rows beyond the checkpoint are dropped and the sweep continues from the
/// next `p`. The report bytes depend only on `max_p`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary> {
    if config.max_p < 2 {
        return Err(Error::Config(format!(
            "max_p must be at least 2, got {}",
            config.max_p
        )));
    }
    if config.jobs == 0 {
        return Err(Error::Config("job count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;

    let completed = if config.from_scratch || !config.checkpoint.exists() {
        start_report(config)?;
        1
    } else {
        let checkpoint = read_checkpoint(&config.checkpoint)?;
        let keep = checkpoint.completed_p.min(config.max_p);
        truncate_report(config, keep)?;
        keep
    };
    let resumed_from = completed + 1;
    let last = config
        .stop_after
        .map_or(config.max_p, |s| s.min(config.max_p));

    let mut out = BufWriter::new(append(&config.out)?);
    let mut timings = match &config.timings {
        Some(path) if resumed_from == 2 => Some((path, BufWriter::new(create(path)?))),
        Some(path) => Some((path, BufWriter::new(append(path)?))),
        None => None,
    };

    let batch = (4 * config.jobs) as i64;
    let mut completed_p = completed;
    let mut next = resumed_from;
    while next <= last {
        let end = (next + batch - 1).min(last);
        let per_p: Vec<Vec<SweepRecord>> = pool.install(|| {
            (next..=end)
                .into_par_iter()
                .map(records_for_p)
                .collect::<Result<_>>()
        })?;
        for record in per_p.iter().flatten() {
            writeln!(out, "{}", config.format.encode(record))
                .map_err(|e| Error::io(&config.out, e))?;
            if let Some((path, t)) = timings.as_mut() {
                writeln!(t, "{},{},{}", record.p, record.k, record.elapsed_us)
                    .map_err(|e| Error::io(*path, e))?;
            }
        }
        out.flush().map_err(|e| Error::io(&config.out, e))?;
        out.get_ref()
            .sync_data()
            .map_err(|e| Error::io(&config.out, e))?;
        if let Some((path, t)) = timings.as_mut() {
            t.flush().map_err(|e| Error::io(*path, e))?;
        }
        completed_p = end;
        write_checkpoint(
            &config.checkpoint,
            Checkpoint {
                max_p: config.max_p,
                completed_p,
                schema: SCHEMA,
            },
        )?;
        next = end + 1;
    }
    if completed_p == completed {
        write_checkpoint(
            &config.checkpoint,
            Checkpoint {
                max_p: config.max_p,
                completed_p,
                schema: SCHEMA,
            },
        )?;
    }
    drop(out);

    let records = read_report(config)?;
    Ok(SweepSummary {
        completed_p,
        finished: completed_p >= config.max_p,
        records: records.len(),
        resumed_from,
        theorem: theorem_violations(&records),
        corollary: corollary_violations(&records),
        lemma: lemma_violations(&records),
    })
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

fn append(path: &Path) -> Result<File> {
    OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))
}

fn start_report(config: &SweepConfig) -> Result<()> {
    let mut file = create(&config.out)?;
    if let Some(header) = config.format.header() {
        writeln!(file, "{header}").map_err(|e| Error::io(&config.out, e))?;
    }
    Ok(())
}

fn corrupt(path: &Path, detail: impl Into<String>) -> Error {
    Error::CorruptCheckpoint {
        path: path.to_path_buf(),
        detail: detail.into(),
    }
}

fn read_checkpoint(path: &Path) -> Result<Checkpoint> {
    let text = fs::read_to_string(path).map_err(|e| corrupt(path, e.to_string()))?;
    let checkpoint: Checkpoint =
        serde_json::from_str(&text).map_err(|e| corrupt(path, e.to_string()))?;
    if checkpoint.schema != SCHEMA {
        return Err(corrupt(
            path,
            format!("unsupported schema {}", checkpoint.schema),
        ));
    }
    if checkpoint.completed_p < 1 || checkpoint.completed_p > checkpoint.max_p {
        return Err(corrupt(
            path,
            format!("completed_p {} out of range", checkpoint.completed_p),
        ));
    }
    Ok(checkpoint)
}

fn write_checkpoint(path: &Path, checkpoint: Checkpoint) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let body = serde_json::to_string(&checkpoint).expect("checkpoint serializes");
    {
        let mut file = create(&tmp)?;
        file.write_all(body.as_bytes())
            .map_err(|e| Error::io(&tmp, e))?;
        file.sync_all().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Cuts the report back to the header and the rows with `p <= keep`. A
/// report that disagrees with its checkpoint counts as corruption.
fn truncate_report(config: &SweepConfig, keep: i64) -> Result<()> {
    let path = &config.out;
    let file = File::open(path).map_err(|e| {
        corrupt(
            &config.checkpoint,
            format!("report {}: {e}", path.display()),
        )
    })?;
    let mut reader = BufReader::new(file);
    let mut offset = 0u64;
    let mut line = String::new();
    let mut first = true;
    let mut last_p = 1;
    loop {
        line.clear();
        let n = reader
            .read_line(&mut line)
            .map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        if first {
            first = false;
            if let Some(header) = config.format.header() {
                if line.trim_end() != header {
                    return Err(corrupt(&config.checkpoint, "report header does not match"));
                }
                offset += n as u64;
                continue;
            }
        }
        if !line.ends_with('\n') {
            break;
        }
        let Some(record) = config.format.decode(line.trim_end()) else {
            break;
        };
        if record.p > keep {
            break;
        }
        last_p = record.p;
        offset += n as u64;
    }
    if first && config.format.header().is_some() {
        return Err(corrupt(&config.checkpoint, "report is empty"));
    }
    // p = 2 always has a record, so a resumable report reaches `keep`.
    if last_p < keep {
        return Err(corrupt(
            &config.checkpoint,
            format!("report ends at p = {last_p} but the checkpoint claims {keep}"),
        ));
    }
    let file = OpenOptions::new()
        .write(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    file.set_len(offset).map_err(|e| Error::io(path, e))
}

fn read_report(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let path = &config.out;
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if n == 0 && config.format.header().is_some() {
            continue;
        }
        let record = config
            .format
            .decode(&line)
            .ok_or_else(|| Error::Integrity {
                p: 0,
                k: 0,
                index: n as i64,
                detail: format!("unreadable report line {}: {line}", n + 1),
            })?;
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(dir: &Path, max_p: i64, jobs: usize) -> SweepConfig {
        SweepConfig {
            jobs,
            ..SweepConfig::new(max_p, dir.join("out.csv"), dir.join("ckpt.json"))
        }
    }

    #[test]
    fn job_count_does_not_change_bytes() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let one = run_sweep(&config(a.path(), 80, 1)).unwrap();
        let four = run_sweep(&config(b.path(), 80, 4)).unwrap();
        assert!(one.finished && four.finished);
        assert_eq!(
            fs::read(a.path().join("out.csv")).unwrap(),
            fs::read(b.path().join("out.csv")).unwrap()
        );
        let ckpt: Checkpoint =
            serde_json::from_str(&fs::read_to_string(a.path().join("ckpt.json")).unwrap()).unwrap();
        assert_eq!(
            ckpt,
            Checkpoint {
                max_p: 80,
                completed_p: 80,
                schema: 1
            }
        );
    }

    #[test]
    fn resume_matches_uninterrupted() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        run_sweep(&config(a.path(), 70, 2)).unwrap();
        let mut cfg = config(b.path(), 70, 3);
        cfg.stop_after = Some(33);
        let partial = run_sweep(&cfg).unwrap();
        assert_eq!((partial.completed_p, partial.finished), (33, false));
        // Stray rows past the checkpoint, as left by a crash mid-batch.
        let mut f = OpenOptions::new().append(true).open(&cfg.out).unwrap();
        writeln!(f, "34,1,1,1,0,0,0,0,1,1,1,1,1,0,1,1\n35,1,1").unwrap();
        cfg.stop_after = None;
        let rest = run_sweep(&cfg).unwrap();
        assert_eq!((rest.resumed_from, rest.completed_p), (34, 70));
        assert_eq!(
            fs::read(a.path().join("out.csv")).unwrap(),
            fs::read(&cfg.out).unwrap()
        );
    }

    #[test]
    fn jsonl_reports() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = config(dir.path(), 30, 2);
        cfg.format = ReportFormat::Jsonl;
        cfg.timings = Some(dir.path().join("timings.csv"));
        let summary = run_sweep(&cfg).unwrap();
        let text = fs::read_to_string(&cfg.out).unwrap();
        assert_eq!(text.lines().count(), summary.records);
        assert!(text.starts_with("{\"p\":2,\"k\":1,"));
        let timings = fs::read_to_string(dir.path().join("timings.csv")).unwrap();
        assert_eq!(timings.lines().count(), summary.records);
    }

    #[test]
    fn corrupt_checkpoint_demands_restart() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(dir.path(), 20, 1);
        run_sweep(&cfg).unwrap();
        fs::write(&cfg.checkpoint, "{\"max_p\":20,").unwrap();
        let err = run_sweep(&cfg).unwrap_err();
        assert!(matches!(err, Error::CorruptCheckpoint { .. }));
        assert!(err.to_string().contains("--from-scratch"));
        fs::write(
            &cfg.checkpoint,
            "{\"max_p\":20,\"completed_p\":20,\"schema\":2}",
        )
        .unwrap();
        assert!(matches!(
            run_sweep(&cfg),
            Err(Error::CorruptCheckpoint { .. })
        ));
        let restart = SweepConfig {
            from_scratch: true,
            ..cfg
        };
        assert!(run_sweep(&restart).unwrap().finished);
    }

    #[test]
    fn bad_config_and_paths() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            run_sweep(&config(dir.path(), 1, 1)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_sweep(&config(dir.path(), 10, 0)),
            Err(Error::Config(_))
        ));
        let missing = SweepConfig::new(
            10,
            dir.path().join("no/such/out.csv"),
            dir.path().join("c.json"),
        );
        assert!(matches!(run_sweep(&missing), Err(Error::Io { .. })));
    }
}
