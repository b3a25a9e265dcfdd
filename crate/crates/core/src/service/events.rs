//! Append-only JSON-Lines event log with a single writer thread.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;

use serde::{Deserialize, Serialize};
use tokio::sync::oneshot;

use crate::blocker::BlockDecision;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeedbackKind {
    BlockSimilar,
    ReportFalsePositive,
    ReportFalseNegative,
    Clicked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeedbackEvent {
    pub user: String,
    pub kind: FeedbackKind,
    pub headline: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    /// UTC milliseconds.
    pub timestamp: i64,
}

impl FeedbackEvent {
    /// The profile key for this event: the URL when known, else the headline.
    pub fn link(&self) -> &str {
        self.url.as_deref().unwrap_or(&self.headline)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Feedback(FeedbackEvent),
    AutoBlock {
        user: String,
        link: String,
        headline: String,
        timestamp: i64,
        decision: BlockDecision,
    },
    BlockFeedback {
        user: String,
        link: String,
        correct: bool,
        timestamp: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub seq: u64,
    #[serde(flatten)]
    pub record: Record,
}

/// Read every complete entry. A torn final line (crash mid-append) is cut off
/// so later appends start on a clean line.
pub fn recover(path: &Path) -> Result<Vec<LogEntry>> {
    let mut f = match OpenOptions::new().read(true).write(true).open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut bytes = Vec::new();
    f.read_to_end(&mut bytes).map_err(|e| Error::io(path, e))?;
    let good = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if good < bytes.len() {
        tracing::warn!(path = %path.display(), dropped = bytes.len() - good, "truncating torn event log tail");
        f.set_len(good as u64).map_err(|e| Error::io(path, e))?;
        f.sync_data().map_err(|e| Error::io(path, e))?;
    }
    let mut out = Vec::new();
    for (i, line) in BufReader::new(&bytes[..good]).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let entry: LogEntry = serde_json::from_str(&line)
            .map_err(|e| Error::Data(format!("{} line {}: {e}", path.display(), i + 1)))?;
        if entry.seq != i as u64 {
            return Err(Error::Data(format!(
                "{} line {}: sequence {} out of order",
                path.display(),
                i + 1,
                entry.seq
            )));
        }
        out.push(entry);
    }
    Ok(out)
}

type Job = (Record, oneshot::Sender<Result<u64>>);

/// Handle to the writer thread. Appends are queued, written in batches and
/// fsynced before any of them is acknowledged.
#[derive(Debug, Clone)]
pub struct EventLog {
    tx: mpsc::Sender<Job>,
    path: PathBuf,
}

impl EventLog {
    pub fn open(path: &Path, next_seq: u64) -> Result<EventLog> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        file.seek(SeekFrom::End(0))
            .map_err(|e| Error::io(path, e))?;
        let (tx, rx) = mpsc::channel::<Job>();
        let p = path.to_path_buf();
        thread::Builder::new()
            .name("event-log".into())
            .spawn(move || writer(file, rx, next_seq, p))
            .map_err(|e| Error::io(path, e))?;
        Ok(EventLog {
            tx,
            path: path.to_path_buf(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub async fn append(&self, record: Record) -> Result<u64> {
        let (tx, rx) = oneshot::channel();
        self.tx
            .send((record, tx))
            .map_err(|_| Error::Data("event log writer stopped".into()))?;
        rx.await
            .map_err(|_| Error::Data("event log writer stopped".into()))?
    }
}

fn writer(mut file: File, rx: mpsc::Receiver<Job>, mut seq: u64, path: PathBuf) {
    while let Ok(first) = rx.recv() {
        let mut batch = vec![first];
        batch.extend(rx.try_iter());
        let mut buf = Vec::new();
        let mut seqs = Vec::with_capacity(batch.len());
        for (record, _) in &batch {
            let line = serde_json::to_string(&LogEntry {
                seq,
                record: record.clone(),
            })
            .expect("log entry serializes");
            buf.extend_from_slice(line.as_bytes());
            buf.push(b'\n');
            seqs.push(seq);
            seq += 1;
        }
        let before = file.metadata().map(|m| m.len()).ok();
        let res = file.write_all(&buf).and_then(|_| file.sync_data());
        match res {
            Ok(()) => {
                for ((_, reply), s) in batch.into_iter().zip(seqs) {
                    let _ = reply.send(Ok(s));
                }
            }
            Err(e) => {
                tracing::error!(path = %path.display(), error = %e, "event log append failed");
                // Nothing from this batch is acknowledged; roll the counter back.
                seq -= seqs.len() as u64;
                if let Some(len) = before {
                    let _ = file.set_len(len);
                }
                for (_, reply) in batch {
                    let _ = reply.send(Err(Error::io(
                        &path,
                        std::io::Error::new(e.kind(), e.to_string()),
                    )));
                }
            }
        }
    }
}
