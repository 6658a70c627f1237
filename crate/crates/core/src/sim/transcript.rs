//! Message transcripts and their text form.
//!
//! ```text
//! lbtranscript 1
//! nodes 2
//! bandwidth 8
//! rounds 2
//! messages 2
//! m 1 1 2 fwd 3 e0
//! m 1 1 2 rev 3 e0
//! ```
//!
//! Each `m` line is `round lo hi direction bits hex`, where `lo < hi` are the
//! 1-based endpoint ids, `fwd` means `lo -> hi`, and `hex` is the payload
//! zero-padded to whole bytes (`-` when empty).

use super::bits::{payload_hex, Payload};
use super::Envelope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageRecord {
    pub round: u64,
    /// 1-based sender id.
    pub from: usize,
    /// 1-based receiver id.
    pub to: usize,
    pub bits: usize,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub nodes: usize,
    pub bandwidth_bits: usize,
    pub rounds: u64,
    /// In (round, sender, receiver) order.
    pub messages: Vec<MessageRecord>,
}

impl Transcript {
    pub fn new(nodes: usize, bandwidth_bits: usize) -> Transcript {
        Transcript {
            nodes,
            bandwidth_bits,
            rounds: 0,
            messages: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, round: u64, sent: &[Envelope]) {
        for e in sent {
            self.messages.push(MessageRecord {
                round,
                from: e.from.congest_id(),
                to: e.to.congest_id(),
                bits: e.payload.len(),
                payload: e.payload.clone(),
            });
        }
        self.rounds = self.rounds.max(round);
    }

    pub fn total_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.bits as u64).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("transcript line {line}: {message}")]
pub struct TranscriptError {
    pub line: usize,
    pub message: String,
}

pub fn write_transcript(t: &Transcript) -> String {
    let mut out = format!(
        "lbtranscript 1\nnodes {}\nbandwidth {}\nrounds {}\nmessages {}\n",
        t.nodes,
        t.bandwidth_bits,
        t.rounds,
        t.messages.len()
    );
    for m in &t.messages {
        let (lo, hi, dir) = if m.from < m.to {
            (m.from, m.to, "fwd")
        } else {
            (m.to, m.from, "rev")
        };
        let hex = if m.bits == 0 {
            "-".to_owned()
        } else {
            payload_hex(&m.payload)
        };
        out.push_str(&format!("m {} {lo} {hi} {dir} {} {hex}\n", m.round, m.bits));
    }
    out
}

pub fn parse_transcript(text: &str) -> Result<Transcript, TranscriptError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let err = |line: usize, message: &str| TranscriptError {
        line,
        message: message.to_owned(),
    };
    let mut header = |key: &str| -> Result<(usize, u64), TranscriptError> {
        let (no, l) = lines.next().ok_or_else(|| err(0, "unexpected end of input"))?;
        let rest = l
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| err(no, &format!("expected `{key} <value>`")))?;
        let v = rest
            .parse::<u64>()
            .map_err(|_| err(no, &format!("bad value for `{key}`")))?;
        Ok((no, v))
    };
    let (no, version) = header("lbtranscript")?;
    if version != 1 {
        return Err(err(no, "unsupported transcript version"));
    }
    let nodes = header("nodes")?.1 as usize;
    let bandwidth_bits = header("bandwidth")?.1 as usize;
    let rounds = header("rounds")?.1;
    let (mno, count) = header("messages")?;
    let mut messages = Vec::with_capacity(count as usize);
    for (no, l) in lines {
        if l.is_empty() {
            continue;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 7 || f[0] != "m" {
            return Err(err(no, "expected `m round lo hi dir bits hex`"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| err(no, "bad number"));
        let (round, lo, hi, bits) = (num(f[1])?, num(f[2])? as usize, num(f[3])? as usize, num(f[5])? as usize);
        if lo >= hi || hi > nodes || lo == 0 {
            return Err(err(no, "endpoints must satisfy 1 <= lo < hi <= nodes"));
        }
        let (from, to) = match f[4] {
            "fwd" => (lo, hi),
            "rev" => (hi, lo),
            _ => return Err(err(no, "direction must be fwd or rev")),
        };
        let payload = if f[6] == "-" {
            if bits != 0 {
                return Err(err(no, "empty payload with nonzero length"));
            }
            Payload::new()
        } else {
            let bytes = decode_hex(f[6]).ok_or_else(|| err(no, "bad hex payload"))?;
            if bytes.len() != bits.div_ceil(8) {
                return Err(err(no, "hex length does not match bit count"));
            }
            let mut p = Payload::from_vec(bytes);
            if p[bits..].any() {
                return Err(err(no, "padding bits must be zero"));
            }
            p.truncate(bits);
            p
        };
        messages.push(MessageRecord {
            round,
            from,
            to,
            bits,
            payload,
        });
    }
    if messages.len() as u64 != count {
        return Err(err(mno, "message count does not match the records"));
    }
    Ok(Transcript {
        nodes,
        bandwidth_bits,
        rounds,
        messages,
    })
}

fn decode_hex(s: &str) -> Option<Vec<u8>> {
    if !s.len().is_multiple_of(2) {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::bits::push_bits;

    fn sample() -> Transcript {
        let mut t = Transcript::new(3, 8);
        t.rounds = 2;
        for (round, from, to, v, w) in [(1, 1, 2, 0b101, 3), (1, 3, 2, 0, 0), (2, 2, 1, 0xab, 8)] {
            let mut p = Payload::new();
            push_bits(&mut p, v, w);
            t.messages.push(MessageRecord {
                round,
                from,
                to,
                bits: w as usize,
                payload: p,
            });
        }
        t
    }

    #[test]
    fn round_trip() {
        let t = sample();
        let text = write_transcript(&t);
        assert!(text.contains("m 1 1 2 fwd 3 a0\n"));
        assert!(text.contains("m 1 2 3 rev 0 -\n"));
        assert_eq!(parse_transcript(&text).unwrap(), t);
    }

    #[test]
    fn rejects_bad_records() {
        let text = write_transcript(&sample());
        let bad = text.replace("fwd 3 a0", "fwd 3 a1");
        assert_eq!(parse_transcript(&bad).unwrap_err().line, 6);
        let bad = text.replace("messages 3", "messages 4");
        assert_eq!(parse_transcript(&bad).unwrap_err().line, 5);
        let bad = text.replace("m 2 1 2 rev", "m 2 2 1 rev");
        assert!(parse_transcript(&bad).is_err());
        assert!(parse_transcript("lbtranscript 2\n").is_err());
    }

    #[test]
    fn total_bits() {
        assert_eq!(sample().total_bits(), 11);
    }
}
