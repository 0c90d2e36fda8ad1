//! ISI / Web of Science "tagged field" plain-text exports.
//!
//! ```text
//! FN Thomson Reuters Web of Science
//! VR 1.0
//! PT J
//! TI Knowledge organization research in the
//!    last two decades
//! SO KNOWLEDGE ORGANIZATION
//! PY 1999
//! UT WOS:000081234500001
//! ER
//!
//! EF
//! ```

use std::collections::HashSet;

use super::{check_fields, generated_id, CorpusError, ParsedCorpus, Record};

#[derive(Default)]
struct Block {
    start_line: usize,
    title: Option<String>,
    abstract_text: Option<String>,
    year: Option<String>,
    source: Option<String>,
    id: Option<String>,
    /// Tag of the most recent field, for continuation lines.
    current: Option<[u8; 2]>,
    has_fields: bool,
}

impl Block {
    fn slot(&mut self, tag: [u8; 2]) -> Option<&mut Option<String>> {
        match &tag {
            b"TI" => Some(&mut self.title),
            b"AB" => Some(&mut self.abstract_text),
            b"PY" => Some(&mut self.year),
            b"SO" => Some(&mut self.source),
            b"UT" => Some(&mut self.id),
            _ => None,
        }
    }

    fn start_field(&mut self, tag: [u8; 2], value: &str) {
        self.has_fields = true;
        self.current = Some(tag);
        if let Some(slot) = self.slot(tag) {
            // repeated tags keep the first occurrence
            if slot.is_none() {
                *slot = Some(value.to_string());
            } else {
                self.current = None;
            }
        }
    }

    fn continue_field(&mut self, value: &str) -> bool {
        let Some(tag) = self.current else {
            return self.has_fields;
        };
        if let Some(Some(text)) = self.slot(tag) {
            if !value.is_empty() {
                if !text.is_empty() {
                    text.push(' ');
                }
                text.push_str(value);
            }
        }
        true
    }
}

fn field_tag(line: &str) -> Option<([u8; 2], &str)> {
    let bytes = line.as_bytes();
    if bytes.len() < 2 {
        return None;
    }
    let tag = [bytes[0], bytes[1]];
    let is_tag_char = |b: u8| b.is_ascii_uppercase() || b.is_ascii_digit();
    if !is_tag_char(tag[0]) || !is_tag_char(tag[1]) {
        return None;
    }
    match bytes.get(2) {
        None => Some((tag, "")),
        Some(b' ') => Some((tag, line[3..].trim())),
        Some(_) => None,
    }
}

/// Parse an ISI tagged-field export into records.
///
/// Records lacking a title or a parseable year in range are skipped and
/// reported in [`ParsedCorpus::warnings`]. A stream that ends inside a
/// record (fields pending, no `ER`) is an error carrying the line number
/// where that record starts.
pub fn parse_isi(input: &str) -> Result<ParsedCorpus, CorpusError> {
    let input = input.strip_prefix('\u{feff}').unwrap_or(input);
    let mut out = ParsedCorpus::default();
    let mut seen_ids = HashSet::new();
    let mut block = Block::default();
    let mut ordinal = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("   ") {
            if !block.continue_field(rest.trim()) {
                return Err(CorpusError::Parse {
                    line: lineno,
                    message: "continuation line outside a record".into(),
                });
            }
            continue;
        }
        let Some((tag, value)) = field_tag(line) else {
            return Err(CorpusError::Parse {
                line: lineno,
                message: format!("expected a two-letter field tag, found {line:?}"),
            });
        };
        match &tag {
            b"FN" | b"VR" if !block.has_fields => {}
            b"EF" => {
                if block.has_fields {
                    return Err(unterminated(&block));
                }
                return Ok(out);
            }
            b"ER" => {
                ordinal += 1;
                let finished = std::mem::take(&mut block);
                finish_block(finished, lineno, ordinal, &mut seen_ids, &mut out);
            }
            _ => {
                if !block.has_fields {
                    block.start_line = lineno;
                }
                block.start_field(tag, value);
            }
        }
    }
    if block.has_fields {
        return Err(unterminated(&block));
    }
    Ok(out)
}

/// Serialize records as an ISI export, one line per field. Line breaks
/// inside field values become spaces.
pub fn write_isi(records: &[Record]) -> String {
    let mut out = String::from("FN Thomson Reuters Web of Science\nVR 1.0\n");
    let flat = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
    for r in records {
        out.push_str("PT J\n");
        out.push_str(&format!("TI {}\n", flat(&r.title)));
        if !r.source.trim().is_empty() {
            out.push_str(&format!("SO {}\n", flat(&r.source)));
        }
        if !r.abstract_text.trim().is_empty() {
            out.push_str(&format!("AB {}\n", flat(&r.abstract_text)));
        }
        out.push_str(&format!("PY {}\n", r.year));
        out.push_str(&format!("UT {}\nER\n\n", flat(&r.id)));
    }
    out.push_str("EF\n");
    out
}

fn unterminated(block: &Block) -> CorpusError {
    CorpusError::Parse {
        line: block.start_line,
        message: "record is not terminated by ER before end of input".into(),
    }
}

fn finish_block(block: Block, er_line: usize, ordinal: usize, seen_ids: &mut HashSet<String>, out: &mut ParsedCorpus) {
    let line = if block.has_fields { block.start_line } else { er_line };
    let (title, year) = match check_fields(block.title.as_deref(), block.year.as_deref()) {
        Ok(v) => v,
        Err(reason) => {
            out.skip(line, reason);
            return;
        }
    };
    let id = match block.id.map(|s| s.trim().to_string()) {
        Some(ut) if !ut.is_empty() => ut,
        _ => generated_id(ordinal),
    };
    if !seen_ids.insert(id.clone()) {
        out.skip(line, format!("duplicate record id {id:?}"));
        return;
    }
    out.records.push(Record {
        id,
        title,
        abstract_text: block.abstract_text.unwrap_or_default().trim().to_string(),
        year,
        source: block.source.unwrap_or_default().trim().to_string(),
    });
}
