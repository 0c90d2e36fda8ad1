//! One JSON object per line: `{"id", "title", "abstract", "year", "source"}`.

use std::collections::HashSet;

use serde_json::Value;

use super::{check_fields, generated_id, CorpusError, ParsedCorpus, Record};

fn text_field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Option<&'a str> {
    obj.get(key).and_then(Value::as_str)
}

/// Parse JSON-lines records. Blank lines are ignored; the skip rules are
/// the same as for ISI input. A line that is not a JSON object is an error.
pub fn parse_jsonl(input: &str) -> Result<ParsedCorpus, CorpusError> {
    let input = input.strip_prefix('\u{feff}').unwrap_or(input);
    let mut out = ParsedCorpus::default();
    let mut seen = HashSet::new();
    let mut ordinal = 0usize;
    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        ordinal += 1;
        let value: Value = serde_json::from_str(line).map_err(|e| CorpusError::Parse {
            line: lineno,
            message: format!("malformed JSON: {e}"),
        })?;
        let Value::Object(obj) = value else {
            return Err(CorpusError::Parse {
                line: lineno,
                message: "expected a JSON object".into(),
            });
        };
        let year_text = match obj.get("year") {
            Some(Value::Number(n)) => Some(n.to_string()),
            Some(Value::String(s)) => Some(s.clone()),
            _ => None,
        };
        let (title, year) = match check_fields(text_field(&obj, "title"), year_text.as_deref()) {
            Ok(v) => v,
            Err(reason) => {
                out.skip(lineno, reason);
                continue;
            }
        };
        let id = match text_field(&obj, "id").map(str::trim) {
            Some(id) if !id.is_empty() => id.to_string(),
            _ => generated_id(ordinal),
        };
        if !seen.insert(id.clone()) {
            out.skip(lineno, format!("duplicate record id {id:?}"));
            continue;
        }
        out.records.push(Record {
            id,
            title,
            abstract_text: text_field(&obj, "abstract").unwrap_or("").trim().to_string(),
            year,
            source: text_field(&obj, "source").unwrap_or("").trim().to_string(),
        });
    }
    Ok(out)
}

/// Serialize records as JSON lines, one per record, `\n` terminated.
pub fn write_jsonl(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        // Record serialization cannot fail: plain strings and integers only.
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_line_has_empty_abstract() {
        let parsed = parse_jsonl(r#"{"id":"r1","title":"Thesaurus construction","year":1990,"source":"KO"}"#).unwrap();
        assert_eq!(
            parsed.records,
            vec![Record {
                id: "r1".into(),
                title: "Thesaurus construction".into(),
                abstract_text: String::new(),
                year: 1990,
                source: "KO".into(),
            }]
        );
    }

    #[test]
    fn blank_lines_are_ignored() {
        let text = "\n{\"id\":\"a\",\"title\":\"A\",\"year\":1990,\"source\":\"KO\"}\n   \n\n{\"id\":\"b\",\"title\":\"B\",\"year\":\"1991\",\"source\":\"KO\"}\n";
        let parsed = parse_jsonl(text).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.records[1].year, 1991);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "{\"id\":\"a\",\"title\":\"A\",\"year\":1990}\n\n{not json\n";
        assert!(matches!(parse_jsonl(text), Err(CorpusError::Parse { line: 3, .. })));
        assert!(matches!(parse_jsonl("[1,2]"), Err(CorpusError::Parse { line: 1, .. })));
    }

    #[test]
    fn missing_title_or_year_skips() {
        let text = "{\"id\":\"a\",\"year\":1990}\n{\"id\":\"b\",\"title\":\"B\"}\n{\"id\":\"c\",\"title\":\"C\",\"year\":2000}\n";
        let parsed = parse_jsonl(text).unwrap();
        assert_eq!(parsed.records.len(), 1);
        assert_eq!(parsed.skipped, 2);
    }
}
