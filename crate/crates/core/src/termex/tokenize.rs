/// A token as cut from the text, before tagging.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawToken {
    pub surface: String,
    /// Character (not byte) offset of the first character in the input.
    pub start: usize,
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}')
}

/// Split text into sentences of word tokens.
///
/// Sentences end at `.`, `?`, `!` or `;` followed by whitespace or the end
/// of the text. Tokens are maximal alphanumeric runs; a hyphen or
/// apostrophe between two alphanumeric characters is kept inside the
/// token, so `gay-lesbian` stays whole.
pub fn tokenize(text: &str) -> Vec<Vec<RawToken>> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut sentence: Vec<RawToken> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_alphanumeric() {
            let start = i;
            let mut end = i + 1;
            loop {
                if end < chars.len() && chars[end].is_alphanumeric() {
                    end += 1;
                } else if end + 1 < chars.len() && is_joiner(chars[end]) && chars[end + 1].is_alphanumeric() {
                    end += 2;
                } else {
                    break;
                }
            }
            sentence.push(RawToken {
                surface: chars[start..end].iter().collect(),
                start,
            });
            i = end;
            continue;
        }
        if matches!(c, '.' | '?' | '!' | ';')
            && chars.get(i + 1).is_none_or(|n| n.is_whitespace())
            && !sentence.is_empty()
        {
            sentences.push(std::mem::take(&mut sentence));
        }
        i += 1;
    }
    if !sentence.is_empty() {
        sentences.push(sentence);
    }
    sentences
}
