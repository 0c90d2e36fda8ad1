//! Term extraction: tokenization, lexicon tagging, noun-phrase matching,
//! normalization and corpus indexing.

mod extract;
mod index;
mod lexicon;
mod normalize;
mod tagger;
mod term;
mod tokenize;

use rayon::prelude::*;

pub use extract::{extract_terms, ExtractConfig, TermOccurrence};
pub use index::{index_terms, TermCounts, TermIndex, TermStats};
pub use lexicon::{apply_rules, Lexicon, LexiconError, PluralRules, PosLexicon, PosTag};
pub use normalize::{normalize_phrase, normalize_term};
pub use tagger::{pos_tag, suffix_tag, tag_word, Token};
pub use term::{Term, TermError};
pub use tokenize::{tokenize, RawToken};

use crate::corpus::Record;

/// Tokenize, tag and match one analysis text.
pub fn extract_text(text: &str, lexicon: &Lexicon, cfg: &ExtractConfig) -> Vec<TermOccurrence> {
    let tagged: Vec<Vec<Token>> = tokenize(text).iter().map(|s| pos_tag(s, lexicon)).collect();
    extract_terms(&tagged, cfg, &lexicon.plurals)
}

/// Unfiltered counts for one record.
pub fn record_counts(record: &Record, lexicon: &Lexicon, cfg: &ExtractConfig) -> TermCounts {
    let mut counts = TermCounts::default();
    for occ in extract_text(&record.analysis_text(), lexicon, cfg) {
        counts.add(occ.term, &record.id);
    }
    counts
}

/// Extract and index a whole corpus. Records are processed in parallel on
/// the current rayon pool; the result does not depend on thread count or
/// record order.
pub fn index_corpus(records: &[Record], lexicon: &Lexicon, cfg: &ExtractConfig) -> TermIndex {
    records
        .par_iter()
        .map(|r| record_counts(r, lexicon, cfg))
        .reduce(TermCounts::default, TermCounts::merge)
        .finalize(cfg.min_doc_freq)
}
