//! Seeded synthetic corpora: a small two-period demo corpus built from
//! knowledge-organization term families, and larger random corpora for
//! load testing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{PeriodSpec, Record};

/// Seed used for the bundled demo corpus.
pub const DEMO_SEED: u64 = 1988;

/// The two periods of the demo corpus.
pub fn demo_periods() -> Vec<PeriodSpec> {
    vec![
        PeriodSpec::new("1988-1997", 1988, 1997),
        PeriodSpec::new("1998-2008", 1998, 2008),
    ]
}

struct Family {
    /// Bare head noun, used where a sentence needs a single word.
    single: Option<&'static str>,
    phrases: &'static [&'static str],
}

const CLASSIFICATION: Family = Family {
    single: Some("classification"),
    phrases: &[
        "library classification",
        "faceted classification",
        "universal classification",
        "bibliographic classification",
        "classification scheme",
        "classification schemes",
        "universal classification scheme",
        "generic classification scheme",
        "classification research",
        "decimal classification",
        "hierarchical classification",
        "subject classification",
        "automatic classification",
        "multilingual classification",
    ],
};

const KNOWLEDGE_ORGANIZATION: Family = Family {
    single: None,
    phrases: &[
        "knowledge organization",
        "knowledge organization system",
        "knowledge organization systems",
        "knowledge organization tool",
        "knowledge organization number",
    ],
};

const THESAURUS: Family = Family {
    single: Some("thesaurus"),
    phrases: &[
        "thesaurus construction",
        "multilingual thesaurus",
        "multilingual thesauri",
        "thesaurus design",
    ],
};

const INDEXING: Family = Family {
    single: Some("indexing"),
    phrases: &[
        "subject indexing",
        "automatic indexing",
        "indexing language",
        "subject heading",
        "subject headings",
    ],
};

const CATALOG: Family = Family {
    single: None,
    phrases: &[
        "library catalogue",
        "library catalog",
        "online catalog",
        "catalog record",
    ],
};

const RETRIEVAL: Family = Family {
    single: Some("retrieval"),
    phrases: &[
        "information retrieval",
        "retrieval system",
        "information retrieval system",
        "retrieval performance",
    ],
};

const METADATA: Family = Family {
    single: Some("metadata"),
    phrases: &[
        "descriptive metadata",
        "metadata quality",
        "metadata model",
        "metadata standard",
        "metadata standards",
        "bibliographic metadata",
        "semantic metadata",
    ],
};

const WEB: Family = Family {
    single: Some("web"),
    phrases: &[
        "semantic web",
        "web designer",
        "web document",
        "web documents",
        "web page",
    ],
};

const FOLKSONOMY: Family = Family {
    single: Some("folksonomy"),
    phrases: &["social tagging", "folksonomy tag", "folksonomies"],
};

const VOCABULARY: Family = Family {
    single: Some("vocabulary"),
    phrases: &[
        "controlled vocabulary",
        "gay-lesbian classification vocabulary",
        "classification vocabulary",
    ],
};

const ONTOLOGY: Family = Family {
    single: Some("ontology"),
    phrases: &["domain ontology", "ontology language", "ontologies"],
};

const FIRST_DECADE: &[(&Family, u32)] = &[
    (&CLASSIFICATION, 6),
    (&KNOWLEDGE_ORGANIZATION, 3),
    (&THESAURUS, 3),
    (&INDEXING, 3),
    (&CATALOG, 2),
    (&RETRIEVAL, 2),
];

const SECOND_DECADE: &[(&Family, u32)] = &[
    (&CLASSIFICATION, 5),
    (&KNOWLEDGE_ORGANIZATION, 3),
    (&METADATA, 4),
    (&WEB, 3),
    (&FOLKSONOMY, 2),
    (&VOCABULARY, 2),
    (&ONTOLOGY, 2),
    (&THESAURUS, 1),
];

const SOURCES: &[&str] = &[
    "KNOWLEDGE ORGANIZATION",
    "JOURNAL OF DOCUMENTATION",
    "CATALOGING & CLASSIFICATION QUARTERLY",
    "JOURNAL OF THE AMERICAN SOCIETY FOR INFORMATION SCIENCE",
    "LIBRARY RESOURCES & TECHNICAL SERVICES",
];

const VERBS: &[&str] = &[
    "discuss", "examine", "describe", "analyze", "propose", "evaluate", "present",
];
const LINK_VERBS: &[&str] = &["supports", "improves", "extends", "enhances"];
const ADJECTIVES: &[&str] = &["central", "important", "useful"];

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

fn pick_family<'a>(rng: &mut ChaCha8Rng, table: &[(&'a Family, u32)]) -> &'a Family {
    let total: u32 = table.iter().map(|(_, w)| w).sum();
    let mut x = rng.gen_range(0..total);
    for (f, w) in table {
        if x < *w {
            return f;
        }
        x -= w;
    }
    table[0].0
}

fn phrase(rng: &mut ChaCha8Rng, f: &Family) -> String {
    (*f.phrases.choose(rng).expect("families are non-empty")).to_string()
}

fn single(rng: &mut ChaCha8Rng, f: &Family) -> String {
    f.single.map_or_else(|| phrase(rng, f), str::to_string)
}

fn sentence(rng: &mut ChaCha8Rng, main: &Family, other: &Family) -> String {
    let a = phrase(rng, main);
    let b = phrase(rng, other);
    let verb = *VERBS.choose(rng).expect("non-empty");
    match rng.gen_range(0..6) {
        0 => format!("We {verb} {a} and {b}."),
        1 => format!(
            "{} is {} to {a}.",
            capitalize(&single(rng, main)),
            ADJECTIVES.choose(rng).expect("non-empty")
        ),
        2 => format!(
            "It is shown that {a} {} {b}.",
            LINK_VERBS.choose(rng).expect("non-empty")
        ),
        3 => format!("{} is compared with {b}.", capitalize(&a)),
        4 => format!("Finally we {verb} {a} for {b}."),
        _ => format!(
            "We argue that {} remains {} for {b}.",
            single(rng, main),
            ADJECTIVES.choose(rng).expect("non-empty")
        ),
    }
}

fn record(rng: &mut ChaCha8Rng, ordinal: usize, year: i32, table: &[(&Family, u32)]) -> Record {
    let main = pick_family(rng, table);
    let other = if rng.gen_bool(0.6) {
        &CLASSIFICATION
    } else {
        pick_family(rng, table)
    };
    let title = if rng.gen_bool(0.5) {
        capitalize(&phrase(rng, main))
    } else {
        format!("{} and {}", capitalize(&phrase(rng, main)), phrase(rng, other))
    };
    let n = rng.gen_range(3..=5);
    let abstract_text = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                sentence(rng, main, other)
            } else {
                sentence(rng, other, main)
            }
        })
        .collect::<Vec<_>>()
        .join(" ");
    Record {
        id: format!("WOS:SYN{ordinal:06}"),
        title,
        abstract_text,
        year,
        source: SOURCES.choose(rng).expect("non-empty").to_string(),
    }
}

/// The demo corpus: 56 records in 1988-1997, 60 in 1998-2008 and 4
/// outside both periods. Terms about metadata and the web occur only in
/// the second period.
pub fn demo_records(seed: u64) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |rng: &mut ChaCha8Rng, year: i32, table: &[(&Family, u32)]| {
        let ordinal = out.len() + 1;
        out.push(record(rng, ordinal, year, table));
    };
    for year in [1985, 1986] {
        push(&mut rng, year, FIRST_DECADE);
    }
    for i in 0..56 {
        push(&mut rng, 1988 + (i % 10), FIRST_DECADE);
    }
    for i in 0..60 {
        push(&mut rng, 1998 + (i % 11), SECOND_DECADE);
    }
    for year in [2009, 2010] {
        push(&mut rng, year, SECOND_DECADE);
    }
    out
}

const PERF_MODIFIERS: &[&str] = &[
    "knowledge",
    "information",
    "classification",
    "subject",
    "library",
    "user",
    "data",
    "concept",
    "term",
    "document",
    "text",
    "citation",
    "author",
    "journal",
    "music",
    "archive",
    "web",
    "metadata",
    "search",
    "query",
    "network",
    "domain",
    "language",
    "word",
    "topic",
    "science",
    "research",
    "index",
    "catalog",
    "record",
    "category",
    "map",
    "model",
    "policy",
    "memory",
    "history",
    "survey",
    "field",
    "practice",
    "theory",
    "access",
    "design",
    "quality",
    "relation",
    "structure",
    "retrieval",
    "reader",
    "portal",
];

const PERF_ADJECTIVES: &[&str] = &[
    "universal",
    "generic",
    "general",
    "specific",
    "traditional",
    "modern",
    "faceted",
    "hierarchical",
    "multilingual",
    "interdisciplinary",
    "digital",
    "online",
    "semantic",
    "lexical",
    "formal",
    "empirical",
    "conceptual",
    "bibliographic",
    "social",
    "visual",
    "textual",
    "controlled",
    "shared",
    "distributed",
    "integrated",
    "linked",
    "automated",
    "structured",
    "national",
    "international",
];

const PERF_HEADS: &[&str] = &[
    "system",
    "scheme",
    "tool",
    "model",
    "standard",
    "structure",
    "approach",
    "method",
    "analysis",
    "theory",
    "framework",
    "language",
    "vocabulary",
    "thesaurus",
    "ontology",
    "taxonomy",
    "index",
    "catalog",
    "database",
    "network",
    "map",
    "cluster",
    "service",
    "interface",
    "process",
    "practice",
    "policy",
    "strategy",
    "technology",
    "methodology",
    "design",
    "quality",
    "access",
    "retrieval",
    "indexing",
    "mapping",
    "tagging",
    "browsing",
    "ranking",
    "clustering",
];

/// `n` random abstracts spread over 1988-2008. Phrases are drawn from a
/// fixed pool with a skewed distribution so that many recur.
pub fn perf_records(n: usize, seed: u64) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<String> = (0..4000)
        .map(|_| {
            let mut words = Vec::new();
            if rng.gen_bool(0.5) {
                words.push(*PERF_ADJECTIVES.choose(&mut rng).expect("non-empty"));
            }
            for _ in 0..rng.gen_range(1..=2) {
                words.push(*PERF_MODIFIERS.choose(&mut rng).expect("non-empty"));
            }
            words.push(*PERF_HEADS.choose(&mut rng).expect("non-empty"));
            words.join(" ")
        })
        .collect();
    let draw = |rng: &mut ChaCha8Rng| -> String {
        let u: f64 = rng.gen();
        pool[((u * u) * pool.len() as f64) as usize].clone()
    };
    (0..n)
        .map(|i| {
            let title = capitalize(&draw(&mut rng));
            let sentences: Vec<String> = (0..rng.gen_range(5..=8))
                .map(|_| {
                    let (a, b) = (draw(&mut rng), draw(&mut rng));
                    let verb = VERBS.choose(&mut rng).expect("non-empty");
                    match rng.gen_range(0..3) {
                        0 => format!("We {verb} {a} and {b}."),
                        1 => format!("{} is compared with {b}.", capitalize(&a)),
                        _ => format!(
                            "It is shown that {a} {} {b}.",
                            LINK_VERBS.choose(&mut rng).expect("non-empty")
                        ),
                    }
                })
                .collect();
            Record {
                id: format!("WOS:PERF{:07}", i + 1),
                title,
                abstract_text: sentences.join(" "),
                year: 1988 + (i % 21) as i32,
                source: SOURCES.choose(&mut rng).expect("non-empty").to_string(),
            }
        })
        .collect()
}
