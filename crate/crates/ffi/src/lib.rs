//! C ABI for the topicmap pipeline.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every function returns a
//! [`TmStatus`]; on failure [`tm_last_error`] describes what went wrong.
//! Strings returned through out-parameters are owned by the caller and
//! must be released with [`tm_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use topicmap::cluster::{build_cluster_graph, cluster_terms, ClusterGraph, RelationWeights};
use topicmap::config::PipelineConfig;
use topicmap::corpus::{parse_isi, parse_jsonl, ParsedCorpus, Record};
use topicmap::mapout::{write_graphml, write_pajek, CluMode};
use topicmap::termex::{index_corpus, ExtractConfig, Lexicon, Term, TermIndex};
use topicmap::variants::{build_graph, classify, RelationConfig, RelationKind, SynLex, TermGraph};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    Io = 5,
    InvalidArgument = 6,
    Pipeline = 7,
    Panic = 99,
}

/// Relation between two terms, as reported by [`tm_detect_relation`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmRelation {
    None = 0,
    Spelling = 1,
    Synonymy = 2,
    ModifierExpansion = 3,
    HeadExpansion = 4,
    ModifierSubstitution = 5,
    HeadSubstitution = 6,
}

impl From<RelationKind> for TmRelation {
    fn from(k: RelationKind) -> Self {
        match k {
            RelationKind::Spelling => TmRelation::Spelling,
            RelationKind::Synonymy => TmRelation::Synonymy,
            RelationKind::ModifierExpansion => TmRelation::ModifierExpansion,
            RelationKind::HeadExpansion => TmRelation::HeadExpansion,
            RelationKind::ModifierSubstitution => TmRelation::ModifierSubstitution,
            RelationKind::HeadSubstitution => TmRelation::HeadSubstitution,
        }
    }
}

/// Parsed bibliographic records.
pub struct TmCorpus {
    records: Vec<Record>,
    skipped: usize,
}

/// Indexed terms of a corpus.
pub struct TmTermIndex {
    index: TermIndex,
}

/// Terms linked by variation relations.
pub struct TmTermGraph {
    graph: TermGraph,
}

/// Clusters and the links between them.
pub struct TmClusterGraph {
    graph: ClusterGraph,
}

struct Failure(TmStatus, String);

type FfiResult<T> = Result<T, Failure>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal error: {msg}"));
            TmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure(TmStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(TmStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Failure(TmStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, name: &str) -> FfiResult<&'a mut T> {
    p.as_mut()
        .ok_or_else(|| Failure(TmStatus::NullPointer, format!("{name} is null")))
}

fn owned_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(TmStatus::InvalidArgument, "output contains a NUL byte".into()))
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn corpus_from(parsed: Result<ParsedCorpus, topicmap::corpus::CorpusError>, out: &mut *mut TmCorpus) -> FfiResult<()> {
    let parsed = parsed.map_err(|e| Failure(TmStatus::Parse, e.to_string()))?;
    *out = Box::into_raw(Box::new(TmCorpus {
        records: parsed.records,
        skipped: parsed.skipped,
    }));
    Ok(())
}

/// Parse ISI tagged-field text.
#[no_mangle]
pub unsafe extern "C" fn tm_corpus_from_isi(text: *const c_char, out: *mut *mut TmCorpus) -> TmStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        corpus_from(parse_isi(str_arg(text, "text")?), out)
    })
}

/// Parse JSON Lines records.
#[no_mangle]
pub unsafe extern "C" fn tm_corpus_from_jsonl(text: *const c_char, out: *mut *mut TmCorpus) -> TmStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        corpus_from(parse_jsonl(str_arg(text, "text")?), out)
    })
}

/// Number of records kept and skipped during parsing.
#[no_mangle]
pub unsafe extern "C" fn tm_corpus_counts(
    corpus: *const TmCorpus,
    records: *mut usize,
    skipped: *mut usize,
) -> TmStatus {
    guard(|| {
        let c = handle(corpus, "corpus")?;
        *out_ptr(records, "records")? = c.records.len();
        *out_ptr(skipped, "skipped")? = c.skipped;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_corpus_free(corpus: *mut TmCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Extract terms with the bundled lexicons. `max_term_len` and
/// `min_doc_freq` must be at least 1.
#[no_mangle]
pub unsafe extern "C" fn tm_extract(
    corpus: *const TmCorpus,
    max_term_len: usize,
    min_doc_freq: usize,
    out: *mut *mut TmTermIndex,
) -> TmStatus {
    guard(|| {
        let c = handle(corpus, "corpus")?;
        let out = out_ptr(out, "out")?;
        if max_term_len == 0 || min_doc_freq == 0 {
            return Err(Failure(
                TmStatus::InvalidArgument,
                "max_term_len and min_doc_freq must be at least 1".into(),
            ));
        }
        let cfg = ExtractConfig {
            max_term_len,
            min_doc_freq,
            ..ExtractConfig::default()
        };
        let index = index_corpus(&c.records, &Lexicon::bundled(), &cfg);
        *out = Box::into_raw(Box::new(TmTermIndex { index }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_term_index_len(index: *const TmTermIndex, len: *mut usize) -> TmStatus {
    guard(|| {
        *out_ptr(len, "len")? = handle(index, "index")?.index.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_term_index_free(index: *mut TmTermIndex) {
    if !index.is_null() {
        drop(Box::from_raw(index));
    }
}

/// Detect all relation kinds with the bundled synonym sets.
#[no_mangle]
pub unsafe extern "C" fn tm_build_graph(index: *const TmTermIndex, out: *mut *mut TmTermGraph) -> TmStatus {
    guard(|| {
        let idx = handle(index, "index")?;
        let out = out_ptr(out, "out")?;
        let graph = build_graph(&idx.index, &SynLex::bundled(), &RelationConfig::default());
        *out = Box::into_raw(Box::new(TmTermGraph { graph }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_term_graph_counts(
    graph: *const TmTermGraph,
    terms: *mut usize,
    edges: *mut usize,
) -> TmStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        *out_ptr(terms, "terms")? = g.graph.term_count();
        *out_ptr(edges, "edges")? = g.graph.edge_count();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_term_graph_free(graph: *mut TmTermGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Cluster with default weights. A negative `merge_threshold` keeps the
/// default threshold.
#[no_mangle]
pub unsafe extern "C" fn tm_cluster(
    graph: *const TmTermGraph,
    merge_threshold: f64,
    out: *mut *mut TmClusterGraph,
) -> TmStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let out = out_ptr(out, "out")?;
        let mut w = RelationWeights::default();
        if merge_threshold >= 0.0 {
            w.merge_threshold = merge_threshold;
        }
        w.validate().map_err(|e| Failure(TmStatus::InvalidArgument, e))?;
        let clusters = cluster_terms(&g.graph, &w);
        let graph = build_cluster_graph(clusters, &g.graph).map_err(|e| Failure(TmStatus::Pipeline, e))?;
        *out = Box::into_raw(Box::new(TmClusterGraph { graph }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_cluster_graph_len(graph: *const TmClusterGraph, len: *mut usize) -> TmStatus {
    guard(|| {
        *out_ptr(len, "len")? = handle(graph, "graph")?.graph.len();
        Ok(())
    })
}

/// Label and size of the cluster at `position` (label order).
#[no_mangle]
pub unsafe extern "C" fn tm_cluster_graph_get(
    graph: *const TmClusterGraph,
    position: usize,
    label: *mut *mut c_char,
    size: *mut usize,
) -> TmStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let label = out_ptr(label, "label")?;
        let size = out_ptr(size, "size")?;
        let c = g.graph.clusters().get(position).ok_or_else(|| {
            Failure(
                TmStatus::InvalidArgument,
                format!("position {position} out of range for {} clusters", g.graph.len()),
            )
        })?;
        *size = c.size();
        *label = owned_string(c.label.clone())?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_cluster_graph_free(graph: *mut TmClusterGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Pajek `.net`, `.clu` and `.vec` texts. `component_partition` selects
/// connected components instead of singletons for `.clu`.
#[no_mangle]
pub unsafe extern "C" fn tm_write_pajek(
    graph: *const TmClusterGraph,
    component_partition: bool,
    net: *mut *mut c_char,
    clu: *mut *mut c_char,
    vec: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let (net, clu, vec) = (out_ptr(net, "net")?, out_ptr(clu, "clu")?, out_ptr(vec, "vec")?);
        let mode = if component_partition {
            CluMode::Component
        } else {
            CluMode::Singleton
        };
        let files = write_pajek(&g.graph, mode).map_err(|e| Failure(TmStatus::Pipeline, e.to_string()))?;
        let n = owned_string(files.net)?;
        let c = owned_string(files.clu)?;
        let v = owned_string(files.vec)?;
        (*net, *clu, *vec) = (n, c, v);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tm_write_graphml(graph: *const TmClusterGraph, out: *mut *mut c_char) -> TmStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let out = out_ptr(out, "out")?;
        *out = owned_string(write_graphml(&g.graph))?;
        Ok(())
    })
}

/// Relation between two normalized terms (lowercase, space separated),
/// using the bundled synonym sets.
#[no_mangle]
pub unsafe extern "C" fn tm_detect_relation(a: *const c_char, b: *const c_char, out: *mut TmRelation) -> TmStatus {
    guard(|| {
        let term = |p, name| -> FfiResult<Term> {
            Term::parse(str_arg(p, name)?).map_err(|e| Failure(TmStatus::InvalidArgument, format!("{name}: {e}")))
        };
        let (ta, tb) = (term(a, "a")?, term(b, "b")?);
        let out = out_ptr(out, "out")?;
        *out = classify(&ta, &tb, &SynLex::bundled()).map_or(TmRelation::None, |r| r.kind.into());
        Ok(())
    })
}

/// Run the whole pipeline for a config file. A null `out_dir` uses the
/// directory named in the config.
#[no_mangle]
pub unsafe extern "C" fn tm_run_pipeline(config_path: *const c_char, out_dir: *const c_char) -> TmStatus {
    guard(|| {
        let path = str_arg(config_path, "config_path")?;
        let cfg = PipelineConfig::load(Path::new(path)).map_err(|e| Failure(TmStatus::Config, e.to_string()))?;
        let out = if out_dir.is_null() {
            cfg.output_dir()
        } else {
            str_arg(out_dir, "out_dir")?.into()
        };
        topicmap::run_pipeline(&cfg, &out).map_err(|e| {
            let status = match e.stage {
                topicmap::pipeline::Stage::Config | topicmap::pipeline::Stage::Usage => TmStatus::Config,
                topicmap::pipeline::Stage::Ingest => TmStatus::Parse,
                topicmap::pipeline::Stage::Io => TmStatus::Io,
                _ => TmStatus::Pipeline,
            };
            Failure(status, e.to_string())
        })?;
        Ok(())
    })
}
