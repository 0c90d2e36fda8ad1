//! End-to-end pipeline and the individual stages behind the CLI
//! subcommands. Every stage writes versioned text dumps into
//! `<out>/<period label>/`, so running the stages one after another
//! produces the same bytes as [`run_pipeline`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cluster::{build_cluster_graph, cluster_terms, select_for_display, Cluster, ClusterGraph};
use crate::config::{InputFormat, OutputFormat, PipelineConfig};
use crate::corpus::{corpus_stats, parse_isi, parse_jsonl, split_periods, PeriodSpec, Record};
use crate::dump;
use crate::mapout::{compare_periods, write_graphml, write_pajek, ComparisonReport, PeriodReport};
use crate::termex::{index_corpus, Lexicon, TermIndex};
use crate::variants::{build_graph, SynLex, TermGraph};

pub const RECORDS_FILE: &str = "records.jsonl";
pub const TERMS_FILE: &str = "terms.tsv";
pub const EDGES_FILE: &str = "edges.tsv";
pub const CLUSTERS_FILE: &str = "clusters.tsv";
pub const REPORT_FILE: &str = "report.json";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Usage,
    Config,
    Ingest,
    Extract,
    Graph,
    Cluster,
    Export,
    Compare,
    Io,
}

impl Stage {
    /// Process exit status for a failure in this stage.
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Usage => 2,
            Stage::Config => 3,
            Stage::Ingest => 10,
            Stage::Extract => 11,
            Stage::Graph => 12,
            Stage::Cluster => 13,
            Stage::Export => 14,
            Stage::Compare => 15,
            Stage::Io => 20,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Stage::Usage => "usage",
            Stage::Config => "config",
            Stage::Ingest => "ingest",
            Stage::Extract => "extract",
            Stage::Graph => "graph",
            Stage::Cluster => "cluster",
            Stage::Export => "export",
            Stage::Compare => "compare",
            Stage::Io => "io",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("{stage} error: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
}

impl PipelineError {
    pub fn new(stage: Stage, message: impl Into<String>) -> Self {
        Self {
            stage,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.stage.exit_code()
    }
}

fn fail<E: fmt::Display>(stage: Stage) -> impl Fn(E) -> PipelineError {
    move |e| PipelineError::new(stage, e.to_string())
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> PipelineError + '_ {
    move |e| PipelineError::new(Stage::Io, format!("{}: {e}", path.display()))
}

fn read_text(path: &Path, stage: Stage) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|e| PipelineError::new(stage, format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), PipelineError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    fs::write(path, text).map_err(io_err(path))
}

/// Lexicons named in the config, or the bundled ones.
pub struct Resources {
    pub lexicon: Lexicon,
    pub synlex: SynLex,
}

impl Resources {
    pub fn load(cfg: &PipelineConfig) -> Result<(Self, Vec<String>), PipelineError> {
        let lex = &cfg.lexicons;
        let pos = lex.pos.as_ref().map(|p| cfg.resolve(p));
        let plurals = lex.plurals.as_ref().map(|p| cfg.resolve(p));
        let lexicon = Lexicon::load(pos.as_deref(), plurals.as_deref()).map_err(fail(Stage::Config))?;
        let mut warnings = Vec::new();
        let synlex = match &lex.synsets {
            Some(p) => {
                let path = cfg.resolve(p);
                let (syn, w) = SynLex::load(&path)
                    .map_err(|e| PipelineError::new(Stage::Config, format!("{}: {e}", path.display())))?;
                warnings.extend(
                    w.into_iter()
                        .map(|w| format!("{} line {}: {}", path.display(), w.line, w.message)),
                );
                syn
            }
            None => SynLex::bundled(),
        };
        Ok((Self { lexicon, synlex }, warnings))
    }
}

/// Records of one period after ingest.
pub struct PeriodRecords {
    pub spec: PeriodSpec,
    pub records: Vec<Record>,
}

pub struct Ingested {
    pub periods: Vec<PeriodRecords>,
    pub unassigned: usize,
    pub skipped: usize,
    pub warnings: Vec<String>,
}

fn detect_format(path: &Path, configured: InputFormat) -> InputFormat {
    match configured {
        InputFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json" | "ndjson") => InputFormat::Jsonl,
            _ => InputFormat::Isi,
        },
        f => f,
    }
}

/// Read every input file and split the records into periods.
pub fn ingest(cfg: &PipelineConfig) -> Result<Ingested, PipelineError> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut skipped = 0;
    let mut warnings = Vec::new();
    for path in cfg.input_paths() {
        let text = read_text(&path, Stage::Ingest)?;
        let parsed = match detect_format(&path, cfg.input.format) {
            InputFormat::Jsonl => parse_jsonl(&text),
            _ => parse_isi(&text),
        }
        .map_err(|e| PipelineError::new(Stage::Ingest, format!("{}: {e}", path.display())))?;
        skipped += parsed.skipped;
        for w in parsed.warnings {
            warnings.push(format!(
                "{} line {}: record skipped: {}",
                path.display(),
                w.line,
                w.message
            ));
        }
        for r in parsed.records {
            if seen.insert(r.id.clone()) {
                records.push(r);
            } else {
                skipped += 1;
                warnings.push(format!("{}: duplicate record id {:?} skipped", path.display(), r.id));
            }
        }
    }
    let split = split_periods(&records, &cfg.periods).map_err(fail(Stage::Config))?;
    Ok(Ingested {
        periods: split
            .periods
            .into_iter()
            .map(|(spec, records)| PeriodRecords { spec, records })
            .collect(),
        unassigned: split.unassigned.len(),
        skipped,
        warnings,
    })
}

pub fn extract(records: &[Record], res: &Resources, cfg: &PipelineConfig) -> TermIndex {
    index_corpus(records, &res.lexicon, &cfg.extract)
}

pub fn graph(index: &TermIndex, res: &Resources, cfg: &PipelineConfig) -> TermGraph {
    build_graph(index, &res.synlex, &cfg.relation_config())
}

pub fn cluster(g: &TermGraph, cfg: &PipelineConfig) -> Vec<Cluster> {
    cluster_terms(g, &cfg.relation_weights())
}

/// Maps and report for one period, as `(file name, contents)` pairs.
pub struct Exported {
    pub files: Vec<(String, String)>,
    pub report: PeriodReport,
    pub full: ClusterGraph,
    pub display: ClusterGraph,
}

pub fn export(
    records: &[Record],
    g: &TermGraph,
    clusters: Vec<Cluster>,
    spec: &PeriodSpec,
    cfg: &PipelineConfig,
) -> Result<Exported, PipelineError> {
    let full = build_cluster_graph(clusters, g).map_err(fail(Stage::Export))?;
    let display = select_for_display(&full, cfg.display.top_k, cfg.display.min_size);
    let report = PeriodReport::new(&full, &corpus_stats(records), spec)
        .map_err(|e| PipelineError::new(Stage::Export, format!("period {:?}: {e}", spec.label)))?;
    let mut files = Vec::new();
    let formats = &cfg.output.formats;
    if formats.contains(&OutputFormat::Pajek) {
        let pajek = write_pajek(&display, cfg.display.clu_mode)
            .map_err(|e| PipelineError::new(Stage::Export, format!("period {:?}: {e}", spec.label)))?;
        files.push(("map.net".to_string(), pajek.net));
        files.push(("map.clu".to_string(), pajek.clu));
        files.push(("map.vec".to_string(), pajek.vec));
    }
    if formats.contains(&OutputFormat::Graphml) {
        files.push(("map.graphml".to_string(), write_graphml(&display)));
    }
    if formats.contains(&OutputFormat::Json) {
        files.push((REPORT_FILE.to_string(), report.to_json()));
    }
    Ok(Exported {
        files,
        report,
        full,
        display,
    })
}

pub fn comparison_file_name(r: &ComparisonReport) -> String {
    format!("compare_{}_{}.json", r.period_1, r.period_2)
}

/// Comparisons of each report with the next one.
pub fn compare_adjacent(reports: &[PeriodReport]) -> Result<Vec<ComparisonReport>, PipelineError> {
    reports
        .windows(2)
        .map(|w| compare_periods(&w[0], &w[1]).map_err(fail(Stage::Compare)))
        .collect()
}

/// Checksums of a finished run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub format: String,
    pub version: u32,
    pub config_sha256: String,
    /// Relative artifact path → SHA-256 of its bytes.
    pub artifacts: BTreeMap<String, String>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSummary {
    pub label: String,
    pub records: usize,
    pub terms: usize,
    pub edges: usize,
    pub clusters: usize,
    pub displayed: usize,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub periods: Vec<PeriodSummary>,
    pub unassigned: usize,
    pub skipped: usize,
    pub warnings: Vec<String>,
    pub manifest: Manifest,
}

fn report_warnings(warnings: &[String]) {
    for w in warnings {
        log::warn!("{w}");
    }
}

fn staging_dir(out: &Path) -> PathBuf {
    let name = out
        .file_name()
        .map_or_else(|| "out".into(), |n| n.to_string_lossy().into_owned());
    let parent = out
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    static SEQ: AtomicUsize = AtomicUsize::new(0);
    let seq = SEQ.fetch_add(1, Ordering::Relaxed);
    parent.join(format!(".{name}.partial-{}-{seq}", std::process::id()))
}

/// Move every staged file into `out`, replacing files of the same name.
fn commit(staging: &Path, out: &Path, files: &BTreeMap<String, String>) -> Result<(), PipelineError> {
    for rel in files.keys() {
        let from = staging.join(rel);
        let to = out.join(rel);
        if let Some(parent) = to.parent() {
            fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
        fs::rename(&from, &to).map_err(io_err(&to))?;
    }
    fs::remove_dir_all(staging).map_err(io_err(staging))
}

/// Artifact contents keyed by path relative to the output directory.
pub type Artifacts = BTreeMap<String, String>;

/// All artifacts of a run.
pub fn build_artifacts(cfg: &PipelineConfig) -> Result<(Artifacts, Vec<PeriodSummary>, Ingested), PipelineError> {
    let (res, mut warnings) = Resources::load(cfg)?;
    warnings.extend(cfg.warnings());
    let mut ingested = ingest(cfg)?;
    warnings.append(&mut ingested.warnings);
    if ingested.unassigned > 0 {
        warnings.push(format!("{} records fall outside every period", ingested.unassigned));
    }
    report_warnings(&warnings);
    ingested.warnings = warnings;

    let mut files = BTreeMap::new();
    let mut reports = Vec::new();
    let mut summaries = Vec::new();
    for p in &ingested.periods {
        let dir = &p.spec.label;
        let index = extract(&p.records, &res, cfg);
        let g = graph(&index, &res, cfg);
        let clusters = cluster(&g, cfg);
        files.insert(format!("{dir}/{RECORDS_FILE}"), dump::write_records(&p.records));
        files.insert(format!("{dir}/{TERMS_FILE}"), dump::write_terms(&index));
        files.insert(format!("{dir}/{EDGES_FILE}"), dump::write_edges(&g));
        files.insert(format!("{dir}/{CLUSTERS_FILE}"), dump::write_clusters(&clusters));
        let exported = export(&p.records, &g, clusters, &p.spec, cfg)?;
        for (name, text) in exported.files {
            files.insert(format!("{dir}/{name}"), text);
        }
        summaries.push(PeriodSummary {
            label: p.spec.label.clone(),
            records: p.records.len(),
            terms: index.len(),
            edges: g.edge_count(),
            clusters: exported.full.len(),
            displayed: exported.display.len(),
        });
        reports.push(exported.report);
    }
    for c in compare_adjacent(&reports)? {
        files.insert(comparison_file_name(&c), c.to_json());
    }
    Ok((files, summaries, ingested))
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Run every stage for every period and write all artifacts plus a
/// manifest into `out`. Output is staged next to `out` and moved into
/// place only when every stage succeeded; on failure nothing is left
/// behind.
pub fn run_pipeline(cfg: &PipelineConfig, out: &Path) -> Result<RunSummary, PipelineError> {
    cfg.validate().map_err(fail(Stage::Config))?;
    let (mut files, periods, ingested) = build_artifacts(cfg)?;
    let manifest = Manifest {
        format: "topicmap-manifest".into(),
        version: 1,
        config_sha256: cfg.semantic_hash(),
        artifacts: files.iter().map(|(k, v)| (k.clone(), sha256_hex(v))).collect(),
    };
    files.insert(MANIFEST_FILE.to_string(), manifest.to_json());

    let staging = staging_dir(out);
    let staged = (|| {
        for (rel, text) in &files {
            write_text(&staging.join(rel), text)?;
        }
        commit(&staging, out, &files)
    })();
    if let Err(e) = staged {
        let _ = fs::remove_dir_all(&staging);
        return Err(e);
    }
    Ok(RunSummary {
        periods,
        unassigned: ingested.unassigned,
        skipped: ingested.skipped,
        warnings: ingested.warnings,
        manifest,
    })
}

// Stage commands. Each reads the previous stage's dumps from `out`.

fn period_dir(out: &Path, spec: &PeriodSpec) -> PathBuf {
    out.join(&spec.label)
}

fn load_stage_inputs(cfg: &PipelineConfig) -> Result<Resources, PipelineError> {
    cfg.validate().map_err(fail(Stage::Config))?;
    let (res, warnings) = Resources::load(cfg)?;
    report_warnings(&warnings);
    Ok(res)
}

fn read_records_dump(dir: &Path, stage: Stage) -> Result<Vec<Record>, PipelineError> {
    let path = dir.join(RECORDS_FILE);
    dump::read_records(&read_text(&path, stage)?)
        .map_err(|e| PipelineError::new(stage, format!("{}: {e}", path.display())))
}

fn read_terms_dump(dir: &Path, stage: Stage) -> Result<TermIndex, PipelineError> {
    let path = dir.join(TERMS_FILE);
    dump::read_terms(&read_text(&path, stage)?)
        .map_err(|e| PipelineError::new(stage, format!("{}: {e}", path.display())))
}

fn read_graph_dump(dir: &Path, stage: Stage) -> Result<TermGraph, PipelineError> {
    let index = read_terms_dump(dir, stage)?;
    let path = dir.join(EDGES_FILE);
    dump::read_edges(&read_text(&path, stage)?, index)
        .map_err(|e| PipelineError::new(stage, format!("{}: {e}", path.display())))
}

/// `ingest`: write each period's records.
pub fn stage_ingest(cfg: &PipelineConfig, out: &Path) -> Result<(), PipelineError> {
    cfg.validate().map_err(fail(Stage::Config))?;
    let ingested = ingest(cfg)?;
    report_warnings(&ingested.warnings);
    for p in &ingested.periods {
        write_text(
            &period_dir(out, &p.spec).join(RECORDS_FILE),
            &dump::write_records(&p.records),
        )?;
    }
    Ok(())
}

/// `extract`: records → terms.
pub fn stage_extract(cfg: &PipelineConfig, out: &Path) -> Result<(), PipelineError> {
    let res = load_stage_inputs(cfg)?;
    for spec in &cfg.periods {
        let dir = period_dir(out, spec);
        let records = read_records_dump(&dir, Stage::Extract)?;
        write_text(&dir.join(TERMS_FILE), &dump::write_terms(&extract(&records, &res, cfg)))?;
    }
    Ok(())
}

/// `graph`: terms → edges.
pub fn stage_graph(cfg: &PipelineConfig, out: &Path) -> Result<(), PipelineError> {
    let res = load_stage_inputs(cfg)?;
    report_warnings(&cfg.warnings());
    for spec in &cfg.periods {
        let dir = period_dir(out, spec);
        let index = read_terms_dump(&dir, Stage::Graph)?;
        write_text(&dir.join(EDGES_FILE), &dump::write_edges(&graph(&index, &res, cfg)))?;
    }
    Ok(())
}

/// `cluster`: terms + edges → clusters.
pub fn stage_cluster(cfg: &PipelineConfig, out: &Path) -> Result<(), PipelineError> {
    load_stage_inputs(cfg)?;
    for spec in &cfg.periods {
        let dir = period_dir(out, spec);
        let g = read_graph_dump(&dir, Stage::Cluster)?;
        write_text(&dir.join(CLUSTERS_FILE), &dump::write_clusters(&cluster(&g, cfg)))?;
    }
    Ok(())
}

/// `export`: records + graph + clusters → maps and report.
pub fn stage_export(cfg: &PipelineConfig, out: &Path) -> Result<(), PipelineError> {
    load_stage_inputs(cfg)?;
    for spec in &cfg.periods {
        let dir = period_dir(out, spec);
        let records = read_records_dump(&dir, Stage::Export)?;
        let g = read_graph_dump(&dir, Stage::Export)?;
        let path = dir.join(CLUSTERS_FILE);
        let clusters = dump::read_clusters(&read_text(&path, Stage::Export)?, g.index())
            .map_err(|e| PipelineError::new(Stage::Export, format!("{}: {e}", path.display())))?;
        for (name, text) in export(&records, &g, clusters, spec, cfg)?.files {
            write_text(&dir.join(name), &text)?;
        }
    }
    Ok(())
}

/// `compare`: period reports → one comparison per adjacent pair, written
/// into `out`. Returns the written paths.
pub fn stage_compare(reports: &[PathBuf], out: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    if reports.len() < 2 {
        return Err(PipelineError::new(
            Stage::Usage,
            format!("compare needs at least two reports, got {}", reports.len()),
        ));
    }
    let parsed = reports
        .iter()
        .map(|p| {
            PeriodReport::from_json(&read_text(p, Stage::Compare)?)
                .map_err(|e| PipelineError::new(Stage::Compare, format!("{}: {e}", p.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut written = Vec::new();
    for c in compare_adjacent(&parsed)? {
        let path = out.join(comparison_file_name(&c));
        write_text(&path, &c.to_json())?;
        written.push(path);
    }
    Ok(written)
}
