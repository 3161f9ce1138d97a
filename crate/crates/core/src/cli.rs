//! JSON spec documents, command implementations and report rendering for
//! the `densecode` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::capacity::{
    capacity_report, noisy_ghz_dc_threshold, werner_dc_threshold, CapacityReport, Root,
};
use crate::criteria::{classify, ClassificationReport, ClassifyOptions, ProtocolRegistry};
use crate::encoding::{
    ghz4_ensemble, ghz4_locc_decode, ghz4_protocol_joint, MeasurementOutcomeRecord, GHZ4_ENCODINGS,
};
use crate::error::Error;
use crate::info::mutual_information;
use crate::linalg::{ComplexMatrix, C64, DEFAULT_TOL};
use crate::states::{
    bell, frank_state, ghz, noisy_ghz, singlet, smolin, tensor_states, werner, DenseCodingLayout,
    MultipartiteState, Party,
};

/// Exit code 1: bad input. Exit code 2: numerical failure.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Numerical(_) => "numerical",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn context(field: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| match CliError::from(e) {
        CliError::Input(m) => CliError::Input(format!("{field}: {m}")),
        other => other,
    }
}

/// Either `{constructor, params}` or `{parties, matrix}`. Optional
/// `labels` renames parties and `order` reorders them by label.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Map<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parties: Option<Vec<(String, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

pub const CONSTRUCTORS: [&str; 9] = [
    "bell",
    "singlet",
    "werner",
    "ghz",
    "noisy_ghz",
    "smolin",
    "frank",
    "tensor",
    "explicit",
];

impl StateSpecDocument {
    pub fn constructor(name: &str, params: Value) -> Self {
        Self {
            constructor: Some(name.to_string()),
            params: params.as_object().cloned(),
            ..Default::default()
        }
    }

    pub fn explicit(state: &MultipartiteState) -> Self {
        let m = state.matrix();
        Self {
            constructor: Some("explicit".into()),
            parties: Some(
                state
                    .parties()
                    .iter()
                    .map(|p| (p.label.clone(), p.dim))
                    .collect(),
            ),
            matrix: Some(
                (0..m.rows())
                    .map(|r| {
                        (0..m.cols())
                            .map(|c| [m[(r, c)].re, m[(r, c)].im])
                            .collect()
                    })
                    .collect(),
            ),
            ..Default::default()
        }
    }

    pub fn build(&self, tol: f64) -> Result<MultipartiteState, CliError> {
        let name = self.constructor.as_deref().unwrap_or("explicit");
        let params = self.params.clone().unwrap_or_default();
        let state = match name {
            "explicit" => self.build_explicit(tol)?,
            "bell" => bell(param_usize(&params, "k")?).map_err(context("params.k"))?,
            "singlet" => singlet(),
            "werner" => werner(param_f64(&params, "p")?).map_err(context("params.p"))?,
            "ghz" => ghz(param_usize(&params, "n")?).map_err(context("params.n"))?,
            "noisy_ghz" => noisy_ghz(param_usize(&params, "n")?, param_f64(&params, "p")?)
                .map_err(context("params"))?,
            "smolin" => smolin(),
            "frank" => frank_state(),
            "tensor" => {
                let parts = params
                    .get("states")
                    .and_then(Value::as_array)
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| input("params.states: expected an array of two state specs"))?;
                let mut built = Vec::new();
                for (i, p) in parts.iter().enumerate() {
                    let doc: StateSpecDocument = serde_json::from_value(p.clone())
                        .map_err(|e| input(format!("params.states[{i}]: {e}")))?;
                    built.push(doc.build(tol)?);
                }
                tensor_states(&built[0], &built[1]).map_err(context("params.states"))?
            }
            other => {
                return Err(input(format!(
                    "constructor: unknown `{other}` (expected one of {})",
                    CONSTRUCTORS.join(", ")
                )))
            }
        };
        let state = match &self.labels {
            Some(l) => state.relabel(l).map_err(context("labels"))?,
            None => state,
        };
        match &self.order {
            Some(o) => state.reorder_by_labels(o).map_err(context("order")),
            None => Ok(state),
        }
    }

    fn build_explicit(&self, tol: f64) -> Result<MultipartiteState, CliError> {
        let parties = self
            .parties
            .as_ref()
            .ok_or_else(|| input("parties: required for explicit states"))?;
        let rows = self
            .matrix
            .as_ref()
            .ok_or_else(|| input("matrix: required for explicit states"))?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(input(format!(
                    "matrix[{r}]: expected {n} entries, got {}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
        }
        let m = ComplexMatrix::from_vec(n, n, data).map_err(context("matrix"))?;
        let parties = parties
            .iter()
            .map(|(l, d)| Party::new(l.clone(), *d))
            .collect();
        MultipartiteState::new(parties, m, tol).map_err(context("matrix"))
    }
}

fn param<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    params
        .get(key)
        .ok_or_else(|| input(format!("params.{key}: missing")))
}

fn param_f64(params: &Map<String, Value>, key: &str) -> Result<f64, CliError> {
    param(params, key)?
        .as_f64()
        .ok_or_else(|| input(format!("params.{key}: expected a number")))
}

fn param_usize(params: &Map<String, Value>, key: &str) -> Result<usize, CliError> {
    param(params, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| input(format!("params.{key}: expected a non-negative integer")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutSpecDocument {
    pub senders: Vec<String>,
    pub receivers: Vec<String>,
    #[serde(default)]
    pub routing: BTreeMap<String, String>,
}

impl LayoutSpecDocument {
    pub fn build(&self) -> Result<DenseCodingLayout, CliError> {
        DenseCodingLayout::new(
            self.senders.clone(),
            self.receivers.clone(),
            self.routing.clone(),
        )
        .map_err(context("layout"))
    }
}

impl From<&DenseCodingLayout> for LayoutSpecDocument {
    fn from(l: &DenseCodingLayout) -> Self {
        Self {
            senders: l.senders().to_vec(),
            receivers: l.receivers().to_vec(),
            routing: l.routing().clone(),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| input(format!("{what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{what} {}: {e}", path.display())))
}

pub fn load_state(path: &Path, tol: f64) -> Result<MultipartiteState, CliError> {
    read_json::<StateSpecDocument>(path, "state spec")?.build(tol)
}

pub fn load_layout(path: &Path) -> Result<DenseCodingLayout, CliError> {
    read_json::<LayoutSpecDocument>(path, "layout spec")?.build()
}

pub fn cmd_capacity(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
) -> Result<CapacityReport, CliError> {
    Ok(capacity_report(state, layout)?)
}

pub fn cmd_classify(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
    all_cuts: bool,
    tol: f64,
) -> Result<ClassificationReport, CliError> {
    Ok(classify(
        state,
        layout,
        &ProtocolRegistry::default(),
        ClassifyOptions { tol, all_cuts },
    )?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchSummary {
    pub probability: f64,
    /// `(round, side, projector, probability)` per measurement.
    pub outcomes: Vec<(usize, String, usize, f64)>,
    pub decoded_message: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MessageRun {
    pub message: usize,
    pub encoding: (usize, usize),
    pub branches: Vec<BranchSummary>,
    pub decoded_correctly: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ghz4Transcript {
    pub runs: Vec<MessageRun>,
    pub correct: usize,
    pub total: usize,
    /// Mutual information of the full eight-message ensemble.
    pub mutual_information: f64,
    pub summary: String,
}

fn summarize(message: usize, records: &[MeasurementOutcomeRecord]) -> MessageRun {
    let branches: Vec<BranchSummary> = records
        .iter()
        .map(|r| BranchSummary {
            probability: r.probability,
            outcomes: r
                .outcomes
                .iter()
                .map(|o| (o.round, o.side.clone(), o.projector, o.probability))
                .collect(),
            decoded_message: (r.decoded.len() == 2)
                .then(|| {
                    GHZ4_ENCODINGS
                        .iter()
                        .position(|&(a, b)| a == r.decoded[0] && b == r.decoded[1])
                })
                .flatten(),
        })
        .collect();
    let decoded_correctly = branches.iter().all(|b| b.decoded_message == Some(message));
    MessageRun {
        message,
        encoding: GHZ4_ENCODINGS[message],
        branches,
        decoded_correctly,
    }
}

pub fn cmd_simulate_ghz4(message: Option<usize>) -> Result<Ghz4Transcript, CliError> {
    let messages: Vec<usize> = match message {
        Some(k) if k < 8 => vec![k],
        Some(k) => return Err(input(format!("--message: {k} is outside 0..7"))),
        None => (0..8).collect(),
    };
    let mut runs = Vec::new();
    for k in messages {
        runs.push(summarize(k, &ghz4_locc_decode(k)?));
    }
    let mi = mutual_information(&ghz4_protocol_joint(&ghz4_ensemble())?);
    Ok(Ghz4Transcript {
        summary: format!("I = {mi:.6} bits"),
        correct: runs.iter().filter(|r| r.decoded_correctly).count(),
        total: runs.len(),
        runs,
        mutual_information: mi,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub family: String,
    pub root: f64,
    pub bracket: [f64; 2],
    pub residual: f64,
    pub iterations: usize,
}

impl ThresholdReport {
    /// Root with seven decimals and its bracket.
    pub fn render_table(&self) -> String {
        format!(
            "family      {}\nroot        {:.7}\nbracket     [{:.7}, {:.7}]\nresidual    {:.6e}\niterations  {}\n",
            self.family, self.root, self.bracket[0], self.bracket[1], self.residual, self.iterations
        )
    }

    fn new(family: &str, r: Root) -> Self {
        Self {
            family: family.to_string(),
            root: r.root,
            bracket: [r.lo, r.hi],
            residual: r.residual,
            iterations: r.iterations,
        }
    }
}

/// Default two-receiver layout for `n` qubits: senders alternate between
/// `B1` and `B2`.
pub fn default_ghz_layout(n: usize) -> Result<DenseCodingLayout, CliError> {
    if n < 3 {
        return Err(input(format!("params.n: need n >= 3, got {n}")));
    }
    let senders: Vec<String> = (1..=n - 2).map(|i| format!("A{i}")).collect();
    let (odd, even): (Vec<_>, Vec<_>) = senders.iter().enumerate().partition(|(i, _)| i % 2 == 0);
    let odd: Vec<&str> = odd.into_iter().map(|(_, s)| s.as_str()).collect();
    let even: Vec<&str> = even.into_iter().map(|(_, s)| s.as_str()).collect();
    Ok(DenseCodingLayout::two(&odd, "B1", &even, "B2")?)
}

pub fn cmd_threshold(family: &str, params: Option<&Value>) -> Result<ThresholdReport, CliError> {
    let params = match params {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(input("--params: expected a JSON object")),
    };
    match family {
        "werner" => Ok(ThresholdReport::new(family, werner_dc_threshold()?)),
        "noisy-ghz" => {
            let n = match params.get("n") {
                None => 4,
                Some(_) => param_usize(&params, "n")?,
            };
            let layout = match params.get("layout") {
                None => default_ghz_layout(n)?,
                Some(v) => serde_json::from_value::<LayoutSpecDocument>(v.clone())
                    .map_err(|e| input(format!("params.layout: {e}")))?
                    .build()?,
            };
            Ok(ThresholdReport::new(
                family,
                noisy_ghz_dc_threshold(n, &layout)?,
            ))
        }
        other => Err(input(format!(
            "--family: unknown `{other}` (expected werner or noisy-ghz)"
        ))),
    }
}

/// State or layout given either inline or as a path relative to the
/// manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecRef<T> {
    Path(String),
    Inline(T),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub state: SpecRef<StateSpecDocument>,
    #[serde(default)]
    pub layout: Option<SpecRef<LayoutSpecDocument>>,
    pub command: String,
    #[serde(default)]
    pub all_cuts: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(default)]
    pub tol: Option<f64>,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryError {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub index: usize,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<EntryError>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
}

pub fn load_manifest(path: &Path) -> Result<Manifest, CliError> {
    read_json(path, "manifest")
}

fn resolve<T: serde::de::DeserializeOwned + Clone>(
    r: &SpecRef<T>,
    base: &Path,
    what: &str,
) -> Result<T, CliError> {
    match r {
        SpecRef::Inline(t) => Ok(t.clone()),
        SpecRef::Path(p) => {
            let p = PathBuf::from(p);
            let full = if p.is_absolute() { p } else { base.join(p) };
            read_json(&full, what)
        }
    }
}

fn run_entry(entry: &ManifestEntry, base: &Path, tol: f64) -> Result<Value, CliError> {
    let needs_layout = || -> Result<DenseCodingLayout, CliError> {
        let l = entry
            .layout
            .as_ref()
            .ok_or_else(|| input("layout: required for this command"))?;
        resolve(l, base, "layout spec")?.build()
    };
    let to_value = |v: Result<Value, serde_json::Error>| {
        v.map_err(|e| CliError::Numerical(format!("serialization: {e}")))
    };
    match entry.command.as_str() {
        "capacity" => {
            let s = resolve(&entry.state, base, "state spec")?.build(tol)?;
            to_value(serde_json::to_value(cmd_capacity(&s, &needs_layout()?)?))
        }
        "classify" => {
            let s = resolve(&entry.state, base, "state spec")?.build(tol)?;
            to_value(serde_json::to_value(cmd_classify(
                &s,
                &needs_layout()?,
                entry.all_cuts,
                tol,
            )?))
        }
        other => Err(input(format!(
            "command: unknown `{other}` (expected capacity or classify)"
        ))),
    }
}

/// Runs every manifest entry on `jobs` worker threads; output order follows
/// the manifest.
pub fn cmd_batch(manifest: &Manifest, base: &Path, jobs: usize) -> Result<BatchReport, CliError> {
    let tol = manifest.tol.unwrap_or(DEFAULT_TOL);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))?;
    let entries = pool.install(|| {
        manifest
            .entries
            .par_iter()
            .enumerate()
            .map(|(index, e)| match run_entry(e, base, tol) {
                Ok(v) => BatchEntry {
                    index,
                    command: e.command.clone(),
                    result: Some(v),
                    error: None,
                },
                Err(err) => BatchEntry {
                    index,
                    command: e.command.clone(),
                    result: None,
                    error: Some(EntryError {
                        kind: err.kind().to_string(),
                        message: err.message().to_string(),
                    }),
                },
            })
            .collect()
    });
    Ok(BatchReport { entries })
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::Number(n) => {
            let s = match (n.as_i64(), n.as_f64()) {
                (Some(i), _) => i.to_string(),
                (None, Some(f)) => format!("{f:.6}"),
                _ => n.to_string(),
            };
            out.push((prefix.to_string(), s));
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Null => out.push((prefix.to_string(), "-".into())),
    }
}

/// Two-column aligned table of every leaf in a JSON report; floats carry
/// six decimals.
pub fn render_table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (k, val) in rows {
        let pad = width - k.chars().count();
        let _ = writeln!(out, "{k}{}  {val}", " ".repeat(pad));
    }
    out
}
