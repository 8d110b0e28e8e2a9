use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::walkers::WalkKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gen,
    Cover,
    Trajectory,
    Spectra,
    RootSet,
    UrnTest,
    Validate,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::Cover => "cover",
            Command::Trajectory => "trajectory",
            Command::Spectra => "spectra",
            Command::RootSet => "rootset",
            Command::UrnTest => "urn-test",
            Command::Validate => "validate",
            Command::Sweep => "sweep",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "gen" => Command::Gen,
            "cover" => Command::Cover,
            "trajectory" => Command::Trajectory,
            "spectra" => Command::Spectra,
            "rootset" => Command::RootSet,
            "urn-test" | "urntest" => Command::UrnTest,
            "validate" => Command::Validate,
            "sweep" => Command::Sweep,
            _ => return None,
        })
    }
}

/// A point along the walk: unexplored edge fraction `delta`, or edge count `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Checkpoint {
    Delta(f64),
    Edges(usize),
}

impl Checkpoint {
    /// `delta` written with a decimal point or exponent, `t` as an integer;
    /// `delta:` and `t:` prefixes force either reading.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Usage(format!("bad checkpoint `{s}`"));
        let cp = if let Some(v) = s.strip_prefix("delta:") {
            Checkpoint::Delta(v.parse().map_err(|_| bad())?)
        } else if let Some(v) = s.strip_prefix("t:") {
            Checkpoint::Edges(v.parse().map_err(|_| bad())?)
        } else if s.contains(['.', 'e', 'E']) {
            Checkpoint::Delta(s.parse().map_err(|_| bad())?)
        } else {
            Checkpoint::Edges(s.parse().map_err(|_| bad())?)
        };
        match cp {
            Checkpoint::Delta(x) if !(x > 0.0 && x <= 1.0) => Err(Error::Usage(format!("checkpoint delta {x} outside (0, 1]"))),
            Checkpoint::Edges(0) => Err(Error::Usage("checkpoint t must be at least 1".into())),
            _ => Ok(cp),
        }
    }

    /// Edge count on a graph with `num_edges` edges.
    pub fn edges(self, num_edges: usize) -> Result<usize> {
        match self {
            Checkpoint::Delta(delta) => Ok(((1.0 - delta) * num_edges as f64).round() as usize),
            Checkpoint::Edges(t) if t <= num_edges => Ok(t),
            Checkpoint::Edges(t) => Err(Error::Usage(format!("checkpoint t = {t} exceeds the {num_edges} edges"))),
        }
    }
}

/// Keys accepted in config files and as flags.
pub const PLAN_KEYS: &[&str] = &[
    "n",
    "d",
    "kind",
    "trials",
    "seed",
    "checkpoints",
    "out",
    "threads",
    "quick",
    "resample-disconnected",
    "decimation",
    "emit-plot-script",
    "synthetic",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub command: Command,
    pub n: Vec<usize>,
    pub d: Vec<usize>,
    pub kinds: Vec<WalkKind>,
    pub trials: usize,
    pub seed: u64,
    pub checkpoints: Vec<Checkpoint>,
    pub out: Option<PathBuf>,
    pub resample_disconnected: bool,
    /// Sample stride for the `X_i` series of cover and sweep walks.
    pub decimation: usize,
    pub threads: Option<usize>,
    pub quick: bool,
    pub emit_plot_script: bool,
    /// `urn-test` only: feed urn draws instead of walks.
    pub synthetic: bool,
}

impl ExperimentPlan {
    pub fn new(command: Command) -> Self {
        ExperimentPlan {
            command,
            n: vec![1000],
            d: vec![3],
            kinds: vec![WalkKind::BiasedEdgeProcess],
            trials: 10,
            seed: 1,
            checkpoints: Vec::new(),
            out: None,
            resample_disconnected: true,
            decimation: 1,
            threads: None,
            quick: false,
            emit_plot_script: false,
            synthetic: false,
        }
    }

    /// Applies `pairs` in order; a repeated key takes its last value.
    pub fn from_pairs<K: AsRef<str>, V: AsRef<str>>(command: Command, pairs: &[(K, V)]) -> Result<Self> {
        let mut plan = ExperimentPlan::new(command);
        for (k, v) in pairs {
            plan.set(k.as_ref(), v.as_ref())?;
        }
        plan.check()?;
        Ok(plan)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let bad = |what: &str| Error::Usage(format!("key `{key}`: {what} `{value}`"));
        match key.trim() {
            "n" => self.n = parse_list(value).map_err(|_| bad("expected a list of integers, got"))?,
            "d" => self.d = parse_list(value).map_err(|_| bad("expected a list of integers, got"))?,
            "kind" => {
                self.kinds = value
                    .split(',')
                    .map(|s| WalkKind::parse(s.trim()).ok_or_else(|| bad("unknown walk kind in")))
                    .collect::<Result<_>>()?
            }
            "trials" => self.trials = value.parse().map_err(|_| bad("expected an integer, got"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("expected an integer, got"))?,
            "checkpoints" => {
                self.checkpoints = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(Checkpoint::parse)
                    .collect::<Result<_>>()?
            }
            "out" => self.out = (!value.is_empty() && value != "-").then(|| PathBuf::from(value)),
            "threads" => self.threads = Some(value.parse().map_err(|_| bad("expected an integer, got"))?),
            "quick" => self.quick = parse_bool(value).ok_or_else(|| bad("expected a boolean, got"))?,
            "resample-disconnected" => {
                self.resample_disconnected = parse_bool(value).ok_or_else(|| bad("expected a boolean, got"))?
            }
            "decimation" => self.decimation = value.parse().map_err(|_| bad("expected an integer, got"))?,
            "emit-plot-script" => self.emit_plot_script = parse_bool(value).ok_or_else(|| bad("expected a boolean, got"))?,
            "synthetic" => self.synthetic = parse_bool(value).ok_or_else(|| bad("expected a boolean, got"))?,
            other => return Err(Error::Usage(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("key `trials`: must be at least 1".into()));
        }
        if self.decimation == 0 {
            return Err(Error::Usage("key `decimation`: must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Usage("key `threads`: must be at least 1".into()));
        }
        if self.n.is_empty() || self.d.is_empty() || self.kinds.is_empty() {
            return Err(Error::Usage("keys `n`, `d` and `kind` need at least one value".into()));
        }
        for &n in &self.n {
            for &d in &self.d {
                if n < 2 || d == 0 || (n * d) % 2 == 1 {
                    return Err(Error::Usage(format!("keys `n`/`d`: n = {n}, d = {d} needs n >= 2, d >= 1 and d n even")));
                }
            }
        }
        if self.emit_plot_script && self.out.is_none() {
            return Err(Error::Usage("key `emit-plot-script` needs `out`".into()));
        }
        Ok(())
    }
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            msg: "expected `key = value`".into(),
        })?;
        let k = k.trim();
        if !PLAN_KEYS.contains(&k) {
            return Err(Error::Usage(format!("unknown key `{k}` on line {}", i + 1)));
        }
        pairs.push((k.to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, ()> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_count(t.trim()))
        .collect()
}

/// Integers, also written as `1e5`.
fn parse_count(s: &str) -> std::result::Result<usize, ()> {
    if let Ok(v) = s.parse() {
        return Ok(v);
    }
    let x: f64 = s.parse().map_err(|_| ())?;
    if x >= 0.0 && x.fract() == 0.0 && x < 1e15 {
        Ok(x as usize)
    } else {
        Err(())
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "" | "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}
