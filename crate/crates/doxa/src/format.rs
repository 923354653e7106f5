//! JSON structure and market files.
//!
//! Rationals are `p/q` strings. Maps keep file order, and file order fixes
//! state and player order everywhere downstream.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use doxa_core::market::{MarketConfig, Trader};
use doxa_core::rational::parse_rational;
use doxa_core::structures::realize_probabilistic;
use doxa_core::{
    BeliefStructure, Distribution, Error as CoreError, Partition, ProbabilisticBeliefStructure, Rational, State,
    StateSet, StateSpace,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {path}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0}; expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: Box<CoreError>,
    },
    #[error("{path}: {message}")]
    Shape { path: String, message: String },
}

fn invalid(path: impl Into<String>) -> impl FnOnce(CoreError) -> FormatError {
    let path = path.into();
    move |source| FormatError::Invalid {
        path,
        source: Box::new(source),
    }
}

fn shape(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Shape {
        path: path.into(),
        message: message.into(),
    }
}

type Cells = Vec<Vec<String>>;
type Masses = IndexMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    format_version: u32,
    states: Vec<String>,
    players: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    types: Option<IndexMap<String, IndexMap<String, Masses>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partitions: Option<IndexMap<String, Cells>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beliefs: Option<IndexMap<String, Cells>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistortionDoc {
    from: Vec<String>,
    to: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarketDoc {
    format_version: u32,
    states: Vec<String>,
    players: Vec<String>,
    partitions: IndexMap<String, Cells>,
    /// Uniform when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prior: Option<Masses>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    distortions: IndexMap<String, Vec<DistortionDoc>>,
    event: Vec<String>,
    threshold: String,
    true_state: String,
    max_rounds: usize,
}

fn parse_doc<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        FormatError::Syntax {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| FormatError::Syntax {
        path: ".".into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(value)
}

fn check_version(version: u32) -> Result<(), FormatError> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(FormatError::Version(version))
    }
}

fn state_set(space: &StateSpace, names: &[String], path: &str) -> Result<StateSet, FormatError> {
    space.set_of(names.iter().map(String::as_str)).map_err(invalid(path))
}

fn rational(text: &str, path: &str) -> Result<Rational, FormatError> {
    parse_rational(text).map_err(invalid(path))
}

fn sparse_distribution(space: &StateSpace, masses: &Masses, path: &str) -> Result<Distribution, FormatError> {
    let mut dense = vec![doxa_core::rational::zero(); space.len()];
    for (name, mass) in masses {
        let here = format!("{path}.{name}");
        let s = space.lookup(name).map_err(invalid(&here))?;
        dense[s.0] = rational(mass, &here)?;
    }
    Distribution::new(space, dense).map_err(invalid(path))
}

fn per_player<'a, T>(
    players: &[String],
    map: &'a IndexMap<String, T>,
    field: &str,
) -> Result<Vec<&'a T>, FormatError> {
    if let Some(extra) = map.keys().find(|k| !players.contains(k)) {
        return Err(FormatError::Invalid {
            path: format!("{field}.{extra}"),
            source: Box::new(CoreError::UnknownPlayer(extra.clone())),
        });
    }
    players
        .iter()
        .map(|p| map.get(p).ok_or_else(|| shape(format!("{field}.{p}"), "missing entry for player")))
        .collect()
}

fn partition(space: &StateSpace, cells: &Cells, path: &str) -> Result<Partition, FormatError> {
    let sets = cells
        .iter()
        .enumerate()
        .map(|(k, c)| state_set(space, c, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::from_cells(space, sets).map_err(invalid(path))
}

/// Parses a structure file in either the `types` or the `partitions` form.
pub fn read_structure(text: &str) -> Result<ProbabilisticBeliefStructure, FormatError> {
    let doc: StructureDoc = parse_doc(text)?;
    check_version(doc.format_version)?;
    let space = StateSpace::new(doc.states.iter().cloned()).map_err(invalid("states"))?;
    match (&doc.types, &doc.partitions) {
        (Some(types), None) => {
            if doc.beliefs.is_some() {
                return Err(shape("beliefs", "only allowed together with partitions"));
            }
            let rows = per_player(&doc.players, types, "types")?;
            let mut all = Vec::with_capacity(rows.len());
            for (player, row) in doc.players.iter().zip(rows) {
                if let Some(extra) = row.keys().find(|k| space.lookup(k).is_err()) {
                    return Err(FormatError::Invalid {
                        path: format!("types.{player}.{extra}"),
                        source: Box::new(CoreError::UnknownState(extra.clone())),
                    });
                }
                let mut dists = Vec::with_capacity(space.len());
                for name in &doc.states {
                    let path = format!("types.{player}.{name}");
                    let masses = row.get(name).ok_or_else(|| shape(&path, "missing type"))?;
                    dists.push(sparse_distribution(&space, masses, &path)?);
                }
                all.push(dists);
            }
            ProbabilisticBeliefStructure::new(space, doc.players.clone(), all).map_err(invalid("types"))
        }
        (None, Some(partitions)) => {
            let cells = per_player(&doc.players, partitions, "partitions")?;
            let empty = IndexMap::new();
            let beliefs = doc.beliefs.as_ref().unwrap_or(&empty);
            if let Some(extra) = beliefs.keys().find(|k| !doc.players.contains(k)) {
                return Err(FormatError::Invalid {
                    path: format!("beliefs.{extra}"),
                    source: Box::new(CoreError::UnknownPlayer(extra.clone())),
                });
            }
            let mut agents = Vec::with_capacity(cells.len());
            for (player, c) in doc.players.iter().zip(cells) {
                let part = partition(&space, c, &format!("partitions.{player}"))?;
                let b = match beliefs.get(player) {
                    Some(list) => list
                        .iter()
                        .enumerate()
                        .map(|(k, c)| state_set(&space, c, &format!("beliefs.{player}[{k}]")))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => part.cells().to_vec(),
                };
                agents.push((part, b));
            }
            let bs = BeliefStructure::from_belief_cells(space, doc.players.clone(), agents)
                .map_err(invalid("beliefs"))?;
            Ok(realize_probabilistic(&bs))
        }
        (Some(_), Some(_)) => Err(shape(".", "give either types or partitions, not both")),
        (None, None) => Err(shape(".", "missing types or partitions")),
    }
}

/// Canonical `types` form. Zero masses are omitted.
pub fn write_structure(pbs: &ProbabilisticBeliefStructure) -> String {
    let space = pbs.space();
    let mut types = IndexMap::new();
    for i in pbs.players() {
        let mut row = IndexMap::new();
        for s in space.states() {
            let masses: Masses = space
                .states()
                .filter_map(|t| {
                    let m = pbs.type_at(i, s).mass(t);
                    (*m != doxa_core::rational::zero()).then(|| (space.name(t).to_string(), m.to_string()))
                })
                .collect();
            row.insert(space.name(s).to_string(), masses);
        }
        types.insert(pbs.player_name(i).to_string(), row);
    }
    let doc = StructureDoc {
        format_version: FORMAT_VERSION,
        states: space.names().to_vec(),
        players: pbs.player_names().to_vec(),
        types: Some(types),
        partitions: None,
        beliefs: None,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn read_market(text: &str) -> Result<MarketConfig, FormatError> {
    let doc: MarketDoc = parse_doc(text)?;
    check_version(doc.format_version)?;
    let space = StateSpace::new(doc.states.iter().cloned()).map_err(invalid("states"))?;
    let cells = per_player(&doc.players, &doc.partitions, "partitions")?;
    if let Some(extra) = doc.distortions.keys().find(|k| !doc.players.contains(k)) {
        return Err(FormatError::Invalid {
            path: format!("distortions.{extra}"),
            source: Box::new(CoreError::UnknownPlayer(extra.clone())),
        });
    }
    let mut traders = Vec::with_capacity(cells.len());
    for (player, c) in doc.players.iter().zip(cells) {
        let part = partition(&space, c, &format!("partitions.{player}"))?;
        let mut trader = Trader::honest(player.clone(), part);
        for (k, d) in doc.distortions.get(player).into_iter().flatten().enumerate() {
            let path = format!("distortions.{player}[{k}]");
            let find = |names: &[String], field: &str| -> Result<usize, FormatError> {
                let set = state_set(&space, names, &format!("{path}.{field}"))?;
                trader
                    .partition
                    .cells()
                    .iter()
                    .position(|cell| *cell == set)
                    .ok_or_else(|| shape(format!("{path}.{field}"), "not a cell of the player's partition"))
            };
            let (from, to) = (find(&d.from, "from")?, find(&d.to, "to")?);
            trader.distortion[from] = to;
        }
        traders.push(trader);
    }
    let prior = match &doc.prior {
        Some(masses) => sparse_distribution(&space, masses, "prior")?,
        None => Distribution::uniform(&space),
    };
    let event = state_set(&space, &doc.event, "event")?;
    let threshold = rational(&doc.threshold, "threshold")?;
    let truth = space.lookup(&doc.true_state).map_err(invalid("true_state"))?;
    MarketConfig::new(space, prior, traders, event, threshold, truth, doc.max_rounds).map_err(invalid("."))
}

/// Canonical market form: explicit prior, identity distortions omitted.
pub fn write_market(config: &MarketConfig) -> String {
    let space = config.space();
    let names = |set: &StateSet| -> Vec<String> { set.iter().map(|s| space.name(*s).to_string()).collect() };
    let mut partitions = IndexMap::new();
    let mut distortions = IndexMap::new();
    for t in config.traders() {
        let cells = t.partition.cells();
        partitions.insert(t.name.clone(), cells.iter().map(names).collect());
        let moved: Vec<DistortionDoc> = t
            .distortion
            .iter()
            .enumerate()
            .filter(|(k, d)| k != *d)
            .map(|(k, d)| DistortionDoc {
                from: names(&cells[k]),
                to: names(&cells[*d]),
            })
            .collect();
        if !moved.is_empty() {
            distortions.insert(t.name.clone(), moved);
        }
    }
    let prior = space
        .states()
        .filter(|s| *config.prior().mass(*s) != doxa_core::rational::zero())
        .map(|s| (space.name(s).to_string(), config.prior().mass(s).to_string()))
        .collect();
    let doc = MarketDoc {
        format_version: FORMAT_VERSION,
        states: space.names().to_vec(),
        players: config.traders().iter().map(|t| t.name.clone()).collect(),
        partitions,
        prior: Some(prior),
        distortions,
        event: names(config.event()),
        threshold: config.threshold().to_string(),
        true_state: space.name(config.true_state()).to_string(),
        max_rounds: config.max_rounds(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    out.push('\n');
    out
}

/// Looks a state up by name, for command-line arguments.
pub fn state_named(space: &StateSpace, name: &str) -> Result<State, FormatError> {
    space.lookup(name).map_err(invalid("--state"))
}
