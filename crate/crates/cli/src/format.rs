//! Network and function-table files.
//!
//! A network file has four top-level keys:
//!
//! ```json
//! {
//!   "variables": [{"name": "c1", "states": ["false", "true"]}, ...],
//!   "priors": {"c1": [0.7, 0.3]},
//!   "tabular_families": [{"child": "x", "parents": ["c1"], "table": [[0.9, 0.1], [0.2, 0.8]]}],
//!   "ci_families": [{
//!     "effect": "e", "baseline": "false",
//!     "links": [{"cause": "c1", "distinguished": "false", "transition": [[1, 0], [0.2, 0.8]]}],
//!     "combiner": "or", "leak": [0.9, 0.1]
//!   }]
//! }
//! ```
//!
//! Tables list one row per parent combination with the last parent varying
//! fastest; a flat list of numbers is accepted as well. States may be given
//! by label or by index. Combiners are `"or"`, `"max"`, `"sum"`, `"xor"`,
//! `{"binary_table": [[...], ...]}` (row = new summary, column = accumulated
//! value) or `{"table": [...]}` (flat, last argument fastest).

use std::collections::BTreeMap;

use causalnet_core::{
    BinaryTable, CauseLink, CiFamily, Combiner, Family, FunctionTable, Network, TabularCpd, VarId,
    Variable,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{variable}` has no state `{state}`")]
    UnknownState { variable: String, state: String },
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, FormatError>;

/// A state written as a label or as an index.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum StateRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Table {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

impl Table {
    fn flatten(self) -> Vec<f64> {
        match self {
            Table::Rows(rows) => rows.concat(),
            Table::Flat(v) => v,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableDoc {
    name: String,
    states: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TabularDoc {
    child: String,
    #[serde(default)]
    parents: Vec<String>,
    table: Table,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkDoc {
    cause: String,
    distinguished: StateRef,
    transition: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum CombinerTableDoc {
    BinaryTable(Vec<Vec<StateRef>>),
    Table(Vec<StateRef>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CombinerDoc {
    Named(String),
    Table(CombinerTableDoc),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CiDoc {
    effect: String,
    baseline: StateRef,
    links: Vec<LinkDoc>,
    combiner: CombinerDoc,
    #[serde(default)]
    leak: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    variables: Vec<VariableDoc>,
    #[serde(default)]
    priors: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    tabular_families: Vec<TabularDoc>,
    #[serde(default)]
    ci_families: Vec<CiDoc>,
}

struct Names<'a> {
    variables: &'a [Variable],
}

impl Names<'_> {
    fn var(&self, name: &str) -> Result<VarId> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .map(VarId)
            .ok_or_else(|| FormatError::UnknownVariable(name.to_string()))
    }

    fn state(&self, var: VarId, state: &StateRef) -> Result<usize> {
        resolve_state(
            &self.variables[var.0].states,
            &self.variables[var.0].name,
            state,
        )
    }
}

fn resolve_state(states: &[String], variable: &str, state: &StateRef) -> Result<usize> {
    let found = match state {
        StateRef::Index(i) => (*i < states.len()).then_some(*i),
        StateRef::Label(l) => states.iter().position(|s| s == l),
    };
    found.ok_or_else(|| FormatError::UnknownState {
        variable: variable.to_string(),
        state: match state {
            StateRef::Index(i) => i.to_string(),
            StateRef::Label(l) => l.clone(),
        },
    })
}

/// Parses a network file. Families come out ordered by child variable.
pub fn parse_network(text: &str) -> Result<Network> {
    let doc: NetworkDoc = serde_json::from_str(text)?;
    let mut net = Network::new();
    for v in doc.variables {
        net.add_variable(Variable::new(v.name, v.states));
    }
    let names = Names {
        variables: &net.variables.clone(),
    };
    let mut families: Vec<Family> = Vec::new();
    for (name, probs) in doc.priors {
        families.push(Family::Table(TabularCpd::prior(names.var(&name)?, probs)));
    }
    for t in doc.tabular_families {
        let parents = t
            .parents
            .iter()
            .map(|p| names.var(p))
            .collect::<Result<Vec<_>>>()?;
        families.push(Family::Table(TabularCpd {
            child: names.var(&t.child)?,
            parents,
            table: t.table.flatten(),
        }));
    }
    for ci in doc.ci_families {
        let effect = names.var(&ci.effect)?;
        let baseline = names.state(effect, &ci.baseline)?;
        let links = ci
            .links
            .into_iter()
            .map(|l| {
                let cause = names.var(&l.cause)?;
                Ok(CauseLink {
                    cause,
                    distinguished: names.state(cause, &l.distinguished)?,
                    transition: l.transition,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let states = &net.variables[effect.0].states;
        let label = &net.variables[effect.0].name;
        let combiner = parse_combiner(
            ci.combiner,
            states,
            label,
            links.len() + usize::from(ci.leak.is_some()),
        )?;
        families.push(Family::Ci(CiFamily {
            effect,
            baseline,
            links,
            combiner,
            leak: ci.leak,
        }));
    }
    families.sort_by_key(|f| f.child().0);
    net.families = families;
    Ok(net)
}

fn parse_combiner(
    doc: CombinerDoc,
    states: &[String],
    effect: &str,
    arity: usize,
) -> Result<Combiner> {
    let k = states.len();
    let resolve = |s: &StateRef| resolve_state(states, effect, s);
    Ok(match doc {
        CombinerDoc::Named(name) => match name.as_str() {
            "or" => Combiner::Or,
            "max" => Combiner::Max,
            "sum" => Combiner::SaturatingSum,
            "xor" => Combiner::Xor,
            other => return Err(FormatError::Invalid(format!("unknown combiner `{other}`"))),
        },
        CombinerDoc::Table(CombinerTableDoc::BinaryTable(rows)) => {
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(FormatError::Invalid(format!(
                    "binary_table for `{effect}` must be {k}x{k}"
                )));
            }
            let values = rows
                .iter()
                .flatten()
                .map(resolve)
                .collect::<Result<Vec<_>>>()?;
            Combiner::Binary(BinaryTable::from_values(k, values))
        }
        CombinerDoc::Table(CombinerTableDoc::Table(values)) => {
            let values = values.iter().map(resolve).collect::<Result<Vec<_>>>()?;
            Combiner::Table(FunctionTable::from_values(k, arity, values))
        }
    })
}

fn rows(table: &[f64], width: usize) -> Vec<Vec<f64>> {
    table.chunks(width.max(1)).map(<[f64]>::to_vec).collect()
}

fn labels(states: &[String], values: &[usize]) -> Vec<Value> {
    values
        .iter()
        .map(|&v| states.get(v).map_or(json!(v), |s| json!(s)))
        .collect()
}

/// Network as a JSON document in the file format.
pub fn network_to_json(net: &Network) -> Value {
    let variables: Vec<Value> = net
        .variables
        .iter()
        .map(|v| json!({"name": v.name, "states": v.states}))
        .collect();
    let mut priors = serde_json::Map::new();
    let mut tabular = Vec::new();
    let mut ci_families = Vec::new();
    let state_label = |var: VarId, s: usize| -> Value {
        net.variables
            .get(var.0)
            .and_then(|v| v.states.get(s))
            .map_or(json!(s), |l| json!(l))
    };
    for family in &net.families {
        match family {
            Family::Table(cpd) if cpd.parents.is_empty() => {
                priors.insert(net.name(cpd.child).to_string(), json!(cpd.table));
            }
            Family::Table(cpd) => tabular.push(json!({
                "child": net.name(cpd.child),
                "parents": cpd.parents.iter().map(|p| net.name(*p)).collect::<Vec<_>>(),
                "table": rows(&cpd.table, net.cardinality(cpd.child)),
            })),
            Family::Ci(ci) => {
                let states = &net.variable(ci.effect).states;
                let combiner = match &ci.combiner {
                    Combiner::Or => json!("or"),
                    Combiner::Max => json!("max"),
                    Combiner::SaturatingSum => json!("sum"),
                    Combiner::Xor => json!("xor"),
                    Combiner::Binary(t) => json!({
                        "binary_table": t
                            .values()
                            .chunks(t.states().max(1))
                            .map(|r| labels(states, r))
                            .collect::<Vec<_>>()
                    }),
                    Combiner::Table(t) => json!({"table": labels(states, t.values())}),
                };
                let links: Vec<Value> = ci
                    .links
                    .iter()
                    .map(|l| {
                        json!({
                            "cause": net.name(l.cause),
                            "distinguished": state_label(l.cause, l.distinguished),
                            "transition": l.transition,
                        })
                    })
                    .collect();
                ci_families.push(json!({
                    "effect": net.name(ci.effect),
                    "baseline": state_label(ci.effect, ci.baseline),
                    "links": links,
                    "combiner": combiner,
                    "leak": ci.leak,
                }));
            }
        }
    }
    json!({
        "variables": variables,
        "priors": priors,
        "tabular_families": tabular,
        "ci_families": ci_families,
    })
}

/// A combination function on its own, for `classify`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionFile {
    pub states: Vec<String>,
    pub baseline: usize,
    pub table: FunctionTable,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StatesDoc {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDoc {
    states: StatesDoc,
    baseline: StateRef,
    arity: usize,
    table: Vec<StateRef>,
}

/// Parses `{"states", "baseline", "arity", "table"}`; `states` is a count or
/// a list of labels.
pub fn parse_function(text: &str) -> Result<FunctionFile> {
    let doc: FunctionDoc = serde_json::from_str(text)?;
    let states = match doc.states {
        StatesDoc::Count(k) => (0..k).map(|i| i.to_string()).collect(),
        StatesDoc::Labels(l) => l,
    };
    let resolve = |s: &StateRef| resolve_state(&states, "function", s);
    let baseline = resolve(&doc.baseline)?;
    let values = doc.table.iter().map(resolve).collect::<Result<Vec<_>>>()?;
    let expected = states.len().checked_pow(doc.arity as u32);
    if expected != Some(values.len()) {
        return Err(FormatError::Invalid(format!(
            "table has {} entries, expected {} for arity {}",
            values.len(),
            expected.map_or("too many".to_string(), |e| e.to_string()),
            doc.arity
        )));
    }
    Ok(FunctionFile {
        table: FunctionTable::from_values(states.len(), doc.arity, values),
        states,
        baseline,
    })
}

/// True when the document looks like a network rather than a function table.
pub fn is_network_document(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .ok()
        .and_then(|v| v.as_object().map(|o| o.contains_key("variables")))
        .unwrap_or(true)
}

pub(crate) fn state_labels(states: &[String], values: &[usize]) -> Vec<Value> {
    labels(states, values)
}
