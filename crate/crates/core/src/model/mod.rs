//! Domain types: variables, tabular distributions, causal-independence
//! families and networks.

mod combiner;
mod params;
mod validate;

use alloc::string::String;
use alloc::vec::Vec;

pub use combiner::{BinaryTable, Combiner, FunctionTable};
pub use params::{parameter_count, ParameterModel};
pub use validate::{validate, ValidationReport, Violation};

use crate::error::{Error, Result};

/// Index of a variable inside its [`Network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A named discrete variable with an ordered state space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub states: Vec<String>,
}

impl Variable {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        states: impl IntoIterator<Item = S>,
    ) -> Self {
        Variable {
            name: name.into(),
            states: states.into_iter().map(Into::into).collect(),
        }
    }

    /// A variable with states `false`, `true`.
    pub fn binary(name: impl Into<String>) -> Self {
        Variable::new(name, ["false", "true"])
    }

    /// A variable with states `s0`, `s1`, ... .
    pub fn with_cardinality(name: impl Into<String>, states: usize) -> Self {
        Variable::new(name, (0..states).map(|s| alloc::format!("s{s}")))
    }

    pub fn cardinality(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }
}

/// A conditional probability table `p(child | parents)`.
///
/// `table` is row-major: one row per parent-state combination (last parent
/// fastest), each row holding one probability per child state.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularCpd {
    pub child: VarId,
    pub parents: Vec<VarId>,
    pub table: Vec<f64>,
}

impl TabularCpd {
    pub fn prior(child: VarId, probabilities: Vec<f64>) -> Self {
        TabularCpd {
            child,
            parents: Vec::new(),
            table: probabilities,
        }
    }

    /// Deterministic table: every row is a point mass on `f(parent states)`.
    pub fn deterministic(
        child: VarId,
        parents: Vec<VarId>,
        parent_cards: &[usize],
        child_card: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Self {
        let mut table = alloc::vec![0.0; crate::index::volume(parent_cards) * child_card];
        let mut odo = crate::index::Odometer::new(parent_cards);
        let mut row = 0;
        while let Some(states) = odo.current() {
            table[row * child_card + f(states)] = 1.0;
            row += 1;
            odo.advance();
        }
        TabularCpd {
            child,
            parents,
            table,
        }
    }

    pub fn row(&self, combo: usize, child_card: usize) -> &[f64] {
        &self.table[combo * child_card..(combo + 1) * child_card]
    }
}

/// One cause of a causal-independence family.
///
/// `transition[c]` is the distribution of the cause summary (a value in the
/// effect's state space) when the cause is in state `c`. The row of the
/// distinguished state must be a point mass on the family's baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct CauseLink {
    pub cause: VarId,
    pub distinguished: usize,
    pub transition: Vec<Vec<f64>>,
}

/// A causal-independence family for one effect.
///
/// Link order is the default cause ordering. A leak, when present, is an
/// always-active virtual cause that enters the combination first.
#[derive(Debug, Clone, PartialEq)]
pub struct CiFamily {
    pub effect: VarId,
    pub baseline: usize,
    pub links: Vec<CauseLink>,
    pub combiner: Combiner,
    pub leak: Option<Vec<f64>>,
}

impl CiFamily {
    /// Number of arguments the combination function receives.
    pub fn arity(&self) -> usize {
        self.links.len() + usize::from(self.leak.is_some())
    }

    pub fn causes(&self) -> impl Iterator<Item = VarId> + '_ {
        self.links.iter().map(|l| l.cause)
    }
}

/// The distribution attached to a variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Table(TabularCpd),
    Ci(CiFamily),
}

impl Family {
    pub fn child(&self) -> VarId {
        match self {
            Family::Table(cpd) => cpd.child,
            Family::Ci(ci) => ci.effect,
        }
    }

    /// Parents in the network graph; for a CI family these are its causes.
    pub fn parents(&self) -> Vec<VarId> {
        match self {
            Family::Table(cpd) => cpd.parents.clone(),
            Family::Ci(ci) => ci.causes().collect(),
        }
    }
}

/// A directed acyclic network of discrete variables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Network {
    pub variables: Vec<Variable>,
    pub families: Vec<Family>,
}

impl Network {
    pub fn new() -> Self {
        Network::default()
    }

    pub fn add_variable(&mut self, variable: Variable) -> VarId {
        self.variables.push(variable);
        VarId(self.variables.len() - 1)
    }

    pub fn add_family(&mut self, family: Family) {
        self.families.push(family);
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.variables.len()).map(VarId)
    }

    pub fn variable(&self, id: VarId) -> &Variable {
        &self.variables[id.0]
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.variables[id.0].name
    }

    pub fn cardinality(&self, id: VarId) -> usize {
        self.variables[id.0].cardinality()
    }

    pub fn cardinalities(&self) -> Vec<usize> {
        self.variables.iter().map(Variable::cardinality).collect()
    }

    pub fn find(&self, name: &str) -> Option<VarId> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .map(VarId)
    }

    pub fn family_of(&self, id: VarId) -> Option<&Family> {
        self.families.iter().find(|f| f.child() == id)
    }

    pub fn ci_family(&self, id: VarId) -> Result<&CiFamily> {
        match self.family_of(id) {
            Some(Family::Ci(ci)) => Ok(ci),
            _ if id.0 >= self.len() => Err(Error::UnknownVariable(id.0)),
            _ => Err(Error::NotCiFamily(self.name(id).into())),
        }
    }

    /// Effects of all CI families, in family declaration order.
    pub fn ci_effects(&self) -> Vec<VarId> {
        self.families
            .iter()
            .filter_map(|f| match f {
                Family::Ci(ci) => Some(ci.effect),
                Family::Table(_) => None,
            })
            .collect()
    }

    /// Parent list of every variable, indexed by variable.
    pub fn parent_lists(&self) -> Vec<Vec<VarId>> {
        let mut out = alloc::vec![Vec::new(); self.len()];
        for family in &self.families {
            let child = family.child();
            if child.0 < out.len() {
                out[child.0] = family.parents();
            }
        }
        out
    }

    /// Topological order of the variables, or `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<VarId>> {
        let parents = self.parent_lists();
        let n = self.len();
        let mut indegree: Vec<usize> = parents.iter().map(Vec::len).collect();
        let mut children = alloc::vec![Vec::new(); n];
        for (child, ps) in parents.iter().enumerate() {
            for p in ps {
                if p.0 < n {
                    children[p.0].push(child);
                } else {
                    indegree[child] -= 1;
                }
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(VarId(v));
            for &c in children[v].iter().rev() {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(c);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub(crate) fn check_id(&self, id: VarId) -> Result<()> {
        if id.0 < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVariable(id.0))
        }
    }
}
