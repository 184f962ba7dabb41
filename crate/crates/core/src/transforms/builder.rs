use std::collections::{HashMap, HashSet};

use crate::automata::Automaton;
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::symbol::{Alphabet, Symbol};

/// Incremental construction of an automaton by state names.
pub(crate) struct Builder {
    pub alphabet: Alphabet,
    states: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    labels: Vec<usize>,
    ids: HashSet<String>,
    reserved: HashSet<String>,
}

impl Builder {
    pub fn new(alphabet: Alphabet) -> Self {
        Builder {
            alphabet,
            states: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            labels: Vec::new(),
            ids: HashSet::new(),
            reserved: HashSet::new(),
        }
    }

    pub fn state(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.index.insert(name.to_string(), self.states.len());
        self.states.push(name.to_string());
        self.states.len() - 1
    }

    pub fn has_state(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// A state name based on `base` not used so far.
    pub fn fresh_state(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.has_state(&name) {
            name.push('\'');
        }
        name
    }

    /// An edge id based on `base` not used so far.
    pub fn fresh_id(&self, base: &str) -> String {
        let mut id = base.to_string();
        while self.ids.contains(&id) || self.reserved.contains(&id) {
            id.push('\'');
        }
        id
    }

    /// Keeps `id` out of the fresh ids; it can still be used explicitly.
    pub fn reserve_id(&mut self, id: &str) {
        self.reserved.insert(id.to_string());
    }

    /// Adds an edge, adding the label to the alphabet if needed. Colliding
    /// ids are made fresh.
    pub fn edge(&mut self, id: &str, src: usize, label: &Symbol, dst: usize) {
        let id = if self.ids.contains(id) { self.fresh_id(id) } else { id.to_string() };
        self.ids.insert(id.clone());
        let l = self.alphabet.insert(label.clone());
        self.edges.push(Edge { id, src, dst });
        self.labels.push(l);
    }

    pub fn build(self) -> Result<Automaton> {
        Automaton::new(Graph::new(self.states, self.edges)?, self.labels, self.alphabet)
    }
}
