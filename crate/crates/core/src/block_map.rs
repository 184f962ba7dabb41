use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::periodic::PeriodicWord;
use crate::symbol::Symbol;

/// A sliding block map: output position `i` is `table[x[i-m ..= i+n]]`
/// where `m` is the memory and `n` the anticipation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    memory: usize,
    anticipation: usize,
    table: BTreeMap<Vec<Symbol>, Symbol>,
}

impl BlockMap {
    pub fn new(
        memory: usize,
        anticipation: usize,
        table: BTreeMap<Vec<Symbol>, Symbol>,
    ) -> Result<Self> {
        let width = memory + anticipation + 1;
        if let Some(block) = table.keys().find(|b| b.len() != width) {
            return Err(Error::Dimension(format!(
                "block of length {} in a map of window {width}",
                block.len()
            )));
        }
        Ok(BlockMap {
            memory,
            anticipation,
            table,
        })
    }

    /// The 1-block map given by a symbol substitution.
    pub fn one_block<I: IntoIterator<Item = (Symbol, Symbol)>>(pairs: I) -> Self {
        BlockMap {
            memory: 0,
            anticipation: 0,
            table: pairs.into_iter().map(|(a, b)| (vec![a], b)).collect(),
        }
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn table(&self) -> &BTreeMap<Vec<Symbol>, Symbol> {
        &self.table
    }

    /// Applies the map to a periodic point. The image has a period dividing
    /// the period of the input.
    pub fn apply(&self, w: &PeriodicWord) -> Result<PeriodicWord> {
        let m = self.memory as i64;
        let n = self.anticipation as i64;
        let mut out = Vec::with_capacity(w.period());
        for i in 0..w.period() as i64 {
            let window: Vec<Symbol> = (i - m..=i + n).map(|j| w.at(j).clone()).collect();
            let image = self.table.get(&window).ok_or_else(|| {
                Error::MissingWindow(
                    window
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>()
                        .join("."),
                )
            })?;
            out.push(image.clone());
        }
        PeriodicWord::new(out)
    }
}
