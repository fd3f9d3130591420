use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// `kK_p`: `copies` vertex-disjoint cliques of order `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub copies: usize,
    pub order: usize,
}

impl Pattern {
    pub const fn new(copies: usize, order: usize) -> Self {
        Self { copies, order }
    }

    pub const fn clique(order: usize) -> Self {
        Self { copies: 1, order }
    }

    /// Vertices needed to host one copy.
    pub const fn footprint(&self) -> usize {
        self.copies * self.order
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copies == 1 {
            write!(f, "K{}", self.order)
        } else {
            write!(f, "{}K{}", self.copies, self.order)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a clique pattern (expected e.g. `K3` or `4K3`)")]
pub struct PatternParseError(pub String);

impl FromStr for Pattern {
    type Err = PatternParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PatternParseError(s.to_string());
        let (copies, order) = s.trim().split_once(['K', 'k']).ok_or_else(err)?;
        let copies = if copies.is_empty() {
            1
        } else {
            copies.parse().map_err(|_| err())?
        };
        let order = order.trim_start_matches('_').parse().map_err(|_| err())?;
        if copies == 0 || order == 0 {
            return Err(err());
        }
        Ok(Self { copies, order })
    }
}
