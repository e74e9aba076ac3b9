use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{budget, max_degree_within, Graph, Side, VertexSet};

/// A partition into parts each ε-restricted on its recorded side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionCertificate {
    pub eps: f64,
    pub parts: Vec<(VertexSet, Side)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange { part: usize, vertex: usize },
    EmptyPart { part: usize },
    Overlap { vertex: usize, first: usize, second: usize },
    Missing { vertex: usize },
    NotRestricted { part: usize, side: Side, max_degree: usize, allowed: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { part, vertex } => {
                write!(f, "part {part}: vertex {vertex} is out of range")
            }
            Violation::EmptyPart { part } => write!(f, "part {part} is empty"),
            Violation::Overlap { vertex, first, second } => {
                write!(f, "vertex {vertex} lies in parts {first} and {second}")
            }
            Violation::Missing { vertex } => write!(f, "vertex {vertex} is in no part"),
            Violation::NotRestricted { part, side, max_degree, allowed } => write!(
                f,
                "part {part}: max degree {max_degree} on the {} side exceeds {allowed}",
                side.as_str()
            ),
        }
    }
}

impl PartitionCertificate {
    pub fn new(eps: f64) -> Self {
        PartitionCertificate { eps, parts: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Every violation against `ground`, in part order.
    pub fn violations_on(&self, g: &Graph, ground: &VertexSet) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut owner: Vec<Option<usize>> = vec![None; g.n()];
        for (i, (part, side)) in self.parts.iter().enumerate() {
            if part.universe() != g.n() {
                // Sets built for another graph: report the first foreign id.
                let vertex = part.iter().find(|&v| v >= g.n()).unwrap_or(g.n());
                out.push(Violation::OutOfRange { part: i, vertex });
                continue;
            }
            if part.is_empty() {
                out.push(Violation::EmptyPart { part: i });
                continue;
            }
            for v in part.iter() {
                match owner[v] {
                    Some(first) => out.push(Violation::Overlap { vertex: v, first, second: i }),
                    None => owner[v] = Some(i),
                }
            }
            let max_degree = max_degree_within(g, part, *side);
            let allowed = budget(self.eps, part.len() as f64);
            if max_degree > allowed {
                out.push(Violation::NotRestricted { part: i, side: *side, max_degree, allowed });
            }
        }
        for v in ground.iter() {
            if owner[v].is_none() {
                out.push(Violation::Missing { vertex: v });
            }
        }
        for (v, o) in owner.iter().enumerate() {
            if o.is_some() && !ground.contains(v) {
                out.push(Violation::OutOfRange { part: o.unwrap(), vertex: v });
            }
        }
        out
    }

    pub fn violations(&self, g: &Graph) -> Vec<Violation> {
        self.violations_on(g, &g.vertices())
    }

    pub fn verify_on(&self, g: &Graph, ground: &VertexSet) -> Result<()> {
        match self.violations_on(g, ground).first() {
            None => Ok(()),
            Some(v) => Err(Error::ValidationFailed(v.to_string())),
        }
    }

    pub fn verify(&self, g: &Graph) -> Result<()> {
        self.verify_on(g, &g.vertices())
    }

    pub(crate) fn extend(&mut self, other: PartitionCertificate) {
        self.parts.extend(other.parts);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn detects_each_violation() {
        let g = generators::cycle(5);
        let s = |v: &[usize]| VertexSet::from_iter(5, v.iter().copied());
        let good = PartitionCertificate {
            eps: 0.7,
            parts: vec![(s(&[0, 1]), Side::Graph), (s(&[2, 3, 4]), Side::Graph)],
        };
        assert!(good.verify(&g).is_ok());

        let mut moved = good.clone();
        moved.parts[0].0.insert(2);
        assert!(matches!(moved.violations(&g)[..], [Violation::Overlap { vertex: 2, first: 0, second: 1 }]));

        let mut missing = good.clone();
        missing.parts[1].0.remove(4);
        assert_eq!(missing.violations(&g), vec![Violation::Missing { vertex: 4 }]);

        let clique = PartitionCertificate {
            eps: 0.0,
            parts: vec![(g.vertices(), Side::Graph)],
        };
        assert!(matches!(
            clique.violations(&g)[..],
            [Violation::NotRestricted { part: 0, max_degree: 2, allowed: 0, .. }]
        ));

        let mut empty = good;
        empty.parts.push((s(&[]), Side::Graph));
        assert_eq!(empty.violations(&g), vec![Violation::EmptyPart { part: 2 }]);
    }

    #[test]
    fn wrong_side_on_clique_is_flagged() {
        let g = Graph::complete(4);
        let cert = PartitionCertificate {
            eps: 0.2,
            parts: vec![(g.vertices(), Side::Graph)],
        };
        assert!(matches!(cert.violations(&g)[..], [Violation::NotRestricted { max_degree: 3, .. }]));
        let fixed = PartitionCertificate {
            eps: 0.2,
            parts: vec![(g.vertices(), Side::Complement)],
        };
        assert!(fixed.verify(&g).is_ok());
    }
}
