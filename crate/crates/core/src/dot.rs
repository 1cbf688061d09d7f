//! Graphviz rendering of the lift tree: cycles mod `p^l` and the cycles they lift to.

use std::fmt::Write as _;

use crate::engine::{analyze, find_cycles, lift, Behavior, Cycle, EngineError, DEFAULT_HEADROOM};
use crate::padic::{IntPolynomial, Level, Prime};

/// Default bound on the number of nodes drawn.
pub const DEFAULT_DOT_NODES: usize = 20_000;

/// One node of the lift tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub level: u32,
    pub smallest: String,
    pub length: usize,
    pub behavior: Option<Behavior>,
    pub parent: Option<usize>,
}

impl TreeNode {
    fn tag(&self) -> String {
        match self.behavior {
            Some(Behavior::PartiallySplits { order }) => format!("PartiallySplits(d={order})"),
            Some(b) => b.tag().to_string(),
            None => "?".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftTree {
    pub prime: Prime,
    pub max_level: u32,
    pub nodes: Vec<TreeNode>,
    pub truncated: bool,
}

fn node(f: &IntPolynomial, c: &Cycle, parent: Option<usize>) -> TreeNode {
    let l = c.level().get();
    TreeNode {
        level: l,
        smallest: c.base_point().to_string(),
        length: c.len(),
        behavior: analyze(f, c, l + DEFAULT_HEADROOM).ok().map(|a| a.behavior),
        parent,
    }
}

/// All cycles from level 1 to `max_level`, breadth first, stopping after `cap` nodes.
pub fn lift_tree(f: &IntPolynomial, prime: Prime, max_level: u32, cap: usize) -> Result<LiftTree, EngineError> {
    let mut nodes = Vec::new();
    let mut frontier: Vec<(Cycle, usize)> = Vec::new();
    let mut truncated = false;
    for c in find_cycles(f, prime, Level::new(1)?)? {
        if nodes.len() >= cap {
            truncated = true;
            break;
        }
        nodes.push(node(f, &c, None));
        frontier.push((c, nodes.len() - 1));
    }
    for _ in 2..=max_level {
        let mut next = Vec::new();
        'outer: for (c, id) in frontier {
            for child in lift(f, &c).children {
                if nodes.len() >= cap {
                    truncated = true;
                    break 'outer;
                }
                nodes.push(node(f, &child, Some(id)));
                next.push((child, nodes.len() - 1));
            }
        }
        frontier = next;
        if truncated {
            break;
        }
    }
    Ok(LiftTree { prime, max_level, nodes, truncated })
}

impl LiftTree {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lift_tree {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                s,
                "  n{i} [label=\"l={} x0={} k={}\\n{}\"];",
                n.level,
                n.smallest,
                n.length,
                n.tag()
            );
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let _ = writeln!(s, "  n{p} -> n{i};");
            }
        }
        if self.truncated {
            let _ = writeln!(s, "  truncated [shape=plaintext, label=\"... node cap reached\"];");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_on_z2_has_a_self_similar_spine() {
        let t = lift_tree(&IntPolynomial::monomial(3), Prime::new(2).unwrap(), 6, DEFAULT_DOT_NODES).unwrap();
        assert!(!t.truncated);
        let dot = t.to_dot();
        assert!(dot.starts_with("digraph lift_tree {"));
        assert!(dot.contains("WeaklySplits"));
        assert!(dot.contains("n0 -> "));
        assert_eq!(t.nodes.iter().filter(|n| n.level == 1).count(), 2);
    }

    #[test]
    fn fifth_power_on_z3_partially_splits() {
        let t = lift_tree(&IntPolynomial::monomial(5), Prime::new(3).unwrap(), 5, DEFAULT_DOT_NODES).unwrap();
        assert!(t.to_dot().contains("PartiallySplits"));
    }

    #[test]
    fn identity_hits_the_cap() {
        let t = lift_tree(&IntPolynomial::monomial(1), Prime::new(3).unwrap(), 8, 50).unwrap();
        assert!(t.truncated);
        assert_eq!(t.nodes.len(), 50);
        assert!(t.to_dot().contains("node cap reached"));
    }
}
