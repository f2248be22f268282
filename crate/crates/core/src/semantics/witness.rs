use std::fmt::Write;

use super::Frame;
use crate::worlds::WorldSet;

/// A value bound to a variable of a violated universal statement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    World(usize),
    Set(WorldSet),
    /// A sequence of worlds, e.g. a cycle.
    Path(Vec<usize>),
}

/// Named bindings that instantiate a failing universal statement, in the
/// order the variables are quantified.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Witness {
    pub bindings: Vec<(String, Value)>,
}

impl Witness {
    pub fn new() -> Self {
        Witness::default()
    }

    pub fn world(mut self, name: &str, w: usize) -> Self {
        self.bindings.push((name.to_owned(), Value::World(w)));
        self
    }

    pub fn set(mut self, name: &str, s: WorldSet) -> Self {
        self.bindings.push((name.to_owned(), Value::Set(s)));
        self
    }

    pub fn path(mut self, name: &str, p: Vec<usize>) -> Self {
        self.bindings.push((name.to_owned(), Value::Path(p)));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    pub fn get_world(&self, name: &str) -> Option<usize> {
        match self.get(name)? {
            Value::World(w) => Some(*w),
            _ => None,
        }
    }

    pub fn get_set(&self, name: &str) -> Option<WorldSet> {
        match self.get(name)? {
            Value::Set(s) => Some(*s),
            _ => None,
        }
    }

    /// `name=value` pairs with world ids substituted.
    pub fn render<F: Frame + ?Sized>(&self, frame: &F) -> String {
        let mut out = String::new();
        for (i, (n, v)) in self.bindings.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = match v {
                Value::World(w) => write!(out, "{n}={}", frame.name(*w)),
                Value::Set(s) => write!(out, "{n}={}", frame.set_name(*s)),
                Value::Path(p) => {
                    let names: Vec<&str> = p.iter().map(|w| frame.name(*w)).collect();
                    write!(out, "{n}=[{}]", names.join(","))
                }
            };
        }
        out
    }
}
