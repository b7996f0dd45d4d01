//! JSON tree encoding: `{"node": kind, "name"?: atom, "children": [..]}`.

use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::formula::Formula;

#[derive(Serialize, Deserialize)]
struct Node {
    node: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    children: Vec<Node>,
}

impl Node {
    fn from_formula(f: &Formula) -> Node {
        let (node, name, children): (&str, Option<String>, Vec<&Formula>) = match f {
            Formula::Atom(n) => ("atom", Some(n.to_string()), vec![]),
            Formula::Falsum => ("falsum", None, vec![]),
            Formula::Conj(a, b) => ("conj", None, vec![a, b]),
            Formula::Disj(a, b) => ("disj", None, vec![a, b]),
            Formula::Impl(a, b) => ("impl", None, vec![a, b]),
            Formula::Box(a) => ("box", None, vec![a]),
        };
        Node {
            node: node.to_string(),
            name,
            children: children.into_iter().map(Node::from_formula).collect(),
        }
    }

    fn into_formula(self) -> Result<Formula, String> {
        let arity = self.children.len();
        let mut kids = self
            .children
            .into_iter()
            .map(|c| c.into_formula().map(Arc::new));
        let mut next = || kids.next().expect("arity checked");
        let want = |n: usize| {
            if arity == n {
                Ok(())
            } else {
                Err(format!(
                    "`{}` node expects {n} children, found {arity}",
                    self.node
                ))
            }
        };
        match self.node.as_str() {
            "atom" => {
                want(0)?;
                let name = self.name.ok_or("atom node without `name`")?;
                Ok(Formula::atom(&name))
            }
            "falsum" => want(0).map(|_| Formula::Falsum),
            "conj" => {
                want(2)?;
                Ok(Formula::Conj(next()?, next()?))
            }
            "disj" => {
                want(2)?;
                Ok(Formula::Disj(next()?, next()?))
            }
            "impl" => {
                want(2)?;
                Ok(Formula::Impl(next()?, next()?))
            }
            "box" => {
                want(1)?;
                Ok(Formula::Box(next()?))
            }
            other => Err(format!("unknown node kind `{other}`")),
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Node::from_formula(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Node::deserialize(deserializer)?
            .into_formula()
            .map_err(D::Error::custom)
    }
}

/// Serde adapter that stores a formula as its canonical text instead of a tree.
pub mod as_text {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::syntax::{parse, print, Formula, Logic};

    pub fn serialize<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print(f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text, Logic::Ep).map_err(D::Error::custom)
    }
}

/// [`as_text`] for sequences of formulas.
pub mod as_text_vec {
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::syntax::{parse, print, Formula, Logic};

    pub fn serialize<S: Serializer>(fs: &[Formula], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(fs.len()))?;
        for f in fs {
            seq.serialize_element(&print(f))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Formula>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse(t, Logic::Ep).map_err(D::Error::custom))
            .collect()
    }
}
