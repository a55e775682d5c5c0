//! The JSON interchange format and DOT export.

use crate::error::Result;
use crate::poset::{Complex, ComplexBuilder, Sign};
use crate::set::ElementSet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementEntry {
    pub id: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub upper: String,
    pub lower: String,
    pub sign: Sign,
}

/// `{"elements": [...], "covers": [...], "subset": [...]?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub elements: Vec<ElementEntry>,
    pub covers: Vec<CoverEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
}

/// Ids in `(dim, id)` order.
fn ordered(c: &Complex, set: &ElementSet) -> Vec<usize> {
    let mut xs = set.to_vec();
    xs.sort_by(|&a, &b| (c.dim(a), c.id(a)).cmp(&(c.dim(b), c.id(b))));
    xs
}

impl Document {
    /// Elements sorted by `(dim, id)`, covers by upper then lower in that order.
    pub fn from_complex(c: &Complex) -> Self {
        let order = ordered(c, &c.all());
        let mut rank = vec![0usize; c.len()];
        for (i, &x) in order.iter().enumerate() {
            rank[x] = i;
        }
        let elements = order
            .iter()
            .map(|&x| ElementEntry {
                id: c.id(x).to_string(),
                dim: c.dim(x),
            })
            .collect();
        let mut covers: Vec<(usize, usize, Sign)> = c.covers().collect();
        covers.sort_by_key(|&(u, l, _)| (rank[u], rank[l]));
        let covers = covers
            .into_iter()
            .map(|(u, l, sign)| CoverEntry {
                upper: c.id(u).to_string(),
                lower: c.id(l).to_string(),
                sign,
            })
            .collect();
        Document {
            elements,
            covers,
            subset: None,
        }
    }

    pub fn with_subset(c: &Complex, subset: &ElementSet) -> Self {
        let mut d = Self::from_complex(c);
        d.subset = Some(
            ordered(c, subset)
                .into_iter()
                .map(|x| c.id(x).to_string())
                .collect(),
        );
        d
    }

    pub fn to_complex(&self) -> Result<Complex> {
        let mut b = ComplexBuilder::new();
        for e in &self.elements {
            b.element(e.id.clone(), e.dim);
        }
        for cv in &self.covers {
            b.cover(cv.upper.clone(), cv.lower.clone(), cv.sign);
        }
        b.build()
    }

    /// The complex plus the declared subset (the whole complex when absent).
    ///
    /// The subset is returned as given; callers decide whether it must be closed.
    pub fn to_complex_and_subset(&self) -> Result<(Complex, ElementSet)> {
        let c = self.to_complex()?;
        let u = match &self.subset {
            Some(ids) => c.set_of_ids(ids)?,
            None => c.all(),
        };
        Ok((c, u))
    }

    pub fn parse(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph: one node per element labelled with its dimension, one
/// edge per cover from upper to lower labelled with the sign.
pub fn to_dot(c: &Complex) -> String {
    let mut out = String::from("digraph complex {\n  rankdir=BT;\n");
    let order = ordered(c, &c.all());
    for &x in &order {
        out.push_str(&format!(
            "  {} [label={}, dim={}];\n",
            dot_quote(c.id(x)),
            dot_quote(&format!("{} ({})", c.id(x), c.dim(x))),
            c.dim(x)
        ));
    }
    let mut rank = vec![0usize; c.len()];
    for (i, &x) in order.iter().enumerate() {
        rank[x] = i;
    }
    let mut covers: Vec<(usize, usize, Sign)> = c.covers().collect();
    covers.sort_by_key(|&(u, l, _)| (rank[u], rank[l]));
    for (u, l, s) in covers {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            dot_quote(c.id(u)),
            dot_quote(c.id(l)),
            dot_quote(&s.to_string())
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        for f in fixtures::corpus() {
            let d = Document::from_complex(&f.complex);
            let back = Document::parse(&d.to_json()).unwrap().to_complex().unwrap();
            let same = crate::embedding::Inclusion::by_ids(&f.complex, &back).unwrap();
            assert!(same.is_isomorphism(&f.complex, &back), "{}", f.name);
            assert_eq!(Document::from_complex(&back), d);
        }
    }

    #[test]
    fn field_names_and_order() {
        let d = Document::from_complex(&fixtures::globe(1));
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["elements"][0], serde_json::json!({"id": "0+", "dim": 0}));
        assert_eq!(
            v["covers"][0],
            serde_json::json!({"upper": "1", "lower": "0+", "sign": "+"})
        );
        assert!(v.get("subset").is_none());
    }

    #[test]
    fn subsets_survive() {
        let c = fixtures::globe(2);
        let u = c.closure_of_ids(&["1-"]).unwrap();
        let (c2, u2) = Document::parse(&Document::with_subset(&c, &u).to_json())
            .unwrap()
            .to_complex_and_subset()
            .unwrap();
        assert_eq!(c2.sorted_ids(&u2), c.sorted_ids(&u));
    }

    #[test]
    fn bad_input_is_rejected() {
        assert!(Document::parse(r#"{"elements": [], "covers": [], "extra": 1}"#).is_err());
        let d = Document::parse(r#"{"elements": [{"id": "a", "dim": 1}], "covers": []}"#).unwrap();
        assert!(d.to_complex().is_err());
    }

    #[test]
    fn dot_shape() {
        let c = fixtures::globe(1);
        let dot = to_dot(&c);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains(r#""1" -> "0-" [label="-"]"#));
        assert_eq!(dot.matches("dim=").count(), 3);
    }
}
