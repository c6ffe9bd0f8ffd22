//! Text, JSON and DOT forms of a tangle.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use super::{Point, Tangle, ISO};
use crate::error::{Error, Result};

/// Compact form `T1-B2,T3-T4;iso:T2`; the empty picture is `()`.
impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points() == 0 {
            return f.write_str("()");
        }
        let edges: Vec<String> = self
            .edges()
            .map(|(a, b)| format!("{}-{}", self.point(a), self.point(b)))
            .collect();
        let iso: Vec<String> = self.isolated().map(|i| self.point(i).to_string()).collect();
        f.write_str(&edges.join(","))?;
        if !iso.is_empty() {
            if !edges.is_empty() {
                f.write_char(';')?;
            }
            write!(f, "iso:{}", iso.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Point> {
        let s = s.trim();
        let (side, idx) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let idx: usize = idx.parse().map_err(|_| Error::parse(format!("bad point {s:?}")))?;
        match side {
            "T" | "t" => Ok(Point::T(idx)),
            "B" | "b" => Ok(Point::B(idx)),
            _ => Err(Error::parse(format!("bad point {s:?}"))),
        }
    }
}

impl FromStr for Tangle {
    type Err = Error;

    /// Parses the compact form. The shape is read off the largest indices and
    /// unlisted points are isolated.
    fn from_str(s: &str) -> Result<Tangle> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Tangle::empty());
        }
        let mut pairs = Vec::new();
        let mut iso = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            if let Some(list) = part.strip_prefix("iso:") {
                for p in list.split(',').filter(|p| !p.trim().is_empty()) {
                    iso.push(p.parse::<Point>()?);
                }
            } else {
                for e in part.split(',').filter(|e| !e.trim().is_empty()) {
                    let (a, b) = e.split_once('-').ok_or_else(|| Error::parse(format!("bad edge {e:?}")))?;
                    pairs.push((a.parse::<Point>()?, b.parse::<Point>()?));
                }
            }
        }
        let all: Vec<Point> = pairs.iter().flat_map(|&(a, b)| [a, b]).chain(iso.iter().copied()).collect();
        let (mut top, mut bottom) = (0, 0);
        for &p in &all {
            match p {
                Point::T(i) => top = top.max(i),
                Point::B(j) => bottom = bottom.max(j),
            }
        }
        let mut seen = std::collections::HashSet::new();
        if !all.into_iter().all(|p| seen.insert(p)) {
            return Err(Error::parse(format!("point repeated in {s:?}")));
        }
        // points not mentioned at all are isolated
        Tangle::from_pairs(top, bottom, &pairs)
    }
}

impl Tangle {
    /// `{"top":m,"bottom":n,"edges":[["T1","B2"],…]}` with edges in raw order.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges()
            .map(|(a, b)| json!([self.point(a).to_string(), self.point(b).to_string()]))
            .collect();
        json!({"top": self.top(), "bottom": self.bottom(), "edges": edges})
    }

    pub fn from_json(v: &Value) -> Result<Tangle> {
        let field = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::parse(format!("missing {k:?}")))
        };
        let (top, bottom) = (field("top")?, field("bottom")?);
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("missing \"edges\""))?;
        let pairs = edges
            .iter()
            .map(|e| {
                let pt = |i: usize| -> Result<Point> {
                    e.get(i)
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::parse(format!("bad edge {e}")))?
                        .parse()
                };
                Ok((pt(0)?, pt(1)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Tangle::from_pairs(top, bottom, &pairs)
    }
}

/// Graphviz picture: top row above bottom row, strands as edges.
pub fn to_dot(t: &Tangle, name: &str) -> String {
    let mut s = format!("graph \"{name}\" {{\n  rankdir=TB;\n  node [shape=point];\n");
    for (count, tag) in [(t.top(), 'T'), (t.bottom(), 'B')] {
        let nodes: Vec<String> = (1..=count).map(|i| format!("{tag}{i}")).collect();
        if !nodes.is_empty() {
            let _ = writeln!(s, "  {{ rank=same; {} }}", nodes.join("; "));
            for w in nodes.windows(2) {
                let _ = writeln!(s, "  {} -- {} [style=invis];", w[0], w[1]);
            }
        }
    }
    for (a, b) in t.edges() {
        let _ = writeln!(s, "  {} -- {};", t.point(a), t.point(b));
    }
    for i in t.isolated() {
        let _ = writeln!(s, "  {} [shape=circle, width=0.1, label=\"\"];", t.point(i));
    }
    if t.partners().iter().all(|&p| p == ISO) && t.top() > 0 && t.bottom() > 0 {
        let _ = writeln!(s, "  T1 -- B1 [style=invis];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangles::enumerate_tangles;

    #[test]
    fn compact_round_trip() {
        let t: Tangle = "T1-B2,T3-T4;iso:T2".parse().unwrap();
        assert_eq!(t.shape(), (4, 2));
        assert_eq!(t.to_string(), "T1-B2,T3-T4;iso:T2,B1");
        for t in enumerate_tangles(2, 3).unwrap() {
            assert_eq!(t.to_string().parse::<Tangle>().unwrap(), t);
            assert_eq!(Tangle::from_json(&t.to_json()).unwrap(), t);
        }
        assert_eq!("()".parse::<Tangle>().unwrap(), Tangle::empty());
    }

    #[test]
    fn malformed_input() {
        assert!("T1-B1,T1-B2".parse::<Tangle>().is_err());
        assert!("T1-B2,T2-B1".parse::<Tangle>().is_err());
        assert!("X1-B1".parse::<Tangle>().is_err());
    }
}
