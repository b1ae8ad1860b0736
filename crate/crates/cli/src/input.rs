//! Complex and cochain readers: JSON, OFF triangle meshes and edge lists.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use lphodge_core::{Cochain, ComplexDescription, SimplicialComplex};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Off,
    EdgeList,
}

impl FromStr for InputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "off" => Ok(Self::Off),
            "edgelist" | "edges" => Ok(Self::EdgeList),
            other => Err(CliError::Input(format!("unknown input format `{other}` (expected json, off or edgelist)"))),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Off => "off",
            Self::EdgeList => "edgelist",
        })
    }
}

impl InputFormat {
    /// Guess from the file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(Self::Json),
            "off" => Some(Self::Off),
            "txt" | "edges" | "edgelist" | "el" => Some(Self::EdgeList),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub complex: SimplicialComplex,
    pub cochain: Option<Cochain>,
    /// Non-fatal findings, e.g. non-manifold OFF edges.
    pub warnings: Vec<String>,
}

pub fn parse_input(path: &Path, format: InputFormat) -> Result<ParsedInput, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_str(&text, format, path)
}

pub fn parse_str(text: &str, format: InputFormat, origin: &Path) -> Result<ParsedInput, CliError> {
    match format {
        InputFormat::Json => parse_json(text, origin),
        InputFormat::Off => parse_off(text, origin),
        InputFormat::EdgeList => parse_edge_list(text, origin),
    }
}

fn parse_error(origin: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { path: origin.to_path_buf(), line, message: message.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCochain {
    degree: usize,
    #[serde(default)]
    values: Option<Vec<f64>>,
    #[serde(default)]
    entries: Option<Vec<JsonEntry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEntry {
    simplex: Vec<usize>,
    value: f64,
}

/// Sign of the permutation sorting `vertices`.
fn orientation_sign(vertices: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if vertices[i] > vertices[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// JSON complex with an optional `"cochain"` member, given either as
/// `"values"` in simplex index order or as `"entries"` of
/// `{"simplex": [...], "value": v}`; an entry listed in odd vertex order
/// contributes `-v` to the sorted simplex.
pub fn parse_json(text: &str, origin: &Path) -> Result<ParsedInput, CliError> {
    let json_err = |e: serde_json::Error| parse_error(origin, e.line(), e.to_string());
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
    let cochain = value.as_object_mut().and_then(|m| m.remove("cochain"));
    let desc: ComplexDescription = serde_json::from_value(value).map_err(|e| parse_error(origin, 0, e.to_string()))?;
    let complex = desc.build().map_err(CliError::Complex)?;
    let cochain = match cochain {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => {
            let raw: JsonCochain = serde_json::from_value(v).map_err(|e| CliError::Input(format!("cochain: {e}")))?;
            Some(json_cochain(&complex, raw)?)
        }
    };
    Ok(ParsedInput { complex, cochain, warnings: Vec::new() })
}

fn json_cochain(complex: &SimplicialComplex, raw: JsonCochain) -> Result<Cochain, CliError> {
    let degree = raw.degree;
    if degree > complex.max_degree() {
        return Err(CliError::Input(format!("cochain degree {degree} exceeds complex dimension {}", complex.max_degree())));
    }
    let n = complex.count(degree);
    match (raw.values, raw.entries) {
        (Some(values), None) => {
            if values.len() != n {
                return Err(CliError::Input(format!(
                    "cochain has {} values but the complex has {n} simplices of degree {degree}",
                    values.len()
                )));
            }
            Ok(Cochain::new(degree, values))
        }
        (None, Some(entries)) => {
            let mut values = vec![0.0; n];
            for e in entries {
                if e.simplex.len() != degree + 1 {
                    return Err(CliError::Input(format!("cochain entry {:?} is not a {degree}-simplex", e.simplex)));
                }
                let mut sorted = e.simplex.clone();
                sorted.sort_unstable();
                let idx = complex
                    .index_of(&sorted)
                    .ok_or_else(|| CliError::Input(format!("cochain entry {:?} is not a simplex of the complex", e.simplex)))?;
                values[idx] += orientation_sign(&e.simplex) * e.value;
            }
            Ok(Cochain::new(degree, values))
        }
        _ => Err(CliError::Input("cochain needs exactly one of `values` or `entries`".into())),
    }
}

/// Lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn number<T: FromStr>(token: &str, what: &str, origin: &Path, line: usize) -> Result<T, CliError> {
    token.parse().map_err(|_| parse_error(origin, line, format!("invalid {what} `{token}`")))
}

/// One `u v [w]` per line; `#` starts a comment.
pub fn parse_edge_list(text: &str, origin: &Path) -> Result<ParsedInput, CliError> {
    let mut desc = ComplexDescription::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(parse_error(origin, line, format!("expected `u v [w]`, found `{content}`")));
        }
        let u: usize = number(tokens[0], "vertex", origin, line)?;
        let v: usize = number(tokens[1], "vertex", origin, line)?;
        if u == v {
            return Err(parse_error(origin, line, format!("self-loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if let Some(first) = seen.insert(key, line) {
            return Err(parse_error(origin, line, format!("edge {key:?} already listed on line {first}")));
        }
        let w = match tokens.get(2) {
            Some(t) => {
                let w: f64 = number(t, "weight", origin, line)?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(parse_error(origin, line, format!("non-positive weight {w} on edge {key:?}")));
                }
                Some(w)
            }
            None => None,
        };
        desc.push(&[key.0, key.1], w);
    }
    let complex = desc.build().map_err(CliError::Complex)?;
    Ok(ParsedInput { complex, cochain: None, warnings: Vec::new() })
}

/// OFF triangle mesh. Coordinates are ignored; faces must be triangles and
/// consistently oriented along every edge shared by exactly two faces.
/// Edges shared by more faces are accepted and reported as warnings.
pub fn parse_off(text: &str, origin: &Path) -> Result<ParsedInput, CliError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(origin, 1, "empty OFF file"))?;
    let mut tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"OFF") {
        return Err(parse_error(origin, line, format!("expected `OFF` header, found `{header}`")));
    }
    tokens.remove(0);
    let (count_line, counts) = if tokens.is_empty() {
        let (l, c) = lines.next().ok_or_else(|| parse_error(origin, line, "missing vertex/face counts"))?;
        (l, c.split_whitespace().collect::<Vec<_>>())
    } else {
        (line, tokens)
    };
    if counts.len() < 2 {
        return Err(parse_error(origin, count_line, "expected `vertices faces [edges]` counts"));
    }
    let nv: usize = number(counts[0], "vertex count", origin, count_line)?;
    let nf: usize = number(counts[1], "face count", origin, count_line)?;

    for k in 0..nv {
        let (l, c) = lines
            .next()
            .ok_or_else(|| parse_error(origin, count_line, format!("file ends after {k} of {nv} vertices")))?;
        for t in c.split_whitespace() {
            number::<f64>(t, "coordinate", origin, l)?;
        }
    }

    let mut desc = ComplexDescription::new();
    for v in 0..nv {
        desc.push(&[v], None);
    }
    let mut faces: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    // undirected edge -> (directed orientation, face line) per incident face
    let mut edges: BTreeMap<(usize, usize), Vec<(bool, usize)>> = BTreeMap::new();
    for k in 0..nf {
        let (l, c) =
            lines.next().ok_or_else(|| parse_error(origin, count_line, format!("file ends after {k} of {nf} faces")))?;
        let tokens: Vec<&str> = c.split_whitespace().collect();
        let arity: usize = number(tokens[0], "face size", origin, l)?;
        if arity != 3 {
            return Err(parse_error(origin, l, format!("only triangular faces are supported, found a {arity}-gon")));
        }
        if tokens.len() < 4 {
            return Err(parse_error(origin, l, "triangle needs three vertex indices"));
        }
        let mut tri = [0usize; 3];
        for (slot, t) in tri.iter_mut().zip(&tokens[1..4]) {
            *slot = number(t, "vertex index", origin, l)?;
            if *slot >= nv {
                return Err(parse_error(origin, l, format!("vertex index {slot} out of range (file has {nv} vertices)")));
            }
        }
        if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            return Err(parse_error(origin, l, format!("degenerate triangle {tri:?}")));
        }
        let mut sorted = tri;
        sorted.sort_unstable();
        if let Some(first) = faces.insert(sorted, l) {
            return Err(parse_error(origin, l, format!("triangle {sorted:?} already listed on line {first}")));
        }
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
            edges.entry((a.min(b), a.max(b))).or_default().push((a < b, l));
        }
        desc.push(&sorted, None);
    }

    let mut warnings = Vec::new();
    for (edge, incident) in &edges {
        match incident.as_slice() {
            [(o1, l1), (o2, l2)] if o1 == o2 => {
                return Err(parse_error(
                    origin,
                    *l2,
                    format!("face orientation disagrees with line {l1} along edge {edge:?}"),
                ));
            }
            list if list.len() > 2 => {
                warnings.push(format!("non-manifold edge {edge:?} shared by {} faces", list.len()));
            }
            _ => {}
        }
    }
    let complex = desc.build().map_err(CliError::Complex)?;
    Ok(ParsedInput { complex, cochain: None, warnings })
}

pub fn origin_of(path: Option<&Path>) -> PathBuf {
    path.map_or_else(|| PathBuf::from("<input>"), Path::to_path_buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn here() -> &'static Path {
        Path::new("test")
    }

    #[test]
    fn edge_list_triangle() {
        let p = parse_edge_list("0 1\n1 2\n0 2\n", here()).unwrap();
        assert_eq!(p.complex.counts(), vec![3, 3]);
        assert_eq!(p.complex.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn edge_list_weights_and_errors() {
        let p = parse_edge_list("# comment\n0 1 2.5\n\n1 2\n", here()).unwrap();
        assert_eq!(p.complex.weights(1), &[2.5, 1.0]);
        let e = parse_edge_list("0 1\n1 x\n", here()).unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }), "{e}");
        let e = parse_edge_list("0 1\n1 0\n", here()).unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }));
        let e = parse_edge_list("0 1 -1\n", here()).unwrap_err();
        assert!(e.to_string().contains("non-positive"));
        assert!(parse_edge_list("3 3\n", here()).is_err());
        assert!(parse_edge_list("1 2 3 4\n", here()).is_err());
    }

    const TETRA: &str = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";

    #[test]
    fn off_tetrahedron() {
        let p = parse_off(TETRA, here()).unwrap();
        assert_eq!(p.complex.counts(), vec![4, 6, 4]);
        assert!(p.warnings.is_empty());
        assert_eq!(p.complex.betti_numbers(), vec![1, 0, 1]);
    }

    #[test]
    fn off_orientation_and_shape_errors() {
        let flipped = TETRA.replace("3 0 1 3", "3 0 3 1");
        let e = parse_off(&flipped, here()).unwrap_err();
        assert!(e.to_string().contains("orientation"), "{e}");
        let quad = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        assert!(parse_off(quad, here()).unwrap_err().to_string().contains("triangular"));
        assert!(parse_off("PLY\n", here()).is_err());
        assert!(parse_off("OFF\n3 1 0\n0 0 0\n", here()).is_err());
    }

    #[test]
    fn off_non_manifold_is_flagged() {
        let fan = "OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n3 0 1 2\n3 0 1 3\n3 0 1 4\n";
        let p = parse_off(fan, here()).unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.complex.count(2), 3);
    }

    #[test]
    fn json_complex_and_cochain() {
        let text = r#"{"weights_default": 1.0,
            "simplices": {"0": [[0],[1],[2]], "1": [[0,1],[1,2],[0,2]]},
            "weights": {"1": [1.0, 2.0, 0.5]},
            "cochain": {"degree": 1, "entries": [{"simplex": [1, 0], "value": 3.0}, {"simplex": [1, 2], "value": 1.0}]}}"#;
        let p = parse_json(text, here()).unwrap();
        assert_eq!(p.complex.weights(1), &[1.0, 0.5, 2.0]);
        assert_eq!(p.cochain.unwrap().values(), &[-3.0, 0.0, 1.0]);

        let text = r#"{"simplices": {"1": [[0,1]]}, "cochain": {"degree": 0, "values": [1.0, 2.0]}}"#;
        let p = parse_json(text, here()).unwrap();
        assert_eq!(p.cochain.unwrap().values(), &[1.0, 2.0]);
    }

    #[test]
    fn json_rejections() {
        let text = r#"{"simplices": {"1": [[0,1],[1,2]]}, "weights": {"1": [1.0, 0.0]}}"#;
        let e = parse_json(text, here()).unwrap_err();
        assert!(e.to_string().contains("[1, 2]"), "{e}");
        let e = parse_json("{\n\"simplices\": [}", here()).unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }), "{e}");
        let text = r#"{"simplices": {"1": [[0,1]]}, "cochain": {"degree": 1, "values": [1.0, 2.0]}}"#;
        assert!(parse_json(text, here()).is_err());
        let text = r#"{"simplices": {"1": [[0,1]]}, "cochain": {"degree": 1, "entries": [{"simplex": [0, 2], "value": 1}]}}"#;
        assert!(parse_json(text, here()).is_err());
    }

    #[test]
    fn formats_from_names() {
        assert_eq!("OFF".parse::<InputFormat>().unwrap(), InputFormat::Off);
        assert!("ply".parse::<InputFormat>().is_err());
        assert_eq!(InputFormat::from_path(Path::new("a/b.json")), Some(InputFormat::Json));
    }
}
