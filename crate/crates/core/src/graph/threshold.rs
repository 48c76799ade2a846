use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Graph;
use crate::error::{Error, Result};

/// Binary creation sequence of a threshold graph.
///
/// Bit `i` describes vertex `i + 1` (0-indexed): `true` adds it as a
/// dominating vertex, `false` as an isolated one. Vertex `0` is the implicit
/// starting vertex, so a code of length `L` generates `L + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ThresholdCode {
    bits: Vec<bool>,
}

impl ThresholdCode {
    pub fn new(bits: Vec<bool>) -> Self {
        ThresholdCode { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of vertices of the generated graph.
    pub fn vertex_count(&self) -> usize {
        self.bits.len() + 1
    }

    /// A code generates a connected graph iff it is empty or ends in 1.
    pub fn is_connected(&self) -> bool {
        self.bits.last().copied().unwrap_or(true)
    }

    /// All codes of the given length, in binary counting order with the
    /// first bit most significant.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = ThresholdCode> {
        assert!(len < 64, "exhaustive enumeration limited to length < 64");
        (0u64..1u64 << len).map(move |mask| {
            ThresholdCode::new((0..len).map(|i| mask >> (len - 1 - i) & 1 == 1).collect())
        })
    }
}

impl fmt::Display for ThresholdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ThresholdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_code(s)
    }
}

impl Serialize for ThresholdCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ThresholdCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s.is_empty() {
            return Ok(ThresholdCode::default());
        }
        parse_code(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a bare `0`/`1` string. Surrounding whitespace is ignored.
pub fn parse_code(text: &str) -> Result<ThresholdCode> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let bits = text
        .chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidCharacter { position, ch }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThresholdCode { bits })
}

pub fn build_threshold(code: &ThresholdCode) -> Graph {
    let mut g = Graph::empty(code.vertex_count());
    for (i, &b) in code.bits.iter().enumerate() {
        if b {
            let v = i + 1;
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Edge count read directly off the code: a dominating vertex created at
/// 1-indexed position `p` contributes `p - 1` edges.
pub fn edge_count_from_code(code: &ThresholdCode) -> usize {
    code.bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i + 1)
        .sum()
}

/// Peels isolated or dominating vertices until one vertex is left.
///
/// Returns the code together with the creation order: `order[p]` is the
/// vertex of `g` created at position `p`.
pub fn threshold_ordering(g: &Graph) -> Result<(ThresholdCode, Vec<usize>)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = Vec::with_capacity(n);
    let mut bits_rev = Vec::with_capacity(n - 1);
    let mut remaining = n;

    while remaining > 1 {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .find(|&v| degree[v] == 0 || degree[v] == remaining - 1);
        let Some(v) = pick else {
            return Err(Error::NotThreshold { remaining });
        };
        bits_rev.push(degree[v] != 0);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                degree[u] -= 1;
            }
        }
        removed.push(v);
        remaining -= 1;
    }
    let last = (0..n).find(|&v| alive[v]).expect("one vertex remains");
    removed.push(last);
    removed.reverse();
    bits_rev.reverse();
    Ok((ThresholdCode::new(bits_rev), removed))
}

pub fn recognize_threshold(g: &Graph) -> Result<ThresholdCode> {
    threshold_ordering(g).map(|(code, _)| code)
}

/// Vertex weights and a threshold realizing the edge set:
/// `{u, v} ∈ E ⇔ w(u) + w(v) ≥ t` for all `u ≠ v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightRep {
    pub weights: Vec<f64>,
    pub threshold: f64,
}

impl WeightRep {
    /// Checks the representation against every unordered pair of `g`.
    pub fn realizes(&self, g: &Graph) -> bool {
        if self.weights.len() != g.n() {
            return false;
        }
        (0..g.n()).all(|u| {
            (u + 1..g.n()).all(|v| {
                (self.weights[u] + self.weights[v] >= self.threshold) == g.has_edge(u, v)
            })
        })
    }
}

/// Threshold 0; a vertex at creation position `p` (1-indexed) gets weight
/// `+p` if dominating and `−p` if isolated. For `u` created before `v` the sum
/// is then `≥ v − u > 0` exactly when `v` is dominating.
pub fn weight_representation(g: &Graph) -> Result<WeightRep> {
    let (code, order) = threshold_ordering(g)?;
    let mut weights = vec![0.0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        let position = (p + 1) as f64;
        let dominating = p > 0 && code.bits[p - 1];
        weights[v] = if dominating { position } else { -position };
    }
    let rep = WeightRep {
        weights,
        threshold: 0.0,
    };
    if !rep.realizes(g) {
        return Err(Error::NotThreshold { remaining: g.n() });
    }
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    Isolated,
    Dominating,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub vertices: Vec<usize>,
}

/// Maximal runs of equal bits, with vertex 0 carrying an implicit 0.
///
/// For a connected code the blocks alternate `I_1, U_1, …, I_k, U_k`: every
/// block is nonempty and the last one is dominating.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    pub blocks: Vec<Block>,
}

impl BlockStructure {
    /// Number of dominating blocks `k`.
    pub fn k(&self) -> usize {
        self.blocks.len() / 2
    }

    /// Isolated block `I_{j+1}`.
    pub fn isolated(&self, j: usize) -> &[usize] {
        &self.blocks[2 * j].vertices
    }

    /// Dominating block `U_{j+1}`.
    pub fn dominating(&self, j: usize) -> &[usize] {
        &self.blocks[2 * j + 1].vertices
    }
}

pub fn block_decomposition(code: &ThresholdCode) -> Result<BlockStructure> {
    if !code.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut blocks: Vec<Block> = Vec::new();
    let labels = std::iter::once(false).chain(code.bits.iter().copied());
    for (v, b) in labels.enumerate() {
        let kind = if b { BlockKind::Dominating } else { BlockKind::Isolated };
        match blocks.last_mut() {
            Some(block) if block.kind == kind => block.vertices.push(v),
            _ => blocks.push(Block {
                kind,
                vertices: vec![v],
            }),
        }
    }
    Ok(BlockStructure { blocks })
}

/// `m` copies of `K_k` sharing one universal vertex (vertex 0).
pub fn windmill(k: usize, m: usize) -> Result<Graph> {
    if k < 2 || m < 1 {
        return Err(Error::InvalidParameters(format!(
            "windmill needs k >= 2 and m >= 1, got k = {k}, m = {m}"
        )));
    }
    let blade = k - 1;
    let mut g = Graph::empty(m * blade + 1);
    for b in 0..m {
        let members: Vec<usize> = (1 + b * blade..1 + (b + 1) * blade).collect();
        for (i, &u) in members.iter().enumerate() {
            g.add_edge(0, u);
            for &v in &members[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}
