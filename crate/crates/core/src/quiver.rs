//! Quivers with loops and parallel edges, their doubled arrow set, the
//! orientation sign and the Cartan data of the underlying graph.
//!
//! Edge `k`, oriented `tail -> head`, contributes arrow `2k` (in the chosen
//! orientation) and arrow `2k + 1` (its reversal). The reversal of `h` is
//! `h ^ 1`.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Arrow = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, other: &DimVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn as_usize(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x.max(0) as usize).collect()
    }

    /// All vectors `0 <= u <= self`, lexicographically ordered.
    pub fn box_below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &b in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..=b.max(0)).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len(), "dimension vector length mismatch");
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len(), "dimension vector length mismatch");
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Symmetric generalized Cartan matrix of the underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix(pub Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn apply(&self, v: &DimVector) -> DimVector {
        DimVector(self.0.iter().map(|row| row.iter().zip(&v.0).map(|(c, x)| c * x).sum()).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    /// Oriented edges `(tail, head)`.
    edges: Vec<(usize, usize)>,
}

impl Quiver {
    /// Builds a quiver whose edges are given in their chosen orientation.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        for (k, &(t, h)) in edges.iter().enumerate() {
            if t >= n || h >= n {
                return Err(Error::InvalidQuiver(format!("edge {k} references a missing vertex")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label `{v}`")));
            }
        }
        Ok(Quiver { vertices, edges })
    }

    /// Vertices labelled `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Quiver::new((0..n).map(|i| i.to_string()).collect(), edges.to_vec()).expect("valid edges")
    }

    pub fn jordan() -> Self {
        Quiver::from_edges(1, &[(0, 0)])
    }

    /// Type A_n, linearly oriented.
    pub fn type_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Quiver::from_edges(n, &edges)
    }

    /// Type D_n (n >= 4): a chain 0..n-2 with vertex n-1 attached to n-3.
    pub fn type_d(n: usize) -> Self {
        assert!(n >= 4, "D_n needs n >= 4");
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
        edges.push((n - 3, n - 1));
        Quiver::from_edges(n, &edges)
    }

    /// Type E_n (n = 6, 7, 8): chain 0..n-2 with vertex n-1 attached to 2.
    pub fn type_e(n: usize) -> Self {
        assert!((6..=8).contains(&n), "E_n needs 6 <= n <= 8");
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
        edges.push((2, n - 1));
        Quiver::from_edges(n, &edges)
    }

    /// Affine A_1: two vertices joined by two parallel edges.
    pub fn affine_a1() -> Self {
        Quiver::from_edges(2, &[(0, 1), (0, 1)])
    }

    /// Affine A_n (n >= 2): an n+1 cycle.
    pub fn affine_a(n: usize) -> Self {
        assert!(n >= 2);
        let edges: Vec<_> = (0..=n).map(|i| (i, (i + 1) % (n + 1))).collect();
        Quiver::from_edges(n + 1, &edges)
    }

    /// Parses a Dynkin label such as `A2`, `D4`, `E6`.
    pub fn dynkin(label: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown Dynkin type `{label}`"));
        let (kind, rank) = label.split_at(1);
        let n: usize = rank.parse().map_err(|_| bad())?;
        match kind.to_ascii_uppercase().as_str() {
            "A" if n >= 1 => Ok(Quiver::type_a(n)),
            "D" if n >= 4 => Ok(Quiver::type_d(n)),
            "E" if (6..=8).contains(&n) => Ok(Quiver::type_e(n)),
            _ => Err(bad()),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_arrows(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn arrows(&self) -> std::ops::Range<Arrow> {
        0..self.num_arrows()
    }

    pub fn bar(&self, h: Arrow) -> Arrow {
        h ^ 1
    }

    /// Tail vertex `out(h)`.
    pub fn source(&self, h: Arrow) -> usize {
        let (t, hd) = self.edges[h / 2];
        if h % 2 == 0 {
            t
        } else {
            hd
        }
    }

    /// Head vertex `in(h)`.
    pub fn target(&self, h: Arrow) -> usize {
        self.source(h ^ 1)
    }

    pub fn in_orientation(&self, h: Arrow) -> bool {
        h % 2 == 0
    }

    /// `+1` on the chosen orientation, `-1` on reversed arrows.
    pub fn epsilon(&self, h: Arrow) -> Result<i64> {
        if h >= self.num_arrows() {
            return Err(Error::UnknownArrow(h));
        }
        Ok(if self.in_orientation(h) { 1 } else { -1 })
    }

    pub fn loops_at(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(t, h)| t == i && h == i).count()
    }

    pub fn is_loop_free(&self, i: usize) -> bool {
        self.loops_at(i) == 0
    }

    pub fn edges_between(&self, i: usize, j: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(t, h)| (t == i && h == j) || (t == j && h == i))
            .count()
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.num_vertices();
        let mut c = vec![vec![0i64; n]; n];
        for &(t, h) in &self.edges {
            if t == h {
                c[t][t] -= 2;
            } else {
                c[t][h] -= 1;
                c[h][t] -= 1;
            }
        }
        for (i, row) in c.iter_mut().enumerate() {
            row[i] += 2;
        }
        CartanMatrix(c)
    }

    pub fn check_dims(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.num_vertices() {
            return Err(Error::IndexMismatch { expected: self.num_vertices(), got: v.len() });
        }
        Ok(())
    }

    /// `(v, v') = v^T C v'`.
    pub fn bilinear_form(&self, v: &DimVector, w: &DimVector) -> Result<i64> {
        self.check_dims(v)?;
        self.check_dims(w)?;
        Ok(v.dot(&self.cartan_matrix().apply(w)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(t, h) in &self.edges {
                for (a, b) in [(t, h), (h, t)] {
                    if a == i && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether the vertices in the support of `v` induce a connected subgraph.
    pub fn support_connected(&self, v: &DimVector) -> bool {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v.0[i] != 0).collect();
        let Some(&start) = support.first() else { return false };
        let mut seen = vec![false; v.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &(t, h) in &self.edges {
                for (a, b) in [(t, h), (h, t)] {
                    if a == i && v.0[b] != 0 && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        support.into_iter().all(|i| seen[i])
    }

    /// Arrows leaving vertex `i`.
    pub fn arrows_from(&self, i: usize) -> impl Iterator<Item = Arrow> + '_ {
        self.arrows().filter(move |&h| self.source(h) == i)
    }
}

/// JSON quiver format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<[String; 2]>>,
}

impl QuiverJson {
    pub fn into_quiver(self) -> Result<Quiver> {
        let index = |label: &str| {
            self.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::UnknownVertex(label.to_string()))
        };
        let mut oriented = Vec::with_capacity(self.edges.len());
        for (k, [a, b]) in self.edges.iter().enumerate() {
            let (i, j) = (index(a)?, index(b)?);
            let dir = match &self.orientation {
                None => (i, j),
                Some(o) => {
                    let [t, h] = o.get(k).ok_or_else(|| {
                        Error::InvalidQuiver(format!("orientation has no entry for edge {k}"))
                    })?;
                    let (t, h) = (index(t)?, index(h)?);
                    if !((t == i && h == j) || (t == j && h == i)) {
                        return Err(Error::InvalidQuiver(format!(
                            "orientation entry {k} does not match edge {{{a},{b}}}"
                        )));
                    }
                    (t, h)
                }
            };
            oriented.push(dir);
        }
        if let Some(o) = &self.orientation {
            if o.len() != self.edges.len() {
                return Err(Error::InvalidQuiver("orientation and edges differ in length".into()));
            }
        }
        Quiver::new(self.vertices.clone(), oriented)
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        let label = |i: usize| q.vertices[i].clone();
        let pairs: Vec<[String; 2]> = q.edges.iter().map(|&(t, h)| [label(t), label(h)]).collect();
        QuiverJson { vertices: q.vertices.clone(), edges: pairs.clone(), orientation: Some(pairs) }
    }
}

impl Quiver {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: QuiverJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.into_quiver()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&QuiverJson::from_quiver(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_examples() {
        assert_eq!(Quiver::type_a(2).cartan_matrix().0, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(Quiver::jordan().cartan_matrix().0, vec![vec![0]]);
        assert_eq!(Quiver::affine_a1().cartan_matrix().0, vec![vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn bilinear_examples() {
        let a2 = Quiver::type_a(2);
        assert_eq!(a2.bilinear_form(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(), -1);
        let j = Quiver::jordan();
        assert_eq!(j.bilinear_form(&DimVector(vec![3]), &DimVector(vec![5])).unwrap(), 0);
        let a1h = Quiver::affine_a1();
        assert_eq!(a1h.bilinear_form(&DimVector(vec![1, 1]), &DimVector(vec![1, 1])).unwrap(), 0);
        assert!(matches!(
            a2.bilinear_form(&DimVector(vec![1]), &DimVector(vec![0, 1])),
            Err(Error::IndexMismatch { .. })
        ));
    }

    #[test]
    fn epsilon_examples() {
        let a2 = Quiver::type_a(2);
        assert_eq!(a2.epsilon(0).unwrap(), 1);
        assert_eq!(a2.epsilon(a2.bar(0)).unwrap(), -1);
        let j = Quiver::jordan();
        assert_eq!(j.epsilon(0).unwrap(), 1);
        assert_eq!(j.epsilon(1).unwrap(), -1);
        assert_eq!(j.source(1), 0);
        assert_eq!(j.target(1), 0);
        assert_eq!(a2.epsilon(7), Err(Error::UnknownArrow(7)));
    }

    #[test]
    fn arrow_involution() {
        for q in [Quiver::type_d(4), Quiver::jordan(), Quiver::affine_a1(), Quiver::type_e(6)] {
            assert_eq!(q.num_arrows(), 2 * q.edges().len());
            for h in q.arrows() {
                let hb = q.bar(h);
                assert_eq!(q.bar(hb), h);
                assert_eq!(q.source(hb), q.target(h));
                assert_eq!(q.epsilon(hb).unwrap(), -q.epsilon(h).unwrap());
            }
            // sum of epsilon over a bar-symmetric function vanishes
            let total: i64 = q.arrows().map(|h| q.epsilon(h).unwrap() * (q.source(h) + q.target(h)) as i64).sum();
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn json_round_trip_and_orientation() {
        let s = r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b"]],"orientation":[["b","a"],["a","b"]]}"#;
        let q = Quiver::from_json_str(s).unwrap();
        assert_eq!(q.edges(), &[(1, 0), (0, 1)]);
        assert_eq!(Quiver::from_json_str(&q.to_json_string()).unwrap(), q);
        let bad = r#"{"vertices":["a","b"],"edges":[["a","b"]],"orientation":[["a","a"]]}"#;
        assert!(Quiver::from_json_str(bad).is_err());
        let missing = r#"{"vertices":["a"],"edges":[["a","z"]]}"#;
        assert_eq!(Quiver::from_json_str(missing), Err(Error::UnknownVertex("z".into())));
    }

    #[test]
    fn dynkin_labels() {
        assert_eq!(Quiver::dynkin("A3").unwrap().num_vertices(), 3);
        assert_eq!(Quiver::dynkin("E8").unwrap().edges().len(), 7);
        assert!(Quiver::dynkin("D3").is_err());
        assert!(Quiver::dynkin("X").is_err());
    }
}
