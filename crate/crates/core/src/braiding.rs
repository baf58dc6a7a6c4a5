//! Braiding matrices of diagonal type and their vertex-local data.
//!
//! A braiding matrix is a θ×θ matrix q of roots of unity with q_ii != 1.
//! From it we read off the Dynkin diagram (vertex labels q_ii, edge labels
//! q~_ij = q_ij q_ji wherever that product is not 1), the generalized Cartan
//! entries, the simple reflections, and the basis-change transform ρ_i that
//! produces the neighbouring matrix in the Weyl groupoid.

use crate::cyclo::{bilinear_form, UnityRoot};
use crate::error::{Error, Result};
use crate::matrix::{RootVec, SquareMat};

/// Validated braiding matrix with its derived vertex data cached at
/// construction: q~ products, Cartan entries, reflection matrices,
/// connectivity. All caches are immutable once built.
#[derive(Clone)]
pub struct BraidingMatrix {
    entries: Vec<Vec<UnityRoot>>,
    qtilde: Vec<Vec<UnityRoot>>,
    cartan: Vec<Vec<i64>>,
    reflections: Vec<SquareMat>,
    connected: bool,
}

impl PartialEq for BraidingMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl std::fmt::Debug for BraidingMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut rows = f.debug_list();
        for row in &self.entries {
            rows.entry(&row.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" "));
        }
        rows.finish()
    }
}
impl Eq for BraidingMatrix {}

impl std::hash::Hash for BraidingMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

/// Vertex labels and edges of the Dynkin diagram of a braiding matrix.
/// Edges carry the q~ label; absent pairs have q~ = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub vertices: Vec<UnityRoot>,
    pub edges: Vec<(usize, usize, UnityRoot)>,
    pub connected: bool,
}

impl BraidingMatrix {
    /// Validate and cache. Rejects non-square input and any diagonal entry
    /// equal to 1 (such a vertex has no well-defined reflection).
    pub fn new(entries: Vec<Vec<UnityRoot>>) -> Result<Self> {
        let theta = entries.len();
        if theta == 0 {
            return Err(Error::Validation("empty matrix".into()));
        }
        if entries.iter().any(|row| row.len() != theta) {
            return Err(Error::Validation("matrix is not square".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i].is_one() {
                return Err(Error::Validation(format!(
                    "diagonal entry q_{0}{0} = 1 (vertex {0} has no reflection)",
                    i + 1
                )));
            }
        }
        let mut qtilde = vec![vec![UnityRoot::one(); theta]; theta];
        for i in 0..theta {
            for j in 0..theta {
                qtilde[i][j] = if i == j {
                    entries[i][i].clone()
                } else {
                    entries[i][j].times(&entries[j][i])
                };
            }
        }
        let mut cartan = vec![vec![0i64; theta]; theta];
        for i in 0..theta {
            for j in 0..theta {
                cartan[i][j] = if i == j {
                    2
                } else {
                    cartan_entry(&entries[i][i], &qtilde[i][j])
                };
            }
        }
        let reflections = (0..theta)
            .map(|i| {
                let mut s = SquareMat::identity(theta);
                for j in 0..theta {
                    s.set(i, j, if j == i { -1 } else { -cartan[i][j] });
                }
                s
            })
            .collect();
        let connected = diagram_connected(&qtilde);
        Ok(BraidingMatrix { entries, qtilde, cartan, reflections, connected })
    }

    pub fn theta(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &UnityRoot {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<UnityRoot>] {
        &self.entries
    }

    /// q~_ij = q_ij q_ji for i != j; q~_ii = q_ii.
    pub fn qtilde(&self, i: usize, j: usize) -> &UnityRoot {
        &self.qtilde[i][j]
    }

    /// Generalized Cartan entry c_ij.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_row(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    /// A vertex is Cartan when q~_ij = q_ii^{c_ij} for every j != i.
    pub fn is_cartan_vertex(&self, i: usize) -> bool {
        (0..self.theta()).all(|j| {
            i == j || self.qtilde[i][j] == self.entries[i][i].power(self.cartan[i][j])
        })
    }

    /// Simple reflection s_i as an integer matrix: α_j goes to
    /// α_j − c_ij α_i (and α_i to −α_i).
    pub fn reflection(&self, i: usize) -> &SquareMat {
        &self.reflections[i]
    }

    /// The bilinear form q(α, β) on root vectors.
    pub fn form(&self, a: &[i64], b: &[i64]) -> UnityRoot {
        bilinear_form(&self.entries, a, b)
    }

    /// Basis change along the reflection at vertex i: the matrix with
    /// entries q(s_i α_j, s_i α_k). Expanding the form bilinearly gives the
    /// closed form used here,
    /// q'_jk = q_jk · q_ji^{-c_ik} · q_ik^{-c_ij} · q_ii^{c_ij c_ik}.
    /// Fails if a diagonal entry of the result equals 1 (invalid input
    /// upstream; finite-type matrices never trigger it).
    pub fn rho(&self, i: usize) -> Result<BraidingMatrix> {
        let theta = self.theta();
        assert!(i < theta);
        let mut out = vec![vec![UnityRoot::one(); theta]; theta];
        for j in 0..theta {
            for k in 0..theta {
                let cij = self.cartan[i][j];
                let cik = self.cartan[i][k];
                out[j][k] = self.entries[j][k]
                    .times(&self.entries[j][i].power(-cik))
                    .times(&self.entries[i][k].power(-cij))
                    .times(&self.entries[i][i].power(cij.checked_mul(cik).expect("cartan entry product overflow")));
            }
        }
        BraidingMatrix::new(out)
    }

    /// Submatrix on a set of vertices (0-based, strictly increasing).
    pub fn restrict(&self, vertices: &[usize]) -> Result<BraidingMatrix> {
        if vertices.is_empty() {
            return Err(Error::Validation("empty vertex set".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(
                "vertex set must be strictly increasing".into(),
            ));
        }
        if *vertices.last().unwrap() >= self.theta() {
            return Err(Error::Validation(format!(
                "vertex {} out of range 1..={}",
                vertices.last().unwrap() + 1,
                self.theta()
            )));
        }
        let entries = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        BraidingMatrix::new(entries)
    }

    pub fn diagram(&self) -> DynkinDiagram {
        let theta = self.theta();
        let mut edges = Vec::new();
        for i in 0..theta {
            for j in i + 1..theta {
                if !self.qtilde[i][j].is_one() {
                    edges.push((i, j, self.qtilde[i][j].clone()));
                }
            }
        }
        DynkinDiagram {
            vertices: (0..theta).map(|i| self.entries[i][i].clone()).collect(),
            edges,
            connected: self.connected,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Simple root α_i as a coordinate vector.
    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.theta()];
        v[i] = 1;
        v
    }
}

/// c_ij = −min{ n ≥ 0 : (n+1)_{q_ii} (1 − q_ii^n q~_ij) = 0 }.
///
/// Since q_ii != 1, the quantum number (n+1)_{q_ii} vanishes exactly when
/// ord(q_ii) divides n+1, first at n = ord(q_ii) − 1; the other factor
/// vanishes at the smallest n with q_ii^n q~_ij = 1, if q~_ij lies in the
/// cyclic group generated by q_ii. The entry is the smaller branch, negated.
fn cartan_entry(qii: &UnityRoot, qt: &UnityRoot) -> i64 {
    debug_assert!(!qii.is_one());
    if qt.is_one() {
        return 0;
    }
    let ord = qii.order();
    let serre = (ord - 1) as i64;
    let mut chain: Option<i64> = None;
    let mut pow = UnityRoot::one();
    for n in 0..ord {
        if pow.times(qt).is_one() {
            chain = Some(n as i64);
            break;
        }
        pow = pow.times(qii);
    }
    -match chain {
        Some(c) => c.min(serre),
        None => serre,
    }
}

fn diagram_connected(qtilde: &[Vec<UnityRoot>]) -> bool {
    let theta = qtilde.len();
    let mut seen = vec![false; theta];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..theta {
            if i != j && !seen[j] && !qtilde[i][j].is_one() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A parsed input file: the matrix plus the convention it was written in.
/// Diagram-form input pins down only q_ii and the products q~_ij, so any
/// statement about individual entries (notably condition checks on the full
/// form) applies to the chosen representative only.
#[derive(Debug)]
pub struct Input {
    pub matrix: BraidingMatrix,
    pub diagram_form: bool,
}

/// Parse a matrix file. Two layouts:
///
/// ```text
/// matrix            diagram
/// theta 3           theta 3
/// 1/2 2/3 1         v 1 1/2
/// 1 1/3 1/6         v 2 1/3
/// 1 1 5/6           v 3 5/6
///                   e 1 2 2/3
///                   e 2 3 1/6
/// ```
///
/// Entries are exponent fractions `a/b` (a root of unity exp(2πi·a/b)) with
/// `1` accepted for the unit. `#` starts a comment. Diagram form fills
/// q_ij := q~_ij and q_ji := 1 for i < j; unlisted pairs get q~ = 1.
pub fn parse(text: &str) -> Result<Input> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let form = lines[0];
    if form != "matrix" && form != "diagram" {
        return Err(Error::Parse(format!(
            "first line must be `matrix` or `diagram`, got `{form}`"
        )));
    }
    let theta = match lines.get(1).and_then(|l| l.strip_prefix("theta ")) {
        Some(n) => n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad theta line `{}`", lines[1])))?,
        None => return Err(Error::Parse("second line must be `theta N`".into())),
    };
    if theta == 0 {
        return Err(Error::Validation("theta must be at least 1".into()));
    }
    if theta > 9 {
        return Err(Error::Validation(
            "ranks above 9 are not supported (single-digit root notation)".into(),
        ));
    }
    let body = &lines[2..];
    if form == "matrix" {
        if body.len() != theta {
            return Err(Error::Parse(format!(
                "expected {theta} matrix rows, found {}",
                body.len()
            )));
        }
        let mut entries = Vec::with_capacity(theta);
        for (i, line) in body.iter().enumerate() {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != theta {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {theta}",
                    i + 1,
                    row.len()
                )));
            }
            entries.push(row.into_iter().map(UnityRoot::parse).collect::<Result<Vec<_>>>()?);
        }
        Ok(Input { matrix: BraidingMatrix::new(entries)?, diagram_form: false })
    } else {
        let mut diag: Vec<Option<UnityRoot>> = vec![None; theta];
        let mut entries = vec![vec![UnityRoot::one(); theta]; theta];
        let mut seen_edges = std::collections::BTreeSet::new();
        for line in body {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["v", i, val] => {
                    let i = parse_index(i, theta)?;
                    if diag[i].is_some() {
                        return Err(Error::Parse(format!("vertex {} listed twice", i + 1)));
                    }
                    diag[i] = Some(UnityRoot::parse(val)?);
                }
                ["e", i, j, val] => {
                    let i = parse_index(i, theta)?;
                    let j = parse_index(j, theta)?;
                    if i == j {
                        return Err(Error::Parse(format!("edge {0} {0} is a loop", i + 1)));
                    }
                    let (a, b) = (i.min(j), i.max(j));
                    if !seen_edges.insert((a, b)) {
                        return Err(Error::Parse(format!(
                            "edge {} {} listed twice",
                            a + 1,
                            b + 1
                        )));
                    }
                    entries[a][b] = UnityRoot::parse(val)?;
                }
                _ => return Err(Error::Parse(format!("unrecognized line `{line}`"))),
            }
        }
        for (i, d) in diag.into_iter().enumerate() {
            match d {
                Some(v) => entries[i][i] = v,
                None => {
                    return Err(Error::Parse(format!("vertex {} has no label", i + 1)));
                }
            }
        }
        Ok(Input { matrix: BraidingMatrix::new(entries)?, diagram_form: true })
    }
}

fn parse_index(tok: &str, theta: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex index `{tok}`")))?;
    if i == 0 || i > theta {
        return Err(Error::Parse(format!("vertex index {i} out of range 1..={theta}")));
    }
    Ok(i - 1)
}
