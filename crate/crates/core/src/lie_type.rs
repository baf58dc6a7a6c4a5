//! The integer Cartan matrix of the scaled system, recognition of its type
//! as a product of finite families, and the full analysis pipeline with
//! text and JSON reports.

use crate::braiding::Input;
use crate::cartan_roots::{check_centrality, root_data, Centrality, RootDatum};
use crate::error::{Error, Result};
use crate::groupoid::{explore, longest_word, positive_roots, GroupoidAtlas, PositiveRoots};
use crate::matrix::{format_root, RootVec, SquareMat};
use crate::scaled::{
    coroot_pairing, scaled_reflection, scaled_system, simple_scaled, verify_axioms, AxiomReport,
    ScaledRootSystem,
};

/// Resource limits and switches for one analysis run.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_roots: usize,
    pub skip_centrality: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_objects: 100_000, max_roots: 10_000, skip_centrality: false }
    }
}

/// A product of simple finite family factors, or the zero algebra when the
/// scaled system is empty. Factors are kept sorted by family letter, then
/// rank, and low-rank coincidences never appear: the recognizer emits B2
/// for the rank-2 double edge and plain A names for the small coincidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemisimpleType {
    Zero,
    Product(Vec<(char, usize)>),
}

impl SemisimpleType {
    pub fn name(&self) -> String {
        match self {
            SemisimpleType::Zero => "ZERO".to_string(),
            SemisimpleType::Product(fs) => fs
                .iter()
                .map(|(f, n)| format!("{f}{n}"))
                .collect::<Vec<_>>()
                .join("x"),
        }
    }

    /// Number of positive roots of the named product.
    pub fn positive_root_count(&self) -> usize {
        match self {
            SemisimpleType::Zero => 0,
            SemisimpleType::Product(fs) => fs.iter().map(|&(f, n)| family_posroots(f, n)).sum(),
        }
    }
}

fn family_posroots(family: char, n: usize) -> usize {
    match family {
        'A' => n * (n + 1) / 2,
        'B' | 'C' => n * n,
        'D' => n * (n - 1),
        'E' => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        'F' => 24,
        _ => 6,
    }
}

/// The Cartan matrix of the scaled system over the given simple members:
/// off-diagonal a_ij = −max{m ≥ 0 : mϖ_i + ϖ_j ∈ Ω_+}. The maximum exists
/// because the system is finite and m = 0 always qualifies.
pub fn cartan_matrix_a(pi: &[RootVec], omega: &ScaledRootSystem) -> Vec<Vec<i64>> {
    let n = pi.len();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                a[i][j] = 2;
                continue;
            }
            let mut m = 0i64;
            loop {
                let cand: RootVec = pi[i]
                    .iter()
                    .zip(pi[j].iter())
                    .map(|(x, y)| (m + 1) * x + y)
                    .collect();
                if omega.contains(&cand) {
                    m += 1;
                } else {
                    break;
                }
            }
            a[i][j] = -m;
        }
    }
    a
}

/// Recognize an integer Cartan matrix as a product of finite families.
/// Components of the nonzero-entry graph are matched by tree shape and
/// edge weights; anything outside the finite templates is rejected.
pub fn classify(a: &[Vec<i64>]) -> Result<SemisimpleType> {
    let n = a.len();
    if n == 0 {
        return Ok(SemisimpleType::Zero);
    }
    for i in 0..n {
        if a[i].len() != n {
            return Err(Error::InternalInconsistency("cartan matrix is not square".into()));
        }
        if a[i][i] != 2 {
            return Err(Error::InternalInconsistency(format!(
                "diagonal entry a_{0}{0} = {1}, expected 2",
                i + 1,
                a[i][i]
            )));
        }
        for j in 0..n {
            if i != j {
                if a[i][j] > 0 {
                    return Err(Error::InternalInconsistency(format!(
                        "off-diagonal entry a_{}{} = {} is positive",
                        i + 1,
                        j + 1,
                        a[i][j]
                    )));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::InternalInconsistency(format!(
                        "zero pattern is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }

    // connected components of the nonzero pattern
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if u != v && a[v][u] != 0 && comp[u] == usize::MAX {
                    comp[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }

    let mut factors = Vec::with_capacity(count);
    for c in 0..count {
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        factors.push(classify_component(a, &members)?);
    }
    factors.sort();
    Ok(SemisimpleType::Product(factors))
}

fn classify_component(a: &[Vec<i64>], members: &[usize]) -> Result<(char, usize)> {
    let n = members.len();
    if n == 1 {
        return Ok(('A', 1));
    }
    let reject = |what: &str| {
        Err(Error::Unclassifiable(format!(
            "component {{{}}} {}",
            members.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(","),
            what
        )))
    };

    // edges with their weight a_uv * a_vu
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for (x, &u) in members.iter().enumerate() {
        for &v in &members[x + 1..] {
            if a[u][v] != 0 {
                if a[u][v] < -3 || a[v][u] < -3 {
                    return reject("has an entry below -3");
                }
                edges.push((u, v, a[u][v] * a[v][u]));
            }
        }
    }
    if edges.len() != n - 1 {
        return reject("is not a tree");
    }
    if edges.iter().any(|&(_, _, w)| w > 3) {
        return reject("has an edge of weight 4 or more");
    }

    let degree = |v: usize| -> usize { members.iter().filter(|&&u| u != v && a[v][u] != 0).count() };

    let multi: Vec<&(usize, usize, i64)> = edges.iter().filter(|&&(_, _, w)| w > 1).collect();
    match multi.len() {
        0 => {
            // simply laced: path or one branch vertex
            let branch: Vec<usize> =
                members.iter().copied().filter(|&v| degree(v) >= 3).collect();
            match branch.as_slice() {
                [] => Ok(('A', n)),
                [b] => {
                    if degree(*b) > 3 {
                        return reject("has a vertex of degree 4 or more");
                    }
                    let mut arms: Vec<usize> = members
                        .iter()
                        .copied()
                        .filter(|&v| v != *b && a[*b][v] != 0)
                        .map(|mut v| {
                            // walk away from the branch vertex
                            let mut prev = *b;
                            let mut len = 1;
                            loop {
                                let next = members
                                    .iter()
                                    .copied()
                                    .find(|&u| u != prev && u != v && a[v][u] != 0);
                                match next {
                                    Some(u) => {
                                        prev = v;
                                        v = u;
                                        len += 1;
                                    }
                                    None => break len,
                                }
                            }
                        })
                        .collect();
                    arms.sort();
                    match arms.as_slice() {
                        [1, 1, _] => Ok(('D', n)),
                        [1, 2, 2] => Ok(('E', 6)),
                        [1, 2, 3] => Ok(('E', 7)),
                        [1, 2, 4] => Ok(('E', 8)),
                        _ => reject("has a branch outside the finite templates"),
                    }
                }
                _ => reject("has two branch vertices"),
            }
        }
        1 => {
            let &&(u, v, w) = multi.first().unwrap();
            if members.iter().any(|&x| degree(x) >= 3) {
                return reject("mixes a branch vertex with a multiple edge");
            }
            if w == 3 {
                return if n == 2 { Ok(('G', 2)) } else { reject("has a triple edge in rank above 2") };
            }
            // w == 2: the row holding the -2 belongs to the short vertex
            let (short, long) = if a[u][v] == -2 { (u, v) } else { (v, u) };
            if n == 2 {
                return Ok(('B', 2));
            }
            if degree(short) == 1 {
                Ok(('B', n))
            } else if degree(long) == 1 {
                Ok(('C', n))
            } else if n == 4 {
                Ok(('F', 4))
            } else {
                reject("has an interior double edge outside rank 4")
            }
        }
        _ => reject("has two multiple edges"),
    }
}

/// Everything one analysis computes, ready for rendering.
#[derive(Clone, Debug)]
pub struct LieTypeReport {
    pub theta: usize,
    pub diagram_form: bool,
    pub entries: Vec<Vec<String>>,
    pub diagram_text: String,
    pub objects_count: usize,
    pub roots: Vec<RootVec>,
    pub data: Vec<RootDatum>,
    pub centrality: Centrality,
    pub omega_plus: Vec<RootVec>,
    pub pi: Vec<RootVec>,
    pub cartan_matrix: Option<Vec<Vec<i64>>>,
    pub lie_type: SemisimpleType,
    pub axioms: Option<AxiomReport>,
    pub warnings: Vec<String>,
}

fn reflections_for(
    atlas: &GroupoidAtlas,
    pr: &PositiveRoots,
    data: &[RootDatum],
) -> Result<Vec<(RootVec, SquareMat)>> {
    data.iter()
        .filter(|d| d.is_cartan)
        .map(|d| {
            let scaled: RootVec = d.beta.iter().map(|&x| x * d.n_beta as i64).collect();
            let s = scaled_reflection(atlas, pr.witness(d.index))?;
            let img = s.apply(&scaled);
            if img.iter().zip(scaled.iter()).any(|(x, y)| *x != -*y) {
                return Err(Error::InternalInconsistency(format!(
                    "reflection of {:?} does not negate it",
                    scaled
                )));
            }
            Ok((scaled, s))
        })
        .collect()
}

/// Run the whole pipeline on a validated input.
pub fn analyze(input: &Input, bounds: &Bounds) -> Result<LieTypeReport> {
    let q = &input.matrix;
    let mut warnings = Vec::new();
    if !q.is_connected() {
        warnings.push(
            "dynkin diagram is disconnected; all components are analyzed together".to_string(),
        );
    }
    if input.diagram_form {
        warnings.push(
            "input fixes only the diagram; the centrality verdict applies to the chosen representative matrix"
                .to_string(),
        );
    }

    let atlas = explore(q, bounds.max_objects)?;
    let word = longest_word(&atlas, 0, None, bounds.max_roots)?;
    let pr = positive_roots(&atlas, &word)?;
    let data = root_data(&atlas, &pr)?;

    let centrality = if bounds.skip_centrality {
        Centrality::Unknown
    } else {
        check_centrality(q, &data)
    };
    if matches!(centrality, Centrality::Fails { .. }) {
        warnings.push(
            "centrality condition fails for this matrix; the reported type describes the scaled root system only"
                .to_string(),
        );
    }

    let omega = scaled_system(&data)?;
    let (pi, cartan_matrix, lie_type, axioms) = if omega.is_empty() {
        (Vec::new(), None, SemisimpleType::Zero, None)
    } else {
        let pi = simple_scaled(&omega);
        let refls = reflections_for(&atlas, &pr, &data)?;
        let ax = verify_axioms(&omega, &refls);
        let a = cartan_matrix_a(&pi, &omega);
        for (i, wi) in pi.iter().enumerate() {
            let s = refls
                .iter()
                .find(|(b, _)| b == wi)
                .ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "simple scaled root {:?} has no attached reflection",
                        wi
                    ))
                })?;
            for (j, wj) in pi.iter().enumerate() {
                let b = coroot_pairing(&s.1, wi, wj)?;
                let expect = if i == j { 2 } else { a[i][j] };
                if b != expect {
                    return Err(Error::InternalInconsistency(format!(
                        "pairing value {} at ({}, {}) disagrees with the multiple count {}",
                        b,
                        i + 1,
                        j + 1,
                        expect
                    )));
                }
            }
        }
        let t = classify(&a)?;
        let expected = t.positive_root_count();
        if expected != omega.len() {
            return Err(Error::Unclassifiable(format!(
                "type {} accounts for {} positive roots, the system has {}",
                t.name(),
                expected,
                omega.len()
            )));
        }
        (pi, Some(a), t, Some(ax))
    };

    let entries = (0..q.theta())
        .map(|i| (0..q.theta()).map(|j| q.entry(i, j).to_string()).collect())
        .collect();
    let d = q.diagram();
    let mut diagram_text = format!(
        "vertices {}",
        d.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    );
    if d.edges.is_empty() {
        diagram_text.push_str("; no edges");
    } else {
        diagram_text.push_str("; edges ");
        diagram_text.push_str(
            &d.edges
                .iter()
                .map(|(i, j, v)| format!("{}-{}: {}", i + 1, j + 1, v))
                .collect::<Vec<_>>()
                .join(", "),
        );
    }

    Ok(LieTypeReport {
        theta: q.theta(),
        diagram_form: input.diagram_form,
        entries,
        diagram_text,
        objects_count: atlas.len(),
        roots: pr.roots.clone(),
        data,
        centrality,
        omega_plus: omega.positive().to_vec(),
        pi,
        cartan_matrix,
        lie_type,
        axioms,
        warnings,
    })
}

impl LieTypeReport {
    pub fn to_json(&self) -> serde_json::Value {
        let cartan_roots: Vec<serde_json::Value> = self
            .data
            .iter()
            .filter(|d| d.is_cartan)
            .map(|d| serde_json::json!({"beta": d.beta, "n_beta": d.n_beta}))
            .collect();
        serde_json::json!({
            "input": self.entries,
            "objects_count": self.objects_count,
            "positive_roots": self.roots,
            "cartan_roots": cartan_roots,
            "condition_31": self.centrality.label(),
            "omega_plus": self.omega_plus,
            "pi": self.pi,
            "cartan_matrix": self.cartan_matrix,
            "type": self.lie_type.name(),
            "axioms": self.axioms,
            "warnings": self.warnings,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let form = if self.diagram_form { "diagram form" } else { "full matrix" };
        out.push_str(&format!("input ({form}, theta {}):\n", self.theta));
        for row in &self.entries {
            out.push_str(&format!("  {}\n", row.join(" ")));
        }
        out.push_str(&format!("dynkin diagram: {}\n", self.diagram_text));
        out.push_str(&format!("groupoid objects: {}\n", self.objects_count));
        out.push_str(&format!(
            "positive roots ({}): {}\n",
            self.roots.len(),
            self.roots.iter().map(|r| format_root(r)).collect::<Vec<_>>().join(", ")
        ));
        let cartan: Vec<&RootDatum> = self.data.iter().filter(|d| d.is_cartan).collect();
        out.push_str(&format!("cartan roots ({}):\n", cartan.len()));
        for d in &cartan {
            out.push_str(&format!("  {}  N {}\n", format_root(&d.beta), d.n_beta));
        }
        out.push_str(&format!("centrality condition: {}", self.centrality.label()));
        if let Centrality::Fails { alpha, beta } = &self.centrality {
            out.push_str(&format!(
                "  (pair {} , {})",
                format_root(alpha),
                format_root(beta)
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "omega_+ ({}): {}\n",
            self.omega_plus.len(),
            self.omega_plus.iter().map(|r| format_root(r)).collect::<Vec<_>>().join(", ")
        ));
        out.push_str(&format!(
            "pi ({}): {}\n",
            self.pi.len(),
            self.pi.iter().map(|r| format_root(r)).collect::<Vec<_>>().join(", ")
        ));
        match &self.cartan_matrix {
            Some(a) => {
                out.push_str("cartan matrix:\n");
                for row in a {
                    out.push_str(&format!(
                        "  [{}]\n",
                        row.iter().map(|x| format!("{x:2}")).collect::<Vec<_>>().join(" ")
                    ));
                }
            }
            None => out.push_str("cartan matrix: (empty system)\n"),
        }
        match &self.axioms {
            Some(ax) => {
                let yn = |b: bool| if b { "yes" } else { "NO" };
                out.push_str(&format!(
                    "axioms: nonzero {}, spans {}, stable {}, integral {}\n",
                    yn(ax.nonzero),
                    yn(ax.spans),
                    yn(ax.stable),
                    yn(ax.integral)
                ));
                if let Some(w) = &ax.witness {
                    out.push_str(&format!("  axiom witness: {w}\n"));
                }
            }
            None => out.push_str("axioms: (empty system)\n"),
        }
        out.push_str(&format!("type: {}\n", self.lie_type.name()));
        if self.warnings.is_empty() {
            out.push_str("warnings: (none)\n");
        } else {
            out.push_str("warnings:\n");
            for w in &self.warnings {
                out.push_str(&format!("  - {w}\n"));
            }
        }
        out
    }

    /// The root table alone: every positive root with N, the truncation
    /// order, and the Cartan flag.
    pub fn render_roots(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("positive roots ({}):\n", self.roots.len()));
        let strings: Vec<String> = self.data.iter().map(|d| format_root(&d.beta)).collect();
        let width = strings.iter().map(|s| s.len()).max().unwrap_or(4).max(4);
        out.push_str(&format!("  {:<width$}  {:>4}  {:>4}  cartan\n", "root", "N", "N~"));
        for (d, s) in self.data.iter().zip(&strings) {
            let nt = match d.n_tilde() {
                Some(n) => n.to_string(),
                None => "inf".to_string(),
            };
            out.push_str(&format!(
                "  {:<width$}  {:>4}  {:>4}  {}\n",
                s,
                d.n_beta,
                nt,
                if d.is_cartan { "yes" } else { "no" }
            ));
        }
        out
    }
}
