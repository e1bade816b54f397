//! Coxeter graphs, independent generator sets and parabolic deletions.

use std::fmt;

use crate::error::{Error, Result};

/// Edge label `m_st` between two distinct generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u64),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u64> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    /// True for `m ≥ 3` or `∞`, i.e. when the pair is joined in the graph.
    pub fn is_edge(self) -> bool {
        self != Label::Finite(2)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter graph on generators `0..n`. Unlisted pairs commute (`m = 2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    labels: Vec<Label>,
    name: String,
}

/// Strictly increasing generator indices, pairwise commuting.
pub type IndependentSet = Vec<usize>;

impl CoxeterGraph {
    /// `n` pairwise commuting generators.
    pub fn discrete(n: usize) -> CoxeterGraph {
        let mut labels = vec![Label::Finite(2); n * n];
        for i in 0..n {
            labels[i * n + i] = Label::Finite(1);
        }
        CoxeterGraph { n, labels, name: if n == 0 { "trivial".into() } else { format!("{n}A1") } }
    }

    pub fn with_edge(mut self, i: usize, j: usize, label: Label) -> CoxeterGraph {
        self.set_label(i, j, label);
        self
    }

    pub fn set_label(&mut self, i: usize, j: usize, label: Label) {
        assert!(i != j && i < self.n && j < self.n, "bad edge {i}-{j}");
        if let Label::Finite(m) = label {
            assert!(m >= 2, "labels must be at least 2");
        }
        self.labels[i * self.n + j] = label;
        self.labels[j * self.n + i] = label;
    }

    pub fn named(mut self, name: impl Into<String>) -> CoxeterGraph {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.n + j]
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        i != j && self.label(i, j) == Label::Finite(2)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| j != i && self.label(i, j).is_edge()).collect()
    }

    /// All joined pairs `(i, j, m)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, Label)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.label(i, j).is_edge() {
                    out.push((i, j, self.label(i, j)));
                }
            }
        }
        out
    }

    pub fn has_infinite_label(&self) -> bool {
        self.edges().iter().any(|e| e.2 == Label::Infinite)
    }

    /// The `M` of the common coefficient field ℚ(2cos(π/M)).
    pub fn field_modulus(&self) -> u64 {
        crate::exactfield::field_modulus_for_labels(self.edges().iter().filter_map(|e| e.2.finite()))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &i)| set[a + 1..].iter().all(|&j| self.commute(i, j)))
    }

    /// Graph induced on `vertices`; its vertex `a` is `vertices[a]`.
    pub fn induced(&self, vertices: &[usize]) -> CoxeterGraph {
        let mut g = CoxeterGraph::discrete(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                let l = self.label(i, j);
                if l.is_edge() {
                    g.set_label(a, b, l);
                }
            }
        }
        g.name = classify(&g);
        g
    }

    /// Disjoint union; generators of `other` follow those of `self`.
    pub fn product(&self, other: &CoxeterGraph) -> CoxeterGraph {
        let n = self.n + other.n;
        let mut g = CoxeterGraph::discrete(n);
        for (i, j, l) in self.edges() {
            g.set_label(i, j, l);
        }
        for (i, j, l) in other.edges() {
            g.set_label(self.n + i, self.n + j, l);
        }
        g.name = match (self.n, other.n) {
            (0, _) => other.name.clone(),
            (_, 0) => self.name.clone(),
            _ => format!("{}x{}", self.name, other.name),
        };
        g
    }

    /// Path `0 - 1 - ... - (k-1)` with the given consecutive labels.
    pub fn path(labels: &[u64]) -> CoxeterGraph {
        let mut g = CoxeterGraph::discrete(labels.len() + 1);
        for (i, &m) in labels.iter().enumerate() {
            if m != 2 {
                g.set_label(i, i + 1, Label::Finite(m));
            }
        }
        g
    }

    /// Type A_n (the symmetric group S_{n+1}); `n = 0` is the trivial group.
    pub fn type_a(n: usize) -> CoxeterGraph {
        let mut g = CoxeterGraph::discrete(n);
        for i in 1..n {
            g.set_label(i - 1, i, Label::Finite(3));
        }
        g.named(if n == 0 { "trivial".to_string() } else { format!("A{n}") })
    }

    /// B_n = C_n, `n ≥ 2`: the last edge carries label 4.
    pub fn type_b(n: usize) -> CoxeterGraph {
        assert!(n >= 2);
        let mut labels = vec![3; n - 1];
        labels[n - 2] = 4;
        CoxeterGraph::path(&labels).named(format!("B{n}"))
    }

    /// D_n, `n ≥ 4`: path on `s_1..s_{n-1}` plus `s_n` attached to `s_{n-2}`.
    pub fn type_d(n: usize) -> CoxeterGraph {
        assert!(n >= 4);
        CoxeterGraph::path(&vec![3; n - 2])
            .extend(1)
            .with_edge(n - 3, n - 1, Label::Finite(3))
            .named(format!("D{n}"))
    }

    /// E_6, E_7, E_8 in Bourbaki numbering: `s_1 - s_3 - s_4 - ... - s_n` with `s_2` on `s_4`.
    pub fn type_e(n: usize) -> CoxeterGraph {
        assert!((6..=8).contains(&n));
        let mut g = CoxeterGraph::discrete(n).with_edge(0, 2, Label::Finite(3)).with_edge(1, 3, Label::Finite(3));
        for i in 2..n - 1 {
            g.set_label(i, i + 1, Label::Finite(3));
        }
        g.named(format!("E{n}"))
    }

    pub fn type_f4() -> CoxeterGraph {
        CoxeterGraph::path(&[3, 4, 3]).named("F4")
    }

    /// H_2, H_3, H_4: the label 5 sits on the first edge.
    pub fn type_h(n: usize) -> CoxeterGraph {
        assert!((2..=4).contains(&n));
        let mut labels = vec![3; n - 1];
        labels[0] = 5;
        CoxeterGraph::path(&labels).named(format!("H{n}"))
    }

    pub fn type_i2(p: u64) -> CoxeterGraph {
        assert!(p >= 2);
        CoxeterGraph::path(&[p]).named(format!("I2({p})"))
    }

    fn extend(self, extra: usize) -> CoxeterGraph {
        let mut g = CoxeterGraph::discrete(self.n + extra);
        for (i, j, l) in self.edges() {
            g.set_label(i, j, l);
        }
        g
    }

    /// Whether this is the path `A_n` with generators in path order.
    pub fn is_standard_type_a(&self) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| self.label(i, j) == if j == i + 1 { Label::Finite(3) } else { Label::Finite(2) })
        })
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                for j in self.neighbors(comp[k]) {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Largest size of an independent set.
    pub fn max_independent_size(&self) -> usize {
        (0..=self.n).rev().find(|&k| !independent_sets(self, k).is_empty()).unwrap_or(0)
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// All independent `k`-subsets, lexicographically ordered.
pub fn independent_sets(g: &CoxeterGraph, k: usize) -> Vec<IndependentSet> {
    fn go(g: &CoxeterGraph, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<IndependentSet>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..g.n() {
            if g.n() - v < k - cur.len() {
                break;
            }
            if cur.iter().all(|&u| g.commute(u, v)) {
                cur.push(v);
                go(g, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= g.n() {
        go(g, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Independent sets of every size `0..=max`, grouped by size.
pub fn all_independent_sets(g: &CoxeterGraph) -> Vec<Vec<IndependentSet>> {
    let mut out = Vec::new();
    for k in 0..=g.n() {
        let sets = independent_sets(g, k);
        if sets.is_empty() {
            break;
        }
        out.push(sets);
    }
    out
}

/// The subgraphs used by the long exact sequence for a vertex `s`.
#[derive(Clone, Debug)]
pub struct ParabolicDeletion {
    pub s: usize,
    /// Graph on `S ∖ {s}`.
    pub minus_s: CoxeterGraph,
    /// Vertex `i` of `minus_s` is vertex `minus_s_map[i]` of the parent.
    pub minus_s_map: Vec<usize>,
    /// Graph on `S ∖ B_s(1)`.
    pub far: CoxeterGraph,
    pub far_map: Vec<usize>,
    /// `s` together with its neighbours, increasing.
    pub ball: Vec<usize>,
}

pub fn parabolic_deletions(g: &CoxeterGraph, s: usize) -> Result<ParabolicDeletion> {
    if s >= g.n() {
        return Err(Error::Unsupported(format!("generator index {s} out of range for {}", g.name())));
    }
    let minus_s_map: Vec<usize> = (0..g.n()).filter(|&v| v != s).collect();
    let mut ball = g.neighbors(s);
    ball.push(s);
    ball.sort_unstable();
    let far_map: Vec<usize> = (0..g.n()).filter(|v| !ball.contains(v)).collect();
    Ok(ParabolicDeletion {
        s,
        minus_s: g.induced(&minus_s_map),
        minus_s_map,
        far: g.induced(&far_map),
        far_map,
        ball,
    })
}

/// Names each connected component by its Coxeter type and joins them with
/// `x`, components ordered by their smallest vertex. Components that are
/// not of finite type are written `?n`.
pub fn classify(g: &CoxeterGraph) -> String {
    let comps = g.connected_components();
    if comps.is_empty() {
        return "trivial".into();
    }
    comps.iter().map(|c| classify_connected(&g_sub(g, c))).collect::<Vec<_>>().join("x")
}

/// Component types as a sorted list, convenient for comparisons.
pub fn component_types(g: &CoxeterGraph) -> Vec<String> {
    let mut v: Vec<String> =
        g.connected_components().iter().map(|c| classify_connected(&g_sub(g, c))).collect();
    v.sort();
    v
}

fn g_sub(g: &CoxeterGraph, vertices: &[usize]) -> CoxeterGraph {
    let mut h = CoxeterGraph::discrete(vertices.len());
    for (a, &i) in vertices.iter().enumerate() {
        for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
            if g.label(i, j).is_edge() {
                h.set_label(a, b, g.label(i, j));
            }
        }
    }
    h
}

fn classify_connected(g: &CoxeterGraph) -> String {
    let n = g.n();
    let unknown = format!("?{n}");
    let edges = g.edges();
    if n == 1 {
        return "A1".into();
    }
    if edges.len() != n - 1 || g.has_infinite_label() {
        return unknown;
    }
    let deg: Vec<usize> = (0..n).map(|i| g.neighbors(i).len()).collect();
    let heavy: Vec<u64> = edges.iter().filter_map(|e| e.2.finite()).filter(|&m| m > 3).collect();
    if n == 2 {
        let m = edges[0].2.finite().unwrap();
        return match m {
            3 => "A2".into(),
            4 => "B2".into(),
            6 => "G2".into(),
            _ => format!("I2({m})"),
        };
    }
    let branch = deg.iter().filter(|&&d| d >= 3).count();
    if branch == 0 {
        // A path; walk it from one end to read the label sequence.
        let start = (0..n).find(|&i| deg[i] == 1).unwrap();
        let mut seq = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            let next = g.neighbors(cur).into_iter().find(|&j| j != prev);
            match next {
                Some(j) => {
                    seq.push(g.label(cur, j).finite().unwrap());
                    prev = cur;
                    cur = j;
                }
                None => break,
            }
        }
        if heavy.is_empty() {
            return format!("A{n}");
        }
        if heavy.len() == 1 {
            let at_end = seq[0] > 3 || seq[seq.len() - 1] > 3;
            match (heavy[0], at_end, n) {
                (4, true, _) => return format!("B{n}"),
                (4, false, 4) => return "F4".into(),
                (5, true, 3 | 4) => return format!("H{n}"),
                _ => {}
            }
        }
        return unknown;
    }
    if branch == 1 && heavy.is_empty() && deg.iter().all(|&d| d <= 3) {
        let center = (0..n).find(|&i| deg[i] == 3).unwrap();
        let mut arms: Vec<usize> = g
            .neighbors(center)
            .into_iter()
            .map(|first| {
                let (mut prev, mut cur, mut len) = (center, first, 1);
                while let Some(j) = g.neighbors(cur).into_iter().find(|&j| j != prev) {
                    prev = cur;
                    cur = j;
                    len += 1;
                }
                len
            })
            .collect();
        arms.sort_unstable();
        return match (arms[0], arms[1], arms[2]) {
            (1, 1, _) => format!("D{n}"),
            (1, 2, 2..=4) => format!("E{n}"),
            _ => unknown,
        };
    }
    unknown
}

fn parse_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::GraphParse { spec: spec.to_string(), reason: reason.into() }
}

fn parse_uint(spec: &str, s: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(spec, format!("expected an integer, found {s:?}")));
    }
    s.parse().map_err(|_| parse_err(spec, format!("integer {s:?} out of range")))
}

/// Parses a graph spec such as `A3`, `I2(7)`, `D4xA1` or
/// `custom;n=3;edges=1-2:3,2-3:inf` (custom vertices are 1-based).
pub fn parse_graph(spec: &str) -> Result<CoxeterGraph> {
    if spec.is_empty() {
        return Err(parse_err(spec, "empty spec"));
    }
    if spec.chars().any(char::is_whitespace) {
        return Err(parse_err(spec, "whitespace is not allowed"));
    }
    let mut parts = spec.split('x');
    let mut g = parse_factor(spec, parts.next().unwrap())?;
    for p in parts {
        g = g.product(&parse_factor(spec, p)?);
    }
    Ok(g)
}

fn parse_factor(spec: &str, f: &str) -> Result<CoxeterGraph> {
    if let Some(rest) = f.strip_prefix("custom;") {
        return parse_custom(spec, f, rest);
    }
    if let Some(inner) = f.strip_prefix("I2(") {
        let p = inner.strip_suffix(')').ok_or_else(|| parse_err(spec, "unclosed I2("))?;
        let p = parse_uint(spec, p)?;
        if p < 2 {
            return Err(parse_err(spec, "I2(p) needs p >= 2"));
        }
        return Ok(CoxeterGraph::type_i2(p));
    }
    let mut chars = f.chars();
    let family = chars.next().ok_or_else(|| parse_err(spec, "empty factor"))?;
    let rank = parse_uint(spec, chars.as_str())? as usize;
    let out_of_range = |lo: usize, hi: usize| {
        parse_err(spec, format!("rank {rank} out of range {lo}..={hi} for family {family}"))
    };
    match family {
        'A' => (rank >= 1).then(|| CoxeterGraph::type_a(rank)).ok_or_else(|| out_of_range(1, usize::MAX)),
        'B' | 'C' => (rank >= 2).then(|| CoxeterGraph::type_b(rank)).ok_or_else(|| out_of_range(2, usize::MAX)),
        'D' => (rank >= 4).then(|| CoxeterGraph::type_d(rank)).ok_or_else(|| out_of_range(4, usize::MAX)),
        'E' => (6..=8).contains(&rank).then(|| CoxeterGraph::type_e(rank)).ok_or_else(|| out_of_range(6, 8)),
        'F' => (rank == 4).then(CoxeterGraph::type_f4).ok_or_else(|| out_of_range(4, 4)),
        'H' => (2..=4).contains(&rank).then(|| CoxeterGraph::type_h(rank)).ok_or_else(|| out_of_range(2, 4)),
        _ => Err(parse_err(spec, format!("unknown family {family:?}"))),
    }
}

fn parse_custom(spec: &str, factor: &str, rest: &str) -> Result<CoxeterGraph> {
    let (n_part, edges_part) =
        rest.split_once(';').ok_or_else(|| parse_err(spec, "custom graph needs ';edges='"))?;
    let n = parse_uint(spec, n_part.strip_prefix("n=").ok_or_else(|| parse_err(spec, "expected n="))?)? as usize;
    if n == 0 {
        return Err(parse_err(spec, "custom graph needs n >= 1"));
    }
    let list = edges_part.strip_prefix("edges=").ok_or_else(|| parse_err(spec, "expected edges="))?;
    let mut g = CoxeterGraph::discrete(n);
    if !list.is_empty() {
        for e in list.split(',') {
            let (pair, label) = e.split_once(':').ok_or_else(|| parse_err(spec, format!("edge {e:?} lacks ':'")))?;
            let (a, b) = pair.split_once('-').ok_or_else(|| parse_err(spec, format!("edge {e:?} lacks '-'")))?;
            let (a, b) = (parse_uint(spec, a)? as usize, parse_uint(spec, b)? as usize);
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(parse_err(spec, format!("bad vertex pair {a}-{b} for n={n}")));
            }
            let label = if label == "inf" {
                Label::Infinite
            } else {
                let m = parse_uint(spec, label)?;
                if m < 2 {
                    return Err(parse_err(spec, format!("label {m} must be at least 2")));
                }
                Label::Finite(m)
            };
            g.set_label(a - 1, b - 1, label);
        }
    }
    Ok(g.named(factor))
}
