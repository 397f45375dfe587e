//! Parametrized builders for the named graph families, plus the
//! clique-extension construction, behind a small textual DSL.
//!
//! Grammar (one token of lookahead, case sensitive):
//!
//! ```text
//! P<l> | C<l> | K<r> | S<t> | B<k> | F<k> | Mbar<k> | MbarP<k>
//!     | T(<r>,<n>) | M(<s1>,...,<sr>) | g6:<literal>
//! ```
//!
//! `P<l>` is the path on `l` vertices (so `P3` has two edges). Vertex
//! labelings are fixed and documented on [`FamilySpec::build`] so that
//! witnesses are reproducible byte for byte.

use std::fmt;

use crate::graph::{Graph, MAX_VERTICES};
use crate::{Error, Result};

/// Ordered part sizes of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassVector {
    sizes: Vec<usize>,
}

impl ClassVector {
    /// All sizes must be positive and there must be at least one part.
    pub fn new(sizes: Vec<usize>) -> Result<ClassVector> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::EmptyPart);
        }
        Ok(ClassVector { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Total vertex count.
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Number of parts.
    pub fn r(&self) -> usize {
        self.sizes.len()
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Parsed description of a named graph family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Path on `l` vertices, `l >= 1`.
    Path(usize),
    /// Cycle on `l` vertices, `l >= 3`.
    Cycle(usize),
    /// Complete graph on `r` vertices, `r >= 1`.
    Clique(usize),
    /// Star with `t` leaves plus a center, `t >= 1`.
    Star(usize),
    /// `k` triangles sharing one common edge, `k >= 1` (`k + 2` vertices).
    Book(usize),
    /// `k` triangles sharing one common vertex, `k >= 1` (`2k + 1` vertices).
    Fan(usize),
    /// Complete graph on `2k` vertices minus a perfect matching.
    MatchingComplement(usize),
    /// Same with one matching edge restored.
    MatchingComplementPlus(usize),
    /// Turán graph: complete `r`-partite on `n` vertices, balanced parts.
    Turan { parts: usize, n: usize },
    /// Complete multipartite graph with explicit part sizes.
    CompleteMultipartite(ClassVector),
    /// Verbatim graph6 literal.
    Graph6Literal(String),
}

impl FamilySpec {
    /// Builds the graph with a fixed, documented labeling:
    ///
    /// * paths/cycles: vertices `0..l` in traversal order;
    /// * stars: center 0, leaves `1..=t`;
    /// * books: shared edge `0-1`, pages `2..k+2`;
    /// * fans: shared vertex 0, triangle `i` on `{0, 2i+1, 2i+2}`;
    /// * matching complements: missing matching `{2i, 2i+1}`, the restored
    ///   edge (for the plus variant) is `0-1`;
    /// * Turán / complete multipartite: parts occupy consecutive labels,
    ///   larger parts first.
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Path(l) => {
                range_check(l >= 1, "path needs l >= 1")?;
                capacity(l)?;
                Graph::new(l, &(1..l).map(|i| (i - 1, i)).collect::<Vec<_>>())
            }
            FamilySpec::Cycle(l) => {
                range_check(l >= 3, "cycle needs l >= 3")?;
                capacity(l)?;
                Graph::new(l, &(0..l).map(|i| (i, (i + 1) % l)).collect::<Vec<_>>())
            }
            FamilySpec::Clique(r) => {
                range_check(r >= 1, "clique needs r >= 1")?;
                capacity(r)?;
                Graph::new(r, &all_pairs(r))
            }
            FamilySpec::Star(t) => {
                range_check(t >= 1, "star needs t >= 1")?;
                capacity(t + 1)?;
                Graph::new(t + 1, &(1..=t).map(|v| (0, v)).collect::<Vec<_>>())
            }
            FamilySpec::Book(k) => {
                range_check(k >= 1, "book needs k >= 1")?;
                capacity(k + 2)?;
                let mut edges = vec![(0, 1)];
                for p in 2..k + 2 {
                    edges.push((0, p));
                    edges.push((1, p));
                }
                Graph::new(k + 2, &edges)
            }
            FamilySpec::Fan(k) => {
                range_check(k >= 1, "fan needs k >= 1")?;
                capacity(2 * k + 1)?;
                let mut edges = Vec::new();
                for i in 0..k {
                    let (a, b) = (2 * i + 1, 2 * i + 2);
                    edges.push((0, a));
                    edges.push((0, b));
                    edges.push((a, b));
                }
                Graph::new(2 * k + 1, &edges)
            }
            FamilySpec::MatchingComplement(k) => {
                range_check(k >= 1, "matching complement needs k >= 1")?;
                capacity(2 * k)?;
                Graph::new(2 * k, &matching_complement_edges(k))
            }
            FamilySpec::MatchingComplementPlus(k) => {
                range_check(k >= 1, "matching complement needs k >= 1")?;
                capacity(2 * k)?;
                let mut edges = matching_complement_edges(k);
                edges.push((0, 1));
                Graph::new(2 * k, &edges)
            }
            FamilySpec::Turan { parts, n } => turan(parts, n),
            FamilySpec::CompleteMultipartite(ref cv) => complete_multipartite(cv),
            FamilySpec::Graph6Literal(ref s) => crate::graph6::parse_graph6(s),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path(l) => write!(f, "P{l}"),
            FamilySpec::Cycle(l) => write!(f, "C{l}"),
            FamilySpec::Clique(r) => write!(f, "K{r}"),
            FamilySpec::Star(t) => write!(f, "S{t}"),
            FamilySpec::Book(k) => write!(f, "B{k}"),
            FamilySpec::Fan(k) => write!(f, "F{k}"),
            FamilySpec::MatchingComplement(k) => write!(f, "Mbar{k}"),
            FamilySpec::MatchingComplementPlus(k) => write!(f, "MbarP{k}"),
            FamilySpec::Turan { parts, n } => write!(f, "T({parts},{n})"),
            FamilySpec::CompleteMultipartite(ref cv) => {
                write!(f, "M(")?;
                for (i, s) in cv.sizes().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
            FamilySpec::Graph6Literal(ref s) => write!(f, "g6:{s}"),
        }
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn matching_complement_edges(k: usize) -> Vec<(usize, usize)> {
    all_pairs(2 * k)
        .into_iter()
        .filter(|&(u, v)| !(u / 2 == v / 2))
        .collect()
}

fn capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices(n))
    } else {
        Ok(())
    }
}

fn range_check(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::FamilyRange(msg.into()))
    }
}

/// Part sizes of the Turán graph with `r` parts on `n` vertices: the first
/// `n mod r` parts have size `ceil(n/r)`, the rest `floor(n/r)`. Zero sizes
/// appear when `r > n`.
pub fn turan_class_sizes(r: usize, n: usize) -> Vec<usize> {
    let q = n / r;
    let rem = n % r;
    (0..r).map(|i| if i < rem { q + 1 } else { q }).collect()
}

/// The Turán graph: complete `r`-partite, classes as equal as possible,
/// larger classes first on consecutive labels.
pub fn turan(r: usize, n: usize) -> Result<Graph> {
    if r < 1 || r > n {
        return Err(Error::PartsExceedVertices { r, n });
    }
    capacity(n)?;
    let cv = ClassVector::new(turan_class_sizes(r, n))?;
    complete_multipartite(&cv)
}

/// Complete multipartite graph on the given class vector; classes occupy
/// consecutive labels in the given order.
pub fn complete_multipartite(cv: &ClassVector) -> Result<Graph> {
    let n = cv.n();
    capacity(n)?;
    let mut bounds = Vec::with_capacity(cv.r() + 1);
    bounds.push(0usize);
    for s in cv.sizes() {
        bounds.push(bounds.last().unwrap() + s);
    }
    let part_of = |v: usize| bounds.partition_point(|&b| b <= v) - 1;
    let edges: Vec<(usize, usize)> = all_pairs(n)
        .into_iter()
        .filter(|&(u, v)| part_of(u) != part_of(v))
        .collect();
    Graph::new(n, &edges)
}

/// Extends `h` by a disjoint clique on `k - 1` new vertices joined to the
/// clique `x_mask` of `h` exactly along `pattern`.
///
/// `pattern` entries are `(vertex of h in x_mask, index into the new
/// clique 0..k-1)`. The vertex set `x_mask` must induce a complete
/// subgraph of `h`; the new clique gets labels `h.n()..h.n()+k-2`.
pub fn extend_with_clique(
    h: &Graph,
    x_mask: u16,
    k: usize,
    pattern: &[(usize, usize)],
) -> Result<Graph> {
    if k < 1 {
        return Err(Error::FamilyRange("clique extension needs k >= 1".into()));
    }
    let added = k - 1;
    let n = h.n() + added;
    capacity(n)?;
    if x_mask & !h.vertex_mask() != 0 {
        return Err(Error::VertexOutOfRange(15 - x_mask.leading_zeros() as usize, h.n()));
    }
    // x_mask must induce a clique
    let mut rest = x_mask;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if rest & !h.neighbors(u) != 0 {
            return Err(Error::NotAClique);
        }
    }
    let mut g = *h;
    for _ in 0..added {
        g = g.with_appended_vertex(0)?;
    }
    for a in 0..added {
        for b in a + 1..added {
            g.add_edge_unchecked(h.n() + a, h.n() + b);
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(x, c) in pattern {
        if x_mask & (1 << x) == 0 {
            return Err(Error::VertexOutOfRange(x, h.n()));
        }
        if c >= added {
            return Err(Error::VertexOutOfRange(c, added));
        }
        if !seen.insert((x, c)) {
            return Err(Error::DuplicateEdge(x, h.n() + c));
        }
        g.add_edge_unchecked(x, h.n() + c);
    }
    Ok(g)
}

/// Parses the family DSL. Errors carry the byte offset of the failure.
pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let err = |offset: usize, message: &str| Error::FamilyParse {
        offset,
        message: message.into(),
    };
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(err(0, "empty family string"));
    }
    if let Some(rest) = text.strip_prefix("g6:") {
        if rest.is_empty() {
            return Err(err(3, "empty graph6 literal"));
        }
        return Ok(FamilySpec::Graph6Literal(rest.to_string()));
    }
    match bytes[0] {
        b'P' => Ok(FamilySpec::Path(parse_int(text, 1)?)),
        b'C' => Ok(FamilySpec::Cycle(parse_int(text, 1)?)),
        b'K' => Ok(FamilySpec::Clique(parse_int(text, 1)?)),
        b'S' => Ok(FamilySpec::Star(parse_int(text, 1)?)),
        b'B' => Ok(FamilySpec::Book(parse_int(text, 1)?)),
        b'F' => Ok(FamilySpec::Fan(parse_int(text, 1)?)),
        b'M' => {
            if text.starts_with("Mbar") {
                if bytes.get(4) == Some(&b'P') {
                    Ok(FamilySpec::MatchingComplementPlus(parse_int(text, 5)?))
                } else {
                    Ok(FamilySpec::MatchingComplement(parse_int(text, 4)?))
                }
            } else if bytes.get(1) == Some(&b'(') {
                let sizes = parse_int_list(text, 1)?;
                Ok(FamilySpec::CompleteMultipartite(ClassVector::new(sizes)?))
            } else {
                Err(err(1, "expected 'bar' or '(' after 'M'"))
            }
        }
        b'T' => {
            let args = parse_int_list(text, 1)?;
            if args.len() != 2 {
                return Err(err(1, "T takes exactly two arguments: T(r,n)"));
            }
            Ok(FamilySpec::Turan { parts: args[0], n: args[1] })
        }
        _ => Err(err(0, "expected one of P C K S B F Mbar MbarP T( M( g6:")),
    }
}

/// Decimal integer covering `text[from..]` entirely.
fn parse_int(text: &str, from: usize) -> Result<usize> {
    let digits = &text[from.min(text.len())..];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::FamilyParse {
            offset: from + digits.bytes().position(|b| !b.is_ascii_digit()).unwrap_or(0),
            message: "expected a decimal integer".into(),
        });
    }
    digits.parse().map_err(|_| Error::FamilyParse {
        offset: from,
        message: "integer out of range".into(),
    })
}

/// Parenthesized comma-separated integer list starting at `text[from..]`,
/// consuming the rest of the string.
fn parse_int_list(text: &str, from: usize) -> Result<Vec<usize>> {
    let bytes = text.as_bytes();
    let err = |offset: usize, message: &str| Error::FamilyParse {
        offset,
        message: message.into(),
    };
    if bytes.get(from) != Some(&b'(') {
        return Err(err(from, "expected '('"));
    }
    if bytes.last() != Some(&b')') {
        return Err(err(text.len(), "expected ')'"));
    }
    let inner = &text[from + 1..text.len() - 1];
    if inner.is_empty() {
        return Err(err(from + 1, "expected at least one integer"));
    }
    let mut out = Vec::new();
    let mut pos = from + 1;
    for item in inner.split(',') {
        if item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(pos, "expected a decimal integer"));
        }
        out.push(item.parse().map_err(|_| err(pos, "integer out of range"))?);
        pos += item.len() + 1;
    }
    Ok(out)
}
