use std::fmt;

/// Label of a segment of a composite canonical path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartLabel {
    /// Leading segment (the order-keeping moves).
    I,
    /// Single block-reordering edge joining the two halves.
    Delta,
    /// Trailing segment.
    Pi,
}

impl fmt::Display for PartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartLabel::I => "I",
            PartLabel::Delta => "Δ",
            PartLabel::Pi => "Π",
        })
    }
}

/// A labelled vertex range `start..=end` of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Part {
    pub label: PartLabel,
    pub start: usize,
    pub end: usize,
}

impl Part {
    pub fn edges(&self) -> usize {
        self.end - self.start
    }
}

/// A nonempty vertex sequence. Its length is the number of edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Path<V> {
    vertices: Vec<V>,
    parts: Vec<Part>,
}

impl<V: Clone + PartialEq> Path<V> {
    pub fn single(v: V) -> Self {
        Path { vertices: vec![v], parts: Vec::new() }
    }

    /// Panics on an empty vector.
    pub fn from_vertices(vertices: Vec<V>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Path { vertices, parts: Vec::new() }
    }

    pub fn push(&mut self, v: V) {
        self.vertices.push(v);
    }

    /// Appends `other`, whose first vertex must equal this path's last vertex.
    pub fn extend_with(&mut self, other: &Path<V>) {
        assert!(other.first() == self.last(), "paths do not join");
        self.vertices.extend(other.vertices[1..].iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<V> {
        self.vertices
    }

    pub fn first(&self) -> &V {
        &self.vertices[0]
    }

    pub fn last(&self) -> &V {
        self.vertices.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&V, &V)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn reversed(&self) -> Path<V> {
        let mut v = self.vertices.clone();
        v.reverse();
        Path { vertices: v, parts: Vec::new() }
    }

    pub fn map<W: Clone + PartialEq>(&self, f: impl FnMut(&V) -> W) -> Path<W> {
        Path { vertices: self.vertices.iter().map(f).collect(), parts: self.parts.clone() }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn part(&self, label: PartLabel) -> Option<&Part> {
        self.parts.iter().find(|p| p.label == label)
    }

    /// Vertices of the named part.
    pub fn part_vertices(&self, label: PartLabel) -> Option<&[V]> {
        self.part(label).map(|p| &self.vertices[p.start..=p.end])
    }

    pub(crate) fn mark(&mut self, label: PartLabel, start: usize, end: usize) {
        debug_assert!(start <= end && end < self.vertices.len());
        self.parts.push(Part { label, start, end });
    }
}

impl<V: fmt::Display> Path<V> {
    /// One vertex per line. Each part starts with a `# <label>` comment line;
    /// a part's first vertex is printed only when it does not close the
    /// previous part.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        if self.parts.is_empty() {
            for v in &self.vertices {
                s.push_str(&format!("{v}\n"));
            }
            return s;
        }
        let mut next = 0;
        for p in &self.parts {
            s.push_str(&format!("# {}\n", p.label));
            for v in &self.vertices[next.max(p.start)..=p.end] {
                s.push_str(&format!("{v}\n"));
            }
            next = p.end + 1;
        }
        s
    }
}

impl<V: fmt::Debug> fmt::Debug for Path<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Path").field("vertices", &self.vertices).field("parts", &self.parts).finish()
    }
}
