//! The spatial document object model: a graph over text elements with up to
//! twelve directional edge slots per node.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::{ElementId, EquationBundle, TextElement};
use crate::geometry::{segment_hits_rect, BBox};

/// Minor/major displacement ratio at or below which a neighbor is "centre".
pub const CENTRE_DEAD_BAND: f64 = 0.25;

/// Fraction of the median element height used to group element tops when
/// picking the initial focus.
pub const TOP_BAND_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primary {
    Left,
    Up,
    Right,
    Down,
}

impl Primary {
    pub const ALL: [Primary; 4] = [Primary::Left, Primary::Up, Primary::Right, Primary::Down];

    pub fn is_horizontal(self) -> bool {
        matches!(self, Primary::Left | Primary::Right)
    }

    pub fn name(self) -> &'static str {
        match self {
            Primary::Left => "left",
            Primary::Up => "up",
            Primary::Right => "right",
            Primary::Down => "down",
        }
    }
}

impl fmt::Display for Primary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Primary {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(Primary::Left),
            "up" => Ok(Primary::Up),
            "right" => Ok(Primary::Right),
            "down" => Ok(Primary::Down),
            _ => Err(()),
        }
    }
}

/// Variant within a primary direction. `Minus` is up for horizontal
/// primaries and left for vertical ones; `Plus` is the opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Secondary {
    Minus,
    Centre,
    Plus,
}

impl Secondary {
    pub const ALL: [Secondary; 3] = [Secondary::Minus, Secondary::Centre, Secondary::Plus];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction12 {
    pub primary: Primary,
    pub secondary: Secondary,
}

impl Direction12 {
    pub const fn new(primary: Primary, secondary: Secondary) -> Self {
        Direction12 { primary, secondary }
    }

    /// All twelve slots, ordered by primary then secondary.
    pub fn all() -> impl Iterator<Item = Direction12> {
        Primary::ALL
            .into_iter()
            .flat_map(|p| Secondary::ALL.into_iter().map(move |s| Direction12::new(p, s)))
    }

    pub fn slot(self) -> usize {
        let p = Primary::ALL.iter().position(|&x| x == self.primary).unwrap();
        let s = Secondary::ALL.iter().position(|&x| x == self.secondary).unwrap();
        p * 3 + s
    }

    /// The spoken name of the secondary variant, `None` for centre.
    pub fn secondary_name(self) -> Option<&'static str> {
        match (self.primary.is_horizontal(), self.secondary) {
            (_, Secondary::Centre) => None,
            (true, Secondary::Minus) => Some("up"),
            (true, Secondary::Plus) => Some("down"),
            (false, Secondary::Minus) => Some("left"),
            (false, Secondary::Plus) => Some("right"),
        }
    }

    /// Resolves a named refinement ("up", "left", ...) against a primary.
    pub fn refine(primary: Primary, refinement: Primary) -> Option<Direction12> {
        let secondary = match (primary.is_horizontal(), refinement) {
            (true, Primary::Up) | (false, Primary::Left) => Secondary::Minus,
            (true, Primary::Down) | (false, Primary::Right) => Secondary::Plus,
            _ => return None,
        };
        Some(Direction12::new(primary, secondary))
    }

    /// Human form used in prose: "right up", "left", "down right".
    pub fn phrase(self) -> String {
        match self.secondary_name() {
            Some(s) => format!("{} {}", self.primary, s),
            None => self.primary.to_string(),
        }
    }

    /// Compact form used in adjacency listings: "right-up", "down-centre".
    pub fn code(self) -> String {
        format!("{}-{}", self.primary, self.secondary_name().unwrap_or("centre"))
    }
}

impl fmt::Display for Direction12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("boxes share the same center; direction is undefined")]
pub struct DegenerateDirection;

/// Direction from `from` to `to`, judged between box centers.
pub fn classify_direction(from: &BBox, to: &BBox) -> Result<Direction12, DegenerateDirection> {
    let (ax, ay) = from.center();
    let (bx, by) = to.center();
    classify_displacement(bx - ax, by - ay)
}

/// Sector rule on a displacement; `dy` grows downward.
pub fn classify_displacement(dx: f64, dy: f64) -> Result<Direction12, DegenerateDirection> {
    if dx == 0.0 && dy == 0.0 {
        return Err(DegenerateDirection);
    }
    let (primary, major, minor, minus) = if dx.abs() >= dy.abs() {
        let p = if dx > 0.0 { Primary::Right } else { Primary::Left };
        // Minus is upward, i.e. negative dy.
        (p, dx.abs(), dy.abs(), dy < 0.0)
    } else {
        let p = if dy > 0.0 { Primary::Down } else { Primary::Up };
        (p, dy.abs(), dx.abs(), dx < 0.0)
    };
    let secondary = if minor / major <= CENTRE_DEAD_BAND {
        Secondary::Centre
    } else if minus {
        Secondary::Minus
    } else {
        Secondary::Plus
    };
    Ok(Direction12::new(primary, secondary))
}

/// True iff the open segment between the centers of `a` and `b` meets no
/// other element's box.
pub fn line_of_sight(a: &TextElement, b: &TextElement, bundle: &EquationBundle) -> bool {
    let (ca, cb) = (a.bbox.center(), b.bbox.center());
    bundle
        .elements()
        .iter()
        .filter(|e| e.id != a.id && e.id != b.id)
        .all(|e| !segment_hits_rect(ca, cb, &e.bbox))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomNode {
    pub id: ElementId,
    edges: [Option<ElementId>; 12],
}

impl DomNode {
    fn new(id: ElementId) -> Self {
        DomNode { id, edges: [None; 12] }
    }

    pub fn edge(&self, dir: Direction12) -> Option<ElementId> {
        self.edges[dir.slot()]
    }

    /// Filled slots in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (Direction12, ElementId)> + '_ {
        Direction12::all().filter_map(|d| self.edge(d).map(|t| (d, t)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dom {
    nodes: Vec<DomNode>,
    initial_focus: ElementId,
    /// Ordered pairs skipped because their centers coincide.
    degenerate_pairs: Vec<(ElementId, ElementId)>,
}

impl Dom {
    /// Nodes in bundle element order.
    pub fn nodes(&self) -> &[DomNode] {
        &self.nodes
    }

    pub fn node(&self, id: ElementId) -> Option<&DomNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.node(id).is_some()
    }

    pub fn initial_focus(&self) -> ElementId {
        self.initial_focus
    }

    pub fn degenerate_pairs(&self) -> &[(ElementId, ElementId)] {
        &self.degenerate_pairs
    }

    pub fn neighbor(&self, id: ElementId, dir: Direction12) -> Option<ElementId> {
        self.node(id)?.edge(dir)
    }

    /// Every edge as an unordered pair `(min, max)`, sorted and deduplicated.
    pub fn undirected_edges(&self) -> Vec<(ElementId, ElementId)> {
        let mut pairs: Vec<_> = self
            .nodes
            .iter()
            .flat_map(|n| n.edges().map(move |(_, t)| (n.id.min(t), n.id.max(t))))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Plain-text adjacency listing, one line per node:
    /// `id "text": dir→id, ...`.
    pub fn adjacency_listing(&self, bundle: &EquationBundle) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            let text = bundle.element(node.id).map(|e| e.text.as_str()).unwrap_or("?");
            let edges: Vec<String> = node.edges().map(|(d, t)| format!("{d}→{t}")).collect();
            let edges = if edges.is_empty() { "(none)".to_string() } else { edges.join(", ") };
            out.push_str(&format!("{} {:?}: {}\n", node.id, text, edges));
        }
        out
    }
}

/// Builds the DOM: for each ordered pair in line of sight, the target fills
/// the source's slot for that direction unless a strictly closer target
/// already holds it.
pub fn build_dom(bundle: &EquationBundle) -> Dom {
    let elements = bundle.elements();
    let mut nodes: Vec<DomNode> = elements.iter().map(|e| DomNode::new(e.id)).collect();
    let mut degenerate_pairs = Vec::new();
    for (i, from) in elements.iter().enumerate() {
        for (j, to) in elements.iter().enumerate() {
            if i == j || !line_of_sight(from, to, bundle) {
                continue;
            }
            let dir = match classify_direction(&from.bbox, &to.bbox) {
                Ok(d) => d,
                Err(DegenerateDirection) => {
                    degenerate_pairs.push((from.id, to.id));
                    continue;
                }
            };
            let slot = &mut nodes[i].edges[dir.slot()];
            let closer = match *slot {
                None => true,
                Some(cur) => {
                    let cur = &elements[bundle.index_of(cur).unwrap()];
                    from.bbox.center_distance(&to.bbox) < from.bbox.center_distance(&cur.bbox)
                }
            };
            if closer {
                *slot = Some(to.id);
            }
        }
    }
    Dom { nodes, initial_focus: initial_focus(bundle), degenerate_pairs }
}

/// The top-left element: lowest top band, then leftmost, then lowest id.
pub fn initial_focus(bundle: &EquationBundle) -> ElementId {
    let elements = bundle.elements();
    let band = TOP_BAND_FRACTION * median_height(elements);
    let min_top = elements.iter().map(|e| e.bbox.top).min().unwrap();
    elements
        .iter()
        .filter(|e| ((e.bbox.top - min_top) as f64) < band || e.bbox.top == min_top)
        .min_by_key(|e| (e.bbox.left, e.id))
        .unwrap()
        .id
}

pub(crate) fn median_height(elements: &[TextElement]) -> f64 {
    let mut hs: Vec<u32> = elements.iter().map(|e| e.bbox.height).collect();
    hs.sort_unstable();
    let n = hs.len();
    if n % 2 == 1 {
        hs[n / 2] as f64
    } else {
        (hs[n / 2 - 1] + hs[n / 2]) as f64 / 2.0
    }
}
