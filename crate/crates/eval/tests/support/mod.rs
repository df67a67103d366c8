//! Test-side oracles for scoring: exhaustive tree enumeration, an
//! independent item flattening, and a brute-force aligner over every
//! partial injection of answer items into reference items.

#![allow(dead_code)]

use std::collections::HashMap;

use eqnav_eval::{AnswerTree, Bracket};

/// Which node kinds the enumeration may use.
#[derive(Debug, Clone, Copy)]
pub struct Kinds {
    pub symbols: &'static [&'static str],
    pub square_brackets: bool,
    pub matrices: bool,
}

pub const SMALL: Kinds = Kinds { symbols: &["x", "2"], square_brackets: false, matrices: false };
pub const WIDE: Kinds = Kinds { symbols: &["x", "2"], square_brackets: true, matrices: true };

/// Every normalized tree with exactly `n` scored nodes, memoized by size.
pub struct Enumerator {
    kinds: Kinds,
    terms: HashMap<usize, Vec<AnswerTree>>,
    forests: HashMap<usize, Vec<Vec<AnswerTree>>>,
}

impl Enumerator {
    pub fn new(kinds: Kinds) -> Self {
        Enumerator { kinds, terms: HashMap::new(), forests: HashMap::new() }
    }

    fn seq(items: Vec<AnswerTree>) -> AnswerTree {
        AnswerTree::Sequence(items).normalized()
    }

    fn terms(&mut self, n: usize) -> Vec<AnswerTree> {
        if let Some(t) = self.terms.get(&n) {
            return t.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.extend(self.kinds.symbols.iter().map(|s| AnswerTree::sym(*s)));
        } else if n > 1 {
            for f in self.forests(n - 1) {
                let body = Self::seq(f);
                out.push(AnswerTree::root(body.clone()));
                out.push(AnswerTree::bracketed(body.clone(), Bracket::Round));
                if self.kinds.square_brackets {
                    out.push(AnswerTree::bracketed(body, Bracket::Square));
                }
            }
            for a in 1..n - 1 {
                let left = self.forests(a);
                let right = self.forests(n - 1 - a);
                for l in &left {
                    for r in &right {
                        let (l, r) = (Self::seq(l.clone()), Self::seq(r.clone()));
                        out.push(AnswerTree::exponent(l.clone(), r.clone()));
                        out.push(AnswerTree::fraction(l.clone(), r.clone()));
                        if self.kinds.matrices {
                            out.push(AnswerTree::Matrix(vec![vec![l.clone(), r.clone()]]));
                            out.push(AnswerTree::Matrix(vec![vec![l], vec![r]]));
                        }
                    }
                }
            }
        }
        self.terms.insert(n, out.clone());
        out
    }

    fn forests(&mut self, n: usize) -> Vec<Vec<AnswerTree>> {
        if let Some(f) = self.forests.get(&n) {
            return f.clone();
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(Vec::new());
        } else {
            for first in 1..=n {
                let heads = self.terms(first);
                let tails = self.forests(n - first);
                for h in &heads {
                    for t in &tails {
                        let mut f = vec![h.clone()];
                        f.extend(t.iter().cloned());
                        out.push(f);
                    }
                }
            }
        }
        self.forests.insert(n, out.clone());
        out
    }

    /// Trees with exactly `n` scored nodes; `n = 0` gives the empty sequence.
    pub fn trees(&mut self, n: usize) -> Vec<AnswerTree> {
        self.forests(n).into_iter().map(Self::seq).collect()
    }
}

/// One scored node, described without reference to the library's types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub class: String,
    pub parent: Option<usize>,
    pub slot: String,
    pub prev: Option<usize>,
}

pub fn flatten(tree: &AnswerTree) -> Vec<Node> {
    let mut out = Vec::new();
    walk(&tree.normalized(), None, "top".into(), &mut out);
    out
}

fn walk(tree: &AnswerTree, parent: Option<usize>, slot: String, out: &mut Vec<Node>) {
    let items: Vec<&AnswerTree> = match tree {
        AnswerTree::Sequence(items) => items.iter().collect(),
        other => vec![other],
    };
    let mut prev = None;
    for item in items {
        let me = out.len();
        let class = match item {
            AnswerTree::Symbol(s) => format!("sym:{s}"),
            AnswerTree::Exponent { .. } => "exp".into(),
            AnswerTree::Fraction { .. } => "frac".into(),
            AnswerTree::Root(_) => "root".into(),
            AnswerTree::Bracketed { shape: Bracket::Round, .. } => "round".into(),
            AnswerTree::Bracketed { shape: Bracket::Square, .. } => "square".into(),
            AnswerTree::Matrix(rows) => format!("matrix:{}x{}", rows.len(), rows[0].len()),
            AnswerTree::Sequence(_) => unreachable!("normalized sequences are flat"),
        };
        out.push(Node { class, parent, slot: slot.clone(), prev });
        prev = Some(me);
        match item {
            AnswerTree::Exponent { base, power } => {
                walk(base, Some(me), "base".into(), out);
                walk(power, Some(me), "power".into(), out);
            }
            AnswerTree::Fraction { num, den } => {
                walk(num, Some(me), "num".into(), out);
                walk(den, Some(me), "den".into(), out);
            }
            AnswerTree::Root(r) => walk(r, Some(me), "radicand".into(), out),
            AnswerTree::Bracketed { body, .. } => walk(body, Some(me), "body".into(), out),
            AnswerTree::Matrix(rows) => {
                for (i, row) in rows.iter().enumerate() {
                    for (j, cell) in row.iter().enumerate() {
                        walk(cell, Some(me), format!("cell {i} {j}"), out);
                    }
                }
            }
            _ => {}
        }
    }
}

fn value(r: &[Node], a: &[Node], map: &[Option<usize>]) -> i64 {
    let corresponds = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (None, None) => true,
        (Some(x), Some(y)) => map[x] == Some(y),
        _ => false,
    };
    let mut matched = 0;
    let mut placed = 0;
    for (i, m) in map.iter().enumerate() {
        if let Some(j) = *m {
            matched += 1;
            if r[i].slot == a[j].slot && corresponds(r[i].parent, a[j].parent) && corresponds(r[i].prev, a[j].prev) {
                placed += 1;
            }
        }
    }
    matched + placed - (a.len() as i64 - matched)
}

/// The best `identified + placed - inserted` over all class-respecting
/// partial injections, by exhaustive search.
pub fn best_value(r: &[Node], a: &[Node]) -> i64 {
    fn go(i: usize, r: &[Node], a: &[Node], map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, best: &mut i64) {
        if i == r.len() {
            *best = (*best).max(value(r, a, map));
            return;
        }
        go(i + 1, r, a, map, used, best);
        for j in 0..a.len() {
            if !used[j] && a[j].class == r[i].class {
                used[j] = true;
                map[i] = Some(j);
                go(i + 1, r, a, map, used, best);
                map[i] = None;
                used[j] = false;
            }
        }
    }
    let mut best = i64::MIN;
    go(0, r, a, &mut vec![None; r.len()], &mut vec![false; a.len()], &mut best);
    best
}

/// The score the oracle predicts for `answer` against `reference`.
pub fn oracle_score(answer: &AnswerTree, reference: &AnswerTree) -> f64 {
    let (r, a) = (flatten(reference), flatten(answer));
    if r.is_empty() {
        return if a.is_empty() { 100.0 } else { 0.0 };
    }
    best_value(&r, &a).max(0) as f64 / (2 * r.len()) as f64 * 100.0
}

/// Applies `rewrite` to exactly one sequence anywhere in `tree`, in every
/// possible way.
pub fn rewrite_once(tree: &AnswerTree, rewrite: &dyn Fn(&[AnswerTree]) -> Vec<Vec<AnswerTree>>) -> Vec<AnswerTree> {
    let tree = tree.normalized();
    let terms: Vec<AnswerTree> = tree.terms().to_vec();
    let mut out: Vec<AnswerTree> =
        rewrite(&terms).into_iter().map(|t| AnswerTree::Sequence(t).normalized()).collect();
    for (i, term) in terms.iter().enumerate() {
        for inner in rewrite_children(term, rewrite) {
            let mut t = terms.clone();
            t[i] = inner;
            out.push(AnswerTree::Sequence(t).normalized());
        }
    }
    out
}

fn rewrite_children(term: &AnswerTree, rw: &dyn Fn(&[AnswerTree]) -> Vec<Vec<AnswerTree>>) -> Vec<AnswerTree> {
    match term {
        AnswerTree::Symbol(_) | AnswerTree::Sequence(_) => Vec::new(),
        AnswerTree::Exponent { base, power } => rewrite_once(base, rw)
            .into_iter()
            .map(|b| AnswerTree::exponent(b, (**power).clone()))
            .chain(rewrite_once(power, rw).into_iter().map(|p| AnswerTree::exponent((**base).clone(), p)))
            .collect(),
        AnswerTree::Fraction { num, den } => rewrite_once(num, rw)
            .into_iter()
            .map(|n| AnswerTree::fraction(n, (**den).clone()))
            .chain(rewrite_once(den, rw).into_iter().map(|d| AnswerTree::fraction((**num).clone(), d)))
            .collect(),
        AnswerTree::Root(r) => rewrite_once(r, rw).into_iter().map(AnswerTree::root).collect(),
        AnswerTree::Bracketed { body, shape } => {
            rewrite_once(body, rw).into_iter().map(|b| AnswerTree::bracketed(b, *shape)).collect()
        }
        AnswerTree::Matrix(rows) => {
            let mut out = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    for c in rewrite_once(cell, rw) {
                        let mut m = rows.clone();
                        m[i][j] = c;
                        out.push(AnswerTree::Matrix(m));
                    }
                }
            }
            out
        }
    }
}

/// Removes one symbol from a sequence that keeps at least one term.
pub fn delete_symbol(terms: &[AnswerTree]) -> Vec<Vec<AnswerTree>> {
    if terms.len() < 2 {
        return Vec::new();
    }
    (0..terms.len())
        .filter(|&i| matches!(terms[i], AnswerTree::Symbol(_)))
        .map(|i| {
            let mut t = terms.to_vec();
            t.remove(i);
            t
        })
        .collect()
}

fn body_terms(body: &AnswerTree) -> Vec<AnswerTree> {
    body.normalized().terms().to_vec()
}

/// Moves one bracket's closing side by one term: its last term moves out
/// after it, or the following term moves in. A bracket raised to a power
/// hands the power to the term that moves out.
pub fn misplace_bracket(terms: &[AnswerTree]) -> Vec<Vec<AnswerTree>> {
    let mut out = Vec::new();
    for (i, term) in terms.iter().enumerate() {
        let (body, shape, power) = match term {
            AnswerTree::Bracketed { body, shape } => (body_terms(body), *shape, None),
            AnswerTree::Exponent { base, power } => match &**base {
                AnswerTree::Bracketed { body, shape } => (body_terms(body), *shape, Some((**power).clone())),
                _ => continue,
            },
            _ => continue,
        };
        if body.len() >= 2 {
            let mut inner = body.clone();
            let last = inner.pop().unwrap();
            let bracket = AnswerTree::bracketed(AnswerTree::Sequence(inner).normalized(), shape);
            let moved = match &power {
                Some(p) => AnswerTree::exponent(last, p.clone()),
                None => last,
            };
            let mut t = terms.to_vec();
            t.splice(i..=i, [bracket, moved]);
            out.push(t);
        }
        if power.is_none() && i + 1 < terms.len() {
            let mut inner = body.clone();
            inner.push(terms[i + 1].clone());
            let mut t = terms.to_vec();
            t.splice(i..=i + 1, [AnswerTree::bracketed(AnswerTree::Sequence(inner).normalized(), shape)]);
            out.push(t);
        }
    }
    out
}
