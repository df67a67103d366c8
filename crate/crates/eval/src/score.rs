//! Correctness scoring of a transcription against a reference.
//!
//! Every node other than a sequence is an item in one of six categories.
//! Each reference item is worth two credits: one for being identified (an
//! answer item of the same category and text is aligned to it) and one for
//! being placed (the aligned answer item has the aligned parent, the same
//! role under it, and the aligned preceding sibling). Answer items left
//! unaligned are insertions and cost one credit each.

use std::collections::HashMap;

use crate::tree::{AnswerTree, Bracket};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Symbol,
    Exponent,
    Fraction,
    Root,
    Bracket,
    Matrix,
}

/// Where an item sits under its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Top,
    Base,
    Power,
    Numerator,
    Denominator,
    Radicand,
    Body,
    Cell { row: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub category: Category,
    /// Symbol text, bracket shape, or matrix dimensions; empty otherwise.
    pub label: String,
    pub parent: Option<usize>,
    pub role: Role,
    /// The item before this one in the same parent and role.
    pub prev: Option<usize>,
}

impl Item {
    fn class(&self) -> (Category, &str) {
        (self.category, &self.label)
    }
}

/// Items of the normalized tree in preorder, so parents and preceding
/// siblings always come before an item.
pub fn items(tree: &AnswerTree) -> Vec<Item> {
    let mut out = Vec::new();
    collect(&tree.normalized(), None, Role::Top, &mut out);
    out
}

fn collect(tree: &AnswerTree, parent: Option<usize>, role: Role, out: &mut Vec<Item>) {
    let mut prev = None;
    for term in tree.terms() {
        let (category, label) = match term {
            AnswerTree::Symbol(t) => (Category::Symbol, t.clone()),
            AnswerTree::Exponent { .. } => (Category::Exponent, String::new()),
            AnswerTree::Fraction { .. } => (Category::Fraction, String::new()),
            AnswerTree::Root(_) => (Category::Root, String::new()),
            AnswerTree::Bracketed { shape, .. } => (
                Category::Bracket,
                match shape {
                    Bracket::Round => "()".to_string(),
                    Bracket::Square => "[]".to_string(),
                },
            ),
            AnswerTree::Matrix(rows) => (Category::Matrix, format!("{}x{}", rows.len(), rows[0].len())),
            AnswerTree::Sequence(_) => unreachable!("normalized terms are never sequences"),
        };
        let me = out.len();
        out.push(Item { category, label, parent, role, prev });
        prev = Some(me);
        match term {
            AnswerTree::Symbol(_) | AnswerTree::Sequence(_) => {}
            AnswerTree::Exponent { base, power } => {
                collect(base, Some(me), Role::Base, out);
                collect(power, Some(me), Role::Power, out);
            }
            AnswerTree::Fraction { num, den } => {
                collect(num, Some(me), Role::Numerator, out);
                collect(den, Some(me), Role::Denominator, out);
            }
            AnswerTree::Root(r) => collect(r, Some(me), Role::Radicand, out),
            AnswerTree::Bracketed { body, .. } => collect(body, Some(me), Role::Body, out),
            AnswerTree::Matrix(rows) => {
                for (row, cells) in rows.iter().enumerate() {
                    for (col, cell) in cells.iter().enumerate() {
                        collect(cell, Some(me), Role::Cell { row, col }, out);
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreReport {
    pub max_score: u32,
    pub earned: u32,
    pub insertions: u32,
    pub deletions: u32,
    pub misplacements: u32,
    /// Percentage in `[0, 100]`.
    pub correctness: f64,
    pub completely_correct: bool,
}

/// Whether `a` (aligned to `r`) keeps `r`'s parent, role and predecessor.
pub fn placed(reference: &[Item], answer: &[Item], map: &[Option<usize>], r: usize, a: usize) -> bool {
    let same = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (None, None) => true,
        (Some(x), Some(y)) => map[x] == Some(y),
        _ => false,
    };
    reference[r].role == answer[a].role
        && same(reference[r].parent, answer[a].parent)
        && same(reference[r].prev, answer[a].prev)
}

/// Credit for an alignment: `earned - insertions`, where `map[r]` is the
/// answer item aligned to reference item `r`.
pub fn alignment_value(reference: &[Item], answer: &[Item], map: &[Option<usize>]) -> (u32, u32, u32) {
    let matched = map.iter().flatten().count() as u32;
    let placed_count = map
        .iter()
        .enumerate()
        .filter(|(r, a)| a.is_some_and(|a| placed(reference, answer, map, *r, a)))
        .count() as u32;
    (matched, placed_count, answer.len() as u32 - matched)
}

struct Search<'a> {
    reference: &'a [Item],
    answer: &'a [Item],
    candidates: Vec<Vec<usize>>,
    /// For each reference item, how many later reference items share its class.
    later_in_class: Vec<usize>,
    answer_class_size: HashMap<(Category, &'a str), usize>,
    used: Vec<bool>,
    used_in_class: HashMap<(Category, &'a str), usize>,
    map: Vec<Option<usize>>,
    best: Option<(u32, Vec<Option<usize>>)>,
}

impl<'a> Search<'a> {
    fn run(&mut self, r: usize, placed_so_far: u32) {
        let n = self.reference.len();
        if let Some((best, _)) = &self.best {
            if placed_so_far + (n - r) as u32 <= *best {
                return;
            }
        }
        if r == n {
            self.best = Some((placed_so_far, self.map.clone()));
            return;
        }
        let class = self.reference[r].class();
        let mut options: Vec<(bool, usize)> = self.candidates[r]
            .iter()
            .filter(|&&a| !self.used[a])
            .map(|&a| (placed(self.reference, self.answer, &self.map, r, a), a))
            .collect();
        options.sort_by_key(|&(p, a)| (!p, a));
        for (p, a) in options {
            self.used[a] = true;
            *self.used_in_class.get_mut(&class).unwrap() += 1;
            self.map[r] = Some(a);
            self.run(r + 1, placed_so_far + p as u32);
            self.map[r] = None;
            *self.used_in_class.get_mut(&class).unwrap() -= 1;
            self.used[a] = false;
        }
        // Leaving r unaligned only keeps the alignment maximal when later
        // reference items of the class can absorb every free answer item.
        let free = self.answer_class_size.get(&class).copied().unwrap_or(0) - self.used_in_class[&class];
        if free <= self.later_in_class[r] {
            self.run(r + 1, placed_so_far);
        }
    }
}

/// An alignment maximizing `earned - insertions`.
///
/// Aligning one more same-class pair adds two credits and can only turn
/// other items' placements from wrong to right, so optimal alignments pair
/// as many items of each class as possible. The search ranges over those
/// and maximizes the number of placed items, pruning branches that cannot
/// beat the best found.
pub fn align(reference: &[Item], answer: &[Item]) -> Vec<Option<usize>> {
    let candidates = reference
        .iter()
        .map(|ri| (0..answer.len()).filter(|&a| answer[a].class() == ri.class()).collect())
        .collect();
    let mut later_in_class = vec![0; reference.len()];
    let mut seen: HashMap<(Category, &str), usize> = HashMap::new();
    for (r, item) in reference.iter().enumerate().rev() {
        let c = seen.entry(item.class()).or_default();
        later_in_class[r] = *c;
        *c += 1;
    }
    let mut answer_class_size: HashMap<(Category, &str), usize> = HashMap::new();
    for item in answer {
        *answer_class_size.entry(item.class()).or_default() += 1;
    }
    let used_in_class = reference.iter().map(|i| (i.class(), 0)).collect();
    let mut search = Search {
        reference,
        answer,
        candidates,
        later_in_class,
        answer_class_size,
        used: vec![false; answer.len()],
        used_in_class,
        map: vec![None; reference.len()],
        best: None,
    };
    search.run(0, 0);
    search.best.expect("the search always reaches a leaf").1
}

pub fn correctness_score(answer: &AnswerTree, reference: &AnswerTree) -> ScoreReport {
    let ref_items = items(reference);
    let ans_items = items(answer);
    let map = align(&ref_items, &ans_items);
    let (matched, placed_count, insertions) = alignment_value(&ref_items, &ans_items, &map);
    let max_score = 2 * ref_items.len() as u32;
    let earned = matched + placed_count;
    let correctness = if max_score == 0 {
        if ans_items.is_empty() { 100.0 } else { 0.0 }
    } else {
        earned.saturating_sub(insertions) as f64 / max_score as f64 * 100.0
    };
    ScoreReport {
        max_score,
        earned,
        insertions,
        deletions: ref_items.len() as u32 - matched,
        misplacements: matched - placed_count,
        correctness,
        completely_correct: completely_correct(answer, reference),
    }
}

/// Structural equality after normalizing sequences.
pub fn completely_correct(answer: &AnswerTree, reference: &AnswerTree) -> bool {
    answer.normalized() == reference.normalized()
}
