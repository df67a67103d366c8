//! Text-mode front end: a small command language in the style of text
//! adventures, with prose output whose links replay follow-on commands.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::ElementId;
use crate::dom::{Direction12, Primary, Secondary};
use crate::navigator::{Mode, MoveResult, NavError, Session, SonifyTarget};

const VERBS: [&str; 9] = ["look", "play", "move", "go", "switch", "help", "text", "graphical", "l"];

/// How a command names an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementRef {
    /// `#3`
    Id(ElementId),
    /// `x`, or `x (2)` to pick the second element whose text is `x`.
    Name { text: String, ordinal: Option<usize> },
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Id(id) => write!(f, "#{id}"),
            ElementRef::Name { text, ordinal: None } => f.write_str(text),
            ElementRef::Name { text, ordinal: Some(n) } => write!(f, "{text} ({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Command {
    Look(Option<ElementRef>),
    /// `play`, `play right`, `play x`, `play up #3`.
    Play { dir: Option<Primary>, element: Option<ElementRef> },
    /// Relative move: `right`, `right up`, `move down`.
    Move { primary: Primary, secondary: Option<Secondary> },
    /// Absolute move: `move #3`, `go x`.
    MoveTo(ElementRef),
    /// `switch` toggles; `switch graphical` / `switch text` select.
    Switch(Option<Mode>),
    Help,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Look(None) => f.write_str("look"),
            Command::Look(Some(r)) => write!(f, "look {r}"),
            Command::Play { dir, element } => {
                f.write_str("play")?;
                if let Some(d) = dir {
                    write!(f, " {d}")?;
                }
                if let Some(e) = element {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
            Command::Move { primary, secondary } => match secondary {
                Some(s) => f.write_str(&Direction12::new(*primary, *s).phrase()),
                None => write!(f, "{primary}"),
            },
            Command::MoveTo(r) => write!(f, "move {r}"),
            Command::Switch(None) => f.write_str("switch"),
            Command::Switch(Some(Mode::Text)) => f.write_str("switch text"),
            Command::Switch(Some(Mode::Graphical)) => f.write_str("switch graphical"),
            Command::Help => f.write_str("help"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("Please type a command. Type \"help\" for a list.")]
    Empty,
    #[error("Unknown command \"{verb}\".{}", suggestion.as_ref().map(|s| format!(" Did you mean \"{s}\"?")).unwrap_or_default())]
    UnknownVerb { verb: String, suggestion: Option<String> },
    #[error("\"{0}\" cannot refine that direction; use up or down with left and right, left or right with up and down.")]
    BadRefinement(String),
    #[error("\"{verb}\" needs {what}.")]
    MissingArgument { verb: &'static str, what: &'static str },
    #[error("Unexpected \"{0}\" after the command.")]
    Trailing(String),
    #[error("Unknown mode \"{0}\"; use text or graphical.")]
    BadMode(String),
}

fn parse_element_ref(rest: &str) -> ElementRef {
    let rest = rest.trim();
    if let Some(digits) = rest.strip_prefix('#') {
        if let Ok(id) = digits.parse() {
            return ElementRef::Id(id);
        }
    }
    if let Some(open) = rest.rfind(" (") {
        if let Some(inner) = rest[open + 2..].strip_suffix(')') {
            if let Ok(n) = inner.parse::<usize>() {
                return ElementRef::Name { text: rest[..open].trim_end().to_string(), ordinal: Some(n) };
            }
        }
    }
    ElementRef::Name { text: rest.to_string(), ordinal: None }
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

fn parse_move(first: Primary, rest: &str) -> Result<Command, ParseError> {
    let (word, tail) = split_word(rest);
    if word.is_empty() {
        return Ok(Command::Move { primary: first, secondary: None });
    }
    if !tail.is_empty() {
        return Err(ParseError::Trailing(tail.to_string()));
    }
    let refinement: Primary = word.parse().map_err(|_| ParseError::Trailing(word.to_string()))?;
    let dir = Direction12::refine(first, refinement).ok_or_else(|| ParseError::BadRefinement(word.to_string()))?;
    Ok(Command::Move { primary: first, secondary: Some(dir.secondary) })
}

/// Parses one line of text-mode input. Verbs and directions are
/// case-insensitive; element names are kept as typed.
pub fn parse_command(input: &str) -> Result<Command, ParseError> {
    let (verb, rest) = split_word(input.trim());
    if verb.is_empty() {
        return Err(ParseError::Empty);
    }
    let lower = verb.to_lowercase();
    if let Ok(primary) = lower.parse::<Primary>() {
        return parse_move(primary, rest);
    }
    match lower.as_str() {
        "look" | "l" => Ok(Command::Look((!rest.is_empty()).then(|| parse_element_ref(rest)))),
        "play" => {
            let (word, tail) = split_word(rest);
            match word.to_lowercase().parse::<Primary>() {
                Ok(dir) => Ok(Command::Play {
                    dir: Some(dir),
                    element: (!tail.is_empty()).then(|| parse_element_ref(tail)),
                }),
                Err(()) => Ok(Command::Play { dir: None, element: (!rest.is_empty()).then(|| parse_element_ref(rest)) }),
            }
        }
        "move" | "go" => {
            let (word, tail) = split_word(rest);
            if word.is_empty() {
                return Err(ParseError::MissingArgument { verb: "move", what: "a direction or an element" });
            }
            match word.to_lowercase().parse::<Primary>() {
                Ok(p) => parse_move(p, tail),
                Err(()) => Ok(Command::MoveTo(parse_element_ref(rest))),
            }
        }
        "switch" | "mode" => match rest.to_lowercase().as_str() {
            "" => Ok(Command::Switch(None)),
            "text" => Ok(Command::Switch(Some(Mode::Text))),
            "graphical" | "graphics" => Ok(Command::Switch(Some(Mode::Graphical))),
            other => Err(ParseError::BadMode(other.to_string())),
        },
        "text" if rest.is_empty() => Ok(Command::Switch(Some(Mode::Text))),
        "graphical" if rest.is_empty() => Ok(Command::Switch(Some(Mode::Graphical))),
        "help" | "?" => Ok(Command::Help),
        _ => {
            let suggestion = VERBS
                .iter()
                .copied()
                .chain(Primary::ALL.iter().map(|p| p.name()))
                .map(|v| (strsim::levenshtein(&lower, v), v))
                .filter(|&(d, v)| d <= 2 && d < v.len())
                .min()
                .map(|(_, v)| v.to_string());
            Err(ParseError::UnknownVerb { verb: verb.to_string(), suggestion })
        }
    }
}

/// A piece of output: plain prose or a link that replays a command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Span {
    Text { text: String },
    Link { link: usize, label: String, command: String },
}

/// One response of the shell, in reading order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutputBlock {
    pub spans: Vec<Span>,
}

impl OutputBlock {
    fn text(s: impl Into<String>) -> Self {
        OutputBlock { spans: vec![Span::Text { text: s.into() }] }
    }

    pub fn links(&self) -> impl Iterator<Item = (usize, &str, &str)> {
        self.spans.iter().filter_map(|s| match s {
            Span::Link { link, label, command } => Some((*link, label.as_str(), command.as_str())),
            Span::Text { .. } => None,
        })
    }

    /// The block as a screen reader would hear it: links read as their labels.
    pub fn plain_text(&self) -> String {
        self.spans
            .iter()
            .map(|s| match s {
                Span::Text { text } => text.as_str(),
                Span::Link { label, .. } => label.as_str(),
            })
            .collect()
    }

    /// Terminal rendering: links shown as `[n] label`.
    pub fn render_cli(&self) -> String {
        self.spans
            .iter()
            .map(|s| match s {
                Span::Text { text } => text.clone(),
                Span::Link { link, label, .. } => format!("[{link}] {label}"),
            })
            .collect()
    }
}

/// Builds a block while registering its links with the shell.
struct BlockBuilder<'a> {
    links: &'a mut HashMap<usize, String>,
    next_link: &'a mut usize,
    spans: Vec<Span>,
}

impl BlockBuilder<'_> {
    fn text(&mut self, s: impl Into<String>) -> &mut Self {
        let s = s.into();
        match self.spans.last_mut() {
            Some(Span::Text { text }) => text.push_str(&s),
            _ => self.spans.push(Span::Text { text: s }),
        }
        self
    }

    fn link(&mut self, label: impl Into<String>, command: &Command) -> &mut Self {
        *self.next_link += 1;
        let id = *self.next_link;
        let command = command.to_string();
        self.links.insert(id, command.clone());
        self.spans.push(Span::Link { link: id, label: label.into(), command });
        self
    }

    /// Items joined as "a", "a and b", or "a, b, and c".
    fn list<T>(&mut self, items: &[T], mut each: impl FnMut(&mut Self, &T)) -> &mut Self {
        let n = items.len();
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                self.text(match (n, i == n - 1) {
                    (2, _) => " and ",
                    (_, true) => ", and ",
                    _ => ", ",
                });
            }
            each(self, item);
        }
        self
    }

    fn finish(self) -> OutputBlock {
        OutputBlock { spans: self.spans }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellError {
    #[error("No link numbered {0}.")]
    UnknownLink(usize),
}

fn quoted(text: &str) -> String {
    format!("\"{text}\"")
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(first) => first.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

pub const HELP_TEXT: &str = "Commands: look [element], play [direction] [element], \
a direction such as right or right up to move, move #n or move <element> to jump, \
switch [text|graphical], help. Type a link number to follow a link.";

/// Owns a session in text mode and everything it has said.
#[derive(Debug, Clone)]
pub struct Shell {
    session: Session,
    links: HashMap<usize, String>,
    next_link: usize,
    history: Vec<OutputBlock>,
}

impl Shell {
    pub fn new(session: Session) -> Self {
        Shell { session, links: HashMap::new(), next_link: 0, history: Vec::new() }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    pub fn session_mut(&mut self) -> &mut Session {
        &mut self.session
    }

    /// Every block produced so far, oldest first.
    pub fn history(&self) -> &[OutputBlock] {
        &self.history
    }

    /// The description issued automatically when exploration begins.
    pub fn start(&mut self) -> OutputBlock {
        self.execute(&Command::Look(None))
    }

    fn builder(&mut self) -> BlockBuilder<'_> {
        BlockBuilder { links: &mut self.links, next_link: &mut self.next_link, spans: Vec::new() }
    }

    fn record(&mut self, block: OutputBlock) -> OutputBlock {
        self.history.push(block.clone());
        block
    }

    /// Parses and runs one input line; a bare number activates that link.
    pub fn execute_line(&mut self, input: &str) -> OutputBlock {
        let trimmed = input.trim();
        if let Ok(n) = trimmed.parse::<usize>() {
            return self.activate_link(n).unwrap_or_else(|e| self.record(OutputBlock::text(e.to_string())));
        }
        match parse_command(trimmed) {
            Ok(cmd) => self.execute(&cmd),
            Err(e) => self.record(OutputBlock::text(e.to_string())),
        }
    }

    /// Re-runs the command behind a previously issued link. Links carry
    /// absolute targets, so an old link still goes where it said.
    pub fn activate_link(&mut self, link: usize) -> Result<OutputBlock, ShellError> {
        let command = self.links.get(&link).cloned().ok_or(ShellError::UnknownLink(link))?;
        let cmd = parse_command(&command).expect("link commands are produced by rendering a Command");
        Ok(self.execute(&cmd))
    }

    fn resolve(&mut self, r: &ElementRef, verb: &str) -> Result<ElementId, OutputBlock> {
        let bundle = self.session.bundle();
        match r {
            ElementRef::Id(id) => bundle
                .element(*id)
                .map(|e| e.id)
                .ok_or_else(|| OutputBlock::text(format!("There is no element number {id}."))),
            ElementRef::Name { text, ordinal } => {
                let mut matches: Vec<ElementId> =
                    bundle.elements().iter().filter(|e| &e.text == text).map(|e| e.id).collect();
                if matches.is_empty() {
                    matches = bundle
                        .elements()
                        .iter()
                        .filter(|e| e.text.to_lowercase() == text.to_lowercase())
                        .map(|e| e.id)
                        .collect();
                }
                match (matches.len(), ordinal) {
                    (0, _) => Err(OutputBlock::text(format!("There is no element called {}.", quoted(text)))),
                    (n, Some(k)) if *k >= 1 && *k <= n => Ok(matches[k - 1]),
                    (n, Some(k)) => Err(OutputBlock::text(format!(
                        "There are {n} elements called {}; {k} is not one of them.",
                        quoted(text)
                    ))),
                    (1, None) => Ok(matches[0]),
                    (n, None) => {
                        let mut b = self.builder();
                        b.text(format!("There are {n} elements called {}: ", quoted(text)));
                        let numbered: Vec<(usize, ElementId)> = matches.iter().copied().enumerate().collect();
                        b.list(&numbered, |b, &(i, id)| {
                            let cmd = match verb {
                                "look" => Command::Look(Some(ElementRef::Id(id))),
                                "play" => Command::Play { dir: None, element: Some(ElementRef::Id(id)) },
                                _ => Command::MoveTo(ElementRef::Id(id)),
                            };
                            b.link(format!("{} ({})", text, i + 1), &cmd);
                        });
                        b.text(".");
                        Err(b.finish())
                    }
                }
            }
        }
    }

    pub fn execute(&mut self, cmd: &Command) -> OutputBlock {
        let block = match self.run(cmd) {
            Ok(b) | Err(b) => b,
        };
        self.record(block)
    }

    fn run(&mut self, cmd: &Command) -> Result<OutputBlock, OutputBlock> {
        match cmd {
            Command::Look(target) => {
                let id = target.as_ref().map(|r| self.resolve(r, "look")).transpose()?;
                Ok(self.describe(id))
            }
            Command::Play { dir, element } => {
                let id = element.as_ref().map(|r| self.resolve(r, "play")).transpose()?;
                let target = match (dir, id) {
                    (Some(d), from) => SonifyTarget::Direction { dir: *d, from },
                    (None, Some(id)) => SonifyTarget::Element(id),
                    (None, None) => SonifyTarget::Focus,
                };
                let subject = id.unwrap_or(self.session.focus());
                let name = quoted(self.session.text_of(subject));
                match self.session.sonify_request(target) {
                    Ok(_) => Ok(OutputBlock::text(match dir {
                        Some(d) => format!("Playing the graphical content {d} of {name}."),
                        None => format!("Playing {name}."),
                    })),
                    Err(NavError::NoGraphics(d)) => {
                        Err(OutputBlock::text(format!("There is no graphical content {d} of {name}.")))
                    }
                    Err(e) => Err(OutputBlock::text(format!("{}.", capitalize(&e.to_string())))),
                }
            }
            Command::Move { primary, secondary } => {
                if self.session.mode() != Mode::Text {
                    return Err(OutputBlock::text(
                        "Movement commands work in text mode; use the arrow keys in graphical mode.",
                    ));
                }
                let result = self.session.move_focus(*primary, *secondary).map_err(nav_block)?;
                Ok(self.move_block(&result))
            }
            Command::MoveTo(r) => {
                let id = self.resolve(r, "move")?;
                let result = self.session.go_to(id).map_err(nav_block)?;
                Ok(self.move_block(&result))
            }
            Command::Switch(mode) => {
                let target = mode.unwrap_or(match self.session.mode() {
                    Mode::Text => Mode::Graphical,
                    Mode::Graphical => Mode::Text,
                });
                if target == self.session.mode() {
                    return Ok(OutputBlock::text(format!("Already in {} mode.", mode_name(target))));
                }
                let result = self.session.switch_mode(target);
                Ok(OutputBlock::text(result.announcements.join(" ")))
            }
            Command::Help => Ok(OutputBlock::text(HELP_TEXT)),
        }
    }

    fn move_block(&mut self, result: &MoveResult) -> OutputBlock {
        let Some(focus) = result.focus else {
            return OutputBlock::text(result.announcements.join(" "));
        };
        let name = self.session.text_of(focus);
        let at = result.announcements.iter().position(|a| a == name).unwrap_or(0);
        let mut parts: Vec<String> = result.announcements[..at].iter().map(|a| format!("{}.", capitalize(a))).collect();
        parts.push(format!("{}.", quoted(name)));
        parts.extend(result.announcements.iter().skip(at + 1).cloned());
        OutputBlock::text(parts.join(" "))
    }

    fn describe(&mut self, element: Option<ElementId>) -> OutputBlock {
        let d = match self.session.describe(element) {
            Ok(d) => d,
            Err(e) => return nav_block(e),
        };
        let name = quoted(&d.text);
        let mut b = self.builder();
        b.text(format!("{name}, at {} across and {} down.\n", d.position.0, d.position.1));

        if d.adjacency.is_empty() {
            b.text("No other elements can be reached from this element.\n");
        } else {
            b.text("From this element, the following elements can be reached: ");
            b.list(&d.adjacency, |b, (dir, id, text)| {
                b.link(
                    format!("{}: {}", capitalize(&dir.phrase()), quoted(text)),
                    &Command::MoveTo(ElementRef::Id(*id)),
                );
            });
            b.text(".\n");
        }

        if d.graphics.is_empty() {
            b.text("There is no additional graphical content.\n");
        } else {
            b.text("There is additional graphical content ");
            b.list(&d.graphics, |b, dir| {
                b.link(dir.name(), &Command::Play { dir: Some(*dir), element: Some(ElementRef::Id(d.element)) });
            });
            b.text(".\n");
        }

        b.link(format!("Play {name}"), &Command::Play { dir: None, element: Some(ElementRef::Id(d.element)) });
        b.text(".\n");

        if let Some(line) = &d.line {
            let count = line.len();
            b.text(format!(
                "This line has {count} element{}: ",
                if count == 1 { "" } else { "s" }
            ));
            b.list(line, |b, (id, text)| {
                b.link(quoted(text), &Command::MoveTo(ElementRef::Id(*id)));
            });
            b.text(".\n");
        }
        b.finish()
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Text => "text",
        Mode::Graphical => "graphical",
    }
}

fn nav_block(e: NavError) -> OutputBlock {
    OutputBlock::text(format!("{}.", capitalize(&e.to_string())))
}
