//! Focus state shared by text and graphical modes, with the movement,
//! announcement and sonification-scheduling rules of each mode.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::{ElementId, EquationBundle};
use crate::dom::{build_dom, median_height, Direction12, Dom, Primary, Secondary};
use crate::region::{self, InkRegion, RegionError};

pub const NOTHING_THAT_WAY: &str = "Nothing that way.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Text,
    Graphical,
}

/// Something the playback side should render, in queue order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SonifyRequest {
    Region(InkRegion),
    Column { x: u32, emphasis_row: Option<u32> },
    Segment { p1: (u32, u32), p2: (u32, u32) },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NavError {
    #[error("no element with id {0}")]
    UnknownElement(ElementId),
    #[error("that command needs {0:?} mode")]
    WrongMode(Mode),
    #[error("there is no graphical content {0}")]
    NoGraphics(Primary),
    #[error("point ({0}, {1}) is outside the image")]
    PointOutOfRange(u32, u32),
    #[error("segment endpoints coincide")]
    DegenerateSegment,
}

impl From<RegionError> for NavError {
    fn from(e: RegionError) -> Self {
        match e {
            RegionError::UnknownElement(id) => NavError::UnknownElement(id),
            RegionError::SameElement => unreachable!("transition regions are only built between distinct elements"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MoveResult {
    /// New focus; `None` when the move failed and focus is unchanged.
    pub focus: Option<ElementId>,
    pub announcements: Vec<String>,
    /// Regions queued for sonification by this move, in play order.
    pub regions: Vec<InkRegion>,
    /// Element count of the new line, when the move changed lines.
    pub line_change: Option<usize>,
}

impl MoveResult {
    fn failed() -> Self {
        MoveResult { announcements: vec![NOTHING_THAT_WAY.to_string()], ..Default::default() }
    }

    pub fn moved(&self) -> bool {
        self.focus.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Description {
    pub element: ElementId,
    pub text: String,
    /// Normalized (horizontal, vertical) position, 0-100.
    pub position: (u32, u32),
    pub adjacency: Vec<(Direction12, ElementId, String)>,
    pub graphics: Vec<Primary>,
    /// Elements on the focus line, left to right; only for the bare form.
    pub line: Option<Vec<(ElementId, String)>>,
}

/// Where to take a sonification from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SonifyTarget {
    /// The focus element itself.
    Focus,
    Element(ElementId),
    /// Graphics next to `from` (the focus when `None`).
    Direction { dir: Primary, from: Option<ElementId> },
}

/// Horizontal lines of elements, grouped by vertical center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBands {
    bands: Vec<Vec<ElementId>>,
    band_of: HashMap<ElementId, usize>,
}

impl LineBands {
    /// Single-linkage clustering of element centers: sorted top to bottom, a
    /// new line starts wherever the gap exceeds half the median height.
    pub fn new(bundle: &EquationBundle) -> Self {
        let elements = bundle.elements();
        let threshold = median_height(elements) / 2.0;
        let mut order: Vec<_> = elements.iter().collect();
        order.sort_by(|a, b| a.bbox.center().1.total_cmp(&b.bbox.center().1).then(a.id.cmp(&b.id)));
        let mut bands: Vec<Vec<ElementId>> = Vec::new();
        let mut last_cy = f64::NEG_INFINITY;
        for e in order {
            let cy = e.bbox.center().1;
            if bands.is_empty() || cy - last_cy > threshold {
                bands.push(Vec::new());
            }
            bands.last_mut().unwrap().push(e.id);
            last_cy = cy;
        }
        for band in &mut bands {
            band.sort_by_key(|id| {
                let e = bundle.element(*id).unwrap();
                (e.bbox.left, e.id)
            });
        }
        let band_of = bands
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&id| (id, i)))
            .collect();
        LineBands { bands, band_of }
    }

    pub fn band_of(&self, id: ElementId) -> Option<usize> {
        self.band_of.get(&id).copied()
    }

    pub fn members(&self, band: usize) -> &[ElementId] {
        &self.bands[band]
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }
}

/// One reader's exploration of one equation.
#[derive(Debug, Clone)]
pub struct Session {
    bundle: Arc<EquationBundle>,
    dom: Arc<Dom>,
    lines: Arc<LineBands>,
    focus: ElementId,
    mode: Mode,
    announcements: Vec<String>,
    sonifications: Vec<SonifyRequest>,
}

impl Session {
    pub fn new(bundle: EquationBundle) -> Self {
        let dom = build_dom(&bundle);
        Session::with_dom(Arc::new(bundle), Arc::new(dom))
    }

    pub fn with_dom(bundle: Arc<EquationBundle>, dom: Arc<Dom>) -> Self {
        let lines = Arc::new(LineBands::new(&bundle));
        let focus = dom.initial_focus();
        Session {
            bundle,
            dom,
            lines,
            focus,
            mode: Mode::Text,
            announcements: Vec::new(),
            sonifications: Vec::new(),
        }
    }

    pub fn bundle(&self) -> &EquationBundle {
        &self.bundle
    }

    pub fn dom(&self) -> &Dom {
        &self.dom
    }

    pub fn lines(&self) -> &LineBands {
        &self.lines
    }

    pub fn focus(&self) -> ElementId {
        self.focus
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn text_of(&self, id: ElementId) -> &str {
        self.bundle.element(id).map(|e| e.text.as_str()).unwrap_or("?")
    }

    /// Drains the announcements produced since the last call.
    pub fn take_announcements(&mut self) -> Vec<String> {
        std::mem::take(&mut self.announcements)
    }

    /// Drains queued sonification requests, oldest first.
    pub fn take_sonifications(&mut self) -> Vec<SonifyRequest> {
        std::mem::take(&mut self.sonifications)
    }

    fn check_element(&self, id: ElementId) -> Result<(), NavError> {
        if self.dom.contains(id) {
            Ok(())
        } else {
            Err(NavError::UnknownElement(id))
        }
    }

    fn publish(&mut self, result: &MoveResult) {
        self.announcements.extend(result.announcements.iter().cloned());
        self.sonifications.extend(result.regions.iter().copied().map(SonifyRequest::Region));
    }

    /// Text-mode move. With a secondary, exactly that slot is followed;
    /// otherwise centre, then minus, then plus.
    pub fn move_focus(&mut self, primary: Primary, secondary: Option<Secondary>) -> Result<MoveResult, NavError> {
        if self.mode != Mode::Text {
            return Err(NavError::WrongMode(Mode::Text));
        }
        let order: &[Secondary] = match secondary {
            Some(ref s) => std::slice::from_ref(s),
            None => &[Secondary::Centre, Secondary::Minus, Secondary::Plus],
        };
        let target = order
            .iter()
            .find_map(|&s| self.dom.neighbor(self.focus, Direction12::new(primary, s)));
        let result = match target {
            Some(t) => self.text_mode_step(t)?,
            None => MoveResult::failed(),
        };
        self.publish(&result);
        Ok(result)
    }

    /// Moves straight to `target`, announcing it as a text-mode step would.
    /// Used by links, which carry absolute targets.
    pub fn go_to(&mut self, target: ElementId) -> Result<MoveResult, NavError> {
        self.check_element(target)?;
        let result = match self.mode {
            Mode::Text => self.text_mode_step(target)?,
            Mode::Graphical => self.graphical_step(target)?,
        };
        self.publish(&result);
        Ok(result)
    }

    fn text_mode_step(&mut self, target: ElementId) -> Result<MoveResult, NavError> {
        let from = self.focus;
        let mut result = MoveResult { focus: Some(target), ..Default::default() };
        result.announcements.push(self.text_of(target).to_string());
        let (old_band, new_band) = (self.lines.band_of(from), self.lines.band_of(target));
        if old_band != new_band {
            let count = new_band.map_or(0, |b| self.lines.members(b).len());
            result.line_change = Some(count);
            result.announcements.push(line_change_notice(count));
        }
        if from != target {
            result.regions.extend(region::transition_region(&self.bundle, from, target)?);
        }
        self.focus = target;
        Ok(result)
    }

    /// Graphical-mode arrow key. Slots are tried in minus, centre, plus
    /// order, which prefers upward targets on horizontal moves and leftward
    /// targets on vertical ones.
    pub fn cursor_move(&mut self, arrow: Primary) -> Result<MoveResult, NavError> {
        if self.mode != Mode::Graphical {
            return Err(NavError::WrongMode(Mode::Graphical));
        }
        let target = Secondary::ALL
            .iter()
            .find_map(|&s| self.dom.neighbor(self.focus, Direction12::new(arrow, s)));
        let result = match target {
            Some(t) => self.graphical_step_along(t, Some(arrow))?,
            None => MoveResult::failed(),
        };
        self.publish(&result);
        Ok(result)
    }

    fn graphical_step(&mut self, target: ElementId) -> Result<MoveResult, NavError> {
        let axis = if target == self.focus {
            None
        } else {
            let from = &self.bundle.element(self.focus).unwrap().bbox;
            let to = &self.bundle.element(target).unwrap().bbox;
            crate::dom::classify_direction(from, to).ok().map(|d| d.primary)
        };
        self.graphical_step_along(target, axis)
    }

    fn graphical_step_along(&mut self, target: ElementId, axis: Option<Primary>) -> Result<MoveResult, NavError> {
        let from = self.focus;
        let fb = self.bundle.element(from).unwrap().bbox;
        let tb = self.bundle.element(target).unwrap().bbox;
        let (fx, fy) = fb.center();
        let (tx, ty) = tb.center();
        let mut result = MoveResult { focus: Some(target), ..Default::default() };
        let shift = match axis {
            Some(p) if p.is_horizontal() => {
                let half = fb.height as f64 / 2.0;
                if fy - ty > half {
                    Some("raised")
                } else if ty - fy > half {
                    Some("lowered")
                } else {
                    None
                }
            }
            Some(_) => {
                let half = fb.width as f64 / 2.0;
                if fx - tx > half {
                    Some("shifted left")
                } else if tx - fx > half {
                    Some("shifted right")
                } else {
                    None
                }
            }
            None => None,
        };
        result.announcements.extend(shift.map(str::to_string));
        result.announcements.push(self.text_of(target).to_string());
        if from != target {
            result.regions.extend(region::transition_region(&self.bundle, from, target)?);
        }
        result.regions.push(region::element_region(&self.bundle, target)?);
        self.focus = target;
        Ok(result)
    }

    /// Everything the "look" command reports about an element. The line
    /// listing is included only when describing the focus implicitly.
    pub fn describe(&self, element: Option<ElementId>) -> Result<Description, NavError> {
        let id = element.unwrap_or(self.focus);
        self.check_element(id)?;
        let node = self.dom.node(id).unwrap();
        let adjacency = node.edges().map(|(d, t)| (d, t, self.text_of(t).to_string())).collect();
        let graphics = region::has_graphics(&self.bundle, &self.dom, id)?.into_iter().collect();
        let line = element.is_none().then(|| {
            let band = self.lines.band_of(id).unwrap();
            self.lines
                .members(band)
                .iter()
                .map(|&m| (m, self.text_of(m).to_string()))
                .collect()
        });
        Ok(Description {
            element: id,
            text: self.text_of(id).to_string(),
            position: self.bundle.normalized_position(id).unwrap(),
            adjacency,
            graphics,
            line,
        })
    }

    /// Resolves a play request to a region and queues it.
    pub fn sonify_request(&mut self, target: SonifyTarget) -> Result<InkRegion, NavError> {
        let region = match target {
            SonifyTarget::Focus => region::element_region(&self.bundle, self.focus)?,
            SonifyTarget::Element(id) => {
                self.check_element(id)?;
                region::element_region(&self.bundle, id)?
            }
            SonifyTarget::Direction { dir, from } => {
                let origin = from.unwrap_or(self.focus);
                self.check_element(origin)?;
                region::directional_region(&self.bundle, &self.dom, origin, dir)?
                    .ok_or(NavError::NoGraphics(dir))?
            }
        };
        self.sonifications.push(SonifyRequest::Region(region));
        Ok(region)
    }

    /// Switches mode; focus is kept. Entering graphical mode re-announces and
    /// re-sonifies the focus. Switching to the current mode does nothing.
    pub fn switch_mode(&mut self, mode: Mode) -> MoveResult {
        if mode == self.mode {
            return MoveResult { focus: Some(self.focus), ..Default::default() };
        }
        self.mode = mode;
        let mut result = MoveResult { focus: Some(self.focus), ..Default::default() };
        match mode {
            Mode::Graphical => {
                result.announcements.push(format!("Graphical mode. {}", self.text_of(self.focus)));
                result.regions.push(region::element_region(&self.bundle, self.focus).unwrap());
            }
            Mode::Text => result.announcements.push("Text mode.".to_string()),
        }
        self.publish(&result);
        result
    }

    /// One-finger touch: the image column under the finger, emphasized at
    /// the contact row.
    pub fn touch_column(&mut self, x: u32, y: u32) -> Result<(), NavError> {
        let img = self.bundle.image();
        if x >= img.width() || y >= img.height() {
            return Err(NavError::PointOutOfRange(x, y));
        }
        self.sonifications.push(SonifyRequest::Column { x, emphasis_row: Some(y) });
        Ok(())
    }

    /// Two-finger touch: the segment between the fingertips.
    pub fn touch_segment(&mut self, p1: (u32, u32), p2: (u32, u32)) -> Result<(), NavError> {
        let img = self.bundle.image();
        for p in [p1, p2] {
            if p.0 >= img.width() || p.1 >= img.height() {
                return Err(NavError::PointOutOfRange(p.0, p.1));
            }
        }
        if p1 == p2 {
            return Err(NavError::DegenerateSegment);
        }
        self.sonifications.push(SonifyRequest::Segment { p1, p2 });
        Ok(())
    }
}

pub fn line_change_notice(count: usize) -> String {
    match count {
        1 => "New line, 1 element.".to_string(),
        n => format!("New line, {n} elements."),
    }
}
