//! Majority-pigeonhole extraction of monochromatic structured copies.
//!
//! A *halving step* at root `r` and pivot `p` splits the remaining
//! candidates `a` by the color of `[r,p] ~ [p,a]` and keeps the majority
//! class (ties go to Red). Repeating it from the smallest survivor yields a
//! chain of pivots, each with a certified star color; a final majority vote
//! over the pivots gives a point set `Q` on which every `[r,a] ~ [a,b]` has
//! one color. That is [`lemma1_extract`].
//!
//! The nested pipeline re-roots that procedure at the smallest point of
//! each extracted set, then votes over the stage colors; the chosen roots
//! plus one trailing point span an interval graph that is monochromatic
//! in full. [`ramsey_extract`] runs it with the sizes the tower bound
//! guarantees, [`opportunistic_extract`] with whatever sizes the coloring
//! actually yields.
//!
//! Every trace is replayed against its coloring before it is returned.

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Host, TwoColoring};
use crate::error::{Error, Result};
use crate::sequence::{required_host_size, s_sequence};
use crate::shift::ShiftGraph;
use crate::verify::{verify_structured_copy, Scope, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub root_point: u32,
    /// Present on halving steps; pipeline stages only have a root.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot_point: Option<u32>,
    pub surviving_points: Vec<u32>,
    /// `None` for a pipeline stage whose star has no edges.
    pub stage_color: Option<Color>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StageRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractionKind {
    Lemma1,
    Ramsey,
    Opportunistic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub schema_version: u32,
    pub kind: ExtractionKind,
    pub host: ShiftGraph,
    pub scope: Scope,
    pub stages: Vec<StageRecord>,
    pub final_points: Vec<u32>,
    pub final_color: Color,
    pub achieved_level: u32,
}

/// Largest `j` with `size >= 2^j + 1`.
pub fn achieved_level(size: usize) -> u32 {
    assert!(size >= 2, "a structured copy has at least two points");
    (size - 1).ilog2()
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Certification(msg.into())
}

#[derive(Clone, Copy)]
enum Keep {
    /// Keep the smallest `ceil(|candidates| / 2)` of the majority class.
    Bound,
    All,
}

fn halve(c: &TwoColoring, root: u32, pivot: u32, rest: &[u32], keep: Keep) -> StageRecord {
    let (mut red, mut blue) = (Vec::new(), Vec::new());
    for &a in rest {
        match c.path_color(root, pivot, a) {
            Color::Red => red.push(a),
            Color::Blue => blue.push(a),
        }
    }
    let (color, mut class) = if red.len() >= blue.len() {
        (Color::Red, red)
    } else {
        (Color::Blue, blue)
    };
    if let Keep::Bound = keep {
        class.truncate(rest.len().div_ceil(2));
    }
    StageRecord {
        root_point: root,
        pivot_point: Some(pivot),
        surviving_points: class,
        stage_color: Some(color),
        steps: Vec::new(),
    }
}

/// Pivot chain at one root. The last pivot has no later candidates, so
/// its star is empty and it is compatible with either color.
struct Star {
    steps: Vec<StageRecord>,
    pivots: Vec<(u32, Option<Color>)>,
}

/// Halving under the exact-size hypothesis `|pool| = 2^n`, `n = 2^(t+1)`:
/// `n - 1` steps, each keeping exactly `2^(n - s)` points.
fn strict_star(c: &TwoColoring, root: u32, pool: &[u32], t: u32) -> Result<Star> {
    let n = t
        .checked_add(1)
        .and_then(|e| 1u32.checked_shl(e))
        .filter(|&n| n < 64)
        .ok_or_else(|| Error::Hypothesis(format!("t = {t} is too large")))?;
    if pool.len() as u64 != 1u64 << n {
        return Err(Error::Hypothesis(format!(
            "root {root} has {} candidate points; the strict procedure at t = {t} needs 2^{n}",
            pool.len()
        )));
    }
    let mut surviving = pool.to_vec();
    let mut star = Star {
        steps: Vec::new(),
        pivots: Vec::new(),
    };
    for s in 1..n {
        let step = halve(c, root, surviving[0], &surviving[1..], Keep::Bound);
        let bound = 1usize << (n - s);
        if step.surviving_points.len() != bound {
            return Err(fail(format!(
                "step {s} at root {root} kept {} points, bound is {bound}",
                step.surviving_points.len()
            )));
        }
        star.pivots.push((surviving[0], step.stage_color));
        surviving = step.surviving_points.clone();
        star.steps.push(step);
    }
    star.pivots.push((surviving[0], None));
    Ok(star)
}

/// Halving with actual sizes: continue while at least two points survive.
fn opportunistic_star(c: &TwoColoring, root: u32, pool: &[u32]) -> Star {
    let mut surviving = pool.to_vec();
    let mut star = Star {
        steps: Vec::new(),
        pivots: Vec::new(),
    };
    while surviving.len() >= 2 {
        let step = halve(c, root, surviving[0], &surviving[1..], Keep::All);
        star.pivots.push((surviving[0], step.stage_color));
        surviving = step.surviving_points.clone();
        star.steps.push(step);
    }
    if let Some(&last) = surviving.first() {
        star.pivots.push((last, None));
    }
    star
}

/// Majority vote (ties to Red) over items tagged with a color or a
/// wildcard; returns the winning color and the compatible items, at most
/// `limit` of them counting from the smallest.
fn vote<T: Copy>(items: &[(T, Option<Color>)], limit: Option<usize>) -> (Color, Vec<T>) {
    let red = items.iter().filter(|(_, c)| *c == Some(Color::Red)).count();
    let blue = items.iter().filter(|(_, c)| *c == Some(Color::Blue)).count();
    let color = if red >= blue { Color::Red } else { Color::Blue };
    let mut chosen: Vec<T> = items
        .iter()
        .filter(|(_, c)| c.is_none() || *c == Some(color))
        .map(|(x, _)| *x)
        .collect();
    if let Some(limit) = limit {
        chosen.truncate(limit);
    }
    (color, chosen)
}

fn interval_host(c: &TwoColoring) -> Result<ShiftGraph> {
    c.host().interval().copied()
}

/// Extracts `Q` with `|Q| = 2^t + 1`, `1 ∈ Q`, and one color shared by
/// every edge `[1,a] ~ [a,b]` with `a < b` in `Q \ {1}`.
///
/// The host must be `G_n` with `n = 2^(t+1)` exactly.
pub fn lemma1_extract(c: &TwoColoring, t: u32) -> Result<ExtractionTrace> {
    let host = interval_host(c)?;
    if t == 0 {
        return Err(Error::Hypothesis("t must be at least 1".into()));
    }
    let n = t
        .checked_add(1)
        .and_then(|e| 1u32.checked_shl(e))
        .ok_or_else(|| Error::Hypothesis(format!("t = {t} is too large")))?;
    if host.level() != Some(n) {
        return Err(Error::Hypothesis(format!(
            "t = {t} needs host G_{n}, got {}",
            host.name()
        )));
    }
    let pool: Vec<u32> = (2..=host.points()).collect();
    let star = strict_star(c, 1, &pool, t)?;
    let size = 1usize << t;
    let (color, chosen) = vote(&star.pivots, Some(size));
    if chosen.len() != size {
        return Err(fail(format!("final vote kept {} pivots, need {size}", chosen.len())));
    }
    let mut final_points = vec![1];
    final_points.extend(chosen);
    let trace = ExtractionTrace {
        schema_version: SCHEMA_VERSION,
        kind: ExtractionKind::Lemma1,
        host,
        scope: Scope::Star,
        stages: star.steps,
        final_points,
        final_color: color,
        achieved_level: t,
    };
    trace.replay(c)?;
    Ok(trace)
}

/// The full pipeline at the guaranteed host size `G_N`, `N = S_{2^(k+1)}`.
///
/// `N` is at least `S_4 = 2^262146`, far beyond any host that can be
/// built, so at representable sizes this reports
/// [`Error::InsufficientHost`]; [`opportunistic_extract`] runs the same
/// nested procedure on real hosts.
pub fn ramsey_extract(c: &TwoColoring, k: u32) -> Result<ExtractionTrace> {
    let host = interval_host(c)?;
    let required = required_host_size(k)?;
    let level = host.level().unwrap_or(0);
    let needed = required.exact.as_ref().and_then(|v| v.to_u64());
    if needed.is_none_or(|n| n > level as u64) {
        return Err(Error::InsufficientHost {
            level,
            required: required.to_string(),
        });
    }
    let stages = (1u64 << (k + 1)) - 1;
    // t_j = S_{M - j + 1} + 1 for j = 1..=M
    let levels = (1..=stages)
        .map(|j| {
            let s = s_sequence(stages - j + 1)?;
            s.to_u64()
                .and_then(|v| u32::try_from(v + 1).ok())
                .ok_or(Error::TowerOverflow { index: stages - j + 1 })
        })
        .collect::<Result<Vec<u32>>>()?;
    strict_pipeline(c, &levels, 1usize << k)
}

/// Nested pipeline with a prescribed schedule of star levels. Stage `j`
/// extracts `2^{t_j}` points at its root; the next stage runs on the
/// following `2^{t_j - 1}` of them, which is `2^(2^(t_{j+1}+1))` exactly
/// when the schedule follows the tower recurrence. The final vote keeps
/// the first `select` stages of the majority color.
pub(crate) fn strict_pipeline(c: &TwoColoring, levels: &[u32], select: usize) -> Result<ExtractionTrace> {
    let host = interval_host(c)?;
    let mut root = 1;
    let mut pool: Vec<u32> = (2..=host.points()).collect();
    let mut stages = Vec::with_capacity(levels.len());
    for (j, &t) in levels.iter().enumerate() {
        let star = strict_star(c, root, &pool, t)?;
        let size = 1usize << t;
        let (color, chosen) = vote(&star.pivots, Some(size));
        if chosen.len() != size {
            return Err(fail(format!("stage {} kept {} points, need {size}", j + 1, chosen.len())));
        }
        let stage_root = root;
        root = chosen[0];
        if j + 1 < levels.len() {
            let next = 1usize << (t - 1);
            pool = chosen[1..=next].to_vec();
        }
        stages.push(StageRecord {
            root_point: stage_root,
            pivot_point: None,
            surviving_points: chosen,
            stage_color: Some(color),
            steps: star.steps,
        });
    }
    finish(c, host, ExtractionKind::Ramsey, stages, Some(select))
}

/// The nested pipeline with actual set sizes. Always succeeds on an
/// interval host; the result is at least a single edge (two points).
pub fn opportunistic_extract(c: &TwoColoring) -> Result<ExtractionTrace> {
    let host = interval_host(c)?;
    let mut root = 1;
    let mut pool: Vec<u32> = (2..=host.points()).collect();
    let mut stages = Vec::new();
    while !pool.is_empty() {
        let star = opportunistic_star(c, root, &pool);
        let (color, chosen) = vote(&star.pivots, None);
        let stage_color = (chosen.len() >= 2).then_some(color);
        stages.push(StageRecord {
            root_point: root,
            pivot_point: None,
            surviving_points: chosen.clone(),
            stage_color,
            steps: star.steps,
        });
        root = chosen[0];
        pool = chosen[1..].to_vec();
    }
    finish(c, host, ExtractionKind::Opportunistic, stages, None)
}

/// Final vote over stage colors. The chosen roots, plus the smallest
/// survivor of the last chosen stage, form the monochromatic point set.
fn finish(
    c: &TwoColoring,
    host: ShiftGraph,
    kind: ExtractionKind,
    stages: Vec<StageRecord>,
    select: Option<usize>,
) -> Result<ExtractionTrace> {
    let tagged: Vec<(usize, Option<Color>)> = stages
        .iter()
        .enumerate()
        .map(|(idx, s)| (idx, s.stage_color))
        .collect();
    let (color, chosen) = vote(&tagged, select);
    if let Some(select) = select {
        if chosen.len() != select {
            return Err(fail(format!("stage vote kept {} stages, need {select}", chosen.len())));
        }
    }
    let last = *chosen.last().ok_or_else(|| fail("no stages to choose from"))?;
    let mut final_points: Vec<u32> = chosen.iter().map(|&i| stages[i].root_point).collect();
    final_points.push(stages[last].surviving_points[0]);
    let trace = ExtractionTrace {
        schema_version: SCHEMA_VERSION,
        kind,
        host,
        scope: Scope::Full,
        stages,
        achieved_level: achieved_level(final_points.len()),
        final_points,
        final_color: color,
    };
    trace.replay(c)?;
    Ok(trace)
}

fn check_record(c: &TwoColoring, rec: &StageRecord, path: &str) -> Result<()> {
    let s = &rec.surviving_points;
    if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(format!("{path}: surviving points must be nonempty and increasing")));
    }
    let floor = rec.pivot_point.unwrap_or(rec.root_point);
    if rec.root_point >= s[0] || floor >= s[0] || floor < rec.root_point {
        return Err(fail(format!("{path}: root/pivot must precede surviving points")));
    }
    match (rec.pivot_point, rec.stage_color) {
        (Some(p), Some(color)) => {
            if let Some(&a) = s.iter().find(|&&a| c.path_color(rec.root_point, p, a) != color) {
                return Err(fail(format!(
                    "{path}: edge [{},{p}]~[{p},{a}] is not {color}",
                    rec.root_point
                )));
            }
        }
        (Some(_), None) => return Err(fail(format!("{path}: halving step without a color"))),
        (None, Some(color)) => {
            let mut q = vec![rec.root_point];
            q.extend_from_slice(s);
            if !verify_structured_copy(c, &q, color, Scope::Star)? {
                return Err(fail(format!("{path}: star at root {} is not {color}", rec.root_point)));
            }
        }
        (None, None) => {
            if s.len() > 1 {
                return Err(fail(format!("{path}: uncolored stage with a nonempty star")));
            }
        }
    }
    check_chain(c, &rec.steps, &format!("{path}.steps"), |r| r.pivot_point.unwrap_or(0))
}

/// Each record starts from the smallest survivor of the previous one and
/// keeps a subset of the rest.
fn check_chain(c: &TwoColoring, chain: &[StageRecord], path: &str, start: impl Fn(&StageRecord) -> u32) -> Result<()> {
    for (idx, rec) in chain.iter().enumerate() {
        check_record(c, rec, &format!("{path}[{idx}]"))?;
    }
    for (idx, pair) in chain.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        let rest = &prev.surviving_points[1..];
        if start(next) != prev.surviving_points[0]
            || !next.surviving_points.iter().all(|p| rest.binary_search(p).is_ok())
        {
            return Err(fail(format!("{path}[{}]: not nested in the previous record", idx + 1)));
        }
    }
    Ok(())
}

impl ExtractionTrace {
    /// Re-certifies every recorded color and the final copy against `c`.
    pub fn replay(&self, c: &TwoColoring) -> Result<()> {
        if c.host() != &Host::Shift(self.host) {
            return Err(Error::InvalidArgument(format!(
                "trace was taken on {}, coloring is on {}",
                self.host.name(),
                c.host().name()
            )));
        }
        match self.kind {
            ExtractionKind::Lemma1 => {
                check_chain(c, &self.stages, "stages", |r| r.pivot_point.unwrap_or(0))?
            }
            _ => check_chain(c, &self.stages, "stages", |r| r.root_point)?,
        }
        let q = &self.final_points;
        if q.len() < 2 || q.windows(2).any(|w| w[0] >= w[1]) {
            return Err(fail("final points must be increasing with at least two points"));
        }
        if self.achieved_level != achieved_level(q.len()) {
            return Err(fail("achieved level does not match the final point count"));
        }
        if !verify_structured_copy(c, q, self.final_color, self.scope)? {
            return Err(fail(format!(
                "final points are not {} in {:?} scope",
                self.final_color, self.scope
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
