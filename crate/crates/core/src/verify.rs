//! Independent checks: structured copies inside a coloring, monochromatic
//! pattern copies, and brute-force Ramsey forcing over every (or a sample
//! of) coloring of a small host.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::coloring::{random_coloring, Color, Host, TwoColoring, MAX_EXHAUSTIVE_EDGES};
use crate::error::{Error, Result};
use crate::graph::{complete_graph, find_monomorphism, Graph, VertexMapping, MAX_PATTERN_VERTICES};

pub const SCHEMA_VERSION: u32 = 1;

/// Which edges of the interval graph over a point set must share the color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Only `[r,a] ~ [a,b]` with `r = min Q`.
    Star,
    /// Every edge `[x,y] ~ [y,z]` with `x < y < z` in `Q`.
    Full,
}

fn checked_points(c: &TwoColoring, points: &[u32]) -> Result<Vec<u32>> {
    let g = c.host().interval()?;
    if points.len() < 2 {
        return Err(Error::InvalidArgument("point set needs at least two points".into()));
    }
    let mut q = points.to_vec();
    q.sort_unstable();
    if q.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("repeated point".into()));
    }
    if q[0] == 0 || *q.last().unwrap() > g.points() {
        return Err(Error::InvalidArgument(format!(
            "point set out of range 1..={}",
            g.points()
        )));
    }
    Ok(q)
}

pub fn verify_structured_copy(c: &TwoColoring, points: &[u32], color: Color, scope: Scope) -> Result<bool> {
    let q = checked_points(c, points)?;
    Ok(match scope {
        Scope::Star => {
            let r = q[0];
            q.iter().enumerate().skip(1).all(|(ia, &a)| {
                q[ia + 1..].iter().all(|&b| c.path_color(r, a, b) == color)
            })
        }
        Scope::Full => q.iter().enumerate().all(|(ix, &x)| {
            q.iter().enumerate().skip(ix + 1).all(|(iy, &y)| {
                q[iy + 1..].iter().all(|&z| c.path_color(x, y, z) == color)
            })
        }),
    })
}

fn pattern_guard(pattern: &Graph) -> Result<()> {
    if pattern.vertex_count() > MAX_PATTERN_VERTICES {
        return Err(Error::Guard(format!(
            "pattern has {} vertices; at most {MAX_PATTERN_VERTICES} supported",
            pattern.vertex_count()
        )));
    }
    Ok(())
}

/// First monochromatic copy of `pattern`, searching the Red class before
/// the Blue class.
pub fn contains_mono_copy(c: &TwoColoring, pattern: &Graph) -> Result<Option<(Color, VertexMapping)>> {
    pattern_guard(pattern)?;
    for color in [Color::Red, Color::Blue] {
        if let Some(m) = find_monomorphism(pattern, &c.class_graph(color)?)? {
            return Ok(Some((color, m)));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamseyMode {
    Exhaustive,
    /// `count` colorings from seeds `seed, seed + 1, …` (wrapping).
    Sampled { count: u64, seed: u64 },
}

impl RamseyMode {
    pub fn name(&self) -> &'static str {
        match self {
            RamseyMode::Exhaustive => "exhaustive",
            RamseyMode::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamseyVerdict {
    /// Exhaustive: every coloring has a copy. Sampled: no witness was found,
    /// which is evidence, not proof.
    pub forced: bool,
    pub mode: RamseyMode,
    /// Colorings examined in search order up to and including the witness.
    pub colorings_checked: u64,
    /// A coloring with no monochromatic copy, re-checked before it is returned.
    pub witness_coloring: Option<TwoColoring>,
}

#[derive(Serialize)]
struct VerdictReport<'a> {
    schema_version: u32,
    forced: bool,
    mode: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    sample_seed: Option<u64>,
    colorings_checked: u64,
    witness_path: Option<&'a str>,
}

impl RamseyVerdict {
    /// JSON report; the witness itself is written separately in the
    /// coloring file format and referenced by path.
    pub fn to_json(&self, witness_path: Option<&str>) -> String {
        let report = VerdictReport {
            schema_version: SCHEMA_VERSION,
            forced: self.forced,
            mode: self.mode.name(),
            sample_seed: match self.mode {
                RamseyMode::Sampled { seed, .. } => Some(seed),
                RamseyMode::Exhaustive => None,
            },
            colorings_checked: self.colorings_checked,
            witness_path,
        };
        serde_json::to_string_pretty(&report).expect("verdict serializes")
    }
}

/// Patterns forbidden in each color class.
struct Targets<'a> {
    red: &'a Graph,
    blue: &'a Graph,
}

impl Targets<'_> {
    fn hit(&self, red_class: &Graph, blue_class: &Graph) -> Result<bool> {
        Ok(find_monomorphism(self.red, red_class)?.is_some()
            || find_monomorphism(self.blue, blue_class)?.is_some())
    }

    fn hit_coloring(&self, c: &TwoColoring) -> Result<bool> {
        self.hit(&c.class_graph(Color::Red)?, &c.class_graph(Color::Blue)?)
    }
}

/// Does every red-blue coloring of `host` contain a monochromatic copy of
/// `pattern`? Exhaustive sweeps split the rank space into `jobs` contiguous
/// ranges; the reported witness is always the lowest-ranked one.
pub fn ramsey_check(host: impl Into<Host>, pattern: &Graph, mode: RamseyMode, jobs: usize) -> Result<RamseyVerdict> {
    pattern_guard(pattern)?;
    sweep(host.into(), Targets { red: pattern, blue: pattern }, mode, jobs)
}

/// Classical `R(s, t) <= n` check: does every coloring of `K_n` have a red
/// `K_s` or a blue `K_t`?
pub fn classical_ramsey(s: usize, t: usize, n: usize, jobs: usize) -> Result<RamseyVerdict> {
    if s == 0 || t == 0 || n == 0 {
        return Err(Error::InvalidArgument("s, t and n must be positive".into()));
    }
    let red = complete_graph(s)?;
    let blue = complete_graph(t)?;
    pattern_guard(&red)?;
    pattern_guard(&blue)?;
    let host = Host::from(complete_graph(n)?);
    if host.edge_count() > MAX_EXHAUSTIVE_EDGES {
        return Err(Error::Guard(format!(
            "K_{n} has {} edges; exhaustive mode supports at most {MAX_EXHAUSTIVE_EDGES}",
            host.edge_count()
        )));
    }
    sweep(host, Targets { red: &red, blue: &blue }, RamseyMode::Exhaustive, jobs)
}

fn sweep(host: Host, targets: Targets<'_>, mode: RamseyMode, jobs: usize) -> Result<RamseyVerdict> {
    let (witness, checked) = match mode {
        RamseyMode::Exhaustive => exhaustive(&host, &targets, jobs.max(1))?,
        RamseyMode::Sampled { count, seed } => {
            let mut found = None;
            for i in 0..count {
                let c = random_coloring(host.clone(), seed.wrapping_add(i));
                if !targets.hit_coloring(&c)? {
                    found = Some((c, i + 1));
                    break;
                }
            }
            match found {
                Some((c, n)) => (Some(c), n),
                None => (None, count),
            }
        }
    };
    if let Some(w) = &witness {
        if targets.hit_coloring(w)? {
            return Err(Error::Certification("witness coloring contains a monochromatic copy".into()));
        }
    }
    Ok(RamseyVerdict {
        forced: witness.is_none(),
        mode,
        colorings_checked: checked,
        witness_coloring: witness,
    })
}

fn exhaustive(host: &Host, targets: &Targets<'_>, jobs: usize) -> Result<(Option<TwoColoring>, u64)> {
    let m = host.edge_count();
    if m > MAX_EXHAUSTIVE_EDGES {
        return Err(Error::Guard(format!(
            "{m} edges; exhaustive mode supports at most {MAX_EXHAUSTIVE_EDGES}"
        )));
    }
    let n = host.to_graph()?.vertex_count();
    let endpoints: Vec<(usize, usize)> = (0..m)
        .map(|r| {
            let (u, v) = host.edge_endpoints(r);
            (u as usize, v as usize)
        })
        .collect();
    let total = 1u64 << m;
    let best = AtomicU64::new(u64::MAX);

    let scan = |start: u64, end: u64| -> Result<()> {
        for rank in start..end {
            if best.load(Ordering::Relaxed) < rank {
                break;
            }
            let mut red = Graph::empty(n);
            let mut blue = Graph::empty(n);
            for (e, &(u, v)) in endpoints.iter().enumerate() {
                if rank >> e & 1 == 0 {
                    red.add_edge(u, v)?;
                } else {
                    blue.add_edge(u, v)?;
                }
            }
            if !targets.hit(&red, &blue)? {
                best.fetch_min(rank, Ordering::Relaxed);
                break;
            }
        }
        Ok(())
    };

    let jobs = (jobs as u64).clamp(1, total);
    if jobs == 1 {
        scan(0, total)?;
    } else {
        let chunk = total.div_ceil(jobs);
        std::thread::scope(|s| -> Result<()> {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let (start, end) = (w * chunk, ((w + 1) * chunk).min(total));
                    let scan = &scan;
                    s.spawn(move || scan(start, end))
                })
                .collect();
            for h in handles {
                h.join().expect("worker panicked")?;
            }
            Ok(())
        })?;
    }

    match best.into_inner() {
        u64::MAX => Ok((None, total)),
        rank => Ok((Some(TwoColoring::from_rank(host.clone(), rank)?), rank + 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{constant_coloring, load_coloring};
    use crate::shift::{eh_graph, shift_graph};

    #[test]
    fn structured_copy_scopes() {
        let g = eh_graph(2).unwrap();
        let red = constant_coloring(g, Color::Red);
        let q = [1, 2, 3, 4, 5];
        assert!(verify_structured_copy(&red, &q, Color::Red, Scope::Full).unwrap());
        assert!(!verify_structured_copy(&red, &q, Color::Blue, Scope::Full).unwrap());
        assert!(verify_structured_copy(&red, &[2, 5], Color::Blue, Scope::Full).unwrap());
        assert!(verify_structured_copy(&red, &[1, 6], Color::Red, Scope::Star).is_err());
        assert!(verify_structured_copy(&red, &[1], Color::Red, Scope::Star).is_err());
    }

    #[test]
    fn star_scope_ignores_edges_away_from_root() {
        // only [2,3]~[3,4] is blue: star at root 1 over {1,2,3,4} is still red
        let g = eh_graph(2).unwrap();
        let c = crate::coloring::predicate_coloring(g, |i, j, k| (i, j, k) != (2, 3, 4)).unwrap();
        assert!(verify_structured_copy(&c, &[1, 2, 3, 4], Color::Red, Scope::Star).unwrap());
        assert!(!verify_structured_copy(&c, &[1, 2, 3, 4], Color::Red, Scope::Full).unwrap());
    }

    #[test]
    fn mono_copy_examples() {
        let g2 = eh_graph(2).unwrap();
        let p1 = eh_graph(1).unwrap().to_graph().unwrap();
        let c = random_coloring(g2, 5);
        let (color, m) = contains_mono_copy(&c, &p1).unwrap().unwrap();
        assert!(m.is_valid(&p1, &c.class_graph(color).unwrap()));

        let k3 = complete_graph(3).unwrap();
        let red3 = constant_coloring(eh_graph(3).unwrap(), Color::Red);
        assert!(contains_mono_copy(&red3, &k3).unwrap().is_none());
    }

    #[test]
    fn pentagon_coloring_of_k5_has_no_mono_triangle() {
        // red cycle 0-1-2-3-4, blue pentagram
        let k5 = complete_graph(5).unwrap();
        let colors = k5
            .edges()
            .map(|(u, v)| if (v - u) % 5 == 1 || (v - u) % 5 == 4 { Color::Red } else { Color::Blue })
            .collect();
        let c = TwoColoring::from_colors(k5, colors).unwrap();
        assert!(contains_mono_copy(&c, &complete_graph(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn micro_ramsey() {
        let p = eh_graph(1).unwrap();
        let v = ramsey_check(p, &p.to_graph().unwrap(), RamseyMode::Exhaustive, 1).unwrap();
        assert!(v.forced);
        assert_eq!(v.colorings_checked, 2);

        let too_big = eh_graph(2).unwrap().to_graph().unwrap();
        let v = ramsey_check(p, &too_big, RamseyMode::Exhaustive, 1).unwrap();
        assert!(!v.forced);
        assert_eq!(v.colorings_checked, 1);
        assert!(v.witness_coloring.is_some());
    }

    #[test]
    fn parallel_sweep_reports_the_same_witness() {
        let host = eh_graph(2).unwrap();
        let pattern = shift_graph(4, 2).unwrap().to_graph().unwrap();
        let one = ramsey_check(host, &pattern, RamseyMode::Exhaustive, 1).unwrap();
        for jobs in [2, 3, 8] {
            let many = ramsey_check(host, &pattern, RamseyMode::Exhaustive, jobs).unwrap();
            assert_eq!(many, one);
        }
    }

    #[test]
    fn classical_small() {
        let v = classical_ramsey(2, 2, 2, 1).unwrap();
        assert!(v.forced);
        let v = classical_ramsey(3, 3, 5, 2).unwrap();
        assert!(!v.forced);
        let w = v.witness_coloring.unwrap();
        let back = load_coloring(w.host().clone(), &w.to_text()).unwrap();
        assert_eq!(back, w);
        assert!(matches!(classical_ramsey(3, 3, 8, 1), Err(Error::Guard(_))));
    }

    #[test]
    fn sampled_mode_is_labelled() {
        let p = eh_graph(1).unwrap().to_graph().unwrap();
        let v = ramsey_check(eh_graph(2).unwrap(), &p, RamseyMode::Sampled { count: 20, seed: 4 }, 1).unwrap();
        assert!(v.forced);
        assert_eq!(v.colorings_checked, 20);
        assert!(v.to_json(None).contains("\"mode\": \"sampled\""));
    }
}
