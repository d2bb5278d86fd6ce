//! The tick/cross procedures that build 11-, 13- and 15-basis parity proofs
//! from gamma-table selections.
//!
//! A [`Tableau`] marks each of the 25 bases unmarked, ticked or crossed.
//! Ticking a hybrid always crosses its partner. Re-ticking is a no-op;
//! ticking a crossed basis or crossing a ticked one fails with
//! [`ConstructionError::CrossedPairConflict`].

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::ConstructionError;
use crate::geometry::{BasisId, BasisSet, GammaEntry, GammaRef, GammaTable, Geometry};
use crate::parity::{is_parity_proof, ray_multiplicities, signature, Signature};
use crate::rays::RayId;
use crate::BASIS_COUNT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    Unmarked,
    Ticked,
    Crossed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    ChooseGamma(GammaRef, [RayId; 4]),
    Tick(BasisId),
    Cross(BasisId),
    Examine(RayId),
    /// The examined ray lies in a crossed basis.
    Skip(RayId),
    /// Final hybrid chosen by the repeated-ray rule.
    Final(BasisId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceEntry {
    pub step: &'static str,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    marks: [Mark; BASIS_COUNT],
    trace: Vec<TraceEntry>,
    examined: u64,
    selected: u64,
}

impl Default for Tableau {
    fn default() -> Self {
        Self::new()
    }
}

impl Tableau {
    pub fn new() -> Self {
        Tableau {
            marks: [Mark::Unmarked; BASIS_COUNT],
            trace: Vec::new(),
            examined: 0,
            selected: 0,
        }
    }

    pub fn mark(&self, id: BasisId) -> Mark {
        self.marks[id.index()]
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    fn set_of(&self, mark: Mark) -> BasisSet {
        BasisSet::from_ids(BasisId::all().filter(|id| self.mark(*id) == mark))
    }

    pub fn ticked(&self) -> BasisSet {
        self.set_of(Mark::Ticked)
    }

    pub fn crossed(&self) -> BasisSet {
        self.set_of(Mark::Crossed)
    }

    pub fn unmarked_hybrids(&self) -> Vec<BasisId> {
        BasisId::all()
            .filter(|id| id.is_hybrid() && self.mark(*id) == Mark::Unmarked)
            .collect()
    }

    /// Rays chosen by the user or the procedure (gamma rays and examined
    /// rays that triggered ticks).
    pub fn selected_rays(&self) -> impl Iterator<Item = RayId> + '_ {
        RayId::all().filter(|r| self.selected >> r.index() & 1 == 1)
    }

    fn log(&mut self, step: &'static str, action: Action) {
        self.trace.push(TraceEntry { step, action });
    }

    pub fn tick(&mut self, id: BasisId, step: &'static str) -> Result<(), ConstructionError> {
        match self.mark(id) {
            Mark::Ticked => Ok(()),
            Mark::Crossed => Err(ConstructionError::CrossedPairConflict(id)),
            Mark::Unmarked => {
                self.marks[id.index()] = Mark::Ticked;
                self.log(step, Action::Tick(id));
                Ok(())
            }
        }
    }

    pub fn cross(&mut self, id: BasisId, step: &'static str) -> Result<(), ConstructionError> {
        match self.mark(id) {
            Mark::Crossed => Ok(()),
            Mark::Ticked => Err(ConstructionError::CrossedPairConflict(id)),
            Mark::Unmarked => {
                self.marks[id.index()] = Mark::Crossed;
                self.log(step, Action::Cross(id));
                Ok(())
            }
        }
    }

    /// Ticks a hybrid and crosses its partner.
    pub fn tick_pair(
        &mut self,
        geom: &Geometry,
        y: BasisId,
        step: &'static str,
    ) -> Result<(), ConstructionError> {
        let partner = geom.partner(y).expect("only hybrids are ticked in pairs");
        self.tick(y, step)?;
        self.cross(partner, step)
    }

    /// Choose the gamma set, tick its pure basis, then tick the hybrids
    /// covering its triples and cross their partners.
    fn apply_gamma(
        &mut self,
        geom: &Geometry,
        entry: &GammaEntry,
        steps: [&'static str; 3],
    ) -> Result<(), ConstructionError> {
        self.log(steps[0], Action::ChooseGamma(entry.at, entry.rays));
        for r in entry.rays {
            self.selected |= 1 << r.index();
        }
        self.tick(BasisId::Pure(entry.at.column as u8), steps[1])?;
        for triple in &entry.triples {
            for y in geom.hybrids_covering(triple) {
                self.tick_pair(geom, y, steps[2])?;
            }
        }
        Ok(())
    }

    fn in_crossed(&self, geom: &Geometry, ray: RayId) -> bool {
        geom.bases_containing(ray)
            .any(|b| self.mark(b.id) == Mark::Crossed)
    }

    /// Rays of ticked hybrids outside `gamma` not yet examined, ascending.
    fn new_rays(&self, geom: &Geometry, gamma: &[RayId; 4]) -> Vec<RayId> {
        let pool = geom
            .hybrids()
            .iter()
            .filter(|b| self.mark(b.id) == Mark::Ticked)
            .fold(0u64, |m, b| m | b.ray_mask);
        let gamma_mask = gamma.iter().fold(0u64, |m, r| m | 1 << r.index());
        let avail = pool & !gamma_mask & !self.examined;
        RayId::all()
            .filter(|r| avail >> r.index() & 1 == 1)
            .collect()
    }

    fn examine(
        &mut self,
        geom: &Geometry,
        ray: RayId,
        step: &'static str,
    ) -> Result<(), ConstructionError> {
        self.examined |= 1 << ray.index();
        self.log(step, Action::Examine(ray));
        if self.in_crossed(geom, ray) {
            self.log(step, Action::Skip(ray));
            return Ok(());
        }
        self.selected |= 1 << ray.index();
        let targets: Vec<BasisId> = geom
            .bases_containing(ray)
            .filter(|b| b.id.is_hybrid())
            .map(|b| b.id)
            .collect();
        for y in targets {
            self.tick_pair(geom, y, step)?;
        }
        Ok(())
    }

    /// Deterministic text report: trace, then all 25 bases with their marks.
    /// Selected rays are wrapped in underscores.
    pub fn render(&self, geom: &Geometry) -> String {
        let mut out = String::new();
        out.push_str("trace:\n");
        if self.trace.is_empty() {
            out.push_str("  (empty)\n");
        }
        for e in &self.trace {
            let what = match &e.action {
                Action::ChooseGamma(at, rays) => format!(
                    "choose gamma {at} = {{{}}}",
                    rays.iter()
                        .map(|r| r.get().to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                Action::Tick(id) => format!("tick {id}"),
                Action::Cross(id) => format!("cross {id}"),
                Action::Examine(r) => format!("examine {r}"),
                Action::Skip(r) => format!("skip {r} (in a crossed basis)"),
                Action::Final(id) => format!("final basis {id}"),
            };
            let _ = writeln!(out, "  {:<3} {what}", e.step);
        }
        out.push_str("tableau:\n");
        for b in geom.bases() {
            let sym = match self.mark(b.id) {
                Mark::Unmarked => ' ',
                Mark::Ticked => 'v',
                Mark::Crossed => 'x',
            };
            let rays: Vec<String> = b
                .rays
                .iter()
                .map(|r| {
                    if self.selected >> r.index() & 1 == 1 {
                        format!("_{}_", r.get())
                    } else {
                        r.get().to_string()
                    }
                })
                .collect();
            let _ = writeln!(out, "  [{sym}] {:<3} {}", b.id.to_string(), rays.join(" "));
        }
        out
    }
}

/// Order in which new rays are examined by the 11-basis procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PickOrder {
    /// Always the smallest admissible ray id.
    Auto,
    /// Rays examined in this order; once exhausted the procedure continues
    /// with [`PickOrder::Auto`].
    Explicit(Vec<RayId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub gammas: Vec<GammaRef>,
    pub bases: BasisSet,
    pub signature: Signature,
    pub tableau: Tableau,
}

impl ConstructionResult {
    pub fn render(&self, geom: &Geometry) -> String {
        let mut out = String::new();
        let gammas: Vec<String> = self.gammas.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "procedure: {} bases from gamma {}",
            self.bases.len(),
            gammas.join(" ")
        );
        out.push_str(&self.tableau.render(geom));
        let ids: Vec<String> = self.bases.ids().map(|b| b.to_string()).collect();
        let _ = writeln!(out, "ticked: {}", ids.join(" "));
        let _ = writeln!(out, "signature: {}", self.signature);
        out
    }
}

/// Text report of a finished construction, suitable for golden files.
pub fn trace_render(result: &ConstructionResult, geom: &Geometry) -> String {
    result.render(geom)
}

pub fn error_name(e: &ConstructionError) -> &'static str {
    match e {
        ConstructionError::SameColumn => "SameColumn",
        ConstructionError::UnknownGamma(..) => "UnknownGamma",
        ConstructionError::WrongArity { .. } => "WrongArity",
        ConstructionError::CrossedPairConflict(_) => "CrossedPairConflict",
        ConstructionError::InadmissiblePick { .. } => "InadmissiblePick",
        ConstructionError::Stalled(_) => "Stalled",
        ConstructionError::AmbiguousFinalBasis(_) => "AmbiguousFinalBasis",
        ConstructionError::InvalidResult => "InvalidResult",
    }
}

fn lookup(table: &GammaTable, at: GammaRef) -> Result<&GammaEntry, ConstructionError> {
    table
        .get(at)
        .ok_or(ConstructionError::UnknownGamma(at.column, at.row))
}

fn lookup_distinct<'a>(
    table: &'a GammaTable,
    gammas: &[GammaRef],
    expected: usize,
) -> Result<Vec<&'a GammaEntry>, ConstructionError> {
    if gammas.len() != expected {
        return Err(ConstructionError::WrongArity {
            expected,
            got: gammas.len(),
        });
    }
    let entries = gammas
        .iter()
        .map(|&g| lookup(table, g))
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..gammas.len() {
        for j in i + 1..gammas.len() {
            if gammas[i].column == gammas[j].column {
                return Err(ConstructionError::SameColumn);
            }
        }
    }
    Ok(entries)
}

fn finish(
    geom: &Geometry,
    gammas: Vec<GammaRef>,
    tableau: Tableau,
) -> Result<ConstructionResult, ConstructionError> {
    let bases = tableau.ticked();
    if !is_parity_proof(geom, bases) {
        return Err(ConstructionError::InvalidResult);
    }
    let signature = signature(geom, bases).map_err(|_| ConstructionError::InvalidResult)?;
    Ok(ConstructionResult {
        gammas,
        bases,
        signature,
        tableau,
    })
}

fn examine_step(first: bool) -> &'static str {
    if first {
        "S4"
    } else {
        "S5"
    }
}

/// The 28_2 8_4 - 11_8 procedure: one gamma set, then new rays of the
/// ticked hybrids are examined until every hybrid is checked off.
pub fn construct_11(
    geom: &Geometry,
    table: &GammaTable,
    at: GammaRef,
    picks: &PickOrder,
) -> Result<ConstructionResult, ConstructionError> {
    let entry = lookup(table, at)?;
    let mut tab = Tableau::new();
    tab.apply_gamma(geom, entry, ["S1", "S2", "S3"])?;

    let mut pending: &[RayId] = match picks {
        PickOrder::Auto => &[],
        PickOrder::Explicit(v) => v,
    };
    let mut first = true;
    while !tab.unmarked_hybrids().is_empty() {
        let fresh = tab.new_rays(geom, &entry.rays);
        let ray = if let Some((&r, rest)) = pending.split_first() {
            pending = rest;
            if !fresh.contains(&r) {
                return Err(ConstructionError::InadmissiblePick {
                    ray: r,
                    reason: "not a new ray of a ticked hybrid",
                });
            }
            r
        } else {
            match fresh.iter().find(|r| !tab.in_crossed(geom, **r)) {
                Some(&r) => r,
                None => return Err(ConstructionError::Stalled(tab.unmarked_hybrids().len())),
            }
        };
        tab.examine(geom, ray, examine_step(first))?;
        first = false;
    }
    if let Some(&r) = pending.first() {
        return Err(ConstructionError::InadmissiblePick {
            ray: r,
            reason: "every hybrid is already checked off",
        });
    }
    finish(geom, vec![at], tab)
}

/// Terminal state reached by one branch of [`explore_11`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionOutcome {
    Complete(BasisSet),
    Failed(ConstructionError),
}

/// Follows every admissible examination order of the 11-basis procedure
/// from `at`, returning each distinct terminal state once.
pub fn explore_11(
    geom: &Geometry,
    table: &GammaTable,
    at: GammaRef,
) -> Result<Vec<ConstructionOutcome>, ConstructionError> {
    let entry = lookup(table, at)?;
    let mut start = Tableau::new();
    start.apply_gamma(geom, entry, ["S1", "S2", "S3"])?;

    let mut seen: HashSet<([Mark; BASIS_COUNT], u64)> = HashSet::new();
    let mut outcomes = Vec::new();
    let mut stack = vec![start];
    while let Some(tab) = stack.pop() {
        if !seen.insert((tab.marks, tab.examined)) {
            continue;
        }
        if tab.unmarked_hybrids().is_empty() {
            let set = tab.ticked();
            outcomes.push(if is_parity_proof(geom, set) {
                ConstructionOutcome::Complete(set)
            } else {
                ConstructionOutcome::Failed(ConstructionError::InvalidResult)
            });
            continue;
        }
        let admissible: Vec<RayId> = tab
            .new_rays(geom, &entry.rays)
            .into_iter()
            .filter(|r| !tab.in_crossed(geom, *r))
            .collect();
        if admissible.is_empty() {
            outcomes.push(ConstructionOutcome::Failed(ConstructionError::Stalled(
                tab.unmarked_hybrids().len(),
            )));
            continue;
        }
        for r in admissible.into_iter().rev() {
            let mut next = tab.clone();
            match next.examine(geom, r, "S5") {
                Ok(()) => stack.push(next),
                Err(e) => outcomes.push(ConstructionOutcome::Failed(e)),
            }
        }
    }
    Ok(outcomes)
}

/// The 24_2 14_4 - 13_8 procedure: three gamma sets from distinct columns,
/// then the last unmarked y-y' pair is resolved by the repeated-ray rule.
pub fn construct_13(
    geom: &Geometry,
    table: &GammaTable,
    gammas: &[GammaRef],
) -> Result<ConstructionResult, ConstructionError> {
    let entries = lookup_distinct(table, gammas, 3)?;
    let mut tab = Tableau::new();
    let labels = [["S1", "S2", "S3"], ["S4", "S4", "S4"], ["S5", "S5", "S5"]];
    for (e, steps) in entries.iter().zip(labels) {
        tab.apply_gamma(geom, e, steps)?;
    }

    let remaining = tab.unmarked_hybrids();
    let [a, b] = remaining[..] else {
        return Err(ConstructionError::AmbiguousFinalBasis(remaining.len()));
    };
    if geom.partner(a).ok() != Some(b) {
        return Err(ConstructionError::AmbiguousFinalBasis(remaining.len()));
    }
    let hybrids_ticked = BasisSet::from_ids(tab.ticked().ids().filter(|id| id.is_hybrid()));
    let mult: BTreeMap<RayId, u32> = ray_multiplicities(geom, hybrids_ticked);
    let triple_count = |id: BasisId| {
        geom.basis(id)
            .rays
            .iter()
            .filter(|r| mult.get(r) == Some(&3))
            .count()
    };
    let chosen: Vec<BasisId> = [a, b]
        .into_iter()
        .filter(|&y| triple_count(y) == 2)
        .collect();
    let [y] = chosen[..] else {
        return Err(ConstructionError::AmbiguousFinalBasis(chosen.len()));
    };
    tab.log("S6", Action::Final(y));
    tab.tick_pair(geom, y, "S6")?;
    finish(geom, gammas.to_vec(), tab)
}

/// The 20_2 20_4 - 15_8 procedure: four gamma sets from distinct columns.
/// The four selections tick four pure bases and one hybrid per line; the
/// set is completed by ticking the fifth pure basis.
pub fn construct_15(
    geom: &Geometry,
    table: &GammaTable,
    gammas: &[GammaRef],
) -> Result<ConstructionResult, ConstructionError> {
    let entries = lookup_distinct(table, gammas, 4)?;
    let mut tab = Tableau::new();
    let labels = [
        ["S1", "S2", "S3"],
        ["S4", "S4", "S4"],
        ["S5", "S5", "S5"],
        ["S6", "S6", "S6"],
    ];
    for (e, steps) in entries.iter().zip(labels) {
        tab.apply_gamma(geom, e, steps)?;
    }
    if !tab.unmarked_hybrids().is_empty() {
        return Err(ConstructionError::InvalidResult);
    }
    let missing: Vec<BasisId> = (1..=5u8)
        .map(BasisId::Pure)
        .filter(|p| tab.mark(*p) == Mark::Unmarked)
        .collect();
    for p in missing {
        tab.tick(p, "S7")?;
    }
    finish(geom, gammas.to_vec(), tab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixtures;
    use crate::geometry::{derive_gamma_table, enumerate_bases};
    use crate::parity::find_coloring;
    use crate::rays::build_ray_table;

    fn setup() -> (Geometry, GammaTable) {
        let g = enumerate_bases(&build_ray_table().unwrap()).unwrap();
        let t = derive_gamma_table(&g, &Fixtures::embedded().gamma).unwrap();
        (g, t)
    }

    fn rays(v: &[usize]) -> Vec<RayId> {
        v.iter().map(|&i| RayId::new(i).unwrap()).collect()
    }

    fn ray_lists(g: &Geometry, set: BasisSet) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = set
            .ids()
            .map(|id| g.basis(id).rays.iter().map(|r| r.get()).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn worked_eleven_basis_example() {
        let (g, t) = setup();
        let res = construct_11(
            &g,
            &t,
            GammaRef::new(1, 1),
            &PickOrder::Explicit(rays(&[13, 23, 32])),
        )
        .unwrap();
        let mut expected: Vec<Vec<usize>> = crate::parity::tests_support::WORKED_11
            .iter()
            .map(|b| b.to_vec())
            .collect();
        expected.sort();
        assert_eq!(ray_lists(&g, res.bases), expected);
        assert_eq!(res.signature.to_string(), "28_2 8_4 - 11_8");
        assert!(find_coloring(&g, res.bases).is_none());
    }

    #[test]
    fn auto_policy_is_deterministic_and_valid() {
        let (g, t) = setup();
        let a = construct_11(&g, &t, GammaRef::new(1, 1), &PickOrder::Auto).unwrap();
        let b = construct_11(&g, &t, GammaRef::new(1, 1), &PickOrder::Auto).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.signature.to_string(), "28_2 8_4 - 11_8");
        assert_eq!(a.bases.len(), 11);
        // the first admissible new ray for this gamma is 13
        assert!(a.tableau.trace().contains(&TraceEntry {
            step: "S4",
            action: Action::Examine(rays(&[13])[0])
        }));
    }

    #[test]
    fn different_orders_can_give_different_sets() {
        let (g, t) = setup();
        let outs = explore_11(&g, &t, GammaRef::new(1, 1)).unwrap();
        let distinct: std::collections::BTreeSet<BasisSet> = outs
            .iter()
            .filter_map(|o| match o {
                ConstructionOutcome::Complete(s) => Some(*s),
                _ => None,
            })
            .collect();
        assert!(distinct.len() > 1);
        for s in distinct {
            assert_eq!(signature(&g, s).unwrap().to_string(), "28_2 8_4 - 11_8");
        }
    }

    #[test]
    fn inadmissible_picks() {
        let (g, t) = setup();
        let at = GammaRef::new(1, 1);
        // ray 1 is part of the gamma set
        let e = construct_11(&g, &t, at, &PickOrder::Explicit(rays(&[1]))).unwrap_err();
        assert!(matches!(e, ConstructionError::InadmissiblePick { .. }));
        // ray 9 is not in any ticked hybrid yet
        let e = construct_11(&g, &t, at, &PickOrder::Explicit(rays(&[9]))).unwrap_err();
        assert!(matches!(e, ConstructionError::InadmissiblePick { .. }));
        let e =
            construct_11(&g, &t, at, &PickOrder::Explicit(rays(&[13, 23, 32, 14]))).unwrap_err();
        assert!(matches!(e, ConstructionError::InadmissiblePick { .. }));
    }

    #[test]
    fn crossed_pick_is_examined_and_skipped() {
        let (g, t) = setup();
        let res = construct_11(
            &g,
            &t,
            GammaRef::new(1, 1),
            &PickOrder::Explicit(rays(&[4, 13, 23, 32])),
        )
        .unwrap();
        assert_eq!(
            res.tableau
                .trace()
                .iter()
                .filter(|e| e.action == Action::Skip(rays(&[4])[0]))
                .count(),
            1
        );
        assert_eq!(res.signature.to_string(), "28_2 8_4 - 11_8");
    }

    #[test]
    fn thirteen_same_column() {
        let (g, t) = setup();
        let gs = [
            GammaRef::new(1, 1),
            GammaRef::new(1, 2),
            GammaRef::new(1, 3),
        ];
        assert_eq!(
            construct_13(&g, &t, &gs),
            Err(ConstructionError::SameColumn)
        );
        let gs = [
            GammaRef::new(1, 1),
            GammaRef::new(2, 2),
            GammaRef::new(1, 3),
        ];
        assert_eq!(
            construct_13(&g, &t, &gs),
            Err(ConstructionError::SameColumn)
        );
    }

    #[test]
    fn fifteen_repeated_column() {
        let (g, t) = setup();
        let gs = [
            GammaRef::new(1, 1),
            GammaRef::new(2, 2),
            GammaRef::new(3, 3),
            GammaRef::new(2, 4),
        ];
        assert_eq!(
            construct_15(&g, &t, &gs),
            Err(ConstructionError::SameColumn)
        );
    }

    #[test]
    fn arity_and_unknown_gamma() {
        let (g, t) = setup();
        assert!(matches!(
            construct_13(&g, &t, &[GammaRef::new(1, 1)]),
            Err(ConstructionError::WrongArity {
                expected: 3,
                got: 1
            })
        ));
        assert_eq!(
            construct_11(&g, &t, GammaRef::new(6, 1), &PickOrder::Auto),
            Err(ConstructionError::UnknownGamma(6, 1))
        );
    }

    #[test]
    fn some_thirteen_and_fifteen_runs_succeed() {
        let (g, t) = setup();
        let mut ok13 = 0;
        for r2 in 1..=8 {
            for r3 in 1..=8 {
                let gs = [
                    GammaRef::new(1, 1),
                    GammaRef::new(2, r2),
                    GammaRef::new(3, r3),
                ];
                if let Ok(res) = construct_13(&g, &t, &gs) {
                    ok13 += 1;
                    assert_eq!(res.signature.to_string(), "24_2 14_4 - 13_8");
                    assert!(find_coloring(&g, res.bases).is_none());
                }
            }
        }
        assert!(ok13 > 0);
        let mut ok15 = 0;
        for code in 0..8 * 8 * 8 {
            let (r, s, u) = (code % 8 + 1, code / 8 % 8 + 1, code / 64 + 1);
            let gs = [
                GammaRef::new(1, 1),
                GammaRef::new(2, r),
                GammaRef::new(3, s),
                GammaRef::new(4, u),
            ];
            if let Ok(res) = construct_15(&g, &t, &gs) {
                ok15 += 1;
                assert_eq!(res.signature.to_string(), "20_2 20_4 - 15_8");
                assert_eq!(res.bases.len(), 15);
            }
        }
        assert!(ok15 > 0);
    }

    #[test]
    fn tick_cross_exclusivity() {
        let mut tab = Tableau::new();
        tab.tick(BasisId::Hybrid(1), "S3").unwrap();
        tab.tick(BasisId::Hybrid(1), "S3").unwrap();
        assert_eq!(tab.trace().len(), 1);
        assert_eq!(
            tab.cross(BasisId::Hybrid(1), "S3"),
            Err(ConstructionError::CrossedPairConflict(BasisId::Hybrid(1)))
        );
        tab.cross(BasisId::Hybrid(2), "S3").unwrap();
        assert_eq!(
            tab.tick(BasisId::Hybrid(2), "S3"),
            Err(ConstructionError::CrossedPairConflict(BasisId::Hybrid(2)))
        );
    }

    #[test]
    fn empty_render_lists_all_bases_unmarked() {
        let (g, _) = setup();
        let text = Tableau::new().render(&g);
        assert_eq!(text.lines().filter(|l| l.starts_with("  [ ]")).count(), 25);
    }

    #[test]
    fn render_marks_selected_rays() {
        let (g, t) = setup();
        let res = construct_11(
            &g,
            &t,
            GammaRef::new(1, 1),
            &PickOrder::Explicit(rays(&[13, 23, 32])),
        )
        .unwrap();
        let text = trace_render(&res, &g);
        assert!(text.contains("_13_"));
        assert!(text.contains("signature: 28_2 8_4 - 11_8"));
        assert_eq!(text.lines().filter(|l| l.starts_with("  [v]")).count(), 11);
        assert!(res.tableau.trace().len() >= 5);
    }
}
