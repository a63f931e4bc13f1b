//! Feedback schedules that reach the inner bounds, plus an auditor.
//!
//! Zero-forcing slots are explicit: the selected users feed back perfect
//! current CSIT and each receives one symbol. Retransmission-based
//! (delayed-CSIT) blocks are accounted at symbol-count level only: a
//! two-user block delivers 4 symbols in 3 slots, a three-user block with two
//! antennas delivers 12 symbols in 8 slots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FeedbackKind {
    Perfect,
    Delayed,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Zero-forcing with perfect current CSIT from every active user.
    Zf,
    /// Two users, delayed CSIT, 4 symbols per 3 slots.
    Mat2User,
    /// Three users, two antennas, delayed CSIT, 12 symbols per 8 slots.
    Mat3UserM2,
}

impl BlockKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlockKind::Zf => "zf",
            BlockKind::Mat2User => "mat2user",
            BlockKind::Mat3UserM2 => "mat3user-m2",
        }
    }

    /// `(symbols, slots)` of one elementary retransmission block.
    fn mat_unit(&self) -> Option<(usize, usize)> {
        match self {
            BlockKind::Zf => None,
            BlockKind::Mat2User => Some((4, 3)),
            BlockKind::Mat3UserM2 => Some((12, 8)),
        }
    }

    fn users(&self) -> Option<usize> {
        match self {
            BlockKind::Zf => None,
            BlockKind::Mat2User => Some(2),
            BlockKind::Mat3UserM2 => Some(3),
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for BlockKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One slot (coherence period). User ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotPlan {
    pub t: usize,
    pub active_users: Vec<usize>,
    /// Feedback mode of every user `1..=K`, in user order.
    pub feedback: Vec<FeedbackKind>,
    /// DoF-slots delivered in this slot; amortized over the block for
    /// retransmission blocks.
    pub symbols: Rational,
}

impl Serialize for SlotPlan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Feedback<'a>(&'a [FeedbackKind]);
        impl Serialize for Feedback<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (u, mode) in self.0.iter().enumerate() {
                    map.serialize_entry(&(u + 1).to_string(), mode)?;
                }
                map.end()
            }
        }
        let mut st = s.serialize_struct("SlotPlan", 3)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("active", &self.active_users)?;
        st.serialize_field("feedback", &Feedback(&self.feedback))?;
        st.end()
    }
}

/// A contiguous run of slots `start..=end` (1-based) using one scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub cfg: SystemConfig,
    pub slots: Vec<SlotPlan>,
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleAudit {
    #[serde(rename = "perfect")]
    pub per_user_perfect_fraction: Vec<Rational>,
    #[serde(rename = "delayed")]
    pub per_user_delayed_fraction: Vec<Rational>,
    pub sum_dof: Rational,
    #[serde(skip)]
    pub total_perfect_cost: Rational,
}

impl Schedule {
    /// The JSON document `{"m","k","slots","blocks","audit"}` with a fixed
    /// field order.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            m: usize,
            k: usize,
            slots: &'a [SlotPlan],
            blocks: &'a [Block],
            audit: ScheduleAudit,
        }
        let doc = Doc {
            m: self.cfg.m(),
            k: self.cfg.k(),
            slots: &self.slots,
            blocks: &self.blocks,
            audit: audit_schedule(self)?,
        };
        Ok(serde_json::to_string_pretty(&doc).expect("schedule serializes"))
    }
}

/// Least `n` such that `n·δ_k` is an integer for every `k`.
pub fn minimal_period(deltas: &[Rational]) -> Result<usize> {
    let mut n = BigInt::one();
    for d in deltas {
        d.check_unit_interval()?;
        n = n.lcm(d.denom());
    }
    n.to_usize()
        .ok_or_else(|| Error::Unsupported(format!("period {n} does not fit in memory")))
}

fn to_count(x: &Rational) -> usize {
    debug_assert!(x.is_integer());
    x.numer().to_usize().expect("small integer count")
}

/// Greedy budgeted selection: in each slot, sort users by remaining budget
/// (stable, ties by ascending user id) and serve the last `s` of them.
/// Returns the active users (1-based, ascending) of every slot.
fn greedy_slots(budgets: &[usize], slots: usize, per_slot: usize) -> Result<Vec<Vec<usize>>> {
    let k = budgets.len();
    let mut remaining = budgets.to_vec();
    let mut out = Vec::with_capacity(slots);
    for t in 0..slots {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&u| remaining[u]);
        let mut chosen: Vec<usize> = order[k - per_slot..].to_vec();
        for &u in &chosen {
            if remaining[u] == 0 {
                return Err(Error::Infeasible(format!(
                    "slot {} needs {per_slot} users with budget left",
                    t + 1
                )));
            }
            remaining[u] -= 1;
        }
        chosen.sort_unstable();
        out.push(chosen.into_iter().map(|u| u + 1).collect());
    }
    if let Some(u) = remaining.iter().position(|&r| r != 0) {
        return Err(Error::Infeasible(format!("user {} budget not exhausted", u + 1)));
    }
    Ok(out)
}

fn zf_slot(t: usize, k: usize, active: Vec<usize>) -> SlotPlan {
    let mut feedback = vec![FeedbackKind::None; k];
    for &u in &active {
        feedback[u - 1] = FeedbackKind::Perfect;
    }
    SlotPlan {
        t,
        symbols: Rational::from(active.len()),
        active_users: active,
        feedback,
    }
}

/// Greedy schedule reaching the full sum DoF `min{M,K}` with per-user
/// perfect-CSIT fractions `deltas`, which must sum to `min{M,K}`.
pub fn greedy_schedule(cfg: SystemConfig, deltas: &[Rational]) -> Result<Schedule> {
    let k = cfg.k();
    if deltas.len() != k {
        return Err(Error::Dimension { expected: k, got: deltas.len() });
    }
    let mk = cfg.min_mk();
    if mk <= 1 {
        return Err(Error::Domain(
            "min{M,K}=1: TDMA is optimal without current CSIT".into(),
        ));
    }
    if let Some(d) = deltas.iter().find(|d| d.is_negative() || **d > Rational::one()) {
        return Err(Error::Infeasible(format!("budget {d} outside [0, 1]")));
    }
    let total: Rational = deltas.iter().sum();
    if total != Rational::from(mk) {
        return Err(Error::Infeasible(format!(
            "budgets sum to {total}, need min{{M,K}} = {mk}"
        )));
    }
    let n = minimal_period(deltas)?;
    let nr = Rational::from(n);
    let budgets: Vec<usize> = deltas.iter().map(|d| to_count(&(d * &nr))).collect();
    let slots = greedy_slots(&budgets, n, mk)?
        .into_iter()
        .enumerate()
        .map(|(t, active)| zf_slot(t + 1, k, active))
        .collect();
    Ok(Schedule {
        cfg,
        slots,
        blocks: vec![Block { kind: BlockKind::Zf, start: 1, end: n }],
    })
}

fn mat_block_slots(
    kind: BlockKind,
    first_t: usize,
    k: usize,
    users: &[usize],
    all_delayed: bool,
) -> Vec<SlotPlan> {
    let (symbols, len) = kind.mat_unit().expect("retransmission block");
    let per_slot = ratio(symbols as i64, len as i64);
    (0..len)
        .map(|s| {
            let mut feedback = vec![FeedbackKind::None; k];
            for (j, &u) in users.iter().enumerate() {
                let reports = all_delayed || delayed_report_slot(kind, j, s);
                if reports {
                    feedback[u - 1] = FeedbackKind::Delayed;
                }
            }
            let mut active = users.to_vec();
            active.sort_unstable();
            SlotPlan {
                t: first_t + s,
                active_users: active,
                feedback,
                symbols: per_slot.clone(),
            }
        })
        .collect()
}

/// Whether the `j`-th user of a retransmission block reports delayed CSIT
/// in block slot `s` (0-based). Two-user blocks: user `j` reports after its
/// own slot `j`. Three-user blocks: user `j` reports in slots
/// `(3i + j) mod 8` for `i = 0, 1, 2`.
fn delayed_report_slot(kind: BlockKind, j: usize, s: usize) -> bool {
    match kind {
        BlockKind::Zf => false,
        BlockKind::Mat2User => s == j,
        BlockKind::Mat3UserM2 => (0..3).any(|i| (3 * i + j) % 8 == s),
    }
}

/// Two-block scheme for `(M,K) = (2,3)`: greedy zero-forcing over `n` slots
/// with budgets `2nδ_k/C_P`, followed by three-user retransmission blocks
/// over `n' = 2n/C_P − n` slots. Sum DoF `3/2 + C_P/4`.
///
/// `n` is the least period that makes every budget and `n'` integral, scaled
/// so that `n'` is a whole number of 8-slot blocks.
pub fn two_block_schedule(deltas: &[Rational]) -> Result<Schedule> {
    let cfg = SystemConfig::new(2, 3)?;
    if deltas.len() != 3 {
        return Err(Error::Dimension { expected: 3, got: deltas.len() });
    }
    for d in deltas {
        d.check_unit_interval()?;
    }
    let cost: Rational = deltas.iter().sum();
    if cost.is_zero() {
        return Ok(Schedule {
            cfg,
            slots: mat_block_slots(BlockKind::Mat3UserM2, 1, 3, &[1, 2, 3], true),
            blocks: vec![Block { kind: BlockKind::Mat3UserM2, start: 1, end: 8 }],
        });
    }
    if cost > Rational::from(2usize) {
        return Err(Error::Infeasible(format!("total cost {cost} exceeds 2")));
    }
    let half = &cost / Rational::from(2usize);
    if let Some((u, d)) = deltas.iter().enumerate().find(|(_, d)| **d > half) {
        return Err(Error::Infeasible(format!(
            "user {} fraction {d} exceeds C_P/2 = {half}",
            u + 1
        )));
    }

    let shares: Vec<Rational> = deltas
        .iter()
        .map(|d| Rational::from(2usize) * d / &cost)
        .collect();
    let stretch = Rational::from(2usize) / &cost;
    let mut n = BigInt::one();
    for x in shares.iter().chain(std::iter::once(&stretch)) {
        n = n.lcm(x.denom());
    }
    let n_r = Rational::from_bigints(n.clone(), BigInt::one());
    let tail = &n_r * (&stretch - Rational::one());
    let tail = tail.numer().clone();
    if !tail.is_zero() {
        n *= BigInt::from(8) / tail.gcd(&BigInt::from(8));
    }
    let n = n
        .to_usize()
        .ok_or_else(|| Error::Unsupported("period too large".into()))?;
    let nr = Rational::from(n);
    let n_tail = to_count(&(&nr * (&stretch - Rational::one())));
    let budgets: Vec<usize> = shares.iter().map(|s| to_count(&(s * &nr))).collect();

    let mut slots: Vec<SlotPlan> = greedy_slots(&budgets, n, 2)?
        .into_iter()
        .enumerate()
        .map(|(t, active)| zf_slot(t + 1, 3, active))
        .collect();
    let mut blocks = vec![Block { kind: BlockKind::Zf, start: 1, end: n }];
    if n_tail > 0 {
        for b in 0..n_tail / 8 {
            let first = n + 8 * b + 1;
            slots.extend(mat_block_slots(BlockKind::Mat3UserM2, first, 3, &[1, 2, 3], true));
        }
        blocks.push(Block {
            kind: BlockKind::Mat3UserM2,
            start: n + 1,
            end: n + n_tail,
        });
    }
    Ok(Schedule { cfg, slots, blocks })
}

/// Target of the delayed-CSIT block schemes for `M = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayedTarget {
    /// `4/3` with `K` two-user blocks of 3 slots.
    FourThirds,
    /// `3/2` with `K` three-user blocks of 8 slots.
    ThreeHalves,
}

/// Delayed-CSIT-only schedule: block `b` serves users `b, b+1 (, b+2)`
/// cyclically, and each served user reports delayed CSIT in a fixed share
/// of its block (1/3 or 3/8).
pub fn delayed_block_schedule(k: usize, target: DelayedTarget) -> Result<Schedule> {
    if k < 3 {
        return Err(Error::Domain(format!("delayed block schemes need K>=3 (K={k})")));
    }
    let cfg = SystemConfig::new(2, k)?;
    let kind = match target {
        DelayedTarget::FourThirds => BlockKind::Mat2User,
        DelayedTarget::ThreeHalves => BlockKind::Mat3UserM2,
    };
    let width = kind.users().expect("retransmission block");
    let (_, len) = kind.mat_unit().expect("retransmission block");
    let mut slots = Vec::with_capacity(k * len);
    let mut blocks = Vec::with_capacity(k);
    for b in 0..k {
        let users: Vec<usize> = (0..width).map(|j| (b + j) % k + 1).collect();
        let first = b * len + 1;
        slots.extend(mat_block_slots(kind, first, k, &users, false));
        blocks.push(Block { kind, start: first, end: first + len - 1 });
    }
    Ok(Schedule { cfg, slots, blocks })
}

/// Mixing weight `Δ` of strategy `a` and the resulting DoF when time-sharing
/// between two `(feedback fraction, sum DoF)` operating points.
pub fn time_share(
    point_a: (&Rational, &Rational),
    point_b: (&Rational, &Rational),
    target_delta: &Rational,
) -> Result<(Rational, Rational)> {
    let (da, fa) = point_a;
    let (db, fb) = point_b;
    if da == db {
        return Err(Error::Domain("time sharing needs two distinct feedback fractions".into()));
    }
    let (lo, hi) = if da < db { (da, db) } else { (db, da) };
    if target_delta < lo || target_delta > hi {
        return Err(Error::Range {
            value: target_delta.to_string(),
            range: format!("[{lo}, {hi}]"),
        });
    }
    let mix = (db - target_delta) / (db - da);
    let dof = fb + &mix * (fa - fb);
    Ok((mix, dof))
}

fn validate(s: &Schedule) -> Result<()> {
    let k = s.cfg.k();
    if s.slots.is_empty() {
        return Err(Error::Validation("schedule has no slots".into()));
    }
    for (i, slot) in s.slots.iter().enumerate() {
        if slot.t != i + 1 {
            return Err(Error::Validation(format!(
                "slot indices not contiguous: position {} has t={}",
                i + 1,
                slot.t
            )));
        }
        if slot.feedback.len() != k {
            return Err(Error::Validation(format!("slot {} lists feedback for {} users", slot.t, slot.feedback.len())));
        }
        if slot.active_users.iter().any(|&u| u == 0 || u > k) {
            return Err(Error::Validation(format!("slot {} has an unknown user", slot.t)));
        }
        let mut sorted = slot.active_users.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != slot.active_users.len() {
            return Err(Error::Validation(format!("slot {} repeats a user", slot.t)));
        }
    }
    let mut next = 1usize;
    for block in &s.blocks {
        if block.start != next || block.end < block.start {
            return Err(Error::Validation(format!(
                "blocks do not partition the slots at slot {next}"
            )));
        }
        next = block.end + 1;
        let range = &s.slots[block.start - 1..block.end.min(s.slots.len())];
        match block.kind {
            BlockKind::Zf => {
                for slot in range {
                    if slot.active_users.len() > s.cfg.min_mk() {
                        return Err(Error::Validation(format!(
                            "slot {} serves {} users with M={}",
                            slot.t,
                            slot.active_users.len(),
                            s.cfg.m()
                        )));
                    }
                    for u in 1..=k {
                        let active = slot.active_users.contains(&u);
                        let perfect = slot.feedback[u - 1] == FeedbackKind::Perfect;
                        if active != perfect {
                            return Err(Error::Validation(format!(
                                "slot {}: perfect feedback must match the active users",
                                slot.t
                            )));
                        }
                    }
                }
            }
            kind => {
                let (_, len) = kind.mat_unit().expect("retransmission block");
                if block.len() % len != 0 {
                    return Err(Error::Validation(format!(
                        "{kind} block {}..={} is not a multiple of {len} slots",
                        block.start, block.end
                    )));
                }
                if s.cfg.m() < 2 {
                    return Err(Error::Validation(format!("{kind} needs M>=2")));
                }
                let width = kind.users().expect("retransmission block");
                for slot in range {
                    if slot.active_users.len() != width {
                        return Err(Error::Validation(format!(
                            "slot {} in a {kind} block serves {} users",
                            slot.t,
                            slot.active_users.len()
                        )));
                    }
                    if slot.feedback.contains(&FeedbackKind::Perfect) {
                        return Err(Error::Validation(format!(
                            "slot {} in a {kind} block uses perfect CSIT",
                            slot.t
                        )));
                    }
                }
            }
        }
    }
    if next != s.slots.len() + 1 {
        return Err(Error::Validation("blocks do not cover every slot".into()));
    }
    Ok(())
}

/// Recomputes feedback fractions and sum DoF of a schedule from its slots
/// and blocks.
pub fn audit_schedule(s: &Schedule) -> Result<ScheduleAudit> {
    validate(s)?;
    let k = s.cfg.k();
    let n = Rational::from(s.slots.len());
    let mut perfect = vec![0usize; k];
    let mut delayed = vec![0usize; k];
    for slot in &s.slots {
        for (u, mode) in slot.feedback.iter().enumerate() {
            match mode {
                FeedbackKind::Perfect => perfect[u] += 1,
                FeedbackKind::Delayed => delayed[u] += 1,
                FeedbackKind::None => {}
            }
        }
    }
    let mut symbols = Rational::zero();
    for block in &s.blocks {
        match block.kind.mat_unit() {
            None => {
                for slot in &s.slots[block.start - 1..block.end] {
                    symbols += Rational::from(slot.active_users.len());
                }
            }
            Some((sym, len)) => {
                symbols += Rational::from(sym * (block.len() / len));
            }
        }
    }
    let per_user_perfect_fraction: Vec<Rational> =
        perfect.iter().map(|&c| Rational::from(c) / &n).collect();
    let per_user_delayed_fraction = delayed.iter().map(|&c| Rational::from(c) / &n).collect();
    let sum_dof = symbols / &n;
    if sum_dof > Rational::from(s.cfg.min_mk()) {
        return Err(Error::Validation(format!("sum DoF {sum_dof} exceeds min{{M,K}}")));
    }
    Ok(ScheduleAudit {
        total_perfect_cost: per_user_perfect_fraction.iter().sum(),
        per_user_perfect_fraction,
        per_user_delayed_fraction,
        sum_dof,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: usize, k: usize) -> SystemConfig {
        SystemConfig::new(m, k).unwrap()
    }

    fn actives(s: &Schedule) -> Vec<Vec<usize>> {
        s.slots.iter().map(|x| x.active_users.clone()).collect()
    }

    #[test]
    fn period_examples() {
        assert_eq!(minimal_period(&[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap(), 3);
        assert_eq!(minimal_period(&vec![ratio(1, 2); 4]).unwrap(), 2);
        assert_eq!(
            minimal_period(&[ratio(1, 1), ratio(0, 1), ratio(1, 1)]).unwrap(),
            1
        );
    }

    #[test]
    fn greedy_reproduces_table() {
        let s = greedy_schedule(cfg(2, 3), &[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap();
        assert_eq!(actives(&s), vec![vec![2, 3], vec![2, 3], vec![1, 3]]);
        let a = audit_schedule(&s).unwrap();
        assert_eq!(a.per_user_perfect_fraction, vec![ratio(1, 3), ratio(2, 3), ratio(1, 1)]);
        assert_eq!(a.sum_dof, ratio(2, 1));
        assert_eq!(s.slots[2].feedback, vec![FeedbackKind::Perfect, FeedbackKind::None, FeedbackKind::Perfect]);
    }

    #[test]
    fn greedy_asymmetric_four_users() {
        let d = vec![ratio(1, 5), ratio(2, 5), ratio(3, 5), ratio(4, 5)];
        let s = greedy_schedule(cfg(2, 4), &d).unwrap();
        assert_eq!(s.slots.len(), 5);
        assert_eq!(audit_schedule(&s).unwrap().per_user_perfect_fraction, d);
    }

    #[test]
    fn greedy_full_budget() {
        let s = greedy_schedule(cfg(3, 3), &vec![ratio(1, 1); 3]).unwrap();
        assert_eq!(actives(&s), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn greedy_infeasible() {
        let e = greedy_schedule(cfg(2, 3), &vec![ratio(1, 3); 3]).unwrap_err();
        assert!(matches!(e, Error::Infeasible(_)));
        let e = greedy_schedule(cfg(2, 3), &[ratio(3, 2), ratio(1, 2), ratio(0, 1)]).unwrap_err();
        assert!(matches!(e, Error::Infeasible(_)));
        assert!(greedy_schedule(cfg(1, 3), &vec![ratio(1, 3); 3]).is_err());
    }

    #[test]
    fn two_block_examples() {
        let s = two_block_schedule(&[ratio(1, 6), ratio(1, 3), ratio(1, 2)]).unwrap();
        let a = audit_schedule(&s).unwrap();
        assert_eq!(a.sum_dof, ratio(7, 4));
        assert_eq!(a.per_user_perfect_fraction, vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)]);

        let s = two_block_schedule(&[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap();
        assert_eq!(s.blocks.len(), 1);
        assert_eq!(audit_schedule(&s).unwrap().sum_dof, ratio(2, 1));

        let s = two_block_schedule(&vec![ratio(1, 3); 3]).unwrap();
        let a = audit_schedule(&s).unwrap();
        assert_eq!(a.sum_dof, ratio(7, 4));
        let tail = &s.blocks[1];
        assert_eq!(tail.len() % 8, 0);
        for slot in &s.slots[tail.start - 1..] {
            assert_eq!(slot.feedback, vec![FeedbackKind::Delayed; 3]);
        }
    }

    #[test]
    fn two_block_zero_cost_and_infeasible() {
        let s = two_block_schedule(&vec![ratio(0, 1); 3]).unwrap();
        assert_eq!(audit_schedule(&s).unwrap().sum_dof, ratio(3, 2));
        let e = two_block_schedule(&[ratio(1, 2), ratio(0, 1), ratio(0, 1)]).unwrap_err();
        assert!(matches!(e, Error::Infeasible(_)));
    }

    #[test]
    fn delayed_examples() {
        let s = delayed_block_schedule(3, DelayedTarget::FourThirds).unwrap();
        assert_eq!(s.blocks.len(), 3);
        assert_eq!(s.slots.len(), 9);
        let a = audit_schedule(&s).unwrap();
        assert_eq!(a.sum_dof, ratio(4, 3));
        assert_eq!(a.per_user_delayed_fraction, vec![ratio(2, 9); 3]);

        let s = delayed_block_schedule(5, DelayedTarget::ThreeHalves).unwrap();
        assert_eq!(s.slots.len(), 40);
        let a = audit_schedule(&s).unwrap();
        assert_eq!(a.sum_dof, ratio(3, 2));
        assert_eq!(a.per_user_delayed_fraction, vec![ratio(9, 40); 5]);

        let s = delayed_block_schedule(3, DelayedTarget::ThreeHalves).unwrap();
        assert!(s.slots.iter().all(|x| x.active_users == vec![1, 2, 3]));
        assert!(delayed_block_schedule(2, DelayedTarget::FourThirds).is_err());
    }

    #[test]
    fn per_block_delayed_shares() {
        let s = delayed_block_schedule(4, DelayedTarget::ThreeHalves).unwrap();
        for block in &s.blocks {
            let range = &s.slots[block.start - 1..block.end];
            for &u in &range[0].active_users {
                let c = range.iter().filter(|x| x.feedback[u - 1] == FeedbackKind::Delayed).count();
                assert_eq!(c, 3);
            }
        }
    }

    #[test]
    fn time_share_examples() {
        let k = Rational::from(3usize);
        let b = (Rational::from(2usize) / &k, ratio(2, 1));
        let a = (Rational::zero(), ratio(3, 2));
        let (mix, dof) = time_share((&a.0, &a.1), (&b.0, &b.1), &k.recip()).unwrap();
        assert_eq!(mix, ratio(1, 2));
        assert_eq!(dof, ratio(7, 4));
        assert_eq!(time_share((&a.0, &a.1), (&b.0, &b.1), &a.0).unwrap(), (ratio(1, 1), a.1.clone()));
        assert_eq!(time_share((&a.0, &a.1), (&b.0, &b.1), &b.0).unwrap(), (ratio(0, 1), b.1.clone()));
        assert!(matches!(
            time_share((&a.0, &a.1), (&b.0, &b.1), &ratio(1, 1)),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn audit_rejects_malformed() {
        let empty = Schedule { cfg: cfg(2, 3), slots: vec![], blocks: vec![] };
        assert!(matches!(audit_schedule(&empty), Err(Error::Validation(_))));

        let mut s = greedy_schedule(cfg(2, 3), &[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap();
        s.slots[1].t = 5;
        assert!(matches!(audit_schedule(&s), Err(Error::Validation(_))));

        let mut s = greedy_schedule(cfg(2, 3), &[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap();
        s.slots[0].active_users = vec![1, 2, 3];
        assert!(matches!(audit_schedule(&s), Err(Error::Validation(_))));

        let mut s = greedy_schedule(cfg(2, 3), &[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap();
        s.blocks[0].end = 2;
        assert!(matches!(audit_schedule(&s), Err(Error::Validation(_))));
    }
}
