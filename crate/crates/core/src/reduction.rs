//! The two kernelization rules for Dominating Set, their annotated
//! black-and-white variants, the white-vertex cleanup rules, and the
//! fixpoint driver.
//!
//! Every rule application is recorded as a [`RuleEvent`] and must strictly
//! decrease `|V| + |E|` (the progress guard). The guard doubles as the
//! termination argument and encodes the no-op exceptions where a rule would
//! merely re-create its own gadget pattern.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Color, Graph, GraphError, Origin, VertexId};
use crate::partition::Scratch;

/// Base flavor of the reduction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModeKind {
    /// Attach degree-one (or paired degree-two) gadget vertices; the
    /// domination number is preserved exactly.
    Gadget,
    /// Record forced vertices directly, delete them and whiten their
    /// neighbors instead of attaching pendant gadgets.
    Annotated,
}

/// Reduction mode. The white-vertex extra rules are only available in
/// annotated mode; the constructors enforce that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mode {
    kind: ModeKind,
    extra_rules: bool,
}

impl Mode {
    pub fn gadget() -> Self {
        Mode {
            kind: ModeKind::Gadget,
            extra_rules: false,
        }
    }

    pub fn annotated() -> Self {
        Mode {
            kind: ModeKind::Annotated,
            extra_rules: false,
        }
    }

    pub fn annotated_with_extra_rules() -> Self {
        Mode {
            kind: ModeKind::Annotated,
            extra_rules: true,
        }
    }

    pub fn kind(&self) -> ModeKind {
        self.kind
    }

    pub fn extra_rules(&self) -> bool {
        self.extra_rules
    }

    pub fn is_annotated(&self) -> bool {
        self.kind == ModeKind::Annotated
    }
}

/// Which rule produced an event.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RuleKind {
    R1,
    R2Case11,
    R2Case12,
    R2Case13,
    R2Case2,
    W1,
    W2,
    W3,
}

impl RuleKind {
    pub const ALL: [RuleKind; 8] = [
        RuleKind::R1,
        RuleKind::R2Case11,
        RuleKind::R2Case12,
        RuleKind::R2Case13,
        RuleKind::R2Case2,
        RuleKind::W1,
        RuleKind::W2,
        RuleKind::W3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            RuleKind::R1 => "r1",
            RuleKind::R2Case11 => "r2_1_1",
            RuleKind::R2Case12 => "r2_1_2",
            RuleKind::R2Case13 => "r2_1_3",
            RuleKind::R2Case2 => "r2_2",
            RuleKind::W1 => "w1",
            RuleKind::W2 => "w2",
            RuleKind::W3 => "w3",
        }
    }

    fn index(self) -> usize {
        match self {
            RuleKind::R1 => 0,
            RuleKind::R2Case11 => 1,
            RuleKind::R2Case12 => 2,
            RuleKind::R2Case13 => 3,
            RuleKind::R2Case2 => 4,
            RuleKind::W1 => 5,
            RuleKind::W2 => 6,
            RuleKind::W3 => 7,
        }
    }
}

/// Per-rule application counters.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RuleCounts([u64; 8]);

impl RuleCounts {
    pub fn get(&self, rule: RuleKind) -> u64 {
        self.0[rule.index()]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RuleKind, u64)> + '_ {
        RuleKind::ALL.iter().map(|&r| (r, self.get(r)))
    }

    fn bump(&mut self, rule: RuleKind) {
        self.0[rule.index()] += 1;
    }
}

/// One recorded rule application.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleEvent {
    pub rule: RuleKind,
    /// One or two center vertices the rule pivoted on.
    pub centers: Vec<VertexId>,
    pub removed: BTreeSet<VertexId>,
    pub added_gadgets: BTreeSet<VertexId>,
    pub forced: BTreeSet<VertexId>,
    /// Change of `|V| + |E|`; strictly negative for every recorded event.
    pub delta_potential: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionStats {
    pub n_before: usize,
    pub m_before: usize,
    pub n_after: usize,
    pub m_after: usize,
    /// Live vertices of the kernel that stem from the input (no gadgets).
    pub n_after_original: usize,
    /// Kernel edges with both endpoints of input origin.
    pub m_after_original: usize,
    pub rule_counts: RuleCounts,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub graph: Graph,
    /// Vertices determined to belong to an optimal dominating set
    /// (annotated mode only; empty in gadget mode).
    pub forced: BTreeSet<VertexId>,
    pub events: Vec<RuleEvent>,
    pub stats: ReductionStats,
}

/// Which vertex pairs the rule-2 sweep examines.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepScope {
    /// Only pairs at mutual distance at most three. Rule 2 cannot fire on
    /// farther pairs, which the all-pairs scope exists to demonstrate.
    DistanceThree,
    AllPairs,
}

/// Vertex visit order for the sweeps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VisitOrder {
    Ascending,
    /// Seeded shuffle of every sweep snapshot. The fixpoint graph may
    /// differ from the ascending one, its domination number may not.
    Shuffled(u64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReduceOptions {
    pub mode: Mode,
    pub scope: SweepScope,
    pub order: VisitOrder,
}

impl ReduceOptions {
    pub fn new(mode: Mode) -> Self {
        ReduceOptions {
            mode,
            scope: SweepScope::DistanceThree,
            order: VisitOrder::Ascending,
        }
    }
}

enum GadgetPlan {
    None,
    /// Fresh pendant attached to the center.
    Pendant(VertexId),
    /// Fresh pendants attached to both centers.
    PendantPair(VertexId, VertexId),
    /// Two fresh vertices each adjacent to exactly both centers.
    CommonPair(VertexId, VertexId),
}

struct RulePlan {
    rule: RuleKind,
    centers: Vec<VertexId>,
    removed: Vec<VertexId>,
    whiten: Vec<VertexId>,
    gadget: GadgetPlan,
    forced: Vec<VertexId>,
    predicted_delta: i64,
}

/// Number of edges incident to at least one vertex of `removed`.
fn edges_removed(g: &Graph, removed: &[VertexId]) -> usize {
    let set: BTreeSet<VertexId> = removed.iter().copied().collect();
    let mut degree_sum = 0usize;
    let mut internal_halves = 0usize;
    for &s in removed {
        degree_sum += g.degree(s).unwrap();
        internal_halves += g.neighbors(s).unwrap().filter(|x| set.contains(x)).count();
    }
    degree_sum - internal_halves / 2
}

fn plan_rule1(
    g: &Graph,
    v: VertexId,
    mode: Mode,
    scratch: &mut Scratch,
) -> Result<Option<RulePlan>, GraphError> {
    scratch.classify(g, &[v])?;
    if scratch.n3.is_empty() {
        return Ok(None);
    }
    match mode.kind() {
        ModeKind::Gadget => {
            let mut removed: Vec<VertexId> = Vec::with_capacity(scratch.n2.len() + scratch.n3.len());
            removed.extend_from_slice(&scratch.n2);
            removed.extend_from_slice(&scratch.n3);
            removed.sort_unstable();
            let delta = (1 - removed.len() as i64) + (1 - edges_removed(g, &removed) as i64);
            if delta >= 0 {
                return Ok(None);
            }
            Ok(Some(RulePlan {
                rule: RuleKind::R1,
                centers: vec![v],
                removed,
                whiten: Vec::new(),
                gadget: GadgetPlan::Pendant(v),
                forced: Vec::new(),
                predicted_delta: delta,
            }))
        }
        ModeKind::Annotated => {
            let has_black = scratch
                .n3
                .iter()
                .any(|&u| g.color(u).unwrap() == Color::Black);
            if !has_black {
                return Ok(None);
            }
            let mut removed: Vec<VertexId> =
                Vec::with_capacity(scratch.n2.len() + scratch.n3.len() + 1);
            removed.extend_from_slice(&scratch.n2);
            removed.extend_from_slice(&scratch.n3);
            removed.push(v);
            removed.sort_unstable();
            let whiten: Vec<VertexId> = g.neighbors(v)?.collect();
            let delta = -(removed.len() as i64) - edges_removed(g, &removed) as i64;
            debug_assert!(delta < 0);
            Ok(Some(RulePlan {
                rule: RuleKind::R1,
                centers: vec![v],
                removed,
                whiten,
                gadget: GadgetPlan::None,
                forced: vec![v],
                predicted_delta: delta,
            }))
        }
    }
}

fn plan_rule2(
    g: &Graph,
    v: VertexId,
    w: VertexId,
    mode: Mode,
    scratch: &mut Scratch,
) -> Result<Option<RulePlan>, GraphError> {
    if v == w {
        return Err(GraphError::IdenticalPair(v));
    }
    scratch.classify(g, &[v, w])?;
    if scratch.n3.is_empty() {
        return Ok(None);
    }
    // In annotated mode the domination duty is restricted to black
    // prisoners; the candidate dominators stay the full n2 ∪ n3.
    let relevant: Vec<VertexId> = match mode.kind() {
        ModeKind::Gadget => scratch.n3.clone(),
        ModeKind::Annotated => scratch
            .n3
            .iter()
            .copied()
            .filter(|&u| g.color(u).unwrap() == Color::Black)
            .collect(),
    };
    if relevant.is_empty() {
        return Ok(None);
    }
    let dominates_relevant =
        |x: VertexId| relevant.iter().all(|&r| r == x || g.has_edge(x, r));
    if scratch
        .n2
        .iter()
        .chain(scratch.n3.iter())
        .any(|&x| dominates_relevant(x))
    {
        return Ok(None);
    }
    let in_v = relevant.iter().all(|&r| g.has_edge(v, r));
    let in_w = relevant.iter().all(|&r| g.has_edge(w, r));

    let n2 = scratch.n2.clone();
    let n3 = scratch.n3.clone();
    let annotated = mode.is_annotated();

    let plan = match (in_v, in_w) {
        (true, true) => {
            // Case 1.1: either center works; keep the choice open with a
            // pair of fresh common neighbors (both modes).
            let mut removed = n3;
            removed.extend(
                n2.iter()
                    .copied()
                    .filter(|&u| g.has_edge(v, u) && g.has_edge(w, u)),
            );
            removed.sort_unstable();
            let delta =
                (2 - removed.len() as i64) + (4 - edges_removed(g, &removed) as i64);
            if delta >= 0 {
                return Ok(None);
            }
            RulePlan {
                rule: RuleKind::R2Case11,
                centers: vec![v, w],
                removed,
                whiten: Vec::new(),
                gadget: GadgetPlan::CommonPair(v, w),
                forced: Vec::new(),
                predicted_delta: delta,
            }
        }
        (true, false) | (false, true) => {
            let (center, other, rule) = if in_v {
                (v, w, RuleKind::R2Case12)
            } else {
                (w, v, RuleKind::R2Case13)
            };
            let _ = other;
            let mut removed = n3;
            removed.extend(n2.iter().copied().filter(|&u| g.has_edge(center, u)));
            if annotated {
                removed.push(center);
            }
            removed.sort_unstable();
            let delta = if annotated {
                -(removed.len() as i64) - edges_removed(g, &removed) as i64
            } else {
                (1 - removed.len() as i64) + (1 - edges_removed(g, &removed) as i64)
            };
            if delta >= 0 {
                return Ok(None);
            }
            let (whiten, gadget, forced) = if annotated {
                (
                    g.neighbors(center)?.collect(),
                    GadgetPlan::None,
                    vec![center],
                )
            } else {
                (Vec::new(), GadgetPlan::Pendant(center), Vec::new())
            };
            RulePlan {
                rule,
                centers: vec![v, w],
                removed,
                whiten,
                gadget,
                forced,
                predicted_delta: delta,
            }
        }
        (false, false) => {
            let mut removed = n3;
            removed.extend_from_slice(&n2);
            if annotated {
                removed.push(v);
                removed.push(w);
            }
            removed.sort_unstable();
            let delta = if annotated {
                -(removed.len() as i64) - edges_removed(g, &removed) as i64
            } else {
                (2 - removed.len() as i64) + (2 - edges_removed(g, &removed) as i64)
            };
            if delta >= 0 {
                return Ok(None);
            }
            let (whiten, gadget, forced) = if annotated {
                let mut wl: Vec<VertexId> = g.neighbors(v)?.collect();
                wl.extend(g.neighbors(w)?);
                (wl, GadgetPlan::None, vec![v, w])
            } else {
                (Vec::new(), GadgetPlan::PendantPair(v, w), Vec::new())
            };
            RulePlan {
                rule: RuleKind::R2Case2,
                centers: vec![v, w],
                removed,
                whiten,
                gadget,
                forced,
                predicted_delta: delta,
            }
        }
    };
    Ok(Some(plan))
}

fn plan_white(g: &Graph, u: VertexId) -> Result<Option<RulePlan>, GraphError> {
    if g.color(u)? != Color::White {
        return Ok(None);
    }
    let neighbors: Vec<VertexId> = g.neighbors(u)?.collect();
    let rule = match neighbors.len() {
        0 | 1 => Some(RuleKind::W1),
        2 => {
            // Distance is measured with u removed; through u the two
            // neighbors would trivially sit at distance two.
            let (a, b) = (neighbors[0], neighbors[1]);
            let close = g.has_edge(a, b)
                || g.neighbors(a)?
                    .any(|x| x != u && (x == b || g.has_edge(x, b)));
            close.then_some(RuleKind::W2)
        }
        3 => {
            let mut inner_edges = 0;
            for i in 0..3 {
                for j in i + 1..3 {
                    if g.has_edge(neighbors[i], neighbors[j]) {
                        inner_edges += 1;
                    }
                }
            }
            (inner_edges >= 2).then_some(RuleKind::W3)
        }
        _ => None,
    };
    let Some(rule) = rule else { return Ok(None) };
    let delta = -1 - neighbors.len() as i64;
    Ok(Some(RulePlan {
        rule,
        centers: vec![u],
        removed: vec![u],
        whiten: Vec::new(),
        gadget: GadgetPlan::None,
        forced: Vec::new(),
        predicted_delta: delta,
    }))
}

fn apply_plan(g: &mut Graph, plan: RulePlan) -> RuleEvent {
    let potential_before = g.num_vertices() as i64 + g.num_edges() as i64;
    for &x in &plan.whiten {
        g.set_color(x, Color::White).unwrap();
    }
    for &x in &plan.removed {
        g.remove_vertex(x).unwrap();
    }
    let mut added = BTreeSet::new();
    match plan.gadget {
        GadgetPlan::None => {}
        GadgetPlan::Pendant(on) => {
            let p = g.add_vertex(Color::Black, Origin::Gadget);
            g.add_edge(on, p).unwrap();
            added.insert(p);
        }
        GadgetPlan::PendantPair(a, b) => {
            let pa = g.add_vertex(Color::Black, Origin::Gadget);
            g.add_edge(a, pa).unwrap();
            let pb = g.add_vertex(Color::Black, Origin::Gadget);
            g.add_edge(b, pb).unwrap();
            added.insert(pa);
            added.insert(pb);
        }
        GadgetPlan::CommonPair(a, b) => {
            for _ in 0..2 {
                let z = g.add_vertex(Color::Black, Origin::Gadget);
                g.add_edge(a, z).unwrap();
                g.add_edge(b, z).unwrap();
                added.insert(z);
            }
        }
    }
    let delta = g.num_vertices() as i64 + g.num_edges() as i64 - potential_before;
    debug_assert_eq!(delta, plan.predicted_delta, "progress guard mispredicted");
    debug_assert!(delta < 0, "rule application must shrink the graph");
    RuleEvent {
        rule: plan.rule,
        centers: plan.centers,
        removed: plan.removed.into_iter().collect(),
        added_gadgets: added,
        forced: plan.forced.into_iter().collect(),
        delta_potential: delta,
    }
}

/// Applies rule 1 at `v` if applicable. Gadget mode removes the guard and
/// prisoner sets and attaches a pendant; annotated mode instead forces `v`,
/// whitens its neighborhood and deletes it (requires a black prisoner).
pub fn try_rule1(
    g: &mut Graph,
    v: VertexId,
    mode: Mode,
) -> Result<Option<RuleEvent>, GraphError> {
    let mut scratch = Scratch::new();
    Ok(plan_rule1(g, v, mode, &mut scratch)?.map(|p| apply_plan(g, p)))
}

/// Applies rule 2 on the pair `(v, w)` if applicable; see the four cases.
/// Callers may restrict attempts to pairs at mutual distance at most three.
pub fn try_rule2(
    g: &mut Graph,
    v: VertexId,
    w: VertexId,
    mode: Mode,
) -> Result<Option<RuleEvent>, GraphError> {
    let mut scratch = Scratch::new();
    Ok(plan_rule2(g, v, w, mode, &mut scratch)?.map(|p| apply_plan(g, p)))
}

/// Applies the first matching white-vertex rule at `u`:
/// degree ≤ 1, degree 2 with close neighbors, or degree 3 with a connected
/// neighbor subgraph. Black vertices are simply not applicable.
pub fn try_white_rules(g: &mut Graph, u: VertexId) -> Result<Option<RuleEvent>, GraphError> {
    Ok(plan_white(g, u)?.map(|p| apply_plan(g, p)))
}

struct Reducer {
    g: Graph,
    mode: Mode,
    scope: SweepScope,
    rng: Option<ChaCha8Rng>,
    scratch: Scratch,
    events: Vec<RuleEvent>,
    counts: RuleCounts,
    ball_mark: Vec<u64>,
    ball_round: u64,
}

impl Reducer {
    fn snapshot(&mut self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.g.vertices().collect();
        if let Some(rng) = self.rng.as_mut() {
            vs.shuffle(rng);
        }
        vs
    }

    fn record(&mut self, event: RuleEvent) {
        self.counts.bump(event.rule);
        self.events.push(event);
    }

    /// Vertices within distance three of `v`, ascending (excluding `v`).
    fn ball3(&mut self, v: VertexId) -> Vec<VertexId> {
        if self.ball_mark.len() < self.g.id_bound() {
            self.ball_mark.resize(self.g.id_bound(), 0);
        }
        self.ball_round += 1;
        let round = self.ball_round;
        self.ball_mark[v.index()] = round;
        let mut frontier = vec![v];
        let mut out = Vec::new();
        for _ in 0..3 {
            let mut next = Vec::new();
            for x in frontier {
                for y in self.g.neighbors(x).unwrap() {
                    if self.ball_mark[y.index()] != round {
                        self.ball_mark[y.index()] = round;
                        out.push(y);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        out.sort_unstable();
        out
    }

    fn exhaust_rule1(&mut self) {
        loop {
            let mut any = false;
            for v in self.snapshot() {
                if !self.g.is_live(v) {
                    continue;
                }
                if let Some(plan) = plan_rule1(&self.g, v, self.mode, &mut self.scratch).unwrap()
                {
                    let event = apply_plan(&mut self.g, plan);
                    self.record(event);
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
    }

    /// One pass over vertex pairs. Rule 1 is re-exhausted after every
    /// application so each pair is examined at a rule-1 fixpoint; that is
    /// what confines rule 2 to pairs at distance at most three.
    fn pair_sweep(&mut self) {
        for v in self.snapshot() {
            if !self.g.is_live(v) {
                continue;
            }
            let mut candidates: Vec<VertexId> = match self.scope {
                SweepScope::DistanceThree => {
                    self.ball3(v).into_iter().filter(|&w| w > v).collect()
                }
                SweepScope::AllPairs => self.g.vertices().filter(|&w| w > v).collect(),
            };
            if let Some(rng) = self.rng.as_mut() {
                candidates.shuffle(rng);
            }
            for w in candidates {
                if !self.g.is_live(v) {
                    break;
                }
                if !self.g.is_live(w) {
                    continue;
                }
                if let Some(plan) =
                    plan_rule2(&self.g, v, w, self.mode, &mut self.scratch).unwrap()
                {
                    let event = apply_plan(&mut self.g, plan);
                    self.record(event);
                    self.exhaust_rule1();
                }
            }
        }
    }

    fn white_sweep(&mut self) {
        for u in self.snapshot() {
            if !self.g.is_live(u) {
                continue;
            }
            if let Some(plan) = plan_white(&self.g, u).unwrap() {
                let event = apply_plan(&mut self.g, plan);
                self.record(event);
            }
        }
    }
}

/// Applies the rules to a fixpoint with default options (distance-three
/// pair sweep, ascending visit order).
pub fn reduce(g: Graph, mode: Mode) -> ReductionResult {
    reduce_with(g, ReduceOptions::new(mode))
}

/// Applies the rules to a fixpoint: rule 1 exhaustively, then the pair
/// sweep, then (annotated mode with extra rules) the white-vertex sweep,
/// repeated until a full round records no event.
pub fn reduce_with(g: Graph, opts: ReduceOptions) -> ReductionResult {
    let started = Instant::now();
    let n_before = g.num_vertices();
    let m_before = g.num_edges();
    let mut r = Reducer {
        g,
        mode: opts.mode,
        scope: opts.scope,
        rng: match opts.order {
            VisitOrder::Ascending => None,
            VisitOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        scratch: Scratch::new(),
        events: Vec::new(),
        counts: RuleCounts::default(),
        ball_mark: Vec::new(),
        ball_round: 0,
    };
    r.exhaust_rule1();
    loop {
        let seen = r.events.len();
        r.pair_sweep();
        if r.mode.is_annotated() && r.mode.extra_rules() {
            r.white_sweep();
        }
        if r.events.len() == seen {
            break;
        }
        r.exhaust_rule1();
    }

    let g = r.g;
    let n_after = g.num_vertices();
    let m_after = g.num_edges();
    let n_after_original = g
        .vertices()
        .filter(|&v| g.origin(v).unwrap() == Origin::Original)
        .count();
    let m_after_original = g
        .edge_list()
        .iter()
        .filter(|(u, v)| {
            g.origin(*u).unwrap() == Origin::Original && g.origin(*v).unwrap() == Origin::Original
        })
        .count();
    let forced: BTreeSet<VertexId> = r
        .events
        .iter()
        .flat_map(|e| e.forced.iter().copied())
        .collect();
    ReductionResult {
        graph: g,
        forced,
        events: r.events,
        stats: ReductionStats {
            n_before,
            m_before,
            n_after,
            m_after,
            n_after_original,
            m_after_original,
            rule_counts: r.counts,
            elapsed: started.elapsed(),
        },
    }
}

/// True iff no rule (rule 1, rule 2 on distance-three pairs, and the white
/// rules when enabled) applies anywhere. Pure; the graph is not touched.
pub fn is_reduced(g: &Graph, mode: Mode) -> bool {
    let mut scratch = Scratch::new();
    for v in g.vertices() {
        if plan_rule1(g, v, mode, &mut scratch).unwrap().is_some() {
            return false;
        }
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    for &v in &vs {
        for &w in &vs {
            if w <= v || !g.within_distance(v, w, 3).unwrap() {
                continue;
            }
            if plan_rule2(g, v, w, mode, &mut scratch).unwrap().is_some() {
                return false;
            }
        }
    }
    if mode.is_annotated() && mode.extra_rules() {
        for u in g.vertices() {
            if plan_white(g, u).unwrap().is_some() {
                return false;
            }
        }
    }
    true
}
