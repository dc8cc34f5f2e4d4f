//! The constructive 4-colouring engine for d = 3.
//!
//! The pipeline colours a cubic instance in two phases. Phase 1 walks the
//! cycle list and colours every matching edge: each cycle picks an anchor
//! subarc u–v–y at its lowest B-vertex and chooses the colours of the
//! matching edges at u and y so that the two anchor cycle edges end up
//! with *different* availability lists no matter how the rest of the
//! matching is coloured; every other matching edge gets the filler colour
//! 0, which never matters. Phase 2 extends each cycle independently: the
//! anchor edge takes a reserved colour γ, a greedy walk colours the
//! interior, and the closing edge falls back on one of the two survivors
//! β, δ that were reserved for it up front.
//!
//! Every "pick a …" step resolves ties by lowest colour, vertex index, or
//! edge id, so the whole engine is deterministic. When an availability
//! scan comes up empty — something the existence proof rules out on valid
//! input — the engine raises a theorem sentinel carrying a full
//! reproducer dump instead of guessing.

use std::fmt;

use crate::decompose::{decompose, Decomposition};
use crate::distortion::Colour;
use crate::error::Error;
use crate::instance::{verify_colouring, DistortionInstance, EdgeColouring, EdgeId};
use crate::regularize::regularize;

/// A subset of the four colours, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const FULL: ColourSet = ColourSet(0b1111);
    pub const EMPTY: ColourSet = ColourSet(0);

    pub fn from_colours(colours: &[Colour]) -> Self {
        let mut s = Self::EMPTY;
        for &c in colours {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: Colour) {
        debug_assert!(c < 4);
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Colour) {
        debug_assert!(c < 4);
        self.0 &= !(1 << c);
    }

    pub fn contains(self, c: Colour) -> bool {
        c < 4 && self.0 & (1 << c) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn smallest(self) -> Option<Colour> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Colour)
        }
    }

    pub fn intersection(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        (0..4).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Colours (B-side view) an edge may still take without clashing with the
/// matching colours at its two endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AvailabilityList {
    pub edge: EdgeId,
    pub allowed: ColourSet,
}

/// The anchor subarc u–v–y of one cycle plus the matching edges the plan
/// will colour. For a 2-cycle, u = y and the subarc is the pair of
/// parallel edges in id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleContext {
    /// Index into the decomposition's cycle list.
    pub cycle: usize,
    pub u: usize,
    pub v: usize,
    pub y: usize,
    pub e_uv: EdgeId,
    pub e_vy: EdgeId,
    pub m_u: EdgeId,
    pub m_y: EdgeId,
    pos_uv: usize,
    pos_vy: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorCase {
    /// The two anchor edges carry the same permutation.
    Identical,
    /// The permutations differ, so some colour α has r_uv(α) ≠ r_vy(α).
    Differing,
}

/// Phase-1 colour choices for one cycle's anchor matching edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorPlan {
    pub case: AnchorCase,
    pub two_cycle: bool,
    pub colour_u: Colour,
    pub colour_y: Colour,
    pub alpha: Option<Colour>,
}

/// Picks the anchor subarc of a cycle: centred at the lowest-indexed
/// B-vertex, with `e_uv` the lower-id incident cycle edge.
pub fn choose_anchor(
    inst: &DistortionInstance,
    decomp: &Decomposition,
    cycle_index: usize,
) -> CycleContext {
    let cycle = &decomp.cycles[cycle_index];
    let len = cycle.len();
    let mut pos_v = 1;
    for i in (1..len).step_by(2) {
        if cycle.vertices[i] < cycle.vertices[pos_v] {
            pos_v = i;
        }
    }
    let e_prev = cycle.edges[pos_v - 1];
    let e_next = cycle.edges[pos_v % len];
    let (pos_uv, pos_vy) = if e_prev < e_next {
        (pos_v - 1, pos_v % len)
    } else {
        (pos_v % len, pos_v - 1)
    };
    let e_uv = cycle.edges[pos_uv];
    let e_vy = cycle.edges[pos_vy];
    let u = inst.edges[e_uv].a;
    let y = inst.edges[e_vy].a;
    debug_assert_eq!(u == y, len == 2);
    CycleContext {
        cycle: cycle_index,
        u,
        v: cycle.vertices[pos_v],
        y,
        e_uv,
        e_vy,
        m_u: decomp.matching_edge_at_a(u),
        m_y: decomp.matching_edge_at_a(y),
        pos_uv,
        pos_vy,
    }
}

/// Chooses the anchor colours before any B-side matching colour is known —
/// that ordering is the whole point of the construction.
///
/// Identical distortions: two distinct A-side colours (0 and 1), or just 0
/// on a 2-cycle where a single matching edge serves both roles. Differing
/// distortions: both anchors get the smallest α whose images under the two
/// distortions disagree, which forces different exclusions at v.
pub fn plan_anchor(inst: &DistortionInstance, ctx: &CycleContext) -> AnchorPlan {
    let r_uv = &inst.edges[ctx.e_uv].distortion;
    let r_vy = &inst.edges[ctx.e_vy].distortion;
    let two_cycle = ctx.u == ctx.y;
    if r_uv == r_vy {
        AnchorPlan {
            case: AnchorCase::Identical,
            two_cycle,
            colour_u: 0,
            colour_y: if two_cycle { 0 } else { 1 },
            alpha: None,
        }
    } else {
        let alpha = (0..4)
            .find(|&c| r_uv.apply(c) != r_vy.apply(c))
            .expect("distinct permutations disagree somewhere");
        AnchorPlan {
            case: AnchorCase::Differing,
            two_cycle,
            colour_u: alpha,
            colour_y: alpha,
            alpha: Some(alpha),
        }
    }
}

/// Phase 1: colours every matching edge. Anchor edges follow their
/// cycle's plan; every other matching edge incident with a cycle's A-side
/// gets the filler colour 0 (those colours never matter).
pub fn colour_matching_phase(
    inst: &DistortionInstance,
    decomp: &Decomposition,
) -> Result<EdgeColouring, Error> {
    let mut f = EdgeColouring::unassigned(inst.num_edges());
    for ci in 0..decomp.cycles.len() {
        let ctx = choose_anchor(inst, decomp, ci);
        let plan = plan_anchor(inst, &ctx);
        f.try_assign(ctx.m_u, plan.colour_u)?;
        if ctx.m_y != ctx.m_u {
            f.try_assign(ctx.m_y, plan.colour_y)?;
        }
        for i in (0..decomp.cycles[ci].len()).step_by(2) {
            let m = decomp.matching_edge_at_a(decomp.cycles[ci].vertices[i]);
            if f.get(m).is_none() {
                f.try_assign(m, 0)?;
            }
        }
    }
    Ok(f)
}

/// B-side colours still open for a cycle edge given only the matching
/// colours at its endpoints: everything except the B-side colour of the
/// matching edge at its B-end and the image under its own distortion of
/// the A-side colour of the matching edge at its A-end. Always at least 2
/// colours.
pub fn availability(
    inst: &DistortionInstance,
    decomp: &Decomposition,
    f: &EdgeColouring,
    e: EdgeId,
) -> AvailabilityList {
    let edge = &inst.edges[e];
    let mut allowed = ColourSet::FULL;
    let m_a = decomp.matching_edge_at_a(edge.a);
    let m_b = decomp.matching_edge_at_b(edge.b);
    if let Some(c) = f.get(m_a) {
        allowed.remove(edge.distortion.apply(c));
    }
    if let Some(c) = f.get(m_b) {
        allowed.remove(inst.edges[m_b].distortion.apply(c));
    }
    AvailabilityList { edge: e, allowed }
}

/// Finds β ∈ L1 ∩ L2, γ ∈ L1, δ ∈ L2, all three distinct, by scanning the
/// 64 ordered triples lexicographically. The preconditions (lists unequal,
/// intersecting, each of size ≥ 2) guarantee existence; an empty scan is a
/// theorem sentinel.
pub fn select_beta_gamma_delta(
    l1: &AvailabilityList,
    l2: &AvailabilityList,
) -> Result<(Colour, Colour, Colour), Error> {
    let both = l1.allowed.intersection(l2.allowed);
    for beta in 0..4 {
        if !both.contains(beta) {
            continue;
        }
        for gamma in 0..4 {
            if gamma == beta || !l1.allowed.contains(gamma) {
                continue;
            }
            for delta in 0..4 {
                if delta == beta || delta == gamma || !l2.allowed.contains(delta) {
                    continue;
                }
                return Ok((beta, gamma, delta));
            }
        }
    }
    Err(Error::sentinel(format!(
        "no beta/gamma/delta triple for L1={:?} L2={:?} of edges {} and {}",
        l1.allowed, l2.allowed, l1.edge, l2.edge
    )))
}

/// Phase 2 for a cycle of length ≥ 4.
///
/// Gives the anchor edge e_uv the B-side colour γ, walks the cycle from u
/// away from v assigning each edge the smallest B-side colour that clears
/// its matching exclusions and the previously walked edge, and closes with
/// whichever of β, δ survives at e_vy. The reserved pair β, δ ≠ γ makes
/// the closing step safe: the walked neighbour at y can kill at most one.
pub fn extend_cycle(
    inst: &DistortionInstance,
    decomp: &Decomposition,
    ctx: &CycleContext,
    f: &mut EdgeColouring,
) -> Result<(), Error> {
    let cycle = &decomp.cycles[ctx.cycle];
    let len = cycle.len();
    debug_assert!(len >= 4, "2-cycles take the dedicated path");
    for m in [ctx.m_u, ctx.m_y] {
        if f.get(m).is_none() {
            return Err(Error::MatchingNotColoured { edge: m });
        }
    }

    let l1 = availability(inst, decomp, f, ctx.e_uv);
    let l2 = availability(inst, decomp, f, ctx.e_vy);
    let (beta, gamma, delta) = select_beta_gamma_delta(&l1, &l2)?;

    let r_uv = &inst.edges[ctx.e_uv].distortion;
    f.try_assign(ctx.e_uv, r_uv.invert(gamma))?;

    // Walk orientation: e_uv sits just before or just after v in the
    // stored traversal; the walk leaves u in the opposite direction.
    let p = ctx.pos_uv;
    let forward = (ctx.pos_vy + 1) % len == ctx.pos_uv;
    debug_assert_eq!(
        if forward { (p + len - 1) % len } else { (p + 1) % len },
        ctx.pos_vy
    );

    let mut prev = ctx.e_uv;
    for k in 1..=len - 2 {
        let pos = if forward {
            (p + k) % len
        } else {
            (p + len - k) % len
        };
        let shared_idx = if forward { pos } else { (pos + 1) % len };
        let e = cycle.edges[pos];
        let prev_colour = f.get(prev).expect("walk colours edges in order");
        let mut avail = availability(inst, decomp, f, e).allowed;
        if shared_idx % 2 == 0 {
            // meets the previous edge at an A-vertex: A-side colours differ
            avail.remove(inst.edges[e].distortion.apply(prev_colour));
        } else {
            // meets it at a B-vertex: B-side colours differ
            avail.remove(inst.edges[prev].distortion.apply(prev_colour));
        }
        let Some(c) = avail.smallest() else {
            return Err(Error::sentinel(format!("cycle walk ran dry at edge {e}")));
        };
        f.try_assign(e, inst.edges[e].distortion.invert(c))?;
        prev = e;
    }

    // Closing edge: β and δ both clear the matching exclusions and avoid
    // γ at v; the walked neighbour at y rules out at most one of them.
    let r_vy = &inst.edges[ctx.e_vy].distortion;
    let blocked_at_y = r_vy.apply(f.get(prev).expect("last walked edge coloured"));
    let chosen = if beta != blocked_at_y {
        beta
    } else if delta != blocked_at_y {
        delta
    } else {
        return Err(Error::sentinel(format!(
            "both reserved colours blocked at closing edge {}",
            ctx.e_vy
        )));
    };
    debug_assert_ne!(chosen, gamma);
    f.try_assign(ctx.e_vy, r_vy.invert(chosen))?;
    Ok(())
}

/// Phase 2 for a 2-cycle: scans the 16 ordered A-side colour pairs for the
/// two parallel edges lexicographically and takes the first proper one.
/// The anchor rule guarantees a pair exists; the scan's failure branch is
/// the sentinel the certification suite leans on.
pub fn colour_two_cycle(
    inst: &DistortionInstance,
    decomp: &Decomposition,
    ctx: &CycleContext,
    f: &mut EdgeColouring,
) -> Result<(), Error> {
    let anchor = f
        .get(ctx.m_u)
        .ok_or(Error::MatchingNotColoured { edge: ctx.m_u })?;
    let m_v = decomp.matching_edge_at_b(ctx.v);
    let v_colour = f
        .get(m_v)
        .ok_or(Error::MatchingNotColoured { edge: m_v })?;
    let v_blocked = inst.edges[m_v].distortion.apply(v_colour);

    let r1 = &inst.edges[ctx.e_uv].distortion;
    let r2 = &inst.edges[ctx.e_vy].distortion;
    for c1 in 0..4 {
        if c1 == anchor || r1.apply(c1) == v_blocked {
            continue;
        }
        for c2 in 0..4 {
            if c2 == anchor || c2 == c1 {
                continue;
            }
            if r2.apply(c2) == v_blocked || r2.apply(c2) == r1.apply(c1) {
                continue;
            }
            f.try_assign(ctx.e_uv, c1)?;
            f.try_assign(ctx.e_vy, c2)?;
            return Ok(());
        }
    }
    Err(Error::sentinel(format!(
        "no completion for 2-cycle on edges {} and {}",
        ctx.e_uv, ctx.e_vy
    )))
}

/// The full pipeline: regularize, decompose, colour the matching, extend
/// every cycle, strip the dummies. The result is always a proper
/// distortion-colouring of the input.
pub fn solve(inst: &DistortionInstance) -> Result<EdgeColouring, Error> {
    inst.validate()?;
    if inst.d != 3 {
        return Err(Error::UnsupportedColourCount { d: inst.d });
    }
    let reg = regularize(inst)?;
    let decomp = decompose(&reg.cubic)?;
    let mut f = colour_matching_phase(&reg.cubic, &decomp)?;
    for ci in 0..decomp.cycles.len() {
        let ctx = choose_anchor(&reg.cubic, &decomp, ci);
        let result = if decomp.cycles[ci].is_two_cycle() {
            colour_two_cycle(&reg.cubic, &decomp, &ctx, &mut f)
        } else {
            extend_cycle(&reg.cubic, &decomp, &ctx, &mut f)
        };
        if let Err(e) = result {
            return Err(e.with_dump(&reg.cubic, &f));
        }
    }
    debug_assert!(
        verify_colouring(&reg.cubic, &f).is_empty(),
        "engine output must verify on the cubic instance"
    );
    Ok(reg.strip(&f))
}
