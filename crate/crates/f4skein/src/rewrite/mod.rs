//! Directed rewriting with the relation catalog of the category.
//!
//! Rules are generated from morphism equations and closed under pivotal
//! rotation: rotating a relation only re-marks which boundary leg comes
//! first, so every cyclic shift of an equation is registered as a pattern
//! of its own.  When two shifts canonicalize to the same left-hand side the
//! builder asserts their right-hand sides agree — several of the paper's
//! coefficient symmetries (for instance bar(p₁)=p₂ in the crossing
//! elimination) are re-proved numerically by that assertion at startup.

mod rules;

pub use rules::{basis_pack, planar_pack, reduce_rules, PackKind};
pub(crate) use rules::{posdot_coeffs, qsquare_coeffs, xelim_coeffs};

use crate::diagram::{Diagram, DiagramError, DiagramKey, End, LinComb, VKind};
use crate::qring::{delta, ScalarQ};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("step budget exhausted after {steps} rule applications")]
    StepBudgetExhausted { steps: usize, partial: LinComb },
    #[error("irreducible diagram: no applicable rule and the measure stalls")]
    IrreducibleDiagram { partial: LinComb },
    #[error("closed evaluation requires signature 0→0, got {m}→{n}")]
    NotClosed { m: usize, n: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A directed rewrite: an anchored sub-diagram pattern with its replacement.
pub struct RewriteRule {
    pub name: String,
    /// Pattern: a diagram whose ports are the boundary legs in ccw order.
    lhs: Diagram,
    lhs_key: DiagramKey,
    rhs: Vec<(ScalarQ, Diagram)>,
    /// What the rule strictly reduces; `None` marks relations kept for
    /// reference/soundness only and skipped by the reduction loop.
    pub reduces: Option<&'static str>,
}

impl RewriteRule {
    pub fn lhs_key(&self) -> &DiagramKey {
        &self.lhs_key
    }

    pub fn rhs(&self) -> &[(ScalarQ, Diagram)] {
        &self.rhs
    }

    pub fn leg_count(&self) -> usize {
        self.lhs.source()
    }
}

/// Ordered rule sequence plus strategy parameters.
pub struct RulePack {
    pub kind: PackKind,
    pub rules: Vec<RewriteRule>,
    pub max_steps: usize,
}

pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Clone, Debug)]
pub struct NormalizeResult {
    pub reduced: LinComb,
    /// True when no rule in the pack matches any remaining term.
    pub irreducible: bool,
    pub steps: usize,
}

// ---- matching ----

#[derive(Clone, Debug)]
pub struct Match {
    /// pattern vertex -> target vertex
    vmap: Vec<u32>,
    /// pattern slot s of vertex pv sits at target slot (rot[pv]+s) mod deg
    rot: Vec<u8>,
}

fn flags_compatible(pat: VKind, tgt: VKind, r: u8) -> bool {
    match (pat, tgt) {
        (VKind::Tri, VKind::Tri) => true,
        (VKind::Cross { over_even: pe }, VKind::Cross { over_even: te }) => {
            te == (pe ^ (r % 2 == 1))
        }
        _ => false,
    }
}

/// All embeddings of `pattern` into `target`, in deterministic order,
/// up to `limit` results. The pattern must be connected with ≥1 vertex.
pub fn find_matches(target: &Diagram, pattern: &Diagram, limit: usize) -> Vec<Match> {
    let pnv = pattern.vertex_count();
    let tnv = target.vertex_count();
    let mut out = vec![];
    if pnv == 0 || pnv > tnv {
        return out;
    }
    let p0 = pattern.kind(0);
    for tv0 in 0..tnv {
        for r0 in 0..p0.degree() {
            if !flags_compatible(p0, target.kind(tv0), r0) {
                continue;
            }
            if let Some(m) = try_embed(target, pattern, tv0 as u32, r0) {
                out.push(m);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

pub fn find_match(target: &Diagram, pattern: &Diagram) -> Option<Match> {
    find_matches(target, pattern, 1).into_iter().next()
}

fn try_embed(target: &Diagram, pattern: &Diagram, tv0: u32, r0: u8) -> Option<Match> {
    let pnv = pattern.vertex_count();
    let mut vmap: Vec<Option<u32>> = vec![None; pnv];
    let mut rot: Vec<u8> = vec![0; pnv];
    let mut used = vec![false; target.vertex_count()];
    vmap[0] = Some(tv0);
    rot[0] = r0;
    used[tv0 as usize] = true;
    let mut stack = vec![0usize];
    while let Some(pv) = stack.pop() {
        let pk = pattern.kind(pv);
        let deg = pk.degree();
        let tv = vmap[pv].unwrap();
        for ps in 0..deg {
            let (pw, pws) = match pattern.partner(End::Slot(pv as u32, ps)) {
                End::Slot(pw, pws) => (pw as usize, pws),
                End::Port(_) => continue, // leg
            };
            let ts = (rot[pv] + ps) % deg;
            let (tw, tws) = match target.partner(End::Slot(tv, ts)) {
                End::Slot(tw, tws) => (tw, tws),
                End::Port(_) => return None,
            };
            let wdeg = pattern.kind(pw).degree();
            if target.kind(tw as usize).degree() != wdeg {
                return None;
            }
            let rw = (tws + wdeg - pws) % wdeg;
            match vmap[pw] {
                Some(assigned) => {
                    if assigned != tw || rot[pw] != rw {
                        return None;
                    }
                }
                None => {
                    if used[tw as usize]
                        || !flags_compatible(pattern.kind(pw), target.kind(tw as usize), rw)
                    {
                        return None;
                    }
                    vmap[pw] = Some(tw);
                    rot[pw] = rw;
                    used[tw as usize] = true;
                    stack.push(pw);
                }
            }
        }
    }
    if vmap.iter().any(Option::is_none) {
        return None; // disconnected pattern; rejected
    }
    Some(Match {
        vmap: vmap.into_iter().map(Option::unwrap).collect(),
        rot,
    })
}

// ---- splicing ----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BEnd {
    None,
    S(u32, u8),
    F(u32),
}

struct Builder {
    kinds: Vec<VKind>,
    slots: Vec<[BEnd; 4]>,
    frees: Vec<BEnd>,
    circles: u32,
}

impl Builder {
    fn new() -> Self {
        Builder {
            kinds: vec![],
            slots: vec![],
            frees: vec![],
            circles: 0,
        }
    }

    fn add_vertex(&mut self, k: VKind) -> u32 {
        self.kinds.push(k);
        self.slots.push([BEnd::None; 4]);
        (self.kinds.len() - 1) as u32
    }

    fn add_free(&mut self) -> u32 {
        self.frees.push(BEnd::None);
        (self.frees.len() - 1) as u32
    }

    fn get(&self, e: BEnd) -> BEnd {
        match e {
            BEnd::S(v, s) => self.slots[v as usize][s as usize],
            BEnd::F(f) => self.frees[f as usize],
            BEnd::None => unreachable!(),
        }
    }

    fn set(&mut self, e: BEnd, to: BEnd) {
        match e {
            BEnd::S(v, s) => self.slots[v as usize][s as usize] = to,
            BEnd::F(f) => self.frees[f as usize] = to,
            BEnd::None => unreachable!(),
        }
    }

    fn link(&mut self, a: BEnd, b: BEnd) {
        debug_assert_eq!(self.get(a), BEnd::None);
        debug_assert_eq!(self.get(b), BEnd::None);
        self.set(a, b);
        self.set(b, a);
    }

    /// Identify two free ends, joining their partners into one edge.
    fn weld(&mut self, fa: u32, fb: u32) {
        let x = self.frees[fa as usize];
        let y = self.frees[fb as usize];
        debug_assert_ne!(x, BEnd::None);
        debug_assert_ne!(y, BEnd::None);
        if x == BEnd::F(fb) {
            debug_assert_eq!(y, BEnd::F(fa));
            self.circles += 1;
        } else {
            self.set(x, y);
            self.set(y, x);
        }
        self.frees[fa as usize] = BEnd::None;
        self.frees[fb as usize] = BEnd::None;
    }

    fn finish(self, m: usize, n: usize, port_frees: &[u32]) -> Diagram {
        let mut port_of_free: BTreeMap<u32, u32> = BTreeMap::new();
        for (ccw, f) in port_frees.iter().enumerate() {
            port_of_free.insert(*f, ccw as u32);
        }
        let conv = |e: BEnd| -> End {
            match e {
                BEnd::S(v, s) => End::Slot(v, s),
                BEnd::F(f) => End::Port(port_of_free[&f]),
                BEnd::None => panic!("unresolved endpoint"),
            }
        };
        let mut slots = vec![[End::Port(u32::MAX); 4]; self.kinds.len()];
        for v in 0..self.kinds.len() {
            for s in 0..self.kinds[v].degree() {
                slots[v][s as usize] = conv(self.slots[v][s as usize]);
            }
        }
        let mut ports = vec![End::Port(u32::MAX); m + n];
        for (ccw, f) in port_frees.iter().enumerate() {
            ports[ccw] = conv(self.frees[*f as usize]);
        }
        Diagram::from_parts(m, n, self.circles, self.kinds, slots, ports)
    }
}

/// Replace the matched region of `target` by `replacement` (same leg count
/// and cyclic leg order as the pattern).
pub fn apply_match(
    target: &Diagram,
    pattern: &Diagram,
    mat: &Match,
    replacement: &Diagram,
) -> Diagram {
    let k = pattern.source() + pattern.target();
    debug_assert_eq!(pattern.target(), 0, "patterns carry all legs as sources");
    debug_assert_eq!(replacement.source() + replacement.target(), k);

    let mut matched = vec![false; target.vertex_count()];
    for &tv in &mat.vmap {
        matched[tv as usize] = true;
    }
    // leg ℓ -> its image endpoint in the target
    let mut leg_image: Vec<(u32, u8)> = Vec::with_capacity(k);
    let mut image_leg: BTreeMap<(u32, u8), usize> = BTreeMap::new();
    for l in 0..k {
        match pattern.partner(End::Port(l as u32)) {
            End::Slot(pv, ps) => {
                let deg = pattern.kind(pv as usize).degree();
                let tv = mat.vmap[pv as usize];
                let ts = (mat.rot[pv as usize] + ps) % deg;
                leg_image.push((tv, ts));
                image_leg.insert((tv, ts), l);
            }
            End::Port(_) => panic!("pattern leg connects to a leg"),
        }
    }

    let mut b = Builder::new();
    b.circles = target.circles() + replacement.circles();
    // unmatched target vertices
    let mut tmap: Vec<Option<u32>> = vec![None; target.vertex_count()];
    for tv in 0..target.vertex_count() {
        if !matched[tv] {
            tmap[tv] = Some(b.add_vertex(target.kind(tv)));
        }
    }
    // replacement vertices
    let rbase: Vec<u32> = (0..replacement.vertex_count())
        .map(|rv| b.add_vertex(replacement.kind(rv)))
        .collect();
    // free ends: target ports, leg cuts, replacement legs
    let np = target.source() + target.target();
    let port_frees: Vec<u32> = (0..np).map(|_| b.add_free()).collect();
    let cut_frees: Vec<u32> = (0..k).map(|_| b.add_free()).collect();
    let rep_frees: Vec<u32> = (0..k).map(|_| b.add_free()).collect();

    // translate a non-internal target endpoint
    let side = |e: End| -> BEnd {
        match e {
            End::Port(p) => BEnd::F(port_frees[p as usize]),
            End::Slot(v, s) => {
                if matched[v as usize] {
                    let l = image_leg[&(v, s)];
                    BEnd::F(cut_frees[l])
                } else {
                    BEnd::S(tmap[v as usize].unwrap(), s)
                }
            }
        }
    };
    let is_internal = |e: End| -> bool {
        match e {
            End::Port(_) => false,
            End::Slot(v, s) => matched[v as usize] && !image_leg.contains_key(&(v, s)),
        }
    };
    // copy the surviving target edges once each
    let mut every: Vec<End> = (0..np).map(|p| End::Port(p as u32)).collect();
    for v in 0..target.vertex_count() {
        for s in 0..target.kind(v).degree() {
            every.push(End::Slot(v as u32, s));
        }
    }
    for &e in &every {
        let p = target.partner(e);
        if e >= p {
            continue;
        }
        match (is_internal(e), is_internal(p)) {
            (true, true) => continue, // consumed pattern edge
            (false, false) => b.link(side(e), side(p)),
            _ => unreachable!("pattern edge paired with an external endpoint"),
        }
    }
    // replacement edges
    let rnp = k;
    let rside = |e: End| -> BEnd {
        match e {
            End::Port(p) => BEnd::F(rep_frees[p as usize]),
            End::Slot(v, s) => BEnd::S(rbase[v as usize], s),
        }
    };
    let mut revery: Vec<End> = (0..rnp).map(|p| End::Port(p as u32)).collect();
    for v in 0..replacement.vertex_count() {
        for s in 0..replacement.kind(v).degree() {
            revery.push(End::Slot(v as u32, s));
        }
    }
    for &e in &revery {
        let p = replacement.partner(e);
        if e >= p {
            continue;
        }
        b.link(rside(e), rside(p));
    }
    // weld replacement legs onto the cut points
    for l in 0..k {
        b.weld(cut_frees[l], rep_frees[l]);
    }
    b.finish(target.source(), target.target(), &port_frees)
}

// ---- rule construction (used by rules.rs) ----

/// Reinterpret a morphism diagram as a pattern: all boundary ports become
/// legs, cyclically shifted so that leg (ccw + shift) mod k is old ccw.
fn as_pattern(d: &Diagram, shift: usize) -> Diagram {
    let k = d.source() + d.target();
    d.with_cyclic_ports(shift, k)
}

pub(crate) fn build_rules(
    name: &str,
    lhs: &Diagram,
    rhs: &[(ScalarQ, Diagram)],
    reduces: Option<&'static str>,
    out: &mut Vec<RewriteRule>,
) {
    let k = lhs.source() + lhs.target();
    assert!(k >= 1, "closed patterns are handled structurally");
    for shift in 0..k {
        let lp = as_pattern(lhs, shift).canonical();
        let lkey = lp.canonical_key();
        let rp: Vec<(ScalarQ, Diagram)> = rhs
            .iter()
            .map(|(c, d)| (c.clone(), as_pattern(d, shift)))
            .collect();
        let rcanon = rhs_canon(&rp);
        if let Some(existing) = out.iter().find(|r| r.lhs_key == lkey) {
            // Rotated images of one equation may differ formally when the
            // right-hand side involves a crossing (the variants are related
            // through the skein relation); each is sound on its own, so the
            // first registration wins. Crossing-free variants must agree on
            // the nose — this re-proves bar-symmetries like bar(p₁) = p₂.
            let crossing_free = |r: &[(ScalarQ, Diagram)]| {
                r.iter().all(|(_, d)| d.crossing_count() == 0)
            };
            if crossing_free(&existing.rhs) && crossing_free(&rp) {
                assert_eq!(
                    rhs_canon(&existing.rhs),
                    rcanon,
                    "rotation closure produced conflicting rule for {name}"
                );
            }
            continue;
        }
        out.push(RewriteRule {
            name: name.to_string(),
            lhs: lp,
            lhs_key: lkey,
            rhs: rp,
            reduces,
        });
    }
}

fn rhs_canon(rhs: &[(ScalarQ, Diagram)]) -> Vec<(DiagramKey, ScalarQ)> {
    let mut map: BTreeMap<DiagramKey, ScalarQ> = BTreeMap::new();
    for (c, d) in rhs {
        let k = d.canonical_key();
        let e = map.entry(k).or_insert_with(ScalarQ::zero);
        *e += c;
    }
    map.retain(|_, v| !v.is_zero());
    map.into_iter().collect()
}

/// Ξ-image of an equation: flip every crossing, bar every scalar.
pub(crate) fn xi_equation(
    lhs: &Diagram,
    rhs: &[(ScalarQ, Diagram)],
) -> (Diagram, Vec<(ScalarQ, Diagram)>) {
    (
        lhs.xi(),
        rhs.iter().map(|(c, d)| (c.bar(), d.xi())).collect(),
    )
}

// ---- normalization driver ----

fn strip_circles(key: &DiagramKey, coeff: &ScalarQ) -> (DiagramKey, ScalarQ, u32) {
    let mut d = Diagram::from_key(key);
    let c = d.take_circles();
    if c == 0 {
        return (key.clone(), coeff.clone(), 0);
    }
    let mut out = coeff.clone();
    let dl = delta();
    for _ in 0..c {
        out *= &dl;
    }
    (d.canonical_key(), out, c)
}

/// Apply the pack's rules until nothing matches or the budget runs out.
pub fn normalize(f: &LinComb, pack: &RulePack) -> Result<NormalizeResult, RewriteError> {
    let mut pending: BTreeMap<DiagramKey, ScalarQ> = BTreeMap::new();
    for (k, c) in f.iter() {
        merge(&mut pending, k.clone(), c.clone());
    }
    let mut done: BTreeMap<DiagramKey, ScalarQ> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some((key, coeff)) = pending.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        let (key, coeff, ncirc) = strip_circles(&key, &coeff);
        if ncirc > 0 {
            merge(&mut pending, key, coeff);
            continue;
        }
        let dia = Diagram::from_key(&key);
        let mut applied = false;
        for rule in pack.rules.iter().filter(|r| r.reduces.is_some()) {
            if let Some(m) = find_match(&dia, &rule.lhs) {
                steps += 1;
                if steps > pack.max_steps {
                    let partial = collect(f.source(), f.target(), [
                        done,
                        pending,
                        BTreeMap::from([(key, coeff)]),
                    ]);
                    return Err(RewriteError::StepBudgetExhausted { steps, partial });
                }
                for (rc, rd) in &rule.rhs {
                    let nd = apply_match(&dia, &rule.lhs, &m, rd);
                    merge(&mut pending, nd.canonical_key(), &coeff * rc);
                }
                applied = true;
                break;
            }
        }
        if !applied {
            merge(&mut done, key, coeff);
        }
    }
    let reduced = collect(f.source(), f.target(), [done]);
    Ok(NormalizeResult {
        reduced,
        irreducible: true,
        steps,
    })
}

fn merge(map: &mut BTreeMap<DiagramKey, ScalarQ>, key: DiagramKey, c: ScalarQ) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(key.clone()).or_insert_with(ScalarQ::zero);
    *e += &c;
    if e.is_zero() {
        map.remove(&key);
    }
}

fn collect<const N: usize>(
    m: usize,
    n: usize,
    maps: [BTreeMap<DiagramKey, ScalarQ>; N],
) -> LinComb {
    let mut out = LinComb::zero(m, n);
    for map in maps {
        for (k, c) in map {
            out.add_term(c, k);
        }
    }
    out
}

/// Replace every crossing by its 5-term planar expansion; the output
/// contains no crossings.
pub fn eliminate_crossings(f: &LinComb) -> LinComb {
    let pack = rules::xelim_pack();
    let mut pending: BTreeMap<DiagramKey, ScalarQ> = BTreeMap::new();
    for (k, c) in f.iter() {
        merge(&mut pending, k.clone(), c.clone());
    }
    let mut done: BTreeMap<DiagramKey, ScalarQ> = BTreeMap::new();
    while let Some((key, coeff)) = pending.pop_first() {
        let dia = Diagram::from_key(&key);
        let mut applied = false;
        for rule in &pack.rules {
            if let Some(m) = find_match(&dia, &rule.lhs) {
                for (rc, rd) in &rule.rhs {
                    let nd = apply_match(&dia, &rule.lhs, &m, rd);
                    merge(&mut pending, nd.canonical_key(), &coeff * rc);
                }
                applied = true;
                break;
            }
        }
        if !applied {
            debug_assert_eq!(dia.crossing_count(), 0);
            merge(&mut done, key, coeff);
        }
    }
    collect(f.source(), f.target(), [done])
}

/// Evaluate a closed diagram to its scalar: strip circles, reduce small
/// faces, expand crossings, and convert square faces back to crossings only
/// when the crossing is immediately consumable. Fails honestly when stuck.
pub fn reduce_closed(f: &LinComb, max_steps: usize) -> Result<ScalarQ, RewriteError> {
    if f.source() != 0 || f.target() != 0 {
        return Err(RewriteError::NotClosed {
            m: f.source(),
            n: f.target(),
        });
    }
    let rr = reduce_rules();
    let empty_key = Diagram::empty().canonical_key();
    let mut pending: BTreeMap<DiagramKey, ScalarQ> = BTreeMap::new();
    for (k, c) in f.iter() {
        merge(&mut pending, k.clone(), c.clone());
    }
    let mut scalar = ScalarQ::zero();
    let mut steps = 0usize;
    let bump = |steps: &mut usize| -> bool {
        *steps += 1;
        *steps <= max_steps
    };
    while let Some((key, coeff)) = pending.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        let (key, coeff, ncirc) = strip_circles(&key, &coeff);
        if ncirc > 0 {
            merge(&mut pending, key, coeff);
            continue;
        }
        if key == empty_key {
            scalar += &coeff;
            continue;
        }
        let dia = Diagram::from_key(&key);
        // 1. local face/crossing rules
        let mut applied = false;
        for rule in &rr.local {
            if let Some(m) = find_match(&dia, &rule.lhs) {
                if !bump(&mut steps) {
                    return Err(budget_err(steps, f, scalar, pending, key, coeff));
                }
                for (rc, rd) in &rule.rhs {
                    let nd = apply_match(&dia, &rule.lhs, &m, rd);
                    merge(&mut pending, nd.canonical_key(), &coeff * rc);
                }
                applied = true;
                break;
            }
        }
        if applied {
            continue;
        }
        // 2. eliminate a remaining crossing
        if dia.crossing_count() > 0 {
            let mut fired = false;
            for rule in &rr.xelim {
                if let Some(m) = find_match(&dia, &rule.lhs) {
                    if !bump(&mut steps) {
                        return Err(budget_err(steps, f, scalar, pending, key, coeff));
                    }
                    for (rc, rd) in &rule.rhs {
                        let nd = apply_match(&dia, &rule.lhs, &m, rd);
                        merge(&mut pending, nd.canonical_key(), &coeff * rc);
                    }
                    fired = true;
                    break;
                }
            }
            if fired {
                continue;
            }
        }
        // 3. square face → crossing, sanctioned only when the new crossing
        //    reduces at once (otherwise the basis change just ping-pongs)
        let mut fired = false;
        'squares: for rule in &rr.sq_to_x {
            for m in find_matches(&dia, &rule.lhs, 16) {
                // locate the crossing-bearing branch and test consumability
                let mut branch_ok = true;
                let mut branches = vec![];
                for (rc, rd) in &rule.rhs {
                    let nd = apply_match(&dia, &rule.lhs, &m, rd);
                    if nd.crossing_count() > dia.crossing_count() {
                        let consumable = rr
                            .local
                            .iter()
                            .any(|r2| find_match(&nd, &r2.lhs).is_some());
                        if !consumable {
                            branch_ok = false;
                        }
                    }
                    branches.push((&coeff * rc, nd));
                }
                if branch_ok {
                    if !bump(&mut steps) {
                        return Err(budget_err(steps, f, scalar, pending, key, coeff));
                    }
                    for (c, nd) in branches {
                        merge(&mut pending, nd.canonical_key(), c);
                    }
                    fired = true;
                    break 'squares;
                }
            }
        }
        if fired {
            continue;
        }
        // 4. planar pentagon expansion
        for rule in &rr.pentagon {
            if let Some(m) = find_match(&dia, &rule.lhs) {
                if !bump(&mut steps) {
                    return Err(budget_err(steps, f, scalar, pending, key, coeff));
                }
                for (rc, rd) in &rule.rhs {
                    let nd = apply_match(&dia, &rule.lhs, &m, rd);
                    merge(&mut pending, nd.canonical_key(), &coeff * rc);
                }
                fired = true;
                break;
            }
        }
        if fired {
            continue;
        }
        // stuck
        let mut partial = LinComb::zero(0, 0);
        partial.add_term(scalar, empty_key.clone());
        partial.add_term(coeff, key);
        for (k, c) in pending {
            partial.add_term(c, k);
        }
        return Err(RewriteError::IrreducibleDiagram { partial });
    }
    Ok(scalar)
}

fn budget_err(
    steps: usize,
    f: &LinComb,
    scalar: ScalarQ,
    pending: BTreeMap<DiagramKey, ScalarQ>,
    key: DiagramKey,
    coeff: ScalarQ,
) -> RewriteError {
    let mut partial = LinComb::zero(f.source(), f.target());
    partial.add_term(scalar, Diagram::empty().canonical_key());
    partial.add_term(coeff, key);
    for (k, c) in pending {
        partial.add_term(c, k);
    }
    RewriteError::StepBudgetExhausted { steps, partial }
}
