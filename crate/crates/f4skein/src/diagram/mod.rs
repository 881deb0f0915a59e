//! Morphisms of the diagrammatic category as planar combinatorial maps.
//!
//! A [`Diagram`] is an open planar graph in a disk: trivalent vertices and
//! 4-valent crossing vertices (with an over/under bit), a counterclockwise
//! rotation system at every vertex, boundary ports in counterclockwise order
//! (bottom left→right, then top right→left), and a count of free circles.
//! Isotopy rel boundary is exactly equality of this data, so the canonical
//! key — a boundary-rooted BFS code — quotients by zig-zag moves and vertex
//! rotation for free, while Reidemeister moves stay honest rewrite rules.

mod expr;
mod lincomb;

pub use expr::{Generator, MorphismExpr};
pub use lincomb::LinComb;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("arity mismatch: cannot compose {top}→ after →{bottom}")]
    ArityMismatch { bottom: usize, top: usize },
    #[error("rotation requires at least one strand on each side (signature {m}→{n})")]
    RotUndefined { m: usize, n: usize },
}

/// One end of an edge: a boundary port (ccw index) or a vertex slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum End {
    Port(u32),
    Slot(u32, u8),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VKind {
    Tri,
    /// `over_even`: the strand through slots {0,2} passes over {1,3}.
    Cross { over_even: bool },
}

impl VKind {
    pub fn degree(self) -> u8 {
        match self {
            VKind::Tri => 3,
            VKind::Cross { .. } => 4,
        }
    }
}

/// Canonical serialized form of a diagram; total order and hashing for use
/// as a [`LinComb`] key. Faithful: the diagram can be rebuilt from it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramKey(Box<[u32]>);

impl DiagramKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone)]
pub struct Diagram {
    m: usize,
    n: usize,
    circles: u32,
    kinds: Vec<VKind>,
    slots: Vec<[End; 4]>,
    ports: Vec<End>,
}

const NO_END: End = End::Port(u32::MAX);

impl Diagram {
    pub fn source(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> usize {
        self.n
    }

    pub fn circles(&self) -> u32 {
        self.circles
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, v: usize) -> VKind {
        self.kinds[v]
    }

    pub fn crossing_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| matches!(k, VKind::Cross { .. }))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0 && self.n == 0 && self.kinds.is_empty() && self.circles == 0
    }

    /// ccw index of bottom port `i`.
    pub fn bottom_ccw(&self, i: usize) -> usize {
        i
    }

    /// ccw index of top port `j` (tops run right→left after the bottoms).
    pub fn top_ccw(&self, j: usize) -> usize {
        self.m + (self.n - 1 - j)
    }

    pub fn partner(&self, e: End) -> End {
        match e {
            End::Port(p) => self.ports[p as usize],
            End::Slot(v, s) => self.slots[v as usize][s as usize],
        }
    }

    fn set_partner(&mut self, e: End, to: End) {
        match e {
            End::Port(p) => self.ports[p as usize] = to,
            End::Slot(v, s) => self.slots[v as usize][s as usize] = to,
        }
    }

    #[cfg(debug_assertions)]
    fn check(&self) {
        for p in 0..self.ports.len() {
            let e = End::Port(p as u32);
            let q = self.partner(e);
            assert_ne!(q, e);
            assert_eq!(self.partner(q), e);
        }
        for v in 0..self.kinds.len() {
            for s in 0..self.kinds[v].degree() {
                let e = End::Slot(v as u32, s);
                let q = self.partner(e);
                assert_ne!(q, e);
                assert_eq!(self.partner(q), e);
            }
        }
    }

    #[cfg(not(debug_assertions))]
    fn check(&self) {}

    // ---- generators ----

    pub fn identity(k: usize) -> Diagram {
        let mut d = Diagram {
            m: k,
            n: k,
            circles: 0,
            kinds: vec![],
            slots: vec![],
            ports: vec![NO_END; 2 * k],
        };
        for i in 0..k {
            let b = d.bottom_ccw(i) as u32;
            let t = d.top_ccw(i) as u32;
            d.ports[b as usize] = End::Port(t);
            d.ports[t as usize] = End::Port(b);
        }
        d.check();
        d
    }

    pub fn empty() -> Diagram {
        Diagram::identity(0)
    }

    /// One free circle (0→0).
    pub fn circle() -> Diagram {
        let mut d = Diagram::empty();
        d.circles = 1;
        d
    }

    // Trivalent merge 2→1. Slots ccw: 0 = top, 1 = bottom-left, 2 = bottom-right.
    pub fn merge() -> Diagram {
        let mut d = Diagram {
            m: 2,
            n: 1,
            circles: 0,
            kinds: vec![VKind::Tri],
            slots: vec![[NO_END; 4]],
            ports: vec![NO_END; 3],
        };
        d.link(End::Port(0), End::Slot(0, 1));
        d.link(End::Port(1), End::Slot(0, 2));
        d.link(End::Port(2), End::Slot(0, 0));
        d.check();
        d
    }

    // Trivalent split 1→2. Slots ccw: 0 = top-right, 1 = top-left, 2 = bottom.
    pub fn split() -> Diagram {
        let mut d = Diagram {
            m: 1,
            n: 2,
            circles: 0,
            kinds: vec![VKind::Tri],
            slots: vec![[NO_END; 4]],
            ports: vec![NO_END; 3],
        };
        d.link(End::Port(0), End::Slot(0, 2));
        d.link(End::Port(1), End::Slot(0, 0)); // ccw1 = top port 1 (right)
        d.link(End::Port(2), End::Slot(0, 1)); // ccw2 = top port 0 (left)
        d.check();
        d
    }

    pub fn cup() -> Diagram {
        let mut d = Diagram {
            m: 0,
            n: 2,
            circles: 0,
            kinds: vec![],
            slots: vec![],
            ports: vec![NO_END; 2],
        };
        d.link(End::Port(0), End::Port(1));
        d.check();
        d
    }

    pub fn cap() -> Diagram {
        let mut d = Diagram {
            m: 2,
            n: 0,
            circles: 0,
            kinds: vec![],
            slots: vec![],
            ports: vec![NO_END; 2],
        };
        d.link(End::Port(0), End::Port(1));
        d.check();
        d
    }

    // Crossing 2→2. Slots ccw: 0 = top-right, 1 = top-left, 2 = bottom-left,
    // 3 = bottom-right; strands are {0,2} (SW→NE) and {1,3} (SE→NW).
    fn crossing(over_even: bool) -> Diagram {
        let mut d = Diagram {
            m: 2,
            n: 2,
            circles: 0,
            kinds: vec![VKind::Cross { over_even }],
            slots: vec![[NO_END; 4]],
            ports: vec![NO_END; 4],
        };
        d.link(End::Port(0), End::Slot(0, 2));
        d.link(End::Port(1), End::Slot(0, 3));
        d.link(End::Port(2), End::Slot(0, 0)); // ccw2 = top port 1
        d.link(End::Port(3), End::Slot(0, 1)); // ccw3 = top port 0
        d.check();
        d
    }

    /// Positive crossing: the bottom-left→top-right strand passes over.
    pub fn xpos() -> Diagram {
        Diagram::crossing(true)
    }

    /// Negative crossing.
    pub fn xneg() -> Diagram {
        Diagram::crossing(false)
    }

    fn link(&mut self, a: End, b: End) {
        debug_assert_eq!(self.partner_raw(a), NO_END);
        debug_assert_eq!(self.partner_raw(b), NO_END);
        self.set_partner(a, b);
        self.set_partner(b, a);
    }

    fn partner_raw(&self, e: End) -> End {
        match e {
            End::Port(p) => self.ports[p as usize],
            End::Slot(v, s) => self.slots[v as usize][s as usize],
        }
    }

    // ---- categorical structure ----

    pub fn tensor(&self, right: &Diagram) -> Diagram {
        let (a, b) = (self, right);
        let m = a.m + b.m;
        let n = a.n + b.n;
        let vo = a.kinds.len() as u32; // vertex offset for b
        let mut d = Diagram {
            m,
            n,
            circles: a.circles + b.circles,
            kinds: a.kinds.iter().chain(b.kinds.iter()).copied().collect(),
            slots: vec![[NO_END; 4]; a.kinds.len() + b.kinds.len()],
            ports: vec![NO_END; m + n],
        };
        // old ccw index -> new ccw index
        let map_a = |p: u32| -> u32 {
            let p = p as usize;
            if p < a.m {
                p as u32 // bottom i
            } else {
                let j = a.n - 1 - (p - a.m); // top port j of a
                (m + (n - 1 - j)) as u32
            }
        };
        let map_b = |p: u32| -> u32 {
            let p = p as usize;
            if p < b.m {
                (a.m + p) as u32
            } else {
                let j = b.n - 1 - (p - b.m);
                (m + (n - 1 - (a.n + j))) as u32
            }
        };
        let tr_a = |e: End| match e {
            End::Port(p) => End::Port(map_a(p)),
            End::Slot(v, s) => End::Slot(v, s),
        };
        let tr_b = |e: End| match e {
            End::Port(p) => End::Port(map_b(p)),
            End::Slot(v, s) => End::Slot(v + vo, s),
        };
        for v in 0..a.kinds.len() {
            for s in 0..a.kinds[v].degree() {
                d.slots[v][s as usize] = tr_a(a.slots[v][s as usize]);
            }
        }
        for v in 0..b.kinds.len() {
            for s in 0..b.kinds[v].degree() {
                d.slots[v + vo as usize][s as usize] = tr_b(b.slots[v][s as usize]);
            }
        }
        for p in 0..a.ports.len() {
            d.ports[map_a(p as u32) as usize] = tr_a(a.ports[p]);
        }
        for p in 0..b.ports.len() {
            d.ports[map_b(p as u32) as usize] = tr_b(b.ports[p]);
        }
        d.check();
        d
    }

    /// `f.compose(g)` = f∘g: `g` first (bottom), then `f` (top).
    pub fn compose(f: &Diagram, g: &Diagram) -> Result<Diagram, DiagramError> {
        if g.n != f.m {
            return Err(DiagramError::ArityMismatch { bottom: g.n, top: f.m });
        }
        let k = g.n;
        let m = g.m;
        let n = f.n;
        let vo = g.kinds.len() as u32;
        let mut d = Diagram {
            m,
            n,
            circles: g.circles + f.circles,
            kinds: g.kinds.iter().chain(f.kinds.iter()).copied().collect(),
            slots: vec![[NO_END; 4]; g.kinds.len() + f.kinds.len()],
            ports: vec![NO_END; m + n],
        };
        // junction j, 0..k: glue g's top port j to f's bottom port j.
        // Endpoint space during gluing: result endpoints + junction sides.
        #[derive(Clone, Copy, PartialEq, Eq, Debug)]
        enum GE {
            Done(End),
            JuncG(usize), // g-side mouth of junction j
            JuncF(usize), // f-side mouth of junction j
        }
        let tr_g = |e: End| -> GE {
            match e {
                End::Slot(v, s) => GE::Done(End::Slot(v, s)),
                End::Port(p) => {
                    let p = p as usize;
                    if p < g.m {
                        GE::Done(End::Port(p as u32))
                    } else {
                        GE::JuncG(g.n - 1 - (p - g.m))
                    }
                }
            }
        };
        let tr_f = |e: End| -> GE {
            match e {
                End::Slot(v, s) => GE::Done(End::Slot(v + vo, s)),
                End::Port(p) => {
                    let p = p as usize;
                    if p < f.m {
                        GE::JuncF(p)
                    } else {
                        let j = f.n - 1 - (p - f.m);
                        GE::Done(End::Port((m + (n - 1 - j)) as u32))
                    }
                }
            }
        };
        // partner map across the junction space
        let jg: Vec<GE> = (0..k).map(|j| tr_g(g.ports[g.top_ccw(j)])).collect();
        let jf: Vec<GE> = (0..k).map(|j| tr_f(f.ports[f.bottom_ccw(j)])).collect();
        // write adjacency for real endpoints
        for v in 0..g.kinds.len() {
            for s in 0..g.kinds[v].degree() {
                if let GE::Done(e2) = tr_g(g.slots[v][s as usize]) {
                    d.slots[v][s as usize] = e2;
                }
            }
        }
        for v in 0..f.kinds.len() {
            for s in 0..f.kinds[v].degree() {
                if let GE::Done(e2) = tr_f(f.slots[v][s as usize]) {
                    d.slots[(v as u32 + vo) as usize][s as usize] = e2;
                }
            }
        }
        for p in 0..g.ports.len() {
            if p < g.m {
                if let GE::Done(e2) = tr_g(g.ports[p]) {
                    d.set_partner(End::Port(p as u32), e2);
                }
            }
        }
        for p in f.m..f.ports.len() {
            let j = f.n - 1 - (p - f.m);
            let newp = (m + (n - 1 - j)) as u32;
            if let GE::Done(e2) = tr_f(f.ports[p]) {
                d.set_partner(End::Port(newp), e2);
            }
        }
        // resolve junctions: walk each chain once
        let mut seen = vec![false; k];
        for j0 in 0..k {
            if seen[j0] {
                continue;
            }
            // a chain passes through junctions; find its two real ends or a cycle
            // by walking out of both mouths of junction j0
            seen[j0] = true;
            // extend left from jg[j0]
            let mut left = jg[j0];
            loop {
                match left {
                    GE::JuncG(t) => {
                        // arrived at junction t through its g mouth: leave through f
                        if seen[t] {
                            break;
                        }
                        seen[t] = true;
                        left = jf[t];
                    }
                    GE::JuncF(t) => {
                        if seen[t] {
                            break;
                        }
                        seen[t] = true;
                        left = jg[t];
                    }
                    GE::Done(_) => break,
                }
            }
            let mut right = jf[j0];
            loop {
                match right {
                    GE::JuncG(t) => {
                        if seen[t] {
                            break;
                        }
                        seen[t] = true;
                        right = jf[t];
                    }
                    GE::JuncF(t) => {
                        if seen[t] {
                            break;
                        }
                        seen[t] = true;
                        right = jg[t];
                    }
                    GE::Done(_) => break,
                }
            }
            match (left, right) {
                (GE::Done(a), GE::Done(b)) => {
                    d.set_partner(a, b);
                    d.set_partner(b, a);
                }
                (GE::Done(_), _) | (_, GE::Done(_)) => {
                    unreachable!("half-closed junction chain")
                }
                _ => {
                    // the chain closed on itself: a free circle
                    d.circles += 1;
                }
            }
        }
        d.check();
        Ok(d)
    }

    /// Pivotal rotation: (cap⊗1ⁿ)∘(1⊗f⊗1)∘(1ᵐ⊗cup).
    pub fn rot(&self) -> Result<Diagram, DiagramError> {
        if self.m == 0 || self.n == 0 {
            return Err(DiagramError::RotUndefined { m: self.m, n: self.n });
        }
        let id1 = Diagram::identity(1);
        let mid = id1.tensor(self).tensor(&id1);
        let bot = Diagram::identity(self.m).tensor(&Diagram::cup());
        let top = Diagram::cap().tensor(&Diagram::identity(self.n));
        let lower = Diagram::compose(&mid, &bot)?;
        Diagram::compose(&top, &lower)
    }

    /// Flip every crossing (the diagram part of the bar functor Ξ).
    pub fn xi(&self) -> Diagram {
        let mut d = self.clone();
        for kmut in &mut d.kinds {
            if let VKind::Cross { over_even } = kmut {
                *over_even = !*over_even;
            }
        }
        d
    }

    /// Strip free circles, returning how many were removed.
    pub fn take_circles(&mut self) -> u32 {
        std::mem::take(&mut self.circles)
    }

    // ---- canonical form ----

    /// Canonical relabeling: boundary-rooted BFS over the rotation system;
    /// free closed components get the minimal rotation code and are sorted.
    pub fn canonical(&self) -> Diagram {
        let nv = self.kinds.len();
        let mut assign: Vec<Option<(u32, u8)>> = vec![None; nv]; // (new id, base slot)
        let mut next: u32 = 0;
        let mut queue: VecDeque<usize> = VecDeque::new();

        let discover =
            |v: usize, s: u8, assign: &mut Vec<Option<(u32, u8)>>, next: &mut u32, queue: &mut VecDeque<usize>| {
                if assign[v].is_none() {
                    assign[v] = Some((*next, s));
                    *next += 1;
                    queue.push_back(v);
                }
            };

        for p in 0..self.ports.len() {
            if let End::Slot(v, s) = self.ports[p] {
                discover(v as usize, s, &mut assign, &mut next, &mut queue);
            }
            while let Some(v) = queue.pop_front() {
                let (_, base) = assign[v].unwrap();
                let deg = self.kinds[v].degree();
                for j in 1..deg {
                    let s = (base + j) % deg;
                    if let End::Slot(w, s2) = self.slots[v][s as usize] {
                        discover(w as usize, s2, &mut assign, &mut next, &mut queue);
                    }
                }
            }
        }

        // closed components: canonical start = lexicographically least code
        let mut comp_codes: Vec<(Vec<u32>, Vec<(usize, u8)>)> = vec![];
        let mut in_comp = vec![false; nv];
        for v0 in 0..nv {
            if assign[v0].is_some() || in_comp[v0] {
                continue;
            }
            // collect the component
            let mut comp = vec![v0];
            in_comp[v0] = true;
            let mut idx = 0;
            while idx < comp.len() {
                let v = comp[idx];
                idx += 1;
                for s in 0..self.kinds[v].degree() {
                    if let End::Slot(w, _) = self.slots[v][s as usize] {
                        let w = w as usize;
                        if !in_comp[w] {
                            in_comp[w] = true;
                            comp.push(w);
                        }
                    }
                }
            }
            let mut best: Option<(Vec<u32>, Vec<(usize, u8)>)> = None;
            for &sv in &comp {
                for ss in 0..self.kinds[sv].degree() {
                    let cand = self.encode_component(sv, ss);
                    if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                        best = Some(cand);
                    }
                }
            }
            comp_codes.push(best.unwrap());
        }
        comp_codes.sort();
        for (_, order) in &comp_codes {
            for &(v, base) in order {
                assign[v] = Some((next, base));
                next += 1;
            }
        }
        debug_assert_eq!(next as usize, nv);

        // rebuild with new labels
        let mut kinds = vec![VKind::Tri; nv];
        let mut slots = vec![[NO_END; 4]; nv];
        let mut ports = vec![NO_END; self.ports.len()];
        let remap = |e: End| -> End {
            match e {
                End::Port(p) => End::Port(p),
                End::Slot(v, s) => {
                    let (nid, base) = assign[v as usize].unwrap();
                    let deg = self.kinds[v as usize].degree();
                    End::Slot(nid, (s + deg - base) % deg)
                }
            }
        };
        for v in 0..nv {
            let (nid, base) = assign[v].unwrap();
            let deg = self.kinds[v].degree();
            kinds[nid as usize] = match self.kinds[v] {
                VKind::Tri => VKind::Tri,
                VKind::Cross { over_even } => VKind::Cross {
                    over_even: over_even ^ (base % 2 == 1),
                },
            };
            for s in 0..deg {
                let ns = (s + deg - base) % deg;
                slots[nid as usize][ns as usize] = remap(self.slots[v][s as usize]);
            }
        }
        for p in 0..self.ports.len() {
            ports[p] = remap(self.ports[p]);
        }
        let d = Diagram {
            m: self.m,
            n: self.n,
            circles: self.circles,
            kinds,
            slots,
            ports,
        };
        d.check();
        d
    }

    /// BFS code of one closed component with the given start, using local
    /// ids; returns the code and the visit order with bases.
    fn encode_component(&self, v0: usize, s0: u8) -> (Vec<u32>, Vec<(usize, u8)>) {
        let mut local: BTreeMap<usize, (u32, u8)> = BTreeMap::new();
        let mut order: Vec<(usize, u8)> = vec![];
        let mut queue = VecDeque::new();
        local.insert(v0, (0, s0));
        order.push((v0, s0));
        queue.push_back(v0);
        while let Some(v) = queue.pop_front() {
            let (_, base) = local[&v];
            let deg = self.kinds[v].degree();
            for j in 0..deg {
                let s = (base + j) % deg;
                if let End::Slot(w, s2) = self.slots[v][s as usize] {
                    let w = w as usize;
                    if !local.contains_key(&w) {
                        local.insert(w, (local.len() as u32, s2));
                        order.push((w, s2));
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut code = vec![];
        for &(v, base) in &order {
            let deg = self.kinds[v].degree();
            code.push(match self.kinds[v] {
                VKind::Tri => 0,
                VKind::Cross { over_even } => {
                    if over_even ^ (base % 2 == 1) {
                        1
                    } else {
                        2
                    }
                }
            });
            for j in 0..deg {
                let s = (base + j) % deg;
                match self.slots[v][s as usize] {
                    End::Slot(w, s2) => {
                        let (wid, wbase) = local[&(w as usize)];
                        let wdeg = self.kinds[w as usize].degree();
                        code.push(4 * wid + ((s2 + wdeg - wbase) % wdeg) as u32);
                    }
                    End::Port(_) => unreachable!("closed component touches boundary"),
                }
            }
        }
        (code, order)
    }

    /// Canonical key; call on the output of [`Diagram::canonical`] or use
    /// [`Diagram::canonical_key`].
    fn encode(&self) -> DiagramKey {
        let np = self.ports.len() as u32;
        let enc = |e: End| -> u32 {
            match e {
                End::Port(p) => p,
                End::Slot(v, s) => np + 4 * v + s as u32,
            }
        };
        let mut out: Vec<u32> = vec![
            self.m as u32,
            self.n as u32,
            self.circles,
            self.kinds.len() as u32,
        ];
        for v in 0..self.kinds.len() {
            out.push(match self.kinds[v] {
                VKind::Tri => 0,
                VKind::Cross { over_even: true } => 1,
                VKind::Cross { over_even: false } => 2,
            });
            for s in 0..self.kinds[v].degree() {
                out.push(enc(self.slots[v][s as usize]));
            }
        }
        for p in 0..self.ports.len() {
            out.push(enc(self.ports[p]));
        }
        DiagramKey(out.into_boxed_slice())
    }

    pub fn canonical_key(&self) -> DiagramKey {
        self.canonical().encode()
    }

    pub fn from_key(key: &DiagramKey) -> Diagram {
        let k = &key.0;
        let (m, n, circles, nv) = (k[0] as usize, k[1] as usize, k[2], k[3] as usize);
        let np = (m + n) as u32;
        let dec = |c: u32| -> End {
            if c < np {
                End::Port(c)
            } else {
                End::Slot((c - np) / 4, ((c - np) % 4) as u8)
            }
        };
        let mut kinds = Vec::with_capacity(nv);
        let mut slots = vec![[NO_END; 4]; nv];
        let mut i = 4;
        for v in 0..nv {
            let kind = match k[i] {
                0 => VKind::Tri,
                1 => VKind::Cross { over_even: true },
                _ => VKind::Cross { over_even: false },
            };
            i += 1;
            kinds.push(kind);
            for s in 0..kind.degree() {
                slots[v][s as usize] = dec(k[i]);
                i += 1;
            }
        }
        let mut ports = vec![NO_END; m + n];
        for item in ports.iter_mut() {
            *item = dec(k[i]);
            i += 1;
        }
        let d = Diagram {
            m,
            n,
            circles,
            kinds,
            slots,
            ports,
        };
        d.check();
        d
    }

    pub(crate) fn from_parts(
        m: usize,
        n: usize,
        circles: u32,
        kinds: Vec<VKind>,
        slots: Vec<[End; 4]>,
        ports: Vec<End>,
    ) -> Diagram {
        let d = Diagram {
            m,
            n,
            circles,
            kinds,
            slots,
            ports,
        };
        d.check();
        d
    }

    /// Reinterpret as a pattern with all boundary legs as sources, shifting
    /// the cyclic port order: new leg (ccw + shift) mod k sits where old ccw
    /// port `ccw` was. Shifting by one is exactly a pivotal rotation.
    pub(crate) fn with_cyclic_ports(&self, shift: usize, k: usize) -> Diagram {
        debug_assert_eq!(self.m + self.n, k);
        let map = |p: u32| (((p as usize) + shift) % k) as u32;
        let tr = |e: End| match e {
            End::Port(p) => End::Port(map(p)),
            s => s,
        };
        let mut slots = self.slots.clone();
        for v in 0..self.kinds.len() {
            for s in 0..self.kinds[v].degree() {
                slots[v][s as usize] = tr(slots[v][s as usize]);
            }
        }
        let mut ports = vec![NO_END; k];
        for p in 0..k {
            ports[map(p as u32) as usize] = tr(self.ports[p]);
        }
        Diagram::from_parts(k, 0, self.circles, self.kinds.clone(), slots, ports)
    }

    /// Human-readable description of the canonical structure.
    pub fn describe(&self) -> String {
        let c = self.canonical();
        let mut s = format!("{}to{}", c.m, c.n);
        if c.circles > 0 {
            s.push_str(&format!(";O{}", c.circles));
        }
        let pe = |e: End| -> String {
            match e {
                End::Port(p) => format!("p{}", p),
                End::Slot(v, sl) => format!("v{}.{}", v, sl),
            }
        };
        for v in 0..c.kinds.len() {
            let tag = match c.kinds[v] {
                VKind::Tri => "t".to_string(),
                VKind::Cross { over_even: true } => "x+".to_string(),
                VKind::Cross { over_even: false } => "x-".to_string(),
            };
            s.push_str(&format!(";v{}={}(", v, tag));
            for sl in 0..c.kinds[v].degree() {
                if sl > 0 {
                    s.push(',');
                }
                s.push_str(&pe(c.slots[v][sl as usize]));
            }
            s.push(')');
        }
        s.push_str(";b=");
        for p in 0..c.ports.len() {
            if p > 0 {
                s.push(',');
            }
            s.push_str(&pe(c.ports[p]));
        }
        s
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram[{}]", self.describe())
    }
}

impl fmt::Debug for DiagramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key[{}]", Diagram::from_key(self).describe())
    }
}

// ---- the named 2→2 diagrams of the 2-strand basis ----

/// jail: two parallel strands.
pub fn jail() -> Diagram {
    Diagram::identity(2)
}

/// hourglass: cup over cap.
pub fn hourglass() -> Diagram {
    Diagram::compose(&Diagram::cup(), &Diagram::cap()).unwrap()
}

/// H: two trivalent vertices joined by a horizontal rung.
pub fn hmor() -> Diagram {
    let mut d = Diagram {
        m: 2,
        n: 2,
        circles: 0,
        kinds: vec![VKind::Tri, VKind::Tri],
        slots: vec![[NO_END; 4]; 2],
        ports: vec![NO_END; 4],
    };
    // left vertex 0: ccw slots (top-left, bottom-left, rung-right)
    // right vertex 1: ccw slots (top-right, rung-left, bottom-right)
    d.link(End::Port(0), End::Slot(0, 1)); // b1 – left.bottom
    d.link(End::Port(1), End::Slot(1, 2)); // b2 – right.bottom
    d.link(End::Port(2), End::Slot(1, 0)); // ccw2 = t2 – right.top
    d.link(End::Port(3), End::Slot(0, 0)); // ccw3 = t1 – left.top
    d.link(End::Slot(0, 2), End::Slot(1, 1)); // rung
    d.check();
    d
}

/// I: merge then split.
pub fn imor() -> Diagram {
    Diagram::compose(&Diagram::split(), &Diagram::merge()).unwrap()
}

/// square: four trivalent vertices in a 4-cycle, one leg each (= H∘H).
pub fn square() -> Diagram {
    Diagram::compose(&hmor(), &hmor()).unwrap()
}

/// pentagon: five trivalent vertices in a 5-cycle, 2→3 with one leg each.
pub fn pentagon() -> Diagram {
    // bottom-left and bottom-right vertices, then right-top, top, left-top
    let mut d = Diagram {
        m: 2,
        n: 3,
        circles: 0,
        kinds: vec![VKind::Tri; 5],
        slots: vec![[NO_END; 4]; 5],
        ports: vec![NO_END; 5],
    };
    // vertices 0..5 placed counterclockwise: 0 = bottom-left, 1 = bottom-right,
    // 2 = right (top-right leg), 3 = top (middle leg), 4 = left (top-left leg).
    // ccw rotation at each vertex: (outward leg, edge to next ccw vertex,
    // edge to previous vertex); ring edge i.slot1 — (i+1).slot2.
    for i in 0..5u32 {
        let next = (i + 1) % 5;
        d.link(End::Slot(i, 1), End::Slot(next, 2));
    }
    // legs: ccw ports: p0=b1(v0), p1=b2(v1), p2=t3... ports ccw: bottoms L→R then tops R→L
    d.link(End::Port(0), End::Slot(0, 0));
    d.link(End::Port(1), End::Slot(1, 0));
    d.link(End::Port(2), End::Slot(2, 0)); // ccw2 = top port 2 (rightmost)
    d.link(End::Port(3), End::Slot(3, 0)); // top middle
    d.link(End::Port(4), End::Slot(4, 0)); // top left
    d.check();
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag_straightens() {
        // (cap⊗1)∘(1⊗cup) = id and (1⊗cap)∘(cup⊗1) = id
        let id1 = Diagram::identity(1);
        let z1 = Diagram::compose(
            &Diagram::cap().tensor(&id1),
            &id1.tensor(&Diagram::cup()),
        )
        .unwrap();
        let z2 = Diagram::compose(
            &id1.tensor(&Diagram::cap()),
            &Diagram::cup().tensor(&id1),
        )
        .unwrap();
        assert_eq!(z1.canonical_key(), id1.canonical_key());
        assert_eq!(z2.canonical_key(), id1.canonical_key());
    }

    #[test]
    fn circle_from_cap_cup() {
        let c = Diagram::compose(&Diagram::cap(), &Diagram::cup()).unwrap();
        assert_eq!(c.circles(), 1);
        assert_eq!(c.canonical_key(), Diagram::circle().canonical_key());
    }

    #[test]
    fn vertex_rotation_invariance() {
        // triform: merge with the left leg bent up equals split-like rotations
        // (1⊗merge)∘(cup⊗1): 1→2 equals split
        let id1 = Diagram::identity(1);
        let bent = Diagram::compose(
            &id1.tensor(&Diagram::merge()),
            &Diagram::cup().tensor(&id1),
        )
        .unwrap();
        assert_eq!(bent.canonical_key(), Diagram::split().canonical_key());
        // and the mirror: (merge⊗1)∘(1⊗cup)
        let bent2 = Diagram::compose(
            &Diagram::merge().tensor(&id1),
            &id1.tensor(&Diagram::cup()),
        )
        .unwrap();
        assert_eq!(bent2.canonical_key(), Diagram::split().canonical_key());
    }

    #[test]
    fn rot_on_generators() {
        // Rot(identity strand bundle) = hourglass for 2 strands
        assert_eq!(
            jail().rot().unwrap().canonical_key(),
            hourglass().canonical_key()
        );
        assert_eq!(
            hourglass().rot().unwrap().canonical_key(),
            jail().canonical_key()
        );
        assert_eq!(hmor().rot().unwrap().canonical_key(), imor().canonical_key());
        assert_eq!(imor().rot().unwrap().canonical_key(), hmor().canonical_key());
        // the crossing flips sign under rotation
        assert_eq!(
            Diagram::xpos().rot().unwrap().canonical_key(),
            Diagram::xneg().canonical_key()
        );
        // and Rot² is the identity on all five
        for d in [jail(), hourglass(), hmor(), imor(), Diagram::xpos()] {
            assert_eq!(
                d.rot().unwrap().rot().unwrap().canonical_key(),
                d.canonical_key()
            );
        }
    }

    #[test]
    fn rot_errors_without_strands() {
        assert!(Diagram::cup().rot().is_err()); // m = 0
        assert!(Diagram::cap().rot().is_err()); // n = 0
    }

    #[test]
    fn xi_flips_crossings_only() {
        assert_eq!(
            Diagram::xpos().xi().canonical_key(),
            Diagram::xneg().canonical_key()
        );
        assert_eq!(hmor().xi().canonical_key(), hmor().canonical_key());
        for d in [jail(), hourglass(), hmor(), imor(), Diagram::xpos()] {
            assert_eq!(d.xi().xi().canonical_key(), d.canonical_key());
        }
    }

    #[test]
    fn square_is_fourfold_symmetric() {
        let sq = square();
        assert_eq!(sq.vertex_count(), 4);
        assert_eq!(sq.rot().unwrap().canonical_key(), sq.canonical_key());
    }

    #[test]
    fn pentagon_rotates_to_itself_up_to_boundary() {
        let p = pentagon();
        assert_eq!(p.vertex_count(), 5);
        assert_eq!(p.source(), 2);
        assert_eq!(p.target(), 3);
        // Rot maps the 2→3 pentagon to the 2→3 pentagon again
        assert_eq!(p.rot().unwrap().canonical_key(), p.canonical_key());
    }

    #[test]
    fn key_roundtrip() {
        for d in [
            jail(),
            hourglass(),
            hmor(),
            imor(),
            Diagram::xpos(),
            square(),
            pentagon(),
            Diagram::circle(),
        ] {
            let c = d.canonical();
            let key = c.encode();
            let back = Diagram::from_key(&key);
            assert_eq!(back.canonical_key(), key);
        }
    }

    #[test]
    fn interchange_law() {
        // (f1⊗f2)∘(g1⊗g2) = (f1∘g1)⊗(f2∘g2) on sample diagrams
        let f1 = Diagram::merge();
        let f2 = Diagram::split();
        let g1 = Diagram::xpos();
        let g2 = Diagram::identity(1);
        let lhs = Diagram::compose(&f1.tensor(&f2), &g1.tensor(&g2)).unwrap();
        let rhs = Diagram::compose(&f1, &g1)
            .unwrap()
            .tensor(&Diagram::compose(&f2, &g2).unwrap());
        assert_eq!(lhs.canonical_key(), rhs.canonical_key());
    }

    #[test]
    fn hmor_matches_expression_route() {
        // H = (1⊗merge)∘(x-free rewiring): check H equals the composite
        // (merge⊗... ) route: H = (1⊗merge)∘(split⊗1) is the I rotated; the
        // direct check: rot(I) built by composition equals the hand-built H.
        let h2 = imor().rot().unwrap();
        assert_eq!(h2.canonical_key(), hmor().canonical_key());
    }

    #[test]
    fn closed_component_codes_are_start_invariant() {
        // theta graph: closure of I
        let theta = Diagram::compose(
            &Diagram::cap(),
            &Diagram::compose(&imor(), &Diagram::cup()).unwrap(),
        )
        .unwrap();
        assert_eq!(theta.source(), 0);
        assert_eq!(theta.target(), 0);
        assert_eq!(theta.vertex_count(), 2);
        // the same theta assembled differently
        let theta2 = Diagram::compose(
            &Diagram::compose(&Diagram::cap(), &imor()).unwrap(),
            &Diagram::cup(),
        )
        .unwrap();
        assert_eq!(theta.canonical_key(), theta2.canonical_key());
    }
}
