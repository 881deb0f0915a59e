//! Closed-diagram evaluation: quantum-trace closures of 2-strand elements
//! and framed link invariants of 2-strand tangle closures.

use crate::diagram::{Diagram, LinComb};
use crate::qring::{delta, phi, ScalarQ};
use crate::rewrite::{self, DEFAULT_STEP_BUDGET};
use crate::rootdata::{root_datum, Weight};
use crate::twopoint::{
    crossing_eigenvalues, idempotents, rot2, xminus, MulTable, TwoStrand, IDEMPOTENT_NAMES,
};
use std::fmt;
use std::sync::OnceLock;

/// Trace closure of each basis element of End(V⊗²):
/// (δ², δ, 0, δφ, q⁻²⁴δ) over (jail, hourglass, H, I, X).
pub struct ClosureVector(pub [ScalarQ; 5]);

impl ClosureVector {
    pub fn pinned() -> &'static ClosureVector {
        static V: OnceLock<ClosureVector> = OnceLock::new();
        V.get_or_init(|| {
            let d = delta();
            ClosureVector([
                &d * &d,
                d.clone(),
                ScalarQ::zero(),
                &d * &phi(),
                &ScalarQ::q_pow(-24) * &d,
            ])
        })
    }
}

/// Quantum trace of a 2-strand element: linear in the closure vector.
pub fn closure(a: &TwoStrand) -> ScalarQ {
    let cv = ClosureVector::pinned();
    let mut out = ScalarQ::zero();
    for i in 0..5 {
        out += &(&a.0[i] * &cv.0[i]);
    }
    out
}

/// The closed diagram tracing both strands of `d` around the right:
/// cap∘(1⊗cap⊗1) ∘ (d⊗1⊗1) ∘ (1⊗cup⊗1)∘cup.
pub fn closure_diagram(d: &Diagram) -> Diagram {
    assert_eq!((d.source(), d.target()), (2, 2));
    let id1 = Diagram::identity(1);
    let cups = Diagram::compose(
        &id1.tensor(&Diagram::cup()).tensor(&id1),
        &Diagram::cup(),
    )
    .unwrap();
    let caps = Diagram::compose(
        &Diagram::cap(),
        &id1.tensor(&Diagram::cap()).tensor(&id1),
    )
    .unwrap();
    let mid = d.tensor(&Diagram::identity(2));
    Diagram::compose(&caps, &Diagram::compose(&mid, &cups).unwrap()).unwrap()
}

/// The mirror closure, tracing around the left.
pub fn closure_diagram_left(d: &Diagram) -> Diagram {
    assert_eq!((d.source(), d.target()), (2, 2));
    let id1 = Diagram::identity(1);
    let cups = Diagram::compose(
        &id1.tensor(&Diagram::cup()).tensor(&id1),
        &Diagram::cup(),
    )
    .unwrap();
    let caps = Diagram::compose(
        &Diagram::cap(),
        &id1.tensor(&Diagram::cap()).tensor(&id1),
    )
    .unwrap();
    let mid = Diagram::identity(2).tensor(d);
    Diagram::compose(&caps, &Diagram::compose(&mid, &cups).unwrap()).unwrap()
}

/// A 2-strand tangle as alternating horizontal/vertical twist regions
/// (rational-tangle description); the empty word is the identity tangle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistWord(pub Vec<i64>);

fn x_power(t: &MulTable, n: i64) -> TwoStrand {
    let gen = if n >= 0 { TwoStrand::x() } else { xminus() };
    let mut acc = TwoStrand::jail();
    for _ in 0..n.unsigned_abs() {
        acc = t.mul(&gen, &acc);
    }
    acc
}

/// The 2-strand element of the tangle word: horizontal regions multiply by
/// crossing powers, vertical regions act through conjugation by the
/// rotation operator.
pub fn tangle_element(w: &TwistWord) -> TwoStrand {
    let t = MulTable::frozen();
    let mut acc = TwoStrand::jail();
    for (k, &a) in w.0.iter().enumerate() {
        if k % 2 == 0 {
            acc = t.mul(&x_power(t, a), &acc);
        } else {
            acc = rot2(&t.mul(&x_power(t, a), &rot2(&acc)));
        }
    }
    acc
}

/// Framed unoriented invariant of the closure of the tangle word.
pub fn link_invariant(w: &TwistWord) -> ScalarQ {
    closure(&tangle_element(w))
}

/// Cross-module consistency: traces against quantum dimensions.
pub struct TraceReport {
    /// qdim of each summand of V⊗² (order: 0, ω₁, ω₃, ω₄, 2ω₄).
    pub qdims: [ScalarQ; 5],
    /// closure(e_λ) for each idempotent.
    pub traces: [ScalarQ; 5],
    /// Σ qdim = δ².
    pub sum_is_delta_squared: bool,
    /// closure(e_λ) = qdim(L(λ)) for every λ.
    pub traces_match_qdims: bool,
    /// X∘e_λ = c_λ·e_λ.
    pub eigenvalues: [ScalarQ; 5],
    /// Σ c_λ·qdim(L(λ)) = closure(X).
    pub eigen_trace_identity: bool,
    /// closure(X) under the pinned convention (the positive crossing closes
    /// to the q⁻²⁴δ side; its bar image closes to q²⁴δ).
    pub closure_x: ScalarQ,
    /// rot2 images of the idempotents in basis coordinates (the rotation is
    /// not an algebra map, so these are generally not idempotent).
    pub rot2_images: [TwoStrand; 5],
}

impl TraceReport {
    pub fn all_pass(&self) -> bool {
        self.sum_is_delta_squared && self.traces_match_qdims && self.eigen_trace_identity
    }
}

impl fmt::Display for TraceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trace consistency report")?;
        for k in 0..5 {
            writeln!(
                f,
                "  closure({}) = {}  [qdim match: {}]",
                IDEMPOTENT_NAMES[k],
                self.traces[k],
                self.traces[k] == self.qdims[k]
            )?;
        }
        writeln!(f, "  sum qdim = delta^2: {}", self.sum_is_delta_squared)?;
        writeln!(
            f,
            "  sum c_lambda qdim = closure(X): {}",
            self.eigen_trace_identity
        )?;
        writeln!(f, "  closure(X) = {}", self.closure_x)?;
        for k in 0..5 {
            writeln!(
                f,
                "  rot2({}) = {:?}",
                IDEMPOTENT_NAMES[k], self.rot2_images[k]
            )?;
        }
        Ok(())
    }
}

pub fn trace_consistency_report() -> TraceReport {
    let rd = root_datum();
    let [w1, _, w3, w4] = rd.fundamental_weights;
    let lambdas = [Weight::zero(), w1, w3, w4, w4.scale(2)];
    let qdims: [ScalarQ; 5] =
        std::array::from_fn(|k| rd.qdim(&lambdas[k]).expect("dominant"));
    let t = MulTable::frozen();
    let es = idempotents();
    let traces: [ScalarQ; 5] = std::array::from_fn(|k| closure(&es[k]));
    let eigenvalues = crossing_eigenvalues(t).expect("diagonalizable");
    let d = delta();
    let mut qsum = ScalarQ::zero();
    let mut esum = ScalarQ::zero();
    for k in 0..5 {
        qsum += &qdims[k];
        esum += &(&eigenvalues[k] * &qdims[k]);
    }
    let closure_x = closure(&TwoStrand::x());
    TraceReport {
        sum_is_delta_squared: qsum == &d * &d,
        traces_match_qdims: traces == qdims,
        eigen_trace_identity: esum == closure_x,
        qdims,
        traces,
        eigenvalues,
        closure_x,
        rot2_images: std::array::from_fn(|k| rot2(&es[k])),
    }
}

/// Evaluate the closure diagram of a basis element through the rewrite
/// engine (the independent path used to validate the pinned vector).
pub fn closure_by_rewriting(d: &Diagram) -> Result<ScalarQ, rewrite::RewriteError> {
    rewrite::reduce_closed(
        &LinComb::from_diagram(&closure_diagram(d)),
        DEFAULT_STEP_BUDGET,
    )
}
