//! Formal Q(q)-linear combinations of canonical diagram keys.

use super::{Diagram, DiagramError, DiagramKey};
use crate::qring::ScalarQ;
use std::collections::BTreeMap;
use std::fmt;

/// Finite linear combination of diagrams sharing one (source, target)
/// signature; no zero coefficient is stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb {
    m: usize,
    n: usize,
    terms: BTreeMap<DiagramKey, ScalarQ>,
}

impl LinComb {
    pub fn zero(m: usize, n: usize) -> Self {
        LinComb {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        Self::from_scaled_diagram(ScalarQ::one(), d)
    }

    pub fn from_scaled_diagram(c: ScalarQ, d: &Diagram) -> Self {
        let mut lc = LinComb::zero(d.source(), d.target());
        lc.add_term(c, d.canonical_key());
        lc
    }

    pub fn identity(k: usize) -> Self {
        Self::from_diagram(&Diagram::identity(k))
    }

    pub fn source(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiagramKey, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &DiagramKey) -> ScalarQ {
        self.terms.get(key).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn add_term(&mut self, c: ScalarQ, key: DiagramKey) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(ScalarQ::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scaled(&self, c: &ScalarQ) -> LinComb {
        let mut out = LinComb::zero(self.m, self.n);
        for (k, v) in &self.terms {
            out.add_term(c * v, k.clone());
        }
        out
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        assert_eq!((self.m, self.n), (other.m, other.n), "signature mismatch");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(v.clone(), k.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        self.add(&other.scaled(&-&ScalarQ::one()))
    }

    /// Bilinear composition: `f.compose(g)` puts `g` below `f`.
    pub fn compose(f: &LinComb, g: &LinComb) -> Result<LinComb, DiagramError> {
        if g.n != f.m {
            return Err(DiagramError::ArityMismatch { bottom: g.n, top: f.m });
        }
        let mut out = LinComb::zero(g.m, f.n);
        for (kf, cf) in &f.terms {
            let df = Diagram::from_key(kf);
            for (kg, cg) in &g.terms {
                let dg = Diagram::from_key(kg);
                let d = Diagram::compose(&df, &dg)?;
                out.add_term(cf * cg, d.canonical_key());
            }
        }
        Ok(out)
    }

    pub fn tensor(f: &LinComb, g: &LinComb) -> LinComb {
        let mut out = LinComb::zero(f.m + g.m, f.n + g.n);
        for (kf, cf) in &f.terms {
            let df = Diagram::from_key(kf);
            for (kg, cg) in &g.terms {
                let dg = Diagram::from_key(kg);
                out.add_term(cf * cg, df.tensor(&dg).canonical_key());
            }
        }
        out
    }

    /// Linear extension of the pivotal rotation.
    pub fn rot(&self) -> Result<LinComb, DiagramError> {
        let mut out = LinComb::zero(self.m, self.n);
        for (k, c) in &self.terms {
            let d = Diagram::from_key(k).rot()?;
            out.add_term(c.clone(), d.canonical_key());
        }
        Ok(out)
    }

    /// The bar functor Ξ: flips every crossing, bars every coefficient.
    pub fn xi(&self) -> LinComb {
        let mut out = LinComb::zero(self.m, self.n);
        for (k, c) in &self.terms {
            out.add_term(c.bar(), Diagram::from_key(k).xi().canonical_key());
        }
        out
    }

    /// For signature 0→0 with every term a bare scalar (empty diagram, any
    /// number of circles already removed), the scalar value.
    pub fn scalar_part(&self) -> Option<ScalarQ> {
        if self.m != 0 || self.n != 0 {
            return None;
        }
        let empty_key = Diagram::empty().canonical_key();
        let mut acc = ScalarQ::zero();
        for (k, c) in &self.terms {
            if *k != empty_key {
                return None;
            }
            acc += c;
        }
        Some(acc)
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 ({}->{})", self.m, self.n);
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "({}) . {}", c, Diagram::from_key(k).describe())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{hourglass, jail};

    #[test]
    fn identity_is_unit_for_compose() {
        let id2 = LinComb::identity(2);
        let h = LinComb::from_diagram(&hourglass());
        assert_eq!(LinComb::compose(&id2, &h).unwrap(), h);
        assert_eq!(LinComb::compose(&h, &id2).unwrap(), h);
    }

    #[test]
    fn cancellation() {
        let j = LinComb::from_diagram(&jail());
        assert!(j.sub(&j).is_empty());
    }

    #[test]
    fn arity_mismatch_detected() {
        let cup = LinComb::from_diagram(&Diagram::cup());
        assert!(LinComb::compose(&cup, &cup).is_err());
    }
}
