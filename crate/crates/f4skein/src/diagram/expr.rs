//! Syntax trees over the generating morphisms.

use super::{Diagram, DiagramError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Id(usize),
    Merge,
    Split,
    Cup,
    Cap,
    XPos,
    XNeg,
}

impl Generator {
    pub fn signature(self) -> (usize, usize) {
        match self {
            Generator::Id(k) => (k, k),
            Generator::Merge => (2, 1),
            Generator::Split => (1, 2),
            Generator::Cup => (0, 2),
            Generator::Cap => (2, 0),
            Generator::XPos | Generator::XNeg => (2, 2),
        }
    }

    pub fn diagram(self) -> Diagram {
        match self {
            Generator::Id(k) => Diagram::identity(k),
            Generator::Merge => Diagram::merge(),
            Generator::Split => Diagram::split(),
            Generator::Cup => Diagram::cup(),
            Generator::Cap => Diagram::cap(),
            Generator::XPos => Diagram::xpos(),
            Generator::XNeg => Diagram::xneg(),
        }
    }
}

/// A word in the monoidal category: generators under vertical composition
/// (`Compose(top, bottom)` applies `bottom` first) and horizontal tensor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MorphismExpr {
    Gen(Generator),
    Compose(Box<MorphismExpr>, Box<MorphismExpr>),
    Tensor(Box<MorphismExpr>, Box<MorphismExpr>),
}

impl MorphismExpr {
    pub fn gen(g: Generator) -> Self {
        MorphismExpr::Gen(g)
    }

    pub fn compose(top: MorphismExpr, bottom: MorphismExpr) -> Self {
        MorphismExpr::Compose(Box::new(top), Box::new(bottom))
    }

    pub fn tensor(left: MorphismExpr, right: MorphismExpr) -> Self {
        MorphismExpr::Tensor(Box::new(left), Box::new(right))
    }

    /// (source, target) arities; errors when a composition does not chain.
    pub fn signature(&self) -> Result<(usize, usize), DiagramError> {
        match self {
            MorphismExpr::Gen(g) => Ok(g.signature()),
            MorphismExpr::Compose(top, bottom) => {
                let (bm, bn) = bottom.signature()?;
                let (tm, tn) = top.signature()?;
                if bn != tm {
                    return Err(DiagramError::ArityMismatch { bottom: bn, top: tm });
                }
                Ok((bm, tn))
            }
            MorphismExpr::Tensor(l, r) => {
                let (lm, ln) = l.signature()?;
                let (rm, rn) = r.signature()?;
                Ok((lm + rm, ln + rn))
            }
        }
    }

    pub fn diagram(&self) -> Result<Diagram, DiagramError> {
        match self {
            MorphismExpr::Gen(g) => Ok(g.diagram()),
            MorphismExpr::Compose(top, bottom) => {
                Diagram::compose(&top.diagram()?, &bottom.diagram()?)
            }
            MorphismExpr::Tensor(l, r) => Ok(l.diagram()?.tensor(&r.diagram()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let e = MorphismExpr::compose(
            MorphismExpr::gen(Generator::Cap),
            MorphismExpr::gen(Generator::Cup),
        );
        assert_eq!(e.signature().unwrap(), (0, 0));
        let bad = MorphismExpr::compose(
            MorphismExpr::gen(Generator::Merge),
            MorphismExpr::gen(Generator::Merge),
        );
        assert!(bad.signature().is_err());
        let t = MorphismExpr::tensor(
            MorphismExpr::gen(Generator::Id(1)),
            MorphismExpr::gen(Generator::Cup),
        );
        assert_eq!(t.signature().unwrap(), (1, 3));
    }
}
