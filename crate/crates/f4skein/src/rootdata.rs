//! The F4 root system and the quantum Weyl dimension formula.
//!
//! Weights are stored in simple-root coordinates (the F4 weight lattice
//! equals its root lattice, so these are always integer 4-vectors).  The
//! symmetrized form uses (α,α)=2 for short roots, giving d = (2,2,1,1).

use crate::qring::{LaurentPoly, ScalarQ};
use std::collections::BTreeSet;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("weight {0:?} is not dominant: ({0:?}, α{1}∨) < 0")]
    NotDominant(Weight, usize),
}

/// A weight in simple-root coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub [i64; 4]);

impl Weight {
    pub fn zero() -> Self {
        Weight([0; 4])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = self.0[i] + other.0[i];
        }
        Weight(c)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight([self.0[0] * k, self.0[1] * k, self.0[2] * k, self.0[3] * k])
    }
}

/// Cartan matrix, symmetrized form, positive roots, ρ and fundamental weights.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan: [[i64; 4]; 4],
    pub d: [i64; 4],
    pub simple_roots: [Weight; 4],
    pub positive_roots: Vec<Weight>,
    pub rho: Weight,
    pub fundamental_weights: [Weight; 4],
}

// Bourbaki orientation: rows satisfy aᵢⱼ = 2(αᵢ,αⱼ)/(αᵢ,αᵢ) with
// (α₁,α₁)=(α₂,α₂)=4 and (α₃,α₃)=(α₄,α₄)=2.
const CARTAN: [[i64; 4]; 4] = [
    [2, -1, 0, 0],
    [-1, 2, -1, 0],
    [0, -2, 2, -1],
    [0, 0, -1, 2],
];
const D: [i64; 4] = [2, 2, 1, 1];

impl RootDatum {
    /// Symmetrized inner product (x, y) = Σ xᵢ dᵢ aᵢⱼ yⱼ.
    pub fn inner(&self, x: &Weight, y: &Weight) -> i64 {
        let mut s = 0;
        for i in 0..4 {
            for j in 0..4 {
                s += x.0[i] * self.d[i] * self.cartan[i][j] * y.0[j];
            }
        }
        s
    }

    /// Pairing against the coroot: ⟨x, αᵢ∨⟩ = 2(x,αᵢ)/(αᵢ,αᵢ).
    pub fn coroot_pairing(&self, x: &Weight, i: usize) -> i64 {
        let ai = self.simple_roots[i];
        let n = self.inner(x, &ai);
        debug_assert_eq!(n % self.d[i], 0);
        n / self.d[i]
    }

    pub fn is_dominant(&self, x: &Weight) -> bool {
        (0..4).all(|i| self.coroot_pairing(x, i) >= 0)
    }

    /// λ given in the fundamental-weight basis.
    pub fn weight_from_fundamental(&self, coeffs: [i64; 4]) -> Weight {
        let mut w = Weight::zero();
        for i in 0..4 {
            w = w.add(&self.fundamental_weights[i].scale(coeffs[i]));
        }
        w
    }

    /// Quantum Weyl dimension formula ∏_{ν∈Φ⁺} [(λ+ρ,ν)]/[(ρ,ν)].
    pub fn qdim(&self, lambda: &Weight) -> Result<ScalarQ, RootError> {
        for i in 0..4 {
            if self.coroot_pairing(lambda, i) < 0 {
                return Err(RootError::NotDominant(*lambda, i + 1));
            }
        }
        let shifted = lambda.add(&self.rho);
        let mut num = LaurentPoly::one();
        let mut den = LaurentPoly::one();
        for nu in &self.positive_roots {
            num = &num * &qint_poly_checked(self.inner(&shifted, nu));
            den = &den * &qint_poly_checked(self.inner(&self.rho, nu));
        }
        Ok(ScalarQ::new(num, den))
    }

    /// Exact check of qdim(0)+qdim(ω₁)+qdim(ω₃)+qdim(ω₄)+qdim(2ω₄) = δ².
    pub fn tensor_square_dim_check(&self) -> bool {
        let [w1, _, w3, w4] = self.fundamental_weights;
        let lambdas = [Weight::zero(), w1, w3, w4, w4.scale(2)];
        let mut sum = ScalarQ::zero();
        for l in &lambdas {
            sum += &self.qdim(l).expect("dominant");
        }
        let d = crate::qring::delta();
        sum == &d * &d
    }
}

fn qint_poly_checked(n: i64) -> LaurentPoly {
    assert!(n > 0, "nonpositive pairing in Weyl formula");
    let mut p = LaurentPoly::zero();
    let mut e = n - 1;
    while e >= 1 - n {
        p = &p + &LaurentPoly::q_pow(e);
        e -= 2;
    }
    p
}

/// Generate the datum: positive roots by root-string closure from the simple
/// roots, ρ as the half-sum, fundamental weights by solving (ωᵢ,αⱼ∨)=δᵢⱼ.
pub fn build_root_datum() -> RootDatum {
    let simple = [
        Weight([1, 0, 0, 0]),
        Weight([0, 1, 0, 0]),
        Weight([0, 0, 1, 0]),
        Weight([0, 0, 0, 1]),
    ];
    let proto = RootDatum {
        cartan: CARTAN,
        d: D,
        simple_roots: simple,
        positive_roots: vec![],
        rho: Weight::zero(),
        fundamental_weights: [Weight::zero(); 4],
    };

    let mut roots: BTreeSet<Weight> = simple.iter().copied().collect();
    loop {
        let mut grew = false;
        for r in roots.clone() {
            for (i, ai) in simple.iter().enumerate() {
                if r == *ai {
                    continue;
                }
                // p = longest string r, r-αᵢ, r-2αᵢ, … inside the root set
                let mut p = 0;
                let mut cur = r.add(&ai.scale(-1));
                while roots.contains(&cur) {
                    p += 1;
                    cur = cur.add(&ai.scale(-1));
                }
                if p - proto.coroot_pairing(&r, i) > 0 {
                    let up = r.add(ai);
                    if roots.insert(up) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let positive: Vec<Weight> = roots.into_iter().collect();

    let mut two_rho = Weight::zero();
    for r in &positive {
        two_rho = two_rho.add(r);
    }
    assert!(two_rho.0.iter().all(|c| c % 2 == 0));
    let rho = Weight([
        two_rho.0[0] / 2,
        two_rho.0[1] / 2,
        two_rho.0[2] / 2,
        two_rho.0[3] / 2,
    ]);

    // Solve B·w = dᵢ·eᵢ over the rationals with exact Gaussian elimination;
    // entries are small so i128 fractions suffice.
    let mut fundamental = [Weight::zero(); 4];
    for i in 0..4 {
        let mut a = [[0i128; 5]; 4];
        for r in 0..4 {
            for c in 0..4 {
                a[r][c] = (D[r] * CARTAN[r][c]) as i128;
            }
            a[r][4] = if r == i { D[i] as i128 } else { 0 };
        }
        let sol = solve4(a);
        fundamental[i] = Weight(sol);
    }

    let datum = RootDatum {
        positive_roots: positive,
        rho,
        fundamental_weights: fundamental,
        ..proto
    };
    debug_assert_eq!(datum.positive_roots.len(), 24);
    datum
}

fn solve4(mut a: [[i128; 5]; 4]) -> [i64; 4] {
    // fraction-free Gaussian elimination; asserts an integral solution
    for col in 0..4 {
        let piv = (col..4).find(|&r| a[r][col] != 0).expect("singular");
        a.swap(col, piv);
        let p = a[col][col];
        for r in 0..4 {
            if r == col {
                continue;
            }
            let f = a[r][col];
            for c in 0..5 {
                a[r][c] = a[r][c] * p - a[col][c] * f;
            }
        }
    }
    let mut out = [0i64; 4];
    for r in 0..4 {
        let (num, den) = (a[r][4], a[r][r]);
        assert_eq!(num % den, 0, "non-integral fundamental weight");
        out[r] = (num / den) as i64;
    }
    out
}

static DATUM: OnceLock<RootDatum> = OnceLock::new();

/// Shared immutable datum.
pub fn root_datum() -> &'static RootDatum {
    DATUM.get_or_init(build_root_datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::{delta, ScalarQ};
    use num::{BigRational, FromPrimitive};

    #[test]
    fn positive_root_count() {
        let rd = root_datum();
        // dim F4 = 52 = rank + 2·|Φ⁺|
        assert_eq!(rd.positive_roots.len(), 24);
        assert_eq!(4 + 2 * rd.positive_roots.len(), 52);
    }

    #[test]
    fn cartan_and_lengths_consistent() {
        let rd = root_datum();
        for i in 0..4 {
            let ai = rd.simple_roots[i];
            let norm = rd.inner(&ai, &ai);
            assert_eq!(norm, if i < 2 { 4 } else { 2 });
            for j in 0..4 {
                let aj = rd.simple_roots[j];
                assert_eq!(2 * rd.inner(&ai, &aj) / norm, rd.cartan[i][j]);
            }
        }
        // symmetry of the form on a few pairs
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    rd.inner(&rd.simple_roots[i], &rd.simple_roots[j]),
                    rd.inner(&rd.simple_roots[j], &rd.simple_roots[i])
                );
            }
        }
    }

    #[test]
    fn rho_pairing() {
        let rd = root_datum();
        let two_rho = rd.rho.scale(2);
        for i in 0..4 {
            let ai = rd.simple_roots[i];
            assert_eq!(rd.inner(&two_rho, &ai), rd.inner(&ai, &ai));
        }
    }

    #[test]
    fn cider_values() {
        let rd = root_datum();
        let w4 = rd.fundamental_weights[3];
        assert_eq!(rd.inner(&w4, &w4), 2);
        assert_eq!(rd.inner(&w4, &rd.rho.scale(2)), 22);
        assert_eq!(rd.inner(&w4, &w4) + rd.inner(&w4, &rd.rho.scale(2)), 24);
    }

    /// Independent construction of the F4 roots in orthonormal coordinates:
    /// ±eᵢ, ±eᵢ±eⱼ, (±e₁±e₂±e₃±e₄)/2, with the form 2·(dot product).
    /// Doubled coordinates keep everything integral.
    fn oracle_roots() -> Vec<[i64; 4]> {
        let mut out = vec![];
        for i in 0..4 {
            let mut v = [0i64; 4];
            v[i] = 2;
            out.push(v); // e_i (doubled)
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                for (si, sj) in [(1, 1), (1, -1)] {
                    let mut v = [0i64; 4];
                    v[i] = 2 * si;
                    v[j] = 2 * sj;
                    out.push(v); // e_i ± e_j
                }
            }
        }
        for s2 in [1i64, -1] {
            for s3 in [1i64, -1] {
                for s4 in [1i64, -1] {
                    out.push([1, s2, s3, s4]); // (e1 ± e2 ± e3 ± e4)/2
                }
            }
        }
        out
    }

    fn oracle_dot(x: &[i64; 4], y: &[i64; 4]) -> BigRational {
        // (x, y) = 2 · (x/2)·(y/2) = x·y / 2 in doubled coordinates
        let s: i64 = (0..4).map(|i| x[i] * y[i]).sum();
        BigRational::from_i64(s).unwrap() / BigRational::from_i64(2).unwrap()
    }

    #[test]
    fn closure_roots_match_oracle_table() {
        // simple roots in doubled orthonormal coordinates
        let a1 = [0i64, 2, -2, 0];
        let a2 = [0, 0, 2, -2];
        let a3 = [0, 0, 0, 2];
        let a4 = [1, -1, -1, -1];
        let simples = [a1, a2, a3, a4];
        let rd = root_datum();
        let mut images: Vec<[i64; 4]> = vec![];
        for w in &rd.positive_roots {
            let mut v = [0i64; 4];
            for k in 0..4 {
                for t in 0..4 {
                    v[t] += w.0[k] * simples[k][t];
                }
            }
            images.push(v);
        }
        images.sort();
        let mut oracle = oracle_roots();
        oracle.sort();
        assert_eq!(images, oracle);
        // inner products agree with the oracle form on every pair
        for (w, v) in rd.positive_roots.iter().zip(rd.positive_roots.iter().rev()) {
            let mut x = [0i64; 4];
            let mut y = [0i64; 4];
            for k in 0..4 {
                for t in 0..4 {
                    x[t] += w.0[k] * simples[k][t];
                    y[t] += v.0[k] * simples[k][t];
                }
            }
            assert_eq!(
                BigRational::from_i64(rd.inner(w, v)).unwrap(),
                oracle_dot(&x, &y)
            );
        }
    }

    /// Classical Weyl dimension via the oracle root table (independent of
    /// the q-machinery): dim = ∏ (λ+ρ,ν)/(ρ,ν) over positive roots.
    fn classical_dim_oracle(lambda_fund: [i64; 4]) -> BigRational {
        let rd = root_datum();
        let lam = rd.weight_from_fundamental(lambda_fund);
        let sh = lam.add(&rd.rho);
        let mut out = BigRational::from_i64(1).unwrap();
        for nu in &rd.positive_roots {
            out *= BigRational::from_i64(rd.inner(&sh, nu)).unwrap()
                / BigRational::from_i64(rd.inner(&rd.rho, nu)).unwrap();
        }
        out
    }

    #[test]
    fn qdim_values() {
        let rd = root_datum();
        assert_eq!(rd.qdim(&Weight::zero()).unwrap(), ScalarQ::one());
        let w4 = rd.fundamental_weights[3];
        assert_eq!(rd.qdim(&w4).unwrap(), delta());

        let expected_dims: [(i64, [i64; 4]); 5] = [
            (1, [0, 0, 0, 0]),
            (52, [1, 0, 0, 0]),
            (273, [0, 0, 1, 0]),
            (26, [0, 0, 0, 1]),
            (324, [0, 0, 0, 2]),
        ];
        for (dim, fw) in expected_dims {
            let lam = rd.weight_from_fundamental(fw);
            let qd = rd.qdim(&lam).unwrap();
            assert!(qd.is_polynomial());
            assert!(qd.numerator().has_nonneg_integer_coeffs());
            assert_eq!(qd.bar(), qd, "qdim bar-invariant for {:?}", fw);
            assert_eq!(
                qd.specialize_int(1).unwrap(),
                BigRational::from_i64(dim).unwrap()
            );
            assert_eq!(classical_dim_oracle(fw), BigRational::from_i64(dim).unwrap());
        }
    }

    #[test]
    fn not_dominant_rejected() {
        let rd = root_datum();
        // -ω₄ is not dominant
        let bad = rd.fundamental_weights[3].scale(-1);
        assert!(matches!(rd.qdim(&bad), Err(RootError::NotDominant(..))));
    }

    #[test]
    fn tensor_square_check() {
        let rd = root_datum();
        assert!(rd.tensor_square_dim_check());
        // classical shadow: 1+52+273+26+324 = 676 = 26²
        let total: BigRational = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 2]]
            .into_iter()
            .map(classical_dim_oracle)
            .sum();
        assert_eq!(total, BigRational::from_i64(676).unwrap());
        // swapping 2ω₄ for ω₂ must break the identity
        let rd2 = rd;
        let [w1, w2, w3, w4] = rd2.fundamental_weights;
        let wrong = [Weight::zero(), w1, w3, w4, w2];
        let mut sum = ScalarQ::zero();
        for l in &wrong {
            sum += &rd2.qdim(l).unwrap();
        }
        assert_ne!(sum, &delta() * &delta());
    }
}
