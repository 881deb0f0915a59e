//! A named, enumerable suite reproducing every identity the source
//! derivation attributes to direct computer algebra, as exact checks.
//!
//! Checks are data-driven so any subset can run from the CLI; a failing
//! entry reports both sides in canonical form and never aborts the suite.

use crate::qring::{delta, phi, qint, zparam, ScalarQ};
use crate::rewrite::{posdot_coeffs, qsquare_coeffs, xelim_coeffs};
use crate::rootdata::{root_datum, Weight};
use crate::twopoint::{
    idempotents, planar_basis_change, validate_idempotents, xi2, xminus, MulTable, TwoStrand,
    IDEMPOTENT_NAMES,
};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub index: usize,
    pub name: &'static str,
    pub anchor: &'static str,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

struct Check {
    name: &'static str,
    anchor: &'static str,
    run: fn() -> (bool, String, String),
}

fn q(e: i64) -> ScalarQ {
    ScalarQ::q_pow(e)
}

fn scalar_check(lhs: ScalarQ, rhs: ScalarQ) -> (bool, String, String) {
    (lhs == rhs, lhs.to_string(), rhs.to_string())
}

fn vec_check(lhs: &TwoStrand, rhs: &TwoStrand) -> (bool, String, String) {
    (lhs == rhs, format!("{:?}", lhs), format!("{:?}", rhs))
}

fn posdot_vec() -> TwoStrand {
    TwoStrand(posdot_coeffs())
}

fn negdot_vec() -> TwoStrand {
    xi2(&posdot_vec())
}

fn square_vec() -> TwoStrand {
    let [c1, c2, c4, c5, c3] = qsquare_coeffs();
    TwoStrand([c1, c2, c4, c5, c3])
}

fn planar_sum(pairs: &[(ScalarQ, TwoStrand)]) -> TwoStrand {
    let mut out = TwoStrand::zero();
    for (c, v) in pairs {
        out = out.add(&v.scale(c));
    }
    out
}

fn check1() -> (bool, String, String) {
    let d = delta();
    let p = phi();
    let ok = d.is_polynomial()
        && d.numerator().has_nonneg_integer_coeffs()
        && p.is_polynomial()
        && p.numerator().has_nonneg_integer_coeffs();
    (ok, format!("delta = {}", d), format!("phi = {}", p))
}

fn check2() -> (bool, String, String) {
    let z = zparam();
    let lhs = &(&(&ScalarQ::one() - &delta()) * &z) + &(&phi() * &z);
    scalar_check(lhs, &q(24) - &q(-24))
}

fn check3() -> (bool, String, String) {
    let num = &(&(&q(10) + &q(-10)) * &(&q(6) + &q(-6))) * &(&q(-8) - &q(8));
    let den = &delta() - &(&q(4) + &q(-4));
    scalar_check(&num / &den, zparam())
}

fn check4() -> (bool, String, String) {
    let num = &(&(&delta() + &(&q(16) + &q(-16))) * &(&q(6) + &q(-6)))
        * &(&(&q(4) + &q(-4)) * &(&q(2) - &q(-2)));
    let den = &phi() * &(&(&q(4) + &q(-4)) - &delta());
    scalar_check(&num / &den, zparam())
}

fn check5() -> (bool, String, String) {
    let rhs = &(&delta() + &(&q(16) + &q(-16))) / &(&(&q(10) + &q(-10)) * &(&q(2) + &q(-2)));
    scalar_check(phi(), rhs)
}

fn check6() -> (bool, String, String) {
    let lhs = &(&(&qint(3) * &(&q(12) - &q(-12))) / &(&q(-4) - &q(4))) + &(&phi() - &ScalarQ::one());
    scalar_check(lhs, -&(&qint(9) / &qint(3)))
}

fn check7() -> (bool, String, String) {
    let lhs = &(&(&q(12) - &q(-12)) / &zparam()) + &(&phi() - &ScalarQ::one());
    scalar_check(lhs, -&(&qint(9) / &qint(3)))
}

fn check8() -> (bool, String, String) {
    // 2z·square = (q⁶−q⁻⁶)(posdot+negdot) + φz(jail+hourglass)
    //             + (q¹²−q⁻¹²+φz−2z)(H+I)
    let z = zparam();
    let lhs = square_vec().scale(&(&ScalarQ::from_int(2) * &z));
    let phz = &phi() * &z;
    let rhs = planar_sum(&[
        (&q(6) - &q(-6), posdot_vec().add(&negdot_vec())),
        (phz.clone(), TwoStrand::jail().add(&TwoStrand::hourglass())),
        (
            &(&(&q(12) - &q(-12)) + &phz) - &(&ScalarQ::from_int(2) * &z),
            TwoStrand::h().add(&TwoStrand::i()),
        ),
    ]);
    vec_check(&lhs, &rhs)
}

fn check9() -> (bool, String, String) {
    // composing the pentagon ansatz with a merge forces five linear
    // equations; the displayed γ's satisfy all of them
    let n4sq = &qint(4) * &qint(4);
    let g1 = -&ScalarQ::one();
    let g2 = -&(&qint(7) / &n4sq);
    let g3 = &(&qint(3) * &qint(3)) / &n4sq;
    let m93 = -&(&qint(9) / &qint(3));
    let lhs = square_vec().scale(&m93);
    let hi = TwoStrand::h().add(&TwoStrand::i());
    let rhs = planar_sum(&[
        (
            g1,
            hi.scale(&(&phi() + &m93)).add(&square_vec()),
        ),
        (
            g2,
            TwoStrand::jail()
                .add(&TwoStrand::hourglass())
                .scale(&phi())
                .add(&hi),
        ),
        (
            g3,
            TwoStrand::h()
                .scale(&q(12))
                .add(&TwoStrand::i().scale(&q(-12)))
                .add(&TwoStrand::x().scale(&phi()))
                .add(&negdot_vec().scale(&(&q(6) + &q(-6)))),
        ),
    ]);
    vec_check(&lhs, &rhs)
}

fn check10() -> (bool, String, String) {
    let d = delta();
    let a = &q(4) + &q(-4);
    let b = -&(&q(16) + &q(-16));
    (
        d != a && d != b,
        format!("delta = {}", d),
        "excluded: q^4 + q^-4 and -q^16 - q^-16".to_string(),
    )
}

fn check11() -> (bool, String, String) {
    let [p1, p2, p3, p4, p5] = xelim_coeffs();
    let r = &(&qint(3) * &qint(3)) / &(&qint(4) * &qint(4));
    let i1 = &(-&ScalarQ::one()) + &(&r * &(&p3 + &p4));
    let w1 = ScalarQ::one() / (&qint(2) * &qint(2));
    let i2 = &(-&(&qint(7) / &(&qint(4) * &qint(4)))) + &(&r * &(&p1 + &p2));
    let w2 = &(&qint(2) * &(&qint(3) * &qint(3))) / &(&(&qint(4) * &qint(4)) * &qint(6));
    let i3 = &r * &p5;
    let w3 = -&(&qint(3) / &(&qint(2) * &qint(6)));
    let ok = i1 == w1 && i2 == w2 && i3 == w3;
    (
        ok,
        format!("({}, {}, {})", i1, i2, i3),
        format!("({}, {}, {})", w1, w2, w3),
    )
}

fn check12() -> (bool, String, String) {
    // 2·square in rotation-invariant form
    let lhs = square_vec().scale(&ScalarQ::from_int(2));
    let a = {
        let num = "q^8 + q^4 + 2q^2 + 2 + 2q^-2 + q^-4 + q^-8"
            .parse::<ScalarQ>()
            .unwrap();
        let den = &(&q(2) + &q(-2)) * &(&q(2) + &q(-2));
        &num / &den
    };
    let b = &"q^2 - 1 + q^-2".parse::<ScalarQ>().unwrap()
        * &"q^2 + 3 + q^-2".parse::<ScalarQ>().unwrap();
    let cx = -&(&(&qint(2) * &(&qint(3) * &qint(6))) / &(&qint(4) * &qint(4)));
    let rhs = planar_sum(&[
        (a, TwoStrand::jail().add(&TwoStrand::hourglass())),
        (b, TwoStrand::i().add(&TwoStrand::h())),
        (cx, TwoStrand::x().add(&xminus())),
    ]);
    vec_check(&lhs, &rhs)
}

fn check13() -> (bool, String, String) {
    // 3-rung ladder through the table, in the planar basis
    let t = MulTable::frozen();
    let h = TwoStrand::h();
    let ladder = t.mul(&h, &t.mul(&h, &h));
    let got = planar_basis_change(&ladder);
    let n2 = qint(2);
    let n4sq = &qint(4) * &qint(4);
    let want: [ScalarQ; 5] = [
        -&(&(&(&n2 * &n2) * &qint(7)) / &n4sq),
        &(&(&n2 * &(&n2 * &n2)) * &(&qint(7) * &qint(10))) / &(&n4sq * &qint(5)),
        &(&(&n2 * &n2)
            * &"q^8 + q^4 + 2q^2 + 1 + 2q^-2 + q^-4 + q^-8".parse::<ScalarQ>().unwrap())
            / &n4sq,
        -&(&(&(&qint(3) - &ScalarQ::from_int(2))
            * &(&(&qint(9) + &qint(5)) - &ScalarQ::one()))
            / &(&qint(3) - &ScalarQ::one())),
        &qint(5) - &ScalarQ::from_int(2),
    ];
    let ok = got == want;
    (
        ok,
        got.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; "),
        want.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; "),
    )
}

fn check14() -> (bool, String, String) {
    let t = MulTable::frozen();
    let valid = validate_idempotents(t);
    let rd = root_datum();
    let [w1, _, w3, w4] = rd.fundamental_weights;
    let lambdas = [Weight::zero(), w1, w3, w4, w4.scale(2)];
    match valid {
        Err(e) => (false, e.to_string(), "orthogonal idempotents".into()),
        Ok(es) => {
            let mut traces = vec![];
            let mut ok = true;
            for (k, e) in es.iter().enumerate() {
                let tr = crate::evaluate::closure(e);
                let qd = rd.qdim(&lambdas[k]).unwrap();
                ok &= tr == qd;
                traces.push(format!("{}: {}", IDEMPOTENT_NAMES[k], tr));
            }
            (
                ok,
                traces.join(" ; "),
                "closure(e) = qdim(L) for all five".into(),
            )
        }
    }
}

fn check15() -> (bool, String, String) {
    // planar forms of the three crossing-bearing idempotents
    let es = idempotents();
    let pe1: [ScalarQ; 5] = planar_e1();
    let pe3: [ScalarQ; 5] = planar_e3();
    let pe5: [ScalarQ; 5] = planar_e5();
    let ok = planar_basis_change(&es[1]) == pe1
        && planar_basis_change(&es[2]) == pe3
        && planar_basis_change(&es[4]) == pe5;
    (
        ok,
        "planar_basis_change(e_w1, e_w3, e_2w4)".into(),
        "displayed planar coefficient vectors".into(),
    )
}

fn planar_e1() -> [ScalarQ; 5] {
    let n2 = qint(2);
    let n3 = qint(3);
    let n4 = qint(4);
    let n6 = qint(6);
    let n8 = qint(8);
    let n9 = qint(9);
    let n18 = qint(18);
    let n3sq = &n3 * &n3;
    let n3cu = &n3sq * &n3;
    let n4sq = &n4 * &n4;
    let sym = "q^4 - q^2 + 1 - q^-2 + q^-4".parse::<ScalarQ>().unwrap();
    [
        -&(&n4sq / &(&n3sq * &(&n6 * &n8))),
        -&(&(&(&sym * &(&n2 * &n2)) * &(&n4sq * &n9)) / &(&n3cu * &(&n8 * &n18))),
        &n4sq / &(&n2 * &(&n3cu * &n8)),
        -&(&(&n4sq * &n4) / &(&(&n2 * &n2) * &(&n3cu * &n8))),
        &(&n4sq * &n4) / &(&n2 * &(&n3sq * &(&n6 * &n8))),
    ]
}

fn planar_e3() -> [ScalarQ; 5] {
    let n2 = qint(2);
    let n3 = qint(3);
    let n4 = qint(4);
    let n6 = qint(6);
    let n7 = qint(7);
    let n8 = qint(8);
    let n12 = qint(12);
    let n3sq = &n3 * &n3;
    let n3cu = &n3sq * &n3;
    let n4sq = &n4 * &n4;
    let nine_five = &(&qint(9) + &qint(5)) - &ScalarQ::one();
    [
        &(&n2 * &n7) / &(&n3sq * &n6),
        -&(&(&n2 * &(&n4 * &n7)) / &(&n3sq * &(&n6 * &n8))),
        -&(&n4sq / &n3cu),
        -&(&(&nine_five * &(&n4 * &n6)) / &(&n2 * &(&n3cu * &n12))),
        &n4sq / &(&n2 * &(&n3sq * &n6)),
    ]
}

fn planar_e5() -> [ScalarQ; 5] {
    let n2 = qint(2);
    let n3 = qint(3);
    let n4 = qint(4);
    let n7 = qint(7);
    let n8 = qint(8);
    let n13 = qint(13);
    let n3sq = &n3 * &n3;
    let n4sq = &n4 * &n4;
    let sym = "q^4 - q^2 + 1 - q^-2 + q^-4".parse::<ScalarQ>().unwrap();
    let sym6 = "q^6 + q^4 + 1 + q^-4 + q^-6".parse::<ScalarQ>().unwrap();
    let nine_five = &(&qint(9) + &qint(5)) - &ScalarQ::one();
    [
        &(&n4sq * &n7) / &(&n2 * &(&n3sq * &n8)),
        &(&(&sym * &n2) * &(&n4sq * &n7)) / &(&n3sq * &(&n8 * &n13)),
        &(&sym6 * &n4sq) / &(&n2 * &(&n3sq * &n8)),
        &(&nine_five * &(&n4sq * &n4)) / &(&(&n2 * &n2) * &(&n3sq * &(&n7 * &n8))),
        -&(&(&n4sq * &n4) / &(&(&n2 * &n2) * &(&n3sq * &n8))),
    ]
}

fn catalog() -> [Check; 15] {
    [
        Check { name: "delta-phi-positive", anchor: "δ, φ ∈ N[q,q^-1]", run: check1 },
        Check { name: "spoon-balance", anchor: "(1-δ) z_1 + φ z_2 = q^24 - q^-24", run: check2 },
        Check { name: "z1-formula", anchor: "(q^10+q^-10)(q^6+q^-6)(q^-8-q^8)/(δ-q^4-q^-4)", run: check3 },
        Check { name: "z2-formula", anchor: "(δ+q^16+q^-16)(q^6+q^-6)(q^4+q^-4)(q^2-q^-2)/(φ(q^4+q^-4-δ))", run: check4 },
        Check { name: "waxing-condition", anchor: "φ = (δ+q^16+q^-16)/((q^10+q^-10)(q^2+q^-2))", run: check5 },
        Check { name: "triangle-coefficient", anchor: "[3](q^12-q^-12)/(q^-4-q^4) + φ - 1 = -[9]/[3]", run: check6 },
        Check { name: "bagel-identity", anchor: "(q^12-q^-12)/z + φ - 1 = -[9]/[3]", run: check7 },
        Check { name: "square-from-dotted", anchor: "2 z_2 · square from the dotted-crossing sum", run: check8 },
        Check { name: "pentagon-gamma-solve", anchor: "γ = (-1, -[7]/[4]^2, [3]^2/[4]^2) solves the merge equations", run: check9 },
        Check { name: "nondegeneracy-guards", anchor: "δ ∉ {q^4+q^-4, -q^16-q^-16}", run: check10 },
        Check { name: "planar-pentagon-coefficients", anchor: "-1+[3]^2/[4]^2(p3+p4) = 1/[2]^2 and companions", run: check11 },
        Check { name: "symmetric-square-form", anchor: "2·square with q↦q^-1 invariant coefficients", run: check12 },
        Check { name: "ladder-identity", anchor: "3-rung ladder over (jail, hourglass, H, I, square)", run: check13 },
        Check { name: "idempotent-suite", anchor: "orthogonal idempotents summing to 1 with traces qdim", run: check14 },
        Check { name: "planar-idempotent-forms", anchor: "crossing-free idempotent expansions", run: check15 },
    ]
}

pub fn check_count() -> usize {
    15
}

pub fn run_one(index: usize) -> Option<CheckResult> {
    let cat = catalog();
    if index == 0 || index > cat.len() {
        return None;
    }
    let c = &cat[index - 1];
    let (pass, lhs, rhs) = (c.run)();
    Some(CheckResult {
        index,
        name: c.name,
        anchor: c.anchor,
        pass,
        lhs,
        rhs,
    })
}

/// Run the fixed catalog (1-based indices); `None` selects everything.
pub fn run_selected(only: Option<&[usize]>) -> Vec<CheckResult> {
    match only {
        None => (1..=check_count()).filter_map(run_one).collect(),
        Some(idx) => idx.iter().filter_map(|&i| run_one(i)).collect(),
    }
}

pub fn run_all() -> Vec<CheckResult> {
    run_selected(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fifteen_pass() {
        let rs = run_all();
        assert_eq!(rs.len(), 15);
        for r in &rs {
            assert!(r.pass, "check {} ({}) failed:\n  lhs: {}\n  rhs: {}", r.index, r.name, r.lhs, r.rhs);
        }
    }

    #[test]
    fn determinism() {
        let a = run_all();
        let b = run_all();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.pass, y.pass);
            assert_eq!(x.lhs, y.lhs);
            assert_eq!(x.rhs, y.rhs);
        }
    }

    #[test]
    fn subset_selection() {
        let rs = run_selected(Some(&[2, 14]));
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].index, 2);
        assert_eq!(rs[1].index, 14);
        assert!(run_one(0).is_none());
        assert!(run_one(16).is_none());
    }

    #[test]
    fn guard_rejects_excluded_values() {
        // the non-degeneracy guard must fail when δ is replaced by an
        // excluded value
        let bad = &ScalarQ::q_pow(4) + &ScalarQ::q_pow(-4);
        assert_eq!(bad, &ScalarQ::q_pow(4) + &ScalarQ::q_pow(-4));
        // i.e. structural equality on the excluded value holds, so the
        // guard's inequality test would report failure for it
        assert!(!(bad != &ScalarQ::q_pow(4) + &ScalarQ::q_pow(-4)));
    }

    #[test]
    fn classical_shadow_of_traces() {
        // entry 14's traces specialize to (1, 52, 273, 26, 324) at q = 1
        let r = crate::evaluate::trace_consistency_report();
        let dims: Vec<String> = r
            .traces
            .iter()
            .map(|t| t.specialize_int(1).unwrap().to_string())
            .collect();
        assert_eq!(dims, vec!["1", "52", "273", "26", "324"]);
    }
}
