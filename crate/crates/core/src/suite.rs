//! The acceptance criteria as runnable checks, shared by the `check`
//! command and the acceptance test target.

use crate::covariant::{parse_expr, transvectant};
use crate::dims::{self, P_1_6, P_2_1_4, P_2_3};
use crate::exact::{int, rat, sym_action, IntMatrix2, MPoly, QPoly, Rational, SymVector, NVARS};
use crate::fseries2::{FSeries2, Idx};
use crate::hecke2::{self, charpoly_hecke, eigenvalue_tp, eigenvalue_tp2, Eigen, LiftKind};
use crate::qform1::{newforms, Eigendata, NewformData, QSeries1};
use crate::siegel::{
    cached_base, construct_named, mu, restrict_and_decompose, vanishing_order_diagonal, SiegelForm, NAMED_FORMS,
};
use crate::theta2::BaseForm;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Display;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Outcome of one criterion: every sub-check with its verdict.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub stretch: bool,
    pub checks: Vec<(String, bool)>,
}

impl CriterionResult {
    fn new(id: u32, title: &'static str) -> Self {
        CriterionResult { id, title, stretch: id == 10, checks: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.1)
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str())
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    /// Records a fallible check; an error counts as a failure.
    fn check_with<T, E: Display>(&mut self, name: &str, r: Result<T, E>, ok: impl FnOnce(&T) -> bool) -> Option<T> {
        match r {
            Ok(v) => {
                let good = ok(&v);
                self.check(name, good);
                Some(v)
            }
            Err(e) => {
                self.check(format!("{name}: {e}"), false);
                None
            }
        }
    }

    /// `criterion 3 [PASS] title (n/n checks)`.
    pub fn line(&self) -> String {
        let n = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.1).count();
        let tag = if self.pass() { "PASS" } else { "FAIL" };
        let stretch = if self.stretch { " (stretch)" } else { "" };
        format!("criterion {}{stretch} [{tag}] {} ({ok}/{n} checks)", self.id, self.title)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self.checks.iter().map(|(n, ok)| json!({"check": n, "ok": ok})).collect();
        json!({"id": self.id, "title": self.title, "stretch": self.stretch, "pass": self.pass(), "checks": checks})
    }
}

/// Reference coefficient vectors of `chi12_2` (normalized by `a([1,1,1])[3] = 2`).
pub const CHI12_2_VECTORS: [((i64, i64, i64), [i64; 13]); 7] = [
    ((1, 1, 1), [0, 0, 0, 2, 9, 12, 0, -12, -9, -2, 0, 0, 0]),
    ((1, 3, 3), [0, 0, 0, -2, -27, -156, -504, -996, -1233, -934, -396, -72, 0]),
    ((3, 3, 3), [0, 216, 1188, 258, -7749, -12708, 0, 12708, 7749, -258, -1188, -216, 0]),
    ((5, 5, 5), [0, 0, 0, -106920, -481140, -641520, 0, 641520, 481140, 106920, 0, 0, 0]),
    ((1, 5, 7), [0, 0, 0, 2, 45, 444, 2520, 9060, 21375, 33046, 32220, 17928, 4320]),
    ((7, 7, 7), [0, -8208, -45144, -542204, -2101338, -2711496, 0, 2711496, 2101338, 542204, 45144, 8208, 0]),
    ((3, 9, 7), [0, -72, -1188, -8854, -39339, -115764, -236880, -343884, -354141, -253514, -120132, -33912, -4320]),
];

pub const CHI12_2_EIGENVALUES: [(i64, i64); 3] = [(3, -600), (5, -53460), (7, -369200)];
pub const CHI12_2_LAMBDA9: i64 = -1090791;
pub const CHI12_2_STRETCH_EIGENVALUES: [(i64, i64); 3] = [(11, 4084344), (13, -2845700), (17, 131681700)];

/// `q`-expansions through `q^5` of the rational newforms of level 2.
pub const F8: [i64; 6] = [0, 1, -8, 12, 64, -210];
pub const F14_PLUS: [i64; 6] = [0, 1, -64, -1836, 4096, 3990];
pub const F14_MINUS: [i64; 6] = [0, 1, 64, 1236, 4096, -57450];
pub const F26_T3_ROOT: i64 = 97956;

/// `a([1,1,1])` entries 3..=11 of `chi24_2_1` and 7..=11 of `chi24_2_2`.
pub const CHI24_2_1_ENTRIES: [i64; 9] = [104, 1092, 3640, 0, -27678, -58905, -2916, 148470, 190778];
pub const CHI24_2_2_ENTRIES: [i64; 5] = [2, 17, 60, 110, 98];

/// `chi36_3`: entries 7 and 8 at `[1,1,1]` and `[5,5,5]` in the classical
/// indexing (`[2,2,2]` and `[10,10,10]` here) and `lambda_5`.
pub const CHI36_3_ENTRIES: [((i64, i64, i64), [(i64, i64); 2]); 2] = [
    ((2, 2, 2), [(32, 6089428125), (464, 6089428125)]),
    ((10, 10, 10), [(-8687121398144, 81192375), (-125963260273088, 81192375)]),
];
pub const CHI36_3_LAMBDA5: i64 = -20360440776900;

/// Restriction coefficients of the two weight `(18,7)` forms at `l = 5`.
pub const CHI18_7_RESTRICTION_RATIO: (i64, i64) = (216, 48);

/// Sub-checks that cannot pass with the data as given: the `T_{p^2}`
/// identities for `p = 1 mod 3`, the `(18,7)` restriction ratio, and the
/// discriminant combination with its original `C_{10,0}` coefficient.
pub const KNOWN_UNATTAINABLE: [&str; 3] = ["with p = 1 mod 3 (not computable)", "in ratio 216:48", "discriminant with -13860 C_10,0"];

pub fn is_known_unattainable(check: &str) -> bool {
    KNOWN_UNATTAINABLE.iter().any(|k| check.contains(k))
}

pub fn run_criterion(id: u32, seed: u64) -> CriterionResult {
    match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(seed),
        10 => criterion_10(),
        _ => {
            let mut r = CriterionResult::new(id, "unknown criterion");
            r.check("exists", false);
            r
        }
    }
}

pub fn core_suite(seed: u64) -> Vec<CriterionResult> {
    (1..=9).map(|i| run_criterion(i, seed)).collect()
}

fn vector(xs: &[i64]) -> SymVector {
    SymVector::from_ints(xs)
}

fn criterion_1() -> CriterionResult {
    let mut r = CriterionResult::new(1, "chi12_2 coefficient vectors at P=10");
    let Some(f) = r.check_with("construct chi12_2", construct_named("chi12_2", 10), |_| true) else { return r };
    for (n, v) in CHI12_2_VECTORS {
        let got = f.series.coeff_checked(n.0, n.1, n.2);
        r.check_with(&format!("a({n:?})"), got, |g| *g == vector(&v));
    }
    r
}

fn criterion_2() -> CriterionResult {
    let mut r = CriterionResult::new(2, "chi12_2 Hecke eigenvalues for p <= 7 and T9");
    let Some(f) = r.check_with("construct chi12_2", construct_named("chi12_2", 10), |_| true) else { return r };
    for (p, l) in CHI12_2_EIGENVALUES {
        r.check_with(&format!("lambda_{p} = {l}"), eigenvalue_tp(&f, p), |e| e.eigenvalue() == Some(&int(l)));
    }
    r.check_with(&format!("lambda_9 = {CHI12_2_LAMBDA9}"), eigenvalue_tp2(&f, 3), |e| {
        e.eigenvalue() == Some(&int(CHI12_2_LAMBDA9))
    });
    r
}

fn rational_newforms(k: u32, prec: i64) -> Result<Vec<NewformData>, crate::qform1::QFormError> {
    Ok(newforms(k, 2, prec)?.into_iter().filter(|n| n.qexp().is_some()).collect())
}

fn newform_with_sign(nfs: &[NewformData], sign: i8) -> Option<&QSeries1> {
    nfs.iter().find(|n| n.fricke_sign == Some(sign)).and_then(NewformData::qexp)
}

fn lift_lines(r: &mut CriterionResult, label: &str, rep: Result<hecke2::LiftReport, hecke2::HeckeError>) {
    match rep {
        Ok(rep) => {
            for l in &rep.lines {
                r.check(format!("{label} {}: {} = {}", l.operator, l.computed, l.predicted), l.computed == l.predicted);
            }
            for s in &rep.skipped {
                r.check(format!("{label} {s} (not computable)"), false);
            }
        }
        Err(e) => r.check(format!("{label}: {e}"), false),
    }
}

fn criterion_3() -> CriterionResult {
    let mut r = CriterionResult::new(3, "Saito-Kurokawa and Yoshida lift identities");
    let Some(f8) = r.check_with("newforms(8, 2)", rational_newforms(8, 8), |v| v.len() == 1) else { return r };
    let Some(f14) = r.check_with("newforms(14, 2)", rational_newforms(14, 8), |v| v.len() == 2) else { return r };
    let Some(chi5) = r.check_with("chi5 at P=25", cached_base(BaseForm::Chi5, 25), |_| true) else { return r };
    let Some(chi12) = r.check_with("chi12_2 at P=25", construct_named("chi12_2", 25), |_| true) else { return r };
    let (Some(fp), Some(fm)) = (newform_with_sign(&f14, 1), newform_with_sign(&f14, -1)) else {
        r.check("weight 14 newforms with both signs", false);
        return r;
    };
    let g = f8[0].qexp().expect("rational");
    for p in [3, 5, 7] {
        lift_lines(&mut r, &format!("SK chi5 p={p}"), hecke2::lift_check(LiftKind::SaitoKurokawa, &chi5, p, &[g.coeff(p)]));
        lift_lines(
            &mut r,
            &format!("Yoshida chi12_2 p={p}"),
            hecke2::lift_check(LiftKind::Yoshida, &chi12, p, &[fp.coeff(p), fm.coeff(p)]),
        );
    }
    r
}

fn criterion_4() -> CriterionResult {
    let mut r = CriterionResult::new(4, "elliptic newforms of level 2");
    let through_q5 = |f: &QSeries1, want: &[i64]| f.truncate(6) == QSeries1::from_ints(want);
    if let Some(v) = r.check_with("newforms(8, 2) has one form", rational_newforms(8, 6), |v| v.len() == 1) {
        r.check("f8 through q^5", through_q5(v[0].qexp().expect("rational"), &F8));
    }
    if let Some(v) = r.check_with("newforms(14, 2) has two forms", rational_newforms(14, 6), |v| v.len() == 2) {
        r.check("f14+ through q^5", newform_with_sign(&v, 1).is_some_and(|f| through_q5(f, &F14_PLUS)));
        r.check("f14- through q^5", newform_with_sign(&v, -1).is_some_and(|f| through_q5(f, &F14_MINUS)));
    }
    if let Some(v) = r.check_with("newforms(26, 2)", newforms(26, 2, 4), |v| v.len() == 2) {
        let mut poly = QPoly::one();
        for nf in &v {
            poly = poly.mul(&match &nf.eigen {
                Eigendata::Rational(f) => QPoly::linear(&f.coeff(3)),
                Eigendata::Orbit { t3, .. } => t3.clone(),
            });
        }
        r.check("T3 polynomial has degree 3", poly.degree() == Some(3));
        r.check(format!("T3 root {F26_T3_ROOT}"), poly.eval(&int(F26_T3_ROOT)).is_zero());
        // roots 2048 - a/2 and its conjugate, a = -375752 + 9600 sqrt(106705)
        let sum = BigInt::from(4096 + 375752);
        let c = BigInt::from(2048 + 375752 / 2);
        let prod = &c * &c - BigInt::from(4800).pow(2) * BigInt::from(106705);
        let quad = QPoly::new(vec![Rational::from_integer(prod), Rational::from_integer(-sum), Rational::one()]);
        let (q, rem) = poly.div_rem(&quad);
        r.check("quadratic factor with roots 2048 -+ a/2", rem.is_zero() && q.eval(&int(F26_T3_ROOT)).is_zero());
    }
    r
}

fn criterion_5() -> CriterionResult {
    let mut r = CriterionResult::new(5, "diagonal restrictions");
    if let Some(f) = r.check_with("construct chi14_7", construct_named("chi14_7", 8), |_| true) {
        if let Some(d) = r.check_with("decompose chi14_7", restrict_and_decompose(&f), |_| true) {
            let low: Vec<_> = d.nonzero().filter(|c| c.l <= f.j / 2).collect();
            r.check(
                "chi14_7: only l=5 among l <= j/2, a single e4 Delta x Delta term",
                low.len() == 1
                    && low[0].l == 5
                    && low[0].terms.len() == 1
                    && low[0].terms[0].left == "e4 Delta"
                    && low[0].terms[0].right == "Delta",
            );
        }
    }
    let mut coeffs = Vec::new();
    for id in ["chi18_7_1", "chi18_7_2"] {
        let Some(f) = r.check_with(&format!("construct {id}"), construct_named(id, 8), |_| true) else { return r };
        let Some(d) = r.check_with(&format!("decompose {id}"), restrict_and_decompose(&f), |_| true) else { return r };
        let low: Vec<_> = d.nonzero().filter(|c| c.l <= f.j / 2).collect();
        let single = low.len() == 1 && low[0].l == 5 && low[0].terms.len() == 1 && low[0].terms[0].left == "e4^2 Delta";
        r.check(format!("{id}: only l=5, a single e4^2 Delta x Delta term"), single);
        if single {
            coeffs.push(low[0].terms[0].coeff.clone());
        }
    }
    if let [c1, c2] = coeffs.as_slice() {
        let (a, b) = CHI18_7_RESTRICTION_RATIO;
        r.check(format!("l=5 coefficients {c1} : {c2} in ratio {a}:{b}"), c1 * int(b) == c2 * int(a));
    }
    for which in [BaseForm::Chi5, BaseForm::Chi10] {
        r.check_with(&format!("{} restricts to zero at P=8", which.name()), cached_base(which, 8), |f| {
            f.series.restrict_diagonal().is_zero()
        });
    }
    r
}

fn criterion_6() -> CriterionResult {
    let mut r = CriterionResult::new(6, "covariant and Igusa identities");
    let e = parse_expr("75 C_{4,0} - 8 C_{2,0}^2").expect("valid expression");
    if let (Ok(f), Ok(psi), Ok(c10)) = (mu(&e, 6), cached_base(BaseForm::Psi4, 6), cached_base(BaseForm::Chi10, 6)) {
        let g = psi.mul(&c10).mul(&c10);
        let s = g.series.ratio_to(&f.series);
        r.check(format!("mu(75 C_4,0 - 8 C_2,0^2) = s psi4 chi10^2, s = {s:?}"), s.is_some_and(|s| !s.is_zero()));
    } else {
        r.check("E4 identity inputs", false);
    }
    let c20 = mu(&parse_expr("C_{2,0}").expect("valid"), 6);
    if let Some(f) = r.check_with("mu(C_2,0)", c20, |_| true) {
        r.check_with("mu(C_2,0) restricts to a multiple of Delta x Delta", restrict_and_decompose(&f), |d| {
            let nz: Vec<_> = d.nonzero().collect();
            nz.len() == 1 && nz[0].terms.len() == 1 && nz[0].terms[0].left == "Delta" && nz[0].terms[0].right == "Delta"
        });
    }
    r
}

fn criterion_7() -> CriterionResult {
    let mut r = CriterionResult::new(7, "dimension layer");
    r.check("level2_elliptic_dims(12) = (1,1,1)", dims::level2_elliptic_dims(12) == (1, 1, 1));
    r.check("level2_elliptic_dims(8) = (0,1,0)", dims::level2_elliptic_dims(8) == (0, 1, 0));
    r.check("level2_elliptic_dims(6) = (0,0,1)", dims::level2_elliptic_dims(6) == (0, 0, 1));
    r.check("fricke_split(14) = (1,1)", dims::fricke_split(14) == Ok((1, 1)));
    r.check("fricke_split(8) = (1,0)", dims::fricke_split(8) == Ok((1, 0)));
    r.check("fricke_split(26) = (1,2)", dims::fricke_split(26) == Ok((1, 2)));
    r.check("yoshida(12, [1^6]) = 1", dims::yoshida_multiplicity(12, &P_1_6) == Ok(1));
    r.check("yoshida(24, [1^6]) = 2", dims::yoshida_multiplicity(24, &P_1_6) == Ok(2));
    r.check("yoshida(24, [2^3]) = 1", dims::yoshida_multiplicity(24, &P_2_3) == Ok(1));
    r.check("yoshida(24, [2,1^4]) = 1", dims::yoshida_multiplicity(24, &P_2_1_4) == Ok(1));
    r.check(
        "conjecture_table(j) = 0 for j < 12",
        (0..12).step_by(2).all(|j| dims::conjecture_table(j).is_ok_and(|t| t.is_zero())),
    );
    let rep = dims::consistency_checks(30);
    r.check(format!("consistency_checks(30): {} identities", rep.lines.len()), rep.all_pass() && rep.lines.len() == 32);
    r
}

fn criterion_8() -> CriterionResult {
    let mut r = CriterionResult::new(8, "diagonal vanishing orders");
    for (id, order) in [("chi18_2", 5usize), ("chi20_2", 6)] {
        let (nf, text) = crate::siegel::named_recipe(id).expect("known id");
        let e = parse_expr(&text).expect("valid");
        let Some(f) = r.check_with(&format!("mu of the {id} covariant at P=10"), mu(&e, 10), |_| true) else { continue };
        let (d, q) = vanishing_order_diagonal(&f);
        r.check(format!("{id}: vanishing order {d}, expected {order}"), d == order && d == nf.chi5_divisions as usize);
        r.check(format!("{id}: quotient weight ({}, {})", q.j, q.k), q.k == 2 && q.has_character);
        r.check(format!("{id}: quotient iota symmetry"), q.check_iota_symmetry());
        r.check(format!("{id}: quotient support parity"), q.check_support_parity());
    }
    r
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
}

fn random_binary_form<R: Rng>(rng: &mut R, deg: u16) -> MPoly {
    MPoly::from_terms((0..=deg).map(|i| {
        let mut m = [0u16; NVARS];
        m[7] = deg - i;
        m[8] = i;
        (m, random_rational(rng))
    }))
}

type Term = ((i64, i64, i64), SymVector);

/// Random terms in the cone with `lo <= n1, n3 <= prec`.
fn random_terms<R: Rng>(rng: &mut R, j: usize, prec: i64, lo: i64, count: usize) -> Vec<Term> {
    let mut out = Vec::new();
    while out.len() < count {
        let (n1, n3) = (rng.gen_range(lo..=prec), rng.gen_range(lo..=prec));
        let b = ((4 * n1 * n3) as f64).sqrt() as i64;
        let n2 = rng.gen_range(-b..=b);
        if Idx::new(n1, n2, n3).in_cone() {
            out.push(((n1, n2, n3), SymVector::new((0..=j).map(|_| random_rational(rng)).collect())));
        }
    }
    out
}

/// A scalar series whose leading term is minimal in both `n1` and `n3`.
fn random_divisor<R: Rng>(rng: &mut R, prec: i64, count: usize) -> FSeries2 {
    let a = rng.gen_range(0..=1);
    let mut c = random_rational(rng);
    while c.is_zero() {
        c = random_rational(rng);
    }
    let lead = ((a, rng.gen_range(-a..=a), a), SymVector::new(vec![c]));
    let rest = random_terms(rng, 0, prec, a, count).into_iter().filter(|((n1, _, _), _)| *n1 > a);
    FSeries2::from_rational_terms(0, prec, 0, std::iter::once(lead).chain(rest)).expect("cone terms")
}

/// Property checks with a seeded generator.
fn criterion_9(seed: u64) -> CriterionResult {
    let mut r = CriterionResult::new(9, "property suites");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut bilinear = true;
    let mut antisym = true;
    for _ in 0..20 {
        let (m, n) = (rng.gen_range(1..=6u16), rng.gen_range(1..=6u16));
        let k = rng.gen_range(0..=m.min(n)) as u32;
        let (f, f2, g) = (random_binary_form(&mut rng, m), random_binary_form(&mut rng, m), random_binary_form(&mut rng, n));
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let lhs = transvectant(&f.scale(&a).add(&f2.scale(&b)), &g, k).expect("valid order");
        let rhs = transvectant(&f, &g, k).expect("valid").scale(&a).add(&transvectant(&f2, &g, k).expect("valid").scale(&b));
        bilinear &= lhs == rhs;
        let fg = transvectant(&f, &g, k).expect("valid");
        let gf = transvectant(&g, &f, k).expect("valid");
        antisym &= fg == gf.scale(&if k % 2 == 0 { int(1) } else { int(-1) });
    }
    r.check("transvectant bilinearity (20 cases)", bilinear);
    r.check("transvectant (f,g)_k = (-1)^k (g,f)_k (20 cases)", antisym);

    let mut round_trip = true;
    let mut restrict_hom = true;
    for _ in 0..100 {
        let j = rng.gen_range(0..=3);
        let prec = rng.gen_range(3..=5);
        let (nf, ng) = (rng.gen_range(1..=6), rng.gen_range(1..=4));
        let f = FSeries2::from_rational_terms(j, prec, 0, random_terms(&mut rng, j, prec, 0, nf)).expect("cone terms");
        let g = random_divisor(&mut rng, prec, ng);
        let h = f.mul(&g);
        let q = h.div_exact(&g);
        round_trip &= q.is_ok_and(|q| q.agrees_with(&f));
        restrict_hom &= h.restrict_diagonal() == f.restrict_diagonal().mul(&g.restrict_diagonal());
    }
    r.check("div_exact(F G, G) = F (100 cases)", round_trip);
    r.check("restriction is multiplicative (100 cases)", restrict_hom);

    let mut functorial = true;
    for _ in 0..50 {
        let mut m = || -> IntMatrix2 { [[rng.gen_range(-4..=4), rng.gen_range(-4..=4)], [rng.gen_range(-4..=4), rng.gen_range(-4..=4)]] };
        let (a, b) = (m(), m());
        let ab = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        let j = rng.gen_range(0..=10usize);
        let v = SymVector::new((0..=j).map(|_| random_rational(&mut rng)).collect());
        let lhs = sym_action(&ab, j, &v).expect("length");
        let rhs = sym_action(&a, j, &sym_action(&b, j, &v).expect("length")).expect("length");
        functorial &= lhs == rhs;
    }
    r.check("Sym^j(AB) = Sym^j(A) Sym^j(B) (50 cases)", functorial);

    let mut forms: Vec<(String, SiegelForm)> = Vec::new();
    for w in BaseForm::ALL {
        if let Ok(f) = cached_base(w, 6) {
            forms.push((w.name().to_string(), f));
        }
    }
    for nf in NAMED_FORMS.iter().filter(|n| !n.stretch) {
        match construct_named(nf.id, 6) {
            Ok(f) => forms.push((nf.id.to_string(), f)),
            Err(e) => r.check(format!("construct {}: {e}", nf.id), false),
        }
    }
    for (name, f) in &forms {
        r.check(format!("{name}: iota symmetry"), f.check_iota_symmetry());
        r.check(format!("{name}: support parity"), f.check_support_parity());
    }

    let a = construct_named("chi12_2", 6).map(|f| f.to_json().to_string());
    let b = construct_named("chi12_2", 6).map(|f| f.to_json().to_string());
    r.check("construction is deterministic", a.is_ok() && a == b);
    r
}

fn criterion_10() -> CriterionResult {
    let mut r = CriterionResult::new(10, "weight 24, 36 and the discriminant");
    let mut pair = Vec::new();
    for (id, first, want) in [("chi24_2_1", 3usize, &CHI24_2_1_ENTRIES[..]), ("chi24_2_2", 7, &CHI24_2_2_ENTRIES[..])] {
        let Some(f) = r.check_with(&format!("construct {id} at P=5"), construct_named(id, 5), |_| true) else { continue };
        let got = f.series.coeff(1, 1, 1);
        let ok = want.iter().enumerate().all(|(t, w)| got.entries()[first + t] == int(*w));
        r.check(format!("{id}: a([1,1,1]) entries from {first}"), ok);
        pair.push(f);
    }
    if pair.len() == 2 {
        let expected = QPoly::new(vec![int(-2375608305600), int(-575760), int(1)]);
        r.check_with("T3 on S_{24,2}(eps)", charpoly_hecke(&pair, 3), |e| e.eigen == Eigen::Charpoly(expected.clone()));
    }
    if let Some(f) = r.check_with("construct chi36_3 at P=10", construct_named("chi36_3", 10), |_| true) {
        for (n, vals) in CHI36_3_ENTRIES {
            let got = f.series.coeff(n.0, n.1, n.2);
            let ok = vals.iter().enumerate().all(|(t, (a, b))| got.entries()[7 + t] == rat(*a, *b));
            r.check(format!("chi36_3: a({n:?}) entries 7 and 8"), ok);
        }
        r.check_with(&format!("chi36_3: lambda_5 = {CHI36_3_LAMBDA5}"), eigenvalue_tp(&f, 5), |e| {
            e.eigenvalue() == Some(&int(CHI36_3_LAMBDA5))
        });
    }
    if let Some(f) = r.check_with("construct chi12_2 at P=17", construct_named("chi12_2", 17), |_| true) {
        for (p, l) in CHI12_2_STRETCH_EIGENVALUES {
            r.check_with(&format!("chi12_2: lambda_{p} = {l}"), eigenvalue_tp(&f, p), |e| e.eigenvalue() == Some(&int(l)));
        }
    }
    for (label, c10) in [("with -13860 C_10,0", "13860"), ("with -15 C_10,0", "15")] {
        let text = format!(
            "768 C_{{2,0}}^5 - 7625 C_{{4,0}}C_{{2,0}}^3 - 1875 (7 C_{{6,0}}C_{{2,0}}^2 - 10 C_{{4,0}}^2 C_{{2,0}} \
             - 30 C_{{6,0}}C_{{4,0}} - {c10} C_{{10,0}})"
        );
        let e = parse_expr(&text).expect("valid expression");
        if let (Ok(f), Ok(c)) = (mu(&e, 14), cached_base(BaseForm::Chi10, 14)) {
            let s = c.series.pow(6).truncate(14).ratio_to(&f.series);
            r.check(format!("discriminant {label}: mu = s chi10^6, s = {s:?}"), s.is_some());
        } else {
            r.check(format!("discriminant {label}: inputs"), false);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn result_lines() {
        let mut r = CriterionResult::new(4, "x");
        assert!(!r.pass());
        r.check("a", true);
        assert!(r.pass());
        r.check("b", false);
        assert_eq!(r.failures().collect::<Vec<_>>(), vec!["b"]);
        assert_eq!(r.line(), "criterion 4 [FAIL] x (1/2 checks)");
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(11, 0).pass());
    }
}
