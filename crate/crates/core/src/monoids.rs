//! The matrix monoids `N ⊃ M`, the bimodule `V_n ⊕ V_n` and the extension `M_n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{Element, FgAbGroup};
use crate::json::{ElementJson, Num};
use crate::spheres::v_group;

pub const DEFAULT_SEED: u64 = 20_240_101;
pub const DEFAULT_SAMPLES: usize = 1000;
/// Bound on entry magnitudes when sampling `N`.
pub const SAMPLE_BOUND: i64 = 50;

/// `[[a', a''], [b', b'']]` with `a' + a'' = 1 = b' + b''`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NMatrix {
    pub a1: BigInt,
    pub a2: BigInt,
    pub b1: BigInt,
    pub b2: BigInt,
}

impl NMatrix {
    pub fn new(a1: impl Into<BigInt>, a2: impl Into<BigInt>, b1: impl Into<BigInt>, b2: impl Into<BigInt>) -> Result<Self> {
        let m = NMatrix {
            a1: a1.into(),
            a2: a2.into(),
            b1: b1.into(),
            b2: b2.into(),
        };
        if !(&m.a1 + &m.a2).is_one() || !(&m.b1 + &m.b2).is_one() {
            return Err(Error::Input(format!("{m} is not in N: rows must sum to 1")));
        }
        Ok(m)
    }

    /// The matrix with first column `(a', b')`.
    pub fn from_first_column(a1: impl Into<BigInt>, b1: impl Into<BigInt>) -> Self {
        let (a1, b1) = (a1.into(), b1.into());
        NMatrix {
            a2: BigInt::one() - &a1,
            b2: BigInt::one() - &b1,
            a1,
            b1,
        }
    }

    pub fn identity() -> Self {
        Self::from_first_column(1, 0)
    }

    pub fn interchange() -> Self {
        Self::from_first_column(0, 1)
    }

    pub fn p_prime() -> Self {
        Self::from_first_column(1, 1)
    }

    pub fn p_dprime() -> Self {
        Self::from_first_column(0, 0)
    }

    pub fn is_in_m(&self) -> bool {
        [&self.a1, &self.a2, &self.b1, &self.b2]
            .iter()
            .all(|e| e.is_zero() || e.is_one())
    }

    pub fn name(&self) -> Option<&'static str> {
        MONOID_M
            .iter()
            .zip(M_NAMES)
            .find(|(f, _)| f() == *self)
            .map(|(_, n)| n)
    }

    pub fn determinant(&self) -> BigInt {
        &self.a1 * &self.b2 - &self.b1 * &self.a2
    }

    pub fn permanent(&self) -> BigInt {
        &self.a1 * &self.b2 + &self.b1 * &self.a2
    }

    /// `a'b'' + (-1)^n b'a''`
    pub fn scalar(&self, n: u32) -> BigInt {
        if n.is_multiple_of(2) {
            self.permanent()
        } else {
            self.determinant()
        }
    }

    pub fn rows(&self) -> [[BigInt; 2]; 2] {
        [
            [self.a1.clone(), self.a2.clone()],
            [self.b1.clone(), self.b2.clone()],
        ]
    }

    fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a1 * x + &self.a2 * y, &self.b1 * x + &self.b2 * y)
    }
}

impl fmt::Display for NMatrix {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a1, self.a2, self.b1, self.b2)
    }
}

impl fmt::Debug for NMatrix {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self.name() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{self}"),
        }
    }
}

/// `I, T, P', P''` in table order.
pub const MONOID_M: [fn() -> NMatrix; 4] = [
    NMatrix::identity,
    NMatrix::interchange,
    NMatrix::p_prime,
    NMatrix::p_dprime,
];
pub const M_NAMES: [&str; 4] = ["I", "T", "P'", "P''"];

pub fn m_elements() -> Vec<NMatrix> {
    MONOID_M.iter().map(|f| f()).collect()
}

pub fn nmat_mul(m: &NMatrix, k: &NMatrix) -> NMatrix {
    NMatrix {
        a1: &m.a1 * &k.a1 + &m.a2 * &k.b1,
        a2: &m.a1 * &k.a2 + &m.a2 * &k.b2,
        b1: &m.b1 * &k.a1 + &m.b2 * &k.b1,
        b2: &m.b1 * &k.a2 + &m.b2 * &k.b2,
    }
}

/// Row `x`, column `y` holds `x ∘ y`.
pub fn multiplication_table() -> Vec<Vec<NMatrix>> {
    let m = m_elements();
    m.iter()
        .map(|x| m.iter().map(|y| nmat_mul(x, y)).collect())
        .collect()
}

pub fn render_table() -> String {
    let name = |m: &NMatrix| m.name().expect("M is closed").to_string();
    let mut out = format!("{:<4}|", "");
    for n in M_NAMES {
        out.push_str(&format!(" {n:<4}"));
    }
    out = out.trim_end().to_string();
    out.push('\n');
    out.push_str(&format!("{}+{}\n", "-".repeat(4), "-".repeat(20)));
    for (row, n) in multiplication_table().iter().zip(M_NAMES) {
        let mut line = format!("{n:<4}|");
        for m in row {
            line.push_str(&format!(" {:<4}", name(m)));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// `(x, y) ∈ V_n ⊕ V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodulePair {
    pub n: u32,
    pub x: Element,
    pub y: Element,
}

impl BimodulePair {
    pub fn new(n: u32, x: Element, y: Element) -> Result<Self> {
        let v = v_group(n)?.0;
        x.check_member(&v)?;
        y.check_member(&v)?;
        Ok(BimodulePair { n, x, y })
    }

    pub fn zero(n: u32) -> Result<Self> {
        let v = v_group(n)?.0;
        Ok(BimodulePair {
            n,
            x: v.zero(),
            y: v.zero(),
        })
    }

    pub fn add(&self, other: &BimodulePair) -> Result<BimodulePair> {
        same_n(self.n, other.n)?;
        Ok(BimodulePair {
            n: self.n,
            x: (&self.x + &other.x).reduced(),
            y: (&self.y + &other.y).reduced(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for BimodulePair {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn same_n(a: u32, b: u32) -> Result<()> {
    if a != b {
        return Err(Error::MixedDimension(a, b));
    }
    Ok(())
}

/// `m (x, y) = (a'x + a''y, b'x + b''y)`
pub fn left_action(m: &NMatrix, p: &BimodulePair) -> BimodulePair {
    BimodulePair {
        n: p.n,
        x: (&p.x.scale(&m.a1) + &p.y.scale(&m.a2)).reduced(),
        y: (&p.x.scale(&m.b1) + &p.y.scale(&m.b2)).reduced(),
    }
}

/// `(x, y) m = (a'b'' + (-1)^n b'a'') (x, y)`
pub fn right_action(p: &BimodulePair, m: &NMatrix) -> BimodulePair {
    let s = m.scalar(p.n);
    BimodulePair {
        n: p.n,
        x: p.x.scale(&s).reduced(),
        y: p.y.scale(&s).reduced(),
    }
}

/// An element `(m, (x, y))` of `M_n` (n even) or of the candidate split `N_n` (n odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    pub n: u32,
    pub m: NMatrix,
    pub pair: BimodulePair,
    /// Set whenever the value was produced under the split assumption for odd n.
    pub split_candidate: bool,
}

impl ExtElement {
    pub fn new(m: NMatrix, pair: BimodulePair) -> Result<Self> {
        if pair.n.is_multiple_of(2) && !m.is_in_m() {
            return Err(Error::NotInM(m.to_string()));
        }
        Ok(ExtElement {
            n: pair.n,
            m,
            pair,
            split_candidate: false,
        })
    }

    pub fn identity(n: u32) -> Result<Self> {
        Self::new(NMatrix::identity(), BimodulePair::zero(n)?)
    }

    /// The free action `e + (x, y)` on the fibre.
    pub fn act(&self, p: &BimodulePair) -> Result<Self> {
        Ok(ExtElement {
            pair: self.pair.add(p)?,
            ..self.clone()
        })
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({:?}, {})", self.m, self.pair)?;
        if self.split_candidate {
            write!(f, " [assuming split]")?;
        }
        Ok(())
    }
}

/// `(m, p) ∘ (m', p') = (mm', m p' + p m')`.
///
/// For odd `n` this is only the split candidate and requires `assume_split`.
pub fn mn_compose(e: &ExtElement, f: &ExtElement, assume_split: bool) -> Result<ExtElement> {
    same_n(e.n, f.n)?;
    let n = e.n;
    if n.is_multiple_of(2) {
        for m in [&e.m, &f.m] {
            if !m.is_in_m() {
                return Err(Error::NotInM(m.to_string()));
            }
        }
    } else if !assume_split {
        return Err(Error::OpenExtension(n));
    }
    let pair = left_action(&e.m, &f.pair).add(&right_action(&e.pair, &f.m))?;
    Ok(ExtElement {
        n,
        m: nmat_mul(&e.m, &f.m),
        pair,
        split_candidate: n % 2 == 1 || e.split_candidate || f.split_candidate,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scope {
    /// Exhaustive over `M³`.
    M,
    /// Seeded random triples from `N`.
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Law {
    LeftAction,
    RightAction,
    Middle,
    LeftUnit,
    RightUnit,
}

/// Integer formulas (generic `x, y`) or actual elements of `V_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    Formula,
    Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub law: Law,
    pub level: Level,
    pub matrices: Vec<NMatrix>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub n: u32,
    pub scope: Scope,
    pub triples: usize,
    pub seed: Option<u64>,
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks both bimodule laws that involve two matrices on the first
/// violation found, formula level before element level.
pub fn check_pair(n: u32, m: &NMatrix, k: &NMatrix, gens: &[BimodulePair]) -> Option<Counterexample> {
    let mk = nmat_mul(m, k);
    let found = |law, level, detail: String| {
        Some(Counterexample {
            law,
            level,
            matrices: vec![m.clone(), k.clone()],
            detail,
        })
    };

    // formula level, on the generic pair (x, y) = basis of Z²
    for (x, y) in [(BigInt::one(), BigInt::zero()), (BigInt::zero(), BigInt::one())] {
        let (kx, ky) = k.apply(&x, &y);
        if m.apply(&kx, &ky) != mk.apply(&x, &y) {
            return found(Law::LeftAction, Level::Formula, "m(m'p) != (mm')p".into());
        }
    }
    let (s_m, s_k, s_mk) = (m.scalar(n), k.scalar(n), mk.scalar(n));
    if s_mk != &s_m * &s_k {
        return found(
            Law::RightAction,
            Level::Formula,
            format!(
                "scalar(mm') = {s_mk} but scalar(m) * scalar(m') = {}",
                &s_m * &s_k
            ),
        );
    }
    for (x, y) in [(BigInt::one(), BigInt::zero()), (BigInt::zero(), BigInt::one())] {
        let (mx, my) = m.apply(&x, &y);
        let lhs = (&mx * &s_k, &my * &s_k);
        let rhs = m.apply(&(&x * &s_k), &(&y * &s_k));
        if lhs != rhs {
            return found(Law::Middle, Level::Formula, "(mp)m' != m(pm')".into());
        }
    }

    for p in gens {
        if left_action(m, &left_action(k, p)) != left_action(&mk, p) {
            return found(Law::LeftAction, Level::Element, format!("m(m'p) != (mm')p at p = {p}"));
        }
        if right_action(&right_action(p, m), k) != right_action(p, &mk) {
            return found(Law::RightAction, Level::Element, format!("(pm)m' != p(mm') at p = {p}"));
        }
        if right_action(&left_action(m, p), k) != left_action(m, &right_action(p, k)) {
            return found(Law::Middle, Level::Element, format!("(mp)m' != m(pm') at p = {p}"));
        }
    }
    None
}

fn check_units(n: u32, m: &NMatrix, gens: &[BimodulePair]) -> Option<Counterexample> {
    let id = NMatrix::identity();
    let found = |law, level| {
        Some(Counterexample {
            law,
            level,
            matrices: vec![m.clone()],
            detail: "unit law fails".into(),
        })
    };
    if nmat_mul(&id, m) != *m || nmat_mul(m, &id) != *m {
        return found(Law::LeftUnit, Level::Formula);
    }
    if !id.scalar(n).is_one() {
        return found(Law::RightUnit, Level::Formula);
    }
    for p in gens {
        if left_action(&id, p) != *p {
            return found(Law::LeftUnit, Level::Element);
        }
        if right_action(p, &id) != *p {
            return found(Law::RightUnit, Level::Element);
        }
    }
    None
}

/// `(g, 0)` and `(0, g)` for the canonical generators `g` of `V_n`; all
/// laws are additive in `p`, so these suffice.
pub fn pair_generators(n: u32) -> Result<Vec<BimodulePair>> {
    let v: FgAbGroup = v_group(n)?.0;
    let mut out = Vec::new();
    for g in v.canonical_generators() {
        out.push(BimodulePair::new(n, g.clone(), v.zero())?);
        out.push(BimodulePair::new(n, v.zero(), g)?);
    }
    Ok(out)
}

fn sample_n(rng: &mut ChaCha8Rng) -> NMatrix {
    let a1 = rng.gen_range(1 - SAMPLE_BOUND..=SAMPLE_BOUND);
    let b1 = rng.gen_range(1 - SAMPLE_BOUND..=SAMPLE_BOUND);
    NMatrix::from_first_column(a1, b1)
}

fn check_triple(n: u32, t: &[NMatrix; 3], gens: &[BimodulePair]) -> Option<Counterexample> {
    let [a, b, c] = t;
    check_units(n, a, gens)
        .or_else(|| check_pair(n, a, b, gens))
        .or_else(|| check_pair(n, b, c, gens))
        .or_else(|| check_pair(n, a, &nmat_mul(b, c), gens))
}

/// Bimodule laws for `V_n ⊕ V_n` over `M` (exhaustive) or `N` (sampled).
pub fn check_bimodule_axioms(n: u32, scope: Scope, samples: usize, seed: u64) -> Result<AxiomReport> {
    let gens = pair_generators(n)?;
    let mut report = AxiomReport {
        n,
        scope,
        triples: 0,
        seed: (scope == Scope::N).then_some(seed),
        counterexample: None,
    };
    let triples: Box<dyn Iterator<Item = [NMatrix; 3]>> = match scope {
        Scope::M => {
            let m = m_elements();
            Box::new(
                (0..64).map(move |i| [m[i / 16].clone(), m[(i / 4) % 4].clone(), m[i % 4].clone()]),
            )
        }
        Scope::N => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..samples).map(move |_| [sample_n(&mut rng), sample_n(&mut rng), sample_n(&mut rng)]))
        }
    };
    for t in triples {
        report.triples += 1;
        if let Some(ce) = check_triple(n, &t, &gens) {
            report.counterexample = Some(ce);
            break;
        }
    }
    Ok(report)
}

/// `M_n` composition is associative on the given elements.
pub fn is_associative(elements: &[ExtElement]) -> Result<bool> {
    for a in elements {
        for b in elements {
            let ab = mn_compose(a, b, false)?;
            for c in elements {
                let lhs = mn_compose(&ab, c, false)?;
                let rhs = mn_compose(a, &mn_compose(b, c, false)?, false)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// JSON form `{"m": [[a', a''], [b', b'']], "x": element, "y": element}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtElementJson {
    pub m: [[Num; 2]; 2],
    pub x: ElementJson,
    pub y: ElementJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub split_candidate: bool,
}

impl ExtElementJson {
    pub fn to_element(&self, n: u32) -> Result<ExtElement> {
        let [[a1, a2], [b1, b2]] = &self.m;
        let m = NMatrix::new(a1.0.clone(), a2.0.clone(), b1.0.clone(), b2.0.clone())?;
        let v = v_group(n)?.0;
        let pair = BimodulePair::new(n, self.x.in_group(&v)?, self.y.in_group(&v)?)?;
        let mut e = ExtElement::new(m, pair)?;
        e.split_candidate = self.split_candidate;
        Ok(e)
    }
}

impl From<&ExtElement> for ExtElementJson {
    fn from(e: &ExtElement) -> Self {
        let [[a1, a2], [b1, b2]] = e.m.rows();
        ExtElementJson {
            m: [[Num(a1), Num(a2)], [Num(b1), Num(b2)]],
            x: (&e.pair.x).into(),
            y: (&e.pair.y).into(),
            split_candidate: e.split_candidate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(a1: i64, a2: i64, b1: i64, b2: i64) -> NMatrix {
        NMatrix::new(a1, a2, b1, b2).unwrap()
    }

    #[test]
    fn named_products() {
        let (i, t, p1, p2) = (
            NMatrix::identity(),
            NMatrix::interchange(),
            NMatrix::p_prime(),
            NMatrix::p_dprime(),
        );
        assert_eq!(nmat_mul(&p1, &t), p2);
        assert_eq!(nmat_mul(&t, &t), i);
        assert_eq!(nmat_mul(&p1, &p2), p2);
        assert_eq!(nmat_mul(&nm(2, -1, 0, 1), &t), nm(-1, 2, 1, 0));
        assert!(NMatrix::new(1, 1, 0, 1).is_err());
    }

    #[test]
    fn table_rendering() {
        let expected = "    | I    T    P'   P''\n\
                        ----+--------------------\n\
                        I   | I    T    P'   P''\n\
                        T   | T    I    P'   P''\n\
                        P'  | P'   P''  P'   P''\n\
                        P'' | P''  P'   P'   P''\n";
        assert_eq!(render_table(), expected);
    }

    #[test]
    fn actions() {
        let v = v_group(3).unwrap().0;
        let x = v.generator(0);
        let y = x.scale(&BigInt::from(5));
        let p = BimodulePair::new(3, x.clone(), y.clone()).unwrap();
        assert_eq!(left_action(&NMatrix::identity(), &p), p);
        let swapped = left_action(&NMatrix::interchange(), &p);
        assert_eq!((swapped.x, swapped.y), (y.clone(), x.clone()));
        let diag = left_action(&NMatrix::p_prime(), &p);
        assert_eq!((diag.x, diag.y), (x.clone(), x.clone()));
        let neg = right_action(&p, &NMatrix::interchange());
        assert_eq!((neg.x, neg.y), (-&x, -&y));
        assert!(right_action(&p, &NMatrix::p_prime()).is_zero());
        assert_eq!(right_action(&p, &NMatrix::identity()), p);
    }

    #[test]
    fn composition() {
        let v = v_group(2).unwrap().0;
        let one = v.generator(0);
        let z = v.zero();
        let pair = |x: &Element, y: &Element| BimodulePair::new(2, x.clone(), y.clone()).unwrap();
        let e = ExtElement::new(NMatrix::interchange(), pair(&one, &z)).unwrap();
        let f = ExtElement::new(NMatrix::interchange(), pair(&z, &one)).unwrap();
        let ef = mn_compose(&e, &f, false).unwrap();
        // (T,(x,y)) ∘ (T,(x',y')) = (I, (y' + x, x' + y))
        assert_eq!(ef.m, NMatrix::identity());
        assert_eq!(ef.pair, pair(&(&one + &one), &z));

        let id = ExtElement::identity(2).unwrap();
        assert_eq!(mn_compose(&id, &e, false).unwrap(), e);
        assert_eq!(mn_compose(&e, &id, false).unwrap(), e);

        let a = ExtElement::new(NMatrix::p_prime(), BimodulePair::zero(2).unwrap()).unwrap();
        let b = ExtElement::new(NMatrix::p_dprime(), BimodulePair::zero(2).unwrap()).unwrap();
        assert_eq!(mn_compose(&a, &b, false).unwrap().m, NMatrix::p_dprime());
    }

    #[test]
    fn composition_errors() {
        let n_not_m = nm(2, -1, 0, 1);
        assert!(matches!(
            ExtElement::new(n_not_m.clone(), BimodulePair::zero(2).unwrap()),
            Err(Error::NotInM(_))
        ));
        let e2 = ExtElement::identity(2).unwrap();
        let e4 = ExtElement::identity(4).unwrap();
        assert_eq!(mn_compose(&e2, &e4, false), Err(Error::MixedDimension(2, 4)));
        let odd = ExtElement::new(n_not_m, BimodulePair::zero(3).unwrap()).unwrap();
        assert_eq!(mn_compose(&odd, &odd, false), Err(Error::OpenExtension(3)));
        let c = mn_compose(&odd, &odd, true).unwrap();
        assert!(c.split_candidate);
        assert_eq!(c.m, nm(4, -3, 0, 1));
    }

    #[test]
    fn linear_distributivity() {
        let v = v_group(3).unwrap().0;
        let g = v.generator(0);
        let p = BimodulePair::new(3, g.clone(), g.scale(&BigInt::from(7))).unwrap();
        let q = BimodulePair::new(3, g.scale(&BigInt::from(2)), g.clone()).unwrap();
        let m = ExtElement::new(nm(3, -2, -1, 2), BimodulePair::zero(3).unwrap()).unwrap();
        let k = ExtElement::new(nm(0, 1, 5, -4), BimodulePair::zero(3).unwrap()).unwrap();
        let lhs = mn_compose(&m.act(&p).unwrap(), &k.act(&q).unwrap(), true).unwrap();
        let base = mn_compose(&m, &k, true).unwrap();
        let rhs = base
            .act(&left_action(&m.m, &q))
            .unwrap()
            .act(&right_action(&p, &k.m))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalars() {
        let m = nm(1, 0, 2, -1);
        assert_eq!(m.scalar(3), m.determinant());
        assert_eq!(m.scalar(2), m.permanent());
        let m2 = nm(-1, 2, 2, -1);
        let prod = nmat_mul(&m, &m2);
        assert_eq!(prod, nm(-1, 2, -4, 5));
        assert_eq!(prod.permanent(), BigInt::from(-13));
        assert_eq!(m.permanent() * m2.permanent(), BigInt::from(-5));
    }

    #[test]
    fn axioms() {
        for n in 2..=5 {
            assert!(check_bimodule_axioms(n, Scope::M, 0, 0).unwrap().passed());
        }
        let r = check_bimodule_axioms(3, Scope::N, 200, DEFAULT_SEED).unwrap();
        assert!(r.passed());
        assert_eq!(r.triples, 200);
        let r = check_bimodule_axioms(2, Scope::N, 200, DEFAULT_SEED).unwrap();
        let ce = r.counterexample.unwrap();
        assert_eq!((ce.law, ce.level), (Law::RightAction, Level::Formula));
        let gens = pair_generators(2).unwrap();
        let ce = check_pair(2, &nm(1, 0, 2, -1), &nm(-1, 2, 2, -1), &gens).unwrap();
        assert!(ce.detail.contains("-13") && ce.detail.contains("-5"));
    }

    #[test]
    fn json_round_trip() {
        let e = ExtElement::new(NMatrix::interchange(), BimodulePair::zero(4).unwrap()).unwrap();
        let text = serde_json::to_string(&ExtElementJson::from(&e)).unwrap();
        let back = crate::json::parse::<ExtElementJson>(&text).unwrap().to_element(4).unwrap();
        assert_eq!(back, e);
    }
}
