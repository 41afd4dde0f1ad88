//! Independent cyclic-product arithmetic used as a brute-force oracle.
//!
//! Groups are products `Z/o_1 x ... x Z/o_k` with every `o_i >= 1`, elements
//! are residue vectors. Nothing here touches the engine's Smith-form code.
#![allow(dead_code)]

pub mod algebra;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use diagself::fgab::FgAbGroup;
use diagself::spheres::TargetData;

pub type Elt = Vec<u64>;

#[derive(Clone, Debug)]
pub struct Cyc {
    pub orders: Vec<u64>,
}

impl Cyc {
    pub fn new(orders: &[u64]) -> Self {
        Cyc {
            orders: orders.to_vec(),
        }
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> Elt {
        vec![0; self.orders.len()]
    }

    pub fn unit(&self, i: usize) -> Elt {
        let mut e = self.zero();
        e[i] = 1 % self.orders[i];
        e
    }

    pub fn elements(&self) -> Vec<Elt> {
        let mut out = vec![Vec::new()];
        for &o in &self.orders {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..o).map(move |r| {
                        let mut q = p.clone();
                        q.push(r);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y) % o)
            .collect()
    }

    pub fn scale(&self, a: &Elt, k: i64) -> Elt {
        a.iter()
            .zip(&self.orders)
            .map(|(x, &o)| ((*x as i64 * k).rem_euclid(o as i64)) as u64)
            .collect()
    }

    pub fn reduce(&self, coords: &[BigInt]) -> Elt {
        coords
            .iter()
            .zip(&self.orders)
            .map(|(c, &o)| {
                let r = c % BigInt::from(o);
                let r = if r < BigInt::from(0) { r + BigInt::from(o) } else { r };
                u64::try_from(r).unwrap()
            })
            .collect()
    }

    pub fn to_group(&self) -> FgAbGroup {
        let d: Vec<BigInt> = self.orders.iter().map(|&o| BigInt::from(o)).collect();
        FgAbGroup::from_diagonal(&d)
    }

    pub fn coords(e: &Elt) -> Vec<BigInt> {
        e.iter().map(|&x| BigInt::from(x)).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cyclic decompositions of order at most 8, including redundant ones.
pub const SHAPES: [&[u64]; 14] = [
    &[],
    &[1],
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[2, 3],
    &[7],
    &[8],
    &[2, 4],
    &[2, 2, 2],
    &[1, 2],
];

/// The shapes above whose order is a power of two and at least 2.
pub const TWO_SHAPES: [&[u64]; 7] = [&[2], &[4], &[2, 2], &[8], &[2, 4], &[2, 2, 2], &[1, 2]];

pub fn random_cyc(rng: &mut impl Rng) -> Cyc {
    Cyc::new(SHAPES.choose(rng).unwrap())
}

/// A table `[a][b]` of bilinear values on generators, `a` of order `oa`, `b` of
/// order `ob`: each value is killed by `gcd(oa, ob)`.
fn admissible(target: &Cyc, k: u64) -> Vec<Elt> {
    target
        .elements()
        .into_iter()
        .filter(|e| target.scale(e, k as i64) == target.zero())
        .collect()
}

/// Prefers nonzero values so that most targets have non-trivial pairings.
fn pick(rng: &mut impl Rng, target: &Cyc, options: Vec<Elt>) -> Elt {
    let nonzero: Vec<&Elt> = options.iter().filter(|e| **e != target.zero()).collect();
    if !nonzero.is_empty() && rng.gen_bool(0.75) {
        return (*nonzero.choose(rng).unwrap()).clone();
    }
    options.choose(rng).unwrap().clone()
}

#[derive(Clone, Debug)]
pub struct SynthTarget {
    pub n: u32,
    pub tau: i64,
    pub pi_n: Cyc,
    pub pi_n1: Cyc,
    pub pi_2n: Cyc,
    pub pi_2n1: Cyc,
    pub p1n: Vec<Vec<Elt>>,
    pub pnn: Vec<Vec<Elt>>,
}

#[allow(clippy::needless_range_loop)]
pub fn random_target(rng: &mut impl Rng) -> SynthTarget {
    let n = rng.gen_range(2..=7u32);
    let tau = if n % 2 == 1 { 1 } else { -1 };
    // mostly 2-groups, so that pairings have room to be nonzero
    let two = rng.gen_bool(0.7);
    let draw = |rng: &mut _| {
        if two {
            Cyc::new(TWO_SHAPES.choose(rng).unwrap())
        } else {
            random_cyc(rng)
        }
    };
    let pi_n = draw(rng);
    let pi_n1 = draw(rng);
    let pi_2n = draw(rng);
    let pi_2n1 = draw(rng);
    let mut p1n = vec![vec![Vec::new(); pi_n.orders.len()]; pi_n1.orders.len()];
    for (a, &oa) in pi_n1.orders.iter().enumerate() {
        for (j, &oj) in pi_n.orders.iter().enumerate() {
            p1n[a][j] = pick(rng, &pi_2n, admissible(&pi_2n, gcd(oa, oj)));
        }
    }
    let k = pi_n.orders.len();
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut pnn = vec![vec![pi_2n1.zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let g = gcd(pi_n.orders[i], pi_n.orders[j]);
            let mut options = admissible(&pi_2n1, g);
            if i == j && sign == -1 {
                options.retain(|e| pi_2n1.scale(e, 2) == pi_2n1.zero());
            }
            let x = pick(rng, &pi_2n1, options);
            pnn[j][i] = pi_2n1.scale(&x, sign);
            pnn[i][j] = x;
        }
    }
    SynthTarget {
        n,
        tau,
        pi_n,
        pi_n1,
        pi_2n,
        pi_2n1,
        p1n,
        pnn,
    }
}

impl SynthTarget {
    fn pair(table: &[Vec<Elt>], target: &Cyc, x: &Elt, y: &Elt) -> Elt {
        let mut acc = target.zero();
        for (a, &xa) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                acc = target.add(&acc, &target.scale(&table[a][j], (xa * yj) as i64));
            }
        }
        acc
    }

    pub fn p1n_eval(&self, a: &Elt, x: &Elt) -> Elt {
        Self::pair(&self.p1n, &self.pi_2n, a, x)
    }

    pub fn pnn_eval(&self, x: &Elt, y: &Elt) -> Elt {
        Self::pair(&self.pnn, &self.pi_2n1, x, y)
    }

    pub fn to_engine(&self) -> TargetData {
        let (pn, pn1, p2n, p2n1) = (
            self.pi_n.to_group(),
            self.pi_n1.to_group(),
            self.pi_2n.to_group(),
            self.pi_2n1.to_group(),
        );
        let table = |t: &[Vec<Elt>], g: &FgAbGroup| {
            t.iter()
                .map(|r| r.iter().map(|e| g.element(Cyc::coords(e)).unwrap()).collect())
                .collect()
        };
        TargetData::new(
            self.n,
            pn,
            pn1,
            p2n.clone(),
            p2n1.clone(),
            table(&self.p1n, &p2n),
            table(&self.pnn, &p2n1),
            self.tau as i32,
        )
        .expect("synthetic target is valid")
    }
}

#[derive(Clone, Debug)]
pub struct OracleOrbit {
    pub u_prime: Elt,
    pub i_set: BTreeSet<Elt>,
    pub j_set: BTreeSet<Elt>,
}

impl OracleOrbit {
    /// Orbits of the fundamental action inside this piece.
    pub fn action_orbits(&self, pi_2n: &Cyc) -> u64 {
        pi_2n.size() / self.j_set.len() as u64
    }
}

/// Enumerates `u'`, all `[α, w]` and all `[α, w] + [γ, u']` directly.
pub fn brute_force(t: &SynthTarget, v: &Elt) -> Vec<OracleOrbit> {
    let alphas = t.pi_n1.elements();
    let mut out = Vec::new();
    for u1 in t.pi_n.elements() {
        let u2 = t.pi_n.add(v, &t.pi_n.scale(&u1, -1));
        if t.pnn_eval(&u1, &u2) != t.pi_2n1.zero() {
            continue;
        }
        let w = t.pi_n.add(&u2, &t.pi_n.scale(&u1, t.tau));
        let i_set: BTreeSet<Elt> = alphas.iter().map(|a| t.p1n_eval(a, &w)).collect();
        let mut j_set = BTreeSet::new();
        for a in &alphas {
            for g in &alphas {
                j_set.insert(t.pi_2n.add(&t.p1n_eval(a, &w), &t.p1n_eval(g, &u1)));
            }
        }
        out.push(OracleOrbit {
            u_prime: u1,
            i_set,
            j_set,
        });
    }
    out
}

/// Compares the engine's decomposition with the oracle; `Err` names the first mismatch.
pub fn compare_with_engine(t: &SynthTarget, v: &Elt) -> Result<(), String> {
    use diagself::orbits::orbit_decomposition;
    let engine_t = t.to_engine();
    let v_el = engine_t.pi_n.element(Cyc::coords(v)).unwrap();
    let report = orbit_decomposition(&engine_t, &v_el).map_err(|e| e.to_string())?;
    let oracle = brute_force(t, v);
    if report.entries.len() != oracle.len() {
        return Err(format!(
            "|I| differs: engine {} vs oracle {} for {t:?}",
            report.entries.len(),
            oracle.len()
        ));
    }
    let mut engine_u: Vec<Elt> = report
        .entries
        .iter()
        .map(|e| t.pi_n.reduce(e.u.u_prime.coords()))
        .collect();
    engine_u.sort();
    let mut oracle_u: Vec<Elt> = oracle.iter().map(|o| o.u_prime.clone()).collect();
    oracle_u.sort();
    if engine_u != oracle_u {
        return Err(format!("realizable u' differ: {engine_u:?} vs {oracle_u:?}"));
    }
    for o in &oracle {
        let e = report
            .entries
            .iter()
            .find(|e| t.pi_n.reduce(e.u.u_prime.coords()) == o.u_prime)
            .unwrap();
        let check = |name: &str, sub: &diagself::fgab::Subgroup, set: &BTreeSet<Elt>| {
            let order = sub.order().unwrap();
            if order != BigInt::from(set.len()) {
                return Err(format!("{name} order {order} vs {} at u' = {:?}", set.len(), o.u_prime));
            }
            for x in set {
                if !sub.contains_coords(&Cyc::coords(x)) {
                    return Err(format!("{name} misses {x:?} at u' = {:?}", o.u_prime));
                }
            }
            Ok(())
        };
        check("I_u", &e.i_u, &o.i_set)?;
        check("J_u", &e.j_u, &o.j_set)?;
        let pieces = e.quotient.order().unwrap();
        if pieces != BigInt::from(t.pi_2n.size() / o.i_set.len() as u64) {
            return Err("coset count differs".into());
        }
        let per = &pieces / e.action.order().unwrap();
        if per != BigInt::from(o.action_orbits(&t.pi_2n)) {
            return Err("orbit count differs".into());
        }
    }
    let inj = oracle.iter().all(|o| o.i_set == o.j_set);
    if inj != report.phi_injective {
        return Err("phi_injective differs".into());
    }
    Ok(())
}
