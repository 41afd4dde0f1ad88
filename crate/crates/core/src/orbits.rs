//! Realizable pairs, isotropy groups and orbit decompositions of
//! `[S^n x S^n, U]^v`, plus the self-map monoid of `S^n x S^n`.
//!
//! Each `u = (u', u'')` with `[u', u''] = 0` and `u' + u'' = v` contributes
//! one coset space `π_{2n}(U) / I_u`; the group `J_u / I_u` acts on it with
//! the orbits of the fundamental action. Read for `U = S^n x S^n`, two maps
//! induce the same map on `H_n` exactly when they lie in one such piece.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fgab::{Element, FgAbGroup, Subgroup};
use crate::monoids::{m_elements, mn_compose, BimodulePair, ExtElement};
use crate::spheres::{v_group, IiOrder, TargetData};

/// `u = (u', u'')` together with `w = u'' + τ u'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPair {
    pub u_prime: Element,
    pub u_dprime: Element,
    pub w: Element,
}

impl UPair {
    /// The pair `(u', v - u')`.
    pub fn new(target: &TargetData, u_prime: Element, v: &Element) -> Result<Self> {
        u_prime.check_member(&target.pi_n)?;
        v.check_member(&target.pi_n)?;
        let u_dprime = v - &u_prime;
        let w = &u_dprime + &u_prime.scale(&BigInt::from(target.tau_sign));
        Ok(UPair {
            u_prime,
            u_dprime,
            w,
        })
    }

    pub fn is_realizable(&self, target: &TargetData) -> Result<bool> {
        Ok(target.pnn_eval(&self.u_prime, &self.u_dprime)?.is_zero())
    }
}

/// Solutions for one coordinate of `u'` on a built-in target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentSolutions {
    Values(Vec<BigInt>),
    /// `offset + step * t` for all integers `t`.
    Progression { offset: BigInt, step: BigInt },
}

#[derive(Clone, Debug)]
pub enum RealizableSet {
    Pairs(Vec<UPair>),
    /// `u'` ranges over the product of the per-coordinate solution sets.
    Structured {
        v: Element,
        components: Vec<ComponentSolutions>,
    },
}

impl RealizableSet {
    pub fn is_finite(&self) -> bool {
        match self {
            RealizableSet::Pairs(_) => true,
            RealizableSet::Structured { components, .. } => components
                .iter()
                .all(|c| matches!(c, ComponentSolutions::Values(_))),
        }
    }

    /// All pairs, for finite sets.
    pub fn pairs(&self, target: &TargetData) -> Result<Vec<UPair>> {
        match self {
            RealizableSet::Pairs(p) => Ok(p.clone()),
            RealizableSet::Structured { v, components } => {
                let mut lists = Vec::new();
                for c in components {
                    match c {
                        ComponentSolutions::Values(vals) => lists.push(vals.clone()),
                        ComponentSolutions::Progression { .. } => {
                            return Err(Error::InfiniteEnumeration(
                                "the realizable set is an infinite family".into(),
                            ))
                        }
                    }
                }
                cartesian(&lists)
                    .into_iter()
                    .map(|u| UPair::new(target, target.pi_n.element(u)?, v))
                    .collect()
            }
        }
    }
}

fn cartesian(lists: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                l.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// `k (c - k) [i, i] = 0` solved for `k`.
fn solve_component(order: IiOrder, c: &BigInt) -> ComponentSolutions {
    match order {
        IiOrder::Infinite => {
            let mut vals = vec![BigInt::zero()];
            if !c.is_zero() {
                vals.push(c.clone());
            }
            vals.sort();
            ComponentSolutions::Values(vals)
        }
        IiOrder::One => ComponentSolutions::Progression {
            offset: BigInt::zero(),
            step: BigInt::one(),
        },
        IiOrder::Two => ComponentSolutions::Progression {
            offset: BigInt::zero(),
            step: if c.is_odd() { BigInt::one() } else { BigInt::from(2) },
        },
    }
}

/// All `(u', v - u')` with `[u', v - u'] = 0`.
pub fn realizable_set(target: &TargetData, v: &Element) -> Result<RealizableSet> {
    v.check_member(&target.pi_n)?;
    if let Some(b) = target.builtin {
        // π_n is free on the sphere classes and the pairing is diagonal.
        let components = v
            .coords()
            .iter()
            .map(|c| solve_component(b.ii_order, c))
            .collect();
        return Ok(RealizableSet::Structured {
            v: v.clone(),
            components,
        });
    }
    let elements = target.pi_n.elements().map_err(|_| {
        Error::InfiniteEnumeration(format!(
            "π_n = {} is infinite and the target is not built in",
            target.pi_n
        ))
    })?;
    let mut pairs = Vec::new();
    for u in elements {
        let p = UPair::new(target, u, v)?;
        if p.is_realizable(target)? {
            pairs.push(p);
        }
    }
    Ok(RealizableSet::Pairs(pairs))
}

fn require_realizable(target: &TargetData, u: &UPair) -> Result<()> {
    if !u.is_realizable(target)? {
        return Err(Error::Input(format!(
            "u = ({}, {}) is not realizable: [u', u''] != 0",
            u.u_prime, u.u_dprime
        )));
    }
    Ok(())
}

fn brackets_with(target: &TargetData, x: &Element) -> Result<Vec<Element>> {
    target
        .pi_n1
        .generators()
        .iter()
        .map(|a| target.p1n_eval(a, x))
        .collect()
}

/// `I_u = {[α, w]}` as a subgroup of `π_{2n}`.
pub fn isotropy_i(target: &TargetData, u: &UPair) -> Result<Subgroup> {
    require_realizable(target, u)?;
    Subgroup::new(&target.pi_2n, &brackets_with(target, &u.w)?)
}

/// `J_u = {[α, w] + [γ, u']}` as a subgroup of `π_{2n}`.
pub fn isotropy_j(target: &TargetData, u: &UPair) -> Result<Subgroup> {
    require_realizable(target, u)?;
    let mut gens = brackets_with(target, &u.w)?;
    gens.extend(brackets_with(target, &u.u_prime)?);
    Subgroup::new(&target.pi_2n, &gens)
}

/// `u'_c ≡ residue (mod modulus)`; modulus 0 pins the exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub residue: BigInt,
    pub modulus: BigInt,
}

#[derive(Clone, Debug)]
pub struct OrbitEntry {
    pub u: UPair,
    /// For families: the classes of `u'` sharing this entry's groups.
    pub classes: Option<Vec<ComponentClass>>,
    pub i_u: Subgroup,
    pub j_u: Subgroup,
    /// `π_{2n} / I_u`
    pub quotient: FgAbGroup,
    /// `J_u / I_u`
    pub action: FgAbGroup,
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub n: u32,
    pub entries: Vec<OrbitEntry>,
    pub phi_injective: bool,
    /// Entries stand for infinite families of `u`.
    pub symbolic: bool,
    pub table_data: bool,
}

fn entry(target: &TargetData, u: UPair, classes: Option<Vec<ComponentClass>>) -> Result<OrbitEntry> {
    let i_u = isotropy_i(target, &u)?;
    let j_u = isotropy_j(target, &u)?;
    let quotient = i_u.quotient().0;
    let action = j_u.quotient_of(&i_u)?;
    Ok(OrbitEntry {
        u,
        classes,
        i_u,
        j_u,
        quotient,
        action,
    })
}

/// Representatives of `offset + step t` modulo the period after which the
/// brackets `[α, g_c]` repeat.
fn progression_classes(target: &TargetData, c: usize, offset: &BigInt, step: &BigInt) -> Result<Vec<ComponentClass>> {
    let g = target.pi_n.generator(c);
    let mut e = BigInt::one();
    for b in brackets_with(target, &g)? {
        let o = b.order().ok_or_else(|| {
            Error::InfiniteEnumeration("a bracket [α, g] has infinite order".into())
        })?;
        e = e.lcm(&o);
    }
    let period = &e / e.gcd(step);
    let modulus = (step * &period).abs();
    let mut out = Vec::new();
    let mut t = BigInt::zero();
    while t < period {
        out.push(ComponentClass {
            residue: offset + step * &t,
            modulus: modulus.clone(),
        });
        t += 1;
    }
    Ok(out)
}

pub fn orbit_decomposition(target: &TargetData, v: &Element) -> Result<OrbitReport> {
    let set = realizable_set(target, v)?;
    let mut entries = Vec::new();
    let symbolic = !set.is_finite();
    match &set {
        RealizableSet::Structured { v, components } if symbolic => {
            let mut per_component = Vec::new();
            for (c, sol) in components.iter().enumerate() {
                per_component.push(match sol {
                    ComponentSolutions::Values(vals) => vals
                        .iter()
                        .map(|k| ComponentClass {
                            residue: k.clone(),
                            modulus: BigInt::zero(),
                        })
                        .collect(),
                    ComponentSolutions::Progression { offset, step } => {
                        progression_classes(target, c, offset, step)?
                    }
                });
            }
            let mut combos: Vec<Vec<ComponentClass>> = vec![Vec::new()];
            for options in per_component {
                combos = combos
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut p = prefix.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
            }
            for classes in combos {
                let coords = classes.iter().map(|c| c.residue.clone()).collect();
                let u = UPair::new(target, target.pi_n.element(coords)?, v)?;
                entries.push(entry(target, u, Some(classes))?);
            }
        }
        _ => {
            for u in set.pairs(target)? {
                entries.push(entry(target, u, None)?);
            }
        }
    }
    let phi_injective = entries.iter().all(|e| e.action.is_trivial());
    Ok(OrbitReport {
        n: target.n,
        entries,
        phi_injective,
        symbolic,
        table_data: target.uses_table_data(),
    })
}

pub const OPEN_EXTENSION_CAVEAT: &str =
    "for odd n it is open whether the linear extension N_n of N splits; only its data is given";

/// `M_n = M x (V_n + V_n)`, the self-maps of `S^n x S^n` under the diagonal for even n.
#[derive(Clone, Debug)]
pub struct SplitMonoid {
    pub n: u32,
    pub v: FgAbGroup,
    pub order: BigInt,
}

impl SplitMonoid {
    pub fn elements(&self) -> Result<Vec<ExtElement>> {
        let vs = self.v.elements()?;
        let mut out = Vec::new();
        for m in m_elements() {
            for x in &vs {
                for y in &vs {
                    out.push(ExtElement::new(
                        m.clone(),
                        BimodulePair::new(self.n, x.clone(), y.clone())?,
                    )?);
                }
            }
        }
        Ok(out)
    }

    pub fn compose(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        mn_compose(a, b, false)
    }
}

/// Data of the linear extension `N_n → N` for odd n.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub n: u32,
    pub v: FgAbGroup,
    /// `|V_n + V_n|`, the size of each fibre over a matrix in `N`.
    pub fibre_order: BigInt,
    pub caveat: &'static str,
}

#[derive(Clone, Debug)]
pub enum SelfMapMonoid {
    Split(SplitMonoid),
    Extension(ExtensionData),
}

pub fn selfmap_monoid(n: u32) -> Result<SelfMapMonoid> {
    let v = v_group(n)?.0;
    let v_order = v
        .order()
        .ok_or_else(|| Error::InfiniteEnumeration(format!("V_{n} is infinite")))?;
    let fibre_order = &v_order * &v_order;
    Ok(if n.is_multiple_of(2) {
        SelfMapMonoid::Split(SplitMonoid {
            n,
            v,
            order: fibre_order * 4,
        })
    } else {
        SelfMapMonoid::Extension(ExtensionData {
            n,
            v,
            fibre_order,
            caveat: OPEN_EXTENSION_CAVEAT,
        })
    })
}
