//! Five-dimensional `Γ`-sequences
//!
//! ```text
//! H₅ -b₅-> Γ₄ -i₄-> π₄ -h₄-> H₄ -b₄-> Γ(π₂) -η□-> π₃ -h₃-> H₃ -> 0
//! Γ²₂(η) -j-> Γ₄ -q-> ΓT(π₂)
//! ```
//!
//! `Γ₄` is opaque input; only its maps are checked.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{direct_sum, direct_sum_of, tensor_product, Element, FgAbGroup, Homomorphism, Subgroup};
use crate::gamma::{gamma22, gamma_torsion, Gamma22, PairPolicy, QuadraticMap};
use crate::json::{ElementJson, GroupJson, HomJson};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct GammaSequence {
    pub h3: FgAbGroup,
    pub h4: FgAbGroup,
    pub h5: FgAbGroup,
    pub pi2: FgAbGroup,
    pub pi3: FgAbGroup,
    pub pi4: FgAbGroup,
    pub eta: QuadraticMap,
    pub gamma4: FgAbGroup,
    pub gamma22: Gamma22,
    /// `ΓT(π₂)` in invariant-factor form.
    pub gamma_t: FgAbGroup,
    pub b5: Homomorphism,
    pub i4: Homomorphism,
    pub h4_map: Homomorphism,
    pub b4: Homomorphism,
    pub h3_map: Homomorphism,
    pub j: Homomorphism,
    pub q: Homomorphism,
}

/// Matrices of the maps of a sequence.
#[derive(Clone, Debug)]
pub struct SequenceMaps {
    pub b5: IntMatrix,
    pub i4: IntMatrix,
    pub h4: IntMatrix,
    pub b4: IntMatrix,
    pub h3: IntMatrix,
    pub j: IntMatrix,
    pub q: IntMatrix,
}

impl GammaSequence {
    /// Assembles a sequence; `Γ²₂(η)` and `ΓT(π₂)` are computed here.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        h3: FgAbGroup,
        h4: FgAbGroup,
        h5: FgAbGroup,
        pi4: FgAbGroup,
        eta: QuadraticMap,
        gamma4: FgAbGroup,
        maps: SequenceMaps,
        policy: &PairPolicy,
    ) -> Result<Self> {
        let pi2 = eta.source().clone();
        let pi3 = eta.target().clone();
        let g22 = gamma22(&eta, policy)?;
        let gamma_t = gamma_torsion(&pi2);
        let gpi2 = eta.gamma_group().group().clone();
        let hom = |s: &FgAbGroup, t: &FgAbGroup, m| Homomorphism::new(s.clone(), t.clone(), m);
        let seq = GammaSequence {
            b5: hom(&h5, &gamma4, maps.b5)?,
            i4: hom(&gamma4, &pi4, maps.i4)?,
            h4_map: hom(&pi4, &h4, maps.h4)?,
            b4: hom(&h4, &gpi2, maps.b4)?,
            h3_map: hom(&pi3, &h3, maps.h3)?,
            j: hom(&g22.group, &gamma4, maps.j)?,
            q: hom(&gamma4, &gamma_t, maps.q)?,
            h3,
            h4,
            h5,
            pi2,
            pi3,
            pi4,
            eta,
            gamma4,
            gamma22: g22,
            gamma_t,
        };
        Ok(seq)
    }

    pub fn gamma_pi2(&self) -> &FgAbGroup {
        self.eta.gamma_group().group()
    }

    /// Replaces one map, keeping its ends; used to build perturbed sequences.
    pub fn with_map(&self, which: MapName, matrix: IntMatrix) -> Result<Self> {
        let mut s = self.clone();
        let slot = match which {
            MapName::B5 => &mut s.b5,
            MapName::I4 => &mut s.i4,
            MapName::H4 => &mut s.h4_map,
            MapName::B4 => &mut s.b4,
            MapName::H3 => &mut s.h3_map,
            MapName::J => &mut s.j,
            MapName::Q => &mut s.q,
        };
        *slot = Homomorphism::new(slot.source().clone(), slot.target().clone(), matrix)?;
        Ok(s)
    }

    pub fn map(&self, which: MapName) -> &Homomorphism {
        match which {
            MapName::B5 => &self.b5,
            MapName::I4 => &self.i4,
            MapName::H4 => &self.h4_map,
            MapName::B4 => &self.b4,
            MapName::H3 => &self.h3_map,
            MapName::J => &self.j,
            MapName::Q => &self.q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapName {
    B5,
    I4,
    H4,
    B4,
    H3,
    J,
    Q,
}

pub const ALL_MAPS: [MapName; 7] = [
    MapName::B5,
    MapName::I4,
    MapName::H4,
    MapName::B4,
    MapName::H3,
    MapName::J,
    MapName::Q,
];

/// The conditions checked by [`validate_gamma_sequence`], in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    H5Free,
    ExactAtGamma4,
    ExactAtPi4,
    ExactAtH4,
    ExactAtGammaPi2,
    ExactAtPi3,
    H3Surjective,
    JInjective,
    QSurjective,
    ExactAtGamma4Short,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let s = match self {
            Check::H5Free => "H5 is free",
            Check::ExactAtGamma4 => "exact at Gamma4",
            Check::ExactAtPi4 => "exact at pi4",
            Check::ExactAtH4 => "exact at H4",
            Check::ExactAtGammaPi2 => "exact at Gamma(pi2)",
            Check::ExactAtPi3 => "exact at pi3",
            Check::H3Surjective => "h3 onto H3",
            Check::JInjective => "j injective",
            Check::QSurjective => "q surjective",
            Check::ExactAtGamma4Short => "im j = ker q",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub passed: Vec<Check>,
    pub failure: Option<(Check, String)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

fn exact_at(f: &Homomorphism, g: &Homomorphism) -> std::result::Result<(), String> {
    let im = f.image_subgroup();
    let ker = g.kernel_subgroup();
    if !f.then(g).map(|c| c.is_zero()).unwrap_or(false) || !im.is_subset_of(&ker) {
        return Err("the composite is not zero".into());
    }
    if !ker.is_subset_of(&im) {
        return Err(format!(
            "image {} is smaller than kernel {}",
            im.invariants(),
            ker.invariants()
        ));
    }
    Ok(())
}

type CheckFn<'a> = Box<dyn Fn() -> std::result::Result<(), String> + 'a>;

/// Checks freeness of `H₅`, exactness at every interior node, surjectivity
/// of `h₃` and the short exact sequence, stopping at the first failure.
pub fn validate_gamma_sequence(seq: &GammaSequence) -> ValidationReport {
    let eta = seq.eta.linearization();
    let checks: [(Check, CheckFn); 10] = [
        (
            Check::H5Free,
            Box::new(|| {
                if seq.h5.is_free() {
                    Ok(())
                } else {
                    Err(format!("H5 = {} has torsion", seq.h5))
                }
            }),
        ),
        (Check::ExactAtGamma4, Box::new(|| exact_at(&seq.b5, &seq.i4))),
        (Check::ExactAtPi4, Box::new(|| exact_at(&seq.i4, &seq.h4_map))),
        (Check::ExactAtH4, Box::new(|| exact_at(&seq.h4_map, &seq.b4))),
        (Check::ExactAtGammaPi2, Box::new(|| exact_at(&seq.b4, eta))),
        (Check::ExactAtPi3, Box::new(|| exact_at(eta, &seq.h3_map))),
        (
            Check::H3Surjective,
            Box::new(|| {
                if seq.h3_map.is_surjective() {
                    Ok(())
                } else {
                    Err("h3 misses part of H3".into())
                }
            }),
        ),
        (
            Check::JInjective,
            Box::new(|| {
                if seq.j.is_injective() {
                    Ok(())
                } else {
                    Err(format!("ker j = {}", seq.j.kernel_subgroup().invariants()))
                }
            }),
        ),
        (
            Check::QSurjective,
            Box::new(|| {
                if seq.q.is_surjective() {
                    Ok(())
                } else {
                    Err("q misses part of Gamma T(pi2)".into())
                }
            }),
        ),
        (Check::ExactAtGamma4Short, Box::new(|| exact_at(&seq.j, &seq.q))),
    ];
    let mut report = ValidationReport {
        passed: Vec::new(),
        failure: None,
    };
    for (check, run) in checks.iter() {
        if let Err(msg) = run() {
            report.failure = Some((*check, msg));
            break;
        }
        report.passed.push(*check);
    }
    report
}

/// `[π₃, y]` inside `Γ²₂(η)` and its image in `π₄`.
#[derive(Clone, Debug)]
pub struct BracketSubgroup {
    pub in_gamma22: Subgroup,
    pub in_pi4: Subgroup,
}

/// The image of `π₃ ⊗ ⟨y⟩ -> π₃ ⊗ π₂ -> Γ²₂(η) -> Γ₄ -> π₄`.
pub fn bracket_subgroup(seq: &GammaSequence, y: &Element) -> Result<BracketSubgroup> {
    y.check_member(&seq.pi2)?;
    let classes: Vec<Element> = seq
        .pi3
        .generators()
        .iter()
        .map(|a| seq.gamma22.tensor_class(a, y))
        .collect::<Result<_>>()?;
    let images: Vec<Element> = classes
        .iter()
        .map(|x| seq.i4.apply(&seq.j.apply(x)?))
        .collect::<Result<_>>()?;
    Ok(BracketSubgroup {
        in_gamma22: Subgroup::new(&seq.gamma22.group, &classes)?,
        in_pi4: Subgroup::new(&seq.pi4, &images)?,
    })
}

#[derive(Clone, Debug)]
pub struct SequenceIsotropy {
    pub i_u: Subgroup,
    pub j_u: Subgroup,
    pub orbit_group: FgAbGroup,
}

/// `I_u = [π₃, w]`, `J_u = [π₃, w] + [π₃, u']` in `π₄`.
///
/// The hypothesis `[u', u''] = 0` for `u'' = w + u'` is not visible in the
/// sequence and is taken on trust from the caller.
pub fn isotropy_from_sequence(seq: &GammaSequence, w: &Element, u_prime: &Element) -> Result<SequenceIsotropy> {
    let i_u = bracket_subgroup(seq, w)?.in_pi4;
    let j_u = i_u.join(&bracket_subgroup(seq, u_prime)?.in_pi4)?;
    let orbit_group = j_u.quotient_of(&i_u)?.canonical().0;
    Ok(SequenceIsotropy {
        i_u,
        j_u,
        orbit_group,
    })
}

/// Order of a cyclic summand; `None` is infinite.
pub type CyclicOrder = Option<BigInt>;

pub fn parse_cyclic_order(s: &str) -> Result<CyclicOrder> {
    let s = s.trim();
    if matches!(s, "inf" | "infinite" | "Z" | "0") {
        return Ok(None);
    }
    let k: BigInt = s
        .parse()
        .map_err(|_| Error::Input(format!("not a cyclic order: {s:?}")))?;
    if k < BigInt::from(1) {
        return Err(Error::Input(format!("cyclic order must be positive or inf, got {k}")));
    }
    Ok(Some(k))
}

fn cyclic_of(order: &CyclicOrder) -> FgAbGroup {
    match order {
        None => FgAbGroup::free(1),
        Some(k) => FgAbGroup::cyclic(k.clone()),
    }
}

#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub seq: GammaSequence,
    pub w: Element,
    pub u_prime: Element,
    pub isotropy: SequenceIsotropy,
    pub validation: ValidationReport,
    /// `π₃ ⊗ ⟨w⟩`, `π₃ ⊗ (⟨w⟩ ⊕ ⟨u'⟩)`, `π₃ ⊗ ⟨u'⟩` computed independently.
    pub expected_i: FgAbGroup,
    pub expected_j: FgAbGroup,
    pub expected_orbit: FgAbGroup,
    pub nontrivial_action: bool,
    pub choices: Vec<&'static str>,
}

impl ExampleReport {
    pub fn matches_tensor_formulas(&self) -> bool {
        self.isotropy.i_u.invariants() == *self.expected_i.invariants()
            && self.isotropy.j_u.invariants() == *self.expected_j.invariants()
            && self.isotropy.orbit_group.invariants() == self.expected_orbit.invariants()
    }
}

pub const EXAMPLE_CHOICES: [&str; 5] = [
    "eta = 0 and H5 = 0",
    "Gamma4 = Gamma22(0) + Gamma T(pi2), j = inclusion, q = projection",
    "pi4 = Gamma4 with i4 = identity, h4 = 0",
    "H4 = Gamma(pi2) with b4 = identity",
    "H3 = pi3 with h3 = identity",
];

/// A sequence with `π₂ = π₂' ⊕ ⟨w⟩ ⊕ ⟨u'⟩`, `η = 0`, `H₅ = 0`, filled minimally.
pub fn nontrivial_action_example(
    pi2_prime: &FgAbGroup,
    w_order: &CyclicOrder,
    u_order: &CyclicOrder,
    pi3: &FgAbGroup,
) -> Result<ExampleReport> {
    let w_group = cyclic_of(w_order);
    let u_group = cyclic_of(u_order);
    let pi2_sum = direct_sum_of(&[pi2_prime.clone(), w_group.clone(), u_group.clone()]);
    let pi2 = pi2_sum.group.clone();
    let w = pi2_sum.inject(1, &w_group.generator(0))?;
    let u_prime = pi2_sum.inject(2, &u_group.generator(0))?;

    let eta = QuadraticMap::zero(&pi2, pi3);
    let g22 = gamma22(&eta, &PairPolicy::Exhaustive)?;
    let gamma_t = gamma_torsion(&pi2);
    let g4 = direct_sum(&g22.group, &gamma_t);
    let gamma4 = g4.group.clone();
    let gpi2 = eta.gamma_group().group().clone();
    let h5 = FgAbGroup::trivial();

    let maps = SequenceMaps {
        b5: Homomorphism::zero(&h5, &gamma4).matrix().clone(),
        i4: Homomorphism::identity(&gamma4).matrix().clone(),
        h4: Homomorphism::zero(&gamma4, &gpi2).matrix().clone(),
        b4: Homomorphism::identity(&gpi2).matrix().clone(),
        h3: Homomorphism::identity(pi3).matrix().clone(),
        j: g4.injection(0).matrix().clone(),
        q: g4.projection(1).matrix().clone(),
    };
    let seq = GammaSequence::new(
        pi3.clone(),
        gpi2.clone(),
        h5,
        gamma4.clone(),
        eta,
        gamma4,
        maps,
        &PairPolicy::Exhaustive,
    )?;
    let validation = validate_gamma_sequence(&seq);
    let isotropy = isotropy_from_sequence(&seq, &w, &u_prime)?;

    let expected_i = tensor_product(pi3, &w_group).group;
    let expected_j = tensor_product(pi3, &direct_sum(&w_group, &u_group).group).group;
    let expected_orbit = tensor_product(pi3, &u_group).group;
    let nontrivial_action = !isotropy.orbit_group.is_trivial();
    Ok(ExampleReport {
        seq,
        w,
        u_prime,
        isotropy,
        validation,
        expected_i,
        expected_j,
        expected_orbit,
        nontrivial_action,
        choices: EXAMPLE_CHOICES.to_vec(),
    })
}

/// Sequence file schema. `eta` is the matrix of `η□` on the basis of
/// `Γ(Z^k)`; `j` acts on `Γ²₂(η)` in the coordinates of
/// `π₃ ⊗ Z/2 ⊕ π₃ ⊗ π₂`; `q` lands in `ΓT(π₂)` in invariant-factor form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaSequenceJson {
    #[serde(rename = "H3")]
    pub h3_group: GroupJson,
    #[serde(rename = "H4")]
    pub h4_group: GroupJson,
    #[serde(rename = "H5")]
    pub h5_group: GroupJson,
    pub pi2: GroupJson,
    pub pi3: GroupJson,
    pub pi4: GroupJson,
    #[serde(rename = "Gamma4")]
    pub gamma4: GroupJson,
    pub eta: HomJson,
    pub b5: HomJson,
    pub i4: HomJson,
    pub h4: HomJson,
    pub b4: HomJson,
    pub h3: HomJson,
    pub j: HomJson,
    pub q: HomJson,
    /// Pairs generating `M(η)` when `π₂` is infinite and `η ≠ 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_pairs: Option<Vec<[ElementJson; 2]>>,
}

impl GammaSequenceJson {
    pub fn to_sequence(&self) -> Result<GammaSequence> {
        let pi2 = self.pi2.to_group()?;
        let pi3 = self.pi3.to_group()?;
        let h3 = self.h3_group.to_group()?;
        let h4 = self.h4_group.to_group()?;
        let h5 = self.h5_group.to_group()?;
        let pi4 = self.pi4.to_group()?;
        let gamma4 = self.gamma4.to_group()?;
        let gamma_len = crate::gamma::GammaFreeBasis::new(pi2.ambient_rank()).len();
        let eta = QuadraticMap::new(&pi2, &pi3, self.eta.to_matrix(pi3.ambient_rank(), gamma_len)?)?;
        let policy = match &self.eta_pairs {
            None => PairPolicy::Exhaustive,
            Some(pairs) => PairPolicy::Sample {
                pairs: pairs
                    .iter()
                    .map(|[x, y]| Ok((x.in_group(&pi2)?, y.in_group(&pi2)?)))
                    .collect::<Result<_>>()?,
                generating: true,
            },
        };
        let g22_rank = pi3.ambient_rank() * (1 + pi2.ambient_rank());
        let gt_rank = gamma_torsion(&pi2).ambient_rank();
        let m = |j: &HomJson, rows: usize, cols: usize| j.to_matrix(rows, cols);
        let maps = SequenceMaps {
            b5: m(&self.b5, gamma4.ambient_rank(), h5.ambient_rank())?,
            i4: m(&self.i4, pi4.ambient_rank(), gamma4.ambient_rank())?,
            h4: m(&self.h4, h4.ambient_rank(), pi4.ambient_rank())?,
            b4: m(&self.b4, gamma_len, h4.ambient_rank())?,
            h3: m(&self.h3, h3.ambient_rank(), pi3.ambient_rank())?,
            j: m(&self.j, gamma4.ambient_rank(), g22_rank)?,
            q: m(&self.q, gt_rank, gamma4.ambient_rank())?,
        };
        GammaSequence::new(h3, h4, h5, pi4, eta, gamma4, maps, &policy)
    }
}

impl From<&GammaSequence> for GammaSequenceJson {
    fn from(s: &GammaSequence) -> Self {
        GammaSequenceJson {
            h3_group: (&s.h3).into(),
            h4_group: (&s.h4).into(),
            h5_group: (&s.h5).into(),
            pi2: (&s.pi2).into(),
            pi3: (&s.pi3).into(),
            pi4: (&s.pi4).into(),
            gamma4: (&s.gamma4).into(),
            eta: s.eta.linearization().into(),
            b5: (&s.b5).into(),
            i4: (&s.i4).into(),
            h4: (&s.h4_map).into(),
            b4: (&s.b4).into(),
            h3: (&s.h3_map).into(),
            j: (&s.j).into(),
            q: (&s.q).into(),
            eta_pairs: None,
        }
    }
}
