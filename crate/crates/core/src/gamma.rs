//! Whitehead's quadratic functor `Γ`.
//!
//! `Γ(Z^r)` is free on `γ(e_1), ..., γ(e_r)` followed by the brackets
//! `[e_i, e_j]`, `i < j`, in lexicographic order. For a presented group
//! `A = coker(d: A_1 -> A_0)` we compute `Γ(A)` as the cokernel of
//! `δ₁ = (Γ(d), [d, 1])`, and the `Γ`-torsion as `ker δ₁ / im δ₂` where
//! `δ₂ = ([1, 1], -1 ⊗ d)` for an injective `d`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fgab::{
    direct_sum, direct_sum_of, homology, tensor_product, DirectSum, Element, FgAbGroup,
    Homomorphism, Subgroup, TensorProduct,
};
use crate::matrix::{smith_normal_form, IntMatrix};

/// Basis bookkeeping for `Γ(Z^r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaFreeBasis {
    rank: usize,
}

impl GammaFreeBasis {
    pub fn new(rank: usize) -> Self {
        GammaFreeBasis { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `r(r+1)/2`
    pub fn len(&self) -> usize {
        self.rank * (self.rank + 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.rank == 0
    }

    pub fn gamma_index(&self, k: usize) -> usize {
        k
    }

    /// Index of `[e_i, e_j]`; requires `i < j`.
    pub fn bracket_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.rank);
        let before: usize = (0..i).map(|a| self.rank - 1 - a).sum();
        self.rank + before + (j - i - 1)
    }

    pub fn label(&self, idx: usize) -> String {
        if idx < self.rank {
            return format!("γ(e{})", idx + 1);
        }
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.bracket_index(i, j) == idx {
                    return format!("[e{},e{}]", i + 1, j + 1);
                }
            }
        }
        panic!("index {idx} out of range for Γ(Z^{})", self.rank)
    }

    /// `γ(Σ a_k e_k) = Σ a_k² γ(e_k) + Σ_{k<l} a_k a_l [e_k, e_l]`
    pub fn expand_gamma(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rank);
        let mut out = vec![BigInt::zero(); self.len()];
        for k in 0..self.rank {
            out[k] = &x[k] * &x[k];
            for l in k + 1..self.rank {
                out[self.bracket_index(k, l)] = &x[k] * &x[l];
            }
        }
        out
    }

    /// Bilinear expansion of `[x, y]` with `[e_k, e_k] = 2γ(e_k)`.
    pub fn expand_bracket(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        let mut out = vec![BigInt::zero(); self.len()];
        for k in 0..self.rank {
            out[k] = BigInt::from(2) * &x[k] * &y[k];
            for l in k + 1..self.rank {
                out[self.bracket_index(k, l)] = &x[k] * &y[l] + &x[l] * &y[k];
            }
        }
        out
    }

    fn unit(&self, k: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.rank];
        e[k] = BigInt::one();
        e
    }
}

/// `Γ(A)` presented on the free basis of `Γ(Z^k)`, `k` the ambient rank of `A`.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    source: FgAbGroup,
    basis: GammaFreeBasis,
    group: FgAbGroup,
}

impl GammaGroup {
    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn basis(&self) -> GammaFreeBasis {
        self.basis
    }

    /// The universal quadratic map `γ: A -> Γ(A)`.
    pub fn gamma(&self, x: &Element) -> Result<Element> {
        x.check_member(&self.source)?;
        self.group.element(self.basis.expand_gamma(x.coords()))
    }

    /// `[x, y] = γ(x + y) - γ(x) - γ(y)`
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        x.check_member(&self.source)?;
        y.check_member(&self.source)?;
        self.group.element(self.basis.expand_bracket(x.coords(), y.coords()))
    }

    /// `Γ(h): Γ(A) -> Γ(B)` for `h: A -> B`, where `self = Γ(A)`.
    pub fn induced(&self, target: &GammaGroup, h: &Homomorphism) -> Result<Homomorphism> {
        if !h.source().same_presentation(&self.source) || !h.target().same_presentation(&target.source) {
            return Err(Error::Presentation("Γ(h): groups do not match h".into()));
        }
        let images: Vec<Vec<BigInt>> = (0..self.source.ambient_rank())
            .map(|i| h.matrix().column(i))
            .collect();
        let tb = target.basis;
        let mut cols = vec![Vec::new(); self.basis.len()];
        for i in 0..self.basis.rank() {
            cols[self.basis.gamma_index(i)] = tb.expand_gamma(&images[i]);
            for j in i + 1..self.basis.rank() {
                cols[self.basis.bracket_index(i, j)] = tb.expand_bracket(&images[i], &images[j]);
            }
        }
        Homomorphism::new(
            self.group.clone(),
            target.group.clone(),
            IntMatrix::from_columns(tb.len(), &cols),
        )
    }
}

pub fn gamma_group(a: &FgAbGroup) -> GammaGroup {
    let k = a.ambient_rank();
    let basis = GammaFreeBasis::new(k);
    let rels = a.relations().columns();
    let mut cols = Vec::new();
    // Γ(d) on γ(f_i) and [f_i, f_j]
    for (i, r) in rels.iter().enumerate() {
        cols.push(basis.expand_gamma(r));
        for s in &rels[i + 1..] {
            cols.push(basis.expand_bracket(r, s));
        }
    }
    // [d, 1] on f_i ⊗ e_l
    for r in &rels {
        for l in 0..k {
            cols.push(basis.expand_bracket(r, &basis.unit(l)));
        }
    }
    let group = FgAbGroup::new(basis.len(), IntMatrix::from_columns(basis.len(), &cols))
        .expect("Γ presentation");
    GammaGroup {
        source: a.clone(),
        basis,
        group,
    }
}

pub fn gamma_on_hom(h: &Homomorphism) -> Result<Homomorphism> {
    let gs = gamma_group(h.source());
    let gt = gamma_group(h.target());
    gs.induced(&gt, h)
}

/// Columns forming a basis of the relation lattice of `a` (an injective `d`).
fn relation_basis(a: &FgAbGroup) -> IntMatrix {
    let snf = smith_normal_form(a.relations());
    (a.relations() * &snf.v).column_slice(0, snf.rank)
}

/// The resolution maps `(δ₂, δ₁)` for the free resolution `d` of `a`.
#[allow(clippy::needless_range_loop)]
pub fn torsion_resolution_maps(a: &FgAbGroup) -> (Homomorphism, Homomorphism) {
    let d = relation_basis(a);
    let (k, s) = (d.rows(), d.cols());
    let b0 = GammaFreeBasis::new(k);
    let b1 = GammaFreeBasis::new(s);
    let dcol = d.columns();

    let gamma_a0 = FgAbGroup::free(b0.len());
    let middle = FgAbGroup::free(b1.len() + s * k);
    let a1a1 = FgAbGroup::free(s * s);

    let mut d1 = Vec::with_capacity(b1.len() + s * k);
    let mut gamma_cols = vec![Vec::new(); b1.len()];
    for i in 0..s {
        gamma_cols[b1.gamma_index(i)] = b0.expand_gamma(&dcol[i]);
        for j in i + 1..s {
            gamma_cols[b1.bracket_index(i, j)] = b0.expand_bracket(&dcol[i], &dcol[j]);
        }
    }
    d1.extend(gamma_cols);
    for di in &dcol {
        for l in 0..k {
            d1.push(b0.expand_bracket(di, &b0.unit(l)));
        }
    }
    let delta1 = Homomorphism::new(
        middle.clone(),
        gamma_a0,
        IntMatrix::from_columns(b0.len(), &d1),
    )
    .expect("δ₁ between free groups");

    let mut d2 = Vec::with_capacity(s * s);
    for i in 0..s {
        for j in 0..s {
            let mut c = b1.expand_bracket(&b1.unit(i), &b1.unit(j));
            c.resize(b1.len() + s * k, BigInt::zero());
            for l in 0..k {
                c[b1.len() + i * k + l] = -&dcol[j][l];
            }
            d2.push(c);
        }
    }
    let delta2 = Homomorphism::new(a1a1, middle.clone(), IntMatrix::from_columns(b1.len() + s * k, &d2))
        .expect("δ₂ between free groups");
    (delta2, delta1)
}

/// `ΓT(A) = ker δ₁ / im δ₂`, returned in its invariant-factor presentation.
pub fn gamma_torsion(a: &FgAbGroup) -> FgAbGroup {
    let (delta2, delta1) = torsion_resolution_maps(a);
    homology(&delta2, &delta1)
        .expect("δ₁ ∘ δ₂ = 0")
        .canonical()
        .0
}

/// A quadratic map `η: π₂ -> π₃` stored as its linearization `η^□: Γ(π₂) -> π₃`.
#[derive(Clone, Debug)]
pub struct QuadraticMap {
    gamma: GammaGroup,
    linear: Homomorphism,
}

impl QuadraticMap {
    /// `matrix` has one column per basis element of `Γ(Z^k)`, `k = rank(π₂)`.
    pub fn new(pi2: &FgAbGroup, pi3: &FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let gamma = gamma_group(pi2);
        let linear = Homomorphism::new(gamma.group().clone(), pi3.clone(), matrix)?;
        Ok(QuadraticMap { gamma, linear })
    }

    pub fn zero(pi2: &FgAbGroup, pi3: &FgAbGroup) -> Self {
        let gamma = gamma_group(pi2);
        let linear = Homomorphism::zero(gamma.group(), pi3);
        QuadraticMap { gamma, linear }
    }

    pub fn source(&self) -> &FgAbGroup {
        self.gamma.source()
    }

    pub fn target(&self) -> &FgAbGroup {
        self.linear.target()
    }

    pub fn gamma_group(&self) -> &GammaGroup {
        &self.gamma
    }

    pub fn linearization(&self) -> &Homomorphism {
        &self.linear
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_zero()
    }

    pub fn eval(&self, x: &Element) -> Result<Element> {
        self.linear.apply(&self.gamma.gamma(x)?)
    }

    /// `η(x + y) - η(x) - η(y)`
    pub fn cross_term(&self, x: &Element, y: &Element) -> Result<Element> {
        self.linear.apply(&self.gamma.bracket(x, y)?)
    }
}

/// How to choose pairs `(x, y)` when generating `M(η)`.
#[derive(Clone, Debug)]
pub enum PairPolicy {
    /// All pairs of a finite `π₂`.
    Exhaustive,
    /// An explicit list. `generating = true` asserts the list suffices;
    /// otherwise the result is only a lower bound.
    Sample {
        pairs: Vec<(Element, Element)>,
        generating: bool,
    },
}

/// `M(η)` inside `π₃ ⊗ Z/2 ⊕ π₃ ⊗ π₂`.
#[derive(Clone, Debug)]
pub struct MEta {
    /// `π₃ ⊗ Z/2`, realized as `π₃ / 2π₃` on the ambient generators of `π₃`.
    pub mod2: FgAbGroup,
    pub tensor: TensorProduct,
    pub ambient: DirectSum,
    pub subgroup: Subgroup,
    /// False when the generators came from a non-asserted sample.
    pub exact: bool,
}

impl MEta {
    pub fn as_group(&self) -> (FgAbGroup, Homomorphism) {
        self.subgroup.as_group()
    }
}

fn mod_two(pi3: &FgAbGroup) -> FgAbGroup {
    let k = pi3.ambient_rank();
    let twos = IntMatrix::identity(k).scaled(&BigInt::from(2));
    FgAbGroup::new(k, pi3.relations().hcat(&twos)).expect("π₃ ⊗ Z/2 presentation")
}

pub fn m_eta_subgroup(eta: &QuadraticMap, policy: &PairPolicy) -> Result<MEta> {
    let pi2 = eta.source();
    let pi3 = eta.target();
    let mod2 = mod_two(pi3);
    let tensor = tensor_product(pi3, pi2);
    let ambient = direct_sum(&mod2, &tensor.group);

    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    let mut exact = true;
    if !eta.is_zero() {
        let pairs: Vec<(Element, Element)> = match policy {
            PairPolicy::Exhaustive => {
                let els = pi2.elements().map_err(|_| {
                    Error::InfiniteEnumeration(format!(
                        "M(η) for infinite π₂ = {pi2} needs an explicit pair sample"
                    ))
                })?;
                els.iter()
                    .flat_map(|x| els.iter().map(move |y| (x.clone(), y.clone())))
                    .collect()
            }
            PairPolicy::Sample { pairs, generating } => {
                exact = *generating;
                for (x, y) in pairs {
                    x.check_member(pi2)?;
                    y.check_member(pi2)?;
                }
                pairs.clone()
            }
        };
        let zero2 = vec![BigInt::zero(); mod2.ambient_rank()];
        let mut singles: Vec<&Element> = Vec::new();
        for (x, y) in &pairs {
            for z in [x, y] {
                if !singles.iter().any(|s| s.coords() == z.coords()) {
                    singles.push(z);
                }
            }
        }
        // (ηx) ⊗ x
        for x in singles {
            let ex = eta.eval(x)?;
            let t = tensor.pure_coords(ex.coords(), x.coords());
            gens.push([zero2.clone(), t].concat());
        }
        // [x,y]'⊗1 + (ηx)⊗y + [y,x]'⊗x, with [x,y]' = η(x+y) - η(y)
        for (x, y) in &pairs {
            let exy = eta.eval(&(x + y))?;
            let xy_prime = &exy - &eta.eval(y)?;
            let yx_prime = &exy - &eta.eval(x)?;
            let ex = eta.eval(x)?;
            let a = tensor.pure_coords(ex.coords(), y.coords());
            let b = tensor.pure_coords(yx_prime.coords(), x.coords());
            let t: Vec<BigInt> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
            gens.push([xy_prime.coords().to_vec(), t].concat());
        }
    }
    let subgroup = Subgroup::from_matrix(
        ambient.group.clone(),
        IntMatrix::from_columns(ambient.group.ambient_rank(), &gens),
    );
    Ok(MEta {
        mod2,
        tensor,
        ambient,
        subgroup,
        exact,
    })
}

/// `Γ²₂(η) = (π₃ ⊗ Z/2 ⊕ π₃ ⊗ π₂) / M(η)`, sharing ambient coordinates with the sum.
#[derive(Clone, Debug)]
pub struct Gamma22 {
    pub group: FgAbGroup,
    pub m_eta: MEta,
}

impl Gamma22 {
    pub fn is_exact(&self) -> bool {
        self.m_eta.exact
    }

    /// The class of `a ⊗ y` for `a ∈ π₃`, `y ∈ π₂`.
    pub fn tensor_class(&self, a: &Element, y: &Element) -> Result<Element> {
        let t = self.m_eta.tensor.pure(a, y)?;
        let coords = self.m_eta.ambient.inject_coords(1, t.coords());
        self.group.element(coords)
    }

    /// The class of `a ⊗ 1` for `a ∈ π₃`.
    pub fn mod2_class(&self, a: &Element) -> Result<Element> {
        a.check_member(&self.m_eta.tensor.left)?;
        let coords = self.m_eta.ambient.inject_coords(0, a.coords());
        self.group.element(coords)
    }
}

pub fn gamma22(eta: &QuadraticMap, policy: &PairPolicy) -> Result<Gamma22> {
    let m_eta = m_eta_subgroup(eta, policy)?;
    let group = m_eta.subgroup.quotient().0;
    Ok(Gamma22 { group, m_eta })
}

/// `Γ(A) ⊕ Γ(B) ⊕ (A ⊗ B)`, the expected shape of `Γ(A ⊕ B)`.
pub fn gamma_sum_decomposition(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    direct_sum_of(&[
        gamma_group(a).group().clone(),
        gamma_group(b).group().clone(),
        tensor_product(a, b).group,
    ])
    .group
}
