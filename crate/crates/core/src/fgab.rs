//! Finitely generated abelian groups presented by integer relation matrices.
//!
//! A group is `Z^k / L` where `k` is the ambient rank and `L` is the lattice
//! spanned by the relation columns. Elements carry ambient coordinates;
//! equality is membership of the difference in `L`, decided through the
//! Smith form cached at construction.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix, SmithForm};

/// Invariant-factor form `Z^r + Z/d1 + ... + Z/dk` with `2 <= d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Invariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

struct Inner {
    relations: IntMatrix,
    invariants: Invariants,
    basis_change: IntMatrix,
    basis_inverse: IntMatrix,
    /// SNF index of each free canonical coordinate.
    free_positions: Vec<usize>,
    /// SNF index and modulus of each torsion canonical coordinate.
    torsion_positions: Vec<(usize, BigInt)>,
}

/// An immutable finitely generated abelian group. Cloning is cheap.
#[derive(Clone)]
pub struct FgAbGroup {
    inner: Arc<Inner>,
}

impl FgAbGroup {
    /// `Z^ambient_rank` modulo the span of the columns of `relations`.
    pub fn new(ambient_rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ambient_rank {
            return Err(Error::Presentation(format!(
                "relation matrix has {} rows but ambient rank is {}",
                relations.rows(),
                ambient_rank
            )));
        }
        let snf = smith_normal_form(&relations);
        let mut free_positions = Vec::new();
        let mut torsion_positions = Vec::new();
        for i in 0..ambient_rank {
            if i < snf.rank {
                let d = snf.s[(i, i)].clone();
                if !d.is_one() {
                    torsion_positions.push((i, d));
                }
            } else {
                free_positions.push(i);
            }
        }
        let invariants = Invariants {
            free_rank: free_positions.len(),
            torsion: torsion_positions.iter().map(|(_, d)| d.clone()).collect(),
        };
        Ok(FgAbGroup {
            inner: Arc::new(Inner {
                relations,
                invariants,
                basis_change: snf.u,
                basis_inverse: snf.u_inv,
                free_positions,
                torsion_positions,
            }),
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("free presentation")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/order`; `order = 0` gives `Z`.
    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        let order = order.into();
        if order.is_zero() {
            return Self::free(1);
        }
        Self::new(1, IntMatrix::from_rows(1, 1, &[vec![order]])).expect("cyclic presentation")
    }

    /// Diagonal presentation `Z/d1 + ... + Z/dk` where `di = 0` stands for `Z`.
    pub fn from_diagonal(orders: &[BigInt]) -> Self {
        let k = orders.len();
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); k];
                c[i] = d.clone();
                c
            })
            .collect();
        Self::new(k, IntMatrix::from_columns(k, &cols)).expect("diagonal presentation")
    }

    pub fn from_invariants(inv: &Invariants) -> Self {
        let mut orders = vec![BigInt::zero(); inv.free_rank];
        orders.extend(inv.torsion.iter().cloned());
        Self::from_diagonal(&orders)
    }

    pub fn ambient_rank(&self) -> usize {
        self.inner.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.inner.relations
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inner.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.invariants.is_trivial()
    }

    pub fn is_finite(&self) -> bool {
        self.inner.invariants.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.inner.invariants.torsion.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.inner.invariants.order()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariants() == other.invariants()
    }

    /// Same ambient rank and literally the same relation matrix.
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.relations == other.inner.relations
    }

    fn check_len(&self, coords: &[BigInt]) -> Result<()> {
        if coords.len() != self.ambient_rank() {
            return Err(Error::ForeignElement(format!(
                "expected {} coordinates, got {}",
                self.ambient_rank(),
                coords.len()
            )));
        }
        Ok(())
    }

    /// Coordinates in the invariant-factor basis: free coordinates first,
    /// then torsion coordinates reduced into `0..d`.
    pub fn canonical_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let z = self.inner.basis_change.mul_vec(coords);
        let mut out: Vec<BigInt> = self.inner.free_positions.iter().map(|&i| z[i].clone()).collect();
        out.extend(self.inner.torsion_positions.iter().map(|(i, d)| z[*i].mod_floor(d)));
        out
    }

    /// Inverse of [`canonical_coords`](Self::canonical_coords) up to relations.
    pub fn from_canonical_coords(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        let inv = &self.inner.invariants;
        assert_eq!(canonical.len(), inv.free_rank + inv.torsion.len());
        let mut z = vec![BigInt::zero(); self.ambient_rank()];
        for (c, &i) in canonical.iter().zip(&self.inner.free_positions) {
            z[i] = c.clone();
        }
        for (c, (i, _)) in canonical[inv.free_rank..].iter().zip(&self.inner.torsion_positions) {
            z[*i] = c.clone();
        }
        self.inner.basis_inverse.mul_vec(&z)
    }

    pub fn is_zero_coords(&self, coords: &[BigInt]) -> bool {
        let z = self.inner.basis_change.mul_vec(coords);
        self.inner.free_positions.iter().all(|&i| z[i].is_zero())
            && self
                .inner
                .torsion_positions
                .iter()
                .all(|(i, d)| z[*i].is_multiple_of(d))
    }

    /// Order of the element with the given ambient coordinates, `None` if infinite.
    pub fn order_of_coords(&self, coords: &[BigInt]) -> Option<BigInt> {
        let c = self.canonical_coords(coords);
        let r = self.inner.invariants.free_rank;
        if c[..r].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            c[r..]
                .iter()
                .zip(&self.inner.invariants.torsion)
                .fold(BigInt::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d)))),
        )
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<Element> {
        self.check_len(&coords)?;
        Ok(Element {
            group: self.clone(),
            coords,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(&self) -> Element {
        Element {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.ambient_rank()],
        }
    }

    /// The i-th ambient generator.
    pub fn generator(&self, i: usize) -> Element {
        let mut coords = vec![BigInt::zero(); self.ambient_rank()];
        coords[i] = BigInt::one();
        Element {
            group: self.clone(),
            coords,
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ambient_rank()).map(|i| self.generator(i)).collect()
    }

    /// Ambient coordinates of the canonical (invariant-factor) generators.
    pub fn canonical_generators(&self) -> Vec<Element> {
        let inv = &self.inner.invariants;
        let n = inv.free_rank + inv.torsion.len();
        (0..n)
            .map(|i| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = BigInt::one();
                Element {
                    group: self.clone(),
                    coords: self.from_canonical_coords(&c),
                }
            })
            .collect()
    }

    /// All elements of a finite group, in lexicographic order of canonical coordinates.
    pub fn elements(&self) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::InfiniteEnumeration(format!(
                "group {} is infinite",
                self.invariants()
            )));
        }
        let torsion = &self.inner.invariants.torsion;
        let mut out = Vec::new();
        let mut c = vec![BigInt::zero(); torsion.len()];
        loop {
            out.push(Element {
                group: self.clone(),
                coords: self.from_canonical_coords(&c),
            });
            // odometer increment, last coordinate fastest
            let mut k = torsion.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                c[k] += 1;
                if c[k] < torsion[k] {
                    break;
                }
                c[k] = BigInt::zero();
            }
        }
    }

    /// The invariant-factor presentation together with the isomorphism onto it.
    pub fn canonical(&self) -> (FgAbGroup, Homomorphism) {
        let target = Self::from_invariants(&self.inner.invariants);
        let rows: Vec<Vec<BigInt>> = self
            .inner
            .free_positions
            .iter()
            .chain(self.inner.torsion_positions.iter().map(|(i, _)| i))
            .map(|&i| self.inner.basis_change.row(i))
            .collect();
        let matrix = IntMatrix::from_rows(rows.len(), self.ambient_rank(), &rows);
        let iso = Homomorphism::new(self.clone(), target.clone(), matrix).expect("canonical isomorphism");
        (target, iso)
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FgAbGroup")
            .field("ambient_rank", &self.ambient_rank())
            .field("relations", &self.inner.relations)
            .field("invariants", &self.invariants().to_string())
            .finish()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariants())
    }
}

/// Parses `0`, `Z`, `Z^r`, `Z/d` factors joined by `x`, e.g. `Z^2 x Z/2 x Z/4`.
/// The result is a diagonal presentation; factors need not be canonical.
impl FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let bad = || Error::Input(format!("cannot parse group {s:?}"));
        let mut orders = Vec::new();
        for factor in s.split(['x', '+', '⊕']) {
            let factor = factor.trim();
            if factor == "0" {
                continue;
            }
            let rest = factor
                .strip_prefix('Z')
                .or_else(|| factor.strip_prefix('ℤ'))
                .ok_or_else(bad)?
                .trim();
            if rest.is_empty() {
                orders.push(BigInt::zero());
            } else if let Some(r) = rest.strip_prefix('^') {
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(d) = rest.strip_prefix('/') {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_negative() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_diagonal(&orders))
    }
}

/// An element of a presented group, stored by ambient coordinates.
#[derive(Clone)]
pub struct Element {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl Element {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_zero_coords(&self.coords)
    }

    pub fn canonical_coords(&self) -> Vec<BigInt> {
        self.group.canonical_coords(&self.coords)
    }

    /// The same class, written with reduced canonical coordinates.
    pub fn reduced(&self) -> Element {
        Element {
            group: self.group.clone(),
            coords: self.group.from_canonical_coords(&self.canonical_coords()),
        }
    }

    /// `None` for elements of infinite order.
    pub fn order(&self) -> Option<BigInt> {
        self.group.order_of_coords(&self.coords)
    }

    pub fn scale(&self, c: &BigInt) -> Element {
        Element {
            group: self.group.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Errors unless `self` lives in a group with the same presentation as `g`.
    pub fn check_member(&self, g: &FgAbGroup) -> Result<()> {
        if self.group.same_presentation(g) {
            Ok(())
        } else {
            Err(Error::ForeignElement(format!(
                "element of {} used in {}",
                self.group, g
            )))
        }
    }

    fn zip_with(&self, other: &Element, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Element {
        assert!(
            self.group.same_presentation(&other.group),
            "arithmetic on elements of different groups"
        );
        Element {
            group: self.group.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_presentation(&other.group) && (self - other).is_zero()
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?} in {}", self.coords, self.group)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            group: self.group.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// A homomorphism given by an integer matrix sending ambient generators of
/// the source to ambient vectors of the target.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl Homomorphism {
    /// Validates dimensions and that every source relation maps into the
    /// target relation lattice.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(Error::Presentation(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ambient_rank(),
                source.ambient_rank()
            )));
        }
        for (j, rel) in source.relations().columns().iter().enumerate() {
            let image = matrix.mul_vec(rel);
            if !target.is_zero_coords(&image) {
                return Err(Error::NotWellDefined(format!(
                    "source relation {j} maps to {image:?}, which is nonzero in {target}"
                )));
            }
        }
        Ok(Homomorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ambient_rank()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ambient_rank(), source.ambient_rank()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(coords)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.check_member(&self.source)?;
        Ok(Element {
            group: self.target.clone(),
            coords: self.matrix.mul_vec(&x.coords),
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same_presentation(&next.source) {
            return Err(Error::Presentation(format!(
                "cannot compose: target {} differs from source {}",
                self.target, next.source
            )));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: &next.matrix * &self.matrix,
        })
    }

    /// Pointwise equality on generators, modulo target relations.
    pub fn equals(&self, other: &Homomorphism) -> bool {
        self.source.same_presentation(&other.source)
            && self.target.same_presentation(&other.target)
            && (0..self.source.ambient_rank()).all(|j| {
                let d: Vec<BigInt> = self
                    .matrix
                    .column(j)
                    .iter()
                    .zip(other.matrix.column(j))
                    .map(|(a, b)| a - b)
                    .collect();
                self.target.is_zero_coords(&d)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix
            .columns()
            .iter()
            .all(|c| self.target.is_zero_coords(c))
    }

    /// The kernel as a subgroup of the source.
    pub fn kernel_subgroup(&self) -> Subgroup {
        let k = self.source.ambient_rank();
        let neg_rel = self.target.relations().scaled(&BigInt::from(-1));
        let snf = smith_normal_form(&self.matrix.hcat(&neg_rel));
        let basis = snf.kernel_basis().row_slice(0, k);
        Subgroup::from_matrix(self.source.clone(), basis)
    }

    /// The image as a subgroup of the target.
    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::from_matrix(self.target.clone(), self.matrix.clone())
    }

    pub fn kernel(&self) -> (FgAbGroup, Homomorphism) {
        self.kernel_subgroup().as_group()
    }

    pub fn image(&self) -> (FgAbGroup, Homomorphism) {
        self.image_subgroup().as_group()
    }

    pub fn cokernel(&self) -> (FgAbGroup, Homomorphism) {
        self.image_subgroup().quotient()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_subgroup().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }
}

/// A subgroup of `parent`, generated by the columns of `generators`
/// (ambient coordinates of the parent).
#[derive(Clone)]
pub struct Subgroup {
    parent: FgAbGroup,
    generators: IntMatrix,
    // SNF of [generators | parent relations]
    snf: OnceLock<SmithForm>,
}

impl Subgroup {
    pub fn from_matrix(parent: FgAbGroup, generators: IntMatrix) -> Self {
        assert_eq!(generators.rows(), parent.ambient_rank());
        Subgroup {
            parent,
            generators,
            snf: OnceLock::new(),
        }
    }

    pub fn new(parent: &FgAbGroup, elements: &[Element]) -> Result<Self> {
        for e in elements {
            e.check_member(parent)?;
        }
        let cols: Vec<Vec<BigInt>> = elements.iter().map(|e| e.coords.clone()).collect();
        Ok(Self::from_matrix(
            parent.clone(),
            IntMatrix::from_columns(parent.ambient_rank(), &cols),
        ))
    }

    pub fn trivial(parent: &FgAbGroup) -> Self {
        Self::from_matrix(parent.clone(), IntMatrix::zeros(parent.ambient_rank(), 0))
    }

    pub fn whole(parent: &FgAbGroup) -> Self {
        Self::from_matrix(parent.clone(), IntMatrix::identity(parent.ambient_rank()))
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators
            .columns()
            .into_iter()
            .map(|c| Element {
                group: self.parent.clone(),
                coords: c,
            })
            .collect()
    }

    fn snf(&self) -> &SmithForm {
        self.snf
            .get_or_init(|| smith_normal_form(&self.generators.hcat(self.parent.relations())))
    }

    /// Coefficients `c` with `sum c_i g_i == x` modulo parent relations.
    pub fn express(&self, coords: &[BigInt]) -> Option<Vec<BigInt>> {
        let sol = self.snf().solve(coords)?;
        Some(sol[..self.generators.cols()].to_vec())
    }

    pub fn contains_coords(&self, coords: &[BigInt]) -> bool {
        self.snf().solve(coords).is_some()
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        x.check_member(&self.parent)?;
        Ok(self.contains_coords(&x.coords))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent.same_presentation(&other.parent)
            && self
                .generators
                .columns()
                .iter()
                .all(|g| other.contains_coords(g))
    }

    pub fn equals(&self, other: &Subgroup) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators
            .columns()
            .iter()
            .all(|g| self.parent.is_zero_coords(g))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.parent.same_presentation(&other.parent) {
            return Err(Error::ForeignElement("join of subgroups of different groups".into()));
        }
        Ok(Self::from_matrix(
            self.parent.clone(),
            self.generators.hcat(&other.generators),
        ))
    }

    /// The subgroup as an abstract group on its generators, with the inclusion.
    pub fn as_group(&self) -> (FgAbGroup, Homomorphism) {
        let t = self.generators.cols();
        let relations = self.snf().kernel_basis().row_slice(0, t);
        let group = FgAbGroup::new(t, relations).expect("subgroup presentation");
        let inclusion = Homomorphism::new(group.clone(), self.parent.clone(), self.generators.clone())
            .expect("subgroup inclusion");
        (group, inclusion)
    }

    pub fn invariants(&self) -> Invariants {
        self.as_group().0.invariants().clone()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.invariants().order()
    }

    /// `parent / self` with the projection.
    pub fn quotient(&self) -> (FgAbGroup, Homomorphism) {
        let k = self.parent.ambient_rank();
        let group = FgAbGroup::new(k, self.parent.relations().hcat(&self.generators))
            .expect("quotient presentation");
        let projection = Homomorphism::new(self.parent.clone(), group.clone(), IntMatrix::identity(k))
            .expect("quotient projection");
        (group, projection)
    }

    /// `self / smaller`; fails unless `smaller` is contained in `self`.
    pub fn quotient_of(&self, smaller: &Subgroup) -> Result<FgAbGroup> {
        let (group, _) = self.as_group();
        let mut cols = Vec::with_capacity(smaller.generators.cols());
        for g in smaller.generators.columns() {
            let c = self.express(&g).ok_or_else(|| {
                Error::ForeignElement(format!("generator {g:?} is not in the larger subgroup"))
            })?;
            cols.push(c);
        }
        let lifted = IntMatrix::from_columns(group.ambient_rank(), &cols);
        Ok(Subgroup::from_matrix(group, lifted).quotient().0)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

/// `A ⊗ B` presented on generators `a_i ⊗ b_j`, indexed `i * rank(B) + j`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub group: FgAbGroup,
    pub left: FgAbGroup,
    pub right: FgAbGroup,
}

impl TensorProduct {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.ambient_rank() + j
    }

    pub fn pure_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(x * y);
            }
        }
        out
    }

    /// The element `a ⊗ b`.
    pub fn pure(&self, a: &Element, b: &Element) -> Result<Element> {
        a.check_member(&self.left)?;
        b.check_member(&self.right)?;
        self.group.element(self.pure_coords(&a.coords, &b.coords))
    }
}

pub fn tensor_product(a: &FgAbGroup, b: &FgAbGroup) -> TensorProduct {
    let (ka, kb) = (a.ambient_rank(), b.ambient_rank());
    let n = ka * kb;
    let mut cols = Vec::new();
    for r in a.relations().columns() {
        for j in 0..kb {
            let mut c = vec![BigInt::zero(); n];
            for i in 0..ka {
                c[i * kb + j] = r[i].clone();
            }
            cols.push(c);
        }
    }
    for s in b.relations().columns() {
        for i in 0..ka {
            let mut c = vec![BigInt::zero(); n];
            for j in 0..kb {
                c[i * kb + j] = s[j].clone();
            }
            cols.push(c);
        }
    }
    TensorProduct {
        group: FgAbGroup::new(n, IntMatrix::from_columns(n, &cols)).expect("tensor presentation"),
        left: a.clone(),
        right: b.clone(),
    }
}

/// `A_1 ⊕ ... ⊕ A_m` with block-diagonal relations.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub summands: Vec<FgAbGroup>,
    pub offsets: Vec<usize>,
}

impl DirectSum {
    pub fn inject_coords(&self, i: usize, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.group.ambient_rank()];
        out[self.offsets[i]..self.offsets[i] + coords.len()].clone_from_slice(coords);
        out
    }

    pub fn inject(&self, i: usize, x: &Element) -> Result<Element> {
        x.check_member(&self.summands[i])?;
        self.group.element(self.inject_coords(i, &x.coords))
    }

    pub fn component(&self, i: usize, x: &Element) -> Result<Element> {
        x.check_member(&self.group)?;
        let k = self.summands[i].ambient_rank();
        self.summands[i].element(x.coords[self.offsets[i]..self.offsets[i] + k].to_vec())
    }

    pub fn injection(&self, i: usize) -> Homomorphism {
        let k = self.summands[i].ambient_rank();
        let mut m = IntMatrix::zeros(self.group.ambient_rank(), k);
        for j in 0..k {
            m[(self.offsets[i] + j, j)] = BigInt::one();
        }
        Homomorphism::new(self.summands[i].clone(), self.group.clone(), m).expect("injection")
    }

    pub fn projection(&self, i: usize) -> Homomorphism {
        let k = self.summands[i].ambient_rank();
        let mut m = IntMatrix::zeros(k, self.group.ambient_rank());
        for j in 0..k {
            m[(j, self.offsets[i] + j)] = BigInt::one();
        }
        Homomorphism::new(self.group.clone(), self.summands[i].clone(), m).expect("projection")
    }
}

pub fn direct_sum_of(groups: &[FgAbGroup]) -> DirectSum {
    let n: usize = groups.iter().map(FgAbGroup::ambient_rank).sum();
    let mut offsets = Vec::with_capacity(groups.len());
    let mut cols = Vec::new();
    let mut off = 0;
    for g in groups {
        offsets.push(off);
        for r in g.relations().columns() {
            let mut c = vec![BigInt::zero(); n];
            c[off..off + r.len()].clone_from_slice(&r);
            cols.push(c);
        }
        off += g.ambient_rank();
    }
    DirectSum {
        group: FgAbGroup::new(n, IntMatrix::from_columns(n, &cols)).expect("direct sum presentation"),
        summands: groups.to_vec(),
        offsets,
    }
}

pub fn direct_sum(a: &FgAbGroup, b: &FgAbGroup) -> DirectSum {
    direct_sum_of(&[a.clone(), b.clone()])
}

pub fn subgroup_generated(g: &FgAbGroup, elements: &[Element]) -> Result<(FgAbGroup, Homomorphism)> {
    Ok(Subgroup::new(g, elements)?.as_group())
}

pub fn quotient_by(g: &FgAbGroup, elements: &[Element]) -> Result<(FgAbGroup, Homomorphism)> {
    Ok(Subgroup::new(g, elements)?.quotient())
}

pub fn groups_isomorphic(a: &FgAbGroup, b: &FgAbGroup) -> bool {
    a.is_isomorphic(b)
}

/// `ker(outgoing) / im(incoming)`; requires `outgoing ∘ incoming = 0`.
pub fn homology(incoming: &Homomorphism, outgoing: &Homomorphism) -> Result<FgAbGroup> {
    if !incoming.target().same_presentation(outgoing.source()) {
        return Err(Error::Presentation("maps do not share a middle group".into()));
    }
    let kernel = outgoing.kernel_subgroup();
    kernel.quotient_of(&incoming.image_subgroup())
}
