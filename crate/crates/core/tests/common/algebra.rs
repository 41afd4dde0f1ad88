//! Property checks on the exact-algebra layer, shared by the test targets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use diagself::fgab::{direct_sum, direct_sum_of, tensor_product, FgAbGroup, Homomorphism};
use diagself::gamma::{gamma_group, gamma_on_hom, gamma_torsion};
use diagself::matrix::{smith_normal_form, IntMatrix};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let entries: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(rows, cols, &entries)
}

/// `U M V = S`, unimodularity, divisibility chain, rank-nullity, cokernel shape and solving.
pub fn check_snf(m: &IntMatrix, rng: &mut impl Rng) -> Result<(), String> {
    let f = smith_normal_form(m);
    let (r, c) = (m.rows(), m.cols());
    if &(&f.u * m) * &f.v != f.s {
        return Err(format!("U M V != S for {m}"));
    }
    if !f.u.determinant().abs().is_one() || !f.v.determinant().abs().is_one() {
        return Err(format!("U or V not unimodular for {m}"));
    }
    if &f.u * &f.u_inv != IntMatrix::identity(r) {
        return Err("U_inv is not the inverse of U".into());
    }
    for i in 0..r {
        for j in 0..c {
            let diag_ok = if i == j && i < f.rank {
                f.s[(i, j)].is_positive()
            } else {
                f.s[(i, j)].is_zero()
            };
            if !diag_ok {
                return Err(format!("S is not in normal shape at ({i},{j}) for {m}"));
            }
        }
    }
    let d = f.diagonal();
    for w in d.windows(2) {
        if !(&w[1] % &w[0]).is_zero() {
            return Err(format!("divisibility chain broken: {d:?}"));
        }
    }
    let k = f.kernel_basis();
    if f.rank + k.cols() != c {
        return Err("rank + nullity != cols".into());
    }
    if !(m * &k).is_zero() {
        return Err("kernel basis not in kernel".into());
    }
    if smith_normal_form(&k).diagonal().iter().any(|x| !x.is_one()) {
        return Err("kernel basis is not saturated".into());
    }
    let g = FgAbGroup::new(r, m.clone()).map_err(|e| e.to_string())?;
    let inv = g.invariants();
    if inv.free_rank != r - f.rank {
        return Err("cokernel free rank".into());
    }
    let torsion: Vec<BigInt> = d.iter().filter(|x| !x.is_one()).cloned().collect();
    if inv.torsion != torsion {
        return Err(format!("cokernel torsion {:?} vs {torsion:?}", inv.torsion));
    }
    let x: Vec<BigInt> = (0..c).map(|_| big(rng.gen_range(-9..=9))).collect();
    let b = m.mul_vec(&x);
    match f.solve(&b) {
        Some(y) if m.mul_vec(&y) == b => {}
        _ => return Err("solve failed on a consistent system".into()),
    }
    Ok(())
}

/// `Z/a ⊗ Z/b ≅ Z/gcd(a, b)` for `1 <= a, b <= max`.
pub fn check_tensor_gcd(max: i64) -> Result<(), String> {
    for a in 1..=max {
        for b in 1..=max {
            let t = tensor_product(&FgAbGroup::cyclic(a), &FgAbGroup::cyclic(b)).group;
            if !t.is_isomorphic(&FgAbGroup::cyclic(gcd(a, b))) {
                return Err(format!("Z/{a} (x) Z/{b} = {t}"));
            }
        }
    }
    let zz = tensor_product(&FgAbGroup::free(1), &FgAbGroup::cyclic(7)).group;
    if !zz.is_isomorphic(&FgAbGroup::cyclic(7)) {
        return Err("Z (x) Z/7".into());
    }
    Ok(())
}

/// `Γ(Z/m)` and `ΓT(Z/m)` for `2 <= m <= max`.
pub fn check_gamma_cyclic_table(max: i64) -> Result<(), String> {
    for m in 2..=max {
        let a = FgAbGroup::cyclic(m);
        let g = gamma_group(&a).group().clone();
        let want = if m % 2 == 0 { 2 * m } else { m };
        if !g.is_isomorphic(&FgAbGroup::cyclic(want)) {
            return Err(format!("Gamma(Z/{m}) = {g}"));
        }
        let t = gamma_torsion(&a);
        let want_t = if m % 2 == 0 { 2 } else { 1 };
        if !t.is_isomorphic(&FgAbGroup::cyclic(want_t)) {
            return Err(format!("Gamma T(Z/{m}) = {t}"));
        }
    }
    Ok(())
}

/// Value tables `f(a)` over the residues of a cyclic-product group.
type Table = Vec<u64>;

fn residues(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &o in orders {
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

fn index_of(orders: &[u64], x: &[u64]) -> usize {
    let mut i = 0usize;
    for (o, v) in orders.iter().zip(x) {
        i = i * *o as usize + *v as usize;
    }
    i
}

fn is_quadratic(orders: &[u64], els: &[Vec<u64>], f: &Table, n: u64) -> bool {
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter().zip(b).zip(orders).map(|((x, y), o)| (x + y) % o).collect()
    };
    let neg = |a: &[u64]| -> Vec<u64> { a.iter().zip(orders).map(|(x, o)| (o - x) % o).collect() };
    let val = |a: &[u64]| f[index_of(orders, a)];
    let cross = |a: &[u64], b: &[u64]| (val(&add(a, b)) + 2 * n - val(a) - val(b)) % n;
    if val(&vec![0; orders.len()]) != 0 {
        return false;
    }
    for a in els {
        if val(&neg(a)) != val(a) {
            return false;
        }
        for b in els {
            for c in els {
                if cross(&add(a, b), c) != (cross(a, c) + cross(b, c)) % n {
                    return false;
                }
            }
        }
    }
    true
}

/// Every quadratic map `A -> Z/n`, by direct enumeration.
fn quadratic_maps_brute(orders: &[u64], n: u64) -> BTreeSet<Table> {
    let els = residues(orders);
    let size = els.len();
    let mut out = BTreeSet::new();
    if size <= 4 {
        // all functions with f(0) = 0
        let total = n.pow(size as u32 - 1);
        for code in 0..total {
            let mut f = vec![0u64; size];
            let mut c = code;
            for v in f.iter_mut().skip(1) {
                *v = c % n;
                c /= n;
            }
            if is_quadratic(orders, &els, &f, n) {
                out.insert(f);
            }
        }
    } else {
        // cyclic: f(a + 1) = f(a) + f(1) + a * [1, 1] pins f down
        assert_eq!(orders.len(), 1, "large brute force only for cyclic groups");
        for s in 0..n {
            for c in 0..n {
                let mut f = vec![0u64; size];
                for a in 1..size {
                    f[a] = (f[a - 1] + s + (a as u64 - 1) * c) % n;
                }
                if is_quadratic(orders, &els, &f, n) {
                    out.insert(f);
                }
            }
        }
    }
    out
}

/// `Hom(Γ(A), Z/n) ∘ γ`, enumerated through the engine's presentation of `Γ(A)`.
fn quadratic_maps_engine(orders: &[u64], n: u64) -> Result<BTreeSet<Table>, String> {
    let d: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
    let a = FgAbGroup::from_diagonal(&d);
    let g = gamma_group(&a);
    let rank = g.group().ambient_rank();
    let rels = g.group().relations().columns();
    let gammas: Vec<Vec<BigInt>> = residues(orders)
        .iter()
        .map(|x| {
            let el = a.element(x.iter().map(|&v| BigInt::from(v)).collect()).unwrap();
            g.gamma(&el).unwrap().into_coords()
        })
        .collect();
    let nb = BigInt::from(n);
    let mut out = BTreeSet::new();
    let mut homs = 0usize;
    for code in 0..n.pow(rank as u32) {
        let mut t = Vec::with_capacity(rank);
        let mut c = code;
        for _ in 0..rank {
            t.push(BigInt::from(c % n));
            c /= n;
        }
        let dot = |v: &[BigInt]| -> BigInt {
            let s: BigInt = v.iter().zip(&t).map(|(x, y)| x * y).sum();
            ((s % &nb) + &nb) % &nb
        };
        if rels.iter().any(|r| !dot(r).is_zero()) {
            continue;
        }
        homs += 1;
        let f: Table = gammas.iter().map(|v| u64::try_from(dot(v)).unwrap()).collect();
        out.insert(f);
    }
    if homs != out.len() {
        return Err(format!("precomposition with gamma is not injective on {orders:?} -> Z/{n}"));
    }
    Ok(out)
}

/// Quadratic maps `A -> Z/n` correspond bijectively to `Hom(Γ(A), Z/n)` via `γ`.
pub fn check_universal_property(orders: &[u64], n: u64) -> Result<(), String> {
    let brute = quadratic_maps_brute(orders, n);
    let engine = quadratic_maps_engine(orders, n)?;
    if brute != engine {
        return Err(format!(
            "{orders:?} -> Z/{n}: {} quadratic maps, {} via Gamma",
            brute.len(),
            engine.len()
        ));
    }
    Ok(())
}

pub fn check_universal_property_suite() -> Result<(), String> {
    for m in 1..=6u64 {
        for n in 1..=12u64 {
            check_universal_property(&[m], n)?;
        }
    }
    for n in 1..=12u64 {
        check_universal_property(&[2, 2], n)?;
    }
    Ok(())
}

pub fn random_group(rng: &mut impl Rng) -> FgAbGroup {
    let k = rng.gen_range(1..=3usize);
    let s = rng.gen_range(0..=3usize);
    let cols: Vec<Vec<BigInt>> = (0..s)
        .map(|_| (0..k).map(|_| big(rng.gen_range(-6..=6))).collect())
        .collect();
    FgAbGroup::new(k, IntMatrix::from_columns(k, &cols)).unwrap()
}

fn random_unimodular(rng: &mut impl Rng, k: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(k);
    if k < 2 {
        if rng.gen_bool(0.5) {
            p[(0, 0)] = big(-1);
        }
        return p;
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k);
        while j == i {
            j = rng.gen_range(0..k);
        }
        let c = big(rng.gen_range(-3..=3));
        for col in 0..k {
            let v = &p[(j, col)] * &c;
            p[(i, col)] += v;
        }
    }
    p
}

/// A second presentation of `a`: changed basis, one redundant generator and one
/// redundant relation. Returns it with the isomorphism from `a`.
pub fn re_present(a: &FgAbGroup, rng: &mut impl Rng) -> (FgAbGroup, Homomorphism) {
    let k = a.ambient_rank();
    let p = random_unimodular(rng, k);
    let moved = &p * a.relations();
    let mut cols: Vec<Vec<BigInt>> = moved
        .columns()
        .into_iter()
        .map(|mut c| {
            c.push(BigInt::zero());
            c
        })
        .collect();
    // g_{k+1} = c . g
    let mut extra: Vec<BigInt> = (0..k).map(|_| big(rng.gen_range(-4..=4))).collect();
    extra.push(big(-1));
    cols.push(extra);
    if cols.len() >= 2 {
        let a0 = cols[0].clone();
        let a1 = cols[cols.len() - 1].clone();
        cols.push(a0.iter().zip(&a1).map(|(x, y)| x * 2 - y).collect());
    }
    let b = FgAbGroup::new(k + 1, IntMatrix::from_columns(k + 1, &cols)).unwrap();
    let mut rows = p.to_rows();
    rows.push(vec![BigInt::zero(); k]);
    let h = Homomorphism::new(a.clone(), b.clone(), IntMatrix::from_rows(k + 1, k, &rows)).unwrap();
    (b, h)
}

/// `Γ` and `ΓT` agree on two presentations, and `Γ` of the comparison map is an isomorphism.
pub fn check_resolution_independence(rng: &mut impl Rng) -> Result<(), String> {
    let a = random_group(rng);
    let (b, h) = re_present(&a, rng);
    if !(h.is_injective() && h.is_surjective()) {
        return Err(format!("comparison map {a} -> {b} is not an isomorphism"));
    }
    let gh = gamma_on_hom(&h).map_err(|e| e.to_string())?;
    if !(gh.is_injective() && gh.is_surjective()) {
        return Err(format!("Gamma(h) is not an isomorphism for {a}"));
    }
    if !gamma_group(&a).group().is_isomorphic(gamma_group(&b).group()) {
        return Err(format!("Gamma differs across presentations of {a}"));
    }
    if !gamma_torsion(&a).is_isomorphic(&gamma_torsion(&b)) {
        return Err(format!("Gamma T differs across presentations of {a}"));
    }
    Ok(())
}

/// `Γ(A ⊕ B) ≅ Γ(A) ⊕ Γ(B) ⊕ (A ⊗ B)`.
pub fn check_direct_sum(rng: &mut impl Rng) -> Result<(), String> {
    let a = random_group(rng);
    let b = random_group(rng);
    let lhs = gamma_group(&direct_sum(&a, &b).group).group().clone();
    let rhs = direct_sum_of(&[
        gamma_group(&a).group().clone(),
        gamma_group(&b).group().clone(),
        tensor_product(&a, &b).group,
    ])
    .group;
    if !lhs.is_isomorphic(&rhs) {
        return Err(format!("Gamma({a} + {b}) = {lhs}, expected {rhs}"));
    }
    Ok(())
}

fn random_diagonal_group(rng: &mut impl Rng) -> FgAbGroup {
    let k = rng.gen_range(1..=2usize);
    let d: Vec<BigInt> = (0..k).map(|_| big([0, 2, 3, 4, 6][rng.gen_range(0..5)])).collect();
    FgAbGroup::from_diagonal(&d)
}

fn random_hom(a: &FgAbGroup, b: &FgAbGroup, rng: &mut impl Rng) -> Homomorphism {
    for _ in 0..50 {
        let rows: Vec<Vec<i64>> = (0..b.ambient_rank())
            .map(|_| (0..a.ambient_rank()).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let m = IntMatrix::from_rows(b.ambient_rank(), a.ambient_rank(), &rows);
        if let Ok(h) = Homomorphism::new(a.clone(), b.clone(), m) {
            return h;
        }
    }
    Homomorphism::zero(a, b)
}

/// `Γ(g f) = Γ(g) Γ(f)`, `Γ(1) = 1` and `Γ(f) γ = γ f` on elements.
pub fn check_functoriality(rng: &mut impl Rng) -> Result<(), String> {
    let (a, b, c) = (
        random_diagonal_group(rng),
        random_diagonal_group(rng),
        random_diagonal_group(rng),
    );
    let f = random_hom(&a, &b, rng);
    let g = random_hom(&b, &c, rng);
    let gf = gamma_on_hom(&f.then(&g).unwrap()).map_err(|e| e.to_string())?;
    let composed = gamma_on_hom(&f).unwrap().then(&gamma_on_hom(&g).unwrap()).unwrap();
    if !gf.equals(&composed) {
        return Err(format!("Gamma(g f) != Gamma(g) Gamma(f) on {a} -> {b} -> {c}"));
    }
    let ga = gamma_group(&a);
    if !gamma_on_hom(&Homomorphism::identity(&a))
        .unwrap()
        .equals(&Homomorphism::identity(ga.group()))
    {
        return Err(format!("Gamma(1) != 1 on {a}"));
    }
    let gb = gamma_group(&b);
    let gfh = gamma_on_hom(&f).unwrap();
    for _ in 0..5 {
        let coords: Vec<BigInt> = (0..a.ambient_rank()).map(|_| big(rng.gen_range(-5..=5))).collect();
        let x = a.element(coords).unwrap();
        let lhs = gfh.apply(&ga.gamma(&x).unwrap()).unwrap();
        let rhs = gb.gamma(&f.apply(&x).unwrap()).unwrap();
        if lhs != rhs {
            return Err(format!("naturality of gamma fails at {x} for {a} -> {b}"));
        }
    }
    Ok(())
}
