//! Homotopy data of spheres and the target descriptions built from it.
//!
//! The group values `π_{n+1}(S^n)`, `π_{2n}(S^n)` and the element
//! `[η_{n+1}, i_n]` are imported constants shipped in `data/spheres.json`
//! with citations; results that depend on them are flagged as table data.

use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{direct_sum, Element, FgAbGroup, Homomorphism, Subgroup};
use crate::json::{ElementJson, GroupJson};

pub const SUPPORTED: RangeInclusive<u32> = 2..=7;

const TABLE_JSON: &str = include_str!("../data/spheres.json");

/// Order of the Whitehead square `[i_n, i_n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IiOrder {
    Infinite,
    One,
    Two,
}

impl IiOrder {
    /// The cyclic group generated by `[i_n, i_n]`.
    pub fn cyclic_group(self) -> FgAbGroup {
        match self {
            IiOrder::Infinite => FgAbGroup::free(1),
            IiOrder::One => FgAbGroup::cyclic(1),
            IiOrder::Two => FgAbGroup::cyclic(2),
        }
    }

    /// Whether `k [i_n, i_n] = 0`.
    pub fn annihilates(self, k: &BigInt) -> bool {
        match self {
            IiOrder::Infinite => k.is_zero(),
            IiOrder::One => true,
            IiOrder::Two => (k % 2u32).is_zero(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IiOrderJson {
    Word(String),
    Number(u32),
}

impl IiOrderJson {
    fn parse(&self) -> Result<IiOrder> {
        match self {
            IiOrderJson::Word(w) if w == "inf" => Ok(IiOrder::Infinite),
            IiOrderJson::Number(1) => Ok(IiOrder::One),
            IiOrderJson::Number(2) => Ok(IiOrder::Two),
            _ => Err(Error::Input("ii_order must be \"inf\", 1 or 2".into())),
        }
    }
}

#[derive(Deserialize)]
struct EntryJson {
    n: u32,
    pi_n1: GroupJson,
    pi_2n: GroupJson,
    #[serde(default)]
    pi_2n_generators: Vec<String>,
    eta_bracket: ElementJson,
    ii_order: IiOrderJson,
    source: String,
}

#[derive(Deserialize)]
struct TableJson {
    version: u32,
    entries: Vec<EntryJson>,
}

#[derive(Clone, Debug)]
pub struct SphereData {
    pub n: u32,
    /// `π_{n+1}(S^n)`, generated by `η_{n+1}`.
    pub pi_n1: FgAbGroup,
    pub pi_2n: FgAbGroup,
    pub pi_2n_generators: Vec<String>,
    /// `[η_{n+1}, i_n] ∈ π_{2n}(S^n)`
    pub eta_bracket: Element,
    pub ii_order: IiOrder,
    pub source: String,
}

#[derive(Debug)]
pub struct SphereTable {
    pub version: u32,
    entries: Vec<SphereData>,
}

impl SphereTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TableJson = crate::json::parse(text)?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for e in raw.entries {
            let pi_2n = e.pi_2n.to_group()?;
            entries.push(SphereData {
                n: e.n,
                pi_n1: e.pi_n1.to_group()?,
                eta_bracket: e.eta_bracket.in_group(&pi_2n)?,
                pi_2n,
                pi_2n_generators: e.pi_2n_generators,
                ii_order: e.ii_order.parse()?,
                source: e.source,
            });
        }
        let table = SphereTable {
            version: raw.version,
            entries,
        };
        table.validate()?;
        Ok(table)
    }

    /// Checks the facts the table must satisfy.
    pub fn validate(&self) -> Result<()> {
        let bad = |n: u32, what: &str| Err(Error::Input(format!("sphere table n = {n}: {what}")));
        for n in SUPPORTED {
            let Some(e) = self.entries.iter().find(|e| e.n == n) else {
                return bad(n, "missing entry");
            };
            let expected_n1 = if n == 2 { "Z" } else { "Z/2" };
            if e.pi_n1.to_string() != expected_n1 || e.pi_n1.ambient_rank() != 1 {
                return bad(n, "π_{n+1}(S^n) must be Z (n = 2) or Z/2 (n ≥ 3) on one generator");
            }
            let bracket_zero = e.eta_bracket.is_zero();
            match n {
                2 | 3 if !bracket_zero => return bad(n, "[η, i] must vanish"),
                4 | 5 if bracket_zero => return bad(n, "[η, i] must be nonzero"),
                _ => {}
            }
            let ii = match n {
                _ if n % 2 == 0 => IiOrder::Infinite,
                1 | 3 | 7 => IiOrder::One,
                _ => IiOrder::Two,
            };
            if e.ii_order != ii {
                return bad(n, "order of [i_n, i_n] disagrees with n");
            }
            // [η, i] is bilinear in η, so it is killed by the order of η
            if !e.pi_n1.is_finite() {
                continue;
            }
            let k = e.pi_n1.order().expect("finite");
            if !e.eta_bracket.scale(&k).is_zero() {
                return bad(n, "[η, i] is not annihilated by the order of η");
            }
        }
        Ok(())
    }

    pub fn get(&self, n: u32) -> Result<&SphereData> {
        if !SUPPORTED.contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        self.entries
            .iter()
            .find(|e| e.n == n)
            .ok_or(Error::UnsupportedDimension(n))
    }
}

/// The shipped table, loaded and validated on first use.
pub fn table() -> &'static SphereTable {
    static TABLE: OnceLock<SphereTable> = OnceLock::new();
    TABLE.get_or_init(|| SphereTable::from_json(TABLE_JSON).expect("shipped sphere table is valid"))
}

pub fn sphere_data(n: u32) -> Result<&'static SphereData> {
    table().get(n)
}

/// `V_n = π_{2n}(S^n) / ⟨[η_{n+1}, i_n]⟩` with the projection.
/// Computed once per `n`, so elements from repeated calls share one group.
pub fn v_group(n: u32) -> Result<(FgAbGroup, Homomorphism)> {
    static CACHE: [OnceLock<(FgAbGroup, Homomorphism)>; 6] = [const { OnceLock::new() }; 6];
    let d = sphere_data(n)?;
    let slot = &CACHE[(n - SUPPORTED.start()) as usize];
    if let Some(v) = slot.get() {
        return Ok(v.clone());
    }
    let v = Subgroup::new(&d.pi_2n, std::slice::from_ref(&d.eta_bracket))?.quotient();
    Ok(slot.get_or_init(|| v).clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    Sphere,
    Product,
}

/// Marks targets whose data comes from the sphere table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Builtin {
    pub kind: BuiltinKind,
    pub ii_order: IiOrder,
}

/// Homotopy data of a target space `U` in dimensions `n`, `n+1`, `2n-1`, `2n`
/// together with the two Whitehead pairings.
#[derive(Clone, Debug)]
pub struct TargetData {
    pub n: u32,
    pub pi_n: FgAbGroup,
    pub pi_n1: FgAbGroup,
    pub pi_2n: FgAbGroup,
    pub pi_2n1: FgAbGroup,
    /// `p1n[a][j] = [α_a, g_j] ∈ π_{2n}` for generators `α_a` of `π_{n+1}`, `g_j` of `π_n`.
    pub p1n: Vec<Vec<Element>>,
    /// `pnn[i][j] = [g_i, g_j] ∈ π_{2n-1}`.
    pub pnn: Vec<Vec<Element>>,
    /// Sign of `(Σ²τ)*`.
    pub tau_sign: i32,
    pub builtin: Option<Builtin>,
}

impl TargetData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: u32,
        pi_n: FgAbGroup,
        pi_n1: FgAbGroup,
        pi_2n: FgAbGroup,
        pi_2n1: FgAbGroup,
        p1n: Vec<Vec<Element>>,
        pnn: Vec<Vec<Element>>,
        tau_sign: i32,
    ) -> Result<Self> {
        let t = TargetData {
            n,
            pi_n,
            pi_n1,
            pi_2n,
            pi_2n1,
            p1n,
            pnn,
            tau_sign,
            builtin: None,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn uses_table_data(&self) -> bool {
        self.builtin.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidTarget(what));
        if self.tau_sign != 1 && self.tau_sign != -1 {
            return bad(format!("tau_sign must be ±1, got {}", self.tau_sign));
        }
        let kn = self.pi_n.ambient_rank();
        let kn1 = self.pi_n1.ambient_rank();
        if self.p1n.len() != kn1 || self.p1n.iter().any(|r| r.len() != kn) {
            return bad(format!("P1n must be a {kn1}x{kn} table"));
        }
        if self.pnn.len() != kn || self.pnn.iter().any(|r| r.len() != kn) {
            return bad(format!("Pnn must be a {kn}x{kn} table"));
        }
        for e in self.p1n.iter().flatten() {
            e.check_member(&self.pi_2n)
                .or_else(|_| bad("P1n values must lie in π_2n".into()))?;
        }
        for e in self.pnn.iter().flatten() {
            e.check_member(&self.pi_2n1)
                .or_else(|_| bad("Pnn values must lie in π_2n-1".into()))?;
        }
        let sign = BigInt::from(if self.n.is_multiple_of(2) { 1 } else { -1 });
        for i in 0..kn {
            for j in 0..kn {
                if self.pnn[i][j] != self.pnn[j][i].scale(&sign) {
                    return bad(format!("Pnn violates graded symmetry at ({i}, {j})"));
                }
            }
        }
        check_bilinear_table(&self.p1n, &self.pi_n1, &self.pi_n, "P1n")?;
        check_bilinear_table(&self.pnn, &self.pi_n, &self.pi_n, "Pnn")?;
        Ok(())
    }

    fn pair(table: &[Vec<Element>], zero: &Element, x: &Element, y: &Element) -> Element {
        let mut acc = zero.clone();
        for (a, xa) in x.coords().iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if !yj.is_zero() {
                    acc = &acc + &table[a][j].scale(&(xa * yj));
                }
            }
        }
        acc
    }

    /// `[α, x] ∈ π_{2n}` for `α ∈ π_{n+1}`, `x ∈ π_n`.
    pub fn p1n_eval(&self, alpha: &Element, x: &Element) -> Result<Element> {
        alpha.check_member(&self.pi_n1)?;
        x.check_member(&self.pi_n)?;
        Ok(Self::pair(&self.p1n, &self.pi_2n.zero(), alpha, x))
    }

    /// `[x, y] ∈ π_{2n-1}` for `x, y ∈ π_n`.
    pub fn pnn_eval(&self, x: &Element, y: &Element) -> Result<Element> {
        x.check_member(&self.pi_n)?;
        y.check_member(&self.pi_n)?;
        Ok(Self::pair(&self.pnn, &self.pi_2n1.zero(), x, y))
    }
}

/// Both slots of a generator table must respect the relations of their groups.
#[allow(clippy::needless_range_loop)]
fn check_bilinear_table(
    table: &[Vec<Element>],
    left: &FgAbGroup,
    right: &FgAbGroup,
    name: &str,
) -> Result<()> {
    for r in left.relations().columns() {
        for j in 0..right.ambient_rank() {
            let mut acc = table[0][j].group().zero();
            for (a, ra) in r.iter().enumerate() {
                acc = &acc + &table[a][j].scale(ra);
            }
            if !acc.is_zero() {
                return Err(Error::InvalidTarget(format!(
                    "{name} is not well defined on the first factor's relations"
                )));
            }
        }
    }
    for s in right.relations().columns() {
        for row in table {
            let mut acc = row[0].group().zero();
            for (j, sj) in s.iter().enumerate() {
                acc = &acc + &row[j].scale(sj);
            }
            if !acc.is_zero() {
                return Err(Error::InvalidTarget(format!(
                    "{name} is not well defined on the second factor's relations"
                )));
            }
        }
    }
    Ok(())
}

fn tau_sign_for(n: u32) -> i32 {
    if n % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Built-in target `S^n`. `π_{2n-1}` is modelled by the cyclic subgroup
/// generated by `[i_n, i_n]`, which is all the realizability test needs.
pub fn target_sphere(n: u32) -> Result<TargetData> {
    let d = sphere_data(n)?;
    let pi_2n1 = d.ii_order.cyclic_group();
    let ii = pi_2n1.generator(0);
    Ok(TargetData {
        n,
        pi_n: FgAbGroup::free(1),
        pi_n1: d.pi_n1.clone(),
        pi_2n: d.pi_2n.clone(),
        pi_2n1,
        p1n: vec![vec![d.eta_bracket.clone()]],
        pnn: vec![vec![ii]],
        tau_sign: tau_sign_for(n),
        builtin: Some(Builtin {
            kind: BuiltinKind::Sphere,
            ii_order: d.ii_order,
        }),
    })
}

/// Built-in target `S^n x S^n`: every group doubled, pairings componentwise,
/// mixed components zero.
pub fn target_sphere_product(n: u32) -> Result<TargetData> {
    let d = sphere_data(n)?;
    let single = target_sphere(n)?;
    let pi_n = direct_sum(&single.pi_n, &single.pi_n);
    let pi_n1 = direct_sum(&single.pi_n1, &single.pi_n1);
    let pi_2n = direct_sum(&single.pi_2n, &single.pi_2n);
    let pi_2n1 = direct_sum(&single.pi_2n1, &single.pi_2n1);

    let kn = single.pi_n.ambient_rank();
    let kn1 = single.pi_n1.ambient_rank();
    let mut p1n = vec![vec![pi_2n.group.zero(); 2 * kn]; 2 * kn1];
    let mut pnn = vec![vec![pi_2n1.group.zero(); 2 * kn]; 2 * kn];
    for c in 0..2 {
        for a in 0..kn1 {
            for j in 0..kn {
                p1n[c * kn1 + a][c * kn + j] = pi_2n.inject(c, &single.p1n[a][j])?;
            }
        }
        for i in 0..kn {
            for j in 0..kn {
                pnn[c * kn + i][c * kn + j] = pi_2n1.inject(c, &single.pnn[i][j])?;
            }
        }
    }
    Ok(TargetData {
        n,
        pi_n: pi_n.group,
        pi_n1: pi_n1.group,
        pi_2n: pi_2n.group,
        pi_2n1: pi_2n1.group,
        p1n,
        pnn,
        tau_sign: tau_sign_for(n),
        builtin: Some(Builtin {
            kind: BuiltinKind::Product,
            ii_order: d.ii_order,
        }),
    })
}

/// Target data file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetJson {
    pub n: u32,
    pub pi_n: GroupJson,
    pub pi_n1: GroupJson,
    pub pi_2n: GroupJson,
    pub pi_2n1: GroupJson,
    #[serde(rename = "P1n")]
    pub p1n: Vec<Vec<ElementJson>>,
    #[serde(rename = "Pnn")]
    pub pnn: Vec<Vec<ElementJson>>,
    pub tau_sign: i32,
}

impl TargetJson {
    pub fn to_target(&self) -> Result<TargetData> {
        let pi_n = self.pi_n.to_group()?;
        let pi_n1 = self.pi_n1.to_group()?;
        let pi_2n = self.pi_2n.to_group()?;
        let pi_2n1 = self.pi_2n1.to_group()?;
        let table = |rows: &[Vec<ElementJson>], g: &FgAbGroup| -> Result<Vec<Vec<Element>>> {
            rows.iter()
                .map(|r| r.iter().map(|e| e.in_group(g)).collect())
                .collect()
        };
        let p1n = table(&self.p1n, &pi_2n)?;
        let pnn = table(&self.pnn, &pi_2n1)?;
        TargetData::new(self.n, pi_n, pi_n1, pi_2n, pi_2n1, p1n, pnn, self.tau_sign)
    }
}

impl From<&TargetData> for TargetJson {
    fn from(t: &TargetData) -> Self {
        let table = |rows: &[Vec<Element>]| rows.iter().map(|r| r.iter().map(ElementJson::from).collect()).collect();
        TargetJson {
            n: t.n,
            pi_n: (&t.pi_n).into(),
            pi_n1: (&t.pi_n1).into(),
            pi_2n: (&t.pi_2n).into(),
            pi_2n1: (&t.pi_2n1).into(),
            p1n: table(&t.p1n),
            pnn: table(&t.pnn),
            tau_sign: t.tau_sign,
        }
    }
}

/// Generator of `π_n` used for `v = id` (sphere) or `v = diagonal` (product).
pub fn identity_class(target: &TargetData) -> Result<Element> {
    match target.builtin.map(|b| b.kind) {
        Some(BuiltinKind::Sphere) => Ok(target.pi_n.generator(0)),
        Some(BuiltinKind::Product) => {
            let ones = vec![BigInt::one(); target.pi_n.ambient_rank()];
            target.pi_n.element(ones)
        }
        None => Err(Error::Input(
            "the identity/diagonal class is only defined for built-in targets".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_loads_and_matches_known_values() {
        let t = table();
        assert_eq!(t.get(2).unwrap().pi_n1.to_string(), "Z");
        for n in 3..=7 {
            assert_eq!(t.get(n).unwrap().pi_n1.to_string(), "Z/2");
        }
        assert!(t.get(2).unwrap().eta_bracket.is_zero());
        assert!(t.get(3).unwrap().eta_bracket.is_zero());
        assert!(!t.get(4).unwrap().eta_bracket.is_zero());
        assert!(!t.get(5).unwrap().eta_bracket.is_zero());
        assert_eq!(t.get(6).unwrap().ii_order, IiOrder::Infinite);
        assert_eq!(t.get(7).unwrap().ii_order, IiOrder::One);
        assert_eq!(t.get(5).unwrap().ii_order, IiOrder::Two);
        assert!(matches!(t.get(8), Err(Error::UnsupportedDimension(8))));
        assert!(matches!(t.get(1), Err(Error::UnsupportedDimension(1))));
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let broken = TABLE_JSON.replacen("\"coords\": [0, 1]", "\"coords\": [0, 0]", 1);
        assert!(SphereTable::from_json(&broken).is_err());
        let broken = TABLE_JSON.replacen("\"ii_order\": 2", "\"ii_order\": 1", 1);
        assert!(SphereTable::from_json(&broken).is_err());
    }

    #[test]
    fn v_groups() {
        assert_eq!(v_group(2).unwrap().0.to_string(), "Z/2");
        assert_eq!(v_group(3).unwrap().0.to_string(), "Z/12");
        assert_eq!(v_group(4).unwrap().0.to_string(), "Z/2");
        assert!(v_group(5).unwrap().0.is_trivial());
        assert!(matches!(v_group(9), Err(Error::UnsupportedDimension(9))));
    }

    #[test]
    fn builtin_targets() {
        let s2 = target_sphere(2).unwrap();
        s2.validate().unwrap();
        assert_eq!(s2.pi_n1.to_string(), "Z");
        assert_eq!(s2.pi_2n.to_string(), "Z/2");
        assert!(s2.p1n_eval(&s2.pi_n1.generator(0), &s2.pi_n.generator(0)).unwrap().is_zero());

        let p4 = target_sphere_product(4).unwrap();
        p4.validate().unwrap();
        let e1 = p4.pi_n.element_i64(&[1, 0]).unwrap();
        let e2 = p4.pi_n.element_i64(&[0, 1]).unwrap();
        assert!(p4.pnn_eval(&e1, &e2).unwrap().is_zero());
        assert!(!p4.pnn_eval(&e1, &e1).unwrap().is_zero());

        assert_eq!(sphere_data(6).unwrap().ii_order, IiOrder::Infinite);
        for n in SUPPORTED {
            let t = target_sphere(n).unwrap();
            t.validate().unwrap();
            target_sphere_product(n).unwrap().validate().unwrap();
            assert_eq!(t.tau_sign, if n % 2 == 1 { 1 } else { -1 });
        }
    }

    #[test]
    fn user_targets_are_validated() {
        let z2 = FgAbGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        // [g, g] = 1 in Z violates 2g = 0 on π_n = Z/2.
        let err = TargetData::new(
            3,
            z2.clone(),
            z2.clone(),
            z2.clone(),
            z.clone(),
            vec![vec![z2.zero()]],
            vec![vec![z.generator(0)]],
            1,
        );
        assert!(matches!(err, Err(Error::InvalidTarget(_))));
        let err = TargetData::new(
            3,
            z.clone(),
            z2.clone(),
            z2.clone(),
            z.clone(),
            vec![vec![z2.zero()]],
            vec![vec![z.zero()]],
            0,
        );
        assert!(matches!(err, Err(Error::InvalidTarget(_))));
    }

    #[test]
    fn target_json_round_trip() {
        let t = target_sphere_product(4).unwrap();
        let text = serde_json::to_string(&TargetJson::from(&t)).unwrap();
        let back = crate::json::parse::<TargetJson>(&text).unwrap().to_target().unwrap();
        assert_eq!(back.pi_2n.invariants(), t.pi_2n.invariants());
        assert_eq!(back.tau_sign, -1);
    }
}
