//! Free and bi-free moment/cumulant calculus over exact rationals.
//!
//! Mixed cumulants of distinct free copies vanish and a bi-free cumulant over
//! a block that mixes left and right operands vanishes; both are applied as
//! pruning rules here rather than derived. Scalars only contribute through
//! singleton blocks, where the order-one cumulant is the scalar itself.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bichromatic::{enumerate_bnc, BncPartition, ChiMap, Side};
use crate::error::{arg_err, Error, Result};
use crate::partitions::{enumerate_noncrossing, is_refinement, mobius_nc, SetPartition};
use crate::rational::{format_rational, parse_rational, Rational};

/// Moments `m_1, ..., m_K` of a single variable; `m_0 = 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MomentSeq(Vec<Rational>);

/// Free cumulants `κ_1, ..., κ_K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CumulantSeq(Vec<Rational>);

macro_rules! rational_seq {
    ($ty:ident, $what:literal) => {
        impl $ty {
            pub fn new(values: Vec<Rational>) -> Self {
                $ty(values)
            }

            /// Highest order held.
            pub fn order(&self) -> usize {
                self.0.len()
            }

            pub fn values(&self) -> &[Rational] {
                &self.0
            }

            /// Entry of order `k >= 1`.
            pub fn get(&self, k: usize) -> Result<&Rational> {
                if k == 0 || k > self.0.len() {
                    return Err(Error::InsufficientData { needed: k, available: self.0.len() });
                }
                Ok(&self.0[k - 1])
            }

            pub fn truncate(&self, k: usize) -> Self {
                $ty(self.0[..k.min(self.0.len())].to_vec())
            }

            pub fn to_json(&self) -> String {
                serde_json::to_string(self).expect("rational strings always serialize")
            }

            pub fn from_json(s: &str) -> Result<Self> {
                serde_json::from_str(s).map_err(|e| Error::Parse(format!(concat!("bad ", $what, " JSON: {}"), e)))
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                ser.collect_seq(self.0.iter().map(format_rational))
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
                let raw: Vec<String> = Vec::deserialize(de)?;
                raw.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
                    .map($ty)
                    .map_err(D::Error::custom)
            }
        }
    };
}

rational_seq!(MomentSeq, "moment sequence");
rational_seq!(CumulantSeq, "cumulant sequence");

impl MomentSeq {
    /// `m_k`, with `m_0 = 1`.
    pub fn moment(&self, k: usize) -> Result<Rational> {
        if k == 0 {
            return Ok(Rational::one());
        }
        self.get(k).cloned()
    }
}

/// Per block-size profile of `NC(n)`: how many partitions share it and the
/// sum of their `μ(π, 1_n)`.
struct NcShape {
    sizes: Vec<usize>,
    count: u64,
    mobius_sum: i64,
}

fn nc_shapes(n: usize, with_mobius: bool) -> Result<Arc<Vec<NcShape>>> {
    type ShapeCache = RwLock<HashMap<(usize, bool), Arc<Vec<NcShape>>>>;
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(s) = cache.read().expect("shape cache poisoned").get(&(n, with_mobius)) {
        return Ok(s.clone());
    }
    let top = SetPartition::full(n);
    let mut shapes: HashMap<Vec<usize>, (u64, i64)> = HashMap::new();
    for pi in enumerate_noncrossing(n) {
        let mut sizes = pi.block_sizes();
        sizes.sort_unstable();
        let mu = if with_mobius { mobius_nc(&pi, &top)? } else { 0 };
        let e = shapes.entry(sizes).or_insert((0, 0));
        e.0 += 1;
        e.1 += mu;
    }
    let mut list: Vec<NcShape> = shapes
        .into_iter()
        .map(|(sizes, (count, mobius_sum))| NcShape { sizes, count, mobius_sum })
        .collect();
    list.sort_by(|a, b| a.sizes.cmp(&b.sizes));
    let list = Arc::new(list);
    cache.write().expect("shape cache poisoned").insert((n, with_mobius), list.clone());
    Ok(list)
}

fn block_product(sizes: &[usize], values: &[Rational]) -> Rational {
    sizes.iter().fold(Rational::one(), |acc, &s| acc * &values[s - 1])
}

/// `κ_n = Σ_{π ∈ NC(n)} Π_{V ∈ π} m_{|V|} · μ(π, 1_n)`.
pub fn free_cumulants_from_moments(ms: &MomentSeq) -> Result<CumulantSeq> {
    let mut out = Vec::with_capacity(ms.order());
    for n in 1..=ms.order() {
        let shapes = nc_shapes(n, true)?;
        let mut kappa = Rational::zero();
        for shape in shapes.iter() {
            if shape.mobius_sum != 0 {
                kappa += block_product(&shape.sizes, ms.values()) * Rational::from_integer(shape.mobius_sum.into());
            }
        }
        out.push(kappa);
    }
    Ok(CumulantSeq(out))
}

/// `m_n = Σ_{π ∈ NC(n)} Π_{V ∈ π} κ_{|V|}`.
pub fn moments_from_free_cumulants(cs: &CumulantSeq) -> Result<MomentSeq> {
    let mut out = Vec::with_capacity(cs.order());
    for n in 1..=cs.order() {
        let shapes = nc_shapes(n, false)?;
        let mut m = Rational::zero();
        for shape in shapes.iter() {
            m += block_product(&shape.sizes, cs.values()) * Rational::from_integer(shape.count.into());
        }
        out.push(m);
    }
    Ok(MomentSeq(out))
}

fn nc_list(n: usize) -> Arc<Vec<SetPartition>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<SetPartition>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(l) = cache.read().expect("nc cache poisoned").get(&n) {
        return l.clone();
    }
    let list = Arc::new(enumerate_noncrossing(n).collect::<Vec<_>>());
    cache.write().expect("nc cache poisoned").insert(n, list.clone());
    list
}

/// Relabels colours by first occurrence so equivalent words share a key.
fn canonical_colours(colours: &[usize]) -> Vec<usize> {
    SetPartition::from_labels(colours).labels()
}

/// Joint moments `φ(a_{c_1} ⋯ a_{c_r})` of free identically distributed
/// copies of one variable, memoized by colour pattern.
pub struct ColouredMoments {
    cumulants: CumulantSeq,
    cache: Mutex<HashMap<Vec<usize>, Rational>>,
}

impl ColouredMoments {
    pub fn new(ms: &MomentSeq) -> Result<Self> {
        Ok(Self::from_cumulants(free_cumulants_from_moments(ms)?))
    }

    pub fn from_cumulants(cumulants: CumulantSeq) -> Self {
        ColouredMoments { cumulants, cache: Mutex::new(HashMap::new()) }
    }

    pub fn cumulants(&self) -> &CumulantSeq {
        &self.cumulants
    }

    pub fn moment(&self, colours: &[usize]) -> Result<Rational> {
        let r = colours.len();
        if r > self.cumulants.order() {
            return Err(Error::InsufficientData { needed: r, available: self.cumulants.order() });
        }
        let key = canonical_colours(colours);
        if let Some(v) = self.cache.lock().expect("coloured cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let kernel = SetPartition::from_labels(&key);
        let mut total = Rational::zero();
        for sigma in nc_list(r).iter() {
            if is_refinement(sigma, &kernel)? {
                total += sigma
                    .blocks()
                    .iter()
                    .fold(Rational::one(), |acc, b| acc * &self.cumulants.values()[b.len() - 1]);
            }
        }
        self.cache.lock().expect("coloured cache poisoned").insert(key, total.clone());
        Ok(total)
    }
}

/// `φ(a_{c_1} ⋯ a_{c_r})` for free copies distributed like `ms`:
/// `Σ_{π ∈ NC(r), π ≤ ker(c)} Π_V κ_{|V|}`.
pub fn free_coloured_moment(colours: &[usize], ms: &MomentSeq) -> Result<Rational> {
    if colours.len() > ms.order() {
        return Err(Error::InsufficientData { needed: colours.len(), available: ms.order() });
    }
    ColouredMoments::new(&ms.truncate(colours.len()))?.moment(colours)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperandKind {
    Variable,
    Scalar(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operand {
    pub side: Side,
    pub colour: usize,
    pub kind: OperandKind,
}

/// Which part of `Z_k = A_k B_k − λ²` a position of a word expands into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// `(A_k, B_k)`
    Product,
    /// `(−λ, λ)`
    Shift,
}

/// Operands of a word, one per position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperandSpec(Vec<Operand>);

impl OperandSpec {
    pub fn new(operands: Vec<Operand>) -> Self {
        OperandSpec(operands)
    }

    /// The word `L^{s(1)}, R^{s(1)}, ..., L^{s(m)}, R^{s(m)}` on `[2m]`:
    /// position `2k-1` is left and `2k` is right, both coloured `colours[k-1]`.
    pub fn alternating(colours: &[usize], terms: &[Term], lambda: &Rational) -> Result<Self> {
        if colours.len() != terms.len() {
            return arg_err("one term choice per colour required");
        }
        let mut ops = Vec::with_capacity(2 * colours.len());
        for (&colour, &term) in colours.iter().zip(terms) {
            let (left, right) = match term {
                Term::Product => (OperandKind::Variable, OperandKind::Variable),
                Term::Shift => (OperandKind::Scalar(-lambda.clone()), OperandKind::Scalar(lambda.clone())),
            };
            ops.push(Operand { side: Side::Left, colour, kind: left });
            ops.push(Operand { side: Side::Right, colour, kind: right });
        }
        Ok(OperandSpec(ops))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn operands(&self) -> &[Operand] {
        &self.0
    }

    fn at(&self, i: usize) -> &Operand {
        &self.0[i - 1]
    }
}

/// `κ_τ` of a vertically split `τ`: product over blocks, left blocks using
/// `left`'s free cumulants and right blocks `right`'s.
pub fn kappa_bnc_vs(tau: &BncPartition, ops: &OperandSpec, left: &CumulantSeq, right: &CumulantSeq) -> Result<Rational> {
    if !tau.is_vertically_split() {
        return Err(Error::Contract(format!(
            "{} is not vertically split; its cumulant must be filtered out by the caller",
            tau.partition()
        )));
    }
    check_operands(tau.chi(), ops)?;
    let mut value = Rational::one();
    for block in tau.partition().blocks() {
        let factor = block_cumulant(block, ops, left, right)?;
        if factor.is_zero() {
            return Ok(factor);
        }
        value *= factor;
    }
    Ok(value)
}

fn check_operands(chi: &ChiMap, ops: &OperandSpec) -> Result<()> {
    if ops.len() != chi.n() {
        return arg_err(format!("{} operands for a word of length {}", ops.len(), chi.n()));
    }
    for (i, op) in ops.operands().iter().enumerate() {
        if op.side != chi.side(i + 1) {
            return arg_err(format!("operand {} is on the wrong side for chi = {chi}", i + 1));
        }
    }
    Ok(())
}

fn block_cumulant(block: &[usize], ops: &OperandSpec, left: &CumulantSeq, right: &CumulantSeq) -> Result<Rational> {
    let first = ops.at(block[0]);
    let seq = match first.side {
        Side::Left => left,
        Side::Right => right,
    };
    if block.len() == 1 {
        return match &first.kind {
            OperandKind::Scalar(v) => Ok(v.clone()),
            OperandKind::Variable => seq.get(1).cloned(),
        };
    }
    for &i in block {
        let op = ops.at(i);
        if matches!(op.kind, OperandKind::Scalar(_)) || op.colour != first.colour {
            return Ok(Rational::zero());
        }
    }
    seq.get(block.len()).cloned()
}

/// `φ(Z_1 ⋯ Z_n) = Σ_{τ ∈ BNC(χ)} κ_τ`, keeping only the vertically split,
/// colour-respecting `τ` (all others have vanishing cumulants when every
/// left operand is bi-free from every right operand).
pub fn bnc_moment(chi: &ChiMap, ops: &OperandSpec, ms_left: &MomentSeq, ms_right: &MomentSeq) -> Result<Rational> {
    check_operands(chi, ops)?;
    let left = free_cumulants_from_moments(ms_left)?;
    let right = free_cumulants_from_moments(ms_right)?;
    let mut total = Rational::zero();
    for tau in enumerate_bnc(chi) {
        if !tau.is_vertically_split() {
            continue;
        }
        let monochrome = tau
            .partition()
            .blocks()
            .iter()
            .all(|b| b.iter().all(|&i| ops.at(i).colour == ops.at(b[0]).colour));
        if monochrome {
            total += kappa_bnc_vs(&tau, ops, &left, &right)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bichromatic::{chi_alternating, combine_alternating, enumerate_bnc_vs_alt};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> MomentSeq {
        MomentSeq::new(v.iter().map(|&x| int(x)).collect())
    }

    fn cseq(v: &[i64]) -> CumulantSeq {
        CumulantSeq::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn semicircle_cumulants() {
        let k = free_cumulants_from_moments(&seq(&[0, 1, 0, 2, 0, 5])).unwrap();
        assert_eq!(k, cseq(&[0, 1, 0, 0, 0, 0]));
        let m = moments_from_free_cumulants(&cseq(&[0, 1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(m, seq(&[0, 1, 0, 2, 0, 5, 0, 14]));
    }

    #[test]
    fn point_mass_and_zero() {
        let lambda = ratio(3, 2);
        let ms = MomentSeq::new((1..=7).map(|k| crate::rational::pow(&lambda, k)).collect());
        let k = free_cumulants_from_moments(&ms).unwrap();
        assert_eq!(k.get(1).unwrap(), &lambda);
        assert!(k.values()[1..].iter().all(Zero::is_zero));
        let mut only_first = vec![Rational::zero(); 7];
        only_first[0] = lambda.clone();
        assert_eq!(moments_from_free_cumulants(&CumulantSeq::new(only_first)).unwrap(), ms);
        assert_eq!(free_cumulants_from_moments(&seq(&[0; 6])).unwrap(), cseq(&[0; 6]));
        assert_eq!(moments_from_free_cumulants(&cseq(&[0; 6])).unwrap(), seq(&[0; 6]));
    }

    #[test]
    fn json_form() {
        let ms = MomentSeq::new(vec![ratio(1, 2), int(-3)]);
        assert_eq!(ms.to_json(), r#"["1/2","-3/1"]"#);
        assert_eq!(MomentSeq::from_json(r#"["1/2", "-3", "0.5"]"#).unwrap().values()[2], ratio(1, 2));
        assert!(MomentSeq::from_json(r#"["x"]"#).is_err());
        assert!(MomentSeq::from_json(r#"{"a": 1}"#).is_err());
    }

    #[test]
    fn coloured_moments() {
        let semi = seq(&[0, 1, 0, 2]);
        assert_eq!(free_coloured_moment(&[7, 7, 7, 7], &semi).unwrap(), int(2));
        assert_eq!(free_coloured_moment(&[1, 2, 1, 2], &semi).unwrap(), int(0));
        let shifted = seq(&[0, 3, 1, 5]);
        assert_eq!(free_coloured_moment(&[1, 1, 2, 2], &shifted).unwrap(), int(9));
        assert_eq!(free_coloured_moment(&[1, 2], &seq(&[2, 5])).unwrap(), int(4));
        assert!(matches!(
            free_coloured_moment(&[1, 1, 1], &semi.truncate(2)),
            Err(Error::InsufficientData { needed: 3, available: 2 })
        ));
    }

    #[test]
    fn tau_examples_from_second_moment() {
        // σ² = 2, λ = 3: moments of a are m1 = 3, m2 = σ² + λ² = 11
        let ms = seq(&[3, 11]);
        let k = free_cumulants_from_moments(&ms).unwrap();
        let lambda = int(3);
        let chi = chi_alternating(2);
        let p = |s: &str| BncPartition::new(s.parse().unwrap(), chi.clone()).unwrap();
        let tau_l = p("1,3|2|4");
        let tau_lr = p("1,3|2,4");
        let all_var = OperandSpec::alternating(&[1, 1], &[Term::Product, Term::Product], &lambda).unwrap();
        assert_eq!(kappa_bnc_vs(&tau_l, &all_var, &k, &k).unwrap(), int(2 * 9));
        assert_eq!(kappa_bnc_vs(&tau_lr, &all_var, &k, &k).unwrap(), int(4));
        let with_scalar = OperandSpec::alternating(&[1, 1], &[Term::Product, Term::Shift], &lambda).unwrap();
        assert_eq!(kappa_bnc_vs(&tau_lr, &with_scalar, &k, &k).unwrap(), int(0));
        assert_eq!(kappa_bnc_vs(&tau_l, &with_scalar, &k, &k).unwrap(), int(0));
        // singleton scalars contribute −λ and λ
        let tau_0 = p("1|2|3|4");
        let both_shift = OperandSpec::alternating(&[1, 1], &[Term::Shift, Term::Shift], &lambda).unwrap();
        assert_eq!(kappa_bnc_vs(&tau_0, &both_shift, &k, &k).unwrap(), int(81));
        // mixed colours vanish
        let two_colours = OperandSpec::alternating(&[1, 2], &[Term::Product, Term::Product], &lambda).unwrap();
        assert_eq!(kappa_bnc_vs(&tau_lr, &two_colours, &k, &k).unwrap(), int(0));
    }

    #[test]
    fn kappa_rejects_unsplit_and_misaligned() {
        let chi: ChiMap = "LRRLLR".parse().unwrap();
        let tau = BncPartition::new("1,4|2,5|3,6".parse().unwrap(), chi).unwrap();
        let ops = OperandSpec::alternating(&[1, 1, 1], &[Term::Product; 3], &int(0)).unwrap();
        let k = cseq(&[0, 1]);
        assert!(matches!(kappa_bnc_vs(&tau, &ops, &k, &k), Err(Error::Contract(_))));
        let tau = BncPartition::new("1|2|3|4".parse().unwrap(), "LLRR".parse().unwrap()).unwrap();
        let ops = OperandSpec::alternating(&[1, 1], &[Term::Product; 2], &int(0)).unwrap();
        assert!(kappa_bnc_vs(&tau, &ops, &k, &k).is_err());
    }

    #[test]
    fn bnc_moment_examples() {
        let ms = seq(&[5, 30]);
        let chi: ChiMap = "L".parse().unwrap();
        let ops = OperandSpec::new(vec![Operand { side: Side::Left, colour: 0, kind: OperandKind::Variable }]);
        assert_eq!(bnc_moment(&chi, &ops, &ms, &ms).unwrap(), int(5));

        let centred = seq(&[0, 1]);
        let ops = OperandSpec::alternating(&[1], &[Term::Product], &int(0)).unwrap();
        assert_eq!(bnc_moment(&chi_alternating(1), &ops, &centred, &centred).unwrap(), int(0));

        // Σ_s over the alternating word of length 4 gives σ²λ² + λ²σ² + σ⁴
        let (sigma2, lambda) = (ratio(1, 3), ratio(2, 5));
        let ms = MomentSeq::new(vec![lambda.clone(), &sigma2 + &lambda * &lambda]);
        let mut total = Rational::zero();
        for s1 in [Term::Product, Term::Shift] {
            for s2 in [Term::Product, Term::Shift] {
                let ops = OperandSpec::alternating(&[1, 1], &[s1, s2], &lambda).unwrap();
                total += bnc_moment(&chi_alternating(2), &ops, &ms, &ms).unwrap();
            }
        }
        let l2 = &lambda * &lambda;
        assert_eq!(total, &sigma2 * &l2 * int(2) + &sigma2 * &sigma2);
    }

    #[test]
    fn bnc_moment_factorizes_over_sides() {
        let a = seq(&[1, 3, 2, 11, -4, 7]);
        let b = MomentSeq::new(vec![ratio(1, 2), int(2), ratio(-1, 3), int(5), int(1), ratio(9, 4)]);
        // every alternating word of length ≤ 6 with colours from {0, 1, 2}
        for m in 1..=3usize {
            let chi = chi_alternating(m);
            let words = 3usize.pow(2 * m as u32);
            for code in 0..words {
                let colours: Vec<usize> = (0..2 * m).map(|i| code / 3usize.pow(i as u32) % 3).collect();
                let ops = OperandSpec::new(
                    (0..2 * m)
                        .map(|i| Operand {
                            side: chi.side(i + 1),
                            colour: colours[i],
                            kind: OperandKind::Variable,
                        })
                        .collect(),
                );
                let left: Vec<usize> = (0..m).map(|k| colours[2 * k]).collect();
                let right: Vec<usize> = (0..m).map(|k| colours[2 * k + 1]).collect();
                let expected = free_coloured_moment(&left, &a).unwrap() * free_coloured_moment(&right, &b).unwrap();
                assert_eq!(bnc_moment(&chi, &ops, &a, &b).unwrap(), expected, "colours {colours:?}");
            }
        }
    }

    #[test]
    fn kappa_is_multiplicative_over_blocks() {
        let k = free_cumulants_from_moments(&seq(&[1, 3, 2, 11])).unwrap();
        let family = enumerate_bnc_vs_alt(2);
        let lambda = int(1);
        let ops2 = OperandSpec::alternating(&[0, 0], &[Term::Product; 2], &lambda).unwrap();
        let ops4 = OperandSpec::alternating(&[0, 0, 1, 1], &[Term::Product; 4], &lambda).unwrap();
        for t1 in &family {
            for t2 in &family {
                let (l1, r1) = t1.alternating_sides().unwrap();
                let (l2, r2) = t2.alternating_sides().unwrap();
                let shift = |p: &SetPartition| -> Vec<Vec<usize>> {
                    p.blocks().iter().map(|b| b.iter().map(|&e| e + 2).collect()).collect()
                };
                let mut lb = l1.blocks().to_vec();
                lb.extend(shift(&l2));
                let mut rb = r1.blocks().to_vec();
                rb.extend(shift(&r2));
                let joint = combine_alternating(
                    &SetPartition::from_blocks(4, lb).unwrap(),
                    &SetPartition::from_blocks(4, rb).unwrap(),
                )
                .unwrap();
                let lhs = kappa_bnc_vs(&joint, &ops4, &k, &k).unwrap();
                let rhs = kappa_bnc_vs(t1, &ops2, &k, &k).unwrap() * kappa_bnc_vs(t2, &ops2, &k, &k).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn distinct_centred_colours_vanish() {
        let ms = seq(&[0, 2, 1, 4, 3, 9]);
        for r in 1..=6 {
            let colours: Vec<usize> = (0..r).collect();
            assert!(free_coloured_moment(&colours, &ms).unwrap().is_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn round_trip_is_identity(raw in prop::collection::vec((-20i64..20, 1i64..9), 1..=8)) {
            let ms = MomentSeq::new(raw.iter().map(|&(p, q)| ratio(p, q)).collect());
            let back = moments_from_free_cumulants(&free_cumulants_from_moments(&ms).unwrap()).unwrap();
            prop_assert_eq!(back, ms);
        }
    }
}
