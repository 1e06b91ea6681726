//! Monoids: toric monoids and their Hilbert bases, finitely presented monoids,
//! groupification, the integral/fine/saturated/toric taxonomy, and log stalks.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    adapted_basis, hermite_basis, integer_kernel, rank_of, smith_normal_form, solve_integer_linear,
    solve_rational, Int, IntMatrix, LatticePoint, Rat,
};
use crate::polyhedra::RationalCone;

/// Three-valued answer for checks that may run into a search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Undetermined,
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}

/// `C ∩ Z^n` for a rational cone `C`, with its Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricMonoid {
    cone: RationalCone,
    hilbert: Vec<LatticePoint>,
    units: Vec<LatticePoint>,
}

impl ToricMonoid {
    /// `σ∨ ∩ M` for a cone `σ` of a fan.
    pub fn from_fan_cone(sigma: &RationalCone) -> Self {
        Self::from_monoid_cone(&sigma.dual())
    }

    /// `C ∩ M` directly.
    pub fn from_monoid_cone(c: &RationalCone) -> Self {
        let n = c.ambient_dim();
        let units = c.lineality().to_vec();
        let hilbert = if units.is_empty() {
            pointed_hilbert_basis(c)
        } else {
            let (b, k) = adapted_basis(&units, n);
            let b_inv = b.inverse_unimodular().expect("adapted basis is unimodular");
            let proj = b_inv.select_rows(&(k..n).collect::<Vec<_>>());
            let lift = b.select_cols(&(k..n).collect::<Vec<_>>());
            let image = c.image(&proj).expect("projection dimensions");
            let mut hb: Vec<_> = pointed_hilbert_basis(&image)
                .iter()
                .map(|h| lift.mul_vec(h))
                .collect();
            hb.sort();
            hb
        };
        ToricMonoid {
            cone: c.clone(),
            hilbert,
            units,
        }
    }

    pub fn from_generators(n: usize, gens: &[LatticePoint]) -> Result<Self> {
        Ok(Self::from_monoid_cone(&RationalCone::from_generators(
            n, gens,
        )?))
    }

    /// The saturated monoid a toric presented monoid is isomorphic to.
    pub fn from_presented(p: &PresentedMonoid) -> Result<Self> {
        let c = p.classify(DEFAULT_WORD_BOUND);
        if !c.toric.is_true() {
            return Err(Error::Invalid("presented monoid is not toric".into()));
        }
        let g = p.groupify();
        Self::from_generators(g.free_rank, &g.free_images())
    }

    pub fn rank(&self) -> usize {
        self.cone.ambient_dim()
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    /// Minimal generators of the sharp part; together with `±units` they generate.
    pub fn hilbert_basis(&self) -> &[LatticePoint] {
        &self.hilbert
    }

    /// Basis of the unit group `C ∩ -C ∩ M`.
    pub fn units(&self) -> &[LatticePoint] {
        &self.units
    }

    pub fn is_sharp(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.cone.contains(x)
    }

    /// Full monoid generating set including both signs of the unit basis.
    pub fn generators(&self) -> Vec<LatticePoint> {
        let mut g = self.hilbert.clone();
        g.extend(self.units.iter().cloned());
        g.extend(self.units.iter().map(|u| -u));
        g
    }

    /// Rank of the groupification inside `Z^n`.
    pub fn gp_rank(&self) -> usize {
        self.cone.dimension()
    }

    /// Basis of the relation lattice among the Hilbert basis elements.
    pub fn relation_lattice(&self) -> Vec<LatticePoint> {
        if self.hilbert.is_empty() {
            return Vec::new();
        }
        let m = IntMatrix::from_rows(&self.hilbert, self.rank()).transpose();
        hermite_basis(&integer_kernel(&m), self.hilbert.len())
    }

    /// Presentation `<e_1..e_k | ...>` on the Hilbert basis from a relation-lattice basis.
    ///
    /// Only exact for monoids whose relation lattice is generated by one binomial
    /// per basis vector (every example here).
    pub fn to_presented(&self) -> PresentedMonoid {
        let rels = self
            .relation_lattice()
            .iter()
            .map(|r| {
                let pos =
                    r.0.iter()
                        .map(|c| {
                            if c.is_positive() {
                                c.clone()
                            } else {
                                Int::zero()
                            }
                        })
                        .collect();
                let neg =
                    r.0.iter()
                        .map(|c| if c.is_negative() { -c } else { Int::zero() })
                        .collect();
                (pos, neg)
            })
            .collect();
        PresentedMonoid::new(self.hilbert.len(), rels)
    }

    /// Quotient by the unit group.
    pub fn sharp_quotient(&self) -> ToricMonoid {
        quotient_by(&self.cone, &self.units)
    }

    /// Classification; a toric monoid is all four.
    pub fn classify(&self) -> Classification {
        Classification {
            integral: Verdict::True,
            fine: Verdict::True,
            saturated: Verdict::True,
            toric: Verdict::True,
            non_integral_witness: None,
            non_saturated_witness: None,
            torsion: Vec::new(),
        }
    }
}

/// Image of `C ∩ M` in `M / (saturated span of sub)`.
fn quotient_by(c: &RationalCone, sub: &[LatticePoint]) -> ToricMonoid {
    let n = c.ambient_dim();
    let (b, k) = adapted_basis(sub, n);
    let b_inv = b.inverse_unimodular().expect("adapted basis is unimodular");
    let proj = b_inv.select_rows(&(k..n).collect::<Vec<_>>());
    let image = c.image(&proj).expect("projection dimensions");
    ToricMonoid::from_monoid_cone(&image)
}

/// Grading that is positive on a pointed cone minus the origin.
fn grading(c: &RationalCone) -> LatticePoint {
    c.facet_normals()
        .iter()
        .fold(LatticePoint::zero(c.ambient_dim()), |acc, f| &acc + f)
}

fn pointed_hilbert_basis(c: &RationalCone) -> Vec<LatticePoint> {
    let n = c.ambient_dim();
    if c.rays().is_empty() {
        return Vec::new();
    }
    let lo: Vec<Int> = (0..n)
        .map(|j| {
            c.rays()
                .iter()
                .map(|r| r.0[j].clone().min(Int::zero()))
                .sum()
        })
        .collect();
    let hi: Vec<Int> = (0..n)
        .map(|j| {
            c.rays()
                .iter()
                .map(|r| r.0[j].clone().max(Int::zero()))
                .sum()
        })
        .collect();
    let ell = grading(c);
    let mut cands: Vec<(Int, LatticePoint)> = box_points(&lo, &hi)
        .into_iter()
        .filter(|x| !x.is_zero() && c.contains(x))
        .map(|x| (ell.dot(&x), x))
        .collect();
    cands.sort();
    let mut basis: Vec<LatticePoint> = Vec::new();
    for (_, x) in cands {
        if !basis.iter().any(|b| c.contains(&(&x - b))) {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

pub(crate) fn box_points(lo: &[Int], hi: &[Int]) -> Vec<LatticePoint> {
    let n = lo.len();
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return out;
    }
    let mut cur = lo.to_vec();
    loop {
        out.push(LatticePoint(cur.clone()));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
        }
    }
}

/// The monoid generated by finitely many lattice vectors, with exact membership.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    dim: usize,
    gens: Vec<LatticePoint>,
    cone: RationalCone,
    ell: LatticePoint,
    unit_lattice: Vec<LatticePoint>,
}

impl AffineMonoid {
    pub fn new(dim: usize, gens: &[LatticePoint]) -> Result<Self> {
        let gens: Vec<_> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let cone = RationalCone::from_generators(dim, &gens)?;
        let ell = grading(&cone);
        let zero_gens: Vec<_> = gens
            .iter()
            .filter(|g| ell.dot(g).is_zero())
            .cloned()
            .collect();
        let unit_lattice = hermite_basis(&zero_gens, dim);
        Ok(AffineMonoid {
            dim,
            gens,
            cone,
            ell,
            unit_lattice,
        })
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.gens
    }

    fn in_unit_lattice(&self, x: &LatticePoint) -> bool {
        if x.is_zero() {
            return true;
        }
        if self.unit_lattice.is_empty() {
            return false;
        }
        let a = IntMatrix::from_rows(&self.unit_lattice, self.dim).transpose();
        solve_integer_linear(&a, x).is_ok_and(|s| s.particular().is_some())
    }

    /// Whether `x` is an `N`-combination of the generators.
    pub fn contains(&self, x: &LatticePoint) -> bool {
        if !self.cone.contains(x) {
            return false;
        }
        // generators with zero grading span a group, so only positive ones need a search
        let pos: Vec<_> = self
            .gens
            .iter()
            .filter(|g| self.ell.dot(g).is_positive())
            .cloned()
            .collect();
        let mut failed = HashSet::new();
        self.search(x, &pos, 0, &mut failed)
    }

    fn search(
        &self,
        x: &LatticePoint,
        pos: &[LatticePoint],
        from: usize,
        failed: &mut HashSet<(LatticePoint, usize)>,
    ) -> bool {
        if self.in_unit_lattice(x) {
            return true;
        }
        if failed.contains(&(x.clone(), from)) {
            return false;
        }
        let lx = self.ell.dot(x);
        for i in from..pos.len() {
            if self.ell.dot(&pos[i]) <= lx {
                let y = x - &pos[i];
                if self.search(&y, pos, i, failed) {
                    return true;
                }
            }
        }
        failed.insert((x.clone(), from));
        false
    }
}

pub const DEFAULT_WORD_BOUND: usize = 12;

/// `<e_1, ..., e_k | a_j = b_j>` written additively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedMonoid {
    gens: usize,
    rels: Vec<(Vec<Int>, Vec<Int>)>,
}

/// `Z^r ⊕ ⊕ Z/d_i` together with the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupificationResult {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    /// Per generator: free coordinates and torsion residues.
    pub images: Vec<(LatticePoint, Vec<Int>)>,
}

impl GroupificationResult {
    pub fn free_images(&self) -> Vec<LatticePoint> {
        self.images.iter().map(|(f, _)| f.clone()).collect()
    }

    pub fn image_of(&self, word: &[Int]) -> (LatticePoint, Vec<Int>) {
        let mut free = LatticePoint::zero(self.free_rank);
        let mut tors = vec![Int::zero(); self.torsion.len()];
        for (c, (f, t)) in word.iter().zip(&self.images) {
            free = &free + &f.scale(c);
            for (i, d) in self.torsion.iter().enumerate() {
                tors[i] = (&tors[i] + c * &t[i]).mod_floor(d);
            }
        }
        (free, tors)
    }
}

/// Four flags with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub integral: Verdict,
    pub fine: Verdict,
    pub saturated: Verdict,
    pub toric: Verdict,
    /// Two words with equal groupification image that are not equal in the monoid.
    pub non_integral_witness: Option<(Vec<Int>, Vec<Int>)>,
    /// `(p, n)` with `n·p` in the monoid but `p` not.
    pub non_saturated_witness: Option<(LatticePoint, u32)>,
    pub torsion: Vec<Int>,
}

impl PresentedMonoid {
    pub fn new(gens: usize, rels: Vec<(Vec<Int>, Vec<Int>)>) -> Self {
        PresentedMonoid { gens, rels }
    }

    pub fn from_i64(gens: usize, rels: &[(&[i64], &[i64])]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        Self::new(gens, rels.iter().map(|(a, b)| (conv(a), conv(b))).collect())
    }

    pub fn free(k: usize) -> Self {
        Self::new(k, Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        for (a, b) in &self.rels {
            if a.len() != self.gens || b.len() != self.gens {
                return Err(Error::DimensionMismatch(format!(
                    "relation of length {} for {} generators",
                    a.len(),
                    self.gens
                )));
            }
            if a.iter().chain(b).any(Signed::is_negative) {
                return Err(Error::Invalid(
                    "relation exponents must be nonnegative".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn num_generators(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[(Vec<Int>, Vec<Int>)] {
        &self.rels
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<_> = self
            .rels
            .iter()
            .map(|(a, b)| LatticePoint(a.iter().zip(b).map(|(x, y)| x - y).collect()))
            .collect();
        IntMatrix::from_rows(&rows, self.gens)
    }

    pub fn groupify(&self) -> GroupificationResult {
        let k = self.gens;
        if self.rels.is_empty() {
            return GroupificationResult {
                free_rank: k,
                torsion: Vec::new(),
                images: (0..k)
                    .map(|i| (LatticePoint::unit(k, i), Vec::new()))
                    .collect(),
            };
        }
        let snf = smith_normal_form(&self.relation_matrix());
        let r = snf.rank;
        let factors = snf.invariant_factors();
        let tors_idx: Vec<usize> = (0..r).filter(|&i| factors[i] > Int::one()).collect();
        let images = (0..k)
            .map(|i| {
                let row = snf.v.row(i);
                let free = LatticePoint(row.0[r..].to_vec());
                let tors = tors_idx
                    .iter()
                    .map(|&j| row.0[j].mod_floor(&factors[j]))
                    .collect();
                (free, tors)
            })
            .collect();
        GroupificationResult {
            free_rank: k - r,
            torsion: tors_idx.iter().map(|&j| factors[j].clone()).collect(),
            images,
        }
    }

    /// Bounded word-problem check of cancellativity.
    pub fn integrality(&self, bound: usize) -> (Verdict, Option<(Vec<Int>, Vec<Int>)>) {
        let g = self.groupify();
        let words = words_up_to(self.gens, bound);
        let index: BTreeMap<Vec<Int>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut uf = UnionFind::new(words.len());
        let mut truncated = vec![false; words.len()];
        for (i, w) in words.iter().enumerate() {
            for (a, b) in &self.rels {
                for (from, to) in [(a, b), (b, a)] {
                    if w.iter().zip(from).all(|(x, y)| x >= y) {
                        let w2: Vec<Int> =
                            (0..self.gens).map(|j| &w[j] - &from[j] + &to[j]).collect();
                        match index.get(&w2) {
                            Some(&j) => uf.union(i, j),
                            None => truncated[i] = true,
                        }
                    }
                }
            }
        }
        let mut open = vec![false; words.len()];
        for i in 0..words.len() {
            if truncated[i] {
                let r = uf.find(i);
                open[r] = true;
            }
        }
        let mut by_image: BTreeMap<(LatticePoint, Vec<Int>), Vec<usize>> = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            by_image.entry(g.image_of(w)).or_default().push(i);
        }
        let mut undetermined = None;
        for idx in by_image.values() {
            let roots: Vec<usize> = idx.iter().map(|&i| uf.find(i)).collect();
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    if roots[a] != roots[b] {
                        let pair = (words[idx[a]].clone(), words[idx[b]].clone());
                        if !open[roots[a]] || !open[roots[b]] {
                            return (Verdict::False, Some(pair));
                        }
                        undetermined.get_or_insert(pair);
                    }
                }
            }
        }
        match undetermined {
            Some(pair) => (Verdict::Undetermined, Some(pair)),
            None => (Verdict::True, None),
        }
    }

    pub fn classify(&self, bound: usize) -> Classification {
        let g = self.groupify();
        let (integral, witness) = self.integrality(bound);
        let fine = integral;
        let (saturated, sat_witness) = match integral {
            Verdict::False => (Verdict::False, None),
            Verdict::Undetermined => (Verdict::Undetermined, None),
            Verdict::True if g.free_rank == 0 => (Verdict::True, None),
            Verdict::True if !g.torsion.is_empty() => (Verdict::Undetermined, None),
            Verdict::True => saturation_in_lattice(&g.free_images(), g.free_rank),
        };
        let toric = fine
            .and(saturated)
            .and(Verdict::from_bool(g.torsion.is_empty()));
        Classification {
            integral,
            fine,
            saturated,
            toric,
            non_integral_witness: witness,
            non_saturated_witness: sat_witness,
            torsion: g.torsion,
        }
    }
}

/// Classifies the submonoid of `Z^n` generated by `gens`.
pub fn classify_affine(n: usize, gens: &[LatticePoint]) -> Result<Classification> {
    let basis = hermite_basis(gens, n);
    let r = basis.len();
    // coordinates of each generator in the basis of the lattice it generates
    let bt = IntMatrix::from_rows(&basis, n).transpose();
    let coords: Vec<LatticePoint> = gens
        .iter()
        .map(|g| {
            let rhs: Vec<Rat> = g.0.iter().map(|c| Rat::from_integer(c.clone())).collect();
            let x = solve_rational(&bt, &rhs).expect("generator lies in its own span");
            LatticePoint(x.iter().map(|c| c.to_integer()).collect())
        })
        .collect();
    let (saturated, w) = if r == 0 {
        (Verdict::True, None)
    } else {
        saturation_in_lattice(&coords, r)
    };
    Ok(Classification {
        integral: Verdict::True,
        fine: Verdict::True,
        saturated,
        toric: saturated,
        non_integral_witness: None,
        non_saturated_witness: w.map(|(p, k)| (IntMatrix::from_rows(&basis, n).vec_mul(&p), k)),
        torsion: Vec::new(),
    })
}

const SATURATION_MULTIPLE_BOUND: u32 = 256;

/// Saturation of the monoid generated by `gens`, whose groupification is all of `Z^r`.
fn saturation_in_lattice(
    gens: &[LatticePoint],
    r: usize,
) -> (Verdict, Option<(LatticePoint, u32)>) {
    let m = AffineMonoid::new(r, gens).expect("consistent dimensions");
    let sat = ToricMonoid::from_monoid_cone(m.cone());
    for h in sat.generators() {
        if !m.contains(&h) {
            let k =
                (2..=SATURATION_MULTIPLE_BOUND).find(|&k| m.contains(&h.scale(&BigInt::from(k))));
            return match k {
                Some(k) => (Verdict::False, Some((h, k))),
                None => (Verdict::Undetermined, None),
            };
        }
    }
    (Verdict::True, None)
}

fn words_up_to(k: usize, bound: usize) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<Int>>) {
        if i == cur.len() {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A log stalk: a toric chart monoid and the face of elements that become units.
///
/// The unit face is assumed to be exactly the preimage of the invertible
/// functions at the point.
#[derive(Clone, Debug)]
pub struct LogStalk {
    pub chart: ToricMonoid,
    /// Indices into the chart's Hilbert basis.
    pub unit_face: Vec<usize>,
}

/// Sharp monoid `P/F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostStalk {
    pub monoid: ToricMonoid,
    pub gp_rank: usize,
}

impl GhostStalk {
    pub fn trivial() -> Self {
        GhostStalk {
            monoid: ToricMonoid::from_monoid_cone(&RationalCone::zero(0)),
            gp_rank: 0,
        }
    }

    pub fn num_generators(&self) -> usize {
        self.monoid.hilbert_basis().len()
    }
}

impl LogStalk {
    /// The cone face spanned by the unit face, checked to be a face.
    pub fn face_cone(&self) -> Result<RationalCone> {
        let hb = self.chart.hilbert_basis();
        if let Some(&i) = self.unit_face.iter().find(|&&i| i >= hb.len()) {
            return Err(Error::NotAFace(format!("generator index {i} out of range")));
        }
        let c = self.chart.cone();
        let elems: Vec<_> = self.unit_face.iter().map(|&i| hb[i].clone()).collect();
        let tight: Vec<_> = c
            .facet_normals()
            .iter()
            .filter(|f| elems.iter().all(|e| f.dot(e).is_zero()))
            .cloned()
            .collect();
        let members: Vec<usize> = (0..hb.len())
            .filter(|&i| tight.iter().all(|f| f.dot(&hb[i]).is_zero()))
            .collect();
        let mut want = self.unit_face.clone();
        want.sort();
        want.dedup();
        if members != want {
            return Err(Error::NotAFace(format!(
                "generators {want:?} span a cone whose smallest face contains generators {members:?}"
            )));
        }
        let mut gens = elems;
        gens.extend(self.chart.units().iter().cloned());
        gens.extend(self.chart.units().iter().map(|u| -u));
        RationalCone::from_generators(
            self.chart.rank(),
            &gens
                .iter()
                .flat_map(|g| [g.clone(), -g])
                .collect::<Vec<_>>(),
        )
    }

    pub fn associated_ghost(&self) -> Result<GhostStalk> {
        let face_span = self.face_cone()?;
        let sub = face_span.lineality().to_vec();
        let monoid = quotient_by(self.chart.cone(), &sub);
        let gp_rank = self.chart.gp_rank() - rank_of(&sub, self.chart.rank());
        debug_assert!(monoid.is_sharp());
        Ok(GhostStalk { monoid, gp_rank })
    }
}

pub fn associated_log_stalk(s: &LogStalk) -> Result<GhostStalk> {
    s.associated_ghost()
}

/// Ghost stalk at a point of the orbit of a fan cone: `(σ∨ ∩ M)` modulo units.
pub fn ghost_stalk_toric(fan_cone: &RationalCone) -> GhostStalk {
    let p = ToricMonoid::from_fan_cone(fan_cone);
    let monoid = p.sharp_quotient();
    GhostStalk {
        gp_rank: monoid.gp_rank(),
        monoid,
    }
}
