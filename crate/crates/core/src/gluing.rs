//! Gluing data with coefficients in `Λ ⊗ C^×`, modelled exactly with
//! Gaussian rationals: membership in `PM(τ)`, open gluing data, and lifted
//! gluing data as Čech 1-cochains on the nerve of the cell poset.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Div, Mul};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::PolyCellComplex;
use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, Int, IntMatrix, LatticePoint, Rat};

/// A nonzero Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CStarValue {
    pub re: Rat,
    pub im: Rat,
}

impl CStarValue {
    pub fn new(re: Rat, im: Rat) -> Result<Self> {
        if re.is_zero() && im.is_zero() {
            return Err(Error::Invalid("C^× value must be nonzero".into()));
        }
        Ok(CStarValue { re, im })
    }

    pub fn one() -> Self {
        CStarValue {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }

    pub fn i() -> Self {
        CStarValue {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(p != 0 && q != 0);
        CStarValue {
            re: Rat::new(p.into(), q.into()),
            im: Rat::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        CStarValue {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn pow(&self, e: &Int) -> Self {
        let mut base = if e.is_negative() {
            self.inv()
        } else {
            self.clone()
        };
        let mut k = e.abs().to_u64().expect("exponent fits in u64");
        let mut acc = CStarValue::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl CStarValue {
    /// An exact `d`-th root in `Q(i)`, if one exists with moderate denominators.
    pub fn root(&self, d: u64) -> Option<CStarValue> {
        if d == 1 {
            return Some(self.clone());
        }
        let (re, im) = (
            crate::lattice::rat_to_f64(&self.re),
            crate::lattice::rat_to_f64(&self.im),
        );
        let r = (re * re + im * im).sqrt().powf(1.0 / d as f64);
        let theta = im.atan2(re);
        (0..d).find_map(|k| {
            let a = (theta + 2.0 * std::f64::consts::PI * k as f64) / d as f64;
            let cand = CStarValue {
                re: approx_rational(r * a.cos()),
                im: approx_rational(r * a.sin()),
            };
            (!cand.re.is_zero() || !cand.im.is_zero())
                .then_some(cand)
                .filter(|c| c.pow(&Int::from(d)) == *self)
        })
    }
}

fn approx_rational(x: f64) -> Rat {
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > 1_000_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() < 1e-12 * x.abs().max(1.0) || (y - a).abs() < 1e-15
        {
            break;
        }
        y = 1.0 / (y - a);
    }
    Rat::new(h1.into(), k1.into())
}

impl Mul for &CStarValue {
    type Output = CStarValue;
    fn mul(self, o: &CStarValue) -> CStarValue {
        CStarValue {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &CStarValue {
    type Output = CStarValue;
    fn div(self, o: &CStarValue) -> CStarValue {
        self * &o.inv()
    }
}

impl fmt::Display for CStarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// An element `Σ e_j ⊗ c_j` of `Z^n ⊗ C^×`, stored as the tuple `(c_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement(pub Vec<CStarValue>);

impl TorusElement {
    pub fn one(n: usize) -> Self {
        TorusElement(vec![CStarValue::one(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(CStarValue::is_one)
    }

    pub fn inv(&self) -> Self {
        TorusElement(self.0.iter().map(CStarValue::inv).collect())
    }

    /// `m ⊗ c`.
    pub fn from_vector(m: &LatticePoint, c: &CStarValue) -> Self {
        TorusElement(m.0.iter().map(|k| c.pow(k)).collect())
    }

    /// `Σ b_k ⊗ c_k`.
    pub fn from_combination(n: usize, basis: &[LatticePoint], coeffs: &[CStarValue]) -> Self {
        basis
            .iter()
            .zip(coeffs)
            .fold(TorusElement::one(n), |acc, (b, c)| {
                &acc * &TorusElement::from_vector(b, c)
            })
    }

    /// Image under the lattice map `m`: coordinates `c'_i = Π_j c_j^{m_ij}`.
    pub fn transform(&self, m: &IntMatrix) -> Self {
        TorusElement(
            (0..m.rows())
                .map(|i| {
                    (0..m.cols()).fold(CStarValue::one(), |acc, j| {
                        &acc * &self.0[j].pow(&m[(i, j)])
                    })
                })
                .collect(),
        )
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, o: &TorusElement) -> TorusElement {
        TorusElement(self.0.iter().zip(&o.0).map(|(a, b)| a * b).collect())
    }
}

impl Div for &TorusElement {
    type Output = TorusElement;
    fn div(self, o: &TorusElement) -> TorusElement {
        self * &o.inv()
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// First maximal cell containing `τ`; the chart in which data on `τ` lives.
pub fn reference_cell(c: &PolyCellComplex, tau: usize) -> usize {
    c.cell(tau).max_cells[0]
}

/// Linear chart change `α -> β` through the star of `v`.
pub fn transport_matrix(
    c: &PolyCellComplex,
    v: usize,
    from: usize,
    to: usize,
) -> Result<IntMatrix> {
    Ok(&c.chart(v, to).inverse_unimodular()? * c.chart(v, from))
}

fn transport(
    c: &PolyCellComplex,
    x: &TorusElement,
    v: usize,
    from: usize,
    to: usize,
) -> Result<TorusElement> {
    if from == to {
        return Ok(x.clone());
    }
    Ok(x.transform(&transport_matrix(c, v, from, to)?))
}

/// A tuple `(s_v)_{v ∈ τ}` in `Λ_σ ⊗ C^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMTuple {
    pub tau: usize,
    pub sigma: usize,
    pub values: BTreeMap<usize, TorusElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmReport {
    pub member: bool,
    /// `(ω, v, w)` with `s_v / s_w ∉ Λ_ω ⊗ C^×`.
    pub failing: Vec<(usize, usize, usize)>,
}

impl PMTuple {
    pub fn one(c: &PolyCellComplex, tau: usize, sigma: usize) -> Self {
        let values = c
            .cell(tau)
            .vertices
            .iter()
            .map(|&v| (v, TorusElement::one(c.dim())))
            .collect();
        PMTuple { tau, sigma, values }
    }

    pub fn constant(c: &PolyCellComplex, tau: usize, sigma: usize, x: TorusElement) -> Self {
        let values = c
            .cell(tau)
            .vertices
            .iter()
            .map(|&v| (v, x.clone()))
            .collect();
        PMTuple { tau, sigma, values }
    }

    fn value(&self, v: usize) -> Result<&TorusElement> {
        self.values.get(&v).ok_or_else(|| {
            Error::Invalid(format!(
                "tuple on cell {} has no value at vertex {v}",
                self.tau
            ))
        })
    }

    fn check_host(&self, c: &PolyCellComplex) -> Result<()> {
        if !c.cell(self.tau).max_cells.contains(&self.sigma) {
            return Err(Error::Invalid(format!(
                "maximal cell {} does not contain cell {}",
                self.sigma, self.tau
            )));
        }
        Ok(())
    }

    /// The same tuple expressed with reference cell `σ'`, each `s_v`
    /// transported through the star of `v`.
    pub fn transport_to(&self, c: &PolyCellComplex, sigma: usize) -> Result<PMTuple> {
        self.check_host(c)?;
        let values = self
            .values
            .iter()
            .map(|(&v, x)| Ok((v, transport(c, x, v, self.sigma, sigma)?)))
            .collect::<Result<_>>()?;
        let t = PMTuple {
            tau: self.tau,
            sigma,
            values,
        };
        t.check_host(c)?;
        Ok(t)
    }
}

/// Membership of a tuple in `PM(τ)`.
pub fn pm_membership(c: &PolyCellComplex, t: &PMTuple) -> Result<PmReport> {
    t.check_host(c)?;
    let mut failing = Vec::new();
    for omega in (0..c.cells().len()).filter(|&o| c.cell(o).dim >= 1 && c.is_face(o, t.tau)) {
        let verts = &c.cell(omega).vertices;
        let p0 = c.position(t.sigma, verts[0]);
        let tangents: Vec<_> = verts[1..]
            .iter()
            .map(|&w| c.position(t.sigma, w) - p0)
            .collect();
        let (b, k) = adapted_basis(&tangents, c.dim());
        let b_inv = b.inverse_unimodular()?;
        for (i, &v) in verts.iter().enumerate() {
            for &w in &verts[i + 1..] {
                let ratio = (t.value(v)? / t.value(w)?).transform(&b_inv);
                if !ratio.0[k..].iter().all(CStarValue::is_one) {
                    failing.push((omega, v, w));
                }
            }
        }
    }
    Ok(PmReport {
        member: failing.is_empty(),
        failing,
    })
}

/// Open gluing data `s_e` for inclusions `e: τ -> σ`, keyed by `(τ, σ)`.
/// Missing inclusions carry the trivial tuple.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpenGluingData {
    pub entries: BTreeMap<(usize, usize), PMTuple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpenGluingViolation {
    NotInPM {
        tau: usize,
        sigma: usize,
        omega: usize,
        v: usize,
        w: usize,
    },
    Identity {
        tau: usize,
    },
    Composition {
        tau: usize,
        mid: usize,
        top: usize,
        max_cell: usize,
        vertex: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenGluingReport {
    pub valid: bool,
    pub violations: Vec<OpenGluingViolation>,
}

impl OpenGluingData {
    fn tuple(&self, c: &PolyCellComplex, tau: usize, sigma: usize) -> PMTuple {
        self.entries
            .get(&(tau, sigma))
            .cloned()
            .unwrap_or_else(|| PMTuple::one(c, tau, reference_cell(c, sigma)))
    }

    /// `s_{ω→τ}` with `s_v = t_τ · t_ω⁻¹`, both moved to the reference cell of `τ` through `v`.
    pub fn from_zero_cochain(c: &PolyCellComplex, t: &ZeroCochain) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for tau in 0..c.cells().len() {
            let r_tau = reference_cell(c, tau);
            for omega in (0..c.cells().len()).filter(|&o| c.is_face(o, tau)) {
                let r_omega = reference_cell(c, omega);
                let mut values = BTreeMap::new();
                for &v in &c.cell(omega).vertices {
                    let lower = transport(c, &t.get(c, omega), v, r_omega, r_tau)?;
                    values.insert(v, &t.get(c, tau) / &lower);
                }
                entries.insert(
                    (omega, tau),
                    PMTuple {
                        tau: omega,
                        sigma: r_tau,
                        values,
                    },
                );
            }
        }
        Ok(OpenGluingData { entries })
    }
}

/// Identity, composition and `PM` conditions for open gluing data.
pub fn check_open_gluing(c: &PolyCellComplex, g: &OpenGluingData) -> Result<OpenGluingReport> {
    let mut violations = Vec::new();
    let ncells = c.cells().len();
    for (&(tau, sigma), t) in &g.entries {
        if t.tau != tau || !c.is_face(tau, sigma) {
            return Err(Error::Invalid(format!(
                "entry ({tau}, {sigma}) is not an inclusion tuple"
            )));
        }
        for (omega, v, w) in pm_membership(c, t)?.failing {
            violations.push(OpenGluingViolation::NotInPM {
                tau,
                sigma,
                omega,
                v,
                w,
            });
        }
    }
    for tau in 0..ncells {
        if !g
            .tuple(c, tau, tau)
            .values
            .values()
            .all(TorusElement::is_one)
        {
            violations.push(OpenGluingViolation::Identity { tau });
        }
    }
    for tau in 0..ncells {
        for mid in (0..ncells).filter(|&m| c.is_face(tau, m)) {
            for top in (0..ncells).filter(|&t| c.is_face(mid, t)) {
                let (e, f, fe) = (
                    g.tuple(c, tau, mid),
                    g.tuple(c, mid, top),
                    g.tuple(c, tau, top),
                );
                for &s in &c.cell(top).max_cells {
                    let (e, f, fe) = (
                        e.transport_to(c, s)?,
                        f.transport_to(c, s)?,
                        fe.transport_to(c, s)?,
                    );
                    for &v in &c.cell(tau).vertices {
                        if *fe.value(v)? != f.value(v)? * e.value(v)? {
                            violations.push(OpenGluingViolation::Composition {
                                tau,
                                mid,
                                top,
                                max_cell: s,
                                vertex: v,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(OpenGluingReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// A Čech 0-cochain: one element per cell, in the chart of its reference cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroCochain {
    pub values: BTreeMap<usize, TorusElement>,
}

impl ZeroCochain {
    pub fn get(&self, c: &PolyCellComplex, tau: usize) -> TorusElement {
        self.values
            .get(&tau)
            .cloned()
            .unwrap_or_else(|| TorusElement::one(c.dim()))
    }
}

/// A Čech 1-cochain on the nerve, keyed by `(ω, τ)` with `ω ⊊ τ`; each value
/// is in the chart of the reference cell of `τ`. Missing edges carry 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftedGluingData {
    pub values: BTreeMap<(usize, usize), TorusElement>,
}

impl LiftedGluingData {
    pub fn get(&self, c: &PolyCellComplex, omega: usize, tau: usize) -> TorusElement {
        self.values
            .get(&(omega, tau))
            .cloned()
            .unwrap_or_else(|| TorusElement::one(c.dim()))
    }

    pub fn multiply(&self, c: &PolyCellComplex, other: &LiftedGluingData) -> LiftedGluingData {
        let keys: BTreeSet<_> = self
            .values
            .keys()
            .chain(other.values.keys())
            .copied()
            .collect();
        let values = keys
            .into_iter()
            .map(|(o, t)| ((o, t), &self.get(c, o, t) * &other.get(c, o, t)))
            .collect();
        LiftedGluingData { values }
    }
}

/// Pairs `ω ⊊ τ` of cells, i.e. the edges of the nerve of the cover.
pub fn nerve_edges(c: &PolyCellComplex) -> Vec<(usize, usize)> {
    let n = c.cells().len();
    (0..n)
        .flat_map(|t| (0..n).filter(move |&o| o != t).map(move |o| (o, t)))
        .filter(|&(o, t)| c.is_face(o, t))
        .collect()
}

/// `(δt)_{ωτ} = t_τ · t_ω⁻¹`, with `t_ω` moved through the first vertex of `ω`.
pub fn coboundary(c: &PolyCellComplex, t: &ZeroCochain) -> Result<LiftedGluingData> {
    let mut values = BTreeMap::new();
    for (o, tau) in nerve_edges(c) {
        let v = c.cell(o).vertices[0];
        let lower = transport(
            c,
            &t.get(c, o),
            v,
            reference_cell(c, o),
            reference_cell(c, tau),
        )?;
        values.insert((o, tau), &t.get(c, tau) / &lower);
    }
    Ok(LiftedGluingData { values })
}

/// Monodromy generators of loops around the singular points lying in the
/// open set attached to a nerve edge `(ω, τ)` (or to a single cell when
/// `omega == tau`), as matrices in the chart of the reference cell of `τ`.
/// Only surfaces carry explicit singular points.
pub fn local_monodromies(c: &PolyCellComplex, omega: usize, tau: usize) -> Result<Vec<IntMatrix>> {
    let mut out = Vec::new();
    if c.dim() != 2 {
        return Ok(out);
    }
    let half = Rat::new(1.into(), 2.into());
    let target = reference_cell(c, tau);
    for rho in c.cells_of_dim(1) {
        let cell = c.cell(rho).clone();
        if cell.max_cells.len() != 2 {
            continue;
        }
        let (v0, v1) = (cell.vertices[0], cell.vertices[1]);
        let near = |t: &Rat| -> bool {
            let in_set = |x: usize| match c.cell(x).dim {
                0 => {
                    (c.cell(x).vertices[0] == v0 && *t < half)
                        || (c.cell(x).vertices[0] == v1 && *t > half)
                }
                1 => x == rho,
                _ => false,
            };
            in_set(omega) && in_set(tau)
        };
        let lo = cell.max_cells[0];
        let d = c.edge_direction(lo, v0, v1)?;
        let e = c.outward_normal(rho, lo)?;
        for (t, q) in c.effective_marks(rho)? {
            if !near(&t) {
                continue;
            }
            let mut m = IntMatrix::identity(2);
            for a in 0..2 {
                for b in 0..2 {
                    m[(a, b)] += &q * &d.0[a] * &e.0[b];
                }
            }
            let p = transport_matrix(c, c.cell(omega).vertices[0], lo, target)?;
            let p_inv = p.inverse_unimodular()?;
            out.push(&(&p * &m) * &p_inv);
        }
    }
    Ok(out)
}

/// Basis of the sublattice of `Λ` (chart of the reference cell of `τ`) fixed
/// by the local monodromy around `τ`; products `Σ b_k ⊗ c_k` are sections.
pub fn section_lattice(c: &PolyCellComplex, tau: usize) -> Result<Vec<LatticePoint>> {
    let n = c.dim();
    let mut rows = Vec::new();
    for t in local_monodromies(c, tau, tau)? {
        rows.extend((&t - &IntMatrix::identity(n)).row_vecs());
    }
    if rows.is_empty() {
        return Ok((0..n).map(|i| LatticePoint::unit(n, i)).collect());
    }
    Ok(crate::lattice::integer_kernel(&IntMatrix::from_rows(
        &rows, n,
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub cocycle: bool,
    /// Chains `ω ⊂ τ ⊂ τ'` where `s_{ωτ'} ≠ s_{ττ'} · s_{ωτ}`.
    pub triple_violations: Vec<(usize, usize, usize)>,
    /// Nerve edges whose value is not invariant under local monodromy.
    pub invariance_violations: Vec<(usize, usize)>,
}

/// Cocycle condition on every chain of three cells, plus monodromy invariance.
pub fn check_lifted_cocycle(c: &PolyCellComplex, l: &LiftedGluingData) -> Result<CocycleReport> {
    let mut triple_violations = Vec::new();
    let mut invariance_violations = Vec::new();
    let edges = nerve_edges(c);
    for &(o, t) in &edges {
        for &(t2, top) in edges.iter().filter(|(x, _)| *x == t) {
            let v = c.cell(o).vertices[0];
            let moved = transport(
                c,
                &l.get(c, o, t2),
                v,
                reference_cell(c, t2),
                reference_cell(c, top),
            )?;
            if l.get(c, o, top) != &l.get(c, t, top) * &moved {
                triple_violations.push((o, t, top));
            }
        }
        let x = l.get(c, o, t);
        if local_monodromies(c, o, t)?
            .iter()
            .any(|m| x.transform(m) != x)
        {
            invariance_violations.push((o, t));
        }
    }
    Ok(CocycleReport {
        cocycle: triple_violations.is_empty() && invariance_violations.is_empty(),
        triple_violations,
        invariance_violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryResult {
    /// A 0-cochain `t` with `δt = l`.
    Trivialized(ZeroCochain),
    /// A nerve edge off the spanning tree where `l` and `δt` disagree, with `l / δt` there.
    Obstructed {
        edge: (usize, usize),
        ratio: TorusElement,
    },
}

impl CoboundaryResult {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryResult::Trivialized(_))
    }
}

/// Spanning-tree trivialization over the nerve graph. Values along the tree
/// are propagated as `t_x = f_x · M_x(r)` in terms of the unknown root value
/// `r`; the off-tree edges then give a system `N r = g`, solved through the
/// Smith form with exact roots in `Q(i)`.
pub fn is_coboundary(c: &PolyCellComplex, l: &LiftedGluingData) -> Result<CoboundaryResult> {
    let n = c.dim();
    let edges = nerve_edges(c);
    let ncells = c.cells().len();
    let mut sym: BTreeMap<usize, (TorusElement, IntMatrix, usize)> = BTreeMap::new();
    let mut roots = Vec::new();
    for root in 0..ncells {
        if sym.contains_key(&root) {
            continue;
        }
        sym.insert(
            root,
            (TorusElement::one(n), IntMatrix::identity(n), roots.len()),
        );
        roots.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(o, tau) in edges.iter().filter(|(o, tau)| *o == x || *tau == x) {
                let p = transport_matrix(
                    c,
                    c.cell(o).vertices[0],
                    reference_cell(c, o),
                    reference_cell(c, tau),
                )?;
                let s = l.get(c, o, tau);
                let (f, m, comp) = sym[&x].clone();
                let (new, entry) = if o == x {
                    (tau, (&s * &f.transform(&p), &p * &m, comp))
                } else {
                    let p_inv = p.inverse_unimodular()?;
                    (o, ((&f / &s).transform(&p_inv), &p_inv * &m, comp))
                };
                if let std::collections::btree_map::Entry::Vacant(slot) = sym.entry(new) {
                    slot.insert(entry);
                    queue.push_back(new);
                }
            }
        }
    }
    let mut root_values = Vec::new();
    for comp in 0..roots.len() {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &(o, tau) in &edges {
            let (fo, mo, co) = &sym[&o];
            if *co != comp {
                continue;
            }
            let (ft, mt, _) = &sym[&tau];
            let p = transport_matrix(
                c,
                c.cell(o).vertices[0],
                reference_cell(c, o),
                reference_cell(c, tau),
            )?;
            let nmat = mt - &(&p * mo);
            let g = &(&l.get(c, o, tau) * &fo.transform(&p)) / ft;
            rows.extend(nmat.row_vecs());
            rhs.extend(g.0);
        }
        root_values.push(solve_multiplicative(
            &IntMatrix::from_rows(&rows, n),
            &rhs,
            n,
        ));
    }
    let values = sym
        .iter()
        .map(|(&x, (f, m, comp))| (x, f * &root_values[*comp].transform(m)))
        .collect();
    let t = ZeroCochain { values };
    let delta = coboundary(c, &t)?;
    for (o, tau) in edges {
        let have = l.get(c, o, tau);
        let want = delta.get(c, o, tau);
        if have != want {
            return Ok(CoboundaryResult::Obstructed {
                edge: (o, tau),
                ratio: &have / &want,
            });
        }
    }
    Ok(CoboundaryResult::Trivialized(t))
}

/// A solution of `x^N = g` (rows of `N` as exponent vectors) where one is
/// found; unsolvable coordinates are left at 1 so the caller sees the mismatch.
fn solve_multiplicative(nmat: &IntMatrix, g: &[CStarValue], n: usize) -> TorusElement {
    if nmat.rows() == 0 {
        return TorusElement::one(n);
    }
    let snf = crate::lattice::smith_normal_form(nmat);
    let ug = TorusElement(g.to_vec()).transform(&snf.u);
    let y: Vec<CStarValue> = (0..n)
        .map(|i| {
            if i < snf.rank {
                let d = snf.d[(i, i)]
                    .abs()
                    .to_u64()
                    .expect("small invariant factor");
                ug.0[i].root(d).unwrap_or_else(CStarValue::one)
            } else {
                CStarValue::one()
            }
        })
        .collect();
    TorusElement(y).transform(&snf.v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_boundary_complex;
    use crate::complex::examples::*;
    use crate::polyhedra::LatticePolytope;

    fn cv(p: i64, q: i64) -> CStarValue {
        CStarValue::from_ratio(p, q)
    }

    #[test]
    fn gaussian_arithmetic() {
        let z = CStarValue::new(Rat::from_integer(1.into()), Rat::from_integer(1.into())).unwrap();
        assert_eq!(&z * &z.inv(), CStarValue::one());
        assert_eq!(CStarValue::i().pow(&Int::from(4)), CStarValue::one());
        assert_eq!(
            CStarValue::i().pow(&Int::from(-1)),
            CStarValue::new(Rat::zero(), -Rat::one()).unwrap()
        );
        assert!(CStarValue::new(Rat::zero(), Rat::zero()).is_err());
        assert_eq!(z.to_string(), "1+1i");
    }

    #[test]
    fn transform_is_a_homomorphism() {
        let x = TorusElement(vec![cv(2, 1), cv(3, 1)]);
        let m = IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(x.transform(&m), TorusElement(vec![cv(6, 1), cv(3, 1)]));
        let minv = m.inverse_unimodular().unwrap();
        assert_eq!(x.transform(&m).transform(&minv), x);
    }

    fn edge_tuple(ratio: TorusElement) -> (PolyCellComplex, PMTuple) {
        let c = flat_torus(3);
        let e = c.cell_id(&[0, 3]).unwrap();
        let s = reference_cell(&c, e);
        let (v, w) = (0, 3);
        assert_eq!(
            c.edge_direction(s, v, w).unwrap(),
            LatticePoint::from_i64(&[1, 0])
        );
        let values = BTreeMap::from([(v, ratio), (w, TorusElement::one(2))]);
        (
            c,
            PMTuple {
                tau: e,
                sigma: s,
                values,
            },
        )
    }

    #[test]
    fn pm_membership_along_first_axis() {
        let (c, t) = edge_tuple(TorusElement(vec![cv(5, 1), cv(1, 1)]));
        assert!(pm_membership(&c, &t).unwrap().member);
        let (c, t) = edge_tuple(TorusElement(vec![cv(1, 1), cv(2, 1)]));
        let r = pm_membership(&c, &t).unwrap();
        assert!(!r.member);
        assert_eq!(r.failing, vec![(t.tau, 0, 3)]);
        let (c, t) = edge_tuple(TorusElement::one(2));
        assert!(pm_membership(&c, &t).unwrap().member);
    }

    #[test]
    fn pm_membership_is_independent_of_reference_cell() {
        let c = tetrahedron_boundary();
        for e in c.cells_of_dim(1) {
            let (s0, s1) = (c.cell(e).max_cells[0], c.cell(e).max_cells[1]);
            let (v, w) = (c.cell(e).vertices[0], c.cell(e).vertices[1]);
            let d = c.edge_direction(s0, v, w).unwrap();
            let good = PMTuple {
                tau: e,
                sigma: s0,
                values: BTreeMap::from([
                    (v, TorusElement::from_vector(&d, &cv(7, 2))),
                    (w, TorusElement::one(2)),
                ]),
            };
            let moved = good.transport_to(&c, s1).unwrap();
            assert_eq!(
                pm_membership(&c, &good).unwrap().member,
                pm_membership(&c, &moved).unwrap().member
            );
            assert!(pm_membership(&c, &moved).unwrap().member);
        }
    }

    #[test]
    fn open_gluing_from_cochain_is_valid_and_perturbation_is_caught() {
        let c = flat_torus(3);
        assert!(
            check_open_gluing(&c, &OpenGluingData::default())
                .unwrap()
                .valid
        );
        let t = ZeroCochain {
            values: (0..c.cells().len())
                .map(|i| {
                    (
                        i,
                        TorusElement(vec![cv(i as i64 + 2, 1), cv(1, i as i64 + 3)]),
                    )
                })
                .collect(),
        };
        let mut g = OpenGluingData::from_zero_cochain(&c, &t).unwrap();
        assert!(check_open_gluing(&c, &g).unwrap().valid);
        let v = c.cells_of_dim(0)[0];
        let e = c.cofaces_of(v, 1)[0];
        let entry = g.entries.get_mut(&(v, e)).unwrap();
        let x = entry.values.get_mut(&c.cell(v).vertices[0]).unwrap();
        x.0[0] = &x.0[0] * &cv(2, 1);
        let r = check_open_gluing(&c, &g).unwrap();
        assert!(r.violations.iter().any(|x| matches!(x, OpenGluingViolation::Composition { tau, mid, .. } if *tau == v && *mid == e)));
    }

    #[test]
    fn trivial_cocycle_trivializes_to_one() {
        let c = tetrahedron_boundary();
        let l = LiftedGluingData::default();
        assert!(check_lifted_cocycle(&c, &l).unwrap().cocycle);
        match is_coboundary(&c, &l).unwrap() {
            CoboundaryResult::Trivialized(t) => {
                assert!(t.values.values().all(TorusElement::is_one))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_boundary_cycle_obstruction() {
        let c = build_boundary_complex(&LatticePolytope::cube(2)).unwrap();
        assert_eq!(nerve_edges(&c).len(), 8);
        let mut l = LiftedGluingData::default();
        let (o, t) = nerve_edges(&c)[3];
        l.values.insert((o, t), TorusElement(vec![cv(2, 1)]));
        assert!(check_lifted_cocycle(&c, &l).unwrap().cocycle);
        assert!(!is_coboundary(&c, &l).unwrap().is_coboundary());
    }

    #[test]
    fn tetrahedron_sections_and_triple_violation() {
        let c = tetrahedron_boundary();
        let mut t = ZeroCochain::default();
        let coeffs = [cv(2, 1), cv(3, 1), cv(1, 2), CStarValue::i()];
        for tau in 0..c.cells().len() {
            let basis = section_lattice(&c, tau).unwrap();
            let picks: Vec<_> = (0..basis.len())
                .map(|k| coeffs[(tau + k) % 4].clone())
                .collect();
            t.values
                .insert(tau, TorusElement::from_combination(2, &basis, &picks));
        }
        let l = coboundary(&c, &t).unwrap();
        let r = check_lifted_cocycle(&c, &l).unwrap();
        assert!(r.cocycle, "{r:?}");
        assert!(is_coboundary(&c, &l).unwrap().is_coboundary());

        let v = c.cells_of_dim(0)[0];
        let e = c.cofaces_of(v, 1)[0];
        let s = c.max_cell_id(c.cell(e).max_cells[0]);
        let mut bad = l.clone();
        let x = bad.get(&c, v, s);
        bad.values
            .insert((v, s), &x * &TorusElement(vec![cv(2, 1), cv(1, 1)]));
        let r = check_lifted_cocycle(&c, &bad).unwrap();
        assert!(r.triple_violations.contains(&(v, e, s)));
        assert!(!is_coboundary(&c, &bad).unwrap().is_coboundary());
    }
}
