//! Integer polynomials: Sturm counts, factorization over Z at small degree,
//! and restriction of homogeneous forms to coordinate lines.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{rat_to_f64, Int, Rat};

/// Univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Int) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn monomial(c: Int, k: usize) -> Self {
        let mut v = vec![Int::zero(); k];
        v.push(c);
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or_else(Int::zero)
    }

    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() {
            return IntPoly::zero();
        }
        let g = if self.leading().is_negative() { -g } else { g };
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from(c.clone()))
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        self.coeffs
            .iter()
            .rev()
            .fold(Int::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg · p(1/x)`.
    pub fn reciprocal(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Exact division in `Z[x]`, if possible.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = rat_div_rem(&to_rat(self), &to_rat(d));
        if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPoly::new(
            q.into_iter().map(|c| c.to_integer()).collect(),
        ))
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = rat_gcd(to_rat(self), to_rat(&self.derivative()));
        let (q, _) = rat_div_rem(&to_rat(self), &g);
        from_rat(&q)
    }

    fn sign_at(&self, x: &Bound) -> i32 {
        match x {
            Bound::Finite(x) => sign(&self.eval(x)),
            Bound::PosInf => sign_int(&self.leading()),
            Bound::NegInf => {
                let s = sign_int(&self.leading());
                if self.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Int::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let neg = IntPoly::new(o.coeffs.iter().map(|c| -c).collect());
        self + &neg
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            match (show_coeff, i) {
                (_, 0) => write!(f, "{a}")?,
                (true, 1) => write!(f, "{a}x")?,
                (false, 1) => write!(f, "x")?,
                (true, _) => write!(f, "{a}x^{i}")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

fn sign(x: &Rat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_int(x: &Int) -> i32 {
    sign(&Rat::from(x.clone()))
}

fn to_rat(p: &IntPoly) -> Vec<Rat> {
    p.coeffs.iter().map(|c| Rat::from(c.clone())).collect()
}

/// Clears denominators and takes the primitive part.
fn from_rat(p: &[Rat]) -> IntPoly {
    let l = p.iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
    IntPoly::new(
        p.iter()
            .map(|c| (c * Rat::from(l.clone())).to_integer())
            .collect(),
    )
    .primitive()
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rat_div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, bi) in b.iter().enumerate() {
            r[i + k] -= &c * bi;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn rat_gcd(mut a: Vec<Rat>, mut b: Vec<Rat>) -> Vec<Rat> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = rat_div_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// End point of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// Sturm sequence `p, p', -rem(p, p'), ...` of the squarefree part, over Q.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let p = p.squarefree_part();
    let mut seq = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    let mut a = to_rat(&p);
    let mut b = to_rat(&p.derivative());
    while !b.is_empty() {
        seq.push(from_rat_signed(&b));
        let (_, r) = rat_div_rem(&a, &b);
        a = b;
        b = r.into_iter().map(|c| -c).collect();
    }
    seq
}

/// Like [`from_rat`] but keeping the sign, which matters for Sturm chains.
fn from_rat_signed(p: &[Rat]) -> IntPoly {
    let l = p.iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
    let q = IntPoly::new(
        p.iter()
            .map(|c| (c * Rat::from(l.clone())).to_integer())
            .collect(),
    );
    let g = q.content();
    IntPoly::new(q.coeffs.iter().map(|c| c / &g).collect())
}

fn variations(seq: &[IntPoly], x: &Bound) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &IntPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Invalid(
            "the zero polynomial has no finite root count".into(),
        ));
    }
    let seq = sturm_sequence(p);
    let (a, b) = (variations(&seq, lo), variations(&seq, hi));
    Ok(a.saturating_sub(b))
}

/// All distinct real roots on the whole line.
pub fn real_root_count(p: &IntPoly) -> Result<usize> {
    sturm_count(p, &Bound::NegInf, &Bound::PosInf)
}

/// Isolating intervals `(lo, hi]` of width below `tol`, one per distinct real root, in increasing order.
pub fn isolate_real_roots(p: &IntPoly, tol: &Rat) -> Result<Vec<(Rat, Rat)>> {
    if p.is_zero() {
        return Err(Error::Invalid(
            "the zero polynomial has no isolated roots".into(),
        ));
    }
    let seq = sturm_sequence(p);
    let count = |a: &Rat, b: &Rat| {
        variations(&seq, &Bound::Finite(a.clone())) - variations(&seq, &Bound::Finite(b.clone()))
    };
    // Cauchy bound
    let lead = Rat::from(p.leading().abs());
    let r = p
        .coeffs
        .iter()
        .map(|c| Rat::from(c.abs()) / &lead)
        .max()
        .unwrap_or_else(Rat::zero)
        + Rat::one();
    let mut stack = vec![(-r.clone(), r)];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 if &b - &a < *tol => out.push((a, b)),
            _ => {
                let m = (&a + &b) / Rat::from(Int::from(2));
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Irreducible factorization over Z: `content · Π factors` (with repetition).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Int,
    /// Primitive irreducible factors with positive leading coefficient, sorted by degree then coefficients.
    pub factors: Vec<IntPoly>,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, f| &acc * f)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.content.is_one() || self.factors.is_empty() {
            write!(f, "{}", self.content)?;
        }
        for p in &self.factors {
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

pub const MAX_FACTOR_DEGREE: usize = 8;

/// Kronecker factorization; degrees above [`MAX_FACTOR_DEGREE`] are refused.
pub fn factor_int_poly(p: &IntPoly) -> Result<Factorization> {
    let d = p
        .degree()
        .ok_or_else(|| Error::Invalid("cannot factor the zero polynomial".into()))?;
    if d > MAX_FACTOR_DEGREE {
        return Err(Error::Invalid(format!(
            "degree {d} exceeds the factoring bound {MAX_FACTOR_DEGREE}"
        )));
    }
    let mut content = p.content();
    if p.leading().is_negative() {
        content = -content;
    }
    let mut rest = p.primitive();
    let mut factors = Vec::new();
    let x = IntPoly::from_i64(&[0, 1]);
    while rest.degree().unwrap_or(0) > 0 && rest.coeffs[0].is_zero() {
        factors.push(x.clone());
        rest = rest.div_exact(&x).expect("x divides");
    }
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        match kronecker_divisor(&rest, k) {
            Some(f) => {
                rest = rest.div_exact(&f).expect("verified divisor");
                factors.push(f);
            }
            None => k += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        factors.push(rest);
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(Factorization { content, factors })
}

fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    let mut out = Vec::new();
    let r = n.sqrt();
    let mut i = Int::one();
    while i <= r {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out.iter().cloned().chain(out.iter().map(|d| -d)).collect()
}

/// A primitive divisor of degree exactly `k`, interpolated through divisors of values.
fn kronecker_divisor(p: &IntPoly, k: usize) -> Option<IntPoly> {
    let mut xs = Vec::new();
    let mut x = Int::zero();
    while xs.len() <= k {
        let v = p.eval_int(&x);
        if v.is_zero() {
            let lin = IntPoly::new(vec![-x.clone(), Int::one()]);
            return if k == 1 { Some(lin) } else { None };
        }
        xs.push((x.clone(), divisors(&v)));
        x = if x.is_positive() { -x } else { -x + 1 };
    }
    let mut choice = vec![0usize; xs.len()];
    loop {
        let pts: Vec<(Rat, Rat)> = xs
            .iter()
            .zip(&choice)
            .map(|((x, ds), &i)| (Rat::from(x.clone()), Rat::from(ds[i].clone())))
            .collect();
        let q = interpolate(&pts);
        if q.len() == k + 1 && q.iter().all(Rat::is_integer) {
            let f = IntPoly::new(q.iter().map(|c| c.to_integer()).collect()).primitive();
            if f.degree() == Some(k) && p.div_exact(&f).is_some() {
                return Some(f);
            }
        }
        let mut j = 0;
        loop {
            if j == choice.len() {
                return None;
            }
            choice[j] += 1;
            if choice[j] < xs[j].1.len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Lagrange interpolation, lowest coefficient first.
fn interpolate(pts: &[(Rat, Rat)]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); pts.len()];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * yi / &denom;
        }
    }
    trim(&mut out);
    out
}

/// `(rational + coeff·√radicand)`, an exact real root of a factor of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub rational: Rat,
    pub coeff: Rat,
    pub radicand: Int,
}

impl QuadraticSurd {
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.rational)
            + rat_to_f64(&self.coeff) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Whether the root of `p`, checked exactly in `Q(√radicand)`.
    pub fn is_root_of(&self, p: &IntPoly) -> bool {
        // (a + b√d) arithmetic as pairs
        let d = Rat::from(self.radicand.clone());
        let (mut re, mut ir) = (Rat::zero(), Rat::zero());
        for c in p.coeffs.iter().rev() {
            let nre = &re * &self.rational + &ir * &self.coeff * &d + Rat::from(c.clone());
            let nir = &re * &self.coeff + &ir * &self.rational;
            re = nre;
            ir = nir;
        }
        re.is_zero() && ir.is_zero()
    }
}

impl fmt::Display for QuadraticSurd {
    /// `(a±b√d)/c` with a common denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let c = self.rational.denom().lcm(self.coeff.denom());
        let a = (&self.rational * Rat::from(c.clone())).to_integer();
        let b = (&self.coeff * Rat::from(c.clone())).to_integer();
        let bs = if b.abs().is_one() {
            String::new()
        } else {
            b.abs().to_string()
        };
        let sgn = if b.is_negative() { '-' } else { '+' };
        let num = if a.is_zero() {
            format!(
                "{}{bs}√{}",
                if b.is_negative() { "-" } else { "" },
                self.radicand
            )
        } else {
            format!("{a}{sgn}{bs}√{}", self.radicand)
        };
        if c.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{c}")
        }
    }
}

/// Exact real roots of a polynomial of degree one or two, increasing.
pub fn quadratic_roots(p: &IntPoly) -> Option<Vec<QuadraticSurd>> {
    let c = p.coeffs();
    match p.degree()? {
        1 => Some(vec![QuadraticSurd {
            rational: -Rat::new(c[0].clone(), c[1].clone()),
            coeff: Rat::zero(),
            radicand: Int::zero(),
        }]),
        2 => {
            let disc = &c[1] * &c[1] - Int::from(4) * &c[0] * &c[2];
            if disc.is_negative() {
                return Some(Vec::new());
            }
            let two_a = Int::from(2) * &c[2];
            let rational = Rat::new(-c[1].clone(), two_a.clone());
            let s = disc.sqrt();
            if &s * &s == disc {
                let mut r = vec![
                    rational.clone() - Rat::new(s.clone(), two_a.clone()),
                    rational + Rat::new(s, two_a),
                ];
                r.sort();
                r.dedup();
                return Some(
                    r.into_iter()
                        .map(|x| QuadraticSurd {
                            rational: x,
                            coeff: Rat::zero(),
                            radicand: Int::zero(),
                        })
                        .collect(),
                );
            }
            // pull square factors out of the radicand
            let (mut sq, mut rad) = (Int::one(), disc);
            let mut k = Int::from(2);
            while &k * &k <= rad {
                while (&rad % (&k * &k)).is_zero() {
                    rad /= &k * &k;
                    sq *= &k;
                }
                k += 1;
            }
            let coeff = Rat::new(sq, two_a.abs());
            Some(vec![
                QuadraticSurd {
                    rational: rational.clone(),
                    coeff: -coeff.clone(),
                    radicand: rad.clone(),
                },
                QuadraticSurd {
                    rational,
                    coeff,
                    radicand: rad,
                },
            ])
        }
        _ => None,
    }
}

/// Homogeneous polynomial in `nvars` variables, sparse by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Int>,
}

impl HomogeneousPoly {
    pub fn new(nvars: usize, terms: BTreeMap<Vec<u32>, Int>) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut degree = None;
        for e in terms.keys() {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {e:?} in {nvars} variables"
                )));
            }
            let d: u32 = e.iter().sum();
            if *degree.get_or_insert(d) != d {
                return Err(Error::Invalid(format!(
                    "not homogeneous: degrees {} and {d}",
                    degree.unwrap()
                )));
            }
        }
        Ok(HomogeneousPoly {
            nvars,
            degree: degree.unwrap_or(0),
            terms,
        })
    }

    pub fn from_i64(nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (e, c) in terms {
            *m.entry(e.to_vec()).or_insert_with(Int::zero) += Int::from(*c);
        }
        HomogeneousPoly::new(nvars, m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Int> {
        &self.terms
    }
}

/// `Σ X_i⁴ - 7 Σ_{i<j} X_i² X_j²` in four variables.
pub fn k3_quartic() -> HomogeneousPoly {
    let mut terms = BTreeMap::new();
    for i in 0..4 {
        let mut e = vec![0u32; 4];
        e[i] = 4;
        terms.insert(e, Int::one());
        for j in i + 1..4 {
            let mut e = vec![0u32; 4];
            e[i] = 2;
            e[j] = 2;
            terms.insert(e, Int::from(-7));
        }
    }
    HomogeneousPoly::new(4, terms).expect("homogeneous quartic")
}

/// Restriction of a form to the coordinate line where all variables but `X_i, X_j` vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRestriction {
    /// `(i, j)`: the line is parametrized by `x = X_i / X_j`.
    pub edge: (usize, usize),
    /// Coefficient of `X_i^k X_j^(d-k)` at index `k`.
    pub binary_form: Vec<Int>,
    pub univariate: IntPoly,
}

impl EdgeRestriction {
    /// Whether the line lies in the zero locus.
    pub fn vanishes(&self) -> bool {
        self.univariate.is_zero()
    }
}

pub fn restrict_to_edge(f: &HomogeneousPoly, i: usize, j: usize) -> Result<EdgeRestriction> {
    if i == j || i >= f.nvars || j >= f.nvars {
        return Err(Error::Invalid(format!(
            "({i}, {j}) is not a coordinate line in {} variables",
            f.nvars
        )));
    }
    let d = f.degree as usize;
    let mut form = vec![Int::zero(); d + 1];
    for (e, c) in &f.terms {
        if e.iter()
            .enumerate()
            .all(|(k, &x)| x == 0 || k == i || k == j)
        {
            form[e[i] as usize] += c;
        }
    }
    let univariate = IntPoly::new(form.clone());
    Ok(EdgeRestriction {
        edge: (i, j),
        binary_form: form,
        univariate,
    })
}
