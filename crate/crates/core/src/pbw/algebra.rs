use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{Generator, LinComb, Monomial, PbwElement, TensorElement, TensorKey};
use crate::error::{Error, Result};
use crate::series::{inv_factorial, Param, TruncatedSeries, Truncation};

/// Which specialization of the relations and Hopf maps is in use.
///
/// All three share one multiplication rule; the one-parameter presets are the
/// two-parameter algebra with the other parameter truncated away.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Preset {
    StandardH,
    NonstandardW,
    TwoParameter,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::StandardH, Preset::NonstandardW, Preset::TwoParameter];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::StandardH => "standard-h",
            Preset::NonstandardW => "nonstandard-w",
            Preset::TwoParameter => "two-parameter",
        }
    }

    pub fn parse(s: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == s)
    }

    /// The truncation actually used: the parameter absent from the preset gets order 1.
    pub fn effective(&self, trunc: Truncation) -> Truncation {
        match self {
            Preset::StandardH => Truncation::new(trunc.kh, 1),
            Preset::NonstandardW => Truncation::new(1, trunc.kw),
            Preset::TwoParameter => trunc,
        }
    }
}

type Cache<K, V> = Mutex<HashMap<K, Arc<V>>>;

fn cached<K: std::hash::Hash + Eq + Clone, V>(
    cache: &Cache<K, V>,
    key: &K,
    compute: impl FnOnce() -> V,
) -> Arc<V> {
    if let Some(v) = cache.lock().unwrap().get(key) {
        return v.clone();
    }
    // The lock is released while computing: computations recurse into the cache.
    let v = Arc::new(compute());
    cache.lock().unwrap().entry(key.clone()).or_insert(v).clone()
}

/// The algebra `U_{h,w}(H(4))` at a fixed truncation, with memoized normal ordering.
///
/// Relations: `E` central, `[A, Ap] = sinh(hE)/h e^{w Ap}`, `[N, Ap] = (e^{w Ap} - 1)/w`,
/// `[N, A] = -A`.
pub struct Algebra {
    trunc: Truncation,
    /// `sinh(hE)/h e^{w Ap}` as `(E-power, Ap-power, coefficient)`.
    ap_a_commutator: Vec<(u16, u16, TruncatedSeries)>,
    /// `(e^{w Ap} - 1)/w` as `(Ap-power, coefficient)`.
    ap_n_commutator: Vec<(u16, TruncatedSeries)>,
    right_ap: Cache<Monomial, PbwElement>,
    mono: Cache<(Monomial, Monomial), PbwElement>,
    pub(crate) hopf_cache: super::hopf::HopfCache,
}

impl Algebra {
    pub fn new(trunc: Truncation) -> Self {
        let mut ap_a_commutator = Vec::new();
        // sinh(hE)/h = sum_n h^{2n} E^{2n+1} / (2n+1)!, e^{w Ap} = sum_m w^m Ap^m / m!
        let mut n = 0;
        while 2 * n < trunc.kh {
            for m in 0..trunc.kw {
                let c = inv_factorial(2 * n + 1) * inv_factorial(m);
                ap_a_commutator.push((
                    (2 * n + 1) as u16,
                    m as u16,
                    TruncatedSeries::monomial(c, 2 * n, m, trunc),
                ));
            }
            n += 1;
        }
        let ap_n_commutator = (1..=trunc.kw)
            .map(|m| {
                (
                    m as u16,
                    TruncatedSeries::monomial(inv_factorial(m), 0, m - 1, trunc),
                )
            })
            .collect();
        Algebra {
            trunc,
            ap_a_commutator,
            ap_n_commutator,
            right_ap: Mutex::new(HashMap::new()),
            mono: Mutex::new(HashMap::new()),
            hopf_cache: Default::default(),
        }
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    fn check(&self, t: Truncation) -> Result<()> {
        if t != self.trunc {
            return Err(Error::TruncationMismatch(self.trunc, t));
        }
        Ok(())
    }

    pub fn one(&self) -> PbwElement {
        PbwElement::one(self.trunc)
    }

    pub fn zero(&self) -> PbwElement {
        PbwElement::zero(self.trunc)
    }

    pub fn gen(&self, g: Generator) -> PbwElement {
        PbwElement::generator(g, self.trunc)
    }

    pub fn scalar(&self, s: TruncatedSeries) -> Result<PbwElement> {
        self.check(s.truncation())?;
        Ok(PbwElement::scalar(s))
    }

    pub fn param(&self, p: Param) -> PbwElement {
        PbwElement::scalar(TruncatedSeries::param_pow(p, 1, self.trunc))
    }

    pub fn rational(&self, q: BigRational) -> PbwElement {
        PbwElement::scalar(TruncatedSeries::constant(q, self.trunc))
    }

    fn shift_e(x: &PbwElement, e: u16) -> PbwElement {
        if e == 0 {
            return x.clone();
        }
        x.map_keys(|m| Monomial { e: m.e + e, ..*m })
    }

    /// `m · Ap` for an `E`-free monomial.
    fn right_mul_ap(&self, m: Monomial) -> Arc<PbwElement> {
        debug_assert_eq!(m.e, 0);
        cached(&self.right_ap, &m, || {
            let mut out = PbwElement::zero(self.trunc);
            if m.a > 0 {
                // X A Ap = (X Ap) A + X [A, Ap]
                let x = Monomial { a: m.a - 1, ..m };
                for (t, c) in self.right_mul_ap(x).terms() {
                    out.add_term(Monomial { a: t.a + 1, ..*t }, c);
                }
                for (e, p, c) in &self.ap_a_commutator {
                    let prod = self.mono_mul(x, Monomial::new(*e, *p, 0, 0));
                    for (t, d) in prod.terms() {
                        out.add_product_term(*t, c, d);
                    }
                }
            } else if m.n > 0 {
                // Y N Ap = (Y Ap) N + Y [N, Ap]
                let y = Monomial { n: m.n - 1, ..m };
                for (t, c) in self.right_mul_ap(y).terms() {
                    for (t2, d) in self.right_mul_n(*t) {
                        out.add_product_term(t2, c, &d);
                    }
                }
                for (p, c) in &self.ap_n_commutator {
                    let prod = self.mono_mul(y, Monomial::new(0, *p, 0, 0));
                    for (t, d) in prod.terms() {
                        out.add_product_term(*t, c, d);
                    }
                }
            } else {
                out.add_term(Monomial { ap: m.ap + 1, ..m }, &TruncatedSeries::one(self.trunc));
            }
            out
        })
    }

    /// `m · N` via `A^l N = (N + l) A^l`.
    fn right_mul_n(&self, m: Monomial) -> Vec<(Monomial, TruncatedSeries)> {
        let mut v = vec![(Monomial { n: m.n + 1, ..m }, TruncatedSeries::one(self.trunc))];
        if m.a > 0 {
            v.push((
                m,
                TruncatedSeries::constant(BigRational::from_integer(m.a.into()), self.trunc),
            ));
        }
        v
    }

    fn right_mul_gen(&self, m: Monomial, g: Generator) -> PbwElement {
        let one = TruncatedSeries::one(self.trunc);
        match g {
            Generator::E => PbwElement::term(Monomial { e: m.e + 1, ..m }, one),
            Generator::A => PbwElement::term(Monomial { a: m.a + 1, ..m }, one),
            Generator::N => {
                let mut out = PbwElement::zero(self.trunc);
                for (t, c) in self.right_mul_n(m) {
                    out.add_term(t, &c);
                }
                out
            }
            Generator::Ap => Self::shift_e(&self.right_mul_ap(m.without_e()), m.e),
        }
    }

    /// Normal-ordered product of two monomials.
    pub fn mono_mul(&self, m1: Monomial, m2: Monomial) -> Arc<PbwElement> {
        let e = m1.e + m2.e;
        let (x, y) = (m1.without_e(), m2.without_e());
        if e > 0 {
            return Arc::new(Self::shift_e(&self.mono_mul(x, y), e));
        }
        if y.is_one() || x.is_one() {
            let m = if y.is_one() { x } else { y };
            return Arc::new(PbwElement::monomial(m, self.trunc));
        }
        cached(&self.mono, &(x, y), || {
            // peel the leftmost generator of y
            let (g, rest) = if y.ap > 0 {
                (Generator::Ap, Monomial { ap: y.ap - 1, ..y })
            } else if y.n > 0 {
                (Generator::N, Monomial { n: y.n - 1, ..y })
            } else {
                (Generator::A, Monomial { a: y.a - 1, ..y })
            };
            let head = self.right_mul_gen(x, g);
            if rest.is_one() {
                return head;
            }
            let mut out = PbwElement::zero(self.trunc);
            for (t, c) in head.terms() {
                for (t2, d) in self.mono_mul(*t, rest).terms() {
                    out.add_product_term(*t2, c, d);
                }
            }
            out
        })
    }

    /// Normal-ordered product `x · y`.
    pub fn mul(&self, x: &PbwElement, y: &PbwElement) -> Result<PbwElement> {
        self.check(x.truncation())?;
        self.check(y.truncation())?;
        let mut out = PbwElement::zero(self.trunc);
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                let c = c1.mul_ref(c2);
                if c.is_zero() {
                    continue;
                }
                for (m, d) in self.mono_mul(*m1, *m2).terms() {
                    out.add_product_term(*m, &c, d);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[&PbwElement]) -> Result<PbwElement> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, x: &PbwElement, y: &PbwElement) -> Result<PbwElement> {
        self.mul(x, y)?.sub(&self.mul(y, x)?)
    }

    /// Slotwise product of tensors of equal arity.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.arity() != y.arity() {
            return Err(Error::ArityMismatch(x.arity(), y.arity()));
        }
        self.check(x.truncation())?;
        self.check(y.truncation())?;
        let arity = x.arity();
        let mut acc: HashMap<TensorKey, TruncatedSeries> = HashMap::new();
        for (k1, c1) in x.terms() {
            for (k2, c2) in y.terms() {
                let c = c1.mul_ref(c2);
                if c.is_zero() {
                    continue;
                }
                let slots: Vec<Arc<PbwElement>> =
                    (0..arity).map(|i| self.mono_mul(k1.0[i], k2.0[i])).collect();
                let mut partial = vec![(TensorKey([Monomial::ONE; 3]), c)];
                for (i, s) in slots.iter().enumerate() {
                    let mut next = Vec::with_capacity(partial.len() * s.len());
                    for (key, pc) in &partial {
                        for (m, d) in s.terms() {
                            let p = pc.mul_ref(d);
                            if p.is_zero() {
                                continue;
                            }
                            let mut k = *key;
                            k.0[i] = *m;
                            next.push((k, p));
                        }
                    }
                    partial = next;
                }
                for (k, p) in partial {
                    match acc.entry(k) {
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(p);
                        }
                        std::collections::hash_map::Entry::Occupied(mut o) => {
                            o.get_mut().add_assign_ref(&p);
                        }
                    }
                }
            }
        }
        let mut out = TensorElement::zero(arity, self.trunc);
        for (k, c) in acc {
            out.add_term(k, &c);
        }
        Ok(out)
    }

    pub fn tensor_mul_all(&self, factors: &[&TensorElement]) -> Result<TensorElement> {
        let mut iter = factors.iter();
        let first = iter.next().ok_or(Error::ArityMismatch(0, 1))?;
        let mut acc = (*first).clone();
        for f in iter {
            acc = self.tensor_mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `x ⊗ y` for PBW elements.
    pub fn tensor(&self, x: &PbwElement, y: &PbwElement) -> Result<TensorElement> {
        TensorElement::pure(&[x, y])
    }

    pub fn exp(&self, x: &PbwElement) -> Result<PbwElement> {
        exp_generic(self, x)
    }

    pub fn tensor_exp(&self, x: &TensorElement) -> Result<TensorElement> {
        exp_generic(self, x)
    }

    pub fn inverse(&self, x: &PbwElement) -> Result<PbwElement> {
        inverse_generic(self, x)
    }

    pub fn tensor_inverse(&self, x: &TensorElement) -> Result<TensorElement> {
        inverse_generic(self, x)
    }

    pub fn pow(&self, x: &PbwElement, n: u32) -> Result<PbwElement> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `sum_n c_n x^n` for a nilpotent `x`, with `coeff(n)` giving `c_n` as a series.
    pub fn power_series(
        &self,
        x: &PbwElement,
        coeff: impl Fn(u32) -> TruncatedSeries,
    ) -> Result<PbwElement> {
        power_series_generic(self, x, coeff)
    }

    pub fn tensor_power_series(
        &self,
        x: &TensorElement,
        coeff: impl Fn(u32) -> TruncatedSeries,
    ) -> Result<TensorElement> {
        power_series_generic(self, x, coeff)
    }

    /// `Q = (1 - e^{-w Ap})/w`, the primitive element of the untwisted structure.
    pub fn q_element(&self) -> PbwElement {
        let mut out = self.zero();
        for m in 1..=self.trunc.kw {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            out.add_term(
                Monomial::new(0, m as u16, 0, 0),
                &TruncatedSeries::monomial(
                    inv_factorial(m) * BigRational::from_integer(sign.into()),
                    0,
                    m - 1,
                    self.trunc,
                ),
            );
        }
        out
    }

    /// `sinh(h E)/h`.
    pub fn sinh_e(&self) -> PbwElement {
        let mut out = self.zero();
        let mut n = 0;
        while 2 * n < self.trunc.kh {
            out.add_term(
                Monomial::new((2 * n + 1) as u16, 0, 0, 0),
                &TruncatedSeries::monomial(inv_factorial(2 * n + 1), 2 * n, 0, self.trunc),
            );
            n += 1;
        }
        out
    }

    /// `e^{c p X}` for a generator `X` commuting with itself, `p` a parameter and `c` rational.
    pub fn exp_gen(&self, c: i64, p: Param, g: Generator) -> PbwElement {
        let mut out = self.zero();
        let order = self.trunc.order(p);
        for k in 0..order {
            let mut m = Monomial::ONE;
            match g {
                Generator::E => m.e = k as u16,
                Generator::Ap => m.ap = k as u16,
                Generator::N => m.n = k as u16,
                Generator::A => m.a = k as u16,
            }
            let coeff = inv_factorial(k) * BigRational::from_integer(c.pow(k).into());
            let (a, b) = match p {
                Param::H => (k, 0),
                Param::W => (0, k),
            };
            out.add_term(m, &TruncatedSeries::monomial(coeff, a, b, self.trunc));
        }
        out
    }
}

/// Operations shared by PBW elements and tensors for series-valued functions.
pub trait RingLike: Sized + Clone {
    fn one_like(&self) -> Self;
    fn ring_mul(&self, alg: &Algebra, other: &Self) -> Result<Self>;
    fn ring_add_scaled(&mut self, other: &Self, c: &TruncatedSeries);
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn nilpotent(&self) -> bool;
    fn identity_part(&self) -> TruncatedSeries;
}

impl RingLike for PbwElement {
    fn one_like(&self) -> Self {
        PbwElement::one(self.truncation())
    }
    fn ring_mul(&self, alg: &Algebra, other: &Self) -> Result<Self> {
        alg.mul(self, other)
    }
    fn ring_add_scaled(&mut self, other: &Self, c: &TruncatedSeries) {
        for (k, d) in other.terms() {
            self.add_product_term(*k, c, d);
        }
    }
    fn zero_like(&self) -> Self {
        PbwElement::zero(self.truncation())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn nilpotent(&self) -> bool {
        self.is_nilpotent()
    }
    fn identity_part(&self) -> TruncatedSeries {
        self.identity_coeff()
    }
}

impl RingLike for TensorElement {
    fn one_like(&self) -> Self {
        TensorElement::one(self.arity(), self.truncation())
    }
    fn ring_mul(&self, alg: &Algebra, other: &Self) -> Result<Self> {
        alg.tensor_mul(self, other)
    }
    fn ring_add_scaled(&mut self, other: &Self, c: &TruncatedSeries) {
        for (k, d) in other.terms() {
            self.body.add_product_term(*k, c, d);
        }
    }
    fn zero_like(&self) -> Self {
        TensorElement::zero(self.arity(), self.truncation())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn nilpotent(&self) -> bool {
        self.is_nilpotent()
    }
    fn identity_part(&self) -> TruncatedSeries {
        self.identity_coeff()
    }
}

pub(crate) fn power_series_generic<T: RingLike>(
    alg: &Algebra,
    x: &T,
    coeff: impl Fn(u32) -> TruncatedSeries,
) -> Result<T> {
    if !x.nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut sum = x.zero_like();
    let mut power = x.one_like();
    let mut n = 0;
    while !power.is_zero_elem() {
        let c = coeff(n);
        sum.ring_add_scaled(&power, &c);
        power = power.ring_mul(alg, x)?;
        n += 1;
    }
    Ok(sum)
}

fn exp_generic<T: RingLike>(alg: &Algebra, x: &T) -> Result<T> {
    let trunc = alg.truncation();
    power_series_generic(alg, x, |n| TruncatedSeries::constant(inv_factorial(n), trunc))
}

/// Order-by-order inverse of `x = λ(1 - z)` with `λ` a nonzero rational and `z` nilpotent.
fn inverse_generic<T: RingLike>(alg: &Algebra, x: &T) -> Result<T> {
    let lambda = x.identity_part().constant_term();
    if lambda.is_zero() {
        return Err(Error::NotInvertible);
    }
    let trunc = alg.truncation();
    let inv_lambda = TruncatedSeries::constant(BigRational::one() / &lambda, trunc);
    // z = 1 - x/λ
    let mut z = x.one_like();
    z.ring_add_scaled(x, &-&inv_lambda);
    if !z.nilpotent() {
        return Err(Error::NotInvertible);
    }
    power_series_generic(alg, &z, |_| inv_lambda.clone())
}

impl<K: Ord + Clone> LinComb<K> {
    /// Multiplies every coefficient by a rational scalar given as `p/q`.
    pub fn scaled_by(&self, p: i64, q: i64) -> Self {
        self.scale_rational(&BigRational::new(p.into(), q.into()))
    }
}

/// `sum_k coeffs[k] x^k`, a finite sum with no nilpotency requirement.
pub(crate) fn polynomial_generic<T: RingLike>(
    alg: &Algebra,
    x: &T,
    coeffs: &[TruncatedSeries],
) -> Result<T> {
    let mut sum = x.zero_like();
    let mut power = x.one_like();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            sum.ring_add_scaled(&power, c);
        }
        if k + 1 < coeffs.len() {
            power = power.ring_mul(alg, x)?;
        }
    }
    Ok(sum)
}
