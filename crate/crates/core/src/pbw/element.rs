use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{fmt_rational, TruncatedSeries, Truncation};

/// Exponents `(i, j, k, l)` of the ordered monomial `E^i (A+)^j N^k A^l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    pub e: u16,
    pub ap: u16,
    pub n: u16,
    pub a: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: 0, ap: 0, n: 0, a: 0 };

    pub const fn new(e: u16, ap: u16, n: u16, a: u16) -> Self {
        Monomial { e, ap, n, a }
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::E => Monomial::new(1, 0, 0, 0),
            Generator::Ap => Monomial::new(0, 1, 0, 0),
            Generator::N => Monomial::new(0, 0, 1, 0),
            Generator::A => Monomial::new(0, 0, 0, 1),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn degree(&self) -> u32 {
        self.e as u32 + self.ap as u32 + self.n as u32 + self.a as u32
    }

    pub(crate) fn without_e(&self) -> Monomial {
        Monomial { e: 0, ..*self }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, p) in [("E", self.e), ("Ap", self.ap), ("N", self.n), ("A", self.a)] {
            match p {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{p}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// The generators of the algebra, in PBW order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    E,
    Ap,
    N,
    A,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::E, Generator::Ap, Generator::N, Generator::A];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::E => "E",
            Generator::Ap => "Ap",
            Generator::N => "N",
            Generator::A => "A",
        }
    }
}

/// Finite linear combination of basis keys with series coefficients.
///
/// Shared representation for [`PbwElement`] and [`TensorElement`]. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    pub(crate) terms: BTreeMap<K, TruncatedSeries>,
    pub(crate) trunc: Truncation,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(trunc: Truncation) -> Self {
        LinComb {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn term(key: K, coeff: TruncatedSeries) -> Self {
        let trunc = coeff.truncation();
        let mut out = Self::zero(trunc);
        out.add_term(key, &coeff);
        out
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis keys with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Total number of `(key, h^a w^b)` terms, i.e. nonzero rationals stored.
    pub fn scalar_term_count(&self) -> usize {
        self.terms.values().map(|c| c.len()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &TruncatedSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &K) -> TruncatedSeries {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.trunc))
    }

    pub(crate) fn add_term(&mut self, key: K, coeff: &TruncatedSeries) {
        debug_assert_eq!(coeff.truncation(), self.trunc);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self[key] += a * b`
    pub(crate) fn add_product_term(&mut self, key: K, a: &TruncatedSeries, b: &TruncatedSeries) {
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                let p = a.mul_ref(b);
                if !p.is_zero() {
                    v.insert(p);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_mul_assign(a, b);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn check(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        Ok(out)
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.trunc, other.trunc);
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn neg(&self) -> Self {
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale(&self, s: &TruncatedSeries) -> Self {
        let mut out = Self::zero(self.trunc);
        for (k, c) in &self.terms {
            out.add_product_term(k.clone(), s, c);
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.trunc);
        }
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.scale(q))).collect(),
            trunc: self.trunc,
        }
    }

    /// True when every coefficient has zero constant term, so powers of the
    /// element eventually vanish under truncation.
    pub fn is_nilpotent(&self) -> bool {
        self.terms.values().all(|c| c.constant_term().is_zero())
    }

    pub fn retruncate(&self, trunc: Truncation) -> Self {
        let mut out = Self::zero(trunc);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.retruncate(trunc));
        }
        out
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero(self.trunc);
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }
}

/// Element of the algebra on the PBW basis `E^i (A+)^j N^k A^l`.
pub type PbwElement = LinComb<Monomial>;

impl PbwElement {
    pub fn one(trunc: Truncation) -> Self {
        Self::term(Monomial::ONE, TruncatedSeries::one(trunc))
    }

    pub fn scalar(s: TruncatedSeries) -> Self {
        Self::term(Monomial::ONE, s)
    }

    pub fn monomial(m: Monomial, trunc: Truncation) -> Self {
        Self::term(m, TruncatedSeries::one(trunc))
    }

    pub fn generator(g: Generator, trunc: Truncation) -> Self {
        Self::monomial(Monomial::generator(g), trunc)
    }

    /// Coefficient of the identity monomial.
    pub fn identity_coeff(&self) -> TruncatedSeries {
        self.coeff(&Monomial::ONE)
    }

    /// True if the element is a multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.identity_coeff().is_one()
    }
}

/// Key of a tensor basis element: up to three PBW monomials; unused slots hold `1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TensorKey(pub [Monomial; 3]);

impl TensorKey {
    pub fn slot(&self, i: usize) -> Monomial {
        self.0[i]
    }
}

/// Element of the 2- or 3-fold tensor power of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub(crate) arity: usize,
    pub(crate) body: LinComb<TensorKey>,
}

impl TensorElement {
    pub fn zero(arity: usize, trunc: Truncation) -> Self {
        assert!((1..=3).contains(&arity), "tensor arity must be 1..=3");
        TensorElement {
            arity,
            body: LinComb::zero(trunc),
        }
    }

    pub fn one(arity: usize, trunc: Truncation) -> Self {
        let mut t = Self::zero(arity, trunc);
        t.body
            .add_term(TensorKey([Monomial::ONE; 3]), &TruncatedSeries::one(trunc));
        t
    }

    /// Pure tensor `x_1 ⊗ ... ⊗ x_k` of PBW elements.
    pub fn pure(factors: &[&PbwElement]) -> Result<Self> {
        let arity = factors.len();
        if !(1..=3).contains(&arity) {
            return Err(Error::ArityMismatch(arity, 3));
        }
        let trunc = factors[0].trunc;
        for f in factors {
            factors[0].check(f)?;
        }
        let mut acc: Vec<(TensorKey, TruncatedSeries)> =
            vec![(TensorKey([Monomial::ONE; 3]), TruncatedSeries::one(trunc))];
        for (slot, f) in factors.iter().enumerate() {
            let mut next = Vec::new();
            for (key, c) in &acc {
                for (m, d) in f.terms() {
                    let p = c.mul_ref(d);
                    if p.is_zero() {
                        continue;
                    }
                    let mut k = *key;
                    k.0[slot] = *m;
                    next.push((k, p));
                }
            }
            acc = next;
        }
        let mut out = Self::zero(arity, trunc);
        for (k, c) in acc {
            out.body.add_term(k, &c);
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn truncation(&self) -> Truncation {
        self.body.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn scalar_term_count(&self) -> usize {
        self.body.scalar_term_count()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &TruncatedSeries)> {
        self.body.terms()
    }

    pub fn coeff(&self, key: &TensorKey) -> TruncatedSeries {
        self.body.coeff(key)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.body.is_nilpotent()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        self.body.check(&other.body)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TensorElement {
            arity: self.arity,
            body: self.body.add(&other.body)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TensorElement {
            arity: self.arity,
            body: self.body.sub(&other.body)?,
        })
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            arity: self.arity,
            body: self.body.neg(),
        }
    }

    pub fn scale(&self, s: &TruncatedSeries) -> Self {
        TensorElement {
            arity: self.arity,
            body: self.body.scale(s),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        TensorElement {
            arity: self.arity,
            body: self.body.scale_rational(q),
        }
    }

    pub(crate) fn add_term(&mut self, key: TensorKey, c: &TruncatedSeries) {
        self.body.add_term(key, c);
    }

    /// The flip `a ⊗ b -> b ⊗ a` of an arity-2 element.
    pub fn flip(&self) -> Result<Self> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch(self.arity, 2));
        }
        Ok(TensorElement {
            arity: 2,
            body: self
                .body
                .map_keys(|k| TensorKey([k.0[1], k.0[0], Monomial::ONE])),
        })
    }

    /// Places an arity-2 element into slots `(i, j)` of an arity-3 tensor with the
    /// identity in the remaining slot: `embed(a⊗b, 1, 3) = a⊗1⊗b`.
    ///
    /// Slots are 1-based; `(i, j)` with `i > j` places the first factor in slot `i`
    /// (so `(2, 1)` gives `b⊗a⊗1`).
    pub fn embed(&self, i: usize, j: usize) -> Result<Self> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch(self.arity, 2));
        }
        if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
            return Err(Error::InvalidSlots(i, j));
        }
        Ok(TensorElement {
            arity: 3,
            body: self.body.map_keys(|k| {
                let mut out = [Monomial::ONE; 3];
                out[i - 1] = k.0[0];
                out[j - 1] = k.0[1];
                TensorKey(out)
            }),
        })
    }

    /// Coefficient of `1 ⊗ ... ⊗ 1`.
    pub fn identity_coeff(&self) -> TruncatedSeries {
        self.body.coeff(&TensorKey([Monomial::ONE; 3]))
    }

    pub fn retruncate(&self, trunc: Truncation) -> Self {
        TensorElement {
            arity: self.arity,
            body: self.body.retruncate(trunc),
        }
    }
}

fn fmt_coeff(c: &TruncatedSeries) -> String {
    if c.len() == 1 && c.constant_term() != BigRational::zero() {
        fmt_rational(&c.constant_term())
    } else {
        format!("({c})")
    }
}

impl fmt::Display for PbwElement {
    /// `c(h,w) · E^i Ap^j N^k A^l + ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    m.to_string()
                } else {
                    format!("{} · {}", fmt_coeff(c), m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .body
            .terms
            .iter()
            .map(|(k, c)| {
                let slots: Vec<String> = k.0[..self.arity].iter().map(|m| m.to_string()).collect();
                let key = slots.join(" ⊗ ");
                if c.is_one() {
                    key
                } else {
                    format!("{} · {}", fmt_coeff(c), key)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
