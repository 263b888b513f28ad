use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

use super::algebra::{polynomial_generic, Algebra, RingLike};
use super::element::{Generator, Monomial, PbwElement, TensorElement, TensorKey};
use crate::error::{Error, Result};
use crate::series::{Param, TruncatedSeries};

/// Coproduct/antipode pair on the algebra.
///
/// `TwoParameter` is the deformed structure with `Ap` primitive. `Untwisted` is the
/// standard structure carried over to the same algebra, with `Q = (1 - e^{-w Ap})/w`
/// primitive instead; conjugating it by `e^{w N ⊗ Ap}` yields `TwoParameter`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HopfStructure {
    TwoParameter,
    Untwisted,
}

#[derive(Default)]
pub(crate) struct HopfCache {
    coproduct: Mutex<HashMap<(HopfStructure, Monomial), Arc<TensorElement>>>,
    antipode: Mutex<HashMap<(HopfStructure, Monomial), Arc<PbwElement>>>,
}

fn last_generator(m: Monomial) -> Option<(Monomial, Generator)> {
    if m.a > 0 {
        Some((Monomial { a: m.a - 1, ..m }, Generator::A))
    } else if m.n > 0 {
        Some((Monomial { n: m.n - 1, ..m }, Generator::N))
    } else if m.ap > 0 {
        Some((Monomial { ap: m.ap - 1, ..m }, Generator::Ap))
    } else if m.e > 0 {
        Some((Monomial { e: m.e - 1, ..m }, Generator::E))
    } else {
        None
    }
}

fn tensor_from(x: &PbwElement) -> TensorElement {
    TensorElement::pure(&[x]).expect("arity 1")
}

impl Algebra {
    fn tensor2(&self, x: &PbwElement, y: &PbwElement) -> TensorElement {
        TensorElement::pure(&[x, y]).expect("matching truncations")
    }

    fn primitive(&self, x: &PbwElement) -> TensorElement {
        let one = self.one();
        self.tensor2(x, &one).add(&self.tensor2(&one, x)).expect("same arity")
    }

    /// `sum_{n>=1} (±1)^{n-1} w^{n-1} X^n / n`: `-ln(1 - wX)/w` or, with `alternate`, `ln(1 + wX)/w`.
    fn log_over_w<T: RingLike>(&self, x: &T, alternate: bool) -> Result<T> {
        let trunc = self.truncation();
        let coeffs: Vec<TruncatedSeries> = (0..=trunc.kw)
            .map(|n| {
                if n == 0 {
                    return TruncatedSeries::zero(trunc);
                }
                let sign: i64 = if alternate && n % 2 == 0 { -1 } else { 1 };
                TruncatedSeries::monomial(BigRational::new(sign.into(), n.into()), 0, n - 1, trunc)
            })
            .collect();
        polynomial_generic(self, x, &coeffs)
    }

    fn coproduct_generator(&self, s: HopfStructure, g: Generator) -> TensorElement {
        let one = self.one();
        let gen = self.gen(g);
        match (s, g) {
            (_, Generator::E) => self.primitive(&gen),
            (HopfStructure::TwoParameter, Generator::Ap) => self.primitive(&gen),
            (HopfStructure::TwoParameter, Generator::N) => {
                let ewp = self.exp_gen(1, Param::W, Generator::Ap);
                self.tensor2(&gen, &ewp)
                    .add(&self.tensor2(&one, &gen))
                    .unwrap()
            }
            (HopfStructure::TwoParameter, Generator::A) => {
                let ehe = self.exp_gen(1, Param::H, Generator::E);
                let emhe = self.exp_gen(-1, Param::H, Generator::E);
                let ewp = self.exp_gen(1, Param::W, Generator::Ap);
                let t1 = self.tensor2(&gen, &self.mul(&ehe, &ewp).unwrap());
                let t2 = self.tensor2(&emhe, &gen);
                let left = self
                    .mul(&self.param(Param::W), &self.mul(&emhe, &self.gen(Generator::N)).unwrap())
                    .unwrap();
                let right = self.mul(&self.sinh_e(), &ewp).unwrap();
                let t3 = self.tensor2(&left, &right);
                t1.add(&t2).unwrap().add(&t3).unwrap()
            }
            (HopfStructure::Untwisted, Generator::N) => self.primitive(&gen),
            (HopfStructure::Untwisted, Generator::A) => {
                let ehe = self.exp_gen(1, Param::H, Generator::E);
                let emhe = self.exp_gen(-1, Param::H, Generator::E);
                self.tensor2(&gen, &ehe)
                    .add(&self.tensor2(&emhe, &gen))
                    .unwrap()
            }
            (HopfStructure::Untwisted, Generator::Ap) => {
                let x = self.primitive(&self.q_element());
                self.log_over_w(&x, false).unwrap()
            }
        }
    }

    fn antipode_generator(&self, s: HopfStructure, g: Generator) -> PbwElement {
        let gen = self.gen(g);
        match (s, g) {
            (_, Generator::E) => gen.neg(),
            (HopfStructure::TwoParameter, Generator::Ap) => gen.neg(),
            (HopfStructure::TwoParameter, Generator::N) => {
                let emwp = self.exp_gen(-1, Param::W, Generator::Ap);
                self.mul(&gen, &emwp).unwrap().neg()
            }
            (HopfStructure::TwoParameter, Generator::A) => {
                let emwp = self.exp_gen(-1, Param::W, Generator::Ap);
                let first = self.mul(&gen, &emwp).unwrap().neg();
                let second = self
                    .mul_all(&[
                        &self.param(Param::W),
                        &self.gen(Generator::N),
                        &self.sinh_e(),
                        &emwp,
                    ])
                    .unwrap();
                first.add(&second).unwrap()
            }
            (HopfStructure::Untwisted, Generator::N) | (HopfStructure::Untwisted, Generator::A) => {
                gen.neg()
            }
            (HopfStructure::Untwisted, Generator::Ap) => {
                // S(Ap) = -ln(1 + wQ)/w
                self.log_over_w(&self.q_element(), true).unwrap().neg()
            }
        }
    }

    fn coproduct_monomial(&self, s: HopfStructure, m: Monomial) -> Arc<TensorElement> {
        let key = (s, m);
        if let Some(v) = self.hopf_cache.coproduct.lock().unwrap().get(&key) {
            return v.clone();
        }
        let value = match last_generator(m) {
            None => TensorElement::one(2, self.truncation()),
            Some((rest, g)) => {
                let head = self.coproduct_monomial(s, rest);
                let tail = self.coproduct_generator_cached(s, g);
                self.tensor_mul(&head, &tail).unwrap()
            }
        };
        let v = Arc::new(value);
        self.hopf_cache
            .coproduct
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(v)
            .clone()
    }

    fn coproduct_generator_cached(&self, s: HopfStructure, g: Generator) -> Arc<TensorElement> {
        // shares the monomial-keyed cache; must not go through coproduct_monomial
        let m = Monomial::generator(g);
        let key = (s, m);
        if let Some(v) = self.hopf_cache.coproduct.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.coproduct_generator(s, g));
        self.hopf_cache
            .coproduct
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(v)
            .clone()
    }

    fn antipode_monomial(&self, s: HopfStructure, m: Monomial) -> Arc<PbwElement> {
        let key = (s, m);
        if let Some(v) = self.hopf_cache.antipode.lock().unwrap().get(&key) {
            return v.clone();
        }
        let value = match last_generator(m) {
            None => self.one(),
            Some((rest, g)) if rest.is_one() => self.antipode_generator(s, g),
            Some((rest, g)) => {
                // S(rest · g) = S(g) S(rest)
                let sg = self.antipode_monomial(s, Monomial::generator(g));
                let sr = self.antipode_monomial(s, rest);
                self.mul(&sg, &sr).unwrap()
            }
        };
        let v = Arc::new(value);
        self.hopf_cache
            .antipode
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(v)
            .clone()
    }

    /// Coproduct, extended multiplicatively from the generators.
    pub fn coproduct(&self, s: HopfStructure, x: &PbwElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(2, self.truncation());
        for (m, c) in x.terms() {
            let img = if m.degree() == 1 {
                self.coproduct_generator_cached(s, generator_of(*m))
            } else {
                self.coproduct_monomial(s, *m)
            };
            for (k, d) in img.terms() {
                out.body.add_product_term(*k, c, d);
            }
        }
        Ok(out)
    }

    /// Antipode, extended anti-multiplicatively from the generators.
    pub fn antipode(&self, s: HopfStructure, x: &PbwElement) -> Result<PbwElement> {
        let mut out = self.zero();
        for (m, c) in x.terms() {
            for (k, d) in self.antipode_monomial(s, *m).terms() {
                out.add_product_term(*k, c, d);
            }
        }
        Ok(out)
    }

    /// Counit: the identity coefficient (every generator maps to zero).
    pub fn counit(&self, x: &PbwElement) -> TruncatedSeries {
        x.identity_coeff()
    }

    /// Replaces slot `slot` (0-based) of each basis tensor by the image `f(monomial)`,
    /// which is itself a tensor of arity `k`; the result has arity `arity - 1 + k`.
    pub fn map_slot(
        &self,
        t: &TensorElement,
        slot: usize,
        mut f: impl FnMut(Monomial) -> Result<TensorElement>,
    ) -> Result<TensorElement> {
        if slot >= t.arity() {
            return Err(Error::ArityMismatch(slot + 1, t.arity()));
        }
        let mut cache: HashMap<Monomial, TensorElement> = HashMap::new();
        let mut out: Option<TensorElement> = None;
        for (key, c) in t.terms() {
            let m = key.0[slot];
            if !cache.contains_key(&m) {
                cache.insert(m, f(m)?);
            }
            let img = &cache[&m];
            let new_arity = t.arity() - 1 + img.arity();
            if new_arity > 3 || new_arity == 0 {
                return Err(Error::ArityMismatch(new_arity, 3));
            }
            let acc = out.get_or_insert_with(|| TensorElement::zero(new_arity, self.truncation()));
            for (k2, d) in img.terms() {
                let mut slots = Vec::with_capacity(3);
                slots.extend_from_slice(&key.0[..slot]);
                slots.extend_from_slice(&k2.0[..img.arity()]);
                slots.extend_from_slice(&key.0[slot + 1..t.arity()]);
                let mut arr = [Monomial::ONE; 3];
                arr[..slots.len()].copy_from_slice(&slots);
                acc.body.add_product_term(TensorKey(arr), c, d);
            }
        }
        Ok(out.unwrap_or_else(|| {
            // zero input: arity follows from a probe of the identity
            let k = f(Monomial::ONE).map(|i| i.arity()).unwrap_or(1);
            TensorElement::zero((t.arity() - 1 + k).max(1), self.truncation())
        }))
    }

    /// `Δ` applied to slot `slot` (0-based).
    pub fn coproduct_slot(
        &self,
        s: HopfStructure,
        t: &TensorElement,
        slot: usize,
    ) -> Result<TensorElement> {
        self.map_slot(t, slot, |m| {
            self.coproduct(s, &PbwElement::monomial(m, self.truncation()))
        })
    }

    pub fn antipode_slot(
        &self,
        s: HopfStructure,
        t: &TensorElement,
        slot: usize,
    ) -> Result<TensorElement> {
        self.map_slot(t, slot, |m| {
            Ok(tensor_from(&self.antipode(s, &PbwElement::monomial(m, self.truncation()))?))
        })
    }

    /// `ε` applied to slot `slot`; reduces the arity by one (arity 1 inputs are not accepted).
    pub fn counit_slot(&self, t: &TensorElement, slot: usize) -> Result<TensorElement> {
        if t.arity() < 2 {
            return Err(Error::ArityMismatch(t.arity(), 2));
        }
        if slot >= t.arity() {
            return Err(Error::ArityMismatch(slot + 1, t.arity()));
        }
        let mut out = TensorElement::zero(t.arity() - 1, self.truncation());
        for (key, c) in t.terms() {
            if !key.0[slot].is_one() {
                continue;
            }
            let mut arr = [Monomial::ONE; 3];
            let mut j = 0;
            for i in 0..t.arity() {
                if i != slot {
                    arr[j] = key.0[i];
                    j += 1;
                }
            }
            out.add_term(TensorKey(arr), c);
        }
        Ok(out)
    }

    /// Multiplication map `a ⊗ b ↦ ab` on an arity-2 tensor.
    pub fn multiply_slots(&self, t: &TensorElement) -> Result<PbwElement> {
        if t.arity() != 2 {
            return Err(Error::ArityMismatch(t.arity(), 2));
        }
        let mut out = self.zero();
        for (key, c) in t.terms() {
            for (m, d) in self.mono_mul(key.0[0], key.0[1]).terms() {
                out.add_product_term(*m, c, d);
            }
        }
        Ok(out)
    }

    /// Element of arity 1 viewed as a PBW element.
    pub fn unwrap_arity1(&self, t: &TensorElement) -> Result<PbwElement> {
        if t.arity() != 1 {
            return Err(Error::ArityMismatch(t.arity(), 1));
        }
        let mut out = self.zero();
        for (k, c) in t.terms() {
            out.add_term(k.0[0], c);
        }
        Ok(out)
    }

    /// `(S ⊗ S)` on an arity-2 tensor.
    pub fn antipode_both(&self, s: HopfStructure, t: &TensorElement) -> Result<TensorElement> {
        let once = self.antipode_slot(s, t, 0)?;
        self.antipode_slot(s, &once, 1)
    }
}

fn generator_of(m: Monomial) -> Generator {
    if m.e == 1 {
        Generator::E
    } else if m.ap == 1 {
        Generator::Ap
    } else if m.n == 1 {
        Generator::N
    } else {
        Generator::A
    }
}
