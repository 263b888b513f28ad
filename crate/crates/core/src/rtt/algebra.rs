use std::collections::BTreeMap;
use std::fmt;


use crate::error::{Error, Result};
use crate::hopf_verify::Residual;
use crate::series::{int, TruncatedSeries, Truncation};

/// Letters of the function algebra; `G = e^γ`, `Gi = e^{-γ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Alpha,
    Beta,
    G,
    Gi,
    Delta,
}

impl Sym {
    pub const ALL: [Sym; 5] = [Sym::Alpha, Sym::Beta, Sym::G, Sym::Gi, Sym::Delta];

    pub fn name(&self) -> &'static str {
        match self {
            Sym::Alpha => "α",
            Sym::Beta => "β",
            Sym::G => "g",
            Sym::Gi => "ğ",
            Sym::Delta => "δ",
        }
    }

    /// Position in the normal order `α < β < {g, ğ} < δ`.
    fn rank(&self) -> u8 {
        match self {
            Sym::Alpha => 0,
            Sym::Beta => 1,
            Sym::G | Sym::Gi => 2,
            Sym::Delta => 3,
        }
    }
}

pub type Word = Vec<Sym>;

/// One rewriting rule `x y → …`, named by the relation it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    AlphaBeta,
    AlphaG,
    AlphaGi,
    AlphaDelta,
    BetaG,
    BetaGi,
    BetaDelta,
    GGi,
    GiG,
    GDelta,
    GiDelta,
}

impl Relation {
    pub const ALL: [Relation; 11] = [
        Relation::AlphaBeta,
        Relation::AlphaG,
        Relation::AlphaGi,
        Relation::AlphaDelta,
        Relation::BetaG,
        Relation::BetaGi,
        Relation::BetaDelta,
        Relation::GGi,
        Relation::GiG,
        Relation::GDelta,
        Relation::GiDelta,
    ];

    /// The out-of-order pair this rule rewrites.
    pub fn pair(&self) -> (Sym, Sym) {
        use Sym::*;
        match self {
            Relation::AlphaBeta => (Beta, Alpha),
            Relation::AlphaG => (G, Alpha),
            Relation::AlphaGi => (Gi, Alpha),
            Relation::AlphaDelta => (Delta, Alpha),
            Relation::BetaG => (G, Beta),
            Relation::BetaGi => (Gi, Beta),
            Relation::BetaDelta => (Delta, Beta),
            Relation::GGi => (G, Gi),
            Relation::GiG => (Gi, G),
            Relation::GDelta => (Delta, G),
            Relation::GiDelta => (Delta, Gi),
        }
    }

    fn of_pair(x: Sym, y: Sym) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.pair() == (x, y))
    }

    /// Whether the rule carries deformation terms beyond the reordering itself.
    pub fn is_deformed(&self) -> bool {
        !self.rhs_raw()[1].is_empty()
    }

    /// Right-hand side as `(h-power, w-power, integer, word)`; the leading term comes first.
    fn rhs_raw(&self) -> Vec<Vec<(u32, u32, i64, Word)>> {
        use Sym::*;
        let lead = |w: Word| vec![(0, 0, 1, w)];
        match self {
            // βα = αβ - 2hα - wα²
            Relation::AlphaBeta => vec![lead(vec![Alpha, Beta]), vec![(1, 0, -2, vec![Alpha]), (0, 1, -1, vec![Alpha, Alpha])]],
            Relation::AlphaG => vec![lead(vec![Alpha, G]), vec![]],
            Relation::AlphaGi => vec![lead(vec![Alpha, Gi]), vec![]],
            // δα = αδ - wαg
            Relation::AlphaDelta => vec![lead(vec![Alpha, Delta]), vec![(0, 1, -1, vec![Alpha, G])]],
            // gβ = βg + wαg
            Relation::BetaG => vec![lead(vec![Beta, G]), vec![(0, 1, 1, vec![Alpha, G])]],
            // ğβ = βğ - wαğ
            Relation::BetaGi => vec![lead(vec![Beta, Gi]), vec![(0, 1, -1, vec![Alpha, Gi])]],
            Relation::BetaDelta => vec![lead(vec![Beta, Delta]), vec![]],
            Relation::GGi | Relation::GiG => vec![lead(vec![]), vec![]],
            // δg = gδ - wg² + wg
            Relation::GDelta => vec![lead(vec![G, Delta]), vec![(0, 1, -1, vec![G, G]), (0, 1, 1, vec![G])]],
            // δğ = ğδ + w - wğ
            Relation::GiDelta => vec![lead(vec![Gi, Delta]), vec![(0, 1, 1, vec![]), (0, 1, -1, vec![Gi])]],
        }
    }

    /// Whether the rule mentions `ğ`, which does not appear in `T`.
    pub fn involves_inverse(&self) -> bool {
        let (x, y) = self.pair();
        x == Sym::Gi || y == Sym::Gi
    }

    pub fn name(&self) -> String {
        let (x, y) = self.pair();
        format!("{}{} rule", x.name(), y.name())
    }
}

/// A change to the rewriting system, for checking that every relation is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The rule no longer applies; the pair stays as it is.
    Drop(Relation),
    /// The rule only reorders, losing its deformation terms.
    Undeform(Relation),
    /// Every `w`-term of every rule is deleted.
    DropW,
}

/// Which reducible pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Element of the function algebra: words with series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    trunc: Truncation,
    terms: BTreeMap<Word, TruncatedSeries>,
}

impl GroupElement {
    pub fn zero(trunc: Truncation) -> Self {
        GroupElement { trunc, terms: BTreeMap::new() }
    }

    pub fn from_word(word: Word, coeff: TruncatedSeries) -> Self {
        let mut x = Self::zero(coeff.truncation());
        x.add_term(word, coeff);
        x
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &TruncatedSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[Sym]) -> TruncatedSeries {
        self.terms.get(word).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.trunc))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Word, c: TruncatedSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&TruncatedSeries::constant(int(-1), other.trunc)))
    }

    pub fn scale(&self, c: &TruncatedSeries) -> Self {
        let mut out = Self::zero(self.trunc);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Whether every word is in normal order `α^a β^b g^k δ^d`.
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| find_pair(w, Strategy::Leftmost, None).is_none())
    }
}

impl Residual for GroupElement {
    fn residual_terms(&self) -> usize {
        self.terms.values().map(TruncatedSeries::len).sum()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let word: String = if w.is_empty() { "1".into() } else { w.iter().map(Sym::name).collect() };
            write!(f, "({c}){word}")?;
        }
        Ok(())
    }
}

/// Position and rule of the next reducible pair, if any.
fn find_pair(word: &[Sym], strategy: Strategy, mutation: Option<Mutation>) -> Option<(usize, Relation)> {
    let applies = |i: usize| -> Option<(usize, Relation)> {
        let (x, y) = (word[i], word[i + 1]);
        let out_of_order = x.rank() > y.rank() || matches!((x, y), (Sym::G, Sym::Gi) | (Sym::Gi, Sym::G));
        if !out_of_order {
            return None;
        }
        let rel = Relation::of_pair(x, y)?;
        if mutation == Some(Mutation::Drop(rel)) {
            return None;
        }
        Some((i, rel))
    };
    let n = word.len().saturating_sub(1);
    match strategy {
        Strategy::Leftmost => (0..n).find_map(applies),
        Strategy::Rightmost => (0..n).rev().find_map(applies),
    }
}

/// The rewriting system of the function algebra at a fixed truncation.
#[derive(Clone, Debug)]
pub struct Rewriting {
    trunc: Truncation,
    mutation: Option<Mutation>,
    strategy: Strategy,
    rules: BTreeMap<Relation, Vec<(TruncatedSeries, Word)>>,
}

impl Rewriting {
    pub fn new(trunc: Truncation) -> Self {
        Self::with(trunc, None, Strategy::Leftmost)
    }

    pub fn with(trunc: Truncation, mutation: Option<Mutation>, strategy: Strategy) -> Self {
        let mut rules = BTreeMap::new();
        for rel in Relation::ALL {
            let raw = rel.rhs_raw();
            let mut rhs: Vec<(TruncatedSeries, Word)> = raw[0]
                .iter()
                .map(|(a, b, c, w)| (TruncatedSeries::monomial(int(*c), *a, *b, trunc), w.clone()))
                .collect();
            if mutation != Some(Mutation::Undeform(rel)) {
                rhs.extend(
                    raw[1]
                        .iter()
                        .filter(|(_, b, _, _)| mutation != Some(Mutation::DropW) || *b == 0)
                        .map(|(a, b, c, w)| (TruncatedSeries::monomial(int(*c), *a, *b, trunc), w.clone())),
                );
            }
            rhs.retain(|(c, _)| !c.is_zero());
            rules.insert(rel, rhs);
        }
        Rewriting { trunc, mutation, strategy, rules }
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn one(&self) -> GroupElement {
        self.word(vec![])
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.trunc)
    }

    pub fn sym(&self, s: Sym) -> GroupElement {
        self.word(vec![s])
    }

    /// A word, not reduced.
    pub fn word(&self, w: Word) -> GroupElement {
        GroupElement::from_word(w, TruncatedSeries::one(self.trunc))
    }

    pub fn series(&self, c: TruncatedSeries) -> GroupElement {
        GroupElement::from_word(vec![], c)
    }

    pub fn h(&self) -> GroupElement {
        self.series(TruncatedSeries::h(self.trunc))
    }

    pub fn w(&self) -> GroupElement {
        self.series(TruncatedSeries::w(self.trunc))
    }

    /// Rewrites every word to normal form (or as far as a mutated system allows).
    pub fn reduce(&self, x: &GroupElement) -> GroupElement {
        let mut current = x.clone();
        loop {
            let mut next = GroupElement::zero(self.trunc);
            let mut changed = false;
            for (word, c) in &current.terms {
                match find_pair(word, self.strategy, self.mutation) {
                    None => next.add_term(word.clone(), c.clone()),
                    Some((i, rel)) => {
                        changed = true;
                        for (rc, rw) in &self.rules[&rel] {
                            let mut w = word[..i].to_vec();
                            w.extend_from_slice(rw);
                            w.extend_from_slice(&word[i + 2..]);
                            next.add_term(w, c * rc);
                        }
                    }
                }
            }
            current = next;
            if !changed {
                return current;
            }
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        x.check(y)?;
        let mut out = GroupElement::zero(self.trunc);
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                let mut w = wx.clone();
                w.extend_from_slice(wy);
                out.add_term(w, cx * cy);
            }
        }
        Ok(self.reduce(&out))
    }

    pub fn mul_all(&self, factors: &[&GroupElement]) -> Result<GroupElement> {
        factors.iter().try_fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.mul(x, y)?.sub(&self.mul(y, x)?)
    }

    /// The algebra map fixing `α, β, δ` and sending `g, ğ` to 1.
    pub fn set_g_to_one(&self, x: &GroupElement) -> GroupElement {
        let mut out = GroupElement::zero(self.trunc);
        for (w, c) in &x.terms {
            out.add_term(w.iter().copied().filter(|s| !matches!(s, Sym::G | Sym::Gi)).collect(), c.clone());
        }
        self.reduce(&out)
    }

    /// Relation `rel` as `lhs - rhs`, with `lhs` the out-of-order pair, unreduced.
    pub fn relation_element(&self, rel: Relation) -> GroupElement {
        let (x, y) = rel.pair();
        let mut out = self.word(vec![x, y]);
        for (c, w) in &Relation::rhs_full(rel, self.trunc) {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Relation {
    /// The unmutated right-hand side.
    fn rhs_full(rel: Relation, trunc: Truncation) -> Vec<(TruncatedSeries, Word)> {
        rel.rhs_raw()
            .concat()
            .into_iter()
            .map(|(a, b, c, w)| (TruncatedSeries::monomial(int(c), a, b, trunc), w))
            .filter(|(c, _)| !c.is_zero())
            .collect()
    }
}

/// Element of the two-fold tensor product of the function algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupTensor {
    trunc: Truncation,
    terms: BTreeMap<(Word, Word), TruncatedSeries>,
}

impl GroupTensor {
    pub fn zero(trunc: Truncation) -> Self {
        GroupTensor { trunc, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &TruncatedSeries)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (Word, Word), c: TruncatedSeries) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(|| TruncatedSeries::zero(c.truncation()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Residual for GroupTensor {
    fn residual_terms(&self) -> usize {
        self.terms.values().map(TruncatedSeries::len).sum()
    }
}

impl Rewriting {
    /// `x ⊗ y`.
    pub fn tensor(&self, x: &GroupElement, y: &GroupElement) -> GroupTensor {
        let mut out = GroupTensor::zero(self.trunc);
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                out.add_term((wx.clone(), wy.clone()), cx * cy);
            }
        }
        out
    }

    /// Product in the tensor product algebra, each factor reduced separately.
    pub fn tensor_mul(&self, x: &GroupTensor, y: &GroupTensor) -> GroupTensor {
        let mut out = GroupTensor::zero(self.trunc);
        for ((a, b), cx) in &x.terms {
            for ((c, d), cy) in &y.terms {
                let left = self.mul(&self.word(a.clone()), &self.word(c.clone())).expect("same truncation");
                let right = self.mul(&self.word(b.clone()), &self.word(d.clone())).expect("same truncation");
                let coeff = cx * cy;
                for (wl, cl) in &left.terms {
                    for (wr, cr) in &right.terms {
                        out.add_term((wl.clone(), wr.clone()), &(&coeff * cl) * cr);
                    }
                }
            }
        }
        out
    }

    /// The algebra map determined by images of the letters, applied to a reduced element.
    pub fn tensor_image(&self, x: &GroupElement, image: impl Fn(Sym) -> GroupTensor) -> GroupTensor {
        let mut out = GroupTensor::zero(self.trunc);
        let one = self.tensor(&self.one(), &self.one());
        for (w, c) in &x.terms {
            let mut acc = one.clone();
            for &s in w {
                acc = self.tensor_mul(&acc, &image(s));
            }
            for (k, v) in acc.terms {
                out.add_term(k, &v * c);
            }
        }
        out
    }

    /// Image under an algebra map (`anti = false`) or antihomomorphism (`anti = true`).
    pub fn image(&self, x: &GroupElement, anti: bool, image: impl Fn(Sym) -> GroupElement) -> GroupElement {
        let mut out = GroupElement::zero(self.trunc);
        for (w, c) in &x.terms {
            let mut acc = self.one();
            for &s in w {
                let img = image(s);
                acc = if anti { self.mul(&img, &acc) } else { self.mul(&acc, &img) }.expect("same truncation");
            }
            out = out.add(&acc.scale(c)).expect("same truncation");
        }
        out
    }

    /// Counit: `α, β, δ ↦ 0`, `g, ğ ↦ 1`.
    pub fn counit(&self, x: &GroupElement) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.trunc);
        for (w, c) in &x.terms {
            if w.iter().all(|s| matches!(s, Sym::G | Sym::Gi)) {
                out = &out + c;
            }
        }
        out
    }
}
