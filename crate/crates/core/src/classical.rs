//! The classical Heisenberg Lie algebra, its r-matrices and the classical Yang-Baxter
//! equation, with the deformation parameters kept as formal indeterminates.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::{fmt_rational, int};

/// Formal parameters appearing in classical r-matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    H,
    W,
    Mu,
    Nu,
}

impl Var {
    const ALL: [Var; 4] = [Var::H, Var::W, Var::Mu, Var::Nu];

    fn name(self) -> &'static str {
        match self {
            Var::H => "h",
            Var::W => "w",
            Var::Mu => "mu",
            Var::Nu => "nu",
        }
    }
}

/// Polynomial in the formal parameters with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<[u16; 4], BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v as usize] = 1;
        let mut p = Poly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exps: [u16; 4]) -> BigRational {
        self.0.get(&exps).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: [u16; 4], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut r = Poly::zero();
        for (e, x) in &self.0 {
            r.add_term(*e, x * c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = std::array::from_fn(|i| e1[i] + e2[i]);
                r.add_term(e, c1 * c2);
            }
        }
        r
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_rational(c))?;
            for v in Var::ALL {
                match e[v as usize] {
                    0 => {}
                    1 => write!(f, "*{}", v.name())?,
                    k => write!(f, "*{}^{k}", v.name())?,
                }
            }
        }
        Ok(())
    }
}

/// Basis of the Lie algebra in the fixed order `(n, e, a+, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    N = 0,
    E = 1,
    Ap = 2,
    A = 3,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::N, Basis::E, Basis::Ap, Basis::A];

    pub fn name(self) -> &'static str {
        match self {
            Basis::N => "n",
            Basis::E => "e",
            Basis::Ap => "a+",
            Basis::A => "a",
        }
    }
}

/// `[x, y]` on basis vectors as `(sign, basis)`, or `None` when it vanishes.
fn bracket_basis(x: Basis, y: Basis) -> Option<(i64, Basis)> {
    use Basis::*;
    match (x, y) {
        (A, Ap) => Some((1, E)),
        (Ap, A) => Some((-1, E)),
        (N, A) => Some((-1, A)),
        (A, N) => Some((1, A)),
        (N, Ap) => Some((1, Ap)),
        (Ap, N) => Some((-1, Ap)),
        _ => None,
    }
}

/// Element of the Lie algebra with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement(pub [Poly; 4]);

impl LieElement {
    pub fn basis(b: Basis) -> Self {
        let mut l = LieElement::default();
        l.0[b as usize] = Poly::constant(BigRational::one());
        l
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }
}

pub fn lie_bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::default();
    for bx in Basis::ALL {
        for by in Basis::ALL {
            if let Some((s, b)) = bracket_basis(bx, by) {
                let c = x.0[bx as usize].mul(&y.0[by as usize]).scale(&int(s));
                out.0[b as usize] = out.0[b as usize].add(&c);
            }
        }
    }
    out
}

/// `sum c_xy x ⊗ y` over the basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalR(pub [[Poly; 4]; 4]);

impl ClassicalR {
    pub fn zero() -> Self {
        ClassicalR::default()
    }

    /// Adds `c x ⊗ y`.
    pub fn with(mut self, c: Poly, x: Basis, y: Basis) -> Self {
        let slot = &mut self.0[x as usize][y as usize];
        *slot = slot.add(&c);
        self
    }

    pub fn scale(&self, c: &Poly) -> Self {
        ClassicalR(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].mul(c))))
    }

    pub fn add(&self, o: &ClassicalR) -> Self {
        ClassicalR(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].add(&o.0[i][j]))))
    }

    fn support(&self) -> impl Iterator<Item = (Basis, Basis, &Poly)> {
        Basis::ALL.into_iter().flat_map(move |x| {
            Basis::ALL
                .into_iter()
                .map(move |y| (x, y, &self.0[x as usize][y as usize]))
                .filter(|(_, _, c)| !c.is_zero())
        })
    }
}

/// Element of the triple tensor power of the Lie algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor3(pub [[[Poly; 4]; 4]; 4]);

impl Tensor3 {
    fn add_to(&mut self, idx: [Basis; 3], c: &Poly) {
        let slot = &mut self.0[idx[0] as usize][idx[1] as usize][idx[2] as usize];
        *slot = slot.add(c);
    }

    pub fn get(&self, x: Basis, y: Basis, z: Basis) -> &Poly {
        &self.0[x as usize][y as usize][z as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().flatten().all(Poly::is_zero)
    }

    /// Number of rational terms over all components.
    pub fn term_count(&self) -> usize {
        self.0.iter().flatten().flatten().map(Poly::len).sum()
    }

    pub fn scale(&self, c: &Poly) -> Tensor3 {
        let mut out = self.clone();
        out.0.iter_mut().flatten().flatten().for_each(|p| *p = p.mul(c));
        out
    }
}

impl fmt::Display for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in Basis::ALL {
            for y in Basis::ALL {
                for z in Basis::ALL {
                    let c = self.get(x, y, z);
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "({c}) {}⊗{}⊗{}", x.name(), y.name(), z.name())?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `[r12(u), r13(u+v)] + [r12(u), r23(v)] + [r13(u+v), r23(v)]`.
pub fn cybe_residual_three(r12: &ClassicalR, r13: &ClassicalR, r23: &ClassicalR) -> Tensor3 {
    let mut out = Tensor3::default();
    for (x, y, c1) in r12.support() {
        for (z, t, c2) in r13.support() {
            if let Some((s, b)) = bracket_basis(x, z) {
                out.add_to([b, y, t], &c1.mul(c2).scale(&int(s)));
            }
        }
        for (z, t, c2) in r23.support() {
            if let Some((s, b)) = bracket_basis(y, z) {
                out.add_to([x, b, t], &c1.mul(c2).scale(&int(s)));
            }
        }
    }
    for (x, y, c1) in r13.support() {
        for (z, t, c2) in r23.support() {
            if let Some((s, b)) = bracket_basis(y, t) {
                out.add_to([x, z, b], &c1.mul(c2).scale(&int(s)));
            }
        }
    }
    out
}

/// Left side of the classical Yang-Baxter equation.
pub fn cybe_residual(r: &ClassicalR) -> Tensor3 {
    cybe_residual_three(r, r, r)
}

fn p(v: Var) -> Poly {
    Poly::var(v)
}

fn k(n: i64, d: i64) -> Poly {
    Poly::constant(crate::series::rat(n, d))
}

/// `a ⊗ a+ - e ⊗ n`.
pub fn r_standard() -> ClassicalR {
    ClassicalR::zero()
        .with(k(1, 1), Basis::A, Basis::Ap)
        .with(k(-1, 1), Basis::E, Basis::N)
}

/// `a ⊗ a+ - (e ⊗ n + n ⊗ e)/2`.
pub fn r_symmetric_split() -> ClassicalR {
    ClassicalR::zero()
        .with(k(1, 1), Basis::A, Basis::Ap)
        .with(k(-1, 2), Basis::E, Basis::N)
        .with(k(-1, 2), Basis::N, Basis::E)
}

/// `n ⊗ a+ - a+ ⊗ n`.
pub fn r_nonstandard() -> ClassicalR {
    ClassicalR::zero()
        .with(k(1, 1), Basis::N, Basis::Ap)
        .with(k(-1, 1), Basis::Ap, Basis::N)
}

/// `mu (a ⊗ e - e ⊗ a) + nu (a+ ⊗ e - e ⊗ a+)`.
pub fn r_mu_nu() -> ClassicalR {
    let mu = p(Var::Mu);
    let nu = p(Var::Nu);
    ClassicalR::zero()
        .with(mu.clone(), Basis::A, Basis::E)
        .with(mu.scale(&int(-1)), Basis::E, Basis::A)
        .with(nu.clone(), Basis::Ap, Basis::E)
        .with(nu.scale(&int(-1)), Basis::E, Basis::Ap)
}

/// `2h (x a ⊗ a+ - e ⊗ n) + w (n ⊗ a+ - a+ ⊗ n)`; `x = 1` is the two-parameter r-matrix.
pub fn r_two_parameter_spectral(x: &BigRational) -> ClassicalR {
    let two_h = p(Var::H).scale(&int(2));
    let w = p(Var::W);
    ClassicalR::zero()
        .with(two_h.scale(x), Basis::A, Basis::Ap)
        .with(two_h.scale(&int(-1)), Basis::E, Basis::N)
        .add(&r_nonstandard().scale(&w))
}

pub fn r_two_parameter() -> ClassicalR {
    r_two_parameter_spectral(&BigRational::one())
}

/// Spectral residual with `e^u = x_u`, `e^v = x_v` and `e^{u+v} = x_u x_v`.
pub fn spectral_cybe_residual(xu: &BigRational, xv: &BigRational) -> Tensor3 {
    cybe_residual_three(
        &r_two_parameter_spectral(xu),
        &r_two_parameter_spectral(&(xu * xv)),
        &r_two_parameter_spectral(xv),
    )
}

impl crate::hopf_verify::Residual for Tensor3 {
    fn residual_terms(&self) -> usize {
        self.term_count()
    }
}

/// CYBE for every classical r-matrix, and the spectral equation at the given factors.
pub fn check_cybe(spectral: &[(BigRational, BigRational)]) -> crate::hopf_verify::CheckReport {
    let mut rec = crate::hopf_verify::Recorder::labelled(
        "cybe",
        "classical",
        crate::series::Truncation::new(1, 1),
    );
    for (name, r) in [
        ("standard", r_standard()),
        ("symmetric split", r_symmetric_split()),
        ("nonstandard", r_nonstandard()),
        ("mu nu family", r_mu_nu()),
        ("two-parameter", r_two_parameter()),
    ] {
        rec.residual(&format!("CYBE {name}"), &cybe_residual(&r));
    }
    for (xu, xv) in spectral {
        rec.residual(
            &format!("spectral CYBE x_u={}, x_v={}", fmt_rational(xu), fmt_rational(xv)),
            &spectral_cybe_residual(xu, xv),
        );
    }
    rec.finish()
}
