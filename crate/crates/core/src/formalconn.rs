//! Formal connections in Jordan form `d + (h + n) du/u` with `u = t^{1/b}`.
//!
//! `h` is a finite sum `Σ x_j u^{e_j}` (e_j ≤ 0) of Cartan vectors in coroot
//! coordinates (`h = Σ x_i h_i`), and `n` is a constant nilpotent element.
//! Slopes and irregularities are exact rationals measured in powers of t.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chevalley::{AlgebraElement, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::exact::{CycloNum, ExactScalar, PuiseuxSeries};
use crate::linalg::Matrix;
use crate::rootdata::{CartanType, RootSystem, WeylElement, WeylGroup};
use crate::scalar::{format_rational, parse_rational, rat, rat_int, Ring};
use crate::weyleigen::{count_n_coroot, eigenvectors, v_b_witness};
use crate::{QSeries, Rational};

/// Scalars a Jordan form may carry.
pub trait ConnScalar: ExactScalar + fmt::Display {}
impl<S: ExactScalar + fmt::Display> ConnScalar for S {}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanConnection<S> {
    pub cartan: CartanType,
    pub ramification: u32,
    /// `(exponent of u, coroot coordinates)`.
    pub h_part: Vec<(i64, Vec<S>)>,
    pub n_part: AlgebraElement<S>,
}

impl<S: ConnScalar> JordanConnection<S> {
    pub fn new(cartan: CartanType, ramification: u32, h_part: Vec<(i64, Vec<S>)>, n_part: AlgebraElement<S>) -> Self {
        JordanConnection {
            cartan,
            ramification,
            h_part,
            n_part,
        }
    }

    /// Largest `j` with a nonzero coefficient at `u^{-j}`, or 0.
    fn pole_u(&self) -> i64 {
        self.h_part
            .iter()
            .filter(|(_, x)| x.iter().any(|c| !c.is_zero()))
            .map(|(e, _)| -e)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// `α(h)` as a series in t.
    pub fn root_series(&self, rs: &RootSystem, a: usize) -> PuiseuxSeries<S> {
        PuiseuxSeries::new(
            self.ramification,
            self.h_part.iter().map(|(e, x)| (*e, rs.eval_on_coroots(a, x))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub h_in_cartan: bool,
    pub commutes: bool,
    pub nilpotent: bool,
}

fn check_type(alg: &ChevalleyAlgebra, cartan: &CartanType) -> Result<()> {
    let own = alg.root_system().cartan_type();
    if own != *cartan {
        return Err(Error::InvalidJordanForm(format!(
            "connection of type {cartan} checked against {own}"
        )));
    }
    Ok(())
}

/// Checks the three Jordan-form clauses, reporting each.
pub fn validate<S: ConnScalar>(alg: &ChevalleyAlgebra, conn: &JordanConnection<S>) -> Result<ValidationReport> {
    check_type(alg, &conn.cartan)?;
    let r = alg.rank();
    let h_in_cartan = conn.ramification >= 1 && conn.h_part.iter().all(|(e, x)| *e <= 0 && x.len() == r);
    let commutes = h_in_cartan
        && conn
            .h_part
            .iter()
            .all(|(_, x)| alg.bracket(&alg.cartan_element(x), &conn.n_part).is_zero());
    let nilpotent = alg.is_nilpotent(&conn.n_part);
    let report = ValidationReport {
        h_in_cartan,
        commutes,
        nilpotent,
    };
    let mut failed = Vec::new();
    if !h_in_cartan {
        failed.push("h_part must be Cartan vectors of length rank at exponents <= 0 (ramification >= 1)");
    }
    if !commutes {
        failed.push("h_part coefficients must commute with n_part");
    }
    if !nilpotent {
        failed.push("n_part must be nilpotent");
    }
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(Error::InvalidJordanForm(failed.join("; ")))
    }
}

/// `max(0, pole order of h)/b`, in lowest terms.
pub fn slope<S: ConnScalar>(conn: &JordanConnection<S>) -> Rational {
    rat(conn.pole_u(), conn.ramification as i64)
}

fn assert_integral(total: Rational) -> Result<u64> {
    if !total.is_integer() || total.is_negative() {
        return Err(Error::NonIntegralIrregularity(format_rational(&total)));
    }
    Ok(total.to_integer().try_into().expect("irregularity fits in u64"))
}

/// A diagonal `gl_n` connection `d + diag(h_1, ..., h_n) dt/t`.
#[derive(Clone, Debug, PartialEq)]
pub struct GLDiagonalConnection<S: crate::Ring> {
    pub entries: Vec<PuiseuxSeries<S>>,
}

impl<S: ConnScalar> GLDiagonalConnection<S> {
    pub fn new(entries: Vec<PuiseuxSeries<S>>) -> Self {
        GLDiagonalConnection { entries }
    }

    /// Entries `h_i - h_j` for `i ≠ j`: the adjoint connection on the
    /// off-diagonal matrix units.
    pub fn adjoint(&self) -> Self {
        let n = self.entries.len();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(self.entries[i].clone() - self.entries[j].clone());
                }
            }
        }
        GLDiagonalConnection { entries: out }
    }

    /// Type-A Jordan form as traceless diagonal matrices:
    /// `h_i = E_ii - E_{i+1,i+1}`.
    pub fn from_type_a(conn: &JordanConnection<S>) -> Result<Self> {
        if conn.cartan.family != 'A' {
            return Err(Error::UnsupportedType(format!("{} is not of type A", conn.cartan)));
        }
        let n = conn.cartan.rank + 1;
        let entries = (0..n)
            .map(|k| {
                PuiseuxSeries::new(
                    conn.ramification,
                    conn.h_part.iter().map(|(e, x)| {
                        let cur = if k < n - 1 { x[k].clone() } else { S::zero() };
                        let prev = if k > 0 { x[k - 1].clone() } else { S::zero() };
                        (*e, cur - prev)
                    }),
                )
            })
            .collect();
        Ok(GLDiagonalConnection { entries })
    }
}

pub fn gl_irregularity<S: ConnScalar>(conn: &GLDiagonalConnection<S>) -> Result<u64> {
    assert_integral(conn.entries.iter().fold(Rational::zero(), |acc, h| acc + h.ord_pole()))
}

/// `Σ_α max(0, pole order of α(h))`, asserted to be a non-negative integer.
pub fn adjoint_irregularity<S: ConnScalar>(alg: &ChevalleyAlgebra, conn: &JordanConnection<S>) -> Result<u64> {
    let rs = alg.root_system();
    let total = (0..rs.num_roots()).fold(Rational::zero(), |acc, a| acc + conn.root_series(rs, a).ord_pole());
    assert_integral(total)
}

/// Leading term `x t^{-a/b}` with `gcd(a, b) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingTermData<S> {
    pub x: Vec<S>,
    pub a: i64,
    pub b: u32,
}

pub fn leading_term_data<S: ConnScalar>(conn: &JordanConnection<S>) -> Result<LeadingTermData<S>> {
    let j = conn.pole_u();
    if j == 0 {
        return Err(Error::RegularSingularInput);
    }
    let r = conn.h_part[0].1.len();
    let x = conn
        .h_part
        .iter()
        .filter(|(e, _)| *e == -j)
        .fold(vec![S::zero(); r], |acc, (_, v)| {
            acc.into_iter().zip(v).map(|(p, q)| p + q.clone()).collect()
        });
    let g = j.gcd(&(conn.ramification as i64));
    Ok(LeadingTermData {
        x,
        a: j / g,
        b: (conn.ramification as i64 / g) as u32,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainLink {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub tight: bool,
}

fn link(relation: &str, lhs: &Rational, rhs: &Rational) -> ChainLink {
    ChainLink {
        relation: relation.to_string(),
        lhs: format_rational(lhs),
        rhs: format_rational(rhs),
        holds: lhs >= rhs,
        tight: lhs == rhs,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub root_system: String,
    pub rank: usize,
    pub irregularity: u64,
    pub slope: String,
    pub leading_exponent: String,
    pub n_x: usize,
    pub links: Vec<ChainLink>,
    /// `N(x) ≥ b r`, checked directly.
    pub eigen_bound: ChainLink,
    /// Whether the leading term lies in V(b).
    pub leading_term_in_v_b: bool,
    pub v_b_witness_order: Option<u32>,
    pub equality: bool,
    pub equality_conclusion: Option<String>,
    pub verdict: String,
}

/// `Irr ≥ N(x) a/b ≥ N(x)/b ≥ r`, plus `N(x) ≥ b r`, and the equality case.
/// Inputs whose leading term is outside V(b) cannot come from a connection on
/// the unramified disk; they are reported as such rather than as violations.
pub fn check_main_inequality<S: ConnScalar>(
    alg: &ChevalleyAlgebra,
    group: &WeylGroup,
    conn: &JordanConnection<S>,
) -> Result<ChainReport> {
    validate(alg, conn)?;
    let rs = alg.root_system();
    let lt = leading_term_data(conn)?;
    let irr = adjoint_irregularity(alg, conn)?;
    let r = rs.rank();
    let n = count_n_coroot(rs, &lt.x);
    let (irr_q, n_q, a_q, b_q, r_q) = (
        rat_int(irr as i64),
        rat_int(n as i64),
        rat_int(lt.a),
        rat_int(lt.b as i64),
        rat_int(r as i64),
    );
    let links = vec![
        link(
            "Irr(Ad) >= N(x)*a/b",
            &irr_q,
            &(n_q.clone() * a_q.clone() / b_q.clone()),
        ),
        link(
            "N(x)*a/b >= N(x)/b",
            &(n_q.clone() * a_q / b_q.clone()),
            &(n_q.clone() / b_q.clone()),
        ),
        link("N(x)/b >= rank", &(n_q.clone() / b_q.clone()), &r_q),
    ];
    let eigen_bound = link("N(x) >= b*rank", &n_q, &(b_q * r_q));
    let y: Vec<CycloNum> = rs.coroot_to_root_coords(&lt.x).iter().map(|c| c.to_cyclo()).collect();
    let witness: Option<WeylElement> = v_b_witness(rs, group, &y, lt.b);
    let in_v_b = witness.is_some();
    let h = rs.coxeter_number();
    let equality = irr as usize == r;
    let equality_conclusion = equality.then(|| {
        if lt.b == h && lt.a == 1 {
            format!("b = h = {h} and a = 1, so the slope is 1/h")
        } else {
            format!("equality with a/b = {}/{} and h = {h}", lt.a, lt.b)
        }
    });
    let chain_ok = links.iter().all(|l| l.holds) && eigen_bound.holds && (!equality || (lt.b == h && lt.a == 1));
    let verdict = if !in_v_b {
        "not a Jordan form on the unramified disk: leading term outside V(b)".to_string()
    } else if chain_ok {
        "chain holds".to_string()
    } else {
        "violation".to_string()
    };
    let report = ChainReport {
        root_system: rs.label(),
        rank: r,
        irregularity: irr,
        slope: format_rational(&slope(conn)),
        leading_exponent: format!("-{}/{}", lt.a, lt.b),
        n_x: n,
        links,
        eigen_bound,
        leading_term_in_v_b: in_v_b,
        v_b_witness_order: witness.map(|w| w.order()),
        equality,
        equality_conclusion,
        verdict,
    };
    if in_v_b && !chain_ok {
        return Err(Error::TheoremViolation(
            serde_json::to_string(&report).unwrap_or_default(),
        ));
    }
    Ok(report)
}

/// Largest pole order (in t) among the coefficients of a matrix form.
pub fn pole_order<S: ConnScalar>(m: &AlgebraElement<PuiseuxSeries<S>>) -> Rational {
    m.terms()
        .map(|(_, s)| s.ord_pole())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Substitutes `t := u^c`; the dt/t frame picks up the factor c.
pub fn pullback<S: ConnScalar>(m: &AlgebraElement<PuiseuxSeries<S>>, c: u32) -> AlgebraElement<PuiseuxSeries<S>> {
    assert!(c >= 1);
    let k = S::from_i64(c as i64);
    m.map(|s| s.substitute_power(c).scale(&k))
}

/// `Ad(g)` for a constant torus element with `α_i(g) = torus[i]`.
pub fn gauge_constant<S: ConnScalar>(
    alg: &ChevalleyAlgebra,
    m: &AlgebraElement<PuiseuxSeries<S>>,
    torus: &[S],
) -> Result<AlgebraElement<PuiseuxSeries<S>>> {
    if let Some(i) = torus.iter().position(|v| v.is_zero()) {
        return Err(Error::ZeroScalar(format!("torus value {} is zero", i + 1)));
    }
    let rs = alg.root_system();
    Ok(AlgebraElement::from_terms(m.terms().map(|(j, s)| {
        if !alg.is_root_index(j) {
            return (j, s.clone());
        }
        let w = rs
            .root(j)
            .iter()
            .zip(torus)
            .fold(S::one(), |acc, (&n, v)| if n == 0 { acc } else { acc * v.pow_i64(n) });
        (j, s.scale(&w))
    })))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionFile {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub ramification: u32,
    pub h_part: Vec<(i64, Vec<String>)>,
    pub n_part: Vec<(String, String)>,
}

pub fn connection_to_json(rs: &RootSystem, conn: &JordanConnection<Rational>) -> String {
    let file = ConnectionFile {
        type_label: conn.cartan.to_string(),
        rank: conn.cartan.rank,
        ramification: conn.ramification,
        h_part: conn
            .h_part
            .iter()
            .map(|(e, x)| (*e, x.iter().map(format_rational).collect()))
            .collect(),
        n_part: conn
            .n_part
            .terms()
            .map(|(j, c)| (rs.root_label(j), format_rational(c)))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn connection_from_json(text: &str) -> Result<(RootSystem, JordanConnection<Rational>)> {
    let file: ConnectionFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let cartan = CartanType::parse(&file.type_label)?;
    if cartan.rank != file.rank {
        return Err(Error::Parse(format!(
            "rank {} does not match type {}",
            file.rank, file.type_label
        )));
    }
    if file.ramification == 0 {
        return Err(Error::Parse("ramification must be positive".into()));
    }
    let rs = RootSystem::from_label(&file.type_label)?;
    let q = |s: &str| parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")));
    let mut h_part = Vec::new();
    for (e, x) in &file.h_part {
        if x.len() != file.rank {
            return Err(Error::Parse(format!(
                "h_part entry at exponent {e} has {} coordinates",
                x.len()
            )));
        }
        h_part.push((*e, x.iter().map(|s| q(s)).collect::<Result<Vec<_>>>()?));
    }
    let mut n_terms = Vec::new();
    for (label, c) in &file.n_part {
        let j = rs
            .parse_root_label(label)
            .ok_or_else(|| Error::Parse(format!("unknown root {label:?}")))?;
        n_terms.push((j, q(c)?));
    }
    let conn = JordanConnection::new(cartan, file.ramification, h_part, AlgebraElement::from_terms(n_terms));
    Ok((rs, conn))
}

/// The explicit reduction of `[[0, x0 t^-1], [x1, 0]] dt/t` to Jordan form.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Reduction {
    pub steps: Vec<String>,
    /// Leading coefficient after diagonalization, `diag(2s, -2s)`.
    pub leading: [Rational; 2],
    /// Scalar part of the residue, central in gl_2 and dropped for sl_2.
    pub scalar_residue: Rational,
    pub jordan: JordanConnection<Rational>,
}

fn mat_coeff(m: &Matrix<QSeries>, e: i64) -> Matrix<Rational> {
    Matrix::from_fn(2, 2, |i, j| m.get(i, j).coefficient(&rat_int(e)))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (n.clone() * n.clone() == *q.numer() && d.clone() * d.clone() == *q.denom()).then(|| Rational::new(n, d))
}

/// Pullback by `t = u^2`, shearing by `diag(u, 1)`, constant diagonalization
/// of the `u^{-1}` term and one off-diagonal clearing step at `u^0`. Later
/// steps only touch positive powers of u and leave the Jordan form alone.
/// Needs `x0 x1` to be a rational square so that the eigenvalues are rational.
pub fn sl2_fg_reduction(x0: &Rational, x1: &Rational) -> Result<Sl2Reduction> {
    if x0.is_zero() || x1.is_zero() {
        return Err(Error::ZeroScalar("Frenkel-Gross scalars must be nonzero".into()));
    }
    let s = rational_sqrt(&(x0 * x1)).ok_or_else(|| {
        Error::Parse(format!(
            "x0*x1 = {} is not a rational square",
            format_rational(&(x0 * x1))
        ))
    })?;
    let mut steps = Vec::new();
    let m0 = Matrix::from_rows(vec![
        vec![QSeries::zero(), QSeries::monomial(x0.clone(), -1, 1)],
        vec![QSeries::constant(x1.clone()), QSeries::zero()],
    ]);
    steps.push(format!(
        "start: [[0, {} t^-1], [{}, 0]] dt/t",
        format_rational(x0),
        format_rational(x1)
    ));
    let m1 = m0.map(|c| c.substitute_power(2).scale(&rat_int(2)));
    steps.push("pullback t = u^2: entries substituted, frame factor 2 (dt/t = 2 du/u)".into());
    // g = diag(u^s0, u^s1) with s = (1, 0): g M g^-1 + diag(s)
    let shift = [1i64, 0];
    let m2 = Matrix::from_fn(2, 2, |i, j| {
        let moved = m1.get(i, j).clone() * QSeries::monomial(Rational::one(), shift[i] - shift[j], 1);
        if i == j {
            moved + QSeries::constant(rat_int(shift[i]))
        } else {
            moved
        }
    });
    steps.push("shear by diag(u, 1): polar part now u^-1 only, residue diag(1, 0)".into());
    if (-5..-1).any(|e| !mat_coeff(&m2, e).is_zero()) {
        return Err(Error::PropertyViolation("shear left a pole of order > 1".into()));
    }
    let lead = mat_coeff(&m2, -1);
    let cst = mat_coeff(&m2, 0);
    let p = Matrix::from_rows(vec![vec![x0.clone(), x0.clone()], vec![s.clone(), -s.clone()]]);
    let det = p.get(0, 0).clone() * p.get(1, 1).clone() - p.get(0, 1).clone() * p.get(1, 0).clone();
    let pinv = Matrix::from_rows(vec![
        vec![p.get(1, 1).clone() / det.clone(), -p.get(0, 1).clone() / det.clone()],
        vec![-p.get(1, 0).clone() / det.clone(), p.get(0, 0).clone() / det.clone()],
    ]);
    let d = pinv.mul(&lead).mul(&p);
    let c = pinv.mul(&cst).mul(&p);
    if !d.get(0, 1).is_zero() || !d.get(1, 0).is_zero() {
        return Err(Error::PropertyViolation("leading term did not diagonalize".into()));
    }
    let (d1, d2) = (d.get(0, 0).clone(), d.get(1, 1).clone());
    steps.push(format!(
        "constant gauge by eigenvectors: u^-1 term diag({}, {})",
        format_rational(&d1),
        format_rational(&d2)
    ));
    // gauge by 1 + u X: the u^0 term becomes C + [X, D]
    let x = Matrix::from_rows(vec![
        vec![Rational::zero(), c.get(0, 1).clone() / (d1.clone() - d2.clone())],
        vec![c.get(1, 0).clone() / (d2.clone() - d1.clone()), Rational::zero()],
    ]);
    let cleared = c.add(&x.mul(&d).sub(&d.mul(&x)));
    if !cleared.get(0, 1).is_zero() || !cleared.get(1, 0).is_zero() {
        return Err(Error::PropertyViolation("off-diagonal residue survived".into()));
    }
    steps.push("gauge by 1 + uX clears the off-diagonal u^0 term".into());
    let (c1, c2) = (cleared.get(0, 0).clone(), cleared.get(1, 1).clone());
    let scalar_residue = (c1.clone() + c2.clone()) / rat_int(2);
    let residue = (c1 - c2) / rat_int(2);
    let mut h_part = vec![(-1, vec![(d1.clone() - d2.clone()) / rat_int(2)])];
    if !residue.is_zero() {
        h_part.push((0, vec![residue]));
    }
    steps.push(format!(
        "scalar residue {} dropped (center of gl_2)",
        format_rational(&scalar_residue)
    ));
    let jordan = JordanConnection::new(CartanType::new('A', 1), 2, h_part, AlgebraElement::zero());
    Ok(Sl2Reduction {
        steps,
        leading: [d1, d2],
        scalar_residue,
        jordan,
    })
}

/// Random Jordan forms whose Cartan part is compatible with a Weyl element
/// w: the coefficient of `u^{-j}` is a `ζ_b^{-j}`-eigenvector of w, where b
/// is the order of w. This is the shape produced by Galois descent, so the
/// leading term lies in V(b') for the reduced ramification b'.
pub struct JordanSampler<'a> {
    alg: &'a ChevalleyAlgebra,
    elements: Vec<WeylElement>,
    coxeter: WeylElement,
    cache: HashMap<(usize, u32), Vec<Vec<CycloNum>>>,
}

impl<'a> JordanSampler<'a> {
    pub fn new(alg: &'a ChevalleyAlgebra, group: &WeylGroup) -> Self {
        let rs = alg.root_system();
        let elements = group
            .conjugacy_classes(rs)
            .iter()
            .map(|c| group.element(rs, c.representative))
            .collect();
        JordanSampler {
            alg,
            elements,
            coxeter: rs.coxeter_element(),
            cache: HashMap::new(),
        }
    }

    fn eigen(&mut self, idx: usize, w: &WeylElement, j: u32) -> Vec<Vec<CycloNum>> {
        let b = w.order();
        let k = (b - j % b) % b;
        self.cache
            .entry((idx, k))
            .or_insert_with(|| eigenvectors(w, &CycloNum::zeta_pow(b, k as i64)))
            .clone()
    }

    fn combo<R: Rng>(rng: &mut R, basis: &[Vec<CycloNum>], r: usize) -> Vec<CycloNum> {
        basis.iter().fold(vec![CycloNum::zero(); r], |acc, v| {
            let c = CycloNum::from_i64(rng.gen_range(-3..=3));
            acc.into_iter().zip(v).map(|(p, q)| p + q.clone() * c.clone()).collect()
        })
    }

    pub fn sample<R: Rng>(&mut self, rng: &mut R) -> JordanConnection<CycloNum> {
        let rs = self.alg.root_system();
        let r = rs.rank();
        loop {
            let roll = rng.gen_range(0..20);
            let (idx, w) = if roll < 5 {
                (usize::MAX, self.coxeter.clone())
            } else {
                let i = rng.gen_range(0..self.elements.len());
                (i, self.elements[i].clone())
            };
            let b = w.order();
            let top: u32 = match roll {
                0..=4 => 1,
                5..=6 => 0,
                _ => rng.gen_range(1..=2 * b),
            };
            let mut h_part = Vec::new();
            let mut ok = true;
            for j in 0..=top {
                let basis = self.eigen(idx, &w, j);
                let mut v = Self::combo(rng, &basis, r);
                if j == top && top > 0 {
                    let mut tries = 0;
                    while v.iter().all(|c| c.is_zero()) && !basis.is_empty() && tries < 8 {
                        v = Self::combo(rng, &basis, r);
                        tries += 1;
                    }
                    if v.iter().all(|c| c.is_zero()) {
                        ok = false;
                        break;
                    }
                } else if rng.gen_bool(0.5) {
                    continue;
                }
                if v.iter().any(|c| !c.is_zero()) {
                    h_part.push((-(j as i64), rs.root_to_coroot_coords(&v)));
                }
            }
            if !ok {
                continue;
            }
            let np = rs.num_positive();
            let mut n_terms: Vec<(usize, CycloNum)> = Vec::new();
            for a in 0..np {
                if h_part.iter().all(|(_, x)| rs.eval_on_coroots(a, x).is_zero()) && rng.gen_bool(0.5) {
                    n_terms.push((a, CycloNum::from_i64(rng.gen_range(1..=3))));
                }
            }
            return JordanConnection::new(rs.cartan_type(), b, h_part, AlgebraElement::from_terms(n_terms));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley;
    use crate::rootdata::{enumerate_weyl, DEFAULT_WEYL_BUDGET};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(label: &str) -> (ChevalleyAlgebra, WeylGroup) {
        let rs = RootSystem::from_label(label).unwrap();
        let g = enumerate_weyl(&rs, DEFAULT_WEYL_BUDGET).unwrap();
        (build_chevalley(&rs).unwrap(), g)
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn conn(label: &str, b: u32, h: Vec<(i64, Vec<Rational>)>, n: Vec<(usize, i64)>) -> JordanConnection<Rational> {
        JordanConnection::new(
            CartanType::parse(label).unwrap(),
            b,
            h,
            AlgebraElement::from_terms(n.into_iter().map(|(j, c)| (j, rat_int(c)))),
        )
    }

    #[test]
    fn validation_examples() {
        let (a1, _) = setup("A1");
        assert!(validate(&a1, &conn("A1", 1, vec![(-1, q(&[1]))], vec![])).is_ok());
        let bad = validate(&a1, &conn("A1", 1, vec![(-1, q(&[1]))], vec![(0, 1)]));
        assert!(matches!(bad, Err(Error::InvalidJordanForm(m)) if m.contains("commute")));
        let (a2, _) = setup("A2");
        assert!(validate(&a2, &conn("A2", 1, vec![], vec![(0, 1)])).is_ok());
        let not_nil = conn("A2", 1, vec![], vec![(0, 1), (3, 1)]);
        assert!(matches!(validate(&a2, &not_nil), Err(Error::InvalidJordanForm(m)) if m.contains("nilpotent")));
    }

    #[test]
    fn slope_examples() {
        assert!(slope(&conn("A1", 1, vec![], vec![])).is_zero());
        assert_eq!(slope(&conn("A1", 2, vec![(-1, q(&[1]))], vec![])), rat(1, 2));
        assert_eq!(slope(&conn("A2", 1, vec![(-2, q(&[1, 0]))], vec![])), rat_int(2));
    }

    #[test]
    fn gl_irregularity_examples() {
        let tinv = QSeries::monomial(Rational::one(), -1, 1);
        let gl2 = GLDiagonalConnection::new(vec![tinv.clone(), tinv]);
        assert_eq!(gl_irregularity(&gl2).unwrap(), 2);
        assert_eq!(gl_irregularity(&gl2.adjoint()).unwrap(), 0);
        let u = QSeries::monomial(Rational::one(), -1, 2);
        let ram = GLDiagonalConnection::new(vec![u.clone(), -u]);
        assert_eq!(gl_irregularity(&ram).unwrap(), 1);
        let hol = GLDiagonalConnection::new(vec![
            QSeries::new(1, [(0, rat_int(1)), (1, rat_int(1))]),
            QSeries::zero(),
        ]);
        assert_eq!(gl_irregularity(&hol).unwrap(), 0);
        let half = GLDiagonalConnection::new(vec![QSeries::monomial(Rational::one(), -1, 2)]);
        assert!(matches!(gl_irregularity(&half), Err(Error::NonIntegralIrregularity(_))));
    }

    #[test]
    fn adjoint_irregularity_examples() {
        let (a1, _) = setup("A1");
        assert_eq!(
            adjoint_irregularity(&a1, &conn("A1", 2, vec![(-1, q(&[1]))], vec![])).unwrap(),
            1
        );
        assert_eq!(adjoint_irregularity(&a1, &conn("A1", 1, vec![], vec![])).unwrap(), 0);
        let (a2, _) = setup("A2");
        assert_eq!(
            adjoint_irregularity(&a2, &conn("A2", 1, vec![(-1, q(&[1, 1]))], vec![])).unwrap(),
            6
        );
    }

    #[test]
    fn leading_terms() {
        let lt = leading_term_data(&conn("A1", 2, vec![(-1, q(&[1]))], vec![])).unwrap();
        assert_eq!((lt.x, lt.a, lt.b), (q(&[1]), 1, 2));
        let lt = leading_term_data(&conn("A2", 4, vec![(-2, q(&[1, 0])), (-1, q(&[0, 1]))], vec![])).unwrap();
        assert_eq!((lt.x, lt.a, lt.b), (q(&[1, 0]), 1, 2));
        let lt = leading_term_data(&conn("A2", 1, vec![(-3, q(&[1, 1]))], vec![])).unwrap();
        assert_eq!((lt.x, lt.a, lt.b), (q(&[1, 1]), 3, 1));
        assert_eq!(
            leading_term_data(&conn("A2", 1, vec![], vec![])),
            Err(Error::RegularSingularInput)
        );
    }

    #[test]
    fn main_inequality_examples() {
        let (a1, g1) = setup("A1");
        let rep = check_main_inequality(&a1, &g1, &conn("A1", 2, vec![(-1, q(&[1]))], vec![])).unwrap();
        assert_eq!(rep.irregularity, 1);
        assert!(rep.links.iter().all(|l| l.holds && l.tight));
        assert!(rep.equality_conclusion.unwrap().contains("slope is 1/h"));
        let rep = check_main_inequality(&a1, &g1, &conn("A1", 1, vec![(-2, q(&[1]))], vec![])).unwrap();
        assert_eq!(rep.irregularity, 4);
        assert_eq!(rep.n_x, 2);
        assert!(!rep.equality);
        let (a2, g2) = setup("A2");
        let rep = check_main_inequality(&a2, &g2, &conn("A2", 1, vec![(-1, q(&[1, 1]))], vec![])).unwrap();
        assert_eq!((rep.irregularity, rep.n_x), (6, 6));
        assert_eq!(rep.links[2].rhs, "2");
        // h_1 u^-1 with b = 3 is not a ζ_3-eigenvector of any Weyl element
        let rep = check_main_inequality(&a2, &g2, &conn("A2", 3, vec![(-1, q(&[1, 0]))], vec![])).unwrap();
        assert!(!rep.leading_term_in_v_b);
        assert!(rep.verdict.contains("not a Jordan form"));
    }

    #[test]
    fn pullback_and_gauge() {
        let (a1, _) = setup("A1");
        let x = AlgebraElement::from_terms([(2usize, QSeries::monomial(Rational::one(), -1, 2))]);
        let p = pullback(&x, 2);
        assert_eq!(p.get(2), QSeries::monomial(rat_int(2), -1, 1));
        assert_eq!(pullback(&x, 1), x);
        let fg = AlgebraElement::from_terms([
            (0usize, QSeries::monomial(Rational::one(), -1, 1)),
            (1usize, QSeries::constant(Rational::one())),
        ]);
        assert_eq!(gauge_constant(&a1, &fg, &[rat_int(1)]).unwrap(), fg);
        let g = gauge_constant(&a1, &fg, &[rat_int(5)]).unwrap();
        assert_eq!(g.get(0), QSeries::monomial(rat_int(5), -1, 1));
        assert_eq!(g.get(1), QSeries::constant(rat(1, 5)));
        assert!(matches!(
            gauge_constant(&a1, &fg, &[Rational::zero()]),
            Err(Error::ZeroScalar(_))
        ));
        let (a2, _) = setup("A2");
        let rs = a2.root_system();
        let top = rs.highest_root();
        let fg2 = AlgebraElement::from_terms([
            (top, QSeries::monomial(Rational::one(), -1, 1)),
            (rs.neg(0), QSeries::constant(Rational::one())),
            (rs.neg(1), QSeries::constant(Rational::one())),
        ]);
        let pulled = pullback(&fg2, 3);
        assert_eq!(pole_order(&pulled), rat_int(3) * pole_order(&fg2));
    }

    #[test]
    fn json_round_trip() {
        let c = conn(
            "A2",
            2,
            vec![(-3, vec![rat(1, 2), rat(-3, 1)]), (0, q(&[0, 0]))],
            vec![(2, 7)],
        );
        let rs = RootSystem::from_label("A2").unwrap();
        let text = connection_to_json(&rs, &c);
        let (_, back) = connection_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert!(text.contains("\"a1+a2\""));
        assert!(connection_from_json("{\"type\": \"A2\"}").is_err());
    }

    #[test]
    fn sl2_reduction() {
        let red = sl2_fg_reduction(&rat_int(1), &rat_int(1)).unwrap();
        assert_eq!(red.leading, [rat_int(2), rat_int(-2)]);
        assert_eq!(red.jordan.h_part, vec![(-1, q(&[2]))]);
        assert_eq!(red.scalar_residue, rat(1, 2));
        let (a1, g) = setup("A1");
        assert_eq!(slope(&red.jordan), rat(1, 2));
        assert_eq!(adjoint_irregularity(&a1, &red.jordan).unwrap(), 1);
        assert!(check_main_inequality(&a1, &g, &red.jordan).unwrap().leading_term_in_v_b);
        assert!(sl2_fg_reduction(&rat_int(1), &rat_int(2)).is_err());
        assert!(sl2_fg_reduction(&rat_int(4), &rat_int(1)).is_ok());
    }

    #[test]
    fn type_a_paths_agree() {
        let (a2, _) = setup("A2");
        let c = conn("A2", 2, vec![(-3, q(&[1, -1])), (-1, q(&[2, 5]))], vec![]);
        let gl = GLDiagonalConnection::from_type_a(&c).unwrap();
        assert_eq!(
            gl_irregularity(&gl.adjoint()).unwrap(),
            adjoint_irregularity(&a2, &c).unwrap()
        );
    }

    #[test]
    fn sampled_forms_are_valid_and_realizable() {
        let (b2, g) = setup("B2");
        let mut s = JordanSampler::new(&b2, &g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let c = s.sample(&mut rng);
            validate(&b2, &c).unwrap();
            if slope(&c) > Rational::zero() {
                let rep = check_main_inequality(&b2, &g, &c).unwrap();
                assert!(rep.leading_term_in_v_b);
            }
        }
    }
}
