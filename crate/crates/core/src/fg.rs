//! Frenkel-Gross connections `d + (x_0 e_{α_0} t^{-1} + Σ x_i e_{-α_i}) dt/t`
//! and their classification up to constant torus gauge.

use num_traits::Zero;
use serde::Serialize;

use crate::chevalley::{AlgebraElement, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::exact::PuiseuxSeries;
use crate::formalconn::{gauge_constant, ConnScalar};
use crate::linalg::Matrix;
use crate::rootdata::RootSystem;
use crate::scalar::{format_rational, rat};
use crate::strata::{barycenter, graded_piece, has_fundamental_stratum_at_depth};
use crate::Rational;

/// `(x_0, x_1, ..., x_r)`: coefficient of `e_{α_0} t^{-1}`, then of each
/// `e_{-α_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FGData<S> {
    pub scalars: Vec<S>,
}

impl<S: ConnScalar> FGData<S> {
    pub fn new(scalars: Vec<S>) -> Self {
        FGData { scalars }
    }

    fn check(&self, rs: &RootSystem) -> Result<()> {
        if self.scalars.len() != rs.rank() + 1 {
            return Err(Error::Parse(format!(
                "{} needs {} scalars, got {}",
                rs.label(),
                rs.rank() + 1,
                self.scalars.len()
            )));
        }
        if let Some(i) = self.scalars.iter().position(|c| c.is_zero()) {
            return Err(Error::ZeroScalar(format!("x_{i} = 0")));
        }
        Ok(())
    }
}

pub fn build_fg<S: ConnScalar>(alg: &ChevalleyAlgebra, data: &FGData<S>) -> Result<AlgebraElement<PuiseuxSeries<S>>> {
    let rs = alg.root_system();
    data.check(rs)?;
    let mut terms = vec![(
        rs.highest_root(),
        PuiseuxSeries::monomial(data.scalars[0].clone(), -1, 1),
    )];
    terms.extend((0..rs.rank()).map(|i| (rs.neg(i), PuiseuxSeries::constant(data.scalars[i + 1].clone()))));
    Ok(AlgebraElement::from_terms(terms))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FGReport {
    pub root_system: String,
    pub slope: String,
    /// Support equals the basis of `𝔤_x(-1/h)` at the barycenter.
    pub support_is_barycenter_piece: bool,
    pub fundamental_at_barycenter: bool,
    pub leading_regular_semisimple: bool,
    pub leading_centralizer_dim: usize,
    /// Centralizer of `Σ e_{-α_i}` in 𝔥.
    pub s0_dim: usize,
    /// Centralizer of the element inside its graded piece.
    pub s_minus_dim: usize,
    pub irr_adjoint: String,
    pub rank: usize,
    pub pass: bool,
}

fn kernel_dim<S: ConnScalar>(cols: Vec<Vec<S>>) -> usize {
    let n = cols.len();
    if n == 0 {
        return 0;
    }
    let m = Matrix::from_fn(cols[0].len(), n, |i, j| cols[j][i].clone());
    n - m.rank()
}

/// Certifies slope 1/h, a regular semisimple leading term, `𝔰(0) = 0`,
/// `dim 𝔰(-1/h) = 1` and `Irr(Ad) = |Φ|/h = r`.
pub fn verify_fg_properties<S: ConnScalar>(alg: &ChevalleyAlgebra, data: &FGData<S>) -> Result<FGReport> {
    let rs = alg.root_system();
    let m = build_fg(alg, data)?;
    let h = rs.coxeter_number() as i64;
    let x = barycenter(rs);
    let depth = rat(1, h);
    let piece = graded_piece(alg, &x, &-depth.clone());
    let mut support: Vec<(usize, i64)> = m
        .terms()
        .map(|(j, s)| {
            let e = s.valuation().expect("nonzero coefficient");
            (j, e.to_integer().try_into().expect("integral exponent"))
        })
        .collect();
    support.sort_unstable();
    let mut basis = piece.basis.clone();
    basis.sort_unstable();
    let support_is_barycenter_piece = support == basis;
    let fundamental_at_barycenter = has_fundamental_stratum_at_depth(alg, &x, &depth);

    let at_one: AlgebraElement<S> = m.map(|s| s.specialize_one());
    let leading_regular_semisimple = alg.is_regular_semisimple(&at_one);
    let leading_centralizer_dim = alg.centralizer_dim(&at_one);

    let r = rs.rank();
    let nsum: AlgebraElement<S> = AlgebraElement::from_terms((0..r).map(|i| (rs.neg(i), S::one())));
    let s0_dim = kernel_dim(
        (0..r)
            .map(|i| {
                alg.bracket(&AlgebraElement::basis(alg.cartan_index(i)), &nsum)
                    .to_dense(alg.dim())
            })
            .collect(),
    );
    let s_minus_dim = kernel_dim(
        piece
            .basis_at_one()
            .into_iter()
            .map(|z| {
                alg.bracket(&at_one, &z.map(|c| S::from_rational(c.clone())))
                    .to_dense(alg.dim())
            })
            .collect(),
    );
    // Every root is nonzero on the regular semisimple leading term, so each
    // contributes its full pole order 1/h.
    let irr = if leading_regular_semisimple {
        depth.clone() * Rational::from_integer((rs.num_roots() as i64).into())
    } else {
        Rational::zero()
    };
    let pass = support_is_barycenter_piece
        && fundamental_at_barycenter
        && leading_regular_semisimple
        && leading_centralizer_dim == r
        && s0_dim == 0
        && s_minus_dim == 1
        && irr == Rational::from_integer((r as i64).into());
    let report = FGReport {
        root_system: rs.label(),
        slope: format_rational(&depth),
        support_is_barycenter_piece,
        fundamental_at_barycenter,
        leading_regular_semisimple,
        leading_centralizer_dim,
        s0_dim,
        s_minus_dim,
        irr_adjoint: format_rational(&irr),
        rank: r,
        pass,
    };
    if !pass {
        return Err(Error::PropertyViolation(
            serde_json::to_string(&report).unwrap_or_default(),
        ));
    }
    Ok(report)
}

/// `j = x_0 Π x_i^{c_i}`, with `c_i` the marks of the highest root.
pub fn fg_invariant<S: ConnScalar>(rs: &RootSystem, data: &FGData<S>) -> Result<S> {
    data.check(rs)?;
    Ok(rs
        .marks()
        .iter()
        .zip(&data.scalars[1..])
        .fold(data.scalars[0].clone(), |acc, (&c, x)| acc * x.pow_u32(c as u32)))
}

/// Torus values `α_i(g)` with `Ad(g)` taking the first FG matrix to the
/// second, or `None` when the invariants differ. The values are forced by the
/// `e_{-α_i}` coefficients; the `e_{α_0}` coefficient then matches iff the
/// invariants agree. Solving `α_i(g) = λ_i` for g assumes the simple roots
/// are a basis of the character lattice (adjoint type).
pub fn h_orbit_equivalent<S: ConnScalar>(
    alg: &ChevalleyAlgebra,
    d1: &FGData<S>,
    d2: &FGData<S>,
) -> Result<Option<Vec<S>>> {
    let rs = alg.root_system();
    if fg_invariant(rs, d1)? != fg_invariant(rs, d2)? {
        return Ok(None);
    }
    let torus: Vec<S> = (1..=rs.rank())
        .map(|i| d1.scalars[i].clone() * d2.scalars[i].inv())
        .collect();
    let moved = gauge_constant(alg, &build_fg(alg, d1)?, &torus)?;
    if moved != build_fg(alg, d2)? {
        return Err(Error::PropertyViolation(
            "torus solution does not transport the data".into(),
        ));
    }
    Ok(Some(torus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley;
    use crate::exact::CycloNum;
    use crate::scalar::{rat_int, Ring};
    use crate::QSeries;

    fn alg(l: &str) -> ChevalleyAlgebra {
        build_chevalley(&RootSystem::from_label(l).unwrap()).unwrap()
    }

    fn data(v: &[(i64, i64)]) -> FGData<Rational> {
        FGData::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn build_examples() {
        let a1 = alg("A1");
        let m = build_fg(&a1, &data(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!(m.get(0), QSeries::monomial(rat_int(1), -1, 1));
        assert_eq!(m.get(1), QSeries::constant(rat_int(1)));
        let a2 = alg("A2");
        let m = build_fg(&a2, &data(&[(1, 1), (1, 1), (1, 1)])).unwrap();
        assert!(a2.is_regular_semisimple(&m.map(|s| s.specialize_one())));
        assert!(matches!(
            build_fg(&a2, &data(&[(1, 1), (1, 1), (0, 1)])),
            Err(Error::ZeroScalar(_))
        ));
    }

    #[test]
    fn properties_small_types() {
        for (l, slope, irr) in [
            ("A1", "1/2", "1"),
            ("A2", "1/3", "2"),
            ("G2", "1/6", "2"),
            ("B3", "1/6", "3"),
        ] {
            let g = alg(l);
            let n = g.rank() + 1;
            let rep = verify_fg_properties(&g, &FGData::new(vec![rat_int(1); n])).unwrap();
            assert_eq!(rep.slope, slope);
            assert_eq!(rep.irr_adjoint, irr);
            assert_eq!(rep.s_minus_dim, 1);
            assert_eq!(rep.s0_dim, 0);
        }
    }

    #[test]
    fn properties_over_cyclotomics() {
        let g = alg("A2");
        let z = CycloNum::zeta(3);
        let d = FGData::new(vec![z.clone(), CycloNum::from_rational(rat(2, 1)), z]);
        assert!(verify_fg_properties(&g, &d).unwrap().pass);
    }

    #[test]
    fn invariants() {
        let a1 = RootSystem::from_label("A1").unwrap();
        assert_eq!(fg_invariant(&a1, &data(&[(3, 1), (5, 1)])).unwrap(), rat_int(15));
        let a2 = RootSystem::from_label("A2").unwrap();
        assert_eq!(
            fg_invariant(&a2, &data(&[(2, 1), (3, 1), (5, 1)])).unwrap(),
            rat_int(30)
        );
        let g2 = RootSystem::from_label("G2").unwrap();
        // marks (3, 2): j = x0 x1^3 x2^2
        assert_eq!(
            fg_invariant(&g2, &data(&[(1, 1), (2, 1), (3, 1)])).unwrap(),
            rat_int(72)
        );
        let base = data(&[(2, 1), (3, 1), (5, 1)]);
        let scaled = FGData::new(base.scalars.iter().map(|x| x * rat_int(7)).collect());
        assert_eq!(
            fg_invariant(&a2, &scaled).unwrap(),
            fg_invariant(&a2, &base).unwrap() * rat_int(7).pow_u32(3)
        );
    }

    #[test]
    fn orbit_examples() {
        let a2 = alg("A2");
        let w = h_orbit_equivalent(&a2, &data(&[(1, 1), (1, 1), (1, 1)]), &data(&[(1, 2), (1, 1), (2, 1)])).unwrap();
        assert!(w.is_some());
        let a1 = alg("A1");
        assert!(
            h_orbit_equivalent(&a1, &data(&[(1, 1), (1, 1)]), &data(&[(1, 1), (2, 1)]))
                .unwrap()
                .is_none()
        );
        let d = data(&[(3, 1), (-2, 7)]);
        assert_eq!(h_orbit_equivalent(&a1, &d, &d).unwrap(), Some(vec![rat_int(1)]));
    }
}
