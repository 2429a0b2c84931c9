//! A Chevalley basis of the simple Lie algebra attached to a root system.
//!
//! Basis order: the root vectors `e_α` in the root order of [`RootSystem`],
//! then `h_1, ..., h_r` (the simple coroots). Structure constants
//! `[e_α, e_β] = N_{α,β} e_{α+β}` are integers with `|N_{α,β}| = p + 1`,
//! where `p` is the largest integer with `β - pα` a root. Signs are fixed by
//! declaring `N > 0` on every extraspecial pair and propagating with the
//! usual identities; `N_{-α,-β} = -N_{α,β}` and `[e_α, e_{-α}] = h_α`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::RootSystem;
use crate::scalar::{Field, Ring, F61};
use crate::Rational;

/// Sparse element of 𝔤 over a coefficient ring; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    coeffs: BTreeMap<usize, S>,
}

impl<S: Ring> Default for AlgebraElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Ring> AlgebraElement<S> {
    pub fn zero() -> Self {
        AlgebraElement {
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums repeated basis indices.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut coeffs: BTreeMap<usize, S> = BTreeMap::new();
        for (i, c) in terms {
            let slot = coeffs.entry(i).or_insert_with(S::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        AlgebraElement { coeffs }
    }

    pub fn basis(i: usize) -> Self {
        Self::from_terms([(i, S::one())])
    }

    pub fn get(&self, i: usize) -> S {
        self.coeffs.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_terms(self.terms().chain(o.terms()).map(|(i, c)| (i, c.clone())))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_terms(self.terms().map(|(i, c)| (i, c.clone() * k.clone())))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        AlgebraElement::from_terms(self.terms().map(|(i, c)| (i, f(c))))
    }

    /// Dense coefficient vector of length `dim`.
    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut v = vec![S::zero(); dim];
        for (i, c) in self.terms() {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[S]) -> Self {
        Self::from_terms(v.iter().cloned().enumerate())
    }
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    nr: usize,
    /// Index of `α + β`, or -1.
    sums: Vec<i32>,
    n: Vec<i64>,
    coroots: Vec<Vec<i64>>,
    /// `α(h_i)` per root.
    weights: Vec<Vec<i64>>,
}

/// Builds the algebra and checks the Jacobi identity on every basis triple.
pub fn build_chevalley(rs: &RootSystem) -> Result<ChevalleyAlgebra> {
    let nr = rs.num_roots();
    let r = rs.rank();
    let mut sums = vec![-1i32; nr * nr];
    for a in 0..nr {
        for b in 0..nr {
            let s: Vec<i64> = rs.root(a).iter().zip(rs.root(b)).map(|(x, y)| x + y).collect();
            if let Some(c) = rs.root_index(&s) {
                sums[a * nr + b] = c as i32;
            }
        }
    }
    let n = structure_constants(rs, &sums)?;
    let coroots = (0..nr).map(|a| rs.coroot(a)).collect();
    let weights = (0..nr)
        .map(|a| {
            (0..r)
                .map(|i| (0..r).map(|j| rs.cartan_matrix()[i][j] * rs.root(a)[j]).sum())
                .collect()
        })
        .collect();
    let alg = ChevalleyAlgebra {
        rs: rs.clone(),
        nr,
        sums,
        n,
        coroots,
        weights,
    };
    alg.verify()?;
    Ok(alg)
}

fn structure_constants(rs: &RootSystem, sums: &[i32]) -> Result<Vec<i64>> {
    let nr = rs.num_roots();
    let np = rs.num_positive();
    let sum = |a: usize, b: usize| -> Option<usize> {
        let s = sums[a * nr + b];
        (s >= 0).then_some(s as usize)
    };
    let string_p = |a: usize, b: usize| -> i64 {
        // largest p with b - p·a a root
        let mut p = 0;
        let mut cur: Vec<i64> = rs.root(b).to_vec();
        loop {
            for (c, x) in cur.iter_mut().zip(rs.root(a)) {
                *c -= x;
            }
            if rs.root_index(&cur).is_none() {
                return p;
            }
            p += 1;
        }
    };

    // Positive pairs in order of increasing height of the sum.
    let mut table = vec![0i64; nr * nr];
    let mut xis: Vec<usize> = (0..np).collect();
    xis.sort_by_key(|&x| rs.height(x));

    fn reduce(rs: &RootSystem, table: &[i64], sums: &[i32], a: usize, b: usize) -> i64 {
        let nr = rs.num_roots();
        let s = sums[a * nr + b];
        if s < 0 {
            return 0;
        }
        let c = s as usize;
        let (pa, pb) = (rs.is_positive(a), rs.is_positive(b));
        let exact = |num: i64, den: i64| -> i64 {
            assert!(num % den == 0, "non-integral structure constant");
            num / den
        };
        match (pa, pb) {
            (true, true) => table[a * nr + b],
            (false, false) => -reduce(rs, table, sums, rs.neg(a), rs.neg(b)),
            (false, true) => -reduce(rs, table, sums, b, a),
            (true, false) => {
                // N_{a,b}/(c,c) = N_{b,-c}/(a,a) = N_{-c,a}/(b,b)
                let cc = rs.inner(c, c);
                if rs.is_positive(c) {
                    let nb = -table[rs.neg(b) * nr + c];
                    exact(cc * nb, rs.inner(a, a))
                } else {
                    let nc = table[rs.neg(c) * nr + a];
                    exact(cc * nc, rs.inner(b, b))
                }
            }
        }
    }

    for &xi in &xis {
        let pairs: Vec<(usize, usize)> = (0..np)
            .filter_map(|a| {
                let rest: Vec<i64> = rs.root(xi).iter().zip(rs.root(a)).map(|(x, y)| x - y).collect();
                rs.root_index(&rest).filter(|&b| rs.is_positive(b)).map(|b| (a, b))
            })
            .collect();
        let Some(&(a1, b1)) = pairs.iter().min_by_key(|(a, _)| *a) else {
            continue;
        };
        let n1 = string_p(a1, b1) + 1;
        table[a1 * nr + b1] = n1;
        table[b1 * nr + a1] = -n1;
        let xx = rs.inner(xi, xi);
        for &(a, b) in &pairs {
            if a >= b || (a, b) == (a1, b1) {
                continue;
            }
            // quadruple (a, b, -a1, -b1)
            let mut num = Rational::from_i64(0);
            if let Some(c) = sum(b, rs.neg(a1)) {
                let t = reduce(rs, &table, sums, b, rs.neg(a1)) * reduce(rs, &table, sums, a, rs.neg(b1));
                num += Rational::new(t.into(), rs.inner(c, c).into());
            }
            if let Some(c) = sum(a, rs.neg(a1)) {
                let t = reduce(rs, &table, sums, rs.neg(a1), a) * reduce(rs, &table, sums, b, rs.neg(b1));
                num += Rational::new(t.into(), rs.inner(c, c).into());
            }
            let v = num * Rational::new(xx.into(), n1.into());
            let v = crate::scalar::rational_to_i64(&v)
                .ok_or_else(|| Error::PropertyViolation(format!("non-integral N for roots {a},{b}")))?;
            table[a * nr + b] = v;
            table[b * nr + a] = -v;
        }
    }
    let mut full = vec![0i64; nr * nr];
    for a in 0..nr {
        for b in 0..nr {
            full[a * nr + b] = reduce(rs, &table, sums, a, b);
        }
    }
    for a in 0..nr {
        for b in 0..nr {
            if sum(a, b).is_some() && full[a * nr + b].abs() != string_p(a, b) + 1 {
                return Err(Error::PropertyViolation(format!(
                    "|N| differs from p+1 for {} and {}",
                    rs.root_label(a),
                    rs.root_label(b)
                )));
            }
        }
    }
    Ok(full)
}

impl ChevalleyAlgebra {
    fn verify(&self) -> Result<()> {
        let d = self.dim();
        for x in 0..d {
            for y in x + 1..d {
                let xy = self.bracket_basis(x, y);
                for z in y + 1..d {
                    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                    for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                        let inner = if (u, v) == (x, y) {
                            xy.clone()
                        } else {
                            self.bracket_basis(u, v)
                        };
                        for (k, c) in inner {
                            for (m, c2) in self.bracket_basis(w, k) {
                                *acc.entry(m).or_insert(0) -= c * c2;
                            }
                        }
                    }
                    if acc.values().any(|&v| v != 0) {
                        return Err(Error::PropertyViolation(format!(
                            "Jacobi fails on {}, {}, {}",
                            self.basis_label(x),
                            self.basis_label(y),
                            self.basis_label(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.nr + self.rs.rank()
    }

    /// Basis index of `h_i` (0-based `i`).
    pub fn cartan_index(&self, i: usize) -> usize {
        self.nr + i
    }

    pub fn is_root_index(&self, j: usize) -> bool {
        j < self.nr
    }

    pub fn basis_label(&self, j: usize) -> String {
        if j < self.nr {
            format!("e[{}]", self.rs.root_label(j))
        } else {
            format!("h{}", j - self.nr + 1)
        }
    }

    /// `N_{α,β}` (0 when `α + β` is not a root).
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.nr + b]
    }

    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sums[a * self.nr + b];
        (s >= 0).then_some(s as usize)
    }

    /// `[b_i, b_j]` as sparse integer terms.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let nr = self.nr;
        match (i < nr, j < nr) {
            (true, true) => {
                if let Some(c) = self.root_sum(i, j) {
                    vec![(c, self.n[i * nr + j])]
                } else if j == self.rs.neg(i) {
                    self.coroots[i]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (nr + k, c))
                        .collect()
                } else {
                    Vec::new()
                }
            }
            (false, true) => {
                let w = self.weights[j][i - nr];
                if w == 0 {
                    Vec::new()
                } else {
                    vec![(j, w)]
                }
            }
            (true, false) => {
                let w = self.weights[i][j - nr];
                if w == 0 {
                    Vec::new()
                } else {
                    vec![(i, -w)]
                }
            }
            (false, false) => Vec::new(),
        }
    }

    pub fn root_vector<S: Ring>(&self, root: usize, c: S) -> AlgebraElement<S> {
        AlgebraElement::from_terms([(root, c)])
    }

    /// `Σ x_i h_i`.
    pub fn cartan_element<S: Ring>(&self, x: &[S]) -> AlgebraElement<S> {
        AlgebraElement::from_terms(x.iter().cloned().enumerate().map(|(i, c)| (self.nr + i, c)))
    }

    /// Coroot coordinates of the Cartan component.
    pub fn cartan_part<S: Ring>(&self, x: &AlgebraElement<S>) -> Vec<S> {
        (0..self.rank()).map(|i| x.get(self.nr + i)).collect()
    }

    pub fn bracket<S: Ring>(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut terms = Vec::new();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                for (k, c) in self.bracket_basis(i, j) {
                    terms.push((k, a.clone() * b.clone() * S::from_i64(c)));
                }
            }
        }
        AlgebraElement::from_terms(terms)
    }

    /// Matrix of `ad X` in the Chevalley basis (column `j` is `[X, b_j]`).
    pub fn ad_matrix<S: Ring>(&self, x: &AlgebraElement<S>) -> Matrix<S> {
        let d = self.dim();
        let mut m = Matrix::<S>::zeros(d, d);
        for (i, a) in x.terms() {
            for j in 0..d {
                for (k, c) in self.bracket_basis(i, j) {
                    let v = m.get(k, j).clone() + a.clone() * S::from_i64(c);
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    /// Killing form on basis vectors, `tr(ad b_i ad b_j)`.
    pub fn killing_basis(&self, i: usize, j: usize) -> i64 {
        let d = self.dim();
        let mut tr = 0;
        for k in 0..d {
            for (m, c) in self.bracket_basis(j, k) {
                for (n, c2) in self.bracket_basis(i, m) {
                    if n == k {
                        tr += c * c2;
                    }
                }
            }
        }
        tr
    }

    pub fn killing<S: Ring>(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> S {
        let mut acc = S::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let k = self.killing_pairing_nonzero(i, j);
                if k != 0 {
                    acc = acc + a.clone() * b.clone() * S::from_i64(k);
                }
            }
        }
        acc
    }

    fn killing_pairing_nonzero(&self, i: usize, j: usize) -> i64 {
        // κ pairs 𝔤_α with 𝔤_{-α} and 𝔥 with itself only
        let nr = self.nr;
        let relevant = match (i < nr, j < nr) {
            (true, true) => j == self.rs.neg(i),
            (false, false) => true,
            _ => false,
        };
        if relevant {
            self.killing_basis(i, j)
        } else {
            0
        }
    }

    /// `ad X` is nilpotent, decided by its characteristic polynomial.
    pub fn is_nilpotent<S: Field>(&self, x: &AlgebraElement<S>) -> bool {
        self.ad_matrix(x).is_nilpotent()
    }

    /// Kernel of `ad X` has dimension `r` and `ad X` is diagonalisable.
    pub fn is_regular_semisimple<S: Field>(&self, x: &AlgebraElement<S>) -> bool {
        let m = self.ad_matrix(x);
        m.kernel().len() == self.rank() && m.has_squarefree_minpoly()
    }

    /// Dimension of the centralizer of `X` in 𝔤.
    pub fn centralizer_dim<S: Field>(&self, x: &AlgebraElement<S>) -> usize {
        self.ad_matrix(x).kernel().len()
    }

    /// Does the span of `spanning` contain a non-nilpotent element?
    ///
    /// Order of attack: (1) if every element is a combination of root vectors
    /// and the roots involved all lie on the positive side of one linear
    /// functional, the span sits in a nilpotent subalgebra and the answer is
    /// no; (2) `trials` random integer combinations, each tested modulo the
    /// prime 2^61 - 1, where a non-nilpotent reduction certifies a
    /// non-nilpotent element over Q; (3) if every trial looked nilpotent, the
    /// combination with distinct prime coefficients is tested exactly and
    /// that answer is reported.
    pub fn generic_span_nonnilpotent(
        &self,
        spanning: &[AlgebraElement<Rational>],
        trials: usize,
        seed: u64,
    ) -> SpanTest {
        assert!(!spanning.is_empty(), "empty spanning set");
        let support: Vec<usize> = {
            let mut s: Vec<usize> = spanning.iter().flat_map(|x| x.support()).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        if support.iter().all(|&j| self.is_root_index(j)) {
            if let Some(f) = self.rs.positive_functional(&support) {
                return SpanTest {
                    nonnilpotent: false,
                    decided_by: SpanDecision::HalfSpace { functional: f },
                };
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..trials {
            let coefficients: Vec<i64> = spanning.iter().map(|_| rng.gen_range(1..=1i64 << 40)).collect();
            let combo = combine(spanning, &coefficients);
            let reduced: Option<Vec<(usize, F61)>> = combo
                .terms()
                .map(|(i, c)| F61::from_rational(c).map(|v| (i, v)))
                .collect();
            if let Some(terms) = reduced {
                let xp = AlgebraElement::from_terms(terms);
                if !self.is_nilpotent(&xp) {
                    return SpanTest {
                        nonnilpotent: true,
                        decided_by: SpanDecision::RandomTrial { trial, coefficients },
                    };
                }
            }
        }
        let primes = first_primes(spanning.len());
        let combo = combine(spanning, &primes);
        let nonnilpotent = !self.is_nilpotent(&combo);
        SpanTest {
            nonnilpotent,
            decided_by: SpanDecision::PrimeFallback { primes },
        }
    }
}

fn combine(spanning: &[AlgebraElement<Rational>], coefficients: &[i64]) -> AlgebraElement<Rational> {
    spanning
        .iter()
        .zip(coefficients)
        .fold(AlgebraElement::zero(), |acc, (x, &c)| {
            acc.add(&x.scale(&Rational::from_i64(c)))
        })
}

fn first_primes(k: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(k);
    let mut n = 2i64;
    while out.len() < k {
        if (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanTest {
    pub nonnilpotent: bool,
    pub decided_by: SpanDecision,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum SpanDecision {
    /// All supports lie in `{α : f(α) > 0}` (values of `f` on simple roots).
    HalfSpace {
        functional: Vec<i64>,
    },
    RandomTrial {
        trial: usize,
        coefficients: Vec<i64>,
    },
    PrimeFallback {
        primes: Vec<i64>,
    },
}
