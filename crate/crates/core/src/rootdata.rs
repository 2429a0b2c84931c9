//! Root systems of types A-G in the simple-root basis, their numerology, and
//! explicit Weyl groups acting on roots by permutation.
//!
//! Conventions: Bourbaki numbering of the Dynkin diagram; the invariant form
//! is normalised so short roots have `(α, α) = 2`; the Cartan matrix is
//! `A_ij = <α_i^∨, α_j> = 2(α_i, α_j)/(α_i, α_i)`. Positive roots come first,
//! sorted by height (simple roots occupy indices `0..r`), followed by their
//! negatives in the same order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Ring;
use crate::Rational;

/// Default cap on `|W|` for explicit enumeration.
pub const DEFAULT_WEYL_BUDGET: u64 = 100_000;

/// Types handled without `--allow-large`, in the order suites run them.
pub const SUPPORTED_TYPES: [&str; 18] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Self {
        CartanType {
            family: family.to_ascii_uppercase(),
            rank,
        }
    }

    /// Parses labels such as `E6`, `a3`, `B2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::Parse("empty type label".into()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad type label {s:?}")))?;
        Ok(CartanType { family, rank })
    }

    fn is_valid(&self) -> bool {
        let n = self.rank;
        match self.family {
            'A' => n >= 1,
            'B' | 'C' => n >= 2,
            'D' => n >= 4,
            'E' => (6..=8).contains(&n),
            'F' => n == 4,
            'G' => n == 2,
            _ => false,
        }
    }

    fn is_desk_scale(&self) -> bool {
        let n = self.rank;
        match self.family {
            'A' => n <= 7,
            'B' | 'C' => n <= 4,
            'D' => n <= 5,
            'E' => n == 6,
            'F' | 'G' => true,
            _ => false,
        }
    }

    /// Degrees of the basic invariants, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        let mut d: Vec<u32> = match (self.family, n) {
            ('A', _) => (2..=n + 1).collect(),
            ('B', _) | ('C', _) => (1..=n).map(|k| 2 * k).collect(),
            ('D', _) => (1..n).map(|k| 2 * k).chain([n]).collect(),
            ('E', 6) => vec![2, 5, 6, 8, 9, 12],
            ('E', 7) => vec![2, 6, 8, 10, 12, 14, 18],
            ('E', 8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            ('F', 4) => vec![2, 6, 8, 12],
            ('G', 2) => vec![2, 6],
            _ => Vec::new(),
        };
        d.sort_unstable();
        d
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let mut link = |i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            'A' | 'D' | 'E' => {
                let edges: Vec<(usize, usize)> = match self.family {
                    'A' => (1..n).map(|i| (i - 1, i)).collect(),
                    'D' => (1..n - 1).map(|i| (i - 1, i)).chain([(n - 3, n - 1)]).collect(),
                    _ => [(0, 2), (2, 3), (3, 4), (1, 3)]
                        .into_iter()
                        .chain((4..n - 1).map(|i| (i, i + 1)))
                        .collect(),
                };
                for (i, j) in edges {
                    link(i, j, -1);
                }
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 2;
                }
            }
            'B' => {
                for i in 1..n {
                    link(i - 1, i, -2);
                }
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = if i + 1 == n { 2 } else { 4 };
                }
            }
            'C' => {
                for i in 1..n {
                    link(i - 1, i, if i + 1 == n { -2 } else { -1 });
                }
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = if i + 1 == n { 4 } else { 2 };
                }
            }
            'F' => {
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = if i < 2 { 4 } else { 2 };
                }
            }
            'G' => {
                link(0, 1, -3);
                g[0][0] = 2;
                g[1][1] = 6;
            }
            _ => unreachable!("validated before use"),
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A set of root indices (up to 256 roots, enough for E8).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet([u64; 4]);

impl RootSet {
    pub fn new() -> Self {
        RootSet([0; 4])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, o: &RootSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, o: &RootSet) -> RootSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = RootSet::new();
        for i in it {
            s.insert(i);
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    /// `B·α` for each root, so that `(α, x) = forms[α]·x`.
    forms: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n_pos: usize,
    highest: usize,
    degrees: Vec<u32>,
    simple_perms: Vec<Vec<u8>>,
}

/// Builds a root system; E7, E8 and classical types beyond the desk-scale
/// list need `allow_large`.
pub fn build_root_system(family: char, rank: usize, allow_large: bool) -> Result<RootSystem> {
    let ct = CartanType::new(family, rank);
    if !ct.is_valid() || ct.rank > 8 {
        return Err(Error::UnsupportedType(ct.to_string()));
    }
    if !ct.is_desk_scale() && !allow_large {
        return Err(Error::UnsupportedType(format!("{ct} (pass allow_large to enable)")));
    }
    RootSystem::from_type(ct)
}

impl RootSystem {
    /// Parses a label like `F4` and builds it, refusing large types.
    pub fn from_label(label: &str) -> Result<Self> {
        let ct = CartanType::parse(label)?;
        build_root_system(ct.family, ct.rank, false)
    }

    fn from_type(ct: CartanType) -> Result<Self> {
        let r = ct.rank;
        let gram = ct.gram();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        // Close the simple roots under simple reflections.
        let unit = |i: usize| -> Vec<i64> { (0..r).map(|j| (i == j) as i64).collect() };
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            seen.insert(unit(i), ());
            queue.push_back(unit(i));
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..r {
                let c: i64 = (0..r).map(|j| cartan[i][j] * b[j]).sum();
                let mut img = b.clone();
                img[i] -= c;
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_keys().filter(|v| v.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
        if roots.len() > 256 {
            return Err(Error::UnsupportedType(format!("{ct}: too many roots")));
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let forms = roots
            .iter()
            .map(|a| (0..r).map(|i| (0..r).map(|j| gram[i][j] * a[j]).sum()).collect())
            .collect();
        let simple_perms = (0..r)
            .map(|i| {
                roots
                    .iter()
                    .map(|b| {
                        let c: i64 = (0..r).map(|j| cartan[i][j] * b[j]).sum();
                        let mut img = b.clone();
                        img[i] -= c;
                        index[&img] as u8
                    })
                    .collect()
            })
            .collect();
        let highest = n_pos - 1;
        let rs = RootSystem {
            cartan_type: ct,
            gram,
            cartan,
            roots,
            forms,
            index,
            n_pos,
            highest,
            degrees: ct.degrees(),
            simple_perms,
        };
        rs.verify()?;
        Ok(rs)
    }

    fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::PropertyViolation(format!("{}: {m}", self.cartan_type)));
        let r = self.rank();
        if self.num_roots() != self.coxeter_number() as usize * r {
            return fail(format!(
                "|Φ| = {} but h·r = {}",
                self.num_roots(),
                self.coxeter_number() as usize * r
            ));
        }
        if self.degrees.len() != r {
            return fail("wrong number of degrees".into());
        }
        let exp_sum: u32 = self.exponents().iter().sum();
        if exp_sum as usize != self.n_pos {
            return fail("sum of exponents differs from |Φ+|".into());
        }
        // unique root of maximal height, of height h - 1
        let top = self.height(self.highest);
        if (0..self.n_pos).filter(|&i| self.height(i) == top).count() != 1 || top + 1 != self.coxeter_number() as i64 {
            return fail("highest root inconsistent with Coxeter number".into());
        }
        for (i, a) in self.roots.iter().enumerate() {
            let neg: Vec<i64> = a.iter().map(|c| -c).collect();
            if self.index.get(&neg) != Some(&self.neg(i)) {
                return fail("not closed under negation".into());
            }
            if !(a.iter().all(|&c| c >= 0) || a.iter().all(|&c| c <= 0)) {
                return fail("root with mixed-sign coefficients".into());
            }
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn label(&self) -> String {
        self.cartan_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Root coordinates as rationals in the simple-root basis.
    pub fn root_rational(&self, i: usize) -> Vec<Rational> {
        self.roots[i].iter().map(|&c| Rational::from_i64(c)).collect()
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `d_i = (α_i, α_i)/2`.
    pub fn symmetrizer(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.gram[i][i] / 2).collect()
    }

    /// `(α, β)` for root indices.
    pub fn inner(&self, a: usize, b: usize) -> i64 {
        self.forms[a].iter().zip(&self.roots[b]).map(|(x, y)| x * y).sum()
    }

    /// `(α, α)/2`, i.e. 1 for short roots.
    pub fn norm(&self, a: usize) -> i64 {
        self.inner(a, a) / 2
    }

    /// `<β^∨, α> = 2(α, β)/(β, β)`.
    pub fn cartan_integer(&self, beta: usize, alpha: usize) -> i64 {
        2 * self.inner(alpha, beta) / self.inner(beta, beta)
    }

    /// `(α, x)` for `x` in simple-root coordinates of 𝔥* (identified with 𝔥
    /// through the invariant form).
    pub fn pair<S: Ring>(&self, a: usize, x: &[S]) -> S {
        self.forms[a].iter().zip(x).fold(S::zero(), |acc, (&f, v)| {
            if f == 0 || v.is_zero() {
                acc
            } else {
                acc + S::from_i64(f) * v.clone()
            }
        })
    }

    /// `α(h)` for `h = Σ x_i h_i` in coroot coordinates.
    pub fn eval_on_coroots<S: Ring>(&self, a: usize, x: &[S]) -> S {
        let r = self.rank();
        let mut acc = S::zero();
        for (i, xi) in x.iter().enumerate().take(r) {
            if xi.is_zero() {
                continue;
            }
            let c: i64 = (0..r).map(|j| self.roots[a][j] * self.cartan[i][j]).sum();
            if c != 0 {
                acc = acc + S::from_i64(c) * xi.clone();
            }
        }
        acc
    }

    /// Coroot `α^∨` in the basis `h_i = α_i^∨`.
    pub fn coroot(&self, a: usize) -> Vec<i64> {
        let d = self.symmetrizer();
        let na = self.norm(a);
        self.roots[a].iter().zip(&d).map(|(c, di)| c * di / na).collect()
    }

    /// Converts coroot coordinates of 𝔥 to simple-root coordinates of 𝔥*.
    pub fn coroot_to_root_coords<S: crate::Field>(&self, x: &[S]) -> Vec<S> {
        x.iter()
            .zip(self.symmetrizer())
            .map(|(v, d)| v.clone() * S::from_i64(d).inv())
            .collect()
    }

    /// Converts simple-root coordinates of 𝔥* to coroot coordinates of 𝔥.
    pub fn root_to_coroot_coords<S: Ring>(&self, y: &[S]) -> Vec<S> {
        y.iter()
            .zip(self.symmetrizer())
            .map(|(v, d)| v.clone() * S::from_i64(d))
            .collect()
    }

    #[cfg(test)]
    fn matrix_cartan_det(&self) -> i64 {
        let m = Matrix::from_fn(self.rank(), self.rank(), |i, j| Rational::from_i64(self.cartan[i][j]));
        let cp = m.charpoly();
        let c0 = cp.coeff(0);
        let det = if self.rank().is_multiple_of(2) { c0 } else { -c0 };
        crate::scalar::rational_to_i64(&det).expect("integral")
    }

    pub fn highest_root(&self) -> usize {
        self.highest
    }

    /// Coefficients `c_i` of the highest root.
    pub fn marks(&self) -> Vec<i64> {
        self.roots[self.highest].clone()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.degrees.iter().map(|d| d - 1).collect()
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees.last().expect("rank >= 1")
    }

    pub fn weyl_order(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    /// `"a1+2a2"` style label; negative roots get a leading minus.
    pub fn root_label(&self, i: usize) -> String {
        let v = &self.roots[i];
        let sign = if self.is_positive(i) { "" } else { "-" };
        let sep = if self.is_positive(i) { "+" } else { "-" };
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(j, c)| {
                let c = c.abs();
                if c == 1 {
                    format!("a{}", j + 1)
                } else {
                    format!("{c}a{}", j + 1)
                }
            })
            .collect();
        format!("{sign}{}", parts.join(sep))
    }

    pub fn parse_root_label(&self, s: &str) -> Option<usize> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, s.clone()),
        };
        let sep = if neg { '-' } else { '+' };
        let mut v = vec![0i64; self.rank()];
        for term in body.split(sep) {
            let (c, idx) = term.split_once('a')?;
            let c: i64 = if c.is_empty() { 1 } else { c.parse().ok()? };
            let idx: usize = idx.parse().ok()?;
            if idx == 0 || idx > self.rank() {
                return None;
            }
            v[idx - 1] += if neg { -c } else { c };
        }
        self.root_index(&v)
    }

    pub fn identity(&self) -> WeylElement {
        self.element_from_perm((0..self.num_roots() as u8).collect())
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.element_from_perm(self.simple_perms[i].clone())
    }

    pub fn simple_reflection_perm(&self, i: usize) -> &[u8] {
        &self.simple_perms[i]
    }

    /// Reflection in an arbitrary root.
    pub fn reflection(&self, beta: usize) -> WeylElement {
        let perm = (0..self.num_roots())
            .map(|g| {
                let c = self.cartan_integer(beta, g);
                let img: Vec<i64> = self.roots[g]
                    .iter()
                    .zip(&self.roots[beta])
                    .map(|(x, b)| x - c * b)
                    .collect();
                self.index[&img] as u8
            })
            .collect();
        self.element_from_perm(perm)
    }

    /// `s_1 s_2 ... s_r`.
    pub fn coxeter_element(&self) -> WeylElement {
        (0..self.rank()).fold(self.identity(), |w, i| w.compose(&self.simple_reflection(i)))
    }

    pub fn element_from_perm(&self, perm: Vec<u8>) -> WeylElement {
        let r = self.rank();
        let mut matrix = vec![0i64; r * r];
        for j in 0..r {
            let img = &self.roots[perm[j] as usize];
            for i in 0..r {
                matrix[i * r + j] = img[i];
            }
        }
        WeylElement { rank: r, perm, matrix }
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut inv = vec![0u8; w.perm.len()];
        for (i, &p) in w.perm.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        self.element_from_perm(inv)
    }

    /// Whether a set of root vectors lies in `{α : f(α) > 0}` for some linear
    /// functional `f`. Returns such an `f` (as integer values on the simple
    /// roots) when found. `None` is conclusive when the closure of the set
    /// contains an opposite pair; otherwise it only means the search was cut
    /// short, which cannot happen for root subsets (they are contained in a
    /// positive system exactly when their closure meets no opposite pair).
    pub fn positive_functional(&self, set: &[usize]) -> Option<Vec<i64>> {
        let mut closed: RootSet = set.iter().copied().collect();
        let mut frontier: Vec<usize> = set.to_vec();
        while let Some(a) = frontier.pop() {
            let members: Vec<usize> = closed.iter().collect();
            for b in members {
                let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
                if let Some(&c) = self.index.get(&s) {
                    if !closed.contains(c) {
                        closed.insert(c);
                        frontier.push(c);
                    }
                }
            }
        }
        if closed.iter().any(|a| closed.contains(self.neg(a))) {
            return None;
        }
        // Perceptron: converges for strictly separable finite sets.
        let r = self.rank();
        let mut f = vec![0i64; r];
        for _ in 0..100_000 {
            let bad = set.iter().find(|&&a| {
                let v: i64 = f.iter().zip(&self.roots[a]).map(|(x, y)| x * y).sum();
                v <= 0
            });
            match bad {
                None => return Some(f),
                Some(&a) => {
                    for (x, y) in f.iter_mut().zip(&self.roots[a]) {
                        *x += y;
                    }
                }
            }
        }
        None
    }
}

/// An element of W, stored as a permutation of root indices together with
/// its integer matrix on 𝔥* in the simple-root basis (column `j` is
/// `w(α_j)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    perm: Vec<u8>,
    matrix: Vec<i64>,
}

impl WeylElement {
    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    pub fn int_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        (0..r).map(|i| self.matrix[i * r..(i + 1) * r].to_vec()).collect()
    }

    pub fn matrix_over<S: Ring>(&self) -> Matrix<S> {
        let r = self.rank;
        Matrix::from_fn(r, r, |i, j| S::from_i64(self.matrix[i * r + j]))
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        self.matrix_over()
    }

    /// Action on a vector in simple-root coordinates.
    pub fn act<S: Ring>(&self, x: &[S]) -> Vec<S> {
        let r = self.rank;
        (0..r)
            .map(|i| {
                (0..r).fold(S::zero(), |acc, j| {
                    let m = self.matrix[i * r + j];
                    if m == 0 || x[j].is_zero() {
                        acc
                    } else {
                        acc + S::from_i64(m) * x[j].clone()
                    }
                })
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm: Vec<u8> = other.perm.iter().map(|&k| self.perm[k as usize]).collect();
        let r = self.rank;
        let mut matrix = vec![0i64; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.matrix[i * r + k];
                if a == 0 {
                    continue;
                }
                for j in 0..r {
                    matrix[i * r + j] += a * other.matrix[k * r + j];
                }
            }
        }
        WeylElement { rank: r, perm, matrix }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn order(&self) -> u32 {
        let mut k = 1;
        let mut cur = self.perm.clone();
        while cur.iter().enumerate().any(|(i, &p)| i != p as usize) {
            cur = cur.iter().map(|&p| self.perm[p as usize]).collect();
            k += 1;
        }
        k
    }
}

/// The whole Weyl group as a flat table of root permutations, sorted
/// lexicographically by permutation.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    nroots: usize,
    perms: Vec<u8>,
    lookup: HashMap<u64, u32>,
}

fn simple_key(perm: &[u8], r: usize) -> u64 {
    perm[..r]
        .iter()
        .enumerate()
        .fold(0u64, |k, (j, &p)| k | (p as u64) << (8 * j))
}

/// Breadth-first closure of the simple reflections. Fails fast when
/// `|W| = ∏ d_i` exceeds `budget`.
pub fn enumerate_weyl(rs: &RootSystem, budget: u64) -> Result<WeylGroup> {
    let order = rs.weyl_order();
    if order > budget {
        return Err(Error::BudgetExceeded { order, budget });
    }
    let r = rs.rank();
    let n = rs.num_roots();
    let mut perms: Vec<u8> = (0..n as u8).collect();
    let mut seen: HashMap<u64, u32> = HashMap::new();
    seen.insert(simple_key(&perms, r), 0);
    let mut head = 0usize;
    let mut img = vec![0u8; n];
    while head * n < perms.len() {
        for s in &rs.simple_perms {
            for k in 0..n {
                img[k] = s[perms[head * n + k] as usize];
            }
            let key = simple_key(&img, r);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert((perms.len() / n) as u32);
                perms.extend_from_slice(&img);
            }
        }
        head += 1;
    }
    let count = perms.len() / n;
    if count as u64 != order {
        return Err(Error::PropertyViolation(format!(
            "{}: enumerated {count} Weyl elements, expected {order}",
            rs.label()
        )));
    }
    let mut idx: Vec<usize> = (0..count).collect();
    idx.sort_by(|&a, &b| perms[a * n..(a + 1) * n].cmp(&perms[b * n..(b + 1) * n]));
    let mut sorted = Vec::with_capacity(perms.len());
    for &i in &idx {
        sorted.extend_from_slice(&perms[i * n..(i + 1) * n]);
    }
    let lookup = (0..count)
        .map(|i| (simple_key(&sorted[i * n..(i + 1) * n], r), i as u32))
        .collect();
    Ok(WeylGroup {
        rank: r,
        nroots: n,
        perms: sorted,
        lookup,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub order: u32,
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.perms.len() / self.nroots
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, i: usize) -> &[u8] {
        &self.perms[i * self.nroots..(i + 1) * self.nroots]
    }

    pub fn element(&self, rs: &RootSystem, i: usize) -> WeylElement {
        rs.element_from_perm(self.perm(i).to_vec())
    }

    pub fn elements<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = WeylElement> + 'a {
        (0..self.len()).map(move |i| self.element(rs, i))
    }

    /// Position of the element whose permutation is `perm`.
    pub fn index_of(&self, perm: &[u8]) -> Option<usize> {
        self.lookup.get(&simple_key(perm, self.rank)).map(|&i| i as usize)
    }

    pub fn order_of(&self, i: usize) -> u32 {
        let p = self.perm(i);
        let mut k = 1;
        let mut cur = p.to_vec();
        while cur.iter().enumerate().any(|(a, &b)| a != b as usize) {
            cur = cur.iter().map(|&x| p[x as usize]).collect();
            k += 1;
        }
        k
    }

    /// Conjugacy classes, found as orbits under conjugation by simple
    /// reflections. Representatives are the smallest index in each class.
    pub fn conjugacy_classes(&self, rs: &RootSystem) -> Vec<ConjugacyClass> {
        let r = self.rank;
        let mut class_of = vec![u32::MAX; self.len()];
        let mut out = Vec::new();
        let mut key_img = vec![0u8; r];
        for start in 0..self.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = out.len() as u32;
            class_of[start] = c;
            let mut stack = vec![start];
            let mut size = 0;
            while let Some(w) = stack.pop() {
                size += 1;
                let p = self.perm(w);
                for s in &rs.simple_perms {
                    for j in 0..r {
                        key_img[j] = s[p[s[j] as usize] as usize];
                    }
                    let v = self.lookup[&simple_key(&key_img, r)] as usize;
                    if class_of[v] == u32::MAX {
                        class_of[v] = c;
                        stack.push(v);
                    }
                }
            }
            out.push(ConjugacyClass {
                representative: start,
                size,
                order: self.order_of(start),
            });
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicInfo {
    /// Simple-root indices (0-based) of `S`.
    pub subset: Vec<usize>,
    /// Irreducible components, e.g. `["A2", "A1"]`, largest first.
    pub components: Vec<String>,
    pub root_count: usize,
    /// Degrees of `W_S` on 𝔥, padded with 1's to the full rank.
    pub degrees: Vec<u32>,
}

impl ParabolicInfo {
    pub fn type_label(&self) -> String {
        if self.components.is_empty() {
            "trivial".into()
        } else {
            self.components.join("+")
        }
    }

    pub fn rank(&self) -> usize {
        self.subset.len()
    }
}

impl RootSystem {
    /// Roots supported on the simple roots in `mask`.
    fn roots_in(&self, mask: u32) -> Vec<usize> {
        (0..self.num_roots())
            .filter(|&a| {
                self.roots[a]
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || mask >> i & 1 == 1)
            })
            .collect()
    }

    fn component_type(&self, nodes: &[usize]) -> CartanType {
        let mask = nodes.iter().fold(0u32, |m, &i| m | 1 << i);
        let roots = self.roots_in(mask);
        let k = nodes.len();
        let n = roots.len();
        let norms: Vec<i64> = roots.iter().map(|&a| self.norm(a)).collect();
        let min = norms.iter().copied().min().unwrap_or(1);
        let long = norms.iter().filter(|&&x| x > min).count();
        let family = if long == 0 {
            match (k, n) {
                (_, n) if n == k * (k + 1) => 'A',
                (6, 72) | (7, 126) | (8, 240) => 'E',
                _ => 'D',
            }
        } else {
            match (k, n) {
                (2, 12) => 'G',
                (4, 48) => 'F',
                _ if long > n - long => 'B',
                _ if k == 2 => 'B',
                _ => 'C',
            }
        };
        CartanType::new(family, k)
    }

    fn parabolic(&self, mask: u32) -> ParabolicInfo {
        let r = self.rank();
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let mut seen = 0u32;
        let mut comps: Vec<CartanType> = Vec::new();
        for &s in &subset {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = vec![s];
            seen |= 1 << s;
            let mut k = 0;
            while k < comp.len() {
                let a = comp[k];
                for &b in &subset {
                    if seen >> b & 1 == 0 && self.gram[a][b] != 0 {
                        seen |= 1 << b;
                        comp.push(b);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(self.component_type(&comp));
        }
        comps.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)));
        let mut degrees: Vec<u32> = comps.iter().flat_map(|c| c.degrees()).collect();
        degrees.resize(r, 1);
        degrees.sort_unstable();
        ParabolicInfo {
            subset,
            components: comps.iter().map(|c| c.to_string()).collect(),
            root_count: self.roots_in(mask).len(),
            degrees,
        }
    }
}

/// One entry per proper subset of the simple roots (the empty set included).
/// Every parabolic subgroup of W is conjugate to one of these.
pub fn standard_parabolics(rs: &RootSystem) -> Vec<ParabolicInfo> {
    let full = (1u32 << rs.rank()) - 1;
    (0..full).map(|m| rs.parabolic(m)).collect()
}

/// Proper standard parabolics having a degree divisible by `b`.
pub fn parabolic_degree_scan(rs: &RootSystem, b: u32) -> Vec<ParabolicInfo> {
    assert!(b >= 1);
    standard_parabolics(rs)
        .into_iter()
        .filter(|p| p.degrees.iter().any(|d| d % b == 0))
        .collect()
}
