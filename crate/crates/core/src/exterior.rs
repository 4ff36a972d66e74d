//! Alternating forms on `R^n` with sparse, lexicographically ordered storage.
//!
//! Indices are 0-based internally; `e^{124}` in the usual notation is the
//! blade `[0, 1, 3]`. A vector `v` contracts into the first slot:
//! `e_{j_r} ⌟ e^{j_1 … j_k} = (-1)^{r-1} e^{j_1 … ĵ_r … j_k}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Matrix, Scalar};

/// Strictly increasing index tuple.
pub type Blade = Vec<usize>;

/// Sorts `idx` in place and returns the sign of the sorting permutation,
/// or `None` if an index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort; tuples are short
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// Sign of concatenating two sorted blades, `None` if they overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i8, Blade)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining a's
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, out))
}

fn signed(c: &Scalar, sign: i8) -> Scalar {
    if sign > 0 {
        c.clone()
    } else {
        -c
    }
}

/// A `k`-form on `R^n`. Absent blades have coefficient zero; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Blade, Scalar>,
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Self {
        KForm {
            n,
            k,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant `c` as a 0-form.
    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut f = KForm::zero(n, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// `±e^{idx}` with the sign of sorting `idx` absorbed. Zero if an index
    /// repeats.
    pub fn basis(n: usize, idx: &[usize]) -> Result<Self> {
        KForm::monomial(n, idx, Scalar::one())
    }

    pub fn monomial(n: usize, idx: &[usize], c: Scalar) -> Result<Self> {
        let mut f = KForm::zero(n, idx.len());
        f.add_unsorted(idx, c)?;
        Ok(f)
    }

    /// Adds `c · e^{idx}` for an arbitrary index order.
    pub fn add_unsorted(&mut self, idx: &[usize], c: Scalar) -> Result<()> {
        if idx.len() != self.k {
            return Err(Error::InvalidDegree {
                degree: idx.len(),
                reason: format!("term of degree {} in a {}-form", idx.len(), self.k),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: bad + 1,
            });
        }
        let mut blade = idx.to_vec();
        if let Some(sign) = sort_with_sign(&mut blade) {
            self.add_term(blade, signed(&c, sign));
        }
        Ok(())
    }

    /// Adds `c` to the coefficient of an already sorted blade.
    fn add_term(&mut self, blade: Blade, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, blade: &[usize]) -> Scalar {
        self.coeffs.get(blade).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn field(&self) -> Result<FieldDesc> {
        self.coeffs
            .values()
            .try_fold(FieldDesc::Rationals, |f, c| f.join(c.field()))
    }

    /// Coefficient of `e^{1…n}`; zero unless this is a top-degree form.
    pub fn top_coefficient(&self) -> Scalar {
        if self.k != self.n {
            return Scalar::zero();
        }
        self.coeffs.values().next().cloned().unwrap_or_default()
    }

    /// The degree-0 value.
    pub fn scalar_value(&self) -> Scalar {
        if self.k != 0 {
            return Scalar::zero();
        }
        self.coeffs.values().next().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> KForm {
        if c.is_zero() {
            return KForm::zero(self.n, self.k);
        }
        KForm {
            n: self.n,
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, x)| (b.clone(), x * c))
                .collect(),
        }
    }

    fn check_same_space(&self, other: &KForm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.k != other.k {
            return Err(Error::InvalidDegree {
                degree: other.k,
                reason: format!("cannot combine with a {}-form", self.k),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Coefficients as a dense vector over the lexicographic basis of
    /// `Λ^k`.
    pub fn to_dense(&self) -> Vec<Scalar> {
        blades(self.n, self.k).map(|b| self.coeff(&b)).collect()
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::render_form(self))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(n={}, k={}: {})", self.n, self.k, self)
    }
}

/// All strictly increasing `k`-tuples in `0..n`, lexicographically.
pub fn blades(n: usize, k: usize) -> impl Iterator<Item = Blade> {
    let mut cur: Option<Blade> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        // advance to the next combination
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A vector in `R^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorN {
    comps: Vec<Scalar>,
}

impl VectorN {
    pub fn new(comps: Vec<Scalar>) -> Self {
        VectorN { comps }
    }

    pub fn zero(n: usize) -> Self {
        VectorN::new(vec![Scalar::zero(); n])
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = VectorN::zero(n);
        v.comps[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        VectorN::new(xs.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<Scalar> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> VectorN {
        VectorN::new(self.comps.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &VectorN) -> VectorN {
        VectorN::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &VectorN) -> VectorN {
        VectorN::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for VectorN {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.comps[i]
    }
}

impl fmt::Debug for VectorN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.comps).finish()
    }
}

/// Linear endomorphism of `R^n`; column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinMap {
    matrix: Matrix,
}

impl LinMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(LinMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinMap {
            matrix: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &VectorN) -> Result<VectorN> {
        Ok(VectorN::new(self.matrix.mul_vec(v.comps())?))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        LinMap::new(self.matrix.mul(&other.matrix)?)
    }

    pub fn inverse(&self) -> Result<LinMap> {
        LinMap::new(self.matrix.inverse()?)
    }

    pub fn det(&self) -> Scalar {
        self.matrix.det().expect("square by construction")
    }

    pub fn trace(&self) -> Scalar {
        self.matrix.trace()
    }
}

/// The volume form `θ = e^1 ∧ … ∧ e^n` used to turn `(n-1)`-forms into
/// vectors and `n`-forms into scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TopFrame {
    n: usize,
}

impl TopFrame {
    pub fn new(n: usize) -> Self {
        TopFrame { n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> KForm {
        KForm::basis(self.n, &(0..self.n).collect::<Vec<_>>()).expect("valid blade")
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    check_dims(a.n, b.n)?;
    let k = a.k + b.k;
    let mut out = KForm::zero(a.n, k);
    if k > a.n {
        return Ok(out);
    }
    for (ba, ca) in &a.coeffs {
        for (bb, cb) in &b.coeffs {
            if let Some((sign, blade)) = merge_sign(ba, bb) {
                out.add_term(blade, signed(&(ca * cb), sign));
            }
        }
    }
    Ok(out)
}

/// `α^{∧e}`; the empty power is the constant 1.
pub fn wedge_power(a: &KForm, e: usize) -> Result<KForm> {
    let mut acc = KForm::constant(a.n, Scalar::one());
    for _ in 0..e {
        acc = wedge(&acc, a)?;
    }
    Ok(acc)
}

/// `e_j ⌟ α` for a basis vector.
pub fn interior_basis(j: usize, a: &KForm) -> Result<KForm> {
    if a.k == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "cannot contract a 0-form".into(),
        });
    }
    let mut out = KForm::zero(a.n, a.k - 1);
    for (b, c) in &a.coeffs {
        if let Ok(r) = b.binary_search(&j) {
            let mut rest = b.clone();
            rest.remove(r);
            out.add_term(rest, signed(c, if r % 2 == 0 { 1 } else { -1 }));
        }
    }
    Ok(out)
}

/// `v ⌟ α`: contraction into the first argument.
pub fn interior(v: &VectorN, a: &KForm) -> Result<KForm> {
    check_dims(a.n, v.dim())?;
    if a.k == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "cannot contract a 0-form".into(),
        });
    }
    let mut out = KForm::zero(a.n, a.k - 1);
    for (j, x) in v.comps.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let part = interior_basis(j, a)?;
        for (b, c) in part.coeffs {
            out.add_term(b, c * x);
        }
    }
    Ok(out)
}

/// `α(v_1, …, v_k)`.
pub fn eval(a: &KForm, vs: &[VectorN]) -> Result<Scalar> {
    if vs.len() != a.k {
        return Err(Error::Arity {
            expected: a.k,
            got: vs.len(),
        });
    }
    let mut cur = a.clone();
    for v in vs {
        cur = interior(v, &cur)?;
    }
    Ok(cur.scalar_value())
}

/// `(g*α)(v_1, …, v_k) = α(g v_1, …, g v_k)`.
pub fn pullback(g: &LinMap, a: &KForm) -> Result<KForm> {
    check_dims(a.n, g.dim())?;
    let n = a.n;
    // g*e^i = Σ_j g_ij e^j
    let covectors: Vec<KForm> = (0..n)
        .map(|i| {
            let mut f = KForm::zero(n, 1);
            for j in 0..n {
                f.add_term(vec![j], g.matrix()[(i, j)].clone());
            }
            f
        })
        .collect();
    let mut out = KForm::zero(n, a.k);
    for (b, c) in &a.coeffs {
        let mut term = KForm::constant(n, c.clone());
        for &i in b {
            term = wedge(&term, &covectors[i])?;
            if term.is_zero() {
                break;
            }
        }
        for (tb, tc) in term.coeffs {
            out.add_term(tb, tc);
        }
    }
    Ok(out)
}

/// Infinitesimal action: `(A·α)(v_1, …) = Σ_i α(…, A v_i, …)`.
pub fn lie_action(m: &LinMap, a: &KForm) -> Result<KForm> {
    check_dims(a.n, m.dim())?;
    let mat = m.matrix();
    let mut out = KForm::zero(a.n, a.k);
    for (b, c) in &a.coeffs {
        for r in 0..b.len() {
            let i = b[r];
            for j in 0..a.n {
                let x = &mat[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let mut idx = b.clone();
                idx[r] = j;
                if let Some(sign) = sort_with_sign(&mut idx) {
                    out.add_term(idx, signed(&(c * x), sign));
                }
            }
        }
    }
    Ok(out)
}

/// The unique `u` with `u ⌟ θ = η`.
pub fn vector_from_coform(eta: &KForm, frame: &TopFrame) -> Result<VectorN> {
    check_dims(frame.dim(), eta.n)?;
    if eta.k + 1 != eta.n {
        return Err(Error::InvalidDegree {
            degree: eta.k,
            reason: format!("expected an {}-form", eta.n.saturating_sub(1)),
        });
    }
    let mut u = VectorN::zero(eta.n);
    for (b, c) in &eta.coeffs {
        // the missing index is the first position where b[i] != i
        let missing = (0..eta.n)
            .find(|&i| b.get(i) != Some(&i))
            .expect("an (n-1)-blade omits one index");
        u.comps[missing] = signed(c, if missing % 2 == 0 { 1 } else { -1 });
    }
    Ok(u)
}

/// Euclidean Hodge star: `e^I ↦ ε(I, I^c) e^{I^c}`, so that
/// `e^I ∧ ⋆e^I = θ`.
pub fn hodge_star(a: &KForm) -> KForm {
    let n = a.n;
    let mut out = KForm::zero(n, n - a.k);
    for (b, c) in &a.coeffs {
        let comp: Blade = (0..n).filter(|i| b.binary_search(i).is_err()).collect();
        let (sign, _) = merge_sign(b, &comp).expect("disjoint by construction");
        out.add_term(comp, signed(c, sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 1-based basis form, in conventional notation.
    fn e(n: usize, idx: &[usize]) -> KForm {
        let z: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        KForm::basis(n, &z).unwrap()
    }

    fn gamma1() -> KForm {
        e(6, &[1, 2, 3]).add(&e(6, &[4, 5, 6])).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&e(4, &[1]), &e(4, &[2])).unwrap(), e(4, &[1, 2]));
        assert!(wedge(&e(4, &[1, 2]), &e(4, &[1, 2])).unwrap().is_zero());
        // (2,4,1,3) has three inversions
        assert_eq!(
            wedge(&e(4, &[2, 4]), &e(4, &[1, 3])).unwrap(),
            e(4, &[1, 2, 3, 4]).scale(&Scalar::from_int(-1))
        );
        assert!(wedge(&e(4, &[1]), &e(5, &[1])).is_err());
    }

    #[test]
    fn wedge_beyond_top_degree_is_zero() {
        let w = wedge(&e(3, &[1, 2]), &e(3, &[2, 3])).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn interior_examples() {
        assert_eq!(interior_basis(0, &e(3, &[1, 2, 3])).unwrap(), e(3, &[2, 3]));
        assert_eq!(
            interior_basis(1, &e(3, &[1, 2, 3])).unwrap(),
            e(3, &[1, 3]).scale(&Scalar::from_int(-1))
        );
        assert_eq!(
            interior(&VectorN::basis(6, 4), &gamma1()).unwrap(),
            e(6, &[4, 6]).scale(&Scalar::from_int(-1))
        );
        assert!(interior(&VectorN::basis(3, 0), &KForm::constant(3, Scalar::one())).is_err());
    }

    #[test]
    fn eval_examples() {
        let g = gamma1();
        let v = |i: usize| VectorN::basis(6, i - 1);
        assert_eq!(eval(&g, &[v(1), v(2), v(3)]).unwrap(), Scalar::one());
        assert!(eval(&g, &[v(1), v(2), v(4)]).unwrap().is_zero());
        assert_eq!(eval(&g, &[v(2), v(1), v(3)]).unwrap(), Scalar::from_int(-1));
        assert!(matches!(
            eval(&g, &[v(1)]),
            Err(Error::Arity {
                expected: 3,
                got: 1
            })
        ));
    }

    #[test]
    fn pullback_examples() {
        let g = gamma1();
        assert_eq!(pullback(&LinMap::identity(6), &g).unwrap(), g);

        let mut d = Matrix::identity(6);
        d[(0, 0)] = Scalar::from_int(2);
        let d = LinMap::new(d).unwrap();
        assert_eq!(
            pullback(&d, &e(6, &[1, 2, 3])).unwrap(),
            e(6, &[1, 2, 3]).scale(&Scalar::from_int(2))
        );

        let swap = LinMap::new(Matrix::from_fn(6, 6, |i, j| {
            let target = match j {
                0 => 1,
                1 => 0,
                x => x,
            };
            if i == target {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }))
        .unwrap();
        let expected = e(6, &[4, 5, 6]).sub(&e(6, &[1, 2, 3])).unwrap();
        assert_eq!(pullback(&swap, &g).unwrap(), expected);
    }

    #[test]
    fn coform_examples() {
        let n = 5;
        let frame = TopFrame::new(n);
        assert_eq!(
            vector_from_coform(&e(n, &[2, 3, 4, 5]), &frame).unwrap(),
            VectorN::basis(n, 0)
        );
        assert_eq!(
            vector_from_coform(&e(n, &[1, 3, 4, 5]), &frame).unwrap(),
            VectorN::basis(n, 1).scale(&Scalar::from_int(-1))
        );
        assert!(vector_from_coform(&e(n, &[1, 2]), &frame).is_err());
    }

    #[test]
    fn lie_action_examples() {
        let a = e(6, &[1, 2, 3]);
        let id = LinMap::identity(6);
        assert_eq!(lie_action(&id, &a).unwrap(), a.scale(&Scalar::from_int(3)));

        let mut m = Matrix::zeros(6, 6);
        m[(0, 0)] = Scalar::one();
        assert_eq!(lie_action(&LinMap::new(m).unwrap(), &a).unwrap(), a);
    }

    #[test]
    fn blade_enumeration() {
        assert_eq!(blades(4, 2).count(), 6);
        assert_eq!(blades(8, 3).count(), binomial(8, 3));
        assert_eq!(blades(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(blades(2, 3).count(), 0);
        let b: Vec<_> = blades(4, 3).collect();
        assert_eq!(b.first().unwrap(), &vec![0, 1, 2]);
        assert_eq!(b.last().unwrap(), &vec![1, 2, 3]);
    }

    #[test]
    fn hodge_star_pairs_to_volume() {
        let theta = TopFrame::new(7).theta();
        for b in blades(7, 3) {
            let f = KForm::basis(7, &b).unwrap();
            assert_eq!(wedge(&f, &hodge_star(&f)).unwrap(), theta);
        }
    }

    #[test]
    fn sort_sign() {
        let mut v = vec![7, 3, 4];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, vec![3, 4, 7]);
        let mut v = vec![1, 0];
        assert_eq!(sort_with_sign(&mut v), Some(-1));
        let mut v = vec![2, 1, 2];
        assert_eq!(sort_with_sign(&mut v), None);
    }
}
