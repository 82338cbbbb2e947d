//! Integral symmetric pairings and the finite linking forms they present.
//!
//! Sign convention: a nonsingular Gram matrix `A` presents the form
//! `-A^{-1} mod 1` on its cokernel. In particular `[p]` presents `(-1/p)`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intmatrix::{
    self, clear_denominators, hermite_normal_form, smith_normal_form, Definiteness, IntMatrix,
    MatrixError, RatMatrix,
};
use crate::numtheory::{self, NumberTheoryError};

/// Largest group order for which general (non-cyclic) isomorphism is decided.
pub const ISOMORPHISM_ORDER_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error("gram matrix is singular")]
    Singular,
    #[error("order must be positive, got {0}")]
    InvalidOrder(BigInt),
    #[error("{q} is not prime to {p}")]
    NotCoprime { p: BigInt, q: BigInt },
    #[error("vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vector has square {0}, expected +1 or -1")]
    NotUnitSquare(BigInt),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, FormError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

fn frac_mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// A nonsingular integral symmetric bilinear form, given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GramPairing {
    gram: IntMatrix,
}

impl fmt::Debug for GramPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GramPairing({})", self.gram)
    }
}

impl fmt::Display for GramPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.gram, f)
    }
}

impl GramPairing {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(MatrixError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            }
            .into());
        }
        if !gram.is_symmetric() {
            return Err(MatrixError::NotSymmetric.into());
        }
        if intmatrix::determinant(&gram)?.is_zero() {
            return Err(FormError::Singular);
        }
        Ok(GramPairing { gram })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// The rank-zero pairing; it presents the trivial form.
    pub fn empty() -> Self {
        GramPairing {
            gram: IntMatrix::zeros(0, 0),
        }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> IntMatrix {
        self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> BigInt {
        intmatrix::determinant(&self.gram).expect("gram is square")
    }

    pub fn parity(&self) -> Parity {
        if self.gram.diagonal().iter().any(|x| x.is_odd()) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn definiteness(&self) -> Definiteness {
        intmatrix::definiteness(&self.gram).expect("gram is symmetric")
    }

    pub fn signature(&self) -> i64 {
        intmatrix::signature(&self.gram).expect("gram is symmetric")
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(FormError::WrongLength {
                expected: self.rank(),
                found: v.len(),
            })
        }
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    pub fn square(&self, x: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, x)
    }

    pub fn direct_sum(&self, other: &GramPairing) -> GramPairing {
        GramPairing {
            gram: self.gram.block_sum(&other.gram),
        }
    }

    pub fn negate(&self) -> GramPairing {
        GramPairing { gram: -&self.gram }
    }

    /// `v` is characteristic when `v.x = x.x (mod 2)` for every `x`.
    pub fn is_characteristic(&self, v: &[BigInt]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        let av = self.gram.mul_vec(v);
        av.iter()
            .zip(self.gram.diagonal())
            .all(|(a, d)| (a - d).is_even())
    }

    /// A characteristic vector with coordinates in `{0, 1}`.
    pub fn characteristic_vector(&self) -> Vec<BigInt> {
        let bits = intmatrix::solve_mod2(&self.gram, &self.gram.diagonal())
            .expect("the diagonal of a symmetric matrix is in its image mod 2");
        bits.into_iter().map(BigInt::from).collect()
    }

    /// Splits off `<u>` for a vector with `u.u = +-1` and returns the
    /// orthogonal complement together with the basis (as rows) realizing it.
    /// The presented linking form is unchanged; when `u` is characteristic
    /// the complement is even.
    pub fn blow_down(&self, u: &[BigInt]) -> Result<(GramPairing, IntMatrix)> {
        self.check_len(u)?;
        let eps = self.square(u);
        if !eps.abs().is_one() {
            return Err(FormError::NotUnitSquare(eps));
        }
        let n = self.rank();
        let au = self.gram.mul_vec(u);
        // rows e_i - eps (e_i.u) u span the complement
        let mut span = IntMatrix::identity(n);
        for i in 0..n {
            let coeff = &eps * &au[i];
            for j in 0..n {
                let x = &span[(i, j)] - &coeff * &u[j];
                span[(i, j)] = x;
            }
        }
        let (h, _) = hermite_normal_form(&span);
        let rows: Vec<Vec<BigInt>> = h
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        debug_assert_eq!(rows.len(), n - 1);
        let basis = if rows.is_empty() {
            IntMatrix::zeros(0, n)
        } else {
            IntMatrix::from_rows(rows)?
        };
        let gram = &(&basis * &self.gram) * &basis.transpose();
        Ok((GramPairing::new(gram)?, basis))
    }

    /// The linking form `-A^{-1} mod 1` on the cokernel, read off along the
    /// generators of a Smith decomposition.
    pub fn presented_linking_form(&self) -> FiniteLinkingForm {
        let snf = smith_normal_form(&self.gram);
        let factors = snf.invariant_factors();
        let idx: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] > BigInt::one()).collect();
        let gens: Vec<Vec<BigInt>> = idx.iter().map(|&i| snf.u_inv.column(i)).collect();
        // columns of A^{-1} g_j
        let mut rhs = IntMatrix::zeros(self.rank(), gens.len());
        for (j, g) in gens.iter().enumerate() {
            for (i, x) in g.iter().enumerate() {
                rhs[(i, j)] = x.clone();
            }
        }
        let sol = intmatrix::solve_rational(&self.gram, &rhs).expect("gram is nonsingular");
        let pairing = gens
            .iter()
            .map(|gi| {
                (0..gens.len())
                    .map(|j| {
                        let mut acc = BigRational::zero();
                        for (r, x) in gi.iter().enumerate() {
                            if !x.is_zero() {
                                acc += &sol[(r, j)] * BigRational::from_integer(x.clone());
                            }
                        }
                        frac_mod1(&-acc)
                    })
                    .collect()
            })
            .collect();
        FiniteLinkingForm {
            invariant_factors: idx.iter().map(|&i| factors[i].clone()).collect(),
            pairing,
        }
    }

    /// The same linking matrix computed without inverting the Gram matrix:
    /// with `U A V = D`, the vectors `xi_i = V e_i` satisfy `A xi_i = d_i g_i`,
    /// so the pairing of `g_i, g_j` is `-xi_i^T A xi_j / (d_i d_j)`.
    pub fn linking_matrix_from_transform(&self) -> Vec<Vec<BigRational>> {
        let snf = smith_normal_form(&self.gram);
        let factors = snf.invariant_factors();
        let idx: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] > BigInt::one()).collect();
        idx.iter()
            .map(|&i| {
                let xi = snf.v.column(i);
                idx.iter()
                    .map(|&j| {
                        let xj = snf.v.column(j);
                        let num = -self.pair(&xi, &xj);
                        frac_mod1(&BigRational::new(num, &factors[i] * &factors[j]))
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether this pairing presents a form isomorphic to `(q/p)`.
    pub fn presents(&self, target: &CyclicLinkingForm) -> bool {
        self.presented_linking_form()
            .as_cyclic()
            .is_some_and(|c| c.is_equivalent(target))
    }

    /// A vector `v` with `v.v` negative and odd, if one exists.
    ///
    /// Preference: the basis vector with the negative odd diagonal entry of
    /// least magnitude; else a negative vector from a diagonalization if its
    /// square is odd; else `w + k u` for the first odd-diagonal basis vector
    /// `w`, a negative vector `u` oriented against `w`, and least `k >= 1`.
    pub fn negative_odd_vector(&self) -> Option<Vec<BigInt>> {
        let n = self.rank();
        let diag = self.gram.diagonal();
        let unit = |i: usize| -> Vec<BigInt> {
            (0..n).map(|j| BigInt::from((i == j) as u8)).collect()
        };
        if let Some(i) = (0..n)
            .filter(|&i| diag[i].is_negative() && diag[i].is_odd())
            .min_by(|&a, &b| diag[a].abs().cmp(&diag[b].abs()).then(a.cmp(&b)))
        {
            return Some(unit(i));
        }
        let terms = intmatrix::symmetric_diagonalization(&self.gram).ok()?;
        let neg = terms.iter().find(|t| t.square.is_negative())?;
        let mut u = clear_denominators(&neg.vector);
        if self.square(&u).is_odd() {
            return Some(u);
        }
        let w_idx = (0..n).find(|&i| diag[i].is_odd())?;
        let w = unit(w_idx);
        if self.pair(&u, &w).is_positive() {
            u = u.iter().map(|x| -x).collect();
        }
        // (w + k u)^2 = w.w + 2k w.u + k^2 u.u is odd for every k, and
        // eventually negative since u.u < 0
        let mut k = BigInt::one();
        loop {
            let v: Vec<BigInt> = w.iter().zip(&u).map(|(a, b)| a + &k * b).collect();
            if self.square(&v).is_negative() {
                return Some(v);
            }
            k += 1;
        }
    }
}

/// The cyclic linking form `(q/p)`: `Z/p` with `lambda(1,1) = q/p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicLinkingForm {
    p: BigInt,
    q: BigInt,
}

impl fmt::Display for CyclicLinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})", self.q, self.p)
    }
}

impl CyclicLinkingForm {
    /// `p >= 1` and `gcd(p, q) = 1`; `q` is reduced into `[0, p)`.
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if !p.is_positive() {
            return Err(FormError::InvalidOrder(p));
        }
        if !numtheory::gcd(&p, &q).is_one() {
            return Err(FormError::NotCoprime { p, q });
        }
        let q = q.mod_floor(&p);
        Ok(CyclicLinkingForm { p, q })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self> {
        Self::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.q.clone(), self.p.clone())
    }

    pub fn negate(&self) -> Self {
        CyclicLinkingForm {
            q: (-&self.q).mod_floor(&self.p),
            p: self.p.clone(),
        }
    }

    /// Isomorphic iff same order and `q2 = u^2 q1 (mod p)` for a unit `u`.
    pub fn is_equivalent(&self, other: &CyclicLinkingForm) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.p.is_one() {
            return true;
        }
        let inv = numtheory::mod_inverse(&self.q, &self.p).expect("q is a unit");
        let ratio = (&other.q * inv).mod_floor(&self.p);
        numtheory::is_quadratic_residue(&ratio, &self.p).expect("ratio is a unit")
    }

    /// Least `q' > 0` (or `0` when `p = 1`) with `(q'/p)` equivalent to this form.
    pub fn canonical_q(&self) -> BigInt {
        if self.p.is_one() {
            return BigInt::zero();
        }
        let mut c = BigInt::one();
        loop {
            if numtheory::gcd(&c, &self.p).is_one() {
                let cand = CyclicLinkingForm {
                    p: self.p.clone(),
                    q: c.clone(),
                };
                if cand.is_equivalent(self) {
                    return c;
                }
            }
            c += 1;
        }
    }

    pub fn to_linking_form(&self) -> FiniteLinkingForm {
        if self.p.is_one() {
            return FiniteLinkingForm {
                invariant_factors: vec![],
                pairing: vec![],
            };
        }
        FiniteLinkingForm {
            invariant_factors: vec![self.p.clone()],
            pairing: vec![vec![self.value()]],
        }
    }
}

pub fn cyclic_equivalent(a: &CyclicLinkingForm, b: &CyclicLinkingForm) -> bool {
    a.is_equivalent(b)
}

/// A finite linking form in Smith coordinates: `Z/d_1 + ... + Z/d_k` with
/// all `d_i > 1`, `d_i | d_{i+1}`, and the pairing of the generators in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteLinkingForm {
    invariant_factors: Vec<BigInt>,
    pairing: Vec<Vec<BigRational>>,
}

impl FiniteLinkingForm {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn pairing(&self) -> &[Vec<BigRational>] {
        &self.pairing
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// `Some((q/p))` when the group is cyclic (the trivial group gives `(0/1)`).
    pub fn as_cyclic(&self) -> Option<CyclicLinkingForm> {
        match self.invariant_factors.as_slice() {
            [] => Some(CyclicLinkingForm {
                p: BigInt::one(),
                q: BigInt::zero(),
            }),
            [d] => {
                let q = (&self.pairing[0][0] * BigRational::from_integer(d.clone())).to_integer();
                CyclicLinkingForm::new(d.clone(), q).ok()
            }
            _ => None,
        }
    }

    fn pair_coeffs(&self, x: &[u64], y: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += &self.pairing[i][j] * BigRational::from_integer(BigInt::from(xi * yj));
            }
        }
        frac_mod1(&acc)
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let dims: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("bounded order"))
            .collect();
        let mut out = vec![vec![]];
        for d in dims {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Isometry test. Cyclic groups use the unit-square criterion; otherwise
    /// groups with at most two invariant factors and bounded order are
    /// searched exhaustively for generator images.
    pub fn is_isomorphic(&self, other: &FiniteLinkingForm) -> Result<bool> {
        if self.invariant_factors != other.invariant_factors {
            return Ok(false);
        }
        if let (Some(a), Some(b)) = (self.as_cyclic(), other.as_cyclic()) {
            return Ok(a.is_equivalent(&b));
        }
        let k = self.invariant_factors.len();
        let order = self.order();
        if k > 2 || order > BigInt::from(ISOMORPHISM_ORDER_LIMIT) {
            return Err(FormError::Unsupported(format!(
                "isomorphism of linking forms with {k} invariant factors and order {order}"
            )));
        }
        let dims: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("bounded order"))
            .collect();
        let elems = other.elements();
        let dims_o = dims.clone();
        let killed_by = |x: &[u64], d: u64| x.iter().zip(&dims_o).all(|(c, m)| (c * d).is_multiple_of(*m));
        let cands: Vec<Vec<&Vec<u64>>> = (0..2)
            .map(|i| {
                elems
                    .iter()
                    .filter(|x| killed_by(x, dims[i]) && other.pair_coeffs(x, x) == self.pairing[i][i])
                    .collect()
            })
            .collect();
        for x1 in &cands[0] {
            for x2 in &cands[1] {
                if other.pair_coeffs(x1, x2) != self.pairing[0][1] {
                    continue;
                }
                let mut seen = HashSet::new();
                for a in 0..dims[0] {
                    for b in 0..dims[1] {
                        let v: Vec<u64> = (0..2)
                            .map(|t| (a * x1[t] + b * x2[t]) % dims[t])
                            .collect();
                        seen.insert(v);
                    }
                }
                if seen.len() as u64 == dims[0] * dims[1] {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn pairing_matrix(&self) -> RatMatrix {
        let k = self.invariant_factors.len();
        let mut m = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self.pairing[i][j].clone();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[i64]]) -> GramPairing {
        GramPairing::from_i64(rows).unwrap()
    }

    fn c(p: i64, q: i64) -> CyclicLinkingForm {
        CyclicLinkingForm::from_i64(p, q).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_one_presents_minus_inverse() {
        let lf = g(&[&[5]]).presented_linking_form();
        assert_eq!(lf.as_cyclic().unwrap(), c(5, 4));
        assert!(g(&[&[5]]).presents(&c(5, -1)));
        assert!(g(&[&[-5]]).presents(&c(5, 1)));
        assert!(g(&[&[1]]).presents(&c(1, 0)));
    }

    #[test]
    fn rank_two_example() {
        let a = g(&[&[-15, 10], &[10, -7]]);
        assert_eq!(a.determinant(), BigInt::from(5));
        assert!(a.presents(&c(5, 2)));
        assert!(!a.presents(&c(5, 1)));
        assert_eq!(a.parity(), Parity::Odd);
        assert_eq!(a.negative_odd_vector(), Some(v(&[0, 1])));
    }

    #[test]
    fn equivalence_is_square_class() {
        assert!(c(5, 1).is_equivalent(&c(5, 4)));
        assert!(!c(5, 1).is_equivalent(&c(5, 2)));
        assert!(c(7, 1).is_equivalent(&c(7, 2)));
        assert!(!c(7, 1).is_equivalent(&c(7, 3)));
        assert!(c(8, 1).is_equivalent(&c(8, 1)));
        assert!(!c(8, 1).is_equivalent(&c(8, 3)));
        assert!(!c(8, 1).is_equivalent(&c(8, 5)));
        assert!(!c(5, 1).is_equivalent(&c(7, 1)));
        assert_eq!(c(5, 4).canonical_q(), BigInt::from(1));
        assert_eq!(c(7, 3).canonical_q(), BigInt::from(3));
        assert_eq!(c(1, 0).canonical_q(), BigInt::from(0));
    }

    #[test]
    fn cyclic_constructor_rejects_bad_input() {
        assert!(matches!(
            CyclicLinkingForm::from_i64(6, 4),
            Err(FormError::NotCoprime { .. })
        ));
        assert!(matches!(
            CyclicLinkingForm::from_i64(0, 1),
            Err(FormError::InvalidOrder(_))
        ));
        assert_eq!(c(5, -1).q(), &BigInt::from(4));
        assert_eq!(c(1, 7).q(), &BigInt::from(0));
    }

    #[test]
    fn gram_constructor_rejects_bad_input() {
        assert!(matches!(
            GramPairing::from_i64(&[[1, 2], [2, 4]]),
            Err(FormError::Singular)
        ));
        assert!(matches!(
            GramPairing::from_i64(&[[1, 2], [0, 4]]),
            Err(FormError::Matrix(MatrixError::NotSymmetric))
        ));
    }

    #[test]
    fn characteristic_vectors() {
        let h = g(&[&[0, 1], &[1, 0]]);
        assert_eq!(h.characteristic_vector(), v(&[0, 0]));
        assert!(h.is_characteristic(&v(&[2, -4])));
        assert!(!h.is_characteristic(&v(&[1, 0])));
        let a = g(&[&[-15, 10], &[10, -7]]);
        let w = a.characteristic_vector();
        assert!(a.is_characteristic(&w));
        assert_eq!(w, v(&[1, 1]));
    }

    #[test]
    fn blow_down_preserves_form_and_evens_out() {
        let b = g(&[&[1, 0], &[0, 5]]);
        let (down, basis) = b.blow_down(&v(&[1, 0])).unwrap();
        assert_eq!(down.gram(), &IntMatrix::from_i64(&[[5]]));
        assert_eq!(basis.rows(), 1);
        let t = g(&[&[-1, 0, 0], &[0, 2, 1], &[0, 1, 2]]);
        let (down, _) = t.blow_down(&v(&[1, 0, 0])).unwrap();
        assert!(down.presents(&t.presented_linking_form().as_cyclic().unwrap()));
        assert_eq!(down.determinant().abs(), BigInt::from(3));
        // (1,0,0) is characteristic, so the complement is even
        assert!(t.is_characteristic(&v(&[1, 0, 0])));
        assert_eq!(down.parity(), Parity::Even);
        assert!(matches!(
            t.blow_down(&v(&[0, 1, 0])),
            Err(FormError::NotUnitSquare(_))
        ));
    }

    #[test]
    fn transform_route_matches_inverse_route() {
        for rows in [
            vec![vec![-15i64, 10], vec![10, -7]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![2, 0], vec![0, 6]],
            vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]],
        ] {
            let a = GramPairing::from_i64(&rows).unwrap();
            assert_eq!(
                a.presented_linking_form().pairing().to_vec(),
                a.linking_matrix_from_transform()
            );
        }
    }

    #[test]
    fn non_cyclic_isomorphism() {
        let a = g(&[&[2, 0], &[0, 6]]).presented_linking_form();
        let b = g(&[&[-2, 0], &[0, -6]]).presented_linking_form();
        assert_eq!(a.invariant_factors(), &[BigInt::from(2), BigInt::from(6)]);
        assert!(a.is_isomorphic(&a).unwrap());
        // -1/2 = 1/2 on Z/2, but -1/6 is not 1/6 up to squares of units
        assert!(!a.is_isomorphic(&b).unwrap());
        let h = g(&[&[0, 3], &[3, 0]]).presented_linking_form();
        let d = g(&[&[3, 0], &[0, -3]]).presented_linking_form();
        assert!(h.is_isomorphic(&d).unwrap());
    }

    #[test]
    fn negative_odd_vector_fallbacks() {
        // no negative diagonal at all
        let a = g(&[&[1, 2], &[2, 1]]);
        let u = a.negative_odd_vector().unwrap();
        let s = a.square(&u);
        assert!(s.is_negative() && s.is_odd());
        // negative-definite even part plus an odd positive vector
        let b = g(&[&[-2, 0], &[0, 1]]);
        let u = b.negative_odd_vector().unwrap();
        let s = b.square(&u);
        assert!(s.is_negative() && s.is_odd());
        assert!(g(&[&[2, 1], &[1, 2]]).negative_odd_vector().is_none());
    }
}
