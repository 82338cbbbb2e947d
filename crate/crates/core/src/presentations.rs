//! Constructions of small intersection pairings presenting `(q/p)`.
//!
//! Every construction returns a [`PresentationCertificate`] whose `verified`
//! flag is computed by the linking-form verifier, never assumed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::forms::{CyclicLinkingForm, FormError, GramPairing, Parity};
use crate::intmatrix::{self, Definiteness, IntMatrix};
use crate::numtheory::{self, NumberTheoryError, DEFAULT_CEILING};

/// Largest rank the exhaustive definite search accepts.
pub const SEARCH_RANK_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error("{what}: search ceiling of {ceiling} steps exceeded")]
    CeilingExceeded { what: &'static str, ceiling: u64 },
    #[error("max rank {requested} exceeds the cap of {cap}")]
    RankCap { requested: usize, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no {0} found within the search space")]
    Exhausted(&'static str),
}

pub type Result<T> = std::result::Result<T, PresentationError>;

/// Bounds on the searches; each counts candidate steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub ceiling: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            ceiling: DEFAULT_CEILING,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Rank1,
    Rank2BruteForce,
    Rank2Dirichlet,
    Even,
    Definite,
    Plumbing,
    Search,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Rank1 => "rank1",
            Construction::Rank2BruteForce => "rank2",
            Construction::Rank2Dirichlet => "rank2-constructive",
            Construction::Even => "even",
            Construction::Definite => "definite",
            Construction::Plumbing => "plumbing",
            Construction::Search => "search",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationCertificate {
    pub target: CyclicLinkingForm,
    pub gram: GramPairing,
    pub construction: Construction,
    /// Set only when the verifier confirms the form and `|det| = p`.
    pub verified: bool,
    pub trace: Vec<String>,
    /// The rank-2 pairing a multi-step construction started from, if any.
    pub seed: Option<GramPairing>,
}

impl PresentationCertificate {
    pub fn new(
        target: CyclicLinkingForm,
        gram: GramPairing,
        construction: Construction,
        trace: Vec<String>,
    ) -> Self {
        let verified = gram.determinant().abs() == *target.p() && gram.presents(&target);
        PresentationCertificate {
            target,
            gram,
            construction,
            verified,
            trace,
            seed: None,
        }
    }

    fn with_seed(mut self, seed: GramPairing) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }
}

fn target(p: &BigInt, q: &BigInt) -> Result<CyclicLinkingForm> {
    Ok(CyclicLinkingForm::new(p.clone(), q.clone())?)
}

fn trivial(t: CyclicLinkingForm, c: Construction) -> PresentationCertificate {
    PresentationCertificate::new(
        t,
        GramPairing::empty(),
        c,
        vec!["p = 1: the trivial form is presented by the empty pairing".into()],
    )
}

fn gram2(a: BigInt, b: BigInt, c: BigInt) -> GramPairing {
    let m = IntMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]]).expect("2x2");
    GramPairing::new(m).expect("rank-2 shape is nonsingular")
}

// ---------------------------------------------------------------- rank 1

/// `[p]` when `-q` is a square mod `p`, `[-p]` when `q` is, else `None`.
pub fn rank1_presentation(p: &BigInt, q: &BigInt) -> Result<Option<PresentationCertificate>> {
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(Some(trivial(t, Construction::Rank1)));
    }
    let minus_q = (-t.q()).mod_floor(p);
    let (entry, why) = if numtheory::is_quadratic_residue(&minus_q, p)? {
        (p.clone(), format!("-q = {minus_q} is a square mod {p}: [p] presents (-1/p)"))
    } else if numtheory::is_quadratic_residue(t.q(), p)? {
        (-p, format!("q = {} is a square mod {p}: [-p] presents (1/p)", t.q()))
    } else {
        return Ok(None);
    };
    let gram = GramPairing::new(IntMatrix::diagonal_matrix(&[entry]))?;
    Ok(Some(PresentationCertificate::new(
        t,
        gram,
        Construction::Rank1,
        vec![why],
    )))
}

// ---------------------------------------------------------------- rank 2

/// Whether `(q/p)` has a presentation `[[-dp, bp], [bp, -q']]` with
/// `dq' - pb^2 = eps`, `q' = eps q (mod p)` odd and positive.
///
/// Such a `q'` needs `-eps p` to be a square mod `q'`; the Jacobi symbol
/// `(-eps p / c)` depends only on `c mod 4p`, and the progressions
/// `c + 4pZ` contain primes, so it suffices to test the four residue
/// classes mod `4p` lying over `eps q mod p`.
pub fn rank2_feasible(p: &BigInt, q: &BigInt) -> bool {
    if p.is_one() {
        return true;
    }
    let four_p = p * 4;
    [1i32, -1].iter().any(|&eps| {
        let eq = q * eps;
        let a = -(p * eps);
        (0i32..4).any(|k| {
            let c = (&eq + p * k).mod_floor(&four_p);
            c.is_odd() && numtheory::gcd(&c, p).is_one() && numtheory::jacobi(&a, &c) == 1
        })
    })
}

// Direct search: q' over the odd positive members of +-q + pZ in increasing
// order; for each, the least b in [0, q') solving d q' - p b^2 = eps.
fn rank2_search(
    p: &BigInt,
    q: &BigInt,
    limits: &SearchLimits,
) -> Result<(GramPairing, BigInt, BigInt, BigInt, i32)> {
    let plus = q.mod_floor(p);
    let minus = (-q).mod_floor(p);
    let mut steps = 0u64;
    let mut qp = BigInt::one();
    loop {
        let r = qp.mod_floor(p);
        let signs: Vec<i32> = [(1, &plus), (-1, &minus)]
            .iter()
            .filter(|(_, target)| r == **target)
            .map(|(e, _)| *e)
            .collect();
        if !signs.is_empty() {
            steps += 1;
            if steps > limits.ceiling {
                return Err(PresentationError::CeilingExceeded {
                    what: "rank-2 search",
                    ceiling: limits.ceiling,
                });
            }
            // least b in [0, q') with p b^2 = -eps (mod q'), i.e. the least
            // square root of -eps p^{-1}; ties go to eps = +1
            let p_inv = numtheory::mod_inverse(p, &qp).expect("q' is prime to p");
            let best = signs
                .iter()
                .filter_map(|&eps| {
                    let r = (-&p_inv * eps).mod_floor(&qp);
                    numtheory::sqrt_mod(&r, &qp).ok().map(|b| (b, eps))
                })
                .min_by(|x, y| x.0.cmp(&y.0));
            if let Some((b, eps)) = best {
                let d = (p * &b * &b + eps) / &qp;
                let gram = gram2(-(&d * p), &b * p, -qp.clone());
                return Ok((gram, qp, b, d, eps));
            }
        }
        qp += 2;
    }
}

/// Rank-2 odd presentation by direct `(q', b)` search, minimal `q'` first.
///
/// When no pairing of this shape presents `(q/p)` exactly (see
/// [`rank2_feasible`]), the shape for `(-q/p)` is found and negated; the
/// trace records the orientation reversal and the diagonal is then positive.
pub fn rank2_presentation(p: &BigInt, q: &BigInt) -> Result<PresentationCertificate> {
    rank2_presentation_with(p, q, &SearchLimits::default())
}

pub fn rank2_presentation_with(
    p: &BigInt,
    q: &BigInt,
    limits: &SearchLimits,
) -> Result<PresentationCertificate> {
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(trivial(t, Construction::Rank2BruteForce));
    }
    let qn = t.q().clone();
    let mut trace = Vec::new();
    let (gram, qp, b, d, eps, reversed) = if rank2_feasible(p, &qn) {
        let (g, qp, b, d, e) = rank2_search(p, &qn, limits)?;
        (g, qp, b, d, e, false)
    } else if rank2_feasible(p, &-&qn) {
        trace.push(format!(
            "no odd q' = +-q (mod {p}) admits dq' - pb^2 = +-1 for this orientation; \
             solving for (-q/p) and reversing orientation"
        ));
        let (g, qp, b, d, e) = rank2_search(p, &-&qn, limits)?;
        (g.negate(), qp, b, d, e, true)
    } else {
        return Err(PresentationError::Exhausted("rank-2 presentation of this shape"));
    };
    trace.insert(
        0,
        format!("q' = {qp}, b = {b}, d = {d}: d*q' - p*b^2 = {eps}"),
    );
    if reversed {
        trace.push(format!("gram = -[[-dp, bp], [bp, -q']] = {gram}"));
    } else {
        trace.push(format!("gram = [[-dp, bp], [bp, -q']] = {gram}"));
    }
    Ok(PresentationCertificate::new(
        t,
        gram,
        Construction::Rank2BruteForce,
        trace,
    ))
}

/// Rank-2 presentation through a prime `q' = 3 (mod 4)` in `q0 + 4pZ`.
pub fn rank2_constructive(p: &BigInt, q: &BigInt) -> Result<PresentationCertificate> {
    rank2_constructive_with(p, q, &SearchLimits::default())
}

pub fn rank2_constructive_with(
    p: &BigInt,
    q: &BigInt,
    limits: &SearchLimits,
) -> Result<PresentationCertificate> {
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(trivial(t, Construction::Rank2Dirichlet));
    }
    let qn = t.q().clone();
    let four = BigInt::from(4);
    let four_p = p * 4;
    let candidates = [qn.clone(), -&qn, p + &qn, p * 3 + &qn];
    let mut fallback: Option<(GramPairing, Vec<String>)> = None;
    for q0 in candidates.iter().filter(|c| c.mod_floor(&four) == BigInt::from(3)) {
        let start = q0.mod_floor(&four_p);
        let qp = numtheory::find_prime_in_progression(&start, &four_p, limits.ceiling)?;
        let p_inv = numtheory::mod_inverse(p, &qp).expect("q' is a prime not dividing p");
        // q' = 3 mod 4, so exactly one of +-p^{-1} is a square mod q'
        let (eps, root) = [1i32, -1]
            .iter()
            .find_map(|&eps| {
                let r = (-&p_inv * eps).mod_floor(&qp);
                numtheory::sqrt_mod(&r, &qp).ok().map(|b| (eps, b))
            })
            .expect("one of +-p^{-1} is a square mod a prime = 3 mod 4");
        let b = root;
        let d = (p * &b * &b + eps) / &qp;
        let gram = gram2(-(&d * p), &b * p, -qp.clone());
        let trace = vec![
            format!("q0 = {q0} = 3 (mod 4); least prime in {start} + {four_p}n is q' = {qp}"),
            format!("b^2 = {} * p^-1 (mod q') gives b = {b}; d = (p*b^2 + {eps})/q' = {d}", -eps),
            format!("gram = [[-dp, bp], [bp, -q']] = {gram}"),
        ];
        if gram.presents(&t) {
            return Ok(PresentationCertificate::new(
                t,
                gram,
                Construction::Rank2Dirichlet,
                trace,
            ));
        }
        if fallback.is_none() {
            fallback = Some((gram, trace));
        }
    }
    let (gram, mut trace) = fallback.expect("some candidate is 3 mod 4");
    trace.push("the pairing presents (-q/p); orientation reversed".into());
    let gram = gram.negate();
    trace.push(format!("gram = {gram}"));
    Ok(PresentationCertificate::new(
        t,
        gram,
        Construction::Rank2Dirichlet,
        trace,
    ))
}

// ---------------------------------------------------------------- even

fn hyperbolic() -> GramPairing {
    GramPairing::from_i64(&[[0, 1], [1, 0]]).expect("H is unimodular")
}

fn units(eps: i64, n: usize) -> GramPairing {
    GramPairing::new(IntMatrix::diagonal_matrix(&vec![BigInt::from(eps); n])).expect("unimodular")
}

fn two_odd_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut a = BigInt::one();
    while &a * &a * 2 <= *n {
        let rest = n - &a * &a;
        let r = rest.sqrt();
        if &r * &r == rest && r.is_odd() {
            return Some((a, r));
        }
        a += 2;
    }
    None
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

// A characteristic vector `x` of a unimodular summand `X` with
// `s + x.x = +-1`, described for the trace.
struct Completion {
    summand: GramPairing,
    vector: Vec<BigInt>,
    label: String,
}

fn complete_hyperbolic(s: &BigInt) -> Option<Completion> {
    let eight = BigInt::from(8);
    [1i64, -1].iter().find_map(|&t| {
        let diff = BigInt::from(t) - s;
        diff.mod_floor(&eight).is_zero().then(|| {
            let l = diff / &eight;
            Completion {
                summand: hyperbolic(),
                vector: vec![BigInt::from(2), &l * 2],
                label: format!("H with w = 2e1 + {}e2, (v+w)^2 = {t}", &l * 2),
            }
        })
    })
}

fn complete_two_units(s: &BigInt) -> Option<Completion> {
    for t in [1i64, -1] {
        for eps in [-1i64, 1] {
            let n = (BigInt::from(t) - s) * eps;
            if n.mod_floor(&BigInt::from(8)) != BigInt::from(2) || !n.is_positive() {
                continue;
            }
            if let Some((a, b)) = two_odd_squares(&n) {
                return Some(Completion {
                    summand: units(eps, 2),
                    vector: vec![a.clone(), b.clone()],
                    label: format!("2<{eps}> with w = ({a}, {b}), (v+w)^2 = {t}"),
                });
            }
        }
    }
    None
}

fn complete_hyperbolic_unit(s: &BigInt) -> Option<Completion> {
    let eight = BigInt::from(8);
    for t in [1i64, -1] {
        for eps in [1i64, -1] {
            let diff = BigInt::from(t - eps) - s;
            if diff.mod_floor(&eight).is_zero() {
                let l = diff / &eight;
                return Some(Completion {
                    summand: hyperbolic().direct_sum(&units(eps, 1)),
                    vector: vec![BigInt::from(2), &l * 2, BigInt::one()],
                    label: format!(
                        "H + <{eps}> with w = 2e1 + {}e2 + e3, (v+w)^2 = {t}",
                        &l * 2
                    ),
                });
            }
        }
    }
    None
}

fn complete_three_units(s: &BigInt) -> Option<Completion> {
    for t in [1i64, -1] {
        for eps in [-1i64, 1] {
            let n = (BigInt::from(t) - s) * eps;
            if n.mod_floor(&BigInt::from(8)) != BigInt::from(3) || !n.is_positive() {
                continue;
            }
            // n = 3 (mod 8) forces all three squares odd
            let (a, b, c) = numtheory::three_squares(&n).ok()?;
            return Some(Completion {
                summand: units(eps, 3),
                vector: vec![a.clone(), b.clone(), c.clone()],
                label: format!("3<{eps}> with w = ({a}, {b}, {c}), (v+w)^2 = {t}"),
            });
        }
    }
    None
}

// Characteristic vectors of `seed`: each class mod 2, translated by 2x for
// x in a small box, ordered by box radius.
fn characteristic_candidates(seed: &GramPairing) -> Vec<Vec<BigInt>> {
    let r = seed.rank();
    let v0 = seed.characteristic_vector();
    let kernel = intmatrix::kernel_mod2(seed.gram()).expect("square");
    let mut classes = Vec::new();
    for mask in 0u32..(1 << kernel.len()) {
        let mut v = v0.clone();
        for (k, kv) in kernel.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (x, bit) in v.iter_mut().zip(kv) {
                    *x = (&*x + BigInt::from(*bit)).mod_floor(&BigInt::from(2));
                }
            }
        }
        classes.push(v);
    }
    const RADIUS: i64 = 2;
    let mut shifts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        shifts = shifts
            .into_iter()
            .flat_map(|s| {
                (-RADIUS..=RADIUS).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    shifts.sort_by_key(|s| s.iter().map(|x| x.abs()).max().unwrap_or(0));
    let mut out = Vec::new();
    for shift in &shifts {
        for class in &classes {
            out.push(
                class
                    .iter()
                    .zip(shift)
                    .map(|(c, x)| c + BigInt::from(2 * x))
                    .collect(),
            );
        }
    }
    out
}

fn even_from_seed(seed: &GramPairing) -> Option<(GramPairing, Vec<String>)> {
    let r = seed.rank();
    let candidates = characteristic_candidates(seed);
    type Completer = fn(&BigInt) -> Option<Completion>;
    let passes: [&[Completer]; 2] = [
        &[complete_hyperbolic, complete_two_units],
        &[complete_hyperbolic_unit, complete_three_units],
    ];
    for (extra, pass) in passes.iter().enumerate() {
        if r + extra + 1 > 4 {
            break;
        }
        for v in &candidates {
            let s = seed.square(v);
            for complete in pass.iter() {
                let Some(c) = complete(&s) else { continue };
                let big = seed.direct_sum(&c.summand);
                let u: Vec<BigInt> = v.iter().chain(&c.vector).cloned().collect();
                debug_assert!(big.is_characteristic(&u));
                let Ok((down, _)) = big.blow_down(&u) else { continue };
                if down.parity() != Parity::Even {
                    continue;
                }
                let trace = vec![
                    format!("characteristic v = {} with v.v = {s}", fmt_vec(v)),
                    format!("blow up by {}", c.label),
                    format!("blow down characteristic u = {}", fmt_vec(&u)),
                    format!("even complement = {down}"),
                ];
                return Some((down, trace));
            }
        }
    }
    None
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Even pairing of rank at most 4 presenting `(q/p)`.
///
/// Starting from an odd rank-2 pairing `V` with characteristic `v`, add a
/// unimodular summand `X` carrying a characteristic `w` with
/// `(v + w)^2 = +-1` and blow down `v + w`; the complement of a
/// characteristic vector is even. `X` is one of `H`, `2<e>`, `H + <e>`,
/// `3<e>`, chosen by `v.v mod 8`, lowest resulting rank first.
pub fn even_presentation(p: &BigInt, q: &BigInt) -> Result<PresentationCertificate> {
    even_presentation_with(p, q, &SearchLimits::default())
}

pub fn even_presentation_with(
    p: &BigInt,
    q: &BigInt,
    limits: &SearchLimits,
) -> Result<PresentationCertificate> {
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(trivial(t, Construction::Even));
    }
    type SeedFn<'a> = Box<dyn Fn() -> Option<GramPairing> + 'a>;
    let seeds: [(&str, SeedFn); 4] = [
        (
            "rank-2 search",
            Box::new(|| rank2_presentation_with(p, q, limits).ok().map(|c| c.gram)),
        ),
        (
            "rank-2 prime construction",
            Box::new(|| rank2_constructive_with(p, q, limits).ok().map(|c| c.gram)),
        ),
        (
            "negated rank-2 search for -q",
            Box::new(|| {
                rank2_presentation_with(p, &-q, limits)
                    .ok()
                    .map(|c| c.gram.negate())
            }),
        ),
        (
            "rank 1",
            Box::new(|| rank1_presentation(p, q).ok().flatten().map(|c| c.gram)),
        ),
    ];
    for (name, make) in seeds.iter() {
        let Some(seed) = make() else { continue };
        if !seed.presents(&t) {
            continue;
        }
        if let Some((gram, mut trace)) = even_from_seed(&seed) {
            trace.insert(0, format!("seed ({name}) = {seed}"));
            return Ok(PresentationCertificate::new(t, gram, Construction::Even, trace)
                .with_seed(seed));
        }
    }
    Err(PresentationError::Exhausted("even completion of rank <= 4"))
}

// ---------------------------------------------------------------- definite

/// One round: blow up by `3<+1>` and blow down an ordinary `(-1)`-vector
/// `2 v0 + (a1, a2, a3)` with `a1^2 + a2^2 + a3^2 = -4 v0.v0 - 1`.
fn definite_round(pairing: &GramPairing, trace: &mut Vec<String>) -> Result<GramPairing> {
    let v0 = pairing
        .negative_odd_vector()
        .ok_or(PresentationError::Exhausted("negative odd vector"))?;
    let u: Vec<BigInt> = v0.iter().map(|x| x * 2).collect();
    let n = -pairing.square(&u);
    let (a1, a2, a3) = numtheory::three_squares(&(&n - 1))?;
    let big = pairing.direct_sum(&units(1, 3));
    let v: Vec<BigInt> = u.iter().cloned().chain([a1, a2, a3]).collect();
    let (down, _) = big.blow_down(&v)?;
    trace.push(format!(
        "v0 = {} (v0.v0 = {}), n = {n}, n - 1 = sum of squares; blow down {} in P + 3<+1>: {down}",
        fmt_vec(&v0),
        pairing.square(&v0),
        fmt_vec(&v)
    ));
    Ok(down)
}

/// Positive-definite odd pairing of rank at most 6 presenting `(q/p)`.
///
/// Seeds are the rank-2 search result for `(q/p)` and the negation of the
/// one for `(-q/p)`; a positive-definite seed is returned as is, otherwise
/// an indefinite seed takes one round and a negative-definite seed two.
pub fn definite_presentation(p: &BigInt, q: &BigInt) -> Result<PresentationCertificate> {
    definite_presentation_with(p, q, &SearchLimits::default())
}

pub fn definite_presentation_with(
    p: &BigInt,
    q: &BigInt,
    limits: &SearchLimits,
) -> Result<PresentationCertificate> {
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(trivial(t, Construction::Definite));
    }
    let direct = rank2_presentation_with(p, q, limits)?.gram;
    let mirrored = rank2_presentation_with(p, &-q, limits)?.gram.negate();
    let rank_of = |d: Definiteness| match d {
        Definiteness::PositiveDefinite => 0,
        Definiteness::Indefinite => 1,
        _ => 2,
    };
    let seed = [direct, mirrored]
        .into_iter()
        .min_by_key(|g| rank_of(g.definiteness()))
        .expect("two seeds");
    let mut trace = vec![format!("seed = {seed} ({})", seed.definiteness())];
    let mut current = seed.clone();
    while current.definiteness() != Definiteness::PositiveDefinite {
        current = definite_round(&current, &mut trace)?;
    }
    Ok(PresentationCertificate::new(t, current, Construction::Definite, trace).with_seed(seed))
}

// ---------------------------------------------------------------- plumbing

/// Hirzebruch-Jung expansion `n/d = a1 - 1/(a2 - ...)` with all `a_i >= 2`.
pub fn hirzebruch_jung(num: &BigInt, den: &BigInt) -> Vec<BigInt> {
    let (mut num, mut den) = (num.clone(), den.clone());
    let mut out = Vec::new();
    while den.is_positive() {
        let a = num.div_ceil(&den);
        let next = &a * &den - &num;
        out.push(a);
        num = den;
        den = next;
    }
    out
}

/// Linear plumbing on the expansion of `p/(p-q)`: diagonal `-a_i`,
/// off-diagonal `1`, globally negated if that is what presents `(q/p)`.
pub fn plumbing_presentation(p: &BigInt, q: &BigInt) -> Result<PresentationCertificate> {
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(trivial(t, Construction::Plumbing));
    }
    let qn = t.q().clone();
    let coeffs = hirzebruch_jung(p, &(p - &qn));
    let n = coeffs.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, a) in coeffs.iter().enumerate() {
        m[(i, i)] = -a;
        if i + 1 < n {
            m[(i, i + 1)] = BigInt::one();
            m[(i + 1, i)] = BigInt::one();
        }
    }
    let mut gram = GramPairing::new(m)?;
    let mut trace = vec![format!(
        "{p}/{} = [{}]",
        p - &qn,
        coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    )];
    if gram.presents(&t) {
        trace.push("diagonal -a_i, off-diagonal 1".into());
    } else {
        gram = gram.negate();
        trace.push("diagonal -a_i, off-diagonal 1 presents (-q/p); sign flipped".into());
    }
    Ok(PresentationCertificate::new(t, gram, Construction::Plumbing, trace))
}

// ---------------------------------------------------------------- search

// Hermite constants bounding the diagonal of a Minkowski-reduced form:
// prod a_i <= LAMBDA[r] * det, as (numerator, denominator).
const LAMBDA: [(i64, i64); 5] = [(1, 1), (1, 1), (4, 3), (2, 1), (4, 1)];

fn ascending_tuples(r: usize, bound: i64) -> Vec<Vec<i64>> {
    fn go(r: usize, min: i64, bound: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        let left = (r - prefix.len()) as u32;
        let mut a = min;
        // remaining entries are all >= a
        while a.checked_pow(left).is_some_and(|x| x <= bound) {
            prefix.push(a);
            go(r, a, bound / a, prefix, out);
            prefix.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    go(r, 1, bound, &mut Vec::new(), &mut out);
    out
}

// 0, 1, -1, 2, -2, ..., up to |x| <= limit
fn signed_range(limit: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=limit {
        v.push(k);
        v.push(-k);
    }
    v
}

/// Least positive-definite presentation of rank `<= max_rank` in reduced
/// shape: rank first, then the ascending diagonal, then off-diagonal
/// entries in the order `0, 1, -1, 2, -2, ...` read row by row.
pub fn search_definite_presentation(
    p: &BigInt,
    q: &BigInt,
    max_rank: usize,
) -> Result<Option<PresentationCertificate>> {
    search_definite_presentation_with(p, q, max_rank, &SearchLimits::default())
}

pub fn search_definite_presentation_with(
    p: &BigInt,
    q: &BigInt,
    max_rank: usize,
    limits: &SearchLimits,
) -> Result<Option<PresentationCertificate>> {
    if max_rank > SEARCH_RANK_CAP {
        return Err(PresentationError::RankCap {
            requested: max_rank,
            cap: SEARCH_RANK_CAP,
        });
    }
    let t = target(p, q)?;
    if p.is_one() {
        return Ok(Some(trivial(t, Construction::Search)));
    }
    let det = p
        .to_i64()
        .filter(|&d| d < i64::MAX / 8)
        .ok_or_else(|| PresentationError::InvalidInput(format!("p = {p} too large to search")))?;
    let mut steps = 0u64;
    for (r, &(num, den)) in LAMBDA.iter().enumerate().take(max_rank + 1).skip(1) {
        let bound = det * num / den;
        let pairs: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .collect();
        for diag in ascending_tuples(r, bound) {
            let ranges: Vec<Vec<i64>> = pairs.iter().map(|&(i, _)| signed_range(diag[i] / 2)).collect();
            let mut idx = vec![0usize; pairs.len()];
            loop {
                steps += 1;
                if steps > limits.ceiling {
                    return Err(PresentationError::CeilingExceeded {
                        what: "definite search",
                        ceiling: limits.ceiling,
                    });
                }
                let mut m = IntMatrix::diagonal_matrix(&ints(&diag));
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    let x = BigInt::from(ranges[k][idx[k]]);
                    m[(i, j)] = x.clone();
                    m[(j, i)] = x;
                }
                if intmatrix::determinant(&m).expect("square") == *p
                    && intmatrix::definiteness(&m).expect("symmetric")
                        == Definiteness::PositiveDefinite
                {
                    let gram = GramPairing::new(m)?;
                    if gram.presents(&t) {
                        let trace = vec![format!(
                            "first reduced positive-definite match after {steps} candidates"
                        )];
                        return Ok(Some(PresentationCertificate::new(
                            t,
                            gram,
                            Construction::Search,
                            trace,
                        )));
                    }
                }
                // odometer, last pair fastest
                let mut exhausted = true;
                for k in (0..pairs.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < ranges[k].len() {
                        exhausted = false;
                        break;
                    }
                    idx[k] = 0;
                }
                if exhausted {
                    break;
                }
            }
        }
    }
    Ok(None)
}
