//! Embedding reports: upper bounds on how many copies of `CP2 # -CP2`,
//! `S2 x S2` and `CP2` a homology lens space with linking form `(q/p)`
//! needs in order to embed, each backed by a verified presentation.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::forms::CyclicLinkingForm;
use crate::presentations::{
    self, PresentationCertificate, PresentationError, Result, SearchLimits,
};

/// Statement the algebra relies on but does not compute.
pub const REALIZATION_ASSUMPTION: &str = "assumed: every nondegenerate pairing presenting the linking form of a \
     homology lens space is realized by a simply connected topological 4-manifold it bounds";

pub const FIVE_CP2_LABEL: &str = "literature claim, no algebraic witness";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub target: CyclicLinkingForm,
    /// Least second Betti number of a bounding pairing: 1 or 2 (0 when `p = 1`).
    pub coboundary_b2: usize,
    pub coboundary_witness: PresentationCertificate,
    /// Copies of `CP2 # -CP2`, from the rank-2 pairing.
    pub cp2_cp2bar_bound: usize,
    pub cp2_cp2bar_witness: PresentationCertificate,
    /// Copies of `S2 x S2`, from the even pairing.
    pub s2xs2_bound: usize,
    pub s2xs2_witness: PresentationCertificate,
    /// Copies of `CP2`: ranks of definite pairings for `(q/p)` and `(-q/p)`.
    pub cp2_bound: usize,
    pub cp2_witnesses: [PresentationCertificate; 2],
    /// Set when `p` is odd or `q = +-1 (mod p)`; informational only.
    pub five_cp2_flag: bool,
    pub assumptions: Vec<String>,
}

impl EmbeddingReport {
    pub fn certificates(&self) -> Vec<&PresentationCertificate> {
        vec![
            &self.coboundary_witness,
            &self.cp2_cp2bar_witness,
            &self.s2xs2_witness,
            &self.cp2_witnesses[0],
            &self.cp2_witnesses[1],
        ]
    }

    pub fn all_verified(&self) -> bool {
        self.certificates().iter().all(|c| c.verified)
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.target;
        let _ = writeln!(out, "embedding report for ({}/{})", t.q(), t.p());
        let rows: [(&str, String, String); 5] = [
            (
                "coboundary b2",
                self.coboundary_b2.to_string(),
                self.coboundary_witness.gram.to_string(),
            ),
            (
                "#n (CP2 # -CP2)",
                format!("n <= {}", self.cp2_cp2bar_bound),
                self.cp2_cp2bar_witness.gram.to_string(),
            ),
            (
                "#n S2xS2",
                format!("n <= {}", self.s2xs2_bound),
                self.s2xs2_witness.gram.to_string(),
            ),
            (
                "#n CP2",
                format!("n <= {}", self.cp2_bound),
                format!(
                    "{} (+) {}",
                    self.cp2_witnesses[0].gram, self.cp2_witnesses[1].gram
                ),
            ),
            (
                "#5 CP2 flag",
                self.five_cp2_flag.to_string(),
                format!("({FIVE_CP2_LABEL})"),
            ),
        ];
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
        for (name, value, witness) in &rows {
            let _ = writeln!(out, "  {name:<w0$}  {value:<w1$}  {witness}");
        }
        let _ = writeln!(out, "  all witnesses verified: {}", self.all_verified());
        for a in &self.assumptions {
            let _ = writeln!(out, "  {a}");
        }
        out
    }
}

/// Builds the report for `(q/p)`.
pub fn embedding_report(p: &BigInt, q: &BigInt) -> Result<EmbeddingReport> {
    embedding_report_with(p, q, &SearchLimits::default())
}

pub fn embedding_report_with(
    p: &BigInt,
    q: &BigInt,
    limits: &SearchLimits,
) -> Result<EmbeddingReport> {
    let target = CyclicLinkingForm::new(p.clone(), q.clone())
        .map_err(PresentationError::from)?;
    let rank2 = presentations::rank2_presentation_with(p, q, limits)?;
    let (coboundary_b2, coboundary_witness) = match presentations::rank1_presentation(p, q)? {
        Some(c) => (c.rank(), c),
        None => (rank2.rank(), rank2.clone()),
    };
    let even = presentations::even_presentation_with(p, q, limits)?;
    let plus = presentations::definite_presentation_with(p, q, limits)?;
    let minus = presentations::definite_presentation_with(p, &-q, limits)?;
    let qn = target.q();
    let five_cp2_flag =
        p.is_odd() || qn.is_one() || (qn + BigInt::one()).mod_floor(p) == BigInt::from(0);
    Ok(EmbeddingReport {
        coboundary_b2,
        coboundary_witness,
        cp2_cp2bar_bound: rank2.rank(),
        cp2_cp2bar_witness: rank2,
        s2xs2_bound: even.rank(),
        s2xs2_witness: even,
        cp2_bound: plus.rank() + minus.rank(),
        cp2_witnesses: [plus, minus],
        five_cp2_flag,
        assumptions: vec![REALIZATION_ASSUMPTION.to_string()],
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn report_five_two() {
        let r = embedding_report(&b(5), &b(2)).unwrap();
        assert_eq!(r.coboundary_b2, 2);
        assert!(r.s2xs2_bound <= 4);
        assert!(r.cp2_bound <= 8);
        assert!(r.five_cp2_flag);
        assert!(r.all_verified());
        assert!(r.to_text().contains("#n S2xS2"));
    }

    #[test]
    fn report_seven_three() {
        let r = embedding_report(&b(7), &b(3)).unwrap();
        assert_eq!(r.coboundary_b2, 1);
        assert_eq!(r.coboundary_witness.gram.gram().to_rows(), vec![vec![b(7)]]);
    }

    #[test]
    fn report_trivial() {
        let r = embedding_report(&b(1), &b(0)).unwrap();
        assert_eq!(
            (r.coboundary_b2, r.cp2_cp2bar_bound, r.s2xs2_bound, r.cp2_bound),
            (0, 0, 0, 0)
        );
    }

    #[test]
    fn five_cp2_flag_rule() {
        assert!(!embedding_report(&b(8), &b(3)).unwrap().five_cp2_flag);
        assert!(embedding_report(&b(8), &b(7)).unwrap().five_cp2_flag);
        assert!(embedding_report(&b(8), &b(1)).unwrap().five_cp2_flag);
    }
}
