//! Gradings that order monomials for product expansion and factor peeling.

use super::ExponentVector;

/// A linear grade `a·N + b·M` with `a, b > 0`, plus a choice of which sign
/// of `L` counts as positive on the grade-zero slice `N = M = 0`.
///
/// The positive cone is `{N ≥ 0, M ≥ 0, grade > 0} ∪ {N = M = 0, sign·L > 0}`.
/// Within one grade, terms are visited in canonical `(N, M, L)` order; on the
/// grade-zero slice they are visited by increasing distance `sign·L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grading {
    pub name: &'static str,
    pub n_weight: i64,
    pub m_weight: i64,
    pub zero_slice_sign: i64,
}

/// Gradings selectable by name.
pub const GRADINGS: &[Grading] = &[Grading::CONE, Grading::CONE_POSITIVE_L];

impl Grading {
    /// `N + M`, with `L < 0` positive on the grade-zero slice.
    pub const CONE: Grading = Grading { name: "cone", n_weight: 1, m_weight: 1, zero_slice_sign: -1 };
    /// `N + M`, with `L > 0` positive on the grade-zero slice.
    pub const CONE_POSITIVE_L: Grading = Grading { name: "cone-lplus", n_weight: 1, m_weight: 1, zero_slice_sign: 1 };

    pub fn by_name(name: &str) -> Option<Grading> {
        GRADINGS.iter().copied().find(|g| g.name == name)
    }

    pub fn grade(&self, v: &ExponentVector) -> i64 {
        self.n_weight * v.n + self.m_weight * v.m
    }

    pub fn is_positive(&self, v: &ExponentVector) -> bool {
        if v.n < 0 || v.m < 0 {
            return false;
        }
        if v.n == 0 && v.m == 0 {
            return self.zero_slice_sign * v.l > 0;
        }
        true
    }

    /// Sort key realizing the peeling order.
    pub(crate) fn key(&self, v: &ExponentVector) -> (i64, i64, ExponentVector) {
        let g = self.grade(v);
        let secondary = if v.n == 0 && v.m == 0 { self.zero_slice_sign * v.l } else { 0 };
        (g, secondary, *v)
    }
}
