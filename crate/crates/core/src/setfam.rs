//! Ordered families of finite integer sets and the predicates used to argue
//! that families of transmission values are pairwise disjoint.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetFamilyError {
    #[error("a family needs at least one part")]
    NoParts,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("arithmetic shift needs an even positive step, got {0}")]
    InvalidShift(i64),
}

/// How [`IntSetFamily::shift`] moves the parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// Every part moves by the same constant.
    Uniform(i64),
    /// Part `i` (1-based) moves by `i * t`.
    Arithmetic(i64),
}

/// An ordered family `A_1, ..., A_k` of nonempty finite integer sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSetFamily {
    parts: Vec<BTreeSet<i64>>,
}

impl IntSetFamily {
    pub fn new(parts: Vec<BTreeSet<i64>>) -> Result<Self, SetFamilyError> {
        if parts.is_empty() {
            return Err(SetFamilyError::NoParts);
        }
        if let Some(i) = parts.iter().position(BTreeSet::is_empty) {
            return Err(SetFamilyError::EmptyPart(i + 1));
        }
        Ok(IntSetFamily { parts })
    }

    /// Convenience constructor from slices.
    pub fn from_slices(parts: &[&[i64]]) -> Result<Self, SetFamilyError> {
        Self::new(parts.iter().map(|p| p.iter().copied().collect()).collect())
    }

    pub fn parts(&self) -> &[BTreeSet<i64>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn min(&self, i: usize) -> i64 {
        *self.parts[i].first().expect("parts are nonempty")
    }

    fn max(&self, i: usize) -> i64 {
        *self.parts[i].last().expect("parts are nonempty")
    }

    /// Each part is all-odd or all-even, and consecutive parts alternate.
    /// Mixed-parity parts make this false.
    pub fn has_intersecting_parity(&self) -> bool {
        let parities: Option<Vec<i64>> = self
            .parts
            .iter()
            .map(|p| {
                let first = p.first()?.rem_euclid(2);
                p.iter().all(|x| x.rem_euclid(2) == first).then_some(first)
            })
            .collect();
        match parities {
            Some(parities) => parities.windows(2).all(|w| w[0] != w[1]),
            None => false,
        }
    }

    /// `min A_{j+1} >= max A_{j-1}` for every interior index `j`; vacuous
    /// for families of at most two parts.
    pub fn is_2_distance_monotonic(&self) -> bool {
        (2..self.parts.len()).all(|i| self.min(i) >= self.max(i - 2))
    }

    /// Strict variant: `min A_{j+1} > max A_{j-1}`.
    pub fn is_strictly_2_distance_monotonic(&self) -> bool {
        (2..self.parts.len()).all(|i| self.min(i) > self.max(i - 2))
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.parts.iter().flatten().all(|&x| seen.insert(x))
    }

    /// First pair of parts (1-based) sharing an element, with that element.
    pub fn first_collision(&self) -> Option<(usize, usize, i64)> {
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                if let Some(&x) = self.parts[i].intersection(&self.parts[j]).next() {
                    return Some((i + 1, j + 1, x));
                }
            }
        }
        None
    }

    pub fn shift(&self, mode: Shift) -> Result<Self, SetFamilyError> {
        let offset = |i: usize| -> i64 {
            match mode {
                Shift::Uniform(a) => a,
                Shift::Arithmetic(t) => (i as i64 + 1) * t,
            }
        };
        if let Shift::Arithmetic(t) = mode {
            if t <= 0 || t % 2 != 0 {
                return Err(SetFamilyError::InvalidShift(t));
            }
        }
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| p.iter().map(|x| x + offset(i)).collect())
            .collect();
        Ok(IntSetFamily { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(parts: &[&[i64]]) -> IntSetFamily {
        IntSetFamily::from_slices(parts).unwrap()
    }

    #[test]
    fn parity_examples() {
        assert!(fam(&[&[1, 3], &[2, 4], &[5, 7]]).has_intersecting_parity());
        assert!(!fam(&[&[1, 2]]).has_intersecting_parity());
        assert!(!fam(&[&[1], &[3]]).has_intersecting_parity());
        assert!(fam(&[&[-1], &[0]]).has_intersecting_parity());
    }

    #[test]
    fn monotonic_examples() {
        assert!(fam(&[&[1, 3], &[2, 4], &[5, 7]]).is_2_distance_monotonic());
        assert!(!fam(&[&[5], &[1], &[4]]).is_2_distance_monotonic());
        assert!(fam(&[&[9], &[1]]).is_2_distance_monotonic());
        assert!(fam(&[&[1], &[2], &[1]]).is_2_distance_monotonic());
        assert!(!fam(&[&[1], &[2], &[1]]).is_strictly_2_distance_monotonic());
    }

    #[test]
    fn disjointness_examples() {
        assert!(fam(&[&[1, 3], &[2, 4], &[5, 7]]).pairwise_disjoint());
        let f = fam(&[&[1], &[1]]);
        assert!(!f.pairwise_disjoint());
        assert_eq!(f.first_collision(), Some((1, 2, 1)));
    }

    #[test]
    fn touching_boundary_breaks_disjointness() {
        // satisfies both hypotheses with equality at the boundary
        let f = fam(&[&[1], &[2], &[1]]);
        assert!(f.has_intersecting_parity() && f.is_2_distance_monotonic());
        assert!(!f.pairwise_disjoint());
    }

    #[test]
    fn shift_examples() {
        let f = fam(&[&[1, 3], &[2, 4]]);
        assert_eq!(
            f.shift(Shift::Uniform(10)).unwrap(),
            fam(&[&[11, 13], &[12, 14]])
        );
        let g = fam(&[&[1], &[2], &[5]]);
        assert_eq!(
            g.shift(Shift::Arithmetic(2)).unwrap(),
            fam(&[&[3], &[6], &[11]])
        );
        assert_eq!(
            g.shift(Shift::Arithmetic(1)),
            Err(SetFamilyError::InvalidShift(1))
        );
        assert_eq!(
            g.shift(Shift::Arithmetic(0)),
            Err(SetFamilyError::InvalidShift(0))
        );
        assert_eq!(
            g.shift(Shift::Arithmetic(-2)),
            Err(SetFamilyError::InvalidShift(-2))
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(IntSetFamily::new(vec![]), Err(SetFamilyError::NoParts));
        assert_eq!(
            IntSetFamily::from_slices(&[&[1], &[]]),
            Err(SetFamilyError::EmptyPart(2))
        );
    }
}
