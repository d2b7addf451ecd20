use serde_json::{json, Value};

/// A total binary relation between `0..na` and `0..nb`: every row and every
/// column is related to something.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    na: usize,
    nb: usize,
    rel: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorrespondenceError {
    #[error("pair ({i}, {j}) is outside a {na}x{nb} relation")]
    OutOfRange {
        i: usize,
        j: usize,
        na: usize,
        nb: usize,
    },
    #[error("row {0} is not related to any column")]
    UncoveredRow(usize),
    #[error("column {0} is not related to any row")]
    UncoveredColumn(usize),
    #[error("not a permutation")]
    NotPermutation,
}

impl Correspondence {
    pub fn from_pairs(
        na: usize,
        nb: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CorrespondenceError> {
        let mut rel = vec![false; na * nb];
        for (i, j) in pairs {
            if i >= na || j >= nb {
                return Err(CorrespondenceError::OutOfRange { i, j, na, nb });
            }
            rel[i * nb + j] = true;
        }
        let c = Correspondence { na, nb, rel };
        if let Some(i) = (0..na).find(|&i| !(0..nb).any(|j| c.contains(i, j))) {
            return Err(CorrespondenceError::UncoveredRow(i));
        }
        if let Some(j) = (0..nb).find(|&j| !(0..na).any(|i| c.contains(i, j))) {
            return Err(CorrespondenceError::UncoveredColumn(j));
        }
        Ok(c)
    }

    /// The graph of `i -> perm[i]`.
    pub fn from_bijection(perm: &[usize]) -> Result<Self, CorrespondenceError> {
        if !is_permutation(perm) {
            return Err(CorrespondenceError::NotPermutation);
        }
        Self::from_pairs(perm.len(), perm.len(), perm.iter().copied().enumerate())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, n, (0..n).map(|i| (i, i))).expect("identity is total")
    }

    pub fn full(na: usize, nb: usize) -> Self {
        Correspondence {
            na,
            nb,
            rel: vec![true; na * nb],
        }
    }

    pub fn rows(&self) -> usize {
        self.na
    }

    pub fn cols(&self) -> usize {
        self.nb
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.nb + j]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nb = self.nb;
        self.rel
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(move |(v, _)| (v / nb, v % nb))
    }

    pub fn len(&self) -> usize {
        self.rel.iter().filter(|&&r| r).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Some(perm)` when the relation is the graph of a bijection.
    pub fn as_bijection(&self) -> Option<Vec<usize>> {
        if self.na != self.nb || self.len() != self.na {
            return None;
        }
        let perm: Vec<usize> = (0..self.na)
            .map(|i| (0..self.nb).find(|&j| self.contains(i, j)))
            .collect::<Option<_>>()?;
        is_permutation(&perm).then_some(perm)
    }

    pub fn transpose(&self) -> Self {
        Correspondence::from_pairs(self.nb, self.na, self.pairs().map(|(i, j)| (j, i)))
            .expect("transpose of a correspondence is a correspondence")
    }

    /// Columns related to row `i`.
    pub fn image(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.nb).filter(move |&j| self.contains(i, j))
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self.pairs().map(|(i, j)| json!([i, j])).collect();
        json!({"kind": "correspondence", "na": self.na, "nb": self.nb, "pairs": pairs})
    }
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter()
        .all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totality_enforced() {
        assert_eq!(
            Correspondence::from_pairs(2, 2, [(0, 0), (0, 1)]).unwrap_err(),
            CorrespondenceError::UncoveredRow(1)
        );
        assert_eq!(
            Correspondence::from_pairs(2, 2, [(0, 0), (1, 0)]).unwrap_err(),
            CorrespondenceError::UncoveredColumn(1)
        );
        assert!(matches!(
            Correspondence::from_pairs(1, 1, [(0, 3)]),
            Err(CorrespondenceError::OutOfRange { .. })
        ));
    }

    #[test]
    fn bijection_round_trip() {
        let c = Correspondence::from_bijection(&[2, 0, 1]).unwrap();
        assert_eq!(c.as_bijection().unwrap(), vec![2, 0, 1]);
        assert!(Correspondence::full(2, 2).as_bijection().is_none());
        assert_eq!(
            Correspondence::from_bijection(&[0, 0]).unwrap_err(),
            CorrespondenceError::NotPermutation
        );
        assert_eq!(c.transpose().as_bijection().unwrap(), vec![1, 2, 0]);
    }
}
