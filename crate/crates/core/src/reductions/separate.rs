use serde_json::json;

use super::{check_size, Gadget, ReductionError};
use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationGadgetParams<S> {
    /// Added separation.
    pub p: S,
    /// Number of copies of each point.
    pub copies: usize,
}

/// `copies` copies of every point, with `d̃((i,a),(j,b)) = d(i,j) + p` for
/// distinct points. Points are ordered `(0,0), (0,1), …, (1,0), …`.
///
/// ```
/// use metriclab::{FiniteMetricSpace, reductions::{separate, SeparationGadgetParams}};
/// let g = separate(&FiniteMetricSpace::singleton(), SeparationGadgetParams { p: 1.0, copies: 3 }).unwrap();
/// assert_eq!(g.len(), 3);
/// assert_eq!(g.space.dist(0, 2), 1.0);
/// ```
pub fn separate<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    params: SeparationGadgetParams<S>,
) -> Result<Gadget<S, SeparatedPoint>, ReductionError> {
    if !(params.p > S::zero()) {
        return Err(ReductionError::InvalidParams("p must be positive".into()));
    }
    if params.copies < 2 {
        return Err(ReductionError::InvalidParams(
            "copies must be at least 2".into(),
        ));
    }
    let total = m.len() * params.copies;
    check_size(total)?;
    let points: Vec<SeparatedPoint> = (0..m.len())
        .flat_map(|point| (0..params.copies).map(move |copy| SeparatedPoint { point, copy }))
        .collect();
    let mut d = Vec::with_capacity(total * total);
    for (x, a) in points.iter().enumerate() {
        for (y, b) in points.iter().enumerate() {
            d.push(if x == y {
                S::zero()
            } else {
                m.dist(a.point, b.point) + params.p
            });
        }
    }
    let space = FiniteMetricSpace::from_flat(total, d)?;
    let provenance = json!({
        "construction": "separate",
        "p": params.p.to_json(),
        "copies": params.copies,
        "input_points": m.len(),
    });
    Gadget::new(space, points, provenance)
}

/// Copy `copy` of input point `point`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeparatedPoint {
    pub point: usize,
    pub copy: usize,
}

impl std::fmt::Display for SeparatedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.point, self.copy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ClassBounds;

    #[test]
    fn distances_and_class() {
        let m = FiniteMetricSpace::validate(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        let g = separate(&m, SeparationGadgetParams { p: 1.0, copies: 2 }).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.space.dist(0, 1), 1.0);
        assert_eq!(g.space.dist(0, 2), 3.0);
        assert!(g.space.in_class(&ClassBounds::between(1.0, 3.0).unwrap()));
        assert_eq!(g.space.label(3), "(1,1)");
    }

    #[test]
    fn bad_params() {
        let m = FiniteMetricSpace::<f64>::singleton();
        assert!(separate(&m, SeparationGadgetParams { p: 0.0, copies: 2 }).is_err());
        assert!(separate(&m, SeparationGadgetParams { p: 1.0, copies: 1 }).is_err());
    }
}
