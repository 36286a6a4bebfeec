//! Deciders for the constant volume condition, the hexachordal property,
//! the defect identity for unbalanced subsets, and homometry.

use crate::rational::{format_q, Q};
use crate::space::{
    cumulative, restricted_distribution, row_profile, DistanceDistribution, Space, SubsetMask,
    ValueKind, VolumeFunction,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HexError {
    #[error("subset must have measure exactly 1/2, found {0}")]
    MeasureNotHalf(String),
    #[error("the space does not satisfy the constant volume condition")]
    CvcRequired,
}

/// Witness of a CVC failure: two centers and a radius with different ball
/// masses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvcWitness {
    pub x: usize,
    pub y: usize,
    pub r: Q,
}

/// Outcome of [`check_cvc`]: either the common volume function or a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvcVerdict {
    pub holds: bool,
    pub rho: Option<VolumeFunction>,
    pub witness: Option<CvcWitness>,
}

/// Decides the constant volume condition on the support of the measure:
/// every positive-weight point must see the same ball-mass step function.
/// Zero-weight points are ignored, which is the full-measure-subset reading
/// of the condition for spaces with atoms.
pub fn check_cvc(space: &Space) -> CvcVerdict {
    let mut support = space.support();
    let Some(first) = support.next() else {
        // empty support: vacuously constant
        return CvcVerdict {
            holds: true,
            rho: Some(VolumeFunction::from_steps(vec![])),
            witness: None,
        };
    };
    let mut reference = row_profile(space, first, None);
    cumulative(&mut reference);
    for point in support {
        let mut profile = row_profile(space, point, None);
        cumulative(&mut profile);
        if let Some(idx) = reference.first_difference(&profile) {
            return CvcVerdict {
                holds: false,
                rho: None,
                witness: Some(CvcWitness {
                    x: first,
                    y: point,
                    r: space.values()[idx].clone(),
                }),
            };
        }
    }
    let steps = space
        .values()
        .iter()
        .cloned()
        .zip(reference.to_masses(space))
        .collect();
    CvcVerdict {
        holds: true,
        rho: Some(VolumeFunction::from_steps(steps)),
        witness: None,
    }
}

/// Outcome of [`check_hex`]: the two restricted distance distributions and
/// the first value at which they diverge, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexVerdict {
    pub holds: bool,
    pub dist_a: DistanceDistribution,
    pub dist_ac: DistanceDistribution,
    pub first_divergence: Option<Q>,
}

/// Hexachordal property of a half-measure subset: the distance law within
/// `A` equals the distance law within its complement. Equality of the two
/// finite distributions is equivalent to agreement on every open set of
/// radii.
pub fn check_hex(space: &Space, a: &SubsetMask) -> Result<HexVerdict, HexError> {
    let half = Q::new(1.into(), 2.into());
    if a.measure() != &half {
        return Err(HexError::MeasureNotHalf(format_q(a.measure())));
    }
    let ac = space.complement(a);
    let dist_a = restricted_distribution(space, a, a);
    let dist_ac = restricted_distribution(space, &ac, &ac);
    let first_divergence = dist_a.first_divergence(&dist_ac);
    Ok(HexVerdict {
        holds: first_divergence.is_none(),
        dist_a,
        dist_ac,
        first_divergence,
    })
}

/// Defect `mu^2{A^2: d <= r} - mu^2{(A^c)^2: d <= r}` for a subset of any
/// measure on a CVC space. The result always equals
/// `rho(r) * (mu(A) - mu(A^c))`, which is asserted.
pub fn hex_defect(space: &Space, a: &SubsetMask, r: &Q) -> Result<Q, HexError> {
    let verdict = check_cvc(space);
    let Some(rho) = verdict.rho else {
        return Err(HexError::CvcRequired);
    };
    let ac = space.complement(a);
    let lhs = restricted_distribution(space, a, a).cdf_at(r)
        - restricted_distribution(space, &ac, &ac).cdf_at(r);
    let rhs = rho.eval(r) * (a.measure() - ac.measure());
    assert_eq!(lhs, rhs, "defect identity must hold on a CVC space");
    Ok(lhs)
}

/// A whole space, or a space restricted to a subset of its points.
#[derive(Clone, Copy)]
pub enum SpaceView<'a> {
    Whole(&'a Space),
    Subset(&'a Space, &'a SubsetMask),
}

impl<'a> SpaceView<'a> {
    fn distribution(&self) -> DistanceDistribution {
        match self {
            SpaceView::Whole(space) => {
                let full = space.full_mask();
                restricted_distribution(space, &full, &full)
            }
            SpaceView::Subset(space, mask) => restricted_distribution(space, mask, mask),
        }
    }

    fn value_kind(&self) -> ValueKind {
        match self {
            SpaceView::Whole(space) | SpaceView::Subset(space, _) => space.value_kind(),
        }
    }
}

/// Two views are homometric when their (restricted, unnormalized) distance
/// distributions agree as measures. Views with different value kinds are
/// compared on the squared axis, which is sound because squaring is strictly
/// increasing on nonnegative values.
pub fn homometric(x1: SpaceView<'_>, x2: SpaceView<'_>) -> bool {
    let d1 = x1.distribution();
    let d2 = x2.distribution();
    match (x1.value_kind(), x2.value_kind()) {
        (ValueKind::Plain, ValueKind::Plain) | (ValueKind::Squared, ValueKind::Squared) => {
            d1 == d2
        }
        (ValueKind::Plain, ValueKind::Squared) => d1.map_values(|v| v * v) == d2,
        (ValueKind::Squared, ValueKind::Plain) => d1 == d2.map_values(|v| v * v),
    }
}

/// Convenience wrapper comparing two whole spaces.
pub fn homometric_spaces(a: &Space, b: &Space) -> bool {
    homometric(SpaceView::Whole(a), SpaceView::Whole(b))
}

impl CvcVerdict {
    /// Serializes the verdict with rational fields as `p/q` strings.
    pub fn to_json(&self, space: &Space) -> serde_json::Value {
        match (&self.rho, &self.witness) {
            (Some(rho), None) => serde_json::json!({
                "holds": self.holds,
                "rho": rho.steps().iter()
                    .map(|(r, m)| serde_json::json!([format_q(r), format_q(m)]))
                    .collect::<Vec<_>>(),
            }),
            (_, Some(w)) => serde_json::json!({
                "holds": self.holds,
                "witness": {
                    "x": space.label(w.x),
                    "y": space.label(w.y),
                    "r": format_q(&w.r),
                },
            }),
            _ => serde_json::json!({ "holds": self.holds }),
        }
    }
}

impl HexVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let render = |d: &DistanceDistribution| {
            d.entries()
                .iter()
                .map(|(v, m)| serde_json::json!([format_q(v), format_q(m)]))
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "holds": self.holds,
            "dist_a": render(&self.dist_a),
            "dist_ac": render(&self.dist_ac),
            "first_divergence": self.first_divergence.as_ref().map(format_q),
        })
    }
}
