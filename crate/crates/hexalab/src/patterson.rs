//! Patterson functions of subsets of finite groups and the functional
//! equalities they satisfy.
//!
//! `Pat_A(g) = mu(A intersect g.A)` with the uniform measure. For a
//! half-measure subset `Pat_A = Pat_{A^c}` pointwise; in general the
//! difference is the constant `mu(A) - mu(A^c)`.

use crate::group::Group;
use crate::rational::Q;
use crate::space::SubsetMask;
use num_bigint::BigInt;

/// Exact Patterson function of `A`, indexed by group element.
pub fn patterson(group: &Group, a: &SubsetMask) -> Vec<Q> {
    let order = group.order();
    assert_eq!(a.len(), order, "mask must cover the group's elements");
    let members: Vec<usize> = a.iter().collect();
    let denom = BigInt::from(order);
    (0..order)
        .map(|g| {
            let ginv = group.inv(g);
            let count = members
                .iter()
                .filter(|&&x| a.contains(group.mul(ginv, x)))
                .count();
            Q::new(BigInt::from(count), denom.clone())
        })
        .collect()
}

/// Report of [`check_patterson_equality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PattersonReport {
    pub holds: bool,
    pub pat_a: Vec<Q>,
    pub pat_ac: Vec<Q>,
    /// `Pat_A(g) - Pat_{A^c}(g)` per element; constant when `holds`.
    pub difference: Vec<Q>,
    /// The predicted constant `mu(A) - mu(A^c)`.
    pub expected_constant: Q,
    /// Whether `Pat_A(g^-1) = Pat_A(g)` for every `g`.
    pub inverse_symmetric: bool,
}

/// Verifies the two functional identities: the difference of the Patterson
/// functions of `A` and its complement is the constant `mu(A) - mu(A^c)` at
/// every element, and `Pat_A` is invariant under inversion.
pub fn check_patterson_equality(group: &Group, a: &SubsetMask) -> PattersonReport {
    let ac = SubsetMask::from_predicate(
        &vec![Q::new(1.into(), group.order().into()); group.order()],
        |i| !a.contains(i),
    );
    let pat_a = patterson(group, a);
    let pat_ac = patterson(group, &ac);
    let difference: Vec<Q> = pat_a
        .iter()
        .zip(&pat_ac)
        .map(|(x, y)| x - y)
        .collect();
    let card_a = a.cardinality() as i64;
    let order = group.order() as i64;
    let expected_constant = Q::new(
        BigInt::from(card_a - (order - card_a)),
        BigInt::from(order),
    );
    let constant_ok = difference.iter().all(|d| d == &expected_constant);
    let inverse_symmetric = (0..group.order()).all(|g| pat_a[group.inv(g)] == pat_a[g]);
    PattersonReport {
        holds: constant_ok && inverse_symmetric,
        pat_a,
        pat_ac,
        difference,
        expected_constant,
        inverse_symmetric,
    }
}
