//! Exact integer cyclotomic polynomials and divisibility tests.
//!
//! `Phi_d` is computed by iterated exact division of `x^d - 1` by `Phi_e`
//! over the proper divisors `e` of `d`, memoized per table.

use std::collections::HashMap;

/// Divisors of `n` in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Memoized table of cyclotomic polynomials, coefficients low-degree first.
#[derive(Default)]
pub struct CyclotomicTable {
    memo: HashMap<u32, Vec<i64>>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, d: u32) -> Vec<i64> {
        assert!(d > 0, "cyclotomic index must be positive");
        if let Some(p) = self.memo.get(&d) {
            return p.clone();
        }
        let poly = if d == 1 {
            vec![-1, 1]
        } else {
            // (x^d - 1) / prod of Phi_e over proper divisors e
            let mut numerator = vec![0i64; d as usize + 1];
            numerator[0] = -1;
            numerator[d as usize] = 1;
            for e in divisors(d) {
                if e == d {
                    continue;
                }
                let phi = self.get(e);
                numerator = exact_div(&numerator, &phi)
                    .expect("x^d - 1 is divisible by its cyclotomic factors");
            }
            numerator
        };
        self.memo.insert(d, poly.clone());
        poly
    }

    /// Whether `Phi_d` divides `poly` in `Z[x]`.
    pub fn divides(&mut self, d: u32, poly: &[i64]) -> bool {
        let phi = self.get(d);
        remainder(poly, &phi).iter().all(|&c| c == 0)
    }
}

fn degree(poly: &[i64]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Exact division by a monic divisor; `None` if a remainder survives.
fn exact_div(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dden = degree(den)?;
    assert_eq!(den[dden], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dnum = match degree(&rem) {
        Some(d) => d,
        None => return Some(vec![0]),
    };
    if dnum < dden {
        return None;
    }
    let mut quot = vec![0i64; dnum - dden + 1];
    for k in (0..quot.len()).rev() {
        let coeff = rem[k + dden];
        if coeff != 0 {
            quot[k] = coeff;
            for (i, &dc) in den.iter().enumerate().take(dden + 1) {
                rem[k + i] -= coeff * dc;
            }
        }
    }
    if rem.iter().all(|&c| c == 0) {
        Some(quot)
    } else {
        None
    }
}

/// Remainder of `num` modulo a monic divisor.
fn remainder(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dden = degree(den).expect("nonzero divisor");
    assert_eq!(den[dden], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let Some(dnum) = degree(&rem) else {
        return vec![0];
    };
    if dnum < dden {
        return rem;
    }
    for k in (0..=dnum - dden).rev() {
        let coeff = rem[k + dden];
        if coeff != 0 {
            for (i, &dc) in den.iter().enumerate().take(dden + 1) {
                rem[k + i] -= coeff * dc;
            }
        }
    }
    rem.truncate(dden.max(1));
    rem
}
