//! The named generating functions for semi-magic squares and trivial zeros.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::poly::{IntPolynomial, RationalGF};
use crate::scalar::ExactInt;

fn poly<T: ExactInt>(terms: &[(usize, i64)]) -> IntPolynomial<T> {
    IntPolynomial::from_terms(terms).expect("small literal fits every scalar")
}

fn gf<T: ExactInt>(num: &[(usize, i64)], den_factors: &[(&[(usize, i64)], u32)]) -> RationalGF<T> {
    let den = den_factors.iter().fold(IntPolynomial::one(), |acc, (f, e)| {
        acc.checked_mul(&poly::<T>(f).checked_pow(*e).expect("small"))
            .expect("small")
    });
    RationalGF::new(poly(num), den).expect("denominator constant term is 1")
}

const ONE_MINUS_X: &[(usize, i64)] = &[(0, 1), (1, -1)];
const ONE_MINUS_X4: &[(usize, i64)] = &[(0, 1), (4, -1)];
const ONE_MINUS_X6: &[(usize, i64)] = &[(0, 1), (6, -1)];

/// `sum_J H_3(J) x^J = (1+x+x^2)/(1-x)^5`.
pub fn h3_gf<T: ExactInt>() -> RationalGF<T> {
    gf(&[(0, 1), (1, 1), (2, 1)], &[(ONE_MINUS_X, 5)])
}

/// Trivial zeros: `x^3(1+9x^2+16x^4+27x^6+19x^8) / ((1-x^4)^2 (1-x^6))`.
pub fn trivial_zero_gf<T: ExactInt>() -> RationalGF<T> {
    gf(
        &[(3, 1), (5, 9), (7, 16), (9, 27), (11, 19)],
        &[(ONE_MINUS_X4, 2), (ONE_MINUS_X6, 1)],
    )
}

/// Trivial orbits as printed: `x^3(1+2x^6-x^10) / ((1-x^4)^2 (1-x^6))`.
/// Disagrees with enumeration whenever `J ≡ 5 (mod 6)`; see
/// [`trivial_orbit_gf`].
pub fn printed_trivial_orbit_gf<T: ExactInt>() -> RationalGF<T> {
    gf(&[(3, 1), (9, 2), (13, -1)], &[(ONE_MINUS_X4, 2), (ONE_MINUS_X6, 1)])
}

/// Trivial orbits as the sum of the three component series:
/// `x^3(1+x^2) / ((1-x^4)^2 (1-x^6))`.
pub fn trivial_orbit_gf<T: ExactInt>() -> RationalGF<T> {
    gf(&[(3, 1), (5, 1)], &[(ONE_MINUS_X4, 2), (ONE_MINUS_X6, 1)])
}

/// The sizes a trivial orbit can have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TrivialOrbitSize {
    One,
    Nine,
    ThirtySix,
}

impl TrivialOrbitSize {
    pub const ALL: [TrivialOrbitSize; 3] = [
        TrivialOrbitSize::One,
        TrivialOrbitSize::Nine,
        TrivialOrbitSize::ThirtySix,
    ];

    pub fn size(self) -> usize {
        match self {
            TrivialOrbitSize::One => 1,
            TrivialOrbitSize::Nine => 9,
            TrivialOrbitSize::ThirtySix => 36,
        }
    }

    pub fn from_size(size: usize) -> Option<Self> {
        TrivialOrbitSize::ALL.into_iter().find(|s| s.size() == size)
    }
}

/// Per-size trivial orbit counts:
/// size 1 `x^3/(1-x^6)`, size 9 `(x^5+2x^7)/((1-x^4)(1-x^6))`,
/// size 36 `(x^9+x^11)/((1-x^6)(1-x^4)^2)`.
pub fn trivial_orbit_component_gfs<T: ExactInt>() -> BTreeMap<TrivialOrbitSize, RationalGF<T>> {
    BTreeMap::from([
        (TrivialOrbitSize::One, gf(&[(3, 1)], &[(ONE_MINUS_X6, 1)])),
        (
            TrivialOrbitSize::Nine,
            gf(&[(5, 1), (7, 2)], &[(ONE_MINUS_X4, 1), (ONE_MINUS_X6, 1)]),
        ),
        (
            TrivialOrbitSize::ThirtySix,
            gf(&[(9, 1), (11, 1)], &[(ONE_MINUS_X6, 1), (ONE_MINUS_X4, 2)]),
        ),
    ])
}

/// Trivial orbits seeded by the `t - 1` row-swap-type reduced orbits at
/// `J' = 4t`: `(t-1) x^(4t+3) / (1-x^6)`.
pub fn rowswap_seed_gf<T: ExactInt>(t: usize) -> RationalGF<T> {
    gf(&[(4 * t + 3, t as i64 - 1)], &[(ONE_MINUS_X6, 1)])
}

/// `sum_size size * component(size)`, which must equal [`trivial_zero_gf`].
pub fn weighted_component_sum<T: ExactInt>() -> Result<RationalGF<T>> {
    let mut acc = RationalGF::zero();
    for (size, g) in trivial_orbit_component_gfs::<T>() {
        let w = T::from_usize(size.size()).expect("small");
        acc = acc.checked_add(&g.scale(&w)?)?;
    }
    Ok(acc)
}

/// `sum_size component(size)`, which must equal [`trivial_orbit_gf`].
pub fn component_sum<T: ExactInt>() -> Result<RationalGF<T>> {
    let parts: Vec<RationalGF<T>> = trivial_orbit_component_gfs::<T>().into_values().collect();
    crate::poly::gf_add(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::h3;

    #[test]
    fn h3_series_matches_closed_form() {
        let coeffs = h3_gf::<i64>().series_coeffs(100).unwrap();
        for (j, c) in coeffs.iter().enumerate() {
            assert_eq!(*c as u128, h3(j as u64));
        }
    }

    #[test]
    fn component_examples() {
        let comps = trivial_orbit_component_gfs::<i64>();
        assert_eq!(comps[&TrivialOrbitSize::One].coefficient(3).unwrap(), 1);
        assert_eq!(comps[&TrivialOrbitSize::Nine].coefficient(5).unwrap(), 1);
        assert_eq!(comps[&TrivialOrbitSize::ThirtySix].coefficient(9).unwrap(), 1);
    }

    #[test]
    fn weighted_components_give_trivial_zero_gf() {
        let w = weighted_component_sum::<i64>().unwrap();
        assert!(w.same_function(&trivial_zero_gf()).unwrap());
        let s = component_sum::<i64>().unwrap();
        assert!(s.same_function(&trivial_orbit_gf()).unwrap());
        assert!(!s.same_function(&printed_trivial_orbit_gf()).unwrap());
    }

    #[test]
    fn rowswap_seeds_sum_to_closed_form() {
        // partial sums over t = 1..=n agree with x^11/((1-x^6)(1-x^4)^2)
        // through degree 4n+3
        let n = 12;
        let seeds: Vec<RationalGF<i64>> = (1..=n).map(rowswap_seed_gf).collect();
        let partial = crate::poly::gf_add(&seeds).unwrap();
        let closed: RationalGF<i64> = "x^11 / (1-x^6)*(1-x^4)^2".parse().unwrap();
        assert_eq!(
            partial.series_coeffs(4 * n + 3).unwrap(),
            closed.series_coeffs(4 * n + 3).unwrap()
        );
    }

    #[test]
    fn printed_orbit_gf_deviates_at_five_mod_six() {
        let printed = printed_trivial_orbit_gf::<i64>().series_coeffs(40).unwrap();
        let derived = trivial_orbit_gf::<i64>().series_coeffs(40).unwrap();
        let bad: Vec<usize> = (0..=40).filter(|&j| printed[j] != derived[j]).collect();
        assert_eq!(bad, vec![5, 11, 17, 23, 29, 35]);
        assert_eq!((printed[5], derived[5]), (0, 1));
        assert_eq!((printed[11], derived[11]), (3, 4));
    }

    #[test]
    fn coefficients_nonnegative() {
        for g in [
            h3_gf::<i64>(),
            trivial_zero_gf(),
            trivial_orbit_gf(),
            printed_trivial_orbit_gf(),
        ]
        .iter()
        .chain(trivial_orbit_component_gfs::<i64>().values())
        {
            assert!(g.series_coeffs(200).unwrap().iter().all(|c| *c >= 0));
        }
    }
}
