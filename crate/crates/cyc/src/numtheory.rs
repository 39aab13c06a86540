//! Integer side of the torsion bounds: the alternating surjection counts
//! f(n, s), the prime packages attached to each degree, and the universal
//! constants M_m they multiply into.

use crate::error::{CycError, Result};
use num::bigint::{BigInt, BigUint};
use num::traits::{One, Signed, Zero};
use num::Integer;

/// f(n, s) = sum_{k=0}^{n-1} (-1)^k C(n, k) (n - k)^s, the number of
/// surjections from an s-set onto an n-set (times the sign conventions
/// making it an alternating diagonal count).
pub fn f_sum(n: u32, s: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    for k in 0..=n {
        // 0^0 = 1 here, so the k = n term only contributes when s = 0.
        let term = &binom * BigInt::from(n - k).pow(s);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    total
}

/// Stirling number of the second kind via the standard recurrence; the
/// independent oracle for f(n, s) = n! S(s, n).
pub fn stirling2(s: u32, n: u32) -> BigInt {
    if n == 0 {
        return if s == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if s == 0 {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); (n + 1) as usize];
    row[0] = BigInt::one(); // S(0, 0)
    for _ in 1..=s {
        let mut next = vec![BigInt::zero(); (n + 1) as usize];
        for j in 1..=n as usize {
            next[j] = BigInt::from(j as u32) * &row[j] + &row[j - 1];
        }
        // S(s, 0) = 0 for s >= 1.
        row = next;
    }
    row[n as usize].clone()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The primes p <= s with (p - 1) | (s - 1); defined for s >= 3.
pub fn prime_set(s: u32) -> Result<Vec<u32>> {
    if s < 3 {
        return Err(CycError::ArityTooSmall(format!(
            "prime package defined for s >= 3, got {s}"
        )));
    }
    Ok((2..=s)
        .filter(|&p| is_prime(p) && (s - 1) % (p - 1) == 0)
        .collect())
}

/// Outcome of the gcd computation for one odd degree s.
#[derive(Debug, Clone)]
pub struct GcdReport {
    pub s: u32,
    pub gcd: BigUint,
    pub prime_product: BigUint,
    pub equal: bool,
    pub square_free: bool,
}

/// Brute-force gcd of {f(n, s) : 3 <= n <= s} against the prime package
/// product, for odd s >= 3.
pub fn gcd_lemma_check(s: u32) -> Result<GcdReport> {
    if s < 3 || s % 2 == 0 {
        return Err(CycError::IndexOutOfRange(format!(
            "gcd comparison is stated for odd s >= 3, got {s}"
        )));
    }
    let mut g = BigInt::zero();
    for n in 3..=s {
        g = g.gcd(&f_sum(n, s));
    }
    let gcd = g.abs().to_biguint().expect("non-negative");
    let product = prime_set(s)?
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * BigUint::from(p));
    let square_free = {
        // A product of distinct primes; verified against the gcd directly.
        let mut m = gcd.clone();
        let mut sf = true;
        let mut p = BigUint::from(2u32);
        while &p * &p <= m {
            if (&m % &p).is_zero() {
                m /= &p;
                if (&m % &p).is_zero() {
                    sf = false;
                    break;
                }
            }
            p += BigUint::one();
        }
        sf
    };
    Ok(GcdReport {
        s,
        equal: gcd == product,
        gcd,
        prime_product: product,
        square_free,
    })
}

/// M_m: the product over 3 <= s <= m of the prime packages.
pub fn big_m(m: u32) -> Result<BigUint> {
    if m < 3 {
        return Err(CycError::ArityTooSmall(format!(
            "universal constant defined for m >= 3, got {m}"
        )));
    }
    let mut out = BigUint::one();
    for s in 3..=m {
        for p in prime_set(s)? {
            out *= BigUint::from(p);
        }
    }
    Ok(out)
}

/// p-adic valuation of a positive integer.
pub fn valuation(n: &BigUint, p: u32) -> u32 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Closed form for M_{g+1} as a product of prime powers: exponent g - 1 at
/// p = 2 and floor(g / (p - 1)) at odd p.
pub fn m_closed_form(g: u32) -> BigUint {
    let mut out = BigUint::from(2u32).pow(g - 1);
    let mut p = 3;
    while p <= g + 1 {
        if is_prime(p) {
            out *= BigUint::from(p).pow(g / (p - 1));
        }
        p += 2;
    }
    out
}

/// Direction of a torsion-bound transfer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundDirection {
    /// Ceresa torsion d known: the 3-fold modified diagonal is 2d-torsion.
    CerToGamma { d: BigUint },
    /// 3-fold modified diagonal torsion d known: Ceresa is M_{g+1} d-torsion.
    GammaToCer { d: BigUint },
    /// Automorphism criterion: N times (2g-2) times |G| bounds the 3-fold
    /// modified diagonal, and M_{g+1} times that bounds Ceresa.
    QzCriterion { n: BigUint, group_order: BigUint },
}

/// Exact integral torsion bounds with the derivation steps spelled out.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub genus: i64,
    pub gamma3_bound: BigUint,
    pub ceresa_bound: BigUint,
    pub m_constant: BigUint,
    pub direction: BoundDirection,
    pub steps: Vec<String>,
}

pub fn torsion_bound(direction: BoundDirection, genus: i64) -> Result<BoundReport> {
    if genus < 2 {
        return Err(CycError::InvalidGenus(format!(
            "torsion bounds need genus >= 2, got {genus}"
        )));
    }
    let m = big_m(genus as u32 + 1)?;
    let mut steps = Vec::new();
    let (gamma3, ceresa) = match &direction {
        BoundDirection::CerToGamma { d } => {
            let gamma3 = BigUint::from(2u32) * d;
            steps.push(format!(
                "ceresa class is {d}-torsion, so the 3-fold modified diagonal is 2*{d} = {gamma3}-torsion"
            ));
            (gamma3, d.clone())
        }
        BoundDirection::GammaToCer { d } => {
            let ceresa = &m * d;
            steps.push(format!(
                "3-fold modified diagonal is {d}-torsion, so ceresa is M_{} * {d} = {m} * {d} = {ceresa}-torsion",
                genus + 1
            ));
            (d.clone(), ceresa)
        }
        BoundDirection::QzCriterion { n, group_order } => {
            let deg = BigUint::from((2 * genus - 2) as u64);
            let gamma3 = n * &deg * group_order;
            steps.push(format!(
                "automorphism bound: {n} * (2g-2) * |G| = {n} * {deg} * {group_order} = {gamma3} kills the 3-fold modified diagonal"
            ));
            let ceresa = &m * &gamma3;
            steps.push(format!(
                "transfer: M_{} * {gamma3} = {m} * {gamma3} = {ceresa} kills the ceresa class",
                genus + 1
            ));
            (gamma3, ceresa)
        }
    };
    Ok(BoundReport {
        genus,
        gamma3_bound: gamma3,
        ceresa_bound: ceresa,
        m_constant: m,
        direction,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(f_sum(3, 3), BigInt::from(6));
        assert_eq!(f_sum(4, 3), BigInt::zero());
        assert_eq!(f_sum(3, 5), BigInt::from(150));
        assert_eq!(f_sum(4, 5), BigInt::from(240));
        assert_eq!(f_sum(5, 5), BigInt::from(120));
    }

    #[test]
    fn stirling_oracle() {
        for s in 0..=15u32 {
            for n in 0..=s {
                assert_eq!(
                    f_sum(n, s),
                    factorial(n) * stirling2(s, n),
                    "mismatch at n={n}, s={s}"
                );
            }
        }
    }

    #[test]
    fn prime_packages() {
        assert_eq!(prime_set(3).unwrap(), vec![2, 3]);
        assert_eq!(prime_set(5).unwrap(), vec![2, 3, 5]);
        assert_eq!(prime_set(7).unwrap(), vec![2, 3, 7]);
    }

    #[test]
    fn gcd_matches_prime_product_for_small_odd_degrees() {
        for s in (3..=15u32).step_by(2) {
            let r = gcd_lemma_check(s).unwrap();
            assert!(r.equal, "gcd {} != product {} at s={s}", r.gcd, r.prime_product);
            assert!(r.square_free, "gcd not squarefree at s={s}");
        }
        // s = 5: gcd(150, 240, 120) = 30 = 2*3*5.
        let r5 = gcd_lemma_check(5).unwrap();
        assert_eq!(r5.gcd, BigUint::from(30u32));
    }

    #[test]
    fn universal_constants() {
        assert_eq!(big_m(3).unwrap(), BigUint::from(6u32));
        assert_eq!(big_m(4).unwrap(), BigUint::from(12u32));
        assert_eq!(big_m(5).unwrap(), BigUint::from(360u32));
    }

    #[test]
    fn valuations_of_m() {
        for m in 3..=20u32 {
            let big = big_m(m).unwrap();
            assert_eq!(valuation(&big, 2), m - 2, "2-adic valuation at m={m}");
            let mut p = 3;
            while p <= m {
                if is_prime(p) {
                    assert_eq!(
                        valuation(&big, p),
                        (m - 1) / (p - 1),
                        "{p}-adic valuation at m={m}"
                    );
                }
                p += 2;
            }
        }
    }

    #[test]
    fn closed_form_agrees() {
        for g in 2..=19u32 {
            assert_eq!(big_m(g + 1).unwrap(), m_closed_form(g), "mismatch at g={g}");
        }
    }

    #[test]
    fn torsion_bound_examples() {
        let r = torsion_bound(
            BoundDirection::QzCriterion {
                n: BigUint::one(),
                group_order: BigUint::from(48u32),
            },
            3,
        )
        .unwrap();
        assert_eq!(r.gamma3_bound, BigUint::from(192u32));
        assert_eq!(r.ceresa_bound, BigUint::from(2304u32));

        let r = torsion_bound(
            BoundDirection::QzCriterion {
                n: BigUint::one(),
                group_order: BigUint::from(36u32),
            },
            4,
        )
        .unwrap();
        assert_eq!(r.gamma3_bound, BigUint::from(216u32));
        assert_eq!(r.ceresa_bound, BigUint::from(77760u32));

        let r = torsion_bound(
            BoundDirection::GammaToCer {
                d: BigUint::from(5u32),
            },
            3,
        )
        .unwrap();
        assert_eq!(r.ceresa_bound, BigUint::from(60u32));

        let r = torsion_bound(
            BoundDirection::CerToGamma {
                d: BigUint::from(7u32),
            },
            6,
        )
        .unwrap();
        assert_eq!(r.gamma3_bound, BigUint::from(14u32));
        assert!(matches!(
            torsion_bound(
                BoundDirection::CerToGamma {
                    d: BigUint::one()
                },
                1
            ),
            Err(CycError::InvalidGenus(_))
        ));
    }
}
