//! Small integer helpers.

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `n = p^k` for some `k ≥ 0`.
pub fn is_power_of(mut n: usize, p: usize) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// `n = p^k` for a prime `p` and `k ≥ 0`; 1 counts.
pub fn is_prime_power(n: usize) -> bool {
    n == 1 || prime_factors(n).len() == 1
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Positive divisors, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_prime(13) && !is_prime(1) && !is_prime(9));
        assert!(is_power_of(8, 2) && is_power_of(1, 3) && !is_power_of(12, 2));
        assert!(is_prime_power(1) && is_prime_power(9) && !is_prime_power(6));
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorial(4), Some(24));
    }
}
