use std::cmp::Ordering;

/// Exponent vector, one entry per variable of the owning table.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest variable, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Largest `k` with `self^k | other`. Unbounded (`u32::MAX`) for the unit
    /// monomial.
    pub fn max_power_in(&self, other: &Monomial) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, _)| **a > 0)
            .map(|(a, b)| b / a)
            .min()
            .unwrap_or(u32::MAX)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn with_exp(&self, i: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e[i] = exp;
        Monomial(e)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_then_lex() {
        // table (u, S, K, f, c)
        let us = Monomial::from_exponents(vec![1, 1, 0, 0, 0]);
        let fk = Monomial::from_exponents(vec![0, 0, 1, 1, 0]);
        let f3 = Monomial::from_exponents(vec![0, 0, 0, 3, 0]);
        assert!(us > fk);
        assert!(f3 > us);
        let u = Monomial::var(5, 0, 1);
        let s = Monomial::var(5, 1, 1);
        assert!(u > s);
    }

    #[test]
    fn division_helpers() {
        let lhs = Monomial::from_exponents(vec![1, 1, 0]);
        let m = Monomial::from_exponents(vec![2, 3, 1]);
        assert_eq!(lhs.max_power_in(&m), 2);
        assert_eq!(
            lhs.pow(2).quotient_of(&m),
            Some(Monomial::from_exponents(vec![0, 1, 1]))
        );
        assert_eq!(lhs.quotient_of(&Monomial::var(3, 0, 4)), None);
    }
}
