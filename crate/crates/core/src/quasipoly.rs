//! Quasi-polynomials and the constituent coincidence properties.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Field;

/// `Q(t) = f_k(t)` for `t ≡ k (mod ρ)`.
///
/// Constituents are stored for residues `1, 2, …, ρ`; the last one is the
/// residue-0 constituent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPolynomial<T> {
    constituents: Vec<Polynomial<T>>,
}

impl<T: Field> QuasiPolynomial<T> {
    /// `constituents[i]` governs residue `i + 1` (the last one residue 0).
    pub fn new(constituents: Vec<Polynomial<T>>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::BadParams("a quasi-polynomial needs period ≥ 1".into()));
        }
        Ok(Self { constituents })
    }

    pub fn polynomial(f: Polynomial<T>) -> Self {
        Self {
            constituents: vec![f],
        }
    }

    pub fn period(&self) -> usize {
        self.constituents.len()
    }

    /// Constituents in residue order `1..=ρ`.
    pub fn constituents(&self) -> &[Polynomial<T>] {
        &self.constituents
    }

    /// Constituent for residue `k mod ρ`.
    pub fn constituent(&self, k: usize) -> &Polynomial<T> {
        let rho = self.period();
        let r = k % rho;
        &self.constituents[if r == 0 { rho - 1 } else { r - 1 }]
    }

    pub fn evaluate(&self, t: u64) -> T {
        let rho = self.period() as u64;
        let f = self.constituent((t % rho) as usize);
        f.eval(&T::from_i64(t as i64))
    }

    /// The same function written with period `k · ρ`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1, "inflation factor must be positive");
        let rho = self.period() * k;
        Self {
            constituents: (1..=rho).map(|r| self.constituent(r).clone()).collect(),
        }
    }

    /// Reduction to the smallest period; periods are multiples of it, so
    /// divisors are scanned in increasing order.
    pub fn minimal_period(&self) -> Self {
        let rho = self.period();
        for p in (1..=rho).filter(|p| rho % p == 0) {
            if (1..=rho).all(|r| self.constituent(r) == self.constituent(r % p)) {
                return Self {
                    constituents: (1..=p).map(|r| self.constituent(r).clone()).collect(),
                };
            }
        }
        unreachable!("ρ itself is always a period")
    }

    /// First residue `k` with `f_k ≠ f_{ρ−k}`, as `(k, ρ − k)`.
    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        let rho = self.period();
        (1..rho)
            .find(|&k| self.constituent(k) != self.constituent(rho - k))
            .map(|k| (k, rho - k))
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violation().is_none()
    }

    /// First pair `k < ℓ` with `gcd(ρ,k) = gcd(ρ,ℓ)` but `f_k ≠ f_ℓ`.
    pub fn gcd_violation(&self) -> Option<(usize, usize)> {
        let rho = self.period();
        for k in 1..=rho {
            let g = rho.gcd(&k);
            for l in k + 1..=rho {
                if rho.gcd(&l) == g && self.constituent(k) != self.constituent(l) {
                    return Some((k, l));
                }
            }
        }
        None
    }

    pub fn has_gcd_property(&self) -> bool {
        self.gcd_violation().is_none()
    }

    /// GCD-property evaluated on the period `k · ρ`.
    pub fn gcd_property_period_stability(&self, k: usize) -> bool {
        self.inflate(k).has_gcd_property()
    }
}
