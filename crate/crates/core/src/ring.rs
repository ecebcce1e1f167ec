//! The small ring interface the matrix layer is generic over.

use crate::field::FieldElement;

/// Commutative ring operations plus the p-power Frobenius.
///
/// Instances carry their own ambient structure (field handle, precision
/// window, marked curve), so "constants" are derived from an existing
/// value with `zero_like`/`one_like` rather than conjured from thin air.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Coefficientwise / elementwise p-power map.
    fn frobenius(&self) -> Self;
    /// The characteristic p of the ambient ring.
    fn characteristic(&self) -> u64;
    /// Whether two values live in the same ambient ring (same field,
    /// same curve, ...). Mixed-ring arithmetic is a caller bug.
    fn same_ring(&self, other: &Self) -> bool;
}

/// Rings in which `x^p - x = a` can be solved and solutions shifted by
/// prime-field scalars; this is what the equivalence decision needs.
pub trait ArtinSchreierRing: Ring {
    /// Canonical solution of `x^p - x = self`, if one exists.
    fn artin_schreier_preimage(&self) -> Option<Self>;
    /// `self + k` with `k` an integer mod p.
    fn add_prime_scalar(&self, k: u64) -> Self;
    /// Equality on the jointly known part (exact equality for field
    /// elements, agreement up to the common precision for series).
    fn agrees_with(&self, other: &Self) -> bool;
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }

    fn one_like(&self) -> Self {
        self.field().one()
    }

    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn frobenius(&self) -> Self {
        FieldElement::frobenius(self)
    }

    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
}

impl ArtinSchreierRing for FieldElement {
    fn artin_schreier_preimage(&self) -> Option<Self> {
        FieldElement::artin_schreier_preimage(self)
    }

    fn add_prime_scalar(&self, k: u64) -> Self {
        self + &self.field().from_u64(k)
    }

    fn agrees_with(&self, other: &Self) -> bool {
        self == other
    }
}
