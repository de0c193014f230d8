use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SemilatticeId;

/// An element of `Z[E^×]` in reduced form: a finitely supported map from
/// nonzero semilattice elements to nonzero integers.
///
/// The zero ring element is the empty map. Keys iterate in the canonical
/// element order of the ambient semilattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLin {
    ambient: SemilatticeId,
    terms: BTreeMap<usize, BigInt>,
}

impl ZLin {
    pub(crate) fn zero(ambient: SemilatticeId) -> Self {
        Self { ambient, terms: BTreeMap::new() }
    }

    pub(crate) fn from_terms(
        ambient: SemilatticeId,
        terms: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Self {
        let mut map: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { ambient, terms: map }
    }

    pub fn ambient(&self) -> SemilatticeId {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &BigInt)> {
        self.terms.iter()
    }

    /// The support `E(x)`: elements with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn coefficient(&self, e: usize) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    fn combine(&self, other: &ZLin, sign: &BigInt) -> ZLin {
        assert_eq!(self.ambient, other.ambient, "ring elements of different semilattices");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(*e).or_default() += c * sign;
        }
        terms.retain(|_, c| !c.is_zero());
        ZLin { ambient: self.ambient, terms }
    }

    /// Sum. Panics if the operands live in different semilattices.
    pub fn add(&self, other: &ZLin) -> ZLin {
        self.combine(other, &BigInt::one())
    }

    /// Difference. Panics if the operands live in different semilattices.
    pub fn sub(&self, other: &ZLin) -> ZLin {
        self.combine(other, &-BigInt::one())
    }

    pub fn neg(&self) -> ZLin {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> ZLin {
        if c.is_zero() {
            return ZLin::zero(self.ambient);
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c)).collect();
        ZLin { ambient: self.ambient, terms }
    }

    /// Relabels every term through `f`, which must be injective on the support.
    pub(crate) fn map_elements(&self, ambient: SemilatticeId, f: impl Fn(usize) -> usize) -> ZLin {
        ZLin::from_terms(ambient, self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    pub fn display_with(&self, label: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let name = label(*e);
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if abs.is_one() {
                out.push_str(&name);
            } else {
                out.push_str(&format!("{abs}·{name}"));
            }
        }
        out
    }
}
