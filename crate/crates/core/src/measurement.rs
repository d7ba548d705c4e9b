//! The algebraic interface shared by finite quantales, arrow-set quantales
//! and linear powerspaces.

use std::fmt::Debug;
use std::hash::Hash;

use serde_json::Value;

/// An involutive quantale presented by finitely many operations on a concrete element type.
///
/// Laws are never assumed by implementors; they are checked by the verification routines.
pub trait InvolutiveQuantale: Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn unit(&self) -> Option<Self::Elem>;
    /// JSON rendering used in witnesses.
    fn describe(&self, a: &Self::Elem) -> Value;

    fn mul3(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(a, b), c)
    }

    /// `b` is a projection: `b = b² = b*`.
    fn is_projection(&self, b: &Self::Elem) -> bool {
        self.mul(b, b) == *b && self.star(b) == *b
    }

    /// Membership in `ℐ_b`: `ss* ≤ b`, `s*s ≤ b`, `sb ≤ s`, `bs ≤ s`.
    /// Returns the name of the first failing condition.
    fn partial_unit_failure(&self, b: &Self::Elem, s: &Self::Elem) -> Option<&'static str> {
        let st = self.star(s);
        if !self.leq(&self.mul(s, &st), b) {
            return Some("ss* ≤ b");
        }
        if !self.leq(&self.mul(&st, s), b) {
            return Some("s*s ≤ b");
        }
        if !self.leq(&self.mul(s, b), s) {
            return Some("sb ≤ s");
        }
        if !self.leq(&self.mul(b, s), s) {
            return Some("bs ≤ s");
        }
        None
    }
}

/// A quantale whose elements can be listed.
pub trait FiniteQuantale: InvolutiveQuantale {
    /// Every element, in a fixed order used for witnesses.
    fn elements(&self) -> Vec<Self::Elem>;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `ℐ(Q) = ℐ_e(Q)`; empty for non-unital quantales.
    fn partial_units(&self) -> Vec<Self::Elem> {
        let Some(e) = self.unit() else { return Vec::new() };
        self.elements().into_iter().filter(|s| self.partial_unit_failure(&e, s).is_none()).collect()
    }
}
