//! Britton normal forms in G = ⟨Γ, t | t·a·t⁻¹ = α(a), a ∈ A⟩.
//!
//! An element is g₀·t^{ε₁}·c₁·…·t^{εₘ}·cₘ with g₀ ∈ Γ and each cᵢ = (cᵢ, 0)
//! a representative of a right coset A·x. Since A·(q, λ) = A·(q/m(λ), 0)
//! the rational cᵢ alone names the coset. The form is reduced when no
//! t^ε·1·t^{−ε} occurs.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{format_rational, multiplier, shift_map, QElem};
use crate::numeric::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HnnElem {
    pub head: QElem,
    /// (εᵢ, cᵢ): the letter t^{εᵢ} followed by the coset representative (cᵢ, 0).
    pub tail: Vec<(i8, Rational)>,
}

/// x = (0, a)·(c, 0).
fn split(x: &QElem) -> (BTreeMap<i64, i64>, Rational) {
    let c = if x.q.is_zero() {
        Rational::zero()
    } else {
        &x.q / multiplier(&x.lambda)
    };
    (x.lambda.clone(), c)
}

impl HnnElem {
    pub fn identity() -> Self {
        HnnElem {
            head: QElem::identity(),
            tail: Vec::new(),
        }
    }

    pub fn from_base(x: QElem) -> Self {
        HnnElem {
            head: x,
            tail: Vec::new(),
        }
    }

    pub fn stable(k: i64) -> Self {
        let mut w = Self::identity();
        let e = if k < 0 { -1 } else { 1 };
        for _ in 0..k.unsigned_abs() {
            w.push_stable(e);
        }
        w
    }

    /// Number of stable letters in the reduced form.
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn t_exponent(&self) -> i64 {
        self.tail.iter().map(|&(e, _)| e as i64).sum()
    }

    /// True if some t^ε·1·t^{−ε} remains.
    pub fn has_pinch(&self) -> bool {
        self.tail
            .windows(2)
            .any(|w| w[0].1.is_zero() && w[0].0 == -w[1].0)
    }

    /// Right multiplication by an element of Γ. The A-part of each
    /// representative is pushed left through t^ε as α^ε.
    pub fn push_base(&mut self, x: &QElem) {
        let Some(last) = self.tail.last_mut() else {
            self.head = self.head.mul(x);
            return;
        };
        let (mut a, c) = split(&QElem::rational(last.1.clone()).mul(x));
        last.1 = c;
        for j in (0..self.tail.len()).rev() {
            if a.is_empty() {
                return;
            }
            a = shift_map(&a, self.tail[j].0 as i64);
            let pushed = QElem {
                q: Rational::zero(),
                lambda: a,
            };
            if j == 0 {
                self.head = self.head.mul(&pushed);
                return;
            }
            let prev = &mut self.tail[j - 1].1;
            let (a_next, c) = split(&QElem::rational(prev.clone()).mul(&pushed));
            *prev = c;
            a = a_next;
        }
    }

    /// Right multiplication by t^ε, cancelling a pinch if one forms.
    pub fn push_stable(&mut self, e: i8) {
        match self.tail.last() {
            Some((last_e, c)) if c.is_zero() && *last_e == -e => {
                self.tail.pop();
            }
            _ => self.tail.push((e, Rational::zero())),
        }
    }

    pub fn mul(&self, other: &HnnElem) -> HnnElem {
        let mut w = self.clone();
        w.push_base(&other.head);
        for (e, c) in &other.tail {
            w.push_stable(*e);
            if !c.is_zero() {
                w.push_base(&QElem::rational(c.clone()));
            }
        }
        w
    }

    pub fn inverse(&self) -> HnnElem {
        let mut w = HnnElem::identity();
        for (e, c) in self.tail.iter().rev() {
            if !c.is_zero() {
                w.push_base(&QElem::rational(-c));
            }
            w.push_stable(-e);
        }
        w.push_base(&self.head.inverse());
        w
    }

    pub(super) fn tokens(&self) -> Vec<String> {
        let mut out = self.head.tokens();
        for (e, c) in &self.tail {
            out.push(if *e > 0 { "t".into() } else { "t^-1".into() });
            if !c.is_zero() {
                out.push(format!("q:{}", format_rational(c)));
            }
        }
        out
    }
}
