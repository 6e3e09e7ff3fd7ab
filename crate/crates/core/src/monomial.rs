//! Dense exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

/// Largest number of ring variables supported by the dense representation.
pub const MAX_VARS: usize = 16;

/// Exponent vector. Slots beyond the ring's variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(index: usize, power: u32) -> Self {
        let mut m = Self::one();
        m.exps[index] = u16::try_from(power).expect("exponent overflow");
        m.deg = power;
        m
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        weights
            .iter()
            .zip(self.exps.iter())
            .map(|(&w, &e)| w as u64 * e as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bitmask of variables with nonzero exponent.
    #[inline]
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for (a, b) in out.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        out.deg -= self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Self::one();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Self::one();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Product of the variables in the support.
    pub fn radical(&self) -> Monomial {
        let mut out = Self::one();
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                out.exps[i] = 1;
                out.deg += 1;
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut out = Self::one();
        for i in 0..MAX_VARS {
            out.exps[i] = u16::try_from(self.exps[i] as u32 * k).expect("exponent overflow");
        }
        out.deg = self.deg * k;
        out
    }

    /// Drops variable `var`, returning its exponent.
    pub fn without(&self, var: usize) -> (Monomial, u32) {
        let mut out = *self;
        let e = out.exps[var] as u32;
        out.exps[var] = 0;
        out.deg -= e;
        (out, e)
    }

    pub(crate) fn set_exp(&mut self, var: usize, e: u32) {
        let old = self.exps[var] as u32;
        self.exps[var] = u16::try_from(e).expect("exponent overflow");
        self.deg = self.deg - old + e;
    }

    /// Total degree restricted to the variables in `mask`.
    pub fn masked_degree(&self, mask: u32) -> u32 {
        let mut d = 0;
        for i in 0..MAX_VARS {
            if mask & (1 << i) != 0 {
                d += self.exps[i] as u32;
            }
        }
        d
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Monomial orders. All are multiplicative well-orders with `1` minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Ranks monomials by their degree in the block variables first, then
    /// by graded reverse lexicographic order. Any monomial involving a block
    /// variable is larger than every block-free monomial.
    BlockElimination { block: u32 },
}

impl MonomialOrder {
    pub fn elimination(vars: &[usize]) -> Self {
        let block = vars.iter().fold(0u32, |m, &v| m | (1 << v));
        MonomialOrder::BlockElimination { block }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::BlockElimination { block } => a
                .masked_degree(*block)
                .cmp(&b.masked_degree(*block))
                .then_with(|| grevlex(a, b)),
        }
    }
}

#[inline]
fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for i in 0..MAX_VARS {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `deg` in `nvars` variables, in lex-descending order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial::one());
            }
            return;
        }
        if i == n - 1 {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    rec(0, deg, &mut exps, &mut out);
    out
}
