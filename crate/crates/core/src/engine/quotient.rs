use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::group::MatrixGroup;
use super::space::Element;
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest coset count materialised.
pub const MAX_INDEX: u128 = 1 << 16;

/// Left cosets of `H` in `G`, with the abelian invariants of `G/H` when it is an abelian group.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    index: u128,
    representatives: Vec<Element>,
    normal: bool,
    abelian: Option<bool>,
    orders: Option<Vec<u64>>,
    invariants: Option<Vec<u64>>,
}

impl CosetSpace {
    /// Builds `G/H`. `H` must be a subgroup of `G` in the same space.
    pub fn new(g: &MatrixGroup, h: &MatrixGroup) -> Result<Self> {
        if !alloc::sync::Arc::ptr_eq(g.space(), h.space()) && g.space().family() != h.space().family() {
            return Err(Error::FamilyMismatch);
        }
        let (go, ho) = (g.order(), h.order());
        if ho == 0 || go % ho != 0 {
            return Err(Error::Precondition(format!("|H| = {ho} does not divide |G| = {go}")));
        }
        if h.generators().iter().any(|x| !g.contains(&x.m)) {
            return Err(Error::Precondition("H is not contained in G".into()));
        }
        let index = go / ho;
        if index > MAX_INDEX {
            return Err(Error::Unsupported(format!("quotient of index {index}")));
        }
        let space = g.space();
        let normal = g
            .generators()
            .iter()
            .all(|s| h.generators().iter().all(|x| h.contains(&space.conjugate(s, x).m)));

        let mut q = CosetSpace {
            index,
            representatives: alloc::vec![space.identity_element()],
            normal,
            abelian: None,
            orders: None,
            invariants: None,
        };
        let mut k = 0;
        while k < q.representatives.len() && (q.representatives.len() as u128) < index {
            for s in g.generators() {
                let x = space.mul_elements(s, &q.representatives[k]);
                if q.class_of(h, &x.m).is_none() {
                    q.representatives.push(x);
                }
            }
            k += 1;
        }
        if q.representatives.len() as u128 != index {
            return Err(Error::Precondition(format!(
                "found {} cosets, expected {index}",
                q.representatives.len()
            )));
        }
        if normal {
            let gens = g.generators();
            let abelian = gens
                .iter()
                .enumerate()
                .all(|(a, x)| gens[a + 1..].iter().all(|y| h.contains(&space.commutator(x, y).m)));
            q.abelian = Some(abelian);
            if abelian {
                let orders: Vec<u64> = q.representatives.iter().map(|r| coset_order(h, r, index)).collect();
                q.invariants = Some(invariant_factors(&orders)?);
                q.orders = Some(orders);
            }
        }
        Ok(q)
    }

    pub fn index(&self) -> u128 {
        self.index
    }

    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// `None` when `H` is not normal.
    pub fn is_abelian(&self) -> Option<bool> {
        self.abelian
    }

    /// Order of each coset, for abelian quotients.
    pub fn orders(&self) -> Option<&[u64]> {
        self.orders.as_deref()
    }

    /// Invariant factors `d₁ | d₂ | …`, each > 1; empty for the trivial group.
    pub fn invariants(&self) -> Option<&[u64]> {
        self.invariants.as_deref()
    }

    /// Index of the coset `mH`; `None` if `m` lies in none of them.
    pub fn class_of(&self, h: &MatrixGroup, m: &[u16]) -> Option<usize> {
        let space = h.space();
        self.representatives
            .iter()
            .position(|r| h.contains(&space.mul(&r.inv, m)))
    }
}

fn coset_order(h: &MatrixGroup, r: &Element, index: u128) -> u64 {
    let space = h.space();
    let mut x = r.m.clone();
    let mut k = 1u64;
    while !h.contains(&x) && (k as u128) < index {
        x = space.mul(&x, &r.m);
        k += 1;
    }
    k
}

/// Invariant factors of a finite abelian group from the multiset of its element orders.
///
/// For each prime `p`, the number of elements killed by `p^k` is `p^{Σ min(eᵢ, k)}`,
/// which recovers the exponents `eᵢ` of the `p`-primary part.
pub fn invariant_factors(orders: &[u64]) -> Result<Vec<u64>> {
    let n = orders.len() as u64;
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // primary exponents per prime, descending
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &p in &primes {
        debug_assert!(is_prime(p));
        let mut prev = 0u32; // log_p of elements killed by p^{k-1}
        let mut ranks = Vec::new(); // number of cyclic factors with exponent ≥ k
        let mut k = 1u32;
        loop {
            let pk = p.checked_pow(k).ok_or_else(|| Error::Unsupported("exponent overflow".into()))?;
            let killed = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let log = log_exact(killed, p)
                .ok_or_else(|| Error::Precondition("element orders do not come from an abelian group".into()))?;
            let rank = log - prev;
            if rank == 0 {
                break;
            }
            ranks.push(rank);
            prev = log;
            k += 1;
        }
        let mut exps = Vec::new();
        for (k, &rank) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..rank - next {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        primary.insert(p, exps);
    }
    let width = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = alloc::vec![1u64; width];
    for (p, exps) in &primary {
        for (slot, e) in exps.iter().enumerate() {
            factors[slot] *= p.pow(*e);
        }
    }
    factors.reverse();
    if factors.iter().product::<u64>() != n {
        return Err(Error::Precondition("element orders do not come from an abelian group".into()));
    }
    Ok(factors)
}

fn log_exact(mut x: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        k += 1;
    }
    Some(k)
}
