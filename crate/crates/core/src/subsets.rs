//! Bitmask helpers for exhaustive enumeration over small project and voter sets.

use std::collections::BTreeSet;

use crate::rational::Rational;

pub(crate) fn mask_of(set: &BTreeSet<usize>) -> u64 {
    set.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

pub(crate) fn set_of(mask: u64) -> BTreeSet<usize> {
    bits(mask).collect()
}

/// Indices of the set bits, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

/// Sums of `values` over every subset of `0..values.len()`, indexed by mask.
pub(crate) fn additive_table(values: &[Rational]) -> Vec<Rational> {
    let size = 1usize << values.len();
    let mut table = Vec::with_capacity(size);
    table.push(Rational::zero());
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = &table[mask & (mask - 1)];
        table.push(rest + &values[low]);
    }
    table
}

/// Every submask of `mask`, including `mask` itself and zero, in decreasing order.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 { None } else { Some((current - 1) & mask) };
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_direct_sums() {
        let values: Vec<Rational> = (1..=4).map(Rational::from_integer).collect();
        let table = additive_table(&values);
        for mask in 0u64..16 {
            let direct: Rational = bits(mask).map(|i| &values[i]).sum();
            assert_eq!(table[mask as usize], direct);
        }
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u64> = submasks(0b101).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(set_of(mask_of(&[0, 3, 5].into_iter().collect())), [0, 3, 5].into_iter().collect());
    }
}
