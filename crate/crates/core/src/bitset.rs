//! Small helpers over `FixedBitSet`.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

/// Compares two sets as their ascending element lists would compare
/// lexicographically. Both sets must have the same capacity.
pub fn cmp_lex(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    let bits = usize::BITS as usize;
    let first_diff = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .enumerate()
        .find_map(|(i, (x, y))| {
            let d = x ^ y;
            (d != 0).then(|| i * bits + d.trailing_zeros() as usize)
        });
    let Some(d) = first_diff else {
        return a.len().cmp(&b.len());
    };
    // the lists agree below d; the one holding d is smaller unless the
    // other has run out of elements
    let (other, holder_smaller) = if a.contains(d) {
        (b, Ordering::Less)
    } else {
        (a, Ordering::Greater)
    };
    if other.maximum().is_some_and(|m| m > d) {
        holder_smaller
    } else {
        holder_smaller.reverse()
    }
}

pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(capacity);
    set.extend(ids);
    set
}
