//! Permutation parity helpers.

/// Parity (+1 / -1) of a permutation of `0..p.len()` given in one-line form.
pub fn parity(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut j = start;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of the permutation that rearranges `from` into `to`.
///
/// Both slices must hold the same distinct elements.
pub fn relative_sign<T: Ord + Copy>(from: &[T], to: &[T]) -> i32 {
    debug_assert_eq!(from.len(), to.len());
    let mut inv = 0usize;
    // rank elements of `from` by their position in `to`
    let pos: Vec<usize> = from.iter().map(|x| to.iter().position(|y| y == x).expect("element missing")).collect();
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting `seq` into increasing order.
pub fn sort_sign<T: Ord>(seq: &[T]) -> i32 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Calls `f` on every permutation of `0..n` together with its sign (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i32)) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1;
    f(&p, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            sign = -sign;
            f(&p, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_basics() {
        assert_eq!(parity(&[0, 1, 2]), 1);
        assert_eq!(parity(&[1, 0, 2]), -1);
        assert_eq!(parity(&[1, 2, 0]), 1);
        assert_eq!(relative_sign(&[5, 7, 9], &[7, 5, 9]), -1);
        assert_eq!(relative_sign(&[5, 7, 9], &[7, 9, 5]), 1);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
    }

    #[test]
    fn heap_enumerates_with_signs() {
        let mut count = 0;
        let mut total = 0;
        for_each_permutation(4, |p, s| {
            count += 1;
            total += s;
            assert_eq!(parity(p), s);
        });
        assert_eq!(count, 24);
        assert_eq!(total, 0);
    }
}
