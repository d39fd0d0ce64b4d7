//! Small permutation utilities on `{0..n-1}`.

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

pub fn is_permutation(row: &[usize], n: usize) -> bool {
    if row.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    row.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Multiplicative order of a permutation.
pub fn order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut lcm = 1;
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            lcm = lcm / gcd(lcm, len) * len;
        }
    }
    lcm
}

/// Cycle notation such as `(0 1 2)(3 4)`, fixed points omitted; the
/// identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i.to_string());
            i = p[i];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_listing() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn inverse_and_order() {
        let p = vec![1, 2, 0, 4, 3];
        assert_eq!(inverse(&p), vec![2, 0, 1, 4, 3]);
        assert_eq!(order(&p), 6);
        assert!(is_permutation(&p, 5));
        assert!(!is_permutation(&[0, 0], 2));
        assert!(!is_permutation(&[0, 2], 2));
    }

    #[test]
    fn cycles_round_trip() {
        assert_eq!(cycle_notation(&[0, 1]), "()");
        assert_eq!(cycle_notation(&[1, 2, 0, 4, 3]), "(0 1 2)(3 4)");
        for p in permutations(4) {
            let text = cycle_notation(&p);
            assert_eq!(crate::lyubashenko::permutation_from_cycles(&text, 4).unwrap(), p);
        }
    }
}
