//! Permutations in one-line notation, `p[i]` being the image of `i`.
//!
//! Products compose as functions: `(p * q)(i) = p(q(i))`.

pub type Perm = Vec<usize>;

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Perm = (0..n).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Position of `p` in [`all_perms`] order (Lehmer code).
pub fn perm_index(p: &[usize]) -> usize {
    let n = p.len();
    let mut idx = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        idx = idx * (n - i) + smaller;
    }
    idx
}

pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// The adjacent transposition exchanging `k` and `k + 1` in `0..n`.
pub fn adjacent(n: usize, k: usize) -> Perm {
    let mut p: Perm = (0..n).collect();
    p.swap(k, k + 1);
    p
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Number of standard Young tableaux of shape `lambda` (hook length formula).
pub fn hook_length_dim(lambda: &[usize]) -> usize {
    let n: usize = lambda.iter().sum();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u128;
        }
    }
    (factorial(n) as u128 / hooks) as usize
}

/// All partitions of `n`, largest parts first, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_and_index_agree() {
        for (i, p) in all_perms(4).iter().enumerate() {
            assert_eq!(perm_index(p), i);
        }
    }

    #[test]
    fn composition_and_inverse() {
        let p = vec![2, 0, 1];
        let q = vec![1, 0, 2];
        assert_eq!(compose(&p, &q), vec![0, 2, 1]);
        assert_eq!(compose(&p, &inverse(&p)), vec![0, 1, 2]);
        assert_eq!(sign(&p), 1);
        assert_eq!(sign(&q), -1);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(hook_length_dim(&[2, 1]), 2);
        assert_eq!(hook_length_dim(&[3, 2]), 5);
        for n in 1..=6 {
            let total: usize = partitions(n).iter().map(|l| hook_length_dim(l).pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }
}
