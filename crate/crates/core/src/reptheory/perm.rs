//! Permutations as image vectors on {0, …, m-1}.
//!
//! Products compose right to left: `(a * b)(i) = a(b(i))`.

use std::fmt::Write as _;

pub type Perm = Vec<u16>;

pub fn identity(m: usize) -> Perm {
    (0..m as u16).collect()
}

pub fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u16;
    }
    out
}

pub fn is_permutation(a: &[u16]) -> bool {
    let mut seen = vec![false; a.len()];
    for &j in a {
        let j = j as usize;
        if j >= a.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

pub fn fixed_points(a: &[u16]) -> usize {
    a.iter().enumerate().filter(|(i, &j)| *i == j as usize).count()
}

pub fn sign(a: &[u16]) -> i64 {
    let mut seen = vec![false; a.len()];
    let mut s = 1;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i] as usize;
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; identity is "()".
pub fn to_cycles(a: &[u16]) -> String {
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{}", i + 1);
            i = a[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parse 1-based cycle notation into a permutation of the given degree.
pub fn from_cycles(degree: usize, s: &str) -> Option<Perm> {
    let mut p = identity(degree);
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(')?;
        let close = body_start.find(')')?;
        let body = &body_start[..close];
        rest = body_start[close + 1..].trim_start();
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok())
            .collect::<Option<Vec<_>>>()?;
        if pts.iter().any(|&x| x == 0 || x > degree) {
            return None;
        }
        // apply this cycle after what we have so far (left-to-right reading)
        let mut c = identity(degree);
        for (k, &x) in pts.iter().enumerate() {
            c[x - 1] = (pts[(k + 1) % pts.len()] - 1) as u16;
        }
        p = compose(&c, &p);
    }
    if is_permutation(&p) {
        Some(p)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let p = from_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p, vec![1, 2, 0, 4, 3]);
        assert_eq!(to_cycles(&p), "(1 2 3)(4 5)");
        assert_eq!(to_cycles(&identity(3)), "()");
        assert_eq!(sign(&p), -1);
        assert_eq!(compose(&p, &inverse(&p)), identity(5));
    }
}
