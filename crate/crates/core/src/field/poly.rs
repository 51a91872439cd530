//! Dense polynomials over a prime field GF(p), coefficients stored low degree first.
//!
//! Every function keeps its output trimmed (no trailing zero coefficients), so the
//! zero polynomial is the empty vector and structural equality is polynomial equality.

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

pub fn constant(c: u64, p: u64) -> Poly {
    trim(vec![c % p])
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn neg(a: &[u64], p: u64) -> Poly {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Poly {
    trim(a.iter().map(|&x| x * (c % p) % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = inv_mod(b[db], p);
    let mut rem: Poly = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - db];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + db] * lead_inv % p;
        quot[shift] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p - c * bj % p) % p;
            }
        }
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

pub fn monic(a: &[u64], p: u64) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

pub fn derivative(a: &[u64], p: u64) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// All monic polynomials of exact degree `d`, in lexicographic order of
/// their coefficient lists read from high degree to low.
pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        for c in coeffs.iter_mut().take(d) {
            *c = idx % p;
            idx /= p;
        }
        coeffs
    })
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most half the degree of `f`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for g in monic_of_degree(d, p) {
            if divrem(f, &g, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`.
pub fn default_modulus(k: usize, p: u64) -> Poly {
    monic_of_degree(k, p)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

pub fn format(a: &[u64], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            c.to_string()
        } else if c == 1 {
            mono
        } else {
            format!("{c}{mono}")
        };
        terms.push(term);
    }
    terms.join("+")
}

/// Parses the output of [`format`]: `+`/`-` separated terms `c`, `c var`, `c var^e`.
pub fn parse(s: &str, var: &str, p: u64) -> Option<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut out: Poly = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            true
        } else if let Some(r) = rest.strip_prefix('+') {
            if first {
                return None;
            }
            rest = r;
            false
        } else if first {
            false
        } else {
            return None;
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coeff, exp) = parse_term(term, var, p)?;
        let coeff = if negative { (p - coeff) % p } else { coeff };
        if out.len() <= exp {
            out.resize(exp + 1, 0);
        }
        out[exp] = (out[exp] + coeff) % p;
    }
    Some(trim(out))
}

fn parse_term(term: &str, var: &str, p: u64) -> Option<(u64, usize)> {
    if term.is_empty() {
        return None;
    }
    match term.find(var) {
        None => Some((parse_residue(term, p)?, 0)),
        Some(pos) => {
            let coeff_part = term[..pos].trim_end_matches('*');
            let coeff = if coeff_part.is_empty() {
                1
            } else {
                parse_residue(coeff_part, p)?
            };
            let tail = &term[pos + var.len()..];
            let exp = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')?.parse().ok()?
            };
            Some((coeff, exp))
        }
    }
}

fn parse_residue(s: &str, p: u64) -> Option<u64> {
    s.parse::<u128>().ok().map(|v| (v % p as u128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let p = 5;
        let a = vec![1, 2, 3, 4];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
    }

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 1, 0, 1]);
    }

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&[0, 0, 3], "b"), "3b^2");
        assert_eq!(format(&[1, 1], "t"), "t+1");
        assert_eq!(format(&[], "t"), "0");
        assert_eq!(parse("t^2-1", "t", 3), Some(vec![2, 0, 1]));
        assert_eq!(parse("2t+t", "t", 3), Some(vec![]));
        assert_eq!(parse("t^", "t", 3), None);
    }

    #[test]
    fn gcd_is_monic() {
        let p = 3;
        // (t-1)(t+1) and 2(t-1)
        let a = vec![2, 0, 1];
        let b = vec![1, 2];
        assert_eq!(gcd(&a, &b, p), vec![2, 1]);
    }
}
