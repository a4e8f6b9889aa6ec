//! Factorization over Q: modular factorization, quadratic Hensel lifting and
//! subset recombination.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::tower::Fe;
use super::upoly::UPoly;
use super::Rational;

type Zp = Vec<u64>;

fn zp_trim(a: &mut Zp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn zp_sub(a: &[u64], b: &[u64], p: u64) -> Zp {
    let n = a.len().max(b.len());
    let mut out: Zp = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    zp_trim(&mut out);
    out
}

fn zp_mul(a: &[u64], b: &[u64], p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    zp_trim(&mut out);
    out
}

fn zp_divrem(a: &[u64], b: &[u64], p: u64) -> (Zp, Zp) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    zp_trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let c = mulmod(lead, inv, p);
        let off = r.len() - db;
        for j in 0..db {
            r[off + j] = (r[off + j] + p - mulmod(c, b[j], p)) % p;
        }
        q[off] = c;
    }
    zp_trim(&mut r);
    zp_trim(&mut q);
    (q, r)
}

fn zp_monic(a: &[u64], p: u64) -> Zp {
    let inv = invmod(*a.last().unwrap(), p);
    a.iter().map(|&x| mulmod(x, inv, p)).collect()
}

fn zp_gcd(a: &[u64], b: &[u64], p: u64) -> Zp {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    zp_trim(&mut x);
    zp_trim(&mut y);
    while !y.is_empty() {
        let r = zp_divrem(&x, &y, p).1;
        x = core::mem::replace(&mut y, r);
    }
    if x.is_empty() {
        x
    } else {
        zp_monic(&x, p)
    }
}

/// (g, s, t) with s·a + t·b = g monic.
fn zp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Zp, Zp, Zp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Zp, Zp) = (vec![1], vec![]);
    let (mut t0, mut t1): (Zp, Zp) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let s2 = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t2 = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    let inv = invmod(*r0.last().unwrap(), p);
    let sc = |v: &Zp| -> Zp {
        let mut o: Zp = v.iter().map(|&x| mulmod(x, inv, p)).collect();
        zp_trim(&mut o);
        o
    };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn zp_powmod_big(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Zp {
    let mut acc: Zp = vec![1];
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = zp_divrem(&zp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = zp_divrem(&zp_mul(&acc, base, p), m, p).1;
        }
    }
    acc
}

fn zp_derivative(a: &[u64], p: u64) -> Zp {
    let mut out: Zp = a.iter().enumerate().skip(1).map(|(i, &x)| mulmod(x, i as u64 % p, p)).collect();
    zp_trim(&mut out);
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: Zp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = zp_powmod_big(&h, &BigUint::from(p), &f, p);
        let g = zp_gcd(&f, &zp_sub(&h, &x, p), p);
        if g.len() > 1 {
            f = zp_divrem(&f, &g, p).0;
            h = zp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Splits a product of distinct irreducibles of degree d.
fn equal_degree(g: &[u64], d: usize, p: u64, out: &mut Vec<Zp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    let mut trial = 0u64;
    loop {
        // Deterministic probes z + a, then z^2 + z + a.
        let probe: Zp = if trial < p {
            vec![trial, 1]
        } else {
            vec![trial % p, 1, 1]
        };
        trial += 1;
        let mut t = zp_powmod_big(&probe, &e, g, p);
        t = zp_sub(&t, &[1], p);
        let h = zp_gcd(g, &t, p);
        if h.len() > 1 && h.len() < g.len() {
            let other = zp_divrem(g, &h, p).0;
            equal_degree(&h, d, p, out);
            equal_degree(&other, d, p, out);
            return;
        }
        assert!(trial < 4 * p + 64, "equal-degree splitting failed");
    }
}

fn reduce(f: &[BigInt], p: u64) -> Zp {
    let pb = BigInt::from(p);
    let mut out: Zp = f.iter().map(|a| a.mod_floor(&pb).to_u64().unwrap()).collect();
    zp_trim(&mut out);
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn sym(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zpoly_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|x| x.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zpoly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn zpoly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

/// Division by a monic polynomial modulo m.
fn zpoly_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = zpoly_mod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let off = r.len() - db;
        for j in 0..db {
            r[off + j] = (&r[off + j] - &lead * &b[j]).mod_floor(m);
        }
        q[off] = lead;
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    (q, r)
}

fn lift(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts f ≡ g·h (mod p) to modulus `target` with g, h monic.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, target: &BigInt) -> (Vec<BigInt>, Vec<BigInt>, BigInt) {
    let (one, s, t) = zp_xgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift(g), lift(h), lift(&s), lift(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        m = &m * &m;
        let e = zpoly_mod(&zpoly_sub(f, &zpoly_mul(&g, &h)), &m);
        let (q, r) = zpoly_divrem_monic(&zpoly_mul(&s, &e), &h, &m);
        let g2 = zpoly_mod(&zpoly_add(&zpoly_add(&g, &zpoly_mul(&t, &e)), &zpoly_mul(&q, &g)), &m);
        let h2 = zpoly_mod(&zpoly_add(&h, &r), &m);
        let b = zpoly_mod(
            &zpoly_sub(&zpoly_add(&zpoly_mul(&s, &g2), &zpoly_mul(&t, &h2)), &[BigInt::one()]),
            &m,
        );
        let (c, d) = zpoly_divrem_monic(&zpoly_mul(&s, &b), &h2, &m);
        let s2 = zpoly_mod(&zpoly_sub(&s, &d), &m);
        let t2 = zpoly_mod(&zpoly_sub(&zpoly_sub(&t, &zpoly_mul(&t, &b)), &zpoly_mul(&c, &g2)), &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
    }
    (g, h, m)
}

fn hensel_multi(f: &[BigInt], facs: &[Zp], p: u64, target: &BigInt, out: &mut Vec<Vec<BigInt>>) -> BigInt {
    if facs.len() == 1 {
        let m = {
            let mut m = BigInt::from(p);
            while &m < target {
                m = &m * &m;
            }
            m
        };
        out.push(zpoly_mod(f, &m));
        return m;
    }
    let mid = facs.len() / 2;
    let prod = |fs: &[Zp]| fs.iter().fold(vec![1u64], |acc, x| zp_mul(&acc, x, p));
    let (g0, h0) = (prod(&facs[..mid]), prod(&facs[mid..]));
    let (g, h, m) = hensel_pair(f, &g0, &h0, p, target);
    hensel_multi(&g, &facs[..mid], p, target, out);
    hensel_multi(&h, &facs[mid..], p, target, out);
    m
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let c = content(a);
    let mut out: Vec<BigInt> = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.sign() == Sign::Minus) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    out
}

/// Exact quotient a / b over Z, or None.
fn zpoly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let (c, rem) = lead.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let off = r.len() - db;
        for j in 0..db {
            r[off + j] -= &c * &b[j];
        }
        q[off] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Irreducible factors over Z of a primitive square-free polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut best: Option<(u64, Vec<(Zp, usize)>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        let fpm = zp_monic(&fp, p);
        if zp_gcd(&fpm, &zp_derivative(&fpm, p), p).len() != 1 {
            continue;
        }
        let dd = distinct_degree(&fpm, p);
        let count: usize = dd.iter().map(|(g, d)| (g.len() - 1) / d).sum();
        if count == 1 {
            return vec![f.to_vec()];
        }
        let better = best.as_ref().is_none_or(|(_, b)| {
            count < b.iter().map(|(g, d)| (g.len() - 1) / d).sum::<usize>()
        });
        if better {
            best = Some((p, dd));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, dd) = best.unwrap();
    let mut modular = Vec::new();
    for (g, d) in &dd {
        equal_degree(g, *d, p, &mut modular);
    }
    modular.sort();

    // Landau-Mignotte bound for factors of lc·f.
    let norm2: BigInt = f.iter().map(|a| a * a).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let target = bound * 2 + 1u32;
    let fm = {
        let mut m = BigInt::from(p);
        while m < target {
            m = &m * &m;
        }
        m
    };
    let lcinv = mod_inverse(&lc, &fm).expect("leading coefficient is a unit mod p");
    let monic_f: Vec<BigInt> = f.iter().map(|a| (a * &lcinv).mod_floor(&fm)).collect();
    let mut lifted = Vec::new();
    let m = hensel_multi(&monic_f, &modular, p, &target, &mut lifted);
    debug_assert_eq!(m, fm);

    let mut result = Vec::new();
    let mut cur = f.to_vec();
    let mut pool = lifted;
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        let idx: Vec<usize> = (0..pool.len()).collect();
        for subset in combinations(&idx, s) {
            let b = cur.last().unwrap().clone();
            let mut g = vec![b.clone()];
            for &i in &subset {
                g = zpoly_mod(&zpoly_mul(&g, &pool[i]), &m);
            }
            let g: Vec<BigInt> = g.iter().map(|c| sym(c, &m)).collect();
            let g = primitive(&g);
            if let Some(q) = zpoly_div_exact(&cur, &g) {
                result.push(g);
                cur = primitive(&q);
                let mut k = 0;
                pool.retain(|_| {
                    let keep = !subset.contains(&k);
                    k += 1;
                    keep
                });
                continue 'outer;
            }
        }
        s += 1;
    }
    result.push(cur);
    result
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Primitive integer polynomial associated to a rational one.
pub(crate) fn to_integer(f: &UPoly) -> Vec<BigInt> {
    let den = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients").denom().clone())
        .fold(BigInt::one(), |a, d| a.lcm(&d));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    primitive(&ints)
}

pub(crate) fn from_integer(f: &[BigInt]) -> UPoly {
    UPoly::new(f.iter().map(|a| Fe::Q(Rational::from_integer(a.clone()))).collect()).monic()
}

/// Monic irreducible factors of a square-free rational polynomial.
pub(crate) fn factor_squarefree_q(f: &UPoly) -> Vec<UPoly> {
    if f.deg() < 1 {
        return Vec::new();
    }
    let mut out: Vec<UPoly> = Vec::new();
    let ints = to_integer(f);
    let v = ints.iter().position(|a| !a.is_zero()).unwrap();
    if v > 0 {
        out.push(UPoly::from_ints(&[0, 1]));
    }
    let rest = &ints[v..];
    if rest.len() > 1 {
        out.extend(zassenhaus(rest).iter().map(|g| from_integer(g)));
    }
    out.sort();
    out
}

fn big_primes() -> impl Iterator<Item = u64> {
    (1u64..(1 << 30)).rev().filter(|&n| n % 2 == 1).filter(|&n| {
        (3..).step_by(2).take_while(|d: &u64| d * d <= n).all(|d| n % d != 0)
    })
}

/// Monic gcd over Q by gcds modulo primes and Chinese remaindering.
pub(crate) fn gcd_q(a: &UPoly, b: &UPoly) -> UPoly {
    let (fa, fb) = (to_integer(a), to_integer(b));
    let lcg = fa.last().unwrap().gcd(fb.last().unwrap());
    let mut deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in big_primes() {
        let pb = BigInt::from(p);
        if fa.last().unwrap().mod_floor(&pb).is_zero() || fb.last().unwrap().mod_floor(&pb).is_zero() {
            continue;
        }
        let g = zp_gcd(&reduce(&fa, p), &reduce(&fb, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return UPoly::one();
        }
        if d > deg {
            continue;
        }
        let s = lcg.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(mulmod(c, s, p))).collect();
        if d < deg {
            deg = d;
            acc = g;
            modulus = pb;
            last = None;
            continue;
        }
        // Chinese remaindering coefficientwise.
        let inv = mod_inverse(&modulus.mod_floor(&pb), &pb).unwrap();
        for (x, r) in acc.iter_mut().zip(g.iter()) {
            let t = ((r - &*x) * &inv).mod_floor(&pb);
            *x += &modulus * t;
        }
        modulus *= &pb;
        let cand: Vec<BigInt> = acc.iter().map(|x| sym(x, &modulus)).collect();
        if last.as_ref() == Some(&cand) {
            let pp = primitive(&cand);
            if zpoly_div_exact(&fa, &pp).is_some() && zpoly_div_exact(&fb, &pp).is_some() {
                return from_integer(&pp);
            }
        }
        last = Some(cand);
    }
    unreachable!()
}

fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    Some(mulmod(n, invmod(d, p), p))
}

fn zp_resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut acc = 1u64;
    loop {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let (da, db) = (a.len() - 1, b.len() - 1);
        if da == 0 {
            return mulmod(acc, powmod(a[0], db as u64, p), p);
        }
        if db == 0 {
            return mulmod(acc, powmod(b[0], da as u64, p), p);
        }
        let r = zp_divrem(&a, &b, p).1;
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if da * db % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = mulmod(acc, powmod(*b.last().unwrap(), (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

/// Primes p > 1000 at which `h` has a simple root a, as (p, a).
fn simple_roots(h: &UPoly) -> impl Iterator<Item = (u64, u64)> + '_ {
    let hi = to_integer(h);
    small_primes().skip_while(|&p| p < 1000).take(200).filter_map(move |p| {
        if hi.last().unwrap().mod_floor(&BigInt::from(p)).is_zero() {
            return None;
        }
        let hp = zp_monic(&reduce(&hi, p), p);
        if zp_gcd(&hp, &zp_derivative(&hp, p), p).len() > 1 {
            return None;
        }
        let xp = zp_sub(&zp_powmod_big(&[0, 1], &BigUint::from(p), &hp, p), &[0, 1], p);
        let lin = zp_gcd(&hp, &xp, p);
        if lin.len() < 2 {
            return None;
        }
        let mut roots = Vec::new();
        equal_degree(&lin, 1, p, &mut roots);
        Some((p, (p - roots[0][0]) % p))
    })
}

/// Σ_j q_j(a) z^j modulo p, or None if a denominator vanishes.
fn specialize(q: &[UPoly], a: u64, p: u64) -> Option<Zp> {
    let mut z: Zp = Vec::with_capacity(q.len());
    for c in q {
        let mut v = 0u64;
        for k in c.coeffs().iter().rev() {
            let k = rational_mod(k.as_rational().expect("rational coefficients"), p)?;
            v = (mulmod(v, a, p) + k) % p;
        }
        z.push(v);
    }
    Some(z)
}

fn distinct_roots(z: &[u64], p: u64) -> usize {
    let g = zp_gcd(z, &zp_derivative(z, p), p);
    z.len() - g.len().max(1)
}

/// Lower bound for the number of distinct roots of Σ_j q_j(α) z^j, where α
/// is a root of the irreducible rational polynomial `h` and the q_j are
/// rational. Works modulo a few primes at which `h` has a simple root; such
/// a reduction keeps the degree and can only merge roots.
pub(crate) fn distinct_roots_lower_bound(h: &UPoly, q: &[UPoly], tries: usize) -> usize {
    let mut best = 0;
    for (p, a) in simple_roots(h).take(tries) {
        let Some(z) = specialize(q, a, p) else { continue };
        if z.last() != Some(&0) && !z.is_empty() {
            best = best.max(distinct_roots(&z, p));
        }
    }
    best
}

/// Lower bound for the number of distinct roots of y ↦ res_z(q(α, z), q(y, z)),
/// with q given by its coefficients in z, computed without the resultant
/// itself. Returns 0 unless the leading coefficient in y provably survives
/// at α.
pub(crate) fn distinct_roots_of_self_resultant(h: &UPoly, q: &[UPoly], tries: usize) -> usize {
    let dz = q.len() - 1;
    let dx = q.iter().map(|c| c.deg().max(0) as usize).max().unwrap_or(0);
    let dy = dx * dz;
    let mut best = 0;
    for (p, a) in simple_roots(h).take(tries) {
        let Some(za) = specialize(q, a, p) else { continue };
        if za.len() != dz + 1 || za[dz] == 0 {
            continue;
        }
        let mut xs: Vec<u64> = Vec::new();
        let mut vals: Vec<u64> = Vec::new();
        let mut t = 0u64;
        let mut ok = true;
        while xs.len() <= dy && t < p {
            match specialize(q, t, p) {
                Some(zt) if zt.len() == dz + 1 && zt[dz] != 0 => {
                    vals.push(zp_resultant(&za, &zt, p));
                    xs.push(t);
                }
                Some(_) => {}
                None => {
                    ok = false;
                    break;
                }
            }
            t += 1;
        }
        if !ok || xs.len() <= dy {
            continue;
        }
        let r = zp_interpolate(&xs, &vals, p);
        if r.len() == dy + 1 {
            best = best.max(distinct_roots(&r, p));
        }
    }
    best
}

fn zp_interpolate(xs: &[u64], ys: &[u64], p: u64) -> Zp {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (coef[i] + p - coef[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            coef[i] = mulmod(num, invmod(den, p), p);
        }
    }
    let mut acc: Zp = Vec::new();
    for i in (0..n).rev() {
        acc = zp_mul(&acc, &[(p - xs[i]) % p, 1], p);
        if acc.is_empty() {
            acc = vec![0];
        }
        acc[0] = (acc[0] + coef[i]) % p;
    }
    zp_trim(&mut acc);
    acc
}
