//! Rabin's irreducibility test over a prime field on flat coefficient
//! vectors. The Frobenius map `h ↦ h^p mod f` is linear over `F_p`, so it is
//! applied through the matrix whose rows are `x^{pj} mod f`.

use crate::arith::prime_factors;

/// `f` is given by ascending coefficients in `0..p` and must be monic.
pub(crate) fn irreducible_prime(p: u32, f: &[u32]) -> bool {
    let d = f.len() - 1;
    debug_assert_eq!(f[d], 1);
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    if p == 2 && d < 64 {
        let bits = f
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | (u128::from(c & 1) << i));
        return irreducible_gf2(bits, d);
    }
    let ring = Ring {
        p: p as u64,
        f: f[..d].iter().map(|&c| c as u64).collect(),
    };
    let x: Vec<u64> = (0..d).map(|i| u64::from(i == 1)).collect();
    let mut rows = Vec::with_capacity(d);
    let mut row = ring.one();
    for _ in 0..d {
        rows.push(row.clone());
        for _ in 0..p {
            ring.times_x(&mut row);
        }
    }
    let frob = |h: &[u64]| {
        let mut acc = vec![0u64; d];
        for (j, &c) in h.iter().enumerate() {
            if c != 0 {
                for (a, &r) in acc.iter_mut().zip(&rows[j]) {
                    *a += c * r;
                }
            }
        }
        acc.iter().map(|a| a % ring.p).collect::<Vec<_>>()
    };
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(x.clone());
    for i in 1..=d {
        let next = frob(&powers[i - 1]);
        powers.push(next);
    }
    if powers[d] != x {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|s| {
        let mut h = powers[d / s as usize].clone();
        h[1] = (h[1] + ring.p - 1) % ring.p;
        ring.coprime_with_modulus(h)
    })
}

struct Ring {
    p: u64,
    /// Non-leading coefficients of the monic modulus.
    f: Vec<u64>,
}

impl Ring {
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.f.len()];
        v[0] = 1;
        v
    }

    /// `h ← x·h mod f`.
    fn times_x(&self, h: &mut [u64]) {
        let top = h[h.len() - 1];
        h.copy_within(..h.len() - 1, 1);
        h[0] = 0;
        if top != 0 {
            for (c, &fj) in h.iter_mut().zip(&self.f) {
                *c = (*c + (self.p - fj) * top) % self.p;
            }
        }
    }

    #[cfg(test)]
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.f.len();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % self.p;
                }
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c != 0 {
                // x^d ≡ -Σ f_j x^j
                for (j, &fj) in self.f.iter().enumerate() {
                    prod[i - d + j] = (prod[i - d + j] + (self.p - fj) * c) % self.p;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    #[cfg(test)]
    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `gcd(h, f) = 1`, with `h` reduced mod `f`.
    fn coprime_with_modulus(&self, h: Vec<u64>) -> bool {
        let p = self.p;
        let mut a: Vec<u64> = self.f.clone();
        a.push(1);
        let mut b = h;
        trim(&mut b);
        while !b.is_empty() {
            let lead_inv = inv_mod(*b.last().unwrap(), p);
            while a.len() >= b.len() {
                let c = a.last().copied().unwrap() * lead_inv % p;
                let shift = a.len() - b.len();
                for (j, &bj) in b.iter().enumerate() {
                    a[shift + j] = (a[shift + j] + (p - c) * bj % p) % p;
                }
                trim(&mut a);
                if a.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len() == 1
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn irreducible_gf2(f: u128, d: usize) -> bool {
    let reduce = |mut v: u128| {
        for i in (d..2 * d - 1).rev() {
            if v >> i & 1 == 1 {
                v ^= f << (i - d);
            }
        }
        v
    };
    // rows[j] = x^{2j} mod f
    let mut rows = Vec::with_capacity(d);
    let mut row = 1u128;
    for _ in 0..d {
        rows.push(row);
        row = reduce(row << 2);
    }
    let frob = |h: u128| {
        let mut acc = 0u128;
        let mut h = h;
        while h != 0 {
            let j = h.trailing_zeros() as usize;
            acc ^= rows[j];
            h &= h - 1;
        }
        acc
    };
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(2u128);
    for i in 1..=d {
        let next = frob(powers[i - 1]);
        powers.push(next);
    }
    if powers[d] != 2 {
        return false;
    }
    prime_factors(d as u64)
        .into_iter()
        .all(|s| gcd_gf2(powers[d / s as usize] ^ 2, f) == 1)
}

fn gcd_gf2(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let db = 127 - b.leading_zeros();
        while a != 0 && 127 - a.leading_zeros() >= db {
            a ^= b << (127 - a.leading_zeros() - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
