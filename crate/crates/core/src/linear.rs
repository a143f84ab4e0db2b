//! Exact linear algebra over the prime field GF(p).

/// Largest supported field characteristic.
pub const MAX_PRIME: u32 = 97;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat: a^(p-2)
    let mut base = (a % p) as u64;
    let mut exp = p - 2;
    let mut acc = 1u64;
    let p = p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u32
}

/// An incrementally built row-echelon basis of a subspace of GF(p)^d.
///
/// Each stored vector is normalized so that its pivot entry is 1 and every
/// other stored vector is zero at that pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    prime: u32,
    vectors: Vec<(usize, Vec<u32>)>,
}

impl EchelonBasis {
    pub fn new(prime: u32) -> Self {
        EchelonBasis {
            prime,
            vectors: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.prime as u64;
        let mut w: Vec<u32> = v.iter().map(|&x| x % self.prime).collect();
        for (pivot, b) in &self.vectors {
            let c = w[*pivot] as u64;
            if c == 0 {
                continue;
            }
            for (wi, &bi) in w.iter_mut().zip(b) {
                *wi = ((*wi as u64 + p * p - c * bi as u64) % p) as u32;
            }
        }
        w
    }

    /// Whether `v` lies in the span of the basis.
    pub fn spans(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false (and leaves the basis unchanged) if it was
    /// already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = self.reduce(v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.prime as u64;
        let scale = inv_mod(w[pivot], self.prime) as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * scale % p) as u32;
        }
        // keep the basis fully reduced at every pivot
        for (_, b) in self.vectors.iter_mut() {
            let c = b[pivot] as u64;
            if c == 0 {
                continue;
            }
            for (bi, &wi) in b.iter_mut().zip(&w) {
                *bi = ((*bi as u64 + p * p - c * wi as u64) % p) as u32;
            }
        }
        self.vectors.push((pivot, w));
        true
    }
}

/// Rank of a set of column vectors over GF(p).
pub fn rank_mod_p<'a, I>(columns: I, prime: u32) -> usize
where
    I: IntoIterator<Item = &'a [u32]>,
{
    let mut basis = EchelonBasis::new(prime);
    for c in columns {
        basis.insert(c);
    }
    basis.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(97));
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 97] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn gf2_rank() {
        let cols: [&[u32]; 3] = [&[1, 0], &[0, 1], &[1, 1]];
        assert_eq!(rank_mod_p(cols, 2), 2);
        assert_eq!(rank_mod_p([cols[0], cols[2]], 2), 2);
        assert_eq!(rank_mod_p([&[0u32, 0][..]], 2), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // the three columns sum to 2*(1,1,1), which vanishes only over GF(2)
        let cols: [&[u32]; 3] = [&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]];
        assert_eq!(rank_mod_p(cols, 2), 2);
        assert_eq!(rank_mod_p(cols, 3), 3);
    }
}
