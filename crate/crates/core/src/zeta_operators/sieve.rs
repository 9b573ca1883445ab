//! Linear sieve: primes, Möbius function, smallest prime factors.

/// Tables up to a fixed bound `n_max`, built in `O(n_max)`.
#[derive(Clone, Debug)]
pub struct Sieve {
    n_max: usize,
    primes: Vec<u64>,
    mu: Vec<i8>,
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(n_max: usize) -> Self {
        let n_max = n_max.max(1);
        let mut mu = vec![0i8; n_max + 1];
        let mut spf = vec![0u32; n_max + 1];
        let mut primes = Vec::new();
        mu[1] = 1;
        for i in 2..=n_max {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                primes.push(i as u64);
            }
            for &p in &primes {
                let p = p as usize;
                let ip = i * p;
                if p > spf[i] as usize || ip > n_max {
                    break;
                }
                spf[ip] = p as u32;
                mu[ip] = if i % p == 0 { 0 } else { -mu[i] };
            }
        }
        Self { n_max, primes, mu, spf }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `≤ bound` (bound clipped to the sieve range).
    pub fn primes_up_to(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    pub fn mobius(&self, n: usize) -> i8 {
        self.mu[n]
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// Largest prime factor of `n` (1 for `n = 1`).
    pub fn largest_prime_factor(&self, mut n: usize) -> usize {
        let mut largest = 1;
        while n > 1 {
            let p = self.spf[n] as usize;
            largest = p;
            n /= p;
        }
        largest
    }

    /// `Λ(n) = ln p` if `n = p^e`, else 0.
    pub fn von_mangoldt(&self, n: usize) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let p = self.spf[n] as usize;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }
}

/// Integers `≤ bound` whose prime factors are all `≤ p_max`, each prime
/// occurring with exponent at most `e_max`. Sorted ascending.
pub fn smooth_numbers(primes: &[u64], bound: u64, e_max: u32) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        if p > bound {
            break;
        }
        let len = out.len();
        for i in 0..len {
            let mut v = out[i];
            for _ in 0..e_max {
                match v.checked_mul(p) {
                    Some(w) if w <= bound => {
                        v = w;
                        out.push(v);
                    }
                    _ => break,
                }
            }
        }
    }
    out.sort_unstable();
    out
}
