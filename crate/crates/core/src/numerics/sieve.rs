/// Largest `N` accepted by [`arithmetic_tables`].
pub const SIEVE_LIMIT: usize = 1 << 26;

/// Möbius and Euler totient tables, 1-indexed (slot 0 is unused and zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticTables {
    pub mobius: Vec<i8>,
    pub totient: Vec<u64>,
}

impl ArithmeticTables {
    pub fn len(&self) -> usize {
        self.mobius.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ_{m ≤ n} φ(m)`, the number of Farey fractions of order `n` in `(0, 1]`.
    pub fn totient_sum(&self, n: usize) -> u64 {
        self.totient[1..=n].iter().sum()
    }
}

/// Linear sieve for `μ` and `φ` on `1..=n`.
///
/// # Panics
/// If `n` is zero or exceeds [`SIEVE_LIMIT`].
pub fn arithmetic_tables(n: usize) -> ArithmeticTables {
    assert!((1..=SIEVE_LIMIT).contains(&n), "sieve size {n} out of range");
    let mut mobius = vec![0i8; n + 1];
    let mut totient = vec![0u64; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    mobius[1] = 1;
    totient[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mobius[i] = -1;
            totient[i] = i as u64 - 1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mobius[ip] = 0;
                totient[ip] = totient[i] * p as u64;
                break;
            }
            mobius[ip] = -mobius[i];
            totient[ip] = totient[i] * (p as u64 - 1);
        }
    }
    ArithmeticTables { mobius, totient }
}
