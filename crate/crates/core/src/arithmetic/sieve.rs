/// Smallest-prime-factor table for fast factorization of every `n <= limit`.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Sorted `(p, e)` pairs for `1 <= n <= limit`.
    pub fn factor(&self, mut n: usize) -> Vec<(u64, u32)> {
        debug_assert!(n >= 1 && n <= self.limit());
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    pub fn is_squarefree(&self, mut n: usize) -> bool {
        while n > 1 {
            let p = self.spf[n] as usize;
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        true
    }
}
