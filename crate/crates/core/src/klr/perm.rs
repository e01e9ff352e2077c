//! Permutations of `{0..n-1}`, reduced words and shuffles.

/// `w[p]` is the image of position `p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The simple transposition `s_a` swapping `a` and `a + 1` (0-based).
    pub fn simple(n: usize, a: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(a, a + 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(self * o)(p) = self(o(p))`
    pub fn compose(&self, o: &Self) -> Self {
        Perm(o.0.iter().map(|&p| self.0[p]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (p, &w) in self.0.iter().enumerate() {
            inv[w] = p;
        }
        Perm(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Perm::identity(n), |acc, &a| acc.compose(&Perm::simple(n, a)))
    }

    /// Lexicographically first reduced word `[a_1, ..., a_r]` with
    /// `self = s_{a_1} ... s_{a_r}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.len();
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(a) = (0..n.saturating_sub(1)).find(|&a| w.is_left_descent(a)) {
            word.push(a);
            w = Perm::simple(n, a).compose(&w);
        }
        word
    }

    /// `l(s_a w) < l(w)`
    pub fn is_left_descent(&self, a: usize) -> bool {
        let inv = self.inverse();
        inv.0[a] > inv.0[a + 1]
    }

    /// Place permutation of a sequence: `(w nu)[w(p)] = nu[p]`.
    pub fn act<T: Clone>(&self, nu: &[T]) -> Vec<T> {
        let mut out = nu.to_vec();
        for (p, &w) in self.0.iter().enumerate() {
            out[w] = nu[p].clone();
        }
        out
    }

    /// All permutations of `n` letters in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// Minimal length representatives of `S_n / (S_{n1} x S_{n-n1})`: the
    /// permutations increasing on both blocks.
    pub fn shuffles(n: usize, n1: usize) -> Vec<Perm> {
        Perm::all(n)
            .into_iter()
            .filter(|w| w.0[..n1].windows(2).all(|p| p[0] < p[1]) && w.0[n1..].windows(2).all(|p| p[0] < p[1]))
            .collect()
    }

    /// Splits `self = u * v` with `u` a shuffle and `v` preserving both blocks.
    pub fn coset_split(&self, n1: usize) -> (Perm, Perm) {
        let n = self.len();
        let mut first: Vec<usize> = self.0[..n1].to_vec();
        let mut second: Vec<usize> = self.0[n1..].to_vec();
        first.sort_unstable();
        second.sort_unstable();
        let u = Perm(first.into_iter().chain(second).collect());
        let v = u.inverse().compose(self);
        debug_assert!(v.0[..n1].iter().all(|&p| p < n1) && v.0[n1..].iter().all(|&p| p >= n1) || n == 0);
        (u, v)
    }
}
