//! Dense linear algebra over a prime field `F_p`, with entries stored as `u8`.

pub(crate) type Vector = Vec<u8>;
/// Row-major square or rectangular matrix.
pub(crate) type Matrix = Vec<Vec<u8>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Field {
    pub p: u32,
}

impl Field {
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p) && p < 256, "p = {p} must be a prime below 256");
        Self { p }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        // a^(p-2) by square-and-multiply
        let (mut base, mut e, mut acc) = (a as u32, self.p - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u8
    }

    /// `y += c * x` in place.
    pub fn axpy(self, y: &mut [u8], c: u8, x: &[u8]) {
        if c == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = ((*yi as u32 + c as u32 * xi as u32) % self.p) as u8;
        }
    }

    pub fn mat_vec(self, m: &Matrix, v: &[u8]) -> Vector {
        m.iter()
            .map(|row| {
                let s: u32 = row.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % self.p) as u8
            })
            .collect()
    }

    pub fn mat_mul(self, a: &Matrix, b: &Matrix) -> Matrix {
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        let s: u32 = row.iter().zip(b).map(|(&x, brow)| x as u32 * brow[j] as u32).sum();
                        (s % self.p) as u8
                    })
                    .collect()
            })
            .collect()
    }

    /// Brings `rows` to reduced row-echelon form in place, dropping zero
    /// rows. Returns the pivot columns.
    pub fn rref(self, rows: &mut Matrix) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let f = self.sub(0, row[c]);
                    self.axpy(row, f, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    pub fn rank(self, mut rows: Matrix) -> usize {
        self.rref(&mut rows).len()
    }

    /// Basis of the null space `{v : m v = 0}` of an `r x n` matrix.
    pub fn nullspace(self, m: &Matrix, n: usize) -> Matrix {
        let mut rows: Matrix = m.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u8; n];
                v[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[f]);
                }
                v
            })
            .collect()
    }

    pub fn transpose(m: &Matrix) -> Matrix {
        let n = m.first().map_or(0, |r| r.len());
        (0..n).map(|j| m.iter().map(|row| row[j]).collect()).collect()
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// A subspace held as its reduced row-echelon basis, which is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Subspace {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero() -> Self {
        Self {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, f: Field, v: &mut [u8]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c] != 0 {
                let k = f.sub(0, v[c]);
                f.axpy(v, k, row);
            }
        }
    }

    #[cfg(test)]
    pub fn contains(&self, f: Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn span(f: Field, mut rows: Matrix) -> Self {
        rows.retain(|r| r.iter().any(|&x| x != 0));
        let pivots = f.rref(&mut rows);
        Self { rows, pivots }
    }

    pub fn with(&self, f: Field, v: Vector) -> Self {
        let mut rows = self.rows.clone();
        rows.push(v);
        Self::span(f, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_rref() {
        let f = Field::new(3);
        assert_eq!(f.inv(2), 2);
        let f5 = Field::new(5);
        for a in 1..5u8 {
            assert_eq!(f5.mul(a, f5.inv(a)), 1);
        }
        let mut m = vec![vec![0, 2, 1], vec![1, 1, 0], vec![1, 0, 1]];
        let piv = f.rref(&mut m);
        assert_eq!(piv.len(), 2);
        assert_eq!(m, vec![vec![1, 0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::new(2);
        let m = vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0]];
        let ns = f.nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(f.mat_vec(&m, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_membership() {
        let f = Field::new(2);
        let s = Subspace::span(f, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(s.contains(f, &[1, 0, 1]));
        assert!(!s.contains(f, &[1, 0, 0]));
        assert!(!is_prime(1) && is_prime(2) && is_prime(3) && !is_prime(9));
    }
}
