//! Sublattices of `Z^n` in column echelon form.

use super::int::Int;
use super::matrix::Matrix;

/// A sublattice of `Z^n`. The basis is in column echelon form: basis vector
/// `j` has its first nonzero entry (positive) at row `pivots[j]`, and the
/// pivot rows strictly increase.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<Int>>,
    pivots: Vec<usize>,
    // basis[j] = sum_i combos[j][i] * generator[i], when tracked
    combos: Option<Vec<Vec<Int>>>,
    // number of tracked generators, zero ones included
    ngens: usize,
}

/// Column echelon reduction of the generator list, optionally tracking how each
/// resulting column is combined from the inputs. Returns the echelon columns
/// (zero columns dropped), their pivots, the tracked combinations of those
/// columns, and the tracked combinations that produced zero columns.
fn echelon(
    dim: usize,
    gens: Vec<Vec<Int>>,
    track: bool,
) -> (Vec<Vec<Int>>, Vec<usize>, Option<Vec<Vec<Int>>>, Option<Vec<Vec<Int>>>) {
    let p = gens.len();
    let mut cols = gens;
    let mut comb: Vec<Vec<Int>> = if track {
        (0..p)
            .map(|i| {
                let mut e = vec![Int::ZERO; p];
                e[i] = Int::ONE;
                e
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut active: Vec<usize> = (0..p).filter(|&j| cols[j].iter().any(|x| !x.is_zero()) || track).collect();
    let mut basis_idx = Vec::new();
    let mut pivots = Vec::new();
    for row in 0..dim {
        loop {
            // columns still active with a nonzero entry in this row
            let mut nz: Vec<usize> = active.iter().copied().filter(|&j| !cols[j][row].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            nz.sort_by(|&a, &b| cols[a][row].cmp_abs(&cols[b][row]).then(a.cmp(&b)));
            let piv = nz[0];
            if nz.len() == 1 {
                if cols[piv][row].is_negative() {
                    for x in cols[piv].iter_mut() {
                        *x = -&*x;
                    }
                    if track {
                        for x in comb[piv].iter_mut() {
                            *x = -&*x;
                        }
                    }
                }
                basis_idx.push(piv);
                pivots.push(row);
                active.retain(|&j| j != piv);
                break;
            }
            let pv = cols[piv][row].clone();
            for &j in &nz[1..] {
                let (q, _) = cols[j][row].div_rem_euclid(&pv);
                if q.is_zero() {
                    continue;
                }
                let (src, dst) = if piv < j {
                    let (a, b) = cols.split_at_mut(j);
                    (&a[piv], &mut b[0])
                } else {
                    let (a, b) = cols.split_at_mut(piv);
                    (&b[0], &mut a[j])
                };
                for r in row..dim {
                    if !src[r].is_zero() {
                        dst[r].sub_mul(&q, &src[r]);
                    }
                }
                if track {
                    let (src, dst) = if piv < j {
                        let (a, b) = comb.split_at_mut(j);
                        (&a[piv], &mut b[0])
                    } else {
                        let (a, b) = comb.split_at_mut(piv);
                        (&b[0], &mut a[j])
                    };
                    for r in 0..p {
                        if !src[r].is_zero() {
                            dst[r].sub_mul(&q, &src[r]);
                        }
                    }
                }
            }
        }
    }
    let basis: Vec<Vec<Int>> = basis_idx.iter().map(|&j| cols[j].clone()).collect();
    if track {
        let combos: Vec<Vec<Int>> = basis_idx.iter().map(|&j| comb[j].clone()).collect();
        let kernel: Vec<Vec<Int>> = active.iter().map(|&j| comb[j].clone()).collect();
        (basis, pivots, Some(combos), Some(kernel))
    } else {
        (basis, pivots, None, None)
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Lattice {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new(), combos: None, ngens: 0 }
    }

    pub fn full(dim: usize) -> Lattice {
        let basis = (0..dim)
            .map(|i| {
                let mut e = vec![Int::ZERO; dim];
                e[i] = Int::ONE;
                e
            })
            .collect();
        Lattice { dim, basis, pivots: (0..dim).collect(), combos: None, ngens: 0 }
    }

    pub fn from_generators(dim: usize, gens: Vec<Vec<Int>>) -> Lattice {
        for g in &gens {
            assert_eq!(g.len(), dim, "generator of the wrong length");
        }
        let (basis, pivots, _, _) = echelon(dim, gens, false);
        Lattice { dim, basis, pivots, combos: None, ngens: 0 }
    }

    /// Like `from_generators`, but remembers how to write each basis vector in
    /// terms of the generators so that `solve` can return generator coefficients.
    pub fn from_generators_tracked(dim: usize, gens: Vec<Vec<Int>>) -> Lattice {
        for g in &gens {
            assert_eq!(g.len(), dim, "generator of the wrong length");
        }
        let ngens = gens.len();
        let (basis, pivots, combos, _) = echelon(dim, gens, true);
        Lattice { dim, basis, pivots, combos, ngens }
    }

    pub fn from_matrix_columns(m: &Matrix) -> Lattice {
        Lattice::from_generators(m.rows(), m.columns())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    /// Coordinates of `x` in the echelon basis, or `None` if `x` is not in the lattice.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(x.len(), self.dim);
        let mut r = x.to_vec();
        let mut c = Vec::with_capacity(self.basis.len());
        let mut next = 0;
        for row in 0..self.dim {
            if next < self.pivots.len() && self.pivots[next] == row {
                let b = &self.basis[next];
                let (q, rem) = r[row].div_rem_euclid(&b[row]);
                if !rem.is_zero() {
                    return None;
                }
                if !q.is_zero() {
                    for i in row..self.dim {
                        if !b[i].is_zero() {
                            r[i].sub_mul(&q, &b[i]);
                        }
                    }
                }
                c.push(q);
                next += 1;
            } else if !r[row].is_zero() {
                return None;
            }
        }
        Some(c)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.coords(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        self.rank() == other.rank() && self.contains_lattice(other) && other.contains_lattice(self)
    }

    /// Coefficients `a` with `x = sum a_i * generator_i`; needs a tracked lattice.
    pub fn solve(&self, x: &[Int]) -> Option<Vec<Int>> {
        let combos = self.combos.as_ref().expect("solve on an untracked lattice");
        let c = self.coords(x)?;
        let mut out = vec![Int::ZERO; self.ngens];
        for (cj, comb) in c.iter().zip(combos) {
            if cj.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(comb) {
                if !w.is_zero() {
                    o.add_mul(cj, w);
                }
            }
        }
        Some(out)
    }

    pub fn combine(&self, coeffs: &[Int]) -> Vec<Int> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = vec![Int::ZERO; self.dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    o.add_mul(c, x);
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.dim, g)
    }

    pub fn with_generators(&self, extra: &[Vec<Int>]) -> Lattice {
        let mut g = self.basis.clone();
        g.extend(extra.iter().cloned());
        Lattice::from_generators(self.dim, g)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        // a.self_basis = b.other_basis  <=>  (a, -b) in the kernel of [S | O]
        let k = self.rank();
        let mut gens: Vec<Vec<Int>> = self.basis.clone();
        gens.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let ker = integer_kernel(self.dim, gens);
        let v: Vec<Vec<Int>> = ker.iter().map(|z| self.combine(&z[..k])).collect();
        Lattice::from_generators(self.dim, v)
    }

    /// `{ x in Z^cols : m x in self }`.
    pub fn preimage(&self, m: &Matrix) -> Lattice {
        assert_eq!(m.rows(), self.dim);
        let n = m.cols();
        let mut gens = m.columns();
        gens.extend(self.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let ker = integer_kernel(self.dim, gens);
        let v: Vec<Vec<Int>> = ker.into_iter().map(|mut z| {
            z.truncate(n);
            z
        }).collect();
        Lattice::from_generators(n, v)
    }

    /// `m(self)` as a lattice in `Z^rows`.
    pub fn image(&self, m: &Matrix) -> Lattice {
        assert_eq!(m.cols(), self.dim);
        let v: Vec<Vec<Int>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Lattice::from_generators(m.rows(), v)
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.dim, &self.basis)
    }
}

/// Saturated basis of `{ a : sum a_i g_i = 0 }` for vectors `g_i` in `Z^dim`.
pub fn integer_kernel(dim: usize, gens: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let (_, _, _, ker) = echelon(dim, gens, true);
    ker.unwrap_or_default()
}

/// Kernel of an integer matrix acting on column vectors.
pub fn matrix_kernel(m: &Matrix) -> Vec<Vec<Int>> {
    integer_kernel(m.rows(), m.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    #[test]
    fn membership_and_coords() {
        let l = Lattice::from_generators(2, vec![v(&[2, 0]), v(&[0, 3]), v(&[2, 3])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[4, 9])));
        assert!(!l.contains(&v(&[1, 0])));
        let c = l.coords(&v(&[4, 9])).unwrap();
        assert_eq!(l.combine(&c), v(&[4, 9]));
    }

    #[test]
    fn kernel_is_saturated() {
        let m = Matrix::from_rows(&[vec![2, 4, 6]]);
        let k = matrix_kernel(&m);
        assert_eq!(k.len(), 2);
        for z in &k {
            assert!(m.mul_vec(z).iter().all(Int::is_zero));
        }
        // (1, 1, -1) lies in the kernel and must be an integral combination
        let l = Lattice::from_generators(3, k);
        assert!(l.contains(&v(&[1, 1, -1])));
    }

    #[test]
    fn tracked_solve() {
        let gens = vec![v(&[6]), v(&[4])];
        let l = Lattice::from_generators_tracked(1, gens.clone());
        let a = l.solve(&v(&[2])).unwrap();
        let s = &(&a[0] * &gens[0][0]) + &(&a[1] * &gens[1][0]);
        assert_eq!(s, Int::from(2));
        assert!(l.solve(&v(&[3])).is_none());
        // all generators zero: still one coefficient per generator
        let z = Lattice::from_generators_tracked(2, vec![v(&[0, 0]); 3]);
        assert_eq!(z.solve(&v(&[0, 0])).unwrap().len(), 3);
    }

    #[test]
    fn intersection_and_preimage() {
        let a = Lattice::from_generators(1, vec![v(&[4])]);
        let b = Lattice::from_generators(1, vec![v(&[6])]);
        let c = a.intersect(&b);
        assert!(c.same_as(&Lattice::from_generators(1, vec![v(&[12])])));
        let m = Matrix::from_rows(&[vec![2]]);
        let p = Lattice::from_generators(1, vec![v(&[4])]).preimage(&m);
        assert!(p.same_as(&Lattice::from_generators(1, vec![v(&[2])])));
    }
}
