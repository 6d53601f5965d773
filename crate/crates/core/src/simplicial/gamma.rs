//! The Dold–Kan functor Γ: `Γ(K)_n = ⊕ K_k` over surjections `[n] -> [k]`.

use crate::zmod::{AbHom, FgAbGroup, Matrix};

/// A monotone surjection `[n] -> [k]`, stored by its values.
pub type Surj = Vec<usize>;

/// All monotone surjections `[n] -> [k]` for `k = 0..=n.min(kmax)`, grouped by `k`
/// ascending and lexicographic within each `k`.
pub fn surjections(n: usize, kmax: usize) -> Vec<Surj> {
    let mut out = Vec::new();
    for k in 0..=n.min(kmax) {
        // choose the k positions i in 1..=n where the value steps up
        let mut steps = Vec::new();
        choose(1, n, k, &mut steps, &mut |st| {
            let mut v = Vec::with_capacity(n + 1);
            let mut cur = 0;
            let mut it = st.iter().peekable();
            for i in 0..=n {
                if it.peek() == Some(&&i) {
                    cur += 1;
                    it.next();
                }
                v.push(cur);
            }
            out.push(v);
        });
    }
    out
}

fn choose(from: usize, to: usize, k: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k == 0 {
        f(acc);
        return;
    }
    if from > to || to + 1 - from < k {
        return;
    }
    for i in from..=to {
        if to + 1 - i < k {
            break;
        }
        acc.push(i);
        choose(i + 1, to, k - 1, acc, f);
        acc.pop();
    }
}

fn target_dim(s: &Surj) -> usize {
    s.last().copied().unwrap_or(0)
}

/// Epi-mono factorization of a monotone map `[m] -> [k]` given by values:
/// returns the surjection onto the image and the sorted image.
fn epi_mono(vals: &[usize]) -> (Surj, Vec<usize>) {
    let mut image: Vec<usize> = vals.to_vec();
    image.dedup();
    let eps: Surj = vals.iter().map(|v| image.binary_search(v).unwrap()).collect();
    (eps, image)
}

/// Layout of one level `Γ(K)_n`: the summands and their generator offsets.
#[derive(Clone, Debug)]
pub struct Level {
    pub n: usize,
    pub summands: Vec<(Surj, usize)>,
    pub group: FgAbGroup,
}

impl Level {
    pub fn new(n: usize, groups: &[FgAbGroup]) -> Level {
        let kmax = groups.len().saturating_sub(1);
        let mut summands = Vec::new();
        let mut parts = Vec::new();
        let mut off = 0;
        for s in surjections(n, kmax) {
            let k = target_dim(&s);
            if groups[k].is_trivial() {
                continue;
            }
            summands.push((s, off));
            off += groups[k].ngens();
            parts.push(&groups[k]);
        }
        Level { n, summands, group: FgAbGroup::direct_sum_all(parts) }
    }

    fn find(&self, s: &Surj) -> Option<usize> {
        self.summands.iter().find(|(t, _)| t == s).map(|(_, o)| *o)
    }
}

/// Levels `0..=top` of `Γ` applied to groups `groups[k]` with differential
/// `diffs[k-1] : groups[k] -> groups[k-1]`.
pub struct Gamma<'a> {
    pub groups: &'a [FgAbGroup],
    pub diffs: &'a [AbHom],
    pub levels: Vec<Level>,
}

impl<'a> Gamma<'a> {
    pub fn new(groups: &'a [FgAbGroup], diffs: &'a [AbHom], top: usize) -> Gamma<'a> {
        assert_eq!(diffs.len() + 1, groups.len().max(1));
        let levels = (0..=top).map(|n| Level::new(n, groups)).collect();
        Gamma { groups, diffs, levels }
    }

    /// Face `d_i : Γ_n -> Γ_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> Matrix {
        let (src, dst) = (&self.levels[n], &self.levels[n - 1]);
        let mut m = Matrix::zero(dst.group.ngens(), src.group.ngens());
        for (sig, off) in &src.summands {
            let k = target_dim(sig);
            // sig ∘ δ_i skips the value at position i
            let vals: Vec<usize> = (0..n).map(|j| sig[if j < i { j } else { j + 1 }]).collect();
            let (eps, image) = epi_mono(&vals);
            let block = if image.len() == k + 1 {
                Some(Matrix::identity(self.groups[k].ngens()))
            } else if image.len() == k && image[0] == 1 {
                Some(self.diffs[k - 1].matrix().clone())
            } else {
                None
            };
            if let Some(b) = block {
                if let Some(o2) = dst.find(&eps) {
                    m.paste(o2, *off, &b);
                }
            }
        }
        m
    }

    /// Degeneracy `s_j : Γ_n -> Γ_{n+1}`.
    pub fn degeneracy(&self, n: usize, j: usize) -> Matrix {
        let (src, dst) = (&self.levels[n], &self.levels[n + 1]);
        let mut m = Matrix::zero(dst.group.ngens(), src.group.ngens());
        for (sig, off) in &src.summands {
            let k = target_dim(sig);
            let vals: Surj = (0..=n + 1).map(|x| sig[if x <= j { x } else { x - 1 }]).collect();
            let o2 = dst.find(&vals).expect("composite of surjections is a summand");
            m.paste(o2, *off, &Matrix::identity(self.groups[k].ngens()));
        }
        m
    }

    /// Offset of the summand indexed by the identity of `[n]`, which carries `K_n`.
    pub fn identity_summand(&self, n: usize) -> Option<usize> {
        let id: Surj = (0..=n).collect();
        self.levels[n].find(&id)
    }
}

/// `Γ(f)` on level `n`, for maps `f[k] : K_k -> L_k` and the two layouts.
pub fn gamma_map(f: &[AbHom], src: &Level, dst: &Level) -> Matrix {
    let mut m = Matrix::zero(dst.group.ngens(), src.group.ngens());
    for (sig, off) in &src.summands {
        let k = target_dim(sig);
        if let Some(o2) = dst.find(sig) {
            m.paste(o2, *off, f[k].matrix());
        }
    }
    m
}
