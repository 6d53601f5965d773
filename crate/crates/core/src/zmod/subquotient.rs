use super::error::AlgebraError;
use super::group::FgAbGroup;
use super::hom::AbHom;
use super::int::Int;
use super::lattice::Lattice;
use super::matrix::Matrix;
use super::snf::smith_normal_form;

/// `S / D` for subgroups `D ⊆ S` of an ambient group `G = Z^n / R`.
///
/// Both subgroups are stored as lattices in `Z^n` that contain `R`. The value
/// group is put in diagonal form by a Smith reduction of `D` written in a basis of `S`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: FgAbGroup,
    sub: Lattice,
    den: Lattice,
    value: FgAbGroup,
    // lifts of the value generators, as vectors in Z^n
    lifts: Vec<Vec<Int>>,
    // rows of U (from the Smith reduction) that give value coordinates
    proj: Matrix,
    proj_orders: Vec<Int>,
}

impl Subquotient {
    /// `sub` and `den` may omit the relations of `ambient`; they are added here.
    pub fn new(ambient: FgAbGroup, sub: Lattice, den: Lattice) -> Result<Subquotient, AlgebraError> {
        let n = ambient.ngens();
        if sub.dim() != n || den.dim() != n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "subquotient lattices of dimension {} and {} in a group on {n} generators",
                sub.dim(),
                den.dim()
            )));
        }
        let rel = ambient.relation_vectors();
        let sub = sub.with_generators(&rel);
        let den = den.with_generators(&rel);
        if !sub.contains_lattice(&den) {
            return Err(AlgebraError::NotContained);
        }
        let k = sub.rank();
        let q_cols: Vec<Vec<Int>> = den.basis().iter().map(|d| sub.coords(d).expect("den inside sub")).collect();
        let q = Matrix::from_columns(k, &q_cols);
        let snf = smith_normal_form(&q);
        let b = sub.basis_matrix();
        let new_basis = b.mul(&snf.u_inv);
        let mut lifts = Vec::new();
        let mut orders = Vec::new();
        let mut keep = Vec::new();
        for i in 0..k {
            let d = if i < snf.diag.len() { snf.diag[i].clone() } else { Int::ZERO };
            if d.is_one() {
                continue;
            }
            keep.push(i);
            lifts.push(new_basis.column(i));
            orders.push(d);
        }
        let proj = snf.u.select_rows(&keep);
        let value = FgAbGroup::new(orders.clone());
        Ok(Subquotient { ambient, sub, den, value, lifts, proj, proj_orders: orders })
    }

    pub fn from_generators(
        ambient: FgAbGroup,
        sub: Vec<Vec<Int>>,
        den: Vec<Vec<Int>>,
    ) -> Result<Subquotient, AlgebraError> {
        let n = ambient.ngens();
        Subquotient::new(ambient, Lattice::from_generators(n, sub), Lattice::from_generators(n, den))
    }

    /// The whole group `G / 0`.
    pub fn whole(g: &FgAbGroup) -> Subquotient {
        let n = g.ngens();
        Subquotient::new(g.clone(), Lattice::full(n), Lattice::zero(n)).expect("whole group")
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn sub(&self) -> &Lattice {
        &self.sub
    }

    pub fn den(&self) -> &Lattice {
        &self.den
    }

    pub fn value(&self) -> &FgAbGroup {
        &self.value
    }

    /// Representative in the ambient of the value element with coordinates `v`.
    pub fn lift(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.value.ngens());
        let mut out = vec![Int::ZERO; self.ambient.ngens()];
        for (c, l) in v.iter().zip(&self.lifts) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(l) {
                if !x.is_zero() {
                    o.add_mul(c, x);
                }
            }
        }
        out
    }

    pub fn lift_gen(&self, j: usize) -> &[Int] {
        &self.lifts[j]
    }

    pub fn lifts(&self) -> &[Vec<Int>] {
        &self.lifts
    }

    /// Value coordinates of an ambient vector lying in `S`.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = self.sub.coords(x)?;
        let y = self.proj.mul_vec(&c);
        Some(y.iter().zip(&self.proj_orders).map(|(a, o)| a.rem_euclid(o)).collect())
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.sub.contains(x)
    }

    /// True if `x` lies in `D`, i.e. represents zero in the value group.
    pub fn is_zero_class(&self, x: &[Int]) -> bool {
        self.den.contains(x)
    }

    /// The map `S/D -> S'/D'` induced by `f` on the ambients, when `f(S) ⊆ S'` and `f(D) ⊆ D'`.
    pub fn induced(&self, f: &AbHom, target: &Subquotient) -> Result<AbHom, AlgebraError> {
        if f.domain() != &self.ambient || f.codomain() != &target.ambient {
            return Err(AlgebraError::DimensionMismatch("induced map on different ambients".into()));
        }
        if !self.induced_exists(f, target) {
            return Err(AlgebraError::NoInducedMap);
        }
        Ok(self.induced_unchecked(f.matrix(), target))
    }

    pub fn induced_exists(&self, f: &AbHom, target: &Subquotient) -> bool {
        let m = f.matrix();
        self.sub.basis().iter().all(|s| target.sub.contains(&m.mul_vec(s)))
            && self.den.basis().iter().all(|d| target.den.contains(&m.mul_vec(d)))
    }

    /// Induced map for an ambient matrix whose compatibility the caller guarantees.
    pub fn induced_unchecked(&self, m: &Matrix, target: &Subquotient) -> AbHom {
        let cols: Vec<Vec<Int>> = self
            .lifts
            .iter()
            .map(|l| target.coords(&m.mul_vec(l)).expect("induced map leaves the target subgroup"))
            .collect();
        AbHom::from_columns_unchecked(self.value.clone(), target.value.clone(), &cols)
    }

    /// A subquotient `S'/D'` of the same ambient, where `S' ⊇ D'` are given as
    /// lattices in value coordinates of `self` (and are pulled back to the ambient).
    pub fn refine(&self, sub: &Lattice, den: &Lattice) -> Result<Subquotient, AlgebraError> {
        let n = self.ambient.ngens();
        let mut s: Vec<Vec<Int>> = sub.basis().iter().map(|v| self.lift(v)).collect();
        s.extend(self.den.basis().iter().cloned());
        let mut d: Vec<Vec<Int>> = den.basis().iter().map(|v| self.lift(v)).collect();
        d.extend(self.den.basis().iter().cloned());
        Subquotient::new(self.ambient.clone(), Lattice::from_generators(n, s), Lattice::from_generators(n, d))
    }

    /// Value-coordinate lattice of the relations of the value group.
    pub fn value_relations(&self) -> Lattice {
        self.value.relations()
    }

    pub fn same_as(&self, other: &Subquotient) -> bool {
        self.ambient == other.ambient && self.sub.same_as(&other.sub) && self.den.same_as(&other.den)
    }
}
