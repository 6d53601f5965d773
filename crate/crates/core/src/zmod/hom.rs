use super::error::AlgebraError;
use super::group::FgAbGroup;
use super::int::Int;
use super::lattice::Lattice;
use super::matrix::Matrix;
use super::subquotient::Subquotient;

/// Homomorphism between presented groups, given by its matrix on generators
/// (`codomain.ngens()` rows, `domain.ngens()` columns). Entries are reduced
/// modulo the codomain orders, so equal maps have equal matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbHom {
    dom: FgAbGroup,
    cod: FgAbGroup,
    m: Matrix,
}

impl AbHom {
    pub fn new(dom: FgAbGroup, cod: FgAbGroup, m: Matrix) -> Result<AbHom, AlgebraError> {
        if m.rows() != cod.ngens() || m.cols() != dom.ngens() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} matrix for a map from {} to {} generators",
                m.rows(),
                m.cols(),
                dom.ngens(),
                cod.ngens()
            )));
        }
        for (j, o) in dom.orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let col: Vec<Int> = (0..m.rows()).map(|i| m.get(i, j) * o).collect();
            if !cod.is_zero_elem(&col) {
                return Err(AlgebraError::IllDefined { generator: j });
            }
        }
        Ok(AbHom::new_unchecked(dom, cod, m))
    }

    pub(crate) fn new_unchecked(dom: FgAbGroup, cod: FgAbGroup, mut m: Matrix) -> AbHom {
        m.reduce_rows(cod.orders());
        AbHom { dom, cod, m }
    }

    pub fn from_rows(dom: FgAbGroup, cod: FgAbGroup, rows: &[Vec<i64>]) -> Result<AbHom, AlgebraError> {
        let m = if rows.is_empty() { Matrix::zero(0, dom.ngens()) } else { Matrix::from_rows(rows) };
        AbHom::new(dom, cod, m)
    }

    pub(crate) fn from_columns_unchecked(dom: FgAbGroup, cod: FgAbGroup, cols: &[Vec<Int>]) -> AbHom {
        let m = Matrix::from_columns(cod.ngens(), cols);
        AbHom::new_unchecked(dom, cod, m)
    }

    pub fn from_columns(dom: FgAbGroup, cod: FgAbGroup, cols: &[Vec<Int>]) -> Result<AbHom, AlgebraError> {
        if cols.len() != dom.ngens() {
            return Err(AlgebraError::DimensionMismatch("column count".into()));
        }
        let m = Matrix::from_columns(cod.ngens(), cols);
        AbHom::new(dom, cod, m)
    }

    pub fn zero(dom: FgAbGroup, cod: FgAbGroup) -> AbHom {
        let m = Matrix::zero(cod.ngens(), dom.ngens());
        AbHom { dom, cod, m }
    }

    pub fn identity(g: &FgAbGroup) -> AbHom {
        AbHom::new_unchecked(g.clone(), g.clone(), Matrix::identity(g.ngens()))
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.dom
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.cod
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.cod.reduce(&self.m.mul_vec(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom, AlgebraError> {
        if self.cod != other.dom {
            return Err(AlgebraError::NotComposable(0, 1));
        }
        Ok(AbHom::new_unchecked(self.dom.clone(), other.cod.clone(), other.m.mul(&self.m)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbHom) -> Result<AbHom, AlgebraError> {
        other.then(self)
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, AlgebraError> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(AlgebraError::DimensionMismatch("sum of maps with different ends".into()));
        }
        Ok(AbHom::new_unchecked(self.dom.clone(), self.cod.clone(), self.m.add(&other.m)))
    }

    pub fn neg(&self) -> AbHom {
        AbHom::new_unchecked(self.dom.clone(), self.cod.clone(), self.m.scale(&Int::from(-1)))
    }

    pub fn scale(&self, c: &Int) -> AbHom {
        AbHom::new_unchecked(self.dom.clone(), self.cod.clone(), self.m.scale(c))
    }

    pub fn block_sum(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.dom.direct_sum(&other.dom), self.cod.direct_sum(&other.cod), self.m.block_sum(&other.m))
    }

    /// Lattice in `Z^dom` of elements mapping to zero.
    pub fn kernel_lattice(&self) -> Lattice {
        self.cod.relations().preimage(&self.m).with_generators(&self.dom.relation_vectors())
    }

    /// Lattice in `Z^cod` spanned by the image and the codomain relations.
    pub fn image_lattice(&self) -> Lattice {
        Lattice::from_generators(self.cod.ngens(), self.m.columns()).with_generators(&self.cod.relation_vectors())
    }

    /// Kernel as a subquotient of the domain; its inclusion is [`AbHom::kernel_inclusion`].
    pub fn kernel(&self) -> Subquotient {
        Subquotient::new(self.dom.clone(), self.kernel_lattice(), Lattice::zero(self.dom.ngens())).expect("kernel")
    }

    pub fn kernel_inclusion(ker: &Subquotient) -> AbHom {
        AbHom::from_columns_unchecked(ker.value().clone(), ker.ambient().clone(), ker.lifts())
    }

    pub fn image(&self) -> Subquotient {
        Subquotient::new(self.cod.clone(), self.image_lattice(), Lattice::zero(self.cod.ngens())).expect("image")
    }

    /// Cokernel as a subquotient of the codomain, with the projection onto it.
    pub fn cokernel(&self) -> (Subquotient, AbHom) {
        let n = self.cod.ngens();
        let sq = Subquotient::new(self.cod.clone(), Lattice::full(n), self.image_lattice()).expect("cokernel");
        let cols: Vec<Vec<Int>> = (0..n).map(|i| sq.coords(&self.cod.basis_elem(i)).expect("full")).collect();
        let proj = AbHom::from_columns_unchecked(self.cod.clone(), sq.value().clone(), &cols);
        (sq, proj)
    }

    /// Some `x` with `self(x) = y`, or `None` if `y` is not in the image.
    pub fn preimage_of(&self, y: &[Int]) -> Option<Vec<Int>> {
        let n = self.dom.ngens();
        let mut gens = self.m.columns();
        gens.extend(self.cod.relation_vectors());
        let lat = Lattice::from_generators_tracked(self.cod.ngens(), gens);
        let a = lat.solve(y)?;
        Some(self.dom.reduce(&a[..n]))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().value().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice().same_as(&Lattice::full(self.cod.ngens()))
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<AbHom, AlgebraError> {
        if !self.is_iso() {
            return Err(AlgebraError::NotIso);
        }
        let n = self.dom.ngens();
        let mut gens = self.m.columns();
        gens.extend(self.cod.relation_vectors());
        let lat = Lattice::from_generators_tracked(self.cod.ngens(), gens);
        let cols: Vec<Vec<Int>> = (0..self.cod.ngens())
            .map(|i| {
                let a = lat.solve(&self.cod.basis_elem(i)).expect("surjective");
                a[..n].to_vec()
            })
            .collect();
        Ok(AbHom::from_columns_unchecked(self.cod.clone(), self.dom.clone(), &cols))
    }
}

impl std::fmt::Debug for AbHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AbHom({:?} -> {:?}, {:?})", self.dom, self.cod, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    #[test]
    fn ill_defined_rejected() {
        // Z/2 -> Z, 1 -> 1 does not respect 2 = 0
        let r = AbHom::from_rows(FgAbGroup::cyclic(2), z(), &[vec![1]]);
        assert_eq!(r.unwrap_err(), AlgebraError::IllDefined { generator: 0 });
    }

    #[test]
    fn kernel_examples() {
        let twice = AbHom::from_rows(z(), z(), &[vec![2]]).unwrap();
        assert!(twice.kernel().value().is_trivial());
        let to4 = AbHom::from_rows(z(), FgAbGroup::cyclic(4), &[vec![2]]).unwrap();
        let k = to4.kernel();
        assert_eq!(k.value().rank(), 1);
        // generated by 2
        assert_eq!(k.lift_gen(0)[0].abs(), Int::from(2));
        let zero = AbHom::zero(FgAbGroup::from_parts(1, &[3]), z());
        assert!(zero.kernel().value().iso_to(zero.domain()));
    }

    #[test]
    fn cokernel_examples() {
        let f = AbHom::from_rows(z(), FgAbGroup::from_parts(1, &[4]), &[vec![6], vec![0]]).unwrap();
        let (c, p) = f.cokernel();
        assert_eq!(c.value().torsion(), &[Int::from(2), Int::from(12)]);
        assert!(p.is_surjective());
        assert!(f.then(&p).unwrap().is_zero());
        let (c, _) = AbHom::identity(&z()).cokernel();
        assert!(c.value().is_trivial());
    }

    #[test]
    fn inverse_of_automorphism() {
        let g = FgAbGroup::free(2);
        let f = AbHom::from_rows(g.clone(), g.clone(), &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = f.inverse().unwrap();
        assert_eq!(f.then(&inv).unwrap(), AbHom::identity(&g));
    }

    #[test]
    fn preimage_in_torsion() {
        let f = AbHom::from_rows(z(), FgAbGroup::cyclic(5), &[vec![2]]).unwrap();
        let x = f.preimage_of(&[Int::from(1)]).unwrap();
        assert_eq!(f.apply(&x), vec![Int::from(1)]);
    }
}
