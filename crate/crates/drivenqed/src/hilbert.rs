//! Composite Hilbert spaces for N two-level atoms and up to two truncated
//! boson modes: tensor-product indexing, elementary operators, and embedding
//! of local operators into the full space.
//!
//! Indexing convention, fixed once for the whole crate: subsystem 0 is the
//! most significant (slowest-varying) factor of the flattened index, atoms
//! come before modes, qubit basis order is (|g> = 0, |e> = 1) and mode basis
//! order is Fock |0> .. |n_max>.

use ndarray::{linalg::kron, Array1, Array2};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QedError, Result};

pub const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// One tensor factor of the composite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Subsystem {
    Qubit,
    Mode { cutoff: usize },
}

impl Subsystem {
    pub fn dim(&self) -> usize {
        match self {
            Subsystem::Qubit => 2,
            Subsystem::Mode { cutoff } => cutoff + 1,
        }
    }

    pub fn is_qubit(&self) -> bool {
        matches!(self, Subsystem::Qubit)
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Subsystem::Qubit => "qubit",
            Subsystem::Mode { .. } => "mode",
        }
    }
}

/// Ordered list of subsystems defining the tensor-product indexing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertLayout {
    subsystems: Vec<Subsystem>,
    dim: usize,
}

impl HilbertLayout {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(QedError::EmptyLayout);
        }
        for s in &subsystems {
            if let Subsystem::Mode { cutoff } = s {
                if *cutoff < 1 {
                    return Err(QedError::InvalidCutoff(*cutoff));
                }
            }
        }
        let dim = subsystems.iter().map(Subsystem::dim).product();
        Ok(Self { subsystems, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn subsystem(&self, index: usize) -> Result<Subsystem> {
        self.subsystems
            .get(index)
            .copied()
            .ok_or(QedError::SubsystemOutOfRange {
                index,
                count: self.subsystems.len(),
            })
    }

    pub fn n_qubits(&self) -> usize {
        self.subsystems.iter().filter(|s| s.is_qubit()).count()
    }

    /// Indices of all qubit subsystems, in layout order.
    pub fn qubit_indices(&self) -> Vec<usize> {
        self.subsystems
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_qubit())
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of all mode subsystems, in layout order.
    pub fn mode_indices(&self) -> Vec<usize> {
        self.subsystems
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_qubit())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn n_modes(&self) -> usize {
        self.subsystems.len() - self.n_qubits()
    }

    /// Stride of each subsystem in the flattened index (most significant first).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.subsystems.len()];
        for i in (0..self.subsystems.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.subsystems[i + 1].dim();
        }
        strides
    }

    /// Decompose a flat index into per-subsystem indices.
    pub fn decompose(&self, mut flat: usize) -> Vec<usize> {
        let strides = self.strides();
        let mut out = Vec::with_capacity(strides.len());
        for s in strides {
            out.push(flat / s);
            flat %= s;
        }
        out
    }

    /// Flatten per-subsystem indices.
    pub fn compose(&self, indices: &[usize]) -> usize {
        self.strides()
            .iter()
            .zip(indices)
            .map(|(s, i)| s * i)
            .sum()
    }

    /// Sub-layout consisting of the given subsystems, in layout order.
    pub fn sublayout(&self, keep: &[usize]) -> Result<HilbertLayout> {
        let mut subs = Vec::with_capacity(keep.len());
        for &k in keep {
            subs.push(self.subsystem(k)?);
        }
        HilbertLayout::new(subs)
    }

    fn expect_kind(&self, index: usize, expect_qubit: bool) -> Result<Subsystem> {
        let s = self.subsystem(index)?;
        if s.is_qubit() != expect_qubit {
            return Err(QedError::WrongSubsystemKind {
                index,
                expected: if expect_qubit { "qubit" } else { "mode" },
                found: s.kind_name(),
            });
        }
        Ok(s)
    }
}

/// Layout with `n_atoms` qubits followed by one truncated mode per cutoff.
pub fn make_layout(n_atoms: usize, mode_cutoffs: &[usize]) -> Result<HilbertLayout> {
    let mut subs = vec![Subsystem::Qubit; n_atoms];
    subs.extend(mode_cutoffs.iter().map(|&c| Subsystem::Mode { cutoff: c }));
    HilbertLayout::new(subs)
}

/// Complex amplitude vector over a layout.
#[derive(Debug, Clone)]
pub struct Ket {
    layout: HilbertLayout,
    amplitudes: Array1<C64>,
    normalized: bool,
}

impl Ket {
    /// Wrap an amplitude vector; the `normalized` flag is set from the norm.
    pub fn new(layout: HilbertLayout, amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(QedError::DimensionMismatch(format!(
                "amplitude vector of length {} over layout of dim {}",
                amplitudes.len(),
                layout.dim()
            )));
        }
        let norm = vec_norm(&amplitudes);
        Ok(Self {
            layout,
            amplitudes,
            normalized: (norm - 1.0).abs() < 1e-9,
        })
    }

    /// Wrap and renormalize; errors on (numerically) zero vectors.
    pub fn normalized(layout: HilbertLayout, amplitudes: Array1<C64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if norm < 1e-14 {
            return Err(QedError::ZeroNorm);
        }
        let mut ket = Self::new(layout, amplitudes)?;
        ket.amplitudes.mapv_inplace(|a| a / norm);
        ket.normalized = true;
        Ok(ket)
    }

    /// Computational basis state at the given flat index.
    pub fn basis_state(layout: HilbertLayout, flat_index: usize) -> Result<Self> {
        if flat_index >= layout.dim() {
            return Err(QedError::DimensionMismatch(format!(
                "basis index {} out of range for dim {}",
                flat_index,
                layout.dim()
            )));
        }
        let mut amplitudes = Array1::zeros(layout.dim());
        amplitudes[flat_index] = C64::new(1.0, 0.0);
        Self::new(layout, amplitudes)
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Array1<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amplitudes)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// <self|other>, with the bra conjugated.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        if self.layout != other.layout {
            return Err(QedError::LayoutMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// self + coeff * other, without renormalizing.
    pub fn add_scaled(&self, other: &Ket, coeff: C64) -> Result<Ket> {
        if self.layout != other.layout {
            return Err(QedError::LayoutMismatch);
        }
        let amplitudes = &self.amplitudes + &other.amplitudes.mapv(|a| a * coeff);
        Ket::new(self.layout.clone(), amplitudes)
    }
}

pub(crate) fn vec_norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense complex square matrix over a layout.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    layout: HilbertLayout,
    entries: Array2<C64>,
}

impl OperatorMatrix {
    pub fn new(layout: HilbertLayout, entries: Array2<C64>) -> Result<Self> {
        if entries.nrows() != layout.dim() || entries.ncols() != layout.dim() {
            return Err(QedError::DimensionMismatch(format!(
                "{}x{} matrix over layout of dim {}",
                entries.nrows(),
                entries.ncols(),
                layout.dim()
            )));
        }
        Ok(Self { layout, entries })
    }

    pub fn zeros(layout: HilbertLayout) -> Self {
        let dim = layout.dim();
        Self {
            layout,
            entries: Array2::zeros((dim, dim)),
        }
    }

    pub fn identity(layout: HilbertLayout) -> Self {
        let dim = layout.dim();
        Self {
            layout,
            entries: Array2::eye(dim),
        }
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<C64> {
        self.entries
    }

    pub fn dagger(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            entries: self.entries.t().mapv(|a| a.conj()),
        }
    }

    /// Largest absolute deviation from Hermiticity and the matrix scale.
    pub fn hermiticity_defect(&self) -> (f64, f64) {
        hermiticity_defect(&self.entries)
    }

    /// Hermitian within `rel_tol` relative to the largest entry.
    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        let (defect, scale) = self.hermiticity_defect();
        defect <= rel_tol * scale.max(1e-300)
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        if self.layout != *ket.layout() {
            return Err(QedError::LayoutMismatch);
        }
        Ket::new(self.layout.clone(), self.entries.dot(ket.amplitudes()))
    }

    pub fn expectation(&self, ket: &Ket) -> Result<C64> {
        let applied = self.apply(ket)?;
        ket.inner(&applied)
    }

    pub fn matmul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.layout != other.layout {
            return Err(QedError::LayoutMismatch);
        }
        OperatorMatrix::new(self.layout.clone(), self.entries.dot(&other.entries))
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.layout != other.layout {
            return Err(QedError::LayoutMismatch);
        }
        OperatorMatrix::new(self.layout.clone(), &self.entries + &other.entries)
    }

    pub fn scaled(&self, coeff: C64) -> OperatorMatrix {
        OperatorMatrix {
            layout: self.layout.clone(),
            entries: self.entries.mapv(|a| a * coeff),
        }
    }

    /// [self, other] = self other - other self.
    pub fn commutator(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.layout != other.layout {
            return Err(QedError::LayoutMismatch);
        }
        let entries = self.entries.dot(&other.entries) - other.entries.dot(&self.entries);
        OperatorMatrix::new(self.layout.clone(), entries)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn hermiticity_defect(m: &Array2<C64>) -> (f64, f64) {
    let mut defect = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            scale = scale.max(m[[i, j]].norm());
            if j >= i {
                defect = defect.max((m[[i, j]] - m[[j, i]].conj()).norm());
            }
        }
    }
    (defect, scale)
}

/// Tensor product of local operators on distinct subsystems, identity elsewhere.
///
/// Factors must be sorted by subsystem index. Built by folding Kronecker
/// products, so the cost is O(dim^2).
pub fn embed_product(
    layout: &HilbertLayout,
    factors: &[(usize, &Array2<C64>)],
) -> Result<Array2<C64>> {
    for w in factors.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(QedError::InvalidParams(
                "embed_product factors must be sorted by distinct subsystem index".into(),
            ));
        }
    }
    let mut result: Option<Array2<C64>> = None;
    let mut next_factor = factors.iter().peekable();
    for (i, sub) in layout.subsystems().iter().enumerate() {
        let local: Array2<C64> = match next_factor.peek() {
            Some(&&(idx, m)) if idx == i => {
                next_factor.next();
                if m.nrows() != sub.dim() || m.ncols() != sub.dim() {
                    return Err(QedError::DimensionMismatch(format!(
                        "local operator {}x{} on subsystem {} of dim {}",
                        m.nrows(),
                        m.ncols(),
                        i,
                        sub.dim()
                    )));
                }
                m.clone()
            }
            _ => Array2::eye(sub.dim()),
        };
        result = Some(match result {
            None => local,
            Some(acc) => kron(&acc, &local),
        });
    }
    if let Some(&&(idx, _)) = next_factor.peek() {
        return Err(QedError::SubsystemOutOfRange {
            index: idx,
            count: layout.subsystems().len(),
        });
    }
    Ok(result.expect("layout is non-empty"))
}

/// Embed a single local operator, identity on all other subsystems.
pub fn embed_one(
    layout: &HilbertLayout,
    subsystem: usize,
    local: &Array2<C64>,
) -> Result<Array2<C64>> {
    embed_product(layout, &[(subsystem, local)])
}

/// Local annihilation operator on a truncated Fock space: a|n> = sqrt(n)|n-1>.
pub fn local_annihilation(cutoff: usize) -> Array2<C64> {
    let dim = cutoff + 1;
    let mut a = Array2::zeros((dim, dim));
    for n in 1..dim {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Local qubit lowering operator sigma = |g><e|.
pub fn local_sigma_minus() -> Array2<C64> {
    let mut s = Array2::zeros((2, 2));
    s[[0, 1]] = C64::new(1.0, 0.0);
    s
}

/// Local sigma_x = |g><e| + |e><g|.
pub fn local_sigma_x() -> Array2<C64> {
    let mut s = Array2::zeros((2, 2));
    s[[0, 1]] = C64::new(1.0, 0.0);
    s[[1, 0]] = C64::new(1.0, 0.0);
    s
}

/// Local dressed-state flip |+><-| (in the bare (g, e) basis).
pub fn local_flip_up() -> Array2<C64> {
    let h = C64::new(0.5, 0.0);
    let mut m = Array2::zeros((2, 2));
    m[[0, 0]] = h;
    m[[0, 1]] = -h;
    m[[1, 0]] = h;
    m[[1, 1]] = -h;
    m
}

/// Local dressed-state flip |-><+| (in the bare (g, e) basis).
pub fn local_flip_down() -> Array2<C64> {
    let h = C64::new(0.5, 0.0);
    let mut m = Array2::zeros((2, 2));
    m[[0, 0]] = h;
    m[[0, 1]] = h;
    m[[1, 0]] = -h;
    m[[1, 1]] = -h;
    m
}

/// Local bare-basis kets.
pub fn local_qubit_g() -> Array1<C64> {
    Array1::from(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
}

pub fn local_qubit_e() -> Array1<C64> {
    Array1::from(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
}

/// Dressed states |+-> = (|g> +- |e>)/sqrt(2), the sigma_x eigenstates.
pub fn local_qubit_plus() -> Array1<C64> {
    Array1::from(vec![
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
    ])
}

pub fn local_qubit_minus() -> Array1<C64> {
    Array1::from(vec![
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(-FRAC_1_SQRT_2, 0.0),
    ])
}

/// Local Fock state |n> on a mode of the given cutoff.
pub fn local_fock(cutoff: usize, n: usize) -> Result<Array1<C64>> {
    if n > cutoff {
        return Err(QedError::DimensionMismatch(format!(
            "Fock level {n} above cutoff {cutoff}"
        )));
    }
    let mut v = Array1::zeros(cutoff + 1);
    v[n] = C64::new(1.0, 0.0);
    Ok(v)
}

/// Annihilation and creation operators of a mode, embedded in the full space.
///
/// The creation operator annihilates the top truncated level |n_max>.
pub fn boson_ops(layout: &HilbertLayout, mode_index: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let sub = layout.expect_kind(mode_index, false)?;
    let Subsystem::Mode { cutoff } = sub else {
        unreachable!()
    };
    let a_local = local_annihilation(cutoff);
    let a = embed_one(layout, mode_index, &a_local)?;
    let a = OperatorMatrix::new(layout.clone(), a)?;
    let a_dagger = a.dagger();
    Ok((a, a_dagger))
}

/// Spin-flip operators of an atom embedded in the full space:
/// sigma = |g><e|, sigma_dagger = |e><g|, sigma_x = their sum.
pub fn qubit_ops(
    layout: &HilbertLayout,
    atom_index: usize,
) -> Result<(OperatorMatrix, OperatorMatrix, OperatorMatrix)> {
    layout.expect_kind(atom_index, true)?;
    let sm = embed_one(layout, atom_index, &local_sigma_minus())?;
    let sm = OperatorMatrix::new(layout.clone(), sm)?;
    let sp = sm.dagger();
    let sx = sm.add(&sp)?;
    Ok((sm, sp, sx))
}

/// Normalized tensor product of per-subsystem kets, one factor per subsystem.
pub fn product_state(layout: &HilbertLayout, factors: &[Array1<C64>]) -> Result<Ket> {
    if factors.len() != layout.subsystems().len() {
        return Err(QedError::DimensionMismatch(format!(
            "{} factors for layout of {} subsystems",
            factors.len(),
            layout.subsystems().len()
        )));
    }
    for (i, (f, s)) in factors.iter().zip(layout.subsystems()).enumerate() {
        if f.len() != s.dim() {
            return Err(QedError::DimensionMismatch(format!(
                "factor {} has length {}, subsystem dim {}",
                i,
                f.len(),
                s.dim()
            )));
        }
        let norm = vec_norm(f);
        if norm < 1e-14 {
            return Err(QedError::ZeroNorm);
        }
        if (norm - 1.0).abs() > 1e-9 {
            return Err(QedError::NotNormalized(norm));
        }
    }
    let mut amps = factors[0].clone();
    for f in &factors[1..] {
        let mut next = Array1::zeros(amps.len() * f.len());
        for (i, &ai) in amps.iter().enumerate() {
            for (j, &fj) in f.iter().enumerate() {
                next[i * f.len() + j] = ai * fj;
            }
        }
        amps = next;
    }
    Ket::normalized(layout.clone(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn layout_dims() {
        assert_eq!(make_layout(1, &[20]).unwrap().dim(), 42);
        assert_eq!(make_layout(2, &[30]).unwrap().dim(), 124);
        assert_eq!(make_layout(1, &[15, 15]).unwrap().dim(), 512);
    }

    #[test]
    fn layout_rejects_empty_and_bad_cutoff() {
        assert!(matches!(make_layout(0, &[]), Err(QedError::EmptyLayout)));
        assert!(matches!(
            make_layout(1, &[0]),
            Err(QedError::InvalidCutoff(0))
        ));
    }

    #[test]
    fn compose_decompose_roundtrip() {
        let layout = make_layout(2, &[3]).unwrap();
        for flat in 0..layout.dim() {
            let idx = layout.decompose(flat);
            assert_eq!(layout.compose(&idx), flat);
        }
        // subsystem 0 most significant
        assert_eq!(layout.decompose(0), vec![0, 0, 0]);
        assert_eq!(layout.decompose(layout.dim() - 1), vec![1, 1, 3]);
    }

    #[test]
    fn annihilation_ladder_action() {
        let layout = make_layout(0, &[3]).unwrap();
        let (a, a_dag) = boson_ops(&layout, 0).unwrap();
        // a |2> = sqrt(2) |1>
        let two = Ket::basis_state(layout.clone(), 2).unwrap();
        let out = a.apply(&two).unwrap();
        let mut expect = Array1::<C64>::zeros(4);
        expect[1] = c(2.0f64.sqrt(), 0.0);
        for (x, y) in out.amplitudes().iter().zip(expect.iter()) {
            assert!((x - y).norm() < 1e-15);
        }
        // a |0> = 0
        let vac = Ket::basis_state(layout.clone(), 0).unwrap();
        assert!(a.apply(&vac).unwrap().norm() < 1e-15);
        // a_dagger |n_max> = 0 under truncation
        let top = Ket::basis_state(layout, 3).unwrap();
        assert!(a_dag.apply(&top).unwrap().norm() < 1e-15);
    }

    #[test]
    fn commutator_is_identity_below_truncation() {
        // Independent oracle: form [a, a_dagger] explicitly on a small matrix
        // and compare entrywise against the identity on n < n_max.
        let layout = make_layout(0, &[6]).unwrap();
        let (a, a_dag) = boson_ops(&layout, 0).unwrap();
        let comm = a.commutator(&a_dag).unwrap();
        for n in 0..6 {
            for m in 0..7 {
                let expect = if n == m { 1.0 } else { 0.0 };
                assert!(
                    (comm.entries()[[n, m]] - c(expect, 0.0)).norm() < 1e-14,
                    "[a,a+] deviates at ({n},{m})"
                );
            }
        }
        // top level picks up the truncation artifact -(n_max+1)... check it is not 1
        assert!((comm.entries()[[6, 6]].re - 1.0).abs() > 1.0);
    }

    #[test]
    fn qubit_operator_actions() {
        let layout = make_layout(1, &[2]).unwrap();
        let (sm, sp, sx) = qubit_ops(&layout, 0).unwrap();
        let g0 = Ket::basis_state(layout.clone(), 0).unwrap();
        // sigma+ |g,0> = |e,0> (flat index 3 for cutoff 2)
        let up = sp.apply(&g0).unwrap();
        assert!((up.amplitudes()[3] - c(1.0, 0.0)).norm() < 1e-15);
        // sigma- |g,0> = 0
        assert!(sm.apply(&g0).unwrap().norm() < 1e-15);
        // sigma_x^2 = identity
        let sx2 = sx.matmul(&sx).unwrap();
        for i in 0..layout.dim() {
            for j in 0..layout.dim() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((sx2.entries()[[i, j]] - c(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sigma_x_eigenstates_are_dressed_states() {
        // |+-> = (|g> +- |e>)/sqrt(2) with eigenvalues +-1
        let layout = make_layout(1, &[]).unwrap();
        let (_, _, sx) = qubit_ops(&layout, 0).unwrap();
        let plus = Ket::new(layout.clone(), local_qubit_plus()).unwrap();
        let minus = Ket::new(layout.clone(), local_qubit_minus()).unwrap();
        let sx_plus = sx.apply(&plus).unwrap();
        let sx_minus = sx.apply(&minus).unwrap();
        for i in 0..2 {
            assert!((sx_plus.amplitudes()[i] - plus.amplitudes()[i]).norm() < 1e-15);
            assert!((sx_minus.amplitudes()[i] + minus.amplitudes()[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn qubit_ops_rejects_mode_index() {
        let layout = make_layout(1, &[2]).unwrap();
        assert!(matches!(
            qubit_ops(&layout, 1),
            Err(QedError::WrongSubsystemKind { .. })
        ));
        assert!(matches!(
            boson_ops(&layout, 0),
            Err(QedError::WrongSubsystemKind { .. })
        ));
    }

    #[test]
    fn product_state_ordering() {
        let layout = make_layout(1, &[20]).unwrap();
        // (|g>, |0>) -> flat index 0
        let psi = product_state(&layout, &[local_qubit_g(), local_fock(20, 0).unwrap()]).unwrap();
        assert!((psi.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
        // (|e>, |0>) -> flat index 21
        let psi = product_state(&layout, &[local_qubit_e(), local_fock(20, 0).unwrap()]).unwrap();
        assert!((psi.amplitudes()[21] - c(1.0, 0.0)).norm() < 1e-15);
        // (|+>, |0>) -> (e0 + e21)/sqrt(2)
        let psi =
            product_state(&layout, &[local_qubit_plus(), local_fock(20, 0).unwrap()]).unwrap();
        assert!((psi.amplitudes()[0] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((psi.amplitudes()[21] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn product_state_rejects_bad_factors() {
        let layout = make_layout(1, &[2]).unwrap();
        assert!(product_state(&layout, &[local_qubit_g()]).is_err());
        assert!(product_state(&layout, &[local_qubit_g(), local_qubit_g()]).is_err());
        let zero = Array1::<C64>::zeros(3);
        assert!(matches!(
            product_state(&layout, &[local_qubit_g(), zero]),
            Err(QedError::ZeroNorm)
        ));
    }

    #[test]
    fn embedded_operators_on_disjoint_subsystems_commute() {
        let layout = make_layout(2, &[4]).unwrap();
        let (sm0, _, sx0) = qubit_ops(&layout, 0).unwrap();
        let (_, sp1, _) = qubit_ops(&layout, 1).unwrap();
        let (a, _) = boson_ops(&layout, 2).unwrap();
        for (x, y) in [(&sm0, &sp1), (&sx0, &a), (&sp1, &a)] {
            let comm = x.commutator(y).unwrap();
            assert!(comm.max_abs() < 1e-14);
        }
    }

    #[test]
    fn number_operator_spectrum_is_exact() {
        let layout = make_layout(0, &[5]).unwrap();
        let (a, a_dag) = boson_ops(&layout, 0).unwrap();
        let n_op = a_dag.matmul(&a).unwrap();
        // diagonal with entries 0..=5, exact to machine precision
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { i as f64 } else { 0.0 };
                assert!((n_op.entries()[[i, j]] - c(expect, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn embedding_preserves_operator_norm() {
        let layout = make_layout(1, &[7]).unwrap();
        let a_local = local_annihilation(7);
        let a_emb = embed_one(&layout, 1, &a_local).unwrap();
        let local_max = a_local.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let emb_max = a_emb.iter().map(|x| x.norm()).fold(0.0, f64::max);
        assert!((local_max - emb_max).abs() < 1e-15);
    }
}
