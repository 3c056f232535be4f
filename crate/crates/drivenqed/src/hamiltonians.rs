//! Builders for the driven Tavis-Cummings Hamiltonians at every frame and
//! approximation level: lab frame, drive-rotating frame, interaction picture,
//! strong-driving displacement form, and the dressed-basis JC / anti-JC pair,
//! in single- and two-mode variants.
//!
//! Units: hbar = 1, energies and times dimensionless in units of the vacuum
//! Rabi coupling g (the natural scale for the ratio claims Omega/g, delta/g).

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QedError, Result};
use crate::hilbert::{
    embed_product, local_annihilation, local_flip_down, local_flip_up, local_sigma_minus,
    local_sigma_x, HilbertLayout, OperatorMatrix, Subsystem,
};

/// Bare lab-frame frequencies (omega_o, omega, omega_L): atomic transition,
/// cavity mode, classical drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabFrequencies {
    pub atom: f64,
    pub cavity: f64,
    pub drive: f64,
}

/// Physical drive and coupling parameters, dimensionless (units of g).
///
/// `g_a` doubles as the single-mode coupling g; `g_b`/`delta_b` are present
/// exactly when the layout carries a second mode. `delta_atom` is
/// Delta = omega_o - omega_L, `delta_a` is delta = omega_a - omega_L.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveParams {
    pub n_atoms: usize,
    pub g_a: f64,
    #[serde(default)]
    pub g_b: Option<f64>,
    pub omega_drive: f64,
    #[serde(default)]
    pub delta_atom: f64,
    #[serde(default)]
    pub delta_a: f64,
    #[serde(default)]
    pub delta_b: Option<f64>,
    #[serde(default)]
    pub lab_frequencies: Option<LabFrequencies>,
}

impl DriveParams {
    pub fn single_mode(n_atoms: usize, g: f64, omega_drive: f64, delta: f64) -> Self {
        Self {
            n_atoms,
            g_a: g,
            g_b: None,
            omega_drive,
            delta_atom: 0.0,
            delta_a: delta,
            delta_b: None,
            lab_frequencies: None,
        }
    }

    pub fn two_mode(
        n_atoms: usize,
        g_a: f64,
        g_b: f64,
        omega_drive: f64,
        delta_a: f64,
        delta_b: f64,
    ) -> Self {
        Self {
            n_atoms,
            g_a,
            g_b: Some(g_b),
            omega_drive,
            delta_atom: 0.0,
            delta_a,
            delta_b: Some(delta_b),
            lab_frequencies: None,
        }
    }

    pub fn with_lab_frequencies(mut self, lab: LabFrequencies) -> Self {
        self.lab_frequencies = Some(lab);
        self
    }

    /// deltas of all modes, in layout order.
    pub fn mode_detunings(&self) -> Vec<f64> {
        match self.delta_b {
            Some(db) => vec![self.delta_a, db],
            None => vec![self.delta_a],
        }
    }

    /// Consistency against a layout: mode count, atom count, finiteness.
    pub fn validate_for(&self, layout: &HilbertLayout) -> Result<()> {
        let n_modes = layout.n_modes();
        if self.g_b.is_some() != (n_modes == 2) {
            return Err(QedError::InvalidParams(format!(
                "g_b must be present iff the layout has two modes (layout has {n_modes})"
            )));
        }
        if self.delta_b.is_some() != self.g_b.is_some() {
            return Err(QedError::InvalidParams(
                "delta_b must be present iff g_b is present".into(),
            ));
        }
        if self.n_atoms != layout.n_qubits() {
            return Err(QedError::InvalidParams(format!(
                "n_atoms = {} does not match layout ({} qubits)",
                self.n_atoms,
                layout.n_qubits()
            )));
        }
        let mut values = vec![
            self.g_a,
            self.omega_drive,
            self.delta_atom,
            self.delta_a,
        ];
        values.extend(self.g_b);
        values.extend(self.delta_b);
        if let Some(lab) = &self.lab_frequencies {
            values.extend([lab.atom, lab.cavity, lab.drive]);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(QedError::InvalidParams("non-finite parameter".into()));
        }
        if self.g_a < 0.0 || self.omega_drive < 0.0 || self.g_b.is_some_and(|g| g < 0.0) {
            return Err(QedError::InvalidParams(
                "couplings g and Omega must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Time-dependent operator: a map t -> matrix plus the largest angular
/// frequency appearing in its coefficients (drives the step-size rule).
pub struct TimeDependentOperator {
    layout: HilbertLayout,
    omega_max: f64,
    eval: Box<dyn Fn(f64) -> Array2<C64> + Send + Sync>,
}

impl TimeDependentOperator {
    pub fn new(
        layout: HilbertLayout,
        omega_max: f64,
        eval: Box<dyn Fn(f64) -> Array2<C64> + Send + Sync>,
    ) -> Self {
        Self {
            layout,
            omega_max,
            eval,
        }
    }

    pub fn at(&self, t: f64) -> OperatorMatrix {
        OperatorMatrix::new(self.layout.clone(), (self.eval)(t))
            .expect("builder closures produce layout-sized matrices")
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    /// The constant matrix, when the operator has no explicit time dependence.
    pub fn as_static(&self) -> Option<OperatorMatrix> {
        (self.omega_max == 0.0).then(|| self.at(0.0))
    }
}

fn i_c(x: f64) -> C64 {
    C64::new(0.0, x)
}

fn require_modes(layout: &HilbertLayout, n: usize) -> Result<Vec<usize>> {
    let modes = layout.mode_indices();
    if modes.len() != n {
        return Err(if n == 1 {
            QedError::SingleModeRequired
        } else {
            QedError::TwoModeRequired
        });
    }
    Ok(modes)
}

fn mode_cutoff(layout: &HilbertLayout, index: usize) -> usize {
    match layout.subsystem(index) {
        Ok(Subsystem::Mode { cutoff }) => cutoff,
        _ => unreachable!("index comes from mode_indices"),
    }
}

/// Sum over atoms of a local qubit operator times a local mode operator,
/// embedded in the full space.
fn atom_mode_sum(
    layout: &HilbertLayout,
    qubit_local: &Array2<C64>,
    mode_index: usize,
    mode_local: &Array2<C64>,
) -> Result<Array2<C64>> {
    let dim = layout.dim();
    let mut sum = Array2::zeros((dim, dim));
    for q in layout.qubit_indices() {
        let factors: Vec<(usize, &Array2<C64>)> = if q < mode_index {
            vec![(q, qubit_local), (mode_index, mode_local)]
        } else {
            vec![(mode_index, mode_local), (q, qubit_local)]
        };
        sum += &embed_product(layout, &factors)?;
    }
    Ok(sum)
}

/// Sum over atoms of an embedded local qubit operator.
fn atom_sum(layout: &HilbertLayout, qubit_local: &Array2<C64>) -> Result<Array2<C64>> {
    let dim = layout.dim();
    let mut sum = Array2::zeros((dim, dim));
    for q in layout.qubit_indices() {
        sum += &embed_product(layout, &[(q, qubit_local)])?;
    }
    Ok(sum)
}

fn number_local(cutoff: usize) -> Array2<C64> {
    let a = local_annihilation(cutoff);
    let ad = a.t().mapv(|x| x.conj());
    ad.dot(&a)
}

/// Excitation-conserving vacuum Rabi coupling g Sum_j (sigma_j^dag a + sigma_j a^dag).
fn jc_coupling(layout: &HilbertLayout, mode_index: usize, g: f64) -> Result<Array2<C64>> {
    let cutoff = mode_cutoff(layout, mode_index);
    let sm_a_dag = atom_mode_sum(
        layout,
        &local_sigma_minus(),
        mode_index,
        &local_annihilation(cutoff).t().mapv(|x| x.conj()),
    )?;
    let sp_a = sm_a_dag.t().mapv(|x| x.conj());
    Ok((sp_a + sm_a_dag).mapv(|x| x * g))
}

/// Full lab-frame Hamiltonian with the explicitly oscillating classical drive:
///
/// H(t) = omega_o Sum sigma^dag sigma + omega a^dag a
///      + Omega Sum (e^{-i omega_L t} sigma^dag + e^{i omega_L t} sigma)
///      + g Sum (sigma^dag a + sigma a^dag)
pub fn build_lab_frame(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<TimeDependentOperator> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 1)?;
    let lab = params
        .lab_frequencies
        .ok_or(QedError::MissingLabFrequencies)?;
    let mode = modes[0];
    let cutoff = mode_cutoff(layout, mode);

    let sigma_ee = local_sigma_minus().t().mapv(|x| x.conj()).dot(&local_sigma_minus());
    let n_atoms_op = atom_sum(layout, &sigma_ee)?;
    let n_mode = embed_product(layout, &[(mode, &number_local(cutoff))])?;
    let sp_sum = atom_sum(layout, &local_sigma_minus().t().mapv(|x| x.conj()))?;
    let sm_sum = sp_sum.t().mapv(|x| x.conj());
    let jc = jc_coupling(layout, mode, params.g_a)?;

    let static_part = n_atoms_op.mapv(|x| x * lab.atom) + n_mode.mapv(|x| x * lab.cavity) + jc;
    let omega = params.omega_drive;
    let omega_l = lab.drive;
    let eval = move |t: f64| {
        let phase = i_c(-omega_l * t).exp();
        &static_part
            + &sp_sum.mapv(|x| x * (omega * phase))
            + &sm_sum.mapv(|x| x * (omega * phase.conj()))
    };
    Ok(TimeDependentOperator::new(
        layout.clone(),
        omega_l.abs(),
        Box::new(eval),
    ))
}

/// Time-independent Hamiltonian in the frame rotating with the drive:
///
/// H^L = Delta Sum sigma^dag sigma + delta a^dag a
///     + Omega Sum (sigma^dag + sigma) + g Sum (sigma^dag a + sigma a^dag)
pub fn build_rotating_frame(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<OperatorMatrix> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 1)?;
    let mode = modes[0];
    let cutoff = mode_cutoff(layout, mode);

    let sigma_ee = local_sigma_minus().t().mapv(|x| x.conj()).dot(&local_sigma_minus());
    let mut h = atom_sum(layout, &sigma_ee)?.mapv(|x| x * params.delta_atom);
    h += &embed_product(layout, &[(mode, &number_local(cutoff))])?
        .mapv(|x| x * params.delta_a);
    h += &atom_sum(layout, &local_sigma_x())?.mapv(|x| x * params.omega_drive);
    h += &jc_coupling(layout, mode, params.g_a)?;
    OperatorMatrix::new(layout.clone(), h)
}

/// Pieces of the dressed-basis interaction-picture coupling for one mode:
/// the sigma_x-diagonal part and the two dressed-flip parts, each multiplied
/// by the mode's annihilation operator.
struct DressedCouplingParts {
    diag_a: Array2<C64>,
    up_a: Array2<C64>,
    down_a: Array2<C64>,
}

fn dressed_coupling_parts(layout: &HilbertLayout, mode_index: usize) -> Result<DressedCouplingParts> {
    let cutoff = mode_cutoff(layout, mode_index);
    let a_local = local_annihilation(cutoff);
    Ok(DressedCouplingParts {
        diag_a: atom_mode_sum(layout, &local_sigma_x(), mode_index, &a_local)?,
        up_a: atom_mode_sum(layout, &local_flip_up(), mode_index, &a_local)?,
        down_a: atom_mode_sum(layout, &local_flip_down(), mode_index, &a_local)?,
    })
}

/// Interaction-picture Hamiltonian with respect to the free part
/// H_o = delta a^dag a + Omega Sum sigma_x:
///
/// H^I(t) = (g/2) Sum_j (|+><+| - |-><-| + e^{2i Omega t}|+><-|
///          - e^{-2i Omega t}|-><+|)_j a e^{-i delta t} + H.c.
///
/// Derived with the atomic drive on resonance; errors if delta_atom != 0.
pub fn build_interaction_picture(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<TimeDependentOperator> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 1)?;
    if params.delta_atom != 0.0 {
        return Err(QedError::AtomDetuningUnsupported(params.delta_atom));
    }
    let parts = dressed_coupling_parts(layout, modes[0])?;
    let half_g = 0.5 * params.g_a;
    let omega = params.omega_drive;
    let delta = params.delta_a;
    let eval = move |t: f64| {
        let e_delta = i_c(-delta * t).exp();
        let e_flip = i_c(2.0 * omega * t).exp();
        let m = parts.diag_a.mapv(|x| x * (half_g * e_delta))
            + parts.up_a.mapv(|x| x * (half_g * e_delta * e_flip))
            + parts.down_a.mapv(|x| x * (-half_g * e_delta * e_flip.conj()));
        &m + &m.t().mapv(|x| x.conj())
    };
    Ok(TimeDependentOperator::new(
        layout.clone(),
        2.0 * omega.abs() + delta.abs(),
        Box::new(eval),
    ))
}

/// Strong-driving effective Hamiltonian (RWA of the interaction picture,
/// valid for Omega >> g, |delta|): a sigma_x-conditioned displacement drive,
///
/// H_eff(t) = (g/2) Sum_j (sigma_x)_j (a e^{-i delta t} + a^dag e^{i delta t}),
///
/// time-independent when delta = 0. The regime condition is a caller
/// assertion, not enforced: out-of-regime builds are exactly what RWA-error
/// sweeps need.
pub fn build_effective(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<TimeDependentOperator> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 1)?;
    let parts = dressed_coupling_parts(layout, modes[0])?;
    let sx_a = parts.diag_a;
    let sx_a_dag = sx_a.t().mapv(|x| x.conj());
    let half_g = 0.5 * params.g_a;
    let delta = params.delta_a;
    let eval = move |t: f64| {
        let phase = i_c(-delta * t).exp();
        sx_a.mapv(|x| x * (half_g * phase)) + sx_a_dag.mapv(|x| x * (half_g * phase.conj()))
    };
    Ok(TimeDependentOperator::new(
        layout.clone(),
        delta.abs(),
        Box::new(eval),
    ))
}

/// Dressed-basis Jaynes-Cummings (sign = +1) or anti-Jaynes-Cummings
/// (sign = -1) Hamiltonian, the resonant survivor of the interaction picture
/// at delta = +-2 Omega with |delta| >> g:
///
///   +1:  H = (g/2) Sum_j (|+><-| a + |-><+| a^dag)
///   -1:  H = (g/2) Sum_j (|-><+| a + |+><-| a^dag)
///
/// The regime condition is a caller assertion, not enforced.
pub fn build_dressed_jc(
    params: &DriveParams,
    layout: &HilbertLayout,
    sign: i32,
) -> Result<OperatorMatrix> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 1)?;
    let cutoff = mode_cutoff(layout, modes[0]);
    let flip = match sign {
        1 => local_flip_up(),
        -1 => local_flip_down(),
        other => return Err(QedError::InvalidSign(other)),
    };
    let flip_a = atom_mode_sum(layout, &flip, modes[0], &local_annihilation(cutoff))?;
    let h = (&flip_a + &flip_a.t().mapv(|x| x.conj())).mapv(|x| x * (0.5 * params.g_a));
    OperatorMatrix::new(layout.clone(), h)
}

/// Two-mode drive-rotating-frame Hamiltonian (atomic drive on resonance):
///
/// H^ab = delta_a a^dag a + delta_b b^dag b + Omega Sum sigma_x
///      + g_a Sum (sigma^dag a + sigma a^dag) + g_b Sum (sigma^dag b + sigma b^dag)
pub fn build_two_mode_rotating(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<OperatorMatrix> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 2)?;
    if params.delta_atom != 0.0 {
        return Err(QedError::AtomDetuningUnsupported(params.delta_atom));
    }
    let (g_b, delta_b) = (params.g_b.unwrap(), params.delta_b.unwrap());
    let (ca, cb) = (mode_cutoff(layout, modes[0]), mode_cutoff(layout, modes[1]));

    let mut h = embed_product(layout, &[(modes[0], &number_local(ca))])?
        .mapv(|x| x * params.delta_a);
    h += &embed_product(layout, &[(modes[1], &number_local(cb))])?.mapv(|x| x * delta_b);
    h += &atom_sum(layout, &local_sigma_x())?.mapv(|x| x * params.omega_drive);
    h += &jc_coupling(layout, modes[0], params.g_a)?;
    h += &jc_coupling(layout, modes[1], g_b)?;
    OperatorMatrix::new(layout.clone(), h)
}

/// Two-mode interaction-picture Hamiltonian: the dressed-flip pattern of the
/// single-mode case multiplying (g_a a e^{-i delta_a t} + g_b b e^{-i delta_b t}),
/// plus Hermitian conjugate.
pub fn build_two_mode_interaction(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<TimeDependentOperator> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 2)?;
    if params.delta_atom != 0.0 {
        return Err(QedError::AtomDetuningUnsupported(params.delta_atom));
    }
    let (g_b, delta_b) = (params.g_b.unwrap(), params.delta_b.unwrap());
    let parts_a = dressed_coupling_parts(layout, modes[0])?;
    let parts_b = dressed_coupling_parts(layout, modes[1])?;
    let half_ga = 0.5 * params.g_a;
    let half_gb = 0.5 * g_b;
    let omega = params.omega_drive;
    let delta_a = params.delta_a;
    let eval = move |t: f64| {
        let ea = i_c(-delta_a * t).exp() * half_ga;
        let eb = i_c(-delta_b * t).exp() * half_gb;
        let e_flip = i_c(2.0 * omega * t).exp();
        let m = parts_a.diag_a.mapv(|x| x * ea)
            + parts_b.diag_a.mapv(|x| x * eb)
            + parts_a.up_a.mapv(|x| x * (ea * e_flip))
            + parts_b.up_a.mapv(|x| x * (eb * e_flip))
            + parts_a.down_a.mapv(|x| x * (-ea * e_flip.conj()))
            + parts_b.down_a.mapv(|x| x * (-eb * e_flip.conj()));
        &m + &m.t().mapv(|x| x.conj())
    };
    Ok(TimeDependentOperator::new(
        layout.clone(),
        2.0 * omega.abs() + delta_a.abs().max(delta_b.abs()),
        Box::new(eval),
    ))
}

/// Two-mode strong-driving effective Hamiltonian: simultaneous sigma_x-conditioned
/// displacement of both modes,
///
/// H(t) = (1/2) Sum_j (sigma_x)_j [g_a (a e^{-i delta_a t} + a^dag e^{i delta_a t})
///        + g_b (b e^{-i delta_b t} + b^dag e^{i delta_b t})]
pub fn build_two_mode_effective(
    params: &DriveParams,
    layout: &HilbertLayout,
) -> Result<TimeDependentOperator> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 2)?;
    let (g_b, delta_b) = (params.g_b.unwrap(), params.delta_b.unwrap());
    let parts_a = dressed_coupling_parts(layout, modes[0])?;
    let parts_b = dressed_coupling_parts(layout, modes[1])?;
    let sx_a = parts_a.diag_a;
    let sx_a_dag = sx_a.t().mapv(|x| x.conj());
    let sx_b = parts_b.diag_a;
    let sx_b_dag = sx_b.t().mapv(|x| x.conj());
    let half_ga = 0.5 * params.g_a;
    let half_gb = 0.5 * g_b;
    let delta_a = params.delta_a;
    let eval = move |t: f64| {
        let pa = i_c(-delta_a * t).exp() * half_ga;
        let pb = i_c(-delta_b * t).exp() * half_gb;
        sx_a.mapv(|x| x * pa)
            + sx_a_dag.mapv(|x| x * pa.conj())
            + sx_b.mapv(|x| x * pb)
            + sx_b_dag.mapv(|x| x * pb.conj())
    };
    Ok(TimeDependentOperator::new(
        layout.clone(),
        delta_a.abs().max(delta_b.abs()),
        Box::new(eval),
    ))
}

/// Two-mode dressed-basis JC (+1) / anti-JC (-1) Hamiltonian, the resonant
/// survivor at delta_a = delta_b = +-2 Omega with g_a = g_b:
///
///   +1:  H = (g/2) Sum_j [|+><-| (a + b) + |-><+| (a^dag + b^dag)]
///   -1:  conjugate flip pattern.
pub fn build_two_mode_dressed_jc(
    params: &DriveParams,
    layout: &HilbertLayout,
    sign: i32,
) -> Result<OperatorMatrix> {
    params.validate_for(layout)?;
    let modes = require_modes(layout, 2)?;
    let g_b = params.g_b.unwrap();
    if params.g_a != g_b {
        return Err(QedError::CouplingMismatch {
            g_a: params.g_a,
            g_b,
        });
    }
    let flip = match sign {
        1 => local_flip_up(),
        -1 => local_flip_down(),
        other => return Err(QedError::InvalidSign(other)),
    };
    let (ca, cb) = (mode_cutoff(layout, modes[0]), mode_cutoff(layout, modes[1]));
    let flip_ab = atom_mode_sum(layout, &flip, modes[0], &local_annihilation(ca))?
        + atom_mode_sum(layout, &flip, modes[1], &local_annihilation(cb))?;
    let h = (&flip_ab + &flip_ab.t().mapv(|x| x.conj())).mapv(|x| x * (0.5 * params.g_a));
    OperatorMatrix::new(layout.clone(), h)
}
