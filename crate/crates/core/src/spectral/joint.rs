use serde::Serialize;

use super::decomposition::{
    eigendecompose_default, measurement_distribution, sorted_eigen, DiscreteDistribution,
};
use super::operator::{max_abs, CMatrix, HermitianOperator, StateVector};
use crate::error::{Error, Result};

/// `AB - BA`.
pub fn commutator(a: &HermitianOperator, b: &HermitianOperator) -> Result<CMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let (am, bm) = (a.matrix(), b.matrix());
    let c = am * bm - bm * am;
    debug_assert!(max_abs(&(&c + c.adjoint())) <= 1e-12 * (1.0 + max_abs(&c)));
    Ok(c)
}

/// Scale-invariant default `1e-10 |A|_max |B|_max`.
pub fn default_compatibility_tol(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    1e-10 * a.max_abs() * b.max_abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointMass {
    pub a: f64,
    pub b: f64,
    pub mass: f64,
}

/// Joint probability mass over eigenvalue pairs `(a_n, b_m)` of two commuting
/// observables, sorted by `a` then `b`. Pairs that occur in the common
/// eigenbasis are listed even when their mass is zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDistribution {
    pub entries: Vec<JointMass>,
}

impl JointDistribution {
    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(|e| e.mass).sum()
    }

    pub fn marginal_a(&self, points: &[f64]) -> Vec<f64> {
        points
            .iter()
            .map(|&p| self.entries.iter().filter(|e| e.a == p).map(|e| e.mass).sum())
            .collect()
    }

    pub fn marginal_b(&self, points: &[f64]) -> Vec<f64> {
        points
            .iter()
            .map(|&p| self.entries.iter().filter(|e| e.b == p).map(|e| e.mass).sum())
            .collect()
    }
}

fn nearest(points: &[f64], x: f64) -> f64 {
    *points
        .iter()
        .min_by(|p, q| (*p - x).abs().total_cmp(&(*q - x).abs()))
        .expect("non-empty spectrum")
}

/// Joint distribution of compatible observables from a simultaneous
/// eigenbasis: `A` is diagonalized first, then `B` within each eigenspace
/// of `A`. A negative `tol` selects [`default_compatibility_tol`].
pub fn joint_distribution(
    a: &HermitianOperator,
    b: &HermitianOperator,
    v: &StateVector,
    tol: f64,
) -> Result<JointDistribution> {
    let c = commutator(a, b)?;
    if v.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: v.dim() });
    }
    let tol = if tol < 0.0 { default_compatibility_tol(a, b) } else { tol };
    let norm = max_abs(&c);
    if norm > tol {
        return Err(Error::Incompatible { commutator_norm: norm, tol });
    }

    let da = eigendecompose_default(a)?;
    let b_spectrum = eigendecompose_default(b)?.eigenvalues().to_vec();
    let amps = v.amplitudes();

    let mut entries: Vec<JointMass> = Vec::new();
    for (&a_val, basis) in da.eigenvalues().iter().zip(da.bases()) {
        let restricted = basis.adjoint() * b.matrix() * basis;
        let restricted = (&restricted + restricted.adjoint()).scale(0.5);
        let (b_vals, w) = sorted_eigen(&restricted);
        let common = basis * w;
        for (k, &bk) in b_vals.iter().enumerate() {
            let label = nearest(&b_spectrum, bk);
            let mass = common.column(k).dotc(amps).norm_sqr();
            match entries.iter_mut().find(|e| e.a == a_val && e.b == label) {
                Some(e) => e.mass += mass,
                None => entries.push(JointMass { a: a_val, b: label, mass }),
            }
        }
    }
    entries.sort_by(|x, y| x.a.total_cmp(&y.a).then(x.b.total_cmp(&y.b)));
    Ok(JointDistribution { entries })
}

/// Largest deviation of either marginal of `joint` from the corresponding
/// single-observable distribution.
pub fn marginal_defect(
    joint: &JointDistribution,
    a: &HermitianOperator,
    b: &HermitianOperator,
    v: &StateVector,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (op, is_a) in [(a, true), (b, false)] {
        let single: DiscreteDistribution = measurement_distribution(&eigendecompose_default(op)?, v)?;
        let marg = if is_a { joint.marginal_a(&single.points) } else { joint.marginal_b(&single.points) };
        for (m, w) in marg.iter().zip(&single.masses) {
            worst = worst.max((m - w).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn pauli_commutator_is_two_i_z() {
        let c = commutator(&HermitianOperator::pauli_x(), &HermitianOperator::pauli_y()).unwrap();
        let expected = HermitianOperator::pauli_z().matrix().map(|z| z * Complex64::new(0.0, 2.0));
        assert!(max_abs(&(c - expected)) < 1e-15);
    }

    #[test]
    fn trivial_commutators_vanish() {
        let y = HermitianOperator::pauli_y();
        assert_eq!(max_abs(&commutator(&y, &y).unwrap()), 0.0);
        let d1 = HermitianOperator::diagonal(&[1.0, 2.0, 5.0]).unwrap();
        let d2 = HermitianOperator::diagonal(&[-3.0, 0.5, 4.0]).unwrap();
        assert_eq!(max_abs(&commutator(&d1, &d2).unwrap()), 0.0);
    }

    #[test]
    fn diagonal_pair_joint() {
        let a = HermitianOperator::diagonal(&[1.0, 2.0]).unwrap();
        let b = HermitianOperator::diagonal(&[3.0, 4.0]).unwrap();
        let v = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let j = joint_distribution(&a, &b, &v, -1.0).unwrap();
        assert_eq!(j.entries.len(), 2);
        assert_eq!((j.entries[0].a, j.entries[0].b), (1.0, 3.0));
        assert_eq!((j.entries[1].a, j.entries[1].b), (2.0, 4.0));
        for e in &j.entries {
            assert!((e.mass - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_partner_copies_single_distribution() {
        let a = HermitianOperator::diagonal(&[-1.0, 0.5, 2.0]).unwrap();
        let b = HermitianOperator::identity(3).unwrap();
        let v = StateVector::from_real(&[0.3, -0.4, 0.2]).unwrap();
        let j = joint_distribution(&a, &b, &v, -1.0).unwrap();
        let single = measurement_distribution(&eigendecompose_default(&a).unwrap(), &v).unwrap();
        assert_eq!(j.entries.len(), 3);
        for (e, (&p, &w)) in j.entries.iter().zip(single.points.iter().zip(&single.masses)) {
            assert_eq!(e.b, 1.0);
            assert_eq!(e.a, p);
            assert!((e.mass - w).abs() < 1e-12);
        }
    }

    #[test]
    fn pauli_x_y_rejected_with_norm() {
        let v = StateVector::from_real(&[1.0, 0.0]).unwrap();
        let err =
            joint_distribution(&HermitianOperator::pauli_x(), &HermitianOperator::pauli_y(), &v, -1.0)
                .unwrap_err();
        match err {
            Error::Incompatible { commutator_norm, .. } => assert!((commutator_norm - 2.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_a_is_resolved_by_b() {
        // A is degenerate on the first two levels; B splits them.
        let a = HermitianOperator::from_real_rows(3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        let b = HermitianOperator::from_real_rows(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 5.0]).unwrap();
        let v = StateVector::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let j = joint_distribution(&a, &b, &v, -1.0).unwrap();
        assert_eq!(j.entries.len(), 3);
        assert!((j.entries[0].mass - 0.25).abs() < 1e-12); // (1, -1)
        assert!((j.entries[1].mass - 0.25).abs() < 1e-12); // (1, +1)
        assert!((j.entries[2].mass - 0.5).abs() < 1e-12); // (2, 5)
        assert!(marginal_defect(&j, &a, &b, &v).unwrap() <= 1e-12);
    }
}
