//! Spin matrices and the massive Wigner split `J = L + S`.

use serde::{Deserialize, Serialize};

use crate::algebra::field::{levi_civita, FiberMat, SmoothMatrixField, C64};
use crate::algebra::operator::{DiffOperator, Domain};
use crate::error::{Error, Result};

/// Role of a triple in a splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleLabel {
    J,
    S,
    L,
    Parallel,
    Perp,
    GaugeSpin,
}

/// Three operators sharing rank and domain.
#[derive(Clone, Debug)]
pub struct OperatorTriple {
    pub label: TripleLabel,
    ops: [DiffOperator; 3],
}

impl OperatorTriple {
    pub fn new(label: TripleLabel, ops: [DiffOperator; 3]) -> Result<Self> {
        let r = ops[0].rank();
        if let Some(op) = ops.iter().find(|o| o.rank() != r) {
            return Err(Error::RankMismatch {
                left: r,
                right: op.rank(),
            });
        }
        if ops.iter().any(|o| o.domain() != ops[0].domain()) {
            return Err(Error::Domain(
                "triple components live on different domains".into(),
            ));
        }
        Ok(OperatorTriple { label, ops })
    }

    pub fn ops(&self) -> &[DiffOperator] {
        &self.ops
    }

    pub fn get(&self, n: usize) -> &DiffOperator {
        &self.ops[n]
    }

    pub fn rank(&self) -> usize {
        self.ops[0].rank()
    }

    pub fn domain(&self) -> Domain {
        *self.ops[0].domain()
    }

    pub fn sub(&self, o: &OperatorTriple, label: TripleLabel) -> Result<OperatorTriple> {
        let [a, b, c] = &self.ops;
        OperatorTriple::new(
            label,
            [a.sub(o.get(0))?, b.sub(o.get(1))?, c.sub(o.get(2))?],
        )
    }

    pub fn add(&self, o: &OperatorTriple, label: TripleLabel) -> Result<OperatorTriple> {
        let [a, b, c] = &self.ops;
        OperatorTriple::new(
            label,
            [a.add(o.get(0))?, b.add(o.get(1))?, c.add(o.get(2))?],
        )
    }
}

/// Spin-`s` matrices in the basis `|s, m⟩`, `m = s, s−1, …, −s`.
pub fn spin_matrices(s: f64) -> Result<[FiberMat<f64>; 3]> {
    if !(s >= 0.0) || s.fract() != 0.0 || s > 64.0 {
        return Err(Error::Domain(format!(
            "spin must be a non-negative integer (bosons only), got {s}"
        )));
    }
    let dim = 2 * s as usize + 1;
    let m = |i: usize| s - i as f64;
    // S₊|m⟩ = √(s(s+1) − m(m+1)) |m+1⟩; row i−1 holds m+1
    let plus = |i: usize, j: usize| {
        if j == i + 1 {
            (s * (s + 1.0) - m(j) * (m(j) + 1.0)).sqrt()
        } else {
            0.0
        }
    };
    let s1 = FiberMat::from_fn(dim, |i, j| C64::new(0.5 * (plus(i, j) + plus(j, i)), 0.0));
    let s2 = FiberMat::from_fn(dim, |i, j| C64::new(0.0, -0.5 * (plus(i, j) - plus(j, i))));
    let s3 = FiberMat::from_fn(dim, |i, j| C64::new(if i == j { m(i) } else { 0.0 }, 0.0));
    Ok([s1, s2, s3])
}

/// Cartesian spin-1 matrices `(S_n)_{pq} = −i ε_{npq}`, acting on `C³` as
/// infinitesimal rotations.
pub fn cartesian_spin1() -> [FiberMat<f64>; 3] {
    std::array::from_fn(|n| FiberMat::from_fn(3, |p, q| C64::new(0.0, -levi_civita(n, p, q))))
}

/// Orbital triple `−i(k × ∇) ⊗ 1_rank`.
pub fn orbital_triple(rank: usize, domain: Domain) -> OperatorTriple {
    OperatorTriple {
        label: TripleLabel::L,
        ops: std::array::from_fn(|n| DiffOperator::orbital(n, rank, domain)),
    }
}

/// Constant internal triple.
pub fn constant_triple(
    mats: &[FiberMat<f64>; 3],
    domain: Domain,
    label: TripleLabel,
) -> OperatorTriple {
    OperatorTriple {
        label,
        ops: std::array::from_fn(|n| {
            DiffOperator::multiplication(SmoothMatrixField::constant(mats[n].clone()), domain)
        }),
    }
}

#[derive(Clone, Debug)]
pub struct MassiveSplit {
    pub j: OperatorTriple,
    pub s: OperatorTriple,
    pub l: OperatorTriple,
    pub spin: f64,
    pub mass: f64,
}

/// Wigner-basis split for a massive spin-`s` particle.
#[allow(non_snake_case)]
pub fn build_massive_JSL(s: f64, mass: f64) -> Result<MassiveSplit> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Domain(format!(
            "massive construction needs m > 0, got {mass}"
        )));
    }
    let mats = spin_matrices(s)?;
    let domain = Domain::everywhere();
    let rank = mats[0].rank();
    let sp = constant_triple(&mats, domain, TripleLabel::S);
    let l = orbital_triple(rank, domain);
    let j = l.add(&sp, TripleLabel::J)?;
    Ok(MassiveSplit {
        j,
        s: sp,
        l,
        spin: s,
        mass,
    })
}
