//! The symmetry-protected quantum cellular automaton on virtual rings.
//!
//! One automaton step is conjugation by `C(0) = Hbar * Lambdabar`, the
//! product of Hadamards on every ring site and controlled-Z on every ring
//! edge `(k, k+1 mod n)`. On Pauli generators the step acts as
//!
//! ```text
//!   Z_k  ->  X_k
//!   X_k  ->  X_{k-1} Z_k X_{k+1}
//! ```
//!
//! with no phase on the generators; general operators are conjugated by
//! expanding the canonical `i^phase X(x) Z(z)` form, so phases stay exact.
//! The evolution is periodic with period `n` for every even ring size, and
//! block measurement outcomes accumulate to a plain Pauli byproduct.

use crate::bits::BitVec;
use crate::linalg::{self, CMat};
use crate::pauli::{LatticeError, Pauli, Phase};
use thiserror::Error;

/// A Pauli operator indexed by the `n` cyclic ring positions.
pub type RingPauli = Pauli;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QcaError {
    #[error("ring size must be even and within 4..=64, got {0}")]
    RingSize(usize),
    #[error("operator is defined on {got} positions, automaton ring has {expected}")]
    RingMismatch { expected: usize, got: usize },
    #[error("no period found within {0} steps")]
    NoPeriod(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The ring transition function, represented by its conjugation action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QcaStep {
    n: usize,
}

impl QcaStep {
    pub fn new(n: usize) -> Result<Self, QcaError> {
        if n < 4 || n > 64 || n % 2 != 0 {
            return Err(QcaError::RingSize(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, p: &RingPauli) -> Result<(), QcaError> {
        if p.len() != self.n {
            return Err(QcaError::RingMismatch {
                expected: self.n,
                got: p.len(),
            });
        }
        Ok(())
    }

    /// Image of the generator `X_k` under one forward step.
    fn image_x(&self, k: usize) -> RingPauli {
        let n = self.n;
        let left = Pauli::single_x(n, (k + n - 1) % n);
        let mid = Pauli::single_z(n, k);
        let right = Pauli::single_x(n, (k + 1) % n);
        left.multiply(&mid).unwrap().multiply(&right).unwrap()
    }

    /// Image of the generator `Z_k` under one forward step.
    fn image_z(&self, k: usize) -> RingPauli {
        Pauli::single_x(self.n, k)
    }

    /// `C(0) P C(0)^dagger` with exact phase tracking.
    pub fn conjugate(&self, p: &RingPauli) -> Result<RingPauli, QcaError> {
        self.check(p)?;
        let mut out = Pauli::identity(self.n);
        for k in 0..self.n {
            if p.xbits().get(k) {
                out = out.multiply(&self.image_x(k))?;
            }
        }
        for k in 0..self.n {
            if p.zbits().get(k) {
                out = out.multiply(&self.image_z(k))?;
            }
        }
        let mut out = out;
        out.set_phase(Phase::from_exponent(
            out.phase().exponent() as i64 + p.phase().exponent() as i64,
        ));
        Ok(out)
    }

    /// `C(0)^dagger P C(0)`, the inverse automaton step.
    pub fn conjugate_inverse(&self, p: &RingPauli) -> Result<RingPauli, QcaError> {
        self.check(p)?;
        let n = self.n;
        let mut out = Pauli::identity(n);
        for k in 0..n {
            if p.xbits().get(k) {
                out = out.multiply(&Pauli::single_z(n, k))?;
            }
        }
        for k in 0..n {
            if p.zbits().get(k) {
                let left = Pauli::single_z(n, (k + n - 1) % n);
                let mid = Pauli::single_x(n, k);
                let right = Pauli::single_z(n, (k + 1) % n);
                let img = left.multiply(&mid)?.multiply(&right)?;
                out = out.multiply(&img)?;
            }
        }
        let mut out = out;
        out.set_phase(Phase::from_exponent(
            out.phase().exponent() as i64 + p.phase().exponent() as i64,
        ));
        Ok(out)
    }

    /// Apply `steps` forward automaton steps (negative values step backward).
    pub fn conjugate_pow(&self, p: &RingPauli, steps: i64) -> Result<RingPauli, QcaError> {
        let mut out = p.clone();
        if steps >= 0 {
            for _ in 0..steps {
                out = self.conjugate(&out)?;
            }
        } else {
            for _ in 0..(-steps) {
                out = self.conjugate_inverse(&out)?;
            }
        }
        Ok(out)
    }

    /// Dense `2^n x 2^n` matrix of `C(0) = Hbar * Lambdabar`.
    pub fn dense(&self) -> CMat {
        let n = self.n;
        let mut lambda = linalg::identity(1 << n);
        for k in 0..n {
            lambda = linalg::cz(k, (k + 1) % n, n) * lambda;
        }
        linalg::hadamard_all(n) * lambda
    }
}

/// Symplectic `2n x 2n` GF(2) matrix of the automaton step, rows = images
/// of the `(x|z)` basis vectors.
fn symplectic_rows(step: &QcaStep) -> Vec<BitVec> {
    let n = step.n;
    let mut rows = Vec::with_capacity(2 * n);
    let mut push_row = |img: &RingPauli, rows: &mut Vec<BitVec>| {
        let mut row = BitVec::zeros(2 * n);
        for j in 0..n {
            row.set(j, img.xbits().get(j));
            row.set(n + j, img.zbits().get(j));
        }
        rows.push(row);
    };
    for k in 0..n {
        push_row(&step.image_x(k), &mut rows);
    }
    for k in 0..n {
        push_row(&step.image_z(k), &mut rows);
    }
    rows
}

fn compose(outer: &[BitVec], inner: &[BitVec]) -> Vec<BitVec> {
    let dim = inner.len();
    inner
        .iter()
        .map(|row| {
            let mut out = BitVec::zeros(dim);
            for j in row.ones() {
                out.xor_assign(&outer[j]);
            }
            out
        })
        .collect()
}

fn is_identity(rows: &[BitVec]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(j, row)| row.weight() == 1 && row.get(j))
}

/// Smallest `p >= 1` such that `p` automaton steps act as the identity on
/// the symplectic representation. Phases are reported separately by
/// [`period_phases`].
pub fn qca_period(n: usize) -> Result<usize, QcaError> {
    let step = QcaStep::new(n)?;
    let m = symplectic_rows(&step);
    let mut acc = m.clone();
    let bound = 8 * n;
    for p in 1..=bound {
        if is_identity(&acc) {
            return Ok(p);
        }
        acc = compose(&m, &acc);
    }
    Err(QcaError::NoPeriod(bound))
}

/// Signs picked up by the generators under `p`-fold conjugation, ordered
/// `X_0..X_{n-1}, Z_0..Z_{n-1}`.
pub fn period_phases(n: usize, p: usize) -> Result<Vec<Phase>, QcaError> {
    let step = QcaStep::new(n)?;
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        let img = step.conjugate_pow(&Pauli::single_x(n, k), p as i64)?;
        out.push(img.phase());
    }
    for k in 0..n {
        let img = step.conjugate_pow(&Pauli::single_z(n, k), p as i64)?;
        out.push(img.phase());
    }
    Ok(out)
}

/// The `n^2` measurement-outcome bits of one block: ring `t` holds the bits
/// of `Z(i_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockConfig {
    n: usize,
    rows: Vec<BitVec>,
}

impl BlockConfig {
    pub fn new(n: usize, rows: Vec<BitVec>) -> Result<Self, QcaError> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(QcaError::RingMismatch {
                expected: n,
                got: rows.len(),
            });
        }
        Ok(Self { n, rows })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            rows: (0..n).map(|_| BitVec::zeros(n)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn set(&mut self, ring: usize, position: usize, value: bool) {
        self.rows[ring].set(position, value);
    }
}

/// Accumulated logical byproduct of a block of X-basis outcomes: each ring's
/// `Z(i_t)` is pushed forward through the automaton steps of the remaining
/// rings and the images are multiplied in ring order.
pub fn block_byproduct(step: &QcaStep, cfg: &BlockConfig) -> Result<RingPauli, QcaError> {
    let n = step.n();
    if cfg.n() != n {
        return Err(QcaError::RingMismatch {
            expected: n,
            got: cfg.n(),
        });
    }
    let mut out = Pauli::identity(n);
    for (t, row) in cfg.rows().iter().enumerate() {
        let z = Pauli::from_parts(BitVec::zeros(n), row.clone(), Phase::PLUS_ONE);
        let pushed = step.conjugate_pow(&z, (n - 1 - t) as i64)?;
        out = out.multiply(&pushed)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn generator_images() {
        let step = QcaStep::new(6).unwrap();
        let z2 = Pauli::single_z(6, 2);
        assert_eq!(step.conjugate(&z2).unwrap(), Pauli::single_x(6, 2));

        let x2 = Pauli::single_x(6, 2);
        let img = step.conjugate(&x2).unwrap();
        let expect = Pauli::single_x(6, 1)
            .multiply(&Pauli::single_z(6, 2))
            .unwrap()
            .multiply(&Pauli::single_x(6, 3))
            .unwrap();
        assert_eq!(img, expect);

        let id = Pauli::identity(6);
        assert_eq!(step.conjugate(&id).unwrap(), id);
    }

    #[test]
    fn inverse_undoes_forward() {
        let step = QcaStep::new(8).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..30 {
            let mut x = BitVec::zeros(8);
            let mut z = BitVec::zeros(8);
            for k in 0..8 {
                x.set(k, rng.random());
                z.set(k, rng.random());
            }
            let p = Pauli::from_parts(x, z, Phase::from_exponent(rng.random_range(0..4)));
            let roundtrip = step
                .conjugate_inverse(&step.conjugate(&p).unwrap())
                .unwrap();
            assert_eq!(roundtrip, p);
        }
    }

    #[test]
    fn dense_oracle_agrees_on_all_generators() {
        // Symbolic conjugation equals 16x16 dense conjugation for all eight
        // single-site generators at n = 4.
        let step = QcaStep::new(4).unwrap();
        let c0 = step.dense();
        let c0d = c0.adjoint();
        for k in 0..4 {
            for p in [Pauli::single_x(4, k), Pauli::single_z(4, k)] {
                let sym = step.conjugate(&p).unwrap().to_dense();
                let dense = &c0 * p.to_dense() * &c0d;
                assert_abs_diff_eq!((sym - dense).norm(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn dense_oracle_agrees_on_random_operators() {
        let step = QcaStep::new(4).unwrap();
        let c0 = step.dense();
        let c0d = c0.adjoint();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut x = BitVec::zeros(4);
            let mut z = BitVec::zeros(4);
            for k in 0..4 {
                x.set(k, rng.random());
                z.set(k, rng.random());
            }
            let p = Pauli::from_parts(x, z, Phase::from_exponent(rng.random_range(0..4)));
            let sym = step.conjugate(&p).unwrap().to_dense();
            let dense = &c0 * p.to_dense() * &c0d;
            assert_abs_diff_eq!((sym - dense).norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn periods_equal_ring_size() {
        for n in (4..=32).step_by(2) {
            assert_eq!(qca_period(n).unwrap(), n, "period at n={n}");
        }
    }

    #[test]
    fn period_rejects_bad_ring() {
        assert!(qca_period(5).is_err());
        assert!(qca_period(2).is_err());
        assert!(qca_period(66).is_err());
    }

    #[test]
    fn conjugation_preserves_commutation() {
        let step = QcaStep::new(6).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut make = || {
                let mut x = BitVec::zeros(6);
                let mut z = BitVec::zeros(6);
                for k in 0..6 {
                    x.set(k, rng.random());
                    z.set(k, rng.random());
                }
                Pauli::from_parts(x, z, Phase::PLUS_ONE)
            };
            let p = make();
            let q = make();
            let before = p.commutes(&q).unwrap();
            let after = step
                .conjugate(&p)
                .unwrap()
                .commutes(&step.conjugate(&q).unwrap())
                .unwrap();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn byproduct_of_zero_config_is_identity() {
        let step = QcaStep::new(4).unwrap();
        let b = block_byproduct(&step, &BlockConfig::zeros(4)).unwrap();
        assert!(b.is_identity_up_to_phase());
    }

    #[test]
    fn byproduct_single_bit_matches_pushed_generator() {
        let step = QcaStep::new(4).unwrap();
        let c0 = step.dense();
        for t in 0..4 {
            for k in 0..4 {
                let mut cfg = BlockConfig::zeros(4);
                cfg.set(t, k, true);
                let b = block_byproduct(&step, &cfg).unwrap();
                let expect = step
                    .conjugate_pow(&Pauli::single_z(4, k), (4 - 1 - t) as i64)
                    .unwrap();
                assert_eq!(b, expect);

                // Dense check of the push chain.
                let steps = 4 - 1 - t;
                let mut dense = Pauli::single_z(4, k).to_dense();
                for _ in 0..steps {
                    dense = &c0 * dense * c0.adjoint();
                }
                assert_abs_diff_eq!((b.to_dense() - dense).norm(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn byproduct_is_projective_homomorphism() {
        let step = QcaStep::new(4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..40 {
            let mut a = BlockConfig::zeros(4);
            let mut b = BlockConfig::zeros(4);
            for t in 0..4 {
                for k in 0..4 {
                    a.set(t, k, rng.random());
                    b.set(t, k, rng.random());
                }
            }
            let mut sum = BlockConfig::zeros(4);
            for t in 0..4 {
                for k in 0..4 {
                    sum.set(t, k, a.rows()[t].get(k) ^ b.rows()[t].get(k));
                }
            }
            let ba = block_byproduct(&step, &a).unwrap();
            let bb = block_byproduct(&step, &b).unwrap();
            let bsum = block_byproduct(&step, &sum).unwrap();
            let prod = ba.multiply(&bb).unwrap();
            assert_eq!(prod.xbits(), bsum.xbits());
            assert_eq!(prod.zbits(), bsum.zbits());
        }
    }

    #[test]
    fn period_phases_are_signs() {
        // C(0)^n restores every generator up to a sign, never +-i.
        for n in [4usize, 6, 8] {
            let p = qca_period(n).unwrap();
            for phase in period_phases(n, p).unwrap() {
                assert!(phase == Phase::PLUS_ONE || phase == Phase::MINUS_ONE);
            }
        }
    }
}
