//! Torus geometry and the symplectic Pauli algebra.
//!
//! Operators are stored in the canonical form `i^phase * X(x) * Z(z)` with
//! `x`, `z` bit vectors over the site index space. Group multiplication,
//! inversion and the commutation form are exact; phases live in `Z_4`.
//!
//! The lattice is a simple square lattice on a torus with a short
//! circumference `n` (even, at least 4) and a long circumference `n*N`.
//! Sites are indexed `(x, y)` with `x` wrapping mod `n*N` and `y` mod `n`;
//! the linear index is `k = x*n + y` so bit-vector layouts are reproducible.

use crate::bits::BitVec;
use crate::linalg::{self, CMat, C64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: operators indexed over {left} and {right} sites")]
    Shape { left: usize, right: usize },
}

/// A lattice site `(x, y)`; `x` runs along the long direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub x: i64,
    pub y: i64,
}

impl Site {
    pub fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

/// Torus geometry: `n` even and at least 4, long circumference `n*N`.
///
/// `n = 2` is excluded: on a 2-ring the neighbours `k-1` and `k+1` coincide,
/// degenerating both the star supports and the controlled-Z ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusLattice {
    n: usize,
    blocks: usize,
}

impl TorusLattice {
    pub fn new(n: usize, blocks: usize) -> Result<Self, LatticeError> {
        if n < 4 || n % 2 != 0 {
            return Err(LatticeError::Domain(format!(
                "short circumference must be even and >= 4, got {n}"
            )));
        }
        if blocks < 1 {
            return Err(LatticeError::Domain("block count must be >= 1".into()));
        }
        Ok(Self { n, blocks })
    }

    /// Short circumference `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Long-direction block count `N`.
    pub fn blocks(&self) -> usize {
        self.blocks
    }

    /// Long circumference `n*N`.
    pub fn width(&self) -> usize {
        self.n * self.blocks
    }

    pub fn num_sites(&self) -> usize {
        self.n * self.n * self.blocks
    }

    /// Wrap a site onto the torus.
    pub fn wrap(&self, site: Site) -> Site {
        let w = self.width() as i64;
        let n = self.n as i64;
        Site::new(site.x.rem_euclid(w), site.y.rem_euclid(n))
    }

    /// Linear index `k = x*n + y` of a (wrapped) site.
    pub fn index(&self, site: Site) -> usize {
        let s = self.wrap(site);
        s.x as usize * self.n + s.y as usize
    }

    pub fn site_at(&self, index: usize) -> Site {
        assert!(index < self.num_sites());
        Site::new((index / self.n) as i64, (index % self.n) as i64)
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.num_sites()).map(move |k| self.site_at(k))
    }

    /// Sublattice parity `(x + y) mod 2` of a site.
    pub fn parity(&self, site: Site) -> u8 {
        let s = self.wrap(site);
        ((s.x + s.y) % 2) as u8
    }

    /// The four lattice neighbours of a site, torus-wrapped.
    pub fn neighbors(&self, site: Site) -> [Site; 4] {
        [
            self.wrap(Site::new(site.x - 1, site.y)),
            self.wrap(Site::new(site.x + 1, site.y)),
            self.wrap(Site::new(site.x, site.y - 1)),
            self.wrap(Site::new(site.x, site.y + 1)),
        ]
    }
}

/// Fourth root of unity tracked as an exponent of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const PLUS_ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Self {
        Phase(e.rem_euclid(4) as u8)
    }

    pub fn exponent(&self) -> u8 {
        self.0
    }

    pub fn as_complex(&self) -> C64 {
        match self.0 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            0 => write!(f, "+1"),
            1 => write!(f, "+i"),
            2 => write!(f, "-1"),
            _ => write!(f, "-i"),
        }
    }
}

/// A Pauli operator `i^phase * X(xbits) * Z(zbits)` over a fixed index space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pauli {
    xbits: BitVec,
    zbits: BitVec,
    phase_exp: u8,
}

impl Pauli {
    pub fn identity(sites: usize) -> Self {
        Self {
            xbits: BitVec::zeros(sites),
            zbits: BitVec::zeros(sites),
            phase_exp: 0,
        }
    }

    pub fn from_parts(xbits: BitVec, zbits: BitVec, phase: Phase) -> Self {
        assert_eq!(xbits.len(), zbits.len());
        Self {
            xbits,
            zbits,
            phase_exp: phase.exponent(),
        }
    }

    pub fn single_x(sites: usize, k: usize) -> Self {
        Self::from_parts(
            BitVec::from_indices(sites, &[k]),
            BitVec::zeros(sites),
            Phase::PLUS_ONE,
        )
    }

    pub fn single_z(sites: usize, k: usize) -> Self {
        Self::from_parts(
            BitVec::zeros(sites),
            BitVec::from_indices(sites, &[k]),
            Phase::PLUS_ONE,
        )
    }

    /// `Y_k = i X_k Z_k`.
    pub fn single_y(sites: usize, k: usize) -> Self {
        Self::from_parts(
            BitVec::from_indices(sites, &[k]),
            BitVec::from_indices(sites, &[k]),
            Phase::PLUS_I,
        )
    }

    pub fn len(&self) -> usize {
        self.xbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn xbits(&self) -> &BitVec {
        &self.xbits
    }

    pub fn zbits(&self) -> &BitVec {
        &self.zbits
    }

    pub fn phase(&self) -> Phase {
        Phase(self.phase_exp)
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase_exp = phase.exponent();
    }

    /// Number of sites acted on non-trivially.
    pub fn weight(&self) -> usize {
        (0..self.len())
            .filter(|&k| self.xbits.get(k) || self.zbits.get(k))
            .count()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.xbits.is_zero() && self.zbits.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.zbits.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.xbits.is_zero()
    }

    fn check_shape(&self, other: &Self) -> Result<(), LatticeError> {
        if self.len() != other.len() {
            return Err(LatticeError::Shape {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Group product `self * other` with exact phase tracking.
    ///
    /// Moving `other`'s X part through `self`'s Z part contributes
    /// `(-1)^(self.z . other.x)`.
    pub fn multiply(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_shape(other)?;
        let sign = u8::from(self.zbits.dot(&other.xbits));
        let mut xbits = self.xbits.clone();
        xbits.xor_assign(&other.xbits);
        let mut zbits = self.zbits.clone();
        zbits.xor_assign(&other.zbits);
        Ok(Self {
            xbits,
            zbits,
            phase_exp: (self.phase_exp + other.phase_exp + 2 * sign) % 4,
        })
    }

    /// Group inverse.
    pub fn inverse(&self) -> Self {
        let y = u8::from(self.xbits.dot(&self.zbits));
        Self {
            xbits: self.xbits.clone(),
            zbits: self.zbits.clone(),
            phase_exp: (4 - self.phase_exp + 2 * y) % 4,
        }
    }

    /// `+1` when the operators commute, `-1` when they anticommute.
    pub fn commutes(&self, other: &Self) -> Result<i8, LatticeError> {
        self.check_shape(other)?;
        let form = self.xbits.dot(&other.zbits) ^ self.zbits.dot(&other.xbits);
        Ok(if form { -1 } else { 1 })
    }

    /// Apply to a state vector without materialising the dense matrix.
    /// Qubit `0` sits on the most significant index, matching `to_dense`.
    pub fn apply_to_vector(&self, v: &crate::linalg::CVec) -> crate::linalg::CVec {
        let n = self.len();
        let dim = 1usize << n;
        assert_eq!(v.len(), dim);
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        for k in 0..n {
            if self.xbits.get(k) {
                xmask |= 1 << (n - 1 - k);
            }
            if self.zbits.get(k) {
                zmask |= 1 << (n - 1 - k);
            }
        }
        let phase = self.phase().as_complex();
        let mut out = crate::linalg::CVec::zeros(dim);
        for b in 0..dim {
            let sign = if ((b & zmask).count_ones() & 1) == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ xmask] += phase * sign * v[b];
        }
        out
    }

    /// Dense matrix over `2^sites` dimensions; qubit `0` on the most
    /// significant index. Intended for small oracle checks only.
    pub fn to_dense(&self) -> CMat {
        let n = self.len();
        assert!(n <= 14, "dense Pauli restricted to small registers");
        let mut m = linalg::identity(1);
        for k in 0..n {
            let factor = match (self.xbits.get(k), self.zbits.get(k)) {
                (false, false) => linalg::identity(2),
                (true, false) => linalg::pauli_x(),
                (false, true) => linalg::pauli_z(),
                // X*Z; the i^phase prefactor stays outside.
                (true, true) => linalg::pauli_x() * linalg::pauli_z(),
            };
            m = linalg::kron(&m, &factor);
        }
        m * self.phase().as_complex()
    }
}

impl std::fmt::Debug for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.phase())?;
        write!(f, " ")?;
        for k in 0..self.len() {
            let c = match (self.xbits.get(k), self.zbits.get(k)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Direction of a diagonal stripe symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StripeSign {
    Plus,
    Minus,
}

/// One of the `2n` diagonal stripe symmetries `U_{c,+-}`: a product of
/// Pauli X along a full diagonal of the torus, weight `n*N`.
#[derive(Clone, Debug)]
pub struct SymmetryElement {
    pub c: usize,
    pub sign: StripeSign,
    operator: Pauli,
}

impl SymmetryElement {
    pub fn operator(&self) -> &Pauli {
        &self.operator
    }
}

/// Build the stripe symmetry `U_{c,+-}` with X support on the diagonal
/// `{(x, c +- x mod n)}`.
pub fn make_symmetry(
    lattice: &TorusLattice,
    c: usize,
    sign: StripeSign,
) -> Result<SymmetryElement, LatticeError> {
    if c >= lattice.n() {
        return Err(LatticeError::Domain(format!(
            "diagonal offset c={c} out of range for n={}",
            lattice.n()
        )));
    }
    let mut xbits = BitVec::zeros(lattice.num_sites());
    for x in 0..lattice.width() as i64 {
        let y = match sign {
            StripeSign::Plus => c as i64 + x,
            StripeSign::Minus => c as i64 - x,
        };
        xbits.set(lattice.index(Site::new(x, y)), true);
    }
    Ok(SymmetryElement {
        c,
        sign,
        operator: Pauli::from_parts(xbits, BitVec::zeros(lattice.num_sites()), Phase::PLUS_ONE),
    })
}

/// All `2n` stripe symmetries of the lattice.
pub fn all_symmetries(lattice: &TorusLattice) -> Vec<SymmetryElement> {
    let mut out = Vec::with_capacity(2 * lattice.n());
    for c in 0..lattice.n() {
        for sign in [StripeSign::Plus, StripeSign::Minus] {
            out.push(make_symmetry(lattice, c, sign).expect("c is in range"));
        }
    }
    out
}

/// The star operator: Pauli Z on the four neighbours of `(x, y)`.
pub fn star(lattice: &TorusLattice, x: i64, y: i64) -> Pauli {
    let mut zbits = BitVec::zeros(lattice.num_sites());
    for nb in lattice.neighbors(Site::new(x, y)) {
        zbits.flip(lattice.index(nb));
    }
    Pauli::from_parts(BitVec::zeros(lattice.num_sites()), zbits, Phase::PLUS_ONE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn lat(n: usize, blocks: usize) -> TorusLattice {
        TorusLattice::new(n, blocks).unwrap()
    }

    #[test]
    fn lattice_rejects_bad_circumference() {
        assert!(TorusLattice::new(2, 1).is_err());
        assert!(TorusLattice::new(5, 1).is_err());
        assert!(TorusLattice::new(4, 0).is_err());
    }

    #[test]
    fn symmetry_supports_match_diagonals() {
        let l = lat(4, 1);
        let u = make_symmetry(&l, 0, StripeSign::Plus).unwrap();
        let expect: Vec<usize> = [(0, 0), (1, 1), (2, 2), (3, 3)]
            .iter()
            .map(|&(x, y)| l.index(Site::new(x, y)))
            .collect();
        assert_eq!(u.operator().xbits().ones().collect::<Vec<_>>(), expect);
        assert!(u.operator().is_x_type());

        let u = make_symmetry(&l, 1, StripeSign::Minus).unwrap();
        let mut expect: Vec<usize> = [(0, 1), (1, 0), (2, 3), (3, 2)]
            .iter()
            .map(|&(x, y)| l.index(Site::new(x, y)))
            .collect();
        let mut got: Vec<usize> = u.operator().xbits().ones().collect();
        got.sort_unstable();
        expect.sort_unstable();
        assert_eq!(got, expect);
    }

    #[test]
    fn symmetry_rejects_out_of_range_offset() {
        let l = lat(4, 1);
        assert!(make_symmetry(&l, 4, StripeSign::Plus).is_err());
    }

    #[test]
    fn symmetry_weight_is_width() {
        for (n, blocks) in [(4, 1), (4, 2), (6, 1), (6, 2), (8, 1)] {
            let l = lat(n, blocks);
            for u in all_symmetries(&l) {
                assert_eq!(u.operator().weight(), l.width());
                assert!(u.operator().is_x_type());
            }
        }
    }

    #[test]
    fn star_supports_with_wrap() {
        let l = lat(4, 1);
        let s = star(&l, 1, 1);
        let mut expect: Vec<usize> = [(0, 1), (2, 1), (1, 0), (1, 2)]
            .iter()
            .map(|&(x, y)| l.index(Site::new(x, y)))
            .collect();
        let mut got: Vec<usize> = s.zbits().ones().collect();
        got.sort_unstable();
        expect.sort_unstable();
        assert_eq!(got, expect);

        let s = star(&l, 0, 0);
        let mut expect: Vec<usize> = [(3, 0), (1, 0), (0, 3), (0, 1)]
            .iter()
            .map(|&(x, y)| l.index(Site::new(x, y)))
            .collect();
        let mut got: Vec<usize> = s.zbits().ones().collect();
        got.sort_unstable();
        expect.sort_unstable();
        assert_eq!(got, expect);
    }

    #[test]
    fn star_is_an_involution() {
        let l = lat(6, 1);
        let s = star(&l, 2, 3);
        let sq = s.multiply(&s).unwrap();
        assert!(sq.is_identity_up_to_phase());
        assert_eq!(sq.phase(), Phase::PLUS_ONE);
    }

    #[test]
    fn x_times_z_phase_tracking() {
        // X*Z has canonical phase 0; Z*X picks up -1; XZ * ZX = identity.
        let x = Pauli::single_x(1, 0);
        let z = Pauli::single_z(1, 0);
        let xz = x.multiply(&z).unwrap();
        let zx = z.multiply(&x).unwrap();
        assert_eq!(xz.phase(), Phase::PLUS_ONE);
        assert_eq!(zx.phase(), Phase::MINUS_ONE);
        let prod = xz.multiply(&zx).unwrap();
        assert!(prod.is_identity_up_to_phase());
        assert_eq!(prod.phase(), Phase::PLUS_ONE);

        // Identity is neutral.
        let id = Pauli::identity(1);
        assert_eq!(x.multiply(&id).unwrap(), x);
    }

    #[test]
    fn single_site_anticommutation() {
        let x = Pauli::single_x(3, 1);
        let z = Pauli::single_z(3, 1);
        assert_eq!(x.commutes(&z).unwrap(), -1);
        let z2 = Pauli::single_z(3, 2);
        assert_eq!(x.commutes(&z2).unwrap(), 1);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let x = Pauli::single_x(3, 0);
        let z = Pauli::single_z(4, 0);
        assert!(x.multiply(&z).is_err());
        assert!(x.commutes(&z).is_err());
    }

    #[test]
    fn stars_commute_with_all_symmetries() {
        for (n, blocks) in [(4, 1), (4, 2), (6, 1), (6, 2), (8, 1), (8, 2)] {
            let l = lat(n, blocks);
            let symmetries = all_symmetries(&l);
            for site in l.sites() {
                let s = star(&l, site.x, site.y);
                for u in &symmetries {
                    assert_eq!(s.commutes(u.operator()).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn two_local_diagonal_pair_commutes_with_all_symmetries() {
        // Z_i Z_j with j at the consecutive intersection (n/2, n/2) away.
        for n in [4usize, 6, 8] {
            let l = lat(n, 2);
            let half = (n / 2) as i64;
            let i = Site::new(1, 2 % n as i64);
            let j = l.wrap(Site::new(i.x + half, i.y + half));
            let mut zbits = BitVec::zeros(l.num_sites());
            zbits.set(l.index(i), true);
            zbits.set(l.index(j), true);
            let op = Pauli::from_parts(BitVec::zeros(l.num_sites()), zbits, Phase::PLUS_ONE);
            for u in all_symmetries(&l) {
                assert_eq!(op.commutes(u.operator()).unwrap(), 1);
            }
        }
    }

    #[test]
    fn single_z_anticommutes_with_some_symmetry() {
        for (n, blocks) in [(4, 1), (6, 1), (8, 2)] {
            let l = lat(n, blocks);
            for site in l.sites() {
                let z = Pauli::single_z(l.num_sites(), l.index(site));
                let any_anti = all_symmetries(&l)
                    .iter()
                    .any(|u| z.commutes(u.operator()).unwrap() == -1);
                assert!(any_anti, "Z at {site:?} commutes with every symmetry");
            }
        }
    }

    fn random_pauli(rng: &mut ChaCha12Rng, sites: usize) -> Pauli {
        let mut x = BitVec::zeros(sites);
        let mut z = BitVec::zeros(sites);
        for k in 0..sites {
            if rng.random::<bool>() {
                x.set(k, true);
            }
            if rng.random::<bool>() {
                z.set(k, true);
            }
        }
        Pauli::from_parts(x, z, Phase::from_exponent(rng.random_range(0..4)))
    }

    #[test]
    fn group_laws_match_dense_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..40 {
            let sites = rng.random_range(1..=5);
            let p = random_pauli(&mut rng, sites);
            let q = random_pauli(&mut rng, sites);
            let r = random_pauli(&mut rng, sites);

            // Product and associativity against dense matrices.
            let pq = p.multiply(&q).unwrap();
            assert_abs_diff_eq!(
                (pq.to_dense() - p.to_dense() * q.to_dense()).norm(),
                0.0,
                epsilon = 1e-12
            );
            let lhs = pq.multiply(&r).unwrap();
            let rhs = p.multiply(&q.multiply(&r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);

            // Inverse and phase consistency P*Q*Q^-1 = P.
            let qinv = q.inverse();
            assert_abs_diff_eq!(
                (qinv.to_dense() - q.to_dense().adjoint()).norm(),
                0.0,
                epsilon = 1e-12
            );
            assert_eq!(pq.multiply(&qinv).unwrap(), p);

            // Commutation sign against the dense commutator.
            let sign = p.commutes(&q).unwrap();
            let dense_pq = p.to_dense() * q.to_dense();
            let dense_qp = q.to_dense() * p.to_dense();
            let diff = if sign == 1 {
                (&dense_pq - &dense_qp).norm()
            } else {
                (&dense_pq + &dense_qp).norm()
            };
            assert_abs_diff_eq!(diff, 0.0, epsilon = 1e-12);
        }
    }
}
