//! Reduction of symmetric Z-operators to star products.
//!
//! Z-operators that commute with all stripe symmetries and fit into a small
//! skewed square decompose into products of star operators. The skewed
//! square lives on one sublattice: its axes are the diagonal unit vectors
//! `d1 = (1,1)` and `d2 = (1,-1)`, and a star centred on the opposite
//! sublattice covers exactly one unit plaquette of this rotated grid.
//!
//! Two routes to a decomposition are provided. [`reduce_to_stars`] is the
//! constructive algorithm: relocate everything to the region boundary by
//! plaquette pushes, then cancel quadruples of Z's sitting on common
//! diagonals with filled rectangles of stars. [`gf2_star_solve`] solves the
//! GF(2) linear system over all star supports and serves as an independent
//! oracle.

use crate::bits::BitVec;
use crate::gf2::{self, Gf2Matrix};
use crate::pauli::{all_symmetries, star, Pauli, Phase, Site, TorusLattice};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StarError {
    #[error("operator does not commute with all stripe symmetries")]
    NotSymmetric,
    #[error("support does not fit into a skewed square of extension smaller than n")]
    NotLocal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cancellation failed to terminate within {0} iterations")]
    IterationBound(usize),
}

/// A product of Pauli Z operators, stored as its support set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSupport {
    lattice: TorusLattice,
    bits: BitVec,
}

impl ZSupport {
    pub fn new(lattice: TorusLattice, sites: &[Site]) -> Self {
        let mut bits = BitVec::zeros(lattice.num_sites());
        for &s in sites {
            bits.flip(lattice.index(s));
        }
        Self { lattice, bits }
    }

    pub fn from_bits(lattice: TorusLattice, bits: BitVec) -> Self {
        assert_eq!(bits.len(), lattice.num_sites());
        Self { lattice, bits }
    }

    /// Views a Z-type Pauli as a support set.
    pub fn from_pauli(lattice: TorusLattice, p: &Pauli) -> Result<Self, StarError> {
        if !p.is_z_type() {
            return Err(StarError::Precondition(
                "operator has an X part, not a Z-type support".into(),
            ));
        }
        Ok(Self {
            lattice,
            bits: p.zbits().clone(),
        })
    }

    pub fn lattice(&self) -> &TorusLattice {
        &self.lattice
    }

    pub fn to_pauli(&self) -> Pauli {
        Pauli::from_parts(
            BitVec::zeros(self.lattice.num_sites()),
            self.bits.clone(),
            Phase::PLUS_ONE,
        )
    }

    pub fn sites(&self) -> Vec<Site> {
        self.bits.ones().map(|k| self.lattice.site_at(k)).collect()
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn contains(&self, site: Site) -> bool {
        self.bits.get(self.lattice.index(site))
    }

    /// Commutation with every stripe symmetry, checked through the Pauli
    /// algebra rather than by counting diagonal overlaps.
    pub fn is_symmetric(&self) -> bool {
        let op = self.to_pauli();
        all_symmetries(&self.lattice)
            .iter()
            .all(|u| op.commutes(u.operator()).unwrap() == 1)
    }

    /// Restriction to one sublattice parity.
    pub fn sublattice_part(&self, parity: u8) -> ZSupport {
        let mut bits = BitVec::zeros(self.lattice.num_sites());
        for k in self.bits.ones() {
            if self.lattice.parity(self.lattice.site_at(k)) == parity {
                bits.set(k, true);
            }
        }
        Self {
            lattice: self.lattice,
            bits,
        }
    }
}

/// The two-local symmetric operator `Z_i Z_j` with `j` at the consecutive
/// diagonal intersection `(n/2, n/2)` away from `i`. It commutes with every
/// stripe symmetry but stretches half-way across the torus.
pub fn two_local_pair(lattice: TorusLattice, i: Site) -> ZSupport {
    let half = (lattice.n() / 2) as i64;
    let j = lattice.wrap(Site::new(i.x + half, i.y + half));
    ZSupport::new(lattice, &[i, j])
}

/// A skewed square region on one sublattice.
///
/// Sites are `anchor + a*d1 + b*d2` for `0 <= a < len_a`, `0 <= b < len_b`.
/// Side lengths are capped at `n/2`, which keeps the horizontal and vertical
/// extension on the original lattice below `n` and guarantees that each
/// torus diagonal meets the region in at most one chart line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkewedRegion {
    anchor: Site,
    len_a: usize,
    len_b: usize,
    parity: u8,
}

impl SkewedRegion {
    pub fn new(
        lattice: &TorusLattice,
        anchor: Site,
        len_a: usize,
        len_b: usize,
    ) -> Result<Self, StarError> {
        let cap = lattice.n() / 2;
        if len_a == 0 || len_b == 0 {
            return Err(StarError::Domain("region side lengths must be >= 1".into()));
        }
        if len_a > cap || len_b > cap {
            return Err(StarError::Domain(format!(
                "region sides ({len_a}, {len_b}) exceed n/2 = {cap}; the skewed square \
                 would span the torus"
            )));
        }
        let anchor = lattice.wrap(anchor);
        Ok(Self {
            anchor,
            len_a,
            len_b,
            parity: lattice.parity(anchor),
        })
    }

    pub fn anchor(&self) -> Site {
        self.anchor
    }

    pub fn len_a(&self) -> usize {
        self.len_a
    }

    pub fn len_b(&self) -> usize {
        self.len_b
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    /// Extension along the lattice x direction, in sites.
    pub fn horizontal_extension(&self) -> usize {
        self.len_a + self.len_b - 1
    }

    /// Extension along the lattice y direction, in sites.
    pub fn vertical_extension(&self) -> usize {
        self.len_a + self.len_b - 1
    }

    pub fn site_at(&self, lattice: &TorusLattice, a: usize, b: usize) -> Site {
        debug_assert!(a < self.len_a && b < self.len_b);
        lattice.wrap(Site::new(
            self.anchor.x + a as i64 + b as i64,
            self.anchor.y + a as i64 - b as i64,
        ))
    }

    /// Chart coordinates of a torus site inside the region, if any.
    pub fn locate(&self, lattice: &TorusLattice, site: Site) -> Option<(usize, usize)> {
        displacement(lattice, self.anchor, site).filter(|&(a, b)| a < self.len_a && b < self.len_b)
    }

    pub fn is_boundary(&self, a: usize, b: usize) -> bool {
        a == 0 || b == 0 || a == self.len_a - 1 || b == self.len_b - 1
    }
}

/// Chart displacement `(a, b)` of `site` relative to `anchor` with both
/// coordinates in `[0, n/2)`, when one exists.
///
/// The chart is unique: the coordinate windows are narrower than the wrap
/// lattice of the skewed sublattice, so at most one torus lift fits.
fn displacement(lattice: &TorusLattice, anchor: Site, site: Site) -> Option<(usize, usize)> {
    let n = lattice.n() as i64;
    let cap = n / 2;
    if lattice.parity(anchor) != lattice.parity(site) {
        return None;
    }
    let dx = (site.x - anchor.x).rem_euclid(lattice.width() as i64);
    if dx > n - 2 {
        return None;
    }
    let dy0 = (site.y - anchor.y).rem_euclid(n);
    for dy in [dy0, dy0 - n] {
        if (dx + dy) % 2 != 0 {
            continue;
        }
        let a = (dx + dy) / 2;
        let b = (dx - dy) / 2;
        if (0..cap).contains(&a) && (0..cap).contains(&b) {
            return Some((a as usize, b as usize));
        }
    }
    None
}

/// A set of star centres whose product is taken mod 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarDecomposition {
    centers: BTreeSet<Site>,
}

impl StarDecomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn centers(&self) -> impl Iterator<Item = Site> + '_ {
        self.centers.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn toggle(&mut self, center: Site) {
        if !self.centers.remove(&center) {
            self.centers.insert(center);
        }
    }

    pub fn merge(&mut self, other: &StarDecomposition) {
        for c in other.centers() {
            self.toggle(c);
        }
    }

    /// Product of the listed star operators.
    pub fn product(&self, lattice: &TorusLattice) -> Pauli {
        let mut out = Pauli::identity(lattice.num_sites());
        for c in self.centers() {
            out = out.multiply(&star(lattice, c.x, c.y)).unwrap();
        }
        out
    }

    /// Whether the star product reproduces `z` bit-exactly.
    pub fn reproduces(&self, z: &ZSupport) -> bool {
        let prod = self.product(z.lattice());
        prod.zbits() == z.to_pauli().zbits() && prod.is_z_type()
    }
}

/// Star centre whose plaquette has its chart minimum at `(a, b)`.
fn plaquette_center(lattice: &TorusLattice, region: &SkewedRegion, a: usize, b: usize) -> Site {
    let s = region.site_at(lattice, a, b);
    lattice.wrap(Site::new(s.x + 1, s.y))
}

/// Move all Z's inside `region` onto its boundary by multiplying with star
/// operators, returning the boundary support and the stars used.
///
/// The sweep walks the chart in lexicographic order and pushes each interior
/// Z through the plaquette above and to the right of it, so trails
/// accumulate on the far boundary edges.
pub fn relocate_to_boundary(
    z: &ZSupport,
    region: &SkewedRegion,
) -> Result<(ZSupport, StarDecomposition), StarError> {
    let lattice = *z.lattice();
    let mut grid = vec![vec![false; region.len_b]; region.len_a];
    for site in z.sites() {
        match region.locate(&lattice, site) {
            Some((a, b)) => grid[a][b] = true,
            None => {
                if lattice.parity(site) != region.parity() {
                    return Err(StarError::Precondition(format!(
                        "support site {site:?} lies on the other sublattice"
                    )));
                }
                return Err(StarError::Precondition(format!(
                    "support site {site:?} is outside the region"
                )));
            }
        }
    }

    let mut stars = StarDecomposition::empty();
    for a in 0..region.len_a {
        for b in 0..region.len_b {
            if grid[a][b] && !region.is_boundary(a, b) {
                grid[a][b] = false;
                grid[a + 1][b] = !grid[a + 1][b];
                grid[a][b + 1] = !grid[a][b + 1];
                grid[a + 1][b + 1] = !grid[a + 1][b + 1];
                stars.toggle(plaquette_center(&lattice, region, a, b));
            }
        }
    }

    let mut sites = Vec::new();
    for a in 0..region.len_a {
        for b in 0..region.len_b {
            if grid[a][b] {
                debug_assert!(region.is_boundary(a, b));
                sites.push(region.site_at(&lattice, a, b));
            }
        }
    }
    Ok((ZSupport::new(lattice, &sites), stars))
}

/// Find a legal skewed region containing the whole support of `z`, which
/// must live on a single sublattice.
fn fit_region(z: &ZSupport) -> Result<SkewedRegion, StarError> {
    let lattice = *z.lattice();
    let sites = z.sites();
    let parity = lattice.parity(sites[0]);
    let cap = lattice.n() / 2;
    for anchor in lattice.sites() {
        if lattice.parity(anchor) != parity {
            continue;
        }
        let mut max_a = 0usize;
        let mut max_b = 0usize;
        let mut ok = true;
        for &s in &sites {
            match displacement(&lattice, anchor, s) {
                Some((a, b)) => {
                    max_a = max_a.max(a);
                    max_b = max_b.max(b);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && max_a < cap && max_b < cap {
            return SkewedRegion::new(&lattice, anchor, max_a + 1, max_b + 1);
        }
    }
    Err(StarError::NotLocal)
}

/// Cancel the boundary support with filled rectangles of stars.
///
/// Scan for the lexicographically first Z, take its partners along the two
/// diagonals through it (these exist inside the region because every
/// diagonal meets the region once and carries even parity), and multiply by
/// the stars filling the spanned rectangle, which toggles exactly the four
/// corners.
fn cancel_quadruples(
    lattice: &TorusLattice,
    region: &SkewedRegion,
    grid: &mut [Vec<bool>],
    stars: &mut StarDecomposition,
) -> Result<(), StarError> {
    let area = region.len_a * region.len_b;
    let bound = 4 * area.max(1);
    for _ in 0..bound {
        let Some((a, b)) = (0..region.len_a)
            .flat_map(|a| (0..region.len_b).map(move |b| (a, b)))
            .find(|&(a, b)| grid[a][b])
        else {
            return Ok(());
        };
        let b2 = (0..region.len_b)
            .find(|&bb| bb != b && grid[a][bb])
            .ok_or(StarError::NotSymmetric)?;
        let a2 = (0..region.len_a)
            .find(|&aa| aa != a && grid[aa][b])
            .ok_or(StarError::NotSymmetric)?;
        let (alo, ahi) = (a.min(a2), a.max(a2));
        let (blo, bhi) = (b.min(b2), b.max(b2));
        for aa in alo..ahi {
            for bb in blo..bhi {
                stars.toggle(plaquette_center(lattice, region, aa, bb));
            }
        }
        grid[alo][blo] = !grid[alo][blo];
        grid[alo][bhi] = !grid[alo][bhi];
        grid[ahi][blo] = !grid[ahi][blo];
        grid[ahi][bhi] = !grid[ahi][bhi];
    }
    Err(StarError::IterationBound(bound))
}

/// Decompose a symmetric, local Z-operator into a product of stars.
///
/// The algorithm follows the constructive proof: relocate the support of
/// each sublattice to the boundary of a fitted skewed square, then cancel
/// diagonal quadruples until nothing remains. The output multiplies back to
/// the input bit-exactly.
pub fn reduce_to_stars(z: &ZSupport) -> Result<StarDecomposition, StarError> {
    if z.is_empty() {
        return Ok(StarDecomposition::empty());
    }
    if !z.is_symmetric() {
        return Err(StarError::NotSymmetric);
    }
    let lattice = *z.lattice();
    let mut total = StarDecomposition::empty();
    for parity in [0u8, 1] {
        let part = z.sublattice_part(parity);
        if part.is_empty() {
            continue;
        }
        let region = fit_region(&part)?;
        let (boundary, stars) = relocate_to_boundary(&part, &region)?;
        total.merge(&stars);

        let mut grid = vec![vec![false; region.len_b()]; region.len_a()];
        for site in boundary.sites() {
            let (a, b) = region
                .locate(&lattice, site)
                .expect("relocated support stays inside the region");
            grid[a][b] = true;
        }
        cancel_quadruples(&lattice, &region, &mut grid, &mut total)?;
    }
    debug_assert!(total.reproduces(z));
    Ok(total)
}

/// Independent GF(2) oracle: express `z` as a sum of star supports, or
/// report that no solution exists.
///
/// The linear system has one column per star centre in linear site order and
/// is solved by reduced row echelon form, so the returned decomposition is
/// canonical.
pub fn gf2_star_solve(z: &ZSupport) -> Option<StarDecomposition> {
    let lattice = *z.lattice();
    let sites = lattice.num_sites();
    let mut a = Gf2Matrix::zeros(sites, sites);
    for center_idx in 0..sites {
        let c = lattice.site_at(center_idx);
        for nb in lattice.neighbors(c) {
            a.set(lattice.index(nb), center_idx, true);
        }
    }
    let rhs = z.to_pauli().zbits().clone();
    let x = gf2::solve(&a, &rhs)?;
    let mut out = StarDecomposition::empty();
    for k in x.ones() {
        out.toggle(lattice.site_at(k));
    }
    Some(out)
}

/// Rank of the star-support map, exposed for rank/kernel diagnostics.
pub fn star_map_rank(lattice: &TorusLattice) -> usize {
    let sites = lattice.num_sites();
    let mut a = Gf2Matrix::zeros(sites, sites);
    for center_idx in 0..sites {
        let c = lattice.site_at(center_idx);
        for nb in lattice.neighbors(c) {
            a.set(lattice.index(nb), center_idx, true);
        }
    }
    gf2::rank(&a)
}
