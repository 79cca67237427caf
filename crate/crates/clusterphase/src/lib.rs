//! Simulation and verification toolkit for measurement-based quantum
//! computation (MBQC) in the two-dimensional cluster phase.
//!
//! The crate models a spin-1/2 square lattice on a torus with a short
//! circumference `n` (even) and a long circumference `n*N`. Ground states of
//! symmetric Hamiltonians in the cluster phase support universal MBQC on
//! `n/2` logical qubits; this crate implements the algebraic machinery behind
//! that statement at desk scale and cross-checks each piece against
//! independent brute-force oracles.
//!
//! Module map:
//!
//! - [`pauli`]: torus geometry, bit-packed Pauli operators, the diagonal
//!   stripe symmetries and star operators.
//! - [`stars`]: relocation of symmetric Z-operators to region boundaries and
//!   their decomposition into star products, with a GF(2) solver oracle.
//! - [`qca`]: the symmetry-protected quantum cellular automaton acting on
//!   virtual ring Paulis; periodicity and block byproducts.
//! - [`tensors`]: cluster PEPS tensors, perturbed ring tensors in factored
//!   (logical x junk) form, and the Choi-Jamiolkowski derivation of the ring
//!   transition function from symmetry constraints.
//! - [`channel`]: junk-space transfer channels, fixed points and spectral
//!   data.
//! - [`engine`]: the virtual-space computational protocol: oblivious wire,
//!   tilted-basis measurements, nu calibration, trajectory and averaged
//!   channel backends.
//! - [`compiler`]: compilation of logical circuits into measurement-pattern
//!   programs and end-to-end execution against a dense oracle.
//! - [`verify`]: invariant suites shared by the CLI and the test harness.

pub mod bits;
pub mod channel;
pub mod compiler;
pub mod engine;
pub mod gf2;
pub mod linalg;
pub mod pauli;
pub mod qca;
pub mod stars;
pub mod tensors;
pub mod verify;



