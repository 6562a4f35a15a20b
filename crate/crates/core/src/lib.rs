//! Exact, desk-scale machinery for clique and coloring questions on Cayley
//! graphs of `Z_p^n` and of powers of small finite groups.
//!
//! The pieces fit together as a pipeline:
//!
//! * [`graph`] and [`solve`] give plain graphs plus exact branch-and-bound
//!   solvers for clique number, independence number, and chromatic number.
//! * [`gf`] and [`fplinalg`] provide `GF(p^m)` arithmetic and linear algebra
//!   over `Z_p`.
//! * [`codes`] builds linear codes (Goppa and BCH constructions) with
//!   brute-force distance certificates.
//! * [`cayley`] turns a graph into its free connection set over `Z_p^v`,
//!   quotients connection sets by a code, transfers cliques up and down,
//!   checks the cover structure of identity neighbourhoods, and lifts
//!   connection sets into powers of an arbitrary group table.
//! * [`reduce`] wires those into whole-graph reductions: clique-preserving
//!   quotients, clique-number recovery, chromatic gadgets, an approximation
//!   driver, and a quadratic-size cubelike embedding.
//!
//! Everything is exact: solvers take an explicit search budget and report
//! an error when it runs out rather than returning an approximation.

pub mod cayley;
pub mod codes;
pub mod dimacs;
pub mod ensemble;
pub mod fplinalg;
pub mod gf;
pub mod graph;
pub mod group;
pub mod reduce;
pub mod solve;
