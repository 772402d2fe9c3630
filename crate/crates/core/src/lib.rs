//! Hamiltonian quasigeodesics on convex polyhedra, and the nets they induce.
//!
//! A Hamiltonian quasigeodesic here is a closed edge path through every vertex
//! with at most π of face angle on each side at every vertex. [`unfold::unfold`]
//! cuts every cycle edge except a chosen join edge, lays out the faces left and
//! right of the cycle, and glues the two layouts along the join edge.
//! [`verify`] checks the result.
//!
//! ```
//! use hamnet::{fixtures, search, unfold, verify};
//!
//! let cube = fixtures::cube();
//! let q = search::HamCycle::parse(&cube, "15623784").unwrap();
//! assert!(search::is_quasigeodesic(&cube, &q).unwrap().0);
//! let net = unfold::unfold(&cube, &q, (0, 4)).unwrap();
//! assert!(verify::verify_net(Some(&cube), &net).passed());
//! ```

pub mod corpus;
pub mod fixtures;
pub mod geom;
pub mod hull;
pub mod mesh;
pub mod netio;
pub mod report;
pub mod search;
pub mod svg;
pub mod unfold;
pub mod verify;

pub use mesh::{load_off, validate, Polyhedron};
pub use search::{find_ham_cycles, find_ham_quasigeodesics, HamCycle};
pub use unfold::{enumerate_nets, Net};
