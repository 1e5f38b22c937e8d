//! Exact computations with finite groups given by Cayley tables: gamma
//! functions and the skew braces they induce, Rota–Baxter operators, and
//! second cohomology with trivial coefficients.
//!
//! The motivating question: given a gamma function `γ` on `G` whose values
//! are inner automorphisms, is there a Rota–Baxter operator `B` with
//! `γ(g) = ι(B(g))`? Pick any lift `C` with
//! `ι(C(g)) = γ(g)`; the defect `κ(g,h) = C(g)·C(h)·C(g∘h)⁻¹` is a
//! 2-cocycle of `(G,∘)` with values in `Z(G)`, and `B` exists exactly when
//! `κ` is a coboundary. [`cohomology::solve_coboundary`] decides this over
//! `F_p`, and [`cohomology::reconstruct_rb`] turns a solution into `B`.
//!
//! Conventions used throughout:
//!
//! * element 0 is always the identity;
//! * commutators are `[g,h] = g·h·g⁻¹·h⁻¹`;
//! * `ι(x)` is conjugation `y ↦ x·y·x⁻¹`;
//! * the action of an automorphism `γ(g)` on `h` (written `h^γ(g)` in the
//!   literature, and called `λ_g` in much of the skew brace literature) is
//!   [`gamma::GammaFunction::apply`].

pub mod cohomology;
pub mod gallery;
pub mod gamma;
pub mod group;
pub mod linalg;
pub mod rota_baxter;
mod verdict;

pub use cohomology::{
    CentralExtension, Coboundary, CoboundarySolution, CoefficientGroup, CohomologyError,
    Obstruction, TwoCocycle,
};
pub use gamma::{GammaError, GammaFunction, InnerImage, SkewBrace};
pub use gallery::GalleryError;
pub use group::{FiniteGroup, GroupError, GroupMap, Subgroup};
pub use linalg::LinearError;
pub use rota_baxter::{RotaBaxterError, RotaBaxterOperator, SameGamma};
pub use verdict::Verdict;
