pub mod affweyl;
pub mod cosets;
pub mod restricted;
pub mod weyl;

pub use affweyl::AffWeylElt;
pub use cosets::{check_against_brute_force, is_minimal_rep, minimal_coset_reps, reduced_simple_roots};
pub use restricted::{longest_element, Red, RestrictedSystem};
