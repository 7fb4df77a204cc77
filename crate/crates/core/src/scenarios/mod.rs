//! Concrete metrological scenarios.
//!
//! * [`kerr`]: phase `exp(-i theta n)` on a coherent state in truncated Fock space.
//! * [`polarization`]: birefringent phase generated by `S1` on the polarization sphere.
//! * [`modal`]: profile rotation generated by `L_z = 2 J3` on the modal sphere of
//!   order-`N` Hermite-Laguerre-Gaussian beams.
//! * [`lg`]: sampled Laguerre-Gaussian fields for a grid-level rotation check.

pub mod kerr;
pub mod lg;
pub mod modal;
pub mod polarization;
pub mod sphere;

pub use kerr::{coherent_state, kerr_qfi, number_operator, KerrQfi};
pub use lg::{field_rotation_check, lg_field, LgFieldSample};
pub use modal::{hlg_state, modal_ladder, rotation_qfi_map, ModalLadder};
pub use polarization::{birefringence_qfi_map, polarization_state, stokes_operators};
pub use sphere::{sphere_grid, write_map_csv, QfiMapRow, SpherePoint};
