//! L-Ehresmann and Wagner connections, torsion-free forms, the `S^V`
//! sprays and conservative vertical fields.

mod conservative;
mod ehresmann;
mod torsion_free;

pub use conservative::{conservative_lift, vertical_lift_test, vincze_defect, vincze_residual};
pub use ehresmann::{
    associated_semispray, berwald, connection_from_semispray, connection_from_semispray_form,
    diagnostics, distance, l_ehresmann_connection, projector_residual, tension, theta_operator,
    wagner_connection, wagner_form, weak_torsion, ConnectionDiagnostics, EhresmannConnection,
    Provenance,
};
pub use torsion_free::{
    dh_omega_residual, flat_semispray, projective_factor, semispray_from_vertical,
    torsion_free_residual, v_from_homogeneous, v_from_torsion_free, ProjectiveFactor,
};
