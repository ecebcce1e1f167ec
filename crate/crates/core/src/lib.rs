//! Exact arithmetic for p-group covers of curves presented by unipotent
//! matrices over finite fields, Laurent series fields, and the function
//! rings of a projective line or an elliptic curve with a marked point.

pub mod curves;
pub mod error;
pub mod field;
pub mod json;
pub mod ring;
pub mod sampling;
pub mod series;
pub mod unipotent;

pub use curves::{
    elliptic_verdict, frobenius_on_h1, hasse_deuring, injectivity_counterexample,
    injectivity_probe_elliptic, injectivity_probe_p1, is_anomalous, point_count,
    reduce_matrix_global_elliptic, reduce_matrix_global_p1, reduce_principal_part, rr_basis,
    split_elliptic, wp_star_on_h1, EllipticFunction, EllipticMarkedCurve, EllipticSplit,
    GlobalReduction, H1Class, ProbeVerdict, RrFunction, VerdictReport,
};
pub use error::{Error, Result};
pub use json::DecodedMatrix;
pub use field::{FieldDescriptor, FieldElement, FieldEmbedding, FiniteField};
pub use ring::{ArtinSchreierRing, Ring};
pub use series::{
    artin_schreier_solve, artin_schreier_solve_tail, split_p1, GlobalP1Element, LaurentSeries,
};
pub use unipotent::{
    entry_correction_check, lang_map, lang_section, orbit_classes, p_conjugate, p_equiv_decide,
    LangSection, OrbitReport, UnipotentMatrix,
};
