//! Catalog categories for unit tests.

use crate::fusion::{parse_category, FusionData};

pub const VEC: &str = include_str!("../../../catalog/vec.cat");
pub const VEC_Z2: &str = include_str!("../../../catalog/vec_z2.cat");
pub const VEC_Z3: &str = include_str!("../../../catalog/vec_z3.cat");
pub const FIB: &str = include_str!("../../../catalog/fib.cat");
pub const FIB_CYCLO: &str = include_str!("../../../catalog/fib_cyclo.cat");
pub const FIB_MTC: &str = include_str!("../../../catalog/fib.mtc");

pub fn cat(text: &str) -> FusionData {
    parse_category(text).expect("catalog category loads")
}

pub fn all() -> Vec<(&'static str, FusionData)> {
    vec![
        ("vec", cat(VEC)),
        ("z2", cat(VEC_Z2)),
        ("z3", cat(VEC_Z3)),
        ("fib", cat(FIB)),
        ("fib_cyclo", cat(FIB_CYCLO)),
    ]
}

pub const S3_TRI: &str = include_str!("../../../catalog/s3.tri");
pub const S2XS1_TRI: &str = include_str!("../../../catalog/s2xs1.tri");
pub const RP3_TRI: &str = include_str!("../../../catalog/rp3.tri");
pub const L31_TRI: &str = include_str!("../../../catalog/l31.tri");
pub const T3_TRI: &str = include_str!("../../../catalog/t3.tri");

/// Catalog manifolds with the invariant factors of H₁ (0 for a free summand).
pub fn manifolds() -> Vec<(&'static str, &'static str, Vec<u64>)> {
    vec![
        ("S3", S3_TRI, vec![]),
        ("S2xS1", S2XS1_TRI, vec![0]),
        ("RP3", RP3_TRI, vec![2]),
        ("L(3,1)", L31_TRI, vec![3]),
        ("T3", T3_TRI, vec![0, 0, 0]),
    ]
}
