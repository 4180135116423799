//! Benchmark-only crate; the measurements live in `benches/`.

use prym_core::{validate_cover, DoubleCoverSpec, FieldDesc, Poly};

/// A fixed g = 2 cover over F_p for benchmarks that want a stable workload.
pub fn sample_cover(p: u64) -> DoubleCoverSpec {
    let field = FieldDesc::prime(p).unwrap();
    let (f1, f2) = match p {
        3 => ("0,1,0,1,1", "1,0,1"),
        _ => ("1,1,0,0,1", "2,0,1"),
    };
    validate_cover(
        Poly::parse(&field, f1).unwrap(),
        Poly::parse(&field, f2).unwrap(),
    )
    .unwrap()
}
