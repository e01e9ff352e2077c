//! Fixtures shared by the benchmarks.

use qswd_core::arith::QMono;
use qswd_core::quiver::SpectralIndex;

/// Fundamentals `V(w_1)` anchored at `(-q)^m` for each `m`.
pub fn fundamentals(ms: &[i64]) -> Vec<SpectralIndex> {
    ms.iter().map(|&m| SpectralIndex::new(1, QMono::neg_q(m))).collect()
}
