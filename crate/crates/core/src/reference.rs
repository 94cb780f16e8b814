//! Published transpilation costs on the three IBM devices, used as
//! comparison columns by the table reports.
//!
//! The conventional figures came out of IBM's stochastic transpiler and the
//! layout-aware figures for `n >= 5` depend on its random mapping, so only
//! star-placement rows are expected to match this crate exactly.

use crate::cost::TqcReport;
use crate::topology::Preset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub preset: Preset,
    pub n: usize,
    pub conventional: TqcReport,
    pub layout_aware: TqcReport,
}

const fn r(n1: usize, n2: usize, xc: usize, depth: usize, tqc: usize) -> TqcReport {
    TqcReport {
        n1,
        n2,
        xc,
        depth,
        tqc,
    }
}

pub const TQC_ROWS: [ReferenceRow; 11] = [
    ReferenceRow { preset: Preset::Linear5, n: 3, conventional: r(12, 9, 1, 19, 41), layout_aware: r(8, 3, 0, 11, 22) },
    ReferenceRow { preset: Preset::TLike5, n: 3, conventional: r(12, 9, 1, 19, 41), layout_aware: r(8, 3, 0, 11, 22) },
    ReferenceRow { preset: Preset::ILike7, n: 3, conventional: r(12, 9, 1, 19, 41), layout_aware: r(8, 3, 0, 11, 22) },
    ReferenceRow { preset: Preset::Linear5, n: 4, conventional: r(20, 29, 5, 30, 84), layout_aware: r(12, 13, 2, 19, 46) },
    ReferenceRow { preset: Preset::TLike5, n: 4, conventional: r(20, 20, 2, 33, 75), layout_aware: r(12, 7, 0, 19, 38) },
    ReferenceRow { preset: Preset::ILike7, n: 4, conventional: r(20, 29, 5, 30, 84), layout_aware: r(12, 7, 0, 19, 38) },
    ReferenceRow { preset: Preset::Linear5, n: 5, conventional: r(61, 87, 17, 77, 242), layout_aware: r(20, 33, 6, 41, 100) },
    ReferenceRow { preset: Preset::TLike5, n: 5, conventional: r(61, 69, 11, 51, 192), layout_aware: r(20, 21, 2, 35, 78) },
    ReferenceRow { preset: Preset::ILike7, n: 5, conventional: r(61, 69, 11, 51, 192), layout_aware: r(20, 21, 2, 35, 78) },
    ReferenceRow { preset: Preset::ILike7, n: 6, conventional: r(98, 173, 26, 159, 456), layout_aware: r(36, 55, 8, 76, 175) },
    ReferenceRow { preset: Preset::ILike7, n: 7, conventional: r(194, 335, 49, 284, 862), layout_aware: r(68, 123, 20, 152, 363) },
];

/// Maximum star configurations per `(preset, n)`; `None` where no qubit has
/// enough neighbours.
pub const CONFIGURATION_COUNTS: [(Preset, usize, Option<usize>); 6] = [
    (Preset::Linear5, 3, Some(6)),
    (Preset::Linear5, 4, None),
    (Preset::TLike5, 3, Some(8)),
    (Preset::TLike5, 4, Some(6)),
    (Preset::ILike7, 3, Some(14)),
    (Preset::ILike7, 4, Some(12)),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_internally_consistent() {
        for row in TQC_ROWS {
            for rep in [row.conventional, row.layout_aware] {
                assert_eq!(rep.n1 + rep.n2 + rep.xc + rep.depth, rep.tqc, "{row:?}");
            }
        }
    }
}
