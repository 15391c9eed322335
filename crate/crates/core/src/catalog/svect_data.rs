//! Cocycle and cubic displays for svect^(1)(3;1), transcribed term by term.
//! Each entry is `(image terms, hatted element)`; basis labels are 1-based.

use super::vectorial::Elem::{self, Field, Part};

pub(super) const D3_LITERAL: &[(&[(u32, Elem)], Elem)] = &[
    (&[(2, Field(0, 2, [2, 2, 2]))], Field(1, 2, [2, 1, 0])),
    (&[(1, Field(0, 1, [2, 2, 2]))], Field(1, 2, [2, 0, 1])),
    (&[(2, Field(0, 2, [1, 2, 2])), (2, Field(0, 1, [1, 2, 2]))], Field(0, 2, [2, 0, 0])),
    (&[(1, Field(0, 2, [0, 2, 2]))], Part(2)),
    (&[(1, Field(0, 1, [0, 2, 2]))], Part(1)),
];

pub(super) const D0_LITERAL: &[(&[(u32, Elem)], Elem)] = &[
    (&[(1, Field(0, 1, [1, 2, 2])), (2, Field(0, 2, [1, 2, 2])), (2, Field(1, 2, [1, 2, 2]))], Field(0, 1, [1, 2, 2])),
    (&[(2, Field(0, 2, [2, 1, 2])), (1, Field(0, 1, [2, 1, 2]))], Field(0, 1, [2, 1, 2])),
    (&[(2, Field(0, 2, [2, 2, 2]))], Field(0, 1, [2, 2, 2])),
    (&[(1, Field(1, 2, [0, 2, 2]))], Field(0, 1, [0, 2, 2])),
    (&[(1, Field(0, 2, [1, 1, 2]))], Field(0, 1, [1, 1, 2])),
    (&[(2, Field(1, 2, [2, 1, 2]))], Field(1, 2, [2, 1, 2])),
    (&[(2, Field(0, 2, [2, 1, 1]))], Field(0, 2, [2, 1, 1])),
    (&[(2, Field(1, 2, [2, 1, 1]))], Field(1, 2, [2, 1, 1])),
    (&[(1, Field(0, 1, [2, 1, 1]))], Field(0, 1, [2, 1, 1])),
    (&[(1, Field(0, 2, [2, 0, 2])), (1, Field(1, 2, [2, 0, 2]))], Field(0, 2, [2, 0, 2])),
    (&[(2, Part(0))], Part(0)),
    (&[(2, Part(0))], Part(1)),
    (&[(1, Field(0, 2, [0, 2, 2]))], Field(0, 2, [0, 2, 2])),
    (&[(2, Field(0, 2, [1, 2, 1]))], Field(0, 2, [1, 2, 1])),
    (&[(2, Field(1, 2, [1, 2, 1]))], Field(1, 2, [1, 2, 1])),
    (&[(1, Field(0, 1, [2, 1, 0]))], Field(0, 1, [2, 1, 0])),
    (&[(1, Field(0, 2, [2, 0, 1]))], Field(0, 2, [2, 0, 1])),
    (&[(1, Field(1, 2, [0, 2, 1]))], Field(1, 2, [0, 2, 1])),
    (&[(1, Field(0, 2, [1, 1, 1]))], Field(0, 2, [1, 1, 1])),
    (&[(2, Field(1, 2, [2, 1, 0]))], Field(1, 2, [2, 1, 0])),
    (&[(2, Field(0, 2, [1, 2, 0]))], Field(0, 2, [1, 2, 0])),
    (&[(2, Field(0, 1, [1, 0, 2]))], Field(0, 1, [1, 0, 2])),
    (&[(2, Field(1, 2, [1, 2, 0]))], Field(1, 2, [1, 2, 0])),
    (&[(1, Field(1, 2, [0, 2, 0]))], Field(1, 2, [0, 2, 0])),
    (&[(1, Field(1, 2, [2, 0, 1]))], Field(1, 2, [2, 0, 1])),
    (&[(1, Field(0, 2, [0, 2, 1]))], Field(0, 2, [0, 2, 1])),
    (&[(2, Field(0, 1, [0, 1, 2]))], Field(0, 1, [0, 1, 2])),
    (&[(1, Field(0, 2, [2, 0, 0]))], Field(0, 2, [2, 0, 0])),
    (&[(1, Field(0, 2, [0, 0, 2]))], Field(0, 2, [0, 0, 2])),
    (&[(1, Field(1, 2, [0, 0, 2]))], Field(1, 2, [0, 0, 2])),
];

/// The degree-3 derivation whose polarisation gives the cubic below:
/// `(source, target, coefficient)`.
pub(super) const D3_CORRECTED: &[(usize, usize, u32)] =
    &[(2, 33, 1), (3, 34, 1), (4, 42, 1), (8, 43, 2), (12, 50, 1), (17, 51, 2)];

/// `(coefficient, [i, j, k])` for `λ_i λ_j λ_k`.
pub(super) const CUBIC: &[(u32, [usize; 3])] = &[
    (2, [32, 2, 2]),
    (1, [9, 12, 2]),
    (1, [10, 17, 2]),
    (2, [4, 20, 2]),
    (2, [8, 21, 2]),
    (1, [3, 37, 2]),
    (1, [7, 8, 8]),
    (1, [4, 4, 9]),
    (1, [4, 8, 10]),
    (2, [4, 8, 11]),
    (2, [1, 8, 12]),
    (1, [3, 11, 12]),
    (1, [3, 8, 15]),
    (1, [1, 4, 17]),
    (2, [3, 7, 17]),
    (2, [3, 4, 22]),
    (2, [3, 3, 28]),
];
