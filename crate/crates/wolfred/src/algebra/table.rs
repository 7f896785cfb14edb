//! Frozen basis multiplication tables for the octonions and split octonions.
//!
//! Basis order is `e0 = 1, e1, ..., e7` with `e_k = (I_k, 0)`, `e4 = (0, 1)`,
//! `e_{k+4} = (0, I_k)` over the quaternions `<1, I1, I2, I3>`. The product of
//! basis elements is `e_i e_j = SIGN[i][j] * e_{IDX[i][j]}`. The index table is
//! the XOR rule shared by every Cayley-Dickson doubling; only the signs
//! distinguish the two algebras. The tables below are frozen fixtures; the test
//! suite re-derives them from the doubling formula `(a,b)(c,d) =
//! (ac -+ conj(d)b, da + b conj(c))`.

use serde::{Deserialize, Serialize};

/// `IDX[i][j]` = basis index of `e_i e_j` (both algebras).
pub const IDX: [[u8; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 4, 7, 6, 1, 0, 3, 2],
    [6, 7, 4, 5, 2, 3, 0, 1],
    [7, 6, 5, 4, 3, 2, 1, 0],
];

/// Signs for the octonions (norm signature (8,0)).
pub const OCT_SIGN: [[i8; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, -1, -1, 1],
    [1, -1, -1, 1, 1, 1, -1, -1],
    [1, 1, -1, -1, 1, -1, 1, -1],
    [1, -1, -1, -1, -1, 1, 1, 1],
    [1, 1, -1, 1, -1, -1, -1, 1],
    [1, 1, 1, -1, -1, 1, -1, -1],
    [1, -1, 1, 1, -1, -1, 1, -1],
];

/// Signs for the split octonions (norm signature (4,4)): the octonion table
/// with the sign flipped on every product of two elements of {e4,...,e7}.
pub const SPLIT_SIGN: [[i8; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, -1, -1, 1],
    [1, -1, -1, 1, 1, 1, -1, -1],
    [1, 1, -1, -1, 1, -1, 1, -1],
    [1, -1, -1, -1, 1, -1, -1, -1],
    [1, 1, -1, 1, 1, 1, 1, -1],
    [1, 1, 1, -1, 1, -1, 1, 1],
    [1, -1, 1, 1, 1, 1, -1, 1],
];

/// One signed basis entry of the serialized table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub sign: i8,
    pub basis: u8,
}

/// JSON schema for a golden multiplication table fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFixture {
    pub algebra: String,
    pub table: Vec<Vec<TableEntry>>,
}

impl TableFixture {
    pub fn build(algebra: crate::algebra::Algebra) -> Self {
        let sign = algebra.sign_table();
        let table = (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| TableEntry {
                        sign: sign[i][j],
                        basis: IDX[i][j],
                    })
                    .collect()
            })
            .collect();
        TableFixture {
            algebra: algebra.fixture_name().to_string(),
            table,
        }
    }
}
