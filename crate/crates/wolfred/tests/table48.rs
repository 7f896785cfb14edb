//! Completeness over the type table: every combination of indecomposable
//! rows with total dimension 7 and signature (3,4) — there are exactly 48 —
//! is realized by a canonical representative, classifies back to itself,
//! and lands in exactly one of the 24 named families.

use wolfred::orbit::types::{IndecomposableType, SignTag, TypeSum};
use wolfred::orbit::{
    canonical_representative, classify, family_label, ParamVal, DEFAULT_TOL,
};

/// The first-table rows that can appear in a (3,4) sum, as constructors
/// taking the next fresh parameter value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Row {
    D6p,
    D2Real,  // D2(z,-z), z real
    D2pImag, // D2+(z,-z), z imaginary
    D4p,
    D4m,
    Quad,
    D1mImag,
    D1Real, // parameter may be zero; kept positive here to stay generic
    D1pImag,
    D2p,
    D2m,
    D0pImag,
    D0Real,
    D0mImag,
    D0p,
    D0m,
}

impl Row {
    const ALL: [Row; 16] = [
        Row::D6p,
        Row::D2Real,
        Row::D2pImag,
        Row::D4p,
        Row::D4m,
        Row::Quad,
        Row::D1mImag,
        Row::D1Real,
        Row::D1pImag,
        Row::D2p,
        Row::D2m,
        Row::D0pImag,
        Row::D0Real,
        Row::D0mImag,
        Row::D0p,
        Row::D0m,
    ];

    fn dim(self) -> usize {
        match self {
            Row::D6p => 7,
            Row::D2Real | Row::D2pImag => 6,
            Row::D4p | Row::D4m => 5,
            Row::Quad | Row::D1mImag | Row::D1Real | Row::D1pImag => 4,
            Row::D2p | Row::D2m => 3,
            Row::D0pImag | Row::D0Real | Row::D0mImag => 2,
            Row::D0p | Row::D0m => 1,
        }
    }

    fn sig(self) -> (usize, usize) {
        match self {
            Row::D6p => (3, 4),
            Row::D2Real => (3, 3),
            Row::D2pImag => (2, 4),
            Row::D4p => (3, 2),
            Row::D4m => (2, 3),
            Row::Quad => (2, 2),
            Row::D1mImag | Row::D1Real | Row::D1pImag => (2, 2),
            Row::D2p => (1, 2),
            Row::D2m => (2, 1),
            Row::D0pImag => (2, 0),
            Row::D0Real => (1, 1),
            Row::D0mImag => (0, 2),
            Row::D0p => (1, 0),
            Row::D0m => (0, 1),
        }
    }

    fn instantiate(self, fresh: &mut impl FnMut() -> ParamVal) -> IndecomposableType {
        use SignTag::{Minus as M, Plus as P};
        match self {
            Row::D6p => IndecomposableType::zero(6, P),
            Row::D2Real => IndecomposableType::real_pair(2, fresh()),
            Row::D2pImag => IndecomposableType::imag_pair(2, P, fresh()),
            Row::D4p => IndecomposableType::zero(4, P),
            Row::D4m => IndecomposableType::zero(4, M),
            Row::Quad => IndecomposableType::quad(fresh(), fresh()),
            Row::D1mImag => IndecomposableType::imag_pair(1, M, fresh()),
            Row::D1Real => IndecomposableType::real_pair(1, fresh()),
            Row::D1pImag => IndecomposableType::imag_pair(1, P, fresh()),
            Row::D2p => IndecomposableType::zero(2, P),
            Row::D2m => IndecomposableType::zero(2, M),
            Row::D0pImag => IndecomposableType::imag_pair(0, P, fresh()),
            Row::D0Real => IndecomposableType::real_pair(0, fresh()),
            Row::D0mImag => IndecomposableType::imag_pair(0, M, fresh()),
            Row::D0p => IndecomposableType::zero(0, P),
            Row::D0m => IndecomposableType::zero(0, M),
        }
    }
}

/// Multisets of rows with total dimension 7, signature (3,4), nondecreasing
/// row index to avoid duplicates.
fn enumerate(
    start: usize,
    dim: usize,
    p: usize,
    q: usize,
    stack: &mut Vec<Row>,
    out: &mut Vec<Vec<Row>>,
) {
    if dim == 7 {
        if (p, q) == (3, 4) {
            out.push(stack.clone());
        }
        return;
    }
    for (i, row) in Row::ALL.iter().enumerate().skip(start) {
        let (rp, rq) = row.sig();
        if dim + row.dim() > 7 || p + rp > 3 || q + rq > 4 {
            continue;
        }
        stack.push(*row);
        enumerate(i, dim + row.dim(), p + rp, q + rq, stack, out);
        stack.pop();
    }
}

#[test]
fn all_48_combinations_round_trip_into_exactly_one_family() {
    let mut combos = Vec::new();
    enumerate(0, 0, 0, 0, &mut Vec::new(), &mut combos);
    assert_eq!(combos.len(), 48, "the table yields exactly 48 combinations");
    let mut family_counts: std::collections::HashMap<&'static str, usize> =
        std::collections::HashMap::new();
    for combo in &combos {
        // generic distinct parameters
        let mut next = 0.45f64;
        let mut fresh = || {
            next += 0.35;
            ParamVal::from_f64(next)
        };
        let summands: Vec<IndecomposableType> =
            combo.iter().map(|r| r.instantiate(&mut fresh)).collect();
        let ts = TypeSum::new(summands);
        assert_eq!(ts.dimension(), 7);
        assert_eq!(ts.signature(), (3, 4));
        let a = canonical_representative(&ts)
            .unwrap_or_else(|e| panic!("{combo:?}: representative: {e}"));
        let back = classify(&a, DEFAULT_TOL).unwrap_or_else(|e| panic!("{combo:?}: classify: {e}"));
        assert!(back.approx_eq(&ts, 1e-7), "{combo:?}: {back} vs {ts}");
        let fl = family_label(&ts).unwrap_or_else(|e| panic!("{combo:?}: label: {e}"));
        *family_counts.entry(fl.name.label()).or_insert(0) += 1;
    }
    // every one of the 24 families is reached
    assert_eq!(family_counts.len(), 24, "{family_counts:?}");
    assert_eq!(family_counts.values().sum::<usize>(), 48);
}
