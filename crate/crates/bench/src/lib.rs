//! Inputs shared by the benchmarks.

use sextics::{bundled_corpus, CurveRecord, FieldElement, NumberField, Rational};

pub fn record(id: u32) -> CurveRecord {
    bundled_corpus().expect("bundled corpus parses").swap_remove(id as usize - 1)
}

/// A dense element of `field` with small coordinates.
pub fn sample(field: &NumberField, seed: i64) -> FieldElement {
    let coords = (0..field.degree() as i64).map(|i| Rational::new((seed * 7 + i * 3 - 5).into(), (i + 2).into())).collect();
    FieldElement::from_coords(field, coords).expect("degree many coordinates")
}
