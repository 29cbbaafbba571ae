use crate::verify::check_decomposition;
use crate::{Decomposition, DivisionRing, HermitianForm, Matrix, PrimeField, Sign};

pub fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn form<R: DivisionRing>(ring: R, rows: &[&[i64]], sign: Sign) -> HermitianForm<R> {
    HermitianForm::new(Matrix::from_i64_rows(ring, rows).unwrap(), sign).unwrap()
}

/// Panics with the report unless every clause passes.
pub fn assert_verified<R: DivisionRing>(form: &HermitianForm<R>, decomp: &Decomposition<R>) {
    let report = check_decomposition(form.matrix(), form.sign(), decomp);
    assert!(report.passed(), "{report:?} for {:?}", form.matrix());
}
