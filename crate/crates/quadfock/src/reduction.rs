//! Reduction to normal form (placeholder during bring-up).
pub struct NormalForm;
pub struct SupersymmetricForm;
