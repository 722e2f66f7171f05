//! Semigroup analysis (placeholder during bring-up).
pub struct ClassificationReport;
pub struct RegionGrid;
pub struct ReturnRates;
pub struct Verdict;
