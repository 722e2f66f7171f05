//! Polynomial oracle (placeholder during bring-up).
