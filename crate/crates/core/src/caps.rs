//! Size limits for enumerative constructions that can blow up
//! (homotopy pullbacks, functor groupoids, tuple groupoids).

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCaps {
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// Bound on natural-isomorphism candidates enumerated during
    /// homotopy-cartesian detection.
    pub max_candidates: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps { max_objects: 50_000, max_morphisms: 500_000, max_candidates: 1_000_000 }
    }
}

impl SizeCaps {
    pub fn with_objects(objects: usize) -> Self {
        SizeCaps { max_objects: objects, max_morphisms: objects.saturating_mul(10), ..Default::default() }
    }

    pub fn check_objects(&self, count: usize) -> Result<(), SizeGuard> {
        if count > self.max_objects {
            Err(SizeGuard { what: "objects", count, cap: self.max_objects })
        } else {
            Ok(())
        }
    }

    pub fn check_morphisms(&self, count: usize) -> Result<(), SizeGuard> {
        if count > self.max_morphisms {
            Err(SizeGuard { what: "morphisms", count, cap: self.max_morphisms })
        } else {
            Ok(())
        }
    }

    pub fn check_candidates(&self, count: usize) -> Result<(), SizeGuard> {
        if count > self.max_candidates {
            Err(SizeGuard { what: "candidates", count, cap: self.max_candidates })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("size guard: {count} {what} exceeds cap {cap}")]
pub struct SizeGuard {
    pub what: &'static str,
    pub count: usize,
    pub cap: usize,
}
