//! Surfaces of finite type and graded indices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A surface of finite type, classified by orientability and compactness.
///
/// * `g` — genus of an orientable surface (`g >= 0`);
/// * `h` — crosscap number of a nonorientable surface (`h >= 1`);
/// * `n` — number of punctures (`n >= 1` for the open kinds, 0 for closed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Surface {
    ClosedOrientable { g: usize },
    OpenOrientable { g: usize, n: usize },
    ClosedNonorientable { h: usize },
    OpenNonorientable { h: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("open surfaces need at least one puncture")]
    MissingPuncture,
    #[error("nonorientable surfaces need at least one crosscap")]
    MissingCrosscap,
}

impl Surface {
    pub fn closed_orientable(g: usize) -> Surface {
        Surface::ClosedOrientable { g }
    }

    pub fn open_orientable(g: usize, n: usize) -> Result<Surface, SurfaceError> {
        if n == 0 {
            return Err(SurfaceError::MissingPuncture);
        }
        Ok(Surface::OpenOrientable { g, n })
    }

    pub fn closed_nonorientable(h: usize) -> Result<Surface, SurfaceError> {
        if h == 0 {
            return Err(SurfaceError::MissingCrosscap);
        }
        Ok(Surface::ClosedNonorientable { h })
    }

    pub fn open_nonorientable(h: usize, n: usize) -> Result<Surface, SurfaceError> {
        if h == 0 {
            return Err(SurfaceError::MissingCrosscap);
        }
        if n == 0 {
            return Err(SurfaceError::MissingPuncture);
        }
        Ok(Surface::OpenNonorientable { h, n })
    }

    /// Check the kind-specific parameter constraints.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        match *self {
            Surface::ClosedOrientable { .. } => Ok(()),
            Surface::OpenOrientable { n, .. } => {
                if n == 0 {
                    Err(SurfaceError::MissingPuncture)
                } else {
                    Ok(())
                }
            }
            Surface::ClosedNonorientable { h } => {
                if h == 0 {
                    Err(SurfaceError::MissingCrosscap)
                } else {
                    Ok(())
                }
            }
            Surface::OpenNonorientable { h, n } => {
                if h == 0 {
                    Err(SurfaceError::MissingCrosscap)
                } else if n == 0 {
                    Err(SurfaceError::MissingPuncture)
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(
            self,
            Surface::ClosedOrientable { .. } | Surface::ClosedNonorientable { .. }
        )
    }

    pub fn is_orientable(&self) -> bool {
        matches!(
            self,
            Surface::ClosedOrientable { .. } | Surface::OpenOrientable { .. }
        )
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Surface::ClosedOrientable { g } => write!(f, "Sigma_{g}"),
            Surface::OpenOrientable { g, n } => write!(f, "Sigma_{{{g},{n}}}"),
            Surface::ClosedNonorientable { h } => write!(f, "N_{h}"),
            Surface::OpenNonorientable { h, n } => write!(f, "N_{{{h},{n}}}"),
        }
    }
}

/// Homological degree `i` paired with weight `k` (the number of points).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedIndex {
    pub i: usize,
    pub k: usize,
}

impl GradedIndex {
    pub fn new(i: usize, k: usize) -> GradedIndex {
        GradedIndex { i, k }
    }
}

impl std::fmt::Display for GradedIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(i={}, k={})", self.i, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_enforce_invariants() {
        assert!(Surface::open_orientable(2, 0).is_err());
        assert!(Surface::open_orientable(0, 1).is_ok());
        assert!(Surface::closed_nonorientable(0).is_err());
        assert!(Surface::open_nonorientable(1, 0).is_err());
        assert!(Surface::open_nonorientable(0, 2).is_err());
        assert!(Surface::closed_orientable(0).validate().is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let s = Surface::ClosedOrientable { g: 6 };
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"kind":"closed-orientable","g":6}"#);
        assert_eq!(serde_json::from_str::<Surface>(&json).unwrap(), s);
    }
}
