use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// Specular wall: particles fold back with `v_x -> -v_x`; the fluid ghost
    /// mirrors the state with negated normal momentum.
    Reflecting,
    /// Free outflow: particles leaving are removed; zero-gradient fluid ghosts.
    Open,
    /// Wrap-around, used by conservation tests.
    Periodic,
}

/// A domain end: its position and kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallBoundary {
    pub position: f64,
    pub kind: BoundaryKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundaries {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

impl Boundaries {
    pub fn new(left: BoundaryKind, right: BoundaryKind) -> Self {
        Self { left, right }
    }

    pub fn open() -> Self {
        Self::new(BoundaryKind::Open, BoundaryKind::Open)
    }

    pub fn periodic() -> Self {
        Self::new(BoundaryKind::Periodic, BoundaryKind::Periodic)
    }

    pub fn reflecting() -> Self {
        Self::new(BoundaryKind::Reflecting, BoundaryKind::Reflecting)
    }

    pub fn walls(&self, x_min: f64, x_max: f64) -> (WallBoundary, WallBoundary) {
        (
            WallBoundary {
                position: x_min,
                kind: self.left,
            },
            WallBoundary {
                position: x_max,
                kind: self.right,
            },
        )
    }
}
