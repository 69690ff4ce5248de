//! Spacetime events in 1+1 dimensions with c = 1: Lorentz boosts,
//! interval classification, order-reversal thresholds and signal
//! propagation (possibly superluminal).

use crate::error::SimError;
use crate::tolerance::{FRAME_V_MARGIN, TOL_LIGHTLIKE};
use crate::Result;

/// A pointlike event on the (t, x) plane.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeEvent {
    pub id: String,
    pub t: f64,
    pub x: f64,
}

impl SpacetimeEvent {
    pub fn new(id: impl Into<String>, t: f64, x: f64) -> Self {
        Self { id: id.into(), t, x }
    }
}

/// An inertial frame moving at velocity `v` (|v| < 1) relative to the
/// rest frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    v: f64,
}

impl Frame {
    pub fn new(v: f64) -> Result<Self> {
        if !v.is_finite() || v.abs() >= 1.0 - FRAME_V_MARGIN {
            return Err(SimError::InvalidVelocity(v));
        }
        Ok(Self { v })
    }

    pub fn rest() -> Self {
        Self { v: 0.0 }
    }

    pub fn velocity(&self) -> f64 {
        self.v
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.v * self.v).sqrt()
    }
}

/// A classical signal channel of speed `w > 0`; w > 1 is superluminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalChannel {
    w: f64,
}

impl SignalChannel {
    pub fn new(w: f64) -> Result<Self> {
        if !w.is_finite() || w <= 0.0 {
            return Err(SimError::NonPositiveSpeed(w));
        }
        Ok(Self { w })
    }

    pub fn speed(&self) -> f64 {
        self.w
    }
}

/// Classification of the interval between two events by the sign of
/// s² = Δt² − Δx².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

impl std::fmt::Display for IntervalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntervalClass::Timelike => write!(f, "timelike"),
            IntervalClass::Lightlike => write!(f, "lightlike"),
            IntervalClass::Spacelike => write!(f, "spacelike"),
        }
    }
}

/// Standard boost: t' = γ(t − v·x), x' = γ(x − v·t).
pub fn boost(e: &SpacetimeEvent, f: Frame) -> SpacetimeEvent {
    let g = f.gamma();
    SpacetimeEvent {
        id: e.id.clone(),
        t: g * (e.t - f.velocity() * e.x),
        x: g * (e.x - f.velocity() * e.t),
    }
}

/// Invariant interval s² = Δt² − Δx² between two events.
pub fn interval_sq(e1: &SpacetimeEvent, e2: &SpacetimeEvent) -> f64 {
    let dt = e2.t - e1.t;
    let dx = e2.x - e1.x;
    dt * dt - dx * dx
}

pub fn interval_class(e1: &SpacetimeEvent, e2: &SpacetimeEvent) -> IntervalClass {
    let s2 = interval_sq(e1, e2);
    if s2.abs() <= TOL_LIGHTLIKE {
        IntervalClass::Lightlike
    } else if s2 > 0.0 {
        IntervalClass::Timelike
    } else {
        IntervalClass::Spacelike
    }
}

/// For a pair with t(e2) > t(e1) in the rest frame: the signed velocity
/// threshold v* = Δt/Δx beyond which (in the direction of Δx) the boosted
/// order flips, or `None` when the pair is timelike or lightlike so no
/// such frame exists with |v| < 1.
pub fn reversal_frames(e1: &SpacetimeEvent, e2: &SpacetimeEvent) -> Result<Option<f64>> {
    let dt = e2.t - e1.t;
    let dx = e2.x - e1.x;
    if dt == 0.0 && dx == 0.0 {
        return Err(SimError::CoincidentEvents);
    }
    if dt <= 0.0 {
        return Err(SimError::NotFutureOrdered(dt));
    }
    if interval_class(e1, e2) != IntervalClass::Spacelike {
        return Ok(None);
    }
    Ok(Some(dt / dx))
}

/// Whether a boost at `v` puts e2 before e1: t'₂ − t'₁ = γ(Δt − vΔx) < 0.
pub fn reverses_order(e1: &SpacetimeEvent, e2: &SpacetimeEvent, frame: Frame) -> bool {
    let dt = e2.t - e1.t;
    let dx = e2.x - e1.x;
    dt - frame.velocity() * dx < 0.0
}

/// Arrival event of a signal emitted at `e_emit` toward a receiver fixed
/// at `receiver_x`, traveling at the channel speed.
pub fn signal_arrival(
    e_emit: &SpacetimeEvent,
    receiver_x: f64,
    ch: SignalChannel,
) -> SpacetimeEvent {
    SpacetimeEvent {
        id: format!("{}:arrival", e_emit.id),
        t: e_emit.t + (receiver_x - e_emit.x).abs() / ch.speed(),
        x: receiver_x,
    }
}
