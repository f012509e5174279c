use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalized bounding box in `(cx, cy, w, h)` form.
///
/// All four components live in `[0, 1]`; width and height are strictly
/// positive. Centers near the frame edge may produce corners outside the
/// frame, which [`Bbox::to_xyxy`] clamps back into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bbox {
    pub cx: f64,
    pub cy: f64,
    pub w: f64,
    pub h: f64,
}

impl Bbox {
    pub fn new(cx: f64, cy: f64, w: f64, h: f64) -> Result<Self> {
        let b = Self { cx, cy, w, h };
        b.validate()?;
        Ok(b)
    }

    /// Like [`Bbox::new`] but panics on invalid components. Test/helper use.
    pub fn of(cx: f64, cy: f64, w: f64, h: f64) -> Self {
        Self::new(cx, cy, w, h).expect("valid box components")
    }

    pub fn validate(&self) -> Result<()> {
        let ok_range = |v: f64| (0.0..=1.0).contains(&v) && v.is_finite();
        if !(ok_range(self.cx) && ok_range(self.cy) && ok_range(self.w) && ok_range(self.h)) {
            return Err(Error::InvalidInput(format!(
                "box components must lie in [0,1], got ({}, {}, {}, {})",
                self.cx, self.cy, self.w, self.h
            )));
        }
        if self.w <= 0.0 || self.h <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "box width/height must be positive, got w={} h={}",
                self.w, self.h
            )));
        }
        Ok(())
    }

    /// Corner form `(x0, y0, x1, y1)`, clamped to the unit square.
    pub fn to_xyxy(&self) -> XyxyBox {
        let clamp = |v: f64| v.clamp(0.0, 1.0);
        XyxyBox {
            x0: clamp(self.cx - self.w / 2.0),
            y0: clamp(self.cy - self.h / 2.0),
            x1: clamp(self.cx + self.w / 2.0),
            y1: clamp(self.cy + self.h / 2.0),
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.cx, self.cy, self.w, self.h]
    }
}

/// Corner-form box `(x0, y0, x1, y1)` with `x0 <= x1`, `y0 <= y1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyxyBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl XyxyBox {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        if !(x0 <= x1 && y0 <= y1) {
            return Err(Error::InvalidInput(format!(
                "corner box must satisfy x0<=x1, y0<=y1, got ({x0}, {y0}, {x1}, {y1})"
            )));
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }
}

/// Spec'd conversion operation; `Bbox::to_xyxy` as a free function.
pub fn box_cxcywh_to_xyxy(b: &Bbox) -> XyxyBox {
    b.to_xyxy()
}
