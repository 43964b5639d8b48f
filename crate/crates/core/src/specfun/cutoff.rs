use serde::{Deserialize, Serialize};

/// Cut-off function shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cutoff {
    /// Equal to 1 on [0, 1], supported on [0, 2].
    TypeA,
    /// Supported on [1/2, 2] with the dyadic square partition of unity.
    TypeBFrame,
    /// Indicator of [0, 1]: not admissible, used as a negative control.
    Indicator,
}

impl Cutoff {
    /// Number of guaranteed continuous derivatives; `None` means infinitely smooth.
    pub fn smooth_order(&self) -> Option<u32> {
        match self {
            Cutoff::TypeA | Cutoff::TypeBFrame => None,
            Cutoff::Indicator => Some(0),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        cutoff_eval(*self, t)
    }
}

/// exp(-1/x) smoothstep: 0 for x <= 0, 1 for x >= 1.
pub fn smoothstep(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let e = 1.0 / x - 1.0 / (1.0 - x);
        if e > 700.0 {
            0.0
        } else if e < -700.0 {
            1.0
        } else {
            1.0 / (1.0 + e.exp())
        }
    }
}

pub fn cutoff_eval(kind: Cutoff, t: f64) -> f64 {
    match kind {
        Cutoff::TypeA => {
            if t <= 1.0 {
                1.0
            } else if t < 2.0 {
                smoothstep(2.0 - t)
            } else {
                0.0
            }
        }
        Cutoff::TypeBFrame => {
            if !(0.5..2.0).contains(&t) {
                0.0
            } else if t <= 1.0 {
                (std::f64::consts::FRAC_PI_2 * smoothstep(t.log2() + 1.0)).sin()
            } else {
                (std::f64::consts::FRAC_PI_2 * smoothstep(t.log2())).cos()
            }
        }
        Cutoff::Indicator => {
            if t <= 1.0 {
                1.0
            } else {
                0.0
            }
        }
    }
}
