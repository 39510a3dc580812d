/// Symmetric in-plane stress (or strain) tensor.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Stress2 {
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
}

impl Stress2 {
    pub const ZERO: Stress2 = Stress2 {
        xx: 0.0,
        yy: 0.0,
        xy: 0.0,
    };

    pub fn new(xx: f64, yy: f64, xy: f64) -> Self {
        Stress2 { xx, yy, xy }
    }

    /// Frobenius norm of the 2x2 tensor.
    pub fn norm(&self) -> f64 {
        (self.xx * self.xx + self.yy * self.yy + 2.0 * self.xy * self.xy).sqrt()
    }

    /// Traction vector on a plane with unit normal `n`.
    pub fn traction(&self, n: [f64; 2]) -> [f64; 2] {
        [
            self.xx * n[0] + self.xy * n[1],
            self.xy * n[0] + self.yy * n[1],
        ]
    }

    pub fn scale(&self, c: f64) -> Self {
        Stress2::new(c * self.xx, c * self.yy, c * self.xy)
    }

    pub fn add(&self, o: &Stress2) -> Self {
        Stress2::new(self.xx + o.xx, self.yy + o.yy, self.xy + o.xy)
    }

    /// Rotate components into a frame turned by `angle` (counterclockwise).
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let xx = c * c * self.xx + s * s * self.yy + 2.0 * s * c * self.xy;
        let yy = s * s * self.xx + c * c * self.yy - 2.0 * s * c * self.xy;
        let xy = (self.yy - self.xx) * s * c + self.xy * (c * c - s * s);
        Stress2::new(xx, yy, xy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_preserves_norm_and_trace() {
        let s = Stress2::new(1.3, -0.4, 0.7);
        for k in 0..12 {
            let r = s.rotated(0.37 * k as f64);
            assert!((r.norm() - s.norm()).abs() < 1e-14);
            assert!((r.xx + r.yy - s.xx - s.yy).abs() < 1e-14);
        }
        let q = s.rotated(std::f64::consts::FRAC_PI_2);
        assert!((q.xx - s.yy).abs() < 1e-14 && (q.xy + s.xy).abs() < 1e-14);
    }
}
