//! Real-root isolation for cubics `c3 x^3 + c2 x^2 + c1 x + c0`.
//!
//! The real line is cut at the critical points of the cubic into monotone
//! pieces, each piece is clipped to the Cauchy bound, and every piece whose
//! endpoint values change sign is refined by safeguarded Newton steps. The
//! discriminant gives an independent count of distinct real roots.

/// Relative residual required of a polished root.
pub const ROOT_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    /// `(c3, c2, c1, c0)`.
    pub coefficients: [f64; 4],
}

impl Cubic {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        Self {
            coefficients: [c3, c2, c1, c0],
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [c3, c2, c1, c0] = self.coefficients;
        ((c3 * x + c2) * x + c1) * x + c0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let [c3, c2, c1, _] = self.coefficients;
        (3.0 * c3 * x + 2.0 * c2) * x + c1
    }

    /// Sum of the absolute values of the four terms at `x`; the natural
    /// scale for a relative residual.
    pub fn magnitude(&self, x: f64) -> f64 {
        let [c3, c2, c1, c0] = self.coefficients;
        let ax = x.abs();
        c3.abs() * ax * ax * ax + c2.abs() * ax * ax + c1.abs() * ax + c0.abs()
    }

    pub fn relative_residual(&self, x: f64) -> f64 {
        let m = self.magnitude(x);
        if m == 0.0 {
            0.0
        } else {
            self.eval(x).abs() / m
        }
    }

    /// `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, d] = self.coefficients;
        18.0 * a * b * c * d - 4.0 * b.powi(3) * d + b * b * c * c
            - 4.0 * a * c.powi(3)
            - 27.0 * a * a * d * d
    }

    /// Number of distinct real roots implied by the discriminant, or `None`
    /// when it is too close to zero to decide.
    pub fn discriminant_root_count(&self) -> Option<usize> {
        let [a, b, c, d] = self.coefficients;
        let scale = [
            (18.0 * a * b * c * d).abs(),
            (4.0 * b.powi(3) * d).abs(),
            (b * b * c * c).abs(),
            (4.0 * a * c.powi(3)).abs(),
            (27.0 * a * a * d * d).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        let disc = self.discriminant();
        if disc.abs() <= 1e-10 * scale {
            None
        } else if disc > 0.0 {
            Some(3)
        } else {
            Some(1)
        }
    }

    /// `1 + (|c2| + |c1| + |c0|) / |c3|`; every real root lies inside.
    pub fn cauchy_bound(&self) -> f64 {
        let [c3, c2, c1, c0] = self.coefficients;
        1.0 + (c2.abs() + c1.abs() + c0.abs()) / c3.abs()
    }

    /// All distinct real roots in increasing order. Requires `c3 != 0`.
    pub fn real_roots(&self) -> Vec<f64> {
        let [c3, ..] = self.coefficients;
        assert!(
            c3 != 0.0 && c3.is_finite(),
            "leading coefficient must be nonzero"
        );
        let bound = self.cauchy_bound();
        let mut cuts = vec![-bound];
        cuts.extend(
            self.critical_points()
                .into_iter()
                .filter(|x| x.abs() < bound),
        );
        cuts.push(bound);

        let mut roots: Vec<f64> = Vec::with_capacity(3);
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (f_lo, f_hi) = (self.eval(lo), self.eval(hi));
            if f_lo == 0.0 {
                roots.push(lo);
            } else if f_lo.signum() != f_hi.signum() && f_hi != 0.0 {
                roots.push(self.refine(lo, hi));
            }
        }
        // A critical point that touches zero is a multiple root.
        let last = *cuts.last().unwrap();
        if self.eval(last) == 0.0 {
            roots.push(last);
        }
        for x in self.critical_points() {
            if self.relative_residual(x) <= ROOT_RTOL && !roots.iter().any(|r| close(*r, x)) {
                roots.push(x);
            }
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| close(*a, *b));
        roots
    }

    /// Strictly positive real roots in increasing order.
    pub fn positive_roots(&self) -> Vec<f64> {
        self.real_roots().into_iter().filter(|&x| x > 0.0).collect()
    }

    /// Real zeros of the derivative, increasing.
    pub fn critical_points(&self) -> Vec<f64> {
        let [c3, c2, c1, _] = self.coefficients;
        let (a, b, c) = (3.0 * c3, 2.0 * c2, c1);
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Vec::new();
        }
        if disc == 0.0 {
            return vec![-b / (2.0 * a)];
        }
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let mut xs = if q == 0.0 {
            // b == 0 and c == 0 gives disc == 0; here b == 0 with a c < 0.
            let r = (-c / a).sqrt();
            vec![-r, r]
        } else {
            vec![q / a, c / q]
        };
        xs.sort_by(f64::total_cmp);
        xs
    }

    // Root of a monotone piece with a sign change: Newton steps, falling back
    // to bisection whenever a step leaves the bracket, then a final polish.
    fn refine(&self, lo: f64, hi: f64) -> f64 {
        let (mut lo, mut hi) = (lo, hi);
        let rising = self.eval(hi) > 0.0;
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let fx = self.eval(x);
            if fx == 0.0 {
                return x;
            }
            if (fx > 0.0) == rising {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.derivative(x);
            let mut next = if d != 0.0 { x - fx / d } else { f64::NAN };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE)
                || hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs())
            {
                x = next;
                break;
            }
            x = next;
        }
        self.polish(x)
    }

    fn polish(&self, x: f64) -> f64 {
        let mut best = x;
        let mut best_res = self.relative_residual(x);
        let mut x = x;
        for _ in 0..4 {
            let d = self.derivative(x);
            if d == 0.0 {
                break;
            }
            x -= self.eval(x) / d;
            let res = self.relative_residual(x);
            if res < best_res {
                best = x;
                best_res = res;
            }
        }
        best
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Bisection on a sign change: the oracle for the isolator.
    fn bisect(c: &Cubic, mut lo: f64, mut hi: f64) -> f64 {
        let rising = c.eval(hi) > 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (c.eval(mid) > 0.0) == rising {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn heptagon_cubic() {
        let c = Cubic::new(1.0, 1.0, -2.0, -1.0);
        let roots = c.positive_roots();
        assert_eq!(roots.len(), 1);
        let oracle = bisect(&c, 0.0, c.cauchy_bound());
        assert!((roots[0] - oracle).abs() < 1e-14);
        assert!((roots[0] - 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-14);
        assert!((roots[0] - 1.24698).abs() < 1e-5);
        assert_eq!(c.real_roots().len(), 3);
        assert_eq!(c.discriminant_root_count(), Some(3));
    }

    #[test]
    fn pure_cube() {
        let c = Cubic::new(1.0, 0.0, 0.0, -8.0);
        assert_eq!(c.positive_roots(), vec![2.0]);
        assert_eq!(c.discriminant_root_count(), Some(1));
    }

    #[test]
    fn three_positive_roots() {
        let c = Cubic::new(1.0, -6.0, 11.0, -6.0);
        let roots = c.positive_roots();
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - e).abs() < 1e-12, "{r}");
            assert!(c.relative_residual(*r) < ROOT_RTOL);
        }
    }

    #[test]
    fn double_root() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let c = Cubic::new(1.0, 0.0, -3.0, 2.0);
        let roots = c.real_roots();
        assert_eq!(roots.len(), 2, "{roots:?}");
        assert!((roots[0] + 2.0).abs() < 1e-12);
        assert!((roots[1] - 1.0).abs() < 1e-8);
        assert_eq!(c.discriminant_root_count(), None);
    }

    #[test]
    fn triple_root_at_zero() {
        let c = Cubic::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(c.real_roots(), vec![0.0]);
        assert!(c.positive_roots().is_empty());
    }

    #[test]
    fn negative_leading_coefficient() {
        let c = Cubic::new(-1.0, 6.0, -11.0, 6.0);
        assert_eq!(c.positive_roots().len(), 3);
    }

    #[test]
    fn wide_dynamic_range() {
        // roots 1e-6, 1, 1e6
        let (a, b, d) = (1e-6, 1.0, 1e6);
        let c = Cubic::new(1.0, -(a + b + d), a * b + a * d + b * d, -a * b * d);
        let roots = c.positive_roots();
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([a, b, d]) {
            assert!((r - e).abs() < 1e-9 * e, "{r} vs {e}");
        }
    }
}
