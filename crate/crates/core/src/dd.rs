//! Double-double (~106-bit) real and complex arithmetic.
//!
//! Root extraction from L-polynomials can meet clustered roots, where plain
//! f64 iteration only recovers half the working digits — not enough against
//! a 1e-8 root-modulus tolerance. The error-free transformations here give
//! the iteration a ~1e-32 floor, so even a true double root comes out with
//! ~1e-16 accuracy.

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul(Dd::from_f64(q2)));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // one Newton step on a f64 seed doubles the precision
        let y = Dd::from_f64(self.hi.sqrt());
        let half = Dd::from_f64(0.5);
        y.add(self.div(y)).mul(half)
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn add(self, other: CDd) -> CDd {
        CDd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    pub fn sub(self, other: CDd) -> CDd {
        CDd {
            re: self.re.sub(other.re),
            im: self.im.sub(other.im),
        }
    }

    pub fn mul(self, other: CDd) -> CDd {
        CDd {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    pub fn div(self, other: CDd) -> CDd {
        let denom = other.norm_sqr();
        let conj = CDd {
            re: other.re,
            im: other.im.neg(),
        };
        let num = self.mul(conj);
        CDd {
            re: num.re.div(denom),
            im: num.im.div(denom),
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    pub fn norm(self) -> Dd {
        self.norm_sqr().sqrt()
    }
}

/// pi in double-double precision.
pub const PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};

/// (cos x, sin x) by Taylor series; |x| must be small (below ~0.1).
fn sin_cos_small(x: Dd) -> (Dd, Dd) {
    let x2 = x.mul(x);
    let mut sin = x;
    let mut term = x;
    // sin: t_{j+1} = -t_j x^2 / ((2j+2)(2j+3))
    for j in 0..16u32 {
        let denom = Dd::from_f64(((2 * j + 2) * (2 * j + 3)) as f64);
        term = term.mul(x2).div(denom).neg();
        sin = sin.add(term);
    }
    let mut cos = Dd::ONE;
    let mut cterm = Dd::ONE;
    for j in 0..16u32 {
        let denom = Dd::from_f64(((2 * j + 1) * (2 * j + 2)) as f64);
        cterm = cterm.mul(x2).div(denom).neg();
        cos = cos.add(cterm);
    }
    (cos, sin)
}

/// e^{2 pi i / n} in double-double precision.
pub fn primitive_root_of_unity(n: u32) -> CDd {
    assert!(n >= 1);
    if n == 1 {
        return CDd::from_f64(1.0, 0.0);
    }
    let mut theta = PI.add(PI).div(Dd::from_f64(n as f64));
    let mut halvings = 0;
    while theta.to_f64().abs() > 0.05 {
        theta = theta.mul(Dd::from_f64(0.5));
        halvings += 1;
    }
    let (mut cos, mut sin) = sin_cos_small(theta);
    for _ in 0..halvings {
        // cos 2x = 2 cos^2 x - 1, sin 2x = 2 sin x cos x
        let two = Dd::from_f64(2.0);
        let new_cos = two.mul(cos).mul(cos).sub(Dd::ONE);
        let new_sin = two.mul(sin).mul(cos);
        cos = new_cos;
        sin = new_sin;
    }
    CDd { re: cos, im: sin }
}

/// Roots of a monic complex polynomial (ascending coefficients, leading 1)
/// by simultaneous Weierstrass iteration in double-double precision.
/// Returns (roots, max reconstruction residual relative to the largest
/// coefficient).
pub fn monic_roots(coeffs: &[CDd]) -> (Vec<CDd>, f64) {
    let d = coeffs.len() - 1;
    if d == 0 {
        return (vec![], 0.0);
    }
    let eval = |z: CDd| {
        let mut acc = CDd::ZERO;
        for &c in coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    };
    let seed = CDd::from_f64(0.4, 0.9);
    let mut roots: Vec<CDd> = Vec::with_capacity(d);
    let mut acc = seed;
    for _ in 0..d {
        roots.push(acc);
        acc = acc.mul(seed);
    }
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = CDd::from_f64(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom = denom.mul(roots[i].sub(roots[j]));
                }
            }
            if denom.norm_sqr().to_f64() == 0.0 {
                denom = CDd::from_f64(1e-30, 0.0);
            }
            let step = eval(roots[i]).div(denom);
            roots[i] = roots[i].sub(step);
            max_step = max_step.max(step.norm().to_f64());
        }
        if max_step < 1e-30 {
            break;
        }
    }
    // reconstruct prod (t - rho_i) and compare
    let mut recon = vec![CDd::from_f64(1.0, 0.0)];
    for &r in &roots {
        let mut next = vec![CDd::ZERO; recon.len() + 1];
        for (i, &rc) in recon.iter().enumerate() {
            next[i + 1] = next[i + 1].add(rc);
            next[i] = next[i].sub(rc.mul(r));
        }
        recon = next;
    }
    let scale = coeffs
        .iter()
        .map(|c| c.norm().to_f64())
        .fold(1.0f64, f64::max);
    let mut resid = 0.0f64;
    for i in 0..=d {
        resid = resid.max(recon[i].sub(coeffs[i]).norm().to_f64());
    }
    (roots, resid / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_sqrt_precision() {
        let two = Dd::from_f64(2.0);
        let s = two.sqrt();
        let back = s.mul(s).sub(two);
        assert!(back.abs().to_f64() < 1e-30, "residual {}", back.abs().to_f64());
    }

    #[test]
    fn dd_div_precision() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(3.0);
        let q = a.div(b);
        let back = q.mul(b).sub(a);
        assert!(back.abs().to_f64() < 1e-31);
    }

    #[test]
    fn simple_roots() {
        // (t - 1)(t - 2i) = t^2 - (1 + 2i) t + 2i
        let monic = vec![
            CDd::from_f64(0.0, 2.0),
            CDd::from_f64(-1.0, -2.0),
            CDd::from_f64(1.0, 0.0),
        ];
        let (roots, resid) = monic_roots(&monic);
        assert!(resid < 1e-25);
        let mut moduli: Vec<f64> = roots.iter().map(|z| z.norm().to_f64()).collect();
        moduli.sort_by(f64::total_cmp);
        assert!((moduli[0] - 1.0).abs() < 1e-14);
        assert!((moduli[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn double_root_modulus_accuracy() {
        // (t - sqrt(7))^2: a true double root keeps ~1e-15 accuracy in dd
        let r = Dd::from_f64(7.0).sqrt();
        let monic = vec![
            CDd { re: r.mul(r), im: Dd::ZERO },
            CDd { re: r.mul(Dd::from_f64(-2.0)), im: Dd::ZERO },
            CDd::from_f64(1.0, 0.0),
        ];
        let (roots, resid) = monic_roots(&monic);
        // a true double root stalls the iteration around 1e-17
        assert!(resid < 1e-15, "residual {resid:e}");
        for z in roots {
            let m = z.norm().to_f64();
            assert!((m - r.to_f64()).abs() < 1e-12, "modulus off by {}", (m - r.to_f64()).abs());
        }
    }

    #[test]
    fn primitive_roots_accurate() {
        for n in [2u32, 3, 5, 7, 12, 342] {
            let w = primitive_root_of_unity(n);
            // |w| = 1 to dd precision
            assert!((w.norm_sqr().to_f64() - 1.0).abs() < 1e-28, "n={n}");
            // w^n = 1 to dd precision after n multiplications
            let mut acc = CDd::from_f64(1.0, 0.0);
            for _ in 0..n {
                acc = acc.mul(w);
            }
            let err = acc.sub(CDd::from_f64(1.0, 0.0)).norm().to_f64();
            assert!(err < 1e-27, "n={n} err={err}");
            // agrees with f64 trig to f64 accuracy
            let t = 2.0 * std::f64::consts::PI / n as f64;
            assert!((w.re.to_f64() - t.cos()).abs() < 1e-14);
            assert!((w.im.to_f64() - t.sin()).abs() < 1e-14);
        }
    }
}
