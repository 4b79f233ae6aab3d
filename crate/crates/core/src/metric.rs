//! Homogeneous metrics on compact rank one symmetric spaces and the (a, b, c, s) chart.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2_rep::TriAxis;

/// Fubini–Study metrics on the projective spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FsSpace {
    /// CP^n, holomorphic sectional curvature 4.
    Complex(u32),
    /// HP^n.
    Quaternionic(u32),
    /// The Cayley plane CaP².
    Cayley,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// Round unit S^d.
    Round { d: u32 },
    /// Berger metric g(t) on S^{2n+1}, U(n+1)-invariant.
    BergerG { n: u32, t: f64 },
    /// h(t₁, t₂, t₃) on S^{4n+3}, Sp(n+1)-invariant, stored with t₁ ≤ t₂ ≤ t₃. `n = 0` is S³.
    QuatH { n: u32, t: [f64; 3] },
    /// k(t) on S^15, Spin(9)-invariant.
    Spin9K { t: f64 },
    /// ȟ(t) on CP^{2n+1}, Sp(n+1)-invariant.
    CPCheckH { n: u32, t: f64 },
    FubiniStudy(FsSpace),
}

/// Simply connected space or its antipodal Z₂ quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quotient {
    Simple,
    Z2,
}

/// A homogeneous metric α·g on a CROSS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    family: Family,
    quotient: Quotient,
    scale: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {v} must be finite and positive")))
    }
}

impl MetricSpec {
    /// Validates parameters and canonicalizes the QuatH triple.
    pub fn new(family: Family, quotient: Quotient, scale: f64) -> Result<Self> {
        check_positive("scale", scale)?;
        let family = match family {
            Family::Round { d } if d < 2 => {
                return Err(Error::InvalidParameter(format!("round S^d needs d >= 2, got {d}")))
            }
            Family::BergerG { n, t } => {
                if n == 0 {
                    return Err(Error::InvalidParameter("Berger g(t) needs n >= 1".into()));
                }
                check_positive("t", t)?;
                family
            }
            Family::QuatH { n, mut t } => {
                for v in t {
                    check_positive("t", v)?;
                }
                t.sort_by(f64::total_cmp);
                Family::QuatH { n, t }
            }
            Family::Spin9K { t } => {
                check_positive("t", t)?;
                family
            }
            Family::CPCheckH { n, t } => {
                if n == 0 {
                    return Err(Error::InvalidParameter("CP^{2n+1} family needs n >= 1".into()));
                }
                check_positive("t", t)?;
                family
            }
            Family::FubiniStudy(FsSpace::Complex(n) | FsSpace::Quaternionic(n)) if n == 0 => {
                return Err(Error::InvalidParameter("projective space needs n >= 1".into()))
            }
            other => other,
        };
        if quotient == Quotient::Z2 && !family.is_sphere() {
            return Err(Error::InvalidParameter(
                "Z2 quotient is only defined for sphere families".into(),
            ));
        }
        Ok(Self { family, quotient, scale })
    }

    pub fn sphere(family: Family) -> Result<Self> {
        Self::new(family, Quotient::Simple, 1.0)
    }

    pub fn projective(family: Family) -> Result<Self> {
        Self::new(family, Quotient::Z2, 1.0)
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn quotient(&self) -> Quotient {
        self.quotient
    }
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Same metric with the homothety factor replaced.
    pub fn with_scale(&self, scale: f64) -> Result<Self> {
        Self::new(self.family, self.quotient, scale)
    }

    pub fn dimension(&self) -> u32 {
        match self.family {
            Family::Round { d } => d,
            Family::BergerG { n, .. } => 2 * n + 1,
            Family::QuatH { n, .. } => 4 * n + 3,
            Family::Spin9K { .. } => 15,
            Family::CPCheckH { n, .. } => 4 * n + 2,
            Family::FubiniStudy(FsSpace::Complex(n)) => 2 * n,
            Family::FubiniStudy(FsSpace::Quaternionic(n)) => 4 * n,
            Family::FubiniStudy(FsSpace::Cayley) => 16,
        }
    }
}

impl Family {
    pub fn is_sphere(&self) -> bool {
        !matches!(self, Family::CPCheckH { .. } | Family::FubiniStudy(_))
    }
}

/// Parameters of g_{(a,b,c,s)} with `a ≥ b ≥ c > 0`, `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ABCSParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub s: f64,
}

impl ABCSParams {
    pub fn new(a: f64, b: f64, c: f64, s: f64) -> Result<Self> {
        let axes = TriAxis::new(a, b, c)?;
        check_positive("s", s)?;
        Ok(Self { a: axes.a(), b: axes.b(), c: axes.c(), s })
    }

    pub fn axes(&self) -> TriAxis {
        TriAxis::new(self.a, self.b, self.c).expect("validated on construction")
    }
}

/// The (a, b, c, s) or (b, s) chart of a metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AbcsForm {
    Quat(ABCSParams),
    Cp { b: f64, s: f64 },
}

/// Chart of a QuatH (n ≥ 1) or CPCheckH metric, with the homothety folded in.
pub fn to_abcs(spec: &MetricSpec) -> Result<AbcsForm> {
    let shrink = spec.scale.sqrt();
    match spec.family {
        Family::QuatH { n, t } if n >= 1 => {
            let [a, b, c] = t.map(|ti| 1.0 / (SQRT_2 * ti * shrink));
            Ok(AbcsForm::Quat(ABCSParams::new(a, b, c, 1.0 / shrink)?))
        }
        Family::CPCheckH { t, .. } => {
            Ok(AbcsForm::Cp { b: 1.0 / (SQRT_2 * t * shrink), s: 1.0 / shrink })
        }
        other => Err(Error::WrongFamily(format!("{other:?} has no (a,b,c,s) chart"))),
    }
}

/// g_{(a,b,c,s)} ≅ (1/s²)·h(s/(√2a), s/(√2b), s/(√2c)) on S^{4n+3} or its quotient.
pub fn from_abcs(n: u32, params: ABCSParams, quotient: Quotient) -> Result<MetricSpec> {
    if n == 0 {
        return Err(Error::InvalidParameter("(a,b,c,s) chart needs n >= 1".into()));
    }
    let s = params.s;
    let t = [params.a, params.b, params.c].map(|x| s / (SQRT_2 * x));
    MetricSpec::new(Family::QuatH { n, t }, quotient, 1.0 / (s * s))
}

/// ǧ_{(b,s)} ≅ (1/s²)·ȟ(s/(√2b)) on CP^{2n+1}.
pub fn from_cp_bs(n: u32, b: f64, s: f64) -> Result<MetricSpec> {
    check_positive("b", b)?;
    check_positive("s", s)?;
    MetricSpec::new(Family::CPCheckH { n, t: s / (SQRT_2 * b) }, Quotient::Simple, 1.0 / (s * s))
}

/// Axes of the S³ metric h(t₁,t₂,t₃) ≅ g_{(1/t₁, 1/t₂, 1/t₃)}, with the homothety folded in.
pub fn s3_axes(spec: &MetricSpec) -> Result<TriAxis> {
    match spec.family {
        Family::QuatH { n: 0, t } => {
            let shrink = spec.scale.sqrt();
            TriAxis::new(1.0 / (t[0] * shrink), 1.0 / (t[1] * shrink), 1.0 / (t[2] * shrink))
        }
        other => Err(Error::WrongFamily(format!("{other:?} is not an S^3 metric"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: u32, t1: f64, t2: f64, t3: f64) -> MetricSpec {
        MetricSpec::sphere(Family::QuatH { n, t: [t1, t2, t3] }).unwrap()
    }

    #[test]
    fn quat_triples_are_sorted() {
        assert_eq!(h(1, 2.0, 0.5, 1.0).family(), Family::QuatH { n: 1, t: [0.5, 1.0, 2.0] });
    }

    #[test]
    fn dimensions() {
        assert_eq!(h(1, 1.0, 1.0, 1.0).dimension(), 7);
        assert_eq!(h(0, 1.0, 1.0, 1.0).dimension(), 3);
        let cp = MetricSpec::sphere(Family::CPCheckH { n: 1, t: 1.0 }).unwrap();
        assert_eq!(cp.dimension(), 6);
        let cay = MetricSpec::sphere(Family::FubiniStudy(FsSpace::Cayley)).unwrap();
        assert_eq!(cay.dimension(), 16);
    }

    #[test]
    fn rejects_invalid() {
        assert!(MetricSpec::sphere(Family::QuatH { n: 1, t: [1.0, -1.0, 1.0] }).is_err());
        assert!(MetricSpec::projective(Family::CPCheckH { n: 1, t: 1.0 }).is_err());
        assert!(MetricSpec::sphere(Family::Round { d: 1 }).is_err());
        assert!(MetricSpec::new(Family::Round { d: 3 }, Quotient::Simple, 0.0).is_err());
    }

    #[test]
    fn abcs_examples() {
        let r = 1.0 / SQRT_2;
        match to_abcs(&h(1, 1.0, 1.0, 1.0)).unwrap() {
            AbcsForm::Quat(p) => assert_eq!((p.a, p.b, p.c, p.s), (r, r, r, 1.0)),
            _ => unreachable!(),
        }
        match to_abcs(&h(1, 0.5, 1.0, 1.0)).unwrap() {
            AbcsForm::Quat(p) => {
                assert!((p.a - SQRT_2).abs() < 1e-15);
                assert_eq!((p.b, p.c, p.s), (r, r, 1.0));
            }
            _ => unreachable!(),
        }
        let back = from_abcs(1, ABCSParams::new(2.0, 1.0, 0.5, 3.0).unwrap(), Quotient::Z2).unwrap();
        assert_eq!(back.scale(), 1.0 / 9.0);
        match to_abcs(&back).unwrap() {
            AbcsForm::Quat(p) => {
                for (x, y) in [(p.a, 2.0), (p.b, 1.0), (p.c, 0.5), (p.s, 3.0)] {
                    assert!((x - y).abs() <= 1e-15 * y);
                }
            }
            _ => unreachable!(),
        }
        assert!(to_abcs(&MetricSpec::sphere(Family::Round { d: 7 }).unwrap()).is_err());
    }
}
