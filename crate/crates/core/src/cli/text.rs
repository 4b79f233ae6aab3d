//! Text form of a metric, e.g. `S7:h(0.5,1,1)`, `RP7:h(1,1,1)`, `CP3:hcheck(0.7)`,
//! `S9:g(2)`, `S15:k(0.5)`, `Sd(11):round`, `HP2:fs`, `CaP2:fs`, with an optional
//! `*scale=2.0` suffix.

use crate::error::{Error, Result};
use crate::metric::{Family, FsSpace, MetricSpec, Quotient};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Space {
    Sphere(u32),
    Projective(u32),
    Complex(u32),
    Quaternionic(u32),
    Cayley,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, reason: reason.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn int(&mut self) -> Result<u32> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected an integer");
        }
        let v = self.rest()[..len].parse().or_else(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn number(&mut self) -> Result<f64> {
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
            .count();
        if len == 0 {
            return self.err("expected a number");
        }
        let v: f64 = self.rest()[..len].parse().or_else(|_| self.err("malformed number"))?;
        if !(v.is_finite() && v > 0.0) {
            return self.err("parameters must be finite and positive");
        }
        self.pos += len;
        Ok(v)
    }

    fn args(&mut self, count: usize) -> Result<Vec<f64>> {
        self.expect("(")?;
        let mut out = vec![self.number()?];
        while out.len() < count {
            self.expect(",")?;
            out.push(self.number()?);
        }
        self.expect(")")?;
        Ok(out)
    }
}

fn space(c: &mut Cursor) -> Result<Space> {
    if c.eat("CaP2") {
        Ok(Space::Cayley)
    } else if c.eat("Sd(") {
        let d = c.int()?;
        c.expect(")")?;
        Ok(Space::Sphere(d))
    } else if c.eat("RPd(") {
        let d = c.int()?;
        c.expect(")")?;
        Ok(Space::Projective(d))
    } else if c.eat("RP") {
        Ok(Space::Projective(c.int()?))
    } else if c.eat("CP") {
        Ok(Space::Complex(c.int()?))
    } else if c.eat("HP") {
        Ok(Space::Quaternionic(c.int()?))
    } else if c.eat("S") {
        Ok(Space::Sphere(c.int()?))
    } else {
        c.err("expected a space: S<d>, RP<d>, Sd(<d>), RPd(<d>), CP<m>, HP<m> or CaP2")
    }
}

fn sphere_dim(sp: Space) -> Option<(u32, Quotient)> {
    match sp {
        Space::Sphere(d) => Some((d, Quotient::Simple)),
        Space::Projective(d) => Some((d, Quotient::Z2)),
        _ => None,
    }
}

pub fn parse_metric(src: &str) -> Result<MetricSpec> {
    let mut c = Cursor { src: src.trim(), pos: 0 };
    let sp = space(&mut c)?;
    c.expect(":")?;
    let metric_pos = c.pos;
    let wrong = |c: &Cursor, what: &str| -> Result<(Family, Quotient)> {
        Err(Error::Parse { pos: metric_pos.min(c.pos), reason: what.to_string() })
    };
    let (family, quotient) = if c.eat("round") {
        match sphere_dim(sp) {
            Some((d, q)) => (Family::Round { d }, q),
            None => wrong(&c, "`round` needs a sphere or real projective space")?,
        }
    } else if c.eat("hcheck") {
        let t = c.args(1)?[0];
        match sp {
            Space::Complex(m) if m % 2 == 1 && m >= 3 => {
                (Family::CPCheckH { n: (m - 1) / 2, t }, Quotient::Simple)
            }
            _ => wrong(&c, "`hcheck` needs CP<2n+1> with n >= 1")?,
        }
    } else if c.eat("h") {
        let a = c.args(3)?;
        match sphere_dim(sp) {
            Some((d, q)) if d % 4 == 3 => (Family::QuatH { n: (d - 3) / 4, t: [a[0], a[1], a[2]] }, q),
            _ => wrong(&c, "`h` needs S<4n+3> or RP<4n+3>")?,
        }
    } else if c.eat("g") {
        let t = c.args(1)?[0];
        match sphere_dim(sp) {
            Some((d, q)) if d % 2 == 1 && d >= 3 => (Family::BergerG { n: (d - 1) / 2, t }, q),
            _ => wrong(&c, "`g` needs S<2n+1> or RP<2n+1> with n >= 1")?,
        }
    } else if c.eat("k") {
        let t = c.args(1)?[0];
        match sphere_dim(sp) {
            Some((15, q)) => (Family::Spin9K { t }, q),
            _ => wrong(&c, "`k` needs S15 or RP15")?,
        }
    } else if c.eat("fs") {
        match sp {
            Space::Complex(m) => (Family::FubiniStudy(FsSpace::Complex(m)), Quotient::Simple),
            Space::Quaternionic(m) => {
                (Family::FubiniStudy(FsSpace::Quaternionic(m)), Quotient::Simple)
            }
            Space::Cayley => (Family::FubiniStudy(FsSpace::Cayley), Quotient::Simple),
            _ => wrong(&c, "`fs` needs CP<m>, HP<m> or CaP2")?,
        }
    } else {
        return c.err("expected a metric: round, h(..), g(..), k(..), hcheck(..) or fs");
    };
    let scale = if c.eat("*scale=") { c.number()? } else { 1.0 };
    if !c.rest().is_empty() {
        return c.err("unexpected trailing input");
    }
    MetricSpec::new(family, quotient, scale)
        .map_err(|e| Error::Parse { pos: metric_pos, reason: e.to_string() })
}

/// Canonical text form; `parse_metric(&format_metric(s)) == Ok(s)`.
pub fn format_metric(spec: &MetricSpec) -> String {
    let pre = |d: u32| match spec.quotient() {
        Quotient::Simple => format!("S{d}"),
        Quotient::Z2 => format!("RP{d}"),
    };
    let body = match spec.family() {
        Family::Round { d } => match spec.quotient() {
            Quotient::Simple => format!("Sd({d}):round"),
            Quotient::Z2 => format!("RPd({d}):round"),
        },
        Family::BergerG { n, t } => format!("{}:g({t})", pre(2 * n + 1)),
        Family::QuatH { n, t } => format!("{}:h({},{},{})", pre(4 * n + 3), t[0], t[1], t[2]),
        Family::Spin9K { t } => format!("{}:k({t})", pre(15)),
        Family::CPCheckH { n, t } => format!("CP{}:hcheck({t})", 2 * n + 1),
        Family::FubiniStudy(FsSpace::Complex(m)) => format!("CP{m}:fs"),
        Family::FubiniStudy(FsSpace::Quaternionic(m)) => format!("HP{m}:fs"),
        Family::FubiniStudy(FsSpace::Cayley) => "CaP2:fs".to_string(),
    };
    if spec.scale() == 1.0 {
        body
    } else {
        format!("{body}*scale={}", spec.scale())
    }
}
