//! SVG drawings of rank-2 weight diagrams.
//!
//! Points are located exactly: a weight `x` is stored as the pair of
//! rationals `((x,α_1), (x,ω_2))`, which are its coordinates along an
//! orthogonal basis of `H*`. Dividing by the basis lengths (square roots)
//! happens only when coordinates are printed.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use fusionkit::weights::{weight_system_with, Limits};
use fusionkit::weyl::orbit;
use fusionkit::{AlgebraId, Error, Result, RootSystem, Weight};

/// Pixels per unit length.
const SCALE: f64 = 50.0;
const PAD: f64 = 60.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub algebra: AlgebraId,
    /// Highest weight of the module drawn; axes only when absent.
    pub highest: Option<Weight>,
    pub shift: Weight,
    /// Draws the affine wall `⟨x,θ⟩ = k+ȟ`.
    pub level: Option<i64>,
    pub show_axes: bool,
    pub show_mults: bool,
}

impl DiagramSpec {
    pub fn new(algebra: AlgebraId) -> Self {
        DiagramSpec {
            algebra,
            highest: None,
            shift: Weight::zero(algebra.rank()),
            level: None,
            show_axes: true,
            show_mults: true,
        }
    }
}

type Exact = [BigRational; 2];

struct Frame<'a> {
    rs: &'a RootSystem,
    basis: [Weight; 2],
    lengths: [f64; 2],
}

impl<'a> Frame<'a> {
    fn new(rs: &'a RootSystem) -> Result<Self> {
        let basis = [rs.simple_root(0).clone(), Weight::fundamental(2, 2)];
        let mut lengths = [0.0; 2];
        for (len, u) in lengths.iter_mut().zip(&basis) {
            *len = rs.inner_product(u, u)?.to_f64().unwrap_or(f64::NAN).sqrt();
        }
        Ok(Frame { rs, basis, lengths })
    }

    fn exact(&self, x: &Weight) -> Result<Exact> {
        Ok([
            self.rs.inner_product(x, &self.basis[0])?,
            self.rs.inner_product(x, &self.basis[1])?,
        ])
    }

    /// Screen position; y grows downwards in SVG.
    fn render(&self, c: &Exact) -> (f64, f64) {
        let x = c[0].to_f64().unwrap_or(f64::NAN) / self.lengths[0] * SCALE;
        let y = c[1].to_f64().unwrap_or(f64::NAN) / self.lengths[1] * SCALE;
        (x, -y)
    }

    fn point(&self, x: &Weight) -> Result<(f64, f64)> {
        Ok(self.render(&self.exact(x)?))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn unit_normal((x, y): (f64, f64)) -> (f64, f64) {
    let n = x.hypot(y);
    (-y / n, x / n)
}

struct Bounds {
    min: (f64, f64),
    max: (f64, f64),
}

impl Bounds {
    fn around(points: &[(f64, f64)]) -> Self {
        let mut b = Bounds {
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        };
        for &(x, y) in points {
            b.min = (b.min.0.min(x), b.min.1.min(y));
            b.max = (b.max.0.max(x), b.max.1.max(y));
        }
        b.min = (b.min.0 - PAD, b.min.1 - PAD);
        b.max = (b.max.0 + PAD, b.max.1 + PAD);
        b
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        self.min.0 <= x && x <= self.max.0 && self.min.1 <= y && y <= self.max.1
    }

    /// Farthest distance from the origin to a corner.
    fn reach(&self) -> f64 {
        [self.min.0.abs(), self.max.0.abs()]
            .iter()
            .flat_map(|x| [self.min.1.abs(), self.max.1.abs()].map(|y| x.hypot(y)))
            .fold(0.0, f64::max)
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), attrs: &str) {
    let _ = writeln!(
        out,
        r#"    <line x1="{}" y1="{}" x2="{}" y2="{}" {attrs}/>"#,
        num(a.0),
        num(a.1),
        num(b.0),
        num(b.1)
    );
}

pub fn render_svg(spec: &DiagramSpec, limits: &Limits) -> Result<String> {
    let rs = RootSystem::new(spec.algebra)?;
    if rs.rank() != 2 {
        return Err(Error::Parse {
            input: spec.algebra.to_string(),
            position: 0,
            message: "diagrams are drawn for rank-2 algebras only".into(),
        });
    }
    if spec.shift.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: spec.shift.rank(),
        });
    }
    if let Some(k) = spec.level {
        if k < 1 {
            return Err(Error::InvalidLevel(k));
        }
    }
    let frame = Frame::new(&rs)?;

    let module = match &spec.highest {
        Some(h) => Some(weight_system_with(&rs, h, limits)?),
        None => None,
    };
    let mut dots = Vec::new();
    if let Some(ws) = &module {
        for (beta, m) in ws.iter() {
            let at = beta + &spec.shift;
            dots.push((beta.clone(), frame.point(&at)?, at, m));
        }
    }

    let mut extent: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    for w in orbit(&rs, rs.rho()) {
        extent.push(frame.point(&w)?);
    }
    extent.extend(dots.iter().map(|d| d.1));
    let bounds = Bounds::around(&extent);
    let reach = bounds.reach();
    let far = 2.0 * reach + SCALE;
    let (width, height) = (bounds.max.0 - bounds.min.0, bounds.max.1 - bounds.min.1);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}" data-algebra="{}"{}>"#,
        num(bounds.min.0),
        num(bounds.min.1),
        num(width),
        num(height),
        num(width),
        num(height),
        spec.algebra,
        spec.level.map(|k| format!(r#" data-level="{k}""#)).unwrap_or_default(),
    );
    let _ = writeln!(out, "  <title>{} weight diagram</title>", spec.algebra);

    if spec.show_axes {
        let w1 = frame.point(&Weight::fundamental(2, 1))?;
        let w2 = frame.point(&Weight::fundamental(2, 2))?;
        let (n1, n2) = (w1.0.hypot(w1.1), w2.0.hypot(w2.1));
        let e1 = (w1.0 / n1 * far, w1.1 / n1 * far);
        let e2 = (w2.0 / n2 * far, w2.1 / n2 * far);
        let _ = writeln!(out, r##"  <g class="chamber" fill="#e3ecf7" stroke="none">"##);
        let _ = writeln!(
            out,
            r#"    <polygon points="0.000000,0.000000 {},{} {},{} {},{}"/>"#,
            num(e1.0),
            num(e1.1),
            num(e1.0 + e2.0),
            num(e1.1 + e2.1),
            num(e2.0),
            num(e2.1)
        );
        let _ = writeln!(out, "  </g>");

        let _ = writeln!(out, r##"  <g class="mirrors" stroke="#8a8a8a" stroke-width="1">"##);
        for root in rs.positive_roots() {
            let d = unit_normal(frame.point(&root.weight)?);
            let attrs = format!(r#"data-root="{}""#, root.weight);
            line(&mut out, (-d.0 * far, -d.1 * far), (d.0 * far, d.1 * far), &attrs);
        }
        let _ = writeln!(out, "  </g>");
    }

    if let Some(k) = spec.level {
        let pairing = k + rs.dual_coxeter();
        let theta = rs.theta();
        // ⟨x,θ⟩ = 2(x,θ)/(θ,θ), so the wall passes through (k+ȟ)θ/2.
        let scale = BigRational::new(pairing.into(), 2.into());
        let base = frame.exact(theta)?.map(|c| c * &scale);
        let p = frame.render(&base);
        let d = unit_normal(frame.point(theta)?);
        let _ = writeln!(
            out,
            r##"  <g class="affine" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6,4">"##
        );
        let attrs = format!(r#"data-level="{k}" data-theta="{pairing}""#);
        line(
            &mut out,
            (p.0 - d.0 * far, p.1 - d.1 * far),
            (p.0 + d.0 * far, p.1 + d.1 * far),
            &attrs,
        );
        let _ = writeln!(out, "  </g>");
    }

    // Lattice points inside the view: |⟨x,α̌_i⟩| ≤ |x|·|α̌_i|.
    let _ = writeln!(out, r##"  <g class="lattice" fill="#b5b5b5">"##);
    let bound = |i: usize| -> Result<i64> {
        let a = rs.simple_root(i);
        let len = rs.inner_product(a, a)?.to_f64().unwrap_or(f64::NAN).sqrt();
        Ok((reach / SCALE * 2.0 / len).ceil() as i64 + 1)
    };
    let (b1, b2) = (bound(0)?, bound(1)?);
    for a in -b1..=b1 {
        for b in -b2..=b2 {
            let w = Weight::from([a, b]);
            let p = frame.point(&w)?;
            if bounds.contains(p) {
                let _ = writeln!(
                    out,
                    r#"    <circle cx="{}" cy="{}" r="1.5" data-weight="{w}"/>"#,
                    num(p.0),
                    num(p.1)
                );
            }
        }
    }
    let _ = writeln!(out, "  </g>");

    if !dots.is_empty() {
        let wall = spec.level.map(|k| k + rs.dual_coxeter());
        let _ = writeln!(out, r##"  <g class="diagram" fill="#1f3a93">"##);
        for (beta, p, at, m) in &dots {
            let theta = rs.level_of(at);
            let on_wall = if wall == Some(theta) {
                r#" data-wall="affine""#
            } else {
                ""
            };
            let _ = writeln!(
                out,
                r#"    <circle cx="{}" cy="{}" r="4" data-weight="{beta}" data-position="{at}" data-mult="{m}" data-theta="{theta}"{on_wall}/>"#,
                num(p.0),
                num(p.1)
            );
        }
        let _ = writeln!(out, "  </g>");
        if spec.show_mults {
            let _ = writeln!(
                out,
                r##"  <g class="mults" font-family="sans-serif" font-size="11" fill="#1f3a93">"##
            );
            for (beta, p, _, m) in &dots {
                let _ = writeln!(
                    out,
                    r#"    <text x="{}" y="{}" data-weight="{beta}">{m}</text>"#,
                    num(p.0 + 6.0),
                    num(p.1 - 6.0)
                );
            }
            let _ = writeln!(out, "  </g>");
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
