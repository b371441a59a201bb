//! Newton polygons of differential operators.
//!
//! The polygon of `P = sum g_i D^i` is the lower boundary of the convex hull
//! of `(i, v(g_i))` together with `(0, min v(g_i))`, so it always starts at
//! height `v_min` on the vertical axis and every slope is nonnegative.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rat::{self, Rat};
use crate::series::Valuation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub slope: Rat,
    pub width: usize,
    /// Abscissa of the left endpoint.
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rat)>,
    pub edges: Vec<Edge>,
    pub v_min: Rat,
    /// Every finite point `(i, v(g_i))`, for display.
    pub points: Vec<(usize, Rat)>,
}

impl NewtonPolygon {
    pub fn slopes(&self) -> Vec<(Rat, usize)> {
        self.edges.iter().map(|e| (e.slope.clone(), e.width)).collect()
    }

    pub fn edge(&self, slope: &Rat) -> Option<&Edge> {
        self.edges.iter().find(|e| e.slope == *slope)
    }

    /// Height of the polygon above abscissa `i`.
    pub fn height_at(&self, i: usize) -> Option<Rat> {
        let w = self.vertices.windows(2).find(|w| w[0].0 <= i && i <= w[1].0)?;
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        let t = rat::rat((i - x0) as i64, (x1 - x0) as i64);
        Some(y0 + (y1 - y0) * t)
    }

    /// A small character plot: `*` for hull vertices, `o` for other points.
    pub fn ascii(&self) -> String {
        let Some(top) = self.points.iter().map(|p| p.1.clone()).max() else {
            return String::new();
        };
        let den = self
            .points
            .iter()
            .fold(1, |m, p| rat::lcm(m, rat::den_u32(&p.1)));
        let bottom = self.v_min.clone();
        let step = Rat::new(1.into(), den.into());
        let mut rows = ((&top - &bottom) / &step).to_integer();
        let mut step = step;
        while rows > 24.into() {
            step *= rat::int(2);
            rows = ((&top - &bottom) / &step).ceil().to_integer();
        }
        let width = self.points.iter().map(|p| p.0).max().unwrap_or(0);
        let mut out = String::new();
        let rows: i64 = rows.try_into().unwrap_or(24);
        for r in (0..=rows).rev() {
            let h = &bottom + &step * rat::int(r);
            let label = rat::format(&h);
            out.push_str(&format!("{label:>7} |"));
            for i in 0..=width {
                let cell = |(x, y): &(usize, Rat)| *x == i && (y - &h).abs() < step.clone() / rat::int(2);
                let ch = if self.vertices.iter().any(cell) {
                    '*'
                } else if self.points.iter().any(cell) {
                    'o'
                } else {
                    ' '
                };
                out.push_str(&format!(" {ch} "));
            }
            out.push('\n');
        }
        out.push_str("        +");
        out.push_str(&"---".repeat(width + 1));
        out.push_str("\n         ");
        for i in 0..=width {
            out.push_str(&format!("{:^3}", i));
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|(i, v)| format!("({i}, {})", rat::format(v)))
            .collect();
        write!(f, "vertices {}", verts.join(" "))?;
        for e in &self.edges {
            write!(f, "; slope {} width {}", rat::format(&e.slope), e.width)?;
        }
        Ok(())
    }
}

fn cross(o: &(usize, Rat), a: &(usize, Rat), b: &(usize, Rat)) -> Rat {
    let ax = rat::int(a.0 as i64 - o.0 as i64);
    let bx = rat::int(b.0 as i64 - o.0 as i64);
    ax * (&b.1 - &o.1) - (&a.1 - &o.1) * bx
}

pub fn newton_polygon(p: &DiffOperator) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(Error::precondition("the zero operator has no Newton polygon"));
    }
    let mut points = Vec::new();
    for (i, g) in p.coeffs().iter().enumerate() {
        match g.valuation() {
            Valuation::Finite(v) => points.push((i, v)),
            Valuation::Infinite => {}
            Valuation::Unknown => {
                return Err(Error::precision(format!(
                    "valuation of the coefficient of D^{i} is not determined ({g})"
                )))
            }
        }
    }
    let v_min = points.iter().map(|p| p.1.clone()).min().unwrap();
    let mut all = points.clone();
    if all[0].0 != 0 {
        all.insert(0, (0, v_min.clone()));
    } else {
        all[0].1 = v_min.clone();
    }
    // Monotone chain; collinear middle points are dropped.
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for pt in all {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &pt) <= Rat::zero() {
            hull.pop();
        }
        hull.push(pt);
    }
    let edges = hull
        .windows(2)
        .map(|w| Edge {
            slope: (&w[1].1 - &w[0].1) / rat::int((w[1].0 - w[0].0) as i64),
            width: w[1].0 - w[0].0,
            start: w[0].0,
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: hull,
        edges,
        v_min,
        points,
    })
}

/// Slopes with their multiplicities (horizontal widths).
pub fn slopes(p: &DiffOperator) -> Result<Vec<(Rat, usize)>> {
    Ok(newton_polygon(p)?.slopes())
}

/// The polynomial read off the slope-zero edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePolynomial {
    pub poly: UniPoly,
    /// Left endpoint of the edge, always 0 given the extra point `(0, v_min)`.
    pub offset: usize,
}

/// `E(x) = sum c_i x^(i - i0)` over the slope-zero edge `[i0, i1]`, with
/// `c_i` the coefficient of `S^{v_min}` in `g_i`; `None` without such edge.
pub fn edge_polynomial_slope0(p: &DiffOperator) -> Result<Option<EdgePolynomial>> {
    let np = newton_polygon(p)?;
    let Some(edge) = np.edge(&Rat::zero()) else {
        return Ok(None);
    };
    let coeffs = (edge.start..=edge.start + edge.width)
        .map(|i| p.coeff(i).coeff(&np.v_min))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(EdgePolynomial {
        poly: UniPoly::new(coeffs),
        offset: edge.start,
    }))
}
