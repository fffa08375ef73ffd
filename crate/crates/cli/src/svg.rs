//! SVG 1.1 drawings of planar polygons, their triangulations and normal fans.

use std::fmt::Write;

use num_traits::ToPrimitive;
use toric_kit::cones::Fan;
use toric_kit::linalg::Q;
use toric_kit::polytope::Polytope;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Something to draw, in lattice coordinates.
pub enum Layer<'a> {
    Polygon { p: &'a Polytope, lattice_points: Vec<[i64; 2]> },
    Triangles(Vec<Vec<Vec<Q>>>),
    Fan(&'a Fan),
}

struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.min_x) * UNIT
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.max_y - y) * UNIT
    }
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn ordered_polygon(p: &Polytope) -> Vec<(f64, f64)> {
    let pts: Vec<(f64, f64)> = p.vertices.iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    if pts.len() < 3 {
        return pts;
    }
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let mut sorted = pts;
    sorted.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    sorted
}

/// Renders the layers in one frame. Fans are drawn centred at the origin with rays of
/// length two, so the frame always contains the square `[-2,2]^2` when a fan is present.
pub fn render(layers: &[Layer]) -> String {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for l in layers {
        match l {
            Layer::Polygon { p, lattice_points } => {
                for v in &p.vertices {
                    xs.push(f(&v[0]));
                    ys.push(f(&v[1]));
                }
                for q in lattice_points {
                    xs.push(q[0] as f64);
                    ys.push(q[1] as f64);
                }
            }
            Layer::Triangles(ts) => {
                for t in ts {
                    for v in t {
                        xs.push(f(&v[0]));
                        ys.push(f(&v[1]));
                    }
                }
            }
            Layer::Fan(_) => {
                xs.extend([-2.0, 2.0]);
                ys.extend([-2.0, 2.0]);
            }
        }
    }
    if xs.is_empty() {
        xs.push(0.0);
        ys.push(0.0);
    }
    let min_x = xs.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let max_x = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    let min_y = ys.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let max_y = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    let fr = Frame {
        min_x,
        max_y,
        width: (max_x - min_x) * UNIT + 2.0 * MARGIN,
        height: (max_y - min_y) * UNIT + 2.0 * MARGIN,
    };

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(fr.width),
        num(fr.height),
        num(fr.width),
        num(fr.height)
    );
    s.push_str("<g stroke=\"#dddddd\" stroke-width=\"0.5\">\n");
    for gx in (min_x as i64)..=(max_x as i64) {
        let x = fr.x(gx as f64);
        let _ = writeln!(s, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", num(x), num(fr.y(max_y)), num(x), num(fr.y(min_y)));
    }
    for gy in (min_y as i64)..=(max_y as i64) {
        let y = fr.y(gy as f64);
        let _ = writeln!(s, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", num(fr.x(min_x)), num(y), num(fr.x(max_x)), num(y));
    }
    s.push_str("</g>\n");

    for (i, l) in layers.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        match l {
            Layer::Polygon { p, lattice_points } => {
                let pts = ordered_polygon(p);
                let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(fr.x(*x)), num(fr.y(*y)))).collect();
                if pts.len() >= 3 {
                    let _ = writeln!(
                        s,
                        "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.2\" stroke=\"{color}\" stroke-width=\"2\"/>",
                        coords.join(" ")
                    );
                } else {
                    let _ = writeln!(s, "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>", coords.join(" "));
                }
                for q in lattice_points {
                    let _ = writeln!(
                        s,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>",
                        num(fr.x(q[0] as f64)),
                        num(fr.y(q[1] as f64))
                    );
                }
            }
            Layer::Triangles(ts) => {
                for t in ts {
                    let coords: Vec<String> =
                        t.iter().map(|v| format!("{},{}", num(fr.x(f(&v[0]))), num(fr.y(f(&v[1]))))).collect();
                    let _ = writeln!(
                        s,
                        "<polygon points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" stroke-dasharray=\"4,2\"/>",
                        coords.join(" ")
                    );
                }
            }
            Layer::Fan(fan) => {
                for r in fan.rays() {
                    let (x, y) = (r[0].to_f64().unwrap_or(0.0), r[1].to_f64().unwrap_or(0.0));
                    let len = (x * x + y * y).sqrt();
                    if len == 0.0 {
                        continue;
                    }
                    let _ = writeln!(
                        s,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                        num(fr.x(0.0)),
                        num(fr.y(0.0)),
                        num(fr.x(2.0 * x / len)),
                        num(fr.y(2.0 * y / len))
                    );
                }
                let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>", num(fr.x(0.0)), num(fr.y(0.0)));
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_kit::polytope::convex_hull_int;
    use toric_kit::lattice::ivec;

    #[test]
    fn square_drawing() {
        let p = convex_hull_int(&[ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])]).unwrap();
        let svg = render(&[Layer::Polygon { p: &p, lattice_points: vec![[0, 0], [1, 1]] }]);
        assert!(svg.contains("version=\"1.1\""));
        assert!(svg.contains("<polygon points=\"20,60 60,60 60,20 20,20\""));
        assert_eq!(svg.matches("<circle").count(), 2);
    }
}
