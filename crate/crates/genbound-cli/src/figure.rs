//! Planar export of Δ_2: the boundary of `id(Δ_2)` and the α-crosses.

use genbound::chain::CoefficientTuple;
use genbound::geometry::{int, BaryPoint, Rational};
use genbound::theta::{face_insert, FaceMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Pixel positions of the vertices `e_0`, `e_1`, `e_2`.
const VERTICES: [(i64, i64); 3] = [(40, 440), (440, 440), (240, 40)];

/// A labelled segment of Δ_2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub kind: &'static str,
    pub label: String,
    pub start: BaryPoint,
    pub end: BaryPoint,
}

/// The `3(L+1)` faces of `∂(id(Δ_2))`, labelled with their coefficients `±m_i`.
///
/// Each face is the image of Δ_1 under `⟨id⟩_{L,2,i,j}`; the homeomorphism
/// `Θ_{L,1,i}` does not change that image.
pub fn boundary_segments(m: &CoefficientTuple) -> Vec<Segment> {
    let l = m.l();
    let ends: [BaryPoint; 2] = ["[1,0]".parse().unwrap(), "[0,1]".parse().unwrap()];
    let mut out = Vec::new();
    for j in 0..=2 {
        for (i, mi) in m.values().iter().enumerate() {
            let key = FaceMap::new(l, 2, i, j).expect("indices are in range");
            let coeff = if j % 2 == 0 { mi.clone() } else { -mi };
            out.push(Segment {
                kind: "boundary",
                label: format!("{coeff:+}"),
                start: face_insert(&key, &ends[0]).expect("dimensions match"),
                end: face_insert(&key, &ends[1]).expect("dimensions match"),
            });
        }
    }
    out
}

/// The three pieces of `♣_{2,α}`: for each `j`, the points with `x_j = α`.
pub fn cross_segments(alpha: &Rational) -> Vec<Segment> {
    let rest = int(1) - alpha;
    (0..3)
        .map(|j| {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let mut s = vec![int(0); 3];
            s[j] = alpha.clone();
            let mut e = s.clone();
            s[a] = rest.clone();
            e[b] = rest.clone();
            Segment {
                kind: "cross",
                label: format!("alpha={alpha}"),
                start: BaryPoint::new(s).expect("coordinates sum to one"),
                end: BaryPoint::new(e).expect("coordinates sum to one"),
            }
        })
        .collect()
}

/// Planar position of `x` as exact rationals.
pub fn planar(x: &BaryPoint) -> (Rational, Rational) {
    let mut px = Rational::zero();
    let mut py = Rational::zero();
    for (c, (vx, vy)) in x.coords().iter().zip(VERTICES) {
        px += c * int(vx);
        py += c * int(vy);
    }
    (px, py)
}

/// Decimal rendering with three places, rounded half away from zero, using
/// integer arithmetic only.
pub fn decimal(r: &Rational) -> String {
    let scaled = r * int(1000);
    let (q, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let q = if rem * BigInt::from(2) >= *scaled.denom() {
        q + 1
    } else {
        q
    };
    let (int_part, frac) = q.div_rem(&BigInt::from(1000));
    let sign = if r.is_negative() && !(&int_part + &frac).is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{int_part}.{frac:0>3}")
}

/// CSV with header `kind,label,start,end,x0,y0,x1,y1`.
pub fn to_csv(segments: &[Segment]) -> String {
    let mut out = String::from("kind,label,start,end,x0,y0,x1,y1\n");
    for s in segments {
        let (a, b) = (planar(&s.start), planar(&s.end));
        out.push_str(&format!(
            "{},{},\"{}\",\"{}\",{},{},{},{}\n",
            s.kind, s.label, s.start, s.end, a.0, a.1, b.0, b.1
        ));
    }
    out
}

/// A standalone SVG drawing of the segments over the outline of Δ_2.
pub fn to_svg(segments: &[Segment]) -> String {
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n",
    );
    let outline: Vec<String> = VERTICES.iter().map(|(x, y)| format!("{x},{y}")).collect();
    out.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"1\"/>\n",
        outline.join(" ")
    ));
    for s in segments {
        let (a, b) = (planar(&s.start), planar(&s.end));
        let colour = if s.kind == "boundary" { "#1f4e9c" } else { "#b3261e" };
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"2\"/>\n",
            decimal(&a.0),
            decimal(&a.1),
            decimal(&b.0),
            decimal(&b.1)
        ));
        let mx = (&a.0 + &b.0) / int(2);
        let my = (&a.1 + &b.1) / int(2);
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{colour}\">{}</text>\n",
            decimal(&mx),
            decimal(&my),
            s.label
        ));
    }
    out.push_str("</svg>\n");
    out
}
