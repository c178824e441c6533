//! Planar quickhull.

use super::hull::Failure;

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)
}

/// Counter-clockwise hull vertex indices. Points within `eps` of an edge are
/// not reported as vertices.
pub(super) fn hull2(
    pts: &[[f64; 2]],
    eps: f64,
    degenerate_tol: f64,
) -> Result<Vec<usize>, Failure> {
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in pts.iter().enumerate() {
        let (l, h) = (pts[lo], pts[hi]);
        if p[0] < l[0] || (p[0] == l[0] && p[1] < l[1]) {
            lo = i;
        }
        if p[0] > h[0] || (p[0] == h[0] && p[1] > h[1]) {
            hi = i;
        }
    }
    let base = dist2(pts[lo], pts[hi]).sqrt();
    if base <= degenerate_tol {
        return Err(Failure::Degenerate("all points coincide".into()));
    }

    let mut below = Vec::new();
    let mut above = Vec::new();
    let mut widest: f64 = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        let d = cross(pts[lo], pts[hi], p) / base;
        widest = widest.max(d.abs());
        if d < -eps {
            below.push(i);
        } else if d > eps {
            above.push(i);
        }
    }
    if widest <= degenerate_tol {
        return Err(Failure::Degenerate("all points are collinear".into()));
    }

    let mut out = vec![lo];
    expand(pts, lo, hi, below, eps, &mut out);
    out.push(hi);
    expand(pts, hi, lo, above, eps, &mut out);
    Ok(out)
}

/// Appends the hull chain strictly between `a` and `b`, where `candidates`
/// all lie to the right of the directed line `a -> b`.
fn expand(
    pts: &[[f64; 2]],
    a: usize,
    b: usize,
    candidates: Vec<usize>,
    eps: f64,
    out: &mut Vec<usize>,
) {
    if candidates.is_empty() {
        return;
    }
    let (pa, pb) = (pts[a], pts[b]);
    let len = dist2(pa, pb).sqrt();
    let mut far = candidates[0];
    let mut far_d = f64::NEG_INFINITY;
    for &i in &candidates {
        let d = -cross(pa, pb, pts[i]) / len;
        if d > far_d {
            far_d = d;
            far = i;
        }
    }
    let pf = pts[far];
    let la = dist2(pa, pf).sqrt();
    let lb = dist2(pf, pb).sqrt();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in &candidates {
        if i == far {
            continue;
        }
        let p = pts[i];
        if -cross(pa, pf, p) / la > eps {
            left.push(i);
        } else if -cross(pf, pb, p) / lb > eps {
            right.push(i);
        }
    }
    expand(pts, a, far, left, eps, out);
    out.push(far);
    expand(pts, far, b, right, eps, out);
}
