use serde::Serialize;

const GRID_STEP: f64 = 1e-3;
const SIMPLEX_TOL: f64 = 1e-10;
const MAX_SIMPLEX_STEPS: usize = 10_000;
const CHECK_DELTA: f64 = 1e-4;

/// Minimizer of the two-variable Cauchy–Schwarz bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult {
    pub u_star: f64,
    pub v_star: f64,
    pub f_min: f64,
    /// `√f_min`, the constant in front of `√x`.
    pub amplitude_bound: f64,
    /// Whether `f(u*±δ, v*±δ) >= f_min` for `δ = 1e-4`.
    pub locally_minimal: bool,
    pub simplex_steps: usize,
}

/// `f(u,v) = (1-u+u²-⅔v+⅔uv-⅔u²v+v²-uv²+u²v²) / ((1-u²)(1-v²))` on `[0,1)²`,
/// `+∞` outside.
///
/// The numerator is evaluated by Horner's rule in `u` with coefficients that
/// are polynomials in `v`. Those coefficients happen to be `±(1-⅔v+v²)`.
pub fn cs_objective(u: f64, v: f64) -> f64 {
    if !(0.0..1.0).contains(&u) || !(0.0..1.0).contains(&v) {
        return f64::INFINITY;
    }
    let c0 = 1.0 + v * (-2.0 / 3.0 + v);
    let c1 = -1.0 + v * (2.0 / 3.0 - v);
    let c2 = 1.0 + v * (-2.0 / 3.0 + v);
    let num = c0 + u * (c1 + u * c2);
    num / ((1.0 - u * u) * (1.0 - v * v))
}

type Point = [f64; 2];

fn eval(p: Point) -> f64 {
    cs_objective(p[0], p[1])
}

/// Nelder–Mead with the standard coefficients, stopped when every vertex is
/// within `SIMPLEX_TOL` of the best one.
fn nelder_mead(start: Point, step: f64) -> (Point, f64, usize) {
    let mut s: [(Point, f64); 3] = [start, [start[0] + step, start[1]], [start[0], start[1] + step]].map(|p| (p, eval(p)));
    let mut steps = 0;
    while steps < MAX_SIMPLEX_STEPS {
        s.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = s[1..]
            .iter()
            .map(|(p, _)| (p[0] - s[0].0[0]).abs().max((p[1] - s[0].0[1]).abs()))
            .fold(0.0, f64::max);
        if spread < SIMPLEX_TOL {
            break;
        }
        steps += 1;
        let c = [(s[0].0[0] + s[1].0[0]) / 2.0, (s[0].0[1] + s[1].0[1]) / 2.0];
        let along = |t: f64| [c[0] + t * (s[2].0[0] - c[0]), c[1] + t * (s[2].0[1] - c[1])];
        let r = along(-1.0);
        let fr = eval(r);
        if fr < s[0].1 {
            let e = along(-2.0);
            let fe = eval(e);
            s[2] = if fe < fr { (e, fe) } else { (r, fr) };
        } else if fr < s[1].1 {
            s[2] = (r, fr);
        } else {
            let k = if fr < s[2].1 { along(-0.5) } else { along(0.5) };
            let fk = eval(k);
            if fk < fr.min(s[2].1) {
                s[2] = (k, fk);
            } else {
                let best = s[0].0;
                for v in &mut s[1..] {
                    let p = [(best[0] + v.0[0]) / 2.0, (best[1] + v.0[1]) / 2.0];
                    *v = (p, eval(p));
                }
            }
        }
    }
    s.sort_by(|a, b| a.1.total_cmp(&b.1));
    (s[0].0, s[0].1, steps)
}

/// Global minimum of [`cs_objective`] over `[0,1)²`: a grid of step `1e-3`
/// followed by simplex refinement from the best grid point.
///
/// The result is deterministic. Numerically `f_min` coincides with `√(2/3)`.
pub fn cs_bound_minimize() -> BoundResult {
    let n = (1.0 / GRID_STEP) as usize;
    let mut best = ([0.0, 0.0], eval([0.0, 0.0]));
    for i in 0..n {
        for j in 0..n {
            let p = [i as f64 * GRID_STEP, j as f64 * GRID_STEP];
            let f = eval(p);
            if f < best.1 {
                best = (p, f);
            }
        }
    }
    let (p, f_min, simplex_steps) = nelder_mead(best.0, GRID_STEP);
    let locally_minimal = [-CHECK_DELTA, CHECK_DELTA]
        .iter()
        .flat_map(|&du| [-CHECK_DELTA, CHECK_DELTA].map(move |dv| (du, dv)))
        .all(|(du, dv)| eval([p[0] + du, p[1] + dv]) >= f_min);
    BoundResult { u_star: p[0], v_star: p[1], f_min, amplitude_bound: f_min.sqrt(), locally_minimal, simplex_steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(u: f64, v: f64) -> f64 {
        let num = 1.0 - u + u * u - 2.0 / 3.0 * v + 2.0 / 3.0 * u * v - 2.0 / 3.0 * u * u * v + v * v - u * v * v
            + u * u * v * v;
        num / ((1.0 - u * u) * (1.0 - v * v))
    }

    #[test]
    fn objective_matches_expanded_form() {
        assert_eq!(cs_objective(0.0, 0.0), 1.0);
        for &(u, v) in &[(0.1, 0.2), (0.5, 0.5), (0.9, 0.05), (0.27, 0.17)] {
            assert!((cs_objective(u, v) - direct(u, v)).abs() < 1e-14);
        }
        assert_eq!(cs_objective(1.0, 0.5), f64::INFINITY);
    }

    #[test]
    fn minimum_value() {
        let r = cs_bound_minimize();
        assert!((r.f_min - 0.8164965809).abs() < 1e-8, "{r:?}");
        assert!((r.amplitude_bound - 0.903).abs() < 1e-3);
        assert!(r.locally_minimal);
        assert!((r.f_min - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        // the minimizer of the separated factors
        assert!((r.u_star - (2.0 - 3f64.sqrt())).abs() < 1e-6);
        assert!((r.v_star - (3.0 - 8f64.sqrt())).abs() < 1e-6);
    }

    #[test]
    fn deterministic() {
        assert_eq!(cs_bound_minimize(), cs_bound_minimize());
    }
}
