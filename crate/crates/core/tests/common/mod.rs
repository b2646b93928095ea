#![allow(dead_code)]

use kundt_core::catalog::{get, Fixture, GeometricFixture, ROSTER};
use kundt_core::geometry::Metric;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn catalog_geometric() -> Vec<(&'static str, GeometricFixture)> {
    ROSTER
        .iter()
        .filter_map(|info| match get(info.name, &[]).unwrap().fixture {
            Fixture::Geometric(f) => Some((info.name, f)),
            Fixture::Algebraic(_) => None,
        })
        .collect()
}

/// Points drawn uniformly from the chart's sampling box.
pub fn random_points(g: &Metric, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dom = g.chart().domain();
    (0..n)
        .map(|_| {
            g.chart()
                .coord_symbols()
                .iter()
                .map(|s| {
                    let (lo, hi) = dom.range(s).unwrap();
                    rng.gen_range(lo..hi)
                })
                .collect()
        })
        .collect()
}

fn invert(a: &[f64], n: usize) -> Vec<f64> {
    let mut m: Vec<f64> = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        m.extend_from_slice(&a[i * n..(i + 1) * n]);
        m.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
    }
    let w = 2 * n;
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x * w + c].abs().total_cmp(&m[y * w + c].abs())).unwrap();
        for k in 0..w {
            m.swap(c * w + k, p * w + k);
        }
        let piv = m[c * w + c];
        for k in 0..w {
            m[c * w + k] /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = m[r * w + c];
                for k in 0..w {
                    m[r * w + k] -= f * m[c * w + k];
                }
            }
        }
    }
    (0..n).flat_map(|i| m[i * w + n..(i + 1) * w].to_vec()).collect()
}

/// `Γ^k_ij` from central differences of `g` (step `h`), index `(k*d + i)*d + j`.
pub fn fd_christoffel(g: &Metric, x: &[f64], h: f64) -> Vec<f64> {
    let d = x.len();
    let gx = g.eval(x).unwrap();
    let gi = invert(&gx, d);
    let dg: Vec<Vec<f64>> = (0..d)
        .map(|l| {
            let (mut xp, mut xm) = (x.to_vec(), x.to_vec());
            xp[l] += h;
            xm[l] -= h;
            let (gp, gm) = (g.eval(&xp).unwrap(), g.eval(&xm).unwrap());
            gp.iter().zip(&gm).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        })
        .collect();
    let mut out = vec![0.0; d * d * d];
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut s = 0.0;
                for l in 0..d {
                    s += gi[k * d + l] * (dg[i][l * d + j] + dg[j][l * d + i] - dg[l][i * d + j]);
                }
                out[(k * d + i) * d + j] = 0.5 * s;
            }
        }
    }
    out
}
