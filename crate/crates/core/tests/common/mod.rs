//! Independent oracles for the integration tests. Nothing here calls the
//! library's own quaternion product, polynomial division or rank routines.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rectify_core::{LinearQuaternionMap, Rational, Side, VectorQuadraticMap};

pub type R = Rational;

pub fn r(p: i64, q: i64) -> R {
    R::new(p.into(), q.into())
}

pub fn ri(p: i64) -> R {
    R::from_integer(p.into())
}

/// Hamilton product written out coordinate by coordinate.
pub fn hamilton(a: &[R], b: &[R]) -> [R; 4] {
    let (a0, a1, a2, a3) = (&a[0], &a[1], &a[2], &a[3]);
    let (b0, b1, b2, b3) = (&b[0], &b[1], &b[2], &b[3]);
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

pub fn conj(a: &[R]) -> [R; 4] {
    [a[0].clone(), -&a[1], -&a[2], -&a[3]]
}

pub fn product_on(side: Side, a: &[R], x: &[R]) -> [R; 4] {
    match side {
        Side::Left => hamilton(a, x),
        Side::Right => hamilton(x, a),
    }
}

pub fn inner(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).fold(R::zero(), |s, (x, y)| s + x * y)
}

pub fn unit(n: usize, k: usize) -> Vec<R> {
    (0..n).map(|i| if i == k { R::one() } else { R::zero() }).collect()
}

/// `A(x)` for a map stored with row `k` giving the `k`-th coordinate.
pub fn apply_map(a: &LinearQuaternionMap<R>, x: &[R]) -> [R; 4] {
    std::array::from_fn(|k| inner(&a.matrix().row(k), x))
}

/// Symmetric matrices of a vector quadratic map obtained by polarizing a
/// bilinear map `B`: `M_k[i][j] = (B(e_i,e_j)_k + B(e_j,e_i)_k)/2`.
pub fn polarize(n: usize, bilinear: impl Fn(&[R], &[R]) -> Vec<R>) -> VectorQuadraticMap<R> {
    let half = r(1, 2);
    let mut m = vec![vec![vec![R::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let bij = bilinear(&unit(n, i), &unit(n, j));
            let bji = bilinear(&unit(n, j), &unit(n, i));
            for k in 0..n {
                m[k][i][j] = (&bij[k] + &bji[k]) * &half;
            }
        }
    }
    VectorQuadraticMap::new(m).expect("polarization is symmetric")
}

/// `x ↦ A(x)·x` (left) or `x·A(x)` (right).
pub fn quaternionic_gamma(a: &LinearQuaternionMap<R>, side: Side) -> VectorQuadraticMap<R> {
    polarize(4, |y, z| product_on(side, &apply_map(a, y), z).to_vec())
}

/// `x ↦ b(x,x) + λ(x)x`.
pub fn parallel_gamma(b: &[R], lambda: &[R]) -> VectorQuadraticMap<R> {
    polarize(b.len(), |y, z| {
        let yz = inner(y, z);
        let ly = inner(lambda, y);
        b.iter().zip(z).map(|(bk, zk)| bk * &yz + &ly * zk).collect()
    })
}

/// Left representation `x ↦ Im(b·x̄)` of the bundle through `b/(b,b)`.
pub fn common_point_im_a(b: &[R], side: Side) -> LinearQuaternionMap<R> {
    let cols: [[R; 4]; 4] = std::array::from_fn(|l| {
        let e = conj(&unit(4, l));
        let mut p = match side {
            Side::Left => hamilton(b, &e),
            Side::Right => hamilton(&e, b),
        };
        p[0] = R::zero();
        p
    });
    LinearQuaternionMap::new(rectify_core::Matrix4::from_columns(cols))
}

/// Flattened coefficients `M_k[i][j]`, `i ≤ j`.
pub fn coefficients(g: &VectorQuadraticMap<R>) -> Vec<R> {
    let n = g.dim();
    let mut out = Vec::new();
    for m in g.matrices() {
        for i in 0..n {
            for j in i..n {
                out.push(m[i][j].clone());
            }
        }
    }
    out
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rank(rows: &[Vec<R>]) -> usize {
    let mut m: Vec<Vec<R>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..ncols {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

pub fn to_f64(v: &[R]) -> Vec<f64> {
    use num_traits::ToPrimitive;
    v.iter().map(|x| x.to_f64().expect("finite")).collect()
}

pub fn is_negative(x: &R) -> bool {
    x.is_negative()
}

/// A rational orthogonal matrix: rotation by `(p² − q², 2pq)/(p² + q²)` in
/// two dimensions, `v ↦ u v ū / |u|²` for a quaternion `u` in three.
pub fn rational_rotation(n: usize, params: &[i64]) -> Vec<Vec<R>> {
    match n {
        2 => {
            let (p, q) = (ri(params[0]), ri(params[1]));
            let d = &p * &p + &q * &q;
            let c = (&p * &p - &q * &q) / &d;
            let s = (ri(2) * &p * &q) / &d;
            vec![vec![c.clone(), -s.clone()], vec![s, c]]
        }
        3 => {
            let u: Vec<R> = params[..4].iter().map(|&v| ri(v)).collect();
            let nn = inner(&u, &u);
            let cols: Vec<[R; 4]> = (1..4)
                .map(|k| hamilton(&hamilton(&u, &unit(4, k)), &conj(&u)))
                .collect();
            (0..3)
                .map(|i| (0..3).map(|j| &cols[j][i + 1] / &nn).collect())
                .collect()
        }
        _ => panic!("rotations only in dimension 2 or 3"),
    }
}

pub fn mat_vec(m: &[Vec<R>], v: &[R]) -> Vec<R> {
    m.iter().map(|row| inner(row, v)).collect()
}

pub fn transpose(m: &[Vec<R>]) -> Vec<Vec<R>> {
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// `x ↦ Q Γ(Qᵀ x)` for orthogonal `Q`.
pub fn conjugate_by(g: &VectorQuadraticMap<R>, q: &[Vec<R>]) -> VectorQuadraticMap<R> {
    let qt = transpose(q);
    polarize(g.dim(), |y, z| {
        let (y, z) = (mat_vec(&qt, y), mat_vec(&qt, z));
        let m = g.matrices();
        let out: Vec<R> = m
            .iter()
            .map(|mk| {
                let my: Vec<R> = mk.iter().map(|row| inner(row, &z)).collect();
                inner(&y, &my)
            })
            .collect();
        mat_vec(q, &out)
    })
}
