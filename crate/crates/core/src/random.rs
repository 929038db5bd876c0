//! Seeded generators for randomized checks.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::{ConnectionChart, MatrixJet};
use crate::jet_algebra::{JetPoint, MultiIndex, TruncatedSeries};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, RationalFunction};
use crate::rational::{frac, Rational};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ num_bound`, `1 ≤ q ≤ den_bound`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    frac(
        rng.gen_range(-num_bound..=num_bound),
        rng.gen_range(1..=den_bound),
    )
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    loop {
        let q = rational(rng, num_bound, den_bound);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Each coefficient is nonzero with probability `density`.
pub fn series<R: Rng + ?Sized>(
    rng: &mut R,
    dims: usize,
    order: u32,
    density: f64,
) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(dims, order);
    for p in MultiIndex::all(dims, order) {
        if rng.gen_bool(density) {
            s.set(p, rational(rng, 5, 4));
        }
    }
    s
}

/// A jet of `n` components based at `basepoint`.
pub fn jet<R: Rng + ?Sized>(
    rng: &mut R,
    basepoint: &[Rational],
    dims: usize,
    order: u32,
) -> JetPoint {
    let comps = basepoint
        .iter()
        .map(|x| {
            let mut s = series(rng, dims, order, 0.7).offset();
            s.set(MultiIndex::zero(dims), x.clone());
            s
        })
        .collect();
    JetPoint::new(comps).expect("components share a shape")
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng, 3, 3)).collect()
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = rational(rng, 4, 3);
        }
    }
    m
}

pub fn invertible_matrix<R: Rng + ?Sized>(rng: &mut R, size: usize) -> Matrix {
    loop {
        let m = matrix(rng, size, size);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Up to `terms` monomials of total degree at most `degree`.
pub fn polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    nvars: usize,
    degree: u32,
    terms: usize,
) -> Polynomial {
    let monomials: Vec<MultiIndex> = MultiIndex::all(nvars, degree);
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let mono = monomials.choose(rng).expect("at least the constant");
        p.add_term(Monomial::from_dense(mono.exps()), rational(rng, 4, 3));
    }
    p
}

/// Square matrix of polynomials in one variable `u` of degree at most `degree`, row-major.
fn polynomial_matrix<R: Rng + ?Sized>(rng: &mut R, m: usize, degree: u32) -> Vec<Polynomial> {
    (0..m * m).map(|_| polynomial(rng, 1, degree, 2)).collect()
}

/// Flat chart with polynomial coefficients of degree at most `degree`.
///
/// For `n = 1` every connection is flat. For `n = 2` the connection is pulled back from one
/// variable along `u = p_1 z_1 + p_2 z_2`, `c_l = a(u) ∂_l u`, and conjugated by a random
/// constant matrix.
pub fn flat_chart<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    degree: u32,
) -> ConnectionChart {
    assert!(
        (1..=2).contains(&n),
        "random flat charts have one or two variables"
    );
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let mut c: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    if n == 1 {
        c.push((0..m * m).map(|_| polynomial(rng, 1, degree, 3)).collect());
    } else {
        let slope: Vec<Rational> = (0..n).map(|_| nonzero_rational(rng, 3, 2)).collect();
        let u = (0..n).fold(Polynomial::constant(rational(rng, 2, 2)), |acc, l| {
            &acc + &Polynomial::var(l).scale(&slope[l])
        });
        let a = polynomial_matrix(rng, m, degree);
        let a_of_u: Vec<Polynomial> = a
            .iter()
            .map(|e| {
                e.substitute(std::slice::from_ref(&u))
                    .expect("one variable")
            })
            .collect();
        let h = invertible_matrix(rng, m);
        let hinv = h.inverse().expect("invertible");
        for sl in &slope {
            let mut cl = vec![Polynomial::zero(); m * m];
            for i in 0..m {
                for j in 0..m {
                    let mut acc = Polynomial::zero();
                    for p in 0..m {
                        for q in 0..m {
                            let k = &h[(i, p)] * &hinv[(q, j)] * sl;
                            if !k.is_zero() {
                                acc = &acc + &a_of_u[p * m + q].scale(&k);
                            }
                        }
                    }
                    cl[i * m + j] = acc;
                }
            }
            c.push(cl);
        }
    }
    let coeffs = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..n)
                        .map(|l| RationalFunction::polynomial(c[l][i * m + j].clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let gram = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    ConnectionChart::new(names, 0, vec![m], coeffs, gram, Matrix::identity(m)).expect("well-formed")
}

/// Standard Hodge shapes used for polarized fixtures: `(weight, dims, Q)`.
pub fn hodge_shapes() -> Vec<(u32, Vec<usize>, Matrix)> {
    vec![
        (1, vec![2, 1], Matrix::from_ints(&[&[0, 1], &[-1, 0]])),
        (
            2,
            vec![3, 2, 1],
            Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
        ),
        (
            1,
            vec![4, 2],
            Matrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]),
        ),
    ]
}

/// `K` with `Kᵀ = -ε K`, `ε = (-1)^weight`: symmetric for odd weight, alternating otherwise.
fn parity_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    odd: bool,
    mut entry: impl FnMut(&mut R) -> Polynomial,
) -> Vec<Polynomial> {
    let mut k = vec![Polynomial::zero(); m * m];
    for i in 0..m {
        for j in i..m {
            if i == j && !odd {
                continue;
            }
            let e = entry(rng);
            k[j * m + i] = if odd { e.clone() } else { -e.clone() };
            k[i * m + j] = e;
        }
    }
    k
}

/// An element of `Aut(Q)(ℚ)`: the Cayley transform `(I - X)^{-1}(I + X)` of a random `X` in
/// the Lie algebra `XᵀQ + QX = 0`.
pub fn automorphism<R: Rng + ?Sized>(rng: &mut R, q: &Matrix) -> Matrix {
    let m = q.rows();
    let odd = q.is_alternating() && m > 0 && !q.is_symmetric();
    let qinv = q.inverse().expect("non-degenerate form");
    loop {
        let k = parity_matrix(rng, m, odd, |r| Polynomial::constant(rational(r, 2, 2)));
        let mut km = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                km[(i, j)] = k[i * m + j].constant_term();
            }
        }
        let x = &qinv * &km;
        let minus = Matrix::identity(m).add(&x.scale(&-Rational::one()));
        if let Some(inv) = minus.inverse() {
            return &inv * &Matrix::identity(m).add(&x);
        }
    }
}

/// A polarized flat chart together with a base point and a matrix in the torsor fibre there.
#[derive(Clone, Debug)]
pub struct PolarizedFixture {
    pub chart: ConnectionChart,
    pub basepoint: Vec<Rational>,
    pub fv_point: Matrix,
}

/// Starts from `c_l = S(u) Q^{-1} ∂_l u` with `S(u)ᵀ = -(-1)^w S(u)`, so the constant Gram
/// matrix `Q` is flat, then gauges by a lower-unitriangular polynomial `h`:
/// `c' = dh h^{-1} + h c h^{-1}`, `Gram' = h Q hᵀ`. The torsor point is `h(s)^{-T} A` with
/// `A ∈ Aut(Q)`.
pub fn polarized_fixture<R: Rng + ?Sized>(rng: &mut R, n: usize, shape: usize) -> PolarizedFixture {
    let (weight, dims, q) = hodge_shapes()[shape % hodge_shapes().len()].clone();
    let m = q.rows();
    let odd = weight % 2 == 1;
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let slope: Vec<Rational> = (0..n).map(|_| nonzero_rational(rng, 2, 2)).collect();
    let u = (0..n).fold(Polynomial::constant(rational(rng, 2, 2)), |acc, l| {
        &acc + &Polynomial::var(l).scale(&slope[l])
    });
    let s_u = parity_matrix(rng, m, odd, |r| {
        polynomial(r, 1, 1, 2)
            .substitute(std::slice::from_ref(&u))
            .expect("one variable")
    });
    let qinv = q.inverse().expect("non-degenerate");
    // h: lower unitriangular with entries of degree at most one
    let mut h = vec![Polynomial::zero(); m * m];
    let mut hinv = vec![Polynomial::zero(); m * m];
    for i in 0..m {
        h[i * m + i] = Polynomial::one();
        for j in 0..i {
            h[i * m + j] = polynomial(rng, n, 1, 2);
        }
    }
    // unitriangular inverse by forward substitution
    for j in 0..m {
        hinv[j * m + j] = Polynomial::one();
        for i in (j + 1)..m {
            let mut acc = Polynomial::zero();
            for k in j..i {
                acc = &acc - &(&h[i * m + k] * &hinv[k * m + j]);
            }
            hinv[i * m + j] = acc;
        }
    }
    let mul = |a: &[Polynomial], b: &[Polynomial]| -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); m * m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = Polynomial::zero();
                for k in 0..m {
                    acc = &acc + &(&a[i * m + k] * &b[k * m + j]);
                }
                out[i * m + j] = acc;
            }
        }
        out
    };
    let qinv_p: Vec<Polynomial> = (0..m * m)
        .map(|k| Polynomial::constant(qinv[(k / m, k % m)].clone()))
        .collect();
    let base = mul(&s_u, &qinv_p);
    let mut per_l = Vec::with_capacity(n);
    for (l, sl) in slope.iter().enumerate() {
        let c0: Vec<Polynomial> = base.iter().map(|e| e.scale(sl)).collect();
        let dh: Vec<Polynomial> = h.iter().map(|e| e.derive(l)).collect();
        let gauge = mul(&dh, &hinv);
        let conj = mul(&mul(&h, &c0), &hinv);
        per_l.push(
            gauge
                .iter()
                .zip(&conj)
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>(),
        );
    }
    let q_p: Vec<Polynomial> = (0..m * m)
        .map(|k| Polynomial::constant(q[(k / m, k % m)].clone()))
        .collect();
    let ht: Vec<Polynomial> = (0..m * m).map(|k| h[(k % m) * m + k / m].clone()).collect();
    let gram = mul(&mul(&h, &q_p), &ht);
    let coeffs = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..n)
                        .map(|l| RationalFunction::polynomial(per_l[l][i * m + j].clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let gram_rf = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| RationalFunction::polynomial(gram[i * m + j].clone()))
                .collect()
        })
        .collect();
    let chart =
        ConnectionChart::new(names, weight, dims, coeffs, gram_rf, q.clone()).expect("well-formed");
    let basepoint = point(rng, n);
    let mut hs = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            hs[(i, j)] = h[i * m + j].eval(&basepoint).expect("polynomial");
        }
    }
    let a = automorphism(rng, &q);
    let fv_point = &hs.transpose().inverse().expect("unitriangular") * &a;
    PolarizedFixture {
        chart,
        basepoint,
        fv_point,
    }
}

/// Block-upper-triangular matrix jet with identity diagonal blocks for the flag type
/// `steps` in `m`-space.
pub fn block_unipotent<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    steps: &[usize],
    dims: usize,
    order: u32,
) -> MatrixJet {
    let mut bounds = steps.to_vec();
    bounds.push(m);
    let block = |k: usize| {
        bounds
            .iter()
            .position(|&e| k < e)
            .expect("inside the last block")
    };
    let mut u = MatrixJet::identity(m, dims, order);
    for i in 0..m {
        for j in 0..m {
            if block(i) < block(j) {
                *u.entry_mut(i, j) = series(rng, dims, order, 0.6);
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::check_fv;

    #[test]
    fn generated_charts_are_flat() {
        let mut rng = seeded(7);
        for k in 0..12 {
            let chart = flat_chart(&mut rng, 1 + k % 2, 1 + k % 3, 2);
            assert!(chart.is_integrable());
        }
    }

    #[test]
    fn polarized_fixtures_are_consistent() {
        let mut rng = seeded(11);
        for k in 0..9 {
            let fx = polarized_fixture(&mut rng, 1 + k % 2, k);
            assert!(fx.chart.is_integrable());
            assert!(fx.chart.gram_is_flat());
            assert!(fx.chart.frame_satisfies_hr1());
            assert!(check_fv(&fx.chart, &fx.basepoint, &fx.fv_point).unwrap());
        }
    }

    #[test]
    fn automorphisms_preserve_the_form() {
        let mut rng = seeded(3);
        for (_, _, q) in hodge_shapes() {
            let a = automorphism(&mut rng, &q);
            assert_eq!(&(&a.transpose() * &q) * &a, q);
        }
    }
}
