//! Exact solutions of `Mᵀ G M = Q` over ℚ.

use num_traits::{One, Signed, Zero};

use crate::error::{JetError, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

/// Entry bound for the integer vector search in the symmetric case.
pub const SEARCH_BOUND: i64 = 6;

/// A rational `M` with `Mᵀ G M = Q`, chosen deterministically, or `NoRationalFvPoint`.
///
/// `G = Q` gives the identity. Alternating forms are always congruent: for `m = 2` the closed
/// form `diag(q/g, 1)` is used, otherwise symplectic bases of both sides. Symmetric forms are
/// first checked for certified obstructions (determinant ratio not a square, different
/// signature); then a vector `w` with `G(w, w) = q_1` is sought among integer vectors with
/// entries in `[-B, B]`, split off, and the search repeats on the orthogonal complement.
pub fn solve_congruence(g: &Matrix, q: &Matrix) -> Result<Matrix> {
    let m = q.rows();
    if g.rows() != m || !g.is_square() || !q.is_square() {
        return Err(JetError::InvalidHodgeData(
            "congruence of different sizes".into(),
        ));
    }
    if g == q {
        return Ok(Matrix::identity(m));
    }
    if g.det().is_zero() || q.det().is_zero() {
        return Err(JetError::NoRationalFvPoint("degenerate form".into()));
    }
    if q.is_alternating() {
        if !g.is_alternating() {
            return Err(JetError::NoRationalFvPoint(
                "gram matrix is not alternating".into(),
            ));
        }
        if m == 2 {
            let mut out = Matrix::identity(2);
            out[(0, 0)] = &q[(0, 1)] / &g[(0, 1)];
            return Ok(out);
        }
        let pg = symplectic_basis(g);
        let pq = symplectic_basis(q);
        return Ok(&pg * &pq.inverse().expect("basis change is invertible"));
    }
    if !q.is_symmetric() || !g.is_symmetric() {
        return Err(JetError::NoRationalFvPoint(
            "forms of different parity".into(),
        ));
    }
    let ratio = g.det() / q.det();
    if !rational::is_square(&ratio) {
        return Err(JetError::NoRationalFvPoint(format!(
            "determinant ratio {} is not a square",
            rational::format(&ratio)
        )));
    }
    let (pq, qd) = diagonalize(q);
    let (_, gd) = diagonalize(g);
    let positives = |d: &[Rational]| d.iter().filter(|x| x.is_positive()).count();
    if positives(&qd) != positives(&gd) {
        return Err(JetError::NoRationalFvPoint("signatures differ".into()));
    }
    let pg = split_diagonal(g, &qd)?;
    Ok(&pg * &pq.inverse().expect("basis change is invertible"))
}

/// `P` with `Pᵀ G P = diag(targets)`, built by repeatedly representing the next target.
fn split_diagonal(g: &Matrix, targets: &[Rational]) -> Result<Matrix> {
    let m = g.rows();
    // columns of `basis` span the current complement in the original coordinates
    let mut basis = Matrix::identity(m);
    let mut chosen: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for target in targets {
        let restricted = &(&basis.transpose() * g) * &basis;
        let k = restricted.rows();
        let w = find_representation(&restricted, target).ok_or_else(|| {
            JetError::NoRationalFvPoint(format!(
                "no vector with entries in [-{SEARCH_BOUND}, {SEARCH_BOUND}] represents {}",
                rational::format(target)
            ))
        })?;
        let v: Vec<Rational> = (0..m)
            .map(|i| (0..k).map(|j| &basis[(i, j)] * &w[j]).sum())
            .collect();
        // complement of v inside span(basis): kernel of vᵀ G restricted to basis coordinates
        let gv: Vec<Rational> = (0..k)
            .map(|j| (0..m).map(|i| &basis[(i, j)] * dot_col(g, i, &v)).sum())
            .collect();
        let ker = Matrix::from_rows(vec![gv]).expect("nonempty row").kernel();
        let mut next = Matrix::zeros(m, ker.len());
        for (c, kv) in ker.iter().enumerate() {
            for i in 0..m {
                next[(i, c)] = (0..k).map(|j| &basis[(i, j)] * &kv[j]).sum();
            }
        }
        chosen.push(v);
        basis = next;
    }
    let mut p = Matrix::zeros(m, m);
    for (c, v) in chosen.iter().enumerate() {
        for i in 0..m {
            p[(i, c)] = v[i].clone();
        }
    }
    Ok(p)
}

/// `(G v)_i`.
fn dot_col(g: &Matrix, i: usize, v: &[Rational]) -> Rational {
    (0..v.len()).map(|j| &g[(i, j)] * &v[j]).sum()
}

/// Rational `w` with `wᵀ G w = target`, from the first integer vector (by max-norm, then
/// lexicographic) whose value is `target` times a nonzero square.
fn find_representation(g: &Matrix, target: &Rational) -> Option<Vec<Rational>> {
    let k = g.rows();
    for bound in 1..=SEARCH_BOUND {
        for w in vectors_with_max_norm(k, bound) {
            let w: Vec<Rational> = w.into_iter().map(rational::int).collect();
            let val: Rational = (0..k).map(|i| &w[i] * dot_col(g, i, &w)).sum();
            if val.is_zero() {
                continue;
            }
            if let Some(c) = rational::sqrt_exact(&(&val / target)) {
                return Some(w.iter().map(|x| x / &c).collect());
            }
        }
    }
    None
}

fn vectors_with_max_norm(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-bound; k];
    loop {
        if cur.iter().any(|x| x.abs() == bound) {
            out.push(cur.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -bound;
        }
    }
}

/// `P` invertible with `Pᵀ S P` diagonal, for symmetric `S`; returns `(P, diagonal)`.
pub fn diagonalize(s: &Matrix) -> (Matrix, Vec<Rational>) {
    let m = s.rows();
    let mut a = s.clone();
    let mut p = Matrix::identity(m);
    for i in 0..m {
        if a[(i, i)].is_zero() {
            // borrow a nonzero diagonal from a later index, or create one by adding a column
            if let Some(j) = ((i + 1)..m).find(|&j| !a[(j, j)].is_zero()) {
                swap_congruence(&mut a, &mut p, i, j);
            } else if let Some(j) = ((i + 1)..m).find(|&j| !a[(i, j)].is_zero()) {
                add_congruence(&mut a, &mut p, i, j, &Rational::one());
            }
        }
        if a[(i, i)].is_zero() {
            continue;
        }
        for j in (i + 1)..m {
            if !a[(i, j)].is_zero() {
                let f = -(&a[(i, j)] / &a[(i, i)]);
                add_congruence(&mut a, &mut p, j, i, &f);
            }
        }
    }
    let diag = (0..m).map(|i| a[(i, i)].clone()).collect();
    (p, diag)
}

/// Column and row `target += f · source`.
fn add_congruence(a: &mut Matrix, p: &mut Matrix, target: usize, source: usize, f: &Rational) {
    let m = a.rows();
    for i in 0..m {
        let v = &a[(i, source)] * f;
        a[(i, target)] += v;
    }
    for j in 0..m {
        let v = &a[(source, j)] * f;
        a[(target, j)] += v;
    }
    for i in 0..m {
        let v = &p[(i, source)] * f;
        p[(i, target)] += v;
    }
}

fn swap_congruence(a: &mut Matrix, p: &mut Matrix, i: usize, j: usize) {
    let m = a.rows();
    for k in 0..m {
        let t = a[(k, i)].clone();
        a[(k, i)] = a[(k, j)].clone();
        a[(k, j)] = t;
    }
    for k in 0..m {
        let t = a[(i, k)].clone();
        a[(i, k)] = a[(j, k)].clone();
        a[(j, k)] = t;
        let t = p[(k, i)].clone();
        p[(k, i)] = p[(k, j)].clone();
        p[(k, j)] = t;
    }
}

/// `P` with `Pᵀ A P` in standard form `diag(J, …, J)`, `J = [[0, 1], [-1, 0]]`, for
/// non-degenerate alternating `A`.
pub fn symplectic_basis(a: &Matrix) -> Matrix {
    let m = a.rows();
    let form = |x: &[Rational], y: &[Rational]| -> Rational {
        (0..m).map(|i| &x[i] * dot_col(a, i, y)).sum()
    };
    let mut remaining: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(m);
    while let Some(e) = remaining.first().cloned() {
        let Some(k) = remaining.iter().position(|f| !form(&e, f).is_zero()) else {
            break;
        };
        let f0 = remaining[k].clone();
        let scale = form(&e, &f0).recip();
        let f: Vec<Rational> = f0.iter().map(|x| x * &scale).collect();
        remaining.remove(k);
        remaining.remove(0);
        // project the rest off span(e, f): x - B(x, f) e + B(x, e) f
        for x in remaining.iter_mut() {
            let xf = form(x, &f);
            let xe = form(x, &e);
            for i in 0..m {
                x[i] = &x[i] - &(&xf * &e[i]) + &xe * &f[i];
            }
        }
        out.push(e);
        out.push(f);
    }
    let mut p = Matrix::zeros(m, m);
    for (c, v) in out.iter().enumerate() {
        for i in 0..m {
            p[(i, c)] = v[i].clone();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn congruent(m: &Matrix, g: &Matrix, q: &Matrix) -> bool {
        &(&m.transpose() * g) * m == *q
    }

    #[test]
    fn scaled_symplectic_pair() {
        let q = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let g = q.scale(&frac(3, 7));
        let m = solve_congruence(&g, &q).unwrap();
        assert_eq!(m[(0, 0)], frac(7, 3));
        assert!(congruent(&m, &g, &q));
    }

    #[test]
    fn higher_rank_alternating() {
        let q = Matrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        let g = Matrix::from_ints(&[
            &[0, 2, 1, 0],
            &[-2, 0, 3, 1],
            &[-1, -3, 0, 5],
            &[0, -1, -5, 0],
        ]);
        let m = solve_congruence(&g, &q).unwrap();
        assert!(congruent(&m, &g, &q));
    }

    #[test]
    fn symmetric_cases() {
        let q = Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        let g = Matrix::from_ints(&[&[2, 1, 0], &[1, -1, 0], &[0, 0, -3]]);
        // det ratio 9: congruent if signatures agree
        let m = solve_congruence(&g, &q).unwrap();
        assert!(congruent(&m, &g, &q));

        let id = Matrix::identity(2);
        let g = Matrix::from_ints(&[&[1, 0], &[0, 3]]);
        assert!(matches!(
            solve_congruence(&g, &id),
            Err(JetError::NoRationalFvPoint(_))
        ));
        // x^2 + y^2 represents 2: <2, 2> ≅ <1, 1>
        let g = Matrix::from_ints(&[&[2, 0], &[0, 2]]);
        assert!(congruent(&solve_congruence(&g, &id).unwrap(), &g, &id));
        // signature obstruction with square determinant ratio
        let g = Matrix::from_ints(&[&[-1, 0], &[0, -1]]);
        assert!(solve_congruence(&g, &id).is_err());
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let h = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let (p, d) = diagonalize(&h);
        assert!(d.iter().all(|x| !x.is_zero()));
        let mut diag = Matrix::zeros(2, 2);
        diag[(0, 0)] = d[0].clone();
        diag[(1, 1)] = d[1].clone();
        assert_eq!(&(&p.transpose() * &h) * &p, diag);
    }
}
