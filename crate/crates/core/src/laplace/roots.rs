//! All complex roots of a real polynomial.
//!
//! Eigenvalues of the balanced companion matrix via Francis double-shift QR.
//! Eigenvalues belonging to an `m`-fold root scatter by roughly `ε^{1/m}`, so
//! candidate clusters are formed at a loose radius, then accepted only when
//! the first `m` Taylor coefficients vanish at the (Newton-polished)
//! centroid. Rejected clusters are re-split at a tighter radius.

use num_complex::Complex;

use super::{AlgebraError, Polynomial};
use crate::real::Real;

/// A root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub value: Complex<T>,
    pub multiplicity: usize,
}

const MAX_QR_ITERATIONS: usize = 60;
const STALL_ITERATIONS: usize = 20;

/// Complex roots of `p` with multiplicities, conjugate-symmetric, sorted by
/// real then imaginary part. A nonzero constant has no roots.
pub fn poly_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Root<T>>, AlgebraError> {
    let degree = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if degree == 0 {
        return Ok(Vec::new());
    }

    let coeffs = p.coeffs();
    let zeros = coeffs.iter().take_while(|c| **c == T::zero()).count();
    let reduced = Polynomial::new(coeffs[zeros..].to_vec());

    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(Root {
            value: Complex::new(T::zero(), T::zero()),
            multiplicity: zeros,
        });
    }
    if reduced.degree().unwrap_or(0) > 0 {
        let eigen = companion_eigenvalues(&reduced)?;
        roots.extend(cluster(&reduced, eigen));
    }
    let mut roots = symmetrize(roots);
    roots.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                a.value
                    .im
                    .partial_cmp(&b.value.im)
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });
    Ok(roots)
}

fn companion_eigenvalues<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>, AlgebraError> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n];
    // 1-based upper Hessenberg companion matrix, first row -c_{n-j}/c_n.
    let mut a = vec![vec![T::zero(); n + 1]; n + 1];
    for j in 1..=n {
        a[1][j] = -c[n - j] / lead;
    }
    for j in 2..=n {
        a[j][j - 1] = T::one();
    }
    balance(&mut a, n);
    hqr(&mut a, n)
}

#[allow(clippy::needless_range_loop)]
fn balance<T: Real>(a: &mut [Vec<T>], n: usize) {
    let radix = T::lit(2.0);
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 1..=n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != T::zero() && r != T::zero() {
                let mut g = r / radix;
                let mut f = T::one();
                let s = c + r;
                while c < g {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while c > g {
                    f /= radix;
                    c /= sqrdx;
                }
                if (c + r) / f < T::lit(0.95) * s {
                    done = false;
                    let g = T::one() / f;
                    for j in 1..=n {
                        a[i][j] *= g;
                    }
                    for row in a.iter_mut().take(n + 1).skip(1) {
                        row[i] *= f;
                    }
                }
            }
        }
    }
}

fn sign<T: Real>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of a 1-based upper Hessenberg matrix (destroyed).
#[allow(clippy::many_single_char_names, clippy::needless_range_loop)]
fn hqr<T: Real>(a: &mut [Vec<T>], n: usize) -> Result<Vec<Complex<T>>, AlgebraError> {
    let zero = T::zero();
    let mut wr = vec![zero; n + 1];
    let mut wi = vec![zero; n + 1];

    let mut anorm = zero;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[i][j].abs();
        }
    }

    // defective eigenvalues stall above roundoff; polishing recovers accuracy
    let relaxed = T::epsilon().powf(T::lit(2.0 / 3.0));
    let mut nn = n as isize;
    let mut t = zero;
    let (mut p, mut q, mut r, mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l >= 2 {
                // neighbouring subdiagonals keep the test meaningful when
                // both diagonal entries are near zero
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if l >= 3 {
                    s += a[l - 1][l - 2].abs();
                }
                if l < nu {
                    s += a[l + 1][l].abs();
                }
                if s == zero {
                    s = anorm;
                }
                let sub = a[l][l - 1].abs();
                if sub + s == s || (its >= STALL_ITERATIONS && sub <= relaxed * s) {
                    a[l][l - 1] = zero;
                    break;
                }
                l -= 1;
            }
            x = a[nu][nu];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = zero;
                nn -= 1;
                break;
            }
            y = a[nu - 1][nu - 1];
            w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                p = T::lit(0.5) * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= zero {
                    z = p + sign(z, p);
                    wr[nu - 1] = x + z;
                    wr[nu] = x + z;
                    if z != zero {
                        wr[nu] = x - w / z;
                    }
                    wi[nu - 1] = zero;
                    wi[nu] = zero;
                } else {
                    wr[nu - 1] = x + p;
                    wr[nu] = x + p;
                    wi[nu - 1] = -z;
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_QR_ITERATIONS {
                return Err(AlgebraError::RootFinding);
            }
            if its == 10 || its == 20 || its == 40 {
                t += x;
                for i in 1..=nu {
                    a[i][i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = T::lit(0.75) * s;
                y = x;
                w = T::lit(-0.4375) * s * s;
            }
            its += 1;
            let mut m = nu - 2;
            loop {
                z = a[m][m];
                r = x - z;
                let s0 = y - z;
                p = (r * s0 - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - r - s0;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nu {
                a[i][i - 2] = zero;
                if i != m + 2 {
                    a[i][i - 3] = zero;
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = zero;
                    if k != nu - 1 {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != zero {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != zero {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        p = a[k][j] + q * a[k + 1][j];
                        if k != nu - 1 {
                            p += r * a[k + 2][j];
                            a[k + 2][j] -= p * z;
                        }
                        a[k + 1][j] -= p * y;
                        a[k][j] -= p * x;
                    }
                    let mmin = nu.min(k + 3);
                    for row in a.iter_mut().take(mmin + 1).skip(l) {
                        p = x * row[k] + y * row[k + 1];
                        if k != nu - 1 {
                            p += z * row[k + 2];
                            row[k + 2] -= p * r;
                        }
                        row[k + 1] -= p * q;
                        row[k] -= p;
                    }
                }
                k += 1;
            }
            if l >= nu - 1 {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| Complex::new(wr[i], wi[i])).collect())
}

/// Single-linkage clusters of `pts` at relative radius `radius`.
fn link<T: Real>(pts: &[Complex<T>], radius: T) -> Vec<Vec<Complex<T>>> {
    let n = pts.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = T::one().max(pts[i].norm()).max(pts[j].norm());
            if (pts[i] - pts[j]).norm() <= radius * scale {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex<T>>)> = Vec::new();
    for (i, &z) in pts.iter().enumerate() {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(z),
            None => groups.push((root, vec![z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Newton iteration on `P^{(m-1)}`, which has a simple root at an `m`-fold
/// root of `P`. Only improving steps are kept.
fn polish<T: Real>(p: &Polynomial<T>, start: Complex<T>, m: usize) -> Complex<T> {
    let mut f = p.clone();
    for _ in 1..m {
        f = f.derivative();
    }
    let df = f.derivative();
    let mut z = start;
    let mut fz = f.eval_complex(z).norm();
    for _ in 0..30 {
        let d = df.eval_complex(z);
        if d.norm() == T::zero() {
            break;
        }
        let next = z - f.eval_complex(z) / d;
        let fnext = f.eval_complex(next).norm();
        if fnext.is_nan() || fnext >= fz {
            break;
        }
        z = next;
        fz = fnext;
    }
    z
}

fn is_multiple_root<T: Real>(p: &Polynomial<T>, z: Complex<T>, m: usize) -> bool {
    let taylor = p.taylor_at(z, m);
    let rho = z.norm();
    taylor
        .iter()
        .enumerate()
        .all(|(j, d)| d.norm() <= T::vanish_tol() * p.taylor_scale(rho, j))
}

fn cluster<T: Real>(p: &Polynomial<T>, eigen: Vec<Complex<T>>) -> Vec<Root<T>> {
    let mut out = Vec::new();
    let mut pending = vec![(eigen, T::lit(1e-2))];
    while let Some((pts, radius)) = pending.pop() {
        for group in link(&pts, radius) {
            let m = group.len();
            let centroid = group
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |a, &b| a + b)
                / T::from_usize_lossy(m);
            let value = polish(p, centroid, m);
            let tight = radius <= T::cluster_tol();
            if m == 1 || tight || is_multiple_root(p, value, m) {
                out.push(Root {
                    value,
                    multiplicity: m,
                });
            } else {
                let next = (radius * T::lit(0.1)).max(T::cluster_tol());
                pending.push((group, next));
            }
        }
    }
    out
}

/// Snaps nearly-real roots onto the axis and averages conjugate partners.
fn symmetrize<T: Real>(roots: Vec<Root<T>>) -> Vec<Root<T>> {
    let is_real = |z: Complex<T>| z.im.abs() <= T::cluster_tol() * T::one().max(z.norm());
    let mut out = Vec::new();
    let mut lower: Vec<Root<T>> = Vec::new();
    for r in roots {
        if is_real(r.value) {
            out.push(Root {
                value: Complex::new(r.value.re, T::zero()),
                ..r
            });
        } else if r.value.im > T::zero() {
            out.push(r);
        } else {
            lower.push(r);
        }
    }
    let upper_count = out.len();
    let mut paired = Vec::new();
    for r in out.iter_mut().take(upper_count) {
        if r.value.im == T::zero() {
            continue;
        }
        let best = lower
            .iter()
            .enumerate()
            .filter(|(_, c)| c.multiplicity == r.multiplicity)
            .min_by(|(_, a), (_, b)| {
                let da = (a.value.conj() - r.value).norm();
                let db = (b.value.conj() - r.value).norm();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i);
        if let Some(i) = best {
            let partner = lower.remove(i);
            r.value = (r.value + partner.value.conj()) * T::lit(0.5);
        }
        paired.push(Root {
            value: r.value.conj(),
            multiplicity: r.multiplicity,
        });
    }
    out.extend(paired);
    out.extend(lower);
    out
}
