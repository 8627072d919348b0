//! Exact rational character tables by class-algebra eigenvector splitting,
//! plus fake-degree b-invariants, induction and j-induction.
//!
//! All groups handled here have rational character tables (they are Weyl
//! groups of rank <= 4), so every class-algebra eigenvalue is a rational
//! algebraic integer, hence an integer; the splitting scans the finite
//! range of possible integer eigenvalues exactly.


use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::group::CoxeterGroup;
use crate::symring::poly::int;
use crate::symring::{RatFunc, RationalPoly};
use crate::Error;

/// A character table: rows are irreducibles in canonical order (by degree,
/// then lexicographically on class values), columns follow the group's
/// canonical class order.
#[derive(Clone, Debug)]
pub struct CharTable {
    pub values: Vec<Vec<BigRational>>,
    pub degrees: Vec<u64>,
    /// Fake-degree b-invariants, one per irreducible.
    pub b_invariants: Vec<u32>,
}

impl CharTable {
    pub fn row_count(&self) -> usize {
        self.values.len()
    }
}

pub fn character_table(g: &CoxeterGroup) -> Result<CharTable, Error> {
    let k = g.class_count();
    let sizes: Vec<usize> = g.classes.iter().map(|c| c.size()).collect();

    // Class multiplication coefficients a[i][j][k]: C_i C_j = sum_k a C_k.
    let mut a = vec![vec![vec![0i64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut counts = vec![0i64; k];
            for &x in &g.classes[i].members {
                for &y in &g.classes[j].members {
                    counts[g.class_of[g.mul(x, y)]] += 1;
                }
            }
            for (kk, &c) in counts.iter().enumerate() {
                debug_assert_eq!(c % sizes[kk] as i64, 0);
                a[i][j][kk] = c / sizes[kk] as i64;
            }
        }
    }

    // Split Q^k into common eigenlines of the multiplication operators
    // M_i[k'][j] = a[i][j][k'].
    let mut subspaces: Vec<Vec<Vec<BigRational>>> = vec![identity_basis(k)];
    for i in 0..k {
        let mi: Vec<Vec<BigRational>> = (0..k)
            .map(|r| (0..k).map(|c| int(a[i][c][r])).collect())
            .collect();
        let mut next = Vec::new();
        for basis in subspaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_subspace(&mi, basis, sizes[i] as i64)?);
        }
        subspaces = next;
        if subspaces.iter().all(|b| b.len() == 1) {
            break;
        }
    }
    if subspaces.len() != k {
        return Err(Error::Coxeter(
            "class algebra did not split over Q; non-rational character table".into(),
        ));
    }

    // Extract eigenvalue vectors omega, then characters.
    let order = int(g.order() as i64);
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    for basis in &subspaces {
        let v = &basis[0];
        let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
        let mut omega = Vec::with_capacity(k);
        for i in 0..k {
            // (M_i v)[pivot] / v[pivot]
            let mut acc = BigRational::zero();
            for j in 0..k {
                if !v[j].is_zero() {
                    acc += int(a[i][j][pivot]) * &v[j];
                }
            }
            omega.push(acc / &v[pivot]);
        }
        // chi(1)^2 = |G| / sum_i omega_i^2 / |C_i|  (all classes are real here).
        let mut s = BigRational::zero();
        for i in 0..k {
            s += &omega[i] * &omega[i] / int(sizes[i] as i64);
        }
        let deg_sq = &order / s;
        let deg = rational_sqrt(&deg_sq).ok_or_else(|| {
            Error::Coxeter("character degree is not a perfect square root".into())
        })?;
        let row: Vec<BigRational> = (0..k)
            .map(|i| &omega[i] * &deg / int(sizes[i] as i64))
            .collect();
        rows.push(row);
    }

    rows.sort_by(|r1, r2| r1[0].cmp(&r2[0]).then_with(|| lex_cmp(r1, r2)));
    let degrees: Vec<u64> = rows
        .iter()
        .map(|r| r[0].to_integer().try_into().unwrap())
        .collect();

    // Orthogonality, both relations, checked exactly.
    for (i1, r1) in rows.iter().enumerate() {
        for (i2, r2) in rows.iter().enumerate() {
            let mut s = BigRational::zero();
            for c in 0..k {
                s += int(sizes[c] as i64) * &r1[c] * &r2[c];
            }
            let expect = if i1 == i2 { order.clone() } else { BigRational::zero() };
            if s != expect {
                return Err(Error::Coxeter("character table fails row orthogonality".into()));
            }
        }
    }

    let b_invariants = rows
        .iter()
        .map(|r| b_invariant(g, r))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(CharTable { values: rows, degrees, b_invariants })
}

fn identity_basis(k: usize) -> Vec<Vec<BigRational>> {
    (0..k)
        .map(|i| {
            let mut v = vec![BigRational::zero(); k];
            v[i] = BigRational::one();
            v
        })
        .collect()
}

fn lex_cmp(a: &[BigRational], b: &[BigRational]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Split a subspace into eigen-subspaces of `m` restricted to it. Integer
/// eigenvalues are bounded by the class size.
fn split_subspace(
    m: &[Vec<BigRational>],
    basis: Vec<Vec<BigRational>>,
    bound: i64,
) -> Result<Vec<Vec<Vec<BigRational>>>, Error> {
    let k = m.len();
    let d = basis.len();
    // Restriction r of m to the subspace: m * b_j = sum_i r[i][j] b_i.
    let images: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|r| {
                    let mut acc = BigRational::zero();
                    for c in 0..k {
                        if !b[c].is_zero() && !m[r][c].is_zero() {
                            acc += &m[r][c] * &b[c];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut r = vec![vec![BigRational::zero(); d]; d];
    for (j, im) in images.iter().enumerate() {
        let coords = express_in_basis(&basis, im).ok_or_else(|| {
            Error::Coxeter("class-algebra operator does not preserve subspace".into())
        })?;
        for i in 0..d {
            r[i][j] = coords[i].clone();
        }
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in -bound..=bound {
        let ker = nullspace_of_shifted(&r, lambda);
        if ker.is_empty() {
            continue;
        }
        total += ker.len();
        // Lift kernel coordinate vectors back to ambient vectors.
        let lifted: Vec<Vec<BigRational>> = ker
            .iter()
            .map(|coeffs| {
                let mut v = vec![BigRational::zero(); k];
                for (i, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        for j in 0..k {
                            v[j] += c * &basis[i][j];
                        }
                    }
                }
                v
            })
            .collect();
        out.push(lifted);
    }
    if total != d {
        return Err(Error::Coxeter(
            "eigenvalues outside the integer range; non-rational character table".into(),
        ));
    }
    Ok(out)
}

fn express_in_basis(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    // Solve sum_i x_i basis[i] = v by elimination on the transpose system.
    let d = basis.len();
    let k = v.len();
    let mut aug: Vec<Vec<BigRational>> = (0..k)
        .map(|row| {
            let mut r: Vec<BigRational> = (0..d).map(|i| basis[i][row].clone()).collect();
            r.push(v[row].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..k).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let pv = aug[rank][col].clone();
        for c in col..=d {
            aug[rank][c] = &aug[rank][c] / &pv;
        }
        for r in 0..k {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=d {
                    let s = &aug[rank][c] * &f;
                    aug[r][c] = &aug[r][c] - s;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    // Consistency: rows beyond rank must have zero rhs.
    for row in aug.iter().skip(rank) {
        if !row[d].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); d];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = aug[r][d].clone();
    }
    Some(x)
}

fn nullspace_of_shifted(r: &[Vec<BigRational>], lambda: i64) -> Vec<Vec<BigRational>> {
    let d = r.len();
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut v = r[i][j].clone();
                    if i == j {
                        v -= int(lambda);
                    }
                    v
                })
                .collect()
        })
        .collect();
    // Row-reduce and read off the kernel.
    let mut pivots: Vec<Option<usize>> = vec![None; d];
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..d).find(|&row| !m[row][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for c in 0..d {
            m[rank][c] = &m[rank][c] / &pv;
        }
        for row in 0..d {
            if row != rank && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for c in 0..d {
                    let s = &m[rank][c] * &f;
                    m[row][c] = &m[row][c] - s;
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free in 0..d {
        if pivots[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); d];
        v[free] = BigRational::one();
        for col in 0..d {
            if let Some(prow) = pivots[col] {
                v[col] = -m[prow][free].clone();
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Fake-degree b-invariant: the q-adic valuation of
/// sum_w chi(w) / det(1 - q w), which equals the valuation of the fake
/// degree polynomial.
fn b_invariant(g: &CoxeterGroup, chi: &[BigRational]) -> Result<u32, Error> {
    let mut s = RatFunc::zero();
    for (cid, class) in g.classes.iter().enumerate() {
        if chi[cid].is_zero() {
            continue;
        }
        // det(1 - q M) = (-q)^n det(1/q * something); compute directly.
        let n = g.rank;
        let m = g.matrix(class.rep);
        let entries: Vec<RationalPoly> = (0..n * n)
            .map(|ix| {
                let (i, j) = (ix / n, ix % n);
                let mut p = RationalPoly::monomial(1, int(-m[i * n + j]));
                if i == j {
                    p.add_term(0, int(1));
                }
                p
            })
            .collect();
        let det = super::group::poly_det(n, &entries);
        let term = RatFunc::new(
            RationalPoly::constant(&chi[cid] * int(class.size() as i64)),
            det,
        );
        s = s.add(&term);
    }
    if s.is_zero() {
        return Err(Error::Coxeter("zero graded multiplicity series".into()));
    }
    debug_assert_eq!(s.den().valuation(), Some(0));
    Ok(s.num().valuation().unwrap_or(0))
}

/// Inner product of two class functions given as value rows.
pub fn inner_product(g: &CoxeterGroup, a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (cid, class) in g.classes.iter().enumerate() {
        s += int(class.size() as i64) * &a[cid] * &b[cid];
    }
    s / int(g.order() as i64)
}

/// Values of Ind_H^G(psi) on the classes of G, for H given by its element
/// set inside G and psi by its values on H-classes (via `h_class_of`).
pub fn induced_character(
    g: &CoxeterGroup,
    h_elements: &[usize],
    h_class_of_elt: impl Fn(usize) -> usize,
    psi: &[BigRational],
) -> Vec<BigRational> {
    let h_order = int(h_elements.len() as i64);
    let mut sums = vec![BigRational::zero(); g.class_count()];
    for &h in h_elements {
        sums[g.class_of[h]] += &psi[h_class_of_elt(h)];
    }
    (0..g.class_count())
        .map(|c| {
            let class_size = int(g.classes[c].size() as i64);
            &sums[c] * int(g.order() as i64) / (&h_order * class_size)
        })
        .collect()
}

/// j-induction: the unique constituent of Ind_H^G(psi) of minimal
/// b-invariant, required to occur with multiplicity one.
pub fn j_induction(
    g: &CoxeterGroup,
    table: &CharTable,
    induced: &[BigRational],
) -> Result<usize, Error> {
    let mut best: Option<(u32, usize)> = None;
    let mut tie = false;
    for (row, chi) in table.values.iter().enumerate() {
        let mult = inner_product(g, induced, chi);
        if mult.is_zero() {
            continue;
        }
        let b = table.b_invariants[row];
        match best {
            None => {
                best = Some((b, row));
                tie = false;
            }
            Some((bb, _)) if b < bb => {
                best = Some((b, row));
                tie = false;
            }
            Some((bb, _)) if b == bb => tie = true,
            _ => {}
        }
    }
    let (b, row) = best.ok_or_else(|| Error::Coxeter("empty induced character".into()))?;
    if tie {
        return Err(Error::Coxeter(format!(
            "j-induction ambiguous: two constituents share minimal b = {b}"
        )));
    }
    let mult = inner_product(g, induced, &table.values[row]);
    if !mult.is_one() {
        return Err(Error::Coxeter(
            "j-induction undefined: minimal-b constituent has multiplicity > 1".into(),
        ));
    }
    Ok(row)
}
