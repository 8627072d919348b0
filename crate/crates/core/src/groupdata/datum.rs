//! Root-datum bookkeeping for simply connected D4 and its Levi subgroups:
//! order polynomials, twisted central-torus orders, and the three central
//! involutions named by the outer node pair whose coroots produce them.
//!
//! Nodes use the labeling with node 3 central (0-based index 2); the Dynkin
//! diagram automorphism group permutes the outer nodes {1, 2, 4}.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::coxeter::{coxeter_matrix_d4, CoxeterGroup, ElemId};
use crate::symring::poly::int;
use crate::symring::RationalPoly;
use crate::Error;

/// Names of the order-2 central elements of Spin8: z_{jk} is the product of
/// the coroot one-parameter subgroups at -1 over the outer pair {j,k}
/// (1-based paper labels). The Levi block on nodes {j,k} has central
/// character trivial exactly on z_{jk}.
pub const CENTER_NAMES: [&str; 3] = ["z12", "z24", "z14"];

/// The outer-node pairs (0-based) defining z12, z24, z14 in order.
pub const CENTER_PAIRS: [[usize; 2]; 3] = [[0, 1], [1, 3], [0, 3]];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Twist {
    Split,
    Twisted,
}

impl Twist {
    pub fn name(self) -> &'static str {
        match self {
            Twist::Split => "split",
            Twist::Twisted => "twisted",
        }
    }
}

/// The ambient group: simply connected D4 with its Weyl group and order data.
pub struct GroupDatum {
    pub weyl: Arc<CoxeterGroup>,
    pub order_poly: RationalPoly,
}

pub fn spin8_datum() -> Result<GroupDatum, Error> {
    let weyl = Arc::new(CoxeterGroup::build(coxeter_matrix_d4())?);
    // |Spin8(q)| = q^12 (q^2-1)(q^4-1)^2(q^6-1).
    let f = |k: u32| {
        let mut p = RationalPoly::monomial(k, int(1));
        p.add_term(0, int(-1));
        p
    };
    let order_poly = RationalPoly::monomial(12, int(1))
        .mul(&f(2))
        .mul(&f(4))
        .mul(&f(4))
        .mul(&f(6));
    Ok(GroupDatum { weyl, order_poly })
}

/// A Levi subgroup of Spin8 given by a node subset and a twist (an F-class
/// of N_W(W_I)/W_I; only the two classes arising for {1,2,4} are needed).
pub struct Levi {
    pub nodes: Vec<usize>,
    pub twist: Twist,
    /// |Z0(L_w)^F| as a polynomial in q.
    pub z0_order: RationalPoly,
    /// |L_w(q)|.
    pub order_poly: RationalPoly,
    /// Dimension of the unipotent radical of a parabolic with this Levi.
    pub dim_radical: u32,
}

/// Construct the Levi on `nodes` (0-based) with the given twist. The twist
/// representative in W is the longest element of W (which is -1 on the
/// lattice and normalizes every standard parabolic).
pub fn levi(datum: &GroupDatum, nodes: &[usize], twist: Twist) -> Result<Levi, Error> {
    let w = &datum.weyl;
    for &n in nodes {
        if n >= w.rank {
            return Err(Error::Data(format!("invalid node {} for rank {}", n + 1, w.rank)));
        }
    }
    let twist_elem = match twist {
        Twist::Split => w.identity(),
        Twist::Twisted => w.longest_element(&[0, 1, 2, 3]),
    };
    let z0_order = sublattice_char_poly(w, twist_elem, nodes)?;

    let levi_positive_roots = nodes_root_count(w, nodes);
    let dim_radical = (w.positive_roots.len() - levi_positive_roots) as u32;

    // |L_w(q)|: q^(#pos roots of L) * |L_der^F| corrections * |central torus^F|.
    // For the shipped cases the derived group is a product of SL2's, so the
    // order is q^k (q^2-1)^k * z0_order-like factors; computed here from the
    // parabolic's Poincare polynomial for split twists, and from the product
    // structure for the twisted A1+A1+A1 Levi.
    let order_poly = levi_order_poly(w, nodes, twist, &z0_order)?;

    Ok(Levi {
        nodes: nodes.to_vec(),
        twist,
        z0_order,
        order_poly,
        dim_radical,
    })
}

fn nodes_root_count(w: &CoxeterGroup, nodes: &[usize]) -> usize {
    w.positive_roots
        .iter()
        .filter(|r| r.iter().enumerate().all(|(i, &c)| c == 0 || nodes.contains(&i)))
        .count()
}

fn levi_order_poly(
    w: &CoxeterGroup,
    nodes: &[usize],
    twist: Twist,
    z0_order: &RationalPoly,
) -> Result<RationalPoly, Error> {
    let n_l = nodes_root_count(w, nodes);
    match twist {
        Twist::Split => {
            // q^N * (q-1)^rank * Poincare(W_L), with the full torus rank.
            let mut p = RationalPoly::monomial(n_l as u32, int(1));
            let qm1 = RationalPoly::from_ints(&[-1, 1]);
            for _ in 0..w.rank {
                p = p.mul(&qm1);
            }
            let elems = w.parabolic_elements(nodes);
            let mut poincare = RationalPoly::zero();
            for e in elems {
                poincare.add_term(w.lengths[e], int(1));
            }
            Ok(p.mul(&poincare))
        }
        Twist::Twisted => {
            // Supported for Levis whose derived group is a product of SL2's:
            // each factor is inner-twisted, so contributes q(q^2-1); the
            // central torus contributes the twisted z0 order.
            let all_a1 = nodes
                .iter()
                .all(|&i| nodes.iter().all(|&j| i == j || w.coxeter_matrix[i][j] == 2));
            if !all_a1 {
                return Err(Error::Data(
                    "twisted Levi order implemented only for A1-product Levis".into(),
                ));
            }
            let sl2 = RationalPoly::from_ints(&[0, -1, 0, 1]); // q(q^2-1)
            let mut p = RationalPoly::one();
            for _ in nodes {
                p = p.mul(&sl2);
            }
            Ok(p.mul(z0_order))
        }
    }
}

/// det(q*id - e) on the sublattice { y : <alpha_i, y> = 0 for i in I },
/// computed over Q; for I empty this is the characteristic polynomial on
/// the whole lattice.
pub fn sublattice_char_poly(
    w: &CoxeterGroup,
    e: ElemId,
    subset: &[usize],
) -> Result<RationalPoly, Error> {
    let n = w.rank;
    if subset.is_empty() {
        return Ok(w.char_poly(e));
    }
    // Kernel of the Cartan-pairing rows.
    let cartan = w.cartan();
    let rows: Vec<Vec<BigRational>> = subset
        .iter()
        .map(|&i| (0..n).map(|j| int(cartan[i][j])).collect())
        .collect();
    let kernel = nullspace(&rows, n);
    let r = kernel.len();
    if r == 0 {
        return Ok(RationalPoly::one());
    }
    // Restrict e to the kernel: e * k_j = sum_i rmat[i][j] k_i.
    let m = w.matrix(e);
    let mut images: Vec<Vec<BigRational>> = Vec::with_capacity(r);
    for k in &kernel {
        let mut im = vec![BigRational::zero(); n];
        for (row, item) in im.iter_mut().enumerate() {
            for col in 0..n {
                if !k[col].is_zero() {
                    *item += int(m[row * n + col]) * &k[col];
                }
            }
        }
        images.push(im);
    }
    let mut rmat = vec![vec![BigRational::zero(); r]; r];
    for (j, im) in images.iter().enumerate() {
        let coords = solve_in_span(&kernel, im).ok_or_else(|| {
            Error::Data("group element does not preserve the Levi's central sublattice".into())
        })?;
        for i in 0..r {
            rmat[i][j] = coords[i].clone();
        }
    }
    // det(q I - rmat) via polynomial entries.
    let entries: Vec<RationalPoly> = (0..r * r)
        .map(|ix| {
            let (i, j) = (ix / r, ix % r);
            let mut p = RationalPoly::constant(-rmat[i][j].clone());
            if i == j {
                p.add_term(1, int(1));
            }
            p
        })
        .collect();
    Ok(crate::coxeter::group::poly_det(r, &entries))
}

fn nullspace(rows: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&row| !m[row][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for c in 0..n {
            m[rank][c] = &m[rank][c] / &pv;
        }
        for row in 0..m.len() {
            if row != rank && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for c in 0..n {
                    let s = &m[rank][c] * &f;
                    m[row][c] = &m[row][c] - s;
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivots[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[free] = num_traits::One::one();
        for col in 0..n {
            if let Some(prow) = pivots[col] {
                v[col] = -m[prow][free].clone();
            }
        }
        kernel.push(v);
    }
    kernel
}

fn solve_in_span(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = basis.len();
    let n = v.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = (0..d).map(|i| basis[i][row].clone()).collect();
            r.push(v[row].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..n).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let pv = aug[rank][col].clone();
        for c in col..=d {
            aug[rank][c] = &aug[rank][c] / &pv;
        }
        for r in 0..n {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin8_order_polynomial() {
        let d = spin8_datum().unwrap();
        // q^12 (q-1)^4 Poincare(W) gives the same polynomial.
        let qm1 = RationalPoly::from_ints(&[-1, 1]);
        let mut alt = RationalPoly::monomial(12, int(1));
        for _ in 0..4 {
            alt = alt.mul(&qm1);
        }
        alt = alt.mul(&d.weyl.poincare());
        assert_eq!(d.order_poly, alt);
        assert_eq!(d.order_poly.degree(), Some(28));
    }

    #[test]
    fn levi_central_torus_orders() {
        let d = spin8_datum().unwrap();
        // Levi {1,2,4} (0-based {0,1,3}): split q-1, twisted q+1.
        let l = levi(&d, &[0, 1, 3], Twist::Split).unwrap();
        assert_eq!(l.z0_order, RationalPoly::from_ints(&[-1, 1]));
        assert_eq!(l.dim_radical, 9);
        let lt = levi(&d, &[0, 1, 3], Twist::Twisted).unwrap();
        assert_eq!(lt.z0_order, RationalPoly::from_ints(&[1, 1]));
        // Empty subset, split: (q-1)^4.
        let t = levi(&d, &[], Twist::Split).unwrap();
        assert_eq!(t.z0_order, RationalPoly::from_ints(&[-1, 1]).pow(4));
    }

    #[test]
    fn levi_order_polynomials() {
        let d = spin8_datum().unwrap();
        let sl2 = RationalPoly::from_ints(&[0, -1, 0, 1]);
        let expect_split = sl2.pow(3).mul(&RationalPoly::from_ints(&[-1, 1]));
        let l = levi(&d, &[0, 1, 3], Twist::Split).unwrap();
        assert_eq!(l.order_poly, expect_split);
        let expect_twisted = sl2.pow(3).mul(&RationalPoly::from_ints(&[1, 1]));
        let lt = levi(&d, &[0, 1, 3], Twist::Twisted).unwrap();
        assert_eq!(lt.order_poly, expect_twisted);
    }

    #[test]
    fn b2_block_weights_on_the_central_lattice() {
        // For L = {1,4} (0-based {0,3}) the relative B2 acts on the rank-2
        // central lattice; reflections give q^2-1, the rotation q^2+1, the
        // long element (q+1)^2.
        let d = spin8_datum().unwrap();
        let w = &d.weyl;
        let rw = crate::coxeter::relative_weyl(w, &[0, 1, 2, 3], &[0, 3]).unwrap();
        let mut counts: std::collections::BTreeMap<Vec<i64>, usize> = Default::default();
        for c in &rw.quotient.classes {
            let amb = rw.embed[c.rep];
            let cp = sublattice_char_poly(w, amb, &[0, 3]).unwrap();
            let key: Vec<i64> = (0..3)
                .map(|k| cp.get(k).to_integer().try_into().unwrap())
                .collect();
            *counts.entry(key).or_insert(0) += c.size();
        }
        assert_eq!(counts.get(&vec![1, -2, 1]).copied(), Some(1)); // (q-1)^2
        assert_eq!(counts.get(&vec![-1, 0, 1]).copied(), Some(4)); // reflections
        assert_eq!(counts.get(&vec![1, 0, 1]).copied(), Some(2)); // rotations
        assert_eq!(counts.get(&vec![1, 2, 1]).copied(), Some(1)); // -1
    }
}
