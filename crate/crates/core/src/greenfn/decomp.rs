//! Y-functions and the orthogonality-driven unitriangular decomposition.
//!
//! Pairs (class, local system) across all blocks are ordered by increasing
//! class dimension. The Gram matrix Omega of the normalized sheaf functions
//! is block diagonal across Springer blocks and is computed from the
//! relative Weyl group's character table, the twisted central-torus orders
//! and the class dimensions. Solving Omega = P^t Lambda P with P
//! unitriangular (identity on each class-diagonal block) and Lambda
//! class-block-diagonal yields the coefficient matrix P and, through the
//! component-group Fourier inversion of Lambda, the finite class sizes.

use num_rational::BigRational;

use crate::groupdata::catalog::AChar;
use crate::groupdata::{GroupContext, UnipClass};
use crate::symring::poly::int;
use crate::symring::{RatFunc, RationalPoly, RfMatrix, SignExpr, SignMonomial, SymExpr};
use crate::Error;

/// One pair iota = (class, local system) with its block coordinates.
#[derive(Clone, Debug)]
pub struct PairRef {
    pub block: usize,
    pub char_row: usize,
    pub class_index: usize,
    pub system: AChar,
    /// q-power shift: #positive roots - dim(class)/2.
    pub delta: u32,
}

/// Result of the decomposition over all blocks.
pub struct Decomposition {
    /// Global pair order (increasing class dimension, catalog ties).
    pub pairs: Vec<PairRef>,
    /// P[kappa][iota]: coefficient of Y_kappa in the normalized function of
    /// iota. Unitriangular; entries are polynomials.
    pub p: Vec<Vec<RationalPoly>>,
    /// Finite class sizes, indexed like catalog.finite_classes().
    pub sizes: Vec<RationalPoly>,
}

/// The normalization scalar of a pair's Y-function: 1, or a sign
/// indeterminate on the one undetermined system of each order-4 class.
pub fn y_scalar(class: &UnipClass, system: AChar) -> SignMonomial {
    match class.indeterminate {
        Some((ch, sign)) if ch == system => SignMonomial::indet(sign),
        _ => SignMonomial::ONE,
    }
}

/// Value of Y_iota on the finite class indexed by an element of A(u):
/// the scalar times the character value; zero off the supporting class.
pub fn y_value(class: &UnipClass, system: AChar, a_elem: u8) -> SymExpr {
    let v = system.value(a_elem);
    let mono = y_scalar(class, system);
    SymExpr::from_sign(SignExpr::term(mono, RationalPoly::constant(int(v))))
}

/// Enumerate all pairs of all blocks in the global processing order.
pub fn global_pairs(ctx: &GroupContext) -> Vec<PairRef> {
    let mut pairs = Vec::new();
    for (bi, b) in ctx.blocks.iter().enumerate() {
        for p in &b.pairs {
            let class = &ctx.catalog.classes[p.class_index];
            debug_assert_eq!(class.dim % 2, 0);
            pairs.push(PairRef {
                block: bi,
                char_row: p.char_row,
                class_index: p.class_index,
                system: p.system,
                delta: ctx.positive_roots as u32 - class.dim / 2,
            });
        }
    }
    pairs.sort_by_key(|p| {
        (
            ctx.catalog.classes[p.class_index].dim,
            p.class_index,
            p.block,
            p.char_row,
        )
    });
    pairs
}

/// The Gram matrix Omega over all pairs: zero across blocks; within a block
///   q^(d - delta_i - delta_k) / |W_L| * sum_w chi_i(w) chi_k(w) / z0(w),
/// where z0(w) = det(q - w t) on the central sublattice of the block's Levi
/// and t is the ambient twist element (identity for split groups).
pub fn omega_matrix(
    ctx: &GroupContext,
    pairs: &[PairRef],
    twist_elem: crate::coxeter::ElemId,
) -> Result<RfMatrix, Error> {
    let n = pairs.len();
    let mut omega = RfMatrix::zero(n, n);

    // Per block: precompute the weight 1/z0 per quotient class.
    let mut block_weights: Vec<Vec<RatFunc>> = Vec::new();
    for b in &ctx.blocks {
        let mut ws = Vec::new();
        for c in &b.rel.quotient.classes {
            let amb = b.rel.embed[c.rep];
            let tw = ctx.weyl.mul(amb, twist_elem);
            let z0 = crate::groupdata::sublattice_char_poly(&ctx.weyl, tw, &b.levi_nodes)?;
            ws.push(RatFunc::new(RationalPoly::one(), z0));
        }
        block_weights.push(ws);
    }

    for (i, pi) in pairs.iter().enumerate() {
        for (j, pj) in pairs.iter().enumerate() {
            if j < i || pi.block != pj.block {
                continue;
            }
            let b = &ctx.blocks[pi.block];
            let quot = &b.rel.quotient;
            let mut sum = RatFunc::zero();
            for (ci, c) in quot.classes.iter().enumerate() {
                let chi_i = &b.rel.table.values[pi.char_row][ci];
                let chi_j = &b.rel.table.values[pj.char_row][ci];
                let coeff = chi_i * chi_j * BigRational::from_integer((c.size() as i64).into());
                if num_traits::Zero::is_zero(&coeff) {
                    continue;
                }
                sum = sum.add(&block_weights[pi.block][ci].scale(&coeff));
            }
            let exp = b.d - pi.delta as i64 - pj.delta as i64;
            let qpow = RatFunc::qpow(exp);
            let val = sum
                .scale(&BigRational::new(1.into(), (quot.order() as i64).into()))
                .mul(&qpow);
            *omega.at_mut(i, j) = val.clone();
            *omega.at_mut(j, i) = val;
        }
    }
    Ok(omega)
}

/// Solve Omega = P^t Lambda P with P unitriangular over the dimension order
/// and Lambda block-diagonal per algebraic class; then recover the finite
/// class sizes from Lambda by Fourier inversion on each component group.
pub fn decompose(ctx: &GroupContext, omega: &RfMatrix) -> Result<Decomposition, Error> {
    let pairs = global_pairs(ctx);
    let n = pairs.len();

    // Group pairs by class, in processing order.
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new(); // (class_index, pair indices)
    for (i, p) in pairs.iter().enumerate() {
        match groups.last_mut() {
            Some((ci, v)) if *ci == p.class_index => v.push(i),
            _ => groups.push((p.class_index, vec![i])),
        }
    }

    let dim_of = |ci: usize| ctx.catalog.classes[ci].dim;

    let mut p = RfMatrix::identity(n);
    let mut lambda = RfMatrix::zero(n, n);

    // sum over already-processed groups f with dim(f) < bound of
    // (P^t Lambda P)[x][y].
    let accum = |p: &RfMatrix,
                 lambda: &RfMatrix,
                 groups: &[(usize, Vec<usize>)],
                 upto: usize,
                 bound: u32,
                 x: usize,
                 y: usize| {
        let mut s = RatFunc::zero();
        for (ci, idxs) in groups.iter().take(upto) {
            if dim_of(*ci) >= bound {
                continue;
            }
            for &m in idxs {
                if p.at(m, x).is_zero() {
                    continue;
                }
                for &v in idxs {
                    if lambda.at(m, v).is_zero() || p.at(v, y).is_zero() {
                        continue;
                    }
                    let t = p.at(m, x).mul(lambda.at(m, v)).mul(p.at(v, y));
                    s = s.add(&t);
                }
            }
        }
        s
    };

    for gi in 0..groups.len() {
        let (ci_g, idxs_g) = groups[gi].clone();
        let dim_g = dim_of(ci_g);

        // Solve the P-entries for earlier groups of strictly smaller dim.
        for ei in 0..gi {
            let (ci_e, idxs_e) = groups[ei].clone();
            if dim_of(ci_e) >= dim_g {
                // Same-dimension distinct classes: no mixing; consistency.
                for &k in &idxs_e {
                    for &i in &idxs_g {
                        let lhs = omega.at(k, i).clone();
                        let rhs = accum(&p, &lambda, &groups, gi, dim_of(ci_e), k, i);
                        if lhs.sub(&rhs) != RatFunc::zero() {
                            return Err(Error::Decomposition(format!(
                                "not unitriangular-solvable: classes {} and {} of equal dimension are coupled",
                                ctx.catalog.classes[ci_e].label, ctx.catalog.classes[ci_g].label
                            )));
                        }
                    }
                }
                continue;
            }
            // Lambda_e * x = omega[e][i] - accum(dim < dim_e).
            let m = idxs_e.len();
            let mut lam_e = RfMatrix::zero(m, m);
            for (a, &ka) in idxs_e.iter().enumerate() {
                for (b, &kb) in idxs_e.iter().enumerate() {
                    *lam_e.at_mut(a, b) = lambda.at(ka, kb).clone();
                }
            }
            let inv = lam_e.inverse().map_err(|_| {
                Error::Decomposition(format!(
                    "singular pivot block at class {}",
                    ctx.catalog.classes[ci_e].label
                ))
            })?;
            for &i in &idxs_g {
                let mut rhs = RfMatrix::zero(m, 1);
                for (a, &ka) in idxs_e.iter().enumerate() {
                    let acc = accum(&p, &lambda, &groups, ei, dim_of(ci_e), ka, i);
                    *rhs.at_mut(a, 0) = omega.at(ka, i).sub(&acc);
                }
                let x = inv.mul(&rhs);
                for (a, &ka) in idxs_e.iter().enumerate() {
                    *p.at_mut(ka, i) = x.at(a, 0).clone();
                }
            }
        }

        // Lambda on the diagonal block of this class.
        for &i in &idxs_g {
            for &j in &idxs_g {
                let acc = accum(&p, &lambda, &groups, gi, dim_g, i, j);
                *lambda.at_mut(i, j) = omega.at(i, j).sub(&acc);
            }
        }
    }

    // P entries must be polynomials and vanish across blocks.
    let mut p_poly = vec![vec![RationalPoly::zero(); n]; n];
    for k in 0..n {
        for i in 0..n {
            let e = p.at(k, i);
            if e.is_zero() {
                continue;
            }
            if pairs[k].block != pairs[i].block {
                return Err(Error::Decomposition(format!(
                    "coefficient matrix couples blocks {} and {}",
                    pairs[k].block, pairs[i].block
                )));
            }
            let poly = e.as_poly().ok_or_else(|| {
                Error::Decomposition(format!(
                    "non-polynomial coefficient at pair ({}, {})",
                    ctx.catalog.classes[pairs[k].class_index].label,
                    ctx.catalog.classes[pairs[i].class_index].label
                ))
            })?;
            p_poly[k][i] = poly.clone();
        }
    }

    let sizes = extract_sizes(ctx, &pairs, &lambda)?;

    Ok(Decomposition { pairs, p: p_poly, sizes })
}

/// Recover |C'_a| for every finite class from the Y-function Gram matrix:
/// |G| Lambda[i][j] = c_i c_j * shat(chi_i chi_j) with
/// shat(chi) = sum_a |C'_a| chi(a). The result must be sign-free.
fn extract_sizes(
    ctx: &GroupContext,
    pairs: &[PairRef],
    lambda: &RfMatrix,
) -> Result<Vec<RationalPoly>, Error> {
    let mut sizes_by_class: Vec<Vec<RationalPoly>> = ctx
        .catalog
        .classes
        .iter()
        .map(|c| vec![RationalPoly::zero(); c.finite_count()])
        .collect();

    for (ci, class) in ctx.catalog.classes.iter().enumerate() {
        let idxs: Vec<usize> = (0..pairs.len())
            .filter(|&i| pairs[i].class_index == ci)
            .collect();
        let order = class.a_order();
        if idxs.len() != order {
            return Err(Error::Decomposition(format!(
                "class {}: {} pairs for component order {}",
                class.label,
                idxs.len(),
                order
            )));
        }
        // shat per character, assembled as sign expressions and checked for
        // consistency across factorizations.
        let mut shat: Vec<Option<SignExpr>> = vec![None; order];
        for &i in &idxs {
            for &j in &idxs {
                let li = lambda.at(i, j);
                let prod = li.mul(&RatFunc::from_poly(ctx.order_poly.clone()));
                let poly = prod.as_poly().ok_or_else(|| {
                    Error::Decomposition(format!(
                        "class {}: non-polynomial Gram entry",
                        class.label
                    ))
                })?;
                let mono = y_scalar(class, pairs[i].system)
                    .mul(y_scalar(class, pairs[j].system));
                let t = SignExpr::term(mono, poly.clone());
                let chi = AChar(pairs[i].system.0 ^ pairs[j].system.0);
                match &shat[chi.0 as usize] {
                    None => shat[chi.0 as usize] = Some(t),
                    Some(prev) => {
                        if prev != &t {
                            return Err(Error::Decomposition(format!(
                                "class {}: inconsistent Gram factorizations for character {}",
                                class.label, chi.0
                            )));
                        }
                    }
                }
            }
        }
        // s_a = (1/|A|) sum_chi chi(a) shat(chi); must be sign-free.
        for (fi, &a) in class.finite_order.iter().enumerate() {
            let mut acc = SignExpr::zero();
            for chi in class.characters() {
                let term = shat[chi.0 as usize]
                    .as_ref()
                    .ok_or_else(|| {
                        Error::Decomposition(format!(
                            "class {}: missing character {} in Gram data",
                            class.label, chi.0
                        ))
                    })?
                    .scale(&BigRational::new((chi.value(a)).into(), (order as i64).into()));
                acc = acc.add(&term);
            }
            let poly = acc.as_poly().ok_or_else(|| {
                Error::Decomposition(format!(
                    "class {}: finite class size depends on a sign indeterminate",
                    class.label
                ))
            })?;
            sizes_by_class[ci][fi] = poly;
        }
    }

    Ok(sizes_by_class.into_iter().flatten().collect())
}
