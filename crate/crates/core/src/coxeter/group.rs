//! Finite Coxeter groups realized crystallographically on the root lattice.
//!
//! A group is built from its Coxeter matrix (entries in {2,3,4,6} off the
//! diagonal). Elements are integer matrices acting on simple-root
//! coordinates, enumerated by breadth-first closure; conjugacy classes,
//! lengths, parabolic subgroups and distinguished coset representatives are
//! all computed from that realization.

use std::collections::{HashMap, VecDeque};

use crate::symring::poly::int;
use crate::symring::RationalPoly;
use crate::Error;

/// Hard cap on the group order; everything this engine needs has order <= 1152.
const ORDER_CAP: usize = 1200;

pub type ElemId = usize;

/// An integer matrix in simple-root coordinates, row-major.
pub type Mat = Vec<i64>;

pub fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Mat {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn mat_identity(n: usize) -> Mat {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_apply(n: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n];
    for i in 0..n {
        for j in 0..n {
            out[i] += m[i * n + j] * v[j];
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: ElemId,
    pub members: Vec<ElemId>,
    /// Canonical label: digits of a shortest representative word ("e" if empty).
    pub label: String,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite Coxeter group with full element enumeration.
pub struct CoxeterGroup {
    pub rank: usize,
    pub coxeter_matrix: Vec<Vec<u32>>,
    cartan: Vec<Vec<i64>>,
    elements: Vec<Mat>,
    index: HashMap<Mat, ElemId>,
    /// Shortest word (generator indices) per element, from the BFS.
    words: Vec<Vec<usize>>,
    pub lengths: Vec<u32>,
    pub gens: Vec<ElemId>,
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
}

impl CoxeterGroup {
    /// Build from a Coxeter matrix. Entries must make a crystallographic
    /// finite type (bond labels 2, 3, 4 or 6); anything that fails to close
    /// under the order cap is rejected as non-finite.
    pub fn build(coxeter_matrix: Vec<Vec<u32>>) -> Result<Self, Error> {
        let rank = coxeter_matrix.len();
        for (i, row) in coxeter_matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::Coxeter("coxeter matrix is not square".into()));
            }
            for (j, &m) in row.iter().enumerate() {
                let ok = if i == j { m == 1 } else { matches!(m, 2 | 3 | 4 | 6) };
                if !ok {
                    return Err(Error::Coxeter(format!(
                        "unsupported coxeter matrix entry m[{i}][{j}] = {m}"
                    )));
                }
                if i != j && coxeter_matrix[j][i] != m {
                    return Err(Error::Coxeter("coxeter matrix is not symmetric".into()));
                }
            }
        }

        // Crystallographic Cartan pairing <alpha_j, alpha_i^vee>.
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                cartan[i][j] = match (i == j, coxeter_matrix[i][j]) {
                    (true, _) => 2,
                    (false, 2) => 0,
                    (false, 3) => -1,
                    (false, 4) => {
                        if i < j {
                            -1
                        } else {
                            -2
                        }
                    }
                    (false, 6) => {
                        if i < j {
                            -1
                        } else {
                            -3
                        }
                    }
                    _ => unreachable!(),
                };
            }
        }

        // Simple reflections: s_i(e_j) = e_j - cartan[i][j] e_i.
        let mut gen_mats = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut m = mat_identity(rank);
            for j in 0..rank {
                m[i * rank + j] -= cartan[i][j];
            }
            gen_mats.push(m);
        }

        // Closure under multiplication.
        let mut elements = vec![mat_identity(rank)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, g) in gen_mats.iter().enumerate() {
                let prod = mat_mul(rank, g, &elements[e]);
                if !index.contains_key(&prod) {
                    if elements.len() >= ORDER_CAP {
                        return Err(Error::Coxeter(
                            "group does not close under the order cap; non-finite type?".into(),
                        ));
                    }
                    let id = elements.len();
                    index.insert(prod.clone(), id);
                    elements.push(prod);
                    let mut w = vec![gi];
                    w.extend(&words[e]);
                    words.push(w);
                    queue.push_back(id);
                }
            }
        }

        // Roots: orbit of the simple roots; positives have nonnegative coords.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        {
            let mut seen = HashMap::new();
            for i in 0..rank {
                let mut v = vec![0i64; rank];
                v[i] = 1;
                seen.insert(v.clone(), ());
                roots.push(v);
            }
            let mut qd: VecDeque<Vec<i64>> = roots.iter().cloned().collect();
            while let Some(r) = qd.pop_front() {
                for g in &gen_mats {
                    let im = mat_apply(rank, g, &r);
                    if !seen.contains_key(&im) {
                        seen.insert(im.clone(), ());
                        roots.push(im.clone());
                        qd.push_back(im);
                    }
                }
            }
        }
        let positive_roots: Vec<Vec<i64>> = roots
            .iter()
            .filter(|r| r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c != 0))
            .cloned()
            .collect();

        let lengths: Vec<u32> = elements
            .iter()
            .map(|m| {
                positive_roots
                    .iter()
                    .filter(|r| {
                        let im = mat_apply(rank, m, r);
                        im.iter().all(|&c| c <= 0)
                    })
                    .count() as u32
            })
            .collect();

        let gens: Vec<ElemId> = gen_mats.iter().map(|g| index[g]).collect();

        let mut group = CoxeterGroup {
            rank,
            coxeter_matrix,
            cartan,
            elements,
            index,
            words,
            lengths,
            gens,
            classes: Vec::new(),
            class_of: Vec::new(),
            positive_roots,
        };
        group.compute_classes();
        group.check_generator_orders()?;
        Ok(group)
    }

    fn check_generator_orders(&self) -> Result<(), Error> {
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i == j {
                    continue;
                }
                let p = self.mul(self.gens[i], self.gens[j]);
                if self.element_order(p) != self.coxeter_matrix[i][j] as usize {
                    return Err(Error::Coxeter(format!(
                        "generator product order mismatch at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let prod = mat_mul(self.rank, &self.elements[a], &self.elements[b]);
        self.index[&prod]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        // Finite order: a^(n-1) is the inverse.
        if a == self.identity() {
            return a;
        }
        let mut prev = a;
        let mut x = self.mul(a, a);
        while x != self.identity() {
            prev = x;
            x = self.mul(x, a);
        }
        prev
    }

    pub fn conj(&self, g: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: ElemId) -> usize {
        let mut n = 1;
        let mut x = a;
        while x != self.identity() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn matrix(&self, a: ElemId) -> &Mat {
        &self.elements[a]
    }

    pub fn word(&self, a: ElemId) -> &[usize] {
        &self.words[a]
    }

    pub fn element_ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.order()
    }

    /// Evaluate a word in generator indices.
    pub fn eval_word(&self, w: &[usize]) -> Result<ElemId, Error> {
        let mut e = self.identity();
        for &g in w {
            if g >= self.rank {
                return Err(Error::Coxeter(format!("word uses generator {g} out of range")));
            }
            e = self.mul(e, self.gens[g]);
        }
        Ok(e)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<ConjClass> = Vec::new();
        for e in 0..n {
            if class_of[e] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![e];
            class_of[e] = cid;
            let mut queue = VecDeque::from([e]);
            while let Some(x) = queue.pop_front() {
                for &g in &self.gens {
                    let y = self.conj(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass { rep: e, members, label: String::new() });
        }
        // Canonical class order: by minimal length, then size, then the
        // BFS-least representative of minimal length.
        for c in &mut classes {
            let rep = *c
                .members
                .iter()
                .min_by_key(|&&m| (self.lengths[m], m))
                .unwrap();
            c.rep = rep;
        }
        classes.sort_by_key(|c| (self.lengths[c.rep], c.members.len(), c.rep));
        for (new_id, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = new_id;
            }
        }
        for c in &mut classes {
            let w = &self.words[c.rep];
            c.label = if w.is_empty() {
                "e".to_string()
            } else {
                w.iter().map(|g| (g + 1).to_string()).collect::<Vec<_>>().join("")
            };
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// |W| / |class|.
    pub fn centralizer_order(&self, class: usize) -> usize {
        self.order() / self.classes[class].size()
    }

    /// Elements of the standard parabolic subgroup generated by `nodes`.
    pub fn parabolic_elements(&self, nodes: &[usize]) -> Vec<ElemId> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &i in nodes {
                let p = self.mul(self.gens[i], e);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                    queue.push_back(p);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Longest element of the standard parabolic on `nodes`.
    pub fn longest_element(&self, nodes: &[usize]) -> ElemId {
        *self
            .parabolic_elements(nodes)
            .iter()
            .max_by_key(|&&e| self.lengths[e])
            .unwrap()
    }

    /// Sum of q^l(w) over minimal-length coset representatives of W_I in W.
    pub fn poincare_quotient(&self, nodes: &[usize]) -> RationalPoly {
        let mut p = RationalPoly::zero();
        for w in self.element_ids() {
            // Distinguished reps of w W_I: l(w s_i) > l(w) for all i in I.
            let distinguished = nodes
                .iter()
                .all(|&i| self.lengths[self.mul(w, self.gens[i])] > self.lengths[w]);
            if distinguished {
                p.add_term(self.lengths[w], int(1));
            }
        }
        p
    }

    /// Full Poincare polynomial, sum of q^l(w) over W.
    pub fn poincare(&self) -> RationalPoly {
        self.poincare_quotient(&[])
    }

    /// det(q * id - w) on the root-coordinate lattice.
    pub fn char_poly(&self, e: ElemId) -> RationalPoly {
        let n = self.rank;
        let m = self.matrix(e);
        // Entries of qI - M as polynomials; expand by the first column.
        let entries: Vec<RationalPoly> = (0..n * n)
            .map(|ix| {
                let (i, j) = (ix / n, ix % n);
                let mut p = RationalPoly::constant(int(-m[i * n + j]));
                if i == j {
                    p.add_term(1, int(1));
                }
                p
            })
            .collect();
        poly_det(n, &entries)
    }

    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    /// Apply an element to an integer vector in simple-root coordinates.
    pub fn apply(&self, e: ElemId, v: &[i64]) -> Vec<i64> {
        mat_apply(self.rank, self.matrix(e), v)
    }
}

impl CoxeterGroup {
    /// JSON export: Coxeter matrix, class representatives as generator
    /// words, class sizes, and (given a computed table) character values.
    pub fn to_json(&self, table: Option<&crate::coxeter::CharTable>) -> serde_json::Value {
        use serde_json::json;
        json!({
            "schema": "greenfn-coxeter-v1",
            "coxeter_matrix": self.coxeter_matrix,
            "order": self.order(),
            "classes": self.classes.iter().map(|c| json!({
                "word": self.word(c.rep).iter().map(|g| g + 1).collect::<Vec<_>>(),
                "size": c.size(),
            })).collect::<Vec<_>>(),
            "character_table": table.map(|t| t.values.iter().map(|row| {
                row.iter().map(crate::symring::json::rational_to_string).collect::<Vec<_>>()
            }).collect::<Vec<_>>()),
        })
    }
}

/// Determinant of an n x n matrix of polynomials by Laplace expansion;
/// fine for n <= 4.
pub fn poly_det(n: usize, entries: &[RationalPoly]) -> RationalPoly {
    if n == 0 {
        return RationalPoly::one();
    }
    if n == 1 {
        return entries[0].clone();
    }
    let mut det = RationalPoly::zero();
    for i in 0..n {
        let a = &entries[i * n];
        if a.is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == i {
                continue;
            }
            for c in 1..n {
                minor.push(entries[r * n + c].clone());
            }
        }
        let sub = poly_det(n - 1, &minor);
        let term = a.mul(&sub);
        if i % 2 == 0 {
            det = det.add(&term);
        } else {
            det = det.sub(&term);
        }
    }
    det
}

/// Convenience Coxeter matrices.
pub fn coxeter_matrix_a1_product(k: usize) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2u32; k]; k];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn coxeter_matrix_b2() -> Vec<Vec<u32>> {
    vec![vec![1, 4], vec![4, 1]]
}

/// D4 in the labeling used throughout: node 3 is the central node.
pub fn coxeter_matrix_d4() -> Vec<Vec<u32>> {
    let mut m = vec![vec![2u32; 4]; 4];
    for i in 0..4 {
        m[i][i] = 1;
    }
    for outer in [0usize, 1, 3] {
        m[outer][2] = 3;
        m[2][outer] = 3;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_order_and_classes() {
        let w = CoxeterGroup::build(coxeter_matrix_d4()).unwrap();
        assert_eq!(w.order(), 192);
        assert_eq!(w.class_count(), 13);
        assert_eq!(w.positive_roots.len(), 12);
        let total: usize = w.classes.iter().map(|c| c.size()).sum();
        assert_eq!(total, 192);
    }

    #[test]
    fn b2_fundamentals() {
        let w = CoxeterGroup::build(coxeter_matrix_b2()).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.class_count(), 5);
        assert_eq!(w.positive_roots.len(), 4);
    }

    #[test]
    fn a1_cube_is_elementary_abelian() {
        let w = CoxeterGroup::build(coxeter_matrix_a1_product(3)).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.class_count(), 8);
    }

    #[test]
    fn rejects_infinite_type() {
        // Affine A1~ has m = infinity; nearest encodable non-finite: a loop of 4s.
        let m = vec![vec![1, 4, 4], vec![4, 1, 4], vec![4, 4, 1]];
        assert!(CoxeterGroup::build(m).is_err());
    }

    #[test]
    fn poincare_values() {
        let w = CoxeterGroup::build(coxeter_matrix_a1_product(1)).unwrap();
        assert_eq!(w.poincare(), RationalPoly::from_ints(&[1, 1]));
        let d4 = CoxeterGroup::build(coxeter_matrix_d4()).unwrap();
        assert_eq!(d4.poincare_quotient(&[0, 1, 2, 3]), RationalPoly::one());
        let pq = d4.poincare_quotient(&[0, 1, 3]);
        assert_eq!(pq.degree(), Some(9));
        assert_eq!(pq.eval_int(1), int(24));
    }

    #[test]
    fn centralizer_orders() {
        let w = CoxeterGroup::build(coxeter_matrix_d4()).unwrap();
        // Identity class centralizer is the whole group.
        assert_eq!(w.centralizer_order(w.class_of[0]), 192);
        let a = CoxeterGroup::build(coxeter_matrix_a1_product(3)).unwrap();
        for c in 0..a.class_count() {
            assert_eq!(a.centralizer_order(c), 8);
        }
        let b2 = CoxeterGroup::build(coxeter_matrix_b2()).unwrap();
        // A reflection class of size 2 has centralizer of order 4.
        let refl = b2.class_of[b2.gens[0]];
        assert_eq!(b2.classes[refl].size(), 2);
        assert_eq!(b2.centralizer_order(refl), 4);
    }

    #[test]
    fn longest_element_of_d4_is_central() {
        let w = CoxeterGroup::build(coxeter_matrix_d4()).unwrap();
        let w0 = w.longest_element(&[0, 1, 2, 3]);
        assert_eq!(w.lengths[w0], 12);
        // -1 on the lattice.
        let m = w.matrix(w0);
        let neg = w.matrix(0).iter().map(|&x| -x).collect::<Vec<_>>();
        assert_eq!(m, &neg);
    }
}

#[cfg(test)]
mod json_tests {
    use super::*;

    #[test]
    fn group_export_contains_classes_and_table() {
        let g = CoxeterGroup::build(coxeter_matrix_b2()).unwrap();
        let t = crate::coxeter::character_table(&g).unwrap();
        let v = g.to_json(Some(&t));
        assert_eq!(v["order"], 8);
        assert_eq!(v["classes"].as_array().unwrap().len(), 5);
        assert_eq!(v["character_table"].as_array().unwrap().len(), 5);
        let total: u64 = v["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["size"].as_u64().unwrap())
            .sum();
        assert_eq!(total, 8);
    }
}
