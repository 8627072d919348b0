//! Relative Weyl groups N_W(W_I)/W_I with their Coxeter presentation,
//! coset-representative embedding and node correspondence, plus class
//! fusion between relative Weyl groups of nested groups.

use std::collections::{HashMap, VecDeque};

use super::chartable::{character_table, CharTable};
use super::group::{CoxeterGroup, ElemId};
use crate::Error;

/// N_A(W_I)/W_I for a subgroup A <= W containing W_I, presented as a
/// Coxeter group with generators labeled by the ambient nodes outside I.
pub struct RelativeWeylGroup {
    /// Nodes of I in the ambient group.
    pub subset: Vec<usize>,
    /// Ambient node labels of the quotient's Coxeter generators, in order.
    pub node_labels: Vec<usize>,
    /// The quotient as an abstract Coxeter group.
    pub quotient: CoxeterGroup,
    /// Character table of the quotient.
    pub table: CharTable,
    /// Representative in the ambient group for each quotient element.
    pub embed: Vec<ElemId>,
    /// Elements of W_I inside the ambient group.
    pub wi_elements: Vec<ElemId>,
}

impl RelativeWeylGroup {
    /// Quotient element containing a given ambient element of N_A(W_I);
    /// errors if the element does not normalize W_I.
    pub fn element_of(&self, w: &CoxeterGroup, x: ElemId) -> Result<usize, Error> {
        if !normalizes(w, x, &self.wi_elements) {
            return Err(Error::Data(
                "element does not normalize the parabolic in the overgroup".into(),
            ));
        }
        for (qe, &rep) in self.embed.iter().enumerate() {
            let d = w.mul(w.inv(rep), x);
            if self.wi_elements.binary_search(&d).is_ok() {
                return Ok(qe);
            }
        }
        Err(Error::Data("element lies outside the relative Weyl group".into()))
    }

    /// Quotient class of an ambient element.
    pub fn class_of_ambient(&self, w: &CoxeterGroup, x: ElemId) -> Result<usize, Error> {
        Ok(self.quotient.class_of[self.element_of(w, x)?])
    }
}

fn normalizes(w: &CoxeterGroup, x: ElemId, sub: &[ElemId]) -> bool {
    let xi = w.inv(x);
    sub.iter().all(|&s| {
        let c = w.mul(w.mul(x, s), xi);
        sub.binary_search(&c).is_ok()
    })
}

/// Build the relative Weyl group of W_I inside the parabolic subgroup of
/// `w` on `ambient_nodes` (use all nodes for the full group). The quotient
/// generator for j in ambient_nodes \ I is the longest-element construction
/// in the parabolic on I + {j}.
pub fn relative_weyl(
    w: &CoxeterGroup,
    ambient_nodes: &[usize],
    subset: &[usize],
) -> Result<RelativeWeylGroup, Error> {
    for i in subset {
        if !ambient_nodes.contains(i) {
            return Err(Error::Coxeter("I is not contained in the ambient node set".into()));
        }
    }
    let wi_elements = w.parabolic_elements(subset);
    let ambient_elements = w.parabolic_elements(ambient_nodes);

    // Size of the normalizer of W_I in the ambient parabolic.
    let normalizer: Vec<ElemId> = ambient_elements
        .iter()
        .copied()
        .filter(|&x| normalizes(w, x, &wi_elements))
        .collect();
    let quotient_order = normalizer.len() / wi_elements.len();

    let node_labels: Vec<usize> = ambient_nodes
        .iter()
        .copied()
        .filter(|j| !subset.contains(j))
        .collect();

    // Generators v_j = w0(I + {j}) * w0(I).
    let w0_i = w.longest_element(subset);
    let mut gens = Vec::new();
    for &j in &node_labels {
        let mut nodes = subset.to_vec();
        nodes.push(j);
        let v = w.mul(w.longest_element(&nodes), w0_i);
        gens.push(v);
    }

    // The generated subgroup must be a complement to W_I in the normalizer.
    let mut v_elements = vec![w.identity()];
    let mut seen: HashMap<ElemId, ()> = HashMap::from([(w.identity(), ())]);
    let mut queue = VecDeque::from([w.identity()]);
    while let Some(e) = queue.pop_front() {
        for &g in &gens {
            let p = w.mul(g, e);
            if !seen.contains_key(&p) {
                seen.insert(p, ());
                v_elements.push(p);
                queue.push_back(p);
            }
        }
    }
    if v_elements.len() != quotient_order {
        return Err(Error::Coxeter(
            "relative Weyl generators do not generate a complement".into(),
        ));
    }
    for &v in &v_elements {
        if v != w.identity() && wi_elements.binary_search(&v).is_ok() {
            return Err(Error::Coxeter("complement meets the parabolic nontrivially".into()));
        }
    }

    // Coxeter matrix of the quotient from the pairwise product orders.
    let r = gens.len();
    let mut cm = vec![vec![1u32; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i != j {
                cm[i][j] = w.element_order(w.mul(gens[i], gens[j])) as u32;
            }
        }
    }
    let quotient = CoxeterGroup::build(cm)?;
    if quotient.order() != quotient_order {
        return Err(Error::Coxeter(
            "quotient presentation order does not match the coset count".into(),
        ));
    }

    // Identify quotient elements with members of the complement via words.
    let mut embed = vec![w.identity(); quotient.order()];
    for qe in quotient.element_ids() {
        let mut x = w.identity();
        for &g in quotient.word(qe) {
            x = w.mul(x, gens[g]);
        }
        embed[qe] = x;
    }
    // Distinct quotient elements must land in distinct cosets.
    {
        let mut coset_ids: Vec<ElemId> = embed
            .iter()
            .map(|&x| {
                wi_elements
                    .iter()
                    .map(|&u| w.mul(x, u))
                    .min()
                    .expect("nonempty coset")
            })
            .collect();
        coset_ids.sort_unstable();
        coset_ids.dedup();
        if coset_ids.len() != quotient.order() {
            return Err(Error::Coxeter("embedding does not separate cosets".into()));
        }
    }

    let table = character_table(&quotient)?;
    Ok(RelativeWeylGroup {
        subset: subset.to_vec(),
        node_labels,
        quotient,
        table,
        embed,
        wi_elements,
    })
}

/// Fusion of conjugacy classes of a relative Weyl group inside a smaller
/// ambient group into one inside a larger ambient group (same I).
pub struct FClassFusion {
    /// sub-quotient class -> over-quotient class.
    pub map: Vec<usize>,
}

pub fn fuse(
    w: &CoxeterGroup,
    sub: &RelativeWeylGroup,
    over: &RelativeWeylGroup,
) -> Result<FClassFusion, Error> {
    if sub.subset != over.subset {
        return Err(Error::Data("fusion requires matching parabolic subsets".into()));
    }
    let mut map = Vec::with_capacity(sub.quotient.class_count());
    for class in &sub.quotient.classes {
        let rep_ambient = sub.embed[class.rep];
        let target = over.class_of_ambient(w, rep_ambient)?;
        // The map must be constant on the source class.
        for &m in &class.members {
            let t = over.class_of_ambient(w, sub.embed[m])?;
            if t != target {
                return Err(Error::Data("fusion is not constant on a class".into()));
            }
        }
        map.push(target);
    }
    Ok(FClassFusion { map })
}

#[cfg(test)]
mod tests {
    use super::super::group::*;
    use super::*;

    fn d4() -> CoxeterGroup {
        CoxeterGroup::build(coxeter_matrix_d4()).unwrap()
    }

    #[test]
    fn relative_of_empty_set_is_the_group() {
        let w = d4();
        let r = relative_weyl(&w, &[0, 1, 2, 3], &[]).unwrap();
        assert_eq!(r.quotient.order(), 192);
        assert_eq!(r.node_labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn relative_of_full_set_is_trivial() {
        let w = d4();
        let r = relative_weyl(&w, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.quotient.order(), 1);
    }

    #[test]
    fn outer_pair_gives_b2() {
        // Nodes are 0-based: paper nodes {1,4} are {0,3} here.
        let w = d4();
        let r = relative_weyl(&w, &[0, 1, 2, 3], &[0, 3]).unwrap();
        assert_eq!(r.quotient.order(), 8);
        assert_eq!(r.quotient.coxeter_matrix[0][1], 4);
        assert_eq!(r.node_labels, vec![1, 2]);
    }

    #[test]
    fn levi_124_quotient_has_order_two() {
        let w = d4();
        let r = relative_weyl(&w, &[0, 1, 2, 3], &[0, 1, 3]).unwrap();
        assert_eq!(r.quotient.order(), 2);
    }

    #[test]
    fn fusion_into_b2() {
        let w = d4();
        // L = {1,4} (0-based {0,3}); M = Levi {1,2,4} = nodes {0,1,3}.
        let over = relative_weyl(&w, &[0, 1, 2, 3], &[0, 3]).unwrap();
        let sub = relative_weyl(&w, &[0, 1, 3], &[0, 3]).unwrap();
        assert_eq!(sub.quotient.order(), 2);
        let f = fuse(&w, &sub, &over).unwrap();
        // Identity fuses to identity; the reflection lands in a reflection class.
        assert_eq!(f.map[0], over.quotient.class_of[over.quotient.identity()]);
        let target = f.map[1];
        let rep = over.quotient.classes[target].rep;
        assert_eq!(over.quotient.lengths[rep] % 2, 1);
        // Self-fusion is the identity map.
        let selffuse = fuse(&w, &over, &over).unwrap();
        for (i, &t) in selffuse.map.iter().enumerate() {
            assert_eq!(i, t);
        }
    }
}
