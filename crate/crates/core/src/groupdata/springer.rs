//! Blocks of the generalized Springer correspondence, loaded from reviewed
//! data files and validated for joint bijectivity.
//!
//! Characters of the relative Weyl group are referenced in the data by
//! descriptors: degree, optionally the fake-degree b-invariant, values on
//! the classes of named node generators, or a j-induction anchor (the
//! minimal-b constituent induced from a parabolic's sign or unique
//! degree-d character). The loader resolves descriptors against the
//! computed character table and errors on any ambiguity.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Deserialize;

use crate::coxeter::{
    induced_character, j_induction, relative_weyl, CoxeterGroup, RelativeWeylGroup,
};
use crate::groupdata::catalog::{AChar, UnipotentClassCatalog};
use crate::symring::poly::int;
use crate::Error;

/// One entry of a block's Springer map.
#[derive(Clone, Debug)]
pub struct SpringerPair {
    /// Row of the block's relative-Weyl character table.
    pub char_row: usize,
    /// Index into the catalog.
    pub class_index: usize,
    /// Character of A(u) naming the local system.
    pub system: AChar,
}

/// One triple (L, C, E) with its relative Weyl group and Springer map.
pub struct SpringerBlock {
    pub name: String,
    /// Nodes of L (0-based, ambient).
    pub levi_nodes: Vec<usize>,
    pub rel: RelativeWeylGroup,
    /// Pairs indexed by character row.
    pub pairs: Vec<SpringerPair>,
    /// d = dim C - dim L + dim Z0(L) = -|I|.
    pub d: i64,
    /// Label of the cuspidal support class in the ambient catalog, if the
    /// block is not the torus block.
    pub cuspidal_class: Option<String>,
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawSpringer {
    schema: String,
    group: String,
    /// 1-based ambient node labels of the group whose blocks these are.
    ambient_nodes: Vec<usize>,
    blocks: Vec<RawBlock>,
}

#[derive(Deserialize)]
struct RawBlock {
    /// 1-based node labels of L; empty for the torus block.
    levi: Vec<usize>,
    #[serde(default)]
    cuspidal_class: Option<String>,
    pairs: Vec<RawPair>,
}

#[derive(Deserialize)]
struct RawPair {
    #[serde(rename = "char")]
    ch: RawChar,
    class: String,
    #[serde(default)]
    system: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
struct RawChar {
    degree: u64,
    #[serde(default)]
    b: Option<u32>,
    /// Values on the classes of the quotient generators, keyed by the
    /// 1-based ambient node label of the generator.
    #[serde(default)]
    node_values: BTreeMap<String, i64>,
    #[serde(default)]
    anchor: Option<RawAnchor>,
}

#[derive(Deserialize)]
struct RawAnchor {
    /// 1-based node labels of a parabolic of the (torus-block) quotient.
    parabolic: Vec<usize>,
    /// "sign" or a degree as a string.
    source: String,
}

/// Load and validate the Springer blocks of a group from JSON text.
///
/// `w` is the ambient Coxeter group, `ambient_nodes` (0-based) picks the
/// parabolic that is the group's own Weyl group (all nodes for the full
/// group), and `catalog` supplies the classes and local systems.
pub fn springer_blocks_from_json(
    w: &CoxeterGroup,
    catalog: &UnipotentClassCatalog,
    text: &str,
) -> Result<Vec<SpringerBlock>, Error> {
    let raw: RawSpringer =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("springer JSON: {e}")))?;
    if raw.schema != "greenfn-springer-v1" {
        return Err(Error::Data(format!("unsupported springer schema `{}`", raw.schema)));
    }
    if raw.group != catalog.group {
        return Err(Error::Data(format!(
            "springer data is for `{}`, catalog is `{}`",
            raw.group, catalog.group
        )));
    }
    let ambient: Vec<usize> = raw.ambient_nodes.iter().map(|&n| n - 1).collect();

    let mut blocks = Vec::new();
    for rb in &raw.blocks {
        let levi_nodes: Vec<usize> = rb.levi.iter().map(|&n| n - 1).collect();
        let rel = relative_weyl(w, &ambient, &levi_nodes)?;
        let k = rel.table.row_count();
        if rb.pairs.len() != k {
            return Err(Error::Data(format!(
                "block on {:?}: {} pairs for {} characters",
                rb.levi,
                rb.pairs.len(),
                k
            )));
        }
        let mut used = vec![false; k];
        let mut pairs: Vec<Option<SpringerPair>> = vec![None; k];

        // Two passes: anchored descriptors first, then the rest.
        for anchored in [true, false] {
            for rp in &rb.pairs {
                if rp.ch.anchor.is_some() != anchored {
                    continue;
                }
                let row = resolve_char(w, &rel, &rp.ch, &used)?;
                used[row] = true;
                let class_index = catalog.class_index(&rp.class)?;
                let class = &catalog.classes[class_index];
                let system = if rp.system.is_empty() {
                    AChar::TRIVIAL
                } else {
                    class.char_by_values(&rp.system)?
                };
                pairs[row] = Some(SpringerPair { char_row: row, class_index, system });
            }
        }
        let pairs: Vec<SpringerPair> = pairs
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Data("block leaves characters unassigned".into()))?;

        // The trivial character maps to the top-dimensional class of the block.
        let triv_row = (0..k)
            .find(|&r| {
                rel.table.degrees[r] == 1
                    && rel.table.values[r].iter().all(|v| v == &int(1))
            })
            .expect("trivial character exists");
        let max_dim = pairs
            .iter()
            .map(|p| catalog.classes[p.class_index].dim)
            .max()
            .unwrap();
        if catalog.classes[pairs[triv_row].class_index].dim != max_dim {
            return Err(Error::Data(format!(
                "block on {:?}: trivial character does not map to the top class",
                rb.levi
            )));
        }

        blocks.push(SpringerBlock {
            name: block_name(&rb.levi),
            levi_nodes,
            rel,
            pairs,
            d: -(rb.levi.len() as i64),
            cuspidal_class: rb.cuspidal_class.clone(),
        });
    }

    validate_bijectivity(catalog, &blocks)?;
    Ok(blocks)
}

fn block_name(levi_1based: &[usize]) -> String {
    if levi_1based.is_empty() {
        "T".to_string()
    } else {
        format!(
            "L{}",
            levi_1based.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("")
        )
    }
}

fn resolve_char(
    w: &CoxeterGroup,
    rel: &RelativeWeylGroup,
    rc: &RawChar,
    used: &[bool],
) -> Result<usize, Error> {
    if let Some(anchor) = &rc.anchor {
        let row = resolve_anchor(w, rel, anchor)?;
        if rel.table.degrees[row] != rc.degree {
            return Err(Error::Data(format!(
                "anchored character has degree {}, data says {}",
                rel.table.degrees[row], rc.degree
            )));
        }
        if used[row] {
            return Err(Error::Data("anchored character already assigned".into()));
        }
        return Ok(row);
    }
    let mut candidates = Vec::new();
    'rows: for row in 0..rel.table.row_count() {
        if used[row] || rel.table.degrees[row] != rc.degree {
            continue;
        }
        if let Some(b) = rc.b {
            if rel.table.b_invariants[row] != b {
                continue;
            }
        }
        for (node_label, &val) in &rc.node_values {
            let node: usize = node_label
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad node label `{node_label}`")))?
                - 1;
            let gen_pos = rel
                .node_labels
                .iter()
                .position(|&n| n == node)
                .ok_or_else(|| {
                    Error::Data(format!("node {} is not a quotient generator", node + 1))
                })?;
            let gen_class = rel.quotient.class_of[rel.quotient.gens[gen_pos]];
            if rel.table.values[row][gen_class] != int(val) {
                continue 'rows;
            }
        }
        candidates.push(row);
    }
    match candidates.len() {
        1 => Ok(candidates[0]),
        0 => Err(Error::Data(format!(
            "no unassigned character matches descriptor (degree {}, b {:?})",
            rc.degree, rc.b
        ))),
        _ => Err(Error::Data(format!(
            "descriptor (degree {}, b {:?}) is ambiguous",
            rc.degree, rc.b
        ))),
    }
}

/// Resolve a j-induction anchor inside the quotient group. Only meaningful
/// for the torus block, where the quotient is the ambient Weyl group itself.
fn resolve_anchor(
    w: &CoxeterGroup,
    rel: &RelativeWeylGroup,
    anchor: &RawAnchor,
) -> Result<usize, Error> {
    if !rel.subset.is_empty() {
        return Err(Error::Data("j-induction anchors require the torus block".into()));
    }
    let _ = w;
    let g = &rel.quotient;
    let nodes: Vec<usize> = anchor.parabolic.iter().map(|&n| n - 1).collect();
    let h_elements = g.parabolic_elements(&nodes);

    // Build the standalone parabolic to locate the source character.
    let sub_matrix: Vec<Vec<u32>> = nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| g.coxeter_matrix[i][j]).collect())
        .collect();
    let sub = CoxeterGroup::build(sub_matrix)?;
    let sub_table = crate::coxeter::character_table(&sub)?;
    let psi_row = if anchor.source == "sign" {
        (0..sub_table.row_count())
            .find(|&r| {
                sub_table.degrees[r] == 1
                    && (0..sub.class_count()).all(|c| {
                        let rep = sub.classes[c].rep;
                        let sgn = if sub.lengths[rep] % 2 == 0 { 1 } else { -1 };
                        sub_table.values[r][c] == int(sgn)
                    })
            })
            .ok_or_else(|| Error::Data("sign character not found in parabolic".into()))?
    } else {
        let d: u64 = anchor
            .source
            .parse()
            .map_err(|_| Error::Parse(format!("bad anchor source `{}`", anchor.source)))?;
        let rows: Vec<usize> = (0..sub_table.row_count())
            .filter(|&r| sub_table.degrees[r] == d)
            .collect();
        if rows.len() != 1 {
            return Err(Error::Data(format!(
                "anchor source degree {d} is not unique in the parabolic"
            )));
        }
        rows[0]
    };

    // Map ambient parabolic elements to standalone elements via words.
    let mut sub_elt_of = BTreeMap::new();
    for &e in &h_elements {
        // Reduce the ambient word to the parabolic generators.
        let word: Vec<usize> = g
            .word(e)
            .iter()
            .map(|&gi| {
                nodes
                    .iter()
                    .position(|&n| n == gi)
                    .ok_or_else(|| Error::Data("parabolic word uses outside generator".into()))
            })
            .collect::<Result<_, _>>()?;
        sub_elt_of.insert(e, sub.eval_word(&word)?);
    }
    let psi: Vec<BigRational> = sub_table.values[psi_row].clone();
    let ind = induced_character(
        g,
        &h_elements,
        |e| sub.class_of[sub_elt_of[&e]],
        &psi,
    );
    j_induction(g, &rel.table, &ind)
}

fn validate_bijectivity(
    catalog: &UnipotentClassCatalog,
    blocks: &[SpringerBlock],
) -> Result<(), Error> {
    let mut hit: BTreeMap<(usize, u8), usize> = BTreeMap::new();
    for b in blocks {
        for p in &b.pairs {
            *hit.entry((p.class_index, p.system.0)).or_insert(0) += 1;
        }
    }
    let mut missing = Vec::new();
    let mut repeated = Vec::new();
    for (ci, c) in catalog.classes.iter().enumerate() {
        for ch in c.characters() {
            match hit.get(&(ci, ch.0)) {
                None => missing.push(format!("({}, chi{})", c.label, ch.0)),
                Some(1) => {}
                Some(_) => repeated.push(format!("({}, chi{})", c.label, ch.0)),
            }
        }
    }
    let total: usize = blocks.iter().map(|b| b.pairs.len()).sum();
    if !missing.is_empty() || !repeated.is_empty() || total != catalog.total_finite_classes() {
        return Err(Error::Data(format!(
            "springer map is not jointly bijective; missing: [{}], repeated: [{}]",
            missing.join(", "),
            repeated.join(", ")
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupdata::{catalog_from_json, DataFile, DataSource};

    #[test]
    fn non_bijective_data_is_rejected_with_the_pairs_named() {
        let src = DataSource::embedded();
        let w = crate::coxeter::CoxeterGroup::build(crate::coxeter::coxeter_matrix_d4()).unwrap();
        let catalog = catalog_from_json(&src.read(DataFile::Spin8Classes).unwrap()).unwrap();
        // Corrupt the data: point the torus pair for 53 at 71 instead, so
        // 71's trivial system is hit twice and 53's never.
        let mut v: serde_json::Value =
            serde_json::from_str(&src.read(DataFile::Spin8Springer).unwrap()).unwrap();
        for pair in v["blocks"][0]["pairs"].as_array_mut().unwrap() {
            if pair["class"] == "53" {
                pair["class"] = "71".into();
            }
        }
        let text = v.to_string();
        let err = match springer_blocks_from_json(&w, &catalog, &text) {
            Err(e) => e,
            Ok(_) => panic!("corrupted data was accepted"),
        };
        let msg = err.to_string();
        assert!(msg.contains("not jointly bijective"), "{msg}");
        assert!(msg.contains("53"), "{msg}");
    }

    #[test]
    fn wrong_top_class_is_rejected() {
        let src = DataSource::embedded();
        let w = crate::coxeter::CoxeterGroup::build(crate::coxeter::coxeter_matrix_d4()).unwrap();
        let catalog = catalog_from_json(&src.read(DataFile::Spin8Classes).unwrap()).unwrap();
        // Swap the classes of the trivial and sign characters in the torus block.
        let mut v: serde_json::Value =
            serde_json::from_str(&src.read(DataFile::Spin8Springer).unwrap()).unwrap();
        for pair in v["blocks"][0]["pairs"].as_array_mut().unwrap() {
            if pair["char"]["b"] == 0 {
                pair["class"] = "11111111".into();
            } else if pair["char"]["b"] == 12 {
                pair["class"] = "71".into();
            }
        }
        let text = v.to_string();
        let err = match springer_blocks_from_json(&w, &catalog, &text) {
            Err(e) => e,
            Ok(_) => panic!("corrupted data was accepted"),
        };
        assert!(err.to_string().contains("trivial character"), "{err}");
    }
}
