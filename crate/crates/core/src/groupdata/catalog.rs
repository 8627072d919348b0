//! Unipotent class catalogs: labeled algebraic classes with dimensions,
//! component groups, finite-class decompositions and center images.
//!
//! Component groups here are elementary abelian 2-groups; elements and
//! characters are bitmasks, with the pairing chi_m(e) = (-1)^popcount(m&e).
//! The Frobenius acts trivially throughout, so the finite classes inside an
//! algebraic class are indexed by the elements of A(u), split class first.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::symring::SignIndet;
use crate::Error;

/// A character of an elementary abelian 2-group, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AChar(pub u8);

impl AChar {
    pub const TRIVIAL: AChar = AChar(0);

    /// Value on an element given as a bitmask: +-1.
    pub fn value(self, elem: u8) -> i64 {
        if (self.0 & elem).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// One algebraic unipotent class.
#[derive(Clone, Debug)]
pub struct UnipClass {
    pub label: String,
    pub dim: u32,
    /// A(u) = (Z/2)^a_rank.
    pub a_rank: u8,
    /// Printable names for the elements of A(u), indexed by bitmask.
    pub elem_names: Vec<String>,
    /// Images of named central elements in A(u).
    pub center_image: BTreeMap<String, u8>,
    /// Finite classes in order: the element of A(u) per column, split first.
    pub finite_order: Vec<u8>,
    /// The character of A(u) whose normalization scalar is undetermined,
    /// together with the sign indeterminate carrying it.
    pub indeterminate: Option<(AChar, SignIndet)>,
}

impl UnipClass {
    pub fn a_order(&self) -> usize {
        1usize << self.a_rank
    }

    pub fn characters(&self) -> Vec<AChar> {
        (0..self.a_order() as u8).map(AChar).collect()
    }

    pub fn finite_count(&self) -> usize {
        self.finite_order.len()
    }

    pub fn finite_label(&self, idx: usize) -> String {
        format!("{},{}", self.label, idx + 1)
    }

    /// Element mask for a named element of A(u); central element names
    /// resolve through the center-image map as well.
    pub fn elem_by_name(&self, name: &str) -> Result<u8, Error> {
        if let Some(i) = self.elem_names.iter().position(|n| n == name) {
            return Ok(i as u8);
        }
        if let Some(&img) = self.center_image.get(name) {
            return Ok(img);
        }
        Err(Error::Data(format!(
            "class {}: unknown component-group element `{name}`",
            self.label
        )))
    }

    /// Resolve a character described by its values on named elements.
    pub fn char_by_values(&self, values: &BTreeMap<String, i64>) -> Result<AChar, Error> {
        let mut matches = Vec::new();
        for c in self.characters() {
            let ok = values.iter().try_fold(true, |acc, (name, &v)| {
                let e = self.elem_by_name(name)?;
                Ok::<bool, Error>(acc && c.value(e) == v)
            })?;
            if ok {
                matches.push(c);
            }
        }
        match matches.len() {
            1 => Ok(matches[0]),
            0 => Err(Error::Data(format!(
                "class {}: no character with the stated values",
                self.label
            ))),
            _ => Err(Error::Data(format!(
                "class {}: character values do not determine a unique character",
                self.label
            ))),
        }
    }
}

/// Labeled unipotent classes of one group, in catalog (display) order.
#[derive(Clone, Debug)]
pub struct UnipotentClassCatalog {
    pub group: String,
    pub classes: Vec<UnipClass>,
}

impl UnipotentClassCatalog {
    pub fn class(&self, label: &str) -> Result<&UnipClass, Error> {
        self.classes
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::Data(format!("unknown class label `{label}`")))
    }

    pub fn class_index(&self, label: &str) -> Result<usize, Error> {
        self.classes
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| Error::Data(format!("unknown class label `{label}`")))
    }

    pub fn class_dimension(&self, label: &str) -> Result<u32, Error> {
        Ok(self.class(label)?.dim)
    }

    pub fn total_finite_classes(&self) -> usize {
        self.classes.iter().map(|c| c.finite_count()).sum()
    }

    /// All (class index, finite index) pairs in display order.
    pub fn finite_classes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (ci, c) in self.classes.iter().enumerate() {
            for fi in 0..c.finite_count() {
                out.push((ci, fi));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawCatalog {
    schema: String,
    group: String,
    classes: Vec<RawClass>,
}

#[derive(Deserialize)]
struct RawClass {
    label: String,
    dim: u32,
    a_rank: u8,
    #[serde(default)]
    elements: Vec<String>,
    #[serde(default)]
    center: BTreeMap<String, String>,
    finite: Vec<String>,
    #[serde(default)]
    indeterminate: Option<RawIndeterminate>,
}

#[derive(Deserialize)]
struct RawIndeterminate {
    /// The central element name on whose kernel the character is trivial
    /// (the character is nontrivial on the other named central elements).
    character_kernel: String,
    sign: String,
}

pub fn catalog_from_json(text: &str) -> Result<UnipotentClassCatalog, Error> {
    let raw: RawCatalog =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog JSON: {e}")))?;
    if raw.schema != "greenfn-classes-v1" {
        return Err(Error::Data(format!("unsupported catalog schema `{}`", raw.schema)));
    }
    let mut classes = Vec::new();
    for rc in raw.classes {
        let order = 1usize << rc.a_rank;
        let elem_names = if rc.elements.is_empty() {
            default_elem_names(rc.a_rank)
        } else {
            rc.elements.clone()
        };
        if elem_names.len() != order {
            return Err(Error::Data(format!(
                "class {}: expected {} element names",
                rc.label, order
            )));
        }
        let mut center_image = BTreeMap::new();
        let mut cls = UnipClass {
            label: rc.label.clone(),
            dim: rc.dim,
            a_rank: rc.a_rank,
            elem_names,
            center_image: BTreeMap::new(),
            finite_order: Vec::new(),
            indeterminate: None,
        };
        for (z, name) in &rc.center {
            center_image.insert(z.clone(), cls.elem_by_name(name)?);
        }
        cls.center_image = center_image;
        let mut seen = vec![false; order];
        for f in &rc.finite {
            let e = cls.elem_by_name(f)?;
            if seen[e as usize] {
                return Err(Error::Data(format!(
                    "class {}: repeated finite class `{f}`",
                    rc.label
                )));
            }
            seen[e as usize] = true;
            cls.finite_order.push(e);
        }
        if cls.finite_order.len() != order {
            return Err(Error::Data(format!(
                "class {}: finite classes must enumerate A(u)",
                rc.label
            )));
        }
        if let Some(ind) = rc.indeterminate {
            let kernel_elem = cls.elem_by_name(&ind.character_kernel)?;
            // The unique character trivial on the named element and nontrivial
            // on the other nontrivial center images.
            let mut values = BTreeMap::new();
            values.insert(ind.character_kernel.clone(), 1i64);
            for (z, &img) in &cls.center_image {
                if img != 0 && img != kernel_elem {
                    values.insert(z.clone(), -1);
                }
            }
            let ch = cls.char_by_values(&values)?;
            cls.indeterminate = Some((ch, SignIndet::from_name(&ind.sign)?));
        }
        classes.push(cls);
    }
    Ok(UnipotentClassCatalog { group: raw.group, classes })
}

fn default_elem_names(a_rank: u8) -> Vec<String> {
    match a_rank {
        0 => vec!["1".to_string()],
        1 => vec!["1".to_string(), "g".to_string()],
        _ => {
            let n = 1usize << a_rank;
            (0..n).map(|i| format!("e{}", i)).collect()
        }
    }
}

/// The SL2 catalog: the trivial class and the regular class whose component
/// group is the center.
pub fn sl2_catalog() -> UnipotentClassCatalog {
    UnipotentClassCatalog {
        group: "sl2".to_string(),
        classes: vec![
            UnipClass {
                label: "11".to_string(),
                dim: 0,
                a_rank: 0,
                elem_names: vec!["1".into()],
                center_image: BTreeMap::from([("z".to_string(), 0u8)]),
                finite_order: vec![0],
                indeterminate: None,
            },
            UnipClass {
                label: "2".to_string(),
                dim: 2,
                a_rank: 1,
                elem_names: vec!["1".into(), "z".into()],
                center_image: BTreeMap::from([("z".to_string(), 1u8)]),
                finite_order: vec![0, 1],
                indeterminate: None,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn achar_pairing() {
        let c = AChar(0b01);
        assert_eq!(c.value(0b00), 1);
        assert_eq!(c.value(0b01), -1);
        assert_eq!(c.value(0b10), 1);
        assert_eq!(c.value(0b11), -1);
    }

    #[test]
    fn sl2_catalog_counts() {
        let c = sl2_catalog();
        assert_eq!(c.total_finite_classes(), 3);
        assert_eq!(c.class_dimension("2").unwrap(), 2);
        assert_eq!(c.class_dimension("11").unwrap(), 0);
    }
}
