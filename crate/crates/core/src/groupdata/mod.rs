//! Algebraic-group bookkeeping: root data for simply connected D4 and its
//! Levi subgroups, twisted central-torus orders, unipotent class catalogs,
//! covering data and the generalized Springer correspondence blocks.
//!
//! The Springer maps and the Spin8 class catalog ship as reviewed JSON and
//! are validated on load (bijectivity, counts) and again by the end-to-end
//! table reproduction. Everything is immutable after load.

pub mod catalog;
pub mod covering;
pub mod datum;
pub mod springer;

use std::path::Path;
use std::sync::Arc;

pub use catalog::{catalog_from_json, sl2_catalog, AChar, UnipClass, UnipotentClassCatalog};
pub use covering::{
    levi124_catalog, levi124_covering, pattern_label, quotient_component_group, CoveringData,
};
pub use datum::{levi, spin8_datum, sublattice_char_poly, GroupDatum, Levi, Twist, CENTER_NAMES};
pub use springer::{springer_blocks_from_json, SpringerBlock, SpringerPair};

use crate::coxeter::CoxeterGroup;
use crate::Error;

/// Which data files the engine consumes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DataFile {
    Spin8Classes,
    Spin8Springer,
    Levi124Springer,
    Sl2Springer,
}

impl DataFile {
    pub fn file_name(self) -> &'static str {
        match self {
            DataFile::Spin8Classes => "spin8_classes.json",
            DataFile::Spin8Springer => "spin8_springer.json",
            DataFile::Levi124Springer => "levi124_springer.json",
            DataFile::Sl2Springer => "sl2_springer.json",
        }
    }

    fn embedded(self) -> &'static str {
        match self {
            DataFile::Spin8Classes => include_str!("../../data/spin8_classes.json"),
            DataFile::Spin8Springer => include_str!("../../data/spin8_springer.json"),
            DataFile::Levi124Springer => include_str!("../../data/levi124_springer.json"),
            DataFile::Sl2Springer => include_str!("../../data/sl2_springer.json"),
        }
    }
}

/// Data source: the embedded copies, or a directory override.
#[derive(Clone, Default)]
pub struct DataSource {
    pub dir: Option<std::path::PathBuf>,
}

impl DataSource {
    pub fn embedded() -> Self {
        Self { dir: None }
    }

    pub fn from_dir<P: AsRef<Path>>(dir: P) -> Self {
        Self { dir: Some(dir.as_ref().to_path_buf()) }
    }

    pub fn read(&self, f: DataFile) -> Result<String, Error> {
        match &self.dir {
            None => Ok(f.embedded().to_string()),
            Some(d) => std::fs::read_to_string(d.join(f.file_name()))
                .map_err(|e| Error::Data(format!("cannot read {}: {e}", f.file_name()))),
        }
    }
}

/// Everything the pipeline needs for one group: its Weyl-group realization
/// (as a parabolic of the ambient D4 where applicable), catalog and blocks.
pub struct GroupContext {
    pub name: String,
    pub weyl: Arc<CoxeterGroup>,
    /// 0-based ambient nodes of this group's own Weyl group.
    pub ambient_nodes: Vec<usize>,
    pub catalog: UnipotentClassCatalog,
    pub blocks: Vec<SpringerBlock>,
    /// |G(q)|.
    pub order_poly: crate::symring::RationalPoly,
    /// Number of positive roots (q to twice this power is the unipotent count).
    pub positive_roots: usize,
}

pub fn spin8_context(src: &DataSource) -> Result<GroupContext, Error> {
    let datum = spin8_datum()?;
    let catalog = catalog_from_json(&src.read(DataFile::Spin8Classes)?)?;
    validate_spin8_catalog(&catalog)?;
    let blocks =
        springer_blocks_from_json(&datum.weyl, &catalog, &src.read(DataFile::Spin8Springer)?)?;
    Ok(GroupContext {
        name: "spin8".into(),
        ambient_nodes: vec![0, 1, 2, 3],
        catalog,
        blocks,
        order_poly: datum.order_poly.clone(),
        positive_roots: datum.weyl.positive_roots.len(),
        weyl: datum.weyl,
    })
}

pub fn levi124_context(
    src: &DataSource,
    weyl: Arc<CoxeterGroup>,
    twist: Twist,
) -> Result<GroupContext, Error> {
    let datum = GroupDatum { weyl: weyl.clone(), order_poly: crate::symring::RationalPoly::one() };
    let l = levi(&datum, &[0, 1, 3], twist)?;
    let catalog = levi124_catalog(&levi124_covering())?;
    let blocks =
        springer_blocks_from_json(&weyl, &catalog, &src.read(DataFile::Levi124Springer)?)?;
    Ok(GroupContext {
        name: format!("levi124-{}", twist.name()),
        ambient_nodes: vec![0, 1, 3],
        catalog,
        blocks,
        order_poly: l.order_poly,
        positive_roots: 3,
        weyl,
    })
}

pub fn sl2_context(src: &DataSource) -> Result<GroupContext, Error> {
    let weyl = Arc::new(CoxeterGroup::build(crate::coxeter::coxeter_matrix_a1_product(1))?);
    let catalog = sl2_catalog();
    let blocks = springer_blocks_from_json(&weyl, &catalog, &src.read(DataFile::Sl2Springer)?)?;
    // |SL2(q)| = q(q^2-1).
    let order_poly = crate::symring::RationalPoly::from_ints(&[0, -1, 0, 1]);
    Ok(GroupContext {
        name: "sl2".into(),
        ambient_nodes: vec![0],
        catalog,
        blocks,
        order_poly,
        positive_roots: 1,
        weyl,
    })
}

fn validate_spin8_catalog(catalog: &UnipotentClassCatalog) -> Result<(), Error> {
    if catalog.classes.len() != 12 {
        return Err(Error::Data(format!(
            "spin8 catalog must have 12 classes, found {}",
            catalog.classes.len()
        )));
    }
    let mut orders: Vec<usize> = catalog.classes.iter().map(|c| c.a_order()).collect();
    orders.sort_unstable();
    if orders != vec![1, 1, 2, 2, 2, 2, 2, 2, 2, 4, 4, 4] {
        return Err(Error::Data("spin8 component-group orders are off".into()));
    }
    if catalog.total_finite_classes() != 28 {
        return Err(Error::Data("spin8 must have 28 finite classes".into()));
    }
    // The regular class is the unique dimension maximum.
    let max = catalog.classes.iter().map(|c| c.dim).max().unwrap();
    let count = catalog.classes.iter().filter(|c| c.dim == max).count();
    if count != 1 {
        return Err(Error::Data("regular class is not the unique maximum".into()));
    }
    Ok(())
}
