use std::collections::BTreeMap;

use serde::Serialize;

use super::{SkeletonComplex, VertexLabel};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::st_bones::Side;
use crate::symbolic::OrderData;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// A label present in one complex only.
    Unmatched { label: VertexLabel, family: Family },
    /// A label carried by more than one vertex of the same complex.
    Duplicate { label: VertexLabel, family: Family },
    /// Corresponding bones list their vertices in different orders.
    BoneOrder { side: Side, order_data: OrderData, first: Vec<VertexLabel>, second: Vec<VertexLabel> },
    /// The vertices around the square come in different orders.
    BoundaryOrder { first: Vec<VertexLabel>, second: Vec<VertexLabel> },
    /// A bone present in one complex only.
    MissingBone { side: Side, order_data: OrderData },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Correspondence {
    /// Pairs of vertex ids `(first, second)` with equal labels, sorted by the
    /// first id.
    Bijection {
        pairs: Vec<(usize, usize)>,
    },
    Counterexample {
        counterexample: Counterexample,
    },
}

fn index(c: &SkeletonComplex) -> std::result::Result<BTreeMap<&VertexLabel, usize>, Counterexample> {
    let mut map = BTreeMap::new();
    for x in &c.vertices {
        if map.insert(&x.label, x.id).is_some() {
            return Err(Counterexample::Duplicate { label: x.label.clone(), family: c.family });
        }
    }
    Ok(map)
}

fn labels(c: &SkeletonComplex, ids: &[usize]) -> Vec<VertexLabel> {
    ids.iter().map(|&i| c.vertices[i].label.clone()).collect()
}

/// Match the vertices of two n-skeletons by label and check that every bone,
/// and the boundary, meets its vertices in the same order in both.
pub fn vertex_correspondence(a: &SkeletonComplex, b: &SkeletonComplex) -> Result<Correspondence> {
    if a.n != b.n {
        return Err(Error::Domain(format!("skeleton orders {} and {} differ", a.n, b.n)));
    }
    let found = |c: Counterexample| Ok(Correspondence::Counterexample { counterexample: c });
    let (ia, ib) = match (index(a), index(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(c), _) | (_, Err(c)) => return found(c),
    };
    for (label, family, other) in ia.keys().map(|l| (*l, a.family, &ib)).chain(ib.keys().map(|l| (*l, b.family, &ia))) {
        if !other.contains_key(label) {
            return found(Counterexample::Unmatched { label: label.clone(), family });
        }
    }
    let bones_b: BTreeMap<(Side, &OrderData), usize> =
        b.bones.iter().enumerate().map(|(k, x)| ((x.side(), x.order_data()), k)).collect();
    for (k, bone) in a.bones.iter().enumerate() {
        let Some(&kb) = bones_b.get(&(bone.side(), bone.order_data())) else {
            return found(Counterexample::MissingBone { side: bone.side(), order_data: bone.order_data().clone() });
        };
        let (first, second) = (labels(a, &a.bone_vertices[k]), labels(b, &b.bone_vertices[kb]));
        if first != second {
            return found(Counterexample::BoneOrder {
                side: bone.side(),
                order_data: bone.order_data().clone(),
                first,
                second,
            });
        }
    }
    if a.bones.len() != b.bones.len() {
        let extra =
            b.bones.iter().find(|x| !a.bones.iter().any(|y| y.side() == x.side() && y.order_data() == x.order_data()));
        if let Some(x) = extra {
            return found(Counterexample::MissingBone { side: x.side(), order_data: x.order_data().clone() });
        }
    }
    let (first, second) = (labels(a, &a.boundary_vertices), labels(b, &b.boundary_vertices));
    if first != second {
        return found(Counterexample::BoundaryOrder { first, second });
    }
    let mut pairs: Vec<(usize, usize)> = ia.iter().map(|(label, &x)| (x, ib[label])).collect();
    pairs.sort_unstable();
    Ok(Correspondence::Bijection { pairs })
}
