//! JSON artifact formats for the command-line tools. Every artifact embeds
//! the seed, the field spec, and a content hash of its inputs so runs are
//! reproducible and outputs are self-describing.

use crate::algebra::{Algebra, AlgebraTag, Block, Ideal};
use crate::field::FieldSpec;
use crate::group::FiniteGroup;
use crate::module::Module;
use crate::tilting::{SttContext, SttPoset};
use serde_json::{json, Value};

pub fn group_json(g: &FiniteGroup) -> Value {
    let mul: Vec<Vec<u32>> = (0..g.order)
        .map(|i| g.mul[i * g.order..(i + 1) * g.order].to_vec())
        .collect();
    json!({
        "order": g.order,
        "mul": mul,
        "labels": g.labels,
    })
}

fn tag_str(tag: &AlgebraTag) -> &'static str {
    match tag {
        AlgebraTag::GroupAlgebra => "group-algebra",
        AlgebraTag::Block => "block",
        AlgebraTag::Quotient => "quotient",
        AlgebraTag::Custom => "custom",
    }
}

pub fn algebra_json(a: &Algebra) -> Value {
    let d = a.dim;
    let structure: Vec<Vec<Vec<u32>>> = (0..d)
        .map(|i| (0..d).map(|j| a.basis_product(i, j).to_vec()).collect())
        .collect();
    json!({
        "field": a.field.spec(),
        "dim": d,
        "structure": structure,
        "unit": a.unit,
        "tag": tag_str(&a.tag),
        "content_hash": format!("{:016x}", a.content_hash()),
    })
}

pub fn ideal_json(parent: &Algebra, ideal: &Ideal) -> Value {
    json!({
        "parent_hash": format!("{:016x}", parent.content_hash()),
        "dim": ideal.dim(),
        "basis": (0..ideal.space.dim()).map(|i| ideal.space.basis.row(i).to_vec()).collect::<Vec<_>>(),
    })
}

pub fn block_json(b: &Block) -> Value {
    json!({
        "parent_hash": format!("{:016x}", b.parent_hash),
        "idempotent": b.idempotent,
        "dim": b.algebra.dim,
        "basis": (0..b.embed.dim()).map(|i| b.embed.basis.row(i).to_vec()).collect::<Vec<_>>(),
    })
}

pub fn module_json(m: &Module) -> Value {
    json!({
        "algebra_hash": format!("{:016x}", m.algebra.content_hash()),
        "dim": m.dim,
        "action": m.action.iter().map(|a| {
            (0..a.rows).map(|r| a.row(r).to_vec()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn poset_json(ctx: &SttContext, poset: &SttPoset) -> Value {
    let nodes: Vec<Value> = poset
        .nodes
        .iter()
        .map(|n| {
            json!({
                "M": { "classes": n.pair.m_classes, "dims": n.m_dims },
                "P": { "slots": n.pair.p_slots, "dims": n.p_dims },
                "key": format!("{:?}|{:?}", n.pair.m_classes, n.pair.p_slots),
                "certificates": n.certificates,
            })
        })
        .collect();
    json!({
        "algebra_hash": format!("{:016x}", ctx.algebra.content_hash()),
        "nodes": nodes,
        "edges": poset.edges,
        "complete": poset.complete,
        "cap_hit": poset.cap_hit,
        "seed": poset.seed,
    })
}

/// Wrap an artifact with the reproducibility envelope.
pub fn envelope(field: &FieldSpec, seed: u64, input_desc: &str, data: Value) -> Value {
    json!({
        "field": field,
        "seed": seed,
        "input": input_desc,
        "input_hash": format!("{:016x}", crate::fnv1a64(input_desc.as_bytes())),
        "data": data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group_algebra;
    use crate::field::Field;
    use crate::group;
    use std::sync::Arc;

    #[test]
    fn json_shapes() {
        let g = group::cyclic(2).unwrap();
        let v = group_json(&g);
        assert_eq!(v["order"], 2);
        assert_eq!(v["mul"][1][1], 0);
        let a = group_algebra(&g, Arc::new(Field::with_default_poly(2, 1).unwrap())).unwrap();
        let v = algebra_json(&a);
        assert_eq!(v["dim"], 2);
        assert_eq!(v["tag"], "group-algebra");
        let m = Module::regular(&a);
        let v = module_json(&m);
        assert_eq!(v["dim"], 2);
    }

    #[test]
    fn envelope_is_stable() {
        let spec = FieldSpec {
            p: 2,
            r: 1,
            minpoly: vec![0, 1],
        };
        let e1 = envelope(&spec, 7, "blocks cyclic:2", json!({"x": 1}));
        let e2 = envelope(&spec, 7, "blocks cyclic:2", json!({"x": 1}));
        assert_eq!(e1, e2);
    }
}
