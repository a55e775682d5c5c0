//! `cdc check --property P`: one JSON verdict per call.

use crate::io::{emit_json, load, Outcome};
use cdc_core::classes::{
    free_generation_certificate, is_flow_connected, is_positive_opetope, is_simple,
    loop_free_witness, totally_loop_free_witness, FreeGenerationVerdict,
};
use cdc_core::molecules::{certify_constructible, constructible_directed_complex_witness, Budget};
use cdc_core::omega::{certify_molecule, directed_complex_witness};
use cdc_core::topology::{cw_poset_witness, is_recursively_dividable};
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Property {
    /// Every interval of length two is an oriented diamond.
    Thin,
    /// The subset is a constructible molecule.
    Constructible,
    /// The subset is a constructible atom.
    Atom,
    /// Every element closure is a constructible atom.
    Cdc,
    /// The subset is a positive opetope.
    Pope,
    Simple,
    #[value(name = "flowconnected")]
    FlowConnected,
    #[value(name = "loopfree")]
    LoopFree,
    #[value(name = "totallyloopfree")]
    TotallyLoopFree,
    /// The subset is a molecule in the gluing sense.
    Molecule,
    #[value(name = "directedcomplex")]
    DirectedComplex,
    #[value(name = "recdividable")]
    RecDividable,
    #[value(name = "cwposet")]
    CwPoset,
    /// A one-sided certificate that all molecules are freely generated.
    #[value(name = "freegen")]
    FreeGen,
}

impl Property {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped values")
            .get_name()
            .to_string()
    }
}

fn verdict(property: Property, holds: bool, witness: Value) -> Outcome {
    let out = emit_json(json!({ "property": property.name(), "holds": holds, "witness": witness }));
    if holds {
        out
    } else {
        out.with_code(1)
    }
}

fn certified(property: Property, holds: bool, witness: Value, certificate: Value) -> Outcome {
    let out = emit_json(json!({
        "property": property.name(),
        "holds": holds,
        "witness": witness,
        "certificate": certificate,
    }));
    if holds {
        out
    } else {
        out.with_code(1)
    }
}

pub fn run(property: Property, file: &str) -> anyhow::Result<Outcome> {
    let (c, u) = load(file)?;
    Ok(match property {
        Property::Thin => match c.thinness_violation() {
            None => verdict(property, true, Value::Null),
            Some(v) => verdict(property, false, json!(c.describe_violation(&v))),
        },
        Property::Constructible | Property::Atom => {
            let atomic = c.maximal(&u).len() == 1;
            match certify_constructible(&c, &u)? {
                Ok(tree) if matches!(property, Property::Atom) && !atomic => certified(
                    property,
                    false,
                    json!(format!("{} maximal elements", c.maximal(&u).len())),
                    tree.to_json(&c),
                ),
                Ok(tree) => certified(property, true, Value::Null, tree.to_json(&c)),
                Err(r) => certified(property, false, json!(r.to_string()), Value::Null),
            }
        }
        Property::Cdc => match constructible_directed_complex_witness(&c)? {
            None => verdict(property, true, Value::Null),
            Some(w) => verdict(property, false, json!(w.to_string())),
        },
        Property::Pope => verdict(property, is_positive_opetope(&c, &u)?, Value::Null),
        Property::Simple => verdict(property, is_simple(&c, &u)?, Value::Null),
        Property::FlowConnected => verdict(property, is_flow_connected(&c, &u)?, Value::Null),
        Property::LoopFree => match loop_free_witness(&c) {
            None => verdict(property, true, Value::Null),
            Some(w) => verdict(property, false, serde_json::to_value(w)?),
        },
        Property::TotallyLoopFree => match totally_loop_free_witness(&c) {
            None => verdict(property, true, Value::Null),
            Some(w) => verdict(property, false, serde_json::to_value(w)?),
        },
        Property::Molecule => match certify_molecule(&c, &u)? {
            Ok(tree) => certified(property, true, Value::Null, tree.to_json(&c)),
            Err(r) => certified(property, false, json!(r.to_string()), Value::Null),
        },
        Property::DirectedComplex => match directed_complex_witness(&c)? {
            None => verdict(property, true, Value::Null),
            Some(w) => verdict(
                property,
                false,
                json!({ "element": w.element, "reason": w.reason }),
            ),
        },
        Property::RecDividable => verdict(property, is_recursively_dividable(&c, &u)?, Value::Null),
        Property::CwPoset => match cw_poset_witness(&c)? {
            None => verdict(property, true, Value::Null),
            Some(x) => verdict(property, false, json!(x)),
        },
        Property::FreeGen => {
            let cert = free_generation_certificate(&c, Budget::default().composites)?;
            let holds = cert.verdict != FreeGenerationVerdict::Unknown;
            let out = certified(property, holds, Value::Null, serde_json::to_value(&cert)?);
            if cert.truncated {
                out.with_code(3)
            } else {
                out
            }
        }
    })
}
