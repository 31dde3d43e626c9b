use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use critmon_core::numsgp::{Presentation, Relation};
use critmon_core::{
    monoid_presentation, saturation_index, Criticality, InvariantReport, MonoidPresentation,
    NorthcottExponents, NorthcottInstance, NumericalSemigroup,
};

pub const SCHEMA: &str = "critmon-1";

/// Numbers that fit in 64 bits are emitted as JSON numbers, the rest as strings.
pub fn big(x: &BigInt) -> Value {
    if let Some(v) = x.to_i64() {
        json!(v)
    } else if let Some(v) = x.to_u64() {
        json!(v)
    } else {
        json!(x.to_string())
    }
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

pub fn instance_json(e: &NorthcottExponents) -> Value {
    serde_json::to_value(e).expect("instance serializes")
}

pub fn presentation_json(pres: &MonoidPresentation, is_prime: bool) -> Value {
    json!({
        "generators": bigs(&pres.weight()),
        "invariant_factors": bigs(&pres.invariant_factors),
        "torsion": bigs(&pres.torsion_moduli),
        "torsion_parts": pres.generators.iter().map(|g| bigs(&g.torsion)).collect::<Vec<_>>(),
        "is_numerical": pres.is_numerical,
        "is_prime": is_prime,
    })
}

pub fn construct(inst: &NorthcottInstance) -> anyhow::Result<Value> {
    let pres = monoid_presentation(inst)?;
    let sat = saturation_index(inst);
    Ok(json!({
        "schema": SCHEMA,
        "instance": instance_json(&inst.to_exponents()),
        "binomials": inst.binomials().relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "presentation": presentation_json(&pres, sat.is_prime),
        "saturation_index": big(&sat.index),
    }))
}

fn criticality(c: Criticality) -> Value {
    match c.as_bool() {
        Some(b) => json!(b),
        None => json!("inconclusive"),
    }
}

pub fn relation_json(r: &Relation) -> Value {
    json!({ "element": r.element, "lhs": r.lhs, "rhs": r.rhs })
}

pub fn semigroup_presentation_json(p: &Presentation) -> Value {
    json!({
        "betti_elements": p.betti_elements(),
        "relations": p.relations.iter().map(relation_json).collect::<Vec<_>>(),
        "uniquely_presented": p.uniquely_presented,
    })
}

pub struct RunReport {
    pub value: Value,
    /// Some oracle comparison failed.
    pub mismatch: bool,
}

/// Closed-form report for one instance, optionally checked against the
/// brute-force oracle. Non-numerical instances keep only the closed forms
/// that do not need a numerical semigroup.
pub fn invariants(inst: &NorthcottInstance, with_oracle: bool, timings: bool) -> anyhow::Result<RunReport> {
    let start = Instant::now();
    let pres = monoid_presentation(inst)?;
    let sat = saturation_index(inst);
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("instance".into(), instance_json(&inst.to_exponents()));
    out.insert("generators".into(), bigs(&pres.weight()));
    out.insert("invariant_factors".into(), bigs(&pres.invariant_factors));
    out.insert("is_numerical".into(), json!(pres.is_numerical));
    out.insert("is_prime".into(), json!(sat.is_prime));
    out.insert("saturation_index".into(), big(&sat.index));

    let fact = critmon_core::factorization_closed(inst);
    out.insert("delta_min".into(), json!(fact.delta_min));
    out.insert("delta_max".into(), json!(fact.delta_max));
    out.insert("catenary".into(), json!(fact.catenary));

    let mut mismatch = false;
    if pres.is_numerical {
        let rep = InvariantReport::compute(inst, &pres)?;
        out.insert("apery".into(), json!(rep.apery));
        out.insert("frobenius".into(), json!(rep.frobenius));
        out.insert("pf".into(), json!(rep.pf));
        out.insert("type".into(), json!(rep.type_));
        out.insert("genus".into(), json!(rep.genus));
        out.insert("wilf_margin".into(), json!(rep.wilf_margin));
        out.insert("N".into(), json!(rep.n_constant));
        out.insert("critical_exponents".into(), json!(inst.critical_exponents()));
        // uniquely presented and critical by construction
        out.insert("uniquely_presented".into(), json!(true));
        out.insert("is_critical".into(), json!(true));
        let closed_done = start.elapsed();

        if with_oracle {
            let gens = pres.numerical_generators()?;
            let s = NumericalSemigroup::from_generators(&gens)?;
            let an = gens[inst.n() - 1];
            let basic = s.basic_invariants();
            let dc = s.delta_and_catenary();
            let presentation = s.betti_and_presentation();
            let table = json!({
                "generators": s.minimal_generators() == gens.as_slice(),
                "apery": s.apery(an)? == rep.apery,
                "frobenius": basic.frobenius == rep.frobenius,
                "pf": basic.pseudo_frobenius == rep.pf,
                "type": basic.type_ == rep.type_,
                "genus": basic.genus == rep.genus,
                "delta_min": dc.delta_min == rep.delta_min,
                "delta_max": dc.delta_max == rep.delta_max,
                "catenary": dc.catenary == rep.catenary,
                "wilf_margin": s.wilf_margin() == rep.wilf_margin,
                "critical_exponents": s.critical_exponents() == inst.critical_exponents(),
                "uniquely_presented": presentation.uniquely_presented,
                "is_critical": s.is_critical() == Criticality::Critical,
            });
            mismatch = table.as_object().unwrap().values().any(|v| v != &json!(true));
            out.insert("oracle".into(), table);
        }
        if timings {
            out.insert(
                "timings_ms".into(),
                json!({
                    "closed": closed_done.as_secs_f64() * 1e3,
                    "total": start.elapsed().as_secs_f64() * 1e3,
                }),
            );
        }
    } else if timings {
        out.insert("timings_ms".into(), json!({ "total": start.elapsed().as_secs_f64() * 1e3 }));
    }
    Ok(RunReport {
        value: Value::Object(out),
        mismatch,
    })
}

pub fn semigroup_summary(s: &NumericalSemigroup) -> Value {
    let basic = s.basic_invariants();
    json!({
        "generators": s.minimal_generators(),
        "frobenius": basic.frobenius,
        "pf": basic.pseudo_frobenius,
        "type": basic.type_,
        "genus": basic.genus,
        "critical_exponents": s.critical_exponents(),
        "is_critical": criticality(s.is_critical()),
    })
}
