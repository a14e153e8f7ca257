//! Exit criteria for the toolkit. Runs every criterion, prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use orthosps_core::classical::{classical_properties, ClassicalData};
use orthosps_core::generators::compose_shuffled_traced;
use orthosps_core::io::{load, serialize};
use orthosps_core::rng::SplitMix64;
use orthosps_core::{
    compose_shuffled, decomposition_morphism, direct_union, gen_boolean, gen_mo, lemma_suite, mutate,
    verify_classical_theorems, verify_morphism, Error, MutationKind, OrthoSps, SamplingConfig, Seed, StateSet,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Instance {
    name: String,
    osps: OrthoSps,
}

fn generated() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(Instance { name: format!("boolean({n})"), osps: gen_boolean(n).unwrap() });
    }
    for k in 2..=5 {
        out.push(Instance { name: format!("mo({k})"), osps: gen_mo(k).unwrap() });
    }
    out
}

/// Every ordered choice of one to three parts from
/// {boolean(1), boolean(2), mo(2), mo(3)}, shuffled with a per-combination
/// seed.
fn combinations() -> Vec<Instance> {
    let pool: Vec<(&str, OrthoSps)> = vec![
        ("boolean(1)", gen_boolean(1).unwrap()),
        ("boolean(2)", gen_boolean(2).unwrap()),
        ("mo(2)", gen_mo(2).unwrap()),
        ("mo(3)", gen_mo(3).unwrap()),
    ];
    let mut choices: Vec<Vec<usize>> = Vec::new();
    for len in 1..=3u32 {
        for code in 0..4usize.pow(len) {
            choices.push((0..len).map(|i| code / 4usize.pow(i) % 4).collect());
        }
    }
    choices
        .into_iter()
        .enumerate()
        .map(|(i, pick)| {
            let parts: Vec<OrthoSps> = pick.iter().map(|&p| pool[p].1.clone()).collect();
            let names: Vec<&str> = pick.iter().map(|&p| pool[p].0).collect();
            let seed = 1000 + i as u64;
            Instance {
                name: format!("shuffle[{}; seed {seed}]", names.join(" ⊔ ")),
                osps: compose_shuffled(&parts, Seed(seed)).unwrap(),
            }
        })
        .collect()
}

fn all_instances() -> Vec<Instance> {
    let mut v = generated();
    v.extend(combinations());
    v
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    }
}

/// `(generator, mutation)` pairs for which no mutation of the requested kind
/// exists: boolean(1) has no interior property at all, the other generators
/// have no interior property that is an intersection of two others, and
/// boolean(1) admits only two involutions, neither involutive-antitone and
/// complement-breaking.
fn inapplicable(name: &str, kind: MutationKind) -> bool {
    match kind {
        MutationKind::DropSet => name == "boolean(1)" || name == "boolean(2)" || name.starts_with("mo("),
        MutationKind::UnpairOrtho => name == "boolean(1)",
        _ => false,
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for inst in generated() {
        load(&serialize(&inst.osps)).map_err(|e| format!("{} fails verification: {e}", inst.name))?;
        for kind in MutationKind::ALL {
            for seed in 0..4 {
                match mutate(&inst.osps, kind, Seed(seed)) {
                    Err(Error::MutationInapplicable { .. }) if inapplicable(&inst.name, kind) => {}
                    Err(e) => return Err(format!("{} {kind}: mutate failed: {e}", inst.name)),
                    Ok(_) if inapplicable(&inst.name, kind) => {
                        return Err(format!("{} {kind}: expected no applicable mutation", inst.name))
                    }
                    Ok(raw) => {
                        let text = serialize_raw_via_doc(&raw);
                        let err = match load(&text) {
                            Ok(_) => return Err(format!("{} {kind} seed {seed}: mutant verifies", inst.name)),
                            Err(e) => e,
                        };
                        if !kind.expected_errors().contains(&err.kind()) {
                            return Err(format!("{} {kind} seed {seed}: got {}", inst.name, err.kind()));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    within(start, Duration::from_secs(1), "axiom gate")?;
    Ok(format!("8 generators verify; {checked} mutants fail with their documented kind"))
}

/// Writes a raw instance through the public document types so the mutant
/// goes through the same parse and validation path as a file.
fn serialize_raw_via_doc(raw: &orthosps_core::RawInstance) -> String {
    use orthosps_core::io::{InstanceDocument, PerpRef, PropertyRecord, FORMAT_VERSION};
    let doc = InstanceDocument {
        format_version: FORMAT_VERSION.into(),
        states: raw.states.clone(),
        properties: raw
            .properties
            .iter()
            .map(|p| PropertyRecord {
                name: p.name.clone(),
                kappa: p.kappa.iter().map(|s| raw.states[s].clone()).collect(),
                perp: PerpRef::Index(p.perp),
            })
            .collect(),
    };
    serde_json::to_string(&doc).unwrap()
}

fn criterion_2(instances: &[Instance]) -> Outcome {
    let start = Instant::now();
    let cfg = SamplingConfig::default();
    for inst in instances {
        let data = ClassicalData::new(&inst.osps).map_err(|e| e.to_string())?;
        let c = classical_properties(&inst.osps);
        if c.len() as u128 != 1u128 << data.omega().len() {
            return Err(format!("{}: |C| = {} but |Ω| = {}", inst.name, c.len(), data.omega().len()));
        }
        let report = verify_classical_theorems(&inst.osps, &cfg).map_err(|e| e.to_string())?;
        for claim in ["κ_c is a bijection from C onto P(Ω)", "⋀{ω^⊥ | ω ∉ A} has κ_c-image A for every A ⊆ Ω"] {
            let f = report.finding(claim).ok_or("missing finding")?;
            if !f.passed || f.checked == 0 {
                return Err(format!("{}: {claim}: {:?}", inst.name, f.witnesses));
            }
        }
    }
    within(start, Duration::from_secs(5), "classical isomorphism")?;
    Ok(format!("{} instances: |C| = 2^|Ω|, κ_c injective, every A ⊆ Ω reproduced", instances.len()))
}

fn criterion_3(instances: &[Instance]) -> Outcome {
    let cfg = SamplingConfig::default();
    let mut total = 0;
    for inst in instances {
        let report = verify_classical_theorems(&inst.osps, &cfg).map_err(|e| e.to_string())?;
        for claim in [
            "C is closed under meets and joins",
            "every classical state is an atom of C",
            "C is atomistic",
            "distinct classical states are orthogonal",
        ] {
            let f = report.finding(claim).ok_or("missing finding")?;
            if f.failures > 0 {
                return Err(format!("{}: {claim}: {:?}", inst.name, f.witnesses));
            }
            total += f.checked;
        }
    }
    Ok(format!("{} instances, {total} evaluations, 0 counterexamples", instances.len()))
}

fn criterion_4(instances: &[Instance]) -> Outcome {
    let cfg = SamplingConfig::default();
    let mut total = 0;
    for inst in instances {
        let report = lemma_suite(&inst.osps, &cfg).map_err(|e| e.to_string())?;
        if report.counterexamples() > 0 {
            return Err(format!("{}:\n{report}", inst.name));
        }
        total += report.findings.iter().map(|f| f.checked).sum::<u64>();
    }
    let largest = compose_shuffled(
        &[gen_mo(3).unwrap(), gen_mo(3).unwrap(), gen_boolean(2).unwrap()],
        Seed(77),
    )
    .map_err(|e| e.to_string())?;
    if largest.len() != 256 {
        return Err(format!("largest instance has {} properties", largest.len()));
    }
    let start = Instant::now();
    let report = lemma_suite(&largest, &cfg).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if report.counterexamples() > 0 {
        return Err(format!("mo(3) ⊔ mo(3) ⊔ boolean(2):\n{report}"));
    }
    within(start, Duration::from_secs(30), "lemma suite on 256 properties")?;
    Ok(format!("{} instances, {total} evaluations, 0 counterexamples; 256-property suite in {took:.2?}", instances.len()))
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    for inst in instances {
        let d = decomposition_morphism(&inst.osps).map_err(|e| format!("{}: {e}", inst.name))?;
        let report = verify_morphism(&d.pair, &inst.osps, &d.union.osps);
        if !report.passed || report.findings.iter().any(|f| f.checked == 0) {
            return Err(format!("{}:\n{report}", inst.name));
        }
    }

    let mo2 = gen_mo(2).unwrap();
    let reference: BTreeMap<StateSet, StateSet> =
        (0..mo2.len()).map(|a| (mo2.kappa(a), mo2.kappa(mo2.perp(a)))).collect();
    for seed in 0..10 {
        let (osps, trace) = compose_shuffled_traced(&[mo2.clone(), mo2.clone()], Seed(seed)).unwrap();
        let d = decomposition_morphism(&osps).map_err(|e| e.to_string())?;
        if d.components.len() != 2 {
            return Err(format!("seed {seed}: {} components", d.components.len()));
        }
        for comp in &d.components {
            if comp.osps.len() != 6 || comp.osps.state_count() != 4 {
                return Err(format!("seed {seed}: component of size {}/{}", comp.osps.state_count(), comp.osps.len()));
            }
            // local state → state of the original part
            let origins: Vec<(usize, usize)> = comp.state_embedding.iter().map(|&s| trace[s]).collect();
            let part = origins[0].0;
            if origins.iter().any(|o| o.0 != part) {
                return Err(format!("seed {seed}: component mixes parts"));
            }
            let to_original: Vec<usize> = origins.iter().map(|o| o.1).collect();
            let mapped: BTreeMap<StateSet, StateSet> = (0..comp.osps.len())
                .map(|a| {
                    (comp.osps.kappa(a).map_states(&to_original), comp.osps.kappa(comp.osps.perp(a)).map_states(&to_original))
                })
                .collect();
            if mapped != reference {
                return Err(format!("seed {seed}: block is not κ-isomorphic to mo(2)"));
            }
        }
        let report = verify_morphism(&d.pair, &osps, &d.union.osps);
        if !report.passed {
            return Err(format!("seed {seed}:\n{report}"));
        }
    }
    Ok(format!("{} instances round-trip; mo(2) ⊔ mo(2) recovered for 10 seeds", instances.len()))
}

fn criterion_6() -> Outcome {
    let pool = [
        gen_boolean(1).unwrap(),
        gen_boolean(2).unwrap(),
        gen_boolean(3).unwrap(),
        gen_mo(2).unwrap(),
        gen_mo(3).unwrap(),
        gen_mo(4).unwrap(),
    ];
    let mut rng = SplitMix64::new(Seed(2024));
    for round in 0..20 {
        let count = 1 + rng.below(3);
        let parts: Vec<OrthoSps> = (0..count).map(|_| pool[rng.below(pool.len())].clone()).collect();
        let omega_sum: usize = parts.iter().map(|p| ClassicalData::new(p).unwrap().omega().len()).sum();
        let size_product: usize = parts.iter().map(OrthoSps::len).product();
        let union = direct_union(&parts).map_err(|e| e.to_string())?;
        let shuffled = compose_shuffled(&parts, Seed(round)).map_err(|e| e.to_string())?;
        for osps in [&union.osps, &shuffled] {
            let omega = ClassicalData::new(osps).unwrap().omega().len();
            if omega != omega_sum || osps.len() != size_product {
                return Err(format!(
                    "round {round}: |Ω| = {omega} (want {omega_sum}), |L| = {} (want {size_product})",
                    osps.len()
                ));
            }
        }
    }
    Ok("20 random combinations: |Ω| additive, |L| multiplicative".into())
}

fn criterion_7(instances: &[Instance]) -> Outcome {
    for inst in instances {
        let back = load(&serialize(&inst.osps)).map_err(|e| format!("{}: {e}", inst.name))?;
        if back != inst.osps {
            return Err(format!("{}: round trip changed the instance", inst.name));
        }
    }
    let golden = [
        ("boolean(2)", gen_boolean(2).unwrap(), include_str!("golden/boolean2.json")),
        ("mo(2)", gen_mo(2).unwrap(), include_str!("golden/mo2.json")),
    ];
    for (name, osps, expected) in golden {
        if serialize(&osps) != expected {
            return Err(format!("{name}: serialization differs from golden file"));
        }
    }
    Ok(format!("{} instances round-trip; 2 golden files byte-identical", instances.len()))
}

fn main() {
    let instances = all_instances();
    let criteria: Vec<Criterion> = vec![
        ("1 axiom gate", Box::new(criterion_1)),
        ("2 classical isomorphism", Box::new(|| criterion_2(&instances))),
        ("3 classical structure", Box::new(|| criterion_3(&instances))),
        ("4 decomposition identities", Box::new(|| criterion_4(&instances))),
        ("5 decomposition round trip", Box::new(|| criterion_5(&instances))),
        ("6 counting identities", Box::new(criterion_6)),
        ("7 format round trip", Box::new(|| criterion_7(&instances))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
