//! Identities relating arbitrary properties to classical ones, evaluated
//! over their whole quantifier domains (or seeded samples of them).

use crate::classical::ClassicalData;
use crate::closure::PropertyIndex;
use crate::error::Result;
use crate::ortho::OrthoSps;
use crate::report::{Finding, Report, SamplingConfig};
use crate::rng::{Seed, SplitMix64};
use crate::stateset::StateSet;

/// Families `x_i` for the distributivity check: all pairs, then seeded
/// random families of one to five properties.
fn families(len: usize, cfg: &SamplingConfig) -> Vec<Vec<PropertyIndex>> {
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            out.push(vec![i, j]);
        }
    }
    let all: Vec<PropertyIndex> = (0..len).collect();
    let mut rng = SplitMix64::new(Seed(cfg.seed ^ 0xFA11));
    for _ in 0..cfg.random_subsets {
        let size = 1 + rng.below(5);
        out.push(rng.sample(&all, size));
    }
    out
}

/// Choices `(a_ω)` with `a_ω ≤ ω` for every `ω`, one entry per block.
fn block_tuples(below: &[Vec<PropertyIndex>], cfg: &SamplingConfig) -> Vec<Vec<PropertyIndex>> {
    let product = below.iter().map(|b| b.len() as u128).fold(1u128, u128::saturating_mul);
    if product <= cfg.tuple_limit as u128 {
        let mut out = vec![Vec::new()];
        for choices in below {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<PropertyIndex>| {
                    choices.iter().map(move |&c| {
                        let mut t = prefix.clone();
                        t.push(c);
                        t
                    })
                })
                .collect();
        }
        out
    } else {
        let mut rng = SplitMix64::new(Seed(cfg.seed ^ 0x7u64));
        (0..cfg.tuple_samples)
            .map(|_| below.iter().map(|b| b[rng.below(b.len())]).collect())
            .collect()
    }
}

/// Evaluates the decomposition identities and reports every counterexample.
pub fn lemma_suite(osps: &OrthoSps, cfg: &SamplingConfig) -> Result<Report> {
    let sps = osps.sps();
    let data = ClassicalData::new(osps)?;
    let c = data.classical();
    let omega = data.omega();
    let n = sps.len();
    let perp = |a: PropertyIndex| osps.perp(a);
    let meet = |a, b| sps.meet2(a, b);
    let join = |a, b| sps.join2(a, b);
    let d = |a: PropertyIndex| sps.describe(a);

    let mut split = Finding::new("x = (x ∧ a) ∨ (x ∧ a^⊥) for x ∈ L, a ∈ C");
    let mut split_k = Finding::new("κ(x) = κ(x ∧ a) ∪ κ(x ∧ a^⊥) for x ∈ L, a ∈ C");
    for &a in c {
        for x in 0..n {
            let (l, r) = (meet(x, a), meet(x, perp(a)));
            let j = join(l, r);
            split.record(j == x, || format!("x = {}, a = {}: got {}", d(x), d(a), d(j)));
            let u = sps.kappa(l) | sps.kappa(r);
            split_k.record(u == sps.kappa(x), || {
                format!("x = {}, a = {}: union is {}", d(x), d(a), sps.roster().render(u))
            });
        }
    }

    let mut perp_join = Finding::new("(x ∨ y)^⊥ = (x^⊥ ∧ a) ∨ (y^⊥ ∧ a^⊥) for x ≤ a, y ≤ a^⊥, a ∈ C");
    let mut restrict = Finding::new("(x ∨ y) ∧ a = x for x ≤ a, y ≤ a^⊥, a ∈ C");
    for &a in c {
        let under_a = sps.below_set(sps.kappa(a));
        let under_pa = sps.below_set(sps.kappa(perp(a)));
        for &x in &under_a {
            for &y in &under_pa {
                let xy = join(x, y);
                let rhs = join(meet(perp(x), a), meet(perp(y), perp(a)));
                perp_join.record(perp(xy) == rhs, || {
                    format!("a = {}, x = {}, y = {}: {} vs {}", d(a), d(x), d(y), d(perp(xy)), d(rhs))
                });
                let r = meet(xy, a);
                restrict.record(r == x, || format!("a = {}, x = {}, y = {}: got {}", d(a), d(x), d(y), d(r)));
            }
        }
    }

    let mut distrib = Finding::new("a ∧ (⋁ x_i) = ⋁ (a ∧ x_i) for a ∈ C");
    let fams = families(n, cfg);
    for &a in c {
        for fam in &fams {
            let lhs = meet(a, sps.join(fam)?);
            let parts: Vec<PropertyIndex> = fam.iter().map(|&x| meet(a, x)).collect();
            let rhs = sps.join(&parts)?;
            distrib.record(lhs == rhs, || {
                let names: Vec<String> = fam.iter().map(|&x| d(x)).collect();
                format!("a = {}, x = [{}]: {} vs {}", d(a), names.join(", "), d(lhs), d(rhs))
            });
        }
    }

    let mut cosplit = Finding::new("a = (a ∧ x) ∨ (a ∧ x^⊥) for a ∈ C, x ∈ L");
    for &a in c {
        for x in 0..n {
            let j = join(meet(a, x), meet(a, perp(x)));
            cosplit.record(j == a, || format!("a = {}, x = {}: got {}", d(a), d(x), d(j)));
        }
    }

    let mut blocks = Finding::new("a = ⋁_ω (a ∧ ω) for a ∈ L");
    let mut blocks_k = Finding::new("κ(a) = ⋃_ω κ(a ∧ ω) for a ∈ L");
    let mut blocks_orth = Finding::new("a ∧ ω ⊥ a ∧ ω' and κ(a ∧ ω) ∩ κ(a ∧ ω') = ∅ for ω ≠ ω'");
    for a in 0..n {
        let pieces: Vec<PropertyIndex> = omega.iter().map(|&w| meet(a, w)).collect();
        let j = sps.join(&pieces)?;
        blocks.record(j == a, || format!("a = {}: got {}", d(a), d(j)));
        let u = pieces.iter().fold(StateSet::empty(), |acc, &p| acc | sps.kappa(p));
        blocks_k.record(u == sps.kappa(a), || format!("a = {}: union is {}", d(a), sps.roster().render(u)));
        for (i, &p) in pieces.iter().enumerate() {
            for &q in &pieces[i + 1..] {
                let ok = osps.properties_orthogonal(p, q) && sps.kappa(p).is_disjoint(sps.kappa(q));
                blocks_orth.record(ok, || format!("a = {}: pieces {} and {}", d(a), d(p), d(q)));
            }
        }
    }

    let mut partition = Finding::new("Σ = ⋃_ω κ(ω) with pairwise disjoint nonempty blocks");
    let cover = omega.iter().fold(StateSet::empty(), |acc, &w| acc | sps.kappa(w));
    partition.record(cover == sps.full(), || format!("blocks cover only {}", sps.roster().render(cover)));
    for (i, &w) in omega.iter().enumerate() {
        partition.record(!sps.kappa(w).is_empty(), || format!("block {} is empty", d(w)));
        for &v in &omega[i + 1..] {
            partition.record(sps.kappa(w).is_disjoint(sps.kappa(v)), || {
                format!("blocks {} and {} overlap", d(w), d(v))
            });
        }
    }

    let mut tuples = Finding::new("κ(⋁_ω a_ω) = ⋃_ω κ(a_ω) with disjoint parts for a_ω ≤ ω");
    let below: Vec<Vec<PropertyIndex>> = omega.iter().map(|&w| sps.below_set(sps.kappa(w))).collect();
    for t in block_tuples(&below, cfg) {
        let j = sps.join(&t)?;
        let u = t.iter().fold(StateSet::empty(), |acc, &a| acc | sps.kappa(a));
        let disjoint = t.iter().map(|&a| sps.kappa(a).len()).sum::<usize>() == u.len();
        tuples.record(sps.kappa(j) == u && disjoint, || {
            let names: Vec<String> = t.iter().map(|&a| d(a)).collect();
            format!("tuple [{}]: join is {}", names.join(", "), d(j))
        });
    }

    Ok(Report::new(
        "decomposition identities",
        vec![split, split_k, perp_join, restrict, distrib, cosplit, blocks, blocks_k, blocks_orth, partition, tuples],
    ))
}
