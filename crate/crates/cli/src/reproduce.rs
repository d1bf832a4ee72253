//! Named worked examples, each rerun from scratch and compared with its
//! published outcome.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use schur_core::algebra::{
    check_span_closure, check_symbolic_closure, is_sring, symbolic_basic_sets, symbolic_s_sets, w_algebra,
    AlgebraElement, CoefficientField, SchurPartition, SchurRing, SymVec, SymbolicRationalAlgebra,
};
use schur_core::constructions::{
    conv_pair, divisor_sublattice_srings, enumerate_cyclic_srings, exhaustive_srings, normal_sublattice_srings,
    rational_srings,
};
use schur_core::groups::{is_isomorphic, CayleyGroup, CyclicProductGroup, Gf2m, Group, Subgroup};
use schur_core::ptuple::{
    automorphism_classes, canonical_tuples, char_lattice, concrete_group, regular_subgroup, CanonicalTuple,
    LambdaSignature, Tuple,
};
use schur_core::sring_aut::{are_isomorphic, aut_sring, realize_group, sring_isomorphisms, SRingMorphism};
use schur_core::{Error, Result};

use crate::commands::to_json;
use crate::{CliError, CliResult, Report};

pub const EXAMPLE_IDS: [&str; 14] = [
    "table1",
    "table2",
    "z2z8-classes",
    "nonlattice-example",
    "p3-only",
    "z2pow6",
    "ex-nzchar",
    "conv-z2z2",
    "main-z2",
    "main-s3",
    "muzychuk-rational",
    "muzychuk-iso",
    "autcyc",
    "dihedral-rational",
];

const Q: CoefficientField = CoefficientField::Rationals;

#[derive(Serialize)]
struct Check {
    name: String,
    expected: String,
    actual: String,
    passed: bool,
}

#[derive(Serialize, Default)]
struct Outcome {
    id: String,
    passed: bool,
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Outcome {
    fn eq<T: fmt::Display + PartialEq>(&mut self, name: &str, expected: T, actual: T) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn holds(&mut self, name: &str, actual: bool) {
        self.eq(name, true, actual);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn sig(p: u64, l: &[u32]) -> Result<LambdaSignature> {
    LambdaSignature::new(p, l.to_vec())
}

fn zn(n: u64) -> Result<Arc<Group>> {
    Ok(Arc::new(Group::cyclic(n)?))
}

fn fingerprints(v: &[SchurRing]) -> BTreeSet<Vec<Vec<usize>>> {
    v.iter().map(|s| s.partition().fingerprint()).collect()
}

fn joined<I: IntoIterator<Item = S>, S: fmt::Display>(it: I, sep: &str) -> String {
    it.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
}

/// Pictured node lists and covers, with covers numbered from 1.
fn hasse(out: &mut Outcome, lambda: &[u32], nodes: &[&str], covers: &[(usize, usize)]) -> Result<()> {
    let cl = char_lattice(&sig(3, lambda)?)?;
    let labels = cl.lattice.labels();
    out.eq("subgroups", nodes.len(), labels.len());
    out.eq("nodes", nodes.join(" "), labels.join(" "));
    let mut pictured: Vec<(usize, usize)> = covers.to_vec();
    pictured.sort_unstable();
    let mut computed: Vec<(usize, usize)> = cl.lattice.covers().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
    computed.sort_unstable();
    let show = |v: &[(usize, usize)]| joined(v.iter().map(|(a, b)| format!("{a}<{b}")), " ");
    out.eq("covers", show(&pictured), show(&computed));
    Ok(())
}

fn table1(out: &mut Outcome) -> Result<()> {
    let nodes = ["R(0,0)", "R(0,1)", "R(0,2)", "R(1,1)", "R(1,2)", "R(1,3)"];
    hasse(out, &[1, 3], &nodes, &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6)])
}

fn table2(out: &mut Outcome) -> Result<()> {
    let nodes = [
        "R(0,0,0)", "R(0,0,1)", "R(0,0,2)", "R(0,1,1)", "R(0,1,2)", "R(0,1,3)", "R(0,2,2)", "R(0,2,3)", "R(0,2,4)",
        "R(1,1,1)", "R(1,1,2)", "R(1,1,3)", "R(1,2,2)", "R(1,2,3)", "R(1,2,4)", "R(1,3,3)", "R(1,3,4)", "R(1,3,5)",
    ];
    let covers = [
        (1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (4, 10), (5, 6), (5, 7), (5, 11), (10, 11), (6, 8), (6, 12),
        (7, 8), (7, 13), (11, 12), (11, 13), (8, 9), (8, 14), (12, 14), (13, 14), (9, 15), (14, 15), (14, 16),
        (15, 17), (16, 17), (17, 18),
    ];
    hasse(out, &[1, 3, 5], &nodes, &covers)
}

fn z2z8_classes(out: &mut Outcome) -> Result<()> {
    let g = Group::product(vec![2, 8])?;
    let label = |a: u32, b: u32| format!("({a},{b})");
    let set = |v: Vec<String>| format!("{{{}}}", joined(v.into_iter().collect::<BTreeSet<_>>(), ","));
    let odd: Vec<String> = (0..8).filter(|b| b % 2 == 1).flat_map(|b| [label(0, b), label(1, b)]).collect();
    let expected: BTreeSet<String> = [
        vec![label(0, 0)],
        vec![label(0, 4)],
        vec![label(0, 2), label(0, 6)],
        vec![label(1, 0), label(1, 4)],
        vec![label(1, 2), label(1, 6)],
        odd,
    ]
    .into_iter()
    .map(set)
    .collect();
    let classes = automorphism_classes(&g)?;
    let actual: BTreeSet<String> = classes
        .iter()
        .map(|(_, c)| set(c.iter().map(|&x| g.label(x)).collect()))
        .collect();
    out.eq("classes", 6, classes.len());
    out.eq("elements", joined(&expected, " "), joined(&actual, " "));
    Ok(())
}

const H_TABLE1: [&[u32]; 6] = [&[0, 0], &[0, 1], &[0, 2], &[1, 1], &[1, 2], &[1, 3]];

fn nonlattice_example(out: &mut Outcome) -> Result<()> {
    let s = sig(3, &[1, 3])?;
    let g = concrete_group(&s)?;
    let hs: Vec<Subgroup> = H_TABLE1
        .iter()
        .map(|t| regular_subgroup(&Tuple(t.to_vec()), &g))
        .collect::<Result<_>>()?;
    let bar = |h: &Subgroup| AlgebraElement::simple(g.clone(), Q, h.elements());
    let basis = vec![bar(&hs[0]), bar(&hs[1]), bar(&hs[2]).add(&bar(&hs[3]))?, bar(&hs[4]), bar(&hs[5])];
    out.holds("span closed over Z3 x Z27", check_span_closure(&basis, true)?.is_none());
    let sr = SchurRing::from_span(&basis)?;
    out.eq("dimension", 5, sr.dimension());
    out.holds("rational", sr.is_rational()?);
    let name = |elements: &[usize]| {
        hs.iter()
            .position(|h| h.elements() == elements)
            .map_or_else(|| "?".to_string(), |i| format!("H{}", i + 1))
    };
    let subs = joined(sr.s_subgroups()?.iter().map(|h| name(h.elements())), " ");
    out.eq("S-subgroups", "H1 H2 H5 H6".to_string(), subs);

    let s5 = sig(5, &[1, 3])?;
    let a = w_algebra(&s5)?;
    let h: Vec<usize> = H_TABLE1
        .iter()
        .map(|t| {
            let c = CanonicalTuple::new(Tuple(t.to_vec()), &s5)?;
            a.index_of(&c).ok_or_else(|| Error::InvalidTuple(format!("{c} is not a node")))
        })
        .collect::<Result<_>>()?;
    let vs = vec![a.unit(h[0]), a.unit(h[1]), a.vector(&[(h[2], 1), (h[3], 1)])?, a.unit(h[4]), a.unit(h[5])];
    let c = check_symbolic_closure(&a, &vs);
    out.holds("closed symbolically at p=5", c.closed);
    out.eq("symbolic dimension", 5, c.dimension);
    let ss = joined(symbolic_s_sets(&a, &vs).iter().map(|&k| format!("H{}", h.iter().position(|&x| x == k).map_or(0, |i| i + 1))), " ");
    out.eq("symbolic S-subgroups", "H1 H2 H5 H6".to_string(), ss);
    Ok(())
}

fn p3_vectors(p: u64) -> Result<(SymbolicRationalAlgebra, Vec<SymVec>)> {
    let a = w_algebra(&sig(p, &[1, 3, 5])?)?;
    // H_k is the k-th canonical tuple in lexicographic order.
    let h = |k: usize| k - 1;
    let vs = vec![
        a.unit(h(1)),
        a.unit(h(5)),
        a.vector(&[(h(6), 1), (h(7), 1), (h(8), -1), (h(11), -1)])?,
        a.vector(&[(h(8), 1), (h(11), 3), (h(12), -1), (h(13), -1)])?,
        a.unit(h(14)),
        a.unit(h(18)),
    ];
    Ok((a, vs))
}

fn p3_only(out: &mut Outcome) -> Result<()> {
    for p in [3u64, 5, 7, 11] {
        let (a, vs) = p3_vectors(p)?;
        let c = check_symbolic_closure(&a, &vs);
        out.eq(&format!("closed at p={p}"), p == 3, c.closed);
        match c.witness {
            Some(w) => out.note(format!("p={p}: {w}")),
            None if p == 3 => {
                let blocks = symbolic_basic_sets(&a, &vs)?;
                let show = |b: &[Vec<usize>]| joined(b.iter().map(|x| format!("{{{}}}", joined(x.iter().map(|k| k + 1), ","))), " ");
                let mut want: Vec<Vec<usize>> = vec![
                    vec![1],
                    vec![2, 3, 4, 5],
                    vec![6, 7, 14],
                    vec![12, 13],
                    vec![8, 10, 11],
                    vec![9, 15, 16, 17, 18],
                ]
                .into_iter()
                .map(|b| b.into_iter().map(|k| k - 1).collect())
                .collect();
                want.sort();
                out.eq("O-blocks at p=3", show(&want), show(&blocks));
            }
            None => {}
        }
    }
    // p = 2 lies outside the symbolic algebra, so the span is built concretely.
    let s2 = sig(2, &[1, 3, 5])?;
    let g = concrete_group(&s2)?;
    let ts = canonical_tuples(&s2);
    let bar = |k: usize| -> Result<AlgebraElement> {
        let h = regular_subgroup(ts[k - 1].tuple(), &g)?;
        Ok(AlgebraElement::simple(g.clone(), Q, h.elements()))
    };
    let comb = |terms: &[(usize, i64)]| -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(g.clone(), Q);
        for &(k, c) in terms {
            acc = acc.add(&bar(k)?.scale(&Q.from_int(c)))?;
        }
        Ok(acc)
    };
    let basis = vec![
        bar(1)?,
        bar(5)?,
        comb(&[(6, 1), (7, 1), (8, -1), (11, -1)])?,
        comb(&[(8, 1), (11, 3), (12, -1), (13, -1)])?,
        bar(14)?,
        bar(18)?,
    ];
    let w = check_span_closure(&basis, true)?;
    out.eq("closed at p=2", false, w.is_none());
    if let Some(w) = w {
        out.note(format!("p=2: {w}"));
    }
    Ok(())
}

fn z2pow6(out: &mut Outcome) -> Result<()> {
    let f = Gf2m::new(&[1, 1, 0, 1, 1, 0, 1])?;
    // omega^9 generates GF(8)^*, so C_i = omega^i GF(8)^* are the nine lines.
    let c = |i: u64| -> Vec<usize> { (0..7).map(|j| f.omega_pow(i + 9 * j) as usize).collect() };
    let all: BTreeSet<usize> = (0..9).flat_map(c).collect();
    out.holds("the C_i partition the nonzero elements", all.len() == 63 && !all.contains(&0));
    let big: Vec<usize> = (0..5).flat_map(c).collect();
    let small: Vec<usize> = (5..9).flat_map(c).collect();
    let g = Arc::new(Group::Product(CyclicProductGroup::new(vec![2; 6])?));
    let p = SchurPartition::new(g.clone(), vec![vec![0], big, small])?;
    out.holds("Schur partition", is_sring(&p, Q));
    let s = SchurRing::new(p, Q)?;
    out.holds("primitive", s.is_primitive()?);
    let mut sizes = s.partition().sizes();
    sizes.sort_unstable();
    out.eq("block sizes", "1,28,35".to_string(), joined(&sizes, ","));
    let (mut b2, mut s2) = (s.blocks()[1].clone(), s.blocks()[2].clone());
    let (x, y) = (b2.pop().expect("nonempty"), s2.pop().expect("nonempty"));
    b2.push(y);
    s2.push(x);
    let perturbed = SchurPartition::new(g, vec![vec![0], b2, s2])?;
    out.eq("Schur after swapping two elements", false, is_sring(&perturbed, Q));
    Ok(())
}

fn ex_nzchar(out: &mut Outcome) -> Result<()> {
    let blocks = vec![vec![0], vec![4, 8], vec![1, 5, 9], vec![2, 6, 10], vec![3, 7, 11]];
    let f3 = CoefficientField::prime(3)?;
    let s = SchurRing::from_blocks(zn(12)?, f3, blocks.clone())?;
    let mut vanish = true;
    for i in 2..5 {
        for j in 2..5 {
            vanish &= s.block_sum(i).mul(&s.block_sum(j))?.is_zero();
        }
    }
    out.holds("T_i T_j = 0 over F3 for the order-3 cosets", vanish);
    let a = aut_sring(&s)?;
    out.eq("|Aut| over F3", 6, a.order());
    let table = Group::from_perm_group(&a, 64)?;
    out.holds("Aut over F3 is S3", is_isomorphic(&table, &Group::Table(CayleyGroup::symmetric(3)?))?);
    let rational = SchurRing::from_blocks(zn(12)?, Q, blocks)?;
    out.eq("|Aut| over Q", 2, aut_sring(&rational)?.order());
    Ok(())
}

fn conv_z2z2(out: &mut Outcome) -> Result<()> {
    let g = Arc::new(Group::product(vec![2, 2])?);
    let c = conv_pair(&g, Q)?;
    out.holds("S1 and S2 differ", c.s1.partition().fingerprint() != c.s2.partition().fingerprint());
    let isos = sring_isomorphisms(&c.s1, &c.s2)?;
    out.holds(
        "phi induces an S-ring isomorphism",
        isos.contains(&SRingMorphism { sigma: c.block_map.clone() }),
    );
    let r = c.report();
    out.note(format!("S1 blocks {:?}, S2 blocks {:?}", r.s1_blocks, r.s2_blocks));
    Ok(())
}

fn main_z2(out: &mut Outcome) -> Result<()> {
    let r = realize_group(&Group::cyclic(2)?, 3)?;
    out.eq("|Aut(S)|", 2, r.aut_order);
    out.eq("concrete cross-check", "agrees".to_string(), crosscheck(r.concrete_crosscheck));
    out.note(format!("{} nodes over {}", r.nodes.len(), r.signature));
    Ok(())
}

fn main_s3(out: &mut Outcome) -> Result<()> {
    let r = realize_group(&Group::Table(CayleyGroup::symmetric(3)?), 3)?;
    out.eq("|Aut(S)|", 6, r.aut_order);
    out.eq("isomorphism witnesses", 6, r.iso_witness.len());
    out.note(format!(
        "{} nodes over {}, concrete cross-check {}",
        r.nodes.len(),
        r.signature,
        crosscheck(r.concrete_crosscheck)
    ));
    Ok(())
}

fn crosscheck(c: Option<bool>) -> String {
    match c {
        Some(true) => "agrees",
        Some(false) => "disagrees",
        None => "skipped",
    }
    .to_string()
}

fn muzychuk_rational(out: &mut Outcome) -> Result<()> {
    let results: Vec<Result<Option<usize>>> = (1..=30usize)
        .into_par_iter()
        .map(|n| {
            let mut rational = Vec::new();
            for s in enumerate_cyclic_srings(n)?.iter() {
                if s.is_rational()? {
                    rational.push(s.clone());
                }
            }
            let div = divisor_sublattice_srings(n, Q)?;
            Ok((fingerprints(&rational) != fingerprints(&div)).then_some(n))
        })
        .collect();
    let mut bad = Vec::new();
    for r in results {
        bad.extend(r?);
    }
    out.eq("n <= 30 where rational != divisor-lattice", "none".to_string(), if bad.is_empty() { "none".into() } else { joined(bad, ",") });
    Ok(())
}

fn muzychuk_iso(out: &mut Outcome) -> Result<()> {
    let counts: Vec<Result<(usize, usize)>> = (1..=16usize)
        .into_par_iter()
        .map(|n| {
            let all = enumerate_cyclic_srings(n)?;
            let (mut pairs, mut iso) = (0, 0);
            for i in 0..all.len() {
                for j in 0..all.len() {
                    if i != j {
                        pairs += 1;
                        iso += usize::from(are_isomorphic(&all[i], &all[j])?);
                    }
                }
            }
            Ok((pairs, iso))
        })
        .collect();
    let (mut pairs, mut iso) = (0, 0);
    for c in counts {
        let (p, i) = c?;
        pairs += p;
        iso += i;
    }
    out.eq("isomorphic distinct pairs, n <= 16", 0, iso);
    out.note(format!("{pairs} ordered pairs compared"));
    let mut agree = true;
    for n in 1..=10u64 {
        agree &= fingerprints(&exhaustive_srings(&zn(n)?, Q)?) == fingerprints(&enumerate_cyclic_srings(n as usize)?);
    }
    out.holds("exhaustive search agrees with enumeration, n <= 10", agree);
    Ok(())
}

fn autcyc(out: &mut Outcome) -> Result<()> {
    let mut rings: Vec<SchurRing> = Vec::new();
    for n in 1..=10u64 {
        rings.extend(exhaustive_srings(&zn(n)?, Q)?);
    }
    for n in 1..=24usize {
        rings.extend(enumerate_cyclic_srings(n)?.iter().cloned());
    }
    let flags: Vec<Result<bool>> = rings.par_iter().map(|s| Ok(aut_sring(s)?.is_abelian())).collect();
    let mut non_abelian = 0;
    for f in flags {
        non_abelian += usize::from(!f?);
    }
    out.eq("S-rings over Z_n with non-abelian Aut", 0, non_abelian);
    out.note(format!("{} S-rings checked", rings.len()));
    Ok(())
}

fn dihedral_rational(out: &mut Outcome) -> Result<()> {
    for n in [4usize, 5, 6] {
        let g = Arc::new(Group::Table(CayleyGroup::dihedral(n)?));
        let rat = fingerprints(&rational_srings(&g, Q)?);
        let charl = fingerprints(&normal_sublattice_srings(&g, Q, true)?);
        let norm = fingerprints(&normal_sublattice_srings(&g, Q, false)?);
        out.holds(&format!("D{n}: rational = characteristic-lattice S-rings"), rat == charl);
        out.holds(&format!("D{n}: rational within normal-lattice S-rings"), rat.is_subset(&norm));
        out.note(format!("D{n}: {} rational S-rings", rat.len()));
    }
    Ok(())
}

fn pipeline(id: &str) -> Option<fn(&mut Outcome) -> Result<()>> {
    Some(match id {
        "table1" => table1,
        "table2" => table2,
        "z2z8-classes" => z2z8_classes,
        "nonlattice-example" => nonlattice_example,
        "p3-only" => p3_only,
        "z2pow6" => z2pow6,
        "ex-nzchar" => ex_nzchar,
        "conv-z2z2" => conv_z2z2,
        "main-z2" => main_z2,
        "main-s3" => main_s3,
        "muzychuk-rational" => muzychuk_rational,
        "muzychuk-iso" => muzychuk_iso,
        "autcyc" => autcyc,
        "dihedral-rational" => dihedral_rational,
        _ => return None,
    })
}

fn reproduce_one(id: &str, f: fn(&mut Outcome) -> Result<()>) -> Outcome {
    let mut out = Outcome { id: id.to_string(), ..Default::default() };
    if let Err(e) = f(&mut out) {
        out.checks.push(Check {
            name: "pipeline".into(),
            expected: "completes".into(),
            actual: format!("error: {e}"),
            passed: false,
        });
    }
    out.passed = out.checks.iter().all(|c| c.passed);
    out
}

fn render(o: &Outcome, text: &mut String) {
    let _ = writeln!(text, "{} {}", o.id, if o.passed { "ok" } else { "FAILED" });
    for c in &o.checks {
        if c.passed {
            let _ = writeln!(text, "  ok    {}: {}", c.name, c.actual);
        } else {
            let _ = writeln!(text, "  FAIL  {}\n    - {}\n    + {}", c.name, c.expected, c.actual);
        }
    }
    for n in &o.notes {
        let _ = writeln!(text, "  note  {n}");
    }
}

pub fn run(id: &str) -> CliResult<Report> {
    let ids: Vec<&str> = if id == "all" { EXAMPLE_IDS.to_vec() } else { vec![id] };
    let mut outcomes = Vec::new();
    for id in ids {
        let f = pipeline(id).ok_or_else(|| {
            CliError::Usage(format!("unknown example '{id}'; expected all or one of {}", EXAMPLE_IDS.join(", ")))
        })?;
        outcomes.push(reproduce_one(id, f));
    }
    let mut text = String::new();
    for o in &outcomes {
        render(o, &mut text);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.as_str()).collect();
    let json = if outcomes.len() == 1 { to_json(&outcomes[0])? } else { to_json(&outcomes)? };
    let mut rep = Report::new(json, text);
    if !failed.is_empty() {
        rep.failure = Some(format!("example(s) did not reproduce: {}", failed.join(", ")));
    }
    Ok(rep)
}
