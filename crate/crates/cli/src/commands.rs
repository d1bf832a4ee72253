use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};
use schur_core::algebra::{is_sring, CoefficientField, SchurPartition, SchurRing};
use schur_core::constructions::{
    self, enumerate_cyclic_srings, is_cyclotomic, lattice_sring, verify_lattice_properties, SubgroupLattice,
};
use schur_core::groups::{all_subgroups, automorphism_generators, is_characteristic, orbits, parse_group, parse_signature, Group, Subgroup};
use schur_core::limits::SUBGROUP_CAP;
use schur_core::ptuple::{automorphism_classes, canonical_tuples, char_lattice, regular_subgroup};
use schur_core::report::SRingReport;
use schur_core::sring_aut::{aut_sring, realize_group};

use crate::{CliError, CliResult, GlobalOpts, LatticeKind, Report};

pub(crate) fn to_json<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Usage(e.to_string()))
}

pub(crate) fn load_group(opts: &GlobalOpts, spec: &str) -> CliResult<Arc<Group>> {
    let g = parse_group(spec)?;
    if g.order() > opts.cap_group_order {
        return Err(CliError::Usage(format!(
            "group of order {} exceeds --cap-group-order {}",
            g.order(),
            opts.cap_group_order
        )));
    }
    Ok(Arc::new(g))
}

pub(crate) fn check_blocks(opts: &GlobalOpts, n: usize) -> CliResult<()> {
    if n > opts.cap_blocks {
        return Err(CliError::Usage(format!("{n} basic sets exceed --cap-blocks {}", opts.cap_blocks)));
    }
    Ok(())
}

/// Blocks as JSON lists whose entries are element indices or element labels.
pub(crate) fn parse_blocks(g: &Group, src: &str) -> CliResult<Vec<Vec<usize>>> {
    let raw: Vec<Vec<Value>> =
        serde_json::from_str(src).map_err(|e| CliError::Usage(format!("blocks must be a JSON list of lists: {e}")))?;
    let labels: HashMap<String, usize> = (0..g.order()).map(|x| (g.label(x), x)).collect();
    raw.into_iter()
        .map(|b| {
            b.into_iter()
                .map(|v| match &v {
                    Value::Number(n) => n
                        .as_u64()
                        .map(|x| x as usize)
                        .filter(|&x| x < g.order())
                        .ok_or_else(|| CliError::Usage(format!("no element {v}"))),
                    Value::String(s) => labels
                        .get(s.as_str())
                        .copied()
                        .ok_or_else(|| CliError::Usage(format!("no element labelled '{s}'"))),
                    _ => Err(CliError::Usage(format!("bad block entry {v}"))),
                })
                .collect()
        })
        .collect()
}

pub(crate) fn sring_report(s: &SchurRing) -> CliResult<Report> {
    let r = SRingReport::new(s)?;
    Ok(Report::new(to_json(&r)?, r.to_text()))
}

fn labels(g: &Group, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x)).collect()
}

pub fn classes(opts: &GlobalOpts, spec: &str) -> CliResult<Report> {
    let g = load_group(opts, spec)?;
    let is_p_group = g.as_product().and_then(|p| p.p_group_signature()).is_some();
    let named: Vec<(Option<String>, Vec<usize>)> = if is_p_group {
        automorphism_classes(&g)?
            .into_iter()
            .map(|(t, c)| (Some(format!("O{t}")), c))
            .collect()
    } else {
        orbits(&g, &automorphism_generators(&g)?).into_iter().map(|o| (None, o)).collect()
    };
    let mut text = format!("{}: {} classes\n", g.describe(), named.len());
    let mut rows = Vec::new();
    for (name, c) in &named {
        let ls = labels(&g, c);
        let _ = writeln!(text, "  {:<12} {:>5}  {{{}}}", name.as_deref().unwrap_or("-"), c.len(), ls.join(", "));
        rows.push(json!({ "type": name, "size": c.len(), "elements": ls }));
    }
    Ok(Report::new(json!({ "group": g.describe(), "classes": rows }), text))
}

pub fn charlattice(spec: &str) -> CliResult<Report> {
    let sig = parse_signature(spec)?;
    let cl = char_lattice(&sig)?;
    let lat = &cl.lattice;
    let name = sig.to_string();
    let covers = lat.covers();
    let joins: Vec<&String> = lat.join_irreducibles().into_iter().map(|i| &lat.labels()[i]).collect();
    let mut text = format!("{name}: {} characteristic subgroups, {} covers\n", lat.len(), covers.len());
    for (i, l) in lat.labels().iter().enumerate() {
        let up: Vec<&str> = covers.iter().filter(|c| c.0 == i).map(|c| lat.labels()[c.1].as_str()).collect();
        let _ = writeln!(text, "  {:>3}  {l:<14} < {}", i + 1, up.join(" "));
    }
    let json = json!({
        "signature": name,
        "nodes": lat.labels(),
        "covers": covers,
        "join_irreducibles": joins,
    });
    Ok(Report::new(json, text).with_dot(lat.to_dot(&name)))
}

fn characteristic_members(g: &Arc<Group>) -> CliResult<Vec<Subgroup>> {
    if let Some(sig) = g.as_product().and_then(|p| p.p_group_signature()) {
        if sig.p() != 2 {
            return canonical_tuples(&sig)
                .iter()
                .map(|t| regular_subgroup(t.tuple(), g).map_err(CliError::from))
                .collect();
        }
    }
    let mut out = Vec::new();
    for h in all_subgroups(g, SUBGROUP_CAP)? {
        if is_characteristic(&h)? {
            out.push(h);
        }
    }
    Ok(out)
}

pub fn latsring(opts: &GlobalOpts, spec: &str, kind: LatticeKind) -> CliResult<Report> {
    let g = load_group(opts, spec)?;
    let l = match kind {
        LatticeKind::Char => SubgroupLattice::new(g.clone(), characteristic_members(&g)?)?,
        LatticeKind::Normal => SubgroupLattice::all_normal(&g)?,
    };
    lattice_report(&l, opts.field)
}

pub(crate) fn lattice_report(l: &SubgroupLattice, field: CoefficientField) -> CliResult<Report> {
    let g = l.group();
    let s = lattice_sring(l, field)?;
    let sring = s
        .sring
        .as_ref()
        .ok_or_else(|| CliError::Usage("the lattice must contain 1 and G".into()))?;
    let verified = verify_lattice_properties(&s);
    let r = SRingReport::new(sring)?;
    let members: Vec<Value> = l
        .members()
        .iter()
        .enumerate()
        .map(|(i, h)| json!({ "name": format!("H{}", i + 1), "order": h.order(), "generators": labels(g, &h.generators()) }))
        .collect();
    let mut text = format!("lattice of {} subgroups\n", l.len());
    for (i, h) in l.members().iter().enumerate() {
        let _ = writeln!(text, "  H{} order {} = <{}>", i + 1, h.order(), labels(g, &h.generators()).join(", "));
    }
    text.push_str(&r.to_text());
    let status = match &verified {
        Ok(()) => "verified".to_string(),
        Err(e) => format!("FAILED: {e}"),
    };
    let _ = writeln!(text, "  lattice properties: {status}");
    let json = json!({ "lattice": members, "sring": to_json(&r)?, "properties": status });
    let mut rep = Report::new(json, text).with_dot(l.to_lattice()?.to_dot(&g.describe()));
    if let Err(e) = verified {
        rep.failure = Some(e.to_string());
    }
    Ok(rep)
}

pub fn check(opts: &GlobalOpts, spec: &str, blocks: &str) -> CliResult<Report> {
    let g = load_group(opts, spec)?;
    let blocks = parse_blocks(&g, blocks)?;
    check_blocks(opts, blocks.len())?;
    let mut seen = vec![false; g.order()];
    for &x in blocks.iter().flatten() {
        if std::mem::replace(&mut seen[x], true) {
            return Err(CliError::Usage(format!("element {} appears twice", g.label(x))));
        }
    }
    if let Some(x) = seen.iter().position(|&b| !b) {
        return Err(CliError::Usage(format!("element {} is in no block", g.label(x))));
    }
    // What remains to fail is an axiom: {1}, inverses, or the products.
    let reason = match SchurPartition::new(g.clone(), blocks.clone()) {
        Ok(p) if is_sring(&p, opts.field) => return sring_report(&SchurRing::new(p, opts.field)?),
        Ok(_) => "a product of block sums is not constant on some block".to_string(),
        Err(e) => e.to_string(),
    };
    let bl: Vec<Vec<String>> = blocks.iter().map(|b| labels(&g, b)).collect();
    let text = format!("{} over {}: not a Schur partition ({reason})\n", g.describe(), opts.field);
    let json = json!({ "group": g.describe(), "field": opts.field, "schur": false, "reason": reason, "blocks": bl });
    let mut rep = Report::new(json, text);
    rep.failure = Some("not a Schur partition".into());
    Ok(rep)
}

pub fn aut(opts: &GlobalOpts, spec: &str, blocks: &str) -> CliResult<Report> {
    let g = load_group(opts, spec)?;
    let blocks = parse_blocks(&g, blocks)?;
    check_blocks(opts, blocks.len())?;
    let s = SchurRing::from_blocks(g.clone(), opts.field, blocks)?;
    let a = aut_sring(&s)?;
    let gens: Vec<&[usize]> = a.generators().iter().map(|p| p.images()).collect();
    let mut elements: Vec<&[usize]> = a.elements().iter().map(|p| p.images()).collect();
    elements.sort();
    let mut text = format!(
        "Aut of a rank-{} S-ring over {} ({}): order {}, {}abelian\n",
        s.dimension(),
        g.describe(),
        opts.field,
        a.order(),
        if a.is_abelian() { "" } else { "non-" }
    );
    for e in &elements {
        let _ = writeln!(text, "  {e:?}");
    }
    let json = json!({
        "group": g.describe(),
        "field": opts.field,
        "blocks": s.blocks(),
        "order": a.order(),
        "abelian": a.is_abelian(),
        "generators": gens,
        "elements": elements,
    });
    Ok(Report::new(json, text))
}

/// `n`, its reports, and counts of all, rational and cyclotomic S-rings.
type Enumerated = (usize, Vec<SRingReport>, [usize; 3]);

pub fn enumerate_cyclic(opts: &GlobalOpts, n: usize, upto: bool) -> CliResult<Report> {
    let ns: Vec<usize> = if upto { (1..=n).collect() } else { vec![n] };
    let field = opts.field;
    let per_n: Vec<CliResult<Enumerated>> = ns
        .par_iter()
        .map(|&m| {
            let mut reports = Vec::new();
            let (mut rational, mut cyclo) = (0, 0);
            let all = enumerate_cyclic_srings(m)?;
            for s in all.iter() {
                let s = if field == CoefficientField::Rationals {
                    s.clone()
                } else {
                    SchurRing::from_blocks(s.group().clone(), field, s.blocks().to_vec())?
                };
                let r = SRingReport::new(&s)?;
                rational += usize::from(r.flags.rational);
                cyclo += usize::from(is_cyclotomic(&s));
                reports.push(r);
            }
            Ok((m, reports, [all.len(), rational, cyclo]))
        })
        .collect();
    let mut text = String::from("   n  S-rings  rational  cyclotomic\n");
    let mut summary = Vec::new();
    let mut all_reports = Vec::new();
    for r in per_n {
        let (m, reports, [count, rational, cyclo]) = r?;
        let _ = writeln!(text, "{m:>4}  {count:>7}  {rational:>8}  {cyclo:>10}");
        summary.push(json!({ "n": m, "srings": count, "rational": rational, "cyclotomic": cyclo }));
        all_reports.push(json!({ "n": m, "reports": reports }));
    }
    Ok(Report::new(json!({ "field": field, "summary": summary, "groups": all_reports }), text))
}

pub fn realize(opts: &GlobalOpts, spec: &str, prime: u64) -> CliResult<Report> {
    let g = load_group(opts, spec)?;
    let r = realize_group(&g, prime)?;
    let mut text = format!(
        "{}: realized over {} with {} nodes\n  S-ring dimension {}, |Aut| = {}\n",
        r.input_group,
        r.signature,
        r.nodes.len(),
        r.sring_dimension,
        r.aut_order
    );
    let check = match r.concrete_crosscheck {
        Some(true) => "agrees",
        Some(false) => "DISAGREES",
        None => "skipped (group too large)",
    };
    let _ = writeln!(text, "  concrete cross-check: {check}");
    for w in &r.iso_witness {
        let _ = writeln!(text, "  {} <- {:?}", w.group_element, w.automorphism);
    }
    let mut rep = Report::new(to_json(&r)?, text).with_dot(r.lattice.dot.clone());
    if r.concrete_crosscheck == Some(false) {
        rep.failure = Some("symbolic and concrete automorphism groups differ".into());
    }
    Ok(rep)
}

pub fn conv_pair(opts: &GlobalOpts, spec: &str) -> CliResult<Report> {
    let g = load_group(opts, spec)?;
    let c = constructions::conv_pair(&g, opts.field)?;
    let r = c.report();
    let text = format!(
        "{}: H = {{{}}}, phi(H) = {{{}}}\n  S1 blocks {:?}\n  S2 blocks {:?}\n  phi on blocks {:?}\n",
        r.group,
        r.subgroup.join(", "),
        r.image.join(", "),
        r.s1_blocks,
        r.s2_blocks,
        r.block_map
    );
    Ok(Report::new(to_json(&r)?, text))
}
