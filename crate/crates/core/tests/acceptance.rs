//! Acceptance suite: one line per criterion, with wall-clock timing.
//!
//! Run with `cargo test -p schur-core --test acceptance --release`.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use schur_core::algebra::{
    check_span_closure, check_symbolic_closure, is_sring, symbolic_basic_sets, symbolic_s_sets, w_algebra,
    AlgebraElement, CoefficientField, SchurPartition, SchurRing, SymVec,
};
use schur_core::constructions::{
    conv_pair, divisor_sublattice_srings, enumerate_cyclic_srings, exhaustive_srings, is_cyclotomic, lattice_sring,
    normal_sublattice_srings, rational_srings, sublattices, symbolic_lattice_sring, units, verify_lattice_properties,
};
use schur_core::groups::{
    all_subgroups, aut_generators, automorphisms_brute_force, factorize, is_characteristic, is_isomorphic, orbits,
    CayleyGroup, CyclicProductGroup, Gf2m, Group, Subgroup,
};
use schur_core::ptuple::{
    all_tuples, automorphism_classes, canonical_tuples, canonicalize, char_lattice, concrete_group, count_classes,
    regular_subgroup, type_of, CanonicalTuple, LambdaSignature, Tuple,
};
use schur_core::sring_aut::{are_isomorphic, aut_sring, realize_group, sring_isomorphisms, SRingMorphism};

type Outcome = Result<String, String>;

const Q: CoefficientField = CoefficientField::Rationals;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn sig(p: u64, l: &[u32]) -> LambdaSignature {
    LambdaSignature::new(p, l.to_vec()).expect("valid signature")
}

fn ct(s: &LambdaSignature, t: &[u32]) -> CanonicalTuple {
    CanonicalTuple::new(Tuple(t.to_vec()), s).expect("canonical")
}

fn zn(n: u64) -> Arc<Group> {
    Arc::new(Group::cyclic(n).expect("cyclic"))
}

/// Nondecreasing positive sequences of length `len` with sum at most `budget`.
fn signatures(len: usize, budget: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, min: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = (len - cur.len()) as u32;
        let mut v = min;
        while v * left <= budget {
            cur.push(v);
            rec(len, v, budget - v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(len, 1, budget, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` as nonincreasing parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n`, by primary decomposition.
fn abelian_groups(n: u64) -> Vec<Vec<u64>> {
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for part in partitions(e) {
            let mut mods: Vec<u64> = part.iter().map(|&k| p.pow(k)).collect();
            mods.sort_unstable();
            for a in &acc {
                let mut m = a.clone();
                m.extend(&mods);
                next.push(m);
            }
        }
        acc = next;
    }
    if n == 1 {
        acc = vec![vec![1]];
    }
    acc
}

fn fingerprints(v: &[SchurRing]) -> BTreeSet<Vec<Vec<usize>>> {
    v.iter().map(|s| s.partition().fingerprint()).collect()
}

/// Strict order and covers by brute force over componentwise comparison.
fn cover_oracle(ts: &[CanonicalTuple]) -> BTreeSet<(usize, usize)> {
    let lt = |a: &CanonicalTuple, b: &CanonicalTuple| a != b && a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x <= y);
    let mut out = BTreeSet::new();
    for (i, a) in ts.iter().enumerate() {
        for (j, b) in ts.iter().enumerate() {
            if lt(a, b) && !ts.iter().any(|c| lt(a, c) && lt(c, b)) {
                out.insert((i, j));
            }
        }
    }
    out
}

// 1 -------------------------------------------------------------------

fn c1() -> Outcome {
    let mut checked = 0;
    for p in [3u64, 5, 7] {
        for n in 1..=4 {
            for l in signatures(n, 10) {
                let s = sig(p, &l);
                let expect: u128 = (0..n)
                    .map(|i| u128::from(l[i] - if i == 0 { 0 } else { l[i - 1] } + 1))
                    .product();
                let got = ok(char_lattice(&s))?.tuples.len() as u128;
                ensure!(got == expect, "p={p} lambda={l:?}: {got} != {expect}");
                ensure!(count_classes(&s) == expect, "count_classes disagrees at {l:?}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} signatures"))
}

// 2 -------------------------------------------------------------------

fn c2() -> Outcome {
    let table1 = ["00", "01", "02", "11", "12", "13"];
    let covers1 = [(1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6)];
    let table2 = [
        "000", "001", "002", "011", "012", "013", "022", "023", "024", "111", "112", "113", "122", "123", "124",
        "133", "134", "135",
    ];
    let covers2 = [
        (1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (4, 10), (5, 6), (5, 7), (5, 11), (10, 11), (6, 8), (6, 12),
        (7, 8), (7, 13), (11, 12), (11, 13), (8, 9), (8, 14), (12, 14), (13, 14), (9, 15), (14, 15), (14, 16),
        (15, 17), (16, 17), (17, 18),
    ];
    for (l, names, covers) in [
        (vec![1, 3], &table1[..], &covers1[..]),
        (vec![1, 3, 5], &table2[..], &covers2[..]),
    ] {
        let s = sig(3, &l);
        let cl = ok(char_lattice(&s))?;
        let got: Vec<String> = cl
            .tuples
            .iter()
            .map(|t| t.as_slice().iter().map(|d| d.to_string()).collect())
            .collect();
        ensure!(got == names, "lambda={l:?}: nodes {got:?}");
        let pictured: BTreeSet<(usize, usize)> = covers.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        let computed: BTreeSet<(usize, usize)> = cl.lattice.covers().into_iter().collect();
        ensure!(computed == pictured, "lambda={l:?}: covers {computed:?}");
        ensure!(cover_oracle(&cl.tuples) == pictured, "oracle disagrees at {l:?}");
    }
    Ok("6 + 18 nodes, 6 + 26 covers".into())
}

// 3 -------------------------------------------------------------------

fn c3() -> Outcome {
    let g = ok(Group::product(vec![2, 8]))?;
    let prod = g.as_product().expect("product").clone();
    let st = |a: i64, b: i64| prod.index_of(&[a, b]);
    let mut expect: Vec<BTreeSet<usize>> = vec![
        [st(0, 0)].into(),
        [st(0, 4)].into(),
        [st(0, 2), st(0, 6)].into(),
        [st(1, 0), st(1, 4)].into(),
        [st(1, 2), st(1, 6)].into(),
        (0..8).filter(|b| b % 2 == 1).flat_map(|b| [st(0, b), st(1, b)]).collect(),
    ];
    let got = ok(automorphism_classes(&g))?;
    let labels: Vec<String> = got.iter().map(|(t, _)| format!("{}", t.tuple())).collect();
    let mut sets: Vec<BTreeSet<usize>> = got.into_iter().map(|(_, c)| c.into_iter().collect()).collect();
    ensure!(sets.len() == 6, "{} classes: {labels:?}", sets.len());
    let mut via_orbits: Vec<BTreeSet<usize>> = orbits(&g, &ok(aut_generators(&g))?)
        .into_iter()
        .map(|o| o.into_iter().collect())
        .collect();
    sets.sort();
    expect.sort();
    via_orbits.sort();
    ensure!(sets == expect, "classes {sets:?}");
    ensure!(via_orbits == expect, "orbits {via_orbits:?}");
    Ok("6 classes elementwise".into())
}

// 4 -------------------------------------------------------------------

fn c4() -> Outcome {
    let mut sigs = Vec::new();
    for (p, budget) in [(2u64, 12u32), (3, 8), (5, 5)] {
        for n in 1..=budget as usize {
            for l in signatures(n, budget) {
                sigs.push(sig(p, &l));
            }
        }
    }
    let results: Vec<Result<usize, String>> = sigs
        .par_iter()
        .map(|s| {
            let g = ok(concrete_group(s))?;
            let orbs = orbits(&g, &ok(aut_generators(&g))?);
            let mut seen = BTreeSet::new();
            for o in &orbs {
                let c: BTreeSet<CanonicalTuple> = o
                    .iter()
                    .map(|&x| canonicalize(&type_of(&g, x).unwrap(), s).unwrap())
                    .collect();
                ensure!(c.len() == 1, "{s:?}: orbit with {} types", c.len());
                ensure!(seen.insert(c.into_iter().next().unwrap()), "{s:?}: type in two orbits");
            }
            ensure!(orbs.len() as u128 == count_classes(s), "{s:?}: orbit count");
            Ok(all_tuples(s).len())
        })
        .collect();
    let mut tuples = 0;
    for r in results {
        tuples += r?;
    }
    // Full automorphism groups by brute force where they are small.
    let mut brute = 0;
    for l in [vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 2], vec![1, 1, 2]] {
        for p in [2u64, 3] {
            let s = sig(p, &l);
            let g = ok(concrete_group(&s))?;
            if g.order() > 81 {
                continue;
            }
            let all = ok(automorphisms_brute_force(&g, 1 << 20))?;
            let orbs = orbits(&g, &all);
            for o in &orbs {
                let c: BTreeSet<_> = o.iter().map(|&x| canonicalize(&type_of(&g, x).unwrap(), &s).unwrap()).collect();
                ensure!(c.len() == 1, "{s:?}: brute-force orbit splits types");
            }
            ensure!(orbs.len() as u128 == count_classes(&s), "{s:?}: brute-force orbit count");
            brute += 1;
        }
    }
    Ok(format!("{} signatures, {tuples} tuples, {brute} brute-force groups", sigs.len()))
}

// 5 -------------------------------------------------------------------

fn c5() -> Outcome {
    let mut lattices = 0;
    for moduli in [vec![12u64], vec![3, 9], vec![2, 8]] {
        let g = Arc::new(ok(Group::product(moduli.clone()))?);
        let subs = ok(all_subgroups(&g, 4096))?;
        let ls = ok(sublattices(&g, &subs))?;
        let errs: Vec<String> = ls
            .par_iter()
            .filter_map(|l| {
                let r = lattice_sring(l, Q).and_then(|s| verify_lattice_properties(&s));
                r.err().map(|e| format!("{moduli:?}: {e}"))
            })
            .collect();
        ensure!(errs.is_empty(), "{}", errs[0]);
        lattices += ls.len();
    }
    for l in [vec![1u32, 3], vec![1, 3, 5]] {
        let s = sig(3, &l);
        let a = ok(w_algebra(&s))?;
        let ts = a.tuples().to_vec();
        for (i, x) in ts.iter().enumerate() {
            for (j, y) in ts.iter().enumerate() {
                let m = a.index_of(&x.meet(y)).expect("meet");
                let jn = a.index_of(&x.join(y)).expect("join");
                ensure!(a.hadamard(&a.unit(i), &a.unit(j)) == a.unit(m), "hadamard rule at {x:?},{y:?}");
                let coeff = num_bigint::BigInt::from(3u32).pow(x.as_slice().iter().zip(y.as_slice()).map(|(p, q)| p.min(q)).sum::<u32>());
                let (k, c) = a.product_rule(i, j);
                ensure!(k == jn && c == coeff, "product rule at {x:?},{y:?}");
            }
        }
        let units: Vec<SymVec> = (0..a.dim()).map(|k| a.unit(k)).collect();
        ensure!(check_symbolic_closure(&a, &units).closed, "full lattice not closed at {l:?}");
        let no_one: Vec<SymVec> = units[1..].to_vec();
        let c = check_symbolic_closure(&a, &no_one);
        ensure!(!c.closed, "closed without 1 at {l:?}");
        ensure!(symbolic_lattice_sring(&s, &ts).is_ok(), "symbolic lattice S-ring at {l:?}");
    }
    // Symbolic products instantiated over Z3 x Z27.
    let s = sig(3, &[1, 3]);
    let a = ok(w_algebra(&s))?;
    let g = ok(concrete_group(&s))?;
    for i in 0..a.dim() {
        let h = ok(regular_subgroup(a.tuples()[i].tuple(), &g))?;
        ensure!(ok(is_characteristic(&h))?, "R{} not characteristic", a.tuples()[i].tuple());
        for j in 0..a.dim() {
            let x = ok(a.instantiate(&a.mul(&a.unit(i), &a.unit(j)), &g))?;
            let y = ok(ok(a.instantiate(&a.unit(i), &g))?.mul(&ok(a.instantiate(&a.unit(j), &g))?))?;
            ensure!(x == y, "instantiated product differs at {i},{j}");
        }
    }
    Ok(format!("{lattices} concrete lattices, 2 symbolic signatures"))
}

// 6 -------------------------------------------------------------------

fn c6() -> Outcome {
    let bad: Vec<String> = (1..=30usize)
        .into_par_iter()
        .filter_map(|n| {
            let r = (|| -> Result<bool, String> {
                let all = ok(enumerate_cyclic_srings(n))?;
                let mut rational = Vec::new();
                for s in all.iter() {
                    if ok(s.is_rational())? {
                        rational.push(s.clone());
                    }
                }
                let div = ok(divisor_sublattice_srings(n, Q))?;
                Ok(fingerprints(&rational) == fingerprints(&div))
            })();
            match r {
                Ok(true) => None,
                Ok(false) => Some(format!("n={n}: sets differ")),
                Err(e) => Some(format!("n={n}: {e}")),
            }
        })
        .collect();
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok("n = 1..30".into())
}

// 7 -------------------------------------------------------------------

fn c7() -> Outcome {
    let pairs: Vec<Result<usize, String>> = (1..=16usize)
        .into_par_iter()
        .map(|n| {
            let all = ok(enumerate_cyclic_srings(n))?;
            let mut count = 0;
            for i in 0..all.len() {
                for j in 0..all.len() {
                    if i != j {
                        ensure!(!ok(are_isomorphic(&all[i], &all[j]))?, "n={n}: S-rings {i} and {j} isomorphic");
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect();
    let mut total = 0;
    for p in pairs {
        total += p?;
    }
    for n in 1..=10u64 {
        let ex = ok(exhaustive_srings(&zn(n), Q))?;
        let en = ok(enumerate_cyclic_srings(n as usize))?;
        ensure!(fingerprints(&ex) == fingerprints(&en), "n={n}: exhaustive {} vs enumerated {}", ex.len(), en.len());
    }
    Ok(format!("{total} ordered pairs, exhaustive agrees for n <= 10"))
}

// 8 -------------------------------------------------------------------

fn c8() -> Outcome {
    let mut rings: Vec<SchurRing> = Vec::new();
    for n in 1..=10u64 {
        rings.extend(ok(exhaustive_srings(&zn(n), Q))?);
    }
    for n in 1..=24usize {
        rings.extend(ok(enumerate_cyclic_srings(n))?.iter().cloned());
    }
    let bad: Vec<String> = rings
        .par_iter()
        .filter_map(|s| match aut_sring(s) {
            Ok(a) if a.is_abelian() => None,
            Ok(_) => Some(format!("non-abelian Aut over Z{}: {:?}", s.group().order(), s.blocks())),
            Err(e) => Some(e.to_string()),
        })
        .collect();
    ensure!(bad.is_empty(), "{}", bad[0]);
    Ok(format!("{} S-rings", rings.len()))
}

// 9 -------------------------------------------------------------------

fn c9() -> Outcome {
    let blocks = vec![vec![0], vec![4, 8], vec![1, 5, 9], vec![2, 6, 10], vec![3, 7, 11]];
    let f3 = ok(CoefficientField::prime(3))?;
    let s = ok(SchurRing::from_blocks(zn(12), f3, blocks.clone()))?;
    for i in 2..5 {
        for j in 2..5 {
            let x = ok(s.block_sum(i).mul(&s.block_sum(j)))?;
            ensure!(x.is_zero(), "T{i} T{j} is nonzero over F3");
            ensure!((0..5).all(|k| s.lambda(i, j, k) == 0), "structure constants at {i},{j}");
        }
    }
    let a = ok(aut_sring(&s))?;
    ensure!(a.order() == 6, "|Aut| = {} over F3", a.order());
    let table = ok(Group::from_perm_group(&a, 64))?;
    let s3 = Group::Table(ok(CayleyGroup::symmetric(3))?);
    ensure!(ok(is_isomorphic(&table, &s3))?, "Aut is not S3");
    let q = ok(SchurRing::from_blocks(zn(12), Q, blocks))?;
    let aq = ok(aut_sring(&q))?.order();
    ensure!(aq == 2, "|Aut| = {aq} over Q");
    Ok("|Aut| = 6 (S3) over F3, 2 over Q".into())
}

// 10 ------------------------------------------------------------------

fn c10() -> Outcome {
    let f = ok(Gf2m::new(&[1, 1, 0, 1, 1, 0, 1]))?;
    let c = |i: u64| -> Vec<usize> { (0..7).map(|j| f.omega_pow(i + 9 * j) as usize).collect() };
    let mut all: BTreeSet<usize> = BTreeSet::new();
    for i in 0..9 {
        all.extend(c(i));
    }
    ensure!(all.len() == 63 && !all.contains(&0), "the C_i do not cover the nonzero elements");
    let big: Vec<usize> = (0..5).flat_map(c).collect();
    let small: Vec<usize> = (5..9).flat_map(c).collect();
    let g = Arc::new(Group::Product(ok(CyclicProductGroup::new(vec![2; 6]))?));
    let p = ok(SchurPartition::new(g.clone(), vec![vec![0], big, small]))?;
    ensure!(is_sring(&p, Q), "not a Schur partition");
    let s = ok(SchurRing::new(p, Q))?;
    ensure!(ok(s.is_primitive())?, "not primitive");
    let mut sizes = s.partition().sizes();
    sizes.sort_unstable();
    ensure!(sizes == vec![1, 28, 35], "sizes {sizes:?}");
    // Moving one element across breaks closure.
    let (mut b2, mut s2) = (s.blocks()[1].clone(), s.blocks()[2].clone());
    let (x, y) = (b2.pop().unwrap(), s2.pop().unwrap());
    b2.push(y);
    s2.push(x);
    ensure!(!is_sring(&ok(SchurPartition::new(g, vec![vec![0], b2, s2]))?, Q), "perturbed partition is Schur");
    Ok("sizes {1, 35, 28}, primitive".into())
}

// 11 ------------------------------------------------------------------

const H_TABLE1: [&[u32]; 6] = [&[0, 0], &[0, 1], &[0, 2], &[1, 1], &[1, 2], &[1, 3]];

fn c11() -> Outcome {
    let s = sig(3, &[1, 3]);
    let g = ok(concrete_group(&s))?;
    let hs: Vec<Subgroup> = H_TABLE1
        .iter()
        .map(|t| regular_subgroup(&Tuple(t.to_vec()), &g))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let bar = |h: &Subgroup| AlgebraElement::simple(g.clone(), Q, h.elements());
    let basis = vec![
        bar(&hs[0]),
        bar(&hs[1]),
        ok(bar(&hs[2]).add(&bar(&hs[3])))?,
        bar(&hs[4]),
        bar(&hs[5]),
    ];
    ensure!(ok(check_span_closure(&basis, true))?.is_none(), "span not closed over Z3 x Z27");
    let sr = ok(SchurRing::from_span(&basis))?;
    ensure!(sr.dimension() == 5, "dimension {}", sr.dimension());
    let subs: BTreeSet<Vec<usize>> = ok(sr.s_subgroups())?.iter().map(|h| h.elements().to_vec()).collect();
    let expect: BTreeSet<Vec<usize>> = [0, 1, 4, 5].iter().map(|&i| hs[i].elements().to_vec()).collect();
    ensure!(subs == expect, "S-subgroups are {} sets", subs.len());

    let s5 = sig(5, &[1, 3]);
    let a = ok(w_algebra(&s5))?;
    let h: Vec<usize> = H_TABLE1.iter().map(|t| a.index_of(&ct(&s5, t)).expect("node")).collect();
    let vs = vec![
        a.unit(h[0]),
        a.unit(h[1]),
        ok(a.vector(&[(h[2], 1), (h[3], 1)]))?,
        a.unit(h[4]),
        a.unit(h[5]),
    ];
    let c = check_symbolic_closure(&a, &vs);
    ensure!(c.closed && c.dimension == 5, "symbolic p=5: {c:?}");
    let ss = symbolic_s_sets(&a, &vs);
    ensure!(ss == vec![h[0], h[1], h[4], h[5]], "symbolic S-sets {ss:?}");
    Ok("dimension 5, S-subgroups {1, H2, H5, G} at p = 3 and 5".into())
}

// 12 ------------------------------------------------------------------

fn c12_vectors(p: u64) -> Result<(schur_core::algebra::SymbolicRationalAlgebra, Vec<SymVec>), String> {
    let s = sig(p, &[1, 3, 5]);
    let a = ok(w_algebra(&s))?;
    ensure!(a.dim() == 18, "{} nodes", a.dim());
    // H_k is the k-th canonical tuple in lexicographic order.
    let h = |k: usize| k - 1;
    let vs = vec![
        a.unit(h(1)),
        a.unit(h(5)),
        ok(a.vector(&[(h(6), 1), (h(7), 1), (h(8), -1), (h(11), -1)]))?,
        ok(a.vector(&[(h(8), 1), (h(11), 3), (h(12), -1), (h(13), -1)]))?,
        a.unit(h(14)),
        a.unit(h(18)),
    ];
    Ok((a, vs))
}

fn c12() -> Outcome {
    let (a, vs) = c12_vectors(3)?;
    let c = check_symbolic_closure(&a, &vs);
    ensure!(c.closed, "p=3 not closed: {:?}", c.witness);
    let blocks = ok(symbolic_basic_sets(&a, &vs))?;
    let mut expect: Vec<Vec<usize>> = vec![
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
    expect.sort();
    ensure!(blocks == expect, "O-blocks {blocks:?}");
    let mut witnesses = Vec::new();
    for p in [5u64, 7, 11] {
        let (a, vs) = c12_vectors(p)?;
        let c = check_symbolic_closure(&a, &vs);
        ensure!(!c.closed && c.witness.is_some(), "p={p} closed");
        witnesses.push(format!("p={p}: {}", c.witness.unwrap()));
    }
    // p = 2 lies outside the symbolic algebra; build the span directly.
    let s2 = sig(2, &[1, 3, 5]);
    let g = ok(concrete_group(&s2))?;
    let ts = canonical_tuples(&s2);
    let bar = |k: usize| -> Result<AlgebraElement, String> {
        let h = ok(regular_subgroup(ts[k - 1].tuple(), &g))?;
        Ok(AlgebraElement::simple(g.clone(), Q, h.elements()))
    };
    let comb = |terms: &[(usize, i64)]| -> Result<AlgebraElement, String> {
        let mut acc = AlgebraElement::zero(g.clone(), Q);
        for &(k, c) in terms {
            acc = ok(acc.add(&bar(k)?.scale(&Q.from_int(c))))?;
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
    let w = ok(check_span_closure(&basis, true))?;
    ensure!(w.is_some(), "p=2 concrete span closed");
    Ok(format!("closed only at p=3; {}; p=2: {}", witnesses.join(", "), w.unwrap()))
}

// 13 ------------------------------------------------------------------

fn c13() -> Outcome {
    let z2 = ok(realize_group(&ok(Group::cyclic(2))?, 3))?;
    ensure!(z2.aut_order == 2, "Z2: |Aut| = {}", z2.aut_order);
    ensure!(z2.concrete_crosscheck == Some(true), "Z2 cross-check {:?}", z2.concrete_crosscheck);
    ensure!(z2.nodes.len() == 6, "Z2: {} nodes", z2.nodes.len());
    let s3 = ok(realize_group(&Group::Table(ok(CayleyGroup::symmetric(3))?), 3))?;
    ensure!(s3.aut_order == 6 && s3.iso_witness.len() == 6, "S3: |Aut| = {}", s3.aut_order);
    let z3 = ok(realize_group(&ok(Group::cyclic(3))?, 3))?;
    ensure!(z3.aut_order == 3 && z3.iso_witness.len() == 3, "Z3: |Aut| = {}", z3.aut_order);
    Ok(format!(
        "Z2 (cross-checked over |P| = 81), S3 ({} nodes), Z3 ({} nodes)",
        s3.nodes.len(),
        z3.nodes.len()
    ))
}

// 14 ------------------------------------------------------------------

fn c14() -> Outcome {
    let mut groups: Vec<Vec<u64>> = Vec::new();
    for n in 1..=32u64 {
        groups.extend(abelian_groups(n));
        groups.push(vec![n]);
    }
    groups.sort();
    groups.dedup();
    let results: Vec<Result<bool, String>> = groups
        .par_iter()
        .map(|m| {
            let g = Arc::new(ok(Group::product(m.clone()))?);
            let cyclic = m.iter().fold(1u64, |a, &b| num_integer::lcm(a, b)) == g.order() as u64;
            match conv_pair(&g, Q) {
                Err(schur_core::Error::Cyclic(_)) if cyclic => Ok(true),
                Err(e) => Err(format!("{m:?}: {e}")),
                Ok(_) if cyclic => Err(format!("{m:?}: cyclic group accepted")),
                Ok(c) => {
                    ensure!(c.s1.partition().fingerprint() != c.s2.partition().fingerprint(), "{m:?}: equal S-rings");
                    for (i, b) in c.s1.blocks().iter().enumerate() {
                        let mut img: Vec<usize> = b.iter().map(|&x| c.automorphism.apply(x)).collect();
                        img.sort_unstable();
                        ensure!(img == c.s2.blocks()[c.block_map[i]], "{m:?}: block {i} not carried");
                    }
                    let isos = ok(sring_isomorphisms(&c.s1, &c.s2))?;
                    let w = SRingMorphism { sigma: c.block_map.clone() };
                    ensure!(isos.contains(&w), "{m:?}: witness not an S-ring isomorphism");
                    Ok(false)
                }
            }
        })
        .collect();
    let (mut cyc, mut non) = (0, 0);
    for r in results {
        if r? {
            cyc += 1;
        } else {
            non += 1;
        }
    }
    Ok(format!("{non} non-cyclic pairs, {cyc} cyclic rejections"))
}

// 15 ------------------------------------------------------------------

fn c15() -> Outcome {
    let mut counts = Vec::new();
    for n in [4usize, 5, 6] {
        let g = Arc::new(Group::Table(ok(CayleyGroup::dihedral(n))?));
        let rat = fingerprints(&ok(rational_srings(&g, Q))?);
        let charl = fingerprints(&ok(normal_sublattice_srings(&g, Q, true))?);
        let norm = fingerprints(&ok(normal_sublattice_srings(&g, Q, false))?);
        ensure!(rat.is_subset(&norm), "D{n}: rational S-ring outside the normal lattices");
        ensure!(rat == charl, "D{n}: {} rational vs {} characteristic-lattice", rat.len(), charl.len());
        counts.push(format!("D{n}: {}", rat.len()));
    }
    Ok(counts.join(", "))
}

// 16 ------------------------------------------------------------------

fn c16() -> Outcome {
    let bad: Vec<String> = (1..=24usize)
        .into_par_iter()
        .flat_map_iter(|n| {
            let all = enumerate_cyclic_srings(n).expect("enumeration");
            let us = units(n);
            let mut errs = Vec::new();
            for (idx, s) in all.iter().enumerate() {
                let maps: BTreeMap<usize, Vec<usize>> = us
                    .iter()
                    .filter_map(|&m| match s.power_block_map(m as i64) {
                        Some(v) => Some((m, v)),
                        None => {
                            errs.push(format!("n={n} S{idx}: power {m} does not permute blocks"));
                            None
                        }
                    })
                    .collect();
                let aut = match aut_sring(s) {
                    Ok(a) => a,
                    Err(e) => {
                        errs.push(e.to_string());
                        continue;
                    }
                };
                let cyclo = is_cyclotomic(s);
                for phi in aut.elements() {
                    for (m, pm) in &maps {
                        if (0..s.dimension()).any(|i| phi.apply(pm[i]) != pm[phi.apply(i)]) {
                            errs.push(format!("n={n} S{idx}: phi does not commute with power {m}"));
                        }
                    }
                    if cyclo {
                        for i in 0..s.dimension() {
                            if !maps.values().any(|pm| pm[i] == phi.apply(i)) {
                                errs.push(format!("n={n} S{idx}: phi(T{i}) is no power of T{i}"));
                            }
                        }
                    }
                }
            }
            errs
        })
        .collect();
    ensure!(bad.is_empty(), "{} violations, first: {}", bad.len(), bad[0]);
    Ok("n = 1..24".into())
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 16] = [
        ("char lattice sizes", c1, secs(1)),
        ("pictured characteristic lattices", c2, secs(1)),
        ("classes of Z2 x Z8", c3, secs(1)),
        ("canonicalization vs orbits", c4, secs(60)),
        ("lattice S-ring identities", c5, secs(10)),
        ("rational S-rings over Z_n", c6, secs(120)),
        ("isomorphic iff equal over Z_n", c7, secs(300)),
        ("abelian Aut over Z_n", c8, secs(300)),
        ("nonzero characteristic over Z12", c9, secs(1)),
        ("primitive S-ring over Z2^6", c10, secs(10)),
        ("non-lattice rational S-ring", c11, secs(5)),
        ("S-ring existing only at p = 3", c12, secs(10)),
        ("groups as Aut(S)", c13, secs(300)),
        ("Cayley-isomorphic conv pairs", c14, secs(60)),
        ("rational S-rings over dihedral groups", c15, secs(300)),
        ("power-map invariants", c16, secs(120)),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let dt = t.elapsed();
        let r = match r {
            Ok(_) if dt > *limit => Err(format!("took {dt:.2?}, limit {limit:?}")),
            other => other,
        };
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if r.is_err() {
            failed += 1;
        }
        println!("[{tag}] {:>2}. {name:<38} {:>10.3?}  {detail}", k + 1, dt);
    }
    println!("{} of 16 passed in {:.2?}", 16 - failed, total.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
