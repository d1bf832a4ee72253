//! `construct`: trivial, full, cyclotomic, dot, wedge and lattice S-rings.

use std::sync::Arc;

use num_integer::Integer;
use schur_core::algebra::{CoefficientField, Quotient, SchurRing};
use schur_core::constructions::{
    cyclic_embedding, cyclotomic, cyclotomic_blocks, dot_product, enumerate_cyclic_srings, wedge_product, Embedded,
    SubgroupLattice,
};
use schur_core::groups::{Group, GroupAutomorphism, Subgroup};

use crate::commands::{lattice_report, load_group, sring_report};
use crate::{CliError, CliResult, ConstructArgs, ConstructKind, GlobalOpts, Report};

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn cyclic_order(g: &Group) -> CliResult<usize> {
    match g.as_product() {
        Some(p) if p.rank() <= 1 => Ok(g.order()),
        _ => usage(format!("{} is not written as Z<n>", g.describe())),
    }
}

/// Closes a set of units in `Z_m` under multiplication.
fn unit_closure(m: usize, gens: &[usize]) -> Vec<usize> {
    let mut set = vec![1 % m.max(1)];
    let mut i = 0;
    while i < set.len() {
        for &u in gens {
            let y = set[i] * u % m.max(1);
            if !set.contains(&y) {
                set.push(y);
            }
        }
        i += 1;
    }
    set.sort_unstable();
    set
}

/// An S-ring over `Z_m` named by `trivial`, `full`, `cyclo:<u,...>` or `enum:<i>`.
fn factor(spec: &str, m: usize, field: CoefficientField) -> CliResult<SchurRing> {
    let g = Arc::new(Group::cyclic(m as u64)?);
    let s = spec.trim();
    if s == "trivial" {
        return Ok(SchurRing::trivial(g, field));
    }
    if s == "full" {
        return Ok(SchurRing::full(g, field));
    }
    if let Some(list) = s.strip_prefix("cyclo:") {
        let gens = parse_units(list, m)?;
        return Ok(SchurRing::from_blocks(g, field, cyclotomic_blocks(m, &unit_closure(m, &gens)))?);
    }
    if let Some(i) = s.strip_prefix("enum:") {
        let i: usize = i.parse().map_err(|_| CliError::Usage(format!("bad index in '{s}'")))?;
        let all = enumerate_cyclic_srings(m)?;
        let base = all
            .get(i)
            .ok_or_else(|| CliError::Usage(format!("Z{m} has {} S-rings, no index {i}", all.len())))?;
        return Ok(SchurRing::from_blocks(g, field, base.blocks().to_vec())?);
    }
    usage(format!("factor '{s}' should be trivial, full, cyclo:<units> or enum:<index>"))
}

fn parse_units(list: &str, m: usize) -> CliResult<Vec<usize>> {
    list.split(',')
        .map(|t| {
            let u: usize = t.trim().parse().map_err(|_| CliError::Usage(format!("bad unit '{t}'")))?;
            if u.gcd(&m) != 1 {
                return usage(format!("{u} is not a unit mod {m}"));
            }
            Ok(u % m.max(1))
        })
        .collect()
}

fn cyclotomic_over(g: &Arc<Group>, omega: &[u64], field: CoefficientField) -> CliResult<SchurRing> {
    let p = match g.as_product() {
        Some(p) => p,
        None => return usage("cyclotomic S-rings need an abelian group written as Z<m>x..."),
    };
    let exponent = p.moduli().iter().fold(1u64, |a, &b| a.lcm(&b));
    let mut gens = Vec::new();
    for &m in omega {
        if m.gcd(&exponent) != 1 {
            return usage(format!("{m} is not coprime to the exponent {exponent}"));
        }
        let images: Vec<usize> = (0..p.rank()).map(|i| p.scale(p.generator(i), m as i64)).collect();
        gens.push(GroupAutomorphism::from_images(g, images)?);
    }
    Ok(cyclotomic(g.clone(), &gens, field)?)
}

fn lattice_members(g: &Arc<Group>, args: &ConstructArgs) -> CliResult<Vec<Subgroup>> {
    let mut members = vec![Subgroup::trivial(g.clone()), Subgroup::full(g.clone())];
    if !args.divisors.is_empty() {
        let n = cyclic_order(g)? as u64;
        for &d in &args.divisors {
            if d == 0 || !n.is_multiple_of(d) {
                return usage(format!("{d} does not divide {n}"));
            }
            members.push(Subgroup::generated(g.clone(), &[(n / d) as usize % n as usize])?);
        }
    }
    if let Some(src) = &args.subgroups {
        let gens: Vec<Vec<usize>> = serde_json::from_str(src)
            .map_err(|e| CliError::Usage(format!("--subgroups must be a JSON list of generator lists: {e}")))?;
        for gs in gens {
            if let Some(&x) = gs.iter().find(|&&x| x >= g.order()) {
                return usage(format!("no element {x}"));
            }
            members.push(Subgroup::generated(g.clone(), &gs)?);
        }
    }
    Ok(members)
}

pub fn run(opts: &GlobalOpts, args: &ConstructArgs) -> CliResult<Report> {
    let g = load_group(opts, &args.group)?;
    let field = opts.field;
    let s = match args.kind {
        ConstructKind::Trivial => SchurRing::trivial(g, field),
        ConstructKind::Full => SchurRing::full(g, field),
        ConstructKind::Cyclotomic => cyclotomic_over(&g, &args.omega, field)?,
        ConstructKind::Dot => {
            let n = cyclic_order(&g)?;
            let (a, b) = match args.factors[..] {
                [a, b] if a * b == n && a.gcd(&b) == 1 => (a, b),
                _ => return usage(format!("--factors must be two coprime orders with product {n}")),
            };
            let (sa, sb) = (factor(&args.left, a, field)?, factor(&args.right, b, field)?);
            let (ea, eb) = (cyclic_embedding(a, n), cyclic_embedding(b, n));
            dot_product(g, Embedded { sring: &sa, map: &ea }, Embedded { sring: &sb, map: &eb }, field)?
        }
        ConstructKind::Wedge => {
            let n = cyclic_order(&g)?;
            let (h, k) = match (args.h, args.k) {
                (Some(h), Some(k)) if h > 1 && k < n && k % h == 0 && n % k == 0 => (h, k),
                _ => return usage(format!("wedge needs --h and --k with 1 < h | k | {n} and k < {n}")),
            };
            let hs = Subgroup::generated(g.clone(), &[n / h])?;
            let q = Quotient::new(&hs)?;
            let sk = factor(&args.left, k, field)?;
            let sq = factor(&args.right, n / h, field)?;
            let ek = cyclic_embedding(k, n);
            wedge_product(Embedded { sring: &sk, map: &ek }, &sq, &q)?
        }
        ConstructKind::Lattice => {
            let l = SubgroupLattice::new(g.clone(), lattice_members(&g, args)?)?;
            return lattice_report(&l, field);
        }
    };
    sring_report(&s)
}
