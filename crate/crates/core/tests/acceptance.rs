//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.
//!
//! Run with `cargo test --release --test acceptance`.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orthomono::field::{Elem, Field};
use orthomono::form::{invariant_line_decompositions, projective_points, QuadraticSpace, DEFAULT_LINE_ENUMERATION_LIMIT};
use orthomono::group::{element_order, MatrixGroup, PermGroup, DEFAULT_BOUND};
use orthomono::linalg::Matrix;
use orthomono::modrep::{eigen_analysis, is_irreducible, pairing_check};
use orthomono::monomial::{orthogonal_group, theorem_sweep, SweepReport};
use orthomono::wreath::{conjugate_into_wreath, maximality_check, o2minus, transitive_solvable_subgroups, uniqueness_oracle, wreath_construct};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<T>(r: orthomono::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn standard(p: u32, n: usize) -> QuadraticSpace {
    QuadraticSpace::standard(&Field::prime(p).unwrap(), n).unwrap()
}

// ---------------------------------------------------------------------------
// 1, 8, 9: theorem sweeps

fn sweeps() -> Result<Vec<SweepReport>, String> {
    [3, 5, 7].iter().map(|&q| e2s(theorem_sweep(3, q, DEFAULT_BOUND))).collect()
}

fn criterion_1(reports: &[SweepReport]) -> Outcome {
    let mut summary = Vec::new();
    for r in reports {
        ensure(r.irreducible_classes() > 0, format!("q={}: no irreducible classes", r.q))?;
        ensure(r.failures() == 0, format!("q={}: {} failures", r.q, r.failures()))?;
        summary.push(format!("q={} {}/{}", r.q, r.passed(), r.irreducible_classes()));
    }
    Ok(summary.join(", "))
}

fn criterion_8(reports: &[SweepReport]) -> Outcome {
    let mut summary = Vec::new();
    for r in reports {
        ensure(r.abelian_checked > 0, format!("q={}: no abelian classes compared", r.q))?;
        ensure(r.all_components_agree(), format!("q={}: component methods disagree", r.q))?;
        summary.push(format!("q={} {}/{}", r.q, r.abelian_agreements, r.abelian_checked));
    }
    Ok(summary.join(", "))
}

fn criterion_9(reports: &[SweepReport]) -> Outcome {
    for r in reports {
        ensure(r.all_derived_det_one(), format!("q={}: derived element with det != 1", r.q))?;
        let f = Field::prime(r.q).unwrap();
        ensure(r.minus_identity_det == f.neg(Elem::ONE), format!("q={}: det(-I) != -1", r.q))?;
    }
    Ok(format!("{} classes", reports.iter().map(|r| r.entries.len()).sum::<usize>()))
}

// ---------------------------------------------------------------------------
// 2: O_3(3)

fn brute_force_o3_order(p: u32) -> usize {
    let f = Field::prime(p).unwrap();
    let b = Matrix::identity(&f, 3);
    let total = (p as usize).pow(9);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let data: Vec<Elem> = (0..9)
                .map(|_| {
                    let d = (c % p as usize) as u32;
                    c /= p as usize;
                    Elem(d)
                })
                .collect();
            let g = Matrix::from_data(&f, 3, 3, data).unwrap();
            g.transpose().mul(&b).mul(&g) == b
        })
        .count()
}

fn criterion_2() -> Outcome {
    let (space, group) = e2s(orthogonal_group(3, 3, DEFAULT_BOUND))?;
    let order = e2s(group.order())?;
    let oracle = brute_force_o3_order(3);
    ensure(order == 48 && oracle == 48, format!("order {order}, brute force {oracle}"))?;
    let emb = e2s(conjugate_into_wreath(&group, &space))?;
    ensure(emb.is_full_wreath, "certificate does not exhibit the full wreath product")?;
    ensure(e2s(emb.k.order())? == 6, "permutation image is not S_3")?;
    Ok("order 48 (brute force 48), O_3(3) = O_1 wr S_3".into())
}

// ---------------------------------------------------------------------------
// 3: solvability boundary

fn criterion_3() -> Outcome {
    let mut out = Vec::new();
    for q in [5, 7] {
        let (space, group) = e2s(orthogonal_group(3, q, DEFAULT_BOUND))?;
        ensure(!e2s(group.is_solvable())?, format!("O_3({q}) reported solvable"))?;
        match orthomono::monomial::monomialize(&group, &space) {
            Err(orthomono::Error::HypothesisViolated(orthomono::Hypothesis::NotSolvable)) => {}
            other => return Err(format!("O_3({q}) not rejected by the solvability filter: {other:?}")),
        }
        out.push(format!("O_3({q}) order {} not solvable", e2s(group.order())?));
    }
    Ok(out.join(", "))
}

// ---------------------------------------------------------------------------
// 4: O_2^-(5)

fn brute_force_line_pairs(group: &MatrixGroup, space: &QuadraticSpace) -> usize {
    let f = space.field();
    let points = projective_points(f, 2, 1000).unwrap();
    let mut count = 0;
    for (i, u) in points.iter().enumerate() {
        for v in &points[i + 1..] {
            if space.q(u).is_zero() || space.q(v).is_zero() || !space.b(u, v).is_zero() {
                continue;
            }
            let line_u = orthomono::linalg::Subspace::from_vectors(f, 2, std::slice::from_ref(u));
            let line_v = orthomono::linalg::Subspace::from_vectors(f, 2, std::slice::from_ref(v));
            let preserved = group.gens().iter().all(|g| {
                let (a, b) = (line_u.image(g), line_v.image(g));
                (a == line_u && b == line_v) || (a == line_v && b == line_u)
            });
            if preserved {
                count += 1;
            }
        }
    }
    count
}

fn criterion_4() -> Outcome {
    let (space, group) = e2s(o2minus(5))?;
    ensure(e2s(group.is_solvable())?, "O_2^-(5) not solvable")?;
    ensure(e2s(is_irreducible(&group))?.is_irreducible(), "O_2^-(5) not irreducible")?;
    let found = e2s(invariant_line_decompositions(&group, &space, DEFAULT_LINE_ENUMERATION_LIMIT))?.len();
    let oracle = brute_force_line_pairs(&group, &space);
    ensure(found == 0 && oracle == 0, format!("{found} invariant decompositions, brute force {oracle}"))?;
    Ok(format!("order {}, solvable, irreducible, 0 invariant line decompositions", e2s(group.order())?))
}

// ---------------------------------------------------------------------------
// 5: maximality at n = 3

/// Every single-element extension, without the double-coset reduction.
fn exhaustive_maximal(w: &MatrixGroup, space: &QuadraticSpace) -> Result<bool, String> {
    let ambient = e2s(space.isometry_group())?;
    let inner: HashSet<Matrix> = e2s(w.elements())?.iter().cloned().collect();
    for x in e2s(ambient.elements())? {
        if inner.contains(x) {
            continue;
        }
        let mut gens = w.gens().to_vec();
        gens.push(x.clone());
        let h = e2s(MatrixGroup::new(space.field(), 3, gens))?;
        if e2s(h.is_solvable())? && e2s(is_irreducible(&h))?.is_irreducible() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    for q in [3, 5, 7] {
        let space = standard(q, 3);
        let w = e2s(wreath_construct(&PermGroup::symmetric(3), &space))?;
        let r = e2s(maximality_check(&w, DEFAULT_BOUND))?;
        ensure(r.is_maximal(), format!("O_1 wr S_3 not maximal over GF({q})"))?;
        if q <= 5 {
            ensure(exhaustive_maximal(&w.group, &space)?, format!("exhaustive sweep disagrees over GF({q})"))?;
        }
        out.push(format!("q={q} maximal ({} double cosets)", r.extensions_tested));
    }
    let space = standard(3, 3);
    let w = e2s(wreath_construct(&PermGroup::cyclic(3), &space))?;
    let r = e2s(maximality_check(&w, DEFAULT_BOUND))?;
    let h = r.counterexample.ok_or("O_1 wr C_3 reported maximal")?;
    let order = e2s(h.order())?;
    ensure(order > 24 && e2s(h.is_solvable())?, "counterexample is not a larger solvable group")?;
    out.push(format!("C_3 counterexample of order {order}"));
    Ok(out.join(", "))
}

// ---------------------------------------------------------------------------
// 6: uniqueness

fn brute_force_invariant_line_triples(group: &MatrixGroup, space: &QuadraticSpace) -> usize {
    let f = space.field();
    let lines: Vec<orthomono::linalg::Subspace> = projective_points(f, 3, 1000)
        .unwrap()
        .into_iter()
        .filter(|v| !space.q(v).is_zero())
        .map(|v| orthomono::linalg::Subspace::from_vectors(f, 3, &[v]))
        .collect();
    let vec_of = |l: &orthomono::linalg::Subspace| l.basis_vectors()[0].clone();
    let mut count = 0;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if !space.b(&vec_of(&lines[i]), &vec_of(&lines[j])).is_zero() {
                continue;
            }
            for k in j + 1..lines.len() {
                let (a, b, c) = (&lines[i], &lines[j], &lines[k]);
                if !space.b(&vec_of(a), &vec_of(c)).is_zero() || !space.b(&vec_of(b), &vec_of(c)).is_zero() {
                    continue;
                }
                let set = [a, b, c];
                if group.gens().iter().all(|g| set.iter().all(|l| set.contains(&&l.image(g)))) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion_6() -> Outcome {
    let mut out = Vec::new();
    for q in [3, 5] {
        let space = standard(q, 3);
        for (name, k) in [("C_3", PermGroup::cyclic(3)), ("S_3", PermGroup::symmetric(3))] {
            let w = e2s(wreath_construct(&k, &space))?;
            let count = e2s(uniqueness_oracle(&w.group, &space))?;
            let oracle = brute_force_invariant_line_triples(&w.group, &space);
            ensure(count == 1 && oracle == 1, format!("q={q} K={name}: {count} decompositions, brute force {oracle}"))?;
            out.push(format!("q={q} {name}"));
        }
    }
    Ok(format!("exactly 1 for {}", out.join(", ")))
}

// ---------------------------------------------------------------------------
// 7: pairing lemma on random coprime-order isometries

fn reflections(space: &QuadraticSpace) -> Vec<Matrix> {
    let f = space.field();
    let n = space.dim();
    let mut out = Vec::new();
    for code in 1..3usize.pow(n as u32) {
        let mut c = code;
        let v: Vec<Elem> = (0..n)
            .map(|_| {
                let d = c % 3;
                c /= 3;
                f.from_int(d as i64 - 1)
            })
            .collect();
        if !space.q(&v).is_zero() {
            out.push(space.reflection(&v).unwrap());
        }
    }
    out
}

fn rank_of(m: &Matrix) -> usize {
    m.rank()
}

/// Violations found by recomputing eigenvectors and pairings directly.
fn pairing_oracle(f: &Matrix, space: &QuadraticSpace) -> Result<usize, String> {
    let e = e2s(eigen_analysis(f, space))?;
    let pairs = e2s(pairing_check(&e, space))?;
    let k = &e.split;
    let fk = e2s(f.extend_scalars(k))?;
    let gram = e2s(space.gram().extend_scalars(k))?;
    let mut violations = 0;
    let total: usize = e.eigenspaces.iter().map(|w| w.dim()).sum();
    if total != space.dim() {
        violations += 1;
    }
    for (i, &(a, _)) in e.eigenvalues.iter().enumerate() {
        for u in e.eigenspaces[i].basis_vectors() {
            if fk.apply(&u) != u.iter().map(|&x| k.mul(a, x)).collect::<Vec<_>>() {
                violations += 1;
            }
        }
    }
    let mut expected_pairs = 0;
    for (i, &(a, _)) in e.eigenvalues.iter().enumerate() {
        for (j, &(b, _)) in e.eigenvalues.iter().enumerate() {
            let us = e.eigenspaces[i].basis_vectors();
            let vs = e.eigenspaces[j].basis_vectors();
            let m: Vec<Vec<Elem>> = us.iter().map(|u| vs.iter().map(|v| {
                let bv = gram.apply(v);
                u.iter().zip(&bv).fold(Elem::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
            }).collect()).collect();
            let nonzero = m.iter().flatten().any(|x| !x.is_zero());
            if k.mul(a, b) == Elem::ONE {
                expected_pairs += 1;
                let perfect = us.len() == vs.len() && rank_of(&Matrix::from_rows(k, &m)) == us.len();
                if !perfect {
                    violations += 1;
                }
            } else if nonzero {
                violations += 1;
            }
        }
    }
    if expected_pairs != pairs.len() {
        violations += 1;
    }
    Ok(violations)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut sampled = 0;
    let mut violations = 0;
    let mut per_case = Vec::new();
    for (n, q) in [(3usize, 3u32), (3, 5), (3, 7), (5, 3)] {
        let space = standard(q, n);
        let refl = reflections(&space);
        let mut count = 0;
        let mut attempts = 0;
        while count < 30 && attempts < 10_000 {
            attempts += 1;
            let len = rng.gen_range(1..=8);
            let f = (0..len).fold(Matrix::identity(space.field(), n), |acc, _| acc.mul(&refl[rng.gen_range(0..refl.len())]));
            let order = element_order(&f);
            if f.is_identity() || order.is_multiple_of(q as u64) {
                continue;
            }
            ensure(e2s(space.is_isometry(&f))?, "sampled element is not an isometry")?;
            violations += pairing_oracle(&f, &space)?;
            count += 1;
        }
        ensure(count == 30, format!("(n,q)=({n},{q}): only {count} coprime elements sampled"))?;
        sampled += count;
        per_case.push(format!("({n},{q})"));
    }
    ensure(sampled >= 100 && violations == 0, format!("{violations} violations in {sampled} elements"))?;
    Ok(format!("{sampled} isometries over {}, 0 violations", per_case.join(" ")))
}

// ---------------------------------------------------------------------------
// 10: transitive solvable subgroups of S_n against a two-generator oracle

type P = Vec<u8>;

fn pmul(a: &P, b: &P) -> P {
    // apply a, then b
    a.iter().map(|&i| b[i as usize]).collect()
}

fn pinv(a: &P) -> P {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

fn pclosure(n: usize, gens: &[P]) -> BTreeSet<P> {
    let id: P = (0..n as u8).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = pmul(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn greedy_gens(n: usize, elements: &BTreeSet<P>) -> Vec<P> {
    let mut gens: Vec<P> = Vec::new();
    let mut span = pclosure(n, &gens);
    for x in elements {
        if !span.contains(x) {
            gens.push(x.clone());
            span = pclosure(n, &gens);
        }
    }
    gens
}

fn pderived(n: usize, gens: &[P]) -> BTreeSet<P> {
    let mut seeds: Vec<P> = Vec::new();
    for a in gens {
        for b in gens {
            seeds.push(pmul(&pmul(&pmul(&pinv(a), &pinv(b)), a), b));
        }
    }
    // normal closure of the generator commutators
    loop {
        let h = pclosure(n, &seeds);
        let mut grown = false;
        for s in seeds.clone() {
            for g in gens {
                let c = pmul(&pmul(&pinv(g), &s), g);
                if !h.contains(&c) {
                    seeds.push(c);
                    grown = true;
                }
            }
        }
        if !grown {
            return h;
        }
    }
}

fn psolvable(n: usize, group: &BTreeSet<P>) -> bool {
    let mut current = group.clone();
    while current.len() > 1 {
        let next = pderived(n, &greedy_gens(n, &current));
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
    true
}

fn ptransitive(n: usize, group: &BTreeSet<P>) -> bool {
    let orbit: HashSet<u8> = group.iter().map(|g| g[0]).collect();
    orbit.len() == n
}

fn all_perms(n: usize) -> Vec<P> {
    let mut out = vec![vec![]];
    for k in 0..n as u8 {
        out = out
            .into_iter()
            .flat_map(|p: P| (0..=p.len()).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, k);
                q
            }))
            .collect();
    }
    out
}

fn canonical_class(group: &BTreeSet<P>, sn: &[P]) -> Vec<P> {
    sn.iter()
        .map(|c| {
            let ci = pinv(c);
            let mut conj: Vec<P> = group.iter().map(|g| pmul(&pmul(&ci, g), c)).collect();
            conj.sort();
            conj
        })
        .min()
        .unwrap()
}

/// Orders of the conjugacy classes of transitive solvable subgroups of S_n
/// among the two-generated subgroups, with maximality flags. For prime n
/// the first generator is fixed to the n-cycle, which every transitive
/// group of prime degree contains up to conjugacy.
fn two_generator_oracle(n: usize) -> Vec<(usize, bool)> {
    let sn = all_perms(n);
    let cycle: P = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
    let firsts: Vec<P> = if n == 7 { vec![cycle] } else { sn.clone() };
    let mut seen: HashSet<BTreeSet<P>> = HashSet::new();
    let mut classes: Vec<(Vec<P>, BTreeSet<P>)> = Vec::new();
    for a in &firsts {
        for b in &sn {
            let g = pclosure(n, &[a.clone(), b.clone()]);
            if !seen.insert(g.clone()) || !ptransitive(n, &g) || !psolvable(n, &g) {
                continue;
            }
            let canon = canonical_class(&g, &sn);
            if !classes.iter().any(|(c, _)| *c == canon) {
                classes.push((canon, g));
            }
        }
    }
    classes.sort_by_key(|(_, g)| g.len());
    let conjugates_into = |small: &BTreeSet<P>, big: &BTreeSet<P>| {
        sn.iter().any(|c| {
            let ci = pinv(c);
            small.iter().all(|g| big.contains(&pmul(&pmul(&ci, g), c)))
        })
    };
    classes
        .iter()
        .map(|(_, g)| {
            let maximal = !classes.iter().any(|(_, h)| h.len() > g.len() && conjugates_into(g, h));
            (g.len(), maximal)
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let mut out = Vec::new();
    for n in [3, 5, 7] {
        let classes = e2s(transitive_solvable_subgroups(n, DEFAULT_BOUND))?;
        let found: Vec<(usize, bool)> = classes.iter().map(|c| (c.order, c.maximal)).collect();
        let oracle = two_generator_oracle(n);
        ensure(found == oracle, format!("n={n}: library {found:?}, oracle {oracle:?}"))?;
        let maximal: Vec<usize> = found.iter().filter(|c| c.1).map(|c| c.0).collect();
        match n {
            3 => ensure(maximal == [6], format!("n=3 maximal classes {maximal:?}"))?,
            5 => ensure(maximal == [20], format!("n=5 maximal classes {maximal:?}"))?,
            _ => {}
        }
        let orders: Vec<usize> = found.iter().map(|c| c.0).collect();
        out.push(format!("n={n} orders {orders:?} maximal {maximal:?}"));
    }
    Ok(out.join("; "))
}

fn main() {
    let start = Instant::now();
    let reports = sweeps();
    let from_sweeps = |f: fn(&[SweepReport]) -> Outcome| -> Outcome {
        match &reports {
            Ok(r) => f(r),
            Err(e) => Err(format!("sweep failed: {e}")),
        }
    };
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "theorem sweep n=3, q in {3,5,7}", from_sweeps(criterion_1)),
        (2, "O_3(3) order and wreath structure", criterion_2()),
        (3, "solvability boundary", criterion_3()),
        (4, "even-dimension boundary O_2^-(5)", criterion_4()),
        (5, "maximality of O_1 wr S_3 at n=3", criterion_5()),
        (6, "uniqueness of the line decomposition", criterion_6()),
        (7, "eigenspace pairing on coprime isometries", criterion_7()),
        (8, "component methods agree", from_sweeps(criterion_8)),
        (9, "derived subgroups have determinant 1", from_sweeps(criterion_9)),
        (10, "transitive solvable subgroups of S_n", criterion_10()),
    ];
    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
