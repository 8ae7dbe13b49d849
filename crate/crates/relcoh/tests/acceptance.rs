//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Fixture data is read verbatim from `fixtures/`. Every value asserted here is
//! checked against a second computation that does not share the code path
//! under test.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relcoh::Session;
use relcoh_core::genfrac::{default_delta_max, gf_is_zero, top_cohomology_fraction};
use relcoh_core::groebner::groebner_basis;
use relcoh_core::local_cohomology::{
    cd_monomial, cech_profile, cech_profile_on, pattern_complex, top_sequence_exactness, SignPattern,
};
use relcoh_core::module::{free_resolution, koszul_grade};
use relcoh_core::relcm::{
    ara_bounds, cd, determinant_map_injective, find_rsop, grade_search, is_rsop, quotient_chain_check,
};
use relcoh_core::simplicial::projective_dimension;
use relcoh_core::{
    is_regular_sequence, radical_equal, Cd, Field, Ideal, ModulePresentation, Monomial, MonomialIdeal, MonomialOrder,
    Polynomial, RegularSequence, Ring, SearchConfig,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn fixture(name: &str) -> Session {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Session::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn presentation(s: &Session) -> ModulePresentation {
    let c = s.ideal("c").unwrap_or_else(|| Ideal::zero(s.ring()));
    ModulePresentation::new(s.ideal("a").unwrap(), c).unwrap()
}

fn ring(n: usize) -> Ring {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Ring::new(&names, Field::Rationals, MonomialOrder::GrevLex).unwrap()
}

fn random_squarefree(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    let k = rng.random_range(1..=max_gens);
    let masks: Vec<u32> = (0..k).map(|_| rng.random_range(1..(1u32 << n))).collect();
    MonomialIdeal::from_masks(n, &masks)
}

/// Radical of a monomial ideal by taking supports, independent of Gröbner bases.
fn support_radical(gens: &[Polynomial], n: usize) -> MonomialIdeal {
    let masks: Vec<u32> = gens.iter().map(|g| g.as_monomial().unwrap().support()).collect();
    MonomialIdeal::from_masks(n, &masks)
}

/// Height of a squarefree monomial ideal: the smallest vertex cover of its supports.
fn height(a: &MonomialIdeal) -> usize {
    let n = a.nvars();
    let masks = a.masks();
    (0u32..(1 << n))
        .filter(|cover| masks.iter().all(|m| m & cover != 0))
        .map(|cover| cover.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

fn principal_ideal_in_two_variables() -> Outcome {
    let start = Instant::now();
    let s = fixture("zx_not_rsop.rc");
    let r = s.ring();
    let mp = presentation(&s);
    let x = s.elements("p").unwrap().to_vec();
    let zx = s.elements("s").unwrap().to_vec();
    ensure(cd(&mp).map_err(|e| e.to_string())? == Cd::Finite(1), || {
        "cd(<x>, R) != 1".into()
    })?;
    ensure(!radical_equal(&s.ideal("s").unwrap(), &s.ideal("a").unwrap()), || {
        "Rad<zx> = Rad<x>".into()
    })?;
    // Oracle: x ∈ Rad<zx> would need x^k = q·zx, impossible since z ∤ x^k.
    ensure(!s.ideal("s").unwrap().contains(&r.var(0).pow(6)), || {
        "x^6 in <zx>".into()
    })?;
    let h = cech_profile(
        &MonomialIdeal::from_masks(2, &[0b01]),
        &MonomialIdeal::from_masks(2, &[0b11]),
        Field::Rationals,
    )
    .map_err(|e| e.to_string())?;
    ensure(h.is_nonzero(1), || "H^1_<x>(R/<xz>) = 0".into())?;
    ensure(is_rsop(&x, &mp).map_err(|e| e.to_string())?.verdict, || {
        "[x] rejected".into()
    })?;
    ensure(!is_rsop(&zx, &mp).map_err(|e| e.to_string())?.verdict, || {
        "[zx] accepted".into()
    })?;
    let a = s.matrix("A").unwrap();
    ensure(
        determinant_map_injective(&x, a, &Ideal::zero(r)).map_err(|e| e.to_string())?,
        || "multiplication by z from R/<x> to R/<zx> not injective".into(),
    )?;
    // Oracle: z·f ∈ <zx> forces f ∈ <x> since z is a nonzerodivisor.
    let zx_ideal = Ideal::new(r, zx.clone());
    ensure(zx_ideal.quotient(&r.var(1)).equals(&Ideal::new(r, x)), || {
        "<zx> : z != <x>".into()
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{:?}", start.elapsed()))
}

fn unit_line_sequence() -> Outcome {
    let start = Instant::now();
    let s = fixture("unit_line.rc");
    let r = s.ring();
    let seq = s.elements("s").unwrap().to_vec();
    let a = s.ideal("a").unwrap();
    let si = s.ideal("s").unwrap();
    ensure(radical_equal(&si, &a), || "radicals differ".into())?;
    // Oracle: x, y, z lie in <seq> outright.
    for i in 0..3 {
        ensure(si.contains(&r.var(i)), || format!("variable {i} not in <seq>"))?;
    }
    let mp = presentation(&s);
    ensure(is_rsop(&seq, &mp).map_err(|e| e.to_string())?.verdict, || {
        "not an Rs.o.p".into()
    })?;
    let reg = is_regular_sequence(&seq, &Ideal::zero(r)).map_err(|e| e.to_string())?;
    ensure(reg == RegularSequence::FailsAt(2), || format!("got {reg:?}"))?;
    // Oracle: y ∉ <seq₁> yet y·seq₂ = z·seq₁.
    let y = r.var(1);
    ensure(!Ideal::new(r, vec![seq[0].clone()]).contains(&y), || {
        "y in <seq_1>".into()
    })?;
    ensure(y.mul(&seq[1]) == r.var(2).mul(&seq[0]), || {
        "zerodivisor witness fails".into()
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{:?}", start.elapsed()))
}

fn cd_equals_projective_dimension() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut ideals: BTreeSet<Vec<u32>> = BTreeSet::new();
    for set in 0u32..(1 << 7) {
        let masks: Vec<u32> = (1..8).filter(|m| set & (1 << (m - 1)) != 0).collect();
        ideals.insert(MonomialIdeal::from_masks(3, &masks).masks());
    }
    let mut cases: Vec<MonomialIdeal> = ideals.iter().map(|m| MonomialIdeal::from_masks(3, m)).collect();
    let exhaustive = cases.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d);
    for n in [4usize, 5] {
        for _ in 0..200 {
            cases.push(random_squarefree(&mut rng, n, 6));
        }
    }
    for a in &cases {
        let n = a.nvars();
        let c = cd_monomial(a, &MonomialIdeal::zero(n), Field::Rationals).map_err(|e| e.to_string())?;
        let pd = projective_dimension(a, Field::Rationals).map_err(|e| e.to_string())?;
        ensure(c == Cd::Finite(pd), || format!("{:?}: cd {c}, pd {pd}", a.masks()))?;
        checked += 1;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{exhaustive} ideals in 3 variables, {} seeded in 4 and 5",
        checked - exhaustive
    ))
}

fn rsop_condition_directions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x29);
    let n = 4;
    let r = ring(n);
    let (mut rsops, mut rejected, mut reverse_checks, mut instances) = (0usize, 0usize, 0usize, 0usize);
    while rsops < 60 && instances < 2000 {
        instances += 1;
        let a = random_squarefree(&mut rng, n, 4);
        let c = if rng.random_bool(0.5) {
            MonomialIdeal::zero(n)
        } else {
            random_squarefree(&mut rng, n, 2)
        };
        let mp = ModulePresentation::new(a.to_ideal(&r), c.to_ideal(&r)).unwrap();
        if mp.is_degenerate() {
            continue;
        }
        let Some(k) = cd(&mp).map_err(|e| e.to_string())?.finite() else {
            continue;
        };
        let gens = a.to_ideal(&r).generators().to_vec();
        if k == 0 || k > gens.len() {
            continue;
        }
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.shuffle(&mut rng);
        let seq: Vec<Polynomial> = order[..k].iter().map(|&i| gens[i].clone()).collect();
        let rep = is_rsop(&seq, &mp).map_err(|e| e.to_string())?;
        // Independent condition i): compare supports of seq + c and a + c.
        let mut lhs = seq.clone();
        lhs.extend(c.to_ideal(&r).generators().iter().cloned());
        let mut rhs = gens.clone();
        rhs.extend(c.to_ideal(&r).generators().iter().cloned());
        let oracle = support_radical(&lhs, n) == support_radical(&rhs, n);
        ensure(rep.condition_i == oracle, || {
            format!("condition i disagrees on {:?}", a.masks())
        })?;
        let (ii, iii) = (rep.condition_ii_holds(), rep.condition_iii_holds());
        if rep.condition_i {
            rsops += 1;
            ensure(ii == Some(true), || {
                format!("i without ii on {:?} mod {:?}", a.masks(), c.masks())
            })?;
            ensure(iii == Some(true), || {
                format!("i without iii on {:?} mod {:?}", a.masks(), c.masks())
            })?;
        } else {
            rejected += 1;
        }
        if iii == Some(true) {
            reverse_checks += 1;
            ensure(rep.condition_i, || {
                format!("iii without i on {:?} mod {:?}", a.masks(), c.masks())
            })?;
        }
    }
    ensure(rsops >= 50, || format!("only {rsops} certified Rs.o.p instances"))?;
    Ok(format!(
        "{rsops} Rs.o.p instances, {rejected} rejected, {reverse_checks} reverse checks"
    ))
}

fn grade_oracles_agree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x55);
    let n = 4;
    let r = ring(n);
    let (mut certified, mut height_checks, mut draws) = (0usize, 0usize, 0usize);
    while certified < 60 && draws < 1000 {
        draws += 1;
        let a = random_squarefree(&mut rng, n, 4);
        let c = if draws % 2 == 0 {
            MonomialIdeal::zero(n)
        } else {
            random_squarefree(&mut rng, n, 2)
        };
        let mp = ModulePresentation::new(a.to_ideal(&r), c.to_ideal(&r)).unwrap();
        if mp.is_degenerate() {
            continue;
        }
        let g = koszul_grade(&r, mp.a().generators(), mp.c()).map_err(|e| e.to_string())?;
        let search = grade_search(&mp, &SearchConfig::default()).map_err(|e| e.to_string())?;
        if !search.certified {
            continue;
        }
        certified += 1;
        ensure(search.sequence.len() == g, || {
            format!(
                "Koszul {g} vs search {} on {:?} mod {:?}",
                search.sequence.len(),
                a.masks(),
                c.masks()
            )
        })?;
        let reg = is_regular_sequence(&search.sequence, mp.c()).map_err(|e| e.to_string())?;
        ensure(reg.is_regular(), || format!("search sequence not regular: {reg:?}"))?;
        if c.is_zero() {
            height_checks += 1;
            ensure(g == height(&a), || {
                format!("grade {g} vs height {} on {:?}", height(&a), a.masks())
            })?;
        }
    }
    ensure(certified >= 50, || format!("only {certified} certified instances"))?;
    Ok(format!(
        "{certified} certified instances, {height_checks} against heights"
    ))
}

fn top_fraction_matches_cech() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f);
    let (mut fixtures, mut nonzero) = (0usize, 0usize);
    for i in 0..40 {
        let n = 3 + i % 2;
        let r = ring(n);
        let d = rng.random_range(1..=3usize);
        let gens: Vec<Monomial> = (0..d)
            .map(|_| Monomial::from_mask(n, rng.random_range(1..(1u32 << n))))
            .collect();
        let c = if i % 3 == 0 {
            MonomialIdeal::zero(n)
        } else {
            random_squarefree(&mut rng, n, 2)
        };
        let polys: Vec<Polynomial> = gens.iter().map(|m| r.monomial(m.clone())).collect();
        let f =
            top_cohomology_fraction(&r, &r.one(), &vec![1; d], &polys, &c.to_ideal(&r)).map_err(|e| e.to_string())?;
        let status = gf_is_zero(&f, default_delta_max(&f));
        let cech = cech_profile_on(&gens, &c, Field::Rationals).map_err(|e| e.to_string())?;
        ensure(status.is_zero() || status.is_nonzero(), || {
            format!("uncertified zero test: {status:?}")
        })?;
        ensure(status.is_nonzero() == cech.is_nonzero(d), || {
            format!("fraction {status:?} vs H^{d} nonzero = {}", cech.is_nonzero(d))
        })?;
        fixtures += 1;
        nonzero += usize::from(status.is_nonzero());
    }
    ensure(fixtures >= 20, || format!("only {fixtures} fixtures"))?;
    Ok(format!("{fixtures} fixtures, {nonzero} nonzero"))
}

fn top_sequence_exactness_on_families() -> Outcome {
    let mut checked = 0usize;
    for name in ["principal.rc", "ci.rc", "triangle.rc", "koszul.rc", "relative.rc"] {
        let s = fixture(name);
        let gens: Vec<Monomial> = s
            .ideal("a")
            .unwrap()
            .generators()
            .iter()
            .map(|g| g.as_monomial().cloned().unwrap())
            .collect();
        let b = s
            .ideal("c")
            .map(|c| MonomialIdeal::from_ideal(&c).unwrap())
            .unwrap_or_else(|| MonomialIdeal::zero(s.ring().nvars()));
        for i in 1..=gens.len() {
            let rep = top_sequence_exactness(&gens, &b, i).map_err(|e| e.to_string())?;
            ensure(rep.is_exact(), || format!("{name} position {i}: {:?}", rep.failures))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} positions"))
}

fn quotient_chains() -> Outcome {
    let mut walked = Vec::new();
    for name in ["koszul.rc", "triangle.rc"] {
        let s = fixture(name);
        let mp = presentation(&s);
        let seq = find_rsop(&mp, &SearchConfig::default())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{name}: no Rs.o.p found"))?;
        let c = seq.len();
        let rep = quotient_chain_check(&mp, &seq).map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("{name}: failures at {:?}", rep.failures))?;
        for step in &rep.steps {
            let i = step.index;
            ensure(step.is_rcm, || format!("{name}: quotient {i} not RCM"))?;
            ensure(step.cd == Cd::Finite(c - i), || {
                format!("{name}: cd {} at step {i}", step.cd)
            })?;
            ensure(step.grade == c - i, || {
                format!("{name}: grade {} at step {i}", step.grade)
            })?;
        }
        // Oracle: the Rs.o.p is regular, so each quotient has grade at least c − i.
        let reg = is_regular_sequence(&seq, mp.c()).map_err(|e| e.to_string())?;
        ensure(reg.is_regular(), || format!("{name}: Rs.o.p not regular"))?;
        walked.push(format!("{name} ({c} steps)"));
    }
    Ok(walked.join(", "))
}

fn kernel_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x99);
    let r = ring(3);
    let f = r.field();
    let random_poly = |rng: &mut ChaCha8Rng| {
        let terms = rng.random_range(1..4);
        Polynomial::from_terms(
            3,
            (0..terms)
                .map(|_| {
                    let e: Vec<u32> = (0..3).map(|_| rng.random_range(0..3)).collect();
                    let mut k = rng.random_range(-3i64..=3);
                    if k == 0 {
                        k = 1;
                    }
                    (Monomial::new(e), f.from_i64(k))
                })
                .collect(),
        )
    };
    for trial in 0..100 {
        let k = rng.random_range(1..4);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut rng)).collect();
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            ensure(groebner_basis(&gens, order) == groebner_basis(&shuffled, order), || {
                format!("trial {trial}: basis depends on input order")
            })?;
        }
    }
    for _ in 0..30 {
        let gens: Vec<Polynomial> = (0..2).map(|_| random_poly(&mut rng)).collect();
        let i = Ideal::new(&r, gens.clone());
        let sq = Ideal::new(&r, gens.iter().map(|g| g.mul(g)).collect());
        let prod = Ideal::new(
            &r,
            vec![gens[0].mul(&gens[0]), gens[0].mul(&gens[1]), gens[1].mul(&gens[1])],
        );
        ensure(radical_equal(&i, &i), || "not reflexive".into())?;
        ensure(radical_equal(&i, &sq) && radical_equal(&sq, &i), || {
            "not symmetric".into()
        })?;
        ensure(radical_equal(&sq, &prod) && radical_equal(&i, &prod), || {
            "not transitive".into()
        })?;
        let g = random_poly(&mut rng);
        if !g.is_zero() {
            let q = i.quotient(&g);
            ensure(q.contains_ideal(&i), || "(I : f) does not contain I".into())?;
            ensure(q.generators().iter().all(|h| i.contains(&h.mul(&g))), || {
                "(I : f)·f not in I".into()
            })?;
        }
    }
    for _ in 0..50 {
        let a = random_squarefree(&mut rng, 5, 6);
        ensure(a.alexander_dual().alexander_dual() == a, || {
            format!("dual of dual differs on {:?}", a.masks())
        })?;
    }
    let mut complexes = 0usize;
    for _ in 0..50 {
        let a = random_squarefree(&mut rng, 4, 5);
        let b = random_squarefree(&mut rng, 4, 2);
        let neg = rng.random_range(0u32..16);
        let pos = rng.random_range(0u32..16) & !neg;
        let cx = pattern_complex(a.generators(), &b, SignPattern::new(4, neg, pos)).map_err(|e| e.to_string())?;
        ensure(cx.d_squared_zero(), || "d∘d ≠ 0 in a Čech complex".into())?;
        complexes += 1;
    }
    let r4 = ring(4);
    for _ in 0..20 {
        let a = random_squarefree(&mut rng, 4, 4);
        let res = free_resolution(&a.to_ideal(&r4), 6).map_err(|e| e.to_string())?;
        ensure(res.composes_to_zero(), || "d∘d ≠ 0 in a resolution".into())?;
        complexes += 1;
    }
    Ok(format!("100 basis trials, {complexes} complexes"))
}

fn triangle_arithmetic_rank() -> Outcome {
    let start = Instant::now();
    let s = fixture("triangle.rc");
    let r = s.ring();
    let mp = presentation(&s);
    let b = ara_bounds(&mp, &SearchConfig::default()).map_err(|e| e.to_string())?;
    ensure((b.lower, b.upper) == (2, Some(2)), || {
        format!("bounds ({}, {:?})", b.lower, b.upper)
    })?;
    let set = b.certificate.ok_or("no certificate")?.set;
    ensure(set.len() == 2, || format!("certificate has {} elements", set.len()))?;
    let a = mp.a();
    ensure(radical_equal(&Ideal::new(r, set.clone()), a), || {
        "certificate radical differs".into()
    })?;
    // Oracle by plain membership: set ⊆ a and the square of every generator of a lies in <set>.
    let si = Ideal::new(r, set.clone());
    ensure(set.iter().all(|g| a.contains(g)), || "certificate not inside a".into())?;
    ensure(a.generators().iter().all(|g| si.contains(&g.pow(2))), || {
        "a generator squared escapes <set>".into()
    })?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "certificate [{}] in {:?}",
        set.iter().map(|p| r.format(p)).collect::<Vec<_>>().join(", "),
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "principal ideal in K[x,z]: cd, radicals, H^1, Rs.o.p verdicts, injectivity",
            principal_ideal_in_two_variables,
        ),
        (
            "unit-line sequence: Rs.o.p that fails regularity at position 2",
            unit_line_sequence,
        ),
        (
            "cd(a, R) = pd R/a for squarefree monomial ideals",
            cd_equals_projective_dimension,
        ),
        (
            "Rs.o.p conditions: i implies ii and iii; iii implies i when graded",
            rsop_condition_directions,
        ),
        (
            "Koszul grade equals the certified regular-element search",
            grade_oracles_agree,
        ),
        (
            "top generalized fraction vanishes iff top Čech cohomology does",
            top_fraction_matches_cech,
        ),
        (
            "top local cohomology sequence is exact on fixture families",
            top_sequence_exactness_on_families,
        ),
        (
            "quotient chains of RCM modules drop cd by one per step",
            quotient_chains,
        ),
        (
            "kernel properties: bases, radicals, quotients, duality, d∘d = 0",
            kernel_properties,
        ),
        (
            "arithmetic rank of the triangle edge ideal is 2 with a certificate",
            triangle_arithmetic_rank,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{detail}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
