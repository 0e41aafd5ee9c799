//! The acceptance criteria, each an exact check returning a verdict line.
//!
//! Randomness comes from a ChaCha stream seeded by `seed` and the criterion
//! number, so verdicts and report text depend on nothing else.

pub mod oracle;

use std::fmt;
use std::time::{Duration, Instant};

use cechtower::abelian::AbelianGroup;
use cechtower::cech::{coboundary, cohomology, cone_contraction, giraud_cocycle, is_cocycle, Cochain, TransitionData};
use cechtower::complexes::{catalog, Complex};
use cechtower::exactseq::{connecting, long_exact_sequence, ShortExactSequence};
use cechtower::spectral::{build_filtered, two_link_sequence};
use cechtower::towers::{classify, enumerate_classes, extend_from_class, is_trivial, LinkStack, TowerCocycle};
use cechtower::Int;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oracle::{integral_cohomology, OracleGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| !v.passed).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "acceptance suite, seed {}", self.seed)?;
        for v in &self.verdicts {
            writeln!(f, "{v}")?;
        }
        let passed = self.verdicts.iter().filter(|v| v.passed).count();
        writeln!(f, "{passed}/{} criteria passed", self.verdicts.len())
    }
}

pub const NAMES: [&str; 11] = [
    "coboundary soundness",
    "Giraud cocycle",
    "classical cohomology table",
    "cone contraction",
    "tower classification round trip",
    "representative independence",
    "triviality",
    "spectral terms",
    "two-link exact sequence",
    "Bockstein and long exact sequences",
    "determinism",
];

/// Runs criterion `id` (1-based).
pub fn run(id: u8, seed: u64) -> Verdict {
    let check: fn(&mut ChaCha8Rng) -> Check = match id {
        1 => coboundary_soundness,
        2 => giraud_generator,
        3 => classical_table,
        4 => cone_contraction_check,
        5 => tower_round_trip,
        6 => representative_independence,
        7 => triviality,
        8 => spectral_terms,
        9 => two_link_exactness,
        10 => bockstein,
        11 => return determinism(seed),
        _ => panic!("there is no criterion {id}"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ u64::from(id));
    let (passed, detail) = match check(&mut rng) {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Verdict {
        id,
        name: NAMES[usize::from(id) - 1],
        passed,
        detail,
    }
}

pub fn run_all(seed: u64) -> Report {
    Report {
        seed,
        verdicts: (1..=11).map(|id| run(id, seed)).collect(),
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cat(name: &str) -> Result<Complex, String> {
    catalog(name).map_err(|e| e.to_string())
}

fn test_groups() -> Vec<AbelianGroup> {
    vec![
        AbelianGroup::integers(),
        AbelianGroup::cyclic(2),
        AbelianGroup::cyclic(6),
        AbelianGroup::new(1, vec![Int::from(4)]),
    ]
}

const CATALOG_SAMPLE: [&str; 9] = [
    "circle(3)",
    "circle(6)",
    "sphere2",
    "torus7",
    "rp2_6",
    "klein8",
    "simplex(4)",
    "sphere(2)",
    "sphere(3)",
];

fn coboundary_soundness(rng: &mut ChaCha8Rng) -> Check {
    let complexes = CATALOG_SAMPLE.iter().map(|n| cat(n)).collect::<Result<Vec<_>, _>>()?;
    let groups = test_groups();
    for i in 0..1000 {
        let x = &complexes[i % complexes.len()];
        let g = &groups[(i / complexes.len()) % groups.len()];
        let dim = x.dimension().unwrap_or(0);
        let k = rng.gen_range(0..=dim);
        let c = Cochain::random(x, g, k, rng);
        let dd = coboundary(&coboundary(&c));
        ensure(dd.is_zero(), || format!("d(d c) != 0 for a degree-{k} cochain over {g} (sample {i})"))?;
    }
    Ok(format!("d(d c) = 0 for 1000 random cochains on {} complexes over 4 groups", complexes.len()))
}

fn giraud_generator(rng: &mut ChaCha8Rng) -> Check {
    let complexes = [cat("torus7")?, cat("rp2_6")?];
    let groups = test_groups();
    for i in 0..200 {
        let x = &complexes[i % 2];
        let g = &groups[rng.gen_range(0..groups.len())];
        let u = TransitionData::new(Cochain::random(x, g, 1, rng)).map_err(|e| e.to_string())?;
        let c = giraud_cocycle(&u);
        ensure(c.degree() == 2 && is_cocycle(&c), || format!("Giraud cocycle of sample {i} over {g} fails d c = 0"))?;
    }
    Ok("200 random transition data on torus7 and rp2_6 give 2-cocycles".into())
}

fn to_oracle(g: &AbelianGroup) -> OracleGroup {
    OracleGroup {
        free_rank: g.free_rank(),
        torsion: g.torsion().iter().map(|d| d.to_i128().expect("small torsion")).collect(),
    }
}

fn classical_table(_: &mut ChaCha8Rng) -> Check {
    let z = |r: usize| OracleGroup { free_rank: r, torsion: vec![] };
    let z2 = OracleGroup { free_rank: 0, torsion: vec![2] };
    let table: [(&str, Vec<OracleGroup>); 5] = [
        ("circle(3)", vec![z(1), z(1)]),
        ("sphere(2)", vec![z(1), z(0), z(1)]),
        ("torus7", vec![z(1), z(2), z(1)]),
        ("rp2_6", vec![z(1), z(0), z2.clone()]),
        ("klein8", vec![z(1), z(1), z2]),
    ];
    let mut summary = Vec::new();
    for (name, expected) in table {
        let x = cat(name)?;
        let oracle = integral_cohomology(&x.facets());
        ensure(oracle == expected, || format!("oracle disagrees with the classical table on {name}: {oracle:?}"))?;
        let start = Instant::now();
        let engine: Vec<OracleGroup> = (0..expected.len())
            .map(|k| to_oracle(cohomology(&x, &AbelianGroup::integers(), k).invariants()))
            .collect();
        let elapsed = start.elapsed();
        ensure(engine == oracle, || format!("engine disagrees with the oracle on {name}: {engine:?}"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("{name} took longer than 1 s"))?;
        let row: Vec<String> = engine.iter().map(ToString::to_string).collect();
        summary.push(format!("{name} ({})", row.join(", ")));
    }
    Ok(format!("engine = oracle = table: {}", summary.join("; ")))
}

fn cone_contraction_check(rng: &mut ChaCha8Rng) -> Check {
    let x = cat("simplex(5)")?;
    let groups = test_groups();
    for i in 0..100 {
        let k = 1 + i % 4;
        let g = &groups[rng.gen_range(0..groups.len())];
        // on a cone every cocycle is a coboundary, so d of a random cochain is a random cocycle
        let c = coboundary(&Cochain::random(&x, g, k - 1, rng));
        let h = cone_contraction(&c, 0).map_err(|e| e.to_string())?;
        ensure(coboundary(&h) == c, || format!("d(K c) != c for a degree-{k} cocycle over {g}"))?;
    }
    for n in 1..=5 {
        let cone = cat(&format!("simplex({n})"))?;
        for g in &groups {
            for k in 1..=n + 1 {
                let h = cohomology(&cone, g, k);
                ensure(h.is_zero(), || format!("H^{k}(simplex({n}); {g}) = {} is nonzero", h.invariants()))?;
            }
        }
    }
    Ok("d(K c) = c for 100 cocycles of degrees 1..4 on simplex(5); cones acyclic in degrees >= 1".into())
}

/// Towers on sphere(n+1) with top link Z/3 realizing each class, for n = 1, 2.
fn sphere_towers() -> Result<Vec<(usize, Vec<(Int, TowerCocycle)>)>, String> {
    let g = AbelianGroup::cyclic(3);
    let mut out = Vec::new();
    for n in 1..=2usize {
        let x = cat(&format!("sphere({})", n + 1))?;
        let mut towers = Vec::new();
        for v in 0..3 {
            let class = g.element(&[v]).map_err(|e| e.to_string())?;
            let t = if n == 1 {
                TowerCocycle::from_class(&x, g.clone(), &class)
            } else {
                let base = TowerCocycle::zero(&x, LinkStack::new(vec![AbelianGroup::integers()]).map_err(|e| e.to_string())?);
                extend_from_class(&base, g.clone(), &class)
            }
            .map_err(|e| e.to_string())?;
            towers.push((Int::from(v), t));
        }
        out.push((n, towers));
    }
    Ok(out)
}

fn tower_round_trip(_: &mut ChaCha8Rng) -> Check {
    let g = AbelianGroup::cyclic(3);
    for (n, towers) in sphere_towers()? {
        let x = towers[0].1.complex().clone();
        let reps = enumerate_classes(&x, &g, n + 1).map_err(|e| e.to_string())?;
        ensure(reps.len() == 3, || format!("sphere({}) has {} enumerated classes, expected 3", n + 1, reps.len()))?;
        for (v, t) in &towers {
            let class = classify(t).map_err(|e| e.to_string())?;
            ensure(class.coords() == [v.clone()], || format!("n = {n}: class {v} came back as {class}"))?;
        }
        // the enumerated representatives realize all three classes
        let mut seen: Vec<Int> = reps
            .iter()
            .map(|r| towers[0].1.with_top(r.clone()).and_then(|t| classify(&t)).map(|c| c.coords()[0].clone()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        seen.sort();
        ensure(seen == [Int::from(0), Int::from(1), Int::from(2)], || format!("enumerated classes map to {seen:?}"))?;
    }
    Ok("sphere(2) and sphere(3) with L_n = Z/3: 3 enumerated classes, classify(extend(x)) = x".into())
}

fn representative_independence(rng: &mut ChaCha8Rng) -> Check {
    let mut checked = 0;
    for (n, towers) in sphere_towers()? {
        for (v, t) in towers.iter().filter(|(v, _)| v != &Int::from(0)) {
            let x = t.complex();
            for _ in 0..50 {
                let b = coboundary(&Cochain::random(x, t.stack().top(), n, rng));
                let moved = t.top().checked_add(&b).and_then(|c| t.with_top(c)).map_err(|e| e.to_string())?;
                let class = classify(&moved).map_err(|e| e.to_string())?;
                ensure(class.coords() == [v.clone()], || format!("n = {n}: class {v} moved to {class}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("class unchanged under {checked} random coboundary perturbations"))
}

fn triviality(rng: &mut ChaCha8Rng) -> Check {
    let mut count = 0;
    for name in ["sphere(2)", "torus7", "rp2_6", "simplex(4)"] {
        let x = cat(name)?;
        for g in test_groups() {
            let top = coboundary(&Cochain::random(&x, &g, 1, rng));
            let stack = LinkStack::new(vec![g]).map_err(|e| e.to_string())?;
            let t = TowerCocycle::new(x.clone(), stack, vec![top]).map_err(|e| e.to_string())?;
            ensure(is_trivial(&t) == Ok(true), || format!("coboundary tower on {name} is not trivial"))?;
            count += 1;
        }
    }
    for (n, towers) in sphere_towers()? {
        let (_, t) = &towers[1];
        ensure(is_trivial(t) == Ok(false), || format!("nonzero class on sphere({}) reported trivial", n + 1))?;
    }
    Ok(format!("{count} coboundary towers trivial; nonzero Z/3 classes nontrivial"))
}

fn spectral_terms(_: &mut ChaCha8Rng) -> Check {
    let z = AbelianGroup::integers();
    let z2 = AbelianGroup::cyclic(2);
    let z3 = AbelianGroup::cyclic(3);
    let stacks = [vec![z.clone()], vec![z.clone(), z2.clone()], vec![z2, z, z3]];
    let mut terms = 0;
    for name in ["circle(3)", "sphere(2)", "torus7"] {
        let x = cat(name)?;
        for links in &stacks {
            let f = build_filtered(&x, LinkStack::new(links.clone()).map_err(|e| e.to_string())?);
            let links = links.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            for p in 0..=2usize {
                for k in 0..=3usize {
                    let expected = match f.link(p) {
                        Some(l) => cohomology(&x, l, k).invariants().clone(),
                        None => AbelianGroup::zero(),
                    };
                    let boundary = f.boundary_of_filtration(p, k);
                    for r in 1..=3 {
                        let q = k as i64 - p as i64;
                        let t = f.e_page(p, q, r).map_err(|e| e.to_string())?;
                        ensure(t.invariants == expected, || {
                            format!("{name} ({links}): E^({p},{q})_{r} = {} but H^{k}(L_{p}) = {expected}", t.invariants)
                        })?;
                        ensure(f.b_term(p, r, k) == boundary, || {
                            format!("{name} ({links}): B^{p}_{r} differs from d(K_{p}) in degree {k}")
                        })?;
                        terms += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{terms} terms E^(p,q)_r = H^(p+q)(L_p) and B^p_r = d(K_p)"))
}

fn two_link_exactness(_: &mut ChaCha8Rng) -> Check {
    let x = cat("sphere(2)")?;
    let stack = LinkStack::two_step(AbelianGroup::integers(), AbelianGroup::cyclic(2), 2).map_err(|e| e.to_string())?;
    let f = build_filtered(&x, stack);
    let report = two_link_sequence(&f, 2, 0..=3).map_err(|e| e.to_string())?;
    ensure(report.is_exact(), || format!("not exact at {:?}", report.failures()))?;
    Ok(format!("L_0 = Z, L_2 = Z/2 on sphere(2): exact at all {} nodes, degrees 0..3", report.nodes.len()))
}

/// Straight-line Bockstein check: lift a Z/2 1-cocycle to 0/1 integers, take
/// its coboundary, halve, and pair with the mod 2 fundamental class (the sum
/// over all triangles).
fn bockstein_pairing(c: &Cochain) -> i64 {
    let x = c.complex();
    let lift = |e: &[u32]| -> i64 { c.value(e).expect("edge").coords()[0].to_i64().expect("small") };
    let mut total = 0;
    for t in x.simplices(2) {
        let (a, b, d) = (t[0], t[1], t[2]);
        let dc = lift(&[b, d]) - lift(&[a, d]) + lift(&[a, b]);
        assert_eq!(dc.rem_euclid(2), 0, "input must be a mod 2 cocycle");
        total += dc / 2;
    }
    total.rem_euclid(2)
}

fn bockstein(_: &mut ChaCha8Rng) -> Check {
    let rp2 = cat("rp2_6")?;
    let torus = cat("torus7")?;
    let s = ShortExactSequence::bockstein(2).map_err(|e| e.to_string())?;
    let h1 = cohomology(&rp2, s.quotient(), 1);
    ensure(h1.invariants() == &AbelianGroup::cyclic(2), || format!("H^1(rp2_6; Z/2) = {}", h1.invariants()))?;
    let gen = &h1.basis()[0];
    let class = connecting(&s, &rp2, gen).map_err(|e| e.to_string())?;
    ensure(class.coords() == [Int::from(1)], || format!("delta(generator) = {class}, expected the nonzero class"))?;
    ensure(bockstein_pairing(gen) == 1, || "straight-line pairing says the Bockstein vanishes".into())?;

    let reduction = ShortExactSequence::integer_reduction(2).map_err(|e| e.to_string())?;
    let mut nodes = 0;
    for (label, seq) in [("Z/2 -> Z/4 -> Z/2", &s), ("Z -> Z -> Z/2", &reduction)] {
        for (name, x) in [("rp2_6", &rp2), ("torus7", &torus)] {
            let report = long_exact_sequence(seq, x, 0..=2).map_err(|e| e.to_string())?;
            ensure(report.is_exact(), || format!("{label} on {name} not exact at {:?}", report.failures()))?;
            nodes += report.nodes.len();
        }
    }
    Ok(format!("delta(H^1 generator) = nonzero class of H^2(rp2_6; Z/2); {nodes} sequence nodes exact"))
}

fn determinism(seed: u64) -> Verdict {
    let once = || (1..=10).map(|id| run(id, seed).to_string()).collect::<Vec<_>>().join("\n");
    let (a, b) = (once(), once());
    let passed = a == b;
    Verdict {
        id: 11,
        name: NAMES[10],
        passed,
        detail: if passed {
            format!("two runs of criteria 1..10 with seed {seed} are byte-identical ({} bytes)", a.len())
        } else {
            "two runs with the same seed differ".into()
        },
    }
}
