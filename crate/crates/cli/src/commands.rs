use std::fmt::Write;

use cechtower::abelian::{AbelianGroup, ExactnessReport, GroupElement, GroupHom, IntMatrix};
use cechtower::cech::{
    coboundary, coboundary_witness, cohomology, cone_contraction, giraud_cocycle, is_cocycle, Cochain, TransitionData,
};
use cechtower::complexes::{catalog, Complex, CATALOG_NAMES};
use cechtower::exactseq::{connecting_map, long_exact_sequence, acyclic_middle_check, BijectivityCheck, ShortExactSequence, AcyclicMiddleVerdict};
use cechtower::io::{cochain_to_json, complex_to_json, group_to_json, int_to_json, tower_to_json};
use cechtower::spectral::{build_filtered, two_link_sequence};
use cechtower::towers::{classify, equivalent, extend_from_class, validate_tower, LinkStack};
use serde_json::{json, Value};

use crate::{input, CliError};

/// What a subcommand produced: the same content as JSON and as text, and
/// whether every check it ran passed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn new(command: &str, mut json: Value, text: String, passed: bool) -> Self {
        json["command"] = json!(command);
        json["passed"] = json!(passed);
        Report { json, text, passed }
    }
}

fn group_json(g: &AbelianGroup) -> Value {
    let mut v = group_to_json(g);
    v["display"] = json!(g.to_string());
    v
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(int_to_json).collect())).collect())
}

fn hom_json(h: &GroupHom) -> Value {
    json!({
        "source": group_json(h.source()),
        "target": group_json(h.target()),
        "matrix": matrix_json(h.matrix()),
    })
}

fn element_json(e: &GroupElement) -> Value {
    Value::Array(e.coords().iter().map(int_to_json).collect())
}

/// `0` for the zero element, otherwise the coordinates.
fn element_text(e: &GroupElement) -> String {
    if e.is_zero() {
        "0".into()
    } else {
        e.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn cochain_text(c: &Cochain) -> String {
    let mut parts = Vec::new();
    for (i, s) in c.complex().simplices(c.degree()).iter().enumerate() {
        let v = c.value_at(i);
        if v.iter().any(|x| x != &0.into()) {
            let key: Vec<String> = s.iter().map(ToString::to_string).collect();
            let val: Vec<String> = v.iter().map(ToString::to_string).collect();
            parts.push(format!("[{}] = {}", key.join(","), val.join(",")));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn summary_json(x: &Complex) -> Value {
    json!({
        "vertices": x.vertices().len(),
        "dimension": x.dimension(),
        "f_vector": x.f_vector(),
        "euler_characteristic": x.euler_characteristic(),
        "facets": x.facets().len(),
    })
}

fn summary_text(x: &Complex) -> String {
    let dim = x.dimension().map_or("empty".to_string(), |d| d.to_string());
    format!(
        "vertices: {}\ndimension: {dim}\nf-vector: {:?}\nEuler characteristic: {}\nfacets: {}\n",
        x.vertices().len(),
        x.f_vector(),
        x.euler_characteristic(),
        x.facets().len()
    )
}

pub fn complex_validate(arg: &str) -> Result<Report, CliError> {
    let x = input::complex(arg)?;
    let json = json!({ "complex": summary_json(&x) });
    Ok(Report::new("complex validate", json, format!("valid complex\n{}", summary_text(&x)), true))
}

pub fn catalog_list() -> Report {
    let mut text = String::from("catalog entries (use as catalog:NAME):\n");
    for n in CATALOG_NAMES {
        let _ = writeln!(text, "  {n}");
    }
    Report::new("complex catalog", json!({ "names": CATALOG_NAMES }), text, true)
}

/// The JSON form is the complex document itself, ready to load again.
pub fn catalog_export(name: &str) -> Result<Report, CliError> {
    let x = catalog(name)?;
    Ok(Report {
        json: complex_to_json(&x),
        text: format!("{name}\n{}", summary_text(&x)),
        passed: true,
    })
}

fn cohomology_report(x: &Complex, g: &AbelianGroup, degrees: std::ops::RangeInclusive<usize>, basis: bool) -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    for k in degrees {
        let h = cohomology(x, g, k);
        let _ = writeln!(text, "H^{k} = {}", h.invariants());
        let mut row = json!({ "degree": k, "group": group_json(h.invariants()) });
        if basis {
            for (i, c) in h.basis().iter().enumerate() {
                let _ = writeln!(text, "  generator {}: {}", i + 1, cochain_text(c));
            }
            row["basis"] = Value::Array(h.basis().iter().map(cochain_to_json).collect());
        }
        rows.push(row);
    }
    Report::new("cech cohomology", json!({ "coefficients": group_json(g), "degrees": rows }), text, true)
}

pub fn cech_cohomology(complex: &str, group: &str, degrees: &str, basis: bool) -> Result<Report, CliError> {
    let x = input::complex(complex)?;
    let g = input::group(group)?;
    Ok(cohomology_report(&x, &g, input::degrees(degrees)?, basis))
}

fn optional_complex(arg: Option<&str>) -> Result<Option<Complex>, CliError> {
    arg.map(input::complex).transpose()
}

pub fn verify(path: &str, complex: Option<&str>, want_coboundary: bool) -> Result<Report, CliError> {
    let x = optional_complex(complex)?;
    let c = input::cochain(path, x.as_ref())?;
    let k = c.degree();
    let cocycle = is_cocycle(&c);
    let mut json = json!({ "degree": k, "group": group_json(c.group()), "cocycle": cocycle });
    let mut text = format!("degree {k} cochain over {}\ncocycle: {cocycle}\n", c.group());
    let passed = if want_coboundary {
        let witness = coboundary_witness(&c);
        json["coboundary"] = json!(witness.is_some());
        let _ = writeln!(text, "coboundary: {}", witness.is_some());
        if let Some(w) = &witness {
            let _ = writeln!(text, "witness: {}", cochain_text(w));
            json["witness"] = cochain_to_json(w);
        }
        witness.is_some()
    } else {
        cocycle
    };
    Ok(Report::new("cech verify", json, text, passed))
}

pub fn giraud(path: &str, complex: Option<&str>) -> Result<Report, CliError> {
    let x = optional_complex(complex)?;
    let u = TransitionData::new(input::cochain(path, x.as_ref())?)?;
    let c = giraud_cocycle(&u);
    let ok = is_cocycle(&c);
    let json = json!({ "cocycle": cochain_to_json(&c), "is_cocycle": ok });
    let text = format!("Giraud cocycle over {}: {}\ncocycle: {ok}\n", c.group(), cochain_text(&c));
    Ok(Report::new("cech giraud", json, text, ok))
}

pub fn contract(path: &str, apex: u32, complex: Option<&str>) -> Result<Report, CliError> {
    let x = optional_complex(complex)?;
    let c = input::cochain(path, x.as_ref())?;
    let h = cone_contraction(&c, apex)?;
    let ok = coboundary(&h) == c;
    let json = json!({ "apex": apex, "primitive": cochain_to_json(&h), "verified": ok });
    let text = format!("primitive (degree {}): {}\nd(primitive) = input: {ok}\n", h.degree(), cochain_text(&h));
    Ok(Report::new("cech contract", json, text, ok))
}

pub fn tower_validate(path: &str) -> Result<Report, CliError> {
    let t = input::tower(path)?;
    let report = validate_tower(&t);
    let mut text = String::new();
    let mut levels = Vec::new();
    for (l, link) in report.levels.iter().zip(t.stack().links()) {
        let verdict = if l.passed() { "ok" } else { "FAIL" };
        let mut line = format!(
            "level {} (L = {link}): degree {} (expected {}), group {}, cocycle {}",
            l.level,
            l.degree,
            l.expected_degree,
            if l.group_ok { "ok" } else { "wrong" },
            l.cocycle
        );
        if let Some(b) = l.coboundary {
            let _ = write!(line, ", coboundary {b}");
        }
        let _ = writeln!(text, "{line}: {verdict}");
        levels.push(json!({
            "level": l.level,
            "link": group_json(link),
            "degree": l.degree,
            "expected_degree": l.expected_degree,
            "degree_ok": l.degree_ok,
            "group_ok": l.group_ok,
            "cocycle": l.cocycle,
            "coboundary": l.coboundary,
            "passed": l.passed(),
        }));
    }
    Ok(Report::new("tower validate", json!({ "levels": levels }), text, report.passed()))
}

fn top_group(t: &cechtower::towers::TowerCocycle) -> AbelianGroup {
    cohomology(t.complex(), t.stack().top(), t.height() + 1).invariants().clone()
}

pub fn tower_classify(path: &str) -> Result<Report, CliError> {
    let t = input::tower(path)?;
    let class = classify(&t)?;
    let n = t.height();
    let h = top_group(&t);
    let json = json!({ "height": n, "degree": n + 1, "group": group_json(&h), "class": element_json(&class), "trivial": class.is_zero() });
    let text = format!("H^{}(X; {}) = {h}\nclass = {}\n", n + 1, t.stack().top(), element_text(&class));
    Ok(Report::new("tower classify", json, text, true))
}

pub fn tower_trivial(path: &str) -> Result<Report, CliError> {
    let t = input::tower(path)?;
    let class = classify(&t)?;
    let trivial = class.is_zero();
    let json = json!({ "trivial": trivial, "class": element_json(&class) });
    Ok(Report::new("tower trivial", json, format!("trivial: {trivial}\n"), true))
}

/// The JSON form is the extended tower document.
pub fn tower_extend(path: &str, link: &str, class: &str) -> Result<Report, CliError> {
    let t = input::tower(path)?;
    let next = input::group(link)?;
    let h = cohomology(t.complex(), &next, t.height() + 2);
    let coords = input::coords(class)?;
    if coords.len() != h.invariants().ngens() {
        return Err(CliError::Input(format!(
            "H^{}(X; {next}) = {} has {} coordinates, --class gave {}",
            t.height() + 2,
            h.invariants(),
            h.invariants().ngens(),
            coords.len()
        )));
    }
    let class = GroupElement::new(h.invariants().clone(), coords)?;
    let extended = extend_from_class(&t, next, &class)?;
    let text = format!(
        "extended to height {}: top class {} in H^{}(X; {}) = {}\n",
        extended.height(),
        element_text(&class),
        extended.height() + 1,
        extended.stack().top(),
        h.invariants()
    );
    Ok(Report {
        json: tower_to_json(&extended),
        text,
        passed: true,
    })
}

pub fn tower_equivalent(first: &str, second: &str) -> Result<Report, CliError> {
    let (t1, t2) = (input::tower(first)?, input::tower(second)?);
    let same = equivalent(&t1, &t2)?;
    let (c1, c2) = (classify(&t1)?, classify(&t2)?);
    let json = json!({ "equivalent": same, "classes": [element_json(&c1), element_json(&c2)] });
    let text = format!("classes: {} and {}\nequivalent: {same}\n", element_text(&c1), element_text(&c2));
    Ok(Report::new("tower equivalent", json, text, true))
}

pub fn spectral_pages(complex: &str, stack: &str, rmax: usize, degrees: Option<&str>) -> Result<Report, CliError> {
    let x = input::complex(complex)?;
    let stack = input::stack(stack)?;
    if rmax == 0 {
        return Err(CliError::Input("--rmax must be at least 1".into()));
    }
    let f = build_filtered(&x, stack);
    let degrees = match degrees {
        Some(d) => input::degrees(d)?,
        None => 0..=x.dimension().unwrap_or(0),
    };
    let pages: Vec<Option<usize>> = (1..=rmax).map(Some).chain([None]).collect();
    let mut text = String::new();
    let mut terms = Vec::new();
    for r in pages {
        let name = r.map_or("inf".to_string(), |r| r.to_string());
        let _ = writeln!(text, "E_{name}:");
        for p in 0..=f.top_index() {
            for k in degrees.clone() {
                let q = k as i64 - p as i64;
                let term = match r {
                    Some(r) => f.e_page(p, q, r)?,
                    None => f.e_infinity_at(p, k)?,
                };
                let _ = writeln!(text, "  E^({p},{q}) = {}", term.invariants);
                terms.push(json!({
                    "p": p,
                    "q": q,
                    "r": r.map_or(json!("inf"), |r| json!(r)),
                    "group": group_json(&term.invariants),
                }));
            }
        }
    }
    let json = json!({ "links": f.stack().links().iter().map(group_json).collect::<Vec<_>>(), "terms": terms });
    Ok(Report::new("spectral pages", json, text, true))
}

fn sequence_report(command: &str, report: &ExactnessReport) -> Report {
    let width = report.nodes.iter().map(|n| n.label.chars().count()).max().unwrap_or(0);
    let mut text = String::new();
    for node in &report.nodes {
        let pad = " ".repeat(width - node.label.chars().count());
        let verdict = if node.exact { "exact" } else { "NOT EXACT" };
        let _ = writeln!(
            text,
            "{}{pad} = {:<12} image {:<10} kernel {:<10} {verdict}",
            node.label,
            node.group.to_string(),
            node.image.to_string(),
            node.kernel.to_string()
        );
    }
    let exact = report.is_exact();
    let _ = writeln!(text, "{}", if exact { "exact at every node" } else { "exactness fails" });
    let nodes: Vec<Value> = report
        .nodes
        .iter()
        .map(|n| {
            json!({
                "label": n.label,
                "group": group_json(&n.group),
                "image": group_json(&n.image),
                "kernel": group_json(&n.kernel),
                "exact": n.exact,
            })
        })
        .collect();
    let maps: Vec<Value> = report
        .maps
        .iter()
        .map(|m| {
            let mut v = hom_json(&m.hom);
            v["label"] = json!(m.label);
            v
        })
        .collect();
    Report::new(command, json!({ "exact": exact, "nodes": nodes, "maps": maps }), text, exact)
}

pub fn two_link(complex: &str, l0: &str, ln: &str, n: usize, degrees: &str) -> Result<Report, CliError> {
    let x = input::complex(complex)?;
    let stack = LinkStack::two_step(input::group(l0)?, input::group(ln)?, n)?;
    let f = build_filtered(&x, stack);
    let report = two_link_sequence(&f, n, input::degrees(degrees)?)?;
    Ok(sequence_report("spectral prop31", &report))
}

pub fn les_run(complex: &str, ses: &str, degrees: &str) -> Result<Report, CliError> {
    let x = input::complex(complex)?;
    let s = input::ses(ses)?;
    let report = long_exact_sequence(&s, &x, input::degrees(degrees)?)?;
    Ok(sequence_report("les run", &report))
}

pub fn bockstein(complex: &str, p: u64, k: usize) -> Result<Report, CliError> {
    let x = input::complex(complex)?;
    if p < 2 {
        return Err(CliError::Input(format!("--p {p} must be at least 2")));
    }
    let s = ShortExactSequence::bockstein(p)?;
    let delta = connecting_map(&s, &x, k)?;
    let mut text = format!("delta: H^{k}(X; Z/{p}) = {} -> H^{}(X; Z/{p}) = {}\n", delta.source(), k + 1, delta.target());
    let mut images = Vec::new();
    for i in 0..delta.source().ngens() {
        let mut coords = vec![cechtower::Int::from(0); delta.source().ngens()];
        coords[i] = 1.into();
        let gen = GroupElement::new(delta.source().clone(), coords)?;
        let image = delta.apply(&gen)?;
        let _ = writeln!(text, "  generator {} -> {}", i + 1, element_text(&image));
        images.push(element_json(&image));
    }
    let mut json = hom_json(&delta);
    json["degree"] = json!(k);
    json["p"] = json!(p);
    json["images"] = Value::Array(images);
    Ok(Report::new("les bockstein", json, text, true))
}

pub fn acyclic(complex: &str, ses: &str, k: usize) -> Result<Report, CliError> {
    let x = input::complex(complex)?;
    let s = input::ses(ses)?;
    let verdict = acyclic_middle_check(&s, &x, k)?;
    let (json, text) = match &verdict {
        AcyclicMiddleVerdict::HypothesisNotMet { middle, middle_next } => (
            json!({ "hypothesis": false, "middle": [group_json(middle), group_json(middle_next)] }),
            format!(
                "hypothesis not met: H^{k}(X; A) = {middle}, H^{}(X; A) = {middle_next}\nno claim made\n",
                k + 1
            ),
        ),
        AcyclicMiddleVerdict::Checked { delta, bijective, method } => {
            let method = match method {
                BijectivityCheck::EnumeratedClasses => "enumerated classes",
                BijectivityCheck::Elements => "elements",
                BijectivityCheck::Invariants => "invariants",
            };
            (
                json!({ "hypothesis": true, "delta": hom_json(delta), "bijective": bijective, "method": method }),
                format!(
                    "delta: H^{k}(X; A'') = {} -> H^{}(X; A') = {}\nbijective: {bijective} (checked by {method})\n",
                    delta.source(),
                    k + 1,
                    delta.target()
                ),
            )
        }
    };
    let passed = !verdict.hypothesis_met() || verdict.is_isomorphism();
    Ok(Report::new("les acyclic", json, text, passed))
}

pub fn selftest(seed: u64) -> Report {
    let report = cechtower_acceptance::run_all(seed);
    let criteria: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| json!({ "id": v.id, "name": v.name, "passed": v.passed, "detail": v.detail }))
        .collect();
    Report::new("selftest", json!({ "seed": seed, "criteria": criteria }), report.to_string(), report.passed())
}
