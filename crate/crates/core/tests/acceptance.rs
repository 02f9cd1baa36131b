//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use freeadj::cli;
use freeadj::confluence::{
    audit_local_confluence, audit_termination, audit_unique_normal_forms, cross_check_oracle,
    enumerate_overlaps, equivalent_bounded, AuditOptions, BoundSource, Family, Subcase,
};
use freeadj::monoid::{
    check_axioms, check_n_closure, in_n, n_of, n_product_witness, normal_words, Element, NIndex,
};
use freeadj::rewrite::{is_normal, normalize, redexes, reduction_graph};
use freeadj::words::{all_words, Generator, Word};

fn w(s: &str) -> Word {
    s.parse().expect("test word")
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn open_question() -> Outcome {
    let start = Instant::now();
    let eta_eps = normalize(&w("h0 e0"));
    let eps_eta = normalize(&w("e0 h0"));
    let elapsed = start.elapsed();
    ensure(eta_eps == w("h0 e0"), format!("ηε normalized to {eta_eps}"))?;
    ensure(!eta_eps.is_empty(), "ηε = 1")?;
    ensure(eps_eta.is_empty(), format!("εη normalized to {eps_eta}"))?;
    within(elapsed, Duration::from_millis(1))?;

    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["freeadj", "answer"], &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    ensure(code == 0, format!("answer exited {code}"))?;
    ensure(
        text.starts_with("verdict  NOT_ISO"),
        format!("answer printed {text:?}"),
    )?;
    Ok(format!(
        "ηε = {eta_eps} ≠ 1, εη = 1, answer NOT_ISO ({elapsed:?})"
    ))
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let report = check_axioms(4, 3);
    let elapsed = start.elapsed();
    ensure(report.passed(), report.render())?;
    let expected = [
        "eps-eta",
        "eps-f-eta",
        "eps-f-eps",
        "eps-f2-m",
        "f-m-eta",
        "eps-f-eps-f-m",
        "m-sandwich",
    ];
    for id in expected {
        let check = report.get(id).ok_or(format!("missing {id}"))?;
        ensure(check.instances > 0, format!("{id} had no instances"))?;
    }
    within(elapsed, Duration::from_secs(10))?;
    let counts: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{}:{}", c.id, c.instances))
        .collect();
    Ok(format!("{} ({elapsed:?})", counts.join(" ")))
}

fn canonical_uniqueness() -> Outcome {
    let start = Instant::now();
    let report = audit_unique_normal_forms(4, 3);
    ensure(
        report.passed(),
        format!(
            "sink disagreements: {:?}",
            &report.disagreements[..report.disagreements.len().min(3)]
        ),
    )?;
    let words = all_words(4, 3);
    for word in &words {
        let shape = is_normal(word);
        let no_redex = redexes(word).is_empty();
        let is_sink = reduction_graph(word).node_count() == 1;
        ensure(
            shape == no_redex && no_redex == is_sink,
            format!("three-way disagreement on {word}"),
        )?;
        ensure(
            is_normal(&normalize(word)),
            format!("normalize({word}) not canonical"),
        )?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{} words, {} graph nodes, one sink each ({elapsed:?})",
        report.words, report.graph_nodes
    ))
}

fn termination() -> Outcome {
    let report = audit_termination(4, 3);
    ensure(
        report.bad_steps.is_empty(),
        format!(
            "bad steps: {:?}",
            &report.bad_steps[..report.bad_steps.len().min(3)]
        ),
    )?;
    ensure(
        report.chain_violations.is_empty(),
        format!("chains longer than degree: {:?}", report.chain_violations),
    )?;
    // ε1 η1 → ε0 η1 → ε0 η0 → 1
    let g = reduction_graph(&w("e1 h1"));
    ensure(g.longest_path() == 3, "e1 h1 chain length")?;
    Ok(format!(
        "{} words, {} steps, longest chain {}",
        report.words, report.steps_checked, report.longest_chain
    ))
}

fn local_confluence() -> Outcome {
    let start = Instant::now();
    let pairs = enumerate_overlaps(6);
    let families: HashSet<Family> = pairs.iter().map(|p| p.family).collect();
    for family in Family::overlaps() {
        ensure(
            families.contains(&family),
            format!("{family} not instantiated"),
        )?;
    }
    let report = audit_local_confluence(6, AuditOptions::default());
    let elapsed = start.elapsed();
    ensure(report.passed(), report.render())?;
    ensure(
        report.all_instantiated(),
        format!("not instantiated: {:?}", report.not_instantiated),
    )?;
    for row in &report.rows {
        ensure(
            row.joinable == row.instances,
            format!(
                "{} only {}/{} joinable",
                row.family, row.joinable, row.instances
            ),
        )?;
    }

    let mut stated = vec![Family::EpsEpsEps];
    stated.extend(Subcase::ALL.map(Family::EpsEpsEta));
    stated.extend(
        [
            Subcase::A,
            Subcase::B,
            Subcase::C,
            Subcase::D,
            Subcase::E,
            Subcase::F,
        ]
        .map(Family::EpsEtaEta),
    );
    for family in stated {
        let row = report.row(family).unwrap();
        ensure(
            row.closed_form_matches(BoundSource::Stated) == Some(true),
            format!(
                "{family}: stated bound not always a common reduct ({:?})",
                row.closed_form
            ),
        )?;
    }
    let iii = report.row(Family::EtaEtaEta).unwrap();
    ensure(
        iii.closed_form_matches(BoundSource::Dual) == Some(true),
        "III dual bound",
    )?;
    let vg = report.row(Family::EpsEtaEta(Subcase::G)).unwrap();
    ensure(
        vg.closed_form_matches(BoundSource::ChainEnd) == Some(true),
        "V_g chain-end bound",
    )?;
    let (hits, of) = vg.closed_form[&BoundSource::Stated];
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{} overlaps + {} disjoint joinable; closed forms match; V_g printed bound matched {hits}/{of}, chain end {of}/{of} ({elapsed:?})",
        pairs.len(),
        report.row(Family::Disjoint).unwrap().instances
    ))
}

fn oracle_cross_check() -> Outcome {
    let start = Instant::now();
    let report = cross_check_oracle(3, 2, 9);
    ensure(
        report.passed(),
        format!(
            "discrepancies: {:?}",
            &report.discrepancies[..report.discrepancies.len().min(3)]
        ),
    )?;
    ensure(report.skipped == 0, "words above the degree bound")?;
    for (u, v) in [("e0 h1", "1"), ("e1 h1", "1")] {
        let answer = equivalent_bounded(&w(u), &w(v), 9).map_err(|e| e.to_string())?;
        ensure(
            answer.is_equivalent(),
            format!("oracle did not connect {u} and {v}"),
        )?;
    }
    let answer = equivalent_bounded(&w("h0 e0"), &w("1"), 9).map_err(|e| e.to_string())?;
    ensure(!answer.is_equivalent(), "oracle connected h0 e0 with 1")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{} pairs: {} equivalent, {} distinct, 0 discrepancies ({elapsed:?})",
        report.pairs, report.agree_equivalent, report.agree_distinct
    ))
}

fn algebraic_laws() -> Outcome {
    let elements: Vec<Element> = normal_words(2, 2)
        .into_iter()
        .map(|nf| Element::from_normal(nf).unwrap())
        .collect();
    let one = Element::identity();
    for a in &elements {
        ensure(
            a.mul(&one) == *a && one.mul(a) == *a,
            format!("unit law at {a}"),
        )?;
        for b in &elements {
            let ab = a.mul(b);
            for c in &elements {
                ensure(
                    ab.mul(c) == a.mul(&b.mul(c)),
                    format!("associativity at {a}, {b}, {c}"),
                )?;
            }
        }
    }

    let words = all_words(4, 3);
    let mut preimage: HashMap<Element, Element> = HashMap::new();
    for word in &words {
        let shifted = normalize(&word.shifted(1));
        let nf = normalize(word);
        ensure(
            shifted == nf.shifted(1),
            format!("f does not commute with normalize at {word}"),
        )?;
        let a = Element::from_normal(nf).unwrap();
        let image = a.apply_f();
        if let Some(prev) = preimage.insert(image.clone(), a.clone()) {
            ensure(prev == a, format!("f({prev}) = f({a})"))?;
        }
    }
    let small: Vec<Element> = normal_words(2, 3)
        .into_iter()
        .map(|nf| Element::from_normal(nf).unwrap())
        .collect();
    for a in &small {
        for b in &small {
            ensure(
                a.mul(b).apply_f() == a.apply_f().mul(&b.apply_f()),
                format!("f not multiplicative at {a}, {b}"),
            )?;
        }
    }
    ensure(one.apply_f() == one, "f(1) ≠ 1")?;

    for k in 0..=5 {
        let cancel = Word::from_letters([Generator::eps(k), Generator::eta(k)]);
        let shifted = Word::from_letters([Generator::eps(k), Generator::eta(k + 1)]);
        ensure(normalize(&cancel).is_empty(), format!("{cancel} ≠ 1"))?;
        ensure(normalize(&shifted).is_empty(), format!("{shifted} ≠ 1"))?;
    }
    Ok(format!(
        "{} elements associative with unit; f injective on {} classes; ε_kη_k = ε_kη_(k+1) = 1 for k ≤ 5",
        elements.len(),
        preimage.len()
    ))
}

fn n_submonoid() -> Outcome {
    let report = check_n_closure(3, 2);
    ensure(report.passed(), report.render())?;
    ensure(
        in_n(&Element::eps(), 4).witness() == Some(&Word::empty()),
        "e0 not found in N",
    )?;
    ensure(
        in_n(&Element::identity(), 4).witness() == Some(&w("h0")),
        "1 not found in N",
    )?;

    let ms = normal_words(3, 2);
    let members: Vec<Element> = ms.iter().map(|m| Element::new(&n_of(m))).collect();
    let mut products: HashMap<Element, u64> = HashMap::new();
    for (m1, n1) in ms.iter().zip(&members) {
        for (m2, n2) in ms.iter().zip(&members) {
            let bound = n_product_witness(m1, m2).degree() as u64;
            let slot = products.entry(n1.mul(n2)).or_insert(bound);
            *slot = (*slot).min(bound);
        }
    }
    let search_bound = products.values().copied().max().unwrap_or(0);
    let index = NIndex::new(search_bound);
    for product in products.keys() {
        let witness = index.lookup(product);
        let m = witness.witness().ok_or(format!(
            "no witness for {product} within degree {search_bound}"
        ))?;
        ensure(
            Element::new(&n_of(m)) == *product,
            format!("bad witness {m} for {product}"),
        )?;
    }
    Ok(format!(
        "{}; witnesses found for e0, 1 and all {} distinct products",
        report
            .checks
            .iter()
            .map(|c| format!("{}:{}", c.id, c.instances))
            .collect::<Vec<_>>()
            .join(" "),
        products.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 open question answered", open_question),
        ("2 axiom suite", axiom_suite),
        ("3 canonical form uniqueness", canonical_uniqueness),
        ("4 termination", termination),
        ("5 local confluence audit", local_confluence),
        ("6 oracle cross-check", oracle_cross_check),
        ("7 algebraic laws", algebraic_laws),
        ("8 N-submonoid evidence", n_submonoid),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
