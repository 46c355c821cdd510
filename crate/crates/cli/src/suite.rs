//! Seeded property suite over every module. Each check gets its own RNG
//! stream derived from the seed, so reports are reproducible byte for byte.

use serde::Serialize;

use finegraph::arc_graphs::{bouquet_chain, unicorn_arcs, verify_chain, Mat2};
use finegraph::curves_ops::{arc_loop, intersect_curves, intersect_torus, PointKind};
use finegraph::fine_graph::{
    classify_clique3, faces_met, is_edge, necklace_witness_f, refute_n, CliqueType, EdgeKind,
};
use finegraph::gen;
use finegraph::germs_width::germ_fixtures::{back_and_forth, ray, spiral};
use finegraph::germs_width::{distance_path, germ_width, relative_width, Width};
use finegraph::homeo_action::{check_automorphism, TorusMap};
use finegraph::surfaces::faces::{complement_components, FaceMap};
use finegraph::surfaces::{AnnulusArc, TorusCurve};
use finegraph::{Rat, RatPoint};

use crate::io::{EdgeFixture, EdgeLabel};

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub cliques: usize,
    pub necklaces: usize,
    pub refutations: usize,
    pub width_pairs: usize,
    pub chains: usize,
    pub unicorn_max: i64,
    pub pl_maps: usize,
    pub universe: usize,
    pub arc_triples: usize,
}

impl Default for Counts {
    fn default() -> Counts {
        Counts {
            cliques: 100,
            necklaces: 5,
            refutations: 30,
            width_pairs: 200,
            chains: 10,
            unicorn_max: 20,
            pl_maps: 2,
            universe: 16,
            arc_triples: 100,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub counts: Counts,
    /// Extra labeled pairs checked alongside the built-in ones.
    pub fixtures: Vec<EdgeFixture>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub invariant: &'static str,
    pub case: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub counts: Counts,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Check {
    name: &'static str,
    cases: usize,
    violations: Vec<Violation>,
}

impl Check {
    fn new(name: &'static str) -> Check {
        Check { name, cases: 0, violations: Vec::new() }
    }

    fn expect(&mut self, ok: bool, invariant: &'static str, case: impl Into<String>) {
        if !ok {
            self.violations.push(Violation { invariant, case: case.into() });
        }
    }

    fn done(self) -> CheckResult {
        CheckResult { name: self.name, cases: self.cases, violations: self.violations }
    }
}

fn stream(seed: u64, k: u64) -> gen::ChaCha8Rng {
    gen::rng(seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Edge label read straight off the intersection report.
fn report_label(a: &TorusCurve, b: &TorusCurve) -> EdgeLabel {
    let r = intersect_torus(a, b);
    if !r.overlaps.is_empty() || a.same_image(b) {
        return EdgeLabel::NonEdge;
    }
    match r.points.as_slice() {
        [] => EdgeLabel::Disjoint,
        [p] if p.kind == PointKind::Transverse => EdgeLabel::Transverse,
        _ => EdgeLabel::NonEdge,
    }
}

fn edge_label(a: &TorusCurve, b: &TorusCurve) -> Option<EdgeLabel> {
    match is_edge(a, b).ok()? {
        EdgeKind::DisjointEdge => Some(EdgeLabel::Disjoint),
        EdgeKind::TransverseEdge(_) => Some(EdgeLabel::Transverse),
        EdgeKind::NonEdge => Some(EdgeLabel::NonEdge),
    }
}

fn adjacent(a: &TorusCurve, b: &TorusCurve) -> bool {
    !a.same_image(b) && matches!(edge_label(a, b), Some(EdgeLabel::Disjoint | EdgeLabel::Transverse))
}

fn builtin_fixtures() -> Vec<EdgeFixture> {
    let h = |n, d| TorusCurve::horizontal(Rat::new(n, d));
    let v = |n, d| TorusCurve::vertical(Rat::new(n, d));
    let dip = TorusCurve::new(vec![RatPoint::frac(0, 1, -1, 4), RatPoint::frac(1, 2, 0, 1), RatPoint::frac(1, 1, -1, 4)])
        .expect("valid fixture");
    vec![
        EdgeFixture { name: "parallel".into(), a: h(1, 4), b: h(3, 4), label: EdgeLabel::Disjoint },
        EdgeFixture { name: "crossing".into(), a: h(1, 4), b: v(1, 4), label: EdgeLabel::Transverse },
        EdgeFixture { name: "touching".into(), a: h(0, 1), b: dip, label: EdgeLabel::NonEdge },
        EdgeFixture {
            name: "two crossings".into(),
            a: v(0, 1),
            b: TorusCurve::geodesic(2, 1, RatPoint::frac(1, 3, 0, 1)),
            label: EdgeLabel::NonEdge,
        },
    ]
}

fn check_fixtures(extra: &[EdgeFixture]) -> CheckResult {
    let mut c = Check::new("edge_fixtures");
    for f in builtin_fixtures().iter().chain(extra) {
        c.cases += 1;
        let computed = edge_label(&f.a, &f.b);
        c.expect(report_label(&f.a, &f.b) == f.label, "edge_label_matches_report", &f.name);
        c.expect(computed == Some(f.label), "edge_tag_matches_label", &f.name);
    }
    c.done()
}

fn check_cliques(seed: u64, n: usize) -> CheckResult {
    let mut c = Check::new("clique_classifier");
    let mut r = stream(seed, 1);
    let types = [CliqueType::AllDisjoint, CliqueType::TwoPair, CliqueType::Necklace, CliqueType::Bouquet];
    for k in 0..n {
        let ty = types[k % 4];
        let Some(abc) = gen::clique3(&mut r, ty) else {
            c.expect(false, "generator_realizes_type", format!("#{k} {ty:?}"));
            continue;
        };
        c.cases += 1;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let ok = edge_label(&abc[i], &abc[j]) == Some(report_label(&abc[i], &abc[j]));
            c.expect(ok, "edge_tag_matches_report", format!("#{k} pair {i}{j}"));
        }
        let got = classify_clique3(&abc[0], &abc[1], &abc[2]).map(|x| x.clique_type);
        c.expect(got == Ok(ty), "clique_type_matches_report", format!("#{k} {ty:?}"));
    }
    c.done()
}

fn check_witness(seed: u64, n: usize) -> CheckResult {
    let mut c = Check::new("necklace_witness");
    let mut r = stream(seed, 2);
    for k in 0..n {
        let Some(abc) = gen::clique3(&mut r, CliqueType::Necklace) else { continue };
        c.cases += 1;
        let Ok(f) = necklace_witness_f(&abc[0], &abc[1], &abc[2]) else {
            c.expect(false, "witness_set_built", format!("#{k}"));
            continue;
        };
        c.expect((4..=8).contains(&f.len()), "witness_set_size", format!("#{k} |F|={}", f.len()));
        for m in 0..4 {
            let Some(d) = gen::four_clique_completion(&mut r, &abc) else { continue };
            c.expect(f.iter().any(|x| adjacent(&d, x)), "completion_adjacent_to_witness", format!("#{k}.{m}"));
        }
    }
    c.done()
}

fn check_refute(seed: u64, n: usize) -> CheckResult {
    let mut c = Check::new("non_necklace_refutation");
    let mut r = stream(seed, 3);
    let types = [CliqueType::AllDisjoint, CliqueType::TwoPair, CliqueType::Bouquet];
    for k in 0..n {
        let Some(abc) = gen::clique3(&mut r, types[k % 3]) else { continue };
        let alphas = gen::alpha_curves(&mut r, &abc, (k / 3) % 4);
        c.cases += 1;
        let Ok(d) = refute_n(&abc[0], &abc[1], &abc[2], &alphas) else {
            c.expect(false, "refutation_found", format!("#{k}"));
            continue;
        };
        c.expect(abc.iter().all(|x| adjacent(&d, x)), "refutation_is_four_clique", format!("#{k}"));
        let faces = FaceMap::new(&abc).map(|fm| {
            let others: Vec<&TorusCurve> = abc.iter().collect();
            faces_met(&d, &fm, &others).len() == fm.faces.len()
        });
        c.expect(faces == Ok(true), "refutation_meets_every_face", format!("#{k}"));
        let twice = alphas.iter().all(|a| {
            let rep = intersect_torus(&d, a);
            !rep.overlaps.is_empty() || rep.points.len() >= 2
        });
        c.expect(twice, "refutation_breaks_alpha_edges", format!("#{k}"));
    }
    c.done()
}

fn check_width(seed: u64, n: usize) -> CheckResult {
    let mut c = Check::new("relative_width");
    let mut r = stream(seed, 4);
    for k in 0..n {
        let a = gen::annulus_arc(&mut r);
        let b = gen::annulus_arc(&mut r);
        c.cases += 1;
        match (relative_width(&a, &b), relative_width(&b, &a)) {
            (Ok(x), Ok(y)) => {
                c.expect(x.width == y.width, "width_symmetric", format!("#{k}"));
                c.expect(x.is_interval(), "width_interval", format!("#{k}"));
            }
            _ => c.expect(false, "width_defined", format!("#{k}")),
        }
    }
    let a = AnnulusArc::vertical(Rat::new(1, 2));
    for w in 0..=5i64 {
        c.cases += 1;
        let b = AnnulusArc::compact(vec![
            RatPoint::ints(0, 0),
            RatPoint::new(&Rat::new(w, 2) + &Rat::new(1, 5), Rat::new(3, 7)),
            RatPoint::ints(w, 1),
        ])
        .expect("valid fixture");
        let width = relative_width(&a, &b).map(|x| x.width);
        c.expect(width == Ok(Width::Finite(w as u64)), "winding_width", format!("k={w}"));
        match distance_path(&a, &b) {
            Ok(p) => {
                c.expect(p.len() == w as usize + 2, "distance_path_length", format!("k={w}"));
                let disjoint = p.windows(2).all(|x| relative_width(&x[0], &x[1]).is_ok_and(|y| y.width == Width::Finite(0)));
                c.expect(disjoint, "distance_path_consecutive_disjoint", format!("k={w}"));
            }
            Err(_) => c.expect(false, "distance_path_built", format!("k={w}")),
        }
        for m in 0..5 {
            let nb = gen::neighbor(&mut r, &a);
            let wn = relative_width(&nb, &b).map(|x| x.width);
            let ok = matches!(wn, Ok(Width::Finite(x)) if x + 1 >= w as u64);
            c.expect(ok, "neighbor_width_lower_bound", format!("k={w}.{m}"));
        }
    }
    c.done()
}

fn check_germs() -> CheckResult {
    let mut c = Check::new("germ_width");
    let rx = ray(RatPoint::ints(1, 0));
    let cases = [
        (rx.clone(), ray(RatPoint::ints(0, 1)), Width::Finite(0)),
        (ray(RatPoint::frac(1, 1, 1, 5)), spiral(), Width::Infinite),
        (rx, back_and_forth(), Width::Finite(2)),
    ];
    for (k, (g1, g2, want)) in cases.iter().enumerate() {
        c.cases += 1;
        let w = germ_width(g1, g2);
        let back = germ_width(g2, g1);
        c.expect(w.as_ref().is_ok_and(|x| x.width == *want), "germ_width_value", format!("#{k}"));
        c.expect(w.ok().map(|x| x.width) == back.ok().map(|x| x.width), "germ_width_symmetric", format!("#{k}"));
    }
    c.done()
}

fn check_chains(seed: u64, n: usize) -> CheckResult {
    let mut c = Check::new("bouquet_chains");
    let mut r = stream(seed, 5);
    for k in 0..n {
        let Some([a, b, cc]) = gen::bouquet_triple(&mut r) else { continue };
        c.cases += 1;
        match bouquet_chain(&a, &b, &cc) {
            Ok(cert) => c.expect(verify_chain(&cert).is_empty(), "chain_verified", format!("#{k}")),
            Err(_) => c.expect(false, "chain_built", format!("#{k}")),
        }
    }
    c.done()
}

fn check_unicorn(seed: u64, max: i64) -> CheckResult {
    let mut c = Check::new("unicorn_paths");
    let mut r = stream(seed, 6);
    for n in 1..=max {
        let Some((g1, g2)) = gen::unicorn_pair(&mut r, n) else { continue };
        c.cases += 1;
        let Ok(p) = unicorn_arcs(&g1, &g2) else {
            c.expect(false, "unicorn_path_built", format!("n={n}"));
            continue;
        };
        let dec = p.counts.windows(2).all(|w| w[1] < w[0]) && p.counts.last() == Some(&0);
        c.expect(dec, "unicorn_counts_decrease", format!("n={n}"));
        let disjoint = p
            .arcs
            .windows(2)
            .all(|w| intersect_curves(&w[0], &w[1]).is_ok_and(|x| x.interior_count() == 0 && x.overlaps.is_empty()));
        c.expect(disjoint, "unicorn_consecutive_disjoint", format!("n={n}"));
    }
    c.done()
}

fn check_maps(seed: u64, n_maps: usize, n_curves: usize) -> CheckResult {
    let mut c = Check::new("homeomorphism_action");
    let mut r = stream(seed, 7);
    let universe = gen::universe(&mut r, n_curves);
    let gens: [Mat2; 2] = [[[0, -1], [1, 0]], [[1, 1], [0, 1]]];
    let mut maps: Vec<(String, TorusMap)> =
        gens.iter().map(|m| (format!("{m:?}"), TorusMap::linear(*m).expect("unimodular"))).collect();
    for k in 0..n_maps {
        maps.push((format!("pl#{k}"), TorusMap::Pl(gen::pl_map(&mut r))));
    }
    for (name, f) in &maps {
        c.cases += 1;
        let ok = check_automorphism(f, &universe).is_ok_and(|rep| rep.violations.is_empty());
        c.expect(ok, "automorphism_preserves_graph", name.clone());
    }
    c.done()
}

fn check_loops(seed: u64, n: usize) -> CheckResult {
    let mut c = Check::new("arc_loops");
    let mut r = stream(seed, 8);
    for k in 0..n {
        let Some([x, x1, x2]) = gen::arc_triple(&mut r) else { continue };
        c.cases += 1;
        let (Ok(l02), Ok(l01), Ok(l12)) = (arc_loop(&x, &x2), arc_loop(&x, &x1), arc_loop(&x1, &x2)) else {
            c.expect(false, "loop_built", format!("#{k}"));
            continue;
        };
        let (h02, h01, h12) = (l02.homology(), l01.homology(), l12.homology());
        c.expect(h02 == (h01.0 + h12.0, h01.1 + h12.1), "loop_homology_additive", format!("#{k}"));
        let seps: Vec<bool> = [&l02, &l01, &l12]
            .iter()
            .map(|l| complement_components(std::slice::from_ref(*l)).is_ok_and(|f| f.len() == 2))
            .collect();
        c.expect(seps.iter().filter(|&&s| s).count() != 2, "separation_implication", format!("#{k}"));
    }
    c.done()
}

/// Runs every check; the checks run on separate threads and are reported
/// in a fixed order.
pub fn run(cfg: &SuiteConfig) -> SuiteReport {
    let s = cfg.seed;
    let n = &cfg.counts;
    let checks: Vec<CheckResult> = std::thread::scope(|scope| {
        let jobs: Vec<Box<dyn FnOnce() -> CheckResult + Send + '_>> = vec![
            Box::new(|| check_fixtures(&cfg.fixtures)),
            Box::new(|| check_cliques(s, n.cliques)),
            Box::new(|| check_witness(s, n.necklaces)),
            Box::new(|| check_refute(s, n.refutations)),
            Box::new(|| check_width(s, n.width_pairs)),
            Box::new(check_germs),
            Box::new(|| check_chains(s, n.chains)),
            Box::new(|| check_unicorn(s, n.unicorn_max)),
            Box::new(|| check_maps(s, n.pl_maps, n.universe)),
            Box::new(|| check_loops(s, n.arc_triples)),
        ];
        let handles: Vec<_> = jobs.into_iter().map(|j| scope.spawn(j)).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    let passed = checks.iter().all(|c| c.violations.is_empty());
    SuiteReport { seed: cfg.seed, counts: cfg.counts.clone(), passed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_agree() {
        let r = check_fixtures(&[]);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn mislabeled_touching_pair_is_caught() {
        let mut f = builtin_fixtures().remove(2);
        f.label = EdgeLabel::Transverse;
        let r = check_fixtures(&[f]);
        let names: Vec<&str> = r.violations.iter().map(|v| v.invariant).collect();
        assert_eq!(names, ["edge_label_matches_report", "edge_tag_matches_label"]);
    }
}
