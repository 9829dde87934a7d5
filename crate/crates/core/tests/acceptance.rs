//! One line per criterion; run with `--nocapture` to see them.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use layered_model::assembly::{assemble_model, assemble_model_detailed, AnnulusGraph, AnnulusNode};
use layered_model::disk_oracle::{
    cyclic_reduce, free_group_verdict, structural_verdict, Attestations, CurveWordMarking, VerdictKind,
};
use layered_model::model::{build_product_model, validate_complex, LinkId};
use layered_model::moves::{applicable_moves, apply_move, inverse_repairing, random_path, Move, MoveKind, MovePath};
use layered_model::pants_graph::{enumerate_pants_graphs, CurveId, PantsGraph};
use layered_model::spines::{
    build_fat_spine, classify_loops, handlebody_trees, induced_boundary_decomposition, layer_number_lower_bound,
    layer_number_lower_bound_seeded, LoopClass, SpineTree,
};
use layered_model::Error;

// wall-clock limits
const ENUMERATION_LIMIT: Duration = Duration::from_secs(5);
const MOVE_FUZZ_LIMIT: Duration = Duration::from_secs(30);
const PRODUCT_LIMIT: Duration = Duration::from_secs(60);
const SPINE_LIMIT: Duration = Duration::from_secs(30);
const ASSEMBLY_LIMIT: Duration = Duration::from_secs(10);
const WORD_FUZZ_LIMIT: Duration = Duration::from_secs(30);

// fuzz sizes
const MOVE_FUZZ_CASES: usize = 10_000;
const RANDOM_PATHS: usize = 200;
const MAX_PATH_LEN: usize = 50;
const WORD_FUZZ_CASES: usize = 10_000;

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

fn enumeration() -> Outcome {
    let n3 = brute_force_class_count(3);
    ensure(brute_force_class_count(2) == 2, || "brute force genus 2 disagrees".into())?;
    for (g, want) in [(2, 2), (3, n3)] {
        let start = Instant::now();
        let got = enumerate_pants_graphs(g).map_err(|e| e.to_string())?.len();
        within(start, ENUMERATION_LIMIT)?;
        ensure(got == want, || format!("genus {g}: {got} classes, oracle {want}"))?;
    }
    Ok(format!("genus 2: 2 classes, genus 3: {n3} classes (brute-force oracle)"))
}

fn move_algebra() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let classes: Vec<PantsGraph> = [2, 3].iter().flat_map(|&g| enumerate_pants_graphs(g).unwrap()).collect();
    for case in 0..MOVE_FUZZ_CASES {
        let g = &classes[case % classes.len()];
        // scramble the ids so the fuzz does not lean on the fresh-id layout
        let offset = rng.gen_range(0..1000);
        let g = g.relabel_curves(|c| CurveId(c.0 * 7 + offset)).unwrap();
        let opts = applicable_moves(&g);
        let o = &opts[rng.gen_range(0..opts.len())];
        let fresh = CurveId(g.max_curve_id().0 + 1);
        let twist = rng.gen_range(-3..=3);
        match o.kind {
            MoveKind::S => {
                let h = apply_move(&g, &Move::s(o.curve, twist, fresh)).map_err(|e| e.to_string())?;
                ensure(h.canonical_form() == g.canonical_form(), || format!("case {case}: S-move changed the class"))?;
            }
            MoveKind::A => {
                let r = o.repairings[rng.gen_range(0..o.repairings.len())];
                let h = apply_move(&g, &Move::a(o.curve, r, 0, fresh)).map_err(|e| e.to_string())?;
                let back = Move::a(fresh, inverse_repairing(r), 0, CurveId(fresh.0 + 1));
                let k = apply_move(&h, &back).map_err(|e| e.to_string())?;
                ensure(k.is_isomorphic(&g), || format!("case {case}: A-move round trip failed"))?;
            }
        }
    }
    within(start, MOVE_FUZZ_LIMIT)?;
    Ok(format!("{MOVE_FUZZ_CASES} cases, 0 failures"))
}

fn product_counting() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut disjoint = 0;
    for i in 0..RANDOM_PATHS {
        let g: u32 = rng.gen_range(2..=5);
        let n = rng.gen_range(0..=MAX_PATH_LEN);
        let path = random_path(&PantsGraph::chain(g).unwrap(), n, i as u64, 2);
        let m = build_product_model(&path).map_err(|e| e.to_string())?;
        let gi = g as usize;
        ensure(m.blocks.len() == n, || format!("path {i}: {} blocks for {n} moves", m.blocks.len()))?;
        ensure(m.links.len() == 3 * gi - 3 + n, || format!("path {i}: {} links", m.links.len()))?;
        for (k, st) in m.stages.iter().enumerate() {
            ensure(st.faces.len() == 2 * gi - 2, || format!("path {i} stage {k}: {} exposed faces", st.faces.len()))?;
        }
        let first: BTreeSet<CurveId> = path.base.curve_ids().collect();
        let last: BTreeSet<CurveId> = path.last_graph().unwrap().curve_ids().collect();
        if first.is_disjoint(&last) {
            disjoint += 1;
            let chi = m.euler_characteristic().map_err(|e| e.to_string())?;
            ensure(chi == 2 - 2 * g as i64, || format!("path {i}: χ = {chi}"))?;
        }
    }
    within(start, PRODUCT_LIMIT)?;
    ensure(disjoint > 0, || "no path with disjoint ends was sampled".into())?;
    Ok(format!("{RANDOM_PATHS} paths, {disjoint} with disjoint ends"))
}

fn theta_fixture() -> Outcome {
    let path: MovePath = layered_model::io::read_json(&fixture("theta3a.path.json")).map_err(|e| e.to_string())?;
    let m = build_product_model(&path).map_err(|e| e.to_string())?;
    // hand count: 2 base faces, 2 new per A-block; each block covers two
    // faces below and two above; the last two faces stay exposed
    let faces = 2 + 2 * 3;
    let covered_twice = faces - 2 - 2;
    let chi_oracle = -2 * 3 + (2 * 2 * 3 - faces) as i64;
    ensure(m.faces.len() == faces, || format!("{} faces", m.faces.len()))?;
    ensure(m.internal_face_count() == covered_twice, || format!("{} internal", m.internal_face_count()))?;
    let chi = m.euler_characteristic().map_err(|e| e.to_string())?;
    ensure(chi == chi_oracle && chi == -2, || format!("χ = {chi}"))?;
    Ok("8 faces, 4 internal, χ = -2".into())
}

fn spine_invariants() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for g in 2..=4u32 {
        let trees = handlebody_trees(g).map_err(|e| e.to_string())?;
        for t in &trees {
            let m = build_fat_spine(t).map_err(|e| e.to_string())?;
            let chi = m.euler_characteristic().map_err(|e| e.to_string())?;
            ensure(chi == 1 - g as i64, || format!("genus {g}: χ = {chi}"))?;
            let lifts: usize = m.links.iter().map(|l| l.germs.len()).sum();
            ensure(lifts == 3 * g as usize - 3, || format!("genus {g}: {lifts} lifts"))?;
        }
        counts.push(trees.len());
    }
    within(start, SPINE_LIMIT)?;
    let d = induced_boundary_decomposition(&build_fat_spine(&SpineTree::genus_two()).unwrap()).unwrap();
    ensure(d.is_isomorphic(&PantsGraph::dumbbell()), || "genus-2 spine does not induce the dumbbell".into())?;
    Ok(format!("trees per genus 2..4: {counts:?}"))
}

fn layer_numbers() -> Outcome {
    let d = layer_number_lower_bound(&PantsGraph::dumbbell(), 2, 3).map_err(|e| e.to_string())?;
    let t = layer_number_lower_bound(&PantsGraph::theta(), 2, 3).map_err(|e| e.to_string())?;
    ensure(d == Some(0) && t == Some(1), || format!("dumbbell {d:?}, theta {t:?}"))?;
    for seed in 0..8 {
        let ds = layer_number_lower_bound_seeded(&PantsGraph::dumbbell(), 2, 3, seed).unwrap();
        let ts = layer_number_lower_bound_seeded(&PantsGraph::theta(), 2, 3, seed).unwrap();
        ensure(ds == d && ts == t, || format!("seed {seed} changed the bound"))?;
    }
    Ok("dumbbell 0, theta 1, stable over 8 seeds".into())
}

fn assembly() -> Outcome {
    let start = Instant::now();
    let (s, models, thick) = genus_two_double();
    let a = assemble_model_detailed(&s, &models, &thick, &[]).map_err(|e| e.to_string())?;
    let m = &a.model;
    ensure(validate_complex(m).valid, || "assembled complex fails validation".into())?;
    let chi = m.euler_characteristic().map_err(|e| e.to_string())?;
    let (sb, ab) = m.block_counts();
    ensure(chi == 0, || format!("χ = {chi}"))?;
    ensure(m.internal_face_count() == sb + 2 * ab, || format!("{} internal faces", m.internal_face_count()))?;
    let (s2, models2, thick2) = two_thick();
    let shared = MovePath::empty(PantsGraph::dumbbell());
    match assemble_model(&s2, &models2, &thick2, &[shared]) {
        Err(Error::SharedLoopViolation(v)) if !v.is_empty() => {}
        other => return Err(format!("shared-loop thin path gave {:?}", other.map(|_| ())))?,
    }
    within(start, ASSEMBLY_LIMIT)?;
    Ok(format!("{sb} S + {ab} A blocks, {} internal faces, χ = 0; shared loop rejected", m.internal_face_count()))
}

fn annulus_crushing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut with_cycles = 0;
    for case in 0..500 {
        let n = rng.gen_range(1..12);
        let e = rng.gen_range(0..2 * n);
        let nodes = (0..n as u32).map(|i| AnnulusNode::Loop { body: 0, link: LinkId(i) }).collect();
        let edges = (0..e).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let g = AnnulusGraph::new(nodes, edges);
        let c = g.crush();
        if g.cycle_rank() > 0 {
            with_cycles += 1;
            ensure(!g.tori().is_empty(), || format!("case {case}: cycle not detected"))?;
        }
        ensure(c.is_forest(), || format!("case {case}: crushed graph has a cycle"))?;
        ensure(c.crush() == c, || format!("case {case}: crushing is not idempotent"))?;
        ensure(c.components().len() == g.components().len(), || format!("case {case}: components changed"))?;
    }
    Ok(format!("500 graphs, {with_cycles} with cycles"))
}

fn random_word(rng: &mut ChaCha8Rng) -> Vec<i32> {
    let len = rng.gen_range(0..16);
    (0..len).map(|_| if rng.gen() { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) }).collect()
}

fn oracle_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..WORD_FUZZ_CASES {
        let w = random_word(&mut rng);
        let r = cyclic_reduce(&w);
        ensure(cyclic_reduce(&r) == r, || format!("case {case}: not idempotent on {w:?}"))?;
        if !w.is_empty() {
            let k = rng.gen_range(0..w.len());
            let rot: Vec<i32> = w[k..].iter().chain(&w[..k]).copied().collect();
            ensure(cyclic_reduce(&rot) == r, || format!("case {case}: rotation changed {w:?}"))?;
        }
        let l = rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 };
        let at = rng.gen_range(0..=w.len());
        let mut padded = w.clone();
        padded.splice(at..at, [l, -l]);
        let fmt = |w: &[i32]| layered_model::disk_oracle::format_word(w);
        let a = free_group_verdict(&CurveWordMarking::new(3).with(LinkId(0), &fmt(&w)), LinkId(0)).unwrap();
        let b = free_group_verdict(&CurveWordMarking::new(3).with(LinkId(0), &fmt(&padded)), LinkId(0)).unwrap();
        ensure(a.kind == b.kind, || format!("case {case}: trivial pair changed the verdict of {w:?}"))?;
    }
    within(start, WORD_FUZZ_LIMIT)?;
    // both backends definite: they must agree
    let mut doubly = 0;
    for f in marked_corpus() {
        let mut atts = vec![];
        if qualifies(&f) {
            atts.push(Attestations { minimal_layer_disk_free: true, strongly_irreducible: false });
        }
        // a null-homotopic spine loop rules out strong irreducibility
        if f.family == WordFamily::Commutator {
            atts.push(Attestations { minimal_layer_disk_free: false, strongly_irreducible: true });
        }
        for att in atts {
            for l in &f.model.links {
                let s = structural_verdict(&f.model, l.id, &att);
                let w = free_group_verdict(&f.marking, l.id).unwrap();
                if s.is_definite() && w.is_definite() {
                    doubly += 1;
                    ensure(s.kind == w.kind, || {
                        format!("{} on {:?}: structural {} vs word {}", l.id, f.path.moves, s.kind, w.kind)
                    })?;
                }
            }
        }
    }
    ensure(doubly > 0, || "no doubly-covered loop in the corpus".into())?;
    Ok(format!("{WORD_FUZZ_CASES} words, {doubly} doubly-covered loops agree"))
}

/// Minimal layering whose induced decomposition is disk-free under the
/// marking.
fn qualifies(f: &MarkedFixture) -> bool {
    let target = f.model.stages.last().unwrap();
    let disk_free =
        target.curve_links.values().all(|&l| free_group_verdict(&f.marking, l).unwrap().kind == VerdictKind::NoDisk);
    let bound = layer_number_lower_bound(&target.graph, 2, 3).unwrap();
    disk_free && bound == Some(f.model.layer_count())
}

fn lemma_shadow() -> Outcome {
    let corpus = marked_corpus();
    let mut checked = 0;
    let mut disks = 0;
    for f in corpus.iter().filter(|f| qualifies(f)) {
        checked += 1;
        let classes = classify_loops(&f.model);
        for l in &f.model.links {
            if free_group_verdict(&f.marking, l.id).unwrap().kind == VerdictKind::BoundsDisk {
                disks += 1;
                ensure(classes[&l.id] == LoopClass::Interior, || {
                    format!("{} bounds a disk but lies on the boundary after {:?}", l.id, f.path.moves)
                })?;
            }
        }
    }
    ensure(checked > 0 && disks > 0, || format!("vacuous: {checked} fixtures, {disks} disks"))?;
    Ok(format!("{} fixtures, {checked} minimal and disk-free, {disks} disk loops all interior", corpus.len()))
}

fn cli_matrix() -> Vec<Vec<String>> {
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        s(&["enumerate", "--genus", "2"]),
        s(&["enumerate", "--genus", "3", "--format", "dot"]),
        vec!["build-model".into(), "--path".into(), f("theta3a.path.json")],
        s(&["build-model", "--genus", "3", "--seed", "7", "--steps", "12", "--twist-bound", "2"]),
        s(&["fat-spine", "--genus", "3", "--index", "5"]),
        vec!["layer-number".into(), "--target".into(), f("theta.graph.json"), "--seed".into(), "4".into()],
        vec!["assemble".into(), "--manifest".into(), f("double.manifest.json"), "--certify".into()],
        vec!["check".into(), f("k2_shared.manifest.json")],
        vec!["export".into(), f("q.path.json"), "--format".into(), "dot".into()],
    ]
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_layered-model");
    let matrix = cli_matrix();
    for args in &matrix {
        let a = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let b = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || {
            format!("{args:?} differs between runs")
        })?;
        ensure(!a.stdout.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok(format!("{} invocations byte-identical", matrix.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("enumeration oracle", enumeration),
        ("move algebra", move_algebra),
        ("product-model counting", product_counting),
        ("theta fixture", theta_fixture),
        ("spine invariants", spine_invariants),
        ("layer-number bounds", layer_numbers),
        ("assembly", assembly),
        ("annulus crushing", annulus_crushing),
        ("oracle soundness", oracle_soundness),
        ("minimal-layer disk loops", lemma_shadow),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("[FAIL] {:>2} {name}: {why}", i + 1);
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
