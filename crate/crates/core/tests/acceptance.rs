//! Acceptance suite: one line per criterion, then a single assertion that
//! all of them passed. Run with `cargo test --test acceptance -- --nocapture`
//! to see the report.

mod common;

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

use common::*;
use toroidal::base_change::{saturated_base_change, verify_base_change};
use toroidal::cli;
use toroidal::cone::RationalCone;
use toroidal::lattice::vector::sub;
use toroidal::lattice::IntVector;
use toroidal::log_morphism::MonoidChart;
use toroidal::monoid::{hilbert_basis, minimal_elements};
use toroidal::oracle::{self, Box as SearchBox};
use toroidal::toric_chart::ToricChart;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vs(xs: &[&[i64]]) -> Vec<IntVector> {
    xs.iter().map(|x| int_vector(x)).collect()
}

fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
    v.sort();
    v
}

fn hilbert_corpus() -> Vec<RationalCone> {
    let mut r = rng(0x4b1d);
    (0..100).map(|_| random_cone(&mut r, 3, 4)).collect()
}

fn dickson() -> Outcome {
    let mut r = rng(1);
    for i in 0..500 {
        let set = random_tuple_set(&mut r);
        let min = minimal_elements(&set);
        ensure(!min.is_empty(), || format!("set {i}: empty output"))?;
        let kept: Vec<&Vec<u64>> = min.iter().collect();
        for a in &kept {
            ensure(set.contains(a), || format!("set {i}: {a:?} not in the input"))?;
            for b in &kept {
                ensure(a == b || !toroidal::monoid::dominated_by(a, b), || {
                    format!("set {i}: {a:?} lies below {b:?}")
                })?;
            }
        }
        for t in set.iter() {
            ensure(kept.iter().any(|k| toroidal::monoid::dominated_by(k, t)), || {
                format!("set {i}: {t:?} is not covered")
            })?;
        }
        let all: Vec<Vec<u64>> = set.iter().cloned().collect();
        let expected = oracle::brute_minimal_elements(&all);
        let got: Vec<Vec<u64>> = min.iter().cloned().collect();
        ensure(got == expected, || format!("set {i}: oracle disagrees"))?;
    }
    Ok("500 sets".into())
}

fn hilbert(corpus: &[RationalCone]) -> Outcome {
    for (i, c) in corpus.iter().enumerate() {
        let ours = sorted(hilbert_basis(c).map_err(|e| e.to_string())?.generators().to_vec());
        let brute = oracle::brute_hilbert_basis(c, &SearchBox::zonotope(c.ambient_rank(), c.rays()));
        ensure(ours == brute, || format!("cone {i} {:?}: {:?} vs oracle {:?}", c.rays(), ours, brute))?;
    }
    Ok(format!("{} cones", corpus.len()))
}

fn dual_involution(corpus: &[RationalCone]) -> Outcome {
    for (i, c) in corpus.iter().enumerate() {
        let back = c.dual().dual();
        ensure(&back == c && back.generators() == c.generators(), || {
            format!("cone {i}: {:?} came back as {:?}", c.rays(), back.rays())
        })?;
    }
    Ok(format!("{} cones", corpus.len()))
}

/// Checks ideal membership and minimality over `b` against the oracle.
fn check_ideal(chart: &ToricChart, b: &SearchBox) -> Result<usize, String> {
    let ideal = chart.boundary_ideal_generators().map_err(|e| e.to_string())?;
    let points = oracle::enumerate_cone_points(chart.dual_monoid().cone(), b);
    // differences m - g can leave `b`, so they are looked up in a larger box
    let wide = b.widened(oracle::ideal_reach(&ideal));
    let lookup = oracle::PointSet::new(&oracle::enumerate_cone_points(chart.dual_monoid().cone(), &wide));
    let rays = chart.cone().rays();
    for m in &points {
        let positive = rays.iter().all(|r| toroidal::lattice::vector::dot(m, r) >= 1.into());
        ensure(positive == oracle::brute_ideal_membership(&ideal, m, &lookup), || {
            format!("chart {:?}: membership of {m:?} disagrees", rays)
        })?;
    }
    for g in &ideal.generator_exponents {
        for h in &ideal.generator_exponents {
            ensure(g == h || !oracle::brute_dual_contains(rays, &sub(h, g)), || {
                format!("chart {:?}: generator {g:?} divides {h:?}", rays)
            })?;
        }
    }
    Ok(points.len())
}

fn boundary_ideal() -> Outcome {
    let a2 = ToricChart::new(2, &vs(&[&[1, 0], &[0, 1]])).unwrap();
    let quadric = ToricChart::new(2, &vs(&[&[1, 0], &[1, 2]])).unwrap();
    let square = SearchBox::new(vec![0, 0], vec![6, 6]);
    for (name, chart, expected) in [("A2", &a2, vs(&[&[1, 1]])), ("quadric", &quadric, vs(&[&[1, 0]]))] {
        let got = chart.boundary_ideal_generators().map_err(|e| e.to_string())?.generator_exponents;
        ensure(got == expected, || format!("{name}: {got:?}"))?;
        check_ideal(chart, &square)?;
    }
    let mut r = rng(4);
    let mut points = 0;
    for _ in 0..30 {
        let n = r.gen_range(2..=3);
        let chart = ToricChart::from_cone(random_cone_of_rank(&mut r, n, 3, None)).unwrap();
        points += check_ideal(&chart, &SearchBox::cube(n, 4))?;
    }
    Ok(format!("2 golden charts, 30 random charts, {points} points"))
}

fn log_smoothness() -> Outcome {
    let mut r = rng(5);
    let mut smooth = 0;
    for i in 0..200 {
        let c = random_chart(&mut r, 3);
        let verdict = c.is_log_smooth();
        let gens = c.source().generators();
        let images: Vec<IntVector> = gens.iter().map(|g| c.map().apply(g)).collect();
        let injective = oracle::brute_rank(gens) == oracle::brute_rank(&images);
        ensure(verdict.verdict == injective, || format!("chart {i}: verdict {}", verdict.verdict))?;
        ensure(verdict.verdict == verdict.kernel.is_empty(), || format!("chart {i}: certificate"))?;
        for k in &verdict.kernel {
            ensure(
                oracle::brute_group_contains(&c.source().group(), k)
                    && c.map().apply(k).iter().all(|x| *x == 0.into()),
                || format!("chart {i}: {k:?} is not in the kernel"),
            )?;
        }
        ensure(!c.is_log_etale() || verdict.verdict, || format!("chart {i}: etale but not smooth"))?;
        smooth += verdict.verdict as usize;
    }
    Ok(format!("200 charts, {smooth} log smooth"))
}

fn golden_base_change() -> Outcome {
    let n = orthant(1);
    let times = |k: i64| {
        MonoidChart::new(n.clone(), n.clone(), toroidal::lattice::LatticeMap::from_rows(1, vs(&[&[k]])).unwrap())
            .unwrap()
    };
    let cusp = saturated_base_change(&times(2), &times(3)).map_err(|e| e.to_string())?;
    ensure(cusp.main_monoid.same_monoid(&n) && cusp.torsion_order == 1.into(), || {
        format!("cusp: {:?}, torsion {}", cusp.main_monoid.generators(), cusp.torsion_order)
    })?;
    ensure(cusp.structural_map.map().rows() == vs(&[&[2]]).as_slice() && cusp.fibre_dim == 0, || {
        "cusp: structural map".into()
    })?;
    let node = saturated_base_change(&times(2), &times(2)).map_err(|e| e.to_string())?;
    ensure(node.main_monoid.same_monoid(&n) && node.torsion_order == 2.into(), || {
        format!("node: {:?}, torsion {}", node.main_monoid.generators(), node.torsion_order)
    })?;
    ensure(node.structural_map.map().rows() == vs(&[&[1]]).as_slice() && node.fibre_dim == 0, || {
        "node: structural map".into()
    })?;
    let theta = MonoidChart::new(
        n.clone(),
        orthant(2),
        toroidal::lattice::LatticeMap::from_rows(1, vs(&[&[1], &[0]])).unwrap(),
    )
    .unwrap();
    let id = saturated_base_change(&theta, &MonoidChart::identity(&n)).map_err(|e| e.to_string())?;
    ensure(
        id.main_monoid.same_monoid(theta.target())
            && id.structural_map.map() == theta.map()
            && id.torsion_order == 1.into()
            && id.fibre_dim == 1,
        || "identity base change".into(),
    )?;
    for (name, r, t) in [("cusp", &cusp, times(2)), ("node", &node, times(2)), ("identity", &id, theta.clone())] {
        let report = verify_base_change(r, &t);
        ensure(report.passed(), || format!("{name}: {:?}", report.diagnostics))?;
    }
    Ok("cusp, node, identity".into())
}

fn stability() -> Outcome {
    let mut r = rng(7);
    let mut torsion = 0;
    for i in 0..100 {
        let (theta, phi) = random_base_change_pair(&mut r, 3);
        let result = saturated_base_change(&theta, &phi).map_err(|e| format!("pair {i}: {e}"))?;
        let report = verify_base_change(&result, &theta);
        ensure(report.passed(), || format!("pair {i}: {:?}", report.diagnostics))?;
        torsion += (result.torsion_order != 1.into()) as usize;
    }
    Ok(format!("100 pairs, {torsion} with torsion"))
}

fn torus_split() -> Outcome {
    let mut r = rng(8);
    let mut done = 0;
    while done < 50 {
        let n = r.gen_range(2..=4);
        let sigma = random_cone_of_rank(&mut r, n, 3, None);
        let faces: Vec<_> = sigma
            .faces()
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|f| f.dim() < n)
            .collect();
        let face = faces.choose(&mut r).expect("the zero face is proper");
        let chart = ToricChart::from_cone(face.cone()).map_err(|e| e.to_string())?;
        let split = chart.split_torus_factor().map_err(|e| e.to_string())?;
        ensure(split.torus_rank == n - face.dim(), || format!("face {done}: torus rank"))?;
        let reassembled = split.reassemble();
        let target = chart.dual_monoid();
        ensure(
            split.factor_monoid.generators().len() == target.sharp_generators().len()
                && reassembled.sharp_generators().len() == target.sharp_generators().len()
                && reassembled.same_monoid(target),
            || format!("face {done} of {:?}: reassembly differs", sigma.rays()),
        )?;
        done += 1;
    }
    Ok("50 faces".into())
}

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn cli_determinism() -> Outcome {
    let files = fixtures();
    for f in &files {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_toroidal"))
                .args(["run", "--input"])
                .arg(f)
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        ensure(a.status.code() == Some(0), || format!("{}: exit {:?}", f.display(), a.status.code()))?;
        ensure(a.stdout == b.stdout, || format!("{}: certificates differ", f.display()))?;
        let text = fs::read_to_string(f).unwrap();
        let original: Value = serde_json::from_str(&text).unwrap();
        let parsed = cli::parse(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        ensure(cli::serialize(&parsed) == original, || format!("{}: round trip", f.display()))?;
    }
    Ok(format!("{} fixtures", files.len()))
}

#[test]
fn acceptance() {
    let corpus = hilbert_corpus();
    let criteria: Vec<Criterion> = vec![
        ("Dickson minimal elements", Duration::from_secs(5), Box::new(dickson)),
        ("Hilbert basis vs oracle", Duration::from_secs(60), Box::new(|| hilbert(&corpus))),
        ("dual involution", Duration::from_secs(10), Box::new(|| dual_involution(&corpus))),
        ("boundary ideal", Duration::from_secs(30), Box::new(boundary_ideal)),
        ("log-smoothness classifier", Duration::from_secs(5), Box::new(log_smoothness)),
        ("base change golden cases", Duration::from_secs(1), Box::new(golden_base_change)),
        ("stability under saturated base change", Duration::from_secs(120), Box::new(stability)),
        ("torus factor splitting", Duration::from_secs(30), Box::new(torus_split)),
        ("CLI determinism and round trip", Duration::from_secs(5), Box::new(cli_determinism)),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let line = match &outcome {
            Ok(detail) if elapsed <= *limit => format!("PASS  {detail}"),
            Ok(_) => format!("FAIL  over the time limit of {limit:?}"),
            Err(e) => format!("FAIL  {e}"),
        };
        println!("criterion {} [{name}] {line} ({:.2?})", i + 1, elapsed);
        if !line.starts_with("PASS") {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
