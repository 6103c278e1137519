use sparks::bundle::{total_cycle, DiscreteLineBundle};
use sparks::cech::fixtures::{fixture, fixture_complex, violation_fixtures, FIXTURE_NAMES};
use sparks::cech::hyper::HyperModel;
use sparks::cech::{CechModel, SimplicialMap, SparkPullback};
use sparks::complex::{cohomology, Coeff};
use sparks::io::{self, Report};
use sparks::linalg::{Int, Rat};
use sparks::product::{ProductForm, ProductStructure};
use sparks::spark::sample::rng;
use sparks::spark::Spark;
use sparks::{Error, Result};
use std::path::Path;
use std::sync::Arc;

fn model(name: &str) -> Result<Arc<CechModel>> {
    let fx = fixture(name)?;
    Ok(Arc::new(CechModel::build(&fx.model_base, &fx.cover)?))
}

/// Writes `<name>.scx` for every fixture plus example sparks and bundles on circle6.
pub fn dump(report: &mut Report, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::input(format!("cannot create {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let mut put = |name: String, text: String| -> Result<()> {
        std::fs::write(dir.join(&name), text).map_err(|e| Error::input(format!("cannot write {name}: {e}")))?;
        files.push(name);
        Ok(())
    };
    for name in FIXTURE_NAMES.iter().chain(["octahedron"].iter()) {
        put(format!("{name}.scx"), io::write_scx(&fixture_complex(name)?))?;
    }
    let m = model("circle6")?;
    let sc = &m.spark;
    for (file, v) in [("circle6_half.spk", Rat::from_frac(1, 2)), ("circle6_three_halves.spk", Rat::from_frac(3, 2))] {
        put(file.into(), io::write_spk(&constant_spark(&m, v)?))?;
    }
    let gen = cohomology(sc.i(), 1)?.representatives[0].clone();
    let z = (0..6).map(|i| [i, (i + 1) % 6]).collect::<Vec<_>>();
    for (file, q) in [("circle6_third.lbd", 3), ("circle6_half.lbd", 2)] {
        let mut theta: Vec<Rat> = gen.iter().map(|v| v * &Rat::from_frac(1, q)).collect();
        let l = DiscreteLineBundle::flat(m.clone(), &theta)?;
        if l.holonomy(&loop_chain(&m, &z))? != Rat::from_frac(1, q) {
            theta = theta.iter().map(|v| -v).collect();
        }
        put(file.into(), io::write_lbd(&DiscreteLineBundle::flat(m.clone(), &theta)?))?;
    }
    for v in violation_fixtures()? {
        let file = if v.axiom == "axiom (i)" { "violation_e_is_f.spc" } else { "violation_duplicate_index.spc" };
        put(file.into(), io::write_spc(&v.spark))?;
    }
    report.section("written").extend(files.iter().map(|f| dir.join(f).display().to_string()));
    Ok(())
}

/// Degree-0 spark with `a` the constant `v` on every member.
fn constant_spark(m: &CechModel, v: Rat) -> Result<Spark> {
    let sc = &m.spark;
    sc.make_spark(0, vec![v; sc.f().rank(0)], vec![Int::zero(); sc.i().rank(1)])
}

fn loop_chain(m: &CechModel, edges: &[[usize; 2]]) -> Vec<Int> {
    let mut z = vec![Int::zero(); m.base.count(1)];
    for &[u, v] in edges {
        let j = m.base.index_of(&[u.min(v), u.max(v)]).expect("edge");
        z[j] = if u < v { Int::one() } else { -Int::one() };
    }
    z
}

pub fn run(report: &mut Report, seed: u64) -> Result<()> {
    report.section("fixtures");
    for name in FIXTURE_NAMES {
        let fx = fixture(name)?;
        let m = Arc::new(CechModel::build(&fx.model_base, &fx.cover)?);
        let k = fx.complex.cochain_complex(Coeff::Z);
        let i = m.spark.i();
        let same = k.degrees().all(|d| match (cohomology(&k, d), cohomology(i, d)) {
            (Ok(a), Ok(b)) => a.descriptor == b.descriptor,
            _ => false,
        });
        report.check(&format!("{name}: H(K; Z) equals H(nerve; Z)"), same);
        report.check(&format!("{name}: spark axioms"), m.spark.check_axioms()?.is_empty());
        let g = m.spark.grid(0, 8, seed);
        report.check(&format!("{name}: grid k=0"), g.passed());
        let h = HyperModel::over(m.clone())?;
        let mut r = rng(seed);
        let mut round = true;
        for k in -1..=1 {
            let s = m.spark.random_spark(k, &mut r);
            let l = h.quasi.lift(&h.quasi.push(&s))?;
            round &= m.spark.sparks_equivalent(&l.spark, &s).is_some();
        }
        report.check(&format!("{name}: push/lift round trip"), round);
        let ps = ProductStructure::new(m.clone());
        report.check(&format!("{name}: Leibniz on samples"), ps.leibniz_sampled(&mut r, 1));
        let u = ps.unit()?;
        let s = m.spark.random_spark(0, &mut r);
        let us = ps.product(&u, &s, ProductForm::Curvature)?;
        report.check(&format!("{name}: unit law"), m.spark.sparks_equivalent(&us, &s).is_some());
    }
    report.section("violations");
    for v in violation_fixtures()? {
        let labels: Vec<&str> = v.spark.check_axioms()?.iter().map(|f| f.axiom()).collect();
        report.check(&format!("{} rejected by {}", v.name, v.axiom), labels == [v.axiom]);
    }
    report.section("line bundles");
    let sphere = model("sphere")?;
    for d in -2..=3i64 {
        let l = DiscreteLineBundle::from_chern(sphere.clone(), &[Int::from(d)])?;
        report.check(&format!("sphere: chern of the degree {d} bundle"), l.chern_class()? == vec![Int::from(d)]);
    }
    report.section("pullback");
    let (c12, c6, pt) = (model("circle12")?, model("circle6")?, model("point")?);
    let f = SparkPullback::new(
        c12.clone(),
        c6.clone(),
        SimplicialMap { vertex_map: (0..12).map(|i| i % 6).collect() },
        None,
    )?;
    let g = SparkPullback::new(c6.clone(), pt.clone(), SimplicialMap { vertex_map: vec![0; 6] }, None)?;
    let gf = SparkPullback::new(c12.clone(), pt.clone(), SimplicialMap { vertex_map: vec![0; 12] }, None)?;
    let mut r = rng(seed);
    let mut functorial = true;
    for k in -1..=1 {
        let s = pt.spark.random_spark(k, &mut r);
        functorial &= f.pull(&g.pull(&s)?)? == gf.pull(&s)?;
    }
    report.check("circle12 -> circle6 -> point functoriality", functorial);
    let gen = cohomology(c6.spark.i(), 1)?.representatives[0].clone();
    let mut theta: Vec<Rat> = gen.iter().map(|v| v * &Rat::from_frac(1, 3)).collect();
    let edges6: Vec<[usize; 2]> = (0..6).map(|i| [i, (i + 1) % 6]).collect();
    let edges12: Vec<[usize; 2]> = (0..12).map(|i| [i, (i + 1) % 12]).collect();
    if DiscreteLineBundle::flat(c6.clone(), &theta)?.holonomy(&loop_chain(&c6, &edges6))? != Rat::from_frac(1, 3) {
        theta = theta.iter().map(|v| -v).collect();
    }
    let l = DiscreteLineBundle::flat(c6.clone(), &theta)?;
    let pulled = f.pull(&l.to_spark())?;
    let hol = c12.spark.evaluate(&pulled, &total_cycle(&c12, 1, &loop_chain(&c12, &edges12))?)?;
    report.check("doubling map sends holonomy 1/3 to 2/3", hol == Rat::from_frac(2, 3));
    Ok(())
}
