use crate::{BundleOp, Cli, CoeffArg, Command, FormArg, ModelKind};
use sparks::bundle::{total_cycle, vertex_loop, DiscreteLineBundle};
use sparks::cech::fixtures::{choose_cover, fixture_complex, CoverKind, FIXTURE_NAMES};
use sparks::cech::hyper::HyperModel;
use sparks::cech::level::LevelModel;
use sparks::cech::pullback::subdivided_map;
use sparks::cech::{dual_block_cover, star_cover, CechModel, SimplicialComplex, SimplicialMap, SparkPullback};
use sparks::complex::{cohomology, Coeff};
use sparks::io::{self, Report};
use sparks::linalg::Int;
use sparks::product::{ProductForm, ProductStructure};
use sparks::{Error, Result};
use std::path::Path;
use std::sync::Arc;

/// Runs one command; returns the artifact written by `--out`, if any.
pub fn run(cli: &Cli, report: &mut Report) -> Result<Option<String>> {
    match &cli.command {
        Command::Cohomology { complex } => {
            let k = load_complex(complex)?;
            let coeff = if cli.coeff == CoeffArg::Z { Coeff::Z } else { Coeff::Q };
            let c = k.cochain_complex(coeff);
            let lines = report.section(format!("H^*({complex}; {})", if coeff == Coeff::Z { "Z" } else { "Q" }));
            for d in c.degrees() {
                lines.push(format!("H^{d} = {}", cohomology(&c, d)?.descriptor));
            }
            Ok(None)
        }
        Command::CheckCover { complex } => {
            let k = load_complex(complex)?;
            let star = star_cover(&k);
            let s = report.section("star cover");
            s.push(format!("members {}, nerve dimension {}", star.members.len(), star.nerve.dim()));
            match star.defect() {
                None => s.push("every nonempty intersection is acyclic".into()),
                Some(d) => s.push(format!("defect: {d}")),
            }
            let good = report.check("star cover is good", star.is_good());
            if !good {
                let (_, _, cover) = dual_block_cover(&k);
                let s = report.section("fallback");
                s.push(format!("dual-block cover on the barycentric subdivision: {} members", cover.members.len()));
                s.push(format!("good: {}", cover.is_good()));
            }
            Ok(None)
        }
        Command::BuildModel { complex, kind } => build_model(cli, report, complex, *kind),
        Command::CheckAxioms { input } => {
            let sc = if input.ends_with(".spc") {
                let raw = io::parse_spc(&read(Path::new(input))?)?;
                Arc::new(raw.unchecked()?)
            } else {
                model(input)?.0.spark.clone()
            };
            let failures = sc.check_axioms()?;
            let s = report.section("axioms");
            for f in &failures {
                s.push(format!("{}: {f}", f.axiom()));
            }
            report.check("spark complex axioms", failures.is_empty());
            Ok(None)
        }
        Command::Grid { complex, degree } => {
            let (m, _) = model(complex)?;
            let g = m.spark.grid(*degree, cli.budget, cli.seed);
            let s = report.section("grid");
            s.extend(g.to_string().lines().map(String::from));
            report.check("grid certificates", g.passed());
            Ok(None)
        }
        Command::SparkEq { complex, first, second, witness } => {
            let (m, _) = model(complex)?;
            let sc = &m.spark;
            let x = io::parse_spk(&read(first)?, sc)?;
            let y = io::parse_spk(&read(second)?, sc)?;
            if let Some(w) = witness {
                let (k, w) = io::parse_witness(&read(w)?)?;
                let ok = k == x.degree && sc.verify_witness(&x, &y, &w);
                report.section("witness");
                report.check("witness verifies a1 - a2 = db + Psi(s), r1 - r2 = -ds", ok);
                return Ok(None);
            }
            match sc.sparks_equivalent(&x, &y) {
                Some(w) => {
                    let text = io::write_witness(x.degree, &w);
                    let s = report.section("decision");
                    s.push("equivalent".into());
                    s.extend(text.lines().map(String::from));
                    Ok(Some(text))
                }
                None => {
                    report.section("decision").push("not equivalent".into());
                    Ok(None)
                }
            }
        }
        Command::Product { complex, first, second, form } => {
            let (m, _) = model(complex)?;
            let ps = ProductStructure::new(m.clone());
            let x = io::parse_spk(&read(first)?, &m.spark)?;
            let y = io::parse_spk(&read(second)?, &m.spark)?;
            let f = if *form == FormArg::Psi { ProductForm::Curvature } else { ProductForm::Integral };
            let p = ps.product(&x, &y, f)?;
            let text = io::write_spk(&p);
            report.section("product").extend(text.lines().map(String::from));
            let d = ps.delta_ring_check(&x, &y)?;
            report.section("checks");
            report.check("delta1 of the product is the cup of curvatures", d.delta1);
            report.check("delta2 of the product is the cup of integral classes", d.delta2);
            report.section("commutation").push(format!("signs e with x*y ~ e y*x: {:?}", d.signs));
            Ok(Some(text))
        }
        Command::Push { complex, spark } => {
            let (m, _) = model(complex)?;
            let h = HyperModel::over(m.clone())?;
            let x = io::parse_spk(&read(spark)?, &m.spark)?;
            let p = h.quasi.push(&x);
            let text = io::write_spk(&p);
            report.section("pushed").extend(text.lines().map(String::from));
            let l = h.quasi.lift(&p)?;
            report.section("checks");
            report.check("pushed spark is valid", h.spark.is_valid(&p));
            report.check("delta1 preserved", p.e == x.e);
            report.check("lift of the push is equivalent", m.spark.sparks_equivalent(&l.spark, &x).is_some());
            Ok(Some(text))
        }
        Command::Lift { complex, spark } => {
            let (m, _) = model(complex)?;
            let h = HyperModel::over(m.clone())?;
            let t = io::parse_spk(&read(spark)?, &h.spark)?;
            let l = h.quasi.lift(&t)?;
            let text = io::write_spk(&l.spark);
            report.section("lifted").extend(text.lines().map(String::from));
            report.section("witness").extend(io::write_witness(t.degree, &l.witness).lines().map(String::from));
            report.section("checks");
            report.check(
                "witness verifies t ~ push(lift)",
                h.spark.verify_witness(&t, &h.quasi.push(&l.spark), &l.witness),
            );
            Ok(Some(text))
        }
        Command::Pullback { source, target, map, spark } => {
            let ks = load_complex(source)?;
            let kt = load_complex(target)?;
            let vm: Vec<usize> = parse_list(map, "vertex")?;
            let f = SimplicialMap::new(&ks, &kt, vm)?;
            let (ms, mt, f) = pullback_models(&ks, &kt, f)?;
            let pb = SparkPullback::new(ms, mt.clone(), f, None)?;
            let x = io::parse_spk(&read(spark)?, &mt.spark)?;
            let y = pb.pull(&x)?;
            let text = io::write_spk(&y);
            report.section("cover index map").push(io_join(&pb.index_map));
            report.section("pulled back").extend(text.lines().map(String::from));
            Ok(Some(text))
        }
        Command::Bundle { op } => bundle(report, op),
        Command::Selftest { dump_fixtures } => match dump_fixtures {
            Some(dir) => crate::selftest::dump(report, dir).map(|_| None),
            None => crate::selftest::run(report, cli.seed).map(|_| None),
        },
    }
}

fn build_model(cli: &Cli, report: &mut Report, complex: &str, kind: ModelKind) -> Result<Option<String>> {
    let (m, cover_kind) = model(complex)?;
    let s = report.section("model");
    s.push(format!(
        "cover: {cover_kind:?}, {} members, nerve dimension {}",
        m.cover.members.len(),
        m.cover.nerve.dim()
    ));
    let sc = m.spark.clone();
    for (name, c) in [("F", sc.f()), ("E", sc.e()), ("I", sc.i())] {
        let ranks: Vec<String> = c.degrees().map(|k| format!("{k}:{}", c.rank(k))).collect();
        s.push(format!("{name} ranks {}", ranks.join(" ")));
    }
    let failures = sc.check_axioms()?;
    report.section("checks");
    report.check("Čech model satisfies the spark axioms", failures.is_empty());
    match kind {
        ModelKind::Cech => {}
        ModelKind::Hyper => {
            let h = HyperModel::over(m.clone())?;
            let s = report.section("hyperspark model");
            for k in h.i_bar.degrees() {
                s.push(format!("H^{k}(I-bar) = {}", cohomology(&h.i_bar, k)?.descriptor));
            }
            report.check("psi is a quasi-isomorphism and the squares commute", true);
        }
        ModelKind::Level => {
            let l = LevelModel::build(m.clone(), cli.level)?;
            let s = report.section(format!("level {} model", cli.level));
            let f = l.spark.f();
            let ranks: Vec<String> = f.degrees().map(|k| format!("{k}:{}", f.rank(k))).collect();
            s.push(format!("F ranks {}", ranks.join(" ")));
            let mut all = true;
            let mut lines = Vec::new();
            for k in -1..=2 {
                let (a, b) = l.deligne_check(k)?;
                lines.push(format!("k={k}: H(G) = {a}; hypercohomology of the truncated row = {b}"));
                all &= a == b;
            }
            report.section("Deligne node").extend(lines);
            report.check("cone cohomology equals truncated hypercohomology", all);
        }
    }
    Ok(None)
}

fn bundle(report: &mut Report, op: &BundleOp) -> Result<Option<String>> {
    match op {
        BundleOp::ToSpark { complex, bundle } => {
            let (m, _) = model(complex)?;
            let l = io::parse_lbd(&read(bundle)?, m)?;
            let text = io::write_spk(&l.to_spark());
            report.section("spark").extend(text.lines().map(String::from));
            Ok(Some(text))
        }
        BundleOp::Chern { complex, bundle } => {
            let (m, _) = model(complex)?;
            let l = io::parse_lbd(&read(bundle)?, m.clone())?;
            let c = l.chern_class()?;
            let h = cohomology(m.spark.i(), 2)?;
            let s = report.section("chern class");
            s.push(format!("H^2 = {}", h.descriptor));
            s.push(format!("coordinates {}", io_join(&c)));
            Ok(None)
        }
        BundleOp::Curvature { complex, bundle } => {
            let (m, _) = model(complex)?;
            let l = io::parse_lbd(&read(bundle)?, m)?;
            report.section("curvature").push(io_join(&l.curvature()));
            Ok(None)
        }
        BundleOp::Tensor { complex, first, second } => {
            let (m, _) = model(complex)?;
            let a = io::parse_lbd(&read(first)?, m.clone())?;
            let b = io::parse_lbd(&read(second)?, m)?;
            let t = a.tensor(&b)?;
            let text = io::write_lbd(&t);
            report.section("tensor product").extend(text.lines().map(String::from));
            Ok(Some(text))
        }
        BundleOp::Holonomy { complex, bundle, cycle } => {
            let k = load_complex(complex)?;
            let (m, kind) = model(complex)?;
            let l = io::parse_lbd(&read(bundle)?, m.clone())?;
            let verts: Vec<usize> = parse_list(cycle, "vertex")?;
            let z = vertex_loop(&k, &m.base, kind, &verts)?;
            let zt = total_cycle(&m, 1, &z)?;
            let h = m.spark.evaluate(&l.to_spark(), &zt)?;
            report.section("holonomy").push(format!("{h}"));
            Ok(None)
        }
        BundleOp::FromChern { complex, class } => {
            let (m, _) = model(complex)?;
            let c: Vec<Int> = parse_list(class, "coordinate")?;
            let l = DiscreteLineBundle::from_chern(m, &c)?;
            let text = io::write_lbd(&l);
            report.section("bundle").extend(text.lines().map(String::from));
            report.section("checks");
            report.check("chern class of the result", l.chern_class()? == c);
            Ok(Some(text))
        }
        BundleOp::GaugeEq { complex, first, second } => {
            let (m, _) = model(complex)?;
            let a = io::parse_lbd(&read(first)?, m.clone())?;
            let b = io::parse_lbd(&read(second)?, m.clone())?;
            let w = m.spark.sparks_equivalent(&a.to_spark(), &b.to_spark());
            let s = report.section("decision");
            match &w {
                Some(w) => {
                    s.push("gauge equivalent".into());
                    s.extend(io::write_witness(1, w).lines().map(String::from));
                }
                None => s.push("not gauge equivalent".into()),
            }
            Ok(w.map(|w| io::write_witness(1, &w)))
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

/// A `.scx` file, or a fixture name when no such file exists.
pub fn load_complex(arg: &str) -> Result<SimplicialComplex> {
    let p = Path::new(arg);
    if p.exists() {
        return io::parse_scx(&read(p)?);
    }
    if FIXTURE_NAMES.contains(&arg) || arg == "octahedron" || arg == "icosahedron" {
        return fixture_complex(arg);
    }
    Err(Error::input(format!("no file or fixture named `{arg}`")))
}

pub fn model(arg: &str) -> Result<(Arc<CechModel>, CoverKind)> {
    let k = load_complex(arg)?;
    let (base, cover, kind, _) = choose_cover(&k);
    Ok((Arc::new(CechModel::build(&base, &cover)?), kind))
}

/// Both models on star covers when both are good, else both dual-block.
fn pullback_models(
    ks: &SimplicialComplex,
    kt: &SimplicialComplex,
    f: SimplicialMap,
) -> Result<(Arc<CechModel>, Arc<CechModel>, SimplicialMap)> {
    let (ss, st) = (star_cover(ks), star_cover(kt));
    if ss.is_good() && st.is_good() {
        return Ok((Arc::new(CechModel::build(ks, &ss)?), Arc::new(CechModel::build(kt, &st)?), f));
    }
    let (sd_s, _, cs) = dual_block_cover(ks);
    let (sd_t, _, ct) = dual_block_cover(kt);
    let (_, _, g) = subdivided_map(ks, kt, &f)?;
    Ok((Arc::new(CechModel::build(&sd_s, &cs)?), Arc::new(CechModel::build(&sd_t, &ct)?), g))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split([' ', ','])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::input(format!("invalid {what} `{t}`"))))
        .collect()
}

fn io_join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
