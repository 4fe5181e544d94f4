use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use fence_rowmotion::enumeration::{closed_form_count, count_ideals};
use fence_rowmotion::fence::{parse_element_list, BitIter, Composition, Position};
use fence_rowmotion::harness::{conjectures, theorems, Config, Verdict, VerificationReport, SCHEMA_VERSION};
use fence_rowmotion::rowmotion::{orbits, Orbit};
use fence_rowmotion::stats::{check_homomesy, format_ratio, StatExpr};
use fence_rowmotion::tiling::{orbit_tile_counts, render_ascii, render_svg, tiling_of_orbit};
use fence_rowmotion::toggles::{
    admissible, base_graph, battery, conjugate, conjugation_path, random_coxeter_word, rng,
    transfer_check, ToggleWord, DEFAULT_PATH_CAP,
};
use fence_rowmotion::{Family, Fence, FenceError, SetKind};

use crate::{Claim, Cli, CliError, Command, Conjecture, Format, Render, ScanArgs, VerifyArgs};

type Result<T> = std::result::Result<T, CliError>;

/// Rendered output plus the process exit code.
struct Output {
    body: String,
    exit: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, exit: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let out = match &cli.command {
        Command::Info(a) => info(cli, &a.alpha)?,
        Command::Orbits { alpha, family } => orbits_cmd(cli, &alpha.alpha, family.family.into())?,
        Command::Tiling {
            alpha,
            rep,
            orbit_index,
            render,
        } => tiling(cli, &alpha.alpha, rep.as_deref(), *orbit_index, *render)?,
        Command::Check { alpha, family, stat } => check(cli, &alpha.alpha, family.map(Into::into), stat)?,
        Command::Count(a) => count(cli, &a.alpha)?,
        Command::Verify(args) => verify(cli, args)?,
        Command::Scan(args) => scan(cli, args)?,
        Command::BaseGraph { alpha, family } => base_graph_cmd(cli, &alpha.alpha, family.family.into())?,
        Command::Conjugate {
            alpha,
            family,
            word,
            at,
        } => conjugate_cmd(cli, &alpha.alpha, (*family).into(), word, at)?,
        Command::ConjugationPath {
            alpha,
            family,
            word,
            to,
        } => path_cmd(cli, &alpha.alpha, (*family).into(), word, to)?,
        Command::Transfer {
            alpha,
            family,
            word,
            to,
            stat,
        } => transfer(cli, &alpha.alpha, (*family).into(), word.as_deref(), to.as_deref(), stat)?,
    };
    emit(cli, &out.body)?;
    Ok(out.exit)
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

fn fence(alpha: &str) -> Result<Fence> {
    Ok(Fence::parse(alpha)?)
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::usage(format!(
            "format {f:?} is not available for this command; use one of {allowed:?}"
        )))
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn csv_string<F>(header: &[&str], fill: F) -> Result<String>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> std::result::Result<(), csv::Error>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let run = || -> std::result::Result<Vec<u8>, csv::Error> {
        w.write_record(header)?;
        fill(&mut w)?;
        w.into_inner().map_err(|e| e.into_error().into())
    };
    let bytes = run().map_err(|e| CliError {
        code: "io".into(),
        message: e.to_string(),
        exit: 1,
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn position_label(f: &Fence, x: usize) -> String {
    match f.position(x) {
        Position::Unshared { segment, rank } => format!("s[{segment},{rank}]"),
        Position::Shared { index } => format!("s[{index}]"),
    }
}

fn x_labels(bits: u64) -> Vec<String> {
    BitIter(bits).map(|x| format!("x{}", x + 1)).collect()
}

fn info(cli: &Cli, alpha: &str) -> Result<Output> {
    let f = fence(alpha)?;
    let positions: Vec<Value> = (0..f.len())
        .map(|x| json!({ "element": format!("x{}", x + 1), "position": position_label(&f, x) }))
        .collect();
    let covers: Vec<String> = f
        .covers()
        .iter()
        .map(|c| format!("x{}<x{}", c.lower + 1, c.upper + 1))
        .collect();
    let shared: Vec<String> = f.shared_elements().iter().map(|x| format!("x{}", x + 1)).collect();
    let ideals = count_ideals(f.alpha()).to_string();
    match format_or(cli, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(Output::ok(to_json(&with_schema(json!({
            "alpha": f.alpha().to_string(),
            "elements": f.len(),
            "segments": f.segment_count(),
            "positions": positions,
            "covers": covers,
            "shared": shared,
            "ideals": ideals,
        }))))),
        _ => {
            let mut s = String::new();
            s += &format!("alpha: {}\n", f.alpha());
            s += &format!("elements: {}\n", f.len());
            s += &format!("segments: {}\n", f.segment_count());
            s += &format!("shared: {}\n", shared.join(" "));
            s += &format!("ideals: {ideals}\n");
            let pos: Vec<String> = (0..f.len())
                .map(|x| format!("x{}={}", x + 1, position_label(&f, x)))
                .collect();
            s += &format!("positions: {}\n", pos.join(" "));
            s += &format!("covers: {}\n", covers.join(" "));
            Ok(Output::ok(s))
        }
    }
}

#[derive(Serialize)]
struct OrbitRow {
    index: usize,
    size: usize,
    representative: Vec<String>,
    members: Vec<Vec<String>>,
    black: Vec<usize>,
    red: Vec<usize>,
    /// Total antichain size over the orbit.
    chi: u64,
    /// Total ideal size over the orbit.
    chi_hat: u64,
}

/// The antichain orbit matching an ideal orbit, member for member.
fn antichain_side(f: &Fence, o: &Orbit) -> Orbit {
    match o.family() {
        Family::Antichains => o.clone(),
        Family::Ideals => Orbit::from_cycle(Family::Antichains, o.bits().iter().map(|&b| f.maxima(b)).collect()),
    }
}

fn orbit_row(f: &Fence, index: usize, o: &Orbit) -> OrbitRow {
    let anti = antichain_side(f, o);
    let tc = orbit_tile_counts(f, &anti);
    OrbitRow {
        index,
        size: o.size(),
        representative: x_labels(o.bits()[0]),
        members: o.bits().iter().map(|&b| x_labels(b)).collect(),
        black: tc.black,
        red: tc.red,
        chi: anti.bits().iter().map(|b| b.count_ones() as u64).sum(),
        chi_hat: anti.bits().iter().map(|&b| f.down_set(b).count_ones() as u64).sum(),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn orbits_cmd(cli: &Cli, alpha: &str, family: Family) -> Result<Output> {
    let f = fence(alpha)?;
    let os = orbits(&f, family, cli.max_family)?;
    let rows: Vec<OrbitRow> = os.iter().enumerate().map(|(k, o)| orbit_row(&f, k, o)).collect();
    match format_or(cli, Format::Json, &[Format::Json, Format::Csv])? {
        Format::Csv => Ok(Output::ok(csv_string(
            &["schema_version", "index", "family", "size", "representative", "black", "red", "chi", "chi_hat"],
            |w| {
                for r in &rows {
                    w.write_record([
                        SCHEMA_VERSION.to_string(),
                        r.index.to_string(),
                        family.name().to_string(),
                        r.size.to_string(),
                        join(&r.representative),
                        join(&r.black),
                        join(&r.red),
                        r.chi.to_string(),
                        r.chi_hat.to_string(),
                    ])?;
                }
                Ok(())
            },
        )?)),
        _ => {
            let mut sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
            sizes.sort_unstable();
            Ok(Output::ok(to_json(&with_schema(json!({
                "alpha": f.alpha().to_string(),
                "family": family,
                "count": rows.len(),
                "sizes": sizes,
                "orbits": rows,
            })))))
        }
    }
}

fn tiling(cli: &Cli, alpha: &str, rep: Option<&str>, index: Option<usize>, render: Option<Render>) -> Result<Output> {
    let f = fence(alpha)?;
    let orbit = match (rep, index) {
        (Some(rep), _) => {
            let elems = parse_element_list(rep)?;
            let seed = f.set_of(&elems, SetKind::Antichain)?;
            fence_rowmotion::rowmotion::orbit_of(&f, &seed)?
        }
        (None, Some(k)) => {
            let os = orbits(&f, Family::Antichains, cli.max_family)?;
            let count = os.len();
            os.into_iter()
                .nth(k)
                .ok_or_else(|| CliError::usage(format!("orbit index {k} out of range (0..{count})")))?
        }
        (None, None) => return Err(CliError::usage("give --rep or --orbit-index")),
    };
    let t = tiling_of_orbit(&f, &orbit)?;
    let format = match render {
        Some(Render::Ascii) => Format::Ascii,
        Some(Render::Svg) => Format::Svg,
        None => format_or(cli, Format::Ascii, &[Format::Ascii, Format::Svg, Format::Json])?,
    };
    Ok(Output::ok(match format {
        Format::Svg => render_svg(&t)?,
        Format::Json => to_json(&with_schema(json!({
            "alpha": f.alpha().to_string(),
            "orbit": orbit,
            "tiling": t,
            "counts": orbit_tile_counts(&f, &orbit),
        }))),
        _ => render_ascii(&t)?,
    }))
}

fn check(cli: &Cli, alpha: &str, family: Option<Family>, stat: &str) -> Result<Output> {
    let f = fence(alpha)?;
    let e: StatExpr = stat.parse()?;
    let family = e.family()?.or(family).unwrap_or(Family::Antichains);
    let report = check_homomesy(&f, family, &e)?;
    match format_or(cli, Format::Json, &[Format::Json, Format::Csv])? {
        Format::Csv => Ok(Output::ok(csv_string(
            &["schema_version", "orbit", "size", "sum", "average"],
            |w| {
                for (k, o) in report.per_orbit.iter().enumerate() {
                    w.write_record([
                        SCHEMA_VERSION.to_string(),
                        k.to_string(),
                        o.size.to_string(),
                        format_ratio(&o.sum),
                        format_ratio(&o.average),
                    ])?;
                }
                Ok(())
            },
        )?)),
        _ => Ok(Output::ok(to_json(&with_schema(json!({
            "alpha": f.alpha().to_string(),
            "family": family,
            "stat": e.to_string(),
            "report": report,
        }))))),
    }
}

fn count(cli: &Cli, alpha: &str) -> Result<Output> {
    let c: Composition = alpha.parse()?;
    let rec = count_ideals(&c).to_string();
    let closed = closed_form_count(&c).ok().map(|v| v.to_string());
    match format_or(cli, Format::Json, &[Format::Json, Format::Text])? {
        Format::Text => Ok(Output::ok(format!("{rec}\n"))),
        _ => Ok(Output::ok(to_json(&with_schema(json!({
            "alpha": c.to_string(),
            "ideals": rec,
            "closed_form": closed,
        }))))),
    }
}

fn config(cli: &Cli, samples: Option<usize>) -> Config {
    let mut cfg = Config {
        max_family: cli.max_family,
        seed: cli.seed,
        ..Config::default()
    };
    if let Some(s) = samples {
        cfg.samples = s;
    }
    cfg
}

fn report_output(cli: &Cli, mut report: VerificationReport) -> Result<Output> {
    if cli.no_timing {
        report.runtime_ms = 0;
    }
    let exit = if report.verdict == Verdict::Fail { 2 } else { 0 };
    let body = match format_or(cli, Format::Json, &[Format::Json, Format::Csv, Format::Text])? {
        Format::Csv => csv_string(&["schema_version", "claim", "instance", "verdict", "checks"], |w| {
            for i in &report.instances {
                w.write_record([
                    SCHEMA_VERSION.to_string(),
                    report.claim.clone(),
                    i.label.clone(),
                    format!("{:?}", i.verdict).to_lowercase(),
                    i.checks.to_string(),
                ])?;
            }
            Ok(())
        })?,
        Format::Text => format!("{}\n", report.summary()),
        _ => to_json(&report),
    };
    Ok(Output { body, exit })
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| CliError::usage(format!("this claim needs {flag}")))
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Output> {
    let cfg = config(cli, a.samples);
    let alpha = a.alpha.as_deref().map(str::parse::<Composition>).transpose()?;
    let report = match a.claim {
        Claim::TwoSegment => match (a.a, a.b) {
            (Some(x), Some(y)) => theorems::verify_two_segment(x, y, &cfg)?,
            _ => theorems::verify_two_segment_range(a.max_sum.unwrap_or(14), &cfg)?,
        },
        Claim::Aba => match (a.a, a.b) {
            (Some(x), Some(y)) => theorems::verify_aba(x, y, &cfg)?,
            _ => theorems::verify_aba_range(a.max_sum.unwrap_or(12), &cfg)?,
        },
        Claim::A4 => theorems::verify_a4(a.max_a.or(a.a).unwrap_or(6), &cfg)?,
        Claim::A1a1a => theorems::verify_a1a1a(a.max_a.or(a.a).unwrap_or(6), &cfg)?,
        Claim::General => match &alpha {
            Some(c) => theorems::verify_general_homomesies(c, &cfg)?,
            None => theorems::verify_general_homomesies_range(a.max_n.unwrap_or(12), &cfg)?,
        },
        Claim::TilingLemma => theorems::verify_tiling_lemma(a.max_n.unwrap_or(12), &cfg)?,
        Claim::TilingBijection => theorems::verify_tiling_bijection(a.max_n.unwrap_or(12), &cfg)?,
        Claim::LinearExtensions => {
            theorems::verify_cameron_fon_der_flaass(a.max_n.unwrap_or(10), &config(cli, Some(a.samples.unwrap_or(50))))?
        }
        Claim::BaseGraph => theorems::verify_ideal_base_graph(a.max_n.unwrap_or(12), &cfg)?,
        Claim::Transfer => theorems::verify_ideal_transfer(a.max_n.unwrap_or(10), &cfg)?,
        Claim::Counts => theorems::verify_ideal_counts(a.max_n.unwrap_or(15), &cfg)?,
        Claim::Palindromic => conjectures::verify_palindromic_props(&need(alpha, "--alpha")?, &cfg)?,
        Claim::Counterexample => conjectures::verify_counterexample_4_8(&cfg)?,
        Claim::Complement => conjectures::verify_complement_example_2_7(&cfg)?,
    };
    report_output(cli, report)
}

fn scan(cli: &Cli, a: &ScanArgs) -> Result<Output> {
    let cfg = config(cli, a.samples);
    let report = match a.conjecture {
        Conjecture::ConstantAlpha => conjectures::scan_conjecture_constant_alpha(a.max.unwrap_or(12), &cfg)?,
        Conjecture::PalindromicConstant => conjectures::scan_palindromic_constant(a.max.unwrap_or(12), &cfg)?,
        Conjecture::AntichainTransfer => match &a.alpha {
            Some(s) => conjectures::scan_conjecture_antichain_transfer(&s.parse()?, a.exhaustive, &cfg)?,
            None => conjectures::scan_conjecture_antichain_transfer_range(a.max_n.unwrap_or(8), &cfg)?,
        },
    };
    report_output(cli, report)
}

fn base_graph_cmd(cli: &Cli, alpha: &str, family: Family) -> Result<Output> {
    let f = fence(alpha)?;
    let g = base_graph(&f, family, cli.max_family)?;
    format_or(cli, Format::Json, &[Format::Json])?;
    Ok(Output::ok(to_json(&with_schema(json!({
        "alpha": f.alpha().to_string(),
        "family": family,
        "vertices": g.vertices,
        "edges": g.edge_labels(),
        "acyclic": g.is_acyclic(),
    })))))
}

fn single_element(f: &Fence, text: &str) -> Result<usize> {
    match parse_element_list(text)?.as_slice() {
        [x] if *x < f.len() => Ok(*x),
        [x] => Err(FenceError::ElementOutOfRange { index: x + 1, n: f.len() }.into()),
        _ => Err(CliError::usage(format!("expected one element, got `{text}`"))),
    }
}


fn conjugate_cmd(cli: &Cli, alpha: &str, family: Family, word: &str, at: &str) -> Result<Output> {
    let f = fence(alpha)?;
    let g = base_graph(&f, family, cli.max_family)?;
    let w = ToggleWord::parse(family, f.len(), word)?;
    let x = single_element(&f, at)?;
    let result = conjugate(&w, x, &g)?;
    let adm: Vec<String> = admissible(&w, &g).iter().map(|x| format!("x{}", x + 1)).collect();
    Ok(Output::ok(to_json(&with_schema(json!({
        "alpha": f.alpha().to_string(),
        "family": family,
        "word": w.to_string(),
        "at": format!("x{}", x + 1),
        "admissible": adm,
        "result": result.to_string(),
    })))))
}

fn path_cmd(cli: &Cli, alpha: &str, family: Family, word: &str, to: &str) -> Result<Output> {
    let f = fence(alpha)?;
    let g = base_graph(&f, family, cli.max_family)?;
    let w = ToggleWord::parse(family, f.len(), word)?;
    let w2 = ToggleWord::parse(family, f.len(), to)?;
    let path = conjugation_path(&w, &w2, &g, DEFAULT_PATH_CAP)?;
    let mut words = vec![w.to_string()];
    let mut cur = w.clone();
    for &x in &path {
        cur = conjugate(&cur, x, &g)?;
        words.push(cur.to_string());
    }
    Ok(Output::ok(to_json(&with_schema(json!({
        "alpha": f.alpha().to_string(),
        "family": family,
        "from": w.to_string(),
        "to": w2.to_string(),
        "path": path.iter().map(|x| format!("x{}", x + 1)).collect::<Vec<_>>(),
        "words": words,
    })))))
}

fn transfer(
    cli: &Cli,
    alpha: &str,
    family: Family,
    word: Option<&str>,
    to: Option<&str>,
    stats: &[String],
) -> Result<Output> {
    let f = fence(alpha)?;
    let mut r = rng(cli.seed);
    let mut pick = |text: Option<&str>| -> Result<ToggleWord> {
        Ok(match text {
            Some(t) => ToggleWord::parse(family, f.len(), t)?,
            None => random_coxeter_word(family, f.len(), &mut r),
        })
    };
    let w = pick(word)?;
    let w2 = pick(to)?;
    let exprs: Vec<StatExpr> = if stats.is_empty() {
        battery(f.len(), family)
    } else {
        stats.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>()?
    };
    let report = transfer_check(&f, &w, &w2, &exprs, cli.max_family)?;
    let exit = if report.agree { 0 } else { 2 };
    Ok(Output {
        body: to_json(&with_schema(json!({
            "alpha": f.alpha().to_string(),
            "report": report,
        }))),
        exit,
    })
}
