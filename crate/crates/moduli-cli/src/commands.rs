//! Subcommand implementations. Each returns a JSON report plus a success
//! flag; the caller prints the report and maps the flag onto the exit
//! code. Engine preconditions surface as [`CliError`] (exit 2), while a
//! verification that ran and failed keeps exit code 1 for itself.

use crate::{Family, OracleCommand, PolygonCheck, StrataKind};
use crossings::{
    CrossingsError, build_h_graph, build_h1_graph, consistency_check, emit_dot, emit_json,
};
use curve_arith::{
    CurveError, CurvePoint, LoadedFixture, char_p_component_label, load_fixture,
    verify_quotient_torsor,
};
use groupscheme_calc::{
    DrinfeldLocus, GroupSchemeError, fss_generator_rank_oracle, gK_components, gamma1_components,
};
use level_lattice::{LatticeError, Subgroup, enumerate_subgroups, label_set, lambda_classes};
use polygon_models::gamma::{Verdict, polygon_gamma_check, polygon_gamma1_check};
use polygon_models::mapfile::load_map_file;
use polygon_models::{PolygonError, PolygonPicard};
use rayon::prelude::*;
use serde_json::{Value, json};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    GroupScheme(#[from] GroupSchemeError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Crossings(#[from] CrossingsError),
    #[error("cannot write {path}: {err}")]
    Write { path: PathBuf, err: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A finished subcommand: the report to print and whether every
/// verification it ran came back clean.
pub struct CommandOutput {
    pub report: Value,
    pub ok: bool,
}

fn success(report: Value) -> CommandOutput {
    CommandOutput { report, ok: true }
}

pub fn subgroups(level: u64) -> Result<CommandOutput, CliError> {
    let subs = enumerate_subgroups(level)?;
    Ok(success(json!({
        "level": level,
        "count": subs.len(),
        "subgroups": subs,
    })))
}

pub fn labels(level: u64, p: u64) -> Result<CommandOutput, CliError> {
    let n = p_exponent(level, p).filter(|&n| n >= 1).ok_or_else(|| {
        CliError::Usage(format!("--level {level} is not a positive power of --char {p}"))
    })?;
    let mut label_sets = Vec::new();
    for k in enumerate_subgroups(level)? {
        let labels = label_set(&k)?;
        label_sets.push(json!({ "k": k, "labels": labels }));
    }
    let classes = lambda_classes(p, n)?;
    Ok(success(json!({
        "level": level,
        "char": p,
        "exp": n,
        "labelSets": label_sets,
        "lambdaClasses": classes,
    })))
}

/// One stratum's engine rank next to the oracle exponent pairs whose
/// fss ranks must multiply back to it. Every pair keeps a + e within the
/// ambient exponent so the oracle stays desk-sized exactly where the
/// engine does.
struct OracleRow {
    id: String,
    engine: u64,
    factors: Vec<(u32, u32)>,
}

/// Exponent pairs (a, e) with Π fss(p, a, e) = φ(p^h) · φ(p^c) · p^c,
/// never letting a single a + e exceed `cap`.
fn rank_factors(h: u32, c: u32, cap: u32) -> Vec<(u32, u32)> {
    let mut factors = vec![(c, 0), (0, c)];
    if h <= cap {
        factors.push((h, 0));
    } else {
        // φ(p^h) = φ(p^cap) · p^(h−cap) keeps both pieces inside the cap.
        factors.push((cap, 0));
        factors.push((0, h - cap));
    }
    factors.retain(|&(a, e)| (a, e) != (0, 0));
    factors
}

pub fn strata(
    kind: StrataKind,
    p: u64,
    exp: u32,
    k_spec: Option<&str>,
    oracle: bool,
    jobs: usize,
) -> Result<CommandOutput, CliError> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let (locus, rows): (DrinfeldLocus, Vec<OracleRow>) = match kind {
        StrataKind::Gamma1 => {
            if k_spec.is_some() {
                return Err(CliError::Usage("--K applies only to --kind gK".into()));
            }
            let locus = gamma1_components(p, exp)?;
            // Strata are listed b = 0, …, n with a = n − b; the stratum
            // rank is φ(p^b) · p^b · φ(p^(n−b)).
            let rows = locus
                .strata
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let b = i as u32;
                    OracleRow {
                        id: s.id.clone(),
                        engine: s.rank,
                        factors: rank_factors(exp - b, b, exp),
                    }
                })
                .collect();
            (locus, rows)
        }
        StrataKind::GK => {
            let modulus = p
                .checked_pow(exp)
                .ok_or_else(|| CliError::Usage(format!("p^n overflows: {p}^{exp}")))?;
            let k = match k_spec {
                Some(spec) => Subgroup::from_generators(modulus, &parse_generators(spec)?)?,
                None => Subgroup::zero(modulus)?,
            };
            let locus = gK_components(&k, p, exp)?;
            let (n1, n2) = k.quotient_type();
            let rows = label_set(&k)?
                .iter()
                .zip(&locus.strata)
                .map(|(h, s)| {
                    let cofactor = n1 * n2 / h.order();
                    let c = p_exponent(cofactor, p)
                        .expect("subgroup indices at a prime-power level are powers of p");
                    let hx = p_exponent(h.order(), p)
                        .expect("label orders at a prime-power level are powers of p");
                    // The stratum rank is φ(p^hx) · φ(p^c) · p^c.
                    OracleRow {
                        id: s.id.clone(),
                        engine: s.rank,
                        factors: rank_factors(hx, c, exp.max(1)),
                    }
                })
                .collect();
            (locus, rows)
        }
    };

    let mut report = serde_json::to_value(&locus)?;
    let mut ok = true;
    if oracle {
        let results = run_jobs(jobs, || {
            rows.par_iter()
                .map(|row| -> Result<(Value, bool), GroupSchemeError> {
                    let mut oracle_rank = 1u64;
                    let mut factor_reports = Vec::new();
                    for &(a, e) in &row.factors {
                        let rank = fss_generator_rank_oracle(p, a, e)?;
                        oracle_rank *= rank;
                        factor_reports.push(json!({ "a": a, "e": e, "rank": rank }));
                    }
                    let agrees = oracle_rank == row.engine;
                    let entry = json!({
                        "id": row.id,
                        "engineRank": row.engine,
                        "oracleRank": oracle_rank,
                        "factors": factor_reports,
                        "agrees": agrees,
                    });
                    Ok((entry, agrees))
                })
                .collect::<Result<Vec<_>, _>>()
        })??;
        let all_agree = results.iter().all(|(_, agrees)| *agrees);
        let entries: Vec<Value> = results.into_iter().map(|(entry, _)| entry).collect();
        // No run configuration (thread count, paths) goes into the
        // report: the bytes depend only on the mathematical inputs.
        report
            .as_object_mut()
            .expect("a locus serializes to an object")
            .insert("oracle".into(), json!({ "strata": entries, "allAgree": all_agree }));
        ok = all_agree;
    }
    Ok(CommandOutput { report, ok })
}

pub fn graph(
    family: Family,
    level: u64,
    p: u64,
    compactified: bool,
    dot: Option<&Path>,
    json_path: Option<&Path>,
) -> Result<CommandOutput, CliError> {
    let g = match family {
        Family::H1 => build_h1_graph(level, p, compactified)?,
        Family::H => {
            if compactified {
                return Err(CliError::Usage(
                    "--compactified is not tabulated for --family h".into(),
                ));
            }
            if level != p {
                return Err(CliError::Usage(format!(
                    "--family h is tabulated at --level equal to --char (got level {level}, char {p})"
                )));
            }
            build_h_graph(p)?
        }
    };
    let report = consistency_check(&g);
    if let Some(path) = dot {
        write_file(path, &emit_dot(&g))?;
    }
    if let Some(path) = json_path {
        write_file(path, &emit_json(&g))?;
    }
    let total: Option<u64> = g
        .nodes
        .iter()
        .map(|n| Some(n.length? * n.reduced_degree?))
        .sum();
    let ok = report.is_ok();
    let graph_value = serde_json::to_value(&g)?;
    Ok(CommandOutput {
        report: json!({
            "family": g.family,
            "level": g.context.level,
            "char": g.context.p,
            "compactified": g.context.compactified,
            "nodeCount": g.nodes.len(),
            "crossingCount": g.crossings.len(),
            "total": total,
            "consistency": { "ok": ok, "checks": report.checks },
            "graph": graph_value,
        }),
        ok,
    })
}

pub fn verify_torsor(fixture: &Path, n: u64) -> Result<CommandOutput, CliError> {
    let loaded = load_fixture(fixture)?;
    let (name, q) = kernel_point(&loaded)?;
    let report = verify_quotient_torsor(&loaded.curve, q, n)?;
    let ok = report.all_hold();
    Ok(CommandOutput {
        report: json!({
            "fixture": fixture.display().to_string(),
            "n": n,
            "kernelPoint": name,
            "checks": {
                "cosetMapWellDefined": report.coset_map_well_defined,
                "cosetMapBijective": report.coset_map_bijective,
                "translationsFormTorsor": report.translations_form_torsor,
                "compositionIsMultiplicationByN": report.composition_is_multiplication_by_n,
            },
            "allHold": ok,
        }),
        ok,
    })
}

/// The kernel generator of a torsor fixture: the point named `Q`, or the
/// fixture's only point.
fn kernel_point(loaded: &LoadedFixture) -> Result<(&str, &CurvePoint), CliError> {
    if let Some(q) = loaded.points.get("Q") {
        return Ok(("Q", q));
    }
    let mut points = loaded.points.iter();
    match (points.next(), points.next()) {
        (Some((name, point)), None) => Ok((name.as_str(), point)),
        _ => Err(CliError::Usage(format!(
            "fixture must name the kernel generator Q or contain exactly one point (found: {})",
            loaded.points.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

pub fn verify_label(fixture: &Path, point_name: &str, exp: u32) -> Result<CommandOutput, CliError> {
    let loaded = load_fixture(fixture)?;
    let point = loaded.points.get(point_name).ok_or_else(|| {
        CliError::Usage(format!(
            "fixture has no point named {point_name:?} (available: {})",
            loaded.points.keys().cloned().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let (a, b) = char_p_component_label(&loaded.curve, point, exp)?;
    let (raised_a, raised_b) = char_p_component_label(&loaded.curve, point, exp + 1)?;
    let ok = raised_a == a + 1 && raised_b == b;
    Ok(CommandOutput {
        report: json!({
            "fixture": fixture.display().to_string(),
            "point": point_name,
            "exp": exp,
            "label": { "a": a, "b": b },
            "raised": { "exp": exp + 1, "a": raised_a, "b": raised_b },
            "shiftHolds": ok,
        }),
        ok,
    })
}

pub fn polygon(
    d: u64,
    level: u64,
    check: PolygonCheck,
    input: &Path,
) -> Result<CommandOutput, CliError> {
    let map = load_map_file(input)?;
    let field = map.build_field()?;
    let p = field.characteristic();
    let degree = field.degree();
    let model = PolygonPicard::new(field, d)?;
    let verdict = match check {
        PolygonCheck::Gamma1 => {
            let phi1 = map.phi1_point(&model)?;
            if polygon_gamma1_check(&model, &phi1, level)? {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        PolygonCheck::Gamma => {
            let (e1, e2) = map.generator_pair(&model)?;
            polygon_gamma_check(&model, &e1, &e2, level)?
        }
    };
    let ok = verdict == Verdict::Holds;
    Ok(CommandOutput {
        report: json!({
            "d": d,
            "level": level,
            "check": match check {
                PolygonCheck::Gamma1 => "gamma1",
                PolygonCheck::Gamma => "gamma",
            },
            "field": { "p": p, "k": degree },
            "verdict": verdict,
        }),
        ok,
    })
}

pub fn oracle(cmd: OracleCommand) -> Result<CommandOutput, CliError> {
    match cmd {
        OracleCommand::Fss { characteristic, a, e } => {
            let rank = fss_generator_rank_oracle(characteristic, a, e)?;
            Ok(success(json!({
                "oracle": "fss",
                "char": characteristic,
                "a": a,
                "e": e,
                "rank": rank,
            })))
        }
    }
}

/// Runs `work` on a dedicated pool of `jobs` threads. Merging is
/// deterministic because every caller collects in input order.
fn run_jobs<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|err| CliError::Usage(format!("cannot build a {jobs}-thread pool: {err}")))?;
    Ok(pool.install(work))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|err| CliError::Write { path: path.to_path_buf(), err })
}

/// The exponent v with x = p^v, if x is a power of p (v = 0 for x = 1).
fn p_exponent(x: u64, p: u64) -> Option<u32> {
    if x == 0 || p < 2 {
        return None;
    }
    let mut rest = x;
    let mut v = 0u32;
    while rest % p == 0 {
        rest /= p;
        v += 1;
    }
    (rest == 1).then_some(v)
}

/// Parses `--K`'s "x1,y1[;x2,y2;…]" generator list.
fn parse_generators(spec: &str) -> Result<Vec<(u64, u64)>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--K must look like \"x1,y1[;x2,y2;…]\" with nonnegative integers (got {spec:?})"
        ))
    };
    let mut out = Vec::new();
    for part in spec.split(';') {
        let (x, y) = part.split_once(',').ok_or_else(bad)?;
        let x = x.trim().parse::<u64>().map_err(|_| bad())?;
        let y = y.trim().parse::<u64>().map_err(|_| bad())?;
        out.push((x, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curve_arith::parse_fixture;

    #[test]
    fn generator_lists_parse() {
        assert_eq!(parse_generators("1,0").unwrap(), vec![(1, 0)]);
        assert_eq!(
            parse_generators("1,0; 0,2").unwrap(),
            vec![(1, 0), (0, 2)]
        );
        assert!(parse_generators("").is_err());
        assert!(parse_generators("1").is_err());
        assert!(parse_generators("1,x").is_err());
        assert!(parse_generators("1,2,3").is_err());
    }

    #[test]
    fn rank_factor_products_reproduce_the_closed_form() {
        use level_lattice::arith::{euler_phi, pow_u64};
        // Π fss(p, a, e) over the factors must equal φ(p^h)·φ(p^c)·p^c,
        // with every factor's a + e within the cap.
        for p in [2u64, 3, 5] {
            for cap in 1..=3u32 {
                for h in 0..=(2 * cap) {
                    for c in 0..=cap {
                        let factors = rank_factors(h, c, cap);
                        assert!(factors.iter().all(|&(a, e)| a + e <= cap));
                        let product: u64 = factors
                            .iter()
                            .map(|&(a, e)| euler_phi(pow_u64(p, a)) * pow_u64(p, e))
                            .product();
                        let closed =
                            euler_phi(pow_u64(p, h)) * euler_phi(pow_u64(p, c)) * pow_u64(p, c);
                        assert_eq!(product, closed, "p={p} h={h} c={c} cap={cap}");
                    }
                }
            }
        }
    }

    #[test]
    fn p_exponents() {
        assert_eq!(p_exponent(1, 2), Some(0));
        assert_eq!(p_exponent(8, 2), Some(3));
        assert_eq!(p_exponent(27, 3), Some(3));
        assert_eq!(p_exponent(12, 2), None);
        assert_eq!(p_exponent(0, 2), None);
    }

    #[test]
    fn kernel_point_prefers_q_and_demands_uniqueness_otherwise() {
        let with_q = parse_fixture(
            "[field]\np = 7\n[curve]\na = [0]\nb = [2]\n\
             [points.Q]\nx = [0]\ny = [3]\n[points.R]\nx = [0]\ny = [4]\n",
        )
        .unwrap();
        assert_eq!(kernel_point(&with_q).unwrap().0, "Q");

        let single = parse_fixture(
            "[field]\np = 7\n[curve]\na = [0]\nb = [2]\n[points.S]\nx = [0]\ny = [3]\n",
        )
        .unwrap();
        assert_eq!(kernel_point(&single).unwrap().0, "S");

        let ambiguous = parse_fixture(
            "[field]\np = 7\n[curve]\na = [0]\nb = [2]\n\
             [points.S]\nx = [0]\ny = [3]\n[points.T]\nx = [0]\ny = [4]\n",
        )
        .unwrap();
        assert!(matches!(kernel_point(&ambiguous), Err(CliError::Usage(_))));
    }

    #[test]
    fn gamma1_oracle_rows_reproduce_engine_ranks() {
        // The same products the --oracle flag computes, checked directly.
        let out = strata(StrataKind::Gamma1, 3, 2, None, true, 1).unwrap();
        assert!(out.ok);
        let oracle = &out.report["oracle"];
        assert_eq!(oracle["allAgree"], true);
        assert_eq!(oracle["strata"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn gk_oracle_rows_reproduce_engine_ranks() {
        let out = strata(StrataKind::GK, 2, 2, Some("1,0"), true, 2).unwrap();
        assert!(out.ok);
        assert_eq!(out.report["oracle"]["allAgree"], true);
        // K = ⟨(1,0)⟩ ≤ (Z/4)² has G_K ≅ Z/4 cyclic: labels 0, Z/2, Z/4.
        assert_eq!(out.report["strata"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn gamma1_rejects_a_subgroup_argument() {
        assert!(matches!(
            strata(StrataKind::Gamma1, 2, 1, Some("1,0"), false, 1),
            Err(CliError::Usage(_))
        ));
    }
}
