use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use semiring_lab::congruences::sigma_star_witness;
use semiring_lab::theorems::{thm_4_3_readings, Thm43Readings};
use semiring_lab::{
    catalog, enumerate_idempotent_semirings, green_add, green_mult, least_dl_congruence, quasi_orders, sigma,
    sigma_star, spined_decompose, ClassExpr, EnumConfig, Error, EtaMethod, SemiringTable, TheoremId,
};

use crate::report::{digest, partition_json, relation_json, Exit, Report};

/// Resource limits shared by the enumeration-driven commands.
#[derive(Clone, Debug)]
pub struct Limits {
    pub order_cap: usize,
    pub max_nodes: u64,
    pub budget: Duration,
    pub workers: Option<usize>,
    pub timing: bool,
}

fn read_semiring(path: &Path, report: &mut Report) -> Option<SemiringTable> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report.fail(Exit::Parse, "parse", format!("{}: {e}", path.display()));
            return None;
        }
    };
    report.input_digest = digest(text.as_bytes());
    match SemiringTable::parse(&text) {
        Ok(t) => Some(t),
        Err(e) => {
            report.fail_with(&e);
            None
        }
    }
}

pub fn analyze(path: &Path, timing: bool) -> Report {
    let start = Instant::now();
    let mut report = Report::new(format!("analyze {}", path.display()), String::new());
    let Some(t) = read_semiring(path, &mut report) else {
        return report;
    };
    let validation = t.validate();
    let mut results = serde_json::Map::new();
    results.insert("order".into(), json!(t.order()));
    results.insert("elements".into(), json!(t.names()));
    results.insert("validation".into(), json!(validation));
    if !validation.is_idempotent_semiring {
        report.fail_with(&Error::NotIdempotentSemiring(format!("{} axiom violation(s)", validation.violations.len())));
        report.results = Value::Object(results);
        return report;
    }
    if let Err(e) = analyze_into(&t, &mut results) {
        report.fail_with(&e);
    }
    report.results = Value::Object(results);
    report.with_timing(timing.then(|| start.elapsed()));
    report
}

fn analyze_into(t: &SemiringTable, out: &mut serde_json::Map<String, Value>) -> Result<(), Error> {
    let add = green_add(t)?;
    let mul = green_mult(t)?;
    out.insert(
        "green".into(),
        json!({
            "D_plus": partition_json(t, &add.d),
            "L_plus": partition_json(t, &add.l),
            "R_plus": partition_json(t, &add.r),
            "D_dot": partition_json(t, &mul.d),
            "L_dot": partition_json(t, &mul.l),
            "R_dot": partition_json(t, &mul.r),
        }),
    );
    let q = quasi_orders(t);
    out.insert(
        "quasi_orders".into(),
        json!({
            "left_add": relation_json(t, &q.left_add),
            "right_add": relation_json(t, &q.right_add),
            "left_mul": relation_json(t, &q.left_mul),
            "right_mul": relation_json(t, &q.right_mul),
            "add": relation_json(t, &q.add),
            "mul": relation_json(t, &q.mul),
        }),
    );
    let s = sigma(t);
    out.insert("sigma".into(), json!({ "pairs": relation_json(t, &s), "transitive": s.is_transitive() }));
    let star = sigma_star(t);
    let witnesses: Vec<Value> = star
        .pairs()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| {
            let x = sigma_star_witness(t, a, b).expect("pair of sigma*");
            json!([t.name(a), t.name(b), t.name(x)])
        })
        .collect();
    out.insert(
        "sigma_star".into(),
        json!({
            "pairs": relation_json(t, &star),
            "witnesses": witnesses,
            "equals_transitive_closure_of_sigma": star == s.transitive_closure(),
        }),
    );
    let mut etas = serde_json::Map::new();
    let mut parts = Vec::new();
    for m in EtaMethod::ALL {
        let p = least_dl_congruence(t, m)?;
        etas.insert(m.name().into(), partition_json(t, &p));
        parts.push(p);
    }
    let agree = parts.windows(2).all(|w| w[0] == w[1]);
    etas.insert("agree".into(), json!(agree));
    out.insert("eta".into(), Value::Object(etas));
    if !agree {
        return Err(Error::Consistency("the three routes to eta disagree".into()));
    }
    let membership: BTreeMap<String, bool> =
        catalog::all().into_iter().map(|v| (v.name.clone(), v.contains(t))).collect();
    out.insert("varieties".into(), json!(membership));
    Ok(())
}

/// Enumerates orders `1..=max_order` within the shared budget.
fn enumerate_upto(
    max_order: usize,
    iso: bool,
    limits: &Limits,
    report: &mut Report,
) -> Option<Vec<(usize, Vec<SemiringTable>)>> {
    if max_order == 0 || max_order > limits.order_cap {
        report.fail(
            Exit::Precondition,
            "precondition",
            format!("max order {max_order} outside 1..={}", limits.order_cap),
        );
        return None;
    }
    let deadline = Instant::now() + limits.budget;
    let mut nodes_left = limits.max_nodes;
    let mut out = Vec::new();
    for n in 1..=max_order {
        let remaining = deadline.saturating_duration_since(Instant::now());
        if remaining.is_zero() || nodes_left == 0 {
            report.fail(Exit::Budget, "budget", format!("budget exhausted before order {n}; partial"));
            return None;
        }
        let cfg = EnumConfig::new(n).up_to_iso(iso).max_nodes(nodes_left).max_duration(remaining);
        match enumerate_idempotent_semirings(&cfg) {
            Ok(e) if e.complete => {
                nodes_left -= e.nodes.min(nodes_left);
                out.push((n, e.semirings));
            }
            Ok(e) => {
                report.fail(
                    Exit::Budget,
                    "budget",
                    format!("enumeration of order {n} stopped after {} nodes; partial", e.nodes),
                );
                return None;
            }
            Err(e) => {
                report.fail_with(&e);
                return None;
            }
        }
    }
    Some(out)
}

fn stream_digest(orders: &[(usize, Vec<SemiringTable>)]) -> String {
    let mut text = String::new();
    for (_, tables) in orders {
        for t in tables {
            text.push_str(&t.to_text());
            text.push_str("%%\n");
        }
    }
    digest(text.as_bytes())
}

fn pool(workers: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        b = b.num_threads(w.max(1));
    }
    b.build().expect("thread pool")
}

#[derive(Serialize, Default)]
struct TheoremTally {
    checked: usize,
    inconsistent: usize,
}

#[derive(Serialize, Default, Clone, Copy)]
struct Agreement {
    agree: usize,
    disagree: usize,
}

impl Agreement {
    fn add(&mut self, same: bool) {
        if same {
            self.agree += 1;
        } else {
            self.disagree += 1;
        }
    }
}

pub fn parse_suite(suite: &str) -> Result<Vec<TheoremId>, Error> {
    if suite.eq_ignore_ascii_case("all") {
        Ok(TheoremId::ALL.to_vec())
    } else {
        suite.split(',').map(|s| s.trim().parse()).collect()
    }
}

pub fn verify(suite: &str, max_order: usize, iso: bool, limits: &Limits) -> Report {
    let start = Instant::now();
    let mut report = Report::new(
        format!("verify --suite {suite} --max-order {max_order}{}", if iso { " --iso" } else { "" }),
        String::new(),
    );
    let theorems = match parse_suite(suite) {
        Ok(t) => t,
        Err(e) => {
            report.fail(Exit::Precondition, "precondition", e.to_string());
            return report;
        }
    };
    let Some(orders) = enumerate_upto(max_order, iso, limits, &mut report) else {
        return report;
    };
    report.input_digest = stream_digest(&orders);
    let with_readings = theorems.contains(&TheoremId::Thm4_3);
    let pool = pool(limits.workers);

    let mut tallies: BTreeMap<&'static str, TheoremTally> =
        theorems.iter().map(|id| (id.name(), TheoremTally::default())).collect();
    let mut readings: BTreeMap<&'static str, Agreement> = BTreeMap::new();
    let mut per_order = Vec::new();
    for (n, tables) in &orders {
        type Outcome = (Vec<Result<semiring_lab::TheoremReport, Error>>, Option<Result<Thm43Readings, Error>>);
        let outcomes: Vec<Outcome> = pool.install(|| {
            tables
                .par_iter()
                .map(|t| {
                    let reports = theorems.iter().map(|&id| semiring_lab::verify_theorem(t, id)).collect();
                    (reports, with_readings.then(|| thm_4_3_readings(t)))
                })
                .collect()
        });
        per_order.push(json!({ "order": n, "semirings": tables.len() }));
        for (idx, (reports, r43)) in outcomes.into_iter().enumerate() {
            for (id, r) in theorems.iter().zip(reports) {
                let tally = tallies.get_mut(id.name()).expect("tally");
                tally.checked += 1;
                match r {
                    Ok(r) if r.consistent => {}
                    Ok(r) => {
                        tally.inconsistent += 1;
                        let conds: Vec<String> =
                            r.conditions.iter().map(|c| format!("[{}] {}={}", c.clause, c.label, c.value)).collect();
                        let msg = format!("order {n} #{idx} {id}: {}", conds.join("; "));
                        eprintln!("INCONSISTENT {msg}");
                        report.fail(Exit::Internal, "inconsistent", msg);
                    }
                    Err(e) => {
                        tally.inconsistent += 1;
                        let msg = format!("order {n} #{idx} {id}: {e}");
                        eprintln!("ERROR {msg}");
                        report.fail(Exit::for_error(&e), "error", msg);
                    }
                }
            }
            match r43 {
                Some(Ok(r)) => {
                    readings.entry("LN vs RB_dot o (LZ_plus o D)").or_default().add(r.ln == r.rb_dot_lz_plus_d);
                    readings.entry("LN vs R_dot o (LZ_plus o D)").or_default().add(r.ln == r.r_dot_lz_plus_d);
                    readings.entry("LN vs L_dot o (LZ_plus o D)").or_default().add(r.ln == r.l_dot_lz_plus_d);
                    readings.entry("RN vs RB_dot o (RZ_plus o D)").or_default().add(r.rn == r.rb_dot_rz_plus_d);
                    readings.entry("RN vs R_dot o (RZ_plus o D)").or_default().add(r.rn == r.r_dot_rz_plus_d);
                    readings.entry("RN vs L_dot o (RZ_plus o D)").or_default().add(r.rn == r.l_dot_rz_plus_d);
                }
                Some(Err(e)) => report.fail_with(&e),
                None => {}
            }
        }
    }

    eprintln!("{:<24} {:>10} {:>13}", "theorem", "checked", "inconsistent");
    for (id, t) in &tallies {
        eprintln!("{id:<24} {:>10} {:>13}", t.checked, t.inconsistent);
    }
    let total: usize = tallies.values().map(|t| t.inconsistent).sum();
    eprintln!("total inconsistencies: {total}");

    let mut results = json!({
        "suite": suite,
        "max_order": max_order,
        "up_to_iso": iso,
        "orders": per_order,
        "theorems": tallies,
        "inconsistencies": total,
    });
    if with_readings {
        results["thm_4_3_readings"] = json!(readings);
    }
    report.results = results;
    report.with_timing(limits.timing.then(|| start.elapsed()));
    report
}

/// Output of the `enumerate` command.
pub enum EnumOutput {
    Count(usize),
    Stream(String),
    Directory(usize),
}

pub fn enumerate(
    order: usize,
    iso: bool,
    filter: Option<&str>,
    out_dir: Option<&Path>,
    count_only: bool,
    limits: &Limits,
) -> Result<EnumOutput, Error> {
    if order == 0 || order > limits.order_cap {
        return Err(Error::Precondition(format!("order {order} outside 1..={}", limits.order_cap)));
    }
    let mut cfg = EnumConfig::new(order).up_to_iso(iso).max_nodes(limits.max_nodes).max_duration(limits.budget);
    if let Some(f) = filter {
        cfg = cfg.filter(ClassExpr::parse(f)?);
    }
    let e = enumerate_idempotent_semirings(&cfg)?;
    if !e.complete {
        return Err(Error::Resource(format!("enumeration stopped after {} nodes; partial", e.nodes)));
    }
    if count_only {
        return Ok(EnumOutput::Count(e.semirings.len()));
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|err| Error::Precondition(format!("{}: {err}", dir.display())))?;
        for (i, t) in e.semirings.iter().enumerate() {
            let path = dir.join(format!("semiring_{order}_{i:05}.txt"));
            fs::write(&path, t.to_text()).map_err(|err| Error::Precondition(format!("{}: {err}", path.display())))?;
        }
        return Ok(EnumOutput::Directory(e.semirings.len()));
    }
    let records: Vec<String> = e.semirings.iter().map(SemiringTable::to_text).collect();
    Ok(EnumOutput::Stream(records.join("%%\n")))
}

pub fn decompose(path: &Path, out_dir: Option<&Path>, timing: bool) -> Report {
    let start = Instant::now();
    let mut report = Report::new(format!("decompose {}", path.display()), String::new());
    let Some(t) = read_semiring(path, &mut report) else {
        return report;
    };
    if let Err(e) = semiring_lab::table::require_idempotent(&t) {
        report.fail_with(&e);
        return report;
    }
    let dec = match spined_decompose(&t) {
        Ok(d) => d,
        Err(e) => {
            report.fail_with(&e);
            return report;
        }
    };
    let map_json = |src: &SemiringTable, dst: &SemiringTable, map: &[usize]| -> Value {
        let m: BTreeMap<&str, &str> = src.elements().map(|a| (src.name(a), dst.name(map[a]))).collect();
        json!(m)
    };
    let theta: BTreeMap<&str, [&str; 2]> = t
        .elements()
        .map(|a| {
            let (l, r) = dec.theta[a];
            (t.name(a), [dec.s1.name(l), dec.s2.name(r)])
        })
        .collect();
    if let Some(dir) = out_dir {
        for (name, table) in [("s1.txt", &dec.s1), ("s2.txt", &dec.s2), ("d.txt", &dec.d)] {
            if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(dir.join(name), table.to_text())) {
                report.fail(Exit::Precondition, "io", format!("{}: {e}", dir.display()));
            }
        }
    }
    report.results = json!({
        "s1": dec.s1.to_text(),
        "s2": dec.s2.to_text(),
        "d": dec.d.to_text(),
        "phi1": map_json(&dec.s1, &dec.d, &dec.phi1),
        "phi2": map_json(&dec.s2, &dec.d, &dec.phi2),
        "theta": theta,
        "s1_in_R_dot": catalog::r_dot().contains(&dec.s1),
        "s2_in_L_dot": catalog::l_dot().contains(&dec.s2),
    });
    report.with_timing(timing.then(|| start.elapsed()));
    report
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct SigmaRow {
    order: usize,
    index: usize,
    sigma_transitive: bool,
    in_n: bool,
    sigma_is_eta: bool,
}

pub fn explore_sigma(max_order: usize, iso: bool, limits: &Limits) -> Report {
    let start = Instant::now();
    let mut report =
        Report::new(format!("explore-sigma --max-order {max_order}{}", if iso { " --iso" } else { "" }), String::new());
    let Some(orders) = enumerate_upto(max_order, iso, limits, &mut report) else {
        return report;
    };
    report.input_digest = stream_digest(&orders);
    let pool = pool(limits.workers);
    let mut rows = Vec::new();
    for (n, tables) in &orders {
        let mut order_rows: Vec<SigmaRow> = pool.install(|| {
            tables
                .par_iter()
                .enumerate()
                .map(|(index, t)| {
                    let s = sigma(t);
                    let eta = semiring_lab::eta(t);
                    SigmaRow {
                        order: *n,
                        index,
                        sigma_transitive: s.is_transitive(),
                        in_n: catalog::n().contains(t),
                        sigma_is_eta: s.to_partition().as_ref() == Some(&eta),
                    }
                })
                .collect()
        });
        rows.append(&mut order_rows);
    }
    let mut cross: BTreeMap<String, usize> = BTreeMap::new();
    for r in &rows {
        let key = format!("sigma_transitive={} in_N={} sigma_is_eta={}", r.sigma_transitive, r.in_n, r.sigma_is_eta);
        *cross.entry(key).or_default() += 1;
        // σ always lies inside η; transitive σ is an equivalence, hence a candidate for η
        if r.in_n && !(r.sigma_transitive && r.sigma_is_eta) {
            report.fail(
                Exit::Internal,
                "inconsistent",
                format!("order {} #{}: in N but sigma is not eta", r.order, r.index),
            );
        }
    }
    let transitive_not_n = rows.iter().filter(|r| r.sigma_transitive && !r.in_n).count();
    let transitive_not_eta = rows.iter().filter(|r| r.sigma_transitive && !r.sigma_is_eta).count();
    eprintln!("{:<58} {:>8}", "class", "count");
    for (k, v) in &cross {
        eprintln!("{k:<58} {v:>8}");
    }
    eprintln!("sigma transitive but S not in N: {transitive_not_n}");
    report.results = json!({
        "max_order": max_order,
        "up_to_iso": iso,
        "rows": rows,
        "cross_table": cross,
        "sigma_transitive_not_in_n": transitive_not_n,
        "sigma_transitive_not_eta": transitive_not_eta,
    });
    report.with_timing(limits.timing.then(|| start.elapsed()));
    report
}
