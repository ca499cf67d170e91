//! Per-tree records and corpus summaries.

use std::collections::BTreeMap;
use std::time::Instant;

use arborlink::components::{m_bruteforce, MAX_VERTICES};
use arborlink::coxeter::{RankCertificateJson, VerifyError};
use arborlink::flatten::BRUTEFORCE_EDGE_LIMIT;
use arborlink::wirtinger::{BridgeBoundJson, EXACT_ARC_LIMIT};
use arborlink::{
    bridge_upper_bound, build_coxeter_graph, coxeter::path_weights, compile, flattening_number,
    flattening_number_bruteforce, verify_labeling, verify_two_bridge, wirtinger_exact,
    ExactOutcome, PlaneTree,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Agree,
    Skipped,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Agree => 0,
            Status::Violation => 1,
            Status::Skipped => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub tree: String,
    pub vertices: usize,
    pub f: usize,
    pub f_plus_2: usize,
    pub m: Option<usize>,
    pub omega_bound: Option<usize>,
    pub omega_exact: Option<usize>,
    pub mu_lower_bound: Option<usize>,
    pub equality: bool,
    pub status: Status,
    pub violations: Vec<String>,
    pub skipped: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge_certificate: Option<BridgeBoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_certificate: Option<RankCertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub seed: u64,
    /// Largest size tried by exact Wirtinger search; `f + 2` when unset.
    pub kmax: Option<usize>,
    pub timings: bool,
}

struct Clock {
    on: bool,
    marks: BTreeMap<&'static str, f64>,
}

impl Clock {
    fn time<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.on {
            self.marks.insert(name, start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

/// Runs every computation within its guard and cross-checks the results.
pub fn evaluate(tree: &PlaneTree, opts: Options) -> Record {
    let mut clock = Clock { on: opts.timings, marks: BTreeMap::new() };
    let mut violations = vec![];
    let mut skipped = vec![];

    let flat = clock.time("flatten", || flattening_number(tree));
    let f = flat.value;
    if tree.edge_count() <= BRUTEFORCE_EDGE_LIMIT {
        let brute = flattening_number_bruteforce(tree).expect("within edge limit");
        if brute != f {
            violations.push(format!("flattening dp {f} != bruteforce {brute}"));
        }
    }

    let m = if tree.len() <= MAX_VERTICES {
        let m = clock.time("components", || m_bruteforce(tree).expect("within guard").value);
        if m != f + 2 {
            violations.push(format!("m = {m} != f + 2 = {}", f + 2));
        }
        Some(m)
    } else {
        skipped.push(format!("m: {} vertices > {MAX_VERTICES}", tree.len()));
        None
    };

    let mut omega_bound = None;
    let mut omega_exact = None;
    let mut bridge_certificate = None;
    let d = compile(tree);
    if !d.is_connected() {
        skipped.push("wirtinger: diagram is split".into());
    } else {
        match clock.time("wirtinger", || bridge_upper_bound(tree)) {
            Ok(cert) => {
                let arcs = cert.diagram.arc_count();
                let kmax = opts.kmax.unwrap_or(f + 2);
                if cert.diagram.crossing_count() == 0 {
                    skipped.push("exact wirtinger: no crossings".into());
                } else if arcs > EXACT_ARC_LIMIT {
                    skipped.push(format!("exact wirtinger: {arcs} arcs > {EXACT_ARC_LIMIT}"));
                } else {
                    match clock.time("wirtinger_exact", || wirtinger_exact(&cert.diagram, kmax)) {
                        Ok(ExactOutcome::Found { k, .. }) => {
                            if k > f + 2 {
                                violations.push(format!("exact omega {k} > f + 2"));
                            }
                            omega_exact = Some(k);
                        }
                        Ok(ExactOutcome::ExceedsKMax { .. }) if kmax >= f + 2 => {
                            violations.push(format!("exact omega > {kmax} >= f + 2"));
                        }
                        Ok(ExactOutcome::ExceedsKMax { .. }) => {
                            skipped.push(format!("exact wirtinger: exceeds kmax {kmax}"));
                        }
                        Err(e) => skipped.push(format!("exact wirtinger: {e}")),
                    }
                }
                let json = cert.to_json();
                if !json.verified || json.bound != f + 2 {
                    violations.push("bridge certificate does not verify".into());
                }
                omega_bound = Some(cert.bound);
                bridge_certificate = Some(json);
            }
            Err(e) => violations.push(format!("wirtinger: {e}")),
        }
    }

    let mut mu_lower_bound = None;
    let mut rank_certificate = None;
    let class = tree.classify();
    let lower = clock.time("coxeter", || {
        if class.is_path {
            match verify_two_bridge(&path_weights(tree)) {
                Ok(c) => Ok(c.to_json()),
                Err(VerifyError::TrivialQuotient { alpha }) => {
                    Err((false, format!("coxeter: two-bridge numerator {alpha}")))
                }
                Err(e) => Err((true, format!("coxeter: {e}"))),
            }
        } else {
            match build_coxeter_graph(tree) {
                Ok((g, s)) => verify_labeling(&compile(&s.tree), &g, &s)
                    .map(|c| c.to_json())
                    .map_err(|e| (true, format!("coxeter: {e}"))),
                Err(e) => Err((false, format!("coxeter: {e}"))),
            }
        }
    });
    match lower {
        Ok(json) => {
            if json.mu_lower_bound != f + 2 || json.residual > arborlink::coxeter::TOLERANCE {
                violations.push(format!("rank {} != f + 2", json.mu_lower_bound));
            }
            mu_lower_bound = Some(json.mu_lower_bound);
            rank_certificate = Some(json);
        }
        Err((true, msg)) => violations.push(msg),
        Err((false, msg)) => skipped.push(msg),
    }

    // beta = mu = f + 2, and m = f + 2 whenever m was searched
    let equality = omega_bound == Some(f + 2)
        && mu_lower_bound == Some(f + 2)
        && m.is_none_or(|m| m == f + 2);
    let status = if !violations.is_empty() {
        Status::Violation
    } else if !skipped.is_empty() {
        Status::Skipped
    } else {
        Status::Agree
    };
    let repro = (status == Status::Violation)
        .then(|| format!("arborlink invariants --json --seed {} '{}'", opts.seed, tree.serialize()));
    Record {
        index: None,
        tree: tree.serialize(),
        vertices: tree.len(),
        f,
        f_plus_2: f + 2,
        m,
        omega_bound,
        omega_exact,
        mu_lower_bound,
        equality,
        status,
        violations,
        skipped,
        repro,
        bridge_certificate,
        rank_certificate,
        timings_ms: opts.timings.then_some(clock.marks),
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub records: usize,
    pub agree: usize,
    pub skipped: usize,
    pub violations: usize,
    pub equalities: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let mut s = Summary { records: records.len(), ..Default::default() };
        for r in records {
            match r.status {
                Status::Agree => s.agree += 1,
                Status::Skipped => s.skipped += 1,
                Status::Violation => s.violations += 1,
            }
            s.equalities += usize::from(r.equality);
        }
        s
    }

    pub fn status(&self) -> Status {
        if self.violations > 0 {
            Status::Violation
        } else if self.skipped > 0 {
            Status::Skipped
        } else {
            Status::Agree
        }
    }
}

/// Plain-text rendering of one record.
pub fn human(r: &Record) -> String {
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let mut out = format!(
        "tree: {}\nf: {}\nf+2: {}\nm: {}\nomega bound: {}\nomega exact: {}\nmu >= {}\nstatus: {:?}\n",
        r.tree,
        r.f,
        r.f_plus_2,
        opt(r.m),
        opt(r.omega_bound),
        opt(r.omega_exact),
        opt(r.mu_lower_bound),
        r.status
    );
    for v in &r.violations {
        out.push_str(&format!("violation: {v}\n"));
    }
    for s in &r.skipped {
        out.push_str(&format!("skipped: {s}\n"));
    }
    if let Some(repro) = &r.repro {
        out.push_str(&format!("reproduce: {repro}\n"));
    }
    out
}
