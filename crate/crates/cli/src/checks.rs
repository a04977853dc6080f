//! The per-q verification battery. Each check recomputes its claim from
//! scratch against the constructions in paley-core and reports a pass/fail
//! outcome with a deterministic details string; mathematical failures are
//! never downgraded.

use paley_core::gf::ExtField;
use paley_core::graph::{
    build_block_graph, build_paley, check_srg, classify_cliques, enumerate_max_cliques,
    expected_srg_params, graphs_equal, hoffman_check, CliqueSearchOptions, Graph, SrgCheck,
    SrgParams,
};
use paley_core::plane::{
    all_slopes, build_oa_full, build_oa_quadratic, canonical_partitions, validate_oa,
    CliquePartition,
};
use paley_core::spectra::{
    balanced_fn, check_eigenfunction, contrast_fn, verify_balanced_span, verify_contrast_basis,
    verify_q_clique_eigen,
};
use serde::Serialize;
use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

/// The checks a campaign can run, in dependency order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Field,
    Oa,
    Graph,
    Srg,
    Spectra,
    Span,
    Cliques,
    Blokhuis,
}

pub const DEPENDENCY_ORDER: [CheckKind; 8] = [
    CheckKind::Field,
    CheckKind::Oa,
    CheckKind::Graph,
    CheckKind::Srg,
    CheckKind::Spectra,
    CheckKind::Span,
    CheckKind::Cliques,
    CheckKind::Blokhuis,
];

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Field => "field",
            CheckKind::Oa => "oa",
            CheckKind::Graph => "graph",
            CheckKind::Srg => "srg",
            CheckKind::Spectra => "spectra",
            CheckKind::Span => "span",
            CheckKind::Cliques => "cliques",
            CheckKind::Blokhuis => "blokhuis",
        }
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DEPENDENCY_ORDER
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown check '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub status: Status,
    pub details: String,
    pub data: Option<serde_json::Value>,
}

impl CheckOutcome {
    fn pass(details: String) -> Self {
        CheckOutcome {
            status: Status::Pass,
            details,
            data: None,
        }
    }

    fn fail(details: String) -> Self {
        CheckOutcome {
            status: Status::Fail,
            details,
            data: None,
        }
    }

    fn skipped(details: String) -> Self {
        CheckOutcome {
            status: Status::Skipped,
            details,
            data: None,
        }
    }

    fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }
}

/// Per-q state shared by the checks; heavy constructions happen once.
pub struct QContext {
    pub q: u64,
    pub e: ExtField,
    graph: OnceCell<Graph>,
    parts: OnceCell<Vec<CliquePartition>>,
}

impl QContext {
    pub fn new(q: u64) -> Result<Self, String> {
        let e = ExtField::for_q(q).map_err(|err| err.to_string())?;
        Ok(QContext {
            q,
            e,
            graph: OnceCell::new(),
            parts: OnceCell::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph.get_or_init(|| build_paley(&self.e))
    }

    pub fn parts(&self) -> &[CliquePartition] {
        self.parts.get_or_init(|| canonical_partitions(&self.e))
    }

    pub fn expected_params(&self) -> SrgParams {
        expected_srg_params((self.q + 1) / 2, self.q).expect("m < n+1 for odd prime powers")
    }
}

pub fn run_check(
    ctx: &QContext,
    kind: CheckKind,
    node_budget: u64,
    strict: bool,
    blokhuis_explicit: bool,
) -> CheckOutcome {
    match kind {
        CheckKind::Field => field_check(ctx),
        CheckKind::Oa => oa_check(ctx),
        CheckKind::Graph => graph_check(ctx),
        CheckKind::Srg => srg_check(ctx),
        CheckKind::Spectra => spectra_check(ctx),
        CheckKind::Span => span_check(ctx),
        CheckKind::Cliques => cliques_check(ctx),
        CheckKind::Blokhuis => blokhuis_check(ctx, node_budget, strict, blokhuis_explicit),
    }
}

/// Square tests against exhaustive square sets in both fields, the chosen
/// non-square, and index round trips.
fn field_check(ctx: &QContext) -> CheckOutcome {
    let q = ctx.q;
    let e = &ctx.e;
    let f = e.base();
    let mut problems = Vec::new();

    let mut base_squares = vec![false; q as usize];
    for i in 1..q {
        let sq = f.mul(&f.element(i), &f.element(i));
        base_squares[f.index(&sq) as usize] = true;
    }
    let mut base_count = 0u64;
    for i in 1..q {
        let by_exponent = f.is_square(&f.element(i)).expect("nonzero");
        if by_exponent != base_squares[i as usize] {
            problems.push(format!("base element {i} misclassified"));
        }
        base_count += u64::from(by_exponent);
    }
    if base_count != (q - 1) / 2 {
        problems.push(format!("base square count {base_count} != {}", (q - 1) / 2));
    }

    let n = e.order();
    let mut ext_squares = vec![false; n as usize];
    for i in 1..n {
        let a = e.element(i);
        ext_squares[e.index(&e.mul(&a, &a)) as usize] = true;
    }
    let mut ext_count = 0u64;
    for i in 1..n {
        let by_exponent = e.is_square(&e.element(i)).expect("nonzero");
        if by_exponent != ext_squares[i as usize] {
            problems.push(format!("extension element {i} misclassified"));
        }
        ext_count += u64::from(by_exponent);
    }
    if ext_count != (n - 1) / 2 {
        problems.push(format!(
            "extension square count {ext_count} != {}",
            (n - 1) / 2
        ));
    }

    if f.is_square(e.d()).expect("d nonzero") {
        problems.push("d is a square in the base field".into());
    }
    if !e.is_square(&e.embed(e.d().clone())).expect("d nonzero") {
        problems.push("d = α² is not a square in the extension".into());
    }
    if !e.is_square(&e.neg(&e.one())).expect("-1 nonzero") {
        problems.push("-1 is not a square in the extension".into());
    }
    for i in 0..n {
        if e.index(&e.element(i)) != i {
            problems.push(format!("index {i} does not round-trip"));
        }
    }

    if problems.is_empty() {
        CheckOutcome::pass(format!(
            "{}: {} base and {} extension squares agree with exhaustive sets; d={} non-square, d=α² and -1 squares; indices round-trip",
            e.descriptor(),
            base_count,
            ext_count,
            f.index(e.d())
        ))
    } else {
        CheckOutcome::fail(problems.join("; "))
    }
}

/// Slope census and orthogonality of both arrays.
fn oa_check(ctx: &QContext) -> CheckOutcome {
    let q = ctx.q;
    let e = &ctx.e;
    let slopes = all_slopes(e);
    let quadratic = slopes.iter().filter(|s| s.is_quadratic()).count() as u64;
    let mut problems = Vec::new();
    if slopes.len() as u64 != q + 1 {
        problems.push(format!("{} slopes instead of {}", slopes.len(), q + 1));
    }
    if quadratic != (q + 1) / 2 {
        problems.push(format!(
            "{quadratic} quadratic slopes instead of {}",
            (q + 1) / 2
        ));
    }
    if !slopes[0].is_quadratic() {
        problems.push("slope 1 is not quadratic".into());
    }
    let full = build_oa_full(e);
    if let Err(v) = validate_oa(&full) {
        problems.push(format!("full array: {v}"));
    }
    let quad = build_oa_quadratic(e);
    if let Err(v) = validate_oa(&quad) {
        problems.push(format!("quadratic array: {v}"));
    }
    if problems.is_empty() {
        CheckOutcome::pass(format!(
            "{} slopes, {} quadratic (slope 1 quadratic); OA({},{}) and OA({},{}) pass balance and all-pairs",
            q + 1,
            quadratic,
            full.m(),
            full.n(),
            quad.m(),
            quad.n()
        ))
    } else {
        CheckOutcome::fail(problems.join("; "))
    }
}

/// The square-difference graph equals the block graph of the quadratic array.
fn graph_check(ctx: &QContext) -> CheckOutcome {
    let q = ctx.q;
    let g = ctx.graph();
    let expected_degree = ((q * q - 1) / 2) as usize;
    if let Some(v) = (0..g.n_vertices()).find(|&v| g.degree(v) != expected_degree) {
        return CheckOutcome::fail(format!(
            "vertex {v} has degree {} instead of {expected_degree}",
            g.degree(v)
        ));
    }
    let block = match build_block_graph(&build_oa_quadratic(&ctx.e)) {
        Ok(b) => b,
        Err(e) => return CheckOutcome::fail(format!("block graph construction failed: {e}")),
    };
    if !graphs_equal(g, &block) {
        return CheckOutcome::fail(
            "square-difference graph differs from the quadratic block graph".into(),
        );
    }
    CheckOutcome::pass(format!(
        "P({}) on {} vertices ({}-regular, {} edges) equals the block graph of OA({},{}) vertex-for-vertex",
        q * q,
        g.n_vertices(),
        expected_degree,
        g.edge_count(),
        (q + 1) / 2,
        q
    ))
}

/// Strongly-regular scan against the closed-form parameters.
fn srg_check(ctx: &QContext) -> CheckOutcome {
    let expected = ctx.expected_params();
    match check_srg(ctx.graph()) {
        SrgCheck::Srg(params) if params == expected && params.feasibility_holds() => {
            CheckOutcome::pass(format!(
                "strongly regular with parameters ({}, {}, {}, {}) as predicted",
                params.v, params.k, params.lambda, params.mu
            ))
            .with_data(serde_json::to_value(params).expect("serializable"))
        }
        SrgCheck::Srg(params) => CheckOutcome::fail(format!(
            "parameters ({}, {}, {}, {}) differ from predicted ({}, {}, {}, {})",
            params.v,
            params.k,
            params.lambda,
            params.mu,
            expected.v,
            expected.k,
            expected.lambda,
            expected.mu
        )),
        other => CheckOutcome::fail(format!("not strongly regular: {other:?}")),
    }
}

/// Every contrast and balanced function satisfies the eigenvalue equation,
/// and the two exact identities connecting them hold entrywise.
fn spectra_check(ctx: &QContext) -> CheckOutcome {
    let q = ctx.q as usize;
    let m = (q + 1) / 2;
    let g = ctx.graph();
    let parts = ctx.parts();
    let theta_num = ctx.q as i64 - 1;
    let n = g.n_vertices();

    let mut eigen_checks = 0usize;
    for j in 1..=m {
        for i in 2..=q {
            let f = contrast_fn(parts, j, i).expect("valid indices");
            match check_eigenfunction(g, &f, theta_num, 2) {
                Ok(true) => eigen_checks += 1,
                _ => {
                    return CheckOutcome::fail(format!(
                        "contrast function (j={j}, i={i}) fails 2(Av) = {theta_num}v"
                    ))
                }
            }
        }
        for i in 1..=q {
            let f = balanced_fn(parts, j, i).expect("valid indices");
            match check_eigenfunction(g, &f, theta_num, 2) {
                Ok(true) => eigen_checks += 1,
                _ => {
                    return CheckOutcome::fail(format!(
                        "balanced function (j={j}, i={i}) fails 2(Av) = {theta_num}v"
                    ))
                }
            }
        }
    }

    let mut identity_checks = 0usize;
    for j in 1..=m {
        for i in 2..=q {
            let f = contrast_fn(parts, j, i).expect("valid indices");
            let g1 = balanced_fn(parts, j, 1).expect("valid indices");
            let gi = balanced_fn(parts, j, i).expect("valid indices");
            for v in 0..n {
                if ctx.q as i64 * f.values()[v] != g1.values()[v] - gi.values()[v] {
                    return CheckOutcome::fail(format!(
                        "q·contrast != balanced_1 − balanced_i at (j={j}, i={i}), vertex {v}"
                    ));
                }
            }
            identity_checks += 1;
        }
        let mut acc = vec![0i64; n];
        for i in 1..=q {
            let f = balanced_fn(parts, j, i).expect("valid indices");
            for (a, v) in acc.iter_mut().zip(f.values()) {
                *a += v;
            }
        }
        if acc.iter().any(|&v| v != 0) {
            return CheckOutcome::fail(format!(
                "balanced functions of partition {j} do not sum to zero"
            ));
        }
        identity_checks += 1;
    }

    CheckOutcome::pass(format!(
        "{eigen_checks} eigenfunction checks 2(Av) = {theta_num}v exact; {identity_checks} scaling/zero-sum identities exact"
    ))
}

/// The rank certificates: contrast basis, balanced span (full and reduced),
/// and the complementary adjacency rank.
fn span_check(ctx: &QContext) -> CheckOutcome {
    let g = ctx.graph();
    let parts = ctx.parts();
    let contrast = match verify_contrast_basis(g, parts) {
        Ok(c) => c,
        Err(e) => return CheckOutcome::fail(format!("contrast family: {e}")),
    };
    let balanced = match verify_balanced_span(g, parts) {
        Ok(b) => b,
        Err(e) => return CheckOutcome::fail(format!("balanced family: {e}")),
    };
    let details = format!(
        "rank(contrast {}x{}) = {}; rank(balanced {}x{}) = {}; rank(reduced {}x{}) = {}; rank(2A−{}I) = {} = {} − {}; all match the eigenspace dimension",
        contrast.dims.0,
        contrast.dims.1,
        contrast.rank,
        balanced.full.dims.0,
        balanced.full.dims.1,
        balanced.full.rank,
        balanced.reduced.dims.0,
        balanced.reduced.dims.1,
        balanced.reduced.rank,
        ctx.q - 1,
        balanced.complement_rank,
        g.n_vertices(),
        balanced.full.rank,
    );
    let data = serde_json::json!({
        "contrast": contrast,
        "balanced": balanced.full,
        "balanced_reduced": balanced.reduced,
        "complement": {
            "rank": balanced.complement_rank,
            "expected": balanced.complement_expected,
        },
    });
    CheckOutcome::pass(details).with_data(data)
}

/// Every canonical clique attains the clique bound with the regular outside
/// count, and its balanced vector lies in the eigenspace; this certifies the
/// clique number without enumeration.
fn cliques_check(ctx: &QContext) -> CheckOutcome {
    let q = ctx.q;
    let g = ctx.graph();
    let params = ctx.expected_params();
    let m_eig = (q + 1) / 2;
    let mut count = 0u64;
    for part in ctx.parts() {
        for clique in part.cliques() {
            let report = match hoffman_check(g, &params, m_eig, clique) {
                Ok(r) => r,
                Err(e) => return CheckOutcome::fail(format!("canonical set is not a clique: {e}")),
            };
            if !report.at_equality
                || report.regular != Some(true)
                || report.outside_count != Some((q - 1) / 2)
            {
                return CheckOutcome::fail(format!(
                    "canonical clique {clique:?} misses bound equality or regularity: {report:?}"
                ));
            }
            match verify_q_clique_eigen(g, clique) {
                Ok(true) => {}
                other => {
                    return CheckOutcome::fail(format!(
                        "balanced vector of {clique:?} is not in the eigenspace: {other:?}"
                    ))
                }
            }
            count += 1;
        }
    }
    if count != q * (q + 1) / 2 {
        return CheckOutcome::fail(format!(
            "{count} canonical cliques instead of {}",
            q * (q + 1) / 2
        ));
    }
    CheckOutcome::pass(format!(
        "{count} canonical cliques of size {q} attain the bound 1 + k/m = {q} with outside count {}; all balanced vectors lie in the eigenspace; ω = {q} certified",
        (q - 1) / 2
    ))
}

/// Exhaustive maximum-clique enumeration: the maximum cliques are exactly the
/// canonical cliques, all quadratic lines, all regular. Defaults on for
/// q ≤ 9; larger q must select this check explicitly.
fn blokhuis_check(ctx: &QContext, node_budget: u64, strict: bool, explicit: bool) -> CheckOutcome {
    let q = ctx.q;
    if q > 9 && !explicit {
        return CheckOutcome::skipped(format!(
            "exhaustive enumeration is opt-in for q > 9; run --checks blokhuis to include q={q}"
        ));
    }
    let g = ctx.graph();
    let params = ctx.expected_params();
    // Exhibit a clique of size q before seeding the search floor with it.
    let seed = &ctx.parts()[0].cliques()[0];
    if hoffman_check(g, &params, (q + 1) / 2, seed).is_err() {
        return CheckOutcome::fail("canonical seed clique failed verification".into());
    }
    let search = enumerate_max_cliques(
        g,
        &CliqueSearchOptions {
            node_budget,
            omega_floor: Some(q as usize),
        },
    );
    if !search.exhaustive {
        let details = format!(
            "node budget {node_budget} exhausted after {} nodes; enumeration incomplete",
            search.nodes_visited
        );
        return if strict {
            CheckOutcome::fail(details)
        } else {
            CheckOutcome::skipped(format!("budget: {details}"))
        };
    }
    let mut problems = Vec::new();
    if search.omega != q as usize {
        problems.push(format!("clique number {} instead of {q}", search.omega));
    }
    if search.cliques.len() as u64 != q * (q + 1) / 2 {
        problems.push(format!(
            "{} maximum cliques instead of {}",
            search.cliques.len(),
            q * (q + 1) / 2
        ));
    }
    let mut canonical: Vec<Vec<usize>> = ctx
        .parts()
        .iter()
        .flat_map(|p| p.cliques().iter().cloned())
        .collect();
    canonical.sort_unstable();
    if search.cliques != canonical {
        problems.push("maximum cliques differ from the canonical cliques".into());
    }
    let report = classify_cliques(g, &ctx.e, &search);
    if !report.all_quadratic_lines {
        problems.push("a maximum clique is not a quadratic line".into());
    }
    if !report.all_regular {
        problems.push("a maximum clique is not regular".into());
    }
    for clique in &search.cliques {
        if verify_q_clique_eigen(g, clique) != Ok(true) {
            problems.push(format!("balanced vector of {clique:?} not in eigenspace"));
            break;
        }
    }
    let summary = serde_json::json!({
        "omega": report.omega,
        "n_max_cliques": report.n_max_cliques,
        "nodes_visited": report.nodes_visited,
        "all_quadratic_lines": report.all_quadratic_lines,
        "all_regular": report.all_regular,
    });
    if problems.is_empty() {
        CheckOutcome::pass(format!(
            "ω = {q}; {} maximum cliques = the {} quadratic lines; all regular with outside count {}; all balanced vectors in the eigenspace ({} search nodes)",
            report.n_max_cliques,
            q * (q + 1) / 2,
            (q - 1) / 2,
            report.nodes_visited
        ))
        .with_data(summary)
    } else {
        CheckOutcome::fail(problems.join("; ")).with_data(summary)
    }
}
