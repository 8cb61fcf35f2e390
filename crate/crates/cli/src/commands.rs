//! The subcommands. Each returns the text to print; failures carry their
//! exit status.

use std::path::Path;

use blockqap::classes::{
    is_anti_monge, is_monotone, recognize_block_structure, recognize_multicut, recognize_product, recognize_sum,
    BlockSpec, Expand, MatrixSpec, MultiCutSpec, ProductSpec,
};
use blockqap::cut::{solve_equal_blocks_antimonge, solve_multicut_monotone_antimonge, Hypotheses};
use blockqap::gen;
use blockqap::oracle::DEFAULT_MAX_N;
use blockqap::pattern::{classify_2x2, classify_pattern, is_certified_polynomial, Classification, Complexity, Pattern};
use blockqap::product_block::{solve_product_block, Certification, ProductBlockInstance};
use blockqap::reductions::{reduce_bisection, reduce_partition, GraphBisectionInstance, PartitionInstance};
use blockqap::{rational_sqrt, Error, Permutation, QapInstance, Rational, SymMatrix};
use serde_json::{json, Value};

use crate::format::{
    num_rows, nums, read_instance, read_json, to_json, BisectionInput, Instance, InstanceFile, Metadata, Num,
    PartitionInput, PatternFile, ReductionRecord,
};
use crate::parallel::parallel_optimum;
use crate::verify::{self, Caps};
use crate::{Exit, Failure};

fn one_based(p: &Permutation) -> Vec<usize> {
    p.to_one_based()
}

/// Structure of a product matrix: the factor if it is rational, otherwise
/// a proportional vector `β` with `a_ij · scale = β_i β_j`.
struct ProductShape {
    beta: Vec<Rational>,
    scale: Rational,
    exact: Option<Vec<Rational>>,
}

fn product_shape(spec: &MatrixSpec, dense: &SymMatrix) -> Option<ProductShape> {
    if let MatrixSpec::Product(p) = spec {
        return Some(ProductShape {
            beta: p.alpha().to_vec(),
            scale: blockqap::int(1),
            exact: Some(p.alpha().to_vec()),
        });
    }
    let beta = recognize_product(dense)?;
    let scale = (0..dense.n())
        .map(|i| dense.get(i, i))
        .find(|d| **d != blockqap::int(0))
        .cloned()
        .unwrap_or_else(|| blockqap::int(1));
    let exact = rational_sqrt(&scale).map(|root| beta.iter().map(|b| b / &root).collect());
    Some(ProductShape { beta, scale, exact })
}

fn block_shape(spec: &MatrixSpec, dense: &SymMatrix) -> BlockSpec {
    match spec {
        MatrixSpec::Block(b) => b.clone(),
        MatrixSpec::MultiCut(c) => c.to_block_spec(),
        MatrixSpec::OneLambdaOne(o) => o.to_block_spec(),
        _ => recognize_block_structure(dense),
    }
}

fn multicut_shape(spec: &MatrixSpec, dense: &SymMatrix) -> Option<MultiCutSpec> {
    match spec {
        MatrixSpec::MultiCut(c) => Some(c.clone()),
        _ => recognize_multicut(dense).map(|r| r.spec),
    }
}

fn describe(spec: &MatrixSpec) -> Result<Value, Failure> {
    let m = spec.expand()?;
    let kind = match spec {
        MatrixSpec::Dense(_) => "dense",
        MatrixSpec::Product(_) => "product",
        MatrixSpec::Sum(_) => "sum",
        MatrixSpec::Block(_) => "block",
        MatrixSpec::MultiCut(_) => "multicut",
        MatrixSpec::OneLambdaOne(_) => "one-lambda-one",
    };
    let mut report = json!({
        "kind": kind,
        "n": m.n(),
        "monotone": is_monotone(&m),
        "anti_monge": is_anti_monge(&m),
    });
    match product_shape(spec, &m) {
        Some(shape) => {
            report["product"] = json!(true);
            match shape.exact {
                Some(alpha) => report["factor"] = json!(nums(&alpha)),
                None => {
                    report["scaled_factor"] = json!(nums(&shape.beta));
                    report["scale"] = json!(Num::from(&shape.scale));
                }
            }
        }
        None => report["product"] = json!(false),
    }
    match recognize_sum(&m) {
        Some(sum) => {
            report["sum"] = json!(true);
            report["sum_alpha"] = json!(nums(&sum.alpha));
        }
        None => report["sum"] = json!(false),
    }
    let block = recognize_block_structure(&m);
    report["block"] = json!({ "pattern": num_rows(block.pattern()), "sizes": block.sizes() });
    match recognize_multicut(&m) {
        Some(cut) => {
            report["multicut"] = json!(true);
            report["multicut_sizes"] = json!(cut.spec.sizes());
            report["normal_form"] = json!(cut.normal_form);
        }
        None => report["multicut"] = json!(false),
    }
    Ok(report)
}

pub fn recognize(path: &Path) -> Result<String, Failure> {
    let inst = read_instance(path)?;
    Ok(to_json(&json!({ "a": describe(&inst.a)?, "b": describe(&inst.b)? })))
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub oracle: bool,
    pub force: bool,
    pub max_n: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            oracle: false,
            force: false,
            max_n: DEFAULT_MAX_N,
        }
    }
}

struct Solved {
    solver: &'static str,
    certification: &'static str,
    permutation: Permutation,
    block_order: Option<Vec<usize>>,
}

/// Tries the structured solvers on `(a, b)`; `Err` lists why each one did
/// not apply.
fn structured(a: &MatrixSpec, b: &MatrixSpec, force: bool) -> Result<Solved, Vec<String>> {
    let (da, db) = match (a.expand(), b.expand()) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return Err(vec![e.to_string()]),
    };
    let mut reasons = Vec::new();
    if let Some(cut) = multicut_shape(b, &db) {
        match solve_multicut_monotone_antimonge(&da, &cut, Hypotheses::Verify) {
            Ok(sol) => {
                return Ok(Solved {
                    solver: "multicut-monotone-anti-monge",
                    certification: "theorem-optimal",
                    permutation: sol.permutation,
                    block_order: None,
                })
            }
            Err(e) => reasons.push(format!("monotone anti-Monge × normal-form multi-cut: {e}")),
        }
        match solve_equal_blocks_antimonge(&da, &cut) {
            Ok(sol) => {
                return Ok(Solved {
                    solver: "equal-blocks-anti-monge",
                    certification: "theorem-optimal",
                    permutation: sol.permutation,
                    block_order: None,
                })
            }
            Err(e) => reasons.push(format!("anti-Monge × equal-block multi-cut: {e}")),
        }
    } else {
        reasons.push("second matrix is not a multi-cut matrix".into());
    }

    let Some(shape) = product_shape(a, &da) else {
        reasons.push("first matrix is not a product matrix".into());
        return Err(reasons);
    };
    let blocks = block_shape(b, &db);
    let attempt = ProductBlockInstance::from_unsorted(shape.beta, blocks.clone()).and_then(|(inst, sort)| {
        let sol = solve_product_block(&inst, force)?;
        Ok((sort.compose(&sol.permutation)?, sol))
    });
    match attempt {
        Ok((permutation, sol)) => Ok(Solved {
            solver: "product-block",
            certification: match sol.certification {
                Certification::Optimal => "theorem-optimal",
                Certification::SeparableHeuristic => "separable-heuristic",
            },
            permutation,
            block_order: Some(sol.block_order),
        }),
        Err(e) => {
            let hint = if matches!(e, Error::Hypothesis(_)) {
                " (use --force to accept)"
            } else {
                ""
            };
            reasons.push(format!("product × block with {} blocks: {e}{hint}", blocks.q()));
            Err(reasons)
        }
    }
}

pub fn solve(path: &Path, opts: &SolveOptions) -> Result<String, Failure> {
    let inst = read_instance(path)?;
    solve_instance(&inst, opts)
}

pub fn solve_instance(inst: &Instance, opts: &SolveOptions) -> Result<String, Failure> {
    let qap = QapInstance::new(inst.a.expand()?, inst.b.expand()?)?;
    let mut report = if opts.oracle {
        let opt = parallel_optimum(&qap, opts.max_n).map_err(|e| match e {
            Error::TooLarge { .. } => Failure::unsupported(format!("{e}; raise --max-n to search anyway")),
            other => other.into(),
        })?;
        json!({
            "solver": "oracle",
            "certification": "oracle-exact",
            "value": Num::from(&opt.value),
            "permutation": one_based(&opt.argmin),
        })
    } else {
        let (solved, swapped) = match structured(&inst.a, &inst.b, opts.force) {
            Ok(s) => (s, false),
            Err(mut reasons) => match structured(&inst.b, &inst.a, opts.force) {
                // Z_π(A, B) = Z_{π⁻¹}(B, A).
                Ok(s) => (s, true),
                Err(more) => {
                    reasons.extend(more.into_iter().map(|r| format!("with the matrices swapped, {r}")));
                    return Err(Failure::unsupported(format!(
                        "no supported structure (use --oracle for exhaustive search):\n  {}",
                        reasons.join("\n  ")
                    )));
                }
            },
        };
        let permutation = if swapped {
            solved.permutation.inverse()
        } else {
            solved.permutation
        };
        let value = qap.evaluate(&permutation)?;
        let mut r = json!({
            "solver": solved.solver,
            "certification": solved.certification,
            "value": Num::from(&value),
            "permutation": one_based(&permutation),
            "identity": permutation.is_identity(),
        });
        if swapped {
            r["swapped"] = json!(true);
        }
        if let Some(order) = solved.block_order {
            r["block_order"] = json!(order.iter().map(|k| k + 1).collect::<Vec<_>>());
        }
        r
    };
    if let Some(t) = inst.metadata.as_ref().and_then(|m| m.threshold.as_ref()) {
        let threshold = t.parse(&"metadata.threshold")?;
        let value = blockqap::parse_rational(report["value"].as_str().expect("value is a string")).expect("own output");
        report["threshold"] = json!(t);
        report["at_most_threshold"] = json!(value <= threshold);
    }
    Ok(to_json(&report))
}

pub fn classify(path: &Path) -> Result<String, Failure> {
    let file: PatternFile = read_json(path)?;
    let p = Pattern::new(file.to_matrix().map_err(|f| f.context(path.display()))?);
    let mut report = json!({
        "q": p.q(),
        "certified_polynomial": is_certified_polynomial(&p),
    });
    match classify_pattern(&p) {
        Classification::PolynomialByCondition14 => report["classification"] = json!("PolynomialByCondition14"),
        Classification::NPHardByCondition16 { witness, minimizer } => {
            report["classification"] = json!("NPHardByCondition16");
            report["witness"] = json!({
                "r": witness.r() + 1,
                "s": witness.s() + 1,
                "lower": nums(witness.lower()),
                "upper": nums(witness.upper()),
                "x_star": nums(&minimizer.x),
                "value": Num::from(&minimizer.value),
            });
        }
        Classification::Unknown => report["classification"] = json!("Unknown"),
    }
    if p.q() == 2 {
        let c = classify_2x2(&p)?;
        report["two_by_two"] = json!(match c {
            Complexity::Polynomial => "Polynomial",
            Complexity::NPHard => "NPHard",
        });
    }
    Ok(to_json(&report))
}

pub fn reduce_partition_file(path: &Path) -> Result<String, Failure> {
    let input: PartitionInput = read_json(path)?;
    let (pattern, values) = input.parse().map_err(|f| f.context(path.display()))?;
    let part = PartitionInstance::new(values)?;
    let red = reduce_partition(&Pattern::new(pattern.clone()), &part).map_err(|e| match e {
        Error::Hypothesis(h) => Failure::unsupported(h.to_string()),
        other => other.into(),
    })?;
    let record = ReductionRecord::Partition {
        values: nums(part.values()),
        pattern: num_rows(&pattern),
        k: red.k,
        l: red.l,
        n: red.n,
        m: red.m,
        block_sizes: red.blocks.sizes().to_vec(),
        support: red.support.iter().map(|i| i + 1).collect(),
        r: red.ensemble.r() + 1,
        s: red.ensemble.s() + 1,
        lower: nums(red.ensemble.lower()),
        upper: nums(red.ensemble.upper()),
        x_star: nums(&red.x_star.x),
        threshold: Num::from(&red.threshold),
    };
    let metadata = Metadata {
        seed: None,
        provenance: Some("partition reduction".into()),
        threshold: Some(Num::from(&red.threshold)),
        reduction: Some(record),
    };
    let file = InstanceFile::new(
        &MatrixSpec::Product(ProductSpec::new(red.alpha.clone())?),
        &MatrixSpec::Block(red.blocks.clone()),
        Some(metadata),
    );
    Ok(to_json(&file))
}

pub fn reduce_bisection_file(path: &Path) -> Result<String, Failure> {
    let input: BisectionInput = read_json(path)?;
    let mut edges = Vec::with_capacity(input.edges.len());
    for (k, &[a, b]) in input.edges.iter().enumerate() {
        if a == 0 || b == 0 {
            return Err(Failure::input(format!(
                "{}: edges[{k}]: vertices are numbered from 1",
                path.display()
            )));
        }
        edges.push((a - 1, b - 1));
    }
    let g = GraphBisectionInstance::new(input.vertices, edges, input.t)?;
    let (inst, threshold) = reduce_bisection(&g)?;
    let metadata = Metadata {
        seed: None,
        provenance: Some("graph bisection reduction".into()),
        threshold: Some(Num::from(&threshold)),
        reduction: Some(ReductionRecord::Bisection {
            vertices: input.vertices,
            edges: input.edges.clone(),
            t: input.t,
            threshold: Num::from(&threshold),
        }),
    };
    let half = input.vertices / 2;
    let file = InstanceFile::new(
        &MatrixSpec::Dense(inst.a().clone()),
        &MatrixSpec::MultiCut(MultiCutSpec::new(vec![half, half])?),
        Some(metadata),
    );
    Ok(to_json(&file))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    AntiMonge,
    MonotoneAntiMonge,
    Product,
    Multicut,
    Pattern,
}

#[derive(Debug, Clone, Copy)]
pub struct GenOptions {
    pub n: usize,
    /// Number of 1-2-1 terms in generated anti-Monge matrices.
    pub k: usize,
    /// Number of blocks; defaults to `min(n, 2)`.
    pub q: Option<usize>,
    pub seed: u64,
}

/// Sizes as even as possible, smallest first.
fn balanced_sizes(n: usize, q: usize) -> Vec<usize> {
    (0..q).map(|i| n / q + usize::from(i >= q - n % q)).collect()
}

pub fn generate(kind: GenKind, opts: &GenOptions) -> Result<String, Failure> {
    let mut rng = gen::rng(opts.seed);
    let n = opts.n;
    let q = opts.q.unwrap_or(n.clamp(1, 2));
    let metadata = |what: &str| Metadata {
        seed: Some(opts.seed),
        provenance: Some(format!("gen {what}")),
        ..Metadata::default()
    };
    if kind == GenKind::Pattern {
        let p = gen::pattern_with(&mut rng, q)?;
        return Ok(to_json(&PatternFile {
            pattern: num_rows(&p),
            metadata: Some(metadata("pattern")),
        }));
    }
    if q == 0 || q > n {
        return Err(Failure::input(format!("need 1 ≤ q ≤ n, got n = {n}, q = {q}")));
    }
    let (a, b, what) = match kind {
        GenKind::AntiMonge => (
            MatrixSpec::Dense(gen::anti_monge_with(&mut rng, n, opts.k)?),
            MatrixSpec::MultiCut(MultiCutSpec::new(balanced_sizes(n, q))?),
            "anti-monge",
        ),
        GenKind::MonotoneAntiMonge => (
            MatrixSpec::Dense(gen::monotone_anti_monge_with(&mut rng, n, opts.k)?),
            MatrixSpec::MultiCut(gen::multicut_with(&mut rng, n, q)?),
            "monotone-anti-monge",
        ),
        GenKind::Multicut => {
            let b = gen::multicut_with(&mut rng, n, q)?;
            let a = gen::monotone_anti_monge_with(&mut rng, n, opts.k)?;
            (MatrixSpec::Dense(a), MatrixSpec::MultiCut(b), "multicut")
        }
        GenKind::Product => {
            let alpha = gen::product_with(&mut rng, n)?;
            let pattern = gen::certified_pattern_with(&mut rng, q)?;
            let sizes = gen::block_sizes_with(&mut rng, n, q)?;
            (
                MatrixSpec::Product(alpha),
                MatrixSpec::Block(BlockSpec::new(pattern, sizes)?),
                "product",
            )
        }
        GenKind::Pattern => unreachable!("handled above"),
    };
    Ok(to_json(&InstanceFile::new(&a, &b, Some(metadata(what)))))
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub quick: bool,
    pub seed: u64,
    /// Run a single criterion (1-based).
    pub only: Option<usize>,
}

/// Runs the verification suites; the exit status is 1 if any check fails.
pub fn verify(opts: &VerifyOptions) -> Result<(String, Exit), Failure> {
    let caps = if opts.quick { Caps::quick() } else { Caps::full() };
    if let Some(k) = opts.only {
        if !(1..=verify::CRITERIA).contains(&k) {
            return Err(Failure::input(format!(
                "criteria are numbered 1 to {}",
                verify::CRITERIA
            )));
        }
    }
    let outcomes = verify::run(&caps, opts.seed, opts.only);
    let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let exit = if outcomes.iter().all(|o| o.passed) {
        Exit::Ok
    } else {
        Exit::VerifyFailed
    };
    Ok((text, exit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced() {
        assert_eq!(balanced_sizes(7, 3), vec![2, 2, 3]);
        assert_eq!(balanced_sizes(6, 2), vec![3, 3]);
        assert_eq!(balanced_sizes(5, 1), vec![5]);
    }
}
