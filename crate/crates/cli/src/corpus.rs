//! Seeded random matrices and the cross-checks run on them.
//!
//! Instance `i` draws two simple matrices `M1`, `M2` and an arity
//! `n' in {2,3}` from a ChaCha8 stream, then checks that
//! - saturation against `Cube_n'`, the row-cover test and the
//!   two-element-algebra search agree on `M1`;
//! - the cover test on `M1 x M2` is the disjunction of the member verdicts;
//! - every witness re-checks and the comparison counters stay in bounds;
//! - the saturation log of `M1 => M2` replays.

use std::fmt::Write as _;

use mcheck_core::cube::{
    algebra_satisfies, build_counterexample_algebra, check_cube_verdict, implies_cube_general_capped,
    implies_cube_simple, preserves, preserves_direct, CubeRelation, NamedOperation, OracleVerdict, TwoElementAlgebra,
};
use mcheck_core::families::{family, Family};
use mcheck_core::lex::{check_lex_verdict, implies_lex};
use mcheck_core::{intersect, presentation, to_text, SimpleMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub nmax: usize,
    pub mmax: usize,
    pub kmax: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            nmax: 4,
            mmax: 4,
            kmax: 3,
        }
    }
}

impl Bounds {
    pub fn within_defaults(&self) -> bool {
        let d = Bounds::default();
        self.nmax <= d.nmax && self.mmax <= d.mmax && self.kmax <= d.kmax
    }
}

pub struct Instance {
    pub m1: SimpleMatrix,
    pub m2: SimpleMatrix,
    pub n_prime: usize,
}

pub fn random_simple<R: Rng>(rng: &mut R, bounds: Bounds) -> SimpleMatrix {
    let n = rng.gen_range(1..=bounds.nmax);
    let m = rng.gen_range(0..=bounds.mmax);
    let k = rng.gen_range(1..=bounds.kmax);
    let left = (0..n).map(|_| (0..m).map(|_| rng.gen_range(1..=k)).collect()).collect();
    let right = (0..n).map(|_| rng.gen_range(1..=k)).collect();
    SimpleMatrix::from_rows(left, right, k).expect("entries are drawn within bounds")
}

/// The deterministic instance stream for `seed`.
pub fn instances(seed: u64, count: usize, bounds: Bounds) -> impl Iterator<Item = Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        let m1 = random_simple(&mut rng, bounds);
        let m2 = random_simple(&mut rng, bounds);
        let n_prime = rng.gen_range(2..=3);
        Instance { m1, m2, n_prime }
    })
}

#[derive(Debug, Default)]
pub struct Summary {
    pub instances: usize,
    pub cube_holds: usize,
    pub lex_pair_holds: usize,
    pub undecided: usize,
    pub disagreements: usize,
    pub report: String,
}

fn word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn algebra_problems(m: &SimpleMatrix, n_prime: usize, algebra: &TwoElementAlgebra) -> Option<String> {
    match algebra_satisfies(algebra, &presentation(m)) {
        Ok(true) => {}
        Ok(false) => return Some("algebra does not satisfy the equations".into()),
        Err(e) => return Some(format!("algebra is malformed: {e}")),
    }
    let r = CubeRelation::new(n_prime);
    algebra
        .ops
        .iter()
        .find(|named| !preserves_direct(&named.op, &r))
        .map(|named| format!("{} does not preserve R_{n_prime}", named.symbol))
}

/// Runs the cross-checks on one instance, returning the per-instance line
/// and any disagreements.
fn check(
    index: usize,
    inst: &Instance,
    cubes: &[SimpleMatrix; 2],
    node_cap: u64,
    summary: &mut Summary,
) -> (String, Vec<String>) {
    let Instance { m1, m2, n_prime } = inst;
    let n_prime = *n_prime;
    let mut problems = Vec::new();

    let cube = &cubes[n_prime - 2];
    let lex = implies_lex(m1, cube);
    if let Err(e) = check_lex_verdict(m1, cube, &lex) {
        problems.push(format!("saturation log against Cube_{n_prime} does not replay: {e}"));
    }

    let cover = implies_cube_simple(m1, n_prime);
    if let Err(e) = check_cube_verdict(m1, &cover) {
        problems.push(format!("cover witness rejected: {e}"));
    }
    let (n, m) = (m1.n() as u64, m1.m() as u64);
    let bound = n_prime as u64 * m * n.pow(n_prime as u32);
    if cover.element_comparisons > bound {
        problems.push(format!(
            "{} comparisons exceed n'*m*n^n' = {bound}",
            cover.element_comparisons
        ));
    }
    if n_prime == 2 && cover.element_comparisons > 2 * m * n * n {
        problems.push(format!(
            "{} comparisons exceed 2mn^2 = {}",
            cover.element_comparisons,
            2 * m * n * n
        ));
    }
    if !cover.holds() {
        match build_counterexample_algebra(m1, n_prime) {
            Ok(p) => {
                if !preserves(&p, &CubeRelation::new(n_prime)) {
                    problems.push(format!("counterexample does not preserve R_{n_prime}"));
                }
                let algebra = TwoElementAlgebra::new(vec![NamedOperation {
                    symbol: "p".into(),
                    op: p,
                }]);
                if let Some(e) = algebra_problems(m1, n_prime, &algebra) {
                    problems.push(format!("counterexample: {e}"));
                }
            }
            Err(e) => problems.push(format!("counterexample not built: {e}")),
        }
    }

    let general = match implies_cube_general_capped(m1, n_prime, node_cap) {
        Ok(v) => v,
        Err(e) => {
            problems.push(format!("algebra search rejected the matrix: {e}"));
            OracleVerdict::Undecided { nodes: 0 }
        }
    };
    if let OracleVerdict::Fails { algebra, .. } = &general {
        if let Some(e) = algebra_problems(m1, n_prime, algebra) {
            problems.push(format!("search witness: {e}"));
        }
    }
    let general_word = match general.holds() {
        Some(h) => word(h),
        None => {
            summary.undecided += 1;
            "undecided"
        }
    };
    if lex.holds() != cover.holds() || general.holds().is_some_and(|h| h != cover.holds()) {
        problems.push(format!(
            "M1 => Cube_{n_prime}: saturation {}, cover {}, search {general_word}",
            word(lex.holds()),
            word(cover.holds())
        ));
    }

    let second = implies_cube_simple(m2, n_prime).holds();
    let both = implies_cube_simple(&intersect(m1, m2), n_prime).holds();
    if both != (cover.holds() || second) {
        problems.push(format!(
            "intersection {} but members {} and {}",
            word(both),
            word(cover.holds()),
            word(second)
        ));
    }

    let pair = implies_lex(m1, m2);
    if let Err(e) = check_lex_verdict(m1, m2, &pair) {
        problems.push(format!("saturation log of M1 => M2 does not replay: {e}"));
    }

    summary.cube_holds += usize::from(cover.holds());
    summary.lex_pair_holds += usize::from(pair.holds());
    let line = format!(
        "#{index:04} n'={n_prime} M1 {}x{} k={} M2 {}x{} k={}: cube {} search {general_word} intersection {} M1=>M2 {}",
        m1.n(),
        m1.m(),
        m1.k(),
        m2.n(),
        m2.m(),
        m2.k(),
        word(cover.holds()),
        word(both),
        word(pair.holds())
    );
    (line, problems)
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

/// Generates and checks `count` instances. The report is a pure function of
/// the arguments.
pub fn run_corpus(seed: u64, count: usize, bounds: Bounds, node_cap: u64) -> Summary {
    let cube = |n| family(Family::Cube { n, k: 2 }).unwrap().as_simple().unwrap();
    let cubes = [cube(2), cube(3)];
    let mut summary = Summary::default();
    let mut lines = String::new();
    let mut failures = String::new();
    for (index, inst) in instances(seed, count, bounds).enumerate() {
        let (line, problems) = check(index, &inst, &cubes, node_cap, &mut summary);
        summary.instances += 1;
        lines.push_str(&line);
        lines.push('\n');
        if !problems.is_empty() {
            summary.disagreements += 1;
            let _ = writeln!(failures, "disagreement at #{index:04} (n'={}):", inst.n_prime);
            for p in &problems {
                let _ = writeln!(failures, "  {p}");
            }
            failures.push_str("  M1:\n");
            failures.push_str(&indent(&to_text(&inst.m1)));
            failures.push_str("  M2:\n");
            failures.push_str(&indent(&to_text(&inst.m2)));
        }
    }
    let mut report = String::new();
    let _ = writeln!(
        report,
        "corpus seed={seed} count={count} nmax={} mmax={} kmax={}",
        bounds.nmax, bounds.mmax, bounds.kmax
    );
    report.push_str(&lines);
    report.push_str(&failures);
    let _ = writeln!(
        report,
        "summary: {} instances, {} with M1 => Cube, {} with M1 => M2, {} undecided, {} disagreements",
        summary.instances, summary.cube_holds, summary.lex_pair_holds, summary.undecided, summary.disagreements
    );
    summary.report = report;
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_seeded() {
        let a: Vec<_> = instances(7, 20, Bounds::default()).map(|i| to_text(&i.m1)).collect();
        let b: Vec<_> = instances(7, 20, Bounds::default()).map(|i| to_text(&i.m1)).collect();
        let c: Vec<_> = instances(8, 20, Bounds::default()).map(|i| to_text(&i.m1)).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn empty_run() {
        let s = run_corpus(3, 0, Bounds::default(), 1000);
        assert_eq!(s.instances, 0);
        assert_eq!(
            s.report,
            "corpus seed=3 count=0 nmax=4 mmax=4 kmax=3\nsummary: 0 instances, 0 with M1 => Cube, 0 with M1 => M2, 0 undecided, 0 disagreements\n"
        );
    }

    #[test]
    fn small_run_agrees() {
        let s = run_corpus(11, 40, Bounds::default(), 1_000_000);
        assert_eq!(s.disagreements, 0, "{}", s.report);
    }
}
