//! Exhaustive enumeration of unital 4-basis Cayley tables and filtering
//! by the formalized requirements.
//!
//! With the identity row/column fixed the free entries are the 3x3
//! lower-right block: 8^9 = 134,217,728 tables. Requiring commutativity
//! leaves 6 free entries (8^6 = 262,144); additionally fixing i*i = -1
//! leaves 5 (8^5 = 32,768). A naive 8^16 count over all 16 cells ignores
//! unitality; all three reduced counts are reported by
//! [`total_candidates`].
//!
//! The candidate space is split into contiguous lexicographic ranges.
//! Workers share nothing; the merge is deterministic, so results are
//! independent of the worker count.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::has_complex_structure;
use crate::error::CoreError;
use crate::table::{MultiplicationTable, SignedBasis, B_I, B_J, B_K, B_ONE};

/// The formalized requirements, in pruning order (cheapest first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Predicate {
    /// span(1, i) is closed and i*i = -1 (the embedded complex numbers).
    Psi,
    /// span(j, k) is closed under multiplication.
    PhiClosed,
    /// psi acts on Phi: b*f stays in span(j, k) for b in {1, i}, f in {j, k}.
    Coupling,
    /// span(j, k) carries a unity e and a u with u*u = -e.
    PhiComplex,
    /// All 64 basis triples associate.
    Assoc,
}

impl Predicate {
    pub const ALL: [Predicate; 5] = [
        Predicate::Psi,
        Predicate::PhiClosed,
        Predicate::Coupling,
        Predicate::PhiComplex,
        Predicate::Assoc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Predicate::Psi => "P_psi",
            Predicate::PhiClosed => "P_phi_closed",
            Predicate::Coupling => "P_coupling",
            Predicate::PhiComplex => "P_phi_complex",
            Predicate::Assoc => "P_assoc",
        }
    }
}

/// Per-predicate outcome for one table, with failure witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub psi: bool,
    pub phi_closed: bool,
    pub coupling: bool,
    pub phi_complex: bool,
    pub assoc: bool,
    /// First basis triple (a, b, c) with (ab)c != a(bc), if any.
    pub failing_assoc_triple: Option<(usize, usize, usize)>,
    /// First product of Phi basis elements that escapes span(j, k).
    pub escaping_phi_product: Option<(usize, usize)>,
}

impl PredicateReport {
    pub fn passes(&self, p: Predicate) -> bool {
        match p {
            Predicate::Psi => self.psi,
            Predicate::PhiClosed => self.phi_closed,
            Predicate::Coupling => self.coupling,
            Predicate::PhiComplex => self.phi_complex,
            Predicate::Assoc => self.assoc,
        }
    }

    pub fn passes_all(&self, preds: &[Predicate]) -> bool {
        preds.iter().all(|&p| self.passes(p))
    }

    pub fn outcome_vector(&self) -> [bool; 5] {
        [self.psi, self.phi_closed, self.coupling, self.phi_complex, self.assoc]
    }
}

/// Evaluates every predicate on a unital table.
pub fn predicate_suite(table: &MultiplicationTable) -> PredicateReport {
    let psi = table.entry(B_I, B_I) == SignedBasis::neg(B_ONE);

    let mut phi_closed = true;
    let mut escaping_phi_product = None;
    for a in [B_J, B_K] {
        for b in [B_J, B_K] {
            let e = table.entry(a, b);
            if e.basis != B_J && e.basis != B_K {
                phi_closed = false;
                if escaping_phi_product.is_none() {
                    escaping_phi_product = Some((a, b));
                }
            }
        }
    }

    let coupling = [B_J, B_K].iter().all(|&f| {
        let e = table.entry(B_I, f);
        e.basis == B_J || e.basis == B_K
    });

    let phi_complex = phi_closed && has_complex_structure(table, B_J, B_K);

    let mut assoc = true;
    let mut failing_assoc_triple = None;
    'outer: for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let ab = table.entry(a, b);
                let left = {
                    let r = table.entry(ab.basis, c);
                    SignedBasis::new(ab.sign * r.sign, r.basis)
                };
                let bc = table.entry(b, c);
                let right = {
                    let r = table.entry(a, bc.basis);
                    SignedBasis::new(bc.sign * r.sign, r.basis)
                };
                if left != right {
                    assoc = false;
                    failing_assoc_triple = Some((a, b, c));
                    break 'outer;
                }
            }
        }
    }

    PredicateReport {
        psi,
        phi_closed,
        coupling,
        phi_complex,
        assoc,
        failing_assoc_triple,
        escaping_phi_product,
    }
}

/// Search configuration. The defaults reproduce the constrained space
/// the uniqueness claim is tested on.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub require_commutative: bool,
    pub require_i_squared_minus_one: bool,
    pub predicates: Vec<Predicate>,
    pub worker_count: usize,
    pub output_path: Option<PathBuf>,
    /// Optional sub-range of lexicographic indices; `None` means the
    /// whole space. An empty range yields zero candidates.
    pub index_range: Option<(u64, u64)>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            require_commutative: true,
            require_i_squared_minus_one: true,
            predicates: Predicate::ALL.to_vec(),
            worker_count: 1,
            output_path: None,
            index_range: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.predicates.is_empty() {
            return Err(CoreError::InvalidConfig("at least one predicate must be enabled".into()));
        }
        if self.worker_count < 1 {
            return Err(CoreError::InvalidConfig("worker_count must be >= 1".into()));
        }
        Ok(())
    }

    /// Enabled predicates in the fixed pruning order.
    fn ordered_predicates(&self) -> Vec<Predicate> {
        Predicate::ALL.into_iter().filter(|p| self.predicates.contains(p)).collect()
    }

    /// Free cell positions (a, b) of the lower-right 3x3 block, in
    /// row-major (lexicographic) order.
    pub fn free_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for a in 1..4 {
            for b in 1..4 {
                if self.require_commutative && b < a {
                    continue; // mirrored from (b, a)
                }
                if self.require_i_squared_minus_one && a == B_I && b == B_I {
                    continue; // fixed to -1
                }
                cells.push((a, b));
            }
        }
        cells
    }

    pub fn constraint_level(&self) -> String {
        match (self.require_commutative, self.require_i_squared_minus_one) {
            (true, true) => "commutative, i^2 = -1".to_string(),
            (true, false) => "commutative".to_string(),
            (false, true) => "unital, i^2 = -1".to_string(),
            (false, false) => "unital".to_string(),
        }
    }
}

/// Closed-form size of the candidate space: 8^(free cells).
pub fn total_candidates(cfg: &SearchConfig) -> u64 {
    8u64.pow(cfg.free_cells().len() as u32)
}

/// Decodes the table at a lexicographic index. The first free cell is
/// the most significant base-8 digit.
pub fn table_at(cfg: &SearchConfig, index: u64) -> MultiplicationTable {
    let cells = cfg.free_cells();
    let mut entries = [[SignedBasis::pos(0); 4]; 4];
    for b in 0..4 {
        entries[0][b] = SignedBasis::pos(b);
        entries[b][0] = SignedBasis::pos(b);
    }
    if cfg.require_i_squared_minus_one {
        entries[B_I][B_I] = SignedBasis::neg(B_ONE);
    }
    let mut rem = index;
    for pos in (0..cells.len()).rev() {
        let digit = (rem % 8) as u8;
        rem /= 8;
        let (a, b) = cells[pos];
        let e = SignedBasis::from_code(digit);
        entries[a][b] = e;
        if cfg.require_commutative {
            entries[b][a] = e;
        }
    }
    MultiplicationTable::from_entries(format!("candidate-{index}"), entries)
}

/// Iterator over every table consistent with the config, exactly once,
/// in deterministic lexicographic order.
pub fn enumerate_tables(cfg: &SearchConfig) -> impl Iterator<Item = MultiplicationTable> + '_ {
    let total = total_candidates(cfg);
    let (start, end) = clamp_range(cfg.index_range, total);
    (start..end).map(move |i| table_at(cfg, i))
}

fn clamp_range(range: Option<(u64, u64)>, total: u64) -> (u64, u64) {
    match range {
        Some((s, e)) => (s.min(total), e.min(total).max(s.min(total))),
        None => (0, total),
    }
}

/// One survivor of the filter, with its canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub table: [[String; 4]; 4],
    pub canonical: [[String; 4]; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub total_candidates: u64,
    pub constraint_level: String,
    pub predicates: Vec<String>,
    /// Candidates per first-failing predicate.
    pub failure_census: BTreeMap<String, u64>,
    pub survivor_count: u64,
    pub distinct_canonical_forms: u64,
    pub survivors: Vec<Survivor>,
    pub wall_time_seconds: f64,
}

/// Applies a basis change fixing 1 and the span structure: optionally
/// swap j <-> k, and negate i, j, k independently.
pub fn transform_table(
    table: &MultiplicationTable,
    swap_jk: bool,
    signs: [i8; 3],
) -> MultiplicationTable {
    let perm = |n: usize| -> usize {
        if swap_jk && n == B_J {
            B_K
        } else if swap_jk && n == B_K {
            B_J
        } else {
            n
        }
    };
    let sign = |n: usize| -> i8 {
        if n == 0 {
            1
        } else {
            signs[n - 1]
        }
    };
    // New basis f_a = s_a * e_{perm(a)}; then f_a f_b expands over the
    // old table and is rewritten in the f basis (perm is an involution).
    let mut entries = [[SignedBasis::pos(0); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let t = table.entry(perm(a), perm(b));
            let c = perm(t.basis);
            let s = sign(a) * sign(b) * t.sign * sign(c);
            entries[a][b] = SignedBasis::new(s, c);
        }
    }
    MultiplicationTable::from_entries(table.name.clone(), entries)
}

/// Lexicographic minimum over the 16-element symmetry group. Idempotent.
pub fn canonicalize(table: &MultiplicationTable) -> MultiplicationTable {
    let mut best: Option<MultiplicationTable> = None;
    for swap_jk in [false, true] {
        for si in [1i8, -1] {
            for sj in [1i8, -1] {
                for sk in [1i8, -1] {
                    let t = transform_table(table, swap_jk, [si, sj, sk]);
                    let better = match &best {
                        None => true,
                        Some(b) => t.encoding() < b.encoding(),
                    };
                    if better {
                        best = Some(t);
                    }
                }
            }
        }
    }
    let mut t = best.expect("symmetry group is nonempty");
    t.name = format!("canonical({})", table.name);
    t
}

#[derive(Default)]
struct ChunkOutcome {
    census: BTreeMap<&'static str, u64>,
    survivors: Vec<MultiplicationTable>,
}

fn scan_range(cfg: &SearchConfig, preds: &[Predicate], start: u64, end: u64) -> ChunkOutcome {
    let mut out = ChunkOutcome::default();
    'candidates: for i in start..end {
        let table = table_at(cfg, i);
        for &p in preds {
            let pass = match p {
                Predicate::Psi => table.entry(B_I, B_I) == SignedBasis::neg(B_ONE),
                Predicate::PhiClosed => [B_J, B_K].iter().all(|&a| {
                    [B_J, B_K].iter().all(|&b| {
                        let e = table.entry(a, b);
                        e.basis == B_J || e.basis == B_K
                    })
                }),
                Predicate::Coupling => [B_J, B_K].iter().all(|&f| {
                    let e = table.entry(B_I, f);
                    e.basis == B_J || e.basis == B_K
                }),
                Predicate::PhiComplex => has_complex_structure(&table, B_J, B_K),
                Predicate::Assoc => predicate_suite(&table).assoc,
            };
            if !pass {
                *out.census.entry(p.name()).or_insert(0) += 1;
                continue 'candidates;
            }
        }
        out.survivors.push(table);
    }
    out
}

fn merge_outcomes(chunks: Vec<ChunkOutcome>) -> ChunkOutcome {
    let mut merged = ChunkOutcome::default();
    for chunk in chunks {
        for (name, count) in chunk.census {
            *merged.census.entry(name).or_insert(0) += count;
        }
        merged.survivors.extend(chunk.survivors);
    }
    merged
}

/// Enumerates, filters, canonicalizes and (optionally) writes the result
/// file. Deterministic for a fixed config regardless of worker count.
pub fn search(cfg: &SearchConfig) -> Result<SearchResult, CoreError> {
    cfg.validate()?;
    let started = Instant::now();
    let preds = cfg.ordered_predicates();
    let total = total_candidates(cfg);
    let (start, end) = clamp_range(cfg.index_range, total);

    let ranges = partition(start, end, cfg.worker_count);
    let merged = run_ranges(cfg, &preds, &ranges);

    let mut survivors: Vec<(MultiplicationTable, MultiplicationTable)> =
        merged.survivors.into_iter().map(|t| (canonicalize(&t), t)).collect();
    survivors.sort_by(|a, b| {
        (a.0.encoding(), a.1.encoding()).cmp(&(b.0.encoding(), b.1.encoding()))
    });
    let mut canon_forms: Vec<[u8; 16]> = survivors.iter().map(|(c, _)| c.encoding()).collect();
    canon_forms.dedup();

    let mut census = BTreeMap::new();
    for p in &preds {
        census.insert(p.name().to_string(), *merged.census.get(p.name()).unwrap_or(&0));
    }

    let result = SearchResult {
        total_candidates: end - start,
        constraint_level: cfg.constraint_level(),
        predicates: preds.iter().map(|p| p.name().to_string()).collect(),
        failure_census: census,
        survivor_count: survivors.len() as u64,
        distinct_canonical_forms: canon_forms.len() as u64,
        survivors: survivors
            .into_iter()
            .map(|(c, t)| Survivor { table: t.to_strings(), canonical: c.to_strings() })
            .collect(),
        wall_time_seconds: started.elapsed().as_secs_f64(),
    };

    if let Some(path) = &cfg.output_path {
        let file = File::create(path)?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, &result)?;
        w.write_all(b"\n")?;
        w.flush()?;
    }
    Ok(result)
}

fn partition(start: u64, end: u64, workers: usize) -> Vec<(u64, u64)> {
    let span = end - start;
    if span == 0 {
        return Vec::new();
    }
    // More chunks than workers for load balancing; chunk boundaries do
    // not depend on the worker count's scheduling.
    let chunks = (workers.max(1) * 8).min(span as usize).max(1) as u64;
    let step = span.div_ceil(chunks);
    (0..chunks)
        .map(|n| {
            let s = start + n * step;
            (s.min(end), (s + step).min(end))
        })
        .filter(|(s, e)| s < e)
        .collect()
}

#[cfg(feature = "parallel")]
fn run_ranges(cfg: &SearchConfig, preds: &[Predicate], ranges: &[(u64, u64)]) -> ChunkOutcome {
    use rayon::prelude::*;
    if cfg.worker_count == 1 {
        return merge_outcomes(ranges.iter().map(|&(s, e)| scan_range(cfg, preds, s, e)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .expect("thread pool");
    let chunks: Vec<ChunkOutcome> = pool.install(|| {
        ranges.par_iter().map(|&(s, e)| scan_range(cfg, preds, s, e)).collect()
    });
    merge_outcomes(chunks)
}

#[cfg(not(feature = "parallel"))]
fn run_ranges(cfg: &SearchConfig, preds: &[Predicate], ranges: &[(u64, u64)]) -> ChunkOutcome {
    merge_outcomes(ranges.iter().map(|&(s, e)| scan_range(cfg, preds, s, e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn free_cell_counts_per_constraint_level() {
        let mut cfg = SearchConfig::default();
        assert_eq!(cfg.free_cells().len(), 5);
        assert_eq!(total_candidates(&cfg), 32_768);
        cfg.require_i_squared_minus_one = false;
        assert_eq!(cfg.free_cells().len(), 6);
        assert_eq!(total_candidates(&cfg), 262_144);
        cfg.require_commutative = false;
        assert_eq!(cfg.free_cells().len(), 9);
        assert_eq!(total_candidates(&cfg), 134_217_728);
    }

    #[test]
    fn stream_length_matches_closed_form_constrained() {
        let cfg = SearchConfig::default();
        assert_eq!(enumerate_tables(&cfg).count() as u64, 32_768);
    }

    #[test]
    fn stream_length_matches_closed_form_commutative() {
        let cfg = SearchConfig {
            require_i_squared_minus_one: false,
            ..SearchConfig::default()
        };
        assert_eq!(enumerate_tables(&cfg).count() as u64, 262_144);
    }

    #[test]
    #[ignore = "full 8^9 sweep; run with --ignored"]
    fn stream_length_matches_closed_form_unital() {
        let cfg = SearchConfig {
            require_commutative: false,
            require_i_squared_minus_one: false,
            ..SearchConfig::default()
        };
        assert_eq!(enumerate_tables(&cfg).count() as u64, 134_217_728);
    }

    #[test]
    fn first_table_is_lexicographically_smallest() {
        let cfg = SearchConfig::default();
        let first = table_at(&cfg, 0);
        // All free cells take "1" (code 0); i*i is pinned to -1.
        for (a, b) in cfg.free_cells() {
            assert_eq!(first.entry(a, b), SignedBasis::pos(B_ONE));
        }
        assert_eq!(first.entry(B_I, B_I), SignedBasis::neg(B_ONE));
    }

    #[test]
    fn enumeration_yields_each_table_once() {
        let cfg = SearchConfig::default();
        let mut seen = std::collections::HashSet::new();
        for t in enumerate_tables(&cfg).take(4096) {
            assert!(seen.insert(t.encoding()));
        }
    }

    #[test]
    fn omega_passes_every_predicate() {
        let r = predicate_suite(&MultiplicationTable::omega());
        assert!(r.passes_all(&Predicate::ALL));
        assert_eq!(r.failing_assoc_triple, None);
        assert_eq!(r.escaping_phi_product, None);
    }

    #[test]
    fn quaternions_fail_phi_closure() {
        let r = predicate_suite(&MultiplicationTable::quaternion());
        assert!(r.psi && r.assoc);
        assert!(!r.phi_closed);
        // j*j = -1 escapes span(j, k).
        assert_eq!(r.escaping_phi_product, Some((B_J, B_J)));
    }

    #[test]
    fn i_squared_plus_one_fails_psi() {
        let t = MultiplicationTable::from_strs(
            "i2plus",
            [
                ["1", "i", "j", "k"],
                ["i", "1", "-k", "j"],
                ["j", "-k", "-k", "j"],
                ["k", "j", "j", "k"],
            ],
        )
        .unwrap();
        assert!(!predicate_suite(&t).psi);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for t in [MultiplicationTable::omega(), MultiplicationTable::quaternion()] {
            let once = canonicalize(&t);
            let twice = canonicalize(&once);
            assert_eq!(once.encoding(), twice.encoding());
        }
    }

    #[test]
    fn jk_relabeling_has_same_canonical_form() {
        let omega = MultiplicationTable::omega();
        let relabeled = transform_table(&omega, true, [1, 1, 1]);
        assert_eq!(canonicalize(&omega).encoding(), canonicalize(&relabeled).encoding());
    }

    #[test]
    fn omega_and_quaternion_canonical_forms_differ() {
        assert_ne!(
            canonicalize(&MultiplicationTable::omega()).encoding(),
            canonicalize(&MultiplicationTable::quaternion()).encoding()
        );
    }

    #[test]
    fn predicates_invariant_under_symmetry() {
        // Sampled tables: predicates are basis-change invariant within
        // the fixed span structure, witnesses aside.
        let cfg = SearchConfig::default();
        for i in (0..32_768u64).step_by(257) {
            let t = table_at(&cfg, i);
            let base = predicate_suite(&t).outcome_vector();
            for swap in [false, true] {
                for si in [1i8, -1] {
                    let g = transform_table(&t, swap, [si, -1, 1]);
                    assert_eq!(predicate_suite(&g).outcome_vector(), base, "index {i}");
                }
            }
        }
    }

    #[test]
    fn full_search_contains_canonical_omega() {
        let cfg = SearchConfig { worker_count: 2, ..SearchConfig::default() };
        let result = search(&cfg).unwrap();
        assert_eq!(result.total_candidates, 32_768);
        let canon_omega = canonicalize(&MultiplicationTable::omega()).to_strings();
        assert!(result.survivors.iter().any(|s| s.canonical == canon_omega));
        // Census between counts: failures plus survivors cover the space.
        let failures: u64 = result.failure_census.values().sum();
        assert_eq!(failures + result.survivor_count, result.total_candidates);
    }

    #[test]
    fn survivors_reverify_after_deserialization() {
        let cfg = SearchConfig::default();
        let result = search(&cfg).unwrap();
        let json = serde_json::to_string(&result).unwrap();
        let back: SearchResult = serde_json::from_str(&json).unwrap();
        for s in &back.survivors {
            let rows: [[&str; 4]; 4] =
                std::array::from_fn(|a| std::array::from_fn(|b| s.table[a][b].as_str()));
            let t = MultiplicationTable::from_strs("survivor", rows).unwrap();
            assert!(predicate_suite(&t).passes_all(&Predicate::ALL));
        }
    }

    #[test]
    fn filtering_is_monotone() {
        let full = search(&SearchConfig::default()).unwrap();
        let only_assoc = search(&SearchConfig {
            predicates: vec![Predicate::Assoc],
            ..SearchConfig::default()
        })
        .unwrap();
        assert!(only_assoc.survivor_count > full.survivor_count);
    }

    #[test]
    fn empty_range_yields_no_candidates() {
        let cfg = SearchConfig { index_range: Some((10, 10)), ..SearchConfig::default() };
        let result = search(&cfg).unwrap();
        assert_eq!(result.total_candidates, 0);
        assert!(result.survivors.is_empty());
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let base = SearchConfig::default();
        let mut results = Vec::new();
        for workers in [1usize, 3, 8] {
            let cfg = SearchConfig { worker_count: workers, ..base.clone() };
            let mut r = search(&cfg).unwrap();
            r.wall_time_seconds = 0.0;
            results.push(serde_json::to_string(&r).unwrap());
        }
        assert_eq!(results[0], results[1]);
        assert_eq!(results[0], results[2]);
    }

    #[test]
    fn rejects_empty_predicate_set() {
        let cfg = SearchConfig { predicates: vec![], ..SearchConfig::default() };
        assert!(search(&cfg).is_err());
    }

    #[test]
    fn omega_is_in_the_constrained_space() {
        // The Omega table itself appears in the enumeration and survives.
        let cfg = SearchConfig::default();
        let omega_enc = MultiplicationTable::omega().encoding();
        assert!(enumerate_tables(&cfg).any(|t| t.encoding() == omega_enc));
        let _ = Algebra::omega();
    }
}
