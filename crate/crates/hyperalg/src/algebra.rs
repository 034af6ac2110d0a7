//! Table-defined algebras: bilinear multiplication, inversion and
//! structural property analysis (exact rational arithmetic).

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::CoreError;
use crate::hnum::{HNum, HRat};
use crate::table::{MultiplicationTable, SignedBasis};

/// Integer coefficient vector over (1, i, j, k), used for witnesses.
pub type IntVec = [i64; 4];
/// Rational coefficient vector as (numerator, denominator) pairs.
pub type RatVec = [(i64, i64); 4];

/// A 2-dimensional closed subalgebra carrying a complex structure:
/// a unity element e (e*e = e, e*x = x*e = x on the span) and an
/// imaginary element u with u*u = -e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStructure {
    pub subset: Vec<usize>,
    pub unity: RatVec,
    pub imaginary: RatVec,
}

/// Structural report for one table, computed in exact rational arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub unital: bool,
    pub commutative: bool,
    pub associative: bool,
    /// First pair (x, y) of nonzero signed-basis/binomial elements with
    /// x*y = 0, under a fixed deterministic scan order.
    pub zero_divisor_witness: Option<(IntVec, IntVec)>,
    pub closed_subalgebras: Vec<Vec<usize>>,
    pub complex_structures: Vec<ComplexStructure>,
}

/// A named table plus a memoized property report.
#[derive(Debug)]
pub struct Algebra {
    table: MultiplicationTable,
    props: OnceLock<PropertyReport>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        let props = OnceLock::new();
        if let Some(p) = self.props.get() {
            let _ = props.set(p.clone());
        }
        Algebra { table: self.table.clone(), props }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Algebra {
    pub fn new(table: MultiplicationTable) -> Result<Self, CoreError> {
        table.check_unital()?;
        Ok(Algebra { table, props: OnceLock::new() })
    }

    /// The bicomplex algebra Omega. Self-checks unitality and
    /// commutativity of the stored table at construction.
    pub fn omega() -> Self {
        let alg = Algebra::new(MultiplicationTable::omega()).expect("omega is unital");
        assert!(alg.is_commutative_table(), "stored omega table must be commutative");
        alg
    }

    /// Hamilton's quaternions H.
    pub fn quaternion() -> Self {
        Algebra::new(MultiplicationTable::quaternion()).expect("quaternion is unital")
    }

    /// The complex numbers, embedded as the psi = span(1, i) subalgebra
    /// of the Omega table. Callers that want strict complex semantics
    /// should keep values supported on (1, i).
    pub fn complex() -> Self {
        let mut table = MultiplicationTable::omega();
        table.name = "complex".to_string();
        Algebra::new(table).expect("complex is unital")
    }

    /// Resolves a built-in algebra by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "omega" => Some(Self::omega()),
            "quaternion" => Some(Self::quaternion()),
            "complex" => Some(Self::complex()),
            _ => None,
        }
    }

    pub fn table(&self) -> &MultiplicationTable {
        &self.table
    }

    pub fn name(&self) -> &str {
        &self.table.name
    }

    /// Product of two basis elements: a pure table lookup.
    pub fn basis_mul(&self, a: usize, b: usize) -> SignedBasis {
        self.table.entry(a, b)
    }

    /// Bilinear extension of the table to full hypercomplex numbers.
    pub fn mul<S: Coeff>(&self, x: &HNum<S>, y: &HNum<S>) -> HNum<S> {
        let mut out = HNum::<S>::zero();
        for a in 0..4 {
            if x.c[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if y.c[b].is_zero() {
                    continue;
                }
                let e = self.table.entry(a, b);
                let term = x.c[a].clone() * y.c[b].clone();
                let term = if e.sign < 0 { -term } else { term };
                out.c[e.basis] = out.c[e.basis].clone() + term;
            }
        }
        out
    }

    /// The 4x4 matrix of left multiplication by x, column-major over the
    /// basis: column b holds the coefficients of x * e_b.
    pub fn left_mul_matrix<S: Coeff>(&self, x: &HNum<S>) -> [[S; 4]; 4] {
        let mut m: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
        for b in 0..4 {
            let col = self.mul(x, &HNum::<S>::basis(b));
            for r in 0..4 {
                m[r][b] = col.c[r].clone();
            }
        }
        m
    }

    /// Two-sided inverse, by solving the left-multiplication system
    /// x * y = 1. Fails on zero and on zero divisors, which Omega
    /// genuinely exhibits.
    pub fn invert<S: Coeff>(&self, x: &HNum<S>) -> Result<HNum<S>, CoreError> {
        let m = self.left_mul_matrix(x);
        let rows: Vec<Vec<S>> = (0..4).map(|r| m[r].to_vec()).collect();
        let mut rhs = vec![S::zero(); 4];
        rhs[0] = S::one();
        let y = solve_system(rows, rhs, 4).ok_or(CoreError::SingularElement)?;
        Ok(HNum::new([y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone()]))
    }

    fn is_commutative_table(&self) -> bool {
        (0..4).all(|a| (0..4).all(|b| self.table.entry(a, b) == self.table.entry(b, a)))
    }

    /// Memoized structural analysis. `OnceLock` gives compute-once
    /// semantics under concurrent use.
    pub fn properties(&self) -> &PropertyReport {
        self.props.get_or_init(|| check_properties(&self.table))
    }
}

/// Exact structural analysis of a table.
pub fn check_properties(table: &MultiplicationTable) -> PropertyReport {
    let unital = table.check_unital().is_ok();
    let commutative =
        (0..4).all(|a| (0..4).all(|b| table.entry(a, b) == table.entry(b, a)));
    let associative = (0..4).all(|a| {
        (0..4).all(|b| {
            (0..4).all(|c| {
                compose(table.entry(a, b), c, table) == compose_right(a, table.entry(b, c), table)
            })
        })
    });
    let zero_divisor_witness = find_zero_divisor(table);
    let closed_subalgebras = closed_subsets(table);
    let complex_structures = closed_subalgebras
        .iter()
        .filter(|s| s.len() == 2)
        .filter_map(|s| complex_structure(table, s[0], s[1]))
        .collect();
    PropertyReport {
        unital,
        commutative,
        associative,
        zero_divisor_witness,
        closed_subalgebras,
        complex_structures,
    }
}

// (e_a * e_b) * e_c with sign tracking.
fn compose(ab: SignedBasis, c: usize, table: &MultiplicationTable) -> SignedBasis {
    let r = table.entry(ab.basis, c);
    SignedBasis::new(ab.sign * r.sign, r.basis)
}

// e_a * (e_b * e_c) with sign tracking.
fn compose_right(a: usize, bc: SignedBasis, table: &MultiplicationTable) -> SignedBasis {
    let r = table.entry(a, bc.basis);
    SignedBasis::new(bc.sign * r.sign, r.basis)
}

fn mul_int(table: &MultiplicationTable, x: &IntVec, y: &IntVec) -> IntVec {
    let mut out = [0i64; 4];
    for a in 0..4 {
        if x[a] == 0 {
            continue;
        }
        for b in 0..4 {
            if y[b] == 0 {
                continue;
            }
            let e = table.entry(a, b);
            out[e.basis] += x[a] * y[b] * e.sign as i64;
        }
    }
    out
}

/// Bounded witness search over signed basis elements and two-term
/// binomials e +/- f. The candidate orders are fixed so the returned
/// witness is deterministic.
fn find_zero_divisor(table: &MultiplicationTable) -> Option<(IntVec, IntVec)> {
    let mut binomials: Vec<IntVec> = Vec::new();
    for p in 0..4 {
        for q in (p + 1)..4 {
            for sign in [1i64, -1] {
                let mut v = [0i64; 4];
                v[p] = 1;
                v[q] = sign;
                binomials.push(v);
            }
        }
    }
    let basis: Vec<IntVec> = (0..4)
        .map(|n| {
            let mut v = [0i64; 4];
            v[n] = 1;
            v
        })
        .collect();

    let xs: Vec<IntVec> = binomials.iter().chain(basis.iter()).copied().collect();
    // y scans basis elements k, j, i, 1 first, then the binomials.
    let ys: Vec<IntVec> = basis.iter().rev().chain(binomials.iter()).copied().collect();

    for x in &xs {
        for y in &ys {
            if mul_int(table, x, y) == [0, 0, 0, 0] {
                return Some((*x, *y));
            }
        }
    }
    None
}

fn closed_subsets(table: &MultiplicationTable) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for p in 0..4 {
        for q in (p + 1)..4 {
            subsets.push(vec![p, q]);
        }
    }
    subsets.push(vec![0, 1, 2, 3]);
    subsets
        .into_iter()
        .filter(|s| {
            s.iter().all(|&a| s.iter().all(|&b| s.contains(&table.entry(a, b).basis)))
        })
        .collect()
}

/// Finds the unity e of the closed span of basis elements p and q and
/// the discriminant d of the span's quadratic structure: for v in the
/// span independent of e, w = v - (p/2) e satisfies w*w = d*e. The span
/// carries a complex structure (some u with u*u = -e) iff d < 0.
fn span2_unity_and_discriminant(
    table: &MultiplicationTable,
    p: usize,
    q: usize,
) -> Option<(HRat, HRat, BigRational, BigRational)> {
    let e = subalgebra_unity(table, p, q)?;

    // Pick v in the span, independent of e.
    let v: HRat = if e.c[q].is_zero() { HRat::basis(q) } else { HRat::basis(p) };

    // Express v*v = pc*v + qc*e (valid: {e, v} spans the subalgebra).
    let alg = Algebra { table: table.clone(), props: OnceLock::new() };
    let vv = alg.mul(&v, &v);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for m in 0..4 {
        rows.push(vec![v.c[m].clone(), e.c[m].clone()]);
        rhs.push(vv.c[m].clone());
    }
    let sol = solve_system(rows, rhs, 2)?;
    let (pc, qc) = (sol[0].clone(), sol[1].clone());
    let four = BigRational::from_i64(4);
    let d = qc.clone() + pc.clone() * pc.clone() / four;
    Some((e, v, pc, d))
}

/// Existence test for a complex structure in span(e_p, e_q). The span
/// must already be closed under multiplication.
pub fn has_complex_structure(table: &MultiplicationTable, p: usize, q: usize) -> bool {
    match span2_unity_and_discriminant(table, p, q) {
        Some((_, _, _, d)) => d < BigRational::zero(),
        None => false,
    }
}

/// Looks for a complex structure in the closed 2-dim span of basis
/// elements p and q: a unity e and an element u with u*u = -e. Returns
/// the structure when its coordinates are exactly rational.
fn complex_structure(table: &MultiplicationTable, p: usize, q: usize) -> Option<ComplexStructure> {
    let (e, v, pc, d) = span2_unity_and_discriminant(table, p, q)?;
    if d >= BigRational::zero() {
        return None;
    }
    let two = BigRational::from_i64(2);
    let nd = -d;
    let sq_num = nd.numer().sqrt();
    let sq_den = nd.denom().sqrt();
    if &(sq_num.clone() * sq_num.clone()) != nd.numer()
        || &(sq_den.clone() * sq_den.clone()) != nd.denom()
    {
        return None;
    }
    let root = BigRational::new(sq_num, sq_den);
    let w = v - e.scale(&(pc / two));
    let u = w.scale(&(BigRational::from_i64(1) / root));

    Some(ComplexStructure {
        subset: vec![p, q],
        unity: to_rat_vec(&e)?,
        imaginary: to_rat_vec(&u)?,
    })
}

/// Solves for the unity of the closed span of basis elements p and q:
/// e with e*f = f*e = f for f in {e_p, e_q}.
fn subalgebra_unity(table: &MultiplicationTable, p: usize, q: usize) -> Option<HRat> {
    let alg = Algebra { table: table.clone(), props: OnceLock::new() };
    let fp: HRat = HRat::basis(p);
    let fq: HRat = HRat::basis(q);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for f in [&fp, &fq] {
        for m in 0..4 {
            // x*(e_p * f) + y*(e_q * f) = f
            rows.push(vec![alg.mul(&fp, f).c[m].clone(), alg.mul(&fq, f).c[m].clone()]);
            rhs.push(f.c[m].clone());
            // x*(f * e_p) + y*(f * e_q) = f
            rows.push(vec![alg.mul(f, &fp).c[m].clone(), alg.mul(f, &fq).c[m].clone()]);
            rhs.push(f.c[m].clone());
        }
    }
    let sol = solve_system(rows, rhs, 2)?;
    Some(fp.scale(&sol[0]) + fq.scale(&sol[1]))
}

fn to_rat_vec(x: &HRat) -> Option<RatVec> {
    let mut out = [(0i64, 1i64); 4];
    for n in 0..4 {
        out[n] = (x.c[n].numer().to_i64()?, x.c[n].denom().to_i64()?);
    }
    Some(out)
}

/// Reconstructs an exact number from a serialized rational vector.
pub fn rat_vec_to_hnum(v: &RatVec) -> HRat {
    HNum::new(std::array::from_fn(|n| {
        BigRational::new(v[n].0.into(), v[n].1.into())
    }))
}

/// Gaussian elimination with partial pivoting over a generic coefficient
/// type. Handles overdetermined systems: returns None when the system is
/// singular (no usable pivot for some unknown) or inconsistent.
pub(crate) fn solve_system<S: Coeff>(
    mut rows: Vec<Vec<S>>,
    mut rhs: Vec<S>,
    unknowns: usize,
) -> Option<Vec<S>> {
    let n_rows = rows.len();
    assert_eq!(rhs.len(), n_rows);
    let mut pivot_row = 0usize;
    let mut pivots: Vec<usize> = Vec::with_capacity(unknowns);
    for col in 0..unknowns {
        let best = (pivot_row..n_rows)
            .filter(|&r| rows[r][col].pivot_ok())
            .max_by(|&a, &b| {
                rows[a][col].abs_f64().partial_cmp(&rows[b][col].abs_f64()).unwrap()
            })?;
        rows.swap(pivot_row, best);
        rhs.swap(pivot_row, best);
        for r in 0..n_rows {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / rows[pivot_row][col].clone();
            for c in col..unknowns {
                rows[r][c] = rows[r][c].clone() - factor.clone() * rows[pivot_row][c].clone();
            }
            rhs[r] = rhs[r].clone() - factor * rhs[pivot_row].clone();
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // Consistency: remaining rows must have (numerically) zero residual.
    for r in pivot_row..n_rows {
        if rhs[r].pivot_ok() {
            return None;
        }
    }
    let mut sol = vec![S::zero(); unknowns];
    for (col, &r) in pivots.iter().enumerate() {
        sol[col] = rhs[r].clone() / rows[r][col].clone();
    }
    Some(sol)
}
