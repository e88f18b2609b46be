//! Brute-force ground truth over prime fields.
//!
//! Finite models of the local rings and their modules are given as explicit
//! action matrices ([`FqModulePresentation`]); submodules are enumerated
//! exhaustively. No formula from the rest of the crate is used to produce a
//! count here.
//!
//! Truncation is justified by Nakayama: if `L ⊆ E` has colength `n` then the
//! chain `Q ⊋ 𝔪Q ⊋ 𝔪^2 Q ⊋ ...` in `Q = E/L` drops by at least one each step
//! until it reaches 0, so `𝔪^n Q = 0` and `L ⊇ 𝔪^n E`. Hence submodules of
//! colength `n <= N` in `E` are exactly those of `E/𝔪^N E`.

mod enumerate;
mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use enumerate::Enumerator;
pub use enumerate::Schedule;
use linalg::{Field, Matrix, Subspace};

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly2;
use crate::partitions::Partition;
use crate::quotzeta::{full_z, normalization_zeta, nz, Kind, Module, SingularityFamily};
use crate::report::VerificationReport;

/// Default cap on candidate subspaces examined by one enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A finite module over a commutative local `F_p`-algebra, given by the
/// action matrices of the algebra generators on an `F_p`-basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqModulePresentation {
    pub p: u32,
    pub dim: usize,
    /// One `dim x dim` matrix per generator; entry `[i][j]` is the `i`-th
    /// coordinate of the image of basis vector `j`.
    pub generators: Vec<Vec<Vec<u8>>>,
    pub labels: Vec<String>,
}

impl FqModulePresentation {
    /// Validates the matrix shapes and the field, then checks that the
    /// generators commute and are nilpotent.
    pub fn new(p: u32, dim: usize, generators: Vec<Matrix>, labels: Vec<String>) -> Result<Self> {
        if !linalg::is_prime(p) || p >= 256 {
            return Err(Error::Domain(format!("{p} is not a supported prime")));
        }
        if generators.len() != labels.len() {
            return Err(Error::Domain("one label per generator".into()));
        }
        for g in &generators {
            if g.len() != dim || g.iter().any(|r| r.len() != dim || r.iter().any(|&x| x as u32 >= p)) {
                return Err(Error::Domain(format!(
                    "generator is not a {dim}x{dim} matrix over F_{p}"
                )));
            }
        }
        let out = Self {
            p,
            dim,
            generators,
            labels,
        };
        let f = out.field();
        for (i, a) in out.generators.iter().enumerate() {
            for b in &out.generators[i + 1..] {
                if f.mat_mul(a, b) != f.mat_mul(b, a) {
                    return Err(Error::InternalInvariant("generators do not commute".into()));
                }
            }
            let mut power = a.clone();
            for _ in 1..dim.max(1) {
                power = f.mat_mul(&power, a);
            }
            if dim > 0 && power.iter().flatten().any(|&x| x != 0) {
                return Err(Error::InternalInvariant(format!("generator {i} is not nilpotent")));
            }
        }
        Ok(out)
    }

    fn field(&self) -> Field {
        Field::new(self.p)
    }

    /// `M^⊕d`, with block-diagonal generators.
    pub fn direct_sum(&self, d: usize) -> FqModulePresentation {
        let n = self.dim * d;
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let mut big = vec![vec![0u8; n]; n];
                for b in 0..d {
                    for i in 0..self.dim {
                        for j in 0..self.dim {
                            big[b * self.dim + i][b * self.dim + j] = g[i][j];
                        }
                    }
                }
                big
            })
            .collect();
        FqModulePresentation {
            p: self.p,
            dim: n,
            generators,
            labels: self.labels.clone(),
        }
    }

    /// The same module with its generators listed in another order.
    pub fn permuted(&self, order: &[usize]) -> FqModulePresentation {
        FqModulePresentation {
            p: self.p,
            dim: self.dim,
            generators: order.iter().map(|&i| self.generators[i].clone()).collect(),
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// The dual module, on which each generator acts by its transpose.
    fn dual_generators(&self) -> Vec<Matrix> {
        self.generators.iter().map(Field::transpose).collect()
    }
}

/// Counts of submodules by colength `n` and by the rank `r` of the quotient
/// (the minimal number of generators of the quotient).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubmoduleCensus {
    pub counts: BTreeMap<(usize, usize), BigInt>,
    pub max_codim: usize,
    pub visited: u64,
}

impl SubmoduleCensus {
    /// Number of submodules of colength `n`.
    pub fn total(&self, n: usize) -> BigInt {
        self.counts
            .range((n, 0)..=(n, usize::MAX))
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn totals(&self) -> Vec<BigInt> {
        (0..=self.max_codim).map(|n| self.total(n)).collect()
    }

    pub fn count(&self, n: usize, r: usize) -> BigInt {
        self.counts.get(&(n, r)).cloned().unwrap_or_default()
    }

    /// JSON map `{"(n,r)": "count"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .counts
            .iter()
            .map(|((n, r), c)| (format!("({n},{r})"), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for SubmoduleCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((n, r), c) in &self.counts {
            writeln!(f, "codim {n} rank {r}: {c}")?;
        }
        Ok(())
    }
}

/// Which module of the singularity to model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelTarget {
    /// `(R/𝔪^N)^d`.
    Free,
    /// `(R̃/𝔪^N R̃)^d`.
    Normalization,
    /// `𝔪 (R/𝔪^(N+1))^d`, which models `𝔪R^d` for colength at most `N`.
    MaximalIdeal,
}

impl From<Module> for ModelTarget {
    fn from(m: Module) -> Self {
        match m {
            Module::Free => ModelTarget::Free,
            Module::Normalization => ModelTarget::Normalization,
        }
    }
}

/// `R/𝔪^N` on the normal-form basis `x^i` (`i < N`) and `x^i y` (`i + 1 < N`),
/// with `y^2` rewritten as `x^(2m+1)` (cusp) or `x^m y` (node). Rewriting
/// never lowers the `𝔪`-adic order, so `𝔪^N` is spanned by the basis
/// monomials of order at least `N`.
fn ring_quotient(family: SingularityFamily, n: usize) -> (Vec<(usize, bool)>, Matrix, Matrix) {
    let mut basis: Vec<(usize, bool)> = (0..n).map(|i| (i, false)).collect();
    basis.extend((0..n.saturating_sub(1)).map(|i| (i, true)));
    let index = |mono: (usize, bool)| basis.iter().position(|&b| b == mono);
    let dim = basis.len();
    let mut x = vec![vec![0u8; dim]; dim];
    let mut y = vec![vec![0u8; dim]; dim];
    let m = family.m;
    for (j, &(i, has_y)) in basis.iter().enumerate() {
        if let Some(k) = index((i + 1, has_y)) {
            x[k][j] = 1;
        }
        let y_image = match (has_y, family.kind) {
            (false, _) => (i, true),
            (true, Kind::Cusp) => (i + 2 * m + 1, false),
            (true, Kind::Node) => (i + m, true),
        };
        if let Some(k) = index(y_image) {
            y[k][j] = 1;
        }
    }
    (basis, x, y)
}

/// `R̃/𝔪^N R̃` with the actions of `x` and `y`. For the cusp `R̃ = k[[T]]`,
/// `x = T^2`, `y = T^(2m+1)` and `𝔪R̃ = T^2 R̃`; for the node
/// `R̃ = k[[T1]] × k[[T2]]`, `x = (T1, T2)`, `y = (0, T2^m)` and
/// `𝔪R̃ = (T1, T2)`.
fn normalization_quotient(family: SingularityFamily, n: usize) -> (Matrix, Matrix) {
    let m = family.m;
    match family.kind {
        Kind::Cusp => {
            let dim = 2 * n;
            let mut x = vec![vec![0u8; dim]; dim];
            let mut y = vec![vec![0u8; dim]; dim];
            for j in 0..dim {
                if j + 2 < dim {
                    x[j + 2][j] = 1;
                }
                if j + 2 * m + 1 < dim {
                    y[j + 2 * m + 1][j] = 1;
                }
            }
            (x, y)
        }
        Kind::Node => {
            // T1^i at index i, T2^i at index n + i
            let dim = 2 * n;
            let mut x = vec![vec![0u8; dim]; dim];
            let mut y = vec![vec![0u8; dim]; dim];
            for i in 0..n {
                if i + 1 < n {
                    x[i + 1][i] = 1;
                    x[n + i + 1][n + i] = 1;
                }
                if i + m < n {
                    y[n + i + m][n + i] = 1;
                }
            }
            (x, y)
        }
    }
}

fn restrict(g: &Matrix, keep: &[usize]) -> Matrix {
    keep.iter().map(|&i| keep.iter().map(|&j| g[i][j]).collect()).collect()
}

/// A finite model of the rank-`d` module `target` over the family's ring,
/// faithful for colength at most `n`.
///
/// ```
/// use quotzeta::oracle::{build_local_model, ModelTarget};
/// use quotzeta::quotzeta::SingularityFamily;
/// let m = build_local_model(SingularityFamily::node(1), 1, 2, 2, ModelTarget::Free).unwrap();
/// assert_eq!(m.dim, 3);
/// ```
pub fn build_local_model(
    family: SingularityFamily,
    d: usize,
    n: usize,
    p: u32,
    target: ModelTarget,
) -> Result<FqModulePresentation> {
    if n == 0 {
        return Err(Error::Domain("truncation order N must be at least 1".into()));
    }
    let (x, y) = match target {
        ModelTarget::Free => {
            let (_, x, y) = ring_quotient(family, n);
            (x, y)
        }
        ModelTarget::Normalization => normalization_quotient(family, n),
        ModelTarget::MaximalIdeal => {
            let (basis, x, y) = ring_quotient(family, n + 1);
            let keep: Vec<usize> = (0..basis.len()).filter(|&k| basis[k] != (0, false)).collect();
            (restrict(&x, &keep), restrict(&y, &keep))
        }
    };
    let dim = x.len();
    let one = FqModulePresentation::new(p, dim, vec![x, y], vec!["x".into(), "y".into()])?;
    let out = one.direct_sum(d);
    FqModulePresentation::new(out.p, out.dim, out.generators, out.labels)
}

/// `(F_p[T]/T^n)^d` with the single generator `T`.
pub fn truncated_dvr_model(d: usize, n: usize, p: u32) -> Result<FqModulePresentation> {
    let mut t = vec![vec![0u8; n]; n];
    for i in 0..n.saturating_sub(1) {
        t[i + 1][i] = 1;
    }
    let one = FqModulePresentation::new(p, n, vec![t], vec!["T".into()])?;
    Ok(one.direct_sum(d))
}

/// `⊕_i F_p[T]/T^{λ_i}` with the single generator `T`.
pub fn dvr_module_of_type(lambda: &Partition, p: u32) -> Result<FqModulePresentation> {
    let n = lambda.size();
    let mut t = vec![vec![0u8; n]; n];
    let mut offset = 0;
    for &part in lambda.parts() {
        for i in 0..part - 1 {
            t[offset + i + 1][offset + i] = 1;
        }
        offset += part;
    }
    FqModulePresentation::new(p, n, vec![t], vec!["T".into()])
}

/// Counts submodules of colength at most `max_codim`, graded by colength
/// and quotient rank, using the given traversal.
///
/// Works on the dual: `L ↦ L^⊥` is a bijection from submodules of colength
/// `n` to subspaces of dimension `n` invariant under the transposed
/// generators, and `rank(M/L) = dim(L^⊥ ∩ ⋂ ker g^T)`.
pub fn enumerate_submodules_with(
    module: &FqModulePresentation,
    max_codim: usize,
    budget: u64,
    schedule: Schedule,
) -> Result<SubmoduleCensus> {
    let f = module.field();
    let dual = module.dual_generators();
    let mut counts: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    let visited = Enumerator::new(f, module.dim, &dual, max_codim, budget).run(schedule, &mut |k| {
        let rank = socle_dim(f, k, &dual);
        *counts.entry((k.dim(), rank)).or_default() += 1;
    })?;
    Ok(SubmoduleCensus {
        counts,
        max_codim: max_codim.min(module.dim),
        visited,
    })
}

/// [`enumerate_submodules_with`] breadth first.
pub fn enumerate_submodules(module: &FqModulePresentation, max_codim: usize, budget: u64) -> Result<SubmoduleCensus> {
    enumerate_submodules_with(module, max_codim, budget, Schedule::BreadthFirst)
}

/// `dim(K ∩ ⋂ ker g)`.
fn socle_dim(f: Field, k: &Subspace, gens: &[Matrix]) -> usize {
    if k.dim() == 0 {
        return 0;
    }
    // coordinates a with g(Σ a_i k_i) = 0 for all g
    let mut rows: Matrix = Vec::new();
    for g in gens {
        let images: Matrix = k.rows.iter().map(|v| f.mat_vec(g, v)).collect();
        // images is dim(K) x n; the condition is images^T a = 0
        rows.extend(Field::transpose(&images));
    }
    f.nullspace(&rows, k.dim()).len()
}

/// Point counts `#Quot_{E,n}(F_p)` for `n = 0..=N`, where `E` is `R^d` or
/// `R̃^d` for the given family.
pub fn quot_coeffs_oracle_module(
    family: SingularityFamily,
    d: usize,
    p: u32,
    n: usize,
    module: Module,
    budget: u64,
) -> Result<Vec<BigInt>> {
    let model = build_local_model(family, d, n, p, module.into())?;
    Ok(enumerate_submodules(&model, n, budget)?.totals())
}

/// The `t^0..t^N` coefficients of `Z_{R^d}(t)` at `q = p`, by enumeration.
pub fn quot_coeffs_oracle(family: SingularityFamily, d: usize, p: u32, n: usize, budget: u64) -> Result<Vec<BigInt>> {
    quot_coeffs_oracle_module(family, d, p, n, Module::Free, budget)
}

/// Census of all submodules of `⊕ F_p[T]/T^{λ_i}` by (type, cotype).
pub fn hall_census(lambda: &Partition, p: u32, budget: u64) -> Result<BTreeMap<(Partition, Partition), u64>> {
    let module = dvr_module_of_type(lambda, p)?;
    let f = module.field();
    let t = &module.generators[0];
    let n = module.dim;
    let whole: Vec<Matrix> = (0..=lambda.part(0))
        .map(|i| {
            let mut power: Matrix = (0..n).map(|r| (0..n).map(|c| u8::from(r == c)).collect()).collect();
            for _ in 0..i {
                power = f.mat_mul(t, &power);
            }
            Field::transpose(&power)
        })
        .collect();
    let mut out: BTreeMap<(Partition, Partition), u64> = BTreeMap::new();
    let gens = vec![t.clone()];
    Enumerator::new(f, n, &gens, n, budget).run(Schedule::BreadthFirst, &mut |l| {
        // ranks of T^i on L, and of T^i on M/L
        let mut sub_ranks = Vec::new();
        let mut quo_ranks = Vec::new();
        let mut images = l.rows.clone();
        for powers_t in &whole {
            sub_ranks.push(f.rank(images.clone()));
            let mut rows = powers_t.clone();
            rows.extend(l.rows.iter().cloned());
            quo_ranks.push(f.rank(rows) - l.dim());
            images = images.iter().map(|v| f.mat_vec(t, v)).collect();
        }
        let ty = partition_from_ranks(&sub_ranks);
        let coty = partition_from_ranks(&quo_ranks);
        *out.entry((ty, coty)).or_default() += 1;
    })?;
    Ok(out)
}

/// The partition whose conjugate has parts `r_{i-1} - r_i`, from the ranks
/// `r_i = dim T^i N`.
fn partition_from_ranks(ranks: &[usize]) -> Partition {
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&c| c > 0).collect();
    Partition::new(conj).expect("ranks decrease concavely").conjugate()
}

/// `#{(A, B) ∈ Mat_n(F_p)^2 : AB = BA, A^2 = B^3}` by exhaustive search.
///
/// The budget caps the number of matrices enumerated, `p^(n^2)`.
pub fn matrix_pair_count(n: usize, p: u32, budget: u64) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    let f = Field::new(p);
    let cells = (n * n) as u32;
    let total = (p as u64)
        .checked_pow(cells)
        .filter(|&t| t <= budget)
        .ok_or(Error::Budget {
            visited: 0,
            cap: budget,
            progress: format!("Mat_{n}(F_{p}) has {p}^{cells} elements"),
        })?;
    let to_matrix = |mut code: u64| -> Matrix {
        let mut m = vec![vec![0u8; n]; n];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = (code % p as u64) as u8;
                code /= p as u64;
            }
        }
        m
    };
    let all: Vec<Matrix> = (0..total).map(to_matrix).collect();
    let mut by_cube: HashMap<Matrix, Vec<usize>> = HashMap::new();
    for (i, b) in all.iter().enumerate() {
        let cube = f.mat_mul(&f.mat_mul(b, b), b);
        by_cube.entry(cube).or_default().push(i);
    }
    let mut count = 0u64;
    for a in &all {
        let square = f.mat_mul(a, a);
        if let Some(bs) = by_cube.get(&square) {
            count += bs
                .iter()
                .filter(|&&j| f.mat_mul(a, &all[j]) == f.mat_mul(&all[j], a))
                .count() as u64;
        }
    }
    Ok(count.into())
}

/// `p^{-dn} (p^-1;p^-1)_{d-r} / (p^-1;p^-1)_d · count`.
pub fn coh_normalized(p: u32, d: usize, n: usize, r: usize, count: &BigInt) -> BigRational {
    let pinv = BigRational::new(BigInt::one(), BigInt::from(p));
    let poch = |k: usize| -> BigRational {
        let mut acc = BigRational::one();
        let mut power = pinv.clone();
        for _ in 0..k {
            acc *= BigRational::one() - &power;
            power *= &pinv;
        }
        acc
    };
    let scale = num_traits::pow(pinv.clone(), d * n);
    scale * poch(d - r) / poch(d) * BigRational::from_integer(count.clone())
}

/// Checks that `p^{-dn} (p^-1;p^-1)_{d-r}/(p^-1;p^-1)_d · #Quot^r_{d,n}(F_p)`
/// does not depend on `d`.
pub fn coh_quot_invariance_check(
    family: SingularityFamily,
    p: u32,
    n: usize,
    r: usize,
    d_list: &[usize],
    budget: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut values = Vec::new();
    for &d in d_list {
        if r > d.min(n) {
            return Err(Error::Domain(format!("rank {r} exceeds min(d, n) = {}", d.min(n))));
        }
        let model = build_local_model(family, d, n.max(1), p, ModelTarget::Free)?;
        let census = enumerate_submodules(&model, n, budget)?;
        values.push(coh_normalized(p, d, n, r, &census.count(n, r)));
    }
    let first = values.first().cloned().unwrap_or_else(BigRational::zero);
    let expected = vec![first; values.len()];
    Ok(VerificationReport::new("coh-quot")
        .param("family", family.kind)
        .param("m", family.m)
        .param("p", p)
        .param("n", n)
        .param("r", r)
        .param("d", format!("{d_list:?}"))
        .compare_lists(&values, &expected)
        .timed(start))
}

/// Oracle counts against the `t^0..t^N` coefficients of `Z_E(t)` at `q = p`.
pub fn quot_vs_formula_check(
    family: SingularityFamily,
    d: usize,
    p: u32,
    n: usize,
    module: Module,
    budget: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let oracle = quot_coeffs_oracle_module(family, d, p, n, module, budget)?;
    let formula = full_z(&nz(family, d, module), family, d, n + 1).coeffs_at(p as i64);
    Ok(VerificationReport::new("oracle-quot")
        .param("family", family.kind)
        .param("m", family.m)
        .param("d", d)
        .param("p", p)
        .param("N", n)
        .param("module", module)
        .compare_lists(&oracle, &formula)
        .timed(start))
}

/// Submodule counts of `(F_p[T]/T^N)^d` against `1/(t;q)_d` at `q = p`.
pub fn solomon_check(d: usize, p: u32, n: usize, budget: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let census = enumerate_submodules(&truncated_dvr_model(d, n, p)?, n, budget)?;
    let formula = normalization_zeta(d, 1, n + 1).coeffs_at(p as i64);
    Ok(VerificationReport::new("solomon")
        .param("d", d)
        .param("p", p)
        .param("N", n)
        .compare_lists(&census.totals(), &formula)
        .timed(start))
}

/// Runs the census under both schedules and with the generators reversed,
/// and checks all three agree.
pub fn determinism_check(module: &FqModulePresentation, max_codim: usize, budget: u64) -> Result<VerificationReport> {
    let bfs = enumerate_submodules_with(module, max_codim, budget, Schedule::BreadthFirst)?;
    let dfs = enumerate_submodules_with(module, max_codim, budget, Schedule::DepthFirst)?;
    let order: Vec<usize> = (0..module.generators.len()).rev().collect();
    let rev = enumerate_submodules_with(&module.permuted(&order), max_codim, budget, Schedule::BreadthFirst)?;
    let flat = |c: &SubmoduleCensus| -> Vec<String> { c.counts.iter().map(|(k, v)| format!("{k:?}={v}")).collect() };
    Ok(VerificationReport::new("determinism")
        .compare_lists(&flat(&bfs), &flat(&dfs))
        .compare_lists(&flat(&bfs), &flat(&rev)))
}

/// Hall polynomials at `q = p` against submodule counts, for every
/// `(λ, μ, ν)` with `|λ| <= max_size`.
pub fn hall_oracle_check(max_size: usize, p: u32, budget: u64) -> Result<VerificationReport> {
    use crate::hall::hall_general;
    use crate::partitions::partitions_of;
    let start = Instant::now();
    let mut parts = Vec::new();
    for size in 0..=max_size {
        for lambda in partitions_of(size) {
            let census = hall_census(&lambda, p, budget)?;
            let mut oracle = Vec::new();
            let mut formula = Vec::new();
            for k in 0..=size {
                for mu in partitions_of(k) {
                    for nu in partitions_of(size - k) {
                        let count = census.get(&(mu.clone(), nu.clone())).copied().unwrap_or(0);
                        oracle.push(BigInt::from(count));
                        formula.push(hall_general(&lambda, &mu, &nu).eval_at(p as i64, 1)?);
                    }
                }
            }
            parts.push(
                VerificationReport::new("hall-count")
                    .param("lambda", &lambda)
                    .compare_lists(&oracle, &formula),
            );
        }
    }
    Ok(VerificationReport::new("hall-oracle")
        .param("max_size", max_size)
        .param("p", p)
        .absorb(parts)
        .timed(start))
}

/// Evaluates a pure-`q` polynomial at `q = p`.
pub fn eval_q(poly: &LaurentPoly2, p: u32) -> Result<BigInt> {
    poly.eval_at(p as i64, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn model_shapes() {
        let node = SingularityFamily::node(1);
        assert_eq!(build_local_model(node, 1, 2, 2, ModelTarget::Free).unwrap().dim, 3);
        let cusp = build_local_model(SingularityFamily::cusp(1), 1, 1, 3, ModelTarget::Free).unwrap();
        assert_eq!(cusp.dim, 1);
        assert!(cusp.generators.iter().flatten().flatten().all(|&x| x == 0));
        assert_eq!(
            build_local_model(node, 2, 3, 2, ModelTarget::Normalization)
                .unwrap()
                .dim,
            12
        );
        assert_eq!(
            build_local_model(node, 1, 3, 2, ModelTarget::MaximalIdeal).unwrap().dim,
            6
        );
        assert!(build_local_model(node, 1, 0, 2, ModelTarget::Free).is_err());
    }

    #[test]
    fn presentation_validation() {
        let nonnil = vec![vec![vec![1u8]]];
        assert!(FqModulePresentation::new(2, 1, nonnil, vec!["a".into()]).is_err());
        let a = vec![vec![0, 0], vec![1, 0]];
        let b = vec![vec![0, 1], vec![0, 0]];
        assert!(FqModulePresentation::new(2, 2, vec![a, b], vec!["a".into(), "b".into()]).is_err());
        assert!(FqModulePresentation::new(4, 0, vec![], vec![]).is_err());
    }

    #[test]
    fn small_quot_counts() {
        // (1 - t + 2 t^2) / (1 - t)^2 = 1 + t + 3 t^2 + 5 t^3
        let node = quot_coeffs_oracle(SingularityFamily::node(1), 1, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(node, big(&[1, 1, 3, 5]));
        // (1 + 2 t^2) / (1 - t) = 1 + t + 3 t^2 + 3 t^3
        let cusp = quot_coeffs_oracle(SingularityFamily::cusp(1), 1, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(cusp, big(&[1, 1, 3, 3]));
    }

    #[test]
    fn solomon_small() {
        assert!(solomon_check(1, 2, 3, DEFAULT_BUDGET).unwrap().passed());
        let census = enumerate_submodules(&truncated_dvr_model(2, 2, 2).unwrap(), 2, DEFAULT_BUDGET).unwrap();
        // 1/((1-t)(1-2t)) = 1 + 3t + 7t^2
        assert_eq!(census.totals(), big(&[1, 3, 7]));
        assert_eq!(census.total(0), BigInt::one());
    }

    #[test]
    fn schedules_agree() {
        let model = build_local_model(SingularityFamily::node(1), 2, 2, 2, ModelTarget::Free).unwrap();
        let r = determinism_check(&model, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn hall_census_small() {
        let lam: Partition = "2,1".parse().unwrap();
        let census = hall_census(&lam, 2, DEFAULT_BUDGET).unwrap();
        let one: Partition = "1".parse().unwrap();
        let two: Partition = "2".parse().unwrap();
        assert_eq!(census[&(one.clone(), two)], 2);
        assert_eq!(census[&(one, "1,1".parse().unwrap())], 1);
        let total: u64 = census.values().sum();
        // submodules of Z/4 + Z/2 style module over F_2[T]: 1 + 3 + 3 + 1
        assert_eq!(total, 8);
    }

    #[test]
    fn matrix_pairs() {
        assert_eq!(matrix_pair_count(0, 2, 10).unwrap(), BigInt::one());
        assert_eq!(matrix_pair_count(1, 2, 10).unwrap(), BigInt::from(2));
        assert_eq!(matrix_pair_count(1, 3, 10).unwrap(), BigInt::from(3));
        assert!(matrix_pair_count(2, 2, 10).is_err());
    }

    #[test]
    fn coh_quot_trivial_and_small() {
        let node = SingularityFamily::node(1);
        assert!(coh_quot_invariance_check(node, 2, 0, 0, &[0, 1, 2], DEFAULT_BUDGET)
            .unwrap()
            .passed());
        assert!(coh_quot_invariance_check(node, 2, 1, 1, &[1, 2], DEFAULT_BUDGET)
            .unwrap()
            .passed());
        assert!(coh_quot_invariance_check(node, 2, 1, 2, &[1], DEFAULT_BUDGET).is_err());
    }
}
