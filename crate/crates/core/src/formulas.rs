//! Closed and semi-closed forms for `|P(S;G)|`.
//!
//! * Cycles reduce to paths: label `n` must sit on some `v_i ∈ S`, and deleting
//!   `v_i` leaves the path `v_{i+1}, ..., v_{i-1}`.
//! * Path peak sets have the form `|P(S;n)| = 2^{n-|S|-1} p_S(n)` for a polynomial
//!   `p_S` of degree `max(S) - 1`, which is rebuilt here by exact interpolation
//!   from computed counts.
//! * Joins with a null or complete graph have product formulas that ignore the
//!   structure of the other side.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::enumerate::{count_labelings, CountCache, EnumerateError};
use crate::family::Family;
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("vertex {vertex} is not in {set}")]
    NotInSet { vertex: usize, set: VertexSet },
    #[error("cycles need at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("peak set {peaks} is not contained in 1..={n}")]
    PeaksOutOfRange { peaks: VertexSet, n: usize },
    #[error("{0} is not a possible path peak set (needs min >= 2 and no two adjacent positions)")]
    NotPathAdmissible(VertexSet),
    #[error("peak position {0} is too large to interpolate (limit {max})", max = MAX_POLY_POSITION)]
    PolynomialTooLarge(usize),
    #[error("join formula needs a nonempty peak set")]
    EmptyPeakSet,
    #[error("join formula needs the other side to have more than one vertex, got {0}")]
    OtherSideTooSmall(usize),
    #[error("peak set of size {s} does not fit a side of size {side}")]
    PeakSetTooLarge { s: usize, side: usize },
    #[error("interpolated polynomial failed validation: {0}")]
    ValidationFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// Largest `max(S)` accepted by [`path_peak_polynomial`]; its samples and
/// checks run on paths of up to `2 max(S) + 2` vertices.
pub const MAX_POLY_POSITION: usize = (MAX_VERTICES - 2) / 2;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Positions of `S \ {v_i}` on the path left after deleting `v_i` from `C_n`,
/// read as `v_{i+1}, v_{i+2}, ..., v_{i-1}`.
pub fn cycle_path_projection(n: usize, i: usize, s: VertexSet) -> Result<VertexSet, FormulaError> {
    if n < 3 {
        return Err(FormulaError::CycleTooShort(n));
    }
    if !s.is_subset(VertexSet::full(n)) {
        return Err(FormulaError::PeaksOutOfRange { peaks: s, n });
    }
    if !s.contains(i) {
        return Err(FormulaError::NotInSet { vertex: i, set: s });
    }
    Ok(s.without(i).map(|j| (j + n - i) % n))
}

/// `|P(S; C_n)|` as a sum of path counts, one per member of `S`.
pub fn cycle_count(n: usize, s: VertexSet) -> Result<BigUint, FormulaError> {
    if n < 3 {
        return Err(FormulaError::CycleTooShort(n));
    }
    let path = Family::Path(n - 1).build()?;
    let cache = CountCache::new();
    let mut total = BigUint::zero();
    for i in s {
        let projected = cycle_path_projection(n, i, s)?;
        total += count_labelings(&path, projected, None, Some(&cache))?;
    }
    Ok(total)
}

/// True when `s` could be a path peak set: no endpoint position 1 and no two
/// consecutive positions.
pub fn path_admissible(s: VertexSet) -> bool {
    s.first().is_none_or(|m| m >= 2) && (s.bits() & (s.bits() >> 1)) == 0
}

/// Exact polynomial with rational coefficients in the monomial basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeakPolynomial {
    coefficients: Vec<BigRational>,
    origin: VertexSet,
}

impl PeakPolynomial {
    fn constant_one(origin: VertexSet) -> Self {
        PeakPolynomial {
            coefficients: vec![BigRational::one()],
            origin,
        }
    }

    /// Coefficients from the constant term up; no trailing zeros.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// The path peak set this polynomial belongs to.
    pub fn origin(&self) -> VertexSet {
        self.origin
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        (!self.coefficients.is_empty()).then(|| self.coefficients.len() - 1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// True when every value on `range` is an integer.
    pub fn is_integer_valued_on(&self, range: std::ops::RangeInclusive<i64>) -> bool {
        range.into_iter().all(|x| self.eval_int(x).is_integer())
    }

    /// `2^{n-|S|-1} p_S(n)`, the count of labelings of `P_n` with peak set `S`.
    /// `None` when `n` is too small for the identity to apply or the value is
    /// not a nonnegative integer.
    pub fn path_count(&self, n: usize) -> Option<BigUint> {
        let k = self.origin.len();
        if n < self.origin.last().unwrap_or(1) || n < k + 1 {
            return None;
        }
        let v = self.eval_int(n as i64) * BigRational::from_integer(pow2(n - k - 1).into());
        if !v.is_integer() || v.is_negative() {
            return None;
        }
        v.to_integer().to_biguint()
    }
}

impl fmt::Display for PeakPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Lagrange interpolation at integer nodes; coefficients low to high, trimmed.
fn interpolate(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let root = BigRational::from_integer(BigInt::from(*xj));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &root;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn scaled_path_count(s: VertexSet, n: usize) -> Result<(BigUint, BigRational), FormulaError> {
    let path = Family::Path(n).build()?;
    let cache = CountCache::new();
    let count = count_labelings(&path, s, None, Some(&cache))?;
    let scaled = BigRational::new(count.clone().into(), pow2(n - s.len() - 1).into());
    Ok((count, scaled))
}

/// Rebuilds `p_S` from counts on `P_n` for `n = max(S)+1 ..= 2 max(S)` and
/// checks it against two more lengths.
pub fn path_peak_polynomial(s: VertexSet) -> Result<PeakPolynomial, FormulaError> {
    let Some(m) = s.last() else {
        return Ok(PeakPolynomial::constant_one(s));
    };
    if !path_admissible(s) {
        return Err(FormulaError::NotPathAdmissible(s));
    }
    if m > MAX_POLY_POSITION {
        return Err(FormulaError::PolynomialTooLarge(m));
    }
    let points = (m + 1..=2 * m)
        .map(|n| scaled_path_count(s, n).map(|(_, y)| (n as i64, y)))
        .collect::<Result<Vec<_>, _>>()?;
    let poly = PeakPolynomial {
        coefficients: interpolate(&points),
        origin: s,
    };
    if poly.degree() != Some(m - 1) {
        return Err(FormulaError::ValidationFailed(format!(
            "degree {:?}, expected {}",
            poly.degree(),
            m - 1
        )));
    }
    for n in [2 * m + 1, 2 * m + 2] {
        let (count, y) = scaled_path_count(s, n)?;
        if poly.eval_int(n as i64) != y {
            return Err(FormulaError::ValidationFailed(format!(
                "p({n}) = {} but the count {count} gives {y}",
                poly.eval_int(n as i64)
            )));
        }
    }
    Ok(poly)
}

/// Memo of peak polynomials keyed by path peak set. Inadmissible sets map to `None`.
#[derive(Debug, Default)]
pub struct PolynomialTable {
    table: HashMap<VertexSet, Option<PeakPolynomial>>,
}

impl PolynomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, s: VertexSet) -> Result<Option<&PeakPolynomial>, FormulaError> {
        let entry = match self.table.entry(s) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let poly = if path_admissible(s) {
                    Some(path_peak_polynomial(s)?)
                } else {
                    None
                };
                e.insert(poly)
            }
        };
        Ok(entry.as_ref())
    }
}

/// `|P(S; C_n)| = 2^{n-|S|-1} Σ_{v_i ∈ S} p_{Ŝ_i}(n-1)`, with `p_∅ = 1`.
pub fn cycle_count_poly(n: usize, s: VertexSet) -> Result<BigUint, FormulaError> {
    cycle_count_poly_with(n, s, &mut PolynomialTable::new())
}

pub fn cycle_count_poly_with(
    n: usize,
    s: VertexSet,
    table: &mut PolynomialTable,
) -> Result<BigUint, FormulaError> {
    if n < 3 {
        return Err(FormulaError::CycleTooShort(n));
    }
    let at = BigRational::from_integer(BigInt::from(n - 1));
    let mut sum = BigRational::zero();
    for i in s {
        let projected = cycle_path_projection(n, i, s)?;
        if let Some(p) = table.get(projected)? {
            sum += p.eval(&at);
        }
    }
    if sum.is_zero() {
        return Ok(BigUint::zero());
    }
    // A nonzero sum implies some projection is admissible on P_{n-1}, so |S| < n.
    let value = sum * BigRational::from_integer(pow2(n - s.len() - 1).into());
    if !value.is_integer() || value.is_negative() {
        return Err(FormulaError::ValidationFailed(format!(
            "cycle value {value} is not a count"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

/// `|P(S; K̄_k ∨ G)|` for nonempty `S` inside the null side:
/// `|S|! · |V(G)| · (N - |S| - 1)!`.
pub fn null_join_count(
    null_size: usize,
    g_size: usize,
    s_size: usize,
) -> Result<BigUint, FormulaError> {
    if s_size == 0 {
        return Err(FormulaError::EmptyPeakSet);
    }
    if g_size <= 1 {
        return Err(FormulaError::OtherSideTooSmall(g_size));
    }
    if s_size > null_size {
        return Err(FormulaError::PeakSetTooLarge {
            s: s_size,
            side: null_size,
        });
    }
    let total = null_size + g_size;
    Ok(factorial(s_size) * BigUint::from(g_size) * factorial(total - s_size - 1))
}

/// `|P(S; K_k ∨ G)|` for `S` inside the complete side: `(N-1)!` when `|S| = 1`, else 0.
pub fn complete_join_count(
    complete_size: usize,
    g_size: usize,
    s_size: usize,
) -> Result<BigUint, FormulaError> {
    if s_size > complete_size {
        return Err(FormulaError::PeakSetTooLarge {
            s: s_size,
            side: complete_size,
        });
    }
    let total = complete_size + g_size;
    Ok(if s_size == 1 && total >= 1 {
        factorial(total - 1)
    } else {
        BigUint::zero()
    })
}

/// A closed-form lookup result. `value` is `None` when no formula covers the case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyFormula {
    pub value: Option<BigUint>,
    pub rule: &'static str,
}

impl FamilyFormula {
    fn known(value: BigUint, rule: &'static str) -> Self {
        FamilyFormula {
            value: Some(value),
            rule,
        }
    }

    fn uncovered(rule: &'static str) -> Self {
        FamilyFormula { value: None, rule }
    }
}

/// Cases settled by the definition alone.
fn definitional(g: &Graph, s: VertexSet) -> Option<FamilyFormula> {
    let all = g.vertices();
    if !g.is_independent(s) {
        return Some(FamilyFormula::known(
            BigUint::zero(),
            "adjacent vertices cannot both be peaks",
        ));
    }
    if !s.is_disjoint(g.low_degree_vertices(all)) {
        return Some(FamilyFormula::known(
            BigUint::zero(),
            "vertices of degree < 2 are never peaks",
        ));
    }
    if s.is_empty() && g.min_degree() >= 2 {
        return Some(FamilyFormula::known(
            BigUint::zero(),
            "the vertex labeled n is always a peak",
        ));
    }
    if s.is_empty() && g.low_degree_vertices(all) == all {
        return Some(FamilyFormula::known(
            factorial(g.n()),
            "no vertex has degree >= 2: n!",
        ));
    }
    None
}

fn is_null(g: &Graph) -> bool {
    g.edge_count() == 0
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() == g.n() * (g.n() - 1) / 2
}

/// Formulas for `A ∨ B` with `S` in the canonical join numbering.
fn join_formula(a: &Graph, b: &Graph, s: VertexSet) -> Result<FamilyFormula, FormulaError> {
    let (na, nb) = (a.n(), b.n());
    let side_a = VertexSet::full(na);
    let (sa, sb) = (s & side_a, s - side_a);
    if !sa.is_empty() && !sb.is_empty() && na > 1 && nb > 1 {
        return Ok(FamilyFormula::known(
            BigUint::zero(),
            "join peak sets lie on one side",
        ));
    }
    if s.is_empty() {
        for (one, other) in [(a, b), (b, a)] {
            if one.n() == 1 && other.n() >= 2 && is_null(other) {
                let m = other.n();
                return Ok(FamilyFormula::known(
                    factorial(m) * BigUint::from(m),
                    "star with empty peak set: (n-1)!(n-1)",
                ));
            }
        }
        return Ok(FamilyFormula::uncovered("empty peak set on a join"));
    }
    let (inside, other_n, k) = if sb.is_empty() {
        (a, nb, sa.len())
    } else {
        (b, na, sb.len())
    };
    if is_null(inside) && other_n > 1 {
        return Ok(FamilyFormula::known(
            null_join_count(inside.n(), other_n, k)?,
            "peaks in the null side of a join: |S|!·|V(G)|·(N-|S|-1)!",
        ));
    }
    if is_complete(inside) {
        return Ok(FamilyFormula::known(
            complete_join_count(inside.n(), other_n, k)?,
            "peaks in the complete side of a join: (N-1)! if |S|=1",
        ));
    }
    Ok(FamilyFormula::uncovered(
        "peaks on a side that is neither null nor complete",
    ))
}

fn join_sides(spec: &Family) -> Option<(Family, Family)> {
    Some(match spec {
        Family::Star(n) => (Family::Complete(1), Family::Null(n - 1)),
        Family::TernaryStar { k, n } => (Family::Complete(*k), Family::Null(n - k)),
        Family::CompleteBipartite(a, b) => (Family::Null(*a), Family::Null(*b)),
        Family::Wheel(n) => (Family::Complete(1), Family::Cycle(*n)),
        Family::Fan { path, apexes } => (Family::Path(*path), Family::Null(*apexes)),
        Family::Cone { apexes, cycle } => (Family::Cycle(*cycle), Family::Null(*apexes)),
        Family::Join(a, b) => ((**a).clone(), (**b).clone()),
        _ => return None,
    })
}

/// Closed-form `|P(S; G)|` for a named family, or an explicit "not covered".
///
/// Windmills with a noncentral peak are deliberately left uncovered and must be
/// counted by enumeration.
pub fn family_formula(spec: &Family, s: VertexSet) -> Result<FamilyFormula, FormulaError> {
    let g = spec.build()?;
    if !s.is_subset(g.vertices()) {
        return Err(FormulaError::PeaksOutOfRange { peaks: s, n: g.n() });
    }
    if let Some(f) = definitional(&g, s) {
        return Ok(f);
    }
    match spec {
        Family::Cycle(n) => {
            return Ok(FamilyFormula::known(
                cycle_count(*n, s)?,
                "cycle split into paths",
            ));
        }
        Family::Complete(n) if s.len() == 1 => {
            return Ok(FamilyFormula::known(
                complete_join_count(1, n - 1, 1)?,
                "complete graph: (n-1)!",
            ));
        }
        Family::Windmill(_) if s != VertexSet::from([1]) => {
            return Ok(FamilyFormula::uncovered("windmill with a noncentral peak"));
        }
        Family::Windmill(k) => {
            return Ok(FamilyFormula::known(
                complete_join_count(1, 2 * k, 1)?,
                "peaks in the complete side of a join: (N-1)! if |S|=1",
            ));
        }
        _ => {}
    }
    match join_sides(spec) {
        Some((a, b)) => join_formula(&a.build()?, &b.build()?, s),
        None => Ok(FamilyFormula::uncovered("no closed form for this family")),
    }
}

/// [`family_formula`] reduced to its value.
pub fn family_count(spec: &Family, s: VertexSet) -> Result<Option<BigUint>, FormulaError> {
    Ok(family_formula(spec, s)?.value)
}
