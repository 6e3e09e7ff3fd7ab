//! Cores by direct intersection of sampled minimal reductions `Q_α`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::GenericData;
use crate::ideal::Ideal;
use crate::linalg::{nullspace, rank, Echelon, Vector};
use crate::reduction::{is_minimal_reduction, ChainAnalysis};
use crate::report::{AdmissibleSequence, CoreMethod, CoreReport, FieldSemantics};

/// Exhaustive enumeration is refused above this many projective points.
pub const EXHAUSTIVE_LIMIT: u64 = 250_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Every point of `P^{N-1}(F_p)`.
    Exhaustive,
    /// `count` uniform points; integers in `[-bound, bound]` over `Q`.
    Random { count: usize, seed: u64 },
    /// The first `count` primitive integer points by height, first nonzero
    /// coordinate positive.
    SmallHeight { count: usize },
}

impl Sampling {
    pub fn label(&self) -> String {
        match self {
            Sampling::Exhaustive => "exhaustive".into(),
            Sampling::Random { count, seed } => format!("random:{count} seed={seed}"),
            Sampling::SmallHeight { count } => format!("height:{count}"),
        }
    }
}

const RANDOM_RATIONAL_BOUND: i64 = 1000;

/// All points of `P^{n-1}(F_p)`, normalized so that the first nonzero
/// coordinate is one.
pub fn projective_points(p: u64, n: usize) -> Result<Vec<Vec<u64>>> {
    let count = (0..n).try_fold(0u64, |acc, _| acc.checked_mul(p)?.checked_add(1));
    match count {
        Some(c) if c <= EXHAUSTIVE_LIMIT => {}
        _ => {
            return Err(AlgebraError::Unsupported(format!(
                "P^{}(F_{p}) has more than {EXHAUSTIVE_LIMIT} points",
                n - 1
            )))
        }
    }
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = p.pow(free as u32);
        for code in 0..total {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = c % p;
                c /= p;
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Primitive integer vectors of length `n` ordered by height, then
/// lexicographically; the first nonzero coordinate is positive.
pub fn small_height_points(n: usize, count: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut height = 1i64;
    while out.len() < count {
        let mut layer = Vec::new();
        let side = (2 * height + 1) as usize;
        let total = side.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let x = (c % side) as i64 - height;
                    c /= side;
                    x
                })
                .collect();
            let h = v.iter().map(|x| x.abs()).max().unwrap();
            if h != height || v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                continue;
            }
            if v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) != 1 {
                continue;
            }
            layer.push(v);
        }
        layer.sort_by(|a, b| b.cmp(a));
        out.extend(layer);
        height += 1;
    }
    out.truncate(count);
    out
}

/// Outcome of intersecting sampled minimal reductions.
#[derive(Clone, Debug)]
pub struct BruteForce<F: Field> {
    pub report: CoreReport<F>,
    /// Points with `J(α) ≠ 0` that entered the intersection.
    pub samples_used: usize,
    /// Number of samples after which the intersection no longer changed.
    pub stabilized_after: usize,
    /// `max r_{Q_α}(A)` over the samples.
    pub max_reduction_number: usize,
    /// Hilbert vectors `(dim (Q_α)_n)_{n ≤ r}` that occurred.
    pub hilbert_vectors: Vec<Vec<usize>>,
}

struct Accumulator<F: Field> {
    field: F,
    r: usize,
    kernels: Vec<Echelon<F>>,
    samples: usize,
    last_change: usize,
    max_rn: usize,
    vectors: Vec<Vec<usize>>,
}

impl<F: Field> Accumulator<F> {
    fn new(g: &GenericData<F>, r: usize) -> Self {
        let field = g.algebra().field().clone();
        let kernels = (1..=r)
            .map(|n| Echelon::empty(&field, g.algebra().hilbert(n as u32)))
            .collect();
        Accumulator {
            field,
            r,
            kernels,
            samples: 0,
            last_change: 0,
            max_rn: 0,
            vectors: Vec::new(),
        }
    }

    fn add(&mut self, g: &GenericData<F>, alpha: &[F::Elem]) {
        self.samples += 1;
        let mut changed = false;
        let mut dims = Vec::with_capacity(self.r);
        for n in 1..=self.r {
            let h = g.algebra().hilbert(n as u32);
            let rows: Vec<Vector<F>> = g.specialize(n, alpha);
            let rk = rank(&self.field, h, &rows);
            dims.push(rk);
            if rk < h {
                self.max_rn = self.max_rn.max(n);
                for k in nullspace(&self.field, h, &rows) {
                    changed |= self.kernels[n - 1].insert(k);
                }
            }
        }
        if changed {
            self.last_change = self.samples;
        }
        if !self.vectors.contains(&dims) {
            self.vectors.push(dims);
        }
    }
}

/// Intersects `Q_α` over the chosen points `α ∉ V_{r+1}`.
pub fn core_bruteforce<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>, sampling: Sampling) -> Result<BruteForce<F>> {
    let field = g.algebra().field().clone();
    let r = chain.r;
    let n = g.u_count();
    let mut acc = Accumulator::new(g, r);
    let semantics;
    match sampling {
        Sampling::Exhaustive => {
            let p = field.characteristic();
            if p == 0 {
                return Err(AlgebraError::Unsupported("exhaustive sampling needs a prime field".into()));
            }
            semantics = FieldSemantics::PrimeFieldPoints;
            for pt in projective_points(p, n)? {
                let alpha: Vec<F::Elem> = pt.iter().map(|&x| field.from_i64(x as i64)).collect();
                if is_minimal_reduction(&chain.j, &alpha) {
                    acc.add(g, &alpha);
                }
            }
        }
        Sampling::Random { count, seed } => {
            let p = field.characteristic();
            semantics = if p == 0 {
                FieldSemantics::RationalPoints
            } else {
                FieldSemantics::PrimeFieldPoints
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut tries = 0usize;
            while acc.samples < count {
                tries += 1;
                if tries > 100 * count + 100 {
                    break;
                }
                let alpha: Vec<F::Elem> = (0..n)
                    .map(|_| {
                        if p == 0 {
                            field.from_i64(rng.gen_range(-RANDOM_RATIONAL_BOUND..=RANDOM_RATIONAL_BOUND))
                        } else {
                            field.from_i64(rng.gen_range(0..p) as i64)
                        }
                    })
                    .collect();
                if is_minimal_reduction(&chain.j, &alpha) {
                    acc.add(g, &alpha);
                }
            }
        }
        Sampling::SmallHeight { count } => {
            semantics = if field.characteristic() == 0 {
                FieldSemantics::RationalPoints
            } else {
                FieldSemantics::PrimeFieldPoints
            };
            let mut want = count;
            // points are drawn in height order until `count` of them avoid V(J)
            let mut seen = 0;
            while acc.samples < count {
                let pts = small_height_points(n, want);
                for pt in &pts[seen..] {
                    let alpha: Vec<F::Elem> = pt.iter().map(|&x| field.from_i64(x)).collect();
                    if acc.samples < count && is_minimal_reduction(&chain.j, &alpha) {
                        acc.add(g, &alpha);
                    }
                }
                seen = pts.len();
                want *= 2;
            }
        }
    }
    if acc.samples == 0 {
        return Err(AlgebraError::Unsupported("no sampled point gives a minimal reduction".into()));
    }
    let pieces: Vec<(u32, Vec<Vector<F>>)> = acc
        .kernels
        .iter()
        .enumerate()
        .map(|(i, k)| ((i + 1) as u32, k.orthogonal_complement()))
        .collect();
    let a = g.algebra();
    let ideal = a.ideal_from_pieces(&pieces, r as u32 + 1);
    let gens = a.minimal_generators(&ideal);
    let mut report = CoreReport::new(CoreMethod::Bruteforce, a.lift(gens.clone()), gens, semantics);
    report.r = Some(r);
    report.notes.push(format!(
        "{} sampling: {} minimal reductions, unchanged after sample {}, largest sampled reduction number {}",
        sampling.label(),
        acc.samples,
        acc.last_change,
        acc.max_rn
    ));
    Ok(BruteForce {
        report,
        samples_used: acc.samples,
        stabilized_after: acc.last_change,
        max_reduction_number: acc.max_rn,
        hilbert_vectors: acc.vectors,
    })
}

/// Result of checking that every `α ∉ V_{r+1}` lies in exactly one stratum.
#[derive(Clone, Debug, Default)]
pub struct PartitionCheck {
    pub points: usize,
    /// Points whose Hilbert vector is not an enumerated sequence.
    pub unmatched: usize,
    /// Points whose membership conditions hold for a number of sequences other than one.
    pub ambiguous: usize,
}

impl PartitionCheck {
    pub fn holds(&self) -> bool {
        self.unmatched == 0 && self.ambiguous == 0
    }
}

/// Every point of `P^{N-1}(F_p)` off `V(J)` realizes exactly the admissible
/// sequence whose vanishing and nonvanishing conditions it satisfies.
pub fn partition_check<F: Field>(g: &GenericData<F>, chain: &ChainAnalysis<F>, strata: &[AdmissibleSequence<F>]) -> Result<PartitionCheck> {
    let field = g.algebra().field().clone();
    let p = field.characteristic();
    if p == 0 {
        return Err(AlgebraError::Unsupported("partition check enumerates a prime field".into()));
    }
    let mut out = PartitionCheck::default();
    for pt in projective_points(p, g.u_count())? {
        let alpha: Vec<F::Elem> = pt.iter().map(|&x| field.from_i64(x as i64)).collect();
        if !is_minimal_reduction(&chain.j, &alpha) {
            continue;
        }
        out.points += 1;
        let dims: Vec<usize> = (1..=chain.r)
            .map(|n| rank(&field, g.algebra().hilbert(n as u32), &g.specialize(n, &alpha)))
            .collect();
        let holds = |s: &AdmissibleSequence<F>| {
            s.vanishing.gens().iter().all(|f| field.is_zero(&f.eval_point(&alpha)))
                && s.nonvanishing.gens().iter().any(|f| !field.is_zero(&f.eval_point(&alpha)))
        };
        let matching: Vec<&AdmissibleSequence<F>> = strata.iter().filter(|s| holds(s)).collect();
        if matching.len() != 1 {
            out.ambiguous += 1;
        }
        if !matching.iter().any(|s| s.a == dims) {
            out.unmatched += 1;
        }
    }
    Ok(out)
}

/// Reduction of a rational ideal modulo `p` into a ring with the same variable names.
pub fn reduce_mod_p<G: Field>(ideal: &Ideal<crate::field::Rationals>, target: &crate::poly::Ring<G>) -> Result<Ideal<G>> {
    let f = target.field().clone();
    ideal.map_coefficients(target, |c| f.from_rational(c))
}

/// Whether the binary forms cutting out the strata (over `Q`) have all their
/// roots in `P^1(F_p)`, so that the strata keep their shape mod `p`.
/// `None` when the parameter space is not a projective line.
pub fn strata_split_mod_p<G: Field>(strata: &[AdmissibleSequence<crate::field::Rationals>], u: &crate::poly::Ring<G>) -> Result<Option<bool>> {
    if u.nvars() != 2 {
        return Ok(None);
    }
    let field = u.field().clone();
    let p = field.characteristic();
    let points = projective_points(p, 2)?;
    for s in strata {
        let cut = &s.vanishing;
        if cut.is_zero() || cut.is_unit() {
            continue;
        }
        let rad = crate::radical::radical_restricted(cut)?;
        if rad.gens().len() != 1 {
            continue;
        }
        let form = reduce_mod_p(&rad, u)?;
        let Some(f) = form.gens().first() else { continue };
        let degree = f.total_degree().unwrap_or(0) as usize;
        let roots = points
            .iter()
            .filter(|a| {
                let a: Vec<G::Elem> = a.iter().map(|x| field.from_i64(*x as i64)).collect();
                field.is_zero(&f.eval_point(&a))
            })
            .count();
        if roots != degree {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line_over_f5() {
        let pts = projective_points(5, 2).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![1, 0]);
        assert_eq!(pts[5], vec![0, 1]);
    }

    #[test]
    fn small_heights() {
        let pts = small_height_points(2, 4);
        assert_eq!(pts, vec![vec![1, 1], vec![1, 0], vec![1, -1], vec![0, 1]]);
        assert_eq!(small_height_points(2, 12).len(), 12);
        assert!(small_height_points(2, 12).iter().all(|v| v != &vec![2, 2]));
    }

    #[test]
    fn refuses_huge_enumeration() {
        assert!(projective_points(101, 4).is_err());
    }
}
