//! Identical-vanishing test on a box.
//!
//! The expression is first brought to [`Canon`] form. A zero numerator proves
//! vanishing. When every atom is a coordinate or parameter the canonical form
//! is a rational function and a nonzero numerator disproves it, so the answer
//! is exact. Only when transcendental atoms survive (trigonometric identities,
//! `sqrt(x)^2`, ...) does the test fall back to evaluating the numerator at
//! [`SAMPLE_COUNT`] points drawn uniformly from the box, accepting
//! `|sum of terms| <= 1e-9 * (1 + max |term|)` at every point.
//!
//! Soundness of the sampled branch. Points are drawn as `lo + (hi - lo) * k / 2^53`
//! with `k` uniform on `[0, 2^53)`, i.e. from a grid of `S = 2^53` values per
//! coordinate. For a nonzero polynomial of total degree `D <= 12` in at most
//! six variables, Schwartz-Zippel bounds the chance that one point is a root by
//! `D / S < 2^-49`. With 64 independent points the probability of declaring it
//! zero is below `(2^-49)^64`, far under `1e-12`; even a single point already
//! meets the bound. The floating-point threshold is the only practical source
//! of false positives, which is why the tolerance is relative to the largest
//! term.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::Canon;
use super::{EvalPoint, Expr, ExprError, Result, Symbol};

/// Number of sample points used by the randomized branch.
pub const SAMPLE_COUNT: usize = 64;
/// Relative acceptance threshold of the randomized branch.
pub const SAMPLE_TOLERANCE: f64 = 1e-9;
const MAX_ATTEMPTS: usize = SAMPLE_COUNT * 8;

/// Axis-aligned sampling box, one closed interval per symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainBox {
    ranges: Vec<(Symbol, f64, f64)>,
}

impl DomainBox {
    pub fn new(ranges: Vec<(Symbol, f64, f64)>) -> Self {
        DomainBox { ranges }
    }

    /// The same interval for every symbol.
    pub fn cube(symbols: &[Symbol], lo: f64, hi: f64) -> Self {
        DomainBox { ranges: symbols.iter().map(|s| (s.clone(), lo, hi)).collect() }
    }

    pub fn ranges(&self) -> &[(Symbol, f64, f64)] {
        &self.ranges
    }

    pub fn range(&self, sym: &Symbol) -> Option<(f64, f64)> {
        self.ranges.iter().find(|(s, _, _)| s == sym).map(|(_, lo, hi)| (*lo, *hi))
    }

    /// Replace every interval by `[lo, hi]` intersected with the current one.
    pub fn intersect_all(&self, lo: f64, hi: f64) -> Self {
        DomainBox {
            ranges: self
                .ranges
                .iter()
                .map(|(s, a, b)| {
                    let (l, h) = (a.max(lo), b.min(hi));
                    if l <= h {
                        (s.clone(), l, h)
                    } else {
                        (s.clone(), lo, hi)
                    }
                })
                .collect(),
        }
    }

    /// Add an interval for a symbol that is not yet covered.
    pub fn with_range(mut self, sym: &Symbol, lo: f64, hi: f64) -> Self {
        match self.ranges.iter_mut().find(|(s, _, _)| s == sym) {
            Some(slot) => {
                slot.1 = lo;
                slot.2 = hi;
            }
            None => self.ranges.push((sym.clone(), lo, hi)),
        }
        self
    }

    pub fn is_nonempty(&self) -> bool {
        self.ranges.iter().all(|(_, lo, hi)| lo <= hi && lo.is_finite() && hi.is_finite())
    }

    pub fn center(&self) -> EvalPoint {
        let mut p = EvalPoint::new();
        for (s, lo, hi) in &self.ranges {
            p.set(s.clone(), 0.5 * (lo + hi));
        }
        p
    }

    pub fn sample(&self, rng: &mut impl Rng) -> EvalPoint {
        let mut p = EvalPoint::new();
        for (s, lo, hi) in &self.ranges {
            let k: u64 = rng.gen::<u64>() >> 11;
            let t = k as f64 / (1u64 << 53) as f64;
            p.set(s.clone(), lo + (hi - lo) * t);
        }
        p
    }
}

/// Zero-test configuration: the sampling box and an explicit seed.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTest {
    domain: DomainBox,
    seed: u64,
}

impl ZeroTest {
    pub fn new(domain: DomainBox, seed: u64) -> Self {
        ZeroTest { domain, seed }
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        ZeroTest { domain: self.domain.clone(), seed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn is_zero(&self, e: &Expr) -> Result<bool> {
        self.is_zero_canon(&Canon::from_expr(e)?)
    }

    pub fn is_zero_canon(&self, c: &Canon) -> Result<bool> {
        if c.is_zero() {
            return Ok(true);
        }
        if !c.has_transcendental() {
            return Ok(false);
        }
        self.sampled_zero(c)
    }

    /// Randomized branch only; exposed so the probabilistic path can be
    /// exercised on its own.
    pub fn sampled_zero(&self, c: &Canon) -> Result<bool> {
        let mut rng = self.rng();
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < SAMPLE_COUNT {
            if attempts == MAX_ATTEMPTS {
                return Err(ExprError::SamplingExhausted { needed: SAMPLE_COUNT, attempts });
            }
            attempts += 1;
            let p = self.domain.sample(&mut rng);
            let (terms, den) = match c.eval_parts(&p) {
                Ok(v) => v,
                Err(ExprError::Eval(_)) => continue,
                Err(e) => return Err(e),
            };
            if den == 0.0 || !den.is_finite() {
                continue;
            }
            let total: f64 = terms.iter().sum();
            let scale = terms.iter().fold(0.0f64, |m, t| m.max(libm::fabs(*t)));
            if libm::fabs(total) > SAMPLE_TOLERANCE * (1.0 + scale) {
                return Ok(false);
            }
            accepted += 1;
        }
        Ok(true)
    }

    /// Tree-level sampling of an arbitrary expression with the subterm-scaled
    /// threshold, without canonicalization.
    pub fn sampled_zero_expr(&self, e: &Expr) -> Result<bool> {
        let mut rng = self.rng();
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < SAMPLE_COUNT {
            if attempts == MAX_ATTEMPTS {
                return Err(ExprError::SamplingExhausted { needed: SAMPLE_COUNT, attempts });
            }
            attempts += 1;
            let p = self.domain.sample(&mut rng);
            let mut scale = 0.0;
            let v = match e.eval_tracking(&p, &mut scale) {
                Ok(v) => v,
                Err(ExprError::Eval(_)) => continue,
                Err(err) => return Err(err),
            };
            if libm::fabs(v) > SAMPLE_TOLERANCE * (1.0 + scale) {
                return Ok(false);
            }
            accepted += 1;
        }
        Ok(true)
    }

    /// Value of `c` at a point, mapping poles to an error that names the point.
    pub fn value_at(&self, c: &Canon, p: &EvalPoint) -> Result<f64> {
        c.eval(p).map_err(|e| match e {
            ExprError::Eval(msg) => ExprError::Eval(format!("{} at {:?}", msg, p)),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, SymbolTable};

    fn setup() -> (SymbolTable, ZeroTest) {
        let t = SymbolTable::new(&["u", "v", "x1"], &[]);
        let zt = ZeroTest::new(DomainBox::cube(t.coords(), -2.0, 2.0), 7);
        (t, zt)
    }

    #[test]
    fn commutativity() {
        let (t, zt) = setup();
        assert!(zt.is_zero(&parse("u*v - v*u", &t).unwrap()).unwrap());
    }

    #[test]
    fn strictly_positive_is_nonzero() {
        let (t, zt) = setup();
        assert!(!zt.is_zero(&parse("x1^2 + 1", &t).unwrap()).unwrap());
    }

    #[test]
    fn pythagorean_identity_needs_sampling() {
        let (t, zt) = setup();
        let e = parse("sin(u)^2 + cos(u)^2 - 1", &t).unwrap();
        let c = Canon::from_expr(&e).unwrap();
        assert!(!c.is_zero(), "the canonicalizer does not know trig identities");
        assert!(zt.is_zero(&e).unwrap());
        assert!(!zt.is_zero(&parse("sin(u)^2 + cos(u)^2 - 1 + 1/1000000", &t).unwrap()).unwrap());
    }

    #[test]
    fn exhausted_when_every_point_is_a_pole() {
        let (t, zt) = setup();
        // log is undefined on the whole box after the shift.
        let e = parse("log(u - 3) - log(u - 3)*1 + sin(log(u - 3))", &t).unwrap();
        assert!(matches!(zt.is_zero(&e), Err(ExprError::SamplingExhausted { .. })));
    }

    #[test]
    fn seed_makes_sampling_reproducible() {
        let (_, zt) = setup();
        let mut a = zt.rng();
        let mut b = zt.rng();
        let pa = zt.domain().sample(&mut a);
        let pb = zt.domain().sample(&mut b);
        assert_eq!(pa, pb);
    }
}
