use serde::Serialize;

use super::{binom, factorial, sign, Factor, VertexAlgebra, VertexPoly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub kind: String,
    pub elements: Vec<String>,
    pub modes: Vec<i64>,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct AxiomReport {
    pub algebra: String,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn jacobi_failures(&self) -> usize {
        self.violations.iter().filter(|v| v.kind == "jacobi").count()
    }

    pub fn skew_failures(&self) -> usize {
        self.violations.iter().filter(|v| v.kind == "skew").count()
    }
}

impl VertexAlgebra {
    /// `B_(i) A` predicted by skew-symmetry from the products `A_(n) B`.
    pub fn skew_predict(&self, a: &VertexPoly, b: &VertexPoly, i: i64) -> VertexPoly {
        let p = sign(self.parity(a) * self.parity(b));
        let nmax = self.max_product(a, b);
        let mut acc = VertexPoly::zero();
        for n in i..=nmax {
            let x = self.nprod(a, n, b);
            if x.is_zero() {
                continue;
            }
            let m = (n - i) as u32;
            let d = self.deriv_n(&x, m).scale(&Scalar::frac(1, factorial(m)));
            acc.axpy(&(&sign(n as u32) * &-p.clone()), &d);
        }
        acc
    }

    /// Residual of skew-symmetry for the pair, per mode.
    pub fn skew_residuals(&self, a: &VertexPoly, b: &VertexPoly) -> Vec<(i64, VertexPoly)> {
        let nmax = self.max_product(a, b);
        let mut out = Vec::new();
        for i in 0..=nmax {
            let r = self.nprod(b, i, a).sub(&self.skew_predict(a, b, i));
            if !r.is_zero() {
                out.push((i, r));
            }
        }
        out
    }

    /// Residuals of the commutator formula
    /// `a_(m)(b_(n)c) - p b_(n)(a_(m)c) = Σ C(m,i) (a_(i)b)_(m+n-i) c`.
    pub fn jacobi_residuals(&self, a: &VertexPoly, b: &VertexPoly, c: &VertexPoly) -> Vec<((i64, i64), VertexPoly)> {
        let p = sign(self.parity(a) * self.parity(b));
        let mmax = self.max_product(a, &self.nprod_bound_dummy(b, c));
        let nmax = self.max_product(b, &self.nprod_bound_dummy(a, c));
        let mut out = Vec::new();
        for m in 0..=mmax {
            for n in 0..=nmax {
                let lhs = self.nprod(a, m, &self.nprod(b, n, c)).sub(&self.nprod(b, n, &self.nprod(a, m, c)).scale(&p));
                let mut rhs = VertexPoly::zero();
                for i in 0..=m {
                    let ab = self.nprod(a, i, b);
                    if ab.is_zero() {
                        continue;
                    }
                    rhs.axpy(&binom(m, i as u32), &self.nprod(&ab, m + n - i, c));
                }
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    out.push(((m, n), r));
                }
            }
        }
        out
    }

    // A stand-in whose truncation weight is the sum of the two arguments'.
    fn nprod_bound_dummy(&self, b: &VertexPoly, c: &VertexPoly) -> VertexPoly {
        let mut m: Vec<Factor> = Vec::new();
        if let Some(x) = b.terms().map(|(m, _)| m).max_by_key(|m| self.two_bound_mono(m)) {
            m.extend_from_slice(x);
        }
        if let Some(x) = c.terms().map(|(m, _)| m).max_by_key(|m| self.two_bound_mono(m)) {
            m.extend_from_slice(x);
        }
        VertexPoly { terms: [(m, Scalar::one())].into_iter().collect() }
    }

    /// Skew-symmetry on all generator pairs and the commutator formula on all
    /// generator triples; then both identities on pairs/triples drawn from
    /// normally ordered monomials (at most two factors, derivative order at
    /// most one) of truncation weight at most `two_cutoff / 2`.
    pub fn axiom_check(&self, two_cutoff: i64) -> AxiomReport {
        let mut rep = AxiomReport { algebra: self.name.clone(), ..Default::default() };
        let gens: Vec<VertexPoly> = (0..self.ngens()).map(|i| VertexPoly::factor(Factor::new(i, 0))).collect();
        let names: Vec<String> = (0..self.ngens()).map(|i| self.gen(i).name.clone()).collect();
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                rep.pairs_checked += 1;
                for (i, r) in self.skew_residuals(&gens[a], &gens[b]) {
                    rep.violations.push(AxiomViolation {
                        kind: "skew".into(),
                        elements: vec![names[a].clone(), names[b].clone()],
                        modes: vec![i],
                        residual: self.text(&r),
                    });
                }
                for c in 0..gens.len() {
                    rep.triples_checked += 1;
                    for ((m, n), r) in self.jacobi_residuals(&gens[a], &gens[b], &gens[c]) {
                        rep.violations.push(AxiomViolation {
                            kind: "jacobi".into(),
                            elements: vec![names[a].clone(), names[b].clone(), names[c].clone()],
                            modes: vec![m, n],
                            residual: self.text(&r),
                        });
                    }
                }
            }
        }
        // composite monomials
        let mut factors = Vec::new();
        for g in 0..self.ngens() {
            for d in 0..2u32 {
                let f = Factor::new(g, d);
                if self.two_bound_factor(f) <= two_cutoff {
                    factors.push(f);
                }
            }
        }
        let mut composites = Vec::new();
        for (i, &f1) in factors.iter().enumerate() {
            for &f2 in &factors[i..] {
                if self.two_bound_factor(f1) + self.two_bound_factor(f2) > two_cutoff {
                    continue;
                }
                let v = self.no(&VertexPoly::factor(f1), &VertexPoly::factor(f2));
                if !v.is_zero() {
                    composites.push(v);
                }
            }
        }
        for x in &composites {
            for g in &gens {
                rep.pairs_checked += 1;
                for (i, r) in self.skew_residuals(g, x) {
                    rep.violations.push(AxiomViolation {
                        kind: "skew".into(),
                        elements: vec![self.text(g), self.text(x)],
                        modes: vec![i],
                        residual: self.text(&r),
                    });
                }
                for h in &gens {
                    rep.triples_checked += 1;
                    for ((m, n), r) in self.jacobi_residuals(g, h, x) {
                        rep.violations.push(AxiomViolation {
                            kind: "jacobi".into(),
                            elements: vec![self.text(g), self.text(h), self.text(x)],
                            modes: vec![m, n],
                            residual: self.text(&r),
                        });
                    }
                }
            }
        }
        rep
    }
}
