//! The individual verification suites behind [`super::run`].
//!
//! Each claim gets its own deterministic random stream, derived from the
//! job seed and the claim identifier, so certificates do not depend on
//! scheduling or on which other claims run in the same job.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{resolve_complex, ring_by_name, Certificate, JobSpec};
use crate::cochain::chains::integrate_fiber;
use crate::coeff::Ring;
use crate::forms::bhomotopy::BHomotopy;
use crate::forms::extend::{form_space, FormDegreeBudget};
use crate::forms::fiber::fiber_integrate;
use crate::forms::PLForm;
use crate::linalg::rat;
use crate::simplicial::product::{circle_product, twist, Product};
use crate::simplicial::{builtins, Complex, SimplicialPair};
use crate::theory::equiv::{equivalent, Equivalence};
use crate::theory::lift::{
    lambda_class_trivial, lambda_cocycle_basis, lift_cocycle, random_q_cochain,
    random_triple, random_z_cochain, LiftError,
};
use crate::theory::pairs::pair_sequence;
use crate::theory::product::{circle_class, product_even, product_full, unit};
use crate::theory::{
    a_map, axioms, integrate, CorrectionData, DifferentialTriple, TripleError,
};

struct Failure {
    status: &'static str,
    payload: Value,
}

type ClaimResult = Result<Value, Failure>;

fn counterexample(payload: Value) -> Failure {
    Failure { status: "failed", payload }
}

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        match e {
            LiftError::BudgetExceeded => Failure {
                status: "budget-exhausted",
                payload: json!({ "error": e.to_string() }),
            },
            other => counterexample(json!({ "error": other.to_string() })),
        }
    }
}

impl From<TripleError> for Failure {
    fn from(e: TripleError) -> Self {
        counterexample(json!({ "error": e.to_string() }))
    }
}

fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in s.bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Compact description of a triple, used in counterexample payloads.
fn digest(t: &DifferentialTriple) -> Value {
    json!({
        "degree": t.degree,
        "c": format!("{:?}", t.c.values),
        "omega_zero": t.omega.is_zero(),
        "h": format!("{:?}", t.h.values),
    })
}

struct Ctx<'a> {
    job: &'a JobSpec,
    complex: &'a str,
    ring: Ring,
    pair: SimplicialPair,
    certs: Vec<Certificate>,
}

impl<'a> Ctx<'a> {
    fn budget(&self) -> FormDegreeBudget {
        self.job.budget()
    }

    fn claim(
        &mut self,
        name: &str,
        f: impl FnOnce(&mut Self, &mut ChaCha8Rng) -> ClaimResult,
    ) {
        let claim = format!("{name} @ {}", self.complex);
        let mut rng =
            ChaCha8Rng::seed_from_u64(self.job.seed ^ fnv(&claim));
        let start = Instant::now();
        let (status, payload) = match f(self, &mut rng) {
            Ok(p) => ("verified".to_string(), p),
            Err(fail) => (fail.status.to_string(), fail.payload),
        };
        self.certs.push(Certificate {
            claim,
            status,
            payload,
            millis: start.elapsed().as_millis(),
        });
    }

    fn sample(
        &self,
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<DifferentialTriple, Failure> {
        Ok(random_triple(&self.ring, &self.pair, n, rng, self.budget())?)
    }

    /// Shift the h component by a coboundary: the correction cochains of
    /// the model act through exactly such shifts, so laws must survive
    /// them.
    fn perturb(
        &self,
        t: &DifferentialTriple,
        rng: &mut ChaCha8Rng,
    ) -> Result<DifferentialTriple, Failure> {
        if t.degree < 2 {
            return Ok(t.clone());
        }
        let k = random_q_cochain(
            &self.ring,
            &self.pair.space,
            &self.pair.sub_cells,
            t.degree - 2,
            rng,
        );
        Ok(DifferentialTriple::new(
            &t.base,
            t.degree,
            t.c.clone(),
            t.omega.clone(),
            t.h.add(&k.delta()),
        )?)
    }

    fn expect_equivalent(
        &self,
        law: &str,
        context: Value,
        lhs: &DifferentialTriple,
        rhs: &DifferentialTriple,
    ) -> Result<(), Failure> {
        match equivalent(lhs, rhs)? {
            Equivalence::Witness(w) => {
                debug_assert!(w.verify(lhs, rhs));
                Ok(())
            }
            Equivalence::Distinct(d) => Err(counterexample(json!({
                "law": law,
                "context": context,
                "reason": d.reason,
                "lhs": digest(lhs),
                "rhs": digest(rhs),
            }))),
        }
    }

    fn random_form(
        &self,
        base: &Complex,
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> PLForm {
        let rel = if self.pair.sub_cells.is_empty() {
            None
        } else {
            Some(&self.pair)
        };
        let fs = form_space(&self.ring, base, n, 2, rel);
        let mut out = PLForm::zero(&self.ring, base, n);
        for f in fs {
            if rng.gen_bool(0.3) {
                out = out.add(&f.scale(&rat(rng.gen_range(-2..=2), 1)));
            }
        }
        out
    }
}

pub(super) fn run_suite(
    job: &JobSpec,
    complex: &str,
    suite: &str,
) -> Vec<Certificate> {
    let mut ctx = Ctx {
        job,
        complex,
        ring: ring_by_name(&job.coefficients).expect("validated"),
        pair: resolve_complex(complex).expect("validated"),
        certs: vec![],
    };
    match suite {
        "axioms" => suite_axioms(&mut ctx),
        "group" => suite_group(&mut ctx),
        "ring" => suite_ring(&mut ctx),
        "integration" => suite_integration(&mut ctx),
        "pairs" => suite_pairs(&mut ctx),
        "products-odd" => suite_products_odd(&mut ctx),
        other => unreachable!("validated suite {other}"),
    }
    ctx.certs
}

fn suite_axioms(ctx: &mut Ctx) {
    ctx.claim("axioms/I-surjective", |ctx, _| {
        let mut lifted = vec![];
        for n in 1..=2 {
            let lifts =
                axioms::i_surjective(&ctx.ring, &ctx.pair, n, ctx.budget())?;
            for t in &lifts {
                if let Err(e) = t.validate() {
                    return Err(counterexample(json!({
                        "degree": n,
                        "error": e.to_string(),
                        "lift": digest(t),
                    })));
                }
            }
            lifted.push(lifts.len());
        }
        Ok(json!({ "degrees": [1, 2], "cocycles_lifted": lifted }))
    });

    ctx.claim("axioms/ker-I-equals-im-a", |ctx, rng| {
        let mut checked = 0;
        for n in 1..=2 {
            for i in 0..ctx.job.samples {
                let mut t = ctx.sample(n, rng)?;
                if !lambda_class_trivial(
                    &ctx.ring,
                    &ctx.pair.space,
                    &ctx.pair.sub_cells,
                    &t.c,
                ) {
                    let l = lift_cocycle(&ctx.ring, &ctx.pair, &t.c, ctx.budget())?;
                    t = t.sub(&l)?;
                }
                if !axioms::a_hits_kernel_of_i(&t, ctx.budget())? {
                    return Err(counterexample(json!({
                        "degree": n,
                        "sample": i,
                        "triple": digest(&t),
                        "note": "characteristic class vanishes but no curvature-level preimage verifies",
                    })));
                }
                checked += 1;
            }
        }
        Ok(json!({ "kernel_samples": checked }))
    });

    ctx.claim("axioms/a-kills-integral-forms", |ctx, _| {
        let basis = lambda_cocycle_basis(
            &ctx.ring,
            &ctx.pair.space,
            &ctx.pair.sub_cells,
            1,
        );
        let mut checked = 0;
        for z in basis.iter().take(2) {
            let (theta, _) =
                axioms::integral_form(&ctx.ring, &ctx.pair, z, ctx.budget())?;
            let at = a_map(&ctx.pair, &theta);
            let zero = DifferentialTriple::zero(&ctx.ring, &ctx.pair, 2);
            ctx.expect_equivalent(
                "a(theta) ~ 0 for theta with integral periods",
                json!({ "cocycle": checked }),
                &at,
                &zero,
            )?;
            checked += 1;
        }
        Ok(json!({ "integral_forms": checked }))
    });

    ctx.claim("axioms/curvature-and-class-of-a", |ctx, rng| {
        for n in 1..=2 {
            for i in 0..ctx.job.samples {
                let theta = ctx.random_form(&ctx.pair.space, n, rng);
                let at = a_map(&ctx.pair, &theta);
                if !at.curvature().sub(&theta.d()).is_zero()
                    || !at.char_cocycle().is_zero()
                {
                    return Err(counterexample(json!({
                        "degree": n,
                        "sample": i,
                        "note": "R(a theta) != d theta or I(a theta) != 0",
                    })));
                }
                let adk = a_map(&ctx.pair, &theta.d());
                let zero =
                    DifferentialTriple::zero(&ctx.ring, &ctx.pair, n + 2);
                ctx.expect_equivalent(
                    "a(d kappa) ~ 0",
                    json!({ "degree": n, "sample": i }),
                    &adk,
                    &zero,
                )?;
            }
        }
        Ok(json!({ "samples_per_degree": ctx.job.samples }))
    });

    if ctx.complex == "circle" && ctx.job.coefficients == "integers" {
        ctx.claim("axioms/half-volume-has-order-two", |ctx, _| {
            let tau = crate::forms::circle_volume(&ctx.ring, &ctx.pair.space);
            let half = a_map(&ctx.pair, &tau.scale(&rat(1, 2)).neg());
            let zero = DifferentialTriple::zero(&ctx.ring, &ctx.pair, 2);
            let Equivalence::Distinct(d) = equivalent(&half, &zero)? else {
                return Err(counterexample(json!({
                    "note": "a(tau/2) was equivalent to zero",
                    "triple": digest(&half),
                })));
            };
            let doubled = half.add(&half, &CorrectionData::default())?;
            ctx.expect_equivalent(
                "2 a(tau/2) ~ 0",
                json!({}),
                &doubled,
                &zero,
            )?;
            Ok(json!({ "flat": half.is_flat(), "distinct_reason": d.reason }))
        });
    }

    if ctx.job.corrupt {
        ctx.claim("axioms/corrupted-fixture", |ctx, _| {
            // deliberately broken input: doubling the characteristic
            // cocycle of a lifted class without touching the curvature
            let fixture = (1..=2).find_map(|n| {
                lambda_cocycle_basis(
                    &ctx.ring,
                    &ctx.pair.space,
                    &ctx.pair.sub_cells,
                    n,
                )
                .into_iter()
                .find(|z| !z.is_zero())
            });
            let Some(z) = fixture else {
                return Err(counterexample(json!({
                    "note": "no nonzero cocycle to corrupt on this complex",
                })));
            };
            let t = lift_cocycle(&ctx.ring, &ctx.pair, &z, ctx.budget())?;
            match DifferentialTriple::new(
                &t.base,
                t.degree,
                t.c.add(&t.c),
                t.omega.clone(),
                t.h.clone(),
            ) {
                Err(e) => Err(counterexample(json!({
                    "note": "corrupted fixture rejected, reporting the violation",
                    "violation": e.to_string(),
                    "fixture": digest(&t),
                }))),
                Ok(accepted) => Err(counterexample(json!({
                    "note": "corrupted fixture was accepted",
                    "fixture": digest(&accepted),
                }))),
            }
        });
    }
}

fn suite_group(ctx: &mut Ctx) {
    ctx.claim("group/laws-up-to-equivalence", |ctx, rng| {
        let cd = CorrectionData::default();
        let mut checked = 0;
        for n in 1..=2 {
            let zero = DifferentialTriple::zero(&ctx.ring, &ctx.pair, n);
            for i in 0..ctx.job.samples {
                let t0 = ctx.sample(n, rng)?;
                let t1 = ctx.sample(n, rng)?;
                let t2 = ctx.sample(n, rng)?;
                let here = json!({ "degree": n, "sample": i });

                let sum = t0.add(&t1, &cd)?;
                let rev = ctx.perturb(&t1.add(&t0, &cd)?, rng)?;
                ctx.expect_equivalent("commutativity", here.clone(), &sum, &rev)?;

                let left = sum.add(&t2, &cd)?;
                let right =
                    ctx.perturb(&t0.add(&t1.add(&t2, &cd)?, &cd)?, rng)?;
                ctx.expect_equivalent("associativity", here.clone(), &left, &right)?;

                let inv = ctx.perturb(&t0.add(&t0.neg(&cd)?, &cd)?, rng)?;
                ctx.expect_equivalent("inverses", here.clone(), &inv, &zero)?;

                let idn = t0.add(&zero, &cd)?;
                ctx.expect_equivalent("unit", here, &idn, &t0)?;
                checked += 1;
            }
        }
        Ok(json!({ "samples": checked, "degrees": [1, 2] }))
    });
}

fn suite_ring(ctx: &mut Ctx) {
    if !ctx.pair.sub_cells.is_empty() {
        ctx.claim("ring/scope", |_, _| {
            Ok(json!({
                "note": "the relative groups are modules, not rings; ring laws run on absolute complexes"
            }))
        });
        return;
    }
    let samples = ctx.job.samples.min(3);
    ctx.claim("ring/even-laws", |ctx, rng| {
        let bh = BHomotopy::new(&ctx.ring);
        let cd = CorrectionData::default();
        let one = unit(&ctx.ring, &ctx.pair);
        for i in 0..samples {
            let here = json!({ "sample": i });
            let x = ctx.sample(2, rng)?;
            let y = ctx.sample(2, rng)?;
            let z = ctx.sample(2, rng)?;
            let w = ctx.sample(0, rng)?;

            let ux = product_even(&one, &x, &bh, &cd)?;
            let xu = product_even(&x, &one, &bh, &cd)?;
            ctx.expect_equivalent("left unit", here.clone(), &ux, &x)?;
            ctx.expect_equivalent("right unit", here.clone(), &xu, &x)?;

            let xy = product_even(&x, &y, &bh, &cd)?;
            let yx = ctx.perturb(&product_even(&y, &x, &bh, &cd)?, rng)?;
            ctx.expect_equivalent("commutativity", here.clone(), &xy, &yx)?;

            let xz_y = product_even(&x.add(&z, &cd)?, &y, &bh, &cd)?;
            let split = xy.add(&product_even(&z, &y, &bh, &cd)?, &cd)?;
            ctx.expect_equivalent("bilinearity", here.clone(), &xz_y, &split)?;

            let left = product_even(&xy, &w, &bh, &cd)?;
            let right = product_even(&x, &product_even(&y, &w, &bh, &cd)?, &bh, &cd)?;
            ctx.expect_equivalent("associativity", here, &left, &right)?;
        }
        Ok(json!({ "samples": samples }))
    });

    ctx.claim("ring/a-is-a-module-map", |ctx, rng| {
        let bh = BHomotopy::new(&ctx.ring);
        let cd = CorrectionData::default();
        for i in 0..samples {
            let x = ctx.sample(2, rng)?;
            let theta = ctx.random_form(&ctx.pair.space, 1, rng);
            let lhs = product_even(&a_map(&ctx.pair, &theta), &x, &bh, &cd)?;
            let rhs = a_map(&ctx.pair, &theta.wedge(x.curvature()));
            ctx.expect_equivalent(
                "a(theta) x ~ a(theta wedge R(x))",
                json!({ "sample": i }),
                &lhs,
                &rhs,
            )?;
        }
        Ok(json!({ "samples": samples }))
    });

    if ctx.complex == "torus" {
        ctx.claim("ring/pullback-is-multiplicative", |ctx, rng| {
            let t2 = builtins::torus();
            let t2b = Product::new(&t2.right, &t2.left);
            let tw = twist(&t2, &t2b);
            let base = SimplicialPair::absolute(&t2.total);
            let base_b = SimplicialPair::absolute(&t2b.total);
            let bh = BHomotopy::new(&ctx.ring);
            let cd = CorrectionData::default();
            for i in 0..2 {
                let x = random_triple(&ctx.ring, &base_b, 2, rng, ctx.budget())?;
                let y = random_triple(&ctx.ring, &base_b, 2, rng, ctx.budget())?;
                let xy = product_even(&x, &y, &bh, &cd)?;
                let lhs = xy.pullback(&base, &tw)?;
                let rhs = product_even(
                    &x.pullback(&base, &tw)?,
                    &y.pullback(&base, &tw)?,
                    &bh,
                    &cd,
                )?;
                ctx.expect_equivalent(
                    "f*(xy) ~ f*(x) f*(y)",
                    json!({ "sample": i }),
                    &lhs,
                    &rhs,
                )?;
            }
            Ok(json!({ "samples": 2 }))
        });
    }
}

fn suite_integration(ctx: &mut Ctx) {
    if !ctx.pair.sub_cells.is_empty() {
        ctx.claim("integration/scope", |_, _| {
            Ok(json!({
                "note": "integration runs over S^1 x M for absolute M; skipped for pairs"
            }))
        });
        return;
    }
    let samples = ctx.job.samples.min(4);
    ctx.claim("integration/fiber-integral", |ctx, rng| {
        let m = &ctx.pair.space;
        let cp = circle_product(m);
        let total = SimplicialPair::absolute(&cp.prod.total);
        let base_m = SimplicialPair::absolute(m);
        let edge = cp.prod.left.cell_by_name("e").unwrap();
        let cd = CorrectionData::default();
        for i in 0..samples {
            let here = json!({ "sample": i });

            // pullbacks from the base integrate to zero on the nose
            let s = random_triple(&ctx.ring, &base_m, 1, rng, ctx.budget())?;
            let pb = s.pullback(&total, &cp.prod.pr2)?;
            let z = integrate::integrate_abs(&pb, &cp)?;
            if !(z.c.is_zero() && z.h.is_zero() && z.omega.is_zero()) {
                return Err(counterexample(json!({
                    "law": "int pr2* = 0",
                    "context": here,
                    "result": digest(&z),
                })));
            }

            // linearity
            let y0 = random_triple(&ctx.ring, &cp.pair, 2, rng, ctx.budget())?;
            let y1 = random_triple(&ctx.ring, &cp.pair, 2, rng, ctx.budget())?;
            let int_sum = integrate::integrate_rel(&y0.add(&y1, &cd)?, &cp)?;
            let sum_int = integrate::integrate_rel(&y0, &cp)?
                .add(&integrate::integrate_rel(&y1, &cp)?, &cd)?;
            ctx.expect_equivalent("linearity", here.clone(), &int_sum, &sum_int)?;

            // absolute and relative integrals agree through j*
            let jy = DifferentialTriple::new(
                &total,
                2,
                y0.c.clone(),
                y0.omega.clone(),
                y0.h.clone(),
            )?;
            let via_abs = integrate::integrate_abs(&jy, &cp)?;
            let via_rel = integrate::integrate_rel(&y0, &cp)?;
            ctx.expect_equivalent("int o j*", here.clone(), &via_abs, &via_rel)?;

            // R and I commute with integration exactly
            let it = integrate::integrate_rel(&y0, &cp)?;
            let r_ok = it
                .curvature()
                .sub(&fiber_integrate(y0.curvature(), &cp.prod, edge))
                .is_zero();
            let i_ok = it
                .char_cocycle()
                .sub(&integrate_fiber(&y0.c, &cp.prod, edge))
                .is_zero();
            if !(r_ok && i_ok) {
                return Err(counterexample(json!({
                    "law": "R/I commute with integration",
                    "context": here,
                    "input": digest(&y0),
                })));
            }

            // integration anticommutes with a
            let theta = {
                let fs = form_space(&ctx.ring, &cp.prod.total, 1, 2, Some(&cp.pair));
                let mut out = PLForm::zero(&ctx.ring, &cp.prod.total, 1);
                for f in fs {
                    if rng.gen_bool(0.4) {
                        out = out.add(&f.scale(&rat(rng.gen_range(-2..=2), 1)));
                    }
                }
                out
            };
            let at = a_map(&cp.pair, &theta);
            let lhs = integrate::integrate_rel(&at, &cp)?;
            let fib = fiber_integrate(&theta, &cp.prod, edge);
            let rhs = a_map(&base_m, &fib).neg(&cd)?;
            ctx.expect_equivalent("int a = -a int", here, &lhs, &rhs)?;
        }
        Ok(json!({ "samples": samples }))
    });
}

fn suite_pairs(ctx: &mut Ctx) {
    let samples = ctx.job.samples.min(2);
    ctx.claim("pairs/six-term-exactness", |ctx, rng| {
        let mut nodes = vec![];
        for n in 1..=2 {
            let rep = pair_sequence(
                &ctx.ring,
                &ctx.pair,
                n,
                rng,
                samples,
                ctx.budget(),
            )
            .map_err(|e| counterexample(json!({ "error": e.to_string() })))?;
            if !rep.exact() {
                return Err(counterexample(json!({
                    "degree": n,
                    "nodes": format!("{:?}", rep.nodes),
                })));
            }
            nodes.push(json!({
                "degree": n,
                "nodes_checked": rep.nodes.len(),
            }));
        }
        Ok(json!({
            "degrees": nodes,
            "subcomplex_empty": ctx.pair.sub_cells.is_empty(),
        }))
    });
}

fn suite_products_odd(ctx: &mut Ctx) {
    if ctx.complex != "torus" && ctx.complex != "circle" {
        ctx.claim("products-odd/scope", |_, _| {
            Ok(json!({
                "note": "odd-degree product claims run on circle and torus"
            }))
        });
        return;
    }
    if ctx.complex == "torus" {
        ctx.claim("products-odd/cup-pairing", |ctx, _| {
            let t2 = builtins::torus();
            let base = SimplicialPair::absolute(&t2.total);
            let bh = BHomotopy::new(&ctx.ring);
            let none = BTreeSet::new();
            let z1 = circle_class(&ctx.ring, &t2.left).pullback(&base, &t2.pr1)?;
            let z2 = circle_class(&ctx.ring, &t2.right).pullback(&base, &t2.pr2)?;
            let p = product_full(&z1, &z2, &bh, ctx.budget())?;
            let oracle = z1.c.cup(&z2.c);
            let plus = p.c.sub(&oracle);
            let minus = p.c.add(&oracle);
            let matches = lambda_class_trivial(&ctx.ring, &t2.total, &none, &plus)
                || lambda_class_trivial(&ctx.ring, &t2.total, &none, &minus);
            let generator =
                !lambda_class_trivial(&ctx.ring, &t2.total, &none, &p.c);
            if !(matches && generator) {
                return Err(counterexample(json!({
                    "product_class": digest(&p),
                    "cup_oracle": format!("{:?}", oracle.values),
                    "matches_oracle": matches,
                    "nonzero": generator,
                })));
            }
            Ok(json!({ "oracle": "simplicial cup product of the dual edge cocycles" }))
        });

        ctx.claim("products-odd/anticommutativity", |ctx, _| {
            let t2 = builtins::torus();
            let base = SimplicialPair::absolute(&t2.total);
            let bh = BHomotopy::new(&ctx.ring);
            let cd = CorrectionData::default();
            let z1 = circle_class(&ctx.ring, &t2.left).pullback(&base, &t2.pr1)?;
            let z2 = circle_class(&ctx.ring, &t2.right).pullback(&base, &t2.pr2)?;
            let p12 = product_full(&z1, &z2, &bh, ctx.budget())?;
            let p21 = product_full(&z2, &z1, &bh, ctx.budget())?;
            ctx.expect_equivalent(
                "z1 z2 ~ -(z2 z1)",
                json!({}),
                &p12,
                &p21.neg(&cd)?,
            )?;
            Ok(json!({}))
        });
    }
    if ctx.complex == "circle" {
        ctx.claim("products-odd/representative-independence", |ctx, rng| {
            let s1 = &ctx.pair.space;
            let bh = BHomotopy::new(&ctx.ring);
            let none = BTreeSet::new();
            let x = circle_class(&ctx.ring, s1);
            let y = ctx.sample(0, rng)?;
            let baseline = product_full(&x, &y, &bh, ctx.budget())?;
            for i in 0..ctx.job.samples {
                let b = random_z_cochain(&ctx.ring, s1, &none, 0, rng);
                let x2 = DifferentialTriple::new(
                    &ctx.pair,
                    1,
                    x.c.add(&b.delta()),
                    x.omega.clone(),
                    x.h.sub(&b.rho()),
                )?;
                let p = product_full(&x2, &y, &bh, ctx.budget())?;
                ctx.expect_equivalent(
                    "product of equivalent representatives",
                    json!({ "sample": i }),
                    &p,
                    &baseline,
                )?;
            }
            Ok(json!({ "representatives": ctx.job.samples }))
        });

        ctx.claim("products-odd/integration-compatibility", |ctx, rng| {
            let s1 = &ctx.pair.space;
            let cp = circle_product(s1);
            let total = SimplicialPair::absolute(&cp.prod.total);
            let bh_total = BHomotopy::new(&ctx.ring);
            let bh_m = BHomotopy::new(&ctx.ring);
            let cd = CorrectionData::default();
            for i in 0..ctx.job.samples.min(3) {
                let x = random_triple(&ctx.ring, &total, 2, rng, ctx.budget())?;
                let y = ctx.sample(0, rng)?;
                let y_up = y.pullback(&total, &cp.prod.pr2)?;
                let xy = product_even(&x, &y_up, &bh_total, &cd)?;
                let lhs = integrate::integrate_abs(&xy, &cp)?;
                let rhs = product_full(
                    &integrate::integrate_abs(&x, &cp)?,
                    &y,
                    &bh_m,
                    ctx.budget(),
                )?;
                ctx.expect_equivalent(
                    "int (x pr2* y) ~ (int x) y",
                    json!({ "sample": i }),
                    &lhs,
                    &rhs,
                )?;
            }
            Ok(json!({ "samples": ctx.job.samples.min(3) }))
        });
    }
}
