//! Seeded property suites. Every trial draws from its own generator derived
//! from `(seed, property, trial)`, so reports do not depend on evaluation
//! order and identical settings give byte-identical reports.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sgq_core::flag_quotient::{normal_form, standard_parabolic_member};
use sgq_core::grassmannian::{act, chart_down, chart_up, orbit_map, points_equal, standard_point, GrassmannianPoint};
use sgq_core::json::{encode_element, encode_matrix, encode_ncoordinates, encode_point};
use sgq_core::sample::{self, trial_rng, Bounds};
use sgq_core::scalar;
use sgq_core::smoothness::{is_smooth_at, rank_at_point, Presentation, RationalPoint};
use sgq_core::{BlockProfile, Error, Parity, Ring, SuperElement, SuperMatrix, SuperRingSpec, Variable};

pub const SUITES: [&str; 7] = ["kernel", "matrix", "factorization", "chart", "action", "smoothness", "all"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Size {
    pub profile: BlockProfile,
    /// Number of odd generators of the test algebra.
    pub q: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub trials: u64,
    pub seed: u64,
    pub size: Size,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub size: Size,
    pub coeff: i64,
    pub passed: bool,
    pub properties: Vec<PropertyReport>,
}

struct Ctx {
    bp: BlockProfile,
    grassmann: Ring,
    /// Two even generators next to the odd ones, for kernel laws.
    mixed: Ring,
    bounds: Bounds,
}

type Check = Result<(), Value>;

struct Property {
    suite: &'static str,
    name: &'static str,
    run: fn(&mut ChaCha8Rng, &Ctx) -> Check,
}

fn fail(what: &str, inputs: Value) -> Check {
    Err(json!({ "violation": what, "inputs": inputs }))
}

fn domain(e: Error) -> Value {
    json!({ "error": { "kind": e.kind(), "detail": e.to_string() } })
}

fn parity<R: Rng>(rng: &mut R) -> Parity {
    if rng.gen() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn random_point(rng: &mut ChaCha8Rng, ctx: &Ctx, g: &SuperMatrix) -> Result<GrassmannianPoint, Value> {
    let bp = &ctx.bp;
    let h = sample::invertible(rng, &ctx.grassmann, bp.r, bp.s, &ctx.bounds);
    let span = orbit_map(g, bp).map_err(domain)?.span().mul(&h).map_err(domain)?;
    GrassmannianPoint::new(*bp, span).map_err(domain)
}

fn supercommutativity(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let (pa, pb) = (parity(rng), parity(rng));
    let a = sample::element(rng, &ctx.mixed, pa, &ctx.bounds);
    let b = sample::element(rng, &ctx.mixed, pb, &ctx.bounds);
    let ba = &b * &a;
    let expected = if pa.is_odd() && pb.is_odd() { -&ba } else { ba };
    if &a * &b != expected {
        return fail("ab = (-1)^{|a||b|} ba", json!({ "a": encode_element(&a), "b": encode_element(&b) }));
    }
    Ok(())
}

fn soul_nilpotency(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let e = &sample::element(rng, &ctx.mixed, Parity::Even, &ctx.bounds)
        + &sample::element(rng, &ctx.mixed, Parity::Odd, &ctx.bounds);
    if !e.soul().pow(ctx.mixed.num_odd() as u32 + 1).is_zero() {
        return fail("soul^(q+1) = 0", json!({ "element": encode_element(&e) }));
    }
    Ok(())
}

fn neumann_inverse(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let u = &sample::unit(rng, &ctx.mixed, &ctx.bounds) + &sample::soul(rng, &ctx.mixed, Parity::Odd, &ctx.bounds);
    let inv = u.inverse().map_err(domain)?;
    if !(&u * &inv).is_one() || !(&inv * &u).is_one() {
        return fail("u * u^-1 = 1", json!({ "u": encode_element(&u) }));
    }
    Ok(())
}

fn graded_leibniz(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let (pa, pb) = (parity(rng), parity(rng));
    let a = sample::element(rng, &ctx.mixed, pa, &ctx.bounds);
    let b = sample::element(rng, &ctx.mixed, pb, &ctx.bounds);
    let vars: Vec<Variable> = ctx.mixed.variables().collect();
    let v = vars[rng.gen_range(0..vars.len())];
    let first = &a.derivative(v) * &b;
    let second = &a * &b.derivative(v);
    let expected = if v.parity().is_odd() && pa.is_odd() { &first - &second } else { &first + &second };
    if (&a * &b).derivative(v) != expected {
        return fail(
            "d(ab) = (da)b + (-1)^{|d||a|} a(db)",
            json!({ "a": encode_element(&a), "b": encode_element(&b), "variable": ctx.mixed.name(v) }),
        );
    }
    Ok(())
}

fn ber_multiplicative(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let (m, n) = (ctx.bp.m, ctx.bp.n);
    let x = sample::invertible(rng, &ctx.grassmann, m, n, &ctx.bounds);
    let y = sample::invertible(rng, &ctx.grassmann, m, n, &ctx.bounds);
    let lhs = x.mul(&y).and_then(|xy| xy.berezinian()).map_err(domain)?;
    let rhs = &x.berezinian().map_err(domain)? * &y.berezinian().map_err(domain)?;
    if lhs != rhs {
        return fail("Ber(XY) = Ber(X) Ber(Y)", json!({ "x": encode_matrix(&x), "y": encode_matrix(&y) }));
    }
    Ok(())
}

fn two_sided_inverse(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let x = sample::invertible(rng, &ctx.grassmann, ctx.bp.m, ctx.bp.n, &ctx.bounds);
    let inv = x.inverse().map_err(domain)?;
    let ok = x.mul(&inv).map_err(domain)?.is_identity() && inv.mul(&x).map_err(domain)?.is_identity();
    if !ok {
        return fail("X X^-1 = X^-1 X = 1", json!({ "x": encode_matrix(&x) }));
    }
    Ok(())
}

fn factorization(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let g = sample::big_cell(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let (n, p) = normal_form(&g, &ctx.bp).map_err(domain)?;
    let ok = n.assemble().mul(&p).map_err(domain)? == g && standard_parabolic_member(&p, &ctx.bp).map_err(domain)?;
    if !ok {
        return fail("g = n p with p in P", json!({ "g": encode_matrix(&g) }));
    }
    Ok(())
}

fn coset_invariance(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let g = sample::big_cell(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let p = sample::parabolic(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let n1 = normal_form(&g, &ctx.bp).map_err(domain)?.0;
    let n2 = normal_form(&g.mul(&p).map_err(domain)?, &ctx.bp).map_err(domain)?.0;
    if n1 != n2 {
        return fail("n(g p) = n(g)", json!({ "g": encode_matrix(&g), "p": encode_matrix(&p) }));
    }
    Ok(())
}

fn chart_down_up(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let c = sample::ncoordinates(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let back = chart_up(&c).and_then(|x| chart_down(&x)).map_err(domain)?;
    if back != c {
        return fail("chart_down(chart_up(n)) = n", json!({ "n": encode_ncoordinates(&c) }));
    }
    Ok(())
}

fn chart_up_down(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let g = sample::big_cell(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let x = random_point(rng, ctx, &g)?;
    let y = chart_down(&x).and_then(|c| chart_up(&c)).map_err(domain)?;
    if !points_equal(&x, &y).map_err(domain)? {
        return fail("chart_up(chart_down(x)) = x", json!({ "x": encode_point(&x) }));
    }
    Ok(())
}

fn identity_action(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let g = sample::mixed_invertible(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let x = random_point(rng, ctx, &g)?;
    let one = SuperMatrix::identity(&ctx.grassmann, ctx.bp.m, ctx.bp.n);
    if act(&one, &x).map_err(domain)? != x {
        return fail("1 . x = x", json!({ "x": encode_point(&x) }));
    }
    Ok(())
}

fn action_compatibility(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let (ring, bp, b) = (&ctx.grassmann, &ctx.bp, &ctx.bounds);
    let g1 = sample::mixed_invertible(rng, ring, bp, b);
    let g2 = sample::mixed_invertible(rng, ring, bp, b);
    let g0 = sample::mixed_invertible(rng, ring, bp, b);
    let x = random_point(rng, ctx, &g0)?;
    let lhs = act(&g1.mul(&g2).map_err(domain)?, &x).map_err(domain)?;
    let rhs = act(&g2, &x).and_then(|y| act(&g1, &y)).map_err(domain)?;
    if lhs != rhs {
        return fail(
            "(g1 g2) . x = g1 . (g2 . x)",
            json!({ "g1": encode_matrix(&g1), "g2": encode_matrix(&g2), "x": encode_point(&x) }),
        );
    }
    Ok(())
}

fn stabilizer(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let g = sample::mixed_invertible(rng, &ctx.grassmann, &ctx.bp, &ctx.bounds);
    let origin = standard_point(&ctx.bp, &ctx.grassmann).map_err(domain)?;
    let fixes = points_equal(&act(&g, &origin).map_err(domain)?, &origin).map_err(domain)?;
    if fixes != standard_parabolic_member(&g, &ctx.bp).map_err(domain)? {
        return fail("g . W = W iff g in P", json!({ "g": encode_matrix(&g) }));
    }
    Ok(())
}

/// Two even relations in `x, y | a, b` vanishing at the origin.
fn relations_through_origin(rng: &mut ChaCha8Rng, ctx: &Ctx) -> (Ring, Vec<SuperElement>) {
    let r = SuperRingSpec::new(["x", "y"], ["a", "b"]).expect("fixed names");
    let rels = (0..2)
        .map(|_| {
            let e = sample::element(rng, &r, Parity::Even, &ctx.bounds);
            let shifted = &e - &SuperElement::constant(&r, e.constant_term());
            if shifted.is_zero() {
                SuperElement::var(&r, "x").expect("generator")
            } else {
                shifted
            }
        })
        .collect();
    (r, rels)
}

fn origin() -> RationalPoint {
    RationalPoint::new([("x", scalar::zero()), ("y", scalar::zero())])
}

fn rank_row_invariance(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let (r, rels) = relations_through_origin(rng, ctx);
    let c = scalar::from_int(rng.gen_range(-3..=3));
    let mixed = &rels[1] + &rels[0].scale(&c);
    if mixed.is_zero() {
        return Ok(());
    }
    let before = Presentation::absolute(&r, rels.clone(), vec![]).map_err(domain)?;
    let after = Presentation::absolute(&r, vec![rels[0].clone(), mixed], vec![]).map_err(domain)?;
    if rank_at_point(&before, &origin()).map_err(domain)? != rank_at_point(&after, &origin()).map_err(domain)? {
        return fail(
            "rank unchanged by f2 -> f2 + c f1",
            json!({ "f1": encode_element(&rels[0]), "f2": encode_element(&rels[1]), "c": scalar::display(&c) }),
        );
    }
    Ok(())
}

fn free_extension(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Check {
    let (r, rels) = relations_through_origin(rng, ctx);
    let pres = Presentation::absolute(&r, rels.clone(), vec![]).map_err(domain)?;
    let ext = pres.free_extension(&["z"], &["c"]).map_err(domain)?;
    let before = is_smooth_at(&pres, &origin()).map_err(domain)?;
    let after = is_smooth_at(&ext, &origin()).map_err(domain)?;
    let expected = before.relative_dimension.map(|(e, o)| (e + 1, o + 1));
    if after.smooth != before.smooth || after.relative_dimension != expected {
        return fail(
            "free extension by 1|1 adds 1|1 to the relative dimension",
            json!({ "relations": rels.iter().map(encode_element).collect::<Vec<_>>() }),
        );
    }
    Ok(())
}

const PROPERTIES: &[Property] = &[
    Property { suite: "kernel", name: "supercommutativity", run: supercommutativity },
    Property { suite: "kernel", name: "soul_nilpotency", run: soul_nilpotency },
    Property { suite: "kernel", name: "neumann_inverse", run: neumann_inverse },
    Property { suite: "kernel", name: "graded_leibniz", run: graded_leibniz },
    Property { suite: "matrix", name: "berezinian_multiplicative", run: ber_multiplicative },
    Property { suite: "matrix", name: "two_sided_inverse", run: two_sided_inverse },
    Property { suite: "factorization", name: "normal_form_reassembles", run: factorization },
    Property { suite: "factorization", name: "coset_invariance", run: coset_invariance },
    Property { suite: "chart", name: "chart_down_after_up", run: chart_down_up },
    Property { suite: "chart", name: "chart_up_after_down", run: chart_up_down },
    Property { suite: "action", name: "identity_acts_trivially", run: identity_action },
    Property { suite: "action", name: "action_compatibility", run: action_compatibility },
    Property { suite: "action", name: "stabilizer_is_parabolic", run: stabilizer },
    Property { suite: "smoothness", name: "rank_row_invariance", run: rank_row_invariance },
    Property { suite: "smoothness", name: "free_extension_dimension", run: free_extension },
];

pub fn run_suite(suite: &str, settings: &Settings) -> sgq_core::Result<Report> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let q = settings.size.q;
    let ctx = Ctx {
        bp: settings.size.profile,
        grassmann: SuperRingSpec::grassmann(q)?,
        mixed: SuperRingSpec::new(["x", "y"], (1..=q).map(|i| format!("t{i}")))?,
        bounds: Bounds { coeff: settings.coeff, ..Bounds::default() },
    };
    let mut properties = Vec::new();
    for (id, prop) in PROPERTIES.iter().enumerate() {
        if suite != "all" && suite != prop.suite {
            continue;
        }
        let mut report = PropertyReport { name: prop.name, trials: settings.trials, passed: 0, failed: 0, counterexample: None };
        for trial in 0..settings.trials {
            let mut rng = trial_rng(settings.seed, id as u64, trial);
            match (prop.run)(&mut rng, &ctx) {
                Ok(()) => report.passed += 1,
                Err(details) => {
                    report.failed += 1;
                    if report.counterexample.is_none() {
                        report.counterexample = Some(json!({ "trial": trial, "details": details }));
                    }
                }
            }
        }
        properties.push(report);
    }
    Ok(Report {
        suite: suite.to_string(),
        seed: settings.seed,
        trials: settings.trials,
        size: settings.size,
        coeff: settings.coeff,
        passed: properties.iter().all(|p| p.failed == 0),
        properties,
    })
}
