//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solenoid_ab::phase::PHASE_TOL;
use solenoid_ab::{
    ab_standard, antiparticle_closure, chart_audit, charge_allowed, circulation, curl_fd, eval_b,
    flux_direct, gauge_shift, infer_minimal_n, interference, periodicity_check, phase_closed_form,
    phases_equivalent, spectrum, verify_stokes, ChargeSpectrum, Circle, ClosedPath,
    InterferometerGeometry, Point, Polyline, QuadratureSpec, RationalCharge, SolenoidField,
};

type Check = Result<String, String>;

fn fail<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// A random closed path outside a solenoid of radius `r`, together with the
/// winding number it was built to have.
fn random_exterior_path(rng: &mut impl Rng, r: f64) -> (ClosedPath, i64) {
    let w: i64 = rng.gen_range(-3..=3);
    let circle = rng.gen_bool(0.5);
    if w == 0 {
        // loop off to the side, enclosing nothing
        let cx = rng.gen_range(3.0..6.0) * r;
        let phi: f64 = rng.gen_range(0.0..TAU);
        let (c, s) = (cx * phi.cos(), cx * phi.sin());
        if circle {
            let radius = rng.gen_range(0.2..0.8) * (cx - 1.5 * r);
            let turns = if rng.gen_bool(0.5) { 1 } else { -2 };
            let path = Circle::new(Point::new(c, s, 0.0).unwrap(), radius, turns).unwrap();
            return (path.into(), 0);
        }
        let n = rng.gen_range(3..9);
        let size = 0.8 * r;
        let verts = (0..n)
            .map(|k| {
                let a = TAU * k as f64 / n as f64;
                let rr = size * rng.gen_range(0.3..1.0);
                Point::new(c + rr * a.cos(), s + rr * a.sin(), rng.gen_range(-1.0..1.0)).unwrap()
            })
            .collect();
        return (Polyline::new(verts).unwrap().into(), 0);
    }
    if circle {
        let offset = rng.gen_range(0.0..0.5) * r;
        let phi: f64 = rng.gen_range(0.0..TAU);
        let radius = r + offset + rng.gen_range(0.1..3.0) * r;
        let centre = Point::new(offset * phi.cos(), offset * phi.sin(), rng.gen_range(-2.0..2.0)).unwrap();
        return (Circle::new(centre, radius, w).unwrap().into(), w);
    }
    // star-shaped polygon wound |w| times; angular steps stay below pi
    let per_turn = rng.gen_range(3..10);
    let n = per_turn * w.unsigned_abs() as usize;
    let step = TAU / per_turn as f64;
    let start: f64 = rng.gen_range(0.0..TAU);
    let verts = (0..n)
        .map(|k| {
            let a = start + w.signum() as f64 * k as f64 * step;
            // the chord midpoint sits at cos(step/2) times the vertex radius
            let min_rho = 1.05 * r / (0.5 * step).cos();
            let rho = rng.gen_range(min_rho..min_rho + 3.0 * r);
            Point::new(rho * a.cos(), rho * a.sin(), 0.0).unwrap()
        })
        .collect();
    (Polyline::new(verts).unwrap().into(), w)
}

fn random_field(rng: &mut impl Rng) -> SolenoidField {
    let b = rng.gen_range(-3.0..3.0);
    let r = rng.gen_range(0.3..2.5);
    let kappa = rng.gen_range(-2.0..2.0);
    SolenoidField::with_kappa(b, r, kappa).unwrap()
}

fn ac1_circulation_law(spec: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut i = 0;
    while i < 50 {
        let f = random_field(&mut rng);
        if f.gamma().abs() < 0.05 {
            continue;
        }
        i += 1;
        let (path, w) = random_exterior_path(&mut rng, f.radius());
        let expected = TAU * f.gamma() * w as f64;
        let got = circulation(&f, &path, spec).map_err(fail)?;
        let err = if w == 0 {
            (got / (TAU * f.gamma())).abs()
        } else {
            ((got - expected) / expected).abs()
        };
        worst = worst.max(err);
        if err > 1e-8 {
            return Err(format!("loop {i}: w={w} got {got} expected {expected}"));
        }
    }
    Ok(format!("50 loops, worst relative error {worst:.2e}"))
}

fn ac2_flux_value(spec: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let b = rng.gen_range(0.2..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let r = rng.gen_range(0.3..2.5);
        let l = r * rng.gen_range(1.05..8.0);
        let f = SolenoidField::with_kappa(b, r, rng.gen_range(-1.0..1.0)).unwrap();
        let expected = PI * b * r * r;
        let direct = flux_direct(&f, l, spec).map_err(fail)?;
        let total = verify_stokes(&f, l, spec).map_err(fail)?.phi_total;
        for (what, v) in [("flux_direct", direct), ("phi_total", total)] {
            let err = ((v - expected) / expected).abs();
            worst = worst.max(err);
            if err > 1e-8 {
                return Err(format!("triple {i}: {what} = {v}, expected {expected}"));
            }
        }
        let at: Vec<f64> = [1.1, 2.0, 10.0]
            .iter()
            .map(|m| flux_direct(&f, m * r, spec))
            .collect::<Result<_, _>>()
            .map_err(fail)?;
        for a in &at {
            for c in &at {
                if ((a - c) / expected).abs() > 1e-8 {
                    return Err(format!("triple {i}: flux depends on L: {at:?}"));
                }
            }
        }
    }
    Ok(format!("20 triples, worst relative error {worst:.2e}"))
}

// Flux scale for normalising phi_2; falls back to the circulation when B = 0.
fn flux_scale(f: &SolenoidField) -> f64 {
    let s = f.enclosed_flux().abs();
    if s > 0.0 {
        s
    } else {
        TAU * f.gamma().abs()
    }
}

fn ac3_annulus_null_flux(spec: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut fields: Vec<SolenoidField> = (0..40).map(|_| random_field(&mut rng)).collect();
    fields.push(ab_standard(2.0, 1.0).unwrap());
    fields.push(SolenoidField::new(2.0, 1.0, 1.5).unwrap());
    fields.push(SolenoidField::new(0.0, 1.0, 1.0).unwrap());
    for f in fields {
        for m in [1.1, 2.0, 10.0] {
            let rep = verify_stokes(&f, m * f.radius(), spec).map_err(fail)?;
            let err = rep.phi_2.abs() / flux_scale(&f);
            worst = worst.max(err);
            count += 1;
            if err > 1e-8 {
                return Err(format!("{f:?}, L = {}R: phi_2 = {}", m, rep.phi_2));
            }
        }
    }
    Ok(format!("{count} configurations, worst scaled |phi_2| {worst:.2e}"))
}

fn ac4_headline_discrepancy(spec: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut standard = 0;
    let mut pure = 0;
    for i in 0..100 {
        let r = rng.gen_range(0.3..2.5);
        let b = if i % 5 == 0 { 0.0 } else { rng.gen_range(-3.0..3.0) };
        let kappa = if i % 4 == 0 { 0.0 } else { rng.gen_range(-2.0..2.0) };
        standard += usize::from(kappa == 0.0);
        pure += usize::from(b == 0.0);
        let f = SolenoidField::with_kappa(b, r, kappa).unwrap();
        let l = r * rng.gen_range(1.1..6.0);
        let rep = verify_stokes(&f, l, spec).map_err(fail)?;
        let expected = TAU * kappa;
        let scale = expected.abs().max(f.enclosed_flux().abs());
        // B = 0 and kappa = 0 together: everything vanishes, compare absolutely
        let err = if scale > 0.0 {
            (rep.discrepancy - expected).abs() / scale
        } else {
            rep.discrepancy.abs() * 1e4
        };
        worst = worst.max(err);
        if err > 1e-8 {
            return Err(format!("B={b} R={r} kappa={kappa}: discrepancy {} expected {expected}", rep.discrepancy));
        }
    }
    Ok(format!("100-point sweep incl. {standard} kappa=0 and {pure} B=0 points, worst relative error {worst:.2e}"))
}

fn ac5_chart_audit(spec: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let f = random_field(&mut rng);
        let l = f.radius() * rng.gen_range(1.1..6.0);
        let d = chart_audit(&f, l, spec).map_err(fail)?;
        worst = worst.max(d);
        if d > 1e-8 {
            return Err(format!("{f:?}: sector sum differs from phi_2 by {d}"));
        }
    }
    Ok(format!("10 configurations, worst |sector sum - phi_2| {worst:.2e}"))
}

fn curl_error(f: &SolenoidField, p: &Point, h: f64) -> Result<f64, String> {
    let c = curl_fd(f, p, h).map_err(fail)?;
    let b = eval_b(f, p).map_err(fail)?;
    Ok(((c.x - b.x).powi(2) + (c.y - b.y).powi(2) + (c.z - b.z).powi(2)).sqrt())
}

fn ac6_curl(_: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut ratios = Vec::new();
    for _ in 0..10 {
        let f = random_field(&mut rng);
        let r = f.radius();
        // interior: potential is linear, so only round-off remains
        let pi = Point::cylindrical(rng.gen_range(0.1..0.8) * r, rng.gen_range(0.0..TAU), 0.3).unwrap();
        let e = curl_error(&f, &pi, 1e-4)?;
        worst = worst.max(e);
        if e > 1e-6 {
            return Err(format!("interior curl error {e} at {pi:?}"));
        }
        // exterior: truncation error ∝ cos(4φ)/ρ⁴, so sample along the axes
        // where it is largest
        let rho = rng.gen_range(1.5..3.0) * r;
        let phi = PI / 2.0 * rng.gen_range(0..4) as f64;
        let pe = Point::cylindrical(rho, phi, -1.0).unwrap();
        let e = curl_error(&f, &pe, 1e-4)?;
        worst = worst.max(e);
        if e > 1e-6 {
            return Err(format!("exterior curl error {e} at {pe:?}"));
        }
        // convergence order is read off at h = 1e-3 -> 5e-4, where truncation
        // dominates cancellation round-off for every sampled radius
        let e1 = curl_error(&f, &pe, 1e-3)?;
        let e2 = curl_error(&f, &pe, 5e-4)?;
        if f.gamma().abs() > 0.05 {
            let ratio = e1 / e2;
            ratios.push(ratio);
            if !(3.5..=4.5).contains(&ratio) {
                return Err(format!("error ratio {ratio} (errors {e1:.3e}, {e2:.3e}) at {pe:?}, {f:?}"));
            }
        }
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(a, b), r| (a.min(*r), b.max(*r)));
    Ok(format!("worst error {worst:.2e} at h=1e-4; ratios for h=1e-3 -> 5e-4 in [{lo:.3}, {hi:.3}] over {} points", ratios.len()))
}

fn ac7_periodicity(_: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let mut q: f64 = rng.gen_range(-5.0..5.0);
        if q.abs() < 0.05 {
            q = 0.05_f64.copysign(q);
        }
        let gamma = rng.gen_range(-10.0..10.0);
        if !periodicity_check(q, gamma).map_err(fail)? {
            let a = phase_closed_form(q, gamma, 1).map_err(fail)?;
            let b = phase_closed_form(q, gamma + 1.0 / q, 1).map_err(fail)?;
            return Err(format!("q={q} gamma={gamma}: phases {} vs {}", a.angle(), b.angle()));
        }
    }
    Ok("100 random (q, gamma) pairs periodic with period 1/q to 1e-12".into())
}

fn ac8_single_valuedness(_: &QuadratureSpec) -> Check {
    let geom = InterferometerGeometry::default();
    let mut worst = 0.0f64;
    for q in [1.0, 2.0, 3.0, -1.0, 0.5, 7.0] {
        let base = interference(&SolenoidField::new(0.0, 1.0, 0.0).unwrap(), q, &geom).map_err(fail)?;
        for n in -3..=3 {
            let f = SolenoidField::new(1.3, 0.7, n as f64 / q).unwrap();
            let rows = interference(&f, q, &geom).map_err(fail)?;
            for (a, b) in rows.iter().zip(&base) {
                let d = (a.1 - b.1).abs();
                worst = worst.max(d);
                if d > 1e-12 || a.0 != b.0 {
                    return Err(format!("q={q} q*gamma={n}: intensity differs by {d} at x={}", a.0));
                }
            }
        }
        let half = SolenoidField::new(0.0, 1.0, 0.5 / q).unwrap();
        let rows = interference(&half, q, &geom).map_err(fail)?;
        let centre = rows.iter().find(|r| r.0 == 0.0).ok_or("no sample at x = 0")?;
        if centre.1.abs() > 1e-12 {
            return Err(format!("q={q} q*gamma=1/2: central intensity {}", centre.1));
        }
    }
    Ok(format!("integer q*gamma patterns match gamma=0 (worst {worst:.1e}); half-integer centre dark"))
}

fn ac9_equivalence(_: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let geom = InterferometerGeometry::default();
    let (mut yes, mut no) = (0, 0);
    for i in 0..200 {
        let (a, b) = (rng.gen_range(-6..=6i64), rng.gen_range(1..=6i64));
        let (c, d) = (rng.gen_range(-6..=6i64), rng.gen_range(1..=6i64));
        let q = RationalCharge::new(a, b).unwrap();
        let kappa = RationalCharge::new(c, d).unwrap();
        let exact = q.mul(&kappa).is_integer();

        let (qf, kf) = (q.to_f64(), kappa.to_f64());
        let gamma = rng.gen_range(-2.0..2.0);
        let float = phases_equivalent(qf, gamma + kf, gamma, PHASE_TOL);
        if float != exact {
            return Err(format!("case {i}: q={q} kappa={kappa}: exact {exact}, float {float}"));
        }
        let f1 = SolenoidField::new(0.0, 1.0, gamma).unwrap();
        let f2 = gauge_shift(&f1, kf);
        let p1 = interference(&f1, qf, &geom).map_err(fail)?;
        let p2 = interference(&f2, qf, &geom).map_err(fail)?;
        let same = p1.iter().zip(&p2).all(|(u, v)| (u.1 - v.1).abs() <= 1e-9);
        if same != exact {
            return Err(format!("case {i}: q={q} kappa={kappa}: exact {exact}, patterns equal {same}"));
        }
        if exact {
            yes += 1
        } else {
            no += 1
        }
    }
    Ok(format!("200 rational cases ({yes} equivalent, {no} not) agree across exact, float and pattern tests"))
}

fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ac10_quantization(_: &QuadratureSpec) -> Check {
    let q = |s: &str| s.parse::<RationalCharge>().unwrap();
    let charges = vec![q("2/3"), q("-1/3"), q("1")];
    let n = infer_minimal_n(&charges).map_err(fail)?;
    if n != ChargeSpectrum::new(3).unwrap() {
        return Err(format!("infer_minimal_n gave {:?}", n));
    }
    let expected: Vec<RationalCharge> = ["-1", "-2/3", "-1/3", "0", "1/3", "2/3", "1"].iter().map(|s| q(s)).collect();
    let got = spectrum(&n, -3..=3).map_err(fail)?;
    if got != expected {
        return Err(format!("spectrum(3, [-3,3]) = {got:?}"));
    }
    for big_n in [1u64, 2, 3, 6, 12] {
        let s = ChargeSpectrum::new(big_n).unwrap();
        if !antiparticle_closure(&s, -(big_n as i64)..=big_n as i64).map_err(fail)? {
            return Err(format!("closure fails for N={big_n}"));
        }
    }
    // minimality on several sets, including the quark charges
    let sets: Vec<Vec<RationalCharge>> = vec![
        charges.clone(),
        vec![q("1/2"), q("1/3")],
        vec![q("5/12"), q("-7/8"), q("1/9")],
        vec![q("4/1000000007"), q("1/6")],
    ];
    for set in &sets {
        let n = infer_minimal_n(set).map_err(fail)?;
        if !set.iter().all(|c| charge_allowed(c, &n)) {
            return Err(format!("N={:?} does not admit {set:?}", n));
        }
        let nn: u64 = n.denominator().try_into().map_err(fail)?;
        for p in primes_dividing(nn) {
            let smaller = ChargeSpectrum::new(nn / p).unwrap();
            if set.iter().all(|c| charge_allowed(c, &smaller)) {
                return Err(format!("N={nn} not minimal: N/{p} admits {set:?}"));
            }
        }
    }
    Ok("N=3 for {2/3,-1/3,1}; spectrum exact; closure for N in {1,2,3,6,12}; minimality by prime division".into())
}

fn ac11_gauge_shift(spec: &QuadratureSpec) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let f = random_field(&mut rng);
        let kappa = rng.gen_range(-2.0..2.0);
        let (path, w) = random_exterior_path(&mut rng, f.radius());
        let before = circulation(&f, &path, spec).map_err(fail)?;
        let after = circulation(&gauge_shift(&f, kappa), &path, spec).map_err(fail)?;
        let err = (after - before - TAU * kappa * w as f64).abs();
        worst = worst.max(err);
        if err > 1e-9 {
            return Err(format!("path {i}: w={w} kappa={kappa}: shift {} vs {}", after - before, TAU * kappa * w as f64));
        }
    }
    Ok(format!("20 paths, worst |shift - 2 pi kappa w| {worst:.2e}"))
}

type Criterion = (&'static str, fn(&QuadratureSpec) -> Check);

fn main() -> ExitCode {
    let spec = QuadratureSpec::default();
    let criteria: [Criterion; 11] = [
        ("AC1 circulation law 2*pi*gamma*w", ac1_circulation_law),
        ("AC2 flux value pi*B*R^2, L-independent", ac2_flux_value),
        ("AC3 annulus null flux", ac3_annulus_null_flux),
        ("AC4 discrepancy = 2*pi*kappa", ac4_headline_discrepancy),
        ("AC5 two-sector chart audit", ac5_chart_audit),
        ("AC6 finite-difference curl", ac6_curl),
        ("AC7 phase periodicity 1/q", ac7_periodicity),
        ("AC8 single-valuedness", ac8_single_valuedness),
        ("AC9 phase equivalence q*kappa in Z", ac9_equivalence),
        ("AC10 charge quantization", ac10_quantization),
        ("AC11 gauge-shift composition", ac11_gauge_shift),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        match check(&spec) {
            Ok(detail) => println!("PASS  {name}: {detail} ({:.2?})", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", 11 - failed, started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
