//! Acceptance suite: every gate criterion at its pinned tolerance, one test
//! and one printed pass/fail line per criterion.
//!
//! Criterion 11 asserts positive semidefiniteness of the real-vector kernel
//! across dimensions {1, 2, 5}. On R^5 with order >= 2 the kernel's radial
//! profile has a sign-changing 5-dimensional Fourier transform, so that
//! assertion fails for genuinely mathematical reasons; the failure is kept
//! red on purpose rather than tuned away. See `tests/psd_structure.rs` in
//! the core crate for the pinned counterexample.

use num_complex::Complex64;
use polyrbf::kernels::{
    fock_kernel, i_am, krho_kernel, poly_rbf_kernel, rbf_fock_factorization_check, rbf_kernel,
    s_a_n, s_rho_a_n, true_poly_rbf_kernel, zaremba_partial, KernelFamily, KernelSpec,
    ZarembaKind,
};
use polyrbf::mlkit::{gram, krr_fit, krr_predict, psd_check, Dataset};
use polyrbf::polygauss::{
    apply, basis_element, eigen_residual, schrodinger_check, OperatorTag, PolyGaussRep,
};
use polyrbf::quad::{gauss_hermite, inner_plane, reproduce_rbf, Measure};
use polyrbf::specfun::{christoffel_darboux, factorial, mehler_sum, normalized_hermite};
use polyrbf::transforms::{
    conv_hermite_algebraic, conv_psi_closed, weyl_fock, weyl_normalization, weyl_rbf,
    weyl_true_poly, weyl_true_poly_composition, Extension, WeylParam,
};
use polyrbf_cli::suites::classical_rbf_krr;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(criterion: u32, label: &str, measured: f64, tol: f64) -> bool {
    let passed = measured <= tol && measured.is_finite();
    println!(
        "[{}] criterion {:>2}: {} (measured {:.3e}, tolerance {:.1e})",
        if passed { "PASS" } else { "FAIL" },
        criterion,
        label,
        measured,
        tol
    );
    passed
}

fn random_pairs(seed: u64, n: usize, radius: f64) -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            (
                c(rng.random_range(-radius..radius), rng.random_range(-radius..radius)),
                c(rng.random_range(-radius..radius), rng.random_range(-radius..radius)),
            )
        })
        .collect()
}

#[test]
fn criterion_01_convolution_triple_agreement() {
    let rule = gauss_hermite(96).unwrap();
    let mut worst = 0.0f64;
    for k in 0..=4u32 {
        for l in k..=4u32 {
            for &x in &[-2.0, -0.5, 0.0, 0.7, 1.9] {
                let mut numeric = 0.0;
                for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
                    numeric += w
                        * normalized_hermite(k, x - t)
                        * normalized_hermite(l, t)
                        * (t * t).exp();
                }
                let closed = conv_psi_closed(k, l, c(x, 0.0), Extension::Polyanalytic).re;
                let scale =
                    (factorial(k) * factorial(l) * 2f64.powi((k + l) as i32) * PI).sqrt();
                let algebraic = conv_hermite_algebraic(k, l, x).unwrap() / scale;
                worst = worst
                    .max((numeric - closed).abs())
                    .max((numeric - algebraic).abs())
                    .max((closed - algebraic).abs());
            }
        }
    }
    assert!(report(1, "convolution routes agree pairwise", worst, 1e-8));
}

#[test]
fn criterion_02_zaremba_convergence() {
    let pts = random_pairs(0x02, 20, 1.5);
    let mut worst_analytic = 0.0f64;
    for &(z, w) in &pts {
        let v = zaremba_partial(ZarembaKind::RbfAnalytic, 40, z, w).unwrap();
        worst_analytic = worst_analytic.max((v.value - rbf_kernel(2.0, z, w)).norm());
    }
    let ok_a = report(2, "analytic Zaremba sum, 40 terms", worst_analytic, 1e-10);
    let mut worst_poly = 0.0f64;
    for ell in 1..=3u32 {
        for &(z, w) in &pts {
            let v = zaremba_partial(ZarembaKind::TruePoly(ell), 60, z, w).unwrap();
            worst_poly = worst_poly.max((v.value - true_poly_rbf_kernel(2.0, ell, z, w)).norm());
        }
    }
    let ok_p = report(2, "polyanalytic Zaremba sums, 60 terms", worst_poly, 1e-8);
    assert!(ok_a && ok_p);
}

#[test]
fn criterion_03_kernel_sum_identity() {
    // deviation scaled by max(1, |K|): kernel magnitudes reach e^16 on this
    // sample and f64 cannot hold an absolute 1e-12 there
    let pts = random_pairs(0x03, 100, 2.0);
    let mut worst = 0.0f64;
    for &gamma in &[1.0, 2.0, SQRT_2] {
        for n in 1..=6u32 {
            for &(z, w) in &pts {
                let sum: Complex64 =
                    (1..=n).map(|l| true_poly_rbf_kernel(gamma, l, z, w)).sum();
                let direct = poly_rbf_kernel(gamma, n, z, w);
                worst = worst.max((sum - direct).norm() / direct.norm().max(1.0));
            }
        }
    }
    assert!(report(3, "polyanalytic kernel equals its level sum", worst, 1e-12));
}

#[test]
fn criterion_04_fock_factorization() {
    let pts = random_pairs(0x03, 100, 2.0);
    let mut worst = 0.0f64;
    for &gamma in &[1.0, 2.0, SQRT_2] {
        for n in 1..=6u32 {
            for &(z, w) in &pts {
                let scale = poly_rbf_kernel(gamma, n, z, w).norm().max(1.0);
                worst = worst.max(rbf_fock_factorization_check(gamma, n, z, w) / scale);
            }
        }
    }
    assert!(report(4, "RBF kernels factor through the Fock kernel", worst, 1e-12));
}

#[test]
fn criterion_05_reproducing_property() {
    let rule = gauss_hermite(64).unwrap();
    let wpts = [c(0.0, 0.0), c(0.3, -0.2), c(-0.5, 0.1), c(0.2, 0.4), c(-0.1, -0.3)];
    let mut worst = 0.0f64;
    for ell in 1..=2u32 {
        for m in 0..=4u32 {
            let f = basis_element(2.0, ell, m).unwrap();
            for &w in &wpts {
                let got = reproduce_rbf(&f, 2, w, &rule).unwrap();
                worst = worst.max((got - f.evaluate(w)).norm());
            }
        }
    }
    assert!(report(5, "order-2 reproducing integral returns point values", worst, 1e-8));
}

#[test]
fn criterion_06_basis_orthonormality() {
    let rule = gauss_hermite(64).unwrap();
    let measure = Measure::rbf(2.0).unwrap();
    let elems: Vec<(u32, u32, PolyGaussRep)> = (1..=3u32)
        .flat_map(|l| (0..=5u32).map(move |m| (l, m, basis_element(2.0, l, m).unwrap())))
        .collect();
    let mut worst = 0.0f64;
    for (l1, m1, e1) in &elems {
        for (l2, m2, e2) in &elems {
            let v =
                inner_plane(|z| e1.evaluate(z), |z| e2.evaluate(z), &measure, &rule).unwrap();
            let want = if l1 == l2 && m1 == m2 { 1.0 } else { 0.0 };
            worst = worst.max((v - Complex64::from(want)).norm());
        }
    }
    assert!(report(6, "basis elements are orthonormal across levels", worst, 1e-9));
}

#[test]
fn criterion_07_landau_eigenstructure() {
    let mut worst = 0.0f64;
    for &gamma in &[2.0, SQRT_2] {
        for ell in 1..=5u32 {
            for m in 0..=5u32 {
                worst = worst.max(eigen_residual(gamma, ell, m).unwrap());
            }
        }
    }
    let ok_exact = report(7, "Landau eigen-identity, exact tables", worst, 1e-12);

    let grid: Vec<(f64, f64)> = vec![(0.4, -0.3), (-0.5, 0.2), (0.0, 0.6), (0.8, 0.0)];
    let mut worst_fd = 0.0f64;
    for &gamma in &[2.0, SQRT_2] {
        for ell in 1..=3u32 {
            for m in 0..=2u32 {
                worst_fd = worst_fd.max(schrodinger_check(gamma, ell, m, &grid, 1e-3).unwrap());
            }
        }
    }
    let ok_fd = report(7, "Schrodinger residual at h = 1e-3", worst_fd, 1e-5);

    let r1 = schrodinger_check(2.0, 3, 2, &grid, 1e-3).unwrap();
    let r2 = schrodinger_check(2.0, 3, 2, &grid, 5e-4).unwrap();
    let ok_order = report(7, "halving h shrinks the residual ~4x", (r1 / r2 - 4.0).abs(), 2.0);
    assert!(ok_exact && ok_fd && ok_order);
}

#[test]
fn criterion_08_adjointness() {
    let rule = gauss_hermite(64).unwrap();
    let measure = Measure::rbf(2.0).unwrap();
    let inner = |f: &PolyGaussRep, g: &PolyGaussRep| {
        inner_plane(|z| f.evaluate(z), |z| g.evaluate(z), &measure, &rule).unwrap()
    };
    let mut worst = 0.0f64;
    for l1 in 1..=3u32 {
        for m1 in 0..=3u32 {
            for l2 in 1..=3u32 {
                for m2 in 0..=3u32 {
                    let f = basis_element(2.0, l1, m1).unwrap();
                    let g = basis_element(2.0, l2, m2).unwrap();
                    let lhs = inner(&apply(OperatorTag::A, &f), &g);
                    let rhs = inner(&f, &apply(OperatorTag::AStar, &g));
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
    }
    assert!(report(8, "ladder operator adjointness", worst, 1e-9));
}

#[test]
fn criterion_09_weyl_laws() {
    // Fock semigroup phase
    let f = |z: Complex64| (0.4 * z).exp() + z * z;
    let z0 = c(0.3, -0.6);
    let (a, b) = (c(1.0, 1.0), c(0.5, -0.2));
    let lhs = weyl_fock(a, |y| weyl_fock(b, f, y), z0);
    let rhs = Complex64::new(0.0, -(a * b.conj()).im).exp() * weyl_fock(a + b, f, z0);
    let ok_fock =
        report(9, "Fock Weyl semigroup phase", (lhs - rhs).norm() / rhs.norm().max(1.0), 1e-12);

    // true polyanalytic closed form vs composition path, ell <= 2
    let h11 = |z: Complex64| z * z.conj() - 1.0;
    let id_fn = |z: Complex64| Complex64::from(1.0) + 0.0 * z;
    let mut worst = 0.0f64;
    let p1 = WeylParam::true_poly(0.6, 0.0, 1).unwrap();
    worst = worst.max(
        (weyl_true_poly_composition(&p1, id_fn, z0, 48).unwrap() - weyl_true_poly(&p1, id_fn, z0))
            .norm(),
    );
    let p2 = WeylParam::true_poly(0.6, 0.0, 2).unwrap();
    worst = worst.max(
        (weyl_true_poly_composition(&p2, h11, z0, 48).unwrap() - weyl_true_poly(&p2, h11, z0))
            .norm(),
    );
    let ok_tp = report(9, "true polyanalytic Weyl closed form vs composition", worst, 1e-5);

    // RBF-Weyl semigroup phase law (the phase implied by the closed form)
    let mut worst = 0.0f64;
    for (beta, beta1) in [(c(1.0, 1.0), c(0.3, 0.0)), (c(0.5, -0.2), c(-0.3, 0.7))] {
        let ell = 2;
        let p = WeylParam::rbf(beta.re, beta.im, ell).unwrap();
        let p1 = WeylParam::rbf(beta1.re, beta1.im, ell).unwrap();
        let psum = WeylParam::rbf(beta.re + beta1.re, beta.im + beta1.im, ell).unwrap();
        let lhs = weyl_rbf(&p, |y| weyl_rbf(&p1, f, y), z0);
        let phase = Complex64::new(0.0, 0.5 * (beta * beta1.conj()).im).exp();
        let rhs = weyl_normalization(ell) * phase * weyl_rbf(&psum, f, z0);
        worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    let ok_rbf = report(9, "RBF Weyl semigroup phase after normalization division", worst, 1e-12);
    assert!(ok_fock && ok_tp && ok_rbf);
}

#[test]
fn criterion_10_building_blocks_and_densities() {
    // I_{a,m} closed form vs defining integral
    let rule = gauss_hermite(96).unwrap();
    let a_kernel = |z: Complex64, x: f64| {
        PI.powf(-0.25) * (-(x * x + z * z) / 2.0 + SQRT_2 * z * x).exp()
    };
    let mut worst = 0.0f64;
    for &a in &[0.0f64, 0.8] {
        for m in 0..=3u32 {
            let (z, w) = (c(0.5, 0.3), c(-0.2, 0.0));
            let mut acc = c(0.0, 0.0);
            for (&t, &wt) in rule.nodes().iter().zip(rule.weights()) {
                acc += wt
                    * polyrbf::specfun::hermite_poly(m, SQRT_2 * z.re - t)
                    * polyrbf::specfun::hermite_poly(m, SQRT_2 * w.re - t + a)
                    * a_kernel(z, t)
                    * a_kernel(w, t - a).conj()
                    * (t * t).exp();
            }
            let closed = i_am(a, m, z, w);
            worst = worst.max((acc - closed).norm() / closed.norm().max(1.0));
        }
    }
    let ok_iam = report(10, "building-block closed form vs integral", worst, 1e-7);

    // Christoffel-Darboux density integral
    let mut worst = 0.0f64;
    for n in 0..=5u32 {
        let got = rule.integrate(|x| christoffel_darboux(n, x, x));
        let want = PI.sqrt() * (n + 1) as f64;
        worst = worst.max((got - want).abs() / want);
    }
    let ok_cd = report(10, "Christoffel-Darboux diagonal integral", worst, 1e-10);

    // Mehler partial sums approach K * K_rho at rho = 0.4, N = 80
    let rho = 0.4;
    let mut worst = 0.0f64;
    for &(z, w) in &random_pairs(0x10, 10, 1.2) {
        let v = s_rho_a_n(rho, 0.0, 80, z, w).unwrap();
        let want = fock_kernel(1.0, z, w) * krho_kernel(rho, z, w).unwrap();
        worst = worst.max((v.value - want).norm());
    }
    let ok_mehler = report(10, "Mehler block sums reach the product kernel", worst, 1e-7);

    // probability densities
    let phi_n_dev = {
        let mut worst = 0.0f64;
        for n in 0..=5u32 {
            let got = rule.integrate(|x| christoffel_darboux(n, x, x))
                / (PI.sqrt() * (n + 1) as f64);
            worst = worst.max((got - 1.0).abs());
        }
        worst
    };
    let ok_phin = report(10, "Christoffel-Darboux density integrates to one", phi_n_dev, 1e-8);
    let phi_rho_dev = {
        let got = rule.integrate(|x| mehler_sum(0.3, 60, x, x).unwrap()) * (1.0 - 0.3) / PI.sqrt();
        (got - 1.0).abs()
    };
    let ok_phirho = report(10, "Mehler density integrates to one", phi_rho_dev, 1e-8);

    // S_{a,N} closed form against the term-by-term sum
    let mut worst = 0.0f64;
    for &a in &[0.0, 0.8] {
        for n in 0..=3u32 {
            let (z, w) = (c(0.4, 0.3), c(-0.2, 0.5));
            let direct: Complex64 = (0..=n)
                .map(|m| i_am(a, m, z, w) / (factorial(m) * 2f64.powi(m as i32)))
                .sum();
            let closed = s_a_n(a, n, z, w);
            worst = worst.max((direct - closed).norm() / closed.norm().max(1.0));
        }
    }
    let ok_san = report(10, "shifted block sums match their closed form", worst, 1e-12);

    assert!(ok_iam && ok_cd && ok_mehler && ok_phin && ok_phirho && ok_san);
}

#[test]
fn criterion_11_psd_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for &d in &[1usize, 2, 5] {
        for &gamma in &[0.5, 1.0, 2.0, 4.0] {
            for &order in &[1u32, 2, 3, 5] {
                let rows: Vec<Vec<f64>> = (0..30)
                    .map(|_| (0..d).map(|_| rng.random_range(-2.0..2.0)).collect())
                    .collect();
                let data = Dataset::new(rows, None).unwrap();
                let spec = KernelSpec {
                    family: KernelFamily::PolyRbfRd,
                    gamma,
                    order,
                    ..Default::default()
                };
                let g = gram(&spec, &data).unwrap();
                let rep = psd_check(&g, 1e-8).unwrap();
                let violation = (-rep.min_eig).max(0.0);
                worst = worst.max(violation);
                if !rep.passed {
                    failures.push(format!(
                        "d={d} gamma={gamma} N={order}: min_eig = {:.3e}",
                        rep.min_eig
                    ));
                }
            }
        }
    }
    let passed = report(11, "Gram matrices are PSD across the sweep", worst, 1e-8);
    if !failures.is_empty() {
        println!(
            "          finding: the kernel is not positive semidefinite on R^5 for N >= 2;\n          the radial profile's 5-dimensional Fourier transform changes sign.\n          failing configurations:"
        );
        for f in &failures {
            println!("            {f}");
        }
    }
    assert!(passed, "known mathematical finding: see printed configurations");
}

#[test]
fn criterion_12_krr_determinism_and_baseline() {
    let rows: Vec<Vec<f64>> = (0..20)
        .map(|i| {
            let t = i as f64 / 19.0 * 3.0 - 1.5;
            vec![t, (1.3 * t).sin()]
        })
        .collect();
    let y: Vec<f64> = rows.iter().map(|r| (r[0] - 0.3 * r[1]).tanh()).collect();
    let data = Dataset::new(rows.clone(), Some(y.clone())).unwrap();

    let spec =
        KernelSpec { family: KernelFamily::PolyRbfRd, gamma: 2.0, order: 2, ..Default::default() };
    let model = krr_fit(&spec, &data, 1e-10).unwrap();
    let pred = krr_predict(&model, &rows).unwrap();
    let worst = pred
        .iter()
        .zip(&y)
        .map(|(p, t)| (p - t).abs() / t.abs().max(1.0))
        .fold(0.0f64, f64::max);
    let ok_round = report(12, "fit/predict reproduces training targets", worst, 1e-6);

    let spec1 =
        KernelSpec { family: KernelFamily::PolyRbfRd, gamma: 2.0, order: 1, ..Default::default() };
    let model1 = krr_fit(&spec1, &data, 1e-8).unwrap();
    let pred1 = krr_predict(&model1, &rows).unwrap();
    let baseline = classical_rbf_krr(&rows, &y, 2.0, 1e-8, &rows);
    let worst = pred1
        .iter()
        .zip(&baseline)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0f64, f64::max);
    let ok_base = report(12, "order-1 predictions match the classical solver", worst, 1e-10);
    assert!(ok_round && ok_base);
}
