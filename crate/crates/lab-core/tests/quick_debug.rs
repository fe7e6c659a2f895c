use lab_core::quad::*;
use lab_core::special::lower_gamma;

#[test]
fn debug_alpha06() {
    let spec = QuadratureSpec::default();
    for &alpha in &[0.5, 0.6, 0.7] {
        let bj = gauss_jacobi01(48, alpha).unwrap();
        let b = bj.integrate(|x| (-2.0 * x).exp());
        let exact_b = lower_gamma(alpha + 1.0, 2.0) / 2f64.powf(alpha + 1.0);
        println!("alpha={alpha} boundary: {:.3e}", (b - exact_b) / exact_b);
        let rule = HalfLineRule::build_with(&spec, alpha, 53.0).unwrap();
        let got = rule.integrate(|x| (-2.0 * x).exp());
        let exact = lower_gamma(alpha + 1.0, 212.0) / 2f64.powf(alpha + 1.0);
        println!("alpha={alpha} full:     {:.3e}", (got - exact) / exact);
    }
}
