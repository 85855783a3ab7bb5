use curalg::element::Branch;
use curalg::quad::TestFunction;
use curalg::rational::{eta_to_zero_check, laplace_kernel, RationalAlgebra};
use curalg::trig::cocycle::boundary_jump;
use curalg::trig::modes::{mode_kernel_integral, MKind};
use curalg::trig::{TrigAlgebra, TrigKind};
use curalg::{c64, I};

const PI: f64 = core::f64::consts::PI;

fn alg() -> TrigAlgebra {
    TrigAlgebra::new(0.8)
}

#[test]
fn mode_integrals_rebuild_the_closed_kernels() {
    let alg = alg();
    // each branch converges on its own strip and resums to minus the kernel
    let cases = [
        (MKind::E, Branch::Plus, c64(0.4, -0.3)),
        (MKind::F, Branch::Plus, c64(-0.6, -0.55)),
        (MKind::F, Branch::Minus, c64(0.7, 0.4)),
        (MKind::H, Branch::Plus, c64(1.1, -0.35)),
        (MKind::H, Branch::Minus, c64(-0.5, 0.6)),
    ];
    for (kind, branch, w) in cases {
        let m = mode_kernel_integral(&alg, kind, branch, w).unwrap();
        let closed = match kind {
            MKind::E | MKind::F => -alg.ef_kernel(w).unwrap(),
            MKind::H => -alg.h_kernel(w).unwrap(),
        };
        assert!(
            (m - closed).norm() < 1e-8,
            "{kind:?} {branch:?}: {:.3e}",
            (m - closed).norm()
        );
    }
}

#[test]
fn kernel_jump_across_the_current_line_is_a_delta() {
    let alg = alg();
    let u = c64(0.2, 0.0);
    let s = TestFunction::new(2.0, c64(0.3, 0.0), c64(-0.1, 0.0));
    for kind in [TrigKind::E, TrigKind::H] {
        let jump = boundary_jump(&alg, kind, u, &s).unwrap();
        let target = 2.0 * PI * s.eval(u);
        assert!((jump - target).norm() < 1e-7 * target.norm());
    }
}

#[test]
fn strip_kernels_flatten_to_the_rational_pole_quadratically() {
    let w = c64(0.45, -0.2);
    let etas = [0.2, 0.1, 0.05];
    for kind in [MKind::E, MKind::H] {
        let res = eta_to_zero_check(kind, w, &etas).unwrap();
        for pair in res.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!(ratio > 3.7 && ratio < 4.3, "ratio {ratio} not ~4");
        }
    }
}

#[test]
fn laplace_picture_reproduces_the_rational_kernel() {
    let alg = RationalAlgebra::new();
    for &w in &[c64(0.3, 0.6), c64(-0.8, -0.25)] {
        let lap = laplace_kernel(w).unwrap();
        let sign = if w.im > 0.0 { 1.0 } else { -1.0 };
        assert!((lap - sign * alg.kernel(w).unwrap()).norm() < 1e-9);
        assert!((lap - sign * I / w).norm() < 1e-9);
    }
}
