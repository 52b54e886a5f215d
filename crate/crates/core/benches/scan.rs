use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use qutrit_sle::{
    run, scan_sequential, HermitianMatrix, PipelineConfig, RotationAxis, RotationForm,
    RotationParams, SLEProblem, ScanAxis, ScanSpec, Semantics,
};

fn reference_problem() -> SLEProblem {
    let c = Complex64::new;
    let matrix = HermitianMatrix::new(
        3,
        vec![
            c(0.44033, 0.0),
            c(0.05719, -0.02612),
            c(0.02565, 0.05151),
            c(0.05719, 0.02612),
            c(0.40686, 0.0),
            c(0.05915, 0.00073),
            c(0.02565, -0.05151),
            c(0.05915, -0.00073),
            c(0.48614, 0.0),
        ],
    )
    .unwrap();
    SLEProblem::new(
        matrix,
        vec![c(0.56751, 0.0), c(0.79592, 0.0), c(0.21084, 0.0)],
    )
    .unwrap()
}

fn grid_spec(points: usize) -> ScanSpec {
    ScanSpec {
        axis1: ScanAxis {
            param: RotationAxis::R1,
            min: -1.0,
            max: 1.0,
            points,
        },
        axis2: ScanAxis {
            param: RotationAxis::R2,
            min: -1.0,
            max: 1.0,
            points,
        },
        fixed_value: 0.0,
        form: RotationForm::Two,
        digit_position: 2,
    }
}

fn bench_single_run(c: &mut Criterion) {
    let problem = reference_problem();
    let config = PipelineConfig {
        digit_position: 2,
        semantics: Semantics::DigitSelect(RotationParams::new(-1.0, 1.0, 0.25, RotationForm::Two)),
        keep_intermediates: false,
    };
    c.bench_function("pipeline_run", |b| {
        b.iter(|| run(black_box(&problem), black_box(&config)).unwrap())
    });
}

fn bench_scan(c: &mut Criterion) {
    let problem = reference_problem();
    for points in [21usize, 41] {
        let spec = grid_spec(points);
        let mut group = c.benchmark_group(format!("scan_{points}x{points}"));
        group.bench_function("sequential", |b| {
            b.iter(|| scan_sequential(black_box(&problem), black_box(&spec)).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_function("parallel", |b| {
            b.iter(|| qutrit_sle::scan_parallel(black_box(&problem), black_box(&spec)).unwrap())
        });
        group.finish();
    }
}

criterion_group!(benches, bench_single_run, bench_scan);
criterion_main!(benches);
