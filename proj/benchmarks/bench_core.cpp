#include <benchmark/benchmark.h>

#include <loglin/cascade.hpp>
#include <loglin/control.hpp>
#include <loglin/dynamics.hpp>
#include <loglin/invariant_set.hpp>
#include <loglin/lyapunov.hpp>
#include <loglin/riccati.hpp>
#include <loglin/se23.hpp>
#include <loglin/sim/closed_loop.hpp>
#include <loglin/trajectory.hpp>

using namespace loglin;

namespace {

Vec9 sample_zeta() {
  Vec9 z;
  z << 0.4, -0.2, 0.1, 0.3, 0.2, -0.1, 0.5, -0.3, 0.2;
  return z;
}

const se23::InputVector& nubar() {
  static const se23::InputVector nu = se23::make_input(Vec3(7.5, 7.5, 0), Vec3(5, 5, 1));
  return nu;
}

synthesis::CertBundle small_bundle() {
  synthesis::Envelope env;
  env.accel = Vec3(7.5, 7.5, 0);
  env.omega = Vec3(5, 5, 1);
  synthesis::DisturbanceBounds b;
  b.accel = Vec3::Constant(0.1);
  b.alpha = Vec3::Constant(0.1);
  return synthesis::certify_cascade({}, env, b, {}, {}, "bench");
}

}  // namespace

static void BM_ExpLog(benchmark::State& state) {
  const Vec9 z = sample_zeta();
  for (auto _ : state) {
    auto X = se23::exp_group(z);
    benchmark::DoNotOptimize(se23::log_group(X));
  }
}
BENCHMARK(BM_ExpLog);

static void BM_UZeta(benchmark::State& state) {
  const Vec9 z = sample_zeta();
  for (auto _ : state) benchmark::DoNotOptimize(se23::u_zeta(z));
}
BENCHMARK(BM_UZeta);

static void BM_LiftedInversion(benchmark::State& state) {
  const auto sys = dynamics::zeta_system(nubar());
  const Mat4x9 K = -synthesis::lqr_gain(sys.A, sys.B_u, Matrix::Identity(9, 9), Matrix::Identity(4, 4));
  const Vec9 z = sample_zeta();
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::dynamic_inversion_lifted(z, K));
}
BENCHMARK(BM_LiftedInversion);

static void BM_Lyapunov9(benchmark::State& state) {
  const auto sys = dynamics::zeta_system(nubar());
  const Mat4x9 K = -synthesis::lqr_gain(sys.A, sys.B_u, Matrix::Identity(9, 9), Matrix::Identity(4, 4));
  const Matrix A = sys.A + sys.B_u * K;
  const Matrix Q = Matrix::Identity(9, 9);
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::solve_lyapunov(A, Q));
}
BENCHMARK(BM_Lyapunov9);

static void BM_Care9x4(benchmark::State& state) {
  const auto sys = dynamics::zeta_system(nubar());
  const Matrix Q = Matrix::Identity(9, 9);
  const Matrix R = Matrix::Identity(4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::solve_care(sys.A, sys.B_u, Q, R));
}
BENCHMARK(BM_Care9x4);

static void BM_InvariantEllipsoid(benchmark::State& state) {
  const auto sys = dynamics::zeta_system(nubar());
  const Mat4x9 K = -synthesis::lqr_gain(sys.A, sys.B_u, Matrix::Identity(9, 9), Matrix::Identity(4, 4));
  const Matrix A = sys.A + sys.B_u * K;
  const Matrix B = Matrix::Identity(9, 9);
  Vector d(9);
  d << 0, 0, 0, 0.1, 0.1, 0.1, 0.2, 0.2, 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::invariant_ellipsoid(A, B, d));
}
BENCHMARK(BM_InvariantEllipsoid)->Unit(benchmark::kMillisecond);

static void BM_ClosedLoopSecond(benchmark::State& state) {
  const auto cert = small_bundle();
  const trajectory::ConstantInputReference ref({}, cert.nubar(), cert.vehicle.gravity);
  sim::DisturbanceSpec spec;
  spec.accel_bound = cert.bounds.accel;
  spec.alpha_bound = cert.bounds.alpha;
  const auto dist = sim::Disturbance::sample(spec, 7);
  sim::SimOptions opt;
  opt.duration = 1.0;
  opt.record_stride = 0;
  opt.inversion = static_cast<sim::Inversion>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_closed_loop(cert, ref, dist, opt));
}
BENCHMARK(BM_ClosedLoopSecond)
    ->Arg(static_cast<int>(sim::Inversion::Actuated))
    ->Arg(static_cast<int>(sim::Inversion::Lifted))
    ->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
