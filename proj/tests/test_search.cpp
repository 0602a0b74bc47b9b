#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qws/errors.hpp"
#include "qws/graph.hpp"
#include "qws/reduction.hpp"
#include "qws/search.hpp"
#include "qws/symmetry.hpp"

using qws::Graph;
using qws::MatrixKind;
using qws::ReducedBasis;
using qws::Schedule;
using qws::SearchReport;

namespace {

constexpr double kPi = 3.14159265358979323846;

ReducedBasis marked_basis(const Graph& g, int w) {
  const qws::GeneratorSet full =
      g.family().kind == qws::Family::Complete ||
              g.family().kind == qws::Family::BalancedTree
          ? qws::family_generators(g)
          : qws::find_automorphisms(g);
  return ReducedBasis::from_orbits(qws::orbits(qws::stabilizer(full, w)), g, w);
}

}  // namespace

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(Schedule::make({}), qws::InvalidParameter);
  CHECK_THROWS_AS(Schedule::make({{-0.5, 1.0}}), qws::InvalidParameter);
  CHECK_THROWS_AS(Schedule::make({{0.5, -1.0}}), qws::InvalidParameter);
  CHECK_THROWS_AS(Schedule::make({{std::nan(""), 1.0}}), qws::InvalidParameter);
  const Schedule ok = Schedule::make({{0.0, 0.0}, {1.0, 2.0}});
  CHECK(ok.stages.size() == 2);
}

TEST_CASE("uniform start state") {
  const qws::RealVec u = qws::uniform_state(4);
  for (double v : u) CHECK(v == doctest::Approx(0.5));
  const qws::CplxVec uc = qws::uniform_state_c(4);
  for (const qws::Cplx& v : uc) {
    CHECK(v.real() == doctest::Approx(0.5));
    CHECK(v.imag() == 0.0);
  }
  CHECK_THROWS_AS(qws::uniform_state(0), qws::InvalidParameter);
}

TEST_CASE("predicted schedules: exact closed forms") {
  const Schedule sc = qws::predicted_schedule(qws::build_complete(64));
  REQUIRE(sc.stages.size() == 1);
  CHECK(sc.stages[0].gamma == doctest::Approx(1.0 / 64));
  CHECK(sc.stages[0].duration == doctest::Approx(kPi * 8.0 / 2.0));

  const Schedule st = qws::predicted_schedule(qws::build_balanced_tree(2, 9));
  REQUIRE(st.stages.size() == 2);
  CHECK(st.stages[0].gamma == doctest::Approx(2.0));
  CHECK(st.stages[0].duration == doctest::Approx(kPi * 27.0 / 4.0));
  CHECK(st.stages[1].gamma == doctest::Approx(1.0));
  CHECK(st.stages[1].duration == doctest::Approx(kPi * 3.0 / 2.0));

  const Schedule ss =
      qws::predicted_schedule(qws::build_truncated_simplex(2, 5));
  REQUIRE(ss.stages.size() == 3);
  CHECK(ss.stages[0].gamma == doctest::Approx(3.0 / 5.0));
  CHECK(ss.stages[0].duration == doctest::Approx(kPi * std::pow(5.0, 2.5) / 6.0));
  CHECK(ss.stages[1].gamma == doctest::Approx(2.0 / 5.0));
  CHECK(ss.stages[1].duration == doctest::Approx(kPi * std::pow(5.0, 1.5) / 4.0));
  CHECK(ss.stages[2].gamma == doctest::Approx(1.0 / 5.0));
  CHECK(ss.stages[2].duration == doctest::Approx(kPi * std::sqrt(5.0) / 2.0));

  CHECK_THROWS_AS(qws::predicted_schedule(qws::build_balanced_tree(3, 3)),
                  qws::InvalidParameter);
  CHECK_THROWS_AS(qws::predicted_schedule(qws::build_truncated_simplex(1, 5)),
                  qws::InvalidParameter);
  CHECK_THROWS_AS(qws::predicted_schedule(Graph(3, {{0, 1}, {1, 2}})),
                  qws::InvalidParameter);
}

TEST_CASE("complete graph search hits the marked vertex at the predicted time") {
  for (int n : {16, 64}) {
    const Graph g = qws::build_complete(n);
    const ReducedBasis basis = marked_basis(g, 0);
    const SearchReport rep = qws::run_schedule(
        g, MatrixKind::Laplacian, 0, qws::predicted_schedule(g), &basis);
    REQUIRE(rep.stages.size() == 1);
    // the two-level resonance is exact: success is 1 at t = pi sqrt(N) / 2
    CHECK(std::abs(rep.final_success - 1.0) <= 1e-9);
    CHECK(rep.stages[0].peak_value >= 0.95);
    CHECK(rep.stages[0].gap == doctest::Approx(2.0 / std::sqrt(double(n))));
    CHECK(std::abs(rep.stages[0].measured_peak_time - kPi * std::sqrt(double(n)) / 2) <=
          0.1 * kPi * std::sqrt(double(n)) / 2);
    CHECK(rep.stages[0].target == 0);
    CHECK(rep.stages[0].trace.labels[0] == "v0");
  }
}

TEST_CASE("full-space run agrees with the reduced run") {
  const Graph g = qws::build_complete(16);
  const Schedule sched = qws::predicted_schedule(g);
  const ReducedBasis basis = marked_basis(g, 0);
  const SearchReport red =
      qws::run_schedule(g, MatrixKind::Laplacian, 0, sched, &basis);
  const SearchReport full =
      qws::run_schedule(g, MatrixKind::Laplacian, 0, sched, nullptr);
  CHECK(std::abs(red.final_success - full.final_success) <= 1e-10);
  CHECK(full.stages[0].target == 0);

  const Graph tree = qws::build_balanced_tree(2, 3);
  const Schedule ts = qws::predicted_schedule(tree);
  const ReducedBasis tb = marked_basis(tree, 0);
  const SearchReport tred =
      qws::run_schedule(tree, MatrixKind::Laplacian, 0, ts, &tb);
  const SearchReport tfull =
      qws::run_schedule(tree, MatrixKind::Laplacian, 0, ts, nullptr);
  CHECK(std::abs(tred.final_success - tfull.final_success) <= 1e-10);
}

TEST_CASE("state is carried exactly across stage boundaries") {
  // same gamma split into two stages must equal one merged stage
  const Graph g = qws::build_complete(8);
  const ReducedBasis basis = marked_basis(g, 0);
  const Schedule split = Schedule::make({{0.125, 1.1}, {0.125, 2.3}});
  const Schedule merged = Schedule::make({{0.125, 3.4}});
  const SearchReport a =
      qws::run_schedule(g, MatrixKind::Laplacian, 0, split, &basis);
  const SearchReport b =
      qws::run_schedule(g, MatrixKind::Laplacian, 0, merged, &basis);
  CHECK(a.final_success == doctest::Approx(b.final_success).epsilon(1e-12));
}

TEST_CASE("degenerate schedules") {
  const Graph g = qws::build_complete(4);
  const ReducedBasis basis = marked_basis(g, 0);
  // gamma = 0: only the oracle acts; the marked probability never moves
  const SearchReport frozen = qws::run_schedule(
      g, MatrixKind::Laplacian, 0, Schedule::make({{0.0, 2.0}}), &basis);
  CHECK(frozen.final_success == doctest::Approx(0.25));
  CHECK(frozen.stages[0].peak_value == doctest::Approx(0.25));
  // zero duration: the uniform state is left untouched
  const SearchReport idle = qws::run_schedule(
      g, MatrixKind::Laplacian, 0, Schedule::make({{0.25, 0.0}}), &basis);
  CHECK(idle.final_success == doctest::Approx(0.25));
}

TEST_CASE("two-stage tree search: frozen regression values") {
  const Graph g = qws::build_balanced_tree(2, 25);
  REQUIRE(g.n() == 651);
  const ReducedBasis basis = marked_basis(g, 0);
  REQUIRE(basis.dim() == 6);
  const SearchReport rep = qws::run_schedule(
      g, MatrixKind::Laplacian, 0, qws::predicted_schedule(g), &basis);

  CHECK(rep.final_success == doctest::Approx(0.98291197470514913).epsilon(1e-6));
  CHECK(rep.final_success > 0.5);
  CHECK(rep.final_success <= 1.0);
  // stage gaps against the asymptotic predictions
  CHECK(std::abs(rep.stages[0].gap - 4.0 * std::pow(25.0, -1.5)) <=
        0.1 * 4.0 * std::pow(25.0, -1.5));
  CHECK(rep.stages[0].gap ==
        doctest::Approx(0.029113397559880457).epsilon(1e-9));
}

TEST_CASE("three-stage simplex search: frozen regression values") {
  const Graph g = qws::build_truncated_simplex(2, 5);
  const int w = g.default_marked();
  const ReducedBasis basis = marked_basis(g, w);
  REQUIRE(basis.dim() == 20);
  const SearchReport rep = qws::run_schedule(
      g, MatrixKind::Laplacian, w, qws::predicted_schedule(g), &basis);
  REQUIRE(rep.stages.size() == 3);
  CHECK(rep.final_success == doctest::Approx(0.606215580577671).epsilon(1e-6));
  CHECK(rep.final_success > 0.5);
}

TEST_CASE("gamma scan brackets the critical point") {
  const Graph g = qws::build_complete(32);
  const ReducedBasis basis = marked_basis(g, 0);
  const double gpred = 1.0 / 32;
  const std::vector<double> grid = qws::default_gamma_grid(gpred);
  REQUIRE(grid.size() == 41);
  CHECK(grid.front() == doctest::Approx(gpred / 10));
  CHECK(grid.back() == doctest::Approx(gpred * 10));
  CHECK(grid[20] == doctest::Approx(gpred));

  const double horizon = 1.5 * kPi * std::sqrt(32.0) / 2;
  const std::vector<qws::GammaScanPoint> rows = qws::scan_gamma(
      g, MatrixKind::Laplacian, 0, basis, grid, horizon, 601);
  REQUIRE(rows.size() == 41);
  int best = 0;
  for (int i = 1; i < 41; ++i) {
    CHECK(rows[i].gamma > rows[i - 1].gamma);
    if (rows[i].max_success > rows[best].max_success) best = i;
  }
  CHECK(rows[best].gamma == doctest::Approx(gpred));
  CHECK(rows[best].max_success > 0.99);
  CHECK(rows[best].gap == doctest::Approx(2.0 / std::sqrt(32.0)).epsilon(1e-9));
  CHECK(rows[best].argmax_time ==
        doctest::Approx(kPi * std::sqrt(32.0) / 2).epsilon(0.02));

  // unsorted input comes back ascending
  const std::vector<qws::GammaScanPoint> two = qws::scan_gamma(
      g, MatrixKind::Laplacian, 0, basis, {0.1, 0.01}, horizon, 101);
  CHECK(two[0].gamma == doctest::Approx(0.01));

  CHECK_THROWS_AS(
      qws::scan_gamma(g, MatrixKind::Laplacian, 0, basis, {}, horizon),
      qws::InvalidParameter);
  CHECK_THROWS_AS(
      qws::scan_gamma(g, MatrixKind::Laplacian, 0, basis, {0.1}, -1.0),
      qws::InvalidParameter);
  CHECK_THROWS_AS(
      qws::scan_gamma(g, MatrixKind::Laplacian, 0, basis, {-0.1}, horizon),
      qws::InvalidParameter);
}

TEST_CASE("reduced dynamics replicate the full space to rounding") {
  {
    const Graph g = qws::build_complete(32);
    const ReducedBasis basis = marked_basis(g, 0);
    CHECK(qws::verify_reduced_vs_full(g, MatrixKind::Laplacian, 0,
                                      qws::predicted_schedule(g), basis) <=
          1e-10);
  }
  {
    const Graph g = qws::build_balanced_tree(2, 4);
    const ReducedBasis basis = marked_basis(g, 0);
    CHECK(qws::verify_reduced_vs_full(g, MatrixKind::Laplacian, 0,
                                      qws::predicted_schedule(g), basis) <=
          1e-10);
  }
  {
    const Graph g = qws::build_truncated_simplex(2, 3);
    const int w = g.default_marked();
    const ReducedBasis basis = marked_basis(g, w);
    const Schedule sched = Schedule::make({{1.0 / 3, 3.0}, {2.0 / 3, 1.0}});
    CHECK(qws::verify_reduced_vs_full(g, MatrixKind::Laplacian, w, sched,
                                      basis) <= 1e-8);
  }
}

TEST_CASE("verification respects the brute-force cap") {
  const Graph g = qws::build_complete(32);
  const ReducedBasis basis = marked_basis(g, 0);
  qws::VerifyOptions opts;
  opts.max_full_dim = 16;
  CHECK_THROWS_AS(
      qws::verify_reduced_vs_full(g, MatrixKind::Laplacian, 0,
                                  qws::predicted_schedule(g), basis, opts),
      qws::ResourceLimit);
}

TEST_CASE("search options shape the stage traces") {
  const Graph g = qws::build_complete(9);
  const ReducedBasis basis = marked_basis(g, 0);
  qws::SearchOptions opts;
  opts.steps = 41;
  const SearchReport rep = qws::run_schedule(
      g, MatrixKind::Laplacian, 0, qws::predicted_schedule(g), &basis, opts);
  CHECK(rep.stages[0].trace.steps() == 41);
  CHECK(rep.stages[0].trace.kind == qws::BasisKind::Reduced);
  CHECK(rep.stages[0].trace.class_sizes == std::vector<int>{1, 8});
  // horizon factor stretches the sampled window past the stage duration
  CHECK(rep.stages[0].trace.times.back() ==
        doctest::Approx(1.5 * rep.stages[0].duration));
}
