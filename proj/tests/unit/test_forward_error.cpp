#include <cmath>
#include <vector>

#include "doctest.h"

#include "gersh/eig_oracle.hpp"
#include "gersh/forward_error.hpp"
#include "support/random_pencils.hpp"

using namespace gersh;

namespace {

const ComplexMatrix kAhat{{1.0, 0.1}, {0.05, 2.0}};
const ComplexMatrix kBhat{{1.0, 0.01}, {0.02, 1.0}};

}  // namespace

TEST_CASE("residual data") {
  const ResidualData d = residual_data(kAhat, kBhat);
  CHECK(d.lambdas == std::vector<Complex>{1.0, 2.0});
  CHECK(d.e_row[0] == doctest::Approx(0.1));
  CHECK(d.e_row[1] == doctest::Approx(0.05));
  CHECK(d.f_row[0] == doctest::Approx(0.01));
  CHECK(d.f_row[1] == doctest::Approx(0.02));

  const ResidualData exact = residual_data(ComplexMatrix::diagonal(std::vector<Complex>{1.0, 2.0}), ComplexMatrix::identity(2));
  CHECK(exact.e_row == std::vector<double>{0.0, 0.0});
  CHECK(exact.f_row == std::vector<double>{0.0, 0.0});

  auto code_of = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    try {
      residual_data(a, b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;
  };
  CHECK(code_of(kAhat, ComplexMatrix{{0.9, 0.0}, {0.0, 1.0}}) == ErrorCode::kNotNormalized);
  CHECK(code_of(kAhat, ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}) == ErrorCode::kDominanceViolated);
  CHECK(code_of(kAhat, ComplexMatrix::identity(3)) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("simple bound") {
  const ResidualData d = residual_data(kAhat, kBhat);
  const SimpleBound s = simple_bound(d, 0, NeighborRadius::kTargetModulus);
  CHECK(s.radius == doctest::Approx(0.11 / 0.99).epsilon(1e-14));
  CHECK(s.gap == 1.0);
  CHECK(s.certified);
  CHECK(simple_bound(d, 0).certified);

  const ResidualData exact = residual_data(ComplexMatrix::diagonal(std::vector<Complex>{1.0, 2.0}), ComplexMatrix::identity(2));
  CHECK(simple_bound(exact, 1).radius == 0.0);
  CHECK(simple_bound(exact, 1).certified);

  const ResidualData loose = residual_data(kAhat, ComplexMatrix{{1.0, 0.999}, {0.02, 1.0}});
  CHECK_FALSE(simple_bound(loose, 0).certified);
  CHECK_THROWS_AS(tight_bound(loose, 0), Error);

  const ResidualData dup = residual_data(ComplexMatrix::diagonal(std::vector<Complex>{3.0, 3.0}), ComplexMatrix::identity(2));
  try {
    simple_bound(dup, 0);
    FAIL("expected NotSimple");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotSimple);
  }
}

TEST_CASE("the two neighbour radius readings differ only through the modulus") {
  // |lambda_2| >> |lambda_1|: the target-modulus reading underestimates disk 2
  const ResidualData d = residual_data(ComplexMatrix{{1.0, 0.0}, {0.0, 10.0}}, ComplexMatrix{{1.0, 0.0}, {0.5, 1.0}});
  CHECK(simple_bound(d, 0, NeighborRadius::kTargetModulus).certified);
  CHECK_FALSE(simple_bound(d, 0, NeighborRadius::kOwnModulus).certified);
}

TEST_CASE("tight and quadratic bounds") {
  const ResidualData d = residual_data(kAhat, kBhat);
  const TightBound t = tight_bound(d, 0);
  CHECK(t.tau0 == doctest::Approx(0.02 + 0.09 / (1.0 - 0.11 / 0.99)).epsilon(1e-14));
  CHECK(t.tau0 == doctest::Approx(0.12125).epsilon(1e-14));
  CHECK(t.improved);
  CHECK(t.bound == doctest::Approx(0.12125 * 0.11 / (1.0 - 0.12125 * 0.01)).epsilon(1e-13));
  CHECK(t.bound == doctest::Approx(0.013353).epsilon(1e-4));

  const QuadraticBound q = quadratic_bound(d, 0);
  CHECK(q.r == doctest::Approx(0.15 / 0.99).epsilon(1e-14));
  CHECK(q.delta_prime == doctest::Approx(1.0 - 0.11 / 0.99).epsilon(1e-14));
  CHECK(q.bound == doctest::Approx(0.02583).epsilon(1e-3));
  CHECK(simple_bound(d, 0).radius <= q.r);
  CHECK(t.tau0 <= q.r / q.delta_prime);

  const ResidualData exact = residual_data(ComplexMatrix::diagonal(std::vector<Complex>{1.0, 2.0}), ComplexMatrix::identity(2));
  CHECK(tight_bound(exact, 0).tau0 == 0.0);
  CHECK(tight_bound(exact, 0).bound == 0.0);
  CHECK(quadratic_bound(exact, 0).bound == 0.0);
}

TEST_CASE("tau0 at or above one keeps the simple radius") {
  // a far neighbour with a large residual: disjoint, yet its threshold
  // measured against the smallest gap exceeds one
  const ResidualData d = residual_data(ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {5.0, 0.0, 10.0}},
                                       ComplexMatrix::identity(3));
  const TightBound t = tight_bound(d, 0);
  CHECK(t.tau0 >= 1.0);
  CHECK_FALSE(t.improved);
  CHECK(t.bound == simple_bound(d, 0).radius);
}

TEST_CASE("cluster bound") {
  const ResidualData exact = residual_data(ComplexMatrix::diagonal(std::vector<Complex>{3.0, 3.0, 10.0}), ComplexMatrix::identity(3));
  const std::vector<std::size_t> idx{0, 1};
  CHECK(cluster_bound(exact, idx) == 0.0);

  // rho_1 = 0.1, rho_2 = 0.2 from E alone (F = 0)
  const ComplexMatrix a{{3.0, 0.1, 0.0}, {0.2, 3.0, 0.0}, {0.0, 0.0, 10.0}};
  const ResidualData d = residual_data(a, ComplexMatrix::identity(3));
  CHECK(cluster_bound(d, idx) == doctest::Approx(0.2));

  const ComplexMatrix far{{3.0, 0.1, 0.0}, {0.2, 3.0, 0.0}, {0.0, 8.0, 10.0}};
  try {
    cluster_bound(residual_data(far, ComplexMatrix::identity(3)), idx);
    FAIL("expected NotACluster");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotACluster);
  }
  const std::vector<std::size_t> mixed{0, 2};
  CHECK_THROWS_AS(cluster_bound(d, mixed), Error);

  const ErrorBoundReport rep = error_bound_report(d, 1);
  CHECK(rep.cluster_indices == idx);
  REQUIRE(rep.cluster_bound.has_value());
  CHECK(*rep.cluster_bound == doctest::Approx(0.2));
}

TEST_CASE("bounds contain the true eigenvalues") {
  testing::Rng rng(61);
  int certified = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = testing::uniform_size(rng, 2, 7);
    const auto lam = testing::separated_points(n, rng, 5.0, 1.0);
    const double eps = std::pow(10.0, -testing::uniform(rng, 2.0, 6.0));
    const ComplexMatrix e = testing::off_diagonal_noise(n, rng, eps);
    const ComplexMatrix f = testing::off_diagonal_noise(n, rng, eps);
    const ComplexMatrix ahat = ComplexMatrix::diagonal(lam) + e;
    const ComplexMatrix bhat = ComplexMatrix::identity(n) + f;
    const std::vector<Complex> truth = oracle_spectrum(Pencil{ahat, bhat}).finite;
    const ResidualData d = residual_data(ahat, bhat);
    for (std::size_t i = 0; i < n; ++i) {
      const ErrorBoundReport rep = error_bound_report(d, i);
      if (!rep.disjoint_certified) continue;
      ++certified;
      double nearest = 1e300;
      for (auto z : truth) nearest = std::min(nearest, std::abs(z - lam[i]));
      const double slack = 1e-12 * (1.0 + std::abs(lam[i]));
      CHECK(nearest <= rep.rho_simple + slack);
      CHECK(nearest <= rep.tight->bound + slack);
      CHECK(nearest <= rep.quadratic->bound + slack);
      CHECK(rep.rho_simple <= rep.quadratic->r);
      CHECK(rep.tight->tau0 <= rep.quadratic->r / rep.quadratic->delta_prime);
      if (rep.tight->improved) CHECK(rep.tight->bound <= rep.rho_simple);
    }
  }
  CHECK(certified > 100);
}
