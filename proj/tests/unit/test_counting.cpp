#include <cmath>
#include <vector>

#include "doctest.h"

#include "gersh/counting.hpp"
#include "gersh/eig_oracle.hpp"
#include "gersh/fixtures.hpp"
#include "gersh/regions.hpp"
#include "support/random_pencils.hpp"

using namespace gersh;

TEST_CASE("pair disjointness examples") {
  CHECK(pair_disjoint(Disk{0.0, 1.0}, Disk{3.0, 1.0}) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(Disk{0.0, 1.0}, Disk{2.0, 1.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(Disk{0.0, 1.0}, DiskComplement{0.0, 3.0}) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(DiskComplement{0.0, 3.0}, Disk{0.0, 1.0}) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(Disk{0.0, 2.0}, DiskComplement{0.0, 2.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(DiskComplement{0.0, 1.0}, DiskComplement{10.0, 1.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(PointAtInfinity{}, Disk{0.0, 100.0}) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(PointAtInfinity{}, HalfPlane{1.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(HalfPlane{1.0}, HalfPlane{-1.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(WholePlane{}, Disk{0.0, 1.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(WholePlane{}, WholePlane{}) == DisjointnessVerdict::kIntersecting);
  // half-plane Re z >= 2 against disks on either side of the line
  CHECK(pair_disjoint(HalfPlane{4.0}, Disk{0.0, 1.0}) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(Disk{0.0, 2.5}, HalfPlane{4.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(HalfPlane{4.0}, Disk{5.0, 1.0}) == DisjointnessVerdict::kIntersecting);
  CHECK(pair_disjoint(HalfPlane{Complex{0.0, 4.0}}, Disk{Complex{1.0, -1.0}, 2.9}) == DisjointnessVerdict::kDisjoint);
}

TEST_CASE("intersections are disjoint when a factor is") {
  const Region x = Intersection{Disk{0.0, 1.0}, HalfPlane{1.0}};
  CHECK(pair_disjoint(x, Disk{5.0, 1.0}) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(Disk{5.0, 1.0}, x) == DisjointnessVerdict::kDisjoint);
  CHECK(pair_disjoint(x, Disk{0.5, 1.0}) == DisjointnessVerdict::kUnknown);
  const Region y = Intersection{DiskComplement{0.0, 1.0}, HalfPlane{1.0}};
  CHECK(pair_disjoint(y, DiskComplement{4.0, 1.0}) == DisjointnessVerdict::kIntersecting);
}

namespace {

/// Grid search for a common point of two regions, plus infinity.
bool sampled_common_point(const Region& r1, const Region& r2, double extent) {
  if (contains_infinity(r1) && contains_infinity(r2)) return true;
  const int n = 160;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Complex z{-extent + 2.0 * extent * i / n, -extent + 2.0 * extent * j / n};
      if (membership(r1, z) && membership(r2, z)) return true;
    }
  return false;
}

BasicRegion random_basic(testing::Rng& rng) {
  const Complex c = 2.0 * testing::cgauss(rng);
  const double rho = testing::uniform(rng, 0.1, 2.5);
  switch (testing::uniform_size(rng, 0, 4)) {
    case 0:
    case 1: return Disk{c, rho};
    case 2: return DiskComplement{c, rho};
    case 3: return HalfPlane{c};
    default: return PointAtInfinity{};
  }
}

}  // namespace

TEST_CASE("disjoint verdicts survive grid sampling") {
  testing::Rng rng(41);
  int disjoint = 0;
  for (int t = 0; t < 400; ++t) {
    Region r1 = widen(random_basic(rng));
    Region r2 = widen(random_basic(rng));
    if (t % 3 == 0) r1 = Intersection{random_basic(rng), random_basic(rng)};
    if (pair_disjoint(r1, r2) != DisjointnessVerdict::kDisjoint) continue;
    ++disjoint;
    CHECK_FALSE(sampled_common_point(r1, r2, 12.0));
  }
  CHECK(disjoint > 40);
}

TEST_CASE("components") {
  SUBCASE("two well separated rows") {
    const Pencil p{ComplexMatrix{{0.0, 0.1}, {0.1, 10.0}}, ComplexMatrix::identity(2)};
    const ClusterReport r = components(build_family(p, FamilyVariant::kSimplified));
    REQUIRE(r.clusters.size() == 2);
    for (const auto& c : r.clusters) {
      CHECK(c.certified);
      CHECK(c.expected_count == 1);
    }
  }
  SUBCASE("overlapping rows of the example pencil") {
    const ClusterReport r = components(build_family(example_pencil(), FamilyVariant::kPlain));
    REQUIRE(r.clusters.size() == 1);
    CHECK(r.clusters[0].indices == std::vector<std::size_t>{0, 1});
    CHECK(r.clusters[0].certified);
  }
  SUBCASE("a whole-plane row swallows everything") {
    const Pencil p{ComplexMatrix{{0.0, 0.1, 0.0}, {0.1, 10.0, 0.0}, {5.0, 5.0, 1.0}},
                   ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 5.0, 1.0}}};
    const ClusterReport r = components(build_family(p, FamilyVariant::kPlain));
    REQUIRE(r.clusters.size() == 1);
    CHECK_FALSE(r.clusters[0].certified);
  }
}

TEST_CASE("verify counts") {
  SUBCASE("separated 2x2") {
    const Pencil p{ComplexMatrix{{0.0, 0.1}, {0.1, 10.0}}, ComplexMatrix::identity(2)};
    const GershFamily f = build_family(p, FamilyVariant::kSimplified);
    const auto eigs = oracle_spectrum(p).all();
    const CountVerification v = verify_counts(f, components(f), eigs);
    CHECK(v.passed);
    REQUIRE(v.counts.size() == 2);
    for (const auto& c : v.counts) CHECK(c.found == 1);
  }
  SUBCASE("example pencil") {
    const GershFamily f = build_family(example_pencil(), FamilyVariant::kPlain);
    const std::vector<ExtendedComplex> eigs{-1.0, 5.0 / 3.0};
    CHECK(verify_counts(f, components(f), eigs).passed);
  }
  SUBCASE("1x1 pencil") {
    const Pencil p{ComplexMatrix{{3.0}}, ComplexMatrix{{2.0}}};
    const GershFamily f = build_family(p, FamilyVariant::kPlain);
    const std::vector<ExtendedComplex> eigs{1.5};
    const CountVerification v = verify_counts(f, components(f), eigs);
    CHECK(v.passed);
  }
  SUBCASE("mismatch is reported") {
    const Pencil p{ComplexMatrix{{0.0, 0.1}, {0.1, 10.0}}, ComplexMatrix::identity(2)};
    const GershFamily f = build_family(p, FamilyVariant::kSimplified);
    const std::vector<ExtendedComplex> eigs{0.0, 0.01};
    const CountVerification v = verify_counts(f, components(f), eigs);
    CHECK_FALSE(v.passed);
    REQUIRE(v.first_mismatch.has_value());
  }
}

TEST_CASE("counting theorem on random pencils") {
  testing::Rng rng(42);
  int certified = 0;
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = testing::uniform_size(rng, 2, 7);
    const Pencil p = testing::separated_pencil(n, rng, 3.0, testing::uniform(rng, 0.05, 0.6));
    const auto eigs = oracle_spectrum(p).all();
    for (auto v : {FamilyVariant::kPlain, FamilyVariant::kTilde, FamilyVariant::kSimplified}) {
      const GershFamily f = build_family(p, v);
      const ClusterReport r = components(f);
      for (const auto& c : r.clusters) certified += c.certified && c.indices.size() < n;
      CHECK(verify_counts(f, r, eigs, 1e-9, 1e-9).passed);
    }
  }
  CHECK(certified > 50);
}

TEST_CASE("shrinking the off-diagonal part never merges clusters") {
  testing::Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = testing::uniform_size(rng, 2, 6);
    const Pencil p = testing::separated_pencil(n, rng, 2.0, testing::uniform(rng, 0.2, 1.0));
    const std::size_t before = components(build_family(p, FamilyVariant::kSimplified)).clusters.size();
    for (double s : {0.75, 0.5, 0.25, 0.0}) {
      ComplexMatrix a = p.a(), b = p.b();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) {
            a(i, j) *= s;
            b(i, j) *= s;
          }
      const std::size_t after = components(build_family(Pencil{a, b}, FamilyVariant::kSimplified)).clusters.size();
      CHECK(after >= before);
    }
  }
}
