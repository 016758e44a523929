#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "discogan/domains.hpp"
#include "discogan/errors.hpp"
#include "discogan/trainer.hpp"

namespace discogan {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ArcDomainTest, EndpointsOnCircle) {
  const auto mix = make_arc_domain(10, {3, 3}, 2, 0, kPi, 0.1);
  ASSERT_EQ(mix.size(), 10u);
  EXPECT_NEAR(mix[0].mean.x, 5.0, 1e-15);
  EXPECT_NEAR(mix[0].mean.y, 3.0, 1e-15);
  EXPECT_NEAR(mix[9].mean.x, 1.0, 1e-15);
  EXPECT_NEAR(mix[9].mean.y, 3.0, 1e-15);
}

TEST(ArcDomainTest, QuarterArcWithTwoModes) {
  const auto mix = make_arc_domain(2, {0, 0}, 1, 0, kPi / 2, 0.1);
  EXPECT_NEAR(mix[0].mean.x, 1.0, 1e-15);
  EXPECT_NEAR(mix[0].mean.y, 0.0, 1e-15);
  EXPECT_NEAR(mix[1].mean.x, 0.0, 1e-15);
  EXPECT_NEAR(mix[1].mean.y, 1.0, 1e-15);
}

TEST(ArcDomainTest, EqualAngularSpacing) {
  const Point2 c{3, 0.5};
  const auto mix = make_arc_domain(10, c, 2, 0.3, 2.9, 0.1);
  const double expected = (2.9 - 0.3) / 9;
  for (std::size_t k = 0; k + 1 < mix.size(); ++k) {
    const double a0 = std::atan2(mix[k].mean.y - c.y, mix[k].mean.x - c.x);
    const double a1 = std::atan2(mix[k + 1].mean.y - c.y, mix[k + 1].mean.x - c.x);
    EXPECT_NEAR(a1 - a0, expected, 1e-12);
  }
}

TEST(ArcDomainTest, RejectsBadParameters) {
  EXPECT_THROW(make_arc_domain(1, {0, 0}, 1, 0, 1, 0.1), ParameterError);
  EXPECT_THROW(make_arc_domain(3, {0, 0}, 0, 0, 1, 0.1), ParameterError);
  EXPECT_THROW(make_arc_domain(3, {0, 0}, 1, 0, 1, 0.0), ParameterError);
  EXPECT_THROW(make_arc_domain(3, {0, 0}, 1, 1, 1, 0.1), ParameterError);
}

TEST(RowDomainTest, ArithmeticProgression) {
  const auto mix = make_row_domain(5, {1, 1}, {1, 0}, 0.1);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(mix[k].mean, (Point2{1.0 + static_cast<double>(k), 1.0}));
  }
  const auto single = make_row_domain(1, {2, 3}, {0, 0}, 0.5);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].mean, (Point2{2, 3}));
  EXPECT_THROW(make_row_domain(2, {0, 0}, {0, 0}, 0.1), ParameterError);
  EXPECT_THROW(make_row_domain(0, {0, 0}, {1, 0}, 0.1), ParameterError);
}

TEST(GaussianMixtureTest, RejectsDuplicateMeansAndBadScales) {
  EXPECT_THROW(GaussianMixture({}), ParameterError);
  EXPECT_THROW(GaussianMixture({{{0, 0}, 0.1}, {{0, 0}, 0.2}}), ParameterError);
  EXPECT_THROW(GaussianMixture({{{0, 0}, -1}}), ParameterError);
  EXPECT_THROW(GaussianMixture({{{NAN, 0}, 1}}), ParameterError);
}

TEST(DefaultDomainsTest, AllMeansInPositiveQuadrant) {
  for (const auto& cfg : {DomainConfig::default_a(), DomainConfig::default_b()}) {
    const auto mix = cfg.build();
    for (const auto& m : mix.modes()) {
      EXPECT_GT(m.mean.x, 0.0);
      EXPECT_GT(m.mean.y, 0.0);
    }
  }
  EXPECT_EQ(DomainConfig::default_a().build().size(), 5u);
  EXPECT_EQ(DomainConfig::default_b().build().size(), 10u);
}

TEST(SampleTest, TinyStddevCollapsesOntoMeans) {
  const auto mix = make_row_domain(5, {1, 1}, {1, 0}, 1e-12);
  Rng rng(1);
  const auto batch = sample(mix, 500, rng);
  ASSERT_EQ(batch.points.rows(), 500u);
  ASSERT_EQ(batch.labels.size(), 500u);
  for (std::size_t i = 0; i < 500; ++i) {
    ASSERT_LT(batch.labels[i], 5u);
    const auto& mean = mix[batch.labels[i]].mean;
    EXPECT_LT(std::hypot(batch.points(i, 0) - mean.x, batch.points(i, 1) - mean.y), 1e-9);
  }
}

TEST(SampleTest, SameSeedSameBatch) {
  const auto mix = DomainConfig::default_b().build();
  Rng a(17), b(17);
  const auto x = sample(mix, 100, a);
  const auto y = sample(mix, 100, b);
  EXPECT_EQ(x.points, y.points);
  EXPECT_EQ(x.labels, y.labels);
}

TEST(SampleTest, EmpiricalMeanWithinCltBound) {
  const double sd = 0.3;
  const GaussianMixture mix({{{2.0, -1.0}, sd}});
  Rng rng(123);
  const auto batch = sample(mix, 10000, rng);
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    sx += batch.points(i, 0);
    sy += batch.points(i, 1);
  }
  const double bound = 4 * sd / std::sqrt(10000.0);
  EXPECT_NEAR(sx / 10000, 2.0, bound);
  EXPECT_NEAR(sy / 10000, -1.0, bound);
}

TEST(SampleTest, PointsRegenerateFromLabelsAndDraws) {
  const auto mix = DomainConfig::default_b().build();
  Rng rng(5);
  const auto trace = sample_traced(mix, 300, rng);
  for (std::size_t i = 0; i < 300; ++i) {
    const auto& mode = mix[trace.batch.labels[i]];
    EXPECT_EQ(trace.batch.points(i, 0), mode.mean.x + mode.stddev * trace.normals(i, 0));
    EXPECT_EQ(trace.batch.points(i, 1), mode.mean.y + mode.stddev * trace.normals(i, 1));
  }
}

TEST(SampleTest, LabelsAreRoughlyUniform) {
  const auto mix = DomainConfig::default_a().build();
  Rng rng(2);
  const auto batch = sample(mix, 50000, rng);
  std::vector<int> counts(5, 0);
  for (auto l : batch.labels) counts[l] += 1;
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(NearestModeTest, Queries) {
  const auto arc = make_arc_domain(10, {3, 3}, 2, 0, kPi, 0.1);
  for (std::size_t k = 0; k < arc.size(); ++k) EXPECT_EQ(nearest_mode(arc, arc[k].mean), k);
  EXPECT_EQ(nearest_mode(arc, {5.1, 3.0}), 0u);
  const auto row = make_row_domain(3, {0, 0}, {2, 0}, 0.1);
  EXPECT_EQ(nearest_mode(row, {1.0, 0.0}), 0u);
  EXPECT_EQ(nearest_mode(row, {3.0, 5.0}), 1u);
}

TEST(NearestModeTest, TranslationInvariant) {
  const auto base = DomainConfig::default_b();
  auto shifted = base;
  shifted.center = {base.center.x + 0.5, base.center.y - 0.25};
  const auto a = base.build();
  const auto b = shifted.build();
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Point2 q{rng.uniform(0, 6), rng.uniform(0, 3)};
    EXPECT_EQ(nearest_mode(a, q), nearest_mode(b, {q.x + 0.5, q.y - 0.25}));
  }
}

TEST(BoundingBoxTest, MarginAndHull) {
  const GaussianMixture single({{{3, 3}, 0.1}});
  const auto box = bounding_box(single, 3);
  EXPECT_NEAR(box.min.x, 2.7, 1e-15);
  EXPECT_NEAR(box.min.y, 2.7, 1e-15);
  EXPECT_NEAR(box.max.x, 3.3, 1e-15);
  EXPECT_NEAR(box.max.y, 3.3, 1e-15);

  const auto row = make_row_domain(5, {1, 0.5}, {1, 0}, 0.1);
  const auto hull = bounding_box(row, 0);
  EXPECT_EQ(hull.min, (Point2{1, 0.5}));
  EXPECT_EQ(hull.max, (Point2{5, 0.5}));

  const auto arc = DomainConfig::default_b().build();
  const auto wide = bounding_box(arc, 5);
  for (const auto& m : arc.modes()) EXPECT_TRUE(wide.contains(m.mean));
  EXPECT_THROW(bounding_box(arc, -1), ParameterError);
}

}  // namespace
}  // namespace discogan
