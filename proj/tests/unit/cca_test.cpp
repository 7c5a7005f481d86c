#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "salaffect/cca.hpp"
#include "support/test_support.hpp"

using namespace salaffect;

namespace {

DataMatrix random_matrix(oracle::Rng& rng, std::size_t n, std::size_t p, const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < p; ++c) names.push_back(prefix + std::to_string(c));
  std::vector<double> v(n * p);
  for (auto& x : v) x = rng.normal();
  return DataMatrix(names, n, v);
}

// Y correlated with X through a random mixing plus noise
DataMatrix coupled(oracle::Rng& rng, const DataMatrix& x, std::size_t q) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < q; ++c) names.push_back("y" + std::to_string(c));
  std::vector<double> mix(x.cols() * q);
  for (auto& m : mix) m = rng.normal();
  std::vector<double> v(x.rows() * q);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t j = 0; j < q; ++j) {
      double acc = rng.normal();
      for (std::size_t i = 0; i < x.cols(); ++i) acc += 0.5 * mix[i * q + j] * x.at(r, i);
      v[r * q + j] = acc;
    }
  }
  return DataMatrix(names, x.rows(), v);
}

std::vector<double> flat(const DataMatrix& m) { return {m.values().begin(), m.values().end()}; }

}  // namespace

TEST(Cca, IdenticalSingleColumn) {
  const DataMatrix x({"a"}, 5, {1, 3, 2, 5, 4});
  const auto res = cca(x, x, 0.0);
  ASSERT_EQ(res.correlations.size(), 1u);
  EXPECT_NEAR(res.correlations[0], 1.0, 1e-10);
}

TEST(Cca, InvertibleLinearImageHasUnitCorrelations) {
  oracle::Rng rng(9);
  const auto x = random_matrix(rng, 40, 3, "x");
  std::vector<double> y(40 * 3);
  const double a[3][3] = {{2, 1, 0}, {0, 1, -1}, {1, 0, 3}};
  for (std::size_t r = 0; r < 40; ++r) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 3; ++i) y[r * 3 + j] += x.at(r, i) * a[i][j];
    }
  }
  const auto res = cca(x, DataMatrix({"u", "v", "w"}, 40, y), 0.0);
  for (const double rho : res.correlations) EXPECT_NEAR(rho, 1.0, 1e-8);
}

TEST(Cca, MatchesGeneralisedEigenOracle) {
  oracle::Rng rng(21);
  for (int c = 0; c < 5; ++c) {
    const auto x = random_matrix(rng, 50, 3, "x");
    const auto y = coupled(rng, x, 4);
    const auto res = cca(x, y, 0.0);
    const auto ref = oracle::canonical_correlations(flat(x), 3, flat(y), 4, 50);
    ASSERT_EQ(res.correlations.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(res.correlations[i], ref[i], 1e-8);
  }
}

TEST(Cca, OrderedBoundedAndSharesNormalised) {
  oracle::Rng rng(22);
  const auto x = random_matrix(rng, 60, 4, "x");
  const auto y = coupled(rng, x, 2);
  const auto res = cca(x, y);
  ASSERT_EQ(res.correlations.size(), 2u);
  EXPECT_GE(res.correlations[0], res.correlations[1]);
  for (const double rho : res.correlations) {
    EXPECT_GE(rho, 0.0);
    EXPECT_LE(rho, 1.0);
  }
  double sx = 0.0, sy = 0.0;
  for (const double s : res.x_shares) sx += std::abs(s);
  for (const double s : res.y_shares) sy += std::abs(s);
  EXPECT_NEAR(sx, 1.0, 1e-12);
  EXPECT_NEAR(sy, 1.0, 1e-12);
  ASSERT_EQ(res.x_weights.size(), 2u);
  for (const auto& a : res.x_weights) {
    std::size_t lead = 0;
    for (std::size_t j = 1; j < a.size(); ++j) {
      if (std::abs(a[j]) > std::abs(a[lead])) lead = j;
    }
    EXPECT_GT(a[lead], 0.0);
  }
  const auto named = res.named_x_shares();
  EXPECT_EQ(named[2].name, "x2");
  EXPECT_EQ(named[2].share, res.x_shares[2]);
}

TEST(Cca, WeightsAchieveReportedCorrelation) {
  oracle::Rng rng(23);
  const auto x = random_matrix(rng, 80, 3, "x");
  const auto y = coupled(rng, x, 3);
  const auto res = cca(x, y, 0.0);
  // correlation between the canonical variates of the standardised data
  auto variate = [](const DataMatrix& m, const std::vector<double>& w) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto col = m.column(c);
      double mean = 0.0, var = 0.0;
      for (const double v : col) mean += v / static_cast<double>(col.size());
      for (const double v : col) var += (v - mean) * (v - mean) / static_cast<double>(col.size() - 1);
      for (std::size_t r = 0; r < col.size(); ++r) out[r] += w[c] * (col[r] - mean) / std::sqrt(var);
    }
    return out;
  };
  for (std::size_t k = 0; k < 3; ++k) {
    const double r = oracle::pearson_r(variate(x, res.x_weights[k]), variate(y, res.y_weights[k]));
    EXPECT_NEAR(r, res.correlations[k], 1e-9);
  }
}

TEST(Cca, RankDeficiencyNeedsRidge) {
  oracle::Rng rng(24);
  auto x = random_matrix(rng, 30, 2, "x");
  std::vector<double> v(x.values().begin(), x.values().end());
  std::vector<double> dup;
  for (std::size_t r = 0; r < 30; ++r) {
    dup.push_back(v[r * 2]);
    dup.push_back(v[r * 2 + 1]);
    dup.push_back(v[r * 2] + v[r * 2 + 1]);
  }
  const DataMatrix singular({"a", "b", "c"}, 30, dup);
  const auto y = coupled(rng, x, 2);
  EXPECT_ERROR_CODE(cca(singular, y, 0.0), ErrorCode::RankDeficient);
  const auto res = cca(singular, y, 1e-6);
  for (const double rho : res.correlations) EXPECT_LE(rho, 1.0);
}

TEST(Cca, Preconditions) {
  oracle::Rng rng(25);
  const auto x = random_matrix(rng, 5, 4, "x");
  const auto y = random_matrix(rng, 5, 2, "y");
  EXPECT_ERROR_CODE(cca(x, y), ErrorCode::TooFewObservations);
  EXPECT_ERROR_CODE(cca(x, random_matrix(rng, 6, 1, "z")), ErrorCode::DimensionMismatch);
  EXPECT_ERROR_CODE(DataMatrix({"a", "a"}, 1, {1, 2}), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(DataMatrix({"a", "b"}, 2, {1, 2, 3}), ErrorCode::DimensionMismatch);
}

TEST(NormalizeL1, Examples) {
  EXPECT_EQ(normalize_l1(std::vector<double>{2, -2}), (std::vector<double>{0.5, -0.5}));
  EXPECT_EQ(normalize_l1(std::vector<double>{1, 0, 0}), (std::vector<double>{1, 0, 0}));
  EXPECT_ERROR_CODE(normalize_l1(std::vector<double>{0, 0}), ErrorCode::AllZeroWeights);
}

TEST(NormalizeL1, ScaleInvariance) {
  oracle::Rng rng(26);
  for (int c = 0; c < 50; ++c) {
    std::vector<double> w(7);
    for (auto& x : w) x = rng.normal();
    const double k = rng.uniform(-10, 10);
    auto scaled = w;
    for (auto& x : scaled) x *= k;
    const auto a = normalize_l1(w);
    const auto b = normalize_l1(scaled);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(b[i], (k > 0 ? 1 : -1) * a[i], 1e-15);
  }
}

TEST(TopK, MagnitudeOrderWithStableTies) {
  const std::vector<NamedShare> shares{{"A", 0.5}, {"B", -0.3}, {"C", 0.2}};
  EXPECT_EQ(top_k_contributors(shares, 2), (std::vector<NamedShare>{{"A", 0.5}, {"B", -0.3}}));
  EXPECT_EQ(top_k_contributors(shares, 3).size(), 3u);
  const std::vector<NamedShare> tied{{"AU04", 0.1}, {"AU01", 0.25}, {"AU09", -0.25}, {"AU12", 0.4}};
  const auto ranked = top_k_contributors(tied, 4);
  EXPECT_EQ(ranked[0].name, "AU12");
  EXPECT_EQ(ranked[1].name, "AU01");
  EXPECT_EQ(ranked[2].name, "AU09");
  EXPECT_ERROR_CODE(top_k_contributors(shares, 4), ErrorCode::KTooLarge);
}

TEST(DropConstantColumns, Examples) {
  const DataMatrix m({"a", "b", "c"}, 3, {1, 5, 0, 2, 5, 1, 3, 5, 0});
  const auto [kept, dropped] = drop_constant_columns(m);
  EXPECT_EQ(kept.column_names(), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(dropped, (std::vector<std::string>{"b"}));
  const DataMatrix clean({"a"}, 2, {1, 2});
  EXPECT_TRUE(drop_constant_columns(clean).second.empty());
  EXPECT_ERROR_CODE(drop_constant_columns(DataMatrix({"a", "b"}, 2, {1, 1, 1, 1})), ErrorCode::AllColumnsConstant);
}
