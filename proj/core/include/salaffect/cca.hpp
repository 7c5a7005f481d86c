#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace salaffect {

/// Observations x named variables, row-major.
class DataMatrix {
 public:
  DataMatrix() = default;
  /// Throws DimensionMismatch if values.size() != rows*names.size(),
  /// InvalidArgument on duplicate column names.
  DataMatrix(std::vector<std::string> column_names, std::size_t rows, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return names_.size(); }
  const std::vector<std::string>& column_names() const noexcept { return names_; }
  double at(std::size_t row, std::size_t col) const noexcept { return values_[row * names_.size() + col]; }
  std::vector<double> column(std::size_t col) const;
  std::span<const double> values() const noexcept { return values_; }

  /// Sub-matrix keeping the listed columns in the given order.
  DataMatrix select_columns(std::span<const std::size_t> cols) const;

 private:
  std::vector<std::string> names_;
  std::size_t rows_ = 0;
  std::vector<double> values_;
};

struct NamedShare {
  std::string name;
  double share = 0.0;

  friend bool operator==(const NamedShare&, const NamedShare&) = default;
};

struct CcaResult {
  std::vector<std::string> x_names;
  std::vector<std::string> y_names;
  std::vector<double> correlations;              // non-increasing, each in [0,1]
  std::vector<std::vector<double>> x_weights;    // one vector per component, over x_names
  std::vector<std::vector<double>> y_weights;
  std::vector<double> x_shares;                  // first component, L1-normalised
  std::vector<double> y_shares;
  std::size_t observations = 0;

  std::vector<NamedShare> named_x_shares() const;
  std::vector<NamedShare> named_y_shares() const;
};

inline constexpr double kDefaultRidge = 1e-6;

/// Canonical correlation analysis through whitened SVD.
///
/// Columns are centred and scaled to unit sample variance, then
///   Sxx = X'X/(n-1) + ridge*I,  Syy = Y'Y/(n-1) + ridge*I,  Sxy = X'Y/(n-1)
/// and the singular values of Sxx^-1/2 Sxy Syy^-1/2 are the canonical
/// correlations (clipped to [0,1]). Weight pairs map the singular vectors back
/// through the whitening matrices; each pair is sign-flipped so the entry of
/// the x weight vector with the largest magnitude is positive.
///
/// Requires n > max(p, q) + 1 (TooFewObservations). With ridge == 0 a
/// singular covariance block throws RankDeficient; with ridge > 0 it never
/// does. Constant columns must be removed first (drop_constant_columns).
CcaResult cca(const DataMatrix& x, const DataMatrix& y, double ridge = kDefaultRidge);

/// w / sum|w|, signs kept. Throws AllZeroWeights.
std::vector<double> normalize_l1(std::span<const double> weights);

/// Sorted by |share| descending; equal magnitudes keep input order.
/// Throws KTooLarge when k exceeds the number of shares.
std::vector<NamedShare> top_k_contributors(std::span<const NamedShare> shares, std::size_t k);

/// Removes zero-variance columns and reports their names. Throws
/// AllColumnsConstant when nothing would remain.
std::pair<DataMatrix, std::vector<std::string>> drop_constant_columns(const DataMatrix& m);

}  // namespace salaffect
