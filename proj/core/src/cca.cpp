#include "salaffect/cca.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "salaffect/error.hpp"

namespace salaffect {

DataMatrix::DataMatrix(std::vector<std::string> column_names, std::size_t rows, std::vector<double> values)
    : names_(std::move(column_names)), rows_(rows), values_(std::move(values)) {
  if (values_.size() != rows_ * names_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "data matrix is not rectangular");
  }
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size()) throw Error(ErrorCode::InvalidArgument, "duplicate column names");
}

std::vector<double> DataMatrix::column(std::size_t col) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, col);
  return out;
}

DataMatrix DataMatrix::select_columns(std::span<const std::size_t> cols) const {
  std::vector<std::string> names;
  for (const auto c : cols) names.push_back(names_.at(c));
  std::vector<double> values;
  values.reserve(rows_ * cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto c : cols) values.push_back(at(r, c));
  }
  return DataMatrix(std::move(names), rows_, std::move(values));
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd standardized(const DataMatrix& m) {
  MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m.at(r, c);
  }
  const double denom = static_cast<double>(m.rows()) - 1.0;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    out.col(c).array() -= out.col(c).mean();
    const double sd = std::sqrt(out.col(c).squaredNorm() / denom);
    // a constant column stays at zero and surfaces as rank deficiency
    if (sd > 0.0) out.col(c) /= sd;
  }
  return out;
}

MatrixXd inverse_sqrt(const MatrixXd& s, double ridge, const char* block) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::RankDeficient, std::string("eigendecomposition failed for ") + block);
  }
  VectorXd values = eig.eigenvalues();
  const double largest = std::max(values.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (ridge > 0.0) {
      // S + ridge*I is bounded below by ridge in exact arithmetic
      values(i) = std::max(values(i), ridge);
    } else if (!(values(i) > 1e-12 * std::max(largest, 1.0))) {
      throw Error(ErrorCode::RankDeficient, std::string(block) + " covariance is singular; use a positive ridge");
    }
  }
  const VectorXd scale = values.array().rsqrt();
  return eig.eigenvectors() * scale.asDiagonal() * eig.eigenvectors().transpose();
}

std::vector<double> to_std(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<NamedShare> name_shares(const std::vector<std::string>& names, const std::vector<double>& shares) {
  std::vector<NamedShare> out;
  for (std::size_t i = 0; i < shares.size(); ++i) out.push_back({names[i], shares[i]});
  return out;
}

}  // namespace

std::vector<NamedShare> CcaResult::named_x_shares() const { return name_shares(x_names, x_shares); }
std::vector<NamedShare> CcaResult::named_y_shares() const { return name_shares(y_names, y_shares); }

CcaResult cca(const DataMatrix& x, const DataMatrix& y, double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw Error(ErrorCode::InvalidArgument, "ridge must be >= 0");
  if (x.rows() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "X and Y must have the same number of rows");
  if (x.cols() == 0 || y.cols() == 0) throw Error(ErrorCode::InvalidArgument, "X and Y need at least one column");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const std::size_t q = y.cols();
  if (n <= std::max(p, q) + 1) {
    throw Error(ErrorCode::TooFewObservations, std::to_string(n) + " observations for " + std::to_string(p) + "x" +
                                                   std::to_string(q) + " variables");
  }

  const MatrixXd xs = standardized(x);
  const MatrixXd ys = standardized(y);
  const double denom = static_cast<double>(n) - 1.0;
  const MatrixXd sxx = xs.transpose() * xs / denom + ridge * MatrixXd::Identity(xs.cols(), xs.cols());
  const MatrixXd syy = ys.transpose() * ys / denom + ridge * MatrixXd::Identity(ys.cols(), ys.cols());
  const MatrixXd sxy = xs.transpose() * ys / denom;

  const MatrixXd wx = inverse_sqrt(sxx, ridge, "X");
  const MatrixXd wy = inverse_sqrt(syy, ridge, "Y");
  const MatrixXd m = wx * sxy * wy;

  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto components = static_cast<Eigen::Index>(std::min(p, q));

  CcaResult out;
  out.x_names = x.column_names();
  out.y_names = y.column_names();
  out.observations = n;
  for (Eigen::Index i = 0; i < components; ++i) {
    VectorXd a = wx * svd.matrixU().col(i);
    VectorXd b = wy * svd.matrixV().col(i);
    Eigen::Index lead = 0;
    for (Eigen::Index j = 1; j < a.size(); ++j) {
      if (std::abs(a(j)) > std::abs(a(lead))) lead = j;
    }
    if (a(lead) < 0.0) {
      a = -a;
      b = -b;
    }
    out.correlations.push_back(std::clamp(svd.singularValues()(i), 0.0, 1.0));
    out.x_weights.push_back(to_std(a));
    out.y_weights.push_back(to_std(b));
  }
  out.x_shares = normalize_l1(out.x_weights.front());
  out.y_shares = normalize_l1(out.y_weights.front());
  return out;
}

std::vector<double> normalize_l1(std::span<const double> weights) {
  double total = 0.0;
  for (const double w : weights) total += std::abs(w);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorCode::AllZeroWeights, "cannot normalise an all-zero weight vector");
  }
  std::vector<double> out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = weights[i] / total;
  return out;
}

std::vector<NamedShare> top_k_contributors(std::span<const NamedShare> shares, std::size_t k) {
  if (k > shares.size()) {
    throw Error(ErrorCode::KTooLarge,
                "k = " + std::to_string(k) + " exceeds " + std::to_string(shares.size()) + " variables");
  }
  std::vector<NamedShare> ranked(shares.begin(), shares.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const NamedShare& a, const NamedShare& b) { return std::abs(a.share) > std::abs(b.share); });
  ranked.resize(k);
  return ranked;
}

std::pair<DataMatrix, std::vector<std::string>> drop_constant_columns(const DataMatrix& m) {
  std::vector<std::size_t> keep;
  std::vector<std::string> dropped;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    bool constant = true;
    for (std::size_t r = 1; r < m.rows() && constant; ++r) constant = m.at(r, c) == m.at(0, c);
    if (constant) {
      dropped.push_back(m.column_names()[c]);
    } else {
      keep.push_back(c);
    }
  }
  if (keep.empty()) throw Error(ErrorCode::AllColumnsConstant, "every column is constant");
  return {m.select_columns(keep), std::move(dropped)};
}

}  // namespace salaffect
