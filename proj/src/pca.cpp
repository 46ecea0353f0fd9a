#include "hrvauth/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace hrvauth::modeling {

std::vector<double> PCAModel::transform(const std::vector<double>& row) const {
  if (static_cast<int>(row.size()) != input_dim)
    throw ValidationError("PCA transform: expected dimension " +
                          std::to_string(input_dim) + ", got " +
                          std::to_string(row.size()));
  std::vector<double> z(row.size());
  for (size_t j = 0; j < row.size(); ++j) z[j] = (row[j] - mean[j]) / scale[j];
  std::vector<double> out(static_cast<size_t>(retained), 0.0);
  for (int c = 0; c < retained; ++c) {
    double dot = 0.0;
    for (size_t j = 0; j < z.size(); ++j) dot += components[c][j] * z[j];
    out[static_cast<size_t>(c)] = dot;
  }
  return out;
}

double PCAModel::cumulative_explained() const {
  double cum = 0.0;
  for (int c = 0; c < retained; ++c) cum += explained_ratio[static_cast<size_t>(c)];
  return cum;
}

PCAModel fit_pca(const std::vector<std::vector<double>>& rows, double variance_threshold) {
  if (rows.size() < 2) throw InsufficientDataError("PCA needs at least 2 rows");
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
    throw ConfigError("PCA variance threshold must be in (0,1]");
  const size_t n = rows.size();
  const size_t d = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != d) throw ValidationError("PCA: ragged input rows");

  PCAModel model;
  model.input_dim = static_cast<int>(d);
  model.mean.assign(d, 0.0);
  model.scale.assign(d, 1.0);

  Eigen::MatrixXd X(n, d);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < d; ++j) X(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];

  for (size_t j = 0; j < d; ++j) model.mean[j] = X.col(static_cast<long>(j)).mean();
  for (size_t j = 0; j < d; ++j) X.col(static_cast<long>(j)).array() -= model.mean[j];
  for (size_t j = 0; j < d; ++j) {
    const double var =
        X.col(static_cast<long>(j)).squaredNorm() / static_cast<double>(n - 1);
    if (var > 0.0) {
      model.scale[j] = std::sqrt(var);
      X.col(static_cast<long>(j)) /= model.scale[j];
    } else {
      model.scale[j] = 1.0;  // constant feature carries no information
      model.constant_column_warning = true;
    }
  }

  Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw ValidationError("PCA eigendecomposition failed");

  // Eigen returns ascending eigenvalues; flip to descending.
  Eigen::VectorXd eigval = solver.eigenvalues().reverse();
  Eigen::MatrixXd eigvec = solver.eigenvectors().rowwise().reverse();

  double total = 0.0;
  for (long j = 0; j < eigval.size(); ++j) total += std::max(0.0, eigval(j));
  model.explained_ratio.assign(d, 0.0);
  for (size_t j = 0; j < d; ++j)
    model.explained_ratio[j] =
        total > 0.0 ? std::max(0.0, eigval(static_cast<long>(j))) / total : 0.0;

  double cum = 0.0;
  int k = static_cast<int>(d);
  for (size_t j = 0; j < d; ++j) {
    cum += model.explained_ratio[j];
    if (cum >= variance_threshold * (1.0 - 1e-12)) {
      k = static_cast<int>(j) + 1;
      break;
    }
  }
  model.retained = k;

  model.components.resize(static_cast<size_t>(k));
  for (int c = 0; c < k; ++c) {
    auto& comp = model.components[static_cast<size_t>(c)];
    comp.resize(d);
    // deterministic sign: largest-magnitude coordinate made positive
    long arg_max = 0;
    eigvec.col(c).cwiseAbs().maxCoeff(&arg_max);
    const double sign = eigvec(arg_max, c) < 0.0 ? -1.0 : 1.0;
    for (size_t j = 0; j < d; ++j) comp[j] = sign * eigvec(static_cast<long>(j), c);
  }
  return model;
}

}  // namespace hrvauth::modeling
