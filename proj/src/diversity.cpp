#include "maxent/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "maxent/error.hpp"
#include "maxent/format.hpp"

namespace maxent {
namespace {

struct Spectrum {
  std::vector<double> raw;      // descending
  std::vector<double> clamped;  // descending, >= 0
  Matrix vectors;               // columns in the same order
};

Spectrum symmetric_spectrum(const Matrix& covariance) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
  const Index n = covariance.rows();
  Spectrum s;
  s.raw.resize(static_cast<std::size_t>(n));
  s.clamped.resize(static_cast<std::size_t>(n));
  s.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Index i = 0; i < n; ++i) {
    const Index src = n - 1 - i;
    const double value = solver.eigenvalues()[src];
    s.raw[static_cast<std::size_t>(i)] = value;
    s.clamped[static_cast<std::size_t>(i)] = std::max(value, 0.0);
    s.vectors.col(i) = solver.eigenvectors().col(src);
  }
  return s;
}

void orient(Matrix& axes) {
  for (Index j = 0; j < axes.cols(); ++j) {
    for (Index i = 0; i < axes.rows(); ++i) {
      if (std::abs(axes(i, j)) > 1e-12) {
        if (axes(i, j) < 0.0) axes.col(j) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace

DiversityReport analytic_diversity(const GaussianMixture& mixture) {
  const Matrix covariance = overall_covariance(mixture);
  Spectrum s = symmetric_spectrum(covariance);
  DiversityReport report;
  report.nu = covariance.trace();
  report.eigenvalues = std::move(s.clamped);
  report.raw_eigenvalues = std::move(s.raw);
  report.source = DiversitySource::analytic;
  return report;
}

Matrix population_covariance(const RowMatrix& features) {
  if (features.rows() < 2) throw ShapeError("need at least two rows for a covariance");
  if (features.cols() < 1) throw ShapeError("features have no columns");
  const Eigen::RowVectorXd center = features.colwise().mean();
  const RowMatrix centred = features.rowwise() - center;
  Matrix covariance = (centred.transpose() * centred) / static_cast<double>(features.rows());
  return 0.5 * (covariance + covariance.transpose());
}

DiversityReport empirical_diversity(const RowMatrix& features) {
  const Matrix covariance = population_covariance(features);
  Spectrum s = symmetric_spectrum(covariance);
  DiversityReport report;
  report.nu = covariance.trace();
  report.eigenvalues = std::move(s.clamped);
  report.raw_eigenvalues = std::move(s.raw);
  report.source = DiversitySource::empirical;
  report.sample_count = static_cast<std::size_t>(features.rows());
  return report;
}

double spectrum_tail_mass(const DiversityReport& report, std::size_t k) {
  const auto& values = report.eigenvalues;
  if (k > values.size()) {
    throw DomainError("k = " + std::to_string(k) + " exceeds spectrum length " +
                      std::to_string(values.size()));
  }
  double total = 0.0;
  for (double v : values) total += v;
  if (total <= 0.0) return 0.0;
  double tail = 0.0;
  for (std::size_t i = k; i < values.size(); ++i) tail += values[i];
  return std::clamp(tail / total, 0.0, 1.0);
}

PrincipalComponents top_principal_components(const RowMatrix& features, std::size_t k) {
  const auto n = static_cast<std::size_t>(features.cols());
  if (k < 1 || k > n) {
    throw ShapeError("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const Matrix covariance = population_covariance(features);
  Spectrum s = symmetric_spectrum(covariance);

  PrincipalComponents pcs;
  pcs.axes = s.vectors.leftCols(static_cast<Index>(k));
  orient(pcs.axes);
  double total = 0.0;
  for (double v : s.clamped) total += v;
  pcs.explained_variance_ratios.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    pcs.explained_variance_ratios[i] = total > 0.0 ? s.clamped[i] / total : 0.0;
  }
  const Vector center = features.colwise().mean().transpose();
  pcs.projected = project_onto(features, center, pcs.axes);
  return pcs;
}

RowMatrix project_onto(const RowMatrix& features, const Vector& center, const Matrix& axes) {
  if (features.cols() != axes.rows() || center.size() != axes.rows()) {
    throw ShapeError("projection axes do not match feature dimension");
  }
  const RowMatrix centred = features.rowwise() - center.transpose();
  return centred * axes;
}

void write_spectrum_csv(std::ostream& out, const DiversityReport& report) {
  out << "rank,eigenvalue,log_eigenvalue\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    const double value = report.eigenvalues[i];
    const double log_value =
        value > 0.0 ? std::log(value) : -std::numeric_limits<double>::infinity();
    out << (i + 1) << ',' << format_double(value) << ',' << format_double(log_value) << '\n';
  }
}

void write_pc_csv(std::ostream& out, const RowMatrix& projected, std::span<const int> labels) {
  if (projected.cols() < 2) throw ShapeError("pc csv needs at least two components");
  if (static_cast<std::size_t>(projected.rows()) != labels.size()) {
    throw ShapeError("projection rows and labels differ in length");
  }
  out << "pc1,pc2,label\n";
  for (Index i = 0; i < projected.rows(); ++i) {
    out << format_double(projected(i, 0)) << ',' << format_double(projected(i, 1)) << ','
        << labels[static_cast<std::size_t>(i)] << '\n';
  }
}

}  // namespace maxent
