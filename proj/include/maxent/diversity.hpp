#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "maxent/linalg.hpp"
#include "maxent/mixture_model.hpp"

namespace maxent {

enum class DiversitySource { analytic, empirical };

// Diversity nu = tr(Sigma*) together with the spectrum of Sigma*.
struct DiversityReport {
  double nu = 0.0;
  // Descending; round-off negatives clamped to zero.
  std::vector<double> eigenvalues;
  DiversitySource source = DiversitySource::analytic;
  std::optional<std::size_t> sample_count;
  // Unclamped, descending.
  std::vector<double> raw_eigenvalues;
};

// nu and spectrum of the mixture covariance. Requires a zero-mean mixture.
DiversityReport analytic_diversity(const GaussianMixture& mixture);

// Globally mean-centred population (1/N) covariance of the rows. N >= 2.
DiversityReport empirical_diversity(const RowMatrix& features);
Matrix population_covariance(const RowMatrix& features);

// Fraction of sum(lambda) beyond the k largest eigenvalues; 0 when nu = 0.
double spectrum_tail_mass(const DiversityReport& report, std::size_t k);

struct PrincipalComponents {
  RowMatrix projected;  // N x k scores on the centred data
  std::vector<double> explained_variance_ratios;
  Matrix axes;  // n x k, unit columns, first nonzero coordinate positive
};

PrincipalComponents top_principal_components(const RowMatrix& features, std::size_t k);

// Projects `features` (centred with `center`) onto previously computed axes.
RowMatrix project_onto(const RowMatrix& features, const Vector& center, const Matrix& axes);

// `rank,eigenvalue,log_eigenvalue`; rank is 1-based. log of zero is written as -inf.
void write_spectrum_csv(std::ostream& out, const DiversityReport& report);
// `pc1,pc2,label`
void write_pc_csv(std::ostream& out, const RowMatrix& projected, std::span<const int> labels);

}  // namespace maxent
