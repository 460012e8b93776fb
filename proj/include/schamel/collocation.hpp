#pragma once

#include <array>
#include <vector>

#include "schamel/wave.hpp"

namespace schamel {

// Uniform periodic grid x_j = j L / n with n even, n >= 64.
struct Grid {
  int n;
  double L;
  std::vector<double> nodes;

  static Grid uniform(int n, double L);
};

// Dense symmetric matrix, full row-major storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  int size() const noexcept { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const noexcept { return a_; }

  double max_abs() const;
  double symmetry_error() const;  // max |a_ij - a_ji|
  std::vector<double> multiply(const std::vector<double>& v) const;

 private:
  int n_;
  std::vector<double> a_;
};

// Fourier collocation second-derivative matrix on the periodic grid
// (circulant; annihilates constants, exact on resolved trigonometric modes).
SymmetricMatrix second_derivative_matrix(const Grid& g);

// M = -c D2 + diag((c-1) - (3/2) sqrt(phi_k)) sampled on the grid.
SymmetricMatrix linearized_operator(const WaveParams& p, const Grid& g);

struct EigenDecomposition {
  int n;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, column i pairs with values[i]
};

// Full spectral decomposition by cyclic Jacobi rotations. Throws if the
// off-diagonal mass is not annihilated within the sweep budget.
EigenDecomposition symmetric_eigen(const SymmetricMatrix& m);

struct SpectrumRow {
  int index;
  double analytic, numeric, abs_gap, rel_gap;
};

struct SpectrumReport {
  std::array<SpectrumRow, 5> rows;
  int negative_count;       // numeric eigenvalues below -1e-8
  double numeric_lambda1;   // the numeric counterpart of the zero mode
  double sixth_numeric;     // first eigenvalue beyond the analytic five
  bool pattern_ok;          // unique negative + zero mode + 1e-6 agreement
};

// Compare the lowest five collocation eigenvalues against the analytic
// spectrum at the grid resolution.
SpectrumReport spectrum_report(const WaveParams& p, const Grid& g);

}  // namespace schamel
