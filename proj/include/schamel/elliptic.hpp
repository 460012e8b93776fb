#pragma once

namespace schamel::elliptic {

// Elliptic modulus k, strictly inside (0, 1). The convention everywhere in
// this project is the modulus itself, never the parameter m = k^2. Values
// with 1 - k <= 1e-12 are rejected: K(k) diverges as k -> 1 and downstream
// formulas divide by (1 - k^2).
class Modulus {
 public:
  explicit Modulus(double k);
  double value() const noexcept { return k_; }

 private:
  double k_;
};

// Complete elliptic integrals of the first and second kind, by the
// arithmetic-geometric mean. Relative accuracy ~1e-15 on the admitted band
// (the AGM runs in extended precision internally).
double complete_K(Modulus k);
double complete_E(Modulus k);

struct JacobiValues {
  double sn, cn, dn;
};

// Jacobi elliptic functions at argument u, computed jointly by the
// descending Landen transformation (backward phi recurrence on the AGM
// scale). The argument is reduced modulo the full period 4K first, so any
// finite u is fine.
JacobiValues jacobi(double u, Modulus k);

struct KEDerivatives {
  double dK_dk, dE_dk;
};

// dK/dk = (E - (1-k^2)K) / (k(1-k^2)),  dE/dk = (E - K) / k.
KEDerivatives derivatives(Modulus k);

namespace detail {
struct KeLong {
  long double K, E;
};
// Extended-precision values for the few call sites whose downstream
// cancellations amplify the last bits (cn-power recursion seeds).
KeLong complete_KE_long(Modulus k);
}  // namespace detail

}  // namespace schamel::elliptic
