#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace evosplit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Time-dependent generator t -> A(t) for non-autonomous problems.
using MatrixFamily = std::function<Matrix(double)>;

/// Dense-vector counterpart of State for the matrix backend.
struct MatrixState {
  Vector values;
  double time = 0.0;
};

/// Autonomous generator pair. A is expected to be symmetric negative definite
/// wherever fractional powers of -A are requested; B is a bounded
/// perturbation.
struct MatrixInstance {
  Matrix A;
  Matrix B;

  int dim() const { return static_cast<int>(A.rows()); }
};

/// Matrix exponential by Pade-13 scaling and squaring. Accurate to round-off
/// for any square input.
Matrix matrix_expm(const Matrix& M);

/**
 * Evolution operator U(t, s) of u' = A(u_time) u, computed with a classical
 * fourth-order Runge-Kutta sweep whose step count is doubled until two
 * consecutive sweeps agree to `tol` relative in the max norm. Throws
 * NumericalError naming the interval if the budget `max_steps` is exhausted
 * before the target is met. Integrates backwards when t < s.
 */
Matrix oracle_evolution(const MatrixFamily& A, double s, double t, double tol = 1e-12,
                        long max_steps = (1L << 22));

/// (-A)^alpha for symmetric negative-definite A, via eigendecomposition.
/// Throws std::invalid_argument if A is not symmetric or not negative definite.
Matrix fractional_power_of_negative(const Matrix& A, double alpha);

/// Result of probing the commutator bound ||(AB - BA) v|| <= c ||(-A)^alpha v||.
struct CommutatorReport {
  double alpha = 0.0;
  /// Smallest constant satisfying the bound on every probe vector.
  double best_c = 0.0;
  /// max over probes of ||(AB-BA)v|| - c_ref ||(-A)^alpha v||, where c_ref is
  /// the user-supplied constant when given and best_c otherwise.
  double max_violation = 0.0;
  int num_vectors = 0;
};

CommutatorReport commutator_bound_check(const MatrixInstance& inst, double alpha,
                                        std::span<const Vector> vectors,
                                        std::optional<double> user_c = std::nullopt);

/// Deterministic standard-normal probe vectors.
std::vector<Vector> gaussian_vectors(int count, int dim, std::uint64_t seed);

/// Random instance: A = Q diag(lambda) Q^T with lambda uniform in
/// [eig_low, eig_high] (both negative), B dense Gaussian rescaled to spectral
/// norm b_norm.
MatrixInstance random_negdef_instance(int dim, std::uint64_t seed, double b_norm = 0.8,
                                      double eig_low = -4.0, double eig_high = -0.25);

/// Random commuting instance: same A construction, B a quadratic polynomial
/// in A rescaled to spectral norm b_norm, so AB - BA = 0 exactly in exact
/// arithmetic.
MatrixInstance random_commuting_instance(int dim, std::uint64_t seed, double b_norm = 0.8);

}  // namespace evosplit
