#include "evosplit/matrix_backend.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "evosplit/errors.hpp"

namespace evosplit {

namespace {

double max_norm(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

// One fixed-step classical Runge-Kutta sweep for U' = A(t) U over [s, t].
Matrix rk4_sweep(const MatrixFamily& A, double s, double t, long steps) {
  const int dim = static_cast<int>(A(s).rows());
  Matrix U = Matrix::Identity(dim, dim);
  const double h = (t - s) / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    const double tk = s + static_cast<double>(k) * h;
    const Matrix A0 = A(tk);
    const Matrix Ah = A(tk + 0.5 * h);
    const Matrix A1 = A(tk + h);
    const Matrix k1 = A0 * U;
    const Matrix k2 = Ah * (U + (0.5 * h) * k1);
    const Matrix k3 = Ah * (U + (0.5 * h) * k2);
    const Matrix k4 = A1 * (U + h * k3);
    U += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return U;
}

}  // namespace

Matrix matrix_expm(const Matrix& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("matrix_expm: matrix must be square");
  }
  const int n = static_cast<int>(M.rows());
  if (n == 0) return Matrix(0, 0);

  // Pade-13 coefficients and the corresponding scaling threshold.
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const Matrix A = M / std::pow(2.0, squarings);

  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A2 * A4;

  const Matrix U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
           b[3] * A2 + b[1] * I);
  const Matrix V =
      A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 +
      b[0] * I;

  Matrix E = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < squarings; ++k) E = E * E;
  return E;
}

Matrix oracle_evolution(const MatrixFamily& A, double s, double t, double tol,
                        long max_steps) {
  if (!(tol > 0.0)) throw std::invalid_argument("oracle_evolution: tol must be positive");
  const Matrix probe = A(s);
  if (probe.rows() != probe.cols()) {
    throw std::invalid_argument("oracle_evolution: family must produce square matrices");
  }
  const int dim = static_cast<int>(probe.rows());
  if (t == s) return Matrix::Identity(dim, dim);

  long steps = 16;
  Matrix prev = rk4_sweep(A, s, t, steps);
  while (2 * steps <= max_steps) {
    steps *= 2;
    Matrix next = rk4_sweep(A, s, t, steps);
    const double diff = max_norm(next - prev);
    const double scale = std::max(1.0, max_norm(next));
    if (diff <= tol * scale) return next;
    prev = std::move(next);
  }
  std::ostringstream msg;
  msg << "oracle_evolution: tolerance " << tol << " not met on [" << s << ", " << t
      << "] within " << max_steps << " steps";
  throw NumericalError(msg.str());
}

Matrix fractional_power_of_negative(const Matrix& A, double alpha) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("fractional power: matrix must be square");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if (max_norm(A - A.transpose()) > 1e-12 * scale) {
    throw std::invalid_argument("fractional power: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(A);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("fractional power: eigendecomposition failed");
  }
  const Vector lambda = solver.eigenvalues();
  if (lambda.maxCoeff() >= 0.0) {
    throw std::invalid_argument("fractional power: matrix must be negative definite");
  }
  Vector powered(lambda.size());
  for (int i = 0; i < lambda.size(); ++i) powered(i) = std::pow(-lambda(i), alpha);
  return solver.eigenvectors() * powered.asDiagonal() * solver.eigenvectors().transpose();
}

CommutatorReport commutator_bound_check(const MatrixInstance& inst, double alpha,
                                        std::span<const Vector> vectors,
                                        std::optional<double> user_c) {
  if (vectors.empty()) {
    throw std::invalid_argument("commutator_bound_check: need at least one probe vector");
  }
  const Matrix commutator = inst.A * inst.B - inst.B * inst.A;
  const Matrix frac = fractional_power_of_negative(inst.A, alpha);

  double best_c = 0.0;
  std::vector<double> lhs(vectors.size()), rhs(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Vector& v = vectors[i];
    lhs[i] = (commutator * v).norm();
    rhs[i] = (frac * v).norm();
    if (rhs[i] == 0.0) {
      if (lhs[i] == 0.0) continue;
      throw NumericalError("commutator_bound_check: (-A)^alpha annihilated a probe vector");
    }
    best_c = std::max(best_c, lhs[i] / rhs[i]);
  }

  const double c_ref = user_c.value_or(best_c);
  double max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    max_violation = std::max(max_violation, lhs[i] - c_ref * rhs[i]);
  }

  CommutatorReport report;
  report.alpha = alpha;
  report.best_c = best_c;
  report.max_violation = max_violation;
  report.num_vectors = static_cast<int>(vectors.size());
  return report;
}

std::vector<Vector> gaussian_vectors(int count, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

Matrix random_orthogonal(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

Matrix negdef_from(std::mt19937_64& rng, int dim, double eig_low, double eig_high) {
  std::uniform_real_distribution<double> eig(eig_low, eig_high);
  const Matrix Q = random_orthogonal(dim, rng);
  Vector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = eig(rng);
  Matrix A = Q * lambda.asDiagonal() * Q.transpose();
  return 0.5 * (A + A.transpose());
}

double spectral_norm(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

}  // namespace

MatrixInstance random_negdef_instance(int dim, std::uint64_t seed, double b_norm,
                                      double eig_low, double eig_high) {
  if (dim < 1) throw std::invalid_argument("random_negdef_instance: dim must be >= 1");
  if (!(eig_low < eig_high) || eig_high >= 0.0) {
    throw std::invalid_argument("random_negdef_instance: eigenvalue range must be negative");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  MatrixInstance inst;
  inst.A = negdef_from(rng, dim, eig_low, eig_high);
  Matrix B(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) B(i, j) = normal(rng);
  const double norm = spectral_norm(B);
  inst.B = (norm > 0.0) ? Matrix((b_norm / norm) * B) : Matrix::Zero(dim, dim);
  return inst;
}

MatrixInstance random_commuting_instance(int dim, std::uint64_t seed, double b_norm) {
  if (dim < 1) throw std::invalid_argument("random_commuting_instance: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  MatrixInstance inst;
  inst.A = negdef_from(rng, dim, -4.0, -0.25);
  const Matrix I = Matrix::Identity(dim, dim);
  Matrix B = coeff(rng) * I + coeff(rng) * inst.A + coeff(rng) * inst.A * inst.A;
  const double norm = spectral_norm(B);
  inst.B = (norm > 0.0) ? Matrix((b_norm / norm) * B) : Matrix::Zero(dim, dim);
  return inst;
}

}  // namespace evosplit
