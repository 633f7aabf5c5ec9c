#include "qgame/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace qgame {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double norm_squared(const Vector4& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// Removes the components of `v` along each (orthonormal) member of `basis`.
// Two sweeps keep the result orthogonal to working precision even when the
// residual is small relative to `v`.
void project_out(Vector4& v, const std::vector<Vector4>& basis) {
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (const auto& b : basis) {
      const Complex c = inner(b, v);
      for (std::size_t k = 0; k < 4; ++k) v[k] -= c * b[k];
    }
  }
}

std::vector<Vector4> orthonormalize(std::span<const Vector4> vectors) {
  std::vector<Vector4> basis;
  for (const auto& raw : vectors) {
    const double raw_norm = std::sqrt(norm_squared(raw));
    if (raw_norm == 0.0) continue;
    Vector4 v = raw;
    project_out(v, basis);
    const double n = std::sqrt(norm_squared(v));
    if (n < kDefaultTolerances.dependent_residual * raw_norm) continue;
    for (auto& z : v) z /= n;
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

NotUnitaryError::NotUnitaryError(double defect)
    : std::invalid_argument("matrix is not unitary: max |(U^dagger U - I)_jk| = " +
                            std::to_string(defect)),
      defect_(defect) {}

// ---------------------------------------------------------------------------
// QubitState

QubitState::QubitState(Complex x, Complex y, double tol) : x_(x), y_(y) {
  if (!finite(x) || !finite(y)) throw std::invalid_argument("qubit amplitudes must be finite");
  const double n = norm_squared();
  if (std::abs(n - 1.0) > tol) {
    throw std::invalid_argument("qubit state not normalized: |x|^2 + |y|^2 = " +
                                std::to_string(n));
  }
}

QubitState QubitState::normalized(Complex x, Complex y) {
  if (!finite(x) || !finite(y)) throw std::invalid_argument("qubit amplitudes must be finite");
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return {x / n, y / n};
}

QubitState QubitState::plus() { return normalized(1.0, 1.0); }
QubitState QubitState::minus() { return normalized(1.0, -1.0); }

QubitState QubitState::orthogonal() const { return {-std::conj(y_), std::conj(x_)}; }

QubitState QubitState::with_phase(Complex phase) const {
  if (std::abs(std::abs(phase) - 1.0) > kDefaultTolerances.normalization) {
    throw std::invalid_argument("global phase must have unit modulus");
  }
  return {phase * x_, phase * y_};
}

// ---------------------------------------------------------------------------
// TwoQubitState

TwoQubitState::TwoQubitState(const Vector4& amplitudes, double tol) : amp_(amplitudes) {
  for (const auto& z : amp_) {
    if (!finite(z)) throw std::invalid_argument("two-qubit amplitudes must be finite");
  }
  const double n = norm_squared();
  if (std::abs(n - 1.0) > tol) {
    throw std::invalid_argument("two-qubit state not normalized: sum |amp|^2 = " +
                                std::to_string(n));
  }
}

TwoQubitState TwoQubitState::normalized(const Vector4& amplitudes) {
  for (const auto& z : amplitudes) {
    if (!finite(z)) throw std::invalid_argument("two-qubit amplitudes must be finite");
  }
  const double n = std::sqrt(qgame::norm_squared(amplitudes));
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  Vector4 v = amplitudes;
  for (auto& z : v) z /= n;
  return TwoQubitState(v);
}

TwoQubitState TwoQubitState::basis(int index) {
  if (index < 0 || index > 3) throw std::out_of_range("basis index must be in [0, 3]");
  Vector4 v{};
  v[static_cast<std::size_t>(index)] = 1.0;
  return TwoQubitState(v);
}

TwoQubitState TwoQubitState::bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return TwoQubitState(Vector4{r, 0.0, 0.0, r});
}

double TwoQubitState::norm_squared() const noexcept { return qgame::norm_squared(amp_); }

// ---------------------------------------------------------------------------
// GameUnitary

GameUnitary::GameUnitary(const Matrix4& m, double tol) : m_(m) {
  for (const auto& row : m_) {
    for (const auto& z : row) {
      if (!finite(z)) throw std::invalid_argument("unitary entries must be finite");
    }
  }
  const double defect = unitarity_defect(m_);
  if (!(defect <= tol)) throw NotUnitaryError(defect);
}

GameUnitary GameUnitary::identity() { return GameUnitary(identity_matrix()); }

Vector4 GameUnitary::column(int col) const {
  Vector4 c{};
  for (std::size_t r = 0; r < 4; ++r) c[r] = m_[r].at(static_cast<std::size_t>(col));
  return c;
}

TwoQubitState GameUnitary::apply(const TwoQubitState& s) const {
  Vector4 out{};
  for (std::size_t r = 0; r < 4; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < 4; ++c) acc += m_[r][c] * s.amp_[c];
    out[r] = acc;
  }
  return TwoQubitState(out, TwoQubitState::Unchecked{});
}

// ---------------------------------------------------------------------------
// Free functions

TwoQubitState tensor(const QubitState& a, const QubitState& b) {
  return TwoQubitState(Vector4{a.x() * b.x(), a.x() * b.y(), a.y() * b.x(), a.y() * b.y()},
                       TwoQubitState::Unchecked{});
}

TwoQubitState apply(const GameUnitary& u, const TwoQubitState& s) { return u.apply(s); }

Complex inner(const Vector4& a, const Vector4& b) {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < 4; ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

double fidelity(const TwoQubitState& a, const TwoQubitState& b) {
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

double concurrence(const TwoQubitState& s) {
  return 2.0 * std::abs(s[0] * s[3] - s[1] * s[2]);
}

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
  Matrix4 out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  }
  return out;
}

Matrix4 adjoint(const Matrix4& m) {
  Matrix4 out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = std::conj(m[j][i]);
  }
  return out;
}

Matrix4 identity_matrix() {
  Matrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

double unitarity_defect(const Matrix4& m) {
  const Matrix4 g = multiply(adjoint(m), m);
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double d = std::abs(g[i][j] - (i == j ? Complex(1.0) : Complex(0.0)));
      if (std::isnan(d)) return d;
      worst = std::max(worst, d);
    }
  }
  return worst;
}

bool check_unitary(const Matrix4& m, double tol) { return unitarity_defect(m) <= tol; }

std::optional<Vector4> orthogonal_seed(std::span<const Vector4> against) {
  const std::vector<Vector4> basis = orthonormalize(against);
  for (std::size_t k = 0; k < 4; ++k) {
    Vector4 seed{};
    seed[k] = 1.0;
    project_out(seed, basis);
    const double n = std::sqrt(norm_squared(seed));
    if (n < kDefaultTolerances.dependent_residual) continue;
    for (auto& z : seed) z /= n;
    return seed;
  }
  return std::nullopt;
}

GameUnitary complete_unitary(const TwoQubitState& first_column) {
  std::vector<Vector4> columns{first_column.amplitudes()};
  while (columns.size() < 4) {
    auto next = orthogonal_seed(columns);
    if (!next) throw std::logic_error("orthonormal completion ran out of seeds");
    columns.push_back(*next);
  }
  Matrix4 m{};
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = columns[c][r];
  }
  return GameUnitary(m);
}

GameUnitary random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector4> raw(4);
  for (auto& v : raw) {
    for (auto& z : v) z = Complex(normal(rng), normal(rng));
  }
  const std::vector<Vector4> q = orthonormalize(raw);
  if (q.size() != 4) return random_unitary(rng);  // measure-zero degeneracy
  Matrix4 m{};
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = q[c][r];
  }
  return GameUnitary(m);
}

QubitState random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return QubitState::normalized(Complex(normal(rng), normal(rng)),
                                Complex(normal(rng), normal(rng)));
}

Complex random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  return std::polar(1.0, angle(rng));
}

std::string to_string(const Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

}  // namespace qgame
