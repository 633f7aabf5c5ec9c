#pragma once

// Dense complex arithmetic for single-qubit strategies, two-qubit outcomes
// and 4x4 game unitaries. Basis ordering is fixed throughout the library:
// index 0 <-> |00>, 1 <-> |01>, 2 <-> |10>, 3 <-> |11>.

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

#include "qgame/tolerances.hpp"

namespace qgame {

using Complex = std::complex<double>;
using Vector4 = std::array<Complex, 4>;
using Matrix4 = std::array<std::array<Complex, 4>, 4>;

class NotUnitaryError : public std::invalid_argument {
 public:
  explicit NotUnitaryError(double defect);
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// A normalized qubit state x|0> + y|1>; one player's pure strategy.
class QubitState {
 public:
  /// Rejects amplitudes that are non-finite or off unit norm by more than `tol`.
  QubitState(Complex x, Complex y, double tol = kDefaultTolerances.normalization);

  /// Divides by the norm. Rejects zero or non-finite input.
  static QubitState normalized(Complex x, Complex y);

  static QubitState zero() { return {1.0, 0.0}; }
  static QubitState one() { return {0.0, 1.0}; }
  static QubitState plus();
  static QubitState minus();

  Complex x() const noexcept { return x_; }
  Complex y() const noexcept { return y_; }

  /// The unit vector (-conj(y), conj(x)), Hermitian-orthogonal to this one.
  QubitState orthogonal() const;

  /// Multiplies both amplitudes by `phase`, which must have unit modulus.
  QubitState with_phase(Complex phase) const;

  double norm_squared() const noexcept { return std::norm(x_) + std::norm(y_); }

 private:
  Complex x_;
  Complex y_;
};

/// A normalized state of two qubits in the computational basis.
class TwoQubitState {
 public:
  explicit TwoQubitState(const Vector4& amplitudes,
                         double tol = kDefaultTolerances.normalization);

  static TwoQubitState normalized(const Vector4& amplitudes);
  static TwoQubitState basis(int index);
  /// (|00> + |11>) / sqrt(2)
  static TwoQubitState bell();

  const Complex& operator[](int k) const { return amp_.at(static_cast<std::size_t>(k)); }
  const Vector4& amplitudes() const noexcept { return amp_; }
  double norm_squared() const noexcept;

 private:
  struct Unchecked {};
  TwoQubitState(const Vector4& amplitudes, Unchecked) : amp_(amplitudes) {}

  friend TwoQubitState tensor(const QubitState&, const QubitState&);
  friend class GameUnitary;

  Vector4 amp_;
};

/// A 4x4 unitary, row-major.
class GameUnitary {
 public:
  /// Throws NotUnitaryError when the max entrywise defect of U^dagger U - I
  /// exceeds `tol`, std::invalid_argument on non-finite entries.
  explicit GameUnitary(const Matrix4& m, double tol = kDefaultTolerances.unitarity);

  static GameUnitary identity();

  const Complex& operator()(int row, int col) const {
    return m_.at(static_cast<std::size_t>(row)).at(static_cast<std::size_t>(col));
  }
  const Matrix4& matrix() const noexcept { return m_; }
  Vector4 column(int col) const;

  /// Matrix-vector product. Norm is preserved to within the unitarity defect.
  TwoQubitState apply(const TwoQubitState& s) const;

 private:
  Matrix4 m_;
};

TwoQubitState tensor(const QubitState& a, const QubitState& b);
TwoQubitState apply(const GameUnitary& u, const TwoQubitState& s);

Complex inner(const Vector4& a, const Vector4& b);  // <a|b>, conjugate-linear in a
double fidelity(const TwoQubitState& a, const TwoQubitState& b);  // |<a|b>|^2
/// 2|a00 a11 - a01 a10|; zero exactly for product states.
double concurrence(const TwoQubitState& s);

Matrix4 multiply(const Matrix4& a, const Matrix4& b);
Matrix4 adjoint(const Matrix4& m);
Matrix4 identity_matrix();

double unitarity_defect(const Matrix4& m);
bool check_unitary(const Matrix4& m, double tol);

/// Unitary whose column 0 is `first_column`. Remaining columns come from
/// canonical basis seeds e0..e3, projected in ascending order; seeds whose
/// residual falls below the dependent-residual tolerance are skipped.
GameUnitary complete_unitary(const TwoQubitState& first_column);

/// First canonical seed e0..e3 whose component orthogonal to span(against)
/// has norm at least the dependent-residual tolerance, returned normalized.
/// `against` need not be orthogonal; dependent members are ignored.
/// nullopt when `against` spans the whole space.
std::optional<Vector4> orthogonal_seed(std::span<const Vector4> against);

// Test and sampling helpers: Gram-Schmidt of i.i.d. standard-normal complex
// matrices, and Haar-random qubit states.
GameUnitary random_unitary(std::mt19937_64& rng);
QubitState random_qubit(std::mt19937_64& rng);
Complex random_phase(std::mt19937_64& rng);

std::string to_string(const Complex& z);

}  // namespace qgame
