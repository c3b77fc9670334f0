#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qmech {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Ordered subsystem dimensions of a composite Hilbert space. Slot 0 is the
/// most significant factor of the Kronecker ordering.
class SpaceDims {
 public:
  SpaceDims() : dims_{1} {}
  explicit SpaceDims(std::vector<int> dims);
  SpaceDims(std::initializer_list<int> dims) : SpaceDims(std::vector<int>(dims)) {}

  std::span<const int> dims() const { return dims_; }
  int slots() const { return static_cast<int>(dims_.size()); }
  int operator[](int slot) const;
  int total() const;

  /// Product of the dimensions of slots strictly after `slot`.
  int stride(int slot) const;

  friend bool operator==(const SpaceDims&, const SpaceDims&) = default;

 private:
  std::vector<int> dims_;
};

/// Dense square operator on a composite space.
class Operator {
 public:
  Operator(SpaceDims space, CMatrix data);

  /// Builds an operator flagged Hermitian. Throws ContractViolation when the
  /// residual max|A - A^dagger| exceeds 1e-12 of the largest element; the
  /// stored matrix is then symmetrized exactly.
  static Operator hermitian(SpaceDims space, CMatrix data);
  static Operator identity(SpaceDims space);
  static Operator zero(SpaceDims space);

  const SpaceDims& space() const { return space_; }
  const CMatrix& data() const { return data_; }
  int dim() const { return static_cast<int>(data_.rows()); }
  bool is_hermitian() const { return hermitian_; }

  /// max_ij |A_ij - conj(A_ji)|.
  double hermiticity_residual() const;
  double max_abs() const;

  Operator adjoint() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(double scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(double s, Operator a) { return a *= s; }
  friend Operator operator*(cplx s, const Operator& a);

 private:
  SpaceDims space_;
  CMatrix data_;
  bool hermitian_ = false;
};

Operator commutator(const Operator& a, const Operator& b);

/// Normalized pure state.
class StateVector {
 public:
  /// Throws InvalidArgument unless the norm is 1 within 1e-10.
  StateVector(SpaceDims space, CVector amplitudes);
  static StateVector normalized(SpaceDims space, CVector amplitudes);
  static StateVector basis(SpaceDims space, std::span<const int> indices);

  const SpaceDims& space() const { return space_; }
  const CVector& amplitudes() const { return amps_; }

 private:
  SpaceDims space_;
  CVector amps_;
};

/// Density matrix. The checked constructor verifies Hermiticity and unit
/// trace; positivity is checked separately because it costs a diagonalization.
class DensityMatrix {
 public:
  DensityMatrix(SpaceDims space, CMatrix matrix);
  static DensityMatrix unchecked(SpaceDims space, CMatrix matrix);
  static DensityMatrix from_pure(const StateVector& psi);

  const SpaceDims& space() const { return space_; }
  const CMatrix& matrix() const { return rho_; }

  cplx trace() const { return rho_.trace(); }
  double min_eigenvalue() const;
  double purity() const;

 private:
  DensityMatrix() = default;
  SpaceDims space_;
  CMatrix rho_;
};

cplx expect(const Operator& op, const DensityMatrix& rho);
cplx expect(const Operator& op, const StateVector& psi);
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qmech
