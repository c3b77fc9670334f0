#include "qmech/operator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qmech/error.hpp"

namespace qmech {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ContractViolation: return "contract-violation";
    case ErrorKind::TruncationRisk: return "truncation-risk";
    case ErrorKind::NearResonance: return "near-resonance";
    case ErrorKind::DegenerateJunction: return "degenerate-junction";
    case ErrorKind::UnsupportedBasis: return "unsupported-basis";
    case ErrorKind::StepInstability: return "step-instability";
    case ErrorKind::PositivityViolation: return "positivity-violation";
    case ErrorKind::ProtocolInvalid: return "protocol-invalid";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

SpaceDims::SpaceDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorKind::InvalidDimension, "SpaceDims: empty dimension list");
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorKind::InvalidDimension, "SpaceDims: dimension " + std::to_string(d) + " < 1");
  }
}

int SpaceDims::operator[](int slot) const {
  if (slot < 0 || slot >= slots()) {
    throw Error(ErrorKind::InvalidDimension, "SpaceDims: slot " + std::to_string(slot) + " out of range");
  }
  return dims_[static_cast<std::size_t>(slot)];
}

int SpaceDims::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
}

int SpaceDims::stride(int slot) const {
  int s = 1;
  for (int k = slot + 1; k < slots(); ++k) s *= dims_[static_cast<std::size_t>(k)];
  return s;
}

Operator::Operator(SpaceDims space, CMatrix data) : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != data_.cols() || data_.rows() != space_.total()) {
    throw Error(ErrorKind::InvalidDimension,
                "Operator: matrix is " + std::to_string(data_.rows()) + "x" + std::to_string(data_.cols()) +
                    " but space total is " + std::to_string(space_.total()));
  }
}

Operator Operator::hermitian(SpaceDims space, CMatrix data) {
  Operator op(std::move(space), std::move(data));
  const double scale = std::max(1.0, op.max_abs());
  const double res = op.hermiticity_residual();
  if (res > 1e-12 * scale) {
    throw Error(ErrorKind::ContractViolation,
                "Operator::hermitian: residual " + std::to_string(res) + " exceeds tolerance");
  }
  CMatrix sym = 0.5 * (op.data_ + op.data_.adjoint());
  op.data_ = std::move(sym);
  op.hermitian_ = true;
  return op;
}

Operator Operator::identity(SpaceDims space) {
  const int n = space.total();
  Operator op(std::move(space), CMatrix::Identity(n, n));
  op.hermitian_ = true;
  return op;
}

Operator Operator::zero(SpaceDims space) {
  const int n = space.total();
  Operator op(std::move(space), CMatrix::Zero(n, n));
  op.hermitian_ = true;
  return op;
}

double Operator::hermiticity_residual() const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::max_abs() const { return data_.size() ? data_.cwiseAbs().maxCoeff() : 0.0; }

Operator Operator::adjoint() const {
  Operator op(space_, data_.adjoint());
  op.hermitian_ = hermitian_;
  return op;
}

Operator& Operator::operator+=(const Operator& other) {
  if (!(space_ == other.space_)) throw Error(ErrorKind::InvalidDimension, "Operator +: space mismatch");
  data_ += other.data_;
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  if (!(space_ == other.space_)) throw Error(ErrorKind::InvalidDimension, "Operator -: space mismatch");
  data_ -= other.data_;
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

Operator& Operator::operator*=(double scale) {
  data_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (!(a.space_ == b.space_)) throw Error(ErrorKind::InvalidDimension, "Operator *: space mismatch");
  return Operator(a.space_, a.data_ * b.data_);
}

Operator operator*(cplx s, const Operator& a) {
  Operator op(a.space_, s * a.data_);
  op.hermitian_ = a.hermitian_ && s.imag() == 0.0;
  return op;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

StateVector::StateVector(SpaceDims space, CVector amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (amps_.size() != space_.total()) throw Error(ErrorKind::InvalidDimension, "StateVector: length mismatch");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "StateVector: norm " + std::to_string(norm) + " is not 1");
  }
}

StateVector StateVector::normalized(SpaceDims space, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw Error(ErrorKind::InvalidArgument, "StateVector: zero vector");
  return StateVector(std::move(space), amplitudes / norm);
}

StateVector StateVector::basis(SpaceDims space, std::span<const int> indices) {
  if (static_cast<int>(indices.size()) != space.slots()) {
    throw Error(ErrorKind::InvalidDimension, "StateVector::basis: one index per slot required");
  }
  int flat = 0;
  for (int s = 0; s < space.slots(); ++s) {
    const int i = indices[static_cast<std::size_t>(s)];
    if (i < 0 || i >= space[s]) throw Error(ErrorKind::InvalidDimension, "StateVector::basis: index out of range");
    flat += i * space.stride(s);
  }
  CVector v = CVector::Zero(space.total());
  v(flat) = 1.0;
  return StateVector(std::move(space), std::move(v));
}

DensityMatrix::DensityMatrix(SpaceDims space, CMatrix matrix) : space_(std::move(space)), rho_(std::move(matrix)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() != space_.total()) {
    throw Error(ErrorKind::InvalidDimension, "DensityMatrix: shape mismatch");
  }
  const double res = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (res > 1e-9) throw Error(ErrorKind::InvalidArgument, "DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - cplx(1.0)) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "DensityMatrix: trace is not 1");
  }
}

DensityMatrix DensityMatrix::unchecked(SpaceDims space, CMatrix matrix) {
  DensityMatrix rho;
  rho.space_ = std::move(space);
  rho.rho_ = std::move(matrix);
  return rho;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix::unchecked(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

cplx expect(const Operator& op, const DensityMatrix& rho) {
  if (!(op.space() == rho.space())) throw Error(ErrorKind::InvalidDimension, "expect: space mismatch");
  // Tr(A rho) without forming the product.
  return (op.data().transpose().cwiseProduct(rho.matrix())).sum();
}

cplx expect(const Operator& op, const StateVector& psi) {
  if (!(op.space() == psi.space())) throw Error(ErrorKind::InvalidDimension, "expect: space mismatch");
  return psi.amplitudes().dot(op.data() * psi.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!(a.space() == b.space())) throw Error(ErrorKind::InvalidDimension, "fidelity: space mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace qmech
