#include "qmech/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qmech/error.hpp"

namespace qmech {
namespace {

CMatrix kron_matrix(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void fix_phases(CMatrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double peak = col.cwiseAbs().maxCoeff();
    // First component within round-off of the peak, so that near-ties resolve
    // the same way on every platform.
    Eigen::Index pick = 0;
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) >= peak * (1.0 - 1e-9)) {
        pick = r;
        break;
      }
    }
    const cplx v = col(pick);
    if (std::abs(v) > 0.0) col *= std::conj(v) / std::abs(v);
  }
}

}  // namespace

Operator destroy(int dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "destroy: dim must be >= 2, got " + std::to_string(dim));
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(SpaceDims{dim}, std::move(a));
}

Operator create(int dim) { return destroy(dim).adjoint(); }

Operator number(int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "number: dim must be >= 1");
  CMatrix n = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return Operator::hermitian(SpaceDims{dim}, std::move(n));
}

Operator pauli(Pauli which) {
  const cplx i{0.0, 1.0};
  CMatrix m = CMatrix::Zero(2, 2);
  switch (which) {
    case Pauli::x:
      m << 0, 1, 1, 0;
      return Operator::hermitian(SpaceDims{2}, m);
    case Pauli::y:
      m << 0, i, -i, 0;
      return Operator::hermitian(SpaceDims{2}, m);
    case Pauli::z:
      m << -1, 0, 0, 1;
      return Operator::hermitian(SpaceDims{2}, m);
    case Pauli::plus:
      m(1, 0) = 1.0;
      return Operator(SpaceDims{2}, m);
    case Pauli::minus:
      m(0, 1) = 1.0;
      return Operator(SpaceDims{2}, m);
  }
  throw Error(ErrorKind::InvalidArgument, "pauli: unknown selector");
}

Operator embed(const Operator& op, int slot, const SpaceDims& space) {
  if (slot < 0 || slot >= space.slots()) {
    throw Error(ErrorKind::InvalidDimension, "embed: slot " + std::to_string(slot) + " out of range");
  }
  if (op.dim() != space[slot]) {
    throw Error(ErrorKind::InvalidDimension, "embed: operator dimension " + std::to_string(op.dim()) +
                                                 " does not match slot dimension " + std::to_string(space[slot]));
  }
  int before = 1;
  for (int s = 0; s < slot; ++s) before *= space[s];
  const int after = space.stride(slot);
  CMatrix m = kron_matrix(kron_matrix(CMatrix::Identity(before, before), op.data()),
                          CMatrix::Identity(after, after));
  if (op.is_hermitian()) return Operator::hermitian(space, std::move(m));
  return Operator(space, std::move(m));
}

Operator kron(const Operator& a, const Operator& b) {
  std::vector<int> dims(a.space().dims().begin(), a.space().dims().end());
  dims.insert(dims.end(), b.space().dims().begin(), b.space().dims().end());
  CMatrix m = kron_matrix(a.data(), b.data());
  if (a.is_hermitian() && b.is_hermitian()) return Operator::hermitian(SpaceDims(dims), std::move(m));
  return Operator(SpaceDims(dims), std::move(m));
}

EigenSystem eig_hermitian(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw Error(ErrorKind::InvalidDimension, "eig_hermitian: not square");
  const double scale = std::max(1.0, matrix.size() ? matrix.cwiseAbs().maxCoeff() : 0.0);
  const double res = matrix.size() ? (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (res > 1e-12 * scale) {
    throw Error(ErrorKind::ContractViolation,
                "eig_hermitian: input is not Hermitian (residual " + std::to_string(res) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "eig_hermitian: solver failed");
  EigenSystem out{es.eigenvalues(), es.eigenvectors()};
  fix_phases(out.vectors);
  return out;
}

EigenSystem eig_hermitian(const Operator& op) { return eig_hermitian(op.data()); }

CMatrix unitary_propagator(const EigenSystem& h, double t) {
  const cplx i{0.0, 1.0};
  CVector phases = (-i * t * h.values.cast<cplx>()).array().exp();
  return h.vectors * phases.asDiagonal() * h.vectors.adjoint();
}

CMatrix unitary_propagator(const Operator& h, double t) { return unitary_propagator(eig_hermitian(h), t); }

Operator displacement(cplx beta, int dim) {
  const double mag = std::abs(beta);
  if (!(mag * mag + 5.0 * mag < dim)) {
    throw Error(ErrorKind::TruncationRisk, "displacement: |beta|=" + std::to_string(mag) +
                                               " too large for dim " + std::to_string(dim));
  }
  const Operator a = destroy(dim);
  if (mag == 0.0) return Operator::identity(SpaceDims{dim});
  const cplx i{0.0, 1.0};
  // K = i (beta a^dagger - beta^* a) is Hermitian and D = exp(-i K).
  CMatrix k = i * (beta * a.data().adjoint() - std::conj(beta) * a.data());
  k = 0.5 * (k + k.adjoint()).eval();
  return Operator(SpaceDims{dim}, unitary_propagator(eig_hermitian(k), 1.0));
}

StateVector coherent_state(cplx beta, int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "coherent_state: dim must be >= 1");
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * beta / std::sqrt(static_cast<double>(n));
  return StateVector::normalized(SpaceDims{dim}, std::move(c));
}

Operator parity(int dim) {
  CMatrix p = CMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return Operator::hermitian(SpaceDims{dim}, std::move(p));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const SpaceDims& space = rho.space();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw Error(ErrorKind::InvalidArgument, "partial_trace: repeated slot");
  }
  for (int s : kept) {
    if (s < 0 || s >= space.slots()) throw Error(ErrorKind::InvalidArgument, "partial_trace: slot out of range");
  }
  std::vector<int> traced;
  for (int s = 0; s < space.slots(); ++s) {
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
  }

  // Flat offsets contributed by each multi-index of the kept and traced groups.
  auto offsets = [&](const std::vector<int>& group) {
    std::vector<int> out{0};
    for (int s : group) {
      std::vector<int> next;
      next.reserve(out.size() * static_cast<std::size_t>(space[s]));
      for (int base : out) {
        for (int i = 0; i < space[s]; ++i) next.push_back(base + i * space.stride(s));
      }
      out = std::move(next);
    }
    return out;
  };
  const std::vector<int> keep_off = offsets(kept);
  const std::vector<int> trace_off = offsets(traced);

  const int nk = static_cast<int>(keep_off.size());
  CMatrix red = CMatrix::Zero(nk, nk);
  const CMatrix& m = rho.matrix();
  for (int c = 0; c < nk; ++c) {
    for (int r = 0; r < nk; ++r) {
      cplx acc = 0.0;
      for (int t : trace_off) acc += m(keep_off[r] + t, keep_off[c] + t);
      red(r, c) = acc;
    }
  }
  std::vector<int> dims;
  for (int s : kept) dims.push_back(space[s]);
  if (dims.empty()) dims.push_back(1);
  return DensityMatrix::unchecked(SpaceDims(dims), std::move(red));
}

CMatrix partial_transpose(const DensityMatrix& rho, Bipartition cut) {
  const SpaceDims& space = rho.space();
  if (cut.cut < 1 || cut.cut >= space.slots()) {
    throw Error(ErrorKind::InvalidArgument, "partial_transpose: bipartition needs at least one slot per side");
  }
  const int db = space.stride(cut.cut - 1);
  const int da = space.total() / db;
  const CMatrix& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) {
      for (int a2 = 0; a2 < da; ++a2) {
        for (int b2 = 0; b2 < db; ++b2) {
          out(a * db + b, a2 * db + b2) = m(a * db + b2, a2 * db + b);
        }
      }
    }
  }
  return out;
}

double log_negativity(const DensityMatrix& rho, Bipartition cut) {
  CMatrix pt = partial_transpose(rho, cut);
  pt = 0.5 * (pt + pt.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(pt, Eigen::EigenvaluesOnly);
  double negative = 0.0;
  for (double v : es.eigenvalues()) {
    if (v < 0.0) negative += v;
  }
  return std::log2(2.0 * std::abs(negative) + 1.0);
}

}  // namespace qmech
