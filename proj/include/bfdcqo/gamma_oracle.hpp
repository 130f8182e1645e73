// Copyright 2025-2026 The bfdcqo developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>

#include "bfdcqo/instances.hpp"

namespace bfdcqo {

namespace detail {

inline Eigen::MatrixXcd pauli_on_site(int n, int site, char which) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd p;
  switch (which) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -1i, 1i, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli label");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::MatrixXcd factor = (q == site) ? Eigen::MatrixXcd(p) : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity());
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * factor;
    m = std::move(next);
  }
  return m;
}

}  // namespace detail

// Squared Hilbert-Schmidt norms of the first two nested commutators,
//   O1 = [H_ad, d H_ad / d lambda],  O2 = [H_ad, O1],
//   Gamma_k = Tr(O_k^dagger O_k),
// built from explicit 2^n matrices. Verification-only: the closed-form
// CDPolynomial must satisfy alpha1 = -Gamma1/Gamma2 everywhere. With
// normalize_trace the trace is divided by 2^n; the ratio is unaffected.
struct GammaPair {
  double gamma1;
  double gamma2;
};

inline GammaPair gamma_oracle(const SpinGlassInstance& inst, std::span<const double> hx,
                              std::span<const double> hb, double lam,
                              bool normalize_trace = false) {
  const int n = inst.n();
  if (n > 8) throw std::invalid_argument("dense oracle limited to 8 spins");
  if (static_cast<int>(hx.size()) != n || static_cast<int>(hb.size()) != n)
    throw std::invalid_argument("field vector length does not match spin count");
  const long dim = 1L << n;
  Eigen::MatrixXcd h_init = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    h_init += hx[i] * detail::pauli_on_site(n, i, 'X');
    h_init -= hb[i] * detail::pauli_on_site(n, i, 'Z');
  }
  Eigen::MatrixXcd h_final = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    h_final += inst.fields()[static_cast<std::size_t>(i)] * detail::pauli_on_site(n, i, 'Z');
  for (const Coupling& c : inst.couplings()) {
    Eigen::MatrixXcd zz = detail::pauli_on_site(n, c.i, 'Z') * detail::pauli_on_site(n, c.j, 'Z');
    h_final += c.value * zz;
  }
  const Eigen::MatrixXcd h_ad = (1.0 - lam) * h_init + lam * h_final;
  const Eigen::MatrixXcd d_h = h_final - h_init;
  auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return Eigen::MatrixXcd(a * b - b * a);
  };
  const Eigen::MatrixXcd o1 = comm(h_ad, d_h);
  const Eigen::MatrixXcd o2 = comm(h_ad, o1);
  const double scale = normalize_trace ? static_cast<double>(dim) : 1.0;
  return {(o1.adjoint() * o1).trace().real() / scale,
          (o2.adjoint() * o2).trace().real() / scale};
}

}  // namespace bfdcqo
