#ifndef OPCONVEX_TEST_HELPERS_HPP
#define OPCONVEX_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "opconvex/channel.hpp"
#include "opconvex/matrix.hpp"

namespace test_helpers {

// Random unital CP map: whiten a Ginibre Kraus list on the left so the
// operators form an operational partition of unity.
inline opconvex::KrausMap random_ucp(int n, int m, std::mt19937_64& rng) {
  std::vector<opconvex::CMat> ops;
  ops.reserve(m);
  for (int k = 0; k < m; ++k) ops.push_back(opconvex::random_ginibre(n, rng));
  opconvex::CMat t = opconvex::CMat::Zero(n, n);
  for (const auto& g : ops) t += g * g.adjoint();
  opconvex::CMat whitener = opconvex::psd_sqrt(t).inverse();
  for (auto& g : ops) g = (whitener * g).eval();
  return opconvex::KrausMap(n, std::move(ops));
}

// Independent Choi construction: place Phi(e_ij) at block (i,j) via
// Kronecker products, without touching the vectorized fast path.
inline opconvex::CMat choi_blockwise(const opconvex::KrausMap& phi) {
  const int n = phi.dim;
  opconvex::CMat c = opconvex::CMat::Zero(n * n, n * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const opconvex::CMat eij = opconvex::matrix_units(n, i, j);
      c += opconvex::kron(eij, opconvex::apply(phi, eij));
    }
  }
  return c;
}

// The transpose map sends e_ij to e_ji; its blockwise Choi matrix is the
// swap operator, which is not positive semidefinite.
inline opconvex::CMat transpose_choi(int n) {
  opconvex::CMat c = opconvex::CMat::Zero(n * n, n * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      c += opconvex::kron(opconvex::matrix_units(n, i, j),
                          opconvex::matrix_units(n, j, i));
    }
  }
  return c;
}

}  // namespace test_helpers

#endif
