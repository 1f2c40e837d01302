#ifndef OPCONVEX_CHANNEL_HPP
#define OPCONVEX_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "opconvex/matrix.hpp"

namespace opconvex {

// A completely positive map x -> sum_i v_i x v_i^* given by its Kraus
// operator list. `canonical` marks lists produced by kraus_from_choi:
// linearly independent operators, ordered by descending Choi eigenvalue,
// each operator's first nonzero entry (row-major) real positive.
struct KrausMap {
  int dim = 0;
  std::vector<CMat> kraus;
  bool canonical = false;

  KrausMap(int n, std::vector<CMat> ops, bool canonical_form = false);
};

// The n^2 x n^2 block matrix with block (i,j) equal to Phi(e_ij);
// PSD exactly when the map is completely positive.
struct ChoiMatrix {
  int dim = 0;
  CMat matrix;

  ChoiMatrix(int n, CMat m);
};

// Classification flags with the residuals they were decided on.
// size is the canonical Kraus operator count (Choi rank); 0 when the map
// is not completely positive and the count is undefined.
struct ChannelFlags {
  bool cp = false;
  bool unital = false;
  bool trace_preserving = false;
  bool automorphism = false;
  std::size_t size = 0;
  double choi_min_eigenvalue = 0.0;
  double unital_defect = 0.0;
  double trace_defect = 0.0;
};

// The map Ad v : x -> v x v^*.
KrausMap ad(const CMat& v);

// The identity map on M_n.
KrausMap identity_map(int n);

// sum_i v_i x v_i^*.
CMat apply(const KrausMap& phi, const CMat& x);

ChoiMatrix to_choi(const KrausMap& phi);

// Canonical Kraus list from a PSD Choi matrix: eigenvectors with eigenvalue
// above tol * max(1, trace) are scaled by sqrt(eigenvalue) and reshaped
// column-major, which is exactly the convention that makes
// kraus_from_choi(to_choi(phi)) reproduce phi as a map.
KrausMap kraus_from_choi(const ChoiMatrix& c, double tol = kDefaultTol);

// The uniquely determined canonical Kraus operator count (= Choi rank with
// eigenvalue cutoff tol * max(1, trace)). Rejects non-CP input.
std::size_t size(const KrausMap& phi, double tol = kDefaultTol);

// Flags are always returned, residuals included, never thrown.
ChannelFlags classify(const KrausMap& phi, double tol = kDefaultTol);

// Frobenius distance between Choi matrices; the representation-independent
// metric used everywhere maps are compared.
double map_distance(const KrausMap& phi, const KrausMap& psi);

// Kraus list of all products outer_i * inner_j; not canonicalized, so the
// witness structure of operational combinations stays inspectable.
KrausMap compose(const KrausMap& outer, const KrausMap& inner);

// kraus_from_choi(to_choi(phi)).
KrausMap canonicalize(const KrausMap& phi, double tol = kDefaultTol);

// Same map scaled by a nonnegative factor (Kraus operators scaled by its
// square root).
KrausMap scale_map(const KrausMap& phi, double factor);

}  // namespace opconvex

#endif
