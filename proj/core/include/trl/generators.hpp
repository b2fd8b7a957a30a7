#pragma once

#include <cstdint>

#include "trl/numeric_rank.hpp"
#include "trl/tensor.hpp"

namespace trl {

// The 2x2 matrix [[0,1],[1,0]] over GF(2): rank 2, srank 3.
Tensor z2_counterexample();

// x(x)x(x)y + x(x)y(x)x + y(x)x(x)x with x = e1, y = e2.
SymTensor w_tensor(const FieldTag& tag);

// Binary cubic with slices S[.][.][0] = [[a,1],[1,0]], S[.][.][1] = [[1,0],[0,0]].
SymTensor pencil_example(const FieldTag& tag, double a);

// Entries drawn per symmetric orbit: uniform residues over GF(p), integers in
// [-9, 9] over the rationals, standard normals for float tags.
SymTensor random_symmetric(const FieldTag& tag, int d, int n, std::uint64_t seed);

// A random border-rank-2 normal form with orthonormal x, y (float tags only).
BorderForm random_border_form(const FieldTag& tag, int d, int n, std::uint64_t seed);

}  // namespace trl
