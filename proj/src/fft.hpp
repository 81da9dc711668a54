#pragma once
#include "beam/field.hpp"

// Internal transform backend. Unnormalized DFT with sign convention
//   sign = -1: out_k = sum_j in_j exp(-i xi_k . x_j)   (forward)
//   sign = +1: out_j = sum_k in_k exp(+i xi_k . x_j)   (backward)
namespace beam::detail {
void dft(const GridSpec& g, const cvec& in, cvec& out, int sign);
}
