#pragma once
#include <complex>
#include <vector>

#include "beam/grid.hpp"

namespace beam {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Physical-space samples. real_tagged records the promise that the field is real-valued;
// operations that preserve realness propagate the tag, and check_real_tag verifies it.
struct Field {
  GridSpec grid;
  cvec a;
  bool real_tagged = false;
};

// Frequency-space coefficients c_k, normalized so that f(x) = sum_k c_k exp(i xi_k . x).
// For a real-tagged spectrum the coefficients are conjugate-symmetric: c_{-k} = conj(c_k).
struct Spectrum {
  GridSpec grid;
  cvec c;
  bool real_tagged = false;
};

Field make_zero_field(const GridSpec& g, bool real_tagged = true);
Spectrum make_zero_spectrum(const GridSpec& g, bool real_tagged = true);

Spectrum to_spectrum(const Field& f);
Field from_spectrum(const Spectrum& s);

// max |Im a| over samples (field) or max |c_{-k} - conj(c_k)| (spectrum), as an absolute value;
// callers compare against a tolerance scaled by the field's size
double real_tag_defect(const Field& f);
double real_tag_defect(const Spectrum& s);

// pointwise lattice operations used throughout; grids must match
Spectrum axpy(const Spectrum& x, const Spectrum& y, cplx alpha);  // alpha*x + y
double max_abs(const Field& f);
double max_abs_diff(const Field& f, const Field& g);

}  // namespace beam
