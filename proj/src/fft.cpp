#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace beam::detail {

namespace {

// One cached plan per (n, N, sign), executed through plan-owned buffers so caller
// arrays need no special alignment. FFTW_ESTIMATE keeps planning deterministic.
struct PlanSlot {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::size_t len = 0;
};

std::mutex g_mutex;
std::map<std::tuple<int, int, int>, PlanSlot>& plan_cache() {
  static std::map<std::tuple<int, int, int>, PlanSlot> cache;
  return cache;
}

PlanSlot& get_slot(const GridSpec& g, int sign) {
  auto key = std::make_tuple(g.n, g.N, sign);
  auto& cache = plan_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  PlanSlot slot;
  slot.len = g.size();
  slot.in = fftw_alloc_complex(slot.len);
  slot.out = fftw_alloc_complex(slot.len);
  int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  if (g.n == 1)
    slot.plan = fftw_plan_dft_1d(g.N, slot.in, slot.out, dir, FFTW_ESTIMATE);
  else
    slot.plan = fftw_plan_dft_2d(g.N, g.N, slot.in, slot.out, dir, FFTW_ESTIMATE);
  return cache.emplace(key, slot).first->second;
}

}  // namespace

void dft(const GridSpec& g, const cvec& in, cvec& out, int sign) {
  g.validate();
  std::lock_guard<std::mutex> lock(g_mutex);
  PlanSlot& slot = get_slot(g, sign);
  for (std::size_t i = 0; i < slot.len; ++i) {
    slot.in[i][0] = in[i].real();
    slot.in[i][1] = in[i].imag();
  }
  fftw_execute(slot.plan);
  out.resize(slot.len);
  for (std::size_t i = 0; i < slot.len; ++i) out[i] = cplx(slot.out[i][0], slot.out[i][1]);
}

}  // namespace beam::detail
