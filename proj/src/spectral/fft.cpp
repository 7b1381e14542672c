#include "nsp/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace nsp::spectral {
namespace {

// FFTW_ESTIMATE keeps plan selection independent of timing, so repeated runs
// are bitwise reproducible.
class Plans {
 public:
  Plans(int dim, int n) {
    int dims[3] = {n, n, n};
    const std::size_t real_size = static_cast<std::size_t>(dim == 2 ? n * n : n * n * n);
    const std::size_t cplx_size = real_size / n * (n / 2 + 1);
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(cplx_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_r2c(dim, dims, r, c, flags);
    backward_ = fftw_plan_dft_c2r(dim, dims, c, r, flags);
    fftw_free(r);
    fftw_free(c);
  }
  ~Plans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  void forward(double* in, Complex* out) const {
    fftw_execute_dft_r2c(forward_, in, reinterpret_cast<fftw_complex*>(out));
  }
  void backward(Complex* in, double* out) const {
    fftw_execute_dft_c2r(backward_, reinterpret_cast<fftw_complex*>(in), out);
  }

 private:
  fftw_plan forward_;
  fftw_plan backward_;
};

const Plans& plans_for(const Grid& g) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(g.dim, g.n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Plans>(g.dim, g.n)).first;
  return *it->second;
}

}  // namespace

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField out(f.grid);
  std::vector<double> in = f.values;  // r2c may not preserve its input
  plans_for(f.grid).forward(in.data(), out.coeffs().data());
  out *= 1.0 / static_cast<double>(f.grid.physical_size());
  return out;
}

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out(f.grid());
  std::vector<Complex> in(f.coeffs().begin(), f.coeffs().end());  // c2r destroys its input
  plans_for(f.grid()).backward(in.data(), out.values.data());
  return out;
}

SpectralField transform_roundtrip(const SpectralField& f) { return to_spectral(to_physical(f)); }

}  // namespace nsp::spectral
