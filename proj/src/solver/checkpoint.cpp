#include "nsp/solver/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "nsp/error.hpp"

namespace nsp::solver {
namespace {

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
  void raw(const char* s, std::size_t n) { buf_.insert(buf_.end(), s, s + n); }
  const std::vector<char>& bytes() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> b) : buf_(std::move(b)) {}
  std::uint64_t uint(int width) {
    if (pos_ + width > buf_.size()) throw IoError("checkpoint is truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += width;
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  double f64() { return std::bit_cast<double>(uint(8)); }
  std::string raw(std::size_t n) {
    if (pos_ + n > buf_.size()) throw IoError("checkpoint is truncated");
    std::string s(buf_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const FluidState& state,
                      const PhysicalParams& params) {
  const auto& g = state.grid();
  Writer w;
  w.raw("NSPC", 4);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(g.dim));
  w.u32(static_cast<std::uint32_t>(g.n));
  w.f64(g.length);
  w.f64(state.t);
  w.f64(params.mu_inf);
  w.f64(params.lambda_inf);
  w.f64(params.gamma);
  w.u32(static_cast<std::uint32_t>(params.viscosity));
  w.f64(params.beta);
  w.u32(params.poisson ? 1 : 0);
  auto plane = [&](const spectral::SpectralField& f) {
    for (const auto& c : f.coeffs()) {
      w.f64(c.real());
      w.f64(c.imag());
    }
  };
  plane(state.a);
  for (const auto& c : state.u) plane(c);

  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Reader r(std::vector<char>(std::istreambuf_iterator<char>(in), {}));
  if (r.raw(4) != "NSPC") throw IoError("not a checkpoint: " + path.string());
  if (r.u32() != kCheckpointVersion) throw IoError("unsupported checkpoint version");
  const int dim = static_cast<int>(r.u32());
  const int n = static_cast<int>(r.u32());
  const double length = r.f64();
  spectral::Grid g;
  try {
    g = spectral::Grid(dim, n, length);
  } catch (const Error& e) {
    throw IoError(std::string("checkpoint grid is invalid: ") + e.what());
  }
  Checkpoint cp{FluidState(g), {}};
  cp.state.t = r.f64();
  cp.params.mu_inf = r.f64();
  cp.params.lambda_inf = r.f64();
  cp.params.gamma = r.f64();
  const auto visc = r.u32();
  if (visc > 1) throw IoError("unknown viscosity model in checkpoint");
  cp.params.viscosity = static_cast<ViscosityModel>(visc);
  cp.params.beta = r.f64();
  cp.params.poisson = r.u32() != 0;
  auto plane = [&](spectral::SpectralField& f) {
    for (auto& c : f.coeffs()) {
      const double re = r.f64();
      c = {re, r.f64()};
    }
  };
  plane(cp.state.a);
  for (auto& c : cp.state.u) plane(c);
  if (!r.done()) throw IoError("trailing bytes in checkpoint");
  return cp;
}

}  // namespace nsp::solver
