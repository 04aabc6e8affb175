#include "zakharov/spectral.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fft.hpp"

namespace zakharov {

// --- FourierField ------------------------------------------------------------

FourierField::FourierField(int grid_size, bool is_real)
    : grid_size_(grid_size), is_real_(is_real), coeffs_(static_cast<std::size_t>(2 * grid_size + 1)) {
  if (grid_size < 0) throw std::invalid_argument("grid_size must be nonnegative");
}

Complex FourierField::at(int k) const {
  if (k < -grid_size_ || k > grid_size_) return {};
  return (*this)[k];
}

void FourierField::set_mode(int k, Complex value) {
  if (k < -grid_size_ || k > grid_size_) throw std::out_of_range("mode outside frequency window");
  if (is_real_ && k == 0) value = {value.real(), 0.0};
  (*this)[k] = value;
  if (is_real_ && k != 0) (*this)[-k] = std::conj(value);
}

void FourierField::enforce_realness() {
  if (!is_real_) return;
  (*this)[0] = {(*this)[0].real(), 0.0};
  for (int k = 1; k <= grid_size_; ++k) {
    const Complex sym = 0.5 * ((*this)[k] + std::conj((*this)[-k]));
    (*this)[k] = sym;
    (*this)[-k] = std::conj(sym);
  }
}

double FourierField::realness_defect() const {
  double worst = std::abs((*this)[0].imag());
  for (int k = 1; k <= grid_size_; ++k)
    worst = std::max(worst, std::abs((*this)[-k] - std::conj((*this)[k])));
  return worst;
}

FourierField& FourierField::operator+=(const FourierField& other) {
  if (other.grid_size_ != grid_size_) throw std::invalid_argument("grid size mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  is_real_ = is_real_ && other.is_real_;
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& other) {
  if (other.grid_size_ != grid_size_) throw std::invalid_argument("grid size mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  is_real_ = is_real_ && other.is_real_;
  return *this;
}

FourierField& FourierField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
FourierField operator*(double s, FourierField a) { return a *= s; }

// --- ZakharovState -----------------------------------------------------------

ZakharovState ZakharovState::zero(int grid_size) {
  return {FourierField(grid_size, false), FourierField(grid_size, true), FourierField(grid_size, true), 0.0};
}

void ZakharovState::validate() const {
  if (!n.is_real() || !ndot.is_real()) throw std::invalid_argument("wave components must be real fields");
  if (n.grid_size() != u.grid_size() || ndot.grid_size() != u.grid_size())
    throw std::invalid_argument("state components must share grid_size");
}

ZakharovState operator+(ZakharovState a, const ZakharovState& b) {
  a.u += b.u;
  a.n += b.n;
  a.ndot += b.ndot;
  return a;
}

ZakharovState operator-(ZakharovState a, const ZakharovState& b) {
  a.u -= b.u;
  a.n -= b.n;
  a.ndot -= b.ndot;
  return a;
}

ZakharovState operator*(double s, ZakharovState a) {
  a.u *= s;
  a.n *= s;
  a.ndot *= s;
  return a;
}

// --- projections -------------------------------------------------------------

bool Band::contains(int k) const {
  const int a = std::abs(k);
  switch (kind) {
    case BandKind::annulus:
      return N <= a && a < 2 * N;
    case BandKind::low:
      return a <= N;
    case BandKind::high:
      return a >= N;
  }
  return false;
}

FourierField project(const FourierField& field, Band band) {
  FourierField out = field;
  const int K = field.grid_size();
  for (int k = -K; k <= K; ++k)
    if (!band.contains(k)) out[k] = Complex{};
  return out;
}

ZakharovState project(const ZakharovState& state, Band band) {
  return {project(state.u, band), project(state.n, band), project(state.ndot, band), state.time};
}

// --- norms -------------------------------------------------------------------

double sobolev_norm(const FourierField& field, double s) {
  const int K = field.grid_size();
  double sum = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double w = std::pow(1.0 + double(k) * k, s);
    sum += w * std::norm(field[k]);
  }
  return std::sqrt(sum / kTwoPi);
}

double phase_space_norm(const ZakharovState& state) {
  return sobolev_norm(state.u, 0.0) + sobolev_norm(state.n, -0.5) + sobolev_norm(state.ndot, -1.5);
}

double wave_norm(const ZakharovState& state) {
  return std::hypot(sobolev_norm(state.n, -0.5), sobolev_norm(state.ndot, -1.5));
}

double fixed_mode_abs(Complex u, Complex n, Complex ndot, int k0, ModeWeight weight) {
  if (k0 == 0) throw std::invalid_argument("fixed-mode absolute value undefined at zero frequency");
  const double scale = weight == ModeWeight::absolute ? std::abs(double(k0)) : japanese_bracket(k0);
  return std::abs(u) + std::abs(n) / std::sqrt(scale) + std::abs(ndot) / (scale * std::sqrt(scale));
}

double fixed_mode_abs(const ZakharovState& state, int k0, ModeWeight weight) {
  return fixed_mode_abs(state.u.at(k0), state.n.at(k0), state.ndot.at(k0), k0, weight);
}

double evaluate_norm(const ZakharovState& state, const NormSpec& spec) {
  switch (spec.flavor) {
    case NormFlavor::sobolev_Hs:
      return sobolev_norm(state.u, spec.s);
    case NormFlavor::phase_space_H:
      return phase_space_norm(state);
    case NormFlavor::fixed_mode_abs:
      return fixed_mode_abs(state, spec.mode, spec.weight);
  }
  return 0.0;
}

// --- calculus ----------------------------------------------------------------

namespace {

// i^p for any integer p, exactly.
Complex i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

FourierField derivative(const FourierField& field, int order) {
  if (order == 0) return field;
  if (order < 0 && !field.is_mean_zero()) throw std::invalid_argument("antiderivative requires mean-zero field");
  FourierField out = field;
  const int K = field.grid_size();
  const Complex phase = i_power(order);
  for (int k = -K; k <= K; ++k) {
    if (k == 0) {
      out[0] = Complex{};
      continue;
    }
    // (ik)^p = i^p k^p; k^p is exact in sign and symmetric in |k|
    double mag = std::pow(std::abs(double(k)), order);
    if (k < 0 && (order % 2 != 0)) mag = -mag;
    out[k] = field[k] * (phase * mag);
  }
  return out;
}

GalileanResult galilean_normalize(const ZakharovState& state) {
  if (state.time != 0.0) throw std::invalid_argument("galilean_normalize applies at the initial time");
  GalileanResult r{state, state.n[0].real(), state.ndot[0].real()};
  r.state.n[0] = Complex{};
  r.state.ndot[0] = Complex{};
  return r;
}

double galilean_phase(double t, double c0, double c1) { return c1 * t * t / (4.0 * kPi) + c0 * t / kTwoPi; }

ZakharovState galilean_restore(const ZakharovState& normalized, double c0, double c1) {
  ZakharovState z = normalized;
  const double t = normalized.time;
  const Complex rot = std::polar(1.0, -galilean_phase(t, c0, c1));
  for (auto& c : z.u.coeffs()) c *= rot;
  z.n[0] = Complex{c0 + c1 * t, 0.0};
  z.ndot[0] = Complex{c1, 0.0};
  return z;
}

std::vector<Complex> physical_evaluate(const FourierField& field, std::span<const double> points) {
  std::vector<Complex> out;
  out.reserve(points.size());
  const int K = field.grid_size();
  for (double x : points) {
    Complex sum{};
    for (int k = -K; k <= K; ++k) sum += field[k] * std::polar(1.0, k * x);
    out.push_back(sum / kTwoPi);
  }
  return out;
}

std::vector<Complex> to_grid(const FourierField& field, int m) {
  const int K = field.grid_size();
  if (m < 2 * K + 1) throw std::invalid_argument("grid too small for frequency window");
  std::vector<Complex> buf(static_cast<std::size_t>(m));
  for (int k = -K; k <= K; ++k) buf[static_cast<std::size_t>((k + m) % m)] = field[k] / kTwoPi;
  detail::dft_backward(buf);
  return buf;
}

FourierField from_grid(std::span<const Complex> values, int grid_size, bool is_real) {
  const int m = static_cast<int>(values.size());
  if (m < 2 * grid_size + 1) throw std::invalid_argument("grid too small for frequency window");
  std::vector<Complex> buf(values.begin(), values.end());
  detail::dft_forward(buf);
  FourierField out(grid_size, is_real);
  const double w = kTwoPi / m;
  for (int k = -grid_size; k <= grid_size; ++k) out[k] = w * buf[static_cast<std::size_t>((k + m) % m)];
  out.enforce_realness();
  return out;
}

int fft_size_at_least(int min_size) {
  for (int m = std::max(min_size, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

FourierField dealiased_product(const FourierField& a, const FourierField& b, bool result_real) {
  const int K = a.grid_size();
  if (b.grid_size() != K) throw std::invalid_argument("grid size mismatch");
  const int m = fft_size_at_least(3 * K + 1);
  auto ga = to_grid(a, m);
  const auto gb = to_grid(b, m);
  for (std::size_t j = 0; j < ga.size(); ++j) ga[j] *= gb[j];
  return from_grid(ga, K, result_real);
}

Complex triple_integral(const FourierField& a, const FourierField& b, const FourierField& c) {
  const int K = a.grid_size();
  if (b.grid_size() != K || c.grid_size() != K) throw std::invalid_argument("grid size mismatch");
  const int m = fft_size_at_least(3 * K + 1);
  const auto ga = to_grid(a, m);
  const auto gb = to_grid(b, m);
  const auto gc = to_grid(c, m);
  Complex sum{};
  for (std::size_t j = 0; j < ga.size(); ++j) sum += ga[j] * gb[j] * gc[j];
  return sum * (kTwoPi / m);
}

// --- serialization -----------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw FormatError("malformed number '" + s + "'");
  return v;
}

}  // namespace

void write_field(std::ostream& os, const FourierField& field) {
  os << "# fourier_field grid_size=" << field.grid_size() << " is_real=" << (field.is_real() ? 1 : 0) << '\n';
  os << "k re im\n";
  const int K = field.grid_size();
  for (int k = -K; k <= K; ++k)
    os << k << ' ' << format_double(field[k].real()) << ' ' << format_double(field[k].imag()) << '\n';
}

FourierField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing field metadata line");
  int K = -1;
  int real_flag = -1;
  if (std::sscanf(line.c_str(), "# fourier_field grid_size=%d is_real=%d", &K, &real_flag) != 2 || K < 0 ||
      (real_flag != 0 && real_flag != 1))
    throw FormatError("bad field metadata line: " + line);
  if (!std::getline(is, line) || line != "k re im") throw FormatError("missing column header 'k re im'");
  FourierField f(K, real_flag == 1);
  for (int expected = -K; expected <= K; ++expected) {
    if (!std::getline(is, line)) throw FormatError("truncated field: missing mode " + std::to_string(expected));
    std::istringstream row(line);
    std::string ks, re, im;
    if (!(row >> ks >> re >> im)) throw FormatError("malformed row: " + line);
    if (std::stoi(ks) != expected) throw FormatError("mode out of order at row: " + line);
    f[expected] = {parse_double(re), parse_double(im)};
  }
  return f;
}

}  // namespace zakharov
