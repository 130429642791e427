#include "usonic/resample.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "usonic/error.hpp"
#include "usonic/fir.hpp"

namespace usonic {
namespace {

constexpr double guard_pass_fraction = 0.45;
constexpr double guard_attenuation_db = 80.0;
constexpr std::size_t max_prototype_taps = std::size_t{1} << 22;

}  // namespace

ResampleRatio resample_ratio(int source_rate, int target_rate) {
  if (source_rate <= 0 || target_rate <= 0) {
    throw Error(ErrorKind::config, "resample: rates must be positive");
  }
  const int g = std::gcd(source_rate, target_rate);
  ResampleRatio ratio{target_rate / g, source_rate / g};
  if (ratio.up > max_resample_factor || ratio.down > max_resample_factor) {
    std::ostringstream msg;
    msg << "resample " << source_rate << " -> " << target_rate << " Hz reduces to "
        << ratio.up << "/" << ratio.down << ", beyond the supported " << max_resample_factor;
    throw Error(ErrorKind::unsupported_ratio, msg.str());
  }
  return ratio;
}

SampledSignal resample(const SampledSignal& signal, int target_rate) {
  require_valid(signal, "resample");
  const ResampleRatio ratio = resample_ratio(signal.sample_rate, target_rate);
  if (ratio.up == 1 && ratio.down == 1) return signal;

  const double prototype_rate = static_cast<double>(signal.sample_rate) * ratio.up;
  const double narrow_rate = std::min(signal.sample_rate, target_rate);
  std::vector<double> h =
      detail::kaiser_lowpass(guard_pass_fraction * narrow_rate / prototype_rate,
                             0.5 * narrow_rate / prototype_rate, guard_attenuation_db,
                             max_prototype_taps);
  for (double& t : h) t *= ratio.up;

  const auto up = static_cast<std::int64_t>(ratio.up);
  const auto down = static_cast<std::int64_t>(ratio.down);
  const auto taps = static_cast<std::int64_t>(h.size());
  const std::int64_t delay = (taps - 1) / 2;
  const auto in_len = static_cast<std::int64_t>(signal.size());
  const std::int64_t out_len = (in_len * up + down - 1) / down;

  SampledSignal out{std::vector<double>(static_cast<std::size_t>(out_len), 0.0), target_rate};
  const double* x = signal.samples.data();
  for (std::int64_t m = 0; m < out_len; ++m) {
    // Position on the zero-stuffed grid, advanced by the prototype's delay.
    const std::int64_t t = m * down + delay;
    const std::int64_t n_hi = std::min(in_len - 1, t / up);
    const std::int64_t span_start = t - (taps - 1);
    std::int64_t n_lo = span_start <= 0 ? 0 : (span_start + up - 1) / up;
    double acc = 0.0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) acc += x[n] * h[t - n * up];
    out.samples[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

}  // namespace usonic
