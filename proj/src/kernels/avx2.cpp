// AVX2 + FMA kernels. Compiled with -mavx2 -mfma and only reached through the
// dispatch table after a CPU feature check.
//
// log and exp use the Cephes double-precision rational approximations
// (about 1 ulp on the ranges used here); powers are exp(-alpha * log(x)).

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernels/compensated.hpp"
#include "kernels/variants.hpp"
#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit::kernels::avx2 {
namespace {

using detail::NeumaierSum;

constexpr std::size_t kLanes = 4;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(splat(-0.0), x);
}

// Natural log for positive, finite, normal inputs.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mantissa_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i half_bits = _mm256_set1_epi64x(0x3FE0000000000000LL);
  const __m256i two52_bits = _mm256_set1_epi64x(0x4330000000000000LL);

  // frexp: x = m * 2^e with m in [0.5, 1)
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mantissa_mask), half_bits));
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, two52_bits)),
                            splat(4503599627370496.0));
  e = _mm256_sub_pd(e, splat(1022.0));

  const __m256d small = _mm256_cmp_pd(m, splat(0.70710678118654752440), _CMP_LT_OQ);
  const __m256d one = splat(1.0);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, one));
  const __m256d f = _mm256_add_pd(_mm256_sub_pd(m, one), _mm256_and_pd(small, m));

  const __m256d z = _mm256_mul_pd(f, f);

  __m256d p = splat(1.01875663804580931796E-4);
  p = _mm256_fmadd_pd(p, f, splat(4.97494994976747001425E-1));
  p = _mm256_fmadd_pd(p, f, splat(4.70579119878881725854E0));
  p = _mm256_fmadd_pd(p, f, splat(1.44989225341610930846E1));
  p = _mm256_fmadd_pd(p, f, splat(1.79368678507819816313E1));
  p = _mm256_fmadd_pd(p, f, splat(7.70838733755885391666E0));

  __m256d q = _mm256_add_pd(f, splat(1.12873587189167450590E1));
  q = _mm256_fmadd_pd(q, f, splat(4.52279145837532221105E1));
  q = _mm256_fmadd_pd(q, f, splat(8.29875266912776603211E1));
  q = _mm256_fmadd_pd(q, f, splat(7.11544750618563894466E1));
  q = _mm256_fmadd_pd(q, f, splat(2.31251620126765340583E1));

  __m256d y = _mm256_mul_pd(f, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fnmadd_pd(e, splat(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(splat(0.5), z, y);
  return _mm256_fmadd_pd(e, splat(0.693359375), _mm256_add_pd(f, y));
}

// exp for finite inputs; results below the normal range flush to zero.
inline __m256d exp_pd(__m256d x) {
  const __m256d underflow = _mm256_cmp_pd(x, splat(-708.3964185322641), _CMP_LT_OQ);
  x = _mm256_max_pd(x, splat(-708.3964185322641));
  x = _mm256_min_pd(x, splat(709.0));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, splat(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, splat(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, splat(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = splat(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, splat(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, splat(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = splat(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, splat(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, splat(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, splat(2.00000000000000000009E0));

  r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(splat(2.0), r, splat(1.0));

  // 2^n built directly in the exponent field; n is integral in [-1022, 1023].
  const __m256d magic = splat(6755399441055744.0);
  const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                      _mm256_castpd_si256(magic));
  const __m256i scale_bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(r, _mm256_castsi256_pd(scale_bits));
  return _mm256_andnot_pd(underflow, result);
}

// Per-lane Neumaier accumulator.
struct VecNeumaier {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d sum_dominates = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
    const __m256d if_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d if_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(if_x, if_sum, sum_dominates));
    sum = t;
  }

  // Folds the lanes into a scalar accumulator.
  void reduce_into(NeumaierSum& acc) const {
    alignas(32) double s[kLanes];
    alignas(32) double c[kLanes];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    for (std::size_t i = 0; i < kLanes; ++i) acc.add(s[i]);
    for (std::size_t i = 0; i < kLanes; ++i) acc.add(c[i]);
  }
};

inline __m256d ramp(double start) {
  return _mm256_add_pd(splat(start), _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
}

double shifted_power_sum(std::uint64_t first, std::uint64_t count, double alpha,
                         double shift) {
  VecNeumaier lanes;
  const __m256d neg_alpha = splat(-alpha);
  const __m256d step = splat(static_cast<double>(kLanes));
  __m256d x = ramp(shift + static_cast<double>(first));
  std::uint64_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    lanes.add(exp_pd(_mm256_mul_pd(neg_alpha, log_pd(x))));
    x = _mm256_add_pd(x, step);
  }
  NeumaierSum acc;
  lanes.reduce_into(acc);
  for (; i < count; ++i) {
    acc.add(std::pow(shift + static_cast<double>(first + i), -alpha));
  }
  return acc.value();
}

void shifted_power_fill(std::span<double> out, std::uint64_t first, double alpha,
                        double shift) {
  const __m256d neg_alpha = splat(-alpha);
  const __m256d step = splat(static_cast<double>(kLanes));
  __m256d x = ramp(shift + static_cast<double>(first));
  std::size_t i = 0;
  for (; i + kLanes <= out.size(); i += kLanes) {
    _mm256_storeu_pd(out.data() + i, exp_pd(_mm256_mul_pd(neg_alpha, log_pd(x))));
    x = _mm256_add_pd(x, step);
  }
  for (; i < out.size(); ++i) {
    out[i] = std::pow(shift + static_cast<double>(first + i), -alpha);
  }
}

void shifted_log_fill(std::span<double> out, std::uint64_t first, double shift) {
  const __m256d step = splat(static_cast<double>(kLanes));
  __m256d x = ramp(shift + static_cast<double>(first));
  std::size_t i = 0;
  for (; i + kLanes <= out.size(); i += kLanes) {
    _mm256_storeu_pd(out.data() + i, log_pd(x));
    x = _mm256_add_pd(x, step);
  }
  for (; i < out.size(); ++i) out[i] = std::log(shift + static_cast<double>(first + i));
}

void log_fill(std::span<const double> in, std::span<double> out) {
  std::size_t i = 0;
  for (; i + kLanes <= in.size(); i += kLanes) {
    _mm256_storeu_pd(out.data() + i, log_pd(_mm256_loadu_pd(in.data() + i)));
  }
  for (; i < in.size(); ++i) out[i] = std::log(in[i]);
}

double sum(std::span<const double> x) {
  VecNeumaier lanes;
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) lanes.add(_mm256_loadu_pd(x.data() + i));
  NeumaierSum acc;
  lanes.reduce_into(acc);
  for (; i < x.size(); ++i) acc.add(x[i]);
  return acc.value();
}

double dot(std::span<const double> x, std::span<const double> y) {
  VecNeumaier lanes;
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    lanes.add(_mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
  }
  NeumaierSum acc;
  lanes.reduce_into(acc);
  for (; i < x.size(); ++i) acc.add(x[i] * y[i]);
  return acc.value();
}

CentredMoments centred_moments(std::span<const double> x, std::span<const double> y,
                               double mean_x, double mean_y) {
  VecNeumaier sxx, sxy, syy;
  const __m256d mx = splat(mean_x);
  const __m256d my = splat(mean_y);
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), mx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), my);
    sxx.add(_mm256_mul_pd(dx, dx));
    sxy.add(_mm256_mul_pd(dx, dy));
    syy.add(_mm256_mul_pd(dy, dy));
  }
  NeumaierSum axx, axy, ayy;
  sxx.reduce_into(axx);
  sxy.reduce_into(axy);
  syy.reduce_into(ayy);
  for (; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    axx.add(dx * dx);
    axy.add(dx * dy);
    ayy.add(dy * dy);
  }
  return {axx.value(), axy.value(), ayy.value()};
}

double residual_ss(std::span<const double> x, std::span<const double> y, double intercept,
                   double slope) {
  VecNeumaier lanes;
  const __m256d b0 = splat(intercept);
  const __m256d b1 = splat(slope);
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    // Same operation order as the scalar kernel: (y - b0) - b1 * x.
    const __m256d fitted = _mm256_mul_pd(b1, _mm256_loadu_pd(x.data() + i));
    const __m256d e = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(y.data() + i), b0), fitted);
    lanes.add(_mm256_mul_pd(e, e));
  }
  NeumaierSum acc;
  lanes.reduce_into(acc);
  for (; i < x.size(); ++i) {
    const double e = y[i] - intercept - slope * x[i];
    acc.add(e * e);
  }
  return acc.value();
}

}  // namespace

const KernelTable& table() noexcept {
  static const KernelTable t{Isa::avx2,       &shifted_power_sum, &shifted_power_fill,
                             &shifted_log_fill, &log_fill,         &sum,
                             &dot,              &centred_moments,  &residual_ss};
  return t;
}

}  // namespace zipfkit::kernels::avx2
