#pragma once

// Array versions of exp, expm1, erf, tanh and log1p. With SYMMPINN_HAVE_MVEC and an
// AVX-512 target they call glibc's libmvec 8-lane kernels (at most 4 ulp);
// otherwise they loop over the scalar <cmath> functions.

#include <cmath>
#include <cstddef>

#if defined(SYMMPINN_HAVE_MVEC) && defined(__AVX512F__)
#include <immintrin.h>
#define SYMMPINN_MVEC_AVX512 1
extern "C" {
__m512d _ZGVeN8v_exp(__m512d);
__m512d _ZGVeN8v_expm1(__m512d);
__m512d _ZGVeN8v_erf(__m512d);
__m512d _ZGVeN8v_tanh(__m512d);
__m512d _ZGVeN8v_log1p(__m512d);
}
#endif

namespace symmpinn::vec {

namespace detail {

#ifdef SYMMPINN_MVEC_AVX512
template <__m512d (*F)(__m512d)>
inline void apply(const double* in, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) _mm512_storeu_pd(out + i, F(_mm512_loadu_pd(in + i)));
    if (i < n) {
        alignas(64) double buf[8] = {};
        for (std::size_t k = i; k < n; ++k) buf[k - i] = in[k];
        _mm512_store_pd(buf, F(_mm512_load_pd(buf)));
        for (std::size_t k = i; k < n; ++k) out[k] = buf[k - i];
    }
}
#endif

} // namespace detail

inline bool accelerated() noexcept {
#ifdef SYMMPINN_MVEC_AVX512
    return true;
#else
    return false;
#endif
}

// `in` and `out` may alias.

inline void exp(const double* in, double* out, std::size_t n) {
#ifdef SYMMPINN_MVEC_AVX512
    detail::apply<_ZGVeN8v_exp>(in, out, n);
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(in[i]);
#endif
}

inline void expm1(const double* in, double* out, std::size_t n) {
#ifdef SYMMPINN_MVEC_AVX512
    detail::apply<_ZGVeN8v_expm1>(in, out, n);
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = std::expm1(in[i]);
#endif
}

inline void erf(const double* in, double* out, std::size_t n) {
#ifdef SYMMPINN_MVEC_AVX512
    detail::apply<_ZGVeN8v_erf>(in, out, n);
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = std::erf(in[i]);
#endif
}

inline void tanh(const double* in, double* out, std::size_t n) {
#ifdef SYMMPINN_MVEC_AVX512
    detail::apply<_ZGVeN8v_tanh>(in, out, n);
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = std::tanh(in[i]);
#endif
}

inline void log1p(const double* in, double* out, std::size_t n) {
#ifdef SYMMPINN_MVEC_AVX512
    detail::apply<_ZGVeN8v_log1p>(in, out, n);
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log1p(in[i]);
#endif
}

} // namespace symmpinn::vec
