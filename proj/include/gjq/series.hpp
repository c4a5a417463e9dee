#pragma once

// Dense truncated power series: s[k] is the coefficient of w^k.

#include <cstddef>
#include <span>
#include <vector>

namespace gjq::series {

template <class T>
std::vector<T> mul(std::span<const T> a, std::span<const T> b, std::size_t len) {
  std::vector<T> c(len, T{});
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == T{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// outer(inner(w)) for an inner series with zero constant term, by Horner.
template <class T>
std::vector<T> compose(std::span<const T> outer, std::span<const T> inner, std::size_t len) {
  std::vector<T> acc(len, T{});
  for (std::size_t k = outer.size(); k-- > 0;) {
    acc = mul<T>(acc, inner, len);
    if (len > 0) acc[0] += outer[k];
  }
  return acc;
}

/// a(w)^e for a series with a[0] != 0, given the chosen branch b0 = a[0]^e.
/// J.C.P. Miller recurrence: b_k = 1/(k a_0) sum_{j=1}^k ((e+1) j - k) a_j b_{k-j}.
template <class T, class R>
std::vector<T> pow(std::span<const T> a, R e, T b0, std::size_t len) {
  std::vector<T> b(len, T{});
  if (len == 0) return b;
  b[0] = b0;
  for (std::size_t k = 1; k < len; ++k) {
    T acc{};
    for (std::size_t j = 1; j <= k && j < a.size(); ++j)
      acc += ((e + R(1)) * R(j) - R(k)) * a[j] * b[k - j];
    b[k] = acc / (R(k) * a[0]);
  }
  return b;
}

template <class T>
std::vector<T> derivative(std::span<const T> a) {
  std::vector<T> d(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = a[k] * T(static_cast<double>(k));
  return d;
}

}  // namespace gjq::series
