#pragma once

// Arbitrary-precision integer scalars and small vector helpers shared by the
// whole library. Nothing here uses floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace fslog {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An element of a free lattice Z^r.
using Vector = std::vector<Integer>;

inline Vector zero_vector(std::size_t n) { return Vector(n, Integer(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v[i] = 1;
  return v;
}

inline Vector make_vector(std::initializer_list<long long> xs) {
  Vector v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline bool is_zero(Vector const& v) {
  return std::all_of(v.begin(), v.end(), [](Integer const& x) { return x == 0; });
}

inline Vector operator+(Vector const& a, Vector const& b) {
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vector operator-(Vector const& a, Vector const& b) {
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vector operator-(Vector const& a) {
  Vector r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline Vector operator*(Integer const& s, Vector const& a) {
  Vector r(a);
  for (auto& x : r) x *= s;
  return r;
}

inline Vector& operator+=(Vector& a, Vector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vector& operator-=(Vector& a, Vector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Integer dot(Vector const& a, Vector const& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Integer abs(Integer const& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm(Integer const& a, Integer const& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// Floor division; b != 0.
inline Integer floor_div(Integer const& a, Integer const& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer content(Vector const& v) {
  Integer g = 0;
  for (auto const& x : v) g = gcd(g, x);
  return g;
}

// Divides out the content; the zero vector is returned unchanged.
inline Vector primitive(Vector v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
struct ExtendedGcd {
  Integer g, s, t;
};

inline ExtendedGcd extended_gcd(Integer const& a, Integer const& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::string to_string(Vector const& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace fslog
