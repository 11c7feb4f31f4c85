#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "genbern/poly.hpp"

namespace genbern {

/// An interval [lo, hi] holding exactly one real root. lo == hi when the root
/// was hit exactly.
template <Scalar T>
struct RootInterval {
  T lo;
  T hi;
  bool simple = true;  ///< multiplicity one

  T midpoint() const { return T((lo + hi) / T(2)); }
  T width() const { return T(hi - lo); }
};

template <Scalar T>
struct RootIsolationOptions {
  /// Intervals are refined below this width.
  double max_width = 1e-12;
  /// Float mode: number of grid cells scanned for sign changes.
  int grid = 4096;
};

namespace detail {

template <Scalar T>
Poly<T> positive_scaled(Poly<T> p) {
  // Divide by |leading| so sign variations are unaffected.
  const T lc = abs_value<T>(p.leading());
  if (lc != T(0)) p /= lc;
  return p;
}

template <Scalar T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a /= a.leading();
  return a;
}

template <Scalar T>
std::vector<Poly<T>> sturm_sequence(const Poly<T>& p) {
  std::vector<Poly<T>> seq{positive_scaled(p), positive_scaled(p.derivative())};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    Poly<T> r = -seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(positive_scaled(std::move(r)));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

template <Scalar T>
int sign_variations(const std::vector<Poly<T>>& seq, const T& x) {
  int count = 0;
  int prev = 0;
  for (const auto& q : seq) {
    const T v = q(x);
    const int s = (v > T(0)) - (v < T(0));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

template <Scalar T>
int sign_of(const T& v) {
  return (v > T(0)) - (v < T(0));
}

/// Exact isolation of the roots of a square-free q in (a, b), q(a), q(b) != 0.
inline void sturm_isolate(const Poly<Rational>& q, const Rational& a, const Rational& b, double max_width,
                          std::vector<RootInterval<Rational>>& out) {
  const auto seq = sturm_sequence(q);
  struct Cell {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::deque<Cell> work{{a, b, sign_variations(seq, a), sign_variations(seq, b)}};
  const Rational width(max_width);
  while (!work.empty()) {
    Cell c = std::move(work.front());
    work.pop_front();
    const int count = c.vlo - c.vhi;
    if (count <= 0) continue;
    if (count == 1) {
      // One simple root with a sign change: refine by bisection.
      Rational lo = c.lo, hi = c.hi;
      const int slo = sign_of<Rational>(q(lo));
      bool hit = false;
      while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        const int sm = sign_of<Rational>(q(mid));
        if (sm == 0) {
          out.push_back({mid, mid, true});
          hit = true;
          break;
        }
        if (sm == slo)
          lo = mid;
        else
          hi = mid;
      }
      if (!hit) out.push_back({lo, hi, true});
      continue;
    }
    // Split at the midpoint, nudged off any root of q.
    Rational mid = (c.lo + c.hi) / 2;
    if (q(mid) == 0) {
      out.push_back({mid, mid, true});
      // Shrink the gap around mid until it holds no root other than mid.
      Rational step = (c.hi - c.lo) / 4;
      Rational left, right;
      int vl = 0, vr = 0;
      do {
        step /= 2;
        left = mid - step;
        right = mid + step;
        if (q(left) == 0 || q(right) == 0) continue;
        vl = sign_variations(seq, left);
        vr = sign_variations(seq, right);
      } while (q(left) == 0 || q(right) == 0 || vl - vr != 1);
      work.push_back({c.lo, left, c.vlo, vl});
      work.push_back({right, c.hi, vr, c.vhi});
      continue;
    }
    const int vm = sign_variations(seq, mid);
    work.push_back({c.lo, mid, c.vlo, vm});
    work.push_back({mid, c.hi, vm, c.vhi});
  }
}

}  // namespace detail

/// Number of distinct real roots of p in (a, b], Sturm's theorem. Requires p(a) != 0.
inline int sturm_count(const Poly<Rational>& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw usage_error("sturm_count: zero polynomial");
  const auto seq = detail::sturm_sequence(p);
  return detail::sign_variations(seq, a) - detail::sign_variations(seq, b);
}

/// Disjoint intervals, in increasing order, each holding exactly one real root
/// of p in [a, b]. Exact mode uses Sturm sequences and reports multiplicity;
/// float mode scans a grid for sign changes, bisects and polishes with Newton
/// (even-multiplicity roots that do not change sign are not seen there).
template <Scalar T>
std::vector<RootInterval<T>> isolate_real_roots(const Poly<T>& p, const T& a, const T& b,
                                                const RootIsolationOptions<T>& opts = {}) {
  if (p.is_zero()) throw usage_error("isolate_real_roots: zero polynomial");
  if (!(a < b)) throw usage_error("isolate_real_roots: need a < b");
  std::vector<RootInterval<T>> out;
  if (p.degree() == 0) return out;

  if constexpr (is_exact_v<T>) {
    const Poly<T> g = detail::poly_gcd(p, p.derivative());
    Poly<T> q = g.degree() > 0 ? p.divmod(g).first : p;  // square-free part
    auto is_simple_at = [&](const T& x) { return g.degree() <= 0 || g(x) != T(0); };

    const bool root_a = q(a) == T(0);
    const bool root_b = q(b) == T(0);
    if (root_a) {
      out.push_back({a, a, is_simple_at(a)});
      q = q.divmod(Poly<T>{T(-a), T(1)}).first;
    }
    if (root_b) q = q.divmod(Poly<T>{T(-b), T(1)}).first;
    std::vector<RootInterval<T>> interior;
    if (q.degree() > 0) detail::sturm_isolate(q, a, b, opts.max_width, interior);
    std::sort(interior.begin(), interior.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    for (auto& iv : interior) {
      if (g.degree() > 0) {
        if (iv.lo == iv.hi)
          iv.simple = is_simple_at(iv.lo);
        else
          iv.simple = sturm_count(g, iv.lo, iv.hi) == 0;
      }
      out.push_back(iv);
    }
    if (root_b) out.push_back({b, b, is_simple_at(b)});
  } else {
    const Poly<T> dp = p.derivative();
    double scale = 0.0;
    for (const T& c : p.coeffs()) scale = std::max(scale, std::fabs(c));
    const double zero_tol = 64 * std::numeric_limits<double>::epsilon() * scale;
    const int cells = std::max(opts.grid, 1);
    auto xs = [&](int i) { return a + (b - a) * static_cast<double>(i) / cells; };

    if (std::fabs(p(a)) <= zero_tol) out.push_back({a, a, true});
    double prev_x = a;
    double prev_v = p(a);
    for (int i = 1; i <= cells; ++i) {
      const double x = xs(i);
      const double v = p(x);
      const bool at_end = i == cells;
      if (at_end && std::fabs(v) <= zero_tol) {
        if (out.empty() || out.back().hi < x) out.push_back({x, x, true});
        break;
      }
      if (std::fabs(prev_v) > zero_tol && std::fabs(v) > zero_tol && (prev_v < 0) != (v < 0)) {
        double lo = prev_x, hi = x;
        double flo = prev_v;
        while (hi - lo > opts.max_width) {
          const double mid = 0.5 * (lo + hi);
          const double fm = p(mid);
          if (fm == 0.0 || mid == lo || mid == hi) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        // Newton polish inside the bracket.
        double r = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
          const double d = dp(r);
          if (d == 0.0) break;
          const double nr = r - p(r) / d;
          if (nr < lo || nr > hi) break;
          r = nr;
        }
        out.push_back({lo == hi ? r : lo, lo == hi ? r : hi, true});
      } else if (i < cells && std::fabs(v) <= zero_tol && std::fabs(prev_v) > zero_tol) {
        out.push_back({x, x, true});
      }
      prev_x = x;
      prev_v = v;
    }
  }
  return out;
}

}  // namespace genbern
