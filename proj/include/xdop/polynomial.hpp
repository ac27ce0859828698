#pragma once

// Dense univariate polynomials over an exact field: Horner evaluation, Newton
// interpolation, Euclidean gcd and Sturm-sequence root counting. Coefficients
// are stored lowest degree first.

#include <stdexcept>
#include <vector>

#include "xdop/scalar.hpp"

namespace xdop {

struct InterpolationSingular : std::runtime_error {
  InterpolationSingular() : std::runtime_error("coincident interpolation nodes") {}
};

template <class S>
using Poly = std::vector<S>;

template <class S>
S poly_eval(const Poly<S>& p, const S& y) {
  S r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * y + *it;
  return r;
}

template <class S>
void poly_trim(Poly<S>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class S>
int poly_degree(const Poly<S>& p) {
  return static_cast<int>(p.size()) - 1;  // -1 for the zero polynomial
}

template <class S>
Poly<S> poly_derivative(const Poly<S>& p) {
  Poly<S> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * S(static_cast<long>(i)));
  return d;
}

// Remainder of a by b (field coefficients, exact division).
template <class S>
Poly<S> poly_rem(Poly<S> a, const Poly<S>& b) {
  if (b.empty()) throw std::invalid_argument("division by zero polynomial");
  while (a.size() >= b.size()) {
    S f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly<S> r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    S lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Number of distinct real roots in the half-open interval (lo, hi].
// Operates on the squarefree part, so multiplicities do not distort counts.
template <class S>
int sturm_count(const Poly<S>& p_in, const S& lo, const S& hi) {
  Poly<S> p = p_in;
  poly_trim(p);
  if (poly_degree(p) < 1) return 0;
  Poly<S> g = poly_gcd(p, poly_derivative(p));
  if (poly_degree(g) > 0) {
    // exact squarefree part p/g
    Poly<S> q;
    Poly<S> a = p;
    while (a.size() >= g.size()) {
      S f = a.back() / g.back();
      size_t off = a.size() - g.size();
      q.insert(q.begin(), f);
      for (size_t i = 0; i < g.size(); ++i) a[off + i] -= f * g[i];
      a.pop_back();
    }
    p = q;
  }
  std::vector<Poly<S>> chain{p, poly_derivative(p)};
  while (poly_degree(chain.back()) > 0) {
    Poly<S> r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&chain](const S& y) {
    int v = 0, prev = 0;
    for (const auto& f : chain) {
      S val = poly_eval(f, y);
      int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
      if (s != 0) {
        if (prev != 0 && s != prev) ++v;
        prev = s;
      }
    }
    return v;
  };
  return variations(lo) - variations(hi);
}

// Exact Newton interpolation through (nodes[i], values[i]); returns monomial
// coefficients of the unique polynomial of degree < nodes.size().
template <class S>
Poly<S> interpolate(const std::vector<S>& nodes, const std::vector<S>& values) {
  const size_t n = nodes.size();
  if (values.size() != n) throw std::invalid_argument("node/value size mismatch");
  std::vector<S> dd = values;  // dd[i] becomes the i-th divided difference
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = n - 1; i >= j; --i) {
      S dx = nodes[i] - nodes[i - j];
      if (dx == 0) throw InterpolationSingular();
      dd[i] = (dd[i] - dd[i - 1]) / dx;
      if (i == j) break;
    }
  }
  Poly<S> coeffs(n, S(0));
  Poly<S> basis{S(1)};  // prod_{k<j} (y - nodes[k])
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < basis.size(); ++k) coeffs[k] += dd[j] * basis[k];
    if (j + 1 < n) {
      basis.push_back(S(0));
      for (size_t k = basis.size() - 1; k > 0; --k)
        basis[k] = basis[k - 1] - nodes[j] * basis[k];
      basis[0] = -nodes[j] * basis[0];
    }
  }
  poly_trim(coeffs);
  return coeffs;
}

}  // namespace xdop
