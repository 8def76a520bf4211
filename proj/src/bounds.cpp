#include "dcrown/bounds.hpp"

#include <cmath>

namespace dcrown {

namespace {

std::size_t bits(const BigInt& x) { return x == 0 ? 0 : msb(x) + 1; }

// base^exp, or nullopt when the result is too large.
std::optional<BigInt> checked_pow(const BigInt& base, const BigInt& exp) {
  if (exp == 0) return BigInt(1);
  if (base <= 1) return base;
  if (bits(exp) > 40) return std::nullopt;
  const auto e = exp.convert_to<std::uint64_t>();
  const double estimate = static_cast<double>(e) * std::log2(base.convert_to<double>());
  if (estimate > static_cast<double>(kMaxBoundBits)) return std::nullopt;
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

}  // namespace

std::optional<BigInt> ramsey_bound(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("ramsey bound needs n >= 1");
  if (n > 1'000'000) return std::nullopt;
  const auto k = n.convert_to<std::int64_t>();
  return binomial(2 * k - 2, k - 1);
}

std::optional<BigInt> clique_bound(unsigned n) {
  if (n < 1) throw std::invalid_argument("clique bound needs n >= 1");
  BigInt f = 1;
  for (unsigned i = 1; i < n; ++i) {
    auto r = ramsey_bound(2 * f);
    if (!r) return std::nullopt;
    f = 1 + *r;
  }
  return f;
}

std::optional<BigInt> lemma0_bound(unsigned q, const BigInt& n) {
  auto f = clique_bound(q);
  if (!f) return std::nullopt;
  return checked_pow(2 * n, 2 * *f);
}

std::optional<BigInt> lemma1_bound(unsigned r, const BigInt& p, unsigned q, const BigInt& n) {
  auto g = lemma0_bound(q, n);
  if (!g) return std::nullopt;
  return checked_pow(BigInt(r + 3), p + BigInt(r + 2) * *g);
}

std::optional<BigInt> rcdbg_bound_tilde(unsigned r, const BigInt& p, unsigned q, unsigned t) {
  std::optional<BigInt> v = BigInt(q);
  for (unsigned i = 0; i < t && v; ++i) v = lemma1_bound(r, p, q, *v);
  return v;
}

std::optional<BigInt> rcdbg_bound(unsigned r, const BigInt& p, unsigned q) {
  return rcdbg_bound_tilde(r, p, q, q * (q - 1) / 2);
}

std::optional<BigInt> margin_n_tilde(unsigned r, const BigInt& m, unsigned i,
                                     const CrownSchedule& q) {
  if (i > r) throw std::invalid_argument("margin index exceeds radius");
  std::optional<BigInt> v = m;
  for (unsigned j = r; j-- > i && v;) v = rcdbg_bound(r, *v, q(j));
  return v;
}

std::optional<BigInt> margin_n(unsigned r, const BigInt& m, const CrownSchedule& q) {
  return margin_n_tilde(r, m, 0, q);
}

BigInt margin_s(unsigned r, const CrownSchedule& q) {
  BigInt s = 0;
  for (unsigned i = 0; i < r; ++i) s += binomial(q(i), 2);
  return s;
}

std::optional<BigInt> bounds_eval(BoundKind which, std::span<const std::uint64_t> a) {
  auto need = [&](std::size_t k) {
    if (a.size() != k) throw std::invalid_argument("wrong number of bound arguments");
  };
  auto u = [&](std::size_t i) { return static_cast<unsigned>(a[i]); };
  switch (which) {
    case BoundKind::ramsey:
      need(1);
      return ramsey_bound(a[0]);
    case BoundKind::clique:
      need(1);
      return clique_bound(u(0));
    case BoundKind::lemma0:
      need(2);
      return lemma0_bound(u(0), a[1]);
    case BoundKind::lemma1:
      need(4);
      return lemma1_bound(u(0), a[1], u(2), a[3]);
    case BoundKind::rcdbg_tilde:
      need(4);
      return rcdbg_bound_tilde(u(0), a[1], u(2), u(3));
    case BoundKind::rcdbg:
      need(3);
      return rcdbg_bound(u(0), a[1], u(2));
    case BoundKind::margin_n: {
      need(3);
      const unsigned q = u(2);
      return margin_n(u(0), a[1], [q](unsigned) { return q; });
    }
    case BoundKind::margin_s: {
      need(2);
      const unsigned q = u(1);
      return margin_s(u(0), [q](unsigned) { return q; });
    }
  }
  return std::nullopt;
}

}  // namespace dcrown
