#pragma once

#include <functional>
#include <optional>
#include <span>

#include "dcrown/generators.hpp"

namespace dcrown {

/// Every bound below is exact integer arithmetic. A value whose size would
/// exceed kMaxBoundBits bits is reported as std::nullopt ("not evaluable").
inline constexpr std::size_t kMaxBoundBits = std::size_t{1} << 20;

/// Classical Ramsey upper bound C(2n-2, n-1).
std::optional<BigInt> ramsey_bound(const BigInt& n);
/// f(1) = 1, f(n+1) = 1 + R(2 f(n)).
std::optional<BigInt> clique_bound(unsigned n);
/// g(q, n) = (2n)^(2 f(q)).
std::optional<BigInt> lemma0_bound(unsigned q, const BigInt& n);
/// (r+3)^(p + (r+2) g(q, n)).
std::optional<BigInt> lemma1_bound(unsigned r, const BigInt& p, unsigned q, const BigInt& n);
/// F~(r,p,q,0) = q, F~(r,p,q,t) = lemma1_bound(r, p, q, F~(r,p,q,t-1)).
std::optional<BigInt> rcdbg_bound_tilde(unsigned r, const BigInt& p, unsigned q, unsigned t);
/// F(r,p,q) = F~(r,p,q,C(q,2)).
std::optional<BigInt> rcdbg_bound(unsigned r, const BigInt& p, unsigned q);

/// Crown order used at step i of the margin construction.
using CrownSchedule = std::function<unsigned(unsigned)>;

/// N~(r,m,r) = m, N~(r,m,i) = F(r, N~(r,m,i+1), q(i)).
std::optional<BigInt> margin_n_tilde(unsigned r, const BigInt& m, unsigned i,
                                     const CrownSchedule& q);
/// N(r,m) = N~(r,m,0).
std::optional<BigInt> margin_n(unsigned r, const BigInt& m, const CrownSchedule& q);
/// s(r) = sum over i < r of C(q(i), 2).
BigInt margin_s(unsigned r, const CrownSchedule& q);

enum class BoundKind { ramsey, clique, lemma0, lemma1, rcdbg_tilde, rcdbg, margin_n, margin_s };

/// Uniform entry point; arguments in the order of the functions above, with a
/// constant crown schedule (last argument) for the margin functions.
/// Throws std::invalid_argument on a wrong argument count.
std::optional<BigInt> bounds_eval(BoundKind which, std::span<const std::uint64_t> args);

}  // namespace dcrown
