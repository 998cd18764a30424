#pragma once

#include "pswf/root.hpp"

#include <map>
#include <vector>

namespace pswf {

// Element of R(Pin(2)) = Z[z,w]/(2w - zw, w^2 - 2w) in the unique normal form
// p(z) + a*w. The arithmetic operators keep the normal form (z^k w = 2^k w,
// w^2 = 2w), so any expression in z and w lands reduced.
struct RGElement {
    std::vector<BigInt> p; // p[k] = z^k coefficient, no trailing zeros
    BigInt a = 0;          // w coefficient
    bool operator==(const RGElement&) const = default;
};

RGElement rg_int(const BigInt& c);
RGElement rg_z(long long k = 1); // z^k
RGElement rg_w();
RGElement operator+(const RGElement& x, const RGElement& y);
RGElement operator-(const RGElement& x, const RGElement& y);
RGElement operator*(const RGElement& x, const RGElement& y);

// R(S^1) = Z[theta, theta^{-1}].
struct LaurentPoly {
    std::map<long long, BigInt> c; // exponent -> nonzero coefficient
    bool operator==(const LaurentPoly&) const = default;
};
LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);

// Restriction to R(S^1): z -> 2 - theta - theta^{-1}, w -> 0.
LaurentPoly restriction_r(const RGElement& x);

// Whether (1 - theta)^n divides f exactly (n synthetic-division passes, each
// requiring the coefficient sum to vanish).
bool divisible_by_cn(LaurentPoly f, long long n);

// Finitely generated ideal of R(Pin(2)).
struct RGIdeal {
    std::vector<RGElement> gens;
};

// {y : restriction_r(y) divisible by (1-theta)^n} + (w), found by scanning
// z-powers against the divisibility test, then verified against the closed
// form (z^ceil(n/2), w).
RGIdeal ideal_of_An(long long n);

// Closed-form ideal (z^(sum n_i / 2), w^(count/2)) of a smash of interval
// models, with the w-power reduced to normal form. Requires an even number of
// factors, each n_i even and >= 2.
RGIdeal ideal_of_smash(const std::vector<long long>& n_list);

// Degree-truncated integer-lattice membership: x against the Z-span of
// {z^k g, w g} up to the window (default: generator + query degree + slack).
// Decisions are stable in the window size once it covers both degrees.
bool ideal_contains(const RGIdeal& I, const RGElement& x, long long window = -1);

// kappa = 2 * min{ t >= 0 : z^t in I, or t >= 1 and 2^(t-1) w in I }.
// Refuses ideals not shaped like the validated families (one pure z-power and
// one pure w multiple): the general ideal-to-kappa conversion is not pinned
// down beyond them.
BigInt kappa_from_ideal(const RGIdeal& I);

// kappa of the manifold a symmetric normalized root describes:
// -mu_bar when -mu_bar = delta, else -mu_bar + 2, reading -mu_bar = beta.
Rat kappa_report(const SymmetricGradedRoot& r);

enum class SumMode { Bound, Exact };

// Connected-sum summand: certified projective data (root locally equivalent
// to X_n shifted), with n = delta + mu_bar.
struct ProjectiveSummand {
    Rat mu_bar;
    Rat delta;
    BigInt n;
};

// Bound mode: the upper bound -sum mu_bar + 2*ceil(count/2).
// Exact mode: kappa = -sum mu_bar + count; needs an even count and
// delta_i + mu_bar_i >= 2 throughout.
Rat kappa_connected_sum(const std::vector<ProjectiveSummand>& inputs, SumMode mode);

} // namespace pswf
