#include "pswf/ktheory.hpp"

#include "pswf/errors.hpp"
#include "pswf/intmatrix.hpp"

#include <algorithm>
#include <string>

namespace pswf {

namespace {

void trim(RGElement& x) {
    while (!x.p.empty() && x.p.back() == 0) x.p.pop_back();
}

BigInt eval_at_2(const std::vector<BigInt>& p) {
    BigInt v = 0;
    for (std::size_t k = p.size(); k-- > 0;) v = 2 * v + p[k];
    return v;
}

void laurent_set(LaurentPoly& f, long long e, const BigInt& v) {
    if (v == 0)
        f.c.erase(e);
    else
        f.c[e] = v;
}

} // namespace

RGElement rg_int(const BigInt& c) {
    RGElement x;
    if (c != 0) x.p = {c};
    return x;
}

RGElement rg_z(long long k) {
    if (k < 0) fail(errc::ValidationError, "negative z-power");
    RGElement x;
    x.p.assign(static_cast<std::size_t>(k) + 1, BigInt(0));
    x.p.back() = 1;
    return x;
}

RGElement rg_w() {
    RGElement x;
    x.a = 1;
    return x;
}

RGElement operator+(const RGElement& x, const RGElement& y) {
    RGElement r = x;
    if (r.p.size() < y.p.size()) r.p.resize(y.p.size());
    for (std::size_t k = 0; k < y.p.size(); ++k) r.p[k] += y.p[k];
    r.a += y.a;
    trim(r);
    return r;
}

RGElement operator-(const RGElement& x, const RGElement& y) {
    RGElement r = x;
    if (r.p.size() < y.p.size()) r.p.resize(y.p.size());
    for (std::size_t k = 0; k < y.p.size(); ++k) r.p[k] -= y.p[k];
    r.a -= y.a;
    trim(r);
    return r;
}

RGElement operator*(const RGElement& x, const RGElement& y) {
    // (p + aw)(q + bw) = pq + (p(2) b + q(2) a + 2ab) w, via z^k w = 2^k w
    // and w^2 = 2w.
    RGElement r;
    if (!x.p.empty() && !y.p.empty()) {
        r.p.assign(x.p.size() + y.p.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < x.p.size(); ++i)
            for (std::size_t j = 0; j < y.p.size(); ++j) r.p[i + j] += x.p[i] * y.p[j];
    }
    r.a = eval_at_2(x.p) * y.a + eval_at_2(y.p) * x.a + 2 * x.a * y.a;
    trim(r);
    return r;
}

LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r = f;
    for (const auto& [e, v] : g.c) laurent_set(r, e, (r.c.count(e) ? r.c[e] : BigInt(0)) + v);
    return r;
}

LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r = f;
    for (const auto& [e, v] : g.c) laurent_set(r, e, (r.c.count(e) ? r.c[e] : BigInt(0)) - v);
    return r;
}

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r;
    for (const auto& [e1, v1] : f.c)
        for (const auto& [e2, v2] : g.c)
            laurent_set(r, e1 + e2, (r.c.count(e1 + e2) ? r.c[e1 + e2] : BigInt(0)) + v1 * v2);
    return r;
}

LaurentPoly restriction_r(const RGElement& x) {
    LaurentPoly s; // 2 - theta - theta^{-1}
    s.c = {{-1, BigInt(-1)}, {0, BigInt(2)}, {1, BigInt(-1)}};
    LaurentPoly r;
    for (std::size_t k = x.p.size(); k-- > 0;) {
        r = r * s;
        if (x.p[k] != 0) laurent_set(r, 0, (r.c.count(0) ? r.c[0] : BigInt(0)) + x.p[k]);
    }
    return r;
}

bool divisible_by_cn(LaurentPoly f, long long n) {
    for (long long pass = 0; pass < n; ++pass) {
        if (f.c.empty()) return true;
        BigInt sum = 0;
        for (const auto& [e, v] : f.c) sum += v;
        if (sum != 0) return false;
        // f = (1 - theta) q: q's coefficients are prefix sums of f's
        LaurentPoly q;
        BigInt acc = 0;
        long long prev = f.c.begin()->first;
        for (const auto& [e, v] : f.c) {
            for (long long t = prev; t < e; ++t) laurent_set(q, t, acc);
            acc += v;
            laurent_set(q, e, acc); // top prefix sum is 0: drops out by itself
            prev = e;
        }
        f = q;
    }
    return true;
}

RGIdeal ideal_of_An(long long n) {
    if (n < 0) fail(errc::ValidationError, "interval model dimension must be >= 0");
    long long t0 = -1;
    for (long long t = 0; t <= n + 2; ++t)
        if (divisible_by_cn(restriction_r(rg_z(t)), n)) {
            t0 = t;
            break;
        }
    if (t0 != (n + 1) / 2)
        fail(errc::Internal, "restriction divisibility disagrees with the closed form");
    return {{rg_z(t0), rg_w()}};
}

RGIdeal ideal_of_smash(const std::vector<long long>& n_list) {
    std::string why;
    if (n_list.size() % 2 != 0) why += "factor count is odd; ";
    long long total = 0;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] % 2 != 0) why += "n_" + std::to_string(i) + " is odd; ";
        if (n_list[i] < 2) why += "n_" + std::to_string(i) + " < 2; ";
        total += n_list[i];
    }
    if (!why.empty()) fail(errc::HypothesisViolated, "smash hypothesis violated: " + why);
    // w^(count/2) = 2^(count/2 - 1) w in normal form
    RGElement wg = rg_w();
    wg.a = BigInt(1) << (n_list.size() / 2 - 1);
    return {{rg_z(total / 2), wg}};
}

bool ideal_contains(const RGIdeal& I, const RGElement& x, long long window) {
    long long maxdeg = 0;
    for (const auto& g : I.gens)
        maxdeg = std::max(maxdeg, static_cast<long long>(g.p.size()));
    if (window < 0) window = static_cast<long long>(x.p.size()) + maxdeg + 2;
    const long long top = window + maxdeg; // highest representable z-degree
    if (static_cast<long long>(x.p.size()) > top + 1) return false;
    const int rows = static_cast<int>(top) + 2; // z^0..z^top plus the w row
    std::vector<std::vector<BigInt>> cols;
    for (const auto& g : I.gens) {
        for (long long k = 0; k <= window; ++k) {
            std::vector<BigInt> col(rows, BigInt(0)); // z^k g
            for (std::size_t i = 0; i < g.p.size(); ++i) col[k + i] = g.p[i];
            col[rows - 1] = g.a * (BigInt(1) << k);
            cols.push_back(std::move(col));
        }
        std::vector<BigInt> wcol(rows, BigInt(0)); // w g = (g.p(2) + 2 g.a) w
        wcol[rows - 1] = eval_at_2(g.p) + 2 * g.a;
        cols.push_back(std::move(wcol));
    }
    IntMatrix A(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < A.cols; ++j)
        for (int i = 0; i < rows; ++i) A.at(i, j) = cols[j][i];
    std::vector<BigInt> b(rows, BigInt(0));
    for (std::size_t i = 0; i < x.p.size(); ++i) b[i] = x.p[i];
    b[rows - 1] = x.a;
    return solve_integer(A, b).has_value();
}

BigInt kappa_from_ideal(const RGIdeal& I) {
    // refuse shapes outside the validated families
    bool z_gen = false, w_gen = false;
    for (const auto& g : I.gens) {
        bool pure_z = g.a == 0 && !g.p.empty();
        if (pure_z)
            for (std::size_t k = 0; k + 1 < g.p.size(); ++k)
                if (g.p[k] != 0) pure_z = false;
        bool pure_w = g.p.empty() && g.a > 0;
        if (pure_z && g.p.back() == 1)
            z_gen = true;
        else if (pure_w)
            w_gen = true;
        else
            fail(errc::NotNormalized, "ideal is outside the validated families");
    }
    if (!z_gen || !w_gen) fail(errc::NotNormalized, "ideal is outside the validated families");
    for (long long t = 0; t <= 128; ++t) {
        if (ideal_contains(I, rg_z(t))) return 2 * BigInt(t);
        if (t >= 1) {
            RGElement e = rg_w();
            e.a = BigInt(1) << (t - 1);
            if (ideal_contains(I, e)) return 2 * BigInt(t);
        }
    }
    fail(errc::NotNormalized, "no level-0 normalization detected");
}

Rat kappa_report(const SymmetricGradedRoot& r) {
    Rat b = beta(r), d = delta(r.root);
    return b == d ? b : b + 2;
}

Rat kappa_connected_sum(const std::vector<ProjectiveSummand>& inputs, SumMode mode) {
    if (inputs.empty()) fail(errc::ValidationError, "no summands");
    Rat musum = 0;
    for (const auto& s : inputs) {
        if (s.n < 0 || Rat(s.n) != s.delta + s.mu_bar)
            fail(errc::NotProjective, "summand data is not a shifted X_n (need n = delta + mu_bar >= 0)");
        musum += s.mu_bar;
    }
    const long long count = static_cast<long long>(inputs.size());
    if (mode == SumMode::Bound) return -musum + Rat(2 * ((count + 1) / 2));
    if (count % 2 != 0)
        fail(errc::ExactHypothesisViolated, "exact rule needs an even number of summands");
    for (const auto& s : inputs)
        if (s.delta + s.mu_bar < 2)
            fail(errc::ExactHypothesisViolated, "exact rule needs delta + mu_bar >= 2 per summand");
    return -musum + Rat(count);
}

} // namespace pswf
