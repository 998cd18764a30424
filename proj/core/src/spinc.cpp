#include "pswf/spinc.hpp"

#include "pswf/errors.hpp"

#include <algorithm>

namespace pswf {

namespace {

IntMatrix doubled(const IntMatrix& M) {
    IntMatrix D = M;
    for (auto& x : D.a) x *= 2;
    return D;
}

CharVector canonical_rep(const PlumbingGraph& g, const std::vector<BigInt>& values) {
    return CharVector{lattice_reduce(doubled(g.M), values)};
}

std::vector<BigInt> diag_vector(const PlumbingGraph& g) {
    std::vector<BigInt> d(g.size());
    for (int i = 0; i < g.size(); ++i) d[i] = g.framing[i];
    return d;
}

} // namespace

bool is_characteristic(const PlumbingGraph& g, const CharVector& k) {
    if (static_cast<int>(k.values.size()) != g.size()) return false;
    for (int i = 0; i < g.size(); ++i) {
        BigInt diff = k.values[i] - g.framing[i];
        if (diff % 2 != 0) return false;
    }
    return true;
}

SpinCClass spinc_class_of(const PlumbingGraph& g, const CharVector& k) {
    if (!is_characteristic(g, k))
        fail(errc::ValidationError, "vector is not characteristic for this graph");
    SpinCClass c;
    c.rep = canonical_rep(g, k.values);
    // [-k] = [k] iff 2k ∈ 2M·Z^n iff k ∈ M·Z^n.
    auto sol = solve_integer(g.M, c.rep.values);
    c.self_conjugate = sol.has_value();
    if (c.self_conjugate) {
        std::vector<int> w(g.size());
        for (int i = 0; i < g.size(); ++i) {
            BigInt r = (*sol)[i] % 2;
            w[i] = r == 0 ? 0 : 1;
        }
        c.wu = std::move(w);
    }
    return c;
}

std::vector<SpinCClass> enumerate_spinc_classes(const PlumbingGraph& g) {
    if (!g.negative_definite)
        fail(errc::NotNegativeDefinite, "class enumeration needs a nonsingular negative-definite form");
    const int n = g.size();
    SmithResult snf = smith_normal_form(g.M);
    if (snf.rank != n) fail(errc::Internal, "negative-definite matrix must be nonsingular");
    // Z^n / M·Z^n ≅ ⊕ Z/d_i via x ↦ U·x; representatives t = Uinv·r.
    std::vector<SpinCClass> out;
    std::vector<BigInt> r(n, 0);
    std::vector<BigInt> diag = diag_vector(g);
    for (;;) {
        // char vectors = diag + 2Z^n; classes mod 2M·Z^n ↔ t ∈ Z^n mod M·Z^n
        std::vector<BigInt> t = mat_vec(snf.Uinv, r);
        std::vector<BigInt> val(n);
        for (int i = 0; i < n; ++i) val[i] = diag[i] + 2 * t[i];
        out.push_back(spinc_class_of(g, CharVector{val}));
        int pos = n - 1;
        while (pos >= 0) {
            r[pos] += 1;
            if (r[pos] < snf.diag[pos]) break;
            r[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end(),
              [](const SpinCClass& a, const SpinCClass& b) { return a.rep < b.rep; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SpinCClass& a, const SpinCClass& b) { return a.rep == b.rep; }),
              out.end());
    return out;
}

bool is_self_conjugate(const PlumbingGraph& g, const SpinCClass& c) {
    (void)g;
    return c.self_conjugate;
}

std::vector<int> wu_element(const PlumbingGraph& g, const SpinCClass& c) {
    if (!c.self_conjugate || !c.wu)
        fail(errc::NotSelfConjugate, "Wu element exists only for self-conjugate classes");
    // invariant: M·w ≡ diag(M) mod 2
    std::vector<BigInt> w(g.size());
    for (int i = 0; i < g.size(); ++i) w[i] = (*c.wu)[i];
    std::vector<BigInt> Mw = mat_vec(g.M, w);
    for (int i = 0; i < g.size(); ++i)
        if ((Mw[i] - g.framing[i]) % 2 != 0) fail(errc::Internal, "Wu congruence violated");
    return *c.wu;
}

Rat char_square(const PlumbingGraph& g, const CharVector& k) {
    if (!g.negative_definite)
        fail(errc::NotNegativeDefinite, "k² needs the exact inverse of M");
    const int n = g.size();
    Rat s = 0;
    for (int i = 0; i < n; ++i) {
        Rat row = 0;
        for (int j = 0; j < n; ++j) row += g.Minv.at(i, j) * Rat(k.values[j]);
        s += Rat(k.values[i]) * row;
    }
    return s;
}

Rat weight(const PlumbingGraph& g, const CharVector& k) {
    return (char_square(g, k) + g.size()) / 4;
}

Rat neumann_siebenmann(const PlumbingGraph& g, const SpinCClass& c) {
    std::vector<int> wu = wu_element(g, c);
    std::vector<BigInt> w(g.size());
    for (int i = 0; i < g.size(); ++i) w[i] = wu[i];
    std::vector<BigInt> Mw = mat_vec(g.M, w);
    BigInt wu2 = 0;
    for (int i = 0; i < g.size(); ++i) wu2 += w[i] * Mw[i];
    return Rat(BigInt(-g.size()) - wu2) / 8;
}

} // namespace pswf
