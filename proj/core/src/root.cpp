#include "pswf/root.hpp"

#include "pswf/errors.hpp"
#include "pswf/intmatrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace pswf {

namespace {

bool even_diff(const Rat& a, const Rat& b) { return is_integer((a - b) / 2); }

BigInt rat_to_int(const Rat& r) {
    if (!is_integer(r)) fail(errc::Internal, "expected integral grading difference");
    return numerator(r);
}

} // namespace

bool tower_less(const Tower& a, const Tower& b) {
    if (a.top != b.top) return a.top < b.top;
    BigInt la = a.len ? *a.len : BigInt(-1); // stems sort before torsion towers
    BigInt lb = b.len ? *b.len : BigInt(-1);
    return la < lb;
}

void validate_root(const GradedRoot& r) {
    const int n = static_cast<int>(r.leaves.size());
    if (n == 0) fail(errc::ValidationError, "root needs at least one leaf");
    if (static_cast<int>(r.angles.size()) != n - 1)
        fail(errc::ValidationError, "angle count must be leaf count - 1");
    for (const Rat& g : r.leaves) {
        if (!even_diff(g, r.leaves[0]))
            fail(errc::ValidationError, "leaf gradings must lie in one coset of 2Z");
        if (g < r.h) fail(errc::ValidationError, "leaf below truncation grading");
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (!r.angles[i]) continue;
        const Rat& a = *r.angles[i];
        if (!even_diff(a, r.leaves[0]))
            fail(errc::ValidationError, "angle gradings must lie in one coset of 2Z");
        if (a > r.leaves[i] || a > r.leaves[i + 1])
            fail(errc::ValidationError, "angle above an adjacent leaf");
        if (a < r.h) fail(errc::ValidationError, "angle below truncation grading");
    }
}

bool is_connected(const GradedRoot& r) {
    for (const auto& a : r.angles)
        if (!a) return false;
    return true;
}

std::optional<Rat> merge_level(const GradedRoot& r, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == j) return r.leaves[i];
    std::optional<Rat> m;
    for (int p = i; p < j; ++p) {
        if (!r.angles[p]) return std::nullopt;
        if (!m || *r.angles[p] < *m) m = *r.angles[p];
    }
    return m;
}

void validate_symmetric(const SymmetricGradedRoot& r) {
    validate_root(r.root);
    const int n = static_cast<int>(r.root.leaves.size());
    if (static_cast<int>(r.J.size()) != n) fail(errc::ValidationError, "J size mismatch");
    for (int i = 0; i < n; ++i) {
        if (r.J[i] < 0 || r.J[i] >= n || r.J[r.J[i]] != i)
            fail(errc::ValidationError, "J is not an involution");
        if (r.root.leaves[r.J[i]] != r.root.leaves[i])
            fail(errc::ValidationError, "J is not grading-preserving");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto m1 = merge_level(r.root, i, j);
            auto m2 = merge_level(r.root, r.J[i], r.J[j]);
            if (m1.has_value() != m2.has_value() || (m1 && *m1 != *m2))
                fail(errc::ValidationError, "J does not preserve merge gradings");
        }
}

namespace {

// Core of normalization. alive_of, when requested, maps each surviving planar
// position to the original index of the leaf that literally survived there.
NormalizeResult normalize_impl(const GradedRoot& r, std::vector<int>* alive_of) {
    validate_root(r);
    const int n = static_cast<int>(r.leaves.size());
    std::vector<int> prev(n), next(n);
    std::vector<std::optional<Rat>> ang(r.angles); // ang[i] = angle between i and next[i]
    for (int i = 0; i < n; ++i) {
        prev[i] = i - 1;
        next[i] = i + 1 < n ? i + 1 : -1;
    }
    std::vector<int> absorbed(n, -1);
    int head = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = head; i != -1; i = next[i]) {
            bool left = prev[i] != -1 && ang[prev[i]] && *ang[prev[i]] == r.leaves[i];
            bool right = next[i] != -1 && ang[i] && *ang[i] == r.leaves[i];
            if (!left && !right) continue;
            // i's tower is contained in a neighbor's: drop it, preferring the
            // left absorber when both flanking angles match its grading
            absorbed[i] = left ? prev[i] : next[i];
            std::optional<Rat> merged;
            if (prev[i] != -1 && next[i] != -1 && ang[prev[i]] && ang[i])
                merged = std::min(*ang[prev[i]], *ang[i]);
            if (prev[i] != -1) {
                next[prev[i]] = next[i];
                if (next[i] != -1)
                    ang[prev[i]] = merged;
                else
                    ang[prev[i]] = std::nullopt;
            } else {
                head = next[i];
            }
            if (next[i] != -1) prev[next[i]] = prev[i];
            changed = true;
            break;
        }
    }
    NormalizeResult res;
    res.root.h = r.h;
    std::vector<int> pos(n, -1);
    if (alive_of) alive_of->clear();
    for (int i = head; i != -1; i = next[i]) {
        pos[i] = static_cast<int>(res.root.leaves.size());
        res.root.leaves.push_back(r.leaves[i]);
        if (next[i] != -1) res.root.angles.push_back(ang[i]);
        if (alive_of) alive_of->push_back(i);
    }
    res.surv.resize(n);
    for (int i = 0; i < n; ++i) {
        int j = i;
        while (absorbed[j] != -1) j = absorbed[j];
        res.surv[i] = pos[j];
    }
    return res;
}

} // namespace

NormalizeResult normalize_full(const GradedRoot& r) { return normalize_impl(r, nullptr); }

GradedRoot normalize(const GradedRoot& r) { return normalize_impl(r, nullptr).root; }

SymmetricGradedRoot normalize(const SymmetricGradedRoot& r) {
    validate_symmetric(r);
    std::vector<int> alive;
    NormalizeResult nr = normalize_impl(r.root, &alive);
    const int m = static_cast<int>(nr.root.leaves.size());
    SymmetricGradedRoot out;
    out.root = nr.root;
    out.J.resize(m);
    for (int s = 0; s < m; ++s) out.J[s] = nr.surv[r.J[alive[s]]];
    try {
        validate_symmetric(out);
    } catch (const Error&) {
        fail(errc::Internal, "involution did not descend to the normalized root");
    }
    return out;
}

Rat delta(const GradedRoot& r) {
    validate_root(r);
    Rat m = r.leaves[0];
    for (const Rat& g : r.leaves) m = std::max(m, g);
    return m / 2;
}

Rat beta(const SymmetricGradedRoot& r) {
    validate_symmetric(r);
    std::optional<Rat> best;
    for (int i = 0; i < static_cast<int>(r.root.leaves.size()); ++i) {
        auto m = merge_level(r.root, i, r.J[i]);
        if (m && (!best || *m > *best)) best = *m;
    }
    if (!best) fail(errc::CutTooHigh, "every J-orbit merges below the truncation grading");
    return *best / 2;
}

std::pair<Rat, Rat> alpha_gamma(const SymmetricGradedRoot& r) {
    Rat d = delta(r.root), b = beta(r);
    Rat diff = d - b;
    if (!is_integer(diff)) fail(errc::Internal, "delta - beta must be an integer");
    bool even = is_integer(diff / 2);
    return {even ? d : d + 1, b};
}

SymmetricGradedRoot make_Xn(long long n) {
    if (n < 0) fail(errc::ValidationError, "X_n needs n >= 0");
    SymmetricGradedRoot r;
    if (n == 0) {
        r.root.leaves = {Rat(0)};
        r.J = {0};
    } else {
        r.root.leaves = {Rat(2 * n), Rat(2 * n)};
        r.root.angles = {Rat(0)};
        r.J = {1, 0};
    }
    r.root.h = 0;
    return r;
}

GradedRoot shift_root(const GradedRoot& r, const Rat& s) {
    GradedRoot out = r;
    for (auto& g : out.leaves) g += s;
    for (auto& a : out.angles)
        if (a) *a += s;
    out.h += s;
    return out;
}

SymmetricGradedRoot shift_root(const SymmetricGradedRoot& r, const Rat& s) {
    return {shift_root(r.root, s), r.J};
}

namespace {

// Canonical dendrogram key of the connected planar range [i, j].
std::string key_range(const GradedRoot& r, int i, int j) {
    if (i == j) return "L" + rat_str(r.leaves[i]);
    Rat a = *r.angles[i];
    for (int p = i; p < j; ++p) a = std::min(a, *r.angles[p]);
    std::vector<std::string> kids;
    int start = i;
    for (int p = i; p < j; ++p)
        if (*r.angles[p] == a) {
            kids.push_back(key_range(r, start, p));
            start = p + 1;
        }
    kids.push_back(key_range(r, start, j));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + rat_str(a) + "|";
    for (size_t k = 0; k < kids.size(); ++k) {
        if (k) s += ",";
        s += kids[k];
    }
    return s + ")";
}

} // namespace

std::string canonical_key(const GradedRoot& r) {
    if (r.leaves.empty()) return "";
    std::vector<std::string> comps;
    int start = 0;
    for (int p = 0; p + 1 < static_cast<int>(r.leaves.size()); ++p)
        if (!r.angles[p]) {
            comps.push_back(key_range(r, start, p));
            start = p + 1;
        }
    comps.push_back(key_range(r, start, static_cast<int>(r.leaves.size()) - 1));
    std::sort(comps.begin(), comps.end());
    std::string s;
    for (size_t k = 0; k < comps.size(); ++k) {
        if (k) s += "#";
        s += comps[k];
    }
    return s;
}

GradedRoot cut_at(const GradedRoot& r, const Rat& t) {
    GradedRoot out;
    out.h = t;
    std::optional<Rat> gap; // min non-null angle since the previous kept leaf
    bool gap_null = false;  // saw a null angle in the current gap
    bool have_prev = false;
    for (int i = 0; i < static_cast<int>(r.leaves.size()); ++i) {
        if (r.leaves[i] >= t) {
            if (have_prev) {
                if (!gap_null && gap && *gap >= t)
                    out.angles.push_back(*gap);
                else
                    out.angles.push_back(std::nullopt);
            }
            out.leaves.push_back(r.leaves[i]);
            have_prev = true;
            gap.reset();
            gap_null = false;
        }
        if (i < static_cast<int>(r.angles.size())) {
            if (!r.angles[i])
                gap_null = true;
            else if (!gap || *r.angles[i] < *gap)
                gap = *r.angles[i];
        }
    }
    return out;
}

bool equal_above(const GradedRoot& a, const GradedRoot& b, const Rat& t) {
    GradedRoot ca = cut_at(a, t), cb = cut_at(b, t);
    if (ca.leaves.empty() || cb.leaves.empty()) return ca.leaves.empty() == cb.leaves.empty();
    return canonical_key(normalize(ca)) == canonical_key(normalize(cb));
}

std::vector<Tower> towers_of_root(const GradedRoot& r) {
    validate_root(r);
    const int n = static_cast<int>(r.leaves.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<Rat> top(r.leaves);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<std::pair<Rat, int>> events; // (angle grading, planar position)
    for (int p = 0; p + 1 < n; ++p)
        if (r.angles[p]) events.push_back({*r.angles[p], p});
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<Tower> out;
    for (const auto& [lvl, p] : events) {
        int a = find(p), b = find(p + 1);
        if (a == b) fail(errc::Internal, "planar clusters merged twice");
        // elder rule: the lower top dies; on a tie the right cluster dies
        int lose = top[b] <= top[a] ? b : a;
        int win = lose == a ? b : a;
        BigInt len = rat_to_int((top[lose] - lvl) / 2);
        if (len > 0) out.push_back({top[lose], len});
        parent[lose] = win;
        top[win] = std::max(top[win], top[lose]);
    }
    for (int i = 0; i < n; ++i)
        if (find(i) == i) out.push_back({top[i], std::nullopt});
    std::sort(out.begin(), out.end(), tower_less);
    return out;
}

std::vector<std::vector<int>> branches_at(const GradedRoot& r, const Rat& s) {
    std::vector<std::vector<int>> out;
    bool have_prev = false;
    bool gap_ok = true; // every angle since the previous kept leaf is >= s
    for (int i = 0; i < static_cast<int>(r.leaves.size()); ++i) {
        if (r.leaves[i] >= s) {
            if (have_prev && gap_ok)
                out.back().push_back(i);
            else
                out.push_back({i});
            have_prev = true;
            gap_ok = true;
        }
        if (i < static_cast<int>(r.angles.size()) && (!r.angles[i] || *r.angles[i] < s))
            gap_ok = false;
    }
    return out;
}

namespace {

int branch_of(const std::vector<std::vector<int>>& branches, int leaf) {
    for (int b = 0; b < static_cast<int>(branches.size()); ++b)
        for (int l : branches[b])
            if (l == leaf) return b;
    return -1;
}

// Image of a branch-basis vector under U^k: branches at the higher grading
// coalesce into branches at the lower one.
std::vector<BigInt> pushdown(const std::vector<BigInt>& vec,
                             const std::vector<std::vector<int>>& bhi,
                             const std::vector<std::vector<int>>& blo) {
    std::vector<BigInt> out(blo.size(), 0);
    for (int i = 0; i < static_cast<int>(bhi.size()); ++i) {
        if (vec[i] == 0) continue;
        int j = branch_of(blo, bhi[i][0]);
        if (j < 0) fail(errc::Internal, "branch lost under pushdown");
        out[j] += vec[i];
    }
    return out;
}

} // namespace

LocalMapResult local_map_exists(const SymmetricGradedRoot& src, const SymmetricGradedRoot& dst,
                                bool equivariant) {
    if (equivariant) {
        validate_symmetric(src);
        validate_symmetric(dst);
    } else {
        validate_root(src.root);
        validate_root(dst.root);
    }
    if (!is_connected(src.root) || !is_connected(dst.root))
        fail(errc::ValidationError, "local-map decision needs fully merged roots");
    if (!even_diff(src.root.leaves[0], dst.root.leaves[0])) return {false, std::nullopt};

    const int nl = static_cast<int>(src.root.leaves.size());
    std::map<Rat, std::vector<std::vector<int>>> bcache;
    auto branches = [&](const Rat& s) -> const std::vector<std::vector<int>>& {
        auto it = bcache.find(s);
        if (it == bcache.end()) it = bcache.emplace(s, branches_at(dst.root, s)).first;
        return it->second;
    };

    std::vector<int> offset(nl + 1, 0);
    for (int i = 0; i < nl; ++i)
        offset[i + 1] = offset[i] + static_cast<int>(branches(src.root.leaves[i]).size());
    const int nvars = offset[nl];
    if (nvars == 0) return {false, std::nullopt}; // every leaf image forced to 0

    std::vector<std::vector<BigInt>> rows;
    std::vector<BigInt> rhs;

    // the two sides of each source merge must push down to the same element
    for (int p = 0; p + 1 < nl; ++p) {
        const Rat& a = *src.root.angles[p];
        const auto& blo = branches(a);
        for (int t = 0; t < static_cast<int>(blo.size()); ++t) {
            std::vector<BigInt> row(nvars, 0);
            for (int side = 0; side < 2; ++side) {
                const int leaf = p + side;
                const BigInt sign = side == 0 ? 1 : -1;
                const auto& bhi = branches(src.root.leaves[leaf]);
                for (int g = 0; g < static_cast<int>(bhi.size()); ++g) {
                    int tgt = branch_of(blo, bhi[g][0]);
                    if (tgt < 0) fail(errc::Internal, "branch lost under pushdown");
                    if (tgt == t) row[offset[leaf] + g] += sign;
                }
            }
            rows.push_back(std::move(row));
            rhs.push_back(0);
        }
    }
    if (equivariant) {
        for (int i = 0; i < nl; ++i) {
            const auto& b = branches(src.root.leaves[i]);
            const int ji = src.J[i];
            for (int g = 0; g < static_cast<int>(b.size()); ++g) {
                int jg = branch_of(b, dst.J[b[g][0]]);
                if (jg < 0) fail(errc::Internal, "J image of a branch not found");
                if (ji == i && jg == g) continue;
                std::vector<BigInt> row(nvars, 0);
                row[offset[ji] + jg] += 1;
                row[offset[i] + g] -= 1;
                rows.push_back(std::move(row));
                rhs.push_back(0);
            }
        }
    }
    // localization: deep down every branch coalesces and the total must be a
    // unit; solving for +1 loses nothing (negate a -1 solution)
    {
        std::vector<BigInt> row(nvars, 0);
        for (int g = offset[0]; g < offset[1]; ++g) row[g] += 1;
        rows.push_back(std::move(row));
        rhs.push_back(1);
    }

    IntMatrix A(static_cast<int>(rows.size()), nvars);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < nvars; ++j) A.at(i, j) = rows[i][j];
    auto sol = solve_integer(A, rhs);
    if (!sol) return {false, std::nullopt};
    RootHom hom;
    hom.coeff.resize(nl);
    for (int i = 0; i < nl; ++i)
        hom.coeff[i] = std::vector<BigInt>(sol->begin() + offset[i], sol->begin() + offset[i + 1]);
    if (!verify_hom(src, dst, hom, equivariant))
        fail(errc::Internal, "solver witness failed re-verification");
    return {true, std::move(hom)};
}

bool verify_hom(const SymmetricGradedRoot& src, const SymmetricGradedRoot& dst,
                const RootHom& hom, bool equivariant) {
    validate_root(src.root);
    validate_root(dst.root);
    if (!is_connected(src.root) || !is_connected(dst.root)) return false;
    const int nl = static_cast<int>(src.root.leaves.size());
    if (static_cast<int>(hom.coeff.size()) != nl) return false;
    std::map<Rat, std::vector<std::vector<int>>> bcache;
    auto branches = [&](const Rat& s) -> const std::vector<std::vector<int>>& {
        auto it = bcache.find(s);
        if (it == bcache.end()) it = bcache.emplace(s, branches_at(dst.root, s)).first;
        return it->second;
    };
    for (int i = 0; i < nl; ++i)
        if (hom.coeff[i].size() != branches(src.root.leaves[i]).size()) return false;
    for (int p = 0; p + 1 < nl; ++p) {
        const Rat& a = *src.root.angles[p];
        auto lhs = pushdown(hom.coeff[p], branches(src.root.leaves[p]), branches(a));
        auto rhs = pushdown(hom.coeff[p + 1], branches(src.root.leaves[p + 1]), branches(a));
        if (lhs != rhs) return false;
    }
    if (equivariant) {
        for (int i = 0; i < nl; ++i) {
            const auto& b = branches(src.root.leaves[i]);
            std::vector<BigInt> jimg(b.size(), 0);
            for (int g = 0; g < static_cast<int>(b.size()); ++g) {
                int jg = branch_of(b, dst.J[b[g][0]]);
                if (jg < 0) return false;
                jimg[jg] += hom.coeff[i][g];
            }
            if (jimg != hom.coeff[src.J[i]]) return false;
        }
    }
    BigInt lambda = 0; // deep stem coefficient
    for (const auto& c : hom.coeff[0]) lambda += c;
    return lambda == 1 || lambda == -1;
}

RootHom compose_homs(const SymmetricGradedRoot& a, const SymmetricGradedRoot& b,
                     const SymmetricGradedRoot& c, const RootHom& f, const RootHom& g) {
    const int nl = static_cast<int>(a.root.leaves.size());
    RootHom out;
    out.coeff.resize(nl);
    for (int i = 0; i < nl; ++i) {
        const Rat& s = a.root.leaves[i];
        auto bb = branches_at(b.root, s);
        auto cb = branches_at(c.root, s);
        std::vector<BigInt> acc(cb.size(), 0);
        for (int gb = 0; gb < static_cast<int>(bb.size()); ++gb) {
            if (f.coeff[i][gb] == 0) continue;
            const int j = bb[gb][0]; // a member leaf of the b-branch
            auto pushed = pushdown(g.coeff[j], branches_at(c.root, b.root.leaves[j]), cb);
            for (int t = 0; t < static_cast<int>(cb.size()); ++t) acc[t] += f.coeff[i][gb] * pushed[t];
        }
        out.coeff[i] = std::move(acc);
    }
    return out;
}

std::vector<OrbitParam> orbit_params(const SymmetricGradedRoot& r) {
    validate_symmetric(r);
    std::vector<OrbitParam> out;
    for (int i = 0; i < static_cast<int>(r.root.leaves.size()); ++i) {
        if (r.J[i] < i) continue;
        OrbitParam p;
        p.d = r.root.leaves[i] / 2;
        p.fixed = r.J[i] == i;
        if (p.fixed) {
            p.b = p.d;
        } else {
            auto m = merge_level(r.root, i, r.J[i]);
            if (!m) fail(errc::ValidationError, "orbit merges below the truncation grading");
            p.b = *m / 2;
        }
        out.push_back(p);
    }
    return out;
}

namespace {

// Chain is innermost-first: d and b strictly decreasing, a fixed orbit only at
// the innermost slot, pairs strictly non-degenerate (b < d).
std::optional<SymmetricGradedRoot> build_monotone(const std::vector<OrbitParam>& chain) {
    if (chain.empty()) return std::nullopt;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!(chain[i].d > chain[i + 1].d) || !(chain[i].b > chain[i + 1].b)) return std::nullopt;
        if (chain[i + 1].fixed) return std::nullopt;
    }
    for (const OrbitParam& p : chain)
        if (!p.fixed && !(p.b < p.d)) return std::nullopt;
    SymmetricGradedRoot r;
    const int k = static_cast<int>(chain.size());
    for (int i = k - 1; i >= 0; --i) {
        r.root.leaves.push_back(chain[i].d * 2);
        if (i > 0) r.root.angles.push_back(chain[i].b * 2);
    }
    if (chain[0].fixed) {
        for (int i = 1; i < k; ++i) {
            r.root.angles.push_back(chain[i].b * 2);
            r.root.leaves.push_back(chain[i].d * 2);
        }
    } else {
        r.root.angles.push_back(chain[0].b * 2);
        for (int i = 0; i < k; ++i) {
            if (i > 0) r.root.angles.push_back(chain[i].b * 2);
            r.root.leaves.push_back(chain[i].d * 2);
        }
    }
    const int n = static_cast<int>(r.root.leaves.size());
    r.J.resize(n);
    for (int i = 0; i < n; ++i) r.J[i] = n - 1 - i;
    Rat h = r.root.leaves[0];
    for (const auto& a : r.root.angles) h = std::min(h, *a);
    r.root.h = h;
    validate_symmetric(r);
    return r;
}

bool certify_equivalent(const SymmetricGradedRoot& a, const SymmetricGradedRoot& b) {
    return local_map_exists(a, b, false).exists && local_map_exists(b, a, false).exists;
}

} // namespace

SymmetricGradedRoot monotone_subroot(const SymmetricGradedRoot& r_in) {
    SymmetricGradedRoot r = normalize(r_in);
    std::vector<OrbitParam> params = orbit_params(r);
    // Pareto staircase over (d, b): scan by d descending, keep strict b drops
    std::vector<int> order(params.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (params[x].d != params[y].d) return params[x].d > params[y].d;
        if (params[x].b != params[y].b) return params[x].b < params[y].b;
        return x < y;
    });
    std::vector<OrbitParam> chain;
    std::optional<Rat> min_b;
    for (int idx : order)
        if (!min_b || params[idx].b < *min_b) {
            chain.push_back(params[idx]);
            min_b = params[idx].b;
        }
    if (auto cand = build_monotone(chain))
        if (certify_equivalent(r, *cand)) return *cand;
    // exhaustive fallback over orbit subsets, fewest leaves first
    const int np = static_cast<int>(params.size());
    if (np <= 20) {
        std::vector<std::pair<int, unsigned>> masks;
        for (unsigned m = 1; m < (1u << np); ++m) {
            int leaves = 0;
            for (int i = 0; i < np; ++i)
                if (m & (1u << i)) leaves += params[i].fixed ? 1 : 2;
            masks.push_back({leaves, m});
        }
        std::sort(masks.begin(), masks.end());
        for (auto [cnt, m] : masks) {
            (void)cnt;
            std::vector<OrbitParam> sub;
            for (int i = 0; i < np; ++i)
                if (m & (1u << i)) sub.push_back(params[i]);
            std::sort(sub.begin(), sub.end(),
                      [](const OrbitParam& x, const OrbitParam& y) { return x.d > y.d; });
            auto cand = build_monotone(sub);
            if (!cand) continue;
            if (certify_equivalent(r, *cand)) return *cand;
        }
    }
    fail(errc::CertificationFailed, "no certifiable monotone subroot found");
}

std::optional<std::pair<BigInt, Rat>> is_projective(const SymmetricGradedRoot& r_in) {
    SymmetricGradedRoot r = normalize(r_in);
    Rat d = delta(r.root), b = beta(r);
    Rat n = d - b;
    if (!is_integer(n) || n < 0) return std::nullopt;
    SymmetricGradedRoot target = shift_root(make_Xn(to_ll(numerator(n))), b * 2);
    if (!local_map_exists(r, target, true).exists) return std::nullopt;
    if (!local_map_exists(target, r, true).exists) return std::nullopt;
    return std::make_pair(numerator(n), b * 2);
}

} // namespace pswf
