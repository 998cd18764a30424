#include "pswf/lattice.hpp"

#include "pswf/errors.hpp"
#include "pswf/intmatrix.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace pswf {

namespace {

// ---------- superlevel region ----------

struct Region {
    int n = 0;
    Rat h = 0, maxw = 0;
    std::vector<std::vector<BigInt>> ts;   // sorted (w desc, val lex)
    std::vector<std::vector<BigInt>> vals;
    std::vector<std::vector<long long>> vll; // vals in machine words (fast path only)
    std::vector<Rat> ws;
    std::vector<int> nbp, nbm;             // [p*n + v] -> neighbor index or -1
    std::vector<int> conj_point;           // J(p) for self-conjugate classes; empty otherwise
};

std::vector<BigInt> mcol_times(const IntMatrix& M, const std::vector<BigInt>& t) {
    return mat_vec(M, t);
}

// Exact square completion of the positive-definite form
// f(t) = -k^2 = t'(-4M)t - 4r't - r'M^{-1}r, where k = rep + 2Mt:
// f(t) = sum_i d_i (t_i + sum_{j>i} u_ij t_j + s_i)^2 + K.
struct Completion {
    int n = 0;
    std::vector<Rat> d, s;
    std::vector<std::vector<Rat>> u;
    Rat K = 0;
};

Completion complete_squares(const PlumbingGraph& g, const std::vector<BigInt>& r) {
    const int n = g.size();
    Completion C;
    C.n = n;
    RatMatrix A(n, n);
    std::vector<Rat> b(n);
    C.d.assign(n, Rat(0));
    C.s.assign(n, Rat(0));
    C.u.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.at(i, j) = Rat(-4) * Rat(g.M.at(i, j));
    {
        // constant term -r' M^{-1} r
        std::vector<Rat> mr(n, Rat(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mr[i] += g.Minv.at(i, j) * Rat(r[j]);
        for (int i = 0; i < n; ++i) C.K -= Rat(r[i]) * mr[i];
        for (int i = 0; i < n; ++i) b[i] = Rat(-4) * Rat(r[i]);
    }
    for (int i = 0; i < n; ++i) {
        C.d[i] = A.at(i, i);
        if (!(C.d[i] > 0)) fail(errc::Internal, "square completion lost positivity");
        for (int j = i + 1; j < n; ++j) C.u[i][j] = A.at(i, j) / C.d[i];
        C.s[i] = b[i] / (2 * C.d[i]);
        C.K -= C.d[i] * C.s[i] * C.s[i];
        for (int j = i + 1; j < n; ++j) {
            b[j] -= 2 * C.d[i] * C.s[i] * C.u[i][j];
            for (int k = j; k < n; ++k) {
                Rat delta = C.d[i] * C.u[i][j] * C.u[i][k];
                A.at(j, k) -= delta;
                if (k != j) A.at(k, j) -= delta;
            }
        }
    }
    return C;
}

// Enumerate t with w(rep + 2Mt) >= h.
Region build_region(const PlumbingGraph& g, const SpinCClass& cls, const Rat& h,
                    std::size_t cap) {
    if (!g.negative_definite) fail(errc::NotNegativeDefinite, "superlevel regions need a negative-definite form");
    const int n = g.size();
    const std::vector<BigInt>& r = cls.rep.values;
    if (static_cast<int>(r.size()) != n) fail(errc::ValidationError, "class/graph size mismatch");
    if (!is_characteristic(g, cls.rep)) fail(errc::ValidationError, "class representative is not characteristic");

    Completion CC = complete_squares(g, r);
    const std::vector<Rat>&d = CC.d, &s = CC.s;
    const std::vector<std::vector<Rat>>& u = CC.u;
    const Rat& K = CC.K;

    const Rat B = Rat(n) - 4 * h; // f(t) <= B  <=>  w >= h
    Region reg;
    reg.n = n;
    reg.h = h;

    std::optional<std::vector<BigInt>> cvec;
    if (cls.self_conjugate) {
        cvec = solve_integer(g.M, r);
        if (!cvec) fail(errc::Internal, "self-conjugate class without integral conjugation center");
    }

    // Scale the inequality by R*Q^2 (R = lcm of the d_i denominators, Q = lcm of
    // the s_i/u_ij denominators): every partial square sum becomes an integer and
    // the branch-and-bound runs in machine words.  The a-priori magnitude bounds
    // below guarantee no overflow; graphs that exceed them (never seen in
    // practice) take the exact rational path, which enumerates the same set.
    BigInt Qbig = 1, Rbig = 1;
    std::vector<BigInt> Dn(n), QSn(n);
    std::vector<std::vector<BigInt>> QUn(n, std::vector<BigInt>(n, BigInt(0)));
    std::vector<BigInt> tspan(n);
    std::vector<long long> rll(n), Mll(static_cast<std::size_t>(n) * n), cll(n);
    bool fast = B - K >= 0;
    BigInt G0 = -1;
    if (fast) {
        using boost::multiprecision::lcm;
        for (int i = 0; i < n; ++i) {
            Rbig = lcm(Rbig, BigInt(denominator(d[i])));
            Qbig = lcm(Qbig, BigInt(denominator(s[i])));
            for (int j = i + 1; j < n; ++j) Qbig = lcm(Qbig, BigInt(denominator(u[i][j])));
        }
        G0 = rat_floor((B - K) * Rat(Rbig) * Rat(Qbig) * Rat(Qbig));
        const BigInt lim31 = BigInt(1) << 31, lim61 = BigInt(1) << 61, lim125 = BigInt(1) << 125;
        fast = Qbig < lim31 && Rbig < lim31 && G0 >= 0;
        for (int i = 0; fast && i < n; ++i) {
            Dn[i] = BigInt(numerator(d[i])) * (Rbig / BigInt(denominator(d[i])));
            QSn[i] = BigInt(numerator(s[i])) * (Qbig / BigInt(denominator(s[i])));
            for (int j = i + 1; j < n; ++j)
                QUn[i][j] = BigInt(numerator(u[i][j])) * (Qbig / BigInt(denominator(u[i][j])));
            fast = Dn[i] > 0 && Dn[i] < lim61;
        }
        // |t_i| <= tspan_i and |Q e_i| <= Em_i by downward induction over the
        // recursion order; every probed square then fits well inside __int128.
        std::vector<BigInt> Em(n);
        for (int i = n - 1; fast && i >= 0; --i) {
            Em[i] = abs(QSn[i]);
            for (int j = i + 1; j < n; ++j) Em[i] += abs(QUn[i][j]) * tspan[j];
            tspan[i] = (boost::multiprecision::sqrt(BigInt(G0 / Dn[i])) + Em[i]) / Qbig + 2;
            BigInt v = Qbig * (tspan[i] + 1) + Em[i];
            fast = Em[i] < lim61 && tspan[i] < lim31 && Dn[i] * v * v < lim125;
        }
        for (int i = 0; fast && i < n; ++i) {
            BigInt vm = abs(r[i]);
            for (int j = 0; j < n; ++j) vm += 2 * abs(g.M.at(i, j)) * tspan[j];
            fast = abs(r[i]) < lim61 && vm < lim61;
            if (cvec) fast = fast && abs((*cvec)[i]) < lim61;
            if (fast) {
                rll[i] = static_cast<long long>(r[i]);
                if (cvec) cll[i] = static_cast<long long>((*cvec)[i]);
                for (int j = 0; j < n; ++j) Mll[static_cast<std::size_t>(i) * n + j] = static_cast<long long>(g.M.at(i, j));
            }
        }
    }

    if (fast) {
        const long long Qll = static_cast<long long>(Qbig);
        std::vector<long long> Dll(n), QSll(n);
        std::vector<std::vector<long long>> QUll(n, std::vector<long long>(n, 0));
        for (int i = 0; i < n; ++i) {
            Dll[i] = static_cast<long long>(Dn[i]);
            QSll[i] = static_cast<long long>(QSn[i]);
            for (int j = i + 1; j < n; ++j) QUll[i][j] = static_cast<long long>(QUn[i][j]);
        }
        __int128 g0 = 0;
        {
            BigInt hi = G0 >> 64, lo = G0 - ((G0 >> 64) << 64);
            g0 = static_cast<__int128>(static_cast<unsigned __int128>(hi.convert_to<std::uint64_t>()) << 64 |
                                       lo.convert_to<std::uint64_t>());
        }
        std::vector<long long> tl(n, 0);
        std::vector<std::vector<long long>> fts;
        std::vector<unsigned __int128> fused;
        auto fdiv = [](long long a, long long b) {
            long long q = a / b, rm = a % b;
            return rm != 0 && rm < 0 ? q - 1 : q; // b > 0
        };
        std::function<void(int, __int128, unsigned __int128)> frec = [&](int i, __int128 budget,
                                                                         unsigned __int128 used) {
            if (i < 0) {
                if (fts.size() >= cap)
                    fail(errc::RegionTooLarge, "superlevel region exceeds the point cap");
                fts.push_back(tl);
                fused.push_back(used);
                return;
            }
            __int128 ew = QSll[i];
            for (int j = i + 1; j < n; ++j) ew += static_cast<__int128>(QUll[i][j]) * tl[j];
            const long long El = static_cast<long long>(ew);
            const long long t0 = fdiv(-El, Qll);
            for (long long ti = t0;; --ti) {
                __int128 v = static_cast<__int128>(Qll) * ti + El;
                __int128 q = static_cast<__int128>(Dll[i]) * (v * v);
                if (q > budget) break;
                tl[i] = ti;
                frec(i - 1, budget - q, used + static_cast<unsigned __int128>(q));
            }
            for (long long ti = t0 + 1;; ++ti) {
                __int128 v = static_cast<__int128>(Qll) * ti + El;
                __int128 q = static_cast<__int128>(Dll[i]) * (v * v);
                if (q > budget) break;
                tl[i] = ti;
                frec(i - 1, budget - q, used + static_cast<unsigned __int128>(q));
            }
        };
        frec(n - 1, g0, 0);

        const std::size_t np = fts.size();
        std::vector<std::vector<long long>> fvals(np);
        for (std::size_t p = 0; p < np; ++p) {
            std::vector<long long> v(n);
            for (int i = 0; i < n; ++i) {
                long long acc = rll[i];
                for (int j = 0; j < n; ++j) acc += 2 * Mll[static_cast<std::size_t>(i) * n + j] * fts[p][j];
                v[i] = acc;
            }
            fvals[p] = std::move(v);
        }
        std::vector<int> order(np);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (fused[a] != fused[b]) return fused[a] < fused[b]; // used asc == w desc
            return fvals[a] < fvals[b];
        });
        reg.ts.resize(np);
        reg.vals.resize(np);
        reg.ws.resize(np);
        const Rat W0 = (Rat(n) - K) / 4;
        const BigInt S4 = Rbig * Qbig * Qbig * 4;
        std::vector<std::vector<long long>> tll(np);
        reg.vll.resize(np);
        for (std::size_t p = 0; p < np; ++p) {
            const int op = order[p];
            tll[p] = std::move(fts[op]);
            reg.ts[p].assign(tll[p].begin(), tll[p].end());
            reg.vals[p].assign(fvals[op].begin(), fvals[op].end());
            reg.vll[p] = std::move(fvals[op]);
            const unsigned __int128 uu = fused[op];
            BigInt ub = (BigInt(static_cast<std::uint64_t>(uu >> 64)) << 64) +
                        static_cast<std::uint64_t>(uu);
            reg.ws[p] = W0 - Rat(ub, S4);
        }
        if (np > 0) reg.maxw = reg.ws[0];
        struct VecHash {
            std::size_t operator()(const std::vector<long long>& v) const {
                std::uint64_t hh = 0x9e3779b97f4a7c15ull ^ v.size();
                for (long long x : v) {
                    std::uint64_t z = static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + hh;
                    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
                    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
                    hh = z ^ (z >> 31);
                }
                return static_cast<std::size_t>(hh);
            }
        };
        std::unordered_map<std::vector<long long>, int, VecHash> tindex;
        tindex.reserve(np * 2);
        for (std::size_t p = 0; p < np; ++p) tindex[tll[p]] = static_cast<int>(p);
        reg.nbp.assign(np * n, -1);
        reg.nbm.assign(np * n, -1);
        std::vector<long long> tt;
        for (std::size_t p = 0; p < np; ++p)
            for (int v = 0; v < n; ++v) {
                tt = tll[p];
                tt[v] += 1;
                auto it = tindex.find(tt);
                if (it != tindex.end()) reg.nbp[p * n + v] = it->second;
                tt[v] -= 2;
                it = tindex.find(tt);
                if (it != tindex.end()) reg.nbm[p * n + v] = it->second;
            }
        if (cvec) {
            reg.conj_point.assign(np, -1);
            std::vector<long long> jt(n);
            for (std::size_t p = 0; p < np; ++p) {
                for (int i = 0; i < n; ++i) jt[i] = -cll[i] - tll[p][i];
                auto it = tindex.find(jt);
                if (it == tindex.end()) fail(errc::Internal, "conjugation does not preserve the region");
                reg.conj_point[p] = it->second;
            }
        }
        return reg;
    }

    std::vector<BigInt> t(n, 0);
    std::vector<std::vector<BigInt>> raw_ts;
    std::vector<Rat> raw_f;
    if (B - K >= 0) {
        // depth i chooses t_i given t_{i+1..n-1}; budget = remaining square sum
        std::function<void(int, const Rat&, const Rat&)> rec = [&](int i, const Rat& budget,
                                                                   const Rat& used) {
            if (i < 0) {
                if (raw_ts.size() >= cap)
                    fail(errc::RegionTooLarge, "superlevel region exceeds the point cap");
                raw_ts.push_back(t);
                raw_f.push_back(K + used);
                return;
            }
            Rat e = s[i];
            for (int j = i + 1; j < n; ++j) e += u[i][j] * Rat(t[j]);
            auto quad = [&](const BigInt& ti) { return d[i] * (Rat(ti) + e) * (Rat(ti) + e); };
            BigInt t0 = rat_floor(-e);
            for (BigInt ti = t0;; --ti) {
                Rat q = quad(ti);
                if (q > budget) break;
                t[i] = ti;
                rec(i - 1, budget - q, used + q);
            }
            for (BigInt ti = t0 + 1;; ++ti) {
                Rat q = quad(ti);
                if (q > budget) break;
                t[i] = ti;
                rec(i - 1, budget - q, used + q);
            }
        };
        rec(n - 1, B - K, Rat(0));
    }

    const std::size_t np = raw_ts.size();
    std::vector<std::vector<BigInt>> raw_vals(np);
    std::vector<Rat> raw_ws(np);
    for (std::size_t p = 0; p < np; ++p) {
        auto mt = mcol_times(g.M, raw_ts[p]);
        std::vector<BigInt> v(n);
        for (int i = 0; i < n; ++i) v[i] = r[i] + 2 * mt[i];
        raw_vals[p] = std::move(v);
        raw_ws[p] = (Rat(n) - raw_f[p]) / 4;
    }
    std::vector<int> order(np);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (raw_ws[a] != raw_ws[b]) return raw_ws[a] > raw_ws[b];
        return raw_vals[a] < raw_vals[b];
    });
    reg.ts.resize(np);
    reg.vals.resize(np);
    reg.ws.resize(np);
    std::map<std::vector<BigInt>, int> tindex;
    for (std::size_t p = 0; p < np; ++p) {
        reg.ts[p] = std::move(raw_ts[order[p]]);
        reg.vals[p] = std::move(raw_vals[order[p]]);
        reg.ws[p] = raw_ws[order[p]];
        tindex[reg.ts[p]] = static_cast<int>(p);
    }
    if (np > 0) reg.maxw = reg.ws[0];
    reg.nbp.assign(np * n, -1);
    reg.nbm.assign(np * n, -1);
    std::vector<BigInt> tt;
    for (std::size_t p = 0; p < np; ++p)
        for (int v = 0; v < n; ++v) {
            tt = reg.ts[p];
            tt[v] += 1;
            auto it = tindex.find(tt);
            if (it != tindex.end()) reg.nbp[p * n + v] = it->second;
            tt[v] -= 2;
            it = tindex.find(tt);
            if (it != tindex.end()) reg.nbm[p * n + v] = it->second;
        }
    if (cvec) {
        reg.conj_point.assign(np, -1);
        for (std::size_t p = 0; p < np; ++p) {
            std::vector<BigInt> jt(n);
            for (int i = 0; i < n; ++i) jt[i] = -(*cvec)[i] - reg.ts[p][i];
            auto it = tindex.find(jt);
            if (it == tindex.end()) fail(errc::Internal, "conjugation does not preserve the region");
            reg.conj_point[p] = it->second;
        }
    }
    return reg;
}

std::vector<std::pair<int, int>> region_edges(const Region& reg) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t p = 0; p < reg.ts.size(); ++p)
        for (int v = 0; v < reg.n; ++v) {
            int q = reg.nbp[p * reg.n + v];
            if (q >= 0) out.push_back({static_cast<int>(p), q});
        }
    return out;
}

// ---------- merge forest (H_0 by union-find over decreasing weight) ----------

struct BuiltForest {
    GradedRoot root;             // planar, non-degenerate by construction
    std::vector<int> leaf_rep;   // planar leaf -> caller point index
    std::vector<int> point_leaf; // caller point -> planar leaf (-1 if absorbed)
    bool connected = false;
};

// Core of the merge: all point/value comparisons arrive pre-ranked as ints
// (wlevel[p] = index of w(p) in the descending list of distinct weights,
// vrank[p] = rank of val(p) in lexicographic order; both total and strict).
BuiltForest merge_forest_ranked(const std::vector<int>& wlevel, const std::vector<Rat>& levels,
                                const std::vector<int>& vrank,
                                const std::vector<std::pair<int, int>>& edges, const Rat& h) {
    const int np = static_cast<int>(wlevel.size());
    if (np == 0) fail(errc::CutTooHigh, "no lattice points above the truncation grading");

    struct Cluster {
        bool fresh = true;
        std::vector<int> members; // only tracked while fresh
        int minval = -1;
        std::vector<int> leaves;  // leaf ids, planar order
        std::vector<Rat> angles;
    };
    std::vector<int> parent(np);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<Cluster> cl(np);

    std::vector<int> porder(np);
    std::iota(porder.begin(), porder.end(), 0);
    std::sort(porder.begin(), porder.end(), [&](int a, int b) {
        if (wlevel[a] != wlevel[b]) return wlevel[a] < wlevel[b];
        return vrank[a] < vrank[b];
    });
    struct E {
        int lvl; // level index of the lower endpoint
        int a, b; // a = lex-smaller endpoint
    };
    std::vector<E> es;
    es.reserve(edges.size());
    for (auto [x, y] : edges) {
        E e;
        e.lvl = std::max(wlevel[x], wlevel[y]);
        if (vrank[x] < vrank[y]) {
            e.a = x;
            e.b = y;
        } else {
            e.a = y;
            e.b = x;
        }
        es.push_back(e);
    }
    std::sort(es.begin(), es.end(), [&](const E& x, const E& y) {
        if (x.lvl != y.lvl) return x.lvl < y.lvl;
        if (vrank[x.a] != vrank[y.a]) return vrank[x.a] < vrank[y.a];
        return vrank[x.b] < vrank[y.b];
    });

    std::vector<Rat> leaf_grade;
    std::vector<int> leaf_reppt;
    std::vector<int> point_leaf(np, -1);

    std::size_t pi = 0, ei = 0;
    std::vector<int> born_this_level;
    while (pi < static_cast<std::size_t>(np)) {
        const int li = wlevel[porder[pi]];
        const Rat& lvl = levels[li];
        born_this_level.clear();
        while (pi < static_cast<std::size_t>(np) && wlevel[porder[pi]] == li) {
            int p = porder[pi++];
            cl[p] = Cluster{};
            cl[p].members = {p};
            cl[p].minval = p;
            born_this_level.push_back(p);
        }
        while (ei < es.size() && es[ei].lvl == li) {
            const E& e = es[ei++];
            int ra = find(e.a), rb = find(e.b);
            if (ra == rb) continue;
            const bool fa = cl[ra].fresh, fb = cl[rb].fresh;
            if (fa && fb) {
                // still a single birth cluster; keep the bigger member list
                if (cl[ra].members.size() < cl[rb].members.size()) std::swap(ra, rb);
                for (int m : cl[rb].members) cl[ra].members.push_back(m);
                if (vrank[cl[rb].minval] < vrank[cl[ra].minval]) cl[ra].minval = cl[rb].minval;
                cl[rb] = Cluster{};
                parent[rb] = ra;
            } else if (fa != fb) {
                int rs = fa ? rb : ra; // structured survives, fresh points absorb silently
                int rf = fa ? ra : rb;
                cl[rf] = Cluster{};
                parent[rf] = rs;
            } else {
                // structured + structured: planar concatenation, lex-smaller endpoint on the left
                Cluster merged;
                merged.fresh = false;
                merged.leaves = std::move(cl[ra].leaves);
                merged.angles = std::move(cl[ra].angles);
                merged.angles.push_back(lvl);
                for (int L : cl[rb].leaves) merged.leaves.push_back(L);
                for (const Rat& a : cl[rb].angles) merged.angles.push_back(a);
                cl[rb] = Cluster{};
                parent[rb] = ra;
                cl[ra] = std::move(merged);
            }
        }
        // births that survived the level become leaves
        for (int p : born_this_level) {
            int r = find(p);
            if (!cl[r].fresh) continue;
            int id = static_cast<int>(leaf_grade.size());
            leaf_grade.push_back(lvl);
            leaf_reppt.push_back(cl[r].minval);
            for (int m : cl[r].members) point_leaf[m] = id;
            cl[r].fresh = false;
            cl[r].members.clear();
            cl[r].leaves = {id};
        }
    }

    std::vector<int> roots;
    for (int p = 0; p < np; ++p)
        if (find(p) == p) roots.push_back(p);
    std::sort(roots.begin(), roots.end(), [&](int a, int b) {
        return vrank[leaf_reppt[cl[a].leaves[0]]] < vrank[leaf_reppt[cl[b].leaves[0]]];
    });

    BuiltForest out;
    out.root.h = h;
    out.connected = roots.size() == 1;
    std::vector<int> leaf_pos(leaf_grade.size(), -1);
    for (std::size_t c = 0; c < roots.size(); ++c) {
        const Cluster& C = cl[roots[c]];
        if (c) out.root.angles.push_back(std::nullopt);
        for (std::size_t i = 0; i < C.leaves.size(); ++i) {
            leaf_pos[C.leaves[i]] = static_cast<int>(out.root.leaves.size());
            out.root.leaves.push_back(leaf_grade[C.leaves[i]]);
            out.leaf_rep.push_back(leaf_reppt[C.leaves[i]]);
            if (i + 1 < C.leaves.size()) out.root.angles.push_back(C.angles[i]);
        }
    }
    out.point_leaf.assign(np, -1);
    for (int p = 0; p < np; ++p)
        if (point_leaf[p] >= 0) out.point_leaf[p] = leaf_pos[point_leaf[p]];
    validate_root(out.root);
    return out;
}

BuiltForest merge_forest(const std::vector<Rat>& w, const std::vector<std::vector<BigInt>>& val,
                         const std::vector<std::pair<int, int>>& edges, const Rat& h) {
    const int np = static_cast<int>(w.size());
    std::vector<int> idx(np);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (w[a] != w[b]) return w[a] > w[b];
        return val[a] < val[b];
    });
    std::vector<int> wlevel(np), vrank(np);
    std::vector<Rat> levels;
    for (int i = 0; i < np; ++i) {
        if (i == 0 || w[idx[i]] != w[idx[i - 1]]) levels.push_back(w[idx[i]]);
        wlevel[idx[i]] = static_cast<int>(levels.size()) - 1;
    }
    std::vector<int> vidx(np);
    std::iota(vidx.begin(), vidx.end(), 0);
    std::sort(vidx.begin(), vidx.end(), [&](int a, int b) { return val[a] < val[b]; });
    for (int i = 0; i < np; ++i) vrank[vidx[i]] = i;
    return merge_forest_ranked(wlevel, levels, vrank, edges, h);
}

// Region points are already sorted (w desc, val lex), so the ranks come from a
// linear scan plus one integer-keyed sort.
BuiltForest merge_forest_region(const Region& reg) {
    const int np = static_cast<int>(reg.ws.size());
    std::vector<int> wlevel(np), vrank(np);
    std::vector<Rat> levels;
    for (int p = 0; p < np; ++p) {
        if (p == 0 || reg.ws[p] != reg.ws[p - 1]) levels.push_back(reg.ws[p]);
        wlevel[p] = static_cast<int>(levels.size()) - 1;
    }
    std::vector<int> vidx(np);
    std::iota(vidx.begin(), vidx.end(), 0);
    if (!reg.vll.empty())
        std::sort(vidx.begin(), vidx.end(), [&](int a, int b) { return reg.vll[a] < reg.vll[b]; });
    else
        std::sort(vidx.begin(), vidx.end(), [&](int a, int b) { return reg.vals[a] < reg.vals[b]; });
    for (int p = 0; p < np; ++p) vrank[vidx[p]] = p;
    return merge_forest_ranked(wlevel, levels, vrank, region_edges(reg), reg.h);
}

RootComputation root_from_region(const Region& reg) {
    BuiltForest f = merge_forest_region(reg);
    RootComputation rc;
    rc.sym.root = f.root;
    rc.has_involution = !reg.conj_point.empty();
    rc.max_weight = reg.maxw;
    rc.connected_at_h = f.connected;
    const int nl = static_cast<int>(f.root.leaves.size());
    rc.sym.J.resize(nl);
    if (rc.has_involution) {
        for (int i = 0; i < nl; ++i) {
            int jp = reg.conj_point[f.leaf_rep[i]];
            int jl = f.point_leaf[jp];
            if (jl < 0) fail(errc::Internal, "conjugate of a birth representative lost its leaf");
            rc.sym.J[i] = jl;
        }
    } else {
        std::iota(rc.sym.J.begin(), rc.sym.J.end(), 0);
    }
    try {
        validate_symmetric(rc.sym);
    } catch (const Error&) {
        fail(errc::Internal, "conjugation failed to act on the computed root");
    }
    for (int i = 0; i < nl; ++i) rc.leaf_reps.push_back(CharVector{reg.vals[f.leaf_rep[i]]});
    return rc;
}

} // namespace

// Nearest-first branch-and-bound for the minimum of the completed quadratic (a
// closest-vector descent); the explored tree is tiny because every partial sum
// is pruned against the best leaf.
Rat max_class_weight(const PlumbingGraph& g, const SpinCClass& cls) {
    if (!g.negative_definite) fail(errc::NotNegativeDefinite, "superlevel regions need a negative-definite form");
    const int n = g.size();
    if (static_cast<int>(cls.rep.values.size()) != n) fail(errc::ValidationError, "class/graph size mismatch");
    if (!is_characteristic(g, cls.rep)) fail(errc::ValidationError, "class representative is not characteristic");
    Completion C = complete_squares(g, cls.rep.values);
    std::vector<BigInt> t(n, 0);
    std::optional<Rat> best;
    std::function<void(int, const Rat&)> rec = [&](int i, const Rat& partial) {
        if (best && partial >= *best) return;
        if (i < 0) {
            best = partial;
            return;
        }
        Rat e = C.s[i];
        for (int j = i + 1; j < n; ++j) e += C.u[i][j] * Rat(t[j]);
        auto quad = [&](const BigInt& ti) { return C.d[i] * (Rat(ti) + e) * (Rat(ti) + e); };
        BigInt t0 = rat_floor(Rat(1, 2) - e); // nearest integer to the vertex -e
        for (BigInt ti = t0;; --ti) {
            Rat q = quad(ti);
            if (best && partial + q >= *best) break;
            t[i] = ti;
            rec(i - 1, partial + q);
        }
        for (BigInt ti = t0 + 1;; ++ti) {
            Rat q = quad(ti);
            if (best && partial + q >= *best) break;
            t[i] = ti;
            rec(i - 1, partial + q);
        }
    };
    rec(n - 1, Rat(0));
    return (Rat(n) - (C.K + *best)) / 4;
}

Rat cube_weight(const PlumbingGraph& g, const LatticeCube& cube) {
    if (!is_characteristic(g, cube.base)) fail(errc::ValidationError, "cube base is not characteristic");
    for (std::size_t i = 0; i < cube.directions.size(); ++i) {
        int v = cube.directions[i];
        if (v < 0 || v >= g.size()) fail(errc::ValidationError, "cube direction out of range");
        if (i && cube.directions[i - 1] >= v) fail(errc::ValidationError, "cube directions must be sorted distinct");
    }
    const int d = static_cast<int>(cube.directions.size());
    std::optional<Rat> m;
    for (unsigned sub = 0; sub < (1u << d); ++sub) {
        CharVector corner = cube.base;
        for (int i = 0; i < d; ++i)
            if (sub & (1u << i)) {
                int v = cube.directions[i];
                for (int row = 0; row < g.size(); ++row) corner.values[row] += 2 * g.M.at(row, v);
            }
        Rat w = weight(g, corner);
        if (!m || w < *m) m = w;
    }
    return *m;
}

std::vector<CharVector> enumerate_superlevel_points(const PlumbingGraph& g, const SpinCClass& cls,
                                                    const Rat& h, std::size_t cap) {
    Region reg = build_region(g, cls, h, cap);
    std::vector<CharVector> out;
    out.reserve(reg.vals.size());
    for (auto& v : reg.vals) out.push_back(CharVector{v});
    std::sort(out.begin(), out.end());
    return out;
}

RootComputation superlevel_root(const PlumbingGraph& g, const SpinCClass& cls, const Rat& h,
                                std::size_t cap) {
    return root_from_region(build_region(g, cls, h, cap));
}

GradedRoot h0_graded_root(const PlumbingGraph& g, const SpinCClass& cls, const Rat& h,
                          std::size_t cap) {
    return superlevel_root(g, cls, h, cap).sym.root;
}

// ---------- chain-complex oracle ----------

namespace {

struct OCube {
    int base = 0;
    uint32_t mask = 0;
    Rat w;
};

struct OracleComplex {
    int n = 0, topdim = 0;
    std::vector<std::vector<OCube>> cubes;                  // per dim, sorted (w desc, base, mask)
    std::vector<std::vector<std::pair<int, int>>> faces;    // per dim d>=1: 2d (face id, sign) per cube
    std::vector<Rat> levels;                                // descending
};

uint64_t ckey(int base, uint32_t mask) { return (static_cast<uint64_t>(base) << 32) | mask; }

OracleComplex build_complex(const Region& reg, int max_dim, std::size_t cap) {
    OracleComplex C;
    C.n = reg.n;
    if (C.n > 24) fail(errc::RegionTooLarge, "graph too large for cube enumeration");
    C.topdim = std::min(max_dim + 1, reg.n);
    C.cubes.resize(C.topdim + 1);
    const int np = static_cast<int>(reg.ts.size());
    for (int p = 0; p < np; ++p) C.cubes[0].push_back({p, 0, reg.ws[p]});
    std::size_t total = np;
    std::vector<int> corner(std::size_t(1) << reg.n);
    for (int d = 1; d <= C.topdim; ++d) {
        std::vector<uint32_t> masks;
        for (uint32_t m = 1; m < (1u << reg.n); ++m)
            if (__builtin_popcount(m) == d) masks.push_back(m);
        for (int p = 0; p < np; ++p)
            for (uint32_t m : masks) {
                // corner ids by dynamic programming over submasks
                corner[0] = p;
                bool ok = true;
                for (uint32_t sub = 1; sub <= m; ++sub) {
                    if ((sub & m) != sub) continue;
                    uint32_t low = sub & (~sub + 1);
                    int prev = corner[sub ^ low];
                    if (prev < 0) {
                        ok = false;
                        corner[sub] = -1;
                        continue;
                    }
                    int v = __builtin_ctz(low);
                    corner[sub] = reg.nbp[static_cast<std::size_t>(prev) * reg.n + v];
                    if (corner[sub] < 0) ok = false;
                }
                if (!ok) continue;
                Rat w = reg.ws[p];
                for (uint32_t sub = m;; sub = (sub - 1) & m) {
                    if (sub) {
                        const Rat& cw = reg.ws[corner[sub]];
                        if (cw < w) w = cw;
                    }
                    if (!sub) break;
                }
                C.cubes[d].push_back({p, m, w});
                if (++total > cap) fail(errc::RegionTooLarge, "cube count exceeds the cap");
            }
        std::sort(C.cubes[d].begin(), C.cubes[d].end(), [](const OCube& a, const OCube& b) {
            if (a.w != b.w) return a.w > b.w;
            if (a.base != b.base) return a.base < b.base;
            return a.mask < b.mask;
        });
    }
    // face ids with cellular signs: for sorted directions v_1 < ... < v_d the
    // t-th direction contributes (-1)^{t-1} (front - back)
    C.faces.resize(C.topdim + 1);
    std::vector<std::unordered_map<uint64_t, int>> idx(C.topdim + 1);
    for (int d = 0; d <= C.topdim; ++d) {
        idx[d].reserve(C.cubes[d].size() * 2);
        for (int i = 0; i < static_cast<int>(C.cubes[d].size()); ++i)
            idx[d][ckey(C.cubes[d][i].base, C.cubes[d][i].mask)] = i;
    }
    for (int d = 1; d <= C.topdim; ++d) {
        C.faces[d].resize(C.cubes[d].size() * 2 * d);
        for (int i = 0; i < static_cast<int>(C.cubes[d].size()); ++i) {
            const OCube& c = C.cubes[d][i];
            int t = 0;
            for (uint32_t rest = c.mask; rest; rest &= rest - 1, ++t) {
                int v = __builtin_ctz(rest);
                uint32_t fm = c.mask ^ (1u << v);
                int sign = (t % 2 == 0) ? 1 : -1;
                int back = idx[d - 1].at(ckey(c.base, fm));
                int fp = reg.nbp[static_cast<std::size_t>(c.base) * reg.n + v];
                int front = idx[d - 1].at(ckey(fp, fm));
                C.faces[d][static_cast<std::size_t>(i) * 2 * d + 2 * t] = {front, sign};
                C.faces[d][static_cast<std::size_t>(i) * 2 * d + 2 * t + 1] = {back, -sign};
            }
        }
    }
    if (np > 0)
        for (Rat v = reg.maxw; v >= reg.h; v -= 2) C.levels.push_back(v);
    return C;
}

// Rank and torsion flag of an integer matrix given as columns of sorted
// (row, coefficient) pairs. Greedy elimination on unit pivots -- unimodular
// row/column operations preserve rank and elementary divisors -- then a dense
// Smith form of the unit-free residual. Destroys its input.
std::pair<int, bool> sparse_integral_rank(int nrows,
                                          std::vector<std::vector<std::pair<int, long long>>>& cols) {
    const int nc = static_cast<int>(cols.size());
    std::vector<std::vector<int>> rowcols(nrows); // lazy: may hold stale ids
    for (int j = 0; j < nc; ++j)
        for (auto& [r, c] : cols[j]) rowcols[r].push_back(j);
    std::vector<char> colalive(nc, 1), rowalive(nrows, 1), stashed(nc, 0);
    using QE = std::pair<std::size_t, int>; // (nnz, col)
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> heap;
    for (int j = 0; j < nc; ++j) heap.push({cols[j].size(), j});
    int rank = 0;
    auto entry_at = [&](int j, int r) -> long long {
        auto it = std::lower_bound(cols[j].begin(), cols[j].end(), std::make_pair(r, LLONG_MIN));
        return (it != cols[j].end() && it->first == r) ? it->second : 0;
    };
    while (!heap.empty()) {
        auto [sz, j] = heap.top();
        heap.pop();
        if (!colalive[j]) continue;
        if (cols[j].size() != sz) {
            heap.push({cols[j].size(), j});
            continue;
        }
        if (cols[j].empty()) {
            colalive[j] = 0; // zero column: no rank contribution
            continue;
        }
        int pr = -1;
        std::size_t best = SIZE_MAX;
        for (auto& [r, c] : cols[j])
            if ((c == 1 || c == -1) && rowcols[r].size() < best) {
                best = rowcols[r].size();
                pr = r;
            }
        if (pr < 0) {
            stashed[j] = 1; // no unit entry; revisit only if the column changes
            continue;
        }
        const long long eps = entry_at(j, pr);
        ++rank;
        colalive[j] = 0;
        rowalive[pr] = 0;
        std::vector<int> targets;
        for (int k : rowcols[pr])
            if (k != j && colalive[k] && entry_at(k, pr) != 0) targets.push_back(k);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (int k : targets) {
            const long long lam = entry_at(k, pr) / eps; // eps = +-1
            std::vector<std::pair<int, long long>> merged;
            merged.reserve(cols[k].size() + cols[j].size());
            auto a = cols[k].begin(), ae = cols[k].end();
            auto b = cols[j].begin(), be = cols[j].end();
            while (a != ae || b != be) {
                if (b == be || (a != ae && a->first < b->first)) {
                    merged.push_back(*a++);
                } else if (a == ae || b->first < a->first) {
                    __int128 v = -static_cast<__int128>(lam) * b->second;
                    if (v > INT64_MAX / 2 || v < INT64_MIN / 2)
                        fail(errc::Internal, "coefficient blowup in sparse reduction");
                    merged.push_back({b->first, static_cast<long long>(v)});
                    rowcols[b->first].push_back(k);
                    ++b;
                } else {
                    __int128 v = static_cast<__int128>(a->second) -
                                 static_cast<__int128>(lam) * b->second;
                    if (v > INT64_MAX / 2 || v < INT64_MIN / 2)
                        fail(errc::Internal, "coefficient blowup in sparse reduction");
                    if (v != 0) merged.push_back({a->first, static_cast<long long>(v)});
                    ++a;
                    ++b;
                }
            }
            cols[k] = std::move(merged);
            if (stashed[k]) stashed[k] = 0;
            heap.push({cols[k].size(), k});
        }
        cols[j].clear();
    }
    // residual: no unit entries anywhere
    std::vector<int> rescols;
    for (int j = 0; j < nc; ++j)
        if (colalive[j] && !cols[j].empty()) rescols.push_back(j);
    bool torsion = false;
    if (!rescols.empty()) {
        std::vector<int> resrows;
        {
            std::vector<char> seen(nrows, 0);
            for (int j : rescols)
                for (auto& [r, c] : cols[j])
                    if (!seen[r]) {
                        seen[r] = 1;
                        resrows.push_back(r);
                    }
        }
        std::sort(resrows.begin(), resrows.end());
        if (rescols.size() > 400 || resrows.size() > 400)
            fail(errc::Internal, "unit-free residual too large for dense reduction");
        std::vector<int> rloc(nrows, -1);
        for (std::size_t i = 0; i < resrows.size(); ++i) rloc[resrows[i]] = static_cast<int>(i);
        IntMatrix B(static_cast<int>(resrows.size()), static_cast<int>(rescols.size()));
        for (std::size_t jj = 0; jj < rescols.size(); ++jj)
            for (auto& [r, c] : cols[rescols[jj]]) B.at(rloc[r], static_cast<int>(jj)) = c;
        auto snf = smith_normal_form(B);
        rank += snf.rank;
        for (const BigInt& x : snf.diag)
            if (x > 1 || x < -1) torsion = true;
    }
    return {rank, torsion};
}

// Integral homology of the subcomplex {w >= lvl}. beta_0 is the component
// count of the 1-skeleton. Higher betti numbers come from coreduction --
// remove one vertex per component (reduced-homology ignition), then cascade
// eliminations of cells whose current boundary is a single unit entry; each
// such pair removal is an exact Gaussian elimination, so integral homology is
// preserved and torsion stays visible -- followed by Smith forms on the core.
// Returns betti per dim 0..topdim-1; throws Internal on torsion.
std::vector<long long> level_betti(const OracleComplex& C, const std::vector<std::size_t>& present) {
    const int D = C.topdim;

    // coface lists over the present cells
    std::vector<std::vector<int>> coflist(D), cofstart(D);
    for (int d = 1; d <= D; ++d) {
        std::vector<int> deg(present[d - 1], 0);
        for (std::size_t i = 0; i < present[d]; ++i)
            for (int t = 0; t < 2 * d; ++t) {
                int f = C.faces[d][i * 2 * d + t].first;
                if (f >= static_cast<int>(present[d - 1]))
                    fail(errc::Internal, "face above its cube in the filtration");
                ++deg[f];
            }
        cofstart[d - 1].assign(present[d - 1] + 1, 0);
        for (std::size_t f = 0; f < present[d - 1]; ++f)
            cofstart[d - 1][f + 1] = cofstart[d - 1][f] + deg[f];
        coflist[d - 1].assign(cofstart[d - 1][present[d - 1]], -1);
        std::vector<int> fill(present[d - 1], 0);
        for (std::size_t i = 0; i < present[d]; ++i)
            for (int t = 0; t < 2 * d; ++t) {
                int f = C.faces[d][i * 2 * d + t].first;
                coflist[d - 1][cofstart[d - 1][f] + fill[f]++] = static_cast<int>(i);
            }
    }

    // components of the 1-skeleton
    std::vector<int> comp(present[0], -1);
    long long ncomp = 0;
    std::vector<int> bfs;
    std::vector<int> igniters;
    for (std::size_t seed = 0; seed < present[0]; ++seed) {
        if (comp[seed] >= 0) continue;
        igniters.push_back(static_cast<int>(seed));
        comp[seed] = static_cast<int>(ncomp);
        bfs.assign(1, static_cast<int>(seed));
        while (!bfs.empty()) {
            int v = bfs.back();
            bfs.pop_back();
            if (D >= 1)
                for (int x = cofstart[0][v]; x < cofstart[0][v + 1]; ++x) {
                    int e = coflist[0][x];
                    int u = C.faces[1][static_cast<std::size_t>(e) * 2].first;
                    if (u == v) u = C.faces[1][static_cast<std::size_t>(e) * 2 + 1].first;
                    if (comp[u] < 0) {
                        comp[u] = static_cast<int>(ncomp);
                        bfs.push_back(u);
                    }
                }
        }
        ++ncomp;
    }

    // interleaved eliminations: a cell with a single alive face pairs with it
    // (coreduction), a cell with a single alive coface pairs with it
    // (reduction); both are exact unit Gaussian eliminations with no fill-in
    std::vector<std::vector<char>> alive(D + 1);
    std::vector<std::vector<int>> bnd(D + 1), cof(D + 1);
    for (int d = 0; d <= D; ++d) {
        alive[d].assign(present[d], 1);
        bnd[d].assign(present[d], 2 * d);
        if (d < D) {
            cof[d].resize(present[d]);
            for (std::size_t i = 0; i < present[d]; ++i)
                cof[d][i] = cofstart[d][i + 1] - cofstart[d][i];
        }
    }
    std::vector<std::pair<int, int>> qb, qc; // bnd==1 candidates, cof==1 candidates
    auto drop = [&](int d, int i) {
        alive[d][i] = 0;
        if (d < D)
            for (int x = cofstart[d][i]; x < cofstart[d][i + 1]; ++x) {
                int c = coflist[d][x];
                if (alive[d + 1][c] && --bnd[d + 1][c] == 1) qb.push_back({d + 1, c});
            }
        for (int t = 0; t < 2 * d; ++t) {
            int f = C.faces[d][static_cast<std::size_t>(i) * 2 * d + t].first;
            if (alive[d - 1][f] && --cof[d - 1][f] == 1) qc.push_back({d - 1, f});
        }
    };
    for (int d = 0; d < D; ++d)
        for (std::size_t i = 0; i < present[d]; ++i)
            if (cof[d][i] == 1) qc.push_back({d, static_cast<int>(i)});
    for (int v : igniters) drop(0, v);
    while (!qb.empty() || !qc.empty()) {
        if (!qb.empty()) {
            auto [d, a] = qb.back();
            qb.pop_back();
            if (!alive[d][a] || bnd[d][a] != 1) continue;
            int b = -1;
            for (int t = 0; t < 2 * d; ++t) {
                int f = C.faces[d][static_cast<std::size_t>(a) * 2 * d + t].first;
                if (alive[d - 1][f]) {
                    b = f;
                    break;
                }
            }
            if (b < 0) fail(errc::Internal, "boundary count out of sync");
            drop(d, a);
            drop(d - 1, b);
            continue;
        }
        auto [d, f] = qc.back();
        qc.pop_back();
        if (!alive[d][f] || cof[d][f] != 1) continue;
        int c = -1;
        for (int x = cofstart[d][f]; x < cofstart[d][f + 1]; ++x)
            if (alive[d + 1][coflist[d][x]]) {
                c = coflist[d][x];
                break;
            }
        if (c < 0) fail(errc::Internal, "coface count out of sync");
        drop(d + 1, c);
        drop(d, f);
    }
    for (std::size_t v = 0; v < present[0]; ++v)
        if (alive[0][v]) fail(errc::Internal, "coreduction stalled on a vertex");

    // integral ranks and divisors of the core boundaries: sparse elimination on
    // unit pivots (unimodular row/column operations), dense Smith form on the
    // small residual without unit entries
    std::vector<std::vector<int>> still(D + 1), local(D + 1);
    for (int d = 0; d <= D; ++d) {
        local[d].assign(present[d], -1);
        for (std::size_t i = 0; i < present[d]; ++i)
            if (alive[d][i]) {
                local[d][i] = static_cast<int>(still[d].size());
                still[d].push_back(static_cast<int>(i));
            }
    }
    std::vector<int> rank(D + 2, 0);
    for (int d = 2; d <= D; ++d) {
        if (still[d].empty() || still[d - 1].empty()) continue;
        std::vector<std::vector<std::pair<int, long long>>> colsm(still[d].size());
        for (std::size_t j = 0; j < still[d].size(); ++j) {
            int i = still[d][j];
            std::vector<std::pair<int, long long>>& cc = colsm[j];
            for (int t = 0; t < 2 * d; ++t) {
                auto [f, sgn] = C.faces[d][static_cast<std::size_t>(i) * 2 * d + t];
                if (local[d - 1][f] >= 0) cc.push_back({local[d - 1][f], sgn});
            }
            std::sort(cc.begin(), cc.end());
        }
        auto res = sparse_integral_rank(static_cast<int>(still[d - 1].size()), colsm);
        rank[d] = res.first;
        if (res.second) fail(errc::Internal, "integral torsion in the oracle window");
    }
    // the core has no vertices, so surviving 1-cells have empty boundary and
    // rank(d1) = 0 on it
    std::vector<long long> betti(D, 0);
    betti[0] = ncomp;
    for (int d = 1; d < D; ++d)
        betti[d] = static_cast<long long>(still[d].size()) - rank[d] - rank[d + 1];
    return betti;
}

// Z/2 persistence bars of dimension d for the global filtration.
struct Bar {
    Rat birth;
    std::optional<Rat> death; // absent = reaches the truncation
};

std::vector<Bar> persistence_bars(const OracleComplex& C, int d) {
    const auto& cells = C.cubes[d];
    const std::size_t nd = cells.size();
    // positivity of d-cells: column reduction of boundary into (d-1)-cells
    std::vector<char> positive(nd, 1);
    if (d >= 1) {
        std::vector<std::vector<int>> R(nd);
        std::vector<int> low_owner(C.cubes[d - 1].size(), -1);
        for (std::size_t j = 0; j < nd; ++j) {
            std::vector<int> colv;
            for (int t = 0; t < 2 * d; ++t) colv.push_back(C.faces[d][j * 2 * d + t].first);
            std::sort(colv.begin(), colv.end());
            // mod 2: drop duplicate rows
            std::vector<int> cc;
            for (std::size_t x = 0; x < colv.size(); ++x) {
                if (x + 1 < colv.size() && colv[x + 1] == colv[x]) {
                    ++x;
                    continue;
                }
                cc.push_back(colv[x]);
            }
            while (!cc.empty()) {
                int low = cc.back();
                int o = low_owner[low];
                if (o < 0) {
                    low_owner[low] = static_cast<int>(j);
                    positive[j] = 0;
                    break;
                }
                std::vector<int> merged;
                std::set_symmetric_difference(cc.begin(), cc.end(), R[o].begin(), R[o].end(),
                                              std::back_inserter(merged));
                cc = std::move(merged);
            }
            R[j] = std::move(cc);
        }
    }
    // deaths: column reduction of (d+1)-boundaries into d-cells
    std::vector<Bar> bars;
    std::vector<char> killed(nd, 0);
    if (d + 1 <= C.topdim) {
        const auto& up = C.cubes[d + 1];
        std::vector<std::vector<int>> R(up.size());
        std::vector<int> low_owner(nd, -1);
        for (std::size_t j = 0; j < up.size(); ++j) {
            std::vector<int> colv;
            for (int t = 0; t < 2 * (d + 1); ++t)
                colv.push_back(C.faces[d + 1][j * 2 * (d + 1) + t].first);
            std::sort(colv.begin(), colv.end());
            std::vector<int> cc;
            for (std::size_t x = 0; x < colv.size(); ++x) {
                if (x + 1 < colv.size() && colv[x + 1] == colv[x]) {
                    ++x;
                    continue;
                }
                cc.push_back(colv[x]);
            }
            while (!cc.empty()) {
                int low = cc.back();
                int o = low_owner[low];
                if (o < 0) {
                    low_owner[low] = static_cast<int>(j);
                    if (!positive[low]) fail(errc::Internal, "persistence paired a negative cell");
                    killed[low] = 1;
                    Bar b;
                    b.birth = cells[low].w;
                    b.death = up[j].w;
                    bars.push_back(std::move(b));
                    break;
                }
                std::vector<int> merged;
                std::set_symmetric_difference(cc.begin(), cc.end(), R[o].begin(), R[o].end(),
                                              std::back_inserter(merged));
                cc = std::move(merged);
            }
            R[j] = std::move(cc);
        }
    }
    for (std::size_t i = 0; i < nd; ++i)
        if (positive[i] && !killed[i]) bars.push_back({cells[i].w, std::nullopt});
    return bars;
}

OracleDetail oracle_impl(const PlumbingGraph& g, const SpinCClass& cls, const Rat& h, int max_dim,
                         long long u_trunc, std::size_t cap) {
    if (max_dim < 0) fail(errc::ValidationError, "max_dim must be >= 0");
    Region reg = build_region(g, cls, h, cap);
    if (reg.ts.empty()) fail(errc::CutTooHigh, "no lattice points above the truncation grading");
    BigInt span_steps = rat_floor((reg.maxw - h) / 2);
    if (u_trunc == 0) u_trunc = to_ll(span_steps) + 2;
    if (u_trunc < 1) fail(errc::ValidationError, "U-truncation must be >= 1");
    if (span_steps >= u_trunc)
        fail(errc::TruncationTooSmall, "U-power ambiguity inside the requested grading window");

    OracleComplex C = build_complex(reg, max_dim, cap);
    const int D = C.topdim;

    OracleDetail out;
    out.levels = C.levels;
    for (int d = 0; d <= D; ++d) out.cube_count += C.cubes[d].size();

    // per-level integral homology via collapse + Smith forms
    std::vector<std::size_t> ptr(D + 1, 0);
    for (const Rat& lvl : C.levels) {
        std::vector<std::size_t> present(D + 1, 0);
        for (int d = 0; d <= D; ++d) {
            while (ptr[d] < C.cubes[d].size() && C.cubes[d][ptr[d]].w >= lvl) ++ptr[d];
            present[d] = ptr[d];
        }
        out.betti.push_back(level_betti(C, present));
    }

    // towers from Z/2 persistence, cross-checked against the betti table
    out.modules.resize(max_dim + 1);
    for (int d = 0; d <= max_dim; ++d) {
        out.modules[d].d = d;
        bool any = false;
        if (d < D)
            for (auto& row : out.betti)
                if (row[d] != 0) any = true;
        if (d >= D || (d >= 1 && !any)) continue;
        auto bars = persistence_bars(C, d);
        for (const Bar& b : bars) {
            if (b.death) {
                Rat lenr = (b.birth - *b.death) / 2;
                if (!is_integer(lenr)) fail(errc::Internal, "bar length not integral");
                BigInt len = numerator(lenr);
                if (len > 0) out.modules[d].towers.push_back({b.birth, len});
            } else {
                out.modules[d].towers.push_back({b.birth, std::nullopt});
            }
        }
        std::sort(out.modules[d].towers.begin(), out.modules[d].towers.end(), tower_less);
        for (std::size_t li = 0; li < C.levels.size(); ++li) {
            const Rat& lvl = C.levels[li];
            long long alive = 0;
            for (const Bar& b : bars)
                if (b.birth >= lvl && (!b.death || *b.death < lvl)) ++alive;
            if (alive != out.betti[li][d])
                fail(errc::Internal, "persistence disagrees with the per-level Smith forms");
        }
    }
    return out;
}

} // namespace

OracleDetail full_homology_oracle_detailed(const PlumbingGraph& g, const SpinCClass& cls,
                                           const Rat& h, int max_dim, long long u_trunc,
                                           std::size_t cap) {
    return oracle_impl(g, cls, h, max_dim, u_trunc, cap);
}

std::vector<GradedModule> full_homology_oracle(const PlumbingGraph& g, const SpinCClass& cls,
                                               const Rat& h, int max_dim, long long u_trunc,
                                               std::size_t cap) {
    return oracle_impl(g, cls, h, max_dim, u_trunc, cap).modules;
}

// ---------- paths ----------

GradedRoot path_root(const PlumbingGraph& g, const std::vector<CharVector>& path) {
    if (path.empty()) fail(errc::NotAPath, "empty path");
    const int n = g.size();
    for (const CharVector& k : path) {
        if (static_cast<int>(k.values.size()) != n) fail(errc::NotAPath, "path entry of wrong size");
        if (!is_characteristic(g, k)) fail(errc::NotAPath, "path entry is not characteristic");
    }
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 1; j < path.size(); ++j)
            if (path[i] == path[j]) fail(errc::NotAPath, "path entries must be distinct");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        bool found = false;
        for (int v = 0; v < n && !found; ++v)
            for (int sgn : {1, -1}) {
                bool match = true;
                for (int row = 0; row < n; ++row)
                    if (path[i + 1].values[row] - path[i].values[row] != sgn * 2 * g.M.at(row, v)) {
                        match = false;
                        break;
                    }
                if (match) {
                    found = true;
                    break;
                }
            }
        if (!found) fail(errc::NotAPath, "consecutive path entries do not differ by 2v*");
        edges.push_back({static_cast<int>(i), static_cast<int>(i + 1)});
    }
    std::vector<Rat> w;
    std::vector<std::vector<BigInt>> vals;
    for (const CharVector& k : path) {
        w.push_back(weight(g, k));
        vals.push_back(k.values);
    }
    Rat h = w[0];
    for (const Rat& x : w) h = std::min(h, x);
    BuiltForest f = merge_forest(w, vals, edges, h);
    return normalize(f.root);
}

std::vector<CharVector> find_representative_path(const PlumbingGraph& g, const SpinCClass& cls,
                                                 std::size_t cap) {
    Rat h = auto_cut_height(g, cls, cap);
    Region reg = build_region(g, cls, h, cap);
    BuiltForest f = merge_forest_region(reg);
    if (!f.connected) fail(errc::Internal, "stabilized region is disconnected");
    const int nl = static_cast<int>(f.root.leaves.size());
    std::vector<int> path = {f.leaf_rep[0]};
    std::vector<char> used(reg.ts.size(), 0);
    used[f.leaf_rep[0]] = 1;
    // Corridor between adjacent towers: weakly-descending reach from both leaf
    // representatives inside {w >= angle}; any common point then sits exactly at
    // the angle weight (a higher meeting point would contradict the merge level),
    // and the glued profile is bitonic, so the path reproduces the angle and
    // introduces no extra local maxima.
    auto descent = [&](int start, const Rat& lvl, int other) {
        std::vector<int> par(reg.ts.size(), -2);
        std::vector<int> q = {start};
        par[start] = -1;
        for (std::size_t qi = 0; qi < q.size(); ++qi) {
            int p = q[qi];
            for (int v = 0; v < reg.n; ++v)
                for (int nb : {reg.nbp[static_cast<std::size_t>(p) * reg.n + v],
                               reg.nbm[static_cast<std::size_t>(p) * reg.n + v]}) {
                    if (nb < 0 || par[nb] != -2 || reg.ws[nb] < lvl) continue;
                    if (reg.ws[nb] > reg.ws[p]) continue;
                    if (used[nb] && nb != other) continue;
                    par[nb] = p;
                    q.push_back(nb);
                }
        }
        return par;
    };
    for (int i = 0; i + 1 < nl; ++i) {
        const Rat lvl = *f.root.angles[i]; // connected: no null angles
        int src = path.back(), dst = f.leaf_rep[i + 1];
        std::vector<int> pa = descent(src, lvl, dst), pb = descent(dst, lvl, src);
        int meet = -1; // points sorted by weight desc, value lex: first hit is canonical
        for (std::size_t p = 0; p < reg.ts.size(); ++p)
            if (pa[p] != -2 && pb[p] != -2) {
                meet = static_cast<int>(p);
                break;
            }
        if (meet < 0) fail(errc::VerificationFailed, "no unused corridor between adjacent towers");
        std::vector<int> seg;
        for (int p = meet; p != src; p = pa[p]) seg.push_back(p);
        std::reverse(seg.begin(), seg.end()); // src-exclusive descent to meet
        for (int p = pb[meet]; p >= 0; p = pb[p]) seg.push_back(p); // ascent, dst inclusive
        for (int p : seg) {
            path.push_back(p);
            used[p] = 1;
        }
    }
    std::vector<CharVector> out;
    for (int p : path) out.push_back(CharVector{reg.vals[p]});
    GradedRoot pr = path_root(g, out);
    Rat minw = reg.ws[path[0]];
    for (int p : path) minw = std::min(minw, reg.ws[p]);
    if (!equal_above(pr, f.root, minw))
        fail(errc::VerificationFailed, "path root differs from the union-find root");
    return out;
}

Rat auto_cut_height(const PlumbingGraph& g, const SpinCClass& cls, std::size_t cap) {
    Rat h = max_class_weight(g, cls); // the top leaf; the representative may sit far below it
    std::optional<GradedRoot> prev;
    Rat prev_h = h;
    int stable = 0;
    for (int iter = 0; iter < 256; ++iter) {
        GradedRoot cur = h0_graded_root(g, cls, h, cap);
        if (prev && cur.leaves.size() == prev->leaves.size() && is_connected(cur) &&
            equal_above(cur, *prev, prev_h)) {
            if (++stable == 2) return h - 8;
        } else {
            stable = 0;
        }
        prev = std::move(cur);
        prev_h = h;
        h -= 2;
    }
    fail(errc::Internal, "cut height failed to stabilize");
}

} // namespace pswf
