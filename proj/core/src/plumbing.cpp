#include "pswf/plumbing.hpp"

#include "pswf/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace pswf {

namespace {

void finalize(PlumbingGraph& g) {
    const int n = g.size();
    g.adj.assign(n, {});
    for (auto [a, b] : g.edges) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    g.M = IntMatrix(n, n);
    for (int i = 0; i < n; ++i) g.M.at(i, i) = g.framing[i];
    for (auto [a, b] : g.edges) {
        g.M.at(a, b) = 1;
        g.M.at(b, a) = 1;
    }
    g.det = det_bareiss(g.M);
    // -M positive definite iff all leading principal minors positive.
    IntMatrix negM = g.M;
    for (auto& x : negM.a) x = -x;
    g.negative_definite = n > 0;
    for (const BigInt& m : leading_principal_minors(negM))
        if (m <= 0) g.negative_definite = false;
    if (g.negative_definite) g.Minv = rat_inverse(g.M);
}

} // namespace

PlumbingGraph make_plumbing(const std::vector<std::pair<int, long long>>& vertices,
                            const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(vertices.size());
    if (n == 0) fail(errc::ValidationError, "plumbing graph needs at least one vertex");
    std::vector<long long> framing(n);
    std::vector<bool> seen(n, false);
    for (auto [id, fr] : vertices) {
        if (id < 0 || id >= n) fail(errc::ValidationError, "vertex ids must be 0..n-1");
        if (seen[id]) fail(errc::ValidationError, "duplicate vertex id");
        seen[id] = true;
        framing[id] = fr;
    }
    if (static_cast<int>(edges.size()) != n - 1)
        fail(errc::ValidationError, "a tree on n vertices has n-1 edges");
    std::set<std::pair<int, int>> eset;
    PlumbingGraph g;
    g.framing = std::move(framing);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) fail(errc::ValidationError, "edge endpoint out of range");
        if (a == b) fail(errc::ValidationError, "self-loop");
        auto e = std::minmax(a, b);
        if (!eset.insert({e.first, e.second}).second) fail(errc::ValidationError, "duplicate edge");
        g.edges.push_back({e.first, e.second});
    }
    std::sort(g.edges.begin(), g.edges.end());
    // connectivity (acyclicity then follows from the edge count)
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> vis(n, false);
    std::vector<int> stack{0};
    vis[0] = true;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!vis[w]) {
                vis[w] = true;
                ++cnt;
                stack.push_back(w);
            }
    }
    if (cnt != n) fail(errc::ValidationError, "edge set is not connected");
    finalize(g);
    return g;
}

IntMatrix intersection_matrix(const PlumbingGraph& g) { return g.M; }

bool is_negative_definite(const PlumbingGraph& g) { return g.negative_definite; }

std::vector<long long> negative_continued_fraction(long long a, long long b) {
    if (b <= 0 || a <= b) fail(errc::ValidationError, "need 0 < b < a");
    std::vector<long long> cf;
    while (b > 0) {
        long long c = (a + b - 1) / b; // ceil(a/b), a,b > 0
        cf.push_back(c);
        long long nb = c * b - a;
        a = b;
        b = nb;
    }
    return cf;
}

namespace {

PlumbingGraph star_graph(const BigInt& e0, const std::vector<std::vector<long long>>& legs) {
    std::vector<std::pair<int, long long>> verts;
    std::vector<std::pair<int, int>> edges;
    verts.push_back({0, to_ll(e0)});
    int next = 1;
    for (const auto& leg : legs) {
        int prev = 0;
        for (long long c : leg) {
            verts.push_back({next, -c});
            edges.push_back({prev, next});
            prev = next++;
        }
    }
    return make_plumbing(verts, edges);
}

} // namespace

PlumbingGraph from_brieskorn(const std::vector<long long>& a) {
    for (long long x : a)
        if (x < 2) fail(errc::ValidationError, "fiber multiplicities must be >= 2");
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (std::gcd(a[i], a[j]) != 1)
                fail(errc::NotCoprime, "multiplicities must be pairwise coprime");
    if (a.size() < 3) fail(errc::TooFewFibers, "need at least 3 fibers");
    BigInt A = 1;
    for (long long x : a) A *= x;
    std::vector<long long> b(a.size());
    BigInt num = 1; // 1 + sum b_i * (A / a_i)
    std::vector<std::vector<long long>> legs;
    for (size_t i = 0; i < a.size(); ++i) {
        BigInt Ai = A / a[i];
        long long r = to_ll(Ai % a[i]); // (A/a_i) mod a_i, coprime to a_i
        long long found = -1;
        for (long long t = 1; t < a[i]; ++t)
            if ((r * t) % a[i] == a[i] - 1) {
                found = t;
                break;
            }
        b[i] = found;
        num += Ai * b[i];
        legs.push_back(negative_continued_fraction(a[i], b[i]));
    }
    if (num % A != 0) fail(errc::Internal, "central framing is not an integer");
    return star_graph(-num / A, legs);
}

PlumbingGraph from_seifert(long long e0, const std::vector<std::pair<long long, long long>>& legs) {
    std::vector<std::vector<long long>> cfs;
    for (auto [alpha, beta] : legs) {
        if (alpha < 2 || beta <= 0 || beta >= alpha)
            fail(errc::InvalidSeifertPair, "need alpha >= 2 and 0 < beta < alpha");
        cfs.push_back(negative_continued_fraction(alpha, beta));
    }
    return star_graph(BigInt(e0), cfs);
}

PlumbingGraph blow_down(const PlumbingGraph& g, int v) {
    if (v < 0 || v >= g.size()) fail(errc::ValidationError, "vertex id out of range");
    if (g.framing[v] != -1) fail(errc::NotBlowdownable, "framing is not -1");
    if (g.adj[v].size() != 1) fail(errc::NotBlowdownable, "not a leaf");
    int nb = g.adj[v][0];
    std::vector<std::pair<int, long long>> verts;
    std::vector<std::pair<int, int>> edges;
    // reindex: drop v, keep relative order
    std::vector<int> newid(g.size(), -1);
    int next = 0;
    for (int i = 0; i < g.size(); ++i)
        if (i != v) newid[i] = next++;
    for (int i = 0; i < g.size(); ++i)
        if (i != v) verts.push_back({newid[i], g.framing[i] + (i == nb ? 1 : 0)});
    for (auto [x, y] : g.edges)
        if (x != v && y != v) edges.push_back({newid[x], newid[y]});
    return make_plumbing(verts, edges);
}

BigInt cycle_pair(const PlumbingGraph& g, const Cycle& x, int u) {
    BigInt s = 0;
    for (int j = 0; j < g.size(); ++j) s += g.M.at(u, j) * x.c[j];
    return s;
}

BigInt cycle_chi(const PlumbingGraph& g, const Cycle& x) {
    // chi(x) = -(x^2 + K(x))/2, K(E_v) = -framing(v) - 2
    BigInt x2 = 0, kx = 0;
    std::vector<BigInt> Mx = mat_vec(g.M, x.c);
    for (int i = 0; i < g.size(); ++i) {
        x2 += x.c[i] * Mx[i];
        kx += x.c[i] * BigInt(-g.framing[i] - 2);
    }
    BigInt s = x2 + kx;
    if (s % 2 != 0) fail(errc::Internal, "x^2 + K(x) must be even");
    return -s / 2;
}

Cycle laufer_fundamental_cycle(const PlumbingGraph& g, int start) {
    if (!g.negative_definite) fail(errc::NotNegativeDefinite, "Laufer loop needs a negative-definite graph");
    if (start < 0 || start >= g.size()) fail(errc::ValidationError, "start vertex out of range");
    const int n = g.size();
    Cycle x;
    x.c.assign(n, 0);
    x.c[start] = 1;
    std::vector<BigInt> Mx(n);
    for (int i = 0; i < n; ++i) Mx[i] = g.M.at(i, start);
    for (;;) {
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (Mx[i] > 0) {
                u = i;
                break;
            }
        if (u < 0) break;
        x.c[u] += 1;
        for (int i = 0; i < n; ++i) Mx[i] += g.M.at(i, u);
    }
    return x;
}

bool is_rational(const PlumbingGraph& g) {
    if (!g.negative_definite) fail(errc::NotNegativeDefinite, "rationality test needs a negative-definite graph");
    // Re-run the Laufer loop tracking chi; each step adds E_u with (x,E_u) >= 1,
    // so chi(x + E_u) = chi(x) + 1 - (x,E_u) never increases past chi(E_start)=1.
    const int n = g.size();
    Cycle x;
    x.c.assign(n, 0);
    x.c[0] = 1;
    std::vector<BigInt> Mx(n);
    for (int i = 0; i < n; ++i) Mx[i] = g.M.at(i, 0);
    BigInt chi = cycle_chi(g, x);
    for (;;) {
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (Mx[i] > 0) {
                u = i;
                break;
            }
        if (u < 0) break;
        BigInt next_chi = chi + 1 - Mx[u];
        x.c[u] += 1;
        for (int i = 0; i < n; ++i) Mx[i] += g.M.at(i, u);
        if (next_chi != cycle_chi(g, x)) fail(errc::Internal, "chi bookkeeping mismatch");
        if (next_chi > chi) return false; // unreachable: (x,E_u) >= 1 at every step
        chi = next_chi;
    }
    return chi == 1;
}

ARResult is_almost_rational(const PlumbingGraph& g, long long cap) {
    if (!g.negative_definite) fail(errc::NotNegativeDefinite, "AR test needs a negative-definite graph");
    ARResult res;
    if (is_rational(g)) {
        res.almost_rational = true;
        res.witness = std::nullopt; // already rational; any vertex works
        return res;
    }
    // Rationality is monotone under decreasing a framing, so scan N upward and
    // stop at the first hit.
    for (long long N = 1; N <= cap; ++N) {
        for (int v = 0; v < g.size(); ++v) {
            std::vector<std::pair<int, long long>> verts;
            for (int i = 0; i < g.size(); ++i)
                verts.push_back({i, g.framing[i] - (i == v ? N : 0)});
            PlumbingGraph h = make_plumbing(verts, g.edges);
            if (h.negative_definite && is_rational(h)) {
                res.almost_rational = true;
                res.witness = v;
                return res;
            }
        }
    }
    res.undetermined = true;
    return res;
}

namespace {

// AHU canonical form of the framed tree rooted at r with parent p.
std::string ahu(const PlumbingGraph& g, int r, int p) {
    std::vector<std::string> kids;
    for (int w : g.adj[r])
        if (w != p) kids.push_back(ahu(g, w, r));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(g.framing[r]);
    for (const auto& k : kids) s += k;
    s += ")";
    return s;
}

} // namespace

std::string tree_canonical_string(const PlumbingGraph& g) {
    // Root at a centroid (1 or 2 candidates); take the lexicographically
    // smaller encoding so isomorphic framed trees agree.
    const int n = g.size();
    std::vector<int> sz(n, 0), order, parent(n, -1);
    order.reserve(n);
    std::vector<int> stack{0};
    std::vector<bool> vis(n, false);
    vis[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : g.adj[v])
            if (!vis[w]) {
                vis[w] = true;
                parent[w] = v;
                stack.push_back(w);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        sz[*it] += 1;
        if (parent[*it] >= 0) sz[parent[*it]] += sz[*it];
    }
    std::vector<int> centroids;
    for (int v = 0; v < n; ++v) {
        int big = n - sz[v];
        for (int w : g.adj[v])
            if (parent[w] == v) big = std::max(big, sz[w]);
        if (big <= n / 2) centroids.push_back(v);
    }
    std::string best;
    for (int c : centroids) {
        std::string s = ahu(g, c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::string graph_hash(const PlumbingGraph& g) {
    std::string s = tree_canonical_string(g);
    // FNV-1a, 64-bit
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

} // namespace pswf
