#include "pswf/spectrum.hpp"

#include "pswf/errors.hpp"

#include <algorithm>

namespace pswf {

namespace {

// (x - h)/2 when that is a non-negative integer; the cell dimensions.
BigInt half_gap(const Rat& x, const Rat& h, const char* what) {
    Rat d = (x - h) / 2;
    if (!is_integer(d)) fail(errc::ValidationError, std::string(what) + " is not in the grading coset of h");
    BigInt v = numerator(d);
    if (v < 0) fail(errc::CutTooHigh, std::string("h lies above a ") + what);
    return v;
}

} // namespace

SpectrumModel build_s1_model(const GradedRoot& r, const Rat& h) {
    validate_root(r);
    if (!r.leaves.empty() && !is_integer((r.leaves[0] - h) / 2))
        fail(errc::ValidationError, "h is not in the grading coset");
    SpectrumModel out;
    for (const auto& a : r.angles) {
        if (!a) fail(errc::CutTooHigh, "a merge lies below the root's truncation grading");
        if (h > *a) fail(errc::CutTooHigh, "h lies above a merge grading");
    }
    for (const Rat& leaf : r.leaves) out.cells.push_back(half_gap(leaf, h, "leaf grading"));
    for (std::size_t i = 0; i < r.angles.size(); ++i)
        out.glue.push_back({static_cast<int>(i), static_cast<int>(i) + 1,
                            half_gap(*r.angles[i], h, "merge grading")});
    out.m = 0;
    out.n = -h / 2;
    return out;
}

GradedRoot coborel(const SpectrumModel& model) {
    GradedRoot r;
    const Rat base = -2 * model.n;
    for (const BigInt& d : model.cells) r.leaves.push_back(Rat(2 * d) + base);
    r.angles.assign(model.cells.empty() ? 0 : model.cells.size() - 1, std::nullopt);
    for (const auto& g : model.glue) {
        if (g.b != g.a + 1 || g.a < 0 || static_cast<std::size_t>(g.b) >= model.cells.size())
            fail(errc::ValidationError, "model is not a chain of cells");
        r.angles[g.a] = Rat(2 * g.dim) + base;
    }
    for (const auto& a : r.angles)
        if (!a) fail(errc::ValidationError, "model is not a chain of cells");
    r.h = base;
    validate_root(r);
    return r;
}

SpectrumModel build_pin2_model(const SymmetricGradedRoot& r, const Rat& h0) {
    validate_symmetric(r);
    const int nl = static_cast<int>(r.root.leaves.size());
    for (int i = 0; i < nl; ++i)
        if (r.J[i] != nl - 1 - i)
            fail(errc::NotSymmetric, "involution does not mirror the planar order");
    const Rat b2 = 2 * beta(r);
    Rat h = h0;
    // lower h until the central cell is quaternionic: 4 | (2*beta - h)
    for (int guard = 0; !is_integer((b2 - h) / 4); ++guard) {
        if (guard > 4) fail(errc::ValidationError, "h is not in the grading coset");
        h -= 2;
    }
    SpectrumModel out = build_s1_model(r.root, h);
    SpectrumModel::JStructure j;
    for (int i = 0; i < nl / 2; ++i) j.pairs.push_back({i, nl - 1 - i});
    if (nl % 2 == 1) {
        const int c = nl / 2;
        if (r.root.leaves[c] != b2) fail(errc::Internal, "central fixed leaf is not at the beta level");
        j.theta.push_back(c);
    } else {
        const int ca = nl / 2 - 1; // central merge: the maximal j-fixed vertex
        if (*r.root.angles[ca] != b2) fail(errc::Internal, "central merge is not at the beta level");
        const BigInt dim = out.glue[ca].dim;
        const int tc = static_cast<int>(out.cells.size());
        out.cells.push_back(dim);
        out.glue.push_back({ca, tc, dim});
        out.glue.push_back({ca + 1, tc, dim});
        j.theta.push_back(tc);
    }
    for (int t : j.theta)
        if (out.cells[t] % 2 != 0) fail(errc::Internal, "theta cell is not quaternionic");
    out.j = j;
    return out;
}

ProductCellModel smash(const std::vector<long long>& n_list) {
    if (n_list.size() > 20) fail(errc::ValidationError, "too many smash factors");
    for (long long n : n_list)
        if (n < 0) fail(errc::ValidationError, "negative interval model dimension");
    ProductCellModel out;
    out.factor_dims = n_list;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n_list.size(); ++i) total *= 3;
    out.weights.assign(total, Rat(0));
    for (std::size_t c = 0; c < total; ++c) {
        std::size_t rem = c;
        Rat w = 0;
        for (long long n : n_list) {
            if (rem % 3 != 1) w += 2 * n; // endpoint of that axis
            rem /= 3;
        }
        out.weights[c] = w;
    }
    return out;
}

SpectrumModel suspend(const SpectrumModel& model, const Rat& r) {
    SpectrumModel out = model;
    out.n -= r;
    return out;
}

SpectrumModel contracted_mapping_cone(const std::vector<FormalDifference>& diffs,
                                      const std::vector<IncDir>& dirs) {
    if (diffs.empty()) fail(errc::ValidationError, "empty difference list");
    for (const auto& d : diffs)
        if (d.plus_dim < 0 || d.minus_dim < 0)
            fail(errc::ValidationError, "negative representation dimension");
    if (dirs.size() + 1 != diffs.size())
        fail(errc::ValidationError, "need one inclusion direction per consecutive pair");
    if (diffs.size() % 2 == 0)
        fail(errc::InconsistentDirections, "zigzag must start and end on peaks");
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (dirs[i] != (i % 2 == 0 ? IncDir::Left : IncDir::Right))
            fail(errc::InconsistentDirections, "inclusions must alternate away from the valleys");
    long long total_minus = 0;
    for (const auto& d : diffs) total_minus += d.minus_dim;
    std::vector<long long> sdim; // stabilized: A_i plus every other B_j
    for (const auto& d : diffs) sdim.push_back(d.plus_dim + (total_minus - d.minus_dim));
    for (std::size_t v = 1; v + 1 < sdim.size(); v += 2)
        if (sdim[v] > sdim[v - 1] || sdim[v] > sdim[v + 1])
            fail(errc::InconsistentDirections, "a valley exceeds an adjacent peak");
    SpectrumModel out;
    for (std::size_t p = 0; p < sdim.size(); p += 2) out.cells.push_back(sdim[p]);
    for (std::size_t v = 1; v + 1 < sdim.size(); v += 2)
        out.glue.push_back({static_cast<int>(v / 2), static_cast<int>(v / 2) + 1, sdim[v]});
    out.m = 0;
    out.n = total_minus;
    return out;
}

long long swf_type_level(const SpectrumModel& model) {
    if (model.cells.empty()) fail(errc::NotTypeSWF, "empty model has no fixed sphere");
    std::vector<int> comp(model.cells.size(), -1);
    std::vector<std::vector<int>> adj(model.cells.size());
    for (const auto& g : model.glue) {
        adj[g.a].push_back(g.b);
        adj[g.b].push_back(g.a);
    }
    std::vector<int> q = {0};
    comp[0] = 0;
    for (std::size_t qi = 0; qi < q.size(); ++qi)
        for (int nb : adj[q[qi]])
            if (comp[nb] < 0) {
                comp[nb] = 0;
                q.push_back(nb);
            }
    if (q.size() != model.cells.size())
        fail(errc::NotTypeSWF, "fixed set is a disjoint union of spheres");
    return -model.m;
}

} // namespace pswf
