#include "pswf/io.hpp"

#include "pswf/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pswf {
namespace {

using njson = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) { fail(errc::ParseError, what); }

njson json_parse(const std::string& text) {
    try {
        return njson::parse(text);
    } catch (const njson::parse_error& e) {
        parse_fail(e.what()); // nlohmann cites line and column
    }
}

const njson& field(const njson& j, const char* name, const std::string& path) {
    if (!j.is_object()) parse_fail(path + ": expected an object");
    auto it = j.find(name);
    if (it == j.end()) parse_fail(path + ": missing field '" + std::string(name) + "'");
    return *it;
}

long long as_int(const njson& j, const std::string& path) {
    if (!j.is_number_integer()) parse_fail(path + ": expected an integer");
    return j.get<long long>();
}

bool as_bool(const njson& j, const std::string& path) {
    if (!j.is_boolean()) parse_fail(path + ": expected a boolean");
    return j.get<bool>();
}

std::string as_str(const njson& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path + ": expected a string");
    return j.get<std::string>();
}

const njson& as_array(const njson& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path + ": expected an array");
    return j;
}

Rat as_rat(const njson& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (!j.is_string()) parse_fail(path + ": expected a rational \"p\" or \"p/q\"");
    try {
        return rat_parse(j.get<std::string>());
    } catch (const std::exception& e) {
        parse_fail(path + ": " + e.what());
    }
}

BigInt as_big(const njson& j, const std::string& path) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (!j.is_string()) parse_fail(path + ": expected an integer or integer string");
    try {
        return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
        parse_fail(path + ": not an integer");
    }
}

int as_index(const njson& j, const std::string& path) {
    long long v = as_int(j, path);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        parse_fail(path + ": out of range");
    return static_cast<int>(v);
}

PlumbingGraph graph_from_parsed(const njson& j) {
    const njson& vs = as_array(field(j, "vertices", "input"), "vertices");
    std::vector<std::pair<int, long long>> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string p = "vertices[" + std::to_string(i) + "]";
        vertices.emplace_back(as_index(field(vs[i], "id", p), p + ".id"),
                              as_int(field(vs[i], "framing", p), p + ".framing"));
    }
    const njson& es = as_array(field(j, "edges", "input"), "edges");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = "edges[" + std::to_string(i) + "]";
        const njson& e = as_array(es[i], p);
        if (e.size() != 2) parse_fail(p + ": expected a pair [a, b]");
        edges.emplace_back(as_index(e[0], p + "[0]"), as_index(e[1], p + "[1]"));
    }
    return make_plumbing(vertices, edges);
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_ll(const std::string& tok, const std::string& ctx) {
    std::string t = strip(tok);
    try {
        std::size_t used = 0;
        long long v = std::stoll(t, &used);
        if (t.empty() || used != t.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        parse_fail(ctx + ": not an integer: '" + t + "'");
    }
}

std::vector<long long> split_ints(const std::string& s, const std::string& ctx) {
    std::vector<long long> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = s.find(',', start);
        out.push_back(parse_ll(
            comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start), ctx));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

PlumbingGraph parse_brieskorn(const std::string& body) {
    std::vector<long long> a = split_ints(body, "brieskorn");
    try {
        return from_brieskorn(a);
    } catch (const Error& e) {
        parse_fail(std::string("brieskorn: ") + e.what());
    }
}

PlumbingGraph parse_seifert(const std::string& body) {
    std::size_t semi = body.find(';');
    if (semi == std::string::npos) parse_fail("seifert: expected ';' after the central framing");
    long long e0 = parse_ll(body.substr(0, semi), "seifert central framing");
    std::vector<std::pair<long long, long long>> legs;
    std::size_t i = semi + 1;
    while (i < body.size()) {
        char c = body[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
            ++i;
            continue;
        }
        if (c != '(') parse_fail("seifert: expected '(' before each leg");
        std::size_t close = body.find(')', i);
        if (close == std::string::npos) parse_fail("seifert: unclosed leg '('");
        std::vector<long long> ab = split_ints(body.substr(i + 1, close - i - 1), "seifert leg");
        if (ab.size() != 2) parse_fail("seifert: a leg is exactly (alpha, beta)");
        legs.emplace_back(ab[0], ab[1]);
        i = close + 1;
    }
    if (legs.empty()) parse_fail("seifert: no legs given");
    try {
        return from_seifert(e0, legs);
    } catch (const Error& e) {
        parse_fail(std::string("seifert: ") + e.what());
    }
}

std::string dump2(const ojson& j) { return j.dump(2) + "\n"; }

ojson root_obj(const GradedRoot& r) {
    ojson leaves = ojson::array();
    for (const Rat& l : r.leaves) leaves.push_back(rat_str(l));
    ojson angles = ojson::array();
    for (const auto& a : r.angles) angles.push_back(a ? ojson(rat_str(*a)) : ojson(nullptr));
    return ojson{{"leaves", std::move(leaves)}, {"angles", std::move(angles)}, {"h", rat_str(r.h)}};
}

ojson symroot_obj(const SymmetricGradedRoot& r) {
    ojson j = root_obj(r.root);
    j["j"] = r.J;
    return j;
}

GradedRoot root_from_obj(const njson& j, const std::string& path) {
    GradedRoot r;
    const njson& ls = as_array(field(j, "leaves", path), path + ".leaves");
    for (std::size_t i = 0; i < ls.size(); ++i)
        r.leaves.push_back(as_rat(ls[i], path + ".leaves[" + std::to_string(i) + "]"));
    const njson& as = as_array(field(j, "angles", path), path + ".angles");
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (as[i].is_null())
            r.angles.push_back(std::nullopt);
        else
            r.angles.push_back(as_rat(as[i], path + ".angles[" + std::to_string(i) + "]"));
    }
    r.h = as_rat(field(j, "h", path), path + ".h");
    validate_root(r);
    return r;
}

SymmetricGradedRoot symroot_from_obj(const njson& j, const std::string& path) {
    SymmetricGradedRoot r;
    r.root = root_from_obj(j, path);
    const njson& jj = as_array(field(j, "j", path), path + ".j");
    for (std::size_t i = 0; i < jj.size(); ++i)
        r.J.push_back(as_index(jj[i], path + ".j[" + std::to_string(i) + "]"));
    validate_symmetric(r);
    return r;
}

const char* status_str(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "na";
    }
}

CheckStatus status_from(const std::string& s, const std::string& path) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    if (s == "na") return CheckStatus::NotApplicable;
    parse_fail(path + ": unknown status '" + s + "'");
}

ojson opt_rat_obj(const std::optional<Rat>& v) { return v ? ojson(rat_str(*v)) : ojson(nullptr); }

} // namespace

PlumbingGraph parse_input(const std::string& text) {
    std::string t = strip(text);
    if (t.empty()) parse_fail("empty input");
    if (t[0] == '{') return graph_from_parsed(json_parse(t));
    if (t.rfind("brieskorn:", 0) == 0) return parse_brieskorn(t.substr(10));
    if (t.rfind("seifert:", 0) == 0) return parse_seifert(t.substr(8));
    parse_fail("unrecognized input: expected JSON or 'brieskorn:...' / 'seifert:...'");
}

std::string graph_to_json(const PlumbingGraph& g) {
    ojson vs = ojson::array();
    for (int v = 0; v < g.size(); ++v)
        vs.push_back(ojson{{"id", v}, {"framing", g.framing[v]}});
    ojson es = ojson::array();
    for (const auto& [a, b] : g.edges) es.push_back(ojson::array({a, b}));
    return dump2(ojson{{"vertices", std::move(vs)}, {"edges", std::move(es)}});
}

PlumbingGraph graph_from_json(const std::string& text) {
    return graph_from_parsed(json_parse(text));
}

std::string root_to_json(const SymmetricGradedRoot& r) { return dump2(symroot_obj(r)); }

SymmetricGradedRoot root_from_json(const std::string& text) {
    return symroot_from_obj(json_parse(text), "root");
}

std::string spectrum_to_json(const SpectrumModel& m) {
    ojson cells = ojson::array();
    for (std::size_t i = 0; i < m.cells.size(); ++i)
        cells.push_back(ojson{{"id", i}, {"dimC", m.cells[i].str()}});
    ojson glue = ojson::array();
    for (const auto& g : m.glue)
        glue.push_back(ojson{{"a", g.a}, {"b", g.b}, {"dimC", g.dim.str()}});
    ojson j{{"cells", std::move(cells)},
            {"glue", std::move(glue)},
            {"triple", ojson{{"m", m.m}, {"n", rat_str(m.n)}}}};
    if (m.j) {
        ojson pairs = ojson::array();
        for (const auto& [a, b] : m.j->pairs) pairs.push_back(ojson::array({a, b}));
        j["j"] = ojson{{"theta", m.j->theta}, {"pairs", std::move(pairs)}};
    } else {
        j["j"] = nullptr;
    }
    return dump2(j);
}

SpectrumModel spectrum_from_json(const std::string& text) {
    njson j = json_parse(text);
    SpectrumModel m;
    const njson& cs = as_array(field(j, "cells", "spectrum"), "cells");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string p = "cells[" + std::to_string(i) + "]";
        if (as_int(field(cs[i], "id", p), p + ".id") != static_cast<long long>(i))
            parse_fail(p + ".id: cells must be listed in id order");
        m.cells.push_back(as_big(field(cs[i], "dimC", p), p + ".dimC"));
    }
    const int nc = static_cast<int>(m.cells.size());
    const njson& gs = as_array(field(j, "glue", "spectrum"), "glue");
    for (std::size_t i = 0; i < gs.size(); ++i) {
        std::string p = "glue[" + std::to_string(i) + "]";
        SpectrumModel::Glue g;
        g.a = as_index(field(gs[i], "a", p), p + ".a");
        g.b = as_index(field(gs[i], "b", p), p + ".b");
        g.dim = as_big(field(gs[i], "dimC", p), p + ".dimC");
        if (g.a < 0 || g.a >= nc || g.b < 0 || g.b >= nc)
            parse_fail(p + ": cell id out of range");
        m.glue.push_back(std::move(g));
    }
    const njson& t = field(j, "triple", "spectrum");
    m.m = as_int(field(t, "m", "triple"), "triple.m");
    m.n = as_rat(field(t, "n", "triple"), "triple.n");
    auto it = j.find("j");
    if (it != j.end() && !it->is_null()) {
        SpectrumModel::JStructure js;
        const njson& th = as_array(field(*it, "theta", "j"), "j.theta");
        for (std::size_t i = 0; i < th.size(); ++i)
            js.theta.push_back(as_index(th[i], "j.theta[" + std::to_string(i) + "]"));
        const njson& ps = as_array(field(*it, "pairs", "j"), "j.pairs");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            std::string p = "j.pairs[" + std::to_string(i) + "]";
            const njson& pr = as_array(ps[i], p);
            if (pr.size() != 2) parse_fail(p + ": expected a pair [a, b]");
            js.pairs.emplace_back(as_index(pr[0], p + "[0]"), as_index(pr[1], p + "[1]"));
        }
        m.j = std::move(js);
    }
    return m;
}

std::string report_to_json(const InvariantReport& r) {
    ojson rep = ojson::array();
    for (const BigInt& v : r.class_rep.values) rep.push_back(v.str());
    ojson inv;
    inv["d"] = rat_str(r.d);
    inv["delta"] = rat_str(r.delta);
    inv["alpha"] = opt_rat_obj(r.alpha);
    inv["beta"] = opt_rat_obj(r.beta);
    inv["gamma"] = opt_rat_obj(r.gamma);
    inv["mu_bar"] = opt_rat_obj(r.mu_bar);
    inv["kappa"] = opt_rat_obj(r.kappa);
    inv["projective"] =
        r.projective
            ? ojson{{"n", r.projective->first.str()}, {"shift", rat_str(r.projective->second)}}
            : ojson(nullptr);
    ojson checks = ojson::array();
    for (const CheckResult& c : r.checks)
        checks.push_back(
            ojson{{"name", c.name}, {"status", status_str(c.status)}, {"detail", c.detail}});
    ojson j;
    j["schema"] = "plumb-swf/1";
    j["graph"] = ojson{{"hash", r.graph_hash}, {"size", r.graph_size}, {"det", r.graph_det.str()}};
    j["class"] =
        ojson{{"id", r.class_id}, {"rep", std::move(rep)}, {"self_conjugate", r.self_conjugate}};
    j["invariants"] = std::move(inv);
    j["root"] = symroot_obj(r.root);
    j["has_involution"] = r.has_involution;
    j["cut_height"] = rat_str(r.cut_height);
    j["checks"] = std::move(checks);
    return dump2(j);
}

InvariantReport report_from_json(const std::string& text) {
    njson j = json_parse(text);
    if (as_str(field(j, "schema", "report"), "schema") != "plumb-swf/1")
        parse_fail("schema: expected \"plumb-swf/1\"");
    InvariantReport r;
    const njson& g = field(j, "graph", "report");
    r.graph_hash = as_str(field(g, "hash", "graph"), "graph.hash");
    r.graph_size = as_index(field(g, "size", "graph"), "graph.size");
    r.graph_det = as_big(field(g, "det", "graph"), "graph.det");
    const njson& c = field(j, "class", "report");
    r.class_id = as_index(field(c, "id", "class"), "class.id");
    const njson& rep = as_array(field(c, "rep", "class"), "class.rep");
    for (std::size_t i = 0; i < rep.size(); ++i)
        r.class_rep.values.push_back(as_big(rep[i], "class.rep[" + std::to_string(i) + "]"));
    r.self_conjugate = as_bool(field(c, "self_conjugate", "class"), "class.self_conjugate");
    const njson& inv = field(j, "invariants", "report");
    r.d = as_rat(field(inv, "d", "invariants"), "invariants.d");
    r.delta = as_rat(field(inv, "delta", "invariants"), "invariants.delta");
    auto opt_rat_from = [&inv](const char* name) -> std::optional<Rat> {
        const njson& v = field(inv, name, "invariants");
        if (v.is_null()) return std::nullopt;
        return as_rat(v, std::string("invariants.") + name);
    };
    r.alpha = opt_rat_from("alpha");
    r.beta = opt_rat_from("beta");
    r.gamma = opt_rat_from("gamma");
    r.mu_bar = opt_rat_from("mu_bar");
    r.kappa = opt_rat_from("kappa");
    const njson& pj = field(inv, "projective", "invariants");
    if (!pj.is_null())
        r.projective = std::make_pair(as_big(field(pj, "n", "projective"), "projective.n"),
                                      as_rat(field(pj, "shift", "projective"), "projective.shift"));
    r.root = symroot_from_obj(field(j, "root", "report"), "root");
    r.has_involution = as_bool(field(j, "has_involution", "report"), "has_involution");
    r.cut_height = as_rat(field(j, "cut_height", "report"), "cut_height");
    const njson& cks = as_array(field(j, "checks", "report"), "checks");
    for (std::size_t i = 0; i < cks.size(); ++i) {
        std::string p = "checks[" + std::to_string(i) + "]";
        r.checks.push_back(CheckResult{
            as_str(field(cks[i], "name", p), p + ".name"),
            status_from(as_str(field(cks[i], "status", p), p + ".status"), p + ".status"),
            as_str(field(cks[i], "detail", p), p + ".detail")});
    }
    return r;
}

std::string oracle_to_json(const std::vector<GradedModule>& mods) {
    ojson out = ojson::array();
    for (const GradedModule& m : mods) {
        ojson towers = ojson::array();
        for (const Tower& t : m.towers) {
            ojson tw;
            tw["top"] = rat_str(t.top);
            tw["len"] = t.len ? ojson(to_ll(*t.len)) : ojson(nullptr);
            towers.push_back(std::move(tw));
        }
        out.push_back(ojson{{"d", m.d}, {"towers", std::move(towers)}});
    }
    return dump2(out);
}

std::string spinc_to_json(const std::vector<SpinCClass>& classes) {
    ojson out = ojson::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        ojson rep = ojson::array();
        for (const BigInt& v : classes[i].rep.values) rep.push_back(v.str());
        out.push_back(
            ojson{{"id", i}, {"rep", std::move(rep)}, {"self_conjugate", classes[i].self_conjugate}});
    }
    return dump2(out);
}

namespace {

// Dendrogram of a (possibly truncation-disconnected) root: leaves in planar
// order, each internal node at the minimum angle of its span, children split
// between the positions achieving it.
struct DNode {
    Rat g;
    int leaf = -1; // planar leaf id, -1 for merge nodes
    std::vector<int> kids;
};

int build_dendro(const GradedRoot& r, int lo, int hi, std::vector<DNode>& nodes) {
    if (lo == hi) {
        nodes.push_back(DNode{r.leaves[lo], lo, {}});
        return static_cast<int>(nodes.size()) - 1;
    }
    Rat mn = *r.angles[lo];
    for (int p = lo + 1; p < hi; ++p) mn = std::min(mn, *r.angles[p]);
    std::vector<int> kids;
    int s = lo;
    for (int p = lo; p < hi; ++p) {
        if (*r.angles[p] == mn) {
            kids.push_back(build_dendro(r, s, p, nodes));
            s = p + 1;
        }
    }
    kids.push_back(build_dendro(r, s, hi, nodes));
    nodes.push_back(DNode{mn, -1, std::move(kids)});
    return static_cast<int>(nodes.size()) - 1;
}

struct Dendro {
    std::vector<DNode> nodes;
    std::vector<int> roots; // one per component, split at null angles
};

Dendro make_dendro(const GradedRoot& r) {
    Dendro d;
    const int n = static_cast<int>(r.leaves.size());
    int s = 0;
    for (int p = 0; p < n - 1; ++p) {
        if (!r.angles[p]) {
            d.roots.push_back(build_dendro(r, s, p, d.nodes));
            s = p + 1;
        }
    }
    d.roots.push_back(build_dendro(r, s, n - 1, d.nodes));
    return d;
}

// Exact two-decimal rendering (round half up); keeps the SVG byte-stable
// without touching floating point.
std::string fixed2(const Rat& v) {
    BigInt q = rat_floor(v * 100 + Rat(1, 2));
    bool neg = q < 0;
    BigInt a = neg ? BigInt(-q) : q;
    std::string frac = BigInt(a % 100).str();
    if (frac.size() < 2) frac.insert(frac.begin(), '0');
    return (neg ? "-" : "") + BigInt(a / 100).str() + "." + frac;
}

} // namespace

std::string root_to_dot(const SymmetricGradedRoot& sr) {
    const GradedRoot& r = sr.root;
    validate_root(r);
    Dendro d = make_dendro(r);
    std::ostringstream o;
    o << "graph graded_root {\n";
    o << "  node [shape=circle, width=0.14, fixedsize=true, label=\"\"];\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        o << "  n" << i << " [xlabel=\"" << rat_str(d.nodes[i].g) << "\"";
        if (d.nodes[i].leaf >= 0) o << ", shape=point";
        o << "];\n";
    }
    for (std::size_t k = 0; k < d.roots.size(); ++k)
        o << "  h" << k << " [shape=plaintext, label=\"" << rat_str(r.h) << "\"];\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        for (int c : d.nodes[i].kids) o << "  n" << i << " -- n" << c << ";\n";
    for (std::size_t k = 0; k < d.roots.size(); ++k)
        o << "  n" << d.roots[k] << " -- h" << k << " [style=dashed];\n";
    o << "}\n";
    return o.str();
}

std::string root_to_svg(const SymmetricGradedRoot& sr) {
    const GradedRoot& r = sr.root;
    validate_root(r);
    Dendro d = make_dendro(r);
    const int nl = static_cast<int>(r.leaves.size());
    const Rat dx = 56, x0 = 40, yscale = 28, y0 = 36;
    Rat top = r.leaves[0];
    for (const Rat& l : r.leaves) top = std::max(top, l);
    auto y_of = [&](const Rat& g) { return Rat(y0 + (top - g) * yscale); };
    std::vector<Rat> x(d.nodes.size()), y(d.nodes.size());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const DNode& nd = d.nodes[i];
        y[i] = y_of(nd.g);
        if (nd.leaf >= 0)
            x[i] = x0 + Rat(nd.leaf) * dx; // children precede parents, so
        else                               // kid positions are already set
            x[i] = (x[nd.kids.front()] + x[nd.kids.back()]) / 2;
    }
    Rat W = x0 * 2 + Rat(nl - 1) * dx;
    Rat H = y_of(r.h) + 40;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(W) << "\" height=\""
      << fixed2(H) << "\" viewBox=\"0 0 " << fixed2(W) << " " << fixed2(H) << "\">\n";
    o << "<g stroke=\"#20242c\" stroke-width=\"2\" fill=\"none\" stroke-linecap=\"round\">\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const DNode& nd = d.nodes[i];
        if (nd.leaf >= 0) continue;
        o << "<line x1=\"" << fixed2(x[nd.kids.front()]) << "\" y1=\"" << fixed2(y[i])
          << "\" x2=\"" << fixed2(x[nd.kids.back()]) << "\" y2=\"" << fixed2(y[i]) << "\"/>\n";
        for (int c : nd.kids)
            o << "<line x1=\"" << fixed2(x[c]) << "\" y1=\"" << fixed2(y[c]) << "\" x2=\""
              << fixed2(x[c]) << "\" y2=\"" << fixed2(y[i]) << "\"/>\n";
    }
    for (int rt : d.roots)
        o << "<line x1=\"" << fixed2(x[rt]) << "\" y1=\"" << fixed2(y[rt]) << "\" x2=\""
          << fixed2(x[rt]) << "\" y2=\"" << fixed2(y_of(r.h)) << "\" stroke-dasharray=\"5 4\"/>\n";
    o << "</g>\n<g fill=\"#20242c\">\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        if (d.nodes[i].leaf >= 0)
            o << "<circle cx=\"" << fixed2(x[i]) << "\" cy=\"" << fixed2(y[i]) << "\" r=\"3\"/>\n";
    o << "</g>\n<g font-family=\"monospace\" font-size=\"11\" fill=\"#20242c\">\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].leaf >= 0)
            o << "<text x=\"" << fixed2(x[i]) << "\" y=\"" << fixed2(y[i] - 8)
              << "\" text-anchor=\"middle\">" << rat_str(d.nodes[i].g) << "</text>\n";
        else
            o << "<text x=\"" << fixed2(x[i] + 5) << "\" y=\"" << fixed2(y[i] - 5) << "\">"
              << rat_str(d.nodes[i].g) << "</text>\n";
    }
    for (int rt : d.roots)
        o << "<text x=\"" << fixed2(x[rt] + 5) << "\" y=\"" << fixed2(y_of(r.h) - 5) << "\">"
          << rat_str(r.h) << "</text>\n";
    o << "</g>\n</svg>\n";
    return o.str();
}

std::vector<std::vector<long long>> parse_params_file(const std::string& text) {
    std::vector<std::vector<long long>> out;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<long long> row;
        std::string tok;
        auto flush = [&] {
            if (!tok.empty()) {
                row.push_back(parse_ll(tok, "params line " + std::to_string(ln)));
                tok.clear();
            }
        };
        for (char c : line) {
            if (c == ' ' || c == '\t' || c == '\r' || c == ',')
                flush();
            else
                tok.push_back(c);
        }
        flush();
        if (!row.empty()) out.push_back(std::move(row));
    }
    return out;
}

std::vector<AtlasRow> atlas_brieskorn(const std::vector<std::vector<long long>>& params,
                                      int threads, const AnalyzeOptions& opt) {
    std::vector<std::vector<long long>> sorted = params;
    std::sort(sorted.begin(), sorted.end());
    std::vector<AtlasRow> rows(sorted.size());
    if (sorted.empty()) return rows;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    std::size_t nt = threads > 0 ? static_cast<std::size_t>(threads) : hw;
    nt = std::min(nt, sorted.size());
    std::atomic<std::size_t> next{0};
    std::mutex emtx;
    std::exception_ptr eptr;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= sorted.size()) return;
            try {
                PlumbingGraph g = from_brieskorn(sorted[i]);
                auto classes = enumerate_spinc_classes(g);
                rows[i] = AtlasRow{"brieskorn", sorted[i], analyze(g, classes.front(), opt)};
            } catch (...) {
                std::lock_guard<std::mutex> lk(emtx);
                if (!eptr) eptr = std::current_exception();
                next.store(sorted.size()); // drain remaining work
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (eptr) std::rethrow_exception(eptr);
    return rows;
}

std::string atlas_to_csv(const std::vector<AtlasRow>& rows) {
    auto opt_cell = [](const std::optional<Rat>& v) { return v ? rat_str(*v) : std::string(); };
    std::ostringstream o;
    o << "family,params,size,det,d,delta,alpha,beta,gamma,mu_bar,kappa,projective_n\n";
    for (const AtlasRow& row : rows) {
        const InvariantReport& r = row.report;
        o << row.family << ",\"";
        for (std::size_t i = 0; i < row.params.size(); ++i) {
            if (i) o << ",";
            o << row.params[i];
        }
        o << "\"," << r.graph_size << "," << r.graph_det.str() << "," << rat_str(r.d) << ","
          << rat_str(r.delta) << "," << opt_cell(r.alpha) << "," << opt_cell(r.beta) << ","
          << opt_cell(r.gamma) << "," << opt_cell(r.mu_bar) << "," << opt_cell(r.kappa) << ","
          << (r.projective ? r.projective->first.str() : std::string()) << "\n";
    }
    return o.str();
}

} // namespace pswf
