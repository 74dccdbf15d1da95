#include "lamq/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lamq {

const char* category_name(NodeCategory c) {
    switch (c) {
        case NodeCategory::bullet: return "bullet";
        case NodeCategory::black_square: return "black_square";
        case NodeCategory::black_lozenge: return "black_lozenge";
        case NodeCategory::circle: return "circle";
    }
    return "?";
}

namespace {

NodeCategory category_from(const ClassificationReport& r) {
    if (r.torsionless && r.extensionless) return NodeCategory::bullet;
    if (r.extensionless) return NodeCategory::black_square;
    if (r.torsionless) return NodeCategory::black_lozenge;
    return NodeCategory::circle;
}

NodeCategory category_from_module(const Module& m) {
    bool tl = is_torsionless(m).value;
    bool el = is_extensionless(m).value;
    if (tl && el) return NodeCategory::bullet;
    if (el) return NodeCategory::black_square;
    if (tl) return NodeCategory::black_lozenge;
    return NodeCategory::circle;
}

struct Walker {
    const LambdaContext& ctx;
    Side side;

    std::string id_of(const ProjPoint& p) const {
        return std::string(side == Side::left ? "M" : "M'") + p.str(ctx.field());
    }

    // next point in the syzygy direction when the sequence over `cur` exists
    std::optional<ProjPoint> omega_step(const ProjPoint& cur) const {
        if (!classify_closed_form(ctx, cur, side).extensionless) return std::nullopt;
        return side == Side::left ? omega(ctx.field(), cur) : omega_prime(ctx.field(), cur);
    }

    /* next point in the cosyzygy direction: requires the 3-dimensional
     * cosyzygy formula to apply AND the target to be extensionless, so that
     * the minimal approximation sequence of `cur` is the cover sequence of
     * the target */
    std::optional<ProjPoint> mho_step(const ProjPoint& cur) const {
        const Field& f = ctx.field();
        if (!classify_closed_form(ctx, cur, side).torsionless) return std::nullopt;
        std::optional<ProjPoint> nxt =
            side == Side::left ? omega_prime(f, cur) : omega(f, cur);
        if (!nxt) return std::nullopt;
        if (!classify_closed_form(ctx, *nxt, side).extensionless) return std::nullopt;
        return nxt;
    }

    bool attach_opaque(const ProjPoint& cur) const {
        return classify_closed_form(ctx, cur, side).torsionless && !mho_step(cur);
    }
};

struct UnionFind {
    std::map<std::string, std::string> parent;
    const std::string& find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) { parent[x] = x; return parent[x]; }
        if (it->second == x) return it->second;
        it->second = find(it->second);
        return it->second;
    }
    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
};

}  // namespace

const QuiverNode* QuiverGraph::find(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const QuiverComponent* QuiverGraph::component_of(const std::string& id) const {
    for (const auto& c : components)
        for (const auto& n : c.nodes)
            if (n == id) return &c;
    return nullptr;
}

QuiverGraph quiver_build(const LambdaContext& ctx, const std::vector<ProjPoint>& seeds,
                         Side side, int depth) {
    const Field& f = ctx.field();
    Walker w{ctx, side};
    QuiverGraph g;
    g.side = side;
    g.field_desc = f.describe();
    g.q_desc = f.to_string(f.q());
    g.depth = depth;

    std::map<std::string, QuiverNode> nodes;
    std::map<std::string, Module> modules;        // realized point modules
    std::set<std::pair<std::string, std::string>> edge_set;
    std::vector<QuiverEdge> edges;

    auto ensure_point_node = [&](const ProjPoint& p) {
        std::string id = w.id_of(p);
        if (!nodes.count(id)) {
            QuiverNode n;
            n.id = id;
            n.is_point = true;
            n.point = p;
            Module m = ctx.make_M(p, side);
            n.dim = m.dim();
            n.loewy = loewy_length(m);
            n.cat = category_from(classify_closed_form(ctx, p, side));
            nodes[id] = n;
            modules.emplace(id, std::move(m));
        }
        return id;
    };

    auto add_edge = [&](const std::string& from, const std::string& to,
                        const std::string& kind, bool certified) {
        if (edge_set.insert({from, to}).second)
            edges.push_back({from, to, kind, certified});
    };

    // certified point-to-point edge: syzygy of the target is the source
    auto add_regular_edge = [&](const ProjPoint& from_pt, const ProjPoint& to_pt) {
        std::string from = ensure_point_node(from_pt);
        std::string to = ensure_point_node(to_pt);
        if (edge_set.count({from, to})) return;
        Module omega_to = syzygy(modules.at(to)).syz;
        bool cert = omega_to.dim() + modules.at(to).dim() == 6 &&
                    is_isomorphic(omega_to, modules.at(from)).yes();
        add_edge(from, to, "regular", cert);
    };

    auto attach_opaque_node = [&](const ProjPoint& base_pt) {
        std::string base = ensure_point_node(base_pt);
        std::string id = "cosyz " + base;
        if (!nodes.count(id)) {
            Module cm = cosyzygy(modules.at(base)).cosyz;
            QuiverNode n;
            n.id = id;
            n.is_point = false;
            n.point = base_pt;
            n.dim = cm.dim();
            n.loewy = loewy_length(cm);
            n.cat = category_from_module(cm);
            nodes[id] = n;
            bool cert = is_isomorphic(syzygy(cm).syz, modules.at(base)).yes();
            add_edge(base, id, "approximation", cert);
            modules.emplace(id, std::move(cm));
        }
    };

    for (const ProjPoint& seed : seeds) {
        ensure_point_node(seed);
        bool closed_cycle = false;
        // cosyzygy direction
        ProjPoint cur = seed;
        for (int step = 0; step < depth && !closed_cycle; ++step) {
            auto nxt = w.mho_step(cur);
            if (!nxt) break;
            add_regular_edge(cur, *nxt);
            if (*nxt == seed) {
                closed_cycle = true;
                break;
            }
            cur = *nxt;
        }
        if (!closed_cycle && w.attach_opaque(cur)) attach_opaque_node(cur);
        if (closed_cycle) continue;
        // syzygy direction; the syzygy-most end never carries an opaque node
        cur = seed;
        for (int step = 0; step < depth; ++step) {
            auto prv = w.omega_step(cur);
            if (!prv) break;
            add_regular_edge(*prv, cur);
            if (*prv == seed) break;  // cycle closed from the other side
            cur = *prv;
        }
    }

    // connected components
    UnionFind uf;
    for (const auto& [id, n] : nodes) uf.find(id);
    for (const auto& e : edges) uf.unite(e.from, e.to);
    std::map<std::string, std::vector<std::string>> comps;
    for (const auto& [id, n] : nodes) comps[uf.find(id)].push_back(id);

    std::map<std::string, std::string> succ, pred;
    for (const auto& e : edges) {
        if (e.from != e.to) {
            succ[e.from] = e.to;
            pred[e.to] = e.from;
        }
    }

    for (auto& [root, ids] : comps) {
        std::sort(ids.begin(), ids.end());
        QuiverComponent comp;
        std::size_t edge_count = 0;
        for (const auto& e : edges)
            if (uf.find(e.from) == root) ++edge_count;
        if (edge_count == ids.size()) {
            // every node has in- and out-degree one: a cycle
            comp.shape = "Cycle(" + std::to_string(ids.size()) + ")";
            std::vector<std::string> ordered;
            std::string cur = ids.front();
            for (std::size_t i = 0; i < ids.size(); ++i) {
                ordered.push_back(cur);
                auto it = succ.find(cur);
                cur = it == succ.end() ? cur : it->second;
            }
            comp.nodes = std::move(ordered);
        } else {
            std::string start;
            for (const auto& id : ids)
                if (!pred.count(id)) start = id;
            std::vector<std::string> ordered;
            for (std::string cur2 = start; !cur2.empty();) {
                ordered.push_back(cur2);
                auto it = succ.find(cur2);
                cur2 = it == succ.end() ? std::string() : it->second;
            }
            const QuiverNode& first = nodes[ordered.front()];
            const QuiverNode& last = nodes[ordered.back()];
            bool omega_trunc = first.is_point && w.omega_step(first.point).has_value();
            bool mho_trunc = last.is_point && w.mho_step(last.point).has_value();
            if (!omega_trunc && !mho_trunc)
                comp.shape = ordered.size() == 1 ? "Singleton"
                                                 : "A(" + std::to_string(ordered.size()) + ")";
            else if (omega_trunc && mho_trunc)
                comp.shape = "ZTruncated";
            else if (omega_trunc)
                comp.shape = "NegNatChain";
            else
                comp.shape = "NatChain";
            comp.nodes = std::move(ordered);
        }
        g.components.push_back(std::move(comp));
    }
    std::sort(g.components.begin(), g.components.end(),
              [](const QuiverComponent& a, const QuiverComponent& b) {
                  return a.nodes.front() < b.nodes.front();
              });

    for (auto& [id, n] : nodes) g.nodes.push_back(n);
    std::sort(g.nodes.begin(), g.nodes.end(),
              [](const QuiverNode& a, const QuiverNode& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(), [](const QuiverEdge& a, const QuiverEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    g.edges = std::move(edges);
    return g;
}

std::string QuiverGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph omega_mho_quiver {\n";
    os << "  rankdir=LR;\n";
    os << "  label=\"" << field_desc << " q=" << q_desc << " " << side_name(side)
       << " depth=" << depth << "\";\n";
    for (const auto& n : nodes) {
        const char* shape = "circle";
        const char* extra = "";
        switch (n.cat) {
            case NodeCategory::black_square: shape = "square"; extra = ", style=filled, fillcolor=black, fontcolor=white"; break;
            case NodeCategory::black_lozenge: shape = "diamond"; extra = ", style=filled, fillcolor=black, fontcolor=white"; break;
            case NodeCategory::bullet: shape = "point"; extra = ", xlabel=\"\""; break;
            case NodeCategory::circle: shape = "circle"; break;
        }
        os << "  \"" << n.id << "\" [shape=" << shape << extra
           << ", label=\"" << n.id << "\\ndim " << n.dim << "\"];\n";
    }
    for (const auto& e : edges)
        os << "  \"" << e.from << "\" -> \"" << e.to << "\""
           << (e.kind == "approximation" ? " [style=dashed]" : "") << ";\n";
    os << "}\n";
    return os.str();
}

std::string QuiverGraph::to_json_text() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["field"] = field_desc;
    j["q"] = q_desc;
    j["side"] = side_name(side);
    j["depth"] = depth;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : nodes) {
        nlohmann::ordered_json nj;
        nj["id"] = n.id;
        nj["kind"] = n.is_point ? "point" : "cosyzygy";
        nj["category"] = category_name(n.cat);
        nj["dim"] = n.dim;
        nj["loewy"] = n.loewy;
        j["nodes"].push_back(nj);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : edges) {
        nlohmann::ordered_json ej;
        ej["from"] = e.from;
        ej["to"] = e.to;
        ej["kind"] = e.kind;
        ej["certified"] = e.certified;
        j["edges"].push_back(ej);
    }
    j["components"] = nlohmann::ordered_json::array();
    for (const auto& c : components) {
        nlohmann::ordered_json cj;
        cj["shape"] = c.shape;
        cj["nodes"] = c.nodes;
        j["components"].push_back(cj);
    }
    return j.dump(2) + "\n";
}

}  // namespace lamq
