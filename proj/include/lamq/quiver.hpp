#pragma once

#include <map>
#include <string>
#include <vector>

#include "lamq/family.hpp"

namespace lamq {

enum class NodeCategory { bullet, black_square, black_lozenge, circle };

const char* category_name(NodeCategory c);

struct QuiverNode {
    std::string id;
    bool is_point = true;     // false: opaque cosyzygy node beyond dimension 3
    ProjPoint point;          // meaningful when is_point
    std::size_t dim = 3;
    std::size_t loewy = 2;
    NodeCategory cat = NodeCategory::circle;
};

/* Each edge N -> M certifies an exact sequence 0 -> N -> P -> M -> 0 with
 * N = syzygy(M) and M = cosyzygy(N); P is one copy of the regular module
 * for point-to-point edges and a higher projective for edges into opaque
 * cosyzygy nodes. */
struct QuiverEdge {
    std::string from, to;
    std::string kind;  // "regular" (dim 3+3) or "approximation"
    bool certified = false;
};

struct QuiverComponent {
    std::string shape;  // Cycle(n) | A(n) | NatChain | NegNatChain | ZTruncated | Singleton
    std::vector<std::string> nodes;  // ordered from the syzygy end to the cosyzygy end
};

struct QuiverGraph {
    Side side = Side::left;
    std::string field_desc, q_desc;
    int depth = 0;
    std::vector<QuiverNode> nodes;        // sorted by id
    std::vector<QuiverEdge> edges;        // sorted by (from, to)
    std::vector<QuiverComponent> components;

    const QuiverNode* find(const std::string& id) const;
    const QuiverComponent* component_of(const std::string& id) const;
    std::string to_dot() const;
    std::string to_json_text() const;
};

QuiverGraph quiver_build(const LambdaContext& ctx, const std::vector<ProjPoint>& seeds,
                         Side side, int depth);

}  // namespace lamq
